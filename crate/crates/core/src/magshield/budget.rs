use super::ShieldError;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct NoiseBudget {
    /// Largest tolerable field excursion, T.
    pub b_max: f64,
    /// `b_max` relative to the quantization field.
    pub relative_stability: f64,
}

/// Field excursion that shifts the transition by one natural linewidth.
///
/// `sensitivity` is the transition's field dependence in Hz/T and `linewidth`
/// is in Hz; both as ordinary (not angular) frequencies.
pub fn field_noise_budget(
    sensitivity: f64,
    linewidth: f64,
    quantization_field: f64,
) -> Result<NoiseBudget, ShieldError> {
    if !(sensitivity > 0.0 && linewidth > 0.0 && quantization_field > 0.0) {
        return Err(ShieldError::Domain(
            "sensitivity, linewidth and quantization field must all be positive".into(),
        ));
    }
    let b_max = linewidth / sensitivity;
    Ok(NoiseBudget {
        b_max,
        relative_stability: b_max / quantization_field,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn calcium_budget() {
        let b = field_noise_budget(39e9, 0.14, 0.3e-3).unwrap();
        assert_eq!(format!("{:.1}", b.b_max * 1e12), "3.6");
        assert_eq!(format!("{:.1e}", b.relative_stability), "1.2e-8");
    }

    #[test]
    fn strontium_budget() {
        let b = field_noise_budget(39e9, 0.4, 0.3e-3).unwrap();
        assert_eq!(format!("{:.1}", b.b_max * 1e12), "10.3");
    }

    #[test]
    fn linear_in_linewidth() {
        let a = field_noise_budget(39e9, 0.14, 0.3e-3).unwrap();
        let b = field_noise_budget(39e9, 0.28, 0.3e-3).unwrap();
        assert!((b.b_max / a.b_max - 2.0).abs() < 1e-15);
        assert!(field_noise_budget(0.0, 0.14, 0.3e-3).is_err());
    }
}
