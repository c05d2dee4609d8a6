use super::QubitError;

/// η at or above this value makes the first-order carrier correction unreliable.
pub const LAMB_DICKE_LIMIT: f64 = 0.5;
/// Probability mass allowed beyond the truncation.
const TAIL_TOLERANCE: f64 = 1e-6;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PhononState {
    nbar: f64,
    n_max: usize,
}

impl PhononState {
    /// Thermal state truncated at max(20 + 10·n̄, N) where N is the first index
    /// whose tail mass (n̄/(1+n̄))^(N+1) falls below 1e-6.
    pub fn new(nbar: f64) -> Result<Self, QubitError> {
        if !(nbar >= 0.0 && nbar.is_finite()) {
            return Err(QubitError::Domain(format!("mean occupation must be >= 0, got {nbar}")));
        }
        let rule = 20 + (10.0 * nbar).ceil() as usize;
        let tail = if nbar == 0.0 {
            0
        } else {
            let x = nbar / (1.0 + nbar);
            (TAIL_TOLERANCE.ln() / x.ln()).ceil() as usize
        };
        Ok(PhononState {
            nbar,
            n_max: rule.max(tail),
        })
    }

    pub fn with_n_max(nbar: f64, n_max: usize) -> Result<Self, QubitError> {
        let auto = PhononState::new(nbar)?;
        if n_max < auto.n_max {
            return Err(QubitError::Domain(format!(
                "truncation {n_max} below the minimum {} for nbar {nbar}",
                auto.n_max
            )));
        }
        Ok(PhononState { nbar, n_max })
    }

    pub fn nbar(&self) -> f64 {
        self.nbar
    }

    pub fn n_max(&self) -> usize {
        self.n_max
    }
}

/// P(n) = n̄ⁿ/(1+n̄)ⁿ⁺¹ for n = 0..=n_max, renormalised.
pub fn thermal_distribution(state: &PhononState) -> Vec<f64> {
    let x = state.nbar / (1.0 + state.nbar);
    let mut p = Vec::with_capacity(state.n_max + 1);
    let mut term = 1.0 / (1.0 + state.nbar);
    for _ in 0..=state.n_max {
        p.push(term);
        term *= x;
    }
    let total: f64 = p.iter().sum();
    p.iter_mut().for_each(|v| *v /= total);
    p
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DriveParams {
    /// Bare carrier Rabi frequency Ω, rad/s.
    pub rabi_frequency: f64,
    pub lamb_dicke: f64,
    /// rad/s
    pub detuning: f64,
}

impl DriveParams {
    pub fn new(rabi_frequency: f64, lamb_dicke: f64, detuning: f64) -> Result<Self, QubitError> {
        if !(rabi_frequency >= 0.0 && rabi_frequency.is_finite()) {
            return Err(QubitError::Domain(format!("Rabi frequency must be >= 0, got {rabi_frequency}")));
        }
        if !(lamb_dicke >= 0.0 && lamb_dicke.is_finite()) {
            return Err(QubitError::Domain(format!("Lamb-Dicke parameter must be >= 0, got {lamb_dicke}")));
        }
        if !detuning.is_finite() {
            return Err(QubitError::Domain("detuning must be finite".into()));
        }
        Ok(DriveParams {
            rabi_frequency,
            lamb_dicke,
            detuning,
        })
    }

    pub fn resonant(rabi_frequency: f64, lamb_dicke: f64) -> Result<Self, QubitError> {
        DriveParams::new(rabi_frequency, lamb_dicke, 0.0)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum CarrierModel {
    /// Ωₙ = Ω·(1 − η²n)
    #[default]
    FirstOrder,
    /// Ωₙ = Ω·e^(−η²/2)·Lₙ(η²)
    Laguerre,
}

#[derive(Clone, Debug, PartialEq)]
pub struct RabiSignal {
    pub times: Vec<f64>,
    pub excitation: Vec<f64>,
    /// Set when η ≥ 0.5.
    pub lamb_dicke_warning: bool,
}

fn laguerre_all(n_max: usize, x: f64) -> Vec<f64> {
    let mut l = Vec::with_capacity(n_max + 1);
    l.push(1.0);
    if n_max >= 1 {
        l.push(1.0 - x);
    }
    for n in 1..n_max {
        let nf = n as f64;
        let next = ((2.0 * nf + 1.0 - x) * l[n] - nf * l[n - 1]) / (nf + 1.0);
        l.push(next);
    }
    l
}

/// Per-level carrier Rabi frequencies Ωₙ for n = 0..=n_max.
pub fn carrier_frequencies(drive: &DriveParams, n_max: usize, model: CarrierModel) -> Vec<f64> {
    let eta2 = drive.lamb_dicke * drive.lamb_dicke;
    match model {
        CarrierModel::FirstOrder => (0..=n_max)
            .map(|n| drive.rabi_frequency * (1.0 - eta2 * n as f64))
            .collect(),
        CarrierModel::Laguerre => {
            let dw = (-0.5 * eta2).exp();
            laguerre_all(n_max, eta2)
                .into_iter()
                .map(|l| drive.rabi_frequency * dw * l)
                .collect()
        }
    }
}

/// Resonant carrier excitation P_e(t) = Σ P(n)·sin²(Ωₙt/2).
pub fn carrier_rabi_signal(
    state: &PhononState,
    drive: &DriveParams,
    times: &[f64],
    model: CarrierModel,
) -> Result<RabiSignal, QubitError> {
    if drive.detuning != 0.0 {
        return Err(QubitError::Domain("carrier signal requires a resonant drive".into()));
    }
    if let Some(t) = times.iter().find(|t| !t.is_finite()) {
        return Err(QubitError::Domain(format!("non-finite time {t}")));
    }
    let p = thermal_distribution(state);
    let omega = carrier_frequencies(drive, state.n_max, model);
    let excitation = times
        .iter()
        .map(|&t| {
            let v: f64 = p
                .iter()
                .zip(&omega)
                .map(|(pn, wn)| pn * (0.5 * wn * t).sin().powi(2))
                .sum();
            v.clamp(0.0, 1.0)
        })
        .collect();
    Ok(RabiSignal {
        times: times.to_vec(),
        excitation,
        lamb_dicke_warning: drive.lamb_dicke >= LAMB_DICKE_LIMIT,
    })
}

/// n̄ = r/(1 − r) from the red/blue sideband excitation ratio.
pub fn sideband_ratio_to_nbar(ratio: f64) -> Result<f64, QubitError> {
    if !(0.0..1.0).contains(&ratio) {
        return Err(QubitError::RatioOutOfRange(ratio));
    }
    Ok(ratio / (1.0 - ratio))
}

pub fn nbar_to_sideband_ratio(nbar: f64) -> Result<f64, QubitError> {
    if !(nbar >= 0.0 && nbar.is_finite()) {
        return Err(QubitError::Domain(format!("mean occupation must be >= 0, got {nbar}")));
    }
    Ok(nbar / (1.0 + nbar))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::f64::consts::PI;

    fn mean(p: &[f64]) -> f64 {
        p.iter().enumerate().map(|(n, v)| n as f64 * v).sum()
    }

    #[test]
    fn distribution_moments() {
        let p0 = thermal_distribution(&PhononState::new(0.0).unwrap());
        assert_eq!(p0[0], 1.0);
        let p1 = thermal_distribution(&PhononState::new(1.0).unwrap());
        assert!((p1[0] - 0.5).abs() < 1e-6);
        for nbar in [0.1, 1.0, 14.0] {
            let s = PhononState::new(nbar).unwrap();
            assert!(s.n_max() >= 20 + (10.0 * nbar) as usize);
            let p = thermal_distribution(&s);
            assert!((p.iter().sum::<f64>() - 1.0).abs() < 1e-12);
            assert!((mean(&p) / nbar - 1.0).abs() < 1e-4, "nbar {nbar}: {}", mean(&p));
            // tail mass dropped by the truncation
            let tail = (nbar / (1.0 + nbar)).powi(s.n_max() as i32 + 1);
            assert!(tail < 1e-6);
        }
        assert!(PhononState::new(-0.1).is_err());
        assert!(PhononState::with_n_max(14.0, 10).is_err());
    }

    #[test]
    fn ground_state_flops_fully() {
        let s = PhononState::new(0.0).unwrap();
        let d = DriveParams::resonant(2.0 * PI * 1e5, 0.1).unwrap();
        let t: Vec<f64> = (0..50).map(|i| i as f64 * 1e-7).collect();
        let sig = carrier_rabi_signal(&s, &d, &t, CarrierModel::FirstOrder).unwrap();
        for (ti, p) in t.iter().zip(&sig.excitation) {
            assert!((p - (0.5 * d.rabi_frequency * ti).sin().powi(2)).abs() < 1e-15);
        }
        let pi_time = PI / d.rabi_frequency;
        let top = carrier_rabi_signal(&s, &d, &[pi_time], CarrierModel::FirstOrder).unwrap();
        assert!((top.excitation[0] - 1.0).abs() < 1e-12);
        assert!(!sig.lamb_dicke_warning);
    }

    #[test]
    fn hot_ion_dephases_faster() {
        let d = DriveParams::resonant(1.0, 0.1).unwrap();
        let t: Vec<f64> = (0..400).map(|i| 10.0 * PI * i as f64 / 399.0).collect();
        let window = |nbar: f64| {
            let s = carrier_rabi_signal(&PhononState::new(nbar).unwrap(), &d, &t, CarrierModel::FirstOrder).unwrap();
            let late = &s.excitation[300..];
            late.iter().cloned().fold(0.0, f64::max) - late.iter().cloned().fold(1.0, f64::min)
        };
        assert!(window(14.0) < window(0.1));
    }

    #[test]
    fn first_order_matches_laguerre_at_small_eta() {
        let s = PhononState::new(0.5).unwrap();
        let d = DriveParams::resonant(1.0, 0.01).unwrap();
        let a = carrier_frequencies(&d, s.n_max(), CarrierModel::FirstOrder);
        let b = carrier_frequencies(&d, s.n_max(), CarrierModel::Laguerre);
        // same level dependence once the common Debye-Waller factor is removed
        for n in 0..10 {
            assert!((a[n] / a[0] - b[n] / b[0]).abs() < 1e-6, "n={n}");
        }
    }

    #[test]
    fn laguerre_low_orders() {
        let x = 0.3;
        let l = laguerre_all(3, x);
        assert!((l[2] - 0.5 * (x * x - 4.0 * x + 2.0)).abs() < 1e-15);
        assert!((l[3] - (-x * x * x + 9.0 * x * x - 18.0 * x + 6.0) / 6.0).abs() < 1e-15);
    }

    #[test]
    fn warning_and_errors() {
        let s = PhononState::new(1.0).unwrap();
        let d = DriveParams::resonant(1.0, 0.6).unwrap();
        assert!(carrier_rabi_signal(&s, &d, &[1.0], CarrierModel::FirstOrder).unwrap().lamb_dicke_warning);
        let detuned = DriveParams::new(1.0, 0.1, 0.5).unwrap();
        assert!(carrier_rabi_signal(&s, &detuned, &[1.0], CarrierModel::FirstOrder).is_err());
        assert!(DriveParams::new(-1.0, 0.1, 0.0).is_err());
    }

    #[test]
    fn sideband_ratio_known_values() {
        assert_eq!(sideband_ratio_to_nbar(0.0).unwrap(), 0.0);
        assert_eq!(sideband_ratio_to_nbar(0.5).unwrap(), 1.0);
        let back = sideband_ratio_to_nbar(nbar_to_sideband_ratio(14.0).unwrap()).unwrap();
        assert!((back - 14.0).abs() <= 4.0 * f64::EPSILON * 14.0);
        assert!(matches!(sideband_ratio_to_nbar(1.0), Err(QubitError::RatioOutOfRange(_))));
        assert!(sideband_ratio_to_nbar(-0.1).is_err());
    }

    proptest! {
        #[test]
        fn sideband_inverse(nbar in 0.0f64..1000.0) {
            let back = sideband_ratio_to_nbar(nbar_to_sideband_ratio(nbar).unwrap()).unwrap();
            prop_assert!((back - nbar).abs() <= 1e-9 * nbar.max(1.0));
        }

        #[test]
        fn excitation_is_a_probability(nbar in 0.0f64..30.0, eta in 0.0f64..0.7, t in 0.0f64..100.0) {
            let s = PhononState::new(nbar).unwrap();
            let d = DriveParams::resonant(1.0, eta).unwrap();
            for model in [CarrierModel::FirstOrder, CarrierModel::Laguerre] {
                let p = carrier_rabi_signal(&s, &d, &[t], model).unwrap().excitation[0];
                prop_assert!((0.0..=1.0).contains(&p));
            }
        }

        #[test]
        fn zero_eta_is_periodic(nbar in 0.0f64..30.0, t in 0.0f64..10.0) {
            let s = PhononState::new(nbar).unwrap();
            let d = DriveParams::resonant(1.3, 0.0).unwrap();
            let period = 2.0 * PI / 1.3;
            let a = carrier_rabi_signal(&s, &d, &[t, t + period], CarrierModel::FirstOrder).unwrap();
            prop_assert!((a.excitation[0] - a.excitation[1]).abs() < 1e-12);
        }
    }
}
