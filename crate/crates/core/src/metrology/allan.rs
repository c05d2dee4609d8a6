use super::MetrologyError;
use crate::physcore::TimeSeries;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RecordKind {
    /// Dimensionless y = δν/ν.
    FractionalFrequency,
    /// Phase expressed as time error x, s.
    PhaseSeconds,
}

#[derive(Clone, Debug, PartialEq)]
pub struct FrequencyRecord {
    pub kind: RecordKind,
    pub series: TimeSeries,
    /// Hz
    pub nominal_frequency: f64,
}

impl FrequencyRecord {
    pub fn new(kind: RecordKind, series: TimeSeries, nominal_frequency: f64) -> Result<Self, MetrologyError> {
        if !(nominal_frequency > 0.0 && nominal_frequency.is_finite()) {
            return Err(MetrologyError::Domain(format!(
                "nominal frequency must be positive, got {nominal_frequency}"
            )));
        }
        Ok(FrequencyRecord {
            kind,
            series,
            nominal_frequency,
        })
    }

    /// Beat-frequency deviations in Hz, divided by the nominal frequency.
    pub fn from_beat_hz(series: TimeSeries, nominal_frequency: f64) -> Result<Self, MetrologyError> {
        let record = FrequencyRecord::new(RecordKind::FractionalFrequency, series, nominal_frequency)?;
        let y = record.series.map(|v| v / nominal_frequency)?;
        Ok(FrequencyRecord { series: y, ..record })
    }

    /// Phase samples x_i; fractional data are integrated with x₀ = 0 after
    /// subtracting y₀, which leaves every second difference unchanged and makes
    /// a constant record integrate to exactly zero.
    pub fn phase(&self) -> Vec<f64> {
        match self.kind {
            RecordKind::PhaseSeconds => self.series.samples().to_vec(),
            RecordKind::FractionalFrequency => {
                let dt = self.series.dt();
                let y0 = self.series.samples()[0];
                let mut x = Vec::with_capacity(self.series.len() + 1);
                let mut acc = 0.0;
                x.push(acc);
                for y in self.series.samples() {
                    acc += (y - y0) * dt;
                    x.push(acc);
                }
                x
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AllanPoint {
    pub tau: f64,
    pub sigma_y: f64,
    /// Number of second differences in the average.
    pub terms: usize,
}

/// Overlapping Allan deviation at each τ = m·dt.
pub fn allan_deviation(record: &FrequencyRecord, taus: &[f64]) -> Result<Vec<AllanPoint>, MetrologyError> {
    let dt = record.series.dt();
    let x = record.phase();
    let n = x.len();
    taus.iter()
        .map(|&tau| {
            let m = (tau / dt).round();
            if !(m >= 1.0) || (m * dt - tau).abs() > 1e-9 * tau {
                return Err(MetrologyError::Domain(format!(
                    "tau {tau} s is not a positive multiple of dt {dt} s"
                )));
            }
            let m = m as usize;
            if n < 2 * m + 1 {
                return Err(MetrologyError::InsufficientData {
                    needed: 2 * m + 1,
                    got: n,
                });
            }
            let terms = n - 2 * m;
            let sum: f64 = (0..terms)
                .map(|i| {
                    let d = x[i + 2 * m] - 2.0 * x[i + m] + x[i];
                    d * d
                })
                .sum();
            let tau = m as f64 * dt;
            Ok(AllanPoint {
                tau,
                sigma_y: (sum / (2.0 * terms as f64 * tau * tau)).sqrt(),
                terms,
            })
        })
        .collect()
}

/// τ = dt·2^k for every k with enough phase samples.
pub fn octave_taus(record: &FrequencyRecord) -> Vec<f64> {
    let n = record.phase().len();
    let mut taus = Vec::new();
    let mut m = 1usize;
    while 2 * m < n {
        taus.push(m as f64 * record.series.dt());
        m *= 2;
    }
    taus
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::physcore::seeded_rng;
    use proptest::prelude::*;
    use rand_distr::{Distribution, Normal};

    fn frac(samples: Vec<f64>, dt: f64) -> FrequencyRecord {
        FrequencyRecord::new(RecordKind::FractionalFrequency, TimeSeries::new(0.0, dt, samples).unwrap(), 4.1e14)
            .unwrap()
    }

    #[test]
    fn constant_gives_zero() {
        let r = frac(vec![3e-13; 200], 0.1);
        for p in allan_deviation(&r, &octave_taus(&r)).unwrap() {
            assert_eq!(p.sigma_y, 0.0, "{p:?}");
        }
    }

    #[test]
    fn alternating_sequence() {
        let a = 2.5e-15;
        let y: Vec<f64> = (0..101).map(|i| if i % 2 == 0 { a } else { -a }).collect();
        let r = frac(y, 0.05);
        let p = allan_deviation(&r, &[0.05]).unwrap()[0];
        assert!((p.sigma_y / (a * 2f64.sqrt()) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn tau_validation() {
        let r = frac(vec![0.0; 10], 0.1);
        assert!(matches!(allan_deviation(&r, &[0.15]), Err(MetrologyError::Domain(_))));
        assert!(matches!(allan_deviation(&r, &[0.6]), Err(MetrologyError::InsufficientData { .. })));
        assert!(allan_deviation(&r, &[0.5]).is_ok());
    }

    #[test]
    fn phase_and_frequency_inputs_agree() {
        let mut rng = seeded_rng(1);
        let noise = Normal::new(0.0, 1e-14).unwrap();
        let y: Vec<f64> = (0..300).map(|_| noise.sample(&mut rng)).collect();
        let r = frac(y, 0.2);
        let x = FrequencyRecord::new(RecordKind::PhaseSeconds, TimeSeries::new(0.0, 0.2, r.phase()).unwrap(), 1.0)
            .unwrap();
        let a = allan_deviation(&r, &[0.2, 1.0, 4.0]).unwrap();
        let b = allan_deviation(&x, &[0.2, 1.0, 4.0]).unwrap();
        for (p, q) in a.iter().zip(&b) {
            assert!((p.sigma_y / q.sigma_y - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn white_fm_slope() {
        let mut rng = seeded_rng(42);
        let noise = Normal::new(0.0, 1.0).unwrap();
        let r = frac((0..50_000).map(|_| noise.sample(&mut rng)).collect(), 1.0);
        let taus = [1.0, 100.0];
        let p = allan_deviation(&r, &taus).unwrap();
        let slope = (p[1].sigma_y / p[0].sigma_y).log10() / 2.0;
        assert!((slope + 0.5).abs() < 0.05, "{slope}");
    }

    proptest! {
        #[test]
        fn offset_and_scale(c in -10.0f64..10.0, offset in -1.0f64..1.0, seed in 0u64..1000) {
            let mut rng = seeded_rng(seed);
            let noise = Normal::new(0.0, 1.0).unwrap();
            let y: Vec<f64> = (0..64).map(|_| noise.sample(&mut rng)).collect();
            let base = allan_deviation(&frac(y.clone(), 1.0), &[1.0, 4.0]).unwrap();
            let scaled = allan_deviation(&frac(y.iter().map(|v| c * v).collect(), 1.0), &[1.0, 4.0]).unwrap();
            let shifted = allan_deviation(&frac(y.iter().map(|v| v + offset).collect(), 1.0), &[1.0, 4.0]).unwrap();
            for i in 0..2 {
                prop_assert!((scaled[i].sigma_y - c.abs() * base[i].sigma_y).abs() <= 1e-12 * base[i].sigma_y.max(1e-300) * 10.0);
                prop_assert!((shifted[i].sigma_y - base[i].sigma_y).abs() <= 1e-9 * base[i].sigma_y);
            }
        }
    }
}
