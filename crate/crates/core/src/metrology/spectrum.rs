use super::MetrologyError;
use crate::physcore::TimeSeries;
use rustfft::{num_complex::Complex, FftPlanner};
use std::f64::consts::PI;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Window {
    Rect,
    #[default]
    Hann,
}

impl Window {
    fn weights(self, n: usize) -> Vec<f64> {
        match self {
            Window::Rect => vec![1.0; n],
            // periodic Hann
            Window::Hann => (0..n)
                .map(|i| 0.5 - 0.5 * (2.0 * PI * i as f64 / n as f64).cos())
                .collect(),
        }
    }
}

/// One-sided power spectral density, units²/Hz.
#[derive(Clone, Debug, PartialEq)]
pub struct Spectrum {
    pub frequencies: Vec<f64>,
    pub psd: Vec<f64>,
    /// Bin spacing, Hz.
    pub df: f64,
}

impl Spectrum {
    /// Σ psd·df.
    pub fn total_power(&self) -> f64 {
        self.psd.iter().sum::<f64>() * self.df
    }
}

/// Windowed periodogram of the mean-removed series, normalised by the window
/// power so that Σ psd·df equals the variance for the rectangular window.
pub fn power_spectrum(series: &TimeSeries, window: Window) -> Result<Spectrum, MetrologyError> {
    let n = series.len();
    if n < 16 {
        return Err(MetrologyError::InsufficientData { needed: 16, got: n });
    }
    let mean = series.mean();
    let w = window.weights(n);
    let mut buf: Vec<Complex<f64>> = series
        .samples()
        .iter()
        .zip(&w)
        .map(|(x, w)| Complex::new((x - mean) * w, 0.0))
        .collect();
    FftPlanner::new().plan_fft_forward(n).process(&mut buf);

    let fs = 1.0 / series.dt();
    let w2: f64 = w.iter().map(|v| v * v).sum();
    let scale = 1.0 / (fs * w2);
    let half = n / 2;
    let mut psd = Vec::with_capacity(half + 1);
    for (k, c) in buf.iter().take(half + 1).enumerate() {
        let two_sided = c.norm_sqr() * scale;
        let nyquist = n % 2 == 0 && k == half;
        psd.push(if k == 0 || nyquist { two_sided } else { 2.0 * two_sided });
    }
    let df = fs / n as f64;
    Ok(Spectrum {
        frequencies: (0..=half).map(|k| k as f64 * df).collect(),
        psd,
        df,
    })
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Peak {
    pub frequency: f64,
    pub power: f64,
    pub bin: usize,
}

/// Up to `count` strict interior local maxima (greater than both neighbours),
/// taken greedily by descending power and kept at least `min_separation` Hz
/// apart. End bins are never peaks, so a monotone spectrum yields none.
pub fn peak_find(spectrum: &Spectrum, count: usize, min_separation: f64) -> Vec<Peak> {
    let p = &spectrum.psd;
    let mut candidates: Vec<Peak> = (1..p.len().saturating_sub(1))
        .filter(|&i| p[i] > p[i - 1] && p[i] > p[i + 1])
        .map(|i| Peak {
            frequency: spectrum.frequencies[i],
            power: p[i],
            bin: i,
        })
        .collect();
    candidates.sort_by(|a, b| b.power.total_cmp(&a.power).then(a.bin.cmp(&b.bin)));
    let mut chosen: Vec<Peak> = Vec::new();
    for c in candidates {
        if chosen.len() == count {
            break;
        }
        if chosen.iter().all(|q| (q.frequency - c.frequency).abs() >= min_separation) {
            chosen.push(c);
        }
    }
    chosen
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::physcore::seeded_rng;
    use proptest::prelude::*;
    use rand::Rng;

    fn sines(tones: &[(f64, f64)], fs: f64, n: usize) -> TimeSeries {
        TimeSeries::from_fn(0.0, 1.0 / fs, n, |t| {
            tones.iter().map(|(f, a)| a * (2.0 * PI * f * t).sin()).sum()
        })
        .unwrap()
    }

    #[test]
    fn bin_centred_sine() {
        let s = power_spectrum(&sines(&[(50.0, 1.0)], 1000.0, 1000), Window::Rect).unwrap();
        let total = s.total_power();
        let top = s.psd.iter().cloned().fold(0.0, f64::max) * s.df;
        assert!(top / total > 0.99);
        assert!((total - 0.5).abs() < 1e-9);
    }

    #[test]
    fn two_tones_found() {
        let s = power_spectrum(&sines(&[(30.0, 1.0), (45.0, 0.7)], 1000.0, 2000), Window::Hann).unwrap();
        let mut f: Vec<f64> = peak_find(&s, 2, 5.0).iter().map(|p| p.frequency).collect();
        f.sort_by(f64::total_cmp);
        assert!((f[0] - 30.0).abs() <= s.df && (f[1] - 45.0).abs() <= s.df, "{f:?}");
    }

    #[test]
    fn degenerate_peaks() {
        let mono = Spectrum {
            frequencies: (0..10).map(|i| i as f64).collect(),
            psd: (0..10).map(|i| i as f64).collect(),
            df: 1.0,
        };
        assert!(peak_find(&mono, 3, 0.0).is_empty());
        let s = power_spectrum(&sines(&[(30.0, 1.0), (45.0, 0.7)], 1000.0, 2000), Window::Hann).unwrap();
        assert!(peak_find(&s, 5, 1e4).len() <= 1);
    }

    #[test]
    fn too_short() {
        let t = TimeSeries::new(0.0, 1.0, vec![0.0; 8]).unwrap();
        assert!(power_spectrum(&t, Window::Rect).is_err());
    }

    proptest! {
        #[test]
        fn parseval(seed in 0u64..10_000, n in 16usize..300) {
            let mut rng = seeded_rng(seed);
            let x: Vec<f64> = (0..n).map(|_| rng.random_range(-1.0..1.0)).collect();
            let t = TimeSeries::new(0.0, 0.01, x).unwrap();
            let s = power_spectrum(&t, Window::Rect).unwrap();
            prop_assert!((s.total_power() / t.variance() - 1.0).abs() < 1e-6);
        }
    }
}
