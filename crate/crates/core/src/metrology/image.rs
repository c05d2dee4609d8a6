use super::MetrologyError;
use crate::physcore::{FitData, FitResult, Shape};

fn weights_from_sigma(sigma: Option<&[f64]>) -> Result<Option<Vec<f64>>, MetrologyError> {
    match sigma {
        None => Ok(None),
        Some(s) => {
            if let Some(bad) = s.iter().find(|v| !(**v > 0.0 && v.is_finite())) {
                return Err(MetrologyError::Domain(format!("uncertainties must be positive, got {bad}")));
            }
            Ok(Some(s.iter().map(|v| 1.0 / (v * v)).collect()))
        }
    }
}

/// Peak start values from the data: (baseline, height, index of max, FWHM in x units).
fn peak_guess(x: &[f64], y: &[f64]) -> (f64, f64, usize, f64) {
    let base = y.iter().cloned().fold(f64::MAX, f64::min);
    let (imax, top) = y
        .iter()
        .enumerate()
        .fold((0, f64::MIN), |acc, (i, v)| if *v > acc.1 { (i, *v) } else { acc });
    let half = base + 0.5 * (top - base);
    let mut lo = imax;
    while lo > 0 && y[lo - 1] > half {
        lo -= 1;
    }
    let mut hi = imax;
    while hi + 1 < y.len() && y[hi + 1] > half {
        hi += 1;
    }
    let spacing = (x[x.len() - 1] - x[0]).abs() / (x.len() - 1) as f64;
    let width = (x[hi] - x[lo]).abs().max(spacing);
    (base, top - base, imax, width)
}

#[derive(Clone, Debug, PartialEq)]
pub struct LinewidthFit {
    pub center: f64,
    /// Hz
    pub fwhm: f64,
    pub fwhm_sigma: f64,
    pub amplitude: f64,
    pub offset: f64,
    /// No peak: non-positive amplitude or σ(Γ) > Γ.
    pub unconstrained: bool,
    pub fit: FitResult,
}

/// S(f) = A·(Γ/2)²/((f − f₀)² + (Γ/2)²) + b. `sigma` holds optional per-point
/// 1σ uncertainties.
pub fn lorentzian_linewidth_fit(spectrum: &[(f64, f64)], sigma: Option<&[f64]>) -> Result<LinewidthFit, MetrologyError> {
    if spectrum.len() < 5 {
        return Err(MetrologyError::InsufficientData {
            needed: 5,
            got: spectrum.len(),
        });
    }
    let (f, s): (Vec<f64>, Vec<f64>) = spectrum.iter().cloned().unzip();
    let w = weights_from_sigma(sigma)?;
    let data = match &w {
        Some(w) => FitData::weighted(&f, &s, w),
        None => FitData::new(&f, &s),
    };
    let (base, height, imax, width) = peak_guess(&f, &s);
    let fit = Shape::Lorentzian.fit(&data, &[height, f[imax], width, base])?;
    let fwhm = fit.params[2].abs();
    let fwhm_sigma = fit.sigma_at(2);
    Ok(LinewidthFit {
        center: fit.params[1],
        fwhm,
        fwhm_sigma,
        amplitude: fit.params[0],
        offset: fit.params[3],
        unconstrained: !(fit.params[0] > 0.0) || !(fwhm_sigma <= fwhm),
        fit,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ImageAxis {
    /// Horizontal profile: each column summed over all rows.
    Row,
    /// Vertical profile: each row summed over all columns.
    Column,
}

/// Camera frame, row-major counts.
#[derive(Clone, Debug, PartialEq)]
pub struct ImageProfile {
    pub pixel_counts: Vec<f64>,
    pub columns: usize,
    /// Camera pixel pitch, m.
    pub pixel_pitch: f64,
    pub magnification: f64,
}

impl ImageProfile {
    pub fn new(pixel_counts: Vec<f64>, columns: usize, pixel_pitch: f64, magnification: f64) -> Result<Self, MetrologyError> {
        if columns == 0 || pixel_counts.is_empty() || pixel_counts.len() % columns != 0 {
            return Err(MetrologyError::Domain(format!(
                "{} counts do not fill rows of {columns} columns",
                pixel_counts.len()
            )));
        }
        if !(pixel_pitch > 0.0 && magnification > 0.0) {
            return Err(MetrologyError::Domain("pixel pitch and magnification must be positive".into()));
        }
        if pixel_counts.iter().any(|v| !v.is_finite()) {
            return Err(MetrologyError::Domain("non-finite pixel count".into()));
        }
        Ok(ImageProfile {
            pixel_counts,
            columns,
            pixel_pitch,
            magnification,
        })
    }

    /// A single line of pixels.
    pub fn line(counts: Vec<f64>, pixel_pitch: f64, magnification: f64) -> Result<Self, MetrologyError> {
        let n = counts.len();
        ImageProfile::new(counts, n, pixel_pitch, magnification)
    }

    pub fn rows(&self) -> usize {
        self.pixel_counts.len() / self.columns
    }

    /// Object-plane size of one pixel, m.
    pub fn object_pixel(&self) -> f64 {
        self.pixel_pitch / self.magnification
    }

    pub fn profile(&self, axis: ImageAxis) -> Vec<f64> {
        let rows = self.rows();
        match axis {
            ImageAxis::Row => (0..self.columns)
                .map(|c| (0..rows).map(|r| self.pixel_counts[r * self.columns + c]).sum())
                .collect(),
            ImageAxis::Column => self.pixel_counts.chunks(self.columns).map(|r| r.iter().sum()).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ProfileFit {
    /// Object-plane position of the centre from pixel 0, m.
    pub center: f64,
    /// Gaussian σ in the object plane, m.
    pub width: f64,
    pub width_sigma: f64,
    pub amplitude: f64,
    pub offset: f64,
    pub unconstrained: bool,
    pub fit: FitResult,
}

/// Gaussian + offset fit of a summed image profile in pixel units, scaled to
/// the object plane by pitch/magnification. `sigma` gives per-pixel 1σ of the
/// summed profile.
pub fn gaussian_profile_fit(
    image: &ImageProfile,
    axis: ImageAxis,
    sigma: Option<&[f64]>,
) -> Result<ProfileFit, MetrologyError> {
    let y = image.profile(axis);
    if y.len() < 5 {
        return Err(MetrologyError::InsufficientData { needed: 5, got: y.len() });
    }
    let x: Vec<f64> = (0..y.len()).map(|i| i as f64).collect();
    let w = weights_from_sigma(sigma)?;
    if w.as_ref().is_some_and(|w| w.len() != y.len()) {
        return Err(MetrologyError::Domain("one uncertainty per profile pixel is required".into()));
    }
    let data = match &w {
        Some(w) => FitData::weighted(&x, &y, w),
        None => FitData::new(&x, &y),
    };
    let (base, height, imax, fwhm) = peak_guess(&x, &y);
    let fit = Shape::Gaussian.fit(&data, &[height, imax as f64, fwhm / 2.3548, base])?;
    let scale = image.object_pixel();
    let width_px = fit.params[2].abs();
    let sigma_px = fit.sigma_at(2);
    Ok(ProfileFit {
        center: fit.params[1] * scale,
        width: width_px * scale,
        width_sigma: sigma_px * scale,
        amplitude: fit.params[0],
        offset: fit.params[3],
        unconstrained: !(fit.params[0] > 0.0) || !(sigma_px <= width_px) || width_px > y.len() as f64,
        fit,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rel(a: f64, b: f64) -> f64 {
        (a / b - 1.0).abs()
    }

    #[test]
    fn lorentzian_round_trip() {
        let g = 1.58;
        let spec: Vec<(f64, f64)> = (0..41)
            .map(|i| -10.0 + 0.5 * i as f64)
            .map(|f| (f, 3.0 * (g / 2.0f64).powi(2) / ((f - 0.3).powi(2) + (g / 2.0f64).powi(2)) + 0.05))
            .collect();
        let fit = lorentzian_linewidth_fit(&spec, None).unwrap();
        assert!(rel(fit.fwhm, g) < 1e-6, "{}", fit.fwhm);
        assert!(rel(fit.center, 0.3) < 1e-6);
        assert!(!fit.unconstrained);
    }

    #[test]
    fn flat_spectrum_is_unconstrained() {
        let spec: Vec<(f64, f64)> = (0..20).map(|i| (i as f64, 1.0)).collect();
        assert!(lorentzian_linewidth_fit(&spec, None).unwrap().unconstrained);
        assert!(lorentzian_linewidth_fit(&spec[..4], None).is_err());
    }

    fn ion_image(width_obj: f64, magnification: f64) -> ImageProfile {
        let pitch = 16e-6;
        let s_px = width_obj / (pitch / magnification);
        let (cols, rows) = (32, 24);
        let mut counts = Vec::new();
        for r in 0..rows {
            for c in 0..cols {
                let u = (c as f64 - 15.3) / s_px;
                let v = (r as f64 - 11.8) / s_px;
                counts.push(40.0 * (-0.5 * (u * u + v * v)).exp() + 2.0);
            }
        }
        ImageProfile::new(counts, cols, pitch, magnification).unwrap()
    }

    #[test]
    fn gaussian_round_trip_and_magnification() {
        let img = ion_image(1.84e-6, 15.0);
        let fit = gaussian_profile_fit(&img, ImageAxis::Row, None).unwrap();
        assert!(rel(fit.width, 1.84e-6) < 1e-6, "{}", fit.width);
        let col = gaussian_profile_fit(&img, ImageAxis::Column, None).unwrap();
        assert!(rel(col.width, 1.84e-6) < 1e-6);
        let doubled = ImageProfile {
            magnification: 30.0,
            ..img.clone()
        };
        let half = gaussian_profile_fit(&doubled, ImageAxis::Row, None).unwrap();
        assert!(rel(half.width, 0.92e-6) < 1e-6);
    }

    #[test]
    fn flat_image_is_unconstrained() {
        let img = ImageProfile::line(vec![10.0; 16], 16e-6, 15.0).unwrap();
        assert!(gaussian_profile_fit(&img, ImageAxis::Row, None).unwrap().unconstrained);
        assert!(ImageProfile::new(vec![1.0; 10], 3, 16e-6, 15.0).is_err());
    }
}
