use cryoion::demo::qubit_laser_frequency;
use cryoion::metrology::{
    allan_deviation, excursion_stats, fringe_to_displacement, gaussian_profile_fit, lorentzian_linewidth_fit,
    octave_taus, peak_find, power_spectrum, FrequencyRecord, ImageAxis, ImageProfile, InterferometerCal, RecordKind,
    Window,
};
use cryoion::physcore::Unit;
use serde_json::json;

use super::{show, show_plain, show_pm};
use crate::args::{ImageAxisArg, MetCmd, RecordArg, TaperArg};
use crate::csvio::{to_series, Columns};
use crate::report::{row, Report};
use crate::{CliError, Context};

pub const LINEWIDTH_COLUMNS: Columns = Columns::Named {
    required: &["f_hz", "psd"],
    optional: &["sigma"],
};
pub const VOLTAGE_COLUMNS: Columns = Columns::exact(&["t_s", "v"]);

pub fn run(cmd: MetCmd, context: &mut Context) -> Result<Report, CliError> {
    match cmd {
        MetCmd::Allan { input, kind, nominal } => {
            let (columns, name): (&[&str], &str) = match kind {
                RecordArg::Fractional => (&["t_s", "y"], "fractional frequency"),
                RecordArg::BeatHz => (&["t_s", "beat_hz"], "beat frequency, Hz"),
                RecordArg::Phase => (&["t_s", "x_s"], "phase, s"),
            };
            let records = context.records(&input, Columns::exact(columns))?;
            let series = to_series(&records, &input.display().to_string(), 1)?;
            let nominal = nominal.unwrap_or_else(qubit_laser_frequency);
            let record = match kind {
                RecordArg::Fractional => FrequencyRecord::new(RecordKind::FractionalFrequency, series, nominal)?,
                RecordArg::BeatHz => FrequencyRecord::from_beat_hz(series, nominal)?,
                RecordArg::Phase => FrequencyRecord::new(RecordKind::PhaseSeconds, series, nominal)?,
            };
            let taus = octave_taus(&record);
            let points = allan_deviation(&record, &taus)?;
            let mut r = Report::new("overlapping Allan deviation");
            r.text("record", name)
                .quantity("samples", record.series.len() as f64, "", record.series.len().to_string())
                .quantity("dt", record.series.dt(), "s", show(record.series.dt(), Unit::SECOND, "ms"))
                .quantity("nominal_frequency", nominal, "Hz", show(nominal, Unit::HERTZ, "GHz"));
            if let Some(best) = points.iter().min_by(|a, b| a.sigma_y.total_cmp(&b.sigma_y)) {
                r.quantity("min_sigma_y", best.sigma_y, "", show_plain(best.sigma_y, ""))
                    .quantity("tau_at_min", best.tau, "s", show(best.tau, Unit::SECOND, "s"));
            }
            if matches!(kind, RecordArg::BeatHz) {
                r.note("values describe the beat note; divide by sqrt(2) for one of two equal lasers");
            }
            let rows = points
                .iter()
                .map(|p| vec![json!(p.tau), json!(p.sigma_y), json!(p.terms)])
                .collect();
            r.table("allan", &["tau_s", "sigma_y", "terms"], rows);
            Ok(r)
        }
        MetCmd::Linewidth { input } => {
            let records = context.records(&input, LINEWIDTH_COLUMNS)?;
            let sigma = records.has_column("sigma").then(|| records.column(2));
            let f = lorentzian_linewidth_fit(&records.pairs(), sigma.as_deref())?;
            let mut r = Report::new("Lorentzian linewidth");
            r.quantity("fwhm", f.fwhm, "Hz", show_pm(f.fwhm, f.fwhm_sigma, 1.0, "Hz"))
                .quantity("fwhm_sigma", f.fwhm_sigma, "Hz", show(f.fwhm_sigma, Unit::HERTZ, "Hz"))
                .quantity("center", f.center, "Hz", show_plain(f.center, "Hz"))
                .quantity("amplitude", f.amplitude, "", show_plain(f.amplitude, ""))
                .quantity("offset", f.offset, "", show_plain(f.offset, ""))
                .flag("unconstrained", f.unconstrained);
            Ok(r)
        }
        MetCmd::Vib {
            input,
            wavelength,
            volts_per_fringe,
            offset,
            window,
            peaks,
            min_sep,
            taper,
        } => {
            let records = context.records(&input, VOLTAGE_COLUMNS)?;
            let signal = to_series(&records, &input.display().to_string(), 1)?;
            let cal = InterferometerCal::new(wavelength, volts_per_fringe, offset)?;
            let inv = fringe_to_displacement(&signal, &cal)?;
            let x = &inv.displacement;
            let stats = excursion_stats(x, window.min(x.len() as f64 * x.dt()))?;
            let taper = match taper {
                TaperArg::Hann => Window::Hann,
                TaperArg::Rect => Window::Rect,
            };
            let spectrum = power_spectrum(x, taper)?;
            let found = peak_find(&spectrum, peaks, min_sep);
            let mut r = Report::new("interferometric vibration record");
            r.quantity("samples", x.len() as f64, "", x.len().to_string())
                .quantity("duration", x.len() as f64 * x.dt(), "s", show(x.len() as f64 * x.dt(), Unit::SECOND, "s"))
                .quantity("clipped_samples", inv.clipped_count as f64, "", inv.clipped_count.to_string())
                .quantity("max_excursion", stats.max_abs, "m", show(stats.max_abs, Unit::METER, "nm"))
                .quantity("peak_to_peak", stats.peak_to_peak, "m", show(stats.peak_to_peak, Unit::METER, "nm"))
                .quantity("drift", stats.drift, "m", show(stats.drift, Unit::METER, "nm"))
                .quantity("resolution", spectrum.df, "Hz", show(spectrum.df, Unit::HERTZ, "Hz"));
            for (i, p) in found.iter().enumerate() {
                r.quantity(&format!("peak_{}", i + 1), p.frequency, "Hz", show(p.frequency, Unit::HERTZ, "Hz"));
            }
            let rows = spectrum
                .frequencies
                .iter()
                .zip(&spectrum.psd)
                .map(|(f, p)| row(&[*f, *p]))
                .collect();
            r.table("spectrum", &["freq_hz", "psd_m2_per_hz"], rows);
            Ok(r)
        }
        MetCmd::ImageFit {
            input,
            pitch,
            magnification,
            axis,
            poisson,
        } => {
            let records = context.records(&input, Columns::Any)?;
            let columns = records.header.len();
            let counts: Vec<f64> = records.rows.into_iter().flatten().collect();
            let image = ImageProfile::new(counts, columns, pitch, magnification)?;
            let axis = match axis {
                ImageAxisArg::Row => ImageAxis::Row,
                ImageAxisArg::Column => ImageAxis::Column,
            };
            let sigma: Option<Vec<f64>> = poisson.then(|| image.profile(axis).iter().map(|v| v.max(1.0).sqrt()).collect());
            let f = gaussian_profile_fit(&image, axis, sigma.as_deref())?;
            let mut r = Report::new("ion image profile");
            r.quantity("columns", columns as f64, "", columns.to_string())
                .quantity("rows", image.rows() as f64, "", image.rows().to_string())
                .quantity("object_pixel", image.object_pixel(), "m", show(image.object_pixel(), Unit::METER, "µm"))
                .quantity("width", f.width, "m", show_pm(f.width, f.width_sigma, 1e-6, "µm"))
                .quantity("width_sigma", f.width_sigma, "m", show(f.width_sigma, Unit::METER, "µm"))
                .quantity("center", f.center, "m", show(f.center, Unit::METER, "µm"))
                .flag("unconstrained", f.unconstrained)
                .note("width is the Gaussian standard deviation in the object plane");
            Ok(r)
        }
    }
}
