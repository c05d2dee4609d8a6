use std::path::Path;

use cryoion::physcore::constants::TWO_PI;
use cryoion::physcore::Unit;
use cryoion::qubitsim::{
    carrier_rabi_signal, collection_efficiency, diffraction_limited_waist, heating_rate_fit, nbar_to_sideband_ratio,
    ramsey_contrast_fit, sideband_ratio_to_nbar, waist_from_rabi_scan, CarrierModel, DecayModel, DriveParams,
    PhononState,
};

use super::{show, show_plain, show_pm};
use crate::args::{CarrierArg, DecayArg, QubitCmd};
use crate::csvio::{Columns, Records};
use crate::report::{row, Report};
use crate::{CliError, Context};

pub const HEATING_COLUMNS: Columns = Columns::Named {
    required: &["t_s", "nbar"],
    optional: &["sigma"],
};
pub const RAMSEY_COLUMNS: Columns = Columns::Named {
    required: &["t_s", "contrast"],
    optional: &["sigma"],
};
pub const WAIST_COLUMNS: Columns = Columns::Named {
    required: &["x_m", "rabi_rad_s"],
    optional: &["sigma"],
};

/// (x, y) pairs and the optional third σ column.
fn with_sigma(context: &mut Context, path: &Path, columns: Columns) -> Result<(Vec<(f64, f64)>, Option<Vec<f64>>), CliError> {
    let records: Records = context.records(path, columns)?;
    let sigma = records.has_column("sigma").then(|| records.column(2));
    Ok((records.pairs(), sigma))
}

fn weighting_note(r: &mut Report, sigma: &Option<Vec<f64>>) {
    r.text(
        "weighting",
        if sigma.is_some() {
            "per-point sigma column"
        } else {
            "unweighted, covariance scaled by residual variance"
        },
    );
}

pub fn run(cmd: QubitCmd, context: &mut Context) -> Result<Report, CliError> {
    match cmd {
        QubitCmd::Rabi {
            nbar,
            eta,
            rabi_freq,
            t_max,
            points,
            model,
        } => {
            if points < 2 || !(t_max > 0.0) {
                return Err(CliError::Compute("need --points >= 2 and --t-max > 0".into()));
            }
            let state = PhononState::new(nbar)?;
            let drive = DriveParams::resonant(TWO_PI * rabi_freq, eta)?;
            let model = match model {
                CarrierArg::FirstOrder => CarrierModel::FirstOrder,
                CarrierArg::Laguerre => CarrierModel::Laguerre,
            };
            let times: Vec<f64> = (0..points).map(|i| t_max * i as f64 / (points - 1) as f64).collect();
            let signal = carrier_rabi_signal(&state, &drive, &times, model)?;
            let mut r = Report::new("thermal carrier Rabi flop");
            r.quantity("nbar", nbar, "", show_plain(nbar, ""))
                .quantity("lamb_dicke", eta, "", show_plain(eta, ""))
                .quantity("rabi_frequency", rabi_freq, "Hz", show(rabi_freq, Unit::HERTZ, "kHz"))
                .quantity("n_max", state.n_max() as f64, "", state.n_max().to_string())
                .flag("lamb_dicke_warning", signal.lamb_dicke_warning);
            if signal.lamb_dicke_warning {
                r.note("eta >= 0.5: the first-order carrier model is outside its range; prefer --model laguerre");
            }
            let rows = times.iter().zip(&signal.excitation).map(|(t, p)| row(&[*t, *p])).collect();
            r.table("rabi", &["t_s", "p_e"], rows);
            Ok(r)
        }
        QubitCmd::Thermometry { ratio, nbar } => {
            let mut r = Report::new("sideband thermometry");
            let (ratio, nbar) = match (ratio, nbar) {
                (Some(ratio), _) => (ratio, sideband_ratio_to_nbar(ratio)?),
                (None, Some(n)) => (nbar_to_sideband_ratio(n)?, n),
                (None, None) => unreachable!("clap requires --ratio or --nbar"),
            };
            r.quantity("sideband_ratio", ratio, "", show_plain(ratio, ""))
                .quantity("nbar", nbar, "", show_plain(nbar, ""));
            Ok(r)
        }
        QubitCmd::HeatingFit { input } => {
            let (points, sigma) = with_sigma(context, &input, HEATING_COLUMNS)?;
            let f = heating_rate_fit(&points, sigma.as_deref())?;
            let mut r = Report::new("heating rate");
            weighting_note(&mut r, &sigma);
            r.quantity("rate", f.rate, "1/s", show_pm(f.rate, f.rate_sigma, 1.0, "phonons/s"))
                .quantity("rate_sigma", f.rate_sigma, "1/s", show_plain(f.rate_sigma, "phonons/s"))
                .quantity("initial_nbar", f.intercept, "", show_pm(f.intercept, f.intercept_sigma, 1.0, ""))
                .quantity("initial_nbar_sigma", f.intercept_sigma, "", show_plain(f.intercept_sigma, ""))
                .quantity("chi_squared", f.fit.chi_squared, "", show_plain(f.fit.chi_squared, ""));
            Ok(r)
        }
        QubitCmd::RamseyFit { input, model } => {
            let (points, sigma) = with_sigma(context, &input, RAMSEY_COLUMNS)?;
            let (decay, name) = match model {
                DecayArg::Gaussian => (DecayModel::Gaussian, "gaussian"),
                DecayArg::Exponential => (DecayModel::Exponential, "exponential"),
            };
            let f = ramsey_contrast_fit(&points, decay, sigma.as_deref())?;
            let mut r = Report::new("Ramsey contrast decay");
            weighting_note(&mut r, &sigma);
            r.text("model", name)
                .quantity("initial_contrast", f.c0, "", show_plain(f.c0, ""))
                .quantity("t_1e", f.t_1e, "s", show_pm(f.t_1e, f.t_1e_sigma, 1e-3, "ms"))
                .quantity("t_1e_sigma", f.t_1e_sigma, "s", show(f.t_1e_sigma, Unit::SECOND, "ms"))
                .flag("unconstrained", f.unconstrained);
            if f.unconstrained {
                r.note("the data do not constrain the coherence time; treat t_1e as a lower bound");
            }
            Ok(r)
        }
        QubitCmd::WaistFit { input } => {
            let (points, sigma) = with_sigma(context, &input, WAIST_COLUMNS)?;
            let f = waist_from_rabi_scan(&points, sigma.as_deref())?;
            let b = f.profile;
            let mut r = Report::new("beam waist");
            weighting_note(&mut r, &sigma);
            r.quantity("waist", b.waist, "m", show_pm(b.waist, f.waist_sigma, 1e-6, "µm"))
                .quantity("waist_sigma", f.waist_sigma, "m", show(f.waist_sigma, Unit::METER, "µm"))
                .quantity("center", b.center, "m", show(b.center, Unit::METER, "µm"))
                .quantity(
                    "peak_rabi_frequency",
                    b.peak_rabi / TWO_PI,
                    "Hz",
                    show(b.peak_rabi / TWO_PI, Unit::HERTZ, "kHz"),
                )
                .flag("unconstrained", f.unconstrained);
            Ok(r)
        }
        QubitCmd::Optics { na, wavelength } => {
            let eta = collection_efficiency(na)?;
            let mut r = Report::new("imaging optics");
            r.quantity("na", na, "", show_plain(na, ""))
                .quantity("collection_efficiency", eta, "", show(eta, Unit::DIMENSIONLESS, "%"));
            if na > 0.0 {
                let w = diffraction_limited_waist(wavelength, na)?;
                r.quantity("wavelength", wavelength, "m", show(wavelength, Unit::METER, "nm"))
                    .quantity("diffraction_limited_waist", w, "m", show(w, Unit::METER, "µm"));
            }
            Ok(r)
        }
    }
}
