use std::path::Path;

use cryoion::magshield::{
    attenuation_skin, coil_field, coil_homogeneity, conductivity_at, field_noise_budget, fit_attenuation_regime,
    skin_depth, AttenuationCurve, CoilPair, ConductorSpec, FieldAxis, Regime, RegimeModel, ShieldLayer,
    EXTRAPOLATION_FREQUENCY_HZ, MEASURED_50HZ_ATTENUATION,
};
use cryoion::physcore::units::format_significant;
use cryoion::physcore::Unit;
use serde_json::json;

use super::{show, show_plain, show_sig};
use crate::args::{AxisArg, CoilArgs, ConductorArgs};
use crate::csvio::Columns;
use crate::report::Report;
use crate::{CliError, Context};

pub const CURVE_COLUMNS: Columns = Columns::exact(&["freq_hz", "atten_db"]);

fn conductor(args: &ConductorArgs) -> Result<ConductorSpec, CliError> {
    Ok(ConductorSpec::new(args.sigma, args.rrr, args.mu_r)?.with_ratio_77k(args.ratio_77k)?)
}

fn conductor_entries(report: &mut Report, c: &ConductorSpec, temp: f64) -> Result<(), CliError> {
    let sigma = conductivity_at(c, temp)?;
    report
        .quantity("temperature", temp, "K", show(temp, Unit::KELVIN, "K"))
        .quantity("conductivity", sigma, "S/m", show(sigma, Unit::SIEMENS_PER_METER, "S/m"));
    Ok(())
}

pub fn skin_depth_cmd(freq: f64, temp: f64, args: &ConductorArgs) -> Result<Report, CliError> {
    let c = conductor(args)?;
    let delta = skin_depth(freq, &c, temp)?;
    let mut r = Report::new("skin depth");
    r.quantity("frequency", freq, "Hz", show(freq, Unit::HERTZ, "Hz"));
    conductor_entries(&mut r, &c, temp)?;
    r.quantity("skin_depth", delta, "m", show(delta, Unit::METER, "mm"));
    Ok(r)
}

pub fn attenuation(freq: f64, temp: f64, thickness: f64, args: &ConductorArgs) -> Result<Report, CliError> {
    let c = conductor(args)?;
    let delta = skin_depth(freq, &c, temp)?;
    let db = attenuation_skin(&ShieldLayer::new(thickness, c, temp)?, freq)?;
    let mut r = Report::new("skin-effect attenuation");
    r.quantity("frequency", freq, "Hz", show(freq, Unit::HERTZ, "Hz"))
        .quantity("thickness", thickness, "m", show(thickness, Unit::METER, "mm"));
    conductor_entries(&mut r, &c, temp)?;
    r.quantity("skin_depth", delta, "m", show(delta, Unit::METER, "mm"))
        .quantity("attenuation", db, "dB", show(db, Unit::DECIBEL, "dB"));
    Ok(r)
}

fn axis(a: AxisArg) -> FieldAxis {
    match a {
        AxisArg::Along => FieldAxis::AlongQuantization,
        AxisArg::Perp => FieldAxis::Perpendicular,
    }
}

fn regime_name(r: Regime) -> &'static str {
    match r {
        Regime::SkinLimited => "skin-limited",
        Regime::ContactLimited => "contact-limited",
    }
}

pub fn fit(context: &mut Context, input: &Path, floor: f64, field_axis: AxisArg) -> Result<Report, CliError> {
    let records = context.records(input, CURVE_COLUMNS)?;
    let curve = AttenuationCurve::new(records.pairs(), floor, axis(field_axis))?;
    let fit = fit_attenuation_regime(&curve)?;
    let RegimeModel::Skin { a } = fit.skin.model else { unreachable!("skin fit") };
    let RegimeModel::Contact { b, s } = fit.contact.model else { unreachable!("contact fit") };

    let mut r = Report::new("attenuation regime fit");
    r.quantity("floor", floor, "dB", show(floor, Unit::DECIBEL, "dB"))
        .quantity("usable_points", fit.usable_points as f64, "", fit.usable_points.to_string())
        .text("regime", regime_name(fit.regime))
        .quantity(
            "attenuation_50hz",
            fit.extrapolated_50hz_db,
            "dB",
            show(fit.extrapolated_50hz_db, Unit::DECIBEL, "dB"),
        );
    if let Some(alt) = fit.alternative_50hz_db {
        r.quantity("alternative_50hz", alt, "dB", show(alt, Unit::DECIBEL, "dB"))
            .note("the other regime fits within a factor two in residual; both 50 Hz values are reported");
    }
    r.quantity("skin_a", a, "dB/sqrt(Hz)", show_plain(a, "dB/√Hz"))
        .quantity("skin_residual_rms", fit.skin.residual_rms, "dB", show(fit.skin.residual_rms, Unit::DECIBEL, "dB"))
        .quantity("contact_b", b, "dB", show(b, Unit::DECIBEL, "dB"))
        .quantity("contact_s", s, "", show_plain(s, ""))
        .quantity(
            "contact_residual_rms",
            fit.contact.residual_rms,
            "dB",
            show(fit.contact.residual_rms, Unit::DECIBEL, "dB"),
        );
    let rows = curve
        .points()
        .iter()
        .map(|&(f, db)| {
            vec![
                json!(f),
                json!(db),
                json!(db > floor),
                json!(fit.skin.model.value_at(f)),
                json!(fit.contact.model.value_at(f)),
            ]
        })
        .collect();
    r.table(
        "curve",
        &["freq_hz", "atten_db", "usable", "skin_model_db", "contact_model_db"],
        rows,
    );
    Ok(r)
}

pub fn budget(linewidth: f64, sensitivity: f64, field: f64) -> Result<Report, CliError> {
    let b = field_noise_budget(sensitivity, linewidth, field)?;
    let mut r = Report::new("field-noise budget");
    r.quantity("linewidth", linewidth, "Hz", show(linewidth, Unit::HERTZ, "mHz"))
        .quantity("sensitivity", sensitivity, "Hz/T", show(sensitivity, Unit::HERTZ_PER_TESLA, "GHz/T"))
        .quantity("quantization_field", field, "T", show(field, Unit::TESLA, "mT"))
        .quantity("max_field_excursion", b.b_max, "T", show_sig(b.b_max, Unit::TESLA, "pT", 2))
        .quantity(
            "relative_stability",
            b.relative_stability,
            "",
            format_significant(b.relative_stability, 2),
        );
    Ok(r)
}

fn pair(args: &CoilArgs) -> Result<CoilPair, CliError> {
    Ok(CoilPair::new(
        args.radius,
        args.separation.unwrap_or(args.radius),
        args.turns,
        args.current,
    )?)
}

fn coil_entries(r: &mut Report, p: &CoilPair) {
    r.quantity("radius", p.radius, "m", show(p.radius, Unit::METER, "cm"))
        .quantity("separation", p.separation, "m", show(p.separation, Unit::METER, "cm"))
        .quantity("ampere_turns", p.turns * p.current, "A", show(p.turns * p.current, Unit::AMPERE, "A"));
}

pub fn coil_field_at(args: &CoilArgs, point: [f64; 3]) -> Result<Report, CliError> {
    let p = pair(args)?;
    let b = coil_field(&p, point)?;
    let norm = b.iter().map(|v| v * v).sum::<f64>().sqrt();
    let mut r = Report::new("coil field");
    coil_entries(&mut r, &p);
    for (name, v) in ["x", "y", "z"].iter().zip(point) {
        r.quantity(name, v, "m", show(v, Unit::METER, "mm"));
    }
    for (name, v) in ["b_x", "b_y", "b_z"].iter().zip(b) {
        r.quantity(name, v, "T", show(v, Unit::TESLA, "µT"));
    }
    r.quantity("b_magnitude", norm, "T", show(norm, Unit::TESLA, "µT"));
    Ok(r)
}

pub fn homogeneity(args: &CoilArgs, extent: f64) -> Result<Report, CliError> {
    let p = pair(args)?;
    let dev = coil_homogeneity(&p, extent)?;
    let b0 = coil_field(&p, [0.0; 3])?[2];
    let mut r = Report::new("axial homogeneity");
    coil_entries(&mut r, &p);
    r.quantity("extent", extent, "m", show(extent, Unit::METER, "mm"))
        .quantity("b_center", b0, "T", show(b0, Unit::TESLA, "µT"))
        .quantity("max_relative_deviation", dev, "", format_significant(dev, 2));
    Ok(r)
}

/// Measured inner-shield attenuation at 50 Hz beside the plane-wall skin
/// model of the same wall at each temperature.
pub fn table1(
    context: &mut Context,
    thickness: f64,
    freq: f64,
    args: &ConductorArgs,
    curve_file: Option<&Path>,
    floor: f64,
) -> Result<Report, CliError> {
    let c = conductor(args)?;
    let mut r = Report::new("50 Hz inner-shield attenuation");
    r.quantity("thickness", thickness, "m", show(thickness, Unit::METER, "mm"))
        .quantity("frequency", freq, "Hz", show(freq, Unit::HERTZ, "Hz"))
        .quantity("rrr", c.rrr, "", show_plain(c.rrr, ""));
    let mut rows = Vec::new();
    for (t, measured, extrapolated) in MEASURED_50HZ_ATTENUATION {
        let model = attenuation_skin(&ShieldLayer::new(thickness, c, t)?, freq)?;
        rows.push(vec![json!(t), json!(measured), json!(extrapolated), json!(model)]);
    }
    if let Some(path) = curve_file {
        let records = context.records(path, CURVE_COLUMNS)?;
        let curve = AttenuationCurve::new(records.pairs(), floor, FieldAxis::AlongQuantization)?;
        let fit = fit_attenuation_regime(&curve)?;
        r.text("fitted_regime", regime_name(fit.regime)).quantity(
            "fitted_attenuation_50hz",
            fit.extrapolated_50hz_db,
            "dB",
            show(fit.extrapolated_50hz_db, Unit::DECIBEL, "dB"),
        );
        if let Some(alt) = fit.alternative_50hz_db {
            r.quantity("fitted_alternative_50hz", alt, "dB", show(alt, Unit::DECIBEL, "dB"));
        }
        if freq != EXTRAPOLATION_FREQUENCY_HZ {
            r.note("the fitted curve is extrapolated to 50 Hz regardless of --freq");
        }
    }
    r.note("extrapolated rows come from curves measured above the noise floor");
    r.table(
        "table1",
        &["temperature_K", "attenuation_dB", "extrapolated", "skin_model_dB"],
        rows,
    );
    Ok(r)
}
