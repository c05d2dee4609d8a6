//! Unit-aware flag values.
//!
//! Every numeric flag goes through [`Quantity::parse`], so `--freq 50Hz`,
//! `--freq 0.05kHz` and a bare SI `--freq 50` all mean the same thing.
//! A separate `--freq-unit Hz` is folded into the value before clap sees it.

use cryoion::physcore::{Quantity, Unit};

fn parse(input: &str, unit: Unit) -> Result<f64, String> {
    Quantity::parse(input, unit).map(|q| q.value()).map_err(|e| e.to_string())
}

macro_rules! parsers {
    ($($name:ident => $unit:expr),* $(,)?) => {
        $(pub fn $name(input: &str) -> Result<f64, String> {
            parse(input, $unit)
        })*
    };
}

parsers! {
    length => Unit::METER,
    time => Unit::SECOND,
    frequency => Unit::HERTZ,
    angular_frequency => Unit::RAD_PER_SECOND,
    field => Unit::TESLA,
    field_sensitivity => Unit::HERTZ_PER_TESLA,
    temperature => Unit::KELVIN,
    voltage => Unit::VOLT,
    current => Unit::AMPERE,
    inductance => Unit::HENRY,
    capacitance => Unit::FARAD,
    conductivity => Unit::SIEMENS_PER_METER,
    decibel => Unit::DECIBEL,
    flow => Unit::CUBIC_METER_PER_SECOND,
    number => Unit::DIMENSIONLESS,
}

/// Folds `--name-unit U` into the value of `--name`, so that
/// `--freq 50 --freq-unit Hz` becomes `--freq 50Hz`. Both the spaced and the
/// `=` forms are accepted for either flag.
pub fn fold_unit_flags(argv: &[String]) -> Result<Vec<String>, String> {
    let mut units: Vec<(String, String)> = Vec::new();
    let mut rest: Vec<String> = Vec::new();
    let mut i = 0;
    while i < argv.len() {
        let arg = &argv[i];
        if let Some(body) = arg.strip_prefix("--") {
            let (name, inline) = match body.split_once('=') {
                Some((n, v)) => (n, Some(v.to_string())),
                None => (body, None),
            };
            if let Some(target) = name.strip_suffix("-unit") {
                let unit = match inline {
                    Some(v) => v,
                    None => {
                        i += 1;
                        argv.get(i).cloned().ok_or_else(|| format!("--{name} needs a value"))?
                    }
                };
                if units.iter().any(|(t, _)| t == target) {
                    return Err(format!("--{name} given twice"));
                }
                units.push((target.to_string(), unit));
                i += 1;
                continue;
            }
        }
        rest.push(arg.clone());
        i += 1;
    }

    for (target, unit) in units {
        let flag = format!("--{target}");
        let prefix = format!("--{target}=");
        let position = rest.iter().position(|a| *a == flag || a.starts_with(&prefix));
        let Some(p) = position else {
            return Err(format!("--{target}-unit given without --{target}"));
        };
        let value_index = if rest[p] == flag { p + 1 } else { p };
        let Some(slot) = rest.get_mut(value_index) else {
            return Err(format!("{flag} needs a value"));
        };
        let value = if value_index == p { &slot[prefix.len()..] } else { slot.as_str() };
        if value.ends_with(|c: char| !(c.is_ascii_digit() || c == '.')) {
            return Err(format!("{flag} {value} already carries a unit; drop --{target}-unit"));
        }
        *slot = format!("{slot}{unit}");
    }
    Ok(rest)
}
