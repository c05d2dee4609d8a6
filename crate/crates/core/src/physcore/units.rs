//! Dimensioned scalars.
//!
//! A [`Quantity`] is an SI value paired with a [`Unit`]. Units are stored as
//! integer exponents over the SI base dimensions plus an angle pseudo-dimension
//! (so that `rad/s` and `Hz` do not mix) and a logarithmic flag for decibels.
//! Everything inside the crate works in plain SI; prefixed units such as `mm`
//! or `GHz/T` only exist in [`Quantity::parse`] and [`Quantity::display_in`].

use std::fmt;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum UnitError {
    #[error("incompatible units: {op} of {lhs} and {rhs}")]
    Incompatible {
        op: &'static str,
        lhs: Unit,
        rhs: Unit,
    },
    #[error("non-finite quantity value {0}")]
    NonFinite(f64),
    #[error("cannot parse quantity '{0}'")]
    Parse(String),
    #[error("unknown unit '{0}'")]
    UnknownUnit(String),
    #[error("expected a value in {expected}, got '{input}' ({found})")]
    WrongUnit {
        input: String,
        expected: Unit,
        found: Unit,
    },
}

/// Exponents over (m, kg, s, A, K, rad) plus a logarithmic flag.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Unit {
    m: i8,
    kg: i8,
    s: i8,
    a: i8,
    k: i8,
    rad: i8,
    log: bool,
}

impl Unit {
    const fn dim(m: i8, kg: i8, s: i8, a: i8, k: i8, rad: i8) -> Self {
        Unit {
            m,
            kg,
            s,
            a,
            k,
            rad,
            log: false,
        }
    }

    pub const DIMENSIONLESS: Unit = Unit::dim(0, 0, 0, 0, 0, 0);
    pub const DECIBEL: Unit = Unit {
        log: true,
        ..Unit::DIMENSIONLESS
    };
    pub const METER: Unit = Unit::dim(1, 0, 0, 0, 0, 0);
    pub const SQUARE_METER: Unit = Unit::dim(2, 0, 0, 0, 0, 0);
    pub const KILOGRAM: Unit = Unit::dim(0, 1, 0, 0, 0, 0);
    pub const SECOND: Unit = Unit::dim(0, 0, 1, 0, 0, 0);
    pub const AMPERE: Unit = Unit::dim(0, 0, 0, 1, 0, 0);
    pub const KELVIN: Unit = Unit::dim(0, 0, 0, 0, 1, 0);
    pub const RADIAN: Unit = Unit::dim(0, 0, 0, 0, 0, 1);
    pub const HERTZ: Unit = Unit::dim(0, 0, -1, 0, 0, 0);
    pub const RAD_PER_SECOND: Unit = Unit::dim(0, 0, -1, 0, 0, 1);
    pub const TESLA: Unit = Unit::dim(0, 1, -2, -1, 0, 0);
    pub const HERTZ_PER_TESLA: Unit = Unit::dim(0, -1, 1, 1, 0, 0);
    pub const WATT: Unit = Unit::dim(2, 1, -3, 0, 0, 0);
    pub const JOULE: Unit = Unit::dim(2, 1, -2, 0, 0, 0);
    pub const VOLT: Unit = Unit::dim(2, 1, -3, -1, 0, 0);
    pub const COULOMB: Unit = Unit::dim(0, 0, 1, 1, 0, 0);
    pub const FARAD: Unit = Unit::dim(-2, -1, 4, 2, 0, 0);
    pub const HENRY: Unit = Unit::dim(2, 1, -2, -2, 0, 0);
    pub const SIEMENS_PER_METER: Unit = Unit::dim(-3, -1, 3, 2, 0, 0);
    pub const WATT_PER_METER_KELVIN: Unit = Unit::dim(1, 1, -3, 0, -1, 0);
    pub const CUBIC_METER_PER_SECOND: Unit = Unit::dim(3, 0, -1, 0, 0, 0);

    pub fn is_dimensionless(self) -> bool {
        self == Unit::DIMENSIONLESS
    }

    fn combine(self, rhs: Unit, sign: i8, op: &'static str) -> Result<Unit, UnitError> {
        if self.log || rhs.log {
            // Logarithmic values may only be scaled by plain numbers.
            if rhs.is_dimensionless() {
                return Ok(self);
            }
            if self.is_dimensionless() && sign > 0 {
                return Ok(rhs);
            }
            return Err(UnitError::Incompatible { op, lhs: self, rhs });
        }
        Ok(Unit {
            m: self.m + sign * rhs.m,
            kg: self.kg + sign * rhs.kg,
            s: self.s + sign * rhs.s,
            a: self.a + sign * rhs.a,
            k: self.k + sign * rhs.k,
            rad: self.rad + sign * rhs.rad,
            log: false,
        })
    }
}

const NAMED: &[(&str, Unit)] = &[
    ("", Unit::DIMENSIONLESS),
    ("dB", Unit::DECIBEL),
    ("m", Unit::METER),
    ("m^2", Unit::SQUARE_METER),
    ("kg", Unit::KILOGRAM),
    ("s", Unit::SECOND),
    ("A", Unit::AMPERE),
    ("K", Unit::KELVIN),
    ("rad", Unit::RADIAN),
    ("Hz", Unit::HERTZ),
    ("rad/s", Unit::RAD_PER_SECOND),
    ("T", Unit::TESLA),
    ("Hz/T", Unit::HERTZ_PER_TESLA),
    ("W", Unit::WATT),
    ("J", Unit::JOULE),
    ("V", Unit::VOLT),
    ("C", Unit::COULOMB),
    ("F", Unit::FARAD),
    ("H", Unit::HENRY),
    ("S/m", Unit::SIEMENS_PER_METER),
    ("W/(m K)", Unit::WATT_PER_METER_KELVIN),
    ("m^3/s", Unit::CUBIC_METER_PER_SECOND),
];

impl fmt::Display for Unit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some((name, _)) = NAMED.iter().find(|(_, u)| u == self) {
            if name.is_empty() {
                return f.write_str("1");
            }
            return f.write_str(name);
        }
        let mut parts = Vec::new();
        for (sym, e) in [
            ("m", self.m),
            ("kg", self.kg),
            ("s", self.s),
            ("A", self.a),
            ("K", self.k),
            ("rad", self.rad),
        ] {
            match e {
                0 => {}
                1 => parts.push(sym.to_string()),
                _ => parts.push(format!("{sym}^{e}")),
            }
        }
        if self.log {
            parts.push("dB".into());
        }
        f.write_str(&parts.join(" "))
    }
}

/// Symbols accepted after a number, with their SI scale factor.
///
/// Prefixes (`p n u µ m c k M G`) are applied to these, except to entries
/// that already carry one (`kg`, `l/h`, `%`).
const SYMBOLS: &[(&str, f64, Unit)] = &[
    ("m", 1.0, Unit::METER),
    ("s", 1.0, Unit::SECOND),
    ("Hz", 1.0, Unit::HERTZ),
    ("rad/s", 1.0, Unit::RAD_PER_SECOND),
    ("T", 1.0, Unit::TESLA),
    ("Hz/T", 1.0, Unit::HERTZ_PER_TESLA),
    ("K", 1.0, Unit::KELVIN),
    ("W", 1.0, Unit::WATT),
    ("J", 1.0, Unit::JOULE),
    ("eV", 1.602_176_634e-19, Unit::JOULE),
    ("V", 1.0, Unit::VOLT),
    ("A", 1.0, Unit::AMPERE),
    ("C", 1.0, Unit::COULOMB),
    ("F", 1.0, Unit::FARAD),
    ("H", 1.0, Unit::HENRY),
    ("S/m", 1.0, Unit::SIEMENS_PER_METER),
    ("W/mK", 1.0, Unit::WATT_PER_METER_KELVIN),
    ("dB", 1.0, Unit::DECIBEL),
    ("g", 1e-3, Unit::KILOGRAM),
    ("m2", 1.0, Unit::SQUARE_METER),
];

const FIXED_SYMBOLS: &[(&str, f64, Unit)] = &[
    ("kg", 1.0, Unit::KILOGRAM),
    ("mm2", 1e-6, Unit::SQUARE_METER),
    ("l/h", 1e-3 / 3600.0, Unit::CUBIC_METER_PER_SECOND),
    ("%", 1e-2, Unit::DIMENSIONLESS),
];

const PREFIXES: &[(char, f64)] = &[
    ('p', 1e-12),
    ('n', 1e-9),
    ('u', 1e-6),
    ('µ', 1e-6),
    ('m', 1e-3),
    ('c', 1e-2),
    ('k', 1e3),
    ('M', 1e6),
    ('G', 1e9),
];

fn lookup_symbol(symbol: &str) -> Option<(f64, Unit)> {
    let exact = |table: &[(&str, f64, Unit)]| {
        table
            .iter()
            .find(|(s, _, _)| *s == symbol)
            .map(|&(_, scale, unit)| (scale, unit))
    };
    if let Some(found) = exact(FIXED_SYMBOLS).or_else(|| exact(SYMBOLS)) {
        return Some(found);
    }
    let mut chars = symbol.chars();
    let first = chars.next()?;
    let rest = chars.as_str();
    let (_, factor) = PREFIXES.iter().find(|(p, _)| *p == first)?;
    SYMBOLS
        .iter()
        .find(|(s, _, _)| *s == rest)
        .map(|&(_, scale, unit)| (factor * scale, unit))
}

/// A finite SI value with its unit.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Quantity {
    value: f64,
    unit: Unit,
}

impl Quantity {
    pub fn new(value: f64, unit: Unit) -> Result<Self, UnitError> {
        if !value.is_finite() {
            return Err(UnitError::NonFinite(value));
        }
        Ok(Quantity { value, unit })
    }

    pub fn value(&self) -> f64 {
        self.value
    }

    pub fn unit(&self) -> Unit {
        self.unit
    }

    /// Returns the SI value after checking the unit matches `expected`.
    pub fn value_in(&self, expected: Unit) -> Result<f64, UnitError> {
        if self.unit != expected {
            return Err(UnitError::Incompatible {
                op: "conversion",
                lhs: self.unit,
                rhs: expected,
            });
        }
        Ok(self.value)
    }

    pub fn checked_add(self, rhs: Quantity) -> Result<Quantity, UnitError> {
        if self.unit != rhs.unit {
            return Err(UnitError::Incompatible {
                op: "addition",
                lhs: self.unit,
                rhs: rhs.unit,
            });
        }
        Quantity::new(self.value + rhs.value, self.unit)
    }

    pub fn checked_sub(self, rhs: Quantity) -> Result<Quantity, UnitError> {
        if self.unit != rhs.unit {
            return Err(UnitError::Incompatible {
                op: "subtraction",
                lhs: self.unit,
                rhs: rhs.unit,
            });
        }
        Quantity::new(self.value - rhs.value, self.unit)
    }

    pub fn checked_mul(self, rhs: Quantity) -> Result<Quantity, UnitError> {
        let unit = self.unit.combine(rhs.unit, 1, "multiplication")?;
        Quantity::new(self.value * rhs.value, unit)
    }

    pub fn checked_div(self, rhs: Quantity) -> Result<Quantity, UnitError> {
        let unit = self.unit.combine(rhs.unit, -1, "division")?;
        Quantity::new(self.value / rhs.value, unit)
    }

    pub fn scale(self, factor: f64) -> Result<Quantity, UnitError> {
        Quantity::new(self.value * factor, self.unit)
    }

    /// Parses `"20mm"`, `"39 GHz/T"`, `"5.96e7"` and similar.
    ///
    /// A bare number is taken as SI in `expected`. A suffix must resolve to
    /// exactly `expected`.
    pub fn parse(input: &str, expected: Unit) -> Result<Quantity, UnitError> {
        let text = input.trim();
        let (value, suffix) = split_number(text).ok_or_else(|| UnitError::Parse(input.into()))?;
        let suffix = suffix.trim();
        if suffix.is_empty() {
            return Quantity::new(value, expected);
        }
        let (scale, unit) =
            lookup_symbol(suffix).ok_or_else(|| UnitError::UnknownUnit(suffix.into()))?;
        if unit != expected {
            return Err(UnitError::WrongUnit {
                input: input.into(),
                expected,
                found: unit,
            });
        }
        Quantity::new(value * scale, unit)
    }

    /// Formats the value in a prefixed display unit, e.g. `display_in("mm", 3)`.
    pub fn display_in(&self, symbol: &str, significant: usize) -> Result<String, UnitError> {
        let (scale, unit) =
            lookup_symbol(symbol).ok_or_else(|| UnitError::UnknownUnit(symbol.into()))?;
        if unit != self.unit {
            return Err(UnitError::WrongUnit {
                input: symbol.into(),
                expected: self.unit,
                found: unit,
            });
        }
        Ok(format!(
            "{} {symbol}",
            format_significant(self.value / scale, significant)
        ))
    }
}

impl fmt::Display for Quantity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.unit.is_dimensionless() {
            write!(f, "{}", self.value)
        } else {
            write!(f, "{} {}", self.value, self.unit)
        }
    }
}

fn split_number(text: &str) -> Option<(f64, &str)> {
    let numeric_end = text
        .char_indices()
        .find(|(_, c)| !(c.is_ascii_digit() || matches!(c, '+' | '-' | '.' | 'e' | 'E')))
        .map_or(text.len(), |(i, _)| i);
    // Longest prefix that parses, so that "2eV" splits as 2 + "eV".
    (1..=numeric_end)
        .rev()
        .filter(|&end| text.is_char_boundary(end))
        .find_map(|end| text[..end].parse::<f64>().ok().map(|v| (v, &text[end..])))
}

/// Rounds to `significant` digits and prints without exponent where sensible.
pub fn format_significant(value: f64, significant: usize) -> String {
    if value == 0.0 || !value.is_finite() {
        return format!("{value}");
    }
    let significant = significant.max(1);
    let magnitude = value.abs().log10().floor() as i32;
    if !(-4..=6).contains(&magnitude) {
        return format!("{:.*e}", significant - 1, value);
    }
    let decimals = (significant as i32 - 1 - magnitude).max(0) as usize;
    format!("{value:.decimals$}")
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parses_prefixed_suffixes() {
        let q = Quantity::parse("20mm", Unit::METER).unwrap();
        assert!((q.value() - 0.02).abs() < 1e-15);
        let q = Quantity::parse("19.5cm", Unit::METER).unwrap();
        assert!((q.value() - 0.195).abs() < 1e-15);
        let q = Quantity::parse("140mHz", Unit::HERTZ).unwrap();
        assert!((q.value() - 0.14).abs() < 1e-15);
        let q = Quantity::parse("49.9MHz", Unit::HERTZ).unwrap();
        assert!((q.value() - 49.9e6).abs() < 1e-6);
        let q = Quantity::parse("39GHz/T", Unit::HERTZ_PER_TESLA).unwrap();
        assert!((q.value() - 39e9).abs() < 1.0);
        let q = Quantity::parse("5.96e7", Unit::SIEMENS_PER_METER).unwrap();
        assert_eq!(q.value(), 5.96e7);
        let q = Quantity::parse("1.6uH", Unit::HENRY).unwrap();
        assert!((q.value() - 1.6e-6).abs() < 1e-18);
        let q = Quantity::parse("2eV", Unit::JOULE).unwrap();
        assert!((q.value() - 3.204353268e-19).abs() < 1e-27);
        let q = Quantity::parse("1.3%", Unit::DIMENSIONLESS).unwrap();
        assert!((q.value() - 0.013).abs() < 1e-15);
        let q = Quantity::parse("0.5l/h", Unit::CUBIC_METER_PER_SECOND).unwrap();
        assert!((q.value() - 0.5e-3 / 3600.0).abs() < 1e-18);
    }

    #[test]
    fn rejects_wrong_or_unknown_units() {
        assert!(matches!(
            Quantity::parse("50Hz", Unit::METER),
            Err(UnitError::WrongUnit { .. })
        ));
        assert!(matches!(
            Quantity::parse("50furlong", Unit::METER),
            Err(UnitError::UnknownUnit(_))
        ));
        assert!(matches!(
            Quantity::parse("mm", Unit::METER),
            Err(UnitError::Parse(_))
        ));
    }

    #[test]
    fn incompatible_arithmetic_is_an_error() {
        let f = Quantity::new(50.0, Unit::HERTZ).unwrap();
        let w = Quantity::new(1.0, Unit::RAD_PER_SECOND).unwrap();
        assert!(f.checked_add(w).is_err());
        let db = Quantity::new(-20.0, Unit::DECIBEL).unwrap();
        assert!(db.checked_mul(f).is_err());
        assert!(Quantity::new(f64::NAN, Unit::METER).is_err());
    }

    #[test]
    fn derived_units_compose() {
        let lw = Quantity::new(0.14, Unit::HERTZ).unwrap();
        let sens = Quantity::new(39e9, Unit::HERTZ_PER_TESLA).unwrap();
        assert_eq!(lw.checked_div(sens).unwrap().unit(), Unit::TESLA);
    }

    #[test]
    fn significant_formatting() {
        assert_eq!(format_significant(9.2196, 3), "9.22");
        assert_eq!(format_significant(0.013405, 2), "0.013");
        assert_eq!(format_significant(1.19e-8, 2), "1.2e-8");
    }

    fn any_unit() -> impl Strategy<Value = Unit> {
        prop::sample::select(NAMED.iter().map(|(_, u)| *u).filter(|u| !u.log).collect::<Vec<_>>())
    }

    proptest! {
        #[test]
        fn product_then_quotient_restores(a in -1e6f64..1e6, b in 1e-3f64..1e3, ua in any_unit(), ub in any_unit()) {
            let qa = Quantity::new(a, ua).unwrap();
            let qb = Quantity::new(b, ub).unwrap();
            let back = qa.checked_mul(qb).unwrap().checked_div(qb).unwrap();
            prop_assert_eq!(back.unit(), ua);
            prop_assert!((back.value() - a).abs() <= 1e-12 * a.abs().max(1e-300));
        }
    }
}
