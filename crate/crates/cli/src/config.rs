//! Plain-text configuration: `[section]` headers, `key = value` lines and
//! `#` comments. Numbers carry unit suffixes (`20mm`, `30MHz`).
//!
//! A schema lists the accepted keys per section; anything else is rejected
//! with its line number so that a misspelt key never silently falls back to
//! a default.

use std::collections::BTreeMap;

use cryoion::physcore::{Quantity, Unit};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ConfigError {
    #[error("{source_name}:{line}: {message}")]
    Syntax {
        source_name: String,
        line: usize,
        message: String,
    },
    #[error("{source_name}:{line}: unknown {what} '{name}'")]
    Unknown {
        source_name: String,
        line: usize,
        what: &'static str,
        name: String,
    },
    #[error("{source_name}:{line}: [{section}] {key}: {message}")]
    Value {
        source_name: String,
        line: usize,
        section: String,
        key: String,
        message: String,
    },
}

/// Accepted keys of one section.
pub struct SectionSchema {
    pub name: &'static str,
    pub keys: &'static [&'static str],
}

#[derive(Clone, Debug)]
struct Item {
    value: String,
    line: usize,
}

#[derive(Clone, Debug)]
pub struct Config {
    source_name: String,
    sections: BTreeMap<String, BTreeMap<String, Item>>,
}

impl Config {
    pub fn parse(text: &str, source_name: &str, schema: &[SectionSchema]) -> Result<Config, ConfigError> {
        let syntax = |line: usize, message: &str| ConfigError::Syntax {
            source_name: source_name.into(),
            line,
            message: message.into(),
        };
        let mut sections: BTreeMap<String, BTreeMap<String, Item>> = BTreeMap::new();
        let mut current: Option<&SectionSchema> = None;
        for (index, raw) in text.lines().enumerate() {
            let line = index + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            if let Some(name) = content.strip_prefix('[') {
                let name = name
                    .strip_suffix(']')
                    .ok_or_else(|| syntax(line, "section header must end with ']'"))?
                    .trim();
                let found = schema.iter().find(|s| s.name == name).ok_or_else(|| ConfigError::Unknown {
                    source_name: source_name.into(),
                    line,
                    what: "section",
                    name: name.into(),
                })?;
                current = Some(found);
                sections.entry(name.into()).or_default();
                continue;
            }
            let (key, value) = content
                .split_once('=')
                .ok_or_else(|| syntax(line, "expected 'key = value'"))?;
            let (key, value) = (key.trim(), value.trim());
            let section = current.ok_or_else(|| syntax(line, "key before the first [section]"))?;
            if !section.keys.contains(&key) {
                return Err(ConfigError::Unknown {
                    source_name: source_name.into(),
                    line,
                    what: "key",
                    name: format!("{}.{key}", section.name),
                });
            }
            let entries = sections.get_mut(section.name).expect("section registered");
            if entries.contains_key(key) {
                return Err(syntax(line, &format!("duplicate key '{key}'")));
            }
            entries.insert(
                key.into(),
                Item {
                    value: value.into(),
                    line,
                },
            );
        }
        Ok(Config {
            source_name: source_name.into(),
            sections,
        })
    }

    fn item(&self, section: &str, key: &str) -> Option<&Item> {
        self.sections.get(section).and_then(|s| s.get(key))
    }

    fn value_error(&self, section: &str, key: &str, line: usize, message: String) -> ConfigError {
        ConfigError::Value {
            source_name: self.source_name.clone(),
            line,
            section: section.into(),
            key: key.into(),
            message,
        }
    }

    /// SI value of `section.key`, validated against `unit`.
    pub fn quantity(&self, section: &str, key: &str, unit: Unit) -> Result<Option<f64>, ConfigError> {
        self.item(section, key)
            .map(|item| {
                Quantity::parse(&item.value, unit)
                    .map(|q| q.value())
                    .map_err(|e| self.value_error(section, key, item.line, e.to_string()))
            })
            .transpose()
    }

    pub fn count(&self, section: &str, key: &str) -> Result<Option<usize>, ConfigError> {
        self.item(section, key)
            .map(|item| {
                item.value
                    .parse()
                    .map_err(|_| self.value_error(section, key, item.line, format!("'{}' is not a count", item.value)))
            })
            .transpose()
    }

    /// One of `choices`, compared case-insensitively.
    pub fn choice(&self, section: &str, key: &str, choices: &[&'static str]) -> Result<Option<&'static str>, ConfigError> {
        self.item(section, key)
            .map(|item| {
                choices
                    .iter()
                    .find(|c| c.eq_ignore_ascii_case(&item.value))
                    .copied()
                    .ok_or_else(|| {
                        self.value_error(section, key, item.line, format!("expected one of {}", choices.join(", ")))
                    })
            })
            .transpose()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const SCHEMA: &[SectionSchema] = &[
        SectionSchema {
            name: "geometry",
            keys: &["gap", "segments"],
        },
        SectionSchema {
            name: "rf",
            keys: &["frequency", "species"],
        },
    ];

    #[test]
    fn reads_unit_suffixed_values() {
        let c = Config::parse(
            "# trap\n[geometry]\ngap = 10um # split evenly\nsegments = 11\n[rf]\nfrequency = 30MHz\nspecies = Ca40\n",
            "t.conf",
            SCHEMA,
        )
        .unwrap();
        assert!((c.quantity("geometry", "gap", Unit::METER).unwrap().unwrap() - 10e-6).abs() < 1e-18);
        assert_eq!(c.count("geometry", "segments").unwrap(), Some(11));
        assert_eq!(c.quantity("rf", "frequency", Unit::HERTZ).unwrap(), Some(30e6));
        assert_eq!(c.choice("rf", "species", &["ca40", "sr88"]).unwrap(), Some("ca40"));
        assert_eq!(c.quantity("rf", "missing", Unit::HERTZ).unwrap(), None);
    }

    #[test]
    fn unknown_keys_and_sections_are_rejected() {
        let e = Config::parse("[geometry]\ngapp = 1um\n", "t.conf", SCHEMA).unwrap_err();
        assert!(matches!(e, ConfigError::Unknown { line: 2, what: "key", .. }), "{e}");
        let e = Config::parse("[geom]\n", "t.conf", SCHEMA).unwrap_err();
        assert!(matches!(e, ConfigError::Unknown { line: 1, what: "section", .. }), "{e}");
        assert!(Config::parse("gap = 1um\n", "t.conf", SCHEMA).is_err());
        assert!(Config::parse("[geometry]\ngap = 1um\ngap = 2um\n", "t.conf", SCHEMA).is_err());
    }

    #[test]
    fn suffix_must_match_the_quantity() {
        let c = Config::parse("[geometry]\ngap = 10MHz\n", "t.conf", SCHEMA).unwrap();
        let e = c.quantity("geometry", "gap", Unit::METER).unwrap_err();
        assert!(matches!(e, ConfigError::Value { line: 2, .. }), "{e}");
    }
}
