//! JSON system definitions.
//!
//! ```json
//! {
//!   "name": "quarter-cantor",
//!   "prefix": [],
//!   "cycle": [ { "p": 4, "D": [0, 2], "L": [0, 1] } ]
//! }
//! ```
//!
//! Unknown keys are rejected. Parsing canonicalizes digit and frequency sets
//! (sorted ascending, no duplicates), so parse-then-serialize is the identity
//! on canonical form.

use serde::{Deserialize, Serialize};

use crate::hadamard::{Level, MoranSystem};
use crate::{Error, Result};

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct LevelConfig {
    pub p: i64,
    #[serde(rename = "D")]
    pub digits: Vec<i64>,
    #[serde(rename = "L", skip_serializing_if = "Option::is_none")]
    pub frequencies: Option<Vec<i64>>,
}

/// Serializable carrier for an eventually-periodic level sequence.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq, Default)]
#[serde(deny_unknown_fields)]
pub struct SystemConfig {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(default)]
    pub prefix: Vec<LevelConfig>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cycle: Option<Vec<LevelConfig>>,
}

impl LevelConfig {
    fn to_level(&self) -> Result<Level> {
        Level::new(self.p, self.digits.clone(), self.frequencies.clone())
    }

    fn from_level(level: &Level) -> Self {
        LevelConfig {
            p: level.p(),
            digits: level.digits().to_vec(),
            frequencies: level.frequencies().map(<[i64]>::to_vec),
        }
    }
}

impl SystemConfig {
    /// Parse a JSON document, rejecting unknown keys; diagnostics carry the
    /// line and column of the offending field.
    pub fn from_json(text: &str) -> Result<Self> {
        let config: SystemConfig = serde_json::from_str(text)?;
        Ok(config)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("config serializes")
    }

    /// Validate and build the system; level sets come out canonicalized.
    pub fn build(&self) -> Result<MoranSystem> {
        let prefix = self
            .prefix
            .iter()
            .enumerate()
            .map(|(i, l)| {
                l.to_level()
                    .map_err(|e| Error::InvalidConfig(format!("prefix[{i}]: {e}")))
            })
            .collect::<Result<Vec<_>>>()?;
        let cycle = match &self.cycle {
            None => None,
            Some(levels) => Some(
                levels
                    .iter()
                    .enumerate()
                    .map(|(i, l)| {
                        l.to_level()
                            .map_err(|e| Error::InvalidConfig(format!("cycle[{i}]: {e}")))
                    })
                    .collect::<Result<Vec<_>>>()?,
            ),
        };
        MoranSystem::new(prefix, cycle)
    }

    /// Canonical config for an existing system.
    pub fn from_system(system: &MoranSystem, name: Option<String>) -> Self {
        SystemConfig {
            name,
            prefix: system
                .prefix()
                .iter()
                .map(LevelConfig::from_level)
                .collect(),
            cycle: system
                .cycle()
                .map(|c| c.iter().map(LevelConfig::from_level).collect()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_build() {
        let text = r#"{
            "name": "quarter-cantor",
            "cycle": [ { "p": 4, "D": [0, 2], "L": [0, 1] } ]
        }"#;
        let config = SystemConfig::from_json(text).unwrap();
        let system = config.build().unwrap();
        assert_eq!(system.level(1).unwrap().p(), 4);
        assert!(system.has_cycle());
    }

    #[test]
    fn unknown_keys_are_rejected() {
        let text = r#"{ "cycle": [ { "p": 4, "D": [0, 2], "Q": 7 } ] }"#;
        assert!(SystemConfig::from_json(text).is_err());
        let text = r#"{ "cycles": [] }"#;
        assert!(SystemConfig::from_json(text).is_err());
    }

    #[test]
    fn empty_system_fails_to_build() {
        let config = SystemConfig::from_json(r#"{ "prefix": [] }"#).unwrap();
        assert!(matches!(config.build(), Err(Error::InvalidConfig(_))));
    }

    #[test]
    fn canonical_round_trip() {
        let text = r#"{ "prefix": [ { "p": 6, "D": [3, 0, 1], "L": [0, 2, 4] } ] }"#;
        let config = SystemConfig::from_json(text).unwrap();
        let system = config.build().unwrap();
        let canonical = SystemConfig::from_system(&system, None);
        assert_eq!(canonical.prefix[0].digits, vec![0, 1, 3]);
        let reparsed = SystemConfig::from_json(&canonical.to_json()).unwrap();
        assert_eq!(reparsed, canonical);
    }

    #[test]
    fn semantic_errors_name_the_level() {
        let text = r#"{ "prefix": [ { "p": 1, "D": [0] } ] }"#;
        let config = SystemConfig::from_json(text).unwrap();
        let err = config.build().unwrap_err();
        assert!(err.to_string().contains("prefix[0]"), "{err}");
    }
}
