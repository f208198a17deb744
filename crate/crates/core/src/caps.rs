//! Enumeration caps.

use std::str::FromStr;

use thiserror::Error;

pub const CAPS_ENV: &str = "CLASSCODE_CAPS";

/// Upper bounds on the expensive enumerations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Caps {
    /// Largest tcSize bound accepted by the enumerators (and unroll budgets).
    pub max_tc: usize,
    /// Largest `n` accepted by `hf_v_stage`.
    pub max_vstage: usize,
    /// Largest universe allowed under class quantifiers with FULL classes.
    pub max_full_universe: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            max_tc: 12,
            max_vstage: 5,
            max_full_universe: 16,
        }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
#[error("bad caps spec {0:?}: expected e.g. \"tc=8,vstage=4,full=16\"")]
pub struct CapsParseError(pub String);

impl FromStr for Caps {
    type Err = CapsParseError;

    /// `tc=N,vstage=N,full=N`, any subset, applied over the defaults.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut caps = Caps::default();
        for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let (k, v) = part
                .split_once('=')
                .ok_or_else(|| CapsParseError(s.to_string()))?;
            let v: usize = v
                .trim()
                .parse()
                .map_err(|_| CapsParseError(s.to_string()))?;
            match k.trim() {
                "tc" => caps.max_tc = v,
                "vstage" => caps.max_vstage = v,
                "full" => caps.max_full_universe = v,
                _ => return Err(CapsParseError(s.to_string())),
            }
        }
        Ok(caps)
    }
}

impl Caps {
    /// Defaults, overridden by `CLASSCODE_CAPS` when set.
    pub fn from_env() -> Result<Caps, CapsParseError> {
        match std::env::var(CAPS_ENV) {
            Ok(s) => s.parse(),
            Err(_) => Ok(Caps::default()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse() {
        let c: Caps = "tc=8, vstage=4".parse().unwrap();
        assert_eq!(c.max_tc, 8);
        assert_eq!(c.max_vstage, 4);
        assert_eq!(c.max_full_universe, 16);
        assert!("tc=x".parse::<Caps>().is_err());
        assert!("depth=3".parse::<Caps>().is_err());
        assert_eq!("".parse::<Caps>().unwrap(), Caps::default());
    }
}
