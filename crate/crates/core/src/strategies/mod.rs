//! Coverage strategies.

pub mod decentralized;
pub mod sons;

use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Strategy {
    Rb,
    LdrRandom,
    LdrRepulsive,
    Pm,
    SonsBs,
    SonsRw,
}

impl Strategy {
    pub const ALL: [Strategy; 6] = [
        Strategy::SonsBs,
        Strategy::SonsRw,
        Strategy::Pm,
        Strategy::LdrRepulsive,
        Strategy::LdrRandom,
        Strategy::Rb,
    ];

    pub const DECENTRALIZED: [Strategy; 4] = [
        Strategy::Pm,
        Strategy::LdrRepulsive,
        Strategy::LdrRandom,
        Strategy::Rb,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Strategy::Rb => "rb",
            Strategy::LdrRandom => "ldr_random",
            Strategy::LdrRepulsive => "ldr_repulsive",
            Strategy::Pm => "pm",
            Strategy::SonsBs => "sons_bs",
            Strategy::SonsRw => "sons_rw",
        }
    }

    pub fn is_sons(self) -> bool {
        matches!(self, Strategy::SonsBs | Strategy::SonsRw)
    }
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Strategy {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Strategy::ALL
            .into_iter()
            .find(|st| st.name() == s.replace('-', "_"))
            .ok_or_else(|| format!("unknown strategy `{s}`"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_round_trip() {
        for s in Strategy::ALL {
            assert_eq!(s.name().parse::<Strategy>().unwrap(), s);
        }
        assert_eq!("sons-rw".parse::<Strategy>().unwrap(), Strategy::SonsRw);
        assert!("nope".parse::<Strategy>().is_err());
    }
}
