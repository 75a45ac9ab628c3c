//! Symbolic dynamics for pairs of unimodal maps.
//!
//! Points of the two interval copies are coded by the lap they fall in:
//! `L` left of the critical point, `C` the critical point itself (written `G`
//! in text form) and `R` to its right.

mod itinerary;
mod kneading;
mod order_data;

pub use itinerary::{compare_itineraries, Itinerary};
pub use kneading::{
    compare_kneading, is_tight_st, kneading_from_pair_itineraries, KSymbol, KneadingData, KneadingOrder,
    KneadingSequence, Modality,
};
pub use order_data::{
    admissible_order_data, check_admissible, itinerary_to_order_data, order_data_to_bicritical_itinerary,
    JointOrderData, OrderData,
};

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Which of the two interval copies a point lives in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Lane {
    One,
    Two,
}

impl Lane {
    pub fn other(self) -> Lane {
        match self {
            Lane::One => Lane::Two,
            Lane::Two => Lane::One,
        }
    }

    pub fn index(self) -> u8 {
        match self {
            Lane::One => 1,
            Lane::Two => 2,
        }
    }
}

/// Position relative to the critical point; ordered `L < C < R`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Kind {
    L,
    C,
    R,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Symbol {
    pub lane: Lane,
    pub kind: Kind,
}

impl Symbol {
    pub const fn new(lane: Lane, kind: Kind) -> Symbol {
        Symbol { lane, kind }
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let k = match self.kind {
            Kind::L => 'L',
            Kind::C => 'G',
            Kind::R => 'R',
        };
        write!(f, "{k}{}", self.lane.index())
    }
}

impl FromStr for Symbol {
    type Err = Error;

    fn from_str(s: &str) -> Result<Symbol> {
        let mut chars = s.chars();
        let kind = match chars.next() {
            Some('L') => Kind::L,
            Some('G') | Some('C') => Kind::C,
            Some('R') => Kind::R,
            _ => return Err(Error::Parse(format!("bad symbol '{s}'"))),
        };
        let lane = match (chars.next(), chars.next()) {
            (Some('1'), None) => Lane::One,
            (Some('2'), None) => Lane::Two,
            _ => return Err(Error::Parse(format!("bad symbol '{s}'"))),
        };
        Ok(Symbol { lane, kind })
    }
}
