use std::cmp::Ordering;
use std::fmt;

use serde::{Serialize, Serializer};

use super::{Itinerary, Kind, Lane, Symbol};
use crate::dyadic::Dyadic;
use crate::error::{Error, Result};
use crate::families::stunted::{eval_stunted, on_plateau};

/// Letters of the 3-modal alphabet `H0 < c1 < H1 < c2 < H2 < c3 < H3`.
///
/// `H0`, `H2` are increasing laps and `H1`, `H3` decreasing ones.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum KSymbol {
    H0,
    C1,
    H1,
    C2,
    H2,
    C3,
    H3,
}

impl KSymbol {
    fn decreasing(self) -> bool {
        matches!(self, KSymbol::H1 | KSymbol::H3)
    }

    fn label(self) -> &'static str {
        match self {
            KSymbol::H0 => "H0",
            KSymbol::C1 => "c1",
            KSymbol::H1 => "H1",
            KSymbol::C2 => "c2",
            KSymbol::H2 => "H2",
            KSymbol::C3 => "c3",
            KSymbol::H3 => "H3",
        }
    }

    /// Lap of the composition containing `x`, from the symbol of `x` under the
    /// inner map and the symbol of its image under the outer map.
    fn from_pair(inner: Kind, outer: Kind) -> KSymbol {
        match (inner, outer) {
            (Kind::C, _) => KSymbol::C2,
            (Kind::L, Kind::L) => KSymbol::H0,
            (Kind::L, Kind::C) => KSymbol::C1,
            (Kind::L, Kind::R) => KSymbol::H1,
            (Kind::R, Kind::R) => KSymbol::H2,
            (Kind::R, Kind::C) => KSymbol::C3,
            (Kind::R, Kind::L) => KSymbol::H3,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct KneadingSequence {
    pub preperiod: Vec<KSymbol>,
    pub period: Vec<KSymbol>,
}

impl KneadingSequence {
    fn get(&self, i: usize) -> Option<KSymbol> {
        if i < self.preperiod.len() {
            Some(self.preperiod[i])
        } else if self.period.is_empty() {
            None
        } else {
            Some(self.period[(i - self.preperiod.len()) % self.period.len()])
        }
    }

    fn horizon_with(&self, other: &KneadingSequence) -> usize {
        let fin = |s: &KneadingSequence| s.period.is_empty();
        match (fin(self), fin(other)) {
            (true, true) => self.preperiod.len().min(other.preperiod.len()),
            (true, false) => self.preperiod.len(),
            (false, true) => other.preperiod.len(),
            (false, false) => {
                let (a, b) = (self.period.len(), other.period.len());
                let mut g = (a, b);
                while g.1 != 0 {
                    g = (g.1, g.0 % g.1);
                }
                self.preperiod.len().max(other.preperiod.len()) + a / g.0 * b
            }
        }
    }

    /// Order of the folding values' positions: first difference decides,
    /// reversed after an odd number of decreasing laps.
    fn compare(&self, other: &KneadingSequence) -> Ordering {
        let mut flipped = false;
        for i in 0..self.horizon_with(other) {
            let (a, b) = (self.get(i).unwrap(), other.get(i).unwrap());
            if a != b {
                let ord = a.cmp(&b);
                return if flipped { ord.reverse() } else { ord };
            }
            if a.decreasing() {
                flipped = !flipped;
            }
        }
        Ordering::Equal
    }
}

impl fmt::Display for KneadingSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |s: &[KSymbol]| s.iter().map(|x| x.label()).collect::<Vec<_>>().join(" ");
        if self.period.is_empty() {
            write!(f, "{}", join(&self.preperiod))
        } else if self.preperiod.is_empty() {
            write!(f, "| {}", join(&self.period))
        } else {
            write!(f, "{} | {}", join(&self.preperiod), join(&self.period))
        }
    }
}

impl Serialize for KneadingSequence {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// Whether the composition has three real folding points or collapses to a
/// unimodal map (outer folding points absent).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Modality {
    ThreeModal,
    Unimodal,
}

/// Kneading data of the composition acting on `base`: `h₂∘h₁` for lane one,
/// `h₁∘h₂` for lane two. Sequences are indexed `c1, c2, c3`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct KneadingData {
    pub base: Lane,
    pub modality: Modality,
    pub sequences: [Option<KneadingSequence>; 3],
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum KneadingOrder {
    Less,
    Equal,
    Greater,
    Incomparable,
}

fn transport(it: &Itinerary) -> KneadingSequence {
    let pair = |k: usize| -> Option<KSymbol> {
        let inner: Symbol = it.get(2 * k)?;
        if inner.kind == Kind::C {
            return Some(KSymbol::C2);
        }
        Some(KSymbol::from_pair(inner.kind, it.get(2 * k + 1)?.kind))
    };
    if it.is_finite() {
        let n = it.preperiod().len() / 2;
        return KneadingSequence { preperiod: (0..n).map(|k| pair(k).unwrap()).collect(), period: Vec::new() };
    }
    let pre = it.preperiod().len().div_ceil(2);
    let per = it.period().len() / 2;
    KneadingSequence {
        preperiod: (0..pre).map(|k| pair(k).unwrap()).collect(),
        period: (pre..pre + per).map(|k| pair(k).unwrap()).collect(),
    }
}

/// Kneading data of the composition based at `base`, given the critical
/// itineraries `it1` of `γ₁` (lane one first) and `it2` of `γ₂` (lane two first).
pub fn kneading_from_pair_itineraries(
    it1: &Itinerary,
    it2: &Itinerary,
    base: Lane,
    modality: Modality,
) -> Result<KneadingData> {
    if it1.start_lane() != Some(Lane::One) || it2.start_lane() != Some(Lane::Two) {
        return Err(Error::Domain("critical itineraries must start in their own lanes".into()));
    }
    let (own, other) = match base {
        Lane::One => (it1, it2),
        Lane::Two => (it2, it1),
    };
    let middle = transport(&own.shift(2));
    let outer = match modality {
        Modality::ThreeModal => Some(transport(&other.shift(1))),
        Modality::Unimodal => None,
    };
    Ok(KneadingData { base, modality, sequences: [outer.clone(), Some(middle), outer] })
}

/// Componentwise comparison. The outer folding points of a 3-modal
/// composition are local maxima and compare directly; the middle one is a
/// local minimum, so its order is reversed. In the unimodal case the middle
/// point is the maximum.
pub fn compare_kneading(a: &KneadingData, b: &KneadingData) -> Result<KneadingOrder> {
    if a.modality != b.modality || a.base != b.base {
        return Err(Error::Domain("kneading data of different modality".into()));
    }
    let mut less = false;
    let mut greater = false;
    for (i, (sa, sb)) in a.sequences.iter().zip(b.sequences.iter()).enumerate() {
        let (Some(sa), Some(sb)) = (sa, sb) else { continue };
        let mut ord = sa.compare(sb);
        if i == 1 && a.modality == Modality::ThreeModal {
            ord = ord.reverse();
        }
        match ord {
            Ordering::Less => less = true,
            Ordering::Greater => greater = true,
            Ordering::Equal => {}
        }
    }
    Ok(match (less, greater) {
        (false, false) => KneadingOrder::Equal,
        (true, false) => KneadingOrder::Less,
        (false, true) => KneadingOrder::Greater,
        (true, true) => KneadingOrder::Incomparable,
    })
}

/// Whether the critical orbit coded by `sequence` avoids every plateau except
/// at its center, following it for as many steps as the sequence describes.
///
/// The sequence must start with a critical symbol, which fixes the starting
/// point (`γ₁` or `γ₂` at `1/2`).
pub fn is_tight_st(sequence: &Itinerary, v: Dyadic, w: Dyadic) -> bool {
    let Some(first) = sequence.get(0) else { return true };
    let steps = if sequence.is_finite() {
        sequence.preperiod().len()
    } else {
        sequence.preperiod().len() + 2 * sequence.period().len()
    };
    let mut lane = first.lane;
    let mut x = Dyadic::HALF;
    for _ in 0..steps {
        let h = if lane == Lane::One { v } else { w };
        if on_plateau(h, x) && x != Dyadic::HALF {
            return false;
        }
        x = eval_stunted(h, x);
        lane = lane.other();
    }
    true
}
