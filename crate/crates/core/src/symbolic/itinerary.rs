use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{Kind, Lane, Symbol};
use crate::error::{Error, Result};

/// A symbol sequence `preperiod (period)^∞`, or a finite prefix when the
/// period is empty. Lanes alternate along the whole sequence.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Itinerary {
    preperiod: Vec<Symbol>,
    period: Vec<Symbol>,
}

impl Itinerary {
    pub fn new(preperiod: Vec<Symbol>, period: Vec<Symbol>) -> Result<Itinerary> {
        if period.len() % 2 == 1 {
            return Err(Error::Domain(format!("period length {} is odd", period.len())));
        }
        let all: Vec<&Symbol> = preperiod.iter().chain(period.iter()).collect();
        for pair in all.windows(2) {
            if pair[0].lane == pair[1].lane {
                return Err(Error::Domain("lanes must alternate".into()));
            }
        }
        Ok(Itinerary { preperiod, period })
    }

    pub fn periodic(period: Vec<Symbol>) -> Result<Itinerary> {
        Itinerary::new(Vec::new(), period)
    }

    pub fn finite(prefix: Vec<Symbol>) -> Result<Itinerary> {
        Itinerary::new(prefix, Vec::new())
    }

    pub fn preperiod(&self) -> &[Symbol] {
        &self.preperiod
    }

    pub fn period(&self) -> &[Symbol] {
        &self.period
    }

    pub fn is_finite(&self) -> bool {
        self.period.is_empty()
    }

    /// Purely periodic (no preperiod) and infinite.
    pub fn is_periodic(&self) -> bool {
        self.preperiod.is_empty() && !self.period.is_empty()
    }

    pub fn start_lane(&self) -> Option<Lane> {
        self.get(0).map(|s| s.lane)
    }

    /// The `i`-th symbol, or `None` past the end of a finite prefix.
    pub fn get(&self, i: usize) -> Option<Symbol> {
        if i < self.preperiod.len() {
            Some(self.preperiod[i])
        } else if self.period.is_empty() {
            None
        } else {
            Some(self.period[(i - self.preperiod.len()) % self.period.len()])
        }
    }

    /// The first `m` symbols as a finite itinerary.
    pub fn truncate(&self, m: usize) -> Itinerary {
        let prefix = (0..m).map_while(|i| self.get(i)).collect();
        Itinerary { preperiod: prefix, period: Vec::new() }
    }

    /// Drop the first `k` symbols.
    pub fn shift(&self, k: usize) -> Itinerary {
        if k <= self.preperiod.len() {
            return Itinerary { preperiod: self.preperiod[k..].to_vec(), period: self.period.clone() };
        }
        if self.period.is_empty() {
            return Itinerary { preperiod: Vec::new(), period: Vec::new() };
        }
        let r = (k - self.preperiod.len()) % self.period.len();
        let mut period = self.period[r..].to_vec();
        period.extend_from_slice(&self.period[..r]);
        Itinerary { preperiod: Vec::new(), period }
    }

    /// Shortest representation: primitive period, preperiod absorbed as far
    /// as possible.
    pub fn normalized(&self) -> Itinerary {
        if self.period.is_empty() {
            return self.clone();
        }
        let p = self.period.len();
        let mut period = self.period.clone();
        for d in (2..=p).step_by(2) {
            if p.is_multiple_of(d) && (0..p).all(|i| period[i] == period[i % d]) {
                period.truncate(d);
                break;
            }
        }
        let mut pre = self.preperiod.clone();
        while let Some(&last) = pre.last() {
            if last != *period.last().unwrap() {
                break;
            }
            pre.pop();
            period.rotate_right(1);
        }
        Itinerary { preperiod: pre, period }
    }

    /// Number of symbols after which an infinite itinerary repeats for good,
    /// or the length of a finite one.
    fn horizon_with(&self, other: &Itinerary) -> usize {
        match (self.is_finite(), other.is_finite()) {
            (true, true) => self.preperiod.len().min(other.preperiod.len()),
            (true, false) => self.preperiod.len(),
            (false, true) => other.preperiod.len(),
            (false, false) => {
                self.preperiod.len().max(other.preperiod.len()) + lcm(self.period.len(), other.period.len())
            }
        }
    }
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: usize, b: usize) -> usize {
    a / gcd(a, b) * b
}

/// Order itineraries consistently with the order of points on the line.
///
/// At the first differing symbol, `L < C < R`; the verdict is reversed when an
/// odd number of `R` symbols precede it, since each `R` is a pass through a
/// decreasing lap. Finite itineraries compare on their common prefix.
pub fn compare_itineraries(a: &Itinerary, b: &Itinerary) -> Result<Ordering> {
    match (a.start_lane(), b.start_lane()) {
        (Some(x), Some(y)) if x != y => {
            return Err(Error::Domain("itineraries start in different lanes".into()));
        }
        _ => {}
    }
    let mut flipped = false;
    for i in 0..a.horizon_with(b) {
        let (sa, sb) = (a.get(i).unwrap(), b.get(i).unwrap());
        if sa.kind != sb.kind {
            let ord = sa.kind.cmp(&sb.kind);
            return Ok(if flipped { ord.reverse() } else { ord });
        }
        if sa.kind == Kind::R {
            flipped = !flipped;
        }
    }
    Ok(Ordering::Equal)
}

impl fmt::Display for Itinerary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |s: &[Symbol]| s.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ");
        if self.period.is_empty() {
            return write!(f, "{}", join(&self.preperiod));
        }
        if self.preperiod.is_empty() {
            write!(f, "| {}", join(&self.period))
        } else {
            write!(f, "{} | {}", join(&self.preperiod), join(&self.period))
        }
    }
}

impl FromStr for Itinerary {
    type Err = Error;

    fn from_str(s: &str) -> Result<Itinerary> {
        let parse = |part: &str| part.split_whitespace().map(str::parse).collect::<Result<Vec<Symbol>>>();
        match s.split_once('|') {
            Some((pre, per)) => {
                let period = parse(per)?;
                if period.is_empty() {
                    return Err(Error::Parse("empty period after '|'".into()));
                }
                Itinerary::new(parse(pre)?, period)
            }
            None => Itinerary::finite(parse(s)?),
        }
    }
}

impl Serialize for Itinerary {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Itinerary {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Itinerary, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}
