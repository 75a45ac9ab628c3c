use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use itertools::Itertools;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{compare_itineraries, Itinerary, Kind, Lane, Symbol};
use crate::error::{Error, Result};

/// The combinatorics of a period-`2n` orbit of a map pair.
///
/// With lane-1 orbit points `x_1 < … < x_n` and lane-2 points `y_1 < … < y_n`,
/// the first map sends `x_i` to `y_{σ(i)}` and the second sends `y_j` to
/// `x_{τ(j)}`. Permutations are stored 1-based in one-line notation.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OrderData {
    sigma: Vec<usize>,
    tau: Vec<usize>,
}

fn is_permutation(p: &[usize]) -> bool {
    let mut seen = vec![false; p.len()];
    p.iter().all(|&v| v >= 1 && v <= p.len() && !std::mem::replace(&mut seen[v - 1], true))
}

/// Increasing, then decreasing: once a descent happens every later step descends.
fn is_unimodal(p: &[usize]) -> bool {
    let first_descent = p.windows(2).position(|w| w[1] < w[0]);
    match first_descent {
        None => true,
        Some(i) => p[i..].windows(2).all(|w| w[1] < w[0]),
    }
}

/// Cycle decomposition of `τ∘σ` as lists of 1-based lane-1 indices.
fn cycles_of_return_map(sigma: &[usize], tau: &[usize]) -> Vec<Vec<usize>> {
    let n = sigma.len();
    let mut seen = vec![false; n];
    let mut cycles = Vec::new();
    for start in 1..=n {
        if seen[start - 1] {
            continue;
        }
        let mut cycle = Vec::new();
        let mut i = start;
        while !seen[i - 1] {
            seen[i - 1] = true;
            cycle.push(i);
            i = tau[sigma[i - 1] - 1];
        }
        cycles.push(cycle);
    }
    cycles
}

fn inverse(p: &[usize]) -> Vec<usize> {
    let mut inv = vec![0; p.len()];
    for (i, &v) in p.iter().enumerate() {
        inv[v - 1] = i + 1;
    }
    inv
}

/// 1-based ranks of `values` in increasing order; `None` on ties.
fn ranks<T: PartialOrd>(values: &[T]) -> Option<Vec<usize>> {
    let mut idx: Vec<usize> = (0..values.len()).collect();
    idx.sort_by(|&a, &b| values[a].partial_cmp(&values[b]).unwrap_or(Ordering::Equal));
    if idx.windows(2).any(|w| values[w[0]].partial_cmp(&values[w[1]]) != Some(Ordering::Less)) {
        return None;
    }
    let mut r = vec![0; values.len()];
    for (rank, &i) in idx.iter().enumerate() {
        r[i] = rank + 1;
    }
    Some(r)
}

impl OrderData {
    pub fn new(sigma: Vec<usize>, tau: Vec<usize>) -> Result<OrderData> {
        if sigma.is_empty() || sigma.len() != tau.len() {
            return Err(Error::Domain("order-data permutations must be nonempty and of equal size".into()));
        }
        if !is_permutation(&sigma) || !is_permutation(&tau) {
            return Err(Error::Domain(format!("not a permutation pair: {sigma:?}, {tau:?}")));
        }
        Ok(OrderData { sigma, tau })
    }

    pub fn n(&self) -> usize {
        self.sigma.len()
    }

    pub fn period(&self) -> usize {
        2 * self.n()
    }

    pub fn sigma(&self) -> &[usize] {
        &self.sigma
    }

    pub fn tau(&self) -> &[usize] {
        &self.tau
    }

    /// The same orbit read with the lanes exchanged.
    pub fn swapped(&self) -> OrderData {
        OrderData { sigma: self.tau.clone(), tau: self.sigma.clone() }
    }

    /// Order-data of a periodic orbit `x_0 → y_0 → x_1 → … → y_{n-1} → x_0`.
    ///
    /// Returns `None` when two points of a lane coincide.
    pub fn from_orbit<T: PartialOrd>(xs: &[T], ys: &[T]) -> Option<OrderData> {
        let n = xs.len();
        if n == 0 || ys.len() != n {
            return None;
        }
        let (rx, ry) = (ranks(xs)?, ranks(ys)?);
        let mut sigma = vec![0; n];
        let mut tau = vec![0; n];
        for k in 0..n {
            sigma[rx[k] - 1] = ry[k];
            tau[ry[k] - 1] = rx[(k + 1) % n];
        }
        Some(OrderData { sigma, tau })
    }

    /// Lane-1 index (1-based) of the first critical point: the orbit point
    /// with the largest image.
    pub fn gamma1_index(&self) -> usize {
        inverse(&self.sigma)[self.n() - 1]
    }

    /// Lane-2 index (1-based) of the second critical point.
    pub fn gamma2_index(&self) -> usize {
        inverse(&self.tau)[self.n() - 1]
    }
}

pub fn check_admissible(od: &OrderData) -> bool {
    is_unimodal(&od.sigma) && is_unimodal(&od.tau) && cycles_of_return_map(&od.sigma, &od.tau).len() == 1
}

/// All admissible order-data with permutations of size `n`, lexicographic in
/// `(σ, τ)`.
pub fn admissible_order_data(n: usize) -> Vec<OrderData> {
    if n == 0 {
        return Vec::new();
    }
    let perms: Vec<Vec<usize>> = (1..=n).permutations(n).filter(|p| is_unimodal(p)).collect();
    let mut out = Vec::new();
    for s in &perms {
        for t in &perms {
            if cycles_of_return_map(s, t).len() == 1 {
                out.push(OrderData { sigma: s.clone(), tau: t.clone() });
            }
        }
    }
    out
}

fn symbol_for(lane: Lane, index: usize, critical: usize) -> Symbol {
    let kind = match index.cmp(&critical) {
        Ordering::Less => Kind::L,
        Ordering::Equal => Kind::C,
        Ordering::Greater => Kind::R,
    };
    Symbol::new(lane, kind)
}

/// The periodic itinerary of the first critical point through the bicritical
/// orbit with order-data `od`.
pub fn order_data_to_bicritical_itinerary(od: &OrderData) -> Result<Itinerary> {
    if !check_admissible(od) {
        return Err(Error::Domain(format!("inadmissible order-data {od}")));
    }
    let (i_star, j_star) = (od.gamma1_index(), od.gamma2_index());
    let mut period = Vec::with_capacity(od.period());
    let mut i = i_star;
    for _ in 0..od.n() {
        let j = od.sigma[i - 1];
        period.push(symbol_for(Lane::One, i, i_star));
        period.push(symbol_for(Lane::Two, j, j_star));
        i = od.tau[j - 1];
    }
    Itinerary::periodic(period)
}

/// Recover order-data from a bicritical periodic itinerary by ranking its
/// cyclic shifts within each lane.
pub fn itinerary_to_order_data(it: &Itinerary) -> Result<OrderData> {
    let it = it.normalized();
    if !it.is_periodic() {
        return Err(Error::Domain(format!("itinerary '{it}' is not purely periodic")));
    }
    let per = it.period();
    for lane in [Lane::One, Lane::Two] {
        let hits = per.iter().filter(|s| s.lane == lane && s.kind == Kind::C).count();
        if hits != 1 {
            return Err(Error::Domain(format!(
                "itinerary '{it}' has {hits} critical symbols in lane {}",
                lane.index()
            )));
        }
    }
    let offset = if per[0].lane == Lane::One { 0 } else { 1 };
    let n = per.len() / 2;
    let shifts: Vec<Itinerary> = (0..per.len()).map(|k| it.shift(offset + k)).collect();
    let rank_lane = |parity: usize| -> Result<Vec<usize>> {
        let group: Vec<&Itinerary> = (0..n).map(|k| &shifts[2 * k + parity]).collect();
        let mut idx: Vec<usize> = (0..n).collect();
        let mut failure = None;
        idx.sort_by(|&a, &b| {
            compare_itineraries(group[a], group[b]).unwrap_or_else(|e| {
                failure = Some(e);
                Ordering::Equal
            })
        });
        if let Some(e) = failure {
            return Err(e);
        }
        let mut r = vec![0; n];
        for (rank, &i) in idx.iter().enumerate() {
            r[i] = rank + 1;
        }
        Ok(r)
    };
    let (rx, ry) = (rank_lane(0)?, rank_lane(1)?);
    let mut sigma = vec![0; n];
    let mut tau = vec![0; n];
    for k in 0..n {
        sigma[rx[k] - 1] = ry[k];
        tau[ry[k] - 1] = rx[(k + 1) % n];
    }
    OrderData::new(sigma, tau)
}

fn fmt_perm(p: &[usize]) -> String {
    p.iter().map(|v| v.to_string()).join(",")
}

fn parse_perm(s: &str) -> Result<Vec<usize>> {
    let inner = s
        .trim()
        .strip_prefix('[')
        .and_then(|x| x.strip_suffix(']'))
        .ok_or_else(|| Error::Parse(format!("expected [..] in '{s}'")))?;
    inner.split(',').map(|t| t.trim().parse::<usize>().map_err(|_| Error::Parse(format!("bad entry '{t}'")))).collect()
}

fn parse_pair(s: &str) -> Result<(Vec<usize>, Vec<usize>)> {
    let (a, b) = s.split_once(';').ok_or_else(|| Error::Parse(format!("expected 's=..;t=..' in '{s}'")))?;
    let a = a.trim().strip_prefix("s=").ok_or_else(|| Error::Parse("missing 's='".into()))?;
    let b = b.trim().strip_prefix("t=").ok_or_else(|| Error::Parse("missing 't='".into()))?;
    Ok((parse_perm(a)?, parse_perm(b)?))
}

impl fmt::Display for OrderData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "s=[{}];t=[{}]", fmt_perm(&self.sigma), fmt_perm(&self.tau))
    }
}

impl FromStr for OrderData {
    type Err = Error;

    fn from_str(s: &str) -> Result<OrderData> {
        let (sigma, tau) = parse_pair(s)?;
        OrderData::new(sigma, tau)
    }
}

/// Order-data of two disjoint periodic orbits, one through each critical
/// point, recorded together so that their interleaving is kept.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct JointOrderData {
    sigma: Vec<usize>,
    tau: Vec<usize>,
    split: (usize, usize),
    first_block: Vec<usize>,
    second_block: Vec<usize>,
}

impl JointOrderData {
    /// Validates that `τ∘σ` has exactly two cycles, one through each critical
    /// point, and that each restricts to admissible order-data.
    pub fn new(sigma: Vec<usize>, tau: Vec<usize>) -> Result<JointOrderData> {
        OrderData::new(sigma.clone(), tau.clone())?;
        let cycles = cycles_of_return_map(&sigma, &tau);
        if cycles.len() != 2 {
            return Err(Error::Domain(format!("joint order-data needs two cycles, found {}", cycles.len())));
        }
        let big = sigma.len();
        let g1 = inverse(&sigma)[big - 1];
        let first = cycles.iter().find(|c| c.contains(&g1)).unwrap().clone();
        if first.contains(&big) {
            return Err(Error::Domain("both critical points lie on the same cycle".into()));
        }
        let second = cycles.iter().find(|c| c.contains(&big)).unwrap().clone();
        let jod = JointOrderData {
            split: (first.len(), second.len()),
            sigma,
            tau,
            first_block: sorted(first),
            second_block: sorted(second),
        };
        for od in [jod.first_order_data(), jod.second_order_data()] {
            if !check_admissible(&od) {
                return Err(Error::Domain(format!("block {od} is inadmissible")));
            }
        }
        Ok(jod)
    }

    /// From the orbit of the first critical point (`x_0 = γ₁ → y_0 → x_1 → …`)
    /// and of the second (`y'_0 = γ₂ → x'_0 → y'_1 → …`).
    pub fn from_orbits<T: PartialOrd + Copy>(
        first_xs: &[T],
        first_ys: &[T],
        second_ys: &[T],
        second_xs: &[T],
    ) -> Result<JointOrderData> {
        let (m, n) = (first_xs.len(), second_xs.len());
        if m == 0 || n == 0 || first_ys.len() != m || second_ys.len() != n {
            return Err(Error::Domain("orbit lengths do not match".into()));
        }
        let xs: Vec<T> = first_xs.iter().chain(second_xs.iter()).copied().collect();
        let ys: Vec<T> = first_ys.iter().chain(second_ys.iter()).copied().collect();
        let rx = ranks(&xs).ok_or_else(|| Error::Domain("coincident lane-1 orbit points".into()))?;
        let ry = ranks(&ys).ok_or_else(|| Error::Domain("coincident lane-2 orbit points".into()))?;
        let total = m + n;
        let mut sigma = vec![0; total];
        let mut tau = vec![0; total];
        for k in 0..m {
            sigma[rx[k] - 1] = ry[k];
            tau[ry[k] - 1] = rx[(k + 1) % m];
        }
        for k in 0..n {
            tau[ry[m + k] - 1] = rx[m + k];
            sigma[rx[m + k] - 1] = ry[m + (k + 1) % n];
        }
        JointOrderData::new(sigma, tau)
    }

    pub fn sigma(&self) -> &[usize] {
        &self.sigma
    }

    pub fn tau(&self) -> &[usize] {
        &self.tau
    }

    /// Half-periods `(m, n)` of the first and second critical orbits.
    pub fn split(&self) -> (usize, usize) {
        self.split
    }

    fn restrict(&self, block: &[usize]) -> OrderData {
        let images: Vec<usize> = sorted(block.iter().map(|&i| self.sigma[i - 1]).collect());
        let rank_x = |i: usize| block.iter().position(|&b| b == i).unwrap() + 1;
        let rank_y = |j: usize| images.iter().position(|&b| b == j).unwrap() + 1;
        let sigma = block.iter().map(|&i| rank_y(self.sigma[i - 1])).collect();
        let tau = images.iter().map(|&j| rank_x(self.tau[j - 1])).collect();
        OrderData { sigma, tau }
    }

    /// Order-data of the orbit through the first critical point.
    pub fn first_order_data(&self) -> OrderData {
        self.restrict(&self.first_block)
    }

    /// Order-data of the orbit through the second critical point.
    pub fn second_order_data(&self) -> OrderData {
        self.restrict(&self.second_block)
    }
}

fn sorted(mut v: Vec<usize>) -> Vec<usize> {
    v.sort_unstable();
    v
}

impl fmt::Display for JointOrderData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "s=[{}];t=[{}]", fmt_perm(&self.sigma), fmt_perm(&self.tau))
    }
}

impl FromStr for JointOrderData {
    type Err = Error;

    fn from_str(s: &str) -> Result<JointOrderData> {
        let (sigma, tau) = parse_pair(s)?;
        JointOrderData::new(sigma, tau)
    }
}

macro_rules! string_serde {
    ($t:ty) => {
        impl Serialize for $t {
            fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
                s.serialize_str(&self.to_string())
            }
        }

        impl<'de> Deserialize<'de> for $t {
            fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<$t, D::Error> {
                String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
            }
        }
    };
}

string_serde!(OrderData);
string_serde!(JointOrderData);
