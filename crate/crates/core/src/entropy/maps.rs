//! The two unimodal maps of a parameter point, behind one interface that
//! works in floats (logistic) or exact dyadics (stunted tent).

use crate::dyadic::Dyadic;
use crate::error::Result;
use crate::families::logistic::eval_logistic;
use crate::families::stunted::eval_stunted;
use crate::families::{Family, ParamPoint};

pub(crate) trait Unimodal: Copy + Send + Sync {
    type X: Copy + PartialOrd + std::fmt::Debug;
    type Key: Ord + Copy;
    /// Whether the map has constant laps.
    const FLAT: bool;

    fn zero() -> Self::X;
    fn one() -> Self::X;
    fn key(x: Self::X) -> Self::Key;
    fn to_f64(x: Self::X) -> f64;
    fn eval(&self, x: Self::X) -> Self::X;
    /// Interior points where the lap of the map changes, ascending.
    fn breaks(&self) -> Vec<Self::X>;
    /// Slope sign on the open interval between two consecutive breaks.
    fn piece_slope(&self, lo: Self::X, hi: Self::X) -> i8;
    /// Break points with a non-flat branch on one side: `(point, side, slope)`
    /// where `side` is `-1` for the branch below the point.
    fn events(&self) -> Vec<(Self::X, i8, i8)>;
    /// Slope sign just to the `side` of `y`.
    fn one_sided(&self, y: Self::X, side: i8) -> i8;
}

#[derive(Clone, Copy, Debug)]
pub(crate) struct QMap(pub f64);

impl Unimodal for QMap {
    type X = f64;
    type Key = u64;
    const FLAT: bool = false;

    fn zero() -> f64 {
        0.0
    }
    fn one() -> f64 {
        1.0
    }
    fn key(x: f64) -> u64 {
        // Values live in [0, 1]; adding 0.0 folds -0.0 into +0.0.
        (x + 0.0).to_bits()
    }
    fn to_f64(x: f64) -> f64 {
        x
    }
    fn eval(&self, x: f64) -> f64 {
        eval_logistic(self.0, x)
    }
    fn breaks(&self) -> Vec<f64> {
        vec![0.5]
    }
    fn piece_slope(&self, _lo: f64, hi: f64) -> i8 {
        if hi <= 0.5 {
            1
        } else {
            -1
        }
    }
    fn events(&self) -> Vec<(f64, i8, i8)> {
        vec![(0.5, -1, 1), (0.5, 1, -1)]
    }
    fn one_sided(&self, y: f64, side: i8) -> i8 {
        if y < 0.5 || (y == 0.5 && side < 0) {
            1
        } else {
            -1
        }
    }
}

#[derive(Clone, Copy, Debug)]
pub(crate) struct StMap(pub Dyadic);

impl StMap {
    fn edges(&self) -> (Dyadic, Dyadic) {
        let e = self.0.half();
        (e, Dyadic::ONE - e)
    }
}

impl Unimodal for StMap {
    type X = Dyadic;
    type Key = Dyadic;
    const FLAT: bool = true;

    fn zero() -> Dyadic {
        Dyadic::ZERO
    }
    fn one() -> Dyadic {
        Dyadic::ONE
    }
    fn key(x: Dyadic) -> Dyadic {
        x
    }
    fn to_f64(x: Dyadic) -> f64 {
        x.to_f64()
    }
    fn eval(&self, x: Dyadic) -> Dyadic {
        eval_stunted(self.0, x)
    }
    fn breaks(&self) -> Vec<Dyadic> {
        let (l, r) = self.edges();
        if l == r {
            vec![l]
        } else {
            vec![l, r]
        }
    }
    fn piece_slope(&self, lo: Dyadic, hi: Dyadic) -> i8 {
        let (l, r) = self.edges();
        if hi <= l {
            1
        } else if lo >= r {
            -1
        } else {
            0
        }
    }
    fn events(&self) -> Vec<(Dyadic, i8, i8)> {
        let (l, r) = self.edges();
        vec![(l, -1, 1), (r, 1, -1)]
    }
    fn one_sided(&self, y: Dyadic, side: i8) -> i8 {
        let (l, r) = self.edges();
        if y < l || (y == l && side < 0) {
            1
        } else if y > r || (y == r && side > 0) {
            -1
        } else {
            0
        }
    }
}

/// The composition `f = g_w ∘ g_v` as its two unimodal factors.
#[derive(Clone, Copy, Debug)]
pub(crate) struct Pair<M: Unimodal> {
    pub first: M,
    pub second: M,
}

impl<M: Unimodal> Pair<M> {
    /// Factor applied at unimodal step `i` (0-based).
    pub fn step(&self, i: usize) -> M {
        if i.is_multiple_of(2) {
            self.first
        } else {
            self.second
        }
    }

    /// Apply factors `from..to` to `x`.
    pub fn run(&self, from: usize, to: usize, x: M::X) -> M::X {
        (from..to).fold(x, |y, i| self.step(i).eval(y))
    }

    /// Slope sign of factors `from..to` just to the `side` of `x`, or 0 when
    /// that side runs into a plateau.
    pub fn side_orientation(&self, from: usize, to: usize, mut x: M::X, mut side: i8) -> i8 {
        let mut o = 1i8;
        for i in from..to {
            let g = self.step(i);
            let s = g.one_sided(x, side);
            if s == 0 {
                return 0;
            }
            o *= s;
            // A turning point sends both sides below its value.
            side = if g.breaks().contains(&x) { -1 } else { side * s };
            x = g.eval(x);
        }
        o
    }
}

/// A parameter point resolved to its concrete factor maps.
pub(crate) enum Resolved {
    Q(Pair<QMap>),
    St(Pair<StMap>),
}

pub(crate) fn resolve(p: &ParamPoint) -> Result<Resolved> {
    Ok(match p.family {
        Family::Q => Resolved::Q(Pair { first: QMap(p.v), second: QMap(p.w) }),
        Family::St => {
            let (v, w) = p.dyadic()?;
            Resolved::St(Pair { first: StMap(v), second: StMap(w) })
        }
    })
}
