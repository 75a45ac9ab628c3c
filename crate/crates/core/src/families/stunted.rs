//! Stunted tent maps `st_v`: slope-2 tent map cut off by a plateau at height `v`.

use crate::dyadic::Dyadic;
use crate::symbolic::{Kind, Lane, Symbol};

/// `2x` left of the plateau, `v` on `[v/2, 1 - v/2]`, `2 - 2x` to the right.
pub fn eval_stunted(v: Dyadic, x: Dyadic) -> Dyadic {
    let edge = v.half();
    if x <= edge {
        x.double()
    } else if x >= Dyadic::ONE - edge {
        Dyadic::from_int(2) - x.double()
    } else {
        v
    }
}

/// Closed plateau `[v/2, 1 - v/2]`; for `v = 1` this is the single point `1/2`.
pub fn on_plateau(v: Dyadic, x: Dyadic) -> bool {
    let edge = v.half();
    x >= edge && x <= Dyadic::ONE - edge
}

/// Position relative to the plateau center `1/2`.
pub fn st_symbol(lane: Lane, x: Dyadic) -> Symbol {
    let kind = match x.cmp(&Dyadic::HALF) {
        std::cmp::Ordering::Less => Kind::L,
        std::cmp::Ordering::Equal => Kind::C,
        std::cmp::Ordering::Greater => Kind::R,
    };
    Symbol::new(lane, kind)
}

/// Lap of `st_v` containing `x`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StBranch {
    Up,
    Flat,
    Down,
}

/// Branch for `x`, with plateau edges counted as plateau.
pub fn st_branch(v: Dyadic, x: Dyadic) -> StBranch {
    let edge = v.half();
    if x < edge {
        StBranch::Up
    } else if x > Dyadic::ONE - edge {
        StBranch::Down
    } else {
        StBranch::Flat
    }
}
