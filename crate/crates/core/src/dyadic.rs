//! Exact dyadic rationals `numerator / 2^exponent`.
//!
//! Stunted tent maps only ever double, reflect (`2 - 2x`) or halve, so every
//! orbit, bone endpoint and lap breakpoint in the ST family stays dyadic when
//! the parameters are dyadic.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// A normalized dyadic rational: the numerator is odd unless the value is zero.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Dyadic {
    num: i128,
    exp: u32,
}

impl Dyadic {
    pub const ZERO: Dyadic = Dyadic { num: 0, exp: 0 };
    pub const ONE: Dyadic = Dyadic { num: 1, exp: 0 };
    pub const HALF: Dyadic = Dyadic { num: 1, exp: 1 };

    /// `num / 2^exp`, normalized.
    pub fn new(num: i128, exp: u32) -> Dyadic {
        let mut d = Dyadic { num, exp };
        d.normalize();
        d
    }

    pub fn from_int(n: i64) -> Dyadic {
        Dyadic::new(n as i128, 0)
    }

    fn normalize(&mut self) {
        if self.num == 0 {
            self.exp = 0;
            return;
        }
        let tz = self.num.trailing_zeros().min(self.exp);
        self.num >>= tz;
        self.exp -= tz;
    }

    pub fn numerator(&self) -> i128 {
        self.num
    }

    pub fn exponent(&self) -> u32 {
        self.exp
    }

    pub fn is_zero(&self) -> bool {
        self.num == 0
    }

    pub fn half(self) -> Dyadic {
        Dyadic::new(self.num, self.exp + 1)
    }

    pub fn double(self) -> Dyadic {
        if self.exp > 0 {
            Dyadic { num: self.num, exp: self.exp - 1 }
        } else {
            Dyadic::new(self.num.checked_mul(2).expect("dyadic overflow"), 0)
        }
    }

    /// Multiply by `2^k` (k may be negative).
    pub fn scale_pow2(self, k: i32) -> Dyadic {
        if k >= 0 {
            let k = k as u32;
            if self.exp >= k {
                Dyadic::new(self.num, self.exp - k)
            } else {
                let shift = k - self.exp;
                Dyadic::new(checked_shl(self.num, shift), 0)
            }
        } else {
            Dyadic::new(self.num, self.exp + (-k) as u32)
        }
    }

    pub fn abs(self) -> Dyadic {
        Dyadic { num: self.num.abs(), exp: self.exp }
    }

    pub fn signum(&self) -> i32 {
        self.num.signum() as i32
    }

    pub fn to_f64(self) -> f64 {
        // Exact whenever the numerator fits in 53 bits.
        (self.num as f64) * (-(self.exp as f64)).exp2()
    }

    /// Exact conversion from a finite double (every finite double is dyadic).
    pub fn from_f64(x: f64) -> Result<Dyadic> {
        if !x.is_finite() {
            return Err(Error::Domain(format!("non-finite value {x}")));
        }
        if x == 0.0 {
            return Ok(Dyadic::ZERO);
        }
        let bits = x.to_bits();
        let sign = if bits >> 63 == 1 { -1i128 } else { 1 };
        let raw_exp = ((bits >> 52) & 0x7ff) as i32;
        let frac = (bits & ((1u64 << 52) - 1)) as i128;
        let (mant, e) = if raw_exp == 0 { (frac, -1074) } else { (frac | (1i128 << 52), raw_exp - 1075) };
        if e >= 0 {
            Ok(Dyadic::new(sign * checked_shl(mant, e as u32), 0))
        } else {
            Ok(Dyadic::new(sign * mant, (-e) as u32))
        }
    }

    fn align(a: Dyadic, b: Dyadic) -> (i128, i128, u32) {
        let e = a.exp.max(b.exp);
        (checked_shl(a.num, e - a.exp), checked_shl(b.num, e - b.exp), e)
    }

    /// Solve `slope * x + intercept = target` for `x` when `slope` is `±2^k`.
    pub fn solve_pow2_affine(slope: Dyadic, intercept: Dyadic, target: Dyadic) -> Option<Dyadic> {
        let k = slope.pow2_exponent()?;
        let q = (target - intercept).scale_pow2(-k);
        Some(if slope.num < 0 { -q } else { q })
    }

    /// If `|self| = 2^k`, returns `k`.
    pub fn pow2_exponent(&self) -> Option<i32> {
        let a = self.num.unsigned_abs();
        if a == 0 || !a.is_power_of_two() {
            return None;
        }
        Some(a.trailing_zeros() as i32 - self.exp as i32)
    }
}

fn checked_shl(v: i128, s: u32) -> i128 {
    if v == 0 {
        return 0;
    }
    assert!(s < 127 && v.unsigned_abs().leading_zeros() > s + 1, "dyadic overflow");
    v << s
}

impl Add for Dyadic {
    type Output = Dyadic;
    fn add(self, rhs: Dyadic) -> Dyadic {
        let (a, b, e) = Dyadic::align(self, rhs);
        Dyadic::new(a.checked_add(b).expect("dyadic overflow"), e)
    }
}

impl Sub for Dyadic {
    type Output = Dyadic;
    fn sub(self, rhs: Dyadic) -> Dyadic {
        let (a, b, e) = Dyadic::align(self, rhs);
        Dyadic::new(a.checked_sub(b).expect("dyadic overflow"), e)
    }
}

impl Mul for Dyadic {
    type Output = Dyadic;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn mul(self, rhs: Dyadic) -> Dyadic {
        Dyadic::new(self.num.checked_mul(rhs.num).expect("dyadic overflow"), self.exp + rhs.exp)
    }
}

impl Neg for Dyadic {
    type Output = Dyadic;
    fn neg(self) -> Dyadic {
        Dyadic { num: -self.num, exp: self.exp }
    }
}

impl PartialOrd for Dyadic {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Dyadic {
    fn cmp(&self, other: &Self) -> Ordering {
        let (a, b, _) = Dyadic::align(*self, *other);
        a.cmp(&b)
    }
}

impl fmt::Display for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/2^{}", self.num, self.exp)
    }
}

impl fmt::Debug for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl FromStr for Dyadic {
    type Err = Error;

    fn from_str(s: &str) -> Result<Dyadic> {
        let s = s.trim();
        let bad = || Error::Parse(format!("invalid dyadic '{s}'"));
        match s.split_once('/') {
            None => Ok(Dyadic::new(s.parse::<i128>().map_err(|_| bad())?, 0)),
            Some((n, d)) => {
                let num = n.trim().parse::<i128>().map_err(|_| bad())?;
                let d = d.trim();
                let exp = if let Some(k) = d.strip_prefix("2^") {
                    k.parse::<u32>().map_err(|_| bad())?
                } else {
                    let den = d.parse::<u128>().map_err(|_| bad())?;
                    if !den.is_power_of_two() {
                        return Err(bad());
                    }
                    den.trailing_zeros()
                };
                Ok(Dyadic::new(num, exp))
            }
        }
    }
}

impl Serialize for Dyadic {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Dyadic {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Dyadic, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
