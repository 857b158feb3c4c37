//! Exact dyadic rationals `k / 2^e`.
//!
//! Values are kept canonical: either `e = 0` or `k` is odd. Arithmetic is exact
//! and panics on `i128` overflow, which is far outside the magnitudes the
//! Thompson and quandle graphs ever reach.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;

#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Dyadic {
    num: i128,
    exp: u32,
}

const OVERFLOW: &str = "dyadic arithmetic overflow";

impl Dyadic {
    pub const ZERO: Dyadic = Dyadic { num: 0, exp: 0 };
    pub const ONE: Dyadic = Dyadic { num: 1, exp: 0 };

    /// `num / 2^exp`, canonicalized.
    pub fn new(num: i128, exp: u32) -> Dyadic {
        let mut d = Dyadic { num, exp };
        d.canonicalize();
        d
    }

    pub fn from_int(n: i128) -> Dyadic {
        Dyadic { num: n, exp: 0 }
    }

    fn canonicalize(&mut self) {
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

    /// Exponent of the denominator.
    pub fn exponent(&self) -> u32 {
        self.exp
    }

    pub fn is_integer(&self) -> bool {
        self.exp == 0
    }

    pub fn floor(&self) -> i128 {
        self.num >> self.exp
    }

    fn lift(&self, exp: u32) -> i128 {
        debug_assert!(exp >= self.exp);
        let shift = exp - self.exp;
        let out = self.num.checked_shl(shift).expect(OVERFLOW);
        assert_eq!(out >> shift, self.num, "{OVERFLOW}");
        out
    }

    /// `self * 2^k`.
    pub fn mul_pow2(&self, k: i32) -> Dyadic {
        if self.num == 0 {
            return *self;
        }
        if k >= 0 {
            let k = k as u32;
            let drop = k.min(self.exp);
            let up = k - drop;
            let num = self.num.checked_shl(up).expect(OVERFLOW);
            assert_eq!(num >> up, self.num, "{OVERFLOW}");
            Dyadic::new(num, self.exp - drop)
        } else {
            let e = self.exp.checked_add(k.unsigned_abs()).expect(OVERFLOW);
            assert!(e < 120, "{OVERFLOW}");
            Dyadic::new(self.num, e)
        }
    }

    pub fn half(&self) -> Dyadic {
        self.mul_pow2(-1)
    }

    /// `m` with `self = 2^m` when `self` is a positive power of two.
    pub fn log2_exact(&self) -> Option<i32> {
        if self.num > 0 && self.num.count_ones() == 1 {
            Some(self.num.trailing_zeros() as i32 - self.exp as i32)
        } else {
            None
        }
    }

    /// `self * a / b` where `a / b` must be a power of two.
    pub fn scale(&self, a: Dyadic, b: Dyadic) -> Dyadic {
        let la = a.log2_exact().expect("scale numerator is not a power of two");
        let lb = b.log2_exact().expect("scale denominator is not a power of two");
        self.mul_pow2(la - lb)
    }
}

impl Ord for Dyadic {
    fn cmp(&self, other: &Self) -> Ordering {
        let e = self.exp.max(other.exp);
        self.lift(e).cmp(&other.lift(e))
    }
}

impl PartialOrd for Dyadic {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Add for Dyadic {
    type Output = Dyadic;
    fn add(self, rhs: Dyadic) -> Dyadic {
        let e = self.exp.max(rhs.exp);
        Dyadic::new(self.lift(e).checked_add(rhs.lift(e)).expect(OVERFLOW), e)
    }
}

impl Sub for Dyadic {
    type Output = Dyadic;
    fn sub(self, rhs: Dyadic) -> Dyadic {
        self + (-rhs)
    }
}

impl Neg for Dyadic {
    type Output = Dyadic;
    fn neg(self) -> Dyadic {
        Dyadic {
            num: self.num.checked_neg().expect(OVERFLOW),
            exp: self.exp,
        }
    }
}

impl From<i64> for Dyadic {
    fn from(n: i64) -> Self {
        Dyadic::from_int(n as i128)
    }
}

impl fmt::Display for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exp == 0 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, 1u128 << self.exp)
        }
    }
}

impl fmt::Debug for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseDyadicError(pub String);

impl fmt::Display for ParseDyadicError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "not a dyadic rational: `{}`", self.0)
    }
}

impl std::error::Error for ParseDyadicError {}

impl FromStr for Dyadic {
    type Err = ParseDyadicError;

    /// Accepts `k`, `k/d` with `d` a power of two, and `k/2^e`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || ParseDyadicError(s.to_string());
        let s = s.trim();
        let Some((k, d)) = s.split_once('/') else {
            return s.parse::<i128>().map(Dyadic::from_int).map_err(|_| bad());
        };
        let num: i128 = k.parse().map_err(|_| bad())?;
        let exp = if let Some(e) = d.strip_prefix("2^") {
            e.parse::<u32>().map_err(|_| bad())?
        } else {
            let den: u128 = d.parse().map_err(|_| bad())?;
            if den == 0 || !den.is_power_of_two() {
                return Err(bad());
            }
            den.trailing_zeros()
        };
        if exp >= 120 {
            return Err(bad());
        }
        Ok(Dyadic::new(num, exp))
    }
}
