//! Closed real intervals with outward rounding.
//!
//! Every operation that produces a new endpoint from floating-point
//! arithmetic moves it one ulp outward (`next_down` on the lower end,
//! `next_up` on the upper end). For the correctly rounded operations
//! (`+`, `−`, `×`) that one ulp covers the rounding error; `ln` and `exp`
//! are within one ulp on every mainstream libm, and one further ulp of slack
//! is applied to them.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "[f64; 2]", into = "[f64; 2]")]
pub struct Interval {
    lo: f64,
    hi: f64,
}

impl Interval {
    pub fn new(lo: f64, hi: f64) -> Result<Self> {
        if lo.is_nan() || hi.is_nan() {
            return Err(Error::NonFinite("interval endpoint"));
        }
        if lo > hi {
            return Err(domain("interval lower endpoint", lo, "lo <= hi"));
        }
        Ok(Interval { lo, hi })
    }

    pub const fn point(x: f64) -> Self {
        Interval { lo: x, hi: x }
    }

    /// Tightest interval holding `lo` and `hi` after one ulp of outward slack.
    pub fn outward(lo: f64, hi: f64) -> Self {
        let (lo, hi) = if lo <= hi { (lo, hi) } else { (hi, lo) };
        Interval {
            lo: lo.next_down(),
            hi: hi.next_up(),
        }
    }

    pub fn lo(&self) -> f64 {
        self.lo
    }

    pub fn hi(&self) -> f64 {
        self.hi
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn mid(&self) -> f64 {
        0.5 * (self.lo + self.hi)
    }

    pub fn contains(&self, x: f64) -> bool {
        self.lo <= x && x <= self.hi
    }

    /// Whether `x` lies in the open interior.
    pub fn strictly_contains(&self, x: f64) -> bool {
        self.lo < x && x < self.hi
    }

    pub fn contains_interval(&self, other: &Interval) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }

    pub fn hull(&self, other: &Interval) -> Interval {
        Interval {
            lo: self.lo.min(other.lo),
            hi: self.hi.max(other.hi),
        }
    }

    /// Widens symmetrically by `r >= 0`.
    pub fn widen(&self, r: f64) -> Interval {
        Interval::outward(self.lo - r, self.hi + r)
    }

    pub fn scale(&self, k: f64) -> Interval {
        Interval::outward(self.lo * k, self.hi * k)
    }

    pub fn ln(&self) -> Result<Interval> {
        if self.lo <= 0.0 {
            return Err(domain("ln argument", self.lo, "> 0"));
        }
        Ok(Interval::outward(self.lo.ln().next_down(), self.hi.ln().next_up()))
    }

    pub fn exp(&self) -> Interval {
        let lo = self.lo.exp().next_down().max(0.0);
        Interval::outward(lo, self.hi.exp().next_up())
    }

    /// Rounds both endpoints outward to `places` decimal places.
    pub fn round_outward(&self, places: i32) -> Interval {
        Interval {
            lo: round_down(self.lo, places),
            hi: round_up(self.hi, places),
        }
    }
}

/// Largest multiple of `10^-places` that is `<= x`.
pub fn round_down(x: f64, places: i32) -> f64 {
    let s = 10f64.powi(places);
    let mut y = (x * s).floor() / s;
    if y > x {
        y = ((x * s).floor() - 1.0) / s;
    }
    y
}

/// Smallest multiple of `10^-places` that is `>= x`.
pub fn round_up(x: f64, places: i32) -> f64 {
    -round_down(-x, places)
}

impl TryFrom<[f64; 2]> for Interval {
    type Error = Error;

    fn try_from(v: [f64; 2]) -> Result<Self> {
        Interval::new(v[0], v[1])
    }
}

impl From<Interval> for [f64; 2] {
    fn from(i: Interval) -> Self {
        [i.lo, i.hi]
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}

impl Add for Interval {
    type Output = Interval;

    fn add(self, rhs: Interval) -> Interval {
        Interval::outward(self.lo + rhs.lo, self.hi + rhs.hi)
    }
}

impl Add<f64> for Interval {
    type Output = Interval;

    fn add(self, rhs: f64) -> Interval {
        Interval::outward(self.lo + rhs, self.hi + rhs)
    }
}

impl Sub for Interval {
    type Output = Interval;

    fn sub(self, rhs: Interval) -> Interval {
        Interval::outward(self.lo - rhs.hi, self.hi - rhs.lo)
    }
}

impl Neg for Interval {
    type Output = Interval;

    fn neg(self) -> Interval {
        Interval {
            lo: -self.hi,
            hi: -self.lo,
        }
    }
}

impl Mul<f64> for Interval {
    type Output = Interval;

    fn mul(self, k: f64) -> Interval {
        self.scale(k)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn rejects_inverted() {
        assert!(Interval::new(2.0, 1.0).is_err());
        assert!(Interval::new(f64::NAN, 1.0).is_err());
    }

    #[test]
    fn decimal_rounding() {
        assert_eq!(round_down(2.4688, 2), 2.46);
        assert_eq!(round_up(3.8551, 2), 3.86);
        assert_eq!(round_up(2.62059, 3), 2.621);
        assert_eq!(round_down(-1.99934, 2), -2.0);
        assert_eq!(round_up(2.01059, 2), 2.02);
        assert_eq!(round_down(-5.5232, 1), -5.6);
        assert_eq!(round_up(4.462, 1), 4.5);
        assert_eq!(round_down(2.0, 1), 2.0);
    }

    #[test]
    fn json_is_pair() {
        let i = Interval::new(-1.5, 2.25).unwrap();
        assert_eq!(serde_json::to_string(&i).unwrap(), "[-1.5,2.25]");
        assert!(serde_json::from_str::<Interval>("[3.0,1.0]").is_err());
    }

    proptest! {
        #[test]
        fn add_encloses_pointwise(a in -1e6f64..1e6, b in 0f64..10.0, c in -1e6f64..1e6, d in 0f64..10.0,
                                  s in 0f64..1.0, t in 0f64..1.0) {
            let x = Interval::new(a, a + b).unwrap();
            let y = Interval::new(c, c + d).unwrap();
            let (px, py) = (a + s * b, c + t * d);
            prop_assert!((x + y).contains(px + py));
            prop_assert!((x - y).contains(px - py));
            prop_assert!(x.scale(-3.7).contains(px * -3.7));
        }

        #[test]
        fn ln_exp_enclose_pointwise(a in 1e-3f64..1e3, b in 0f64..10.0, s in 0f64..1.0) {
            let x = Interval::new(a, a + b).unwrap();
            let p = a + s * b;
            prop_assert!(x.ln().unwrap().contains(p.ln()));
            let y = Interval::new(-a, b).unwrap();
            let q = -a + s * (a + b);
            prop_assert!(y.exp().contains(q.exp()));
        }

        #[test]
        fn round_outward_contains(lo in -100f64..100.0, w in 0f64..5.0, places in 0i32..6) {
            let x = Interval::new(lo, lo + w).unwrap();
            prop_assert!(x.round_outward(places).contains_interval(&x));
        }
    }
}
