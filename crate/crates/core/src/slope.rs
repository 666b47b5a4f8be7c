//! Exact arithmetic on slopes of a torus.
//!
//! A slope is the isotopy class of an essential simple closed curve on a
//! torus. In a fixed basis `(α, β)` of first homology it is a primitive pair
//! `(p, q)`, taken up to simultaneous sign. Coefficients are arbitrary
//! precision because the Fibonacci family quickly outgrows 64 bits.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::de::{self, Deserializer};
use serde::ser::{SerializeTuple, Serializer};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// An unoriented slope `p·α + q·β` in canonical form.
///
/// The stored representative always has `q > 0`, or `q == 0` and `p == 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Slope {
    p: BigInt,
    q: BigInt,
}

impl Slope {
    /// Builds a slope from any representative, rejecting non-primitive pairs.
    pub fn new(p: impl Into<BigInt>, q: impl Into<BigInt>) -> Result<Self> {
        let (p, q) = (p.into(), q.into());
        if !p.gcd(&q).is_one() {
            return Err(Error::NonPrimitive {
                p: p.to_string(),
                q: q.to_string(),
            });
        }
        Ok(Self::canonical(p, q))
    }

    fn canonical(p: BigInt, q: BigInt) -> Self {
        if q.is_negative() || (q.is_zero() && p.is_negative()) {
            Slope { p: -p, q: -q }
        } else {
            Slope { p, q }
        }
    }

    /// The meridian-type basis slope `1/0`.
    pub fn alpha() -> Self {
        Slope {
            p: BigInt::one(),
            q: BigInt::zero(),
        }
    }

    /// The basis slope `0/1`.
    pub fn beta() -> Self {
        Slope {
            p: BigInt::zero(),
            q: BigInt::one(),
        }
    }

    pub fn p(&self) -> &BigInt {
        &self.p
    }

    pub fn q(&self) -> &BigInt {
        &self.q
    }

    /// Coefficients as `f64`, for metric computations.
    pub fn to_f64_pair(&self) -> (f64, f64) {
        (
            self.p.to_f64().unwrap_or(f64::NAN),
            self.q.to_f64().unwrap_or(f64::NAN),
        )
    }

    /// `max(|p|, |q|)`.
    pub fn height(&self) -> BigInt {
        self.p.abs().max(self.q.abs())
    }

    /// The integer vector `self + k·other`, canonicalized.
    ///
    /// Returns `None` when the sum is not primitive.
    pub fn add_multiple(&self, other: &Slope, k: &BigInt) -> Option<Slope> {
        Slope::new(&self.p + k * &other.p, &self.q + k * &other.q).ok()
    }

    /// Signed determinant `p·q' − q·p'` of the representatives.
    pub fn det(&self, other: &Slope) -> BigInt {
        &self.p * &other.q - &self.q * &other.p
    }

    /// A slope meeting `self` exactly once.
    pub fn farey_partner(&self) -> Slope {
        // p·x + q·y = 1  =>  det((p, q), (−y, x)) = 1 before canonicalizing
        let e = self.p.extended_gcd(&self.q);
        debug_assert!(e.gcd.is_one());
        Slope::canonical(-e.y, e.x)
    }

    /// Ordering used for enumerated neighbor lists: `|p|`, then positive `p`
    /// before negative `p`, then `q`.
    pub fn listing_cmp(&self, other: &Slope) -> Ordering {
        self.p
            .abs()
            .cmp(&other.p.abs())
            .then_with(|| self.p.is_negative().cmp(&other.p.is_negative()))
            .then_with(|| self.q.cmp(&other.q))
    }

    /// Ordering used to break ties between equally short slopes:
    /// `|p|`, then `|q|`, then positive `p` first.
    pub fn tie_break_cmp(&self, other: &Slope) -> Ordering {
        self.p
            .abs()
            .cmp(&other.p.abs())
            .then_with(|| self.q.abs().cmp(&other.q.abs()))
            .then_with(|| self.p.is_negative().cmp(&other.p.is_negative()))
    }
}

impl fmt::Display for Slope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.p, self.q)
    }
}

/// Parses `"p/q"` into its raw integer pair, without the primitivity check.
pub fn parse_pair(s: &str) -> Result<(BigInt, BigInt)> {
    let (p, q) = s
        .split_once('/')
        .ok_or_else(|| Error::SlopeSyntax(s.to_string()))?;
    let p = BigInt::from_str(p.trim()).map_err(|_| Error::SlopeSyntax(s.to_string()))?;
    let q = BigInt::from_str(q.trim()).map_err(|_| Error::SlopeSyntax(s.to_string()))?;
    Ok((p, q))
}

impl FromStr for Slope {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (p, q) = parse_pair(s)?;
        Slope::new(p, q)
    }
}

// JSON form is `[p, q]`. Coefficients outside the i64 range are written as
// decimal strings so that no precision is lost.
fn serialize_int<S: SerializeTuple>(seq: &mut S, v: &BigInt) -> std::result::Result<(), S::Error> {
    match v.to_i64() {
        Some(small) => seq.serialize_element(&small),
        None => seq.serialize_element(&v.to_string()),
    }
}

impl Serialize for Slope {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_tuple(2)?;
        serialize_int(&mut seq, &self.p)?;
        serialize_int(&mut seq, &self.q)?;
        seq.end()
    }
}

#[derive(Deserialize)]
#[serde(untagged)]
enum JsonInt {
    Small(i64),
    Text(String),
}

impl JsonInt {
    fn into_bigint<E: de::Error>(self) -> std::result::Result<BigInt, E> {
        match self {
            JsonInt::Small(v) => Ok(BigInt::from(v)),
            JsonInt::Text(s) => BigInt::from_str(&s).map_err(E::custom),
        }
    }
}

impl<'de> Deserialize<'de> for Slope {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let (p, q) = <(JsonInt, JsonInt)>::deserialize(deserializer)?;
        Slope::new(p.into_bigint()?, q.into_bigint()?).map_err(de::Error::custom)
    }
}

/// Geometric intersection number `|p·q' − q·p'|` of two slopes.
pub fn intersection_number(a: &Slope, b: &Slope) -> BigUint {
    a.det(b).magnitude().clone()
}

/// Whether `a` and `b` span an edge of the Farey graph.
pub fn is_farey_neighbor(a: &Slope, b: &Slope) -> bool {
    intersection_number(a, b).is_one()
}

fn div_ceil(n: &BigInt, d: &BigInt) -> BigInt {
    -((-n).div_floor(d))
}

/// Range of integers `k` with `|base + k·step| <= bound`, for `step != 0`.
fn k_window(base: &BigInt, step: &BigInt, bound: &BigInt) -> (BigInt, BigInt) {
    let lo = -bound - base;
    let hi = bound - base;
    if step.sign() == Sign::Plus {
        (div_ceil(&lo, step), hi.div_floor(step))
    } else {
        (div_ceil(&hi, step), lo.div_floor(step))
    }
}

/// All slopes meeting `a` once whose height `max(|p|, |q|)` is at most
/// `height_bound`, in [`Slope::listing_cmp`] order.
pub fn farey_neighbors(a: &Slope, height_bound: u64) -> Vec<Slope> {
    let bound = BigInt::from(height_bound);
    let b0 = a.farey_partner();
    // Every neighbor is ±(b0 + k·a).
    let mut lo: Option<BigInt> = None;
    let mut hi: Option<BigInt> = None;
    for (base, step) in [(b0.p(), a.p()), (b0.q(), a.q())] {
        if step.is_zero() {
            if base.abs() > bound {
                return Vec::new();
            }
            continue;
        }
        let (l, h) = k_window(base, step, &bound);
        lo = Some(lo.map_or(l.clone(), |cur| cur.max(l)));
        hi = Some(hi.map_or(h.clone(), |cur| cur.min(h)));
    }
    let (Some(lo), Some(hi)) = (lo, hi) else {
        return Vec::new();
    };

    let mut out = Vec::new();
    let mut k = lo;
    while k <= hi {
        if let Some(b) = b0.add_multiple(a, &k) {
            out.push(b);
        }
        k += 1;
    }
    out.sort_by(Slope::listing_cmp);
    out.dedup();
    out
}

/// A seeded random walk on the Farey graph.
///
/// The walk keeps a current edge `(a, b)`. Each step moves from `a` to one
/// of `b`, `a + b` or `a − b`, chosen uniformly; these are the vertices of
/// the two Farey triangles on the edge, so every step crosses an edge of the
/// Farey graph. The generator is ChaCha8 seeded from `seed`.
pub fn farey_walk(start: &Slope, steps: u64, seed: u64) -> Slope {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut current = start.clone();
    let mut partner = start.farey_partner();
    for _ in 0..steps {
        let next = match rng.random_range(0..3u8) {
            0 => Some(partner.clone()),
            1 => current.add_multiple(&partner, &BigInt::one()),
            _ => current.add_multiple(&partner, &-BigInt::one()),
        }
        .expect("a ± b is primitive when det(a, b) = ±1");
        partner = std::mem::replace(&mut current, next);
    }
    current
}
