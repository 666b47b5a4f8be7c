//! Euclidean geometry of horospherical cusp tori.
//!
//! A cusp torus is `C / Λ`, where the lattice `Λ` is generated by the
//! parabolic translations `t_α`, `t_β` realizing the basis slopes. A slope
//! `p/q` is realized by the translation `p·t_α + q·t_β`; its length is the
//! modulus of that complex number.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::FromPrimitive;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::interval::Interval;
use crate::slope::Slope;

/// Relative tolerance for geometric comparisons (ties between lengths).
pub const GEOMETRY_TOL: f64 = 1e-9;

/// Published accuracy of the v3227 cusp translations (real and imaginary parts).
pub const V3227_UNCERTAINTY: f64 = 0.01;

/// Signed horoball expansion distance. Positive `d` scales every length on
/// the torus by `e^d`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct HoroballScale {
    pub d: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "ShapeJson", into = "ShapeJson")]
pub struct CuspShape {
    t_alpha: Complex64,
    t_beta: Complex64,
    uncertainty: f64,
}

#[derive(Serialize, Deserialize)]
struct ShapeJson {
    t_alpha: [f64; 2],
    t_beta: [f64; 2],
    #[serde(default)]
    uncertainty: f64,
}

impl TryFrom<ShapeJson> for CuspShape {
    type Error = Error;

    fn try_from(j: ShapeJson) -> Result<Self> {
        CuspShape::new(
            Complex64::new(j.t_alpha[0], j.t_alpha[1]),
            Complex64::new(j.t_beta[0], j.t_beta[1]),
        )?
        .with_uncertainty(j.uncertainty)
    }
}

impl From<CuspShape> for ShapeJson {
    fn from(c: CuspShape) -> Self {
        ShapeJson {
            t_alpha: [c.t_alpha.re, c.t_alpha.im],
            t_beta: [c.t_beta.re, c.t_beta.im],
            uncertainty: c.uncertainty,
        }
    }
}

fn signed_area(a: Complex64, b: Complex64) -> f64 {
    (a.conj() * b).im
}

impl CuspShape {
    pub fn new(t_alpha: Complex64, t_beta: Complex64) -> Result<Self> {
        if !(t_alpha.re.is_finite() && t_alpha.im.is_finite() && t_beta.re.is_finite() && t_beta.im.is_finite()) {
            return Err(Error::NonFinite("cusp translation"));
        }
        let area = signed_area(t_alpha, t_beta).abs();
        // sine of the angle between the translations must be nonnegligible
        if area <= 1e-12 * t_alpha.norm() * t_beta.norm() {
            return Err(Error::DegenerateCusp { area });
        }
        Ok(CuspShape {
            t_alpha,
            t_beta,
            uncertainty: 0.0,
        })
    }

    /// Attaches an absolute error radius on each real and imaginary part.
    pub fn with_uncertainty(mut self, r: f64) -> Result<Self> {
        if !(r >= 0.0 && r.is_finite()) {
            return Err(crate::error::domain("uncertainty", r, ">= 0 and finite"));
        }
        self.uncertainty = r;
        Ok(self)
    }

    /// Maximal cusp about `T_0` of the census manifold v3227.
    pub fn v3227_t0() -> Self {
        CuspShape {
            t_alpha: Complex64::new(2.383, 0.0),
            t_beta: Complex64::new(4.222, 2.657),
            uncertainty: V3227_UNCERTAINTY,
        }
    }

    /// Maximal cusp about `T_1` of the census manifold v3227.
    pub fn v3227_t1() -> Self {
        CuspShape {
            t_alpha: Complex64::new(7.961, 1.269),
            t_beta: Complex64::new(4.989, 0.0),
            uncertainty: V3227_UNCERTAINTY,
        }
    }

    pub fn builtin(name: &str) -> Result<Self> {
        match name {
            "v3227_T0" => Ok(Self::v3227_t0()),
            "v3227_T1" => Ok(Self::v3227_t1()),
            _ => Err(Error::UnknownShape(name.to_string())),
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::ShapeFormat(e.to_string()))
    }

    pub fn t_alpha(&self) -> Complex64 {
        self.t_alpha
    }

    pub fn t_beta(&self) -> Complex64 {
        self.t_beta
    }

    pub fn uncertainty(&self) -> f64 {
        self.uncertainty
    }

    pub fn area(&self) -> f64 {
        signed_area(self.t_alpha, self.t_beta).abs()
    }

    /// Multiplies both translations by a complex scalar (similarity of the torus).
    pub fn scaled_by(&self, z: Complex64) -> Result<Self> {
        let mut c = CuspShape::new(self.t_alpha * z, self.t_beta * z)?;
        c.uncertainty = self.uncertainty * z.norm();
        Ok(c)
    }

    pub fn rescale(&self, h: HoroballScale) -> Self {
        let k = h.d.exp();
        CuspShape {
            t_alpha: self.t_alpha * k,
            t_beta: self.t_beta * k,
            uncertainty: self.uncertainty * k,
        }
    }

    fn vector(&self, p: f64, q: f64) -> Complex64 {
        self.t_alpha * p + self.t_beta * q
    }

    /// The translation realizing `s`, up to sign.
    pub fn translation(&self, s: &Slope) -> Complex64 {
        let (p, q) = s.to_f64_pair();
        self.vector(p, q)
    }

    pub fn slope_length(&self, s: &Slope) -> f64 {
        self.translation(s).norm()
    }

    /// Length of `s`, widened by the error radius of the translations:
    /// each component is off by at most `r`, so the translation moves by at
    /// most `√2·r·(|p| + |q|)`.
    pub fn slope_length_bounds(&self, s: &Slope) -> Interval {
        let (p, q) = s.to_f64_pair();
        let len = self.vector(p, q).norm();
        let r = std::f64::consts::SQRT_2 * self.uncertainty * (p.abs() + q.abs());
        Interval::outward((len - r).max(0.0), len + r)
    }

    /// Length divided by the square root of the torus area; invariant under
    /// similarities of the torus.
    pub fn normalized_length(&self, s: &Slope) -> f64 {
        self.slope_length(s) / self.area().sqrt()
    }

    /// Shortest nontrivial slope and its length, by Lagrange–Gauss reduction
    /// of the translation lattice. Ties are broken by [`Slope::tie_break_cmp`].
    pub fn shortest_slope(&self) -> (Slope, f64) {
        let (mut u, mut cu) = (self.t_alpha, (1i128, 0i128));
        let (mut v, mut cv) = (self.t_beta, (0i128, 1i128));
        if v.norm_sqr() < u.norm_sqr() {
            std::mem::swap(&mut u, &mut v);
            std::mem::swap(&mut cu, &mut cv);
        }
        loop {
            let m = ((u.conj() * v).re / u.norm_sqr()).round();
            if m != 0.0 {
                v -= u * m;
                let mi = m as i128;
                cv = (cv.0 - mi * cu.0, cv.1 - mi * cu.1);
            }
            if v.norm_sqr() < u.norm_sqr() {
                std::mem::swap(&mut u, &mut v);
                std::mem::swap(&mut cu, &mut cv);
            } else {
                break;
            }
        }
        // In a reduced basis the minimum is attained among u, v, u ± v.
        let candidates = [
            cu,
            cv,
            (cu.0 + cv.0, cu.1 + cv.1),
            (cu.0 - cv.0, cu.1 - cv.1),
        ];
        self.pick_shortest(candidates.iter().filter_map(|&(p, q)| Slope::new(p, q).ok()))
            .expect("reduced basis vectors are primitive")
    }

    /// Length of the shortest nontrivial curve on the torus.
    pub fn waist_size(&self) -> f64 {
        self.shortest_slope().1
    }

    fn pick_shortest(&self, slopes: impl Iterator<Item = Slope>) -> Option<(Slope, f64)> {
        let mut best: Option<(Slope, f64)> = None;
        for s in slopes {
            let len = self.slope_length(&s);
            best = match best {
                None => Some((s, len)),
                Some((b, blen)) => {
                    let tol = GEOMETRY_TOL * blen.max(len);
                    let take = if (len - blen).abs() <= tol {
                        s.tie_break_cmp(&b) == Ordering::Less
                    } else {
                        len < blen
                    };
                    if take {
                        Some((s, len))
                    } else {
                        Some((b, blen))
                    }
                }
            };
        }
        best
    }

    /// Shortest slope meeting `mu` exactly once.
    ///
    /// Every longitude is `λ0 + k·mu` for a fixed longitude `λ0`. The squared
    /// length is a convex quadratic in real `k`, so the integer minimum is at
    /// one of the integers bracketing the real minimizer; the scan takes one
    /// extra integer on each side to absorb floating-point error in locating it.
    pub fn shortest_longitude(&self, mu: &Slope) -> Slope {
        let lambda0 = mu.farey_partner();
        let m = self.translation(mu);
        let l0 = self.translation(&lambda0);
        let k_star = -(m.conj() * l0).re / m.norm_sqr();
        let k_lo = BigInt::from_f64(k_star.floor()).expect("finite minimizer") - 1;
        let candidates = (0..4).filter_map(|i| lambda0.add_multiple(mu, &(&k_lo + i)));
        self.pick_shortest(candidates)
            .expect("longitudes exist for every primitive slope")
            .0
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::slope::intersection_number;
    use num_traits::One;
    use proptest::prelude::*;

    fn s(p: i64, q: i64) -> Slope {
        Slope::new(p, q).unwrap()
    }

    fn square() -> CuspShape {
        CuspShape::new(Complex64::new(1.0, 0.0), Complex64::new(0.0, 1.0)).unwrap()
    }

    // Oracle: minimum over the box |p|, |q| <= 10.
    fn brute_waist(c: &CuspShape) -> f64 {
        let mut best = f64::INFINITY;
        for p in -10i64..=10 {
            for q in -10i64..=10 {
                if let Ok(sl) = Slope::new(p, q) {
                    best = best.min(c.slope_length(&sl));
                }
            }
        }
        best
    }

    #[test]
    fn rejects_degenerate() {
        let r = CuspShape::new(Complex64::new(1.0, 1.0), Complex64::new(2.0, 2.0));
        assert!(matches!(r, Err(Error::DegenerateCusp { .. })));
    }

    #[test]
    fn v3227_lengths() {
        let c0 = CuspShape::v3227_t0();
        assert_eq!(c0.slope_length(&s(1, 0)), 2.383);
        // |4.222 + 2.657i| by direct modulus
        assert!((c0.slope_length(&s(0, 1)) - 4.9886).abs() < 0.02);
        assert_eq!(c0.slope_length(&s(1, 0)), c0.slope_length(&Slope::new(-1, 0).unwrap()));
    }

    #[test]
    fn normalized_length_examples() {
        assert!((square().normalized_length(&s(1, 0)) - 1.0).abs() < 1e-15);
        let c0 = CuspShape::v3227_t0();
        let expect = 2.383 / (2.383f64 * 2.657).sqrt();
        assert!((c0.normalized_length(&s(1, 0)) - expect).abs() < 1e-12);
        assert!((c0.normalized_length(&s(1, 0)) - 0.947).abs() < 0.01);
        let scaled = c0.scaled_by(Complex64::new(7.0, 3.0)).unwrap();
        for sl in [s(1, 0), s(0, 1), s(5, 8), s(-13, 21)] {
            assert!((scaled.normalized_length(&sl) - c0.normalized_length(&sl)).abs() < 1e-12);
        }
    }

    #[test]
    fn waist_examples() {
        assert_eq!(square().waist_size(), 1.0);
        let skew = CuspShape::new(Complex64::new(1.0, 0.0), Complex64::new(0.5, 2.0)).unwrap();
        assert!((skew.waist_size() - brute_waist(&skew)).abs() < 1e-12);
        assert!((skew.waist_size() - 1.0).abs() < 1e-12);
        let c0 = CuspShape::v3227_t0();
        assert!((c0.waist_size() - 2.383).abs() < 1e-12);
        assert_eq!(c0.shortest_slope().0, s(1, 0));
    }

    #[test]
    fn waist_tie_break_is_deterministic() {
        // Hexagonal lattice: 1, ω, ω − 1 all have length 1.
        let hex = CuspShape::new(Complex64::new(1.0, 0.0), Complex64::new(0.5, 3f64.sqrt() / 2.0)).unwrap();
        assert_eq!(hex.shortest_slope().0, s(0, 1));
        assert_eq!(square().shortest_slope().0, s(0, 1));
    }

    #[test]
    fn shortest_longitude_square() {
        let l = square().shortest_longitude(&s(1, 0));
        assert_eq!(l, s(0, 1));
        assert_eq!(square().slope_length(&l), 1.0);
    }

    #[test]
    fn rescale_examples() {
        let c = CuspShape::v3227_t1();
        assert_eq!(c.rescale(HoroballScale { d: 0.0 }), c);
        let doubled = square().rescale(HoroballScale { d: 2f64.ln() });
        assert!((doubled.waist_size() - 2.0).abs() < 1e-12);
        for d in [-3.0, -0.5, 0.7, 4.0] {
            let r = c.rescale(HoroballScale { d });
            assert!((r.area() - c.area() * (2.0 * d).exp()).abs() < 1e-9 * r.area());
            assert!((r.normalized_length(&s(3, 5)) - c.normalized_length(&s(3, 5))).abs() < 1e-12);
        }
    }

    #[test]
    fn json_roundtrip_and_defaults() {
        let c = CuspShape::from_json(r#"{"t_alpha": [2.383, 0], "t_beta": [4.222, 2.657], "uncertainty": 0.01}"#).unwrap();
        assert_eq!(c, CuspShape::v3227_t0());
        let text = serde_json::to_string(&c).unwrap();
        assert_eq!(CuspShape::from_json(&text).unwrap(), c);
        let plain = CuspShape::from_json(r#"{"t_alpha": [1, 0], "t_beta": [0, 1]}"#).unwrap();
        assert_eq!(plain.uncertainty(), 0.0);
        assert!(CuspShape::from_json(r#"{"t_alpha": [1, 1], "t_beta": [2, 2]}"#).is_err());
        assert!(CuspShape::builtin("v3227_T2").is_err());
    }

    #[test]
    fn length_bounds_contain_perturbations() {
        let c = CuspShape::v3227_t0();
        let sl = s(21, 34);
        let b = c.slope_length_bounds(&sl);
        for (da, db) in [(0.01, -0.01), (-0.01, 0.01), (0.0, 0.0)] {
            let pert = CuspShape::new(c.t_alpha() + Complex64::new(da, db), c.t_beta() + Complex64::new(db, da)).unwrap();
            assert!(b.contains(pert.slope_length(&sl)));
        }
    }

    fn shape_strategy() -> impl Strategy<Value = CuspShape> {
        (0.3f64..3.0, -2.0f64..2.0, 0.3f64..3.0, 0.0f64..std::f64::consts::TAU)
            .prop_map(|(a, bx, by, rot)| {
                let z = Complex64::from_polar(1.0, rot);
                CuspShape::new(Complex64::new(a, 0.0) * z, Complex64::new(bx, by) * z).unwrap()
            })
    }

    proptest! {
        #[test]
        fn waist_is_minimal(c in shape_strategy()) {
            let w = c.waist_size();
            prop_assert!(w <= brute_waist(&c) * (1.0 + 1e-12));
            prop_assert!((w - brute_waist(&c)).abs() <= 1e-9 * w);
        }

        #[test]
        fn lattice_triangle_inequality(c in shape_strategy(), p1 in -9i64..9, q1 in -9i64..9, p2 in -9i64..9, q2 in -9i64..9) {
            let (Ok(a), Ok(b), Ok(ab)) = (Slope::new(p1, q1), Slope::new(p2, q2), Slope::new(p1 + p2, q1 + q2)) else {
                return Ok(());
            };
            prop_assert!(c.slope_length(&ab) <= (c.slope_length(&a) + c.slope_length(&b)) * (1.0 + 1e-12));
        }

        #[test]
        fn shortest_longitude_is_locally_minimal(c in shape_strategy(), p in -30i64..30, q in -30i64..30) {
            let Ok(mu) = Slope::new(p, q) else { return Ok(()) };
            let l = c.shortest_longitude(&mu);
            prop_assert!(intersection_number(&mu, &l).is_one());
            let len = c.slope_length(&l);
            for k in [-1i64, 1] {
                let other = l.add_multiple(&mu, &BigInt::from(k)).unwrap();
                prop_assert!(len <= c.slope_length(&other) * (1.0 + GEOMETRY_TOL));
            }
            // exhaustive scan over a wide window of longitudes
            let base = mu.farey_partner();
            for k in -60i64..=60 {
                let other = base.add_multiple(&mu, &BigInt::from(k)).unwrap();
                prop_assert!(len <= c.slope_length(&other) * (1.0 + GEOMETRY_TOL));
            }
        }
    }
}
