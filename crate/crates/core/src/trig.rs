//! Laws of cosines for hyperbolic triangles with material and ideal vertices.
//!
//! Lengths of sides ending at an ideal vertex are measured relative to a
//! chosen horoball about that vertex, so they may be negative.

use std::f64::consts::{PI, TAU};

use crate::error::{domain, Result};

fn check_angle(alpha: f64, lo_open: bool, hi: f64) -> Result<()> {
    let ok = if lo_open { alpha > 0.0 } else { alpha >= 0.0 };
    if ok && alpha <= hi {
        Ok(())
    } else {
        Err(domain("angle", alpha, if hi == PI { "in (0, π]" } else { "in (0, 2π]" }))
    }
}

/// Side opposite the angle `alpha` in a compact triangle with adjacent sides
/// `b` and `c`: `cosh a = cosh b·cosh c − sinh b·sinh c·cos α`.
///
/// Evaluated through the equivalent half-angle form
/// `sinh²(a/2) = sinh²((b−c)/2) + sinh b·sinh c·sin²(α/2)`, which keeps full
/// relative accuracy for thin triangles and never leaves the domain of `asinh`.
pub fn side_from_cosines(b: f64, c: f64, alpha: f64) -> Result<f64> {
    if !(b >= 0.0) {
        return Err(domain("side b", b, ">= 0"));
    }
    if !(c >= 0.0) {
        return Err(domain("side c", c, ">= 0"));
    }
    if !(0.0..=PI).contains(&alpha) {
        return Err(domain("angle", alpha, "in [0, π]"));
    }
    let half_diff = (0.5 * (b - c)).sinh();
    let half_angle = (0.5 * alpha).sin();
    let s2 = half_diff * half_diff + b.sinh() * c.sinh() * half_angle * half_angle;
    Ok(2.0 * s2.sqrt().asinh())
}

/// Side opposite the ideal vertex of an isosceles 1/3-ideal triangle:
/// `2·sinh(a/2) = p·e^b`, where `p` is the horocyclic segment cut off by a
/// horoball `H` and `b` the signed distance from `H` to the material vertices.
pub fn one_third_side(p: f64, b: f64) -> Result<f64> {
    if !(p > 0.0) {
        return Err(domain("horocycle length p", p, "> 0"));
    }
    Ok(2.0 * (0.5 * p * b.exp()).asinh())
}

/// Inverse of [`one_third_side`]: the horocycle length for side `a` at
/// horoball distance `b`.
pub fn one_third_horocycle(a: f64, b: f64) -> Result<f64> {
    if !(a > 0.0) {
        return Err(domain("side a", a, "> 0"));
    }
    Ok(2.0 * (0.5 * a).sinh() * (-b).exp())
}

/// Side between the ideal vertices of a 2/3-ideal triangle:
/// `ℓ(g) = ℓ(ρ) + ℓ(ρ′) + ln((1 − cos α)/2)`.
pub fn two_thirds_g(len_rho: f64, len_rho_prime: f64, alpha: f64) -> Result<f64> {
    check_angle(alpha, true, PI)?;
    // (1 − cos α)/2 = sin²(α/2)
    Ok(len_rho + len_rho_prime + 2.0 * (0.5 * alpha).sin().ln())
}

/// Length of a circle arc of angle `alpha` and radius `r`.
pub fn circle_arc(r: f64, alpha: f64) -> Result<f64> {
    if !(r > 0.0) {
        return Err(domain("radius", r, "> 0"));
    }
    check_angle(alpha, true, TAU)?;
    Ok(alpha * r.sinh())
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MaterialTriangle {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    /// Angle opposite side `a`.
    pub alpha: f64,
}

impl MaterialTriangle {
    pub fn solve(b: f64, c: f64, alpha: f64) -> Result<Self> {
        Ok(MaterialTriangle {
            a: side_from_cosines(b, c, alpha)?,
            b,
            c,
            alpha,
        })
    }

    /// `cosh a − (cosh b·cosh c − sinh b·sinh c·cos α)`.
    pub fn law_residual(&self) -> f64 {
        self.a.cosh() - (self.b.cosh() * self.c.cosh() - self.b.sinh() * self.c.sinh() * self.alpha.cos())
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct OneThirdIdealTriangle {
    pub a: f64,
    pub b: f64,
    pub p: f64,
}

impl OneThirdIdealTriangle {
    pub fn from_horocycle(p: f64, b: f64) -> Result<Self> {
        Ok(OneThirdIdealTriangle {
            a: one_third_side(p, b)?,
            b,
            p,
        })
    }

    /// Same triangle measured against the horoball grown by distance `d`.
    pub fn rescaled(&self, d: f64) -> Self {
        OneThirdIdealTriangle {
            a: self.a,
            b: self.b - d,
            p: self.p * d.exp(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TwoThirdsIdealTriangle {
    pub len_rho: f64,
    pub len_rho_prime: f64,
    pub alpha: f64,
    pub len_g: f64,
}

impl TwoThirdsIdealTriangle {
    pub fn solve(len_rho: f64, len_rho_prime: f64, alpha: f64) -> Result<Self> {
        Ok(TwoThirdsIdealTriangle {
            len_rho,
            len_rho_prime,
            alpha,
            len_g: two_thirds_g(len_rho, len_rho_prime, alpha)?,
        })
    }

    /// Same triangle after growing the horoballs by `d` and `d_prime`.
    pub fn rescaled(&self, d: f64, d_prime: f64) -> Self {
        TwoThirdsIdealTriangle {
            len_rho: self.len_rho - d,
            len_rho_prime: self.len_rho_prime - d_prime,
            alpha: self.alpha,
            len_g: self.len_g - d - d_prime,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::halfplane::{hp_distance, ray_point, HPoint};
    use proptest::prelude::*;
    use std::f64::consts::FRAC_PI_2;

    #[test]
    fn cosines_degenerate_collapse() {
        assert_eq!(side_from_cosines(1.3, 1.3, 0.0).unwrap(), 0.0);
    }

    #[test]
    fn cosines_isosceles_form() {
        for (r, alpha) in [(0.4, 0.3), (1.1649, 2.0), (3.0, PI)] {
            let a = side_from_cosines(r, r, alpha).unwrap();
            let rhs = r.cosh().powi(2) - r.sinh().powi(2) * alpha.cos();
            assert!((a.cosh() - rhs).abs() < 1e-12 * rhs);
        }
    }

    #[test]
    fn cosines_right_angle_matches_half_plane() {
        let a = side_from_cosines(1.0, 2.0, FRAC_PI_2).unwrap();
        assert!((a.cosh() - 1f64.cosh() * 2f64.cosh()).abs() < 1e-12);
        assert!((a - 2.44443).abs() < 1e-5);
        // vertex at i with a right angle: rays straight up and straight left
        let v = HPoint::new(0.0, 1.0).unwrap();
        let p = HPoint::from_complex(ray_point(0.0, 1.0)).unwrap();
        let q = HPoint::from_complex(ray_point(FRAC_PI_2, 2.0)).unwrap();
        assert!((hp_distance(v, p) - 1.0).abs() < 1e-12);
        assert!((hp_distance(p, q) - a).abs() < 1e-12);
    }

    #[test]
    fn cosines_domain_errors() {
        assert!(side_from_cosines(-1.0, 1.0, 1.0).is_err());
        assert!(side_from_cosines(1.0, 1.0, 4.0).is_err());
        assert!(side_from_cosines(1.0, 1.0, -0.1).is_err());
    }

    #[test]
    fn one_third_examples() {
        assert!(one_third_side(1e-300, 0.0).unwrap() < 1e-299);
        let a = one_third_side(1.0, 0.0).unwrap();
        assert!((a - 2.0 * 0.5f64.asinh()).abs() < 1e-15);
        assert!((a.cosh() - 1.5).abs() < 1e-14);
        assert!((a - 0.96242).abs() < 1e-5);
        let p = 2.0 * 0.145f64.sinh();
        assert!((p - 0.29101).abs() < 1e-5);
        assert!((one_third_side(p, 0.0).unwrap() - 0.29).abs() < 1e-14);
        assert!(one_third_side(0.0, 1.0).is_err());
        assert!(one_third_side(-1.0, 1.0).is_err());
    }

    #[test]
    fn one_third_inverse() {
        let a = one_third_side(0.37, 1.2).unwrap();
        assert!((one_third_horocycle(a, 1.2).unwrap() - 0.37).abs() < 1e-14);
    }

    #[test]
    fn two_thirds_examples() {
        assert!((two_thirds_g(1.5, 2.5, PI).unwrap() - 4.0).abs() < 1e-15);
        assert!((two_thirds_g(1.5, 2.5, FRAC_PI_2).unwrap() - (4.0 - 2f64.ln())).abs() < 1e-14);
        assert!(two_thirds_g(1.0, 1.0, 0.0).is_err());
        assert!(two_thirds_g(1.0, 1.0, 3.5).is_err());
    }

    #[test]
    fn two_thirds_limit_at_r15() {
        // h(r) − 2r from the half-plane construction converges to the log term
        let r = 15.0;
        let alpha = FRAC_PI_2;
        let w = HPoint::from_complex(ray_point(-alpha / 2.0, r)).unwrap();
        let w2 = HPoint::from_complex(ray_point(alpha / 2.0, r)).unwrap();
        let limit = hp_distance(w, w2) - 2.0 * r;
        assert!((two_thirds_g(0.0, 0.0, alpha).unwrap() - limit).abs() < 1e-9);
    }

    #[test]
    fn circle_arc_examples() {
        assert!(circle_arc(1.0, 1e-300).unwrap() < 1e-299);
        let small = circle_arc(1e-6, TAU).unwrap();
        assert!((small - TAU * 1e-6).abs() < 1e-15);
        assert!((circle_arc(1.1649, PI).unwrap() - 4.546).abs() < 1e-3);
        assert!(circle_arc(0.0, 1.0).is_err());
        assert!(circle_arc(1.0, 7.0).is_err());
    }

    #[test]
    fn triangle_records() {
        let t = MaterialTriangle::solve(0.8, 1.9, 1.1).unwrap();
        assert!(t.law_residual().abs() < 1e-12);
        let o = OneThirdIdealTriangle::from_horocycle(0.5, 0.2).unwrap();
        let grown = o.rescaled(0.9);
        assert!((one_third_side(grown.p, grown.b).unwrap() - o.a).abs() < 1e-12);
        let g = TwoThirdsIdealTriangle::solve(2.0, 3.0, 1.0).unwrap();
        let moved = g.rescaled(0.5, -1.0);
        assert!((two_thirds_g(moved.len_rho, moved.len_rho_prime, moved.alpha).unwrap() - moved.len_g).abs() < 1e-12);
    }

    proptest! {
        #[test]
        fn horoball_choice_invariance(p in 1e-3f64..10.0, b in -3.0f64..3.0, d in -5.0f64..5.0) {
            let base = one_third_side(p, b).unwrap();
            let moved = one_third_side(p * d.exp(), b - d).unwrap();
            prop_assert!((base - moved).abs() < 1e-12);
        }

        #[test]
        fn pythagoras_at_right_angle(b in 0.0f64..4.0, c in 0.0f64..4.0) {
            let a = side_from_cosines(b, c, FRAC_PI_2).unwrap();
            let rhs = b.cosh() * c.cosh();
            prop_assert!((a.cosh() - rhs).abs() < 1e-12 * rhs);
        }

        #[test]
        fn cosines_law_and_lower_bound(b in 0.0f64..5.0, c in 0.0f64..5.0, alpha in 0.0f64..PI) {
            let t = MaterialTriangle::solve(b, c, alpha).unwrap();
            prop_assert!(t.law_residual().abs() < 1e-11 * b.cosh() * c.cosh());
            prop_assert!(t.a >= (b - c).abs() - 1e-12);
        }

        #[test]
        fn one_third_monotone(p in 1e-3f64..10.0, b in -3.0f64..3.0, dp in 1e-3f64..1.0, db in 1e-3f64..1.0) {
            let a = one_third_side(p, b).unwrap();
            prop_assert!(one_third_side(p + dp, b).unwrap() > a);
            prop_assert!(one_third_side(p, b + db).unwrap() > a);
        }
    }
}
