//! Upper half-plane model of H².
//!
//! Distances and horocycles here are computed directly from the model's
//! metric `|dz| / y`, with no use of the triangle identities in
//! [`crate::trig`]. That independence is what lets this module serve as the
//! reference the identities are checked against.

use num_complex::Complex64;

use crate::error::{domain, Result};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct HPoint {
    pub x: f64,
    pub y: f64,
}

impl HPoint {
    pub fn new(x: f64, y: f64) -> Result<Self> {
        if !(y > 0.0) || !x.is_finite() || !y.is_finite() {
            return Err(domain("half-plane height", y, "> 0 and finite"));
        }
        Ok(HPoint { x, y })
    }

    pub fn from_complex(z: Complex64) -> Result<Self> {
        HPoint::new(z.re, z.im)
    }

    pub fn to_complex(self) -> Complex64 {
        Complex64::new(self.x, self.y)
    }
}

/// A horocycle: either the horizontal line `y = height` (centered at ∞) or a
/// Euclidean circle tangent to the real axis at `base` with the given diameter.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Horocycle {
    AtInfinity { height: f64 },
    Based { base: f64, diameter: f64 },
}

impl Horocycle {
    pub fn at_infinity(height: f64) -> Result<Self> {
        if !(height > 0.0) {
            return Err(domain("horocycle height", height, "> 0"));
        }
        Ok(Horocycle::AtInfinity { height })
    }

    pub fn based(base: f64, diameter: f64) -> Result<Self> {
        if !(diameter > 0.0) {
            return Err(domain("horocycle diameter", diameter, "> 0"));
        }
        Ok(Horocycle::Based { base, diameter })
    }

    /// Signed distance from `z` to the horoball bounded by this horocycle;
    /// negative when `z` lies inside the horoball.
    pub fn signed_distance(&self, z: HPoint) -> f64 {
        match *self {
            Horocycle::AtInfinity { height } => distance_to_horocycle_at_infinity(z, height),
            Horocycle::Based { base, diameter } => {
                let dx = z.x - base;
                ((dx * dx + z.y * z.y) / (diameter * z.y)).ln()
            }
        }
    }

    /// Signed distance between the horoballs of two horocycles with distinct
    /// centers; negative when they overlap.
    pub fn distance_to(&self, other: &Horocycle) -> Result<f64> {
        match (*self, *other) {
            (Horocycle::Based { base: a, diameter: da }, Horocycle::Based { base: b, diameter: db }) => {
                if a == b {
                    return Err(domain("horocycle base separation", 0.0, "distinct centers"));
                }
                Ok(((a - b) * (a - b) / (da * db)).ln())
            }
            (Horocycle::AtInfinity { height }, Horocycle::Based { diameter, .. })
            | (Horocycle::Based { diameter, .. }, Horocycle::AtInfinity { height }) => {
                Ok((height / diameter).ln())
            }
            (Horocycle::AtInfinity { .. }, Horocycle::AtInfinity { .. }) => {
                Err(domain("horocycle base separation", 0.0, "distinct centers"))
            }
        }
    }
}

/// Hyperbolic distance, `acosh(1 + |z1 − z2|² / (2·y1·y2))`.
///
/// Evaluated as `2·asinh(|z1 − z2| / (2·√(y1·y2)))`, the same quantity
/// without cancellation for nearby points.
pub fn hp_distance(z1: HPoint, z2: HPoint) -> f64 {
    let dx = z1.x - z2.x;
    let dy = z1.y - z2.y;
    let chord = dx.hypot(dy);
    2.0 * (chord / (2.0 * (z1.y * z2.y).sqrt())).asinh()
}

/// Signed distance from `z` to the horocycle `y = y0`; positive when `z` lies
/// below it, outside the horoball.
pub fn distance_to_horocycle_at_infinity(z: HPoint, y0: f64) -> f64 {
    (y0 / z.y).ln()
}

/// Hyperbolic length of the horizontal segment from `x1` to `x2` at height `y0`.
pub fn horocyclic_segment_length(x1: f64, x2: f64, y0: f64) -> f64 {
    (x1 - x2).abs() / y0
}

/// Elliptic rotation of H² about `i` by angle `theta`.
pub fn rotate_about_i(z: Complex64, theta: f64) -> Complex64 {
    let (s, c) = (0.5 * theta).sin_cos();
    (z * c + s) / (-z * s + c)
}

/// Point at distance `r` from `i` along the geodesic ray leaving `i` at
/// angle `theta` from the upward vertical.
pub fn ray_point(theta: f64, r: f64) -> Complex64 {
    rotate_about_i(Complex64::new(0.0, r.exp()), theta)
}

/// Ideal endpoint on the real axis of the ray at angle `theta`; `None` for ∞.
pub fn ray_endpoint(theta: f64) -> Option<f64> {
    let (s, c) = (0.5 * theta).sin_cos();
    if s == 0.0 {
        None
    } else {
        Some(-c / s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn pt(x: f64, y: f64) -> HPoint {
        HPoint::new(x, y).unwrap()
    }

    #[test]
    fn distance_examples() {
        assert_eq!(hp_distance(pt(0.0, 1.0), pt(0.0, 1.0)), 0.0);
        assert!((hp_distance(pt(0.0, 1.0), pt(0.0, 2.0)) - 2f64.ln()).abs() < 1e-15);
        assert!((hp_distance(pt(0.0, 1.0), pt(1.0, 1.0)) - 1.5f64.acosh()).abs() < 1e-15);
        assert!((1.5f64.acosh() - 0.96242).abs() < 1e-5);
    }

    #[test]
    fn horocycle_at_infinity_examples() {
        assert_eq!(distance_to_horocycle_at_infinity(pt(0.0, 1.0), 1.0), 0.0);
        assert!((distance_to_horocycle_at_infinity(pt(0.0, 1.0), std::f64::consts::E) - 1.0).abs() < 1e-15);
        assert!((distance_to_horocycle_at_infinity(pt(5.0, 2.0), 1.0) + 2f64.ln()).abs() < 1e-15);
    }

    #[test]
    fn horocyclic_segment_examples() {
        assert_eq!(horocyclic_segment_length(3.0, 3.0, 2.0), 0.0);
        assert_eq!(horocyclic_segment_length(0.0, 1.0, 1.0), 1.0);
        let (p, b) = (0.7f64, 1.3f64);
        assert!((horocyclic_segment_length(0.0, p, b.exp()) - p * (-b).exp()).abs() < 1e-15);
    }

    #[test]
    fn rejects_lower_half_plane() {
        assert!(HPoint::new(0.0, 0.0).is_err());
        assert!(HPoint::new(0.0, -1.0).is_err());
        assert!(Horocycle::at_infinity(0.0).is_err());
        assert!(Horocycle::based(0.0, -1.0).is_err());
    }

    #[test]
    fn based_horocycle_passes_through_top() {
        let h = Horocycle::based(2.0, 3.0).unwrap();
        assert!(h.signed_distance(pt(2.0, 3.0)).abs() < 1e-15);
        // the top point is at distance ln(h/d) from the horocycle y = h
        let top = Horocycle::at_infinity(7.0).unwrap();
        assert!((top.distance_to(&h).unwrap() - (7.0f64 / 3.0).ln()).abs() < 1e-15);
    }

    #[test]
    fn rays_from_i() {
        for theta in [0.3, 1.0, 2.5, -1.2] {
            let r = 1.7;
            let z = HPoint::from_complex(ray_point(theta, r)).unwrap();
            assert!((hp_distance(pt(0.0, 1.0), z) - r).abs() < 1e-12);
        }
        assert_eq!(ray_endpoint(0.0), None);
        // rotation by π sends ∞ to 0
        assert!(ray_endpoint(std::f64::consts::PI).unwrap().abs() < 1e-15);
    }

    fn point() -> impl Strategy<Value = HPoint> {
        (-5.0f64..5.0, 0.05f64..5.0).prop_map(|(x, y)| HPoint { x, y })
    }

    proptest! {
        #[test]
        fn acosh_form_agrees(a in point(), b in point()) {
            let d = hp_distance(a, b);
            let classic = (1.0 + ((a.x - b.x).powi(2) + (a.y - b.y).powi(2)) / (2.0 * a.y * b.y)).acosh();
            prop_assert!((d - classic).abs() < 1e-7 * (1.0 + d));
            prop_assert!((d - hp_distance(b, a)).abs() < 1e-15);
        }

        #[test]
        fn triangle_inequality(a in point(), b in point(), c in point()) {
            prop_assert!(hp_distance(a, c) <= hp_distance(a, b) + hp_distance(b, c) + 1e-12);
        }

        #[test]
        fn isometry_invariance(a in point(), b in point(), t in -10.0f64..10.0, s in 0.1f64..10.0) {
            let d = hp_distance(a, b);
            let shifted = hp_distance(pt(a.x + t, a.y), pt(b.x + t, b.y));
            let dilated = hp_distance(pt(a.x * s, a.y * s), pt(b.x * s, b.y * s));
            prop_assert!((d - shifted).abs() < 1e-12);
            prop_assert!((d - dilated).abs() < 1e-12);
        }
    }
}
