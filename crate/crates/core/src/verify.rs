//! Randomized comparison of the triangle identities in [`crate::trig`]
//! against explicit constructions in the half-plane model.

use std::f64::consts::{PI, TAU};

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::halfplane::{hp_distance, ray_endpoint, ray_point, rotate_about_i, HPoint, Horocycle};
use crate::trig::{one_third_side, two_thirds_g};

/// Truncation radius for the 2/3-ideal limit construction.
pub const LIMIT_RADIUS: f64 = 20.0;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct TrigVerification {
    pub trials: u64,
    pub seed: u64,
    /// max |one_third_side − half-plane distance|
    pub max_one_third: f64,
    /// max |two_thirds_g − (h(r) − 2r)| at r = LIMIT_RADIUS, ρ = ρ′ = 0
    pub max_two_thirds_limit: f64,
    /// max |two_thirds_g − horoball distance| for explicit ideal vertices
    pub max_two_thirds_horoball: f64,
}

fn log_uniform(rng: &mut ChaCha8Rng, lo: f64, hi: f64) -> f64 {
    (rng.random_range(lo.ln()..hi.ln())).exp()
}

/// Isometry of H² given by a rotation about `i`, then a dilation and a
/// horizontal translation.
#[derive(Clone, Copy)]
struct Isometry {
    theta: f64,
    scale: f64,
    shift: f64,
}

impl Isometry {
    fn apply(&self, z: Complex64) -> Complex64 {
        rotate_about_i(z, self.theta) * self.scale + self.shift
    }

    /// Image of the horocycle `y = height`.
    fn image_of_horizontal(&self, height: f64) -> Horocycle {
        let base = ray_endpoint(self.theta).expect("rotation angle kept away from 0") * self.scale + self.shift;
        let z = self.apply(Complex64::new(0.0, height));
        let diameter = (z - base).norm_sqr() / z.im;
        Horocycle::Based { base, diameter }
    }
}

/// One isosceles 1/3-ideal triangle: material vertices `(t, y1)` and
/// `(t + w, y1)`, ideal vertex at ∞ truncated by `y = y0`, then moved by a
/// random isometry. Returns `|formula − oracle|`.
fn one_third_trial(rng: &mut ChaCha8Rng) -> f64 {
    let t = rng.random_range(-3.0..3.0);
    let y1 = log_uniform(rng, 0.1, 10.0);
    let w = y1 * log_uniform(rng, 1e-3, 100.0);
    let y0 = log_uniform(rng, 0.01, 100.0);

    let p = (w / y0).abs();
    let iso = Isometry {
        theta: rng.random_range(0.3..TAU - 0.3),
        scale: log_uniform(rng, 0.2, 5.0),
        shift: rng.random_range(-5.0..5.0),
    };
    let v = HPoint::from_complex(iso.apply(Complex64::new(t, y1))).expect("isometries preserve H²");
    let v2 = HPoint::from_complex(iso.apply(Complex64::new(t + w, y1))).expect("isometries preserve H²");
    let horo = iso.image_of_horizontal(y0);

    let b = horo.signed_distance(v);
    let oracle = hp_distance(v, v2);
    let formula = one_third_side(p, b).expect("p > 0");
    (formula - oracle).abs()
}

/// Limit construction: points at distance `r` from the material vertex `i`
/// along rays meeting at angle `alpha`; `h(r) − 2r` approximates the 2/3-ideal
/// side measured against horoballs through the truncation points.
fn two_thirds_limit_trial(rng: &mut ChaCha8Rng, r: f64) -> f64 {
    let alpha = rng.random_range(0.05..=PI);
    let center = rng.random_range(0.0..TAU);
    let w = HPoint::from_complex(ray_point(center - alpha / 2.0, r)).expect("ray stays in H²");
    let w2 = HPoint::from_complex(ray_point(center + alpha / 2.0, r)).expect("ray stays in H²");
    let limit = hp_distance(w, w2) - 2.0 * r;
    (two_thirds_g(0.0, 0.0, alpha).expect("alpha in (0, π]") - limit).abs()
}

/// Exact 2/3-ideal triangle with material vertex `i` and ideal vertices at
/// the endpoints of two rays, truncated by horoballs of random size.
fn two_thirds_horoball_trial(rng: &mut ChaCha8Rng) -> f64 {
    let alpha = rng.random_range(0.05..=PI);
    // keep both rays away from the one ending at ∞
    let first = rng.random_range(0.3..TAU - 0.3 - alpha);
    let (t1, t2) = (first, first + alpha);
    let xi1 = ray_endpoint(t1).expect("ray away from ∞");
    let xi2 = ray_endpoint(t2).expect("ray away from ∞");
    let h1 = Horocycle::Based {
        base: xi1,
        diameter: log_uniform(rng, 1e-2, 10.0),
    };
    let h2 = Horocycle::Based {
        base: xi2,
        diameter: log_uniform(rng, 1e-2, 10.0),
    };
    let v = HPoint { x: 0.0, y: 1.0 };
    let rho = h1.signed_distance(v);
    let rho2 = h2.signed_distance(v);
    let g = h1.distance_to(&h2).expect("distinct ideal vertices");
    (two_thirds_g(rho, rho2, alpha).expect("alpha in (0, π]") - g).abs()
}

/// Runs `trials` random configurations of each kind.
pub fn verify_trig(trials: u64, seed: u64) -> TrigVerification {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = TrigVerification {
        trials,
        seed,
        max_one_third: 0.0,
        max_two_thirds_limit: 0.0,
        max_two_thirds_horoball: 0.0,
    };
    for _ in 0..trials {
        out.max_one_third = out.max_one_third.max(one_third_trial(&mut rng));
        out.max_two_thirds_limit = out.max_two_thirds_limit.max(two_thirds_limit_trial(&mut rng, LIMIT_RADIUS));
        out.max_two_thirds_horoball = out.max_two_thirds_horoball.max(two_thirds_horoball_trial(&mut rng));
    }
    out
}
