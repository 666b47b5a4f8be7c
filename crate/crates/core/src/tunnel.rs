//! Certified bracket on the length of the unknotting tunnel of a long
//! Dehn filling, in terms of the shortest longitude on the maximal cusp.
//!
//! The constants of the bracket are not hard-coded: [`derive_chain`]
//! recomputes every intermediate bound from its formula. Each step keeps its
//! exact value and a decimal value rounded in the safe direction, and the
//! next step consumes the rounded one, so every printed constant is a
//! certified bound in its own right.

use std::f64::consts::{LN_2, PI};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::drilling::{
    core_length_bound, drilling_floor, h_and_p_bounds, tube_radius_lower, EPSILON, J_DEFAULT,
};
use crate::error::{domain, Result};
use crate::interval::{round_down, round_up, Interval};

/// Upper bound on the distance `x` between the maximal cusp and the ε-thin
/// horocusp, rounded up to three places.
pub const X_UPPER: f64 = 2.621;

/// Meridian length on the ε-thin torus assumed by the radius estimate.
pub const MERIDIAN_EPS_MIN: f64 = 10.0;

/// Meridian length on the maximal cusp required by the quantified estimate.
pub const MERIDIAN_MIN: f64 = 138.0;

fn ln4() -> f64 {
    2.0 * LN_2
}

/// `2·sinh(ε/2)`, the waist size of the ε-thin horocusp.
fn epsilon_waist() -> f64 {
    2.0 * (0.5 * EPSILON).sinh()
}

/// Sum of values that are already short decimals, snapped back to the
/// decimal grid so float noise does not move a later rounding step.
fn decimal_sum(terms: &[f64]) -> f64 {
    let s: f64 = terms.iter().sum();
    (s * 1e10).round() / 1e10
}

/// One step of the chain: the exact bound and its safe decimal rounding.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Step {
    pub exact: f64,
    pub stated: f64,
    pub places: i32,
}

impl Step {
    fn lower(exact: f64, places: i32) -> Self {
        Step {
            exact,
            stated: round_down(exact, places),
            places,
        }
    }

    fn upper(exact: f64, places: i32) -> Self {
        Step {
            exact,
            stated: round_up(exact, places),
            places,
        }
    }
}

/// Every intermediate constant of the quantified estimate.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ChainDerivation {
    pub j: f64,
    pub sigma_eps_lo: Step,
    pub sigma_eps_hi: Step,
    pub x_hi: Step,
    pub s_minus_x_lo: Step,
    pub s_minus_x_hi: Step,
    /// Lower bound on the tube radius when `ℓ(μ_ε) ≥ 10`.
    pub r_lo: Step,
    /// Half the horocyclic gap `p/2` at the drilling floor.
    pub half_gap: Step,
    /// The fellow-travel error `h` at the drilling floor.
    pub h: Step,
    /// Distance along the tube boundary from `σ̄` to `ρ`.
    pub rho_offset: Step,
    /// Lower bound on `ℓ(λ̄_ε)` from `ℓ(λ) ≥ 1`.
    pub lambda_bar_min: f64,
    /// `ℓ(C₂) / ℓ(λ̄_ε)` from below.
    pub arc_ratio: Step,
    /// `ℓ(C₂) / ℓ(λ_ε)` from below.
    pub arc_factor: Step,
    /// Log of the lower multiplicative factor on `α·sinh r`.
    pub arc_log_lo: Step,
    /// Log of the upper multiplicative factor on `α·sinh r`.
    pub arc_log_hi: Step,
    /// `ln(1 − e^{−2r})`, the cost of replacing `2·sinh r` by `e^r`.
    pub exp_sinh: Step,
    /// Constant in the lower bound on `r + s − ln ℓ(λ) − ln(2/α)`.
    pub rs_lo: f64,
    /// Constant in the upper bound on `r + s − ln ℓ(λ) − ln(2/α)`.
    pub rs_hi: f64,
    /// Constant in the lower bound on `ℓ(g_τ)/2 − ln ℓ(λ)`.
    pub half_lo: Step,
    /// Constant in the upper bound on `ℓ(g_τ)/2 − ln ℓ(λ)`.
    pub half_hi: Step,
    /// Final additive constants of the bracket on `ℓ(g_τ) − 2·ln ℓ(λ)`.
    pub g_lo: Step,
    pub g_hi: Step,
}

/// Decimal constants as they appear in the published chain.
pub const PRINTED: [(&str, f64); 16] = [
    ("sigma_eps_lo", 2.46),
    ("sigma_eps_hi", 3.86),
    ("x_hi", 2.621),
    ("s_minus_x_lo", -2.0),
    ("s_minus_x_hi", 2.02),
    ("r_lo", 1.16),
    ("half_gap", 0.02),
    ("h", 1.4e-6),
    ("rho_offset", 0.0063),
    ("arc_ratio", 0.8094),
    ("arc_factor", 0.7358),
    ("arc_log_lo", -0.31),
    ("arc_log_hi", 0.1),
    ("exp_sinh", -0.11),
    ("g_lo", -5.6),
    ("g_hi", 4.5),
];

impl ChainDerivation {
    pub fn step(&self, name: &str) -> Option<Step> {
        Some(match name {
            "sigma_eps_lo" => self.sigma_eps_lo,
            "sigma_eps_hi" => self.sigma_eps_hi,
            "x_hi" => self.x_hi,
            "s_minus_x_lo" => self.s_minus_x_lo,
            "s_minus_x_hi" => self.s_minus_x_hi,
            "r_lo" => self.r_lo,
            "half_gap" => self.half_gap,
            "h" => self.h,
            "rho_offset" => self.rho_offset,
            "arc_ratio" => self.arc_ratio,
            "arc_factor" => self.arc_factor,
            "arc_log_lo" => self.arc_log_lo,
            "arc_log_hi" => self.arc_log_hi,
            "exp_sinh" => self.exp_sinh,
            "half_lo" => self.half_lo,
            "half_hi" => self.half_hi,
            "g_lo" => self.g_lo,
            "g_hi" => self.g_hi,
            _ => return None,
        })
    }

    /// Steps whose rounded value differs from the published constant, as
    /// `(name, derived, printed)`.
    pub fn mismatches(&self) -> Vec<(&'static str, f64, f64)> {
        PRINTED
            .iter()
            .filter_map(|&(name, printed)| {
                let got = self.step(name).expect("every printed name is a step").stated;
                ((got - printed).abs() > 1e-12).then_some((name, got, printed))
            })
            .collect()
    }
}

fn check_j(j: f64) -> Result<()> {
    if !(j > 1.0 && j <= 1.1) {
        return Err(domain("bilipschitz constant J", j, "in (1, 1.1]"));
    }
    Ok(())
}

/// Universal bounds `(ℓ(σ_ε), ℓ(σ_max))` on the tunnel of the unfilled
/// manifold, measured outside the ε-thin and maximal cusps respectively.
pub fn sigma_bounds() -> (Interval, Interval) {
    let w = epsilon_waist();
    let sigma_eps = Interval::outward(-2.0 * w.ln(), ln4() - 2.0 * w.ln()).round_outward(2);
    let sigma_max = Interval::outward(-ln4(), ln4());
    (sigma_eps, sigma_max)
}

/// Bounds on the cusp depth `x` and on `s − x`, where `s` is the matching
/// depth in the filled manifold. Follows the displayed chain with the
/// factors `1 − 1/J` and `J − 1` (1/11 and 1/10 at `J = 1.1`).
pub fn x_and_s_bounds(sigma_eps: Interval, sigma_max: Interval, j: f64) -> Result<(Interval, Interval)> {
    check_j(j)?;
    let x_hi = (4.0 / epsilon_waist()).ln();
    let x = Interval::new(0.0, x_hi.next_up())?;
    let shrink = 1.0 - 1.0 / j;
    let grow = j - 1.0;
    let lo = -grow * x.hi() + sigma_max.lo() - shrink * sigma_eps.hi();
    let hi = shrink * x.hi() + sigma_max.hi() + grow * sigma_eps.hi();
    Ok((x, Interval::outward(lo, hi)))
}

/// `f(α) = 2(1 − cos α)/α²`, evaluated as `(sin(α/2)/(α/2))²`.
pub fn alpha_factor(alpha: f64) -> f64 {
    let half = 0.5 * alpha;
    if half == 0.0 {
        return 1.0;
    }
    let s = half.sin() / half;
    s * s
}

/// Range `[4/π², 1]` of [`alpha_factor`] over `α ∈ (0, π]`.
pub fn alpha_factor_interval() -> Interval {
    Interval::outward(4.0 / (PI * PI), 1.0)
}

/// Checks on a uniform grid of `n` points that [`alpha_factor`] is strictly
/// decreasing on `(0, π]`.
pub fn alpha_factor_decreasing_on_grid(n: usize) -> bool {
    let mut prev = alpha_factor(PI / n as f64);
    (2..=n).all(|i| {
        let cur = alpha_factor(PI * i as f64 / n as f64);
        let ok = cur < prev;
        prev = cur;
        ok
    })
}

/// Recomputes every constant of the quantified estimate at bilipschitz
/// constant `j`.
pub fn derive_chain(j: f64) -> Result<ChainDerivation> {
    check_j(j)?;
    let w = epsilon_waist();
    let sigma_eps_lo = Step::lower(-2.0 * w.ln(), 2);
    let sigma_eps_hi = Step::upper(ln4() - 2.0 * w.ln(), 2);
    let x_hi = Step::upper((4.0 / w).ln(), 3);

    // y obeys the same bound as x; t is J-related to y
    let shrink = 1.0 - 1.0 / j;
    let grow = j - 1.0;
    let s_minus_x_lo = Step::lower(-grow * x_hi.stated - ln4() - shrink * sigma_eps_hi.stated, 2);
    let s_minus_x_hi = Step::upper(shrink * x_hi.stated + ln4() + grow * sigma_eps_hi.stated, 2);

    let r_lo = Step::lower(tube_radius_lower(MERIDIAN_EPS_MIN, j)?, 2);

    let core = core_length_bound(drilling_floor())?;
    let (h_exact, p_exact) = h_and_p_bounds(core)?;
    let half_gap = Step::upper(0.5 * p_exact, 2);
    let h = Step::upper(h_exact, 7);

    let rho_offset = Step::upper(half_gap.stated * (-r_lo.stated).exp() + h.stated, 4);
    let c1 = decimal_sum(&[rho_offset.stated, rho_offset.stated]);
    let lambda_bar_min = (-x_hi.stated).exp() / j;
    let arc_ratio = Step::lower(1.0 - c1 / lambda_bar_min, 4);
    let arc_factor = Step::lower(arc_ratio.stated / j, 4);
    let arc_log_lo = Step::lower(arc_factor.stated.ln() - h.stated, 2);
    let arc_log_hi = Step::upper(j.ln() + h.stated, 2);
    let exp_sinh = Step::lower((1.0 - (-2.0 * r_lo.stated).exp()).ln(), 2);

    let rs_lo = decimal_sum(&[s_minus_x_lo.stated, arc_log_lo.stated]);
    let rs_hi = decimal_sum(&[s_minus_x_hi.stated, arc_log_hi.stated, -exp_sinh.stated]);

    // ℓ(g_τ)/2 = r + s + h + ½·ln((1 − cos α)/2), and with the ln(2/α) from
    // r this leaves ½·ln f(α) with f(α) in [4/π², 1]
    let half_lo = Step::lower(rs_lo + 0.5 * alpha_factor(PI).ln(), 4);
    let half_hi = Step::upper(rs_hi + h.stated, 3);
    let g_lo = Step::lower(2.0 * half_lo.exact, 1);
    let g_hi = Step::upper(2.0 * half_hi.stated, 1);

    Ok(ChainDerivation {
        j,
        sigma_eps_lo,
        sigma_eps_hi,
        x_hi,
        s_minus_x_lo,
        s_minus_x_hi,
        r_lo,
        half_gap,
        h,
        rho_offset,
        lambda_bar_min,
        arc_ratio,
        arc_factor,
        arc_log_lo,
        arc_log_hi,
        exp_sinh,
        rs_lo,
        rs_hi,
        half_lo,
        half_hi,
        g_lo,
        g_hi,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Mode {
    /// Bounds valid once the meridian is long enough for the drilling theorem.
    Quantified,
    /// Limiting bounds as the meridian length tends to infinity.
    Asymptotic,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct TunnelEstimate {
    pub ell_lambda_max: f64,
    pub mode: Mode,
    pub x: Interval,
    pub s_minus_x: Interval,
    pub sigma_eps: Interval,
    pub sigma_max: Interval,
    pub r_lower: f64,
    /// Bracket on the circle-arc length `α·sinh r`.
    pub alpha_sinh_r: Interval,
    /// Bracket on the tunnel geodesic length `ℓ(g_τ)`.
    pub g_tau: Interval,
}

/// Bracket on the length of the tunnel geodesic after filling, from the
/// length of the shortest longitude on the maximal cusp.
pub fn estimate_tunnel(ell_lambda_max: f64, mode: Mode) -> Result<TunnelEstimate> {
    estimate(ell_lambda_max, None, mode)
}

/// As [`estimate_tunnel`], with the tube-radius bound sharpened by the
/// meridian length on the maximal cusp, which must exceed 138.
pub fn estimate_tunnel_with_meridian(ell_lambda_max: f64, ell_mu_max: f64, mode: Mode) -> Result<TunnelEstimate> {
    if !(ell_mu_max > MERIDIAN_MIN) {
        return Err(domain("ℓ(μ) on the maximal cusp", ell_mu_max, "> 138"));
    }
    estimate(ell_lambda_max, Some(ell_mu_max), mode)
}

fn estimate(ell_lambda_max: f64, ell_mu_max: Option<f64>, mode: Mode) -> Result<TunnelEstimate> {
    if !(ell_lambda_max >= 1.0) || !ell_lambda_max.is_finite() {
        return Err(domain("ℓ(λ) on the maximal cusp", ell_lambda_max, ">= 1"));
    }
    let chain = derive_chain(J_DEFAULT)?;
    let (sigma_eps, sigma_max) = sigma_bounds();
    let (x, s_minus_x) = x_and_s_bounds(sigma_eps, sigma_max, J_DEFAULT)?;
    let r_lower = match ell_mu_max {
        Some(mu) => tube_radius_lower((-X_UPPER).exp() * mu, J_DEFAULT)?.max(chain.r_lo.stated),
        None => chain.r_lo.stated,
    };
    let two_ln = 2.0 * ell_lambda_max.ln();
    let depth = (-x.hi()).exp() * ell_lambda_max;
    let est = match mode {
        Mode::Quantified => TunnelEstimate {
            ell_lambda_max,
            mode,
            x,
            s_minus_x,
            sigma_eps,
            sigma_max,
            r_lower,
            alpha_sinh_r: Interval::outward(depth * chain.arc_log_lo.stated.exp(), ell_lambda_max * chain.arc_log_hi.stated.exp()),
            g_tau: Interval::outward(two_ln + chain.g_lo.stated, two_ln + chain.g_hi.stated),
        },
        Mode::Asymptotic => TunnelEstimate {
            ell_lambda_max,
            mode,
            x,
            s_minus_x: sigma_max,
            sigma_eps,
            sigma_max,
            r_lower,
            alpha_sinh_r: Interval::outward(depth, ell_lambda_max),
            g_tau: Interval::outward(two_ln - 2.0 * ln4() - 2.0 * (PI / 2.0).ln(), two_ln + 2.0 * ln4()),
        },
    };
    Ok(est)
}

/// Evaluates the quantified chain at random admissible point values and
/// returns how many of `trials` landed outside the bracket of
/// [`estimate_tunnel`].
///
/// A sample fixes the cusp depths `x, y`, the tunnel length `ℓ(σ_max)`, the
/// bilipschitz distortions of `σ_ε`, `y` and the arc, the angle `α`, the
/// error `h` and `ℓ(λ)`; `s`, `r` and `ℓ(g_τ)` then follow exactly.
pub fn chain_soundness_violations(trials: u64, seed: u64) -> Result<u64> {
    let chain = derive_chain(J_DEFAULT)?;
    let (sigma_eps, sigma_max) = sigma_bounds();
    let (_, s_minus_x) = x_and_s_bounds(sigma_eps, sigma_max, J_DEFAULT)?;
    let (jlo, jhi) = (1.0 / J_DEFAULT, J_DEFAULT);
    let h_max = chain.h.stated;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut violations = 0;
    let mut done = 0;
    while done < trials {
        let x = rng.random_range(0.0..=X_UPPER);
        let y = rng.random_range(0.0..=X_UPPER);
        let smax = rng.random_range(sigma_max.lo()..=sigma_max.hi());
        let seps = x + y + smax;
        if !sigma_eps.contains(seps) {
            continue;
        }
        let k_sigma = rng.random_range(jlo..=jhi);
        let k_y = rng.random_range(jlo..=jhi);
        let s = k_sigma * seps - k_y * y;

        let h = rng.random_range(0.0..=h_max);
        let c = rng.random_range(chain.arc_factor.stated * (-h).exp()..=J_DEFAULT * h.exp());
        let alpha = rng.random_range(1e-3..=PI);
        let ell = rng.random_range(0f64..12.0).exp();
        let r = (c * (-x).exp() * ell / alpha).asinh();
        if r < chain.r_lo.stated {
            continue;
        }
        done += 1;
        let g = 2.0 * (r + s + h) + ((1.0 - alpha.cos()) / 2.0).ln();
        let est = estimate_tunnel(ell, Mode::Quantified)?;
        if !s_minus_x.contains(s - x) || !est.g_tau.contains(g) {
            violations += 1;
        }
    }
    Ok(violations)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn chain() -> ChainDerivation {
        derive_chain(1.1).unwrap()
    }

    #[test]
    fn sigma_examples() {
        let (eps, max) = sigma_bounds();
        let w = 2.0 * 0.145f64.sinh();
        assert!((-2.0 * w.ln() - 2.4688).abs() < 1e-4);
        assert!((4f64.ln() - 2.0 * w.ln() - 3.8551).abs() < 1e-4);
        assert_eq!((eps.lo(), eps.hi()), (2.46, 3.86));
        assert!(max.contains(-4f64.ln()) && max.contains(4f64.ln()));
        assert!(max.width() < 2.0 * 4f64.ln() + 1e-12);
    }

    #[test]
    fn x_and_s_examples() {
        let (eps, max) = sigma_bounds();
        let (x, sx) = x_and_s_bounds(eps, max, 1.1).unwrap();
        assert_eq!(x.lo(), 0.0);
        assert!((x.hi() - 2.6206).abs() < 1e-4);
        assert!((sx.lo() + 1.9993).abs() < 1e-4);
        assert!((sx.hi() - 2.0105).abs() < 1e-4);
        let printed = Interval::new(-2.0, 2.02).unwrap();
        assert!(printed.contains_interval(&sx));
        assert!(x_and_s_bounds(eps, max, 1.2).is_err());
        assert!(x_and_s_bounds(eps, max, 1.0).is_err());
    }

    #[test]
    fn alpha_factor_examples() {
        let f = alpha_factor_interval();
        assert!((alpha_factor(PI) - 4.0 / (PI * PI)).abs() < 1e-15);
        assert!((4.0 / (PI * PI) - 0.4053).abs() < 1e-4);
        assert!((alpha_factor(1e-9) - 1.0).abs() < 1e-15);
        assert!((alpha_factor(PI / 2.0) - 8.0 / (PI * PI)).abs() < 1e-15);
        assert!(f.strictly_contains(alpha_factor(PI / 2.0)));
        assert!(f.contains(alpha_factor(PI)));
        assert!(alpha_factor_decreasing_on_grid(10_000));
    }

    #[test]
    fn chain_matches_printed_constants() {
        let c = chain();
        assert!(c.mismatches().is_empty(), "{:?}", c.mismatches());
        assert!((c.sigma_eps_lo.exact - 2.468).abs() < 1e-3);
        assert!((c.sigma_eps_hi.exact - 3.855).abs() < 1e-3);
        assert!((c.x_hi.exact - 2.6206).abs() < 1e-4);
        assert!((c.s_minus_x_lo.exact + 1.9993).abs() < 1e-4);
        assert!((c.s_minus_x_hi.exact - 2.0105).abs() < 1e-4);
        assert!((c.r_lo.exact - 1.1649).abs() < 1e-4);
        assert!((c.lambda_bar_min - 0.0661).abs() < 1e-4);
        assert_eq!(c.rs_lo, -2.31);
        assert_eq!(c.rs_hi, 2.23);
        assert!((c.half_lo.exact + 2.7615).abs() < 1e-4);
        assert_eq!(c.half_hi.stated, 2.231);
        assert!((2.0 * c.half_lo.exact + 5.523).abs() < 1e-3);
    }

    #[test]
    fn estimate_examples() {
        let e = estimate_tunnel(7.0, Mode::Quantified).unwrap();
        assert!((e.g_tau.lo() - (2.0 * 7f64.ln() - 5.6)).abs() < 1e-12);
        assert!((e.g_tau.hi() - (2.0 * 7f64.ln() + 4.5)).abs() < 1e-12);
        assert!((e.g_tau.lo() + 1.708).abs() < 1e-3);
        assert!((e.g_tau.hi() - 8.392).abs() < 1e-3);
        let e = estimate_tunnel(2.8f64.exp(), Mode::Quantified).unwrap();
        assert!(e.g_tau.lo().abs() < 1e-12);
        assert!((e.g_tau.hi() - 10.1).abs() < 1e-12);
        assert!(estimate_tunnel(0.5, Mode::Quantified).is_err());
        assert!(estimate_tunnel(f64::NAN, Mode::Asymptotic).is_err());
    }

    #[test]
    fn asymptotic_width() {
        let e = estimate_tunnel(30.0, Mode::Asymptotic).unwrap();
        let w = 2.0 * (2.0 * 4f64.ln() + (PI / 2.0).ln());
        assert!((e.g_tau.width() - w).abs() < 1e-12);
        assert!((w - 6.448).abs() < 1e-3);
        let q = estimate_tunnel(30.0, Mode::Quantified).unwrap();
        assert!(q.g_tau.contains_interval(&e.g_tau));
    }

    #[test]
    fn meridian_sharpens_radius() {
        let e = estimate_tunnel_with_meridian(10.0, 500.0, Mode::Quantified).unwrap();
        assert!(e.r_lower > 1.16);
        assert!(estimate_tunnel_with_meridian(10.0, 138.0, Mode::Quantified).is_err());
    }

    #[test]
    fn json_names_intermediates() {
        let v = serde_json::to_value(estimate_tunnel(7.0, Mode::Quantified).unwrap()).unwrap();
        for key in ["x", "s_minus_x", "sigma_eps", "sigma_max", "g_tau", "alpha_sinh_r"] {
            assert!(v[key].is_array(), "{key}");
        }
        assert_eq!(v["mode"], "QUANTIFIED");
    }

    #[test]
    fn pointwise_chain_is_sound() {
        assert_eq!(chain_soundness_violations(2_000, 1).unwrap(), 0);
    }

    proptest! {
        #[test]
        fn quantified_width_constant(l in 1f64..1e8) {
            let e = estimate_tunnel(l, Mode::Quantified).unwrap();
            prop_assert!((e.g_tau.width() - 10.1).abs() < 1e-9);
        }

        #[test]
        fn endpoints_increase(l in 1f64..1e8, dl in 1e-3f64..10.0) {
            for mode in [Mode::Quantified, Mode::Asymptotic] {
                let a = estimate_tunnel(l, mode).unwrap().g_tau;
                let b = estimate_tunnel(l + dl, mode).unwrap().g_tau;
                prop_assert!(b.lo() > a.lo() && b.hi() > a.hi());
            }
        }

        #[test]
        fn smaller_j_shrinks_s_minus_x(j in 1.0001f64..1.1) {
            let (eps, max) = sigma_bounds();
            let (_, at) = x_and_s_bounds(eps, max, j).unwrap();
            let (_, full) = x_and_s_bounds(eps, max, 1.1).unwrap();
            prop_assert!(full.contains_interval(&at));
            prop_assert!(at.contains_interval(&max));
        }
    }
}
