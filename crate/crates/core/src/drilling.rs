//! Numeric conclusions and hypotheses of the drilling theorem and of the
//! genericity conditions built on it.
//!
//! Nothing here decides whether a manifold is hyperbolic or whether a
//! bilipschitz map exists; these functions evaluate the bounds and
//! threshold predicates that the geometric arguments feed on.

use std::f64::consts::PI;

use serde::Serialize;

use crate::error::{domain, Result};

/// Margulis number used throughout the length estimates.
pub const EPSILON: f64 = 0.29;
/// The slightly larger Margulis number available for every filling.
pub const EPSILON_CULLER_SHALEN: f64 = 0.292;
/// Bilipschitz constant used throughout the length estimates.
pub const J_DEFAULT: f64 = 1.1;

/// Lower bound on `ℓ(μ)` for the Heegaard-surface correspondence.
pub const HEEGAARD_MERIDIAN: f64 = 6.0 * PI;
/// Lower bound on `ℓ(λ)` for the Heegaard-surface correspondence.
pub const HEEGAARD_LONGITUDE: f64 = 6.0;
/// Lower bound on `ℓ(μ)` for the quantified tunnel-length estimate.
pub const LENGTH_THM_MERIDIAN: f64 = 138.0;
/// Lower bound on `ℓ(μ_i)` for building knots in S³ with long tunnels.
pub const S3_MERIDIAN: f64 = 152.0;
/// Absolute lower bound on `ℓ(λ_i)` in the same construction.
pub const S3_LONGITUDE: f64 = 7.0;

/// The smallest normalized length the drilling theorem can require, `4√2·π`.
pub fn drilling_floor() -> f64 {
    4.0 * std::f64::consts::SQRT_2 * PI
}

/// Upper bound `2π / (L² − 16π²)` on the length of the core geodesic of the
/// filling solid torus, for normalized meridian length `l_mu`.
///
/// Meaningful only once `l_mu` also clears the drilling threshold, which is
/// at least [`drilling_floor`]; see [`below_drilling_floor`].
pub fn core_length_bound(l_mu: f64) -> Result<f64> {
    let denom = l_mu * l_mu - 16.0 * PI * PI;
    if !(l_mu > 4.0 * PI) || !(denom > 0.0) {
        return Err(domain("normalized length L(μ)", l_mu, "> 4π"));
    }
    Ok(2.0 * PI / denom)
}

pub fn below_drilling_floor(l_mu: f64) -> bool {
    l_mu < drilling_floor()
}

/// Lower bound `asinh(ℓ(μ_ε) / (2Jπ))` on the radius of the ε-thin Margulis
/// tube about the core, from the length of the meridian on the ε-thin torus.
pub fn tube_radius_lower(ell_mu_eps: f64, j: f64) -> Result<f64> {
    if !(ell_mu_eps >= 0.0) {
        return Err(domain("ℓ(μ_ε)", ell_mu_eps, ">= 0"));
    }
    if !(j > 1.0) {
        return Err(domain("bilipschitz constant J", j, "> 1"));
    }
    Ok((ell_mu_eps / (2.0 * j * PI)).asinh())
}

/// `sinh(x) − x`, accurate for small `x`.
fn sinh_minus_x(x: f64) -> f64 {
    if x.abs() < 0.1 {
        let x2 = x * x;
        // x³/3! + x⁵/5! + x⁷/7! + x⁹/9! + x¹¹/11!
        x * x2 / 6.0 * (1.0 + x2 / 20.0 * (1.0 + x2 / 42.0 * (1.0 + x2 / 72.0 * (1.0 + x2 / 110.0))))
    } else {
        x.sinh() - x
    }
}

/// For a core geodesic of length at most `core_len`, returns `(h, p)`:
/// `p = 2·sinh(ℓ/2)` bounds the horocyclic distance between the lifted
/// endpoints, and `h = sinh(ℓ/2) − ℓ/2` bounds how far the lifted core
/// strays from that horocycle.
pub fn h_and_p_bounds(core_len: f64) -> Result<(f64, f64)> {
    if !(core_len >= 0.0) {
        return Err(domain("core length", core_len, ">= 0"));
    }
    let half = 0.5 * core_len;
    Ok((sinh_minus_x(half), 2.0 * half.sinh()))
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct DrillBounds {
    pub core_len_upper: f64,
    pub tube_radius_lower: f64,
    pub h_upper: f64,
    pub p_upper: f64,
}

pub fn drill_bounds(l_mu: f64, ell_mu_eps: f64, j: f64) -> Result<DrillBounds> {
    let core = core_length_bound(l_mu)?;
    let (h, p) = h_and_p_bounds(core)?;
    Ok(DrillBounds {
        core_len_upper: core,
        tube_radius_lower: tube_radius_lower(ell_mu_eps, j)?,
        h_upper: h,
        p_upper: p,
    })
}

/// Inputs to the genericity predicates for one filling slope.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct FillingParams {
    pub j: f64,
    pub epsilon: f64,
    /// Normalized length of the meridian.
    pub l_mu: f64,
    /// Meridian length on the ε-thin horospherical torus.
    pub ell_mu_eps: f64,
    /// Meridian length on the maximal cusp.
    pub ell_mu_max: f64,
    /// Shortest-longitude length on the maximal cusp.
    pub ell_lambda_max: f64,
}

impl FillingParams {
    /// Parameters at `J = 1.1`, `ε = 0.29`, with the ε-torus meridian length
    /// bounded below by `e^{−2.621}·ℓ(μ)` (the maximal cusp sits at most
    /// 2.621 above the ε-thin torus).
    pub fn from_max_cusp(ell_mu_max: f64, ell_lambda_max: f64, l_mu: f64) -> Self {
        FillingParams {
            j: J_DEFAULT,
            epsilon: EPSILON,
            l_mu,
            ell_mu_eps: (-crate::tunnel::X_UPPER).exp() * ell_mu_max,
            ell_mu_max,
            ell_lambda_max,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ReportOptions {
    /// Target tunnel length `L` in the S³ construction.
    pub target_length: f64,
    /// Drilling threshold `K(J, ε)`; defaults to the floor `4√2π`.
    pub drilling_threshold: f64,
}

impl Default for ReportOptions {
    fn default() -> Self {
        ReportOptions {
            target_length: 0.0,
            drilling_threshold: drilling_floor(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Clause {
    pub quantity: &'static str,
    pub value: f64,
    pub relation: &'static str,
    pub threshold: f64,
    pub pass: bool,
}

impl Clause {
    fn greater(quantity: &'static str, value: f64, threshold: f64) -> Self {
        Clause {
            quantity,
            value,
            relation: ">",
            threshold,
            pass: value > threshold,
        }
    }

    fn at_least(quantity: &'static str, value: f64, threshold: f64) -> Self {
        Clause {
            quantity,
            value,
            relation: ">=",
            threshold,
            pass: value >= threshold,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Condition {
    pub pass: bool,
    pub clauses: Vec<Clause>,
}

impl Condition {
    fn all(clauses: Vec<Clause>) -> Self {
        Condition {
            pass: clauses.iter().all(|c| c.pass),
            clauses,
        }
    }

    pub fn clause(&self, quantity: &str) -> Option<&Clause> {
        self.clauses.iter().find(|c| c.quantity == quantity)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GenericityReport {
    #[serde(rename = "HEEGAARD")]
    pub heegaard: Condition,
    #[serde(rename = "LENGTH_THM")]
    pub length_thm: Condition,
    #[serde(rename = "S3_CONSTRUCTION")]
    pub s3_construction: Condition,
    #[serde(rename = "DRILLING_FLOOR")]
    pub drilling_floor: Condition,
    /// Normalized length at least `J²` times the drilling threshold, so the
    /// theorem can be applied twice.
    #[serde(rename = "DRILLING_J2_HEADROOM")]
    pub drilling_headroom: Condition,
    pub params: FillingParams,
    pub options: ReportOptions,
    /// Drilling-theorem bounds, when `L(μ) > 4π`.
    pub bounds: Option<DrillBounds>,
}

pub fn genericity_report(params: &FillingParams, options: &ReportOptions) -> GenericityReport {
    let mu = params.ell_mu_max;
    let lambda = params.ell_lambda_max;
    let k = options.drilling_threshold;
    GenericityReport {
        heegaard: Condition::all(vec![
            Clause::greater("ell_mu", mu, HEEGAARD_MERIDIAN),
            Clause::greater("ell_lambda", lambda, HEEGAARD_LONGITUDE),
        ]),
        length_thm: Condition::all(vec![Clause::greater("ell_mu", mu, LENGTH_THM_MERIDIAN)]),
        s3_construction: Condition::all(vec![
            Clause::greater("ell_mu", mu, S3_MERIDIAN),
            Clause::greater("ell_lambda", lambda, S3_LONGITUDE),
            Clause::greater("ell_lambda_vs_target", lambda, (3.0 + options.target_length / 2.0).exp()),
        ]),
        drilling_floor: Condition::all(vec![Clause::at_least("L_mu", params.l_mu, k)]),
        drilling_headroom: Condition::all(vec![Clause::at_least("L_mu", params.l_mu, params.j * params.j * k)]),
        params: *params,
        options: *options,
        bounds: drill_bounds(params.l_mu, params.ell_mu_eps, params.j).ok(),
    }
}
