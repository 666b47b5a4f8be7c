//! Fibonacci filling slopes on the two cusps of the census manifold v3227,
//! and the tunnel-length bracket of the knots they produce.
//!
//! On cusp `i` with translations `(α_i, β_i)`, the `n`-th slopes are
//! `μ_0^n = f_n·α_0 + f_{n+1}·β_0` and `μ_1^n = f_{n−1}·α_1 + f_n·β_1`.

use std::io::Write;

use num_bigint::{BigInt, BigUint};
use num_complex::Complex64;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::cusp::CuspShape;
use crate::drilling::{genericity_report, FillingParams, GenericityReport, ReportOptions, J_DEFAULT};
use crate::error::{domain, Error, Result};
use crate::interval::Interval;
use crate::slope::{intersection_number, Slope};
use crate::tunnel::{estimate_tunnel, Mode};

/// The golden ratio.
pub const PHI: f64 = 1.618_033_988_749_895;

/// Length bracket `(4.3·φ^n, 4.7·φ^n)` for both cusps.
pub const LENGTH_LO: f64 = 4.3;
pub const LENGTH_HI: f64 = 4.7;

/// Published bracket constants around `2n·ln φ`.
pub const BRACKET_LO: f64 = -4.8;
pub const BRACKET_HI: f64 = 5.9;

/// Smallest index for which the length bracket is claimed.
pub const MIN_N: u64 = 5;
/// Above this index lengths come from the dominant eigen-term.
pub const DIRECT_MAX_N: u64 = 70;
/// Largest index whose lengths fit comfortably in a double.
pub const MAX_N: u64 = 1400;

/// `f_n` by fast doubling: `f_{2k} = f_k(2f_{k+1} − f_k)`,
/// `f_{2k+1} = f_k² + f_{k+1}²`.
pub fn fibonacci(n: u64) -> BigUint {
    fn pair(n: u64) -> (BigUint, BigUint) {
        if n == 0 {
            return (BigUint::zero(), BigUint::one());
        }
        let (a, b) = pair(n / 2);
        let c = &a * (&b + &b - &a);
        let d = &a * &a + &b * &b;
        if n % 2 == 0 {
            (c, d)
        } else {
            let next = &c + &d;
            (d, next)
        }
    }
    pair(n).0
}

fn fib_int(n: u64) -> BigInt {
    BigInt::from(fibonacci(n))
}

/// The pair of filling slopes at index `n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FibonacciSlopePair {
    pub n: u64,
    pub mu0: Slope,
    pub mu1: Slope,
}

impl FibonacciSlopePair {
    pub fn new(n: u64) -> Result<Self> {
        if n < 1 {
            return Err(Error::IndexRange {
                n,
                expected: ">= 1",
            });
        }
        let consecutive = |k: u64| Slope::new(fib_int(k), fib_int(k + 1)).expect("consecutive Fibonacci numbers are coprime");
        Ok(FibonacciSlopePair {
            n,
            mu0: consecutive(n),
            mu1: consecutive(n - 1),
        })
    }

    pub fn intersection(&self) -> BigUint {
        intersection_number(&self.mu0, &self.mu1)
    }
}

fn check_family_index(n: u64) -> Result<()> {
    if n < MIN_N {
        return Err(Error::IndexRange { n, expected: ">= 5" });
    }
    if n > MAX_N {
        return Err(Error::IndexRange {
            n,
            expected: "<= 1400",
        });
    }
    Ok(())
}

fn shapes() -> [CuspShape; 2] {
    [CuspShape::v3227_t0(), CuspShape::v3227_t1()]
}

/// Length of `f_m·t_α + f_{m+1}·t_β` from the eigen-decomposition, with a
/// bound on the relative size of the discarded term.
///
/// The dominant term is `(φ^m/√5)(t_α + φ·t_β)`; the remainder is
/// `((−φ)^{−(m+1)}/√5)(φ·t_α − t_β)`.
pub fn dominant_length(shape: &CuspShape, m: u64) -> (f64, f64) {
    let (ta, tb) = (shape.t_alpha(), shape.t_beta());
    let sqrt5 = 5f64.sqrt();
    let lead = (ta + tb * PHI) * (PHI.powi(m as i32) / sqrt5);
    let tail_scale = PHI.powi(-(m as i32 + 1)) / sqrt5;
    let sign = if (m + 1) % 2 == 0 { 1.0 } else { -1.0 };
    let tail: Complex64 = (ta * PHI - tb) * (sign * tail_scale);
    let len = (lead + tail).norm();
    (len, tail.norm() / lead.norm())
}

/// Lengths of `μ_0^n` and `μ_1^n` on the maximal cusps, with the check
/// that both lie strictly inside `(4.3·φ^n, 4.7·φ^n)` after widening by the
/// error radius of the cusp data.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FamilyLengths {
    pub n: u64,
    pub ell_mu0: f64,
    pub ell_mu1: f64,
    pub bounds_mu0: Interval,
    pub bounds_mu1: Interval,
    pub bound_ok: bool,
}

/// Length of `s = f_m·α + f_{m+1}·β` and its widened bounds; the
/// eigen-term is used once the family index `n` exceeds [`DIRECT_MAX_N`].
fn widened_length(shape: &CuspShape, s: &Slope, m: u64, n: u64) -> (f64, Interval) {
    let direct = shape.slope_length_bounds(s);
    if n <= DIRECT_MAX_N {
        return (shape.slope_length(s), direct);
    }
    let (len, tail) = dominant_length(shape, m);
    let radius = 0.5 * direct.width() + len * tail;
    (len, Interval::outward(len - radius, len + radius))
}

pub fn family_lengths(n: u64) -> Result<FamilyLengths> {
    check_family_index(n)?;
    let pair = FibonacciSlopePair::new(n)?;
    let [c0, c1] = shapes();
    let (ell_mu0, bounds_mu0) = widened_length(&c0, &pair.mu0, n, n);
    let (ell_mu1, bounds_mu1) = widened_length(&c1, &pair.mu1, n - 1, n);
    let scale = PHI.powi(n as i32);
    let bracket = Interval::new(LENGTH_LO * scale, LENGTH_HI * scale)?;
    let inside = |b: &Interval| bracket.lo() < b.lo() && b.hi() < bracket.hi();
    Ok(FamilyLengths {
        n,
        ell_mu0,
        ell_mu1,
        bounds_mu0,
        bounds_mu1,
        bound_ok: inside(&bounds_mu0) && inside(&bounds_mu1),
    })
}

/// Shortest longitudes of `μ_0^n` and `μ_1^n`, as found by the search on
/// each cusp. The expected answer is `μ_i^{n−2}`; see
/// [`longitudes_are_two_back`].
pub fn family_longitudes(n: u64) -> Result<(Slope, Slope)> {
    check_family_index(n)?;
    let pair = FibonacciSlopePair::new(n)?;
    let [c0, c1] = shapes();
    Ok((c0.shortest_longitude(&pair.mu0), c1.shortest_longitude(&pair.mu1)))
}

pub fn longitudes_are_two_back(n: u64, longitudes: &(Slope, Slope)) -> Result<bool> {
    let back = FibonacciSlopePair::new(n - 2)?;
    Ok(longitudes.0 == back.mu0 && longitudes.1 == back.mu1)
}

/// The matrix `[[f_{n−1}, (−1)^n f_n], [f_n, (−1)^n f_{n+1}]]`. Its columns
/// are `μ_1^n` and `±μ_0^n`, so its inverse sends the two filling slopes to
/// the coordinate slopes `1/0` and `0/1`.
pub fn s3_embedding_matrix(n: u64) -> Result<[[BigInt; 2]; 2]> {
    if n < 1 {
        return Err(Error::IndexRange {
            n,
            expected: ">= 1",
        });
    }
    let sign = if n % 2 == 0 { BigInt::one() } else { -BigInt::one() };
    Ok([
        [fib_int(n - 1), &sign * fib_int(n)],
        [fib_int(n), &sign * fib_int(n + 1)],
    ])
}

pub fn det2(m: &[[BigInt; 2]; 2]) -> BigInt {
    &m[0][0] * &m[1][1] - &m[0][1] * &m[1][0]
}

/// Bracket on the lengths of both unknotting tunnels of the `n`-th knot.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TunnelBracket {
    pub n: u64,
    /// `[2n·ln φ − 4.8, 2n·ln φ + 5.9]`.
    pub interval: Interval,
    /// Lower constant recomputed through the tunnel estimate.
    pub derived_lo: f64,
    /// Upper constant recomputed through the tunnel estimate.
    pub derived_hi: f64,
    /// Meridians longer than 152, longitudes longer than 7, and meeting once.
    pub certified: bool,
    /// The drilling hypothesis is only checked against its floor `4√2π`
    /// (with `J²` headroom); the true threshold is not explicit.
    pub drilling_floor_only: bool,
    pub reports: [GenericityReport; 2],
}

/// Published bracket constants recomputed from the longitude bounds
/// `4.3/J·φ^{n−2} < ℓ(λ) < 4.7·J·φ^{n−2}` in the once-filled manifold.
pub fn derived_bracket_constants() -> Result<(f64, f64)> {
    // constants do not depend on n; evaluate at n = 2 where φ^{n−2} = 1
    let lo = estimate_tunnel(LENGTH_LO / J_DEFAULT, Mode::Quantified)?.g_tau.lo();
    let hi = estimate_tunnel(LENGTH_HI * J_DEFAULT, Mode::Quantified)?.g_tau.hi();
    let shift = 4.0 * PHI.ln();
    Ok((lo - shift, hi - shift))
}

pub fn tunnel_bracket(n: u64) -> Result<TunnelBracket> {
    check_family_index(n)?;
    let (derived_lo, derived_hi) = derived_bracket_constants()?;
    if derived_lo < BRACKET_LO || derived_hi > BRACKET_HI {
        return Err(domain("derived bracket constant", derived_lo.min(-derived_hi), "inside [-4.8, 5.9]"));
    }
    let pair = FibonacciSlopePair::new(n)?;
    let back = FibonacciSlopePair::new(n - 2)?;
    let lengths = family_lengths(n)?;
    let [c0, c1] = shapes();
    let report = |c: &CuspShape, mu: &Slope, lambda: &Slope, mu_bounds: &Interval, m: u64| {
        let (_, lambda_bounds) = widened_length(c, lambda, m, n);
        let params = FillingParams::from_max_cusp(mu_bounds.lo(), lambda_bounds.lo(), c.normalized_length(mu));
        genericity_report(&params, &ReportOptions::default())
    };
    let reports = [
        report(&c0, &pair.mu0, &back.mu0, &lengths.bounds_mu0, n - 2),
        report(&c1, &pair.mu1, &back.mu1, &lengths.bounds_mu1, n - 3),
    ];
    let clause = |r: &GenericityReport, q: &str| r.s3_construction.clause(q).is_some_and(|c| c.pass);
    let certified = pair.intersection().is_one()
        && reports.iter().all(|r| clause(r, "ell_mu") && clause(r, "ell_lambda"));
    let two_n_ln_phi = 2.0 * n as f64 * PHI.ln();
    Ok(TunnelBracket {
        n,
        interval: Interval::new(two_n_ln_phi + BRACKET_LO, two_n_ln_phi + BRACKET_HI)?,
        derived_lo,
        derived_hi,
        certified,
        drilling_floor_only: reports.iter().all(|r| r.drilling_headroom.pass),
        reports,
    })
}

/// One row of the family table.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FamilyReport {
    pub n: u64,
    pub ell_mu0: f64,
    pub ell_mu1: f64,
    pub longitude0: Slope,
    pub longitude1: Slope,
    pub bound_ok: bool,
    pub longitudes_ok: bool,
    pub tunnel_interval: Interval,
    pub certified: bool,
    pub drilling_floor_only: bool,
}

pub fn family_report(n: u64) -> Result<FamilyReport> {
    let lengths = family_lengths(n)?;
    let longitudes = family_longitudes(n)?;
    let bracket = tunnel_bracket(n)?;
    Ok(FamilyReport {
        n,
        ell_mu0: lengths.ell_mu0,
        ell_mu1: lengths.ell_mu1,
        longitudes_ok: longitudes_are_two_back(n, &longitudes)?,
        longitude0: longitudes.0,
        longitude1: longitudes.1,
        bound_ok: lengths.bound_ok,
        tunnel_interval: bracket.interval,
        certified: bracket.certified,
        drilling_floor_only: bracket.drilling_floor_only,
    })
}

pub fn family_table(n_from: u64, n_to: u64) -> Result<Vec<FamilyReport>> {
    if n_from > n_to {
        return Err(domain("n range", n_from as f64, "n_from <= n_to"));
    }
    (n_from..=n_to).map(family_report).collect()
}

pub const CSV_HEADER: [&str; 8] = ["n", "ell_mu0", "ell_mu1", "lambda0", "lambda1", "lo", "hi", "certified"];

/// Writes `rows` as CSV with the fixed header, formatting reals with `fmt`.
pub fn write_csv<W: Write>(rows: &[FamilyReport], out: W, fmt: impl Fn(f64) -> String) -> Result<()> {
    let io = |e: csv::Error| Error::Output(e.to_string());
    let mut w = csv::Writer::from_writer(out);
    w.write_record(CSV_HEADER).map_err(io)?;
    for r in rows {
        w.write_record([
            r.n.to_string(),
            fmt(r.ell_mu0),
            fmt(r.ell_mu1),
            r.longitude0.to_string(),
            r.longitude1.to_string(),
            fmt(r.tunnel_interval.lo()),
            fmt(r.tunnel_interval.hi()),
            r.certified.to_string(),
        ])
        .map_err(io)?;
    }
    w.flush().map_err(|e| Error::Output(e.to_string()))?;
    Ok(())
}

/// Relative deviation of `ℓ(μ_0^n)/ℓ(μ_0^{n−1})` from φ.
pub fn growth_ratio_error(n: u64) -> Result<f64> {
    let a = family_lengths(n)?.ell_mu0;
    let b = family_lengths(n - 1)?.ell_mu0;
    Ok(((a / b) - PHI).abs() / PHI)
}
