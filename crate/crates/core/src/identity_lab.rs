//! Brute-force numerical verification of every finite identity and
//! transform convention the moment pipeline relies on: character
//! orthogonality, the two closed-form family averages, Gauss-sum
//! multiplicativity, the Bessel-kernel summation formula for additively
//! twisted coefficient sums, a Poisson-summation sanity harness for the
//! Fourier conventions, and the square-root-cancellation gate on twisted
//! partial sums.
//!
//! Each check is a standalone function returning a [`VerificationReport`]
//! value; checks share no state and may run concurrently. Tolerances are
//! split by error source: identities that are algebraically exact are held
//! to 1e-9 (1e-10 for plain root-of-unity sums), while the two checks
//! mediated by contour quadrature (the summation formula and the Gaussian
//! transform harness) get budgets matching their measured discretization
//! error. A failure therefore indicates a bug, not loose numerics.
//!
//! Convention lock: `e(x) = exp(2πi x)` (see [`crate::numerics::e`]) is the
//! additive character used everywhere — by the twisted sums here, by the
//! Gauss sums, and by the Fourier transform in the Poisson harness. The
//! harness checks it against the analytically known Gaussian transform, so
//! a sign or normalization drift anywhere in the chain turns a report red.

use crate::arith::{gcd, mod_inverse};
use crate::characters::{
    enumerate_characters, family_b_direct_with, family_b_formula, family_d_direct_with,
    family_d_formula, family_gauss_sums, gauss_multiplicativity_check, Modulus,
};
use crate::coefficients::HeckeCoefficients;
use crate::hurwitz::riemann_zeta;
use crate::numerics::{c_exp, e, KahanComplex, KahanSum, EULER_GAMMA};
use crate::special_functions::{
    mellin, mellin_log_weighted, BumpFunction, ContourPlan, VoronoiLine,
};
use crate::{Complex64, Error, Result};
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::f64::consts::PI;
// Provides f64 math methods for builds whose dependency graph omits std;
// when some build has std linked (e.g. through dev-dependencies), std's
// inherent methods shadow the trait and the import sits idle.
#[allow(unused_imports)]
use num_traits::Float;

/// Default bar for plain root-of-unity sums (orthogonality).
pub const TOLERANCE_ORTHOGONALITY: f64 = 1e-10;
/// Default bar for the algebraically exact family identities.
pub const TOLERANCE_EXACT: f64 = 1e-9;
/// Default bar for the quadrature-mediated summation-formula check.
pub const TOLERANCE_QUADRATURE: f64 = 1e-4;
/// Default bar for the Poisson harness (analytically exact; the quadrature
/// it certifies is spectrally accurate at the default plan).
pub const TOLERANCE_POISSON: f64 = 1e-10;
/// Growth gate for twisted partial sums: every normalized sup beyond the
/// first length must stay within this factor of the first.
pub const EXP_SUM_GROWTH_GATE: f64 = 1.5;
/// Dual-sum terms below this size (in a trailing window) end the sum.
pub const DUAL_SUM_FLOOR: f64 = 1e-10;
/// Hard cap on dual-sum length; reaching it is reported as an error. The
/// dual length scales like `c²/N` times the transform's decay horizon
/// (measured: ≈ 5·10⁴ terms at `c = 7`, `N = 10`).
pub const DUAL_SUM_CAP: u64 = 400_000;
/// Consecutive sub-floor terms required before the dual sum stops, guarding
/// against the sign oscillation of the kernel transform.
const DUAL_SUM_QUIET_RUN: usize = 8;

/// The two-prime moduli exercised by the default verification suite, in
/// increasing order: all products of two distinct odd primes that the
/// standard regression ladder uses.
pub const STANDARD_SEMIPRIMES: [u64; 8] = [15, 21, 33, 35, 55, 77, 143, 221];

/// Outcome of one verification sweep.
///
/// `passed` is exactly `max_abs_deviation <= tolerance`; `worst_case` is a
/// human-readable description of the parameters that attained the maximum.
#[derive(Debug, Clone, PartialEq)]
pub struct VerificationReport {
    pub name: String,
    pub cases_run: usize,
    pub max_abs_deviation: f64,
    pub tolerance: f64,
    pub passed: bool,
    pub worst_case: String,
}

impl VerificationReport {
    pub fn new(
        name: &str,
        cases_run: usize,
        max_abs_deviation: f64,
        tolerance: f64,
        worst_case: String,
    ) -> Self {
        Self {
            name: String::from(name),
            cases_run,
            max_abs_deviation,
            tolerance,
            passed: max_abs_deviation <= tolerance,
            worst_case,
        }
    }
}

/// Running maximum over verification cases, with a lazily built label for
/// the current worst offender.
struct WorstCase {
    cases: usize,
    dev: f64,
    label: String,
}

impl WorstCase {
    fn new() -> Self {
        Self {
            cases: 0,
            dev: 0.0,
            label: String::new(),
        }
    }

    fn record(&mut self, count: usize, dev: f64, label: impl FnOnce() -> String) {
        let first = self.cases == 0;
        self.cases += count;
        if first || dev > self.dev {
            self.dev = dev;
            self.label = label();
        }
    }

    fn into_report(self, name: &str, tolerance: f64) -> VerificationReport {
        VerificationReport::new(name, self.cases, self.dev, tolerance, self.label)
    }
}

fn require_tolerance(tolerance: f64) -> Result<()> {
    if !(tolerance > 0.0) || !tolerance.is_finite() {
        return Err(Error::DomainError("tolerance must be a positive number"));
    }
    Ok(())
}

fn require_moduli(moduli: &[u64]) -> Result<()> {
    if moduli.is_empty() {
        return Err(Error::DomainError("at least one modulus is required"));
    }
    Ok(())
}

/// Second orthogonality relation of the full character group mod `q`:
/// for units `a`, `b`,
///
/// `Σ_{χ mod q} χ(a)·χ̄(b) = φ(q)·1_{a ≡ b (mod q)}`,
///
/// checked exhaustively over all unit pairs of every listed modulus.
pub fn verify_orthogonality(moduli: &[u64], tolerance: f64) -> Result<VerificationReport> {
    require_moduli(moduli)?;
    require_tolerance(tolerance)?;
    let mut worst = WorstCase::new();
    for &q in moduli {
        let m = Modulus::new(q)?;
        let family = enumerate_characters(&m);
        let phi = m.phi() as f64;
        for a in 1..q {
            if gcd(a, q) != 1 {
                continue;
            }
            for b in 1..q {
                if gcd(b, q) != 1 {
                    continue;
                }
                let mut acc = KahanComplex::new();
                for chi in &family {
                    acc.add(chi.value(a) * chi.value(b).conj());
                }
                let expected = if a == b { phi } else { 0.0 };
                let dev = (acc.value() - expected).norm();
                worst.record(1, dev, || format!("q={q}, a={a}, b={b}"));
            }
        }
    }
    Ok(worst.into_report("orthogonality", tolerance))
}

/// Shared sweep for the two even-primitive family averages: brute-force
/// character sum against the two-prime closed form, exhaustively over
/// arguments `a, b ≤ ab_limit` coprime to each modulus.
fn verify_family_identity(
    name: &str,
    moduli: &[u64],
    ab_limit: u64,
    tolerance: f64,
    gauss_weighted: bool,
) -> Result<VerificationReport> {
    require_moduli(moduli)?;
    require_tolerance(tolerance)?;
    if ab_limit == 0 {
        return Err(Error::NonPositiveArgument("ab_limit"));
    }
    let mut worst = WorstCase::new();
    for &q in moduli {
        let m = Modulus::new(q)?;
        m.prime_pair()?;
        let family = enumerate_characters(&m);
        let taus = if gauss_weighted {
            family_gauss_sums(&family)
        } else {
            Vec::new()
        };
        for a in 1..=ab_limit {
            if gcd(a, q) != 1 {
                continue;
            }
            for b in 1..=ab_limit {
                if gcd(b, q) != 1 {
                    continue;
                }
                let (direct, closed) = if gauss_weighted {
                    (
                        family_d_direct_with(&family, &taus, a, b),
                        family_d_formula(&m, a, b)?,
                    )
                } else {
                    (
                        family_b_direct_with(&family, a, b),
                        family_b_formula(&m, a, b)?,
                    )
                };
                let dev = (direct - closed).norm();
                worst.record(1, dev, || format!("q={q}, a={a}, b={b}"));
            }
        }
    }
    Ok(worst.into_report(name, tolerance))
}

/// Plain family average `Σ χ̄(a)χ(b)` over even primitive characters:
/// brute-force sum versus the two-prime closed form
/// `(1/2)Σ_± Π_i [φ(q_i)·1_{b ≡ ±a (q_i)} − 1]`.
pub fn verify_b_identity(
    moduli: &[u64],
    ab_limit: u64,
    tolerance: f64,
) -> Result<VerificationReport> {
    verify_family_identity("b_identity", moduli, ab_limit, tolerance, false)
}

/// Gauss-sum-weighted family average `Σ χ(a)χ̄(b)τ(χ)` over even primitive
/// characters: brute-force sum versus the closed form
/// `(1/2)Σ_± Π_i [φ(q_i)·e(±ā_i q̄_j b / q_i) + 1]`.
pub fn verify_d_identity(
    moduli: &[u64],
    ab_limit: u64,
    tolerance: f64,
) -> Result<VerificationReport> {
    verify_family_identity("d_identity", moduli, ab_limit, tolerance, true)
}

/// Gauss-sum factorization over two-prime moduli:
/// `τ(χ₁χ₂) = χ₁(q₂)·χ₂(q₁)·τ(χ₁)·τ(χ₂)` for every pair of primitive
/// components, plus the modulus spot check `|τ(χ)| = √q` for every
/// primitive character of the composite modulus.
pub fn verify_gauss_mult(moduli: &[u64], tolerance: f64) -> Result<VerificationReport> {
    require_moduli(moduli)?;
    require_tolerance(tolerance)?;
    let mut worst = WorstCase::new();
    for &q in moduli {
        let m = Modulus::new(q)?;
        let report = gauss_multiplicativity_check(&m)?;
        worst.record(report.pairs_checked, report.max_abs_deviation, || {
            format!("q={q}, pair {}", report.worst_pair)
        });
        let family = enumerate_characters(&m);
        let taus = family_gauss_sums(&family);
        let root_q = (q as f64).sqrt();
        for chi in family.iter().filter(|c| c.is_primitive()) {
            let dev = (taus[chi.chi_id()].norm() - root_q).abs();
            worst.record(1, dev, || {
                format!("q={q}, |tau| of chi_id={}", chi.chi_id())
            });
        }
    }
    Ok(worst.into_report("gauss_multiplicativity", tolerance))
}

/// Polar contribution to the dual side of the summation formula for
/// divisor-type coefficients, whose associated `L`-series
/// `ζ(s+it)ζ(s−it)` has poles at `s = 1 ± it`. Shifting the Mellin contour
/// of the smoothed sum across them leaves
///
/// - `t ≠ 0`: `2·Re[c^{−1−2it}·ζ(1+2it)·ψ̃(1+it)·N^{1+it}]` (two simple
///   poles, complex conjugates of each other),
/// - `t = 0`: `(N/c)·[ψ̃′(1) + ψ̃(1)·(ln N + 2γ − 2 ln c)]` (one double
///   pole — the confluent limit of the pair above).
///
/// The residues do not depend on the twist numerator, only on `c`.
fn divisor_polar_term(t: f64, c: u64, n_scale: f64, psi: &BumpFunction) -> Result<Complex64> {
    let cf = c as f64;
    if t == 0.0 {
        let m1 = mellin(psi, Complex64::new(1.0, 0.0));
        let m1_log = mellin_log_weighted(psi, Complex64::new(1.0, 0.0));
        let value =
            n_scale / cf * (m1_log.re + m1.re * (n_scale.ln() + 2.0 * EULER_GAMMA - 2.0 * cf.ln()));
        Ok(Complex64::new(value, 0.0))
    } else {
        let zeta = riemann_zeta(Complex64::new(1.0, 2.0 * t))?;
        let m = mellin(psi, Complex64::new(1.0, t));
        let c_pow = c_exp(Complex64::new(-1.0, -2.0 * t) * cf.ln());
        let n_pow = c_exp(Complex64::new(1.0, t) * n_scale.ln());
        let z = c_pow * zeta * m * n_pow;
        Ok(Complex64::new(2.0 * z.re, 0.0))
    }
}

/// Summation formula for additively twisted coefficient sums: with
/// `gcd(c, d) = 1` and `d̄` the inverse of `d` mod `c`,
///
/// `Σ_n λ(n)·e(n d̄/c)·ψ(n/N)
///    = c·Σ_± Σ_n λ(n)/n·e(±n d/c)·Ψ±(n N/c²) [+ polar terms]`,
///
/// where `Ψ±` is the kernel transform of `ψ` (see
/// [`crate::special_functions::voronoi`]) evaluated on the given contour
/// plan, and the bracketed polar terms appear only for divisor-type
/// coefficient sources (their `L`-series has poles; cuspidal-normalized
/// ingested tables get none).
///
/// The left side is summed exactly over the support of `ψ(·/N)`; the right
/// side is truncated once a trailing window of terms falls below
/// [`DUAL_SUM_FLOOR`] scaled by the bump's amplitude — the identity is
/// homogeneous in `ψ`, so the cut must be too, or rescaling `ψ` would move
/// it. The deviation is quadrature-limited: it shrinks when `plan.step`
/// halves, until the dual-truncation/contour floor of the plan.
pub fn verify_voronoi(
    f: &HeckeCoefficients,
    psi: &BumpFunction,
    c: u64,
    d: u64,
    n_scale: f64,
    plan: &ContourPlan,
    tolerance: f64,
) -> Result<VerificationReport> {
    require_tolerance(tolerance)?;
    if c == 0 {
        return Err(Error::NonPositiveArgument("twist denominator"));
    }
    if !(n_scale > 0.0) || !n_scale.is_finite() {
        return Err(Error::NonPositiveArgument("sum scale"));
    }
    if gcd(d % c, c) != 1 {
        return Err(Error::NonCoprimeArguments { a: d, b: d, q: c });
    }
    let t = f.t().t();
    let (lo, hi) = psi.support();
    let mut g = f.clone();
    let lhs_top = (n_scale * hi).ceil() as u64;
    g.ensure_horizon(2 * lhs_top.max(1))?;

    // Direct side: finitely many terms inside the bump support.
    let dbar = if c == 1 {
        0
    } else {
        mod_inverse(d % c, c).expect("coprimality checked above")
    };
    let mut lhs = KahanComplex::new();
    let lhs_bottom = (n_scale * lo).floor().max(1.0) as u64;
    for n in lhs_bottom..=lhs_top {
        let weight = psi.eval(n as f64 / n_scale);
        if weight == 0.0 {
            continue;
        }
        let lam = g
            .lambda(n)
            .ok_or(Error::DomainError("coefficient table has gaps across the bump support"))?;
        let k = (n % c) * dbar % c;
        lhs.add(lam * weight * e(k as f64 / c as f64));
    }

    // Dual side: kernel-transformed sum, truncated where a trailing window
    // of term envelopes drops below the floor.
    let line = VoronoiLine::new(psi, t, plan)?;
    let x_scale = n_scale / (c as f64 * c as f64);
    let floor = DUAL_SUM_FLOOR * psi.amplitude().abs().max(f64::MIN_POSITIVE);
    let mut dual = KahanComplex::new();
    let mut quiet = 0usize;
    let mut dual_top = 0u64;
    let mut converged = false;
    for n in 1..=DUAL_SUM_CAP {
        if g.lambda(n).is_none() {
            // Grow geometrically: dense rebuilds are linear in the horizon,
            // so stepwise extension would be quadratic overall.
            g.ensure_horizon(n.saturating_mul(2).clamp(1024, DUAL_SUM_CAP))?;
        }
        let lam = g
            .lambda(n)
            .ok_or(Error::DomainError("coefficient table is too short for the dual sum"))?;
        let x = x_scale * n as f64;
        let (plus, minus) = line.eval_pair(x)?;
        let k = (n % c) * (d % c) % c;
        let phase = e(k as f64 / c as f64);
        dual.add(lam / n as f64 * (phase * plus + phase.conj() * minus));
        dual_top = n;
        // Envelope gate: |λ| below 1 is not trusted to stay small, so the
        // window closes only when the transform itself is below the floor.
        let envelope = lam.abs().max(1.0) / n as f64 * (plus.abs() + minus.abs());
        if envelope < floor {
            quiet += 1;
            if quiet >= DUAL_SUM_QUIET_RUN {
                converged = true;
                break;
            }
        } else {
            quiet = 0;
        }
    }
    if !converged {
        return Err(Error::DomainError(
            "dual sum does not converge within the supported range",
        ));
    }
    let mut rhs = c as f64 * dual.value();
    if g.is_eisenstein() {
        rhs += divisor_polar_term(t, c, n_scale, psi)?;
    }

    let dev = (lhs.value() - rhs).norm();
    let worst_case = format!("c={c}, d={d}, N={n_scale}, t={t}, dual terms n <= {dual_top}");
    Ok(VerificationReport::new("voronoi", 1, dev, tolerance, worst_case))
}

/// Poisson summation sanity harness for the Fourier conventions: for
/// Gaussians `g(x) = exp(−((x−x₀)/w)²)` the transform under
/// `ĝ(ξ) = ∫ g(x)·e(−ξx) dx` is known in closed form,
/// `ĝ(ξ) = w√π·exp(−(πwξ)²)·e(−ξ x₀)`, and `Σ_{n∈ℤ} g(n) = Σ_{m∈ℤ} ĝ(m)`.
///
/// Both sides are computed independently: the left by direct summation, the
/// right by trapezoid quadrature of the Fourier integral with grid step
/// `plan.step` (which must resolve the unit-width Gaussians — step ≤ 0.2
/// keeps the aliasing error below 1e-12; the analytic-weight default plan
/// qualifies). Each quadrature transform value is also compared against the
/// closed form, which pins the phase factor `e(−m x₀)` and hence the sign
/// convention of `e`.
pub fn verify_poisson_sanity(plan: &ContourPlan, tolerance: f64) -> Result<VerificationReport> {
    require_tolerance(tolerance)?;
    let h = plan.step();
    let mut worst = WorstCase::new();
    for &(x0, width) in &[(0.0, 1.0), (0.37, 1.0), (-0.25, 0.8), (0.25, 6.0)] {
        let g = |x: f64| (-((x - x0) / width) * ((x - x0) / width)).exp();
        let reach = 7.0 * width + 1.0;

        let mut direct = KahanSum::new();
        let n_lo = (x0 - reach).floor() as i64;
        let n_hi = (x0 + reach).ceil() as i64;
        for n in n_lo..=n_hi {
            direct.add(g(n as f64));
        }

        let j_lo = ((x0 - reach) / h).floor() as i64;
        let j_hi = ((x0 + reach) / h).ceil() as i64;
        let samples: Vec<(f64, f64)> = (j_lo..=j_hi)
            .map(|j| {
                let x = j as f64 * h;
                (x, g(x))
            })
            .collect();
        let m_top = (2.1 / width).ceil() as i64 + 1;
        let mut transform_side = KahanComplex::new();
        for m in -m_top..=m_top {
            let mut acc = KahanComplex::new();
            for &(x, gx) in &samples {
                acc.add(gx * e(-(m as f64) * x));
            }
            let ghat = h * acc.value();
            transform_side.add(ghat);
            let analytic = width
                * PI.sqrt()
                * (-(PI * width * m as f64) * (PI * width * m as f64)).exp()
                * e(-(m as f64) * x0);
            let dev = (ghat - analytic).norm();
            worst.record(1, dev, || {
                format!("transform at m={m} for x0={x0}, width={width}")
            });
        }
        let dev = (transform_side.value() - direct.value()).norm();
        worst.record(1, dev, || {
            format!("summation identity for x0={x0}, width={width}")
        });
    }
    Ok(worst.into_report("poisson_sanity", tolerance))
}

/// Square-root-cancellation gate on twisted partial sums, wrapping
/// [`HeckeCoefficients::exp_sum_bound_check`]: the reported deviation is the
/// worst growth factor `sup_α ratio(N) / sup_α ratio(N₁)` over the longer
/// lengths, and the tolerance is the structural gate
/// [`EXP_SUM_GROWTH_GATE`]. The untwisted `α = 0` column is reported in
/// `worst_case` but never fails the check — divisor-type coefficients
/// legitimately violate it.
pub fn verify_exp_sum_bound(
    f: &HeckeCoefficients,
    lengths: &[u64],
    grid_size: usize,
) -> Result<VerificationReport> {
    let report = f.exp_sum_bound_check(lengths, grid_size)?;
    let base = report.grid_ratios[0];
    let mut growth = 0.0f64;
    let mut at_length = lengths[0];
    for (k, &r) in report.grid_ratios.iter().enumerate().skip(1) {
        if r / base > growth {
            growth = r / base;
            at_length = lengths[k];
        }
    }
    let worst_case = format!(
        "N={at_length}: grid ratio {:.6} vs {:.6} at N={}; alpha=0 exception: {}",
        growth * base,
        base,
        lengths[0],
        report.zero_alpha_exception
    );
    let cases = (grid_size + 1) * lengths.len();
    Ok(VerificationReport::new(
        "exp_sum_bound",
        cases,
        growth,
        EXP_SUM_GROWTH_GATE,
        worst_case,
    ))
}

/// The standard verification suite: every check above at its default
/// tolerance scale, over the standard two-prime moduli up to `q_max`.
///
/// `tolerance_exact` is applied to the family identities and the Gauss
/// factorization; orthogonality and the Poisson harness are held 10× tighter
/// (their default bars). `tolerance_quad` governs the summation-formula
/// checks. `extended` widens the summation-formula sweep from two spot
/// configurations to the full `{(1,1), (5,2), (7,3)} × {t=0, t=1}` grid.
pub fn default_suite(
    q_max: u64,
    ab_limit: u64,
    tolerance_exact: f64,
    tolerance_quad: f64,
    extended: bool,
) -> Result<Vec<VerificationReport>> {
    require_tolerance(tolerance_exact)?;
    require_tolerance(tolerance_quad)?;
    let moduli: Vec<u64> = STANDARD_SEMIPRIMES
        .iter()
        .copied()
        .filter(|&q| q <= q_max)
        .collect();
    if moduli.is_empty() {
        return Err(Error::DomainError(
            "q_max admits none of the standard two-prime moduli",
        ));
    }
    let tight = tolerance_exact * 0.1;
    let mut reports = Vec::new();
    reports.push(verify_orthogonality(&moduli, tight)?);
    reports.push(verify_b_identity(&moduli, ab_limit, tolerance_exact)?);
    reports.push(verify_d_identity(&moduli, ab_limit, tolerance_exact)?);
    reports.push(verify_gauss_mult(&moduli, tolerance_exact)?);

    let psi = BumpFunction::standard();
    let plan = ContourPlan::bessel_transform_default();
    let configs: &[(u64, u64, f64)] = if extended {
        &[
            (1, 1, 0.0),
            (1, 1, 1.0),
            (5, 2, 0.0),
            (5, 2, 1.0),
            (7, 3, 0.0),
            (7, 3, 1.0),
        ]
    } else {
        &[(1, 1, 0.0), (5, 2, 1.0)]
    };
    for &(c, d, t) in configs {
        let f = HeckeCoefficients::eisenstein(
            crate::special_functions::SpectralParameter::new(t)?,
            64,
        );
        reports.push(verify_voronoi(&f, &psi, c, d, 10.0, &plan, tolerance_quad)?);
    }

    reports.push(verify_poisson_sanity(
        &ContourPlan::central_weight_default(),
        tight,
    )?);

    let f = HeckeCoefficients::eisenstein(
        crate::special_functions::SpectralParameter::new(0.0)?,
        4096,
    );
    reports.push(verify_exp_sum_bound(&f, &[256, 1024, 4096], 200)?);
    Ok(reports)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::special_functions::SpectralParameter;

    fn eisenstein(t: f64, n_max: u64) -> HeckeCoefficients {
        HeckeCoefficients::eisenstein(SpectralParameter::new(t).unwrap(), n_max)
    }

    #[test]
    fn orthogonality_sweeps_all_unit_pairs() {
        let report = verify_orthogonality(&[15, 21, 33, 35], TOLERANCE_ORTHOGONALITY).unwrap();
        assert_eq!(report.name, "orthogonality");
        // Unit pairs per modulus: φ(q)² = 64, 144, 400, 576.
        assert_eq!(report.cases_run, 1184);
        assert!(report.passed, "max deviation {}", report.max_abs_deviation);
        assert!(!report.worst_case.is_empty());
        assert!(verify_orthogonality(&[], 1e-10).is_err());
        assert!(verify_orthogonality(&[15], 0.0).is_err());
    }

    #[test]
    fn orthogonality_diagonal_and_annihilated_pairs() {
        // Independent spot checks of the relation the sweep exercises:
        // the diagonal recovers φ(q), off-diagonal and off-unit sums vanish.
        let m = Modulus::new(15).unwrap();
        let family = enumerate_characters(&m);
        let sum = |a: u64, b: u64| {
            let mut acc = KahanComplex::new();
            for chi in &family {
                acc.add(chi.value(a) * chi.value(b).conj());
            }
            acc.value()
        };
        assert!((sum(2, 2) - 8.0).norm() < 1e-12, "diagonal gives phi(15)");
        assert!(sum(2, 3).norm() < 1e-15, "3 is not a unit mod 15");
        assert!(sum(2, 4).norm() < 1e-12, "2 and 4 are distinct units");
    }

    #[test]
    fn family_averages_match_their_closed_forms() {
        let b = verify_b_identity(&[15, 21, 33, 35], 20, TOLERANCE_EXACT).unwrap();
        assert_eq!(b.name, "b_identity");
        // Coprime pairs a, b <= 20 per modulus: 121, 144, 169, 196.
        assert_eq!(b.cases_run, 630);
        assert!(b.passed, "b deviation {}", b.max_abs_deviation);

        let d = verify_d_identity(&[15, 21, 33, 35], 20, TOLERANCE_EXACT).unwrap();
        assert_eq!(d.name, "d_identity");
        assert_eq!(d.cases_run, 630);
        assert!(d.passed, "d deviation {}", d.max_abs_deviation);

        assert!(verify_b_identity(&[15], 0, 1e-9).is_err());
        assert!(matches!(
            verify_d_identity(&[7], 5, 1e-9),
            Err(Error::SemiprimeRequired(7))
        ));
    }

    #[test]
    fn weighted_family_average_pins_the_worked_value() {
        // At q = 15, a = b = 1 the closed form collapses to
        // Re[(2e(2/3)+1)(4e(2/5)+1)] = 4√3·sin 36° = 4.07230…, and the
        // brute-force route must give the same number.
        let m = Modulus::new(15).unwrap();
        let direct = crate::characters::family_d_direct(&m, 1, 1).unwrap();
        let closed = family_d_formula(&m, 1, 1).unwrap();
        assert!((direct.re - 4.0723).abs() < 1e-3, "direct {}", direct.re);
        assert!(direct.im.abs() < 1e-12, "imaginary parts cancel");
        assert!((direct - closed).norm() < 1e-12);
    }

    #[test]
    fn gauss_factorization_covers_all_primitive_pairs() {
        let report = verify_gauss_mult(&[15, 35], TOLERANCE_EXACT).unwrap();
        assert_eq!(report.name, "gauss_multiplicativity");
        // q=15: 1·3 component pairs + 3 modulus checks;
        // q=35: 3·5 pairs + 15 modulus checks.
        assert_eq!(report.cases_run, 36);
        assert!(report.passed, "deviation {}", report.max_abs_deviation);
        assert!(matches!(
            verify_gauss_mult(&[5], 1e-9),
            Err(Error::SemiprimeRequired(5))
        ));
    }

    #[test]
    fn poisson_harness_validates_the_transform_conventions() {
        let report =
            verify_poisson_sanity(&ContourPlan::central_weight_default(), TOLERANCE_POISSON)
                .unwrap();
        assert_eq!(report.name, "poisson_sanity");
        assert_eq!(report.cases_run, 36);
        assert!(report.passed, "deviation {}", report.max_abs_deviation);
    }

    #[test]
    fn poisson_reference_values_for_the_gaussian_family() {
        // Unit Gaussian: Σ e^{−n²} = 1.772637… matches √π·Σ e^{−(πm)²}
        // (both sides computed in closed form here, independently of the
        // harness quadrature).
        let direct: f64 = (-10..=10).map(|n| (-(n * n) as f64).exp()).sum();
        let dual: f64 = PI.sqrt()
            * (-3..=3)
                .map(|m| (-(PI * m as f64) * (PI * m as f64)).exp())
                .sum::<f64>();
        assert!((direct - 1.772637).abs() < 1e-6, "theta value {direct}");
        assert!((direct - dual).abs() < 1e-12);

        // Wide Gaussian: the dual side is dominated by its m = 0 term, the
        // plain integral w√π.
        let width = 6.0f64;
        let wide: f64 = (-64..=64)
            .map(|n| (-((n as f64 - 0.25) / width) * ((n as f64 - 0.25) / width)).exp())
            .sum();
        assert!((wide - width * PI.sqrt()).abs() < 1e-10);
    }

    #[test]
    fn voronoi_simplest_instance_closes_and_scales_linearly() {
        let f = eisenstein(0.0, 64);
        let psi = BumpFunction::standard();
        let plan = ContourPlan::bessel_transform_default();
        let report = verify_voronoi(&f, &psi, 1, 1, 10.0, &plan, TOLERANCE_QUADRATURE).unwrap();
        assert_eq!(report.name, "voronoi");
        assert!(report.passed, "deviation {}", report.max_abs_deviation);
        assert!(report.max_abs_deviation < 1e-6);
        assert!(report.worst_case.contains("dual terms"));

        // Both sides are linear in ψ, so the defect scales exactly with it.
        let tall = BumpFunction::new(1.0, 2.0, 3.0).unwrap();
        let tripled = verify_voronoi(&f, &tall, 1, 1, 10.0, &plan, TOLERANCE_QUADRATURE).unwrap();
        assert!(tripled.passed);
        assert!(
            (tripled.max_abs_deviation - 3.0 * report.max_abs_deviation).abs() < 1e-8,
            "{} vs 3×{}",
            tripled.max_abs_deviation,
            report.max_abs_deviation
        );
    }

    #[test]
    fn voronoi_full_kernel_path_passes() {
        let f = eisenstein(1.0, 64);
        let psi = BumpFunction::standard();
        let plan = ContourPlan::bessel_transform_default();
        let report = verify_voronoi(&f, &psi, 5, 2, 10.0, &plan, TOLERANCE_QUADRATURE).unwrap();
        assert!(report.passed, "deviation {}", report.max_abs_deviation);
        assert!(report.max_abs_deviation < 1e-5);
    }

    #[test]
    fn voronoi_deviation_shrinks_when_the_step_halves() {
        // On the simplest instance the deviation is step-limited (the
        // twisted instances bottom out at the dual-truncation floor near
        // 1e-7, two hundred times below tolerance).
        let f = eisenstein(0.0, 64);
        let psi = BumpFunction::standard();
        let plan = ContourPlan::bessel_transform_default();
        let coarse = verify_voronoi(&f, &psi, 1, 1, 10.0, &plan, TOLERANCE_QUADRATURE).unwrap();
        let fine =
            verify_voronoi(&f, &psi, 1, 1, 10.0, &plan.refined(), TOLERANCE_QUADRATURE).unwrap();
        assert!(
            fine.max_abs_deviation <= coarse.max_abs_deviation / 4.0,
            "coarse {} fine {}",
            coarse.max_abs_deviation,
            fine.max_abs_deviation
        );
    }

    #[test]
    fn voronoi_rejects_bad_twists() {
        let f = eisenstein(0.0, 64);
        let psi = BumpFunction::standard();
        let plan = ContourPlan::bessel_transform_default();
        assert!(matches!(
            verify_voronoi(&f, &psi, 6, 4, 10.0, &plan, 1e-4),
            Err(Error::NonCoprimeArguments { a: 4, b: 4, q: 6 })
        ));
        assert!(verify_voronoi(&f, &psi, 0, 1, 10.0, &plan, 1e-4).is_err());
        assert!(verify_voronoi(&f, &psi, 1, 1, 0.0, &plan, 1e-4).is_err());
        assert!(verify_voronoi(&f, &psi, 1, 1, 10.0, &plan, f64::NAN).is_err());
    }

    #[test]
    fn exp_sum_gate_wraps_the_growth_report() {
        let f = eisenstein(0.0, 4096);
        let report = verify_exp_sum_bound(&f, &[256, 1024, 4096], 200).unwrap();
        assert_eq!(report.name, "exp_sum_bound");
        assert_eq!(report.cases_run, 201 * 3);
        assert_eq!(report.tolerance, EXP_SUM_GROWTH_GATE);
        assert!(report.passed, "growth factor {}", report.max_abs_deviation);
        // Divisor-type coefficients break the gate at α = 0; that is
        // reported, not failed.
        assert!(report.worst_case.contains("alpha=0 exception: true"));
        assert!(verify_exp_sum_bound(&f, &[], 10).is_err());
    }

    #[test]
    fn default_suite_is_green_at_desk_scale() {
        let reports = default_suite(35, 12, TOLERANCE_EXACT, TOLERANCE_QUADRATURE, false).unwrap();
        let names: Vec<&str> = reports.iter().map(|r| r.name.as_str()).collect();
        assert_eq!(
            names,
            [
                "orthogonality",
                "b_identity",
                "d_identity",
                "gauss_multiplicativity",
                "voronoi",
                "voronoi",
                "poisson_sanity",
                "exp_sum_bound"
            ]
        );
        for report in &reports {
            assert!(
                report.passed,
                "{} deviated by {} (worst case {})",
                report.name, report.max_abs_deviation, report.worst_case
            );
        }
        assert!(default_suite(10, 12, 1e-9, 1e-4, false).is_err());
    }
}
