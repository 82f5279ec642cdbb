//! Hecke-multiplicative coefficient sources.
//!
//! Two sources are provided:
//!
//! - a synthetic **Eisenstein family** `λ_t(n) = Σ_{ab=n} (a/b)^{it}`, which is
//!   real, Hecke-multiplicative, reduces to the divisor function `d(n)` at
//!   `t = 0`, and admits closed-form oracles (its twisted `L`-functions factor
//!   into shifted Dirichlet `L`-functions), and
//! - an **ingestion path** for external coefficient tables in a plain-text
//!   format (header `t <value>`, then `"<n> <value>"` rows).
//!
//! On top of either source the module offers extension by the Hecke
//! recursion, the smoothed evaluation of `L(1, f) = Σ λ(n)/n`, a normalized
//! exponential-sum report `max_α |Σ_{n≤N} λ(n) e(αn)| / N^{0.6}`, and a
//! report on the fraction of coefficients exceeding the Ramanujan-type bound
//! `d(n)·n^θ`.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use core::fmt::Write as _;

// Provides f64 math methods for builds whose dependency graph omits std;
// when some build has std linked (e.g. through dev-dependencies), std's
// inherent methods shadow the trait and the import sits idle.
#[allow(unused_imports)]
use num_traits::Float;

use crate::arith::{divisor_count_sieve, factorize, gcd, is_prime, smallest_prime_factor};
use crate::numerics::{e, solve_dense, KahanComplex, KahanSum};
use crate::special_functions::SpectralParameter;
use crate::{Complex64, Error, Result};

/// Kim–Sarnak exponent: the default bound `|λ(p)| ≤ 2 p^θ` used by the
/// Ramanujan report.
pub const THETA_KIM_SARNAK: f64 = 7.0 / 64.0;

/// Where a coefficient table came from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CoefficientSource {
    /// The synthetic Eisenstein family; values are generated on demand from
    /// the spectral parameter alone.
    Eisenstein,
    /// An ingested table; `origin` is a caller-supplied label (typically the
    /// file path) used only for reporting.
    Table { origin: String },
}

/// A table of real Hecke-normalized coefficients `λ(n)`, `1 ≤ n ≤ n_max`.
///
/// Gaps are allowed for ingested tables (absent entries are `NaN`
/// internally and `None` through [`HeckeCoefficients::lambda`]); the
/// Eisenstein constructor always fills its range densely.
#[derive(Debug, Clone)]
pub struct HeckeCoefficients {
    source: CoefficientSource,
    t: SpectralParameter,
    /// `lambda[n]` indexed by `n`; entry 0 is unused, absent entries are NaN.
    lambda: Vec<f64>,
    theta_bound: f64,
    n_max: u64,
    /// Worst Hecke-relation residual observed at construction (see
    /// [`hecke_residual_scan`]); a diagnostic, never an assertion, because
    /// external tables may carry truncated precision.
    hecke_residual: f64,
}

/// `λ(p)` for the Eisenstein family: `p^{it} + p^{-it} = 2 cos(t·ln p)`.
#[inline]
fn eisenstein_prime_value(t: f64, p: u64) -> f64 {
    if t == 0.0 {
        2.0
    } else {
        2.0 * (t * (p as f64).ln()).cos()
    }
}

/// Fill `λ(1..=n_max)` for a multiplicative family determined by its prime
/// values and the Hecke recursion `λ(p^e) = λ(p)λ(p^{e−1}) − λ(p^{e−2})`.
///
/// At integer-valued prime data (e.g. `λ(p) = 2` for every `p`) the
/// recursion and the coprime products stay exact in `f64`, so the `t = 0`
/// Eisenstein table reproduces the divisor function as exact integers.
fn fill_multiplicative(n_max: usize, lambda_p: impl Fn(u64) -> f64) -> Vec<f64> {
    let mut lam = vec![f64::NAN; n_max + 1];
    if n_max == 0 {
        return lam;
    }
    lam[1] = 1.0;
    let spf = smallest_prime_factor(n_max);
    for n in 2..=n_max {
        let p = spf[n] as usize;
        let mut m = n;
        let mut pe = 1usize;
        while m % p == 0 {
            m /= p;
            pe *= p;
        }
        lam[n] = if m > 1 {
            // n = p^e · m with gcd(p, m) = 1; both factors are below n.
            lam[pe] * lam[m]
        } else if n == p {
            lambda_p(p as u64)
        } else {
            // pure prime power, exponent ≥ 2
            lam[p] * lam[n / p] - lam[n / (p * p)]
        };
    }
    lam
}

impl HeckeCoefficients {
    /// Dense Eisenstein table for `1 ≤ n ≤ n_max` (at least `n = 1`).
    pub fn eisenstein(t: SpectralParameter, n_max: u64) -> Self {
        let n_max = n_max.max(1);
        let tv = t.t();
        let lambda = fill_multiplicative(n_max as usize, |p| eisenstein_prime_value(tv, p));
        let mut h = Self {
            source: CoefficientSource::Eisenstein,
            t,
            lambda,
            theta_bound: THETA_KIM_SARNAK,
            n_max,
            hecke_residual: 0.0,
        };
        h.hecke_residual = hecke_residual_scan(&h, n_max.min(RESIDUAL_SCAN_CAP));
        h
    }

    /// Parse a coefficient table.
    ///
    /// Grammar: the first significant line is the header `t <decimal>`;
    /// every following line is `<n> <decimal>` with `n` strictly increasing
    /// from 1. Lines whose first non-blank character is `#` are comments;
    /// blank lines are ignored; LF and CRLF both work. The first coefficient
    /// must equal 1 (within `1e−6`, then snapped to exactly 1).
    ///
    /// `origin` is a label for reporting (callers doing file I/O pass the
    /// path).
    pub fn from_text(text: &str, origin: &str) -> Result<Self> {
        let mut t_value: Option<f64> = None;
        let mut entries: Vec<(u64, f64)> = Vec::new();
        let mut last_n = 0u64;
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let body = raw.trim();
            if body.is_empty() || body.starts_with('#') {
                continue;
            }
            let mut fields = body.split_whitespace();
            let first = fields.next().expect("non-empty line has a first field");
            let second = fields.next().ok_or_else(|| Error::ParseError {
                line,
                message: "expected two whitespace-separated fields".to_string(),
            })?;
            if fields.next().is_some() {
                return Err(Error::ParseError {
                    line,
                    message: "trailing fields after the value".to_string(),
                });
            }
            let Some(header) = t_value else {
                if first != "t" {
                    return Err(Error::ParseError {
                        line,
                        message: "table must open with a `t <value>` header".to_string(),
                    });
                }
                let tv: f64 = second.parse().map_err(|_| Error::ParseError {
                    line,
                    message: format!("unreadable spectral parameter `{second}`"),
                })?;
                if !tv.is_finite() {
                    return Err(Error::ParseError {
                        line,
                        message: "spectral parameter must be finite".to_string(),
                    });
                }
                t_value = Some(tv);
                continue;
            };
            let _ = header;
            let n: u64 = first.parse().map_err(|_| Error::ParseError {
                line,
                message: format!("unreadable index `{first}`"),
            })?;
            let value: f64 = second.parse().map_err(|_| Error::ParseError {
                line,
                message: format!("unreadable value `{second}`"),
            })?;
            if n == 0 {
                return Err(Error::ParseError {
                    line,
                    message: "indices start at 1".to_string(),
                });
            }
            if !value.is_finite() {
                return Err(Error::ParseError {
                    line,
                    message: "coefficient values must be finite".to_string(),
                });
            }
            if entries.is_empty() {
                if n != 1 {
                    return Err(Error::MissingFirstCoefficient);
                }
                if (value - 1.0).abs() > 1e-6 {
                    return Err(Error::ParseError {
                        line,
                        message: format!("first coefficient must equal 1, got {value}"),
                    });
                }
                entries.push((1, 1.0));
                last_n = 1;
                continue;
            }
            if n <= last_n {
                return Err(Error::NonMonotoneIndex { line });
            }
            entries.push((n, value));
            last_n = n;
        }
        let Some(tv) = t_value else {
            return Err(Error::ParseError {
                line: 1,
                message: "missing `t <value>` header".to_string(),
            });
        };
        if entries.is_empty() {
            return Err(Error::MissingFirstCoefficient);
        }
        let n_max = last_n;
        let mut lambda = vec![f64::NAN; n_max as usize + 1];
        for &(n, v) in &entries {
            lambda[n as usize] = v;
        }
        let mut h = Self {
            source: CoefficientSource::Table {
                origin: origin.to_string(),
            },
            t: SpectralParameter::new(tv)?,
            lambda,
            theta_bound: THETA_KIM_SARNAK,
            n_max,
            hecke_residual: 0.0,
        };
        h.hecke_residual = hecke_residual_scan(&h, n_max.min(RESIDUAL_SCAN_CAP));
        Ok(h)
    }

    /// `λ(n)`, if present.
    #[inline]
    pub fn lambda(&self, n: u64) -> Option<f64> {
        let idx = n as usize;
        if n == 0 || idx >= self.lambda.len() {
            return None;
        }
        let v = self.lambda[idx];
        if v.is_nan() {
            None
        } else {
            Some(v)
        }
    }

    /// Raw table indexed by `n` (`slice[0]` unused, gaps are NaN). Hot loops
    /// index this directly instead of going through [`Self::lambda`].
    #[inline]
    pub fn lambda_slice(&self) -> &[f64] {
        &self.lambda
    }

    pub fn t(&self) -> SpectralParameter {
        self.t
    }

    pub fn n_max(&self) -> u64 {
        self.n_max
    }

    pub fn source(&self) -> &CoefficientSource {
        &self.source
    }

    pub fn is_eisenstein(&self) -> bool {
        self.source == CoefficientSource::Eisenstein
    }

    /// Exponent of the `|λ(n)| ≤ d(n)·n^θ` bound used by
    /// [`ramanujan_report`].
    pub fn theta_bound(&self) -> f64 {
        self.theta_bound
    }

    /// Worst Hecke-relation residual observed when the table was built (up
    /// to index [`RESIDUAL_SCAN_CAP`]). Reported, never asserted: ingested
    /// data may carry truncated precision, and the residual is the honest
    /// measure of how multiplicative it actually is.
    pub fn hecke_residual(&self) -> f64 {
        self.hecke_residual
    }

    /// `λ(n)`, extending the table by Hecke multiplicativity when absent.
    ///
    /// `λ(p^e)` climbs the recursion `λ(p^{e+1}) = λ(p)λ(p^e) − λ(p^{e−1})`
    /// starting from the table's `λ(p)`, reusing any cached intermediate
    /// powers (existing entries always win over recomputation), and coprime
    /// parts multiply. Newly derived values are stored.
    pub fn hecke_extend(&mut self, n: u64) -> Result<f64> {
        if n == 0 {
            return Err(Error::DomainError("coefficient index must be >= 1"));
        }
        if let Some(v) = self.lambda(n) {
            return Ok(v);
        }
        let mut value = 1.0f64;
        for (p, e) in factorize(n) {
            let lp = self.lambda(p).ok_or(Error::MissingPrimeValue(p))?;
            let mut below = 1.0f64; // λ(p^{k−1})
            let mut current = lp; // λ(p^k), k = 1
            let mut pk = p;
            for _ in 1..e {
                pk *= p;
                let next = match self.lambda(pk) {
                    Some(v) => v,
                    None => {
                        let v = lp * current - below;
                        self.store(pk, v);
                        v
                    }
                };
                below = current;
                current = next;
            }
            value *= current;
        }
        self.store(n, value);
        Ok(value)
    }

    /// Make every `λ(m)`, `m ≤ n`, available: Eisenstein tables are rebuilt
    /// densely by the sieve; ingested tables are extended through the Hecke
    /// recursion (which fails with [`Error::MissingPrimeValue`] if a needed
    /// prime lies beyond the data).
    pub fn ensure_horizon(&mut self, n: u64) -> Result<()> {
        match self.source {
            CoefficientSource::Eisenstein => {
                if n > self.n_max {
                    let tv = self.t.t();
                    self.lambda =
                        fill_multiplicative(n as usize, |p| eisenstein_prime_value(tv, p));
                    self.n_max = n;
                }
                Ok(())
            }
            CoefficientSource::Table { .. } => {
                for m in 1..=n {
                    if self.lambda(m).is_none() {
                        self.hecke_extend(m)?;
                    }
                }
                Ok(())
            }
        }
    }

    fn store(&mut self, n: u64, v: f64) {
        let idx = n as usize;
        if idx >= self.lambda.len() {
            self.lambda.resize(idx + 1, f64::NAN);
        }
        if self.lambda[idx].is_nan() {
            self.lambda[idx] = v;
        }
        if n > self.n_max {
            self.n_max = n;
        }
    }

    /// `L(1, f) = Σ λ(n)/n`, evaluated through the exponential smoothing
    /// `S(X) = Σ λ(n) e^{−n/X} / n`.
    ///
    /// - Eisenstein `t = 0` diverges (`L(s) = ζ(s)²` has a pole at 1) and is
    ///   rejected.
    /// - Eisenstein `t ≠ 0`: `S(X)` carries non-decaying oscillations
    ///   `X^{±it}` (the factored `L`-function has poles at `1 ± it`), so
    ///   two-point extrapolation cannot converge; instead `S(X)` is sampled
    ///   on a geometric grid of `X` and the constant term is separated from
    ///   the oscillation by a small least-squares fit. The reported spread is
    ///   the worst fit residual.
    /// - Ingested tables: plain Richardson step `2 S(2X) − S(X)` at
    ///   `X = n_max/20`, which cancels the leading `1/X` drift of an entire
    ///   `L`-function; the reported spread is `|S(2X) − S(X)|`.
    pub fn l_one(&self) -> Result<LOneEstimate> {
        match self.source {
            CoefficientSource::Eisenstein => {
                if self.t.is_zero() {
                    return Err(Error::DivergentLValue);
                }
                eisenstein_l_one(self.t)
            }
            CoefficientSource::Table { .. } => {
                let x1 = self.n_max as f64 / 20.0;
                let s1 = self.smoothed_sum(x1);
                let s2 = self.smoothed_sum(2.0 * x1);
                Ok(LOneEstimate {
                    value: 2.0 * s2 - s1,
                    spread: (s2 - s1).abs(),
                })
            }
        }
    }

    /// `Σ_{n ≤ n_max} λ(n) e^{−n/X} / n` over the present entries.
    fn smoothed_sum(&self, x: f64) -> f64 {
        let mut acc = KahanSum::new();
        for (n, &v) in self.lambda.iter().enumerate().skip(1) {
            if v.is_nan() {
                continue;
            }
            let w = (-(n as f64) / x).exp();
            if w < 1e-18 {
                break;
            }
            acc.add(v * w / n as f64);
        }
        acc.value()
    }

    /// Normalized twisted-sum report: for each length `N` in `lengths`
    /// (strictly increasing), the maximum over the α grid
    /// `{(j+½)/grid_size}` of `|Σ_{n≤N} λ(n) e(αn)| / N^{0.6}`, with the
    /// `α = 0` column reported separately.
    ///
    /// `bounded` records whether every grid maximum beyond the first length
    /// stays within 1.5× the first — the desk-scale form of square-root
    /// cancellation. `zero_alpha_exception` records whether the untwisted
    /// `α = 0` column violates that same gate, which is expected for
    /// divisor-type (non-cuspidal) coefficients where `Σ d(n) ≍ N log N`
    /// outgrows `N^{0.6}`.
    pub fn exp_sum_bound_check(&self, lengths: &[u64], grid_size: usize) -> Result<ExpSumReport> {
        if lengths.is_empty() || grid_size == 0 {
            return Err(Error::DomainError(
                "need at least one length and a nonempty alpha grid",
            ));
        }
        if lengths.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::DomainError("lengths must strictly increase"));
        }
        let top = *lengths.last().expect("nonempty");
        if top > self.n_max {
            return Err(Error::DomainError(
                "coefficient horizon is below the requested sum length",
            ));
        }
        for n in 1..=top {
            if self.lambda(n).is_none() {
                return Err(Error::DomainError(
                    "coefficient table has gaps below the requested sum length",
                ));
            }
        }
        let norms: Vec<f64> = lengths.iter().map(|&n| (n as f64).powf(0.6)).collect();
        let mut grid_ratios = vec![0.0f64; lengths.len()];
        for j in 0..grid_size {
            let alpha = (j as f64 + 0.5) / grid_size as f64;
            for (k, r) in self.twisted_partial_norms(alpha, lengths).iter().enumerate() {
                let ratio = r / norms[k];
                if ratio > grid_ratios[k] {
                    grid_ratios[k] = ratio;
                }
            }
        }
        let zero_ratios: Vec<f64> = self
            .twisted_partial_norms(0.0, lengths)
            .iter()
            .zip(&norms)
            .map(|(r, nn)| r / nn)
            .collect();
        let bounded = grid_ratios[1..]
            .iter()
            .all(|&r| r <= 1.5 * grid_ratios[0]);
        let zero_alpha_exception = zero_ratios[1..]
            .iter()
            .any(|&r| r > 1.5 * zero_ratios[0]);
        Ok(ExpSumReport {
            lengths: lengths.to_vec(),
            grid_ratios,
            zero_ratios,
            bounded,
            zero_alpha_exception,
        })
    }

    /// `|Σ_{n≤N} λ(n) e(αn)|` snapshotted at each requested length.
    fn twisted_partial_norms(&self, alpha: f64, lengths: &[u64]) -> Vec<f64> {
        let top = *lengths.last().expect("nonempty") as usize;
        let delta = e(alpha);
        let mut phase = Complex64::new(1.0, 0.0);
        let mut acc = KahanComplex::new();
        let mut out = Vec::with_capacity(lengths.len());
        let mut next = 0usize;
        for n in 1..=top {
            if n % 512 == 0 {
                // periodic resync keeps the marched phase from drifting
                phase = e(alpha * n as f64);
            } else {
                phase *= delta;
            }
            acc.add(self.lambda[n] * phase);
            if n as u64 == lengths[next] {
                out.push(acc.value().norm());
                next += 1;
            }
        }
        out
    }
}

/// Scan cap for the construction-time Hecke residual, keeping very large
/// tables cheap to build; [`hecke_residual_scan`] can always be rerun with a
/// larger limit.
pub const RESIDUAL_SCAN_CAP: u64 = 20_000;

/// Worst residual of the two Hecke laws over all indices up to `n_limit`
/// (clamped to the table horizon), skipping absent entries:
///
/// - prime powers: `|λ(p)λ(p^k) − λ(p^{k+1}) − λ(p^{k−1})|`,
/// - coprime pairs: `|λ(m)λ(n) − λ(mn)|`.
pub fn hecke_residual_scan(f: &HeckeCoefficients, n_limit: u64) -> f64 {
    let top = n_limit.min(f.n_max) as usize;
    let get = |k: usize| -> Option<f64> {
        let v = f.lambda[k];
        if v.is_nan() {
            None
        } else {
            Some(v)
        }
    };
    let mut worst = 0.0f64;
    let mut p = 2usize;
    while p * p <= top {
        if is_prime(p as u64) {
            let mut pk = p;
            while pk * p <= top {
                if let (Some(lp), Some(mid), Some(up), Some(down)) =
                    (get(p), get(pk), get(pk * p), get(pk / p))
                {
                    worst = worst.max((lp * mid - up - down).abs());
                }
                pk *= p;
            }
        }
        p += 1;
    }
    let mut m = 2usize;
    while m * m <= top {
        for n in (m + 1)..=(top / m) {
            if gcd(m as u64, n as u64) == 1 {
                if let (Some(a), Some(b), Some(c)) = (get(m), get(n), get(m * n)) {
                    worst = worst.max((a * b - c).abs());
                }
            }
        }
        m += 1;
    }
    worst
}

/// `λ_t(n) = Σ_{ab=n} (a/b)^{it} = Σ_{ab=n} cos(t·ln(a/b))` by direct
/// divisor enumeration — the `O(√n)` oracle the sieve tables are tested
/// against. Equals `d(n)` exactly at `t = 0`.
pub fn eisenstein_lambda(t: SpectralParameter, n: u64) -> f64 {
    assert!(n >= 1, "coefficient index must be >= 1");
    let tv = t.t();
    let mut acc = KahanSum::new();
    let mut a = 1u64;
    while a * a <= n {
        if n % a == 0 {
            let b = n / a;
            if a == b {
                acc.add(1.0);
            } else if tv == 0.0 {
                acc.add(2.0);
            } else {
                // conjugate divisor pair: (a/b)^{it} + (b/a)^{it}
                acc.add(2.0 * (tv * ((a as f64).ln() - (b as f64).ln())).cos());
            }
        }
        a += 1;
    }
    acc.value()
}

/// Result of [`HeckeCoefficients::l_one`].
#[derive(Debug, Clone, Copy)]
pub struct LOneEstimate {
    /// The extrapolated `L(1, f)`.
    pub value: f64,
    /// Convergence diagnostic: worst fit residual (Eisenstein) or the
    /// two-point spread `|S(2X) − S(X)|` (ingested tables).
    pub spread: f64,
}

/// Report from [`HeckeCoefficients::exp_sum_bound_check`].
#[derive(Debug, Clone)]
pub struct ExpSumReport {
    pub lengths: Vec<u64>,
    /// `max_α |Σ_{n≤N} λ(n) e(αn)| / N^{0.6}` over the off-zero α grid.
    pub grid_ratios: Vec<f64>,
    /// The same ratio at `α = 0`.
    pub zero_ratios: Vec<f64>,
    /// Every grid ratio beyond the first length is ≤ 1.5× the first.
    pub bounded: bool,
    /// The `α = 0` column violates the 1.5× gate (expected for
    /// divisor-type coefficients, whose untwisted partial sums grow like
    /// `N log N`).
    pub zero_alpha_exception: bool,
}

/// Report on the pointwise bound `|λ(n)| ≤ d(n)·n^θ`.
#[derive(Debug, Clone, Copy)]
pub struct RamanujanReport {
    /// Entries present and checked.
    pub checked: u64,
    /// Entries with `|λ(n)| > d(n)·n^θ`.
    pub violations: u64,
    /// `violations / checked` (0 when nothing was checked).
    pub fraction: f64,
}

/// Fraction of present entries violating `|λ(n)| ≤ d(n)·n^θ` with the
/// table's θ. Exactly zero for Eisenstein tables, where `|λ_t(n)| ≤ d(n)`
/// termwise.
pub fn ramanujan_report(f: &HeckeCoefficients) -> RamanujanReport {
    let d = divisor_count_sieve(f.n_max as usize);
    let mut checked = 0u64;
    let mut violations = 0u64;
    for n in 1..=f.n_max {
        let Some(v) = f.lambda(n) else { continue };
        checked += 1;
        let bound = d[n as usize] as f64 * (n as f64).powf(f.theta_bound);
        if v.abs() > bound {
            violations += 1;
        }
    }
    let fraction = if checked == 0 {
        0.0
    } else {
        violations as f64 / checked as f64
    };
    RamanujanReport {
        checked,
        violations,
        fraction,
    }
}

/// `L(1, f)` for the Eisenstein family with `t ≠ 0` by separating the
/// constant from the `X^{±it}` oscillation of the smoothed sums.
///
/// `S(X) = L(1) + A·X^{it} + Ā·X^{−it} + (B + C·X^{it} + C̄·X^{−it})/X + …`,
/// so sampling a geometric grid of `X` and least-squares fitting
/// `[1, cos(t ln X), sin(t ln X)]` with and without a `1/X` damping factor
/// isolates `L(1)` to a few parts in `1e5`.
fn eisenstein_l_one(t: SpectralParameter) -> Result<LOneEstimate> {
    const HORIZON: u64 = 250_000;
    const X_MIN: f64 = 500.0;
    const X_MAX: f64 = 12_500.0;
    const POINTS: usize = 10;
    let table = HeckeCoefficients::eisenstein(t, HORIZON);
    let tv = t.t();
    let mut xs = [0.0f64; POINTS];
    let mut s = [0.0f64; POINTS];
    for (j, x) in xs.iter_mut().enumerate() {
        *x = X_MIN * (X_MAX / X_MIN).powf(j as f64 / (POINTS - 1) as f64);
    }
    for j in 0..POINTS {
        s[j] = table.smoothed_sum(xs[j]);
    }
    // Normal equations for the 6-parameter drift model; the 1/X columns are
    // rescaled by X_MIN to keep the system well conditioned.
    let mut ata = [0.0f64; 36];
    let mut atb = [0.0f64; 6];
    for j in 0..POINTS {
        let x = xs[j];
        let (sn, cs) = (tv * x.ln()).sin_cos();
        let damp = X_MIN / x;
        let row = [1.0, cs, sn, damp, cs * damp, sn * damp];
        for a in 0..6 {
            for b in 0..6 {
                ata[a * 6 + b] += row[a] * row[b];
            }
            atb[a] += row[a] * s[j];
        }
    }
    solve_dense(&mut ata, &mut atb, 6).ok_or(Error::DomainError(
        "oscillation fit is degenerate; spectral parameter too close to 0",
    ))?;
    let c = atb;
    let mut worst = 0.0f64;
    for j in 0..POINTS {
        let x = xs[j];
        let (sn, cs) = (tv * x.ln()).sin_cos();
        let damp = X_MIN / x;
        let fit = c[0] + c[1] * cs + c[2] * sn + (c[3] + c[4] * cs + c[5] * sn) * damp;
        worst = worst.max((s[j] - fit).abs());
    }
    Ok(LOneEstimate {
        value: c[0],
        spread: worst,
    })
}

/// Deterministic synthetic coefficient table in the ingestion text format:
/// random Sato-Tate-style prime values `λ(p) = 2 cos θ_p` (with `θ_p` drawn
/// from a hash of `(seed, p)`) extended by the Hecke recursion. Useful as a
/// stand-in for cuspidal data when exercising the parser and the
/// exponential-sum report.
///
/// Values are printed with 16 significant digits, so the reparsed table's
/// Hecke residuals sit at roundoff level.
pub fn synthetic_cuspidal_text(t: f64, n_max: u64, seed: u64) -> String {
    let lam = fill_multiplicative(n_max.max(1) as usize, |p| {
        let u = splitmix64(seed ^ p.wrapping_mul(0x9E37_79B9_7F4A_7C15)) as f64
            / (u64::MAX as f64 + 1.0);
        2.0 * (core::f64::consts::PI * u).cos()
    });
    let mut out = String::new();
    let _ = writeln!(out, "# synthetic multiplicative table, seed {seed:#018x}");
    let _ = writeln!(out, "t {t}");
    for (n, &v) in lam.iter().enumerate().skip(1) {
        let _ = writeln!(out, "{n} {v:.15e}");
    }
    out
}

/// SplitMix64 finalizer — a tiny stateless hash, enough to derive
/// reproducible pseudo-random angles without pulling in an RNG dependency.
fn splitmix64(x: u64) -> u64 {
    let mut z = x.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}
