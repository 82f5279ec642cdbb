//! The analytic weight appearing in the approximate functional equation for
//! central values, and bulk tabulation of it.
//!
//! For a spectral parameter `t`, the weight is the contour integral
//!
//! `V(y) = (1/2πi) ∫_(σ) y^{-u} · g(u) · e^{u²} du/u`,
//!
//! where `g(u)` is the ratio of the gamma factors at `s = 1/2 + u` to those
//! at `s = 1/2`:
//!
//! `g(u) = Γ((1+2u+2it)/4) Γ((1+2u-2it)/4) Γ((1+2u)/4)
//!         / [Γ((1+2it)/4) Γ((1-2it)/4) Γ(1/4)]`.
//!
//! `V` is real, tends to 1 as `y → 0`, and decays like
//! `exp(-(ln y)²/4)` for large `y`. The Gaussian regulator `e^{u²}` makes a
//! truncated trapezoid rule on the vertical line spectrally accurate; the
//! contour is discretized by a [`ContourPlan`] and only the upper half-line
//! is evaluated (the integrand pairs conjugately across the real axis).

use crate::numerics::c_exp;
use crate::special_functions::gamma::log_gamma;
use crate::special_functions::vertical_line_sum;
use crate::{Complex64, Error, Result};
use alloc::vec::Vec;
// Provides f64 math methods for builds whose dependency graph omits std;
// when some build has std linked (e.g. through dev-dependencies), std's
// inherent methods shadow the trait and the import sits idle.
#[allow(unused_imports)]
use num_traits::Float;

/// Archimedean parameter `t` of a coefficient system (`t = 0` for the
/// divisor function).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectralParameter {
    t: f64,
}

impl SpectralParameter {
    pub fn new(t: f64) -> Result<Self> {
        if !t.is_finite() {
            return Err(Error::DomainError("spectral parameter must be finite"));
        }
        Ok(Self { t })
    }

    pub fn t(&self) -> f64 {
        self.t
    }

    pub fn is_zero(&self) -> bool {
        self.t == 0.0
    }
}

/// Discretization of a vertical contour `Re u = sigma`: trapezoid nodes
/// `u_j = sigma + i·j·step` for `j = 0, ±1, ..., ±count` with
/// `count·step >= height`.
///
/// Invariants enforced by the constructor: `sigma > 0`, `height > 0`,
/// `step > 0`, and at least 100 nodes per half-line (`height/step >= 100`),
/// below which the discretizations used here are not trustworthy.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ContourPlan {
    sigma: f64,
    height: f64,
    step: f64,
}

impl ContourPlan {
    pub fn new(sigma: f64, height: f64, step: f64) -> Result<Self> {
        let finite = sigma.is_finite() && height.is_finite() && step.is_finite();
        if !finite || sigma <= 0.0 || height <= 0.0 || step <= 0.0 || height / step < 100.0 {
            return Err(Error::InvalidContourPlan);
        }
        Ok(Self {
            sigma,
            height,
            step,
        })
    }

    /// Default plan for the analytic weight: `σ = 1`, truncated at height 12
    /// (the regulator is below 1e-60 there), step 0.05.
    pub fn central_weight_default() -> Self {
        Self {
            sigma: 1.0,
            height: 12.0,
            step: 0.05,
        }
    }

    /// Default plan for the oscillatory transform of a bump on `[1, 2]`:
    /// `σ = 1/2`, height 3000 (the transform kernel decays only like
    /// `exp(-c√τ)`, so a tall contour is required for 1e-8 tails), step 0.3.
    ///
    /// The step must keep the phase `ln(π²x)` of every requested argument
    /// well below the trapezoid resonance `2π/step`; step 0.3 is safe for
    /// `x` up to ~10⁶, covering the dual sums driven through it (step 0.6
    /// resonates near `x ≈ 3.6·10³`, which those sums cross).
    pub fn bessel_transform_default() -> Self {
        Self {
            sigma: 0.5,
            height: 3000.0,
            step: 0.3,
        }
    }

    pub fn sigma(&self) -> f64 {
        self.sigma
    }

    pub fn height(&self) -> f64 {
        self.height
    }

    pub fn step(&self) -> f64 {
        self.step
    }

    /// Number of strictly positive nodes on the half-line; node heights are
    /// `j·step` for `j = 0..=half_line_count()`.
    pub fn half_line_count(&self) -> usize {
        (self.height / self.step).ceil() as usize
    }

    /// Same contour with the step halved (twice as many nodes), for
    /// discretization-error measurements.
    pub fn refined(&self) -> Self {
        Self {
            sigma: self.sigma,
            height: self.height,
            step: self.step / 2.0,
        }
    }
}

/// Node coefficients `w_j = g(u_j)·e^{u_j²}/u_j` for `j = 0..=J`, shared by
/// the scalar and tabulated evaluators.
fn weight_nodes(t: f64, plan: &ContourPlan) -> Vec<Complex64> {
    let it2 = Complex64::new(0.0, 2.0 * t);
    let quarter = |z: Complex64| z / 4.0;
    let denom = log_gamma(quarter(Complex64::new(1.0, 2.0 * t)))
        + log_gamma(quarter(Complex64::new(1.0, -2.0 * t)))
        + log_gamma(Complex64::new(0.25, 0.0));
    let count = plan.half_line_count();
    let mut nodes = Vec::with_capacity(count + 1);
    for j in 0..=count {
        let u = Complex64::new(plan.sigma(), j as f64 * plan.step());
        let two_u = 2.0 * u;
        let lg = log_gamma(quarter(two_u + 1.0 + it2))
            + log_gamma(quarter(two_u + 1.0 - it2))
            + log_gamma(quarter(two_u + 1.0));
        nodes.push(c_exp(lg - denom + u * u) / u);
    }
    nodes
}

/// The analytic weight `V(y)` for spectral parameter `t`, evaluated on the
/// contour described by `plan`. Requires `y > 0`.
pub fn afe_weight(y: f64, t: &SpectralParameter, plan: &ContourPlan) -> Result<f64> {
    if !(y > 0.0) || !y.is_finite() {
        return Err(Error::NonPositiveArgument("afe_weight argument"));
    }
    let nodes = weight_nodes(t.t(), plan);
    Ok(vertical_line_sum(&nodes, plan, y.ln()))
}

/// Table of `V(alpha·k)` for `k = 1..=k_max` (index `k-1`), sharing one set
/// of contour nodes; each entry agrees with [`afe_weight`] to full
/// precision.
pub fn afe_weight_table(
    alpha: f64,
    t: &SpectralParameter,
    plan: &ContourPlan,
    k_max: usize,
) -> Result<Vec<f64>> {
    if !(alpha > 0.0) || !alpha.is_finite() {
        return Err(Error::NonPositiveArgument("afe_weight_table scale"));
    }
    let nodes = weight_nodes(t.t(), plan);
    let ln_alpha = alpha.ln();
    let mut out = Vec::with_capacity(k_max);
    for k in 1..=k_max {
        out.push(vertical_line_sum(&nodes, plan, ln_alpha + (k as f64).ln()));
    }
    Ok(out)
}
