//! Smooth compactly supported test functions and their Mellin transforms.
//!
//! The transform `ψ̃(s) = ∫₀^∞ ψ(x) x^{s-1} dx` is evaluated in the variable
//! `v = ln x` with composite Gauss–Legendre panels; because `ψ` is smooth
//! with all derivatives vanishing at the support endpoints, the quadrature
//! converges spectrally once the panels resolve the oscillation `e^{iτv}`.
//! A batch evaluator marches the phase `e^{iτv}` across an arithmetic grid
//! of heights so whole vertical lines cost one pass over the nodes.

use crate::numerics::{c_exp, cis, KahanComplex, KahanSum};
use crate::{Complex64, Error, Result};
use alloc::vec::Vec;
// Provides f64 math methods for builds whose dependency graph omits std;
// when some build has std linked (e.g. through dev-dependencies), std's
// inherent methods shadow the trait and the import sits idle.
#[allow(unused_imports)]
use num_traits::Float;

/// A scaled `C^∞` bump supported on `[lo, hi]`:
///
/// `ψ(x) = amplitude · exp(1 - 1/(1 - u²))`, `u = (2x - lo - hi)/(hi - lo)`,
///
/// so the peak value is `amplitude` at the midpoint. The default is the unit
/// bump on `[1, 2]`, `ψ(x) = exp(1 - 1/(1 - (2x-3)²))`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BumpFunction {
    lo: f64,
    hi: f64,
    amplitude: f64,
}

impl BumpFunction {
    pub fn new(lo: f64, hi: f64, amplitude: f64) -> Result<Self> {
        if !(lo.is_finite() && hi.is_finite() && amplitude.is_finite()) || lo <= 0.0 || hi <= lo {
            return Err(Error::DomainError("bump support must satisfy 0 < lo < hi"));
        }
        Ok(Self { lo, hi, amplitude })
    }

    /// The unit bump on `[1, 2]`.
    pub fn standard() -> Self {
        Self {
            lo: 1.0,
            hi: 2.0,
            amplitude: 1.0,
        }
    }

    pub fn support(&self) -> (f64, f64) {
        (self.lo, self.hi)
    }

    pub fn amplitude(&self) -> f64 {
        self.amplitude
    }

    /// `ψ(x)`; identically zero outside the open support.
    pub fn eval(&self, x: f64) -> f64 {
        let u = (2.0 * x - self.lo - self.hi) / (self.hi - self.lo);
        if u.abs() >= 1.0 {
            return 0.0;
        }
        self.amplitude * (1.0 - 1.0 / (1.0 - u * u)).exp()
    }
}

/// Abscissas and weights of 10-point Gauss–Legendre quadrature on `[-1, 1]`
/// (positive half; mirror for the negative nodes).
const GL10_X: [f64; 5] = [
    0.148_874_338_981_631_21,
    0.433_395_394_129_247_19,
    0.679_409_568_299_024_4,
    0.865_063_366_688_984_5,
    0.973_906_528_517_171_7,
];
const GL10_W: [f64; 5] = [
    0.295_524_224_714_752_87,
    0.269_266_719_309_996_35,
    0.219_086_362_515_982_04,
    0.149_451_349_150_580_59,
    0.066_671_344_308_688_14,
];

/// Log-variable quadrature nodes for a bump: pairs `(vᵢ, wᵢ·ψ(e^{vᵢ}))` such
/// that `ψ̃(s) = Σᵢ cᵢ e^{s·vᵢ}` with `cᵢ` the second member.
fn log_nodes(psi: &BumpFunction, max_height: f64) -> Vec<(f64, f64)> {
    let a = psi.lo.ln();
    let b = psi.hi.ln();
    let len = b - a;
    // Resolve e^{iτv}: about 4 panels per oscillation period at the largest
    // height, with a generous floor for the plain smooth part.
    let panels = ((len * max_height / 4.0).ceil() as usize).max(40);
    let h = len / panels as f64;
    let mut nodes = Vec::with_capacity(panels * 10);
    for p in 0..panels {
        let mid = a + (p as f64 + 0.5) * h;
        let half = 0.5 * h;
        for i in 0..5 {
            for &sgn in &[-1.0f64, 1.0] {
                let v = mid + sgn * half * GL10_X[i];
                let w = half * GL10_W[i];
                nodes.push((v, w * psi.eval(v.exp())));
            }
        }
    }
    nodes
}

/// Mellin transform `ψ̃(s) = ∫ ψ(x) x^{s-1} dx` at one point.
pub fn mellin(psi: &BumpFunction, s: Complex64) -> Complex64 {
    let mut acc = KahanComplex::new();
    for &(v, c) in &log_nodes(psi, s.im.abs()) {
        acc.add(c * c_exp(s * v));
    }
    acc.value()
}

/// `∫ ψ(x) x^{s-1} ln x dx`, the derivative `ψ̃'(s)`.
pub fn mellin_log_weighted(psi: &BumpFunction, s: Complex64) -> Complex64 {
    let mut acc = KahanComplex::new();
    for &(v, c) in &log_nodes(psi, s.im.abs()) {
        acc.add(c * v * c_exp(s * v));
    }
    acc.value()
}

/// `ψ̃` sampled along the vertical segment `s = sigma + i·k·step` for
/// `k = 0..count`, using one set of quadrature nodes and a marched phase.
///
/// Phases are recomputed from scratch every 512 steps to stop rounding
/// drift; values agree with pointwise [`mellin`] to full precision.
pub fn mellin_line(psi: &BumpFunction, sigma: f64, step: f64, count: usize) -> Vec<Complex64> {
    let max_height = step * count.saturating_sub(1) as f64;
    let nodes = log_nodes(psi, max_height);
    let amps: Vec<f64> = nodes.iter().map(|&(v, c)| c * (sigma * v).exp()).collect();
    let deltas: Vec<Complex64> = nodes.iter().map(|&(v, _)| cis(step * v)).collect();
    let mut phases: Vec<Complex64> = nodes.iter().map(|_| Complex64::new(1.0, 0.0)).collect();
    let mut out = Vec::with_capacity(count);
    for k in 0..count {
        if k > 0 && k % 512 == 0 {
            let tau = step * k as f64;
            for (ph, &(v, _)) in phases.iter_mut().zip(&nodes) {
                *ph = cis(tau * v);
            }
        }
        let mut re = KahanSum::new();
        let mut im = KahanSum::new();
        for (a, p) in amps.iter().zip(&phases) {
            re.add(a * p.re);
            im.add(a * p.im);
        }
        out.push(Complex64::new(re.value(), im.value()));
        for (p, d) in phases.iter_mut().zip(&deltas) {
            *p *= *d;
        }
    }
    out
}
