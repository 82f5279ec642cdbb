//! The gamma-factor kernel and Hankel-type integral transform appearing in
//! the dual side of the summation formula for additively twisted
//! coefficient sums.
//!
//! For spectral parameter `t` and a sign `±`, the kernel on a vertical line
//! is
//!
//! `2π G±(s) = Γ((1+s+it)/2)Γ((1+s-it)/2) / [Γ((-s+it)/2)Γ((-s-it)/2)]`
//! `           ± Γ((2+s+it)/2)Γ((2+s-it)/2) / [Γ((1-s+it)/2)Γ((1-s-it)/2)]`,
//!
//! and the transform of a smooth compactly supported `ψ` is
//!
//! `Ψ±(x) = (1/2πi) ∫_(σ) (π²x)^{-s} G±(s) ψ̃(-s) ds`.
//!
//! `|G±(σ+iτ)|` grows like `τ^{1+2σ}` while `ψ̃(-σ-iτ)` decays like
//! `exp(-c√τ)` for the bumps used here, so the contour must be taken far up
//! (the default plan uses height 3000) but the integral then converges to
//! below 1e-8. [`VoronoiLine`] memoizes `G±(s)·ψ̃(-s)` along a contour so
//! that many evaluations of `Ψ±` cost one phase march each.

use crate::numerics::{cis, KahanSum};
use crate::special_functions::afe::ContourPlan;
use crate::special_functions::bump::{mellin_line, BumpFunction};
use crate::special_functions::gamma::log_gamma;
use crate::special_functions::vertical_line_sum;
use crate::{Complex64, Error, Result};
use alloc::vec::Vec;
use core::f64::consts::PI;
// Provides f64 math methods for builds whose dependency graph omits std;
// when some build has std linked (e.g. through dev-dependencies), std's
// inherent methods shadow the trait and the import sits idle.
#[allow(unused_imports)]
use num_traits::Float;

/// Which of the two dual-sum kernels to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TransformSign {
    Plus,
    Minus,
}

/// Distance from `z` to the nearest pole of `Γ` (the non-positive
/// integers).
fn gamma_pole_distance(z: Complex64) -> f64 {
    if z.re > 0.0 {
        return z.re.hypot(z.im).max(z.re);
    }
    let n = z.re.round().min(0.0);
    (z.re - n).hypot(z.im)
}

const POLE_GUARD: f64 = 1e-8;

/// The kernel `G±(s)` for spectral parameter `t`.
///
/// Returns [`Error::PoleProximity`] when a numerator gamma argument is
/// within 1e-8 of a pole, where the kernel itself blows up. Denominator
/// poles are harmless (the corresponding term vanishes) and are handled
/// naturally.
pub fn voronoi_kernel(s: Complex64, t: f64, sign: TransformSign) -> Result<Complex64> {
    let it = Complex64::new(0.0, t);
    let half = |z: Complex64| z / 2.0;
    let first_num = [half(s + 1.0 + it), half(s + 1.0 - it)];
    let second_num = [half(s + 2.0 + it), half(s + 2.0 - it)];
    for &z in first_num.iter().chain(&second_num) {
        if gamma_pole_distance(z) < POLE_GUARD {
            return Err(Error::PoleProximity);
        }
    }
    let first = c_exp_diff(
        first_num,
        [half(-s + it), half(-s - it)],
    );
    let second = c_exp_diff(
        second_num,
        [half(-s + 1.0 + it), half(-s + 1.0 - it)],
    );
    let combined = match sign {
        TransformSign::Plus => first + second,
        TransformSign::Minus => first - second,
    };
    Ok(combined / (2.0 * PI))
}

/// `exp(Σ ln Γ(num) - Σ ln Γ(den))`, with denominator poles collapsing to
/// zero through the `-∞` real part of the exponent.
fn c_exp_diff(num: [Complex64; 2], den: [Complex64; 2]) -> Complex64 {
    let lg = log_gamma(num[0]) + log_gamma(num[1]) - log_gamma(den[0]) - log_gamma(den[1]);
    if lg.re == f64::NEG_INFINITY {
        return Complex64::new(0.0, 0.0);
    }
    crate::numerics::c_exp(lg)
}

/// `G±(s)·ψ̃(-s)` memoized along the contour of a plan, for fast repeated
/// evaluation of the transform `Ψ±`.
#[derive(Debug, Clone)]
pub struct VoronoiLine {
    plan: ContourPlan,
    nodes_plus: Vec<Complex64>,
    nodes_minus: Vec<Complex64>,
}

impl VoronoiLine {
    pub fn new(psi: &BumpFunction, t: f64, plan: &ContourPlan) -> Result<Self> {
        let count = plan.half_line_count() + 1;
        // ψ̃(-s_j) for s_j = σ + ijh equals conj ψ̃(-σ + ijh) since ψ is real.
        let mellin = mellin_line(psi, -plan.sigma(), plan.step(), count);
        let mut nodes_plus = Vec::with_capacity(count);
        let mut nodes_minus = Vec::with_capacity(count);
        for (j, m) in mellin.iter().enumerate() {
            let s = Complex64::new(plan.sigma(), j as f64 * plan.step());
            let weight = m.conj();
            nodes_plus.push(voronoi_kernel(s, t, TransformSign::Plus)? * weight);
            nodes_minus.push(voronoi_kernel(s, t, TransformSign::Minus)? * weight);
        }
        Ok(Self {
            plan: *plan,
            nodes_plus,
            nodes_minus,
        })
    }

    pub fn plan(&self) -> &ContourPlan {
        &self.plan
    }

    /// `Ψ±(x)`; real for real `t` by conjugate symmetry of the integrand.
    pub fn eval(&self, sign: TransformSign, x: f64) -> Result<f64> {
        if !(x > 0.0) || !x.is_finite() {
            return Err(Error::NonPositiveArgument("transform argument"));
        }
        let nodes = match sign {
            TransformSign::Plus => &self.nodes_plus,
            TransformSign::Minus => &self.nodes_minus,
        };
        let ln_arg = (PI * PI * x).ln();
        Ok(vertical_line_sum(nodes, &self.plan, ln_arg))
    }

    /// `(Ψ⁺(x), Ψ⁻(x))` in one pass. The phase factors `(π²x)^{-s_j}` are
    /// shared by the two sign kernels, so the pair costs one phase march
    /// instead of two; each component reproduces [`Self::eval`] exactly
    /// (identical operation order).
    pub fn eval_pair(&self, x: f64) -> Result<(f64, f64)> {
        if !(x > 0.0) || !x.is_finite() {
            return Err(Error::NonPositiveArgument("transform argument"));
        }
        let ln_arg = (PI * PI * x).ln();
        let radial = (-self.plan.sigma() * ln_arg).exp();
        let delta = cis(-self.plan.step() * ln_arg);
        let mut phase = Complex64::new(1.0, 0.0);
        let mut acc_plus = KahanSum::new();
        let mut acc_minus = KahanSum::new();
        acc_plus.add(0.5 * self.nodes_plus[0].re);
        acc_minus.add(0.5 * self.nodes_minus[0].re);
        for j in 1..self.nodes_plus.len() {
            if j % 512 == 0 {
                // periodic resync keeps the marched phase from drifting
                phase = cis(-(self.plan.step() * j as f64) * ln_arg);
            } else {
                phase *= delta;
            }
            let p = self.nodes_plus[j];
            let m = self.nodes_minus[j];
            acc_plus.add(p.re * phase.re - p.im * phase.im);
            acc_minus.add(m.re * phase.re - m.im * phase.im);
        }
        let finish =
            |acc: KahanSum| 2.0 * acc.value() * radial * self.plan.step() / (2.0 * PI);
        Ok((finish(acc_plus), finish(acc_minus)))
    }
}

/// One-off evaluation of `Ψ±(x)`. Builds a full [`VoronoiLine`] internally;
/// batch callers should construct the line once and reuse it.
pub fn voronoi_transform(
    x: f64,
    t: f64,
    sign: TransformSign,
    psi: &BumpFunction,
    plan: &ContourPlan,
) -> Result<f64> {
    VoronoiLine::new(psi, t, plan)?.eval(sign, x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::{c_exp, c_ln};

    #[test]
    fn kernel_conjugate_symmetry() {
        for &(sr, si, t) in &[(0.5, 3.0, 0.0), (0.5, 40.0, 1.0), (1.2, -7.0, 2.5)] {
            let s = Complex64::new(sr, si);
            for sign in [TransformSign::Plus, TransformSign::Minus] {
                let a = voronoi_kernel(s.conj(), t, sign).unwrap();
                let b = voronoi_kernel(s, t, sign).unwrap().conj();
                assert!((a - b).norm() <= 1e-12 * b.norm().max(1.0), "s={s} t={t}");
            }
        }
    }

    #[test]
    fn kernel_closed_form_at_t_zero() {
        // Duplication and reflection collapse the gamma ratios at t = 0:
        //   G₊(s) =  2^{-2s} Γ(1+s)² / (2π²)
        //   G₋(s) = -2^{-2s} Γ(1+s)² cos(πs) / (2π²)
        // — an algebraically independent evaluation route.
        let ln2 = core::f64::consts::LN_2;
        for &(sr, si) in &[(0.5, 0.3), (0.5, 5.0), (1.2, -2.0), (0.25, 1.0)] {
            let s = Complex64::new(sr, si);
            let base = c_exp(
                2.0 * log_gamma(s + 1.0) - 2.0 * s * Complex64::new(ln2, 0.0)
                    - c_ln(Complex64::new(2.0 * PI * PI, 0.0)),
            );
            let cos_pi_s = {
                let (sx, cx) = (PI * sr).sin_cos();
                Complex64::new(cx * (PI * si).cosh(), -sx * (PI * si).sinh())
            };
            let plus = voronoi_kernel(s, 0.0, TransformSign::Plus).unwrap();
            let minus = voronoi_kernel(s, 0.0, TransformSign::Minus).unwrap();
            // G₊ is the sum of two terms that cancel almost exactly on
            // vertical lines (it decays like e^{-π|τ|} while each term grows
            // polynomially), so its noise floor is eps times the minus
            // combination.
            let floor = 1e-12 * (minus.norm() + 1.0);
            assert!(
                (plus - base).norm() < (1e-10 * base.norm()).max(floor),
                "plus kernel at {s}: {plus} vs {base}"
            );
            let want = -base * cos_pi_s;
            assert!(
                (minus - want).norm() < (1e-10 * want.norm()).max(floor),
                "minus kernel at {s}: {minus} vs {want}"
            );
        }
    }

    #[test]
    fn kernel_polynomial_growth_on_vertical_lines() {
        // The root-sum-square of the two sign combinations grows like
        // τ^{1+2σ} (each combination alone oscillates or cancels); on
        // σ = 1/2, doubling τ multiplies it by ≈ 4.
        let g = |tau: f64| {
            let s = Complex64::new(0.5, tau);
            let p = voronoi_kernel(s, 1.0, TransformSign::Plus).unwrap().norm();
            let m = voronoi_kernel(s, 1.0, TransformSign::Minus).unwrap().norm();
            p.hypot(m)
        };
        let ratio = g(200.0) / g(100.0);
        assert!((ratio - 4.0).abs() < 0.2, "growth ratio {ratio}");
    }

    #[test]
    fn kernel_pole_guard() {
        // s = -1, t = 0 puts a numerator argument exactly at the pole 0.
        assert!(matches!(
            voronoi_kernel(Complex64::new(-1.0, 0.0), 0.0, TransformSign::Plus),
            Err(Error::PoleProximity)
        ));
        // Slightly off the pole: huge but computable.
        let v = voronoi_kernel(Complex64::new(-1.0 + 1e-4, 0.0), 0.0, TransformSign::Plus);
        assert!(v.unwrap().norm() > 1e2);
    }

    fn short_plan(step: f64) -> ContourPlan {
        // The tail of the contour integrand beyond height 3000 contributes
        // less than 1e-10 for the arguments tested here.
        ContourPlan::new(0.5, 3000.0, step).unwrap()
    }

    #[test]
    fn transform_step_error_shrinks_under_refinement() {
        // Measured behaviour on the default-height contour: the step-0.6
        // discretization carries ~1e-6..1e-5 aliasing error for x in
        // [0.8, 20], dropping below 1e-9 at step 0.3.
        let psi = BumpFunction::standard();
        let coarse = VoronoiLine::new(&psi, 1.0, &short_plan(0.6)).unwrap();
        let fine = VoronoiLine::new(&psi, 1.0, &short_plan(0.3)).unwrap();
        let finest = VoronoiLine::new(&psi, 1.0, &short_plan(0.15)).unwrap();
        for &x in &[0.8, 3.0, 20.0] {
            for sign in [TransformSign::Plus, TransformSign::Minus] {
                let a = coarse.eval(sign, x).unwrap();
                let b = fine.eval(sign, x).unwrap();
                let c = finest.eval(sign, x).unwrap();
                assert!((a - b).abs() < 3e-5, "coarse error at x={x}: {a} vs {b}");
                assert!((b - c).abs() < 5e-9, "fine error at x={x}: {b} vs {c}");
                if (a - c).abs() > 1e-8 {
                    assert!(
                        (b - c).abs() < (a - c).abs() / 4.0,
                        "halving the step must cut the error at x={x}"
                    );
                }
            }
        }
    }

    #[test]
    fn transform_contour_shift_invariance() {
        // The integrand is holomorphic in 0 < Re s < 1; shifting σ from 0.5
        // to 0.8 must leave Ψ± unchanged. Height 4000 keeps the truncation
        // tail of the larger-kernel σ = 0.8 line below 1e-10 as well.
        let psi = BumpFunction::standard();
        let base_plan = ContourPlan::new(0.5, 4000.0, 0.25).unwrap();
        let shifted_plan = ContourPlan::new(0.8, 4000.0, 0.25).unwrap();
        let base = VoronoiLine::new(&psi, 1.0, &base_plan).unwrap();
        let shifted = VoronoiLine::new(&psi, 1.0, &shifted_plan).unwrap();
        for &x in &[0.8, 3.0] {
            for sign in [TransformSign::Plus, TransformSign::Minus] {
                let a = base.eval(sign, x).unwrap();
                let b = shifted.eval(sign, x).unwrap();
                assert!((a - b).abs() < 1e-8, "shift at x={x}: {a} vs {b}");
            }
        }
    }

    #[test]
    fn transform_scalar_matches_line_and_scales_linearly() {
        let psi = BumpFunction::standard();
        let tall = BumpFunction::new(1.0, 2.0, 3.0).unwrap();
        let plan = short_plan(0.5);
        let line = VoronoiLine::new(&psi, 0.0, &plan).unwrap();
        let x = 1.3;
        let a = voronoi_transform(x, 0.0, TransformSign::Minus, &psi, &plan).unwrap();
        assert_eq!(a, line.eval(TransformSign::Minus, x).unwrap());
        let b = voronoi_transform(x, 0.0, TransformSign::Minus, &tall, &plan).unwrap();
        assert!((b - 3.0 * a).abs() < 1e-12 * a.abs().max(1.0));
    }

    #[test]
    fn paired_evaluation_reproduces_the_scalar_path() {
        let psi = BumpFunction::standard();
        let line = VoronoiLine::new(&psi, 1.0, &short_plan(0.5)).unwrap();
        for &x in &[0.2, 0.8, 3.0, 777.0] {
            let (p, m) = line.eval_pair(x).unwrap();
            assert_eq!(p, line.eval(TransformSign::Plus, x).unwrap());
            assert_eq!(m, line.eval(TransformSign::Minus, x).unwrap());
        }
        assert!(line.eval_pair(0.0).is_err());
        assert!(line.eval_pair(f64::NAN).is_err());
    }

    #[test]
    fn transform_rejects_bad_arguments() {
        let psi = BumpFunction::standard();
        let line = VoronoiLine::new(&psi, 0.0, &short_plan(0.5)).unwrap();
        assert!(line.eval(TransformSign::Plus, 0.0).is_err());
        assert!(line.eval(TransformSign::Plus, -2.0).is_err());
        assert!(line.eval(TransformSign::Plus, f64::NAN).is_err());
    }
}
