//! Analytic machinery: complex log-gamma, smooth bump test functions with
//! Mellin-transform evaluators, the central-value weight function, and the
//! dual-sum transform kernel.

pub mod afe;
pub mod bump;
pub mod gamma;
pub mod voronoi;

pub use afe::{afe_weight, afe_weight_table, ContourPlan, SpectralParameter};
pub use bump::{mellin, mellin_line, mellin_log_weighted, BumpFunction};
pub use gamma::{gamma, log_gamma};
pub use voronoi::{voronoi_kernel, voronoi_transform, TransformSign, VoronoiLine};

use crate::numerics::{cis, KahanSum};
use crate::Complex64;
// Provides f64 math methods for builds whose dependency graph omits std;
// when some build has std linked (e.g. through dev-dependencies), std's
// inherent methods shadow the trait and the import sits idle.
#[allow(unused_imports)]
use num_traits::Float;

/// Trapezoid value of `(1/2πi) ∫_(σ) a^{-s} F(s) ds` from precomputed node
/// values `nodes[j] = F(σ + i·j·step)` on the upper half-line, assuming the
/// conjugate symmetry `F(s̄) = conj F(s)` (so the integral is real and the
/// lower half-line pairs with the upper one).
///
/// `ln_arg` is `ln a`. The phase `a^{-iτ}` is marched multiplicatively and
/// resynchronized every 512 nodes.
pub(crate) fn vertical_line_sum(nodes: &[Complex64], plan: &ContourPlan, ln_arg: f64) -> f64 {
    let radial = (-plan.sigma() * ln_arg).exp();
    let delta = cis(-plan.step() * ln_arg);
    let mut phase = Complex64::new(1.0, 0.0);
    let mut acc = KahanSum::new();
    acc.add(0.5 * nodes[0].re);
    for (j, w) in nodes.iter().enumerate().skip(1) {
        if j % 512 == 0 {
            phase = cis(-(plan.step() * j as f64) * ln_arg);
        } else {
            phase *= delta;
        }
        acc.add(w.re * phase.re - w.im * phase.im);
    }
    2.0 * acc.value() * radial * plan.step() / (2.0 * core::f64::consts::PI)
}
