//! Shared numerical conventions and helpers: the additive character
//! `e(x) = exp(2πi·x)`, compensated (Kahan–Neumaier) summation, complex
//! scalar helpers, and a small dense linear solver.

use crate::Complex64;
use core::f64::consts::PI;
// Provides f64 math methods for builds whose dependency graph omits std;
// when some build has std linked (e.g. through dev-dependencies), std's
// inherent methods shadow the trait and the import sits idle.
#[allow(unused_imports)]
use num_traits::Float;

/// Euler–Mascheroni constant.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// `cos θ + i sin θ`.
#[inline]
pub fn cis(theta: f64) -> Complex64 {
    let (s, c) = theta.sin_cos();
    Complex64::new(c, s)
}

/// The additive character `e(x) = exp(2πi·x)`, fixed project-wide.
#[inline]
pub fn e(x: f64) -> Complex64 {
    cis(2.0 * PI * x)
}

/// Principal-branch complex logarithm.
#[inline]
pub fn c_ln(z: Complex64) -> Complex64 {
    Complex64::new(0.5 * z.norm_sqr().ln(), z.im.atan2(z.re))
}

/// Complex exponential.
#[inline]
pub fn c_exp(z: Complex64) -> Complex64 {
    let r = z.re.exp();
    let (s, c) = z.im.sin_cos();
    Complex64::new(r * c, r * s)
}

/// `ln(1 + z)`, accurate for small `|z|`.
#[inline]
pub fn c_ln_1p(z: Complex64) -> Complex64 {
    Complex64::new(
        0.5 * (2.0 * z.re + z.norm_sqr()).ln_1p(),
        z.im.atan2(1.0 + z.re),
    )
}

/// `(exp(z) - 1) / z`, continuous through `z = 0`.
///
/// Evaluated by its Taylor series for small `|z|` so the removable
/// singularity costs no precision.
pub fn c_expm1_over(z: Complex64) -> Complex64 {
    if z.norm_sqr() < 0.25 {
        // sum_{k>=0} z^k / (k+1)!  — 16 terms reach full f64 precision
        // for |z| <= 0.5.
        let mut term = Complex64::new(1.0, 0.0);
        let mut sum = term;
        for k in 1..16u32 {
            term = term * z / ((k + 1) as f64);
            sum += term;
        }
        sum
    } else {
        (c_exp(z) - 1.0) / z
    }
}

/// Compensated accumulator (Neumaier's variant of Kahan summation).
///
/// Adding the same sequence in the same order is bit-deterministic; the
/// compensation keeps long family reductions accurate to a few ulps of the
/// true sum.
#[derive(Debug, Clone, Copy, Default)]
pub struct KahanSum {
    sum: f64,
    compensation: f64,
}

impl KahanSum {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.compensation += (self.sum - t) + x;
        } else {
            self.compensation += (x - t) + self.sum;
        }
        self.sum = t;
    }

    #[inline]
    pub fn value(&self) -> f64 {
        self.sum + self.compensation
    }
}

/// Compensated complex accumulator (componentwise [`KahanSum`]).
#[derive(Debug, Clone, Copy, Default)]
pub struct KahanComplex {
    re: KahanSum,
    im: KahanSum,
}

impl KahanComplex {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub fn add(&mut self, z: Complex64) {
        self.re.add(z.re);
        self.im.add(z.im);
    }

    #[inline]
    pub fn value(&self) -> Complex64 {
        Complex64::new(self.re.value(), self.im.value())
    }
}

/// Solve the dense system `A x = b` in place by Gaussian elimination with
/// partial pivoting. `a` is row-major `n × n`. Returns `None` for a
/// numerically singular system.
///
/// Used only for tiny least-squares normal equations; no external linear
/// algebra is warranted for a 6×6 solve.
pub fn solve_dense(a: &mut [f64], b: &mut [f64], n: usize) -> Option<()> {
    debug_assert_eq!(a.len(), n * n);
    debug_assert_eq!(b.len(), n);
    for col in 0..n {
        // Pivot selection.
        let mut pivot = col;
        let mut best = a[col * n + col].abs();
        for row in (col + 1)..n {
            let v = a[row * n + col].abs();
            if v > best {
                best = v;
                pivot = row;
            }
        }
        if best < 1e-300 {
            return None;
        }
        if pivot != col {
            for k in 0..n {
                a.swap(col * n + k, pivot * n + k);
            }
            b.swap(col, pivot);
        }
        let inv = 1.0 / a[col * n + col];
        for row in (col + 1)..n {
            let factor = a[row * n + col] * inv;
            if factor == 0.0 {
                continue;
            }
            for k in col..n {
                a[row * n + k] -= factor * a[col * n + k];
            }
            b[row] -= factor * b[col];
        }
    }
    for col in (0..n).rev() {
        let mut acc = b[col];
        for k in (col + 1)..n {
            acc -= a[col * n + k] * b[k];
        }
        b[col] = acc / a[col * n + col];
    }
    Some(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn additive_character_convention() {
        // e(0) = 1, e(1/2) = -1, e(1/4) = i.
        assert!((e(0.0) - Complex64::new(1.0, 0.0)).norm() < 1e-15);
        assert!((e(0.5) - Complex64::new(-1.0, 0.0)).norm() < 1e-15);
        assert!((e(0.25) - Complex64::new(0.0, 1.0)).norm() < 1e-15);
        // Periodicity and the group law.
        assert!((e(0.3) * e(0.4) - e(0.7)).norm() < 1e-15);
    }

    #[test]
    fn complex_ln_exp_round_trip() {
        let samples = [
            Complex64::new(1.5, 0.3),
            Complex64::new(-2.0, 1.0),
            Complex64::new(0.1, -7.0),
            Complex64::new(-0.5, -0.001),
        ];
        for z in samples {
            let w = c_exp(c_ln(z));
            assert!((w - z).norm() < 1e-14 * z.norm());
        }
    }

    #[test]
    fn ln_1p_accurate_for_tiny_arguments() {
        let z = Complex64::new(3e-18, -4e-18);
        let w = c_ln_1p(z);
        // ln(1+z) = z - z^2/2 + ... ; for |z| ~ 1e-18 the linear term is exact.
        assert!((w - z).norm() < 1e-30);
    }

    #[test]
    fn expm1_over_continuity() {
        // Series branch against direct evaluation on either side of the cut.
        for &r in &[0.4999, 0.5001, 0.1, 1.0, 3.0] {
            let z = Complex64::new(r * 0.6, -r * 0.8);
            let series = c_expm1_over(z);
            let direct = (c_exp(z) - 1.0) / z;
            assert!((series - direct).norm() < 1e-13);
        }
        assert!((c_expm1_over(Complex64::new(0.0, 0.0)) - 1.0).norm() == 0.0);
    }

    #[test]
    fn kahan_beats_naive_on_adversarial_sum() {
        // 1 followed by many tiny values that naive summation drops entirely.
        let tiny = 1e-16;
        let n = 100_000;
        let mut kahan = KahanSum::new();
        let mut naive = 0.0f64;
        kahan.add(1.0);
        naive += 1.0;
        for _ in 0..n {
            kahan.add(tiny);
            naive += tiny;
        }
        let exact = 1.0 + n as f64 * tiny;
        assert!((kahan.value() - exact).abs() < 1e-15);
        assert!((naive - exact).abs() > 1e-12, "naive must actually lose here");
    }

    #[test]
    fn dense_solver_recovers_known_solution() {
        // 3x3 with known solution (1, -2, 3).
        let mut a = [2.0, 1.0, -1.0, -3.0, -1.0, 2.0, -2.0, 1.0, 2.0];
        let x_true = [1.0, -2.0, 3.0];
        let mut b = [0.0; 3];
        for i in 0..3 {
            b[i] = (0..3).map(|j| a[i * 3 + j] * x_true[j]).sum();
        }
        solve_dense(&mut a, &mut b, 3).unwrap();
        for i in 0..3 {
            assert!((b[i] - x_true[i]).abs() < 1e-12);
        }
    }

    #[test]
    fn dense_solver_rejects_singular() {
        let mut a = [1.0, 2.0, 2.0, 4.0];
        let mut b = [1.0, 2.0];
        assert!(solve_dense(&mut a, &mut b, 2).is_none());
    }
}
