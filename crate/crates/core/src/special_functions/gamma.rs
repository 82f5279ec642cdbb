//! Complex log-gamma.
//!
//! Lanczos approximation (g = 7, 9 terms) on the half-plane `Re z >= 0.5`,
//! extended by the reflection formula elsewhere. The reflection path
//! evaluates `ln sin(πz)` through asymptotic branches for large `|Im z|`, so
//! the function stays finite and accurate far up the critical strip, where
//! `sin(πz)` itself would overflow.
//!
//! The imaginary part may differ from the principal determination by a
//! multiple of `2πi`; every consumer in this crate exponentiates sums and
//! differences of `log_gamma` values, which is insensitive to such slips.

use crate::numerics::{c_exp, c_ln, c_ln_1p};
use crate::Complex64;
use core::f64::consts::PI;
// Provides f64 math methods for builds whose dependency graph omits std;
// when some build has std linked (e.g. through dev-dependencies), std's
// inherent methods shadow the trait and the import sits idle.
#[allow(unused_imports)]
use num_traits::Float;

const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

const LN_2PI_HALF: f64 = 0.918_938_533_204_672_7; // ln(2π)/2
const LN_PI: f64 = 1.144_729_885_849_400_2;
const LN_2: f64 = core::f64::consts::LN_2;

/// `ln sin(πz)`, stable for all imaginary parts.
fn ln_sin_pi(z: Complex64) -> Complex64 {
    let y = z.im;
    if y.abs() < 8.0 {
        let (sx, cx) = (PI * z.re).sin_cos();
        let s = Complex64::new(sx * (PI * y).cosh(), cx * (PI * y).sinh());
        c_ln(s)
    } else if y > 0.0 {
        // sin(πz) = -e^{-iπz}(1 - e^{2πiz}) / (2i); |e^{2πiz}| = e^{-2πy} << 1
        let base = Complex64::new(-LN_2, PI / 2.0);
        let lead = Complex64::new(PI * y, -PI * z.re);
        let small = c_exp(Complex64::new(-2.0 * PI * y, 2.0 * PI * z.re));
        base + lead + c_ln_1p(-small)
    } else {
        let base = Complex64::new(-LN_2, -PI / 2.0);
        let lead = Complex64::new(-PI * y, PI * z.re);
        let small = c_exp(Complex64::new(2.0 * PI * y, -2.0 * PI * z.re));
        base + lead + c_ln_1p(-small)
    }
}

/// `ln Γ(z)` for complex `z`.
///
/// Non-finite values are returned at the poles (`z = 0, -1, -2, ...`);
/// callers that can approach a pole must guard the distance themselves.
pub fn log_gamma(z: Complex64) -> Complex64 {
    if z.re < 0.5 {
        // Γ(z)Γ(1-z) = π / sin(πz)
        let reflected = log_gamma(Complex64::new(1.0 - z.re, -z.im));
        return Complex64::new(LN_PI, 0.0) - ln_sin_pi(z) - reflected;
    }
    let w = z - 1.0;
    let mut acc = Complex64::new(LANCZOS[0], 0.0);
    for (k, &c) in LANCZOS.iter().enumerate().skip(1) {
        acc += c / (w + k as f64);
    }
    let t = w + LANCZOS_G + 0.5;
    Complex64::new(LN_2PI_HALF, 0.0) + (w + 0.5) * c_ln(t) - t + c_ln(acc)
}

/// `Γ(z)` via `exp(log_gamma(z))`; overflows to infinity for large real
/// parts.
pub fn gamma(z: Complex64) -> Complex64 {
    c_exp(log_gamma(z))
}

/// Euler's reflection combination `Γ(z)·Γ(1-z)·sin(πz)/π`, which is exactly
/// 1 away from the poles. Exposed for the verification suite.
pub fn reflection_defect(z: Complex64) -> Complex64 {
    let lg = log_gamma(z) + log_gamma(Complex64::new(1.0, 0.0) - z) + ln_sin_pi(z);
    c_exp(lg - Complex64::new(LN_PI, 0.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    /// Independent oracle: Stirling's series with Bernoulli corrections at a
    /// recurrence-shifted argument (`Re >= 20`), where the asymptotic series
    /// is accurate to well below 1e-13.
    fn log_gamma_stirling(z: Complex64) -> Complex64 {
        // B_{2k} / (2k (2k-1)) for k = 1..8
        const COEF: [f64; 8] = [
            1.0 / 12.0,
            -1.0 / 360.0,
            1.0 / 1260.0,
            -1.0 / 1680.0,
            1.0 / 1188.0,
            -691.0 / 360_360.0,
            1.0 / 156.0,
            -3617.0 / 122_400.0,
        ];
        let mut shift = Complex64::new(0.0, 0.0);
        let mut w = z;
        while w.re < 20.0 {
            shift += c_ln(w);
            w += 1.0;
        }
        let mut series = Complex64::new(0.0, 0.0);
        let w2 = w * w;
        let mut pow = w;
        for &c in &COEF {
            series += c / pow;
            pow *= w2;
        }
        (w - 0.5) * c_ln(w) - w + Complex64::new(super::LN_2PI_HALF, 0.0) + series - shift
    }

    /// Deviation measured multiplicatively, so 2πi branch slips do not count.
    fn mult_defect(a: Complex64, b: Complex64) -> f64 {
        (c_exp(a - b) - Complex64::new(1.0, 0.0)).norm()
    }

    #[test]
    fn real_axis_classics() {
        let lg = |x: f64| log_gamma(Complex64::new(x, 0.0)).re;
        assert!(lg(1.0).abs() < 1e-14);
        assert!(lg(2.0).abs() < 1e-14);
        assert!((lg(5.0) - 24f64.ln()).abs() < 1e-13);
        assert!((lg(0.5) - 0.5 * PI.ln()).abs() < 1e-14);
        // Γ(1/4), which normalizes one of the analytic weights downstream.
        assert!((lg(0.25).exp() - 3.625_609_908_221_908_3).abs() < 1e-12);
    }

    #[test]
    fn matches_stirling_oracle_on_grid() {
        let mut worst = 0.0f64;
        for &re in &[-50.0, -7.3, -0.2, 0.25, 0.5, 1.0, 3.75, 17.0, 50.0] {
            for &im in &[0.0, 0.5, -2.25, 9.0, -42.0, 300.0, -1600.0] {
                let z = Complex64::new(re, im);
                if im == 0.0 && re <= 0.5 && (re - re.round()).abs() < 0.05 {
                    continue; // stay away from the poles
                }
                let d = mult_defect(log_gamma(z), log_gamma_stirling(z));
                worst = worst.max(d);
            }
        }
        assert!(worst < 1e-11, "worst multiplicative defect {worst:e}");
    }

    #[test]
    fn recurrence_and_reflection() {
        for &(re, im) in &[(0.3, 14.0), (-3.6, -0.7), (1.0, 1600.0), (-20.2, 55.0)] {
            let z = Complex64::new(re, im);
            let rec = mult_defect(log_gamma(z + 1.0), log_gamma(z) + c_ln(z));
            assert!(rec < 1e-11, "recurrence at {z}: {rec:e}");
            let refl = (reflection_defect(z) - Complex64::new(1.0, 0.0)).norm();
            assert!(refl < 1e-11, "reflection at {z}: {refl:e}");
        }
    }

    #[test]
    fn duplication_formula() {
        // Γ(2z) = Γ(z) Γ(z+1/2) 2^{2z-1} / √π
        for &(re, im) in &[(0.75, 0.0), (0.25, 6.0), (-1.3, 2.0), (5.0, -80.0)] {
            let z = Complex64::new(re, im);
            let lhs = log_gamma(2.0 * z);
            let rhs = log_gamma(z) + log_gamma(z + 0.5)
                + (2.0 * z - 1.0) * Complex64::new(LN_2, 0.0)
                - Complex64::new(0.5 * LN_PI, 0.0);
            assert!(mult_defect(lhs, rhs) < 1e-11, "duplication at {z}");
        }
    }

    #[test]
    fn conjugate_symmetry() {
        for &(re, im) in &[(0.5, 3.0), (-4.2, 17.0), (2.0, 900.0)] {
            let z = Complex64::new(re, im);
            let a = log_gamma(z.conj());
            let b = log_gamma(z).conj();
            assert!(mult_defect(a, b) < 1e-12);
        }
    }

    #[test]
    fn poles_blow_up() {
        // At z = 0 the reflection hits sin(0) exactly and the result is
        // infinite; at other non-positive integers floating `sin(πx)` is a
        // few ulps from zero, so the value is finite but astronomically
        // large (the pole resolved at distance ~1e-16).
        let v0 = log_gamma(Complex64::new(0.0, 0.0));
        assert!(!v0.re.is_finite());
        for &x in &[-1.0, -5.0] {
            let v = log_gamma(Complex64::new(x, 0.0));
            assert!(!v.re.is_finite() || v.re > 30.0, "lnΓ({x}) = {v}");
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(128))]

        #[test]
        fn prop_matches_stirling(re in -30.0f64..30.0, im in -1200.0f64..1200.0) {
            let z = Complex64::new(re, im);
            // Keep a safe distance from the pole line.
            prop_assume!(im.abs() > 0.05 || re > 0.5 || (re - re.round()).abs() > 0.05);
            let d = mult_defect(log_gamma(z), log_gamma_stirling(z));
            prop_assert!(d < 1e-10, "defect {d:e} at {z}");
        }
    }
}
