//! Adaptive Gauss-Kronrod (7/15) quadrature of complex-valued integrands.

use crate::cpoly::{C64, ZERO};

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_8,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

fn kronrod<F: Fn(f64) -> C64>(f: &F, a: f64, b: f64) -> (C64, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut k = fc * WGK[7];
    let mut g = fc * WG[3];
    for j in 0..7 {
        let x = h * XGK[j];
        let s = f(c - x) + f(c + x);
        k += s * WGK[j];
        if j % 2 == 1 {
            g += s * WG[j / 2];
        }
    }
    (k * h, ((k - g) * h).norm())
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QuadResult {
    pub value: C64,
    pub error: f64,
    pub evaluations: usize,
}

/// Integrates `f` over `[a, b]` by bisecting the worst panel until the summed
/// error estimate is below `tol` or `max_panels` is reached.
pub fn integrate<F: Fn(f64) -> C64>(f: F, a: f64, b: f64, tol: f64) -> QuadResult {
    const MAX_PANELS: usize = 4000;
    let (v, e) = kronrod(&f, a, b);
    let mut panels = vec![(a, b, v, e)];
    let mut evaluations = 15;
    loop {
        let err: f64 = panels.iter().map(|p| p.3).sum();
        if err <= tol || panels.len() >= MAX_PANELS {
            let value = panels.iter().fold(ZERO, |s, p| s + p.2);
            return QuadResult { value, error: err, evaluations };
        }
        let worst = panels
            .iter()
            .enumerate()
            .max_by(|x, y| x.1 .3.total_cmp(&y.1 .3))
            .map(|x| x.0)
            .expect("nonempty");
        let (lo, hi, _, _) = panels.swap_remove(worst);
        let mid = 0.5 * (lo + hi);
        let (v1, e1) = kronrod(&f, lo, mid);
        let (v2, e2) = kronrod(&f, mid, hi);
        evaluations += 30;
        panels.push((lo, mid, v1, e1));
        panels.push((mid, hi, v2, e2));
    }
}

/// Integral over `[a, b]` of an integrand with square-root behaviour at both
/// ends, via `x = a + (b - a) sin^2(theta)`.
pub fn integrate_sqrt_ends<F: Fn(f64) -> C64>(f: F, a: f64, b: f64, tol: f64) -> QuadResult {
    let w = b - a;
    integrate(
        |t| {
            let s = t.sin();
            f(a + w * s * s) * (w * (2.0 * t).sin())
        },
        0.0,
        std::f64::consts::FRAC_PI_2,
        tol,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn polynomials_and_semicircle() {
        let r = integrate(|x| C64::new(x * x * x * x, 0.0), -1.0, 2.0, 1e-13);
        assert!((r.value.re - 33.0 / 5.0).abs() < 1e-12);
        let r = integrate_sqrt_ends(|x| C64::new((1.0 - x * x).max(0.0).sqrt(), 0.0), -1.0, 1.0, 1e-13);
        assert!((r.value.re - PI / 2.0).abs() < 1e-12);
        let r = integrate(|x| C64::new(0.0, x.cos()), 0.0, PI / 2.0, 1e-13);
        assert!((r.value.im - 1.0).abs() < 1e-13);
    }
}
