//! Residue distributions of ratios of consecutive polynomials and the analytic
//! densities of their weak limits for `p_{n+1} = Q1 p_n + Q2 p_{n-1}` with real
//! linear `Q1` and real `Q2` of degree at most two.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::cpoly::{self, sort_canonical, ComplexPoly, C64, ZERO};
use crate::error::{Error, Result};
use crate::{hp, quad};
use crate::recurrence::PolySequence;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Atom {
    pub pole: C64,
    pub weight: C64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ResidueMeasure {
    pub atoms: Vec<Atom>,
    pub simple_poles_only: bool,
}

impl ResidueMeasure {
    pub fn empty() -> Self {
        ResidueMeasure { atoms: Vec::new(), simple_poles_only: true }
    }

    pub fn mass(&self) -> C64 {
        self.atoms.iter().map(|a| a.weight).sum()
    }

    /// `sum w_m z_m^j` for `j < count`.
    pub fn moments(&self, count: usize) -> Vec<C64> {
        (0..count)
            .map(|j| self.atoms.iter().map(|a| a.weight * a.pole.powu(j as u32)).sum())
            .collect()
    }
}

/// A double root splits into two roots about `sqrt(tol)` apart.
fn check_simple(raw: &[C64], tol: f64) -> Result<()> {
    let radius = tol.sqrt();
    for (i, a) in raw.iter().enumerate() {
        for b in &raw[i + 1..] {
            if (a - b).norm() <= radius * a.norm().max(1.0) {
                return Err(Error::MultiplePole(format!("{}", (a + b) / 2.0)));
            }
        }
    }
    Ok(())
}

/// Atoms at the zeros of `den` weighted by `num(z)/den'(z)`.
pub fn residue_measure(num: &ComplexPoly, den: &ComplexPoly, tol: f64) -> Result<ResidueMeasure> {
    if den.is_zero() || den.degree() < 1 {
        return Err(Error::Invalid("denominator needs degree >= 1".into()));
    }
    let raw = cpoly::roots_raw(den)?;
    check_simple(&raw, tol)?;
    let dd = den.derivative();
    let mut atoms = Vec::with_capacity(raw.len());
    for z in raw {
        let (d, _, scale) = dd.eval_full(z);
        if d.norm() <= tol * scale.max(f64::MIN_POSITIVE) {
            return Err(Error::MultiplePole(format!("{z}")));
        }
        atoms.push(Atom { pole: z, weight: hp::simple_residue(num, den, z) });
    }
    sort_canonical(&mut atoms, |a| a.pole);
    Ok(ResidueMeasure { atoms, simple_poles_only: true })
}

/// Residue measure of `f_{j+1}/f_j` (or of `f_j/f_{j+1}` when `inverse`) for
/// sequence terms `f_j`, with both terms evaluated by running the recurrence.
pub fn sequence_residue_measure(seq: &PolySequence, j: usize, inverse: bool, tol: f64) -> Result<ResidueMeasure> {
    let pole_index = if inverse { j + 1 } else { j };
    let poles = seq.zeros(pole_index)?;
    check_simple(&poles, tol)?;
    let mut atoms = Vec::with_capacity(poles.len());
    for z in poles {
        let w = seq.window(z, j + 1, 2);
        let (vj, dj) = w.get(j);
        let (vn, dn) = w.get(j + 1);
        let weight = if inverse { vj / dn } else { vn / dj };
        atoms.push(Atom { pole: z, weight });
    }
    sort_canonical(&mut atoms, |a| a.pole);
    Ok(ResidueMeasure { atoms, simple_poles_only: true })
}

fn real_coeffs(p: &ComplexPoly) -> Result<Vec<f64>> {
    if !p.is_real(1e-12 * p.norm().max(1.0)) {
        return Err(Error::NotRealCoefficients);
    }
    Ok(p.coeffs().iter().map(|c| c.re).collect())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SupportCase {
    Interval,
    Circle,
    Union,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CaseClassification {
    /// Root of `Q1`.
    pub c: f64,
    /// Roots of `Q1^2 + 4 Q2`; `d <= e` when real, `d` in the lower half plane
    /// otherwise.
    pub d: C64,
    pub e: C64,
    pub case: u8,
}

impl CaseClassification {
    pub fn support(&self) -> SupportCase {
        match self.case {
            1 => SupportCase::Interval,
            2 => SupportCase::Circle,
            _ => SupportCase::Union,
        }
    }
}

fn radicand(q1: &ComplexPoly, q2: &ComplexPoly) -> ComplexPoly {
    &(q1 * q1) + &q2.scale(C64::new(4.0, 0.0))
}

pub fn classify_case(q1: &ComplexPoly, q2: &ComplexPoly) -> Result<CaseClassification> {
    let a1 = real_coeffs(q1)?;
    real_coeffs(q2)?;
    if q1.degree() != 1 || q2.degree() > 2 {
        return Err(Error::Invalid("classification needs deg Q1 = 1 and deg Q2 <= 2".into()));
    }
    let rad = radicand(q1, q2);
    if rad.degree() != 2 {
        return Err(Error::Invalid("Q1^2 + 4 Q2 must have degree 2".into()));
    }
    let c = -a1[0] / a1[1];
    let r = cpoly::roots_raw(&rad)?;
    let scale = r[0].norm().max(r[1].norm()).max(1.0);
    if r[0].im.abs() <= 1e-12 * scale && r[1].im.abs() <= 1e-12 * scale {
        let (d, e) = if r[0].re <= r[1].re { (r[0].re, r[1].re) } else { (r[1].re, r[0].re) };
        let case = if c >= d && c <= e { 1 } else { 3 };
        Ok(CaseClassification { c, d: C64::new(d, 0.0), e: C64::new(e, 0.0), case })
    } else {
        let (d, e) = if r[0].im < 0.0 { (r[0], r[1]) } else { (r[1], r[0]) };
        Ok(CaseClassification { c, d, e, case: 2 })
    }
}

fn interval_ends(q1: &ComplexPoly, q2: &ComplexPoly) -> Result<(f64, f64)> {
    let cc = classify_case(q1, q2)?;
    if cc.case == 2 {
        return Err(Error::Invalid("no real interval in the circle case".into()));
    }
    Ok((cc.d.re, cc.e.re))
}

fn inside(x: f64, d: f64, e: f64) -> bool {
    let slack = 1e-12 * (e - d).abs().max(1.0);
    x >= d - slack && x <= e + slack
}

/// `(1/2pi) sqrt(-(Q1^2 + 4 Q2))` on `[D, E]`.
pub fn interval_density(q1: &ComplexPoly, q2: &ComplexPoly, x: f64) -> Result<f64> {
    let (d, e) = interval_ends(q1, q2)?;
    if !inside(x, d, e) {
        return Err(Error::OutsideSupport(x));
    }
    Ok(interval_density_unchecked(q1, q2, x))
}

fn interval_density_unchecked(q1: &ComplexPoly, q2: &ComplexPoly, x: f64) -> f64 {
    let r = radicand(q1, q2).eval(C64::new(x, 0.0)).re;
    (-r).max(0.0).sqrt() / (2.0 * PI)
}

pub const QUAD_TOL: f64 = 1e-13;

/// `int_D^E interval_density`.
pub fn interval_mass(q1: &ComplexPoly, q2: &ComplexPoly) -> Result<f64> {
    let (d, e) = interval_ends(q1, q2)?;
    Ok(quad::integrate_sqrt_ends(|x| C64::new(interval_density_unchecked(q1, q2, x), 0.0), d, e, QUAD_TOL).value.re)
}

fn q2_check(q2: &ComplexPoly, d: f64, e: f64) -> Result<()> {
    if q2.degree() == 0 {
        return if q2.is_zero() { Err(Error::Q2VanishesOnSupport) } else { Ok(()) };
    }
    for r in cpoly::roots_raw(q2)? {
        if r.im.abs() <= 1e-12 * r.norm().max(1.0) && inside(r.re, d, e) {
            return Err(Error::Q2VanishesOnSupport);
        }
    }
    Ok(())
}

/// Density of the limit of the residue measures of `p_n/p_{n+1}`:
/// `-(1/2pi) sqrt(-(Q1^2 + 4 Q2)) / Q2`.
pub fn tilde_density(q1: &ComplexPoly, q2: &ComplexPoly, x: f64) -> Result<f64> {
    let (d, e) = interval_ends(q1, q2)?;
    q2_check(q2, d, e)?;
    if !inside(x, d, e) {
        return Err(Error::OutsideSupport(x));
    }
    Ok(tilde_unchecked(q1, q2, x))
}

fn tilde_unchecked(q1: &ComplexPoly, q2: &ComplexPoly, x: f64) -> f64 {
    -interval_density_unchecked(q1, q2, x) / q2.eval(C64::new(x, 0.0)).re
}

pub fn tilde_mass(q1: &ComplexPoly, q2: &ComplexPoly) -> Result<f64> {
    let (d, e) = interval_ends(q1, q2)?;
    q2_check(q2, d, e)?;
    Ok(quad::integrate_sqrt_ends(|x| C64::new(tilde_unchecked(q1, q2, x), 0.0), d, e, QUAD_TOL).value.re)
}

fn q2_abc(q2: &ComplexPoly) -> Result<(f64, f64, f64)> {
    let v = real_coeffs(q2)?;
    let g = |j: usize| v.get(j).copied().unwrap_or(0.0);
    Ok((g(2), g(1), g(0)))
}

fn require_q1_is_z(q1: &ComplexPoly) -> Result<()> {
    if q1.max_abs_diff(&ComplexPoly::t()) > 1e-12 {
        return Err(Error::Invalid("circle formulas need Q1 = z".into()));
    }
    Ok(())
}

/// Center `-c/b` (on the real axis) and radius `|c/b|` for `Q2 = a z^2 + b z + c`.
pub fn circle_geometry(q2: &ComplexPoly) -> Result<(f64, f64)> {
    let (_, b, c) = q2_abc(q2)?;
    if b == 0.0 {
        return Err(Error::DegenerateB);
    }
    Ok((-c / b, (c / b).abs()))
}

/// `r sqrt(Delta(z)) e^{i gamma}` at `z = -c/b + r e^{i gamma}`, where
/// `Delta = (1 + 4a) z^2 + 4 b z + 4 c`; the measure is this over `2 pi` times `d gamma`.
pub fn circle_density(q1: &ComplexPoly, q2: &ComplexPoly, gamma: f64) -> Result<C64> {
    require_q1_is_z(q1)?;
    let (a, b, c) = q2_abc(q2)?;
    let (center, r) = circle_geometry(q2)?;
    let e = C64::from_polar(1.0, gamma);
    let z = C64::new(center, 0.0) + e * r;
    let delta = z * z * (1.0 + 4.0 * a) + z * (4.0 * b) + 4.0 * c;
    Ok(delta.sqrt() * e * r)
}

fn angle_of(z: C64, center: f64) -> f64 {
    let g = (z - center).arg();
    if g < 0.0 {
        g + 2.0 * PI
    } else {
        g
    }
}

/// Angular range `[from, to]` (with `to > from`) of the circle part.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CirclePart {
    pub center: f64,
    pub radius: f64,
    pub gamma_from: f64,
    pub gamma_to: f64,
}

impl CirclePart {
    pub fn point(&self, gamma: f64) -> C64 {
        C64::new(self.center, 0.0) + C64::from_polar(self.radius, gamma)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AnalyticDensity {
    pub case_tag: SupportCase,
    pub q1: ComplexPoly,
    pub q2: ComplexPoly,
    pub interval: Option<(f64, f64)>,
    pub circle: Option<CirclePart>,
    /// `-2c/b`, where the circle of the union case meets the interval.
    pub x0: Option<f64>,
}

/// Support of the union case.
pub fn union_support(q1: &ComplexPoly, q2: &ComplexPoly) -> Result<AnalyticDensity> {
    let cc = classify_case(q1, q2)?;
    if cc.case != 3 {
        return Err(Error::Invalid(format!("union support needs case 3, found case {}", cc.case)));
    }
    analytic_density(q1, q2)
}

pub fn analytic_density(q1: &ComplexPoly, q2: &ComplexPoly) -> Result<AnalyticDensity> {
    let cc = classify_case(q1, q2)?;
    let base = AnalyticDensity {
        case_tag: cc.support(),
        q1: q1.clone(),
        q2: q2.clone(),
        interval: None,
        circle: None,
        x0: None,
    };
    match cc.case {
        1 => Ok(AnalyticDensity { interval: Some((cc.d.re, cc.e.re)), ..base }),
        2 => {
            require_q1_is_z(q1)?;
            let (center, radius) = circle_geometry(q2)?;
            let gd = angle_of(cc.d, center);
            let ge = angle_of(cc.e, center);
            let gc = angle_of(C64::new(cc.c, 0.0), center);
            let (lo, hi) = if gd <= ge { (gd, ge) } else { (ge, gd) };
            let (from, to) = if gc >= lo && gc <= hi { (lo, hi) } else { (hi, lo + 2.0 * PI) };
            Ok(AnalyticDensity {
                circle: Some(CirclePart { center, radius, gamma_from: from, gamma_to: to }),
                ..base
            })
        }
        _ => {
            require_q1_is_z(q1)?;
            let (center, radius) = circle_geometry(q2)?;
            let (_, b, c) = q2_abc(q2)?;
            let x0 = -2.0 * c / b;
            let g0 = angle_of(C64::new(x0, 0.0), center);
            Ok(AnalyticDensity {
                interval: Some((cc.d.re, cc.e.re)),
                circle: Some(CirclePart { center, radius, gamma_from: g0, gamma_to: g0 + 2.0 * PI }),
                x0: Some(x0),
                ..base
            })
        }
    }
}

/// Density of the limiting residue measure with respect to `dz` at a point of
/// the support with unit tangent `tau`: `(Psi_right - Psi_left) / (2 pi i)`.
/// The side on which a root leads is read off from `Re(Psi' n / Psi)` with
/// `n = i tau`.
pub fn jump_density(q1: &ComplexPoly, q2: &ComplexPoly, z: C64, tau: C64) -> C64 {
    let a = q1.eval(z);
    let b = q2.eval(z);
    let s = (a * a + b * 4.0).sqrt();
    let roots = [(a + s) / 2.0, (a - s) / 2.0];
    let (da, db) = (q1.derivative().eval(z), q2.derivative().eval(z));
    let n = C64::new(0.0, 1.0) * tau;
    let growth = |psi: C64| {
        let dpsi = (da * psi + db) / (psi * 2.0 - a);
        let g = (dpsi * n / psi).re;
        if g.is_finite() {
            g
        } else {
            0.0
        }
    };
    let (left, right) = if growth(roots[0]) >= growth(roots[1]) { (roots[0], roots[1]) } else { (roots[1], roots[0]) };
    (right - left) / C64::new(0.0, 2.0 * PI)
}

impl AnalyticDensity {
    /// `int f(z) d nu` in the orientation of the residue measures of `p_{n+1}/p_n`.
    pub fn integrate<F: Fn(C64) -> C64>(&self, f: F) -> C64 {
        let mut total = ZERO;
        if let Some((d, e)) = self.interval {
            let one = C64::new(1.0, 0.0);
            total += quad::integrate_sqrt_ends(
                |x| {
                    let z = C64::new(x, 0.0);
                    f(z) * jump_density(&self.q1, &self.q2, z, one)
                },
                d,
                e,
                QUAD_TOL,
            )
            .value;
        }
        if let Some(cp) = self.circle {
            total += quad::integrate_sqrt_ends(
                |g| {
                    let z = cp.point(g);
                    let tau = C64::new(0.0, 1.0) * C64::from_polar(1.0, g);
                    f(z) * jump_density(&self.q1, &self.q2, z, tau) * tau * cp.radius
                },
                cp.gamma_from,
                cp.gamma_to,
                QUAD_TOL,
            )
            .value;
        }
        total
    }

    pub fn moments(&self, count: usize) -> Vec<C64> {
        (0..count).map(|j| self.integrate(|z| z.powu(j as u32))).collect()
    }

    pub fn mass(&self) -> C64 {
        self.integrate(|_| C64::new(1.0, 0.0))
    }

    /// Distance from `z` to the support.
    pub fn distance(&self, z: C64) -> f64 {
        let mut best = f64::INFINITY;
        if let Some((d, e)) = self.interval {
            let x = z.re.clamp(d, e);
            best = best.min((z - C64::new(x, 0.0)).norm());
        }
        if let Some(cp) = self.circle {
            let g = angle_of(z, cp.center);
            let inside_arc = [g, g + 2.0 * PI].iter().any(|&t| t >= cp.gamma_from && t <= cp.gamma_to);
            if inside_arc {
                best = best.min(((z - cp.center).norm() - cp.radius).abs());
            } else {
                best = best
                    .min((z - cp.point(cp.gamma_from)).norm())
                    .min((z - cp.point(cp.gamma_to)).norm());
            }
        }
        best
    }

    /// `(parameter, density)` samples: `x` on the interval, `gamma` on the circle.
    pub fn sample(&self, count: usize) -> Vec<(f64, C64)> {
        let mut out = Vec::new();
        let count = count.max(2);
        if let Some((d, e)) = self.interval {
            for i in 0..count {
                let x = d + (e - d) * i as f64 / (count - 1) as f64;
                out.push((x, C64::new(interval_density_unchecked(&self.q1, &self.q2, x), 0.0)));
            }
        }
        if let Some(cp) = self.circle {
            for i in 0..count {
                let g = cp.gamma_from + (cp.gamma_to - cp.gamma_from) * i as f64 / (count - 1) as f64;
                let v = circle_density(&self.q1, &self.q2, g).unwrap_or(ZERO) / (2.0 * PI);
                out.push((g, v));
            }
        }
        out
    }
}

/// `|sum w z^j - int z^j d nu|` for `j < moments`.
pub fn weak_compare(empirical: &ResidueMeasure, analytic: &AnalyticDensity, moments: usize) -> Vec<f64> {
    let em = empirical.moments(moments);
    let am = analytic.moments(moments);
    em.iter().zip(&am).map(|(a, b)| (a - b).norm()).collect()
}

/// Total mass of the limiting measure read from the `1/z` coefficient of the
/// leading root `Psi_max` at infinity (trapezoid rule on a large circle).
pub fn mass_from_infinity(q1: &ComplexPoly, q2: &ComplexPoly, radius: f64) -> C64 {
    let m = 4096;
    let mut acc = ZERO;
    for j in 0..m {
        let z = C64::from_polar(radius, 2.0 * PI * j as f64 / m as f64);
        let a = q1.eval(z);
        let s = (a * a + q2.eval(z) * 4.0).sqrt();
        let r1 = (a + s) / 2.0;
        let r2 = (a - s) / 2.0;
        let psi = if r1.norm() >= r2.norm() { r1 } else { r2 };
        acc += psi * z;
    }
    acc / m as f64
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::recurrence::presets;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn residue_examples() {
        let m = residue_measure(&ComplexPoly::t(), &ComplexPoly::from_real(&[-1.0, 0.0, 1.0]), 1e-10).unwrap();
        assert_eq!(m.atoms.len(), 2);
        for a in &m.atoms {
            assert!((a.weight - c(0.5, 0.0)).norm() < 1e-15);
        }
        let m = residue_measure(&ComplexPoly::one(), &ComplexPoly::t(), 1e-10).unwrap();
        assert_eq!(m.atoms, vec![Atom { pole: ZERO, weight: c(1.0, 0.0) }]);
        let p2 = ComplexPoly::from_real(&[-1.0, 0.75, 1.0]);
        let m = residue_measure(&p2, &ComplexPoly::t(), 1e-10).unwrap();
        assert!((m.atoms[0].weight - c(-1.0, 0.0)).norm() < 1e-15);
        let e = residue_measure(&ComplexPoly::one(), &ComplexPoly::from_real(&[1.0, -2.0, 1.0]), 1e-10);
        assert!(matches!(e, Err(Error::MultiplePole(_))));
    }

    #[test]
    fn classification_examples() {
        let (q1, q2) = presets::fig2_q();
        let cc = classify_case(&q1, &q2).unwrap();
        assert_eq!(cc.case, 1);
        assert!((cc.d.re + 4.0).abs() < 1e-12 && (cc.e.re - 1.0).abs() < 1e-12 && cc.c == 0.0);
        let (q1, q2) = presets::fig3_q();
        assert_eq!(classify_case(&q1, &q2).unwrap().case, 2);
        let (q1, q2) = presets::fig4_q();
        let cc = classify_case(&q1, &q2).unwrap();
        assert_eq!(cc.case, 3);
        assert!((cc.d.re + 4.0).abs() < 1e-12 && (cc.e.re + 1.0).abs() < 1e-12);
        let cq = ComplexPoly::new(vec![c(0.0, 1.0), c(1.0, 0.0)]);
        assert_eq!(classify_case(&cq, &q2), Err(Error::NotRealCoefficients));
    }

    #[test]
    fn interval_examples() {
        let (q1, q2) = presets::fig2_q();
        assert_eq!(interval_density(&q1, &q2, -4.0).unwrap(), 0.0);
        assert!((interval_density(&q1, &q2, -1.5).unwrap() - 5.0 / (4.0 * PI)).abs() < 1e-15);
        assert_eq!(interval_density(&q1, &q2, 1.5), Err(Error::OutsideSupport(1.5)));
        assert!((interval_mass(&q1, &q2).unwrap() - 25.0 / 16.0).abs() < 1e-12);
        assert!((tilde_mass(&q1, &q2).unwrap() - 1.0).abs() < 1e-10);
        assert_eq!(tilde_density(&q1, &q2, 1.0).unwrap(), 0.0);
        let q2b = ComplexPoly::from_real(&[0.02, 0.0, -0.5]);
        assert_eq!(tilde_mass(&q1, &q2b), Err(Error::Q2VanishesOnSupport));
    }

    #[test]
    fn circle_examples() {
        let (q1, q2) = presets::fig3_q();
        assert!((circle_density(&q1, &q2, 0.0).unwrap() - c(2f64.sqrt(), 0.0)).norm() < 1e-15);
        assert!(circle_density(&q1, &q2, PI / 2.0).unwrap().norm() < 1e-7);
        assert_eq!(circle_geometry(&q2).unwrap(), (1.0, 1.0));
        for g in [0.3, 1.0, -1.2] {
            let want = (2.0 * f64::cos(g)).sqrt() * C64::from_polar(1.0, 1.5 * g);
            assert!((circle_density(&q1, &q2, g).unwrap() - want).norm() < 1e-12);
        }
        assert_eq!(circle_density(&q1, &ComplexPoly::from_real(&[1.0, 0.0, 1.0]), 0.0), Err(Error::DegenerateB));
    }

    #[test]
    fn union_example() {
        let (q1, q2) = presets::fig4_q();
        let u = union_support(&q1, &q2).unwrap();
        assert_eq!(u.case_tag, SupportCase::Union);
        let (d, e) = u.interval.unwrap();
        assert!((d + 4.0).abs() < 1e-12 && (e + 1.0).abs() < 1e-12);
        let cp = u.circle.unwrap();
        assert!((cp.center + 0.8).abs() < 1e-15 && (cp.radius - 0.8).abs() < 1e-15);
        assert!((u.x0.unwrap() + 1.6).abs() < 1e-15);
        assert_eq!(interval_density(&q1, &q2, -4.0).unwrap(), 0.0);
    }

    #[test]
    fn masses_match_infinity_expansion() {
        for (q, want) in [(presets::fig2_q(), -25.0 / 16.0), (presets::fig3_q(), 0.25), (presets::fig4_q(), -9.0 / 16.0)] {
            let d = analytic_density(&q.0, &q.1).unwrap();
            let m = d.mass();
            let oracle = mass_from_infinity(&q.0, &q.1, 50.0);
            assert!((m - c(want, 0.0)).norm() < 1e-9, "{m} vs {want}");
            assert!((oracle - c(want, 0.0)).norm() < 1e-9, "{oracle}");
        }
    }

    #[test]
    fn jump_rule_is_minus_interval_density() {
        let (q1, q2) = presets::fig2_q();
        for x in [-3.9, -2.0, -0.5, 0.0, 0.7, 0.99] {
            let j = jump_density(&q1, &q2, c(x, 0.0), c(1.0, 0.0));
            assert!((j + interval_density(&q1, &q2, x).unwrap()).norm() < 1e-6);
        }
    }

    #[test]
    fn empirical_measures_fig2() {
        let seq = presets::eq41_sequence(presets::fig2_q());
        // sequence index 41 holds p_40.
        let m = sequence_residue_measure(&seq, 41, true, 1e-10).unwrap();
        assert!((m.mass() - c(1.0, 0.0)).norm() < 1e-12, "{}", m.mass());
        let m = sequence_residue_measure(&seq, 61, false, 1e-10).unwrap();
        let an = analytic_density(&presets::fig2_q().0, &presets::fig2_q().1).unwrap();
        let disc = weak_compare(&m, &an, 4);
        assert!(disc.iter().all(|&d| d <= 0.05), "{disc:?}");
        assert!((an.moments(1)[0] - c(-25.0 / 16.0, 0.0)).norm() < 1e-10);
        for a in &m.atoms {
            assert!(an.distance(a.pole) < 1e-6);
        }
        let empty = weak_compare(&ResidueMeasure::empty(), &an, 3);
        let am = an.moments(3);
        for (d, a) in empty.iter().zip(&am) {
            assert!((d - a.norm()).abs() < 1e-15);
        }
    }
}
