//! Dense univariate polynomials over the complex numbers, root finding,
//! Sylvester resultants and exact-shape division.

use std::f64::consts::PI;
use std::ops::{Add, Mul, Neg, Sub};

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type C64 = Complex64;

pub const ZERO: C64 = C64::new(0.0, 0.0);
pub const ONE: C64 = C64::new(1.0, 0.0);

/// Coefficients in ascending order: `coeffs[j]` multiplies `t^j`.
/// The zero polynomial has no coefficients at all.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize, Default)]
#[serde(from = "Vec<C64>", into = "Vec<C64>")]
pub struct ComplexPoly {
    coeffs: Vec<C64>,
}

impl From<Vec<C64>> for ComplexPoly {
    fn from(v: Vec<C64>) -> Self {
        ComplexPoly::new(v)
    }
}

impl From<ComplexPoly> for Vec<C64> {
    fn from(p: ComplexPoly) -> Self {
        p.coeffs
    }
}

impl ComplexPoly {
    /// Builds a polynomial, dropping exactly-zero leading coefficients.
    pub fn new(mut coeffs: Vec<C64>) -> Self {
        while coeffs.last().is_some_and(|c| *c == ZERO) {
            coeffs.pop();
        }
        ComplexPoly { coeffs }
    }

    pub fn from_real(c: &[f64]) -> Self {
        Self::new(c.iter().map(|&x| C64::new(x, 0.0)).collect())
    }

    pub fn zero() -> Self {
        ComplexPoly { coeffs: Vec::new() }
    }

    pub fn constant(c: C64) -> Self {
        Self::new(vec![c])
    }

    pub fn one() -> Self {
        Self::constant(ONE)
    }

    /// The identity polynomial `t`.
    pub fn t() -> Self {
        Self::new(vec![ZERO, ONE])
    }

    /// Monic polynomial with the given roots (repeated roots repeated).
    pub fn from_roots(roots: &[C64]) -> Self {
        let mut c = vec![ONE];
        for &r in roots {
            let mut next = vec![ZERO; c.len() + 1];
            for (j, &a) in c.iter().enumerate() {
                next[j + 1] += a;
                next[j] -= a * r;
            }
            c = next;
        }
        Self::new(c)
    }

    pub fn coeffs(&self) -> &[C64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial reports 0 (use `is_zero` to tell it apart).
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn leading(&self) -> C64 {
        self.coeffs.last().copied().unwrap_or(ZERO)
    }

    pub fn coeff(&self, j: usize) -> C64 {
        self.coeffs.get(j).copied().unwrap_or(ZERO)
    }

    /// Drops leading coefficients with modulus at most `tol * max|c_j|`.
    pub fn trim(&self, tol: f64) -> Self {
        let m = self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max);
        let mut c = self.coeffs.clone();
        while c.last().is_some_and(|x| x.norm() <= tol * m) {
            c.pop();
        }
        ComplexPoly { coeffs: c }
    }

    pub fn norm(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn is_real(&self, tol: f64) -> bool {
        let s = self.norm().max(f64::MIN_POSITIVE);
        self.coeffs.iter().all(|c| c.im.abs() <= tol * s)
    }

    pub fn eval(&self, z: C64) -> C64 {
        self.coeffs.iter().rev().fold(ZERO, |acc, &c| acc * z + c)
    }

    /// Value, derivative and `sum |a_j| |z|^j` in one Horner pass.
    pub fn eval_full(&self, z: C64) -> (C64, C64, f64) {
        let r = z.norm();
        let mut p = ZERO;
        let mut dp = ZERO;
        let mut s = 0.0;
        for &c in self.coeffs.iter().rev() {
            dp = dp * z + p;
            p = p * z + c;
            s = s * r + c.norm();
        }
        (p, dp, s)
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(j, &c)| c * j as f64)
                .collect(),
        )
    }

    pub fn scale(&self, s: C64) -> Self {
        Self::new(self.coeffs.iter().map(|&c| c * s).collect())
    }

    /// `p(u t)` as a polynomial in `t`.
    pub fn compose_scale(&self, u: C64) -> Self {
        let mut pw = ONE;
        let mut out = Vec::with_capacity(self.coeffs.len());
        for &c in &self.coeffs {
            out.push(c * pw);
            pw *= u;
        }
        Self::new(out)
    }

    pub fn pow(&self, k: usize) -> Self {
        (0..k).fold(Self::one(), |acc, _| &acc * self)
    }

    /// Polynomial long division, returning `(quotient, remainder)`.
    pub fn div_rem(&self, d: &ComplexPoly) -> (ComplexPoly, ComplexPoly) {
        assert!(!d.is_zero(), "division by the zero polynomial");
        if self.coeffs.len() < d.coeffs.len() {
            return (Self::zero(), self.clone());
        }
        let dn = d.degree();
        let lead = d.leading();
        let mut r = self.coeffs.clone();
        let mut q = vec![ZERO; r.len() - dn];
        for i in (0..q.len()).rev() {
            let c = r[i + dn] / lead;
            q[i] = c;
            for (j, &dc) in d.coeffs.iter().enumerate() {
                r[i + j] -= c * dc;
            }
        }
        r.truncate(dn);
        (Self::new(q), Self::new(r))
    }

    pub fn max_abs_diff(&self, other: &ComplexPoly) -> f64 {
        let n = self.coeffs.len().max(other.coeffs.len());
        (0..n)
            .map(|j| (self.coeff(j) - other.coeff(j)).norm())
            .fold(0.0, f64::max)
    }
}

impl Add for &ComplexPoly {
    type Output = ComplexPoly;
    fn add(self, o: &ComplexPoly) -> ComplexPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        ComplexPoly::new((0..n).map(|j| self.coeff(j) + o.coeff(j)).collect())
    }
}

impl Sub for &ComplexPoly {
    type Output = ComplexPoly;
    fn sub(self, o: &ComplexPoly) -> ComplexPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        ComplexPoly::new((0..n).map(|j| self.coeff(j) - o.coeff(j)).collect())
    }
}

impl Mul for &ComplexPoly {
    type Output = ComplexPoly;
    fn mul(self, o: &ComplexPoly) -> ComplexPoly {
        if self.is_zero() || o.is_zero() {
            return ComplexPoly::zero();
        }
        let mut c = vec![ZERO; self.coeffs.len() + o.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in o.coeffs.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        ComplexPoly::new(c)
    }
}

impl Neg for &ComplexPoly {
    type Output = ComplexPoly;
    fn neg(self) -> ComplexPoly {
        self.scale(-ONE)
    }
}

/// One evaluation for a Newton/Aberth step. `value` and `deriv` may carry a
/// common positive scale factor; only their ratio and `backward_error` are used.
#[derive(Clone, Copy, Debug)]
pub struct NewtonEval {
    pub value: C64,
    pub deriv: C64,
    pub backward_error: f64,
}

/// Anything whose roots can be polished by simultaneous iteration.
pub trait Evaluator {
    fn degree(&self) -> usize;
    fn newton(&self, z: C64) -> NewtonEval;
    fn initial_guesses(&self) -> Vec<C64>;
}

impl Evaluator for ComplexPoly {
    fn degree(&self) -> usize {
        ComplexPoly::degree(self)
    }

    fn newton(&self, z: C64) -> NewtonEval {
        let (p, dp, s) = self.eval_full(z);
        let backward_error = if s > 0.0 { p.norm() / s } else { 0.0 };
        NewtonEval { value: p, deriv: dp, backward_error }
    }

    fn initial_guesses(&self) -> Vec<C64> {
        newton_polygon_guesses(&self.coeffs)
    }
}

/// Starting points on circles whose radii come from the upper convex hull of
/// `(j, ln|a_j|)`.
pub fn newton_polygon_guesses(coeffs: &[C64]) -> Vec<C64> {
    let n = coeffs.len().saturating_sub(1);
    if n == 0 {
        return Vec::new();
    }
    let low = coeffs.iter().position(|c| *c != ZERO).unwrap_or(n);
    let pts: Vec<(usize, f64)> = (low..=n)
        .filter(|&j| coeffs[j] != ZERO)
        .map(|j| (j, coeffs[j].norm().ln()))
        .collect();
    let mut hull: Vec<(usize, f64)> = Vec::new();
    for &p in &pts {
        while hull.len() >= 2 {
            let (a, b) = (hull[hull.len() - 2], hull[hull.len() - 1]);
            let cross = (b.0 as f64 - a.0 as f64) * (p.1 - a.1) - (b.1 - a.1) * (p.0 as f64 - a.0 as f64);
            if cross >= 0.0 {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(p);
    }
    let mut out = Vec::with_capacity(n);
    let mut smallest = f64::INFINITY;
    for (s, w) in hull.windows(2).enumerate() {
        let (i, li) = w[0];
        let (k, lk) = w[1];
        let m = k - i;
        let r = ((li - lk) / m as f64).exp();
        smallest = smallest.min(r);
        let offset = 0.4 + 0.7 * s as f64;
        for q in 0..m {
            let ang = 2.0 * PI * q as f64 / m as f64 + offset;
            out.push(C64::from_polar(r, ang));
        }
    }
    let tiny = if smallest.is_finite() { smallest * 1e-3 } else { 1e-3 };
    for q in 0..low {
        out.push(C64::from_polar(tiny, 2.0 * PI * q as f64 / low as f64 + 0.3));
    }
    out
}

#[derive(Clone, Copy, Debug)]
pub struct AberthOptions {
    pub max_sweeps: usize,
    /// Accept the result when the worst backward error is at most this.
    pub accept: f64,
}

impl Default for AberthOptions {
    fn default() -> Self {
        AberthOptions { max_sweeps: 600, accept: 1e-9 }
    }
}

/// Backward error at `x`, or the relative Newton correction where that is
/// smaller (near zero the backward-error majorant vanishes with the value).
fn root_residual<E: Evaluator + ?Sized>(ev: &E, x: C64) -> f64 {
    let e = ev.newton(x);
    if e.value == ZERO {
        return 0.0;
    }
    let step = (e.value / e.deriv).norm() / x.norm().max(1.0);
    if step.is_finite() {
        e.backward_error.min(step)
    } else {
        e.backward_error
    }
}

/// Aberth-Ehrlich iteration with Gauss-Seidel updates. Returns the raw roots
/// and the worst backward error.
pub fn aberth<E: Evaluator + ?Sized>(ev: &E, opts: AberthOptions) -> Result<(Vec<C64>, f64)> {
    let n = ev.degree();
    let mut z = ev.initial_guesses();
    assert_eq!(z.len(), n, "initial guess count must equal the degree");
    if n == 0 {
        return Ok((z, 0.0));
    }
    let eps = f64::EPSILON;
    let small = 4.0 * eps * n as f64;
    let mut done = vec![false; n];
    let mut sweeps = 0;
    while sweeps < opts.max_sweeps && done.iter().any(|d| !d) {
        sweeps += 1;
        for i in 0..n {
            if done[i] {
                continue;
            }
            let e = ev.newton(z[i]);
            if e.value == ZERO || e.backward_error <= small {
                done[i] = true;
                continue;
            }
            let mut s = ZERO;
            for j in 0..n {
                if j != i {
                    s += (z[i] - z[j]).inv();
                }
            }
            let denom = e.deriv / e.value - s;
            let delta = if denom.is_finite() && denom != ZERO {
                denom.inv()
            } else {
                C64::new(1e-3, 1e-3) * (1.0 + z[i].norm())
            };
            if !delta.is_finite() {
                continue;
            }
            z[i] -= delta;
            if delta.norm() <= 2.0 * eps * z[i].norm().max(f64::MIN_POSITIVE.sqrt()) {
                done[i] = true;
            }
        }
    }
    let residual = z.iter().map(|&x| root_residual(ev, x)).fold(0.0, f64::max);
    if !residual.is_finite() || residual > opts.accept {
        return Err(Error::NonConvergence { residual, iterations: sweeps });
    }
    Ok((z, residual))
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Root {
    pub value: C64,
    pub multiplicity: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RootSet {
    pub roots: Vec<Root>,
    pub residual: f64,
}

impl RootSet {
    /// Every root repeated according to multiplicity, in canonical order.
    pub fn values(&self) -> Vec<C64> {
        self.roots
            .iter()
            .flat_map(|r| std::iter::repeat_n(r.value, r.multiplicity))
            .collect()
    }

    pub fn total_multiplicity(&self) -> usize {
        self.roots.iter().map(|r| r.multiplicity).sum()
    }
}

fn arg_2pi(z: C64) -> f64 {
    let a = z.im.atan2(z.re);
    if a < 0.0 {
        a + 2.0 * PI
    } else {
        a
    }
}

/// Canonical order: descending modulus; moduli equal to relative 1e-10 are
/// ordered by ascending argument in `[0, 2pi)`.
pub fn sort_canonical<T, F: Fn(&T) -> C64>(items: &mut [T], key: F) {
    items.sort_by(|a, b| key(b).norm().total_cmp(&key(a).norm()));
    let mut start = 0;
    while start < items.len() {
        let mut end = start + 1;
        while end < items.len() {
            let (m0, m1) = (key(&items[end - 1]).norm(), key(&items[end]).norm());
            if (m0 - m1).abs() <= 1e-10 * m0.max(f64::MIN_POSITIVE) {
                end += 1;
            } else {
                break;
            }
        }
        items[start..end].sort_by(|a, b| arg_2pi(key(a)).total_cmp(&arg_2pi(key(b))));
        start = end;
    }
}

/// Groups raw roots into clusters. A candidate cluster of size `m` around a
/// root is accepted when its members lie within `tol^(1/m) * max(1, |z|)`.
pub fn cluster_roots(raw: &[C64], tol: f64) -> Vec<Root> {
    const MAX_MULT: usize = 8;
    let n = raw.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| raw[b].norm().total_cmp(&raw[a].norm()));
    let mut used = vec![false; n];
    let mut out = Vec::new();
    for &i in &order {
        if used[i] {
            continue;
        }
        let mut near: Vec<(f64, usize)> = (0..n)
            .filter(|&j| j != i && !used[j])
            .map(|j| ((raw[j] - raw[i]).norm(), j))
            .collect();
        near.sort_by(|a, b| a.0.total_cmp(&b.0));
        let scale = raw[i].norm().max(1.0);
        let mut m = 1;
        for cand in (2..=MAX_MULT.min(near.len() + 1)).rev() {
            if near[cand - 2].0 <= tol.powf(1.0 / cand as f64) * scale {
                m = cand;
                break;
            }
        }
        used[i] = true;
        let mut sum = raw[i];
        for &(_, j) in near.iter().take(m - 1) {
            used[j] = true;
            sum += raw[j];
        }
        out.push(Root { value: sum / m as f64, multiplicity: m });
    }
    sort_canonical(&mut out, |r| r.value);
    out
}

fn quadratic_roots(c: C64, b: C64, a: C64) -> [C64; 2] {
    let d = (b * b - 4.0 * a * c).sqrt();
    let q = if (b.conj() * d).re >= 0.0 { -(b + d) / 2.0 } else { -(b - d) / 2.0 };
    if q == ZERO {
        [ZERO, ZERO]
    } else {
        [q / a, c / q]
    }
}

/// Raw roots (no clustering), closed form for degree up to 2.
pub fn roots_raw(p: &ComplexPoly) -> Result<Vec<C64>> {
    match p.degree() {
        0 => Ok(Vec::new()),
        1 => Ok(vec![-p.coeff(0) / p.coeff(1)]),
        2 => Ok(quadratic_roots(p.coeff(0), p.coeff(1), p.coeff(2)).to_vec()),
        _ => aberth(p, AberthOptions::default()).map(|r| r.0),
    }
}

/// All roots with multiplicities, in canonical order.
pub fn roots(p: &ComplexPoly, tol: f64) -> Result<RootSet> {
    if p.is_zero() || p.degree() == 0 {
        return Err(Error::Invalid("root finding needs degree >= 1".into()));
    }
    if p.leading().norm() <= tol {
        return Err(Error::Invalid("leading coefficient below tolerance".into()));
    }
    let raw = roots_raw(p)?;
    let residual = raw
        .iter()
        .map(|&z| Evaluator::newton(p, z).backward_error)
        .fold(0.0, f64::max);
    Ok(RootSet { roots: cluster_roots(&raw, tol), residual })
}

/// Roots of any evaluator (for polynomials that are best evaluated by a
/// recurrence rather than from their coefficients).
pub fn roots_of<E: Evaluator + ?Sized>(ev: &E, tol: f64) -> Result<RootSet> {
    let (raw, residual) = aberth(ev, AberthOptions::default())?;
    Ok(RootSet { roots: cluster_roots(&raw, tol), residual })
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ResultantReport {
    pub value: C64,
    /// Hadamard bound on the determinant, the natural scale of `value`.
    pub scale: f64,
    pub ill_conditioned: bool,
}

impl ResultantReport {
    pub fn normalized(&self) -> f64 {
        if self.scale > 0.0 {
            self.value.norm() / self.scale
        } else {
            0.0
        }
    }
}

/// Sylvester determinant from coefficient slices whose lengths fix the formal
/// degrees. Rows hold ascending coefficients.
pub fn sylvester_det(f: &[C64], g: &[C64]) -> ResultantReport {
    let m = f.len() - 1;
    let n = g.len() - 1;
    let size = m + n;
    if size == 0 {
        return ResultantReport { value: ONE, scale: 1.0, ill_conditioned: false };
    }
    let mut s = DMatrix::<C64>::zeros(size, size);
    for i in 0..n {
        for (j, &c) in f.iter().enumerate() {
            s[(i, i + j)] = c;
        }
    }
    for i in 0..m {
        for (j, &c) in g.iter().enumerate() {
            s[(n + i, i + j)] = c;
        }
    }
    let nf = f.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
    let ng = g.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
    let scale = nf.powi(n as i32) * ng.powi(m as i32);
    let value = s.lu().determinant();
    let rel = if scale > 0.0 { value.norm() / scale } else { 0.0 };
    let ill_conditioned = value != ZERO && rel < 1e-12;
    ResultantReport { value, scale, ill_conditioned }
}

pub fn sylvester_resultant(f: &ComplexPoly, g: &ComplexPoly) -> Result<ResultantReport> {
    if f.is_zero() || g.is_zero() || f.degree() < 1 || g.degree() < 1 {
        return Err(Error::Invalid("resultant needs degrees >= 1".into()));
    }
    Ok(sylvester_det(f.coeffs(), g.coeffs()))
}

/// Quotient of `p` by `d^k`, provided the remainder is at most `tol * |p|`.
pub fn divide_exact(p: &ComplexPoly, d: &ComplexPoly, k: usize, tol: f64) -> Result<ComplexPoly> {
    let dk = d.pow(k);
    if p.degree() < dk.degree() && !p.is_zero() {
        return Err(Error::Invalid("degree of p below k * deg d".into()));
    }
    let (q, r) = p.div_rem(&dk);
    let allowed = tol * p.norm();
    let remainder = r.norm();
    if remainder > allowed {
        return Err(Error::NotDivisible { remainder, allowed });
    }
    Ok(q)
}

/// Recovers a polynomial of degree `< samples.len()` from its values at
/// `radius * exp(2 pi i j / N)`; coefficients with `|c_j| radius^j` below
/// `1e-10` of the largest are zeroed.
pub fn interpolate_on_circle(samples: &[C64], radius: f64) -> ComplexPoly {
    let n = samples.len();
    let mut c = Vec::with_capacity(n);
    for m in 0..n {
        let mut acc = ZERO;
        for (j, &v) in samples.iter().enumerate() {
            acc += v * C64::from_polar(1.0, -2.0 * PI * (j * m % n) as f64 / n as f64);
        }
        c.push(acc / n as f64);
    }
    let big = c.iter().map(|x| x.norm()).fold(0.0, f64::max);
    for x in c.iter_mut() {
        if x.norm() <= 1e-10 * big {
            *x = ZERO;
        }
    }
    let mut rp = 1.0;
    for x in c.iter_mut() {
        *x /= rp;
        rp *= radius;
    }
    ComplexPoly::new(c)
}

pub fn circle_nodes(n: usize, radius: f64) -> Vec<C64> {
    (0..n)
        .map(|j| C64::from_polar(radius, 2.0 * PI * j as f64 / n as f64))
        .collect()
}

/// Interpolates a polynomial-valued function of degree at most `deg` sampled
/// on the circle of radius 2.
pub fn interpolate_function<F: Fn(C64) -> C64>(deg: usize, f: F) -> ComplexPoly {
    let nodes = circle_nodes(deg + 1, 2.0);
    let vals: Vec<C64> = nodes.into_iter().map(f).collect();
    interpolate_on_circle(&vals, 2.0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn eval_examples() {
        let p = ComplexPoly::from_real(&[-1.0, -1.0, 1.0]);
        assert_eq!(p.eval(c(2.0, 0.0)), c(1.0, 0.0));
        assert_eq!(ComplexPoly::one().eval(c(5.0, 3.0)), ONE);
        let q = ComplexPoly::from_real(&[10.0, 0.0, 0.0, 1.0]);
        assert_eq!(q.eval(ZERO), c(10.0, 0.0));
    }

    #[test]
    fn zero_is_not_one() {
        assert!(ComplexPoly::zero().is_zero());
        assert!(!ComplexPoly::one().is_zero());
        assert_eq!(ComplexPoly::zero().degree(), ComplexPoly::one().degree());
    }

    #[test]
    fn golden_ratio_roots() {
        let r = roots(&ComplexPoly::from_real(&[-1.0, -1.0, 1.0]), 1e-12).unwrap();
        let phi = (1.0 + 5f64.sqrt()) / 2.0;
        assert_eq!(r.roots.len(), 2);
        assert!((r.roots[0].value - c(phi, 0.0)).norm() < 1e-12);
        assert!((r.roots[1].value - c(1.0 - phi, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn double_root_and_d_e() {
        let r = roots(&ComplexPoly::from_real(&[1.0, -2.0, 1.0]), 1e-12).unwrap();
        assert_eq!(r.roots.len(), 1);
        assert_eq!(r.roots[0].multiplicity, 2);
        assert!((r.roots[0].value - ONE).norm() < 1e-8);
        let r = roots(&ComplexPoly::from_real(&[-4.0, 3.0, 1.0]), 1e-12).unwrap();
        assert!((r.roots[0].value - c(-4.0, 0.0)).norm() < 1e-12);
        assert!((r.roots[1].value - ONE).norm() < 1e-12);
    }

    #[test]
    fn aberth_high_degree() {
        let rts: Vec<C64> = (0..7).map(|j| C64::from_polar(1.0 + 0.2 * j as f64, j as f64)).collect();
        let p = ComplexPoly::from_roots(&rts);
        let r = roots(&p, 1e-12).unwrap();
        for t in &rts {
            assert!(r.values().iter().any(|v| (v - t).norm() < 1e-9));
        }
    }

    #[test]
    fn equal_moduli_ordered_by_argument() {
        let r = roots(&ComplexPoly::from_real(&[1.0, 0.0, 1.0]), 1e-12).unwrap();
        assert!((r.roots[0].value - c(0.0, 1.0)).norm() < 1e-14);
        assert!((r.roots[1].value - c(0.0, -1.0)).norm() < 1e-14);
    }

    #[test]
    fn resultant_examples() {
        let t1 = ComplexPoly::from_real(&[-1.0, 1.0]);
        let t2 = ComplexPoly::from_real(&[-2.0, 1.0]);
        assert!(sylvester_resultant(&t1, &t1).unwrap().value.norm() < 1e-15);
        assert!((sylvester_resultant(&t1, &t2).unwrap().value - ONE).norm() < 1e-14);
        let f = ComplexPoly::from_real(&[1.0, 0.0, 1.0]);
        let g = ComplexPoly::from_real(&[2.0, -3.0, 1.0]);
        assert!((sylvester_resultant(&f, &g).unwrap().value - c(10.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn divide_exact_examples() {
        let u1 = ComplexPoly::from_real(&[-1.0, 1.0]);
        let up = ComplexPoly::from_real(&[1.0, 1.0]);
        let p = &u1.pow(2) * &up.pow(2);
        let q = divide_exact(&p, &u1, 2, 1e-12).unwrap();
        assert!(q.max_abs_diff(&up.pow(2)) < 1e-12);
        let q = divide_exact(&ComplexPoly::from_real(&[-1.0, 0.0, 1.0]), &u1, 1, 1e-12).unwrap();
        assert!(q.max_abs_diff(&up) < 1e-14);
        let e = divide_exact(&ComplexPoly::from_real(&[1.0, 0.0, 1.0]), &u1, 1, 1e-12);
        assert!(matches!(e, Err(Error::NotDivisible { .. })));
    }

    #[test]
    fn interpolation_recovers_polynomial() {
        let p = ComplexPoly::new(vec![c(1.0, 2.0), c(-3.0, 0.5), ZERO, c(0.25, -1.0)]);
        let q = interpolate_function(5, |z| p.eval(z));
        assert!(q.max_abs_diff(&p) < 1e-12);
        assert_eq!(q.degree(), 3);
    }

    #[test]
    fn json_shape() {
        let p = ComplexPoly::new(vec![c(1.0, 0.0), c(0.0, -2.0)]);
        let s = serde_json::to_string(&p).unwrap();
        assert_eq!(s, "[[1.0,0.0],[0.0,-2.0]]");
        let back: ComplexPoly = serde_json::from_str(&s).unwrap();
        assert_eq!(back, p);
    }
}
