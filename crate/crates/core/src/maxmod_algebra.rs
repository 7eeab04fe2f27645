//! Membership in the set of monic polynomials with two roots of equal modulus:
//! direct root comparison, the resultant `R(u) = Res_t(P(t), P(ut))` restricted
//! to the unit circle, and its rational parametrization `u = (1 - i theta)^2 / (1 + theta^2)`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cpoly::{self, cluster_roots, divide_exact, sylvester_det, ComplexPoly, C64, ONE, ZERO};
use crate::error::{Error, Result};

/// `t^k + a_1 t^{k-1} + ... + a_k`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MonicPoint {
    pub a: Vec<C64>,
}

impl MonicPoint {
    pub fn new(a: Vec<C64>) -> Self {
        MonicPoint { a }
    }

    pub fn from_roots(roots: &[C64]) -> Self {
        let p = ComplexPoly::from_roots(roots);
        let k = roots.len();
        MonicPoint { a: (1..=k).map(|i| p.coeff(k - i)).collect() }
    }

    pub fn k(&self) -> usize {
        self.a.len()
    }

    /// Ascending coefficients of `P(t)`.
    pub fn coeffs(&self) -> Vec<C64> {
        let k = self.k();
        let mut c = vec![ZERO; k + 1];
        c[k] = ONE;
        for i in 1..=k {
            c[k - i] = self.a[i - 1];
        }
        c
    }

    pub fn poly(&self) -> ComplexPoly {
        ComplexPoly::new(self.coeffs())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Direct,
    UResultant,
    ThetaResultant,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MembershipVerdict {
    pub in_xi_tilde: bool,
    pub in_xi: bool,
    /// An equal-modulus pair, or the max-modulus roots.
    pub witnesses: Vec<C64>,
    pub method: Method,
}

fn equal_mod(a: f64, b: f64, rel_tol: f64) -> bool {
    (a - b).abs() <= rel_tol * a.max(b)
}

pub fn membership_direct(p: &MonicPoint, rel_tol: f64) -> Result<MembershipVerdict> {
    let poly = p.poly();
    let raw = cpoly::roots_raw(&poly)?;
    let roots = cluster_roots(&raw, 1e-12);
    let mut witnesses = Vec::new();
    if let Some(r) = roots.iter().find(|r| r.multiplicity > 1) {
        witnesses = vec![r.value, r.value];
    } else {
        'outer: for (i, x) in roots.iter().enumerate() {
            for y in &roots[i + 1..] {
                if equal_mod(x.value.norm(), y.value.norm(), rel_tol) {
                    witnesses = vec![x.value, y.value];
                    break 'outer;
                }
            }
        }
    }
    let top = roots.first().map(|r| r.value.norm()).unwrap_or(0.0);
    let group: Vec<&cpoly::Root> = roots.iter().filter(|r| equal_mod(r.value.norm(), top, rel_tol)).collect();
    let in_xi = group.iter().map(|r| r.multiplicity).sum::<usize>() >= 2;
    if in_xi {
        witnesses = group.iter().flat_map(|r| std::iter::repeat_n(r.value, r.multiplicity)).collect();
    }
    Ok(MembershipVerdict { in_xi_tilde: !witnesses.is_empty(), in_xi, witnesses, method: Method::Direct })
}

/// `P(ut)` at a fixed `u`, ascending in `t`.
fn scaled_coeffs(c: &[C64], u: C64) -> Vec<C64> {
    let mut up = ONE;
    c.iter()
        .map(|&x| {
            let v = x * up;
            up *= u;
            v
        })
        .collect()
}

/// `R(u) = Res_t(P(t), P(ut))`, interpolated from `k^2 + 1` values.
pub fn r_u_polynomial(p: &MonicPoint) -> Result<ComplexPoly> {
    let k = p.k();
    if k < 2 {
        return Err(Error::Invalid("R(u) needs k >= 2".into()));
    }
    let c = p.coeffs();
    Ok(cpoly::interpolate_function(k * k, |u| sylvester_det(&c, &scaled_coeffs(&c, u)).value))
}

/// `R(u) / (u - 1)^k`.
pub fn reduced_r(p: &MonicPoint) -> Result<ComplexPoly> {
    let r = r_u_polynomial(p)?;
    if r.is_zero() {
        return Err(Error::IdenticallyZero);
    }
    divide_exact(&r, &ComplexPoly::from_real(&[-1.0, 1.0]), p.k(), 1e-8)
}

pub fn membership_via_u(p: &MonicPoint, tol: f64) -> Result<MembershipVerdict> {
    let rt = reduced_r(p)?;
    let poly = p.poly();
    let roots = cpoly::roots_raw(&poly)?;
    let top = roots.iter().map(|z| z.norm()).fold(0.0, f64::max);
    let us: Vec<C64> = if rt.degree() == 0 {
        Vec::new()
    } else {
        cpoly::roots_raw(&rt)?.into_iter().filter(|u| (u.norm() - 1.0).abs() <= tol).collect()
    };
    let mut best: Option<(f64, C64, C64)> = None;
    for &u in &us {
        for &l in &roots {
            let v = poly.eval(u * l).norm();
            if best.is_none_or(|b| v < b.0) {
                best = Some((v, l, u * l));
            }
        }
    }
    let witnesses = best.map(|b| vec![b.1, b.2]).unwrap_or_default();
    let in_xi = best.is_some_and(|b| b.1.norm() >= top * (1.0 - tol));
    Ok(MembershipVerdict { in_xi_tilde: !us.is_empty(), in_xi, witnesses, method: Method::UResultant })
}

/// Real and imaginary parts of `(1 + theta^2)^d R~((1 - i theta)^2 / (1 + theta^2))`.
pub fn theta_parts(rt: &ComplexPoly) -> (Vec<f64>, Vec<f64>) {
    let d = rt.degree();
    let mut n = vec![ZERO; 2 * d + 1];
    let one_minus = ComplexPoly::new(vec![ONE, C64::new(0.0, -1.0)]);
    let one_plus_sq = ComplexPoly::from_real(&[1.0, 0.0, 1.0]);
    for (j, &cj) in rt.coeffs().iter().enumerate() {
        let t = &(&one_minus.pow(2 * j) * &one_plus_sq.pow(d - j)).scale(cj);
        for (i, &x) in t.coeffs().iter().enumerate() {
            n[i] += x;
        }
    }
    (n.iter().map(|z| z.re).collect(), n.iter().map(|z| z.im).collect())
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ThetaReport {
    /// Smallest normalized size of both parts over the real roots of either
    /// part; zero when both parts drop degree (a root at `u = -1`).
    pub value: f64,
    /// `|Res_theta(A, B)|` over its Hadamard scale.
    pub sylvester_normalized: f64,
}

fn normalized_at(c: &[f64], x: f64) -> f64 {
    let norm = c.iter().map(|v| v * v).sum::<f64>().sqrt();
    if norm == 0.0 {
        return 0.0;
    }
    let v = c.iter().rev().fold(0.0, |acc, &a| acc * x + a);
    v.abs() / (norm * x.abs().max(1.0).powi(c.len() as i32 - 1))
}

fn trimmed(c: &[f64]) -> Vec<f64> {
    let big = c.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let mut v = c.to_vec();
    while v.len() > 1 && v.last().is_some_and(|x| x.abs() <= 1e-13 * big) {
        v.pop();
    }
    v
}

pub fn theta_membership(p: &MonicPoint) -> Result<ThetaReport> {
    let rt = reduced_r(p)?;
    let (a, b) = theta_parts(&rt);
    let s = a.iter().chain(&b).fold(0.0f64, |m, v| m.max(v.abs()));
    if s == 0.0 {
        return Err(Error::IdenticallyZero);
    }
    let a: Vec<f64> = a.iter().map(|v| v / s).collect();
    let b: Vec<f64> = b.iter().map(|v| v / s).collect();
    let to_c = |v: &[f64]| v.iter().map(|&x| C64::new(x, 0.0)).collect::<Vec<_>>();
    let sylvester_normalized = sylvester_det(&to_c(&a), &to_c(&b)).normalized();
    let top = a.len() - 1;
    if a[top].abs() <= 1e-12 && b[top].abs() <= 1e-12 {
        return Ok(ThetaReport { value: 0.0, sylvester_normalized });
    }
    let mut value: f64 = 1.0;
    for part in [&a, &b] {
        let t = trimmed(part);
        if t.len() < 2 {
            continue;
        }
        for th in cpoly::roots_raw(&ComplexPoly::new(to_c(&t)))? {
            if th.im.abs() > 1e-6 * th.norm().max(1.0) {
                continue;
            }
            value = value.min(normalized_at(&a, th.re) + normalized_at(&b, th.re));
        }
    }
    Ok(ThetaReport { value, sylvester_normalized })
}

/// `a_i -> r^i a_i`, which multiplies every root by `r`.
pub fn quasihomogeneous_scale(p: &MonicPoint, r: f64) -> MonicPoint {
    MonicPoint { a: p.a.iter().enumerate().map(|(i, &x)| x * r.powi(i as i32 + 1)).collect() }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Thresholds {
    pub direct_rel_tol: f64,
    pub u_tol: f64,
    pub theta: f64,
}

impl Default for Thresholds {
    fn default() -> Self {
        Thresholds { direct_rel_tol: 1e-6, u_tol: 1e-6, theta: 1e-9 }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DegreeAudit {
    pub k: usize,
    pub samples: usize,
    pub seed: u64,
    pub deg_r_u: usize,
    pub deg_r_tilde_u: usize,
    pub deg_theta_parts: usize,
    pub bound: usize,
    /// Degree of `R~` claimed in the original argument.
    pub stated_deg_r_tilde: usize,
}

/// Samples with random roots; with `force_pair`, the second root gets the
/// modulus of the first.
pub fn random_point(rng: &mut ChaCha8Rng, k: usize, force_pair: bool) -> MonicPoint {
    let mut roots: Vec<C64> = (0..k)
        .map(|_| C64::from_polar(rng.random_range(0.3..2.0), rng.random_range(0.0..std::f64::consts::TAU)))
        .collect();
    if force_pair && k >= 2 {
        roots[1] = C64::from_polar(roots[0].norm(), roots[1].arg());
    }
    MonicPoint::from_roots(&roots)
}

pub fn degree_audit(k: usize, samples: usize, seed: u64) -> Result<DegreeAudit> {
    if !(2..=3).contains(&k) {
        return Err(Error::Invalid("degree audit covers k = 2 and k = 3".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (mut dr, mut drt, mut dth) = (0, 0, 0);
    for _ in 0..samples.max(1) {
        let p = random_point(&mut rng, k, false);
        let r = r_u_polynomial(&p)?;
        let rt = reduced_r(&p)?;
        let (a, b) = theta_parts(&rt);
        dr = dr.max(r.degree());
        drt = drt.max(rt.degree());
        dth = dth.max(trimmed(&a).len().max(trimmed(&b).len()) - 1);
    }
    Ok(DegreeAudit {
        k,
        samples: samples.max(1),
        seed,
        deg_r_u: dr,
        deg_r_tilde_u: drt,
        deg_theta_parts: dth,
        bound: (4 * k - 1) * (4 * k - 2),
        stated_deg_r_tilde: 2 * k,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SampleOutcome {
    pub a: Vec<C64>,
    pub direct: bool,
    pub via_u: bool,
    pub theta: bool,
    pub theta_value: f64,
    /// Smallest relative gap between root moduli.
    pub min_gap: f64,
    pub xi_violation: bool,
    pub scaling_flip: bool,
}

impl SampleOutcome {
    pub fn agree(&self) -> bool {
        self.direct == self.via_u && self.direct == self.theta
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AgreementReport {
    pub k: usize,
    pub seed: u64,
    pub samples: usize,
    pub agreement: f64,
    pub members: usize,
    pub xi_violations: usize,
    pub scaling_flips: usize,
    /// Disagreements whose smallest modulus gap is not within `10 * tol`.
    pub unexplained: usize,
    pub disagreements: Vec<SampleOutcome>,
}

fn min_modulus_gap(p: &MonicPoint) -> f64 {
    let r = cpoly::roots_raw(&p.poly()).unwrap_or_default();
    let mut g = f64::INFINITY;
    for (i, x) in r.iter().enumerate() {
        for y in &r[i + 1..] {
            g = g.min((x.norm() - y.norm()).abs() / x.norm().max(y.norm()));
        }
    }
    g
}

fn verdicts(p: &MonicPoint, th: Thresholds) -> Result<(MembershipVerdict, bool, f64, bool)> {
    let d = membership_direct(p, th.direct_rel_tol)?;
    let u = membership_via_u(p, th.u_tol)?;
    let t = theta_membership(p)?;
    Ok((d, u.in_xi_tilde, t.value, t.value <= th.theta))
}

fn evaluate(p: MonicPoint, th: Thresholds) -> Result<SampleOutcome> {
    let (d, via_u, theta_value, theta) = verdicts(&p, th)?;
    let mut scaling_flip = false;
    for r in [0.5, 2.0, 10.0] {
        let (ds, us, _, ts) = verdicts(&quasihomogeneous_scale(&p, r), th)?;
        scaling_flip |= ds.in_xi_tilde != d.in_xi_tilde || ds.in_xi != d.in_xi || us != via_u || ts != theta;
    }
    Ok(SampleOutcome {
        min_gap: min_modulus_gap(&p),
        a: p.a,
        direct: d.in_xi_tilde,
        via_u,
        theta,
        theta_value,
        xi_violation: d.in_xi && !d.in_xi_tilde,
        scaling_flip,
    })
}

/// Cross-checks the three membership tests on seeded random samples, half of
/// them with a forced equal-modulus pair.
pub fn agreement_run(k: usize, samples: usize, seed: u64, th: Thresholds) -> Result<AgreementReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let points: Vec<MonicPoint> = (0..samples).map(|i| random_point(&mut rng, k, i % 2 == 0)).collect();
    let outcomes: Vec<SampleOutcome> = points
        .into_par_iter()
        .map(|p| evaluate(p, th))
        .collect::<Result<_>>()?;
    let agreeing = outcomes.iter().filter(|o| o.agree()).count();
    let band = 10.0 * th.direct_rel_tol.max(th.u_tol);
    let disagreements: Vec<SampleOutcome> = outcomes.iter().filter(|o| !o.agree()).cloned().collect();
    Ok(AgreementReport {
        k,
        seed,
        samples,
        agreement: agreeing as f64 / samples.max(1) as f64,
        members: outcomes.iter().filter(|o| o.direct).count(),
        xi_violations: outcomes.iter().filter(|o| o.xi_violation).count(),
        scaling_flips: outcomes.iter().filter(|o| o.scaling_flip).count(),
        unexplained: disagreements.iter().filter(|o| o.min_gap >= band).count(),
        disagreements,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn mp(a: &[f64]) -> MonicPoint {
        MonicPoint::new(a.iter().map(|&x| c(x, 0.0)).collect())
    }

    fn proportional(p: &ComplexPoly, q: &ComplexPoly) -> bool {
        let j = (0..=q.degree()).max_by(|&x, &y| q.coeff(x).norm().total_cmp(&q.coeff(y).norm())).unwrap();
        let s = p.coeff(j) / q.coeff(j);
        p.degree() == q.degree() && (p - &q.scale(s)).norm() <= 1e-9 * p.norm()
    }

    #[test]
    fn direct_examples() {
        let v = membership_direct(&mp(&[0.0, 1.0]), 1e-6).unwrap();
        assert!(v.in_xi_tilde && v.in_xi);
        let v = membership_direct(&mp(&[-3.0, 2.0]), 1e-6).unwrap();
        assert!(!v.in_xi_tilde && !v.in_xi);
        let v = membership_direct(&mp(&[-1.0, 0.0, 0.0]), 1e-6).unwrap();
        assert!(v.in_xi_tilde && !v.in_xi);
    }

    #[test]
    fn r_u_examples() {
        let r = r_u_polynomial(&mp(&[0.0, 1.0])).unwrap();
        assert!(proportional(&r, &ComplexPoly::from_real(&[1.0, 0.0, -2.0, 0.0, 1.0])));
        let r = r_u_polynomial(&mp(&[-3.0, 2.0])).unwrap();
        let want = &(&ComplexPoly::from_roots(&[ONE, ONE, c(2.0, 0.0)]) * &ComplexPoly::from_real(&[-1.0, 2.0])).scale(c(2.0, 0.0));
        assert!(proportional(&r, want));
        assert!(r_u_polynomial(&mp(&[0.0, 0.0])).unwrap().is_zero());
    }

    #[test]
    fn reduced_examples() {
        let r = reduced_r(&mp(&[0.0, 1.0])).unwrap();
        assert!(proportional(&r, &ComplexPoly::from_real(&[1.0, 2.0, 1.0])));
        let r = reduced_r(&mp(&[-3.0, 2.0])).unwrap();
        assert!(proportional(&r, &ComplexPoly::from_real(&[2.0, -5.0, 2.0])));
        assert!(r.eval(ONE).norm() > 0.1 * r.norm());
    }

    #[test]
    fn via_u_examples() {
        let v = membership_via_u(&mp(&[0.0, 1.0]), 1e-6).unwrap();
        assert!(v.in_xi_tilde && v.in_xi);
        assert!((v.witnesses[0].norm() - v.witnesses[1].norm()).abs() < 1e-6, "{:?}", v);
        let v = membership_via_u(&mp(&[-3.0, 2.0]), 1e-6).unwrap();
        assert!(!v.in_xi_tilde);
    }

    #[test]
    fn theta_examples() {
        assert!(theta_membership(&mp(&[0.0, 1.0])).unwrap().value < 1e-9);
        let t = theta_membership(&mp(&[-3.0, 2.0])).unwrap();
        assert!(t.value > 1e-4, "{}", t.value);
        for p in [mp(&[0.0, 1.0]), mp(&[-3.0, 2.0])] {
            let a = theta_membership(&p).unwrap().value <= 1e-9;
            let b = theta_membership(&quasihomogeneous_scale(&p, 2.0)).unwrap().value <= 1e-9;
            assert_eq!(a, b);
        }
    }

    #[test]
    fn scaling_examples() {
        assert_eq!(quasihomogeneous_scale(&mp(&[-3.0, 2.0]), 3.0), mp(&[-9.0, 18.0]));
        assert_eq!(quasihomogeneous_scale(&mp(&[-3.0, 2.0]), 1.0), mp(&[-3.0, 2.0]));
    }

    #[test]
    fn audit_degrees() {
        let a = degree_audit(2, 20, 7).unwrap();
        assert_eq!((a.deg_r_u, a.deg_r_tilde_u, a.deg_theta_parts, a.bound), (4, 2, 4, 42));
        let a = degree_audit(3, 20, 7).unwrap();
        assert_eq!((a.deg_r_u, a.deg_r_tilde_u, a.deg_theta_parts, a.bound), (9, 6, 12, 110));
    }

    #[test]
    fn small_agreement_run() {
        let r = agreement_run(3, 40, 5, Thresholds::default()).unwrap();
        assert!(r.agreement >= 0.99, "{r:?}");
        assert_eq!(r.xi_violations, 0);
        assert_eq!(r.scaling_flips, 0);
    }
}
