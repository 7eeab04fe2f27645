//! Linear recurrences `u_{n+k} + a_{1,n} u_{n+k-1} + ... + a_{k,n} u_n = 0`
//! whose coefficients are polynomials in a parameter `z` and may vary with `n`.

use std::collections::VecDeque;

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use crate::cpoly::{self, newton_polygon_guesses, ComplexPoly, Evaluator, NewtonEval, RootSet, C64, ONE, ZERO};
use crate::error::{Error, Result};
use crate::hp;
use crate::linalg;

/// How a varying coefficient approaches its declared limit.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "name", rename_all = "snake_case")]
pub enum VaryingRule {
    Constant,
    /// `limit + c / (n + 1)`.
    LimitPlusCnOverN { c: ComplexPoly },
    /// Explicit values for the first steps, the limit afterwards.
    Table { values: Vec<ComplexPoly> },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CoeffRule {
    Fixed(ComplexPoly),
    Varying { limit: ComplexPoly, rule: VaryingRule },
}

impl CoeffRule {
    pub fn limit(&self) -> &ComplexPoly {
        match self {
            CoeffRule::Fixed(p) => p,
            CoeffRule::Varying { limit, .. } => limit,
        }
    }

    pub fn at(&self, n: usize) -> ComplexPoly {
        match self {
            CoeffRule::Fixed(p) => p.clone(),
            CoeffRule::Varying { limit, rule } => match rule {
                VaryingRule::Constant => limit.clone(),
                VaryingRule::LimitPlusCnOverN { c } => limit + &c.scale(C64::new(1.0 / (n as f64 + 1.0), 0.0)),
                VaryingRule::Table { values } => values.get(n).cloned().unwrap_or_else(|| limit.clone()),
            },
        }
    }

    fn depends_on_n(&self) -> bool {
        !matches!(
            self,
            CoeffRule::Fixed(_) | CoeffRule::Varying { rule: VaryingRule::Constant, .. }
        )
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RecurrenceSpec {
    pub k: usize,
    pub coeffs: Vec<CoeffRule>,
    /// Treat a vanishing last coefficient during iteration as an error.
    #[serde(default)]
    pub nonvanishing_last: bool,
}

impl RecurrenceSpec {
    /// Constant coefficients `a_1..a_k`.
    pub fn constant(alphas: &[C64]) -> Self {
        Self::fixed(alphas.iter().map(|&a| ComplexPoly::constant(a)).collect())
    }

    pub fn fixed(alphas: Vec<ComplexPoly>) -> Self {
        RecurrenceSpec {
            k: alphas.len(),
            coeffs: alphas.into_iter().map(CoeffRule::Fixed).collect(),
            nonvanishing_last: false,
        }
    }

    /// From the forward form `p_{n+1} = Q_1 p_n + Q_2 p_{n-1} + ...`.
    pub fn forward(q: Vec<ComplexPoly>) -> Self {
        Self::fixed(q.iter().map(|p| -p).collect())
    }

    pub fn validate(&self) -> Result<()> {
        if self.k == 0 {
            return Err(Error::Invalid("recurrence order k must be at least 1".into()));
        }
        if self.coeffs.len() != self.k {
            return Err(Error::Invalid(format!(
                "expected {} coefficient rules, found {}",
                self.k,
                self.coeffs.len()
            )));
        }
        if self.coeffs[self.k - 1].limit().is_zero() {
            return Err(Error::Invalid("last coefficient limit is identically zero".into()));
        }
        for rule in &self.coeffs {
            if let CoeffRule::Varying { limit, rule: VaryingRule::Table { values } } = rule {
                if values.is_empty() {
                    continue;
                }
                let tail = values.last().expect("nonempty");
                let gap = tail.max_abs_diff(limit);
                if gap > 1.0 + limit.norm() {
                    return Err(Error::Invalid("table tail is far from the declared limit".into()));
                }
            }
        }
        Ok(())
    }

    /// Largest `|a_{i,n}(z) - limit_i(z)|` over the sample points at step `n`.
    pub fn limit_defect(&self, samples: &[C64], n: usize) -> f64 {
        let mut worst: f64 = 0.0;
        for rule in &self.coeffs {
            let p = rule.at(n);
            for &z in samples {
                worst = worst.max((p.eval(z) - rule.limit().eval(z)).norm());
            }
        }
        worst
    }

    /// `a_{i,n}(z)` for `i` in `1..=k`.
    pub fn alpha(&self, i: usize, n: usize, z: C64) -> C64 {
        match &self.coeffs[i - 1] {
            CoeffRule::Fixed(p) => p.eval(z),
            rule => rule.at(n).eval(z),
        }
    }

    pub fn alpha_limit(&self, i: usize, z: C64) -> C64 {
        self.coeffs[i - 1].limit().eval(z)
    }

    pub fn varies(&self) -> bool {
        self.coeffs.iter().any(CoeffRule::depends_on_n)
    }
}

/// Monic `t^k + a_1 t^{k-1} + ... + a_k` built from the limit coefficients at `z`.
pub fn char_poly(spec: &RecurrenceSpec, z: C64) -> ComplexPoly {
    let k = spec.k;
    let mut c = vec![ZERO; k + 1];
    c[k] = ONE;
    for i in 1..=k {
        c[k - i] = spec.alpha_limit(i, z);
    }
    ComplexPoly::new(c)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Classification {
    MaxmodGeneric,
    NongenericDominant,
    NongenericNondominant,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpectralData {
    pub roots: RootSet,
    pub classification: Classification,
    pub lambda_max: Option<C64>,
    pub dominant: Option<C64>,
}

pub const DEFAULT_REL_TOL: f64 = 1e-9;

fn char_roots(p: &ComplexPoly, tol: f64) -> Result<RootSet> {
    if p.coeff(0).norm() <= tol {
        return Err(Error::DegenerateConstantTerm);
    }
    cpoly::roots(p, 1e-12)
}

pub fn spectral_data(p: &ComplexPoly, initial: &[C64], tol: f64) -> Result<SpectralData> {
    spectral_data_with(p, initial, tol, DEFAULT_REL_TOL)
}

pub fn spectral_data_with(p: &ComplexPoly, initial: &[C64], tol: f64, rel_tol: f64) -> Result<SpectralData> {
    let roots = char_roots(p, tol)?;
    let top = roots.roots[0].value.norm();
    let group: Vec<usize> = (0..roots.roots.len())
        .filter(|&i| top - roots.roots[i].value.norm() <= rel_tol * top)
        .collect();
    if group.len() == 1 && roots.roots[0].multiplicity == 1 {
        let lambda = roots.roots[0].value;
        return Ok(SpectralData {
            roots,
            classification: Classification::MaxmodGeneric,
            lambda_max: Some(lambda),
            dominant: None,
        });
    }
    let cf = closed_form_from_roots(&roots, initial)?;
    let biggest = cf.terms.iter().map(|t| t.1.norm()).fold(0.0, f64::max);
    let live: Vec<(C64, usize)> = group
        .iter()
        .filter_map(|&i| {
            let (lambda, poly) = &cf.terms[i];
            let trimmed = poly.trim(1e-9);
            (poly.norm() > 1e-9 * biggest.max(f64::MIN_POSITIVE)).then_some((*lambda, trimmed.degree()))
        })
        .collect();
    let dominant = live.iter().map(|x| x.1).max().and_then(|dmax| {
        let winners: Vec<_> = live.iter().filter(|x| x.1 == dmax).collect();
        (winners.len() == 1).then(|| winners[0].0)
    });
    let classification = if dominant.is_some() {
        Classification::NongenericDominant
    } else {
        Classification::NongenericNondominant
    };
    Ok(SpectralData { roots, classification, lambda_max: None, dominant })
}

/// `u_n = sum_i P_i(n) lambda_i^n`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ClosedForm {
    pub terms: Vec<(C64, ComplexPoly)>,
}

impl ClosedForm {
    pub fn eval(&self, n: usize) -> C64 {
        let x = C64::new(n as f64, 0.0);
        self.terms.iter().map(|(l, p)| p.eval(x) * l.powu(n as u32)).sum()
    }
}

fn confluent_vandermonde(roots: &RootSet) -> DMatrix<C64> {
    let k = roots.total_multiplicity();
    let mut v = DMatrix::<C64>::zeros(k, k);
    let mut col = 0;
    for r in &roots.roots {
        for d in 0..r.multiplicity {
            for n in 0..k {
                let nd = if d == 0 { 1.0 } else { (n as f64).powi(d as i32) };
                v[(n, col)] = r.value.powu(n as u32) * nd;
            }
            col += 1;
        }
    }
    v
}

fn closed_form_from_roots(roots: &RootSet, initial: &[C64]) -> Result<ClosedForm> {
    let k = roots.total_multiplicity();
    if initial.len() != k {
        return Err(Error::Invalid(format!("initial tuple needs {k} entries")));
    }
    let v = confluent_vandermonde(roots);
    if linalg::inverse_condition(&v) < 1e-13 {
        return Err(Error::IllConditioned("root clusters too tight to separate".into()));
    }
    let c = linalg::solve(&v, &DVector::from_column_slice(initial))
        .ok_or_else(|| Error::IllConditioned("singular confluent Vandermonde matrix".into()))?;
    let mut terms = Vec::new();
    let mut col = 0;
    for r in &roots.roots {
        let coeffs: Vec<C64> = (0..r.multiplicity).map(|d| c[col + d]).collect();
        col += r.multiplicity;
        terms.push((r.value, ComplexPoly::new(coeffs)));
    }
    Ok(ClosedForm { terms })
}

pub fn closed_form(p: &ComplexPoly, initial: &[C64]) -> Result<ClosedForm> {
    let roots = char_roots(p, 0.0)?;
    closed_form_from_roots(&roots, initial)
}

/// Linear functional whose kernel is the slow-growth hyperplane.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SlowGrowthFunctional {
    pub normal: Vec<C64>,
    pub lambda_max: C64,
    /// Coefficient of `lambda_max^n` equals `scale * (normal . initial)`.
    pub scale: C64,
}

impl SlowGrowthFunctional {
    pub fn apply(&self, initial: &[C64]) -> C64 {
        self.normal.iter().zip(initial).map(|(a, b)| a * b).sum()
    }

    /// Relative test `|kappa . u| <= tol * |u|`.
    pub fn is_slow(&self, initial: &[C64], tol: f64) -> bool {
        let n = initial.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt();
        self.apply(initial).norm() <= tol * n
    }

    /// A basis of the kernel (dimension `k - 1`).
    pub fn kernel_basis(&self) -> Vec<Vec<C64>> {
        let k = self.normal.len();
        let piv = (0..k)
            .max_by(|&a, &b| self.normal[a].norm().total_cmp(&self.normal[b].norm()))
            .expect("k >= 1");
        (0..k)
            .filter(|&j| j != piv)
            .map(|j| {
                let mut v = vec![ZERO; k];
                v[j] = ONE;
                v[piv] = -self.normal[j] / self.normal[piv];
                v
            })
            .collect()
    }
}

pub fn slow_growth_functional(p: &ComplexPoly) -> Result<SlowGrowthFunctional> {
    let roots = char_roots(p, 0.0)?;
    let top = roots.roots[0].value.norm();
    let unique = roots.roots.len() < 2 || top - roots.roots[1].value.norm() > DEFAULT_REL_TOL * top;
    if roots.roots[0].multiplicity != 1 || !unique {
        return Err(Error::NotMaxmodGeneric);
    }
    let v = confluent_vandermonde(&roots);
    if linalg::inverse_condition(&v) < 1e-13 {
        return Err(Error::IllConditioned("root clusters too tight to separate".into()));
    }
    let inv = v
        .try_inverse()
        .ok_or_else(|| Error::IllConditioned("singular confluent Vandermonde matrix".into()))?;
    let row: Vec<C64> = inv.row(0).iter().copied().collect();
    let big = row
        .iter()
        .copied()
        .max_by(|a, b| a.norm().total_cmp(&b.norm()))
        .expect("k >= 1");
    Ok(SlowGrowthFunctional {
        normal: row.iter().map(|x| x / big).collect(),
        lambda_max: roots.roots[0].value,
        scale: big,
    })
}

/// A tuple on the slow-growth hyperplane: `(1, l, ..., l^{k-1})` for the
/// second root `l` in canonical order.
pub fn slow_initial(p: &ComplexPoly) -> Result<Vec<C64>> {
    let f = slow_growth_functional(p)?;
    let roots = char_roots(p, 0.0)?;
    let l = roots.roots.iter().map(|r| r.value).find(|v| *v != f.lambda_max).ok_or(Error::NotMaxmodGeneric)?;
    Ok((0..p.degree()).map(|j| l.powu(j as u32)).collect())
}

/// Ratios `u_{n+1}/u_n`, `n < n_max`, along the slow tuple of
/// [`slow_initial`], computed in 640-bit fixed point so the run does not drift
/// onto the dominant solution.
pub fn slow_ratios(p: &ComplexPoly, n_max: usize) -> Result<Vec<C64>> {
    let f = slow_growth_functional(p)?;
    let roots = char_roots(p, 0.0)?;
    let l = roots.roots.iter().map(|r| r.value).find(|v| *v != f.lambda_max).ok_or(Error::NotMaxmodGeneric)?;
    let root = hp::polish_root(p, l);
    let k = p.degree();
    let mut init = vec![hp::HpC::from_c64(ONE)];
    for j in 1..k {
        let next = &init[j - 1] * &root;
        init.push(next);
    }
    let alphas: Vec<C64> = (1..=k).map(|i| p.coeff(k - i) / p.leading()).collect();
    Ok(hp::constant_ratios(&alphas, &init, n_max))
}

#[derive(Clone, Copy, Debug)]
pub struct IterOptions {
    pub normalize: bool,
    pub vanish_tol: f64,
}

impl Default for IterOptions {
    fn default() -> Self {
        IterOptions { normalize: true, vanish_tol: 1e-14 }
    }
}

/// Sequence values stored as `mantissa[n] * exp(log_scale[n])`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Trajectory {
    pub mantissa: Vec<C64>,
    pub log_scale: Vec<f64>,
}

impl Trajectory {
    pub fn len(&self) -> usize {
        self.mantissa.len()
    }

    pub fn is_empty(&self) -> bool {
        self.mantissa.is_empty()
    }

    /// `u_n`; may overflow for long normalized runs.
    pub fn value(&self, n: usize) -> C64 {
        self.mantissa[n] * self.log_scale[n].exp()
    }

    /// `u_{n+1} / u_n`.
    pub fn ratio(&self, n: usize) -> C64 {
        self.mantissa[n + 1] / self.mantissa[n] * (self.log_scale[n + 1] - self.log_scale[n]).exp()
    }
}

pub fn iterate(spec: &RecurrenceSpec, z: C64, initial: &[C64], n_max: usize, opts: IterOptions) -> Result<Trajectory> {
    spec.validate()?;
    let k = spec.k;
    if initial.len() != k {
        return Err(Error::Invalid(format!("initial tuple needs {k} entries")));
    }
    let mut mantissa = Vec::with_capacity(n_max + 1);
    let mut log_scale = Vec::with_capacity(n_max + 1);
    let mut window: VecDeque<C64> = VecDeque::with_capacity(k + 1);
    let mut scale = 0.0;
    for &u in initial.iter().take(n_max + 1) {
        mantissa.push(u);
        log_scale.push(0.0);
    }
    window.extend(initial.iter().copied());
    for m in k..=n_max {
        let n = m - k;
        if spec.nonvanishing_last && spec.alpha(k, n, z).norm() <= opts.vanish_tol {
            return Err(Error::CoefficientVanished(n));
        }
        let mut next = ZERO;
        for i in 1..=k {
            next -= spec.alpha(i, n, z) * window[k - i];
        }
        window.pop_front();
        window.push_back(next);
        if opts.normalize {
            let s = window.iter().map(|x| x.norm()).fold(0.0, f64::max);
            if s > 0.0 && s.is_finite() {
                scale += s.ln();
                for x in window.iter_mut() {
                    *x /= s;
                }
            }
        }
        mantissa.push(window[k - 1]);
        log_scale.push(scale);
    }
    Ok(Trajectory { mantissa, log_scale })
}

/// A sequence of polynomials in `z` generated by a recurrence from polynomial
/// initial values.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PolySequence {
    pub spec: RecurrenceSpec,
    pub initial: Vec<ComplexPoly>,
}

/// Values and derivatives at indices `first..=last`, sharing `exp(log_scale)`;
/// `abs_log` holds `ln` of the absolute-value majorant at each index.
#[derive(Clone, Debug)]
pub struct SeqWindow {
    pub first: usize,
    pub values: Vec<C64>,
    pub derivs: Vec<C64>,
    pub log_scale: f64,
    pub abs_log: Vec<f64>,
}

impl SeqWindow {
    pub fn get(&self, n: usize) -> (C64, C64) {
        (self.values[n - self.first], self.derivs[n - self.first])
    }
}


impl PolySequence {
    pub fn new(spec: RecurrenceSpec, initial: Vec<ComplexPoly>) -> Result<Self> {
        spec.validate()?;
        if initial.len() != spec.k {
            return Err(Error::Invalid(format!("initial tuple needs {} polynomials", spec.k)));
        }
        Ok(PolySequence { spec, initial })
    }

    /// Coefficients of every term up to `n_max`; top coefficients that cancel
    /// to rounding level are dropped.
    pub fn polys(&self, n_max: usize) -> Vec<ComplexPoly> {
        let k = self.spec.k;
        let absp = |p: &ComplexPoly| ComplexPoly::new(p.coeffs().iter().map(|c| C64::new(c.norm(), 0.0)).collect());
        let mut ps: Vec<ComplexPoly> = self.initial.clone();
        let mut abs: Vec<ComplexPoly> = self.initial.iter().map(absp).collect();
        for m in k..=n_max {
            let n = m - k;
            let mut acc = ComplexPoly::zero();
            let mut acc_abs = ComplexPoly::zero();
            for i in 1..=k {
                let a = self.spec.coeffs[i - 1].at(n);
                acc = &acc - &(&a * &ps[m - i]);
                acc_abs = &acc_abs + &(&absp(&a) * &abs[m - i]);
            }
            let mut c = acc.coeffs().to_vec();
            while let Some(top) = c.last() {
                let j = c.len() - 1;
                if top.norm() <= 1e-11 * acc_abs.coeff(j).re {
                    c.pop();
                } else {
                    break;
                }
            }
            ps.push(ComplexPoly::new(c));
            abs.push(acc_abs);
        }
        ps.truncate(n_max + 1);
        ps
    }

    pub fn poly(&self, n: usize) -> ComplexPoly {
        self.polys(n).pop().expect("n_max + 1 entries")
    }

    /// Runs the recurrence at `z` up to index `last`, returning the trailing
    /// `width` entries.
    pub fn window(&self, z: C64, last: usize, width: usize) -> SeqWindow {
        let k = self.spec.k;
        let keep = width.max(k);
        let mut vals: VecDeque<C64> = VecDeque::new();
        let mut ders: VecDeque<C64> = VecDeque::new();
        let mut absv: VecDeque<f64> = VecDeque::new();
        let mut abs_shift: VecDeque<f64> = VecDeque::new();
        let mut log_scale = 0.0;
        let mut abs_scale = 0.0;
        for p in self.initial.iter().take(last + 1) {
            let (v, d, s) = p.eval_full(z);
            vals.push_back(v);
            ders.push_back(d);
            absv.push_back(s);
            abs_shift.push_back(0.0);
        }
        for m in k..=last {
            let n = m - k;
            let len = vals.len();
            let mut v = ZERO;
            let mut d = ZERO;
            let mut s = 0.0;
            for i in 1..=k {
                let a = self.spec.coeffs[i - 1].at(n);
                let (av, ad, aa) = a.eval_full(z);
                let (pv, pd, pa) = (vals[len - i], ders[len - i], absv[len - i]);
                v -= av * pv;
                d -= ad * pv + av * pd;
                s += aa * pa;
            }
            vals.push_back(v);
            ders.push_back(d);
            absv.push_back(s);
            abs_shift.push_back(abs_scale);
            if vals.len() > keep + 1 {
                vals.pop_front();
                ders.pop_front();
                absv.pop_front();
                abs_shift.pop_front();
            }
            let big = vals.iter().chain(ders.iter()).map(|x| x.norm()).fold(0.0, f64::max);
            if big > 1e100 || (big < 1e-100 && big > 0.0) {
                log_scale += big.ln();
                for x in vals.iter_mut().chain(ders.iter_mut()) {
                    *x /= big;
                }
            }
            let abig = absv.iter().copied().fold(0.0, f64::max);
            if abig > 1e100 {
                abs_scale += abig.ln();
                for x in absv.iter_mut() {
                    *x /= abig;
                }
            }
        }
        let n_have = vals.len();
        let first = last + 1 - n_have;
        let take = width.min(n_have);
        let skip = n_have - take;
        SeqWindow {
            first: first + skip,
            values: vals.iter().skip(skip).copied().collect(),
            derivs: ders.iter().skip(skip).copied().collect(),
            log_scale,
            abs_log: absv.iter().skip(skip).map(|s| s.ln() + abs_scale).collect(),
        }
    }

    pub fn evaluator(&self, n: usize) -> SequenceEvaluator<'_> {
        let p = self.poly(n);
        SequenceEvaluator { seq: self, n, degree: p.degree(), guesses: newton_polygon_guesses(p.coeffs()) }
    }

    /// Raw zeros of the `n`-th term, found with recurrence-based evaluation.
    pub fn zeros(&self, n: usize) -> Result<Vec<C64>> {
        let ev = self.evaluator(n);
        cpoly::aberth(&ev, cpoly::AberthOptions::default()).map(|r| r.0)
    }
}

/// Evaluates the `n`-th term of a polynomial sequence by running the
/// recurrence, which stays accurate where monomial evaluation cancels.
pub struct SequenceEvaluator<'a> {
    seq: &'a PolySequence,
    n: usize,
    degree: usize,
    guesses: Vec<C64>,
}

impl Evaluator for SequenceEvaluator<'_> {
    fn degree(&self) -> usize {
        self.degree
    }

    fn newton(&self, z: C64) -> NewtonEval {
        // The absolute-value majorant of the recurrence grows much faster than
        // the terms themselves, so a majorant-based backward error accepts
        // points far from any zero. The values are accurate, and the relative
        // Newton correction is used instead.
        let w = self.seq.window(z, self.n, 1);
        let (v, d) = w.get(self.n);
        let step = if v == ZERO { 0.0 } else { (v / d).norm() / z.norm().max(1.0) };
        NewtonEval { value: v, deriv: d, backward_error: if step.is_finite() { step } else { f64::INFINITY } }
    }

    fn initial_guesses(&self) -> Vec<C64> {
        self.guesses.clone()
    }
}

/// Named sequences used throughout the figures.
pub mod presets {
    use super::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn poly(c: &[C64]) -> ComplexPoly {
        ComplexPoly::new(c.to_vec())
    }

    pub fn fibonacci() -> RecurrenceSpec {
        RecurrenceSpec::constant(&[c(-1.0, 0.0), c(-1.0, 0.0)])
    }

    /// `p_{n+1} = p_n + (z+1)(z-i) p_{n-1} + (z^3+10) p_{n-2}`.
    pub fn fig1() -> RecurrenceSpec {
        let q2 = &poly(&[c(1.0, 0.0), ONE]) * &poly(&[c(0.0, -1.0), ONE]);
        let q3 = poly(&[c(10.0, 0.0), ZERO, ZERO, ONE]);
        RecurrenceSpec::forward(vec![ComplexPoly::one(), q2, q3])
    }

    pub fn fig1_upper() -> Vec<ComplexPoly> {
        vec![
            ComplexPoly::zero(),
            poly(&[c(0.0, -5.0), ZERO, ZERO, ZERO, ONE]),
            ComplexPoly::t(),
        ]
    }

    pub fn fig1_lower() -> Vec<ComplexPoly> {
        vec![
            poly(&[c(0.0, 1.0), ZERO, ZERO, ZERO, ZERO, c(-1.0, 0.0), ZERO, ZERO, ONE]),
            poly(&[c(0.0, -5.0), ONE]),
            poly(&[c(-10.0, 0.0), ONE, c(0.0, 5.0)]),
        ]
    }

    /// `p_{n+1} = Q_1 p_n + Q_2 p_{n-1}`.
    pub fn eq41(q1: ComplexPoly, q2: ComplexPoly) -> RecurrenceSpec {
        RecurrenceSpec::forward(vec![q1, q2])
    }

    pub fn fig2_q() -> (ComplexPoly, ComplexPoly) {
        (ComplexPoly::t(), ComplexPoly::from_real(&[-1.0, 0.75]))
    }

    pub fn fig3_q() -> (ComplexPoly, ComplexPoly) {
        (ComplexPoly::t(), ComplexPoly::from_real(&[0.5, -0.5]))
    }

    pub fn fig4_q() -> (ComplexPoly, ComplexPoly) {
        (ComplexPoly::t(), ComplexPoly::from_real(&[1.0, 1.25]))
    }

    /// `(p_{-1}, p_0) = (0, 1)`: sequence index `j` holds `p_{j-1}`.
    pub fn standard_initial() -> Vec<ComplexPoly> {
        vec![ComplexPoly::zero(), ComplexPoly::one()]
    }

    pub fn eq41_sequence(q: (ComplexPoly, ComplexPoly)) -> PolySequence {
        PolySequence::new(eq41(q.0, q.1), standard_initial()).expect("valid preset")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    const PHI: f64 = 1.618_033_988_749_895;

    #[test]
    fn char_poly_examples() {
        let p = char_poly(&presets::fibonacci(), ZERO);
        assert_eq!(p, ComplexPoly::from_real(&[-1.0, -1.0, 1.0]));
        let p = char_poly(&presets::fig1(), ZERO);
        assert!(p.max_abs_diff(&ComplexPoly::new(vec![c(-10.0, 0.0), c(0.0, 1.0), c(-1.0, 0.0), ONE])) < 1e-15);
        let (q1, q2) = presets::fig2_q();
        let p = char_poly(&presets::eq41(q1, q2), c(3.0, 0.0));
        assert!(p.max_abs_diff(&ComplexPoly::from_real(&[-1.25, -3.0, 1.0])) < 1e-15);
    }

    #[test]
    fn spectral_examples() {
        let s = spectral_data(&ComplexPoly::from_real(&[-1.0, -1.0, 1.0]), &[ZERO, ONE], 1e-12).unwrap();
        assert_eq!(s.classification, Classification::MaxmodGeneric);
        assert!((s.lambda_max.unwrap() - c(PHI, 0.0)).norm() < 1e-12);
        let p = ComplexPoly::from_real(&[1.0, 0.0, 1.0]);
        let s = spectral_data(&p, &[ONE, c(0.0, 1.0)], 1e-12).unwrap();
        assert_eq!(s.classification, Classification::NongenericDominant);
        assert!((s.dominant.unwrap() - c(0.0, 1.0)).norm() < 1e-12);
        let s = spectral_data(&p, &[ONE, ZERO], 1e-12).unwrap();
        assert_eq!(s.classification, Classification::NongenericNondominant);
        let e = spectral_data(&ComplexPoly::from_real(&[0.0, -1.0, 1.0]), &[ONE, ONE], 1e-12);
        assert_eq!(e, Err(Error::DegenerateConstantTerm));
    }

    #[test]
    fn jordan_dominant() {
        // (t-2)^2 (t+2): both max-modulus roots live, the double one wins.
        let p = ComplexPoly::from_roots(&[c(2.0, 0.0), c(2.0, 0.0), c(-2.0, 0.0)]);
        let s = spectral_data(&p, &[ONE, c(0.5, 0.0), c(3.0, 0.0)], 1e-12).unwrap();
        assert_eq!(s.classification, Classification::NongenericDominant);
        assert!((s.dominant.unwrap() - c(2.0, 0.0)).norm() < 1e-6);
    }

    #[test]
    fn closed_form_examples() {
        let cf = closed_form(&ComplexPoly::from_real(&[-1.0, -1.0, 1.0]), &[ZERO, ONE]).unwrap();
        let s5 = 5f64.sqrt();
        assert!((cf.terms[0].1.coeff(0) - c(1.0 / s5, 0.0)).norm() < 1e-12);
        assert!((cf.terms[1].1.coeff(0) - c(-1.0 / s5, 0.0)).norm() < 1e-12);
        let cf = closed_form(&ComplexPoly::from_real(&[-2.0, 1.0]), &[c(3.0, 0.0)]).unwrap();
        assert_eq!(cf.terms.len(), 1);
        assert!((cf.terms[0].1.coeff(0) - c(3.0, 0.0)).norm() < 1e-12);
        let cf = closed_form(&ComplexPoly::from_real(&[1.0, -2.0, 1.0]), &[ZERO, ONE]).unwrap();
        assert_eq!(cf.terms.len(), 1);
        assert!(cf.terms[0].1.max_abs_diff(&ComplexPoly::t()) < 1e-6);
    }

    #[test]
    fn fibonacci_functional() {
        let p = ComplexPoly::from_real(&[-1.0, -1.0, 1.0]);
        let k = slow_growth_functional(&p).unwrap();
        let psi = 1.0 - PHI;
        assert!(k.is_slow(&[ONE, c(psi, 0.0)], 1e-12));
        assert!(!k.is_slow(&[ZERO, ONE], 1e-6));
        assert_eq!(k.kernel_basis().len(), 1);
        let init = slow_initial(&p).unwrap();
        assert!((init[1] - c(psi, 0.0)).norm() < 1e-15);
        let r = slow_ratios(&p, 200).unwrap();
        assert!((r[199] - c(psi, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn iterate_examples() {
        let t = iterate(&presets::fibonacci(), ZERO, &[ZERO, ONE], 10, IterOptions { normalize: false, vanish_tol: 0.0 }).unwrap();
        let want = [0.0, 1.0, 1.0, 2.0, 3.0, 5.0, 8.0, 13.0, 21.0, 34.0, 55.0];
        for (n, w) in want.iter().enumerate() {
            assert_eq!(t.value(n), c(*w, 0.0));
        }
        let (q1, q2) = presets::fig2_q();
        let t = iterate(&presets::eq41(q1, q2), c(2.0, 0.0), &[ZERO, ONE], 3, IterOptions::default()).unwrap();
        assert!((t.value(2) - c(2.0, 0.0)).norm() < 1e-14);
        assert!((t.value(3) - c(4.5, 0.0)).norm() < 1e-14);
        let t = iterate(&presets::fibonacci(), ZERO, &[ZERO, ONE], 61, IterOptions::default()).unwrap();
        assert!((t.ratio(60) - c(PHI, 0.0)).norm() < 1e-10);
    }

    #[test]
    fn vanishing_coefficient_is_reported() {
        let (q1, q2) = presets::fig2_q();
        let mut spec = presets::eq41(q1, q2);
        spec.nonvanishing_last = true;
        let e = iterate(&spec, c(4.0 / 3.0, 0.0), &[ZERO, ONE], 5, IterOptions::default());
        assert_eq!(e, Err(Error::CoefficientVanished(0)));
    }

    #[test]
    fn validation() {
        let mut s = presets::fibonacci();
        s.k = 0;
        assert!(s.validate().is_err());
        let s = RecurrenceSpec::constant(&[ONE, ZERO]);
        assert!(s.validate().is_err());
    }

    #[test]
    fn spec_json_schema() {
        let json = r#"{"k": 2, "coeffs": [
            {"fixed": [[-1.0, 0.0]]},
            {"varying": {"limit": [[-1.0, 0.0]], "rule": {"name": "limit_plus_cn_over_n", "c": [[1.0, 0.0]]}}}
        ]}"#;
        let s: RecurrenceSpec = serde_json::from_str(json).unwrap();
        assert!(s.validate().is_ok());
        assert!((s.alpha(2, 0, ZERO) - ZERO).norm() < 1e-15);
        assert!((s.alpha(2, 9, ZERO) - c(-0.9, 0.0)).norm() < 1e-15);
        assert!(s.limit_defect(&[ZERO], 999) <= 1e-3 + 1e-15);
        let t = iterate(&s, ZERO, &[ZERO, ONE], 400, IterOptions::default()).unwrap();
        assert!((t.ratio(399) - c(PHI, 0.0)).norm() < 1e-2);
    }

    #[test]
    fn sequence_polys_match_pointwise_iteration() {
        let seq = PolySequence::new(presets::fig1(), presets::fig1_upper()).unwrap();
        let z = c(0.3, -0.7);
        let ps = seq.polys(20);
        let t = iterate(&seq.spec, z, &seq.initial.iter().map(|p| p.eval(z)).collect::<Vec<_>>(), 20, IterOptions { normalize: false, vanish_tol: 0.0 }).unwrap();
        for n in 0..=20 {
            assert!((ps[n].eval(z) - t.value(n)).norm() <= 1e-9 * t.value(n).norm().max(1.0));
        }
        let w = seq.window(z, 20, 2);
        let (v, d) = w.get(20);
        let scale = w.log_scale.exp();
        assert!((v * scale - ps[20].eval(z)).norm() <= 1e-9 * v.norm().max(1.0));
        assert!((d * scale - ps[20].derivative().eval(z)).norm() <= 1e-9 * d.norm().max(1.0));
    }

    #[test]
    fn sequence_zeros_are_accurate() {
        let seq = presets::eq41_sequence(presets::fig2_q());
        // u_j = p_{j-1}; p_2 = z^2 + (3z-4)/4.
        let z = seq.zeros(3).unwrap();
        let p2 = ComplexPoly::from_real(&[-1.0, 0.75, 1.0]);
        for r in z {
            assert!(p2.eval(r).norm() < 1e-12);
        }
    }
}
