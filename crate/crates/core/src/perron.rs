//! Products of parameter-dependent matrices: projective convergence of
//! `T_n(x) ... T_1(x) x0`, the slow-growth covector `w(x)` and rank-one limits.

use std::fmt::Debug;
use std::marker::PhantomData;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cpoly::{C64, ONE, ZERO};
use crate::error::{Error, Result};
use crate::linalg::{self, CMat, CVec};
use crate::recurrence::RecurrenceSpec;

pub trait MatrixFamily: Sync {
    type Param: Clone + Send + Sync + Debug;

    fn dim(&self) -> usize;
    /// `T_n(x)` for `n >= 1`.
    fn matrix(&self, n: usize, x: &Self::Param) -> CMat;
    fn limit(&self, x: &Self::Param) -> CMat;
}

/// The same matrix at every step and every parameter.
#[derive(Clone, Debug)]
pub struct ConstantFamily {
    pub t: CMat,
}

impl MatrixFamily for ConstantFamily {
    type Param = ();

    fn dim(&self) -> usize {
        self.t.nrows()
    }

    fn matrix(&self, _n: usize, _x: &()) -> CMat {
        self.t.clone()
    }

    fn limit(&self, _x: &()) -> CMat {
        self.t.clone()
    }
}

/// A family given by closures.
pub struct FnFamily<P, F, G> {
    dim: usize,
    step: F,
    lim: G,
    _p: PhantomData<fn(P)>,
}

impl<P, F, G> FnFamily<P, F, G>
where
    F: Fn(usize, &P) -> CMat + Sync,
    G: Fn(&P) -> CMat + Sync,
{
    pub fn new(dim: usize, step: F, lim: G) -> Self {
        FnFamily { dim, step, lim, _p: PhantomData }
    }
}

impl<P, F, G> MatrixFamily for FnFamily<P, F, G>
where
    P: Clone + Send + Sync + Debug,
    F: Fn(usize, &P) -> CMat + Sync,
    G: Fn(&P) -> CMat + Sync,
{
    type Param = P;

    fn dim(&self) -> usize {
        self.dim
    }

    fn matrix(&self, n: usize, x: &P) -> CMat {
        (self.step)(n, x)
    }

    fn limit(&self, x: &P) -> CMat {
        (self.lim)(x)
    }
}

/// Companion matrices of a recurrence. The state after `n` steps is
/// `(u_{n+k-1}, ..., u_n)`, so `T_n` carries the coefficients of relation `n-1`.
#[derive(Clone, Debug)]
pub struct CompanionFamily {
    pub spec: RecurrenceSpec,
}

fn companion(k: usize, alpha: impl Fn(usize) -> C64) -> CMat {
    let mut t = CMat::zeros(k, k);
    for i in 1..=k {
        t[(0, i - 1)] = -alpha(i);
    }
    for r in 1..k {
        t[(r, r - 1)] = ONE;
    }
    t
}

impl MatrixFamily for CompanionFamily {
    type Param = C64;

    fn dim(&self) -> usize {
        self.spec.k
    }

    fn matrix(&self, n: usize, z: &C64) -> CMat {
        companion(self.spec.k, |i| self.spec.alpha(i, n - 1, *z))
    }

    fn limit(&self, z: &C64) -> CMat {
        companion(self.spec.k, |i| self.spec.alpha_limit(i, *z))
    }
}

/// A point of complex projective space, stored with unit norm and its first
/// significant entry real and positive.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ProjectivePoint {
    rep: Vec<C64>,
}

impl ProjectivePoint {
    pub fn new(v: Vec<C64>) -> Result<Self> {
        let n = v.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
        if !(n > 0.0) || !n.is_finite() {
            return Err(Error::Invalid("projective point needs a nonzero finite vector".into()));
        }
        let pivot = v.iter().find(|c| c.norm() >= 1e-8 * n).copied().expect("nonzero");
        let phase = pivot.conj() / pivot.norm();
        Ok(ProjectivePoint { rep: v.iter().map(|c| c * phase / n).collect() })
    }

    pub fn from_cvec(v: &CVec) -> Result<Self> {
        Self::new(v.iter().copied().collect())
    }

    pub fn rep(&self) -> &[C64] {
        &self.rep
    }

    pub fn to_cvec(&self) -> CVec {
        CVec::from_column_slice(&self.rep)
    }
}

fn dot(a: &[C64], b: &[C64]) -> C64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

/// Fubini-Study distance `arccos |<a,b>|`, evaluated stably.
pub fn fubini_study_dist(a: &ProjectivePoint, b: &ProjectivePoint) -> f64 {
    let ip = dot(&a.rep, &b.rep);
    let perp: f64 = b
        .rep
        .iter()
        .zip(&a.rep)
        .map(|(y, x)| (y - x * ip).norm_sqr())
        .sum::<f64>()
        .sqrt();
    perp.atan2(ip.norm())
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ProductLine {
    pub line: ProjectivePoint,
    /// `ln(|K_n x0| / |x0|)`.
    pub log_growth: f64,
}

fn check_regular(m: &CMat, n: usize) -> Result<()> {
    let k = m.nrows() as i32;
    let scale = m.norm().powi(k);
    let det = m.clone().lu().determinant();
    if !(det.norm() > 1e-14 * scale) {
        return Err(Error::SingularStep(n));
    }
    Ok(())
}

pub fn product_line<F: MatrixFamily>(fam: &F, x: &F::Param, x0: &[C64], n: usize) -> Result<ProductLine> {
    let mut v = CVec::from_column_slice(x0);
    let n0 = v.norm();
    if !(n0 > 0.0) {
        return Err(Error::Invalid("x0 must be nonzero".into()));
    }
    v /= C64::new(n0, 0.0);
    let mut log_growth = 0.0;
    for j in 1..=n {
        let t = fam.matrix(j, x);
        check_regular(&t, j)?;
        v = &t * v;
        let s = v.norm();
        log_growth += s.ln();
        v /= C64::new(s, 0.0);
    }
    Ok(ProductLine { line: ProjectivePoint::from_cvec(&v)?, log_growth })
}

/// Dominant eigenvalue with right and left eigenvectors, provided it is the
/// unique eigenvalue of maximal modulus and simple.
#[derive(Clone, Debug)]
pub struct SpectralGap {
    pub lambda: C64,
    pub second: f64,
    pub right: CVec,
    pub left: CVec,
}

pub fn spectral_gap(t: &CMat) -> Result<SpectralGap> {
    let ev = linalg::eigenvalues(t);
    let top = ev[0].norm();
    let second = ev.get(1).map(|z| z.norm()).unwrap_or(0.0);
    if !(top > 0.0) || second >= top * (1.0 - 1e-8) {
        return Err(Error::NoSpectralGap);
    }
    let shifted = t - CMat::identity(t.nrows(), t.ncols()) * ev[0];
    Ok(SpectralGap {
        lambda: ev[0],
        second,
        right: linalg::null_vector(&shifted),
        left: linalg::null_vector(&shifted.transpose()),
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConvergenceReport {
    pub n_used: usize,
    pub final_distance_step: f64,
    pub contraction_estimate: f64,
    pub limit_point: ProjectivePoint,
    pub certified: bool,
    /// Distance between successive block iterates.
    pub history: Vec<f64>,
}

#[derive(Clone, Copy, Debug)]
pub struct WOptions {
    pub eps: f64,
    pub burn_tol: f64,
    pub max_burn: usize,
    pub max_block: usize,
    pub tol: f64,
}

impl Default for WOptions {
    fn default() -> Self {
        WOptions { eps: 1e-6, burn_tol: 1e-4, max_burn: 1_000_000, max_block: 1 << 16, tol: 1e-10 }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WEstimate {
    /// Transposed blocks after the burn-in applied to `v(x0)`.
    pub tail: ProjectivePoint,
    /// The tail pulled back through the first `burn_in` steps; annihilating
    /// this line is what makes an initial vector slow growing.
    pub full: ProjectivePoint,
    pub burn_in: usize,
    pub block: usize,
    pub report: ConvergenceReport,
}

pub fn estimate_w<F: MatrixFamily>(fam: &F, x: &F::Param, anchor: &F::Param, l: usize, opts: WOptions) -> Result<WEstimate> {
    if l == 0 {
        return Err(Error::Invalid("block count l must be at least 1".into()));
    }
    let at_anchor = spectral_gap(&fam.limit(anchor))?;
    let limit = fam.limit(x);
    let here = spectral_gap(&limit)?;
    let lambda = here.lambda;
    let k = fam.dim();

    let mut burn_in = opts.max_burn;
    for n in 1..=opts.max_burn {
        if (fam.matrix(n, x) - &limit).norm() / lambda.norm() <= opts.burn_tol {
            burn_in = n - 1;
            break;
        }
    }

    let u = &here.right;
    let v = &here.left;
    let proj = (u * v.transpose()) / (v.transpose() * u)[(0, 0)];
    let mut block = 1;
    let mut power = &limit / lambda;
    while (&power - &proj).norm() >= opts.eps / 2.0 && block < opts.max_block {
        power = &power * &power;
        block *= 2;
    }

    let v0 = &at_anchor.left;
    let mut m = linalg::identity(k);
    let mut prev = ProjectivePoint::from_cvec(v0)?;
    let mut history = Vec::with_capacity(l);
    let mut idx = burn_in;
    let mut y = prev.clone();
    for _ in 0..l {
        for _ in 0..block {
            idx += 1;
            let t = fam.matrix(idx, x);
            check_regular(&t, idx)?;
            m = &m * t.transpose();
            let s = m.norm();
            m /= C64::new(s, 0.0);
        }
        y = ProjectivePoint::from_cvec(&(&m * v0))?;
        history.push(fubini_study_dist(&prev, &y));
        prev = y.clone();
    }

    let mut r = y.to_cvec();
    for n in (1..=burn_in).rev() {
        r = fam.matrix(n, x).transpose() * r;
        let s = r.norm();
        r /= C64::new(s, 0.0);
    }
    let full = ProjectivePoint::from_cvec(&r)?;

    let last = *history.last().expect("l >= 1");
    let before = if history.len() >= 2 { history[history.len() - 2] } else { f64::INFINITY };
    // at the rounding floor successive distances are noise
    let contraction_estimate = if last <= 64.0 * f64::EPSILON { 0.0 } else { last / before };
    let report = ConvergenceReport {
        n_used: idx,
        final_distance_step: last,
        contraction_estimate,
        limit_point: y.clone(),
        certified: last <= opts.tol && contraction_estimate < 1.0,
        history,
    };
    Ok(WEstimate { tail: y, full, burn_in, block, report })
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SweepValue {
    pub u_max: ProjectivePoint,
    pub w: ProjectivePoint,
    pub n_used: usize,
    pub growth_rate: f64,
    pub report: ConvergenceReport,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SweepPoint<P> {
    pub x: P,
    pub value: std::result::Result<SweepValue, String>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SweepResult<P> {
    pub points: Vec<SweepPoint<P>>,
    /// Largest distance between `w` at consecutive grid points.
    pub adjacency_proxy: f64,
}

fn sweep_one<F: MatrixFamily>(fam: &F, x: &F::Param, x0: &[C64], tol: f64) -> Result<SweepValue> {
    spectral_gap(&fam.limit(x))?;
    let mut n = 64;
    let mut a = product_line(fam, x, x0, n)?;
    loop {
        let b = product_line(fam, x, x0, 2 * n)?;
        let d = fubini_study_dist(&a.line, &b.line);
        n *= 2;
        a = b;
        if d <= tol || n >= 1 << 16 {
            break;
        }
    }
    let w = estimate_w(fam, x, x, 64, WOptions { tol, ..WOptions::default() })?;
    Ok(SweepValue {
        u_max: a.line,
        w: w.full,
        n_used: n,
        growth_rate: a.log_growth / n as f64,
        report: w.report,
    })
}

pub fn parametric_sweep<F: MatrixFamily>(fam: &F, grid: &[F::Param], x0: &[C64], tol: f64) -> SweepResult<F::Param> {
    let points: Vec<SweepPoint<F::Param>> = grid
        .par_iter()
        .map(|x| SweepPoint { x: x.clone(), value: sweep_one(fam, x, x0, tol).map_err(|e| e.to_string()) })
        .collect();
    let adjacency_proxy = points
        .windows(2)
        .filter_map(|w| match (&w[0].value, &w[1].value) {
            (Ok(a), Ok(b)) => Some(fubini_study_dist(&a.w, &b.w)),
            _ => None,
        })
        .fold(0.0, f64::max);
    SweepResult { points, adjacency_proxy }
}

#[derive(Clone, Debug)]
pub struct NormalizedProduct {
    pub matrix: CMat,
    pub lambda_n: C64,
    /// `sigma_2 / sigma_1`, the distance from rank one.
    pub sigma_ratio: f64,
}

pub fn normalized_product_limit<F: MatrixFamily>(fam: &F, x: &F::Param, n: usize) -> Result<NormalizedProduct> {
    spectral_gap(&fam.limit(x))?;
    let k = fam.dim();
    let mut m = linalg::identity(k);
    for j in 1..=n {
        let t = fam.matrix(j, x);
        check_regular(&t, j)?;
        m = t * m;
        let s = m.norm();
        m /= C64::new(s, 0.0);
    }
    let ev = linalg::eigenvalues(&m);
    let lambda_n = ev[0];
    if lambda_n == ZERO {
        return Err(Error::NoSpectralGap);
    }
    let matrix = m / lambda_n;
    let s = linalg::singular_values(&matrix);
    let sigma_ratio = if s.len() > 1 { s[1] / s[0] } else { 0.0 };
    Ok(NormalizedProduct { matrix, lambda_n, sigma_ratio })
}

/// `diag(3, 1) + ones / n`, the standard perturbed example.
pub fn perturbed_diag_family() -> impl MatrixFamily<Param = ()> {
    let base = CMat::from_diagonal(&CVec::from_vec(vec![C64::new(3.0, 0.0), ONE]));
    let b2 = base.clone();
    FnFamily::new(
        2,
        move |n: usize, _: &()| &base + CMat::from_element(2, 2, C64::new(1.0 / n as f64, 0.0)),
        move |_: &()| b2.clone(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn pp(v: &[f64]) -> ProjectivePoint {
        ProjectivePoint::new(v.iter().map(|&x| c(x, 0.0)).collect()).unwrap()
    }

    fn diag(a: f64, b: f64) -> ConstantFamily {
        ConstantFamily { t: CMat::from_diagonal(&CVec::from_vec(vec![c(a, 0.0), c(b, 0.0)])) }
    }

    fn fib() -> ConstantFamily {
        ConstantFamily { t: CMat::from_row_slice(2, 2, &[ONE, ONE, ONE, ZERO]) }
    }

    const PHI: f64 = 1.618_033_988_749_895;

    #[test]
    fn fs_examples() {
        assert_eq!(fubini_study_dist(&pp(&[1.0, 0.0]), &pp(&[1.0, 0.0])), 0.0);
        assert!((fubini_study_dist(&pp(&[1.0, 0.0]), &pp(&[0.0, 1.0])) - std::f64::consts::FRAC_PI_2).abs() < 1e-15);
        assert!((fubini_study_dist(&pp(&[1.0, 1.0]), &pp(&[1.0, 0.0])) - std::f64::consts::FRAC_PI_4).abs() < 1e-15);
    }

    #[test]
    fn normalization_is_idempotent() {
        let a = ProjectivePoint::new(vec![c(0.0, 2.0), c(1.0, -1.0)]).unwrap();
        let b = ProjectivePoint::new(a.rep().to_vec()).unwrap();
        let scaled = ProjectivePoint::new(vec![c(0.0, 2.0) * c(-3.0, 0.5), c(1.0, -1.0) * c(-3.0, 0.5)]).unwrap();
        for i in 0..2 {
            assert!((a.rep()[i] - b.rep()[i]).norm() < 1e-15);
            assert!((a.rep()[i] - scaled.rep()[i]).norm() < 1e-12);
        }
        assert!(ProjectivePoint::new(vec![ZERO, ZERO]).is_err());
    }

    #[test]
    fn product_line_examples() {
        let r = product_line(&diag(2.0, 0.5), &(), &[ONE, ONE], 60).unwrap();
        assert!(fubini_study_dist(&r.line, &pp(&[1.0, 0.0])) < 1e-15);
        assert!((r.log_growth / 60.0 - 2f64.ln()).abs() < 0.02);
        let r = product_line(&fib(), &(), &[ONE, ZERO], 60).unwrap();
        assert!(fubini_study_dist(&r.line, &pp(&[PHI, 1.0])) < 1e-12);
        // The iterate follows the eigenvector of T_n, about (1, 1/(2n)).
        let d200 = fubini_study_dist(&product_line(&perturbed_diag_family(), &(), &[ONE, ONE], 200).unwrap().line, &pp(&[1.0, 0.0]));
        let d400 = fubini_study_dist(&product_line(&perturbed_diag_family(), &(), &[ONE, ONE], 400).unwrap().line, &pp(&[1.0, 0.0]));
        assert!(d200 < 3e-3);
        assert!((d400 / d200 - 0.5).abs() < 0.05);
    }

    #[test]
    fn estimate_w_examples() {
        let w = estimate_w(&diag(2.0, 0.5), &(), &(), 8, WOptions::default()).unwrap();
        assert!(fubini_study_dist(&w.tail, &pp(&[1.0, 0.0])) < 1e-12);
        assert!(w.report.certified);
        let w = estimate_w(&fib(), &(), &(), 8, WOptions::default()).unwrap();
        assert!(fubini_study_dist(&w.full, &pp(&[PHI, 1.0])) < 1e-12);
        let w = estimate_w(&perturbed_diag_family(), &(), &(), 400, WOptions::default()).unwrap();
        assert!(fubini_study_dist(&w.tail, &pp(&[1.0, 0.0])) < 1e-4);
    }

    #[test]
    fn no_gap_is_reported() {
        let rot = ConstantFamily { t: CMat::from_row_slice(2, 2, &[ZERO, -ONE, ONE, ZERO]) };
        assert!(matches!(estimate_w(&rot, &(), &(), 4, WOptions::default()), Err(Error::NoSpectralGap)));
    }

    #[test]
    fn normalized_limit_examples() {
        let r = normalized_product_limit(&diag(2.0, 0.5), &(), 50).unwrap();
        assert!(r.sigma_ratio <= 1e-12);
        assert!((r.matrix[(0, 0)] - ONE).norm() < 1e-12);
        let r = normalized_product_limit(&fib(), &(), 60).unwrap();
        assert!(r.sigma_ratio <= 1e-10);
        let r = normalized_product_limit(&perturbed_diag_family(), &(), 300).unwrap();
        assert!(r.sigma_ratio <= 1e-6);
    }

    #[test]
    fn companion_family_matches_recurrence() {
        use crate::recurrence::{iterate, presets, IterOptions};
        let (q1, q2) = presets::fig2_q();
        let fam = CompanionFamily { spec: presets::eq41(q1, q2) };
        let z = c(2.5, 0.3);
        let t = iterate(&fam.spec, z, &[ZERO, ONE], 40, IterOptions::default()).unwrap();
        let mut v = CVec::from_vec(vec![ONE, ZERO]);
        let mut prev = v[0];
        for n in 1..=38 {
            v = fam.matrix(n, &z) * v;
            let ratio = v[0] / prev;
            assert!((ratio - t.ratio(n)).norm() < 1e-10 * ratio.norm());
            prev = v[0];
        }
    }

    #[test]
    fn constant_sweep_is_flat() {
        let grid = vec![(), (), ()];
        let s = parametric_sweep(&diag(2.0, 0.5), &grid, &[ONE, ONE], 1e-10);
        assert!(s.adjacency_proxy <= 1e-8);
        assert!(s.points.iter().all(|p| p.value.is_ok()));
    }
}
