//! The asymptotic symbol equation `Psi^k + phi_1(z) Psi^{k-1} + ... + phi_k(z) = 0`
//! over a region of the `z`-plane: leading-root field, the induced
//! maxmod-discriminant, branch points, ratio fields and isolated stable zeros.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cpoly::{self, sort_canonical, sylvester_det, ComplexPoly, C64, ONE, ZERO};
use crate::error::{Error, Result};
use crate::recurrence::{iterate, IterOptions, RecurrenceSpec};

/// Monic symbol polynomial in `Psi` with coefficients polynomial in `z`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SymbolEquation {
    pub k: usize,
    /// `phi[i - 1]` multiplies `Psi^{k-i}`.
    pub phi: Vec<ComplexPoly>,
}

impl SymbolEquation {
    pub fn new(phi: Vec<ComplexPoly>) -> Result<Self> {
        let k = phi.len();
        if k == 0 {
            return Err(Error::Invalid("symbol degree must be at least 1".into()));
        }
        if phi[k - 1].is_zero() {
            return Err(Error::Invalid("last symbol coefficient is identically zero".into()));
        }
        Ok(SymbolEquation { k, phi })
    }

    /// Limit coefficients of a recurrence.
    pub fn from_recurrence(spec: &RecurrenceSpec) -> Result<Self> {
        spec.validate()?;
        Self::new(spec.coeffs.iter().map(|r| r.limit().clone()).collect())
    }

    /// `Psi^2 - Q1 Psi - Q2`, the symbol of `p_{n+1} = Q1 p_n + Q2 p_{n-1}`.
    pub fn from_q(q1: &ComplexPoly, q2: &ComplexPoly) -> Result<Self> {
        Self::new(vec![-q1, -q2])
    }

    /// `(Q1, Q2)` for a quadratic symbol.
    pub fn q_pair(&self) -> Option<(ComplexPoly, ComplexPoly)> {
        (self.k == 2).then(|| (-&self.phi[0], -&self.phi[1]))
    }

    /// Coefficients in `Psi` at a fixed `z`, ascending.
    pub fn coeffs_at(&self, z: C64) -> Vec<C64> {
        let k = self.k;
        let mut c = vec![ZERO; k + 1];
        c[k] = ONE;
        for i in 1..=k {
            c[k - i] = self.phi[i - 1].eval(z);
        }
        c
    }

    pub fn poly_at(&self, z: C64) -> ComplexPoly {
        ComplexPoly::new(self.coeffs_at(z))
    }

    fn max_degree(&self) -> usize {
        self.phi.iter().map(ComplexPoly::degree).max().unwrap_or(0)
    }
}

/// Roots in `Psi` sorted by descending modulus.
fn symbol_roots(sym: &SymbolEquation, z: C64) -> Vec<C64> {
    let mut r = cpoly::roots_raw(&sym.poly_at(z)).unwrap_or_default();
    sort_canonical(&mut r, |x| *x);
    r
}

fn marker_of(roots: &[C64]) -> f64 {
    match roots {
        [] | [_] => 0.0,
        [a, b, ..] => {
            let (m1, m2) = (a.norm(), b.norm());
            if m1 == 0.0 {
                1.0
            } else {
                m2 / m1
            }
        }
    }
}

/// `|second root| / |first root|` of the symbol at `z`.
pub fn marker(sym: &SymbolEquation, z: C64) -> f64 {
    marker_of(&symbol_roots(sym, z))
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PsiValue {
    Leading(C64),
    Nongeneric,
}

impl PsiValue {
    pub fn value(&self) -> Option<C64> {
        match self {
            PsiValue::Leading(z) => Some(*z),
            PsiValue::Nongeneric => None,
        }
    }
}

fn leading_degenerate(sym: &SymbolEquation, z: C64) -> bool {
    let (v, _, s) = sym.phi[sym.k - 1].eval_full(z);
    v.norm() <= 1e-14 * s.max(f64::MIN_POSITIVE)
}

pub fn psi_max(sym: &SymbolEquation, z: C64, rel_tol: f64) -> Result<PsiValue> {
    if leading_degenerate(sym, z) {
        return Err(Error::DegenerateLeading);
    }
    let r = symbol_roots(sym, z);
    if marker_of(&r) >= 1.0 - rel_tol {
        Ok(PsiValue::Nongeneric)
    } else {
        Ok(PsiValue::Leading(r[0]))
    }
}

/// Rectangular lattice of nodes `corner + i dx + j dy i`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Grid {
    pub corner: C64,
    pub dx: f64,
    pub dy: f64,
    pub nx: usize,
    pub ny: usize,
}

impl Grid {
    pub fn window(x0: f64, x1: f64, y0: f64, y1: f64, nx: usize, ny: usize) -> Result<Self> {
        if nx < 2 || ny < 2 || !(x1 > x0) || !(y1 > y0) {
            return Err(Error::Invalid("grid needs at least 2x2 nodes and a nondegenerate window".into()));
        }
        Ok(Grid {
            corner: C64::new(x0, y0),
            dx: (x1 - x0) / (nx - 1) as f64,
            dy: (y1 - y0) / (ny - 1) as f64,
            nx,
            ny,
        })
    }

    pub fn len(&self) -> usize {
        self.nx * self.ny
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Node at column `i`, row `j`.
    pub fn node(&self, i: usize, j: usize) -> C64 {
        self.corner + C64::new(i as f64 * self.dx, j as f64 * self.dy)
    }

    /// Row-major nodes.
    pub fn nodes(&self) -> Vec<C64> {
        (0..self.ny).flat_map(|j| (0..self.nx).map(move |i| self.node(i, j))).collect()
    }

    /// The larger of the two spacings.
    pub fn step(&self) -> f64 {
        self.dx.max(self.dy)
    }

    pub fn contains(&self, z: C64) -> bool {
        let far = self.node(self.nx - 1, self.ny - 1);
        z.re >= self.corner.re && z.re <= far.re && z.im >= self.corner.im && z.im <= far.im
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CellFlag {
    Generic,
    Nongeneric,
    Degenerate,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Cell {
    pub z: C64,
    pub marker: f64,
    pub psi_max: Option<C64>,
    pub flag: CellFlag,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GridField {
    pub grid: Grid,
    /// Row-major, see [`Grid::nodes`].
    pub cells: Vec<Cell>,
}

impl GridField {
    pub fn cell(&self, i: usize, j: usize) -> &Cell {
        &self.cells[j * self.grid.nx + i]
    }
}

pub fn marker_grid(sym: &SymbolEquation, grid: &Grid, rel_tol: f64) -> GridField {
    let cells = grid
        .nodes()
        .into_par_iter()
        .map(|z| {
            let r = symbol_roots(sym, z);
            let m = marker_of(&r);
            let (psi, flag) = if leading_degenerate(sym, z) {
                (None, CellFlag::Degenerate)
            } else if m >= 1.0 - rel_tol {
                (None, CellFlag::Nongeneric)
            } else {
                (Some(r[0]), CellFlag::Generic)
            };
            Cell { z, marker: m, psi_max: psi, flag }
        })
        .collect();
    GridField { grid: *grid, cells }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PointTag {
    Eps(f64),
    EpsInfinity,
    MarkerLevelset,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CurvePoint {
    pub z: C64,
    pub tag: PointTag,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct DiscriminantCurve {
    pub points: Vec<CurvePoint>,
    pub polylines: Vec<Vec<C64>>,
}

impl DiscriminantCurve {
    pub fn positions(&self) -> Vec<C64> {
        self.points.iter().map(|p| p.z).collect()
    }

    /// Distance from `z` to the nearest point.
    pub fn point_distance(&self, z: C64) -> f64 {
        self.points.iter().map(|p| (p.z - z).norm()).fold(f64::INFINITY, f64::min)
    }

    /// Distance from `z` to the polylines (isolated vertices count as points).
    pub fn polyline_distance(&self, z: C64) -> f64 {
        let mut best = f64::INFINITY;
        for line in &self.polylines {
            if line.len() == 1 {
                best = best.min((line[0] - z).norm());
            }
            for w in line.windows(2) {
                best = best.min(segment_distance(z, w[0], w[1]));
            }
        }
        best
    }
}

fn segment_distance(z: C64, a: C64, b: C64) -> f64 {
    let d = b - a;
    let l2 = d.norm_sqr();
    if l2 == 0.0 {
        return (z - a).norm();
    }
    let t = (((z - a) * d.conj()).re / l2).clamp(0.0, 1.0);
    (z - (a + d * t)).norm()
}

/// `1.05^j` for `j >= 0` up to `1e6`.
pub fn default_eps_grid() -> Vec<f64> {
    let mut v = Vec::new();
    let mut e = 1.0;
    while e <= 1e6 {
        v.push(e);
        e *= 1.05;
    }
    v
}

#[derive(Clone, Copy, Debug)]
pub struct EpsOptions {
    /// Slices are refined until no root moves farther than this between
    /// neighbouring values of `eps`.
    pub max_gap: f64,
    pub verify_tol: f64,
    pub split_factor: f64,
}

impl Default for EpsOptions {
    fn default() -> Self {
        EpsOptions { max_gap: 0.01, verify_tol: 1e-8, split_factor: 5.0 }
    }
}

fn eps_slice(q1sq: &ComplexPoly, q2: &ComplexPoly, eps: f64) -> Vec<C64> {
    let p = &q1sq.scale(C64::new(eps, 0.0)) + &q2.scale(C64::new(4.0, 0.0));
    if p.is_zero() {
        return Vec::new();
    }
    let mut r = cpoly::roots_raw(&p).unwrap_or_default();
    sort_canonical(&mut r, |x| *x);
    r
}

fn max_move(a: &[C64], b: &[C64]) -> f64 {
    if a.len() != b.len() {
        return 0.0;
    }
    a.iter()
        .map(|x| b.iter().map(|y| (x - y).norm()).fold(f64::INFINITY, f64::min))
        .fold(0.0, f64::max)
}

/// Traces `eps Q1^2 + 4 Q2 = 0` for `eps >= 1` plus the roots of `Q1`.
pub fn trace_discriminant_eps(sym: &SymbolEquation, eps_grid: &[f64], opts: EpsOptions) -> Result<DiscriminantCurve> {
    let (q1, q2) = sym
        .q_pair()
        .ok_or_else(|| Error::Invalid("eps tracing needs a quadratic symbol".into()))?;
    let q1sq = &q1 * &q1;
    let mut eps: Vec<f64> = eps_grid.iter().copied().filter(|e| e.is_finite() && *e >= 1.0).collect();
    eps.sort_by(f64::total_cmp);
    eps.dedup();

    let mut slices: Vec<(PointTag, Vec<C64>)> = Vec::new();
    for (idx, &e) in eps.iter().enumerate() {
        let roots = eps_slice(&q1sq, &q2, e);
        if idx > 0 {
            refine(&q1sq, &q2, eps[idx - 1], e, &slices.last().expect("previous").1.clone(), &roots, opts.max_gap, 0, &mut slices);
        }
        slices.push((PointTag::Eps(e), roots));
    }
    if !q1.is_zero() && q1.degree() >= 1 {
        let mut r = cpoly::roots_raw(&q1)?;
        sort_canonical(&mut r, |x| *x);
        slices.push((PointTag::EpsInfinity, r));
    }

    let mut points = Vec::new();
    let mut kept_slices = Vec::new();
    for (tag, roots) in slices {
        let ok: Vec<C64> = roots
            .into_iter()
            .filter(|&z| marker(sym, z) >= 1.0 - opts.verify_tol)
            .collect();
        points.extend(ok.iter().map(|&z| CurvePoint { z, tag }));
        kept_slices.push(ok);
    }
    let polylines = link_slices(&kept_slices, opts.split_factor);
    Ok(DiscriminantCurve { points, polylines })
}

#[allow(clippy::too_many_arguments)]
fn refine(
    q1sq: &ComplexPoly,
    q2: &ComplexPoly,
    lo: f64,
    hi: f64,
    r_lo: &[C64],
    r_hi: &[C64],
    max_gap: f64,
    depth: usize,
    out: &mut Vec<(PointTag, Vec<C64>)>,
) {
    if depth >= 40 || max_move(r_lo, r_hi) <= max_gap {
        return;
    }
    let mid = 0.5 * (lo + hi);
    let r_mid = eps_slice(q1sq, q2, mid);
    refine(q1sq, q2, lo, mid, r_lo, &r_mid, max_gap, depth + 1, out);
    out.push((PointTag::Eps(mid), r_mid.clone()));
    refine(q1sq, q2, mid, hi, &r_mid, r_hi, max_gap, depth + 1, out);
}

/// Nearest-neighbour chaining of consecutive slices, split at long jumps.
fn link_slices(slices: &[Vec<C64>], split_factor: f64) -> Vec<Vec<C64>> {
    let mut chains: Vec<Vec<C64>> = Vec::new();
    let mut open: Vec<usize> = Vec::new();
    for slice in slices {
        let mut pairs: Vec<(f64, usize, usize)> = Vec::new();
        for (ci, &c) in open.iter().enumerate() {
            let tail = *chains[c].last().expect("nonempty chain");
            for (ri, &z) in slice.iter().enumerate() {
                pairs.push(((z - tail).norm(), ci, ri));
            }
        }
        pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
        let mut chain_used = vec![false; open.len()];
        let mut root_used = vec![false; slice.len()];
        let mut next_open = Vec::new();
        for (_, ci, ri) in pairs {
            if chain_used[ci] || root_used[ri] {
                continue;
            }
            chain_used[ci] = true;
            root_used[ri] = true;
            chains[open[ci]].push(slice[ri]);
            next_open.push(open[ci]);
        }
        for (ri, &z) in slice.iter().enumerate() {
            if !root_used[ri] {
                chains.push(vec![z]);
                next_open.push(chains.len() - 1);
            }
        }
        next_open.sort_unstable();
        open = next_open;
    }
    split_long_jumps(chains, split_factor)
}

fn split_long_jumps(chains: Vec<Vec<C64>>, factor: f64) -> Vec<Vec<C64>> {
    let mut steps: Vec<f64> = chains
        .iter()
        .flat_map(|c| c.windows(2).map(|w| (w[1] - w[0]).norm()))
        .collect();
    if steps.is_empty() {
        return chains;
    }
    steps.sort_by(f64::total_cmp);
    let median = steps[steps.len() / 2];
    let limit = factor * median;
    let mut out = Vec::new();
    for chain in chains {
        let mut cur = vec![chain[0]];
        for w in chain.windows(2) {
            if (w[1] - w[0]).norm() > limit && median > 0.0 {
                out.push(std::mem::take(&mut cur));
            }
            cur.push(w[1]);
        }
        out.push(cur);
    }
    out
}

/// Index of the root nearest to `z`.
fn nearest(roots: &[C64], z: C64) -> usize {
    let mut best = 0;
    for (i, r) in roots.iter().enumerate() {
        if (r - z).norm() < (roots[best] - z).norm() {
            best = i;
        }
    }
    best
}

/// Locates the discriminant on grid edges where the leading root, continued
/// from one end, is no longer leading at the other, then bisects.
pub fn trace_marker_levelset(sym: &SymbolEquation, grid: &Grid, verify_tol: f64) -> DiscriminantCurve {
    if sym.k < 2 {
        return DiscriminantCurve::default();
    }
    let nodes = grid.nodes();
    let roots: Vec<Vec<C64>> = nodes.par_iter().map(|&z| symbol_roots(sym, z)).collect();
    let mut edges = Vec::new();
    for j in 0..grid.ny {
        for i in 0..grid.nx {
            let a = j * grid.nx + i;
            if i + 1 < grid.nx {
                edges.push((a, a + 1));
            }
            if j + 1 < grid.ny {
                edges.push((a, a + grid.nx));
            }
        }
    }
    let found: Vec<C64> = edges
        .par_iter()
        .filter_map(|&(a, b)| {
            let (ra, rb) = (&roots[a], &roots[b]);
            if ra.len() < 2 || rb.len() < 2 || nearest(rb, ra[0]) == 0 {
                return None;
            }
            let (mut lo, mut hi) = (0.0, 1.0);
            let mut lead = ra[0];
            let za = nodes[a];
            let d = nodes[b] - za;
            for _ in 0..52 {
                let mid = 0.5 * (lo + hi);
                let r = symbol_roots(sym, za + d * mid);
                if r.len() < 2 {
                    return None;
                }
                if nearest(&r, lead) == 0 {
                    lo = mid;
                    lead = r[0];
                } else {
                    hi = mid;
                }
            }
            let z = za + d * (0.5 * (lo + hi));
            (marker(sym, z) >= 1.0 - verify_tol).then_some(z)
        })
        .collect();
    let points: Vec<CurvePoint> = found.iter().map(|&z| CurvePoint { z, tag: PointTag::MarkerLevelset }).collect();
    let polylines = chain_points(&found, 1.5 * grid.step() * std::f64::consts::SQRT_2);
    DiscriminantCurve { points, polylines }
}

/// Greedy nearest-neighbour ordering of an unordered point cloud into chains
/// whose links are shorter than `max_link`.
fn chain_points(pts: &[C64], max_link: f64) -> Vec<Vec<C64>> {
    let mut used = vec![false; pts.len()];
    let mut out = Vec::new();
    for start in 0..pts.len() {
        if used[start] {
            continue;
        }
        used[start] = true;
        let mut chain = vec![pts[start]];
        for dir in 0..2 {
            loop {
                let tail = if dir == 0 { *chain.last().expect("nonempty") } else { chain[0] };
                let mut best: Option<(f64, usize)> = None;
                for (i, &p) in pts.iter().enumerate() {
                    if used[i] {
                        continue;
                    }
                    let d = (p - tail).norm();
                    if d <= max_link && best.is_none_or(|b| d < b.0) {
                        best = Some((d, i));
                    }
                }
                match best {
                    Some((_, i)) => {
                        used[i] = true;
                        if dir == 0 {
                            chain.push(pts[i]);
                        } else {
                            chain.insert(0, pts[i]);
                        }
                    }
                    None => break,
                }
            }
        }
        out.push(chain);
    }
    out
}

/// Zeros in `z` of the discriminant of the symbol with respect to `Psi`.
pub fn branch_points(sym: &SymbolEquation) -> Result<Vec<C64>> {
    let k = sym.k;
    if k < 2 {
        return Err(Error::Invalid("branch points need symbol degree >= 2".into()));
    }
    let bound = ((2 * k - 1) * sym.max_degree()).max(1);
    let disc = cpoly::interpolate_function(bound, |z| {
        let f = sym.coeffs_at(z);
        let df: Vec<C64> = (1..=k).map(|j| f[j] * j as f64).collect();
        sylvester_det(&f, &df).value
    });
    if disc.is_zero() {
        return Err(Error::IdenticallyZero);
    }
    if disc.degree() == 0 {
        return Ok(Vec::new());
    }
    Ok(cpoly::roots(&disc, 1e-10)?.roots.iter().map(|r| r.value).collect())
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RatioCell {
    pub z: C64,
    /// `f_{n+1}/f_n`, absent when it is not finite.
    pub ratio: Option<C64>,
    pub converged: bool,
    pub deviation: Option<f64>,
    pub error: Option<String>,
}

#[derive(Clone, Copy, Debug)]
pub struct RatioOptions {
    pub conv_tol: f64,
    pub rel_tol: f64,
}

impl Default for RatioOptions {
    fn default() -> Self {
        RatioOptions { conv_tol: 1e-8, rel_tol: 1e-9 }
    }
}

pub fn ratio_at(spec: &RecurrenceSpec, sym: &SymbolEquation, initial: &[ComplexPoly], z: C64, n: usize, opts: RatioOptions) -> RatioCell {
    let init: Vec<C64> = initial.iter().map(|p| p.eval(z)).collect();
    let traj = match iterate(spec, z, &init, n + 1, IterOptions::default()) {
        Ok(t) => t,
        Err(e) => return RatioCell { z, ratio: None, converged: false, deviation: None, error: Some(e.to_string()) },
    };
    let r = traj.ratio(n);
    let prev = if n >= 1 { traj.ratio(n - 1) } else { C64::new(f64::NAN, 0.0) };
    let finite = r.re.is_finite() && r.im.is_finite();
    let converged = finite && (r - prev).norm() <= opts.conv_tol * r.norm().max(1.0);
    let deviation = match psi_max(sym, z, opts.rel_tol) {
        Ok(PsiValue::Leading(psi)) if finite => Some((r - psi).norm()),
        _ => None,
    };
    RatioCell { z, ratio: finite.then_some(r), converged, deviation, error: None }
}

/// Ratio `f_{n+1}/f_n` at every node, compared with `Psi_max`.
pub fn ratio_field(spec: &RecurrenceSpec, initial: &[ComplexPoly], grid: &Grid, n: usize, opts: RatioOptions) -> Result<Vec<RatioCell>> {
    spec.validate()?;
    if initial.len() != spec.k {
        return Err(Error::Invalid(format!("initial tuple needs {} polynomials", spec.k)));
    }
    let sym = SymbolEquation::from_recurrence(spec)?;
    Ok(grid
        .nodes()
        .into_par_iter()
        .map(|z| ratio_at(spec, &sym, initial, z, n, opts))
        .collect())
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SigmaISet {
    pub points: Vec<C64>,
    /// Number of consecutive levels on which each point recurred.
    pub stability: Vec<usize>,
}

/// Zeros far from the discriminant that recur on at least three consecutive
/// levels. Positions are reported from the last level of each run.
pub fn detect_sigma_i(zero_sets: &[Vec<C64>], curve: &[C64], isolation_radius: f64, match_radius: f64) -> Result<SigmaISet> {
    if zero_sets.len() < 3 {
        return Err(Error::Invalid("Sigma_I detection needs at least 3 levels".into()));
    }
    let isolated: Vec<Vec<C64>> = zero_sets
        .iter()
        .map(|zs| {
            zs.iter()
                .copied()
                .filter(|z| curve.iter().all(|c| (c - z).norm() > isolation_radius))
                .collect()
        })
        .collect();
    let mut points: Vec<(C64, usize)> = Vec::new();
    for start in 0..isolated.len() {
        for &z in &isolated[start] {
            let mut cur = z;
            let mut run = 1;
            for level in &isolated[start + 1..] {
                match level.iter().copied().find(|w| (w - cur).norm() <= match_radius) {
                    Some(w) => {
                        cur = w;
                        run += 1;
                    }
                    None => break,
                }
            }
            if run >= 3 && !points.iter().any(|(p, _)| (p - cur).norm() <= match_radius) {
                points.push((cur, run));
            }
        }
    }
    sort_canonical(&mut points, |p| p.0);
    Ok(SigmaISet {
        points: points.iter().map(|p| p.0).collect(),
        stability: points.iter().map(|p| p.1).collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::recurrence::{presets, slow_initial, PolySequence};

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn fig(q: (ComplexPoly, ComplexPoly)) -> SymbolEquation {
        SymbolEquation::from_q(&q.0, &q.1).unwrap()
    }

    #[test]
    fn psi_max_examples() {
        let s2 = fig(presets::fig2_q());
        let v = psi_max(&s2, c(3.0, 0.0), 1e-9).unwrap().value().unwrap();
        assert!((v - c((3.0 + 14f64.sqrt()) / 2.0, 0.0)).norm() < 1e-12);
        assert_eq!(psi_max(&s2, ZERO, 1e-9).unwrap(), PsiValue::Nongeneric);
        let s1 = SymbolEquation::from_recurrence(&presets::fig1()).unwrap();
        let z = c(10.0, 0.0);
        let v = psi_max(&s1, z, 1e-9).unwrap().value().unwrap();
        let p = ComplexPoly::new(vec![c(-1010.0, 0.0), -c(11.0, 0.0) * c(10.0, -1.0), c(-1.0, 0.0), ONE]);
        assert!(p.eval(v).norm() < 1e-9 * 1010.0);
        let r = cpoly::roots(&p, 1e-12).unwrap();
        assert!((r.roots[0].value - v).norm() < 1e-9);
        assert!(r.roots[1].value.norm() < v.norm() * 0.99);
    }

    #[test]
    fn degenerate_leading() {
        let s2 = fig(presets::fig2_q());
        assert_eq!(psi_max(&s2, c(4.0 / 3.0, 0.0), 1e-9), Err(Error::DegenerateLeading));
    }

    #[test]
    fn marker_grid_examples() {
        let s2 = fig(presets::fig2_q());
        let g = Grid::window(-5.0, 2.0, -1.0, 1.0, 71, 21).unwrap();
        let f = marker_grid(&s2, &g, 1e-9);
        for cell in &f.cells {
            if cell.marker >= 0.999 {
                assert!(cell.z.im.abs() < 1e-12 && cell.z.re >= -4.0 - 1e-9 && cell.z.re <= 1.0 + 1e-9, "{:?}", cell.z);
            }
        }
        assert!(f.cells.iter().filter(|c| c.marker >= 0.999).count() >= 40);

        let s3 = fig(presets::fig3_q());
        let g = Grid::window(-0.5, 2.5, -1.5, 1.5, 61, 61).unwrap();
        let f = marker_grid(&s3, &g, 1e-9);
        let high: Vec<_> = f.cells.iter().filter(|c| c.marker >= 0.999).collect();
        assert!(!high.is_empty());
        for cell in high {
            assert!(((cell.z - c(1.0, 0.0)).norm() - 1.0).abs() < 0.1, "{:?}", cell.z);
        }

        let sc = SymbolEquation::new(vec![ComplexPoly::constant(c(-3.0, 0.0)), ComplexPoly::constant(c(2.0, 0.0))]).unwrap();
        let f = marker_grid(&sc, &g, 1e-9);
        assert!(f.cells.iter().all(|c| c.marker < 0.999));
    }

    #[test]
    fn eps_examples() {
        let s2 = fig(presets::fig2_q());
        let cv = trace_discriminant_eps(&s2, &[1.0, 4.0], EpsOptions { max_gap: f64::INFINITY, ..Default::default() }).unwrap();
        let at = |tag: PointTag| -> Vec<f64> {
            let mut v: Vec<f64> = cv.points.iter().filter(|p| p.tag == tag).map(|p| p.z.re).collect();
            v.sort_by(f64::total_cmp);
            v
        };
        let e1 = at(PointTag::Eps(1.0));
        assert!((e1[0] + 4.0).abs() < 1e-12 && (e1[1] - 1.0).abs() < 1e-12);
        let e4 = at(PointTag::Eps(4.0));
        let s73 = 73f64.sqrt();
        assert!((e4[0] - (-3.0 - s73) / 8.0).abs() < 1e-12 && (e4[1] - (-3.0 + s73) / 8.0).abs() < 1e-12);
        let inf = at(PointTag::EpsInfinity);
        assert_eq!(inf, vec![0.0]);
    }

    #[test]
    fn eps_points_pass_marker_and_link() {
        for q in [presets::fig2_q(), presets::fig3_q(), presets::fig4_q()] {
            let s = fig(q);
            let cv = trace_discriminant_eps(&s, &default_eps_grid(), EpsOptions::default()).unwrap();
            assert!(cv.points.len() > 100);
            for p in &cv.points {
                assert!(marker(&s, p.z) >= 1.0 - 1e-8);
            }
            assert!(cv.polylines.len() <= 4, "{}", cv.polylines.len());
        }
    }

    #[test]
    fn levelset_matches_eps_on_fig3() {
        let s3 = fig(presets::fig3_q());
        let g = Grid::window(-0.5, 2.5, -1.5, 1.5, 80, 80).unwrap();
        let ls = trace_marker_levelset(&s3, &g, 1e-6);
        let ep = trace_discriminant_eps(&s3, &default_eps_grid(), EpsOptions { max_gap: g.step() / 2.0, ..Default::default() }).unwrap();
        assert!(ls.points.len() > 20);
        for p in &ls.points {
            assert!(ep.polyline_distance(p.z) <= g.step(), "{:?}", p.z);
        }
    }

    #[test]
    fn branch_point_examples() {
        let s2 = fig(presets::fig2_q());
        let mut b: Vec<f64> = branch_points(&s2).unwrap().iter().map(|z| z.re).collect();
        b.sort_by(f64::total_cmp);
        assert!((b[0] + 4.0).abs() < 1e-8 && (b[1] - 1.0).abs() < 1e-8);
        let sq = SymbolEquation::new(vec![ComplexPoly::constant(c(-2.0, 0.0)), ComplexPoly::one()]).unwrap();
        assert_eq!(branch_points(&sq), Err(Error::IdenticallyZero));
        let s1 = SymbolEquation::from_recurrence(&presets::fig1()).unwrap();
        assert_eq!(branch_points(&s1).unwrap().len(), 6);
    }

    #[test]
    fn ratio_field_examples() {
        let spec = presets::eq41(presets::fig2_q().0, presets::fig2_q().1);
        let sym = SymbolEquation::from_recurrence(&spec).unwrap();
        let init = presets::standard_initial();
        let cell = ratio_at(&spec, &sym, &init, c(3.0, 0.0), 80, RatioOptions::default());
        assert!(cell.converged);
        assert!(cell.deviation.unwrap() < 1e-8);
        let cell = ratio_at(&spec, &sym, &init, ZERO, 80, RatioOptions::default());
        assert!(!cell.converged);

        let fib = presets::fibonacci();
        let slow = slow_initial(&crate::recurrence::char_poly(&fib, ZERO)).unwrap();
        let init: Vec<ComplexPoly> = slow.iter().map(|&a| ComplexPoly::constant(a)).collect();
        let sym = SymbolEquation::from_recurrence(&fib).unwrap();
        let cell = ratio_at(&fib, &sym, &init, ZERO, 25, RatioOptions { conv_tol: 1e-3, ..Default::default() });
        assert!(cell.converged);
        assert!(cell.deviation.unwrap() > 0.1);
        assert!((cell.ratio.unwrap() - c(-0.618_033_988_749_895, 0.0)).norm() < 1e-3);
    }

    #[test]
    fn sigma_i_empty_for_standard_initial() {
        let seq = presets::eq41_sequence(presets::fig2_q());
        let s2 = fig(presets::fig2_q());
        let g = Grid::window(-5.0, 2.0, -1.5, 1.5, 200, 200).unwrap();
        let curve = trace_marker_levelset(&s2, &g, 1e-6).positions();
        let zs: Vec<Vec<C64>> = [46, 56, 65].iter().map(|&n| seq.zeros(n).unwrap()).collect();
        let s = detect_sigma_i(&zs, &curve, 5.0 * g.step(), 1e-2).unwrap();
        assert!(s.points.is_empty());
    }

    #[test]
    fn sigma_i_needs_three_levels() {
        assert!(detect_sigma_i(&[vec![], vec![]], &[], 0.1, 0.01).is_err());
    }

    #[test]
    fn sigma_i_fig1() {
        let sym = SymbolEquation::from_recurrence(&presets::fig1()).unwrap();
        let g = Grid::window(-4.0, 4.0, -4.0, 4.0, 144, 144).unwrap();
        let curve = trace_marker_levelset(&sym, &g, 1e-6).positions();
        for (init, want) in [(presets::fig1_upper(), 4), (presets::fig1_lower(), 7)] {
            let seq = PolySequence::new(presets::fig1(), init).unwrap();
            let zs: Vec<Vec<C64>> = [45, 55, 64].iter().map(|&n| seq.zeros(n).unwrap()).collect();
            let s = detect_sigma_i(&zs, &curve, 5.0 * g.step(), 1e-2).unwrap();
            assert_eq!(s.points.len(), want, "{:?}", s.points);
        }
    }
}
