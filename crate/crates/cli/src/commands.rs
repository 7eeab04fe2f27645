use maxmod_core::checks::{self, cross_validate, fit_circle, NAMES};
use maxmod_core::cpoly::{sort_canonical, ONE, ZERO};
use maxmod_core::maxmod_algebra::{agreement_run, degree_audit, Thresholds};
use maxmod_core::perron::{normalized_product_limit, parametric_sweep, CompanionFamily};
use maxmod_core::ratio_measure::{analytic_density, sequence_residue_measure, weak_compare};
use maxmod_core::recurrence::{PolySequence, RecurrenceSpec};
use maxmod_core::symbolfield::{
    branch_points, detect_sigma_i, marker_grid, ratio_field, trace_marker_levelset, CellFlag, Grid, RatioOptions, SymbolEquation,
};
use maxmod_core::C64;
use serde_json::{json, Value};

use crate::config::{GridInput, JobConfig, SpecInput};
use crate::output::Writer;
use crate::Failure;

fn pair(z: C64) -> Value {
    json!([z.re, z.im])
}

fn opt_pair(z: Option<C64>) -> (Value, Value) {
    match z {
        Some(z) => (json!(z.re), json!(z.im)),
        None => (Value::Null, Value::Null),
    }
}

/// Plot windows for the presets, `[-4, 4]^2` otherwise.
fn default_window(cfg: &JobConfig, n: usize) -> GridInput {
    let (x, y) = match &cfg.spec {
        Some(SpecInput::Named(s)) if s == "fig2" => ([-5.0, 2.0], [-1.5, 1.5]),
        None => ([-5.0, 2.0], [-1.5, 1.5]),
        Some(SpecInput::Named(s)) if s == "fig3" => ([-0.5, 2.5], [-1.5, 1.5]),
        Some(SpecInput::Named(s)) if s == "fig4" => ([-4.5, 0.5], [-1.2, 1.2]),
        _ => ([-4.0, 4.0], [-4.0, 4.0]),
    };
    GridInput { x, y, nx: n, ny: n }
}

fn grid_or(cfg: &JobConfig, n: usize) -> Result<Grid, Failure> {
    cfg.grid.unwrap_or_else(|| default_window(cfg, n)).grid()
}

fn sequence(cfg: &JobConfig) -> Result<(RecurrenceSpec, PolySequence), Failure> {
    let spec = cfg.spec()?;
    let init = cfg.initial(spec.k)?;
    let seq = PolySequence::new(spec.clone(), init).map_err(Failure::invalid)?;
    Ok((spec, seq))
}

fn symbol(spec: &RecurrenceSpec) -> Result<SymbolEquation, Failure> {
    SymbolEquation::from_recurrence(spec).map_err(Failure::invalid)
}

pub fn zeros(cfg: &JobConfig, w: &mut Writer) -> Result<(), Failure> {
    let (spec, seq) = sequence(cfg)?;
    let levels = cfg.levels.clone().unwrap_or_else(|| if spec.k == 3 { vec![45, 55, 64] } else { vec![41] });
    let mut sets = Vec::new();
    for &n in &levels {
        let mut zs = seq.zeros(n)?;
        sort_canonical(&mut zs, |z| *z);
        let rows: Vec<Vec<Value>> = zs.iter().map(|z| vec![json!(n), json!(z.re), json!(z.im)]).collect();
        w.csv(&format!("zeros_{n}.csv"), &["n", "re", "im"], "zeros of the sequence term with index n", &rows)?;
        sets.push(zs);
    }
    let grid = grid_or(cfg, 144)?;
    let verify = cfg.tol.unwrap_or(1e-6);
    let (isolation, matching) = (5.0 * grid.step(), 1e-2);
    let sigma = if sets.len() >= 3 {
        let curve = trace_marker_levelset(&symbol(&spec)?, &grid, verify).positions();
        let s = detect_sigma_i(&sets, &curve, isolation, matching)?;
        json!({
            "detected": true,
            "points": s.points.iter().map(|z| pair(*z)).collect::<Vec<_>>(),
            "stability": s.stability,
        })
    } else {
        json!({ "detected": false, "reason": "at least three levels are needed" })
    };
    w.json(
        "sigma_i.json",
        &json!({
            "levels": levels,
            "grid": grid,
            "isolation_radius": isolation,
            "match_radius": matching,
            "sigma_i": sigma,
        }),
    )
}

pub fn discriminant(cfg: &JobConfig, w: &mut Writer) -> Result<(), Failure> {
    let spec = cfg.spec()?;
    let sym = symbol(&spec)?;
    let grid = grid_or(cfg, 400)?;
    let rel_tol = cfg.tol.unwrap_or(1e-9);
    let field = marker_grid(&sym, &grid, rel_tol);
    let rows: Vec<Vec<Value>> = field
        .cells
        .iter()
        .map(|c| {
            let (pr, pi) = opt_pair(c.psi_max);
            let flag = match c.flag {
                CellFlag::Generic => "generic",
                CellFlag::Nongeneric => "nongeneric",
                CellFlag::Degenerate => "degenerate",
            };
            vec![json!(c.z.re), json!(c.z.im), json!(c.marker), pr, pi, json!(flag)]
        })
        .collect();
    w.csv(
        "marker_grid.csv",
        &["re", "im", "marker", "psi_re", "psi_im", "flag"],
        "marker = |second root| / |leading root| of the symbol; psi is empty off generic cells",
        &rows,
    )?;

    let levelset = trace_marker_levelset(&sym, &grid, 1e-6);
    let mut doc = json!({ "grid": grid, "levelset": levelset });
    if sym.k == 2 {
        let (cv, eps, _) = cross_validate(&sym, &grid)?;
        let inside: Vec<C64> = eps.positions().into_iter().filter(|z| grid.contains(*z)).collect();
        doc["circle_fit"] = match fit_circle(&inside) {
            Ok((center, radius)) => json!({ "center": pair(center), "radius": radius }),
            Err(e) => json!({ "error": e.to_string() }),
        };
        doc["eps"] = serde_json::to_value(&eps).map_err(|e| Failure::Runtime(e.to_string()))?;
        doc["cross_validation"] = json!({ "summary": cv, "agrees": cv.agrees() });
    }
    w.json("curve.json", &doc)?;
    if sym.k >= 2 {
        let mut bp = branch_points(&sym)?;
        sort_canonical(&mut bp, |z| *z);
        w.json("branch_points.json", &json!({ "count": bp.len(), "points": bp.iter().map(|z| pair(*z)).collect::<Vec<_>>() }))?;
    }
    Ok(())
}

pub fn ratio_field_cmd(cfg: &JobConfig, w: &mut Writer) -> Result<(), Failure> {
    let spec = cfg.spec()?;
    let init = cfg.initial(spec.k)?;
    let grid = grid_or(cfg, 101)?;
    let n = cfg.n.unwrap_or(200);
    let opts = RatioOptions { conv_tol: cfg.tol.unwrap_or(1e-8), ..RatioOptions::default() };
    let cells = ratio_field(&spec, &init, &grid, n, opts).map_err(Failure::invalid)?;
    let rows: Vec<Vec<Value>> = cells
        .iter()
        .map(|c| {
            let (rr, ri) = opt_pair(c.ratio);
            vec![
                json!(c.z.re),
                json!(c.z.im),
                rr,
                ri,
                json!(c.converged),
                c.deviation.map_or(Value::Null, |d| json!(d)),
                c.error.clone().map_or(Value::Null, Value::String),
            ]
        })
        .collect();
    w.csv(
        &format!("ratio_field_{n}.csv"),
        &["re", "im", "ratio_re", "ratio_im", "converged", "deviation", "error"],
        "ratio f_{n+1}/f_n and its distance to the leading symbol root",
        &rows,
    )
}

pub fn measure(cfg: &JobConfig, w: &mut Writer) -> Result<(), Failure> {
    let (spec, seq) = sequence(cfg)?;
    let n = cfg.n.unwrap_or(61);
    let tol = cfg.tol.unwrap_or(1e-10);
    let count = cfg.moments.unwrap_or(6);
    let m = sequence_residue_measure(&seq, n, false, tol)?;
    let mut doc = json!({
        "index": n,
        "atoms": m.atoms,
        "mass": pair(m.mass()),
        "moments": m.moments(count).into_iter().map(pair).collect::<Vec<_>>(),
    });
    let analytic = if spec.k == 2 {
        let q1 = -spec.coeffs[0].limit();
        let q2 = -spec.coeffs[1].limit();
        analytic_density(&q1, &q2)
    } else {
        Err(maxmod_core::Error::Invalid("closed-form density needs a three-term relation".into()))
    };
    match analytic {
        Ok(an) => {
            doc["analytic"] = json!({
                "case": an.case_tag,
                "interval": an.interval,
                "circle": an.circle,
                "mass": pair(an.mass()),
                "moments": an.moments(count).into_iter().map(pair).collect::<Vec<_>>(),
                "moment_errors": weak_compare(&m, &an, count),
            });
            let rows: Vec<Vec<Value>> = an
                .sample(201)
                .into_iter()
                .map(|(t, d)| vec![json!(t), json!(d.re), json!(d.im)])
                .collect();
            w.csv(
                "density.csv",
                &["param", "density_re", "density_im"],
                "param is x on the interval part, then the angle about the circle center on the circle part",
                &rows,
            )?;
        }
        Err(e) => doc["analytic"] = json!({ "error": e.to_string() }),
    }
    w.json(&format!("measure_{n}.json"), &doc)
}

pub fn perron_sweep(cfg: &JobConfig, w: &mut Writer) -> Result<(), Failure> {
    let spec = cfg.spec()?;
    let k = spec.k;
    let fam = CompanionFamily { spec };
    let [a, b] = cfg.z_range.unwrap_or([2.0, 4.0]);
    if !(b > a) {
        return Err(Failure::Invalid("z_range must be increasing".into()));
    }
    let steps = cfg.steps.unwrap_or(20);
    let n = cfg.n.unwrap_or(300);
    let tol = cfg.tol.unwrap_or(1e-12);
    let grid: Vec<C64> = (0..=steps).map(|i| C64::new(a + (b - a) * i as f64 / steps as f64, 0.0)).collect();
    let mut x0 = vec![ZERO; k];
    x0[0] = ONE;
    let sweep = parametric_sweep(&fam, &grid, &x0, tol);
    let points: Vec<Value> = sweep
        .points
        .iter()
        .map(|p| {
            let sigma = normalized_product_limit(&fam, &p.x, n).map(|r| r.sigma_ratio);
            let mut v = match &p.value {
                Ok(s) => json!({
                    "w": s.w.rep().iter().map(|z| pair(*z)).collect::<Vec<_>>(),
                    "u_max": s.u_max.rep().iter().map(|z| pair(*z)).collect::<Vec<_>>(),
                    "growth_rate": s.growth_rate,
                    "n_used": s.n_used,
                    "certified": s.report.certified,
                }),
                Err(e) => json!({ "error": e }),
            };
            v["z"] = pair(p.x);
            v["sigma_ratio"] = sigma.map_or_else(|e| json!({ "error": e.to_string() }), |s| json!(s));
            v
        })
        .collect();
    w.json(
        "sweep.json",
        &json!({
            "z_range": [a, b],
            "step": (b - a) / steps as f64,
            "n": n,
            "adjacency_proxy": sweep.adjacency_proxy,
            "points": points,
        }),
    )
}

pub fn maxmod_audit(cfg: &JobConfig, seed: u64, w: &mut Writer) -> Result<(), Failure> {
    let ks = cfg.k.clone().unwrap_or_else(|| vec![2, 3]);
    let samples = cfg.samples.unwrap_or(500);
    let mut th = Thresholds::default();
    if let Some(t) = cfg.tol {
        th.direct_rel_tol = t;
        th.u_tol = t;
    }
    let mut reports = Vec::new();
    for k in ks {
        if !(2..=3).contains(&k) {
            return Err(Failure::Invalid(format!("audit covers k = 2 and 3, got {k}")));
        }
        let audit = degree_audit(k, samples.min(50), seed)?;
        let agreement = agreement_run(k, samples, seed, th)?;
        reports.push(json!({ "k": k, "degree_audit": audit, "agreement": agreement }));
    }
    w.json("maxmod_audit.json", &json!({ "thresholds": th, "reports": reports }))
}

/// Returns whether every requested criterion passed.
pub fn report(cfg: &JobConfig, seed: u64, w: &mut Writer) -> Result<bool, Failure> {
    let names: Vec<String> = cfg.criteria.clone().unwrap_or_else(|| NAMES.iter().map(|s| s.to_string()).collect());
    if let Some(bad) = names.iter().find(|n| !NAMES.contains(&n.as_str())) {
        return Err(Failure::Invalid(format!("unknown criterion {bad:?}; known: {}", NAMES.join(", "))));
    }
    let mut results = Vec::new();
    for name in &names {
        let r = checks::run(name, seed).expect("name checked");
        eprintln!("{}", r.line());
        results.push(r);
    }
    let all = results.iter().all(|r| r.passed);
    // wall-clock times stay on stderr so the file is reproducible
    let rows: Vec<Value> = results
        .iter()
        .map(|r| {
            json!({
                "id": r.id,
                "name": r.name,
                "passed": r.passed,
                "measured": r.measured,
                "tolerance": r.tolerance,
                "seed": r.seed,
                "detail": r.detail,
            })
        })
        .collect();
    w.json(
        "report.json",
        &json!({
            "passed": results.iter().filter(|r| r.passed).count(),
            "failed": results.iter().filter(|r| !r.passed).map(|r| r.name.clone()).collect::<Vec<_>>(),
            "criteria": rows,
        }),
    )?;
    Ok(all)
}
