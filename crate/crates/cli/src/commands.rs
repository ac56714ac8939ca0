use std::path::Path;
use std::process::ExitCode;
use std::time::Instant;

use fracsub::specfun::wright_f;
use fracsub::subordination::{drift_green, green_function_with, sinh_grid, tabulate_green_with, GreenConfig};
use fracsub::walker::{invert_leading, lint_polyline, simulate_ensemble, step_polyline, PathKind};
use fracsub::{
    mittag_leffler, stable_pdf_scaled, validate_params, verify_marginal, wright_m, DiffusionParams, MlParams, Snapshot,
    VerifyConfig, WalkConfig, WalkPath, WrightOrder,
};

use crate::args::*;
use crate::error::CliError;
use crate::output::{
    extension, metadata, resolve_dir, write_json, write_metadata, write_table, Dest, MassCheck, Table,
};

pub fn run(cmd: Command) -> Result<ExitCode, CliError> {
    match cmd {
        Command::Mlf(a) => mlf(a),
        Command::Wright(a) => wright(a),
        Command::StablePdf(a) => stable(a),
        Command::Green(a) => green(a),
        Command::Drift(a) => drift(a),
        Command::Simulate(a) => simulate(a),
        Command::Invert(a) => invert(a),
        Command::Verify(a) => verify(a),
        Command::Lint(a) => lint(a),
    }
}

fn emit(name: &str, config: &impl serde::Serialize, out: &OutputArgs, table: &Table) -> Result<ExitCode, CliError> {
    let dest = Dest::resolve(out, name);
    write_table(&dest, out.format, table)?;
    write_metadata(&dest, &metadata(name, config)?)?;
    Ok(match table.mass_check {
        Some(m) if !m.pass => {
            eprintln!("fracsub: mass check failed: |{:.6e} - 1| > {:.1e}", m.mass, m.tolerance);
            ExitCode::from(4)
        }
        _ => ExitCode::SUCCESS,
    })
}

fn finite_all(name: &'static str, vs: &[f64]) -> Result<(), CliError> {
    match vs.iter().find(|v| !v.is_finite()) {
        Some(&value) => Err(fracsub::Error::NonFinite { name, value }.into()),
        None => Ok(()),
    }
}

fn eval_points(name: &'static str, xs: &[f64], f: impl Fn(f64) -> fracsub::Result<f64>) -> Result<Table, CliError> {
    let rows = xs
        .iter()
        .map(|&x| Ok(vec![x, f(x)?]))
        .collect::<Result<_, CliError>>()?;
    let mut t = Table::new(&[name, "value"]);
    t.rows = rows;
    Ok(t)
}

fn mlf(a: MlfArgs) -> Result<ExitCode, CliError> {
    let p = MlParams::new(a.alpha, a.beta)?;
    finite_all("z", &a.z)?;
    let t = eval_points("z", &a.z, |z| mittag_leffler(p, z))?;
    emit("mlf", &a, &a.out, &t)
}

fn wright(a: WrightArgs) -> Result<ExitCode, CliError> {
    let nu = WrightOrder::new(a.nu)?;
    finite_all("z", &a.z)?;
    let t = match a.function {
        WrightKind::M => eval_points("z", &a.z, |z| wright_m(nu, z))?,
        WrightKind::F => eval_points("z", &a.z, |z| wright_f(nu, z))?,
    };
    emit("wright", &a, &a.out, &t)
}

/// Abscissae from `--x` or `--grid`; `None` marks a list without mass check.
fn abscissae(xs: &Abscissae, scale: f64) -> Result<(Vec<f64>, bool), CliError> {
    match xs.grid {
        Some(n) => {
            if n < 3 {
                return Err(CliError::Usage("--grid needs at least 3 points".into()));
            }
            for (name, v) in [("half_width", xs.half_width), ("concentration", xs.concentration)] {
                if !(v.is_finite() && v > 0.0) {
                    return Err(fracsub::Error::InvalidParameter {
                        name,
                        value: v,
                        reason: "must be positive",
                    }
                    .into());
                }
            }
            Ok((sinh_grid(n, xs.half_width * scale, xs.concentration), true))
        }
        None if xs.x.is_empty() => Err(CliError::Usage("pass --x or --grid".into())),
        None => {
            finite_all("x", &xs.x)?;
            Ok((xs.x.clone(), false))
        }
    }
}

fn density_table(p: DiffusionParams, t: f64, xs: &Abscissae, cfg: &GreenConfig) -> Result<Table, CliError> {
    let scale = t.powf(p.beta() / p.alpha());
    let (pts, grid) = abscissae(xs, scale)?;
    if grid {
        let g = tabulate_green_with(p, t, &pts, cfg)?;
        let mut table = Table::from_pairs(["x", "u"], g.xs.iter().copied().zip(g.us.iter().copied()));
        table.mass_check = Some(MassCheck::new(g.mass(), xs.mass_tol));
        Ok(table)
    } else {
        let us = pts
            .iter()
            .map(|&x| green_function_with(p, x, t, cfg))
            .collect::<fracsub::Result<Vec<_>>>()?;
        Ok(Table::from_pairs(["x", "u"], pts.into_iter().zip(us)))
    }
}

fn stable(a: StablePdfArgs) -> Result<ExitCode, CliError> {
    let sp = validate_params(a.alpha, a.theta)?;
    if !(a.t > 0.0 && a.t.is_finite()) {
        return Err(fracsub::Error::InvalidParameter {
            name: "t",
            value: a.t,
            reason: "must be positive",
        }
        .into());
    }
    let table = if a.xs.grid.is_some() {
        // β = 1 reduces the Green function to the stable density at scale t
        let p = DiffusionParams::new(a.alpha, a.theta, 1.0)?;
        density_table(p, a.t, &a.xs, &GreenConfig::default())?
    } else {
        let (pts, _) = abscissae(&a.xs, 1.0)?;
        let us = pts
            .iter()
            .map(|&x| stable_pdf_scaled(sp, x, a.t))
            .collect::<fracsub::Result<Vec<_>>>()?;
        Table::from_pairs(["x", "u"], pts.into_iter().zip(us))
    };
    emit("stable_pdf", &a, &a.out, &table)
}

fn green(a: GreenArgs) -> Result<ExitCode, CliError> {
    let p = DiffusionParams::new(a.alpha, a.theta, a.beta)?;
    for (name, v) in [("abs_tol", a.abs_tol), ("rel_tol", a.rel_tol)] {
        if !(v.is_finite() && v > 0.0) {
            return Err(fracsub::Error::InvalidParameter {
                name,
                value: v,
                reason: "must be positive",
            }
            .into());
        }
    }
    let cfg = GreenConfig {
        abs_tol: a.abs_tol,
        rel_tol: a.rel_tol,
    };
    let table = density_table(p, a.t, &a.xs, &cfg)?;
    emit("green", &a, &a.out, &table)
}

fn drift(a: DriftArgs) -> Result<ExitCode, CliError> {
    // validates β and t up front, including the β = 1 pulse
    drift_green(a.beta, 1.0, a.t)?;
    let (pts, grid) = abscissae(&a.xs, a.t.powf(a.beta))?;
    let pts: Vec<f64> = if grid {
        pts.into_iter().filter(|&x| x >= 0.0).collect()
    } else {
        pts
    };
    let us = pts
        .iter()
        .map(|&x| drift_green(a.beta, x, a.t))
        .collect::<fracsub::Result<Vec<_>>>()?;
    let mut table = Table::from_pairs(["x", "u"], pts.iter().copied().zip(us.iter().copied()));
    if grid {
        let mass: f64 = pts
            .windows(2)
            .zip(us.windows(2))
            .map(|(x, u)| 0.5 * (x[1] - x[0]) * (u[0] + u[1]))
            .sum();
        table.mass_check = Some(MassCheck::new(mass, a.xs.mass_tol));
    }
    emit("drift", &a, &a.out, &table)
}

fn walk_params(w: &WalkArgs) -> Result<DiffusionParams, CliError> {
    if w.workers == 0 {
        return Err(fracsub::Error::InvalidParameter {
            name: "workers",
            value: 0.0,
            reason: "must be at least 1",
        }
        .into());
    }
    Ok(DiffusionParams::new(w.alpha, w.theta, w.beta)?)
}

fn kinds(plot: PlotKind) -> Vec<Option<PathKind>> {
    match plot {
        PlotKind::None => vec![None],
        PlotKind::Leading => vec![Some(PathKind::Leading)],
        PlotKind::Parent => vec![Some(PathKind::Parent)],
        PlotKind::Directing => vec![Some(PathKind::Directing)],
        PlotKind::Subordinated => vec![Some(PathKind::Subordinated)],
        PlotKind::All => vec![
            None,
            Some(PathKind::Leading),
            Some(PathKind::Parent),
            Some(PathKind::Directing),
            Some(PathKind::Subordinated),
        ],
    }
}

fn kind_name(kind: PathKind) -> &'static str {
    match kind {
        PathKind::Leading => "leading",
        PathKind::Parent => "parent",
        PathKind::Directing => "directing",
        PathKind::Subordinated => "subordinated",
    }
}

fn trajectory_table(path: &WalkPath) -> Table {
    let mut t = Table::new(&["n", "t_star", "t", "x"]);
    t.integer[0] = true;
    t.rows = path
        .snapshots
        .iter()
        .map(|s| vec![s.n as f64, s.t_star, s.t, s.x])
        .collect();
    t
}

pub fn polyline_table(path: &WalkPath, kind: PathKind) -> Table {
    let columns = match kind {
        PathKind::Leading => ["t_star", "t"],
        PathKind::Parent => ["t_star", "x"],
        PathKind::Directing => ["t", "t_star"],
        PathKind::Subordinated => ["t", "x"],
    };
    Table::from_pairs(columns, step_polyline(path, kind))
}

fn simulate(a: SimulateArgs) -> Result<ExitCode, CliError> {
    let p = walk_params(&a.walk)?;
    if a.paths == 0 {
        return Err(fracsub::Error::InvalidParameter {
            name: "paths",
            value: 0.0,
            reason: "must be at least 1",
        }
        .into());
    }
    if a.thin == 0 {
        return Err(CliError::Usage("--thin must be at least 1".into()));
    }
    if a.first_id.checked_add(a.paths).is_none() {
        return Err(CliError::Usage("--first-id + --paths overflows".into()));
    }
    let template = WalkConfig::new(p, a.walk.tau_star, a.steps, a.walk.seed, a.first_id)?;
    let kinds = kinds(a.plot);
    let multi = a.paths > 1 || kinds.len() > 1;
    let ext = extension(a.out.format);
    let dir = if multi { Some(resolve_dir(&a.out)?) } else { None };

    let paths = simulate_ensemble(&template, a.paths, a.walk.workers)?;
    let meta = metadata("simulate", &a)?;
    for (i, path) in paths.iter().enumerate() {
        let id = a.first_id + i as u64;
        let path = path.thinned(a.thin);
        for kind in &kinds {
            let (stem, table) = match kind {
                None => (format!("trajectory_{id:05}"), trajectory_table(&path)),
                Some(k) => (
                    format!("trajectory_{id:05}_{}", kind_name(*k)),
                    polyline_table(&path, *k),
                ),
            };
            let dest = match &dir {
                Some(d) => Dest::File(d.join(format!("{stem}.{ext}"))),
                None => Dest::resolve(&a.out, &stem),
            };
            write_table(&dest, a.out.format, &table)?;
            if dir.is_none() {
                write_metadata(&dest, &meta)?;
            }
        }
    }
    if let Some(d) = dir {
        write_json(&Dest::File(d.join("run.meta.json")), &meta)?;
    }
    Ok(ExitCode::SUCCESS)
}

fn read_trajectory(path: &Path) -> Result<WalkPath, CliError> {
    let mut rdr = csv::ReaderBuilder::new().comment(Some(b'#')).from_path(path)?;
    let headers = rdr.headers()?.clone();
    if headers.iter().collect::<Vec<_>>() != ["n", "t_star", "t", "x"] {
        return Err(CliError::Input {
            path: path.to_path_buf(),
            reason: "expected header n,t_star,t,x".into(),
        });
    }
    let snapshots = rdr.deserialize().collect::<Result<Vec<Snapshot>, _>>()?;
    if snapshots
        .windows(2)
        .any(|w| w[1].t < w[0].t || w[1].t_star < w[0].t_star)
    {
        return Err(CliError::Input {
            path: path.to_path_buf(),
            reason: "t and t_star must be non-decreasing".into(),
        });
    }
    let tau_star = snapshots.get(1).map_or(0.0, |s| s.t_star - snapshots[0].t_star);
    Ok(WalkPath { tau_star, snapshots })
}

fn invert(a: InvertArgs) -> Result<ExitCode, CliError> {
    let path = read_trajectory(&a.input)?;
    let d = invert_leading(&path)?;
    // t_* is constant on [t̄_n, t̄_{n+1}) and jumps at t̄_{n+1}
    let mut pts = Vec::with_capacity(2 * d.times.len());
    pts.push((d.times[0], d.t_stars[0]));
    for n in 1..d.times.len() {
        pts.push((d.times[n], d.t_stars[n - 1]));
        pts.push((d.times[n], d.t_stars[n]));
    }
    let table = Table::from_pairs(["t", "t_star"], pts);
    emit("directing", &a, &a.out, &table)
}

fn verify(a: VerifyArgs) -> Result<ExitCode, CliError> {
    let p = walk_params(&a.walk)?;
    if !(a.threshold > 0.0 && a.threshold <= 1.0) {
        return Err(fracsub::Error::InvalidParameter {
            name: "threshold",
            value: a.threshold,
            reason: "must lie in (0, 1]",
        }
        .into());
    }
    let cfg = VerifyConfig {
        params: p,
        tau_star: a.walk.tau_star,
        t_obs: a.t,
        n_paths: a.paths,
        seed: a.walk.seed,
        workers: a.walk.workers,
        threshold: a.threshold,
    };
    let start = Instant::now();
    let mut report = verify_marginal(&cfg)?;
    if a.timing {
        report.runtime_s = Some(start.elapsed().as_secs_f64());
    }
    let dest = Dest::resolve(&a.out, "verify");
    write_json(&dest, &report)?;
    write_metadata(&dest, &metadata("verify", &a)?)?;
    Ok(if report.pass {
        ExitCode::SUCCESS
    } else {
        eprintln!(
            "fracsub: KS sup-difference {:.4e} >= {:.4e}",
            report.ks_sup, report.threshold
        );
        ExitCode::FAILURE
    })
}

fn lint(a: LintArgs) -> Result<ExitCode, CliError> {
    let mut rdr = csv::ReaderBuilder::new().comment(Some(b'#')).from_path(&a.input)?;
    if rdr.headers()?.len() != 2 {
        return Err(CliError::Input {
            path: a.input.clone(),
            reason: "expected two columns".into(),
        });
    }
    let pts = rdr.deserialize().collect::<Result<Vec<(f64, f64)>, _>>()?;
    let report = lint_polyline(&pts, a.monotone);
    write_json(&Dest::Stdout, &report)?;
    Ok(if report.ok() {
        ExitCode::SUCCESS
    } else {
        for e in &report.errors {
            eprintln!("fracsub: {e}");
        }
        ExitCode::FAILURE
    })
}
