mod config;

use clap::{Parser, Subcommand, ValueEnum};
use config::RunConfig;
use jmatrix_core::nonrel::NonrelContext;
use jmatrix_core::rel::RelContext;
use jmatrix_core::{basis, freewave, kinematics, oracle, BasisSpec, Error, PotentialModel};
use rayon::prelude::*;

const EXIT_CONFIG: i32 = 2;
const EXIT_NUMERICAL: i32 = 3;
const EXIT_VERIFY: i32 = 4;

#[derive(Debug, Clone, Copy, PartialEq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Parser)]
#[command(name = "jmatrix", about = "Algebraic scattering phase shifts from L2 bases")]
struct Cli {
    /// JSON run configuration
    #[arg(long, global = true)]
    config: Option<String>,
    /// Output path; stdout when omitted
    #[arg(long, global = true)]
    output: Option<String>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    format: Format,
    /// Worker threads for energy scans; 1 gives bitwise-reproducible output
    #[arg(long, global = true, default_value_t = 1)]
    threads: usize,
    /// Override a config field, e.g. --set energies.count=5
    #[arg(long = "set", global = true, value_name = "KEY=VALUE")]
    overrides: Vec<String>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// tan(delta) over the configured energy grid
    PhaseShift,
    /// Truncation-order study against the reference solver
    Converge,
    /// Relativistic tangent against the non-relativistic one over a c scan
    NrLimit,
    /// Run the invariant suite for the configured problem
    Verify {
        /// Corrupt one overlap entry first (self-test of the suite)
        #[arg(long, hide = true)]
        inject_overlap_fault: bool,
    },
    /// Side-by-side table: this solver vs. direct integration
    Oracle,
}

fn main() {
    let cli = Cli::parse();
    let path = match &cli.config {
        Some(p) => p.clone(),
        None => {
            eprintln!("config error: --config is required");
            std::process::exit(EXIT_CONFIG);
        }
    };
    let cfg = match config::load(&path, &cli.overrides) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("{e}");
            std::process::exit(EXIT_CONFIG);
        }
    };
    let out = match run(&cli, &cfg) {
        Ok(o) => o,
        Err(RunError::Numerical(msg)) => {
            eprintln!("numerical error: {msg}");
            std::process::exit(EXIT_NUMERICAL);
        }
        Err(RunError::Verify(report)) => {
            print!("{report}");
            std::process::exit(EXIT_VERIFY);
        }
    };
    match &cli.output {
        None => print!("{out}"),
        Some(p) => {
            if let Err(e) = std::fs::write(p, out) {
                eprintln!("cannot write {p}: {e}");
                std::process::exit(EXIT_NUMERICAL);
            }
        }
    }
}

enum RunError {
    Numerical(String),
    Verify(String),
}

impl From<Error> for RunError {
    fn from(e: Error) -> Self {
        RunError::Numerical(e.to_string())
    }
}

fn run(cli: &Cli, cfg: &RunConfig) -> Result<String, RunError> {
    match cli.cmd {
        Cmd::PhaseShift => cmd_phase_shift(cli, cfg),
        Cmd::Converge => cmd_converge(cli, cfg),
        Cmd::NrLimit => cmd_nr_limit(cli, cfg),
        Cmd::Verify { inject_overlap_fault } => cmd_verify(cfg, inject_overlap_fault),
        Cmd::Oracle => cmd_oracle(cli, cfg),
    }
}

/// 17 significant digits, locale-independent.
fn num(x: f64) -> String {
    format!("{x:.16e}")
}

struct Table {
    columns: &'static [&'static str],
    rows: Vec<Vec<f64>>,
    /// optional block separator comments (csv) keyed by row index
    block_marks: Vec<(usize, String)>,
}

impl Table {
    fn new(columns: &'static [&'static str]) -> Self {
        Table { columns, rows: Vec::new(), block_marks: Vec::new() }
    }

    fn render(&self, format: Format) -> String {
        match format {
            Format::Csv => {
                let mut s = String::new();
                s.push_str(&self.columns.join(","));
                s.push('\n');
                for (i, row) in self.rows.iter().enumerate() {
                    for (at, mark) in &self.block_marks {
                        if *at == i {
                            s.push_str(mark);
                            s.push('\n');
                        }
                    }
                    let cells: Vec<String> = row.iter().map(|&x| num(x)).collect();
                    s.push_str(&cells.join(","));
                    s.push('\n');
                }
                s
            }
            Format::Json => {
                let arr: Vec<serde_json::Value> = self
                    .rows
                    .iter()
                    .map(|row| {
                        let mut obj = serde_json::Map::new();
                        for (c, &x) in self.columns.iter().zip(row) {
                            obj.insert(c.to_string(), serde_json::json!(x));
                        }
                        serde_json::Value::Object(obj)
                    })
                    .collect();
                let mut s = serde_json::to_string_pretty(&arr).expect("serialization");
                s.push('\n');
                s
            }
        }
    }
}

/// Run `f` over the grid with the requested worker count, preserving order.
fn scan<T: Send, F: Fn(f64) -> T + Sync>(threads: usize, grid: &[f64], f: F) -> Vec<T> {
    if threads <= 1 {
        grid.iter().map(|&e| f(e)).collect()
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .expect("thread pool");
        pool.install(|| grid.par_iter().map(|&e| f(e)).collect())
    }
}

enum Solver {
    Nonrel(NonrelContext),
    Rel(RelContext),
}

impl Solver {
    fn build(cfg: &RunConfig) -> Result<Self, RunError> {
        Self::build_with(cfg, cfg.basis_spec().expect("validated"), cfg.basis.n)
    }

    fn build_with(cfg: &RunConfig, mut spec: BasisSpec, n: usize) -> Result<Self, RunError> {
        spec.n_max = n;
        let model = cfg.potential_model().expect("validated");
        if cfg.relativistic {
            Ok(Solver::Rel(RelContext::new(spec, model, cfg.particle.mass, cfg.particle.c)?))
        } else {
            Ok(Solver::Nonrel(NonrelContext::new(spec, model)?))
        }
    }

    /// (wave number, tan, delta, pole proximity)
    fn solve(&self, cfg: &RunConfig, e: f64) -> jmatrix_core::Result<(f64, f64, f64, f64)> {
        match self {
            Solver::Nonrel(ctx) => {
                let r = ctx.tan_delta(e)?;
                Ok(((2.0 * e).sqrt(), r.tan_delta, r.delta, r.pole_proximity))
            }
            Solver::Rel(ctx) => {
                let kin = kinematics(cfg.particle.mass, cfg.particle.c, e)?;
                let r = ctx.tan_delta(e)?;
                Ok((kin.ktilde, r.tan_delta_tilde, r.delta, r.pole_proximity))
            }
        }
    }
}

fn cmd_phase_shift(cli: &Cli, cfg: &RunConfig) -> Result<String, RunError> {
    let grid = cfg.energy_grid().expect("validated");
    let solver = Solver::build(cfg)?;
    let results = scan(cli.threads, &grid, |e| solver.solve(cfg, e));
    let mut table = Table::new(&["energy", "k_or_ktilde", "tan_delta", "delta", "pole_proximity"]);
    for (e, r) in grid.iter().zip(results) {
        match r {
            Ok((k, t, d, p)) => table.rows.push(vec![*e, k, t, d, p]),
            Err(Error::Pole { energy, nearest, gap }) => {
                eprintln!(
                    "note: skipping energy {energy}: within pole guard of Harris eigenvalue {nearest} (gap {gap:e})"
                );
            }
            Err(other) => return Err(other.into()),
        }
    }
    Ok(table.render(cli.format))
}

/// One reference value for the configured potential at energy `e`.
fn oracle_tangent(cfg: &RunConfig, e: f64) -> jmatrix_core::Result<f64> {
    let model = cfg.potential_model().expect("validated");
    let grid = oracle::GridParams::default();
    if cfg.relativistic {
        let kin = kinematics(cfg.particle.mass, cfg.particle.c, e)?;
        let kappa = cfg.kappa().expect("validated");
        oracle::dirac_phase_shift(&model, kappa, &kin, &grid)
    } else if let PotentialModel::SquareWell { depth, radius } = model {
        oracle::squarewell_tan_delta_analytic(depth, radius, e)
    } else {
        let spec = cfg.basis_spec().expect("validated");
        oracle::schrodinger_phase_shift(&model, spec.l, e, &grid)
    }
}

fn cmd_converge(cli: &Cli, cfg: &RunConfig) -> Result<String, RunError> {
    let e = cfg.energy_grid().expect("validated")[0];
    let reference = if cfg.potential_model().expect("validated").is_free() {
        0.0
    } else {
        oracle_tangent(cfg, e)?
    };
    let n_list: Vec<usize> =
        cfg.n_list.clone().unwrap_or_else(|| vec![4, 6, 8, 12, 16, 24, 32, 40]);
    if n_list.iter().any(|&n| n < 2) {
        return Err(RunError::Numerical("n_list entries must be at least 2".into()));
    }
    let lambdas = cfg.lambda_list.clone().unwrap_or_else(|| vec![cfg.basis.lambda]);
    let sweep = cfg.lambda_list.is_some();
    let mut table = Table::new(&["N", "tan_delta", "abs_err_vs_oracle"]);
    for lam in lambdas {
        if sweep {
            table
                .block_marks
                .push((table.rows.len(), format!("# lambda = {}", num(lam))));
        }
        let mut spec = cfg.basis_spec().expect("validated");
        spec.scale = lam;
        for &n in &n_list {
            let solver = Solver::build_with(cfg, spec, n)?;
            let (_, t, _, _) = solver.solve(cfg, e)?;
            table.rows.push(vec![n as f64, t, (t - reference).abs()]);
        }
    }
    Ok(table.render(cli.format))
}

fn cmd_nr_limit(cli: &Cli, cfg: &RunConfig) -> Result<String, RunError> {
    let e = cfg.energy_grid().expect("validated")[0];
    let spec = cfg.basis_spec().expect("validated");
    let model = cfg.potential_model().expect("validated");
    let cs = cfg.c_list.clone().unwrap_or_else(|| vec![137.0, 1370.0, 13700.0]);
    let rows = jmatrix_core::rel::nonrel_limit_scan(&spec, &model, e, &cs)?;
    let mut table = Table::new(&["c", "tan_rel", "tan_nonrel", "gap"]);
    for r in rows {
        table.rows.push(vec![r.c, r.tan_rel, r.tan_nonrel, r.gap]);
    }
    Ok(table.render(cli.format))
}

fn cmd_oracle(cli: &Cli, cfg: &RunConfig) -> Result<String, RunError> {
    let grid = cfg.energy_grid().expect("validated");
    let solver = Solver::build(cfg)?;
    let results = scan(cli.threads, &grid, |e| -> jmatrix_core::Result<(f64, f64)> {
        let (_, t, _, _) = solver.solve(cfg, e)?;
        Ok((t, oracle_tangent(cfg, e)?))
    });
    let mut table = Table::new(&["energy", "tan_method", "tan_oracle", "abs_err"]);
    for (e, r) in grid.iter().zip(results) {
        match r {
            Ok((t, o)) => table.rows.push(vec![*e, t, o, (t - o).abs()]),
            Err(Error::Pole { energy, nearest, gap }) => {
                eprintln!(
                    "note: skipping energy {energy}: within pole guard of Harris eigenvalue {nearest} (gap {gap:e})"
                );
            }
            Err(other) => return Err(other.into()),
        }
    }
    Ok(table.render(cli.format))
}

fn cmd_verify(cfg: &RunConfig, inject_overlap_fault: bool) -> Result<String, RunError> {
    let mut report = String::new();
    let mut all_ok = true;
    let mut check = |name: &str, ok: bool, detail: String| {
        all_ok &= ok;
        let tag = if ok { "ok  " } else { "FAIL" };
        report.push_str(&format!("{tag} {name}: {detail}\n"));
    };

    let spec = cfg.basis_spec().expect("validated");
    let model = cfg.potential_model().expect("validated");
    let e0 = cfg.energy_grid().expect("validated")[0];

    // tridiagonality of the free-motion matrix, band built by quadrature
    {
        let mut small = spec;
        small.n_max = spec.n_max.min(10);
        let ov = basis::overlaps_by_quadrature(&small)
            .map_err(|e| RunError::Numerical(e.to_string()))?;
        let k = (2.0 * e0).sqrt();
        let mut j = 0.5 * &ov.s_psi - 0.5 * k * k * &ov.s_phi;
        if inject_overlap_fault {
            let d = small.n_max;
            j[(0, d)] += 1e-3;
            j[(d, 0)] += 1e-3;
        }
        let dim = small.n_max + 1;
        let mut worst = 0.0f64;
        for m in 0..dim {
            let row: f64 = (0..dim).map(|n| j[(m, n)].abs()).sum();
            for n in 0..dim {
                if (m as i64 - n as i64).abs() >= 2 {
                    worst = worst.max(j[(m, n)].abs() / row);
                }
            }
        }
        check("tridiagonality", worst < 1e-9, format!("max off-band/row = {worst:.2e}"));
    }

    // three-term recursion residuals of the expansion coefficients
    {
        let k = (2.0 * e0).sqrt();
        let w = freewave::sine_cosine_coefficients(&spec, k, spec.n_max)
            .map_err(|e| RunError::Numerical(e.to_string()))?;
        let j = freewave::jacobi_matrix(&spec, k)
            .map_err(|e| RunError::Numerical(e.to_string()))?;
        let mut worst = 0.0f64;
        for n in 1..spec.n_max {
            for coeffs in [&w.s, &w.c] {
                let r = j.j(n, n - 1) * coeffs[n - 1]
                    + j.j(n, n) * coeffs[n]
                    + j.j(n, n + 1) * coeffs[n + 1];
                let s = (j.j(n, n - 1) * coeffs[n - 1]).abs()
                    + (j.j(n, n) * coeffs[n]).abs()
                    + (j.j(n, n + 1) * coeffs[n + 1]).abs();
                worst = worst.max(r.abs() / s.max(1e-280));
            }
        }
        check("recursion residuals", worst < 1e-9, format!("max residual = {worst:.2e}"));
    }

    // dual-basis normalization on a small block
    {
        let mut worst = 0.0f64;
        for m in 0..=2usize {
            for n in 0..=2usize {
                let v = jmatrix_core::quadrature::integrate(
                    &|r| basis::phibar(&spec, m, r) * basis::phi(&spec, n, r),
                    0.0,
                    spec.cutoff_radius(),
                    &[],
                    1e-11,
                )
                .map_err(|e| RunError::Numerical(e.to_string()))?;
                let want = if m == n { 1.0 } else { 0.0 };
                worst = worst.max((v - want).abs());
            }
        }
        check("biorthonormality", worst < 1e-7, format!("max deviation = {worst:.2e}"));
    }

    // the free problem must give an exactly vanishing tangent
    {
        let free = RunConfig {
            potential: config::PotentialCfg {
                kind: "free".into(),
                depth: None,
                radius: None,
                range: None,
                width: None,
            },
            ..cfg.clone()
        };
        let solver = Solver::build(&free)?;
        let (_, t, _, _) = solver.solve(&free, e0).map_err(RunError::from)?;
        check("free-case exactness", t.abs() < 1e-12, format!("|tan| = {:.2e}", t.abs()));
    }

    if cfg.relativistic {
        // Green-element consistency and upper/lower spectrum split
        let sys = jmatrix_core::rel::RelSystem::new(spec, model, cfg.particle.mass, cfg.particle.c)
            .map_err(|e| RunError::Numerical(e.to_string()))?;
        let kin = kinematics(cfg.particle.mass, cfg.particle.c, e0)
            .map_err(|e| RunError::Numerical(e.to_string()))?;
        let (gpp, gmp) = sys.green_elements(&kin).map_err(|e| RunError::Numerical(e.to_string()))?;
        let gap = (gmp - kin.eps / kin.ktilde * gpp).abs() / gpp.abs().max(1e-300);
        check("green consistency", gap < 1e-7, format!("relative gap = {gap:.2e}"));

        let (a, s) = sys.m_plus_v();
        let h = jmatrix_core::rel::rel_harris_spectrum(&a, &s, cfg.particle.c)
            .map_err(|e| RunError::Numerical(e.to_string()))?;
        let mc2 = cfg.particle.mass * cfg.particle.c * cfg.particle.c;
        let v0 = match model {
            PotentialModel::SquareWell { depth, .. }
            | PotentialModel::Exponential { depth, .. }
            | PotentialModel::Gaussian { depth, .. } => depth.abs(),
            PotentialModel::Free => 0.0,
        };
        let above = h.energies.iter().filter(|&&x| x > mc2 - v0).count();
        let below = h.energies.iter().filter(|&&x| x < -mc2).count();
        let ok = above == spec.n_max && below == spec.n_max;
        check("spectrum split", ok, format!("{above} above, {below} below (N = {})", spec.n_max));
    }

    report.push_str(if all_ok { "verification passed\n" } else { "verification FAILED\n" });
    if all_ok {
        Ok(report)
    } else {
        Err(RunError::Verify(report))
    }
}
