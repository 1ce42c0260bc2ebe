use std::fs;
use std::io::Write;

use salience_core::economy::anchor_incomes;
use salience_core::geometry::{
    effect_decomposition, iso_efficiency_path, iso_equality_path, price_of_equality_derivative, tau_for_equality,
    EQUALITY_TAU_TOL,
};
use salience_core::optimizer::{s_optimal_tax, solve_grid, validate_grid, FrontierRow};
use salience_core::twotax::{feasibility_bound, to_two_tax};
use salience_core::welfare::decompose;
use salience_core::{Policy, Result as ModelResult};

use crate::config::{ConfigFile, Overrides, RunConfig};
use crate::error::CliError;
use crate::table::{Cell, Table};
use crate::{Command, Common};

const FRONTIER_COLUMNS: [&str; 11] =
    ["s", "tau_star", "tau_perceived", "W", "xi", "mu", "E", "h_bar", "revenue", "foc_residual", "soc_value"];

pub(crate) fn run(command: Command, common: &Common) -> Result<(), CliError> {
    let file = match &common.config {
        Some(path) => ConfigFile::load(path)?,
        None => ConfigFile::default(),
    };
    let flags = Overrides {
        epsilon: common.eps,
        rho: common.rho,
        tol: common.tol,
        s_grid: common.s_grid,
        seed: common.seed,
    };
    let cfg = RunConfig::resolve(file, flags)?;
    match command {
        Command::Optimize { s } => optimize(&cfg, common, s),
        Command::Frontier => frontier(&cfg, common),
        Command::Replicate => replicate(&cfg, common),
        Command::Paths { iso_equality, iso_efficiency, equality, mu, s0, s1, steps } => {
            if iso_equality {
                iso_equality_cmd(&cfg, common, equality, s0, s1, steps)
            } else if iso_efficiency {
                iso_efficiency_cmd(&cfg, common, mu, s0)
            } else {
                Err(CliError::Config("choose --iso-equality or --iso-efficiency".into()))
            }
        }
        Command::Decompose { s0, h } => decompose_cmd(&cfg, common, s0, h),
        Command::Price { s, equality, h } => price(&cfg, common, s, equality, h),
        Command::TwoTax { tau, s, sc } => two_tax(common, tau, s, sc),
        Command::Calibrate => calibrate(&cfg, common),
    }
}

fn emit(table: &Table, name: &str, common: &Common) -> Result<(), CliError> {
    match &common.out {
        Some(dir) => {
            fs::create_dir_all(dir)?;
            let path = dir.join(format!("{name}.{}", common.format.extension()));
            table.write(common.format, fs::File::create(&path)?)?;
            eprintln!("wrote {}", path.display());
        }
        None => {
            let stdout = std::io::stdout();
            let mut lock = stdout.lock();
            table.write(common.format, &mut lock)?;
            lock.flush()?;
        }
    }
    Ok(())
}

fn frontier_cells(row: &FrontierRow) -> Vec<Cell> {
    [
        row.s,
        row.tau_star,
        row.tau_perceived,
        row.welfare,
        row.xi,
        row.mu,
        row.equality,
        row.h_bar,
        row.revenue,
        row.foc_residual,
        row.soc_value,
    ]
    .into_iter()
    .map(Cell::from)
    .collect()
}

/// One row per salience value; failed points keep their `s` and carry the
/// error message instead of numbers.
fn frontier_table(grid: &[f64], rows: Vec<ModelResult<FrontierRow>>) -> Table {
    let mut columns = FRONTIER_COLUMNS.to_vec();
    columns.push("errors");
    let mut table = Table::new(&columns);
    for (s, row) in grid.iter().zip(rows) {
        let mut cells = match &row {
            Ok(r) => frontier_cells(r),
            Err(_) => {
                let mut cells = vec![Cell::Num(*s)];
                cells.resize(FRONTIER_COLUMNS.len(), Cell::Num(f64::NAN));
                cells
            }
        };
        cells.push(match row {
            Ok(_) => Cell::from(""),
            Err(e) => Cell::from(e.to_string()),
        });
        table.push(cells);
    }
    table
}

fn optimize(cfg: &RunConfig, common: &Common, s: f64) -> Result<(), CliError> {
    let economy = cfg.economy()?;
    let row = s_optimal_tax(&economy, s, cfg.tol)?;
    let mut columns = FRONTIER_COLUMNS.to_vec();
    columns.extend(["formula_residual", "order_preserving_margin", "revenue_efficient_margin"]);
    let mut table = Table::new(&columns);
    let mut cells = frontier_cells(&row);
    cells.extend([row.formula_residual, row.order_preserving_margin, row.revenue_efficient_margin].map(Cell::from));
    table.push(cells);
    emit(&table, "optimize", common)
}

fn frontier(cfg: &RunConfig, common: &Common) -> Result<(), CliError> {
    let economy = cfg.economy()?;
    let grid = cfg.s_grid.values();
    validate_grid(&grid)?;
    let rows = solve_grid(&economy, &grid, cfg.tol);
    if let Some(Err(e)) = rows.iter().find(|r| r.is_err()) {
        return Err(e.clone().into());
    }
    emit(&frontier_table(&grid, rows), "frontier", common)
}

fn replicate(cfg: &RunConfig, common: &Common) -> Result<(), CliError> {
    let grid = cfg.s_grid.values();
    validate_grid(&grid)?;
    let dir = common.out.clone().unwrap_or_else(|| ".".into());
    let target = Common { out: Some(dir), ..common.clone() };
    for &eps in &cfg.epsilons {
        let base = cfg.economy_with(eps, cfg.rhos[0])?;
        for &rho in &cfg.rhos {
            let economy = base.with_rho(rho)?;
            let table = frontier_table(&grid, solve_grid(&economy, &grid, cfg.tol));
            emit(&table, &format!("frontier_rho{rho}_eps{eps}"), &target)?;
        }
    }
    Ok(())
}

fn iso_equality_cmd(
    cfg: &RunConfig,
    common: &Common,
    equality: Option<f64>,
    s0: f64,
    s1: f64,
    steps: usize,
) -> Result<(), CliError> {
    let economy = cfg.economy()?;
    let target = match equality {
        Some(e) => e,
        None => s_optimal_tax(&economy, s1, cfg.tol)?.equality,
    };
    let path = iso_equality_path(&economy, target, s0, s1, steps)?;
    let mut table = Table::new(&["E", "s", "tau_numeric", "tau_analytic", "relative_gap"]);
    for p in path {
        let gap = (p.tau_numeric - p.tau_analytic).abs() / p.tau_analytic;
        table.push([target, p.s, p.tau_numeric, p.tau_analytic, gap].map(Cell::from).to_vec());
    }
    emit(&table, "iso_equality", common)
}

fn iso_efficiency_cmd(cfg: &RunConfig, common: &Common, mu: Option<f64>, s0: f64) -> Result<(), CliError> {
    let economy = cfg.economy()?;
    let target = match mu {
        Some(m) => m,
        None => s_optimal_tax(&economy, s0, cfg.tol)?.mu,
    };
    let grid = cfg.s_grid.values();
    validate_grid(&grid)?;
    let mut table = Table::new(&["s", "tau", "tau_perceived", "mu", "E"]);
    for p in iso_efficiency_path(&economy, target, &grid)? {
        let d = decompose(&economy, &Policy::new(p.tau, p.s)?)?;
        table.push([p.s, p.tau, p.s * p.tau, d.mu, d.equality].map(Cell::from).to_vec());
    }
    emit(&table, "iso_efficiency", common)
}

fn decompose_cmd(cfg: &RunConfig, common: &Common, s0: f64, h: f64) -> Result<(), CliError> {
    let economy = cfg.economy()?;
    let d = effect_decomposition(&economy, s0, h, cfg.tol)?;
    let mut table = Table::new(&[
        "s0",
        "h",
        "total",
        "substitution",
        "income",
        "delta_used",
        "dE_rel_ddelta",
        "dmu_check_ds",
        "identity_gap",
        "identity_tolerance",
        "identity_check",
    ]);
    let mut cells: Vec<Cell> = [
        s0,
        h,
        d.total,
        d.substitution,
        d.income,
        d.delta_used,
        d.de_rel_ddelta,
        d.dmu_check_ds,
        d.identity_gap(),
        d.identity_tolerance(),
    ]
    .map(Cell::from)
    .to_vec();
    // a failed identity is reported as a solver error before reaching here
    cells.push("pass".into());
    table.push(cells);
    emit(&table, "decompose", common)
}

fn price(cfg: &RunConfig, common: &Common, s: f64, equality: Option<f64>, h: f64) -> Result<(), CliError> {
    let economy = cfg.economy()?;
    let target = match equality {
        Some(e) => e,
        None => s_optimal_tax(&economy, s, cfg.tol)?.equality,
    };
    let point = tau_for_equality(&economy, target, s, EQUALITY_TAU_TOL)?;
    let slope = price_of_equality_derivative(&economy, target, s, h)?;
    let mut table = Table::new(&["E", "s", "tau_check", "mu_check", "p_E", "dp_E_ds", "d_cost_ds", "d_benefit_ds"]);
    table.push(
        [point.equality, s, point.tau_check, point.mu_check, point.p_e, slope.dp_ds, slope.d_cost_ds, slope.d_benefit_ds]
            .map(Cell::from)
            .to_vec(),
    );
    emit(&table, "price", common)
}

fn two_tax(common: &Common, tau: f64, s: f64, s_c: f64) -> Result<(), CliError> {
    let p = to_two_tax(tau, s, s_c)?;
    let mut table = Table::new(&[
        "tau",
        "s",
        "s_C",
        "tau_L",
        "tau_C",
        "feasibility_bound",
        "effective_retention",
        "perceived_retention",
    ]);
    table.push(
        [tau, s, s_c, p.tau_l, p.tau_c, feasibility_bound(tau, s_c), p.effective_retention(), p.perceived_retention()]
            .map(Cell::from)
            .to_vec(),
    );
    emit(&table, "two_tax", common)
}

fn calibrate(cfg: &RunConfig, common: &Common) -> Result<(), CliError> {
    let spec = cfg
        .calibration_spec(cfg.epsilon, cfg.rho)
        .ok_or_else(|| CliError::Config("calibrate needs a [calibration] table rather than explicit wages".into()))?;
    let incomes = anchor_incomes(&spec)?;
    let economy = cfg.economy()?;
    let n = incomes.len();
    let mut table = Table::new(&["node", "quantile", "income", "wage"]);
    for (k, (z, w)) in incomes.iter().zip(economy.wages()).enumerate() {
        let quantile = (k as f64 + 0.5) / n as f64;
        table.push(vec![Cell::from(k + 1), quantile.into(), (*z).into(), (*w).into()]);
    }
    emit(&table, "calibration", common)
}
