use std::path::{Path, PathBuf};
use std::process::ExitCode;

use asymlab::ExecMode;
use asymlab_cli::curves::limit_curves;
use asymlab_cli::error::{CliError, CliResult, EXIT_NUMERICAL, EXIT_PASS, EXIT_VALIDATION};
use asymlab_cli::output::{
    write_csv, write_error_record, write_json, write_sweep, AsymptoticRow, ReferenceRow,
};
use asymlab_cli::scenario::{asymptotic_field, reference_field};
use asymlab_cli::verify::run_verify;
use asymlab_cli::{parse_config_file, run_scenario, ScenarioConfig};
use clap::{Args, Parser, Subcommand};

/// Inner asymptotics of u_t + phi(u)_x = eps u_xx checked against reference solves.
#[derive(Parser)]
#[command(name = "asymlab", version)]
struct Cli {
    /// Run every grid evaluation on one thread.
    #[arg(long, global = true)]
    sequential: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct LegArgs {
    /// Scenario file (TOML).
    config: PathBuf,
    /// Index into the sweep list.
    #[arg(long, default_value_t = 0)]
    leg: usize,
    /// Output CSV; defaults to a file in the report directory.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Reference solve on the evaluation window of one leg.
    Solve(LegArgs),
    /// Singular points and shock curves of the inviscid limit.
    Limit {
        config: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Asymptotic field alone on the evaluation window of one leg.
    Inner(LegArgs),
    /// Full comparison over the sweep with a rate fit.
    Sweep {
        config: PathBuf,
        /// Overrides `[report] out_dir`.
        #[arg(long)]
        out_dir: Option<PathBuf>,
    },
    /// Built-in invariant suite.
    Verify {
        /// Also write the outcomes as JSON.
        #[arg(long)]
        json: Option<PathBuf>,
    },
}

fn load(path: &Path) -> CliResult<ScenarioConfig> {
    parse_config_file(path)
}

fn out_path(cfg: &ScenarioConfig, given: Option<PathBuf>, stem: &str) -> PathBuf {
    given.unwrap_or_else(|| {
        cfg.report
            .out_dir
            .join(format!("{}_{stem}.csv", cfg.kind().name()))
    })
}

fn run(cli: Cli) -> Result<i32, (CliError, Option<PathBuf>)> {
    let mode = if cli.sequential {
        ExecMode::Sequential
    } else {
        ExecMode::Parallel
    };
    let with_dir = |cfg: &ScenarioConfig| {
        let dir = cfg.report.out_dir.clone();
        move |e: CliError| (e, Some(dir))
    };
    match cli.command {
        Command::Solve(a) => {
            let cfg = load(&a.config).map_err(|e| (e, None))?;
            let rows: Vec<ReferenceRow> = reference_field(&cfg, a.leg, mode)
                .map_err(with_dir(&cfg))?
                .into_iter()
                .map(|[inner_x, inner_t, x, t, u_reference]| ReferenceRow {
                    inner_x,
                    inner_t,
                    x,
                    t,
                    u_reference,
                })
                .collect();
            let path = out_path(&cfg, a.out, &format!("reference_leg{}", a.leg));
            write_csv(&path, &rows).map_err(with_dir(&cfg))?;
            println!("{}", path.display());
            Ok(EXIT_PASS)
        }
        Command::Inner(a) => {
            let cfg = load(&a.config).map_err(|e| (e, None))?;
            let rows: Vec<AsymptoticRow> = asymptotic_field(&cfg, a.leg, mode)
                .map_err(with_dir(&cfg))?
                .into_iter()
                .map(|[inner_x, inner_t, u_asymptotic]| AsymptoticRow {
                    inner_x,
                    inner_t,
                    u_asymptotic,
                })
                .collect();
            let path = out_path(&cfg, a.out, &format!("inner_leg{}", a.leg));
            write_csv(&path, &rows).map_err(with_dir(&cfg))?;
            println!("{}", path.display());
            Ok(EXIT_PASS)
        }
        Command::Limit { config, out } => {
            let cfg = load(&config).map_err(|e| (e, None))?;
            let lim = limit_curves(&cfg).map_err(with_dir(&cfg))?;
            let path = out_path(&cfg, out, "limit");
            write_csv(&path, &lim.rows).map_err(with_dir(&cfg))?;
            for p in &lim.points {
                println!("{}", serde_json::to_string(p).unwrap_or_default());
            }
            println!("rh_defect {:e}", lim.rh_defect);
            println!("{}", path.display());
            Ok(EXIT_PASS)
        }
        Command::Sweep { config, out_dir } => {
            let mut cfg = load(&config).map_err(|e| (e, None))?;
            if let Some(d) = out_dir {
                cfg.report.out_dir = d;
            }
            let outcome = run_scenario(&cfg, mode).map_err(with_dir(&cfg))?;
            write_sweep(&cfg.report.out_dir, &outcome).map_err(with_dir(&cfg))?;
            let r = &outcome.report;
            for row in &r.rows {
                println!(
                    "{} = {:.4e}: sup error {:.4e} ({:.2} s)",
                    r.param_name, row.param, row.sup_error, row.runtime_s
                );
            }
            match r.slope {
                Some(s) => println!(
                    "slope {s:.4} (residual {:.3e}), band [{}, {}]: {}",
                    r.residual.unwrap_or(f64::NAN),
                    r.slope_band[0],
                    r.slope_band[1],
                    if r.pass { "PASS" } else { "FAIL" }
                ),
                None => println!("degenerate fit: errors at the noise floor"),
            }
            Ok(r.exit_code())
        }
        Command::Verify { json } => {
            let outcomes = run_verify();
            for o in &outcomes {
                println!(
                    "{} {}/{}: {} ({:.2} s)",
                    if o.passed { "PASS" } else { "FAIL" },
                    o.module,
                    o.name,
                    o.detail,
                    o.runtime_s
                );
            }
            if let Some(p) = json {
                write_json(&p, &outcomes).map_err(|e| (e, None))?;
            }
            let failed = outcomes.iter().filter(|o| !o.passed).count();
            println!("{} checks, {failed} failed", outcomes.len());
            Ok(if failed == 0 {
                EXIT_PASS
            } else {
                EXIT_NUMERICAL
            })
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() {
                EXIT_VALIDATION as u8
            } else {
                0
            });
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err((e, dir)) => {
            let record = e.record();
            eprintln!("{}", serde_json::to_string(&record).unwrap_or_default());
            if let Some(d) = dir {
                write_error_record(&d, &record);
            }
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
