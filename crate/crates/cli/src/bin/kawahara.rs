use std::process::ExitCode as ProcessExit;

use clap::Parser;
use kawahara::args::{Cli, Command};
use kawahara::error::{CliError, ExitCode};
use kawahara::pipeline;
use kawahara::tolerances::Profile;

fn run(cli: &Cli) -> Result<(), CliError> {
    let args = cli.command.args();
    let config = args.to_config()?;
    match &cli.command {
        Command::Stokes(_) => {
            let file = pipeline::run_stokes(&config)?;
            println!("{}", serde_json::to_string_pretty(&file.coefficients)?);
        }
        Command::Collide(_) => {
            let file = pipeline::run_collide(&config)?;
            println!("{}", serde_json::to_string_pretty(&file.site)?);
        }
        Command::Isola(_) => {
            let meta = pipeline::run_isola(&config)?;
            println!(
                "mu in ({:.10e}, {:.10e}), mu* = {:.10e}, lambda* = {:.10e} + {:.10e}i",
                meta.mu_interval.0, meta.mu_interval.1, meta.mu_star, meta.lambda_star.re, meta.lambda_star.im
            );
        }
        Command::Ffh(_) => {
            let file = pipeline::run_ffh(&config)?;
            match &file.isola {
                Some(iso) => println!(
                    "isola on ({:.10e}, {:.10e}), mu* = {:.10e}, lambda* = {:.10e} + {:.10e}i, {} points",
                    iso.mu_lo, iso.mu_hi, iso.mu_star, iso.lambda_star.re, iso.lambda_star.im, iso.point_count
                ),
                None => println!("stable at this resolution: no eigenvalue above the growth floor"),
            }
        }
        Command::Compare(_) => {
            let profile = match args.profile {
                Some(p) => p,
                None => Profile::for_run(config.delta_n, config.order)?,
            };
            let tolerances = profile.defaults().with_overrides(args.tolerance_overrides());
            let report = pipeline::compare(&config, profile, tolerances)?;
            for q in &report.quantities {
                println!(
                    "{:<16} {} error = {} (tol {})",
                    q.name,
                    if q.pass { "PASS" } else { "FAIL" },
                    q.error.map_or("n/a".to_string(), |e| format!("{e:.3e}")),
                    q.tolerance
                );
            }
            if !report.pass {
                return Err(CliError::Tolerance(report.failing));
            }
        }
    }
    Ok(())
}

fn main() -> ProcessExit {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ProcessExit::from(ExitCode::Pass as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ProcessExit::from(e.exit_code() as u8)
        }
    }
}
