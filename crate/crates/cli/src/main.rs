mod args;
mod commands;
mod config;
mod output;

use clap::Parser;
use std::process::ExitCode;

const EXIT_INPUT: u8 = 1;
const EXIT_ASSERTION: u8 = 2;

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match args::Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok(failures) if failures.is_empty() => ExitCode::SUCCESS,
        Ok(failures) => {
            for f in failures {
                eprintln!("assertion failed: {f}");
            }
            ExitCode::from(EXIT_ASSERTION)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_INPUT)
        }
    }
}

fn run(cli: &args::Cli) -> anyhow::Result<Vec<String>> {
    let settings = config::Settings::resolve(&cli.global)?;
    let threads = settings.threads.unwrap_or_else(|| std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1));
    rayon::ThreadPoolBuilder::new().num_threads(threads).build_global()?;
    let mut manifest = config::Manifest::new(&settings);
    let outcome = commands::run(&cli.command, &settings, &mut manifest)?;
    manifest.finish_stage();
    if let Some(report) = &outcome.report {
        let bytes = output::to_json(report)?;
        match &settings.json {
            Some(path) => {
                output::write_atomic(path, &bytes)?;
                output::write_atomic(&output::manifest_path(path), &output::to_json(&manifest)?)?;
            }
            None => {
                use std::io::Write;
                std::io::stdout().write_all(&bytes)?;
            }
        }
    }
    Ok(outcome.failures)
}
