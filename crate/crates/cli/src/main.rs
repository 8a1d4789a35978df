mod cli;
mod coin_io;
mod commands;
mod error;
mod figures;
mod output;

use clap::error::ErrorKind;
use clap::Parser;

/// COINWALK_THREADS caps sampler/quadrature parallelism.
fn configure_threads() {
    if let Ok(value) = std::env::var("COINWALK_THREADS") {
        match value.parse::<usize>() {
            Ok(threads) if threads >= 1 => {
                let _ = rayon::ThreadPoolBuilder::new()
                    .num_threads(threads)
                    .build_global();
            }
            _ => eprintln!("warning: ignoring invalid COINWALK_THREADS value {value:?}"),
        }
    }
}

fn main() {
    let parsed = cli::Cli::try_parse();
    let args = match parsed {
        Ok(args) => args,
        Err(err) => match err.kind() {
            ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                print!("{err}");
                std::process::exit(0);
            }
            _ => {
                eprint!("{err}");
                std::process::exit(64);
            }
        },
    };

    configure_threads();
    if let Err(err) = commands::run(args) {
        eprintln!("error: {err}");
        std::process::exit(err.exit_code());
    }
}
