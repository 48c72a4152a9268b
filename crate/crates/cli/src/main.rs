mod args;
mod commands;

use std::process::ExitCode;

use clap::Parser;

use crate::args::Cli;
use crate::commands::CliError;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let level = match cli.verbose {
        0 => log::LevelFilter::Warn,
        1 => log::LevelFilter::Info,
        _ => log::LevelFilter::Debug,
    };
    env_logger::Builder::new()
        .filter_level(level)
        .format_timestamp(None)
        .parse_env("BANDGRID_LOG")
        .init();

    match commands::run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("bandgrid: {e}");
            if e.is_missing_file() {
                eprintln!("hint: fetch the data with scripts/fetch_datasets.py or point BANDGRID_DATA at it");
            }
            ExitCode::from(e.exit_code())
        }
    }
}

impl CliError {
    fn is_missing_file(&self) -> bool {
        matches!(self, CliError::Core(bandgrid_core::Error::Io { source, .. })
            if source.kind() == std::io::ErrorKind::NotFound)
    }

    fn exit_code(&self) -> u8 {
        use bandgrid_core::ErrorKind;
        match self {
            CliError::Usage(_) => 2,
            CliError::Core(e) => match e.kind() {
                ErrorKind::Data => 3,
                ErrorKind::Config => 4,
            },
            CliError::Write { .. } => 3,
        }
    }
}
