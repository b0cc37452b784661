use std::process::ExitCode;

use clap::error::ErrorKind::{DisplayHelp, DisplayVersion};

use adaptquad::QuadError;
use adaptquad_cli::{parse_config, ConfigError, run, EXIT_CONFIG, EXIT_NUMERICAL, EXIT_OTHER, OUT_DIR_ENV};

fn main() -> ExitCode {
    let env_dir = std::env::var_os(OUT_DIR_ENV).filter(|v| !v.is_empty()).map(Into::into);
    let cfg = match parse_config(std::env::args_os(), env_dir) {
        Ok(cfg) => cfg,
        Err(ConfigError::Usage(e)) if e.kind() == DisplayHelp || e.kind() == DisplayVersion => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            eprintln!("error[config/{}] {e}", e.code());
            return ExitCode::from(EXIT_CONFIG as u8);
        }
    };
    match run(&cfg) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            let (tag, code) = match &e {
                e if e.is_numerical() => ("numerical", EXIT_NUMERICAL),
                QuadError::Io { .. } => ("io", EXIT_OTHER),
                _ => ("config", EXIT_CONFIG),
            };
            eprintln!("error[{tag}] {}", e.to_string().replace('\n', " "));
            ExitCode::from(code as u8)
        }
    }
}
