use std::process::ExitCode;

use clap::Parser;

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let opts = pencil_cli::Options::parse();
    ExitCode::from(pencil_cli::main_with(&opts))
}
