use std::io::{self, Write};
use std::process::ExitCode;

use clap::Parser;
use hadlab::cli::{exit_code, run, Cli, RunConfig};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = RunConfig::from_cli(cli).and_then(|config| {
        let stdout = io::stdout();
        let mut out = stdout.lock();
        let r = run(&config, &mut out);
        out.flush()?;
        r
    });
    if let Err(e) = &result {
        eprintln!("error: {e}");
    }
    ExitCode::from(exit_code(&result) as u8)
}
