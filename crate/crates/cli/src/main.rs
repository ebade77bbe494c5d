use std::io::Write;
use std::process::ExitCode;

use bks_cli::args::{Cli, Format};
use clap::Parser;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match bks_cli::run(&cli) {
        Ok(report) => {
            let text = match cli.global.format {
                Format::Json => report.to_json(),
                Format::Text => report.to_text(),
            };
            let mut out = std::io::stdout().lock();
            if out.write_all(text.as_bytes()).and_then(|_| out.flush()).is_err() {
                return ExitCode::from(2);
            }
            if report.exit_code() != 0 {
                eprintln!("bks: a checked claim failed; see the report");
            }
            ExitCode::from(report.exit_code())
        }
        Err(e) => {
            eprintln!("bks: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
