use std::io::Write;

use clap::Parser;
use tamesc::Cli;

fn main() {
    let cli = Cli::parse();
    let json = match &cli.command {
        tamesc::args::Command::Verify(a) => a.instance.output.json,
        tamesc::args::Command::Brute(a) | tamesc::args::Command::Conductor(a) => a.output.json,
        tamesc::args::Command::Factors(a) => a.instance.output.json,
        tamesc::args::Command::Sweep(a) => a.output.json,
    };
    match tamesc::execute(&cli) {
        Ok(outcome) => {
            let body = if json { outcome.report.to_json() + "\n" } else { outcome.report.to_text() };
            let _ = std::io::stdout().lock().write_all(body.as_bytes());
            std::process::exit(outcome.exit_code);
        }
        Err(e) => {
            eprintln!("tamesc: {e}");
            std::process::exit(e.exit_code());
        }
    }
}
