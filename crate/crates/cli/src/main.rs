//! `nilpoisson`: exit 0 on success, 1 when the algebra or bivector fails validation, 2 on
//! parse or usage errors, 3 when an internal invariant breaks.

mod args;
mod report;
mod run;

use std::process::ExitCode;

use clap::Parser;

use args::Cli;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let outcome = std::panic::catch_unwind(|| run::execute(&cli.command));
    let (report, status) = match outcome {
        Ok(Ok(pair)) => pair,
        Ok(Err(e)) => {
            eprintln!("error: {}", e.message);
            return ExitCode::from(e.code);
        }
        Err(_) => {
            eprintln!("error: internal failure");
            return ExitCode::from(3);
        }
    };
    let common = cli.command.common();
    let text = report.render(common.format);
    match &common.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, text) {
                eprintln!("error: {}: {e}", path.display());
                return ExitCode::from(2);
            }
        }
        None => print!("{text}"),
    }
    ExitCode::from(status)
}
