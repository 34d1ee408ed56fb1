use std::io::{self, BufWriter, Write};
use std::process::ExitCode;

use chainpoly_cli::commands::{run, Cli};
use clap::Parser;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    let result = run(cli, &mut out);
    let flushed = out.flush();
    match (result, flushed) {
        (Ok(outcome), Ok(())) => outcome.into(),
        (Err(e), _) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
        (Ok(_), Err(e)) => {
            eprintln!("error: writing output: {e}");
            ExitCode::from(1)
        }
    }
}
