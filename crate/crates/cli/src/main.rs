use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use parahoric_cli::{run, Cli, EXIT_VERIFICATION};

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(threads) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(threads).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    match run(&cli) {
        Ok(out) => {
            let mut stdout = std::io::stdout().lock();
            let _ = stdout.write_all(out.text.as_bytes());
            match out.failed {
                None => ExitCode::SUCCESS,
                Some(first) => {
                    eprintln!("verification failed; first failing instance: {first}");
                    ExitCode::from(EXIT_VERIFICATION as u8)
                }
            }
        }
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.code as u8)
        }
    }
}
