use clap::Parser;

use pentropy_cli::{exit_code, run_and_write, Cli};

fn main() {
    let cli = Cli::parse();
    if let Err(err) = run_and_write(&cli) {
        eprintln!("error: {err:#}");
        std::process::exit(exit_code(&err));
    }
}
