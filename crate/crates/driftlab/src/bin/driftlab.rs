use clap::Parser;
use driftlab::cli::{run, Cli};

fn main() {
    if let Err(e) = run(Cli::parse()) {
        eprintln!("driftlab: {e}");
        std::process::exit(e.exit_code());
    }
}
