use clap::Parser;
use nisalg_cli::commands::{run, Cli};

fn main() {
    std::process::exit(run(Cli::parse()));
}
