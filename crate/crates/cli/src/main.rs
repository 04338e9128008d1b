use clap::Parser;
use spectral_nodes_cli::{configure_threads, run, Cli, RunConfig};

fn main() {
    let cli = Cli::parse();
    if let Err(msg) = configure_threads() {
        eprintln!("error: {msg}");
        std::process::exit(2);
    }
    std::process::exit(run(RunConfig::from(cli)));
}
