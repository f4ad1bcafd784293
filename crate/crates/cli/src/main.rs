use clap::Parser;
use rarepat_cli::cli::{run, Cli};

fn main() {
    // clap itself exits with code 2 on malformed arguments.
    let cli = Cli::parse();
    if let Err(err) = run(cli) {
        eprintln!("error: {err}");
        std::process::exit(err.exit_code());
    }
}
