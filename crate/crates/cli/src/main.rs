use clap::Parser;

use quarr_cli::{run, Cli};

fn main() {
    // clap itself exits with 2 on unparseable command lines.
    let cli = Cli::parse();
    match run(cli) {
        Ok(outcome) => {
            print!("{}", outcome.stdout);
            if !outcome.checks_ok {
                std::process::exit(1);
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            std::process::exit(e.code());
        }
    }
}
