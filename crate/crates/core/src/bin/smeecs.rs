use std::io::{self, BufWriter, Write};

use clap::Parser;
use smeecs::cli::{run, Cli};

fn main() {
    let cli = Cli::parse();
    let stdout = io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    let mut err = io::stderr().lock();
    let code = run(&cli, &mut out, &mut err);
    if out.flush().is_err() && code == 0 {
        std::process::exit(1);
    }
    std::process::exit(code);
}
