use clap::Parser;
use coc_kernel::cli::{run, Cli};

fn main() {
    let cli = Cli::parse();
    let status = run(cli, &mut std::io::stdout().lock());
    std::process::exit(status);
}
