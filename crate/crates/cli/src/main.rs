use clap::Parser;
use zk_workbench::{report, Cli};

fn main() {
    let cli = Cli::parse();
    std::process::exit(report::execute(&cli));
}
