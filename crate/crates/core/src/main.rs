use clap::Parser;

fn main() {
    let cli = cwpoly::cli::Cli::parse();
    std::process::exit(cwpoly::cli::run(&cli));
}
