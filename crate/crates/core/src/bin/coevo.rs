use clap::Parser;

fn main() {
    let cli = coevo::cli::Cli::parse();
    std::process::exit(coevo::cli::run(&cli));
}
