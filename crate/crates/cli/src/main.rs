use clap::Parser;

fn main() {
    let cli = elie::cli::Cli::parse();
    std::process::exit(elie::cli::main_with(cli));
}
