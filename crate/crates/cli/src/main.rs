use clap::Parser;

fn main() {
    let cli = comvar_cli::Cli::parse();
    std::process::exit(comvar_cli::execute(&cli));
}
