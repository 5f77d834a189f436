use clap::Parser;

fn main() {
    let cli = hklab_cli::Cli::parse();
    let result = hklab_cli::run(&cli);
    std::process::exit(hklab_cli::exit_code(&result));
}
