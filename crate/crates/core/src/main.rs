use clap::Parser;

fn main() {
    let cfg = kronsheaf::cli::RunConfig::parse();
    std::process::exit(kronsheaf::cli::main_with(&cfg));
}
