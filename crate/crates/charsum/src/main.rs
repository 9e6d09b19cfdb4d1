use clap::Parser;

fn main() {
    let cfg = charsum::RunConfig::parse();
    std::process::exit(charsum::cli::execute(cfg));
}
