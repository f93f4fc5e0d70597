use clap::Parser;

fn main() {
    let cli = cmc_cli::Cli::parse();
    match cmc_cli::run(cli) {
        Ok(()) => {}
        Err(e) => {
            eprintln!("cmc: {}", e.message);
            std::process::exit(e.code);
        }
    }
}
