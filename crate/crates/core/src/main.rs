use clap::Parser;

fn main() {
    let cli = carsim::cli::Cli::parse();
    match carsim::cli::run(cli) {
        Ok(status) => std::process::exit(status),
        Err(e) => {
            eprintln!("error[{}]: {}", e.code, e.message);
            std::process::exit(1);
        }
    }
}
