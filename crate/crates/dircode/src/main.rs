use clap::Parser;

use dircode::cli::{execute, Cli};

fn main() {
    let cli = Cli::parse();
    match execute(&cli.command) {
        Ok(output) => {
            if let Some(path) = cli.command.out_path() {
                if let Err(e) = std::fs::write(path, output + "\n") {
                    eprintln!("error: cannot write {}: {e}", path.display());
                    std::process::exit(2);
                }
            } else {
                println!("{output}");
            }
        }
        Err(err) => {
            eprintln!("error: {}", err.message());
            std::process::exit(err.exit_code());
        }
    }
}
