use clap::Parser;

fn main() {
    let cli = match endo_cli::Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // Help and version requests are successes; bad arguments exit 2.
            e.exit();
        }
    };
    match endo_cli::run(&cli) {
        Ok(out) => print!("{out}"),
        Err(e) => {
            eprintln!("error: {e}");
            std::process::exit(endo_cli::exit_code(&e));
        }
    }
}
