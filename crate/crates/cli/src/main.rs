use clap::Parser;

fn main() {
    let cli = match twoatom_cli::Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            // clap exits 0 for --help/--version and 2 for usage errors
            std::process::exit(if e.use_stderr() { twoatom_cli::error::EXIT_CONFIG } else { 0 });
        }
    };
    std::process::exit(twoatom_cli::run(&cli));
}
