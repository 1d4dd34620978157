use clap::Parser;

fn main() {
    let cli = klsym::Cli::parse();
    let mut stdout = std::io::stdout().lock();
    std::process::exit(klsym::run(cli, &mut stdout));
}
