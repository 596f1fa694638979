use clap::Parser;

fn main() {
    let cli = qt_cli::app::Cli::parse();
    let code = qt_cli::app::run(
        cli,
        &mut std::io::stdout().lock(),
        &mut std::io::stderr().lock(),
    );
    std::process::exit(code);
}
