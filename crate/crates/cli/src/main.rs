use std::io;

fn main() {
    let quiet = std::env::args().any(|a| a == "--quiet" || a == "-q");
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or(if quiet {
        "error"
    } else {
        "warn"
    }))
    .format_timestamp(None)
    .init();
    let code = wschur_cli::run(
        std::env::args_os(),
        &mut io::stdout().lock(),
        &mut io::stderr().lock(),
    );
    std::process::exit(code);
}
