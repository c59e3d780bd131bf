fn main() {
    tanglebound::cli::configure_threads();
    let code = tanglebound::cli::run(
        std::env::args_os(),
        &mut std::io::stdout().lock(),
        &mut std::io::stderr().lock(),
    );
    std::process::exit(code);
}
