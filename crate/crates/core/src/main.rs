fn main() {
    let code = nonnest::cli::run(std::env::args_os(), &mut std::io::stdout());
    std::process::exit(code);
}
