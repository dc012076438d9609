fn main() {
    std::process::exit(resolvitor_cli::run(std::env::args_os()));
}
