fn main() {
    std::process::exit(uqslcat::cli::run(std::env::args_os()));
}
