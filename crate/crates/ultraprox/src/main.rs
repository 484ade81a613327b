fn main() {
    std::process::exit(ultraprox::cli::run(std::env::args_os()));
}
