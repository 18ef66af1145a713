fn main() {
    std::process::exit(icosoku::cli::run(std::env::args_os()));
}
