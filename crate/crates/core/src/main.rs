fn main() {
    std::process::exit(isokit::cli::run(std::env::args_os()));
}
