fn main() {
    std::process::exit(tietz_hua::cli::run(std::env::args_os()));
}
