fn main() {
    std::process::exit(nck::cli::run_from_args(std::env::args_os()));
}
