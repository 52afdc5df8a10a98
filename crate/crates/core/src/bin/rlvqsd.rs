fn main() {
    std::process::exit(rlvqsd::cli::run(std::env::args_os()));
}
