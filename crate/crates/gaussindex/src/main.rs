fn main() {
    std::process::exit(gaussindex::cli::run(std::env::args_os()));
}
