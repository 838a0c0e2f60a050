fn main() {
    std::process::exit(taugraph::cli::run(std::env::args_os()));
}
