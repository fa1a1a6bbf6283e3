fn main() {
    std::process::exit(braidsurf::cli::main_with_args(std::env::args_os()));
}
