fn main() {
    std::process::exit(sawlab::cli::main_with_args(std::env::args_os()));
}
