fn main() {
    std::process::exit(rhospace::cli::main_with_args(std::env::args_os()));
}
