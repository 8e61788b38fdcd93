fn main() {
    std::process::exit(bcz::cli::main_with_args(std::env::args_os()));
}
