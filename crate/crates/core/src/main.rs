fn main() {
    std::process::exit(okubo::cli::main_with_args(std::env::args_os()));
}
