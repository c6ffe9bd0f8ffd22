fn main() {
    std::process::exit(motzkin::cli::main_with_args(std::env::args_os()));
}
