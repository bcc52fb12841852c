fn main() {
    std::process::exit(lieconf::cli::main_with_args(std::env::args_os()));
}
