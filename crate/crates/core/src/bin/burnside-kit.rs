fn main() {
    std::process::exit(burnside_kit::cli::main_with_args(std::env::args_os()));
}
