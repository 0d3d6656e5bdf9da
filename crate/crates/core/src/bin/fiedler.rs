fn main() {
    std::process::exit(fiedler_core::cli::main_with_args(std::env::args_os()));
}
