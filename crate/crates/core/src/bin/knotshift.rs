fn main() {
    std::process::exit(knotshift::cli::main_with_args(std::env::args_os()));
}
