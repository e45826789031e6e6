fn main() {
    std::process::exit(affhecke::cli::main_with_args(std::env::args_os()));
}
