fn main() {
    std::process::exit(restrictor::cli::main_with(std::env::args_os()));
}
