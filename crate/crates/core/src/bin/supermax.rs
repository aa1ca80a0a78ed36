fn main() {
    std::process::exit(supermaximal::cli::main_from_args(std::env::args_os()));
}
