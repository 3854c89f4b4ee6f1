fn main() {
    std::process::exit(sgq_cli::main_with_args(std::env::args_os()));
}
