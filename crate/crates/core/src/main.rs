fn main() {
    std::process::exit(toroidal::cli::main_with_args(std::env::args_os()));
}
