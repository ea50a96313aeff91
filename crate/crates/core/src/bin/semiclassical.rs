fn main() {
    std::process::exit(semiclassical::cli::main_with_args(std::env::args_os()));
}
