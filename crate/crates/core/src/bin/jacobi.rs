fn main() {
    std::process::exit(jacobi_core::cli::run(std::env::args_os()));
}
