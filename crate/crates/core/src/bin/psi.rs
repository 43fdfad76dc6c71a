fn main() {
    std::process::exit(psi_classes::cli::run(std::env::args_os()));
}
