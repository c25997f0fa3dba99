fn main() {
    std::process::exit(moebius_dual::cli::main_with_args(std::env::args_os()));
}
