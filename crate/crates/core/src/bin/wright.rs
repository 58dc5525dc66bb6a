fn main() {
    std::process::exit(wright_sops::cli::run_from(std::env::args_os()));
}
