fn main() {
    std::process::exit(matwaring::cli::run_from_env());
}
