fn main() {
    std::process::exit(tanglemetry::cli::run_from_env());
}
