fn main() {
    std::process::exit(hsstab::cli::run_from_env());
}
