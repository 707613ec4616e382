fn main() {
    std::process::exit(sft_algebra::cli::run_from_env());
}
