fn main() {
    std::process::exit(rebalance::cli::run_cli(std::env::args_os()));
}
