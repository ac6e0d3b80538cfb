fn main() {
    std::process::exit(congruence_lab::cli::run_cli(std::env::args_os()));
}
