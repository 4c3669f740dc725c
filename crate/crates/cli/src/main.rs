fn main() {
    std::process::exit(fermat5_cli::run(std::env::args_os()));
}
