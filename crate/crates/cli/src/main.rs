fn main() {
    std::process::exit(vacshift_cli::run(std::env::args_os()));
}
