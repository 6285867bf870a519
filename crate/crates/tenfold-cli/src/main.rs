fn main() {
    std::process::exit(tenfold_cli::run(std::env::args_os()));
}
