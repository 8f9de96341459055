fn main() {
    std::process::exit(eostrata::cli::run(std::env::args_os()));
}
