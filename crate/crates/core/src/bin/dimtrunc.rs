fn main() {
    std::process::exit(dimtrunc::cli::run(std::env::args_os()));
}
