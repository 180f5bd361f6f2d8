fn main() {
    std::process::exit(freudenthal::cli::run(std::env::args_os()));
}
