fn main() {
    std::process::exit(kinj::cli::run(std::env::args_os()));
}
