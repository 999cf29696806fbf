fn main() {
    std::process::exit(llfact_core::cli::run(std::env::args_os()));
}
