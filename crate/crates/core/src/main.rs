fn main() {
    std::process::exit(plankton_ns::cli::run(std::env::args_os()));
}
