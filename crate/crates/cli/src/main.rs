fn main() {
    std::process::exit(apsp_cli::run(std::env::args_os()));
}
