fn main() {
    std::process::exit(chm_cli::run(std::env::args_os()));
}
