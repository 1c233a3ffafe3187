fn main() {
    std::process::exit(entlab_cli::run(std::env::args_os()));
}
