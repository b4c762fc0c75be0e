fn main() {
    std::process::exit(pmscheme_cli::run(std::env::args_os()));
}
