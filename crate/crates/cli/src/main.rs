fn main() {
    std::process::exit(weakchan_cli::run(std::env::args_os()));
}
