fn main() {
    std::process::exit(blockspin::cli::run(std::env::args_os()));
}
