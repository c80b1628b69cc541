fn main() {
    std::process::exit(netextreme::cli::run(std::env::args_os()));
}
