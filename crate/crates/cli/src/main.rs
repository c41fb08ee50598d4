fn main() {
    std::process::exit(proofcloud_cli::main_with(std::env::args_os()));
}
