fn main() {
    std::process::exit(frozen_hill::cli::main_from(std::env::args_os()));
}
