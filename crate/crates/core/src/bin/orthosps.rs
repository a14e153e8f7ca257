fn main() {
    let code = orthosps_core::cli::run(std::env::args_os());
    std::process::exit(code);
}
