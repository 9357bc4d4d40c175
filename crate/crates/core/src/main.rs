fn main() {
    std::process::exit(ztc::cli::run_from(std::env::args_os()));
}
