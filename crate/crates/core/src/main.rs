fn main() {
    std::process::exit(pcp_univar::cli::main_with(std::env::args_os()));
}
