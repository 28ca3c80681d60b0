fn main() {
    std::process::exit(gbf_cli::main_with(std::env::args_os()));
}
