fn main() {
    std::process::exit(hdepth_core::cli::main_with_args(std::env::args_os()));
}
