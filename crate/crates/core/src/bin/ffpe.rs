fn main() {
    let code = ffpe_fv::cli::main_with_args(std::env::args_os());
    std::process::exit(code);
}
