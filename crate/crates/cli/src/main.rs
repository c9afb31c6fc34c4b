fn main() {
    let code = riderlab_cli::app::main_with(std::env::args().collect());
    std::process::exit(code);
}
