fn main() {
    std::process::exit(screengame_cli::main_with_stdio());
}
