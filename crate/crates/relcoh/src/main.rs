fn main() {
    std::process::exit(relcoh::main_with(std::env::args_os()));
}
