fn main() {
    let (code, text) = evorb::cli::run(std::env::args_os());
    print!("{text}");
    std::process::exit(code);
}
