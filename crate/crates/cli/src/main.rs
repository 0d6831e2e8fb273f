fn main() {
    let args: Vec<String> = std::env::args().collect();
    let argv: Vec<&str> = args.iter().map(String::as_str).collect();
    std::process::exit(rigidity_cli::run_command(&argv));
}
