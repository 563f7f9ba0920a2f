fn main() {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let (code, out) = fpindex_cli::run_command(&args);
    // reports and error objects both go to stdout so JSON consumers see one stream
    print!("{out}");
    std::process::exit(code);
}
