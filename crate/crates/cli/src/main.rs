fn main() {
    let (code, output) = condorcet_committees_cli::run(std::env::args_os());
    println!("{output}");
    std::process::exit(code);
}
