fn main() {
    let outcome = twovalued::cli::run(std::env::args_os().skip(1));
    if outcome.code == 2 {
        eprint!("{}", outcome.output);
    } else {
        print!("{}", outcome.output);
    }
    std::process::exit(outcome.code);
}
