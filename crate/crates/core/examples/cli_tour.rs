//! Drives the command-line front end in-process.

use chevdioph::cli::run;

fn main() {
    let corpus = concat!(env!("CARGO_MANIFEST_DIR"), "/corpus/r02_two_is_not_a_square.ring");
    let commands: [&[&str]; 4] = [
        &["roots", "G2"],
        &["dcent", "--system", "C2", "--rep", "sp", "--ring", "GF(3)", "--root", "e1+e2"],
        &["solve", "--in", corpus],
        &["--format", "json-lines", "gamma", "--system", "A2", "--rep", "sl", "--ring", "GF(2)", "--root", "a1"],
    ];
    for args in commands {
        println!("$ chevdioph {}", args.join(" "));
        let argv = std::iter::once("chevdioph").chain(args.iter().copied());
        let code = run(argv, &mut std::io::stdout(), &mut std::io::stderr());
        println!("(exit {code})\n");
    }
}
