//! Driving the command-line interface in-process.
fn main() {
    let mut out = Vec::new();
    let mut err = Vec::new();
    for args in [
        vec!["classcode", "hf", "show", "#11"],
        vec!["classcode", "roundtrip", "--vstage", "2", "--budget", "3"],
        vec![
            "classcode",
            "--fmt",
            "json",
            "unroll",
            "--vstage",
            "2",
            "--budget",
            "3",
        ],
        vec!["classcode", "code", "frobnicate"],
    ] {
        out.clear();
        err.clear();
        let code = classcode::cli::run(args.clone(), &mut out, &mut err);
        println!("$ {} (exit {code})", args[1..].join(" "));
        print!(
            "{}",
            String::from_utf8_lossy(if code == 0 { &out } else { &err })
        );
    }
}
