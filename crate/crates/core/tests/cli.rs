use std::collections::BTreeSet;

use clap::CommandFactory;
use classcode::cli::{run, Cli};

fn call(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("classcode").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

fn file(name: &str, body: &str) -> String {
    let dir = std::env::temp_dir().join(format!("classcode-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, body).unwrap();
    p.to_string_lossy().into_owned()
}

fn empty_code() -> String {
    file("empty.json", r#"{"nodes":["a"],"edges":[],"top":"a"}"#)
}

fn cyclic_code() -> String {
    file(
        "cyclic.json",
        r#"{"nodes":["a","b"],"edges":[["a","b"],["b","a"]],"top":"a"}"#,
    )
}

#[test]
fn collapse_of_empty_code() {
    let (code, out, _) = call(&["code", "collapse", "--in", &empty_code()]);
    assert_eq!(code, 0);
    assert_eq!(out, "#0\n{}\n");
}

#[test]
fn cyclic_code_is_rejected() {
    let (code, _, err) = call(&["code", "validate", "--in", &cyclic_code()]);
    assert_eq!(code, 1);
    assert!(err.starts_with("CycleFound"), "{err}");
}

#[test]
fn v2_round_trip() {
    let (code, out, _) = call(&["roundtrip", "--vstage", "2", "--budget", "3"]);
    assert_eq!(code, 0);
    assert_eq!(
        out.lines().next(),
        Some("ISOMORPHIC (4 elements, 4 classes)")
    );
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(call(&["code", "frobnicate"]).0, 2);
    assert_eq!(call(&["unroll", "--vstage", "2"]).0, 2);
    assert_eq!(call(&["translate", "star", "--formula", "(ex x"]).0, 2);
    assert_eq!(call(&["hf", "show", "{{}"]).0, 2);
    let bad = file("bad.json", "{not json");
    assert_eq!(call(&["code", "collapse", "--in", &bad]).0, 2);
    assert_eq!(call(&["--help"]).0, 0);
}

#[test]
fn domain_failures_exit_1() {
    assert_eq!(call(&["code", "collapse", "--in", &cyclic_code()]).0, 1);
    assert_eq!(call(&["roundtrip", "--vstage", "3", "--budget", "3"]).0, 1);
    assert_eq!(call(&["hf", "vstage", "9"]).0, 1);
}

/// One representative invocation per leaf subcommand.
fn invocations() -> Vec<Vec<String>> {
    let e = empty_code();
    let raw = file(
        "dup.json",
        r#"{"nodes":["a","b","t"],"edges":[["a","t"],["b","t"]],"top":"t"}"#,
    );
    let sol = file("sol.json", r##"{"#0":[],"#1":["#0"],"#3":["#0","#1"]}"##);
    let v: Vec<Vec<&str>> = vec![
        vec!["code", "validate", "--in", &e],
        vec!["code", "collapse", "--set", "#3"],
        vec!["code", "iso", "--set", "#3", "--set", "#3"],
        vec!["code", "vin", "--set", "#1", "--set", "#3"],
        vec!["code", "pair", "--set", "#0", "--set", "#1"],
        vec!["code", "union", "--set", "#6"],
        vec!["code", "wo", "--set", "#3", "--order", "1,0"],
        vec![
            "code", "fn", "--set", "#3", "--set", "#3", "--map", "0:1,1:1",
        ],
        vec!["code", "fnof", "--set", "#4", "--set", "#1", "--set", "#1"],
        vec!["code", "ord", "--length", "3"],
        vec!["code", "normalize", "--in", &raw],
        vec!["code", "canon", "--set", "{{},{{}}}"],
        vec!["code", "below", "--set", "#3", "--node", "1"],
        vec!["code", "maxipi", "--set", "#2", "--set", "#3"],
        vec!["code", "glue", "--set", "#2", "--set", "#3"],
        vec!["code", "random", "--seed", "7"],
        vec!["hf", "show", "#11"],
        vec!["hf", "vstage", "3"],
        vec!["hf", "enum", "4"],
        vec!["unroll", "--vstage", "2", "--budget", "4"],
        vec!["cutoff", "--hbounded", "3", "--k", "2"],
        vec!["roundtrip", "--hbounded", "3"],
        vec!["audit", "axioms", "--vstage", "2", "--budget", "3"],
        vec![
            "audit",
            "translation",
            "--vstage",
            "2",
            "--budget",
            "3",
            "--formula",
            "(ex x (in x a1))",
            "--param",
            "#1",
        ],
        vec![
            "truth",
            "eval",
            "--formula",
            "(ex z (in z x))",
            "--val",
            "x=#1",
        ],
        vec!["truth", "table", "--size-bound", "2", "--audit"],
        vec!["truth", "iter", "--levels", "2", "--size-bound", "2"],
        vec!["def", "--set", "#3"],
        vec!["lhier", "--levels", "3"],
        vec![
            "etr",
            "solve",
            "--vstage",
            "3",
            "--step",
            "(ex r (and (in r i) (allin z x (inclass r z Y))))",
            "--index",
            "i",
            "--chain",
            "3",
        ],
        vec![
            "etr",
            "check",
            "--vstage",
            "3",
            "--step",
            "(ex r (and (in r i) (allin z x (inclass r z Y))))",
            "--index",
            "i",
            "--chain",
            "3",
            "--in",
            &sol,
        ],
        vec!["etr", "compare", "--gamma", "3", "--delta", "2"],
        vec![
            "translate",
            "star",
            "--formula",
            "(ex x (in x y))",
            "--expansion",
            "witness",
        ],
        vec![
            "translate",
            "etrstar",
            "--formula",
            "(exin z a2 (= z a1))",
            "--param",
            "#0",
            "--param",
            "#1",
        ],
        vec!["translate", "interp", "--formula", "(exC X (inclass y X))"],
    ];
    v.into_iter()
        .map(|a| a.into_iter().map(String::from).collect())
        .collect()
}

fn leaves(cmd: &clap::Command, prefix: &str, out: &mut BTreeSet<String>) {
    let subs: Vec<_> = cmd
        .get_subcommands()
        .filter(|c| c.get_name() != "help")
        .collect();
    if subs.is_empty() {
        out.insert(prefix.trim().to_string());
    }
    for s in subs {
        leaves(s, &format!("{prefix} {}", s.get_name()), out);
    }
}

#[test]
fn every_subcommand_runs() {
    let mut want = BTreeSet::new();
    leaves(&Cli::command(), "", &mut want);
    let mut covered = BTreeSet::new();
    for args in invocations() {
        let refs: Vec<&str> = args.iter().map(String::as_str).collect();
        let (code, out, err) = call(&refs);
        assert_eq!(code, 0, "{refs:?}\n{out}\n{err}");
        assert!(!out.is_empty(), "{refs:?}");
        let mut cmd = Cli::command();
        let mut path = Vec::new();
        for a in &refs {
            match cmd.find_subcommand(a) {
                Some(s) => {
                    path.push(*a);
                    cmd = s.clone();
                }
                None => break,
            }
        }
        covered.insert(path.join(" "));
    }
    assert_eq!(covered, want);
}

#[test]
fn output_is_deterministic() {
    for args in invocations() {
        let refs: Vec<&str> = args.iter().map(String::as_str).collect();
        for fmt in ["text", "json"] {
            let mut with_fmt = refs.clone();
            with_fmt.extend(["--fmt", fmt]);
            assert_eq!(call(&with_fmt), call(&with_fmt), "{with_fmt:?}");
        }
    }
}

#[test]
fn thread_count_does_not_change_output() {
    let one = call(&["unroll", "--vstage", "2", "--budget", "5", "--threads", "1"]);
    for t in ["2", "3", "8"] {
        assert_eq!(
            call(&["unroll", "--vstage", "2", "--budget", "5", "--threads", t]),
            one
        );
    }
}
