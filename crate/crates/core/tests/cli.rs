use std::path::PathBuf;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fermat-periods"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn golden(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "golden", "v1", name].iter().collect();
    p.to_string_lossy().into_owned()
}

#[test]
fn goldens_match() {
    let cases: [(&[&str], &str); 7] = [
        (&["cycles", "2", "3"], "cycles_2_3.json"),
        (&["kdim", "6", "3"], "kdim_6_3.json"),
        (&["codim-table"], "codim_table.json"),
        (&["table1"], "table1.json"),
        (&["nreduced", "2", "5", "0", "--r", "1", "--rcheck", "2"], "nreduced_2_5_0.json"),
        (&["constant-rank", "2", "5"], "constant_rank_2_5.json"),
        (&["bicycles", "4", "3", "0"], "bicycles_4_3_0.json"),
    ];
    for (args, file) in cases {
        let g = golden(file);
        let mut a = args.to_vec();
        a.extend(["--golden", &g]);
        let out = run(&a);
        assert_eq!(out.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    }
}

#[test]
fn golden_mismatch_exits_one() {
    let out = run(&["kdim", "6", "3", "--golden", &golden("cycles_2_3.json")]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(run(&["cycles", "3", "3"]).status.code(), Some(2));
    assert_eq!(run(&["cycles", "2", "1"]).status.code(), Some(2));
    assert_eq!(run(&["nreduced", "2", "5"]).status.code(), Some(2));
    assert_eq!(run(&["no-such-command"]).status.code(), Some(2));
}

#[test]
fn output_is_deterministic() {
    for args in [
        &["sweep-kernels", "4", "3", "--samples", "5", "--seed", "7", "--jobs", "2"][..],
        &["periods", "2", "5", "0", "--format", "json"],
        &["taylor", "2", "5", "--order", "2"],
    ] {
        let a = run(args);
        let b = run(args);
        assert_eq!(a.status.code(), Some(0), "{args:?}");
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}

#[test]
fn json_output_parses() {
    let out = run(&["hdim", "6", "3", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["command"], "hdim");
    assert_eq!(v["results"].as_array().unwrap().len(), 5);
}
