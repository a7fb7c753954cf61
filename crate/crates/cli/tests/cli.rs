//! End-to-end tests of the `antigraph` binary: output formats, pipe
//! composition, determinism of `--out` files, and the exit-code contract
//! (0 clean, 1 finding, 2 usage, 3 I/O or resource guard).

use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output, Stdio};

use antigraph::solve::longest_antipath;
use antigraph::{generators, OrientedGraph};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_antigraph"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn run_with_stdin(args: &[&str], stdin: &str) -> Output {
    let mut child = bin()
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary spawns");
    child
        .stdin
        .take()
        .unwrap()
        .write_all(stdin.as_bytes())
        .unwrap();
    child.wait_with_output().expect("binary exits")
}

fn stdout_of(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn code_of(out: &Output) -> i32 {
    out.status.code().expect("no signal")
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("antigraph-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

const VEE: &str = "n 3\n0 1\n2 1\n";

#[test]
fn solve_reports_the_expected_antipath() {
    let path = scratch("vee.txt");
    std::fs::write(&path, VEE).unwrap();
    let out = run(&[
        "solve",
        "--what",
        "antipath",
        "--canonical",
        "--input",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code_of(&out), 0);
    assert_eq!(stdout_of(&out), "antipath length 2: 0 1 2 (lead out)\n");
}

#[test]
fn solve_reads_standard_input_by_default() {
    let out = run_with_stdin(&["solve", "--what", "antipath", "--canonical"], VEE);
    assert_eq!(code_of(&out), 0);
    assert_eq!(stdout_of(&out), "antipath length 2: 0 1 2 (lead out)\n");
}

#[test]
fn timing_line_appears_unless_canonical() {
    let noisy = run_with_stdin(&["solve", "--what", "antipath"], VEE);
    assert_eq!(code_of(&noisy), 0);
    assert!(stdout_of(&noisy).lines().any(|l| l.starts_with("elapsed:")));
    let quiet = run_with_stdin(&["solve", "--what", "antipath", "--canonical"], VEE);
    assert!(!stdout_of(&quiet).contains("elapsed:"));
}

#[test]
fn inline_codes_replay_single_graphs() {
    let g = generators::circulant_tournament(5).unwrap();
    let code = g.to_trit_code().unwrap();
    let expected = longest_antipath(&g).unwrap().len();
    let out = run(&[
        "solve",
        "--what",
        "antipath",
        "--canonical",
        "--code",
        &format!("5:{code}"),
    ]);
    assert_eq!(code_of(&out), 0);
    let line = stdout_of(&out);
    assert!(
        line.starts_with(&format!("antipath length {expected}:")),
        "got: {line}"
    );
}

#[test]
fn generated_families_compose_with_solvers() {
    for k in ["2", "3", "6", "11"] {
        let gen = run(&["gen", "--family", "construction-d", "--k", k]);
        assert_eq!(code_of(&gen), 0);
        let text = stdout_of(&gen);
        assert!(text.starts_with("# family: construction-d(k="));
        let solved = run_with_stdin(&["solve", "--what", "dipath", "--canonical"], &text);
        assert_eq!(code_of(&solved), 0);
        let line = stdout_of(&solved);
        let len: usize = line
            .strip_prefix("dipath length ")
            .and_then(|r| r.split(':').next())
            .unwrap()
            .parse()
            .unwrap();
        assert!(len <= 1, "family must admit no directed path of length 2, got {line}");
    }
}

#[test]
fn gen_output_round_trips_through_the_parser() {
    let out = run(&["gen", "--family", "random", "--n", "8", "--p", "0.5", "--seed", "42"]);
    assert_eq!(code_of(&out), 0);
    let g = OrientedGraph::from_text(&stdout_of(&out)).unwrap();
    assert_eq!(g, generators::random_oriented(8, 0.5, 42).unwrap());
}

#[test]
fn verify_writes_deterministic_records() {
    let (a, b, c) = (scratch("a.jsonl"), scratch("b.jsonl"), scratch("c.jsonl"));
    let base = [
        "verify",
        "--property",
        "theorem-main",
        "--n",
        "4",
        "--k",
        "2",
        "--exhaustive",
        "--canonical",
    ];
    let first = run(&[&base[..], &["--out", a.to_str().unwrap()]].concat());
    let second = run(&[&base[..], &["--out", b.to_str().unwrap()]].concat());
    let sharded = run(&[
        &base[..],
        &["--out", c.to_str().unwrap(), "--shards", "3", "--jobs", "2"],
    ]
    .concat());
    for out in [&first, &second, &sharded] {
        assert_eq!(code_of(out), 0);
        let text = stdout_of(out);
        assert!(text.contains("records: 729"), "got: {text}");
        assert!(text.contains("counterexamples: 0"));
    }
    assert_eq!(stdout_of(&first), stdout_of(&second));
    let bytes = std::fs::read(&a).unwrap();
    assert_eq!(bytes, std::fs::read(&b).unwrap());
    assert_eq!(bytes, std::fs::read(&c).unwrap(), "sharding changed the stream");
    assert_eq!(bytes.iter().filter(|&&x| x == b'\n').count(), 729);
    for line in std::str::from_utf8(&bytes).unwrap().lines().take(3) {
        let v: serde_json::Value = serde_json::from_str(line).unwrap();
        assert_eq!(v["property"], "theorem-main");
    }
}

#[test]
fn search_runs_clean_on_the_settled_range() {
    let out = run(&[
        "search",
        "--property",
        "stein",
        "--n",
        "5",
        "--k",
        "3",
        "--exhaustive",
        "--canonical",
    ]);
    assert_eq!(code_of(&out), 0);
    let text = stdout_of(&out);
    assert!(text.contains("findings: 0"), "got: {text}");
    assert!(text.contains("hypothesis-true: 24"));
}

#[test]
fn rotate_reports_strategy_and_witness() {
    let gen = run(&["gen", "--family", "circulant", "--n", "5"]);
    let out = run_with_stdin(&["rotate", "--k", "2", "--canonical"], &stdout_of(&gen));
    assert_eq!(code_of(&out), 0);
    let text = stdout_of(&out);
    assert!(text.starts_with("strategy: "), "got: {text}");
    assert!(text.contains("witness antipath length 3:") || text.contains("witness anticycle"));
}

#[test]
fn gbound_prints_exact_rationals() {
    let out = run(&["gbound", "--kmax", "1000", "--canonical"]);
    assert_eq!(code_of(&out), 0);
    assert_eq!(
        stdout_of(&out),
        "g(k) > k for all k in [2, 1000]\ng(1000) = 2049715/2048\n"
    );
}

#[test]
fn resource_guards_exit_three() {
    let too_wide = run(&[
        "verify",
        "--property",
        "theorem-main",
        "--n",
        "7",
        "--k",
        "2",
        "--exhaustive",
    ]);
    assert_eq!(code_of(&too_wide), 3);

    let big = format!("n {}\n", 25);
    let out = run_with_stdin(&["solve", "--what", "antipath"], &big);
    assert_eq!(code_of(&out), 3);

    let deep = run(&[
        "search",
        "--property",
        "stein",
        "--n",
        "5",
        "--k",
        "9",
        "--exhaustive",
    ]);
    assert_eq!(code_of(&deep), 3, "pattern space 2^9 is past the guard");

    let missing = run(&["solve", "--what", "antipath", "--input", "/no/such/file"]);
    assert_eq!(code_of(&missing), 3);
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(code_of(&run(&[])), 2);
    assert_eq!(code_of(&run(&["solve", "--what", "frob"])), 2);
    assert_eq!(
        code_of(&run(&["verify", "--property", "nope", "--n", "4", "--k", "2", "--exhaustive"])),
        2
    );
    // Population flags are mutually exclusive and one is required.
    let both = run(&[
        "verify", "--property", "theorem-main", "--n", "4", "--k", "2", "--exhaustive",
        "--samples", "10", "--p", "0.5",
    ]);
    assert_eq!(code_of(&both), 2);
    let neither = run(&["verify", "--property", "theorem-main", "--n", "4", "--k", "2"]);
    assert_eq!(code_of(&neither), 2);
    // Search only accepts the open statements.
    let settled = run(&[
        "search", "--property", "theorem-main", "--n", "4", "--k", "2", "--exhaustive",
    ]);
    assert_eq!(code_of(&settled), 2);
    // Parameter errors at the library boundary are usage errors too.
    assert_eq!(code_of(&run(&["gen", "--family", "circulant", "--n", "4"])), 2);
    assert_eq!(code_of(&run(&["gen", "--family", "circulant"])), 2);
    assert_eq!(
        code_of(&run(&["solve", "--what", "antipath", "--code", "4-22"])),
        2
    );
    let low = run_with_stdin(&["rotate", "--k", "2"], VEE);
    assert_eq!(code_of(&low), 2, "degree precondition not met is a parameter error");
}
