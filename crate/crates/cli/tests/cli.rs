use std::path::Path;
use std::process::{Command, Output};

fn hoqiga(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hoqiga"))
        .args(args)
        .env_remove("HOQIGA_OUT_DIR")
        .output()
        .expect("spawn hoqiga")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn best_fitness(o: &Output) -> f64 {
    stdout(o)
        .lines()
        .find_map(|l| l.strip_prefix("best fitness: "))
        .expect("best fitness line")
        .parse()
        .unwrap()
}

#[test]
fn qiga2_solves_onemax8_for_most_seeds() {
    let solved = (0..40)
        .filter(|seed| {
            let o = hoqiga(&[
                "run",
                "--algo",
                "qiga2",
                "--problem",
                "onemax:8",
                "--seed",
                &seed.to_string(),
            ]);
            assert!(o.status.success());
            best_fitness(&o) == 8.0
        })
        .count();
    assert!(solved >= 38, "{solved}/40");
}

#[test]
fn run_prints_bitstring_and_budget() {
    let o = hoqiga(&[
        "run",
        "--algo",
        "qiga2",
        "--problem",
        "onemax:8",
        "--seed",
        "7",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("evaluations: 5000"), "{text}");
    assert!(text.contains("best: 11111111"), "{text}");
}

#[test]
fn run_is_deterministic() {
    let a = hoqiga(&["run", "--algo", "sga", "--problem", "trap:2", "--seed", "1"]);
    let b = hoqiga(&["run", "--algo", "sga", "--problem", "trap:2", "--seed", "1"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn every_algorithm_runs() {
    for args in [
        &["--algo", "qiga2"][..],
        &["--algo", "qiga-r", "--order", "3"],
        &["--algo", "qiga1"],
        &["--algo", "sga"],
    ] {
        let mut all = vec!["run", "--problem", "trap:3", "--maxfe", "300"];
        all.extend_from_slice(args);
        let o = hoqiga(&all);
        assert_eq!(o.status.code(), Some(0), "{args:?}");
        assert!(stdout(&o).contains("evaluations: 300"));
    }
}

#[test]
fn order_zero_is_a_usage_error() {
    let o = hoqiga(&[
        "run",
        "--algo",
        "qiga-r",
        "--order",
        "0",
        "--problem",
        "onemax:8",
    ]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("1 <= r <= N"));
    let o = hoqiga(&[
        "run",
        "--algo",
        "qiga-r",
        "--order",
        "9",
        "--problem",
        "onemax:8",
    ]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn bad_flag_combinations_are_usage_errors() {
    for args in [
        &[
            "run",
            "--algo",
            "sga",
            "--mu",
            "0.9",
            "--problem",
            "onemax:8",
        ][..],
        &[
            "run",
            "--algo",
            "qiga1",
            "--order",
            "2",
            "--problem",
            "onemax:8",
        ],
        &["run", "--algo", "qiga-r", "--problem", "onemax:8"],
        &[
            "run",
            "--algo",
            "qiga2",
            "--mu",
            "1.5",
            "--problem",
            "onemax:8",
        ],
        &["run", "--algo", "qiga2", "--problem", "onemax:x"],
        &[
            "run",
            "--algo",
            "qiga2",
            "--problem",
            "onemax:8",
            "--unknown",
        ],
        &["gen", "--n", "10", "--clauses", "5", "--ratio", "2"],
        &["theory", "--n-range", "x"],
        &["bench", "--plan", "does/not/exist.toml"],
        &["meta", "--mu", "0.9"],
        &["frobnicate"],
    ] {
        assert_eq!(hoqiga(args).status.code(), Some(1), "{args:?}");
    }
}

#[test]
fn missing_problem_file_is_a_runtime_error() {
    let o = hoqiga(&["run", "--algo", "qiga2", "--problem", "no_such_file.cnf"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn help_documents_every_flag() {
    let cases: [(&str, &[&str]); 5] = [
        (
            "run",
            &[
                "--algo",
                "--order",
                "--mu",
                "--problem",
                "--maxfe",
                "--seed",
                "--out",
            ],
        ),
        ("bench", &["--plan", "--outdir", "--jobs", "HOQIGA_OUT_DIR"]),
        ("theory", &["--n-range", "--orders", "--out"]),
        (
            "meta",
            &[
                "--plan",
                "--mu",
                "--problem",
                "--order",
                "--runs",
                "--seed",
                "--maxfe",
                "--jobs",
                "--out",
            ],
        ),
        ("gen", &["--n", "--clauses", "--ratio", "--seed", "--out"]),
    ];
    for (sub, flags) in cases {
        let o = hoqiga(&[sub, "--help"]);
        assert_eq!(o.status.code(), Some(0), "{sub}");
        let text = stdout(&o);
        for flag in flags {
            assert!(text.contains(flag), "{sub} help lacks {flag}");
        }
    }
    assert_eq!(hoqiga(&["--help"]).status.code(), Some(0));
    assert_eq!(hoqiga(&["--version"]).status.code(), Some(0));
}

#[test]
fn theory_surfaces_quantum_factor() {
    let o = hoqiga(&["theory", "--n-range", "10", "--orders", "1,2,10"]);
    assert!(o.status.success());
    let text = stdout(&o);
    let rows: Vec<Vec<&str>> = text
        .lines()
        .skip(1)
        .map(|l| l.split_whitespace().collect())
        .collect();
    assert_eq!(rows.len(), 3);
    assert_eq!(rows[0][4].parse::<f64>().unwrap(), 0.01953125);
    assert_eq!(rows[0][4], rows[1][4]);
    assert_eq!(rows[2][4].parse::<f64>().unwrap(), 1.0);
    assert_eq!(rows[2][5], "true-quantum");
}

#[test]
fn theory_csv_covers_the_grid() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("t.csv");
    let o = hoqiga(&[
        "theory",
        "--n-range",
        "1..5",
        "--orders",
        "1,2",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert!(o.status.success());
    let text = std::fs::read_to_string(out).unwrap();
    assert_eq!(text.lines().next(), Some("N,r,w,log2_lambda,lambda,class"));
    // N = 1 has only r = 1
    assert_eq!(text.lines().count(), 1 + 9);
}

#[test]
fn gen_writes_parseable_dimacs() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.cnf");
    let b = dir.path().join("b.cnf");
    for p in [&a, &b] {
        let o = hoqiga(&[
            "gen",
            "--n",
            "50",
            "--seed",
            "3",
            "--out",
            p.to_str().unwrap(),
        ]);
        assert!(o.status.success());
    }
    let text = std::fs::read_to_string(&a).unwrap();
    assert_eq!(text, std::fs::read_to_string(&b).unwrap());
    assert!(text.lines().any(|l| l == "p cnf 50 215"));
    let f = hoqiga::parse_dimacs(&text).unwrap();
    assert_eq!(f.clause_count(), 215);
    assert!(f.clauses().iter().all(|c| c.len() == 3));

    let o = hoqiga(&[
        "run",
        "--algo",
        "qiga2",
        "--problem",
        a.to_str().unwrap(),
        "--maxfe",
        "200",
    ]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn run_writes_trajectory() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("nested/traj.csv");
    let o = hoqiga(&[
        "run",
        "--algo",
        "qiga1",
        "--problem",
        "onemax:6",
        "--maxfe",
        "50",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert!(o.status.success());
    let text = std::fs::read_to_string(out).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "evaluation,best_so_far");
    assert_eq!(lines.len(), 51);
    assert!(lines[50].starts_with("50,"));
}

fn write_plan(dir: &Path, problems: &str) -> std::path::PathBuf {
    let plan = dir.join("plan.toml");
    std::fs::write(
        &plan,
        format!(
            r#"
problems = [{problems}]
runs = 3
seed = 11
max_fe = 300

[[algorithms]]
id = "qiga2"
kind = "qiga"

[[algorithms]]
id = "sga"
kind = "sga"
"#
        ),
    )
    .unwrap();
    plan
}

#[test]
fn bench_exports_tables_and_curves() {
    let dir = tempfile::tempdir().unwrap();
    let plan = write_plan(dir.path(), r#""onemax:10", "trap:4""#);
    let out = dir.path().join("out");
    let o = hoqiga(&[
        "bench",
        "--plan",
        plan.to_str().unwrap(),
        "--outdir",
        out.to_str().unwrap(),
        "--jobs",
        "2",
    ]);
    assert_eq!(
        o.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&o.stderr)
    );
    let runs = std::fs::read_to_string(out.join("runs.csv")).unwrap();
    assert_eq!(runs.lines().count(), 1 + 2 * 2 * 3);
    let summary = std::fs::read_to_string(out.join("summary.csv")).unwrap();
    assert_eq!(summary.lines().count(), 1 + 2 * 2);
    assert!(out.join("ranking.csv").is_file());
    assert!(out.join("convergence_01_onemax_10.svg").is_file());
    assert!(out.join("convergence_02_trap_4.svg").is_file());
    assert!(!out.join("failures.txt").exists());
}

#[test]
fn bench_output_dir_from_environment() {
    let dir = tempfile::tempdir().unwrap();
    let plan = write_plan(dir.path(), r#""onemax:6""#);
    let out = dir.path().join("env_out");
    let o = Command::new(env!("CARGO_BIN_EXE_hoqiga"))
        .args(["bench", "--plan", plan.to_str().unwrap()])
        .env("HOQIGA_OUT_DIR", &out)
        .output()
        .unwrap();
    assert!(o.status.success());
    assert!(out.join("summary.csv").is_file());
}

#[test]
fn bench_partial_failure_exits_3() {
    let dir = tempfile::tempdir().unwrap();
    let plan = write_plan(dir.path(), r#""onemax:6", "missing.cnf""#);
    let out = dir.path().join("out");
    let o = hoqiga(&[
        "bench",
        "--plan",
        plan.to_str().unwrap(),
        "--outdir",
        out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(3));
    assert!(out.join("failures.txt").is_file());
    assert!(out.join("summary.csv").is_file());
}

#[test]
fn meta_from_flags_and_plan() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("scores.csv");
    let o = hoqiga(&[
        "meta",
        "--mu",
        "0.5,0.95",
        "--problem",
        "trap:4",
        "--problem",
        "onemax:8",
        "--runs",
        "3",
        "--maxfe",
        "300",
        "--out",
        csv.to_str().unwrap(),
    ]);
    assert_eq!(
        o.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&o.stderr)
    );
    assert!(stdout(&o).contains("selected mu = "));
    assert_eq!(std::fs::read_to_string(&csv).unwrap().lines().count(), 3);

    let plan = dir.path().join("tune.toml");
    std::fs::write(
        &plan,
        "[tuning]\nparameter = \"qiga1_angle\"\nvalues = [0.02, 0.05]\nproblems = [\"onemax:8\"]\nruns = 2\nmax_fe = 200\n",
    )
    .unwrap();
    let o = hoqiga(&["meta", "--plan", plan.to_str().unwrap()]);
    assert_eq!(
        o.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&o.stderr)
    );
    assert!(stdout(&o).contains("selected qiga1_angle = "));

    let o = hoqiga(&["meta", "--mu", "1.2", "--problem", "trap:4"]);
    assert_eq!(o.status.code(), Some(1));
}
