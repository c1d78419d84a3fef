use std::path::PathBuf;
use std::process::{Command, Output};

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/data")
        .join(name)
}

fn fcnet(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fcnet"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn path(name: &str) -> String {
    data(name).to_str().unwrap().to_string()
}

#[test]
fn check_json_matches_goldens() {
    for (net, golden, code) in [
        ("self_loop.net", "self_loop.check.json", 0),
        ("drain.net", "drain.check.json", 1),
    ] {
        let o = fcnet(&["check", "--json", "--witness", &path(net)]);
        assert_eq!(o.status.code(), Some(code), "{net}: {}", stderr(&o));
        let expected = std::fs::read_to_string(data(golden)).unwrap();
        assert_eq!(stdout(&o), expected, "{net}");
    }
}

#[test]
fn check_text_output() {
    let o = fcnet(&["check", &path("drain.net")]);
    assert_eq!(o.status.code(), Some(1));
    let text = stdout(&o);
    assert!(text.starts_with("verdict: NotLive\n"), "{text}");
    assert!(text.contains("priority chain: [c, a]"), "{text}");
    assert!(text.contains("occurrence bounds: [1, 1]"), "{text}");

    let o = fcnet(&["check", "--witness", &path("drain.net")]);
    assert!(stdout(&o).contains("witness trace: [a, c]"));

    let o = fcnet(&["check", &path("self_loop.net")]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("verdict: Live\n"));
}

#[test]
fn not_free_choice_is_rejected() {
    let o = fcnet(&["check", &path("not_free_choice.net")]);
    assert_eq!(o.status.code(), Some(2));
    let err = stderr(&o);
    assert!(err.contains("not admissible"), "{err}");
    assert!(err.contains("t1") && err.contains("t2"), "{err}");
    assert!(o.stdout.is_empty());
}

#[test]
fn parse_errors_carry_a_position() {
    let dir = std::env::temp_dir().join(format!("fcnet-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let file = dir.join("bad.net");
    std::fs::write(&file, "place p\ntrans t : p -> q\n").unwrap();
    let o = fcnet(&["check", file.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains(":2:"), "{}", stderr(&o));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn missing_file_and_bad_usage() {
    assert_eq!(
        fcnet(&["check", "/nonexistent/x.net"]).status.code(),
        Some(2)
    );
    assert_eq!(fcnet(&["check"]).status.code(), Some(2));
    assert_eq!(fcnet(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(
        fcnet(&["structure", "--siphons", "--traps", &path("drain.net")])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(fcnet(&["--help"]).status.code(), Some(0));
}

#[test]
fn oracle_agrees_on_examples() {
    let o = fcnet(&["oracle", &path("self_loop.net")]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "oracle verdict: Live\n");
    let o = fcnet(&["oracle", &path("drain.net")]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(stdout(&o), "oracle verdict: NotLive\n");
    let o = fcnet(&["oracle", "--max-states", "1", &path("drain.net")]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn structure_lists_sets() {
    let o = fcnet(&["structure", &path("drain.net")]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "{p1, p2}\n");
    let o = fcnet(&["structure", "--siphons", &path("drain.net")]);
    assert_eq!(stdout(&o), "{}\n{p1, p2}\n");
    let o = fcnet(&["structure", "--traps", &path("drain.net")]);
    assert_eq!(stdout(&o), "{}\n");
    let o = fcnet(&["structure", "--traps", &path("self_loop.net")]);
    assert_eq!(stdout(&o), "{}\n{p}\n");
}

#[test]
fn graph_output() {
    let o = fcnet(&["graph", &path("drain.net")]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(
        text.starts_with("# 3 states, 3 edges, complete: true\n"),
        "{text}"
    );
    let o = fcnet(&["graph", "--dot", &path("drain.net")]);
    assert!(stdout(&o).starts_with("digraph"));
    let o = fcnet(&["graph", "--max-states", "2", &path("drain.net")]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn gen_output_round_trips_through_check() {
    let args = [
        "gen",
        "--seed",
        "5",
        "--places",
        "6",
        "--clusters",
        "3",
        "--transitions",
        "5",
        "--max-tokens",
        "2",
        "--density",
        "0.2",
    ];
    let first = fcnet(&args);
    assert_eq!(first.status.code(), Some(0));
    assert_eq!(stdout(&first), stdout(&fcnet(&args)));
    assert!(stdout(&first).starts_with("# fcnet gen --seed 5 "));

    let dir = std::env::temp_dir().join(format!("fcnet-gen-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let file = dir.join("g.net");
    std::fs::write(&file, first.stdout).unwrap();
    let checked = fcnet(&["check", file.to_str().unwrap()]);
    assert!(
        matches!(checked.status.code(), Some(0 | 1)),
        "{}",
        stderr(&checked)
    );
    std::fs::remove_dir_all(&dir).unwrap();

    let bad = fcnet(&[
        "gen",
        "--seed",
        "1",
        "--places",
        "2",
        "--clusters",
        "3",
        "--transitions",
        "5",
        "--max-tokens",
        "2",
        "--density",
        "0.2",
    ]);
    assert_eq!(bad.status.code(), Some(2));
}
