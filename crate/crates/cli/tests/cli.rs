use std::process::{Command, Output};

fn dcoset(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dcoset"))
        .args(args)
        .output()
        .expect("spawn dcoset")
}

fn stdout(args: &[&str]) -> String {
    let out = dcoset(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn rows(table: &str) -> Vec<Vec<String>> {
    table
        .lines()
        .skip(1)
        .map(|l| l.split('\t').map(String::from).collect())
        .collect()
}

#[test]
fn cosets_table() {
    let t = stdout(&["cosets", "--preset", "A2", "-I", "1", "-J", "1"]);
    assert!(t.starts_with("I\tJ\tmin\tmax\tlength\tsize\tleftred\trightred\n"));
    let r = rows(&t);
    assert_eq!(r.len(), 2);
    assert_eq!(r[1][2..6], ["2", "1-2-1", "4", "4"]);

    assert_eq!(rows(&stdout(&["cosets", "--preset", "A2", "-I", "", "-J", "1 2"])).len(), 1);

    let r = rows(&stdout(&["cosets", "--preset", "B2", "-I", "1", "-J", "2"]));
    let total: usize = r.iter().map(|row| row[5].parse::<usize>().unwrap()).sum();
    assert_eq!(total, 8);
}

#[test]
fn hasse_diagrams() {
    let count = |dot: &str| (dot.matches("[label=").count(), dot.matches(" -> ").count());
    assert_eq!(count(&stdout(&["hasse", "--preset", "A2", "-I", "1", "-J", "1"])), (2, 1));
    assert_eq!(count(&stdout(&["hasse", "--preset", "A2"])), (6, 8));
    assert_eq!(count(&stdout(&["hasse", "--preset", "A2", "-J", "1 2"])), (1, 0));
}

#[test]
fn hasse_to_file() {
    let path = std::env::temp_dir().join(format!("dcoset-hasse-{}.dot", std::process::id()));
    let p = path.to_str().unwrap();
    stdout(&["hasse", "--preset", "B2", "-I", "1", "--dot", p]);
    let dot = std::fs::read_to_string(&path).unwrap();
    std::fs::remove_file(&path).unwrap();
    assert!(dot.starts_with("digraph"));
}

#[test]
fn reduced_expression() {
    assert_eq!(stdout(&["rex", "--preset", "A2", "-I", "1", "-J", "1", "--min", "2"]), "[1],[1 2],[1]\n");
}

#[test]
fn paths_and_termini() {
    let out = stdout(&["paths", "--preset", "A2", "--expr", "[],[1],[]"]);
    assert!(out.ends_with("2 paths\n"));
    assert_eq!(out.matches(" forward").count(), 1);
    let t = stdout(&["term", "--preset", "A2", "--expr", "[1],[1 2],[1]"]);
    assert_eq!(rows(&t).len(), 2);
}

#[test]
fn group_summary() {
    let out = stdout(&["group", "--preset", "B3"]);
    assert!(out.contains("size\t48\n"));
    assert_eq!(out.lines().filter(|l| l.starts_with(|c: char| c.is_ascii_digit())).count(), 48);
}

#[test]
fn group_from_file() {
    let path = std::env::temp_dir().join(format!("dcoset-group-{}.txt", std::process::id()));
    std::fs::write(&path, "rank 2\nm 1 2 5\n").unwrap();
    let out = stdout(&["cosets", "--file", path.to_str().unwrap()]);
    std::fs::remove_file(&path).unwrap();
    assert_eq!(rows(&out).len(), 10);
}

#[test]
fn verify_passes() {
    let out = dcoset(&["verify", "--preset", "A2", "--width-cap", "6"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let report = String::from_utf8(out.stdout).unwrap();
    assert!(report.lines().skip(1).all(|l| l.ends_with("\tpass")));
    assert!(String::from_utf8(out.stderr).unwrap().contains("checks passed"));
}

#[test]
fn verify_selected_checks() {
    let out = stdout(&["verify", "--preset", "B2", "--checks", "length-order,lifting"]);
    assert_eq!(out.lines().count(), 3);
    let out = dcoset(&["verify", "--preset", "B2", "--checks", "no-such-check"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8(out.stderr).unwrap().contains("no-such-check"));
}

#[test]
fn bad_input_names_the_token() {
    for (args, token) in [
        (&["cosets", "--preset", "A2", "-I", "7"][..], "7"),
        (&["cosets", "--preset", "A2", "-J", "x"], "x"),
        (&["rex", "--preset", "A2", "--min", "1-9"], "9"),
        (&["paths", "--preset", "A2", "--expr", "[],[1 2]"], "[1 2]"),
        (&["group", "--preset", "Q9"], "Q9"),
    ] {
        let out = dcoset(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        let err = String::from_utf8(out.stderr).unwrap();
        assert!(err.starts_with("error:") && err.contains(token), "{args:?}: {err}");
    }
}

#[test]
fn output_is_byte_deterministic() {
    for args in [
        &["verify", "--preset", "B2"][..],
        &["hasse", "--preset", "A3", "-I", "1", "-J", "3"],
        &["cosets", "--preset", "B3", "-I", "1 2"],
    ] {
        assert_eq!(dcoset(args).stdout, dcoset(args).stdout, "{args:?}");
    }
}
