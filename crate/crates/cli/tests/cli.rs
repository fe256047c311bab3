use std::process::{Command, Output};

fn fixture(name: &str) -> String {
    format!("{}/../../fixtures/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dimerweb")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn plucker_table_of_c4() {
    let o = run(&["plucker", &fixture("c4.net")]);
    assert!(o.status.success());
    let want = "I\tDelta\n1,2\tb\n1,3\t1\n1,4\tc\n2,3\ta\n2,4\ta*c + b*d\n3,4\td\n";
    assert_eq!(stdout(&o), want);
}

#[test]
fn webs_of_c4_has_fifty_rows() {
    let o = run(&["webs", &fixture("c4.net")]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert_eq!(text.lines().count(), 51);
    assert!(text.contains("web n=4; arc 2>1; arc 4>3\ta*c\n"));
}

#[test]
fn verify_all_on_c4_succeeds() {
    let o = run(&["verify", "--suite", "all", &fixture("c4.net")]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).lines().skip(1).all(|l| l.split('\t').nth(1) == Some("pass")));
}

#[test]
fn output_is_byte_stable() {
    for args in [vec!["tl", "c4.net"], vec!["webs", "c4.net"], vec!["--seed", "5", "verify", "--suite", "confluence", "grid33.net"]] {
        let mut args: Vec<String> = args.iter().map(|s| s.to_string()).collect();
        let last = args.pop().unwrap();
        args.push(fixture(&last));
        let refs: Vec<&str> = args.iter().map(String::as_str).collect();
        assert_eq!(run(&refs).stdout, run(&refs).stdout);
    }
}

#[test]
fn input_errors_exit_two() {
    assert_eq!(run(&["plucker", "no/such/file.net"]).status.code(), Some(2));
    let bad = std::env::temp_dir().join("dimerweb-bad.net");
    std::fs::write(&bad, "network x\nn 2\nedge e b1 b2 1\nend\n").unwrap();
    assert_eq!(run(&["plucker", bad.to_str().unwrap()]).status.code(), Some(2));
    assert_eq!(run(&["plucker", "--frobnicate", &fixture("c4.net")]).status.code(), Some(2));
    assert_eq!(run(&["--weights", "a=x", "plucker", &fixture("c4.net")]).status.code(), Some(2));
}

#[test]
fn weights_and_json() {
    let o = run(&["--json", "--weights", "a=2,b=1/3,c=1,d=1", "plucker", &fixture("c4.net")]);
    assert!(o.status.success());
    let rows: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(rows[4]["I"], "2,4");
    assert_eq!(rows[4]["Delta"], "7/3");
}

#[test]
fn move_script_reports_scalars() {
    let dir = std::env::temp_dir();
    let script = dir.join("dimerweb-moves.txt");
    let out = dir.join("dimerweb-moved.net");
    std::fs::write(&script, "# square move then a gauge\nsquare B B1 s\ngauge W 2\n").unwrap();
    let o = run(&["move", &fixture("c4.net"), script.to_str().unwrap(), "--out", out.to_str().unwrap()]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.contains("1\tsquare B B1 s\ta*c + b*d\tpass"), "{text}");
    assert!(text.contains("2\tgauge W 2\t(1)/(2)\tpass"), "{text}");
    let moved = run(&["count", out.to_str().unwrap()]);
    assert!(stdout(&moved).contains("D\t50"));
}

#[test]
fn reduce_square() {
    let o = run(&["reduce", "web n=4; b v1(1,v2,v4); w v2(2,v3,v1); b v3(3,v4,v2); w v4(4,v1,v3)"]);
    assert_eq!(stdout(&o), "coefficient\tweb\n1\tweb n=4; arc 2>1; arc 4>3\n1\tweb n=4; arc 2>3; arc 4>1\n");
}
