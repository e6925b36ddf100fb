use std::process::{Command, Output};

fn bsgeo(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bsgeo"))
        .args(args)
        .env_remove("BSG_NODE_BUDGET")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn geodesic_text_and_json() {
    let out = bsgeo(&["geodesic", "-n", "3", "0", "5", "0"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("a^-1 t a^2 t^-1"), "{text}");

    let out = bsgeo(&["geodesic", "-n", "2", "0", "8", "0", "--format", "json"]);
    let json: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(json["length"], 6);
    assert_eq!(json["element"]["v"], "8");

    let out = bsgeo(&["geodesic", "-n", "2", "0", "0", "0", "--format", "json"]);
    let json: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(json["length"], 0);
    assert_eq!(json["word"], "");
}

#[test]
fn geodesic_accepts_negative_v() {
    let out = bsgeo(&["geodesic", "-n", "3", "1", "-7", "2", "--format", "json"]);
    assert!(out.status.success());
    let json: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(json["element"]["v"], "-7");
}

#[test]
fn spheres_formats() {
    assert_eq!(stdout(&bsgeo(&["spheres", "-n", "2", "-R", "0"])).trim(), "1");
    assert_eq!(stdout(&bsgeo(&["spheres", "-n", "2", "-R", "1"])).trim(), "1 4");
    assert_eq!(
        stdout(&bsgeo(&["spheres", "-n", "2", "-R", "8"])).trim(),
        "1 4 12 26 50 98 184 336 606"
    );
    let csv = stdout(&bsgeo(&["spheres", "-n", "2", "-R", "2", "--format", "csv"]));
    assert_eq!(csv.lines().collect::<Vec<_>>(), ["radius,size", "0,1", "1,4", "2,12"]);
}

#[test]
fn exhausted_budget_exits_3_with_partial_spheres() {
    let out = Command::new(env!("CARGO_BIN_EXE_bsgeo"))
        .args(["spheres", "-n", "2", "-R", "8"])
        .env("BSG_NODE_BUDGET", "50")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
    assert_eq!(stdout(&out).trim(), "1 4 12 26");

    let out = bsgeo(&["--budget", "50", "spheres", "-n", "2", "-R", "8"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn automaton_exports() {
    let dot = stdout(&bsgeo(&["automaton", "-n", "2", "on", "--dot"]));
    assert!(dot.starts_with("digraph"));
    let nodes = ["start", "s_t^-1", "s0,0", "s0,1", "s0,-1", "s1,0", "s2,0"];
    for node in nodes {
        assert!(dot.contains(&format!("\"{node}\"")), "{node} missing from\n{dot}");
    }

    let json: serde_json::Value = serde_json::from_slice(&bsgeo(&["automaton", "-n", "3", "dn", "--json"]).stdout).unwrap();
    assert_eq!(json["states"].as_array().unwrap().len(), 2);

    let json: serde_json::Value =
        serde_json::from_slice(&bsgeo(&["automaton", "-n", "4", "dnprime", "--json"]).stdout).unwrap();
    assert_eq!(json["states"].as_array().unwrap().len(), 3);
}

#[test]
fn automaton_membership_and_counts() {
    assert_eq!(stdout(&bsgeo(&["automaton", "-n", "2", "on", "--accepts", "t^-1 a t"])).trim(), "accepted");
    assert_eq!(stdout(&bsgeo(&["automaton", "-n", "2", "on", "--accepts", "a a"])).trim(), "rejected");
    let counts = stdout(&bsgeo(&["automaton", "-n", "2", "on", "--count", "3"]));
    let counts: Vec<_> = counts.lines().filter(|l| l.starts_with("f(")).collect();
    assert_eq!(counts, ["f(0) = 0", "f(1) = 1", "f(2) = 3", "f(3) = 7"]);
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(bsgeo(&["automaton", "-n", "2", "bogus"]).status.code(), Some(2));
    assert_eq!(bsgeo(&["spheres", "-n", "1", "-R", "2"]).status.code(), Some(2));
    assert_eq!(bsgeo(&["growth"]).status.code(), Some(2));
}

#[test]
fn growth_rates() {
    let json: serde_json::Value = serde_json::from_slice(&bsgeo(&["growth", "-n", "3", "--format", "json"]).stdout).unwrap();
    assert_eq!(json["rate"], 2.0);
    assert_eq!(json["root"], 0.5);
    assert_eq!(json["empirical"]["N"], 40);

    let text = stdout(&bsgeo(&["growth", "-n", "2"]));
    assert!(text.contains("1.69562076955986"), "{text}");

    let csv = stdout(&bsgeo(&["growth", "--table", "2..4", "--format", "csv"]));
    let lines: Vec<_> = csv.lines().collect();
    assert_eq!(lines[0], "n,root,rate");
    assert_eq!(lines[2], "3,0.500000000000000,2.00000000000000");
    assert_eq!(lines.len(), 4);
}

#[test]
fn verify_small_ball_passes() {
    let out = bsgeo(&["verify", "-n", "2", "-R", "6", "--language-len", "6", "--clamp-len", "4"]);
    assert!(out.status.success(), "{}", stdout(&out));
    let text = stdout(&out);
    assert!(text.lines().all(|l| l.starts_with("PASS")), "{text}");
}

#[test]
fn verify_reports_the_n2_shape_map_failures() {
    let out = bsgeo(&[
        "verify", "-n", "2", "-R", "4", "--language-len", "4", "--clamp-len", "3", "--shape-map", "--shape-max-v", "20",
        "--shape-max-uw", "2",
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).lines().any(|l| l.starts_with("FAIL")));
}

#[test]
fn output_flag_writes_a_file() {
    let dir = std::env::temp_dir().join(format!("bsgeo-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("spheres.txt");
    let out = bsgeo(&["-o", path.to_str().unwrap(), "spheres", "-n", "3", "-R", "2"]);
    assert!(out.status.success());
    assert_eq!(std::fs::read_to_string(&path).unwrap().trim(), "1 4 12");
    std::fs::remove_dir_all(&dir).unwrap();
}
