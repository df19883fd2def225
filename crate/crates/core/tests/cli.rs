use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_wblowup"))
        .args(args)
        .env_remove("WBLOWUP_BUDGET")
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("json on stdout")
}

#[test]
fn mld_of_2_3() {
    let out = run(&["mld", "--weights", "2,3"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["mld"], "2/3");
    assert_eq!(v["achieved_at"], serde_json::json!([1, 1]));
}

#[test]
fn mld_with_fixed_point() {
    let out = run(&["mld", "--weights", "1,7", "--cone", "1"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["fixed_point"]["mld"], "2");
}

#[test]
fn check_polarity() {
    let out = run(&["check", "--weights", "1,1000000", "--eps", "1"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["verdict"], "eps-lc");

    let out = run(&["check", "--weights", "2,3", "--eps", "1"]);
    assert_eq!(out.status.code(), Some(1));
    let v = json(&out);
    assert_eq!(v["verdict"], "not-eps-lc");
    assert_eq!(v["psi"], "2/3");
}

#[test]
fn witness_26_27() {
    let out = run(&["witness", "--weights", "26,27", "--eps", "1/2"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["verdict"], "not-eps-lc");
    assert_eq!(v["certificate"]["point"], serde_json::json!([1, 1]));
}

#[test]
fn witness_without_certificate_is_negative() {
    let out = run(&["witness", "--weights", "1,50", "--eps", "1"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["verdict"], "eps-lc");
}

#[test]
fn witness_csv_row() {
    let out = run(&[
        "witness",
        "--weights",
        "5,6,61",
        "--eps",
        "1",
        "--format",
        "csv",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let row = text.lines().nth(1).unwrap();
    assert!(row.starts_with("3,5;6;61,1,not-eps-lc,n3-projection,1;1;7,52/61,"));
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        &["check", "--weights", "2,x", "--eps", "1"][..],
        &["check", "--weights", "3,2", "--eps", "1"],
        &["check", "--weights", "2,3", "--eps", "3/2"],
        &["check", "--weights", "2,3", "--eps", "1/0"],
        &["witness", "--weights", "2,3"],
        &["frobnicate"],
    ] {
        let out = run(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(!out.stderr.is_empty());
    }
}

#[test]
fn budget_exhaustion_exits_3() {
    let out = run(&["mld", "--weights", "1000,1001,1003", "--cap", "10"]);
    assert_eq!(out.status.code(), Some(3));

    let out = run(&[
        "witness",
        "--weights",
        "1,50",
        "--eps",
        "1",
        "--cap",
        "1",
        "--method",
        "enumeration",
    ]);
    assert_eq!(out.status.code(), Some(3));
    assert_eq!(json(&out)["verdict"], "inconclusive");
}

#[test]
fn budget_from_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_wblowup"))
        .args(["mld", "--weights", "1000,1001,1003"])
        .env("WBLOWUP_BUDGET", "10")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn sweep_is_deterministic_and_worker_independent() {
    let base = [
        "sweep",
        "--n",
        "2",
        "--eps",
        "1/2",
        "--a1",
        "20..30",
        "--tail",
        "+40",
        "--no-timing",
    ];
    let one = run(&[&base[..], &["--workers", "1"]].concat());
    let again = run(&[&base[..], &["--workers", "1"]].concat());
    let many = run(&[&base[..], &["--workers", "4"]].concat());
    assert_eq!(one.status.code(), Some(0));
    assert_eq!(one.stdout, again.stdout);
    assert_eq!(one.stdout, many.stdout);
    let text = String::from_utf8(one.stdout).unwrap();
    assert!(
        text.starts_with("n,weights,eps,verdict,method,point,psi,hypothesis_flags,wall_micros\n")
    );
    assert!(text.lines().skip(1).all(|l| l.ends_with(',')));
}

#[test]
fn sweep_eps_one_contains_eps_lc_rows() {
    let out = run(&[
        "sweep",
        "--n",
        "2",
        "--eps",
        "1",
        "--a1",
        "1..9",
        "--tail",
        "+10",
        "--no-timing",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.lines().any(|l| l.starts_with("2,1;5,1,eps-lc,")));
}

#[test]
fn config_file_and_precedence() {
    let dir = std::env::temp_dir().join(format!("wblowup-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let conf = dir.join("sweep.conf");
    std::fs::write(
        &conf,
        "# sweep settings\nn = 2\neps = 1\na1 = 26..27\ntail = +5\nno-timing = true\nformat = json\n",
    )
    .unwrap();
    let conf = conf.to_str().unwrap();

    let from_file = json(&run(&["sweep", "--config", conf]));
    assert_eq!(from_file["eps"], "1");
    assert_eq!(from_file["per_a1"][0]["a1"], 26);

    let overridden = json(&run(&[
        "sweep", "--config", conf, "--eps", "1/2", "--a1", "30..30",
    ]));
    assert_eq!(overridden["eps"], "1/2");
    assert_eq!(overridden["per_a1"].as_array().unwrap().len(), 1);
    assert_eq!(overridden["per_a1"][0]["a1"], 30);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn sweep_out_file() {
    let dir = std::env::temp_dir().join(format!("wblowup-out-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("rows.csv");
    let out = run(&[
        "sweep",
        "--eps",
        "1/2",
        "--a1",
        "26..26",
        "--tail",
        "+3",
        "--no-timing",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    assert_eq!(text.lines().count(), 3);
    assert!(text.contains("2,26;27,1/2,not-eps-lc,n2-case1,1;1,2/27,"));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn verify_example_and_selftest() {
    let out = run(&["verify-example", "--max-n", "300", "--max-n-fixed", "50"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["passed"], true);

    let out = run(&["selftest", "--max-entry", "6"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["passed"], true);
}
