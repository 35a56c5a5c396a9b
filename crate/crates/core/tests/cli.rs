use std::process::{Command, Output};

fn orbitope(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_orbitope"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn parse(o: &Output) -> toml::Table {
    stdout(o).parse().expect("report is TOML")
}

fn without_wall_time(s: &str) -> String {
    s.lines().filter(|l| !l.starts_with("wall_time")).collect::<Vec<_>>().join("\n")
}

#[test]
fn identities_report() {
    let o = orbitope(&["identities", "--k", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let r = parse(&o);
    assert_eq!(r["status"].as_str(), Some("pass"));
    let out = r["outcome"].as_table().unwrap();
    assert_eq!(out["instances_sum2"].as_integer(), Some(2));
    assert_eq!(out["instances_sum"].as_integer(), Some(4));
    assert_eq!(out["instances_prodsum"].as_integer(), Some(6));
    assert!(out["max_residual"].as_float().unwrap() < 1e-15);
    let rows = r["tables"]["residuals"]["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 12);
}

#[test]
fn bad_k_is_usage_error_with_report() {
    let o = orbitope(&["identities", "--k", "1"]);
    assert_eq!(o.status.code(), Some(2));
    let r = parse(&o);
    assert_eq!(r["status"].as_str(), Some("fail"));
    assert!(r["outcome"]["error"].as_str().unwrap().contains("k must be at least 2"));
}

#[test]
fn unparseable_arguments_are_usage_errors() {
    assert_eq!(orbitope(&["edge", "--k", "2", "--alpha", "zero", "--beta", "1"]).status.code(), Some(2));
    assert_eq!(orbitope(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(orbitope(&["membership", "--k", "2", "--point", "1,2,3"]).status.code(), Some(2));
}

#[test]
fn failed_check_exits_one() {
    // A tolerance below rounding makes the identity check fail.
    let o = orbitope(&["identities", "--k", "6", "--tol", "1e-30"]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(parse(&o)["status"].as_str(), Some("fail"));
}

#[test]
fn reports_are_deterministic() {
    for args in [
        &["roots", "--k", "4"][..],
        &["edge", "--k", "3", "--alpha", "0.3", "--beta", "3.0", "--samples", "2000"][..],
        &["threshold", "--k", "2", "--samples", "2000"][..],
    ] {
        let a = stdout(&orbitope(args));
        let b = stdout(&orbitope(args));
        assert_eq!(without_wall_time(&a), without_wall_time(&b), "{args:?}");
    }
}

#[test]
fn documented_subcommand_examples() {
    let r = parse(&orbitope(&["roots", "--k", "3"]));
    let roots: Vec<(i64, String)> = r["tables"]["roots"]["rows"]
        .as_array()
        .unwrap()
        .iter()
        .map(|row| (row[0].as_integer().unwrap(), row[1].as_str().unwrap().to_string()))
        .collect();
    let j2: Vec<&str> = roots.iter().filter(|(j, _)| *j == 2).map(|(_, s)| s.as_str()).collect();
    assert_eq!(j2, ["2*pi/5", "pi/2", "3*pi/5"]);

    let r = parse(&orbitope(&["witness", "--k", "5"]));
    let w: Vec<f64> = r["tables"]["weights"]["rows"]
        .as_array()
        .unwrap()
        .iter()
        .map(|row| row[2].as_float().unwrap())
        .collect();
    assert_eq!(w.len(), 5);
    assert!((w[0] - 1.0 / 9.0).abs() < 1e-15 && w[1..].iter().all(|v| (v - 2.0 / 9.0).abs() < 1e-15));

    let o = orbitope(&["tangent-cone", "--k", "4"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(parse(&o)["outcome"]["t0"].as_str(), Some("4*pi/7"));

    let r = parse(&orbitope(&["edge", "--k", "2", "--alpha", "0", "--beta", "2.2"]));
    assert_eq!(r["outcome"]["verdict"].as_str(), Some("NotEdge"));

    let r = parse(&orbitope(&["edge", "--k", "2", "--alpha", "-pi/3", "--beta", "pi/3"]));
    assert_eq!(r["outcome"]["verdict"].as_str(), Some("NearThreshold"));

    let r = parse(&orbitope(&["membership", "--k", "2", "--theta", "1.0"]));
    assert_eq!(r["outcome"]["verdict"].as_str(), Some("Member"));
    assert!(r["outcome"]["min_eigenvalue"].as_float().unwrap().abs() < 1e-8);

    let r = parse(&orbitope(&["membership", "--k", "2", "--point", "0,0,0,0"]));
    assert_eq!(r["outcome"]["verdict"].as_str(), Some("Member"));
    assert_eq!(r["outcome"]["min_eigenvalue"].as_float(), Some(1.0));

    let o = orbitope(&["threshold", "--k", "3", "--samples", "4000", "--resolution", "1e-3"]);
    assert_eq!(o.status.code(), Some(0));
    let dev = parse(&o)["outcome"]["deviation"].as_float().unwrap();
    assert!(dev < 5e-3);
}

#[test]
fn plot_data_files() {
    let dir = tempfile::tempdir().unwrap();
    let path = |n: &str| dir.path().join(n).to_str().unwrap().to_string();

    let f = path("f.csv");
    let o = orbitope(&["plot-data", "--kind", "f-graphs", "--k", "3", "--out", &f]);
    assert_eq!(o.status.code(), Some(0));
    let csv = std::fs::read_to_string(&f).unwrap();
    assert_eq!(csv.lines().next(), Some("theta,f_0,f_1,f_2"));
    assert_eq!(csv.lines().count(), 2001);
    let second = csv.lines().nth(2).unwrap();
    let digits: String = second.split(',').next().unwrap().chars().take_while(|c| *c != 'e').filter(char::is_ascii_digit).collect();
    assert_eq!(digits.len(), 17);

    let c = path("c.csv");
    assert_eq!(orbitope(&["plot-data", "--kind", "curve", "--k", "3", "--out", &c]).status.code(), Some(0));
    assert_eq!(std::fs::read_to_string(&c).unwrap().lines().next(), Some("theta,x1,x2,x3"));

    let p = path("p.csv");
    assert_eq!(orbitope(&["plot-data", "--kind", "facet-projection", "--k", "3", "--out", &p]).status.code(), Some(0));
    let csv = std::fs::read_to_string(&p).unwrap();
    assert_eq!(csv.lines().next(), Some("section,index,theta,x1,x2"));
    assert_eq!(csv.lines().filter(|l| l.starts_with("P,")).count(), 3);

    let s = path("s.csv");
    let o = orbitope(&["plot-data", "--kind", "threshold-sweep", "--k", "2", "--samples", "1000", "--out", &s]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(parse(&o)["outcome"]["transitions"].as_integer(), Some(1));

    let o = orbitope(&["plot-data", "--kind", "curve", "--k", "3", "--out", "/nonexistent/dir/x.csv"]);
    assert_eq!(o.status.code(), Some(2));
    let o = orbitope(&["plot-data", "--kind", "curve", "--k", "3"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn out_flag_writes_report() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("report.toml");
    let o = orbitope(&["facets", "--k", "4", "--out", p.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(std::fs::read_to_string(&p).unwrap(), stdout(&o));
}
