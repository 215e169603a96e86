use std::process::{Command, Output};

fn spinsplit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_spinsplit"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).expect("json report on stdout")
}

#[test]
fn massive_spin_one_passes() {
    let out = spinsplit(&["verify", "massive", "--spin", "1", "--seed", "42"]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let v = json(&out);
    assert_eq!(v["suite"], "massive");
    assert_eq!(v["seed"], 42);
    assert_eq!(v["verdict"], "pass");
    let checks = v["checks"].as_array().unwrap();
    assert_eq!(checks.len(), 9);
    for c in checks {
        assert!(c["residual"].as_f64().unwrap() < 1e-10, "{c}");
    }
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["verify", "nonsense"][..],
        &["verify", "massive", "--samples", "5"],
        &["verify", "massless", "--helicity", "3"],
        &["verify", "massive", "--spin", "0.5"],
        &["verify", "gauge", "--format", "xml"],
        &["verify", "gauge", "--config", "/nonexistent/cfg.toml"],
        &["frobnicate"],
    ] {
        assert_eq!(spinsplit(args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn negative_helicity_lists_parse() {
    let out = spinsplit(&[
        "verify",
        "massless",
        "--helicity",
        "-1,2",
        "--samples",
        "10",
        "--seed",
        "3",
    ]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let v = json(&out);
    let ids: Vec<&str> = v["checks"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c["id"].as_str().unwrap())
        .collect();
    assert!(ids.contains(&"massless/h=-1/helicity") && ids.contains(&"massless/h=2/helicity"));
    assert!(!ids.iter().any(|i| i.starts_with("massless/h=1/")));
}

#[test]
fn check_failure_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("strict.toml");
    std::fs::write(
        &cfg,
        "helicities = [1]\nsamples = 10\n[tolerances]\nnon-closure = 100.0\n",
    )
    .unwrap();
    let out = spinsplit(&["verify", "splitting", "--config", cfg.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["verdict"], "fail");
    assert!(String::from_utf8_lossy(&out.stderr).contains("nonclosure-perp"));
}

#[test]
fn config_file_is_overridden_by_flags_and_reports_are_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("campaign.toml");
    std::fs::write(&cfg, "spins = [3.0, 2.0]\nseed = 9\nsamples = 20\n").unwrap();
    let (a, b) = (dir.path().join("a.json"), dir.path().join("b.json"));
    for p in [&a, &b] {
        let out = spinsplit(&[
            "verify",
            "massive",
            "--config",
            cfg.to_str().unwrap(),
            "--seed",
            "11",
            "--out",
            p.to_str().unwrap(),
        ]);
        assert_eq!(out.status.code(), Some(0));
        assert!(out.stdout.is_empty());
    }
    let (ta, tb) = (std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    assert_eq!(ta, tb);
    let v: serde_json::Value = serde_json::from_slice(&ta).unwrap();
    assert_eq!(v["seed"], 11);
    assert!(v["checks"]
        .as_array()
        .unwrap()
        .iter()
        .any(|c| c["id"] == "massive/s=3/so3-J"));
}

#[test]
fn markdown_output() {
    let out = spinsplit(&["verify", "gauge", "--format", "md"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("| tag | check | residual | bound | verdict |"));
    assert!(text.contains("| sam-descent | `gauge/sam-descent` |"));
}
