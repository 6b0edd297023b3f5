use std::process::Command;

use clap::Parser;
use tamesc::config::{self, InstanceSpec};
use tamesc::{execute, Cli, Report, Verdict};

fn tamesc(args: &[&str]) -> (i32, String, String) {
    tamesc_env(args, &[])
}

fn tamesc_env(args: &[&str], env: &[(&str, &str)]) -> (i32, String, String) {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_tamesc"));
    cmd.args(args).env_remove("TAMESC_BUDGET");
    for (k, v) in env {
        cmd.env(k, v);
    }
    let out = cmd.output().expect("binary runs");
    (
        out.status.code().expect("exit code"),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn json(args: &[&str]) -> (i32, Report) {
    let mut all = args.to_vec();
    all.push("--json");
    let (code, out, err) = tamesc(&all);
    let report = Report::from_json(&out).unwrap_or_else(|e| panic!("{e}: {out} {err}"));
    (code, report)
}

#[test]
fn brute_dimensions() {
    for (args, dim) in [
        (["--p", "3", "--n", "2", "--e", "1", "--f", "2", "--r", "2"], 6),
        (["--p", "3", "--n", "2", "--e", "1", "--f", "2", "--r", "3"], 18),
        (["--p", "3", "--n", "2", "--e", "2", "--f", "1", "--r", "4"], 36),
    ] {
        let mut all = vec!["brute"];
        all.extend(args);
        let (code, report) = json(&all);
        let inst = &report.instances[0];
        assert_eq!(code, 0, "{inst:?}");
        assert_eq!(inst.dim_delta_brute, Some(dim));
        assert_eq!(inst.dim_delta_formula, Some(dim.to_string()));
        assert_eq!(inst.irreducible, Some(true));
        assert_eq!(inst.norm.as_deref(), Some("1"));
        assert_eq!(inst.verdict, Verdict::Pass);
    }
}

#[test]
fn verify_ramified_instance() {
    let (code, report) = json(&["verify", "--p", "3", "--n", "2", "--e", "2", "--f", "1", "--r", "4"]);
    assert_eq!(code, 0);
    let inst = &report.instances[0];
    assert_eq!(inst.thm3_lhs.as_deref(), Some("18"));
    assert_eq!(inst.thm3_rhs.as_deref(), Some("18"));
    assert_eq!(inst.thm2.as_deref(), Some("18"));
    assert_eq!(inst.norm_index_ring, Some(2));
    assert_eq!(inst.norm_index_galois, Some(2));
    assert_eq!(inst.a_phi, Some(2));
    assert_eq!(inst.conductor.as_ref().unwrap().total, "8");
}

#[test]
fn verify_symbolic_shows_formulas() {
    let (code, report) = json(&["verify", "--n", "2", "--e", "2", "--f", "1", "--r", "4", "--m", "1"]);
    assert_eq!(code, 0);
    let inst = &report.instances[0];
    assert_eq!(inst.q, "q");
    assert!(inst.thm3_lhs.as_ref().unwrap().contains('q'));
    assert_eq!(inst.norm_index_ring, None);
}

#[test]
fn json_field_names_are_stable() {
    let (_, out, _) = tamesc(&["verify", "--p", "5", "--n", "2", "--r", "2", "--json"]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    let inst = &v["instances"][0];
    for key in [
        "dim_delta_formula",
        "dim_delta_brute",
        "norm_index_ring",
        "norm_index_galois",
        "a_phi",
        "conductor",
        "thm2",
        "thm3_lhs",
        "thm3_rhs",
        "verdict",
        "notes",
    ] {
        assert!(inst.get(key).is_some(), "missing {key}");
    }
    assert_eq!(inst["verdict"], "pass");
}

#[test]
fn invalid_input_exits_2() {
    for args in [
        vec!["verify", "--p", "3", "--n", "3", "--e", "1", "--f", "3", "--r", "2"],
        vec!["verify", "--p", "9", "--n", "2", "--r", "2"],
        vec!["verify", "--p", "5", "--n", "2"],
        vec!["verify", "--p", "5", "--n", "4", "--e", "3", "--r", "6"],
        vec!["verify", "--p", "5", "--n", "2", "--e", "2", "--f", "1", "--r", "4", "--m", "2"],
        vec!["verify", "--p", "5", "--n", "3", "--e", "3", "--f", "1", "--r", "6"],
        vec!["brute", "--n", "2", "--r", "2"],
        vec!["factors", "--n", "6", "--e", "4", "--f", "1", "--r", "8"],
    ] {
        let (code, out, err) = tamesc(&args);
        assert_eq!(code, 2, "{args:?}: {out}");
        assert!(!err.is_empty(), "{args:?}");
    }
    let (code, _, err) = tamesc(&["verify", "--p", "3", "--n", "3", "--e", "1", "--f", "3", "--r", "2"]);
    assert_eq!(code, 2);
    assert!(err.contains("divides n"), "{err}");
}

#[test]
fn budget_exceeded_exits_3() {
    let (code, out, _) = tamesc_env(&["brute", "--p", "3", "--n", "2", "--r", "3", "--json"], &[("TAMESC_BUDGET", "1000")]);
    assert_eq!(code, 3);
    let report = Report::from_json(&out).unwrap();
    assert_eq!(report.instances[0].verdict, Verdict::BudgetExceeded);
    assert!(report.instances[0].notes[0].contains("budget"));
    let (code, _, _) = tamesc(&["brute", "--p", "5", "--n", "3", "--r", "3", "--budget", "5000"]);
    assert_eq!(code, 3);
}

#[test]
fn conductor_and_factors() {
    let (code, report) = json(&["conductor", "--n", "2", "--e", "2", "--f", "1", "--r", "4"]);
    assert_eq!(code, 0);
    let c = report.instances[0].conductor.as_ref().unwrap();
    assert_eq!(c.total, "8");
    assert_eq!(c.bands.iter().map(|b| b.dim_fixed).collect::<Vec<_>>(), vec![0, 1, 3]);
    assert_eq!(c.bands[1].weight, "5/2");

    let (code, report) = json(&["factors", "--n", "2", "--e", "1", "--f", "2", "--r", "2", "--q", "3"]);
    assert_eq!(code, 0);
    let f = report.instances[0].factors.as_ref().unwrap();
    assert_eq!(f.gamma, "27/2");
    assert_eq!(f.l_at_0, "1/2");
    assert_eq!(f.l_at_1, "3/4");
    assert_eq!(f.conductor.as_deref(), Some("4"));

    let (code, report) = json(&["factors", "--n", "2", "--principal", "--q", "3"]);
    assert_eq!(code, 0);
    let f = report.instances[0].factors.as_ref().unwrap();
    assert_eq!(f.gamma, "9/4");
    assert_eq!(f.frobenius_weights, vec![-1]);
}

#[test]
fn sweep_passes() {
    let (code, report) = json(&["sweep", "--n-max", "4", "--r-extra", "1"]);
    assert_eq!(code, 0);
    assert!(report.instances.len() > 10);
    assert!(report.instances.iter().all(|i| i.verdict == Verdict::Pass));
    let (code, again) = json(&["verify", "--sweep", "--n-max", "4", "--r-extra", "1", "--symbolic"]);
    assert_eq!(code, 0);
    assert_eq!(again.instances.len(), report.instances.len());
}

#[test]
fn config_file_with_overrides() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("instances.toml");
    std::fs::write(
        &cfg,
        "[unramified]\np = 3\nn = 2\ne = 1\nf = 2\nr = 2\n\n[ramified]\np = 3\nn = 2\ne = 2\nf = 1\nr = 4\n",
    )
    .unwrap();
    let out = dir.path().join("report.json");
    let (code, _, _) = tamesc(&["verify", "--config", cfg.to_str().unwrap(), "--json", "--out", out.to_str().unwrap()]);
    assert_eq!(code, 0);
    let report = Report::from_json(&std::fs::read_to_string(&out).unwrap()).unwrap();
    let ids: Vec<&str> = report.instances.iter().map(|i| i.id.as_str()).collect();
    assert_eq!(ids, ["ramified", "unramified"]);
    assert_eq!(report.instances[1].thm3_lhs.as_deref(), Some("3"));

    let (_, report) = json(&["verify", "--config", cfg.to_str().unwrap(), "--r", "6"]);
    assert!(report.instances.iter().all(|i| i.params.as_ref().unwrap().r == 6));

    std::fs::write(&cfg, "[bad]\np = 3\nn = 2\nlevel = 2\n").unwrap();
    let (code, _, err) = tamesc(&["verify", "--config", cfg.to_str().unwrap()]);
    assert_eq!(code, 2, "{err}");
}

#[test]
fn config_parse_and_override() {
    let parsed = config::parse("[a]\nn = 4\ne = 2\nr = 4\n").unwrap();
    let a = &parsed["a"];
    assert_eq!(a.degrees().unwrap(), (4, 2, 2));
    let flags = InstanceSpec { r: Some(5), ..Default::default() };
    let merged = a.overridden_by(&flags);
    assert_eq!(merged.r, Some(5));
    assert_eq!(merged.n, Some(4));
    assert!(merged.is_symbolic());
}

#[test]
fn report_round_trips() {
    for args in [
        vec!["tamesc", "verify", "--p", "3", "--n", "2", "--e", "2", "--f", "1", "--r", "4"],
        vec!["tamesc", "brute", "--p", "3", "--n", "2", "--r", "2"],
        vec!["tamesc", "factors", "--n", "3", "--principal"],
        vec!["tamesc", "conductor", "--n", "3", "--e", "3", "--r", "6", "--m", "1"],
    ] {
        let outcome = execute(&Cli::parse_from(&args)).unwrap();
        let text = outcome.report.to_json();
        assert_eq!(Report::from_json(&text).unwrap(), outcome.report, "{args:?}");
        assert_eq!(outcome.exit_code, 0);
    }
}
