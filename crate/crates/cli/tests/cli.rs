use std::path::Path;
use std::process::{Command, Output};

use adaptquad::io::{read_rule, rule_file_from_json};

const GAUSSIANS: [&str; 4] = ["--fn", "gaussian:10,100,0,0,0", "--fn", "gaussian:100,200,0.81,0.62,0.73"];

fn adaptquad(args: &[&str], out_dir: Option<&Path>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_adaptquad"));
    cmd.args(args).env_remove("ADAPTQUAD_OUT_DIR");
    if let Some(dir) = out_dir {
        cmd.env("ADAPTQUAD_OUT_DIR", dir);
    }
    cmd.output().expect("binary runs")
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

#[test]
fn gaussian_rule_has_8875_points() {
    let dir = tempfile::tempdir().unwrap();
    for (format, ext) in [("csv", "csv"), ("json", "json")] {
        let path = dir.path().join(format!("rule.{ext}"));
        let mut args = vec!["rule", "--cell", "unitcube3", "--tol", "1e-6", "--format", format, "--out"];
        args.push(path.to_str().unwrap());
        args.extend(GAUSSIANS);
        let o = adaptquad(&args, None);
        assert!(o.status.success(), "{}", stderr(&o));
        let rule = read_rule(&path).unwrap();
        assert_eq!(rule.len(), 8875);
        assert!((rule.weight_sum() - 1.0).abs() < 1e-13);
        let text = std::fs::read_to_string(&path).unwrap();
        if format == "csv" {
            assert!(text.starts_with("3,8875\n"));
        } else {
            let file = rule_file_from_json(&text).unwrap();
            assert_eq!((file.count, file.leaf_count, file.tol), (8875, Some(71), Some(1e-6)));
            assert_eq!(file.comparator.as_deref(), Some("ge"));
        }
    }
}

#[test]
fn identical_configs_give_identical_bytes() {
    let dir = tempfile::tempdir().unwrap();
    let runs: Vec<Vec<&str>> = vec![
        [&["rule", "--cell", "unitcube3", "--tol", "1e-5"][..], &GAUSSIANS].concat(),
        [&["integrate", "--cell", "unitcube3", "--tol", "1e-5", "--format", "json"][..], &GAUSSIANS].concat(),
        vec!["converge", "--cell", "sym2", "--fn", "exp_cusp:20", "--m", "2..12:2"],
        vec!["compare", "--cell", "unitsquare", "--fn", "heaviside_family:kinked", "--tols", "1e-3,1e-4", "--ms", "2..20:6"],
    ];
    for args in runs {
        let a = adaptquad(&args, None);
        let b = adaptquad(&args, None);
        assert!(a.status.success(), "{args:?}: {}", stderr(&a));
        assert!(!a.stdout.is_empty());
        assert_eq!(a.stdout, b.stdout, "{args:?}");

        // the same bytes land in the default output directory
        let c = adaptquad(&args, Some(dir.path()));
        assert!(c.status.success() && c.stdout.is_empty());
        let ext = if args.contains(&"json") { "json" } else { "csv" };
        let written = std::fs::read(dir.path().join(format!("{}.{ext}", args[0]))).unwrap();
        assert_eq!(written, a.stdout, "{args:?}");
    }
}

#[test]
fn study_outputs_have_stable_columns() {
    let o = adaptquad(&["converge", "--cell", "sym1", "--fn", "linear_cusp", "--m", "2,4"], None);
    let text = String::from_utf8(o.stdout).unwrap();
    assert_eq!(text.lines().next(), Some("m,total_points,min_dist,abs_error"));
    assert_eq!(text.lines().count(), 3);

    let o = adaptquad(&["compare", "--cell", "sym1", "--fn", "linear_cusp", "--tols", "1e-3", "--ms", "2"], None);
    let text = String::from_utf8(o.stdout).unwrap();
    assert_eq!(text.lines().collect::<Vec<_>>()[0], "strategy,total_points,max_rel_error");
    assert!(text.lines().nth(1).unwrap().starts_with("tensor,2,"));
    assert!(text.lines().nth(2).unwrap().starts_with("adaptive,"));
}

#[test]
fn config_errors_exit_2_with_one_line() {
    let cases: [(&[&str], &str); 5] = [
        (&["rule", "--cell", "unitcube3", "--fn", "linear_cusp"], "error[config/missing] tol:"),
        (&["rule", "--cell", "unitcube3", "--fn", "nope", "--tol", "1e-6"], "error[config/unknown-integrand] fn[0]:"),
        (&["rule", "--cell", "0,0,0;1,0,0;0,1,0", "--fn", "linear_cusp", "--tol", "1e-6"], "error[config/malformed-cell] cell:"),
        (&["rule", "--cell", "unitcube3", "--fn", "linear_cusp", "--tol", "0"], "error[config/nonpositive-tol] tol:"),
        (&["frobnicate"], "error[config/usage]"),
    ];
    for (args, prefix) in cases {
        let o = adaptquad(args, None);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        let err = stderr(&o);
        assert!(err.starts_with(prefix), "{args:?}: {err}");
        assert_eq!(err.lines().count(), 1, "{err}");
    }
}

#[test]
fn numerical_errors_exit_3() {
    let o = adaptquad(
        &["rule", "--cell", "unitsquare", "--fn", "heaviside:straight,1e-9", "--tol", "1e-14", "--max-depth", "4"],
        None,
    );
    assert_eq!(o.status.code(), Some(3));
    assert!(stderr(&o).starts_with("error[numerical] recursion depth 4 exceeded"));
}

#[test]
fn help_and_version_succeed() {
    for flag in ["--help", "--version"] {
        let o = adaptquad(&[flag], None);
        assert!(o.status.success());
        assert!(!o.stdout.is_empty());
    }
}
