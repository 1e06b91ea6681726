use std::path::PathBuf;
use std::process::Command;

use serde_json::Value;
use toric_degen::cli::{run, Outcome, EXIT_FAIL, EXIT_INPUT, EXIT_PASS};

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("data")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

fn toricdeg(args: &[&str]) -> Outcome {
    run(std::iter::once("toricdeg").chain(args.iter().copied()))
}

fn report(out: &Outcome) -> Value {
    let v: Value =
        serde_json::from_str(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", out.stdout));
    v["report"].clone()
}

#[test]
fn exit_codes_on_the_valid_corpus() {
    let cases: &[(&[&str], &str, i32)] = &[
        (&["cone", "dual"], "first_orthant.json", EXIT_PASS),
        (&["cone", "dual"], "half_cone.json", EXIT_PASS),
        (&["monoid", "classify"], "conifold.json", EXIT_PASS),
        (&["monoid", "hilbert"], "conifold.json", EXIT_PASS),
        (&["monoid", "classify"], "cusp.json", EXIT_FAIL),
        (&["kn", "describe"], "affine_line.json", EXIT_PASS),
        (&["kn", "describe"], "projective_line.json", EXIT_PASS),
        (&["complex", "validate"], "focus_focus.json", EXIT_PASS),
        (&["complex", "simple-check"], "focus_focus.json", EXIT_PASS),
        (&["complex", "simple-check"], "tetrahedron.json", EXIT_FAIL),
        (&["complex", "mpl-check"], "tetrahedron.json", EXIT_PASS),
        (&["complex", "positive"], "flat_torus.json", EXIT_PASS),
        (&["complex", "monodromy"], "tetrahedron.json", EXIT_PASS),
        (&["gluing", "check"], "gluing_trivial.json", EXIT_PASS),
        (&["gluing", "trivialize"], "gluing_trivial.json", EXIT_PASS),
        (&["gluing", "check"], "gluing_twisted.json", EXIT_FAIL),
        (&["gluing", "trivialize"], "gluing_twisted.json", EXIT_FAIL),
    ];
    for (cmd, file, code) in cases {
        let path = data(file);
        let mut args = cmd.to_vec();
        args.extend(["--in", path.as_str()]);
        let out = toricdeg(&args);
        assert_eq!(
            out.code, *code,
            "{cmd:?} {file}: {}{}",
            out.stdout, out.stderr
        );
        let v: Value = serde_json::from_str(&out.stdout).unwrap();
        let verdict = if *code == EXIT_PASS { "pass" } else { "fail" };
        assert_eq!(v["verdict"], verdict);
        assert_eq!(v["command"], cmd.join(" "));
    }
}

#[test]
fn invalid_inputs_exit_with_locations() {
    let cases: &[(&[&str], &str, &str)] = &[
        (&["cone", "dual"], "invalid/truncated.json", "line"),
        (&["cone", "dual"], "invalid/bad_ray.json", "rays[0][1]"),
        (&["monoid", "classify"], "invalid/missing_gens.json", "gens"),
        (
            &["complex", "validate"],
            "invalid/unknown_builtin.json",
            "klein-bottle",
        ),
        (&["cone", "dual"], "no_such_file.json", "no_such_file"),
    ];
    for (cmd, file, needle) in cases {
        let path = data(file);
        let mut args = cmd.to_vec();
        args.extend(["--in", path.as_str()]);
        let out = toricdeg(&args);
        assert_eq!(out.code, EXIT_INPUT, "{file}");
        assert!(out.stdout.is_empty());
        assert!(out.stderr.contains(needle), "{file}: {}", out.stderr);
    }
    assert_eq!(toricdeg(&["cone", "flip"]).code, EXIT_INPUT);
}

#[test]
fn documented_invocations() {
    let out = toricdeg(&["k3", "run", "--json", "-"]);
    assert_eq!(out.code, EXIT_PASS, "{}", out.stderr);
    assert_eq!(report(&out)["discriminant_count"], 24);

    let out = toricdeg(&["cone", "dual", "--in", &data("first_orthant.json")]);
    assert_eq!(report(&out)["self_dual"], true);

    let out = toricdeg(&["complex", "simple-check", "--in", &data("focus_focus.json")]);
    assert_eq!(report(&out)["simple"], true);

    let out = toricdeg(&["kn", "describe", "--in", &data("projective_line.json")]);
    let r = report(&out);
    assert_eq!(r["torus_rank"], 1);
    let mut ranks: Vec<i64> = r["fibers"]
        .as_array()
        .unwrap()
        .iter()
        .map(|f| f["rank"].as_i64().unwrap())
        .collect();
    ranks.sort();
    assert_eq!(ranks, [0, 1, 1]);
}

#[test]
fn canonical_output_is_deterministic() {
    for args in [
        vec!["--canonical", "k3", "run", "--json", "-"],
        vec!["--canonical", "complex", "monodromy", "--in", "FF"],
        vec!["--canonical", "monoid", "hilbert", "--in", "CONI"],
    ] {
        let (ff, coni) = (data("focus_focus.json"), data("conifold.json"));
        let args: Vec<&str> = args
            .iter()
            .map(|a| match *a {
                "FF" => ff.as_str(),
                "CONI" => coni.as_str(),
                a => a,
            })
            .collect();
        let a = toricdeg(&args);
        let b = toricdeg(&args);
        assert_eq!(a.stdout, b.stdout);
        assert!(!a.stdout.contains("timing_ms"));
    }
}

#[test]
fn k3_csv_is_quoted_and_complete() {
    let dir = tempfile::tempdir().unwrap();
    let csv_path = dir.path().join("points.csv");
    let json_path = dir.path().join("out.json");
    let out = toricdeg(&[
        "k3",
        "run",
        "--csv",
        csv_path.to_str().unwrap(),
        "--json",
        json_path.to_str().unwrap(),
    ]);
    assert_eq!(out.code, EXIT_PASS, "{}", out.stderr);
    let mut rdr = csv::Reader::from_path(&csv_path).unwrap();
    assert_eq!(
        rdr.headers().unwrap().iter().collect::<Vec<_>>(),
        ["edge", "root", "momentum", "charge", "fiber_class"]
    );
    let rows: Vec<csv::StringRecord> = rdr.records().map(Result::unwrap).collect();
    assert_eq!(rows.len(), 24);
    assert!(rows
        .iter()
        .all(|r| &r[4] == "nodal-elliptic" && &r[3] == "1"));
    let written: Value =
        serde_json::from_str(&std::fs::read_to_string(&json_path).unwrap()).unwrap();
    assert_eq!(written["report"]["discriminant_count"], 24);
}

#[test]
fn binary_matches_library_entry_point() {
    let path = data("conifold.json");
    let out = Command::new(env!("CARGO_BIN_EXE_toricdeg"))
        .args(["--canonical", "monoid", "classify", "--in", &path])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(EXIT_PASS));
    let lib = toricdeg(&["--canonical", "monoid", "classify", "--in", &path]);
    assert_eq!(String::from_utf8(out.stdout).unwrap(), lib.stdout);

    let bad = Command::new(env!("CARGO_BIN_EXE_toricdeg"))
        .args(["cone", "dual", "--in", &data("invalid/truncated.json")])
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(EXIT_INPUT));
}
