use curve_witt::cli::{format_form, parse_form, run_command, EXIT_FALSE, EXIT_OK, EXIT_USAGE};
use curve_witt::{make_config, DiagonalForm, Generator, ShapeTag, UnitSquareClass};
use serde_json::Value;

fn run(args: &[&str]) -> curve_witt::cli::CommandOutput {
    let mut argv = vec!["curve-witt"];
    argv.extend_from_slice(args);
    run_command(argv)
}

fn json(args: &[&str]) -> Value {
    let mut full = args.to_vec();
    full.extend(["--format", "json"]);
    let out = run(&full);
    serde_json::from_str(&out.stdout).unwrap_or_else(|e| panic!("{e}: {:?}", out))
}

#[test]
fn equal_relation_for_every_unit_pair() {
    for u in ["1", "s"] {
        for v in ["1", "s"] {
            let lhs = format!("<{u}*L1,{v}*L1>");
            let rhs = format!("<1,{u}*{v}>");
            let out = run(&["equal", &lhs, &rhs]);
            assert_eq!(out.code, EXIT_OK, "{lhs} vs {rhs}");
            assert_eq!(out.stdout.trim(), "true");
        }
    }
    let out = run(&["equal", "<1>", "<s>"]);
    assert_eq!(out.code, EXIT_FALSE);
    assert_eq!(out.stdout.trim(), "false");
}

#[test]
fn enumerate_json_census() {
    let v = json(&["enumerate", "--picard-rank", "1", "--q-mod-4", "3"]);
    assert_eq!(v["total"], 64);
    assert_eq!(v["nontrivial"], 63);
    let shapes = v["shapes"].as_array().unwrap();
    let counts: Vec<u64> = shapes.iter().map(|s| s["count"].as_u64().unwrap()).collect();
    assert_eq!(counts, vec![4, 4, 3, 16, 3, 12, 12, 9]);
    let names: Vec<&str> = shapes.iter().map(|s| s["shape"].as_str().unwrap()).collect();
    let listed: Vec<&str> = ShapeTag::LISTED.iter().map(|t| t.template()).collect();
    assert_eq!(names, listed);
    for s in shapes {
        let mut keys: Vec<&String> = s.as_object().unwrap().keys().collect();
        keys.sort();
        assert_eq!(keys, vec!["count", "shape"]);
    }
}

#[test]
fn enumerate_rejects_large_rank() {
    let out = run(&["enumerate", "--picard-rank", "5"]);
    assert_eq!(out.code, EXIT_USAGE);
    assert!(out.stderr.contains("bound"));
}

#[test]
fn reduce_outputs() {
    let out = run(&["reduce", "<1,-1>"]);
    assert_eq!(out.code, EXIT_OK);
    assert!(out.stdout.contains("ZERO"));
    let v = json(&["reduce", "<s,s>", "--q-mod-4", "3"]);
    assert_eq!(v["shape"], "<1,sL>");
    assert_eq!(v["payload"], "<1,1>");
    let out = run(&["reduce", "<s,s>", "--format", "csv"]);
    assert_eq!(out.stdout, "shape,payload\n\"<1,sL>\",\"<1,1>\"\n");
}

#[test]
fn invariants_schema() {
    let v = json(&["invariants", "<1,-s*L1,-pi,s*pi*L1>"]);
    assert_eq!(v["rank_parity"], 0);
    assert_eq!(v["signed_disc"], "1");
    assert_eq!(v["witt_inv"], "(s*L1,pi)");

    let v = json(&["invariants", "<s*L1>", "--q-mod-4", "3"]);
    assert_eq!(v["rank_parity"], 1);
    assert_eq!(v["signed_disc"], "L1");
    assert!(v.get("witt_inv").is_none());
    let mut keys: Vec<&String> = v.as_object().unwrap().keys().collect();
    keys.sort();
    assert_eq!(keys, vec!["rank_parity", "signed_disc"]);
}

#[test]
fn verify_passes_and_reports() {
    for r in ["0", "1"] {
        for q in ["1", "3"] {
            let out = run(&["verify", "--picard-rank", r, "--q-mod-4", q]);
            assert_eq!(out.code, EXIT_OK, "{}", out.stdout);
            assert!(out.stdout.contains("all checks passed"));
        }
    }
    let v = json(&["verify", "--picard-rank", "3"]);
    assert_eq!(v["passed"], true);
    let statuses: Vec<(&str, &str)> = v["checks"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| (c["name"].as_str().unwrap(), c["status"].as_str().unwrap()))
        .collect();
    assert!(statuses.contains(&("ring_isomorphism", "skipped")));
    assert!(statuses.contains(&("quaternion_distinctness", "pass")));
}

#[test]
fn usage_errors_exit_two() {
    let cases: &[&[&str]] = &[
        &[],
        &["frobnicate"],
        &["equal", "<1>"],
        &["reduce", "<1,"],
        &["reduce", "<L3>"],
        &["reduce", "<1>", "--q-mod-4", "2"],
        &["reduce", "<1>", "--picard-rank", "-1"],
        &["reduce", "<1>", "--format", "xml"],
    ];
    for args in cases {
        let out = run(args);
        assert_eq!(out.code, EXIT_USAGE, "{args:?}: {out:?}");
        assert!(!out.stderr.is_empty());
        assert!(out.stdout.is_empty());
    }
    let out = run(&["reduce", "<L3>"]);
    assert!(out.stderr.contains("unknown bundle label"));
    let out = run(&["reduce", "<1>", "--q-mod-4", "2"]);
    assert!(out.stderr.contains("dyadic or invalid residue class"));
    assert_eq!(run(&["--help"]).code, EXIT_OK);
}

#[test]
fn out_flag_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("census.json");
    let out = run(&["enumerate", "--format", "json", "--out", path.to_str().unwrap()]);
    assert_eq!(out.code, EXIT_OK);
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["total"], 64);
}

#[test]
fn round_trip_golden_corpus() {
    let cfg = make_config(3, 2).unwrap();
    let mut corpus: Vec<String> = [
        "<>",
        "<1>",
        "<-1>",
        "<1,-s*L1,-pi,s*pi*L1>",
        "<s*L1*L2,-pi*L2,pi*pi>",
        "⟨s, pi⟩",
        "< 1 , s * L2 >",
    ]
    .iter()
    .map(|s| s.to_string())
    .collect();
    let x = Generator::residue(UnitSquareClass::S, curve_witt::PicTorsionClass::basis(1));
    let y = Generator::residue(UnitSquareClass::ONE, curve_witt::PicTorsionClass::basis(2));
    for tag in ShapeTag::LISTED {
        let form = DiagonalForm::new(cfg, tag.instantiate(x, y)).unwrap();
        corpus.push(format_form(&form));
    }
    for text in corpus {
        let parsed = parse_form(&text, &cfg).unwrap();
        let printed = format_form(&parsed);
        assert!(printed.is_ascii());
        assert!(!printed.contains('-'));
        assert_eq!(parse_form(&printed, &cfg).unwrap(), parsed, "{text}");
    }
}
