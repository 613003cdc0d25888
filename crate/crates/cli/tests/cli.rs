use std::process::{Command, Output};

use qck_core::json::{self, Report};
use qck_core::relations::{bundle_relations, Mode};
use qck_core::{Basis, JSignature, StructureBundle};

fn qck(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qck"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

const RELATIONS_N3: [&str; 9] = [
    "relations",
    "--dim",
    "3",
    "--j",
    "1,1",
    "--basis",
    "symplectic",
    "--format",
    "json",
];

#[test]
fn relations_json_matches_snapshot() {
    let o = qck(&RELATIONS_N3);
    assert_eq!(code(&o), 0);
    let expected = include_str!("snapshots/relations_n3_symplectic_1_1.json");
    assert_eq!(stdout(&o), expected);
}

#[test]
fn output_is_deterministic() {
    for args in [
        &RELATIONS_N3[..],
        &["pairings", "--dim", "3", "--format", "json"][..],
        &[
            "check",
            "--dim",
            "3",
            "--j",
            "iota,1",
            "--select",
            "contraction",
            "--format",
            "json",
        ][..],
    ] {
        let a = qck(args);
        let b = qck(args);
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}

#[test]
fn relations_round_trip() {
    let o = qck(&RELATIONS_N3);
    let text = stdout(&o);
    let report = Report::from_json(&text).unwrap();
    assert_eq!(report.meta.dim, 3);
    assert_eq!(report.meta.j, "1,1");
    assert_eq!(report.scalars_as, "monomial-list");
    let parsed = json::relations_from_json(&report.relations, 2).unwrap();
    let b = StructureBundle::new(3, Basis::Symplectic).unwrap();
    let direct =
        bundle_relations(&b, &Mode::Specialized(JSignature::parse("1,1").unwrap())).unwrap();
    assert_eq!(parsed, direct);
    assert_eq!(report.to_json() + "\n", text);
}

#[test]
fn contraction_reports_rtilde() {
    let o = qck(&[
        "check",
        "--dim",
        "3",
        "--j",
        "iota,1",
        "--select",
        "contraction",
        "--format",
        "json",
    ]);
    assert_eq!(code(&o), 0);
    let report = Report::from_json(&stdout(&o)).unwrap();
    assert_eq!(report.checks.len(), 1);
    assert_eq!(report.checks[0].name, "contraction");
    assert_eq!(report.checks[0].status, "pass");
    let m = &report.matrices.as_ref().unwrap()[0];
    assert_eq!(m.name, "Rtilde");
    let tilde = json::matrix_from_json(m, 2).unwrap();
    let golden: [(usize, usize, i64); 8] = [
        (1, 1, 1),
        (3, 3, -1),
        (4, 2, 2),
        (5, 3, -2),
        (7, 5, -2),
        (7, 7, -1),
        (8, 6, 2),
        (9, 9, 1),
    ];
    for i in 0..9 {
        for j in 0..9 {
            let want = golden
                .iter()
                .find(|g| g.0 == i + 1 && g.1 == j + 1)
                .map_or(0, |g| g.2);
            let got = tilde
                .get(i, j)
                .as_constant()
                .unwrap_or_else(|| panic!("({i},{j}) not constant"));
            assert_eq!(
                got,
                qck_core::BaseScalar::from_int(want),
                "({},{})",
                i + 1,
                j + 1
            );
        }
    }
    let text = stdout(&qck(&[
        "check",
        "--dim",
        "3",
        "--j",
        "iota,1",
        "--select",
        "contraction",
    ]));
    assert!(text.contains("(4,2) = 2"), "{text}");
}

#[test]
fn pairings_first_value() {
    let o = qck(&["pairings", "--dim", "3", "--j", "iota,iota"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).lines().any(|l| l == "l11(t22) = 1"));
    let o = qck(&[
        "pairings",
        "--dim",
        "3",
        "--j",
        "iota,iota",
        "--format",
        "json",
    ]);
    let report = Report::from_json(&stdout(&o)).unwrap();
    let p = report.pairings.unwrap();
    let hit = p
        .iter()
        .find(|e| e.functional == "l11" && e.generator == "t22")
        .unwrap();
    assert_eq!(
        json::scalar_from_json(&hit.value, 2).unwrap(),
        qck_core::CkScalar::one(2)
    );
}

#[test]
fn text_scalars_use_monomial_form() {
    let text = stdout(&qck(&["pairings", "--dim", "3"]));
    assert!(
        text.lines().any(|l| l == "l11(t11) = 1/2·E^2 + 1/2·E^-2"),
        "{text}"
    );
}

#[test]
fn all_checks_pass_n3() {
    for basis in ["symplectic", "cartesian"] {
        let o = qck(&["check", "--dim", "3", "--basis", basis, "--j", "iota,1"]);
        let out = stdout(&o);
        assert_eq!(code(&o), 0, "{out}");
        for name in [
            "ybe",
            "orthogonality",
            "hopf",
            "contraction",
            "classical-limit",
        ] {
            assert!(out.contains(&format!("{name}: pass")), "{name} in {out}");
        }
    }
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        &["check", "--dim", "2"][..],
        &["check", "--dim", "7"][..],
        &["relations", "--dim", "3", "--j", "1"][..],
        &["relations", "--dim", "3", "--j", "1,x"][..],
        &["relations", "--dim", "3", "--j", "1,1", "--split-j"][..],
        &[
            "check",
            "--dim",
            "3",
            "--j",
            "1,1",
            "--select",
            "contraction",
        ][..],
        &["pairings", "--dim", "3", "--basis", "cartesian"][..],
        &["frobnicate"][..],
        &[][..],
    ] {
        let o = qck(args);
        assert_eq!(code(&o), 2, "{args:?}");
        assert!(o.stdout.is_empty(), "{args:?}");
    }
}

#[test]
fn info_lists_generators_and_algebra() {
    let o = qck(&["info", "--dim", "3", "--j", "iota,1", "--format", "json"]);
    assert_eq!(code(&o), 0);
    let report = Report::from_json(&stdout(&o)).unwrap();
    let info = report.info.unwrap();
    assert_eq!(info["generators"].as_array().unwrap().len(), 9);
    let comm = info["algebra"]["commutators"].as_array().unwrap();
    assert_eq!(comm[0], "[X_{01},X_{02}]=ι₁²X_{12}");
}
