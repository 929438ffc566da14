use copos::scalar::ratio;
use copos::{ExactOp, LinOp, Rational, SymMatrix};
use copos_cli::commands::{self, CheckReport, DecomposeReport};
use copos_cli::document::{
    format_matrix_text, parse_matrix, parse_matrix_json, parse_operator_json, parse_rational, to_json, Matrix,
    MatrixDocument, Mode, OperatorDocument,
};
use proptest::prelude::*;

fn rational() -> impl Strategy<Value = Rational> {
    (-10_000i64..=10_000, 1i64..=10_000).prop_map(|(p, q)| ratio(p, q))
}

fn exact_matrix() -> impl Strategy<Value = SymMatrix<Rational>> {
    (1usize..=6).prop_flat_map(|n| {
        prop::collection::vec(rational(), n * n).prop_map(move |v| SymMatrix::from_fn(n, |i, j| v[i * n + j].clone()))
    })
}

fn float_matrix() -> impl Strategy<Value = SymMatrix<f64>> {
    (1usize..=6).prop_flat_map(|n| {
        prop::collection::vec(-1e6f64..1e6, n * n).prop_map(move |v| SymMatrix::from_fn(n, |i, j| v[i * n + j]))
    })
}

fn exact_op() -> impl Strategy<Value = ExactOp> {
    (1usize..=3).prop_flat_map(|n| {
        let big_n = n * (n + 1) / 2;
        prop::collection::vec(rational(), big_n * big_n).prop_map(move |v| {
            LinOp::from_coeffs(
                n,
                copos::dense::Dense::from_fn(big_n, big_n, |i, j| v[i * big_n + j].clone()),
            )
            .unwrap()
        })
    })
}

proptest! {
    #[test]
    fn rational_strings_round_trip(q in rational()) {
        prop_assert_eq!(parse_rational(&q.to_string()).unwrap(), q);
    }

    #[test]
    fn exact_matrix_json_round_trips(a in exact_matrix()) {
        let json = to_json(&MatrixDocument::from_exact(&a));
        prop_assert_eq!(parse_matrix_json(&json).unwrap(), Matrix::Exact(a));
    }

    #[test]
    fn exact_matrix_text_round_trips(a in exact_matrix()) {
        let text = format_matrix_text(&Matrix::Exact(a.clone()));
        prop_assert_eq!(parse_matrix(&text).unwrap(), Matrix::Exact(a));
    }

    #[test]
    fn float_matrix_json_round_trips(a in float_matrix()) {
        let json = to_json(&MatrixDocument::from_float(&a));
        let back = parse_matrix_json(&json).unwrap();
        prop_assert_eq!(back.mode(), Mode::Float);
        prop_assert_eq!(back.to_float(), a);
    }

    #[test]
    fn operator_json_round_trips(op in exact_op()) {
        let json = to_json(&OperatorDocument::from_op(&op));
        prop_assert_eq!(parse_operator_json(&json).unwrap(), op);
    }

    #[test]
    fn check_reports_reparse_identically(a in exact_matrix()) {
        let json = to_json(&MatrixDocument::from_exact(&a));
        for mode in [Mode::Exact, Mode::Float] {
            let out = commands::check(&json, mode, true);
            prop_assert!(out.code == 0 || out.code == 1);
            let report: CheckReport = serde_json::from_str(&out.stdout).unwrap();
            let again: CheckReport = serde_json::from_str(&to_json(&report)).unwrap();
            prop_assert_eq!(again, report);
        }
    }

    #[test]
    fn parsers_never_panic(s in "\\PC{0,200}") {
        let _ = parse_matrix(&s);
        let _ = parse_operator_json(&s);
        let _ = parse_rational(&s);
    }
}

#[test]
fn decompose_reports_reparse_identically() {
    let shear = r#"{"n":2,"basis":"diag-then-offdiag-lex","coeffs":["1","0","0","1","1","2","1","0","1"]}"#;
    for doc in [
        shear.to_string(),
        commands::generate(commands::GenerateKind::MonomialOp, 3, 4, None, true).stdout,
    ] {
        let out = commands::decompose(&doc, 10, true);
        let report: DecomposeReport = serde_json::from_str(&out.stdout).unwrap();
        let again: DecomposeReport = serde_json::from_str(&to_json(&report)).unwrap();
        assert_eq!(again, report);
    }
}

#[test]
fn exact_documents_reject_bad_input() {
    let cases = [
        r#"{"n":2,"mode":"exact","entries":["1","2","3","1"]}"#,
        r#"{"n":2,"mode":"exact","entries":["1","2","2"]}"#,
        r#"{"n":1,"mode":"exact","entries":["1/0"]}"#,
        r#"{"n":1,"mode":"exact","entries":[0.5]}"#,
        r#"{"n":0,"mode":"exact","entries":[]}"#,
        r#"{"n":13,"mode":"exact","entries":[]}"#,
        r#"{"n":1,"mode":"exact","entries":["1"],"extra":1}"#,
    ];
    for c in cases {
        assert!(parse_matrix_json(c).is_err(), "{c}");
        assert_eq!(commands::check(c, Mode::Exact, false).code, 2, "{c}");
    }
    assert!(parse_operator_json(r#"{"n":1,"basis":"vech","coeffs":["1"]}"#).is_err());
}

#[test]
fn decimals_are_exact() {
    assert_eq!(parse_rational("-1.25").unwrap(), ratio(-5, 4));
    assert_eq!(parse_rational("-0.5").unwrap(), ratio(-1, 2));
    assert_eq!(parse_rational("6/-4").unwrap(), ratio(-3, 2));
    assert!(parse_rational("1.5e3").is_err());
    let m = parse_matrix("2\n0.5 -1\n-1 0.5\n").unwrap();
    assert_eq!(m.mode(), Mode::Exact);
    let f = parse_matrix("1\n1e-3\n").unwrap();
    assert_eq!(f.mode(), Mode::Float);
}

#[test]
fn fuzz_seed_corpora_parse_without_panicking() {
    let root = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fuzz/corpus");
    let mut seen = 0;
    for target in [
        "parse_matrix_text",
        "parse_matrix_json",
        "parse_operator_json",
        "parse_rational",
    ] {
        for entry in std::fs::read_dir(root.join(target)).unwrap() {
            let s = std::fs::read_to_string(entry.unwrap().path()).unwrap();
            let _ = (parse_matrix(&s), parse_operator_json(&s), parse_rational(&s));
            seen += 1;
        }
    }
    assert!(seen >= 20);
}
