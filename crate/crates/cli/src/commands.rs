//! The four subcommands. Each returns an [`Outcome`] instead of printing,
//! so the binary and the tests share one code path.

use std::fmt::Write as _;

use copos::copositivity::{random_boundary, random_copositive, sample_a_t, ConeStatus, SimplexMinimum};
use copos::preserver::{certify_preserver, claim_suite, monomial_operator, random_monomial, Decomposition, Verdict};
use copos::{simplex_minimize, Scalar};
use serde::{Deserialize, Serialize};

use crate::document::{
    format_matrix_text, parse_matrix, parse_operator_json, to_json, DocError, Matrix, MatrixDocument, Mode, Num,
    OperatorDocument, MAX_DIM,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_REFUTED: i32 = 1;
pub const EXIT_ERROR: i32 = 2;
pub const EXIT_NO_WITNESS: i32 = 3;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(code: i32, stdout: String) -> Self {
        Self {
            code,
            stdout,
            stderr: String::new(),
        }
    }

    fn error(msg: impl std::fmt::Display) -> Self {
        Self {
            code: EXIT_ERROR,
            stdout: String::new(),
            stderr: format!("error: {msg}\n"),
        }
    }
}

fn join<T: std::fmt::Display>(v: &[T]) -> String {
    v.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")
}

/// Machine-readable result of `check`. Supports are 1-based.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CheckReport {
    pub status: String,
    pub mode: Mode,
    pub min: Num,
    pub minimizer: Vec<Num>,
    pub support: Vec<usize>,
    pub multiplier: Num,
}

fn check_report<S: Scalar>(min: &SimplexMinimum<S>, mode: Mode, wrap: impl Fn(&S) -> Num) -> (CheckReport, String) {
    let status = ConeStatus::from_minimum(min);
    let kind = status.kind();
    let text = match &status {
        ConeStatus::Interior => format!("interior, min {}", min.value),
        ConeStatus::Boundary(ray) => format!(
            "boundary, min {}, ray support {} representative {}",
            min.value,
            ray.support,
            join(&ray.representative)
        ),
        ConeStatus::Outside { witness } => format!("outside, min {}, witness {}", min.value, join(witness)),
    };
    let report = CheckReport {
        status: kind.to_string(),
        mode,
        min: wrap(&min.value),
        minimizer: min.minimizer.iter().map(&wrap).collect(),
        support: min.support.one_based(),
        multiplier: wrap(&min.multiplier),
    };
    (report, text)
}

/// `check`: classify a matrix as interior, boundary or outside.
/// Exit 0 when copositive, 1 when outside, 2 on bad input.
pub fn check(input: &str, mode: Mode, json: bool) -> Outcome {
    let matrix = match parse_matrix(input) {
        Ok(m) => m,
        Err(e) => return Outcome::error(e),
    };
    let result = match mode {
        Mode::Exact => matrix
            .to_exact()
            .map_err(|e| e.to_string())
            .and_then(|m| simplex_minimize(&m).map_err(|e| e.to_string()))
            .map(|min| check_report(&min, mode, |v| Num::Exact(v.clone()))),
        Mode::Float => simplex_minimize(&matrix.to_float())
            .map_err(|e| e.to_string())
            .map(|min| check_report(&min, mode, |v| Num::Float(*v))),
    };
    let (report, text) = match result {
        Ok(r) => r,
        Err(e) => return Outcome::error(e),
    };
    let code = if report.status == "outside" {
        EXIT_REFUTED
    } else {
        EXIT_OK
    };
    let stdout = if json { to_json(&report) + "\n" } else { text + "\n" };
    Outcome::ok(code, stdout)
}

/// Machine-readable result of `decompose`. Permutations are 1-based images.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DecomposeReport {
    pub verdict: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pi: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cycles: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alpha: Option<Vec<Num>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub direction: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<MatrixDocument>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub image: Option<MatrixDocument>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub budget_spent: Option<usize>,
}

fn reason_of(d: &Decomposition) -> Option<String> {
    match d {
        Decomposition::Monomial(_) => None,
        Decomposition::NotMonomial { reason, .. } => Some(reason.to_string()),
    }
}

pub fn decompose_report(verdict: &Verdict) -> (DecomposeReport, String, i32) {
    let empty = DecomposeReport {
        verdict: String::new(),
        pi: None,
        cycles: None,
        alpha: None,
        reason: None,
        direction: None,
        counterexample: None,
        image: None,
        budget_spent: None,
    };
    match verdict {
        Verdict::Preserver(d) => {
            let text = format!("preserver, {d}");
            let report = DecomposeReport {
                verdict: "preserver".into(),
                pi: Some(d.perm().images().iter().map(|p| p + 1).collect()),
                cycles: Some(d.perm().to_string()),
                alpha: Some(d.squared_scales().iter().cloned().map(Num::Exact).collect()),
                ..empty
            };
            (report, text, EXIT_OK)
        }
        Verdict::NotPreserver {
            counterexample,
            image,
            direction,
            decomposition,
        } => {
            let reason = reason_of(decomposition).unwrap_or_default();
            let text = format!(
                "not preserver ({reason}), {direction} image of counterexample {counterexample} is {image}, not copositive"
            );
            let report = DecomposeReport {
                verdict: "not-preserver".into(),
                reason: Some(reason),
                direction: Some(direction.to_string()),
                counterexample: Some(MatrixDocument::from_exact(counterexample)),
                image: Some(MatrixDocument::from_exact(image)),
                ..empty
            };
            (report, text, EXIT_REFUTED)
        }
        Verdict::NotMonomialNoWitness {
            decomposition,
            budget_spent,
        } => {
            let reason = reason_of(decomposition).unwrap_or_default();
            let text = format!("not preserver ({reason}), no counterexample found in {budget_spent} samples");
            let report = DecomposeReport {
                verdict: "not-monomial-no-witness".into(),
                reason: Some(reason),
                budget_spent: Some(*budget_spent),
                ..empty
            };
            (report, text, EXIT_NO_WITNESS)
        }
    }
}

/// `decompose`: certify or refute that an operator preserves the cone.
/// Exit 0 preserver, 1 refuted by a witness, 3 refuted structurally only.
pub fn decompose(input: &str, budget: usize, json: bool) -> Outcome {
    let op = match parse_operator_json(input) {
        Ok(op) => op,
        Err(e) => return Outcome::error(e),
    };
    let verdict = match certify_preserver(&op, budget) {
        Ok(v) => v,
        Err(e) => return Outcome::error(e),
    };
    let (report, text, code) = decompose_report(&verdict);
    let stdout = if json { to_json(&report) + "\n" } else { text + "\n" };
    Outcome::ok(code, stdout)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GenerateKind {
    Copositive,
    Boundary,
    At,
    MonomialOp,
}

impl std::str::FromStr for GenerateKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "copositive" => Ok(Self::Copositive),
            "boundary" => Ok(Self::Boundary),
            "at" => Ok(Self::At),
            "monomial-op" => Ok(Self::MonomialOp),
            _ => Err(format!("unknown kind {s:?} (copositive|boundary|At|monomial-op)")),
        }
    }
}

/// `generate`: emit a seeded instance. `t` is 1-based and required for `At`.
pub fn generate(kind: GenerateKind, n: usize, seed: u64, t: Option<usize>, json: bool) -> Outcome {
    if !(1..=MAX_DIM).contains(&n) {
        return Outcome::error(DocError::Dimension(n));
    }
    let matrix = match kind {
        GenerateKind::Copositive => random_copositive(n, seed),
        GenerateKind::Boundary => random_boundary(n, seed).0,
        GenerateKind::At => {
            let Some(t) = t else {
                return Outcome::error("--t is required for kind At");
            };
            if !(1..=n).contains(&t) {
                return Outcome::error(format!("--t must be between 1 and {n}"));
            }
            match sample_a_t(n, t - 1, seed, 1) {
                Ok(mut v) => v.remove(0),
                Err(e) => return Outcome::error(e),
            }
        }
        GenerateKind::MonomialOp => {
            let op = monomial_operator(&random_monomial(n, seed)).expect("rational scales");
            return Outcome::ok(EXIT_OK, to_json(&OperatorDocument::from_op(&op)) + "\n");
        }
    };
    let stdout = if json {
        to_json(&MatrixDocument::from_exact(&matrix)) + "\n"
    } else {
        format_matrix_text(&Matrix::Exact(matrix))
    };
    Outcome::ok(EXIT_OK, stdout)
}

/// Parses `a..b`, `a..=b`, `a-b` or a single `a` (inclusive bounds).
pub fn parse_range(s: &str) -> Result<(usize, usize), String> {
    let bad = || format!("invalid range {s:?}");
    let (lo, hi) = if let Some((a, b)) = s.split_once("..") {
        (a, b.strip_prefix('=').unwrap_or(b))
    } else if let Some((a, b)) = s.split_once('-') {
        (a, b)
    } else {
        (s, s)
    };
    let lo: usize = lo.trim().parse().map_err(|_| bad())?;
    let hi: usize = hi.trim().parse().map_err(|_| bad())?;
    if lo == 0 || hi < lo || hi > MAX_DIM {
        return Err(format!("range {s:?} must satisfy 1 <= lo <= hi <= {MAX_DIM}"));
    }
    Ok((lo, hi))
}

/// `selftest`: run the claim suite for each dimension in the range.
/// Exit 0 iff every claim passes.
pub fn selftest(range: &str, seed: u64, samples: usize) -> Outcome {
    let (lo, hi) = match parse_range(range) {
        Ok(r) => r,
        Err(e) => return Outcome::error(e),
    };
    let mut out = String::new();
    let mut all_passed = true;
    let _ = writeln!(out, "{:<4} {:<28} {:>8}  result", "n", "claim", "checked");
    for n in lo..=hi {
        let report = match claim_suite(n, seed, samples) {
            Ok(r) => r,
            Err(e) => return Outcome::error(e),
        };
        for r in &report.results {
            let status = if r.passed() { "pass" } else { "FAIL" };
            let _ = writeln!(out, "{:<4} {:<28} {:>8}  {status}", n, r.claim.label(), r.checked);
            if let Some(f) = &r.failure {
                all_passed = false;
                let _ = writeln!(out, "     first failure: {f}");
            }
        }
    }
    let code = if all_passed { EXIT_OK } else { EXIT_REFUTED };
    Outcome::ok(code, out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn range_syntax() {
        assert_eq!(parse_range("1..4"), Ok((1, 4)));
        assert_eq!(parse_range("2..=3"), Ok((2, 3)));
        assert_eq!(parse_range("5"), Ok((5, 5)));
        assert_eq!(parse_range("1-2"), Ok((1, 2)));
        assert!(parse_range("0..0").is_err());
        assert!(parse_range("3..2").is_err());
        assert!(parse_range("1..13").is_err());
        assert!(parse_range("x").is_err());
    }

    #[test]
    fn kind_names() {
        assert_eq!("At".parse::<GenerateKind>(), Ok(GenerateKind::At));
        assert_eq!("monomial-op".parse::<GenerateKind>(), Ok(GenerateKind::MonomialOp));
        assert!("psd".parse::<GenerateKind>().is_err());
    }

    #[test]
    fn check_examples() {
        let out = check("3\n1 0 0\n0 1 0\n0 0 1\n", Mode::Exact, false);
        assert_eq!((out.code, out.stdout.as_str()), (0, "interior, min 1/3\n"));
        let out = check("2\n1 -3\n-3 1\n", Mode::Exact, false);
        assert_eq!(
            (out.code, out.stdout.as_str()),
            (1, "outside, min -1, witness 1/2 1/2\n")
        );
        let out = check("2\n1 2\n3 1\n", Mode::Exact, false);
        assert_eq!(out.code, 2);
        assert!(out.stderr.contains("not symmetric"));
    }

    #[test]
    fn generate_requires_t_for_at() {
        assert_eq!(generate(GenerateKind::At, 2, 5, None, false).code, 2);
        assert_eq!(generate(GenerateKind::At, 2, 5, Some(3), false).code, 2);
        assert_eq!(generate(GenerateKind::Copositive, 0, 5, None, false).code, 2);
    }
}
