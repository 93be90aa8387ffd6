//! Built-in E8 reference data (a length-29 word acting on `ρ`, the printed
//! 29-root decomposition and the expansions of its composite roots) and the
//! end-to-end check that reproduces it.

use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::algebra::{rho, AlgebraId, Weight};
use crate::error::Result;
use crate::roots::RootSystem;
use crate::signature::signature_of_weight;
use crate::weyl::{apply_word, dominance_length, step_roots, Composition, WeylWord};

pub const FIXTURE_JSON: &str = include_str!("../fixtures/e8_reference.json");

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpotIdentity {
    /// `σ_{prefix}(ρ) - σ_{prefix+1}(ρ)` is the root with this index.
    pub prefix: usize,
    pub index: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Expansion {
    pub index: usize,
    pub coeffs: Vec<i64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct E8Fixture {
    pub algebra: AlgebraId,
    pub word: WeylWord,
    pub length: usize,
    /// Root indices in the order the reduction of `ρ` produces them, last
    /// step first.
    pub printed_sequence: Vec<usize>,
    pub spot_identities: Vec<SpotIdentity>,
    /// Expansions of the non-simple roots of the decomposition.
    pub appendix: Vec<Expansion>,
}

pub fn fixture() -> &'static E8Fixture {
    static FIXTURE: OnceLock<E8Fixture> = OnceLock::new();
    FIXTURE.get_or_init(|| serde_json::from_str(FIXTURE_JSON).expect("built-in E8 fixture parses"))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub expected: String,
    pub actual: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReproductionReport {
    pub algebra: AlgebraId,
    pub word: WeylWord,
    pub mu: Weight,
    pub checks: Vec<Check>,
}

impl ReproductionReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

fn check<T: std::fmt::Debug + PartialEq>(name: &str, expected: T, actual: T) -> Check {
    Check {
        name: name.to_string(),
        passed: expected == actual,
        expected: format!("{expected:?}"),
        actual: format!("{actual:?}"),
    }
}

/// Runs the E8 pipeline on `word` (the fixture word by default) and
/// compares every stage with the reference data.
pub fn reproduce_e8(word: Option<&WeylWord>, compose: Composition) -> Result<ReproductionReport> {
    let fx = fixture();
    let rs = RootSystem::generate(fx.algebra);
    let cm = rs.cartan();
    let rho = rho(fx.algebra);
    let word = word.unwrap_or(&fx.word).normalized(compose);
    word.validate(cm.rank())?;
    let mu = apply_word(&word, &rho, cm)?;
    let mut checks = Vec::with_capacity(5);

    checks.push(check("oracle length", fx.length, dominance_length(&mu, cm)));

    let decomposition = signature_of_weight(&rho, &mu, &rs);
    let (k, epsilon, subset) = match &decomposition {
        Ok(d) => (Some(d.k), Some(d.epsilon), d.subset.clone()),
        Err(_) => (None, None, Vec::new()),
    };
    checks.push(check(
        "k and signature",
        (Some(fx.length), Some(-1i8)),
        (k, epsilon),
    ));

    let mut expected_set = fx.printed_sequence.clone();
    expected_set.sort_unstable();
    checks.push(check("decomposition index set", expected_set, subset.clone()));

    let expected_exp: Vec<(usize, Vec<i64>)> =
        fx.appendix.iter().map(|e| (e.index, e.coeffs.clone())).collect();
    let actual_exp: Vec<(usize, Vec<i64>)> = fx
        .appendix
        .iter()
        .map(|e| {
            // the chosen root carrying this expansion, with its index
            let found = subset
                .iter()
                .find(|&&a| rs.root(a).map(|r| r.coeffs()) == Some(&e.coeffs[..]));
            match found {
                Some(&a) => (a, e.coeffs.clone()),
                None => (0, Vec::new()),
            }
        })
        .collect();
    checks.push(check("appendix expansions", expected_exp, actual_exp));

    let steps = step_roots(&word, &rho, &rs)?;
    let reversed: Vec<Option<usize>> = steps.iter().rev().map(|s| s.index).collect();
    let expected_seq: Vec<Option<usize>> = fx.printed_sequence.iter().map(|&i| Some(i)).collect();
    let expected_spots: Vec<(usize, Option<usize>)> =
        fx.spot_identities.iter().map(|s| (s.prefix, Some(s.index))).collect();
    let actual_spots: Vec<(usize, Option<usize>)> = fx
        .spot_identities
        .iter()
        .map(|s| (s.prefix, steps.get(s.prefix).and_then(|st| st.index)))
        .collect();
    checks.push(check(
        "step roots in reduction order",
        (expected_seq, expected_spots),
        (reversed, actual_spots),
    ));

    Ok(ReproductionReport {
        algebra: fx.algebra,
        word,
        mu,
        checks,
    })
}
