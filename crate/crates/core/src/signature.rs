//! Signature of a weight: `γ = λ - μ` in simple-root coordinates is written
//! as a sum of distinct positive roots, `γ = Σ_A ε_A β_A` with `ε_A ∈ {0,1}`.
//! The number `k(μ)` of roots used gives the signature `(-1)^k(μ)`, which
//! agrees with `(-1)^ℓ` for the Weyl group element taking `λ` to `μ`.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebra::{rho, AlgebraId, CartanMatrix, RootVector, Weight};
use crate::error::{Error, Result};
use crate::roots::RootSystem;
use crate::weyl::{apply_word, dominance_length, dominance_reduce, orbit};

/// Default number of solutions collected by [`SearchMode::All`].
pub const DEFAULT_SOLUTION_CAP: usize = 64;

/// Largest `|Φ⁺|` accepted by the exhaustive `2^|Φ⁺|` subset scan.
pub const EXHAUSTIVE_MAX_ROOTS: usize = 20;

/// A 0/1 decomposition: the canonical indices `A` with `ε_A = 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Decomposition {
    pub subset: Vec<usize>,
    pub k: usize,
    pub epsilon: i8,
}

impl Decomposition {
    pub fn from_subset(mut subset: Vec<usize>) -> Self {
        subset.sort_unstable();
        let k = subset.len();
        Self {
            subset,
            k,
            epsilon: parity(k),
        }
    }

    /// Coordinate-wise sum of the chosen roots.
    pub fn sum(&self, rs: &RootSystem) -> Vec<i64> {
        let mut total = vec![0i64; rs.rank()];
        for &a in &self.subset {
            for (t, c) in total.iter_mut().zip(rs.root(a).expect("valid index").coeffs()) {
                *t += c;
            }
        }
        total
    }
}

pub fn parity(k: usize) -> i8 {
    if k.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// `λ - μ` in simple-root coordinates; must lie in the positive root lattice.
pub fn gamma(lambda: &Weight, mu: &Weight, cm: &CartanMatrix) -> Result<RootVector> {
    let diff = lambda.checked_sub(mu)?;
    cm.positive_root_lattice_coords(&diff)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SearchMode {
    First,
    All { cap: usize },
}

/// Depth-first search for 0/1 decompositions of `gamma` over `Φ⁺`.
///
/// Roots are visited by descending height; at each root the branch that
/// uses it is tried before the one that skips it. A branch dies when the
/// residual would go negative, when it exceeds the coordinate-wise sum of
/// the roots still available, or when the linear form
/// `f(x) = (x, γ - ρ)` of the residual falls outside the range the
/// remaining roots can reach. For `γ = ρ - wρ` the last bound is tight at
/// the root of the tree, so every wrong choice is cut immediately.
pub fn decompose(gamma: &RootVector, rs: &RootSystem, mode: SearchMode) -> Result<Vec<Decomposition>> {
    let limit = match mode {
        SearchMode::First => 1,
        SearchMode::All { cap } => cap.saturating_add(1),
    };
    let found = Searcher::new(rs, gamma.coeffs())?.run(limit);
    match mode {
        SearchMode::First if found.is_empty() => Err(Error::NoDecomposition(gamma.coeffs().to_vec())),
        SearchMode::All { cap } if found.len() > cap => Err(Error::SolutionCapExceeded { cap }),
        _ => Ok(found.into_iter().map(Decomposition::from_subset).collect()),
    }
}

/// Collects up to `limit` solutions without turning overflow into an error.
pub fn find_decompositions(gamma: &RootVector, rs: &RootSystem, limit: usize) -> Result<Vec<Decomposition>> {
    Ok(Searcher::new(rs, gamma.coeffs())?
        .run(limit)
        .into_iter()
        .map(Decomposition::from_subset)
        .collect())
}

struct Searcher<'a> {
    rs: &'a RootSystem,
    gamma: Vec<i64>,
    start_value: i64,
    // canonical indices, descending height
    order: Vec<usize>,
    // suffix[p] = Σ of roots at order positions p..
    suffix: Vec<Vec<i64>>,
    // f(root) per order position and the reachable range of f over suffixes
    form: Vec<i64>,
    form_max: Vec<i64>,
    form_min: Vec<i64>,
    chosen: Vec<usize>,
    found: Vec<Vec<usize>>,
    limit: usize,
}

impl<'a> Searcher<'a> {
    fn new(rs: &'a RootSystem, gamma: &[i64]) -> Result<Self> {
        let n = rs.rank();
        crate::algebra::check_dim(n, gamma.len())?;
        if gamma.iter().any(|&c| c < 0) {
            return Err(Error::NotInPositiveRootLattice(format!("{gamma:?}")));
        }
        let cm = rs.cartan();
        // (α_j, γ - ρ) = d_j (label_j(γ) - 1)
        let d = cm.symmetrizer();
        let labels = cm.labels_of_root_coords(gamma)?;
        let weights: Vec<i64> = (0..n).map(|j| d[j] * (labels.labels()[j] - 1)).collect();
        let f = |c: &[i64]| c.iter().zip(&weights).map(|(a, b)| a * b).sum::<i64>();

        let order: Vec<usize> = (1..=rs.len()).rev().collect();
        let m = order.len();
        let mut suffix = vec![vec![0i64; n]; m + 1];
        let mut form = vec![0i64; m];
        let mut form_max = vec![0i64; m + 1];
        let mut form_min = vec![0i64; m + 1];
        for p in (0..m).rev() {
            let root = rs.root(order[p]).unwrap().coeffs();
            suffix[p] = suffix[p + 1].iter().zip(root).map(|(a, b)| a + b).collect();
            form[p] = f(root);
            form_max[p] = form_max[p + 1] + form[p].max(0);
            form_min[p] = form_min[p + 1] + form[p].min(0);
        }
        Ok(Self {
            rs,
            gamma: gamma.to_vec(),
            start_value: f(gamma),
            order,
            suffix,
            form,
            form_max,
            form_min,
            chosen: Vec::new(),
            found: Vec::new(),
            limit: 0,
        })
    }

    fn run(mut self, limit: usize) -> Vec<Vec<usize>> {
        self.limit = limit;
        if limit > 0 {
            let mut residual = self.gamma.clone();
            let value = self.start_value;
            self.dfs(0, &mut residual, value);
        }
        self.found
    }

    fn dfs(&mut self, p: usize, residual: &mut Vec<i64>, value: i64) {
        if residual.iter().all(|&c| c == 0) {
            self.found.push(self.chosen.clone());
            return;
        }
        if p == self.order.len()
            || value > self.form_max[p]
            || value < self.form_min[p]
            || residual.iter().zip(&self.suffix[p]).any(|(r, s)| r > s)
        {
            return;
        }
        let index = self.order[p];
        let root = self.rs.root(index).unwrap().coeffs();
        if residual.iter().zip(root).all(|(r, c)| r >= c) {
            residual.iter_mut().zip(root).for_each(|(r, c)| *r -= c);
            self.chosen.push(index);
            self.dfs(p + 1, residual, value - self.form[p]);
            self.chosen.pop();
            residual.iter_mut().zip(root).for_each(|(r, c)| *r += c);
        }
        if self.found.len() < self.limit {
            self.dfs(p + 1, residual, value);
        }
    }
}

/// Sums of all `2^|Φ⁺|` subsets of positive roots, grouped by value.
pub struct SubsetTable {
    // sum -> (number of subsets, first subset mask in scan order)
    sums: HashMap<Vec<i64>, (usize, u32)>,
}

impl SubsetTable {
    /// Gray-code scan over every subset. Refuses systems with more than
    /// [`EXHAUSTIVE_MAX_ROOTS`] positive roots.
    pub fn build(rs: &RootSystem) -> Result<Self> {
        let m = rs.len();
        if m > EXHAUSTIVE_MAX_ROOTS {
            return Err(Error::ExhaustiveTooLarge {
                algebra: rs.algebra(),
                max: EXHAUSTIVE_MAX_ROOTS,
                actual: m,
            });
        }
        let mut sums: HashMap<Vec<i64>, (usize, u32)> = HashMap::new();
        let mut current = vec![0i64; rs.rank()];
        let mut mask: u32 = 0;
        sums.insert(current.clone(), (1, 0));
        for step in 1u32..(1u32 << m) {
            let bit = step.trailing_zeros() as usize;
            let root = rs.positives()[bit].coeffs();
            let adding = mask & (1 << bit) == 0;
            mask ^= 1 << bit;
            for (c, r) in current.iter_mut().zip(root) {
                if adding {
                    *c += r;
                } else {
                    *c -= r;
                }
            }
            sums.entry(current.clone())
                .and_modify(|e| e.0 += 1)
                .or_insert((1, mask));
        }
        Ok(Self { sums })
    }

    /// Number of subsets summing to `gamma`, and one of them.
    pub fn lookup(&self, gamma: &[i64]) -> (usize, Option<Decomposition>) {
        match self.sums.get(gamma) {
            Some(&(count, mask)) => {
                let subset = (0..32).filter(|b| mask & (1 << b) != 0).map(|b| b + 1).collect();
                (count, Some(Decomposition::from_subset(subset)))
            }
            None => (0, None),
        }
    }
}

/// Signature data of `μ` relative to the dominant weight `λ`.
///
/// For strictly dominant `λ` the group element taking `λ` to `μ` is recovered
/// by the dominance algorithm and its action on `ρ` is decomposed, which
/// avoids multiples of roots in `λ - μ`. For `λ = ρ` this is literally
/// `γ = ρ - μ`. Dominant but non-regular `λ` are decomposed as `λ - μ`.
pub fn signature_of_weight(lambda: &Weight, mu: &Weight, rs: &RootSystem) -> Result<Decomposition> {
    let gamma = signature_gamma(lambda, mu, rs)?;
    decompose(&gamma, rs, SearchMode::First).map(|mut d| d.remove(0))
}

/// The vector `signature_of_weight` decomposes.
pub fn signature_gamma(lambda: &Weight, mu: &Weight, rs: &RootSystem) -> Result<RootVector> {
    let cm = rs.cartan();
    crate::algebra::check_dim(cm.rank(), lambda.rank())?;
    crate::algebra::check_dim(cm.rank(), mu.rank())?;
    if !lambda.is_dominant() {
        return Err(Error::NotDominant(lambda.to_string()));
    }
    if !lambda.is_strictly_dominant() {
        return gamma(lambda, mu, cm);
    }
    let reduction = dominance_reduce(mu, cm)?;
    if &reduction.dominant != lambda {
        return Err(Error::NotInOrbit {
            lambda: lambda.to_string(),
            mu: mu.to_string(),
        });
    }
    let rho = rho(rs.algebra());
    let image = if lambda == &rho {
        mu.clone()
    } else {
        apply_word(&reduction.word, &rho, cm)?
    };
    gamma(&rho, &image, cm)
}

/// Serialized signature record; also the per-element record of a
/// [`ClaimReport`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SignatureRecord {
    pub algebra: AlgebraId,
    pub lambda: Weight,
    pub mu: Weight,
    pub gamma: Option<Vec<i64>>,
    pub subset_indices: Vec<usize>,
    pub subset_expansions: Vec<Vec<i64>>,
    pub k: Option<usize>,
    pub epsilon: Option<i8>,
    pub oracle_length: usize,
    pub solution_count: usize,
    /// Exactly one decomposition, and its size equals the oracle length.
    pub agree: bool,
}

impl SignatureRecord {
    fn new(
        rs: &RootSystem,
        lambda: &Weight,
        mu: &Weight,
        gamma: Option<&RootVector>,
        solution_count: usize,
        first: Option<Decomposition>,
    ) -> Self {
        let oracle_length = dominance_length(mu, rs.cartan());
        let (subset_indices, k, epsilon) = match first {
            Some(d) => (d.subset, Some(d.k), Some(d.epsilon)),
            None => (Vec::new(), None, None),
        };
        let subset_expansions = subset_indices
            .iter()
            .map(|&a| rs.root(a).unwrap().coeffs().to_vec())
            .collect();
        Self {
            algebra: rs.algebra(),
            lambda: lambda.clone(),
            mu: mu.clone(),
            gamma: gamma.map(|g| g.coeffs().to_vec()),
            subset_indices,
            subset_expansions,
            k,
            epsilon,
            oracle_length,
            solution_count,
            agree: solution_count == 1 && k == Some(oracle_length),
        }
    }
}

/// Full signature analysis of `μ` against `λ`: the first decomposition,
/// the number of decompositions (up to `cap + 1`) and the oracle length.
pub fn analyze(lambda: &Weight, mu: &Weight, rs: &RootSystem, cap: usize) -> Result<SignatureRecord> {
    let gamma = signature_gamma(lambda, mu, rs)?;
    let all = find_decompositions(&gamma, rs, cap.saturating_add(1))?;
    let count = all.len();
    Ok(SignatureRecord::new(rs, lambda, mu, Some(&gamma), count, all.into_iter().next()))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Strategy {
    /// Scan of all `2^|Φ⁺|` subsets.
    Exhaustive,
    /// Pruned depth-first search collecting all solutions up to a cap.
    DfsAll,
}

impl FromStr for Strategy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "exhaustive" => Ok(Self::Exhaustive),
            "dfs_all" | "dfs-all" | "dfs" => Ok(Self::DfsAll),
            other => Err(Error::Parse(format!("unknown strategy {other:?}"))),
        }
    }
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Exhaustive => "exhaustive",
            Self::DfsAll => "dfs_all",
        })
    }
}

/// Outcome of checking uniqueness and length agreement over an orbit.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClaimReport {
    pub algebra: AlgebraId,
    pub seed: Weight,
    pub strategy: Strategy,
    pub orbit_size: usize,
    pub agree_count: usize,
    pub records: Vec<SignatureRecord>,
    pub counterexamples: Vec<SignatureRecord>,
}

impl ClaimReport {
    pub fn all_agree(&self) -> bool {
        self.counterexamples.is_empty()
    }
}

#[derive(Debug, Clone, Copy)]
pub struct VerifyOptions {
    pub strategy: Strategy,
    pub orbit_cap: usize,
    pub solution_cap: usize,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self {
            strategy: Strategy::Exhaustive,
            orbit_cap: crate::weyl::DEFAULT_ORBIT_CAP,
            solution_cap: DEFAULT_SOLUTION_CAP,
        }
    }
}

/// For every `μ` in the orbit of `seed`, counts the 0/1 decompositions of
/// `λ - μ` (`λ` the dominant representative of the seed, taken literally)
/// and compares with the dominance length of `μ`.
pub fn verify_statement(rs: &RootSystem, seed: &Weight, opts: VerifyOptions) -> Result<ClaimReport> {
    let cm = rs.cartan();
    let orbit = orbit(seed, cm, opts.orbit_cap)?;
    let lambda = orbit.seed().clone();
    let table = match opts.strategy {
        Strategy::Exhaustive => Some(SubsetTable::build(rs)?),
        Strategy::DfsAll => None,
    };
    let records: Vec<SignatureRecord> = orbit
        .elements()
        .par_iter()
        .map(|e| -> Result<SignatureRecord> {
            let mu = &e.weight;
            let gamma = match gamma(&lambda, mu, cm) {
                Ok(g) => g,
                Err(Error::NotInPositiveRootLattice(_)) => {
                    return Ok(SignatureRecord::new(rs, &lambda, mu, None, 0, None));
                }
                Err(other) => return Err(other),
            };
            let (count, first) = match &table {
                Some(t) => t.lookup(gamma.coeffs()),
                None => {
                    let all = find_decompositions(&gamma, rs, opts.solution_cap.saturating_add(1))?;
                    (all.len(), all.into_iter().next())
                }
            };
            Ok(SignatureRecord::new(rs, &lambda, mu, Some(&gamma), count, first))
        })
        .collect::<Result<_>>()?;
    let counterexamples: Vec<SignatureRecord> = records.iter().filter(|r| !r.agree).cloned().collect();
    Ok(ClaimReport {
        algebra: rs.algebra(),
        seed: lambda,
        strategy: opts.strategy,
        orbit_size: records.len(),
        agree_count: records.len() - counterexamples.len(),
        records,
        counterexamples,
    })
}

/// Coefficients of `Π_i (1 + t + ... + t^{m_i})`, lowest degree first.
pub fn poincare_polynomial(rs: &RootSystem) -> Vec<u128> {
    let mut poly: Vec<u128> = vec![1];
    for &m in rs.exponents().as_slice() {
        let m = m as usize;
        let mut next = vec![0u128; poly.len() + m];
        for (d, &c) in poly.iter().enumerate() {
            for slot in &mut next[d..=d + m] {
                *slot = slot.checked_add(c).expect("Poincaré coefficient overflows u128");
            }
        }
        poly = next;
    }
    poly
}

/// Number of `ρ`-orbit elements of each dominance length.
pub fn length_census(rs: &RootSystem, orbit_cap: usize) -> Result<Vec<u64>> {
    let o = orbit(&rho(rs.algebra()), rs.cartan(), orbit_cap)?;
    Ok(o.length_histogram())
}
