//! Positive root systems with the canonical index order, exponents and the
//! Weyl group order.

use std::cmp::Ordering;
use std::collections::{HashMap, HashSet};

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::algebra::{cartan_matrix, AlgebraId, CartanMatrix, RootVector};
use crate::error::{Error, Result};

#[derive(Debug, Clone)]
pub struct RootSystem {
    algebra: AlgebraId,
    cartan: CartanMatrix,
    positives: Vec<RootVector>,
    index_of: HashMap<Vec<i64>, usize>,
    // heights[h - 1] = number of positive roots of height h
    heights: Vec<usize>,
}

/// Exponents `m_1 <= ... <= m_N` of the Weyl group.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ExponentList(pub Vec<u32>);

impl ExponentList {
    pub fn as_slice(&self) -> &[u32] {
        &self.0
    }

    pub fn sum(&self) -> u64 {
        self.0.iter().map(|&m| m as u64).sum()
    }

    /// Height histogram recovered from the exponents:
    /// `#{roots of height h} = #{i : m_i >= h}`.
    pub fn height_histogram(&self) -> Vec<usize> {
        let top = self.0.iter().copied().max().unwrap_or(0);
        (1..=top)
            .map(|h| self.0.iter().filter(|&&m| m >= h).count())
            .collect()
    }
}

/// Canonical order: ascending height, then ascending lexicographic order of
/// the reversed coefficient tuple `(c_N, ..., c_1)`.
pub fn canonical_cmp(a: &RootVector, b: &RootVector) -> Ordering {
    a.height()
        .cmp(&b.height())
        .then_with(|| a.coeffs().iter().rev().cmp(b.coeffs().iter().rev()))
}

impl RootSystem {
    /// Generates `Φ⁺` by closure under simple reflections starting from the
    /// simple roots, then sorts into canonical order.
    pub fn generate(algebra: AlgebraId) -> Self {
        let cartan = cartan_matrix(algebra);
        let n = algebra.rank();
        let mut seen: HashSet<Vec<i64>> = HashSet::new();
        let mut queue: Vec<Vec<i64>> = Vec::new();
        for i in 1..=n {
            let s = RootVector::simple(n, i).coeffs().to_vec();
            seen.insert(s.clone());
            queue.push(s);
        }
        while let Some(beta) = queue.pop() {
            for i in 0..n {
                // <β, α_i^∨> = Σ_j c_j A[j][i]
                let pairing: i64 = (0..n).map(|j| beta[j] * cartan.entry(j, i)).sum();
                if pairing == 0 {
                    continue;
                }
                let mut image = beta.clone();
                image[i] -= pairing;
                if image.iter().all(|&c| c >= 0) && !seen.contains(&image) {
                    seen.insert(image.clone());
                    queue.push(image);
                }
            }
        }
        let mut positives: Vec<RootVector> = seen.into_iter().map(RootVector::from_raw).collect();
        positives.sort_by(canonical_cmp);
        let index_of = positives
            .iter()
            .enumerate()
            .map(|(k, r)| (r.coeffs().to_vec(), k + 1))
            .collect();
        let top = positives.last().map_or(0, |r| r.height()) as usize;
        let mut heights = vec![0usize; top];
        for r in &positives {
            heights[r.height() as usize - 1] += 1;
        }
        Self {
            algebra,
            cartan,
            positives,
            index_of,
            heights,
        }
    }

    pub fn algebra(&self) -> AlgebraId {
        self.algebra
    }

    pub fn rank(&self) -> usize {
        self.algebra.rank()
    }

    pub fn cartan(&self) -> &CartanMatrix {
        &self.cartan
    }

    /// Positive roots in canonical order; position `k` has index `k + 1`.
    pub fn positives(&self) -> &[RootVector] {
        &self.positives
    }

    pub fn len(&self) -> usize {
        self.positives.len()
    }

    pub fn is_empty(&self) -> bool {
        self.positives.is_empty()
    }

    /// Root with 1-based canonical index `index`.
    pub fn root(&self, index: usize) -> Option<&RootVector> {
        index.checked_sub(1).and_then(|k| self.positives.get(k))
    }

    pub fn highest_root(&self) -> &RootVector {
        self.positives.last().expect("root systems are nonempty")
    }

    /// Histogram of root heights, entry `h - 1` counting roots of height `h`.
    pub fn heights(&self) -> &[usize] {
        &self.heights
    }

    pub fn canonical_index(&self, beta: &RootVector) -> Result<usize> {
        self.index_of_coeffs(beta.coeffs())
            .ok_or_else(|| Error::NotARoot(beta.coeffs().to_vec(), self.algebra))
    }

    pub fn index_of_coeffs(&self, coeffs: &[i64]) -> Option<usize> {
        self.index_of.get(coeffs).copied()
    }

    /// Exponents as the conjugate partition of the height histogram.
    pub fn exponents(&self) -> ExponentList {
        let mut out = Vec::with_capacity(self.rank());
        for (h, &count) in self.heights.iter().enumerate() {
            let next = self.heights.get(h + 1).copied().unwrap_or(0);
            out.extend(std::iter::repeat_n(h as u32 + 1, count - next));
        }
        ExponentList(out)
    }

    /// `|W| = Π (m_i + 1)`.
    pub fn weyl_order(&self) -> BigUint {
        self.exponents()
            .0
            .iter()
            .map(|&m| BigUint::from(m + 1))
            .product()
    }

    /// Entries for the `roots` listing, in index order.
    pub fn entries(&self) -> Vec<RootEntry> {
        self.positives
            .iter()
            .enumerate()
            .map(|(k, r)| RootEntry {
                index: k + 1,
                height: r.height(),
                coeffs: r.coeffs().to_vec(),
            })
            .collect()
    }
}

/// One serialized positive root.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RootEntry {
    pub index: usize,
    pub height: i64,
    pub coeffs: Vec<i64>,
}

impl RootEntry {
    /// `index height c_1 ... c_N`, space separated.
    pub fn to_line(&self) -> String {
        let coeffs: Vec<String> = self.coeffs.iter().map(i64::to_string).collect();
        format!("{} {} {}", self.index, self.height, coeffs.join(" "))
    }

    pub fn from_line(line: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("malformed root line {line:?}"));
        let fields: Vec<i64> = line
            .split_whitespace()
            .map(|t| t.parse().map_err(|_| bad()))
            .collect::<Result<_>>()?;
        if fields.len() < 3 || fields[0] < 1 {
            return Err(bad());
        }
        Ok(Self {
            index: fields[0] as usize,
            height: fields[1],
            coeffs: fields[2..].to_vec(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rs(s: &str) -> RootSystem {
        RootSystem::generate(s.parse().unwrap())
    }

    fn classical_count(id: AlgebraId) -> usize {
        use crate::algebra::Family::*;
        let n = id.rank();
        match id.family() {
            A => n * (n + 1) / 2,
            B | C => n * n,
            D => n * (n - 1),
            G => 6,
            F => 24,
            E => [36, 63, 120][n - 6],
        }
    }

    #[test]
    fn counts_match_closed_forms() {
        for name in [
            "A1", "A2", "A3", "A7", "B2", "B3", "B5", "C2", "C3", "C5", "D3", "D4", "D6", "E6", "E7", "E8", "F4",
            "G2",
        ] {
            let id: AlgebraId = name.parse().unwrap();
            assert_eq!(RootSystem::generate(id).len(), classical_count(id), "{name}");
        }
    }

    #[test]
    fn a2_roots() {
        let r = rs("A2");
        let coeffs: Vec<&[i64]> = r.positives().iter().map(|b| b.coeffs()).collect();
        assert_eq!(coeffs, vec![&[1, 0][..], &[0, 1], &[1, 1]]);
    }

    #[test]
    fn g2_heights_and_exponents() {
        let r = rs("G2");
        assert_eq!(r.len(), 6);
        assert_eq!(r.heights(), &[2, 1, 1, 1, 1]);
        assert_eq!(r.exponents().as_slice(), &[1, 5]);
        assert_eq!(r.weyl_order(), BigUint::from(12u32));
        assert_eq!(r.highest_root().coeffs(), &[3, 2]);
    }

    #[test]
    fn exponents_examples() {
        assert_eq!(rs("A2").exponents().as_slice(), &[1, 2]);
        let e8 = rs("E8").exponents();
        assert_eq!(e8.as_slice(), &[1, 7, 11, 13, 17, 19, 23, 29]);
        assert_eq!(e8.sum(), 120);
        assert_eq!(rs("F4").exponents().as_slice(), &[1, 5, 7, 11]);
        assert_eq!(rs("E6").exponents().as_slice(), &[1, 4, 5, 7, 8, 11]);
    }

    #[test]
    fn weyl_orders() {
        for (name, order) in [
            ("A2", 6u64),
            ("B2", 8),
            ("D4", 192),
            ("F4", 1152),
            ("E6", 51840),
            ("E7", 2903040),
            ("E8", 696729600),
        ] {
            assert_eq!(rs(name).weyl_order(), BigUint::from(order), "{name}");
        }
    }

    #[test]
    fn simple_roots_first_and_index_bijective() {
        for name in ["A4", "B3", "C4", "D5", "E6", "E8", "F4", "G2"] {
            let r = rs(name);
            for i in 1..=r.rank() {
                assert_eq!(r.canonical_index(&RootVector::simple(r.rank(), i)).unwrap(), i);
            }
            for (k, beta) in r.positives().iter().enumerate() {
                assert_eq!(r.canonical_index(beta).unwrap(), k + 1);
                assert!(beta.height() >= 1);
            }
        }
    }

    #[test]
    fn e8_reference_indices() {
        let r = rs("E8");
        let idx = |c: [i64; 8]| r.canonical_index(&RootVector::new(c.to_vec()).unwrap()).unwrap();
        assert_eq!(idx([0, 0, 1, 1, 0, 0, 0, 0]), 11);
        assert_eq!(idx([0, 0, 0, 0, 1, 0, 0, 1]), 15);
        assert_eq!(idx([1, 2, 3, 4, 5, 3, 2, 3]), 114);
    }

    #[test]
    fn not_a_root() {
        let r = rs("A2");
        let err = r.canonical_index(&RootVector::new(vec![2, 1]).unwrap()).unwrap_err();
        assert!(matches!(err, Error::NotARoot(..)));
        assert!(r.root(0).is_none());
        assert!(r.root(4).is_none());
    }

    #[test]
    fn closed_under_simple_reflections() {
        for name in ["B3", "C3", "F4", "G2", "E7"] {
            let r = rs(name);
            let cm = r.cartan();
            let n = r.rank();
            for beta in r.positives() {
                for i in 0..n {
                    let pairing: i64 = (0..n).map(|j| beta.coeffs()[j] * cm.entry(j, i)).sum();
                    let mut image = beta.coeffs().to_vec();
                    image[i] -= pairing;
                    let neg: Vec<i64> = image.iter().map(|c| -c).collect();
                    assert!(
                        r.index_of_coeffs(&image).is_some() || r.index_of_coeffs(&neg).is_some(),
                        "{name}: σ_{} {beta}",
                        i + 1
                    );
                }
            }
        }
    }

    #[test]
    fn histogram_conjugacy() {
        for name in ["A5", "B4", "C3", "D5", "E6", "E7", "E8", "F4", "G2"] {
            let r = rs(name);
            assert_eq!(r.exponents().height_histogram(), r.heights(), "{name}");
            assert_eq!(r.exponents().sum() as usize, r.len());
            assert_eq!(r.exponents().as_slice()[0], 1);
            assert_eq!(
                *r.exponents().as_slice().last().unwrap() as i64,
                r.highest_root().height()
            );
        }
    }

    #[test]
    fn root_line_format() {
        let r = rs("A2");
        let lines: Vec<String> = r.entries().iter().map(RootEntry::to_line).collect();
        assert_eq!(lines, ["1 1 1 0", "2 1 0 1", "3 2 1 1"]);
        assert_eq!(RootEntry::from_line("3 2 1 1").unwrap(), r.entries()[2]);
        assert!(RootEntry::from_line("3 2").is_err());
    }
}
