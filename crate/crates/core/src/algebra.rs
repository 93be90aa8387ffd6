//! Algebra identification, Cartan matrices and exact changes of basis between
//! Dynkin labels (fundamental-weight basis) and simple-root coordinates.
//!
//! Cartan convention: `A[i][j] = 2(α_i, α_j) / (α_j, α_j)`. Row `i` of the
//! matrix is therefore the simple root `α_i` written in Dynkin labels, and the
//! label `i` of `Σ_j c_j α_j` is `Σ_j c_j A[j][i]`. With this convention the
//! B_n matrix has its `-2` at `A[n-1][n]` and C_n has it at `A[n][n-1]`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Reduced fraction of arbitrary-precision integers with positive denominator.
pub type ExactFraction = BigRational;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl Family {
    fn letter(self) -> char {
        match self {
            Family::A => 'A',
            Family::B => 'B',
            Family::C => 'C',
            Family::D => 'D',
            Family::E => 'E',
            Family::F => 'F',
            Family::G => 'G',
        }
    }
}

/// A simple Lie algebra: family letter plus rank, e.g. `E8`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AlgebraId {
    family: Family,
    rank: usize,
}

impl AlgebraId {
    pub fn new(family: Family, rank: usize) -> Result<Self> {
        let ok = match family {
            Family::A => rank >= 1,
            Family::B | Family::C => rank >= 2,
            Family::D => rank >= 3,
            Family::E => (6..=8).contains(&rank),
            Family::F => rank == 4,
            Family::G => rank == 2,
        };
        if ok {
            Ok(Self { family, rank })
        } else {
            Err(Error::UnsupportedAlgebra(format!("{}{}", family.letter(), rank)))
        }
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn rank(&self) -> usize {
        self.rank
    }
}

impl fmt::Display for AlgebraId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family.letter(), self.rank)
    }
}

impl FromStr for AlgebraId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let unsupported = || Error::UnsupportedAlgebra(s.to_string());
        let mut chars = s.chars();
        let family = match chars.next().map(|c| c.to_ascii_uppercase()) {
            Some('A') => Family::A,
            Some('B') => Family::B,
            Some('C') => Family::C,
            Some('D') => Family::D,
            Some('E') => Family::E,
            Some('F') => Family::F,
            Some('G') => Family::G,
            _ => return Err(unsupported()),
        };
        let rank: usize = chars.as_str().parse().map_err(|_| unsupported())?;
        Self::new(family, rank)
    }
}

impl Serialize for AlgebraId {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for AlgebraId {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Dynkin labels: integer coordinates in the fundamental-weight basis.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Weight(Vec<i64>);

impl Weight {
    pub fn new(labels: Vec<i64>) -> Self {
        Self(labels)
    }

    pub fn zero(rank: usize) -> Self {
        Self(vec![0; rank])
    }

    pub fn labels(&self) -> &[i64] {
        &self.0
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn is_dominant(&self) -> bool {
        self.0.iter().all(|&l| l >= 0)
    }

    pub fn is_strictly_dominant(&self) -> bool {
        self.0.iter().all(|&l| l >= 1)
    }

    pub fn into_labels(self) -> Vec<i64> {
        self.0
    }

    pub(crate) fn labels_mut(&mut self) -> &mut [i64] {
        &mut self.0
    }

    pub fn checked_sub(&self, other: &Weight) -> Result<Weight> {
        check_dim(self.rank(), other.rank())?;
        Ok(Weight(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect()))
    }

    pub fn checked_add(&self, other: &Weight) -> Result<Weight> {
        check_dim(self.rank(), other.rank())?;
        Ok(Weight(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect()))
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", join(&self.0))
    }
}

impl FromStr for Weight {
    type Err = Error;

    /// Comma-separated labels, e.g. `1,0,2`.
    fn from_str(s: &str) -> Result<Self> {
        parse_int_list(s).map(Weight)
    }
}

/// Nonnegative integer coordinates in the simple-root basis.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<i64>", into = "Vec<i64>")]
pub struct RootVector(Vec<i64>);

impl RootVector {
    pub fn new(coeffs: Vec<i64>) -> Result<Self> {
        if coeffs.iter().any(|&c| c < 0) {
            return Err(Error::NotInPositiveRootLattice(format!("({})", join(&coeffs))));
        }
        Ok(Self(coeffs))
    }

    pub fn zero(rank: usize) -> Self {
        Self(vec![0; rank])
    }

    /// The simple root `α_i`, 1-based.
    pub fn simple(rank: usize, i: usize) -> Self {
        let mut c = vec![0; rank];
        c[i - 1] = 1;
        Self(c)
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.0
    }

    pub fn height(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub(crate) fn from_raw(coeffs: Vec<i64>) -> Self {
        debug_assert!(coeffs.iter().all(|&c| c >= 0));
        Self(coeffs)
    }
}

impl TryFrom<Vec<i64>> for RootVector {
    type Error = Error;

    fn try_from(v: Vec<i64>) -> Result<Self> {
        Self::new(v)
    }
}

impl From<RootVector> for Vec<i64> {
    fn from(r: RootVector) -> Self {
        r.0
    }
}

impl fmt::Display for RootVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", join(&self.0))
    }
}

/// Cartan matrix together with its exact inverse.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CartanMatrix {
    entries: Vec<Vec<i64>>,
    determinant: BigInt,
    inverse: Vec<Vec<ExactFraction>>,
    // det * inverse, integral; used for the fast lattice membership test.
    adjugate: Vec<Vec<i128>>,
}

impl CartanMatrix {
    /// Builds from raw entries, checking the Cartan shape (2 on the
    /// diagonal, nonpositive off-diagonal, symmetric zero pattern) and
    /// invertibility.
    pub fn from_entries(entries: Vec<Vec<i64>>) -> Result<Self> {
        let n = entries.len();
        for (i, row) in entries.iter().enumerate() {
            check_dim(n, row.len())?;
            for (j, &a) in row.iter().enumerate() {
                let bad = if i == j {
                    a != 2
                } else {
                    a > 0 || (a == 0) != (entries[j][i] == 0)
                };
                if bad {
                    return Err(Error::UnsupportedAlgebra(format!(
                        "not a Cartan matrix: entry ({}, {}) = {a}",
                        i + 1,
                        j + 1
                    )));
                }
            }
        }
        let (determinant, inverse) = invert(&entries)
            .ok_or_else(|| Error::UnsupportedAlgebra("singular Cartan matrix".into()))?;
        let det_q = ExactFraction::from_integer(determinant.clone());
        let adjugate = inverse
            .iter()
            .map(|row| {
                row.iter()
                    .map(|x| {
                        let v = x * &det_q;
                        debug_assert!(v.is_integer());
                        v.to_integer().to_i128().expect("adjugate entry fits in i128")
                    })
                    .collect()
            })
            .collect();
        Ok(Self {
            entries,
            determinant,
            inverse,
            adjugate,
        })
    }

    pub fn rank(&self) -> usize {
        self.entries.len()
    }

    /// 0-based access.
    pub fn entry(&self, i: usize, j: usize) -> i64 {
        self.entries[i][j]
    }

    pub fn entries(&self) -> &[Vec<i64>] {
        &self.entries
    }

    /// Row `i` (0-based): the simple root `α_{i+1}` in Dynkin labels.
    pub fn row(&self, i: usize) -> &[i64] {
        &self.entries[i]
    }

    pub fn determinant(&self) -> &BigInt {
        &self.determinant
    }

    pub fn inverse(&self) -> &[Vec<ExactFraction>] {
        &self.inverse
    }

    /// Smallest positive integers `d_j` with `A[i][j] d_j = A[j][i] d_i`,
    /// i.e. `d_j = (α_j, α_j) / 2` up to scale. The invariant form is then
    /// `(α_i, α_j) = A[i][j] d_j`.
    pub fn symmetrizer(&self) -> Vec<i64> {
        let n = self.rank();
        let mut d: Vec<Option<ExactFraction>> = vec![None; n];
        for start in 0..n {
            if d[start].is_some() {
                continue;
            }
            d[start] = Some(ExactFraction::one());
            let mut stack = vec![start];
            while let Some(i) = stack.pop() {
                for j in 0..n {
                    if i == j || self.entries[i][j] == 0 || d[j].is_some() {
                        continue;
                    }
                    let di = d[i].clone().unwrap();
                    let ratio = ExactFraction::new(
                        BigInt::from(self.entries[j][i]),
                        BigInt::from(self.entries[i][j]),
                    );
                    d[j] = Some(di * ratio);
                    stack.push(j);
                }
            }
        }
        let d: Vec<ExactFraction> = d.into_iter().map(Option::unwrap).collect();
        let lcm = d
            .iter()
            .fold(BigInt::one(), |acc, x| num_integer::Integer::lcm(&acc, x.denom()));
        d.iter()
            .map(|x| (x * ExactFraction::from_integer(lcm.clone())).to_integer().to_i64().unwrap())
            .collect()
    }

    /// Dynkin labels of `Σ_j c_j α_j`.
    pub fn weight_coords_of_root(&self, beta: &RootVector) -> Result<Weight> {
        self.labels_of_root_coords(beta.coeffs())
    }

    /// Same as [`Self::weight_coords_of_root`] but for arbitrary (possibly
    /// negative) root-lattice coordinates.
    pub fn labels_of_root_coords(&self, coeffs: &[i64]) -> Result<Weight> {
        let n = self.rank();
        check_dim(n, coeffs.len())?;
        let labels = (0..n)
            .map(|i| (0..n).map(|j| coeffs[j] * self.entries[j][i]).sum())
            .collect();
        Ok(Weight(labels))
    }

    /// Exact simple-root coordinates of a weight.
    pub fn root_coords_of_weight(&self, w: &Weight) -> Result<Vec<ExactFraction>> {
        let n = self.rank();
        check_dim(n, w.rank())?;
        Ok((0..n)
            .map(|j| {
                (0..n).fold(ExactFraction::zero(), |acc, i| {
                    acc + &self.inverse[i][j] * BigInt::from(w.labels()[i])
                })
            })
            .collect())
    }

    /// Integer simple-root coordinates, or `None` when the weight is not in
    /// the root lattice.
    pub fn root_lattice_coords(&self, w: &Weight) -> Result<Option<Vec<i64>>> {
        let n = self.rank();
        check_dim(n, w.rank())?;
        let det = self.determinant.to_i128().expect("determinant fits in i128");
        let mut out = Vec::with_capacity(n);
        for j in 0..n {
            let num: i128 = (0..n)
                .map(|i| self.adjugate[i][j] * w.labels()[i] as i128)
                .sum();
            if num % det != 0 {
                return Ok(None);
            }
            out.push((num / det) as i64);
        }
        Ok(Some(out))
    }

    /// Weight `w` rewritten as an element of the positive root lattice.
    pub fn positive_root_lattice_coords(&self, w: &Weight) -> Result<RootVector> {
        match self.root_lattice_coords(w)? {
            Some(c) if c.iter().all(|&x| x >= 0) => Ok(RootVector(c)),
            _ => Err(Error::NotInPositiveRootLattice(w.to_string())),
        }
    }
}

/// Cartan matrix of a supported algebra.
///
/// Labeling is Bourbaki for A-D, F and G. The E series follows the E8
/// convention of a chain `1 - 2 - ... - (N-1)` with node `N` attached to node
/// `N-3` (E8: node 8 on node 5).
pub fn cartan_matrix(id: AlgebraId) -> CartanMatrix {
    let n = id.rank();
    let mut a = vec![vec![0i64; n]; n];
    for (i, row) in a.iter_mut().enumerate() {
        row[i] = 2;
    }
    // (i, j, A[i][j], A[j][i]), 1-based nodes
    let mut bonds: Vec<(usize, usize, i64, i64)> = Vec::new();
    match id.family() {
        Family::A => bonds.extend((1..n).map(|i| (i, i + 1, -1, -1))),
        Family::B => {
            bonds.extend((1..n - 1).map(|i| (i, i + 1, -1, -1)));
            bonds.push((n - 1, n, -2, -1));
        }
        Family::C => {
            bonds.extend((1..n - 1).map(|i| (i, i + 1, -1, -1)));
            bonds.push((n - 1, n, -1, -2));
        }
        Family::D => {
            bonds.extend((1..n - 1).map(|i| (i, i + 1, -1, -1)));
            bonds.push((n - 2, n, -1, -1));
        }
        Family::E => {
            bonds.extend((1..n - 1).map(|i| (i, i + 1, -1, -1)));
            bonds.push((n - 3, n, -1, -1));
        }
        Family::F => bonds.extend([(1, 2, -1, -1), (2, 3, -2, -1), (3, 4, -1, -1)]),
        Family::G => bonds.push((1, 2, -1, -3)),
    }
    for (i, j, aij, aji) in bonds {
        a[i - 1][j - 1] = aij;
        a[j - 1][i - 1] = aji;
    }
    CartanMatrix::from_entries(a).expect("built-in Cartan matrices are valid")
}

/// Weyl vector: every Dynkin label equal to one.
pub fn rho(id: AlgebraId) -> Weight {
    Weight(vec![1; id.rank()])
}

pub(crate) fn check_dim(expected: usize, actual: usize) -> Result<()> {
    if expected == actual {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, actual })
    }
}

pub(crate) fn join(v: &[i64]) -> String {
    v.iter().map(i64::to_string).collect::<Vec<_>>().join(",")
}

pub(crate) fn parse_int_list(s: &str) -> Result<Vec<i64>> {
    let s = s.trim().trim_start_matches('(').trim_end_matches(')');
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|t| {
            t.trim()
                .parse::<i64>()
                .map_err(|_| Error::Parse(format!("bad integer {:?} in {:?}", t.trim(), s)))
        })
        .collect()
}

/// Gauss-Jordan elimination over the rationals. Returns the determinant and
/// the inverse, or `None` for a singular matrix.
fn invert(m: &[Vec<i64>]) -> Option<(BigInt, Vec<Vec<ExactFraction>>)> {
    let n = m.len();
    let q = |x: i64| ExactFraction::from_integer(BigInt::from(x));
    let mut a: Vec<Vec<ExactFraction>> = m.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect();
    let mut inv: Vec<Vec<ExactFraction>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { q(1) } else { q(0) }).collect())
        .collect();
    let mut det = ExactFraction::one();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !a[r][col].is_zero())?;
        if pivot != col {
            a.swap(pivot, col);
            inv.swap(pivot, col);
            det = -det;
        }
        let p = a[col][col].clone();
        det *= &p;
        for j in 0..n {
            a[col][j] /= &p;
            inv[col][j] /= &p;
        }
        for r in 0..n {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let f = a[r][col].clone();
            for j in 0..n {
                let (x, y) = (&a[col][j] * &f, &inv[col][j] * &f);
                a[r][j] -= x;
                inv[r][j] -= y;
            }
        }
    }
    debug_assert!(det.is_integer() && !det.is_zero());
    Some((det.to_integer(), inv))
}
