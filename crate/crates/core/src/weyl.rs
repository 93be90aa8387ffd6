//! Simple reflections acting on Dynkin labels, words of reflections, step
//! roots along a word, the dominance-length oracle and orbit enumeration.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::algebra::{check_dim, CartanMatrix, Weight};
use crate::error::{Error, Result};
use crate::roots::RootSystem;

pub const DEFAULT_ORBIT_CAP: usize = 10_000_000;

/// Word of 1-based simple-reflection indices.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct WeylWord(Vec<usize>);

/// Which end of a word acts first.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub enum Composition {
    /// `σ_{i_1 i_2}(λ) = σ_{i_1}(σ_{i_2}(λ))`: the rightmost letter acts first.
    #[default]
    Right,
    /// The leftmost letter acts first.
    Left,
}

impl FromStr for Composition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "right" => Ok(Self::Right),
            "left" => Ok(Self::Left),
            other => Err(Error::Parse(format!("composition must be left or right, got {other:?}"))),
        }
    }
}

impl WeylWord {
    pub fn new(letters: Vec<usize>) -> Self {
        Self(letters)
    }

    pub fn letters(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn reversed(&self) -> Self {
        Self(self.0.iter().rev().copied().collect())
    }

    /// The first `k` letters.
    pub fn prefix(&self, k: usize) -> Self {
        Self(self.0[..k].to_vec())
    }

    /// Rewrites the word so that the default right-first application gives
    /// the action requested by `compose`.
    pub fn normalized(&self, compose: Composition) -> Self {
        match compose {
            Composition::Right => self.clone(),
            Composition::Left => self.reversed(),
        }
    }

    pub fn validate(&self, rank: usize) -> Result<()> {
        match self.0.iter().find(|&&i| i == 0 || i > rank) {
            Some(&index) => Err(Error::IndexOutOfRange { index, rank }),
            None => Ok(()),
        }
    }
}

impl fmt::Display for WeylWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.0.iter().map(usize::to_string).collect();
        f.write_str(&s.join(","))
    }
}

impl FromStr for WeylWord {
    type Err = Error;

    /// Comma-separated 1-based letters, e.g. `4,3,2,5`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(Self::default());
        }
        s.split(',')
            .map(|t| {
                t.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::Parse(format!("bad word letter {:?}", t.trim())))
            })
            .collect::<Result<_>>()
            .map(Self)
    }
}

/// `σ_i(w) = w - w_i α_i`, `i` 1-based.
pub fn reflect(w: &Weight, i: usize, cm: &CartanMatrix) -> Result<Weight> {
    let rank = cm.rank();
    check_dim(rank, w.rank())?;
    if i == 0 || i > rank {
        return Err(Error::IndexOutOfRange { index: i, rank });
    }
    let mut out = w.clone();
    reflect_in_place(&mut out, i - 1, cm);
    Ok(out)
}

// 0-based, unchecked.
pub(crate) fn reflect_in_place(w: &mut Weight, i: usize, cm: &CartanMatrix) {
    let k = w.labels()[i];
    if k != 0 {
        for (label, a) in w.labels_mut().iter_mut().zip(cm.row(i)) {
            *label -= k * a;
        }
    }
}

/// Applies `word` to `w`, rightmost letter first. The empty word is the
/// identity.
pub fn apply_word(word: &WeylWord, w: &Weight, cm: &CartanMatrix) -> Result<Weight> {
    check_dim(cm.rank(), w.rank())?;
    word.validate(cm.rank())?;
    let mut out = w.clone();
    for &i in word.letters().iter().rev() {
        reflect_in_place(&mut out, i - 1, cm);
    }
    Ok(out)
}

/// Difference between the images of two consecutive prefixes of a word, in
/// simple-root coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StepRoot {
    pub coeffs: Vec<i64>,
    /// Canonical index when the difference is itself a positive root.
    pub index: Option<usize>,
}

impl StepRoot {
    pub fn is_valid(&self) -> bool {
        self.index.is_some()
    }
}

/// `φ_k = σ_{i_1..i_{k-1}}(w) - σ_{i_1..i_k}(w)` for `k = 1..len(word)`.
///
/// Non-root differences (non-reduced words, or labels other than one at the
/// reflected node) come back with `index == None`.
pub fn step_roots(word: &WeylWord, w: &Weight, rs: &RootSystem) -> Result<Vec<StepRoot>> {
    let cm = rs.cartan();
    check_dim(cm.rank(), w.rank())?;
    word.validate(cm.rank())?;
    let mut previous = w.clone();
    let mut out = Vec::with_capacity(word.len());
    for k in 1..=word.len() {
        let image = apply_word(&word.prefix(k), w, cm)?;
        let diff = previous.checked_sub(&image)?;
        let coeffs = cm
            .root_lattice_coords(&diff)?
            .expect("orbit differences lie in the root lattice");
        let index = rs.index_of_coeffs(&coeffs);
        out.push(StepRoot { coeffs, index });
        previous = image;
    }
    Ok(out)
}

/// Output of [`dominance_reduce`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Reduction {
    pub length: usize,
    /// Reflections in the order they were applied to reach the dominant
    /// weight; as a word, `apply_word(word, dominant) == w`.
    pub word: WeylWord,
    pub dominant: Weight,
}

/// Reflects at the smallest negative label until the weight is dominant.
pub fn dominance_reduce(w: &Weight, cm: &CartanMatrix) -> Result<Reduction> {
    check_dim(cm.rank(), w.rank())?;
    let mut current = w.clone();
    let mut letters = Vec::new();
    while let Some(i) = current.labels().iter().position(|&l| l < 0) {
        reflect_in_place(&mut current, i, cm);
        letters.push(i + 1);
    }
    Ok(Reduction {
        length: letters.len(),
        word: WeylWord(letters),
        dominant: current,
    })
}

/// Dominance length only, without recording the word.
pub fn dominance_length(w: &Weight, cm: &CartanMatrix) -> usize {
    let mut current = w.clone();
    let mut steps = 0;
    while let Some(i) = current.labels().iter().position(|&l| l < 0) {
        reflect_in_place(&mut current, i, cm);
        steps += 1;
    }
    steps
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitElement {
    pub weight: Weight,
    /// Dominance length of the element.
    pub length: usize,
    /// Breadth-first layer in which the element was discovered.
    pub layer: usize,
}

/// Weyl orbit of a dominant weight, in breadth-first discovery order.
#[derive(Debug, Clone)]
pub struct OrbitSet {
    seed: Weight,
    elements: Vec<OrbitElement>,
    position: HashMap<Weight, usize>,
}

impl OrbitSet {
    pub fn seed(&self) -> &Weight {
        &self.seed
    }

    pub fn elements(&self) -> &[OrbitElement] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, w: &Weight) -> bool {
        self.position.contains_key(w)
    }

    pub fn get(&self, w: &Weight) -> Option<&OrbitElement> {
        self.position.get(w).map(|&k| &self.elements[k])
    }

    /// Number of elements of each dominance length.
    pub fn length_histogram(&self) -> Vec<u64> {
        let top = self.elements.iter().map(|e| e.length).max().unwrap_or(0);
        let mut h = vec![0u64; top + 1];
        for e in &self.elements {
            h[e.length] += 1;
        }
        h
    }
}

/// Breadth-first closure of `seed` under all simple reflections. A
/// non-dominant seed is first replaced by its dominant representative.
pub fn orbit(seed: &Weight, cm: &CartanMatrix, cap: usize) -> Result<OrbitSet> {
    let seed = dominance_reduce(seed, cm)?.dominant;
    let mut elements = vec![OrbitElement {
        weight: seed.clone(),
        length: 0,
        layer: 0,
    }];
    let mut position = HashMap::from([(seed.clone(), 0usize)]);
    let mut layer_start = 0;
    let mut layer = 0;
    while layer_start < elements.len() {
        let layer_end = elements.len();
        layer += 1;
        for k in layer_start..layer_end {
            for i in 0..cm.rank() {
                if elements[k].weight.labels()[i] == 0 {
                    continue;
                }
                let mut image = elements[k].weight.clone();
                reflect_in_place(&mut image, i, cm);
                if position.contains_key(&image) {
                    continue;
                }
                if elements.len() >= cap {
                    return Err(Error::OrbitTooLarge { cap });
                }
                let length = dominance_length(&image, cm);
                position.insert(image.clone(), elements.len());
                elements.push(OrbitElement {
                    weight: image,
                    length,
                    layer,
                });
            }
        }
        layer_start = layer_end;
    }
    Ok(OrbitSet {
        seed,
        elements,
        position,
    })
}
