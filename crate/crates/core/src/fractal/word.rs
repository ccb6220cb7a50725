use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::geometry::AxisBox;
use crate::scalar::Scalar;

use super::SystemSpec;

/// A finite word over a system's retained digit set, stored as indices into
/// the spec's digit list (which guarantees every digit belongs to D).
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Word(pub Vec<usize>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn new(indices: Vec<usize>, spec: &SystemSpec) -> Result<Self> {
        if indices.iter().any(|&i| i >= spec.digit_count()) {
            return Err(Error::InvalidWord);
        }
        Ok(Word(indices))
    }

    /// Builds a word from per-axis cell tuples, validating membership in D.
    pub fn from_cells(cells: &[Vec<usize>], spec: &SystemSpec) -> Result<Self> {
        let mut idx = Vec::with_capacity(cells.len());
        for cell in cells {
            idx.push(spec.digit_index(cell).ok_or(Error::InvalidWord)?);
        }
        Ok(Word(idx))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// Diagonal affine map `x -> scale .* x + shift`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AffineMap {
    pub scale: Vec<Scalar>,
    pub shift: Vec<Scalar>,
}

impl AffineMap {
    pub fn identity(d: usize) -> Self {
        AffineMap {
            scale: vec![Scalar::one(); d],
            shift: vec![Scalar::zero(); d],
        }
    }

    pub fn dim(&self) -> usize {
        self.scale.len()
    }

    /// `self ∘ inner` (apply `inner` first).
    pub fn compose(&self, inner: &AffineMap) -> AffineMap {
        let d = self.dim();
        assert_eq!(d, inner.dim());
        AffineMap {
            scale: (0..d).map(|k| &self.scale[k] * &inner.scale[k]).collect(),
            shift: (0..d).map(|k| &self.scale[k] * &inner.shift[k] + &self.shift[k]).collect(),
        }
    }

    pub fn apply_point(&self, p: &[Scalar]) -> Vec<Scalar> {
        (0..self.dim()).map(|k| &self.scale[k] * &p[k] + &self.shift[k]).collect()
    }

    pub fn image_of(&self, bx: &AxisBox) -> AxisBox {
        let d = self.dim();
        assert_eq!(d, bx.dim());
        let lo = (0..d).map(|k| &self.scale[k] * bx.lo(k) + &self.shift[k]).collect();
        let hi = (0..d).map(|k| &self.scale[k] * bx.hi(k) + &self.shift[k]).collect();
        AxisBox::new(lo, hi).expect("positive scales preserve ordering")
    }

    pub fn image_of_unit(&self) -> AxisBox {
        self.image_of(&AxisBox::unit(self.dim()))
    }
}

/// Map of a single digit: scales by the cell ratios, shifts to the cell's
/// lower corner.
pub fn digit_map(spec: &SystemSpec, digit_idx: usize) -> AffineMap {
    let cell = spec.digit(digit_idx);
    let d = spec.dim();
    AffineMap {
        scale: (0..d).map(|a| spec.ratios(a)[cell[a]].clone()).collect(),
        shift: (0..d).map(|a| spec.level1_breaks(a)[cell[a]].clone()).collect(),
    }
}

/// Composed map `f_σ = f_{i_1} ∘ ... ∘ f_{i_k}`; the empty word gives the
/// identity. The image of the unit cube equals the level-set box of `σ`.
pub fn apply_word(spec: &SystemSpec, word: &Word) -> Result<AffineMap> {
    if word.0.iter().any(|&i| i >= spec.digit_count()) {
        return Err(Error::InvalidWord);
    }
    let mut acc = AffineMap::identity(spec.dim());
    for &i in &word.0 {
        acc = acc.compose(&digit_map(spec, i));
    }
    Ok(acc)
}
