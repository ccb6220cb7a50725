use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::scalar::{rat, Scalar};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SystemKind {
    Line,
    Carpet,
    Sponge,
}

impl SystemKind {
    pub fn name(&self) -> &'static str {
        match self {
            SystemKind::Line => "line",
            SystemKind::Carpet => "carpet",
            SystemKind::Sponge => "sponge",
        }
    }
}

/// A diagonal self-affine grid system on `[0,1]^d`.
///
/// The unit cube is split by prescribed per-axis ratios into a grid of
/// `p_1 x ... x p_d` cells; a subset of cells (the digits) is retained and
/// the construction is iterated inside each retained cell. Carpets are the
/// `d = 2` case with free column widths and row heights; sponges are the
/// `d = 3` equal-ratio case with `p <= q <= u`.
///
/// Digits are 0-based per-axis cell indices. A full digit set is
/// representable (several diagnostics ask about it) but every operation that
/// needs a hole rejects it via [`SystemSpec::require_nontrivial`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SystemSpec {
    kind: SystemKind,
    ratios: Vec<Vec<Scalar>>,
    breaks1: Vec<Vec<Scalar>>,
    digits: Vec<Vec<usize>>,
}

impl SystemSpec {
    fn build(kind: SystemKind, ratios: Vec<Vec<Scalar>>, mut digits: Vec<Vec<usize>>) -> Result<Self> {
        let d = ratios.len();
        for (axis, rs) in ratios.iter().enumerate() {
            if rs.len() < 2 {
                return Err(Error::InvalidSpec(format!("axis {axis}: need at least 2 cells")));
            }
            let mut sum = Scalar::zero();
            for r in rs {
                if !r.is_positive() {
                    return Err(Error::InvalidSpec(format!("axis {axis}: ratios must be positive")));
                }
                sum += r;
            }
            if !sum.is_one() {
                return Err(Error::InvalidSpec(format!("axis {axis}: ratios must sum to 1")));
            }
        }
        digits.sort();
        digits.dedup();
        if digits.is_empty() {
            return Err(Error::InvalidSpec("digit set is empty".into()));
        }
        for dg in &digits {
            if dg.len() != d {
                return Err(Error::InvalidSpec("digit arity does not match dimension".into()));
            }
            for (axis, &c) in dg.iter().enumerate() {
                if c >= ratios[axis].len() {
                    return Err(Error::InvalidSpec(format!(
                        "digit index {c} out of range on axis {axis}"
                    )));
                }
            }
        }
        let breaks1 = ratios
            .iter()
            .map(|rs| {
                let mut acc = Scalar::zero();
                let mut br = Vec::with_capacity(rs.len() + 1);
                br.push(acc.clone());
                for r in rs {
                    acc += r;
                    br.push(acc.clone());
                }
                let last = br.len() - 1;
                br[last] = Scalar::one();
                br
            })
            .collect();
        Ok(SystemSpec { kind, ratios, breaks1, digits })
    }

    /// 1D system: interval split by `widths`, keeping cells in `digits`.
    pub fn line(widths: Vec<Scalar>, digits: Vec<usize>) -> Result<Self> {
        let digits = digits.into_iter().map(|c| vec![c]).collect();
        Self::build(SystemKind::Line, vec![widths], digits)
    }

    /// Baránski carpet from column widths, row heights and retained cells
    /// `(col, row)`.
    pub fn carpet(
        widths: Vec<Scalar>,
        heights: Vec<Scalar>,
        digits: Vec<(usize, usize)>,
    ) -> Result<Self> {
        let digits = digits.into_iter().map(|(c, r)| vec![c, r]).collect();
        Self::build(SystemKind::Carpet, vec![widths, heights], digits)
    }

    /// Bedford-McMullen carpet: equal ratios `1/p`, `1/q`.
    pub fn bedford_mcmullen(p: usize, q: usize, digits: Vec<(usize, usize)>) -> Result<Self> {
        let widths = vec![rat(1, p as i64); p];
        let heights = vec![rat(1, q as i64); q];
        Self::carpet(widths, heights, digits)
    }

    /// Bedford-McMullen sponge on a `p x q x u` grid with `2 <= p <= q <= u`.
    pub fn sponge(p: usize, q: usize, u: usize, digits: Vec<(usize, usize, usize)>) -> Result<Self> {
        if !(2 <= p && p <= q && q <= u) {
            return Err(Error::InvalidSpec("sponge requires 2 <= p <= q <= u".into()));
        }
        let ratios = vec![
            vec![rat(1, p as i64); p],
            vec![rat(1, q as i64); q],
            vec![rat(1, u as i64); u],
        ];
        let digits = digits.into_iter().map(|(i, j, k)| vec![i, j, k]).collect();
        Self::build(SystemKind::Sponge, ratios, digits)
    }

    pub fn kind(&self) -> SystemKind {
        self.kind
    }

    pub fn dim(&self) -> usize {
        self.ratios.len()
    }

    /// Cells per axis of the level-1 grid.
    pub fn cells_on_axis(&self, axis: usize) -> usize {
        self.ratios[axis].len()
    }

    pub fn ratios(&self, axis: usize) -> &[Scalar] {
        &self.ratios[axis]
    }

    /// Level-1 breakpoints on an axis (prefix sums of the ratios).
    pub fn level1_breaks(&self, axis: usize) -> &[Scalar] {
        &self.breaks1[axis]
    }

    pub fn digit_count(&self) -> usize {
        self.digits.len()
    }

    pub fn digits(&self) -> &[Vec<usize>] {
        &self.digits
    }

    pub fn digit(&self, idx: usize) -> &[usize] {
        &self.digits[idx]
    }

    /// Index of a digit given its per-axis cell, if retained.
    pub fn digit_index(&self, cell: &[usize]) -> Option<usize> {
        self.digits.binary_search_by(|d| d.as_slice().cmp(cell)).ok()
    }

    pub fn full_cell_count(&self) -> u128 {
        (0..self.dim()).map(|a| self.cells_on_axis(a) as u128).product()
    }

    pub fn is_full(&self) -> bool {
        self.digit_count() as u128 == self.full_cell_count()
    }

    /// Fails unless at least one grid cell is excluded.
    pub fn require_nontrivial(&self) -> Result<()> {
        if self.is_full() {
            Err(Error::InvalidSpec("digit set retains every cell; no hole exists".into()))
        } else {
            Ok(())
        }
    }

    pub fn min_ratio(&self, axis: usize) -> Scalar {
        self.ratios[axis].iter().min().expect("nonempty").clone()
    }

    pub fn max_ratio(&self, axis: usize) -> Scalar {
        self.ratios[axis].iter().max().expect("nonempty").clone()
    }

    /// True when all ratios on the axis coincide (every level-n box then has
    /// the same extent on this axis).
    pub fn is_uniform_axis(&self, axis: usize) -> bool {
        let r0 = &self.ratios[axis][0];
        self.ratios[axis].iter().all(|r| r == r0)
    }

    pub fn is_uniform(&self) -> bool {
        (0..self.dim()).all(|a| self.is_uniform_axis(a))
    }

    /// Per-level Lebesgue contraction of the retained set:
    /// the sum over digits of the cell volumes.
    pub fn contraction(&self) -> Scalar {
        let mut total = Scalar::zero();
        for dg in &self.digits {
            let mut v = Scalar::one();
            for (axis, &c) in dg.iter().enumerate() {
                v *= &self.ratios[axis][c];
            }
            total += v;
        }
        total
    }

    /// Number of level-n boxes, `|D|^n`.
    pub fn box_count(&self, n: u32) -> u128 {
        (self.digit_count() as u128).checked_pow(n).unwrap_or(u128::MAX)
    }

    /// Short description used in reports.
    pub fn describe(&self) -> String {
        let dims: Vec<String> = (0..self.dim()).map(|a| self.cells_on_axis(a).to_string()).collect();
        format!(
            "{} {} grid, {} of {} digits",
            self.kind.name(),
            dims.join("x"),
            self.digit_count(),
            self.full_cell_count()
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    #[test]
    fn carpet_validation() {
        assert!(SystemSpec::carpet(
            vec![rat(1, 2), rat(1, 2)],
            vec![rat(1, 3), rat(2, 3)],
            vec![(0, 0)],
        )
        .is_ok());
        // ratios must sum to one
        assert!(SystemSpec::carpet(
            vec![rat(1, 2), rat(1, 3)],
            vec![rat(1, 2), rat(1, 2)],
            vec![(0, 0)],
        )
        .is_err());
        // digit out of range
        assert!(SystemSpec::carpet(
            vec![rat(1, 2), rat(1, 2)],
            vec![rat(1, 2), rat(1, 2)],
            vec![(2, 0)],
        )
        .is_err());
    }

    #[test]
    fn full_digit_set_constructible_but_flagged() {
        let s = SystemSpec::bedford_mcmullen(2, 2, vec![(0, 0), (0, 1), (1, 0), (1, 1)]).unwrap();
        assert!(s.is_full());
        assert!(s.require_nontrivial().is_err());
    }

    #[test]
    fn contraction_bm() {
        let s = SystemSpec::bedford_mcmullen(2, 4, vec![(0, 0), (1, 1), (0, 2)]).unwrap();
        assert_eq!(s.contraction(), rat(3, 8));
    }

    #[test]
    fn sponge_ordering_enforced() {
        assert!(SystemSpec::sponge(3, 2, 4, vec![(0, 0, 0)]).is_err());
        assert!(SystemSpec::sponge(2, 3, 4, vec![(0, 0, 0), (1, 2, 3)]).is_ok());
    }
}
