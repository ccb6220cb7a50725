use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

use super::AxisBox;

/// Product partition of `[0,1]^d` given by strictly increasing breakpoints
/// per axis, starting at 0 and ending at 1. Cells tile the cube with
/// disjoint interiors; they are addressed by per-axis indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProductPartition {
    axes: Vec<Vec<Scalar>>,
}

impl ProductPartition {
    pub fn new(axes: Vec<Vec<Scalar>>) -> Result<Self> {
        let d = axes.len();
        if !(1..=3).contains(&d) {
            return Err(Error::InvalidParameter(format!("unsupported dimension {d}")));
        }
        for (k, br) in axes.iter().enumerate() {
            if br.len() < 2 {
                return Err(Error::InvalidParameter(format!("axis {k}: too few breakpoints")));
            }
            if !br[0].is_zero() || !br[br.len() - 1].is_one() {
                return Err(Error::InvalidParameter(format!(
                    "axis {k}: breakpoints must start at 0 and end at 1"
                )));
            }
            for w in br.windows(2) {
                if w[0] >= w[1] {
                    return Err(Error::InvalidParameter(format!(
                        "axis {k}: breakpoints must be strictly increasing"
                    )));
                }
            }
        }
        Ok(ProductPartition { axes })
    }

    /// Uniform `cells^d` grid.
    pub fn uniform(d: usize, cells: usize) -> Result<Self> {
        let br: Vec<Scalar> = (0..=cells)
            .map(|i| Scalar::new((i as i64).into(), (cells as i64).into()))
            .collect();
        ProductPartition::new(vec![br; d])
    }

    /// Dyadic grid of the given depth per axis.
    pub fn dyadic(d: usize, depth: u32) -> Result<Self> {
        ProductPartition::uniform(d, 1usize << depth)
    }

    pub fn dim(&self) -> usize {
        self.axes.len()
    }

    pub fn breaks(&self, axis: usize) -> &[Scalar] {
        &self.axes[axis]
    }

    pub fn cells_on_axis(&self, axis: usize) -> usize {
        self.axes[axis].len() - 1
    }

    pub fn total_cells(&self) -> u128 {
        (0..self.dim()).map(|k| self.cells_on_axis(k) as u128).product()
    }

    pub fn cell(&self, index: &[usize]) -> AxisBox {
        assert_eq!(index.len(), self.dim());
        let lo = (0..self.dim()).map(|k| self.axes[k][index[k]].clone()).collect();
        let hi = (0..self.dim()).map(|k| self.axes[k][index[k] + 1].clone()).collect();
        AxisBox::new(lo, hi).expect("partition cell is valid")
    }

    /// Index of the cell whose closed interval contains `x` (ties resolve to
    /// the cell with `x` as lower endpoint, except at 1).
    pub fn locate(&self, axis: usize, x: &Scalar) -> usize {
        let br = &self.axes[axis];
        let n = br.len() - 1;
        let mut idx = br.partition_point(|b| b <= x);
        if idx == 0 {
            return 0;
        }
        idx -= 1;
        idx.min(n - 1)
    }

    /// Range of cell indices whose cells overlap `[lo, hi]` with positive
    /// length (empty when the interval is degenerate or outside).
    pub fn overlapping_range(&self, axis: usize, lo: &Scalar, hi: &Scalar) -> std::ops::Range<usize> {
        let br = &self.axes[axis];
        let ncells = br.len() - 1;
        if lo >= hi {
            return 0..0;
        }
        // cell i overlaps iff br[i] < hi and br[i+1] > lo
        let start = br.partition_point(|b| b <= lo).saturating_sub(1);
        let end = br.partition_point(|b| b < hi).min(ncells);
        if start >= end {
            0..0
        } else {
            start..end
        }
    }

    /// Cell index containing `[lo, hi]` entirely inside a single cell, if any.
    pub fn containing_cell(&self, axis: usize, lo: &Scalar, hi: &Scalar) -> Option<usize> {
        let i = self.locate(axis, lo);
        let br = &self.axes[axis];
        if &br[i] <= lo && hi <= &br[i + 1] {
            Some(i)
        } else {
            None
        }
    }

    /// Product of two partitions (concatenates axes).
    pub fn product(&self, other: &ProductPartition) -> Result<ProductPartition> {
        let mut axes = self.axes.clone();
        axes.extend(other.axes.iter().cloned());
        ProductPartition::new(axes)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, rat, zero};

    #[test]
    fn validates_breakpoints() {
        assert!(ProductPartition::new(vec![vec![zero(), int(1)]]).is_ok());
        assert!(ProductPartition::new(vec![vec![zero(), rat(1, 2)]]).is_err());
        assert!(ProductPartition::new(vec![vec![zero(), rat(1, 2), rat(1, 2), int(1)]]).is_err());
    }

    #[test]
    fn locate_and_ranges() {
        let p = ProductPartition::new(vec![vec![zero(), rat(1, 3), rat(2, 3), int(1)]]).unwrap();
        assert_eq!(p.locate(0, &rat(1, 6)), 0);
        assert_eq!(p.locate(0, &rat(1, 3)), 1);
        assert_eq!(p.locate(0, &int(1)), 2);
        assert_eq!(p.overlapping_range(0, &rat(1, 6), &rat(1, 2)), 0..2);
        assert_eq!(p.overlapping_range(0, &rat(1, 3), &rat(2, 3)), 1..2);
        assert_eq!(p.overlapping_range(0, &rat(5, 6), &int(2)), 2..3);
        assert_eq!(p.containing_cell(0, &rat(1, 3), &rat(1, 2)), Some(1));
        assert_eq!(p.containing_cell(0, &rat(1, 6), &rat(1, 2)), None);
    }

    #[test]
    fn cells_tile() {
        let p = ProductPartition::uniform(2, 2).unwrap();
        assert_eq!(p.total_cells(), 4);
        let c = p.cell(&[1, 0]);
        assert_eq!(c.lo(0), &rat(1, 2));
        assert_eq!(c.hi(1), &rat(1, 2));
    }
}
