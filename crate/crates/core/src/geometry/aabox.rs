use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::scalar::{self, Scalar};

/// Closed axis-aligned box `[lo_k, hi_k]` per axis, dimension 1..=3.
///
/// Boxes are immutable; operations hand back fresh values.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AxisBox {
    lo: Vec<Scalar>,
    hi: Vec<Scalar>,
}

impl AxisBox {
    pub fn new(lo: Vec<Scalar>, hi: Vec<Scalar>) -> Result<Self> {
        if lo.len() != hi.len() {
            return Err(Error::DimensionMismatch { left: lo.len(), right: hi.len() });
        }
        let d = lo.len();
        if !(1..=3).contains(&d) {
            return Err(Error::InvalidParameter(format!("unsupported dimension {d}")));
        }
        for k in 0..d {
            if lo[k] > hi[k] {
                return Err(Error::InvalidParameter(format!(
                    "axis {k}: lower bound exceeds upper bound"
                )));
            }
        }
        Ok(AxisBox { lo, hi })
    }

    /// Builds from `(lo, hi)` pairs; convenience for literals.
    pub fn from_intervals(iv: Vec<(Scalar, Scalar)>) -> Result<Self> {
        let (lo, hi) = iv.into_iter().unzip();
        AxisBox::new(lo, hi)
    }

    /// The unit cube `[0,1]^d`.
    pub fn unit(d: usize) -> Self {
        AxisBox {
            lo: vec![Scalar::zero(); d],
            hi: vec![Scalar::one(); d],
        }
    }

    pub fn dim(&self) -> usize {
        self.lo.len()
    }

    pub fn lo(&self, axis: usize) -> &Scalar {
        &self.lo[axis]
    }

    pub fn hi(&self, axis: usize) -> &Scalar {
        &self.hi[axis]
    }

    pub fn side(&self, axis: usize) -> Scalar {
        &self.hi[axis] - &self.lo[axis]
    }

    pub fn sides(&self) -> Vec<Scalar> {
        (0..self.dim()).map(|k| self.side(k)).collect()
    }

    pub fn max_side(&self) -> Scalar {
        self.sides().into_iter().max().expect("nonempty")
    }

    pub fn min_side(&self) -> Scalar {
        self.sides().into_iter().min().expect("nonempty")
    }

    /// True when all side lengths agree (a stable cube up to translation).
    pub fn is_cube(&self) -> bool {
        let s = self.side(0);
        (1..self.dim()).all(|k| self.side(k) == s)
    }

    pub fn volume(&self) -> Scalar {
        let mut v = Scalar::one();
        for k in 0..self.dim() {
            v *= self.side(k);
        }
        v
    }

    pub fn center(&self) -> Vec<Scalar> {
        (0..self.dim())
            .map(|k| (&self.lo[k] + &self.hi[k]) / scalar::int(2))
            .collect()
    }

    /// Same side lengths on every axis.
    pub fn is_congruent_to(&self, other: &AxisBox) -> bool {
        self.dim() == other.dim() && (0..self.dim()).all(|k| self.side(k) == other.side(k))
    }

    pub fn contains_box(&self, other: &AxisBox) -> bool {
        self.dim() == other.dim()
            && (0..self.dim()).all(|k| self.lo[k] <= other.lo[k] && other.hi[k] <= self.hi[k])
    }

    pub fn contains_point(&self, p: &[Scalar]) -> bool {
        self.dim() == p.len()
            && (0..self.dim()).all(|k| self.lo[k] <= p[k] && p[k] <= self.hi[k])
    }

    /// Closed intersection; `None` when empty.
    pub fn intersection(&self, other: &AxisBox) -> Option<AxisBox> {
        if self.dim() != other.dim() {
            return None;
        }
        let mut lo = Vec::with_capacity(self.dim());
        let mut hi = Vec::with_capacity(self.dim());
        for k in 0..self.dim() {
            let l = self.lo[k].clone().max(other.lo[k].clone());
            let h = self.hi[k].clone().min(other.hi[k].clone());
            if l > h {
                return None;
            }
            lo.push(l);
            hi.push(h);
        }
        Some(AxisBox { lo, hi })
    }

    /// Nonempty closed intersection (touching counts).
    pub fn touches(&self, other: &AxisBox) -> bool {
        self.intersection(other).is_some()
    }

    /// True when the open interiors intersect on every axis.
    pub fn interior_intersects(&self, other: &AxisBox) -> bool {
        self.dim() == other.dim()
            && (0..self.dim()).all(|k| {
                let l = self.lo[k].clone().max(other.lo[k].clone());
                let h = self.hi[k].clone().min(other.hi[k].clone());
                l < h
            })
    }

    pub fn interior_disjoint(&self, other: &AxisBox) -> bool {
        !self.interior_intersects(other)
    }

    pub fn translate(&self, shift: &[Scalar]) -> AxisBox {
        assert_eq!(self.dim(), shift.len());
        AxisBox {
            lo: (0..self.dim()).map(|k| &self.lo[k] + &shift[k]).collect(),
            hi: (0..self.dim()).map(|k| &self.hi[k] + &shift[k]).collect(),
        }
    }

    /// Clip to the unit cube; `None` when the clipped box is empty.
    pub fn clip_unit(&self) -> Option<AxisBox> {
        self.intersection(&AxisBox::unit(self.dim()))
    }

    /// Squared Euclidean distance between the two closed boxes.
    pub fn dist_sq(&self, other: &AxisBox) -> Scalar {
        assert_eq!(self.dim(), other.dim());
        let mut s = Scalar::zero();
        for k in 0..self.dim() {
            let g1 = &other.lo[k] - &self.hi[k];
            let g2 = &self.lo[k] - &other.hi[k];
            let gap = g1.max(g2).max(Scalar::zero());
            s += &gap * &gap;
        }
        s
    }

    /// Squared diameter (corner-to-corner).
    pub fn diam_sq(&self) -> Scalar {
        let mut s = Scalar::zero();
        for k in 0..self.dim() {
            let side = self.side(k);
            s += &side * &side;
        }
        s
    }
}

impl fmt::Display for AxisBox {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for k in 0..self.dim() {
            if k > 0 {
                write!(f, " x ")?;
            }
            write!(
                f,
                "[{}, {}]",
                scalar::fraction_string(&self.lo[k]),
                scalar::fraction_string(&self.hi[k])
            )?;
        }
        Ok(())
    }
}

/// vol(box ∩ cell) / vol(cell), exact.
///
/// A zero-volume cell yields 0 (such cells carry no mass anywhere in the
/// crate; partitions never produce them).
pub fn overlap_fraction(bx: &AxisBox, cell: &AxisBox) -> Result<Scalar> {
    if bx.dim() != cell.dim() {
        return Err(Error::DimensionMismatch { left: bx.dim(), right: cell.dim() });
    }
    let cv = cell.volume();
    if cv.is_zero() {
        return Ok(Scalar::zero());
    }
    match bx.intersection(cell) {
        Some(i) => Ok(i.volume() / cv),
        None => Ok(Scalar::zero()),
    }
}

/// Scales `bx` about its center by `factor`, axis-wise.
pub fn dilate(bx: &AxisBox, factor: &Scalar) -> Result<AxisBox> {
    if !num_traits::Signed::is_positive(factor) {
        return Err(Error::InvalidFactor);
    }
    let mut lo = Vec::with_capacity(bx.dim());
    let mut hi = Vec::with_capacity(bx.dim());
    for k in 0..bx.dim() {
        let c = (bx.lo(k) + bx.hi(k)) / scalar::int(2);
        let hw = (bx.hi(k) - bx.lo(k)) / scalar::int(2) * factor;
        lo.push(&c - &hw);
        hi.push(&c + &hw);
    }
    Ok(AxisBox { lo, hi })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, rat};

    fn b2(x0: (i64, i64), x1: (i64, i64), y0: (i64, i64), y1: (i64, i64)) -> AxisBox {
        AxisBox::from_intervals(vec![
            (rat(x0.0, x0.1), rat(x1.0, x1.1)),
            (rat(y0.0, y0.1), rat(y1.0, y1.1)),
        ])
        .unwrap()
    }

    #[test]
    fn overlap_identity() {
        let u = AxisBox::unit(2);
        assert_eq!(overlap_fraction(&u, &u).unwrap(), int(1));
    }

    #[test]
    fn overlap_half() {
        let u = AxisBox::unit(2);
        let left = b2((0, 1), (1, 2), (0, 1), (1, 1));
        assert_eq!(overlap_fraction(&left, &u).unwrap(), rat(1, 2));
    }

    #[test]
    fn overlap_quarter() {
        // box=[1/4,3/4]^2, cell=[0,1/2]^2 -> 1/4
        let bx = b2((1, 4), (3, 4), (1, 4), (3, 4));
        let cell = b2((0, 1), (1, 2), (0, 1), (1, 2));
        assert_eq!(overlap_fraction(&bx, &cell).unwrap(), rat(1, 4));
    }

    #[test]
    fn overlap_dimension_mismatch() {
        let u1 = AxisBox::unit(1);
        let u2 = AxisBox::unit(2);
        assert!(matches!(
            overlap_fraction(&u1, &u2),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn dilate_identity_and_double() {
        let u = AxisBox::unit(2);
        assert_eq!(dilate(&u, &int(1)).unwrap(), u);
        let d = dilate(&u, &int(2)).unwrap();
        assert_eq!(d.lo(0), &rat(-1, 2));
        assert_eq!(d.hi(0), &rat(3, 2));
        assert_eq!(d.lo(1), &rat(-1, 2));
        assert_eq!(d.hi(1), &rat(3, 2));
    }

    #[test]
    fn dilate_anisotropic() {
        // dilate([0,1/4]x[0,1/8], 4) -> [-3/8,5/8]x[-3/16,5/16]
        let bx = b2((0, 1), (1, 4), (0, 1), (1, 8));
        let d = dilate(&bx, &int(4)).unwrap();
        assert_eq!(d.lo(0), &rat(-3, 8));
        assert_eq!(d.hi(0), &rat(5, 8));
        assert_eq!(d.lo(1), &rat(-3, 16));
        assert_eq!(d.hi(1), &rat(5, 16));
    }

    #[test]
    fn dilate_rejects_nonpositive() {
        let u = AxisBox::unit(1);
        assert_eq!(dilate(&u, &int(0)).unwrap_err(), Error::InvalidFactor);
        assert_eq!(dilate(&u, &int(-2)).unwrap_err(), Error::InvalidFactor);
    }

    #[test]
    fn dist_and_diam() {
        let a = b2((0, 1), (1, 1), (0, 1), (1, 1));
        let b = b2((2, 1), (3, 1), (0, 1), (1, 1));
        assert_eq!(a.dist_sq(&b), int(1));
        assert_eq!(a.diam_sq(), int(2));
        assert_eq!(a.dist_sq(&a), int(0));
    }
}
