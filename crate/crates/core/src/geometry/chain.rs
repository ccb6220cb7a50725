use std::collections::{HashMap, VecDeque};

use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::scalar::{int, Scalar};

use super::{dilate, AxisBox};

/// Ordered sequence of congruent boxes in which every consecutive pair has
/// nonempty (closed) intersection.
#[derive(Debug, Clone)]
pub struct BoxChain {
    boxes: Vec<AxisBox>,
}

impl BoxChain {
    pub fn new(boxes: Vec<AxisBox>) -> Result<Self> {
        if boxes.is_empty() {
            return Err(Error::InvalidParameter("empty chain".into()));
        }
        let first = &boxes[0];
        for b in &boxes[1..] {
            if !b.is_congruent_to(first) {
                return Err(Error::NotCongruent);
            }
        }
        for w in boxes.windows(2) {
            if !w[0].touches(&w[1]) {
                return Err(Error::InvalidParameter(
                    "consecutive chain members do not intersect".into(),
                ));
            }
        }
        Ok(BoxChain { boxes })
    }

    pub fn len(&self) -> usize {
        self.boxes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.boxes.is_empty()
    }

    pub fn boxes(&self) -> &[AxisBox] {
        &self.boxes
    }
}

const LATTICE_CAP: u128 = 5_000_000;

/// Connects two congruent boxes inside `region` by a chain of congruent
/// translates found by breadth-first search over the lattice of `a`-translates
/// with step equal to the side of `a`. Every member stays inside the 4-fold
/// concentric enlargement of `region`; the chain length obeys
/// `(4 * max_side(region) / min_side(a))^d`.
pub fn connect_congruent_boxes(region: &AxisBox, a: &AxisBox, b: &AxisBox) -> Result<BoxChain> {
    let d = region.dim();
    if a.dim() != d || b.dim() != d {
        return Err(Error::DimensionMismatch { left: a.dim(), right: b.dim() });
    }
    if !a.is_congruent_to(b) {
        return Err(Error::NotCongruent);
    }
    if !region.contains_box(a) || !region.contains_box(b) {
        return Err(Error::InvalidParameter("endpoints must lie inside the region".into()));
    }
    if a == b {
        return BoxChain::new(vec![a.clone()]);
    }

    let enlarged = dilate(region, &int(4))?;
    let steps: Vec<Scalar> = a.sides();

    // lattice cell k (integer vector) has lower corner a.lo + k*steps
    let cell_box = |k: &[i64]| -> AxisBox {
        let shift: Vec<Scalar> = (0..d).map(|i| &steps[i] * int(k[i])).collect();
        a.translate(&shift)
    };

    // admissible index window per axis: cell must sit inside the enlargement
    let mut lo_idx = vec![0i64; d];
    let mut hi_idx = vec![0i64; d];
    let mut cells: u128 = 1;
    for i in 0..d {
        let lo = ((enlarged.lo(i) - a.lo(i)) / &steps[i]).ceil();
        let hi = ((enlarged.hi(i) - a.lo(i)) / &steps[i]).floor() - int(1);
        lo_idx[i] = lo.to_integer().to_i64().ok_or(Error::EnumerationBudget { count: u128::MAX })?;
        hi_idx[i] = hi.to_integer().to_i64().ok_or(Error::EnumerationBudget { count: u128::MAX })?;
        cells = cells.saturating_mul((hi_idx[i] - lo_idx[i] + 1).max(0) as u128);
    }
    if cells > LATTICE_CAP {
        return Err(Error::EnumerationBudget { count: cells });
    }

    // target: lattice cell containing b's lower corner
    let target: Vec<i64> = (0..d)
        .map(|i| {
            ((b.lo(i) - a.lo(i)) / &steps[i])
                .floor()
                .to_integer()
                .to_i64()
                .expect("target index fits")
        })
        .collect();

    let origin = vec![0i64; d];
    let mut prev: HashMap<Vec<i64>, Vec<i64>> = HashMap::new();
    let mut queue = VecDeque::new();
    prev.insert(origin.clone(), origin.clone());
    queue.push_back(origin.clone());
    let mut found = false;
    while let Some(cur) = queue.pop_front() {
        if cur == target {
            found = true;
            break;
        }
        for i in 0..d {
            for delta in [-1i64, 1] {
                let mut next = cur.clone();
                next[i] += delta;
                if next[i] < lo_idx[i] || next[i] > hi_idx[i] || prev.contains_key(&next) {
                    continue;
                }
                prev.insert(next.clone(), cur.clone());
                queue.push_back(next);
            }
        }
    }
    if !found {
        // the index block between origin and target is always admissible, so
        // this indicates corrupted inputs rather than a reachable state
        return Err(Error::DisjointnessViolation("translate lattice disconnected".into()));
    }

    let mut path = vec![target.clone()];
    let mut cur = target;
    while cur != origin {
        cur = prev[&cur].clone();
        path.push(cur.clone());
    }
    path.reverse();

    let mut boxes: Vec<AxisBox> = path.iter().map(|k| cell_box(k)).collect();
    if boxes.last() != Some(b) {
        boxes.push(b.clone());
    }
    BoxChain::new(boxes)
}
