use num_traits::One;

use crate::error::{Error, Result};
use crate::geometry::{AxisBox, ProductPartition};
use crate::scalar::Scalar;
use crate::Budget;

use super::word::{apply_word, Word};
use super::SystemSpec;

/// One level-n box together with its address word.
#[derive(Debug, Clone)]
pub struct LevelBox {
    pub word: Word,
    pub bbox: AxisBox,
}

/// All `|D|^n` boxes of `E_n` with the underlying level-n product grid.
#[derive(Debug, Clone)]
pub struct LevelSet {
    level: u32,
    spec: SystemSpec,
    partition: ProductPartition,
    boxes: Vec<LevelBox>,
}

impl LevelSet {
    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn spec(&self) -> &SystemSpec {
        &self.spec
    }

    /// Full level-n product grid (all cells, retained or not).
    pub fn partition(&self) -> &ProductPartition {
        &self.partition
    }

    pub fn boxes(&self) -> &[LevelBox] {
        &self.boxes
    }

    pub fn len(&self) -> usize {
        self.boxes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.boxes.is_empty()
    }
}

/// The exact box addressed by a word (image of the unit cube).
pub fn level_box(spec: &SystemSpec, word: &Word) -> Result<AxisBox> {
    Ok(apply_word(spec, word)?.image_of_unit())
}

/// Full product grid at level n: every axis refined n times by its ratios.
pub fn level_partition(spec: &SystemSpec, n: u32, budget: &Budget) -> Result<ProductPartition> {
    let mut axes = Vec::with_capacity(spec.dim());
    for axis in 0..spec.dim() {
        let p = spec.cells_on_axis(axis) as u128;
        let cells = p.checked_pow(n).ok_or(Error::EnumerationBudget { count: u128::MAX })?;
        budget.check(cells)?;
        let mut breaks: Vec<Scalar> = vec![Scalar::from_integer(0.into()), Scalar::one()];
        for _ in 0..n {
            let mut next = Vec::with_capacity((breaks.len() - 1) * spec.cells_on_axis(axis) + 1);
            for w in breaks.windows(2) {
                let size = &w[1] - &w[0];
                next.push(w[0].clone());
                for b in &spec.level1_breaks(axis)[1..spec.cells_on_axis(axis)] {
                    next.push(&w[0] + &size * b);
                }
            }
            next.push(Scalar::one());
            breaks = next;
        }
        axes.push(breaks);
    }
    ProductPartition::new(axes)
}

/// Enumerates all level-n boxes of `E_n`; level 0 is the unit cube.
pub fn level_set(spec: &SystemSpec, n: u32, budget: &Budget) -> Result<LevelSet> {
    budget.check(spec.box_count(n))?;
    let partition = level_partition(spec, n, budget)?;

    let d = spec.dim();
    let mut boxes = Vec::with_capacity(spec.box_count(n) as usize);
    let mut word = Vec::with_capacity(n as usize);
    let lo = vec![Scalar::from_integer(0.into()); d];
    let size = vec![Scalar::one(); d];
    enumerate(spec, n, &mut word, &lo, &size, &mut boxes);
    Ok(LevelSet { level: n, spec: spec.clone(), partition, boxes })
}

fn enumerate(
    spec: &SystemSpec,
    remaining: u32,
    word: &mut Vec<usize>,
    lo: &[Scalar],
    size: &[Scalar],
    out: &mut Vec<LevelBox>,
) {
    if remaining == 0 {
        let hi: Vec<Scalar> = (0..spec.dim()).map(|k| &lo[k] + &size[k]).collect();
        out.push(LevelBox {
            word: Word(word.clone()),
            bbox: AxisBox::new(lo.to_vec(), hi).expect("valid level box"),
        });
        return;
    }
    for idx in 0..spec.digit_count() {
        let cell = spec.digit(idx);
        let mut clo = Vec::with_capacity(spec.dim());
        let mut csize = Vec::with_capacity(spec.dim());
        for a in 0..spec.dim() {
            clo.push(&lo[a] + &size[a] * &spec.level1_breaks(a)[cell[a]]);
            csize.push(&size[a] * &spec.ratios(a)[cell[a]]);
        }
        word.push(idx);
        enumerate(spec, remaining - 1, word, &clo, &csize, out);
        word.pop();
    }
}

/// Proves, by pruned descent, that `bx` is interior-disjoint from every box
/// of `E_n`. Only subtrees whose boxes interior-intersect `bx` are explored,
/// so the check is exact and cheap even at deep levels.
pub fn levelset_interior_disjoint(
    spec: &SystemSpec,
    n: u32,
    bx: &AxisBox,
    budget: &Budget,
) -> Result<bool> {
    let mut visited: u64 = 0;
    let lo = vec![Scalar::from_integer(0.into()); spec.dim()];
    let size = vec![Scalar::one(); spec.dim()];
    descend(spec, n, &lo, &size, bx, budget, &mut visited)
}

fn descend(
    spec: &SystemSpec,
    remaining: u32,
    lo: &[Scalar],
    size: &[Scalar],
    bx: &AxisBox,
    budget: &Budget,
    visited: &mut u64,
) -> Result<bool> {
    *visited += 1;
    if *visited > budget.max_boxes {
        return Err(Error::EnumerationBudget { count: *visited as u128 });
    }
    let d = spec.dim();
    let hi: Vec<Scalar> = (0..d).map(|k| &lo[k] + &size[k]).collect();
    let node = AxisBox::new(lo.to_vec(), hi).expect("valid node box");
    if !node.interior_intersects(bx) {
        return Ok(true);
    }
    if remaining == 0 {
        return Ok(false);
    }
    for idx in 0..spec.digit_count() {
        let cell = spec.digit(idx);
        let mut clo = Vec::with_capacity(d);
        let mut csize = Vec::with_capacity(d);
        for a in 0..d {
            clo.push(&lo[a] + &size[a] * &spec.level1_breaks(a)[cell[a]]);
            csize.push(&size[a] * &spec.ratios(a)[cell[a]]);
        }
        if !descend(spec, remaining - 1, &clo, &csize, bx, budget, visited)? {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, rat, zero};

    #[test]
    fn bm_level2_count_and_sizes() {
        // BM p=2,q=4, |D|=3, n=2 -> 9 boxes of size 1/4 x 1/16
        let s = SystemSpec::bedford_mcmullen(2, 4, vec![(0, 0), (1, 2), (0, 2)]).unwrap();
        let ls = level_set(&s, 2, &Budget::default()).unwrap();
        assert_eq!(ls.len(), 9);
        for b in ls.boxes() {
            assert_eq!(b.bbox.side(0), rat(1, 4));
            assert_eq!(b.bbox.side(1), rat(1, 16));
        }
        assert_eq!(ls.partition().cells_on_axis(0), 4);
        assert_eq!(ls.partition().cells_on_axis(1), 16);
    }

    #[test]
    fn level0_is_unit_cube() {
        let s = SystemSpec::bedford_mcmullen(2, 4, vec![(0, 0)]).unwrap();
        let ls = level_set(&s, 0, &Budget::default()).unwrap();
        assert_eq!(ls.len(), 1);
        assert_eq!(ls.boxes()[0].bbox, AxisBox::unit(2));
    }

    #[test]
    fn baranski_level1_placement() {
        // a=(1/3,2/3), b=(1/2,1/2), D={(0,0),(1,1)} ->
        // [0,1/3]x[0,1/2] and [1/3,1]x[1/2,1]
        let s = SystemSpec::carpet(
            vec![rat(1, 3), rat(2, 3)],
            vec![rat(1, 2), rat(1, 2)],
            vec![(0, 0), (1, 1)],
        )
        .unwrap();
        let ls = level_set(&s, 1, &Budget::default()).unwrap();
        assert_eq!(ls.len(), 2);
        let b0 = &ls.boxes()[0].bbox;
        assert_eq!((b0.lo(0).clone(), b0.hi(0).clone()), (zero(), rat(1, 3)));
        assert_eq!((b0.lo(1).clone(), b0.hi(1).clone()), (zero(), rat(1, 2)));
        let b1 = &ls.boxes()[1].bbox;
        assert_eq!((b1.lo(0).clone(), b1.hi(0).clone()), (rat(1, 3), int(1)));
        assert_eq!((b1.lo(1).clone(), b1.hi(1).clone()), (rat(1, 2), int(1)));
    }

    #[test]
    fn budget_exceeded_reports_count() {
        let s = SystemSpec::bedford_mcmullen(2, 4, vec![(0, 0), (1, 2), (0, 2)]).unwrap();
        let err = level_set(&s, 20, &Budget::new(1000)).unwrap_err();
        assert_eq!(err, Error::EnumerationBudget { count: 3u128.pow(20) });
    }

    #[test]
    fn word_image_matches_level_box() {
        let s = SystemSpec::carpet(
            vec![rat(1, 4), rat(3, 4)],
            vec![rat(2, 5), rat(3, 5)],
            vec![(0, 0), (1, 0), (1, 1)],
        )
        .unwrap();
        let ls = level_set(&s, 3, &Budget::default()).unwrap();
        for b in ls.boxes() {
            assert_eq!(level_box(&s, &b.word).unwrap(), b.bbox);
        }
    }

    #[test]
    fn nesting_groups() {
        let s = SystemSpec::carpet(
            vec![rat(1, 3), rat(2, 3)],
            vec![rat(1, 2), rat(1, 2)],
            vec![(0, 0), (1, 1)],
        )
        .unwrap();
        let coarse = level_set(&s, 2, &Budget::default()).unwrap();
        let fine = level_set(&s, 3, &Budget::default()).unwrap();
        // every fine box lies in exactly one coarse box; each coarse box
        // holds exactly |D| fine boxes
        for cb in coarse.boxes() {
            let inside = fine
                .boxes()
                .iter()
                .filter(|fb| cb.bbox.contains_box(&fb.bbox))
                .count();
            assert_eq!(inside, s.digit_count());
        }
    }

    #[test]
    fn disjoint_descent() {
        let s = SystemSpec::bedford_mcmullen(2, 2, vec![(0, 0), (1, 1)]).unwrap();
        // the excluded cell [1/2,1]x[0,1/2] never meets any E_n interior
        let hole = AxisBox::from_intervals(vec![(rat(1, 2), int(1)), (zero(), rat(1, 2))]).unwrap();
        assert!(levelset_interior_disjoint(&s, 6, &hole, &Budget::default()).unwrap());
        // a box around the origin always intersects E_n
        let corner = AxisBox::from_intervals(vec![(zero(), rat(1, 8)), (zero(), rat(1, 8))]).unwrap();
        assert!(!levelset_interior_disjoint(&s, 6, &corner, &Budget::default()).unwrap());
    }
}
