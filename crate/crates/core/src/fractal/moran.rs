use crate::error::{Error, Result};
use crate::geometry::AxisBox;
use crate::scalar::Scalar;
use crate::Budget;

use super::level::level_box;
use super::word::Word;
use super::{SystemKind, SystemSpec};

/// One interval of a Moran cover: the grid-column extension word (cells on
/// the covered axis) and the exact subinterval it spans.
#[derive(Debug, Clone)]
pub struct CoverInterval {
    pub columns: Vec<usize>,
    pub lo: Scalar,
    pub hi: Scalar,
}

impl CoverInterval {
    pub fn width(&self) -> Scalar {
        &self.hi - &self.lo
    }

    pub fn depth(&self) -> usize {
        self.columns.len()
    }
}

/// Width-matched cover of a rectangle's longer side by subdivision
/// intervals. Every interval `I` satisfies `a_min * |I| < b <= |I|` where
/// `b` is the short side; intervals tile the covered side, so coverage and
/// interior disjointness hold by construction.
#[derive(Debug, Clone)]
pub struct MoranCover {
    pub word: Word,
    pub rect: AxisBox,
    /// Axis being covered (the longer side; ties go to axis 0).
    pub axis: usize,
    /// Short side length `b`.
    pub short: Scalar,
    /// Minimal subdivision ratio on the covered axis.
    pub a_min: Scalar,
    pub intervals: Vec<CoverInterval>,
}

impl MoranCover {
    pub fn count(&self) -> usize {
        self.intervals.len()
    }

    pub fn ell_max(&self) -> usize {
        self.intervals.iter().map(|c| c.depth()).max().unwrap_or(0)
    }
}

/// Builds the Moran cover of the box addressed by `r_word`.
///
/// Orientation follows the rectangle: the longer side is covered; when the
/// height exceeds the width the roles of the axes swap. The cover descends
/// the full grid on the covered axis, stopping each branch at the first
/// width inside `[b, b/a_min)`.
pub fn moran_cover(spec: &SystemSpec, r_word: &Word, budget: &Budget) -> Result<MoranCover> {
    if spec.kind() != SystemKind::Carpet {
        return Err(Error::InvalidParameter("Moran covers are defined for carpets".into()));
    }
    let rect = level_box(spec, r_word)?;
    let (axis, other) = if rect.side(0) >= rect.side(1) { (0, 1) } else { (1, 0) };
    let short = rect.side(other);
    let a_min = spec.min_ratio(axis);

    let mut intervals = Vec::new();
    let mut count: u64 = 0;
    walk(
        spec,
        axis,
        rect.lo(axis).clone(),
        rect.side(axis),
        &short,
        &a_min,
        &mut Vec::new(),
        &mut intervals,
        &mut count,
        budget,
    )?;
    Ok(MoranCover {
        word: r_word.clone(),
        rect,
        axis,
        short,
        a_min,
        intervals,
    })
}

#[allow(clippy::too_many_arguments)]
fn walk(
    spec: &SystemSpec,
    axis: usize,
    lo: Scalar,
    width: Scalar,
    short: &Scalar,
    a_min: &Scalar,
    columns: &mut Vec<usize>,
    out: &mut Vec<CoverInterval>,
    count: &mut u64,
    budget: &Budget,
) -> Result<()> {
    // branch qualifies once a_min * width < b; width >= b is an invariant
    // (the root is the longer side and children shrink by at most a_min)
    if &(a_min * &width) < short {
        *count += 1;
        budget.check(*count as u128)?;
        out.push(CoverInterval {
            columns: columns.clone(),
            lo: lo.clone(),
            hi: &lo + &width,
        });
        return Ok(());
    }
    for c in 0..spec.cells_on_axis(axis) {
        let clo = &lo + &width * &spec.level1_breaks(axis)[c];
        let cw = &width * &spec.ratios(axis)[c];
        columns.push(c);
        walk(spec, axis, clo, cw, short, a_min, columns, out, count, budget)?;
        columns.pop();
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    fn check_bullets(spec: &SystemSpec, cover: &MoranCover) {
        // width window, half-open exactly as printed: a_min|I| < b <= |I|
        for iv in &cover.intervals {
            let w = iv.width();
            assert!(&cover.a_min * &w < cover.short, "lower window edge violated");
            assert!(cover.short <= w, "upper window edge violated");
        }
        // interior disjointness and exact tiling of the covered side imply
        // the coverage bullet
        let mut edges: Vec<(Scalar, Scalar)> =
            cover.intervals.iter().map(|iv| (iv.lo.clone(), iv.hi.clone())).collect();
        edges.sort();
        for pair in edges.windows(2) {
            assert!(pair[0].1 <= pair[1].0, "interval interiors overlap");
            assert_eq!(pair[0].1, pair[1].0, "gap in the cover");
        }
        assert_eq!(edges.first().unwrap().0, cover.rect.lo(cover.axis).clone());
        assert_eq!(edges.last().unwrap().1, cover.rect.hi(cover.axis).clone());
        let _ = spec;
    }

    #[test]
    fn baranski_cover_is_the_interval_itself() {
        // a=(1/2,1/2), b=(1/3,1/3,1/3), R = level-1 [0,1/2]x[0,1/3]:
        // 1/4 < 1/3 <= 1/2 admits I_a itself, N(R)=1
        let s = SystemSpec::carpet(
            vec![rat(1, 2), rat(1, 2)],
            vec![rat(1, 3), rat(1, 3), rat(1, 3)],
            vec![(0, 0), (1, 1)],
        )
        .unwrap();
        let w = Word(vec![0]);
        let cover = moran_cover(&s, &w, &Budget::default()).unwrap();
        assert_eq!(cover.count(), 1);
        assert_eq!(cover.intervals[0].depth(), 0);
        assert_eq!(cover.intervals[0].width(), rat(1, 2));
        check_bullets(&s, &cover);
    }

    #[test]
    fn bm_cover_subdivides_once() {
        // BM p=2,q=4, level-1 R: two depth-1 intervals of length 1/4
        let s = SystemSpec::bedford_mcmullen(2, 4, vec![(0, 0), (1, 2), (0, 2)]).unwrap();
        let cover = moran_cover(&s, &Word(vec![0]), &Budget::default()).unwrap();
        assert_eq!(cover.count(), 2);
        assert_eq!(cover.ell_max(), 1);
        for iv in &cover.intervals {
            assert_eq!(iv.width(), rat(1, 4));
        }
        check_bullets(&s, &cover);
    }

    #[test]
    fn swapped_axes_cover() {
        // BM p=4,q=2: height exceeds width, the cover runs along y with N=2
        let s = SystemSpec::bedford_mcmullen(4, 2, vec![(0, 0), (2, 1)]).unwrap();
        let cover = moran_cover(&s, &Word(vec![0]), &Budget::default()).unwrap();
        assert_eq!(cover.axis, 1);
        assert_eq!(cover.count(), 2);
        check_bullets(&s, &cover);
    }

    #[test]
    fn deeper_rectangles_stay_valid() {
        let s = SystemSpec::carpet(
            vec![rat(1, 4), rat(3, 4)],
            vec![rat(2, 5), rat(3, 5)],
            vec![(0, 0), (1, 0), (1, 1)],
        )
        .unwrap();
        let ls = super::super::level::level_set(&s, 3, &Budget::default()).unwrap();
        for b in ls.boxes() {
            let cover = moran_cover(&s, &b.word, &Budget::default()).unwrap();
            check_bullets(&s, &cover);
        }
    }
}
