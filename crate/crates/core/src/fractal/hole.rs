use num_traits::{One, Signed, Zero};

use crate::error::Result;
use crate::geometry::AxisBox;
use crate::scalar::Scalar;

use super::SystemSpec;

/// A stable cube `Q` interior-disjoint from every level-1 box, together with
/// the strip/prism `V_Q` it generates: for carpets the vertical strip
/// `x-range x [0,1]`, for sponges the prism `x-range x y-range x [0,1]`, and
/// for 1D systems `Q` itself.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HoleTemplate {
    pub cube: AxisBox,
    pub strip: AxisBox,
}

impl HoleTemplate {
    pub fn side(&self) -> Scalar {
        self.cube.side(0)
    }
}

/// Largest stable cube inside the closure of `[0,1]^d \ E_1`.
///
/// Ties on the side length resolve to the lexicographically smallest lower
/// corner, comparing coordinates from the last axis to the first (the scan
/// order of the construction figures: rows before columns).
pub fn find_hole(spec: &SystemSpec) -> Result<HoleTemplate> {
    spec.require_nontrivial()?;
    let d = spec.dim();

    let retained = |cell: &[usize]| spec.digit_index(cell).is_some();

    // candidate lower corners: all grid points strictly below 1 per axis
    let mut best: Option<(Scalar, Vec<Scalar>)> = None; // (side, corner)
    let mut corner_idx = vec![0usize; d];
    loop {
        let corner: Vec<Scalar> = (0..d)
            .map(|a| spec.level1_breaks(a)[corner_idx[a]].clone())
            .collect();
        if let Some(side) = max_side_at(spec, &corner, &retained) {
            let better = match &best {
                None => true,
                Some((bs, bc)) => {
                    side > *bs || (side == *bs && rev_lex_less(&corner, bc))
                }
            };
            if better {
                best = Some((side, corner));
            }
        }
        // advance the corner index vector (excluding the upper face)
        let mut a = 0;
        loop {
            if a == d {
                break;
            }
            corner_idx[a] += 1;
            if corner_idx[a] < spec.cells_on_axis(a) {
                break;
            }
            corner_idx[a] = 0;
            a += 1;
        }
        if a == d {
            break;
        }
    }

    let (side, corner) = best.expect("an excluded cell always admits a cube");
    let hi: Vec<Scalar> = corner.iter().map(|c| c + &side).collect();
    let cube = AxisBox::new(corner, hi).expect("valid hole cube");
    let strip = strip_of(spec, &cube);
    Ok(HoleTemplate { cube, strip })
}

/// `V_Q` for a cube: smallest vertical strip (carpet), xy-prism (sponge),
/// or the cube itself (1D).
pub fn strip_of(spec: &SystemSpec, cube: &AxisBox) -> AxisBox {
    let d = spec.dim();
    match d {
        1 => cube.clone(),
        _ => {
            // keep all axes except the last, which spans [0,1]
            let mut lo: Vec<Scalar> = (0..d - 1).map(|a| cube.lo(a).clone()).collect();
            let mut hi: Vec<Scalar> = (0..d - 1).map(|a| cube.hi(a).clone()).collect();
            lo.push(Scalar::zero());
            hi.push(Scalar::one());
            AxisBox::new(lo, hi).expect("valid strip")
        }
    }
}

/// Open set condition with hole: with `V = int([0,1]^d)`, true iff
/// `V \ ∪ f_i(V)` has nonempty interior, i.e. iff at least one grid cell is
/// excluded. The witness is the hole cube from [`find_hole`].
pub fn osch_check(spec: &SystemSpec) -> (bool, Option<HoleTemplate>) {
    if spec.is_full() {
        (false, None)
    } else {
        let hole = find_hole(spec).expect("non-full spec has a hole");
        (true, Some(hole))
    }
}

/// Largest `s` such that the cube at `corner` with side `s` stays inside the
/// union of excluded closed cells (and inside the unit cube); `None` if no
/// positive side works.
fn max_side_at(
    spec: &SystemSpec,
    corner: &[Scalar],
    retained: &dyn Fn(&[usize]) -> bool,
) -> Option<Scalar> {
    let d = spec.dim();
    // room to the unit cube boundary
    let mut cap = Scalar::one();
    for c in corner.iter().take(d) {
        let room = Scalar::one() - c;
        if room < cap {
            cap = room;
        }
    }
    if !cap.is_positive() {
        return None;
    }
    // candidate sides: distances from the corner to later breakpoints
    let mut sides: Vec<Scalar> = Vec::new();
    for a in 0..d {
        for b in spec.level1_breaks(a) {
            let s = b - &corner[a];
            if s.is_positive() && s <= cap {
                sides.push(s);
            }
        }
    }
    sides.sort();
    sides.dedup();
    // containment is monotone in s: take the largest candidate that fits
    for s in sides.iter().rev() {
        if cube_excluded(spec, corner, s, retained) {
            return Some(s.clone());
        }
    }
    None
}

/// True when every grid cell meeting the cube's interior is excluded.
fn cube_excluded(
    spec: &SystemSpec,
    corner: &[Scalar],
    side: &Scalar,
    retained: &dyn Fn(&[usize]) -> bool,
) -> bool {
    let d = spec.dim();
    let mut ranges: Vec<std::ops::Range<usize>> = Vec::with_capacity(d);
    for a in 0..d {
        let breaks = spec.level1_breaks(a);
        let hi = &corner[a] + side;
        let start = breaks.partition_point(|b| b <= &corner[a]).saturating_sub(1);
        let end = breaks.partition_point(|b| b < &hi).min(spec.cells_on_axis(a));
        if start >= end {
            return false;
        }
        ranges.push(start..end);
    }
    let mut idx: Vec<usize> = ranges.iter().map(|r| r.start).collect();
    loop {
        if retained(&idx) {
            return false;
        }
        let mut a = 0;
        loop {
            if a == d {
                return true;
            }
            idx[a] += 1;
            if idx[a] < ranges[a].end {
                break;
            }
            idx[a] = ranges[a].start;
            a += 1;
        }
    }
}

/// Lexicographic comparison over reversed coordinates (last axis first).
fn rev_lex_less(a: &[Scalar], b: &[Scalar]) -> bool {
    for (x, y) in a.iter().rev().zip(b.iter().rev()) {
        if x < y {
            return true;
        }
        if x > y {
            return false;
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, rat, zero};

    #[test]
    fn diagonal_carpet_hole() {
        // p=q=2 equal, D={(0,0),(1,1)} -> Q=[1/2,1]x[0,1/2], V_Q=[1/2,1]x[0,1]
        let s = SystemSpec::bedford_mcmullen(2, 2, vec![(0, 0), (1, 1)]).unwrap();
        let h = find_hole(&s).unwrap();
        assert_eq!(
            h.cube,
            AxisBox::from_intervals(vec![(rat(1, 2), int(1)), (zero(), rat(1, 2))]).unwrap()
        );
        assert_eq!(
            h.strip,
            AxisBox::from_intervals(vec![(rat(1, 2), int(1)), (zero(), int(1))]).unwrap()
        );
    }

    #[test]
    fn single_excluded_square_cell() {
        // p=q=2, D = all but (1,1) -> Q = [1/2,1]^2
        let s = SystemSpec::bedford_mcmullen(2, 2, vec![(0, 0), (0, 1), (1, 0)]).unwrap();
        let h = find_hole(&s).unwrap();
        assert_eq!(
            h.cube,
            AxisBox::from_intervals(vec![(rat(1, 2), int(1)), (rat(1, 2), int(1))]).unwrap()
        );
    }

    #[test]
    fn baranski_inscribed_square() {
        // a=(1/4,3/4), b=(1/2,1/2), D missing (col 1, row 0):
        // Q = side-1/2 square at (1/4, 0)
        let s = SystemSpec::carpet(
            vec![rat(1, 4), rat(3, 4)],
            vec![rat(1, 2), rat(1, 2)],
            vec![(0, 0), (0, 1), (1, 1)],
        )
        .unwrap();
        let h = find_hole(&s).unwrap();
        assert_eq!(h.side(), rat(1, 2));
        assert_eq!(h.cube.lo(0), &rat(1, 4));
        assert_eq!(h.cube.lo(1), &zero());
    }

    #[test]
    fn hole_spans_adjacent_excluded_cells() {
        // 1D: widths (1/4,1/4,1/4,1/4), keep only cell 0: the excluded run
        // [1/4,1] admits a cube (interval) of side 3/4
        let s = SystemSpec::line(vec![rat(1, 4); 4], vec![0]).unwrap();
        let h = find_hole(&s).unwrap();
        assert_eq!(h.cube, AxisBox::from_intervals(vec![(rat(1, 4), int(1))]).unwrap());
        assert_eq!(h.strip, h.cube);
    }

    #[test]
    fn osch_full_grid_false() {
        let s = SystemSpec::bedford_mcmullen(2, 2, vec![(0, 0), (0, 1), (1, 0), (1, 1)]).unwrap();
        let (ok, witness) = osch_check(&s);
        assert!(!ok);
        assert!(witness.is_none());
    }

    #[test]
    fn osch_witness_matches_find_hole() {
        let s = SystemSpec::carpet(
            vec![rat(1, 2), rat(1, 2)],
            vec![rat(1, 3), rat(1, 3), rat(1, 3)],
            vec![(0, 0), (1, 0), (0, 1), (1, 1), (0, 2)],
        )
        .unwrap();
        let (ok, witness) = osch_check(&s);
        assert!(ok);
        assert_eq!(witness.unwrap(), find_hole(&s).unwrap());
    }

    #[test]
    fn sponge_hole() {
        // 2x2x2 sponge missing (1,1,1): Q = [1/2,1]^3, prism spans z
        let digits: Vec<(usize, usize, usize)> = (0..8)
            .map(|i| (i & 1, (i >> 1) & 1, (i >> 2) & 1))
            .filter(|&t| t != (1, 1, 1))
            .collect();
        let s = SystemSpec::sponge(2, 2, 2, digits).unwrap();
        let h = find_hole(&s).unwrap();
        assert_eq!(h.side(), rat(1, 2));
        assert_eq!(h.cube.lo(0), &rat(1, 2));
        assert_eq!(h.strip.lo(2), &zero());
        assert_eq!(h.strip.hi(2), &int(1));
        assert_eq!(h.strip.lo(0), &rat(1, 2));
    }
}
