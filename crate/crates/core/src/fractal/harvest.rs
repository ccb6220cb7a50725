use crate::error::{Error, Result};
use crate::geometry::AxisBox;
use crate::scalar::{pow_i, Scalar};
use crate::Budget;

use super::hole::HoleTemplate;
use super::level::{level_box, level_set};
use super::moran::moran_cover;
use super::sponge::sponge_depth;
use super::word::Word;
use super::SystemSpec;

/// Places a unit-coordinate box inside a cell.
fn embed(cell_lo: &[Scalar], cell_size: &[Scalar], unit_box: &AxisBox) -> AxisBox {
    let d = unit_box.dim();
    let lo = (0..d).map(|k| &cell_lo[k] + &cell_size[k] * unit_box.lo(k)).collect();
    let hi = (0..d).map(|k| &cell_lo[k] + &cell_size[k] * unit_box.hi(k)).collect();
    AxisBox::new(lo, hi).expect("embedded box is valid")
}

/// Hole set `G(R)`: one scaled copy of the hole cube per width-matched
/// sub-rectangle of `R`.
///
/// Carpets follow the Moran cover: each cover interval of depth `l` pairs
/// with all `q^l` row extensions, giving full-grid cells of level `n + l`
/// inside `R`; the hole lands in each. Sponges subdivide `R` fully `n(R)`
/// times; 1D systems place the hole straight into `R`. Returned boxes have
/// pairwise disjoint interiors and lie inside `R`.
pub fn hole_harvest(
    spec: &SystemSpec,
    r_word: &Word,
    hole: &HoleTemplate,
    budget: &Budget,
) -> Result<Vec<AxisBox>> {
    spec.require_nontrivial()?;
    let rect = level_box(spec, r_word)?;
    match spec.dim() {
        1 => {
            let lo = vec![rect.lo(0).clone()];
            let size = vec![rect.side(0)];
            Ok(vec![embed(&lo, &size, &hole.cube)])
        }
        2 => {
            let cover = moran_cover(spec, r_word, budget)?;
            let other = 1 - cover.axis;
            let rows = spec.cells_on_axis(other) as u128;
            let mut expected: u128 = 0;
            for iv in &cover.intervals {
                let cnt = rows
                    .checked_pow(iv.depth() as u32)
                    .ok_or(Error::EnumerationBudget { count: u128::MAX })?;
                expected = expected
                    .checked_add(cnt)
                    .ok_or(Error::EnumerationBudget { count: u128::MAX })?;
            }
            budget.check(expected)?;

            let mut holes = Vec::with_capacity(expected as usize);
            for iv in &cover.intervals {
                let mut pieces: Vec<(Scalar, Scalar)> =
                    vec![(rect.lo(other).clone(), rect.side(other))];
                for _ in 0..iv.depth() {
                    let mut next = Vec::with_capacity(pieces.len() * spec.cells_on_axis(other));
                    for (lo, size) in &pieces {
                        for c in 0..spec.cells_on_axis(other) {
                            next.push((
                                lo + size * &spec.level1_breaks(other)[c],
                                size * &spec.ratios(other)[c],
                            ));
                        }
                    }
                    pieces = next;
                }
                for (plo, psize) in pieces {
                    let mut lo = vec![crate::scalar::zero(); 2];
                    let mut size = vec![crate::scalar::zero(); 2];
                    lo[cover.axis] = iv.lo.clone();
                    size[cover.axis] = iv.width();
                    lo[other] = plo;
                    size[other] = psize;
                    holes.push(embed(&lo, &size, &hole.cube));
                }
            }
            Ok(holes)
        }
        3 => {
            let n = r_word.len() as u32;
            let depth = sponge_depth(spec, n)?;
            let dims: Vec<u128> = (0..3)
                .map(|a| {
                    (spec.cells_on_axis(a) as u128)
                        .checked_pow(depth)
                        .ok_or(Error::EnumerationBudget { count: u128::MAX })
                })
                .collect::<Result<_>>()?;
            let expected = dims[0]
                .checked_mul(dims[1])
                .and_then(|v| v.checked_mul(dims[2]))
                .ok_or(Error::EnumerationBudget { count: u128::MAX })?;
            budget.check(expected)?;

            let mut holes = Vec::with_capacity(expected as usize);
            let cell_size: Vec<Scalar> = (0..3)
                .map(|a| rect.side(a) * pow_i(&spec.ratios(a)[0], depth as i64))
                .collect();
            for ix in 0..dims[0] {
                for iy in 0..dims[1] {
                    for iz in 0..dims[2] {
                        let idx = [ix, iy, iz];
                        let lo: Vec<Scalar> = (0..3)
                            .map(|a| {
                                rect.lo(a) + &cell_size[a] * Scalar::from_integer(idx[a].into())
                            })
                            .collect();
                        holes.push(embed(&lo, &cell_size, &hole.cube));
                    }
                }
            }
            Ok(holes)
        }
        d => Err(Error::InvalidParameter(format!("unsupported dimension {d}"))),
    }
}

/// Per-epoch harvest summary.
#[derive(Debug, Clone)]
pub struct Epoch {
    pub level: u64,
    /// Maximum cover count over the epoch's rectangles (sponges: the
    /// subdivision depth `n(R)`, which drives the recurrence there).
    pub n_tilde: u128,
    /// Deepest extension below the epoch level at which holes sit.
    pub ell_max: u32,
    pub hole_count: u128,
    /// Materialized hole boxes, present when the count fits the budget.
    pub holes: Option<Vec<AxisBox>>,
}

/// Epoch levels `n_1 < n_2 < ...` with per-epoch harvests.
///
/// The recurrence is `n_{k+1} = n_k + n~_k + 10`. Epoch-k holes sit inside
/// full-grid cells of level `n_k + ell_max_k` and are interior-disjoint from
/// every deeper carpet level, while epoch-(k+1) content lies inside
/// `E_{n_{k+1}}` boxes; the disjointness check verifies
/// `n_{k+1} >= n_k + ell_max_k + 1` for every pair, which makes the harvests
/// pairwise interior-disjoint exactly.
#[derive(Debug, Clone)]
pub struct HarvestSchedule {
    pub epochs: Vec<Epoch>,
    pub disjoint_verified: bool,
    /// Minimal observed slack `n_{k+1} - (n_k + ell_max_k + 1)`; the paper's
    /// "+10" makes this at least 9 more than strictly needed.
    pub min_slack: Option<i128>,
    /// Set when the schedule stopped early on the enumeration budget; holds
    /// the offending count.
    pub budget_exhausted: Option<u128>,
}

struct EpochStats {
    n_tilde: u128,
    ell_max: u32,
    hole_count: u128,
}

fn uniform_cover_stats(spec: &SystemSpec, n: u64) -> Result<(u128, u32)> {
    // all level-n boxes are congruent: one width-window walk serves them all
    let (a0, a1) = (spec.ratios(0)[0].clone(), spec.ratios(1)[0].clone());
    let (cov, oth) = if a0 >= a1 { (0, 1) } else { (1, 0) };
    let r = spec.ratios(cov)[0].clone();
    let n_i = i64::try_from(n).map_err(|_| Error::EnumerationBudget { count: u128::MAX })?;
    let mut width = pow_i(&r, n_i);
    let short = pow_i(&spec.ratios(oth)[0], n_i);
    let mut ell: u32 = 0;
    while &r * &width >= short {
        width *= &r;
        ell += 1;
    }
    let count = (spec.cells_on_axis(cov) as u128)
        .checked_pow(ell)
        .ok_or(Error::EnumerationBudget { count: u128::MAX })?;
    Ok((count, ell))
}

fn epoch_stats(spec: &SystemSpec, n: u64, budget: &Budget) -> Result<EpochStats> {
    let boxes = (spec.digit_count() as u128)
        .checked_pow(u32::try_from(n).map_err(|_| Error::EnumerationBudget { count: u128::MAX })?)
        .ok_or(Error::EnumerationBudget { count: u128::MAX })?;
    match spec.dim() {
        1 => Ok(EpochStats { n_tilde: 1, ell_max: 0, hole_count: boxes }),
        2 if spec.is_uniform() => {
            let (n_tilde, ell) = uniform_cover_stats(spec, n)?;
            let rows = (spec.cells_on_axis(if spec.ratios(0)[0] >= spec.ratios(1)[0] {
                1
            } else {
                0
            }) as u128)
                .checked_pow(ell)
                .ok_or(Error::EnumerationBudget { count: u128::MAX })?;
            let per_box = n_tilde
                .checked_mul(rows)
                .ok_or(Error::EnumerationBudget { count: u128::MAX })?;
            let hole_count = boxes
                .checked_mul(per_box)
                .ok_or(Error::EnumerationBudget { count: u128::MAX })?;
            Ok(EpochStats { n_tilde, ell_max: ell, hole_count })
        }
        2 => {
            budget.check(boxes)?;
            let ls = level_set(spec, n as u32, budget)?;
            let mut n_tilde: u128 = 0;
            let mut ell_max: u32 = 0;
            let mut hole_count: u128 = 0;
            for b in ls.boxes() {
                let cover = moran_cover(spec, &b.word, budget)?;
                let other = 1 - cover.axis;
                n_tilde = n_tilde.max(cover.count() as u128);
                ell_max = ell_max.max(cover.ell_max() as u32);
                for iv in &cover.intervals {
                    let cnt = (spec.cells_on_axis(other) as u128)
                        .checked_pow(iv.depth() as u32)
                        .ok_or(Error::EnumerationBudget { count: u128::MAX })?;
                    hole_count = hole_count
                        .checked_add(cnt)
                        .ok_or(Error::EnumerationBudget { count: u128::MAX })?;
                }
            }
            Ok(EpochStats { n_tilde, ell_max, hole_count })
        }
        3 => {
            let depth = sponge_depth(spec, n as u32)?;
            let mut per_box: u128 = 1;
            for a in 0..3 {
                let c = (spec.cells_on_axis(a) as u128)
                    .checked_pow(depth)
                    .ok_or(Error::EnumerationBudget { count: u128::MAX })?;
                per_box = per_box
                    .checked_mul(c)
                    .ok_or(Error::EnumerationBudget { count: u128::MAX })?;
            }
            let hole_count = boxes
                .checked_mul(per_box)
                .ok_or(Error::EnumerationBudget { count: u128::MAX })?;
            Ok(EpochStats { n_tilde: depth as u128, ell_max: depth, hole_count })
        }
        d => Err(Error::InvalidParameter(format!("unsupported dimension {d}"))),
    }
}

/// Builds the epoch schedule with `epochs` epochs starting at level `n_1`.
///
/// On budget exhaustion the partial schedule built so far is returned with
/// `budget_exhausted` set.
pub fn harvest_schedule(
    spec: &SystemSpec,
    epochs: u32,
    n_1: u64,
    budget: &Budget,
) -> Result<HarvestSchedule> {
    spec.require_nontrivial()?;
    if epochs < 1 || n_1 < 1 {
        return Err(Error::InvalidParameter("need epochs >= 1 and n_1 >= 1".into()));
    }
    let hole = super::hole::find_hole(spec)?;

    let mut out: Vec<Epoch> = Vec::new();
    let mut level = n_1;
    let mut exhausted = None;
    for _ in 0..epochs {
        let stats = match epoch_stats(spec, level, budget) {
            Ok(s) => s,
            Err(Error::EnumerationBudget { count }) => {
                exhausted = Some(count);
                break;
            }
            Err(e) => return Err(e),
        };
        let boxes_at_level = u32::try_from(level)
            .ok()
            .and_then(|l| (spec.digit_count() as u128).checked_pow(l));
        let holes = match boxes_at_level {
            Some(b)
                if stats.hole_count <= budget.max_boxes as u128
                    && b <= budget.max_boxes as u128 =>
            {
                let ls = level_set(spec, level as u32, budget)?;
                let mut all = Vec::with_capacity(stats.hole_count as usize);
                for bx in ls.boxes() {
                    all.extend(hole_harvest(spec, &bx.word, &hole, budget)?);
                }
                Some(all)
            }
            _ => None,
        };
        out.push(Epoch {
            level,
            n_tilde: stats.n_tilde,
            ell_max: stats.ell_max,
            hole_count: stats.hole_count,
            holes,
        });
        // n_{k+1} = n_k + n~_k + 10
        let step = u64::try_from(stats.n_tilde)
            .ok()
            .and_then(|t| level.checked_add(t))
            .and_then(|v| v.checked_add(10));
        match step {
            Some(next) => level = next,
            None => {
                exhausted = Some(u128::MAX);
                break;
            }
        }
    }

    let mut disjoint = true;
    for j in 0..out.len() {
        for k in (j + 1)..out.len() {
            if out[k].level < out[j].level + out[j].ell_max as u64 + 1 {
                disjoint = false;
            }
        }
    }
    let min_slack = out
        .windows(2)
        .map(|w| w[1].level as i128 - w[0].level as i128 - w[0].ell_max as i128 - 1)
        .min();

    Ok(HarvestSchedule {
        epochs: out,
        disjoint_verified: disjoint,
        min_slack,
        budget_exhausted: exhausted,
    })
}
