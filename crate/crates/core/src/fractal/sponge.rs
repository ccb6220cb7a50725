use crate::error::{Error, Result};

use super::{SystemKind, SystemSpec};

/// Subdivision depth `n(R)` for a level-n sponge box: the deepest depth
/// satisfying `u^{-n} <= p^{-n-n(R)} < u^{-n+1}`.
///
/// Equivalently, the largest `k >= 0` with `p^{n+k} <= u^n`; the window has
/// multiplicative width `u >= p`, so this choice always satisfies the
/// displayed inequality.
pub fn sponge_depth(spec: &SystemSpec, n: u32) -> Result<u32> {
    if spec.kind() != SystemKind::Sponge {
        return Err(Error::InvalidParameter("sponge depth is defined for sponges".into()));
    }
    if n == 0 {
        return Err(Error::InvalidParameter("level must be at least 1".into()));
    }
    let p = spec.cells_on_axis(0) as u128;
    let u = spec.cells_on_axis(2) as u128;
    let target = u
        .checked_pow(n)
        .ok_or(Error::EnumerationBudget { count: u128::MAX })?;
    let mut k: u32 = 0;
    let mut pw = p
        .checked_pow(n)
        .ok_or(Error::EnumerationBudget { count: u128::MAX })?;
    loop {
        let next = pw.checked_mul(p).ok_or(Error::EnumerationBudget { count: u128::MAX })?;
        if next > target {
            return Ok(k);
        }
        pw = next;
        k += 1;
    }
}
