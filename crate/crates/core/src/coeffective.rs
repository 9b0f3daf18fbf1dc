//! `k`-coeffective forms `C^q = ker(∧ω^k)`, their cohomology and the
//! quotient `Ĥ^{n−k+1}`.

use std::collections::BTreeMap;

use crate::derham::SymplecticContext;
use crate::error::{Error, Result};
use crate::linalg::{kernel_basis, Subspace};

#[derive(Clone, Debug)]
pub struct CoeffectiveLadder {
    pub k: usize,
    pub n: usize,
    /// `C^q` in `Λ^q` coordinates, for `0 ≤ q ≤ 2n`.
    pub spaces: Vec<Subspace>,
    /// `c^{(k)}_q` for `n−k+1 ≤ q ≤ 2n`. The lowest degree is an algebra-level
    /// quantity only.
    pub dims_c: BTreeMap<usize, usize>,
    pub c_hat: usize,
}

impl CoeffectiveLadder {
    pub fn c(&self, q: usize) -> usize {
        self.dims_c.get(&q).copied().unwrap_or(0)
    }

    /// `χ^{(k)} = (−1)^{n−k+1} ĉ_{n−k+1} + Σ_{i ≥ n−k+2} (−1)^i c^{(k)}_i`.
    pub fn chi(&self) -> i64 {
        let low = self.n - self.k + 1;
        let head = sign(low) * self.c_hat as i64;
        head + (low + 1..=2 * self.n).map(|i| sign(i) * self.c(i) as i64).sum::<i64>()
    }
}

pub(crate) fn sign(i: usize) -> i64 {
    if i % 2 == 0 {
        1
    } else {
        -1
    }
}

pub(crate) fn check_k(ctx: &SymplecticContext, k: usize) -> Result<()> {
    if k == 0 || k > ctx.n() {
        Err(Error::KOutOfRange { k, n: ctx.n() })
    } else {
        Ok(())
    }
}

pub fn coeffective_spaces(ctx: &SymplecticContext, k: usize) -> Vec<Subspace> {
    (0..=ctx.dim()).map(|q| kernel_basis(ctx.omega().lefschetz_power(k, q))).collect()
}

pub fn coeffective_ladder(ctx: &SymplecticContext, k: usize) -> Result<CoeffectiveLadder> {
    check_k(ctx, k)?;
    let (n, dim) = (ctx.n(), ctx.dim());
    let spec = ctx.spec();
    let spaces = coeffective_spaces(ctx, k);
    let d_rank: Vec<usize> =
        (0..=dim).map(|q| spec.differential(q).mul(spaces[q].basis()).rank()).collect();
    let dims_c = (n - k + 1..=dim)
        .map(|q| (q, spaces[q].dim() - d_rank[q] - if q == 0 { 0 } else { d_rank[q - 1] }))
        .collect();
    let target_kernel = ctx.lefschetz_on_cohomology(k, n - k + 1);
    let c_hat = target_kernel.cols() - target_kernel.rank();
    Ok(CoeffectiveLadder { k, n, spaces, dims_c, c_hat })
}

/// `ĉ_{n−k+1}` from its definition: `H^{n−k+1}_(k)` modulo the image of the
/// connecting map `[L^k β] ↦ [dβ]` out of the cohomology of `L^k(Λ^*)`.
pub fn c_hat_oracle(ctx: &SymplecticContext, k: usize) -> Result<usize> {
    check_k(ctx, k)?;
    let n = ctx.n();
    let spec = ctx.spec();
    let low = n - k + 1;
    let c_low = kernel_basis(ctx.omega().lefschetz_power(k, low));
    // C^{n−k} = 0, so H^{n−k+1}_(k) is the space of closed coeffective forms
    let closed = c_low.basis().cols() - spec.differential(low).mul(c_low.basis()).rank();
    let d_beta = spec.differential(n - k);
    let cycles_in_image = kernel_basis(&ctx.omega().lefschetz_power(k, low).mul(d_beta));
    let connecting_image = d_beta.mul(cycles_in_image.basis()).rank();
    closed
        .checked_sub(connecting_image)
        .ok_or_else(|| Error::Internal("connecting map image exceeds its target".into()))
}

/// `Σ_{r=n−k+1}^{n+k} (−1)^r b_r`.
pub fn chi_k_betti(ctx: &SymplecticContext, k: usize) -> i64 {
    let n = ctx.n();
    (n - k + 1..=n + k).map(|r| sign(r) * ctx.betti(r as isize) as i64).sum()
}

pub fn chi_k(ctx: &SymplecticContext, k: usize) -> Result<i64> {
    Ok(coeffective_ladder(ctx, k)?.chi())
}
