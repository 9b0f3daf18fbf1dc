//! Dimensions `h_q` of the de Rham classes admitting symplectically harmonic
//! representatives.

use crate::derham::SymplecticContext;
use crate::error::Result;
use crate::linalg::{kernel_basis, Subspace};

#[derive(Clone, Debug)]
pub struct HarmonicProfile {
    /// `H^q_hr` inside `H^q`, in representative coordinates.
    pub subspaces: Vec<Subspace>,
    pub numbers: Vec<usize>,
}

/// `H^q_hr = P^q + L(H^{q−2}_hr)` for `q ≤ n` and
/// `H^q_hr = L^{q−n}(H^{2n−q}_hr)` above the middle degree.
pub fn harmonic_profile(ctx: &SymplecticContext) -> HarmonicProfile {
    let (n, dim) = (ctx.n(), ctx.dim());
    let mut subspaces: Vec<Subspace> = Vec::with_capacity(dim + 1);
    for q in 0..=n {
        let h = if q <= 1 {
            Subspace::full(ctx.betti(q as isize))
        } else {
            let primitive = kernel_basis(ctx.lefschetz_on_cohomology(n - q + 1, q));
            let lifted = subspaces[q - 2].image(ctx.lefschetz_on_cohomology(1, q - 2));
            primitive.sum(&lifted)
        };
        subspaces.push(h);
    }
    for q in n + 1..=dim {
        let h = subspaces[dim - q].image(ctx.lefschetz_on_cohomology(q - n, dim - q));
        subspaces.push(h);
    }
    let numbers = subspaces.iter().map(Subspace::dim).collect();
    HarmonicProfile { subspaces, numbers }
}

/// Independent route: the image in `H^q` of the forms with `dα = 0 = δα`.
pub fn harmonic_numbers_delta_oracle(ctx: &SymplecticContext) -> Result<Vec<usize>> {
    let spec = ctx.spec();
    (0..=ctx.dim())
        .map(|q| {
            let closed = kernel_basis(spec.differential(q));
            let coclosed = if q == 0 {
                Subspace::full(1)
            } else {
                kernel_basis(ctx.omega().delta_matrix(q)?)
            };
            let harmonic = closed.intersection(&coclosed);
            Ok(ctx.derham().space(q).classes_of_columns(harmonic.basis()).rank())
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::LieAlgebraSpec;
    use crate::symplectic::SymplecticForm;
    use std::sync::Arc;

    fn ctx(s: &str, w: &str) -> SymplecticContext {
        let g = Arc::new(LieAlgebraSpec::parse_salamon(s).unwrap());
        SymplecticContext::new(SymplecticForm::from_text(g, w).unwrap())
    }

    #[test]
    fn torus_is_fully_harmonic() {
        let c = ctx("(0,0,0,0,0,0)", "12+34+56");
        let p = harmonic_profile(&c);
        assert_eq!(p.numbers, [1, 6, 15, 20, 15, 6, 1]);
        assert_eq!(harmonic_numbers_delta_oracle(&c).unwrap(), p.numbers);
    }

    #[test]
    fn kodaira_thurston() {
        let c = ctx("(0,0,0,12)", "13+24");
        let p = harmonic_profile(&c);
        assert_eq!(p.numbers, [1, 3, 4, 2, 1]);
        assert_eq!(harmonic_numbers_delta_oracle(&c).unwrap(), p.numbers);
    }

    #[test]
    fn non_hlc_six_dimensional_witness() {
        let c = ctx("(0,0,0,12,14,15+23+24)", "13+26-45");
        let p = harmonic_profile(&c);
        assert_eq!(&p.numbers[3..6], &[5, 4, 2]);
        assert_eq!(harmonic_numbers_delta_oracle(&c).unwrap(), p.numbers);
    }
}
