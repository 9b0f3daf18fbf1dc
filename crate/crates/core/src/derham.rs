//! Chevalley–Eilenberg cohomology with explicit representatives, and the
//! Lefschetz maps it carries once a symplectic form is fixed.

use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};
use crate::exterior::ExteriorForm;
use crate::lie::LieAlgebraSpec;
use crate::linalg::{kernel_basis, Matrix, Scalar, Subspace};
use crate::symplectic::SymplecticForm;

/// `H^q` with a fixed basis of representatives.
///
/// Representatives are the cocycle basis vectors chosen greedily to extend a
/// basis of the exact forms, so the choice is deterministic.
#[derive(Clone, Debug)]
pub struct CohomologySpace {
    degree: usize,
    cocycles: Subspace,
    exact: Subspace,
    reps: Matrix,
    coord: Matrix,
}

impl CohomologySpace {
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn betti(&self) -> usize {
        self.reps.cols()
    }

    /// `Z^q = ker d`.
    pub fn cocycles(&self) -> &Subspace {
        &self.cocycles
    }

    /// `B^q = im d`.
    pub fn exact(&self) -> &Subspace {
        &self.exact
    }

    /// Representatives as columns in `Λ^q` coordinates.
    pub fn rep_matrix(&self) -> &Matrix {
        &self.reps
    }

    pub fn representatives(&self, spec: &LieAlgebraSpec) -> Vec<ExteriorForm> {
        self.reps.columns().iter().map(|v| ExteriorForm::from_vector(spec.basis(), self.degree, v)).collect()
    }

    /// Class coordinates of a closed vector, or `None` if it is not closed.
    pub fn class_of_vector(&self, v: &[Scalar]) -> Option<Vec<Scalar>> {
        if !self.cocycles.contains(v) {
            return None;
        }
        let full = self.coord.mul_vec(v);
        Some(full[..self.betti()].to_vec())
    }

    pub fn class_of(&self, spec: &LieAlgebraSpec, form: &ExteriorForm) -> Result<Vec<Scalar>> {
        self.class_of_vector(&form.to_vector(spec.basis()))
            .ok_or_else(|| Error::NotClosed(form.to_string()))
    }

    /// Class coordinates for each column of `m`; every column must be closed.
    pub fn classes_of_columns(&self, m: &Matrix) -> Matrix {
        let restricted = self.coord.mul(m);
        let rows: Vec<usize> = (0..self.betti()).collect();
        restricted.transpose().select_columns(&rows).transpose()
    }

    /// Closed forms in `Λ^q` coordinates representing the given classes
    /// (columns of `classes`).
    pub fn lift(&self, classes: &Matrix) -> Matrix {
        self.reps.mul(classes)
    }
}

pub fn cohomology_basis(spec: &LieAlgebraSpec, q: usize) -> CohomologySpace {
    let cocycles = kernel_basis(spec.differential(q));
    let exact = if q == 0 {
        Subspace::zero(spec.basis().len(0))
    } else {
        Subspace::span(spec.differential(q - 1))
    };
    let picks = exact.extend_with(cocycles.basis());
    let reps = cocycles.basis().select_columns(&picks);
    let coord = reps
        .hstack(exact.basis())
        .left_inverse()
        .unwrap_or_else(|| Matrix::zeros(0, spec.basis().len(q as isize)));
    CohomologySpace { degree: q, cocycles, exact, reps, coord }
}

/// All cohomology spaces of an algebra, computed once and shared.
#[derive(Clone, Debug)]
pub struct DeRham {
    spaces: Vec<CohomologySpace>,
}

impl DeRham {
    pub fn new(spec: &LieAlgebraSpec) -> Self {
        DeRham { spaces: (0..=spec.dim()).map(|q| cohomology_basis(spec, q)).collect() }
    }

    /// `H^q`; degrees outside `0..=dim` are not stored.
    pub fn space(&self, q: usize) -> &CohomologySpace {
        &self.spaces[q]
    }

    pub fn betti(&self, q: isize) -> usize {
        if q < 0 {
            return 0;
        }
        self.spaces.get(q as usize).map_or(0, CohomologySpace::betti)
    }

    pub fn betti_numbers(&self) -> Vec<usize> {
        self.spaces.iter().map(CohomologySpace::betti).collect()
    }
}

pub fn betti_numbers(spec: &LieAlgebraSpec) -> Vec<usize> {
    let b: Vec<usize> = (0..=spec.dim())
        .map(|q| {
            let d = spec.differential(q);
            let prev = if q == 0 { 0 } else { spec.differential(q - 1).rank() };
            d.cols() - d.rank() - prev
        })
        .collect();
    debug_assert_eq!(b.iter().enumerate().map(|(q, &x)| if q % 2 == 0 { x as i64 } else { -(x as i64) }).sum::<i64>(), 0);
    b
}

/// A symplectic form together with the de Rham data of its algebra and
/// cached Lefschetz maps on cohomology.
pub struct SymplecticContext {
    omega: SymplecticForm,
    derham: Arc<DeRham>,
    lefschetz: Vec<Vec<OnceLock<Matrix>>>,
}

impl std::fmt::Debug for SymplecticContext {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("SymplecticContext").field("omega", &self.omega).finish()
    }
}

impl SymplecticContext {
    pub fn new(omega: SymplecticForm) -> Self {
        let derham = Arc::new(DeRham::new(omega.spec()));
        Self::with_derham(omega, derham)
    }

    /// Reuses de Rham data already computed for the same algebra.
    pub fn with_derham(omega: SymplecticForm, derham: Arc<DeRham>) -> Self {
        let (n, dim) = (omega.n(), omega.dim());
        SymplecticContext {
            lefschetz: (0..=n).map(|_| (0..=dim).map(|_| OnceLock::new()).collect()).collect(),
            omega,
            derham,
        }
    }

    pub fn omega(&self) -> &SymplecticForm {
        &self.omega
    }

    pub fn spec(&self) -> &LieAlgebraSpec {
        self.omega.spec()
    }

    pub fn derham(&self) -> &Arc<DeRham> {
        &self.derham
    }

    pub fn n(&self) -> usize {
        self.omega.n()
    }

    pub fn dim(&self) -> usize {
        self.omega.dim()
    }

    pub fn betti(&self, q: isize) -> usize {
        self.derham.betti(q)
    }

    /// Coordinates of `[ω]` in `H^2`.
    pub fn omega_class(&self) -> Vec<Scalar> {
        self.derham
            .space(2)
            .class_of(self.spec(), self.omega.omega())
            .expect("symplectic form is closed")
    }

    /// `L^k: H^q → H^{q+2k}` in the representative bases. Degrees beyond the
    /// top give maps to or from the zero space.
    pub fn lefschetz_on_cohomology(&self, k: usize, q: usize) -> &Matrix {
        let dim = self.dim();
        self.lefschetz[k][q.min(dim)].get_or_init(|| {
            let target = q + 2 * k;
            if q > dim || target > dim {
                return Matrix::zeros(self.betti(target as isize), self.betti(q as isize));
            }
            let src = self.derham.space(q);
            let images = self.omega.lefschetz_power(k, q).mul(src.rep_matrix());
            self.derham.space(target).classes_of_columns(&images)
        })
    }

    pub fn lefschetz_rank(&self, k: usize, q: isize) -> usize {
        if q < 0 || q as usize > self.dim() {
            return 0;
        }
        self.lefschetz_on_cohomology(k, q as usize).rank()
    }

    /// `P^q = ker(L^{n−q+1}: H^q → H^{2n−q+2})`, for `q ≤ n`.
    pub fn primitive_classes(&self, q: usize) -> Result<Subspace> {
        let n = self.n();
        if q > n {
            return Err(Error::DegreeOutOfRange { degree: q, max: n });
        }
        Ok(kernel_basis(self.lefschetz_on_cohomology(n - q + 1, q)))
    }

    /// `dim ker(L: H^q → H^{q+2})`.
    pub fn truncated_dim(&self, q: usize) -> usize {
        let m = self.lefschetz_on_cohomology(1, q);
        m.cols() - m.rank()
    }

    /// Hard Lefschetz condition: `L^k: H^{n−k} → H^{n+k}` onto for all `k`.
    pub fn hard_lefschetz(&self) -> bool {
        let n = self.n();
        (1..=n).all(|k| self.lefschetz_rank(k, (n - k) as isize) == self.betti((n + k) as isize))
    }

    /// Gram matrix of `([α], [β]) ↦ ∫ α ∧ β ∧ ω^k` on `H^{n−k}`.
    pub fn middle_pairing(&self, k: usize) -> Matrix {
        let n = self.n();
        let space = self.derham.space(n - k);
        let basis = self.spec().basis();
        let top = basis.top_mask();
        let reps = space.representatives(self.spec());
        let wk = self.omega.power(k);
        let rows = reps
            .iter()
            .map(|a| reps.iter().map(|b| a.wedge(b).wedge(wk).coeff(top)).collect())
            .collect();
        Matrix::from_rows(rows)
    }
}

pub fn lefschetz_on_cohomology(omega: &SymplecticForm, k: usize, q: usize) -> Matrix {
    SymplecticContext::new(omega.clone()).lefschetz_on_cohomology(k, q).clone()
}

pub fn primitive_classes(omega: &SymplecticForm, q: usize) -> Result<Subspace> {
    SymplecticContext::new(omega.clone()).primitive_classes(q)
}

pub fn truncated_dim(omega: &SymplecticForm, q: usize) -> usize {
    SymplecticContext::new(omega.clone()).truncated_dim(q)
}
