use super::{solve, LinalgError, Matrix, Scalar};

/// A linear subspace of `ℚ^n`, stored as a matrix whose columns form a basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    ambient_dim: usize,
    basis: Matrix,
}

impl Subspace {
    pub fn zero(ambient_dim: usize) -> Self {
        Subspace { ambient_dim, basis: Matrix::zeros(ambient_dim, 0) }
    }

    pub fn full(ambient_dim: usize) -> Self {
        Subspace { ambient_dim, basis: Matrix::identity(ambient_dim) }
    }

    /// Column span of `m`. Keeps the pivot columns, so the basis is a
    /// subset of the given columns.
    pub fn span(m: &Matrix) -> Self {
        let pivots = m.rref().pivots;
        Subspace { ambient_dim: m.rows(), basis: m.select_columns(&pivots) }
    }

    pub fn span_vectors(ambient_dim: usize, vectors: &[Vec<Scalar>]) -> Self {
        Subspace::span(&Matrix::from_columns(ambient_dim, vectors))
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.cols()
    }

    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn basis_vectors(&self) -> Vec<Vec<Scalar>> {
        self.basis.columns()
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        assert_eq!(v.len(), self.ambient_dim, "vector not in ambient space");
        if v.iter().all(Scalar::is_zero) {
            return true;
        }
        solve(&self.basis, v).is_some()
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.basis.columns().iter().all(|c| other.contains(c))
    }

    /// Coordinates of `v` in this basis, if `v` lies in the subspace.
    pub fn coordinates(&self, v: &[Scalar]) -> Option<Vec<Scalar>> {
        solve(&self.basis, v)
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient_dim, other.ambient_dim, "ambient mismatch");
        Subspace::span(&self.basis.hstack(&other.basis))
    }

    pub fn intersection(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient_dim, other.ambient_dim, "ambient mismatch");
        // A x = B y  <=>  [A | -B] (x, y) = 0
        let stacked = self.basis.hstack(&other.basis.scale(&-Scalar::one()));
        let ker = kernel_basis(&stacked);
        let a_part: Vec<usize> = (0..self.dim()).collect();
        let xs = ker.basis.transpose().select_columns(&a_part).transpose();
        Subspace::span(&self.basis.mul(&xs))
    }

    /// `dim(self / sub)`; `sub` must be contained in `self`.
    pub fn quotient_dim(&self, sub: &Subspace) -> Result<usize, LinalgError> {
        if !sub.is_subspace_of(self) {
            return Err(LinalgError::NotASubspace);
        }
        Ok(self.dim() - sub.dim())
    }

    /// Image under a linear map given by `m` (acting on ambient coordinates).
    pub fn image(&self, m: &Matrix) -> Subspace {
        assert_eq!(m.cols(), self.ambient_dim, "map domain mismatch");
        Subspace::span(&m.mul(&self.basis))
    }

    /// Indices of the columns of `candidates` chosen greedily (left to right)
    /// to extend this subspace's basis.
    pub fn extend_with(&self, candidates: &Matrix) -> Vec<usize> {
        let k = self.dim();
        self.basis
            .hstack(candidates)
            .rref()
            .pivots
            .into_iter()
            .filter(|&p| p >= k)
            .map(|p| p - k)
            .collect()
    }

    /// Deterministic complement spanned by standard basis vectors.
    pub fn standard_complement(&self) -> Matrix {
        let picks = self.extend_with(&Matrix::identity(self.ambient_dim));
        Matrix::identity(self.ambient_dim).select_columns(&picks)
    }
}

/// Basis of the null space of `m`, one vector per free column of its RREF.
pub fn kernel_basis(m: &Matrix) -> Subspace {
    let n = m.cols();
    let ech = m.rref();
    let mut is_pivot = vec![false; n];
    for &p in &ech.pivots {
        is_pivot[p] = true;
    }
    let mut cols = Vec::new();
    for f in (0..n).filter(|&j| !is_pivot[j]) {
        let mut v = vec![Scalar::zero(); n];
        v[f] = Scalar::one();
        for (i, &p) in ech.pivots.iter().enumerate() {
            v[p] = -&ech.reduced[(i, f)];
        }
        cols.push(v);
    }
    Subspace { ambient_dim: n, basis: Matrix::from_columns(n, &cols) }
}

/// Column space of `m`, spanned by its pivot columns.
pub fn image_basis(m: &Matrix) -> Subspace {
    Subspace::span(m)
}

pub fn subspace_sum(a: &Subspace, b: &Subspace) -> Subspace {
    a.sum(b)
}

pub fn subspace_intersection(a: &Subspace, b: &Subspace) -> Subspace {
    a.intersection(b)
}

pub fn quotient_dim(a: &Subspace, b: &Subspace) -> Result<usize, LinalgError> {
    a.quotient_dim(b)
}

pub fn contains(a: &Subspace, v: &[Scalar]) -> bool {
    a.contains(v)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(n: usize, i: usize) -> Vec<Scalar> {
        let mut v = vec![Scalar::zero(); n];
        v[i] = Scalar::one();
        v
    }

    #[test]
    fn kernel_examples() {
        assert_eq!(kernel_basis(&Matrix::identity(3)).dim(), 0);
        assert_eq!(kernel_basis(&Matrix::zeros(2, 3)).dim(), 3);
        let k = kernel_basis(&Matrix::from_i64_rows(&[&[1, 1]]));
        assert_eq!(k.dim(), 1);
        assert!(k.contains(&[Scalar::one(), -Scalar::one()]));
    }

    #[test]
    fn quotient_of_full_by_line() {
        let full = Subspace::full(3);
        let line = Subspace::span_vectors(3, &[e(3, 0)]);
        assert_eq!(full.quotient_dim(&line), Ok(2));
        assert_eq!(line.quotient_dim(&full), Err(LinalgError::NotASubspace));
    }

    #[test]
    fn intersection_of_coordinate_planes() {
        let a = Subspace::span_vectors(3, &[e(3, 0), e(3, 1)]);
        let b = Subspace::span_vectors(3, &[e(3, 1), e(3, 2)]);
        let i = a.intersection(&b);
        assert_eq!(i.dim(), 1);
        assert!(i.contains(&e(3, 1)));
        assert_eq!(a.sum(&b).dim(), 3);
    }

    #[test]
    fn complement_is_standard() {
        let line = Subspace::span_vectors(3, &[vec![1.into(), 1.into(), 0.into()]]);
        let comp = line.standard_complement();
        assert_eq!(comp, Matrix::identity(3).select_columns(&[0, 2]));
    }
}
