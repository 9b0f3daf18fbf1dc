//! Symplectic forms on a Lie algebra: Lefschetz powers, the dual bivector,
//! the symplectic star and the codifferential `δ`.

use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};
use crate::exterior::{mask_indices, wedge_sign, ExteriorForm};
use crate::lie::LieAlgebraSpec;
use crate::linalg::{Matrix, Scalar};

/// A closed nondegenerate 2-form on a `2n`-dimensional Lie algebra.
///
/// The Gram matrix, its inverse and the powers `ω^0, …, ω^n` are computed at
/// construction; operator matrices are built on first use.
pub struct SymplecticForm {
    spec: Arc<LieAlgebraSpec>,
    omega: ExteriorForm,
    n: usize,
    gram: Matrix,
    pi_matrix: Matrix,
    powers: Vec<ExteriorForm>,
    volume: Scalar,
    lefschetz: Vec<Vec<OnceLock<Matrix>>>,
    stars: Vec<OnceLock<Matrix>>,
    contractions: Vec<OnceLock<Matrix>>,
    deltas: Vec<OnceLock<Matrix>>,
}

impl Clone for SymplecticForm {
    fn clone(&self) -> Self {
        SymplecticForm {
            spec: self.spec.clone(),
            omega: self.omega.clone(),
            n: self.n,
            gram: self.gram.clone(),
            pi_matrix: self.pi_matrix.clone(),
            powers: self.powers.clone(),
            volume: self.volume.clone(),
            lefschetz: self.lefschetz.clone(),
            stars: self.stars.clone(),
            contractions: self.contractions.clone(),
            deltas: self.deltas.clone(),
        }
    }
}

impl std::fmt::Debug for SymplecticForm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("SymplecticForm")
            .field("algebra", &self.spec.name())
            .field("omega", &self.omega.to_string())
            .finish()
    }
}

/// `ω(e_i, e_j)` as an antisymmetric matrix.
pub fn gram_matrix(omega: &ExteriorForm) -> Matrix {
    let dim = omega.dim();
    let mut g = Matrix::zeros(dim, dim);
    for (mask, c) in omega.terms() {
        let idx = mask_indices(mask);
        let (i, j) = (idx[0] - 1, idx[1] - 1);
        g[(i, j)] = c.clone();
        g[(j, i)] = -c;
    }
    g
}

/// True when `d ω = 0` and `ω^n ≠ 0` on the `2n`-dimensional algebra.
pub fn is_symplectic(spec: &LieAlgebraSpec, omega: &ExteriorForm) -> bool {
    let dim = spec.dim();
    dim % 2 == 0
        && omega.degree() == 2
        && omega.dim() == dim
        && spec.differential_form(omega).is_zero()
        && gram_matrix(omega).determinant().signum() != 0
}

impl SymplecticForm {
    pub fn new(spec: Arc<LieAlgebraSpec>, omega: ExteriorForm) -> Result<Self> {
        let dim = spec.dim();
        if omega.degree() != 2 || omega.dim() != dim {
            return Err(Error::NotSymplectic(format!("{omega} is not a 2-form on {dim} generators")));
        }
        if dim % 2 != 0 || dim == 0 {
            return Err(Error::NotSymplectic(format!("dimension {dim} is not even and positive")));
        }
        if !spec.differential_form(&omega).is_zero() {
            return Err(Error::NotClosed(omega.to_string()));
        }
        let n = dim / 2;
        let mut powers = vec![ExteriorForm::one(dim)];
        for k in 1..=n {
            powers.push(powers[k - 1].wedge(&omega));
        }
        let top = powers[n].coeff(spec.basis().top_mask());
        if top.is_zero() {
            return Err(Error::NotSymplectic(format!("{omega} is degenerate (ω^{n} = 0)")));
        }
        let factorial: Scalar = (1..=n as i64).map(Scalar::from_int).fold(Scalar::one(), |a, b| a * b);
        let gram = gram_matrix(&omega);
        let pi_matrix = gram.inverse().ok_or_else(|| Error::Internal("Gram matrix not invertible".into()))?;
        Ok(SymplecticForm {
            n,
            gram,
            pi_matrix,
            volume: top / factorial,
            lefschetz: (0..=n).map(|_| (0..=dim).map(|_| OnceLock::new()).collect()).collect(),
            stars: (0..=dim).map(|_| OnceLock::new()).collect(),
            contractions: (0..=dim).map(|_| OnceLock::new()).collect(),
            deltas: (0..=dim).map(|_| OnceLock::new()).collect(),
            powers,
            spec,
            omega,
        })
    }

    pub fn from_text(spec: Arc<LieAlgebraSpec>, text: &str) -> Result<Self> {
        let omega = crate::notation::parse_form(text, spec.dim(), 2)?;
        Self::new(spec, omega)
    }

    pub fn spec(&self) -> &Arc<LieAlgebraSpec> {
        &self.spec
    }

    pub fn omega(&self) -> &ExteriorForm {
        &self.omega
    }

    /// Half the dimension.
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        2 * self.n
    }

    pub fn gram(&self) -> &Matrix {
        &self.gram
    }

    /// Inverse of the Gram matrix.
    pub fn pi_matrix(&self) -> &Matrix {
        &self.pi_matrix
    }

    /// Component `Π(e^i, e^j)` of the bivector dual to `ω` (zero-indexed),
    /// normalized so that `i(Π) ω = n`.
    pub fn bivector(&self, i: usize, j: usize) -> Scalar {
        self.pi_matrix[(j, i)].clone()
    }

    /// `ω^k`.
    pub fn power(&self, k: usize) -> &ExteriorForm {
        &self.powers[k]
    }

    /// The coefficient `v` in `ω^n / n! = v e^{1…2n}`.
    pub fn volume(&self) -> &Scalar {
        &self.volume
    }

    /// Same form scaled or shifted: a new validated form on the same algebra.
    pub fn with_omega(&self, omega: ExteriorForm) -> Result<Self> {
        SymplecticForm::new(self.spec.clone(), omega)
    }

    fn degree_len(&self, q: isize) -> usize {
        self.spec.basis().len(q)
    }

    /// Matrix of `α ↦ α ∧ ω^k` from `Λ^q` to `Λ^{q+2k}`.
    pub fn lefschetz_power(&self, k: usize, q: usize) -> &Matrix {
        assert!(k <= self.n && q <= self.dim(), "Lefschetz power out of range");
        self.lefschetz[k][q].get_or_init(|| {
            let basis = self.spec.basis();
            let target = q + 2 * k;
            let mut m = Matrix::zeros(self.degree_len(target as isize), self.degree_len(q as isize));
            if target > self.dim() {
                return m;
            }
            for (col, &mask) in basis.masks(q).iter().enumerate() {
                for (m2, c) in self.powers[k].terms() {
                    match wedge_sign(mask, m2) {
                        0 => {}
                        s => m[(basis.position(mask | m2), col)] = if s > 0 { c.clone() } else { -c },
                    }
                }
            }
            m
        })
    }

    /// Contraction `i(Π)` on a homogeneous form; lowers the degree by two.
    pub fn contract_bivector(&self, a: &ExteriorForm) -> ExteriorForm {
        let dim = self.dim();
        if a.degree() < 2 {
            return ExteriorForm::zero(dim, 0);
        }
        let mut out = ExteriorForm::zero(dim, a.degree() - 2);
        for (mask, c) in a.terms() {
            let idx = mask_indices(mask);
            for x in 0..idx.len() {
                for y in x + 1..idx.len() {
                    let p = self.bivector(idx[x] - 1, idx[y] - 1);
                    if p.is_zero() {
                        continue;
                    }
                    // positions are 1-based: sign (-1)^{(x+1)+(y+1)+1}
                    let rest = mask & !(1 << (idx[x] - 1)) & !(1 << (idx[y] - 1));
                    let term = c * &p;
                    if (x + y + 1) % 2 == 0 {
                        out.add_term(rest, &term);
                    } else {
                        out.add_term(rest, &-term);
                    }
                }
            }
        }
        out
    }

    /// Matrix of `i(Π): Λ^q → Λ^{q−2}`.
    pub fn contraction_matrix(&self, q: usize) -> &Matrix {
        self.contractions[q].get_or_init(|| self.operator_matrix(q, q as isize - 2, |f| self.contract_bivector(f)))
    }

    fn operator_matrix(&self, q: usize, target: isize, op: impl Fn(&ExteriorForm) -> ExteriorForm) -> Matrix {
        let basis = self.spec.basis();
        let mut m = Matrix::zeros(self.degree_len(target), self.degree_len(q as isize));
        if target < 0 {
            return m;
        }
        for (col, &mask) in basis.masks(q).iter().enumerate() {
            let image = op(&ExteriorForm::monomial(self.dim(), mask, Scalar::one()));
            for (m2, c) in image.terms() {
                m[(basis.position(m2), col)] = c.clone();
            }
        }
        m
    }

    /// `Λ^q(Π)(e^I, e^J) = det(Π(e^{i_a}, e^{j_b}))`.
    fn pairing(&self, i_mask: u32, j_mask: u32) -> Scalar {
        let (is, js) = (mask_indices(i_mask), mask_indices(j_mask));
        if is.is_empty() {
            return Scalar::one();
        }
        let rows: Vec<Vec<Scalar>> =
            is.iter().map(|&i| js.iter().map(|&j| self.bivector(i - 1, j - 1)).collect()).collect();
        Matrix::from_rows(rows).determinant()
    }

    /// Matrix of the symplectic star `*: Λ^q → Λ^{2n−q}`, defined by
    /// `β ∧ *α = Λ^q(Π)(β, α) ω^n/n!`.
    pub fn star_matrix(&self, q: usize) -> &Matrix {
        self.stars[q].get_or_init(|| {
            let basis = self.spec.basis();
            let top = basis.top_mask();
            let masks = basis.masks(q);
            let mut m = Matrix::zeros(self.degree_len((self.dim() - q) as isize), masks.len());
            for (col, &j_mask) in masks.iter().enumerate() {
                for &i_mask in masks {
                    let lam = self.pairing(i_mask, j_mask);
                    if lam.is_zero() {
                        continue;
                    }
                    let comp = top & !i_mask;
                    let s = wedge_sign(i_mask, comp);
                    let v = &lam * &self.volume;
                    m[(basis.position(comp), col)] = if s > 0 { v } else { -v };
                }
            }
            m
        })
    }

    pub fn symplectic_star(&self, a: &ExteriorForm) -> ExteriorForm {
        let basis = self.spec.basis();
        let v = self.star_matrix(a.degree()).mul_vec(&a.to_vector(basis));
        ExteriorForm::from_vector(basis, self.dim() - a.degree(), &v)
    }

    /// Matrix of `δ = (−1)^{q+1} * d *` on `Λ^q`, cross-checked against
    /// `i(Π) d − d i(Π)`; disagreement is an internal error.
    pub fn delta_matrix(&self, q: usize) -> Result<&Matrix> {
        if let Some(m) = self.deltas[q].get() {
            return Ok(m);
        }
        let dim = self.dim();
        let rows = self.degree_len(q as isize - 1);
        let via_star = if q == 0 {
            Matrix::zeros(rows, 1)
        } else {
            let s1 = self.star_matrix(q);
            let d = self.spec.differential(dim - q);
            let s2 = self.star_matrix(dim - q + 1);
            let m = s2.mul(&d.mul(s1));
            if q % 2 == 0 { m.scale(&-Scalar::one()) } else { m }
        };
        let cols = self.degree_len(q as isize);
        let i_d = if q + 2 <= dim + 1 && q < dim {
            self.contraction_matrix(q + 1).mul(self.spec.differential(q))
        } else {
            Matrix::zeros(rows, cols)
        };
        let d_i = if q >= 2 {
            self.spec.differential(q - 2).mul(self.contraction_matrix(q))
        } else {
            Matrix::zeros(rows, cols)
        };
        let bracket = i_d.sub(&d_i);
        if bracket != via_star {
            return Err(Error::Internal(format!(
                "δ via the star operator and via [i(Π), d] disagree in degree {q} for ω = {}",
                self.omega
            )));
        }
        Ok(self.deltas[q].get_or_init(|| via_star))
    }

    pub fn delta(&self, a: &ExteriorForm) -> Result<ExteriorForm> {
        let basis = self.spec.basis();
        if a.degree() == 0 {
            return Ok(ExteriorForm::zero(self.dim(), 0));
        }
        let v = self.delta_matrix(a.degree())?.mul_vec(&a.to_vector(basis));
        Ok(ExteriorForm::from_vector(basis, a.degree() - 1, &v))
    }

    /// `L^k: Λ^{n−k} → Λ^{n+k}` is an isomorphism for every `1 ≤ k ≤ n`.
    pub fn check_linear_lefschetz(&self) -> bool {
        (1..=self.n).all(|k| {
            let m = self.lefschetz_power(k, self.n - k);
            m.rows() == m.cols() && m.rank() == m.rows()
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::notation::parse_form;

    fn form(spec: &str, omega: &str) -> SymplecticForm {
        let g = Arc::new(LieAlgebraSpec::parse_salamon(spec).unwrap());
        SymplecticForm::from_text(g, omega).unwrap()
    }

    #[test]
    fn torus_volume_and_trace() {
        let w = form("(0,0,0,0,0,0)", "12+34+56");
        assert_eq!(w.power(3).coeff(0b111111), Scalar::from_int(6));
        assert_eq!(*w.volume(), Scalar::one());
        let trace = w.contract_bivector(w.omega());
        assert_eq!(trace, ExteriorForm::monomial(6, 0, Scalar::from_int(3)));
        assert_eq!(w.lefschetz_power(3, 0).rank(), 1);
        assert!(w.check_linear_lefschetz());
    }

    #[test]
    fn contraction_respects_pairs() {
        let w = form("(0,0,0,0)", "12+34");
        let e13 = parse_form("13", 4, 2).unwrap();
        assert!(w.contract_bivector(&e13).is_zero());
        assert!(w.contract_bivector(&parse_form("1", 4, 1).unwrap()).is_zero());
    }

    #[test]
    fn rejections() {
        let g = Arc::new(LieAlgebraSpec::parse_salamon("(0,0,0,0,0,0)").unwrap());
        assert!(matches!(SymplecticForm::from_text(g.clone(), "12+34"), Err(Error::NotSymplectic(_))));
        let kt = Arc::new(LieAlgebraSpec::parse_salamon("(0,0,0,12)").unwrap());
        assert!(matches!(SymplecticForm::from_text(kt.clone(), "34+12"), Err(Error::NotClosed(_))));
        assert!(is_symplectic(&kt, &parse_form("13+24", 4, 2).unwrap()));
        assert!(!is_symplectic(&g, &parse_form("12+34", 6, 2).unwrap()));
    }

    #[test]
    fn star_is_involutive_and_delta_consistent() {
        for (g, w) in [
            ("(0,0,0,12)", "13+24"),
            ("(0,0,0,12,14,15+23+24)", "13+26-45"),
            ("(0,0,12,13,14,15)", "16+25-34"),
            ("(13,-23,0,0)", "12+3*34"),
        ] {
            let w = form(g, w);
            let dim = w.dim();
            for q in 0..=dim {
                let ss = w.star_matrix(dim - q).mul(w.star_matrix(q));
                assert_eq!(ss, Matrix::identity(ss.rows()), "** on degree {q}");
                let d = w.delta_matrix(q).unwrap();
                if q >= 2 {
                    assert!(w.delta_matrix(q - 1).unwrap().mul(d).is_zero(), "δ² in degree {q}");
                }
            }
            assert!(w.delta(w.omega()).unwrap().is_zero());
            let top = w.spec().basis().top_mask();
            let vol = ExteriorForm::monomial(dim, top, w.volume().clone());
            assert_eq!(w.symplectic_star(&ExteriorForm::one(dim)), vol);
            assert_eq!(w.symplectic_star(&vol), ExteriorForm::one(dim));
        }
    }
}
