//! Lie algebras given by the differentials of their dual basis, and the
//! Chevalley–Eilenberg complex `(Λ*g*, d)`.

use std::fmt;
use std::sync::{Arc, OnceLock};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exterior::{mask_indices, wedge_sign, ExteriorBasis, ExteriorForm, MAX_DIM};
use crate::linalg::{Matrix, Scalar, Subspace};
use crate::notation;
use crate::poly::characteristic_polynomial;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Source {
    SalamonNotation,
    RawStructureConstants,
}

/// Structural flags of a Lie algebra.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AlgebraFlags {
    pub jacobi_ok: bool,
    pub nilpotent: bool,
    /// Nilpotency step; `None` when not nilpotent.
    pub step: Option<usize>,
    pub solvable: bool,
    pub completely_solvable: bool,
    pub unimodular: bool,
}

/// A Lie algebra `g` described by `d e^i` for the dual basis `e^1, …, e^n`.
///
/// `d` is extended to `Λ*g*` as a degree-one derivation. Differential matrices
/// are built on first use and cached.
pub struct LieAlgebraSpec {
    name: String,
    d1: Vec<ExteriorForm>,
    source: Source,
    basis: Arc<ExteriorBasis>,
    differentials: Vec<OnceLock<Matrix>>,
}

impl Clone for LieAlgebraSpec {
    fn clone(&self) -> Self {
        LieAlgebraSpec {
            name: self.name.clone(),
            d1: self.d1.clone(),
            source: self.source,
            basis: self.basis.clone(),
            differentials: self.differentials.clone(),
        }
    }
}

impl fmt::Debug for LieAlgebraSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("LieAlgebraSpec").field("name", &self.name).field("dim", &self.dim()).finish()
    }
}

impl LieAlgebraSpec {
    /// Builds an algebra from `d e^1, …, d e^n`, checking `d² = 0` on every generator.
    pub fn from_structure_constants(name: impl Into<String>, d1: Vec<ExteriorForm>) -> Result<Self> {
        Self::build(name.into(), d1, Source::RawStructureConstants)
    }

    pub fn parse_salamon(text: &str) -> Result<Self> {
        let d1 = notation::parse_salamon(text)?;
        let name: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        Self::build(name.replace('−', "-"), d1, Source::SalamonNotation)
    }

    pub fn abelian(dim: usize) -> Result<Self> {
        let d1 = vec![ExteriorForm::zero(dim, 2); dim];
        let name = if dim <= 9 { salamon_string(&d1).unwrap() } else { format!("abelian({dim})") };
        Self::build(name, d1, Source::SalamonNotation)
    }

    fn build(name: String, d1: Vec<ExteriorForm>, source: Source) -> Result<Self> {
        let dim = d1.len();
        if dim > MAX_DIM {
            return Err(Error::DimensionTooLarge { dim, limit: MAX_DIM });
        }
        for (i, f) in d1.iter().enumerate() {
            if f.dim() != dim || f.degree() != 2 {
                return Err(Error::Config(format!(
                    "d e^{} must be a 2-form on {dim} generators",
                    i + 1
                )));
            }
        }
        let spec = LieAlgebraSpec {
            name,
            basis: ExteriorBasis::new(dim),
            differentials: (0..=dim).map(|_| OnceLock::new()).collect(),
            d1,
            source,
        };
        for (i, f) in spec.d1.iter().enumerate() {
            let dd = spec.differential_form(f);
            if !dd.is_zero() {
                return Err(Error::NotADifferential { generator: i + 1, obstruction: dd.to_string() });
            }
        }
        Ok(spec)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn dim(&self) -> usize {
        self.d1.len()
    }

    pub fn source(&self) -> Source {
        self.source
    }

    /// `d e^i` for `i = 1..=dim`, zero-indexed.
    pub fn d1(&self) -> &[ExteriorForm] {
        &self.d1
    }

    pub fn basis(&self) -> &Arc<ExteriorBasis> {
        &self.basis
    }

    /// Salamon tuple for this algebra, when every coefficient is an integer
    /// and the dimension is at most 9.
    pub fn salamon(&self) -> Option<String> {
        salamon_string(&self.d1)
    }

    /// `d` applied to an arbitrary homogeneous form.
    pub fn differential_form(&self, a: &ExteriorForm) -> ExteriorForm {
        let dim = self.dim();
        let mut out = ExteriorForm::zero(dim, a.degree() + 1);
        if a.degree() >= dim {
            return out;
        }
        for (mask, c) in a.terms() {
            for (j, idx) in mask_indices(mask).into_iter().enumerate() {
                let bit = 1u32 << (idx - 1);
                let left = mask & (bit - 1);
                let right = mask & !(bit | (bit - 1));
                let sign_j = if j % 2 == 0 { 1 } else { -1 };
                for (m2, c2) in self.d1[idx - 1].terms() {
                    let s = wedge_sign(left, m2) * wedge_sign(left | m2, right);
                    if s == 0 {
                        continue;
                    }
                    let coeff = c * c2;
                    if s * sign_j > 0 {
                        out.add_term(left | m2 | right, &coeff);
                    } else {
                        out.add_term(left | m2 | right, &-coeff);
                    }
                }
            }
        }
        out
    }

    /// Matrix of `d: Λ^q → Λ^{q+1}` in the lexicographic bases.
    pub fn differential(&self, q: usize) -> &Matrix {
        assert!(q <= self.dim(), "degree {q} above dimension {}", self.dim());
        self.differentials[q].get_or_init(|| {
            let basis = &self.basis;
            let rows = basis.len(q as isize + 1);
            let mut m = Matrix::zeros(rows, basis.len(q as isize));
            for (col, &mask) in basis.masks(q).iter().enumerate() {
                let image = self.differential_form(&ExteriorForm::monomial(self.dim(), mask, Scalar::one()));
                for (m2, c) in image.terms() {
                    m[(basis.position(m2), col)] = c.clone();
                }
            }
            m
        })
    }

    /// Matrix of `ad_{e_i}` on `g` (column `j` holds `[e_i, e_j]`), using
    /// `[e_i, e_j] = −Σ_k c^k_{ij} e_k` where `d e^k = Σ_{i<j} c^k_{ij} e^{ij}`.
    pub fn ad(&self, i: usize) -> Matrix {
        let n = self.dim();
        let mut m = Matrix::zeros(n, n);
        for j in 0..n {
            for (k, v) in self.bracket(i, j).into_iter().enumerate() {
                m[(k, j)] = v;
            }
        }
        m
    }

    /// `[e_i, e_j]` in the basis `e_1, …, e_n` (zero-indexed generators).
    pub fn bracket(&self, i: usize, j: usize) -> Vec<Scalar> {
        let n = self.dim();
        let mut v = vec![Scalar::zero(); n];
        if i == j {
            return v;
        }
        let pair = (1u32 << i) | (1u32 << j);
        let sign = if i < j { -1 } else { 1 };
        for (k, dk) in self.d1.iter().enumerate() {
            let c = dk.coeff(pair);
            if !c.is_zero() {
                v[k] = if sign > 0 { c } else { -c };
            }
        }
        v
    }

    fn bracket_span(&self, a: &Subspace, b: &Subspace) -> Subspace {
        let n = self.dim();
        let mut vectors = Vec::new();
        for x in a.basis_vectors() {
            for y in b.basis_vectors() {
                let mut z = vec![Scalar::zero(); n];
                for (i, xi) in x.iter().enumerate().filter(|(_, s)| !s.is_zero()) {
                    for (j, yj) in y.iter().enumerate().filter(|(_, s)| !s.is_zero()) {
                        let coeff = xi * yj;
                        for (k, v) in self.bracket(i, j).iter().enumerate() {
                            z[k] += &(&coeff * v);
                        }
                    }
                }
                vectors.push(z);
            }
        }
        Subspace::span_vectors(n, &vectors)
    }

    /// Lower central series `g ⊇ [g,g] ⊇ [g,[g,g]] ⊇ …` until it stabilizes.
    pub fn lower_central_series(&self) -> Vec<Subspace> {
        let g = Subspace::full(self.dim());
        let mut series = vec![g.clone()];
        loop {
            let next = self.bracket_span(&g, series.last().unwrap());
            if next.dim() == series.last().unwrap().dim() {
                return series;
            }
            series.push(next);
        }
    }

    pub fn derived_series(&self) -> Vec<Subspace> {
        let mut series = vec![Subspace::full(self.dim())];
        loop {
            let last = series.last().unwrap();
            let next = self.bracket_span(last, last);
            if next.dim() == last.dim() {
                return series;
            }
            series.push(next);
        }
    }

    pub fn validate(&self) -> AlgebraFlags {
        let lcs = self.lower_central_series();
        let nilpotent = lcs.last().unwrap().dim() == 0;
        let step = nilpotent.then(|| lcs.len().saturating_sub(1).max(1));
        let solvable = self.derived_series().last().unwrap().dim() == 0;
        let ads: Vec<Matrix> = (0..self.dim()).map(|i| self.ad(i)).collect();
        let unimodular = ads.iter().all(|a| trace(a).is_zero());
        // for solvable g the ad-eigenvalues are roots, linear in X, so real
        // eigenvalues on a basis give real eigenvalues everywhere
        let completely_solvable =
            solvable && ads.iter().all(|a| characteristic_polynomial(a).all_roots_real());
        AlgebraFlags {
            jacobi_ok: true,
            nilpotent,
            step,
            solvable,
            completely_solvable,
            unimodular,
        }
    }

    /// `tr ad_X = 0` for every `X`.
    pub fn is_unimodular(&self) -> bool {
        (0..self.dim()).all(|i| trace(&self.ad(i)).is_zero())
    }

    /// `a ⊕ b`, with the generators of `b` numbered after those of `a`.
    pub fn direct_sum(&self, other: &LieAlgebraSpec) -> Result<LieAlgebraSpec> {
        let (na, nb) = (self.dim(), other.dim());
        let dim = na + nb;
        if dim > MAX_DIM {
            return Err(Error::DimensionTooLarge { dim, limit: MAX_DIM });
        }
        let d1: Vec<ExteriorForm> = self
            .d1
            .iter()
            .map(|f| embed(f, dim, 0))
            .chain(other.d1.iter().map(|f| embed(f, dim, na)))
            .collect();
        let source = if self.source == Source::SalamonNotation && other.source == Source::SalamonNotation {
            Source::SalamonNotation
        } else {
            Source::RawStructureConstants
        };
        let name = salamon_string(&d1).unwrap_or_else(|| format!("{} + {}", self.name, other.name));
        Self::build(name, d1, source)
    }
}

/// Copies a form onto a larger generator set, shifting indices by `shift`.
fn trace(a: &Matrix) -> Scalar {
    (0..a.rows()).map(|j| a[(j, j)].clone()).sum()
}

pub fn embed(f: &ExteriorForm, dim: usize, shift: usize) -> ExteriorForm {
    let mut out = ExteriorForm::zero(dim, f.degree());
    for (m, c) in f.terms() {
        out.add_term(m << shift, c);
    }
    out
}

fn salamon_string(d1: &[ExteriorForm]) -> Option<String> {
    if d1.len() > 9 {
        return None;
    }
    let mut entries = Vec::with_capacity(d1.len());
    for f in d1 {
        if f.is_zero() {
            entries.push("0".to_string());
            continue;
        }
        let mut s = String::new();
        for (mask, c) in f.terms_lex() {
            if !c.is_integer() {
                return None;
            }
            let label: String = mask_indices(mask).iter().map(|i| i.to_string()).collect();
            let (neg, mag) = (c.signum() < 0, c.abs());
            if neg {
                s.push('-');
            } else if !s.is_empty() {
                s.push('+');
            }
            if !mag.is_one() {
                s.push_str(&format!("{mag}*"));
            }
            s.push_str(&label);
        }
        entries.push(s);
    }
    Some(format!("({})", entries.join(",")))
}
