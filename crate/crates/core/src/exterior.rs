//! Exterior algebra `Λ*V*` over the rationals with a bitmask basis.
//!
//! A basis element `e^{i1 … iq}` (`i1 < … < iq`) is encoded as the bitmask with
//! bits `i1-1, …, iq-1` set. Within each degree, basis elements are ordered
//! lexicographically by their index tuples.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::linalg::Scalar;

/// Largest supported number of generators.
pub const MAX_DIM: usize = 16;

/// Sign of `e^a ∧ e^b` relative to `e^{a ∪ b}`; zero when the masks overlap.
pub fn wedge_sign(a: u32, b: u32) -> i32 {
    if a & b != 0 {
        return 0;
    }
    // count pairs (i in a, j in b) with i > j
    let mut inversions = 0u32;
    let mut rest = b;
    while rest != 0 {
        let j = rest.trailing_zeros();
        rest &= rest - 1;
        let above = if j >= 31 { 0 } else { a >> (j + 1) };
        inversions += above.count_ones();
    }
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Indices (1-based) of the generators in a mask, ascending.
pub fn mask_indices(mask: u32) -> Vec<usize> {
    (0..32).filter(|b| mask & (1 << b) != 0).map(|b| b + 1).collect()
}

pub fn indices_mask(indices: &[usize]) -> u32 {
    indices.iter().fold(0, |m, &i| m | (1 << (i - 1)))
}

fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

/// Enumerates basis masks per degree and maps masks back to positions.
#[derive(Debug)]
pub struct ExteriorBasis {
    dim: usize,
    by_degree: Vec<Vec<u32>>,
    position: Vec<u32>,
}

impl ExteriorBasis {
    pub fn new(dim: usize) -> Arc<Self> {
        assert!(dim <= MAX_DIM, "exterior algebra on more than {MAX_DIM} generators");
        let mut by_degree = vec![Vec::new(); dim + 1];
        let mut position = vec![0u32; 1 << dim];
        for q in 0..=dim {
            let mut masks = Vec::with_capacity(binomial(dim, q));
            combinations(dim, q, &mut |idx| masks.push(indices_mask(idx)));
            for (p, &m) in masks.iter().enumerate() {
                position[m as usize] = p as u32;
            }
            by_degree[q] = masks;
        }
        Arc::new(ExteriorBasis { dim, by_degree, position })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Dimension of `Λ^q`; zero outside `0..=dim`.
    pub fn len(&self, degree: isize) -> usize {
        if degree < 0 || degree as usize > self.dim {
            0
        } else {
            self.by_degree[degree as usize].len()
        }
    }

    pub fn masks(&self, degree: usize) -> &[u32] {
        &self.by_degree[degree]
    }

    pub fn position(&self, mask: u32) -> usize {
        self.position[mask as usize] as usize
    }

    pub fn top_mask(&self) -> u32 {
        if self.dim == 32 {
            u32::MAX
        } else {
            (1u32 << self.dim) - 1
        }
    }
}

fn combinations(n: usize, k: usize, f: &mut impl FnMut(&[usize])) {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, f: &mut impl FnMut(&[usize])) {
        if cur.len() == k {
            f(cur);
            return;
        }
        for i in start..=n {
            if n - i + 1 < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, f);
            cur.pop();
        }
    }
    rec(1, n, k, &mut Vec::with_capacity(k), f);
}

/// Homogeneous element of `Λ^q`, stored sparsely (absent key = zero).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ExteriorForm {
    dim: usize,
    degree: usize,
    coeffs: BTreeMap<u32, Scalar>,
}

impl ExteriorForm {
    /// The zero form; degrees above `dim` are allowed and always zero.
    pub fn zero(dim: usize, degree: usize) -> Self {
        ExteriorForm { dim, degree, coeffs: BTreeMap::new() }
    }

    pub fn one(dim: usize) -> Self {
        Self::monomial(dim, 0, Scalar::one())
    }

    /// `c · e^{mask}`.
    pub fn monomial(dim: usize, mask: u32, c: Scalar) -> Self {
        assert!(dim == 32 || mask >> dim == 0, "mask outside dimension");
        let mut f = ExteriorForm::zero(dim, mask.count_ones() as usize);
        if !c.is_zero() {
            f.coeffs.insert(mask, c);
        }
        f
    }

    /// `e^{i1} ∧ … ∧ e^{iq}` for arbitrary (1-based) index order.
    pub fn basis_wedge(dim: usize, indices: &[usize]) -> Self {
        indices.iter().fold(ExteriorForm::one(dim), |acc, &i| {
            acc.wedge(&ExteriorForm::monomial(dim, 1 << (i - 1), Scalar::one()))
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, mask: u32) -> Scalar {
        self.coeffs.get(&mask).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (u32, &Scalar)> {
        self.coeffs.iter().map(|(m, c)| (*m, c))
    }

    /// Terms ordered lexicographically by index tuple, as in the basis.
    pub fn terms_lex(&self) -> Vec<(u32, &Scalar)> {
        let mut t: Vec<(u32, &Scalar)> = self.terms().collect();
        t.sort_by_key(|&(m, _)| mask_indices(m));
        t
    }

    pub fn add_term(&mut self, mask: u32, c: &Scalar) {
        debug_assert_eq!(mask.count_ones() as usize, self.degree);
        if c.is_zero() {
            return;
        }
        let entry = self.coeffs.entry(mask).or_default();
        *entry += c;
        if entry.is_zero() {
            self.coeffs.remove(&mask);
        }
    }

    pub fn add(&self, other: &ExteriorForm) -> ExteriorForm {
        assert_eq!((self.dim, self.degree), (other.dim, other.degree), "adding forms of different type");
        let mut out = self.clone();
        for (m, c) in other.terms() {
            out.add_term(m, c);
        }
        out
    }

    pub fn sub(&self, other: &ExteriorForm) -> ExteriorForm {
        self.add(&other.scale(&-Scalar::one()))
    }

    pub fn scale(&self, c: &Scalar) -> ExteriorForm {
        if c.is_zero() {
            return ExteriorForm::zero(self.dim, self.degree);
        }
        ExteriorForm {
            dim: self.dim,
            degree: self.degree,
            coeffs: self.coeffs.iter().map(|(m, x)| (*m, x * c)).collect(),
        }
    }

    pub fn wedge(&self, other: &ExteriorForm) -> ExteriorForm {
        assert_eq!(self.dim, other.dim, "wedge of forms on different spaces");
        let degree = self.degree + other.degree;
        let mut out = ExteriorForm::zero(self.dim, degree);
        if degree > self.dim {
            return out;
        }
        for (a, x) in self.terms() {
            for (b, y) in other.terms() {
                match wedge_sign(a, b) {
                    0 => {}
                    1 => out.add_term(a | b, &(x * y)),
                    _ => out.add_term(a | b, &-(x * y)),
                }
            }
        }
        out
    }

    /// Dense coordinates in the degree's basis.
    pub fn to_vector(&self, basis: &ExteriorBasis) -> Vec<Scalar> {
        let mut v = vec![Scalar::zero(); basis.len(self.degree as isize)];
        for (m, c) in self.terms() {
            v[basis.position(m)] = c.clone();
        }
        v
    }

    pub fn from_vector(basis: &ExteriorBasis, degree: usize, v: &[Scalar]) -> ExteriorForm {
        if degree > basis.dim() {
            assert!(v.is_empty(), "nonempty vector above top degree");
            return ExteriorForm::zero(basis.dim(), degree);
        }
        let masks = basis.masks(degree);
        assert_eq!(masks.len(), v.len(), "vector length does not match Λ^{degree}");
        let mut f = ExteriorForm::zero(basis.dim(), degree);
        for (m, c) in masks.iter().zip(v) {
            f.add_term(*m, c);
        }
        f
    }
}

fn mask_label(dim: usize, mask: u32) -> String {
    let idx = mask_indices(mask);
    if dim <= 9 {
        idx.iter().map(|i| i.to_string()).collect()
    } else {
        let parts: Vec<String> = idx.iter().map(|i| i.to_string()).collect();
        format!("{{{}}}", parts.join(","))
    }
}

impl fmt::Display for ExteriorForm {
    /// Renders as `e12 + 3*e34 - 1/2*e56`; the zero form renders as `0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.terms_lex() {
            let neg = c.signum() < 0;
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            if m == 0 {
                write!(f, "{mag}")?;
                continue;
            }
            if !mag.is_one() {
                write!(f, "{mag}*")?;
            }
            write!(f, "e{}", mask_label(self.dim, m))?;
        }
        Ok(())
    }
}

impl fmt::Debug for ExteriorForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Λ^{}[{}]", self.degree, self)
    }
}

pub fn wedge(a: &ExteriorForm, b: &ExteriorForm) -> ExteriorForm {
    a.wedge(b)
}
