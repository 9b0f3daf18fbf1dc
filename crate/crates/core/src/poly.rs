//! Univariate rational polynomials: just enough to decide whether a
//! characteristic polynomial has only real roots.

use crate::linalg::{Matrix, Scalar};

/// Coefficients from the constant term upward, without trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly(Vec<Scalar>);

impl Poly {
    pub fn new(mut coeffs: Vec<Scalar>) -> Self {
        while coeffs.last().is_some_and(Scalar::is_zero) {
            coeffs.pop();
        }
        Poly(coeffs)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// Degree; the zero polynomial reports `None`.
    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    fn lead(&self) -> &Scalar {
        self.0.last().expect("leading coefficient of zero polynomial")
    }

    pub fn derivative(&self) -> Poly {
        Poly::new(
            self.0.iter().enumerate().skip(1).map(|(i, c)| c * &Scalar::from_int(i as i64)).collect(),
        )
    }

    pub fn rem(&self, divisor: &Poly) -> Poly {
        let dd = divisor.degree().expect("division by zero polynomial");
        let mut r = self.0.clone();
        let inv = divisor.lead().recip();
        while r.len() > dd && !r.is_empty() {
            let shift = r.len() - 1 - dd;
            let f = r.last().unwrap() * &inv;
            for (i, c) in divisor.0.iter().enumerate() {
                let delta = &f * c;
                r[shift + i] -= &delta;
            }
            r.pop();
            while r.last().is_some_and(Scalar::is_zero) {
                r.pop();
            }
        }
        Poly::new(r)
    }

    pub fn gcd(&self, other: &Poly) -> Poly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a
    }

    fn sign_at_infinity(&self, positive: bool) -> i32 {
        match self.degree() {
            None => 0,
            Some(d) => {
                let s = self.lead().signum();
                if positive || d % 2 == 0 {
                    s
                } else {
                    -s
                }
            }
        }
    }

    /// Number of distinct real roots, by Sturm's theorem.
    pub fn distinct_real_roots(&self) -> usize {
        if self.degree().unwrap_or(0) == 0 {
            return 0;
        }
        let mut chain = vec![self.clone(), self.derivative()];
        loop {
            let n = chain.len();
            let r = chain[n - 2].rem(&chain[n - 1]);
            if r.is_zero() {
                break;
            }
            chain.push(Poly::new(r.0.iter().map(|c| -c).collect()));
        }
        let changes = |positive: bool| {
            let signs: Vec<i32> =
                chain.iter().map(|p| p.sign_at_infinity(positive)).filter(|&s| s != 0).collect();
            signs.windows(2).filter(|w| w[0] != w[1]).count()
        };
        changes(false) - changes(true)
    }

    /// True when every complex root is real.
    pub fn all_roots_real(&self) -> bool {
        let Some(d) = self.degree() else { return true };
        if d == 0 {
            return true;
        }
        let g = self.gcd(&self.derivative());
        let squarefree_degree = d - g.degree().unwrap_or(0);
        self.distinct_real_roots() == squarefree_degree
    }
}

/// Characteristic polynomial `det(x I - A)` via Faddeev–LeVerrier.
pub fn characteristic_polynomial(a: &Matrix) -> Poly {
    let n = a.rows();
    assert_eq!(n, a.cols(), "characteristic polynomial of non-square matrix");
    let mut coeffs = vec![Scalar::zero(); n + 1];
    coeffs[n] = Scalar::one();
    let mut m = Matrix::zeros(n, n);
    for k in 1..=n {
        // M_k = A M_{k-1} + c_{n-k+1} I
        let mut next = a.mul(&m);
        for i in 0..n {
            next[(i, i)] += &coeffs[n - k + 1];
        }
        let am = a.mul(&next);
        let trace: Scalar = (0..n).map(|i| am[(i, i)].clone()).sum();
        coeffs[n - k] = -(trace / Scalar::from_int(k as i64));
        m = next;
    }
    Poly::new(coeffs)
}
