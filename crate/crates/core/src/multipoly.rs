//! Sparse polynomials in `t1, …, tm`, the carrier of tensor products of
//! rank-one modules.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::PolyError;
use crate::field::Field;
use crate::poly::{write_term, Polynomial};

/// Exponent vector of a monomial; its length is the number of variables.
pub type Exponents = Vec<u32>;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MultiPolynomial<F> {
    nvars: usize,
    terms: BTreeMap<Exponents, F>,
}

impl<F: Field> MultiPolynomial<F> {
    pub fn zero(nvars: usize) -> Self {
        MultiPolynomial {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: F) -> Self {
        Self::monomial(vec![0; nvars], c)
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, F::one())
    }

    /// The variable `t_{k+1}` (zero-based `k`).
    pub fn var(nvars: usize, k: usize) -> Self {
        let mut e = vec![0; nvars];
        e[k] = 1;
        Self::monomial(e, F::one())
    }

    pub fn monomial(exponents: Exponents, c: F) -> Self {
        let mut p = Self::zero(exponents.len());
        if !c.is_zero() {
            p.terms.insert(exponents, c);
        }
        p
    }

    /// Builds from `(exponents, coefficient)` pairs, merging duplicates.
    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Exponents, F)>) -> Self {
        let mut p = Self::zero(nvars);
        for (e, c) in terms {
            assert_eq!(e.len(), nvars, "exponent vector length");
            p.add_term(e, c);
        }
        p
    }

    /// Embeds a univariate polynomial as a polynomial in variable `k`.
    pub fn from_univariate(p: &Polynomial<F>, nvars: usize, k: usize) -> Self {
        let terms = p.coeffs().iter().enumerate().map(|(d, c)| {
            let mut e = vec![0; nvars];
            e[k] = d as u32;
            (e, c.clone())
        });
        Self::from_terms(nvars, terms)
    }

    pub fn to_univariate(&self) -> Result<Polynomial<F>, PolyError> {
        if self.nvars != 1 {
            return Err(PolyError::VariableCount {
                expected: 1,
                found: self.nvars,
            });
        }
        let len = self
            .terms
            .keys()
            .map(|e| e[0] as usize + 1)
            .max()
            .unwrap_or(0);
        let mut coeffs = vec![F::zero(); len];
        for (e, c) in &self.terms {
            coeffs[e[0] as usize] = c.clone();
        }
        Ok(Polynomial::from_coeffs(coeffs))
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, &F)> {
        self.terms.iter()
    }

    pub fn coeff(&self, exponents: &[u32]) -> F {
        self.terms.get(exponents).cloned().unwrap_or_else(F::zero)
    }

    /// Degree in the variable `k`, `None` for the zero polynomial.
    pub fn degree_in(&self, k: usize) -> Option<u32> {
        self.terms.keys().map(|e| e[k]).max()
    }

    /// Largest exponent of any single variable.
    pub fn max_exponent(&self) -> Option<u32> {
        self.terms.keys().flat_map(|e| e.iter().copied()).max()
    }

    fn add_term(&mut self, e: Exponents, c: F) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&e) {
            Some(existing) => {
                let sum = existing.clone() + &c;
                if sum.is_zero() {
                    self.terms.remove(&e);
                } else {
                    *existing = sum;
                }
            }
            None => {
                self.terms.insert(e, c);
            }
        }
    }

    pub fn scale(&self, c: &F) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        MultiPolynomial {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, a)| (e.clone(), a.clone() * c))
                .collect(),
        }
    }

    /// Substitution `t_k ↦ t_k - c`.
    pub fn shift_var(&self, k: usize, c: &F) -> Self {
        if c.is_zero() {
            return self.clone();
        }
        let neg_c = -c.clone();
        let mut out = Self::zero(self.nvars);
        for (e, a) in &self.terms {
            // (t_k - c)^n = Σ_r C(n, r) t_k^r (-c)^(n-r)
            let n = e[k];
            let mut binom = F::one();
            let mut powers = Vec::with_capacity(n as usize + 1);
            let mut pw = F::one();
            for _ in 0..=n {
                powers.push(pw.clone());
                pw = pw * &neg_c;
            }
            for r in (0..=n).rev() {
                let mut e2 = e.clone();
                e2[k] = r;
                let term = a.clone() * &binom * &powers[(n - r) as usize];
                out.add_term(e2, term);
                // C(n, r-1) = C(n, r) * r / (n - r + 1)
                if r > 0 {
                    binom = binom * &F::from_ratio(r as i64, (n - r + 1) as i64);
                }
            }
        }
        out
    }

    /// `(t_k - root) · self`.
    pub fn mul_linear_var(&self, k: usize, root: &F) -> Self {
        let mut out = Self::zero(self.nvars);
        for (e, a) in &self.terms {
            let mut up = e.clone();
            up[k] += 1;
            out.add_term(up, a.clone());
            out.add_term(e.clone(), -(a.clone() * root));
        }
        out
    }

    fn check_same_vars(&self, rhs: &Self) {
        assert_eq!(
            self.nvars, rhs.nvars,
            "multivariate operands must share the variable count"
        );
    }
}

impl<F: Field> Add<&MultiPolynomial<F>> for &MultiPolynomial<F> {
    type Output = MultiPolynomial<F>;
    fn add(self, rhs: &MultiPolynomial<F>) -> MultiPolynomial<F> {
        self.check_same_vars(rhs);
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl<F: Field> Sub<&MultiPolynomial<F>> for &MultiPolynomial<F> {
    type Output = MultiPolynomial<F>;
    fn sub(self, rhs: &MultiPolynomial<F>) -> MultiPolynomial<F> {
        self.check_same_vars(rhs);
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), -c.clone());
        }
        out
    }
}

impl<F: Field> Mul<&MultiPolynomial<F>> for &MultiPolynomial<F> {
    type Output = MultiPolynomial<F>;
    // exponents add when monomials multiply
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn mul(self, rhs: &MultiPolynomial<F>) -> MultiPolynomial<F> {
        self.check_same_vars(rhs);
        let mut out = MultiPolynomial::zero(self.nvars);
        for (ea, a) in &self.terms {
            for (eb, b) in &rhs.terms {
                let e = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                out.add_term(e, a.clone() * b);
            }
        }
        out
    }
}

impl<F: Field> Neg for &MultiPolynomial<F> {
    type Output = MultiPolynomial<F>;
    fn neg(self) -> MultiPolynomial<F> {
        self.scale(&-F::one())
    }
}

impl<F: Field> fmt::Display for MultiPolynomial<F> {
    /// Degree-lex descending, e.g. `t1^2*t2 - 3*t2 + 1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut ordered: Vec<_> = self.terms.iter().collect();
        ordered.sort_by(|(a, _), (b, _)| deglex_cmp(b, a));
        for (idx, (e, c)) in ordered.into_iter().enumerate() {
            let body = e
                .iter()
                .enumerate()
                .filter(|(_, &d)| d > 0)
                .map(|(k, &d)| {
                    if d == 1 {
                        format!("t{}", k + 1)
                    } else {
                        format!("t{}^{}", k + 1, d)
                    }
                })
                .collect::<Vec<_>>()
                .join("*");
            write_term(f, c, &body, idx == 0)?;
        }
        Ok(())
    }
}

impl<F: Field> fmt::Debug for MultiPolynomial<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Degree-lex order: total degree first, then lexicographic.
pub fn deglex_cmp(a: &[u32], b: &[u32]) -> std::cmp::Ordering {
    let da: u32 = a.iter().sum();
    let db: u32 = b.iter().sum();
    da.cmp(&db).then_with(|| a.cmp(b))
}
