//! Dense univariate polynomials in `t`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::PolyError;
use crate::field::Field;

/// Default bound on degrees accepted by window computations.
pub const DEFAULT_DEGREE_CAP: usize = 64;

/// A polynomial stored densely by ascending degree.
///
/// The coefficient list never ends in a zero; the zero polynomial is the
/// empty list and has no degree.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Polynomial<F> {
    coeffs: Vec<F>,
}

impl<F: Field> Polynomial<F> {
    pub fn zero() -> Self {
        Polynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(F::one())
    }

    /// The indeterminate `t`.
    pub fn t() -> Self {
        Self::monomial(F::one(), 1)
    }

    pub fn constant(c: F) -> Self {
        Self::from_coeffs(vec![c])
    }

    pub fn monomial(c: F, degree: usize) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![F::zero(); degree + 1];
        coeffs[degree] = c;
        Polynomial { coeffs }
    }

    /// `t - root`.
    pub fn linear(root: F) -> Self {
        Self::from_coeffs(vec![-root, F::one()])
    }

    pub fn from_coeffs(mut coeffs: Vec<F>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn coeffs(&self) -> &[F] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> F {
        self.coeffs.get(k).cloned().unwrap_or_else(F::zero)
    }

    pub fn constant_term(&self) -> F {
        self.coeff(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn degree_leading(&self) -> Result<(usize, F), PolyError> {
        match self.coeffs.last() {
            Some(lead) => Ok((self.coeffs.len() - 1, lead.clone())),
            None => Err(PolyError::ZeroPolynomial),
        }
    }

    pub fn check_degree(&self, cap: usize) -> Result<(), PolyError> {
        match self.degree() {
            Some(degree) if degree > cap => Err(PolyError::DegreeOverflow { degree, cap }),
            _ => Ok(()),
        }
    }

    pub fn scale(&self, c: &F) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Polynomial {
            coeffs: self.coeffs.iter().map(|a| a.clone() * c).collect(),
        }
    }

    /// Substitution `t ↦ t - c`: returns `g` with `g(t) = f(t - c)`.
    pub fn shift(&self, c: &F) -> Self {
        if c.is_zero() || self.coeffs.len() < 2 {
            return self.clone();
        }
        // Horner in the basis (t - c): g = (..(a_n (t-c) + a_{n-1})(t-c) + ..) + a_0
        let n = self.coeffs.len();
        let neg_c = -c.clone();
        let mut out = vec![F::zero(); n];
        for a in self.coeffs.iter().rev() {
            for k in (1..n).rev() {
                let lower = out[k - 1].clone();
                out[k] = lower + &(out[k].clone() * &neg_c);
            }
            out[0] = a.clone() + &(out[0].clone() * &neg_c);
        }
        Polynomial::from_coeffs(out)
    }

    pub fn eval(&self, x: &F) -> F {
        self.coeffs
            .iter()
            .rev()
            .fold(F::zero(), |acc, a| acc * x + a)
    }

    /// `(t - root) · self`.
    pub fn mul_linear(&self, root: &F) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let n = self.coeffs.len();
        let mut out = Vec::with_capacity(n + 1);
        out.push(-(self.coeffs[0].clone() * root));
        for k in 1..n {
            out.push(self.coeffs[k - 1].clone() - &(self.coeffs[k].clone() * root));
        }
        out.push(self.coeffs[n - 1].clone());
        Polynomial::from_coeffs(out)
    }

    /// Synthetic division by `t - root`, returning `(quotient, remainder)`.
    pub fn div_linear(&self, root: &F) -> (Self, F) {
        if self.is_zero() {
            return (Self::zero(), F::zero());
        }
        let n = self.coeffs.len();
        let mut quotient = vec![F::zero(); n - 1];
        let mut carry = F::zero();
        for k in (0..n).rev() {
            let value = self.coeffs[k].clone() + &(carry * root);
            if k == 0 {
                return (Polynomial::from_coeffs(quotient), value);
            }
            quotient[k - 1] = value.clone();
            carry = value;
        }
        unreachable!()
    }

    /// Exact quotient by `t`, if the constant term vanishes.
    pub fn div_t(&self) -> Option<Self> {
        if self.is_zero() {
            return Some(Self::zero());
        }
        if !self.coeffs[0].is_zero() {
            return None;
        }
        Some(Polynomial {
            coeffs: self.coeffs[1..].to_vec(),
        })
    }

    /// `t · self`.
    pub fn mul_t(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = Vec::with_capacity(self.coeffs.len() + 1);
        coeffs.push(F::zero());
        coeffs.extend(self.coeffs.iter().cloned());
        Polynomial { coeffs }
    }

    pub fn map_coeffs<G: Field>(&self, f: impl Fn(&F) -> G) -> Polynomial<G> {
        Polynomial::from_coeffs(self.coeffs.iter().map(f).collect())
    }
}

impl<F: Field> Default for Polynomial<F> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<F: Field> Add<&Polynomial<F>> for &Polynomial<F> {
    type Output = Polynomial<F>;
    fn add(self, rhs: &Polynomial<F>) -> Polynomial<F> {
        let (long, short) = if self.coeffs.len() >= rhs.coeffs.len() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let mut coeffs = long.coeffs.clone();
        for (c, s) in coeffs.iter_mut().zip(&short.coeffs) {
            *c = c.clone() + s;
        }
        Polynomial::from_coeffs(coeffs)
    }
}

impl<F: Field> Sub<&Polynomial<F>> for &Polynomial<F> {
    type Output = Polynomial<F>;
    fn sub(self, rhs: &Polynomial<F>) -> Polynomial<F> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect();
        Polynomial::from_coeffs(coeffs)
    }
}

impl<F: Field> Mul<&Polynomial<F>> for &Polynomial<F> {
    type Output = Polynomial<F>;
    fn mul(self, rhs: &Polynomial<F>) -> Polynomial<F> {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero();
        }
        let mut coeffs = vec![F::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] = coeffs[i + j].clone() + &(a.clone() * b);
            }
        }
        Polynomial::from_coeffs(coeffs)
    }
}

impl<F: Field> Neg for &Polynomial<F> {
    type Output = Polynomial<F>;
    fn neg(self) -> Polynomial<F> {
        Polynomial {
            coeffs: self.coeffs.iter().map(|c| -c.clone()).collect(),
        }
    }
}

macro_rules! owned_binop {
    ($trait:ident, $method:ident) => {
        impl<F: Field> $trait for Polynomial<F> {
            type Output = Polynomial<F>;
            fn $method(self, rhs: Polynomial<F>) -> Polynomial<F> {
                $trait::$method(&self, &rhs)
            }
        }
    };
}
owned_binop!(Add, add);
owned_binop!(Sub, sub);
owned_binop!(Mul, mul);

impl<F: Field> Neg for Polynomial<F> {
    type Output = Polynomial<F>;
    fn neg(self) -> Polynomial<F> {
        -&self
    }
}

/// Writes one signed term of a sum. `first` controls whether a leading
/// `" + "` / `" - "` separator is emitted.
pub(crate) fn write_term<F: Field>(
    f: &mut fmt::Formatter<'_>,
    coeff: &F,
    body: &str,
    first: bool,
) -> fmt::Result {
    let text = coeff.to_string();
    let shown = if !first && text.starts_with('-') {
        write!(f, " - ")?;
        (-coeff.clone()).to_string()
    } else {
        if !first {
            write!(f, " + ")?;
        }
        text
    };
    match shown.as_str() {
        _ if body.is_empty() => write!(f, "{shown}"),
        "1" => write!(f, "{body}"),
        "-1" => write!(f, "-{body}"),
        _ => write!(f, "{shown}*{body}"),
    }
}

impl<F: Field> fmt::Display for Polynomial<F> {
    /// Descending powers, e.g. `2*t^3 - 1/2*t + 1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let body = match k {
                0 => String::new(),
                1 => "t".to_string(),
                _ => format!("t^{k}"),
            };
            write_term(f, c, &body, first)?;
            first = false;
        }
        Ok(())
    }
}

impl<F: Field> fmt::Debug for Polynomial<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_poly;
    use crate::GaussianRational;

    type P = Polynomial<GaussianRational>;

    fn p(text: &str) -> P {
        parse_poly(text).unwrap()
    }

    fn s(text: &str) -> GaussianRational {
        text.parse().unwrap()
    }

    #[test]
    fn shift_examples() {
        assert_eq!(p("t^2").shift(&s("1")), p("t^2 - 2*t + 1"));
        let f = p("3*t^3 - t + 7");
        assert_eq!(f.shift(&s("0")), f);
        // (t - 3/2)^2 + (t - 3/2) = t^2 - 2t + 3/4
        assert_eq!(p("t^2 + t").shift(&s("3/2")), p("t^2 - 2*t + 3/4"));
    }

    #[test]
    fn arithmetic_examples() {
        assert_eq!(&p("t - 1") * &p("t + 1"), p("t^2 - 1"));
        let f = p("5*t^2 - i");
        assert_eq!(&f + &P::zero(), f);
        let alpha = s("1");
        assert_eq!(P::linear(s("2") * &alpha).scale(&s("2")), p("2*t - 4"));
    }

    #[test]
    fn degree_and_leading() {
        assert_eq!(p("3*t - 3").degree_leading().unwrap(), (1, s("3")));
        assert_eq!(p("t^5").degree_leading().unwrap(), (5, s("1")));
        assert_eq!(P::zero().degree_leading(), Err(PolyError::ZeroPolynomial));
    }

    #[test]
    fn linear_division() {
        let (q, r) = p("3*t - 6").div_linear(&s("2"));
        assert_eq!((q, r), (p("3"), s("0")));
        let (q, r) = p("t^2 + 1").div_linear(&s("1"));
        assert_eq!((q, r), (p("t + 1"), s("2")));
        assert_eq!(p("t - 7").mul_linear(&s("2")), p("t^2 - 9*t + 14"));
    }

    #[test]
    fn degree_cap() {
        assert!(p("t^3").check_degree(3).is_ok());
        assert_eq!(
            p("t^4").check_degree(3),
            Err(PolyError::DegreeOverflow { degree: 4, cap: 3 })
        );
    }

    #[test]
    fn rendering() {
        assert_eq!(p("2*t^3 - 1/2*t + 1").to_string(), "2*t^3 - 1/2*t + 1");
        assert_eq!(p("-t").to_string(), "-t");
        assert_eq!(p("0").to_string(), "0");
        assert_eq!(p("1+2i*t").to_string(), "1+2i*t");
        assert_eq!(p("t - 1+2i").to_string(), "t - 1+2i");
        assert_eq!(p("t + -1+2i").to_string(), "t - 1-2i");
    }
}
