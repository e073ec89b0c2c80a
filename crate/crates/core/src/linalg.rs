//! Incremental reduced row-echelon spans over an exact field.

use crate::error::LinalgError;
use crate::field::Field;
use crate::multipoly::{deglex_cmp, Exponents, MultiPolynomial};
use crate::poly::Polynomial;

/// A subspace of `F^n` held as a fully reduced echelon basis.
///
/// Every row has pivot entry 1, pivot columns increase strictly from row
/// to row, and each pivot column is zero in all other rows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpanBasis<F> {
    ncols: usize,
    rows: Vec<Vec<F>>,
    pivots: Vec<usize>,
}

impl<F: Field> SpanBasis<F> {
    pub fn new(ncols: usize) -> Self {
        SpanBasis {
            ncols,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_full(&self) -> bool {
        self.rank() == self.ncols
    }

    pub fn rows(&self) -> &[Vec<F>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    fn check_len(&self, v: &[F]) -> Result<(), LinalgError> {
        if v.len() == self.ncols {
            Ok(())
        } else {
            Err(LinalgError::DimensionMismatch {
                expected: self.ncols,
                found: v.len(),
            })
        }
    }

    /// Reduces `v` against the basis; the result is zero iff `v` is in the span.
    fn reduce(&self, v: &mut [F]) {
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if v[p].is_zero() {
                continue;
            }
            let factor = v[p].clone();
            for (x, r) in v.iter_mut().zip(row).skip(p) {
                if !r.is_zero() {
                    *x = x.clone() - &(factor.clone() * r);
                }
            }
        }
    }

    pub fn contains(&self, v: &[F]) -> Result<bool, LinalgError> {
        self.check_len(v)?;
        let mut w = v.to_vec();
        self.reduce(&mut w);
        Ok(w.iter().all(|x| x.is_zero()))
    }

    /// Adds `v` to the span; returns whether the rank grew.
    pub fn insert(&mut self, v: &[F]) -> Result<bool, LinalgError> {
        self.check_len(v)?;
        let mut w = v.to_vec();
        self.reduce(&mut w);
        let Some(p) = w.iter().position(|x| !x.is_zero()) else {
            return Ok(false);
        };
        let inv = w[p].inverse().expect("pivot is nonzero");
        for x in w.iter_mut().skip(p) {
            if !x.is_zero() {
                *x = x.clone() * &inv;
            }
        }
        // Clear the new pivot column from the existing rows.
        for row in &mut self.rows {
            if row[p].is_zero() {
                continue;
            }
            let factor = row[p].clone();
            for (x, r) in row.iter_mut().zip(&w).skip(p) {
                if !r.is_zero() {
                    *x = x.clone() - &(factor.clone() * r);
                }
            }
        }
        let at = self.pivots.partition_point(|&q| q < p);
        self.pivots.insert(at, p);
        self.rows.insert(at, w);
        Ok(true)
    }

    /// A standard unit vector `e_k` outside the span, if any.
    pub fn missing_unit(&self) -> Option<usize> {
        (0..self.ncols).find(|k| !self.pivots.contains(k))
    }
}

/// Coefficient vector of `f` in the basis `1, t, …, t^cap`.
pub fn poly_to_vector<F: Field>(f: &Polynomial<F>, cap: usize) -> Result<Vec<F>, LinalgError> {
    if let Some(degree) = f.degree() {
        if degree > cap {
            return Err(LinalgError::DegreeOverflow { degree, cap });
        }
    }
    Ok((0..=cap).map(|k| f.coeff(k)).collect())
}

pub fn vector_to_poly<F: Field>(v: &[F]) -> Polynomial<F> {
    Polynomial::from_coeffs(v.to_vec())
}

/// The monomials `t1^e1 ⋯ tm^em` with every `ek ≤ cap`, in degree-lex order.
pub fn window_monomials(nvars: usize, cap: u32) -> Vec<Exponents> {
    let mut out: Vec<Exponents> = vec![Vec::new()];
    for _ in 0..nvars {
        out = out
            .into_iter()
            .flat_map(|e| {
                (0..=cap).map(move |d| {
                    let mut e = e.clone();
                    e.push(d);
                    e
                })
            })
            .collect();
    }
    out.sort_by(|a, b| deglex_cmp(a, b));
    out
}

/// Coefficient vector of `f` over [`window_monomials`]; each variable's
/// degree must be at most `cap`.
pub fn multi_poly_to_vector<F: Field>(
    f: &MultiPolynomial<F>,
    cap: u32,
) -> Result<Vec<F>, LinalgError> {
    if let Some(d) = f.max_exponent() {
        if d > cap {
            return Err(LinalgError::DegreeOverflow {
                degree: d as usize,
                cap: cap as usize,
            });
        }
    }
    Ok(window_monomials(f.nvars(), cap)
        .iter()
        .map(|e| f.coeff(e))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::{parse_multi_poly, parse_poly};
    use crate::GaussianRational as Q;
    use num_traits::Zero;

    fn v(xs: &[i64]) -> Vec<Q> {
        xs.iter().map(|&x| Q::from(x)).collect()
    }

    #[test]
    fn insert_examples() {
        let mut b = SpanBasis::<Q>::new(3);
        assert!(b.insert(&v(&[1, 0, 2])).unwrap());
        assert_eq!(b.rank(), 1);
        assert!(!b.insert(&v(&[2, 0, 4])).unwrap());
        assert_eq!(b.rank(), 1);
        assert!(b.insert(&v(&[0, 1, 0])).unwrap());
        assert_eq!(b.rank(), 2);
        assert_eq!(
            b.insert(&v(&[1, 2])),
            Err(LinalgError::DimensionMismatch {
                expected: 3,
                found: 2
            })
        );
    }

    #[test]
    fn contains_examples() {
        let mut b = SpanBasis::<Q>::new(2);
        assert!(b.contains(&v(&[0, 0])).unwrap());
        b.insert(&v(&[1, 0])).unwrap();
        assert!(b.contains(&v(&[3, 0])).unwrap());
        assert!(!b.contains(&v(&[0, 1])).unwrap());
    }

    #[test]
    fn rows_stay_reduced() {
        let mut b = SpanBasis::<Q>::new(3);
        b.insert(&v(&[0, 2, 4])).unwrap();
        b.insert(&v(&[3, 1, 1])).unwrap();
        assert_eq!(b.pivots(), &[0, 1]);
        for (row, &p) in b.rows().iter().zip(b.pivots()) {
            assert_eq!(row[p], Q::from(1));
            for (other, &p2) in b.rows().iter().zip(b.pivots()) {
                if p2 != p {
                    assert!(other[p].is_zero());
                }
            }
        }
        assert_eq!(b.missing_unit(), Some(2));
    }

    #[test]
    fn polynomial_vectors() {
        let f: Polynomial<Q> = parse_poly("2*t - 4").unwrap();
        assert_eq!(poly_to_vector(&f, 3).unwrap(), v(&[-4, 2, 0, 0]));
        assert_eq!(
            poly_to_vector(&Polynomial::<Q>::zero(), 2).unwrap(),
            v(&[0, 0, 0])
        );
        assert_eq!(
            poly_to_vector(&parse_poly::<Q>("t^4").unwrap(), 3),
            Err(LinalgError::DegreeOverflow { degree: 4, cap: 3 })
        );
        let g: MultiPolynomial<Q> = parse_multi_poly("t1*t2 + 3*t2 - 1", 2).unwrap();
        // order: 1, t2, t1, t1*t2 (then degree-2 pure powers are absent for cap 1)
        assert_eq!(multi_poly_to_vector(&g, 1).unwrap(), v(&[-1, 3, 0, 1]));
    }
}
