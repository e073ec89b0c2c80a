//! Independent oracles: structure constants and module actions written out
//! directly from the closed forms, evaluated pointwise on scalars so they
//! share no code with the crate's polynomial and algebra layers.

#![allow(dead_code)]

use std::collections::BTreeMap;

use num_traits::Zero;
use omega_core::{BasisSymbol, Field, Kind, Poly, Scalar, Spec};

pub fn s(text: &str) -> Scalar {
    text.parse().expect("scalar literal")
}

pub fn int(n: i64) -> Scalar {
    Scalar::from(n)
}

/// `[x, y]` from the bracket formulas, as a map from symbols to nonzero
/// coefficients.
pub fn bracket(kind: &Kind, x: &BasisSymbol, y: &BasisSymbol) -> BTreeMap<BasisSymbol, Scalar> {
    let mut out = BTreeMap::new();
    let mut put = |sym: BasisSymbol, c: Scalar| {
        if !c.is_zero() {
            let e = out.entry(sym).or_insert_with(|| int(0));
            *e = e.clone() + c;
            if e.is_zero() {
                out.remove(&sym);
            }
        }
    };
    let central = |i: i64| Scalar::from_ratio(i * i * i - i, 12);
    match (kind, *x, *y) {
        (_, BasisSymbol::C(_), _) | (_, _, BasisSymbol::C(_)) => {}
        (Kind::Virasoro, BasisSymbol::L(i, None), BasisSymbol::L(j, None)) => {
            put(BasisSymbol::l(i + j), int(j - i));
            if i + j == 0 {
                put(BasisSymbol::c(), central(i));
            }
        }
        (Kind::LoopVirasoro, BasisSymbol::L(i, Some(j)), BasisSymbol::L(k, Some(l))) => {
            put(BasisSymbol::l2(i + k, j + l), int(k - i));
            if i + k == 0 {
                put(BasisSymbol::cj(j + l), central(i));
            }
        }
        (_, BasisSymbol::L(m, Some(i)), BasisSymbol::L(n, Some(j))) => {
            let q = kind.q().expect("block kind").clone();
            let coeff = int(n) * (int(i) + q.clone()) - int(m) * (int(j) + q);
            let (keep, with_c) = match kind {
                Kind::BlockTrunc { l, .. } => (i + j <= *l, false),
                _ => (true, true),
            };
            if keep {
                put(BasisSymbol::l2(m + n, i + j), coeff);
            }
            if with_c && m + n == 0 && i + j == 0 {
                put(BasisSymbol::c(), central(m));
            }
        }
        _ => panic!("symbol does not belong to {kind}"),
    }
    out
}

/// Pointwise form of a rank-one action: `(x·f)(t0) = scale(t0) · f(t0 - shift)`.
pub fn action_at(spec: &Spec, x: &BasisSymbol, t0: &Scalar) -> Option<(Scalar, Scalar)> {
    let pow = |b: &Scalar, n: i64| b.pow_int(n).expect("nonzero base");
    match (spec, *x) {
        (_, BasisSymbol::C(_)) => None,
        (Spec::OmegaVir { lambda, alpha }, BasisSymbol::L(i, None)) => Some((
            pow(lambda, i) * (t0.clone() - int(i) * alpha.clone()),
            int(i),
        )),
        (Spec::OmegaLoop(p), BasisSymbol::L(i, Some(j))) => Some((
            pow(&p.lambda, i - j) * pow(&p.mu, j) * (t0.clone() - int(i) * p.alpha.clone()),
            int(i),
        )),
        (Spec::OmegaBlock { q, lambda, alpha }, BasisSymbol::L(m, Some(i))) => {
            let mq = int(m) * q.clone();
            if i == 0 {
                Some((
                    pow(lambda, m) * (t0.clone() - mq.clone() * alpha.clone()),
                    mq,
                ))
            } else {
                None
            }
        }
        (
            Spec::OmegaBlockHv {
                lambda,
                alpha,
                beta,
            },
            BasisSymbol::L(m, Some(i)),
        ) => {
            let factor = match i {
                0 => t0.clone() + int(m) * alpha.clone(),
                1 => beta.clone(),
                _ => return None,
            };
            Some((pow(lambda, m) * factor, int(-m)))
        }
        _ => panic!("symbol {x} does not act on {spec}"),
    }
}

/// Horner evaluation written independently of the crate's `eval`.
pub fn eval(f: &Poly, t0: &Scalar) -> Scalar {
    let mut acc = int(0);
    for c in f.coeffs().iter().rev() {
        acc = acc * t0.clone() + c.clone();
    }
    acc
}

/// `(x·f)(t0)`.
pub fn act_at(spec: &Spec, x: &BasisSymbol, f: &Poly, t0: &Scalar) -> Scalar {
    match action_at(spec, x, t0) {
        Some((scale, shift)) => scale * eval(f, &(t0.clone() - shift)),
        None => int(0),
    }
}

/// `(x·(y·f))(t0)`.
pub fn act2_at(spec: &Spec, x: &BasisSymbol, y: &BasisSymbol, f: &Poly, t0: &Scalar) -> Scalar {
    match action_at(spec, x, t0) {
        Some((scale, shift)) => scale * act_at(spec, y, f, &(t0.clone() - shift)),
        None => int(0),
    }
}

pub fn poly(text: &str) -> Poly {
    omega_core::parse::parse_poly(text).expect("polynomial literal")
}
