//! Recursive-descent parsers for scalars, polynomials and algebra elements.
//!
//! ```text
//! rat    ::= ['-'] uint ['/' uint]
//! scalar ::= rat | rat ('+'|'-') rat 'i' | rat 'i' | ['-'] 'i' | rat ('+'|'-') 'i'
//! poly   ::= term (('+'|'-') term)*
//! term   ::= scalar | [scalar '*'] mono
//! mono   ::= var ['^' uint] ('*' var ['^' uint])*
//! var    ::= 't' | 't' uint
//! gen    ::= 'L(' int [',' int] ')' | 'C' ['(' int ')']
//! elem   ::= '0' | [scalar '*'] gen (('+'|'-') [scalar '*'] gen)*
//! ```
//!
//! A scalar is a single token: `1+2i*t` is `(1+2i)·t` whereas `1 + 2i*t` is
//! `1 + 2i·t`. Errors carry the byte offset where parsing stopped.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use crate::algebra::{AlgebraElement, AlgebraKind, BasisSymbol};
use crate::error::{AlgebraError, ParseError, ParseErrorKind};
use crate::field::Field;
use crate::multipoly::{Exponents, MultiPolynomial};
use crate::poly::Polynomial;
use crate::scalar::GaussianRational;

/// Exponents above this are rejected rather than allocated.
pub const MAX_EXPONENT: u32 = 1 << 12;

/// Fields that can hold a parsed literal `re + im·i`.
pub trait ParseScalar: Field {
    fn from_parts(re: BigRational, im: BigRational) -> Option<Self>;
}

impl ParseScalar for GaussianRational {
    fn from_parts(re: BigRational, im: BigRational) -> Option<Self> {
        Some(GaussianRational::new(re, im))
    }
}

impl ParseScalar for BigRational {
    fn from_parts(re: BigRational, im: BigRational) -> Option<Self> {
        im.is_zero().then_some(re)
    }
}

struct Cursor<'a> {
    text: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(text: &'a str) -> Self {
        Cursor { text, pos: 0 }
    }

    fn peek(&self) -> Option<u8> {
        self.text.as_bytes().get(self.pos).copied()
    }

    fn peek_at(&self, k: usize) -> Option<u8> {
        self.text.as_bytes().get(self.pos + k).copied()
    }

    fn eat(&mut self, b: u8) -> bool {
        if self.peek() == Some(b) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, b: u8) -> Result<(), ParseError> {
        if self.eat(b) {
            Ok(())
        } else {
            Err(self.error(format!("expected '{}'", b as char)))
        }
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(|b| b.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn at_end(&self) -> bool {
        self.pos >= self.text.len()
    }

    fn error(&self, message: impl Into<String>) -> ParseError {
        let found = match self.text[self.pos..].chars().next() {
            Some(c) => format!(", found '{c}'"),
            None => ", found end of input".to_string(),
        };
        ParseError::syntax(self.pos, format!("{}{found}", message.into()))
    }

    fn finish(&mut self) -> Result<(), ParseError> {
        self.skip_ws();
        if self.at_end() {
            Ok(())
        } else {
            Err(self.error("unexpected trailing input"))
        }
    }

    fn digits(&mut self) -> Result<&'a str, ParseError> {
        let start = self.pos;
        while self.peek().is_some_and(|b| b.is_ascii_digit()) {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.error("expected digits"));
        }
        Ok(&self.text[start..self.pos])
    }

    fn uint<T: TryFrom<u64>>(&mut self, what: &str) -> Result<T, ParseError> {
        let start = self.pos;
        let d = self.digits()?;
        d.parse::<u64>()
            .ok()
            .and_then(|n| T::try_from(n).ok())
            .ok_or_else(|| ParseError {
                kind: ParseErrorKind::Overflow,
                offset: start,
                message: format!("{what} {d} is too large at byte {start}"),
            })
    }

    fn int(&mut self) -> Result<i64, ParseError> {
        self.skip_ws();
        let start = self.pos;
        let neg = self.eat(b'-');
        let d = self.digits()?;
        let text = if neg { format!("-{d}") } else { d.to_string() };
        text.parse::<i64>().map_err(|_| ParseError {
            kind: ParseErrorKind::Overflow,
            offset: start,
            message: format!("index {text} does not fit in 64 bits"),
        })
    }

    /// `uint ['/' uint]`, unsigned.
    fn rational(&mut self) -> Result<BigRational, ParseError> {
        let num: BigInt = self.digits()?.parse().expect("digit string");
        if !self.eat(b'/') {
            return Ok(BigRational::from_integer(num));
        }
        let den_at = self.pos;
        let den: BigInt = self.digits()?.parse().expect("digit string");
        if den.is_zero() {
            return Err(ParseError {
                kind: ParseErrorKind::ZeroDenominator,
                offset: den_at,
                message: "zero denominator".into(),
            });
        }
        Ok(BigRational::new(num, den))
    }

    fn starts_scalar(&self) -> bool {
        match self.peek() {
            Some(b) if b.is_ascii_digit() || b == b'i' => true,
            Some(b'-') => self
                .peek_at(1)
                .is_some_and(|b| b.is_ascii_digit() || b == b'i'),
            _ => false,
        }
    }

    /// `[±] (uint['/'uint] | 'i' | uint['/'uint] 'i')`: one signed part.
    fn signed_part(&mut self) -> Result<(BigRational, bool), ParseError> {
        let neg = self.eat(b'-');
        let (mut value, imaginary) = if self.eat(b'i') {
            (BigRational::from_integer(1.into()), true)
        } else {
            let r = self.rational()?;
            (r, self.eat(b'i'))
        };
        if neg {
            value = -value;
        }
        Ok((value, imaginary))
    }

    /// A contiguous scalar token.
    fn scalar_parts(&mut self) -> Result<(BigRational, BigRational), ParseError> {
        let (first, imaginary) = self.signed_part()?;
        if imaginary {
            return Ok((BigRational::zero(), first));
        }
        // Try `rat ± rat i`; backtrack when no imaginary unit follows.
        if matches!(self.peek(), Some(b'+' | b'-'))
            && self
                .peek_at(1)
                .is_some_and(|b| b.is_ascii_digit() || b == b'i')
        {
            let save = self.pos;
            let neg = self.peek() == Some(b'-');
            self.pos += 1;
            match self.signed_part() {
                Ok((second, true)) => {
                    return Ok((first, if neg { -second } else { second }));
                }
                Err(e) if e.kind == ParseErrorKind::ZeroDenominator => return Err(e),
                _ => self.pos = save,
            }
        }
        Ok((first, BigRational::zero()))
    }

    fn scalar<F: ParseScalar>(&mut self) -> Result<F, ParseError> {
        let start = self.pos;
        let (re, im) = self.scalar_parts()?;
        F::from_parts(re, im)
            .ok_or_else(|| ParseError::syntax(start, "imaginary scalar in a real field"))
    }
}

pub fn parse_scalar<F: ParseScalar>(text: &str) -> Result<F, ParseError> {
    let mut c = Cursor::new(text);
    c.skip_ws();
    let value = c.scalar()?;
    c.finish()?;
    Ok(value)
}

/// Parses terms into `(exponents, coefficient)` pairs; `var` maps the text
/// after `t` (possibly empty) to a variable index.
fn parse_terms<F: ParseScalar>(
    text: &str,
    nvars: usize,
    var: impl Fn(&str) -> Option<usize>,
    var_hint: &str,
) -> Result<Vec<(Exponents, F)>, ParseError> {
    let mut c = Cursor::new(text);
    let mut out = Vec::new();
    c.skip_ws();
    let mut negate = false;
    loop {
        let term_at = c.pos;
        if c.peek() == Some(b'-') && !c.starts_scalar() {
            c.pos += 1;
            negate = !negate;
            c.skip_ws();
        }
        let mut coeff = F::one();
        let mut has_mono = true;
        if c.starts_scalar() {
            coeff = c.scalar()?;
            c.skip_ws();
            if c.eat(b'*') {
                c.skip_ws();
            } else {
                has_mono = false;
            }
        }
        let mut exps = vec![0u32; nvars];
        if has_mono {
            loop {
                let var_at = c.pos;
                if !c.eat(b't') {
                    return Err(if c.pos == term_at {
                        c.error("expected a term")
                    } else {
                        c.error("expected a variable")
                    });
                }
                let idx_start = c.pos;
                while c.peek().is_some_and(|b| b.is_ascii_digit()) {
                    c.pos += 1;
                }
                let k = var(&text[idx_start..c.pos]).ok_or_else(|| {
                    ParseError::syntax(
                        var_at,
                        format!(
                            "unknown variable {}, expected {var_hint}",
                            &text[var_at..c.pos]
                        ),
                    )
                })?;
                let mut e = 1u32;
                c.skip_ws();
                if c.eat(b'^') {
                    c.skip_ws();
                    let at = c.pos;
                    e = c.uint::<u32>("exponent")?;
                    if e > MAX_EXPONENT {
                        return Err(ParseError {
                            kind: ParseErrorKind::Overflow,
                            offset: at,
                            message: format!("exponent {e} exceeds {MAX_EXPONENT}"),
                        });
                    }
                    c.skip_ws();
                }
                exps[k] = exps[k].saturating_add(e).min(MAX_EXPONENT + 1);
                if exps[k] > MAX_EXPONENT {
                    return Err(ParseError {
                        kind: ParseErrorKind::Overflow,
                        offset: var_at,
                        message: format!("exponent exceeds {MAX_EXPONENT}"),
                    });
                }
                if !c.eat(b'*') {
                    break;
                }
                c.skip_ws();
            }
        }
        if negate {
            coeff = -coeff;
        }
        out.push((exps, coeff));
        c.skip_ws();
        match c.peek() {
            None => break,
            Some(b'+') => negate = false,
            Some(b'-') => negate = true,
            _ => return Err(c.error("expected '+', '-' or end of input")),
        }
        c.pos += 1;
        c.skip_ws();
    }
    Ok(out)
}

/// Parses a polynomial in the single variable `t`.
pub fn parse_poly<F: ParseScalar>(text: &str) -> Result<Polynomial<F>, ParseError> {
    let terms = parse_terms::<F>(text, 1, |idx| idx.is_empty().then_some(0), "t")?;
    let len = terms
        .iter()
        .map(|(e, _)| e[0] as usize + 1)
        .max()
        .unwrap_or(0);
    let mut coeffs = vec![F::zero(); len];
    for (e, c) in terms {
        let d = e[0] as usize;
        coeffs[d] = coeffs[d].clone() + &c;
    }
    Ok(Polynomial::from_coeffs(coeffs))
}

/// Parses a polynomial in `t1, …, t{nvars}` (plain `t` when `nvars == 1`).
pub fn parse_multi_poly<F: ParseScalar>(
    text: &str,
    nvars: usize,
) -> Result<MultiPolynomial<F>, ParseError> {
    let hint = format!("t1..t{nvars}");
    let terms = parse_terms::<F>(
        text,
        nvars,
        |idx| {
            if idx.is_empty() {
                return (nvars == 1).then_some(0);
            }
            let k: usize = idx.parse().ok()?;
            (1..=nvars).contains(&k).then(|| k - 1)
        },
        &hint,
    )?;
    Ok(MultiPolynomial::from_terms(nvars, terms))
}

fn parse_gen(c: &mut Cursor<'_>) -> Result<BasisSymbol, ParseError> {
    if c.eat(b'L') {
        c.skip_ws();
        c.expect(b'(')?;
        let i = c.int()?;
        c.skip_ws();
        let j = if c.eat(b',') { Some(c.int()?) } else { None };
        c.skip_ws();
        c.expect(b')')?;
        Ok(BasisSymbol::L(i, j))
    } else if c.eat(b'C') {
        let save = c.pos;
        c.skip_ws();
        if c.eat(b'(') {
            let j = c.int()?;
            c.skip_ws();
            c.expect(b')')?;
            Ok(BasisSymbol::C(Some(j)))
        } else {
            c.pos = save;
            Ok(BasisSymbol::C(None))
        }
    } else {
        Err(c.error("expected L(..) or C"))
    }
}

fn symbol_error(offset: usize, err: AlgebraError) -> ParseError {
    let kind = match err {
        AlgebraError::Arity { .. } => ParseErrorKind::Arity,
        ref other => ParseErrorKind::Symbol(other.clone()),
    };
    ParseError {
        kind,
        offset,
        message: err.to_string(),
    }
}

/// Parses a linear combination of basis symbols of `kind`.
pub fn parse_element<F: ParseScalar>(
    kind: &AlgebraKind<F>,
    text: &str,
) -> Result<AlgebraElement<F>, ParseError> {
    let mut c = Cursor::new(text);
    c.skip_ws();
    if c.eat(b'0') {
        c.finish()?;
        return Ok(AlgebraElement::zero(kind.clone()));
    }
    let mut terms: BTreeMap<BasisSymbol, F> = BTreeMap::new();
    let mut negate = false;
    loop {
        if c.peek() == Some(b'-') && !c.starts_scalar() {
            c.pos += 1;
            negate = !negate;
            c.skip_ws();
        }
        let mut coeff = F::one();
        if c.starts_scalar() {
            coeff = c.scalar()?;
            c.skip_ws();
            c.expect(b'*')?;
            c.skip_ws();
        }
        let gen_at = c.pos;
        let sym = parse_gen(&mut c)?;
        kind.validate_symbol(&sym)
            .map_err(|e| symbol_error(gen_at, e))?;
        if negate {
            coeff = -coeff;
        }
        let entry = terms.entry(sym).or_insert_with(F::zero);
        *entry = entry.clone() + &coeff;
        c.skip_ws();
        match c.peek() {
            None => break,
            Some(b'+') => negate = false,
            Some(b'-') => negate = true,
            _ => return Err(c.error("expected '+', '-' or end of input")),
        }
        c.pos += 1;
        c.skip_ws();
    }
    AlgebraElement::from_terms(kind.clone(), terms).map_err(|e| symbol_error(0, e))
}

/// Parses `"1;t;t^2+1"` into a list of polynomials.
pub fn parse_poly_list<F: ParseScalar>(text: &str) -> Result<Vec<Polynomial<F>>, ParseError> {
    let mut out = Vec::new();
    let mut offset = 0;
    for piece in text.split(';') {
        let p = parse_poly(piece).map_err(|mut e| {
            e.offset += offset;
            e
        })?;
        out.push(p);
        offset += piece.len() + 1;
    }
    Ok(out)
}

/// Converts a parsed integer to `i64` when it is one.
pub fn scalar_to_i64<F: Field>(x: &F) -> Option<i64> {
    x.to_integer().and_then(|n| n.to_i64())
}

#[cfg(test)]
mod tests {
    use super::*;

    type Q = GaussianRational;

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn scalar_examples() {
        let x: Q = parse_scalar("-1/2+2/3i").unwrap();
        assert_eq!(x, Q::new(r(-1, 2), r(2, 3)));
        assert_eq!(parse_scalar::<Q>("4/6").unwrap(), Q::real(r(2, 3)));
        assert_eq!(parse_scalar::<Q>("i").unwrap(), Q::i());
        assert_eq!(parse_scalar::<Q>("-i").unwrap(), -Q::i());
        assert_eq!(parse_scalar::<Q>("1-i").unwrap(), Q::new(r(1, 1), r(-1, 1)));
        assert_eq!(parse_scalar::<Q>("  7 ").unwrap(), Q::from(7));
        let e = parse_scalar::<Q>("3/0").unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::ZeroDenominator);
        assert_eq!(e.offset, 2);
        let e = parse_scalar::<Q>("1/2x").unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::Syntax);
        assert_eq!(e.offset, 3);
        assert!(parse_scalar::<Q>("1 + 2i").is_err());
        assert!(parse_scalar::<BigRational>("2i").is_err());
        assert_eq!(parse_scalar::<BigRational>("-3/9").unwrap(), r(-1, 3));
    }

    #[test]
    fn poly_examples() {
        let f: Polynomial<Q> = parse_poly("2*t^3 - 1/2*t + 1").unwrap();
        assert_eq!(
            f.coeffs(),
            &[Q::from(1), Q::real(r(-1, 2)), Q::from(0), Q::from(2)]
        );
        let g: Polynomial<Q> = parse_poly("-t^2 + t*t - 3").unwrap();
        assert_eq!(g, Polynomial::constant(Q::from(-3)));
        let h: Polynomial<Q> = parse_poly("1+2i*t").unwrap();
        assert_eq!(h, Polynomial::monomial(Q::new(r(1, 1), r(2, 1)), 1));
        let k: Polynomial<Q> = parse_poly("1 + 2i*t").unwrap();
        assert_eq!(k.coeffs(), &[Q::from(1), Q::new(r(0, 1), r(2, 1))]);
        assert_eq!(
            parse_poly::<Q>("1+2*t").unwrap().coeffs(),
            &[Q::from(1), Q::from(2)]
        );
        assert!(parse_poly::<Q>("0").unwrap().is_zero());
        let e = parse_poly::<Q>("t + x").unwrap_err();
        assert_eq!(e.offset, 4);
        let e = parse_poly::<Q>("t1 + 1").unwrap_err();
        assert_eq!(e.offset, 0);
        assert!(parse_poly::<Q>("t^99999").is_err());
        assert!(parse_poly::<Q>("").is_err());
        assert!(parse_poly::<Q>("t +").is_err());
    }

    #[test]
    fn multi_poly_examples() {
        let f: MultiPolynomial<Q> = parse_multi_poly("t1^2*t2 - 3*t2 + 1", 2).unwrap();
        assert_eq!(f.coeff(&[2, 1]), Q::from(1));
        assert_eq!(f.coeff(&[0, 1]), Q::from(-3));
        assert!(parse_multi_poly::<Q>("t3", 2).is_err());
        assert!(parse_multi_poly::<Q>("t", 2).is_err());
        assert!(parse_multi_poly::<Q>("t0", 2).is_err());
    }

    #[test]
    fn element_examples() {
        let lp = AlgebraKind::<Q>::LoopVirasoro;
        let e = parse_element(&lp, "L(1,2) - 3*C(0)").unwrap();
        assert_eq!(e.len(), 2);
        assert_eq!(e.coeff(&BasisSymbol::cj(0)), Q::from(-3));
        let err = parse_element(&lp, "L(1)").unwrap_err();
        assert_eq!(err.kind, ParseErrorKind::Arity);
        assert!(parse_element(&lp, "0").unwrap().is_zero());
        assert!(parse_element(&lp, "L(1,0) - L(1,0)").unwrap().is_zero());
        assert_eq!(
            parse_element(&lp, "-1/2*L( -1 , 3 )")
                .unwrap()
                .coeff(&BasisSymbol::l2(-1, 3)),
            Q::real(r(-1, 2))
        );
        let vir = AlgebraKind::<Q>::Virasoro;
        assert_eq!(parse_element(&vir, "L(2) + C").unwrap().len(), 2);
        assert_eq!(
            parse_element(&vir, "C(1)").unwrap_err().kind,
            ParseErrorKind::Arity
        );
        let b = AlgebraKind::block(Q::real(r(-1, 2))).unwrap();
        let err = parse_element(&b, "2*L(0,1)").unwrap_err();
        assert!(matches!(
            err.kind,
            ParseErrorKind::Symbol(AlgebraError::ExcludedSymbol { .. })
        ));
        assert_eq!(err.offset, 2);
        assert!(err.message.contains("-2q"));
        let e = parse_element(&lp, "L(1,0) * 2").unwrap_err();
        assert_eq!(e.offset, 7);
    }

    #[test]
    fn poly_lists() {
        let seeds: Vec<Polynomial<Q>> = parse_poly_list("1;t;t^2+1").unwrap();
        assert_eq!(seeds.len(), 3);
        let err = parse_poly_list::<Q>("1;t;x").unwrap_err();
        assert_eq!(err.offset, 4);
    }
}
