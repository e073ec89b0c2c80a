//! Basis symbols, elements and brackets of the Virasoro algebra, the
//! loop-Virasoro algebra and the Block type algebras, together with
//! checkers for the Jacobi identity, centrality and the Virasoro embedding.

use std::collections::BTreeMap;
use std::fmt;

use rand::Rng;
use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::error::AlgebraError;
use crate::field::Field;

/// A basis generator.
///
/// `L(i, None)` is the Virasoro `L_i`; `L(i, Some(j))` is `L_{i,j}` in the
/// loop algebra or `L_{m,i}` in a Block algebra. `C(None)` is the central
/// `C`; `C(Some(j))` is the loop generator `C_j`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BasisSymbol {
    L(i64, Option<i64>),
    C(Option<i64>),
}

impl BasisSymbol {
    pub fn l(i: i64) -> Self {
        BasisSymbol::L(i, None)
    }

    pub fn l2(i: i64, j: i64) -> Self {
        BasisSymbol::L(i, Some(j))
    }

    pub fn c() -> Self {
        BasisSymbol::C(None)
    }

    pub fn cj(j: i64) -> Self {
        BasisSymbol::C(Some(j))
    }

    pub fn is_central_type(&self) -> bool {
        matches!(self, BasisSymbol::C(_))
    }

    /// First index of an `L` symbol.
    pub fn first(&self) -> Option<i64> {
        match *self {
            BasisSymbol::L(i, _) => Some(i),
            BasisSymbol::C(_) => None,
        }
    }

    /// Second index of an `L` symbol, or the index of `C_j`.
    pub fn second(&self) -> Option<i64> {
        match *self {
            BasisSymbol::L(_, j) | BasisSymbol::C(j) => j,
        }
    }
}

impl fmt::Display for BasisSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            BasisSymbol::L(i, None) => write!(f, "L({i})"),
            BasisSymbol::L(i, Some(j)) => write!(f, "L({i},{j})"),
            BasisSymbol::C(None) => write!(f, "C"),
            BasisSymbol::C(Some(j)) => write!(f, "C({j})"),
        }
    }
}

impl fmt::Debug for BasisSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for BasisSymbol {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// Closed index rectangle. `first` bounds the first index (the grading),
/// `second` the second index; Virasoro symbols ignore `second`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct IndexBox {
    pub first: (i64, i64),
    pub second: (i64, i64),
}

impl IndexBox {
    pub fn new(first: (i64, i64), second: (i64, i64)) -> Self {
        IndexBox { first, second }
    }

    pub fn contains_first(&self, i: i64) -> bool {
        self.first.0 <= i && i <= self.first.1
    }

    pub fn contains_second(&self, j: i64) -> bool {
        self.second.0 <= j && j <= self.second.1
    }

    pub fn is_empty(&self) -> bool {
        self.first.0 > self.first.1 || self.second.0 > self.second.1
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum AlgebraKind<F> {
    Virasoro,
    LoopVirasoro,
    /// The Block type algebra with basis `L_{m,i}`, `C`, `(m,i) ∈ ℤ×ℤ₊`.
    BlockHat {
        q: F,
    },
    /// Its derived algebra; omits `L_{0,-2q}` when `-2q` is a positive integer.
    Block {
        q: F,
    },
    /// The subquotient spanned by `L_{m,i}` with `k ≤ i ≤ l`, without `C`.
    BlockTrunc {
        q: F,
        k: i64,
        l: i64,
    },
}

impl<F: Field> AlgebraKind<F> {
    pub fn block_hat(q: F) -> Result<Self, AlgebraError> {
        Self::check_q(&q)?;
        Ok(AlgebraKind::BlockHat { q })
    }

    pub fn block(q: F) -> Result<Self, AlgebraError> {
        Self::check_q(&q)?;
        Ok(AlgebraKind::Block { q })
    }

    pub fn block_trunc(q: F, k: i64, l: i64) -> Result<Self, AlgebraError> {
        Self::check_q(&q)?;
        if !(0 <= k && k <= l) {
            return Err(AlgebraError::InvalidKind(format!(
                "truncation needs l ≥ k ≥ 0, got k={k}, l={l}"
            )));
        }
        Ok(AlgebraKind::BlockTrunc { q, k, l })
    }

    fn check_q(q: &F) -> Result<(), AlgebraError> {
        if q.is_zero() {
            Err(AlgebraError::InvalidKind("q must be nonzero".into()))
        } else {
            Ok(())
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            AlgebraKind::Virasoro => "virasoro",
            AlgebraKind::LoopVirasoro => "loop",
            AlgebraKind::BlockHat { .. } => "block-hat",
            AlgebraKind::Block { .. } => "block",
            AlgebraKind::BlockTrunc { .. } => "block-trunc",
        }
    }

    pub fn q(&self) -> Option<&F> {
        match self {
            AlgebraKind::BlockHat { q }
            | AlgebraKind::Block { q }
            | AlgebraKind::BlockTrunc { q, .. } => Some(q),
            _ => None,
        }
    }

    pub fn is_block_type(&self) -> bool {
        self.q().is_some()
    }

    /// The second index `-2q` of the symbol missing from the derived
    /// algebra, when `-2q` is a positive integer.
    pub fn excluded_second(&self) -> Option<i64> {
        match self {
            AlgebraKind::Block { q } | AlgebraKind::BlockTrunc { q, .. } => {
                (-(q.clone() + q)).as_positive_int()
            }
            _ => None,
        }
    }

    /// Default symmetric box: first index in `[-n, n]`, second index in
    /// `[-n, n]` for the loop algebra and `[0, n]` (clipped to the
    /// truncation range) for Block algebras.
    pub fn default_box(&self, n: i64) -> IndexBox {
        match self {
            AlgebraKind::Virasoro => IndexBox::new((-n, n), (0, 0)),
            AlgebraKind::LoopVirasoro => IndexBox::new((-n, n), (-n, n)),
            AlgebraKind::BlockHat { .. } | AlgebraKind::Block { .. } => {
                IndexBox::new((-n, n), (0, n))
            }
            AlgebraKind::BlockTrunc { k, l, .. } => IndexBox::new((-n, n), (*k, *l)),
        }
    }

    pub fn validate_symbol(&self, sym: &BasisSymbol) -> Result<(), AlgebraError> {
        let arity = || AlgebraError::Arity {
            symbol: *sym,
            algebra: self.name().to_string(),
        };
        match (self, *sym) {
            (AlgebraKind::Virasoro, BasisSymbol::L(_, None) | BasisSymbol::C(None)) => Ok(()),
            (AlgebraKind::Virasoro, _) => Err(arity()),
            (AlgebraKind::LoopVirasoro, BasisSymbol::L(_, Some(_)) | BasisSymbol::C(Some(_))) => {
                Ok(())
            }
            (AlgebraKind::LoopVirasoro, _) => Err(arity()),
            (AlgebraKind::BlockHat { .. } | AlgebraKind::Block { .. }, BasisSymbol::C(None)) => {
                Ok(())
            }
            (AlgebraKind::BlockTrunc { .. }, BasisSymbol::C(None)) => {
                Err(AlgebraError::ExcludedSymbol {
                    symbol: *sym,
                    reason: "the truncated subquotient has no central element".into(),
                })
            }
            (_, BasisSymbol::L(m, Some(i))) => {
                if i < 0 {
                    return Err(AlgebraError::NegativeSecondIndex { symbol: *sym });
                }
                if let AlgebraKind::BlockTrunc { k, l, .. } = self {
                    if i < *k || i > *l {
                        return Err(AlgebraError::TruncationRange {
                            symbol: *sym,
                            k: *k,
                            l: *l,
                        });
                    }
                }
                if let Some(ex) = self.excluded_second() {
                    if m == 0 && i == ex {
                        return Err(AlgebraError::ExcludedSymbol {
                            symbol: *sym,
                            reason: format!(
                                "(0,{ex}) = (0,-2q) is not in the derived algebra since -2q={ex}∈ℕ"
                            ),
                        });
                    }
                }
                Ok(())
            }
            _ => Err(arity()),
        }
    }

    /// All valid basis symbols inside `bx`, in canonical order.
    pub fn symbols(&self, bx: &IndexBox) -> Vec<BasisSymbol> {
        let firsts = bx.first.0..=bx.first.1;
        let mut out = Vec::new();
        match self {
            AlgebraKind::Virasoro => {
                out.extend(firsts.map(BasisSymbol::l));
                out.push(BasisSymbol::c());
            }
            AlgebraKind::LoopVirasoro => {
                for i in firsts {
                    for j in bx.second.0..=bx.second.1 {
                        out.push(BasisSymbol::l2(i, j));
                    }
                }
                out.extend((bx.second.0..=bx.second.1).map(BasisSymbol::cj));
            }
            _ => {
                let lo = bx.second.0.max(0);
                for m in firsts {
                    for i in lo..=bx.second.1 {
                        let sym = BasisSymbol::l2(m, i);
                        if self.validate_symbol(&sym).is_ok() {
                            out.push(sym);
                        }
                    }
                }
                if !matches!(self, AlgebraKind::BlockTrunc { .. }) {
                    out.push(BasisSymbol::c());
                }
            }
        }
        out
    }

    /// Structure constants, without validating the inputs.
    fn raw_bracket(&self, x: &BasisSymbol, y: &BasisSymbol) -> Vec<(BasisSymbol, F)> {
        use BasisSymbol::{C, L};
        let mut out = Vec::with_capacity(2);
        match (self, *x, *y) {
            (_, C(_), _) | (_, _, C(_)) => {}
            (AlgebraKind::Virasoro, L(i, _), L(j, _)) => {
                if j != i {
                    out.push((BasisSymbol::l(i + j), F::from_i64(j - i)));
                }
                if i + j == 0 {
                    push_central(&mut out, i, BasisSymbol::c());
                }
            }
            (AlgebraKind::LoopVirasoro, L(i, Some(j)), L(k, Some(l))) => {
                if k != i {
                    out.push((BasisSymbol::l2(i + k, j + l), F::from_i64(k - i)));
                }
                if i + k == 0 {
                    push_central(&mut out, i, BasisSymbol::cj(j + l));
                }
            }
            (kind, L(m, Some(i)), L(n, Some(j))) => {
                let q = kind.q().expect("block kind");
                // n(i+q) - m(j+q)
                let coeff = F::from_i64(n * i - m * j) + &(q.clone() * &F::from_i64(n - m));
                let target = BasisSymbol::l2(m + n, i + j);
                let keep = match kind {
                    AlgebraKind::BlockTrunc { l, .. } => i + j <= *l,
                    _ => true,
                };
                if keep && !coeff.is_zero() {
                    out.push((target, coeff));
                }
                let central = !matches!(kind, AlgebraKind::BlockTrunc { .. });
                if central && m + n == 0 && i + j == 0 {
                    push_central(&mut out, m, BasisSymbol::c());
                }
            }
            _ => {}
        }
        out
    }

    /// Bracket of two basis symbols, expanded in the basis.
    pub fn bracket_basis(
        &self,
        x: &BasisSymbol,
        y: &BasisSymbol,
    ) -> Result<AlgebraElement<F>, AlgebraError> {
        self.validate_symbol(x)?;
        self.validate_symbol(y)?;
        let terms = self.checked_raw_bracket(x, y)?;
        Ok(AlgebraElement::from_terms_unchecked(self.clone(), terms))
    }

    /// Raw bracket plus the derived-algebra exclusion assertion.
    fn checked_raw_bracket(
        &self,
        x: &BasisSymbol,
        y: &BasisSymbol,
    ) -> Result<Vec<(BasisSymbol, F)>, AlgebraError> {
        let terms = self.raw_bracket(x, y);
        if let Some(ex) = self.excluded_second() {
            let banned = BasisSymbol::l2(0, ex);
            if terms.iter().any(|(s, _)| *s == banned) {
                return Err(AlgebraError::ExcludedSymbolEmitted { symbol: banned });
            }
        }
        Ok(terms)
    }
}

fn push_central<F: Field>(out: &mut Vec<(BasisSymbol, F)>, i: i64, sym: BasisSymbol) {
    // (i^3 - i)/12
    let num = i128::from(i).pow(3) - i128::from(i);
    if num != 0 {
        let num = i64::try_from(num).expect("central coefficient overflow");
        out.push((sym, F::from_ratio(num, 12)));
    }
}

impl<F: Field> fmt::Display for AlgebraKind<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AlgebraKind::Virasoro | AlgebraKind::LoopVirasoro => write!(f, "{}", self.name()),
            AlgebraKind::BlockHat { q } | AlgebraKind::Block { q } => {
                write!(f, "{}(q={q})", self.name())
            }
            AlgebraKind::BlockTrunc { q, k, l } => write!(f, "block-trunc(q={q},k={k},l={l})"),
        }
    }
}

impl<F: Field> Serialize for AlgebraKind<F> {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// A finite linear combination of basis symbols in canonical order.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AlgebraElement<F> {
    kind: AlgebraKind<F>,
    terms: BTreeMap<BasisSymbol, F>,
}

impl<F: Field> AlgebraElement<F> {
    pub fn zero(kind: AlgebraKind<F>) -> Self {
        AlgebraElement {
            kind,
            terms: BTreeMap::new(),
        }
    }

    pub fn basis(kind: AlgebraKind<F>, sym: BasisSymbol) -> Result<Self, AlgebraError> {
        Self::from_terms(kind, [(sym, F::one())])
    }

    pub fn from_terms(
        kind: AlgebraKind<F>,
        terms: impl IntoIterator<Item = (BasisSymbol, F)>,
    ) -> Result<Self, AlgebraError> {
        let terms: Vec<_> = terms.into_iter().collect();
        for (sym, _) in &terms {
            kind.validate_symbol(sym)?;
        }
        Ok(Self::from_terms_unchecked(kind, terms))
    }

    fn from_terms_unchecked(
        kind: AlgebraKind<F>,
        terms: impl IntoIterator<Item = (BasisSymbol, F)>,
    ) -> Self {
        let mut out = Self::zero(kind);
        for (sym, c) in terms {
            add_term(&mut out.terms, sym, c);
        }
        out
    }

    pub fn kind(&self) -> &AlgebraKind<F> {
        &self.kind
    }

    pub fn terms(&self) -> impl Iterator<Item = (&BasisSymbol, &F)> {
        self.terms.iter()
    }

    pub fn coeff(&self, sym: &BasisSymbol) -> F {
        self.terms.get(sym).cloned().unwrap_or_else(F::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scale(&self, c: &F) -> Self {
        Self::from_terms_unchecked(
            self.kind.clone(),
            self.terms.iter().map(|(s, a)| (*s, a.clone() * c)),
        )
    }

    pub fn add(&self, rhs: &Self) -> Result<Self, AlgebraError> {
        self.same_kind(rhs)?;
        let mut out = self.clone();
        for (s, c) in &rhs.terms {
            add_term(&mut out.terms, *s, c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, rhs: &Self) -> Result<Self, AlgebraError> {
        self.add(&rhs.scale(&-F::one()))
    }

    fn same_kind(&self, rhs: &Self) -> Result<(), AlgebraError> {
        if self.kind == rhs.kind {
            Ok(())
        } else {
            Err(AlgebraError::KindMismatch)
        }
    }

    /// Bilinear extension of [`AlgebraKind::bracket_basis`].
    pub fn bracket(&self, rhs: &Self) -> Result<Self, AlgebraError> {
        self.same_kind(rhs)?;
        let mut terms = BTreeMap::new();
        for (x, a) in &self.terms {
            for (y, b) in &rhs.terms {
                let ab = a.clone() * b;
                for (s, c) in self.kind.checked_raw_bracket(x, y)? {
                    add_term(&mut terms, s, c * &ab);
                }
            }
        }
        Ok(AlgebraElement {
            kind: self.kind.clone(),
            terms,
        })
    }
}

fn add_term<F: Field>(terms: &mut BTreeMap<BasisSymbol, F>, sym: BasisSymbol, c: F) {
    if c.is_zero() {
        return;
    }
    match terms.get_mut(&sym) {
        Some(existing) => {
            let sum = existing.clone() + &c;
            if sum.is_zero() {
                terms.remove(&sym);
            } else {
                *existing = sum;
            }
        }
        None => {
            terms.insert(sym, c);
        }
    }
}

impl<F: Field> fmt::Display for AlgebraElement<F> {
    /// e.g. `-4*L(0,1) + 1/2*C(1)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (idx, (sym, c)) in self.terms.iter().enumerate() {
            crate::poly::write_term(f, c, &sym.to_string(), idx == 0)?;
        }
        Ok(())
    }
}

impl<F: Field> Serialize for AlgebraElement<F> {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct JacobiReport {
    pub check: &'static str,
    pub algebra: String,
    #[serde(rename = "box")]
    pub bx: IndexBox,
    pub triples: usize,
    pub violations: Vec<[BasisSymbol; 3]>,
}

impl JacobiReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

type Terms<F> = BTreeMap<BasisSymbol, F>;

fn bracket_terms<F: Field>(
    kind: &AlgebraKind<F>,
    lhs: &Terms<F>,
    y: &BasisSymbol,
    acc: &mut Terms<F>,
) -> Result<(), AlgebraError> {
    for (x, a) in lhs {
        for (s, c) in kind.checked_raw_bracket(x, y)? {
            add_term(acc, s, c * a);
        }
    }
    Ok(())
}

/// Verifies `[[x,y],z] + [[y,z],x] + [[z,x],y] = 0` for every ordered triple
/// of basis symbols in the box.
pub fn jacobi_check<F: Field>(
    kind: &AlgebraKind<F>,
    bx: &IndexBox,
) -> Result<JacobiReport, AlgebraError> {
    let symbols = kind.symbols(bx);
    let n = symbols.len();
    let mut table: Vec<Terms<F>> = Vec::with_capacity(n * n);
    for x in &symbols {
        for y in &symbols {
            table.push(kind.checked_raw_bracket(x, y)?.into_iter().collect());
        }
    }
    let per_first: Vec<Result<Vec<[BasisSymbol; 3]>, AlgebraError>> = (0..n)
        .into_par_iter()
        .map(|a| {
            let mut bad = Vec::new();
            for b in 0..n {
                for c in 0..n {
                    let mut acc = Terms::new();
                    bracket_terms(kind, &table[a * n + b], &symbols[c], &mut acc)?;
                    bracket_terms(kind, &table[b * n + c], &symbols[a], &mut acc)?;
                    bracket_terms(kind, &table[c * n + a], &symbols[b], &mut acc)?;
                    if !acc.is_empty() {
                        bad.push([symbols[a], symbols[b], symbols[c]]);
                    }
                }
            }
            Ok(bad)
        })
        .collect();
    let mut violations = Vec::new();
    for part in per_first {
        violations.extend(part?);
    }
    Ok(JacobiReport {
        check: "jacobi",
        algebra: kind.to_string(),
        bx: *bx,
        triples: n * n * n,
        violations,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct CentralityReport {
    pub check: &'static str,
    pub algebra: String,
    pub element: String,
    pub central: bool,
    /// First basis symbol `x` with `[z, x] ≠ 0`, and the bracket.
    pub witness: Option<(BasisSymbol, String)>,
    pub symbols_checked: usize,
}

pub fn centrality_check<F: Field>(
    kind: &AlgebraKind<F>,
    z: &AlgebraElement<F>,
    bx: &IndexBox,
) -> Result<CentralityReport, AlgebraError> {
    if z.kind() != kind {
        return Err(AlgebraError::KindMismatch);
    }
    let symbols = kind.symbols(bx);
    let mut witness = None;
    for x in &symbols {
        let br = z.bracket(&AlgebraElement::basis(kind.clone(), *x)?)?;
        if !br.is_zero() {
            witness = Some((*x, br.to_string()));
            break;
        }
    }
    Ok(CentralityReport {
        check: "centrality",
        algebra: kind.to_string(),
        element: z.to_string(),
        central: witness.is_none(),
        witness,
        symbols_checked: symbols.len(),
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct EmbeddingReport {
    pub check: &'static str,
    pub q: String,
    pub pairs: usize,
    pub violations: Vec<(BasisSymbol, BasisSymbol)>,
}

impl EmbeddingReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks that `L_m ↦ q⁻¹ L_{m,0}`, `C ↦ q⁻² C` is a homomorphism from the
/// Virasoro algebra into the Block algebra, for `m` in `bx.first`.
pub fn virasoro_embedding_check<F: Field>(
    q: &F,
    bx: &IndexBox,
) -> Result<EmbeddingReport, AlgebraError> {
    let block = AlgebraKind::block(q.clone())?;
    let vir = AlgebraKind::<F>::Virasoro;
    let q_inv = q.inverse().expect("q is nonzero");
    let q_inv2 = q_inv.clone() * &q_inv;
    let image = |e: &AlgebraElement<F>| -> Result<AlgebraElement<F>, AlgebraError> {
        let terms = e.terms().map(|(s, c)| match *s {
            BasisSymbol::L(m, _) => (BasisSymbol::l2(m, 0), c.clone() * &q_inv),
            BasisSymbol::C(_) => (BasisSymbol::c(), c.clone() * &q_inv2),
        });
        AlgebraElement::from_terms(block.clone(), terms)
    };
    let symbols = vir.symbols(&IndexBox::new(bx.first, (0, 0)));
    let mut violations = Vec::new();
    let mut pairs = 0;
    for x in &symbols {
        for y in &symbols {
            let ex = AlgebraElement::basis(vir.clone(), *x)?;
            let ey = AlgebraElement::basis(vir.clone(), *y)?;
            let lhs = image(&ex.bracket(&ey)?)?;
            let rhs = image(&ex)?.bracket(&image(&ey)?)?;
            pairs += 1;
            if lhs != rhs {
                violations.push((*x, *y));
            }
        }
    }
    Ok(EmbeddingReport {
        check: "virasoro-embedding",
        q: q.to_string(),
        pairs,
        violations,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct ExclusionReport {
    pub check: &'static str,
    pub q: String,
    pub excluded: BasisSymbol,
    pub evaluations: usize,
    /// Evaluations whose unrestricted bracket had a nonzero coefficient on
    /// the excluded symbol.
    pub emitted: usize,
}

/// Samples random brackets in the derived Block algebra `B(q)` with
/// `-2q ∈ ℕ` and counts any that would land on `L_{0,-2q}`.
///
/// Half of the samples are drawn from pairs whose indices sum to the
/// excluded symbol, so the vanishing coefficient is actually exercised.
pub fn exclusion_probe<F: Field, R: Rng>(
    q: &F,
    samples: usize,
    rng: &mut R,
) -> Result<ExclusionReport, AlgebraError> {
    let block = AlgebraKind::block(q.clone())?;
    let hat = AlgebraKind::block_hat(q.clone())?;
    let ex = block.excluded_second().ok_or_else(|| {
        AlgebraError::InvalidKind(format!("-2q is not a positive integer for q={q}"))
    })?;
    let banned = BasisSymbol::l2(0, ex);
    let mut emitted = 0;
    let mut evaluations = 0;
    while evaluations < samples {
        let m = rng.gen_range(-6..=6);
        let i = rng.gen_range(0..=ex + 2);
        let (n, j) = if rng.gen_bool(0.5) {
            (-m, ex - i)
        } else {
            (rng.gen_range(-6..=6), rng.gen_range(0..=ex + 2))
        };
        let x = BasisSymbol::l2(m, i);
        let y = BasisSymbol::l2(n, j);
        if block.validate_symbol(&x).is_err() || block.validate_symbol(&y).is_err() {
            continue;
        }
        evaluations += 1;
        let raw = hat.raw_bracket(&x, &y);
        let hits_banned = raw.iter().any(|(s, c)| *s == banned && !c.is_zero());
        let derived = block.bracket_basis(&x, &y);
        if hits_banned || derived.is_err() {
            emitted += 1;
        }
    }
    Ok(ExclusionReport {
        check: "exclusion",
        q: q.to_string(),
        excluded: banned,
        evaluations,
        emitted,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_element;
    use crate::GaussianRational as Q;

    fn q(text: &str) -> Q {
        text.parse().unwrap()
    }

    fn el(kind: &AlgebraKind<Q>, text: &str) -> AlgebraElement<Q> {
        parse_element(kind, text).unwrap()
    }

    #[test]
    fn exclusion_in_derived_block_algebra() {
        let b = AlgebraKind::block(q("-1")).unwrap();
        let err = b.validate_symbol(&BasisSymbol::l2(0, 2)).unwrap_err();
        assert!(matches!(err, AlgebraError::ExcludedSymbol { .. }));
        assert!(err.to_string().contains("-2q=2∈ℕ"));
        let b1 = AlgebraKind::block(q("1")).unwrap();
        assert!(b1.validate_symbol(&BasisSymbol::l2(0, 2)).is_ok());
        let hat = AlgebraKind::block_hat(q("-1")).unwrap();
        assert!(hat.validate_symbol(&BasisSymbol::l2(0, 2)).is_ok());
    }

    #[test]
    fn truncation_and_arity() {
        let t = AlgebraKind::block_trunc(q("-1"), 0, 1).unwrap();
        assert!(matches!(
            t.validate_symbol(&BasisSymbol::l2(5, 2)),
            Err(AlgebraError::TruncationRange { .. })
        ));
        assert!(matches!(
            AlgebraKind::<Q>::LoopVirasoro.validate_symbol(&BasisSymbol::l(1)),
            Err(AlgebraError::Arity { .. })
        ));
        assert!(matches!(
            AlgebraKind::block(q("2"))
                .unwrap()
                .validate_symbol(&BasisSymbol::l2(1, -1)),
            Err(AlgebraError::NegativeSecondIndex { .. })
        ));
        assert!(AlgebraKind::block_trunc(q("1"), 2, 1).is_err());
        assert!(AlgebraKind::block(q("0")).is_err());
    }

    #[test]
    fn spot_brackets() {
        let lp = AlgebraKind::<Q>::LoopVirasoro;
        let br = lp
            .bracket_basis(&BasisSymbol::l2(2, 1), &BasisSymbol::l2(-2, 0))
            .unwrap();
        assert_eq!(br, el(&lp, "-4*L(0,1) + 1/2*C(1)"));
        assert_eq!(br.to_string(), "-4*L(0,1) + 1/2*C(1)");

        let b1 = AlgebraKind::block(q("1")).unwrap();
        assert!(b1
            .bracket_basis(&BasisSymbol::l2(1, 0), &BasisSymbol::l2(2, 1))
            .unwrap()
            .is_zero());

        let vir = AlgebraKind::<Q>::Virasoro;
        let br = vir
            .bracket_basis(&BasisSymbol::l(2), &BasisSymbol::l(-2))
            .unwrap();
        assert_eq!(br, el(&vir, "-4*L(0) + 1/2*C"));
    }

    #[test]
    fn bilinear_bracket() {
        let lp = AlgebraKind::<Q>::LoopVirasoro;
        let x = el(&lp, "L(1,1)");
        let y = el(&lp, "L(-2,3)");
        let two_x_three_y = el(&lp, "2*L(1,1) + 3*L(-2,3)");
        assert_eq!(
            x.bracket(&two_x_three_y).unwrap(),
            x.bracket(&y).unwrap().scale(&q("3"))
        );
        assert!(AlgebraElement::zero(lp.clone())
            .bracket(&x)
            .unwrap()
            .is_zero());
        let lhs = el(&lp, "L(1,1) + L(2,2)");
        let rhs = el(&lp, "L(0,1)");
        assert_eq!(lhs.bracket(&rhs).unwrap(), el(&lp, "-L(1,2) - 2*L(2,3)"));
        let vir = AlgebraElement::basis(AlgebraKind::Virasoro, BasisSymbol::l(1)).unwrap();
        assert_eq!(x.bracket(&vir), Err(AlgebraError::KindMismatch));
    }

    #[test]
    fn jacobi_small_boxes() {
        let lp = AlgebraKind::<Q>::LoopVirasoro;
        let rep = jacobi_check(&lp, &lp.default_box(2)).unwrap();
        assert!(rep.passed(), "{:?}", rep.violations);
        let b = AlgebraKind::block(q("3/2")).unwrap();
        let rep = jacobi_check(&b, &IndexBox::new((-2, 2), (0, 2))).unwrap();
        assert!(rep.passed());
    }

    #[test]
    fn centrality_examples() {
        let hat = AlgebraKind::block_hat(q("-3")).unwrap();
        let z = AlgebraElement::basis(hat.clone(), BasisSymbol::l2(0, 3)).unwrap();
        assert!(
            centrality_check(&hat, &z, &hat.default_box(3))
                .unwrap()
                .central
        );

        let lp = AlgebraKind::<Q>::LoopVirasoro;
        let c7 = AlgebraElement::basis(lp.clone(), BasisSymbol::cj(7)).unwrap();
        assert!(
            centrality_check(&lp, &c7, &lp.default_box(3))
                .unwrap()
                .central
        );

        let hat2 = AlgebraKind::block_hat(q("2")).unwrap();
        let z = AlgebraElement::basis(hat2.clone(), BasisSymbol::l2(0, 1)).unwrap();
        let rep = centrality_check(&hat2, &z, &IndexBox::new((0, 1), (0, 0))).unwrap();
        assert!(!rep.central);
        assert_eq!(rep.witness.unwrap().0, BasisSymbol::l2(1, 0));
    }

    #[test]
    fn embedding() {
        for qq in ["2", "-1", "1/2"] {
            let rep = virasoro_embedding_check(&q(qq), &IndexBox::new((-4, 4), (0, 0))).unwrap();
            assert!(rep.passed());
            assert_eq!(rep.pairs, 10 * 10);
        }
    }

    #[test]
    fn abelian_degree_zero_part() {
        let lp = AlgebraKind::<Q>::LoopVirasoro;
        for j in -3..=3 {
            for l in -3..=3 {
                assert!(lp
                    .bracket_basis(&BasisSymbol::l2(0, j), &BasisSymbol::l2(0, l))
                    .unwrap()
                    .is_zero());
            }
        }
    }
}
