//! The rank-one free modules `Ω` and their tensor products, realized as exact
//! actions on polynomial spaces; action tables and the classification replay.
//!
//! Every module here has carrier `ℂ[t]` (or `ℂ[t1, …, tm]` for tensor
//! products) with `L_{0,0}` acting as multiplication by `t`. Each basis
//! symbol then acts by an *elementary* operator
//!
//! ```text
//! x · f(t) = c · (t - r) · f(t - s)      or      x · f(t) = c · f(t - s)
//! ```
//!
//! so actions reduce to a shift, an optional linear factor and a scale.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;
use serde_json::{json, Value};
use thiserror::Error;

use crate::algebra::{AlgebraElement, AlgebraKind, BasisSymbol, IndexBox};
use crate::error::{AlgebraError, ModuleError};
use crate::field::Field;
use crate::multipoly::MultiPolynomial;
use crate::poly::Polynomial;

/// Parameters `(λ, μ, α)` of a loop-Virasoro module `Ω(λ, μ, α)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LoopParams<F> {
    pub lambda: F,
    pub mu: F,
    pub alpha: F,
}

impl<F: Field> LoopParams<F> {
    pub fn new(lambda: F, mu: F, alpha: F) -> Self {
        LoopParams { lambda, mu, alpha }
    }
}

/// Which module a vector lives in.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ModuleSpec<F> {
    /// `Ω(λ, α)` over the Virasoro algebra.
    OmegaVir { lambda: F, alpha: F },
    /// `Ω(λ, μ, α)` over the loop-Virasoro algebra.
    OmegaLoop(LoopParams<F>),
    /// `Ω(λ, α)` over the Block algebra `B(q)`, `q ∉ {0, -1}`.
    OmegaBlock { q: F, lambda: F, alpha: F },
    /// `Ω(λ, α, β)` over `B(-1)`.
    OmegaBlockHv { lambda: F, alpha: F, beta: F },
    /// `Ω(λ1, μ1, α1) ⊗ ⋯ ⊗ Ω(λm, μm, αm)` over the loop-Virasoro algebra.
    TensorOmega { factors: Vec<LoopParams<F>> },
}

fn nonzero<F: Field>(x: &F, name: &str) -> Result<(), ModuleError> {
    if x.is_zero() {
        Err(ModuleError::InvalidSpec(format!("{name} must be nonzero")))
    } else {
        Ok(())
    }
}

impl<F: Field> ModuleSpec<F> {
    pub fn vir(lambda: F, alpha: F) -> Result<Self, ModuleError> {
        nonzero(&lambda, "λ")?;
        Ok(ModuleSpec::OmegaVir { lambda, alpha })
    }

    pub fn loop_module(lambda: F, mu: F, alpha: F) -> Result<Self, ModuleError> {
        nonzero(&lambda, "λ")?;
        nonzero(&mu, "μ")?;
        Ok(ModuleSpec::OmegaLoop(LoopParams { lambda, mu, alpha }))
    }

    pub fn block(q: F, lambda: F, alpha: F) -> Result<Self, ModuleError> {
        nonzero(&q, "q")?;
        if q == -F::one() {
            return Err(ModuleError::InvalidSpec(
                "q = -1 carries the extra parameter β; use the Ω(λ, α, β) family".into(),
            ));
        }
        nonzero(&lambda, "λ")?;
        Ok(ModuleSpec::OmegaBlock { q, lambda, alpha })
    }

    pub fn block_hv(lambda: F, alpha: F, beta: F) -> Result<Self, ModuleError> {
        nonzero(&lambda, "λ")?;
        Ok(ModuleSpec::OmegaBlockHv {
            lambda,
            alpha,
            beta,
        })
    }

    pub fn tensor(factors: Vec<LoopParams<F>>) -> Result<Self, ModuleError> {
        if factors.is_empty() {
            return Err(ModuleError::InvalidSpec(
                "a tensor product needs at least one factor".into(),
            ));
        }
        for p in &factors {
            nonzero(&p.lambda, "λ")?;
            nonzero(&p.mu, "μ")?;
        }
        Ok(ModuleSpec::TensorOmega { factors })
    }

    /// The algebra acting on the module.
    pub fn algebra(&self) -> AlgebraKind<F> {
        match self {
            ModuleSpec::OmegaVir { .. } => AlgebraKind::Virasoro,
            ModuleSpec::OmegaLoop(_) | ModuleSpec::TensorOmega { .. } => AlgebraKind::LoopVirasoro,
            ModuleSpec::OmegaBlock { q, .. } => AlgebraKind::Block { q: q.clone() },
            ModuleSpec::OmegaBlockHv { .. } => AlgebraKind::Block { q: -F::one() },
        }
    }

    /// Number of polynomial variables in the carrier.
    pub fn nvars(&self) -> usize {
        match self {
            ModuleSpec::TensorOmega { factors } => factors.len(),
            _ => 1,
        }
    }

    pub fn is_tensor(&self) -> bool {
        matches!(self, ModuleSpec::TensorOmega { .. })
    }

    pub fn one(&self) -> ModuleVector<F> {
        match self {
            ModuleSpec::TensorOmega { factors } => {
                ModuleVector::Tensor(MultiPolynomial::one(factors.len()))
            }
            _ => ModuleVector::Poly(Polynomial::one()),
        }
    }

    pub fn zero(&self) -> ModuleVector<F> {
        match self {
            ModuleSpec::TensorOmega { factors } => {
                ModuleVector::Tensor(MultiPolynomial::zero(factors.len()))
            }
            _ => ModuleVector::Poly(Polynomial::zero()),
        }
    }

    /// JSON object with the family name and the parameters as scalar literals.
    pub fn to_json(&self) -> Value {
        let scalar = |x: &F| Value::String(x.to_string());
        let factor = |p: &LoopParams<F>| json!({"lambda": scalar(&p.lambda), "mu": scalar(&p.mu), "alpha": scalar(&p.alpha)});
        match self {
            ModuleSpec::OmegaVir { lambda, alpha } => {
                json!({"family": "omega-vir", "lambda": scalar(lambda), "alpha": scalar(alpha)})
            }
            ModuleSpec::OmegaLoop(p) => {
                let mut v = factor(p);
                v["family"] = json!("omega-loop");
                v
            }
            ModuleSpec::OmegaBlock { q, lambda, alpha } => json!({
                "family": "omega-block", "q": scalar(q),
                "lambda": scalar(lambda), "alpha": scalar(alpha)
            }),
            ModuleSpec::OmegaBlockHv {
                lambda,
                alpha,
                beta,
            } => json!({
                "family": "omega-block-hv", "q": "-1",
                "lambda": scalar(lambda), "alpha": scalar(alpha), "beta": scalar(beta)
            }),
            ModuleSpec::TensorOmega { factors } => json!({
                "family": "tensor",
                "factors": factors.iter().map(factor).collect::<Vec<_>>()
            }),
        }
    }

    /// Whether the zero-constant-term subspace `tΩ` is a submodule by the
    /// closed-form action: `α = 0` (and `β = 0` for `Ω(λ, α, β)`).
    pub fn has_t_submodule(&self) -> bool {
        match self {
            ModuleSpec::OmegaVir { alpha, .. } | ModuleSpec::OmegaBlock { alpha, .. } => {
                alpha.is_zero()
            }
            ModuleSpec::OmegaLoop(p) => p.alpha.is_zero(),
            ModuleSpec::OmegaBlockHv { alpha, beta, .. } => alpha.is_zero() && beta.is_zero(),
            ModuleSpec::TensorOmega { factors } => factors.iter().any(|p| p.alpha.is_zero()),
        }
    }
}

impl<F: Field> fmt::Display for ModuleSpec<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ModuleSpec::OmegaVir { lambda, alpha } => write!(f, "Ω_vir(λ={lambda}, α={alpha})"),
            ModuleSpec::OmegaLoop(p) => {
                write!(f, "Ω(λ={}, μ={}, α={})", p.lambda, p.mu, p.alpha)
            }
            ModuleSpec::OmegaBlock { q, lambda, alpha } => {
                write!(f, "Ω_B(q={q}; λ={lambda}, α={alpha})")
            }
            ModuleSpec::OmegaBlockHv {
                lambda,
                alpha,
                beta,
            } => write!(f, "Ω_B(q=-1; λ={lambda}, α={alpha}, β={beta})"),
            ModuleSpec::TensorOmega { factors } => {
                let parts: Vec<String> = factors
                    .iter()
                    .map(|p| format!("Ω({}, {}, {})", p.lambda, p.mu, p.alpha))
                    .collect();
                write!(f, "{}", parts.join(" ⊗ "))
            }
        }
    }
}

/// A vector of a module: a polynomial in `t`, or in `t1, …, tm` for tensor
/// products.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum ModuleVector<F> {
    Poly(Polynomial<F>),
    Tensor(MultiPolynomial<F>),
}

impl<F: Field> ModuleVector<F> {
    pub fn is_zero(&self) -> bool {
        match self {
            ModuleVector::Poly(p) => p.is_zero(),
            ModuleVector::Tensor(p) => p.is_zero(),
        }
    }

    pub fn scale(&self, c: &F) -> Self {
        match self {
            ModuleVector::Poly(p) => ModuleVector::Poly(p.scale(c)),
            ModuleVector::Tensor(p) => ModuleVector::Tensor(p.scale(c)),
        }
    }

    pub fn try_add(&self, rhs: &Self) -> Result<Self, ModuleError> {
        match (self, rhs) {
            (ModuleVector::Poly(a), ModuleVector::Poly(b)) => Ok(ModuleVector::Poly(a + b)),
            (ModuleVector::Tensor(a), ModuleVector::Tensor(b)) if a.nvars() == b.nvars() => {
                Ok(ModuleVector::Tensor(a + b))
            }
            _ => Err(ModuleError::KindMismatch(
                "vectors of different modules".into(),
            )),
        }
    }

    pub fn try_sub(&self, rhs: &Self) -> Result<Self, ModuleError> {
        self.try_add(&rhs.scale(&-F::one()))
    }

    pub fn as_poly(&self) -> Option<&Polynomial<F>> {
        match self {
            ModuleVector::Poly(p) => Some(p),
            ModuleVector::Tensor(_) => None,
        }
    }

    pub fn as_tensor(&self) -> Option<&MultiPolynomial<F>> {
        match self {
            ModuleVector::Tensor(p) => Some(p),
            ModuleVector::Poly(_) => None,
        }
    }
}

impl<F: Field> fmt::Display for ModuleVector<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ModuleVector::Poly(p) => write!(f, "{p}"),
            ModuleVector::Tensor(p) => write!(f, "{p}"),
        }
    }
}

impl<F: Field> fmt::Debug for ModuleVector<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl<F: Field> From<Polynomial<F>> for ModuleVector<F> {
    fn from(p: Polynomial<F>) -> Self {
        ModuleVector::Poly(p)
    }
}

impl<F: Field> From<MultiPolynomial<F>> for ModuleVector<F> {
    fn from(p: MultiPolynomial<F>) -> Self {
        ModuleVector::Tensor(p)
    }
}

/// `x · f(t) = scale · (t - root) · f(t - shift)`, the linear factor being
/// absent when `root` is `None`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Elementary<F> {
    pub scale: F,
    pub shift: F,
    pub root: Option<F>,
}

impl<F: Field> Elementary<F> {
    pub fn apply(&self, f: &Polynomial<F>) -> Polynomial<F> {
        let shifted = f.shift(&self.shift);
        let factored = match &self.root {
            Some(r) => shifted.mul_linear(r),
            None => shifted,
        };
        factored.scale(&self.scale)
    }

    /// Acts in the variable `t_{k+1}` of a multivariate polynomial.
    pub fn apply_var(&self, f: &MultiPolynomial<F>, k: usize) -> MultiPolynomial<F> {
        let shifted = f.shift_var(k, &self.shift);
        let factored = match &self.root {
            Some(r) => shifted.mul_linear_var(k, r),
            None => shifted,
        };
        factored.scale(&self.scale)
    }
}

fn loop_elementary<F: Field>(
    p: &LoopParams<F>,
    i: i64,
    j: i64,
) -> Result<Elementary<F>, ModuleError> {
    // λ^{i-j} μ^j (t - iα) f(t - i)
    let scale = p.lambda.pow_int(i - j)? * &p.mu.pow_int(j)?;
    let fi = F::from_i64(i);
    Ok(Elementary {
        scale,
        root: Some(fi.clone() * &p.alpha),
        shift: fi,
    })
}

/// The elementary operator of `sym` on a rank-one module, `None` when the
/// symbol acts as zero. Tensor products have no single elementary operator.
pub fn elementary<F: Field>(
    spec: &ModuleSpec<F>,
    sym: &BasisSymbol,
) -> Result<Option<Elementary<F>>, ModuleError> {
    spec.algebra().validate_symbol(sym)?;
    let BasisSymbol::L(i, second) = *sym else {
        return Ok(None);
    };
    match spec {
        ModuleSpec::OmegaVir { lambda, alpha } => {
            // λ^i (t - iα) f(t - i)
            let fi = F::from_i64(i);
            Ok(Some(Elementary {
                scale: lambda.pow_int(i)?,
                root: Some(fi.clone() * alpha),
                shift: fi,
            }))
        }
        ModuleSpec::OmegaLoop(p) => {
            let j = second.expect("validated arity");
            loop_elementary(p, i, j).map(Some)
        }
        ModuleSpec::OmegaBlock { q, lambda, alpha } => {
            // λ^m δ_{i,0} (t - mqα) f(t - mq)
            if second != Some(0) {
                return Ok(None);
            }
            let mq = F::from_i64(i) * q;
            Ok(Some(Elementary {
                scale: lambda.pow_int(i)?,
                root: Some(mq.clone() * alpha),
                shift: mq,
            }))
        }
        ModuleSpec::OmegaBlockHv {
            lambda,
            alpha,
            beta,
        } => {
            // q = -1: λ^m (δ_{i,0} (t + mα) + δ_{i,1} β) f(t + m)
            let m = F::from_i64(i);
            let shift = -m.clone();
            match second {
                Some(0) => Ok(Some(Elementary {
                    scale: lambda.pow_int(i)?,
                    root: Some(-(m * alpha)),
                    shift,
                })),
                Some(1) if !beta.is_zero() => Ok(Some(Elementary {
                    scale: lambda.pow_int(i)? * beta,
                    root: None,
                    shift,
                })),
                _ => Ok(None),
            }
        }
        ModuleSpec::TensorOmega { .. } => Err(ModuleError::KindMismatch(
            "tensor products act through the Leibniz rule, not a single operator".into(),
        )),
    }
}

/// Action of one basis symbol on a vector.
pub fn act_basis<F: Field>(
    spec: &ModuleSpec<F>,
    sym: &BasisSymbol,
    v: &ModuleVector<F>,
) -> Result<ModuleVector<F>, ModuleError> {
    match (spec, v) {
        (ModuleSpec::TensorOmega { factors }, ModuleVector::Tensor(f)) => {
            if f.nvars() != factors.len() {
                return Err(ModuleError::KindMismatch(format!(
                    "vector in {} variables for a {}-fold tensor product",
                    f.nvars(),
                    factors.len()
                )));
            }
            spec.algebra().validate_symbol(sym)?;
            let mut out = MultiPolynomial::zero(factors.len());
            if let BasisSymbol::L(i, Some(j)) = *sym {
                // Leibniz rule: x acts on one tensor factor at a time.
                for (k, p) in factors.iter().enumerate() {
                    let op = loop_elementary(p, i, j)?;
                    out = &out + &op.apply_var(f, k);
                }
            }
            Ok(ModuleVector::Tensor(out))
        }
        (ModuleSpec::TensorOmega { .. }, ModuleVector::Poly(_)) => Err(ModuleError::KindMismatch(
            "tensor products act on multivariate polynomials".into(),
        )),
        (_, ModuleVector::Poly(f)) => Ok(ModuleVector::Poly(match elementary(spec, sym)? {
            Some(op) => op.apply(f),
            None => Polynomial::zero(),
        })),
        (_, ModuleVector::Tensor(_)) => Err(ModuleError::KindMismatch(
            "rank-one modules act on univariate polynomials".into(),
        )),
    }
}

/// Linear extension of [`act_basis`].
pub fn act_element<F: Field>(
    spec: &ModuleSpec<F>,
    e: &AlgebraElement<F>,
    v: &ModuleVector<F>,
) -> Result<ModuleVector<F>, ModuleError> {
    if *e.kind() != spec.algebra() {
        return Err(ModuleError::KindMismatch(format!(
            "element of {} acting on a {}-module",
            e.kind(),
            spec.algebra()
        )));
    }
    let mut acc = spec.zero();
    if matches!(
        (&acc, v),
        (ModuleVector::Poly(_), ModuleVector::Tensor(_))
            | (ModuleVector::Tensor(_), ModuleVector::Poly(_))
    ) {
        return Err(ModuleError::KindMismatch(
            "vector shape does not fit the module".into(),
        ));
    }
    for (sym, c) in e.terms() {
        acc = acc.try_add(&act_basis(spec, sym, v)?.scale(c))?;
    }
    Ok(acc)
}

/// `ψ: tΩ(λ, μ, 0) → Ω(λ, μ, 1)`, `t·g(t) ↦ g(t)`.
pub fn psi_iso_map<F: Field>(g: &Polynomial<F>) -> Result<Polynomial<F>, ModuleError> {
    g.div_t()
        .ok_or_else(|| ModuleError::NotInSubmodule(g.to_string()))
}

/// Images `x · 1` of the basis symbols of a box: a candidate rank-one action.
#[derive(Clone, PartialEq, Eq)]
pub struct ActionTable<F> {
    pub kind: AlgebraKind<F>,
    pub bx: IndexBox,
    pub entries: BTreeMap<BasisSymbol, Polynomial<F>>,
}

impl<F: Field> fmt::Debug for ActionTable<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ActionTable")
            .field("kind", &self.kind)
            .field("box", &self.bx)
            .field("entries", &self.entries)
            .finish()
    }
}

impl<F: Field> ActionTable<F> {
    pub fn new(kind: AlgebraKind<F>, bx: IndexBox) -> Self {
        ActionTable {
            kind,
            bx,
            entries: BTreeMap::new(),
        }
    }

    pub fn insert(&mut self, sym: BasisSymbol, image: Polynomial<F>) -> Result<(), AlgebraError> {
        self.kind.validate_symbol(&sym)?;
        self.entries.insert(sym, image);
        Ok(())
    }

    pub fn get(&self, sym: &BasisSymbol) -> Option<&Polynomial<F>> {
        self.entries.get(sym)
    }

    /// Shift amount of `sym` under the rank-one ansatz
    /// `x · f(t) = f(t - s) · (x · 1)`: the first index, times `q` for Block
    /// algebras; zero for central symbols.
    fn shift_of(&self, sym: &BasisSymbol) -> F {
        match (sym, self.kind.q()) {
            (BasisSymbol::L(i, _), Some(q)) => F::from_i64(*i) * q,
            (BasisSymbol::L(i, _), None) => F::from_i64(*i),
            (BasisSymbol::C(_), _) => F::zero(),
        }
    }

    /// `x · f = f(t - s) · F_x(t)` using the table entry for `x`.
    pub fn act(&self, sym: &BasisSymbol, f: &Polynomial<F>) -> Option<Polynomial<F>> {
        let entry = self.entries.get(sym)?;
        Some(&f.shift(&self.shift_of(sym)) * entry)
    }
}

/// Tabulates `x · 1` for every symbol of the box.
pub fn build_action_table<F: Field>(
    spec: &ModuleSpec<F>,
    bx: &IndexBox,
) -> Result<ActionTable<F>, ModuleError> {
    if spec.is_tensor() {
        return Err(ModuleError::KindMismatch(
            "action tables describe rank-one modules only".into(),
        ));
    }
    let kind = spec.algebra();
    let mut table = ActionTable::new(kind.clone(), *bx);
    let one = Polynomial::one();
    for sym in kind.symbols(bx) {
        let image = match elementary(spec, &sym)? {
            Some(op) => op.apply(&one),
            None => Polynomial::zero(),
        };
        table.entries.insert(sym, image);
    }
    Ok(table)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EntryMismatch {
    pub symbol: BasisSymbol,
    pub expected: String,
    pub found: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TemplateMatch {
    pub matches: bool,
    pub first_mismatch: Option<EntryMismatch>,
}

/// Compares every entry with the closed form of the module `spec`.
pub fn match_template<F: Field>(
    table: &ActionTable<F>,
    spec: &ModuleSpec<F>,
) -> Result<TemplateMatch, ModuleError> {
    if spec.algebra() != table.kind {
        return Err(ModuleError::KindMismatch(format!(
            "table over {} compared with a {}-module",
            table.kind,
            spec.algebra()
        )));
    }
    let one = Polynomial::one();
    for (sym, found) in &table.entries {
        let expected = match elementary(spec, sym)? {
            Some(op) => op.apply(&one),
            None => Polynomial::zero(),
        };
        if &expected != found {
            return Ok(TemplateMatch {
                matches: false,
                first_mismatch: Some(EntryMismatch {
                    symbol: *sym,
                    expected: expected.to_string(),
                    found: found.to_string(),
                }),
            });
        }
    }
    Ok(TemplateMatch {
        matches: true,
        first_mismatch: None,
    })
}

/// A failed identity found while replaying the classification on a table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    /// The identity that fails, stated as its negation (e.g. `e_1 ≠ 0`).
    pub failed: String,
    pub symbol: Option<BasisSymbol>,
    pub detail: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.failed)?;
        if let Some(sym) = &self.symbol {
            write!(f, " at {sym}")?;
        }
        if !self.detail.is_empty() {
            write!(f, " ({})", self.detail)?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum DeriveError {
    #[error("table lacks the entry {0}")]
    MissingEntry(BasisSymbol),
    #[error("{symbol}·1 = {found} must have degree 1 for a rank-one free module")]
    DegreeMismatch { symbol: BasisSymbol, found: String },
    #[error("inconsistent entry: {0}")]
    InconsistentEntry(Violation),
    #[error("cannot classify tables over {0}")]
    Unsupported(String),
}

/// Parameters recovered from an action table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DerivedParameters<F> {
    OmegaVir { lambda: F, alpha: F },
    OmegaLoop { lambda: F, mu: F, alpha: F },
    OmegaBlock { q: F, lambda: F, alpha: F },
    OmegaBlockHv { lambda: F, alpha: F, beta: F },
}

impl<F: Field> DerivedParameters<F> {
    pub fn to_spec(&self) -> Result<ModuleSpec<F>, ModuleError> {
        match self.clone() {
            DerivedParameters::OmegaVir { lambda, alpha } => ModuleSpec::vir(lambda, alpha),
            DerivedParameters::OmegaLoop { lambda, mu, alpha } => {
                ModuleSpec::loop_module(lambda, mu, alpha)
            }
            DerivedParameters::OmegaBlock { q, lambda, alpha } => {
                ModuleSpec::block(q, lambda, alpha)
            }
            DerivedParameters::OmegaBlockHv {
                lambda,
                alpha,
                beta,
            } => ModuleSpec::block_hv(lambda, alpha, beta),
        }
    }

    pub fn to_json(&self) -> Value {
        let mut map = serde_json::Map::new();
        for (name, value) in self.named() {
            map.insert(json_key(name).to_string(), Value::String(value.to_string()));
        }
        Value::Object(map)
    }

    /// Named parameters in a fixed order.
    pub fn named(&self) -> Vec<(&'static str, &F)> {
        match self {
            DerivedParameters::OmegaVir { lambda, alpha } => vec![("λ", lambda), ("α", alpha)],
            DerivedParameters::OmegaLoop { lambda, mu, alpha } => {
                vec![("λ", lambda), ("μ", mu), ("α", alpha)]
            }
            DerivedParameters::OmegaBlock { q, lambda, alpha } => {
                vec![("q", q), ("λ", lambda), ("α", alpha)]
            }
            DerivedParameters::OmegaBlockHv {
                lambda,
                alpha,
                beta,
            } => vec![("λ", lambda), ("α", alpha), ("β", beta)],
        }
    }
}

/// ASCII spelling of a parameter name, used as its JSON key.
pub fn json_key(name: &str) -> &str {
    match name {
        "λ" => "lambda",
        "μ" => "mu",
        "α" => "alpha",
        "β" => "beta",
        other => other,
    }
}

impl<F: Field> fmt::Display for DerivedParameters<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .named()
            .into_iter()
            .map(|(n, v)| format!("{n}={v}"))
            .collect();
        write!(f, "({})", parts.join(", "))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Derivation<F> {
    pub params: DerivedParameters<F>,
    /// The box the identities were verified on; nothing is claimed outside it.
    pub bx: IndexBox,
    pub entries_checked: usize,
    pub commutators_checked: usize,
}

fn violation(
    failed: impl Into<String>,
    symbol: Option<BasisSymbol>,
    detail: impl Into<String>,
) -> DeriveError {
    DeriveError::InconsistentEntry(Violation {
        failed: failed.into(),
        symbol,
        detail: detail.into(),
    })
}

fn entry<F: Field>(
    table: &ActionTable<F>,
    sym: BasisSymbol,
) -> Result<&Polynomial<F>, DeriveError> {
    table.get(&sym).ok_or(DeriveError::MissingEntry(sym))
}

/// Reads `λ` and the root `r` from `F = λ (t - r)`.
fn read_linear<F: Field>(sym: BasisSymbol, f: &Polynomial<F>) -> Result<(F, F), DeriveError> {
    match f.degree_leading() {
        Ok((1, lead)) => {
            let root = -(f
                .coeff(0)
                .checked_div(&lead)
                .expect("leading coefficient is nonzero"));
            Ok((lead, root))
        }
        _ => Err(DeriveError::DegreeMismatch {
            symbol: sym,
            found: f.to_string(),
        }),
    }
}

/// Replays the constructive steps of the rank-one classification on a
/// finite table: reads the parameters off a few entries, then checks every
/// other entry against the resulting closed form and every commutator
/// `[x, y] · 1 = x · (y · 1) - y · (x · 1)` whose bracket stays in the table.
pub fn derive_parameters<F: Field>(table: &ActionTable<F>) -> Result<Derivation<F>, DeriveError> {
    let params = match &table.kind {
        AlgebraKind::Virasoro => derive_vir(table)?,
        AlgebraKind::LoopVirasoro => derive_loop(table)?,
        AlgebraKind::Block { q } => derive_block(table, q)?,
        other => return Err(DeriveError::Unsupported(other.to_string())),
    };
    let spec = params
        .to_spec()
        .map_err(|e| violation("parameters outside the family", None, e.to_string()))?;
    check_closed_form(table, &spec)?;
    let commutators_checked = check_commutators(table)?;
    Ok(Derivation {
        params,
        bx: table.bx,
        entries_checked: table.entries.len(),
        commutators_checked,
    })
}

fn derive_vir<F: Field>(table: &ActionTable<F>) -> Result<DerivedParameters<F>, DeriveError> {
    let sym = BasisSymbol::l(1);
    let (lambda, alpha) = read_linear(sym, entry(table, sym)?)?;
    entry(table, BasisSymbol::l(-1))?;
    Ok(DerivedParameters::OmegaVir { lambda, alpha })
}

fn derive_loop<F: Field>(table: &ActionTable<F>) -> Result<DerivedParameters<F>, DeriveError> {
    let s10 = BasisSymbol::l2(1, 0);
    let s11 = BasisSymbol::l2(1, 1);
    entry(table, BasisSymbol::l2(-1, 0))?;
    entry(table, BasisSymbol::l2(0, 1))?;
    // F_{1,0} = λ (t - α)
    let (lambda, alpha) = read_linear(s10, entry(table, s10)?)?;
    // F_{1,1} = μ (t - α)
    let f11 = entry(table, s11)?;
    let (quot, rem) = f11.div_linear(&alpha);
    if !rem.is_zero() {
        return Err(violation(
            "t - α does not divide F_{1,1}",
            Some(s11),
            format!("remainder {rem}"),
        ));
    }
    let mu = match quot.degree_leading() {
        Ok((0, mu)) => mu,
        _ => {
            return Err(violation(
                "F_{1,1}/(t - α) is not a nonzero constant",
                Some(s11),
                format!("quotient {quot}"),
            ))
        }
    };

    for (sym, f) in &table.entries {
        match *sym {
            BasisSymbol::L(0, Some(0)) => {
                if *f != Polynomial::t() {
                    return Err(violation("L(0,0)·1 ≠ t", Some(*sym), format!("found {f}")));
                }
            }
            BasisSymbol::L(i, Some(j)) if i == j => {
                // (t - iα) F(t - i) = (t - iα - i) F(t)
                let fi = F::from_i64(i);
                let root = fi.clone() * &alpha;
                let lhs = f.shift(&fi).mul_linear(&root);
                let rhs = f.mul_linear(&(root.clone() + &fi));
                if lhs != rhs {
                    return Err(violation(
                        format!(
                            "(t - {i}α)F_{{{i},{i}}}(t - {i}) ≠ (t - {i}α - {i})F_{{{i},{i}}}(t)"
                        ),
                        Some(*sym),
                        format!("found {f}"),
                    ));
                }
                let (mu_i, rem) = f.div_linear(&root);
                let expected = mu.pow_int(i).expect("μ is nonzero");
                if !rem.is_zero() || mu_i != Polynomial::constant(expected.clone()) {
                    return Err(violation(
                        format!("μ_{i} ≠ μ^{i}"),
                        Some(*sym),
                        format!("μ_{i} = {mu_i}, μ^{i} = {expected}"),
                    ));
                }
            }
            BasisSymbol::L(0, Some(j)) => {
                // F_{0,j} = λ^{-j} μ^j t + e_j with e_j = 0
                let coeff = lambda.pow_int(-j).expect("λ is nonzero")
                    * &mu.pow_int(j).expect("μ is nonzero");
                let e = f - &Polynomial::monomial(coeff.clone(), 1);
                if e.degree().is_some_and(|d| d > 0) {
                    return Err(violation(
                        format!("F_{{0,{j}}} - λ^{{{}}}μ^{j} t is not constant", -j),
                        Some(*sym),
                        format!("found {f}"),
                    ));
                }
                if !e.is_zero() {
                    return Err(violation(
                        format!("e_{j} ≠ 0"),
                        Some(*sym),
                        format!("e_{j} = {}", e.constant_term()),
                    ));
                }
            }
            BasisSymbol::C(Some(j)) if !f.is_zero() => {
                return Err(violation(
                    format!("c_{j} ≠ 0"),
                    Some(*sym),
                    format!("found {f}"),
                ));
            }
            _ => {}
        }
    }
    Ok(DerivedParameters::OmegaLoop { lambda, mu, alpha })
}

fn derive_block<F: Field>(
    table: &ActionTable<F>,
    q: &F,
) -> Result<DerivedParameters<F>, DeriveError> {
    let s10 = BasisSymbol::l2(1, 0);
    let s11 = BasisSymbol::l2(1, 1);
    entry(table, BasisSymbol::l2(-1, 0))?;
    // H_{1,0} = λ (t - qα)
    let (lambda, root) = read_linear(s10, entry(table, s10)?)?;
    let alpha = root.checked_div(q).expect("q is nonzero");
    let h11 = entry(table, s11)?;
    if *q == -F::one() {
        // H_{m,1} = λ^m β
        if h11.degree().is_some_and(|d| d > 0) {
            return Err(violation(
                "H_{1,1} is not constant",
                Some(s11),
                format!("found {h11}"),
            ));
        }
        let beta = h11
            .constant_term()
            .checked_div(&lambda)
            .expect("λ is nonzero");
        for (sym, f) in &table.entries {
            match *sym {
                BasisSymbol::L(m, Some(1)) => {
                    let expected = lambda.pow_int(m).expect("λ is nonzero") * &beta;
                    if *f != Polynomial::constant(expected.clone()) {
                        return Err(violation(
                            format!("H_{{{m},1}} ≠ λ^{m}β"),
                            Some(*sym),
                            format!("expected {expected}, found {f}"),
                        ));
                    }
                }
                BasisSymbol::L(m, Some(i)) if i >= 2 && !f.is_zero() => {
                    return Err(violation(
                        format!("H_{{{m},{i}}} ≠ 0"),
                        Some(*sym),
                        format!("B(-1)_2 must act as zero, found {f}"),
                    ));
                }
                _ => {}
            }
        }
        Ok(DerivedParameters::OmegaBlockHv {
            lambda,
            alpha,
            beta,
        })
    } else {
        for (sym, f) in &table.entries {
            if let BasisSymbol::L(m, Some(i)) = *sym {
                if i >= 1 && !f.is_zero() {
                    return Err(violation(
                        format!("H_{{{m},{i}}} ≠ 0"),
                        Some(*sym),
                        format!("B(q)_1 must act as zero for q ≠ -1, found {f}"),
                    ));
                }
            }
        }
        Ok(DerivedParameters::OmegaBlock {
            q: q.clone(),
            lambda,
            alpha,
        })
    }
}

fn check_closed_form<F: Field>(
    table: &ActionTable<F>,
    spec: &ModuleSpec<F>,
) -> Result<(), DeriveError> {
    let report = match_template(table, spec)
        .map_err(|e| violation("entry outside the module's algebra", None, e.to_string()))?;
    match report.first_mismatch {
        None => Ok(()),
        Some(m) => {
            let failed = match m.symbol {
                BasisSymbol::C(_) => format!("{}·1 ≠ 0", m.symbol),
                _ => format!("{}·1 differs from the closed form", m.symbol),
            };
            Err(violation(
                failed,
                Some(m.symbol),
                format!("expected {}, found {}", m.expected, m.found),
            ))
        }
    }
}

/// Checks `[x, y]·1 = x·(y·1) - y·(x·1)` on every pair of table symbols whose
/// bracket only involves table symbols. Returns the number of pairs checked.
fn check_commutators<F: Field>(table: &ActionTable<F>) -> Result<usize, DeriveError> {
    let symbols: Vec<BasisSymbol> = table.entries.keys().copied().collect();
    let mut checked = 0;
    for x in &symbols {
        for y in &symbols {
            let br = table
                .kind
                .bracket_basis(x, y)
                .map_err(|e| violation("bracket undefined", Some(*x), e.to_string()))?;
            let mut lhs = Polynomial::zero();
            let mut inside = true;
            for (s, c) in br.terms() {
                match table.get(s) {
                    Some(f) => lhs = &lhs + &f.scale(c),
                    None => {
                        inside = false;
                        break;
                    }
                }
            }
            if !inside {
                continue;
            }
            let fx = &table.entries[x];
            let fy = &table.entries[y];
            let rhs =
                &table.act(x, fy).expect("x in table") - &table.act(y, fx).expect("y in table");
            checked += 1;
            if lhs != rhs {
                return Err(violation(
                    format!("[{x},{y}]·1 ≠ {x}·({y}·1) - {y}·({x}·1)"),
                    Some(*x),
                    format!("left {lhs}, right {rhs}"),
                ));
            }
        }
    }
    Ok(checked)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::{parse_element, parse_poly};
    use crate::GaussianRational as Q;

    fn s(text: &str) -> Q {
        text.parse().unwrap()
    }

    fn p(text: &str) -> Polynomial<Q> {
        parse_poly(text).unwrap()
    }

    fn pv(text: &str) -> ModuleVector<Q> {
        ModuleVector::Poly(p(text))
    }

    fn omega(l: &str, m: &str, a: &str) -> ModuleSpec<Q> {
        ModuleSpec::loop_module(s(l), s(m), s(a)).unwrap()
    }

    #[test]
    fn loop_action_examples() {
        let spec = omega("2", "3", "1");
        assert_eq!(
            act_basis(&spec, &BasisSymbol::l2(1, 1), &pv("1")).unwrap(),
            pv("3*t - 3")
        );
        assert_eq!(
            act_basis(&spec, &BasisSymbol::l2(0, 0), &pv("t^2 - 5")).unwrap(),
            pv("t^3 - 5*t")
        );
        assert!(act_basis(&spec, &BasisSymbol::cj(5), &pv("t + 1"))
            .unwrap()
            .is_zero());
        assert!(matches!(
            act_basis(&spec, &BasisSymbol::l(1), &pv("1")),
            Err(ModuleError::Algebra(AlgebraError::Arity { .. }))
        ));
    }

    #[test]
    fn block_action_examples() {
        let hv = ModuleSpec::block_hv(s("1"), s("0"), s("2")).unwrap();
        assert_eq!(
            act_basis(&hv, &BasisSymbol::l2(3, 1), &pv("t")).unwrap(),
            pv("2*t + 6")
        );
        let b = ModuleSpec::block(s("2"), s("1"), s("1")).unwrap();
        assert!(act_basis(&b, &BasisSymbol::l2(1, 3), &pv("t^2"))
            .unwrap()
            .is_zero());
        assert_eq!(
            act_basis(&b, &BasisSymbol::l2(0, 0), &pv("t - 1")).unwrap(),
            pv("t^2 - t")
        );
        assert!(ModuleSpec::block(s("-1"), s("1"), s("0")).is_err());
    }

    #[test]
    fn vir_element_action() {
        let spec = ModuleSpec::vir(s("1"), s("1")).unwrap();
        let e = parse_element(&AlgebraKind::Virasoro, "L(1) - L(-1)").unwrap();
        assert_eq!(act_element(&spec, &e, &pv("1")).unwrap(), pv("-2"));
        let zero = AlgebraElement::zero(AlgebraKind::Virasoro);
        assert!(act_element(&spec, &zero, &pv("t")).unwrap().is_zero());
    }

    #[test]
    fn tensor_reduces_to_single_factor() {
        let params = LoopParams::new(s("2"), s("3"), s("1"));
        let tensor = ModuleSpec::tensor(vec![params]).unwrap();
        let single = omega("2", "3", "1");
        let f = p("t^2 - t + 1/2");
        let mf = ModuleVector::Tensor(MultiPolynomial::from_univariate(&f, 1, 0));
        for sym in [
            BasisSymbol::l2(2, -1),
            BasisSymbol::l2(-1, 1),
            BasisSymbol::cj(0),
        ] {
            let a = act_basis(&tensor, &sym, &mf).unwrap();
            let b = act_basis(&single, &sym, &pv("t^2 - t + 1/2")).unwrap();
            assert_eq!(
                a.as_tensor().unwrap().to_univariate().unwrap(),
                b.as_poly().unwrap().clone()
            );
        }
    }

    #[test]
    fn psi_examples() {
        assert_eq!(psi_iso_map(&p("t^2 + t")).unwrap(), p("t + 1"));
        assert_eq!(psi_iso_map(&p("t")).unwrap(), p("1"));
        assert!(matches!(
            psi_iso_map(&p("t + 1")),
            Err(ModuleError::NotInSubmodule(_))
        ));
    }

    #[test]
    fn tables_and_templates() {
        let spec = omega("2", "3", "2");
        let lp = AlgebraKind::<Q>::LoopVirasoro;
        let table = build_action_table(&spec, &lp.default_box(2)).unwrap();
        assert_eq!(table.get(&BasisSymbol::l2(1, 0)).unwrap(), &p("2*t - 4"));
        assert!(table.get(&BasisSymbol::cj(-1)).unwrap().is_zero());
        assert!(match_template(&table, &spec).unwrap().matches);
        let other = match_template(&table, &omega("2", "3", "1")).unwrap();
        assert!(!other.matches);
        assert_eq!(
            other.first_mismatch.unwrap().symbol,
            BasisSymbol::l2(-2, -2)
        );

        let mut bad = table.clone();
        bad.entries.insert(BasisSymbol::cj(0), p("t"));
        let m = match_template(&bad, &spec).unwrap();
        assert_eq!(m.first_mismatch.unwrap().symbol, BasisSymbol::cj(0));
    }

    #[test]
    fn hv_table_entries() {
        let spec = ModuleSpec::block_hv(s("2"), s("1/2"), s("3")).unwrap();
        let kind = spec.algebra();
        let table = build_action_table(&spec, &kind.default_box(2)).unwrap();
        for m in -2..=2 {
            let expected = s("2").pow_int(m).unwrap() * s("3");
            assert_eq!(
                table.get(&BasisSymbol::l2(m, 1)).unwrap(),
                &Polynomial::constant(expected)
            );
        }
        assert!(table.get(&BasisSymbol::c()).unwrap().is_zero());
    }

    #[test]
    fn derive_from_explicit_entries() {
        let lp = AlgebraKind::<Q>::LoopVirasoro;
        let mut table = ActionTable::new(lp, IndexBox::new((-1, 1), (0, 1)));
        table.insert(BasisSymbol::l2(1, 0), p("2*t - 4")).unwrap();
        table
            .insert(BasisSymbol::l2(-1, 0), p("1/2*t + 1"))
            .unwrap();
        table.insert(BasisSymbol::l2(1, 1), p("3*t - 6")).unwrap();
        table.insert(BasisSymbol::l2(0, 1), p("3/2*t")).unwrap();
        table.insert(BasisSymbol::l2(0, 0), p("t")).unwrap();
        let d = derive_parameters(&table).unwrap();
        assert_eq!(
            d.params,
            DerivedParameters::OmegaLoop {
                lambda: s("2"),
                mu: s("3"),
                alpha: s("2")
            }
        );

        table.insert(BasisSymbol::l2(0, 1), p("3/2*t + 5")).unwrap();
        match derive_parameters(&table) {
            Err(DeriveError::InconsistentEntry(v)) => assert_eq!(v.failed, "e_1 ≠ 0"),
            other => panic!("unexpected {other:?}"),
        }

        table.insert(BasisSymbol::l2(1, 0), p("2*t^2")).unwrap();
        assert!(matches!(
            derive_parameters(&table),
            Err(DeriveError::DegreeMismatch { .. })
        ));
    }

    #[test]
    fn derive_needs_the_read_entries() {
        let lp = AlgebraKind::<Q>::LoopVirasoro;
        let mut table = ActionTable::new(lp, IndexBox::new((1, 1), (0, 0)));
        table.insert(BasisSymbol::l2(1, 0), p("2*t - 4")).unwrap();
        assert!(matches!(
            derive_parameters(&table),
            Err(DeriveError::MissingEntry(_))
        ));
    }

    #[test]
    fn commutator_replay_catches_bad_central_entry() {
        let spec = omega("2", "3", "1");
        let lp = AlgebraKind::<Q>::LoopVirasoro;
        let mut table = build_action_table(&spec, &lp.default_box(2)).unwrap();
        table.entries.insert(BasisSymbol::cj(1), p("1"));
        match derive_parameters(&table) {
            Err(DeriveError::InconsistentEntry(v)) => assert_eq!(v.failed, "c_1 ≠ 0"),
            other => panic!("unexpected {other:?}"),
        }
    }
}
