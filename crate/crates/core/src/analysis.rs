//! Structure checks on modules: axioms, span-closure simplicity probes,
//! the `tΩ` submodule and its composition series, isomorphism
//! classification of action tables, and center scans.
//!
//! Probes work in a finite window `W` of polynomials whose degree in each
//! variable is at most `D`. The closure of a seed is grown by applying every
//! generator in a box to the current basis of `span ∩ W`; images may leave
//! `W` by one degree, and those overflowing images are kept in an extended
//! space so that combinations which fall back into `W` are not lost. Every
//! vector found lies in the true submodule, so a full window is never
//! overclaimed.

use std::collections::HashMap;
use std::fmt;

use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};
use thiserror::Error;

use crate::algebra::{
    centrality_check, AlgebraElement, AlgebraKind, BasisSymbol, CentralityReport, IndexBox,
};
use crate::error::{AlgebraError, LinalgError, ModuleError, ProbeError};
use crate::field::Field;
use crate::linalg::{window_monomials, SpanBasis};
use crate::module::{
    act_basis, derive_parameters, psi_iso_map, ActionTable, DeriveError, DerivedParameters,
    LoopParams, ModuleSpec, ModuleVector, Violation,
};
use crate::multipoly::{deglex_cmp, Exponents, MultiPolynomial};
use crate::poly::Polynomial;

/// Non-central symbols of a box, ordered by `|first|`, then positive before
/// negative, then likewise on the second index.
pub fn scan_order<F: Field>(kind: &AlgebraKind<F>, bx: &IndexBox) -> Vec<BasisSymbol> {
    let mut syms: Vec<BasisSymbol> = kind
        .symbols(bx)
        .into_iter()
        .filter(|s| !s.is_central_type())
        .collect();
    let key = |s: &BasisSymbol| {
        let i = s.first().unwrap_or(0);
        let j = s.second().unwrap_or(0);
        (i.abs(), i < 0, j.abs(), j < 0)
    };
    syms.sort_by_key(key);
    syms
}

// ---------------------------------------------------------------------------
// Module axioms

#[derive(Clone, Debug, Serialize)]
pub struct AxiomViolation {
    pub x: BasisSymbol,
    pub y: BasisSymbol,
    pub vector: String,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct AxiomReport {
    pub check: &'static str,
    pub spec: Value,
    #[serde(rename = "box")]
    pub bx: IndexBox,
    pub pairs: usize,
    pub vectors: usize,
    pub violations: Vec<AxiomViolation>,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Verifies `[x, y]·f = x·(y·f) - y·(x·f)` for every ordered pair of box
/// symbols and every test vector.
pub fn module_axiom_check<F: Field>(
    spec: &ModuleSpec<F>,
    bx: &IndexBox,
    tests: &[ModuleVector<F>],
) -> Result<AxiomReport, ModuleError> {
    let kind = spec.algebra();
    let symbols = kind.symbols(bx);
    let n = symbols.len();
    // images[s][k] = symbols[s] · tests[k]
    let images: Vec<Vec<ModuleVector<F>>> = symbols
        .par_iter()
        .map(|x| tests.iter().map(|f| act_basis(spec, x, f)).collect())
        .collect::<Result<_, _>>()?;
    let position: HashMap<BasisSymbol, usize> =
        symbols.iter().enumerate().map(|(k, s)| (*s, k)).collect();

    let per_x: Vec<Vec<AxiomViolation>> = (0..n)
        .into_par_iter()
        .map(|a| -> Result<Vec<AxiomViolation>, ModuleError> {
            let mut bad = Vec::new();
            let x = &symbols[a];
            for (b, y) in symbols.iter().enumerate() {
                let br = kind.bracket_basis(x, y)?;
                for (k, f) in tests.iter().enumerate() {
                    let mut lhs = spec.zero();
                    for (s, c) in br.terms() {
                        let image = match position.get(s) {
                            Some(&p) => images[p][k].clone(),
                            None => act_basis(spec, s, f)?,
                        };
                        lhs = lhs.try_add(&image.scale(c))?;
                    }
                    let xy = act_basis(spec, x, &images[b][k])?;
                    let yx = act_basis(spec, y, &images[a][k])?;
                    let rhs = xy.try_sub(&yx)?;
                    if lhs != rhs {
                        bad.push(AxiomViolation {
                            x: *x,
                            y: *y,
                            vector: f.to_string(),
                            lhs: lhs.to_string(),
                            rhs: rhs.to_string(),
                        });
                    }
                }
            }
            Ok(bad)
        })
        .collect::<Result<_, _>>()?;
    Ok(AxiomReport {
        check: "module",
        spec: spec.to_json(),
        bx: *bx,
        pairs: n * n,
        vectors: tests.len(),
        violations: per_x.into_iter().flatten().collect(),
    })
}

// ---------------------------------------------------------------------------
// Closure probes

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProbeConfig<F: Field> {
    pub bx: IndexBox,
    /// Per-variable degree bound `D` of the window.
    pub degree: u32,
    pub seeds: Vec<ModuleVector<F>>,
    /// Defaults to one more than the window dimension.
    pub max_rounds: Option<usize>,
}

impl<F: Field> ProbeConfig<F> {
    pub fn new(bx: IndexBox, degree: u32, seeds: Vec<Polynomial<F>>) -> Self {
        ProbeConfig {
            bx,
            degree,
            seeds: seeds.into_iter().map(ModuleVector::Poly).collect(),
            max_rounds: None,
        }
    }

    pub fn tensor(bx: IndexBox, degree: u32, seeds: Vec<MultiPolynomial<F>>) -> Self {
        ProbeConfig {
            bx,
            degree,
            seeds: seeds.into_iter().map(ModuleVector::Tensor).collect(),
            max_rounds: None,
        }
    }

    pub fn with_max_rounds(mut self, rounds: usize) -> Self {
        self.max_rounds = Some(rounds);
        self
    }

    fn validate(&self, spec: &ModuleSpec<F>) -> Result<(), ProbeError> {
        let invalid = |m: String| Err(ProbeError::InvalidConfig(m));
        if self.degree < 1 {
            return invalid("the degree window D must be at least 1".into());
        }
        if self.bx.is_empty() {
            return invalid("the generator box is empty".into());
        }
        if self.seeds.is_empty() {
            return invalid("at least one seed is required".into());
        }
        for seed in &self.seeds {
            if seed.is_zero() {
                return invalid("seeds must be nonzero".into());
            }
            let top = match (seed, spec.is_tensor()) {
                (ModuleVector::Poly(p), false) => p.degree().unwrap_or(0) as u32,
                (ModuleVector::Tensor(p), true) if p.nvars() == spec.nvars() => {
                    p.max_exponent().unwrap_or(0)
                }
                _ => return invalid(format!("seed {seed} does not live in {spec}")),
            };
            if top > self.degree {
                return invalid(format!(
                    "seed {seed} exceeds the window degree {}",
                    self.degree
                ));
            }
        }
        Ok(())
    }
}

/// Coordinates on `W ⊕ (one-step overflow)`: overflow monomials first, then
/// the window monomials in degree-lex order.
struct Window {
    nvars: usize,
    columns: Vec<Exponents>,
    index: HashMap<Exponents, usize>,
    n_out: usize,
}

impl Window {
    fn new(nvars: usize, degree: u32) -> Self {
        let inside = window_monomials(nvars, degree);
        let mut outside: Vec<Exponents> = window_monomials(nvars, degree + 1)
            .into_iter()
            .filter(|e| e.iter().any(|&d| d > degree))
            .collect();
        outside.sort_by(|a, b| deglex_cmp(a, b));
        let n_out = outside.len();
        let columns: Vec<Exponents> = outside.into_iter().chain(inside).collect();
        let index = columns
            .iter()
            .enumerate()
            .map(|(k, e)| (e.clone(), k))
            .collect();
        Window {
            nvars,
            columns,
            index,
            n_out,
        }
    }

    fn window_dim(&self) -> usize {
        self.columns.len() - self.n_out
    }

    fn window_monomial(&self, k: usize) -> &Exponents {
        &self.columns[self.n_out + k]
    }

    fn to_ext<F: Field>(&self, v: &ModuleVector<F>) -> Result<Vec<F>, LinalgError> {
        let mut out = vec![F::zero(); self.columns.len()];
        let mut place = |e: Exponents, c: &F| -> Result<(), LinalgError> {
            let k = *self.index.get(&e).ok_or(LinalgError::DegreeOverflow {
                degree: e.iter().copied().max().unwrap_or(0) as usize,
                cap: self.columns.len(),
            })?;
            out[k] = c.clone();
            Ok(())
        };
        match v {
            ModuleVector::Poly(p) => {
                for (d, c) in p.coeffs().iter().enumerate() {
                    if !c.is_zero() {
                        place(vec![d as u32], c)?;
                    }
                }
            }
            ModuleVector::Tensor(p) => {
                for (e, c) in p.terms() {
                    place(e.clone(), c)?;
                }
            }
        }
        Ok(out)
    }

    /// The vector with window coordinates `w`.
    fn vector_at<F: Field>(&self, w: &[F], tensor: bool) -> ModuleVector<F> {
        if tensor {
            let terms = w
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(k, c)| (self.window_monomial(k).clone(), c.clone()));
            ModuleVector::Tensor(MultiPolynomial::from_terms(self.nvars, terms))
        } else {
            let mut coeffs = vec![F::zero(); self.window_dim()];
            for (k, c) in w.iter().enumerate() {
                coeffs[self.window_monomial(k)[0] as usize] = c.clone();
            }
            ModuleVector::Poly(Polynomial::from_coeffs(coeffs))
        }
    }

    fn monomial_text(&self, e: &[u32], tensor: bool) -> String {
        if tensor {
            MultiPolynomial::<crate::GaussianRational>::monomial(e.to_vec(), 1.into()).to_string()
        } else {
            Polynomial::<crate::GaussianRational>::monomial(1.into(), e[0] as usize).to_string()
        }
    }
}

/// The closure of one seed.
#[derive(Clone, Debug)]
pub struct SeedClosure<F: Field> {
    pub seed: ModuleVector<F>,
    pub dim: usize,
    pub rounds: usize,
    /// Reduced echelon basis of the closure inside the window.
    pub basis: Vec<ModuleVector<F>>,
    /// A window monomial outside the closure, if the closure is proper.
    pub missing: Option<Exponents>,
    span: SpanBasis<F>,
}

fn closure<F: Field>(
    spec: &ModuleSpec<F>,
    generators: &[BasisSymbol],
    window: &Window,
    seed: &ModuleVector<F>,
    max_rounds: usize,
) -> Result<SeedClosure<F>, ProbeError> {
    let tensor = spec.is_tensor();
    let wdim = window.window_dim();
    let n_out = window.n_out;
    let mut ext = SpanBasis::new(window.columns.len());
    ext.insert(&window.to_ext(seed)?)?;
    // Span of the window vectors whose images are already in `ext`.
    let mut applied = SpanBasis::new(wdim);
    let mut rounds = 0;
    loop {
        let mut fresh = Vec::new();
        for (row, &p) in ext.rows().iter().zip(ext.pivots()) {
            if p < n_out {
                continue;
            }
            let part = &row[n_out..];
            if applied.insert(part)? {
                fresh.push(window.vector_at(part, tensor));
            }
        }
        if fresh.is_empty() || applied.is_full() {
            break;
        }
        rounds += 1;
        if rounds > max_rounds {
            return Err(ProbeError::MaxRoundsExceeded(max_rounds));
        }
        let images: Vec<Vec<F>> = fresh
            .par_iter()
            .flat_map_iter(|v| generators.iter().map(move |x| (x, v)))
            .map(|(x, v)| -> Result<Vec<F>, ProbeError> {
                Ok(window.to_ext(&act_basis(spec, x, v)?)?)
            })
            .collect::<Result<_, _>>()?;
        for image in &images {
            ext.insert(image)?;
        }
    }
    let basis = applied
        .rows()
        .iter()
        .map(|r| window.vector_at(r, tensor))
        .collect();
    Ok(SeedClosure {
        seed: seed.clone(),
        dim: applied.rank(),
        rounds,
        basis,
        missing: applied
            .missing_unit()
            .map(|k| window.window_monomial(k).clone()),
        span: applied,
    })
}

/// How far a proper closure can be trusted.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind")]
pub enum Certificate {
    /// The closure is exactly the window slice of the submodule of vectors
    /// divisible by `divisor`, which the module's closed form preserves: a
    /// genuine non-simplicity certificate.
    KnownSubmodule { divisor: String },
    /// No known submodule matches; larger windows may fill.
    WindowArtifact,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict")]
pub enum ProbeVerdict {
    FillsWindow {
        dim: usize,
    },
    ProperInvariantWindow {
        dim: usize,
        /// The seed with the smallest closure.
        seed: String,
        /// A window vector outside that closure.
        witness: String,
        certificate: Certificate,
    },
}

impl ProbeVerdict {
    pub fn dim(&self) -> usize {
        match self {
            ProbeVerdict::FillsWindow { dim } | ProbeVerdict::ProperInvariantWindow { dim, .. } => {
                *dim
            }
        }
    }

    pub fn fills(&self) -> bool {
        matches!(self, ProbeVerdict::FillsWindow { .. })
    }

    pub fn name(&self) -> &'static str {
        match self {
            ProbeVerdict::FillsWindow { .. } => "FillsWindow",
            ProbeVerdict::ProperInvariantWindow { .. } => "ProperInvariantWindow",
        }
    }
}

impl fmt::Display for ProbeVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ProbeVerdict::FillsWindow { dim } => write!(f, "FillsWindow({dim})"),
            ProbeVerdict::ProperInvariantWindow {
                dim,
                witness,
                certificate,
                ..
            } => {
                let cert = match certificate {
                    Certificate::KnownSubmodule { divisor } => {
                        format!("known submodule {divisor}·Ω")
                    }
                    Certificate::WindowArtifact => "window artifact".to_string(),
                };
                write!(f, "ProperInvariantWindow({dim}, missing {witness}, {cert})")
            }
        }
    }
}

#[derive(Clone, Debug)]
pub struct ProbeOutcome<F: Field> {
    pub check: &'static str,
    pub spec: ModuleSpec<F>,
    pub verdict: ProbeVerdict,
    pub bx: IndexBox,
    pub degree: u32,
    pub window_dim: usize,
    pub closures: Vec<SeedClosure<F>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SeedSummary {
    pub seed: String,
    pub dim: usize,
    pub rounds: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct WindowSummary {
    #[serde(rename = "D")]
    pub degree: u32,
    #[serde(rename = "box")]
    pub bx: IndexBox,
    pub dim: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct ProbeReport {
    pub check: &'static str,
    pub spec: Value,
    #[serde(flatten)]
    pub verdict: ProbeVerdict,
    pub window: WindowSummary,
    pub seeds: Vec<SeedSummary>,
}

impl<F: Field> ProbeOutcome<F> {
    pub fn report(&self) -> ProbeReport {
        ProbeReport {
            check: self.check,
            spec: self.spec.to_json(),
            verdict: self.verdict.clone(),
            window: WindowSummary {
                degree: self.degree,
                bx: self.bx,
                dim: self.window_dim,
            },
            seeds: self
                .closures
                .iter()
                .map(|c| SeedSummary {
                    seed: c.seed.to_string(),
                    dim: c.dim,
                    rounds: c.rounds,
                })
                .collect(),
        }
    }
}

/// Variables `t_k` whose multiples form a submodule by the closed form.
fn submodule_divisors<F: Field>(spec: &ModuleSpec<F>) -> Vec<usize> {
    match spec {
        ModuleSpec::TensorOmega { factors } => factors
            .iter()
            .enumerate()
            .filter(|(_, p)| p.alpha.is_zero())
            .map(|(k, _)| k)
            .collect(),
        _ if spec.has_t_submodule() => vec![0],
        _ => Vec::new(),
    }
}

/// Whether the closure equals `t_k·ℂ[t] ∩ W`.
fn is_divisible_slice<F: Field>(window: &Window, c: &SeedClosure<F>, k: usize) -> bool {
    let wdim = window.window_dim();
    let divisible: Vec<bool> = (0..wdim)
        .map(|m| window.window_monomial(m)[k] > 0)
        .collect();
    let expected = divisible.iter().filter(|&&d| d).count();
    c.dim == expected
        && c.span
            .rows()
            .iter()
            .all(|row| row.iter().zip(&divisible).all(|(x, &d)| d || x.is_zero()))
}

fn probe<F: Field>(
    check: &'static str,
    spec: &ModuleSpec<F>,
    cfg: &ProbeConfig<F>,
) -> Result<ProbeOutcome<F>, ProbeError> {
    cfg.validate(spec)?;
    let kind = spec.algebra();
    let generators = scan_order(&kind, &cfg.bx);
    let window = Window::new(spec.nvars(), cfg.degree);
    let wdim = window.window_dim();
    let max_rounds = cfg.max_rounds.unwrap_or(wdim + 1);
    let closures: Vec<SeedClosure<F>> = cfg
        .seeds
        .par_iter()
        .map(|seed| closure(spec, &generators, &window, seed, max_rounds))
        .collect::<Result<_, _>>()?;
    let smallest = closures
        .iter()
        .min_by_key(|c| c.dim)
        .expect("at least one seed");
    let tensor = spec.is_tensor();
    let verdict = match &smallest.missing {
        None => ProbeVerdict::FillsWindow { dim: wdim },
        Some(missing) => {
            let divisor = submodule_divisors(spec)
                .into_iter()
                .find(|&k| is_divisible_slice(&window, smallest, k));
            let certificate = match divisor {
                Some(k) if tensor => Certificate::KnownSubmodule {
                    divisor: format!("t{}", k + 1),
                },
                Some(_) => Certificate::KnownSubmodule {
                    divisor: "t".into(),
                },
                None => Certificate::WindowArtifact,
            };
            ProbeVerdict::ProperInvariantWindow {
                dim: smallest.dim,
                seed: smallest.seed.to_string(),
                witness: window.monomial_text(missing, tensor),
                certificate,
            }
        }
    };
    Ok(ProbeOutcome {
        check,
        spec: spec.clone(),
        verdict,
        bx: cfg.bx,
        degree: cfg.degree,
        window_dim: wdim,
        closures,
    })
}

/// Span-closure evidence for simplicity of a module at a finite window.
pub fn simplicity_probe<F: Field>(
    spec: &ModuleSpec<F>,
    cfg: &ProbeConfig<F>,
) -> Result<ProbeOutcome<F>, ProbeError> {
    probe("simplicity", spec, cfg)
}

/// Span-closure evidence for irreducibility of `Ω(λ1,μ1,α1) ⊗ ⋯ ⊗ Ω(λm,μm,αm)`.
pub fn tensor_irreducibility_probe<F: Field>(
    factors: &[LoopParams<F>],
    cfg: &ProbeConfig<F>,
) -> Result<ProbeOutcome<F>, ProbeError> {
    if factors.len() > 3 {
        return Err(ProbeError::InvalidConfig(format!(
            "at most 3 tensor factors are supported, got {}",
            factors.len()
        )));
    }
    let spec = ModuleSpec::tensor(factors.to_vec())?;
    probe("tensor", &spec, cfg)
}

// ---------------------------------------------------------------------------
// The submodule tΩ and the composition series

#[derive(Clone, Debug, Serialize)]
pub struct InvarianceWitness {
    pub symbol: BasisSymbol,
    pub vector: String,
    pub image: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct InvarianceReport {
    pub check: &'static str,
    pub spec: Value,
    pub invariant: bool,
    pub witness: Option<InvarianceWitness>,
    pub checked: usize,
}

/// Checks that every box symbol maps the given zero-constant-term
/// polynomials to polynomials with zero constant term.
pub fn submodule_invariance_check<F: Field>(
    spec: &ModuleSpec<F>,
    bx: &IndexBox,
    tests: &[Polynomial<F>],
) -> Result<InvarianceReport, ModuleError> {
    if spec.is_tensor() {
        return Err(ModuleError::KindMismatch(
            "the zero-constant-term check applies to rank-one modules".into(),
        ));
    }
    if let Some(bad) = tests.iter().find(|f| !f.constant_term().is_zero()) {
        return Err(ModuleError::NotInSubmodule(bad.to_string()));
    }
    let mut checked = 0;
    let mut witness = None;
    'scan: for x in scan_order(&spec.algebra(), bx) {
        for f in tests {
            let image = act_basis(spec, &x, &ModuleVector::Poly(f.clone()))?;
            checked += 1;
            let p = image.as_poly().expect("rank-one image");
            if !p.constant_term().is_zero() {
                witness = Some(InvarianceWitness {
                    symbol: x,
                    vector: f.to_string(),
                    image: p.to_string(),
                });
                break 'scan;
            }
        }
    }
    Ok(InvarianceReport {
        check: "invariance",
        spec: spec.to_json(),
        invariant: witness.is_none(),
        witness,
        checked,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct CompositionReport {
    pub check: &'static str,
    pub lambda: String,
    pub mu: String,
    /// `tΩ(λ, μ, 0)` is invariant.
    pub invariance: InvarianceReport,
    /// The quotient `Ω/tΩ` is the trivial one-dimensional module.
    pub quotient_trivial: bool,
    pub quotient_witness: Option<String>,
    /// `ψ(x·g) = x·ψ(g)` with `ψ: tΩ(λ, μ, 0) → Ω(λ, μ, 1)`.
    pub intertwiner: bool,
    pub intertwiner_witness: Option<String>,
    pub intertwiner_checks: usize,
}

impl CompositionReport {
    pub fn passed(&self) -> bool {
        self.invariance.invariant && self.quotient_trivial && self.intertwiner
    }
}

/// Verifies the composition series `Ω(λ,μ,0) ⊃ tΩ(λ,μ,0) ⊃ 0` on a window:
/// the middle term is a submodule, the top quotient is trivial, and
/// `tΩ(λ,μ,0) ≅ Ω(λ,μ,1)` through `ψ`.
pub fn composition_series_check<F: Field>(
    lambda: &F,
    mu: &F,
    bx: &IndexBox,
    degree: u32,
) -> Result<CompositionReport, ModuleError> {
    let zero_alpha = ModuleSpec::loop_module(lambda.clone(), mu.clone(), F::zero())?;
    let unit_alpha = ModuleSpec::loop_module(lambda.clone(), mu.clone(), F::one())?;
    let kind = zero_alpha.algebra();
    // t·t^k, k < D
    let multiples: Vec<Polynomial<F>> = (1..=degree as usize)
        .map(|d| Polynomial::monomial(F::one(), d))
        .collect();
    let invariance = submodule_invariance_check(&zero_alpha, bx, &multiples)?;

    let one = ModuleVector::Poly(Polynomial::one());
    let mut quotient_witness = None;
    for x in kind.symbols(bx) {
        let image = act_basis(&zero_alpha, &x, &one)?;
        let p = image.as_poly().expect("rank-one image");
        let bad = if x.is_central_type() {
            !p.is_zero()
        } else {
            !p.constant_term().is_zero()
        };
        if bad {
            quotient_witness = Some(format!("{x}·1 = {p}"));
            break;
        }
    }

    let mut intertwiner_witness = None;
    let mut intertwiner_checks = 0;
    'outer: for x in kind.symbols(bx) {
        for g in &multiples {
            let lhs = act_basis(&zero_alpha, &x, &ModuleVector::Poly(g.clone()))?;
            let lhs = psi_iso_map(lhs.as_poly().expect("rank-one image"))?;
            let rhs = act_basis(&unit_alpha, &x, &ModuleVector::Poly(psi_iso_map(g)?))?;
            intertwiner_checks += 1;
            if ModuleVector::Poly(lhs.clone()) != rhs {
                intertwiner_witness = Some(format!("ψ({x}·{g}) = {lhs} but {x}·ψ({g}) = {rhs}"));
                break 'outer;
            }
        }
    }

    Ok(CompositionReport {
        check: "composition",
        lambda: lambda.to_string(),
        mu: mu.to_string(),
        invariance,
        quotient_trivial: quotient_witness.is_none(),
        quotient_witness,
        intertwiner: intertwiner_witness.is_none(),
        intertwiner_witness,
        intertwiner_checks,
    })
}

// ---------------------------------------------------------------------------
// Classification

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ClassifyError {
    #[error("tables are over different algebras: {0} and {1}")]
    KindMismatch(String, String),
    #[error("tables cover different boxes")]
    BoxMismatch,
    #[error("table {table}: {source}")]
    Derive {
        table: char,
        #[source]
        source: DeriveError,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ParameterDifference {
    #[serde(serialize_with = "ascii_name")]
    pub name: &'static str,
    pub a: String,
    pub b: String,
}

fn ascii_name<S: serde::Serializer>(name: &&'static str, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(crate::module::json_key(name))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DistinctReason {
    Parameters(Vec<ParameterDifference>),
    /// One table is not the table of any module of the family.
    NotInFamily {
        table: char,
        violation: Violation,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Classification<F> {
    Isomorphic(DerivedParameters<F>),
    Distinct(DistinctReason),
}

impl<F: Field> Classification<F> {
    pub fn is_isomorphic(&self) -> bool {
        matches!(self, Classification::Isomorphic(_))
    }

    pub fn to_json(&self) -> Value {
        match self {
            Classification::Isomorphic(p) => {
                json!({"check": "classify", "verdict": "Isomorphic", "params": p.to_json()})
            }
            Classification::Distinct(DistinctReason::Parameters(diffs)) => json!({
                "check": "classify", "verdict": "Distinct", "differences": diffs
            }),
            Classification::Distinct(DistinctReason::NotInFamily { table, violation }) => json!({
                "check": "classify", "verdict": "Distinct",
                "not_in_family": {"table": table.to_string(), "violation": violation}
            }),
        }
    }
}

impl<F: Field> fmt::Display for Classification<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Classification::Isomorphic(p) => write!(f, "Isomorphic{p}"),
            Classification::Distinct(DistinctReason::Parameters(diffs)) => {
                let parts: Vec<String> = diffs
                    .iter()
                    .map(|d| format!("{}: {} ≠ {}", d.name, d.a, d.b))
                    .collect();
                write!(f, "Distinct({})", parts.join(", "))
            }
            Classification::Distinct(DistinctReason::NotInFamily { table, violation }) => {
                write!(
                    f,
                    "Distinct(table {table} is not a module table: {violation})"
                )
            }
        }
    }
}

fn derive_or_reason<F: Field>(
    table: &ActionTable<F>,
    name: char,
) -> Result<Result<DerivedParameters<F>, DistinctReason>, ClassifyError> {
    match derive_parameters(table) {
        Ok(d) => Ok(Ok(d.params)),
        Err(DeriveError::InconsistentEntry(violation)) => Ok(Err(DistinctReason::NotInFamily {
            table: name,
            violation,
        })),
        Err(source) => Err(ClassifyError::Derive {
            table: name,
            source,
        }),
    }
}

/// Decides whether two action tables come from isomorphic modules by
/// recovering their parameters.
pub fn isomorphism_classify<F: Field>(
    a: &ActionTable<F>,
    b: &ActionTable<F>,
) -> Result<Classification<F>, ClassifyError> {
    if a.kind != b.kind {
        return Err(ClassifyError::KindMismatch(
            a.kind.to_string(),
            b.kind.to_string(),
        ));
    }
    if a.bx != b.bx {
        return Err(ClassifyError::BoxMismatch);
    }
    let pa = match derive_or_reason(a, 'A')? {
        Ok(p) => p,
        Err(reason) => return Ok(Classification::Distinct(reason)),
    };
    let pb = match derive_or_reason(b, 'B')? {
        Ok(p) => p,
        Err(reason) => return Ok(Classification::Distinct(reason)),
    };
    if pa == pb {
        return Ok(Classification::Isomorphic(pa));
    }
    let na = pa.named();
    let nb = pb.named();
    let same_family = na.iter().map(|(n, _)| n).eq(nb.iter().map(|(n, _)| n));
    let diffs: Vec<ParameterDifference> = if same_family {
        na.iter()
            .zip(&nb)
            .filter(|((_, x), (_, y))| x != y)
            .map(|((name, x), (_, y))| ParameterDifference {
                name,
                a: x.to_string(),
                b: y.to_string(),
            })
            .collect()
    } else {
        vec![ParameterDifference {
            name: "family",
            a: pa.to_string(),
            b: pb.to_string(),
        }]
    };
    Ok(Classification::Distinct(DistinctReason::Parameters(diffs)))
}

// ---------------------------------------------------------------------------
// Centers

#[derive(Clone, Debug, Serialize)]
pub struct CenterReport {
    pub check: &'static str,
    pub algebra: String,
    #[serde(rename = "box")]
    pub bx: IndexBox,
    /// The generators of the center, each checked against every box symbol.
    pub declared: Vec<CentralityReport>,
    /// Box symbols outside the declared center that commute with every box
    /// symbol; these are artifacts of the finite box, not center members.
    pub window_artifacts: Vec<BasisSymbol>,
}

impl CenterReport {
    pub fn passed(&self) -> bool {
        self.declared.iter().all(|r| r.central)
    }
}

/// Generators of the center: `C` (or every `C(j)` in the box for the loop
/// algebra), plus `L(0,-q)` for Block algebras when `-q ∈ ℕ`.
pub fn declared_center<F: Field>(kind: &AlgebraKind<F>, bx: &IndexBox) -> Vec<BasisSymbol> {
    let mut out: Vec<BasisSymbol> = match kind {
        AlgebraKind::LoopVirasoro => (bx.second.0..=bx.second.1).map(BasisSymbol::cj).collect(),
        AlgebraKind::BlockTrunc { .. } => Vec::new(),
        _ => vec![BasisSymbol::c()],
    };
    if let Some(q) = kind.q() {
        if let Some(n) = (-q.clone()).as_positive_int() {
            let sym = BasisSymbol::l2(0, n);
            if kind.validate_symbol(&sym).is_ok() {
                out.push(sym);
            }
        }
    }
    out
}

pub fn center_report<F: Field>(
    kind: &AlgebraKind<F>,
    bx: &IndexBox,
) -> Result<CenterReport, AlgebraError> {
    let declared_syms = declared_center(kind, bx);
    let declared = declared_syms
        .iter()
        .map(|s| centrality_check(kind, &AlgebraElement::basis(kind.clone(), *s)?, bx))
        .collect::<Result<Vec<_>, _>>()?;
    let symbols = kind.symbols(bx);
    let commuting: Vec<Result<Option<BasisSymbol>, AlgebraError>> = symbols
        .par_iter()
        .map(|x| {
            for y in &symbols {
                if !kind.bracket_basis(x, y)?.is_zero() {
                    return Ok(None);
                }
            }
            Ok(Some(*x))
        })
        .collect();
    let mut window_artifacts = Vec::new();
    for c in commuting {
        if let Some(x) = c? {
            if !declared_syms.contains(&x) {
                window_artifacts.push(x);
            }
        }
    }
    Ok(CenterReport {
        check: "center",
        algebra: kind.to_string(),
        bx: *bx,
        declared,
        window_artifacts,
    })
}
