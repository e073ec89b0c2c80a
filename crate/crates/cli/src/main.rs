//! `omega`: command-line front end to `omega-core`.

use std::fmt::Display;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use omega_core::algebra::{jacobi_check, virasoro_embedding_check};
use omega_core::analysis::{
    center_report, composition_series_check, isomorphism_classify, module_axiom_check,
    simplicity_probe, tensor_irreducibility_probe, ProbeConfig, ProbeOutcome,
};
use omega_core::module::{act_element, build_action_table, derive_parameters, DeriveError};
use omega_core::parse::{parse_element, parse_multi_poly, parse_poly, parse_scalar};
use omega_core::table::{table_from_json, table_to_json};
use omega_core::{
    Error, Field, IndexBox, Kind, LoopParams, ModuleSpec, ModuleVector, MultiPoly, Scalar, Spec,
    Table,
};
use serde::Serialize;
use serde_json::json;

const GRAMMARS: &str = "\
Literal grammars:
  scalar   3, -1/2, 2i, 1/2-3/4i, i, -i
           A complex literal is written without spaces: `1+2i*t` is (1+2i)·t,
           while `1 + 2i*t` is 1 + (2i)·t.
  poly     sums of terms `c*t^k`, `c*t`, `t^k`, `c`, e.g. `t^2 - 1/2*t + 3`
           (tensor vectors use t1, t2, t3).
  element  sums of terms `c*L(i)`, `c*C` (virasoro), `c*L(i,j)`, `c*C(j)`
           (loop), `c*L(m,i)`, `c*C` (block algebras).
  box      `N` for the symmetric box of the algebra, or named ranges such as
           `i=-2..2,j=0..3` (loop: i,j; block: m,i; virasoro: i).
  seeds    polynomials separated by `;`, e.g. `1;t;t^2+1`.
  factors  tensor factors `λ,μ,α` separated by `;`, e.g. `2,1,1;3,1,1`.

Exit status: 0 on success or a reported verdict, 1 when a `check` fails,
2 on usage or input errors.";

#[derive(Parser)]
#[command(name = "omega", version, about = "Exact computations for Virasoro, loop-Virasoro and Block algebras and their rank-one free modules", after_long_help = GRAMMARS)]
struct Cli {
    /// Print machine-readable JSON reports.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Bracket of two algebra elements.
    Bracket {
        #[command(flatten)]
        algebra: AlgebraArgs,
        #[arg(allow_hyphen_values = true)]
        a: String,
        #[arg(allow_hyphen_values = true)]
        b: String,
    },
    /// Action of an algebra element on a module vector.
    Act {
        #[command(flatten)]
        algebra: AlgebraArgs,
        #[command(flatten)]
        module: ModuleArgs,
        #[arg(allow_hyphen_values = true)]
        element: String,
        #[arg(allow_hyphen_values = true)]
        vector: String,
    },
    /// Assertion-style checks; exit 1 when a check fails.
    #[command(subcommand)]
    Check(Check),
    /// Span-closure probes on a finite window.
    #[command(subcommand)]
    Probe(Probe),
    /// Recover the parameters of one action table, or compare two.
    Classify {
        table_a: PathBuf,
        table_b: Option<PathBuf>,
    },
    /// Write the action table `x · 1` of a module on a box.
    EmitTable {
        #[command(flatten)]
        algebra: AlgebraArgs,
        #[command(flatten)]
        module: ModuleArgs,
        #[arg(long = "box", default_value = "2")]
        bx: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum Check {
    /// Jacobi identity on every triple of box symbols.
    Jacobi {
        #[command(flatten)]
        algebra: AlgebraArgs,
        #[arg(long = "box", default_value = "2")]
        bx: String,
    },
    /// Module axiom `[x,y]·f = x·(y·f) - y·(x·f)` on box pairs and seeds.
    Module {
        #[command(flatten)]
        algebra: AlgebraArgs,
        #[command(flatten)]
        module: ModuleArgs,
        #[command(flatten)]
        window: WindowArgs,
    },
    /// Centrality of the declared center on a box.
    Center {
        #[command(flatten)]
        algebra: AlgebraArgs,
        #[arg(long = "box", default_value = "4")]
        bx: String,
    },
    /// The composition series Ω(λ,μ,0) ⊃ tΩ(λ,μ,0) ⊃ 0.
    Composition {
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
        #[arg(long, allow_hyphen_values = true)]
        mu: String,
        #[command(flatten)]
        window: WindowArgs,
    },
    /// The Virasoro subalgebra of a Block algebra, for |m| ≤ box.
    Embedding {
        #[arg(long, allow_hyphen_values = true)]
        q: String,
        #[arg(long = "box", default_value = "4")]
        bx: i64,
        #[arg(long)]
        allow_gaussian_q: bool,
    },
}

#[derive(Subcommand)]
enum Probe {
    /// Closure of each seed under the box symbols.
    Simplicity {
        #[command(flatten)]
        algebra: AlgebraArgs,
        #[command(flatten)]
        module: ModuleArgs,
        #[command(flatten)]
        window: WindowArgs,
    },
    /// Closure in a tensor product of loop modules.
    Tensor {
        /// Factors `λ,μ,α` separated by `;`.
        #[arg(long, allow_hyphen_values = true)]
        factors: String,
        #[command(flatten)]
        window: WindowArgs,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum AlgebraName {
    Virasoro,
    Loop,
    Block,
    BlockHat,
    BlockTrunc,
}

#[derive(Args)]
struct AlgebraArgs {
    #[arg(long, value_enum, default_value = "loop")]
    algebra: AlgebraName,
    /// Block parameter (rational unless --allow-gaussian-q).
    #[arg(long, allow_hyphen_values = true)]
    q: Option<String>,
    /// Lower second index of a truncated Block algebra.
    #[arg(long, allow_hyphen_values = true)]
    k: Option<i64>,
    /// Upper second index of a truncated Block algebra.
    #[arg(long, allow_hyphen_values = true)]
    l: Option<i64>,
    #[arg(long)]
    allow_gaussian_q: bool,
}

#[derive(Args)]
struct ModuleArgs {
    #[arg(long, allow_hyphen_values = true)]
    lambda: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    mu: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    alpha: Option<String>,
    /// Only for `--algebra block --q -1`; defaults to 0 there.
    #[arg(long, allow_hyphen_values = true)]
    beta: Option<String>,
    /// Tensor factors `λ,μ,α;…` (loop algebra only, `act` only).
    #[arg(long, allow_hyphen_values = true)]
    factors: Option<String>,
}

#[derive(Args)]
struct WindowArgs {
    #[arg(long = "box", default_value = "2")]
    bx: String,
    /// Per-variable degree bound of the window.
    #[arg(long, default_value_t = 4)]
    max_degree: u32,
    /// Seeds (or test vectors) separated by `;`.
    #[arg(long, allow_hyphen_values = true)]
    seeds: Option<String>,
}

/// Input and usage problems; reported with exit status 2.
struct Usage(String);

impl<E: Display> From<E> for Usage {
    fn from(e: E) -> Self {
        Usage(e.to_string())
    }
}

type Outcome = Result<bool, Usage>;

fn usage<T>(msg: impl Into<String>) -> Result<T, Usage> {
    Err(Usage(msg.into()))
}

fn scalar(name: &str, text: &str) -> Result<Scalar, Usage> {
    parse_scalar(text).map_err(|e| Usage(format!("--{name} {text:?}: {e}")))
}

fn rational_q(text: &str, allow_gaussian: bool) -> Result<Scalar, Usage> {
    let q = scalar("q", text)?;
    if !allow_gaussian && !q.is_real() {
        return usage(format!(
            "--q {q} is not rational; pass --allow-gaussian-q to permit it"
        ));
    }
    Ok(q)
}

impl AlgebraArgs {
    fn kind(&self) -> Result<Kind, Usage> {
        let q = || -> Result<Scalar, Usage> {
            match &self.q {
                Some(text) => rational_q(text, self.allow_gaussian_q),
                None => usage("this algebra needs --q"),
            }
        };
        if self.algebra != AlgebraName::BlockTrunc && (self.k.is_some() || self.l.is_some()) {
            return usage("--k and --l only apply to --algebra block-trunc");
        }
        let kind = match self.algebra {
            AlgebraName::Virasoro | AlgebraName::Loop if self.q.is_some() => {
                return usage("--q only applies to Block algebras");
            }
            AlgebraName::Virasoro => Kind::Virasoro,
            AlgebraName::Loop => Kind::LoopVirasoro,
            AlgebraName::Block => Kind::block(q()?)?,
            AlgebraName::BlockHat => Kind::block_hat(q()?)?,
            AlgebraName::BlockTrunc => {
                let (Some(k), Some(l)) = (self.k, self.l) else {
                    return usage("--algebra block-trunc needs --k and --l");
                };
                Kind::block_trunc(q()?, k, l)?
            }
        };
        Ok(kind)
    }
}

impl ModuleArgs {
    fn get(&self, name: &str, value: &Option<String>) -> Result<Scalar, Usage> {
        match value {
            Some(text) => scalar(name, text),
            None => usage(format!("this module needs --{name}")),
        }
    }

    fn forbid(&self, names: &[(&str, bool)], family: &str) -> Result<(), Usage> {
        match names.iter().find(|(_, given)| *given) {
            Some((name, _)) => usage(format!("--{name} does not apply to {family}")),
            None => Ok(()),
        }
    }

    fn spec(&self, kind: &Kind) -> Result<Spec, Usage> {
        if let Some(factors) = &self.factors {
            if *kind != Kind::LoopVirasoro {
                return usage("--factors needs --algebra loop");
            }
            self.forbid(
                &[
                    ("lambda", self.lambda.is_some()),
                    ("mu", self.mu.is_some()),
                    ("alpha", self.alpha.is_some()),
                    ("beta", self.beta.is_some()),
                ],
                "a tensor product given by --factors",
            )?;
            return Ok(ModuleSpec::tensor(parse_factors(factors)?)?);
        }
        let spec = match kind {
            Kind::Virasoro => {
                self.forbid(
                    &[("mu", self.mu.is_some()), ("beta", self.beta.is_some())],
                    "Virasoro modules",
                )?;
                ModuleSpec::vir(
                    self.get("lambda", &self.lambda)?,
                    self.get("alpha", &self.alpha)?,
                )?
            }
            Kind::LoopVirasoro => {
                self.forbid(&[("beta", self.beta.is_some())], "loop modules")?;
                ModuleSpec::loop_module(
                    self.get("lambda", &self.lambda)?,
                    self.get("mu", &self.mu)?,
                    self.get("alpha", &self.alpha)?,
                )?
            }
            Kind::Block { q } => {
                self.forbid(&[("mu", self.mu.is_some())], "Block modules")?;
                let lambda = self.get("lambda", &self.lambda)?;
                let alpha = self.get("alpha", &self.alpha)?;
                if *q == Scalar::from_i64(-1) {
                    let beta = match &self.beta {
                        Some(text) => scalar("beta", text)?,
                        None => Scalar::from_i64(0),
                    };
                    ModuleSpec::block_hv(lambda, alpha, beta)?
                } else {
                    self.forbid(
                        &[("beta", self.beta.is_some())],
                        "Block modules with q ≠ -1",
                    )?;
                    ModuleSpec::block(q.clone(), lambda, alpha)?
                }
            }
            _ => return usage(format!("no rank-one module family is defined over {kind}")),
        };
        Ok(spec)
    }
}

fn parse_factors(text: &str) -> Result<Vec<LoopParams<Scalar>>, Usage> {
    text.split(';')
        .map(|part| {
            let values: Vec<&str> = part.split(',').map(str::trim).collect();
            let [l, m, a] = values[..] else {
                return usage(format!("factor {part:?} is not of the form λ,μ,α"));
            };
            Ok(LoopParams::new(
                scalar("factors", l)?,
                scalar("factors", m)?,
                scalar("factors", a)?,
            ))
        })
        .collect()
}

fn axis_names(kind: &Kind) -> (&'static str, Option<&'static str>) {
    match kind {
        Kind::Virasoro => ("i", None),
        Kind::LoopVirasoro => ("i", Some("j")),
        _ => ("m", Some("i")),
    }
}

fn parse_range(text: &str) -> Option<(i64, i64)> {
    let (lo, hi) = text.split_once("..")?;
    Some((lo.trim().parse().ok()?, hi.trim().parse().ok()?))
}

fn parse_box(kind: &Kind, text: &str) -> Result<IndexBox, Usage> {
    if let Ok(n) = text.trim().parse::<i64>() {
        if n < 0 {
            return usage(format!("--box {n} is negative"));
        }
        return Ok(kind.default_box(n));
    }
    let (a, b) = axis_names(kind);
    let mut first = None;
    let mut second = None;
    for part in text.split(',') {
        let Some((name, range)) = part.split_once('=') else {
            return usage(format!("--box part {part:?} is not `axis=lo..hi`"));
        };
        let Some(range) = parse_range(range) else {
            return usage(format!("--box range {range:?} is not `lo..hi`"));
        };
        let slot = match name.trim() {
            n if n == a => &mut first,
            n if Some(n) == b => &mut second,
            n => return usage(format!("{kind} has no box axis {n:?}")),
        };
        if slot.replace(range).is_some() {
            return usage(format!("--box names the axis {name:?} twice"));
        }
    }
    let Some(first) = first else {
        return usage(format!("--box must give the axis {a:?}"));
    };
    let second = match (b, second) {
        (None, _) => (0, 0),
        (Some(_), Some(r)) => r,
        (Some(b), None) => return usage(format!("--box must give the axis {b:?}")),
    };
    Ok(IndexBox::new(first, second))
}

fn show_box(kind: &Kind, bx: &IndexBox) -> String {
    let (a, b) = axis_names(kind);
    let mut out = format!("{a}={}..{}", bx.first.0, bx.first.1);
    if let Some(b) = b {
        out += &format!(",{b}={}..{}", bx.second.0, bx.second.1);
    }
    out
}

fn seed_vectors(spec: &Spec, seeds: &Option<String>) -> Result<Vec<ModuleVector<Scalar>>, Usage> {
    let nvars = spec.nvars();
    let Some(text) = seeds else {
        return Ok(if spec.is_tensor() {
            vec![ModuleVector::Tensor(MultiPoly::one(nvars))]
        } else {
            omega_core::grid::default_seeds()
                .into_iter()
                .map(ModuleVector::Poly)
                .collect()
        });
    };
    text.split(';')
        .map(|s| {
            Ok(if spec.is_tensor() {
                ModuleVector::Tensor(parse_multi_poly(s, nvars)?)
            } else {
                ModuleVector::Poly(parse_poly(s)?)
            })
        })
        .collect()
}

fn print_json(value: &impl Serialize) {
    println!(
        "{}",
        serde_json::to_string_pretty(value).expect("reports serialize")
    );
}

fn status(passed: bool) -> &'static str {
    if passed {
        "PASS"
    } else {
        "FAIL"
    }
}

fn run(cli: Cli) -> Outcome {
    let json = cli.json;
    match cli.command {
        Command::Bracket { algebra, a, b } => {
            let kind = algebra.kind()?;
            let x = parse_element(&kind, &a)?;
            let y = parse_element(&kind, &b)?;
            let z = x.bracket(&y)?;
            if json {
                print_json(&json!({"algebra": kind.to_string(), "a": x, "b": y, "bracket": z}));
            } else {
                println!("{z}");
            }
            Ok(true)
        }
        Command::Act {
            algebra,
            module,
            element,
            vector,
        } => {
            let kind = algebra.kind()?;
            let spec = module.spec(&kind)?;
            let e = parse_element(&kind, &element)?;
            let v = if spec.is_tensor() {
                ModuleVector::Tensor(parse_multi_poly(&vector, spec.nvars())?)
            } else {
                ModuleVector::Poly(parse_poly(&vector)?)
            };
            let image = act_element(&spec, &e, &v)?;
            if json {
                print_json(&json!({
                    "spec": spec.to_json(),
                    "element": e,
                    "vector": v.to_string(),
                    "image": image.to_string(),
                }));
            } else {
                println!("{image}");
            }
            Ok(true)
        }
        Command::Check(check) => run_check(check, json),
        Command::Probe(probe) => run_probe(probe, json),
        Command::Classify { table_a, table_b } => run_classify(&table_a, table_b.as_deref(), json),
        Command::EmitTable {
            algebra,
            module,
            bx,
            out,
        } => {
            let kind = algebra.kind()?;
            let spec = module.spec(&kind)?;
            if spec.is_tensor() {
                return usage("action tables describe rank-one modules only");
            }
            let bx = parse_box(&kind, &bx)?;
            let table = build_action_table(&spec, &bx)?;
            let text = table_to_json(&table);
            match out {
                Some(path) => {
                    std::fs::write(&path, text + "\n")
                        .map_err(|e| Usage(format!("{}: {e}", path.display())))?;
                    if !json {
                        println!(
                            "wrote {} entries for {spec} to {}",
                            table.entries.len(),
                            path.display()
                        );
                    }
                }
                None => println!("{text}"),
            }
            Ok(true)
        }
    }
}

fn run_check(check: Check, json: bool) -> Outcome {
    match check {
        Check::Jacobi { algebra, bx } => {
            let kind = algebra.kind()?;
            let bx = parse_box(&kind, &bx)?;
            let report = jacobi_check(&kind, &bx)?;
            if json {
                print_json(&report);
            } else {
                println!(
                    "{} jacobi on {kind}, box {}: {} triples, {} violations",
                    status(report.passed()),
                    show_box(&kind, &bx),
                    report.triples,
                    report.violations.len()
                );
                for [x, y, z] in report.violations.iter().take(10) {
                    println!("  ({x}, {y}, {z})");
                }
            }
            Ok(report.passed())
        }
        Check::Module {
            algebra,
            module,
            window,
        } => {
            let kind = algebra.kind()?;
            let spec = module.spec(&kind)?;
            let bx = parse_box(&kind, &window.bx)?;
            let tests = seed_vectors(&spec, &window.seeds)?;
            let report = module_axiom_check(&spec, &bx, &tests)?;
            if json {
                print_json(&report);
            } else {
                println!(
                    "{} module axioms for {spec}, box {}: {} pairs × {} vectors, {} violations",
                    status(report.passed()),
                    show_box(&kind, &bx),
                    report.pairs,
                    report.vectors,
                    report.violations.len()
                );
                for v in report.violations.iter().take(10) {
                    println!("  [{}, {}]·({}): {} ≠ {}", v.x, v.y, v.vector, v.lhs, v.rhs);
                }
            }
            Ok(report.passed())
        }
        Check::Center { algebra, bx } => {
            let kind = algebra.kind()?;
            let bx = parse_box(&kind, &bx)?;
            let report = center_report(&kind, &bx)?;
            if json {
                print_json(&report);
            } else {
                println!(
                    "{} center of {kind}, box {}",
                    status(report.passed()),
                    show_box(&kind, &bx)
                );
                for r in &report.declared {
                    let verdict = if r.central { "central" } else { "NOT central" };
                    println!("  {}: {verdict}", r.element);
                }
                if !report.window_artifacts.is_empty() {
                    let names: Vec<String> = report
                        .window_artifacts
                        .iter()
                        .map(|s| s.to_string())
                        .collect();
                    println!("  commute with the box only: {}", names.join(", "));
                }
            }
            Ok(report.passed())
        }
        Check::Composition { lambda, mu, window } => {
            let lambda = scalar("lambda", &lambda)?;
            let mu = scalar("mu", &mu)?;
            let bx = parse_box(&Kind::LoopVirasoro, &window.bx)?;
            if window.seeds.is_some() {
                return usage(
                    "check composition tests every window monomial; --seeds does not apply",
                );
            }
            let report = composition_series_check(&lambda, &mu, &bx, window.max_degree)?;
            if json {
                print_json(&report);
            } else {
                println!(
                    "{} composition series Ω({lambda},{mu},0) ⊃ tΩ ⊃ 0, box {}, degree ≤ {}",
                    status(report.passed()),
                    show_box(&Kind::LoopVirasoro, &bx),
                    window.max_degree
                );
                let line = |name: &str, ok: bool, witness: &Option<String>| match witness {
                    Some(w) if !ok => println!("  {} {name}: {w}", status(ok)),
                    _ => println!("  {} {name}", status(ok)),
                };
                let inv = &report.invariance;
                let inv_witness = inv
                    .witness
                    .as_ref()
                    .map(|w| format!("{}·({}) = {}", w.symbol, w.vector, w.image));
                line("tΩ is invariant", inv.invariant, &inv_witness);
                line(
                    "Ω/tΩ is trivial",
                    report.quotient_trivial,
                    &report.quotient_witness,
                );
                line(
                    "ψ intertwines tΩ(λ,μ,0) and Ω(λ,μ,1)",
                    report.intertwiner,
                    &report.intertwiner_witness,
                );
            }
            Ok(report.passed())
        }
        Check::Embedding {
            q,
            bx,
            allow_gaussian_q,
        } => {
            let q = rational_q(&q, allow_gaussian_q)?;
            if bx < 0 {
                return usage(format!("--box {bx} is negative"));
            }
            let report = virasoro_embedding_check(&q, &IndexBox::new((-bx, bx), (0, 0)))?;
            let passed = report.violations.is_empty();
            if json {
                print_json(&report);
            } else {
                println!(
                    "{} Virasoro embedding into the Block algebra with q = {q}, |m| ≤ {bx}: {} pairs, {} violations",
                    status(passed),
                    report.pairs,
                    report.violations.len()
                );
                for (x, y) in report.violations.iter().take(10) {
                    println!("  ({x}, {y})");
                }
            }
            Ok(passed)
        }
    }
}

fn print_probe(outcome: &ProbeOutcome<Scalar>, json: bool) {
    if json {
        print_json(&outcome.report());
        return;
    }
    println!("{}", outcome.verdict);
    println!(
        "  {} on window degree ≤ {} (dim {}), box {}",
        outcome.spec,
        outcome.degree,
        outcome.window_dim,
        show_box(&outcome.spec.algebra(), &outcome.bx)
    );
    for c in &outcome.closures {
        println!(
            "  seed {}: closure dim {} after {} rounds",
            c.seed, c.dim, c.rounds
        );
    }
}

fn run_probe(probe: Probe, json: bool) -> Outcome {
    match probe {
        Probe::Simplicity {
            algebra,
            module,
            window,
        } => {
            let kind = algebra.kind()?;
            let spec = module.spec(&kind)?;
            let bx = parse_box(&kind, &window.bx)?;
            let seeds = seed_vectors(&spec, &window.seeds)?;
            let cfg = ProbeConfig {
                bx,
                degree: window.max_degree,
                seeds,
                max_rounds: None,
            };
            print_probe(&simplicity_probe(&spec, &cfg)?, json);
        }
        Probe::Tensor { factors, window } => {
            let factors = parse_factors(&factors)?;
            let spec = ModuleSpec::tensor(factors.clone())?;
            let bx = parse_box(&Kind::LoopVirasoro, &window.bx)?;
            let seeds = seed_vectors(&spec, &window.seeds)?;
            let cfg = ProbeConfig {
                bx,
                degree: window.max_degree,
                seeds,
                max_rounds: None,
            };
            print_probe(&tensor_irreducibility_probe(&factors, &cfg)?, json);
        }
    }
    Ok(true)
}

fn read_table(path: &std::path::Path) -> Result<Table, Usage> {
    let text =
        std::fs::read_to_string(path).map_err(|e| Usage(format!("{}: {e}", path.display())))?;
    table_from_json(&text).map_err(|e: Error| Usage(format!("{}: {e}", path.display())))
}

fn run_classify(a: &std::path::Path, b: Option<&std::path::Path>, json: bool) -> Outcome {
    let ta = read_table(a)?;
    let Some(b) = b else {
        return match derive_parameters(&ta) {
            Ok(d) => {
                if json {
                    print_json(&json!({
                        "check": "derive",
                        "verdict": "InFamily",
                        "params": d.params.to_json(),
                        "entries_checked": d.entries_checked,
                        "commutators_checked": d.commutators_checked,
                    }));
                } else {
                    println!("InFamily{}", d.params);
                    println!(
                        "  {} entries and {} commutators verified",
                        d.entries_checked, d.commutators_checked
                    );
                }
                Ok(true)
            }
            Err(DeriveError::InconsistentEntry(v)) => {
                if json {
                    print_json(
                        &json!({"check": "derive", "verdict": "NotInFamily", "violation": v.to_string()}),
                    );
                } else {
                    println!("NotInFamily({v})");
                }
                Ok(true)
            }
            Err(e) => usage(format!("{}: {e}", a.display())),
        };
    };
    let tb = read_table(b)?;
    let c = isomorphism_classify(&ta, &tb)?;
    if json {
        print_json(&c.to_json());
    } else {
        println!("{c}");
    }
    Ok(true)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
