//! Default parameter grids for the verification suites. The values hit
//! every special case the classification arguments branch on: `q = -1/2`
//! and `q = -1`, `|1/q| ∈ ℕ`, `-q ∈ ℕ`, `-2q ∈ ℕ`.

use crate::module::{LoopParams, ModuleSpec};
use crate::{Poly, Scalar};

fn parse_all(values: &[&str]) -> Vec<Scalar> {
    values
        .iter()
        .map(|v| v.parse().expect("grid literal"))
        .collect()
}

/// Values for `λ` and `μ`.
pub fn scale_values() -> Vec<Scalar> {
    parse_all(&["1", "2", "1/2", "-1", "i"])
}

pub fn alpha_values() -> Vec<Scalar> {
    parse_all(&["0", "1", "-1/2", "2"])
}

pub fn beta_values() -> Vec<Scalar> {
    parse_all(&["0", "2"])
}

pub fn q_values() -> Vec<Scalar> {
    parse_all(&["1", "2", "1/2", "-1/2", "-1", "-3/2", "-3", "3/2"])
}

/// `1, t, t²+1, t³-t`; `t` generates the known proper submodule when `α = 0`.
pub fn default_seeds() -> Vec<Poly> {
    ["1", "t", "t^2 + 1", "t^3 - t"]
        .iter()
        .map(|s| crate::parse::parse_poly(s).expect("seed literal"))
        .collect()
}

pub fn vir_specs() -> Vec<ModuleSpec<Scalar>> {
    let mut out = Vec::new();
    for lambda in scale_values() {
        for alpha in alpha_values() {
            out.push(ModuleSpec::vir(lambda.clone(), alpha).expect("grid point"));
        }
    }
    out
}

pub fn loop_params() -> Vec<LoopParams<Scalar>> {
    let mut out = Vec::new();
    for lambda in scale_values() {
        for mu in scale_values() {
            for alpha in alpha_values() {
                out.push(LoopParams::new(lambda.clone(), mu.clone(), alpha));
            }
        }
    }
    out
}

pub fn loop_specs() -> Vec<ModuleSpec<Scalar>> {
    loop_params()
        .into_iter()
        .map(|p| ModuleSpec::loop_module(p.lambda, p.mu, p.alpha).expect("grid point"))
        .collect()
}

/// `Ω(λ, α)` over `B(q)` for every grid `q ≠ -1`, and `Ω(λ, α, β)` for `q = -1`.
pub fn block_specs() -> Vec<ModuleSpec<Scalar>> {
    let minus_one: Scalar = (-1).into();
    let mut out = Vec::new();
    for q in q_values() {
        for lambda in scale_values() {
            for alpha in alpha_values() {
                if q == minus_one {
                    for beta in beta_values() {
                        out.push(
                            ModuleSpec::block_hv(lambda.clone(), alpha.clone(), beta)
                                .expect("grid point"),
                        );
                    }
                } else {
                    out.push(
                        ModuleSpec::block(q.clone(), lambda.clone(), alpha.clone())
                            .expect("grid point"),
                    );
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_sizes() {
        assert_eq!(loop_specs().len(), 100);
        assert_eq!(vir_specs().len(), 20);
        // 7 values of q ≠ -1 with 20 points each, plus 40 points at q = -1
        assert_eq!(block_specs().len(), 7 * 20 + 40);
        assert_eq!(default_seeds()[3].to_string(), "t^3 - t");
    }
}
