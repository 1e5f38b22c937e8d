//! Named worked examples usable wherever a verb expects a gamma function
//! with a lift, or a cocycle:
//!
//! - `alpha:P:A`: `γ(g) = ι(g^A)` on the Heisenberg group of order `P³`
//! - `p5:P`: the order-`P⁵` example
//! - `p5-transported:P`: its cocycle restricted to `S` with values in `K`
//!   (cocycle verbs only)
//! - `centerless`: `γ(g) = ι(g⁻¹)` on the group of order 6

use std::path::Path;
use std::sync::Arc;

use braceforge_core::gallery::{build_alpha_family, build_centerless_example, build_p5_example};
use braceforge_core::{
    cohomology::extract_kappa, CoefficientGroup, FiniteGroup, GammaFunction, GroupMap, TwoCocycle,
    Verdict,
};

use crate::error::{CliError, Result};
use crate::objects::{cocycle_from_file, gamma_from_file, map_from_file};

/// A verified gamma function with a lift `C` (so `γ(g) = ι(C(g))`) and
/// central coefficients.
pub struct Lifted {
    pub name: String,
    pub gamma: GammaFunction,
    pub circle: Arc<FiniteGroup>,
    pub lift: GroupMap,
    pub coeff: Arc<CoefficientGroup>,
}

impl Lifted {
    pub fn kappa(&self) -> Result<TwoCocycle> {
        extract_kappa(&self.gamma, &self.circle, &self.lift, &self.coeff).map_err(CliError::library)
    }
}

/// What a `--gamma/--lift` pair or an instance resolved to. A gamma
/// function that fails verification is a mathematical answer, not an
/// input error, so it is returned rather than raised.
pub enum LiftedSource {
    Ready(Lifted),
    NotGamma { name: String, witness: GammaWitness },
}

pub enum GammaWitness {
    NotAutomorphism(usize),
    Pair(usize, usize),
}

fn parse_params(spec: &str, rest: &str, count: usize) -> Result<Vec<usize>> {
    let parts: Vec<&str> = if rest.is_empty() { Vec::new() } else { rest.split(':').collect() };
    if parts.len() != count {
        return Err(CliError::usage(format!("instance `{spec}` expects {count} parameter(s)")));
    }
    parts
        .iter()
        .map(|x| {
            x.parse()
                .map_err(|_| CliError::usage(format!("bad number `{x}` in instance `{spec}`")))
        })
        .collect()
}

fn split_spec(spec: &str) -> (&str, &str) {
    spec.split_once(':').unwrap_or((spec, ""))
}

pub fn lifted_instance(spec: &str) -> Result<Lifted> {
    let (kind, rest) = split_spec(spec);
    match kind {
        "alpha" => {
            let v = parse_params(spec, rest, 2)?;
            let inst = build_alpha_family(v[0], v[1]).map_err(CliError::library)?;
            Ok(Lifted {
                name: spec.to_string(),
                gamma: inst.gamma,
                circle: inst.circle,
                lift: inst.lift,
                coeff: inst.center,
            })
        }
        "p5" => {
            let v = parse_params(spec, rest, 1)?;
            let inst = build_p5_example(v[0]).map_err(CliError::library)?;
            Ok(Lifted {
                name: spec.to_string(),
                gamma: inst.gamma,
                circle: inst.circle,
                lift: inst.lift,
                coeff: inst.center,
            })
        }
        "centerless" => {
            parse_params(spec, rest, 0)?;
            let inst = build_centerless_example().map_err(CliError::library)?;
            let circle = Arc::new(inst.gamma.circle_group().map_err(CliError::library)?);
            let coeff = Arc::new(
                CoefficientGroup::center_of(inst.group.clone()).map_err(CliError::library)?,
            );
            Ok(Lifted {
                name: spec.to_string(),
                gamma: inst.gamma,
                circle,
                lift: inst.operator.map().clone(),
                coeff,
            })
        }
        _ => Err(CliError::usage(format!(
            "unknown instance `{spec}` (expected alpha:P:A, p5:P or centerless)"
        ))),
    }
}

pub fn cocycle_instance(spec: &str) -> Result<TwoCocycle> {
    let (kind, rest) = split_spec(spec);
    if kind == "p5-transported" {
        let v = parse_params(spec, rest, 1)?;
        let inst = build_p5_example(v[0]).map_err(CliError::library)?;
        return inst.transported_kappa().map_err(CliError::library);
    }
    lifted_instance(spec)?.kappa()
}

/// Resolves `--instance` or the `--gamma`/`--lift` file pair.
pub fn resolve_lifted(
    instance: Option<&str>,
    gamma: Option<&Path>,
    lift: Option<&Path>,
) -> Result<LiftedSource> {
    match (instance, gamma, lift) {
        (Some(spec), None, None) => Ok(LiftedSource::Ready(lifted_instance(spec)?)),
        (None, Some(gpath), Some(lpath)) => {
            let mut gamma = gamma_from_file(gpath)?;
            let name = gpath.display().to_string();
            match gamma.verify() {
                Err(braceforge_core::GammaError::NotAutomorphism(g)) => {
                    return Ok(LiftedSource::NotGamma { name, witness: GammaWitness::NotAutomorphism(g) })
                }
                Err(e) => return Err(CliError::library(e)),
                Ok(Verdict::Fails((g, h))) => {
                    return Ok(LiftedSource::NotGamma { name, witness: GammaWitness::Pair(g, h) })
                }
                Ok(Verdict::Holds) => {}
            }
            let (lift_group, images) = map_from_file(lpath)?;
            let group = gamma.group().clone();
            if lift_group != *group {
                return Err(CliError::usage(format!(
                    "{} and {} are over different groups",
                    gpath.display(),
                    lpath.display()
                )));
            }
            let lift = GroupMap::new(group.clone(), group.clone(), images).map_err(CliError::library)?;
            let circle = Arc::new(gamma.circle_group().map_err(CliError::library)?);
            let coeff = Arc::new(CoefficientGroup::center_of(group).map_err(CliError::library)?);
            Ok(LiftedSource::Ready(Lifted { name, gamma, circle, lift, coeff }))
        }
        _ => Err(CliError::usage(
            "give either --instance or both --gamma and --lift",
        )),
    }
}

/// Resolves `--cocycle` or `--instance`.
pub fn resolve_cocycle(instance: Option<&str>, cocycle: Option<&Path>) -> Result<TwoCocycle> {
    match (instance, cocycle) {
        (Some(spec), None) => cocycle_instance(spec),
        (None, Some(path)) => cocycle_from_file(path),
        _ => Err(CliError::usage("give exactly one of --cocycle or --instance")),
    }
}

/// Resolves `--gamma` or `--instance` to a gamma function (unverified when
/// read from a file).
pub fn resolve_gamma(instance: Option<&str>, gamma: Option<&Path>) -> Result<GammaFunction> {
    match (instance, gamma) {
        (Some(spec), None) => Ok(lifted_instance(spec)?.gamma),
        (None, Some(path)) => gamma_from_file(path),
        _ => Err(CliError::usage("give exactly one of --gamma or --instance")),
    }
}
