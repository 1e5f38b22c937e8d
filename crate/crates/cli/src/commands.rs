//! One function per verb. Each fills a [`Report`] and may save the object it
//! produced.

use std::path::Path;
use std::sync::Arc;

use braceforge_core::cohomology::{build_central_extension, derived_intersection_obstruction, reconstruct_rb, solve_coboundary};
use braceforge_core::gamma::verify_skew_brace;
use braceforge_core::rota_baxter::{enumerate_rb, verify_rb};
use braceforge_core::{CoboundarySolution, GammaError, InnerImage, Verdict};
use serde_json::{json, Value};

use crate::certificates::{class_certificate, complement_detail, obstruction_detail};
use crate::error::{CliError, Result};
use crate::instances::{resolve_cocycle, resolve_gamma, resolve_lifted, GammaWitness, LiftedSource};
use crate::json::canonical;
use crate::objects::{cocycle_to_value, group_from_arg, group_to_value, map_from_file, map_to_value};
use crate::report::Report;

pub fn save(path: Option<&Path>, value: &Value) -> Result<()> {
    if let Some(path) = path {
        let mut text = canonical(value);
        text.push('\n');
        std::fs::write(path, text).map_err(|e| CliError::Io {
            path: path.display().to_string(),
            message: e.to_string(),
        })?;
    }
    Ok(())
}

pub fn group(report: &mut Report, arg: &str, save_to: Option<&Path>) -> Result<()> {
    let g = report.timed("load", || group_from_arg(arg))?;
    let center = g.center();
    let derived = g.derived_subgroup();
    report.claim(
        "group.valid",
        true,
        "GROUP",
        json!({
            "order": g.order(),
            "abelian": g.is_abelian(),
            "center_order": center.order(),
            "derived_order": derived.order(),
            "generators": g.generating_set(),
        }),
    );
    save(save_to, &group_to_value(&g))
}

fn inner_detail(inner: &InnerImage) -> Value {
    match inner {
        InnerImage::AllInner(reps) => json!({"all_inner": true, "witness": null, "representatives": reps}),
        InnerImage::NotInner(g) => json!({"all_inner": false, "witness": g}),
    }
}

pub fn verify_gamma(report: &mut Report, instance: Option<&str>, file: Option<&Path>) -> Result<()> {
    let mut gamma = resolve_gamma(instance, file)?;
    let n = gamma.group().order();
    match report.timed("verify", || gamma.verify()) {
        Err(GammaError::NotAutomorphism(g)) => report.claim(
            "gamma.functional_equation",
            false,
            "NOT_AUTOMORPHISM",
            json!({"witness": g}),
        ),
        Err(e) => return Err(CliError::library(e)),
        Ok(Verdict::Fails((g, h))) => report.claim(
            "gamma.functional_equation",
            false,
            "NOT_GAMMA",
            json!({"witness": [g, h], "pairs": n * n}),
        ),
        Ok(Verdict::Holds) => {
            let inner = gamma.inner_image_check();
            report.claim(
                "gamma.functional_equation",
                true,
                "GAMMA",
                json!({"witness": null, "pairs": n * n, "inner": inner_detail(&inner)}),
            )
        }
    }
    Ok(())
}

pub fn verify_rb_file(report: &mut Report, path: &Path) -> Result<()> {
    let (g, images) = map_from_file(path)?;
    let verdict = report.timed("verify", || verify_rb(&g, &images));
    let witness = verdict.witness().map(|&(a, b)| json!([a, b])).unwrap_or(Value::Null);
    let holds = verdict.holds();
    report.claim(
        "rb.identity",
        holds,
        if holds { "ROTA_BAXTER" } else { "NOT_ROTA_BAXTER" },
        json!({"witness": witness, "pairs": g.order() * g.order()}),
    );
    Ok(())
}

pub fn verify_brace(
    report: &mut Report,
    dot: Option<&str>,
    circle: Option<&str>,
    instance: Option<&str>,
    gamma_file: Option<&Path>,
) -> Result<()> {
    let (dot, circle) = match (dot, circle, instance, gamma_file) {
        (Some(d), Some(c), None, None) => (group_from_arg(d)?, group_from_arg(c)?),
        (None, None, i, f) if i.is_some() != f.is_some() => {
            let mut gamma = resolve_gamma(i, f)?;
            match gamma.verify() {
                Ok(Verdict::Holds) => {}
                Ok(Verdict::Fails((g, h))) => {
                    report.claim("brace.identity", false, "NOT_GAMMA", json!({"skew_brace": false, "witness": null, "gamma_witness": [g, h]}));
                    return Ok(());
                }
                Err(GammaError::NotAutomorphism(g)) => {
                    report.claim("brace.identity", false, "NOT_AUTOMORPHISM", json!({"skew_brace": false, "witness": null, "gamma_witness": g}));
                    return Ok(());
                }
                Err(e) => return Err(CliError::library(e)),
            }
            let circle = gamma.circle_group().map_err(CliError::library)?;
            (gamma.group().as_ref().clone(), circle)
        }
        _ => {
            return Err(CliError::usage(
                "give --dot and --circle, or exactly one of --gamma or --instance",
            ))
        }
    };
    let verdict = report
        .timed("verify", || verify_skew_brace(&dot, &circle))
        .map_err(CliError::library)?;
    let n = dot.order();
    let witness = verdict.witness().map(|&(g, h, k)| json!([g, h, k])).unwrap_or(Value::Null);
    let holds = verdict.holds();
    report.claim(
        "brace.identity",
        holds,
        if holds { "SKEW_BRACE" } else { "NOT_SKEW_BRACE" },
        json!({"skew_brace": holds, "witness": witness, "triples": n * n * n}),
    );
    Ok(())
}

pub struct LiftArgs<'a> {
    pub instance: Option<&'a str>,
    pub gamma: Option<&'a Path>,
    pub lift: Option<&'a Path>,
}

fn not_gamma_claim(report: &mut Report, id: &str, name: &str, witness: &GammaWitness) {
    let (verdict, w) = match witness {
        GammaWitness::NotAutomorphism(g) => ("NOT_AUTOMORPHISM", json!(g)),
        GammaWitness::Pair(g, h) => ("NOT_GAMMA", json!([g, h])),
    };
    report.claim(id, false, verdict, json!({"source": name, "gamma_witness": w}));
}

pub fn extract_cocycle(report: &mut Report, args: LiftArgs, save_to: Option<&Path>) -> Result<()> {
    let lifted = match resolve_lifted(args.instance, args.gamma, args.lift)? {
        LiftedSource::Ready(l) => l,
        LiftedSource::NotGamma { name, witness } => {
            not_gamma_claim(report, "cocycle.extracted", &name, &witness);
            return Ok(());
        }
    };
    let kappa = report.timed("extract", || lifted.kappa())?;
    report.claim(
        "cocycle.extracted",
        true,
        "COCYCLE",
        json!({
            "source": lifted.name,
            "base_order": kappa.base().order(),
            "coefficient_order": kappa.coeff().order(),
            "rank": kappa.coeff().rank(),
            "prime": kappa.coeff().prime(),
            "identically_trivial": kappa.is_identically_trivial(),
        }),
    );
    save(save_to, &cocycle_to_value(&kappa))
}

pub struct CocycleArgs<'a> {
    pub instance: Option<&'a str>,
    pub cocycle: Option<&'a Path>,
}

fn load_cocycle(report: &mut Report, args: &CocycleArgs) -> Result<braceforge_core::TwoCocycle> {
    let kappa = report.timed("load", || resolve_cocycle(args.instance, args.cocycle))?;
    if let Verdict::Fails((a, b, c)) = kappa.check() {
        return Err(CliError::Library(format!(
            "not a 2-cocycle: the identity fails at ({a}, {b}, {c})"
        )));
    }
    Ok(kappa)
}

pub fn solve(report: &mut Report, args: CocycleArgs) -> Result<()> {
    let kappa = load_cocycle(report, &args)?;
    let solution = report
        .timed("solve", || solve_coboundary(&kappa))
        .map_err(CliError::library)?;
    let (trivial, detail) = class_certificate(&kappa, &solution);
    report.claim(
        "cocycle.class",
        trivial,
        if trivial { "SOLVABLE" } else { "UNSOLVABLE" },
        detail,
    );
    Ok(())
}

pub fn build_extension(report: &mut Report, args: CocycleArgs, save_to: Option<&Path>) -> Result<()> {
    let kappa = load_cocycle(report, &args)?;
    let ext = report
        .timed("build", || build_central_extension(&kappa))
        .map_err(CliError::library)?;
    report.claim(
        "extension.built",
        true,
        "EXTENSION",
        json!({
            "order": ext.total().order(),
            "kernel_order": ext.kernel().order(),
            "base_order": ext.base().order(),
            "standard_section": ext.standard_section().images(),
        }),
    );
    save(save_to, &group_to_value(ext.total()))
}

pub fn find_complement(report: &mut Report, args: CocycleArgs, cap: u128) -> Result<()> {
    let kappa = load_cocycle(report, &args)?;
    let ext = report
        .timed("build", || build_central_extension(&kappa))
        .map_err(CliError::library)?;
    let (found, detail) = report.timed("search", || complement_detail(&ext, cap))?;
    report.claim(
        "extension.complement",
        found,
        if found { "SPLIT" } else { "NO_COMPLEMENT" },
        detail,
    );
    Ok(())
}

pub fn obstruction(report: &mut Report, args: CocycleArgs) -> Result<()> {
    let kappa = load_cocycle(report, &args)?;
    let ext = report
        .timed("build", || build_central_extension(&kappa))
        .map_err(CliError::library)?;
    let obs = report.timed("derived", || derived_intersection_obstruction(&ext));
    let (nontrivial, detail) = obstruction_detail(&ext, &obs);
    report.claim(
        "extension.obstruction",
        !nontrivial,
        if nontrivial { "NONSPLIT" } else { "NO_OBSTRUCTION" },
        detail,
    );
    Ok(())
}

pub fn reconstruct(report: &mut Report, args: LiftArgs, save_to: Option<&Path>) -> Result<()> {
    let lifted = match resolve_lifted(args.instance, args.gamma, args.lift)? {
        LiftedSource::Ready(l) => l,
        LiftedSource::NotGamma { name, witness } => {
            not_gamma_claim(report, "rb.reconstruction", &name, &witness);
            return Ok(());
        }
    };
    let kappa = report.timed("extract", || lifted.kappa())?;
    let solution = report
        .timed("solve", || solve_coboundary(&kappa))
        .map_err(CliError::library)?;
    let (_, certificate) = class_certificate(&kappa, &solution);
    let sigma = match solution {
        CoboundarySolution::Trivial(sigma) => sigma,
        CoboundarySolution::Nontrivial(_) => {
            report.claim(
                "rb.reconstruction",
                false,
                "CLASS_NONTRIVIAL",
                json!({"source": lifted.name, "certificate": certificate}),
            );
            return Ok(());
        }
    };
    let op = report
        .timed("reconstruct", || reconstruct_rb(&lifted.gamma, &lifted.circle, &lifted.lift, &sigma))
        .map_err(CliError::library)?;
    let group = lifted.gamma.group();
    let holds = verify_rb(group, op.images()).holds();
    report.claim(
        "rb.reconstruction",
        holds,
        "RECONSTRUCTED",
        json!({"source": lifted.name, "images": op.images(), "certificate": certificate}),
    );
    save(save_to, &map_to_value(group, op.images()))
}

pub fn enumerate(report: &mut Report, arg: &str, cap: u128, save_to: Option<&Path>) -> Result<()> {
    let g = Arc::new(group_from_arg(arg)?);
    let ops = report
        .timed("enumerate", || enumerate_rb(&g, cap))
        .map_err(CliError::library)?;
    let images: Vec<&[usize]> = ops.iter().map(|o| o.images()).collect();
    report.claim(
        "rb.enumeration",
        true,
        "ENUMERATED",
        json!({"count": ops.len(), "operators": images}),
    );
    save(
        save_to,
        &json!({"group": group_to_value(&g), "count": ops.len(), "operators": images}),
    )
}
