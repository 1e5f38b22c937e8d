//! JSON forms of the certificates behind split / non-split answers.

use braceforge_core::cohomology::{
    check_nontriviality_certificate, find_complement, CentralExtension, CoboundarySolution,
    Obstruction,
};
use braceforge_core::{GroupMap, TwoCocycle};
use serde_json::{json, Value};

use crate::error::{CliError, Result};

/// `(trivial, certificate)`. A trivial class ships `σ` (ambient elements);
/// a nontrivial one ships the combination of equations that sums to
/// `0 = c ≠ 0`, re-checked independently of the solver.
pub fn class_certificate(kappa: &TwoCocycle, solution: &CoboundarySolution) -> (bool, Value) {
    let n = kappa.base().order();
    let rank = kappa.coeff().rank();
    let mut v = json!({
        "unknowns": n * rank,
        "equations": n * n * rank,
        "prime": kappa.coeff().prime(),
        "obstruction_witness": null,
    });
    match solution {
        CoboundarySolution::Trivial(sigma) => {
            let values: Vec<usize> = (0..n).map(|g| sigma.ambient_value(g)).collect();
            v["trivial"] = json!(true);
            v["sigma"] = json!(values);
            v["certificate_checked"] = json!(sigma.certifies(kappa).holds());
            (true, v)
        }
        CoboundarySolution::Nontrivial(cert) => {
            let rows: Vec<[usize; 4]> = cert
                .iter()
                .map(|(e, c)| [e.g, e.h, e.coord, *c as usize])
                .collect();
            v["trivial"] = json!(false);
            v["sigma"] = Value::Null;
            v["inconsistent_combination"] = json!(rows);
            v["certificate_checked"] = json!(check_nontriviality_certificate(kappa, cert));
            (false, v)
        }
    }
}

/// `(nontrivial, detail)` for `Q ∩ [E,E]`; the witness `z` is also given
/// as the pair `(z, 1)` in ambient coordinates.
pub fn obstruction_detail(ext: &CentralExtension, obstruction: &Obstruction) -> (bool, Value) {
    let coeff = ext.coeff();
    let mut v = json!({
        "extension_order": ext.total().order(),
        "coefficient_order": coeff.order(),
    });
    match obstruction {
        Obstruction::Trivial => {
            v["obstruction_witness"] = Value::Null;
            v["intersection"] = json!([0]);
            (false, v)
        }
        Obstruction::Witness { witness, intersection } => {
            let z = coeff.ambient_index(*witness);
            v["obstruction_witness"] = json!(z);
            v["witness_name"] = json!(coeff.ambient().name(z));
            v["witness_pair"] = json!([z, 0]);
            v["intersection"] =
                json!(intersection.iter().map(|&q| coeff.ambient_index(q)).collect::<Vec<_>>());
            (true, v)
        }
    }
}

/// `(found, detail)` for an exhaustive complement search.
pub fn complement_detail(ext: &CentralExtension, cap: u128) -> Result<(bool, Value)> {
    let gens = ext.base().generating_set();
    let candidates = (ext.coeff().order() as u128).saturating_pow(gens.len() as u32);
    let found: Option<GroupMap> = find_complement(ext, Some(&gens), cap).map_err(CliError::library)?;
    let mut v = json!({
        "generators": gens,
        "candidate_lifts": candidates as u64,
        "extension_order": ext.total().order(),
    });
    match found {
        Some(section) => {
            v["section"] = json!(section.images());
            Ok((true, v))
        }
        None => {
            v["section"] = Value::Null;
            Ok((false, v))
        }
    }
}
