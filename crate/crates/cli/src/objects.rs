//! Loading and emitting the JSON forms of groups, gamma functions, maps and
//! cocycles.
//!
//! A group may be given inline as `{"order", "identity", "table", "names"}`
//! or as a string, which is either a descriptor such as `heisenberg:3` or a
//! path (relative to the file that mentions it).

use std::path::{Path, PathBuf};
use std::sync::Arc;

use braceforge_core::group::{
    make_abelian, make_cyclic, make_dihedral, make_heisenberg, FiniteGroup, GroupError,
};
use braceforge_core::{CoefficientGroup, GammaFunction, TwoCocycle};
use serde_json::{json, Value};

use crate::error::{CliError, Result};
use crate::json::{child, Doc};

/// Parses `trivial`, `cyclic:n`, `abelian:n1,n2,..`, `dihedral:n` or
/// `heisenberg:p`. Returns `None` if `s` is not descriptor-shaped.
pub fn parse_descriptor(s: &str) -> Option<Result<FiniteGroup>> {
    let (kind, arg) = match s.split_once(':') {
        Some((k, a)) => (k, Some(a)),
        None => (s, None),
    };
    let numbers = |a: Option<&str>| -> Result<Vec<usize>> {
        let a = a.ok_or_else(|| CliError::usage(format!("group descriptor `{s}` needs parameters")))?;
        a.split(',')
            .map(|x| {
                x.trim()
                    .parse::<usize>()
                    .map_err(|_| CliError::usage(format!("bad number `{x}` in group descriptor `{s}`")))
            })
            .collect()
    };
    let one = |a: Option<&str>| -> Result<usize> {
        match numbers(a)?.as_slice() {
            [n] => Ok(*n),
            _ => Err(CliError::usage(format!("group descriptor `{s}` takes one parameter"))),
        }
    };
    let built: Result<std::result::Result<FiniteGroup, GroupError>> = match kind {
        "trivial" if arg.is_none() => Ok(Ok(FiniteGroup::trivial())),
        "cyclic" => one(arg).map(make_cyclic),
        "abelian" => numbers(arg).map(|f| make_abelian(&f)),
        "dihedral" => one(arg).map(make_dihedral),
        "heisenberg" => one(arg).map(make_heisenberg),
        _ => return None,
    };
    Some(built.and_then(|g| g.map_err(|e| CliError::usage(format!("group `{s}`: {e}")))))
}

pub fn read_json(path: &Path) -> Result<Value> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })?;
    serde_json::from_str(&text).map_err(|e| CliError::Schema {
        source_name: path.display().to_string(),
        pointer: "/".into(),
        message: format!("invalid JSON: {e}"),
    })
}

fn dir_of(path: &Path) -> PathBuf {
    path.parent().map(Path::to_path_buf).unwrap_or_default()
}

/// A group argument on the command line: a descriptor or a group file.
pub fn group_from_arg(arg: &str) -> Result<FiniteGroup> {
    if let Some(g) = parse_descriptor(arg) {
        return g;
    }
    let path = Path::new(arg);
    let value = read_json(path)?;
    let name = path.display().to_string();
    group_from_value(&Doc { name: &name }, &value, "", &dir_of(path))
}

pub fn group_from_value(doc: &Doc, value: &Value, ptr: &str, dir: &Path) -> Result<FiniteGroup> {
    if let Some(s) = value.as_str() {
        if let Some(g) = parse_descriptor(s) {
            return g;
        }
        let path = dir.join(s);
        let inner = read_json(&path)?;
        let name = path.display().to_string();
        return group_from_value(&Doc { name: &name }, &inner, "", &dir_of(&path));
    }
    let order = doc.usize(doc.field(value, ptr, "order")?, &child(ptr, "order"))?;
    let identity = doc.usize(doc.field(value, ptr, "identity")?, &child(ptr, "identity"))?;
    let table_ptr = child(ptr, "table");
    let table = doc.usize_matrix(doc.field(value, ptr, "table")?, &table_ptr)?;
    let names = match doc.optional(value, ptr, "names")? {
        Some(v) => Some(doc.string_vec(v, &child(ptr, "names"))?),
        None => None,
    };
    if table.len() != order {
        return Err(doc.error(&table_ptr, format!("{} rows, but order is {order}", table.len())));
    }
    if identity != 0 {
        return Err(doc.error(&child(ptr, "identity"), "the identity must be element 0"));
    }
    let group = FiniteGroup::from_table(&table, names).map_err(|e| match e {
        GroupError::NotAssociative { a, b, c } => doc.error(
            &table_ptr,
            format!("not associative: ({a}·{b})·{c} ≠ {a}·({b}·{c})"),
        ),
        GroupError::Ragged { row, .. } => doc.error(&child(&table_ptr, row), e.to_string()),
        GroupError::OutOfRange { row, col, .. } => {
            doc.error(&child(&child(&table_ptr, row), col), e.to_string())
        }
        GroupError::NamesLength { .. } => doc.error(&child(ptr, "names"), e.to_string()),
        other => doc.error(&table_ptr, other.to_string()),
    })?;
    if group.row(0).iter().enumerate().any(|(i, &x)| x as usize != i) {
        return Err(doc.error(&child(ptr, "identity"), "element 0 is not the identity of the table"));
    }
    Ok(group)
}

pub fn group_to_value(group: &FiniteGroup) -> Value {
    let mut v = json!({
        "order": group.order(),
        "identity": group.identity(),
        "table": group.rows(),
    });
    if let Some(names) = group.names() {
        v["names"] = json!(names);
    }
    v
}

/// `{"group": G, "action": [[γ(g)(h)]]}`.
pub fn gamma_from_file(path: &Path) -> Result<GammaFunction> {
    let value = read_json(path)?;
    let name = path.display().to_string();
    let doc = Doc { name: &name };
    let group = group_from_value(&doc, doc.field(&value, "", "group")?, "/group", &dir_of(path))?;
    let action = doc.usize_matrix(doc.field(&value, "", "action")?, "/action")?;
    GammaFunction::new(Arc::new(group), &action).map_err(|e| doc.error("/action", e.to_string()))
}

pub fn gamma_to_value(gamma: &GammaFunction) -> Value {
    json!({
        "group": group_to_value(gamma.group()),
        "action": gamma.action_rows(),
    })
}

/// `{"group": G, "images": [...]}`, used for Rota–Baxter operators and lifts.
pub fn map_from_file(path: &Path) -> Result<(FiniteGroup, Vec<usize>)> {
    let value = read_json(path)?;
    let name = path.display().to_string();
    let doc = Doc { name: &name };
    let group = group_from_value(&doc, doc.field(&value, "", "group")?, "/group", &dir_of(path))?;
    let images = doc.usize_vec(doc.field(&value, "", "images")?, "/images")?;
    if images.len() != group.order() {
        return Err(doc.error("/images", format!("{} images for a group of order {}", images.len(), group.order())));
    }
    if let Some(i) = images.iter().position(|&x| x >= group.order()) {
        return Err(doc.error(&child("/images", i), "element out of range"));
    }
    Ok((group, images))
}

pub fn map_to_value(group: &FiniteGroup, images: &[usize]) -> Value {
    json!({ "group": group_to_value(group), "images": images })
}

/// `{"base": U, "coeff": {"ambient": G, "basis": [...], "prime": p},
/// "values": [[...]]}` with basis and values as elements of the ambient
/// group. `ambient` defaults to the base.
pub fn cocycle_from_file(path: &Path) -> Result<TwoCocycle> {
    let value = read_json(path)?;
    let name = path.display().to_string();
    let doc = Doc { name: &name };
    let dir = dir_of(path);
    let base = Arc::new(group_from_value(&doc, doc.field(&value, "", "base")?, "/base", &dir)?);
    let coeff_v = doc.field(&value, "", "coeff")?;
    let ambient = match doc.optional(coeff_v, "/coeff", "ambient")? {
        Some(v) => Arc::new(group_from_value(&doc, v, "/coeff/ambient", &dir)?),
        None => base.clone(),
    };
    let basis = doc.usize_vec(doc.field(coeff_v, "/coeff", "basis")?, "/coeff/basis")?;
    let prime = doc.usize(doc.field(coeff_v, "/coeff", "prime")?, "/coeff/prime")?;
    let prime = u32::try_from(prime).map_err(|_| doc.error("/coeff/prime", "prime too large"))?;
    let coeff = CoefficientGroup::with_basis(ambient, &basis, prime)
        .map_err(|e| doc.error("/coeff", e.to_string()))?;
    let values = doc.usize_matrix(doc.field(&value, "", "values")?, "/values")?;
    if values.len() != base.order() {
        return Err(doc.error("/values", format!("{} rows, expected {}", values.len(), base.order())));
    }
    let mut rows = Vec::with_capacity(values.len());
    for (a, row) in values.iter().enumerate() {
        let row_ptr = child("/values", a);
        if row.len() != base.order() {
            return Err(doc.error(&row_ptr, format!("{} entries, expected {}", row.len(), base.order())));
        }
        let local = row
            .iter()
            .enumerate()
            .map(|(b, &x)| {
                coeff
                    .coeff_index(x)
                    .ok_or_else(|| doc.error(&child(&row_ptr, b), "value is not in the coefficient group"))
            })
            .collect::<Result<Vec<_>>>()?;
        rows.push(local);
    }
    TwoCocycle::new(base, Arc::new(coeff), &rows).map_err(|e| doc.error("/values", e.to_string()))
}

pub fn cocycle_to_value(kappa: &TwoCocycle) -> Value {
    let coeff = kappa.coeff();
    let n = kappa.base().order();
    let values: Vec<Vec<usize>> = (0..n)
        .map(|a| (0..n).map(|b| kappa.ambient_value(a, b)).collect())
        .collect();
    json!({
        "base": group_to_value(kappa.base()),
        "coeff": {
            "ambient": group_to_value(coeff.ambient()),
            "basis": coeff.ambient_basis(),
            "prime": coeff.prime(),
        },
        "values": values,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn descriptors() {
        assert_eq!(parse_descriptor("heisenberg:3").unwrap().unwrap().order(), 27);
        assert_eq!(parse_descriptor("abelian:2,2").unwrap().unwrap().order(), 4);
        assert_eq!(parse_descriptor("dihedral:4").unwrap().unwrap().order(), 8);
        assert_eq!(parse_descriptor("trivial").unwrap().unwrap().order(), 1);
        assert!(parse_descriptor("heisenberg:x").unwrap().is_err());
        assert!(parse_descriptor("heisenberg:4").unwrap().is_err());
        assert!(parse_descriptor("some/file.json").is_none());
    }

    #[test]
    fn group_value_round_trip() {
        let g = make_heisenberg(3).unwrap();
        let v = group_to_value(&g);
        let back = group_from_value(&Doc { name: "t" }, &v, "", Path::new("")).unwrap();
        assert_eq!(back, g);
        assert_eq!(group_to_value(&back), v);
    }

    #[test]
    fn corrupted_table_names_the_triple() {
        let rows = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ];
        let v = json!({"order": 5, "identity": 0, "table": rows});
        let err = group_from_value(&Doc { name: "loop.json" }, &v, "", Path::new("")).unwrap_err();
        let msg = err.to_string();
        assert!(msg.starts_with("loop.json at /table: not associative"), "{msg}");
    }
}
