//! Canonical JSON text and typed access with JSON-pointer error locations.

use std::fmt::Write as _;

use serde_json::Value;

use crate::error::{CliError, Result};

/// Compact JSON with object keys sorted at every level. Integers only ever
/// appear as integers, so the text is a pure function of the value.
pub fn canonical(value: &Value) -> String {
    let mut out = String::new();
    write_canonical(value, &mut out);
    out
}

fn write_canonical(value: &Value, out: &mut String) {
    match value {
        Value::Object(map) => {
            let mut keys: Vec<&String> = map.keys().collect();
            keys.sort();
            out.push('{');
            for (i, k) in keys.iter().enumerate() {
                if i > 0 {
                    out.push(',');
                }
                out.push_str(&Value::String((*k).clone()).to_string());
                out.push(':');
                write_canonical(&map[*k], out);
            }
            out.push('}');
        }
        Value::Array(items) => {
            out.push('[');
            for (i, item) in items.iter().enumerate() {
                if i > 0 {
                    out.push(',');
                }
                write_canonical(item, out);
            }
            out.push(']');
        }
        other => {
            let _ = write!(out, "{other}");
        }
    }
}

/// A parsed document plus a name for error messages.
pub struct Doc<'a> {
    pub name: &'a str,
}

fn escape(token: &str) -> String {
    token.replace('~', "~0").replace('/', "~1")
}

pub fn child(ptr: &str, token: impl std::fmt::Display) -> String {
    format!("{ptr}/{}", escape(&token.to_string()))
}

impl Doc<'_> {
    pub fn error(&self, pointer: &str, message: impl Into<String>) -> CliError {
        CliError::Schema {
            source_name: self.name.to_string(),
            pointer: if pointer.is_empty() { "/".into() } else { pointer.into() },
            message: message.into(),
        }
    }

    pub fn field<'v>(&self, value: &'v Value, ptr: &str, key: &str) -> Result<&'v Value> {
        let obj = value
            .as_object()
            .ok_or_else(|| self.error(ptr, "expected an object"))?;
        obj.get(key)
            .ok_or_else(|| self.error(&child(ptr, key), "missing field"))
    }

    pub fn optional<'v>(&self, value: &'v Value, ptr: &str, key: &str) -> Result<Option<&'v Value>> {
        let obj = value
            .as_object()
            .ok_or_else(|| self.error(ptr, "expected an object"))?;
        Ok(obj.get(key).filter(|v| !v.is_null()))
    }

    pub fn usize(&self, value: &Value, ptr: &str) -> Result<usize> {
        value
            .as_u64()
            .and_then(|x| usize::try_from(x).ok())
            .ok_or_else(|| self.error(ptr, "expected a non-negative integer"))
    }

    pub fn usize_vec(&self, value: &Value, ptr: &str) -> Result<Vec<usize>> {
        let items = value
            .as_array()
            .ok_or_else(|| self.error(ptr, "expected an array"))?;
        items
            .iter()
            .enumerate()
            .map(|(i, v)| self.usize(v, &child(ptr, i)))
            .collect()
    }

    pub fn usize_matrix(&self, value: &Value, ptr: &str) -> Result<Vec<Vec<usize>>> {
        let rows = value
            .as_array()
            .ok_or_else(|| self.error(ptr, "expected an array of rows"))?;
        rows.iter()
            .enumerate()
            .map(|(i, r)| self.usize_vec(r, &child(ptr, i)))
            .collect()
    }

    pub fn string_vec(&self, value: &Value, ptr: &str) -> Result<Vec<String>> {
        let items = value
            .as_array()
            .ok_or_else(|| self.error(ptr, "expected an array"))?;
        items
            .iter()
            .enumerate()
            .map(|(i, v)| {
                v.as_str()
                    .map(str::to_string)
                    .ok_or_else(|| self.error(&child(ptr, i), "expected a string"))
            })
            .collect()
    }
}
