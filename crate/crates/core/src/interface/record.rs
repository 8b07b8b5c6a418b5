use serde_json::{json, Value};

use super::document::{
    coefficient_value, field, header_values, read_array, read_bigint, read_header, read_text,
    read_usize,
};
use crate::classifier::{AutGenerator, ManifoldRecord};
use crate::error::{Error, Result};
use crate::linalg::{AbelianInvariants, IntMatrix};

fn parse_error(path: &str, message: impl Into<String>) -> Error {
    Error::Parse {
        path: path.to_string(),
        message: message.into(),
    }
}

/// Parses a manifold record:
/// `{schema_version, group, w, h4: {free_rank, torsion}, class_h4, aut_orbit_gens: [{label, matrix}]}`.
pub fn parse_record(text: &str) -> Result<ManifoldRecord> {
    let obj = read_text(text)?;
    let (group, w) = read_header(&obj)?;
    let h4v = field(&obj, "h4", "$")?
        .as_object()
        .ok_or_else(|| parse_error("$.h4", "object expected"))?;
    let free_rank = read_usize(field(h4v, "free_rank", "$.h4")?, "$.h4.free_rank")?;
    let torsion = read_array(field(h4v, "torsion", "$.h4")?, "$.h4.torsion")?
        .iter()
        .enumerate()
        .map(|(i, v)| read_bigint(v, &format!("$.h4.torsion[{i}]")))
        .collect::<Result<Vec<_>>>()?;
    let h4 = AbelianInvariants::from_cyclic_orders(free_rank, torsion.clone());
    if h4.torsion != torsion {
        return Err(parse_error("$.h4.torsion", "torsion must be an invariant-factor chain d_1 | d_2 | … with d_1 > 1"));
    }
    let class = read_array(field(&obj, "class_h4", "$")?, "$.class_h4")?
        .iter()
        .enumerate()
        .map(|(i, v)| read_bigint(v, &format!("$.class_h4[{i}]")))
        .collect::<Result<Vec<_>>>()?;
    let mut gens = Vec::new();
    for (k, g) in read_array(field(&obj, "aut_orbit_gens", "$")?, "$.aut_orbit_gens")?
        .iter()
        .enumerate()
    {
        let path = format!("$.aut_orbit_gens[{k}]");
        let go = g.as_object().ok_or_else(|| parse_error(&path, "object expected"))?;
        let label = field(go, "label", &path)?
            .as_str()
            .ok_or_else(|| parse_error(&format!("{path}.label"), "string expected"))?
            .to_string();
        let mp = format!("{path}.matrix");
        let rows = read_array(field(go, "matrix", &path)?, &mp)?
            .iter()
            .enumerate()
            .map(|(i, r)| {
                read_array(r, &format!("{mp}[{i}]"))?
                    .iter()
                    .enumerate()
                    .map(|(j, x)| read_bigint(x, &format!("{mp}[{i}][{j}]")))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        let n = rows.len();
        let flat: Vec<_> = rows.into_iter().flatten().collect();
        let cols = flat.len().checked_div(n).unwrap_or(0);
        let matrix = IntMatrix::from_entries(n, cols, flat).map_err(|e| parse_error(&mp, e.to_string()))?;
        gens.push(AutGenerator { label, matrix });
    }
    ManifoldRecord::new(group, w, h4, class, gens).map_err(|e| parse_error("$", e.to_string()))
}

pub fn emit_record(r: &ManifoldRecord) -> String {
    let mut m = header_values(&r.group, &r.w);
    m.insert(
        "h4".into(),
        json!({
            "free_rank": r.h4.free_rank,
            "torsion": r.h4.torsion.iter().map(coefficient_value).collect::<Vec<_>>(),
        }),
    );
    m.insert(
        "class_h4".into(),
        Value::Array(r.class_h4.iter().map(coefficient_value).collect()),
    );
    let gens = r
        .aut_orbit_gens
        .iter()
        .map(|g| {
            let rows: Vec<Value> = g
                .matrix
                .to_rows()
                .iter()
                .map(|row| Value::Array(row.iter().map(coefficient_value).collect()))
                .collect();
            json!({ "label": g.label, "matrix": rows })
        })
        .collect();
    m.insert("aut_orbit_gens".into(), Value::Array(gens));
    let mut s = serde_json::to_string_pretty(&Value::Object(m)).expect("json");
    s.push('\n');
    s
}
