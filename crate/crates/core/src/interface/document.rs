use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};
use serde_json::{json, Map, Value};

use super::SCHEMA_VERSION;
use crate::chain_complex::LambdaComplex;
use crate::error::{Error, Result};
use crate::group_ring::{Group, LambdaMatrix, OrientationChar, RingElement};
use crate::linalg::IntMatrix;

/// Group part of a document. `laurent` is `base × Z^rank` with a finite base.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum GroupDescriptor {
    Trivial,
    Cyclic { order: u64 },
    Product { orders: Vec<u64> },
    Laurent { base: Box<GroupDescriptor>, rank: usize },
}

impl GroupDescriptor {
    pub fn of(group: &Group) -> Self {
        let finite = match group.orders() {
            [] => GroupDescriptor::Trivial,
            [o] => GroupDescriptor::Cyclic { order: *o },
            os => GroupDescriptor::Product { orders: os.to_vec() },
        };
        if group.free_rank() == 0 {
            finite
        } else {
            GroupDescriptor::Laurent {
                base: Box::new(finite),
                rank: group.free_rank(),
            }
        }
    }

    pub fn to_group(&self) -> Result<Group> {
        match self {
            GroupDescriptor::Trivial => Ok(Group::trivial()),
            GroupDescriptor::Cyclic { order } => Group::cyclic(*order),
            GroupDescriptor::Product { orders } => Group::product(orders),
            GroupDescriptor::Laurent { base, rank } => {
                if matches!(**base, GroupDescriptor::Laurent { .. }) {
                    return Err(Error::InvalidGroup("laurent base must be finite".into()));
                }
                Ok(Group::laurent(&base.to_group()?, *rank))
            }
        }
    }
}

/// The serialized form of a [`LambdaComplex`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComplexDocument {
    pub schema_version: String,
    pub group: GroupDescriptor,
    pub w: Vec<i8>,
    pub ranks: Vec<usize>,
    /// `boundaries[i - 1]` is `d_i`, as rows of ring elements.
    pub boundaries: Vec<LambdaMatrix>,
}

fn parse_error(path: &str, message: impl Into<String>) -> Error {
    Error::Parse {
        path: path.to_string(),
        message: message.into(),
    }
}

pub(crate) fn coefficient_value(c: &BigInt) -> Value {
    match c.to_i64() {
        Some(x) => json!(x),
        None => json!(c.to_string()),
    }
}

pub(crate) fn read_bigint(v: &Value, path: &str) -> Result<BigInt> {
    match v {
        Value::Number(n) => n
            .as_i64()
            .map(BigInt::from)
            .or_else(|| n.as_u64().map(BigInt::from))
            .ok_or_else(|| parse_error(path, "integer expected; write large values as strings")),
        Value::String(s) => s
            .trim()
            .parse()
            .map_err(|_| parse_error(path, format!("not an integer: {s:?}"))),
        _ => Err(parse_error(path, "integer expected")),
    }
}

fn read_i64(v: &Value, path: &str) -> Result<i64> {
    v.as_i64().ok_or_else(|| parse_error(path, "small integer expected"))
}

pub(crate) fn read_usize(v: &Value, path: &str) -> Result<usize> {
    v.as_u64()
        .map(|x| x as usize)
        .ok_or_else(|| parse_error(path, "non-negative integer expected"))
}

pub(crate) fn read_array<'a>(v: &'a Value, path: &str) -> Result<&'a Vec<Value>> {
    v.as_array().ok_or_else(|| parse_error(path, "array expected"))
}

pub(crate) fn field<'a>(obj: &'a Map<String, Value>, key: &str, path: &str) -> Result<&'a Value> {
    obj.get(key)
        .ok_or_else(|| parse_error(&format!("{path}.{key}"), "missing field"))
}

pub(crate) fn read_text(text: &str) -> Result<Map<String, Value>> {
    let value: Value = serde_json::from_str(text).map_err(|e| {
        parse_error(
            &format!("line {} column {}", e.line(), e.column()),
            e.to_string(),
        )
    })?;
    match value {
        Value::Object(m) => Ok(m),
        _ => Err(parse_error("$", "object expected")),
    }
}

pub(crate) fn read_header(obj: &Map<String, Value>) -> Result<(Group, OrientationChar)> {
    let version = field(obj, "schema_version", "$")?;
    if version.as_str() != Some(SCHEMA_VERSION) {
        return Err(parse_error(
            "$.schema_version",
            format!("unsupported version {version}, expected {SCHEMA_VERSION:?}"),
        ));
    }
    let descriptor: GroupDescriptor = serde_json::from_value(field(obj, "group", "$")?.clone())
        .map_err(|e| parse_error("$.group", e.to_string()))?;
    let group = descriptor
        .to_group()
        .map_err(|e| parse_error("$.group", e.to_string()))?;
    let signs = read_array(field(obj, "w", "$")?, "$.w")?
        .iter()
        .enumerate()
        .map(|(i, v)| match v.as_i64() {
            Some(1) => Ok(1i8),
            Some(-1) => Ok(-1i8),
            _ => Err(parse_error(&format!("$.w[{i}]"), "expected 1 or -1")),
        })
        .collect::<Result<Vec<_>>>()?;
    let w = OrientationChar::new(&group, &signs).map_err(|e| parse_error("$.w", e.to_string()))?;
    Ok((group, w))
}

pub(crate) fn header_values(group: &Group, w: &OrientationChar) -> Map<String, Value> {
    let mut m = Map::new();
    m.insert("schema_version".into(), json!(SCHEMA_VERSION));
    m.insert(
        "group".into(),
        serde_json::to_value(GroupDescriptor::of(group)).expect("descriptor serializes"),
    );
    m.insert("w".into(), json!(w.signs()));
    m
}

fn read_element(v: &Value, group: &Group, path: &str) -> Result<RingElement> {
    let mut terms = Vec::new();
    for (t, term) in read_array(v, path)?.iter().enumerate() {
        let tp = format!("{path}[{t}]");
        let pair = read_array(term, &tp)?;
        if pair.len() != 2 {
            return Err(parse_error(&tp, "term must be [coefficient, exponents]"));
        }
        let c = read_bigint(&pair[0], &format!("{tp}[0]"))?;
        let ep = format!("{tp}[1]");
        let exps = read_array(&pair[1], &ep)?
            .iter()
            .enumerate()
            .map(|(k, e)| read_i64(e, &format!("{ep}[{k}]")))
            .collect::<Result<Vec<_>>>()?;
        if exps.len() != group.num_generators() {
            return Err(parse_error(
                &ep,
                format!("{} exponents for {} generators", exps.len(), group.num_generators()),
            ));
        }
        terms.push((c, exps));
    }
    RingElement::from_terms(group, terms).map_err(|e| parse_error(path, e.to_string()))
}

fn element_value(x: &RingElement) -> Value {
    Value::Array(
        x.terms()
            .map(|(g, c)| json!([coefficient_value(c), g]))
            .collect(),
    )
}

/// Parses an integer matrix written as a JSON array of rows.
pub fn parse_matrix(text: &str) -> Result<IntMatrix> {
    let value: Value = serde_json::from_str(text).map_err(|e| {
        parse_error(&format!("line {} column {}", e.line(), e.column()), e.to_string())
    })?;
    let rows = read_array(&value, "$")?;
    let mut entries = Vec::new();
    let mut cols = None;
    for (i, row) in rows.iter().enumerate() {
        let path = format!("$[{i}]");
        let row = read_array(row, &path)?;
        if *cols.get_or_insert(row.len()) != row.len() {
            return Err(parse_error(&path, "rows have different lengths"));
        }
        for (j, x) in row.iter().enumerate() {
            entries.push(read_bigint(x, &format!("{path}[{j}]"))?);
        }
    }
    IntMatrix::from_entries(rows.len(), cols.unwrap_or(0), entries)
}

/// Parses a complex document and validates `d² = 0`.
pub fn parse_complex(text: &str) -> Result<LambdaComplex> {
    let obj = read_text(text)?;
    let (group, w) = read_header(&obj)?;
    let ranks = read_array(field(&obj, "ranks", "$")?, "$.ranks")?
        .iter()
        .enumerate()
        .map(|(i, v)| read_usize(v, &format!("$.ranks[{i}]")))
        .collect::<Result<Vec<_>>>()?;
    if ranks.is_empty() {
        return Err(parse_error("$.ranks", "at least one rank is required"));
    }
    let bds = read_array(field(&obj, "boundaries", "$")?, "$.boundaries")?;
    if bds.len() + 1 != ranks.len() {
        return Err(parse_error(
            "$.boundaries",
            format!("{} boundaries for {} ranks", bds.len(), ranks.len()),
        ));
    }
    let mut boundaries = Vec::with_capacity(bds.len());
    for (i, b) in bds.iter().enumerate() {
        let path = format!("$.boundaries[{i}]");
        let rows = read_array(b, &path)?;
        if rows.len() != ranks[i] {
            return Err(parse_error(
                &path,
                format!("d_{} needs {} rows, found {}", i + 1, ranks[i], rows.len()),
            ));
        }
        let mut m = LambdaMatrix::zeros(ranks[i], ranks[i + 1]);
        for (r, row) in rows.iter().enumerate() {
            let rp = format!("{path}[{r}]");
            let entries = read_array(row, &rp)?;
            if entries.len() != ranks[i + 1] {
                return Err(parse_error(
                    &rp,
                    format!("d_{} needs {} columns, found {}", i + 1, ranks[i + 1], entries.len()),
                ));
            }
            for (c, e) in entries.iter().enumerate() {
                m.set(r, c, read_element(e, &group, &format!("{rp}[{c}]"))?);
            }
        }
        boundaries.push(m);
    }
    LambdaComplex::new(group, w, ranks, boundaries)
}

/// Canonical text: sorted keys and terms, no zero coefficients, trailing
/// newline. Large coefficients are written as strings.
pub fn emit_complex(c: &LambdaComplex) -> String {
    let mut m = header_values(c.group(), c.w());
    m.insert("ranks".into(), json!(c.ranks()));
    let boundaries = c
        .boundaries()
        .iter()
        .map(|d| {
            Value::Array(
                (0..d.rows())
                    .map(|i| Value::Array((0..d.cols()).map(|j| element_value(d.get(i, j))).collect()))
                    .collect(),
            )
        })
        .collect();
    m.insert("boundaries".into(), Value::Array(boundaries));
    let mut s = serde_json::to_string_pretty(&Value::Object(m)).expect("json");
    s.push('\n');
    s
}

impl ComplexDocument {
    pub fn from_complex(c: &LambdaComplex) -> Self {
        ComplexDocument {
            schema_version: SCHEMA_VERSION.to_string(),
            group: GroupDescriptor::of(c.group()),
            w: c.w().signs().to_vec(),
            ranks: c.ranks().to_vec(),
            boundaries: c.boundaries().to_vec(),
        }
    }

    pub fn to_complex(&self) -> Result<LambdaComplex> {
        let group = self.group.to_group()?;
        let w = OrientationChar::new(&group, &self.w)?;
        LambdaComplex::new(group, w, self.ranks.clone(), self.boundaries.clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::manifolds::{lens_complex, torus4_complex, LensSpace};

    #[test]
    fn round_trip() {
        for c in [lens_complex(&LensSpace::new(5, 2).unwrap()), torus4_complex()] {
            let text = emit_complex(&c);
            let back = parse_complex(&text).unwrap();
            assert_eq!(back, c);
            assert_eq!(emit_complex(&back), text);
            assert_eq!(ComplexDocument::from_complex(&c).to_complex().unwrap(), c);
        }
    }

    #[test]
    fn located_errors() {
        let bad_group = r#"{"schema_version":"1.0","group":{"type":"dihedral","order":3},"w":[],"ranks":[1],"boundaries":[]}"#;
        assert!(matches!(parse_complex(bad_group), Err(Error::Parse { path, .. }) if path == "$.group"));
        let bad_term = r#"{"schema_version":"1.0","group":{"type":"cyclic","order":3},"w":[1],"ranks":[1,1],"boundaries":[[[[[1,[0,1]]]]]]}"#;
        assert!(matches!(parse_complex(bad_term), Err(Error::Parse { path, .. }) if path == "$.boundaries[0][0][0][0][1]"));
        let syntax = "{\n  \"ranks\": [1,\n}";
        assert!(matches!(parse_complex(syntax), Err(Error::Parse { path, .. }) if path.starts_with("line 3")));
    }

    #[test]
    fn big_coefficients_as_strings() {
        let text = r#"{"schema_version":"1.0","group":{"type":"trivial"},"w":[],"ranks":[1,1],"boundaries":[[[[["123456789012345678901234567890", []]]]]]}"#;
        let c = parse_complex(text).unwrap();
        let emitted = emit_complex(&c);
        assert!(emitted.contains("\"123456789012345678901234567890\""));
        assert_eq!(parse_complex(&emitted).unwrap(), c);
    }
}
