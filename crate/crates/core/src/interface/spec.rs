//! Command-line specs: `trivial`, `cyclic:5`, `product:2,2`, `laurent:5:1`
//! (finite orders, then the free rank; `laurent::4` is `Z^4`); characters
//! `trivial`, `sign` or a list such as `-1,1`; invariants such as `3,3` or
//! `Z^2+3,6`.

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::group_ring::{Group, OrientationChar};
use crate::linalg::AbelianInvariants;

fn spec_error(what: &str, s: &str) -> Error {
    Error::Parse {
        path: what.to_string(),
        message: format!("cannot parse {s:?}"),
    }
}

fn orders(s: &str, what: &str) -> Result<Vec<u64>> {
    if s.is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|x| x.trim().parse().map_err(|_| spec_error(what, s)))
        .collect()
}

pub fn parse_group_spec(s: &str) -> Result<Group> {
    let parts: Vec<&str> = s.trim().split(':').collect();
    match parts.as_slice() {
        ["trivial"] => Ok(Group::trivial()),
        ["cyclic", n] => Group::cyclic(n.parse().map_err(|_| spec_error("--group", s))?),
        ["product", os] => Group::product(&orders(os, "--group")?),
        ["laurent", os, rank] => {
            let rank = rank.parse().map_err(|_| spec_error("--group", s))?;
            Ok(Group::laurent(&Group::product(&orders(os, "--group")?)?, rank))
        }
        _ => Err(spec_error("--group", s)),
    }
}

/// `sign` is `-1` on every generator.
pub fn parse_w_spec(s: &str, group: &Group) -> Result<OrientationChar> {
    match s.trim() {
        "trivial" => Ok(OrientationChar::trivial(group)),
        "sign" => OrientationChar::new(group, &vec![-1; group.num_generators()]),
        list => {
            let signs = list
                .split(',')
                .map(|x| match x.trim() {
                    "1" | "+1" => Ok(1i8),
                    "-1" => Ok(-1i8),
                    _ => Err(spec_error("--w", s)),
                })
                .collect::<Result<Vec<_>>>()?;
            OrientationChar::new(group, &signs)
        }
    }
}

pub fn parse_invariants_spec(s: &str) -> Result<AbelianInvariants> {
    let s = s.trim();
    let (free, tors) = match s.split_once('+') {
        Some((f, t)) => (Some(f), t),
        None if s.starts_with('Z') => (Some(s), ""),
        None => (None, s),
    };
    let free_rank = match free {
        None => 0,
        Some(f) => f
            .trim()
            .strip_prefix("Z^")
            .and_then(|r| r.parse().ok())
            .or_else(|| (f.trim() == "Z").then_some(1))
            .ok_or_else(|| spec_error("invariants", s))?,
    };
    let orders = if tors.is_empty() || tors == "0" {
        Vec::new()
    } else {
        tors.split(',')
            .map(|x| x.trim().parse::<BigInt>().map_err(|_| spec_error("invariants", s)))
            .collect::<Result<Vec<_>>>()?
    };
    Ok(AbelianInvariants::from_cyclic_orders(free_rank, orders))
}
