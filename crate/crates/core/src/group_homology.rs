//! `H_n(π; Z^w)` from products of periodic resolutions, with the normalized
//! bar resolution as an independent check.

use std::collections::HashMap;

use num_bigint::BigInt;

use crate::chain_complex::LambdaComplex;
use crate::error::{Error, Result};
use crate::group_ring::{Element, Group, LambdaMatrix, OrientationChar, RingElement};
use crate::linalg::{homology_invariants, AbelianInvariants, IntMatrix};

pub const DEFAULT_DEGREE_BOUND: usize = 5;
pub const DEFAULT_MAX_FACTORS: usize = 3;
pub const DEFAULT_BAR_BUDGET: u128 = 100_000;

/// Reads `FOURFOLD_BUDGET`, falling back to the default bar-resolution budget.
pub fn budget_from_env() -> u128 {
    std::env::var("FOURFOLD_BUDGET")
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .unwrap_or(DEFAULT_BAR_BUDGET)
}

/// Limits for resolution-based computations.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct HomologyConfig {
    pub degree_bound: usize,
    pub max_factors: usize,
}

impl Default for HomologyConfig {
    fn default() -> Self {
        HomologyConfig {
            degree_bound: DEFAULT_DEGREE_BOUND,
            max_factors: DEFAULT_MAX_FACTORS,
        }
    }
}

/// A free resolution of `Z` over `Λ`, truncated at degree `bound`.
/// The character of the inner complex is trivial; `w` enters at augmentation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Resolution {
    complex: LambdaComplex,
}

impl Resolution {
    pub fn complex(&self) -> &LambdaComplex {
        &self.complex
    }

    pub fn group(&self) -> &Group {
        self.complex.group()
    }

    pub fn bound(&self) -> usize {
        self.complex.top_degree()
    }

    /// The resolution of `Z` over the trivial group: `Z` in degree 0.
    pub fn trivial(bound: usize) -> Self {
        let group = Group::trivial();
        let mut ranks = vec![1];
        ranks.resize(bound + 1, 0);
        let boundaries = (1..=bound)
            .map(|i| LambdaMatrix::zeros(ranks[i - 1], ranks[i]))
            .collect();
        Resolution {
            complex: LambdaComplex::new(group.clone(), OrientationChar::trivial(&group), ranks, boundaries)
                .expect("zero complex"),
        }
    }

    /// The complex with `w` applied, for `Z^w` coefficients.
    pub fn with_character(&self, w: &OrientationChar) -> Result<LambdaComplex> {
        if w.signs().len() != self.group().num_generators() {
            return Err(Error::InvalidCharacter(format!(
                "{} values for {}",
                w.signs().len(),
                self.group()
            )));
        }
        self.complex.with_character(w.clone())
    }

    /// Checks `H_0 = Z` and `H_i = 0` for `0 < i < bound` on the expanded
    /// complex over `Z`. Finite groups only.
    pub fn verify_exact(&self) -> Result<bool> {
        let c = &self.complex;
        c.group().require_finite()?;
        for i in 0..c.top_degree() {
            let h = homology_invariants(
                c.rank(i) * c.group().order().unwrap() as usize,
                &c.expanded_boundary(i)?,
                &c.expanded_boundary(i + 1)?,
            )?;
            let expected = if i == 0 {
                AbelianInvariants::free(1)
            } else {
                AbelianInvariants::trivial()
            };
            if h != expected {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// `… → Λ --N--> Λ --(t-1)--> Λ` over `Z[Z/p]`.
pub fn periodic_resolution(p: u64, bound: usize) -> Result<Resolution> {
    let group = Group::cyclic(p)?;
    let t_minus_1 = RingElement::generator(&group, 0) - RingElement::one(&group);
    let norm = RingElement::norm(&group, 0);
    let boundaries = (1..=bound)
        .map(|i| LambdaMatrix::scalar(if i % 2 == 1 { t_minus_1.clone() } else { norm.clone() }))
        .collect();
    Ok(Resolution {
        complex: LambdaComplex::new(
            group.clone(),
            OrientationChar::trivial(&group),
            vec![1; bound + 1],
            boundaries,
        )?,
    })
}

/// Resolution over `π_1 × π_2` by the tensor product, truncated at the
/// smaller bound.
pub fn tensor_resolution(r1: &Resolution, r2: &Resolution) -> Result<Resolution> {
    let bound = r1.bound().min(r2.bound());
    let complex = r1.complex.tensor(&r2.complex, bound)?;
    Ok(Resolution {
        complex: pad_to(complex, bound),
    })
}

fn pad_to(c: LambdaComplex, bound: usize) -> LambdaComplex {
    if c.top_degree() >= bound {
        return c;
    }
    let mut ranks = c.ranks().to_vec();
    let mut bds = c.boundaries().to_vec();
    while ranks.len() <= bound {
        bds.push(LambdaMatrix::zeros(*ranks.last().unwrap(), 0));
        ranks.push(0);
    }
    LambdaComplex::new(c.group().clone(), c.w().clone(), ranks, bds).expect("padding keeps d² = 0")
}

/// Resolution for a product of cyclic groups and Laurent generators, with
/// factors in the order of the group's generators.
pub fn resolution_for(group: &Group, bound: usize, config: &HomologyConfig) -> Result<Resolution> {
    if group.orders().len() > config.max_factors {
        return Err(Error::UnsupportedGroup(format!(
            "{group} has {} cyclic factors; at most {} are supported",
            group.orders().len(),
            config.max_factors
        )));
    }
    let mut r = Resolution::trivial(bound);
    for &o in group.orders() {
        r = tensor_resolution(&r, &periodic_resolution(o, bound)?)?;
    }
    for _ in 0..group.free_rank() {
        let circle = Resolution {
            complex: pad_to(LambdaComplex::circle(1)?, bound),
        };
        r = tensor_resolution(&r, &circle)?;
    }
    debug_assert_eq!(r.group(), group);
    Ok(r)
}

/// `H_n(π; Z^w)` with the default limits.
pub fn group_homology(group: &Group, w: &OrientationChar, n: usize) -> Result<AbelianInvariants> {
    group_homology_with(group, w, n, &HomologyConfig::default())
}

pub fn group_homology_with(
    group: &Group,
    w: &OrientationChar,
    n: usize,
    config: &HomologyConfig,
) -> Result<AbelianInvariants> {
    if n > config.degree_bound {
        return Err(Error::DegreeOutOfRange {
            degree: n,
            max: config.degree_bound,
        });
    }
    let r = resolution_for(group, n + 1, config)?;
    r.with_character(w)?.homology_zw(n)
}

/// `H_4(π × Z; Z^w) = H_4(π; Z^w) ⊕ H_3(π; Z^w)` for `w` trivial on the `Z`
/// factor. `w` has one value per generator of `π` followed by the value on
/// the `Z` generator.
#[allow(non_snake_case)]
pub fn h4_of_pi_cross_Z(group: &Group, w: &OrientationChar) -> Result<AbelianInvariants> {
    if !group.is_finite() {
        return Err(Error::InfiniteGroup(group.to_string()));
    }
    let k = group.num_generators();
    if w.signs().len() != k + 1 {
        return Err(Error::InvalidCharacter(format!(
            "{} values for {group} × ℤ",
            w.signs().len()
        )));
    }
    if w.signs()[k] != 1 {
        return Err(Error::UnsupportedCharacter(
            "orientation character is nontrivial on the ℤ factor".into(),
        ));
    }
    let base = OrientationChar::new(group, &w.signs()[..k])?;
    Ok(group_homology(group, &base, 4)?.direct_sum(&group_homology(group, &base, 3)?))
}

/// Simplices `[g_1|…|g_n]` of the bar resolution.
fn bar_cells(elements: &[Element], n: usize, normalized: bool) -> Vec<Vec<usize>> {
    let start = usize::from(normalized);
    let k = elements.len();
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        let mut next = Vec::with_capacity(out.len() * (k - start));
        for cell in &out {
            for g in start..k {
                let mut c = cell.clone();
                c.push(g);
                next.push(c);
            }
        }
        out = next;
    }
    out
}

/// Boundary `Z^w ⊗ B_n → Z^w ⊗ B_{n-1}` of the bar resolution.
fn bar_boundary(group: &Group, w: &OrientationChar, elements: &[Element], n: usize, normalized: bool) -> IntMatrix {
    let source = bar_cells(elements, n, normalized);
    let target = bar_cells(elements, n - 1, normalized);
    let index: HashMap<&Vec<usize>, usize> = target.iter().enumerate().map(|(i, c)| (c, i)).collect();
    let mut d = IntMatrix::zeros(target.len(), source.len());
    let mut add = |cell: Vec<usize>, col: usize, c: i64| {
        // normalized: cells containing the identity (index 0) vanish
        if normalized && cell.contains(&0) {
            return;
        }
        d[(index[&cell], col)] += BigInt::from(c);
    };
    for (col, cell) in source.iter().enumerate() {
        add(cell[1..].to_vec(), col, w.value(&elements[cell[0]]));
        for i in 0..n - 1 {
            let prod = group.mul(&elements[cell[i]], &elements[cell[i + 1]]);
            let mut face = cell[..i].to_vec();
            face.push(group.index_of(&prod));
            face.extend_from_slice(&cell[i + 2..]);
            add(face, col, if (i + 1).is_multiple_of(2) { 1 } else { -1 });
        }
        let sign = if n.is_multiple_of(2) { 1 } else { -1 };
        add(cell[..n - 1].to_vec(), col, sign);
    }
    d
}

fn bar_homology(
    group: &Group,
    w: &OrientationChar,
    n: usize,
    budget: u128,
    normalized: bool,
) -> Result<AbelianInvariants> {
    let order = group.require_finite()? as u128;
    let required = order.checked_pow(n as u32 + 1).unwrap_or(u128::MAX);
    if required > budget {
        return Err(Error::BudgetExceeded { required, budget });
    }
    if w.signs().len() != group.num_generators() {
        return Err(Error::InvalidCharacter(format!("{} values for {group}", w.signs().len())));
    }
    let elements = group.elements()?;
    let chain_rank = bar_cells(&elements, n, normalized).len();
    let outgoing = if n == 0 {
        IntMatrix::zeros(0, chain_rank)
    } else {
        bar_boundary(group, w, &elements, n, normalized)
    };
    let incoming = bar_boundary(group, w, &elements, n + 1, normalized);
    homology_invariants(chain_rank, &outgoing, &incoming)
}

/// `H_n(π; Z^w)` from the normalized bar resolution, within the budget read
/// from `FOURFOLD_BUDGET`.
pub fn bar_homology_oracle(group: &Group, w: &OrientationChar, n: usize) -> Result<AbelianInvariants> {
    bar_homology(group, w, n, budget_from_env(), true)
}

pub fn bar_homology_oracle_with_budget(
    group: &Group,
    w: &OrientationChar,
    n: usize,
    budget: u128,
) -> Result<AbelianInvariants> {
    bar_homology(group, w, n, budget, true)
}

/// Same as the oracle without dropping degenerate simplices.
pub fn bar_homology_unnormalized(
    group: &Group,
    w: &OrientationChar,
    n: usize,
    budget: u128,
) -> Result<AbelianInvariants> {
    bar_homology(group, w, n, budget, false)
}
