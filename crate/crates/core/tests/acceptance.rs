//! Acceptance criteria. Each prints one PASS/FAIL line; every comparison is
//! exact and the runtime limits are wall-clock on the test build.

mod common;

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use fourfold_core::classifier::{bordism_group, hopf_check, lens_family_sweep};
use fourfold_core::extensions::{
    baer_sum, em_torsion, em_torsion_closed_form, ext_vanishing_check, pi2_extension, recover_m, EmFamily,
    ExtClass, Extension, PsiChase,
};
use fourfold_core::group_homology::{
    bar_homology_oracle_with_budget, group_homology, periodic_resolution, resolution_for, HomologyConfig,
};
use fourfold_core::group_ring::{Group, OrientationChar};
use fourfold_core::linalg::{kernel_basis, smith_normal_form, solve_integer, AbelianInvariants, IntMatrix};
use fourfold_core::manifolds::{
    cp2_complex, cyclic_presentation_complex, klein_four_presentation_complex, lens_cross_circle, rp4_complex,
    s4_complex, torus4_complex, wedge_sphere, LensSpace, SquareWitness,
};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const BAR_BUDGET: u128 = 100_000;

type Outcome = Result<String, String>;

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn big(v: i64) -> BigInt {
    BigInt::from(v)
}

fn characters(group: &Group) -> Vec<OrientationChar> {
    let k = group.num_generators();
    (0..1u32 << k)
        .filter_map(|mask| {
            let signs: Vec<i8> = (0..k).map(|i| if mask >> i & 1 == 1 { -1 } else { 1 }).collect();
            OrientationChar::new(group, &signs).ok()
        })
        .collect()
}

fn oracle_agreement() -> Outcome {
    let groups = [
        Group::cyclic(2).unwrap(),
        Group::cyclic(3).unwrap(),
        Group::cyclic(4).unwrap(),
        Group::product(&[2, 2]).unwrap(),
    ];
    let mut cases = 0;
    for g in &groups {
        for w in characters(g) {
            for n in 0..=4 {
                let fast = group_homology(g, &w, n).map_err(|e| e.to_string())?;
                let bar = bar_homology_oracle_with_budget(g, &w, n, BAR_BUDGET).map_err(|e| e.to_string())?;
                check(fast == bar, || format!("{g} w={:?} n={n}: {fast} vs {bar}", w.signs()))?;
                cases += 1;
            }
        }
    }
    Ok(format!("{cases} (group, character, degree) cases"))
}

fn cyclic_values() -> Outcome {
    for p in [2u64, 3, 5, 7] {
        let g = Group::cyclic(p).unwrap();
        let t = OrientationChar::trivial(&g);
        for n in 1..=4 {
            let h = group_homology(&g, &t, n).map_err(|e| e.to_string())?;
            let expected = if n % 2 == 1 { AbelianInvariants::cyclic(p) } else { AbelianInvariants::trivial() };
            check(h == expected, || format!("H_{n}(Z/{p}) = {h}"))?;
        }
    }
    Ok("p in {2,3,5,7}, n = 1..4".into())
}

fn lens_family() -> Outcome {
    let verdicts = lens_family_sweep(30).map_err(|e| e.to_string())?;
    for v in &verdicts {
        let answers = [
            v.kreck.equivalent,
            v.fundamental_class.is_some(),
            v.homotopy.is_some(),
            v.linking.is_some(),
        ];
        check(answers.iter().all(|&a| a == v.equivalent), || format!("{v:?}"))?;
    }
    let find = |p, q, q2| verdicts.iter().find(|v| (v.p, v.q, v.q_prime) == (p, q, q2)).unwrap();
    check(!find(5, 1, 2).equivalent, || "L(5,1) and L(5,2) reported equivalent".into())?;
    let seven = find(7, 1, 2);
    check(
        seven.equivalent && seven.homotopy == Some(SquareWitness { r: 3, sign: 1 }),
        || format!("(7,1,2): {seven:?}"),
    )?;
    Ok(format!("{} pairs with p <= 30", verdicts.len()))
}

fn bordism() -> Outcome {
    let one = Group::trivial();
    let c2 = Group::cyclic(2).unwrap();
    let z = AbelianInvariants::free(1);
    let zero = AbelianInvariants::trivial();
    let two = AbelianInvariants::cyclic(2);
    let mut cases = vec![(one.clone(), OrientationChar::trivial(&one), z.clone(), zero.clone())];
    for p in [2, 3, 5, 7] {
        let g = Group::cyclic(p).unwrap();
        cases.push((g.clone(), OrientationChar::trivial(&g), z.clone(), zero.clone()));
    }
    cases.push((c2.clone(), OrientationChar::new(&c2, &[-1]).unwrap(), two.clone(), two));
    for (g, w, stable, h4) in &cases {
        let b = bordism_group(g, w).map_err(|e| e.to_string())?;
        check(&b.stable == stable && &b.h4 == h4, || format!("{g} w={:?}: {b}", w.signs()))?;
    }
    Ok(format!("{} 1-types", cases.len()))
}

fn em_round_trip() -> Outcome {
    let d3 = torus4_complex().augmented_boundary(3);
    let fam = EmFamily::from_d3(&d3);
    for m in -8i64..=8 {
        let inv = em_torsion(&d3, &big(m));
        let got = recover_m(&inv, &fam).map_err(|e| e.to_string())?;
        let ambiguous = got == BTreeSet::from([big(0), big(1)]);
        check(ambiguous == inv.torsion.is_empty(), || format!("m={m}: {got:?} for {inv}"))?;
        if m.abs() >= 2 {
            check(got == BTreeSet::from([big(m.abs())]), || format!("m={m}: {got:?}"))?;
        }
    }
    Ok("T4, |m| <= 8".into())
}

fn em_closed_form() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0xacce97);
    let n = 250;
    for _ in 0..n {
        let (r, c) = (rng.gen_range(1..=6), rng.gen_range(1..=6));
        let a = common::random_matrix(&mut rng, r, c, 9);
        let m = big(rng.gen_range(-12..=12));
        let (x, y) = (em_torsion(&a, &m), em_torsion_closed_form(&a, &m));
        check(x == y, || format!("{a:?} m={m}: {x} vs {y}"))?;
    }
    Ok(format!("{n} random instances"))
}

fn baer_law() -> Outcome {
    let mut checked = 0;
    for p in [2u64, 3, 5, 7] {
        let c = periodic_resolution(p, 4).map_err(|e| e.to_string())?.complex().clone();
        let x = pi2_extension(&c).map_err(|e| e.to_string())?;
        check(!x.is_trivial(), || format!("Z/{p}: the test class is trivial"))?;
        let ctx = x.context().clone();
        let class = |m: i64| -> Result<ExtClass, String> {
            let e = Extension::pushout(&x, &big(m)).map_err(|e| e.to_string())?;
            check(e.verify(&ctx).map_err(|e| e.to_string())?, || format!("E_{m} is not exact"))?;
            e.class_in(ctx.clone()).map_err(|e| e.to_string())
        };
        for m in -3..=3 {
            for n in -3..=3 {
                let sum = baer_sum(&class(m)?, &class(n)?).map_err(|e| e.to_string())?;
                check(sum.equals(&class(m + n)?).map_err(|e| e.to_string())?, || {
                    format!("Z/{p}: class({m}) + class({n}) != class({})", m + n)
                })?;
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} pairs over Z/2, Z/3, Z/5, Z/7"))
}

fn psi_classes(group: &Group, k: &fourfold_core::LambdaComplex) -> Result<Vec<ExtClass>, String> {
    let w = OrientationChar::trivial(group);
    let r = resolution_for(group, 5, &HomologyConfig::default()).map_err(|e| e.to_string())?;
    let chase = PsiChase::new(&r, k, &w).map_err(|e| e.to_string())?;
    let cycles = kernel_basis(&r.complex().boundary(4).augment(&w));
    let mut classes: Vec<ExtClass> = Vec::new();
    // H_4 has exponent 2 in every group tested, so 0/1 combinations reach all of it
    for mask in 0..1u32 << cycles.cols() {
        let mut z = vec![BigInt::zero(); cycles.rows()];
        for j in (0..cycles.cols()).filter(|j| mask >> j & 1 == 1) {
            for (zi, cj) in z.iter_mut().zip(cycles.column(j)) {
                *zi += cj;
            }
        }
        let e = chase.chase(&z).map_err(|e| e.to_string())?;
        let mut seen = false;
        for c in &classes {
            if c.equals(&e).map_err(|e| e.to_string())? {
                seen = true;
                break;
            }
        }
        if !seen {
            classes.push(e);
        }
    }
    Ok(classes)
}

fn psi_consistency() -> Outcome {
    let v4 = Group::product(&[2, 2]).unwrap();
    let h4 = bar_homology_oracle_with_budget(&v4, &OrientationChar::trivial(&v4), 4, BAR_BUDGET)
        .map_err(|e| e.to_string())?;
    let classes = psi_classes(&v4, &klein_four_presentation_complex())?;
    let order = h4.order().ok_or("H_4 is infinite")?;
    check(BigInt::from(classes.len()) == order && order == big(4), || {
        format!("{} classes, |H_4| = {order}", classes.len())
    })?;
    for p in 2..=7u64 {
        let g = Group::cyclic(p).unwrap();
        let k = cyclic_presentation_complex(p).map_err(|e| e.to_string())?;
        let classes = psi_classes(&g, &k)?;
        check(classes.iter().all(|c| c.is_trivial()), || format!("Z/{p}: nontrivial class"))?;
    }
    Ok("4 classes on Z/2 x Z/2; trivial on Z/p, p <= 7".into())
}

fn ext_vanishing() -> Outcome {
    let mut complexes = vec![("Z/2 x Z/2".to_string(), klein_four_presentation_complex())];
    for p in 2..=7 {
        complexes.push((format!("Z/{p}"), cyclic_presentation_complex(p).unwrap()));
    }
    let mut n = 0;
    for (name, k) in complexes {
        let once = wedge_sphere(&k).map_err(|e| e.to_string())?;
        let twice = wedge_sphere(&once).map_err(|e| e.to_string())?;
        for (wedges, c) in [(0, k), (1, once), (2, twice)] {
            let ok = ext_vanishing_check(&c).map_err(|e| e.to_string())?;
            check(ok, || format!("{name} with {wedges} spheres"))?;
            n += 1;
        }
    }
    Ok(format!("{n} 2-complexes"))
}

fn duality_and_hopf() -> Outcome {
    let mut manifolds = vec![
        ("S4".to_string(), s4_complex()),
        ("CP2".to_string(), cp2_complex()),
        ("RP4".to_string(), rp4_complex()),
        ("T4".to_string(), torus4_complex()),
    ];
    for (p, q) in [(2, 1), (3, 1), (5, 1), (5, 2), (7, 3), (12, 5)] {
        manifolds.push((format!("L({p},{q}) x S1"), lens_cross_circle(&LensSpace::new(p, q).unwrap())));
    }
    for (name, c) in &manifolds {
        let h = c.homology_zw_all().map_err(|e| e.to_string())?;
        let d = c.twisted_dual().homology_zw_all().map_err(|e| e.to_string())?;
        check(h == d, || format!("{name}: duality fails"))?;
    }
    for (name, c) in manifolds.iter().take(3) {
        let r = hopf_check(c).map_err(|e| e.to_string())?;
        check(r.exact() && r.c4_surjective, || format!("{name}: {r:?}"))?;
    }
    let rp4 = hopf_check(&rp4_complex()).map_err(|e| e.to_string())?;
    check(rp4.group("H4(pi)") == Some(&AbelianInvariants::cyclic(2)), || format!("{rp4:?}"))?;
    Ok(format!("duality on {} complexes; Hopf on S4, CP2, RP4", manifolds.len()))
}

fn linear_algebra() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x11a9);
    for _ in 0..1000 {
        let (r, c) = (rng.gen_range(1..=7), rng.gen_range(1..=7));
        let a = common::random_matrix(&mut rng, r, c, 20);
        let s = smith_normal_form(&a);
        let uav = s.u.mul(&a).and_then(|x| x.mul(&s.v)).map_err(|e| e.to_string())?;
        check(uav == s.d, || format!("U A V != D for {a:?}"))?;
        let unimodular = |m: &IntMatrix| m.determinant().map(|d| d.abs().is_one()).unwrap_or(false);
        check(unimodular(&s.u) && unimodular(&s.v), || format!("non-unimodular transform for {a:?}"))?;
        check(s.diag.windows(2).all(|w| (&w[1] % &w[0]).is_zero()), || format!("divisibility fails for {a:?}"))?;
        check(s.diag.iter().all(|d| d.is_positive()), || format!("nonpositive factor for {a:?}"))?;
        for i in 0..r {
            for j in 0..c {
                let expected = s.diag.get(i).filter(|_| i == j).cloned().unwrap_or_default();
                check(s.d[(i, j)] == expected, || format!("D is not diagonal for {a:?}"))?;
            }
        }
    }
    for _ in 0..300 {
        let (r, c) = (rng.gen_range(1..=3), rng.gen_range(1..=3));
        let a = common::random_matrix(&mut rng, r, c, 3);
        let b: Vec<i64> = (0..r).map(|_| rng.gen_range(-6..=6)).collect();
        let rows: Vec<Vec<i64>> = common::to_i128(&a).iter().map(|r| r.iter().map(|&x| x as i64).collect()).collect();
        let bb: Vec<BigInt> = b.iter().map(|&x| big(x)).collect();
        match solve_integer(&a, &bb).map_err(|e| e.to_string())? {
            Some(x) => check(a.mul_vec(&x).map_err(|e| e.to_string())? == bb, || format!("wrong solution for {a:?}"))?,
            None => check(common::brute_force_solve(&rows, &b, c, 10).is_none(), || {
                format!("missed solution for {a:?} {b:?}")
            })?,
        }
    }
    Ok("1000 Smith forms, 300 solves against exhaustive search".into())
}

struct Criterion {
    id: u8,
    name: &'static str,
    limit: Option<Duration>,
    run: fn() -> Outcome,
}

fn main() -> ExitCode {
    let criteria = [
        Criterion { id: 1, name: "group homology matches the bar resolution", limit: Some(Duration::from_secs(60)), run: oracle_agreement },
        Criterion { id: 2, name: "homology of cyclic groups", limit: None, run: cyclic_values },
        Criterion { id: 3, name: "lens-family criteria agree for p <= 30", limit: Some(Duration::from_secs(30)), run: lens_family },
        Criterion { id: 4, name: "bordism groups of small 1-types", limit: None, run: bordism },
        Criterion { id: 5, name: "E_m round trip on T4", limit: None, run: em_round_trip },
        Criterion { id: 6, name: "E_m closed form matches presentation", limit: None, run: em_closed_form },
        Criterion { id: 7, name: "Baer sum of E_m classes", limit: None, run: baer_law },
        Criterion { id: 8, name: "psi image against H_4", limit: None, run: psi_consistency },
        Criterion { id: 9, name: "Ext vanishing on presentation complexes", limit: None, run: ext_vanishing },
        Criterion { id: 10, name: "duality and Hopf sequence", limit: None, run: duality_and_hopf },
        Criterion { id: 11, name: "Smith form and solver properties", limit: Some(Duration::from_secs(60)), run: linear_algebra },
    ];
    let mut failed = 0;
    for c in &criteria {
        let start = Instant::now();
        let outcome = (c.run)();
        let elapsed = start.elapsed();
        let outcome = match (outcome, c.limit) {
            (Ok(_), Some(limit)) if elapsed > limit => Err(format!("took {elapsed:.1?}, limit {limit:?}")),
            (o, _) => o,
        };
        let limit = c.limit.map(|l| format!(", limit {}s", l.as_secs())).unwrap_or_default();
        match outcome {
            Ok(detail) => println!("PASS criterion {:>2}: {} [exact; {detail}; {elapsed:.2?}{limit}]", c.id, c.name),
            Err(why) => {
                failed += 1;
                println!("FAIL criterion {:>2}: {} [exact; {why}; {elapsed:.2?}{limit}]", c.id, c.name);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
