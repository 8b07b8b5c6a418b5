use std::collections::BTreeSet;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde_json::{json, Value};

use fourfold_core::classifier::{
    bordism_group, classify_aspherical, classify_lens_family, compare_aspherical, hopf_check,
    kreck_equivalent, AsphericalVerdict, ManifoldRecord,
};
use fourfold_core::extensions::{em_torsion, em_torsion_closed_form, pi2_extension, pi2_sequence, recover_m, EmFamily};
use fourfold_core::group_homology::{bar_homology_oracle_with_budget, budget_from_env, group_homology};
use fourfold_core::interface::{
    emit_complex, emit_record, parse_complex, parse_group_spec, parse_invariants_spec, parse_matrix,
    parse_record, parse_w_spec, SCHEMA_VERSION,
};
use fourfold_core::linalg::{cokernel_invariants, invariant_factors, rank};
use fourfold_core::manifolds::{
    cp2_complex, lens_complex, lens_cross_circle, lens_homotopy_equivalent, linking_form,
    linking_isometric, rp4_complex, s4_complex, torus4_complex, LensSpace, SquareWitness,
};
use fourfold_core::{AbelianInvariants, Error, LambdaComplex};

#[derive(Parser)]
#[command(name = "fourfold", version, about = "Exact invariants of 4-manifolds up to CP²-stable diffeomorphism")]
struct Cli {
    /// Print a machine-readable report.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Coefficients {
    Zw,
    Lambda,
}

#[derive(Clone, Copy, ValueEnum)]
enum Oracle {
    Bar,
}

#[derive(Subcommand)]
enum Command {
    /// Smith normal form of an integer matrix (JSON array of rows).
    Snf { file: PathBuf },
    /// Homology of a chain complex document.
    Homology {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "zw")]
        coeff: Coefficients,
    },
    /// H_n(π; Z^w) from a resolution.
    GroupHomology {
        #[arg(long)]
        group: String,
        #[arg(long, default_value = "trivial")]
        w: String,
        #[arg(long)]
        degree: usize,
        /// Cross-check against the bar resolution.
        #[arg(long, value_enum)]
        oracle: Option<Oracle>,
    },
    /// Homotopy equivalence of L(p,q) and L(p,q').
    LensClassify { p: i64, q1: i64, q2: i64 },
    /// Isometry up to sign of the linking forms of L(p,q) and L(p,q').
    LensLinking { p: i64, q1: i64, q2: i64 },
    /// Z^w ⊗ E_m for the augmented d_3 of a complex.
    EmTorsion {
        file: PathBuf,
        #[arg(allow_hyphen_values = true)]
        m: BigInt,
    },
    /// Candidate |m| from the invariants of Z^w ⊗ π_2, e.g. `3,3,3,3` or `Z^6+3,3`.
    RecoverM {
        file: PathBuf,
        #[arg(long)]
        invariants: String,
    },
    /// Extension class of π_2 of a 4-dimensional complex.
    ExtClass { file: PathBuf },
    /// Kreck's criterion on two manifold records.
    ClassifyKreck { a: PathBuf, b: PathBuf },
    /// All computed criteria for L(p,q) × S¹ and L(p,q') × S¹.
    ClassifyLens { p: i64, q1: i64, q2: i64 },
    /// Compare two manifolds over the aspherical group modelled by FILE.
    ClassifyAspherical {
        file: PathBuf,
        #[arg(long)]
        invariants_a: String,
        #[arg(long)]
        invariants_b: String,
        /// Whether π_2 of the first manifold is projective.
        #[arg(long)]
        projective_a: Option<bool>,
        #[arg(long)]
        projective_b: Option<bool>,
    },
    /// Ω_4(π, w) ≅ H_0 × H_4.
    Bordism {
        #[arg(long)]
        group: String,
        #[arg(long, default_value = "trivial")]
        w: String,
    },
    /// Exactness bookkeeping for the Hopf-type sequence of a 4-manifold complex.
    HopfCheck { file: PathBuf },
    /// Write a built-in complex or record as JSON.
    Emit {
        #[command(subcommand)]
        what: Builtin,
    },
}

#[derive(Subcommand)]
enum Builtin {
    Lens { p: i64, q: i64 },
    LensCircle { p: i64, q: i64 },
    LensRecord { p: i64, q: i64 },
    Torus4,
    Rp4,
    S4,
    Cp2,
}

/// A finished computation: the text report, the JSON result and whether the
/// verdict was negative.
struct Report {
    text: String,
    result: Value,
    negative: bool,
}

impl Report {
    fn computed(text: String, result: Value) -> Self {
        Report {
            text,
            result,
            negative: false,
        }
    }
}

fn read(path: &Path) -> Result<String, Error> {
    std::fs::read_to_string(path).map_err(|e| Error::Parse {
        path: path.display().to_string(),
        message: e.to_string(),
    })
}

fn load_complex(path: &Path) -> Result<LambdaComplex, Error> {
    parse_complex(&read(path)?).map_err(|e| match e {
        Error::Parse { path: p, message } => Error::Parse {
            path: format!("{}: {p}", path.display()),
            message,
        },
        other => other,
    })
}

fn inv(a: &AbelianInvariants) -> Value {
    json!({
        "display": a.to_string(),
        "free_rank": a.free_rank,
        "torsion": a.torsion.iter().map(|t| t.to_string()).collect::<Vec<_>>(),
    })
}

fn witness(w: &Option<SquareWitness>) -> Value {
    match w {
        Some(w) => json!({ "r": w.r, "sign": w.sign }),
        None => Value::Null,
    }
}

fn witness_text(w: &Option<SquareWitness>, name: &str) -> String {
    match w {
        Some(w) => format!("{name}={}, sign {}", w.r, if w.sign > 0 { "+" } else { "-" }),
        None => "none".into(),
    }
}

fn verdict(equivalent: bool) -> &'static str {
    if equivalent {
        "EQUIVALENT"
    } else {
        "NOT_EQUIVALENT"
    }
}

fn set_value(s: &BTreeSet<BigInt>) -> Value {
    json!(s.iter().map(|x| x.to_string()).collect::<Vec<_>>())
}

fn set_text(s: &BTreeSet<BigInt>) -> String {
    let items: Vec<String> = s.iter().map(|x| x.to_string()).collect();
    format!("{{{}}}", items.join(", "))
}

fn run(command: &Command) -> Result<Report, Error> {
    match command {
        Command::Snf { file } => {
            let a = parse_matrix(&read(file)?)?;
            let diag = invariant_factors(&a);
            let coker = cokernel_invariants(&a);
            let diag_s: Vec<String> = diag.iter().map(|d| d.to_string()).collect();
            Ok(Report::computed(
                format!(
                    "invariant factors: {}\nrank: {}\ncokernel: {coker}",
                    if diag_s.is_empty() { "none".into() } else { diag_s.join(", ") },
                    rank(&a)
                ),
                json!({
                    "rows": a.rows(),
                    "cols": a.cols(),
                    "invariant_factors": diag_s,
                    "rank": rank(&a),
                    "cokernel": inv(&coker),
                }),
            ))
        }
        Command::Homology { file, coeff } => {
            let c = load_complex(file)?;
            let (label, groups) = match coeff {
                Coefficients::Zw => ("Z^w", c.homology_zw_all()?),
                Coefficients::Lambda => (
                    "Λ",
                    (0..=c.top_degree())
                        .map(|i| c.homology_lambda(i).map(|h| h.invariants))
                        .collect::<Result<Vec<_>, _>>()?,
                ),
            };
            let text = groups
                .iter()
                .enumerate()
                .map(|(i, h)| format!("H_{i}(C; {label}) = {h}"))
                .collect::<Vec<_>>()
                .join("\n");
            Ok(Report::computed(
                text,
                json!({
                    "coefficients": label,
                    "group": c.group().to_string(),
                    "homology": groups.iter().map(inv).collect::<Vec<_>>(),
                }),
            ))
        }
        Command::GroupHomology {
            group,
            w,
            degree,
            oracle,
        } => {
            let g = parse_group_spec(group)?;
            let w = parse_w_spec(w, &g)?;
            let h = group_homology(&g, &w, *degree)?;
            let mut text = format!("H_{degree}({g}; Z^w) = {h}");
            let mut result = json!({
                "group": g.to_string(),
                "w": w.signs(),
                "degree": degree,
                "homology": inv(&h),
            });
            let mut negative = false;
            if oracle.is_some() {
                let bar = bar_homology_oracle_with_budget(&g, &w, *degree, budget_from_env())?;
                let agrees = bar == h;
                negative = !agrees;
                text.push_str(&format!(
                    "\nbar resolution: {bar} ({})",
                    if agrees { "agrees" } else { "DISAGREES" }
                ));
                result["oracle"] = json!({ "homology": inv(&bar), "agrees": agrees });
            }
            Ok(Report {
                text,
                result,
                negative,
            })
        }
        Command::LensClassify { p, q1, q2 } => {
            let w = lens_homotopy_equivalent(*p, *q1, *q2)?;
            Ok(Report {
                text: format!(
                    "L({p},{q1}) vs L({p},{q2}): {}{}",
                    verdict(w.is_some()),
                    if w.is_some() { format!(" with certificate {}", witness_text(&w, "r")) } else { String::new() }
                ),
                result: json!({
                    "p": p, "q": q1, "q_prime": q2,
                    "verdict": verdict(w.is_some()),
                    "certificate": witness(&w),
                }),
                negative: w.is_none(),
            })
        }
        Command::LensLinking { p, q1, q2 } => {
            let f1 = linking_form(&LensSpace::new(*p, *q1)?);
            let f2 = linking_form(&LensSpace::new(*p, *q2)?);
            let w = linking_isometric(&f1, &f2)?;
            Ok(Report {
                text: format!(
                    "-{q1}xy/{p} vs -{q2}xy/{p}: {}{}",
                    if w.is_some() { "ISOMETRIC" } else { "NOT_ISOMETRIC" },
                    if w.is_some() { format!(" with certificate {}", witness_text(&w, "u")) } else { String::new() }
                ),
                result: json!({
                    "p": p, "q": q1, "q_prime": q2,
                    "isometric": w.is_some(),
                    "certificate": w.map(|w| json!({ "u": w.r, "sign": w.sign })),
                }),
                negative: w.is_none(),
            })
        }
        Command::EmTorsion { file, m } => {
            let c = load_complex(file)?;
            let d3 = c.augmented_boundary(3);
            let presented = em_torsion(&d3, m);
            let closed = em_torsion_closed_form(&d3, m);
            let agree = presented == closed;
            Ok(Report {
                text: format!(
                    "Z^w ⊗ E_{m} = {presented}\nclosed form: {closed} ({})",
                    if agree { "agrees" } else { "DISAGREES" }
                ),
                result: json!({
                    "m": m.to_string(),
                    "presentation": inv(&presented),
                    "closed_form": inv(&closed),
                    "agrees": agree,
                }),
                negative: !agree,
            })
        }
        Command::RecoverM { file, invariants } => {
            let c = load_complex(file)?;
            let fam = EmFamily::from_d3(&c.augmented_boundary(3));
            let i = parse_invariants_spec(invariants)?;
            let set = recover_m(&i, &fam)?;
            Ok(Report {
                text: format!("candidates for |m|: {}", set_text(&set)),
                result: json!({ "invariants": inv(&i), "candidates": set_value(&set) }),
                negative: set.is_empty(),
            })
        }
        Command::ExtClass { file } => {
            let c = load_complex(file)?;
            let class = pi2_extension(&c)?;
            let seq = pi2_sequence(&c)?;
            let ext = class.context().ext_invariants();
            let nf: Vec<String> = class.normal_form().iter().map(|x| x.to_string()).collect();
            Ok(Report::computed(
                format!(
                    "Ext^1 = {ext}\nclass: {}\nker d_2 = {}\nC_2 ⊕ H_2 = {}\ncoker d_3 = {}\nsequence exact: {}",
                    if class.is_trivial() { "trivial".to_string() } else { format!("nontrivial, normal form [{}]", nf.join(", ")) },
                    seq.kernel_d2, seq.middle, seq.cokernel_d3, seq.exact
                ),
                json!({
                    "ext_group": inv(&ext),
                    "trivial": class.is_trivial(),
                    "normal_form": nf,
                    "kernel_d2": inv(&seq.kernel_d2),
                    "middle": inv(&seq.middle),
                    "cokernel_d3": inv(&seq.cokernel_d3),
                    "exact": seq.exact,
                }),
            ))
        }
        Command::ClassifyKreck { a, b } => {
            let ra = parse_record(&read(a)?)?;
            let rb = parse_record(&read(b)?)?;
            let v = kreck_equivalent(&ra, &rb)?;
            let cert = v.certificate.as_ref().map(|c| {
                format!(
                    " with certificate {}, sign {}",
                    if c.word.is_empty() { "identity".into() } else { c.word.join(" then ") },
                    if c.sign > 0 { "+" } else { "-" }
                )
            });
            Ok(Report {
                text: format!("{}{}", verdict(v.equivalent), cert.unwrap_or_default()),
                result: json!({
                    "verdict": verdict(v.equivalent),
                    "h4": inv(&ra.h4),
                    "certificate": v.certificate.map(|c| json!({ "word": c.word, "sign": c.sign })),
                }),
                negative: !v.equivalent,
            })
        }
        Command::ClassifyLens { p, q1, q2 } => {
            let v = classify_lens_family(*p, *q1, *q2)?;
            let kreck = match &v.kreck.certificate {
                Some(c) => format!(
                    "holds via {}, sign {}",
                    if c.word.is_empty() { "identity".into() } else { c.word.join(" then ") },
                    if c.sign > 0 { "+" } else { "-" }
                ),
                None => "fails".into(),
            };
            let text = format!(
                "N({p},{q1}) vs N({p},{q2}): {}\nKreck criterion: {kreck}\nfundamental classes: {}\nhomotopy q' = ±r²q: {}\nlinking forms: {}",
                verdict(v.equivalent),
                witness_text(&v.fundamental_class, "r"),
                witness_text(&v.homotopy, "r"),
                witness_text(&v.linking, "u"),
            );
            Ok(Report {
                text,
                result: json!({
                    "p": p, "q": q1, "q_prime": q2,
                    "verdict": verdict(v.equivalent),
                    "criteria": {
                        "kreck": v.kreck.certificate.as_ref().map(|c| json!({ "word": c.word, "sign": c.sign })),
                        "fundamental_class": witness(&v.fundamental_class),
                        "homotopy": witness(&v.homotopy),
                        "linking": witness(&v.linking),
                    },
                }),
                negative: !v.equivalent,
            })
        }
        Command::ClassifyAspherical {
            file,
            invariants_a,
            invariants_b,
            projective_a,
            projective_b,
        } => {
            let c = load_complex(file)?;
            let d3 = c.augmented_boundary(3);
            let a = classify_aspherical(&d3, &parse_invariants_spec(invariants_a)?)?;
            let b = classify_aspherical(&d3, &parse_invariants_spec(invariants_b)?)?;
            let v = compare_aspherical(&a, *projective_a, &b, *projective_b)?;
            let word = match v {
                AsphericalVerdict::Equivalent => "EQUIVALENT",
                AsphericalVerdict::NotEquivalent => "NOT_EQUIVALENT",
                AsphericalVerdict::Undetermined => "UNDETERMINED",
            };
            Ok(Report {
                text: format!("|c_*[M_a]| ∈ {}\n|c_*[M_b]| ∈ {}\n{word}", set_text(&a), set_text(&b)),
                result: json!({
                    "candidates_a": set_value(&a),
                    "candidates_b": set_value(&b),
                    "verdict": word,
                }),
                negative: v == AsphericalVerdict::NotEquivalent,
            })
        }
        Command::Bordism { group, w } => {
            let g = parse_group_spec(group)?;
            let w = parse_w_spec(w, &g)?;
            let b = bordism_group(&g, &w)?;
            Ok(Report::computed(
                b.to_string(),
                json!({ "group": g.to_string(), "w": w.signs(), "stable": inv(&b.stable), "h4": inv(&b.h4) }),
            ))
        }
        Command::HopfCheck { file } => {
            let c = load_complex(file)?;
            let r = hopf_check(&c)?;
            let mut lines: Vec<String> = r.groups.iter().map(|(n, g)| format!("{n} = {g}")).collect();
            for check in &r.checks {
                lines.push(format!("[{}] {}", if check.passed { "ok" } else { "FAIL" }, check.name));
            }
            lines.push(format!("H4(M) -> H4(pi) surjective: {}", r.c4_surjective));
            lines.push(format!("exact: {}", r.exact()));
            Ok(Report {
                text: lines.join("\n"),
                result: json!({
                    "groups": r.groups.iter().map(|(n, g)| json!({ "name": n, "invariants": inv(g) })).collect::<Vec<_>>(),
                    "checks": r.checks.iter().map(|c| json!({ "name": c.name, "passed": c.passed })).collect::<Vec<_>>(),
                    "c4_surjective": r.c4_surjective,
                    "exact": r.exact(),
                }),
                negative: !r.exact(),
            })
        }
        Command::Emit { what } => {
            let text = match what {
                Builtin::Lens { p, q } => emit_complex(&lens_complex(&LensSpace::new(*p, *q)?)),
                Builtin::LensCircle { p, q } => emit_complex(&lens_cross_circle(&LensSpace::new(*p, *q)?)),
                Builtin::LensRecord { p, q } => {
                    emit_record(&ManifoldRecord::lens_cross_circle(&LensSpace::new(*p, *q)?)?)
                }
                Builtin::Torus4 => emit_complex(&torus4_complex()),
                Builtin::Rp4 => emit_complex(&rp4_complex()),
                Builtin::S4 => emit_complex(&s4_complex()),
                Builtin::Cp2 => emit_complex(&cp2_complex()),
            };
            let document: Value = serde_json::from_str(&text).expect("emitted JSON parses");
            Ok(Report::computed(text.trim_end().to_string(), json!({ "document": document })))
        }
    }
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Snf { .. } => "snf",
        Command::Homology { .. } => "homology",
        Command::GroupHomology { .. } => "group-homology",
        Command::LensClassify { .. } => "lens-classify",
        Command::LensLinking { .. } => "lens-linking",
        Command::EmTorsion { .. } => "em-torsion",
        Command::RecoverM { .. } => "recover-m",
        Command::ExtClass { .. } => "ext-class",
        Command::ClassifyKreck { .. } => "classify-kreck",
        Command::ClassifyLens { .. } => "classify-lens",
        Command::ClassifyAspherical { .. } => "classify-aspherical",
        Command::Bordism { .. } => "bordism",
        Command::HopfCheck { .. } => "hopf-check",
        Command::Emit { .. } => "emit",
    }
}

/// Writes to stdout, ignoring a closed pipe.
fn emit(text: &str) {
    let _ = writeln!(std::io::stdout(), "{text}");
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli.command) {
        Ok(report) => {
            if cli.json {
                let out = json!({
                    "schema_version": SCHEMA_VERSION,
                    "command": command_name(&cli.command),
                    "negative": report.negative,
                    "result": report.result,
                });
                emit(&serde_json::to_string_pretty(&out).expect("json"));
            } else {
                emit(&report.text);
            }
            ExitCode::from(u8::from(report.negative))
        }
        Err(e) => {
            if cli.json {
                let out = json!({
                    "schema_version": SCHEMA_VERSION,
                    "command": command_name(&cli.command),
                    "error": e.to_string(),
                });
                emit(&serde_json::to_string_pretty(&out).expect("json"));
            }
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
