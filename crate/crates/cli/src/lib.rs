//! Batch front end: parses matrices and polynomials from JSON files or the
//! command line, runs one pipeline, writes a JSON report to stdout and a
//! short human summary to stderr.
//!
//! Exit codes: 0 positive result, 2 sound negative result, 3 input or parse
//! error, 4 unsupported (degree cap, shift search exhausted, no splitting
//! field, ...), 1 internal inconsistency.

pub mod format;

use std::ffi::OsString;

use clap::{Parser, Subcommand};
use comsub::factor::factor;
use comsub::fuzz::{run_fuzz, FuzzConfig};
use comsub::galois::{quartic_galois, resolvent_cubic, GroupTag};
use comsub::invariant::{
    colinearity_space_dim, common_invariant_subspace_with, invariant_dim, mccoy_falsify, shemesh_intersection,
    DEFAULT_SHIFT_TRIES,
};
use comsub::st::{st_check, StStatus};
use comsub::verdict::{commute_verdict, equation_analyze, Conclusion};
use comsub::{Field, Matrix, Poly};
use serde_json::{json, Map, Value};

use format::{
    elem_to_json, field_to_json, load_matrix, load_poly, load_subspace, matrix_to_json, parse_field_arg, poly_to_json,
    subspace_to_json, to_canonical_string, vector_to_json, FormatError, SCHEMA,
};

pub const EXIT_POSITIVE: i32 = 0;
pub const EXIT_INTERNAL: i32 = 1;
pub const EXIT_NEGATIVE: i32 = 2;
pub const EXIT_INPUT: i32 = 3;
pub const EXIT_UNSUPPORTED: i32 = 4;

#[derive(Parser, Debug)]
#[command(name = "comsub", version, about = "Exact common invariant subspaces, simultaneous triangularization and quartic Galois routing")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

/// Matrices are given as `FILE#NAME` (an object of a manifest) or `FILE`
/// (a manifest with one object, or a bare matrix document). `--field`
/// supplies the field when the file declares none and maps data declared
/// over `Q` into the requested field; it defaults to `Q`.
#[derive(Subcommand, Debug)]
enum Cmd {
    /// Factor a polynomial into monic irreducibles.
    Factor {
        #[arg(long)]
        field: Option<String>,
        /// Text such as "x^2 - x + 4", a JSON coefficient array, or FILE#NAME.
        #[arg(long)]
        poly: String,
    },
    /// Galois group of an irreducible quartic.
    Galois4 {
        #[arg(long)]
        field: Option<String>,
        #[arg(long)]
        poly: String,
    },
    /// Characteristic polynomial and its factorization.
    Charpoly {
        #[arg(long)]
        field: Option<String>,
        #[arg(long)]
        a: String,
    },
    /// Intersection of the commutator kernels ker[A^p, B^q].
    Shemesh {
        #[arg(long)]
        field: Option<String>,
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
    },
    /// Common invariant subspaces of one dimension.
    CommonSubspace {
        #[arg(long)]
        field: Option<String>,
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = DEFAULT_SHIFT_TRIES)]
        max_tries: usize,
    },
    /// Simultaneous triangularization test with certificate.
    StCheck {
        #[arg(long)]
        field: Option<String>,
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
        /// Field descriptor containing the eigenvalues of A; computed when
        /// omitted.
        #[arg(long)]
        splitting_field: Option<String>,
        /// Longest word searched for a non-nilpotent w[A,B] on NotST.
        #[arg(long, default_value_t = 4)]
        witness_depth: usize,
    },
    /// Dimension of {B : B Pi ⊆ Pi} (with --subspace) or {B : B u ∥ u}
    /// for the eigenvector of a simple factor (with --factor).
    InvDim {
        #[arg(long)]
        field: Option<String>,
        #[arg(long)]
        a: String,
        #[arg(long, conflicts_with = "factor")]
        subspace: Option<String>,
        #[arg(long)]
        factor: Option<String>,
    },
    /// Route the pair through the commutativity theorems.
    Verdict {
        #[arg(long)]
        field: Option<String>,
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
        /// Declared Galois group of chi_A (overridden when computable).
        #[arg(long)]
        group: Option<String>,
    },
    /// Uniqueness analysis for AX - XA = X^alpha with A = diag(C_Phi, C_Psi).
    Equation {
        #[arg(long)]
        field: Option<String>,
        #[arg(long)]
        phi: String,
        #[arg(long)]
        psi: String,
        #[arg(long, default_value_t = 1)]
        alpha: u32,
    },
    /// Randomised falsification of the commutativity theorems.
    Fuzz {
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 200)]
        trials: usize,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value = "q")]
        field: String,
        /// Height bound for rational entries.
        #[arg(long, default_value_t = 10)]
        height: i64,
    },
}

/// Result of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

enum Failure {
    Input(String),
    Unsupported(String),
    Internal(String),
}

impl From<FormatError> for Failure {
    fn from(e: FormatError) -> Self {
        Failure::Input(e.0)
    }
}

impl From<comsub::Error> for Failure {
    fn from(e: comsub::Error) -> Self {
        use comsub::Error as E;
        match e {
            E::Inconsistent(_) => Failure::Internal(e.to_string()),
            E::RepeatedEigenvalues | E::NotSquarefree => Failure::Unsupported(e.to_string()),
            _ if e.is_unsupported() => Failure::Unsupported(e.to_string()),
            _ => Failure::Input(e.to_string()),
        }
    }
}

struct Report {
    code: i32,
    body: Map<String, Value>,
    summary: String,
}

fn report(code: i32, body: Value, summary: impl Into<String>) -> Report {
    let body = match body {
        Value::Object(m) => m,
        _ => unreachable!("reports are objects"),
    };
    Report { code, body, summary: summary.into() }
}

/// Runs the CLI on `args` (including the program name).
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => {
                    Outcome { code: EXIT_POSITIVE, stdout: text, stderr: String::new() }
                }
                _ => Outcome { code: EXIT_INPUT, stdout: String::new(), stderr: text },
            };
        }
    };
    let command = command_name(&cli.cmd);
    let result = std::panic::catch_unwind(|| execute(cli.cmd)).unwrap_or_else(|p| {
        let msg = p
            .downcast_ref::<String>()
            .cloned()
            .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
            .unwrap_or_else(|| "panic".into());
        Err(Failure::Internal(msg))
    });
    match result {
        Ok(r) => {
            let mut body = Map::new();
            body.insert("schema".into(), json!(SCHEMA));
            body.insert("command".into(), json!(command));
            body.insert("exit_code".into(), json!(r.code));
            body.extend(r.body);
            Outcome { code: r.code, stdout: to_canonical_string(&Value::Object(body)), stderr: format!("{}\n", r.summary) }
        }
        Err(f) => {
            let (code, kind, msg) = match f {
                Failure::Input(m) => (EXIT_INPUT, "input", m),
                Failure::Unsupported(m) => (EXIT_UNSUPPORTED, "unsupported", m),
                Failure::Internal(m) => (EXIT_INTERNAL, "internal", m),
            };
            let body = json!({
                "schema": SCHEMA,
                "command": command,
                "exit_code": code,
                "error": { "kind": kind, "message": msg },
            });
            Outcome { code, stdout: to_canonical_string(&body), stderr: format!("error ({kind}): {msg}\n") }
        }
    }
}

fn command_name(cmd: &Cmd) -> &'static str {
    match cmd {
        Cmd::Factor { .. } => "factor",
        Cmd::Galois4 { .. } => "galois4",
        Cmd::Charpoly { .. } => "charpoly",
        Cmd::Shemesh { .. } => "shemesh",
        Cmd::CommonSubspace { .. } => "common-subspace",
        Cmd::StCheck { .. } => "st-check",
        Cmd::InvDim { .. } => "inv-dim",
        Cmd::Verdict { .. } => "verdict",
        Cmd::Equation { .. } => "equation",
        Cmd::Fuzz { .. } => "fuzz",
    }
}

struct FieldChoice {
    requested: Option<Field>,
    fallback: Field,
}

impl FieldChoice {
    fn new(arg: Option<&str>) -> Result<FieldChoice, Failure> {
        let requested = arg.map(parse_field_arg).transpose()?;
        let fallback = requested.clone().unwrap_or_else(Field::rational);
        Ok(FieldChoice { requested, fallback })
    }

    fn matrix(&self, spec: &str) -> Result<Matrix, Failure> {
        let m = load_matrix(spec, &self.fallback)?;
        match &self.requested {
            Some(f) if f != m.field() => {
                if !m.field().is_rational() {
                    return Err(Failure::Input(format!("{spec} is over {}, cannot map into {f}", m.field())));
                }
                let rows = m
                    .to_rows()
                    .iter()
                    .map(|r| r.iter().map(|x| rational_into(f, x)).collect::<Result<Vec<_>, _>>())
                    .collect::<Result<Vec<_>, _>>()?;
                Ok(Matrix::from_rows(f.clone(), rows)?)
            }
            _ => Ok(m),
        }
    }

    fn poly(&self, spec: &str) -> Result<Poly, Failure> {
        let p = load_poly(spec, &self.fallback)?;
        match &self.requested {
            Some(f) if f != p.field() => {
                if !p.field().is_rational() {
                    return Err(Failure::Input(format!("{spec} is over {}, cannot map into {f}", p.field())));
                }
                let c = p.coeffs().iter().map(|x| rational_into(f, x)).collect::<Result<Vec<_>, _>>()?;
                Ok(Poly::new(f.clone(), c))
            }
            _ => Ok(p),
        }
    }
}

fn rational_into(f: &Field, x: &comsub::Elem) -> Result<comsub::Elem, Failure> {
    match x {
        comsub::Elem::Rat(r) => Ok(f.from_rational(r)?),
        _ => Err(Failure::Input("expected a rational entry".into())),
    }
}

fn load_pair(field: Option<&str>, a: &str, b: &str) -> Result<(Matrix, Matrix), Failure> {
    let choice = FieldChoice::new(field)?;
    let a = choice.matrix(a)?;
    let b = choice.matrix(b)?;
    if a.field() != b.field() {
        return Err(Failure::Input("A and B are over different fields".into()));
    }
    Ok((a, b))
}

fn factorization_json(p: &Poly) -> Result<Value, Failure> {
    let fact = factor(p)?;
    let factors: Vec<Value> = fact
        .factors
        .iter()
        .map(|(g, m)| json!({ "poly": poly_to_json(g), "text": g.to_string(), "degree": g.degree(), "multiplicity": m }))
        .collect();
    Ok(json!({
        "unit": elem_to_json(p.field(), &fact.unit),
        "factors": factors,
        "irreducible": fact.is_irreducible(),
    }))
}

fn execute(cmd: Cmd) -> Result<Report, Failure> {
    match cmd {
        Cmd::Factor { field, poly } => {
            let p = FieldChoice::new(field.as_deref())?.poly(&poly)?;
            let f = p.field().clone();
            let fj = factorization_json(&p)?;
            let texts: Vec<String> = factor(&p)?.factors.iter().map(|(g, m)| if *m > 1 { format!("({g})^{m}") } else { format!("({g})") }).collect();
            Ok(report(
                EXIT_POSITIVE,
                json!({ "field": field_to_json(&f), "poly": poly_to_json(&p), "text": p.to_string(), "factorization": fj }),
                format!("{p} = {} over {f}", texts.join(" ")),
            ))
        }
        Cmd::Galois4 { field, poly } => {
            let p = FieldChoice::new(field.as_deref())?.poly(&poly)?;
            let f = p.field().clone();
            let group = quartic_galois(&p)?;
            let monic = p.monic();
            Ok(report(
                EXIT_POSITIVE,
                json!({
                    "field": field_to_json(&f),
                    "poly": poly_to_json(&p),
                    "group": group.to_string(),
                    "resolvent_cubic": poly_to_json(&resolvent_cubic(&monic)?),
                    "discriminant": elem_to_json(&f, &monic.discriminant()?),
                }),
                format!("Galois group of {p} over {f}: {group}"),
            ))
        }
        Cmd::Charpoly { field, a } => {
            let a = FieldChoice::new(field.as_deref())?.matrix(&a)?;
            let chi = a.charpoly()?;
            Ok(report(
                EXIT_POSITIVE,
                json!({ "field": field_to_json(a.field()), "charpoly": poly_to_json(&chi), "text": chi.to_string(), "factorization": factorization_json(&chi)? }),
                format!("chi_A = {chi}"),
            ))
        }
        Cmd::Shemesh { field, a, b } => {
            let (a, b) = load_pair(field.as_deref(), &a, &b)?;
            let r = shemesh_intersection(&a, &b)?;
            let dim = r.subspace.dim();
            let code = if dim > 0 { EXIT_POSITIVE } else { EXIT_NEGATIVE };
            Ok(report(
                code,
                json!({
                    "field": field_to_json(a.field()),
                    "dimension": dim,
                    "basis": subspace_to_json(&r.subspace),
                    "kernels_computed": r.kernels_computed,
                    "heuristic": r.heuristic,
                }),
                if dim > 0 {
                    format!("commutator kernels meet in dimension {dim}{}", if r.heuristic { " (evidence only in positive characteristic)" } else { "" })
                } else {
                    "commutator kernels meet in {0}: no common eigenvector".to_string()
                },
            ))
        }
        Cmd::CommonSubspace { field, a, b, k, max_tries } => {
            let (a, b) = load_pair(field.as_deref(), &a, &b)?;
            let r = common_invariant_subspace_with(&a, &b, k, max_tries)?;
            let witnesses: Vec<Value> = r
                .witnesses
                .iter()
                .map(|w| {
                    json!({
                        "field": field_to_json(&w.field),
                        "wedge": vector_to_json(&w.field, &w.wedge),
                        "basis": subspace_to_json(&w.subspace),
                        "b_invariance_verified": w.b_invariance_verified,
                        "conjugates": w.conjugates,
                    })
                })
                .collect();
            let total: usize = r.witnesses.iter().map(|w| w.conjugates).sum();
            let code = if witnesses.is_empty() { EXIT_NEGATIVE } else { EXIT_POSITIVE };
            Ok(report(
                code,
                json!({
                    "field": field_to_json(a.field()),
                    "k": k,
                    "shift": r.shift.as_ref().map(|s| elem_to_json(a.field(), s)),
                    "witnesses": witnesses,
                    "subspaces": total,
                }),
                format!("{} witness(es), {total} common invariant subspace(s) of dimension {k}", r.witnesses.len()),
            ))
        }
        Cmd::StCheck { field, a, b, splitting_field, witness_depth } => {
            let (a, b) = load_pair(field.as_deref(), &a, &b)?;
            let l = splitting_field.as_deref().map(parse_field_arg).transpose()?;
            let r = st_check(&a, &b, l.as_ref())?;
            match r.status {
                StStatus::ST => {
                    let s = r.s.as_ref().expect("certificate on ST");
                    Ok(report(
                        EXIT_POSITIVE,
                        json!({
                            "status": "ST",
                            "field": field_to_json(&r.field),
                            "permutation": r.permutation,
                            "s": matrix_to_json(s),
                            "rounds": r.rounds,
                        }),
                        format!("simultaneously triangularizable over {}; S^-1 A S diagonal, S^-1 B S upper triangular", r.field),
                    ))
                }
                StStatus::NotST => {
                    let word = mccoy_falsify(&a, &b, witness_depth)?;
                    Ok(report(
                        EXIT_NEGATIVE,
                        json!({
                            "status": "NotST",
                            "field": field_to_json(&r.field),
                            "rounds": r.rounds,
                            "witness_word": word,
                        }),
                        match &word {
                            Some(w) => format!("not simultaneously triangularizable; {w}*(AB-BA) is not nilpotent"),
                            None => "not simultaneously triangularizable".to_string(),
                        },
                    ))
                }
            }
        }
        Cmd::InvDim { field, a, subspace, factor: fac } => {
            let a = FieldChoice::new(field.as_deref())?.matrix(&a)?;
            let (dim, what) = match (subspace, fac) {
                (Some(s), None) => {
                    let pi = load_subspace(&s, a.field())?;
                    (invariant_dim(&a, &pi)?, json!({ "subspace": subspace_to_json(&pi), "subspace_field": field_to_json(pi.field()) }))
                }
                (None, Some(p)) => {
                    let p = load_poly(&p, a.field())?;
                    (colinearity_space_dim(&a, &p)?, json!({ "factor": poly_to_json(&p) }))
                }
                _ => return Err(Failure::Input("give exactly one of --subspace or --factor".into())),
            };
            let mut body = json!({ "field": field_to_json(a.field()), "dimension": dim });
            body.as_object_mut().expect("object").extend(what.as_object().expect("object").clone());
            Ok(report(EXIT_POSITIVE, body, format!("dimension {dim} over {}", a.field())))
        }
        Cmd::Verdict { field, a, b, group } => {
            let (a, b) = load_pair(field.as_deref(), &a, &b)?;
            let v = commute_verdict(&a, &b, group.as_deref().map(GroupTag::parse))?;
            let found: Vec<Value> = v
                .found_subspaces
                .iter()
                .map(|(k, r)| {
                    json!({
                        "k": k,
                        "shift": r.shift.as_ref().map(|s| elem_to_json(a.field(), s)),
                        "witnesses": r.witnesses.len(),
                        "subspaces": r.witnesses.iter().map(|w| w.conjugates).sum::<usize>(),
                        "bases": r.witnesses.iter().map(|w| json!({
                            "field": field_to_json(&w.field),
                            "basis": subspace_to_json(&w.subspace),
                        })).collect::<Vec<_>>(),
                    })
                })
                .collect();
            let planes: usize = v
                .found_subspaces
                .iter()
                .filter(|(k, _)| *k == 2)
                .map(|(_, r)| r.witnesses.iter().map(|w| w.conjugates).sum::<usize>())
                .sum();
            let skipped: Vec<Value> = v.skipped.iter().map(|(k, why)| json!({ "k": k, "reason": why })).collect();
            let route = v.route.map(|r| r.to_string());
            let code = if v.consistent { EXIT_POSITIVE } else { EXIT_INTERNAL };
            Ok(report(
                code,
                json!({
                    "field": field_to_json(a.field()),
                    "chi_irreducible": v.chi_irreducible,
                    "group": v.group.to_string(),
                    "route": route,
                    "theorem_applies": v.theorem_applies(),
                    "commutes": v.commutes,
                    "consistent": v.consistent,
                    "found": found,
                    "planes": planes,
                    "skipped": skipped,
                }),
                format!(
                    "chi_A {}irreducible, group {}, route {}, AB {} BA, dimensions found {:?}",
                    if v.chi_irreducible { "" } else { "not " },
                    v.group,
                    route.as_deref().unwrap_or("none"),
                    if v.commutes { "=" } else { "!=" },
                    v.found_subspaces.iter().map(|(k, _)| *k).collect::<Vec<_>>()
                ),
            ))
        }
        Cmd::Equation { field, phi, psi, alpha } => {
            let choice = FieldChoice::new(field.as_deref())?;
            let phi = choice.poly(&phi)?;
            let psi = choice.poly(&psi)?;
            let f = phi.field().clone();
            let e = equation_analyze(&phi, &psi, alpha)?;
            let unique = e.conclusion == Conclusion::UniqueZero;
            Ok(report(
                if unique { EXIT_POSITIVE } else { EXIT_NEGATIVE },
                json!({
                    "field": field_to_json(&f),
                    "phi": poly_to_json(&e.phi),
                    "psi": poly_to_json(&e.psi),
                    "p": e.p,
                    "q": e.q,
                    "alpha": e.alpha,
                    "irreducibility_ok": e.irreducibility_ok,
                    "degrees_distinct": e.degrees_distinct,
                    "shift_resultant_nonzero": e.shift_resultant_nonzero,
                    "disjoint_spectra": e.disjoint_spectra,
                    "no_internal_shift": e.no_internal_shift,
                    "conclusion": format!("{:?}", e.conclusion),
                    "brute_force_kernel_dim": e.brute_force_kernel_dim,
                }),
                if unique {
                    "X = 0 is the only solution".to_string()
                } else {
                    "hypotheses not met; uniqueness not certified".to_string()
                },
            ))
        }
        Cmd::Fuzz { seed, trials, n, field, height } => {
            let f: Field = parse_field_arg(&field)?;
            if !(2..=8).contains(&n) {
                return Err(Failure::Input(format!("--n must be in 2..=8, got {n}")));
            }
            if height < 1 {
                return Err(Failure::Input("--height must be positive".into()));
            }
            let r = run_fuzz(&FuzzConfig { n, field: f.clone(), trials, seed, height })?;
            let clean = r.violations.is_empty();
            Ok(report(
                if clean { EXIT_POSITIVE } else { EXIT_INTERNAL },
                json!({
                    "field": field_to_json(&f),
                    "n": n,
                    "seed": seed,
                    "height": height,
                    "trials": r.trials,
                    "certified": r.certified,
                    "covered": r.covered,
                    "commuting": r.commuting,
                    "skipped_dimensions": r.skipped_dimensions,
                    "violations": r.violations,
                    "elapsed_ms": r.elapsed.as_millis() as u64,
                }),
                format!(
                    "{} trials over {f}, n = {n}: {} certified, {} violations in {:.2?}",
                    r.trials,
                    r.certified,
                    r.violations.len(),
                    r.elapsed
                ),
            ))
        }
    }
}
