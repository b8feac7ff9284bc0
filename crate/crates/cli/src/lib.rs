//! `gradid`: classification, identity checks and witnesses for graded
//! simple algebras, driven by a TOML session document.
//!
//! Every command prints `key: value` lines followed by a fenced JSON block
//! with the same data. Exit codes: 0 success / positive answer, 1 negative
//! answer, 2 input error.

pub mod document;

use std::collections::BTreeMap;
use std::fmt::Write as _;

use clap::ValueEnum;
use serde_json::{json, Value};

use graded_identities::classify::{
    classify, separating_product_test, strongly_vp_empirical, verify_witness, witness_nonstrong, NonStrongWitness,
};
use graded_identities::cohomology::Obstruction;
use graded_identities::graded_algebra::{BasisAlgebra, GradedAlgebra, Move, Presentation};
use graded_identities::grassmann::envelope_identity_check;
use graded_identities::groups::{Elem, FiniteGroup};
use graded_identities::polynomials::{is_identity_with, GradedPolynomial, OracleOptions};
use graded_identities::{par, sample};

pub use document::{Document, InputError, Session};
use document::input_error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Command {
    Validate,
    Classify,
    Normalize,
    Equivalent,
    IdentityCheck,
    Witness,
    EnvelopeCheck,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Validate => "validate",
            Command::Classify => "classify",
            Command::Normalize => "normalize",
            Command::Equivalent => "equivalent",
            Command::IdentityCheck => "identity-check",
            Command::Witness => "witness",
            Command::EnvelopeCheck => "envelope-check",
        }
    }
}

#[derive(Debug, Clone, Default)]
pub struct RunOptions {
    pub threads: Option<usize>,
    pub max_degree: Option<usize>,
    pub seed: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
}

/// Ordered `key: value` lines plus the JSON mirror.
#[derive(Debug, Default)]
struct Report {
    lines: Vec<(String, String)>,
    json: serde_json::Map<String, Value>,
}

impl Report {
    fn put(&mut self, key: &str, text: impl ToString, value: Value) {
        self.lines.push((key.to_string(), text.to_string()));
        self.json.insert(key.to_string(), value);
    }

    fn flag(&mut self, key: &str, b: bool) {
        self.put(key, b, json!(b));
    }

    fn render(self) -> String {
        let mut out = String::new();
        for (k, v) in &self.lines {
            let _ = writeln!(out, "{k}: {v}");
        }
        out.push_str("```json\n");
        out.push_str(&serde_json::to_string_pretty(&Value::Object(self.json)).unwrap());
        out.push_str("\n```\n");
        out
    }
}

enum Failure {
    Input(InputError),
    Answer(String),
}

impl From<InputError> for Failure {
    fn from(e: InputError) -> Self {
        Failure::Input(e)
    }
}

fn core(field: &str) -> impl Fn(graded_identities::Error) -> Failure + '_ {
    move |e| Failure::Input(input_error(field, e))
}

fn names(g: &FiniteGroup, xs: &[Elem]) -> Vec<String> {
    xs.iter().map(|&x| g.name(x).to_string()).collect()
}

fn list(xs: &[String]) -> String {
    format!("[{}]", xs.join(", "))
}

fn obstruction_json(g: &FiniteGroup, o: &Obstruction) -> Value {
    json!({
        "modulus": o.modulus,
        "weights": o.weights.iter().map(|&(a, b, w)| json!([g.name(a), g.name(b), w])).collect::<Vec<_>>(),
    })
}

fn obstruction_text(g: &FiniteGroup, o: &Obstruction) -> String {
    let parts: Vec<String> = o
        .weights
        .iter()
        .map(|&(a, b, w)| format!("{w}*({},{})", g.name(a), g.name(b)))
        .collect();
    format!("{} (mod {})", parts.join(" + "), o.modulus)
}

fn move_text(g: &FiniteGroup, m: &Move) -> String {
    match m {
        Move::M1(p) => format!("M1{p:?}"),
        Move::M2(hs) => format!("M2{}", list(&names(g, hs))),
        Move::M3(x) => format!("M3({})", g.name(*x)),
    }
}

fn presentation_json(p: &Presentation) -> Value {
    let g = p.group();
    let h = p.subgroup();
    json!({
        "subgroup": names(g, h.members()),
        "tuple": names(g, p.tuple()),
        "cocycle": { "modulus": p.cocycle().modulus(), "exponents": p.cocycle().table() },
    })
}

fn check_degree(opts: &RunOptions, degree: usize) -> Result<(), Failure> {
    match opts.max_degree {
        Some(cap) if degree > cap => Err(Failure::Input(input_error(
            "--max-degree",
            format!("polynomial degree {degree} exceeds the cap {cap}"),
        ))),
        _ => Ok(()),
    }
}

fn oracle_options(opts: &RunOptions) -> OracleOptions {
    OracleOptions {
        max_degree: opts.max_degree,
        ..OracleOptions::default()
    }
}

/// Runs `command` on the document text.
pub fn run(command: Command, text: &str, opts: &RunOptions) -> Outcome {
    let opts_inner = opts.clone();
    let result = par::with_threads(opts.threads, move || {
        let session = Session::parse(text)?;
        let mut r = Report::default();
        r.put("command", command.name(), json!(command.name()));
        let code = dispatch(command, &session, &opts_inner, &mut r)?;
        Ok::<_, Failure>((code, r.render()))
    });
    match result {
        Ok((code, stdout)) => Outcome { code, stdout },
        Err(Failure::Input(e)) => Outcome {
            code: 2,
            stdout: format!("error: {e}\n"),
        },
        Err(Failure::Answer(msg)) => Outcome {
            code: 1,
            stdout: format!("error: {msg}\n"),
        },
    }
}

fn dispatch(command: Command, s: &Session, opts: &RunOptions, r: &mut Report) -> Result<i32, Failure> {
    match command {
        Command::Validate => validate(s, r),
        Command::Classify => classify_cmd(s, opts, r),
        Command::Normalize => normalize(s, r),
        Command::Equivalent => equivalent(s, r),
        Command::IdentityCheck => identity_check(s, opts, r),
        Command::Witness => witness(s, opts, r),
        Command::EnvelopeCheck => envelope_check(s, opts, r),
    }
}

fn validate(s: &Session, r: &mut Report) -> Result<i32, Failure> {
    let p = &s.presentation;
    r.flag("valid", true);
    r.put("group_order", s.group.order(), json!(s.group.order()));
    r.put("subgroup_order", p.subgroup().order(), json!(p.subgroup().order()));
    r.put("modulus", p.cocycle().modulus(), json!(p.cocycle().modulus()));
    r.put("m", p.m(), json!(p.m()));
    r.put("dim", p.subgroup().order() * p.m() * p.m(), json!(p.subgroup().order() * p.m() * p.m()));
    let connected = classify(p).is_ok();
    r.flag("connected", connected);
    let polys: Vec<&String> = s.doc.polynomials.keys().collect();
    r.put(
        "polynomials",
        list(&polys.iter().map(|k| k.to_string()).collect::<Vec<_>>()),
        json!(polys),
    );
    Ok(0)
}

fn classify_cmd(s: &Session, opts: &RunOptions, r: &mut Report) -> Result<i32, Failure> {
    let rep = classify(&s.presentation).map_err(core("presentation"))?;
    let g = &s.group;
    r.put("normalized_tuple", list(&names(g, rep.presentation.tuple())), json!(names(g, rep.presentation.tuple())));
    r.flag("connected", rep.connected);
    r.flag("h_normal", rep.h_normal);
    r.flag("cosets_equal", rep.cosets_equal);
    let inv = rep.class_g_invariant;
    r.put(
        "class_g_invariant",
        inv.map_or("undefined".to_string(), |b| b.to_string()),
        json!(inv),
    );
    r.flag("crossed_product", rep.crossed_product);
    r.flag("graded_division", rep.graded_division);
    r.flag("verbally_prime", rep.verbally_prime);
    r.flag("strongly_verbally_prime", rep.strongly_verbally_prime);
    r.flag("division_form_exists", rep.division_form_exists);
    let failed = rep.failed_conditions();
    r.put("failed_conditions", format!("{failed:?}"), json!(failed));
    if let Some((x, o)) = &rep.invariance_failure {
        r.put(
            "invariance_failure",
            format!("conjugation by {} gives obstruction {}", g.name(*x), obstruction_text(g, o)),
            json!({ "g": g.name(*x), "obstruction": obstruction_json(g, o) }),
        );
    }
    if let Some(seed) = opts.seed {
        empirical(s, &rep.presentation, rep.strongly_verbally_prime, seed, r)?;
    }
    Ok(if rep.strongly_verbally_prime { 0 } else { 1 })
}

/// Random spot checks of primeness on small polynomials.
fn empirical(s: &Session, p: &Presentation, strong: bool, seed: u64, r: &mut Report) -> Result<(), Failure> {
    const PAIRS: usize = 8;
    let a = GradedAlgebra::new(p);
    let pool: Vec<Elem> = s.group.elements().filter(|&x| a.component_dim(x) > 0).collect();
    let order = p.cocycle().modulus();
    let mut rng = sample::rng(seed);
    let (mut tested, mut separated, mut consistent) = (0usize, 0usize, 0usize);
    for _ in 0..PAIRS * 4 {
        if tested == PAIRS {
            break;
        }
        let f = sample::random_polynomial(&mut rng, &pool, order, 2, 2);
        let g = sample::random_polynomial(&mut rng, &pool, order, 2, 2).rename(|id| id + 2).map_err(core("seed"))?;
        let oo = OracleOptions::default();
        if f.is_zero()
            || g.is_zero()
            || is_identity_with(&f, &a, &oo).map_err(core("seed"))?.identity
            || is_identity_with(&g, &a, &oo).map_err(core("seed"))?.identity
        {
            continue;
        }
        tested += 1;
        if separating_product_test(&f, &g, &a).map_err(core("seed"))? {
            separated += 1;
        }
        if strongly_vp_empirical(&f, &g, &a).map_err(core("seed"))? {
            consistent += 1;
        }
    }
    r.put("seed", seed, json!(seed));
    r.put("empirical_pairs", tested, json!(tested));
    r.put("separating_product_holds", format!("{separated}/{tested}"), json!(separated));
    r.put("product_nonidentity", format!("{consistent}/{tested}"), json!(consistent));
    let agrees = separated == tested && (!strong || consistent == tested);
    r.flag("empirical_agrees", agrees);
    Ok(())
}

fn normalize(s: &Session, r: &mut Report) -> Result<i32, Failure> {
    let p = &s.presentation;
    let g = &s.group;
    let moves = p.normalization_moves();
    let q = p.apply_moves(&moves).map_err(core("presentation"))?;
    let texts: Vec<String> = moves.iter().map(|m| move_text(g, m)).collect();
    r.put("subgroup", list(&names(g, q.subgroup().members())), json!(names(g, q.subgroup().members())));
    r.put("tuple", list(&names(g, q.tuple())), json!(names(g, q.tuple())));
    r.put("moves", list(&texts), json!(texts));
    r.put("modulus", q.cocycle().modulus(), json!(q.cocycle().modulus()));
    r.json.insert("presentation".into(), presentation_json(&q));
    Ok(0)
}

fn equivalent(s: &Session, r: &mut Report) -> Result<i32, Failure> {
    let other = s.other.as_ref().ok_or_else(|| input_error("other", "missing section"))?;
    let eq = s.presentation.equivalent(other);
    r.flag("equivalent", eq);
    let g = &s.group;
    let a = s.presentation.normalize();
    let b = other.normalize();
    r.put("normalized_tuple", list(&names(g, a.tuple())), json!(names(g, a.tuple())));
    r.put("other_normalized_tuple", list(&names(g, b.tuple())), json!(names(g, b.tuple())));
    Ok(if eq { 0 } else { 1 })
}

fn poly_json(f: &GradedPolynomial, g: &FiniteGroup) -> Value {
    json!({ "order": f.scalar_order(), "terms": f.to_terms(Some(g)) })
}

fn assignment_json<A: BasisAlgebra>(a: &A, assignment: &[(u32, usize)]) -> Value {
    let m: BTreeMap<String, String> = assignment
        .iter()
        .map(|&(v, b)| (format!("x{v}"), a.basis_label(b)))
        .collect();
    json!(m)
}

fn assignment_text<A: BasisAlgebra>(a: &A, assignment: &[(u32, usize)]) -> String {
    assignment
        .iter()
        .map(|&(v, b)| format!("x{v}={}", a.basis_label(b)))
        .collect::<Vec<_>>()
        .join(", ")
}

fn identity_check(s: &Session, opts: &RunOptions, r: &mut Report) -> Result<i32, Failure> {
    let f = s.identity_check_polynomial()?;
    check_degree(opts, f.degree())?;
    let a = GradedAlgebra::new(&s.presentation);
    let v = is_identity_with(&f, &a, &oracle_options(opts)).map_err(core("identity_check"))?;
    r.put("degree", f.degree(), json!(f.degree()));
    r.put("monomials", f.monomials().len(), json!(f.monomials().len()));
    r.flag("identity", v.identity);
    if let Some(c) = &v.counterexample {
        r.put("counterexample", assignment_text(&a, &c.assignment), assignment_json(&a, &c.assignment));
        r.put("value", a.render(&c.value), json!(a.render(&c.value)));
    }
    Ok(if v.identity { 0 } else { 1 })
}

fn witness(s: &Session, opts: &RunOptions, r: &mut Report) -> Result<i32, Failure> {
    let g = &s.group;
    let found = witness_nonstrong(&s.presentation).map_err(core("presentation"))?;
    match found {
        None => Err(Failure::Answer("no witness: the algebra is strongly verbally prime".into())),
        Some(NonStrongWitness::Cohomological { g: x, obstruction }) => {
            r.put("kind", "cohomological", json!("cohomological"));
            r.put("g", g.name(x), json!(g.name(x)));
            r.put("obstruction", obstruction_text(g, &obstruction), obstruction_json(g, &obstruction));
            Ok(0)
        }
        Some(NonStrongWitness::Polynomials(w)) => {
            check_degree(opts, w.f.degree() + w.g.degree())?;
            let a = GradedAlgebra::new(&w.presentation);
            let cert = verify_witness(&w, &a).map_err(|e| Failure::Answer(e.to_string()))?;
            let kind = format!("{:?}", w.kind).to_lowercase();
            r.put("kind", &kind, json!(kind));
            r.put("f_degree", w.f.degree(), json!(w.f.degree()));
            r.put("f_monomials", w.f.monomials().len(), json!(w.f.monomials().len()));
            r.put("g_degree", w.g.degree(), json!(w.g.degree()));
            r.put("g_monomials", w.g.monomials().len(), json!(w.g.monomials().len()));
            r.put("f_evaluation", assignment_text(&a, &w.f_evaluation), assignment_json(&a, &w.f_evaluation));
            r.put("g_evaluation", assignment_text(&a, &w.g_evaluation), assignment_json(&a, &w.g_evaluation));
            r.put("f_value", a.render(&cert.f_value), json!(a.render(&cert.f_value)));
            r.put("g_value", a.render(&cert.g_value), json!(a.render(&cert.g_value)));
            r.put("span_rank", cert.span_rank, json!(cert.span_rank));
            let blocks: Vec<(usize, usize)> = cert.span_blocks.iter().copied().collect();
            r.put("span_blocks", format!("{blocks:?}"), json!(blocks));
            r.flag("span_square_zero", cert.span_square_zero);
            r.flag("product_identity", cert.product_identity);
            r.json.insert("f".into(), poly_json(&w.f, g));
            r.json.insert("g".into(), poly_json(&w.g, g));
            Ok(0)
        }
    }
}

fn envelope_check(s: &Session, opts: &RunOptions, r: &mut Report) -> Result<i32, Failure> {
    let env = s.doc.envelope.as_ref().ok_or_else(|| input_error("envelope", "missing section"))?;
    let fac = s.factorization()?;
    let f = s.envelope_polynomial()?;
    check_degree(opts, f.degree())?;
    let a = GradedAlgebra::new(&s.presentation);
    let identity = envelope_identity_check(&f, &a, &fac, env.generators).map_err(core("envelope"))?;
    r.put("generators", env.generators, json!(env.generators));
    r.put("degree", f.degree(), json!(f.degree()));
    r.flag("identity", identity);
    Ok(if identity { 0 } else { 1 })
}
