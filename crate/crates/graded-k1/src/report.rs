//! Text and structured (JSON) rendering of computation results.
//!
//! Structured output goes through `serde_json::Value`, whose maps are ordered by key, so
//! equal results always serialise to the same bytes.

use std::fmt::Write as _;

use graded_k1_core::engine::{
    ExactnessReport, GammaActionReport, K1Report, PerfectnessReport, StabilizationReport, SuspensionReport,
};
use graded_k1_core::sampling::IdentityTally;
use graded_k1_core::{Certificate, GradeElement, GradedMatrix, Letter, ShiftFamily};
use serde_json::{json, Value};

use crate::job::{Format, JobSpec};

/// How a job ended; each maps to a process exit code.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Ok,
    /// A verification failed.
    Failed,
    /// A closure or scan hit the cap.
    Truncated,
    /// The job could not be carried out as specified.
    Invalid,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Ok => 0,
            Status::Failed => 1,
            Status::Truncated => 2,
            Status::Invalid => 3,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Status::Ok => "ok",
            Status::Failed => "failed",
            Status::Truncated => "truncated",
            Status::Invalid => "invalid",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub status: Status,
    pub result: Value,
    pub text: String,
}

pub fn grade(x: &GradeElement) -> Value {
    json!(x.coords())
}

pub fn family(f: &ShiftFamily) -> Value {
    Value::Array(f.shifts().iter().map(grade).collect())
}

fn order(n: u128) -> Value {
    match u64::try_from(n) {
        Ok(v) => json!(v),
        Err(_) => json!(n.to_string()),
    }
}

pub fn matrix(m: &GradedMatrix) -> Value {
    let ring = m.ring();
    let n = m.n();
    let rows: Vec<Vec<String>> = (0..n).map(|i| (0..n).map(|j| ring.format(m.entry(i, j))).collect()).collect();
    json!({ "degree": grade(m.degree()), "rows": rows })
}

fn letter(l: &Letter) -> Value {
    match l {
        Letter::Elementary { generator, inverse } => json!({
            "i": generator.row() + 1,
            "j": generator.col() + 1,
            "r": generator.ring().format(generator.entry()),
            "inverse": inverse,
        }),
        Letter::Conjugated { by, generator } => json!({
            "i": generator.row() + 1,
            "j": generator.col() + 1,
            "r": generator.ring().format(generator.entry()),
            "conjugated-by": by.letters().iter().map(letter).collect::<Vec<_>>(),
        }),
    }
}

pub fn certificate(c: &Certificate) -> Value {
    json!({
        "claim": matrix(c.claim()),
        "family": family(c.claim().family()),
        "verified": c.verified(),
        "letters": c.word().letters().iter().map(letter).collect::<Vec<_>>(),
    })
}

pub fn certificate_text(out: &mut String, name: &str, c: &Certificate) {
    let verdict = if c.verified() { "verified" } else { "FAILED" };
    let _ = writeln!(out, "  {name}: {verdict} over {}", c.claim().family());
    let _ = writeln!(out, "    claim {}", c.claim().format());
    for (k, l) in c.describe().iter().enumerate() {
        let _ = writeln!(out, "    {:>3}. {l}", k + 1);
    }
}

pub fn k1(r: &K1Report) -> Value {
    json!({
        "family": family(&r.family),
        "level": r.level,
        "gl-order": order(r.gl_order),
        "e-order": order(r.e_order),
        "gl-method": r.gl_method.name(),
        "e-method": r.e_method.name(),
        "normal": r.normal,
        "abelian": r.abelian,
        "invariants": r.invariants,
        "quotient-order": order(r.quotient_order),
        "representatives": r.representatives.iter().map(matrix).collect::<Vec<_>>(),
    })
}

fn invariants_text(inv: &Option<Vec<u64>>) -> String {
    match inv {
        None => "undetermined".into(),
        Some(v) if v.is_empty() => "trivial".into(),
        Some(v) => v.iter().map(|d| format!("Z/{d}")).collect::<Vec<_>>().join(" × "),
    }
}

pub fn k1_text(out: &mut String, title: &str, r: &K1Report) {
    let _ = writeln!(out, "{title} at family {} level {}", r.family, r.level);
    let _ = writeln!(out, "  |GL| = {} ({})", r.gl_order, r.gl_method.name());
    let _ = writeln!(out, "  |E|  = {} ({})", r.e_order, r.e_method.name());
    let _ = writeln!(out, "  E normal: {}", yes_no(r.normal));
    if let Some(a) = r.abelian {
        let _ = writeln!(out, "  quotient abelian: {}", yes_no(a));
    }
    let _ = writeln!(out, "  quotient order: {}", r.quotient_order);
    let _ = writeln!(out, "  invariants: {}", invariants_text(&r.invariants));
    if r.invariants.is_none() {
        let _ = writeln!(out, "  note: the quotient is not an abelian group at this level; try a higher level");
    }
    let _ = writeln!(out, "  coset representatives:");
    for m in &r.representatives {
        let _ = writeln!(out, "    {}", m.format());
    }
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

pub fn exactness(x: &ExactnessReport) -> Value {
    json!({
        "relative": k1(&x.relative),
        "absolute": k1(&x.absolute),
        "quotient": k1(&x.quotient),
        "inclusion": x.inclusion,
        "reduction": x.reduction,
        "image": x.image,
        "kernel": x.kernel,
        "well-defined": x.well_defined,
        "exact": x.exact,
    })
}

pub fn exactness_text(out: &mut String, x: &ExactnessReport) {
    k1_text(out, "K1(A, I)", &x.relative);
    k1_text(out, "K1(A)", &x.absolute);
    k1_text(out, "K1(A/I)", &x.quotient);
    let _ = writeln!(out, "(p2)_* on classes: {:?}", x.inclusion);
    let _ = writeln!(out, "q_* on classes: {:?}", x.reduction);
    let _ = writeln!(out, "image of (p2)_*: {:?}", x.image);
    let _ = writeln!(out, "kernel of q_*: {:?}", x.kernel);
    let _ = writeln!(out, "maps well defined on cosets: {}", yes_no(x.well_defined));
    let _ = writeln!(out, "{}", if x.exact { "exact" } else { "NOT exact" });
}

pub fn perfectness(p: &PerfectnessReport) -> Value {
    json!({
        "order": order(p.order),
        "commutator-order": order(p.commutator_order),
        "perfect": p.perfect,
        "witness": p.witness.as_ref().map(|w| json!({
            "i": w.row() + 1,
            "j": w.col() + 1,
            "r": w.ring().format(w.entry()),
        })),
        "witness-matrix": p.witness_matrix.as_ref().map(matrix),
    })
}

pub fn perfectness_text(out: &mut String, p: &PerfectnessReport) {
    let _ = writeln!(out, "  |E| = {}", p.order);
    let _ = writeln!(out, "  |[E, E]| = {}", p.commutator_order);
    if p.perfect {
        let _ = writeln!(out, "  perfect");
    } else {
        let _ = writeln!(out, "  NOT perfect");
        if let Some(w) = &p.witness {
            let _ = writeln!(out, "  witness outside [E, E]: {w}");
        }
        if let Some(m) = &p.witness_matrix {
            let _ = writeln!(out, "    {}", m.format());
        }
    }
}

pub fn gamma(g: &GammaActionReport, suspensions: &[SuspensionReport]) -> Value {
    json!({
        "k1": k1(&g.report),
        "trivial": g.trivial,
        "checks": g.checks.iter().map(|c| json!({
            "class": c.class,
            "lambda": grade(&c.lambda),
            "unit": g.report.representatives[c.class].ring().format(&c.unit),
            "moved-family": family(c.moved.family()),
            "certificate": certificate(&c.certificate),
        })).collect::<Vec<_>>(),
        "suspensions": suspensions.iter().map(suspension).collect::<Vec<_>>(),
    })
}

pub fn suspension(s: &SuspensionReport) -> Value {
    json!({
        "lambda": grade(&s.lambda),
        "original": k1(&s.original),
        "suspended": k1(&s.suspended),
        "map": s.map,
        "bijective": s.bijective,
    })
}

pub fn gamma_text(out: &mut String, g: &GammaActionReport, suspensions: &[SuspensionReport]) {
    k1_text(out, "K1(A)", &g.report);
    for c in &g.checks {
        let name = format!("class {} shifted by {}", c.class, c.lambda);
        certificate_text(out, &name, &c.certificate);
    }
    for s in suspensions {
        let _ = writeln!(
            out,
            "suspension by {}: invariants {} -> {}, classes mapped {:?}, bijective: {}",
            s.lambda,
            invariants_text(&s.original.invariants),
            invariants_text(&s.suspended.invariants),
            s.map,
            yes_no(s.bijective)
        );
    }
    let _ = writeln!(out, "Γ-action {}", if g.trivial { "trivial on every class" } else { "NOT certified trivial" });
}

pub fn stabilization(s: &StabilizationReport) -> Value {
    json!({
        "reports": s.reports.iter().map(k1).collect::<Vec<_>>(),
        "maps": s.maps,
        "bijective": s.bijective,
        "stable-from": s.stable_from,
    })
}

pub fn stabilization_text(out: &mut String, s: &StabilizationReport) {
    for (k, r) in s.reports.iter().enumerate() {
        let _ = writeln!(
            out,
            "level {}: |GL| = {}, |E| = {}, invariants {}",
            r.level,
            r.gl_order,
            r.e_order,
            invariants_text(&r.invariants)
        );
        if let (Some(map), Some(b)) = (s.maps.get(k), s.bijective.get(k)) {
            let _ = writeln!(out, "  -> next level: classes {:?}, bijective: {}", map, yes_no(*b));
        }
    }
    match s.stable_from {
        Some(l) => {
            let _ = writeln!(out, "stable from level {l} (empirical)");
        }
        None => {
            let _ = writeln!(out, "no stabilisation observed over these levels");
        }
    }
}

pub fn tallies(ts: &[IdentityTally]) -> Value {
    Value::Array(
        ts.iter()
            .map(|t| json!({ "identity": t.identity, "checked": t.checked, "failures": t.failures }))
            .collect(),
    )
}

pub fn tallies_text(out: &mut String, ts: &[IdentityTally]) {
    for t in ts {
        let _ = writeln!(out, "  {:<20} {:>5} checked, {} failed", t.identity, t.checked, t.failures);
    }
}

/// Serialises a finished job.
pub fn emit_report(spec: &JobSpec, outcome: &Outcome, format: Format) -> Vec<u8> {
    match format {
        Format::Structured => {
            let doc = json!({
                "command": spec.command().name(),
                "ring": spec.file().ring.label(),
                "family": family(spec.family()),
                "status": outcome.status.name(),
                "exit-code": outcome.status.exit_code(),
                "result": outcome.result,
            });
            let mut s = serde_json::to_string_pretty(&doc).expect("values serialise");
            s.push('\n');
            s.into_bytes()
        }
        Format::Text => {
            let mut s = format!("{} over {} with family {}\n", spec.command(), spec.file().ring.label(), spec.family());
            s.push_str(&outcome.text);
            let _ = writeln!(s, "status: {}", outcome.status.name());
            s.into_bytes()
        }
    }
}
