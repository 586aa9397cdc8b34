use graded_k1_core::engine::{
    check_exactness, elementary_group, gamma_action_check, k1_local, k1_relative_local, perfectness_check,
    stabilization_check, suspension_check,
};
use graded_k1_core::sampling::fuzz_identities;
use graded_k1_core::whitehead::{
    conjugate_block_factorization, hyperbolic_factorization, stable_perfectness_witness,
    strongly_graded_perfectness_witness,
};
use graded_k1_core::{Certificate, Error};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::job::{Command, JobSpec};
use crate::report::{self, Outcome, Status};

/// Runs a validated job. Engine errors become `Truncated` or `Invalid` outcomes.
pub fn run_job(spec: &JobSpec) -> Outcome {
    let result = match spec.command() {
        Command::VerifyIdentities => verify_identities(spec),
        Command::K1 => k1(spec),
        Command::RelativeK1 => relative_k1(spec),
        Command::Exactness => exactness(spec),
        Command::Perfectness => perfectness(spec),
        Command::GammaAction => gamma_action(spec),
        Command::Stabilization => stabilization(spec),
    };
    result.unwrap_or_else(|e| {
        let status = match e {
            Error::Truncated { .. } => Status::Truncated,
            _ => Status::Invalid,
        };
        Outcome {
            status,
            result: json!({ "error": { "code": e.code(), "message": e.to_string() } }),
            text: format!("error [{}]: {e}\n", e.code()),
        }
    })
}

fn verdict(ok: bool) -> Status {
    if ok {
        Status::Ok
    } else {
        Status::Failed
    }
}

fn verify_identities(spec: &JobSpec) -> Result<Outcome, Error> {
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed());
    let tallies = fuzz_identities(spec.ring(), spec.family(), spec.samples(), &mut rng)?;
    let mut certs: Vec<(String, Certificate)> = Vec::new();
    if let Some(h) = spec.matrix() {
        certs.push(("hyperbolic".into(), hyperbolic_factorization(h)?));
        for lambda in spec.lambdas() {
            if let Some(r) = spec.ring().find_unit(lambda) {
                certs.push((format!("conjugate-block by {lambda}"), conjugate_block_factorization(h, &r)?));
            }
        }
    }
    for e in spec.elementary() {
        certs.push((format!("stable-perfectness {e}"), stable_perfectness_witness(e)?));
        if spec.family().len() >= 3 {
            if let Ok(c) = strongly_graded_perfectness_witness(e, None) {
                certs.push((format!("strong-perfectness {e}"), c));
            }
        }
    }
    let ok = tallies.iter().all(|t| t.failures == 0) && certs.iter().all(|(_, c)| c.verified());
    let mut text = String::new();
    report::tallies_text(&mut text, &tallies);
    for (name, c) in &certs {
        report::certificate_text(&mut text, name, c);
    }
    let result = json!({
        "seed": spec.seed(),
        "samples": spec.samples(),
        "fuzz": report::tallies(&tallies),
        "certificates": certs.iter().map(|(n, c)| json!({ "name": n, "certificate": report::certificate(c) })).collect::<Vec<_>>(),
    });
    Ok(Outcome { status: verdict(ok), result, text })
}

fn k1(spec: &JobSpec) -> Result<Outcome, Error> {
    let r = k1_local(spec.ring(), spec.family(), spec.level(), &spec.engine())?;
    let mut text = String::new();
    report::k1_text(&mut text, "K1", &r);
    Ok(Outcome { status: Status::Ok, result: report::k1(&r), text })
}

fn relative_k1(spec: &JobSpec) -> Result<Outcome, Error> {
    let ideal = spec.ideal().expect("validated: relative-k1 has an ideal");
    let r = k1_relative_local(spec.ring(), ideal, spec.family(), spec.level(), &spec.engine())?;
    let mut text = String::new();
    report::k1_text(&mut text, "K1(A, I)", &r);
    Ok(Outcome { status: Status::Ok, result: report::k1(&r), text })
}

fn exactness(spec: &JobSpec) -> Result<Outcome, Error> {
    let ideal = spec.ideal().expect("validated: exactness has an ideal");
    let x = check_exactness(spec.ring(), ideal, spec.family(), spec.level(), &spec.engine())?;
    let mut text = String::new();
    report::exactness_text(&mut text, &x);
    Ok(Outcome { status: verdict(x.exact && x.well_defined), result: report::exactness(&x), text })
}

fn perfectness(spec: &JobSpec) -> Result<Outcome, Error> {
    let cfg = spec.engine();
    let e = elementary_group(spec.ring(), spec.family(), spec.level(), &cfg)?;
    let p = perfectness_check(&e, &cfg)?;
    let mut text = String::new();
    report::perfectness_text(&mut text, &p);

    // constructive witnesses, available when the needed degrees admit strong-grading witnesses
    let mut strong: Vec<Value> = Vec::new();
    let mut strong_ok = true;
    let labels: Vec<_> = (0..e.generators().len()).filter_map(|k| e.label(k).cloned()).collect();
    let mut unavailable = None;
    if spec.family().len() * spec.level() >= 3 {
        for g in &labels {
            match strongly_graded_perfectness_witness(g, None) {
                Ok(c) => {
                    strong_ok &= c.verified();
                    let _ = std::fmt::Write::write_fmt(
                        &mut text,
                        format_args!("  {g}: {}\n", if c.verified() { "certified" } else { "FAILED" }),
                    );
                    strong.push(json!({ "generator": g.to_string(), "certificate": report::certificate(&c) }));
                }
                Err(err @ Error::WitnessUnavailable(_)) => {
                    unavailable = Some(err.to_string());
                    strong.clear();
                    break;
                }
                Err(err) => return Err(err),
            }
        }
    } else {
        unavailable = Some("fewer than three shifts".to_string());
    }
    if let Some(reason) = &unavailable {
        text.push_str(&format!("  strong-grading witnesses unavailable: {reason}\n"));
    }
    let mut result = report::perfectness(&p);
    result["strong-witnesses"] = match unavailable {
        Some(reason) => json!({ "available": false, "reason": reason }),
        None => json!({ "available": true, "all-verified": strong_ok, "generators": strong }),
    };
    Ok(Outcome { status: verdict(strong_ok), result, text })
}

fn gamma_action(spec: &JobSpec) -> Result<Outcome, Error> {
    let cfg = spec.engine();
    let g = gamma_action_check(spec.ring(), spec.family(), spec.level(), spec.lambdas(), &cfg)?;
    let suspensions = spec
        .lambdas()
        .iter()
        .map(|l| suspension_check(spec.ring(), spec.family(), spec.level(), l, &cfg))
        .collect::<Result<Vec<_>, _>>()?;
    let ok = g.trivial
        && suspensions.iter().all(|s| s.bijective && s.original.invariants == s.suspended.invariants);
    let mut text = String::new();
    report::gamma_text(&mut text, &g, &suspensions);
    Ok(Outcome { status: verdict(ok), result: report::gamma(&g, &suspensions), text })
}

fn stabilization(spec: &JobSpec) -> Result<Outcome, Error> {
    let s = stabilization_check(spec.ring(), spec.family(), &spec.levels(), &spec.engine())?;
    let mut text = String::new();
    report::stabilization_text(&mut text, &s);
    Ok(Outcome { status: Status::Ok, result: report::stabilization(&s), text })
}
