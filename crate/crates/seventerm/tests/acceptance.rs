//! One line per acceptance criterion; exits nonzero if any fails.

use std::process::ExitCode;
use std::time::Duration;

use seventerm::report::CheckReport;
use seventerm::{run_many, run_with, ProblemSpec, Report};
use seventerm_core::cohomology::cohomology;
use seventerm_core::fixtures::{self, klein4};
use seventerm_core::group::{FiniteGroup, GModule};
use seventerm_core::linalg::FgAbGroup;
use seventerm_core::oracle::{compare_with_oracle, Oracle};
use seventerm_core::seven_term::{seven_term, Context, Mutation};
use seventerm_core::Int;

const EXACTNESS_FIXTURES: [&str; 5] = ["fix-a", "fix-b", "fix-c", "fix-d", "fix-e"];
const BUDGET: Duration = Duration::from_secs(60);

type Outcome = Result<String, String>;

fn first_failure<'a>(reports: &'a [Report], section: impl Fn(&'a Report) -> Vec<&'a CheckReport>) -> Option<String> {
    for r in reports {
        let cs = section(r);
        if cs.is_empty() {
            return Some(format!("{}: section is empty", r.extension.name));
        }
        for c in cs {
            if c.verdict != "pass" {
                let detail = c.witness.as_deref().or(c.reason.as_deref()).unwrap_or("");
                return Some(format!("{}: {} is {} {detail}", r.extension.name, c.name, c.verdict));
            }
        }
        if let Some(e) = r.errors.first() {
            return Some(format!("{}: {} failed: {}", r.extension.name, e.name, e.witness.as_deref().unwrap_or("")));
        }
    }
    None
}

fn verdict(reports: &[Report], what: &str, section: impl for<'a> Fn(&'a Report) -> Vec<&'a CheckReport>) -> Outcome {
    match first_failure(reports, section) {
        None => Ok(format!("{what} on {} fixtures", reports.len())),
        Some(w) => Err(w),
    }
}

fn elapsed(r: &Report) -> Duration {
    Duration::from_millis(r.timing.as_ref().map_or(0, |t| t.stages_ms.iter().map(|(_, ms)| ms).sum()))
}

fn exactness(reports: &[Report]) -> Outcome {
    let chosen: Vec<Report> = reports.iter().filter(|r| EXACTNESS_FIXTURES.contains(&r.extension.name.as_str())).cloned().collect();
    if chosen.len() != EXACTNESS_FIXTURES.len() {
        return Err("missing fixtures".into());
    }
    verdict(&chosen, "five junctions exact", |r| r.junctions.iter().collect())?;
    let slowest = chosen.iter().max_by_key(|r| elapsed(r)).expect("nonempty");
    if elapsed(slowest) > BUDGET {
        return Err(format!("{} took {:?}", slowest.extension.name, elapsed(slowest)));
    }
    Ok(format!("five junctions exact on fix-a..fix-e, slowest {} in {:?}", slowest.extension.name, elapsed(slowest)))
}

fn known_values() -> Outcome {
    let z2 = FiniteGroup::cyclic(2);
    let m = |order| GModule::trivial(order, FgAbGroup::finite(&[2]).expect("Z/2"));
    let torsion = |g: &FiniteGroup, n| -> Result<Vec<i64>, String> {
        let h = cohomology(g, &m(g.order()), n).map_err(|e| e.to_string())?;
        Ok(h.group().torsion().iter().map(|d| d.to_i64().expect("small")).collect())
    };
    for n in 1..=3 {
        let t = torsion(&z2, n)?;
        if t != [2] {
            return Err(format!("H^{n}(Z/2, Z/2) has invariants {t:?}"));
        }
    }
    let t = torsion(&klein4(), 2)?;
    if t != [2, 2, 2] {
        return Err(format!("H^2((Z/2)^2, Z/2) has invariants {t:?}"));
    }
    let f = fixtures::by_name("fix-a").expect("fixture");
    let cx = Context::new(&f.group, &f.normal, &f.module).map_err(|e| e.to_string())?;
    let oracle = Oracle::new(&cx.ext, &cx.module).map_err(|e| e.to_string())?;
    let seq = seven_term(&cx, &oracle).map_err(|e| e.to_string())?;
    if cx.h1n_inv.group().order() != Some(Int::from(2)) || !seq.tr.is_injective() {
        return Err("fix-a: tr out of H1(N,M)^Q = Z/2 is not injective".into());
    }
    Ok("H^1, H^2, H^3 of Z/2 are Z/2; H^2 of (Z/2)^2 is (Z/2)^3; fix-a tr injective".into())
}

fn negative_control() -> Outcome {
    let f = fixtures::by_name("fix-a").expect("fixture");
    let cx = Context::new(&f.group, &f.normal, &f.module).map_err(|e| e.to_string())?;
    let oracle = Oracle::new(&cx.ext, &cx.module).map_err(|e| e.to_string())?;
    let clean = compare_with_oracle(&cx, &oracle, None).map_err(|e| e.to_string())?;
    if !clean.transgression.is_pass() {
        return Err(format!("unmutated comparison already fails: {}", clean.transgression));
    }
    let spec = ProblemSpec::named("fix-a");
    let problem = spec.validate().map_err(|e| e.to_string())?;
    let r = run_with(&spec, &problem, Some(Mutation { coordinate: 0 }));
    let c = r.oracle.comparison.first().ok_or("no comparison in the mutated report")?;
    match (&c.witness, r.flagged) {
        (Some(w), true) if c.is_fail() => Ok(format!("mutated tr rejected, witness: {w}")),
        _ => Err(format!("mutated tr was not rejected: {c:?}")),
    }
}

fn main() -> ExitCode {
    let problems: Vec<_> = fixtures::NAMES
        .iter()
        .map(|n| {
            let mut spec = ProblemSpec::named(n);
            spec.options.timing = true;
            let p = spec.validate().expect("fixtures validate");
            (spec, p)
        })
        .collect();
    let reports = run_many(&problems);

    let results: [(&str, Outcome); 8] = [
        ("exactness", exactness(&reports)),
        ("transgression coincidence", verdict(&reports, "tr = Δ = d2 and both explicit isomorphisms", |r| r.coincidence.iter().collect())),
        ("tr against d2^{0,1}", verdict(&reports, "row ∘ tr = d2 ∘ col⁻¹ elementwise", |r| r.oracle.comparison.iter().take(1).collect())),
        ("rho against E_inf^{1,1}", verdict(&reports, "|im ρ| = |E∞^{1,1}|, kernels and images agree", |r| r.oracle.comparison.iter().skip(1).collect())),
        ("oracle self-consistency", verdict(&reports, "d∘d = 0, filtration, orders, edge isomorphisms", |r| r.oracle.self_checks.iter().collect())),
        ("well-definedness", verdict(&reports, "3 seeded perturbations per class", |r| r.well_definedness.iter().collect())),
        ("known values", known_values()),
        ("negative control", negative_control()),
    ];
    let mut ok = true;
    for (i, (name, outcome)) in results.iter().enumerate() {
        match outcome {
            Ok(detail) => println!("criterion {}: PASS  {name}: {detail}", i + 1),
            Err(witness) => {
                ok = false;
                println!("criterion {}: FAIL  {name}: {witness}", i + 1);
            }
        }
    }
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
