//! The pipeline from a validated problem to a report.

use std::time::Instant;

use seventerm_core::oracle::{compare_with_oracle, supported, Oracle};
use seventerm_core::perturb::Perturber;
use seventerm_core::seven_term::sequence::{GROUP_LABELS, MAP_LABELS};
use seventerm_core::seven_term::{coincidence, seven_term, well_definedness, Context, Mutation};
use seventerm_core::{Check, Error, Verdict};

use crate::problem::{Checks, Problem, ProblemSpec};
use crate::report::{checks, CheckReport, ExtensionReport, GroupReport, MapReport, OracleReport, PageReport, Report, Timing};

struct Stopwatch {
    on: bool,
    last: Instant,
    stages: Vec<(String, u64)>,
}

impl Stopwatch {
    fn new(on: bool) -> Self {
        Stopwatch { on, last: Instant::now(), stages: Vec::new() }
    }

    fn lap(&mut self, stage: &str) {
        if self.on {
            let now = Instant::now();
            self.stages.push((stage.into(), (now - self.last).as_millis() as u64));
            self.last = now;
        }
    }
}

fn not_selected(names: &[&str], checks: Checks) -> Vec<CheckReport> {
    let reason = format!("not selected (checks = {})", serde_json::to_value(checks).expect("enum").as_str().unwrap_or("?"));
    names.iter().map(|n| CheckReport::new(*n, &Verdict::skipped(reason.clone()))).collect()
}

fn error_check(stage: &str, e: &Error) -> CheckReport {
    CheckReport::new(stage, &Verdict::fail(e.to_string()))
}

pub fn run(spec: &ProblemSpec, problem: &Problem) -> Report {
    run_with(spec, problem, None)
}

/// Runs the pipeline; `mutation` corrupts the factor set used by `tr` in the
/// comparison against the oracle.
pub fn run_with(spec: &ProblemSpec, problem: &Problem, mutation: Option<Mutation>) -> Report {
    let opts = &spec.options;
    let ext = &problem.ext;
    let mut report = Report {
        flagged: false,
        status: String::new(),
        input: spec.clone(),
        extension: ExtensionReport {
            name: problem.name.clone(),
            order_g: ext.g().order(),
            normal_subgroup: ext.n().to_vec(),
            order_q: ext.q().order(),
            module: GroupReport::new("M", problem.module.module()),
        },
        groups: Vec::new(),
        maps: Vec::new(),
        junctions: Vec::new(),
        coincidence: Vec::new(),
        oracle: OracleReport::default(),
        well_definedness: Vec::new(),
        errors: Vec::new(),
        timing: None,
    };
    let mut clock = Stopwatch::new(opts.timing);
    let mut rng = Perturber::new(opts.seed);
    let all = opts.checks == Checks::All;

    let cx = match Context::from_extension(ext.clone(), &problem.module) {
        Ok(cx) => cx,
        Err(e) => {
            report.errors.push(error_check("cohomology", &e));
            report.seal();
            return report;
        }
    };
    clock.lap("cohomology");
    let oracle = match Oracle::new(&cx.ext, &cx.module) {
        Ok(o) => o,
        Err(e) => {
            report.errors.push(error_check("oracle", &e));
            report.seal();
            return report;
        }
    };
    clock.lap("oracle");

    match seven_term(&cx, &oracle) {
        Ok(seq) => {
            report.groups = GROUP_LABELS.iter().zip(&seq.groups).map(|(l, g)| GroupReport::new(*l, g)).collect();
            report.maps = seq.maps().iter().enumerate().map(|(i, f)| MapReport::new(MAP_LABELS[i], GROUP_LABELS[i], GROUP_LABELS[i + 1], f)).collect();
            report.junctions = if opts.checks == Checks::Coincidence { not_selected(&GROUP_LABELS[..5], opts.checks) } else { checks(&seq.junctions()) };
            report.oracle.image_rho_order = seq.rho.image().order().as_ref().map(Into::into);
        }
        Err(e) => report.errors.push(error_check("sequence", &e)),
    }
    clock.lap("sequence");

    const COINCIDENCE: [&str; 3] = ["tr = Δ = d2 (fiber product)", "fiber product vs Out(e_M)", "naive semidirect vs Aut(e_M)"];
    if opts.checks == Checks::Exactness {
        report.coincidence = not_selected(&COINCIDENCE, opts.checks);
    } else {
        match coincidence(&cx) {
            Ok(cs) => report.coincidence = checks(&cs),
            Err(e) => report.errors.push(error_check("coincidence", &e)),
        }
    }
    clock.lap("coincidence");

    report.oracle.pages = (0..=opts.degree_max)
        .flat_map(|n| (0..=n).rev().map(move |p| (p, n - p)))
        .filter(|&(p, q)| supported(p, q))
        .filter_map(|(p, q)| match oracle.page(p, q) {
            Ok(page) => Some(PageReport { p, q, group: GroupReport::new(format!("E2^{{{p},{q}}}"), page.group()) }),
            Err(e) => {
                report.errors.push(error_check(&format!("E2^{{{p},{q}}}"), &e));
                None
            }
        })
        .collect();
    report.oracle.einfty_11_order = oracle.einfty_11().order().as_ref().map(Into::into);

    const COMPARISON: [&str; 3] = ["tr against d2^{0,1}", "rho against E_inf^{1,1}", "junction at H1(Q,H1(N,M))"];
    const SELF: [&str; 7] = ["d∘d = 0", "d(F^p) ⊆ F^p", "F^{p+1} ⊆ F^p", "order bookkeeping", "edge isomorphisms", "d₂ independent of representatives", "d₂∘d₂ = 0"];
    const WELL: [&str; 4] = ["tr under φ + dβ", "rho under z + dβ and section changes", "d(q) independent of the lift", "f1 independent of representatives"];
    if all {
        match compare_with_oracle(&cx, &oracle, mutation) {
            Ok(c) => {
                report.oracle.twist = c.twist;
                report.oracle.comparison =
                    checks(&[Check::new(COMPARISON[0], c.transgression), Check::new(COMPARISON[1], c.rho), Check::new(COMPARISON[2], c.junction)]);
            }
            Err(e) => report.errors.push(error_check("oracle comparison", &e)),
        }
        clock.lap("comparison");
        match oracle.self_checks(&cx, &mut rng, opts.degree_max) {
            Ok(cs) => report.oracle.self_checks = checks(&cs),
            Err(e) => report.errors.push(error_check("oracle self-checks", &e)),
        }
        clock.lap("self-checks");
        match well_definedness(&cx, &mut rng, opts.perturbations) {
            Ok(cs) => report.well_definedness = checks(&cs),
            Err(e) => report.errors.push(error_check("well-definedness", &e)),
        }
        let f1 = oracle.f1_map(&cx).and_then(|m| oracle.f1_well_defined(&cx, &m, &mut rng, opts.perturbations));
        match f1 {
            Ok(v) => report.well_definedness.push(CheckReport::new(WELL[3], &v)),
            Err(e) => report.errors.push(error_check("f1", &e)),
        }
        clock.lap("well-definedness");
    } else {
        report.oracle.comparison = not_selected(&COMPARISON, opts.checks);
        report.oracle.self_checks = not_selected(&SELF, opts.checks);
        report.well_definedness = not_selected(&WELL, opts.checks);
    }

    if opts.timing {
        report.timing = Some(Timing { stages_ms: clock.stages });
    }
    report.seal();
    report
}

/// Runs independent problems on separate threads; reports come back ordered
/// by problem name.
pub fn run_many(problems: &[(ProblemSpec, Problem)]) -> Vec<Report> {
    let mut reports: Vec<Report> = std::thread::scope(|s| {
        let handles: Vec<_> = problems.iter().map(|(spec, p)| s.spawn(move || run(spec, p))).collect();
        handles.into_iter().map(|h| h.join().expect("pipeline thread panicked")).collect()
    });
    reports.sort_by(|a, b| a.extension.name.cmp(&b.extension.name));
    reports
}

#[cfg(test)]
mod tests {
    use super::*;

    fn report(name: &str, checks: Checks) -> Report {
        let mut spec = ProblemSpec::named(name);
        spec.options.checks = checks;
        let p = spec.validate().unwrap();
        run(&spec, &p)
    }

    #[test]
    fn fix_a_passes_everything() {
        let r = report("fix-a", Checks::All);
        assert!(!r.flagged, "{}", r.summary());
        assert_eq!(r.status, "pass");
        assert_eq!(r.groups.len(), 7);
        assert_eq!(r.maps.len(), 6);
        assert!(r.all_checks().all(|c| c.verdict == "pass"));
    }

    #[test]
    fn unselected_sections_are_skipped() {
        let r = report("fix-b", Checks::Exactness);
        assert_eq!(r.status, "pass");
        assert!(r.coincidence.iter().all(|c| c.verdict == "skipped"));
        assert!(r.junctions.iter().all(|c| c.verdict == "pass"));
        let r = report("fix-b", Checks::Coincidence);
        assert!(r.junctions.iter().all(|c| c.verdict == "skipped"));
        assert!(r.coincidence.iter().all(|c| c.verdict == "pass"));
    }

    #[test]
    fn degenerate_quotient_has_trivial_q_terms() {
        let r = report("full-n", Checks::All);
        assert!(!r.flagged, "{}", r.summary());
        for i in [0, 3, 6] {
            assert_eq!(r.groups[i].describe(), "0");
        }
    }

    #[test]
    fn fix_d_records_einfty_and_image_of_rho() {
        let r = report("fix-d", Checks::All);
        assert!(!r.flagged);
        assert!(r.oracle.einfty_11_order.is_some());
        assert_eq!(r.oracle.einfty_11_order, r.oracle.image_rho_order);
    }

    #[test]
    fn mutation_flags_the_report() {
        let spec = ProblemSpec::named("fix-a");
        let r = run_with(&spec, &spec.validate().unwrap(), Some(Mutation { coordinate: 0 }));
        assert!(r.flagged);
        let c = &r.oracle.comparison[0];
        assert!(c.is_fail() && c.witness.is_some());
    }
}
