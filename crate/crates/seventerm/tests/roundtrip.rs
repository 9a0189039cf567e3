use proptest::prelude::*;

use seventerm::problem::{ActionSpec, Checks, ModuleSpec, Options};
use seventerm::{run, ProblemSpec, Report};
use seventerm_core::fixtures;

fn options() -> impl Strategy<Value = Options> {
    (1usize..=3, prop_oneof![Just(Checks::All), Just(Checks::Exactness), Just(Checks::Coincidence)], any::<u64>(), 1usize..6, any::<bool>(), proptest::option::of("[a-z]{1,8}\\.json"))
        .prop_map(|(degree_max, checks, seed, perturbations, timing, report)| Options { degree_max, checks, report, seed, perturbations, timing })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn specs_round_trip(fixture in 0usize..8, explicit in any::<bool>(), trivial in any::<bool>(), opts in options()) {
        let name = fixtures::NAMES[fixture];
        let mut spec = if explicit { ProblemSpec::from_fixture(name).unwrap() } else { ProblemSpec::named(name) };
        if trivial {
            spec.module = Some(ModuleSpec { invariant_factors: vec![2], action: ActionSpec::Named("trivial".into()) });
        }
        spec.options = opts;
        let back = ProblemSpec::parse(&spec.emit()).unwrap();
        prop_assert_eq!(&back, &spec);
        prop_assert!(back.validate().is_ok());
    }
}

#[test]
fn reports_round_trip() {
    let spec = ProblemSpec::named("fix-b");
    let r = run(&spec, &spec.validate().unwrap());
    let back: Report = serde_json::from_str(&r.to_json()).unwrap();
    assert_eq!(back, r);
    assert_eq!(back.to_json(), r.to_json());
}
