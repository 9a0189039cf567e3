use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec::Vec;

use crate::cohomology::inflation;
use crate::error::Result;
use crate::oracle::Oracle;
use crate::seven_term::{rho_map, tr_normalizer_with, Context, Mutation};
use crate::verdict::Verdict;

/// The seven-term maps measured against the spectral sequence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleComparison {
    /// `row ∘ tr = d₂^{0,1} ∘ col⁻¹` on every element of `H¹(N, M)^Q`.
    pub transgression: Verdict,
    /// The sign `±1` with `row ∘ tr = ±d₂ ∘ col⁻¹`, if either holds.
    pub twist: Option<i64>,
    /// `ρ` against `f¹: F¹H² -> E_∞^{1,1}`.
    pub rho: Verdict,
    /// Exactness at `H¹(Q, H¹(N, M))` with `d₂^{1,1}` as the next map.
    pub junction: Verdict,
}

impl OracleComparison {
    pub fn verdict(&self) -> Verdict {
        Verdict::all([self.transgression.clone(), self.rho.clone(), self.junction.clone()])
    }
}

pub fn compare_with_oracle(cx: &Context, oracle: &Oracle, mutation: Option<Mutation>) -> Result<OracleComparison> {
    let (transgression, twist) = compare_transgression(cx, oracle, mutation)?;
    let (rho, junction) = compare_rho(cx, oracle)?;
    Ok(OracleComparison { transgression, twist, rho, junction })
}

fn compare_transgression(cx: &Context, oracle: &Oracle, mutation: Option<Mutation>) -> Result<(Verdict, Option<i64>)> {
    let row = oracle.row_edge(&cx.h2q, &cx.fixed)?;
    let col = oracle.col_edge(cx)?;
    let mut col_inverse = BTreeMap::new();
    for e in oracle.e01.group().elements() {
        col_inverse.entry(col.apply(&e)).or_insert(e);
    }
    let e20 = oracle.e20.group();
    let (mut plus, mut minus) = (None, None);
    for a in cx.h1n_inv.group().elements() {
        let Some(pre) = col_inverse.get(&a) else {
            return Ok((Verdict::fail(format!("{a:?} has no preimage under the column edge map")), None));
        };
        let tr = match tr_normalizer_with(cx, &cx.invariant_representative(&a), mutation) {
            Ok(c) => c.coords,
            Err(e) => return Ok((Verdict::fail(format!("tr({a:?}) failed: {e}")), None)),
        };
        let lhs = row.apply(&tr);
        let rhs = oracle.d2_01.apply(pre);
        if plus.is_none() && lhs != rhs {
            plus = Some(format!("row(tr({a:?})) = {lhs:?} but d₂(col⁻¹({a:?})) = {rhs:?}"));
        }
        if minus.is_none() && lhs != e20.neg(&rhs) {
            minus = Some(a);
        }
    }
    let twist = match (&plus, &minus) {
        (None, _) => Some(1),
        (Some(_), None) => Some(-1),
        _ => None,
    };
    let verdict = match plus {
        None => Verdict::Pass,
        Some(w) => Verdict::fail(w),
    };
    Ok((verdict, twist))
}

fn compare_rho(cx: &Context, oracle: &Oracle) -> Result<(Verdict, Verdict)> {
    let rho = rho_map(cx)?;
    let f1 = oracle.f1_map(cx)?;
    let e11 = oracle.einfty_11();
    let order = |s: &crate::linalg::Subgroup| s.order().expect("finite");
    let im_rho = order(&rho.image());
    let ker_d2 = order(&e11);

    let mut checks = Vec::new();
    checks.push(Verdict::check(im_rho == ker_d2, || format!("|im ρ| = {im_rho} but |E∞^{{1,1}}| = {ker_d2}")));
    let (kr, kf) = (rho.kernel(), f1.kernel());
    let witness = cx.h2g1.group().elements().find(|a| kr.contains(a) != kf.contains(a));
    checks.push(Verdict::check(witness.is_none(), || format!("ker ρ and ker f¹ differ at {:?}", witness.clone().unwrap_or_default())));
    checks.push(Verdict::check(f1.image().same_as(&e11), || "im f¹ differs from E∞^{1,1}".into()));
    let inf = inflation(&cx.h2q, &cx.h2g, &cx.ext, &cx.fixed)?.image();
    let witness = cx.h2g1.group().elements().find(|a| kr.contains(a) != inf.contains(&cx.h2g1.include(a)));
    checks.push(Verdict::check(witness.is_none(), || format!("ker ρ and im(inf) ∩ H²(G,M)₁ differ at {:?}", witness.clone().unwrap_or_default())));
    let rho_verdict = Verdict::all(checks);

    let a6 = cx.h1q_h1n.group();
    let e11_page = oracle.e11.group();
    let junction = Verdict::all([
        Verdict::check(a6.torsion() == e11_page.torsion() && a6.rank() == e11_page.rank(), || {
            format!("H¹(Q, H¹(N,M)) has invariants {:?} but E₂^{{1,1}} has {:?}", a6.torsion(), e11_page.torsion())
        }),
        Verdict::check(im_rho == ker_d2, || format!("|im ρ| = {im_rho} but |ker d₂^{{1,1}}| = {ker_d2}")),
    ]);
    Ok((rho_verdict, junction))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn setup(name: &str) -> (Context, Oracle) {
        let f = fixtures::by_name(name).unwrap();
        let cx = Context::new(&f.group, &f.normal, &f.module).unwrap();
        let o = Oracle::new(&cx.ext, &cx.module).unwrap();
        (cx, o)
    }

    #[test]
    fn every_fixture_agrees_with_the_oracle() {
        for name in fixtures::NAMES {
            let (cx, o) = setup(name);
            let c = compare_with_oracle(&cx, &o, None).unwrap();
            assert_eq!(c.verdict(), Verdict::Pass, "{name}: {c:?}");
            assert_eq!(c.twist, Some(1), "{name}");
        }
    }

    #[test]
    fn sign_is_detected_over_z3() {
        let (cx, o) = setup("z9-over-z3");
        let c = compare_with_oracle(&cx, &o, None).unwrap();
        assert_eq!(c.twist, Some(1));
        // d₂ has order-3 image here, so +1 and −1 are distinguishable.
        assert!(!o.d2_01.kernel().is_everything());
    }

    #[test]
    fn mutation_breaks_the_transgression_check() {
        let (cx, o) = setup("fix-a");
        let c = compare_with_oracle(&cx, &o, Some(Mutation { coordinate: 0 })).unwrap();
        assert!(c.transgression.is_fail(), "{c:?}");
    }
}
