use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::cohomology::{CohomologyClass, EmbeddedExtension, TABLE_LIMIT};
use crate::error::{Error, Result};
use crate::group::{semidirect_product, FiniteGroup, Semidirect};
use crate::int::Int;
use crate::linalg::AbHom;
use crate::seven_term::context::Context;

/// Left cosets `xS` of a normal subgroup `S` of a subgroup `H` of a table group.
#[derive(Clone, Debug)]
pub struct CosetQuotient {
    pub group: FiniteGroup,
    /// Coset label of each ambient element in `H`.
    pub label: Vec<Option<usize>>,
    /// Smallest member of each coset.
    pub reps: Vec<usize>,
}

pub fn coset_quotient(ambient_order: usize, mul: impl Fn(usize, usize) -> usize, members: &[usize], sub: &[usize]) -> Result<CosetQuotient> {
    let mut label = vec![None; ambient_order];
    let mut reps = Vec::new();
    let mut inside = vec![false; ambient_order];
    for &x in members {
        inside[x] = true;
    }
    for &x in members {
        if label[x].is_some() {
            continue;
        }
        for &s in sub {
            let y = mul(x, s);
            if !inside[y] {
                return Err(Error::Inconsistent(format!("coset of {x} leaves the subgroup")));
            }
            label[y] = Some(reps.len());
        }
        reps.push(x);
    }
    if reps.len() > TABLE_LIMIT {
        return Err(Error::SizeLimit { entries: reps.len(), limit: TABLE_LIMIT });
    }
    let group = FiniteGroup::from_fn(reps.len(), |a, b| label[mul(reps[a], reps[b])].expect("subgroup is closed"))?;
    Ok(CosetQuotient { group, label, reps })
}

/// Faults injected into the factor set inside [`tr_normalizer_with`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Mutation {
    /// Coordinate of the factor-set cochain to corrupt.
    pub coordinate: usize,
}

/// `N_{M⋊G}(sN)/sN` as an extension of `Q` by `M^N`.
#[derive(Clone, Debug)]
pub struct NormalizerQuotient {
    pub semidirect: Semidirect,
    /// `s(n) = (φ(n), n)` per position in `N`.
    pub section: Vec<usize>,
    pub normalizer: Vec<usize>,
    pub quotient: CosetQuotient,
    pub extension: EmbeddedExtension,
}

pub fn normalizer_quotient(cx: &Context, phi: &[Int]) -> Result<NormalizerQuotient> {
    cx.invariant_class(phi)?;
    let ext = &cx.ext;
    let g = ext.g();
    let go = g.order();
    let sd = semidirect_product(&cx.module, g);
    let amb = sd.group();
    let vals = cx.cocycle_indices(phi);
    let section: Vec<usize> = ext.n().iter().zip(&vals).map(|(&n, &v)| sd.index(v, n)).collect();
    let mut in_sn = vec![false; amb.order()];
    for &x in &section {
        in_sn[x] = true;
    }
    let normalizer: Vec<usize> = (0..amb.order()).filter(|&x| section.iter().all(|&y| in_sn[amb.conj(x, y)])).collect();
    let mut covered = vec![false; go];
    for &x in &normalizer {
        covered[sd.parts(x).1] = true;
    }
    if let Some(x) = covered.iter().position(|c| !c) {
        return Err(Error::Precondition(format!("normalizer of s(N) does not meet the fibre over {x}")));
    }
    let m = cx.module.module();
    let inv = &cx.fixed.invariants;
    for &x in &normalizer {
        let (a, gx) = sd.parts(x);
        if gx == 0 && !inv.contains(&m.element(a)) {
            return Err(Error::Inconsistent(format!("normalizer contains ({:?}, 1) outside M^N", m.element(a))));
        }
    }
    let fixed = cx.fixed_element_indices();
    if normalizer.len() != fixed.len() * go {
        return Err(Error::Inconsistent(format!("normalizer has order {} instead of |M^N|·|G| = {}", normalizer.len(), fixed.len() * go)));
    }
    let quotient = coset_quotient(amb.order(), |a, b| amb.mul(a, b), &normalizer, &section)?;
    let kernel = fixed.iter().map(|&a| quotient.label[sd.index(a, 0)].expect("M^N normalizes s(N)")).collect();
    let projection = quotient.reps.iter().map(|&x| ext.pi(sd.parts(x).1)).collect();
    let extension = EmbeddedExtension { group: quotient.group.clone(), kernel, projection };
    Ok(NormalizerQuotient { semidirect: sd, section, normalizer, quotient, extension })
}

/// Class of `N_{M⋊G}(sN)/sN` in `H²(Q, M^N)`.
pub fn tr_normalizer(cx: &Context, phi: &[Int]) -> Result<CohomologyClass> {
    tr_normalizer_with(cx, phi, None)
}

pub fn tr_normalizer_with(cx: &Context, phi: &[Int], mutation: Option<Mutation>) -> Result<CohomologyClass> {
    let nq = normalizer_quotient(cx, phi)?;
    let space = cx.h2q.space();
    let mut f = nq.extension.factor_set(cx.ext.q(), &cx.fixed.module, space)?;
    if let Some(mu) = mutation {
        if !f.is_empty() {
            let i = mu.coordinate % f.len();
            f[i] += &Int::ONE;
            space.reduce(&mut f);
        }
    }
    cx.h2q.class_of(&f)
}

/// `tr: H¹(N, M)^Q -> H²(Q, M^N)` on generators, checked additive on every element.
pub fn tr_map(cx: &Context) -> Result<AbHom> {
    let src = cx.h1n_inv.group();
    let images: Vec<Vec<Int>> = (0..src.ngens())
        .map(|i| {
            let mut e = src.zero();
            e[i] = Int::ONE;
            Ok(tr_normalizer(cx, &cx.invariant_representative(&e))?.coords)
        })
        .collect::<Result<_>>()?;
    let map = AbHom::from_images(src.clone(), cx.h2q.group().clone(), &images)?;
    for a in src.elements() {
        let direct = tr_normalizer(cx, &cx.invariant_representative(&a))?.coords;
        if direct != map.apply(&a) {
            return Err(Error::Inconsistent(format!("tr is not additive at {a:?}")));
        }
    }
    Ok(map)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn context(name: &str) -> Context {
        let f = fixtures::by_name(name).unwrap();
        Context::new(&f.group, &f.normal, &f.module).unwrap()
    }

    #[test]
    fn fix_a_generator_is_nonzero() {
        let cx = context("fix-a");
        assert_eq!(cx.h1n_inv.group().order(), Some(Int::from(2)));
        let phi = cx.invariant_representative(&[Int::ONE]);
        let c = tr_normalizer(&cx, &phi).unwrap();
        assert_eq!(c.coords, vec![Int::ONE]);
        let zero = tr_normalizer(&cx, &cx.h1n.space().zero()).unwrap();
        assert!(cx.h2q.group().is_zero(&zero.coords));
    }

    #[test]
    fn fix_b_zero_splits_and_fix_c_target_vanishes() {
        let cx = context("fix-b");
        let c = tr_normalizer(&cx, &cx.h1n.space().zero()).unwrap();
        assert!(cx.h2q.group().is_zero(&c.coords));
        let cx = context("fix-c");
        assert_eq!(cx.h1n_inv.group().order(), Some(Int::from(3)));
        assert!(cx.h2q.group().is_trivial());
        let phi = cx.invariant_representative(&[Int::ONE]);
        assert!(tr_normalizer(&cx, &phi).unwrap().coords.is_empty());
    }

    #[test]
    fn non_invariant_class_is_rejected() {
        let d8 = fixtures::dihedral8();
        let m = crate::group::GModule::trivial(8, crate::linalg::FgAbGroup::finite(&[2]).unwrap());
        let cx = Context::new(&d8, &[0, 2, 4, 6], &m).unwrap();
        let moved = cx.h1n.group().elements().find(|c| (0..cx.ext.q().order()).any(|q| cx.h1n_module.act(q, c) != *c));
        let z = cx.h1n.representative(&moved.unwrap());
        assert!(matches!(tr_normalizer(&cx, &z), Err(Error::NotInvariant(_))));
    }

    #[test]
    fn quotient_has_expected_order() {
        for f in fixtures::all() {
            let cx = Context::new(&f.group, &f.normal, &f.module).unwrap();
            for a in cx.h1n_inv.group().elements() {
                let nq = normalizer_quotient(&cx, &cx.invariant_representative(&a)).unwrap();
                let fixed = cx.fixed.invariants.group().order().unwrap();
                assert_eq!(Int::from(nq.extension.group.order()), fixed * Int::from(cx.ext.q().order()), "{}", f.name);
            }
        }
    }
}
