use alloc::format;
use alloc::vec::Vec;

use crate::cohomology::cochain::{apply, pullback, CochainSpace};
use crate::cohomology::group::{induced_map, Cohomology, CohomologyClass};
use crate::error::{Error, Result};
use crate::group::{FixedModule, GModule, GroupExtension};
use crate::int::Int;
use crate::linalg::{AbHom, IntMatrix, PresentedSubgroup};

/// Cochain-level restriction along a subgroup embedding.
pub fn restriction_matrix(h_g: &Cohomology, h_sub: &Cohomology, embed: &[usize]) -> IntMatrix {
    pullback(h_g.space(), h_sub.space(), Some(embed), None)
}

pub fn restriction(h_g: &Cohomology, h_sub: &Cohomology, embed: &[usize]) -> Result<AbHom> {
    induced_map(h_g, h_sub, &restriction_matrix(h_g, h_sub, embed))
}

pub fn restrict_class(cls: &CohomologyClass, h_g: &Cohomology, h_sub: &Cohomology, embed: &[usize]) -> Result<CohomologyClass> {
    let z = apply(&restriction_matrix(h_g, h_sub, embed), h_sub.space(), &cls.representative);
    h_sub.class_of(&z)
}

/// Cochain-level inflation `Cⁿ(Q, M^N) -> Cⁿ(G, M)`.
pub fn inflation_matrix(h_q: &Cohomology, h_g: &Cohomology, ext: &GroupExtension, fixed: &FixedModule) -> IntMatrix {
    pullback(h_q.space(), h_g.space(), Some(ext.pi_map()), Some(&fixed.invariants.inclusion().matrix))
}

pub fn inflation(h_q: &Cohomology, h_g: &Cohomology, ext: &GroupExtension, fixed: &FixedModule) -> Result<AbHom> {
    induced_map(h_q, h_g, &inflation_matrix(h_q, h_g, ext, fixed))
}

pub fn inflate_class(cls: &CohomologyClass, h_q: &Cohomology, h_g: &Cohomology, ext: &GroupExtension, fixed: &FixedModule) -> Result<CohomologyClass> {
    let z = apply(&inflation_matrix(h_q, h_g, ext, fixed), h_g.space(), &cls.representative);
    h_g.class_of(&z)
}

/// `(x·f)(n₁, …) = x·f(x⁻¹n₁x, …)` on cochains of `N` with values in `M`.
pub fn conjugation_matrix(ext: &GroupExtension, module: &GModule, space: &CochainSpace, x: usize) -> IntMatrix {
    let g = ext.g();
    let xi = g.inv(x);
    let map: Vec<usize> = ext
        .n()
        .iter()
        .map(|&n| ext.n_position(g.conj(xi, n)).expect("N is normal"))
        .collect();
    let base = pullback(space, space, Some(&map), None);
    let k = space.ngens();
    let mut out = IntMatrix::zeros(space.dim(), space.dim());
    let act = module.act_matrix(x);
    for t in 0..space.tuple_count() {
        for s in 0..space.tuple_count() {
            for j in 0..k {
                if base[(t * k + j, s * k + j)].is_zero() {
                    continue;
                }
                for i in 0..k {
                    out[(t * k + i, s * k + j)] = act[(i, j)].clone();
                }
            }
        }
    }
    out
}

/// The induced action of `Q` on `Hⁿ(N, M)`, checked to agree for every lift.
pub fn q_action(ext: &GroupExtension, module: &GModule, h_n: &Cohomology) -> Result<GModule> {
    let mut act = Vec::with_capacity(ext.q().order());
    for q in 0..ext.q().order() {
        let mut chosen: Option<IntMatrix> = None;
        for x in ext.lifts(q) {
            let c = conjugation_matrix(ext, module, h_n.space(), x);
            let m = induced_map(h_n, h_n, &c)?.matrix;
            match &chosen {
                None => chosen = Some(m),
                Some(prev) if *prev != m => {
                    return Err(Error::Inconsistent(format!("lifts {} and {x} of {q} act differently on cohomology", ext.sigma(q))));
                }
                Some(_) => {}
            }
        }
        act.push(chosen.expect("every coset is nonempty"));
    }
    GModule::new(ext.q(), h_n.group().clone(), act)
}

/// `H¹(N, M)` as a `Q`-module.
pub fn q_action_on_h1(ext: &GroupExtension, module: &GModule, h1n: &Cohomology) -> Result<GModule> {
    if h1n.degree() != 1 {
        return Err(Error::DegreeOutOfRange(h1n.degree()));
    }
    q_action(ext, module, h1n)
}

/// `H²(G, M)₁ = ker(H²(G, M) -> H²(N, M))`.
pub fn h2_g_m_1(h2g: &Cohomology, h2n: &Cohomology, ext: &GroupExtension) -> Result<PresentedSubgroup> {
    let res = restriction(h2g, h2n, ext.n())?;
    Ok(PresentedSubgroup::new(&res.kernel()))
}

/// Coordinates of the zero class.
pub fn zero_class(h: &Cohomology) -> CohomologyClass {
    h.class(&h.group().zero())
}

/// `a·cls` on a cyclic multiple, computed on coordinates.
pub fn scale_class(h: &Cohomology, cls: &CohomologyClass, a: &Int) -> CohomologyClass {
    h.class(&h.group().scale(&cls.coords, a))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cohomology::cohomology;
    use crate::fixtures;
    use crate::group::make_extension;

    struct Setup {
        ext: GroupExtension,
        module: GModule,
        fixed: FixedModule,
    }

    fn setup(name: &str) -> Setup {
        let f = fixtures::by_name(name).unwrap();
        let ext = make_extension(&f.group, &f.normal).unwrap();
        let fixed = f.module.fixed_module(&ext).unwrap();
        Setup { ext, module: f.module, fixed }
    }

    #[test]
    fn restriction_to_full_group_is_identity() {
        let s = setup("fix-d");
        let all: Vec<usize> = (0..8).collect();
        for n in 0..=2 {
            let h = cohomology(s.ext.g(), &s.module, n).unwrap();
            let r = restriction(&h, &h, &all).unwrap();
            assert_eq!(r, AbHom::identity(h.group()));
        }
    }

    #[test]
    fn fix_a_restriction_kills_h1() {
        let s = setup("fix-a");
        let h1g = cohomology(s.ext.g(), &s.module, 1).unwrap();
        let res_mod = s.module.restrict(s.ext.n());
        let h1n = cohomology(s.ext.n_group(), &res_mod, 1).unwrap();
        assert_eq!(h1g.order(), Int::from(2));
        let r = restriction(&h1g, &h1n, s.ext.n()).unwrap();
        assert!(r.image().is_trivial());
    }

    #[test]
    fn restriction_to_trivial_subgroup_vanishes() {
        let s = setup("fix-c");
        let triv = crate::group::FiniteGroup::trivial();
        for n in 1..=2 {
            let h = cohomology(s.ext.g(), &s.module, n).unwrap();
            let h1 = cohomology(&triv, &s.module.restrict(&[0]), n).unwrap();
            assert!(h1.group().is_trivial());
            assert!(restriction(&h, &h1, &[0]).unwrap().image().is_trivial());
        }
    }

    #[test]
    fn inflation_then_restriction_is_zero() {
        for f in fixtures::all() {
            let ext = make_extension(&f.group, &f.normal).unwrap();
            let fixed = f.module.fixed_module(&ext).unwrap();
            let res_mod = f.module.restrict(ext.n());
            for n in 1..=2 {
                let hq = cohomology(ext.q(), &fixed.module, n).unwrap();
                let hg = cohomology(ext.g(), &f.module, n).unwrap();
                let hn = cohomology(ext.n_group(), &res_mod, n).unwrap();
                let inf = inflation(&hq, &hg, &ext, &fixed).unwrap();
                let res = restriction(&hg, &hn, ext.n()).unwrap();
                assert!(inf.then(&res).unwrap().image().is_trivial(), "{} degree {n}", f.name);
            }
        }
    }

    #[test]
    fn fix_a_inflation_injective_on_h1() {
        let s = setup("fix-a");
        let hq = cohomology(s.ext.q(), &s.fixed.module, 1).unwrap();
        let hg = cohomology(s.ext.g(), &s.module, 1).unwrap();
        let inf = inflation(&hq, &hg, &s.ext, &s.fixed).unwrap();
        assert_eq!(hq.order(), Int::from(2));
        assert!(inf.is_injective());
    }

    #[test]
    fn inflation_is_identity_for_trivial_n() {
        let s = setup("trivial-n");
        for n in 1..=2 {
            let hq = cohomology(s.ext.q(), &s.fixed.module, n).unwrap();
            let hg = cohomology(s.ext.g(), &s.module, n).unwrap();
            let inf = inflation(&hq, &hg, &s.ext, &s.fixed).unwrap();
            assert!(inf.is_injective() && inf.is_surjective());
        }
    }

    #[test]
    fn q_actions_on_h1() {
        for (name, trivial) in [("fix-b", true), ("fix-c", true), ("full-n", true)] {
            let s = setup(name);
            let h1n = cohomology(s.ext.n_group(), &s.module.restrict(s.ext.n()), 1).unwrap();
            let act = q_action_on_h1(&s.ext, &s.module, &h1n).unwrap();
            assert_eq!(act.is_trivial_action(), trivial, "{name}");
        }
        // Conjugation by a reflection swaps the two classes of Hom(Z/2 x Z/2, Z/2) that
        // are not fixed, so D8 over a Klein subgroup acts nontrivially.
        let d8 = fixtures::dihedral8();
        let ext = make_extension(&d8, &[0, 2, 4, 6]).unwrap();
        let m = GModule::trivial(8, crate::linalg::FgAbGroup::finite(&[2]).unwrap());
        let h1n = cohomology(ext.n_group(), &m.restrict(ext.n()), 1).unwrap();
        assert_eq!(h1n.order(), Int::from(4));
        assert!(!q_action_on_h1(&ext, &m, &h1n).unwrap().is_trivial_action());
    }

    #[test]
    fn h2_one_degenerate_cases() {
        let s = setup("trivial-n");
        let h2g = cohomology(s.ext.g(), &s.module, 2).unwrap();
        let h2n = cohomology(s.ext.n_group(), &s.module.restrict(s.ext.n()), 2).unwrap();
        assert_eq!(h2_g_m_1(&h2g, &h2n, &s.ext).unwrap().group().order(), Some(h2g.order()));
        let s = setup("full-n");
        let h2g = cohomology(s.ext.g(), &s.module, 2).unwrap();
        let h2n = cohomology(s.ext.n_group(), &s.module.restrict(s.ext.n()), 2).unwrap();
        assert!(h2_g_m_1(&h2g, &h2n, &s.ext).unwrap().group().is_trivial());
    }
}
