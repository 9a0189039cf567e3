use alloc::format;
use alloc::vec::Vec;

use crate::cohomology::maps::restriction_matrix;
use crate::cohomology::{cochain::apply, realize_extension_from_2cocycle, CohomologyClass};
use crate::error::{Error, Result};
use crate::int::Int;
use crate::linalg::AbHom;
use crate::seven_term::context::Context;

/// A 1-cochain `w` on `N` with `d w = z|_N`, so that `s(n) = (−w(n), n)` splits the
/// realized extension over `N`.
pub fn splitting_cochain(cx: &Context, z: &[Int]) -> Result<Vec<Int>> {
    if !cx.h2g.is_cocycle(z) {
        return Err(Error::NotACocycle { degree: 2 });
    }
    let res = apply(&restriction_matrix(&cx.h2g, &cx.h2n, cx.ext.n()), cx.h2n.space(), z);
    cx.h2n.coboundary_preimage(&res).ok_or(Error::NotSplitOnSubgroup)
}

/// `ρ[z] ∈ H¹(Q, H¹(N, M))` for a 2-cocycle `z` whose class lies in `H²(G, M)₁`.
pub fn rho(cx: &Context, z: &[Int]) -> Result<CohomologyClass> {
    let w = splitting_cochain(cx, z)?;
    rho_with_section(cx, z, &w)
}

/// As [`rho`], with the section `s(n) = (−w(n), n)` given by `w`.
pub fn rho_with_section(cx: &Context, z: &[Int], w: &[Int]) -> Result<CohomologyClass> {
    let ext = &cx.ext;
    let g = ext.g();
    let go = g.order();
    let res = apply(&restriction_matrix(&cx.h2g, &cx.h2n, ext.n()), cx.h2n.space(), z);
    if cx.h2n.coboundary(w) != res {
        return Err(Error::Precondition("cochain does not split the restriction to N".into()));
    }
    let e = realize_extension_from_2cocycle(g, &cx.module, &cx.h2g, z)?;
    let eg = &e.group;
    let m = cx.module.module();
    let t = cx.module.tables();
    let c1n = cx.h2n.prev_space().expect("degree two has a previous space");
    let section: Vec<usize> = (0..ext.n().len())
        .map(|i| {
            let wv = c1n.value(w, &[i]).map_or(0, |v| m.index_of(&m.canonical(v)));
            t.neg(wv) * go + ext.n()[i]
        })
        .collect();
    let nn = ext.n_group();
    for a in 0..nn.order() {
        for b in 0..nn.order() {
            if eg.mul(section[a], section[b]) != section[nn.mul(a, b)] {
                return Err(Error::Inconsistent(format!("s is not a homomorphism at ({a}, {b})")));
            }
        }
    }
    // d_x(n) = x s(x⁻¹nx) x⁻¹ s(n)⁻¹
    let derivation_class = |x: usize| -> Result<Vec<Int>> {
        let xg = x % go;
        let xi = eg.inv(x);
        let values: Vec<usize> = ext
            .n()
            .iter()
            .enumerate()
            .map(|(i, &n)| {
                let j = ext.n_position(g.conj(g.inv(xg), n)).expect("N is normal");
                let y = eg.mul(eg.mul(eg.mul(x, section[j]), xi), eg.inv(section[i]));
                debug_assert_eq!(y % go, 0);
                y / go
            })
            .collect();
        let d = cx.h1n.space().from_fn(|tup| t.element(values[tup[0]]).to_vec());
        cx.h1n.classify(&d).map_err(|_| Error::Inconsistent(format!("d_x is not a 1-cocycle on N for x = {x}")))
    };
    let classes: Vec<Vec<Int>> = (0..ext.q().order()).map(|q| derivation_class(ext.sigma(q))).collect::<Result<_>>()?;
    for x in 0..eg.order() {
        let c = derivation_class(x)?;
        if c != classes[ext.pi(x % go)] {
            return Err(Error::Inconsistent(format!("[d_x] is not constant on the coset of x = {x}")));
        }
    }
    let delta = cx.h1q_h1n.space().from_fn(|tup| classes[tup[0]].clone());
    cx.h1q_h1n.class_of(&delta).map_err(|_| Error::Inconsistent("δ_e is not a derivation".into()))
}

/// `ρ: H²(G, M)₁ -> H¹(Q, H¹(N, M))` on generators, checked additive on every element.
pub fn rho_map(cx: &Context) -> Result<AbHom> {
    let src = cx.h2g1.group();
    let images: Vec<Vec<Int>> = (0..src.ngens())
        .map(|i| {
            let mut e = src.zero();
            e[i] = Int::ONE;
            Ok(rho(cx, &cx.h2g1_representative(&e))?.coords)
        })
        .collect::<Result<_>>()?;
    let map = AbHom::from_images(src.clone(), cx.h1q_h1n.group().clone(), &images)?;
    for a in src.elements() {
        let direct = rho(cx, &cx.h2g1_representative(&a))?.coords;
        if direct != map.apply(&a) {
            return Err(Error::Inconsistent(format!("ρ is not additive at {a:?}")));
        }
    }
    Ok(map)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn zero_maps_to_zero() {
        for f in fixtures::all() {
            let cx = Context::new(&f.group, &f.normal, &f.module).unwrap();
            let c = rho(&cx, &cx.h2g.space().zero()).unwrap();
            assert!(cx.h1q_h1n.group().is_zero(&c.coords), "{}", f.name);
        }
    }

    #[test]
    fn defined_on_h2_one() {
        for f in fixtures::all() {
            let cx = Context::new(&f.group, &f.normal, &f.module).unwrap();
            for a in cx.h2g1.group().elements() {
                rho(&cx, &cx.h2g1_representative(&a)).unwrap();
            }
        }
    }

    #[test]
    fn outside_h2_one_is_rejected() {
        let f = fixtures::by_name("full-n").unwrap();
        let cx = Context::new(&f.group, &f.normal, &f.module).unwrap();
        let c = cx.h2g.group().elements().find(|c| !cx.h2g.group().is_zero(c)).unwrap();
        assert_eq!(rho(&cx, &cx.h2g.representative(&c)), Err(Error::NotSplitOnSubgroup));
    }
}
