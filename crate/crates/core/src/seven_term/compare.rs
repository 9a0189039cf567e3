use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::cohomology::EmbeddedExtension;
use crate::error::Result;
use crate::group::FiniteGroup;
use crate::int::Int;
use crate::seven_term::context::Context;
use crate::seven_term::fiber::{evaluate, fiber_product};
use crate::seven_term::normalizer::normalizer_quotient;
use crate::seven_term::out::aut_em;
use crate::verdict::Verdict;

/// Checks that `map` is an isomorphism of extensions of `Q` by `M^N`.
fn check_extension_iso(src: &EmbeddedExtension, dst: &EmbeddedExtension, map: &[usize]) -> Verdict {
    let (a, b) = (&src.group, &dst.group);
    if a.order() != b.order() {
        return Verdict::fail(format!("orders differ: {} vs {}", a.order(), b.order()));
    }
    let mut seen = vec![false; b.order()];
    for (x, &y) in map.iter().enumerate() {
        if core::mem::replace(&mut seen[y], true) {
            return Verdict::fail(format!("not injective: {x} collides at {y}"));
        }
    }
    if let Some(w) = homomorphism_witness(a, b, map) {
        return Verdict::fail(format!("not a homomorphism at ({}, {})", w.0, w.1));
    }
    for (i, (&x, &y)) in src.kernel.iter().zip(&dst.kernel).enumerate() {
        if map[x] != y {
            return Verdict::fail(format!("not the identity on M^N at element {i}"));
        }
    }
    for (x, &y) in map.iter().enumerate() {
        if src.projection[x] != dst.projection[y] {
            return Verdict::fail(format!("does not commute with the projections at {x}"));
        }
    }
    Verdict::Pass
}

fn homomorphism_witness(a: &FiniteGroup, b: &FiniteGroup, map: &[usize]) -> Option<(usize, usize)> {
    (0..a.order())
        .flat_map(|x| (0..a.order()).map(move |y| (x, y)))
        .find(|&(x, y)| map[a.mul(x, y)] != b.mul(map[x], map[y]))
}

/// `Φ̂: Hom_N(ℤG, M) ⋊_T Q -> Out(e_M)`, `(ψ, q) ↦ [(ψ(y) + φ(n_y), y)]` for any lift `y`.
pub fn compare_fiber_vs_out(cx: &Context, phi: &[Int]) -> Result<Verdict> {
    let fp = fiber_product(cx, phi)?;
    let au = aut_em(cx, phi)?;
    let ext = &cx.ext;
    let go = ext.g().order();
    let t = cx.module.tables();
    let data = ext.group_ring_data();
    let vals = cx.cocycle_indices(phi);
    let mut map = Vec::with_capacity(fp.elements.len());
    for (i, (psi, q)) in fp.elements.iter().enumerate() {
        let mut image = None;
        for y in ext.lifts(*q) {
            let n = data.n_part(y);
            let c = t.add(evaluate(cx, psi, y), vals[ext.n_position(n).expect("n-part lies in N")]);
            let Some(label) = au.out.label[c * go + y] else {
                return Ok(Verdict::fail(format!("Φ({i}) with lift {y} is not in Aut(e_M)")));
            };
            match image {
                None => image = Some(label),
                Some(l) if l != label => return Ok(Verdict::fail(format!("Φ̂({i}) depends on the lift: {y}"))),
                Some(_) => {}
            }
        }
        map.push(image.expect("every coset is nonempty"));
    }
    Ok(check_extension_iso(&fp.extension, &au.outer, &map))
}

/// `M ⋊ G ≅ \overline{Aut}(e_M)` by the pair encoding, carrying `N_{M⋊G}(sN)/sN` onto `Out(e_M)`.
pub fn compare_naive_semidirect(cx: &Context, phi: &[Int]) -> Result<Verdict> {
    let nq = normalizer_quotient(cx, phi)?;
    let au = aut_em(cx, phi)?;
    let sd = nq.semidirect.group();
    if let Some((x, y)) = homomorphism_witness(sd, &au.pairs, &(0..sd.order()).collect::<Vec<_>>()) {
        return Ok(Verdict::fail(format!("pair encoding is not multiplicative at ({x}, {y})")));
    }
    if nq.section != au.section {
        return Ok(Verdict::fail("sN and s(N) differ"));
    }
    if nq.normalizer != au.aut {
        let w = nq.normalizer.iter().chain(&au.aut).find(|x| nq.normalizer.binary_search(x).is_err() || au.aut.binary_search(x).is_err());
        return Ok(Verdict::fail(format!("normalizer and Aut(e_M) differ at pair {:?}", w)));
    }
    let map: Vec<usize> = nq.quotient.reps.iter().map(|&x| au.out.label[x].expect("same subgroup")).collect();
    let v = check_extension_iso(&nq.extension, &au.outer, &map);
    if !v.is_pass() {
        return Ok(v);
    }
    let f1 = nq.extension.factor_set(cx.ext.q(), &cx.fixed.module, cx.h2q.space())?;
    let f2 = au.outer.factor_set(cx.ext.q(), &cx.fixed.module, cx.h2q.space())?;
    let (c1, c2) = (cx.h2q.classify(&f1)?, cx.h2q.classify(&f2)?);
    Ok(Verdict::check(c1 == c2, || format!("classes differ: {c1:?} vs {c2:?}")))
}
