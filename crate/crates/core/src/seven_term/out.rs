use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::cohomology::{CohomologyClass, EmbeddedExtension, ModuleExtension, TABLE_LIMIT};
use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::int::Int;
use crate::linalg::IntMatrix;
use crate::seven_term::context::Context;
use crate::seven_term::normalizer::{coset_quotient, CosetQuotient};

/// `Aut(e_M)` inside the group of pairs `(c, x)` acting on `E_M = M ⊕ ℤ` by
/// `α(m, k) = (x·m + k·c, k)`; the pair `(c, x)` has index `c·|G| + x`.
#[derive(Clone, Debug)]
pub struct AutEM {
    pub extension: ModuleExtension,
    /// All pairs, multiplied by composing automorphisms.
    pub pairs: FiniteGroup,
    /// `s(n) = (φ(n), n)` per position in `N`.
    pub section: Vec<usize>,
    /// Pairs normalizing `s(N)`.
    pub aut: Vec<usize>,
    /// `Out(e_M) = Aut(e_M)/s(N)`.
    pub out: CosetQuotient,
    /// `0 -> M^N -> Out(e_M) -> Q -> 1`.
    pub outer: EmbeddedExtension,
}

struct Pairs<'a> {
    cx: &'a Context,
    k: usize,
    go: usize,
    moduli: Vec<Int>,
}

impl Pairs<'_> {
    fn matrix(&self, p: usize) -> IntMatrix {
        let (c, x) = (p / self.go, p % self.go);
        let m = self.cx.module.module();
        let cv = m.element(c);
        let act = self.cx.module.act_matrix(x);
        let mut a = IntMatrix::zeros(self.k + 1, self.k + 1);
        for i in 0..self.k {
            for j in 0..self.k {
                a[(i, j)] = act[(i, j)].clone();
            }
            a[(i, self.k)] = cv[i].clone();
        }
        a[(self.k, self.k)] = Int::ONE;
        a
    }

    fn reduce(&self, mut a: IntMatrix) -> IntMatrix {
        for j in 0..a.cols() {
            for (i, d) in self.moduli.iter().enumerate() {
                a[(i, j)] = a[(i, j)].mod_floor(d);
            }
        }
        a
    }

    /// Reads the pair back from a composite automorphism whose group part is known.
    fn decode(&self, a: &IntMatrix, x: usize) -> usize {
        let m = self.cx.module.module();
        let c: Vec<Int> = (0..self.k).map(|i| a[(i, self.k)].clone()).collect();
        debug_assert!((0..self.k).all(|i| (0..self.k).all(|j| a[(i, j)] == self.cx.module.act_matrix(x)[(i, j)])));
        m.index_of(&m.canonical(&c)) * self.go + x
    }
}

pub fn aut_em(cx: &Context, phi: &[Int]) -> Result<AutEM> {
    cx.invariant_class(phi)?;
    let ext = &cx.ext;
    let g = ext.g();
    let go = g.order();
    let m = cx.module.module();
    let size = m.element_count().expect("finite module");
    let order = size.checked_mul(go).filter(|&o| o <= TABLE_LIMIT).ok_or(Error::SizeLimit { entries: size.saturating_mul(go), limit: TABLE_LIMIT })?;
    let extension = ModuleExtension::from_cochain(ext.n_group(), &cx.module_n, cx.h1n.space(), phi)?;
    let pairs = Pairs { cx, k: m.ngens(), go, moduli: m.moduli() };
    let mats: Vec<IntMatrix> = (0..order).map(|p| pairs.matrix(p)).collect();
    let table = FiniteGroup::from_fn(order, |a, b| pairs.decode(&pairs.reduce(mats[a].mul(&mats[b])), g.mul(a % go, b % go)))?;
    let section: Vec<usize> = ext
        .n()
        .iter()
        .enumerate()
        .map(|(i, &n)| m.index_of(extension.phi(i)) * go + n)
        .collect();
    let aut: Vec<usize> = (0..order)
        .filter(|&p| {
            let x = p % go;
            (0..ext.n().len()).all(|i| {
                let j = ext.n_position(g.conj(x, ext.n()[i])).expect("N is normal");
                pairs.reduce(mats[p].mul(extension.action(i))) == pairs.reduce(extension.action(j).mul(&mats[p]))
            })
        })
        .collect();
    let mut covered = vec![false; go];
    for &p in &aut {
        covered[p % go] = true;
    }
    if let Some(x) = covered.iter().position(|c| !c) {
        return Err(Error::Precondition(format!("no automorphism of e_M lies over {x}")));
    }
    let fixed = cx.fixed_element_indices();
    if aut.len() != fixed.len() * go {
        return Err(Error::Inconsistent(format!("Aut(e_M) has order {} instead of |M^N|·|G| = {}", aut.len(), fixed.len() * go)));
    }
    let out = coset_quotient(order, |a, b| table.mul(a, b), &aut, &section)?;
    let kernel = fixed.iter().map(|&c| out.label[c * go].expect("M^N lies in Aut(e_M)")).collect();
    let projection = out.reps.iter().map(|&p| ext.pi(p % go)).collect();
    let outer = EmbeddedExtension { group: out.group.clone(), kernel, projection };
    Ok(AutEM { extension, pairs: table, section, aut, out, outer })
}

/// `ẽ_M` and its class in `H²(Q, M^N)`.
pub fn delta_out_construction(cx: &Context, phi: &[Int]) -> Result<(EmbeddedExtension, CohomologyClass)> {
    let a = aut_em(cx, phi)?;
    let f = a.outer.factor_set(cx.ext.q(), &cx.fixed.module, cx.h2q.space())?;
    let cls = cx.h2q.class_of(&f)?;
    Ok((a.outer, cls))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn section_lies_in_aut_and_pairs_multiply() {
        for f in fixtures::all() {
            let cx = Context::new(&f.group, &f.normal, &f.module).unwrap();
            for a in cx.h1n_inv.group().elements() {
                let au = aut_em(&cx, &cx.invariant_representative(&a)).unwrap();
                for s in &au.section {
                    assert!(au.aut.binary_search(s).is_ok(), "{}", f.name);
                }
                let go = cx.ext.g().order();
                let t = cx.module.tables();
                for p in 0..au.pairs.order() {
                    for r in 0..au.pairs.order() {
                        let expect = t.add(p / go, t.act(p % go, r / go)) * go + cx.ext.g().mul(p % go, r % go);
                        assert_eq!(au.pairs.mul(p, r), expect);
                    }
                }
            }
        }
    }

    #[test]
    fn trivial_quotient_gives_zero() {
        let f = fixtures::by_name("full-n").unwrap();
        let cx = Context::new(&f.group, &f.normal, &f.module).unwrap();
        for a in cx.h1n_inv.group().elements() {
            let (_, c) = delta_out_construction(&cx, &cx.invariant_representative(&a)).unwrap();
            assert!(cx.h2q.group().is_zero(&c.coords));
        }
    }

    #[test]
    fn fix_a_nonzero() {
        let f = fixtures::by_name("fix-a").unwrap();
        let cx = Context::new(&f.group, &f.normal, &f.module).unwrap();
        let (e, c) = delta_out_construction(&cx, &cx.invariant_representative(&[Int::ONE])).unwrap();
        assert_eq!(c.coords, vec![Int::ONE]);
        assert_eq!(e.group.order(), 4);
    }
}
