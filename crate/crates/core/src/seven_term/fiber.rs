use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::cohomology::{CohomologyClass, EmbeddedExtension, TABLE_LIMIT};
use crate::error::{Error, Result};
use crate::group::{FiniteGroup, GroupRingData, ModuleTables};
use crate::int::Int;
use crate::seven_term::context::Context;
use crate::verdict::Verdict;

/// `Hom_N(ℤG, M) ⋊_T Q` as an extension of `Q` by `M^N`.
///
/// Maps in `Hom_N(ℤG, M)` are stored by their values on the coset
/// representatives `σ(q)`; every value is a module element index.
#[derive(Clone, Debug)]
pub struct FiberProduct {
    /// `μ(g − 1) = φ(n_g)` for `g = n_g·σ(π(g))`, indexed by `g`.
    pub mu: Vec<usize>,
    /// `d(q)(g − 1)` computed with the lift `σ(q)`, indexed by `q` then `g`.
    pub derivation: Vec<Vec<usize>>,
    /// `(ψ, q)` with `ψ|_{IG} = d(q)`.
    pub elements: Vec<(Vec<usize>, usize)>,
    pub extension: EmbeddedExtension,
}

struct Hom<'a> {
    cx: &'a Context,
    tables: ModuleTables,
    data: GroupRingData,
}

impl Hom<'_> {
    /// `ψ(g) = n_g·ψ(σ(π(g)))`.
    fn eval(&self, psi: &[usize], g: usize) -> usize {
        let (n, q) = self.data.decompose(&self.cx.ext, g);
        self.tables.act(n, psi[q])
    }

    /// `(q·ψ)(y) = x·ψ(x⁻¹y)` with `x = σ(q)`, on representatives.
    fn act(&self, q: usize, psi: &[usize]) -> Vec<usize> {
        let g = self.cx.ext.g();
        let x = self.cx.ext.sigma(q);
        let xi = g.inv(x);
        self.data.representatives().iter().map(|&y| self.tables.act(x, self.eval(psi, g.mul(xi, y)))).collect()
    }

    fn add(&self, a: &[usize], b: &[usize]) -> Vec<usize> {
        a.iter().zip(b).map(|(&u, &v)| self.tables.add(u, v)).collect()
    }
}

fn mu_values(cx: &Context, phi: &[Int], data: &GroupRingData) -> Vec<usize> {
    let vals = cx.cocycle_indices(phi);
    (0..cx.ext.g().order()).map(|g| vals[cx.ext.n_position(data.n_part(g)).expect("n-part lies in N")]).collect()
}

/// `(α_x μ α_x⁻¹ − μ)(g − 1) = x·(μ(x⁻¹g − 1) − μ(x⁻¹ − 1)) − μ(g − 1)` for every `g`.
pub fn derivation_for_lift(cx: &Context, tables: &ModuleTables, mu: &[usize], x: usize) -> Vec<usize> {
    let g = cx.ext.g();
    let xi = g.inv(x);
    (0..g.order()).map(|y| tables.sub(tables.act(x, tables.sub(mu[g.mul(xi, y)], mu[xi])), mu[y])).collect()
}

/// Whether `d(q)` agrees for every lift of every `q`.
pub fn check_derivation_lifts(cx: &Context, phi: &[Int]) -> Verdict {
    let tables = cx.module.tables();
    let data = cx.ext.group_ring_data();
    let mu = mu_values(cx, phi, &data);
    for q in 0..cx.ext.q().order() {
        let base = derivation_for_lift(cx, &tables, &mu, cx.ext.sigma(q));
        for x in cx.ext.lifts(q) {
            let d = derivation_for_lift(cx, &tables, &mu, x);
            if let Some(y) = (0..d.len()).find(|&y| d[y] != base[y]) {
                return Verdict::fail(format!("lifts {} and {x} of {q} give different d(q)({y} - 1)", cx.ext.sigma(q)));
            }
        }
    }
    Verdict::Pass
}

pub fn fiber_product(cx: &Context, phi: &[Int]) -> Result<FiberProduct> {
    cx.invariant_class(phi)?;
    let ext = &cx.ext;
    let g = ext.g();
    let hom = Hom { cx, tables: cx.module.tables(), data: ext.group_ring_data() };
    let t = &hom.tables;
    let mu = mu_values(cx, phi, &hom.data);
    if let Verdict::Fail { witness } = check_derivation_lifts(cx, phi) {
        return Err(Error::Inconsistent(witness));
    }
    let derivation: Vec<Vec<usize>> = (0..ext.q().order()).map(|q| derivation_for_lift(cx, t, &mu, ext.sigma(q))).collect();
    let size = t.size();
    let mut elements = Vec::new();
    for (q, d) in derivation.iter().enumerate() {
        for &n in ext.n() {
            for y in 0..g.order() {
                let lhs = t.sub(d[g.mul(n, y)], d[n]);
                if lhs != t.act(n, d[y]) {
                    return Err(Error::Inconsistent(format!("d({q}) is not N-equivariant at n = {n}, g = {y}")));
                }
            }
        }
        let fibre: Vec<usize> = (0..size).filter(|&c| ext.n().iter().all(|&n| d[n] == t.sub(t.act(n, c), c))).collect();
        if fibre.is_empty() {
            return Err(Error::Precondition(format!("d({q}) does not lie in T: n ↦ d({q})(n - 1) is not a coboundary")));
        }
        for c in fibre {
            let psi: Vec<usize> = hom.data.representatives().iter().map(|&r| t.add(c, d[r])).collect();
            for y in 0..g.order() {
                if hom.eval(&psi, y) != t.add(c, d[y]) {
                    return Err(Error::Inconsistent(format!("extension of d({q}) by {c} is not N-equivariant at {y}")));
                }
            }
            elements.push((psi, q));
        }
    }
    let fixed = cx.fixed_element_indices();
    if elements.len() != fixed.len() * ext.q().order() {
        return Err(Error::Inconsistent(format!("fiber product has order {} instead of |M^N|·|Q|", elements.len())));
    }
    if elements.len() > TABLE_LIMIT {
        return Err(Error::SizeLimit { entries: elements.len(), limit: TABLE_LIMIT });
    }
    let index: BTreeMap<(Vec<usize>, usize), usize> = elements.iter().cloned().enumerate().map(|(i, e)| (e, i)).collect();
    let q = ext.q();
    let mut table = vec![0; elements.len() * elements.len()];
    for (i, (psi, qa)) in elements.iter().enumerate() {
        for (j, (chi, qb)) in elements.iter().enumerate() {
            let key = (hom.add(psi, &hom.act(*qa, chi)), q.mul(*qa, *qb));
            table[i * elements.len() + j] = *index.get(&key).ok_or_else(|| Error::Inconsistent(format!("fiber product is not closed at ({i}, {j})")))?;
        }
    }
    let group = FiniteGroup::from_fn(elements.len(), |a, b| table[a * elements.len() + b])?;
    let nreps = hom.data.representatives().len();
    let kernel = fixed.iter().map(|&c| index[&(vec![c; nreps], 0)]).collect();
    let projection = elements.iter().map(|e| e.1).collect();
    Ok(FiberProduct { mu, derivation, elements, extension: EmbeddedExtension { group, kernel, projection } })
}

/// Class of `Hom_N(ℤG, M) ⋊_T Q` in `H²(Q, M^N)`.
pub fn d2_fiber_product(cx: &Context, phi: &[Int]) -> Result<CohomologyClass> {
    let fp = fiber_product(cx, phi)?;
    let f = fp.extension.factor_set(cx.ext.q(), &cx.fixed.module, cx.h2q.space())?;
    cx.h2q.class_of(&f)
}

/// `ψ(g)` for an element of the fiber product.
pub fn evaluate(cx: &Context, psi: &[usize], g: usize) -> usize {
    let (n, q) = cx.ext.group_ring_data().decompose(&cx.ext, g);
    cx.module.tables().act(n, psi[q])
}
