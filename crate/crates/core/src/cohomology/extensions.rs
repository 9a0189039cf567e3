//! Extensions with abelian kernel and their cocycles.

use alloc::vec;
use alloc::vec::Vec;

use crate::cohomology::cochain::CochainSpace;
use crate::cohomology::group::{Cohomology, CohomologyClass};
use crate::error::{Error, Result};
use crate::group::{FiniteGroup, GModule, ModuleTables};
use crate::int::Int;
use crate::linalg::{reduce_mod, FgAbGroup, IntMatrix};

/// Largest group order realized as a multiplication table.
pub const TABLE_LIMIT: usize = 4096;

/// `0 -> A -> E -> Q -> 1` with `A` given as element indices of `E`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EmbeddedExtension {
    pub group: FiniteGroup,
    /// `kernel[i]` is the image of the `i`-th module element in canonical order.
    pub kernel: Vec<usize>,
    pub projection: Vec<usize>,
}

impl EmbeddedExtension {
    /// The section `q ↦ min p⁻¹(q)`.
    pub fn section(&self, quotient_order: usize) -> Vec<usize> {
        let mut s = vec![usize::MAX; quotient_order];
        for (x, &q) in self.projection.iter().enumerate().rev() {
            s[q] = x;
        }
        s
    }

    fn validate(&self, q: &FiniteGroup, tables: &ModuleTables) -> Result<Vec<Option<usize>>> {
        let e = &self.group;
        if self.projection.len() != e.order() || self.kernel.len() != tables.size() {
            return Err(Error::BadExtension("sizes of kernel or projection do not match".into()));
        }
        if self.projection.iter().any(|&x| x >= q.order()) || !e.is_homomorphism(q, &self.projection) {
            return Err(Error::BadExtension("projection is not a homomorphism onto the quotient".into()));
        }
        if e.order() != tables.size() * q.order() {
            return Err(Error::BadExtension(alloc::format!(
                "order {} is not |A|·|Q| = {}",
                e.order(),
                tables.size() * q.order()
            )));
        }
        let mut pos = vec![None; e.order()];
        for (i, &x) in self.kernel.iter().enumerate() {
            if x >= e.order() || pos[x].is_some() || self.projection[x] != 0 {
                return Err(Error::BadExtension("kernel is not injective into the fibre over 1".into()));
            }
            pos[x] = Some(i);
        }
        for a in 0..tables.size() {
            for b in 0..tables.size() {
                if e.mul(self.kernel[a], self.kernel[b]) != self.kernel[tables.add(a, b)] {
                    return Err(Error::BadExtension("kernel embedding is not additive".into()));
                }
            }
        }
        let section = self.section(q.order());
        for (qq, &x) in section.iter().enumerate() {
            for a in 0..tables.size() {
                if e.conj(x, self.kernel[a]) != self.kernel[tables.act(qq, a)] {
                    return Err(Error::BadExtension(alloc::format!("conjugation by a lift of {qq} differs from the module action")));
                }
            }
        }
        Ok(pos)
    }

    /// The normalized factor set `f(q₁, q₂) = σ(q₁)σ(q₂)σ(q₁q₂)⁻¹` as a cochain.
    pub fn factor_set(&self, q: &FiniteGroup, module: &GModule, space: &CochainSpace) -> Result<Vec<Int>> {
        let tables = module.tables();
        let pos = self.validate(q, &tables)?;
        let s = self.section(q.order());
        let e = &self.group;
        let f = space.from_fn(|t| {
            let x = e.mul(e.mul(s[t[0]], s[t[1]]), e.inv(s[q.mul(t[0], t[1])]));
            tables.element(pos[x].expect("factor set lies in the kernel")).to_vec()
        });
        Ok(f)
    }
}

/// The class in `H²(Q, A)` of an extension of `Q` by the module `A`.
pub fn class_of_group_extension(ext: &EmbeddedExtension, q: &FiniteGroup, module: &GModule, h2: &Cohomology) -> Result<CohomologyClass> {
    if h2.degree() != 2 {
        return Err(Error::DegreeOutOfRange(h2.degree()));
    }
    let f = ext.factor_set(q, module, h2.space())?;
    h2.class_of(&f)
}

/// `A × Q` with `(a, q)(a', q') = (a + q·a' + f(q, q'), qq')`; `(a, q)` has index `a·|Q| + q`.
pub fn realize_extension_from_2cocycle(q: &FiniteGroup, module: &GModule, h2: &Cohomology, f: &[Int]) -> Result<EmbeddedExtension> {
    if h2.degree() != 2 {
        return Err(Error::DegreeOutOfRange(h2.degree()));
    }
    if !h2.is_cocycle(f) {
        return Err(Error::NotACocycle { degree: 2 });
    }
    let tables = module.tables();
    let (na, nq) = (tables.size(), q.order());
    let order = na.checked_mul(nq).filter(|&o| o <= TABLE_LIMIT).ok_or(Error::SizeLimit { entries: na.saturating_mul(nq), limit: TABLE_LIMIT })?;
    let m = module.module();
    let mut fidx = vec![0; nq * nq];
    for a in 1..nq {
        for b in 1..nq {
            fidx[a * nq + b] = h2.space().value(f, &[a, b]).map_or(0, |v| m.index_of(&m.canonical(v)));
        }
    }
    let group = FiniteGroup::from_fn(order, |x, y| {
        let (a, qa) = (x / nq, x % nq);
        let (b, qb) = (y / nq, y % nq);
        let c = tables.add(tables.add(a, tables.act(qa, b)), fidx[qa * nq + qb]);
        c * nq + q.mul(qa, qb)
    })?;
    Ok(EmbeddedExtension { group, kernel: (0..na).map(|a| a * nq).collect(), projection: (0..order).map(|x| x % nq).collect() })
}

/// `0 -> M -> M ⊕ ℤ -> ℤ -> 0` with `n·(m, k) = (n·m + k·φ(n), k)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleExtension {
    module: FgAbGroup,
    phi: Vec<Vec<Int>>,
    action: Vec<IntMatrix>,
}

impl ModuleExtension {
    /// From the values `φ(n)` indexed by the elements of `group`.
    pub fn new(group: &FiniteGroup, module: &GModule, phi: Vec<Vec<Int>>) -> Result<Self> {
        let m = module.module();
        let k = m.ngens();
        if phi.len() != group.order() || phi.iter().any(|v| v.len() != k) {
            return Err(Error::Dimension("one value per group element is required"));
        }
        let phi: Vec<Vec<Int>> = phi.iter().map(|v| m.canonical(v)).collect();
        if !m.is_zero(&phi[0]) {
            return Err(Error::NotACocycle { degree: 1 });
        }
        for a in 0..group.order() {
            for b in 0..group.order() {
                if phi[group.mul(a, b)] != m.add(&phi[a], &module.act(a, &phi[b])) {
                    return Err(Error::NotACocycle { degree: 1 });
                }
            }
        }
        let action: Vec<IntMatrix> = (0..group.order())
            .map(|n| {
                let mut a = IntMatrix::zeros(k + 1, k + 1);
                let act = module.act_matrix(n);
                for i in 0..k {
                    for j in 0..k {
                        a[(i, j)] = act[(i, j)].clone();
                    }
                    a[(i, k)] = phi[n][i].clone();
                }
                a[(k, k)] = Int::ONE;
                a
            })
            .collect();
        let ext = ModuleExtension { module: m.clone(), phi, action };
        for a in 0..group.order() {
            for b in 0..group.order() {
                if ext.reduce(ext.action[a].mul(&ext.action[b])) != ext.action[group.mul(a, b)] {
                    return Err(Error::ActionNotHomomorphism { g: a, h: b });
                }
            }
        }
        Ok(ext)
    }

    /// From a 1-cochain in `space`.
    pub fn from_cochain(group: &FiniteGroup, module: &GModule, space: &CochainSpace, f: &[Int]) -> Result<Self> {
        let zero = module.module().zero();
        let phi = (0..group.order()).map(|n| space.value(f, &[n]).map_or_else(|| zero.clone(), <[Int]>::to_vec)).collect();
        Self::new(group, module, phi)
    }

    fn reduce(&self, mut a: IntMatrix) -> IntMatrix {
        let moduli = self.module.moduli();
        for j in 0..a.cols() {
            for (i, d) in moduli.iter().enumerate() {
                a[(i, j)] = a[(i, j)].mod_floor(d);
            }
        }
        a
    }

    pub fn module(&self) -> &FgAbGroup {
        &self.module
    }

    /// `φ(n)`.
    pub fn phi(&self, n: usize) -> &[Int] {
        &self.phi[n]
    }

    /// The action of `n` on `M ⊕ ℤ`.
    pub fn action(&self, n: usize) -> &IntMatrix {
        &self.action[n]
    }

    /// `n·(m, k)`.
    pub fn act(&self, n: usize, m: &[Int], k: &Int) -> (Vec<Int>, Int) {
        let mut v = m.to_vec();
        v.push(k.clone());
        let mut w = self.action[n].mul_vec(&v);
        let k = w.pop().expect("last coordinate");
        reduce_mod(&mut w, &self.module.moduli());
        (w, k)
    }

    /// The cocycle read back from `n·(0, 1) = (φ(n), 1)`.
    pub fn to_cochain(&self, space: &CochainSpace) -> Vec<Int> {
        let k = self.module.ngens();
        space.from_fn(|t| {
            let mut e = vec![Int::ZERO; k];
            e.push(Int::ONE);
            let mut v = self.action[t[0]].mul_vec(&e);
            v.truncate(k);
            reduce_mod(&mut v, &self.module.moduli());
            v
        })
    }
}
