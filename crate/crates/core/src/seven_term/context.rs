use alloc::format;
use alloc::vec::Vec;

use crate::cohomology::{cohomology, h2_g_m_1, q_action_on_h1, Cohomology};
use crate::error::{Error, Result};
use crate::group::{make_extension, FiniteGroup, FixedModule, GModule, GroupExtension};
use crate::int::Int;
use crate::linalg::PresentedSubgroup;

/// Every cohomology group of the seven-term sequence for one extension.
#[derive(Clone, Debug)]
pub struct Context {
    pub ext: GroupExtension,
    /// `M` over `G`.
    pub module: GModule,
    /// `M` restricted to `N` (indexed by positions in `ext.n()`).
    pub module_n: GModule,
    /// `M^N` over `Q`.
    pub fixed: FixedModule,
    pub h1q: Cohomology,
    pub h2q: Cohomology,
    pub h3q: Cohomology,
    pub h1g: Cohomology,
    pub h2g: Cohomology,
    pub h1n: Cohomology,
    pub h2n: Cohomology,
    /// `H¹(N, M)` with the conjugation action of `Q`.
    pub h1n_module: GModule,
    /// `H¹(N, M)^Q` inside `H¹(N, M)`.
    pub h1n_inv: PresentedSubgroup,
    /// `H²(G, M)₁` inside `H²(G, M)`.
    pub h2g1: PresentedSubgroup,
    /// `H¹(Q, H¹(N, M))`.
    pub h1q_h1n: Cohomology,
}

impl Context {
    pub fn new(group: &FiniteGroup, normal: &[usize], module: &GModule) -> Result<Self> {
        Self::from_extension(make_extension(group, normal)?, module)
    }

    pub fn from_extension(ext: GroupExtension, module: &GModule) -> Result<Self> {
        if module.group_order() != ext.g().order() {
            return Err(Error::Dimension("module must carry one action matrix per element of G"));
        }
        let module_n = module.restrict(ext.n());
        let fixed = module.fixed_module(&ext)?;
        let q = ext.q();
        let h1q = cohomology(q, &fixed.module, 1)?;
        let h2q = cohomology(q, &fixed.module, 2)?;
        let h3q = cohomology(q, &fixed.module, 3)?;
        let h1g = cohomology(ext.g(), module, 1)?;
        let h2g = cohomology(ext.g(), module, 2)?;
        let h1n = cohomology(ext.n_group(), &module_n, 1)?;
        let h2n = cohomology(ext.n_group(), &module_n, 2)?;
        let h1n_module = q_action_on_h1(&ext, module, &h1n)?;
        let all: Vec<usize> = (0..q.order()).collect();
        let h1n_inv = h1n_module.invariants(q, &all)?;
        let h2g1 = h2_g_m_1(&h2g, &h2n, &ext)?;
        let h1q_h1n = cohomology(q, &h1n_module, 1)?;
        Ok(Context {
            ext,
            module: module.clone(),
            module_n,
            fixed,
            h1q,
            h2q,
            h3q,
            h1g,
            h2g,
            h1n,
            h2n,
            h1n_module,
            h1n_inv,
            h2g1,
            h1q_h1n,
        })
    }

    /// Class of a 1-cocycle on `N`, checked to be `Q`-invariant.
    pub fn invariant_class(&self, phi: &[Int]) -> Result<Vec<Int>> {
        let c = self.h1n.classify(phi)?;
        for q in 0..self.ext.q().order() {
            if self.h1n_module.act(q, &c) != c {
                return Err(Error::NotInvariant(format!("class {c:?} is moved by quotient element {q}")));
            }
        }
        Ok(c)
    }

    /// `φ(n)` as module element indices, one per position in `ext.n()`.
    pub fn cocycle_indices(&self, phi: &[Int]) -> Vec<usize> {
        let m = self.module.module();
        (0..self.ext.n().len())
            .map(|i| self.h1n.space().value(phi, &[i]).map_or(0, |v| m.index_of(&m.canonical(v))))
            .collect()
    }

    /// Module element indices of `M^N` in the canonical order of its presentation.
    pub fn fixed_element_indices(&self) -> Vec<usize> {
        let m = self.module.module();
        let inv = &self.fixed.invariants;
        inv.group().elements().map(|e| m.index_of(&inv.include(&e))).collect()
    }

    /// Representative 1-cocycle on `N` of an element of `H¹(N, M)^Q`.
    pub fn invariant_representative(&self, a: &[Int]) -> Vec<Int> {
        self.h1n.representative(&self.h1n_inv.include(a))
    }

    /// Representative 2-cocycle on `G` of an element of `H²(G, M)₁`.
    pub fn h2g1_representative(&self, a: &[Int]) -> Vec<Int> {
        self.h2g.representative(&self.h2g1.include(a))
    }
}
