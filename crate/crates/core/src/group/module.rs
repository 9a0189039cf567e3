use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::group::extension::GroupExtension;
use crate::group::finite::FiniteGroup;
use crate::int::Int;
use crate::linalg::{reduce_mod, AbHom, FgAbGroup, IntMatrix, PresentedSubgroup, Subgroup};

/// A finite abelian group with a left action by automorphism matrices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GModule {
    module: FgAbGroup,
    act: Vec<IntMatrix>,
}

fn reduce_columns(m: &mut IntMatrix, moduli: &[Int]) {
    for j in 0..m.cols() {
        for (i, d) in moduli.iter().enumerate() {
            if !d.is_zero() {
                m[(i, j)] = m[(i, j)].mod_floor(d);
            }
        }
    }
}

impl GModule {
    /// Validates that `act` is a homomorphism `group -> Aut(module)`.
    pub fn new(group: &FiniteGroup, module: FgAbGroup, act: Vec<IntMatrix>) -> Result<Self> {
        if !module.is_finite() {
            return Err(Error::Precondition("coefficient module must be finite".into()));
        }
        if act.len() != group.order() {
            return Err(Error::Dimension("one action matrix per group element is required"));
        }
        let k = module.ngens();
        let moduli = module.moduli();
        let mut reduced = Vec::with_capacity(act.len());
        for (g, m) in act.into_iter().enumerate() {
            if m.rows() != k || m.cols() != k {
                return Err(Error::BadAction { element: g, detail: "matrix shape does not match the module" });
            }
            let h = AbHom::new(module.clone(), module.clone(), m)
                .map_err(|_| Error::BadAction { element: g, detail: "matrix does not preserve the relations" })?;
            if !h.is_injective() {
                return Err(Error::BadAction { element: g, detail: "matrix is not invertible modulo the invariant factors" });
            }
            let mut m = h.matrix;
            reduce_columns(&mut m, &moduli);
            reduced.push(m);
        }
        let mut id = IntMatrix::identity(k);
        reduce_columns(&mut id, &moduli);
        if reduced[0] != id {
            return Err(Error::BadAction { element: 0, detail: "identity must act trivially" });
        }
        for g in 0..group.order() {
            for h in 0..group.order() {
                let mut prod = reduced[g].mul(&reduced[h]);
                reduce_columns(&mut prod, &moduli);
                if prod != reduced[group.mul(g, h)] {
                    return Err(Error::ActionNotHomomorphism { g, h });
                }
            }
        }
        Ok(GModule { module, act: reduced })
    }

    pub fn trivial(group_order: usize, module: FgAbGroup) -> Self {
        let mut id = IntMatrix::identity(module.ngens());
        reduce_columns(&mut id, &module.moduli());
        GModule { act: vec![id; group_order], module }
    }

    pub fn module(&self) -> &FgAbGroup {
        &self.module
    }

    pub fn group_order(&self) -> usize {
        self.act.len()
    }

    pub fn ngens(&self) -> usize {
        self.module.ngens()
    }

    pub fn act_matrix(&self, g: usize) -> &IntMatrix {
        &self.act[g]
    }

    pub fn act_matrices(&self) -> &[IntMatrix] {
        &self.act
    }

    /// `g·m` in canonical form.
    pub fn act(&self, g: usize, m: &[Int]) -> Vec<Int> {
        let mut v = self.act[g].mul_vec(m);
        reduce_mod(&mut v, &self.module.moduli());
        v
    }

    /// Whether the action is trivial.
    pub fn is_trivial_action(&self) -> bool {
        self.act.iter().all(|m| m == &self.act[0])
    }

    /// Restriction along an injective map `H -> G` given as element images.
    pub fn restrict(&self, embed: &[usize]) -> GModule {
        GModule { module: self.module.clone(), act: embed.iter().map(|&x| self.act[x].clone()).collect() }
    }

    /// Pullback along a surjection `G -> Q` given as an index map.
    pub fn inflate(&self, pi: &[usize]) -> GModule {
        self.restrict(pi)
    }

    pub fn tables(&self) -> ModuleTables {
        ModuleTables::new(self)
    }

    /// `M^K` with its inclusion into `M`.
    pub fn invariants(&self, group: &FiniteGroup, k: &[usize]) -> Result<Invariants> {
        let k = group.check_subgroup(k)?;
        let n = self.ngens();
        let moduli = self.module.moduli();
        let mut target = Vec::new();
        let mut rows = IntMatrix::zeros(0, n);
        for &x in &k {
            target.extend_from_slice(&moduli);
            let mut diff = self.act[x].clone();
            for i in 0..n {
                diff[(i, i)] -= &Int::ONE;
            }
            rows = rows.vstack(&diff);
        }
        Ok(PresentedSubgroup::new(&Subgroup::kernel_of(&self.module, &rows, &target)))
    }

    /// `M^N` with the induced action of `Q = G/N`, `q·m = σ(q)·m`.
    pub fn fixed_module(&self, ext: &GroupExtension) -> Result<FixedModule> {
        let inv = self.invariants(ext.g(), ext.n())?;
        let k = inv.group().ngens();
        let mut act = Vec::with_capacity(ext.q().order());
        for q in 0..ext.q().order() {
            let x = ext.sigma(q);
            let cols: Vec<Vec<Int>> = (0..k)
                .map(|i| {
                    let mut e = vec![Int::ZERO; k];
                    e[i] = Int::ONE;
                    inv.project(&self.act(x, &inv.include(&e))).expect("invariants are stable under G")
                })
                .collect();
            act.push(IntMatrix::from_columns(k, &cols));
        }
        let module = GModule::new(ext.q(), inv.group().clone(), act)?;
        Ok(FixedModule { module, invariants: inv })
    }
}

/// `M^K` presented abstractly, with its inclusion into `M`.
pub type Invariants = PresentedSubgroup;

/// `M^N` as a `Q`-module, with its embedding into `M`.
#[derive(Clone, Debug)]
pub struct FixedModule {
    pub module: GModule,
    pub invariants: Invariants,
}

/// Element-index tables for a finite module: addition, negation, action.
#[derive(Clone, Debug)]
pub struct ModuleTables {
    elements: Vec<Vec<Int>>,
    add: Vec<usize>,
    neg: Vec<usize>,
    act: Vec<usize>,
}

impl ModuleTables {
    fn new(m: &GModule) -> Self {
        let group = &m.module;
        let size = group.element_count().expect("finite module");
        let elements: Vec<Vec<Int>> = group.elements().collect();
        let mut add = Vec::with_capacity(size * size);
        for a in &elements {
            for b in &elements {
                add.push(group.index_of(&group.add(a, b)));
            }
        }
        let neg = elements.iter().map(|a| group.index_of(&group.neg(a))).collect();
        let mut act = Vec::with_capacity(m.group_order() * size);
        for g in 0..m.group_order() {
            for a in &elements {
                act.push(group.index_of(&m.act(g, a)));
            }
        }
        ModuleTables { elements, add, neg, act }
    }

    pub fn size(&self) -> usize {
        self.elements.len()
    }

    pub fn element(&self, i: usize) -> &[Int] {
        &self.elements[i]
    }

    #[inline]
    pub fn add(&self, a: usize, b: usize) -> usize {
        self.add[a * self.elements.len() + b]
    }

    #[inline]
    pub fn neg(&self, a: usize) -> usize {
        self.neg[a]
    }

    #[inline]
    pub fn sub(&self, a: usize, b: usize) -> usize {
        self.add(a, self.neg[b])
    }

    #[inline]
    pub fn act(&self, g: usize, a: usize) -> usize {
        self.act[g * self.elements.len() + a]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sign_action(order: usize, n: i64, sign: impl Fn(usize) -> bool) -> Vec<IntMatrix> {
        (0..order).map(|g| IntMatrix::from_i64_rows(&[&[if sign(g) { n - 1 } else { 1 }]])).collect()
    }

    #[test]
    fn trivial_action_invariants() {
        let g = FiniteGroup::cyclic(4);
        let m = GModule::trivial(4, FgAbGroup::finite(&[2, 4]).unwrap());
        let inv = m.invariants(&g, &[0, 1, 2, 3]).unwrap();
        assert_eq!(inv.group().order(), Some(Int::from(8)));
        assert!(inv.inclusion().is_injective() && inv.inclusion().is_surjective());
    }

    #[test]
    fn sign_action_has_no_invariants() {
        let g = FiniteGroup::cyclic(2);
        let m = GModule::new(&g, FgAbGroup::finite(&[3]).unwrap(), sign_action(2, 3, |x| x == 1)).unwrap();
        let inv = m.invariants(&g, &[0, 1]).unwrap();
        assert!(inv.group().is_trivial());
    }

    #[test]
    fn swap_invariants_are_diagonal() {
        let g = FiniteGroup::cyclic(2);
        let act = vec![IntMatrix::identity(2), IntMatrix::from_i64_rows(&[&[0, 1], &[1, 0]])];
        let m = GModule::new(&g, FgAbGroup::finite(&[2, 2]).unwrap(), act).unwrap();
        let inv = m.invariants(&g, &[0, 1]).unwrap();
        assert_eq!(inv.group().order(), Some(Int::from(2)));
        let img = inv.include(&[Int::ONE]);
        assert_eq!(img, vec![Int::ONE, Int::ONE]);
    }

    #[test]
    fn non_invertible_action_names_element() {
        let g = FiniteGroup::cyclic(2);
        let act = vec![IntMatrix::identity(1), IntMatrix::from_i64_rows(&[&[2]])];
        let err = GModule::new(&g, FgAbGroup::finite(&[4]).unwrap(), act).unwrap_err();
        assert!(matches!(err, Error::BadAction { element: 1, .. }));
    }

    #[test]
    fn non_homomorphic_action() {
        // Z/3 acting on Z/3 by -1 for the generator is not a homomorphism.
        let g = FiniteGroup::cyclic(3);
        let act = sign_action(3, 3, |x| x != 0);
        assert!(matches!(GModule::new(&g, FgAbGroup::finite(&[3]).unwrap(), act), Err(Error::ActionNotHomomorphism { .. })));
    }

    #[test]
    fn tables_are_consistent() {
        let g = FiniteGroup::cyclic(2);
        let act = vec![IntMatrix::identity(2), IntMatrix::from_i64_rows(&[&[0, 1], &[1, 0]])];
        let m = GModule::new(&g, FgAbGroup::finite(&[2, 2]).unwrap(), act).unwrap();
        let t = m.tables();
        assert_eq!(t.size(), 4);
        for a in 0..4 {
            assert_eq!(t.add(a, t.neg(a)), 0);
            assert_eq!(t.act(0, a), a);
            assert_eq!(t.act(1, t.act(1, a)), a);
        }
    }
}
