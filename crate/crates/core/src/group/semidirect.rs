use alloc::vec::Vec;

use crate::group::finite::FiniteGroup;
use crate::group::module::{GModule, ModuleTables};

/// `M ⋊ G` realized as a multiplication table.
///
/// `(m, g)` sits at index `m * |G| + g`, with `m` the mixed-radix index of
/// the module element.
#[derive(Clone, Debug)]
pub struct Semidirect {
    group: FiniteGroup,
    g_order: usize,
    tables: ModuleTables,
}

pub fn semidirect_product(m: &GModule, g: &FiniteGroup) -> Semidirect {
    let tables = m.tables();
    let n = g.order();
    let group = FiniteGroup::from_fn(tables.size() * n, |x, y| {
        let (m1, g1) = (x / n, x % n);
        let (m2, g2) = (y / n, y % n);
        tables.add(m1, tables.act(g1, m2)) * n + g.mul(g1, g2)
    })
    .expect("semidirect product of a group by a module");
    Semidirect { group, g_order: n, tables }
}

impl Semidirect {
    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn tables(&self) -> &ModuleTables {
        &self.tables
    }

    #[inline]
    pub fn index(&self, m: usize, g: usize) -> usize {
        m * self.g_order + g
    }

    #[inline]
    pub fn parts(&self, x: usize) -> (usize, usize) {
        (x / self.g_order, x % self.g_order)
    }

    /// Images of the module elements `(m, 1)`, in canonical element order.
    pub fn module_embedding(&self) -> Vec<usize> {
        (0..self.tables.size()).map(|m| self.index(m, 0)).collect()
    }

    /// `(m, g) ↦ g`.
    pub fn projection(&self) -> Vec<usize> {
        (0..self.group.order()).map(|x| x % self.g_order).collect()
    }

    /// `g ↦ (0, g)`.
    pub fn complement(&self) -> Vec<usize> {
        (0..self.g_order).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::group::extension::make_extension;
    use crate::linalg::{FgAbGroup, IntMatrix};

    #[test]
    fn trivial_module_gives_the_group() {
        let g = fixtures::symmetric3();
        let sd = semidirect_product(&GModule::trivial(6, FgAbGroup::trivial()), &g);
        assert_eq!(sd.group(), &g);
    }

    #[test]
    fn klein_four() {
        let g = FiniteGroup::cyclic(2);
        let sd = semidirect_product(&GModule::trivial(2, FgAbGroup::finite(&[2]).unwrap()), &g);
        assert_eq!(sd.group().order(), 4);
        assert!((0..4).all(|x| sd.group().element_order(x) <= 2));
        assert!(sd.group().is_abelian());
    }

    #[test]
    fn sign_action_gives_s3() {
        let g = FiniteGroup::cyclic(2);
        let act = alloc::vec![IntMatrix::identity(1), IntMatrix::from_i64_rows(&[&[2]])];
        let m = GModule::new(&g, FgAbGroup::finite(&[3]).unwrap(), act).unwrap();
        let sd = semidirect_product(&m, &g);
        assert!(!sd.group().is_abelian());
        assert!(sd.group().find_isomorphism(&fixtures::symmetric3()).is_some());
    }

    #[test]
    fn quotient_by_module_recovers_group() {
        let g = fixtures::dihedral8();
        let m = GModule::trivial(8, FgAbGroup::finite(&[2]).unwrap());
        let sd = semidirect_product(&m, &g);
        let ext = make_extension(sd.group(), &sd.module_embedding()).unwrap();
        assert_eq!(ext.q(), &g);
        assert!(sd.group().is_homomorphism(&g, &sd.projection()));
    }
}
