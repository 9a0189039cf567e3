use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::group::finite::FiniteGroup;

/// `1 -> N -> G -> Q -> 1` with the canonical section `σ(q) = min π⁻¹(q)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupExtension {
    g: FiniteGroup,
    n: Vec<usize>,
    n_group: FiniteGroup,
    n_pos: Vec<Option<usize>>,
    q: FiniteGroup,
    pi: Vec<usize>,
    sigma: Vec<usize>,
}

/// Coset quotient of `g` by the normal subgroup on `n`.
pub fn make_extension(g: &FiniteGroup, n: &[usize]) -> Result<GroupExtension> {
    let (n_group, n) = g.subgroup(n)?;
    if let Some((n_el, g_el)) = g.normality_witness(&n) {
        return Err(Error::NotNormal { n: n_el, g: g_el });
    }
    let order = g.order();
    let mut pi = vec![usize::MAX; order];
    let mut sigma = Vec::new();
    for x in 0..order {
        if pi[x] != usize::MAX {
            continue;
        }
        let label = sigma.len();
        sigma.push(x);
        for &m in &n {
            pi[g.mul(m, x)] = label;
        }
    }
    let q = FiniteGroup::from_fn(sigma.len(), |a, b| pi[g.mul(sigma[a], sigma[b])])?;
    let mut n_pos = vec![None; order];
    for (i, &x) in n.iter().enumerate() {
        n_pos[x] = Some(i);
    }
    Ok(GroupExtension { g: g.clone(), n, n_group, n_pos, q, pi, sigma })
}

impl GroupExtension {
    pub fn g(&self) -> &FiniteGroup {
        &self.g
    }

    pub fn q(&self) -> &FiniteGroup {
        &self.q
    }

    /// Elements of `N` as indices into `G`, increasing.
    pub fn n(&self) -> &[usize] {
        &self.n
    }

    /// `N` as an abstract group; element `i` is `n()[i]`.
    pub fn n_group(&self) -> &FiniteGroup {
        &self.n_group
    }

    /// Position of `x` in `n()`, if `x ∈ N`.
    pub fn n_position(&self, x: usize) -> Option<usize> {
        self.n_pos[x]
    }

    pub fn in_n(&self, x: usize) -> bool {
        self.n_pos[x].is_some()
    }

    #[inline]
    pub fn pi(&self, x: usize) -> usize {
        self.pi[x]
    }

    #[inline]
    pub fn sigma(&self, q: usize) -> usize {
        self.sigma[q]
    }

    pub fn pi_map(&self) -> &[usize] {
        &self.pi
    }

    pub fn sigma_map(&self) -> &[usize] {
        &self.sigma
    }

    /// All `x ∈ G` with `π(x) = q`.
    pub fn lifts(&self, q: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.g.order()).filter(move |&x| self.pi[x] == q)
    }

    pub fn group_ring_data(&self) -> GroupRingData {
        let order = self.g.order();
        let mut n_part = vec![0; order];
        for (x, slot) in n_part.iter_mut().enumerate() {
            *slot = self.g.mul(x, self.g.inv(self.sigma[self.pi[x]]));
        }
        GroupRingData { reps: self.sigma.clone(), n_part, ig_basis: (1..order).collect() }
    }
}

/// Coset data for `ℤG` as a free `ℤN`-module on `{σ(q)}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupRingData {
    reps: Vec<usize>,
    n_part: Vec<usize>,
    ig_basis: Vec<usize>,
}

impl GroupRingData {
    pub fn representatives(&self) -> &[usize] {
        &self.reps
    }

    /// Elements `g ≠ 1` indexing the basis `g - 1` of the augmentation ideal.
    pub fn ig_basis(&self) -> &[usize] {
        &self.ig_basis
    }

    /// The `n ∈ N` with `g = n·σ(π(g))`.
    pub fn n_part(&self, g: usize) -> usize {
        self.n_part[g]
    }

    /// `(n, q)` with `g = n·σ(q)`.
    pub fn decompose(&self, ext: &GroupExtension, g: usize) -> (usize, usize) {
        (self.n_part[g], ext.pi(g))
    }

    pub fn compose(&self, ext: &GroupExtension, n: usize, q: usize) -> usize {
        ext.g().mul(n, self.reps[q])
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn check_extension(ext: &GroupExtension) {
        let (g, q) = (ext.g(), ext.q());
        assert_eq!(g.order(), ext.n().len() * q.order());
        assert!(g.is_homomorphism(q, ext.pi_map()));
        for qq in 0..q.order() {
            assert_eq!(ext.pi(ext.sigma(qq)), qq);
            assert_eq!(ext.lifts(qq).next(), Some(ext.sigma(qq)));
        }
        assert_eq!(ext.sigma(0), 0);
        for x in 0..g.order() {
            assert_eq!(ext.in_n(x), ext.pi(x) == 0);
        }
        let data = ext.group_ring_data();
        let mut seen = vec![false; g.order()];
        for &n in ext.n() {
            for qq in 0..q.order() {
                let x = data.compose(ext, n, qq);
                assert!(!core::mem::replace(&mut seen[x], true));
                assert_eq!(data.decompose(ext, x), (n, qq));
            }
        }
    }

    #[test]
    fn z4_over_two() {
        let ext = make_extension(&FiniteGroup::cyclic(4), &[0, 2]).unwrap();
        check_extension(&ext);
        assert_eq!(ext.q().order(), 2);
        assert_eq!(ext.sigma_map(), &[0, 1]);
        let data = ext.group_ring_data();
        assert_eq!(data.representatives(), &[0, 1]);
        assert_eq!(data.decompose(&ext, 3), (2, 1));
    }

    #[test]
    fn non_normal_subgroup_has_witness() {
        let s3 = fixtures::symmetric3();
        // Transposition swapping the last two points.
        let err = make_extension(&s3, &[0, 1]).unwrap_err();
        let Error::NotNormal { n, g } = err else { panic!("{err:?}") };
        assert_eq!(n, 1);
        assert!(![0, 1].contains(&s3.conj(g, n)));
    }

    #[test]
    fn not_a_subgroup() {
        assert!(matches!(make_extension(&FiniteGroup::cyclic(4), &[0, 1]), Err(Error::NotSubgroup(_))));
    }

    #[test]
    fn degenerate_subgroups() {
        for g in [fixtures::dihedral8(), fixtures::quaternion8(), fixtures::symmetric3()] {
            let all: Vec<usize> = (0..g.order()).collect();
            let full = make_extension(&g, &all).unwrap();
            check_extension(&full);
            assert_eq!(full.q().order(), 1);
            assert_eq!(full.group_ring_data().representatives(), &[0]);
            let triv = make_extension(&g, &[0]).unwrap();
            check_extension(&triv);
            assert_eq!(triv.group_ring_data().representatives(), &all[..]);
            assert_eq!(triv.q(), &g);
        }
    }

    #[test]
    fn fixture_quotients() {
        let d8 = make_extension(&fixtures::dihedral8(), &[0, 2]).unwrap();
        let q8 = make_extension(&fixtures::quaternion8(), &[0, 1]).unwrap();
        let k4 = FiniteGroup::cyclic(2).direct_product(&FiniteGroup::cyclic(2));
        for ext in [&d8, &q8] {
            check_extension(ext);
            assert!(ext.q().find_isomorphism(&k4).is_some());
        }
    }
}
