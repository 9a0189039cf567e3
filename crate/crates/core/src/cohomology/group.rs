use alloc::vec::Vec;

use crate::cohomology::cochain::{apply, differential, CochainSpace, SIZE_LIMIT};
use crate::error::{Error, Result};
use crate::group::{FiniteGroup, GModule};
use crate::int::Int;
use crate::linalg::{AbHom, FgAbGroup, IntMatrix, SpanSolver, Subquotient};

/// `Hⁿ(G, M) = ker dⁿ / im dⁿ⁻¹` on normalized cochains.
#[derive(Clone, Debug)]
pub struct Cohomology {
    degree: usize,
    space: CochainSpace,
    prev_space: Option<CochainSpace>,
    next_space: CochainSpace,
    prev: IntMatrix,
    next: IntMatrix,
    presentation: Subquotient,
}

/// A cohomology class with its canonical representative cocycle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CohomologyClass {
    pub coords: Vec<Int>,
    pub representative: Vec<Int>,
}

pub const MAX_DEGREE: usize = 3;

pub fn cohomology(group: &FiniteGroup, module: &GModule, n: usize) -> Result<Cohomology> {
    if n > MAX_DEGREE {
        return Err(Error::DegreeOutOfRange(n));
    }
    let k = module.ngens().max(1);
    let work = (0..=n).try_fold(k, |acc, _| acc.checked_mul(group.order())).unwrap_or(usize::MAX);
    if work > SIZE_LIMIT {
        return Err(Error::SizeLimit { entries: work, limit: SIZE_LIMIT });
    }
    let order = group.order();
    let m = module.module();
    let space = CochainSpace::bar(order, m, n)?;
    let next_space = CochainSpace::bar(order, m, n + 1)?;
    let next = differential(group, module, &space, &next_space);
    let (prev_space, prev) = if n == 0 {
        (None, IntMatrix::zeros(space.dim(), 0))
    } else {
        let ps = CochainSpace::bar(order, m, n - 1)?;
        let d = differential(group, module, &ps, &space);
        (Some(ps), d)
    };
    let moduli = space.moduli();
    let cycles = SpanSolver::new(&next, &next_space.moduli()).relations().basis_matrix();
    let presentation = Subquotient::new(&cycles, &prev, &moduli)?;
    Ok(Cohomology { degree: n, space, prev_space, next_space, prev, next, presentation })
}

impl Cohomology {
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn group(&self) -> &FgAbGroup {
        self.presentation.group()
    }

    pub fn order(&self) -> Int {
        self.group().order().expect("cohomology of a finite module is finite")
    }

    pub fn space(&self) -> &CochainSpace {
        &self.space
    }

    pub fn prev_space(&self) -> Option<&CochainSpace> {
        self.prev_space.as_ref()
    }

    /// `dⁿ⁻¹` as a matrix (zero columns in degree 0).
    pub fn coboundary_matrix(&self) -> &IntMatrix {
        &self.prev
    }

    /// `dⁿ` as a matrix.
    pub fn differential(&self) -> &IntMatrix {
        &self.next
    }

    pub fn is_cocycle(&self, z: &[Int]) -> bool {
        self.next_space.is_zero(&self.next.mul_vec(z))
    }

    pub fn coboundary(&self, w: &[Int]) -> Vec<Int> {
        apply(&self.prev, &self.space, w)
    }

    pub fn classify(&self, z: &[Int]) -> Result<Vec<Int>> {
        if !self.is_cocycle(z) {
            return Err(Error::NotACocycle { degree: self.degree });
        }
        self.presentation.project(z)
    }

    pub fn is_coboundary(&self, z: &[Int]) -> bool {
        self.classify(z).is_ok_and(|c| self.group().is_zero(&c))
    }

    pub fn representative(&self, c: &[Int]) -> Vec<Int> {
        let mut r = self.presentation.lift(c);
        self.space.reduce(&mut r);
        r
    }

    pub fn class(&self, c: &[Int]) -> CohomologyClass {
        let coords = self.group().canonical(c);
        CohomologyClass { representative: self.representative(&coords), coords }
    }

    pub fn class_of(&self, z: &[Int]) -> Result<CohomologyClass> {
        let coords = self.classify(z)?;
        Ok(CohomologyClass { coords, representative: z.to_vec() })
    }

    /// Representatives of the standard generators.
    pub fn generator_representatives(&self) -> Vec<Vec<Int>> {
        let k = self.group().ngens();
        (0..k)
            .map(|i| {
                let mut e = self.group().zero();
                e[i] = Int::ONE;
                self.representative(&e)
            })
            .collect()
    }

    /// Solves `d w = z` for a coboundary `z`.
    pub fn coboundary_preimage(&self, z: &[Int]) -> Option<Vec<Int>> {
        let w = crate::linalg::solve(&self.prev, z, Some(&self.space.moduli()))?;
        let mut w = w;
        if let Some(ps) = &self.prev_space {
            ps.reduce(&mut w);
        }
        Some(w)
    }
}

/// The map on cohomology induced by a cochain-level map.
pub fn induced_map(source: &Cohomology, target: &Cohomology, cochain_map: &IntMatrix) -> Result<AbHom> {
    let images: Vec<Vec<Int>> = source
        .generator_representatives()
        .iter()
        .map(|z| target.classify(&apply(cochain_map, target.space(), z)))
        .collect::<Result<_>>()?;
    AbHom::from_images(source.group().clone(), target.group().clone(), &images)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::group::FiniteGroup;

    fn z2() -> GModule {
        GModule::trivial(2, FgAbGroup::finite(&[2]).unwrap())
    }

    fn orders(g: &FiniteGroup, m: &GModule, max: usize) -> Vec<i64> {
        (0..=max).map(|n| cohomology(g, m, n).unwrap().order().to_i64().unwrap()).collect()
    }

    #[test]
    fn cyclic_of_order_two() {
        let g = FiniteGroup::cyclic(2);
        let m = z2();
        for n in 1..=3 {
            let h = cohomology(&g, &m, n).unwrap();
            assert_eq!(h.group(), &FgAbGroup::finite(&[2]).unwrap(), "degree {n}");
        }
    }

    #[test]
    fn klein_four_degree_two() {
        let g = fixtures::klein4();
        let m = GModule::trivial(4, FgAbGroup::finite(&[2]).unwrap());
        let h = cohomology(&g, &m, 2).unwrap();
        assert_eq!(h.group(), &FgAbGroup::finite(&[2, 2, 2]).unwrap());
    }

    #[test]
    fn degree_zero_is_invariants() {
        for f in fixtures::all() {
            let h0 = cohomology(&f.group, &f.module, 0).unwrap();
            let all: Vec<usize> = (0..f.group.order()).collect();
            let inv = f.module.invariants(&f.group, &all).unwrap();
            assert_eq!(h0.order(), inv.group().order().unwrap(), "{}", f.name);
        }
    }

    #[test]
    fn known_orders() {
        // Z/n with trivial Z/m coefficients has gcd(n, m) in every positive degree.
        let m3 = GModule::trivial(9, FgAbGroup::finite(&[3]).unwrap());
        assert_eq!(orders(&FiniteGroup::cyclic(9), &m3, 2), [3, 3, 3]);
        let m2 = GModule::trivial(3, FgAbGroup::finite(&[2]).unwrap());
        assert_eq!(orders(&FiniteGroup::cyclic(3), &m2, 3), [2, 1, 1, 1]);
        // S3 with sign-twisted Z/3 is the Q-invariant part of H*(A3, Z/3): inversion
        // acts on H^2k by (-1)^k and the twist contributes another -1.
        let f = fixtures::by_name("fix-c").unwrap();
        assert_eq!(orders(&f.group, &f.module, 3), [1, 3, 3, 1]);
    }

    #[test]
    fn classes_round_trip() {
        for f in fixtures::all() {
            for n in 0..=2 {
                let h = cohomology(&f.group, &f.module, n).unwrap();
                for c in h.group().elements() {
                    let r = h.representative(&c);
                    assert!(h.is_cocycle(&r));
                    assert_eq!(h.classify(&r).unwrap(), c, "{} degree {n}", f.name);
                }
            }
        }
    }

    #[test]
    fn non_cocycle_is_rejected() {
        let g = FiniteGroup::cyclic(4);
        let m = GModule::trivial(4, FgAbGroup::finite(&[2]).unwrap());
        let h = cohomology(&g, &m, 1).unwrap();
        // φ(1) = 1, φ(2) = 0, φ(3) = 0 fails φ(2) = φ(1) + φ(1) + ... consistency at (1, 3).
        let z = [Int::ONE, Int::ZERO, Int::ZERO];
        assert_eq!(h.classify(&z), Err(Error::NotACocycle { degree: 1 }));
        assert!(matches!(cohomology(&g, &m, 4), Err(Error::DegreeOutOfRange(4))));
    }
}
