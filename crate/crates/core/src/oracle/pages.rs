use alloc::format;
use alloc::vec::Vec;

use crate::cohomology::CochainSpace;
use crate::error::{Error, Result};
use crate::int::Int;
use crate::linalg::{reduced, AbHom, FgAbGroup, IntMatrix, Subquotient};
use crate::oracle::filtration::Filtration;
use crate::perturb::Perturber;
use crate::verdict::Verdict;

/// `E₂^{p,q} = Z₂^{p,q} / (Z₁^{p+1,q−1} + d Z₁^{p−1,q})` on `F^p C^{p+q}`.
#[derive(Clone, Debug)]
pub struct Page {
    pub p: usize,
    pub q: usize,
    pub space: CochainSpace,
    /// Generators of `Z₂^{p,q}` as columns.
    pub cycles: IntMatrix,
    /// Generators of the denominator as columns.
    pub boundaries: IntMatrix,
    presentation: Subquotient,
}

impl Page {
    pub fn degree(&self) -> usize {
        self.p + self.q
    }

    pub fn group(&self) -> &FgAbGroup {
        self.presentation.group()
    }

    pub fn order(&self) -> Int {
        self.group().order().expect("finite module")
    }

    pub fn contains(&self, x: &[Int]) -> bool {
        self.presentation.contains(x)
    }

    /// Class of an element of `Z₂^{p,q}` given in `F^p C^{p+q}` coordinates.
    pub fn classify(&self, x: &[Int]) -> Result<Vec<Int>> {
        self.presentation.project(x).map_err(|_| Error::NotACocycle { degree: self.degree() })
    }

    pub fn lift(&self, c: &[Int]) -> Vec<Int> {
        self.presentation.lift(c)
    }

    pub fn lift_matrix(&self) -> IntMatrix {
        self.presentation.lift_matrix()
    }
}

pub fn e2_page(filt: &Filtration, p: usize, q: usize) -> Result<Page> {
    let n = p + q;
    let space = filt.space(p, n)?;
    let moduli = space.moduli();
    let cycles = filt.cycles(p, n, p + 2)?;
    let mut boundaries = IntMatrix::zeros(space.dim(), 0);
    if p < n {
        let z = filt.cycles(p + 1, n, p + 2)?;
        boundaries = boundaries.hstack(&filt.embed(p + 1, p, n)?.mul(&z));
    }
    if n > 0 {
        let pm = p.saturating_sub(1).min(n - 1);
        let z = filt.cycles(pm, n - 1, p)?;
        let dz = filt.d(pm, n - 1)?.mul(&z);
        boundaries = boundaries.hstack(&filt.restrict(pm, p, n)?.mul(&dz));
    }
    let cols: Vec<Vec<Int>> = boundaries.columns().iter().map(|c| reduced(c, &moduli)).collect();
    let boundaries = IntMatrix::from_columns(space.dim(), &cols);
    let presentation = Subquotient::new(&cycles, &boundaries, &moduli)?;
    Ok(Page { p, q, space, cycles, boundaries, presentation })
}

/// `d₂ x = [dx]` read in `F^{p+2} C^{n+1}`.
pub fn d2_cochain(filt: &Filtration, src: &Page, x: &[Int]) -> Result<Vec<Int>> {
    let n = src.degree();
    let dx = filt.d(src.p, n)?.mul_vec(x);
    let target = filt.space(src.p + 2, n + 1)?;
    let y = filt.restrict(src.p, src.p + 2, n + 1)?.mul_vec(&dx);
    let check = filt.embed(src.p + 2, src.p, n + 1)?.mul_vec(&y);
    let full = filt.space(src.p, n + 1)?;
    if !full.is_zero(&dx.iter().zip(&check).map(|(a, b)| a - b).collect::<Vec<_>>()) {
        return Err(Error::Inconsistent(format!("dx does not lie in F^{}", src.p + 2)));
    }
    Ok(reduced(&y, &target.moduli()))
}

/// `d₂: E₂^{p,q} -> E₂^{p+2,q−1}`.
pub fn d2(filt: &Filtration, src: &Page, dst: &Page) -> Result<AbHom> {
    if dst.p != src.p + 2 || dst.q + 1 != src.q {
        return Err(Error::UnsupportedBidegree { p: dst.p, q: dst.q });
    }
    let lifts = src.lift_matrix();
    let images: Vec<Vec<Int>> = lifts.columns().iter().map(|x| dst.classify(&d2_cochain(filt, src, x)?)).collect::<Result<_>>()?;
    AbHom::from_images(src.group().clone(), dst.group().clone(), &images)
}

/// Recomputes `d₂` on perturbed representatives `x + b` with `b` a random
/// element of the denominator of the source page.
pub fn d2_well_defined(filt: &Filtration, src: &Page, dst: &Page, map: &AbHom, rng: &mut Perturber, trials: usize) -> Verdict {
    let moduli = src.space.moduli();
    let mut done = 0;
    for c in src.group().elements() {
        if done >= trials {
            break;
        }
        let x = src.lift(&c);
        let b = rng.nonzero_combination(&src.boundaries, &moduli);
        let y: Vec<Int> = x.iter().zip(&b).map(|(u, v)| u + v).collect();
        let got = d2_cochain(filt, src, &y).and_then(|z| dst.classify(&z));
        match got {
            Ok(v) if v == map.apply(&c) => {}
            Ok(v) => return Verdict::fail(format!("d₂ on E₂^{{{},{}}}: class {c:?} maps to {:?}, perturbed to {v:?}", src.p, src.q, map.apply(&c))),
            Err(e) => return Verdict::fail(format!("d₂ on E₂^{{{},{}}}: perturbed lift of {c:?} fails: {e}", src.p, src.q)),
        }
        done += 1;
    }
    // Elements run out on tiny pages; keep perturbing random classes.
    while done < trials {
        let c: Vec<Int> = src.group().canonical(&(0..src.group().ngens()).map(|_| rng.coefficient(64)).collect::<Vec<_>>());
        let x = src.lift(&c);
        let b = rng.nonzero_combination(&src.boundaries, &moduli);
        let y: Vec<Int> = x.iter().zip(&b).map(|(u, v)| u + v).collect();
        match d2_cochain(filt, src, &y).and_then(|z| dst.classify(&z)) {
            Ok(v) if v == map.apply(&c) => {}
            _ => return Verdict::fail(format!("d₂ on E₂^{{{},{}}} depends on the representative of {c:?}", src.p, src.q)),
        }
        done += 1;
    }
    Verdict::Pass
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::group::make_extension;

    fn filtration(name: &str) -> Filtration {
        let f = fixtures::by_name(name).unwrap();
        Filtration::new(&make_extension(&f.group, &f.normal).unwrap(), &f.module)
    }

    fn order(f: &Filtration, p: usize, q: usize) -> i64 {
        e2_page(f, p, q).unwrap().order().to_i64().unwrap()
    }

    #[test]
    fn trivial_normal_subgroup_concentrates_on_the_bottom_row() {
        let f = filtration("trivial-n");
        // H*(S₃, ℤ/3 sign) has orders 1, 3, 3, 1 in degrees 0..=3
        assert_eq!(order(&f, 0, 1), 1);
        assert_eq!(order(&f, 1, 1), 1);
        assert_eq!(order(&f, 1, 0), 3);
        assert_eq!(order(&f, 2, 0), 3);
        assert_eq!(order(&f, 3, 0), 1);
    }

    #[test]
    fn full_normal_subgroup_concentrates_on_the_left_column() {
        let f = filtration("full-n");
        // H¹(D₈, ℤ/2) = (ℤ/2)²
        assert_eq!(order(&f, 0, 1), 4);
        assert_eq!(order(&f, 1, 0), 1);
        assert_eq!(order(&f, 1, 1), 1);
        assert_eq!(order(&f, 2, 0), 1);
    }

    #[test]
    fn fix_a_pages() {
        let f = filtration("fix-a");
        for (p, q) in [(0, 1), (1, 0), (1, 1), (2, 0), (3, 0)] {
            assert_eq!(order(&f, p, q), 2, "({p}, {q})");
        }
        let e01 = e2_page(&f, 0, 1).unwrap();
        let e20 = e2_page(&f, 2, 0).unwrap();
        let d = d2(&f, &e01, &e20).unwrap();
        assert!(d.is_injective());
        let mut rng = Perturber::new(1);
        assert_eq!(d2_well_defined(&f, &e01, &e20, &d, &mut rng, 4), Verdict::Pass);
    }

    #[test]
    fn wrong_bidegree_is_rejected() {
        let f = filtration("fix-a");
        let a = e2_page(&f, 0, 1).unwrap();
        assert!(matches!(d2(&f, &a, &a), Err(Error::UnsupportedBidegree { .. })));
    }
}
