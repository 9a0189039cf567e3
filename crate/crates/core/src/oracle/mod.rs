//! The Lyndon–Hochschild–Serre spectral sequence in total degree at most
//! three, computed directly from the Hochschild–Serre filtration of the
//! normalized bar complex of `G`. Nothing here goes through the seven-term
//! constructions; the edge maps are the only bridge to `H*(Q, M^N)` and
//! `H¹(N, M)^Q`.

pub mod compare;
pub mod filtration;
pub mod pages;

use alloc::format;
use alloc::vec::Vec;

use crate::cohomology::{pullback, Cohomology};
use crate::error::{Error, Result};
use crate::group::{FixedModule, GModule, GroupExtension};
use crate::int::Int;
use crate::linalg::{reduced, solve, AbHom, Subgroup};
use crate::perturb::Perturber;
use crate::seven_term::Context;
use crate::verdict::{Check, Verdict};

pub use compare::{compare_with_oracle, OracleComparison};
pub use filtration::Filtration;
pub use pages::{d2, d2_cochain, d2_well_defined, e2_page, Page};

/// Bidegrees whose `E₂` term the oracle computes on request.
pub fn supported(p: usize, q: usize) -> bool {
    p + q <= 3
}

#[derive(Clone, Debug)]
pub struct Oracle {
    pub filtration: Filtration,
    pub e01: Page,
    pub e10: Page,
    pub e11: Page,
    pub e20: Page,
    pub e30: Page,
    /// `d₂: E₂^{0,1} -> E₂^{2,0}`.
    pub d2_01: AbHom,
    /// `d₂: E₂^{1,1} -> E₂^{3,0}`.
    pub d2_11: AbHom,
}

impl Oracle {
    pub fn new(ext: &GroupExtension, module: &GModule) -> Result<Self> {
        let filtration = Filtration::new(ext, module);
        let page = |p, q| e2_page(&filtration, p, q);
        let (e01, e10, e11, e20, e30) = (page(0, 1)?, page(1, 0)?, page(1, 1)?, page(2, 0)?, page(3, 0)?);
        let d2_01 = d2(&filtration, &e01, &e20)?;
        let d2_11 = d2(&filtration, &e11, &e30)?;
        Ok(Oracle { filtration, e01, e10, e11, e20, e30, d2_01, d2_11 })
    }

    /// `E₂^{p,q}` for any supported bidegree.
    pub fn page(&self, p: usize, q: usize) -> Result<Page> {
        if !supported(p, q) {
            return Err(Error::UnsupportedBidegree { p, q });
        }
        e2_page(&self.filtration, p, q)
    }

    /// `E_∞^{0,1} = ker d₂^{0,1}`.
    pub fn einfty_01(&self) -> Subgroup {
        self.d2_01.kernel()
    }

    /// `E_∞^{1,1} = ker d₂^{1,1}`.
    pub fn einfty_11(&self) -> Subgroup {
        self.d2_11.kernel()
    }

    /// `|E_∞^{2,0}| = |E₂^{2,0} / im d₂^{0,1}|`.
    pub fn einfty_20_order(&self) -> Int {
        let im = self.d2_01.image().order().expect("finite");
        self.e20.order().exact_div(&im)
    }

    /// The edge map `H^p(Q, M^N) -> E₂^{p,0}` given by inflation, for `p = 1, 2, 3`.
    pub fn row_edge(&self, h_q: &Cohomology, fixed: &FixedModule) -> Result<AbHom> {
        let page = match h_q.degree() {
            1 => &self.e10,
            2 => &self.e20,
            3 => &self.e30,
            p => return Err(Error::UnsupportedBidegree { p, q: 0 }),
        };
        let ext = self.filtration.extension();
        let m = pullback(h_q.space(), &page.space, Some(ext.pi_map()), Some(&fixed.invariants.inclusion().matrix));
        let moduli = page.space.moduli();
        let images: Vec<Vec<Int>> = h_q
            .generator_representatives()
            .iter()
            .map(|z| page.classify(&reduced(&m.mul_vec(z), &moduli)))
            .collect::<Result<_>>()?;
        AbHom::from_images(h_q.group().clone(), page.group().clone(), &images)
    }

    /// The edge map `E₂^{0,1} -> H¹(N, M)^Q` given by restriction to `N`.
    pub fn col_edge(&self, cx: &Context) -> Result<AbHom> {
        let ext = self.filtration.extension();
        let m = pullback(&self.e01.space, cx.h1n.space(), Some(ext.n()), None);
        let images: Vec<Vec<Int>> = self
            .e01
            .lift_matrix()
            .columns()
            .iter()
            .map(|x| {
                let c = cx.h1n.classify(&reduced(&m.mul_vec(x), &cx.h1n.space().moduli()))?;
                cx.h1n_inv.project(&c)
            })
            .collect::<Result<_>>()?;
        AbHom::from_images(self.e01.group().clone(), cx.h1n_inv.group().clone(), &images)
    }

    /// Class in `E₂^{1,1}` of a 2-cocycle on `G` whose class lies in `F¹H²`,
    /// after moving it into `F¹C²` by a coboundary `dw`; `shift` is added to `w`.
    fn f1_with(&self, z: &[Int], shift: Option<&[Int]>) -> Result<Vec<Int>> {
        let f = &self.filtration;
        let c2 = f.space(0, 2)?;
        let moduli = c2.moduli();
        let cons = f.consistency(0, 2, 1)?;
        let d01 = f.d(0, 1)?;
        let a = cons.mul(&d01);
        let b: Vec<Int> = cons.mul_vec(z).iter().map(|x| -x).collect();
        let mut w = solve(&a, &b, Some(&moduli)).ok_or(Error::NotSplitOnSubgroup)?;
        if let Some(s) = shift {
            for (x, y) in w.iter_mut().zip(s) {
                *x += y;
            }
        }
        let moved: Vec<Int> = z.iter().zip(d01.mul_vec(&w)).map(|(x, y)| x + &y).collect();
        if !f.consistency(0, 2, 1)?.mul_vec(&moved).iter().zip(&moduli).all(|(x, m)| m.divides(x)) {
            return Err(Error::Inconsistent("shifted cocycle is not in F¹C²".into()));
        }
        let zf = reduced(&f.restrict(0, 1, 2)?.mul_vec(&moved), &self.e11.space.moduli());
        let dz = f.d(1, 2)?.mul_vec(&zf);
        if !f.space(1, 3)?.is_zero(&dz) {
            return Err(Error::NotACocycle { degree: 2 });
        }
        self.e11.classify(&zf)
    }

    pub fn f1_class(&self, z: &[Int]) -> Result<Vec<Int>> {
        self.f1_with(z, None)
    }

    /// `F¹H² -> E_∞^{1,1} ⊆ E₂^{1,1}` on `H²(G, M)₁`.
    pub fn f1_map(&self, cx: &Context) -> Result<AbHom> {
        let k = cx.h2g1.group().ngens();
        let images: Vec<Vec<Int>> = (0..k)
            .map(|i| {
                let mut e = cx.h2g1.group().zero();
                e[i] = Int::ONE;
                self.f1_class(&cx.h2g1_representative(&e))
            })
            .collect::<Result<_>>()?;
        AbHom::from_images(cx.h2g1.group().clone(), self.e11.group().clone(), &images)
    }

    /// `f¹` computed again with `z + dv` and with the moving cochain changed
    /// by random elements of `{w : dw ∈ F¹C²}`.
    pub fn f1_well_defined(&self, cx: &Context, map: &AbHom, rng: &mut Perturber, trials: usize) -> Result<Verdict> {
        let f = &self.filtration;
        let c1 = f.space(0, 1)?;
        let shifts = f.cycles(0, 1, 1)?;
        let coboundaries = f.d(0, 1)?;
        let moduli2 = f.space(0, 2)?.moduli();
        let elements: Vec<Vec<Int>> = cx.h2g1.group().elements().collect();
        for t in 0..trials {
            let a = &elements[t % elements.len()];
            let z = cx.h2g1_representative(a);
            let v = rng.combination(&coboundaries, &moduli2);
            let z2: Vec<Int> = z.iter().zip(&v).map(|(x, y)| x + y).collect();
            let s = rng.combination(&shifts, &c1.moduli());
            let want = map.apply(a);
            for (label, got) in [("z + dv", self.f1_with(&z2, None)), ("shifted w", self.f1_with(&z, Some(&s)))] {
                match got {
                    Ok(c) if c == want => {}
                    Ok(c) => return Ok(Verdict::fail(format!("f¹ of {a:?} with {label}: {c:?} instead of {want:?}"))),
                    Err(e) => return Ok(Verdict::fail(format!("f¹ of {a:?} with {label}: {e}"))),
                }
            }
        }
        Ok(Verdict::Pass)
    }

    /// `F^s Hⁿ(G, M)` inside `h`: classes with a representative in `F^s Cⁿ`.
    pub fn filtration_subgroup(&self, h: &Cohomology, s: usize) -> Result<Subgroup> {
        let n = h.degree();
        let f = &self.filtration;
        if s > n {
            return Ok(Subgroup::trivial(h.group()));
        }
        let z = f.cycles(s, n, n + 2)?;
        let e = f.embed(s, 0, n)?;
        let gens: Vec<Vec<Int>> = e.mul(&z).columns().iter().map(|x| h.classify(&reduced(x, &h.space().moduli()))).collect::<Result<_>>()?;
        Ok(Subgroup::generated(h.group(), &gens))
    }

    /// `E₂^{0,2} -> E₂^{2,1} -> E₂^{4,0}` composes to zero.
    pub fn check_d2_squared(&self) -> Verdict {
        let f = &self.filtration;
        let pages = (e2_page(f, 0, 2), e2_page(f, 2, 1), e2_page(f, 4, 0));
        let (a, b, c) = match pages {
            (Ok(a), Ok(b), Ok(c)) => (a, b, c),
            (Err(e), _, _) | (_, Err(e), _) | (_, _, Err(e)) => return Verdict::skipped(format!("E₂ in total degree 4: {e}")),
        };
        let composite = d2(f, &a, &b).and_then(|x| Ok((x, d2(f, &b, &c)?))).and_then(|(x, y)| x.then(&y));
        match composite {
            Ok(m) => Verdict::check(m.kernel().is_everything(), || "d₂∘d₂ ≠ 0 on E₂^{0,2}".into()),
            Err(e) => Verdict::fail(format!("d₂ out of E₂^{{0,2}}: {e}")),
        }
    }

    /// Self-consistency of the oracle against the cohomology of `G`, `N` and `Q`.
    pub fn self_checks(&self, cx: &Context, rng: &mut Perturber, top: usize) -> Result<Vec<Check>> {
        let f = &self.filtration;
        let mut out = Vec::new();
        out.push(Check::new("d∘d = 0", f.check_d_squared(top + 1)));
        out.push(Check::new("d(F^p) ⊆ F^p", f.check_preserved(top)));
        out.push(Check::new("F^{p+1} ⊆ F^p", f.check_decreasing(top)));

        let order = |s: &Subgroup| s.order().expect("finite");
        let f1h1 = self.filtration_subgroup(&cx.h1g, 1)?;
        let f1h2 = self.filtration_subgroup(&cx.h2g, 1)?;
        let f2h2 = self.filtration_subgroup(&cx.h2g, 2)?;
        let e01 = order(&self.einfty_01());
        let e11 = order(&self.einfty_11());
        let e20 = self.einfty_20_order();
        let mut book = Vec::new();
        book.push(Verdict::check(cx.h1g.order() == &self.e10.order() * &e01, || {
            format!("|H¹(G,M)| = {} but |E∞^{{1,0}}|·|E∞^{{0,1}}| = {}·{}", cx.h1g.order(), self.e10.order(), e01)
        }));
        book.push(Verdict::check(order(&f1h1) == self.e10.order(), || format!("|F¹H¹| = {} but |E∞^{{1,0}}| = {}", order(&f1h1), self.e10.order())));
        book.push(Verdict::check(order(&f2h2) == e20, || format!("|F²H²| = {} but |E∞^{{2,0}}| = {e20}", order(&f2h2))));
        book.push(Verdict::check(order(&f1h2) == &order(&f2h2) * &e11, || {
            format!("|F¹H²| = {} but |F²H²|·|E∞^{{1,1}}| = {}·{e11}", order(&f1h2), order(&f2h2))
        }));
        let h2 = cx.h2g.order();
        let e02 = h2.exact_div(&order(&f1h2));
        book.push(Verdict::check(h2 == &(&e20 * &e11) * &e02, || format!("|H²(G,M)| = {h2} but |E∞^{{2,0}}|·|E∞^{{1,1}}|·|E∞^{{0,2}}| = {e20}·{e11}·{e02}")));
        book.push(Verdict::check(f1h2.same_as(cx.h2g1.subgroup()), || "F¹H² differs from ker(H²(G,M) -> H²(N,M))".into()));
        book.push(Verdict::check(f2h2.is_subgroup_of(&f1h2), || "F²H² is not inside F¹H²".into()));
        out.push(Check::new("order bookkeeping", Verdict::all(book)));

        let mut edges = Vec::new();
        for h in [&cx.h1q, &cx.h2q, &cx.h3q] {
            let e = self.row_edge(h, &cx.fixed)?;
            let iso = e.is_injective() && h.order() == e.target.order().expect("finite");
            edges.push(Verdict::check(iso, || format!("H^{}(Q, M^N) -> E₂^{{{},0}} is not an isomorphism", h.degree(), h.degree())));
        }
        let col = self.col_edge(cx)?;
        let iso = col.is_injective() && col.source.order() == col.target.order();
        edges.push(Verdict::check(iso, || "E₂^{0,1} -> H¹(N,M)^Q is not an isomorphism".into()));
        out.push(Check::new("edge isomorphisms", Verdict::all(edges)));

        let v01 = d2_well_defined(f, &self.e01, &self.e20, &self.d2_01, rng, 3);
        let v11 = d2_well_defined(f, &self.e11, &self.e30, &self.d2_11, rng, 3);
        out.push(Check::new("d₂ independent of representatives", Verdict::all([v01, v11])));
        out.push(Check::new("d₂∘d₂ = 0", self.check_d2_squared()));
        Ok(out)
    }
}
