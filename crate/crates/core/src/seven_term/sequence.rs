use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::cohomology::{inflation, restriction};
use crate::error::{Error, Result};
use crate::int::Int;
use crate::linalg::{AbHom, FgAbGroup, IntMatrix, PresentedSubgroup, SpanSolver};
use crate::oracle::Oracle;
use crate::perturb::Perturber;
use crate::seven_term::{
    check_derivation_lifts, compare_fiber_vs_out, compare_naive_semidirect, d2_fiber_product, delta_out_construction, rho, rho_map,
    rho_with_section, splitting_cochain, tr_map, tr_normalizer, Context,
};
use crate::verdict::{Check, Verdict};

pub const GROUP_LABELS: [&str; 7] = ["H1(Q,M^N)", "H1(G,M)", "H1(N,M)^Q", "H2(Q,M^N)", "H2(G,M)_1", "H1(Q,H1(N,M))", "H3(Q,M^N)"];
pub const MAP_LABELS: [&str; 6] = ["inf", "res", "tr", "inf", "rho", "d2"];

/// The groups and maps of the seven-term sequence, with `d₂^{1,1}` of the
/// oracle standing in for the last map.
#[derive(Clone, Debug)]
pub struct SevenTerm {
    pub groups: [FgAbGroup; 7],
    pub inf1: AbHom,
    pub res: AbHom,
    pub tr: AbHom,
    pub inf2: AbHom,
    pub rho: AbHom,
    /// `d₂: E₂^{1,1} -> E₂^{3,0}`.
    pub d2: AbHom,
}

fn project_images(map: &AbHom, target: &PresentedSubgroup, what: &str) -> Result<AbHom> {
    let k = map.source.ngens();
    let images: Vec<Vec<Int>> = (0..k)
        .map(|i| {
            let y = map.matrix.column(i);
            target.project(&map.target.canonical(&y)).map_err(|_| Error::Inconsistent(format!("{what} of generator {i} leaves the subgroup")))
        })
        .collect::<Result<_>>()?;
    AbHom::from_images(map.source.clone(), target.group().clone(), &images)
}

pub fn seven_term(cx: &Context, oracle: &Oracle) -> Result<SevenTerm> {
    let inf1 = inflation(&cx.h1q, &cx.h1g, &cx.ext, &cx.fixed)?;
    let res = project_images(&restriction(&cx.h1g, &cx.h1n, cx.ext.n())?, &cx.h1n_inv, "restriction")?;
    let tr = tr_map(cx)?;
    let inf2 = project_images(&inflation(&cx.h2q, &cx.h2g, &cx.ext, &cx.fixed)?, &cx.h2g1, "inflation")?;
    let rho = rho_map(cx)?;
    let groups = [
        cx.h1q.group().clone(),
        cx.h1g.group().clone(),
        cx.h1n_inv.group().clone(),
        cx.h2q.group().clone(),
        cx.h2g1.group().clone(),
        cx.h1q_h1n.group().clone(),
        cx.h3q.group().clone(),
    ];
    Ok(SevenTerm { groups, inf1, res, tr, inf2, rho, d2: oracle.d2_11.clone() })
}

/// `im f = ker g`, with an element of the middle group witnessing any failure.
pub fn exact_at(f: &AbHom, g: &AbHom) -> Verdict {
    let (im, ker) = (f.image(), g.kernel());
    if im.same_as(&ker) {
        return Verdict::Pass;
    }
    let witness = f.target.elements().find(|x| im.contains(x) != ker.contains(x));
    match witness {
        Some(x) if im.contains(&x) => Verdict::fail(format!("{x:?} is in the image but not the kernel")),
        Some(x) => Verdict::fail(format!("{x:?} is in the kernel but not the image")),
        None => Verdict::fail("image and kernel differ"),
    }
}

fn injective(f: &AbHom) -> Verdict {
    let ker = f.kernel();
    match f.source.elements().find(|x| !f.source.is_zero(x) && ker.contains(x)) {
        None if ker.is_trivial() => Verdict::Pass,
        None => Verdict::fail("kernel is nontrivial"),
        Some(x) => Verdict::fail(format!("{x:?} ≠ 0 maps to zero")),
    }
}

impl SevenTerm {
    /// Exactness at the first five groups.
    pub fn junctions(&self) -> Vec<Check> {
        Vec::from([
            Check::new(GROUP_LABELS[0], injective(&self.inf1)),
            Check::new(GROUP_LABELS[1], exact_at(&self.inf1, &self.res)),
            Check::new(GROUP_LABELS[2], exact_at(&self.res, &self.tr)),
            Check::new(GROUP_LABELS[3], exact_at(&self.tr, &self.inf2)),
            Check::new(GROUP_LABELS[4], exact_at(&self.inf2, &self.rho)),
        ])
    }

    pub fn maps(&self) -> [&AbHom; 6] {
        [&self.inf1, &self.res, &self.tr, &self.inf2, &self.rho, &self.d2]
    }
}

/// `tr`, `δ` and `d₂` of the fiber product agree on every invariant class,
/// and the three extensions are isomorphic by the explicit maps.
pub fn coincidence(cx: &Context) -> Result<Vec<Check>> {
    let mut triple = Vec::new();
    let mut fiber_out = Vec::new();
    let mut naive = Vec::new();
    for a in cx.h1n_inv.group().elements() {
        let phi = cx.invariant_representative(&a);
        let tr = tr_normalizer(cx, &phi)?.coords;
        let delta = delta_out_construction(cx, &phi)?.1.coords;
        let fiber = d2_fiber_product(cx, &phi)?.coords;
        triple.push(Verdict::check(tr == delta && delta == fiber, || format!("at {a:?}: tr = {tr:?}, Δ = {delta:?}, d₂ = {fiber:?}")));
        fiber_out.push(compare_fiber_vs_out(cx, &phi)?);
        naive.push(compare_naive_semidirect(cx, &phi)?);
    }
    Ok(Vec::from([
        Check::new("tr = Δ = d2 (fiber product)", Verdict::all(triple)),
        Check::new("fiber product vs Out(e_M)", Verdict::all(fiber_out)),
        Check::new("naive semidirect vs Aut(e_M)", Verdict::all(naive)),
    ]))
}

fn add(a: &[Int], b: &[Int]) -> Vec<Int> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

/// Seeded perturbations of the representatives feeding `tr` and `ρ`, `trials`
/// per class, and the lift independence of `d(q)`.
pub fn well_definedness(cx: &Context, rng: &mut Perturber, trials: usize) -> Result<Vec<Check>> {
    let n_coboundaries = cx.h1n.coboundary_matrix();
    let n_moduli = cx.h1n.space().moduli();
    let mut tr_checks = Vec::new();
    let mut lifts = Vec::new();
    for a in cx.h1n_inv.group().elements() {
        let phi = cx.invariant_representative(&a);
        let base = tr_normalizer(cx, &phi)?.coords;
        lifts.push(check_derivation_lifts(cx, &phi));
        for t in 0..trials {
            let b = rng.nonzero_combination(n_coboundaries, &n_moduli);
            let mut moved = add(&phi, &b);
            cx.h1n.space().reduce(&mut moved);
            tr_checks.push(match tr_normalizer(cx, &moved) {
                Ok(c) => Verdict::check(c.coords == base, || format!("tr({a:?}) = {base:?} but {:?} after φ + dβ (trial {t})", c.coords)),
                Err(e) => Verdict::fail(format!("tr({a:?}) with φ + dβ failed: {e} (trial {t})")),
            });
            lifts.push(check_derivation_lifts(cx, &moved));
        }
    }

    let g_coboundaries = cx.h2g.coboundary_matrix();
    let g_moduli = cx.h2g.space().moduli();
    let z1n = cycles_of(cx.h1n.differential(), &cx.h2n.space().moduli());
    let mut rho_checks = Vec::new();
    for a in cx.h2g1.group().elements() {
        let z = cx.h2g1_representative(&a);
        let base = rho(cx, &z)?.coords;
        let w = splitting_cochain(cx, &z)?;
        for t in 0..trials {
            let b = rng.nonzero_combination(g_coboundaries, &g_moduli);
            let mut moved = add(&z, &b);
            cx.h2g.space().reduce(&mut moved);
            rho_checks.push(match rho(cx, &moved) {
                Ok(c) => Verdict::check(c.coords == base, || format!("ρ({a:?}) = {base:?} but {:?} after z + dβ (trial {t})", c.coords)),
                Err(e) => Verdict::fail(format!("ρ({a:?}) with z + dβ failed: {e} (trial {t})")),
            });
            let c = rng.nonzero_combination(&z1n, &n_moduli);
            let mut w2 = add(&w, &c);
            cx.h1n.space().reduce(&mut w2);
            rho_checks.push(match rho_with_section(cx, &z, &w2) {
                Ok(c) => Verdict::check(c.coords == base, || format!("ρ({a:?}) = {base:?} but {:?} with another section (trial {t})", c.coords)),
                Err(e) => Verdict::fail(format!("ρ({a:?}) with another section failed: {e} (trial {t})")),
            });
        }
    }
    Ok(Vec::from([
        Check::new("tr under φ + dβ", Verdict::all(tr_checks)),
        Check::new("rho under z + dβ and section changes", Verdict::all(rho_checks)),
        Check::new("d(q) independent of the lift", Verdict::all(lifts)),
    ]))
}

/// Generators of the kernel of `d` as columns.
fn cycles_of(d: &IntMatrix, target_moduli: &[Int]) -> IntMatrix {
    SpanSolver::new(d, target_moduli).relations().basis_matrix()
}

pub fn describe(g: &FgAbGroup) -> String {
    if g.is_trivial() {
        return "0".into();
    }
    let mut parts: Vec<String> = g.torsion().iter().map(|d| format!("Z/{d}")).collect();
    parts.extend((0..g.rank()).map(|_| "Z".into()));
    parts.join(" + ")
}
