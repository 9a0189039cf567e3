use alloc::format;
use alloc::vec::Vec;

use crate::cohomology::{consistency, differential, pullback, CochainSpace};
use crate::error::Result;
use crate::group::{GModule, GroupExtension};
use crate::int::Int;
use crate::linalg::{IntMatrix, SpanSolver};
use crate::verdict::Verdict;

/// Largest matrix (entries) built by the filtration self-checks.
pub const CHECK_BUDGET: usize = 4_000_000;

/// The Hochschild–Serre filtration `F^p Cⁿ(G, M)` of the normalized bar complex.
#[derive(Clone, Debug)]
pub struct Filtration {
    ext: GroupExtension,
    module: GModule,
}

fn reduce_rows(m: &mut IntMatrix, moduli: &[Int]) {
    for (i, d) in moduli.iter().enumerate() {
        if d.is_zero() {
            continue;
        }
        for x in m.row_mut(i) {
            if !x.is_zero() {
                *x = x.mod_floor(d);
            }
        }
    }
}

impl Filtration {
    pub fn new(ext: &GroupExtension, module: &GModule) -> Self {
        Filtration { ext: ext.clone(), module: module.clone() }
    }

    pub fn extension(&self) -> &GroupExtension {
        &self.ext
    }

    pub fn module(&self) -> &GModule {
        &self.module
    }

    pub fn space(&self, p: usize, n: usize) -> Result<CochainSpace> {
        CochainSpace::filtered(&self.ext, self.module.module(), p, n)
    }

    /// `d: F^p Cⁿ -> F^p Cⁿ⁺¹`.
    pub fn d(&self, p: usize, n: usize) -> Result<IntMatrix> {
        Ok(differential(self.ext.g(), &self.module, &self.space(p, n)?, &self.space(p, n + 1)?))
    }

    /// Coordinates change `F^p Cⁿ -> F^s Cⁿ` for `s ≥ p`, valid on `F^s Cⁿ`.
    pub fn restrict(&self, p: usize, s: usize, n: usize) -> Result<IntMatrix> {
        Ok(pullback(&self.space(p, n)?, &self.space(s, n)?, None, None))
    }

    /// The inclusion `F^s Cⁿ -> F^p Cⁿ` for `s ≥ p`.
    pub fn embed(&self, s: usize, p: usize, n: usize) -> Result<IntMatrix> {
        Ok(pullback(&self.space(s, n)?, &self.space(p, n)?, None, None))
    }

    /// A map on `F^p Cⁿ` whose kernel is `F^s Cⁿ`.
    pub fn consistency(&self, p: usize, n: usize, s: usize) -> Result<IntMatrix> {
        let space = self.space(p, n)?;
        if s <= p {
            return Ok(IntMatrix::zeros(space.dim(), space.dim()));
        }
        if s > n {
            return Ok(IntMatrix::identity(space.dim()));
        }
        consistency(&self.ext, self.module.module(), &space, s)
    }

    /// Generators (as columns) of `{x ∈ F^p Cⁿ : dx ∈ F^s Cⁿ⁺¹}`.
    pub fn cycles(&self, p: usize, n: usize, s: usize) -> Result<IntMatrix> {
        let space = self.space(p, n)?;
        if s <= p {
            return Ok(IntMatrix::identity(space.dim()));
        }
        let next = self.space(p, n + 1)?;
        let mut a = self.consistency(p, n + 1, s)?.mul(&self.d(p, n)?);
        let moduli = next.moduli();
        reduce_rows(&mut a, &moduli);
        Ok(SpanSolver::new(&a, &moduli).relations().basis_matrix())
    }

    /// `d ∘ d = 0` on `F^p Cⁿ -> F^p Cⁿ⁺²` for every `p ≤ n` with `n + 2 ≤ top`.
    pub fn check_d_squared(&self, top: usize) -> Verdict {
        let mut checked = 0;
        let mut skipped = Vec::new();
        for n in 0..=top.saturating_sub(2) {
            for p in 0..=n {
                let spaces = (self.space(p, n), self.space(p, n + 1), self.space(p, n + 2));
                let (Ok(a), Ok(b), Ok(c)) = spaces else {
                    skipped.push((p, n));
                    continue;
                };
                if c.dim().saturating_mul(b.dim()) > CHECK_BUDGET {
                    skipped.push((p, n));
                    continue;
                }
                let d0 = differential(self.ext.g(), &self.module, &a, &b);
                let d1 = differential(self.ext.g(), &self.module, &b, &c);
                let mut dd = d1.mul(&d0);
                reduce_rows(&mut dd, &c.moduli());
                if !dd.is_zero() {
                    let (i, j) = (0..dd.rows()).flat_map(|i| (0..dd.cols()).map(move |j| (i, j))).find(|&(i, j)| !dd[(i, j)].is_zero()).expect("nonzero");
                    return Verdict::fail(format!("d∘d ≠ 0 on F^{p}C^{n}: tuple {:?}, coordinate {j}", c.tuple(i / c.ngens().max(1))));
                }
                checked += 1;
            }
        }
        if checked == 0 {
            return Verdict::skipped(format!("every filtered piece exceeds the size limit: {skipped:?}"));
        }
        Verdict::Pass
    }

    /// `d(F^p Cⁿ) ⊆ F^p Cⁿ⁺¹` for `1 ≤ p ≤ n ≤ top`, checked by evaluating `df`
    /// on every tuple and comparing with its value on the canonical `F^p` tuple.
    pub fn check_preserved(&self, top: usize) -> Verdict {
        let mut checked = 0;
        let mut skipped = Vec::new();
        for n in 1..=top {
            for p in 1..=n {
                let spaces = (self.space(p, n), self.space(0, n + 1), self.space(p, n + 1));
                let (Ok(src), Ok(full), Ok(filt)) = spaces else {
                    skipped.push((p, n));
                    continue;
                };
                if full.dim().saturating_mul(src.dim()) > CHECK_BUDGET {
                    skipped.push((p, n));
                    continue;
                }
                let d = differential(self.ext.g(), &self.module, &src, &full);
                let k = full.ngens();
                let moduli = full.moduli();
                for t in 0..full.tuple_count() {
                    let canon = filt.locate(&full.tuple(t)).and_then(|s| full.locate(&filt.tuple(s)));
                    for j in 0..k {
                        let row = d.row(t * k + j);
                        let m = &moduli[j];
                        let differs = match canon {
                            Some(c) => row.iter().zip(d.row(c * k + j)).any(|(x, y)| !m.divides(&(x - y))),
                            None => row.iter().any(|x| !m.divides(x)),
                        };
                        if differs {
                            return Verdict::fail(format!("d(F^{p}C^{n}) leaves F^{p} at tuple {:?}", full.tuple(t)));
                        }
                    }
                }
                checked += 1;
            }
        }
        if checked == 0 {
            return Verdict::skipped(format!("every filtered piece exceeds the size limit: {skipped:?}"));
        }
        Verdict::Pass
    }

    /// `F^{p+1} Cⁿ ⊆ F^p Cⁿ`: embedding then reading back is the identity.
    pub fn check_decreasing(&self, top: usize) -> Verdict {
        for n in 1..=top {
            for p in 0..n {
                let (Ok(e), Ok(r)) = (self.embed(p + 1, p, n), self.restrict(p, p + 1, n)) else {
                    continue;
                };
                let mut id = r.mul(&e);
                let hi = self.space(p + 1, n).expect("built above");
                reduce_rows(&mut id, &hi.moduli());
                let mut want = IntMatrix::identity(hi.dim());
                reduce_rows(&mut want, &hi.moduli());
                if id != want {
                    return Verdict::fail(format!("F^{}C^{n} is not recovered from its image in F^{p}C^{n}", p + 1));
                }
            }
        }
        Verdict::Pass
    }
}
