//! Coordinates for normalized cochains.
//!
//! A [`CochainSpace`] of degree `n` and filtration `p` holds functions on
//! tuples `(g_1, …, g_{n-p}, x_1, …, x_p)` where the leading arguments range
//! over the non-identity elements of the group and the trailing ones over the
//! non-trivial coset representatives `σ(q)`. With `p = 0` this is the plain
//! normalized bar cochain group; with `p > 0` it is `F^p Cⁿ` of the
//! Hochschild–Serre filtration, stored by its values on canonical tuples.
//!
//! Coordinates are `tuple_index * k + generator`, tuple indices mixed radix
//! with the first argument most significant.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::group::{FiniteGroup, GModule, GroupExtension};
use crate::int::Int;
use crate::linalg::{FgAbGroup, IntMatrix};

/// Largest admissible `|G|^(n+1) * k` when computing `Hⁿ(G, M)`, and the
/// largest coordinate count of any single cochain space.
pub const SIZE_LIMIT: usize = 200_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CochainSpace {
    degree: usize,
    free: usize,
    order: usize,
    quotient: Option<Quotient>,
    moduli: Vec<Int>,
    tuples: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
struct Quotient {
    pi: Vec<usize>,
    sigma: Vec<usize>,
}

fn checked_pow(base: usize, exp: usize) -> Option<usize> {
    (0..exp).try_fold(1usize, |acc, _| acc.checked_mul(base))
}

impl CochainSpace {
    /// Normalized `Cⁿ(G, M)` for a group of the given order.
    pub fn bar(order: usize, module: &FgAbGroup, degree: usize) -> Result<Self> {
        Self::build(degree, degree, order, None, module)
    }

    /// `F^p Cⁿ(G, M)` for the extension.
    pub fn filtered(ext: &GroupExtension, module: &FgAbGroup, p: usize, degree: usize) -> Result<Self> {
        if p > degree {
            return Err(Error::UnsupportedBidegree { p, q: 0 });
        }
        let quotient = (p > 0).then(|| Quotient { pi: ext.pi_map().to_vec(), sigma: ext.sigma_map().to_vec() });
        Self::build(degree, degree - p, ext.g().order(), quotient, module)
    }

    fn build(degree: usize, free: usize, order: usize, quotient: Option<Quotient>, module: &FgAbGroup) -> Result<Self> {
        let trailing = degree - free;
        let qn = quotient.as_ref().map_or(1, |q| q.sigma.len());
        let tuples = checked_pow(order - 1, free).zip(checked_pow(qn - 1, trailing)).and_then(|(a, b)| a.checked_mul(b));
        let k = module.ngens();
        let entries = tuples.and_then(|t| t.checked_mul(k)).unwrap_or(usize::MAX);
        if entries > SIZE_LIMIT {
            return Err(Error::SizeLimit { entries, limit: SIZE_LIMIT });
        }
        Ok(CochainSpace { degree, free, order, quotient, moduli: module.moduli(), tuples: tuples.unwrap_or(0) })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn filtration(&self) -> usize {
        self.degree - self.free
    }

    pub fn ngens(&self) -> usize {
        self.moduli.len()
    }

    pub fn tuple_count(&self) -> usize {
        self.tuples
    }

    pub fn dim(&self) -> usize {
        self.tuples * self.ngens()
    }

    /// Moduli of all coordinates, one block per tuple.
    pub fn moduli(&self) -> Vec<Int> {
        let mut out = Vec::with_capacity(self.dim());
        for _ in 0..self.tuples {
            out.extend_from_slice(&self.moduli);
        }
        out
    }

    pub fn zero(&self) -> Vec<Int> {
        vec![Int::ZERO; self.dim()]
    }

    /// The group elements of tuple `idx`.
    pub fn tuple(&self, mut idx: usize) -> Vec<usize> {
        let mut out = vec![0; self.degree];
        for slot in (0..self.degree).rev() {
            if slot >= self.free {
                let q = self.quotient.as_ref().expect("trailing slots need a quotient");
                let r = q.sigma.len() - 1;
                out[slot] = q.sigma[idx % r + 1];
                idx /= r;
            } else {
                let r = self.order - 1;
                out[slot] = idx % r + 1;
                idx /= r;
            }
        }
        out
    }

    /// Tuple index of the canonical form of an arbitrary tuple, or `None` if
    /// every cochain in the space vanishes there.
    pub fn locate(&self, tuple: &[usize]) -> Option<usize> {
        debug_assert_eq!(tuple.len(), self.degree);
        let mut idx = 0usize;
        for (slot, &g) in tuple.iter().enumerate() {
            if slot >= self.free {
                let q = self.quotient.as_ref().expect("trailing slots need a quotient");
                let c = q.pi[g];
                if c == 0 {
                    return None;
                }
                idx = idx * (q.sigma.len() - 1) + (c - 1);
            } else {
                if g == 0 {
                    return None;
                }
                idx = idx * (self.order - 1) + (g - 1);
            }
        }
        Some(idx)
    }

    /// Value of the cochain `f` at an arbitrary tuple (`None` means zero).
    pub fn value<'a>(&self, f: &'a [Int], tuple: &[usize]) -> Option<&'a [Int]> {
        let k = self.ngens();
        self.locate(tuple).map(|t| &f[t * k..(t + 1) * k])
    }

    /// Reduces every coordinate into canonical form.
    pub fn reduce(&self, f: &mut [Int]) {
        let k = self.ngens();
        for (i, x) in f.iter_mut().enumerate() {
            let d = &self.moduli[i % k];
            if !d.is_zero() {
                *x = x.mod_floor(d);
            }
        }
    }

    pub fn is_zero(&self, f: &[Int]) -> bool {
        let k = self.ngens();
        f.iter().enumerate().all(|(i, x)| self.moduli[i % k].divides(x))
    }

    /// Cochain from a function on tuples.
    pub fn from_fn(&self, mut f: impl FnMut(&[usize]) -> Vec<Int>) -> Vec<Int> {
        let mut out = Vec::with_capacity(self.dim());
        for t in 0..self.tuples {
            out.extend(f(&self.tuple(t)));
        }
        self.reduce(&mut out);
        out
    }

    fn reduce_rows(&self, m: &mut IntMatrix) {
        let k = self.ngens();
        for i in 0..m.rows() {
            let d = &self.moduli[i % k];
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
}

fn add_block(m: &mut IntMatrix, row: usize, col: usize, block: &IntMatrix, sign: i64) {
    for i in 0..block.rows() {
        for j in 0..block.cols() {
            let v = &block[(i, j)];
            if v.is_zero() {
                continue;
            }
            if sign > 0 {
                m[(row + i, col + j)] += v;
            } else {
                m[(row + i, col + j)] -= v;
            }
        }
    }
}

fn add_identity(m: &mut IntMatrix, row: usize, col: usize, k: usize, sign: i64) {
    let s = Int::from(sign);
    for i in 0..k {
        m[(row + i, col + i)] += &s;
    }
}

/// Matrix of the bar differential `src -> dst`, evaluated on `dst` tuples.
///
/// `(df)(g₁,…,g_{n+1}) = g₁·f(g₂,…) + Σ (−1)^i f(…, g_i g_{i+1}, …) + (−1)^{n+1} f(g₁,…,g_n)`.
pub fn differential(group: &FiniteGroup, module: &GModule, src: &CochainSpace, dst: &CochainSpace) -> IntMatrix {
    assert_eq!(dst.degree, src.degree + 1, "differential raises degree by one");
    let n = src.degree;
    let k = src.ngens();
    let mut d = IntMatrix::zeros(dst.dim(), src.dim());
    let mut buf = vec![0usize; n];
    for t in 0..dst.tuples {
        let g = dst.tuple(t);
        let row = t * k;
        if let Some(s) = src.locate(&g[1..]) {
            add_block(&mut d, row, s * k, module.act_matrix(g[0]), 1);
        }
        for i in 0..n {
            buf[..i].copy_from_slice(&g[..i]);
            buf[i] = group.mul(g[i], g[i + 1]);
            buf[i + 1..].copy_from_slice(&g[i + 2..]);
            if let Some(s) = src.locate(&buf) {
                add_identity(&mut d, row, s * k, k, if i % 2 == 0 { -1 } else { 1 });
            }
        }
        if let Some(s) = src.locate(&g[..n]) {
            add_identity(&mut d, row, s * k, k, if n.is_multiple_of(2) { -1 } else { 1 });
        }
    }
    dst.reduce_rows(&mut d);
    d
}

/// Evaluates `src` cochains on `dst` tuples mapped through `elements`, then
/// applies `coefficients` (a `k_dst x k_src` matrix; identity if absent).
pub fn pullback(src: &CochainSpace, dst: &CochainSpace, elements: Option<&[usize]>, coefficients: Option<&IntMatrix>) -> IntMatrix {
    assert_eq!(src.degree, dst.degree);
    let (ks, kd) = (src.ngens(), dst.ngens());
    let id;
    let coeff = match coefficients {
        Some(c) => c,
        None => {
            id = IntMatrix::identity(ks);
            &id
        }
    };
    assert_eq!((coeff.rows(), coeff.cols()), (kd, ks), "coefficient map shape");
    let mut m = IntMatrix::zeros(dst.dim(), src.dim());
    for t in 0..dst.tuples {
        let mut g = dst.tuple(t);
        if let Some(map) = elements {
            for x in g.iter_mut() {
                *x = map[*x];
            }
        }
        if let Some(s) = src.locate(&g) {
            add_block(&mut m, t * kd, s * ks, coeff, 1);
        }
    }
    dst.reduce_rows(&mut m);
    m
}

/// `f ↦ f − f∘canon_r` on `F^p Cⁿ` coordinates; its kernel is `F^r Cⁿ`.
pub fn consistency(ext: &GroupExtension, module: &FgAbGroup, space: &CochainSpace, r: usize) -> Result<IntMatrix> {
    let target = CochainSpace::filtered(ext, module, r, space.degree)?;
    let restrict = pullback(space, &target, None, None);
    let embed = pullback(&target, space, None, None);
    let mut m = IntMatrix::identity(space.dim()).sub(&embed.mul(&restrict));
    space.reduce_rows(&mut m);
    Ok(m)
}

/// Applies a coordinate matrix to a cochain and reduces into `dst` form.
pub fn apply(m: &IntMatrix, dst: &CochainSpace, f: &[Int]) -> Vec<Int> {
    let mut v = m.mul_vec(f);
    dst.reduce(&mut v);
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::group::make_extension;

    #[test]
    fn tuple_round_trip() {
        let m = FgAbGroup::finite(&[2, 2]).unwrap();
        let s = CochainSpace::bar(4, &m, 3).unwrap();
        assert_eq!(s.tuple_count(), 27);
        assert_eq!(s.dim(), 54);
        for t in 0..s.tuple_count() {
            assert_eq!(s.locate(&s.tuple(t)), Some(t));
        }
        assert_eq!(s.locate(&[1, 0, 2]), None);
    }

    #[test]
    fn degree_zero_differential_trivial_module() {
        let g = FiniteGroup::cyclic(3);
        let m = GModule::trivial(3, FgAbGroup::finite(&[5]).unwrap());
        let c0 = CochainSpace::bar(3, m.module(), 0).unwrap();
        let c1 = CochainSpace::bar(3, m.module(), 1).unwrap();
        assert!(differential(&g, &m, &c0, &c1).is_zero());
    }

    #[test]
    fn nontrivial_hom_is_a_cocycle() {
        let g = FiniteGroup::cyclic(2);
        let m = GModule::trivial(2, FgAbGroup::finite(&[2]).unwrap());
        let c1 = CochainSpace::bar(2, m.module(), 1).unwrap();
        let c2 = CochainSpace::bar(2, m.module(), 2).unwrap();
        let d = differential(&g, &m, &c1, &c2);
        assert!(c2.is_zero(&apply(&d, &c2, &[Int::ONE])));
    }

    #[test]
    fn d_squared_vanishes() {
        for f in fixtures::all() {
            let (g, m) = (&f.group, &f.module);
            let spaces: Vec<_> = (0..4).map(|n| CochainSpace::bar(g.order(), m.module(), n).unwrap()).collect();
            for n in 0..2 {
                let d0 = differential(g, m, &spaces[n], &spaces[n + 1]);
                let d1 = differential(g, m, &spaces[n + 1], &spaces[n + 2]);
                let mut dd = d1.mul(&d0);
                spaces[n + 2].reduce_rows(&mut dd);
                assert!(dd.is_zero(), "{} degree {n}", f.name);
            }
        }
    }

    #[test]
    fn filtered_spaces_and_consistency() {
        let f = fixtures::by_name("fix-d").unwrap();
        let ext = make_extension(&f.group, &f.normal).unwrap();
        let m = f.module.module();
        let s = CochainSpace::filtered(&ext, m, 1, 2).unwrap();
        assert_eq!(s.tuple_count(), 7 * 3);
        let c = consistency(&ext, m, &s, 2).unwrap();
        let top = CochainSpace::filtered(&ext, m, 2, 2).unwrap();
        let embed = pullback(&top, &s, None, None);
        assert!(c.mul(&embed).entries().iter().all(|x| x.mod_floor(&Int::from(2)).is_zero()));
    }

    #[test]
    fn size_limit_is_enforced() {
        let m = FgAbGroup::finite(&[2]).unwrap();
        assert!(matches!(CochainSpace::bar(64, &m, 3), Err(Error::SizeLimit { .. })));
    }
}
