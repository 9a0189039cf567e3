//! Hermite-style echelon forms over the integers.
//!
//! [`Lattice`] is a sublattice of `Z^n` kept in canonical row Hermite normal
//! form, so two lattices are equal exactly when their bases are. [`SpanSolver`]
//! answers "is `b` a combination of these generators modulo the ambient
//! relations, and with which coefficients?" and also yields the lattice of
//! relations among the generators (the kernel of the generator matrix).

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use crate::int::Int;
use crate::linalg::matrix::IntMatrix;

fn lead(v: &[Int], from: usize) -> Option<usize> {
    (from..v.len()).find(|&i| !v[i].is_zero())
}

/// `dst -= factor * src`, starting at `from`.
fn axpy_neg(dst: &mut [Int], src: &[Int], factor: &Int, from: usize) {
    for i in from..dst.len() {
        if !src[i].is_zero() {
            let t = &src[i] * factor;
            dst[i] -= &t;
        }
    }
}

/// Echelon basis indexed by pivot column.
///
/// With a `modulus` `E` the caller guarantees `E·Z^dim` lies in the lattice,
/// so entries off the pivots are kept in `[0, E)`.
#[derive(Clone, Debug)]
pub(crate) struct Echelon {
    dim: usize,
    rows: Vec<Option<Vec<Int>>>,
    modulus: Option<Int>,
}

impl Echelon {
    pub(crate) fn new(dim: usize) -> Self {
        Echelon { dim, rows: vec![None; dim], modulus: None }
    }

    pub(crate) fn with_modulus(dim: usize, modulus: Int) -> Self {
        let mut e = Echelon { dim, rows: vec![None; dim], modulus: None };
        for p in 0..dim {
            let mut v = vec![Int::ZERO; dim];
            v[p] = modulus.clone();
            e.rows[p] = Some(v);
        }
        e.modulus = Some(modulus);
        e
    }

    fn shrink(&self, v: &mut [Int], from: usize) {
        if let Some(m) = &self.modulus {
            for x in &mut v[from..] {
                if !x.is_zero() {
                    *x = x.mod_floor(m);
                }
            }
        }
    }

    pub(crate) fn pivot_row(&self, p: usize) -> Option<&Vec<Int>> {
        self.rows[p].as_ref()
    }

    /// Installs a row whose pivot column is known to be free.
    pub(crate) fn install(&mut self, p: usize, row: Vec<Int>) {
        debug_assert!(self.rows[p].is_none());
        debug_assert!(lead(&row, 0) == Some(p));
        self.rows[p] = Some(row);
    }

    pub(crate) fn insert(&mut self, mut v: Vec<Int>) {
        debug_assert_eq!(v.len(), self.dim);
        self.shrink(&mut v, 0);
        let mut from = 0;
        while let Some(p) = lead(&v, from) {
            match self.rows[p].take() {
                None => {
                    if v[p].is_negative() {
                        for x in v.iter_mut() {
                            *x = -&*x;
                        }
                    }
                    self.rows[p] = Some(v);
                    return;
                }
                Some(mut r) => {
                    if r[p].divides(&v[p]) {
                        let q = v[p].exact_div(&r[p]);
                        axpy_neg(&mut v, &r, &q, p);
                        self.shrink(&mut v, p + 1);
                    } else {
                        let (g, s, t) = r[p].ext_gcd(&v[p]);
                        let a = v[p].exact_div(&g);
                        let b = r[p].exact_div(&g);
                        // [r'; v'] = [[s, t], [a, -b]] [r; v], determinant -1.
                        let mut new_r = vec![Int::ZERO; self.dim];
                        let mut new_v = vec![Int::ZERO; self.dim];
                        for i in p..self.dim {
                            if r[i].is_zero() && v[i].is_zero() {
                                continue;
                            }
                            new_r[i] = &(&s * &r[i]) + &(&t * &v[i]);
                            new_v[i] = &(&a * &r[i]) - &(&b * &v[i]);
                        }
                        r = new_r;
                        v = new_v;
                        if r[p].is_negative() {
                            for x in r.iter_mut() {
                                *x = -&*x;
                            }
                        }
                        self.shrink(&mut r, p + 1);
                        self.shrink(&mut v, p + 1);
                    }
                    debug_assert!(v[p].is_zero());
                    self.rows[p] = Some(r);
                    from = p + 1;
                }
            }
        }
    }

    /// Reduces `v` at pivot columns in `range`, each entry into `[0, pivot)`.
    pub(crate) fn reduce_range(&self, v: &mut [Int], start: usize, end: usize) {
        for p in start..end {
            if let Some(r) = &self.rows[p] {
                if !v[p].is_zero() {
                    let q = v[p].div_floor(&r[p]);
                    axpy_neg(v, r, &q, p);
                }
            }
        }
    }

    /// Full back-substitution so the basis is the canonical Hermite form.
    pub(crate) fn canonicalize(&mut self) {
        for p in 0..self.dim {
            if let Some(mut r) = self.rows[p].take() {
                self.reduce_range(&mut r, p + 1, self.dim);
                self.rows[p] = Some(r);
            }
        }
    }

    pub(crate) fn into_rows(self) -> Vec<Vec<Int>> {
        self.rows.into_iter().flatten().collect()
    }
}

/// A sublattice of `Z^dim` in canonical Hermite normal form.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Lattice {
    dim: usize,
    basis: Vec<Vec<Int>>,
}

impl Lattice {
    pub fn zero(dim: usize) -> Self {
        Lattice { dim, basis: Vec::new() }
    }

    pub fn full(dim: usize) -> Self {
        Self::diagonal(&vec![Int::ONE; dim])
    }

    /// Lattice spanned by `moduli[i] * e_i`; zero moduli contribute nothing.
    pub fn diagonal(moduli: &[Int]) -> Self {
        let dim = moduli.len();
        let basis = moduli
            .iter()
            .enumerate()
            .filter(|(_, d)| !d.is_zero())
            .map(|(i, d)| {
                let mut v = vec![Int::ZERO; dim];
                v[i] = d.abs();
                v
            })
            .collect();
        Lattice { dim, basis }
    }

    pub fn from_generators<I, V>(dim: usize, gens: I) -> Self
    where
        I: IntoIterator<Item = V>,
        V: Into<Vec<Int>>,
    {
        let mut e = Echelon::new(dim);
        for g in gens {
            let g = g.into();
            assert_eq!(g.len(), dim, "generator length mismatch");
            e.insert(g);
        }
        e.canonicalize();
        Lattice { dim, basis: e.into_rows() }
    }

    /// Like [`Lattice::from_generators`] for a lattice known to contain
    /// `modulus·Z^dim`; the multiples are added and entries stay bounded.
    pub fn from_generators_mod<I, V>(dim: usize, gens: I, modulus: &Int) -> Self
    where
        I: IntoIterator<Item = V>,
        V: Into<Vec<Int>>,
    {
        let mut e = Echelon::with_modulus(dim, modulus.abs());
        for g in gens {
            let g = g.into();
            assert_eq!(g.len(), dim, "generator length mismatch");
            e.insert(g);
        }
        Self::from_echelon(e)
    }

    pub(crate) fn from_echelon(mut e: Echelon) -> Self {
        e.canonicalize();
        let dim = e.dim;
        Lattice { dim, basis: e.into_rows() }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<Int>] {
        &self.basis
    }

    /// Basis vectors as the columns of a `dim x rank` matrix.
    pub fn basis_matrix(&self) -> IntMatrix {
        IntMatrix::from_columns(self.dim, &self.basis)
    }

    pub fn is_full_rank(&self) -> bool {
        self.basis.len() == self.dim
    }

    /// `[Z^dim : L]` when finite.
    pub fn index(&self) -> Option<Int> {
        if !self.is_full_rank() {
            return None;
        }
        let mut acc = Int::ONE;
        for (i, b) in self.basis.iter().enumerate() {
            acc *= &b[i];
        }
        Some(acc)
    }

    /// Canonical representative of the coset `v + L`.
    pub fn reduce(&self, v: &[Int]) -> Vec<Int> {
        assert_eq!(v.len(), self.dim);
        let mut v = v.to_vec();
        for b in &self.basis {
            let p = lead(b, 0).expect("zero basis vector");
            if !v[p].is_zero() {
                let q = v[p].div_floor(&b[p]);
                axpy_neg(&mut v, b, &q, p);
            }
        }
        v
    }

    pub fn contains(&self, v: &[Int]) -> bool {
        self.reduce(v).iter().all(Int::is_zero)
    }

    pub fn contains_lattice(&self, other: &Lattice) -> bool {
        other.basis.iter().all(|b| self.contains(b))
    }

    pub fn sum(&self, other: &Lattice) -> Lattice {
        assert_eq!(self.dim, other.dim);
        Lattice::from_generators(self.dim, self.basis.iter().chain(&other.basis).cloned())
    }

    /// Image under a linear map given as a matrix with `dim` columns.
    pub fn map(&self, m: &IntMatrix) -> Lattice {
        Lattice::from_generators(m.rows(), self.basis.iter().map(|b| m.mul_vec(b)))
    }
}

#[derive(Clone, Debug)]
enum RowRule {
    Kept(usize),
    /// Row reduces to zero: the target entry must vanish mod the modulus.
    Zero,
    /// Duplicate of a kept row with the same modulus.
    Same(usize),
}

/// Solver for `Z y = b` modulo a diagonal ambient lattice.
///
/// Rows of `Z` are reduced modulo their ambient modulus and deduplicated
/// before elimination; the augmented Hermite form of `[Z^T | I]` together
/// with the ambient relations then gives both a particular solution (by
/// reduction) and the relation lattice among the columns.
#[derive(Clone, Debug)]
pub struct SpanSolver {
    ambient: Vec<Int>,
    rules: Vec<RowRule>,
    kept_moduli: Vec<Int>,
    ngens: usize,
    echelon: Echelon,
    relations: Lattice,
}

impl SpanSolver {
    /// `generators` is `n x m`; `moduli` has length `n` with 0 for free rows.
    pub fn new(generators: &IntMatrix, moduli: &[Int]) -> Self {
        let n = generators.rows();
        let m = generators.cols();
        assert_eq!(moduli.len(), n, "moduli length mismatch");

        let mut rules = Vec::with_capacity(n);
        let mut kept_rows: Vec<Vec<Int>> = Vec::new();
        let mut kept_moduli = Vec::new();
        let mut seen: BTreeMap<(Vec<Int>, Int), usize> = BTreeMap::new();
        for i in 0..n {
            let d = &moduli[i];
            let row: Vec<Int> = generators.row(i).iter().map(|x| x.mod_floor(d)).collect();
            if row.iter().all(Int::is_zero) {
                rules.push(RowRule::Zero);
                continue;
            }
            let key = (row, d.abs());
            if let Some(&k) = seen.get(&key) {
                rules.push(RowRule::Same(k));
                continue;
            }
            let k = kept_rows.len();
            kept_rows.push(key.0.clone());
            kept_moduli.push(key.1.clone());
            seen.insert(key, k);
            rules.push(RowRule::Kept(k));
        }

        let nk = kept_rows.len();
        let width = nk + m;
        // For a finite ambient group, exponent·e_j is a relation for every
        // generator, which bounds all entries during elimination.
        let exponent = if kept_moduli.iter().all(|d| !d.is_zero()) {
            Some(kept_moduli.iter().fold(Int::ONE, |acc, d| acc.lcm(d)))
        } else {
            None
        };
        let mut echelon = match &exponent {
            Some(e) => {
                let mut ech = Echelon::with_modulus(width, e.clone());
                for (i, d) in kept_moduli.iter().enumerate() {
                    let mut v = vec![Int::ZERO; width];
                    v[i] = d.clone();
                    ech.rows[i] = Some(v);
                }
                ech
            }
            None => {
                let mut ech = Echelon::new(width);
                for (i, d) in kept_moduli.iter().enumerate() {
                    if !d.is_zero() {
                        let mut v = vec![Int::ZERO; width];
                        v[i] = d.clone();
                        ech.install(i, v);
                    }
                }
                ech
            }
        };
        for j in 0..m {
            let mut v = vec![Int::ZERO; width];
            for (i, row) in kept_rows.iter().enumerate() {
                v[i] = row[j].clone();
            }
            v[nk + j] = Int::ONE;
            // Keep ambient entries small before the gcd steps.
            echelon.reduce_range(&mut v, 0, nk);
            echelon.insert(v);
        }

        let mut rel = Echelon::new(m);
        for p in nk..width {
            if let Some(r) = echelon.pivot_row(p) {
                rel.insert(r[nk..].to_vec());
            }
        }
        let relations = Lattice::from_echelon(rel);

        SpanSolver { ambient: moduli.to_vec(), rules, kept_moduli, ngens: m, echelon, relations }
    }

    pub fn ngens(&self) -> usize {
        self.ngens
    }

    /// Lattice of `y` with `Z y = 0` modulo the ambient relations.
    pub fn relations(&self) -> &Lattice {
        &self.relations
    }

    /// Some `y` with `Z y = target` modulo the ambient relations.
    pub fn solve(&self, target: &[Int]) -> Option<Vec<Int>> {
        assert_eq!(target.len(), self.ambient.len(), "target length mismatch");
        let nk = self.kept_moduli.len();
        let mut comp: Vec<Option<Int>> = vec![None; nk];
        let mut deferred = Vec::new();
        for (i, rule) in self.rules.iter().enumerate() {
            let d = &self.ambient[i];
            match rule {
                RowRule::Zero => {
                    if !target[i].mod_floor(d).is_zero() {
                        return None;
                    }
                }
                RowRule::Kept(k) => comp[*k] = Some(target[i].mod_floor(d)),
                RowRule::Same(k) => deferred.push((i, *k)),
            }
        }
        for (i, k) in deferred {
            let d = &self.ambient[i];
            let want = comp[k].as_ref().expect("kept row precedes its duplicates");
            if !(&target[i] - want).mod_floor(d).is_zero() {
                return None;
            }
        }
        let mut v: Vec<Int> = comp.into_iter().map(|c| c.unwrap_or(Int::ZERO)).collect();
        v.resize(nk + self.ngens, Int::ZERO);
        for p in 0..nk {
            if v[p].is_zero() {
                continue;
            }
            let r = self.echelon.pivot_row(p)?;
            if !r[p].divides(&v[p]) {
                return None;
            }
            let q = v[p].exact_div(&r[p]);
            axpy_neg(&mut v, r, &q, p);
        }
        Some(v[nk..].iter().map(|x| -x).collect())
    }

    pub fn contains(&self, target: &[Int]) -> bool {
        self.solve(target).is_some()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<Int> {
        v.iter().map(|&x| Int::from(x)).collect()
    }

    #[test]
    fn canonical_form_is_generator_independent() {
        let a = Lattice::from_generators(2, [ints(&[2, 0]), ints(&[0, 3])]);
        let b = Lattice::from_generators(2, [ints(&[2, 3]), ints(&[4, 3]), ints(&[0, 6])]);
        assert_eq!(a.index(), Some(Int::from(6)));
        assert_eq!(b, Lattice::from_generators(2, [ints(&[2, 3]), ints(&[0, 3])]));
        assert_eq!(a, Lattice::from_generators(2, [ints(&[2, 3]), ints(&[0, 3])]));
    }

    #[test]
    fn reduce_is_idempotent_and_respects_cosets() {
        let l = Lattice::from_generators(3, [ints(&[2, 1, 0]), ints(&[0, 3, 1]), ints(&[0, 0, 5])]);
        let v = ints(&[7, -4, 11]);
        let r = l.reduce(&v);
        assert_eq!(l.reduce(&r), r);
        let shifted: Vec<Int> = v.iter().zip(&l.basis()[1]).map(|(a, b)| a + &(b * &Int::from(-4))).collect();
        assert_eq!(l.reduce(&shifted), r);
    }

    #[test]
    fn solver_modular_and_exact() {
        let z = IntMatrix::from_i64_rows(&[&[2]]);
        let exact = SpanSolver::new(&z, &[Int::ZERO]);
        assert!(exact.solve(&[Int::ONE]).is_none());
        assert_eq!(exact.solve(&[Int::from(6)]), Some(vec![Int::from(3)]));
        let mod3 = SpanSolver::new(&z, &[Int::from(3)]);
        let y = mod3.solve(&[Int::ONE]).unwrap();
        assert!((&Int::from(2) * &y[0] - Int::ONE).mod_floor(&Int::from(3)).is_zero());
        assert_eq!(mod3.relations(), &Lattice::diagonal(&[Int::from(3)]));
    }

    #[test]
    fn duplicate_rows_still_constrain_targets() {
        let z = IntMatrix::from_i64_rows(&[&[1, 0], &[1, 0], &[0, 0]]);
        let s = SpanSolver::new(&z, &ints(&[2, 2, 2]));
        assert!(s.solve(&ints(&[1, 1, 0])).is_some());
        assert!(s.solve(&ints(&[1, 0, 0])).is_none());
        assert!(s.solve(&ints(&[0, 0, 1])).is_none());
        assert_eq!(s.relations(), &Lattice::diagonal(&ints(&[2, 1])));
    }
}
