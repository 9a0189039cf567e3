//! Finitely generated abelian groups, homomorphisms between them, and
//! kernel-mod-image presentations.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::int::Int;
use crate::linalg::echelon::{Lattice, SpanSolver};
use crate::linalg::matrix::IntMatrix;
use crate::linalg::smith::smith_normal_form;

/// Reduces each coordinate modulo its modulus (0 = free coordinate).
pub fn reduce_mod(v: &mut [Int], moduli: &[Int]) {
    for (x, d) in v.iter_mut().zip(moduli) {
        if !d.is_zero() {
            *x = x.mod_floor(d);
        }
    }
}

pub fn reduced(v: &[Int], moduli: &[Int]) -> Vec<Int> {
    let mut v = v.to_vec();
    reduce_mod(&mut v, moduli);
    v
}

/// `Z/d_1 + ... + Z/d_k + Z^rank` with `d_1 | ... | d_k`, each `d_i >= 2`.
///
/// Elements are coordinate vectors, torsion coordinates first.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FgAbGroup {
    torsion: Vec<Int>,
    rank: usize,
}

impl FgAbGroup {
    pub fn new(torsion: Vec<Int>, rank: usize) -> Result<Self> {
        for (i, d) in torsion.iter().enumerate() {
            if *d < Int::from(2) {
                return Err(Error::InvariantFactors { position: i, detail: "invariant factors must be at least 2" });
            }
            if i > 0 && !torsion[i - 1].divides(d) {
                return Err(Error::InvariantFactors { position: i, detail: "invariant factors must form a divisibility chain" });
            }
        }
        Ok(FgAbGroup { torsion, rank })
    }

    pub fn finite(torsion: &[i64]) -> Result<Self> {
        Self::new(torsion.iter().map(|&d| Int::from(d)).collect(), 0)
    }

    pub fn trivial() -> Self {
        FgAbGroup { torsion: Vec::new(), rank: 0 }
    }

    pub fn torsion(&self) -> &[Int] {
        &self.torsion
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn ngens(&self) -> usize {
        self.torsion.len() + self.rank
    }

    pub fn is_finite(&self) -> bool {
        self.rank == 0
    }

    pub fn is_trivial(&self) -> bool {
        self.ngens() == 0
    }

    /// Diagonal relation moduli, one per generator (0 for free generators).
    pub fn moduli(&self) -> Vec<Int> {
        let mut m = self.torsion.clone();
        m.resize(self.ngens(), Int::ZERO);
        m
    }

    pub fn relation_matrix(&self) -> IntMatrix {
        IntMatrix::diagonal(&self.moduli())
    }

    pub fn relation_lattice(&self) -> Lattice {
        Lattice::diagonal(&self.moduli())
    }

    pub fn order(&self) -> Option<Int> {
        if !self.is_finite() {
            return None;
        }
        let mut acc = Int::ONE;
        for d in &self.torsion {
            acc *= d;
        }
        Some(acc)
    }

    /// Exponent of a finite group (1 for the trivial group).
    pub fn exponent(&self) -> Option<Int> {
        if !self.is_finite() {
            return None;
        }
        Some(self.torsion.last().cloned().unwrap_or(Int::ONE))
    }

    pub fn zero(&self) -> Vec<Int> {
        vec![Int::ZERO; self.ngens()]
    }

    pub fn reduce(&self, v: &mut [Int]) {
        assert_eq!(v.len(), self.ngens(), "element length mismatch");
        for (x, d) in v.iter_mut().zip(&self.torsion) {
            *x = x.mod_floor(d);
        }
    }

    pub fn canonical(&self, v: &[Int]) -> Vec<Int> {
        let mut v = v.to_vec();
        self.reduce(&mut v);
        v
    }

    pub fn is_zero(&self, v: &[Int]) -> bool {
        self.canonical(v).iter().all(Int::is_zero)
    }

    pub fn add(&self, a: &[Int], b: &[Int]) -> Vec<Int> {
        let s: Vec<Int> = a.iter().zip(b).map(|(x, y)| x + y).collect();
        self.canonical(&s)
    }

    pub fn sub(&self, a: &[Int], b: &[Int]) -> Vec<Int> {
        let s: Vec<Int> = a.iter().zip(b).map(|(x, y)| x - y).collect();
        self.canonical(&s)
    }

    pub fn neg(&self, a: &[Int]) -> Vec<Int> {
        let s: Vec<Int> = a.iter().map(|x| -x).collect();
        self.canonical(&s)
    }

    pub fn scale(&self, a: &[Int], k: &Int) -> Vec<Int> {
        let s: Vec<Int> = a.iter().map(|x| x * k).collect();
        self.canonical(&s)
    }

    /// Number of elements, if finite and addressable.
    pub fn element_count(&self) -> Option<usize> {
        self.order().and_then(|o| o.to_usize())
    }

    /// Element with mixed-radix index `idx` (first coordinate most significant).
    pub fn element(&self, mut idx: usize) -> Vec<Int> {
        assert!(self.is_finite());
        let mut out = vec![Int::ZERO; self.ngens()];
        for (slot, d) in out.iter_mut().zip(&self.torsion).rev() {
            let d = d.to_usize().expect("modulus fits in usize");
            *slot = Int::from(idx % d);
            idx /= d;
        }
        out
    }

    pub fn index_of(&self, v: &[Int]) -> usize {
        assert!(self.is_finite());
        let c = self.canonical(v);
        let mut idx = 0usize;
        for (x, d) in c.iter().zip(&self.torsion) {
            idx = idx * d.to_usize().expect("modulus fits in usize") + x.to_usize().expect("canonical coordinate");
        }
        idx
    }

    pub fn elements(&self) -> impl Iterator<Item = Vec<Int>> + '_ {
        let n = self.element_count().expect("finite group with addressable order");
        (0..n).map(move |i| self.element(i))
    }

    /// Direct sum in concatenated coordinates; `None` when the concatenated
    /// torsion is not a divisibility chain.
    pub fn direct_sum(&self, other: &FgAbGroup) -> Option<FgAbGroup> {
        let mut t = self.torsion.clone();
        t.extend_from_slice(&other.torsion);
        FgAbGroup::new(t, self.rank + other.rank).ok()
    }
}

/// The group presented by a relation matrix, with coordinate maps.
#[derive(Clone, Debug)]
pub struct Cokernel {
    pub group: FgAbGroup,
    /// Generator coordinates to group coordinates (`ngens(group) x m`).
    pub project: IntMatrix,
    /// Group coordinates back to generator coordinates (`m x ngens(group)`).
    pub lift: IntMatrix,
}

impl Cokernel {
    pub fn project(&self, x: &[Int]) -> Vec<Int> {
        self.group.canonical(&self.project.mul_vec(x))
    }

    pub fn lift(&self, c: &[Int]) -> Vec<Int> {
        self.lift.mul_vec(c)
    }
}

/// `Z^m / (column span of relations)` for an `m x t` relation matrix.
pub fn cokernel(relations: &IntMatrix) -> Cokernel {
    let m = relations.rows();
    let s = smith_normal_form(relations);
    let diag = s.diagonal();
    let mut torsion = Vec::new();
    let mut torsion_rows = Vec::new();
    let mut free_rows = Vec::new();
    for i in 0..m {
        match diag.get(i) {
            Some(d) if d.is_one() => {}
            Some(d) if !d.is_zero() => {
                torsion.push(d.clone());
                torsion_rows.push(i);
            }
            _ => free_rows.push(i),
        }
    }
    let rank = free_rows.len();
    let group = FgAbGroup::new(torsion, rank).expect("Smith diagonal is a divisibility chain");
    let rows: Vec<usize> = torsion_rows.into_iter().chain(free_rows).collect();
    let project = IntMatrix::from_rows(&rows.iter().map(|&i| s.u.row(i).to_vec()).collect::<Vec<_>>());
    let project = if rows.is_empty() { IntMatrix::zeros(0, m) } else { project };
    let lift_cols: Vec<Vec<Int>> = rows.iter().map(|&i| s.u_inv.column(i)).collect();
    let lift = IntMatrix::from_columns(m, &lift_cols);
    Cokernel { group, project, lift }
}

/// Deterministic solution of `A x = b`, optionally modulo diagonal relations
/// on the target. Among all solutions returns the canonical representative of
/// the solution coset modulo the Hermite form of the homogeneous solutions.
pub fn solve(a: &IntMatrix, b: &[Int], modulus: Option<&[Int]>) -> Option<Vec<Int>> {
    let zeros;
    let moduli = match modulus {
        Some(m) => m,
        None => {
            zeros = vec![Int::ZERO; a.rows()];
            &zeros
        }
    };
    let solver = SpanSolver::new(a, moduli);
    let x = solver.solve(b)?;
    Some(solver.relations().reduce(&x))
}

/// Homomorphism between finitely generated abelian groups, given on generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbHom {
    pub source: FgAbGroup,
    pub target: FgAbGroup,
    pub matrix: IntMatrix,
}

impl AbHom {
    pub fn new(source: FgAbGroup, target: FgAbGroup, matrix: IntMatrix) -> Result<Self> {
        if matrix.rows() != target.ngens() || matrix.cols() != source.ngens() {
            return Err(Error::Dimension("homomorphism matrix does not match its groups"));
        }
        let h = AbHom { source, target, matrix };
        if !h.is_well_defined() {
            return Err(Error::NotWellDefined);
        }
        Ok(h)
    }

    /// Builds the matrix from images of the source generators.
    pub fn from_images(source: FgAbGroup, target: FgAbGroup, images: &[Vec<Int>]) -> Result<Self> {
        let m = IntMatrix::from_columns(target.ngens(), images);
        Self::new(source, target, m)
    }

    pub fn identity(g: &FgAbGroup) -> Self {
        AbHom { source: g.clone(), target: g.clone(), matrix: IntMatrix::identity(g.ngens()) }
    }

    pub fn zero(source: &FgAbGroup, target: &FgAbGroup) -> Self {
        AbHom { source: source.clone(), target: target.clone(), matrix: IntMatrix::zeros(target.ngens(), source.ngens()) }
    }

    /// Every source relation maps into the target relations.
    pub fn is_well_defined(&self) -> bool {
        self.source.torsion().iter().enumerate().all(|(j, d)| {
            let img: Vec<Int> = self.matrix.column(j).iter().map(|x| x * d).collect();
            self.target.is_zero(&img)
        })
    }

    pub fn apply(&self, x: &[Int]) -> Vec<Int> {
        self.target.canonical(&self.matrix.mul_vec(x))
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &AbHom) -> Result<AbHom> {
        if self.target != other.source {
            return Err(Error::Dimension("composition of homomorphisms with mismatched groups"));
        }
        let mut m = other.matrix.mul(&self.matrix);
        let moduli = other.target.moduli();
        for j in 0..m.cols() {
            for (i, d) in moduli.iter().enumerate() {
                if !d.is_zero() {
                    m[(i, j)] = m[(i, j)].mod_floor(d);
                }
            }
        }
        Ok(AbHom { source: self.source.clone(), target: other.target.clone(), matrix: m })
    }

    pub fn kernel(&self) -> Subgroup {
        Subgroup::kernel_of(&self.source, &self.matrix, &self.target.moduli())
    }

    pub fn image(&self) -> Subgroup {
        Subgroup::generated(&self.target, &self.matrix.columns())
    }

    pub fn is_injective(&self) -> bool {
        self.kernel().is_trivial()
    }

    pub fn is_surjective(&self) -> bool {
        self.image().is_everything()
    }
}

/// A subgroup of an [`FgAbGroup`], stored as the lattice of integer vectors
/// whose classes lie in it (always containing the ambient relations).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subgroup {
    ambient: FgAbGroup,
    lattice: Lattice,
}

impl Subgroup {
    pub fn generated(ambient: &FgAbGroup, gens: &[Vec<Int>]) -> Self {
        let rel = ambient.relation_lattice();
        let all = rel.basis().iter().cloned().chain(gens.iter().cloned());
        let lattice = match ambient.exponent() {
            Some(e) => Lattice::from_generators_mod(ambient.ngens(), all, &e),
            None => Lattice::from_generators(ambient.ngens(), all),
        };
        Subgroup { ambient: ambient.clone(), lattice }
    }

    /// Kernel of `matrix: source -> (target coordinates mod target_moduli)`.
    pub fn kernel_of(source: &FgAbGroup, matrix: &IntMatrix, target_moduli: &[Int]) -> Self {
        let solver = SpanSolver::new(matrix, target_moduli);
        let lattice = solver.relations().sum(&source.relation_lattice());
        Subgroup { ambient: source.clone(), lattice }
    }

    pub fn trivial(ambient: &FgAbGroup) -> Self {
        Subgroup { ambient: ambient.clone(), lattice: ambient.relation_lattice() }
    }

    pub fn everything(ambient: &FgAbGroup) -> Self {
        Subgroup { ambient: ambient.clone(), lattice: Lattice::full(ambient.ngens()) }
    }

    pub fn ambient(&self) -> &FgAbGroup {
        &self.ambient
    }

    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    pub fn contains(&self, v: &[Int]) -> bool {
        self.lattice.contains(v)
    }

    pub fn is_trivial(&self) -> bool {
        self.lattice == self.ambient.relation_lattice()
    }

    pub fn is_everything(&self) -> bool {
        self.lattice.is_full_rank() && self.lattice.index() == Some(Int::ONE)
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.ambient == other.ambient && other.lattice.contains_lattice(&self.lattice)
    }

    /// Same subgroup of the same ambient group, whatever the stored generators.
    pub fn same_as(&self, other: &Subgroup) -> bool {
        self.is_subgroup_of(other) && other.is_subgroup_of(self)
    }

    /// Order of a subgroup of a finite group.
    pub fn order(&self) -> Option<Int> {
        let total = self.ambient.order()?;
        let idx = self.lattice.index()?;
        Some(total.exact_div(&idx))
    }

    /// Presents the subgroup as an abstract group with its inclusion.
    pub fn present(&self) -> Subquotient {
        let gens = self.lattice.basis_matrix();
        Subquotient::new(&gens, &IntMatrix::zeros(self.ambient.ngens(), 0), &self.ambient.moduli())
            .expect("empty boundary is always contained")
    }
}

/// A subgroup presented as an abstract group, with its inclusion.
#[derive(Clone, Debug)]
pub struct PresentedSubgroup {
    subgroup: Subgroup,
    presentation: Subquotient,
    inclusion: AbHom,
}

impl PresentedSubgroup {
    pub fn new(sub: &Subgroup) -> Self {
        let presentation = sub.present();
        let inclusion = AbHom::new(presentation.group().clone(), sub.ambient().clone(), presentation.lift_matrix())
            .expect("inclusion of a subgroup");
        PresentedSubgroup { subgroup: sub.clone(), presentation, inclusion }
    }

    pub fn subgroup(&self) -> &Subgroup {
        &self.subgroup
    }

    pub fn group(&self) -> &FgAbGroup {
        self.presentation.group()
    }

    pub fn inclusion(&self) -> &AbHom {
        &self.inclusion
    }

    pub fn include(&self, c: &[Int]) -> Vec<Int> {
        self.inclusion.apply(c)
    }

    /// Coordinates of an ambient element lying in the subgroup.
    pub fn project(&self, m: &[Int]) -> Result<Vec<Int>> {
        self.presentation.project(m)
    }

    pub fn contains(&self, m: &[Int]) -> bool {
        self.subgroup.contains(m)
    }
}

/// `span(Z) / span(B)` inside a diagonally presented ambient group.
#[derive(Clone, Debug)]
pub struct Subquotient {
    group: FgAbGroup,
    ambient: Vec<Int>,
    generators: IntMatrix,
    solver: SpanSolver,
    presentation: Cokernel,
}

impl Subquotient {
    /// `cycles` and `boundaries` hold generating vectors as columns in
    /// ambient coordinates with the given moduli.
    pub fn new(cycles: &IntMatrix, boundaries: &IntMatrix, ambient: &[Int]) -> Result<Self> {
        let n = ambient.len();
        assert_eq!(cycles.rows(), n);
        assert_eq!(boundaries.rows(), n);
        let solver = SpanSolver::new(cycles, ambient);
        let s = cycles.cols();
        let mut rel: Vec<Vec<Int>> = solver.relations().basis().to_vec();
        for (j, b) in boundaries.columns().iter().enumerate() {
            let y = solver.solve(b).ok_or(Error::InconsistentSubquotient { column: j })?;
            rel.push(y);
        }
        let rel = if ambient.iter().all(|d| !d.is_zero()) {
            let exponent = ambient.iter().fold(Int::ONE, |acc, d| acc.lcm(d));
            Lattice::from_generators_mod(s, rel, &exponent)
        } else {
            Lattice::from_generators(s, rel)
        };
        let presentation = cokernel(&rel.basis_matrix());
        Ok(Subquotient { group: presentation.group.clone(), ambient: ambient.to_vec(), generators: cycles.clone(), solver, presentation })
    }

    pub fn group(&self) -> &FgAbGroup {
        &self.group
    }

    pub fn ambient_moduli(&self) -> &[Int] {
        &self.ambient
    }

    pub fn contains(&self, z: &[Int]) -> bool {
        self.solver.contains(z)
    }

    /// Class of an ambient vector lying in `span(Z)`.
    pub fn project(&self, z: &[Int]) -> Result<Vec<Int>> {
        let y = self.solver.solve(z).ok_or(Error::NotInSubgroup)?;
        Ok(self.presentation.project(&y))
    }

    /// Canonical representative (in ambient coordinates) of a class.
    pub fn lift(&self, c: &[Int]) -> Vec<Int> {
        let y = self.presentation.lift(c);
        reduced(&self.generators.mul_vec(&y), &self.ambient)
    }

    /// Ambient representatives of the group generators, as matrix columns.
    pub fn lift_matrix(&self) -> IntMatrix {
        let k = self.group.ngens();
        let cols: Vec<Vec<Int>> = (0..k)
            .map(|i| {
                let mut e = vec![Int::ZERO; k];
                e[i] = Int::ONE;
                self.lift(&e)
            })
            .collect();
        IntMatrix::from_columns(self.ambient.len(), &cols)
    }
}
