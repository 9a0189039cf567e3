//! Built-in extensions used by the acceptance suite and the CLI.
//!
//! | name | G | N | M |
//! |------|---|---|---|
//! | `fix-a` | ℤ/4 | {0, 2} | ℤ/2 trivial |
//! | `fix-b` | ℤ/2 × ℤ/2 | {0, 1} | ℤ/2 trivial |
//! | `fix-c` | S₃ | A₃ | ℤ/3 by the sign |
//! | `fix-d` | D₈ | centre | ℤ/2 trivial |
//! | `fix-e` | Q₈ | centre | ℤ/2 trivial |
//! | `trivial-n` | S₃ | {1} | ℤ/3 by the sign |
//! | `full-n` | D₈ | D₈ | ℤ/2 trivial |
//! | `z9-over-z3` | ℤ/9 | {0, 3, 6} | ℤ/3 trivial |
//!
//! Hand values for the small cases: for `fix-a`, H¹(G,M) = Hom(ℤ/4, ℤ/2) = ℤ/2
//! and its generator kills 2, so restriction to N is zero and the map out of
//! H¹(N,M)^Q = ℤ/2 must be injective. For `fix-c`, A₃ acts trivially so
//! M^N = ℤ/3 with Q acting by −1, and every H^p(Q, M^N) vanishes since
//! |Q| = 2 is invertible on ℤ/3.

use alloc::vec;
use alloc::vec::Vec;

use crate::group::{FiniteGroup, GModule};
use crate::linalg::{FgAbGroup, IntMatrix};

#[derive(Clone, Debug)]
pub struct Fixture {
    pub name: &'static str,
    pub summary: &'static str,
    pub group: FiniteGroup,
    pub normal: Vec<usize>,
    pub module: GModule,
}

pub const NAMES: [&str; 8] = ["fix-a", "fix-b", "fix-c", "fix-d", "fix-e", "full-n", "trivial-n", "z9-over-z3"];

/// Permutations of {0,1,2} in lexicographic order, composed as functions.
pub fn symmetric3() -> FiniteGroup {
    let perms: Vec<[usize; 3]> = vec![[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
    let index = |p: [usize; 3]| perms.iter().position(|q| *q == p).unwrap();
    FiniteGroup::from_fn(6, |a, b| {
        let (pa, pb) = (perms[a], perms[b]);
        index([pa[pb[0]], pa[pb[1]], pa[pb[2]]])
    })
    .expect("symmetric group")
}

/// Odd permutations of [`symmetric3`].
pub fn symmetric3_sign(g: usize) -> bool {
    matches!(g, 1 | 2 | 5)
}

pub fn klein4() -> FiniteGroup {
    FiniteGroup::from_fn(4, |a, b| a ^ b).expect("Klein four-group")
}

/// `r^i s^j` at index `i + 4j`.
pub fn dihedral8() -> FiniteGroup {
    FiniteGroup::from_fn(8, |x, y| {
        let (a, b) = (x % 4, x / 4);
        let (c, d) = (y % 4, y / 4);
        let i = if b == 0 { a + c } else { a + 4 - c };
        i % 4 + 4 * ((b + d) % 2)
    })
    .expect("dihedral group")
}

/// `1, −1, i, −i, j, −j, k, −k` at indices `0..8`.
pub fn quaternion8() -> FiniteGroup {
    fn unit(u: usize, v: usize) -> (usize, usize) {
        match (u, v) {
            (0, w) | (w, 0) => (w, 0),
            _ if u == v => (0, 1),
            _ => (6 - u - v, usize::from(!matches!((u, v), (1, 2) | (2, 3) | (3, 1)))),
        }
    }
    FiniteGroup::from_fn(8, |x, y| {
        let (w, s) = unit(x / 2, y / 2);
        2 * w + (s + x % 2 + y % 2) % 2
    })
    .expect("quaternion group")
}

fn trivial_module(order: usize, modulus: i64) -> GModule {
    GModule::trivial(order, FgAbGroup::finite(&[modulus]).expect("modulus at least 2"))
}

fn sign_module_s3() -> GModule {
    let act = (0..6).map(|g| IntMatrix::from_i64_rows(&[&[if symmetric3_sign(g) { 2 } else { 1 }]])).collect();
    GModule::new(&symmetric3(), FgAbGroup::finite(&[3]).expect("ℤ/3"), act).expect("sign action")
}

pub fn by_name(name: &str) -> Option<Fixture> {
    let (summary, group, normal, module) = match name {
        "fix-a" => ("Z/2 -> Z/4 -> Z/2, M = Z/2 trivial", FiniteGroup::cyclic(4), vec![0, 2], trivial_module(4, 2)),
        "fix-b" => ("Z/2 -> (Z/2)^2 -> Z/2, M = Z/2 trivial", klein4(), vec![0, 1], trivial_module(4, 2)),
        "fix-c" => ("A3 -> S3 -> Z/2, M = Z/3 with the sign action", symmetric3(), vec![0, 3, 4], sign_module_s3()),
        "fix-d" => ("Z(D8) -> D8 -> (Z/2)^2, M = Z/2 trivial", dihedral8(), vec![0, 2], trivial_module(8, 2)),
        "fix-e" => ("Z(Q8) -> Q8 -> (Z/2)^2, M = Z/2 trivial", quaternion8(), vec![0, 1], trivial_module(8, 2)),
        "trivial-n" => ("1 -> S3 -> S3, M = Z/3 with the sign action", symmetric3(), vec![0], sign_module_s3()),
        "full-n" => ("D8 -> D8 -> 1, M = Z/2 trivial", dihedral8(), (0..8).collect(), trivial_module(8, 2)),
        "z9-over-z3" => ("Z/3 -> Z/9 -> Z/3, M = Z/3 trivial", FiniteGroup::cyclic(9), vec![0, 3, 6], trivial_module(9, 3)),
        _ => return None,
    };
    let name = NAMES.iter().copied().find(|n| *n == name)?;
    Some(Fixture { name, summary, group, normal, module })
}

pub fn all() -> Vec<Fixture> {
    NAMES.iter().map(|n| by_name(n).expect("listed fixture")).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::make_extension;

    #[test]
    fn fixture_groups_have_expected_shape() {
        assert!(!dihedral8().is_abelian());
        assert!(!quaternion8().is_abelian());
        assert_eq!((0..8).filter(|&x| quaternion8().element_order(x) == 2).count(), 1);
        assert_eq!((0..8).filter(|&x| dihedral8().element_order(x) == 2).count(), 5);
        let q8 = quaternion8();
        // i * j = k
        assert_eq!(q8.mul(2, 4), 6);
        assert_eq!(q8.mul(4, 2), 7);
    }

    #[test]
    fn every_fixture_is_an_extension() {
        for f in all() {
            let ext = make_extension(&f.group, &f.normal).unwrap();
            assert_eq!(f.module.group_order(), f.group.order(), "{}", f.name);
            assert_eq!(ext.n().len() * ext.q().order(), f.group.order());
        }
        assert!(by_name("nope").is_none());
    }

    #[test]
    fn centres() {
        for g in [dihedral8(), quaternion8()] {
            let centre: Vec<usize> = (0..8).filter(|&z| (0..8).all(|x| g.mul(z, x) == g.mul(x, z))).collect();
            let expected = if g == quaternion8() { vec![0, 1] } else { vec![0, 2] };
            assert_eq!(centre, expected);
        }
    }
}
