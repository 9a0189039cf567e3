use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};

/// A finite group given by its full multiplication table.
///
/// Elements are `0..order`; element 0 is the identity.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FiniteGroup {
    order: usize,
    table: Vec<usize>,
    inverse: Vec<usize>,
}

impl FiniteGroup {
    /// Validates identity, inverses and associativity exhaustively.
    pub fn from_table(table: &[Vec<usize>]) -> Result<Self> {
        let n = table.len();
        if n == 0 {
            return Err(Error::TableShape { row: 0, col: 0 });
        }
        let mut flat = Vec::with_capacity(n * n);
        for (i, row) in table.iter().enumerate() {
            if row.len() != n {
                return Err(Error::TableShape { row: i, col: row.len() });
            }
            for (j, &v) in row.iter().enumerate() {
                if v >= n {
                    return Err(Error::TableShape { row: i, col: j });
                }
            }
            flat.extend_from_slice(row);
        }
        Self::from_flat(n, flat)
    }

    pub fn from_fn(n: usize, f: impl Fn(usize, usize) -> usize) -> Result<Self> {
        let mut flat = Vec::with_capacity(n * n);
        for a in 0..n {
            for b in 0..n {
                let v = f(a, b);
                if v >= n {
                    return Err(Error::TableShape { row: a, col: b });
                }
                flat.push(v);
            }
        }
        Self::from_flat(n, flat)
    }

    fn from_flat(n: usize, table: Vec<usize>) -> Result<Self> {
        for a in 0..n {
            if table[a] != a || table[a * n] != a {
                return Err(Error::NoIdentity { element: a });
            }
        }
        let mut inverse = vec![usize::MAX; n];
        for a in 0..n {
            let Some(b) = (0..n).find(|&b| table[a * n + b] == 0 && table[b * n + a] == 0) else {
                return Err(Error::NoInverse { element: a });
            };
            inverse[a] = b;
        }
        for a in 0..n {
            for b in 0..n {
                let ab = table[a * n + b];
                for c in 0..n {
                    if table[ab * n + c] != table[a * n + table[b * n + c]] {
                        return Err(Error::NotAssociative { a, b, c });
                    }
                }
            }
        }
        Ok(FiniteGroup { order: n, table, inverse })
    }

    pub fn trivial() -> Self {
        FiniteGroup { order: 1, table: vec![0], inverse: vec![0] }
    }

    pub fn cyclic(n: usize) -> Self {
        Self::from_fn(n, |a, b| (a + b) % n).expect("cyclic group table")
    }

    /// Direct product with element `(a, b)` at index `a * |other| + b`.
    pub fn direct_product(&self, other: &FiniteGroup) -> Self {
        let m = other.order;
        Self::from_fn(self.order * m, |x, y| self.mul(x / m, y / m) * m + other.mul(x % m, y % m)).expect("product of groups")
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        0
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b]
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    /// `g x g^-1`
    pub fn conj(&self, g: usize, x: usize) -> usize {
        self.mul(self.mul(g, x), self.inv(g))
    }

    pub fn table_rows(&self) -> Vec<Vec<usize>> {
        (0..self.order).map(|a| self.table[a * self.order..(a + 1) * self.order].to_vec()).collect()
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (0..self.order).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn element_order(&self, g: usize) -> usize {
        let mut x = g;
        let mut k = 1;
        while x != 0 {
            x = self.mul(x, g);
            k += 1;
        }
        k
    }

    /// Sorted, deduplicated element list after checking closure.
    pub fn check_subgroup(&self, elems: &[usize]) -> Result<Vec<usize>> {
        let mut s: Vec<usize> = elems.to_vec();
        s.sort_unstable();
        s.dedup();
        if let Some(&bad) = s.iter().find(|&&x| x >= self.order) {
            return Err(Error::NotSubgroup(format!("element {bad} is out of range")));
        }
        let mut member = vec![false; self.order];
        for &x in &s {
            member[x] = true;
        }
        if !member[0] {
            return Err(Error::NotSubgroup("identity is missing".into()));
        }
        for &a in &s {
            if !member[self.inv(a)] {
                return Err(Error::NotSubgroup(format!("inverse of {a} is missing")));
            }
            for &b in &s {
                if !member[self.mul(a, b)] {
                    return Err(Error::NotSubgroup(format!("{a}*{b} = {} is missing", self.mul(a, b))));
                }
            }
        }
        Ok(s)
    }

    /// Witness `(n, g)` with `g n g^-1` outside the subgroup, if any.
    pub fn normality_witness(&self, sub: &[usize]) -> Option<(usize, usize)> {
        let mut member = vec![false; self.order];
        for &x in sub {
            member[x] = true;
        }
        for g in 0..self.order {
            for &n in sub {
                if !member[self.conj(g, n)] {
                    return Some((n, g));
                }
            }
        }
        None
    }

    /// The subgroup on `elems` as a group in its own right, relabelled in
    /// increasing order, together with the embedding back into `self`.
    pub fn subgroup(&self, elems: &[usize]) -> Result<(FiniteGroup, Vec<usize>)> {
        let s = self.check_subgroup(elems)?;
        let mut pos = vec![usize::MAX; self.order];
        for (i, &x) in s.iter().enumerate() {
            pos[x] = i;
        }
        let g = FiniteGroup::from_fn(s.len(), |a, b| pos[self.mul(s[a], s[b])])?;
        Ok((g, s))
    }

    /// Whether `map` is a homomorphism `self -> target`.
    pub fn is_homomorphism(&self, target: &FiniteGroup, map: &[usize]) -> bool {
        map.len() == self.order
            && map[0] == 0
            && (0..self.order).all(|a| (0..self.order).all(|b| map[self.mul(a, b)] == target.mul(map[a], map[b])))
    }

    /// Exhaustive isomorphism search by generator images; small groups only.
    pub fn find_isomorphism(&self, other: &FiniteGroup) -> Option<Vec<usize>> {
        if self.order != other.order {
            return None;
        }
        let gens = self.generators();
        let mut images = vec![0usize; gens.len()];
        self.search_iso(other, &gens, &mut images, 0)
    }

    fn search_iso(&self, other: &FiniteGroup, gens: &[usize], images: &mut Vec<usize>, k: usize) -> Option<Vec<usize>> {
        if k == gens.len() {
            return self.extend_to_map(other, gens, images).filter(|m| {
                let mut seen = vec![false; other.order];
                m.iter().all(|&x| !core::mem::replace(&mut seen[x], true)) && self.is_homomorphism(other, m)
            });
        }
        for cand in 0..other.order {
            if other.element_order(cand) != self.element_order(gens[k]) {
                continue;
            }
            images[k] = cand;
            if let Some(m) = self.search_iso(other, gens, images, k + 1) {
                return Some(m);
            }
        }
        None
    }

    fn extend_to_map(&self, other: &FiniteGroup, gens: &[usize], images: &[usize]) -> Option<Vec<usize>> {
        let mut map = vec![usize::MAX; self.order];
        map[0] = 0;
        let mut frontier = vec![0usize];
        while let Some(x) = frontier.pop() {
            for (g, &img) in gens.iter().zip(images) {
                let y = self.mul(x, *g);
                let my = other.mul(map[x], img);
                if map[y] == usize::MAX {
                    map[y] = my;
                    frontier.push(y);
                } else if map[y] != my {
                    return None;
                }
            }
        }
        Some(map)
    }

    /// A small generating set, chosen greedily in index order.
    pub fn generators(&self) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut span = vec![false; self.order];
        span[0] = true;
        let mut members = vec![0usize];
        for g in 0..self.order {
            if span[g] {
                continue;
            }
            gens.push(g);
            let mut frontier = members.clone();
            while let Some(x) = frontier.pop() {
                for &h in &gens {
                    let y = self.mul(x, h);
                    if !span[y] {
                        span[y] = true;
                        members.push(y);
                        frontier.push(y);
                    }
                }
            }
            // Newly spanned elements must also be multiplied by older generators.
            let mut frontier = members.clone();
            while let Some(x) = frontier.pop() {
                for &h in &gens {
                    let y = self.mul(x, h);
                    if !span[y] {
                        span[y] = true;
                        members.push(y);
                        frontier.push(y);
                    }
                }
            }
        }
        gens
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn z2_table_is_a_group() {
        let g = FiniteGroup::from_table(&[vec![0, 1], vec![1, 0]]).unwrap();
        assert_eq!(g.order(), 2);
        assert_eq!(g.inv(1), 1);
    }

    #[test]
    fn s3_is_nonabelian_group() {
        let s3 = fixtures::symmetric3();
        let rebuilt = FiniteGroup::from_table(&s3.table_rows()).unwrap();
        assert_eq!(rebuilt.order(), 6);
        assert!(!rebuilt.is_abelian());
    }

    #[test]
    fn missing_inverse_is_reported() {
        let err = FiniteGroup::from_table(&[vec![0, 1], vec![1, 1]]).unwrap_err();
        assert_eq!(err, Error::NoInverse { element: 1 });
    }

    #[test]
    fn nonassociative_table_is_reported() {
        // A Latin square with identity 0 that is not associative (order 5 loop).
        let t = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ];
        assert!(matches!(FiniteGroup::from_table(&t), Err(Error::NotAssociative { .. })));
    }

    #[test]
    fn generators_generate() {
        for g in [fixtures::dihedral8(), fixtures::quaternion8(), fixtures::symmetric3(), FiniteGroup::cyclic(6)] {
            let gens = g.generators();
            let map = g.extend_to_map(&g, &gens, &gens).unwrap();
            assert!(map.iter().all(|&x| x != usize::MAX));
        }
    }

    #[test]
    fn isomorphism_search() {
        let k4 = FiniteGroup::cyclic(2).direct_product(&FiniteGroup::cyclic(2));
        assert!(k4.find_isomorphism(&FiniteGroup::cyclic(4)).is_none());
        assert!(fixtures::dihedral8().find_isomorphism(&fixtures::quaternion8()).is_none());
        let c6 = FiniteGroup::cyclic(2).direct_product(&FiniteGroup::cyclic(3));
        assert!(c6.find_isomorphism(&FiniteGroup::cyclic(6)).is_some());
    }
}
