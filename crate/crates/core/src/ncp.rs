//! The noncrossing partition lattice `NC(W, c)`: the elements below the
//! Coxeter element in absolute order, with rank data, the absolute order as a
//! bit matrix, and the decomposition into conjugacy classes.

use std::collections::HashMap;
use std::sync::Arc;

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::groups::{ClassId, Element, Group};

/// A conjugacy class of `W` meeting `NC`, with its members counted inside `NC`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NcClass {
    pub id: ClassId,
    pub rank: usize,
    /// The first member of the class in `NC` order; always `≼ c`.
    pub representative: Element,
    pub size_in_nc: usize,
}

/// The interval `[1, c]` of the absolute order.
pub struct NcPoset {
    group: Arc<Group>,
    elements: Vec<Element>,
    index: HashMap<Element, usize>,
    rank: Vec<usize>,
    words: usize,
    leq: Vec<u64>,
    class_of: Vec<usize>,
    classes: Vec<NcClass>,
}

impl std::fmt::Debug for NcPoset {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("NcPoset")
            .field("group", &self.group.spec())
            .field("size", &self.elements.len())
            .field("classes", &self.classes.len())
            .finish_non_exhaustive()
    }
}

/// Builds `NC(W, c)` by filtering `W` with `ℓ(w) + ℓ(w⁻¹c) = n`.
pub fn build_nc(group: Arc<Group>) -> Result<NcPoset> {
    NcPoset::build(group)
}

impl NcPoset {
    pub fn build(group: Arc<Group>) -> Result<NcPoset> {
        let table = group.length_table()?;
        let n = group.rank();
        let c = group.coxeter();
        let mut members: Vec<(usize, Vec<u8>, usize)> = (0..table.len())
            .into_par_iter()
            .filter_map(|i| {
                let rest = table.element(table.inverse(i)).compose(c);
                let rest_len = table.length(table.index_of(&rest).expect("group is closed"));
                (table.length(i) + rest_len == n).then(|| (table.length(i), table.element(i).to_bytes(), i))
            })
            .collect();
        members.sort();
        let elements: Vec<Element> = members.iter().map(|&(_, _, i)| table.element(i).clone()).collect();
        let inverses: Vec<Element> = members.iter().map(|&(_, _, i)| table.element(table.inverse(i)).clone()).collect();
        let rank: Vec<usize> = members.iter().map(|&(r, _, _)| r).collect();
        let index: HashMap<Element, usize> = elements.iter().cloned().enumerate().map(|(i, e)| (e, i)).collect();
        let size = elements.len();
        let words = size.div_ceil(64);

        let rows: Vec<Vec<u64>> = (0..size)
            .into_par_iter()
            .map(|u| {
                let mut row = vec![0u64; words];
                // elements are sorted by rank, so candidates start at the first of rank(u)
                let start = rank.partition_point(|&r| r < rank[u]);
                for v in start..size {
                    let q = inverses[u].compose(&elements[v]);
                    let lq = table.length(table.index_of(&q).expect("group is closed"));
                    if lq == rank[v] - rank[u] {
                        row[v / 64] |= 1 << (v % 64);
                    }
                }
                row
            })
            .collect();
        let leq = rows.concat();

        let mut class_of = vec![usize::MAX; size];
        let mut classes = Vec::new();
        for i in 0..size {
            if class_of[i] != usize::MAX {
                continue;
            }
            let orbit = group.conjugacy_orbit(&elements[i])?;
            let id = group.conjugacy_class_id(&orbit[0])?;
            let k = classes.len();
            let mut size_in_nc = 0;
            for x in &orbit {
                if let Some(&j) = index.get(x) {
                    class_of[j] = k;
                    size_in_nc += 1;
                }
            }
            classes.push(NcClass { id, rank: rank[i], representative: elements[i].clone(), size_in_nc });
        }

        Ok(NcPoset { group, elements, index, rank, words, leq, class_of, classes })
    }

    pub fn group(&self) -> &Arc<Group> {
        &self.group
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[Element] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &Element {
        &self.elements[i]
    }

    pub fn index_of(&self, w: &Element) -> Option<usize> {
        self.index.get(w).copied()
    }

    pub fn rank(&self, i: usize) -> usize {
        self.rank[i]
    }

    pub fn ranks(&self) -> &[usize] {
        &self.rank
    }

    /// Index of the Coxeter element (the unique top element).
    pub fn top(&self) -> usize {
        self.elements.len() - 1
    }

    /// `elements[u] ≼ elements[v]`.
    pub fn leq(&self, u: usize, v: usize) -> bool {
        self.leq[u * self.words + v / 64] >> (v % 64) & 1 == 1
    }

    /// Indices `v` with `u ≼ v`, in increasing order.
    pub fn above(&self, u: usize) -> impl Iterator<Item = usize> + '_ {
        let row = &self.leq[u * self.words..(u + 1) * self.words];
        row.iter().enumerate().flat_map(|(w, &bits)| {
            let mut b = bits;
            std::iter::from_fn(move || {
                if b == 0 {
                    return None;
                }
                let t = b.trailing_zeros() as usize;
                b &= b - 1;
                Some(w * 64 + t)
            })
        })
    }

    /// Indices `v` with `u ≼ v` and `rank(v) = rank(u) + jump`.
    pub fn above_by(&self, u: usize, jump: usize) -> impl Iterator<Item = usize> + '_ {
        let target = self.rank[u] + jump;
        self.above(u).filter(move |&v| self.rank[v] == target)
    }

    /// Indices of the elements of a given rank.
    pub fn rank_range(&self, r: usize) -> std::ops::Range<usize> {
        self.rank.partition_point(|&x| x < r)..self.rank.partition_point(|&x| x <= r)
    }

    /// Conjugacy class (as an index into [`NcPoset::classes`]) of an element.
    pub fn class_index(&self, i: usize) -> usize {
        self.class_of[i]
    }

    pub fn class_of(&self, i: usize) -> &ClassId {
        &self.classes[self.class_of[i]].id
    }

    /// All classes meeting `NC`, in order of first appearance.
    pub fn classes(&self) -> &[NcClass] {
        &self.classes
    }

    /// The classes of rank-2 elements, ordered by `(size_in_nc, id)`.
    pub fn strata_codim2(&self) -> Vec<NcClass> {
        let mut out: Vec<NcClass> = self.classes.iter().filter(|c| c.rank == 2).cloned().collect();
        out.sort_by(|a, b| (a.size_in_nc, &a.id).cmp(&(b.size_in_nc, &b.id)));
        out
    }

    /// Number of multichains `w₁ ≼ ⋯ ≼ w_p` in `NC`, by repeated products
    /// with the order matrix. `p = 0` counts the empty chain.
    pub fn count_multichains(&self, p: usize) -> BigUint {
        if p == 0 {
            return BigUint::one();
        }
        let mut cur = vec![BigUint::one(); self.len()];
        for _ in 1..p {
            let mut next = vec![BigUint::zero(); self.len()];
            for (u, x) in cur.iter().enumerate() {
                if x.is_zero() {
                    continue;
                }
                for v in self.above(u) {
                    next[v] += x;
                }
            }
            cur = next;
        }
        cur.into_iter().sum()
    }
}

/// `Cat^(p)(W) = ∏ (dᵢ + p·h) / dᵢ`.
pub fn fuss_catalan(group: &Group, p: u64) -> Result<BigUint> {
    let h = u64::from(group.coxeter_number());
    let value = group.degrees().iter().fold(BigRational::one(), |acc, &d| {
        acc * BigRational::new((u64::from(d) + p * h).into(), u64::from(d).into())
    });
    if !value.is_integer() {
        return Err(Error::NonIntegerResult(format!("Cat^({p}) = {value}")));
    }
    value
        .to_integer()
        .to_biguint()
        .ok_or_else(|| Error::NonIntegerResult(format!("Cat^({p}) = {value} is negative")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::{build_group, GroupSpec};

    fn nc(spec: GroupSpec) -> NcPoset {
        build_nc(Arc::new(build_group(spec).unwrap())).unwrap()
    }

    #[test]
    fn sizes_match_catalan() {
        assert_eq!(nc(GroupSpec::A(3)).len(), 14);
        assert_eq!(nc(GroupSpec::I2(5)).len(), 7);
        assert_eq!(nc(GroupSpec::H3).len(), 32);
    }

    #[test]
    fn fuss_catalan_values() {
        let g = build_group(GroupSpec::A(3)).unwrap();
        assert_eq!(fuss_catalan(&g, 0).unwrap(), BigUint::from(1u32));
        assert_eq!(fuss_catalan(&g, 1).unwrap(), BigUint::from(14u32));
        assert_eq!(fuss_catalan(&g, 2).unwrap(), BigUint::from(55u32));
    }

    #[test]
    fn multichains_small() {
        let p = nc(GroupSpec::A(3));
        assert_eq!(p.count_multichains(1), BigUint::from(14u32));
        assert_eq!(p.count_multichains(2), BigUint::from(55u32));
        let i2 = nc(GroupSpec::I2(7));
        let g = i2.group().clone();
        for k in 1..=6 {
            assert_eq!(i2.count_multichains(k), fuss_catalan(&g, k as u64).unwrap());
        }
    }

    #[test]
    fn rank_structure() {
        let p = nc(GroupSpec::A(3));
        assert_eq!(p.rank(0), 0);
        assert!(p.element(0).is_identity());
        assert_eq!(p.element(p.top()), p.group().coxeter());
        let per_rank: Vec<usize> = (0..=3).map(|r| p.rank_range(r).len()).collect();
        // Narayana numbers
        assert_eq!(per_rank, vec![1, 6, 6, 1]);
    }

    #[test]
    fn strata_examples() {
        let a3 = nc(GroupSpec::A(3));
        let strata = a3.strata_codim2();
        assert_eq!(strata.len(), 2);
        let orders: Vec<u64> = strata.iter().map(|c| c.representative.order()).collect();
        assert_eq!(orders, vec![2, 3]);
        assert_eq!(strata.iter().map(|c| c.size_in_nc).sum::<usize>(), 6);
        assert_eq!(nc(GroupSpec::H3).strata_codim2().len(), 3);
        let d4 = nc(GroupSpec::d(4).unwrap()).strata_codim2();
        assert_eq!(d4.len(), 4);
        assert_eq!(d4.iter().filter(|c| c.representative.order() == 2).count(), 3);
    }
}
