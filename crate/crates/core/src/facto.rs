//! Block factorizations of the Coxeter element.
//!
//! Counting goes through chains in [`NcPoset`]: a factorization `(w₁, …, w_p)`
//! of `c` with lengths summing to `n` is the same thing as a chain
//! `1 = u₀ ≺ u₁ ≺ ⋯ ≺ u_p = c` with `uᵢ = w₁⋯wᵢ`. Explicit enumeration of the
//! tuples is also provided; it does not look at `NC` at all and is what the
//! Hurwitz and fiber computations run on.

use std::collections::{BTreeMap, HashSet, VecDeque};
use std::fmt;

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::groups::{Element, Group};
use crate::ncp::{NcClass, NcPoset};

/// An ordered tuple of nontrivial elements multiplying to `c`, with lengths summing to `n`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Factorization {
    factors: Vec<Element>,
    composition: Vec<usize>,
}

impl Factorization {
    /// Checks the factorization invariants against `group`.
    pub fn new(group: &Group, factors: Vec<Element>) -> Result<Factorization> {
        let composition = factors
            .iter()
            .map(|w| group.reflection_length(w))
            .collect::<Result<Vec<_>>>()?;
        if composition.contains(&0) {
            return Err(Error::InvalidComposition("identity factor".into()));
        }
        if composition.iter().sum::<usize>() != group.rank() {
            return Err(Error::InvalidComposition(format!(
                "lengths {composition:?} do not sum to {}",
                group.rank()
            )));
        }
        let prod = factors.iter().fold(group.identity().clone(), |acc, w| acc.compose(w));
        if &prod != group.coxeter() {
            return Err(Error::InvalidComposition("product is not the Coxeter element".into()));
        }
        Ok(Factorization { factors, composition })
    }

    fn from_parts(factors: Vec<Element>, composition: Vec<usize>) -> Factorization {
        Factorization { factors, composition }
    }

    pub fn factors(&self) -> &[Element] {
        &self.factors
    }

    pub fn composition(&self) -> &[usize] {
        &self.composition
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    /// Concatenated serializations of the factors.
    pub fn to_bytes(&self) -> Vec<u8> {
        self.factors.iter().flat_map(Element::to_bytes).collect()
    }
}

impl fmt::Debug for Factorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(&self.factors).finish()
    }
}

fn check_composition(n: usize, comp: &[usize]) -> Result<()> {
    if comp.is_empty() || comp.contains(&0) {
        return Err(Error::InvalidComposition(format!("{comp:?} has empty or zero parts")));
    }
    let total: usize = comp.iter().sum();
    if total != n {
        return Err(Error::InvalidComposition(format!("{comp:?} sums to {total}, not {n}")));
    }
    Ok(())
}

/// All compositions of `n` into `k` positive parts, in lexicographic order.
pub fn compositions(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(n: usize, k: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k == 0 {
            if n == 0 {
                out.push(prefix.clone());
            }
            return;
        }
        for first in 1..=n.saturating_sub(k - 1) {
            prefix.push(first);
            go(n - first, k - 1, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if k >= 1 && k <= n {
        go(n, k, &mut Vec::new(), &mut out);
    }
    out
}

/// Number of factorizations of `c` whose factor lengths are exactly `comp`.
pub fn count_fact_by_composition(nc: &NcPoset, comp: &[usize]) -> Result<BigUint> {
    check_composition(nc.group().rank(), comp)?;
    let mut cur = vec![BigUint::zero(); nc.len()];
    cur[0] = BigUint::one();
    let mut level = 0;
    for &part in comp {
        let mut next = vec![BigUint::zero(); nc.len()];
        for u in nc.rank_range(level) {
            if cur[u].is_zero() {
                continue;
            }
            for v in nc.above_by(u, part) {
                next[v] += &cur[u];
            }
        }
        cur = next;
        level += part;
    }
    Ok(cur.swap_remove(nc.top()))
}

/// Number of factorizations of `c` into exactly `k` blocks.
///
/// Counts strict chains of length `k` from `1` to `c`; this equals the sum of
/// [`count_fact_by_composition`] over compositions of `n` into `k` parts.
pub fn count_fact_k(nc: &NcPoset, k: usize) -> Result<BigUint> {
    let n = nc.group().rank();
    if k == 0 || k > n {
        return Err(Error::InvalidComposition(format!("k = {k} outside 1..={n}")));
    }
    let mut cur = vec![BigUint::zero(); nc.len()];
    cur[0] = BigUint::one();
    for _ in 0..k {
        let mut next = vec![BigUint::zero(); nc.len()];
        for (u, x) in cur.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for v in nc.above(u).filter(|&v| v != u) {
                next[v] += x;
            }
        }
        cur = next;
    }
    Ok(cur.swap_remove(nc.top()))
}

/// `|Red_R(c)|`, the number of reduced decompositions of `c` into reflections.
pub fn count_reduced_decompositions(nc: &NcPoset) -> BigUint {
    let n = nc.group().rank();
    count_fact_by_composition(nc, &vec![1; n]).expect("1^n is a composition of n")
}

/// Number of pairs of reflections `(r₁, r₂)` with `r₁ r₂ = w`.
pub fn r_lambda(group: &Group, w: &Element) -> Result<u64> {
    let len = group.reflection_length(w)?;
    if len != 2 {
        return Err(Error::NotLengthTwo(len));
    }
    Ok(group
        .reflections()
        .iter()
        .filter(|r1| group.is_reflection(&r1.inverse().compose(w)))
        .count() as u64)
}

/// `u = count · |W| / ((n−1)! h^{n−1})`, which must be an integer.
pub fn derived_degree(count: &BigUint, group: &Group) -> Result<u64> {
    let n = group.rank();
    let h = BigUint::from(group.coxeter_number());
    let factorial: BigUint = (1..n).map(BigUint::from).product();
    let den = factorial * h.pow(n as u32 - 1);
    let value = BigRational::new((count * group.order()).into(), den.into());
    if !value.is_integer() {
        return Err(Error::NonIntegerResult(format!(
            "derived degree {count}·|W|/((n−1)!h^(n−1)) = {value}"
        )));
    }
    value
        .to_integer()
        .to_u64()
        .ok_or_else(|| Error::NonIntegerResult(format!("derived degree {value} out of range")))
}

/// One codimension-2 stratum with its discriminant data.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LLRow {
    pub class: NcClass,
    /// Ramification index: pairs of reflections multiplying to a representative.
    pub r: u64,
    /// Weighted degree of the discriminant factor.
    pub u: u64,
    /// `|fact_{n−1}^Λ(c)|`, summed over the `n − 1` positions of the length-2 block.
    pub count_submax: BigUint,
    /// The same count split by position of the length-2 block.
    pub per_position: Vec<BigUint>,
    /// Degrees `(d₁', h')` of the attached rank-2 parabolic subgroup.
    pub parabolic: (u64, u64),
    /// Multiplicative order of the representative.
    pub order: u64,
}

/// Number of maximal chains from `1` to each element, and from each element to `c`.
fn maximal_chain_counts(nc: &NcPoset) -> (Vec<BigUint>, Vec<BigUint>) {
    let size = nc.len();
    let mut below = vec![BigUint::zero(); size];
    below[0] = BigUint::one();
    for u in 0..size {
        let x = below[u].clone();
        for v in nc.above_by(u, 1) {
            below[v] += &x;
        }
    }
    let mut above = vec![BigUint::zero(); size];
    above[nc.top()] = BigUint::one();
    for u in (0..size).rev() {
        let s: BigUint = nc.above_by(u, 1).map(|v| &above[v]).sum();
        if u != nc.top() {
            above[u] = s;
        }
    }
    (below, above)
}

/// Per-class counts of submaximal factorizations, with `r`, `u` and parabolic degrees.
pub fn submaximal_by_class(nc: &NcPoset) -> Result<Vec<LLRow>> {
    let group = nc.group();
    let n = group.rank();
    if n < 2 {
        return Ok(Vec::new());
    }
    let (below, above) = maximal_chain_counts(nc);
    let classes = nc.classes();
    let mut counts = vec![vec![BigUint::zero(); n - 1]; classes.len()];
    for u in 0..nc.len() {
        if below[u].is_zero() {
            continue;
        }
        let u_inv = group.inverse(nc.element(u));
        for v in nc.above_by(u, 2) {
            let block = u_inv.compose(nc.element(v));
            let b = nc.index_of(&block).ok_or(Error::NotInNc)?;
            counts[nc.class_index(b)][nc.rank(u)] += &below[u] * &above[v];
        }
    }
    nc.strata_codim2()
        .into_iter()
        .map(|class| {
            let k = classes.iter().position(|c| c.id == class.id).expect("stratum comes from the poset");
            let per_position = counts[k].clone();
            let count_submax: BigUint = per_position.iter().sum();
            let rep = &class.representative;
            Ok(LLRow {
                r: r_lambda(group, rep)?,
                u: derived_degree(&count_submax, group)?,
                parabolic: group.parabolic_degrees(rep)?,
                order: rep.order(),
                count_submax,
                per_position,
                class,
            })
        })
        .collect()
}

/// Direction of a Hurwitz move on positions `(i, i+1)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Direction {
    /// `(a, b) ↦ (a b a⁻¹, a)`.
    Forward,
    /// `(a, b) ↦ (b, b⁻¹ a b)`, the inverse of `Forward`.
    Backward,
}

/// Applies a Hurwitz move at positions `i, i + 1` (0-based).
pub fn hurwitz_move(group: &Group, f: &Factorization, i: usize, direction: Direction) -> Result<Factorization> {
    if i + 1 >= f.len() {
        return Err(Error::IndexOutOfRange { index: i, len: f.len() });
    }
    let mut factors = f.factors.clone();
    let mut composition = f.composition.clone();
    let a = &f.factors[i];
    let b = &f.factors[i + 1];
    match direction {
        Direction::Forward => {
            factors[i] = a.compose(b).compose(&group.inverse(a));
            factors[i + 1] = a.clone();
        }
        Direction::Backward => {
            factors[i] = b.clone();
            factors[i + 1] = group.inverse(b).compose(a).compose(b);
        }
    }
    composition.swap(i, i + 1);
    Ok(Factorization::from_parts(factors, composition))
}

/// Size of the Hurwitz orbit of `f`; fails once more than `cap` tuples are seen.
pub fn hurwitz_orbit(group: &Group, f: &Factorization, cap: usize) -> Result<usize> {
    let mut seen: HashSet<Factorization> = HashSet::from([f.clone()]);
    let mut queue = VecDeque::from([f.clone()]);
    while let Some(x) = queue.pop_front() {
        for i in 0..x.len().saturating_sub(1) {
            for dir in [Direction::Forward, Direction::Backward] {
                let y = hurwitz_move(group, &x, i, dir)?;
                if seen.insert(y.clone()) {
                    if seen.len() > cap {
                        return Err(Error::BudgetExceeded {
                            order: format!("Hurwitz orbit > {cap}"),
                            budget: cap.to_string(),
                        });
                    }
                    queue.push_back(y);
                }
            }
        }
    }
    Ok(seen.len())
}

/// Every factorization of `c` with composition `comp`, by depth-first search
/// over elements of each prescribed length. Independent of [`NcPoset`].
pub fn enumerate_factorizations(group: &Group, comp: &[usize]) -> Result<Vec<Factorization>> {
    let n = group.rank();
    check_composition(n, comp)?;
    let table = group.length_table()?;
    let mut by_length: Vec<Vec<usize>> = vec![Vec::new(); n + 1];
    if comp.iter().any(|&k| k > 1) {
        for i in 0..table.len() {
            let l = table.length(i);
            if l <= n {
                by_length[l].push(i);
            }
        }
    }
    let reflection_ids: Vec<usize> = group
        .reflections()
        .iter()
        .map(|r| table.index_of(r).expect("reflections belong to the group"))
        .collect();

    let mut out = Vec::new();
    let mut stack: Vec<usize> = Vec::new();
    fn go(
        group: &Group,
        comp: &[usize],
        rest: usize,
        by_length: &[Vec<usize>],
        reflection_ids: &[usize],
        stack: &mut Vec<usize>,
        out: &mut Vec<Factorization>,
    ) {
        let table = group.length_table().expect("checked by caller");
        let depth = stack.len();
        if depth == comp.len() {
            let factors = stack.iter().map(|&i| table.element(i).clone()).collect();
            out.push(Factorization::from_parts(factors, comp.to_vec()));
            return;
        }
        let k = comp[depth];
        let remaining_len = table.length(rest);
        let candidates = if k == 1 { reflection_ids } else { &by_length[k][..] };
        for &w in candidates {
            // rest = w · rest' with ℓ(rest') = ℓ(rest) − k
            let next = table.element(table.inverse(w)).compose(table.element(rest));
            let j = table.index_of(&next).expect("group is closed");
            if table.length(j) + k == remaining_len {
                stack.push(w);
                go(group, comp, j, by_length, reflection_ids, stack, out);
                stack.pop();
            }
        }
    }
    let c = table.index_of(group.coxeter()).expect("c belongs to the group");
    go(group, comp, c, &by_length, &reflection_ids, &mut stack, &mut out);
    Ok(out)
}

/// Every reduced decomposition of `c` into reflections.
pub fn enumerate_reduced_decompositions(group: &Group) -> Result<Vec<Factorization>> {
    enumerate_factorizations(group, &vec![1; group.rank()])
}

/// For each factorization of composition `(2, 1, …, 1)`, the number of reduced
/// decompositions whose first two letters multiply to its first block.
pub fn concatenation_fibers(nc: &NcPoset) -> Result<BTreeMap<Factorization, usize>> {
    let group = nc.group();
    let n = group.rank();
    let mut fibers = BTreeMap::new();
    if n < 2 {
        return Ok(fibers);
    }
    let mut composition = vec![1; n - 1];
    composition[0] = 2;
    for red in enumerate_reduced_decompositions(group)? {
        let f = red.factors();
        let mut factors = vec![f[0].compose(&f[1])];
        factors.extend_from_slice(&f[2..]);
        *fibers.entry(Factorization::from_parts(factors, composition.clone())).or_insert(0) += 1;
    }
    Ok(fibers)
}

/// Summary of [`concatenation_fibers`] checked against `r_Λ`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiberSummary {
    /// Number of distinct targets.
    pub targets: usize,
    /// `Σ` fiber sizes.
    pub total: usize,
    /// Targets whose fiber size differs from `r_Λ` of their first block's class.
    pub mismatches: usize,
    /// Fiber size → number of targets with that size.
    pub sizes: BTreeMap<usize, usize>,
}

pub fn concatenation_fiber_summary(nc: &NcPoset) -> Result<FiberSummary> {
    let group = nc.group();
    let fibers = concatenation_fibers(nc)?;
    let mut r_by_class: BTreeMap<usize, u64> = BTreeMap::new();
    let mut summary = FiberSummary { targets: fibers.len(), total: 0, mismatches: 0, sizes: BTreeMap::new() };
    for (target, size) in &fibers {
        let block = &target.factors()[0];
        let k = nc.class_index(nc.index_of(block).ok_or(Error::NotInNc)?);
        let r = match r_by_class.get(&k) {
            Some(&r) => r,
            None => {
                let r = r_lambda(group, block)?;
                r_by_class.insert(k, r);
                r
            }
        };
        summary.total += size;
        if r != *size as u64 {
            summary.mismatches += 1;
        }
        *summary.sizes.entry(*size).or_insert(0) += 1;
    }
    Ok(summary)
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::groups::{build_group, GroupSpec};
    use crate::ncp::build_nc;

    fn nc(spec: GroupSpec) -> NcPoset {
        build_nc(Arc::new(build_group(spec).unwrap())).unwrap()
    }

    fn perm(p: &[u8]) -> Element {
        Element::Perm(p.into())
    }

    #[test]
    fn composition_list() {
        assert_eq!(compositions(3, 2), vec![vec![1, 2], vec![2, 1]]);
        assert_eq!(compositions(4, 1), vec![vec![4]]);
        assert_eq!(compositions(5, 3).len(), 6);
        assert!(compositions(2, 3).is_empty());
    }

    #[test]
    fn a3_composition_counts() {
        let p = nc(GroupSpec::A(3));
        let count = |c: &[usize]| count_fact_by_composition(&p, c).unwrap();
        assert_eq!(count(&[3]), BigUint::from(1u32));
        assert_eq!(count(&[1, 1, 1]), BigUint::from(16u32));
        assert_eq!(count(&[2, 1]), BigUint::from(6u32));
        assert_eq!(count(&[1, 2]), BigUint::from(6u32));
        assert_eq!(count_fact_k(&p, 1).unwrap(), BigUint::from(1u32));
        assert_eq!(count_fact_k(&p, 2).unwrap(), BigUint::from(12u32));
        assert_eq!(count_fact_k(&p, 3).unwrap(), BigUint::from(16u32));
        assert!(matches!(count_fact_by_composition(&p, &[2, 2]), Err(Error::InvalidComposition(_))));
        assert!(matches!(count_fact_by_composition(&p, &[3, 0]), Err(Error::InvalidComposition(_))));
        assert!(matches!(count_fact_k(&p, 4), Err(Error::InvalidComposition(_))));
    }

    #[test]
    fn a3_rows() {
        let p = nc(GroupSpec::A(3));
        let rows = submaximal_by_class(&p).unwrap();
        let got: Vec<(u64, u64, u64)> = rows.iter().map(|r| (r.r, r.u, r.count_submax.to_u64().unwrap())).collect();
        assert_eq!(got, vec![(2, 3, 4), (3, 6, 8)]);
        assert_eq!(rows[0].parabolic, (2, 2));
        assert_eq!(rows[1].parabolic, (2, 3));
        for row in &rows {
            assert_eq!(row.per_position[0], row.per_position[1]);
        }
    }

    #[test]
    fn r_lambda_examples() {
        let g = build_group(GroupSpec::A(3)).unwrap();
        assert_eq!(r_lambda(&g, &perm(&[1, 2, 0, 3])).unwrap(), 3);
        assert_eq!(r_lambda(&g, &perm(&[2, 3, 0, 1])).unwrap(), 2);
        assert_eq!(r_lambda(&g, &perm(&[1, 0, 2, 3])), Err(Error::NotLengthTwo(1)));
        let i2 = build_group(GroupSpec::I2(7)).unwrap();
        assert_eq!(r_lambda(&i2, i2.coxeter()).unwrap(), 7);
    }

    #[test]
    fn derived_degree_examples() {
        let a3 = build_group(GroupSpec::A(3)).unwrap();
        assert_eq!(derived_degree(&BigUint::from(8u32), &a3).unwrap(), 6);
        let h3 = build_group(GroupSpec::H3).unwrap();
        assert_eq!(derived_degree(&BigUint::from(10u32), &h3).unwrap(), 6);
        let b3 = build_group(GroupSpec::b(3).unwrap()).unwrap();
        assert_eq!(derived_degree(&BigUint::from(6u32), &b3).unwrap(), 4);
        assert!(matches!(derived_degree(&BigUint::from(1u32), &a3), Err(Error::NonIntegerResult(_))));
    }

    #[test]
    fn hurwitz_in_a2() {
        let g = build_group(GroupSpec::A(2)).unwrap();
        let f = Factorization::new(&g, vec![perm(&[1, 0, 2]), perm(&[0, 2, 1])]).unwrap();
        let moved = hurwitz_move(&g, &f, 0, Direction::Forward).unwrap();
        assert_eq!(moved.factors(), &[perm(&[2, 1, 0]), perm(&[1, 0, 2])]);
        assert_eq!(hurwitz_move(&g, &moved, 0, Direction::Backward).unwrap(), f);
        assert_eq!(hurwitz_orbit(&g, &f, 100).unwrap(), 3);
        assert!(matches!(hurwitz_move(&g, &f, 1, Direction::Forward), Err(Error::IndexOutOfRange { .. })));
        let single = Factorization::new(&g, vec![g.coxeter().clone()]).unwrap();
        assert_eq!(hurwitz_orbit(&g, &single, 1).unwrap(), 1);
        assert!(matches!(hurwitz_orbit(&g, &f, 2), Err(Error::BudgetExceeded { .. })));
    }

    #[test]
    fn factorization_validation() {
        let g = build_group(GroupSpec::A(2)).unwrap();
        assert!(Factorization::new(&g, vec![perm(&[0, 2, 1]), perm(&[1, 0, 2])]).is_err());
        assert!(Factorization::new(&g, vec![g.identity().clone(), g.coxeter().clone()]).is_err());
    }

    #[test]
    fn a3_fibers() {
        let p = nc(GroupSpec::A(3));
        let summary = concatenation_fiber_summary(&p).unwrap();
        assert_eq!(summary.total, 16);
        assert_eq!(summary.mismatches, 0);
        assert_eq!(summary.sizes.keys().copied().collect::<Vec<_>>(), vec![2, 3]);
        assert_eq!(summary.targets, 6);
    }
}
