//! Well-generated reflection groups with exact element arithmetic.
//!
//! A [`Group`] carries its degree data, the full list of reflections, a fixed
//! Coxeter element, and (on first use) a breadth-first layering of the Cayley
//! graph with respect to all reflections, which gives the reflection length of
//! every element.

mod element;
pub mod exceptional;
pub mod linalg;
mod spec;

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;
use std::sync::OnceLock;

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

pub use element::{Element, FixedSpace};
pub use spec::GroupSpec;

use crate::error::{Error, Result};

/// Default cap on `|W|` for anything that enumerates the whole group.
pub const DEFAULT_BUDGET: u64 = 10_000_000;

/// Enumeration budget. `E7` is only enumerated when the budget was set
/// explicitly; `E8` is never enumerated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Budget {
    pub max_order: u64,
    pub explicit: bool,
}

impl Default for Budget {
    fn default() -> Self {
        Budget { max_order: DEFAULT_BUDGET, explicit: false }
    }
}

impl Budget {
    pub fn explicit(max_order: u64) -> Self {
        Budget { max_order, explicit: true }
    }

    pub fn check(&self, spec: GroupSpec) -> Result<()> {
        let order = spec.order();
        let exceeded = || Error::BudgetExceeded {
            order: order.to_string(),
            budget: self.max_order.to_string(),
        };
        if order > BigUint::from(self.max_order) {
            return Err(exceeded());
        }
        match spec {
            GroupSpec::E8 => Err(exceeded()),
            GroupSpec::E7 if !self.explicit => Err(exceeded()),
            _ => Ok(()),
        }
    }
}

/// The exact scalar domain used to represent elements.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ScalarDomain {
    Permutation,
    /// Colored permutations with colors in ℤ/m.
    Monomial { modulus: u32 },
    /// Integer matrices in the simple-root basis.
    Rational,
    /// Matrices over ℤ[φ], φ² = φ + 1.
    Golden,
}

/// Canonical identifier of a conjugacy class: the least serialization in the class.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ClassId(Vec<u8>);

impl ClassId {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    /// The least element of the class.
    pub fn representative(&self) -> Element {
        Element::from_bytes(&self.0).expect("class ids hold valid serializations")
    }

    /// A short stable label (first 8 bytes of a SHA-256 of the serialization).
    pub fn short(&self) -> String {
        hex::encode(&Sha256::digest(&self.0)[..8])
    }
}

impl fmt::Display for ClassId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.short())
    }
}

impl fmt::Debug for ClassId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ClassId({})", self.short())
    }
}

/// All group elements in BFS order, with reflection lengths and inverses.
pub struct LengthTable {
    elements: Vec<Element>,
    index: HashMap<Element, u32>,
    length: Vec<u8>,
    inverse: Vec<u32>,
}

impl LengthTable {
    fn build(identity: &Element, reflections: &[Element]) -> LengthTable {
        let mut elements = vec![identity.clone()];
        let mut index = HashMap::from([(identity.clone(), 0u32)]);
        let mut length = vec![0u8];
        // (parent, reflection) with element = parent · reflection
        let mut origin: Vec<(u32, u32)> = vec![(0, 0)];
        let mut frontier: Vec<u32> = vec![0];
        let mut layer = 0u8;
        while !frontier.is_empty() {
            layer += 1;
            let products: Vec<Vec<Element>> = frontier
                .par_iter()
                .map(|&w| reflections.iter().map(|r| elements[w as usize].compose(r)).collect())
                .collect();
            let mut next = Vec::new();
            for (&w, row) in frontier.iter().zip(products) {
                for (ri, x) in row.into_iter().enumerate() {
                    if index.contains_key(&x) {
                        continue;
                    }
                    let id = elements.len() as u32;
                    index.insert(x.clone(), id);
                    elements.push(x);
                    length.push(layer);
                    origin.push((w, ri as u32));
                    next.push(id);
                }
            }
            frontier = next;
        }
        let refl_inv: Vec<Element> = reflections.iter().map(Element::inverse).collect();
        let mut inverse = vec![0u32; elements.len()];
        for i in 1..elements.len() {
            // (p·r)⁻¹ = r⁻¹ · p⁻¹, and p precedes i in BFS order
            let (p, r) = origin[i];
            let x = refl_inv[r as usize].compose(&elements[inverse[p as usize] as usize]);
            inverse[i] = index[&x];
        }
        LengthTable { elements, index, length, inverse }
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
        self.index.get(w).map(|&i| i as usize)
    }

    pub fn length(&self, i: usize) -> usize {
        self.length[i] as usize
    }

    pub fn inverse(&self, i: usize) -> usize {
        self.inverse[i] as usize
    }

    pub fn max_length(&self) -> usize {
        self.length.iter().copied().max().unwrap_or(0) as usize
    }

    fn length_of(&self, w: &Element) -> Result<usize> {
        self.index_of(w).map(|i| self.length(i)).ok_or(Error::ForeignElement)
    }
}

/// A well-generated reflection group with a fixed Coxeter element.
pub struct Group {
    spec: GroupSpec,
    degrees: Vec<u32>,
    order: BigUint,
    domain: ScalarDomain,
    identity: Element,
    generators: Vec<Element>,
    reflections: Vec<Element>,
    reflection_index: HashMap<Element, usize>,
    coxeter: Element,
    budget: Budget,
    lengths: OnceLock<LengthTable>,
}

impl fmt::Debug for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Group")
            .field("spec", &self.spec)
            .field("order", &self.order)
            .field("degrees", &self.degrees)
            .field("reflections", &self.reflections.len())
            .finish_non_exhaustive()
    }
}

fn transposition_reflections(modulus: u8, n: usize) -> Vec<Element> {
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            for a in 0..modulus {
                let mut perm: Vec<u8> = (0..n as u8).collect();
                perm.swap(i, j);
                let mut colors = vec![0u8; n];
                colors[i] = a;
                colors[j] = (modulus - a) % modulus;
                out.push(Element::Monomial { modulus, perm: perm.into(), colors: colors.into() });
            }
        }
    }
    out
}

fn monomial_transposition(modulus: u8, n: usize, i: usize, color: u8) -> Element {
    let mut perm: Vec<u8> = (0..n as u8).collect();
    perm.swap(i, i + 1);
    let mut colors = vec![0u8; n];
    colors[i] = color;
    colors[i + 1] = (modulus - color) % modulus;
    Element::Monomial { modulus, perm: perm.into(), colors: colors.into() }
}

/// Closure of a generating set of involutive reflections under conjugation.
fn conjugation_closure(generators: &[Element]) -> Vec<Element> {
    let mut seen: HashSet<Element> = generators.iter().cloned().collect();
    let mut queue: VecDeque<Element> = generators.iter().cloned().collect();
    let inverses: Vec<Element> = generators.iter().map(Element::inverse).collect();
    while let Some(t) = queue.pop_front() {
        for (s, s_inv) in generators.iter().zip(&inverses) {
            let x = t.conjugate_by(s, s_inv);
            if seen.insert(x.clone()) {
                queue.push_back(x);
            }
        }
    }
    seen.into_iter().collect()
}

fn product(elements: &[Element], identity: &Element) -> Element {
    elements.iter().fold(identity.clone(), |acc, x| acc.compose(x))
}

/// Constructs the group with the default budget.
pub fn build_group(spec: GroupSpec) -> Result<Group> {
    Group::new(spec, Budget::default())
}

impl Group {
    pub fn new(spec: GroupSpec, budget: Budget) -> Result<Group> {
        let spec = spec.validate()?;
        let n = spec.rank();
        let (domain, identity, generators, mut reflections, coxeter) = match spec {
            GroupSpec::A(_) => {
                let pts = n + 1;
                let identity = Element::perm_identity(pts);
                let transposition = |i: usize, j: usize| {
                    let mut p: Vec<u8> = (0..pts as u8).collect();
                    p.swap(i, j);
                    Element::Perm(p.into())
                };
                let generators: Vec<Element> = (0..n).map(|i| transposition(i, i + 1)).collect();
                let reflections = (0..pts)
                    .flat_map(|i| (i + 1..pts).map(move |j| (i, j)))
                    .map(|(i, j)| transposition(i, j))
                    .collect();
                let coxeter = Element::Perm((0..pts).map(|i| ((i + 1) % pts) as u8).collect());
                (ScalarDomain::Permutation, identity, generators, reflections, coxeter)
            }
            GroupSpec::Gd1n { d, .. } => {
                let m = u8::try_from(d).map_err(|_| Error::InvalidParameter(format!("d = {d} too large")))?;
                let identity = Element::monomial_identity(m, n);
                let diagonal = |i: usize, k: u8| {
                    let mut colors = vec![0u8; n];
                    colors[i] = k;
                    Element::Monomial { modulus: m, perm: (0..n as u8).collect(), colors: colors.into() }
                };
                let mut generators = vec![diagonal(0, 1)];
                generators.extend((0..n - 1).map(|i| monomial_transposition(m, n, i, 0)));
                let mut reflections = transposition_reflections(m, n);
                for i in 0..n {
                    reflections.extend((1..m).map(|k| diagonal(i, k)));
                }
                let mut colors = vec![0u8; n];
                colors[n - 1] = 1;
                let coxeter = Element::Monomial {
                    modulus: m,
                    perm: (0..n).map(|i| ((i + 1) % n) as u8).collect(),
                    colors: colors.into(),
                };
                (ScalarDomain::Monomial { modulus: d }, identity, generators, reflections, coxeter)
            }
            GroupSpec::Geen { e, .. } | GroupSpec::I2(e) => {
                let m = u8::try_from(e).map_err(|_| Error::InvalidParameter(format!("e = {e} too large")))?;
                let identity = Element::monomial_identity(m, n);
                let mut generators = vec![monomial_transposition(m, n, 0, 0), monomial_transposition(m, n, 0, 1)];
                generators.extend((1..n - 1).map(|i| monomial_transposition(m, n, i, 0)));
                let coxeter = product(&generators, &identity);
                let reflections = transposition_reflections(m, n);
                (ScalarDomain::Monomial { modulus: e }, identity, generators, reflections, coxeter)
            }
            GroupSpec::H3 | GroupSpec::H4 | GroupSpec::F4 | GroupSpec::E6 | GroupSpec::E7 | GroupSpec::E8 => {
                let generators = exceptional::simple_reflections(&spec.to_string())?;
                let identity = generators[0].identity_like();
                let domain = match identity {
                    Element::Golden { .. } => ScalarDomain::Golden,
                    _ => ScalarDomain::Rational,
                };
                let coxeter = product(&generators, &identity);
                let reflections = conjugation_closure(&generators);
                (domain, identity, generators, reflections, coxeter)
            }
        };
        reflections.sort();
        reflections.dedup();
        let reflection_index = reflections.iter().cloned().enumerate().map(|(i, r)| (r, i)).collect();
        Ok(Group {
            spec,
            degrees: spec.degrees(),
            order: spec.order(),
            domain,
            identity,
            generators,
            reflections,
            reflection_index,
            coxeter,
            budget,
            lengths: OnceLock::new(),
        })
    }

    pub fn spec(&self) -> GroupSpec {
        self.spec
    }

    pub fn rank(&self) -> usize {
        self.degrees.len()
    }

    /// `|W|` from the degree product.
    pub fn order(&self) -> &BigUint {
        &self.order
    }

    pub fn degrees(&self) -> &[u32] {
        &self.degrees
    }

    pub fn coxeter_number(&self) -> u32 {
        *self.degrees.last().expect("rank >= 1")
    }

    pub fn domain(&self) -> ScalarDomain {
        self.domain
    }

    pub fn budget(&self) -> Budget {
        self.budget
    }

    pub fn identity(&self) -> &Element {
        &self.identity
    }

    /// The `n` reflections the group is built from.
    pub fn generators(&self) -> &[Element] {
        &self.generators
    }

    /// All reflections, sorted by serialization.
    pub fn reflections(&self) -> &[Element] {
        &self.reflections
    }

    pub fn reflection_index(&self, w: &Element) -> Option<usize> {
        self.reflection_index.get(w).copied()
    }

    pub fn is_reflection(&self, w: &Element) -> bool {
        self.reflection_index.contains_key(w)
    }

    pub fn coxeter(&self) -> &Element {
        &self.coxeter
    }

    /// True if every reflection has order two.
    pub fn is_two_reflection(&self) -> bool {
        self.reflections.iter().all(|r| r.compose(r) == self.identity)
    }

    /// `a · b`, applying `b` first.
    pub fn multiply(&self, a: &Element, b: &Element) -> Element {
        a.compose(b)
    }

    pub fn inverse(&self, a: &Element) -> Element {
        match self.lengths.get().and_then(|t| t.index_of(a).map(|i| (t, i))) {
            Some((t, i)) => t.element(t.inverse(i)).clone(),
            None => a.inverse(),
        }
    }

    /// The BFS layering of the Cayley graph over all reflections, built once.
    pub fn length_table(&self) -> Result<&LengthTable> {
        if let Some(t) = self.lengths.get() {
            return Ok(t);
        }
        self.budget.check(self.spec)?;
        Ok(self.lengths.get_or_init(|| LengthTable::build(&self.identity, &self.reflections)))
    }

    /// Number of elements found by enumeration (should equal [`Group::order`]).
    pub fn enumerated_order(&self) -> Result<usize> {
        Ok(self.length_table()?.len())
    }

    pub fn reflection_length(&self, w: &Element) -> Result<usize> {
        self.length_table()?.length_of(w)
    }

    pub fn fixed_space_codim(&self, w: &Element) -> usize {
        w.fixed_space_codim()
    }

    /// `u ≼ v` iff `ℓ(u) + ℓ(u⁻¹v) = ℓ(v)`.
    pub fn absolute_leq(&self, u: &Element, v: &Element) -> Result<bool> {
        let t = self.length_table()?;
        let lu = t.length_of(u)?;
        let lv = t.length_of(v)?;
        let quotient = self.inverse(u).compose(v);
        Ok(lu + t.length_of(&quotient)? == lv)
    }

    /// The conjugacy class of `w`, as the closure of `{w}` under conjugation by reflections.
    pub fn conjugacy_orbit(&self, w: &Element) -> Result<Vec<Element>> {
        self.length_table()?.length_of(w)?;
        let inverses: Vec<Element> = self.reflections.iter().map(Element::inverse).collect();
        let mut seen: HashSet<Element> = HashSet::from([w.clone()]);
        let mut queue = VecDeque::from([w.clone()]);
        let mut orbit = vec![w.clone()];
        while let Some(x) = queue.pop_front() {
            for (r, r_inv) in self.reflections.iter().zip(&inverses) {
                let y = x.conjugate_by(r, r_inv);
                if seen.insert(y.clone()) {
                    orbit.push(y.clone());
                    queue.push_back(y);
                }
            }
        }
        orbit.sort();
        Ok(orbit)
    }

    pub fn conjugacy_class_id(&self, w: &Element) -> Result<ClassId> {
        let orbit = self.conjugacy_orbit(w)?;
        Ok(ClassId(orbit[0].to_bytes()))
    }

    /// Order and reflection count of the subgroup fixing `Fix(w)` pointwise.
    pub fn parabolic_closure_counts(&self, w: &Element) -> Result<(u64, u64)> {
        let t = self.length_table()?;
        t.length_of(w)?;
        let fixed = w.fixed_space();
        let order = t.elements().par_iter().filter(|g| fixed.is_fixed_by(g)).count() as u64;
        let refl = self.reflections.iter().filter(|r| fixed.is_fixed_by(r)).count() as u64;
        Ok((order, refl))
    }

    /// Degrees `(d₁', h')` of the rank-2 parabolic subgroup attached to `w`.
    pub fn parabolic_degrees(&self, w: &Element) -> Result<(u64, u64)> {
        let len = self.reflection_length(w)?;
        if len != 2 {
            return Err(Error::NotLengthTwo(len));
        }
        if !self.absolute_leq(w, &self.coxeter)? {
            return Err(Error::NotInNc);
        }
        let (order, refl) = self.parabolic_closure_counts(w)?;
        // d₁' + d₂' = N_r + 2, d₁' d₂' = N'
        let s = refl + 2;
        let disc = (s * s).checked_sub(4 * order).ok_or_else(|| {
            Error::NonIntegerResult(format!("no real degrees for order {order}, {refl} reflections"))
        })?;
        let root = disc.isqrt();
        if root * root != disc || (s + root) % 2 != 0 {
            return Err(Error::NonIntegerResult(format!(
                "no integer degrees for order {order}, {refl} reflections"
            )));
        }
        Ok(((s - root) / 2, (s + root) / 2))
    }

    /// Number of reflecting hyperplanes of the parabolic subgroup fixing `Fix(w)`.
    /// A rank-2 parabolic is reducible exactly when this is 2.
    pub fn parabolic_hyperplanes(&self, w: &Element) -> Result<usize> {
        self.length_table()?.length_of(w)?;
        let fixed = w.fixed_space();
        let mut hyperplanes: Vec<FixedSpace> = Vec::new();
        for r in self.reflections.iter().filter(|r| fixed.is_fixed_by(r)) {
            if !hyperplanes.iter().any(|h| h.is_fixed_by(r)) {
                hyperplanes.push(r.fixed_space());
            }
        }
        Ok(hyperplanes.len())
    }

    /// Order of the group as a machine integer, when it fits.
    pub fn order_u64(&self) -> Option<u64> {
        self.order.to_u64()
    }
}
