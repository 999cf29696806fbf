use std::cmp::Ordering;
use std::fmt;

use num_rational::BigRational;

use super::linalg::{self, QPhi, ZPhi};

/// An exact group element.
///
/// Elements act on the left: `a.compose(&b)` is the map "apply `b`, then `a`".
///
/// * `Perm`: `perm[i]` is the image of point `i`.
/// * `Monomial`: sends `e_i` to `ζ^colors[i] · e_{perm[i]}` with `ζ` a primitive
///   `modulus`-th root of unity.
/// * `Integer` / `Golden`: row-major matrices in the simple-root basis, with
///   entries in ℤ or ℤ[φ] (`[a, b]` meaning `a + bφ`).
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Element {
    Perm(Box<[u8]>),
    Monomial {
        modulus: u8,
        perm: Box<[u8]>,
        colors: Box<[u8]>,
    },
    Integer { dim: u8, entries: Box<[i8]> },
    Golden { dim: u8, entries: Box<[[i8; 2]]> },
}

const TAG_PERM: u8 = 0;
const TAG_MONOMIAL: u8 = 1;
const TAG_INTEGER: u8 = 2;
const TAG_GOLDEN: u8 = 3;

fn narrow(x: i64) -> i8 {
    i8::try_from(x).expect("matrix entry out of i8 range")
}

impl Element {
    pub fn perm_identity(points: usize) -> Self {
        Element::Perm((0..points as u8).collect())
    }

    pub fn monomial_identity(modulus: u8, n: usize) -> Self {
        Element::Monomial {
            modulus,
            perm: (0..n as u8).collect(),
            colors: vec![0; n].into(),
        }
    }

    pub fn integer_identity(dim: usize) -> Self {
        let mut entries = vec![0i8; dim * dim];
        for i in 0..dim {
            entries[i * dim + i] = 1;
        }
        Element::Integer { dim: dim as u8, entries: entries.into() }
    }

    pub fn golden_identity(dim: usize) -> Self {
        let mut entries = vec![[0i8; 2]; dim * dim];
        for i in 0..dim {
            entries[i * dim + i] = [1, 0];
        }
        Element::Golden { dim: dim as u8, entries: entries.into() }
    }

    /// The identity of the same shape as `self`.
    pub fn identity_like(&self) -> Self {
        match self {
            Element::Perm(p) => Element::perm_identity(p.len()),
            Element::Monomial { modulus, perm, .. } => Element::monomial_identity(*modulus, perm.len()),
            Element::Integer { dim, .. } => Element::integer_identity(*dim as usize),
            Element::Golden { dim, .. } => Element::golden_identity(*dim as usize),
        }
    }

    pub fn is_identity(&self) -> bool {
        *self == self.identity_like()
    }

    /// Dimension of the reflection representation.
    pub fn dimension(&self) -> usize {
        match self {
            Element::Perm(p) => p.len() - 1,
            Element::Monomial { perm, .. } => perm.len(),
            Element::Integer { dim, .. } | Element::Golden { dim, .. } => *dim as usize,
        }
    }

    /// `self · other`: apply `other` first.
    ///
    /// Panics if the two elements come from different representations.
    pub fn compose(&self, other: &Element) -> Element {
        match (self, other) {
            (Element::Perm(a), Element::Perm(b)) => {
                assert_eq!(a.len(), b.len(), "permutation size mismatch");
                Element::Perm(b.iter().map(|&i| a[i as usize]).collect())
            }
            (
                Element::Monomial { modulus, perm: pa, colors: ca },
                Element::Monomial { modulus: mb, perm: pb, colors: cb },
            ) => {
                assert_eq!(modulus, mb, "monomial modulus mismatch");
                let m = *modulus as u16;
                let perm = pb.iter().map(|&i| pa[i as usize]).collect();
                let colors = pb
                    .iter()
                    .zip(cb.iter())
                    .map(|(&i, &c)| ((c as u16 + ca[i as usize] as u16) % m) as u8)
                    .collect();
                Element::Monomial { modulus: *modulus, perm, colors }
            }
            (Element::Integer { dim, entries: a }, Element::Integer { dim: db, entries: b }) => {
                assert_eq!(dim, db, "matrix dimension mismatch");
                let n = *dim as usize;
                let mut out = vec![0i8; n * n];
                for i in 0..n {
                    for j in 0..n {
                        let mut s = 0i64;
                        for k in 0..n {
                            s += a[i * n + k] as i64 * b[k * n + j] as i64;
                        }
                        out[i * n + j] = narrow(s);
                    }
                }
                Element::Integer { dim: *dim, entries: out.into() }
            }
            (Element::Golden { dim, entries: a }, Element::Golden { dim: db, entries: b }) => {
                assert_eq!(dim, db, "matrix dimension mismatch");
                let n = *dim as usize;
                let mut out = vec![[0i8; 2]; n * n];
                for i in 0..n {
                    for j in 0..n {
                        let mut s = ZPhi::default();
                        for k in 0..n {
                            let x = a[i * n + k];
                            let y = b[k * n + j];
                            s = s + ZPhi { a: x[0] as i64, b: x[1] as i64 } * ZPhi { a: y[0] as i64, b: y[1] as i64 };
                        }
                        out[i * n + j] = [narrow(s.a), narrow(s.b)];
                    }
                }
                Element::Golden { dim: *dim, entries: out.into() }
            }
            _ => panic!("cannot compose elements of different representations"),
        }
    }

    pub fn inverse(&self) -> Element {
        match self {
            Element::Perm(p) => {
                let mut inv = vec![0u8; p.len()];
                for (i, &j) in p.iter().enumerate() {
                    inv[j as usize] = i as u8;
                }
                Element::Perm(inv.into())
            }
            Element::Monomial { modulus, perm, colors } => {
                let n = perm.len();
                let mut ip = vec![0u8; n];
                let mut ic = vec![0u8; n];
                for i in 0..n {
                    let j = perm[i] as usize;
                    ip[j] = i as u8;
                    ic[j] = (*modulus - colors[i] % *modulus) % *modulus;
                }
                Element::Monomial { modulus: *modulus, perm: ip.into(), colors: ic.into() }
            }
            Element::Integer { .. } | Element::Golden { .. } => {
                // finite order: w⁻¹ = w^(k−1)
                let id = self.identity_like();
                let mut prev = id.clone();
                let mut cur = self.clone();
                while cur != id {
                    prev = cur.clone();
                    cur = cur.compose(self);
                }
                prev
            }
        }
    }

    pub fn pow(&self, mut k: u64) -> Element {
        let mut base = self.clone();
        let mut acc = self.identity_like();
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.compose(&base);
            }
            base = base.compose(&base);
            k >>= 1;
        }
        acc
    }

    /// Multiplicative order.
    pub fn order(&self) -> u64 {
        let id = self.identity_like();
        let mut cur = self.clone();
        let mut k = 1;
        while cur != id {
            cur = cur.compose(self);
            k += 1;
        }
        k
    }

    /// `self · other · self⁻¹`.
    pub fn conjugate_by(&self, g: &Element, g_inv: &Element) -> Element {
        g.compose(self).compose(g_inv)
    }

    /// Canonical byte serialization: a family tag followed by the raw data.
    pub fn to_bytes(&self) -> Vec<u8> {
        match self {
            Element::Perm(p) => {
                let mut out = vec![TAG_PERM, p.len() as u8];
                out.extend_from_slice(p);
                out
            }
            Element::Monomial { modulus, perm, colors } => {
                let mut out = vec![TAG_MONOMIAL, *modulus, perm.len() as u8];
                out.extend_from_slice(perm);
                out.extend_from_slice(colors);
                out
            }
            Element::Integer { dim, entries } => {
                let mut out = vec![TAG_INTEGER, *dim];
                out.extend(entries.iter().map(|&x| x as u8));
                out
            }
            Element::Golden { dim, entries } => {
                let mut out = vec![TAG_GOLDEN, *dim];
                out.extend(entries.iter().flat_map(|x| [x[0] as u8, x[1] as u8]));
                out
            }
        }
    }

    /// Inverse of [`Element::to_bytes`]; returns `None` on malformed input.
    pub fn from_bytes(bytes: &[u8]) -> Option<Element> {
        let (&tag, rest) = bytes.split_first()?;
        match tag {
            TAG_PERM => {
                let (&len, data) = rest.split_first()?;
                if data.len() != len as usize {
                    return None;
                }
                let mut seen = vec![false; data.len()];
                for &x in data {
                    if x as usize >= data.len() || std::mem::replace(&mut seen[x as usize], true) {
                        return None;
                    }
                }
                Some(Element::Perm(data.into()))
            }
            TAG_MONOMIAL => {
                let [modulus, len, data @ ..] = rest else { return None };
                let n = *len as usize;
                if data.len() != 2 * n || *modulus == 0 {
                    return None;
                }
                let (perm, colors) = data.split_at(n);
                let mut seen = vec![false; n];
                for &x in perm {
                    if x as usize >= n || std::mem::replace(&mut seen[x as usize], true) {
                        return None;
                    }
                }
                if colors.iter().any(|&c| c >= *modulus) {
                    return None;
                }
                Some(Element::Monomial { modulus: *modulus, perm: perm.into(), colors: colors.into() })
            }
            TAG_INTEGER => {
                let (&dim, data) = rest.split_first()?;
                if data.len() != dim as usize * dim as usize {
                    return None;
                }
                Some(Element::Integer { dim, entries: data.iter().map(|&x| x as i8).collect() })
            }
            TAG_GOLDEN => {
                let (&dim, data) = rest.split_first()?;
                if data.len() != 2 * dim as usize * dim as usize {
                    return None;
                }
                Some(Element::Golden {
                    dim,
                    entries: data.chunks(2).map(|c| [c[0] as i8, c[1] as i8]).collect(),
                })
            }
            _ => None,
        }
    }

    /// Cycles of the underlying permutation (monomial and permutation elements).
    fn cycles(perm: &[u8]) -> Vec<Vec<usize>> {
        let mut seen = vec![false; perm.len()];
        let mut out = Vec::new();
        for start in 0..perm.len() {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                cycle.push(i);
                i = perm[i] as usize;
            }
            out.push(cycle);
        }
        out
    }

    fn rational_shifted(&self) -> Vec<Vec<BigRational>> {
        let Element::Integer { dim, entries } = self else { unreachable!() };
        let n = *dim as usize;
        (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let x = entries[i * n + j] as i64 - i64::from(i == j);
                        BigRational::from_integer(x.into())
                    })
                    .collect()
            })
            .collect()
    }

    fn golden_shifted(&self) -> Vec<Vec<QPhi>> {
        let Element::Golden { dim, entries } = self else { unreachable!() };
        let n = *dim as usize;
        (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let x = entries[i * n + j];
                        QPhi::from_ints(x[0] as i64 - i64::from(i == j), x[1] as i64)
                    })
                    .collect()
            })
            .collect()
    }

    /// Codimension of the fixed space in the reflection representation.
    pub fn fixed_space_codim(&self) -> usize {
        match self {
            Element::Perm(p) => p.len() - Self::cycles(p).len(),
            Element::Monomial { modulus, perm, colors } => {
                let fixed_cycles = Self::cycles(perm)
                    .iter()
                    .filter(|c| c.iter().map(|&i| colors[i] as u32).sum::<u32>() % *modulus as u32 == 0)
                    .count();
                perm.len() - fixed_cycles
            }
            Element::Integer { dim, .. } => linalg::rank(self.rational_shifted(), *dim as usize),
            Element::Golden { dim, .. } => linalg::rank(self.golden_shifted(), *dim as usize),
        }
    }

    /// An exact description of `Fix(self)` that can test containment in `Fix(g)`.
    pub fn fixed_space(&self) -> FixedSpace {
        match self {
            Element::Perm(p) => FixedSpace::Cycles(Self::cycles(p)),
            Element::Monomial { modulus, perm, colors } => {
                let m = *modulus as u32;
                let lines = Self::cycles(perm)
                    .into_iter()
                    .filter(|c| c.iter().map(|&i| colors[i] as u32).sum::<u32>() % m == 0)
                    .map(|cycle| {
                        // x_{perm(i)} = ζ^{colors[i]} x_i along the cycle
                        let mut exps = Vec::with_capacity(cycle.len());
                        let mut e = 0u32;
                        for &i in &cycle {
                            exps.push((i, e as u8));
                            e = (e + colors[i] as u32) % m;
                        }
                        exps
                    })
                    .collect();
                FixedSpace::Lines { modulus: *modulus, lines }
            }
            Element::Integer { dim, .. } => FixedSpace::Integer(
                linalg::nullspace(self.rational_shifted(), *dim as usize)
                    .iter()
                    .map(|v| linalg::integral_vector(v))
                    .collect(),
            ),
            Element::Golden { dim, .. } => FixedSpace::Golden(
                linalg::nullspace(self.golden_shifted(), *dim as usize)
                    .iter()
                    .map(|v| linalg::integral_phi_vector(v))
                    .collect(),
            ),
        }
    }
}

/// A spanning set of a fixed space, in the shape matching the element family.
#[derive(Debug, Clone)]
pub enum FixedSpace {
    /// Spanned by the indicator vectors of these point sets.
    Cycles(Vec<Vec<usize>>),
    /// Each line is spanned by `Σ ζ^k e_i` over its `(i, k)` pairs.
    Lines { modulus: u8, lines: Vec<Vec<(usize, u8)>> },
    Integer(Vec<Vec<i64>>),
    Golden(Vec<Vec<ZPhi>>),
}

impl FixedSpace {
    pub fn dimension(&self) -> usize {
        match self {
            FixedSpace::Cycles(c) => c.len(),
            FixedSpace::Lines { lines, .. } => lines.len(),
            FixedSpace::Integer(v) => v.len(),
            FixedSpace::Golden(v) => v.len(),
        }
    }

    /// True iff `g` fixes this space pointwise.
    pub fn is_fixed_by(&self, g: &Element) -> bool {
        match (self, g) {
            (FixedSpace::Cycles(cycles), Element::Perm(p)) => cycles.iter().all(|c| {
                // g must map the block onto itself
                c.iter().all(|&i| c.contains(&(p[i] as usize)))
            }),
            (FixedSpace::Lines { modulus, lines }, Element::Monomial { perm, colors, .. }) => {
                let m = *modulus as u32;
                lines.iter().all(|line| {
                    line.iter().all(|&(i, k)| {
                        let j = perm[i] as usize;
                        match line.iter().find(|&&(x, _)| x == j) {
                            Some(&(_, kj)) => (k as u32 + colors[i] as u32) % m == kj as u32,
                            None => false,
                        }
                    })
                })
            }
            (FixedSpace::Integer(vs), Element::Integer { dim, entries }) => {
                let n = *dim as usize;
                vs.iter().all(|v| {
                    (0..n).all(|i| (0..n).map(|j| entries[i * n + j] as i64 * v[j]).sum::<i64>() == v[i])
                })
            }
            (FixedSpace::Golden(vs), Element::Golden { dim, entries }) => {
                let n = *dim as usize;
                vs.iter().all(|v| {
                    (0..n).all(|i| {
                        let s = (0..n).fold(ZPhi::default(), |acc, j| {
                            let x = entries[i * n + j];
                            acc + ZPhi { a: x[0] as i64, b: x[1] as i64 } * v[j]
                        });
                        s == v[i]
                    })
                })
            }
            _ => panic!("fixed space and element come from different representations"),
        }
    }
}

impl Ord for Element {
    fn cmp(&self, other: &Self) -> Ordering {
        self.to_bytes().cmp(&other.to_bytes())
    }
}

impl PartialOrd for Element {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Element::Perm(p) => {
                let cycles: Vec<_> = Element::cycles(p).into_iter().filter(|c| c.len() > 1).collect();
                if cycles.is_empty() {
                    return f.write_str("()");
                }
                for c in cycles {
                    let pts: Vec<String> = c.iter().map(|i| (i + 1).to_string()).collect();
                    write!(f, "({})", pts.join(" "))?;
                }
                Ok(())
            }
            Element::Monomial { modulus, perm, colors } => {
                let pts: Vec<String> = perm
                    .iter()
                    .zip(colors.iter())
                    .map(|(p, c)| format!("{}^{}", p + 1, c))
                    .collect();
                write!(f, "[{}] mod {}", pts.join(" "), modulus)
            }
            Element::Integer { dim, entries } => {
                let n = *dim as usize;
                let rows: Vec<String> = entries
                    .chunks(n)
                    .map(|r| r.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","))
                    .collect();
                write!(f, "[{}]", rows.join(";"))
            }
            Element::Golden { dim, entries } => {
                let n = *dim as usize;
                let rows: Vec<String> = entries
                    .chunks(n)
                    .map(|r| r.iter().map(|x| format!("{}{:+}φ", x[0], x[1])).collect::<Vec<_>>().join(","))
                    .collect();
                write!(f, "[{}]", rows.join(";"))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn perm(p: &[u8]) -> Element {
        Element::Perm(p.into())
    }

    #[test]
    fn composition_applies_right_factor_first() {
        // points 0,1,2 stand for 1,2,3
        let t12 = perm(&[1, 0, 2]);
        let t23 = perm(&[0, 2, 1]);
        let prod = t12.compose(&t23);
        // 1 → 2 → 3 → 1
        assert_eq!(prod, perm(&[1, 2, 0]));
        assert_eq!(prod.to_string(), "(1 2 3)");
    }

    #[test]
    fn monomial_inverse_and_codim() {
        let w = Element::Monomial { modulus: 3, perm: [1, 0].into(), colors: [1, 1].into() };
        assert!(w.compose(&w.inverse()).is_identity());
        assert_eq!(w.fixed_space_codim(), 2);
        let diag = Element::Monomial { modulus: 3, perm: [0, 1].into(), colors: [1, 0].into() };
        assert_eq!(diag.fixed_space_codim(), 1);
        assert_eq!(diag.order(), 3);
    }

    #[test]
    fn codim_of_double_transposition() {
        let w = perm(&[2, 3, 0, 1]);
        assert_eq!(w.fixed_space_codim(), 2);
        assert_eq!(Element::perm_identity(4).fixed_space_codim(), 0);
    }

    #[test]
    fn bytes_round_trip() {
        let elems = [
            perm(&[2, 0, 1]),
            Element::Monomial { modulus: 4, perm: [1, 0, 2].into(), colors: [3, 1, 0].into() },
            Element::Integer { dim: 2, entries: [-1, 0, 1, 1].into() },
            Element::Golden { dim: 2, entries: [[-1, 0], [0, 1], [0, 0], [1, 0]].into() },
        ];
        for e in elems {
            assert_eq!(Element::from_bytes(&e.to_bytes()), Some(e));
        }
        assert_eq!(Element::from_bytes(&[0, 2, 0, 0]), None);
        assert_eq!(Element::from_bytes(&[9]), None);
    }

    #[test]
    fn matrix_inverse_by_powers() {
        // reflections of A2 in the root basis
        let s1 = Element::Integer { dim: 2, entries: [-1, 1, 0, 1].into() };
        let s2 = Element::Integer { dim: 2, entries: [1, 0, 1, -1].into() };
        let c = s1.compose(&s2);
        assert_eq!(c.order(), 3);
        assert!(c.compose(&c.inverse()).is_identity());
        assert_eq!(c.pow(3), c.identity_like());
        assert_eq!(c.fixed_space_codim(), 2);
        assert_eq!(s1.fixed_space_codim(), 1);
    }

    #[test]
    fn fixed_space_containment() {
        // (1 2) fixes Fix((1 2)(3 4))? No: (1 2)(3 4) fixes 1_{12} and 1_{34}; (1 2) fixes both.
        let w = perm(&[1, 0, 3, 2]);
        assert!(w.fixed_space().is_fixed_by(&perm(&[1, 0, 2, 3])));
        assert!(!w.fixed_space().is_fixed_by(&perm(&[2, 1, 0, 3])));
    }
}
