//! Exact Gaussian elimination over ℚ and ℚ(φ), φ² = φ + 1.

use std::ops::{Add, Mul, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// The minimal field interface needed by [`nullspace`].
pub trait ExactField: Clone + PartialEq {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    /// Panics on division by zero.
    fn div(&self, other: &Self) -> Self;
}

impl ExactField for BigRational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn div(&self, other: &Self) -> Self {
        self / other
    }
}

/// An element `a + bφ` of the golden field with rational coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QPhi {
    pub a: BigRational,
    pub b: BigRational,
}

impl QPhi {
    pub fn from_ints(a: i64, b: i64) -> Self {
        QPhi {
            a: BigRational::from_integer(a.into()),
            b: BigRational::from_integer(b.into()),
        }
    }

    /// Galois conjugate, sending φ to 1 − φ.
    pub fn conjugate(&self) -> Self {
        QPhi { a: &self.a + &self.b, b: -&self.b }
    }

    /// Field norm a² + ab − b².
    pub fn norm(&self) -> BigRational {
        &self.a * &self.a + &self.a * &self.b - &self.b * &self.b
    }
}

impl ExactField for QPhi {
    fn zero() -> Self {
        QPhi { a: Zero::zero(), b: Zero::zero() }
    }
    fn one() -> Self {
        QPhi { a: One::one(), b: Zero::zero() }
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(&self.a) && Zero::is_zero(&self.b)
    }
    fn add(&self, o: &Self) -> Self {
        QPhi { a: &self.a + &o.a, b: &self.b + &o.b }
    }
    fn sub(&self, o: &Self) -> Self {
        QPhi { a: &self.a - &o.a, b: &self.b - &o.b }
    }
    fn mul(&self, o: &Self) -> Self {
        let bd = &self.b * &o.b;
        QPhi {
            a: &self.a * &o.a + &bd,
            b: &self.a * &o.b + &self.b * &o.a + bd,
        }
    }
    fn div(&self, o: &Self) -> Self {
        let n = o.norm();
        assert!(!Zero::is_zero(&n), "division by zero in Q(phi)");
        let c = o.conjugate();
        let num = self.mul(&c);
        QPhi { a: num.a / &n, b: num.b / n }
    }
}

/// Element `a + bφ` of ℤ[φ] with machine integers; used for fast exact checks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct ZPhi {
    pub a: i64,
    pub b: i64,
}

impl Add for ZPhi {
    type Output = ZPhi;
    fn add(self, o: ZPhi) -> ZPhi {
        ZPhi { a: self.a + o.a, b: self.b + o.b }
    }
}

impl Sub for ZPhi {
    type Output = ZPhi;
    fn sub(self, o: ZPhi) -> ZPhi {
        ZPhi { a: self.a - o.a, b: self.b - o.b }
    }
}

impl Mul for ZPhi {
    type Output = ZPhi;
    fn mul(self, o: ZPhi) -> ZPhi {
        let bd = self.b * o.b;
        ZPhi { a: self.a * o.a + bd, b: self.a * o.b + self.b * o.a + bd }
    }
}

/// Row-reduces `rows` in place and returns the pivot column of each pivot row.
fn row_reduce<F: ExactField>(rows: &mut [Vec<F>], cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = F::one().div(&rows[r][c]);
        for x in rows[r].iter_mut() {
            *x = x.mul(&inv);
        }
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let factor = rows[i][c].clone();
                for j in 0..cols {
                    let t = factor.mul(&rows[r][j]);
                    rows[i][j] = rows[i][j].sub(&t);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank<F: ExactField>(mut rows: Vec<Vec<F>>, cols: usize) -> usize {
    row_reduce(&mut rows, cols).len()
}

/// A basis of the right kernel `{x : M x = 0}`.
pub fn nullspace<F: ExactField>(mut rows: Vec<Vec<F>>, cols: usize) -> Vec<Vec<F>> {
    let pivots = row_reduce(&mut rows, cols);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![F::zero(); cols];
            v[f] = F::one();
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = F::zero().sub(&rows[r][f]);
            }
            v
        })
        .collect()
}

fn lcm_of_denominators<'a>(values: impl Iterator<Item = &'a BigRational>) -> BigInt {
    values.fold(BigInt::one(), |acc, q| acc.lcm(q.denom()))
}

fn to_i64(q: &BigRational) -> i64 {
    assert!(q.is_integer(), "scaled vector is not integral");
    i64::try_from(q.to_integer()).expect("kernel vector entry overflows i64")
}

/// Clears denominators of a rational vector.
pub fn integral_vector(v: &[BigRational]) -> Vec<i64> {
    let l = BigRational::from_integer(lcm_of_denominators(v.iter()));
    v.iter().map(|q| to_i64(&(q * &l))).collect()
}

/// Clears denominators of a ℚ(φ) vector, landing in ℤ[φ].
pub fn integral_phi_vector(v: &[QPhi]) -> Vec<ZPhi> {
    let l = BigRational::from_integer(lcm_of_denominators(v.iter().flat_map(|x| [&x.a, &x.b])));
    v.iter()
        .map(|x| ZPhi { a: to_i64(&(&x.a * &l)), b: to_i64(&(&x.b * &l)) })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn rational_kernel() {
        // [[1,2,3],[2,4,6]] has a 2-dimensional kernel
        let m = vec![vec![q(1), q(2), q(3)], vec![q(2), q(4), q(6)]];
        assert_eq!(rank(m.clone(), 3), 1);
        let ker = nullspace(m.clone(), 3);
        assert_eq!(ker.len(), 2);
        for v in &ker {
            for row in &m {
                let s = row.iter().zip(v).fold(q(0), |acc, (a, b)| acc + a * b);
                assert!(Zero::is_zero(&s));
            }
        }
    }

    #[test]
    fn golden_inverse() {
        let phi = QPhi::from_ints(0, 1);
        let inv = QPhi::one().div(&phi);
        // 1/φ = φ − 1
        assert_eq!(inv, QPhi::from_ints(-1, 1));
        assert_eq!(phi.mul(&phi), QPhi::from_ints(1, 1));
        let x = QPhi::from_ints(3, -2);
        assert_eq!(x.div(&x), QPhi::one());
    }

    #[test]
    fn golden_kernel_scaled() {
        // x − φ y = 0 has kernel spanned by (φ, 1)
        let m = vec![vec![QPhi::one(), QPhi::from_ints(0, -1)]];
        let ker = nullspace(m, 2);
        assert_eq!(ker.len(), 1);
        let z = integral_phi_vector(&ker[0]);
        assert_eq!(z, vec![ZPhi { a: 0, b: 1 }, ZPhi { a: 1, b: 0 }]);
    }
}
