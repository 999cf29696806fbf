use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A well-generated irreducible reflection group, named by family and parameters.
///
/// Only the families below are expressible. `B(n)` and `D(n)` are normalized on
/// construction to the monomial families `G(2,1,n)` and `G(2,2,n)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum GroupSpec {
    /// Symmetric group on `n + 1` points.
    A(u32),
    /// `G(d,1,n)`; `B(n)` is `d = 2`.
    Gd1n { d: u32, n: u32 },
    /// `G(e,e,n)` with `n ≥ 3`; `D(n)` is `e = 2`.
    Geen { e: u32, n: u32 },
    /// Dihedral group of order `2e`.
    I2(u32),
    H3,
    H4,
    F4,
    E6,
    E7,
    E8,
}

/// Constructor helpers matching the usual names.
impl GroupSpec {
    pub fn a(n: u32) -> Result<Self> {
        if n < 1 {
            return Err(Error::RankTooSmall { family: "A", rank: n as usize, min: 1 });
        }
        Ok(GroupSpec::A(n))
    }

    pub fn b(n: u32) -> Result<Self> {
        if n < 2 {
            return Err(Error::RankTooSmall { family: "B", rank: n as usize, min: 2 });
        }
        Ok(GroupSpec::Gd1n { d: 2, n })
    }

    pub fn d(n: u32) -> Result<Self> {
        if n < 2 {
            return Err(Error::RankTooSmall { family: "D", rank: n as usize, min: 2 });
        }
        Ok(GroupSpec::Geen { e: 2, n })
    }

    pub fn i2(e: u32) -> Result<Self> {
        if e < 3 {
            return Err(Error::InvalidParameter(format!("I2({e}) needs e >= 3")));
        }
        Ok(GroupSpec::I2(e))
    }

    pub fn gd1n(d: u32, n: u32) -> Result<Self> {
        if d < 2 {
            return Err(Error::InvalidParameter(format!("G({d},1,{n}) needs d >= 2")));
        }
        if n < 1 {
            return Err(Error::RankTooSmall { family: "G(d,1,n)", rank: n as usize, min: 1 });
        }
        Ok(GroupSpec::Gd1n { d, n })
    }

    pub fn geen(e: u32, n: u32) -> Result<Self> {
        if e < 3 {
            return Err(Error::InvalidParameter(format!("G({e},{e},{n}) needs e >= 3")));
        }
        if n < 3 {
            return Err(Error::RankTooSmall { family: "G(e,e,n)", rank: n as usize, min: 3 });
        }
        Ok(GroupSpec::Geen { e, n })
    }

    /// Re-checks parameter bounds; useful for values built without the helpers.
    pub fn validate(self) -> Result<Self> {
        match self {
            GroupSpec::A(n) => GroupSpec::a(n),
            GroupSpec::Gd1n { d, n } => GroupSpec::gd1n(d, n),
            GroupSpec::Geen { e: 2, n } => GroupSpec::d(n),
            GroupSpec::Geen { e, n } => GroupSpec::geen(e, n),
            GroupSpec::I2(e) => GroupSpec::i2(e),
            other => Ok(other),
        }
    }

    pub fn rank(self) -> usize {
        match self {
            GroupSpec::A(n) => n as usize,
            GroupSpec::Gd1n { n, .. } | GroupSpec::Geen { n, .. } => n as usize,
            GroupSpec::I2(_) => 2,
            GroupSpec::H3 => 3,
            GroupSpec::H4 | GroupSpec::F4 => 4,
            GroupSpec::E6 => 6,
            GroupSpec::E7 => 7,
            GroupSpec::E8 => 8,
        }
    }

    /// Invariant degrees in increasing order.
    pub fn degrees(self) -> Vec<u32> {
        let mut degrees = match self {
            GroupSpec::A(n) => (2..=n + 1).collect(),
            GroupSpec::Gd1n { d, n } => (1..=n).map(|i| i * d).collect(),
            GroupSpec::Geen { e, n } => {
                let mut v: Vec<u32> = (1..n).map(|i| i * e).collect();
                v.push(n);
                v
            }
            GroupSpec::I2(e) => vec![2, e],
            GroupSpec::H3 => vec![2, 6, 10],
            GroupSpec::H4 => vec![2, 12, 20, 30],
            GroupSpec::F4 => vec![2, 6, 8, 12],
            GroupSpec::E6 => vec![2, 5, 6, 8, 9, 12],
            GroupSpec::E7 => vec![2, 6, 8, 10, 12, 14, 18],
            GroupSpec::E8 => vec![2, 8, 12, 14, 18, 20, 24, 30],
        };
        degrees.sort_unstable();
        degrees
    }

    pub fn coxeter_number(self) -> u32 {
        *self.degrees().last().expect("rank >= 1")
    }

    /// Group order as the product of the degrees.
    pub fn order(self) -> BigUint {
        self.degrees()
            .into_iter()
            .fold(BigUint::one(), |acc, d| acc * BigUint::from(d))
    }

    /// True when every reflection has order two.
    pub fn is_two_reflection(self) -> bool {
        !matches!(self, GroupSpec::Gd1n { d, .. } if d > 2)
    }

    pub fn is_real(self) -> bool {
        match self {
            GroupSpec::Gd1n { d, .. } => d == 2,
            GroupSpec::Geen { e, .. } => e == 2,
            _ => true,
        }
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            GroupSpec::A(n) => write!(f, "A{n}"),
            GroupSpec::Gd1n { d: 2, n } => write!(f, "B{n}"),
            GroupSpec::Gd1n { d, n } => write!(f, "G({d},1,{n})"),
            GroupSpec::Geen { e: 2, n } => write!(f, "D{n}"),
            GroupSpec::Geen { e, n } => write!(f, "G({e},{e},{n})"),
            GroupSpec::I2(e) => write!(f, "I2({e})"),
            GroupSpec::H3 => f.write_str("H3"),
            GroupSpec::H4 => f.write_str("H4"),
            GroupSpec::F4 => f.write_str("F4"),
            GroupSpec::E6 => f.write_str("E6"),
            GroupSpec::E7 => f.write_str("E7"),
            GroupSpec::E8 => f.write_str("E8"),
        }
    }
}

fn parse_uint(s: &str, whole: &str) -> Result<u32> {
    s.trim()
        .parse()
        .map_err(|_| Error::Parse(format!("expected a nonnegative integer in {whole:?}, got {s:?}")))
}

/// Parses `A<n>`, `B<n>`, `D<n>`, `I2(<e>)`, `G(<d>,1,<n>)`, `G(<e>,<e>,<n>)`,
/// `H3`, `H4`, `F4`, `E6`, `E7`, `E8` (case-insensitive).
impl FromStr for GroupSpec {
    type Err = Error;

    fn from_str(input: &str) -> Result<Self> {
        let s: String = input.chars().filter(|c| !c.is_whitespace()).collect();
        let upper = s.to_ascii_uppercase();
        match upper.as_str() {
            "H3" => return Ok(GroupSpec::H3),
            "H4" => return Ok(GroupSpec::H4),
            "F4" => return Ok(GroupSpec::F4),
            "E6" => return Ok(GroupSpec::E6),
            "E7" => return Ok(GroupSpec::E7),
            "E8" => return Ok(GroupSpec::E8),
            _ => {}
        }
        if let Some(arg) = upper.strip_prefix("I2(").and_then(|r| r.strip_suffix(')')) {
            return GroupSpec::i2(parse_uint(arg, input)?);
        }
        if let Some(args) = upper.strip_prefix("G(").and_then(|r| r.strip_suffix(')')) {
            let parts: Vec<&str> = args.split(',').collect();
            if parts.len() != 3 {
                return Err(Error::Parse(format!("expected G(a,b,n), got {input:?}")));
            }
            let a = parse_uint(parts[0], input)?;
            let b = parse_uint(parts[1], input)?;
            let n = parse_uint(parts[2], input)?;
            return match (a, b) {
                (1, 1) => GroupSpec::a(n.saturating_sub(1)),
                (d, 1) => GroupSpec::gd1n(d, n),
                (2, 2) => GroupSpec::d(n),
                (e, f) if e == f && n == 2 => GroupSpec::i2(e),
                (e, f) if e == f => GroupSpec::geen(e, n),
                _ => Err(Error::UnsupportedGroup(format!(
                    "{input}: only G(d,1,n) and G(e,e,n) are well-generated"
                ))),
            };
        }
        let mut chars = upper.chars();
        let family = chars.next().ok_or_else(|| Error::Parse("empty group string".into()))?;
        let rest = chars.as_str();
        if rest.is_empty() || !rest.chars().all(|c| c.is_ascii_digit()) {
            return Err(Error::Parse(format!("unrecognized group string {input:?}")));
        }
        let n = parse_uint(rest, input)?;
        match family {
            'A' => GroupSpec::a(n),
            'B' => GroupSpec::b(n),
            'D' => GroupSpec::d(n),
            'E' | 'F' | 'H' | 'G' => Err(Error::UnsupportedGroup(input.to_string())),
            _ => Err(Error::Parse(format!("unrecognized group string {input:?}"))),
        }
    }
}
