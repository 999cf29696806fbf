//! Closed formulas in the invariant degrees and the embedded table of
//! LL-discriminant factorizations they are compared against.

mod expr;

use std::fmt;
use std::sync::OnceLock;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};
use serde::{Deserialize, Serialize};

pub use expr::Expr;

use crate::error::{Error, Result};
use crate::groups::{Group, GroupSpec};

pub const LL_TABLE: &str = include_str!("../../data/ll_table.toml");

/// Anything that knows its invariant degrees.
pub trait DegreeData {
    fn degree_list(&self) -> Vec<u32>;
}

impl DegreeData for Group {
    fn degree_list(&self) -> Vec<u32> {
        self.degrees().to_vec()
    }
}

impl DegreeData for GroupSpec {
    fn degree_list(&self) -> Vec<u32> {
        self.degrees()
    }
}

impl DegreeData for [u32] {
    fn degree_list(&self) -> Vec<u32> {
        let mut d = self.to_vec();
        d.sort_unstable();
        d
    }
}

struct Degrees {
    n: u64,
    h: u64,
    d: Vec<u64>,
    order: BigInt,
}

fn degrees_of<D: DegreeData + ?Sized>(g: &D) -> Degrees {
    let d: Vec<u64> = g.degree_list().into_iter().map(u64::from).collect();
    let order = d.iter().fold(BigInt::one(), |acc, &x| acc * x);
    Degrees { n: d.len() as u64, h: *d.last().expect("rank >= 1"), d, order }
}

fn factorial(k: u64) -> BigInt {
    (1..=k).fold(BigInt::one(), |acc, i| acc * i)
}

fn pow(base: u64, exp: u64) -> BigInt {
    num_traits::pow(BigInt::from(base), exp as usize)
}

fn integral(value: BigRational, what: &str) -> Result<BigUint> {
    if !value.is_integer() {
        return Err(Error::NonIntegerResult(format!("{what} = {value}")));
    }
    value
        .to_integer()
        .to_biguint()
        .ok_or_else(|| Error::NonIntegerResult(format!("{what} = {value} is negative")))
}

/// `n!·hⁿ/|W|`, the number of reduced reflection decompositions of `c`.
pub fn ll_number<D: DegreeData + ?Sized>(g: &D) -> Result<BigUint> {
    let k = degrees_of(g);
    integral(BigRational::new(factorial(k.n) * pow(k.h, k.n), k.order), "LL-number")
}

/// `(n−2)!·h^{n−1}/|W|`, the per-position prefactor of the table.
pub fn prefactor<D: DegreeData + ?Sized>(g: &D) -> Result<BigRational> {
    let k = degrees_of(g);
    if k.n < 2 {
        return Err(Error::RankTooSmall { family: "prefactor", rank: k.n as usize, min: 2 });
    }
    Ok(BigRational::new(factorial(k.n - 2) * pow(k.h, k.n - 1), k.order))
}

/// Total number of submaximal factorizations of `c` (one block of length 2):
/// `(n−1)!h^{n−1}/|W| · ((n−1)(n−2)/2·h + d₁ + ⋯ + d_{n−1})`.
pub fn submax_total_closed<D: DegreeData + ?Sized>(g: &D) -> Result<BigUint> {
    let k = degrees_of(g);
    if k.n < 2 {
        return Err(Error::RankTooSmall { family: "submaximal count", rank: k.n as usize, min: 2 });
    }
    let lead = BigRational::new(factorial(k.n - 1) * pow(k.h, k.n - 1), k.order.clone());
    let small: u64 = k.d[..k.d.len() - 1].iter().sum();
    let bracket = BigRational::new(BigInt::from((k.n - 1) * (k.n - 2) * k.h), BigInt::from(2)) + BigRational::from_integer(small.into());
    integral(lead * bracket, "submaximal total")
}

/// `deg D_LL = n(n−1)h`.
pub fn deg_discriminant<D: DegreeData + ?Sized>(g: &D) -> u64 {
    let k = degrees_of(g);
    k.n * (k.n - 1) * k.h
}

/// `deg J_LL = Σ_{i=2}^{n} i·h − Σ_{j<n} dⱼ`.
pub fn deg_jacobian<D: DegreeData + ?Sized>(g: &D) -> u64 {
    let k = degrees_of(g);
    let top: u64 = (2..=k.n).map(|i| i * k.h).sum();
    let small: u64 = k.d[..k.d.len() - 1].iter().sum();
    top - small
}

/// `∏ (dᵢ + p·h)/dᵢ`, the number of `p`-multichains in `NC`.
pub fn chapoton_rhs<D: DegreeData + ?Sized>(g: &D, p: u64) -> Result<BigUint> {
    let k = degrees_of(g);
    let value = k.d.iter().fold(BigRational::one(), |acc, &d| acc * BigRational::new((d + p * k.h).into(), d.into()));
    integral(value, &format!("Cat^({p})"))
}

/// One row of the embedded table, still symbolic in `n` and `e`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TableRow {
    pub label: String,
    pub family: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n_min: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n_eq: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub e_min: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub e_divisible_by: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub e_not_divisible_by: Option<u32>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub isodiscriminantal: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rank: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub degrees: Option<Vec<u32>>,
    pub prefactor: String,
    pub entries: Vec<[String; 2]>,
}

#[derive(Deserialize)]
struct TableFile {
    row: Vec<TableRow>,
}

/// The embedded table, parsed once.
pub fn table() -> &'static [TableRow] {
    static TABLE: OnceLock<Vec<TableRow>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let file: TableFile = toml::from_str(LL_TABLE).expect("shipped table parses");
        for row in &file.row {
            Expr::parse(&row.prefactor).expect("shipped prefactor parses");
            for [p, u] in &row.entries {
                Expr::parse(p).expect("shipped entry parses");
                Expr::parse(u).expect("shipped entry parses");
            }
        }
        file.row
    })
}

impl TableRow {
    /// Whether the row is parametrized by `n` and/or `e`.
    pub fn is_parametric(&self) -> bool {
        matches!(self.family.as_str(), "A" | "B" | "I2" | "GEEN")
    }

    pub fn applies(&self, family: &str, n: u32, e: u32) -> bool {
        self.family == family
            && self.n_min.is_none_or(|m| n >= m)
            && self.n_eq.is_none_or(|m| n == m)
            && self.e_min.is_none_or(|m| e >= m)
            && self.e_divisible_by.is_none_or(|k| e.is_multiple_of(k))
            && self.e_not_divisible_by.is_none_or(|k| !e.is_multiple_of(k))
    }

    /// Human-readable applicability condition.
    pub fn condition(&self) -> String {
        let mut parts = Vec::new();
        if let Some(m) = self.n_min {
            parts.push(format!("n >= {m}"));
        }
        if let Some(m) = self.n_eq {
            parts.push(format!("n = {m}"));
        }
        if let Some(m) = self.e_min {
            parts.push(format!("e >= {m}"));
        }
        if let Some(k) = self.e_divisible_by {
            parts.push(format!("{k} | e"));
        }
        if let Some(k) = self.e_not_divisible_by {
            parts.push(format!("{k} does not divide e"));
        }
        if parts.is_empty() {
            "always".to_string()
        } else {
            parts.join(", ")
        }
    }

    /// Degrees of the group the row describes at parameters `(n, e)`.
    pub fn degrees_at(&self, n: u32, e: u32) -> Result<Vec<u32>> {
        if let Some(d) = &self.degrees {
            return Ok(d.clone());
        }
        let spec = match self.family.as_str() {
            "A" => GroupSpec::a(n)?,
            "B" => GroupSpec::b(n)?,
            "I2" => GroupSpec::i2(e)?,
            "GEEN" if e == 2 => GroupSpec::d(n)?,
            "GEEN" => GroupSpec::geen(e, n)?,
            name => name.parse()?,
        };
        Ok(spec.degrees())
    }

    /// Substitutes `(n, e)` and drops entries with `u = 0`.
    pub fn instantiate(&self, n: u32, e: u32) -> Result<ExpectedRow> {
        let (ni, ei) = (i64::from(n), i64::from(e));
        let prefactor = Expr::parse(&self.prefactor)?.eval(ni, ei)?;
        let mut entries = Vec::new();
        for [p, u] in &self.entries {
            let u = Expr::parse(u)?.eval_u64(ni, ei)?;
            if u > 0 {
                entries.push((Expr::parse(p)?.eval_u64(ni, ei)?, u));
            }
        }
        Ok(ExpectedRow { label: self.label.clone(), condition: self.condition(), n, e, prefactor, entries })
    }

    /// Admissible `(n, e)` with `n, e ≤ bound`. Parameters a row does not use are 0.
    pub fn instances(&self, bound: u32) -> Vec<(u32, u32)> {
        let ns: Vec<u32> = match self.family.as_str() {
            "A" | "B" | "GEEN" => (1..=bound).collect(),
            "I2" => vec![2],
            _ => vec![self.rank.unwrap_or(0) as u32],
        };
        let es: Vec<u32> = match self.family.as_str() {
            "I2" | "GEEN" => (1..=bound).collect(),
            _ => vec![0],
        };
        let mut out = Vec::new();
        for &n in &ns {
            for &e in &es {
                if !self.is_parametric() || self.applies(&self.family, n, e) {
                    out.push((n, e));
                }
            }
        }
        out
    }
}

/// A table row with its parameters substituted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExpectedRow {
    pub label: String,
    pub condition: String,
    pub n: u32,
    pub e: u32,
    pub prefactor: BigRational,
    /// `(p, u)` pairs in table order.
    pub entries: Vec<(u64, u64)>,
}

impl ExpectedRow {
    /// Entries sorted, for multiset comparison.
    pub fn sorted_entries(&self) -> Vec<(u64, u64)> {
        let mut v = self.entries.clone();
        v.sort_unstable();
        v
    }
}

impl fmt::Display for ExpectedRow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} [{}]: prefactor {}, ", self.label, self.condition, self.prefactor)?;
        f.write_str(&format_entries(&self.entries))
    }
}

/// `[(2,6), (3,6)]`.
pub fn format_entries(entries: &[(u64, u64)]) -> String {
    let inner: Vec<String> = entries.iter().map(|(p, u)| format!("({p},{u})")).collect();
    format!("[{}]", inner.join(", "))
}

/// Table key `(family, n, e)` for a group, or why there is none.
fn table_key(spec: GroupSpec) -> Result<(&'static str, u32, u32)> {
    Ok(match spec {
        GroupSpec::A(n) => ("A", n, 0),
        GroupSpec::Gd1n { d: 2, n } => ("B", n, 0),
        GroupSpec::Gd1n { d, n } => {
            return Err(Error::NoTableRow(format!(
                "G({d},1,{n}) is listed only as isodiscriminantal to B{n}; that row is a proxy and is not compared"
            )))
        }
        // D3 is A3
        GroupSpec::Geen { e: 2, n: 3 } => ("A", 3, 0),
        GroupSpec::Geen { e, n } => ("GEEN", n, e),
        GroupSpec::I2(e) => ("I2", 2, e),
        GroupSpec::H3 => ("H3", 3, 0),
        GroupSpec::H4 => ("H4", 4, 0),
        GroupSpec::F4 => ("F4", 4, 0),
        GroupSpec::E6 => ("E6", 6, 0),
        GroupSpec::E7 => ("E7", 7, 0),
        GroupSpec::E8 => ("E8", 8, 0),
    })
}

/// The expected row for a group, with parameters substituted.
pub fn expected_ll_data(spec: GroupSpec) -> Result<ExpectedRow> {
    let (family, n, e) = table_key(spec)?;
    let row = table()
        .iter()
        .find(|r| r.applies(family, n, e))
        .ok_or_else(|| Error::NoTableRow(format!("{spec} has no row (reducible or rank below 2)")))?;
    row.instantiate(n, e)
}

/// Rows whose label or family matches `name`, ignoring case and spacing.
pub fn find_rows(name: &str) -> Vec<&'static TableRow> {
    let norm = |s: &str| s.chars().filter(|c| !c.is_whitespace() && *c != '_').collect::<String>().to_ascii_lowercase();
    let key = norm(name);
    table()
        .iter()
        .filter(|r| {
            let head = r.label.split(", ").next().unwrap_or_default();
            norm(&r.family) == key || norm(&r.label) == key || head.split(" = ").any(|part| norm(part) == key)
        })
        .collect()
}

#[derive(Serialize)]
struct ExportRecord<'a> {
    label: &'a str,
    family: &'a str,
    condition: String,
    #[serde(skip_serializing_if = "<[String]>::is_empty")]
    isodiscriminantal: &'a [String],
    #[serde(skip_serializing_if = "Option::is_none")]
    rank: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    degrees: Option<&'a [u32]>,
    prefactor: String,
    entries: &'a [[String; 2]],
}

/// The table as pretty JSON, one record per row. Constant prefactors are
/// written as reduced fractions, parametric ones as expressions.
pub fn export_table_json() -> String {
    let records: Vec<ExportRecord> = table()
        .iter()
        .map(|r| {
            let prefactor = match Expr::parse(&r.prefactor).and_then(|x| x.eval(0, 0)) {
                Ok(v) if !r.is_parametric() => v.to_string(),
                _ => r.prefactor.clone(),
            };
            ExportRecord {
                label: &r.label,
                family: &r.family,
                condition: r.condition(),
                isodiscriminantal: &r.isodiscriminantal,
                rank: r.rank,
                degrees: r.degrees.as_deref(),
                prefactor,
                entries: &r.entries,
            }
        })
        .collect();
    let mut s = serde_json::to_string_pretty(&records).expect("records serialize");
    s.push('\n');
    s
}

/// Multiplies a rational by an integer, requiring an integral result.
pub fn integral_product(q: &BigRational, k: u64) -> Result<BigUint> {
    integral(q * BigRational::from_integer(k.into()), "count")
}

/// `u` recovered from an exact count: `count·|W| / ((n−1)!·h^{n−1})`.
pub fn u_from_count<D: DegreeData + ?Sized>(g: &D, count: &BigUint) -> Result<u64> {
    let k = degrees_of(g);
    let v = BigRational::new(BigInt::from(count.clone()) * k.order, factorial(k.n - 1) * pow(k.h, k.n - 1));
    integral(v, "u")?.to_u64().ok_or_else(|| Error::NonIntegerResult("u out of range".into()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(s: &str) -> GroupSpec {
        s.parse().unwrap()
    }

    #[test]
    fn closed_form_examples() {
        assert_eq!(ll_number(&spec("A3")).unwrap(), BigUint::from(16u32));
        assert_eq!(ll_number(&spec("H4")).unwrap(), BigUint::from(1350u32));
        for e in 3..=12 {
            assert_eq!(ll_number(&GroupSpec::I2(e)).unwrap(), BigUint::from(e));
            assert_eq!(deg_jacobian(&GroupSpec::I2(e)), u64::from(2 * e - 2));
            assert_eq!(deg_discriminant(&GroupSpec::I2(e)), u64::from(2 * e));
        }
        assert_eq!(submax_total_closed(&spec("A3")).unwrap(), BigUint::from(12u32));
        assert_eq!(submax_total_closed(&spec("B3")).unwrap(), BigUint::from(18u32));
        assert_eq!(submax_total_closed(&spec("H3")).unwrap(), BigUint::from(30u32));
        assert_eq!((deg_jacobian(&spec("H3")), deg_discriminant(&spec("H3"))), (42, 60));
        assert_eq!((deg_jacobian(&spec("A3")), deg_discriminant(&spec("A3"))), (15, 24));
        assert_eq!(chapoton_rhs(&spec("A3"), 2).unwrap(), BigUint::from(55u32));
        assert_eq!(ll_number(&spec("E8")).unwrap().to_string(), "37968750");
    }

    #[test]
    fn lookup_examples() {
        let h3 = expected_ll_data(GroupSpec::H3).unwrap();
        assert_eq!(h3.prefactor, BigRational::new(5.into(), 6.into()));
        assert_eq!(h3.entries, vec![(2, 6), (3, 6), (5, 6)]);
        assert_eq!(expected_ll_data(GroupSpec::geen(4, 3).unwrap()).unwrap().entries, vec![(3, 12), (4, 3)]);
        let e6 = expected_ll_data(GroupSpec::E6).unwrap();
        assert_eq!(e6.prefactor, BigRational::new(576.into(), 5.into()));
        assert_eq!(e6.entries, vec![(2, 90), (3, 60)]);
        assert_eq!(expected_ll_data(spec("G(6,6,3)")).unwrap().entries, vec![(3, 6), (3, 6), (3, 6), (6, 3)]);
        assert_eq!(expected_ll_data(spec("G(4,4,4)")).unwrap().sorted_entries(), vec![(2, 8), (2, 8), (3, 32), (4, 4)]);
        assert_eq!(expected_ll_data(spec("D4")).unwrap().sorted_entries(), vec![(2, 4), (2, 4), (2, 4), (3, 16)]);
        assert_eq!(expected_ll_data(spec("B3")).unwrap().entries, vec![(2, 4), (3, 4), (4, 4)]);
        assert_eq!(expected_ll_data(spec("D3")).unwrap().entries, expected_ll_data(spec("A3")).unwrap().entries);
        assert_eq!(expected_ll_data(spec("B2")).unwrap().entries, expected_ll_data(spec("I2(4)")).unwrap().entries);
        assert!(matches!(expected_ll_data(spec("G(3,1,3)")), Err(Error::NoTableRow(_))));
        assert!(matches!(expected_ll_data(spec("A1")), Err(Error::NoTableRow(_))));
        assert!(matches!(expected_ll_data(spec("D2")), Err(Error::NoTableRow(_))));
    }

    #[test]
    fn every_instance_satisfies_the_degree_identities() {
        let mut checked = 0;
        for row in table() {
            for (n, e) in row.instances(12) {
                let d = row.degrees_at(n, e).unwrap();
                let inst = row.instantiate(n, e).unwrap();
                let sum_pu: u64 = inst.entries.iter().map(|(p, u)| p * u).sum();
                let sum_u: u64 = inst.entries.iter().map(|(_, u)| u).sum();
                assert_eq!(sum_pu, deg_discriminant(d.as_slice()), "{} at n={n}, e={e}", row.label);
                assert_eq!(sum_u, deg_discriminant(d.as_slice()) - deg_jacobian(d.as_slice()), "{} at n={n}, e={e}", row.label);
                assert_eq!(inst.prefactor, prefactor(d.as_slice()).unwrap(), "{} at n={n}, e={e}", row.label);
                let rank = d.len() as u64;
                for &(_, u) in &inst.entries {
                    integral_product(&inst.prefactor, (rank - 1) * u).unwrap();
                }
                checked += 1;
            }
        }
        assert!(checked > 100, "{checked}");
    }

    #[test]
    fn rows_do_not_overlap() {
        for (family, n, e) in [("GEEN", 3, 6), ("GEEN", 4, 2), ("GEEN", 4, 5), ("GEEN", 7, 3), ("A", 5, 0)] {
            assert_eq!(table().iter().filter(|r| r.applies(family, n, e)).count(), 1);
        }
        assert_eq!(find_rows("H3").len(), 1);
        assert_eq!(find_rows("G(e,e,4)").len(), 2);
        assert_eq!(find_rows("B_n").len(), 1);
        assert_eq!(find_rows("G34").len(), 1);
    }

    #[test]
    fn export_matches_shipped_file() {
        let shipped = include_str!("../../data/ll_table.json");
        assert_eq!(export_table_json(), shipped);
    }

    #[test]
    fn u_round_trip() {
        let f4 = spec("F4");
        assert_eq!(u_from_count(&f4, &BigUint::from(216u32)).unwrap(), 24);
        assert!(u_from_count(&f4, &BigUint::from(1u32)).is_err());
    }
}
