//! Simple reflections of the exceptional real groups, read from the shipped
//! Cartan matrices in `data/exceptional.toml`.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use serde::Deserialize;

use super::element::Element;
use crate::error::{Error, Result};

pub const ROOT_DATA: &str = include_str!("../../data/exceptional.toml");

#[derive(Debug, Clone, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Field {
    Integer,
    Golden,
}

#[derive(Debug, Clone, Deserialize)]
pub struct RootData {
    pub field: Field,
    pub shephard_todd: u32,
    pub degrees: Vec<u32>,
    pub cartan: Vec<Vec<String>>,
}

fn all_root_data() -> &'static BTreeMap<String, RootData> {
    static DATA: OnceLock<BTreeMap<String, RootData>> = OnceLock::new();
    DATA.get_or_init(|| toml::from_str(ROOT_DATA).expect("shipped root data parses"))
}

pub fn root_data(name: &str) -> Result<&'static RootData> {
    all_root_data()
        .get(name)
        .ok_or_else(|| Error::UnsupportedGroup(name.to_string()))
}

/// Parses `a`, `bphi`, `a+bphi`, `-phi` and similar into `(a, b)`.
fn parse_entry(s: &str) -> Result<(i64, i64)> {
    let bad = || Error::Parse(format!("bad Cartan entry {s:?}"));
    let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let Some(stem) = t.strip_suffix("phi") else {
        return t.parse().map(|a| (a, 0)).map_err(|_| bad());
    };
    // split the stem into the rational part and the phi coefficient
    let split = stem
        .char_indices()
        .skip(1)
        .filter(|&(_, c)| c == '+' || c == '-')
        .map(|(i, _)| i)
        .last();
    let (a_str, b_str) = match split {
        Some(i) => (&stem[..i], &stem[i..]),
        None => ("0", stem),
    };
    let a: i64 = a_str.parse().map_err(|_| bad())?;
    let b: i64 = match b_str {
        "" | "+" => 1,
        "-" => -1,
        other => other.parse().map_err(|_| bad())?,
    };
    Ok((a, b))
}

/// Simple reflections as matrices acting on the root lattice.
pub fn simple_reflections(name: &str) -> Result<Vec<Element>> {
    let data = root_data(name)?;
    let n = data.cartan.len();
    let cartan: Vec<Vec<(i64, i64)>> = data
        .cartan
        .iter()
        .map(|row| row.iter().map(|s| parse_entry(s)).collect::<Result<_>>())
        .collect::<Result<_>>()?;
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        // row i of s_i is δ_ij − A_ij; other rows are the identity
        let entry = |r: usize, c: usize| -> (i64, i64) {
            let id = i64::from(r == c);
            if r == i {
                (id - cartan[i][c].0, -cartan[i][c].1)
            } else {
                (id, 0)
            }
        };
        let elem = match data.field {
            Field::Integer => Element::Integer {
                dim: n as u8,
                entries: (0..n * n)
                    .map(|k| {
                        let (a, b) = entry(k / n, k % n);
                        assert_eq!(b, 0, "golden entry in an integer Cartan matrix");
                        a as i8
                    })
                    .collect(),
            },
            Field::Golden => Element::Golden {
                dim: n as u8,
                entries: (0..n * n)
                    .map(|k| {
                        let (a, b) = entry(k / n, k % n);
                        [a as i8, b as i8]
                    })
                    .collect(),
            },
        };
        out.push(elem);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn entry_grammar() {
        assert_eq!(parse_entry("2").unwrap(), (2, 0));
        assert_eq!(parse_entry("-1").unwrap(), (-1, 0));
        assert_eq!(parse_entry("-phi").unwrap(), (0, -1));
        assert_eq!(parse_entry("phi").unwrap(), (0, 1));
        assert_eq!(parse_entry("1+2phi").unwrap(), (1, 2));
        assert_eq!(parse_entry("-1-phi").unwrap(), (-1, -1));
        assert!(parse_entry("x").is_err());
    }

    #[test]
    fn simple_reflections_are_involutions() {
        for name in ["H3", "H4", "F4", "E6", "E7", "E8"] {
            let refl = simple_reflections(name).unwrap();
            assert_eq!(refl.len(), root_data(name).unwrap().degrees.len());
            for s in &refl {
                assert_eq!(s.order(), 2, "{name}");
                assert_eq!(s.fixed_space_codim(), 1, "{name}");
            }
        }
    }

    #[test]
    fn braid_orders_match_the_diagram() {
        // H3: m(s1,s2) = 5, m(s2,s3) = 3, m(s1,s3) = 2
        let s = simple_reflections("H3").unwrap();
        assert_eq!(s[0].compose(&s[1]).order(), 5);
        assert_eq!(s[1].compose(&s[2]).order(), 3);
        assert_eq!(s[0].compose(&s[2]).order(), 2);
        // F4: double bond between 2 and 3
        let f = simple_reflections("F4").unwrap();
        assert_eq!(f[1].compose(&f[2]).order(), 4);
    }
}
