//! Homotopy groups of wedges of spheres by Hilton's theorem.
//!
//! For a wedge of spheres `S^{d_1} v ... v S^{d_k}` (all `d_i >= 2`) the
//! basic products of the free Lie algebra on letters of weight `d_i - 1` are
//! indexed by Lyndon words, and
//!
//! ```text
//! pi_n(X) = sum over Lyndon words w of pi_n(S^{weight(w) + 1}).
//! ```
//!
//! Groups of spheres come from a [`SphereHomotopyTable`]; the bundled table
//! covers `n <= 10`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// A finitely generated abelian group written as a direct sum of copies of
/// `Z` and cyclic groups `Z/d`.
///
/// The summands are kept as given, so a group prints the way it was built
/// (`Z/15` stays `Z/15`). Equality compares primary decompositions, so
/// `Z/15 == Z/3 + Z/5`.
#[derive(Clone, Debug, Default)]
pub struct AbelianGroupExpr {
    free_rank: u64,
    cyclic: BTreeMap<u64, u64>,
}

impl AbelianGroupExpr {
    pub fn zero() -> Self {
        AbelianGroupExpr::default()
    }

    pub fn free(rank: u64) -> Self {
        AbelianGroupExpr {
            free_rank: rank,
            cyclic: BTreeMap::new(),
        }
    }

    /// `Z/d`; `Z/1` is the trivial group. Panics when `d == 0`.
    pub fn cyclic(d: u64) -> Self {
        assert!(d > 0, "Z/0 is not a torsion group");
        let mut g = AbelianGroupExpr::zero();
        if d > 1 {
            g.cyclic.insert(d, 1);
        }
        g
    }

    pub fn free_rank(&self) -> u64 {
        self.free_rank
    }

    /// Cyclic summands as (order, multiplicity), in increasing order.
    pub fn cyclic_summands(&self) -> impl Iterator<Item = (u64, u64)> + '_ {
        self.cyclic.iter().map(|(&d, &k)| (d, k))
    }

    pub fn is_zero(&self) -> bool {
        self.free_rank == 0 && self.cyclic.is_empty()
    }

    pub fn direct_sum(&self, other: &AbelianGroupExpr) -> AbelianGroupExpr {
        let mut out = self.clone();
        out.add_assign(other);
        out
    }

    pub fn add_assign(&mut self, other: &AbelianGroupExpr) {
        self.free_rank += other.free_rank;
        for (&d, &k) in &other.cyclic {
            *self.cyclic.entry(d).or_insert(0) += k;
        }
    }

    /// `k` copies of this group.
    pub fn times(&self, k: u64) -> AbelianGroupExpr {
        AbelianGroupExpr {
            free_rank: self.free_rank * k,
            cyclic: if k == 0 {
                BTreeMap::new()
            } else {
                self.cyclic.iter().map(|(&d, &m)| (d, m * k)).collect()
            },
        }
    }

    /// Multiplicities of the prime-power cyclic summands.
    pub fn primary_decomposition(&self) -> BTreeMap<u64, u64> {
        let mut out = BTreeMap::new();
        for (&d, &k) in &self.cyclic {
            for q in prime_power_factors(d) {
                *out.entry(q).or_insert(0) += k;
            }
        }
        out
    }
}

fn prime_power_factors(mut d: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= d {
        if d.is_multiple_of(p) {
            let mut q = 1;
            while d.is_multiple_of(p) {
                d /= p;
                q *= p;
            }
            out.push(q);
        }
        p += 1;
    }
    if d > 1 {
        out.push(d);
    }
    out
}

impl PartialEq for AbelianGroupExpr {
    fn eq(&self, other: &Self) -> bool {
        self.free_rank == other.free_rank
            && self.primary_decomposition() == other.primary_decomposition()
    }
}

impl Eq for AbelianGroupExpr {}

impl fmt::Display for AbelianGroupExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        for (&d, &k) in &self.cyclic {
            if k == 1 {
                parts.push(format!("Z/{d}"));
            } else {
                parts.push(format!("(Z/{d})^{k}"));
            }
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

impl FromStr for AbelianGroupExpr {
    type Err = Error;

    /// Parses `0` or a `+`-separated sum of `Z`, `Z^r`, `Z/d` and `(Z/d)^k`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = |what: &str| Error::Parse(format!("invalid group `{}`: {what}", s.trim()));
        let s = s.trim();
        if s == "0" {
            return Ok(AbelianGroupExpr::zero());
        }
        let number = |t: &str| -> Result<u64> {
            t.trim()
                .parse::<u64>()
                .map_err(|_| bad(&format!("`{}` is not a number", t.trim())))
        };
        let mut g = AbelianGroupExpr::zero();
        for term in s.split('+') {
            let term: String = term.chars().filter(|c| !c.is_whitespace()).collect();
            let (base, power) = match term.rsplit_once('^') {
                Some((b, e)) if b == "Z" || (b.starts_with('(') && b.ends_with(')')) => (b, number(e)?),
                Some(_) => return Err(bad("exponent on an unparenthesized cyclic group")),
                None => (term.as_str(), 1),
            };
            if power == 0 {
                return Err(bad("zero exponent"));
            }
            let base = base
                .strip_prefix('(')
                .and_then(|b| b.strip_suffix(')'))
                .unwrap_or(base);
            if base == "Z" {
                g.free_rank += power;
            } else if let Some(d) = base.strip_prefix("Z/") {
                let d = number(d)?;
                if d < 2 {
                    return Err(bad("cyclic order must be at least 2"));
                }
                *g.cyclic.entry(d).or_insert(0) += power;
            } else {
                return Err(bad(&format!("unexpected term `{term}`")));
            }
        }
        Ok(g)
    }
}

/// Table of `pi_n(S^m)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SphereHomotopyTable {
    entries: HashMap<(u32, u32), AbelianGroupExpr>,
}

const BUNDLED_TABLE: &str = include_str!("../data/sphere_table.txt");

impl SphereHomotopyTable {
    /// The bundled table: `2 <= m <= 11`, `n <= 10`.
    pub fn standard() -> Self {
        SphereHomotopyTable::parse(BUNDLED_TABLE).expect("bundled sphere table is valid")
    }

    /// Parses lines `pi n m = GROUP`. Blank lines and `#` comments are
    /// ignored; anything else is an error, as are duplicate entries and
    /// entries with `n < m` or `m < 1`.
    pub fn parse(text: &str) -> Result<Self> {
        let mut entries = HashMap::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let err = |msg: String| Error::Parse(format!("line {}: {msg}", i + 1));
            let (lhs, rhs) = line
                .split_once('=')
                .ok_or_else(|| err("expected `pi n m = GROUP`".into()))?;
            let words: Vec<&str> = lhs.split_whitespace().collect();
            let [kw, n, m] = words[..] else {
                return Err(err("expected `pi n m = GROUP`".into()));
            };
            if kw != "pi" {
                return Err(err(format!("unknown entry `{kw}`")));
            }
            let n: u32 = n.parse().map_err(|_| err(format!("`{n}` is not a degree")))?;
            let m: u32 = m.parse().map_err(|_| err(format!("`{m}` is not a dimension")))?;
            if m < 1 || n < m {
                return Err(err(format!("pi_{n}(S^{m}) is outside the stored range n >= m >= 1")));
            }
            let group: AbelianGroupExpr = rhs.parse().map_err(|e| err(format!("{e}")))?;
            if entries.insert((n, m), group).is_some() {
                return Err(err(format!("duplicate entry for pi_{n}(S^{m})")));
            }
        }
        Ok(SphereHomotopyTable { entries })
    }

    /// `pi_n(S^m)`; zero below the diagonal.
    pub fn get(&self, n: u32, m: u32) -> Result<AbelianGroupExpr> {
        if n < m {
            return Ok(AbelianGroupExpr::zero());
        }
        self.entries
            .get(&(n, m))
            .cloned()
            .ok_or(Error::TableRangeExceeded { n, m })
    }

    /// Adds entries from `other`, which must agree wherever both are defined.
    pub fn extend(&mut self, other: &SphereHomotopyTable) -> Result<()> {
        for (&(n, m), g) in &other.entries {
            match self.entries.get(&(n, m)) {
                Some(old) if old != g => {
                    return Err(Error::Parse(format!(
                        "conflicting entries for pi_{n}(S^{m}): {old} and {g}"
                    )))
                }
                Some(_) => {}
                None => {
                    self.entries.insert((n, m), g.clone());
                }
            }
        }
        Ok(())
    }
}

/// A word over letters `0..k`, with its total weight.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct LyndonWord {
    pub weight: u32,
    pub letters: Vec<usize>,
}

impl fmt::Display for LyndonWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &l in &self.letters {
            if l < 26 {
                write!(f, "{}", (b'a' + l as u8) as char)?;
            } else {
                write!(f, "[{l}]")?;
            }
        }
        Ok(())
    }
}

/// All Lyndon words over letters of the given positive weights with total
/// weight at most `max_weight`, sorted by weight and then lexicographically.
pub fn lyndon_basis(weights: &[u32], max_weight: u32) -> Vec<LyndonWord> {
    let k = weights.len();
    let Some(&min_w) = weights.iter().min() else {
        return Vec::new();
    };
    assert!(min_w >= 1, "letter weights must be positive");
    let max_len = (max_weight / min_w) as usize;
    let mut out = Vec::new();
    if max_len == 0 {
        return out;
    }
    // Duval's algorithm enumerates Lyndon words of length <= max_len in
    // lexicographic order.
    let mut w = vec![0usize];
    loop {
        let weight: u32 = w.iter().map(|&l| weights[l]).sum();
        if weight <= max_weight {
            out.push(LyndonWord {
                weight,
                letters: w.clone(),
            });
        }
        let period = w.len();
        while w.len() < max_len {
            w.push(w[w.len() - period]);
        }
        while w.last() == Some(&(k - 1)) {
            w.pop();
        }
        match w.last_mut() {
            Some(l) => *l += 1,
            None => break,
        }
    }
    out.sort();
    out
}

/// A wedge of simply connected spheres.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WedgeOfSpheres {
    dims: Vec<u32>,
}

impl WedgeOfSpheres {
    pub fn new(dims: Vec<u32>) -> Result<Self> {
        if dims.is_empty() {
            return Err(Error::InvalidWedge("no spheres given".into()));
        }
        if let Some(d) = dims.iter().find(|&&d| d < 2) {
            return Err(Error::InvalidWedge(format!(
                "S^{d} is not simply connected"
            )));
        }
        Ok(WedgeOfSpheres { dims })
    }

    pub fn dims(&self) -> &[u32] {
        &self.dims
    }
}

impl fmt::Display for WedgeOfSpheres {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.dims.iter().map(|d| format!("S^{d}")).collect();
        write!(f, "{}", parts.join(" v "))
    }
}

/// `pi_n` of a wedge of spheres.
pub fn wedge_homotopy(
    x: &WedgeOfSpheres,
    n: u32,
    table: &SphereHomotopyTable,
) -> Result<AbelianGroupExpr> {
    let weights: Vec<u32> = x.dims.iter().map(|d| d - 1).collect();
    let mut total = AbelianGroupExpr::zero();
    if n == 0 {
        return Ok(total);
    }
    let mut by_weight: BTreeMap<u32, u64> = BTreeMap::new();
    for w in lyndon_basis(&weights, n - 1) {
        *by_weight.entry(w.weight).or_insert(0) += 1;
    }
    for (weight, count) in by_weight {
        total.add_assign(&table.get(n, weight + 1)?.times(count));
    }
    Ok(total)
}

/// `pi_n(BO(2))`: `Z/2`, `Z`, then zero.
pub fn bo2_homotopy(n: u32) -> AbelianGroupExpr {
    match n {
        1 => AbelianGroupExpr::cyclic(2),
        2 => AbelianGroupExpr::free(1),
        _ => AbelianGroupExpr::zero(),
    }
}

/// `pi_n(B_com O(2)) = pi_n(S^2 v S^2 v S^3) + pi_n(BO(2))`.
pub fn bcom_o2_homotopy(n: u32, table: &SphereHomotopyTable) -> Result<AbelianGroupExpr> {
    let wedge = WedgeOfSpheres::new(vec![2, 2, 3])?;
    Ok(wedge_homotopy(&wedge, n, table)?.direct_sum(&bo2_homotopy(n)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(s: &str) -> AbelianGroupExpr {
        s.parse().unwrap()
    }

    fn brute_force_lyndon(weights: &[u32], max_weight: u32) -> Vec<LyndonWord> {
        let k = weights.len();
        let mut out = Vec::new();
        let mut frontier: Vec<Vec<usize>> = vec![vec![]];
        while let Some(w) = frontier.pop() {
            for l in 0..k {
                let mut v = w.clone();
                v.push(l);
                let weight: u32 = v.iter().map(|&x| weights[x]).sum();
                if weight > max_weight {
                    continue;
                }
                let is_lyndon = (1..v.len()).all(|r| {
                    let rot: Vec<usize> = v[r..].iter().chain(&v[..r]).copied().collect();
                    v < rot
                });
                if is_lyndon {
                    out.push(LyndonWord {
                        weight,
                        letters: v.clone(),
                    });
                }
                frontier.push(v);
            }
        }
        out.sort();
        out
    }

    fn mobius(n: u64) -> i64 {
        let mut n = n;
        let mut result = 1;
        let mut p = 2;
        while p * p <= n {
            if n.is_multiple_of(p) {
                n /= p;
                if n.is_multiple_of(p) {
                    return 0;
                }
                result = -result;
            }
            p += 1;
        }
        if n > 1 {
            result = -result;
        }
        result
    }

    fn necklace_count(k: u64, n: u64) -> u64 {
        let s: i64 = (1..=n)
            .filter(|d| n.is_multiple_of(*d))
            .map(|d| mobius(d) * (k as i64).pow((n / d) as u32))
            .sum();
        (s / n as i64) as u64
    }

    #[test]
    fn small_lyndon_bases() {
        let words: Vec<String> = lyndon_basis(&[1, 1, 2], 2).iter().map(|w| w.to_string()).collect();
        assert_eq!(words, ["a", "b", "ab", "c"]);
        let words: Vec<String> = lyndon_basis(&[1], 5).iter().map(|w| w.to_string()).collect();
        assert_eq!(words, ["a"]);
        let three: Vec<String> = lyndon_basis(&[1, 1, 2], 3)
            .iter()
            .filter(|w| w.weight == 3)
            .map(|w| w.to_string())
            .collect();
        assert_eq!(three, ["aab", "abb", "ac", "bc"]);
    }

    #[test]
    fn lyndon_matches_brute_force() {
        for weights in [vec![1, 1], vec![1, 1, 2], vec![1, 2, 3], vec![2, 3], vec![1, 1, 1]] {
            for max in 1..=6 {
                assert_eq!(lyndon_basis(&weights, max), brute_force_lyndon(&weights, max), "{weights:?} {max}");
            }
        }
    }

    #[test]
    fn lyndon_matches_necklace_formula() {
        for k in 1..=4usize {
            let words = lyndon_basis(&vec![1; k], 6);
            for n in 1..=6u32 {
                let count = words.iter().filter(|w| w.weight == n).count() as u64;
                assert_eq!(count, necklace_count(k as u64, n as u64), "k={k} n={n}");
            }
        }
    }

    #[test]
    fn group_parsing_and_printing() {
        assert_eq!(g("0"), AbelianGroupExpr::zero());
        assert_eq!(g("Z^4 + (Z/2)^4").to_string(), "Z^4 + (Z/2)^4");
        assert_eq!(g("Z/24 + Z/3").to_string(), "Z/3 + Z/24");
        assert_eq!(g("Z/15"), g("Z/3 + Z/5"));
        assert_ne!(g("Z/4"), g("(Z/2)^2"));
        assert_eq!(g("Z + Z").free_rank(), 2);
        for bad in ["", "Q", "Z/1", "Z/2^3", "Z^0", "Z/x", "Z + "] {
            assert!(bad.parse::<AbelianGroupExpr>().is_err(), "{bad}");
        }
    }

    #[test]
    fn table_parser_is_strict() {
        assert!(SphereHomotopyTable::parse("pi 3 2 = Z\n").is_ok());
        assert!(SphereHomotopyTable::parse("pi 3 2 = Z\npi 3 2 = Z\n").is_err());
        assert!(SphereHomotopyTable::parse("pi 2 3 = Z\n").is_err());
        assert!(SphereHomotopyTable::parse("sigma 3 2 = Z\n").is_err());
        assert!(SphereHomotopyTable::parse("pi 3 = Z\n").is_err());
        assert!(SphereHomotopyTable::parse("pi 3 2 = Q\n").is_err());
        let t = SphereHomotopyTable::standard();
        assert_eq!(t.get(3, 2).unwrap(), AbelianGroupExpr::free(1));
        assert!(t.get(5, 11).unwrap().is_zero());
        assert_eq!(t.get(11, 2), Err(Error::TableRangeExceeded { n: 11, m: 2 }));
    }

    #[test]
    fn diagonal_and_below() {
        let t = SphereHomotopyTable::standard();
        for m in 2..=10 {
            assert_eq!(t.get(m, m).unwrap(), AbelianGroupExpr::free(1));
            for n in 0..m {
                assert!(t.get(n, m).unwrap().is_zero());
            }
        }
    }

    #[test]
    fn wedge_examples() {
        let t = SphereHomotopyTable::standard();
        let x = WedgeOfSpheres::new(vec![2, 2, 3]).unwrap();
        assert_eq!(wedge_homotopy(&x, 3, &t).unwrap(), g("Z^4"));
        assert_eq!(wedge_homotopy(&x, 4, &t).unwrap(), g("Z^4 + (Z/2)^4"));
        let s2 = WedgeOfSpheres::new(vec![2]).unwrap();
        assert_eq!(wedge_homotopy(&s2, 2, &t).unwrap(), g("Z"));
        assert!(WedgeOfSpheres::new(vec![1, 2]).is_err());
        assert!(matches!(
            wedge_homotopy(&x, 11, &t),
            Err(Error::TableRangeExceeded { .. })
        ));
    }

    #[test]
    fn below_connectivity_is_zero() {
        let t = SphereHomotopyTable::standard();
        let x = WedgeOfSpheres::new(vec![4, 5, 7]).unwrap();
        for n in 0..4 {
            assert!(wedge_homotopy(&x, n, &t).unwrap().is_zero());
        }
    }

    #[test]
    fn bcom_o2_table() {
        let t = SphereHomotopyTable::standard();
        let expected = [
            "Z/2",
            "Z^3",
            "Z^4",
            "Z^4 + (Z/2)^4",
            "Z^7 + (Z/2)^8",
            "Z^16 + (Z/2)^11 + (Z/12)^4",
            "Z^34 + (Z/2)^27 + (Z/12)^4",
            "Z^68 + (Z/2)^58 + (Z/24)^7",
            "Z^140 + (Z/2)^113 + (Z/3)^4 + (Z/24)^16",
            "Z^308 + (Z/2)^215 + (Z/3)^4 + (Z/15)^4 + (Z/24)^34",
        ];
        for (i, e) in expected.iter().enumerate() {
            let got = bcom_o2_homotopy(i as u32 + 1, &t).unwrap();
            assert_eq!(got, g(e), "n = {}", i + 1);
            assert_eq!(got.to_string(), *e);
        }
    }

    #[test]
    fn larger_table_keeps_answers() {
        let base = SphereHomotopyTable::standard();
        let mut bigger = base.clone();
        bigger
            .extend(&SphereHomotopyTable::parse("pi 11 11 = Z\npi 11 10 = Z/2\n").unwrap())
            .unwrap();
        let x = WedgeOfSpheres::new(vec![2, 3]).unwrap();
        for n in 1..=10 {
            assert_eq!(wedge_homotopy(&x, n, &base).unwrap(), wedge_homotopy(&x, n, &bigger).unwrap());
        }
        assert!(bigger.extend(&SphereHomotopyTable::parse("pi 3 2 = Z/2\n").unwrap()).is_err());
    }
}
