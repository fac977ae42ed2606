//! Exact sparse multivariate polynomials over ZZ, F_p and QQ with weighted
//! gradings.
//!
//! Coefficients are stored as [`BigRational`] in every domain. Over ZZ and
//! F_p the denominator is always one, and over F_p the numerator is kept in
//! `0..p`. All normalization goes through [`CoefficientDomain`].

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;
use smallvec::SmallVec;

use crate::error::{Error, Result};

pub type Coeff = BigRational;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum CoefficientDomain {
    Integers,
    PrimeField(u64),
    Rationals,
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl CoefficientDomain {
    pub fn prime_field(p: u64) -> Result<Self> {
        if is_prime(p) {
            Ok(CoefficientDomain::PrimeField(p))
        } else {
            Err(Error::NotPrime(p))
        }
    }

    pub fn is_field(&self) -> bool {
        !matches!(self, CoefficientDomain::Integers)
    }

    pub fn name(&self) -> String {
        match self {
            CoefficientDomain::Integers => "ZZ".into(),
            CoefficientDomain::Rationals => "QQ".into(),
            CoefficientDomain::PrimeField(p) => format!("F{p}"),
        }
    }

    /// Brings a coefficient into the domain's canonical representative.
    ///
    /// Non-integral values are only meaningful over QQ; over ZZ and F_p the
    /// caller must not hand in fractions.
    pub fn normalize(&self, c: Coeff) -> Coeff {
        match self {
            CoefficientDomain::PrimeField(p) => {
                debug_assert!(c.is_integer());
                let p = BigInt::from(*p);
                Coeff::from_integer(c.to_integer().mod_floor(&p))
            }
            _ => c,
        }
    }

    pub fn from_int(&self, n: impl Into<BigInt>) -> Coeff {
        self.normalize(Coeff::from_integer(n.into()))
    }

    pub fn add(&self, a: &Coeff, b: &Coeff) -> Coeff {
        self.normalize(a + b)
    }

    pub fn sub(&self, a: &Coeff, b: &Coeff) -> Coeff {
        self.normalize(a - b)
    }

    pub fn mul(&self, a: &Coeff, b: &Coeff) -> Coeff {
        self.normalize(a * b)
    }

    pub fn neg(&self, a: &Coeff) -> Coeff {
        self.normalize(-a)
    }

    /// Multiplicative inverse, when it exists in the domain.
    pub fn inverse(&self, a: &Coeff) -> Option<Coeff> {
        if a.is_zero() {
            return None;
        }
        match self {
            CoefficientDomain::Integers => {
                if a.is_one() || (-a).is_one() {
                    Some(a.clone())
                } else {
                    None
                }
            }
            CoefficientDomain::Rationals => Some(a.recip()),
            CoefficientDomain::PrimeField(p) => {
                let p = BigInt::from(*p);
                let ext = a.to_integer().extended_gcd(&p);
                debug_assert!(ext.gcd.is_one());
                Some(Coeff::from_integer(ext.x.mod_floor(&p)))
            }
        }
    }
}

impl fmt::Display for CoefficientDomain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Variable {
    pub name: String,
    pub degree: u32,
}

impl Variable {
    pub fn new(name: impl Into<String>, degree: u32) -> Self {
        Variable {
            name: name.into(),
            degree,
        }
    }
}

#[derive(Debug, PartialEq, Eq, Hash)]
struct RingData {
    variables: Vec<Variable>,
    weights: Vec<u32>,
    domain: CoefficientDomain,
}

/// A polynomial ring over a coefficient domain with positively weighted
/// variables. Cloning is cheap.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GradedRing(Arc<RingData>);

fn valid_identifier(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '.')
}

impl GradedRing {
    pub fn new(domain: CoefficientDomain, variables: Vec<Variable>) -> Result<Self> {
        let mut seen = BTreeSet::new();
        for v in &variables {
            if !valid_identifier(&v.name) {
                return Err(Error::InvalidVariable {
                    name: v.name.clone(),
                    reason: "not an ASCII identifier".into(),
                });
            }
            if v.degree == 0 {
                return Err(Error::InvalidVariable {
                    name: v.name.clone(),
                    reason: "degree must be at least 1".into(),
                });
            }
            if !seen.insert(v.name.as_str()) {
                return Err(Error::DuplicateVariable(v.name.clone()));
            }
        }
        let weights = variables.iter().map(|v| v.degree).collect();
        Ok(GradedRing(Arc::new(RingData {
            variables,
            weights,
            domain,
        })))
    }

    /// Shorthand for tests and catalog code: `&[("x", 1), ("y", 2)]`.
    pub fn with_vars(domain: CoefficientDomain, vars: &[(&str, u32)]) -> Result<Self> {
        GradedRing::new(
            domain,
            vars.iter().map(|(n, d)| Variable::new(*n, *d)).collect(),
        )
    }

    pub fn domain(&self) -> &CoefficientDomain {
        &self.0.domain
    }

    pub fn variables(&self) -> &[Variable] {
        &self.0.variables
    }

    pub fn weights(&self) -> &[u32] {
        &self.0.weights
    }

    pub fn nvars(&self) -> usize {
        self.0.variables.len()
    }

    pub fn index_of(&self, name: &str) -> Result<usize> {
        self.0
            .variables
            .iter()
            .position(|v| v.name == name)
            .ok_or_else(|| Error::UnknownVariable(name.to_string()))
    }

    pub fn var(&self, name: &str) -> Result<Polynomial> {
        let i = self.index_of(name)?;
        Ok(self.var_at(i))
    }

    pub fn var_at(&self, i: usize) -> Polynomial {
        Polynomial::monomial(self, Monomial::var(self.nvars(), i, 1), Coeff::one())
    }

    /// The same variables over another coefficient domain.
    pub fn with_domain(&self, domain: CoefficientDomain) -> GradedRing {
        GradedRing(Arc::new(RingData {
            variables: self.0.variables.clone(),
            weights: self.0.weights.clone(),
            domain,
        }))
    }

    pub fn zero(&self) -> Polynomial {
        Polynomial {
            ring: self.clone(),
            terms: Vec::new(),
        }
    }

    pub fn one(&self) -> Polynomial {
        self.constant(1)
    }

    pub fn constant(&self, n: impl Into<BigInt>) -> Polynomial {
        let c = self.domain().from_int(n);
        Polynomial::monomial(self, Monomial::one(self.nvars()), c)
    }

    /// All monomials of weighted degree `degree`, in descending DegRevLex order.
    pub fn monomials_of_degree(&self, degree: u32) -> Vec<Monomial> {
        let n = self.nvars();
        let mut out = Vec::new();
        let mut current = vec![0u32; n];
        fn rec(
            weights: &[u32],
            i: usize,
            remaining: u32,
            current: &mut Vec<u32>,
            out: &mut Vec<Monomial>,
        ) {
            if i == weights.len() {
                if remaining == 0 {
                    out.push(Monomial::from_exponents(current.iter().copied()));
                }
                return;
            }
            let w = weights[i];
            let mut e = 0;
            while e * w <= remaining {
                current[i] = e;
                rec(weights, i + 1, remaining - e * w, current, out);
                e += 1;
            }
            current[i] = 0;
        }
        rec(self.weights(), 0, degree, &mut current, &mut out);
        let weights = self.weights();
        out.sort_by(|a, b| MonomialOrder::DegRevLex.compare(weights, b, a));
        out
    }

    pub fn check_same(&self, other: &GradedRing) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::RingMismatch(format!("{self} vs {other}")))
        }
    }
}

impl fmt::Display for GradedRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} [", self.domain())?;
        for (i, v) in self.variables().iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{}:{}", v.name, v.degree)?;
        }
        f.write_str("]")
    }
}

/// Exponent vector, one slot per ring variable.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(SmallVec<[u32; 16]>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(SmallVec::from_elem(0, nvars))
    }

    pub fn var(nvars: usize, i: usize, e: u32) -> Self {
        let mut m = Monomial::one(nvars);
        m.0[i] = e;
        m
    }

    pub fn from_exponents(exps: impl IntoIterator<Item = u32>) -> Self {
        Monomial(exps.into_iter().collect())
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn degree(&self, weights: &[u32]) -> u32 {
        self.0.iter().zip(weights).map(|(e, w)| e * w).sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `self / divisor`, if `divisor` divides `self`.
    pub fn checked_div(&self, divisor: &Monomial) -> Option<Monomial> {
        if divisor.divides(self) {
            Some(Monomial(
                self.0.iter().zip(&divisor.0).map(|(a, b)| a - b).collect(),
            ))
        } else {
            None
        }
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| *a.max(b))
                .collect(),
        )
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| *a == 0 || *b == 0)
    }

    pub fn involves(&self, i: usize) -> bool {
        self.0[i] > 0
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum MonomialOrder {
    /// Weighted degree first, then reverse lexicographic.
    DegRevLex,
    Lex,
    /// Two-block order: the listed variables (by index) dominate; each block
    /// is compared by weighted DegRevLex.
    Elimination(Vec<usize>),
}

fn degrevlex_on(weights: &[u32], a: &[u32], b: &[u32], idx: impl DoubleEndedIterator<Item = usize> + Clone) -> Ordering {
    let da: u32 = idx.clone().map(|i| a[i] * weights[i]).sum();
    let db: u32 = idx.clone().map(|i| b[i] * weights[i]).sum();
    match da.cmp(&db) {
        Ordering::Equal => {}
        o => return o,
    }
    for i in idx.rev() {
        match a[i].cmp(&b[i]) {
            Ordering::Equal => continue,
            o => return o.reverse(),
        }
    }
    Ordering::Equal
}

impl MonomialOrder {
    pub fn elimination(block: impl IntoIterator<Item = usize>) -> Self {
        let mut v: Vec<usize> = block.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        MonomialOrder::Elimination(v)
    }

    pub fn compare(&self, weights: &[u32], a: &Monomial, b: &Monomial) -> Ordering {
        let (a, b) = (a.exponents(), b.exponents());
        match self {
            MonomialOrder::DegRevLex => degrevlex_on(weights, a, b, 0..a.len()),
            MonomialOrder::Lex => a.cmp(b),
            MonomialOrder::Elimination(block) => {
                match degrevlex_on(weights, a, b, block.iter().copied()) {
                    Ordering::Equal => {}
                    o => return o,
                }
                let rest = (0..a.len()).filter(|i| block.binary_search(i).is_err());
                degrevlex_on(weights, a, b, rest)
            }
        }
    }

    /// Checked comparison for monomials coming from user input.
    pub fn try_compare(&self, ring: &GradedRing, a: &Monomial, b: &Monomial) -> Result<Ordering> {
        if a.len() != ring.nvars() || b.len() != ring.nvars() {
            return Err(Error::RingMismatch(format!(
                "monomial lengths {} and {} in a ring with {} variables",
                a.len(),
                b.len(),
                ring.nvars()
            )));
        }
        if let MonomialOrder::Elimination(block) = self {
            if block.iter().any(|&i| i >= ring.nvars()) {
                return Err(Error::RingMismatch("elimination block out of range".into()));
            }
        }
        Ok(self.compare(ring.weights(), a, b))
    }
}

/// Degree bookkeeping for a polynomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeInfo {
    pub degrees: BTreeSet<u32>,
}

impl DegreeInfo {
    /// The zero polynomial counts as homogeneous.
    pub fn is_homogeneous(&self) -> bool {
        self.degrees.len() <= 1
    }

    pub fn degree(&self) -> Option<u32> {
        if self.degrees.len() == 1 {
            self.degrees.iter().next().copied()
        } else {
            None
        }
    }
}

/// Sparse polynomial; terms are kept in descending DegRevLex order with no
/// zero coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polynomial {
    ring: GradedRing,
    terms: Vec<(Monomial, Coeff)>,
}

impl Polynomial {
    pub fn monomial(ring: &GradedRing, m: Monomial, c: Coeff) -> Self {
        let c = ring.domain().normalize(c);
        let terms = if c.is_zero() { Vec::new() } else { vec![(m, c)] };
        Polynomial {
            ring: ring.clone(),
            terms,
        }
    }

    /// Builds a polynomial from arbitrary terms, combining duplicates.
    pub fn from_terms(ring: &GradedRing, terms: impl IntoIterator<Item = (Monomial, Coeff)>) -> Self {
        let weights = ring.weights();
        let mut v: Vec<(Monomial, Coeff)> = terms.into_iter().collect();
        v.sort_by(|a, b| MonomialOrder::DegRevLex.compare(weights, &b.0, &a.0));
        let domain = ring.domain();
        let mut out: Vec<(Monomial, Coeff)> = Vec::with_capacity(v.len());
        for (m, c) in v {
            match out.last_mut() {
                Some((lm, lc)) if *lm == m => *lc = domain.add(lc, &c),
                _ => out.push((m, domain.normalize(c))),
            }
        }
        out.retain(|(_, c)| !c.is_zero());
        Polynomial {
            ring: ring.clone(),
            terms: out,
        }
    }

    pub fn ring(&self) -> &GradedRing {
        &self.ring
    }

    pub fn terms(&self) -> &[(Monomial, Coeff)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_one())
    }

    pub fn weighted_degree(&self) -> DegreeInfo {
        let w = self.ring.weights();
        DegreeInfo {
            degrees: self.terms.iter().map(|(m, _)| m.degree(w)).collect(),
        }
    }

    /// Degree of a non-zero homogeneous polynomial.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        self.weighted_degree().degree()
    }

    pub fn homogeneous_component(&self, degree: u32) -> Polynomial {
        let w = self.ring.weights();
        Polynomial {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree(w) == degree)
                .cloned()
                .collect(),
        }
    }

    pub fn coefficient(&self, m: &Monomial) -> Coeff {
        self.terms
            .iter()
            .find(|(t, _)| t == m)
            .map(|(_, c)| c.clone())
            .unwrap_or_else(Coeff::zero)
    }

    pub fn involves(&self, i: usize) -> bool {
        self.terms.iter().any(|(m, _)| m.involves(i))
    }

    pub fn scale(&self, c: &Coeff) -> Polynomial {
        let d = self.ring.domain();
        Polynomial::from_terms(
            &self.ring,
            self.terms.iter().map(|(m, a)| (m.clone(), d.mul(a, c))),
        )
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Polynomial {
        // Multiplying by a monomial preserves the DegRevLex order.
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(t, c)| (t.mul(m), c.clone())).collect(),
        }
    }

    pub fn checked_add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.ring.check_same(&other.ring)?;
        Ok(self.merge(other, false))
    }

    pub fn checked_sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.ring.check_same(&other.ring)?;
        Ok(self.merge(other, true))
    }

    pub fn checked_mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.ring.check_same(&other.ring)?;
        let d = self.ring.domain();
        let mut terms = Vec::with_capacity(self.len() * other.len());
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                terms.push((a.mul(b), d.mul(x, y)));
            }
        }
        Ok(Polynomial::from_terms(&self.ring, terms))
    }

    pub fn pow(&self, mut e: u32) -> Polynomial {
        let mut base = self.clone();
        let mut acc = self.ring.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    fn merge(&self, other: &Polynomial, negate: bool) -> Polynomial {
        let d = self.ring.domain();
        let w = self.ring.weights();
        let mut out = Vec::with_capacity(self.len() + other.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() || j < other.terms.len() {
            let ord = match (self.terms.get(i), other.terms.get(j)) {
                (Some(a), Some(b)) => MonomialOrder::DegRevLex.compare(w, &a.0, &b.0),
                (Some(_), None) => Ordering::Greater,
                _ => Ordering::Less,
            };
            match ord {
                Ordering::Greater => {
                    out.push(self.terms[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    let (m, c) = &other.terms[j];
                    out.push((m.clone(), if negate { d.neg(c) } else { c.clone() }));
                    j += 1;
                }
                Ordering::Equal => {
                    let (m, a) = &self.terms[i];
                    let b = &other.terms[j].1;
                    let c = if negate { d.sub(a, b) } else { d.add(a, b) };
                    if !c.is_zero() {
                        out.push((m.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: out,
        }
    }

    /// Substitutes `images[i]` for the i-th variable. All images must live in
    /// one common ring, which becomes the ring of the result.
    pub fn substitute(&self, target: &GradedRing, images: &[Polynomial]) -> Result<Polynomial> {
        if images.len() != self.ring.nvars() {
            return Err(Error::Arity {
                expected: self.ring.nvars(),
                found: images.len(),
            });
        }
        for im in images {
            target.check_same(im.ring())?;
        }
        let mut powers: Vec<Vec<Polynomial>> = images.iter().map(|p| vec![target.one(), p.clone()]).collect();
        let mut acc = target.zero();
        for (m, c) in &self.terms {
            let mut t = Polynomial::monomial(target, Monomial::one(target.nvars()), target.domain().normalize(c.clone()));
            for (i, &e) in m.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while powers[i].len() <= e as usize {
                    let next = &powers[i][powers[i].len() - 1] * &images[i];
                    powers[i].push(next);
                }
                t = &t * &powers[i][e as usize];
                if t.is_zero() {
                    break;
                }
            }
            acc = &acc + &t;
        }
        Ok(acc)
    }

    /// Re-expresses the polynomial in another ring with the same number or
    /// more variables; `index_map[i]` is the target index of variable i.
    /// Coefficients are reinterpreted in the target domain (so ZZ to F_p
    /// reduces them).
    pub fn embed(&self, target: &GradedRing, index_map: &[usize]) -> Polynomial {
        let n = target.nvars();
        Polynomial::from_terms(
            target,
            self.terms.iter().map(|(m, c)| {
                let mut e = Monomial::one(n);
                for (i, &x) in m.exponents().iter().enumerate() {
                    e.0[index_map[i]] += x;
                }
                (e, c.clone())
            }),
        )
    }

    /// Same variables, different coefficient domain (e.g. reduction mod p).
    pub fn change_domain(&self, target: &GradedRing) -> Result<Polynomial> {
        if target.variables() != self.ring.variables() {
            return Err(Error::RingMismatch(format!("{} vs {}", self.ring, target)));
        }
        Ok(Polynomial::from_terms(target, self.terms.iter().cloned()))
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let vars = self.ring.variables();
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let negative = c.is_negative();
            let abs = c.abs();
            if k == 0 {
                if negative {
                    f.write_str("-")?;
                }
            } else if negative {
                f.write_str(" - ")?;
            } else {
                f.write_str(" + ")?;
            }
            let mut factors: Vec<String> = Vec::new();
            if !abs.is_one() || m.is_one() {
                factors.push(abs.to_string());
            }
            for (i, &e) in m.exponents().iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(vars[i].name.clone()),
                    _ => factors.push(format!("{}^{}", vars[i].name, e)),
                }
            }
            f.write_str(&factors.join("*"))?;
        }
        Ok(())
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.checked_add(rhs).expect("polynomials from different rings")
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self.checked_sub(rhs).expect("polynomials from different rings")
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.checked_mul(rhs).expect("polynomials from different rings")
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        let d = self.ring.domain();
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), d.neg(c))).collect(),
        }
    }
}

/// Small helper for coefficient display in reports.
pub fn coeff_to_i64(c: &Coeff) -> Option<i64> {
    if c.is_integer() {
        c.to_integer().to_i64()
    } else {
        None
    }
}
