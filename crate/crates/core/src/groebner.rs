//! Gröbner bases: Buchberger over fields and strong Gröbner bases over ZZ.
//!
//! Over ZZ a basis is *strong*: for every `c*m` in the leading-term ideal some
//! element has `lm | m` and `lc | c`. The reduced strong basis (positive
//! leading coefficients, no element's leading term strongly divisible by
//! another's, tails fully reduced with Euclidean coefficient reduction) is
//! unique for a fixed order, so bases can be compared directly.
//!
//! Internally polynomials are kept sorted by the requested order; they are
//! converted back to the ring's canonical form on the way out.

use std::cmp::Ordering;
use std::fmt::Debug;
use std::sync::Arc;
use std::time::Instant;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::ring::{Coeff, CoefficientDomain, GradedRing, Monomial, MonomialOrder, Polynomial};

/// A finitely generated ideal of a polynomial ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ideal {
    ring: GradedRing,
    generators: Vec<Polynomial>,
}

impl Ideal {
    pub fn new(ring: &GradedRing, generators: Vec<Polynomial>) -> Result<Self> {
        for g in &generators {
            ring.check_same(g.ring())?;
        }
        Ok(Ideal {
            ring: ring.clone(),
            generators: generators.into_iter().filter(|g| !g.is_zero()).collect(),
        })
    }

    pub fn zero(ring: &GradedRing) -> Self {
        Ideal {
            ring: ring.clone(),
            generators: Vec::new(),
        }
    }

    pub fn ring(&self) -> &GradedRing {
        &self.ring
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    pub fn is_zero(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn sum(&self, other: &Ideal) -> Result<Ideal> {
        self.ring.check_same(&other.ring)?;
        let mut gens = self.generators.clone();
        gens.extend(other.generators.iter().cloned());
        Ideal::new(&self.ring, gens)
    }

    /// Returns the first generator that is not homogeneous, if any.
    pub fn first_inhomogeneous(&self) -> Option<&Polynomial> {
        self.generators
            .iter()
            .find(|g| !g.weighted_degree().is_homogeneous())
    }
}

#[derive(Clone, Debug, Default)]
pub struct GroebnerOptions {
    /// Cooperative deadline; exceeding it yields [`Error::Timeout`].
    pub deadline: Option<Instant>,
}

impl GroebnerOptions {
    pub fn with_deadline(deadline: Option<Instant>) -> Self {
        GroebnerOptions { deadline }
    }

    fn check(&self) -> Result<()> {
        match self.deadline {
            Some(d) if Instant::now() >= d => Err(Error::Timeout),
            _ => Ok(()),
        }
    }
}

// ---------------------------------------------------------------------------
// Monomial comparison with precomputed blocks

#[derive(Clone, Debug)]
enum Cmp {
    Blocks { weights: Vec<u32>, blocks: Vec<Vec<usize>> },
    Lex,
}

impl Cmp {
    fn new(order: &MonomialOrder, ring: &GradedRing) -> Self {
        let n = ring.nvars();
        let weights = ring.weights().to_vec();
        match order {
            MonomialOrder::Lex => Cmp::Lex,
            MonomialOrder::DegRevLex => Cmp::Blocks {
                weights,
                blocks: vec![(0..n).collect()],
            },
            MonomialOrder::Elimination(block) => {
                let rest = (0..n).filter(|i| !block.contains(i)).collect();
                Cmp::Blocks {
                    weights,
                    blocks: vec![block.clone(), rest],
                }
            }
        }
    }

    fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        let (a, b) = (a.exponents(), b.exponents());
        match self {
            Cmp::Lex => a.cmp(b),
            Cmp::Blocks { weights, blocks } => {
                for block in blocks {
                    let mut da = 0u32;
                    let mut db = 0u32;
                    for &i in block {
                        da += a[i] * weights[i];
                        db += b[i] * weights[i];
                    }
                    if da != db {
                        return da.cmp(&db);
                    }
                    for &i in block.iter().rev() {
                        if a[i] != b[i] {
                            return b[i].cmp(&a[i]);
                        }
                    }
                }
                Ordering::Equal
            }
        }
    }
}

fn support_mask(m: &Monomial) -> u64 {
    let mut mask = 0u64;
    for (i, &e) in m.exponents().iter().enumerate() {
        if e > 0 {
            mask |= 1 << (i % 64);
        }
    }
    mask
}

// ---------------------------------------------------------------------------
// Coefficient arithmetic

trait Arith: Clone + Debug + Send + Sync {
    type C: Clone + PartialEq + Debug + Send + Sync;
    fn is_zero(&self, a: &Self::C) -> bool;
    fn add(&self, a: &Self::C, b: &Self::C) -> Self::C;
    fn mul(&self, a: &Self::C, b: &Self::C) -> Self::C;
    fn neg(&self, a: &Self::C) -> Self::C;
    fn import_coeff(&self, c: &Coeff) -> Self::C;
    fn export_coeff(&self, c: &Self::C) -> Coeff;
}

trait FieldArith: Arith {
    fn inv(&self, a: &Self::C) -> Self::C;
    fn one(&self) -> Self::C;
}

#[derive(Clone, Debug)]
struct Zz;

impl Arith for Zz {
    type C = BigInt;
    fn is_zero(&self, a: &BigInt) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a + b
    }
    fn mul(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a * b
    }
    fn neg(&self, a: &BigInt) -> BigInt {
        -a
    }
    fn import_coeff(&self, c: &Coeff) -> BigInt {
        debug_assert!(c.is_integer());
        c.to_integer()
    }
    fn export_coeff(&self, c: &BigInt) -> Coeff {
        Coeff::from_integer(c.clone())
    }
}

#[derive(Clone, Debug)]
struct Fp(u64);

impl Arith for Fp {
    type C = u64;
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 + *b as u128) % self.0 as u128) as u64
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 * *b as u128) % self.0 as u128) as u64
    }
    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.0 - a
        }
    }
    fn import_coeff(&self, c: &Coeff) -> u64 {
        let p = BigInt::from(self.0);
        c.to_integer().mod_floor(&p).to_u64().expect("reduced residue fits in u64")
    }
    fn export_coeff(&self, c: &u64) -> Coeff {
        Coeff::from_integer(BigInt::from(*c))
    }
}

impl FieldArith for Fp {
    fn inv(&self, a: &u64) -> u64 {
        let ext = BigInt::from(*a).extended_gcd(&BigInt::from(self.0));
        ext.x
            .mod_floor(&BigInt::from(self.0))
            .to_u64()
            .expect("residue fits in u64")
    }
    fn one(&self) -> u64 {
        1 % self.0
    }
}

#[derive(Clone, Debug)]
struct Qq;

impl Arith for Qq {
    type C = BigRational;
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn import_coeff(&self, c: &Coeff) -> BigRational {
        c.clone()
    }
    fn export_coeff(&self, c: &BigRational) -> Coeff {
        c.clone()
    }
}

impl FieldArith for Qq {
    fn inv(&self, a: &BigRational) -> BigRational {
        a.recip()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
}

// ---------------------------------------------------------------------------
// Internal polynomials, sorted descending by a `Cmp`

type Terms<C> = Vec<(Monomial, C)>;

fn to_internal<A: Arith>(a: &A, cmp: &Cmp, p: &Polynomial) -> Terms<A::C> {
    let mut t: Terms<A::C> = p
        .terms()
        .iter()
        .map(|(m, c)| (m.clone(), a.import_coeff(c)))
        .filter(|(_, c)| !a.is_zero(c))
        .collect();
    t.sort_by(|x, y| cmp.cmp(&y.0, &x.0));
    t
}

fn to_polynomial<A: Arith>(a: &A, ring: &GradedRing, t: &Terms<A::C>) -> Polynomial {
    Polynomial::from_terms(ring, t.iter().map(|(m, c)| (m.clone(), a.export_coeff(c))))
}

/// `f + c*m*g`, merging in order.
fn add_scaled<A: Arith>(a: &A, cmp: &Cmp, f: Terms<A::C>, c: &A::C, m: &Monomial, g: &[(Monomial, A::C)]) -> Terms<A::C> {
    let mut out = Vec::with_capacity(f.len() + g.len());
    let mut fi = f.into_iter().peekable();
    let mut gi = g.iter().map(|(gm, gc)| (gm.mul(m), a.mul(c, gc))).peekable();
    loop {
        let ord = match (fi.peek(), gi.peek()) {
            (Some(x), Some(y)) => cmp.cmp(&x.0, &y.0),
            (Some(_), None) => Ordering::Greater,
            (None, Some(_)) => Ordering::Less,
            (None, None) => break,
        };
        match ord {
            Ordering::Greater => out.push(fi.next().unwrap()),
            Ordering::Less => {
                let t = gi.next().unwrap();
                if !a.is_zero(&t.1) {
                    out.push(t);
                }
            }
            Ordering::Equal => {
                let (m, x) = fi.next().unwrap();
                let (_, y) = gi.next().unwrap();
                let s = a.add(&x, &y);
                if !a.is_zero(&s) {
                    out.push((m, s));
                }
            }
        }
    }
    out
}

/// Replaces the suffix starting at `i` by `suffix + c*m*g`.
fn add_scaled_from<A: Arith>(a: &A, cmp: &Cmp, p: &mut Terms<A::C>, i: usize, c: &A::C, m: &Monomial, g: &[(Monomial, A::C)]) {
    let tail = p.split_off(i);
    let merged = add_scaled(a, cmp, tail, c, m, g);
    p.extend(merged);
}

fn scale_terms<A: Arith>(a: &A, t: &[(Monomial, A::C)], c: &A::C, m: &Monomial) -> Terms<A::C> {
    if a.is_zero(c) {
        return Terms::new();
    }
    t.iter().map(|(x, y)| (x.mul(m), a.mul(c, y))).collect()
}

#[derive(Clone, Debug)]
struct Elem<C> {
    terms: Terms<C>,
    lm: Monomial,
    mask: u64,
}

impl<C: Clone> Elem<C> {
    fn new(terms: Terms<C>) -> Self {
        let lm = terms[0].0.clone();
        let mask = support_mask(&lm);
        Elem { terms, lm, mask }
    }

    fn lc(&self) -> &C {
        &self.terms[0].1
    }

    fn divides(&self, m: &Monomial, mask: u64) -> bool {
        self.mask & !mask == 0 && self.lm.divides(m)
    }
}

const DEADLINE_STRIDE: usize = 512;

// ---------------------------------------------------------------------------
// Reduction

/// Field reduction. With `full` every term is reduced; otherwise only until
/// the leading term is irreducible. Basis elements must be monic.
fn field_reduce<A: FieldArith>(a: &A, cmp: &Cmp, mut p: Terms<A::C>, basis: &[&Elem<A::C>], full: bool, opts: &GroebnerOptions) -> Result<Terms<A::C>> {
    let mut i = 0;
    let mut steps = 0usize;
    while i < p.len() {
        steps += 1;
        if steps.is_multiple_of(DEADLINE_STRIDE) {
            opts.check()?;
        }
        let m = p[i].0.clone();
        let mask = support_mask(&m);
        match basis.iter().find(|g| g.divides(&m, mask)) {
            Some(g) => {
                let q = m.checked_div(&g.lm).expect("divisor");
                let c = a.neg(&p[i].1);
                add_scaled_from(a, cmp, &mut p, i, &c, &q, &g.terms);
            }
            None => {
                if !full {
                    break;
                }
                i += 1;
            }
        }
    }
    Ok(p)
}

/// Euclidean reduction over ZZ. A term `c*m` is reduced by the divisor of `m`
/// with the smallest leading coefficient `d`, replacing `c` by `c mod d`.
fn int_reduce(cmp: &Cmp, mut p: Terms<BigInt>, basis: &[&Elem<BigInt>], full: bool, opts: &GroebnerOptions) -> Result<Terms<BigInt>> {
    let mut i = 0;
    let mut steps = 0usize;
    while i < p.len() {
        steps += 1;
        if steps.is_multiple_of(DEADLINE_STRIDE) {
            opts.check()?;
        }
        let m = p[i].0.clone();
        let mask = support_mask(&m);
        let mut best: Option<&Elem<BigInt>> = None;
        for g in basis {
            if g.divides(&m, mask) && best.is_none_or(|b| g.lc() < b.lc()) {
                best = Some(g);
            }
        }
        let mut advanced = false;
        if let Some(g) = best {
            let q = p[i].1.div_floor(g.lc());
            if !q.is_zero() {
                let shift = m.checked_div(&g.lm).expect("divisor");
                add_scaled_from(&Zz, cmp, &mut p, i, &-q, &shift, &g.terms);
                if p.get(i).is_none_or(|t| t.0 != m) {
                    advanced = true;
                }
            }
        }
        if !advanced {
            // The term at i is now irreducible.
            if !full {
                break;
            }
            i += 1;
        }
    }
    Ok(p)
}

// ---------------------------------------------------------------------------
// Buchberger over a field, with the Gebauer-Möller update

#[derive(Clone, Debug)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
    degree: u32,
}

fn select_pair(pairs: &mut Vec<Pair>) -> Pair {
    let mut best = 0;
    for k in 1..pairs.len() {
        let (p, q) = (&pairs[k], &pairs[best]);
        if (p.degree, p.i.max(p.j), p.i.min(p.j)) < (q.degree, q.i.max(q.j), q.i.min(q.j)) {
            best = k;
        }
    }
    pairs.swap_remove(best)
}

fn make_pair(weights: &[u32], store_lm: &[Monomial], i: usize, j: usize) -> Pair {
    let lcm = store_lm[i].lcm(&store_lm[j]);
    Pair {
        i,
        j,
        degree: lcm.degree(weights),
        lcm,
    }
}

fn field_buchberger<A: FieldArith>(a: &A, cmp: &Cmp, weights: &[u32], input: Vec<Terms<A::C>>, opts: &GroebnerOptions) -> Result<Vec<Terms<A::C>>> {
    let mut store: Vec<Elem<A::C>> = Vec::new();
    let mut store_lm: Vec<Monomial> = Vec::new();
    let mut active: Vec<usize> = Vec::new();
    let mut pairs: Vec<Pair> = Vec::new();

    let make_monic = |t: Terms<A::C>| -> Terms<A::C> {
        let inv = a.inv(&t[0].1);
        t.into_iter().map(|(m, c)| (m, a.mul(&c, &inv))).collect()
    };

    let insert = |h: Terms<A::C>, store: &mut Vec<Elem<A::C>>, store_lm: &mut Vec<Monomial>, active: &mut Vec<usize>, pairs: &mut Vec<Pair>| {
        let h = make_monic(h);
        let hi = store.len();
        store.push(Elem::new(h));
        store_lm.push(store[hi].lm.clone());
        let hlm = store_lm[hi].clone();

        // Gebauer-Möller: new pairs.
        let candidates: Vec<Pair> = active.iter().map(|&g| make_pair(weights, store_lm, hi, g)).collect();
        let mut kept: Vec<Pair> = Vec::new();
        for (k, p) in candidates.iter().enumerate() {
            let coprime = hlm.is_coprime(&store_lm[p.j]);
            let dominated_later = candidates[k + 1..].iter().any(|q| q.lcm.divides(&p.lcm));
            let dominated_kept = kept.iter().any(|q| q.lcm.divides(&p.lcm));
            if coprime || (!dominated_later && !dominated_kept) {
                kept.push(p.clone());
            }
        }
        kept.retain(|p| !hlm.is_coprime(&store_lm[p.j]));

        // Gebauer-Möller: prune old pairs.
        pairs.retain(|p| {
            !(hlm.divides(&p.lcm)
                && hlm.lcm(&store_lm[p.i]) != p.lcm
                && hlm.lcm(&store_lm[p.j]) != p.lcm)
        });
        pairs.extend(kept);

        active.retain(|&g| !hlm.divides(&store_lm[g]));
        active.push(hi);
    };

    let mut sorted_input = input;
    sorted_input.sort_by(|x, y| cmp.cmp(&x[0].0, &y[0].0));
    for f in sorted_input {
        opts.check()?;
        let basis: Vec<&Elem<A::C>> = active.iter().map(|&k| &store[k]).collect();
        let h = field_reduce(a, cmp, f, &basis, false, opts)?;
        if !h.is_empty() {
            insert(h, &mut store, &mut store_lm, &mut active, &mut pairs);
        }
    }

    while !pairs.is_empty() {
        opts.check()?;
        let p = select_pair(&mut pairs);
        let (fi, fj) = (&store[p.i], &store[p.j]);
        let ui = p.lcm.checked_div(&fi.lm).unwrap();
        let uj = p.lcm.checked_div(&fj.lm).unwrap();
        let s = scale_terms(a, &fi.terms, &a.one(), &ui);
        let s = add_scaled(a, cmp, s, &a.neg(&a.one()), &uj, &fj.terms);
        let basis: Vec<&Elem<A::C>> = active.iter().map(|&k| &store[k]).collect();
        let h = field_reduce(a, cmp, s, &basis, false, opts)?;
        if !h.is_empty() {
            insert(h, &mut store, &mut store_lm, &mut active, &mut pairs);
        }
    }

    // Minimal: active elements already have pairwise non-dividing leading
    // monomials. Reduce tails and sort.
    let elems: Vec<Elem<A::C>> = active.iter().map(|&k| store[k].clone()).collect();
    let mut out = Vec::with_capacity(elems.len());
    for (k, e) in elems.iter().enumerate() {
        let others: Vec<&Elem<A::C>> = elems.iter().enumerate().filter(|(l, _)| *l != k).map(|(_, e)| e).collect();
        let mut t = e.terms.clone();
        let head = t.remove(0);
        let tail = field_reduce(a, cmp, t, &others, true, opts)?;
        let mut full = vec![head];
        full.extend(tail);
        out.push(full);
    }
    out.sort_by(|x, y| cmp.cmp(&y[0].0, &x[0].0));
    Ok(out)
}

// ---------------------------------------------------------------------------
// Strong Buchberger over ZZ

fn normalize_sign(mut t: Terms<BigInt>) -> Terms<BigInt> {
    if t[0].1.is_negative() {
        for (_, c) in t.iter_mut() {
            *c = -&*c;
        }
    }
    t
}

fn strongly_divides(g: &Elem<BigInt>, h: &Elem<BigInt>) -> bool {
    g.lm.divides(&h.lm) && h.lc().is_multiple_of(g.lc())
}

/// Working state of the strong Buchberger algorithm over ZZ.
struct IntState<'a> {
    cmp: &'a Cmp,
    weights: &'a [u32],
    store: Vec<Elem<BigInt>>,
    store_lm: Vec<Monomial>,
    alive: Vec<bool>,
    pairs: Vec<Pair>,
}

impl IntState<'_> {
    /// Fully reduces each pending polynomial against the live basis and
    /// inserts it. Live elements that the new one strongly divides are retired
    /// and their remainders queued, which keeps coefficients small.
    fn absorb(&mut self, mut pending: Vec<Terms<BigInt>>, opts: &GroebnerOptions) -> Result<()> {
        while let Some(f) = pending.pop() {
            let basis: Vec<&Elem<BigInt>> =
                self.store.iter().zip(&self.alive).filter(|(_, &a)| a).map(|(e, _)| e).collect();
            let h = int_reduce(self.cmp, f, &basis, true, opts)?;
            if h.is_empty() {
                continue;
            }
            let h = Elem::new(normalize_sign(h));
            let hi = self.store.len();
            for (g, alive) in self.alive.iter_mut().enumerate() {
                if *alive && strongly_divides(&h, &self.store[g]) {
                    *alive = false;
                    pending.push(self.store[g].terms.clone());
                }
            }
            self.store_lm.push(h.lm.clone());
            self.store.push(h);
            self.alive.push(true);
            for g in 0..hi {
                if self.alive[g] {
                    self.pairs.push(make_pair(self.weights, &self.store_lm, g, hi));
                }
            }
        }
        Ok(())
    }
}

fn int_buchberger(cmp: &Cmp, weights: &[u32], input: Vec<Terms<BigInt>>, opts: &GroebnerOptions) -> Result<Vec<Terms<BigInt>>> {
    let mut st = IntState {
        cmp,
        weights,
        store: Vec::new(),
        store_lm: Vec::new(),
        alive: Vec::new(),
        pairs: Vec::new(),
    };
    let mut sorted_input = input;
    sorted_input.sort_by(|x, y| cmp.cmp(&y[0].0, &x[0].0));
    st.absorb(sorted_input, opts)?;

    while !st.pairs.is_empty() {
        opts.check()?;
        let p = select_pair(&mut st.pairs);
        if !st.alive[p.i] || !st.alive[p.j] {
            continue;
        }
        let (fi, fj) = (&st.store[p.i], &st.store[p.j]);
        let (a, b) = (fi.lc().clone(), fj.lc().clone());
        let ui = p.lcm.checked_div(&fi.lm).unwrap();
        let uj = p.lcm.checked_div(&fj.lm).unwrap();

        let mut candidates: Vec<Terms<BigInt>> = Vec::with_capacity(2);
        let l = a.lcm(&b);
        let s = scale_terms(&Zz, &fi.terms, &(&l / &a), &ui);
        candidates.push(add_scaled(&Zz, cmp, s, &-(&l / &b), &uj, &fj.terms));
        if !a.is_multiple_of(&b) && !b.is_multiple_of(&a) {
            let ext = a.extended_gcd(&b);
            let g = scale_terms(&Zz, &fi.terms, &ext.x, &ui);
            candidates.push(add_scaled(&Zz, cmp, g, &ext.y, &uj, &fj.terms));
        }
        candidates.retain(|c| !c.is_empty());
        st.absorb(candidates, opts)?;
    }
    let store: Vec<Elem<BigInt>> = st.store.into_iter().zip(st.alive).filter(|(_, a)| *a).map(|(e, _)| e).collect();


    // Minimalize with strong divisibility; among equal leading terms keep the
    // first one.
    let mut keep: Vec<usize> = Vec::new();
    for h in 0..store.len() {
        let redundant = (0..store.len()).any(|g| {
            g != h
                && strongly_divides(&store[g], &store[h])
                && !(strongly_divides(&store[h], &store[g]) && h < g)
        });
        if !redundant {
            keep.push(h);
        }
    }
    let elems: Vec<Elem<BigInt>> = keep.iter().map(|&k| store[k].clone()).collect();
    let mut out = Vec::with_capacity(elems.len());
    for (k, e) in elems.iter().enumerate() {
        let others: Vec<&Elem<BigInt>> = elems.iter().enumerate().filter(|(l, _)| *l != k).map(|(_, e)| e).collect();
        let mut t = e.terms.clone();
        let head = t.remove(0);
        let tail = int_reduce(cmp, t, &others, true, opts)?;
        let mut full = vec![head];
        full.extend(tail);
        out.push(full);
    }
    out.sort_by(|x, y| cmp.cmp(&y[0].0, &x[0].0));
    Ok(out)
}

// ---------------------------------------------------------------------------
// Public basis type

#[derive(Clone, Debug)]
enum Internal {
    Int(Vec<Elem<BigInt>>),
    Prime(Fp, Vec<Elem<u64>>),
    Rational(Vec<Elem<BigRational>>),
}

/// A reduced Gröbner basis (strong over ZZ) for a fixed monomial order.
#[derive(Clone, Debug)]
pub struct GroebnerBasis {
    ring: GradedRing,
    order: MonomialOrder,
    elements: Vec<Polynomial>,
    cmp: Cmp,
    internal: Arc<Internal>,
}

impl PartialEq for GroebnerBasis {
    fn eq(&self, other: &Self) -> bool {
        self.ring == other.ring && self.order == other.order && self.elements == other.elements
    }
}

impl Eq for GroebnerBasis {}

/// Reduced Gröbner basis of `ideal` under `order`.
pub fn groebner_basis(ideal: &Ideal, order: &MonomialOrder) -> GroebnerBasis {
    groebner_basis_with(ideal, order, &GroebnerOptions::default()).expect("no deadline was set")
}

pub fn groebner_basis_with(ideal: &Ideal, order: &MonomialOrder, opts: &GroebnerOptions) -> Result<GroebnerBasis> {
    let ring = ideal.ring();
    if let MonomialOrder::Elimination(block) = order {
        if block.iter().any(|&i| i >= ring.nvars()) {
            return Err(Error::RingMismatch("elimination block out of range".into()));
        }
    }
    let cmp = Cmp::new(order, ring);
    let weights = ring.weights();
    let (internal, elements) = match ring.domain() {
        CoefficientDomain::Integers => {
            let input = ideal.generators().iter().map(|g| to_internal(&Zz, &cmp, g)).collect();
            let gb = int_buchberger(&cmp, weights, input, opts)?;
            let polys = gb.iter().map(|t| to_polynomial(&Zz, ring, t)).collect();
            (Internal::Int(gb.into_iter().map(Elem::new).collect()), polys)
        }
        CoefficientDomain::PrimeField(p) => {
            let a = Fp(*p);
            let input = ideal
                .generators()
                .iter()
                .map(|g| to_internal(&a, &cmp, g))
                .filter(|t| !t.is_empty())
                .collect();
            let gb = field_buchberger(&a, &cmp, weights, input, opts)?;
            let polys = gb.iter().map(|t| to_polynomial(&a, ring, t)).collect();
            (Internal::Prime(a, gb.into_iter().map(Elem::new).collect()), polys)
        }
        CoefficientDomain::Rationals => {
            let input = ideal.generators().iter().map(|g| to_internal(&Qq, &cmp, g)).collect();
            let gb = field_buchberger(&Qq, &cmp, weights, input, opts)?;
            let polys = gb.iter().map(|t| to_polynomial(&Qq, ring, t)).collect();
            (Internal::Rational(gb.into_iter().map(Elem::new).collect()), polys)
        }
    };
    Ok(GroebnerBasis {
        ring: ring.clone(),
        order: order.clone(),
        elements,
        cmp,
        internal: Arc::new(internal),
    })
}

impl GroebnerBasis {
    pub fn ring(&self) -> &GradedRing {
        &self.ring
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    pub fn domain(&self) -> &CoefficientDomain {
        self.ring.domain()
    }

    /// Basis elements, sorted by leading monomial (descending in the basis
    /// order). Each polynomial is displayed in the ring's canonical order.
    pub fn elements(&self) -> &[Polynomial] {
        &self.elements
    }

    pub fn is_reduced(&self) -> bool {
        true
    }

    pub fn ideal(&self) -> Ideal {
        Ideal {
            ring: self.ring.clone(),
            generators: self.elements.clone(),
        }
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        match &*self.internal {
            Internal::Int(v) => v.iter().map(|e| e.lm.clone()).collect(),
            Internal::Prime(_, v) => v.iter().map(|e| e.lm.clone()).collect(),
            Internal::Rational(v) => v.iter().map(|e| e.lm.clone()).collect(),
        }
    }

    /// Leading term of each element: monomial and coefficient.
    pub fn leading_terms(&self) -> Vec<(Monomial, Coeff)> {
        match &*self.internal {
            Internal::Int(v) => v.iter().map(|e| (e.lm.clone(), Zz.export_coeff(e.lc()))).collect(),
            Internal::Prime(a, v) => v.iter().map(|e| (e.lm.clone(), a.export_coeff(e.lc()))).collect(),
            Internal::Rational(v) => v.iter().map(|e| (e.lm.clone(), e.lc().clone())).collect(),
        }
    }

    pub fn normal_form(&self, f: &Polynomial) -> Result<Polynomial> {
        self.ring.check_same(f.ring())?;
        let opts = GroebnerOptions::default();
        let cmp = &self.cmp;
        Ok(match &*self.internal {
            Internal::Int(v) => {
                let basis: Vec<&Elem<BigInt>> = v.iter().collect();
                let r = int_reduce(cmp, to_internal(&Zz, cmp, f), &basis, true, &opts)?;
                to_polynomial(&Zz, &self.ring, &r)
            }
            Internal::Prime(a, v) => {
                let basis: Vec<&Elem<u64>> = v.iter().collect();
                let r = field_reduce(a, cmp, to_internal(a, cmp, f), &basis, true, &opts)?;
                to_polynomial(a, &self.ring, &r)
            }
            Internal::Rational(v) => {
                let basis: Vec<&Elem<BigRational>> = v.iter().collect();
                let r = field_reduce(&Qq, cmp, to_internal(&Qq, cmp, f), &basis, true, &opts)?;
                to_polynomial(&Qq, &self.ring, &r)
            }
        })
    }

    pub fn contains(&self, f: &Polynomial) -> Result<bool> {
        Ok(self.normal_form(f)?.is_zero())
    }

    /// True when no leading monomial divides `m`. Over ZZ this means `m` is
    /// free in the quotient; monomials whose leading coefficient ideal is
    /// proper carry torsion instead and are not standard.
    pub fn is_standard(&self, m: &Monomial) -> bool {
        !self.leading_monomials().iter().any(|l| l.divides(m))
    }

    /// Standard monomials of weighted degree `degree`, descending in DegRevLex.
    pub fn standard_monomials(&self, degree: u32) -> Vec<Monomial> {
        let lms = self.leading_monomials();
        self.ring
            .monomials_of_degree(degree)
            .into_iter()
            .filter(|m| !lms.iter().any(|l| l.divides(m)))
            .collect()
    }

    /// Checks the Buchberger criterion directly: all S-polynomials (and
    /// over ZZ the GCD-polynomials) of basis pairs reduce to zero.
    pub fn satisfies_buchberger_criterion(&self) -> bool {
        let opts = GroebnerOptions::default();
        let cmp = &self.cmp;
        match &*self.internal {
            Internal::Int(v) => {
                let basis: Vec<&Elem<BigInt>> = v.iter().collect();
                for i in 0..v.len() {
                    for j in i + 1..v.len() {
                        let (fi, fj) = (&v[i], &v[j]);
                        let lcm = fi.lm.lcm(&fj.lm);
                        let ui = lcm.checked_div(&fi.lm).unwrap();
                        let uj = lcm.checked_div(&fj.lm).unwrap();
                        let (a, b) = (fi.lc(), fj.lc());
                        let l = a.lcm(b);
                        let s = scale_terms(&Zz, &fi.terms, &(&l / a), &ui);
                        let s = add_scaled(&Zz, cmp, s, &-(&l / b), &uj, &fj.terms);
                        let ext = a.extended_gcd(b);
                        let g = scale_terms(&Zz, &fi.terms, &ext.x, &ui);
                        let g = add_scaled(&Zz, cmp, g, &ext.y, &uj, &fj.terms);
                        for c in [s, g] {
                            if !int_reduce(cmp, c, &basis, true, &opts).unwrap().is_empty() {
                                return false;
                            }
                        }
                    }
                }
                true
            }
            Internal::Prime(a, v) => field_criterion(a, cmp, v),
            Internal::Rational(v) => field_criterion(&Qq, cmp, v),
        }
    }
}

fn field_criterion<A: FieldArith>(a: &A, cmp: &Cmp, v: &[Elem<A::C>]) -> bool {
    let opts = GroebnerOptions::default();
    let basis: Vec<&Elem<A::C>> = v.iter().collect();
    for i in 0..v.len() {
        for j in i + 1..v.len() {
            let lcm = v[i].lm.lcm(&v[j].lm);
            let ui = lcm.checked_div(&v[i].lm).unwrap();
            let uj = lcm.checked_div(&v[j].lm).unwrap();
            let s = scale_terms(a, &v[i].terms, &a.one(), &ui);
            let s = add_scaled(a, cmp, s, &a.neg(&a.one()), &uj, &v[j].terms);
            if !field_reduce(a, cmp, s, &basis, true, &opts).unwrap().is_empty() {
                return false;
            }
        }
    }
    true
}

pub fn normal_form(f: &Polynomial, gb: &GroebnerBasis) -> Result<Polynomial> {
    gb.normal_form(f)
}

pub fn ideal_contains(ideal: &Ideal, f: &Polynomial, order: &MonomialOrder) -> Result<bool> {
    ideal.ring().check_same(f.ring())?;
    groebner_basis(ideal, order).contains(f)
}

pub fn ideal_equal(i: &Ideal, j: &Ideal, order: &MonomialOrder) -> Result<bool> {
    i.ring().check_same(j.ring())?;
    Ok(groebner_basis(i, order).elements == groebner_basis(j, order).elements)
}

/// Generators of `I ∩ k[other variables]`, as a reduced basis under the
/// elimination order for `vars`.
pub fn eliminate(ideal: &Ideal, vars: &[&str]) -> Result<Ideal> {
    eliminate_with(ideal, vars, &GroebnerOptions::default())
}

pub fn eliminate_with(ideal: &Ideal, vars: &[&str], opts: &GroebnerOptions) -> Result<Ideal> {
    let ring = ideal.ring();
    let block = vars
        .iter()
        .map(|v| ring.index_of(v))
        .collect::<Result<Vec<_>>>()?;
    let order = MonomialOrder::elimination(block.iter().copied());
    let gb = groebner_basis_with(ideal, &order, opts)?;
    let gens = gb
        .elements()
        .iter()
        .filter(|g| !block.iter().any(|&i| g.involves(i)))
        .cloned()
        .collect();
    Ideal::new(ring, gens)
}
