//! Randomized checks of the algebraic laws the engine relies on, shared by the
//! core property tests and the acceptance report.

use gcr_core::catalog::Catalog;
use gcr_core::format::parse_polynomial;
use gcr_core::hilton::{lyndon_basis, wedge_homotopy, SphereHomotopyTable, WedgeOfSpheres};
use gcr_core::matrix::{smith_normal_form, smith_normal_form_with_transforms, IntMatrix};
use gcr_core::{
    groebner_basis, CoefficientDomain, GradedRing, Ideal, Monomial, MonomialOrder, Polynomial,
};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;
use proptest::test_runner::{Config, TestCaseResult, TestRunner};

pub type Law = fn() -> Result<(), String>;

/// Every law with its name, in a stable order.
pub const LAWS: &[(&str, Law)] = &[
    ("ring axioms", ring_axioms),
    ("Frobenius in characteristic p", frobenius),
    ("parse of print is the identity", parse_print_round_trip),
    ("monomial orders are total and multiplicative", orders_are_total_and_multiplicative),
    ("Gröbner basis canonical under generator permutation over F2", gb_canonical_over_f2),
    ("Gröbner basis canonical under generator permutation over ZZ", gb_canonical_over_zz),
    ("normal form idempotent with f - nf(f) in the ideal over F2", normal_form_over_f2),
    ("normal form idempotent with f - nf(f) in the ideal over ZZ", normal_form_over_zz),
    ("Smith normal form divisibility and UMV reconstruction", smith_normal_form_laws),
    ("Lyndon counts match the necklace formula", lyndon_counts_match_necklaces),
    ("Hilton groups invariant under sphere permutation", hilton_is_permutation_invariant),
    ("Sq^1 derivation and Cartan formula", sq1_is_a_derivation_and_cartan_holds),
];

fn check<S: Strategy>(cases: u32, strategy: S, test: impl Fn(S::Value) -> TestCaseResult) -> Result<(), String>
where
    S::Value: std::fmt::Debug,
{
    let config = Config {
        cases,
        failure_persistence: None,
        ..Config::default()
    };
    TestRunner::new(config).run(&strategy, test).map_err(|e| e.to_string())
}

type Terms = Vec<(Vec<u32>, i64)>;

fn terms(nvars: usize, max_exp: u32, max_terms: usize) -> impl Strategy<Value = Terms> {
    prop::collection::vec((prop::collection::vec(0..=max_exp, nvars), -4i64..=4), 1..=max_terms)
}

fn build(ring: &GradedRing, t: &Terms) -> Polynomial {
    Polynomial::from_terms(
        ring,
        t.iter().map(|(e, c)| {
            (Monomial::from_exponents(e.iter().copied()), BigRational::from_integer(BigInt::from(*c)))
        }),
    )
}

fn ring(domain: CoefficientDomain) -> GradedRing {
    GradedRing::with_vars(domain, &[("x", 1), ("y", 1), ("z", 2)]).unwrap()
}

fn domains() -> Vec<CoefficientDomain> {
    vec![
        CoefficientDomain::Integers,
        CoefficientDomain::Rationals,
        CoefficientDomain::prime_field(2).unwrap(),
        CoefficientDomain::prime_field(3).unwrap(),
    ]
}

pub fn ring_axioms() -> Result<(), String> {
    check(64, (terms(3, 3, 4), terms(3, 3, 4), terms(3, 3, 4)), |(a, b, c)| {
        for d in domains() {
            let r = ring(d);
            let (f, g, h) = (build(&r, &a), build(&r, &b), build(&r, &c));
            prop_assert_eq!(&(&f + &g) + &h, &f + &(&g + &h));
            prop_assert_eq!(&(&f * &g) * &h, &f * &(&g * &h));
            prop_assert_eq!(&f * &g, &g * &f);
            prop_assert_eq!(&f * &(&g + &h), &(&f * &g) + &(&f * &h));
            prop_assert!((&f + &(-&f)).is_zero());
            prop_assert_eq!(&f * &r.one(), f.clone());
            prop_assert_eq!(&(&f + &g) - &g, f.clone());
        }
        Ok(())
    })
}

pub fn frobenius() -> Result<(), String> {
    check(64, (terms(3, 3, 4), terms(3, 3, 4)), |(a, b)| {
        for p in [2u32, 3, 5] {
            let r = ring(CoefficientDomain::prime_field(p as u64).unwrap());
            let (f, g) = (build(&r, &a), build(&r, &b));
            prop_assert_eq!((&f + &g).pow(p), &f.pow(p) + &g.pow(p));
        }
        Ok(())
    })
}

pub fn parse_print_round_trip() -> Result<(), String> {
    check(64, terms(3, 4, 6), |a| {
        for d in domains() {
            let r = ring(d);
            let f = build(&r, &a);
            prop_assert_eq!(parse_polynomial(&r, &f.to_string()).unwrap(), f);
        }
        Ok(())
    })
}

pub fn orders_are_total_and_multiplicative() -> Result<(), String> {
    let exps = || prop::collection::vec(0u32..4, 3);
    check(256, (exps(), exps(), exps()), |(a, b, c)| {
        let w = [1, 1, 2];
        let (ma, mb, mc) = (
            Monomial::from_exponents(a.clone()),
            Monomial::from_exponents(b.clone()),
            Monomial::from_exponents(c),
        );
        for order in [MonomialOrder::DegRevLex, MonomialOrder::Lex, MonomialOrder::Elimination(vec![0])] {
            let ab = order.compare(&w, &ma, &mb);
            prop_assert_eq!(ab, order.compare(&w, &mb, &ma).reverse());
            prop_assert_eq!(ab.is_eq(), a == b);
            prop_assert_eq!(order.compare(&w, &ma.mul(&mc), &mb.mul(&mc)), ab);
            prop_assert!(order.compare(&w, &ma.mul(&mc), &ma).is_ge());
        }
        Ok(())
    })
}

fn permutations_agree(domain: CoefficientDomain, gens: &[Terms], rot: usize) -> TestCaseResult {
    let r = ring(domain);
    let polys: Vec<Polynomial> = gens.iter().map(|t| build(&r, t)).collect();
    let mut shuffled = polys.clone();
    shuffled.rotate_left(rot % polys.len());
    shuffled.reverse();
    let doubled: Vec<Polynomial> = polys.iter().chain(&polys).cloned().collect();
    let g1 = groebner_basis(&Ideal::new(&r, polys).unwrap(), &MonomialOrder::DegRevLex);
    let g2 = groebner_basis(&Ideal::new(&r, shuffled).unwrap(), &MonomialOrder::DegRevLex);
    let g3 = groebner_basis(&Ideal::new(&r, doubled).unwrap(), &MonomialOrder::DegRevLex);
    prop_assert!(g1.is_reduced());
    prop_assert!(g1.satisfies_buchberger_criterion());
    prop_assert_eq!(g1.elements(), g2.elements());
    prop_assert_eq!(g1.elements(), g3.elements());
    Ok(())
}

fn nf_laws(domain: CoefficientDomain, gens: &[Terms], f: &Terms, h: &Terms) -> TestCaseResult {
    let r = ring(domain);
    let polys: Vec<Polynomial> = gens.iter().map(|t| build(&r, t)).collect();
    let gb = groebner_basis(&Ideal::new(&r, polys.clone()).unwrap(), &MonomialOrder::DegRevLex);
    let f = build(&r, f);
    let n = gb.normal_form(&f).unwrap();
    prop_assert_eq!(gb.normal_form(&n).unwrap(), n.clone());
    prop_assert!(gb.contains(&(&f - &n)).unwrap());
    let member = &build(&r, h) * &polys[0];
    prop_assert!(gb.normal_form(&member).unwrap().is_zero());
    prop_assert_eq!(gb.normal_form(&(&f + &member)).unwrap(), n);
    Ok(())
}

fn ideals(max_exp: u32) -> impl Strategy<Value = Vec<Terms>> {
    prop::collection::vec(terms(3, max_exp, 3), 1..=3)
}

pub fn gb_canonical_over_f2() -> Result<(), String> {
    check(50, (ideals(3), 0usize..3), |(gens, rot)| {
        permutations_agree(CoefficientDomain::prime_field(2).unwrap(), &gens, rot)
    })
}

pub fn gb_canonical_over_zz() -> Result<(), String> {
    check(50, (ideals(2), 0usize..3), |(gens, rot)| {
        permutations_agree(CoefficientDomain::Integers, &gens, rot)
    })
}

pub fn normal_form_over_f2() -> Result<(), String> {
    check(50, (ideals(3), terms(3, 4, 5), terms(3, 2, 2)), |(gens, f, h)| {
        nf_laws(CoefficientDomain::prime_field(2).unwrap(), &gens, &f, &h)
    })
}

pub fn normal_form_over_zz() -> Result<(), String> {
    check(50, (ideals(2), terms(3, 3, 4), terms(3, 2, 2)), |(gens, f, h)| {
        nf_laws(CoefficientDomain::Integers, &gens, &f, &h)
    })
}

fn is_unimodular(m: &IntMatrix) -> bool {
    let s = smith_normal_form(m);
    m.rows() == m.cols() && s.rank() == m.rows() && s.factors.iter().all(|d| d.is_one())
}

/// The diagonal of `m`, or `None` if an off-diagonal entry is non-zero.
fn diagonal_entries(m: &IntMatrix) -> Option<Vec<BigInt>> {
    let mut out = Vec::new();
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            if i != j && !m.row(i)[j].is_zero() {
                return None;
            }
        }
        if i < m.cols() && !m.row(i)[i].is_zero() {
            out.push(m.row(i)[i].clone());
        }
    }
    Some(out)
}

pub fn smith_normal_form_laws() -> Result<(), String> {
    let shape = (1usize..6, 1usize..6);
    check(128, (shape, prop::collection::vec(-6i64..=6, 36)), |((r, c), seed)| {
        let rows: Vec<Vec<BigInt>> = (0..r)
            .map(|i| seed[i * 6..i * 6 + c].iter().map(|&x| BigInt::from(x)).collect())
            .collect();
        let m = IntMatrix::from_rows(c, rows);
        let s = smith_normal_form_with_transforms(&m);
        for w in s.factors.windows(2) {
            prop_assert!(w[1].is_multiple_of(&w[0]));
        }
        prop_assert!(s.factors.iter().all(|d| d.is_positive()));
        let (u, v) = (s.u.clone().unwrap(), s.v.clone().unwrap());
        prop_assert!(is_unimodular(&u));
        prop_assert!(is_unimodular(&v));
        prop_assert_eq!(diagonal_entries(&u.mul(&m).mul(&v)), Some(s.factors.clone()));
        prop_assert_eq!(smith_normal_form(&m).factors, s.factors.clone());
        prop_assert_eq!(smith_normal_form(&m.transpose()).factors, s.factors);
        Ok(())
    })
}

/// Number of Lyndon words of total weight `n`, by Möbius inversion of
/// `sum_{d | n} d * L(d) = sum_w w * W(n - w)`, where `W(m)` counts all words
/// of weight `m`.
fn necklace_count(weights: &[u32], n: u32) -> i64 {
    let mut words = vec![0i64; n as usize + 1];
    words[0] = 1;
    for k in 1..=n as usize {
        words[k] = weights.iter().filter(|&&w| w as usize <= k).map(|&w| words[k - w as usize]).sum();
    }
    let pointed = |m: u32| -> i64 {
        weights.iter().filter(|&&w| w <= m).map(|&w| w as i64 * words[(m - w) as usize]).sum()
    };
    let total: i64 = (1..=n).filter(|d| n.is_multiple_of(*d)).map(|d| mobius(d) * pointed(n / d)).sum();
    total / n as i64
}

fn mobius(n: u32) -> i64 {
    let (mut m, mut sign, mut p) = (n, 1i64, 2);
    while p * p <= m {
        if m % p == 0 {
            m /= p;
            if m % p == 0 {
                return 0;
            }
            sign = -sign;
        }
        p += 1;
    }
    if m > 1 {
        sign = -sign;
    }
    sign
}

pub fn lyndon_counts_match_necklaces() -> Result<(), String> {
    check(64, (prop::collection::vec(1u32..=3, 1..=3), 1u32..=6), |(weights, n)| {
        let got = lyndon_basis(&weights, n).iter().filter(|w| w.weight == n).count() as i64;
        prop_assert_eq!(got, necklace_count(&weights, n));
        Ok(())
    })
}

pub fn hilton_is_permutation_invariant() -> Result<(), String> {
    let table = SphereHomotopyTable::standard();
    check(64, (prop::collection::vec(2u32..=4, 1..=3), 1u32..=8, 0usize..3), |(dims, n, rot)| {
        let mut other = dims.clone();
        other.rotate_left(rot % dims.len());
        other.reverse();
        let a = wedge_homotopy(&WedgeOfSpheres::new(dims).unwrap(), n, &table);
        let b = wedge_homotopy(&WedgeOfSpheres::new(other).unwrap(), n, &table);
        prop_assert_eq!(a.ok(), b.ok());
        Ok(())
    })
}

fn random_element(ring: &GradedRing, degree: u32, pick: &[bool]) -> Polynomial {
    let monos = ring.monomials_of_degree(degree);
    Polynomial::from_terms(
        ring,
        monos
            .into_iter()
            .zip(pick.iter().cycle())
            .filter(|(_, &p)| p)
            .map(|(m, _)| (m, BigRational::one())),
    )
}

pub fn sq1_is_a_derivation_and_cartan_holds() -> Result<(), String> {
    let cat = Catalog::builtin().unwrap();
    let picks = || prop::collection::vec(any::<bool>(), 1..8);
    check(48, (1u32..=5, 1u32..=5, picks(), picks()), |(da, db, pa, pb)| {
        for name in ["SqO2", "SqU2", "SqSU2", "SqSO3"] {
            let act = cat.action(name).unwrap();
            let pres = act.presentation();
            let r = pres.ambient();
            let x = pres.normal_form(&random_element(r, da, &pa)).unwrap();
            let y = pres.normal_form(&random_element(r, db, &pb)).unwrap();
            let xy = pres.normal_form(&(&x * &y)).unwrap();
            let lhs = act.sq_k(&xy, 1).unwrap();
            let rhs = pres
                .normal_form(&(&(&act.sq_k(&x, 1).unwrap() * &y) + &(&x * &act.sq_k(&y, 1).unwrap())))
                .unwrap();
            prop_assert_eq!(lhs, rhs, "{}", name);
            let total = pres.normal_form(&(&act.total_sq(&x).unwrap() * &act.total_sq(&y).unwrap())).unwrap();
            prop_assert_eq!(act.total_sq(&xy).unwrap(), total, "{}", name);
            prop_assert_eq!(act.sq_k(&x, 0).unwrap(), x.clone());
            prop_assert!(act.sq_k(&act.sq_k(&x, 1).unwrap(), 1).unwrap().is_zero(), "{}", name);
        }
        Ok(())
    })
}
