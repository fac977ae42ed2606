//! Total Steenrod squares on finitely presented graded F2-algebras.
//!
//! An action is given by `Sq(x)` for each generator `x`; the Cartan formula
//! makes `Sq` a ring map, so `Sq(f)` is computed by substitution followed by
//! reduction modulo the relations. [`SteenrodAction::verify`] checks that the
//! data defines an action: relations map to zero, the instability axioms hold
//! on generators and every Adem relation holds on standard monomials.

use std::collections::HashMap;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::ring::{CoefficientDomain, Monomial, Polynomial};
use crate::ringmap::QuotientPresentation;

/// `binom(n, k) mod 2` by Lucas' theorem.
pub fn binomial_mod2(n: u32, k: u32) -> bool {
    n & k == k
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SteenrodAction {
    presentation: QuotientPresentation,
    squares: Vec<Polynomial>,
}

impl SteenrodAction {
    /// `squares[i]` is the total square of the i-th generator.
    pub fn new(presentation: &QuotientPresentation, squares: Vec<Polynomial>) -> Result<Self> {
        if presentation.domain() != &CoefficientDomain::PrimeField(2) {
            return Err(Error::RingMismatch(format!(
                "Steenrod squares need F2 coefficients, found {}",
                presentation.domain()
            )));
        }
        let ring = presentation.ambient();
        if squares.len() != ring.nvars() {
            return Err(Error::Arity {
                expected: ring.nvars(),
                found: squares.len(),
            });
        }
        for s in &squares {
            ring.check_same(s.ring())?;
        }
        Ok(SteenrodAction {
            presentation: presentation.clone(),
            squares,
        })
    }

    /// Builds an action from `(generator name, Sq(generator))` pairs; every
    /// generator must appear exactly once.
    pub fn from_named(presentation: &QuotientPresentation, entries: Vec<(String, Polynomial)>) -> Result<Self> {
        let ring = presentation.ambient();
        let mut squares: Vec<Option<Polynomial>> = vec![None; ring.nvars()];
        for (name, sq) in entries {
            let i = ring.index_of(&name)?;
            if squares[i].replace(sq).is_some() {
                return Err(Error::DuplicateVariable(name));
            }
        }
        let missing: Vec<&str> = squares
            .iter()
            .zip(ring.variables())
            .filter(|(s, _)| s.is_none())
            .map(|(_, v)| v.name.as_str())
            .collect();
        if !missing.is_empty() {
            return Err(Error::Parse(format!("no square given for {}", missing.join(", "))));
        }
        SteenrodAction::new(presentation, squares.into_iter().map(Option::unwrap).collect())
    }

    pub fn presentation(&self) -> &QuotientPresentation {
        &self.presentation
    }

    pub fn squares(&self) -> &[Polynomial] {
        &self.squares
    }

    /// `Sq(f)` in normal form.
    pub fn total_sq(&self, f: &Polynomial) -> Result<Polynomial> {
        let ring = self.presentation.ambient();
        ring.check_same(f.ring())?;
        let image = f.substitute(ring, &self.squares)?;
        self.presentation.normal_form(&image)
    }

    /// `Sq^k(f)` for homogeneous `f`.
    pub fn sq_k(&self, f: &Polynomial, k: u32) -> Result<Polynomial> {
        if f.is_zero() {
            return Ok(f.clone());
        }
        let d = f
            .homogeneous_degree()
            .ok_or_else(|| Error::NotHomogeneous(f.to_string()))?;
        Ok(self.total_sq(f)?.homogeneous_component(d + k))
    }

    /// Runs all three families of checks up to total degree `max_n`.
    pub fn verify(&self, max_n: u32) -> Result<SteenrodReport> {
        let mut report = SteenrodReport::default();
        let ring = self.presentation.ambient();

        for r in self.presentation.relations().generators() {
            report.checks += 1;
            let image = self.total_sq(r)?;
            if !image.is_zero() {
                report.well_defined.push(Failure {
                    check: "well-defined".into(),
                    witness: format!("Sq({r}) = {image}, not in the relations"),
                });
            }
        }

        for (i, v) in ring.variables().iter().enumerate() {
            let x = ring.var_at(i);
            let x_nf = self.presentation.normal_form(&x)?;
            let sq = self.total_sq(&x)?;
            let d = v.degree;
            report.checks += 1;
            for deg in sq.weighted_degree().degrees {
                if deg < d || deg > 2 * d {
                    report.instability.push(Failure {
                        check: "instability".into(),
                        witness: format!(
                            "Sq^{}({}) = {} is outside degrees {}..{}",
                            deg as i64 - d as i64,
                            v.name,
                            sq.homogeneous_component(deg),
                            d,
                            2 * d
                        ),
                    });
                }
            }
            if sq.homogeneous_component(d) != x_nf {
                report.instability.push(Failure {
                    check: "instability".into(),
                    witness: format!("Sq^0({}) = {}", v.name, sq.homogeneous_component(d)),
                });
            }
            let top = sq.homogeneous_component(2 * d);
            let square = self.presentation.normal_form(&x.pow(2))?;
            if top != square {
                report.instability.push(Failure {
                    check: "instability".into(),
                    witness: format!("Sq^{d}({}) = {top} but {}^2 = {square}", v.name, v.name),
                });
            }
        }

        self.check_adem(max_n, &mut report)?;
        Ok(report)
    }

    fn check_adem(&self, max_n: u32, report: &mut SteenrodReport) -> Result<()> {
        let ring = self.presentation.ambient();
        let gb = self.presentation.gb();
        let mut cache: HashMap<Monomial, Polynomial> = HashMap::new();
        let mut total = |p: &Polynomial| -> Result<Polynomial> {
            let mut acc = ring.zero();
            for (m, c) in p.terms() {
                let sq = match cache.get(m) {
                    Some(s) => s.clone(),
                    None => {
                        let mono = Polynomial::monomial(ring, m.clone(), num_traits::One::one());
                        let s = self.total_sq(&mono)?;
                        cache.insert(m.clone(), s.clone());
                        s
                    }
                };
                acc = &acc + &sq.scale(c);
            }
            Ok(acc)
        };
        // sq_k on a normal-form homogeneous polynomial of degree d.
        let mut sq = |p: &Polynomial, d: u32, k: u32| -> Result<Polynomial> {
            Ok(total(p)?.homogeneous_component(d + k))
        };

        for a in 1..=max_n {
            for b in 1..=max_n {
                if a >= 2 * b || a + b > max_n {
                    continue;
                }
                for n in 0..=max_n - a - b {
                    for m in gb.standard_monomials(n) {
                        report.checks += 1;
                        let mono = Polynomial::monomial(ring, m.clone(), num_traits::One::one());
                        let inner = sq(&mono, n, b)?;
                        let lhs = sq(&inner, n + b, a)?;
                        let mut rhs = ring.zero();
                        for c in 0..=a / 2 {
                            if binomial_mod2(b - c - 1, a - 2 * c) {
                                let first = sq(&mono, n, c)?;
                                rhs = &rhs + &sq(&first, n + c, a + b - c)?;
                            }
                        }
                        if lhs != rhs {
                            report.adem.push(Failure {
                                check: "adem".into(),
                                witness: format!(
                                    "Sq^{a} Sq^{b} on {mono} (degree {n}): left {lhs}, right {rhs}"
                                ),
                            });
                        }
                    }
                }
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Failure {
    pub check: String,
    pub witness: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SteenrodReport {
    pub well_defined: Vec<Failure>,
    pub instability: Vec<Failure>,
    pub adem: Vec<Failure>,
    pub checks: usize,
}

impl SteenrodReport {
    pub fn passed(&self) -> bool {
        self.well_defined.is_empty() && self.instability.is_empty() && self.adem.is_empty()
    }

    pub fn failures(&self) -> impl Iterator<Item = &Failure> {
        self.well_defined
            .iter()
            .chain(&self.instability)
            .chain(&self.adem)
    }
}

impl fmt::Display for SteenrodReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.passed() {
            return write!(f, "all {} checks pass", self.checks);
        }
        let n = self.failures().count();
        write!(f, "{n} of {} checks fail", self.checks)?;
        for fail in self.failures() {
            write!(f, "\n  [{}] {}", fail.check, fail.witness)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::format::parse_polynomial;
    use crate::ring::GradedRing;

    fn action(vars: &[(&str, u32)], rels: &[&str], sqs: &[&str]) -> SteenrodAction {
        let r = GradedRing::with_vars(CoefficientDomain::PrimeField(2), vars).unwrap();
        let rels = rels.iter().map(|s| parse_polynomial(&r, s).unwrap()).collect();
        let pres = QuotientPresentation::new(&r, rels).unwrap();
        let sqs = sqs.iter().map(|s| parse_polynomial(&r, s).unwrap()).collect();
        SteenrodAction::new(&pres, sqs).unwrap()
    }

    fn poly(a: &SteenrodAction, s: &str) -> Polynomial {
        parse_polynomial(a.presentation().ambient(), s).unwrap()
    }

    fn o2() -> SteenrodAction {
        action(
            &[("w1", 1), ("w2", 2), ("rb", 2), ("s", 3)],
            &["rb*w1", "rb^2", "rb*s", "s^2"],
            &["w1+w1^2", "w2+w1*w2+w2^2", "rb", "s+w2*rb+w1^2*s"],
        )
    }

    #[test]
    fn lucas() {
        assert!(binomial_mod2(4, 0));
        assert!(!binomial_mod2(2, 1));
        assert!(binomial_mod2(3, 1));
        assert!(!binomial_mod2(1, 2));
        for n in 0..32u32 {
            let mut row = vec![1u64];
            for _ in 0..n {
                let mut next = vec![1u64; row.len() + 1];
                for k in 1..row.len() {
                    next[k] = row[k - 1] + row[k];
                }
                row = next;
            }
            for k in 0..=n {
                assert_eq!(binomial_mod2(n, k), row[k as usize] % 2 == 1, "{n} choose {k}");
            }
        }
    }

    #[test]
    fn o2_squares() {
        let a = o2();
        assert_eq!(a.total_sq(&poly(&a, "s")).unwrap(), poly(&a, "s+w2*rb+w1^2*s"));
        assert_eq!(a.total_sq(&poly(&a, "1")).unwrap(), poly(&a, "1"));
        assert_eq!(a.sq_k(&poly(&a, "s"), 2).unwrap(), poly(&a, "w1^2*s"));
        assert_eq!(a.sq_k(&poly(&a, "s"), 1).unwrap(), poly(&a, "w2*rb"));
        assert!(a.sq_k(&poly(&a, "s"), 3).unwrap().is_zero());
        // Sq^3 = Sq^1 Sq^2 on s: Sq^1(w1^2 s) = w1^2 w2 rb = 0 since rb*w1 = 0.
        let s2 = a.sq_k(&poly(&a, "s"), 2).unwrap();
        assert!(a.sq_k(&s2, 1).unwrap().is_zero());
        let report = a.verify(12).unwrap();
        assert!(report.passed(), "{report}");
    }

    #[test]
    fn sq0_is_identity() {
        let a = o2();
        for f in ["w1*w2", "w2^3+w1^2*w2^2", "s*w1"] {
            let f = poly(&a, f);
            assert_eq!(a.sq_k(&f, 0).unwrap(), a.presentation().normal_form(&f).unwrap());
        }
        assert!(matches!(a.sq_k(&poly(&a, "w1+w2"), 1), Err(Error::NotHomogeneous(_))));
    }

    #[test]
    fn su2_product_vanishes() {
        let a = action(
            &[("c2", 4), ("y1", 4), ("x1", 5), ("x2", 6)],
            &["y1^2", "y1*x1", "x1^2", "x2*y1", "x1*x2", "x2^2"],
            &["c2+c2^2", "y1", "x1+x2", "x2+c2*y1"],
        );
        assert!(a.total_sq(&poly(&a, "y1*x1")).unwrap().is_zero());
        assert_eq!(a.sq_k(&poly(&a, "x1"), 1).unwrap(), poly(&a, "x2"));
        assert!(a.verify(12).unwrap().passed());
    }

    #[test]
    fn free_class_in_degree_one() {
        let a = action(&[("x", 1)], &[], &["x+x^2"]);
        assert!(a.verify(12).unwrap().passed());
    }

    #[test]
    fn missing_top_square_is_flagged() {
        let a = action(&[("x", 1), ("y", 2)], &["x^2+y"], &["x+x^2", "y"]);
        let report = a.verify(6).unwrap();
        assert!(!report.instability.is_empty());
        assert!(report.instability[0].witness.contains("Sq^2(y)"));
    }

    #[test]
    fn dropped_term_is_invisible_to_the_axioms() {
        // Without w2*rb the data still satisfies every axiom; only the
        // independently known value Sq^1(s) = w2*rb exposes the change.
        let a = action(
            &[("w1", 1), ("w2", 2), ("rb", 2), ("s", 3)],
            &["rb*w1", "rb^2", "rb*s", "s^2"],
            &["w1+w1^2", "w2+w1*w2+w2^2", "rb", "s+w1^2*s"],
        );
        assert!(a.verify(12).unwrap().passed());
        assert_ne!(a.sq_k(&poly(&a, "s"), 1).unwrap(), poly(&a, "w2*rb"));
    }

    #[test]
    fn needs_f2() {
        let r = GradedRing::with_vars(CoefficientDomain::Integers, &[("x", 1)]).unwrap();
        let pres = QuotientPresentation::free(&r);
        assert!(SteenrodAction::new(&pres, vec![r.var("x").unwrap()]).is_err());
    }
}
