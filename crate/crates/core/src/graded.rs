//! Degreewise structure of graded presentations: abelian groups over ZZ via
//! Smith normal form, dimensions over fields, and kernels of degree-preserving
//! maps out of direct sums of presentations.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::matrix::{echelon_basis, lattice_coordinates, left_kernel, smith_normal_form, IntMatrix};
use crate::ring::{CoefficientDomain, Monomial, Polynomial};
use crate::ringmap::{QuotientPresentation, RingMap};

/// A finitely generated abelian group `Z^free_rank + Z/d1 + ... + Z/dk` with
/// `d1 | d2 | ... | dk`, each at least 2.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize)]
pub struct GroupSlice {
    pub free_rank: usize,
    #[serde(serialize_with = "serialize_ints")]
    pub torsion: Vec<BigInt>,
}

fn serialize_ints<S: serde::Serializer>(v: &[BigInt], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|x| x.to_string()))
}

impl GroupSlice {
    pub fn zero() -> Self {
        GroupSlice::default()
    }

    pub fn free(rank: usize) -> Self {
        GroupSlice {
            free_rank: rank,
            torsion: Vec::new(),
        }
    }

    pub fn new(free_rank: usize, torsion: &[u64]) -> Self {
        GroupSlice {
            free_rank,
            torsion: torsion.iter().map(|&d| BigInt::from(d)).collect(),
        }
    }

    /// Cokernel of a relation matrix with `generators` columns.
    fn from_factors(generators: usize, factors: &[BigInt]) -> Self {
        GroupSlice {
            free_rank: generators - factors.len(),
            torsion: factors.iter().filter(|d| !d.is_one()).cloned().collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    /// Renders with `base` as the name of the free summand (`Z`, `QQ`, ...).
    pub fn render(&self, base: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push(base.to_string()),
            r => parts.push(format!("{base}^{r}")),
        }
        let mut i = 0;
        while i < self.torsion.len() {
            let d = &self.torsion[i];
            let run = self.torsion[i..].iter().take_while(|x| *x == d).count();
            if run == 1 {
                parts.push(format!("{base}/{d}"));
            } else {
                parts.push(format!("({base}/{d})^{run}"));
            }
            i += run;
        }
        parts.join(" + ")
    }
}

impl fmt::Display for GroupSlice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render("Z"))
    }
}

/// Groups in degrees `0..=max_degree`; anything above is unknown.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GradedAbelianGroup {
    pub domain: CoefficientDomain,
    pub max_degree: u32,
    pub slices: Vec<GroupSlice>,
}

impl GradedAbelianGroup {
    pub fn get(&self, n: u32) -> Option<&GroupSlice> {
        self.slices.get(n as usize)
    }

    fn base(&self) -> String {
        match &self.domain {
            CoefficientDomain::Integers => "Z".into(),
            other => other.name(),
        }
    }

    pub fn render_slice(&self, n: u32) -> String {
        match self.get(n) {
            Some(s) => s.render(&self.base()),
            None => "unknown".into(),
        }
    }
}

impl fmt::Display for GradedAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for n in 0..=self.max_degree {
            writeln!(f, "{n:>3}  {}", self.render_slice(n))?;
        }
        Ok(())
    }
}

/// The degree-`n` piece of a presentation: ambient monomials of degree `n`
/// and the rows `m * g` for relation generators `g`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeSlice {
    pub degree: u32,
    pub monomials: Vec<Monomial>,
    pub relations: IntMatrix,
}

/// Row vector of `p` in the given monomial basis. Over QQ the row is scaled
/// to clear denominators, which keeps its span.
fn coordinates(p: &Polynomial, index: &HashMap<Monomial, usize>, width: usize) -> Result<Vec<BigInt>> {
    let mut denom = BigInt::one();
    for (_, c) in p.terms() {
        denom = denom.lcm(c.denom());
    }
    let mut row = vec![BigInt::zero(); width];
    for (m, c) in p.terms() {
        let j = index
            .get(m)
            .ok_or_else(|| Error::DegreeMismatch(format!("term of {p} is outside the slice")))?;
        row[*j] = (c * &denom).to_integer();
    }
    Ok(row)
}

fn monomial_index(ms: &[Monomial]) -> HashMap<Monomial, usize> {
    ms.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect()
}

pub fn degree_slice(p: &QuotientPresentation, n: u32) -> Result<DegreeSlice> {
    p.check_homogeneous()?;
    let ring = p.ambient();
    let monomials = ring.monomials_of_degree(n);
    let index = monomial_index(&monomials);
    let mut rows = Vec::new();
    for g in p.relations().generators() {
        let d = g.homogeneous_degree().expect("checked homogeneous");
        if d > n {
            continue;
        }
        for m in ring.monomials_of_degree(n - d) {
            rows.push(coordinates(&g.mul_monomial(&m), &index, monomials.len())?);
        }
    }
    Ok(DegreeSlice {
        degree: n,
        relations: IntMatrix::from_rows(monomials.len(), rows),
        monomials,
    })
}

fn rank_in(domain: &CoefficientDomain, m: &IntMatrix) -> usize {
    match domain {
        CoefficientDomain::PrimeField(p) => m.rank_mod(*p),
        _ => m.rank(),
    }
}

/// The group (or vector space) in degree `n`.
pub fn slice_group(p: &QuotientPresentation, n: u32) -> Result<GroupSlice> {
    let s = degree_slice(p, n)?;
    let cols = s.monomials.len();
    Ok(match p.domain() {
        CoefficientDomain::Integers => GroupSlice::from_factors(cols, &smith_normal_form(&s.relations).factors),
        d => GroupSlice::free(cols - rank_in(d, &s.relations)),
    })
}

pub fn graded_groups(p: &QuotientPresentation, max_n: u32) -> Result<GradedAbelianGroup> {
    p.check_homogeneous()?;
    let slices = (0..=max_n)
        .into_par_iter()
        .map(|n| slice_group(p, n))
        .collect::<Result<Vec<_>>>()?;
    Ok(GradedAbelianGroup {
        domain: p.domain().clone(),
        max_degree: max_n,
        slices,
    })
}

/// Dimensions of the degree pieces over a field, by counting standard
/// monomials of the relations' Gröbner basis.
pub fn hilbert_dims(p: &QuotientPresentation, max_n: u32) -> Result<Vec<usize>> {
    if !p.domain().is_field() {
        return Err(Error::NotAField(p.domain().name()));
    }
    p.check_homogeneous()?;
    let gb = p.gb();
    Ok((0..=max_n).map(|n| gb.standard_monomials(n).len()).collect())
}

/// A map `⊕ sign_i * f_i : ⊕ source(f_i) -> codomain`.
#[derive(Clone, Debug)]
pub struct GradedMapSpec {
    codomain: QuotientPresentation,
    summands: Vec<(RingMap, i64)>,
}

impl GradedMapSpec {
    pub fn new(codomain: &QuotientPresentation, summands: Vec<(RingMap, i64)>) -> Result<Self> {
        codomain.check_homogeneous()?;
        for (f, sign) in &summands {
            if f.target() != codomain {
                return Err(Error::RingMismatch(format!(
                    "summand map lands in {}, expected {}",
                    f.target(),
                    codomain
                )));
            }
            if sign.abs() != 1 {
                return Err(Error::DegreeMismatch(format!("sign must be 1 or -1, got {sign}")));
            }
            f.source().check_homogeneous()?;
        }
        Ok(GradedMapSpec {
            codomain: codomain.clone(),
            summands,
        })
    }

    pub fn codomain(&self) -> &QuotientPresentation {
        &self.codomain
    }

    pub fn summands(&self) -> &[(RingMap, i64)] {
        &self.summands
    }
}

/// Kernel of a [`GradedMapSpec`] in one degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KernelSlice {
    pub degree: u32,
    pub group: GroupSlice,
    /// Over ZZ: echelon basis of the preimage lattice `{x : x*M in rows(R_C)}`,
    /// in the coordinates of `domain_monomials`.
    pub lattice: Vec<Vec<BigInt>>,
    /// `(summand index, monomial)` for each domain coordinate.
    pub domain_monomials: Vec<(usize, Monomial)>,
}

struct Assembled {
    domain_monomials: Vec<(usize, Monomial)>,
    offsets: Vec<usize>,
    domain_relations: Vec<Vec<BigInt>>,
    map_rows: Vec<Vec<BigInt>>,
    codomain_relations: IntMatrix,
    codomain_width: usize,
}

fn assemble(spec: &GradedMapSpec, n: u32) -> Result<Assembled> {
    let cod = degree_slice(&spec.codomain, n)?;
    let cindex = monomial_index(&cod.monomials);
    let mut domain_monomials = Vec::new();
    let mut offsets = Vec::new();
    let mut slices = Vec::new();
    for (i, (f, _)) in spec.summands.iter().enumerate() {
        let s = degree_slice(f.source(), n)?;
        offsets.push(domain_monomials.len());
        domain_monomials.extend(s.monomials.iter().map(|m| (i, m.clone())));
        slices.push(s);
    }
    let width = domain_monomials.len();
    let mut domain_relations = Vec::new();
    let mut map_rows = Vec::new();
    for (i, ((f, sign), s)) in spec.summands.iter().zip(&slices).enumerate() {
        for r in s.relations.to_rows() {
            let mut row = vec![BigInt::zero(); width];
            for (k, x) in r.into_iter().enumerate() {
                row[offsets[i] + k] = x;
            }
            domain_relations.push(row);
        }
        let src = f.source().ambient();
        for m in &s.monomials {
            let mono = Polynomial::monomial(src, m.clone(), One::one());
            let image = f.substitute(&mono)?;
            let mut row = coordinates(&image, &cindex, cod.monomials.len())?;
            if *sign < 0 {
                for x in row.iter_mut() {
                    *x = -&*x;
                }
            }
            map_rows.push(row);
        }
    }
    Ok(Assembled {
        domain_monomials,
        offsets,
        domain_relations,
        map_rows,
        codomain_width: cod.monomials.len(),
        codomain_relations: cod.relations,
    })
}

/// Kernel of the induced map on degree-`n` pieces.
pub fn fp_group_hom_kernel(spec: &GradedMapSpec, n: u32) -> Result<KernelSlice> {
    let a = assemble(spec, n)?;
    let width = a.domain_monomials.len();
    let domain = spec.codomain.domain();
    let m = IntMatrix::from_rows(a.codomain_width, a.map_rows.clone());
    let stacked = m.vstack(&a.codomain_relations);

    if domain.is_field() {
        let rd = IntMatrix::from_rows(width, a.domain_relations.clone());
        let dim_domain = width - rank_in(domain, &rd);
        let image = rank_in(domain, &stacked) - rank_in(domain, &a.codomain_relations);
        return Ok(KernelSlice {
            degree: n,
            group: GroupSlice::free(dim_domain - image),
            lattice: Vec::new(),
            domain_monomials: a.domain_monomials,
        });
    }

    let kernel_rows: Vec<Vec<BigInt>> = left_kernel(&stacked)
        .into_iter()
        .map(|r| r[..width].to_vec())
        .collect();
    let lattice = echelon_basis(&kernel_rows, width);
    let coords = a
        .domain_relations
        .iter()
        .map(|r| {
            lattice_coordinates(&lattice, r).ok_or_else(|| {
                Error::NotWellDefined("a domain relation does not map into the codomain relations".into())
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let q = IntMatrix::from_rows(lattice.len(), coords);
    let group = GroupSlice::from_factors(lattice.len(), &smith_normal_form(&q).factors);
    Ok(KernelSlice {
        degree: n,
        group,
        lattice,
        domain_monomials: a.domain_monomials,
    })
}

/// Checks that the images of the degree-`n` monomials of a free ring under
/// `components` (one map per summand, all from the same free source),
/// together with the domain relations, span exactly the kernel lattice.
pub fn image_equals_kernel(spec: &GradedMapSpec, components: &[RingMap], n: u32) -> Result<bool> {
    if components.len() != spec.summands.len() {
        return Err(Error::Arity {
            expected: spec.summands.len(),
            found: components.len(),
        });
    }
    let kernel = fp_group_hom_kernel(spec, n)?;
    let a = assemble(spec, n)?;
    let width = a.domain_monomials.len();
    let source = components[0].source().ambient().clone();
    let mut rows = a.domain_relations.clone();
    for m in source.monomials_of_degree(n) {
        let mono = Polynomial::monomial(&source, m, One::one());
        let mut row = vec![BigInt::zero(); width];
        for (i, f) in components.iter().enumerate() {
            if f.target() != spec.summands[i].0.source() {
                return Err(Error::RingMismatch("component does not land in its summand".into()));
            }
            let s = degree_slice(f.target(), n)?;
            let index = monomial_index(&s.monomials);
            let image = f.substitute(&mono)?;
            for (k, x) in coordinates(&image, &index, s.monomials.len())?.into_iter().enumerate() {
                row[a.offsets[i] + k] = x;
            }
        }
        rows.push(row);
    }
    Ok(echelon_basis(&rows, width) == kernel.lattice)
}

/// Sum of `x * sign` over a row, used in tests of the sign convention.
#[cfg(test)]
fn row_sum(r: &[BigInt]) -> BigInt {
    r.iter().fold(BigInt::zero(), |acc, x| acc + x.abs())
}
