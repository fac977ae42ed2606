//! Graded quotient presentations and degree-preserving ring maps between
//! them, with kernels computed by eliminating the target variables from the
//! graph ideal.

use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};
use crate::groebner::{
    eliminate_with, groebner_basis, groebner_basis_with, GroebnerBasis, GroebnerOptions, Ideal,
};
use crate::ring::{CoefficientDomain, GradedRing, Monomial, MonomialOrder, Polynomial, Variable};

/// A graded ring `ambient / relations`.
#[derive(Clone, Debug)]
pub struct QuotientPresentation {
    ambient: GradedRing,
    relations: Ideal,
    gb: Arc<OnceLock<GroebnerBasis>>,
}

impl PartialEq for QuotientPresentation {
    fn eq(&self, other: &Self) -> bool {
        self.ambient == other.ambient && self.relations == other.relations
    }
}

impl Eq for QuotientPresentation {}

impl QuotientPresentation {
    pub fn new(ambient: &GradedRing, relations: Vec<Polynomial>) -> Result<Self> {
        Ok(QuotientPresentation {
            ambient: ambient.clone(),
            relations: Ideal::new(ambient, relations)?,
            gb: Arc::new(OnceLock::new()),
        })
    }

    pub fn free(ambient: &GradedRing) -> Self {
        QuotientPresentation {
            ambient: ambient.clone(),
            relations: Ideal::zero(ambient),
            gb: Arc::new(OnceLock::new()),
        }
    }

    pub fn from_ideal(ideal: Ideal) -> Self {
        QuotientPresentation {
            ambient: ideal.ring().clone(),
            relations: ideal,
            gb: Arc::new(OnceLock::new()),
        }
    }

    pub fn ambient(&self) -> &GradedRing {
        &self.ambient
    }

    pub fn relations(&self) -> &Ideal {
        &self.relations
    }

    pub fn is_free(&self) -> bool {
        self.relations.is_zero()
    }

    pub fn domain(&self) -> &CoefficientDomain {
        self.ambient.domain()
    }

    pub fn check_homogeneous(&self) -> Result<()> {
        match self.relations.first_inhomogeneous() {
            Some(g) => Err(Error::InhomogeneousIdeal(g.to_string())),
            None => Ok(()),
        }
    }

    /// Reduced Gröbner basis of the relations under DegRevLex, computed once.
    pub fn gb(&self) -> &GroebnerBasis {
        self.gb
            .get_or_init(|| groebner_basis(&self.relations, &MonomialOrder::DegRevLex))
    }

    /// Like [`gb`](Self::gb) but honouring a deadline on first computation.
    pub fn gb_with(&self, opts: &GroebnerOptions) -> Result<&GroebnerBasis> {
        if let Some(gb) = self.gb.get() {
            return Ok(gb);
        }
        let gb = groebner_basis_with(&self.relations, &MonomialOrder::DegRevLex, opts)?;
        Ok(self.gb.get_or_init(|| gb))
    }

    pub fn normal_form(&self, f: &Polynomial) -> Result<Polynomial> {
        self.gb().normal_form(f)
    }

    pub fn contains(&self, f: &Polynomial) -> Result<bool> {
        self.gb().contains(f)
    }

    /// The same presentation with coefficients changed (ZZ to F_p or QQ).
    pub fn with_domain(&self, domain: CoefficientDomain) -> Result<Self> {
        let ring = self.ambient.with_domain(domain);
        let rels = self
            .relations
            .generators()
            .iter()
            .map(|g| g.change_domain(&ring))
            .collect::<Result<Vec<_>>>()?;
        QuotientPresentation::new(&ring, rels)
    }
}

impl fmt::Display for QuotientPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.ambient)?;
        if !self.is_free() {
            let gens: Vec<String> = self.relations.generators().iter().map(|g| g.to_string()).collect();
            write!(f, " / ({})", gens.join(", "))?;
        }
        Ok(())
    }
}

/// A degree-preserving homomorphism `source -> target` given by the image of
/// each source variable in the target's ambient ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RingMap {
    source: QuotientPresentation,
    target: QuotientPresentation,
    images: Vec<Polynomial>,
}

impl RingMap {
    pub fn new(source: &QuotientPresentation, target: &QuotientPresentation, images: Vec<Polynomial>) -> Result<Self> {
        let src = source.ambient();
        if src.domain() != target.domain() {
            return Err(Error::RingMismatch(format!(
                "map from {} to {} changes coefficients",
                src.domain(),
                target.domain()
            )));
        }
        if images.len() != src.nvars() {
            return Err(Error::Arity {
                expected: src.nvars(),
                found: images.len(),
            });
        }
        for (v, im) in src.variables().iter().zip(&images) {
            target.ambient().check_same(im.ring())?;
            let info = im.weighted_degree();
            let ok = info.degrees.is_empty() || info.degree() == Some(v.degree);
            if !ok {
                return Err(Error::InhomogeneousImage {
                    var: v.name.clone(),
                    image: im.to_string(),
                    degree: v.degree,
                });
            }
        }
        Ok(RingMap {
            source: source.clone(),
            target: target.clone(),
            images,
        })
    }

    pub fn identity(pres: &QuotientPresentation) -> Self {
        let r = pres.ambient();
        RingMap {
            source: pres.clone(),
            target: pres.clone(),
            images: (0..r.nvars()).map(|i| r.var_at(i)).collect(),
        }
    }

    pub fn source(&self) -> &QuotientPresentation {
        &self.source
    }

    pub fn target(&self) -> &QuotientPresentation {
        &self.target
    }

    pub fn images(&self) -> &[Polynomial] {
        &self.images
    }

    /// Substitutes images without reducing modulo the target relations.
    pub fn substitute(&self, p: &Polynomial) -> Result<Polynomial> {
        self.source.ambient().check_same(p.ring())?;
        p.substitute(self.target.ambient(), &self.images)
    }

    /// Image of `p`, in normal form modulo the target relations.
    pub fn apply(&self, p: &Polynomial) -> Result<Polynomial> {
        self.target.normal_form(&self.substitute(p)?)
    }

    /// Kernel of the map from the free source ring.
    pub fn kernel(&self) -> Result<Ideal> {
        self.kernel_with(&GroebnerOptions::default())
    }

    pub fn kernel_with(&self, opts: &GroebnerOptions) -> Result<Ideal> {
        if !self.source.is_free() {
            return Err(Error::SourceNotFree(self.source.to_string()));
        }
        self.preimage_of_zero(opts)
    }

    /// Preimage of the target relations in the source ambient ring, as the
    /// reduced DegRevLex basis of `(relations + graph) ∩ source`.
    fn preimage_of_zero(&self, opts: &GroebnerOptions) -> Result<Ideal> {
        let tgt = self.target.ambient();
        let src = self.source.ambient();
        let nt = tgt.nvars();
        let mut vars: Vec<Variable> = Vec::with_capacity(nt + src.nvars());
        for (i, v) in tgt.variables().iter().enumerate() {
            vars.push(Variable::new(format!("t{i}"), v.degree));
        }
        for (i, v) in src.variables().iter().enumerate() {
            vars.push(Variable::new(format!("s{i}"), v.degree));
        }
        let combined = GradedRing::new(tgt.domain().clone(), vars)?;
        let tgt_index: Vec<usize> = (0..nt).collect();
        let src_index: Vec<usize> = (nt..nt + src.nvars()).collect();

        let mut gens: Vec<Polynomial> = self
            .target
            .relations()
            .generators()
            .iter()
            .map(|g| g.embed(&combined, &tgt_index))
            .collect();
        for (i, im) in self.images.iter().enumerate() {
            let x = combined.var_at(nt + i);
            gens.push(&x - &im.embed(&combined, &tgt_index));
        }
        let graph = Ideal::new(&combined, gens)?;
        let names: Vec<String> = (0..nt).map(|i| format!("t{i}")).collect();
        let name_refs: Vec<&str> = names.iter().map(String::as_str).collect();
        let elim = eliminate_with(&graph, &name_refs, opts)?;

        // The eliminated generators only involve the source slots.
        let gens: Vec<Polynomial> = elim
            .generators()
            .iter()
            .map(|g| {
                Polynomial::from_terms(
                    src,
                    g.terms().iter().map(|(m, c)| {
                        let e = Monomial::from_exponents(
                            src_index.iter().map(|&j| m.exponents()[j]),
                        );
                        (e, c.clone())
                    }),
                )
            })
            .collect();
        let ideal = Ideal::new(src, gens)?;
        let gb = groebner_basis_with(&ideal, &MonomialOrder::DegRevLex, opts)?;
        Ideal::new(src, gb.elements().to_vec())
    }

    /// Checks that every source relation maps to zero.
    pub fn check_well_defined(&self) -> Result<WellDefinedReport> {
        let mut failures = Vec::new();
        for r in self.source.relations().generators() {
            let image = self.apply(r)?;
            if !image.is_zero() {
                failures.push((r.clone(), image));
            }
        }
        Ok(WellDefinedReport { failures })
    }

    /// Kernel of the induced map of quotient rings, returned as a small set of
    /// generators in the source ambient ring, to be read modulo the source
    /// relations.
    pub fn kernel_of_quotient_map(&self) -> Result<Ideal> {
        self.kernel_of_quotient_map_with(&GroebnerOptions::default())
    }

    pub fn kernel_of_quotient_map_with(&self, opts: &GroebnerOptions) -> Result<Ideal> {
        let report = self.check_well_defined()?;
        if let Some((r, image)) = report.failures.first() {
            return Err(Error::NotWellDefined(format!("relation {r} maps to {image}")));
        }
        let full = self.preimage_of_zero(opts)?;
        let src = self.source.ambient();
        let rel_gb = self.source.gb_with(opts)?;
        let full_gb = groebner_basis_with(&full, &MonomialOrder::DegRevLex, opts)?;
        for r in self.source.relations().generators() {
            if !full_gb.contains(r)? {
                return Err(Error::NotWellDefined(format!("relation {r} is not in the preimage")));
            }
        }
        let mut candidates: Vec<Polynomial> = full
            .generators()
            .iter()
            .map(|g| rel_gb.normal_form(g))
            .collect::<Result<Vec<_>>>()?;
        candidates.retain(|g| !g.is_zero());
        let w = src.weights();
        candidates.sort_by(|a, b| {
            let da = a.terms()[0].0.degree(w);
            let db = b.terms()[0].0.degree(w);
            da.cmp(&db).then_with(|| a.len().cmp(&b.len()))
        });
        let mut generated = self.source.relations().clone();
        let mut out = Vec::new();
        for c in candidates {
            let gb = groebner_basis_with(&generated, &MonomialOrder::DegRevLex, opts)?;
            if !gb.contains(&c)? {
                out.push(c.clone());
                generated = generated.sum(&Ideal::new(src, vec![c])?)?;
            }
        }
        Ideal::new(src, out)
    }
}

/// Outcome of [`RingMap::check_well_defined`]: relations whose image is non-zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WellDefinedReport {
    pub failures: Vec<(Polynomial, Polynomial)>,
}

impl WellDefinedReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}
