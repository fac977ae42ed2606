//! Encoded cohomology rings, maps and Steenrod actions for classifying
//! spaces for commutativity, and the named scenarios that check them.
//!
//! The data lives in `.gcr` files under `catalog/`, bundled into the library.
//! Each scenario binds some of those declarations to an engine operation and
//! compares the result with the published statement.

use std::fmt;
use std::time::Instant;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::format::{parse_polynomial, parse_source, DeclarationKind, SourceFile};
use crate::graded::{
    fp_group_hom_kernel, graded_groups, hilbert_dims, image_equals_kernel, slice_group, GradedMapSpec,
    GroupSlice,
};
use crate::groebner::{ideal_equal, GroebnerOptions, Ideal};
use crate::hilton::{bcom_o2_homotopy, AbelianGroupExpr, SphereHomotopyTable};
use crate::ring::{CoefficientDomain, MonomialOrder, Polynomial};
use crate::ringmap::{QuotientPresentation, RingMap};
use crate::steenrod::SteenrodAction;

const FILES: &[(&str, &str)] = &[
    ("appendix.gcr", include_str!("../catalog/appendix.gcr")),
    ("unitary.gcr", include_str!("../catalog/unitary.gcr")),
    ("orthogonal.gcr", include_str!("../catalog/orthogonal.gcr")),
    ("so3.gcr", include_str!("../catalog/so3.gcr")),
];

/// Names of the bundled catalog files with their text.
pub fn catalog_files() -> &'static [(&'static str, &'static str)] {
    FILES
}

/// How published symbols are spelled in the catalog.
pub const NOTATION: &[(&str, &str)] = &[
    ("c̃₁, c̃₂", "a1, a2"),
    ("U (listing for B_com U(2))", "u"),
    ("W̃₁, W̃₂, p̃₁", "W1, W2, p1 (in XO2)"),
    ("{x}", "xc (in XO2), x (in A2R)"),
    ("w̃₁, w̃₂, {u}", "w1, w2, u (in XO2F2)"),
    ("r̄", "rb"),
    ("w̄, ȳ₁", "wb, yb1"),
    ("c̄ᵢ, ȳᵢ, x̄₂", "ci, yi, x2 (in F2 rings)"),
];

/// All catalog declarations in one namespace.
#[derive(Clone, Debug)]
pub struct Catalog {
    source: SourceFile,
}

impl Catalog {
    /// The bundled catalog.
    pub fn builtin() -> Result<Self> {
        let mut source = SourceFile::default();
        for (name, text) in FILES {
            let file = parse_source(text).map_err(|d| Error::Parse(format!("{name}:{d}")))?;
            for decl in file.declarations {
                if source.declarations.iter().any(|d| d.name == decl.name) {
                    return Err(Error::Parse(format!("{name}: `{}` is declared twice in the catalog", decl.name)));
                }
                source.declarations.push(decl);
            }
        }
        Ok(Catalog { source })
    }

    /// Replaces catalog declarations by same-named declarations of
    /// `overrides`. Names the catalog does not know, or a change of kind
    /// (ring for map, say), are errors.
    pub fn with_overrides(&self, overrides: &SourceFile) -> Result<Self> {
        let mut source = self.source.clone();
        for decl in &overrides.declarations {
            let slot = source
                .declarations
                .iter_mut()
                .find(|d| d.name == decl.name)
                .ok_or_else(|| Error::Parse(format!("override `{}` names no catalog declaration", decl.name)))?;
            if std::mem::discriminant(&slot.kind) != std::mem::discriminant(&decl.kind) {
                return Err(Error::Parse(format!("override `{}` changes the kind of declaration", decl.name)));
            }
            *slot = decl.clone();
        }
        Ok(Catalog { source })
    }

    pub fn source(&self) -> &SourceFile {
        &self.source
    }

    pub fn ring(&self, name: &str) -> Result<&QuotientPresentation> {
        self.source.ring(name)
    }

    pub fn map(&self, name: &str) -> Result<&RingMap> {
        self.source.map(name)
    }

    pub fn ideal(&self, name: &str) -> Result<&Ideal> {
        self.source.ideal(name)
    }

    pub fn action(&self, name: &str) -> Result<&SteenrodAction> {
        self.source.action(name)
    }

    fn poly(&self, ring: &str, text: &str) -> Result<Polynomial> {
        parse_polynomial(self.ring(ring)?.ambient(), text)
    }

    /// Every presentation, ideal and action source ring in the catalog.
    pub fn presentations(&self) -> impl Iterator<Item = (&str, &QuotientPresentation)> {
        self.source.declarations.iter().filter_map(|d| match &d.kind {
            DeclarationKind::Ring(p) => Some((d.name.as_str(), p)),
            _ => None,
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ScenarioKind {
    KernelEquals,
    QuotientKernelEquals,
    GradedGroupsEqual,
    HilbertDimsEqual,
    MvKernelMatches,
    MvDimensionBookkeeping,
    SteenrodVerify,
    MembershipHolds,
    HiltonTableMatches,
}

/// Options shared by all scenarios.
#[derive(Clone, Debug, Default)]
pub struct RunSettings {
    /// Replaces each scenario's default degree bound.
    pub max_degree: Option<u32>,
    pub deadline: Option<Instant>,
}

impl RunSettings {
    fn degree(&self, default: u32) -> u32 {
        self.max_degree.unwrap_or(default)
    }

    fn opts(&self) -> GroebnerOptions {
        GroebnerOptions::with_deadline(self.deadline)
    }

    fn check_deadline(&self) -> Result<()> {
        match self.deadline {
            Some(d) if Instant::now() > d => Err(Error::Timeout),
            _ => Ok(()),
        }
    }
}

struct Check {
    passed: bool,
    summary: String,
    expected: String,
    actual: String,
    witnesses: Vec<String>,
}

type Procedure = fn(&Catalog, &RunSettings) -> Result<Check>;

/// A named verification bound to catalog data.
pub struct Scenario {
    pub name: &'static str,
    pub kind: ScenarioKind,
    pub description: &'static str,
    pub statement: &'static str,
    procedure: Procedure,
}

impl fmt::Debug for Scenario {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Scenario")
            .field("name", &self.name)
            .field("kind", &self.kind)
            .finish()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Status::Pass => write!(f, "PASS"),
            Status::Fail => write!(f, "FAIL"),
        }
    }
}

/// Result of running one scenario. Failures always carry witnesses.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerificationOutcome {
    pub scenario: String,
    pub status: Status,
    pub expected: String,
    pub actual: String,
    pub witnesses: Vec<String>,
    pub millis: u128,
    #[serde(skip)]
    pub summary: String,
}

impl VerificationOutcome {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

impl fmt::Display for VerificationOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.status, self.summary)?;
        if !self.passed() {
            write!(f, "\n  expected: {}\n  actual:   {}", self.expected, self.actual)?;
            for w in &self.witnesses {
                write!(f, "\n  witness:  {w}")?;
            }
        }
        Ok(())
    }
}

/// All scenarios in their stable order.
pub fn list_scenarios() -> &'static [Scenario] {
    SCENARIOS
}

pub fn find_scenario(name: &str) -> Result<&'static Scenario> {
    SCENARIOS
        .iter()
        .find(|s| s.name == name)
        .ok_or_else(|| Error::UnknownScenario(name.to_string()))
}

/// Runs a scenario against the bundled catalog.
pub fn run_scenario(name: &str) -> Result<VerificationOutcome> {
    run_scenario_with(name, &Catalog::builtin()?, &RunSettings::default())
}

pub fn run_scenario_with(name: &str, catalog: &Catalog, settings: &RunSettings) -> Result<VerificationOutcome> {
    let scenario = find_scenario(name)?;
    let start = Instant::now();
    let check = (scenario.procedure)(catalog, settings)?;
    let status = if check.passed { Status::Pass } else { Status::Fail };
    debug_assert!(check.passed || !check.witnesses.is_empty(), "{name} failed without a witness");
    Ok(VerificationOutcome {
        scenario: scenario.name.to_string(),
        status,
        expected: check.expected,
        actual: check.actual,
        witnesses: check.witnesses,
        millis: start.elapsed().as_millis(),
        summary: check.summary,
    })
}

fn ideal_text(i: &Ideal) -> String {
    let gens: Vec<String> = i.generators().iter().map(|g| g.to_string()).collect();
    format!("({})", gens.join(", "))
}

fn group_list(slices: &[(u32, GroupSlice)]) -> String {
    slices
        .iter()
        .map(|(n, g)| format!("{n}: {g}"))
        .collect::<Vec<_>>()
        .join(", ")
}

/// Generators of `a` outside `b` and of `b` outside `a`.
fn ideal_differences(a: &Ideal, b: &Ideal) -> Result<Vec<String>> {
    let order = MonomialOrder::DegRevLex;
    let mut out = Vec::new();
    for (x, y, label) in [(a, b, "computed"), (b, a, "expected")] {
        let gb = crate::groebner::groebner_basis(y, &order);
        for g in x.generators() {
            if !gb.contains(g)? {
                let other = if label == "computed" { "expected" } else { "computed" };
                out.push(format!("{label} generator {g} is not in the {other} ideal"));
            }
        }
    }
    Ok(out)
}

fn kernel_scenario(cat: &Catalog, s: &RunSettings, map: &str, expected: &[&str]) -> Result<Check> {
    let f = cat.map(map)?;
    let kernel = f.kernel_with(&s.opts())?;
    let mut witnesses = Vec::new();
    for g in kernel.generators() {
        let image = f.apply(g)?;
        if !image.is_zero() {
            witnesses.push(format!("kernel generator {g} maps to {image}"));
        }
    }
    let order = MonomialOrder::DegRevLex;
    for name in expected {
        let e = cat.ideal(name)?;
        if !ideal_equal(&kernel, e, &order)? {
            witnesses.extend(ideal_differences(&kernel, e)?.into_iter().map(|w| format!("{name}: {w}")));
        }
    }
    let first = cat.ideal(expected[0])?;
    Ok(Check {
        passed: witnesses.is_empty(),
        summary: format!("kernel equals {}", ideal_text(first)),
        expected: ideal_text(first),
        actual: ideal_text(&kernel),
        witnesses,
    })
}

fn appendix_a1(cat: &Catalog, s: &RunSettings) -> Result<Check> {
    kernel_scenario(cat, s, "A1f", &["A1listing", "A1theorem"])
}

fn appendix_a2(cat: &Catalog, s: &RunSettings) -> Result<Check> {
    kernel_scenario(cat, s, "A2f", &["A2listing", "A2theorem"])
}

fn appendix_a3(cat: &Catalog, s: &RunSettings) -> Result<Check> {
    kernel_scenario(cat, s, "A3f", &["A3listing", "A3theorem"])
}

fn u2_presentation(cat: &Catalog, s: &RunSettings) -> Result<Check> {
    let f = cat.map("fU2")?;
    let kernel = f.kernel_with(&s.opts())?;
    let hu2 = cat.ring("HU2")?;
    let source = f.source().ambient();
    let moved = hu2
        .relations()
        .generators()
        .iter()
        .map(|g| g.change_domain(source))
        .collect::<Result<Vec<_>>>()?;
    let expected = Ideal::new(source, moved)?;
    let mut witnesses = Vec::new();
    if !ideal_equal(&kernel, &expected, &MonomialOrder::DegRevLex)? {
        witnesses = ideal_differences(&kernel, &expected)?;
    }
    Ok(Check {
        passed: witnesses.is_empty(),
        summary: format!("kernel of the restriction to the wedge equals {}", ideal_text(&expected)),
        expected: ideal_text(&expected),
        actual: ideal_text(&kernel),
        witnesses,
    })
}

fn quotient_kernel_scenario(cat: &Catalog, s: &RunSettings, map: &str, expected: &str) -> Result<Check> {
    let f = cat.map(map)?;
    let report = f.check_well_defined()?;
    if !report.passed() {
        let witnesses = report
            .failures
            .iter()
            .map(|(r, image)| format!("relation {r} maps to {image}"))
            .collect();
        return Ok(Check {
            passed: false,
            summary: format!("{map} is not well defined"),
            expected: "a well-defined map".into(),
            actual: "relations map to non-zero classes".into(),
            witnesses,
        });
    }
    let kernel = f.kernel_of_quotient_map_with(&s.opts())?;
    let want = cat.ideal(expected)?;
    let rels = f.source().relations();
    let order = MonomialOrder::DegRevLex;
    let mut witnesses = Vec::new();
    if !ideal_equal(&kernel.sum(rels)?, &want.sum(rels)?, &order)? {
        witnesses = ideal_differences(&kernel.sum(rels)?, &want.sum(rels)?)?;
    }
    if kernel.generators().len() != want.generators().len() {
        witnesses.push(format!(
            "kernel needs {} generators modulo relations, expected {}",
            kernel.generators().len(),
            want.generators().len()
        ));
    }
    Ok(Check {
        passed: witnesses.is_empty(),
        summary: format!("kernel is {} modulo relations", ideal_text(want)),
        expected: ideal_text(want),
        actual: ideal_text(&kernel),
        witnesses,
    })
}

fn su2_from_u2(cat: &Catalog, s: &RunSettings) -> Result<Check> {
    quotient_kernel_scenario(cat, s, "qSU2", "qSU2kernel")
}

fn esu2_from_su2(cat: &Catalog, s: &RunSettings) -> Result<Check> {
    quotient_kernel_scenario(cat, s, "qESU2", "qESU2kernel")
}

fn compare_slices(expected: &[(u32, GroupSlice)], actual: &[(u32, GroupSlice)]) -> Vec<String> {
    expected
        .iter()
        .zip(actual)
        .filter(|(e, a)| e.1 != a.1)
        .map(|((n, e), (_, a))| format!("degree {n}: expected {e}, got {a}"))
        .collect()
}

/// `Z` in degree 0, `Z^2` in positive degrees divisible by 4, `Z/2` in
/// degrees 2 mod 4 above 2, and 0 otherwise.
pub fn su2_pattern(n: u32) -> GroupSlice {
    match n {
        0 => GroupSlice::free(1),
        n if n % 4 == 0 => GroupSlice::free(2),
        n if n % 4 == 2 && n > 2 => GroupSlice::new(0, &[2]),
        _ => GroupSlice::zero(),
    }
}

fn su2_groups(cat: &Catalog, s: &RunSettings) -> Result<Check> {
    let max = s.degree(16);
    let g = graded_groups(cat.ring("HSU2")?, max)?;
    let expected: Vec<(u32, GroupSlice)> = (0..=max).map(|n| (n, su2_pattern(n))).collect();
    let actual: Vec<(u32, GroupSlice)> = (0..=max).map(|n| (n, g.get(n).cloned().unwrap_or_default())).collect();
    let witnesses = compare_slices(&expected, &actual);
    Ok(Check {
        passed: witnesses.is_empty(),
        summary: format!("integral groups of B_com SU(2) match the mod-4 pattern through degree {max}"),
        expected: group_list(&expected),
        actual: group_list(&actual),
        witnesses,
    })
}

fn rational_o2(cat: &Catalog, s: &RunSettings) -> Result<Check> {
    let max = s.degree(12);
    let q = cat.ring("HO2")?.with_domain(CoefficientDomain::Rationals)?;
    let g = graded_groups(&q, max)?;
    let expected: Vec<(u32, GroupSlice)> = (0..=max)
        .map(|n| (n, GroupSlice::free(if n % 2 == 0 { 1 } else { 0 })))
        .collect();
    let actual: Vec<(u32, GroupSlice)> = (0..=max).map(|n| (n, g.get(n).cloned().unwrap_or_default())).collect();
    let witnesses = compare_slices(&expected, &actual);
    let dims = |v: &[(u32, GroupSlice)]| v.iter().map(|(_, g)| g.free_rank.to_string()).collect::<Vec<_>>().join(",");
    Ok(Check {
        passed: witnesses.is_empty(),
        summary: format!("rational dimensions through degree {max} are those of QQ[r]"),
        expected: dims(&expected),
        actual: dims(&actual),
        witnesses,
    })
}

fn mv_scenario(
    cat: &Catalog,
    s: &RunSettings,
    codomain: &str,
    summands: [(&str, i64); 2],
    components: [&str; 2],
    presentation: &str,
) -> Result<Check> {
    let max = s.degree(12);
    let spec = GradedMapSpec::new(
        cat.ring(codomain)?,
        summands
            .iter()
            .map(|(m, sign)| Ok((cat.map(m)?.clone(), *sign)))
            .collect::<Result<Vec<_>>>()?,
    )?;
    let comps = components.iter().map(|m| cat.map(m).cloned()).collect::<Result<Vec<_>>>()?;
    let pres = cat.ring(presentation)?;
    let mut expected = Vec::new();
    let mut actual = Vec::new();
    let mut witnesses = Vec::new();
    for n in 0..=max {
        s.check_deadline()?;
        let k = fp_group_hom_kernel(&spec, n)?;
        let e = slice_group(pres, n)?;
        if k.group != e {
            witnesses.push(format!("degree {n}: kernel is {}, presentation slice is {e}", k.group));
        }
        if !image_equals_kernel(&spec, &comps, n)? {
            witnesses.push(format!("degree {n}: image of the generator map differs from the kernel"));
        }
        expected.push((n, e));
        actual.push((n, k.group));
    }
    Ok(Check {
        passed: witnesses.is_empty(),
        summary: format!("Mayer-Vietoris kernel matches {presentation} through degree {max}"),
        expected: group_list(&expected),
        actual: group_list(&actual),
        witnesses,
    })
}

fn u2_mv(cat: &Catalog, s: &RunSettings) -> Result<Check> {
    mv_scenario(cat, s, "RP2BS1", [("pi2U2", 1), ("iU2", -1)], ["jU2", "phiU2"], "HU2")
}

fn o2_mv(cat: &Catalog, s: &RunSettings) -> Result<Check> {
    mv_scenario(cat, s, "CO2", [("qO2", 1), ("iO2", -1)], ["jO2", "phiO2"], "HO2")
}

fn o2_mv_mod2(cat: &Catalog, s: &RunSettings) -> Result<Check> {
    let max = s.degree(12);
    let spec = GradedMapSpec::new(
        cat.ring("CO2F2")?,
        vec![(cat.map("qO2F2")?.clone(), 1), (cat.map("iO2F2")?.clone(), -1)],
    )?;
    let dims = hilbert_dims(cat.ring("HO2F2")?, max)?;
    let mut expected = Vec::new();
    let mut actual = Vec::new();
    let mut witnesses = Vec::new();
    for n in 2..=max {
        s.check_deadline()?;
        let ker = fp_group_hom_kernel(&spec, n)?.group.free_rank;
        let delta = usize::from(n % 2 == 0);
        if dims[n as usize] != ker + delta {
            witnesses.push(format!(
                "degree {n}: dim H^n = {}, kernel {ker} + image of delta {delta}",
                dims[n as usize]
            ));
        }
        expected.push(format!("{n}: {}", dims[n as usize]));
        actual.push(format!("{n}: {ker}+{delta}"));
    }
    Ok(Check {
        passed: witnesses.is_empty(),
        summary: format!("mod 2 dimensions split as kernel plus image of delta through degree {max}"),
        expected: expected.join(", "),
        actual: actual.join(", "),
        witnesses,
    })
}

/// `(expression, k, expected)`: `Sq^k(expression) = expected` modulo relations.
type Identity = (&'static str, u32, &'static str);

fn steenrod_scenario(
    cat: &Catalog,
    s: &RunSettings,
    ring: &str,
    action: &str,
    identities: &[Identity],
    extra: impl Fn(&Catalog, &SteenrodAction) -> Result<Vec<String>>,
    note: &str,
) -> Result<Check> {
    let max = s.degree(12);
    let a = cat.action(action)?;
    let report = a.verify(max)?;
    let mut witnesses: Vec<String> = report.failures().map(|f| format!("[{}] {}", f.check, f.witness)).collect();
    let pres = a.presentation();
    for (expr, k, want) in identities {
        s.check_deadline()?;
        let f = cat.poly(ring, expr)?;
        let got = pres.normal_form(&a.sq_k(&f, *k)?)?;
        let want_p = pres.normal_form(&cat.poly(ring, want)?)?;
        if got != want_p {
            witnesses.push(format!("[identity] Sq^{k}({expr}) = {got}, expected {want}"));
        }
    }
    witnesses.extend(extra(cat, a)?);
    let identities_text: Vec<String> = identities.iter().map(|(e, k, w)| format!("Sq^{k}({e}) = {w}")).collect();
    let mut actual = report.to_string();
    if !note.is_empty() {
        actual.push_str(&format!("; {note}"));
    }
    Ok(Check {
        passed: witnesses.is_empty(),
        summary: format!(
            "{action} satisfies the axioms and Adem relations through degree {max} and {}",
            identities_text.join(", ")
        ),
        expected: format!("axioms, Adem relations and {}", identities_text.join(", ")),
        actual,
        witnesses,
    })
}

/// Checks `f(Sq x) = Sq(f x)` for every generator `x` of the source.
fn naturality(source: &SteenrodAction, target: &SteenrodAction, f: &RingMap) -> Result<Vec<String>> {
    let mut out = Vec::new();
    let ring = source.presentation().ambient();
    for (i, v) in ring.variables().iter().enumerate() {
        let x = ring.var_at(i);
        let lhs = f.apply(&source.total_sq(&x)?)?;
        let rhs = target.total_sq(&f.apply(&x)?)?;
        let rhs = f.target().normal_form(&rhs)?;
        if lhs != rhs {
            out.push(format!("[naturality] image of Sq({}) is {lhs}, Sq of its image is {rhs}", v.name));
        }
    }
    Ok(out)
}

fn steenrod_so3(cat: &Catalog, s: &RunSettings) -> Result<Check> {
    steenrod_scenario(
        cat,
        s,
        "HSO3F2",
        "SqSO3",
        &[("yb1", 2, "w2*yb1"), ("w2", 1, "wb"), ("wb", 2, "w2*wb"), ("wb", 3, "w2*yb1")],
        |cat, a| naturality(cat.action("SqBSO3")?, a, cat.map("iotaSO3")?),
        "Sq(w2) stored with its top square w2^2",
    )
}

fn steenrod_u2(cat: &Catalog, s: &RunSettings) -> Result<Check> {
    steenrod_scenario(
        cat,
        s,
        "HU2F2",
        "SqU2",
        &[("y2", 2, "c2*y1"), ("y2", 4, "c1^2*y2"), ("y1", 1, "0")],
        |_, _| Ok(Vec::new()),
        "",
    )
}

fn steenrod_su2(cat: &Catalog, s: &RunSettings) -> Result<Check> {
    steenrod_scenario(
        cat,
        s,
        "HSU2F2",
        "SqSU2",
        &[("x1", 1, "x2"), ("x2", 2, "c2*y1"), ("y1*x1", 1, "0")],
        |cat, a| naturality(cat.action("SqU2")?, a, cat.map("qSU2F2")?),
        "",
    )
}

fn steenrod_o2(cat: &Catalog, s: &RunSettings) -> Result<Check> {
    steenrod_scenario(
        cat,
        s,
        "HO2F2",
        "SqO2",
        &[("s", 1, "w2*rb"), ("s", 2, "w1^2*s"), ("s", 3, "0"), ("rb", 1, "0")],
        |cat, a| {
            let ring = "HO2F2";
            let s = cat.poly(ring, "s")?;
            let pres = a.presentation();
            let sq3 = pres.normal_form(&a.sq_k(&s, 3)?)?;
            let sq1sq2 = pres.normal_form(&a.sq_k(&a.sq_k(&s, 2)?, 1)?)?;
            Ok(if sq3 == sq1sq2 {
                Vec::new()
            } else {
                vec![format!("[identity] Sq^3(s) = {sq3} but Sq^1 Sq^2(s) = {sq1sq2}")]
            })
        },
        "",
    )
}

fn tautological(cat: &Catalog, s: &RunSettings) -> Result<Check> {
    let ho2 = cat.ring("HO2")?;
    let mut witnesses = Vec::new();
    for g in cat.ideal("Tautological")?.generators() {
        if !ho2.contains(g)? {
            witnesses.push(format!("{g} is not a relation"));
        }
    }
    let q = ho2.with_domain(CoefficientDomain::Rationals)?;
    let h2 = slice_group(&q, 2)?.free_rank;
    if h2 != 1 {
        witnesses.push(format!("rational H^2 has dimension {h2}"));
    }
    s.check_deadline()?;
    Ok(Check {
        passed: witnesses.is_empty(),
        summary: "r^2 - 4*p1 is a relation and rational H^2 is spanned by r".into(),
        expected: "r^2 - 4*p1 in I; dim H^2(QQ) = 1".into(),
        actual: format!("dim H^2(QQ) = {h2}"),
        witnesses,
    })
}

/// The published table of `pi_n(B_com O(2))` for `n = 1..10`.
pub const BCOM_O2_TABLE: [&str; 10] = [
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

fn hilton_table(_: &Catalog, s: &RunSettings) -> Result<Check> {
    let table = SphereHomotopyTable::standard();
    let mut witnesses = Vec::new();
    let mut actual = Vec::new();
    for (i, text) in BCOM_O2_TABLE.iter().enumerate() {
        s.check_deadline()?;
        let n = i as u32 + 1;
        let want: AbelianGroupExpr = text.parse()?;
        let got = bcom_o2_homotopy(n, &table)?;
        if got != want {
            witnesses.push(format!("pi_{n}: expected {want}, got {got}"));
        }
        actual.push(format!("{n}: {got}"));
    }
    let expected: Vec<String> = BCOM_O2_TABLE.iter().enumerate().map(|(i, t)| format!("{}: {t}", i + 1)).collect();
    Ok(Check {
        passed: witnesses.is_empty(),
        summary: "pi_n(B_com O(2)) matches the table for n = 1..10".into(),
        expected: expected.join("; "),
        actual: actual.join("; "),
        witnesses,
    })
}

static SCENARIOS: &[Scenario] = &[
    Scenario {
        name: "appendix-a1-kernel",
        kind: ScenarioKind::KernelEquals,
        description: "Kernel of the map into the cohomology of BS^1 v (S^2 x_W BT_2), as in the Singular listing",
        statement: "_[4]=c1*y1-2*y2",
        procedure: appendix_a1,
    },
    Scenario {
        name: "appendix-a2-kernel",
        kind: ScenarioKind::KernelEquals,
        description: "Kernel of the map into the cohomology of BSO(2) v (O(2) x_{D_8} BD_4), 22 generators",
        statement: "_[13]=p1*b2+W2*b3, _[19]=r^2-4*p1",
        procedure: appendix_a2,
    },
    Scenario {
        name: "appendix-a3-kernel",
        kind: ScenarioKind::KernelEquals,
        description: "Kernel for the integral cohomology of B_com SO(3)_1",
        statement: "_[1]=2*w ... _[4]=w^3",
        procedure: appendix_a3,
    },
    Scenario {
        name: "bcom-u2-integral-presentation",
        kind: ScenarioKind::KernelEquals,
        description: "The restriction f(c1) = 2t + c~1, ... to the wedge has kernel the U(2) relation ideal",
        statement: "(2y_2-y_1c_1, y_1^2, y_1y_2, y_2^2)",
        procedure: u2_presentation,
    },
    Scenario {
        name: "bcom-su2-from-u2",
        kind: ScenarioKind::QuotientKernelEquals,
        description: "H*(B_com U(2)) -> H*(B_com SU(2)) is onto with kernel generated by c1",
        statement: "kernel generated by the class c_1",
        procedure: su2_from_u2,
    },
    Scenario {
        name: "ecom-su2-from-bcom-su2",
        kind: ScenarioKind::QuotientKernelEquals,
        description: "H*(B_com SU(2)) -> H*(E_com SU(2)) has kernel generated by c2",
        statement: "(2x_2, y_1^2, y_1x_2, x_2^2)",
        procedure: esu2_from_su2,
    },
    Scenario {
        name: "bcom-su2-graded-groups",
        kind: ScenarioKind::GradedGroupsEqual,
        description: "Integral cohomology groups of B_com SU(2) through degree 16",
        statement: "Z + Z in degrees 0 mod 4, Z/2 in degrees 2 mod 4",
        procedure: su2_groups,
    },
    Scenario {
        name: "bcom-o2-rational",
        kind: ScenarioKind::HilbertDimsEqual,
        description: "Rational cohomology of B_com O(2) is QQ[r] with r in degree 2",
        statement: "H*(B_com O(2); QQ) = QQ[r]",
        procedure: rational_o2,
    },
    Scenario {
        name: "bcom-u2-mv-integral",
        kind: ScenarioKind::MvKernelMatches,
        description: "ker(pi_2* - i*) matches the U(2) presentation degreewise",
        statement: "i*(c~1) = 2t",
        procedure: u2_mv,
    },
    Scenario {
        name: "bcom-o2-mv-integral",
        kind: ScenarioKind::MvKernelMatches,
        description: "ker(q* - i*) matches the O(2) presentation degreewise",
        statement: "i*({x}) = tz, W1 -> (0, W~1)",
        procedure: o2_mv,
    },
    Scenario {
        name: "bcom-o2-mv-mod2",
        kind: ScenarioKind::MvDimensionBookkeeping,
        description: "Mod 2 cohomology of B_com O(2) splits as ker(q* - i*) plus the image of delta",
        statement: "ker(q*-i*) + im(delta)",
        procedure: o2_mv_mod2,
    },
    Scenario {
        name: "steenrod-so3",
        kind: ScenarioKind::SteenrodVerify,
        description: "Steenrod squares on H*(B_com SO(3)_1; F2)",
        statement: "Sq(y1) = y1 + w2 y1",
        procedure: steenrod_so3,
    },
    Scenario {
        name: "steenrod-u2",
        kind: ScenarioKind::SteenrodVerify,
        description: "Steenrod squares on H*(B_com U(2); F2)",
        statement: "Sq(y2) = y2 + c2 y1 + c1^2 y2",
        procedure: steenrod_u2,
    },
    Scenario {
        name: "steenrod-su2",
        kind: ScenarioKind::SteenrodVerify,
        description: "Steenrod squares on H*(B_com SU(2); F2)",
        statement: "Sq(x1) = x1 + x2",
        procedure: steenrod_su2,
    },
    Scenario {
        name: "steenrod-o2",
        kind: ScenarioKind::SteenrodVerify,
        description: "Steenrod squares on H*(B_com O(2); F2)",
        statement: "Sq(s) = s + w2 r + w1^2 s",
        procedure: steenrod_o2,
    },
    Scenario {
        name: "tautological-obstruction",
        kind: ScenarioKind::MembershipHolds,
        description: "r^2 = 4 p1 in H*(B_com O(2); Z) and r spans rational H^2",
        statement: "(g*(r))^2 = 4 p_1",
        procedure: tautological,
    },
    Scenario {
        name: "hilton-bcom-o2",
        kind: ScenarioKind::HiltonTableMatches,
        description: "Homotopy groups of B_com O(2) through degree 10 from Hilton's theorem",
        statement: "pi_*(S^2 v S^2 v S^3) + pi_*(BO(2))",
        procedure: hilton_table,
    },
];

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtin_catalog_parses() {
        let cat = Catalog::builtin().unwrap();
        for (name, p) in cat.presentations() {
            assert!(p.check_homogeneous().is_ok(), "{name}");
        }
        assert!(cat.source().warnings.is_empty());
    }

    #[test]
    fn inventory() {
        let names: Vec<&str> = list_scenarios().iter().map(|s| s.name).collect();
        assert!(names.len() >= 16);
        for n in ["appendix-a1-kernel", "appendix-a2-kernel", "appendix-a3-kernel", "steenrod-o2", "hilton-bcom-o2"] {
            assert!(names.contains(&n));
        }
        let mut sorted = names.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(sorted.len(), names.len());
        assert!(matches!(run_scenario("nope"), Err(Error::UnknownScenario(_))));
    }

    #[test]
    fn su2_pattern_values() {
        assert_eq!(su2_pattern(0), GroupSlice::free(1));
        assert_eq!(su2_pattern(2), GroupSlice::zero());
        assert_eq!(su2_pattern(6), GroupSlice::new(0, &[2]));
        assert_eq!(su2_pattern(16), GroupSlice::free(2));
        assert_eq!(su2_pattern(5), GroupSlice::zero());
    }

    #[test]
    fn overrides_replace_by_name() {
        let cat = Catalog::builtin().unwrap();
        let o = parse_source("ring BS1 = ZZ [t:4];").unwrap();
        let c2 = cat.with_overrides(&o).unwrap();
        assert_eq!(c2.ring("BS1").unwrap().ambient().weights(), &[4]);
        let unknown = parse_source("ring Nope = ZZ [t:4];").unwrap();
        assert!(cat.with_overrides(&unknown).is_err());
        let wrong_kind = parse_source("ring A1f = ZZ [t:4];").unwrap();
        assert!(cat.with_overrides(&wrong_kind).is_err());
    }
}
