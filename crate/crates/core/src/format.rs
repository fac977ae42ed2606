//! The `.gcr` text format: rings, maps, ideals and Steenrod actions.
//!
//! ```text
//! ring P = ZZ [c1:2, c2:4, y1:4, y2:6];
//! ring R = ZZ [t:2, a1:2] / (t*a1);
//! map f : P -> R = (2*t+a1, t^2, 0, 0);
//! ideal I in P = (c1*y1 - 2*y2);
//! sq A on S = (x -> x + x^2);
//! ```
//!
//! Names must be declared before use and may be declared only once. Printing
//! a parsed file and parsing it again gives back the same declarations.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;
use pest::error::LineColLocation;
use pest::iterators::Pair;
use pest::Parser;
use pest_derive::Parser;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::groebner::Ideal;
use crate::ring::{Coeff, CoefficientDomain, GradedRing, Monomial, Polynomial, Variable};
use crate::ringmap::{QuotientPresentation, RingMap};
use crate::steenrod::SteenrodAction;

#[derive(Parser)]
#[grammar = "gcr.pest"]
struct GcrParser;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Severity {
    Error,
    Warning,
}

/// A message tied to a 1-based line and column.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Diagnostic {
    pub severity: Severity,
    pub message: String,
    pub line: usize,
    pub col: usize,
}

impl Diagnostic {
    fn error(message: impl Into<String>, (line, col): (usize, usize)) -> Self {
        Diagnostic {
            severity: Severity::Error,
            message: message.into(),
            line,
            col,
        }
    }

    fn warning(message: impl Into<String>, (line, col): (usize, usize)) -> Self {
        Diagnostic {
            severity: Severity::Warning,
            message: message.into(),
            line,
            col,
        }
    }
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kind = match self.severity {
            Severity::Error => "error",
            Severity::Warning => "warning",
        };
        write!(f, "{}:{}: {kind}: {}", self.line, self.col, self.message)
    }
}

impl std::error::Error for Diagnostic {}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DeclarationKind {
    Ring(QuotientPresentation),
    Map {
        source: String,
        target: String,
        map: RingMap,
    },
    Ideal {
        ring: String,
        ideal: Ideal,
    },
    Sq {
        ring: String,
        action: SteenrodAction,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Declaration {
    pub name: String,
    pub line: usize,
    pub kind: DeclarationKind,
}

/// A parsed and resolved `.gcr` file.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SourceFile {
    pub path: Option<String>,
    pub declarations: Vec<Declaration>,
    pub warnings: Vec<Diagnostic>,
}

impl SourceFile {
    fn find(&self, name: &str) -> Option<&DeclarationKind> {
        self.declarations.iter().find(|d| d.name == name).map(|d| &d.kind)
    }

    fn lookup_error(&self, what: &str, name: &str) -> Error {
        Error::Parse(format!("no {what} named `{name}`"))
    }

    pub fn ring(&self, name: &str) -> Result<&QuotientPresentation> {
        match self.find(name) {
            Some(DeclarationKind::Ring(p)) => Ok(p),
            _ => Err(self.lookup_error("ring", name)),
        }
    }

    pub fn map(&self, name: &str) -> Result<&RingMap> {
        match self.find(name) {
            Some(DeclarationKind::Map { map, .. }) => Ok(map),
            _ => Err(self.lookup_error("map", name)),
        }
    }

    pub fn ideal(&self, name: &str) -> Result<&Ideal> {
        match self.find(name) {
            Some(DeclarationKind::Ideal { ideal, .. }) => Ok(ideal),
            _ => Err(self.lookup_error("ideal", name)),
        }
    }

    pub fn action(&self, name: &str) -> Result<&SteenrodAction> {
        match self.find(name) {
            Some(DeclarationKind::Sq { action, .. }) => Ok(action),
            _ => Err(self.lookup_error("sq action", name)),
        }
    }

    /// Canonical text for the whole file.
    pub fn print(&self) -> String {
        let mut out = String::new();
        for d in &self.declarations {
            out.push_str(&print_declaration(d));
            out.push('\n');
        }
        out
    }
}

fn join<T: fmt::Display>(items: &[T]) -> String {
    items.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ")
}

fn print_ring(name: &str, p: &QuotientPresentation) -> String {
    let r = p.ambient();
    let vars: Vec<String> = r.variables().iter().map(|v| format!("{}:{}", v.name, v.degree)).collect();
    let mut s = format!("ring {name} = {} [{}]", r.domain(), vars.join(", "));
    if !p.is_free() {
        s.push_str(&format!(" / ({})", join(p.relations().generators())));
    }
    s.push(';');
    s
}

fn print_declaration(d: &Declaration) -> String {
    match &d.kind {
        DeclarationKind::Ring(p) => print_ring(&d.name, p),
        DeclarationKind::Map { source, target, map } => {
            format!("map {} : {source} -> {target} = ({});", d.name, join(map.images()))
        }
        DeclarationKind::Ideal { ring, ideal } => {
            format!("ideal {} in {ring} = ({});", d.name, join(ideal.generators()))
        }
        DeclarationKind::Sq { ring, action } => {
            let vars = action.presentation().ambient().variables();
            let entries: Vec<String> = vars
                .iter()
                .zip(action.squares())
                .map(|(v, s)| format!("{} -> {s}", v.name))
                .collect();
            format!("sq {} on {ring} = ({});", d.name, entries.join(", "))
        }
    }
}

/// Prints one ring in the file syntax.
pub fn print_presentation(name: &str, p: &QuotientPresentation) -> String {
    print_ring(name, p)
}

fn span_of(pair: &Pair<Rule>) -> (usize, usize) {
    pair.as_span().start_pos().line_col()
}

fn pest_diagnostic(e: pest::error::Error<Rule>) -> Diagnostic {
    let pos = match e.line_col {
        LineColLocation::Pos(p) => p,
        LineColLocation::Span(p, _) => p,
    };
    let message = match &e.variant {
        pest::error::ErrorVariant::ParsingError { positives, .. } if !positives.is_empty() => {
            let names: Vec<String> = positives.iter().map(|r| rule_name(*r)).collect();
            format!("syntax error: expected {}", names.join(" or "))
        }
        pest::error::ErrorVariant::CustomError { message } => message.clone(),
        _ => "syntax error".to_string(),
    };
    Diagnostic::error(message, pos)
}

fn rule_name(r: Rule) -> String {
    match r {
        Rule::ident => "identifier".into(),
        Rule::int => "integer".into(),
        Rule::expr | Rule::term | Rule::factor => "expression".into(),
        Rule::domain | Rule::zz | Rule::qq | Rule::fp => "coefficient domain (ZZ, QQ or F<p>)".into(),
        Rule::EOI => "end of input".into(),
        Rule::ring_stmt | Rule::map_stmt | Rule::sq_stmt | Rule::ideal_stmt => "declaration".into(),
        other => format!("{other:?}"),
    }
}

// ---------------------------------------------------------------------------
// Expressions

fn eval_expr(ring: &GradedRing, pair: Pair<Rule>) -> std::result::Result<Polynomial, Diagnostic> {
    debug_assert_eq!(pair.as_rule(), Rule::expr);
    let mut acc = ring.zero();
    let mut negate = false;
    for p in pair.into_inner() {
        match p.as_rule() {
            Rule::neg => negate = true,
            Rule::pos => negate = false,
            Rule::term => {
                let t = eval_term(ring, p)?;
                acc = if negate { &acc - &t } else { &acc + &t };
                negate = false;
            }
            _ => unreachable!("unexpected rule in expression"),
        }
    }
    Ok(acc)
}

fn eval_term(ring: &GradedRing, pair: Pair<Rule>) -> std::result::Result<Polynomial, Diagnostic> {
    let mut acc = ring.one();
    for f in pair.into_inner() {
        acc = &acc * &eval_factor(ring, f)?;
    }
    Ok(acc)
}

fn eval_factor(ring: &GradedRing, pair: Pair<Rule>) -> std::result::Result<Polynomial, Diagnostic> {
    let mut inner = pair.into_inner();
    let atom = inner.next().expect("factor has an atom");
    let base = eval_atom(ring, atom)?;
    match inner.next() {
        Some(e) => {
            let pos = span_of(&e);
            let n: u32 = e
                .as_str()
                .parse()
                .map_err(|_| Diagnostic::error("exponent too large", pos))?;
            Ok(base.pow(n))
        }
        None => Ok(base),
    }
}

fn eval_atom(ring: &GradedRing, pair: Pair<Rule>) -> std::result::Result<Polynomial, Diagnostic> {
    let pos = span_of(&pair);
    match pair.as_rule() {
        Rule::int => {
            let n: BigInt = pair.as_str().parse().expect("digits");
            Ok(ring.constant(n))
        }
        Rule::rational => {
            let (a, b) = pair.as_str().split_once('/').expect("rational literal");
            let a: BigInt = a.parse().expect("digits");
            let b: BigInt = b.parse().expect("digits");
            if b.is_zero() {
                return Err(Diagnostic::error("division by zero", pos));
            }
            if ring.domain() != &CoefficientDomain::Rationals {
                return Err(Diagnostic::error(
                    format!("fractions are only allowed over QQ, not {}", ring.domain()),
                    pos,
                ));
            }
            Ok(Polynomial::monomial(ring, Monomial::one(ring.nvars()), Coeff::new(a, b)))
        }
        Rule::ident => ring
            .var(pair.as_str())
            .map_err(|_| Diagnostic::error(format!("unknown variable `{}`", pair.as_str()), pos)),
        Rule::expr => eval_expr(ring, pair),
        _ => unreachable!("unexpected atom"),
    }
}

/// Parses a single polynomial in the given ring.
pub fn parse_polynomial(ring: &GradedRing, text: &str) -> Result<Polynomial> {
    let mut pairs = GcrParser::parse(Rule::poly_input, text)
        .map_err(|e| Error::Parse(pest_diagnostic(e).to_string()))?;
    let expr = pairs.next().expect("expression");
    eval_expr(ring, expr).map_err(|d| Error::Parse(d.to_string()))
}

// ---------------------------------------------------------------------------
// Files

struct Resolver {
    file: SourceFile,
    lines: HashMap<String, usize>,
}

impl Resolver {
    fn declare(&mut self, name: &str, pos: (usize, usize)) -> std::result::Result<(), Diagnostic> {
        if let Some(prev) = self.lines.get(name) {
            return Err(Diagnostic::error(
                format!("`{name}` is already declared on line {prev}"),
                pos,
            ));
        }
        self.lines.insert(name.to_string(), pos.0);
        Ok(())
    }

    fn ring(&self, pair: &Pair<Rule>) -> std::result::Result<QuotientPresentation, Diagnostic> {
        self.file
            .ring(pair.as_str())
            .cloned()
            .map_err(|_| Diagnostic::error(format!("unknown ring `{}`", pair.as_str()), span_of(pair)))
    }

    fn push(&mut self, name: String, line: usize, kind: DeclarationKind) {
        self.file.declarations.push(Declaration { name, line, kind });
    }
}

/// A polynomial with the line and column where it was written.
type Located = (Polynomial, (usize, usize));

fn exprs(ring: &GradedRing, list: Pair<Rule>) -> std::result::Result<Vec<Located>, Diagnostic> {
    list.into_inner()
        .map(|e| {
            let pos = span_of(&e);
            eval_expr(ring, e).map(|p| (p, pos))
        })
        .collect()
}

fn parse_domain(pair: Pair<Rule>) -> std::result::Result<CoefficientDomain, Diagnostic> {
    let pos = span_of(&pair);
    let inner = pair.into_inner().next().expect("domain kind");
    match inner.as_rule() {
        Rule::zz => Ok(CoefficientDomain::Integers),
        Rule::qq => Ok(CoefficientDomain::Rationals),
        Rule::fp => {
            let p: u64 = inner.as_str()[1..]
                .parse()
                .map_err(|_| Diagnostic::error("characteristic too large", pos))?;
            CoefficientDomain::prime_field(p).map_err(|e| Diagnostic::error(e.to_string(), pos))
        }
        _ => unreachable!(),
    }
}

fn ring_stmt(res: &mut Resolver, pair: Pair<Rule>) -> std::result::Result<(), Diagnostic> {
    let mut it = pair.into_inner();
    it.next(); // keyword
    let name = it.next().unwrap();
    let pos = span_of(&name);
    res.declare(name.as_str(), pos)?;
    let domain = parse_domain(it.next().unwrap())?;
    let mut vars = Vec::new();
    for v in it.next().unwrap().into_inner() {
        let vpos = span_of(&v);
        let mut vi = v.into_inner();
        let vname = vi.next().unwrap().as_str().to_string();
        let deg: u32 = vi
            .next()
            .unwrap()
            .as_str()
            .parse()
            .map_err(|_| Diagnostic::error("degree too large", vpos))?;
        vars.push((Variable::new(vname, deg), vpos));
    }
    for (v, vpos) in &vars {
        if v.degree == 0 {
            return Err(Diagnostic::error(format!("variable `{}` must have degree at least 1", v.name), *vpos));
        }
        if vars.iter().filter(|(w, _)| w.name == v.name).count() > 1 {
            return Err(Diagnostic::error(format!("duplicate variable `{}`", v.name), *vpos));
        }
    }
    let ring = GradedRing::new(domain, vars.into_iter().map(|(v, _)| v).collect())
        .map_err(|e| Diagnostic::error(e.to_string(), pos))?;
    let mut rels = Vec::new();
    if let Some(q) = it.next() {
        let list = q.into_inner().next().unwrap();
        for (p, ppos) in exprs(&ring, list)? {
            if !p.weighted_degree().is_homogeneous() {
                res.file
                    .warnings
                    .push(Diagnostic::warning(format!("relation `{p}` is not homogeneous"), ppos));
            }
            rels.push(p);
        }
    }
    let pres = QuotientPresentation::new(&ring, rels).map_err(|e| Diagnostic::error(e.to_string(), pos))?;
    res.push(name.as_str().to_string(), pos.0, DeclarationKind::Ring(pres));
    Ok(())
}

fn map_stmt(res: &mut Resolver, pair: Pair<Rule>) -> std::result::Result<(), Diagnostic> {
    let mut it = pair.into_inner();
    it.next();
    let name = it.next().unwrap();
    let pos = span_of(&name);
    res.declare(name.as_str(), pos)?;
    let src_name = it.next().unwrap();
    let tgt_name = it.next().unwrap();
    let source = res.ring(&src_name)?;
    let target = res.ring(&tgt_name)?;
    let list = it.next().unwrap();
    let list_pos = span_of(&list);
    let images: Vec<Polynomial> = exprs(target.ambient(), list)?.into_iter().map(|(p, _)| p).collect();
    let map = RingMap::new(&source, &target, images).map_err(|e| {
        let msg = match e {
            Error::Arity { expected, found } => format!(
                "arity error: `{}` has {expected} variables but {found} image(s) were given",
                src_name.as_str()
            ),
            other => other.to_string(),
        };
        Diagnostic::error(msg, list_pos)
    })?;
    res.push(
        name.as_str().to_string(),
        pos.0,
        DeclarationKind::Map {
            source: src_name.as_str().to_string(),
            target: tgt_name.as_str().to_string(),
            map,
        },
    );
    Ok(())
}

fn ideal_stmt(res: &mut Resolver, pair: Pair<Rule>) -> std::result::Result<(), Diagnostic> {
    let mut it = pair.into_inner();
    it.next();
    let name = it.next().unwrap();
    let pos = span_of(&name);
    res.declare(name.as_str(), pos)?;
    it.next(); // `in`
    let ring_name = it.next().unwrap();
    let pres = res.ring(&ring_name)?;
    let gens = exprs(pres.ambient(), it.next().unwrap())?.into_iter().map(|(p, _)| p).collect();
    let ideal = Ideal::new(pres.ambient(), gens).map_err(|e| Diagnostic::error(e.to_string(), pos))?;
    res.push(
        name.as_str().to_string(),
        pos.0,
        DeclarationKind::Ideal {
            ring: ring_name.as_str().to_string(),
            ideal,
        },
    );
    Ok(())
}

fn sq_stmt(res: &mut Resolver, pair: Pair<Rule>) -> std::result::Result<(), Diagnostic> {
    let mut it = pair.into_inner();
    it.next();
    let name = it.next().unwrap();
    let pos = span_of(&name);
    res.declare(name.as_str(), pos)?;
    it.next(); // `on`
    let ring_name = it.next().unwrap();
    let pres = res.ring(&ring_name)?;
    let ring = pres.ambient().clone();
    let mut entries = Vec::new();
    for entry in it {
        let mut e = entry.into_inner();
        let var = e.next().unwrap();
        if ring.index_of(var.as_str()).is_err() {
            return Err(Diagnostic::error(format!("unknown variable `{}`", var.as_str()), span_of(&var)));
        }
        let poly = eval_expr(&ring, e.next().unwrap())?;
        entries.push((var.as_str().to_string(), poly));
    }
    let action = SteenrodAction::from_named(&pres, entries).map_err(|e| Diagnostic::error(e.to_string(), pos))?;
    res.push(
        name.as_str().to_string(),
        pos.0,
        DeclarationKind::Sq {
            ring: ring_name.as_str().to_string(),
            action,
        },
    );
    Ok(())
}

/// Parses and resolves a whole file. The first error aborts parsing.
pub fn parse_source(text: &str) -> std::result::Result<SourceFile, Diagnostic> {
    let mut pairs = GcrParser::parse(Rule::file, text).map_err(pest_diagnostic)?;
    let file = pairs.next().expect("file rule");
    let mut res = Resolver {
        file: SourceFile::default(),
        lines: HashMap::new(),
    };
    for stmt in file.into_inner() {
        match stmt.as_rule() {
            Rule::ring_stmt => ring_stmt(&mut res, stmt)?,
            Rule::map_stmt => map_stmt(&mut res, stmt)?,
            Rule::ideal_stmt => ideal_stmt(&mut res, stmt)?,
            Rule::sq_stmt => sq_stmt(&mut res, stmt)?,
            Rule::EOI => {}
            _ => unreachable!("unexpected statement"),
        }
    }
    Ok(res.file)
}

/// Reads and parses a file from disk, remembering its path.
pub fn parse_file(path: &std::path::Path) -> std::result::Result<SourceFile, Diagnostic> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Diagnostic::error(format!("cannot read {}: {e}", path.display()), (0, 0)))?;
    let mut file = parse_source(&text)?;
    file.path = Some(path.display().to_string());
    Ok(file)
}

#[cfg(test)]
mod tests {
    use super::*;

    const A1: &str = "ring P = ZZ [c1:2,c2:4,y1:4,y2:6];
ring R = ZZ [t:2,u:2,a1:2,a2:4,c:4] / (t*u,t*a1,t*a2,t*c,c^2,u^2,2*u,c*u,a1*u);
map f : P -> R = (2*t+a1, t^2+a2, 2*c, a1*c);";

    #[test]
    fn appendix_transcription_parses() {
        let f = parse_source(A1).unwrap();
        assert_eq!(f.declarations.len(), 3);
        assert_eq!(f.map("f").unwrap().images()[0].to_string(), "2*t + a1");
        assert!(f.warnings.is_empty());
    }

    #[test]
    fn empty_file() {
        assert!(parse_source("").unwrap().declarations.is_empty());
        assert!(parse_source("  // nothing here\n# nor here\n").unwrap().declarations.is_empty());
    }

    #[test]
    fn arity_error_names_the_ring() {
        let text = format!("{A1}\nmap g : P -> R = (t);");
        let err = parse_source(&text).unwrap_err();
        assert!(err.message.contains("arity"), "{err}");
        assert!(err.message.contains("4 variables"), "{err}");
        assert_eq!(err.line, 4);
    }

    #[test]
    fn errors_carry_spans() {
        let err = parse_source("ring P = ZZ [x:1];\nring P = ZZ [y:1];").unwrap_err();
        assert_eq!((err.line, err.col), (2, 6));
        assert!(err.message.contains("already declared"));

        let err = parse_source("ring P = ZZ [x:1] / (x + y);").unwrap_err();
        assert!(err.message.contains("unknown variable `y`"));
        assert_eq!((err.line, err.col), (1, 26));

        let err = parse_source("ring P = ZZ [x:1]\nring Q = ZZ [y:1];").unwrap_err();
        assert_eq!(err.line, 2);

        let err = parse_source("map f : A -> B = ();").unwrap_err();
        assert!(err.message.contains("unknown ring `A`"));

        assert!(parse_source("ring P = F4 [x:1];").unwrap_err().message.contains("not prime"));
        assert!(parse_source("ring P = ZZ [x:0];").is_err());
        assert!(parse_source("ring P = ZZ [x:1, x:2];").is_err());
    }

    #[test]
    fn inhomogeneous_relation_warns() {
        let f = parse_source("ring P = F2 [x:1, y:2] / (x + y);").unwrap();
        assert_eq!(f.warnings.len(), 1);
        assert_eq!(f.warnings[0].severity, Severity::Warning);
    }

    #[test]
    fn expressions() {
        let r = GradedRing::with_vars(CoefficientDomain::Integers, &[("x", 1), ("y", 2)]).unwrap();
        let p = parse_polynomial(&r, "-(x + 1)^2 + 2*x*(y - 3)").unwrap();
        assert_eq!(p.to_string(), "2*x*y - x^2 - 8*x - 1");
        assert!(parse_polynomial(&r, "2x").is_err());
        assert!(parse_polynomial(&r, "1/2*x").is_err());
        let q = r.with_domain(CoefficientDomain::Rationals);
        assert_eq!(parse_polynomial(&q, "3/2*x - 1/2").unwrap().to_string(), "3/2*x - 1/2");
        let f3 = r.with_domain(CoefficientDomain::PrimeField(3));
        assert_eq!(parse_polynomial(&f3, "4*x - 1").unwrap().to_string(), "x + 2");
    }

    #[test]
    fn keywords_need_boundaries() {
        let f = parse_source("ring ringo = ZZ [inx:1, on:2];\nideal I in ringo = (inx*on);").unwrap();
        assert_eq!(f.declarations.len(), 2);
        assert!(parse_source("ringP = ZZ [x:1];").is_err());
    }

    #[test]
    fn print_then_parse_is_identity() {
        let text = format!(
            "{A1}\nideal K in P = (2*y2 - y1*c1, y1^2);\nring S = F2 [x:1, y:2] / (x^2 + y);\nsq A on S = (x -> x + x^2, y -> y + x*y);"
        );
        let f = parse_source(&text).unwrap();
        let printed = f.print();
        let g = parse_source(&printed).unwrap();
        assert_eq!(f.declarations, g.declarations);
        assert_eq!(printed, g.print());
    }
}
