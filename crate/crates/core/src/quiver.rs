//! Quivers with length-two monomial relations and their path combinatorics.
//!
//! A [`Presentation`] is the raw data `kQ/I`. Once it passes
//! [`validate_gentle`] it can be wrapped in an [`Algebra`], which caches the
//! monomial path basis of every indecomposable projective `P_v = e_v A`.
//! Paths are written left to right, so `ab` means "first `a`, then `b`".

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;
use std::ops::Deref;

use serde::Serialize;

use crate::error::{Error, Result};

pub type VertexId = usize;
pub type ArrowId = usize;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Arrow {
    pub name: String,
    pub source: VertexId,
    pub target: VertexId,
}

/// A nonzero path of `kQ/I`. A trivial path has no arrows and
/// `source == target`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Path {
    source: VertexId,
    target: VertexId,
    arrows: Vec<ArrowId>,
}

impl Path {
    pub fn trivial(v: VertexId) -> Self {
        Path { source: v, target: v, arrows: Vec::new() }
    }

    pub fn source(&self) -> VertexId {
        self.source
    }

    pub fn target(&self) -> VertexId {
        self.target
    }

    pub fn arrows(&self) -> &[ArrowId] {
        &self.arrows
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.arrows.is_empty()
    }

    pub fn first_arrow(&self) -> Option<ArrowId> {
        self.arrows.first().copied()
    }

    pub fn last_arrow(&self) -> Option<ArrowId> {
        self.arrows.last().copied()
    }
}

/// The data `(Q, I)`: vertices, arrows and length-two relations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Presentation {
    name: String,
    vertices: Vec<String>,
    arrows: Vec<Arrow>,
    relations: BTreeSet<(ArrowId, ArrowId)>,
}

impl Presentation {
    pub fn new(name: impl Into<String>) -> Self {
        Presentation {
            name: name.into(),
            vertices: Vec::new(),
            arrows: Vec::new(),
            relations: BTreeSet::new(),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn relations(&self) -> impl Iterator<Item = (ArrowId, ArrowId)> + '_ {
        self.relations.iter().copied()
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn add_vertex(&mut self, name: &str) -> Result<VertexId> {
        if self.vertex_id(name).is_some() {
            return Err(Error::Duplicate(name.to_string()));
        }
        self.vertices.push(name.to_string());
        Ok(self.vertices.len() - 1)
    }

    pub fn add_arrow(&mut self, name: &str, source: &str, target: &str) -> Result<ArrowId> {
        if self.arrow_id(name).is_some() || self.vertex_id(name).is_some() {
            return Err(Error::Duplicate(name.to_string()));
        }
        let source = self.vertex_id(source).ok_or_else(|| Error::UnknownVertex(source.into()))?;
        let target = self.vertex_id(target).ok_or_else(|| Error::UnknownVertex(target.into()))?;
        self.arrows.push(Arrow { name: name.to_string(), source, target });
        Ok(self.arrows.len() - 1)
    }

    /// Declares the length-two path `first second` to lie in `I`.
    pub fn add_relation(&mut self, first: &str, second: &str) -> Result<()> {
        let a = self.arrow_id(first).ok_or_else(|| Error::UnknownArrow(first.into()))?;
        let b = self.arrow_id(second).ok_or_else(|| Error::UnknownArrow(second.into()))?;
        if self.arrows[a].target != self.arrows[b].source {
            return Err(Error::NotComposable { first: first.into(), second: second.into() });
        }
        self.relations.insert((a, b));
        Ok(())
    }

    pub fn vertex_id(&self, name: &str) -> Option<VertexId> {
        self.vertices.iter().position(|v| v == name)
    }

    pub fn arrow_id(&self, name: &str) -> Option<ArrowId> {
        self.arrows.iter().position(|a| a.name == name)
    }

    pub fn vertex_name(&self, v: VertexId) -> &str {
        &self.vertices[v]
    }

    pub fn arrow_name(&self, a: ArrowId) -> &str {
        &self.arrows[a].name
    }

    pub fn arrow(&self, a: ArrowId) -> &Arrow {
        &self.arrows[a]
    }

    pub fn is_relation(&self, a: ArrowId, b: ArrowId) -> bool {
        self.relations.contains(&(a, b))
    }

    pub fn out_arrows(&self, v: VertexId) -> Vec<ArrowId> {
        (0..self.arrows.len()).filter(|&a| self.arrows[a].source == v).collect()
    }

    pub fn in_arrows(&self, v: VertexId) -> Vec<ArrowId> {
        (0..self.arrows.len()).filter(|&a| self.arrows[a].target == v).collect()
    }

    /// The arrow `b` with `ab` in `I`, if any (unique for gentle algebras).
    pub fn relation_successor(&self, a: ArrowId) -> Option<ArrowId> {
        let t = self.arrows[a].target;
        self.out_arrows(t).into_iter().find(|&b| self.is_relation(a, b))
    }

    /// The arrow `b` with `ab` nonzero, if any (unique for gentle algebras).
    pub fn composable_successor(&self, a: ArrowId) -> Option<ArrowId> {
        let t = self.arrows[a].target;
        self.out_arrows(t).into_iter().find(|&b| !self.is_relation(a, b))
    }

    /// Builds a nonzero path from arrow ids, checking composability and
    /// the absence of relation subwords.
    pub fn path(&self, arrows: &[ArrowId]) -> Result<Path> {
        let Some(&first) = arrows.first() else {
            return Err(Error::ZeroPath("empty arrow list".into()));
        };
        for w in arrows.windows(2) {
            let (a, b) = (w[0], w[1]);
            if self.arrows[a].target != self.arrows[b].source {
                return Err(Error::NotComposable {
                    first: self.arrow_name(a).into(),
                    second: self.arrow_name(b).into(),
                });
            }
            if self.is_relation(a, b) {
                return Err(Error::ZeroPath(self.arrow_names(arrows)));
            }
        }
        Ok(Path {
            source: self.arrows[first].source,
            target: self.arrows[*arrows.last().unwrap()].target,
            arrows: arrows.to_vec(),
        })
    }

    pub fn path_by_names(&self, names: &[&str]) -> Result<Path> {
        let ids = names
            .iter()
            .map(|n| self.arrow_id(n).ok_or_else(|| Error::UnknownArrow((*n).into())))
            .collect::<Result<Vec<_>>>()?;
        self.path(&ids)
    }

    pub fn arrow_path(&self, a: ArrowId) -> Path {
        Path { source: self.arrows[a].source, target: self.arrows[a].target, arrows: vec![a] }
    }

    fn arrow_names(&self, arrows: &[ArrowId]) -> String {
        arrows.iter().map(|&a| self.arrow_name(a)).collect::<Vec<_>>().join(".")
    }

    /// Dot-separated arrow names; trivial paths print as `e_<vertex>`.
    pub fn path_name(&self, p: &Path) -> String {
        if p.is_trivial() {
            format!("e_{}", self.vertex_name(p.source))
        } else {
            self.arrow_names(&p.arrows)
        }
    }

    /// Product `pq` in `kQ/I`: `Ok(None)` is the zero element.
    pub fn compose(&self, p: &Path, q: &Path) -> Result<Option<Path>> {
        if p.target != q.source {
            return Err(Error::NotComposable { first: self.path_name(p), second: self.path_name(q) });
        }
        if p.is_trivial() {
            return Ok(Some(q.clone()));
        }
        if q.is_trivial() {
            return Ok(Some(p.clone()));
        }
        if self.is_relation(p.last_arrow().unwrap(), q.first_arrow().unwrap()) {
            return Ok(None);
        }
        let mut arrows = p.arrows.clone();
        arrows.extend_from_slice(&q.arrows);
        Ok(Some(Path { source: p.source, target: q.target, arrows }))
    }

    /// Renders the presentation back into the line-oriented text format.
    pub fn to_text(&self) -> String {
        let mut out = format!("algebra {}\nvertices {}\n", self.name, self.vertices.join(" "));
        for a in &self.arrows {
            out.push_str(&format!(
                "arrow {} : {} -> {}\n",
                a.name, self.vertices[a.source], self.vertices[a.target]
            ));
        }
        for &(a, b) in &self.relations {
            out.push_str(&format!("rel {} {}\n", self.arrow_name(a), self.arrow_name(b)));
        }
        out
    }
}

/// Parses the presentation text format:
///
/// ```text
/// algebra <name>
/// vertices <id> <id> ...
/// arrow <id> : <v> -> <w>
/// rel <arrow> <arrow>
/// ```
///
/// `#` starts a comment. Gentleness is not checked here.
pub fn parse_presentation(text: &str) -> Result<Presentation> {
    let mut pres: Option<Presentation> = None;
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let syntax = |message: &str| Error::Syntax { line: line_no, message: message.to_string() };
        let at_line = |e: Error| match e {
            Error::Syntax { .. } => e,
            other => Error::Syntax { line: line_no, message: other.to_string() },
        };
        let tokens: Vec<&str> = line.split_whitespace().collect();
        match tokens[0] {
            "algebra" => {
                if tokens.len() != 2 {
                    return Err(syntax("expected `algebra <name>`"));
                }
                if pres.is_some() {
                    return Err(syntax("duplicate `algebra` header"));
                }
                pres = Some(Presentation::new(tokens[1]));
            }
            keyword @ ("vertices" | "arrow" | "rel") => {
                let p = pres.as_mut().ok_or_else(|| syntax("`algebra <name>` must come first"))?;
                match keyword {
                    "vertices" => {
                        if tokens.len() < 2 {
                            return Err(syntax("expected at least one vertex id"));
                        }
                        for v in &tokens[1..] {
                            p.add_vertex(v).map_err(at_line)?;
                        }
                    }
                    "arrow" => {
                        if tokens.len() != 6 || tokens[2] != ":" || tokens[4] != "->" {
                            return Err(syntax("expected `arrow <id> : <v> -> <w>`"));
                        }
                        p.add_arrow(tokens[1], tokens[3], tokens[5]).map_err(at_line)?;
                    }
                    _ => {
                        if tokens.len() != 3 {
                            return Err(syntax("expected `rel <arrow> <arrow>`"));
                        }
                        p.add_relation(tokens[1], tokens[2]).map_err(at_line)?;
                    }
                }
            }
            other => return Err(syntax(&format!("unknown keyword `{other}`"))),
        }
    }
    pres.ok_or(Error::Syntax { line: 0, message: "missing `algebra <name>` header".into() })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Axiom {
    /// At most two arrows start (end) at each vertex.
    FanBound,
    /// At most one relation continuation on each side of an arrow.
    RelationContinuation,
    /// At most one nonzero continuation on each side of an arrow.
    CompositionContinuation,
    /// Relations are length-two monomials. Enforced by the type; never reported.
    QuadraticMonomial,
    /// No relation-free oriented cycle.
    FiniteDimension,
}

impl Axiom {
    pub fn number(self) -> Option<u8> {
        match self {
            Axiom::FanBound => Some(1),
            Axiom::RelationContinuation => Some(2),
            Axiom::CompositionContinuation => Some(3),
            Axiom::QuadraticMonomial => Some(4),
            Axiom::FiniteDimension => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub axiom: Axiom,
    pub vertices: Vec<String>,
    pub arrows: Vec<String>,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GentleReport {
    pub pass: bool,
    pub connected: bool,
    pub violations: Vec<Violation>,
}

/// Checks the gentle axioms and finite-dimensionality.
pub fn validate_gentle(p: &Presentation) -> GentleReport {
    let mut violations = Vec::new();
    let names = |arrows: &[ArrowId]| arrows.iter().map(|&a| p.arrow_name(a).to_string()).collect::<Vec<_>>();

    for v in 0..p.num_vertices() {
        for (arrows, side) in [(p.out_arrows(v), "start"), (p.in_arrows(v), "end")] {
            if arrows.len() > 2 {
                violations.push(Violation {
                    axiom: Axiom::FanBound,
                    vertices: vec![p.vertex_name(v).into()],
                    arrows: names(&arrows),
                    detail: format!("{} arrows {side} at {}", arrows.len(), p.vertex_name(v)),
                });
            }
        }
    }

    for a in 0..p.arrows().len() {
        let arrow = p.arrow(a);
        let before = p.in_arrows(arrow.source);
        let after = p.out_arrows(arrow.target);
        let rel_before: Vec<_> = before.iter().copied().filter(|&b| p.is_relation(b, a)).collect();
        let rel_after: Vec<_> = after.iter().copied().filter(|&b| p.is_relation(a, b)).collect();
        let free_before: Vec<_> = before.iter().copied().filter(|&b| !p.is_relation(b, a)).collect();
        let free_after: Vec<_> = after.iter().copied().filter(|&b| !p.is_relation(a, b)).collect();
        for (set, axiom, what) in [
            (rel_before, Axiom::RelationContinuation, "relations ending in"),
            (rel_after, Axiom::RelationContinuation, "relations starting with"),
            (free_before, Axiom::CompositionContinuation, "nonzero composites ending in"),
            (free_after, Axiom::CompositionContinuation, "nonzero composites starting with"),
        ] {
            if set.len() > 1 {
                let mut arrows = vec![arrow.name.clone()];
                arrows.extend(names(&set));
                violations.push(Violation {
                    axiom,
                    vertices: vec![],
                    arrows,
                    detail: format!("{} {what} {}", set.len(), arrow.name),
                });
            }
        }
    }

    if let Some(cycle) = relation_free_cycle(p) {
        violations.push(Violation {
            axiom: Axiom::FiniteDimension,
            vertices: vec![],
            arrows: names(&cycle),
            detail: "relation-free oriented cycle".into(),
        });
    }

    GentleReport { pass: violations.is_empty(), connected: is_connected(p), violations }
}

/// A cycle in the graph on arrows with edges `a -> b` whenever `ab` is a
/// nonzero composite.
fn relation_free_cycle(p: &Presentation) -> Option<Vec<ArrowId>> {
    let n = p.arrows().len();
    let succ: Vec<Vec<ArrowId>> = (0..n)
        .map(|a| p.out_arrows(p.arrow(a).target).into_iter().filter(|&b| !p.is_relation(a, b)).collect())
        .collect();
    // 0 = unvisited, 1 = on stack, 2 = done
    let mut state = vec![0u8; n];
    let mut stack_path = Vec::new();
    fn dfs(
        a: ArrowId,
        succ: &[Vec<ArrowId>],
        state: &mut [u8],
        path: &mut Vec<ArrowId>,
    ) -> Option<Vec<ArrowId>> {
        state[a] = 1;
        path.push(a);
        for &b in &succ[a] {
            if state[b] == 1 {
                let start = path.iter().position(|&x| x == b).unwrap();
                return Some(path[start..].to_vec());
            }
            if state[b] == 0 {
                if let Some(c) = dfs(b, succ, state, path) {
                    return Some(c);
                }
            }
        }
        path.pop();
        state[a] = 2;
        None
    }
    for a in 0..n {
        if state[a] == 0 {
            if let Some(c) = dfs(a, &succ, &mut state, &mut stack_path) {
                return Some(c);
            }
        }
    }
    None
}

fn is_connected(p: &Presentation) -> bool {
    let n = p.num_vertices();
    if n == 0 {
        return true;
    }
    let mut seen = vec![false; n];
    let mut queue = VecDeque::from([0]);
    seen[0] = true;
    while let Some(v) = queue.pop_front() {
        for a in p.arrows() {
            let next = if a.source == v {
                a.target
            } else if a.target == v {
                a.source
            } else {
                continue;
            };
            if !seen[next] {
                seen[next] = true;
                queue.push_back(next);
            }
        }
    }
    seen.into_iter().all(|s| s)
}

/// The maximal extensions attached to a path `p` of length at least one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MaximalExtension {
    /// The unique maximal path `p * hat` starting with `p`.
    pub tilde: Path,
    pub hat: Path,
    /// The maximal path from `s(p)` through the other outgoing arrow.
    pub check: Option<Path>,
}

impl MaximalExtension {
    pub fn check_len(&self) -> usize {
        self.check.as_ref().map_or(0, Path::len)
    }
}

/// A validated, finite-dimensional gentle algebra with its path basis cached.
#[derive(Debug, Clone)]
pub struct Algebra {
    pres: Presentation,
    basis: Vec<Vec<Path>>,
    index: Vec<HashMap<Vec<ArrowId>, usize>>,
}

impl Deref for Algebra {
    type Target = Presentation;

    fn deref(&self) -> &Presentation {
        &self.pres
    }
}

impl Algebra {
    pub fn new(pres: Presentation) -> Result<Self> {
        let report = validate_gentle(&pres);
        if !report.pass {
            let summary = report.violations.iter().map(|v| v.detail.clone()).collect::<Vec<_>>().join("; ");
            return Err(Error::NotGentle(summary));
        }
        let basis: Vec<Vec<Path>> = (0..pres.num_vertices()).map(|v| paths_from(&pres, v)).collect();
        let index = basis
            .iter()
            .map(|paths| paths.iter().enumerate().map(|(i, p)| (p.arrows.clone(), i)).collect())
            .collect();
        Ok(Algebra { pres, basis, index })
    }

    pub fn parse(text: &str) -> Result<Self> {
        Self::new(parse_presentation(text)?)
    }

    pub fn presentation(&self) -> &Presentation {
        &self.pres
    }

    /// Basis of `P_v = e_v A`: all nonzero paths starting at `v`.
    pub fn projective_basis(&self, v: VertexId) -> &[Path] {
        &self.basis[v]
    }

    /// Position of a nonzero path inside the basis of `P_{s(p)}`.
    pub fn basis_index(&self, p: &Path) -> usize {
        self.index[p.source][&p.arrows]
    }

    pub fn dim_projective(&self, v: VertexId) -> usize {
        self.basis[v].len()
    }

    /// Full monomial basis, ordered by source vertex, then length, then
    /// arrow ids.
    pub fn path_basis(&self) -> Vec<Path> {
        self.basis.iter().flatten().cloned().collect()
    }

    /// All nonzero paths of length at least one.
    pub fn nontrivial_paths(&self) -> impl Iterator<Item = &Path> {
        self.basis.iter().flatten().filter(|p| !p.is_trivial())
    }

    /// Maximal path starting with the given arrow.
    pub fn maximal_path_from_arrow(&self, a: ArrowId) -> Path {
        let mut arrows = vec![a];
        let mut last = a;
        while let Some(b) = self.composable_successor(last) {
            arrows.push(b);
            last = b;
        }
        self.path(&arrows).expect("maximal extension is a nonzero path")
    }

    pub fn maximal_extension(&self, p: &Path) -> Result<MaximalExtension> {
        let Some(first) = p.first_arrow() else {
            return Err(Error::Precondition("maximal extension needs a path of length >= 1".into()));
        };
        self.path(p.arrows())?;
        let mut arrows = p.arrows.clone();
        let mut last = p.last_arrow().unwrap();
        while let Some(b) = self.composable_successor(last) {
            arrows.push(b);
            last = b;
        }
        let tilde = self.path(&arrows)?;
        let hat = if arrows.len() == p.len() {
            Path::trivial(p.target)
        } else {
            self.path(&arrows[p.len()..])?
        };
        let check = self
            .out_arrows(p.source)
            .into_iter()
            .find(|&b| b != first)
            .map(|b| self.maximal_path_from_arrow(b));
        Ok(MaximalExtension { tilde, hat, check })
    }

    /// Number of nonzero paths starting with `a` (the length of its maximal path).
    pub fn paths_starting_with(&self, a: ArrowId) -> usize {
        self.maximal_path_from_arrow(a).len()
    }
}

fn paths_from(p: &Presentation, v: VertexId) -> Vec<Path> {
    let mut out = vec![Path::trivial(v)];
    let mut frontier: Vec<Path> = p.out_arrows(v).into_iter().map(|a| p.arrow_path(a)).collect();
    while !frontier.is_empty() {
        frontier.sort();
        let mut next = Vec::new();
        for path in &frontier {
            let last = path.last_arrow().unwrap();
            for b in p.out_arrows(path.target) {
                if !p.is_relation(last, b) {
                    let mut arrows = path.arrows.clone();
                    arrows.push(b);
                    next.push(Path { source: path.source, target: p.arrow(b).target, arrows });
                }
            }
        }
        out.append(&mut frontier);
        frontier = next;
    }
    out
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    #[test]
    fn parses_a0() {
        let p = parse_presentation(corpus::A0_TEXT).unwrap();
        assert_eq!(p.num_vertices(), 7);
        assert_eq!(p.arrows().len(), 6);
        assert_eq!(p.relations().count(), 1);
    }

    #[test]
    fn semisimple_is_valid() {
        let p = parse_presentation("algebra k\nvertices x\n").unwrap();
        assert!(validate_gentle(&p).pass);
        let a = Algebra::new(p).unwrap();
        assert_eq!(a.path_basis(), vec![Path::trivial(0)]);
    }

    #[test]
    fn rejects_non_composable_relation() {
        let text = "algebra bad\nvertices 1 2 3\narrow a1 : 1 -> 2\narrow a2 : 2 -> 3\nrel a2 a1\n";
        let err = parse_presentation(text).unwrap_err();
        assert!(matches!(err, Error::Syntax { line: 5, .. }), "{err:?}");
    }

    #[test]
    fn syntax_errors_carry_line_numbers() {
        let err = parse_presentation("algebra x\nvertices 1\narrow a 1 -> 1\n").unwrap_err();
        assert!(matches!(err, Error::Syntax { line: 3, .. }));
        let err = parse_presentation("algebra x\nvertices 1\narrow a : 1 -> 9\n").unwrap_err();
        assert!(matches!(err, Error::Syntax { line: 3, .. }));
        let err = parse_presentation("vertices 1\n").unwrap_err();
        assert!(matches!(err, Error::Syntax { line: 1, .. }));
    }

    #[test]
    fn three_parallel_arrows_break_fan_bound() {
        let text = "algebra t\nvertices 1 2\narrow a : 1 -> 2\narrow b : 1 -> 2\narrow c : 1 -> 2\n";
        let report = validate_gentle(&parse_presentation(text).unwrap());
        assert!(!report.pass);
        assert!(report.violations.iter().any(|v| v.axiom == Axiom::FanBound));
    }

    #[test]
    fn free_loop_is_infinite_dimensional() {
        let text = "algebra l\nvertices 1\narrow c : 1 -> 1\n";
        let report = validate_gentle(&parse_presentation(text).unwrap());
        assert_eq!(report.violations.len(), 1);
        assert_eq!(report.violations[0].axiom, Axiom::FiniteDimension);
        let text = "algebra l\nvertices 1\narrow c : 1 -> 1\nrel c c\n";
        assert!(validate_gentle(&parse_presentation(text).unwrap()).pass);
    }

    #[test]
    fn extra_arrow_out_of_v2_breaks_a0() {
        for target in ["v1", "v3", "v5", "v7"] {
            let mut p = parse_presentation(corpus::A0_TEXT).unwrap();
            p.add_arrow("extra", "v2", target).unwrap();
            let report = validate_gentle(&p);
            assert!(report.violations.iter().any(|v| v.axiom == Axiom::FanBound), "{target}");
        }
    }

    #[test]
    fn a0_maximal_extensions() {
        let a = corpus::a0();
        let a1 = a.path_by_names(&["a1"]).unwrap();
        let ext = a.maximal_extension(&a1).unwrap();
        assert_eq!(a.path_name(&ext.tilde), "a1.a2");
        assert_eq!(a.path_name(&ext.hat), "a2");
        assert_eq!(ext.check_len(), 0);

        let a3 = a.path_by_names(&["a3"]).unwrap();
        let ext = a.maximal_extension(&a3).unwrap();
        assert_eq!(a.path_name(&ext.tilde), "a3.a4.a5.a6");
        assert_eq!(a.path_name(ext.check.as_ref().unwrap()), "a2");
    }

    #[test]
    fn kronecker_extension() {
        let k = corpus::kronecker();
        let pa = k.path_by_names(&["a"]).unwrap();
        let ext = k.maximal_extension(&pa).unwrap();
        assert_eq!(ext.tilde, pa);
        assert!(ext.hat.is_trivial());
        assert_eq!(k.path_name(ext.check.as_ref().unwrap()), "b");
    }

    #[test]
    fn compose_cases() {
        let a = corpus::a0();
        let a1 = a.path_by_names(&["a1"]).unwrap();
        let a2 = a.path_by_names(&["a2"]).unwrap();
        let a3 = a.path_by_names(&["a3"]).unwrap();
        assert_eq!(a.compose(&a1, &a3).unwrap(), None);
        assert_eq!(a.path_name(&a.compose(&a1, &a2).unwrap().unwrap()), "a1.a2");
        let e1 = Path::trivial(a.vertex_id("v1").unwrap());
        assert_eq!(a.compose(&e1, &a1).unwrap(), Some(a1.clone()));
        assert!(matches!(a.compose(&a2, &a1), Err(Error::NotComposable { .. })));
        assert!(matches!(a.path_by_names(&["a1", "a3"]), Err(Error::ZeroPath(_))));
    }

    #[test]
    fn projective_dimensions() {
        let a = corpus::a0();
        let v2 = a.vertex_id("v2").unwrap();
        let names: Vec<_> = a.projective_basis(v2).iter().map(|p| a.path_name(p)).collect();
        assert_eq!(names, ["e_v2", "a2", "a3", "a3.a4", "a3.a4.a5", "a3.a4.a5.a6"]);
        assert_eq!(a.dim_projective(v2), 6);
        assert_eq!(a.dim_projective(a.vertex_id("v7").unwrap()), 1);
        let k = corpus::kronecker();
        assert_eq!(k.dim_projective(0), 3);
        assert_eq!(k.dim_projective(1), 1);
        assert_eq!(k.path_basis().len(), 4);
    }

    #[test]
    fn text_round_trip() {
        let p = parse_presentation(corpus::A0_TEXT).unwrap();
        assert_eq!(parse_presentation(&p.to_text()).unwrap(), p);
    }
}
