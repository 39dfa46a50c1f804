//! Letters, generalized walks, generalized strings and bands.
//!
//! A [`Letter`] is a nonzero path of length at least one taken directly or
//! formally inverted. Direct letters lower the homological degree `mu` by
//! one, inverse letters raise it by one.

use std::cmp::Ordering;
use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;

use num::BigRational;
use petgraph::algo::tarjan_scc;
use petgraph::graph::DiGraph;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::quiver::{Algebra, ArrowId, Path, Presentation, VertexId};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Direction {
    Direct,
    Inverse,
}

impl Direction {
    pub fn flip(self) -> Self {
        match self {
            Direction::Direct => Direction::Inverse,
            Direction::Inverse => Direction::Direct,
        }
    }

    /// Change of `mu` across a letter of this direction.
    pub fn mu_step(self) -> i64 {
        match self {
            Direction::Direct => -1,
            Direction::Inverse => 1,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Letter {
    pub path: Path,
    pub dir: Direction,
}

impl Letter {
    pub fn direct(path: Path) -> Self {
        Letter { path, dir: Direction::Direct }
    }

    pub fn inverse(path: Path) -> Self {
        Letter { path, dir: Direction::Inverse }
    }

    pub fn is_direct(&self) -> bool {
        self.dir == Direction::Direct
    }

    pub fn source(&self) -> VertexId {
        match self.dir {
            Direction::Direct => self.path.source(),
            Direction::Inverse => self.path.target(),
        }
    }

    pub fn target(&self) -> VertexId {
        match self.dir {
            Direction::Direct => self.path.target(),
            Direction::Inverse => self.path.source(),
        }
    }

    pub fn len(&self) -> usize {
        self.path.len()
    }

    pub fn inverted(&self) -> Self {
        Letter { path: self.path.clone(), dir: self.dir.flip() }
    }

    pub fn literal(&self, p: &Presentation) -> String {
        match self.dir {
            Direction::Direct => p.path_name(&self.path),
            Direction::Inverse => format!("~{}", p.path_name(&self.path)),
        }
    }
}

/// Direct before inverse, then shorter paths first, then arrow ids.
impl Ord for Letter {
    fn cmp(&self, other: &Self) -> Ordering {
        self.dir
            .cmp(&other.dir)
            .then(self.path.len().cmp(&other.path.len()))
            .then_with(|| self.path.arrows().cmp(other.path.arrows()))
    }
}

impl PartialOrd for Letter {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum WalkKind {
    /// Generalized string.
    Gst,
    /// Generalized band (closed, balanced, square is a generalized string).
    Gba,
    Invalid(String),
}

impl fmt::Display for WalkKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WalkKind::Gst => f.write_str("GST"),
            WalkKind::Gba => f.write_str("GBA"),
            WalkKind::Invalid(reason) => write!(f, "INVALID({reason})"),
        }
    }
}

/// A classified generalized walk with its `mu` profile (`mu[0] = 0`).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GenWalk {
    letters: Vec<Letter>,
    kind: WalkKind,
    mu: Vec<i64>,
}

impl GenWalk {
    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn kind(&self) -> &WalkKind {
        &self.kind
    }

    pub fn mu(&self) -> &[i64] {
        &self.mu
    }

    /// Number of letters.
    pub fn width(&self) -> usize {
        self.letters.len()
    }

    /// Total arrow count of the underlying walk.
    pub fn arrow_count(&self) -> usize {
        self.letters.iter().map(Letter::len).sum()
    }

    /// Generalized strings include bands viewed as strings.
    pub fn is_string(&self) -> bool {
        matches!(self.kind, WalkKind::Gst | WalkKind::Gba)
    }

    pub fn is_band(&self) -> bool {
        self.kind == WalkKind::Gba
    }

    /// Vertex `c(j)` of node `j`, for `0 <= j <= width`.
    pub fn node_vertex(&self, j: usize) -> VertexId {
        if j < self.letters.len() {
            self.letters[j].source()
        } else {
            self.letters[self.letters.len() - 1].target()
        }
    }

    pub fn inverse_letters(&self) -> Vec<Letter> {
        self.letters.iter().rev().map(Letter::inverted).collect()
    }

    pub fn literal(&self, p: &Presentation) -> String {
        format_walk(p, &self.letters)
    }

    fn require_string(&self) -> Result<()> {
        if self.is_string() {
            Ok(())
        } else {
            Err(Error::WrongKind { expected: "GST".into(), found: self.kind.to_string() })
        }
    }
}

pub fn mu_profile(letters: &[Letter]) -> Vec<i64> {
    let mut mu = Vec::with_capacity(letters.len() + 1);
    mu.push(0);
    for l in letters {
        mu.push(mu.last().unwrap() + l.dir.mu_step());
    }
    mu
}

/// Checks whether `y` may follow `x` inside a generalized string.
pub fn junction(p: &Presentation, x: &Letter, y: &Letter) -> std::result::Result<(), String> {
    if x.target() != y.source() {
        return Err("letters are not composable".into());
    }
    let (xp, yp) = (&x.path, &y.path);
    match (x.dir, y.dir) {
        (Direction::Direct, Direction::Direct) => {
            if p.is_relation(xp.last_arrow().unwrap(), yp.first_arrow().unwrap()) {
                Ok(())
            } else {
                Err("consecutive direct letters must compose into the ideal".into())
            }
        }
        (Direction::Inverse, Direction::Inverse) => {
            if p.is_relation(yp.last_arrow().unwrap(), xp.first_arrow().unwrap()) {
                Ok(())
            } else {
                Err("consecutive inverse letters must compose into the ideal".into())
            }
        }
        (Direction::Direct, Direction::Inverse) => {
            if xp.last_arrow() != yp.last_arrow() {
                Ok(())
            } else {
                Err("mixed junction backtracks".into())
            }
        }
        (Direction::Inverse, Direction::Direct) => {
            if xp.first_arrow() != yp.first_arrow() {
                Ok(())
            } else {
                Err("mixed junction backtracks".into())
            }
        }
    }
}

/// Classifies a letter sequence as generalized string, generalized band or
/// invalid. Errors when a letter is not a nonzero path of positive length.
pub fn classify_walk(p: &Presentation, letters: Vec<Letter>) -> Result<GenWalk> {
    if letters.is_empty() {
        return Err(Error::Precondition("a walk needs at least one letter".into()));
    }
    for l in &letters {
        if l.path.is_trivial() {
            return Err(Error::Precondition("trivial paths are stalk witnesses, not letters".into()));
        }
        p.path(l.path.arrows())?;
    }
    let mu = mu_profile(&letters);
    let mut kind = WalkKind::Gst;
    for (i, pair) in letters.windows(2).enumerate() {
        if let Err(reason) = junction(p, &pair[0], &pair[1]) {
            kind = WalkKind::Invalid(format!("letters {} and {}: {reason}", i + 1, i + 2));
            break;
        }
    }
    if kind == WalkKind::Gst {
        let (first, last) = (&letters[0], letters.last().unwrap());
        if first.source() == last.target() && *mu.last().unwrap() == 0 && junction(p, last, first).is_ok() {
            kind = WalkKind::Gba;
        }
    }
    Ok(GenWalk { letters, kind, mu })
}

/// Parses a walk literal such as `a1 , ~a3.a4`.
pub fn parse_walk(p: &Presentation, text: &str) -> Result<Vec<Letter>> {
    let mut letters = Vec::new();
    for raw in text.split(',') {
        let token = raw.trim();
        if token.is_empty() {
            return Err(Error::WalkLiteral(format!("empty letter in `{text}`")));
        }
        let (dir, body) = match token.strip_prefix('~') {
            Some(rest) => (Direction::Inverse, rest.trim()),
            None => (Direction::Direct, token),
        };
        let names: Vec<&str> = body.split('.').map(str::trim).collect();
        if names.iter().any(|n| n.is_empty()) {
            return Err(Error::WalkLiteral(format!("malformed letter `{token}`")));
        }
        letters.push(Letter { path: p.path_by_names(&names)?, dir });
    }
    Ok(letters)
}

pub fn format_walk(p: &Presentation, letters: &[Letter]) -> String {
    letters.iter().map(|l| l.literal(p)).collect::<Vec<_>>().join(", ")
}

pub fn parse_and_classify(p: &Presentation, text: &str) -> Result<GenWalk> {
    classify_walk(p, parse_walk(p, text)?)
}

pub fn invert(letters: &[Letter]) -> Vec<Letter> {
    letters.iter().rev().map(Letter::inverted).collect()
}

fn reclassify(p: &Presentation, letters: Vec<Letter>) -> GenWalk {
    classify_walk(p, letters).expect("letters of a classified walk stay valid")
}

/// Representative of `{w, w^-1}`: the lexicographically smaller letter list.
pub fn canonical_string(p: &Presentation, w: &GenWalk) -> Result<GenWalk> {
    w.require_string()?;
    let inv = w.inverse_letters();
    if inv < w.letters {
        Ok(reclassify(p, inv))
    } else {
        Ok(w.clone())
    }
}

/// Representative of a band's orbit under inversion and rotation.
pub fn canonical_band(p: &Presentation, w: &GenWalk) -> Result<GenWalk> {
    if !w.is_band() {
        return Err(Error::WrongKind { expected: "GBA".into(), found: w.kind.to_string() });
    }
    Ok(reclassify(p, min_rotation(&w.letters)))
}

fn min_rotation(letters: &[Letter]) -> Vec<Letter> {
    let n = letters.len();
    let inv = invert(letters);
    let mut best: Option<Vec<Letter>> = None;
    for src in [letters, &inv[..]] {
        for k in 0..n {
            let rot: Vec<Letter> = src[k..].iter().chain(&src[..k]).cloned().collect();
            if best.as_ref().is_none_or(|b| rot < *b) {
                best = Some(rot);
            }
        }
    }
    best.unwrap()
}

/// Rotates a band by `k` letters to the left.
pub fn rotate(p: &Presentation, w: &GenWalk, k: usize) -> GenWalk {
    let n = w.width();
    let k = k % n;
    let letters = w.letters[k..].iter().chain(&w.letters[..k]).cloned().collect();
    reclassify(p, letters)
}

/// Rotation of a band placing `mu`'s minimum at node 0.
pub fn mu_minimal_rotation(p: &Presentation, w: &GenWalk) -> Result<GenWalk> {
    if !w.is_band() {
        return Err(Error::WrongKind { expected: "GBA".into(), found: w.kind.to_string() });
    }
    let min = *w.mu.iter().min().unwrap();
    let k = w.mu.iter().position(|&m| m == min).unwrap();
    Ok(rotate(p, w, k))
}

pub fn is_primitive(letters: &[Letter]) -> bool {
    let n = letters.len();
    (1..n).filter(|k| n.is_multiple_of(*k)).all(|k| (0..n).any(|i| letters[i] != letters[i % k]))
}

/// `w` repeated `times` times.
pub fn power(p: &Presentation, w: &GenWalk, times: usize) -> GenWalk {
    let letters = std::iter::repeat_n(w.letters.iter().cloned(), times).flatten().collect();
    reclassify(p, letters)
}

/// All letters of the algebra with the legal-successor relation.
#[derive(Debug, Clone)]
pub struct LetterGraph {
    pub letters: Vec<Letter>,
    pub successors: Vec<Vec<usize>>,
}

impl LetterGraph {
    pub fn new(a: &Algebra) -> Self {
        let mut letters: Vec<Letter> = a
            .nontrivial_paths()
            .flat_map(|p| [Letter::direct(p.clone()), Letter::inverse(p.clone())])
            .collect();
        letters.sort();
        let mut by_source: HashMap<VertexId, Vec<usize>> = HashMap::new();
        for (i, l) in letters.iter().enumerate() {
            by_source.entry(l.source()).or_default().push(i);
        }
        let successors = letters
            .iter()
            .map(|x| {
                by_source
                    .get(&x.target())
                    .into_iter()
                    .flatten()
                    .copied()
                    .filter(|&j| junction(a, x, &letters[j]).is_ok())
                    .collect()
            })
            .collect();
        LetterGraph { letters, successors }
    }
}

#[derive(Debug, Clone)]
pub struct Enumeration {
    /// Canonical representatives in canonical order.
    pub walks: Vec<GenWalk>,
    /// True when no legal extension was cut off by the arrow bound.
    pub complete: bool,
}

/// Every generalized string with at most `max_arrows` arrows, once per
/// class `w ~ w^-1`. Trivial paths are not included.
pub fn enumerate_gst(a: &Algebra, max_arrows: usize) -> Enumeration {
    let graph = LetterGraph::new(a);
    let mut found: BTreeSet<Vec<Letter>> = BTreeSet::new();
    let mut complete = true;
    let mut stack: Vec<(Vec<usize>, usize)> = Vec::new();
    for (i, l) in graph.letters.iter().enumerate() {
        if l.len() <= max_arrows {
            stack.push((vec![i], l.len()));
        } else {
            complete = false;
        }
    }
    while let Some((walk, arrows)) = stack.pop() {
        let letters: Vec<Letter> = walk.iter().map(|&i| graph.letters[i].clone()).collect();
        let inv = invert(&letters);
        found.insert(if inv < letters { inv } else { letters });
        for &next in &graph.successors[*walk.last().unwrap()] {
            let total = arrows + graph.letters[next].len();
            if total <= max_arrows {
                let mut extended = walk.clone();
                extended.push(next);
                stack.push((extended, total));
            } else {
                complete = false;
            }
        }
    }
    Enumeration { walks: found.into_iter().map(|l| reclassify(a, l)).collect(), complete }
}

/// Every primitive generalized band with at most `max_arrows` arrows, once
/// per orbit under inversion and rotation.
pub fn enumerate_gba(a: &Algebra, max_arrows: usize) -> Enumeration {
    let graph = LetterGraph::new(a);
    let mut found: BTreeSet<Vec<Letter>> = BTreeSet::new();
    let mut complete = true;
    for start in 0..graph.letters.len() {
        let first = &graph.letters[start];
        if first.len() > max_arrows {
            complete = false;
            continue;
        }
        // The orbit contains a rotation starting with its smallest letter,
        // so only letters >= start need to be explored.
        let mut stack = vec![(vec![start], first.len(), first.dir.mu_step())];
        while let Some((walk, arrows, mu)) = stack.pop() {
            let last = &graph.letters[*walk.last().unwrap()];
            if mu == 0 && graph.successors[*walk.last().unwrap()].contains(&start) && last.target() == first.source() {
                let letters: Vec<Letter> = walk.iter().map(|&i| graph.letters[i].clone()).collect();
                if is_primitive(&letters) {
                    found.insert(min_rotation(&letters));
                }
            }
            for &next in &graph.successors[*walk.last().unwrap()] {
                if next < start {
                    continue;
                }
                let total = arrows + graph.letters[next].len();
                if total <= max_arrows {
                    let mut extended = walk.clone();
                    extended.push(next);
                    stack.push((extended, total, mu + graph.letters[next].dir.mu_step()));
                } else {
                    complete = false;
                }
            }
        }
    }
    Enumeration { walks: found.into_iter().map(|l| reclassify(a, l)).collect(), complete }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ComponentWeights {
    pub letters: usize,
    pub positive_cycle: bool,
    pub negative_cycle: bool,
    pub zero_cycle: bool,
}

#[derive(Debug, Clone)]
pub struct DiscretenessCertificate {
    pub derived_discrete: bool,
    /// Weight analysis of every cyclic strongly connected component of the
    /// letter graph.
    pub components: Vec<ComponentWeights>,
    pub band: Option<GenWalk>,
}

/// Decides whether the algebra has a generalized band.
///
/// Bands are exactly the closed walks of total `mu` weight zero in the
/// letter graph. Inside a strongly connected component such a walk exists
/// iff there is a zero-weight cycle or cycles of both signs.
pub fn is_derived_discrete(a: &Algebra) -> DiscretenessCertificate {
    let graph = LetterGraph::new(a);
    let n = graph.letters.len();
    let weight = |j: usize| graph.letters[j].dir.mu_step();
    let mut g = DiGraph::<usize, ()>::new();
    let nodes: Vec<_> = (0..n).map(|i| g.add_node(i)).collect();
    for (i, succ) in graph.successors.iter().enumerate() {
        for &j in succ {
            g.add_edge(nodes[i], nodes[j], ());
        }
    }
    let mut components = Vec::new();
    let mut band = None;
    for scc in tarjan_scc(&g) {
        let members: Vec<usize> = scc.iter().map(|ix| g[*ix]).collect();
        let inside: BTreeSet<usize> = members.iter().copied().collect();
        let edges: Vec<(usize, usize, i64)> = members
            .iter()
            .flat_map(|&u| graph.successors[u].iter().filter(|v| inside.contains(v)).map(move |&v| (u, v)))
            .map(|(u, v)| (u, v, weight(v)))
            .collect();
        if edges.is_empty() {
            continue;
        }
        let negative = has_negative_cycle(&members, &edges);
        let flipped: Vec<_> = edges.iter().map(|&(u, v, w)| (u, v, -w)).collect();
        let positive = has_negative_cycle(&members, &flipped);
        let zero = match (negative, positive) {
            (false, _) => has_tight_cycle(&members, &edges),
            (true, false) => has_tight_cycle(&members, &flipped),
            (true, true) => false,
        };
        let weights = ComponentWeights {
            letters: members.len(),
            positive_cycle: positive,
            negative_cycle: negative,
            zero_cycle: zero,
        };
        if band.is_none() && (zero || (positive && negative)) {
            band = zero_weight_cycle(&graph, &members, &inside)
                .map(|letters| canonical_band(a, &reclassify(a, letters)).expect("closed zero-weight walk is a band"));
        }
        components.push(weights);
    }
    DiscretenessCertificate { derived_discrete: band.is_none(), components, band }
}

fn bellman_ford(members: &[usize], edges: &[(usize, usize, i64)]) -> (HashMap<usize, i64>, bool) {
    let mut dist: HashMap<usize, i64> = members.iter().map(|&m| (m, 0)).collect();
    for round in 0..=members.len() {
        let mut changed = false;
        for &(u, v, w) in edges {
            let cand = dist[&u] + w;
            if cand < dist[&v] {
                dist.insert(v, cand);
                changed = true;
            }
        }
        if !changed {
            return (dist, false);
        }
        if round == members.len() {
            return (dist, true);
        }
    }
    (dist, true)
}

fn has_negative_cycle(members: &[usize], edges: &[(usize, usize, i64)]) -> bool {
    bellman_ford(members, edges).1
}

/// With no negative cycles, a zero-weight cycle exists iff the subgraph of
/// edges tight for the shortest-path potential has a cycle.
fn has_tight_cycle(members: &[usize], edges: &[(usize, usize, i64)]) -> bool {
    let (dist, negative) = bellman_ford(members, edges);
    debug_assert!(!negative);
    let mut g = DiGraph::<usize, ()>::new();
    let idx: HashMap<usize, _> = members.iter().map(|&m| (m, g.add_node(m))).collect();
    let mut self_loop = false;
    for &(u, v, w) in edges {
        if dist[&u] + w == dist[&v] {
            if u == v {
                self_loop = true;
            }
            g.add_edge(idx[&u], idx[&v], ());
        }
    }
    self_loop || tarjan_scc(&g).iter().any(|c| c.len() > 1)
}

/// Shortest closed walk of weight zero through some member, by breadth-first
/// search over (letter, running weight) with the weight kept bounded.
fn zero_weight_cycle(graph: &LetterGraph, members: &[usize], inside: &BTreeSet<usize>) -> Option<Vec<Letter>> {
    let bound = 6 * members.len() as i64 + 6;
    let mut best: Option<Vec<usize>> = None;
    for &base in members {
        let mut prev: HashMap<(usize, i64), (usize, i64)> = HashMap::new();
        let mut queue = VecDeque::new();
        for &v in graph.successors[base].iter().filter(|v| inside.contains(v)) {
            let state = (v, graph.letters[v].dir.mu_step());
            if let std::collections::hash_map::Entry::Vacant(e) = prev.entry(state) {
                e.insert((base, 0));
                queue.push_back(state);
            }
        }
        let mut hit = None;
        while let Some((u, off)) = queue.pop_front() {
            if u == base && off == 0 {
                hit = Some((u, off));
                break;
            }
            for &v in graph.successors[u].iter().filter(|v| inside.contains(v)) {
                let next = (v, off + graph.letters[v].dir.mu_step());
                if next.1.abs() > bound || prev.contains_key(&next) {
                    continue;
                }
                prev.insert(next, (u, off));
                queue.push_back(next);
            }
        }
        if let Some(mut state) = hit {
            let mut walk = vec![state.0];
            loop {
                let p = prev[&state];
                if p == (base, 0) {
                    break;
                }
                walk.push(p.0);
                state = p;
            }
            walk.reverse();
            if best.as_ref().is_none_or(|b| walk.len() < b.len()) {
                best = Some(walk);
            }
        }
    }
    best.map(|w| w.into_iter().map(|i| graph.letters[i].clone()).collect())
}

/// Removes `j` arrows from the start of the walk (inside its first letter).
pub fn truncate_first(p: &Presentation, w: &GenWalk, j: usize) -> Result<GenWalk> {
    let first = &w.letters[0];
    let len = first.len();
    if j > len {
        return Err(Error::Truncation(format!("cannot drop {j} arrows from a letter of length {len}")));
    }
    let mut letters = w.letters.clone();
    if j == len {
        letters.remove(0);
    } else if j > 0 {
        let arrows = first.path.arrows();
        let kept = match first.dir {
            Direction::Direct => &arrows[j..],
            Direction::Inverse => &arrows[..len - j],
        };
        letters[0] = Letter { path: p.path(kept)?, dir: first.dir };
    }
    if letters.is_empty() {
        return Err(Error::Truncation("truncation leaves an empty walk".into()));
    }
    classify_walk(p, letters)
}

/// Removes `j` arrows from the end of the walk (inside its last letter).
pub fn truncate_last(p: &Presentation, w: &GenWalk, j: usize) -> Result<GenWalk> {
    let inv = classify_walk(p, w.inverse_letters())?;
    let cut = truncate_first(p, &inv, j)?;
    classify_walk(p, cut.inverse_letters())
}

/// The maximal generalized string `alpha alpha_1 alpha_2 ...` in which each
/// consecutive pair composes into the ideal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BarDescriptor {
    Finite(Vec<Path>),
    Periodic { preperiod: Vec<Path>, period: Vec<Path> },
}

impl BarDescriptor {
    /// The first `count` pieces (the leading path, then arrows), following
    /// the period as often as needed.
    pub fn prefix(&self, count: usize) -> Vec<Path> {
        match self {
            BarDescriptor::Finite(pieces) => pieces.iter().take(count).cloned().collect(),
            BarDescriptor::Periodic { preperiod, period } => {
                preperiod.iter().chain(period.iter().cycle()).take(count).cloned().collect()
            }
        }
    }

    pub fn is_periodic(&self) -> bool {
        matches!(self, BarDescriptor::Periodic { .. })
    }

    /// Number of pieces, `None` when infinite.
    pub fn finite_len(&self) -> Option<usize> {
        match self {
            BarDescriptor::Finite(pieces) => Some(pieces.len()),
            BarDescriptor::Periodic { .. } => None,
        }
    }
}

pub fn glue_bar(p: &Presentation, alpha: &Path) -> Result<BarDescriptor> {
    let Some(mut last) = alpha.last_arrow() else {
        return Err(Error::Precondition("bar of a trivial path".into()));
    };
    let mut pieces = vec![alpha.clone()];
    let mut seen: Vec<ArrowId> = Vec::new();
    while let Some(next) = p.relation_successor(last) {
        if let Some(pos) = seen.iter().position(|&a| a == next) {
            let period = pieces.split_off(pos + 1);
            return Ok(BarDescriptor::Periodic { preperiod: pieces, period });
        }
        seen.push(next);
        pieces.push(p.arrow_path(next));
        last = next;
    }
    Ok(BarDescriptor::Finite(pieces))
}

/// A named object of the derived category, up to the indicated shift.
///
/// `shift = k` denotes `X[k]`, whose cohomology in degree `i` is that of
/// `X` in degree `i + k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Witness {
    /// The stalk complex `P_v` of a trivial path.
    Stalk { vertex: VertexId, shift: i64 },
    /// The string complex `P_w`.
    Str { walk: GenWalk, shift: i64 },
    /// `beta(P_w)`: `P_w` with its leftmost kernel resolved.
    Beta { walk: GenWalk, shift: i64 },
    /// The band complex `P_{w, lambda, d}`.
    Band { walk: GenWalk, lambda: BigRational, mult: usize, shift: i64 },
}

impl Witness {
    pub fn shift(&self) -> i64 {
        match self {
            Witness::Stalk { shift, .. }
            | Witness::Str { shift, .. }
            | Witness::Beta { shift, .. }
            | Witness::Band { shift, .. } => *shift,
        }
    }

    pub fn with_shift(mut self, k: i64) -> Self {
        match &mut self {
            Witness::Stalk { shift, .. }
            | Witness::Str { shift, .. }
            | Witness::Beta { shift, .. }
            | Witness::Band { shift, .. } => *shift = k,
        }
        self
    }

    pub fn tag(&self) -> &'static str {
        match self {
            Witness::Stalk { .. } => "stalk",
            Witness::Str { .. } => "string",
            Witness::Beta { .. } => "beta",
            Witness::Band { .. } => "band",
        }
    }

    /// Human-readable walk literal (vertex name for stalks).
    pub fn literal(&self, p: &Presentation) -> String {
        match self {
            Witness::Stalk { vertex, .. } => format!("e_{}", p.vertex_name(*vertex)),
            Witness::Str { walk, .. } | Witness::Beta { walk, .. } | Witness::Band { walk, .. } => walk.literal(p),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    fn walk(a: &Algebra, s: &str) -> GenWalk {
        parse_and_classify(a, s).unwrap()
    }

    #[test]
    fn a0_classification() {
        let a = corpus::a0();
        let w = walk(&a, "a1, a3");
        assert_eq!(*w.kind(), WalkKind::Gst);
        assert_eq!(w.mu(), [0, -1, -2]);
        let w = walk(&a, "a1, a2");
        assert!(matches!(w.kind(), WalkKind::Invalid(_)));
        let w = walk(&a, "a1 , ~a1");
        assert!(matches!(w.kind(), WalkKind::Invalid(_)));
    }

    #[test]
    fn kronecker_band() {
        let k = corpus::kronecker();
        let w = walk(&k, "a, ~b");
        assert_eq!(*w.kind(), WalkKind::Gba);
        assert_eq!(w.mu(), [0, -1, 0]);
        let rot = rotate(&k, &w, 1);
        assert_eq!(canonical_band(&k, &rot).unwrap(), canonical_band(&k, &w).unwrap());
        let inv = classify_walk(&k, w.inverse_letters()).unwrap();
        assert_eq!(canonical_band(&k, &inv).unwrap().literal(&k), "a, ~b");
        assert!(matches!(canonical_band(&k, &walk(&k, "a")), Err(Error::WrongKind { .. })));
    }

    #[test]
    fn trivial_letters_rejected() {
        let a = corpus::a0();
        let e = Letter::direct(Path::trivial(0));
        assert!(classify_walk(&a, vec![e]).is_err());
    }

    #[test]
    fn canonical_string_is_orbit_invariant() {
        let a = corpus::a0();
        let w = walk(&a, "a3.a4");
        let inv = classify_walk(&a, w.inverse_letters()).unwrap();
        assert_eq!(canonical_string(&a, &w).unwrap(), canonical_string(&a, &inv).unwrap());
        let c = canonical_string(&a, &w).unwrap();
        assert_eq!(canonical_string(&a, &c).unwrap(), c);
    }

    #[test]
    fn a0_enumeration() {
        let a = corpus::a0();
        let e = enumerate_gst(&a, 10);
        assert!(e.complete);
        let lits: Vec<_> = e.walks.iter().map(|w| w.literal(&a)).collect();
        assert!(lits.contains(&"a1".to_string()));
        assert!(lits.contains(&"a1, a3".to_string()));
        assert!(e.walks.iter().all(|w| w.is_string()));
        assert!(enumerate_gba(&a, 12).walks.is_empty());
    }

    #[test]
    fn kronecker_enumeration() {
        let k = corpus::kronecker();
        let e = enumerate_gst(&k, 2);
        assert!(!e.complete);
        let lits: Vec<_> = e.walks.iter().map(|w| w.literal(&k)).collect();
        assert_eq!(lits, ["a", "a, ~b", "b", "~a, b"]);
        let bands = enumerate_gba(&k, 6);
        assert_eq!(bands.walks.len(), 1);
        assert_eq!(bands.walks[0].literal(&k), "a, ~b");
    }

    #[test]
    fn empty_quiver_has_nothing() {
        let s = corpus::semisimple(1);
        assert!(enumerate_gst(&s, 5).walks.is_empty());
        assert!(is_derived_discrete(&s).derived_discrete);
    }

    #[test]
    fn linear_quiver_has_no_band() {
        let l = corpus::linear_a(5);
        assert!(enumerate_gba(&l, 10).walks.is_empty());
        assert!(is_derived_discrete(&l).derived_discrete);
    }

    #[test]
    fn discreteness() {
        let a = corpus::a0();
        let cert = is_derived_discrete(&a);
        assert!(cert.derived_discrete);
        assert!(cert.band.is_none());
        let k = corpus::kronecker();
        let cert = is_derived_discrete(&k);
        assert!(!cert.derived_discrete);
        assert_eq!(cert.band.unwrap().literal(&k), "a, ~b");
        assert!(is_derived_discrete(&corpus::three_cycle()).derived_discrete);
    }

    #[test]
    fn truncations() {
        let a = corpus::a0();
        let w = walk(&a, "a3.a4.a5");
        assert_eq!(truncate_first(&a, &w, 1).unwrap().literal(&a), "a4.a5");
        assert_eq!(truncate_first(&a, &w, 0).unwrap(), w);
        assert_eq!(truncate_last(&a, &w, 2).unwrap().literal(&a), "a3");
        let w = walk(&a, "a1, a3");
        assert_eq!(truncate_first(&a, &w, 1).unwrap().literal(&a), "a3");
        assert!(truncate_first(&a, &w, 2).is_err());
        let single = walk(&a, "a1");
        assert!(truncate_first(&a, &single, 1).is_err());
        let inv = walk(&a, "~a3.a4");
        assert_eq!(truncate_first(&a, &inv, 1).unwrap().literal(&a), "~a3");
    }

    #[test]
    fn bars() {
        let a = corpus::a0();
        let a1 = a.path_by_names(&["a1"]).unwrap();
        let bar = glue_bar(&a, &a1).unwrap();
        assert_eq!(bar, BarDescriptor::Finite(vec![a1.clone(), a.path_by_names(&["a3"]).unwrap()]));
        let a2 = a.path_by_names(&["a2"]).unwrap();
        assert_eq!(glue_bar(&a, &a2).unwrap(), BarDescriptor::Finite(vec![a2]));
        let c = corpus::three_cycle();
        let pa = c.path_by_names(&["a"]).unwrap();
        match glue_bar(&c, &pa).unwrap() {
            BarDescriptor::Periodic { preperiod, period } => {
                assert_eq!(period.len(), 3);
                assert_eq!(preperiod.len(), 1);
            }
            other => panic!("expected periodic, got {other:?}"),
        }
    }

    #[test]
    fn literal_round_trip() {
        let a = corpus::a0();
        for w in enumerate_gst(&a, 8).walks {
            let again = parse_and_classify(&a, &w.literal(&a)).unwrap();
            assert_eq!(again, w);
        }
    }
}
