//! Cohomology dimension vectors of projective complexes, the closed-form
//! per-node dimensions of string complexes, and the `beta` construction
//! that resolves the kernel at the leftmost component.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::complexes::{band_complex, differential_matrix, shift, stalk_complex, string_complex, ProjComplex};
use crate::error::{Error, Result};
use crate::quiver::{Algebra, Path};
use crate::walks::{classify_walk, glue_bar, invert, BarDescriptor, Direction, GenWalk, Letter, Witness};

/// Cohomology dimensions with finite support and the derived invariants.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize)]
pub struct CohVector {
    pub dims: BTreeMap<i64, usize>,
    pub hl: usize,
    pub hw: usize,
    pub hr: usize,
}

impl CohVector {
    /// Builds the vector, dropping zero entries.
    pub fn from_dims(dims: impl IntoIterator<Item = (i64, usize)>) -> Self {
        let dims: BTreeMap<i64, usize> = dims.into_iter().filter(|&(_, d)| d > 0).collect();
        let hl = dims.values().copied().max().unwrap_or(0);
        let hw = match (dims.keys().next(), dims.keys().next_back()) {
            (Some(lo), Some(hi)) => (hi - lo + 1) as usize,
            _ => 0,
        };
        CohVector { dims, hl, hw, hr: hl * hw }
    }

    pub fn dim(&self, degree: i64) -> usize {
        self.dims.get(&degree).copied().unwrap_or(0)
    }

    /// Cohomology of `X[k]` from that of `X`.
    pub fn shifted(&self, k: i64) -> Self {
        CohVector::from_dims(self.dims.iter().map(|(&d, &v)| (d - k, v)))
    }

    pub fn is_zero(&self) -> bool {
        self.dims.is_empty()
    }

    pub fn min_degree(&self) -> Option<i64> {
        self.dims.keys().next().copied()
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("plain data serializes")
    }
}

/// `dim H^i = dim X^i - rank d^i - rank d^{i-1}` with exact ranks.
pub fn cohomology_dims(a: &Algebra, c: &ProjComplex) -> CohVector {
    let degrees: Vec<i64> = c.degrees.iter().filter(|(_, g)| !g.is_empty()).map(|(d, _)| *d).collect();
    let ranks: BTreeMap<i64, usize> = degrees
        .iter()
        .filter(|d| c.diffs.get(d).is_some_and(|e| !e.is_empty()))
        .map(|&d| (d, differential_matrix(a, c, d).rank()))
        .collect();
    CohVector::from_dims(degrees.iter().map(|&i| {
        let out = ranks.get(&i).copied().unwrap_or(0);
        let inc = ranks.get(&(i - 1)).copied().unwrap_or(0);
        (i, c.component_dim(a, i) - out - inc)
    }))
}

/// Alternating sums of component dimensions and of cohomology dimensions.
pub fn euler_characteristics(a: &Algebra, c: &ProjComplex, coh: &CohVector) -> (i64, i64) {
    let sign = |d: i64| if d.rem_euclid(2) == 0 { 1 } else { -1 };
    let components = c.degrees.keys().map(|&d| sign(d) * c.component_dim(a, d) as i64).sum();
    let cohomology = coh.dims.iter().map(|(&d, &v)| sign(d) * v as i64).sum();
    (components, cohomology)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum NodeKind {
    /// A walk end whose single letter maps into it.
    EndIncoming,
    /// A walk end whose single letter maps out of it.
    EndOutgoing,
    /// Interior of a run of equally oriented letters.
    Run,
    /// Both letters map into the node.
    BackwardTurn,
    /// Both letters map out of the node.
    ForwardTurn,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NodeContribution {
    pub node: usize,
    pub degree: i64,
    pub kind: NodeKind,
    /// Local cohomology dimension at the node.
    pub local: usize,
    /// Share of the cohomology glued across a neighbouring forward turning
    /// point (attributed to the earlier of its two targets).
    pub shared: usize,
}

impl NodeContribution {
    pub fn dim(&self) -> usize {
        self.local + self.shared
    }
}

/// Paths of the letters mapping into and out of node `j`.
fn incidence(w: &GenWalk, j: usize) -> (Vec<&Path>, Vec<&Path>) {
    let letters = w.letters();
    let (mut incoming, mut outgoing) = (Vec::new(), Vec::new());
    if j > 0 {
        let l = &letters[j - 1];
        match l.dir {
            Direction::Direct => outgoing.push(&l.path),
            Direction::Inverse => incoming.push(&l.path),
        }
    }
    if j < letters.len() {
        let l = &letters[j];
        match l.dir {
            Direction::Direct => incoming.push(&l.path),
            Direction::Inverse => outgoing.push(&l.path),
        }
    }
    (incoming, outgoing)
}

/// Dimension of the kernel of `u -> q u` on `P_{t(q)}`: the paths starting
/// with the arrow that continues `q` into the ideal.
pub fn kernel_dim(a: &Algebra, q: &Path) -> usize {
    q.last_arrow()
        .and_then(|last| a.relation_successor(last))
        .map_or(0, |alpha| a.paths_starting_with(alpha))
}

/// Closed-form cohomology dimension at every node of a string complex.
pub fn node_contributions(a: &Algebra, w: &GenWalk) -> Result<Vec<NodeContribution>> {
    if !w.is_string() {
        return Err(Error::WrongKind { expected: "GST".into(), found: w.kind().to_string() });
    }
    let mu = w.mu();
    let n = w.width();
    let mut out: Vec<NodeContribution> = (0..=n)
        .map(|j| {
            let (incoming, outgoing) = incidence(w, j);
            let (kind, local) = match (incoming.as_slice(), outgoing.as_slice()) {
                ([p, q], []) => (NodeKind::BackwardTurn, p.len() + q.len() - 1),
                ([], [_, _]) => (NodeKind::ForwardTurn, 0),
                ([p], [_]) => (NodeKind::Run, p.len() - 1),
                ([p], []) => {
                    let ext = a.maximal_extension(p).expect("letter paths are nonzero");
                    (NodeKind::EndIncoming, p.len() + ext.check_len())
                }
                ([], [q]) => (NodeKind::EndOutgoing, kernel_dim(a, q)),
                _ => unreachable!("a node has at most two incident letters"),
            };
            NodeContribution { node: j, degree: mu[j], kind, local, shared: 0 }
        })
        .collect();
    for k in 1..n {
        if out[k].kind == NodeKind::ForwardTurn {
            let (_, outgoing) = incidence(w, k);
            let glued = a.dim_projective(w.node_vertex(k)) - kernel_dim(a, outgoing[0]) - kernel_dim(a, outgoing[1]);
            out[k - 1].shared += glued;
        }
    }
    Ok(out)
}

/// Per-degree sums of [`node_contributions`].
pub fn contribution_vector(a: &Algebra, w: &GenWalk) -> Result<CohVector> {
    let mut dims: BTreeMap<i64, usize> = BTreeMap::new();
    for c in node_contributions(a, w)? {
        *dims.entry(c.degree).or_default() += c.dim();
    }
    Ok(CohVector::from_dims(dims))
}

/// The relation chains glued at the walk ends lying in the leftmost degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BetaTails {
    /// Leftmost component degree of `P_w`.
    pub degree: i64,
    /// Chain `bar(alpha)` resolving the kernel at node 0, prepended inverted.
    pub left: Option<BarDescriptor>,
    /// Chain `bar(alpha)` resolving the kernel at the last node, appended.
    pub right: Option<BarDescriptor>,
}

impl BetaTails {
    pub fn is_trivial(&self) -> bool {
        self.left.is_none() && self.right.is_none()
    }

    pub fn is_periodic(&self) -> bool {
        self.left.iter().chain(&self.right).any(BarDescriptor::is_periodic)
    }
}

pub fn beta_tails(a: &Algebra, w: &GenWalk) -> Result<BetaTails> {
    if !w.is_string() {
        return Err(Error::WrongKind { expected: "GST".into(), found: w.kind().to_string() });
    }
    let mu = w.mu();
    let n = w.width();
    let degree = *mu.iter().min().unwrap();
    let tail = |letter: &Letter, needs: Direction, at_min: bool| -> Result<Option<BarDescriptor>> {
        if !at_min || letter.dir != needs {
            return Ok(None);
        }
        match a.relation_successor(letter.path.last_arrow().unwrap()) {
            Some(alpha) => glue_bar(a, &a.arrow_path(alpha)).map(Some),
            None => Ok(None),
        }
    };
    let left = tail(&w.letters()[0], Direction::Inverse, mu[0] == degree)?;
    let right = tail(&w.letters()[n - 1], Direction::Direct, mu[n] == degree)?;
    Ok(BetaTails { degree, left, right })
}

/// `w` with at most `steps` pieces of each tail glued on.
fn glued_letters(w: &GenWalk, tails: &BetaTails, steps: usize) -> Vec<Letter> {
    let left: Vec<Letter> = tails
        .left
        .as_ref()
        .map(|bar| invert(&bar.prefix(steps).into_iter().map(Letter::direct).collect::<Vec<_>>()))
        .unwrap_or_default();
    let right = tails.right.as_ref().map(|bar| bar.prefix(steps)).unwrap_or_default();
    left.into_iter().chain(w.letters().iter().cloned()).chain(right.into_iter().map(Letter::direct)).collect()
}

/// The walk of `beta(P_w)` when the resolution is finite, `None` when a
/// relation chain is periodic.
pub fn beta_walk(a: &Algebra, w: &GenWalk) -> Result<Option<GenWalk>> {
    let tails = beta_tails(a, w)?;
    if tails.is_periodic() {
        return Ok(None);
    }
    let longest = tails.left.iter().chain(&tails.right).filter_map(BarDescriptor::finite_len).max().unwrap_or(0);
    Ok(Some(classify_walk(a, glued_letters(w, &tails, longest))?))
}

/// `beta(P_w)` cut after `steps` resolution steps.
#[derive(Debug, Clone)]
pub struct BetaWindow {
    pub walk: GenWalk,
    pub complex: ProjComplex,
    /// True when a tail continues past the window; the window then carries
    /// spurious cohomology in `cut_degree` only.
    pub cut: bool,
    pub cut_degree: i64,
}

pub fn beta_window(a: &Algebra, w: &GenWalk, steps: usize) -> Result<BetaWindow> {
    let tails = beta_tails(a, w)?;
    let cut = tails.left.iter().chain(&tails.right).any(|bar| bar.finite_len().is_none_or(|len| len > steps));
    let walk = classify_walk(a, glued_letters(w, &tails, steps))?;
    if !walk.is_string() {
        return Err(Error::Reduction(format!("glued walk is not a generalized string: {}", walk.kind())));
    }
    // the glued walk starts at the prepended nodes, `left` degrees lower
    let left = tails.left.as_ref().map_or(0, |bar| bar.prefix(steps).len() as i64);
    let complex = shift(&string_complex(&walk)?, left);
    Ok(BetaWindow { walk, complex, cut, cut_degree: tails.degree - steps as i64 })
}

/// Cohomology of `beta(P_w)`: the leftmost component degree is erased, every
/// other degree is unchanged.
pub fn beta_cohomology(a: &Algebra, w: &GenWalk) -> Result<CohVector> {
    let tails = beta_tails(a, w)?;
    let dims = cohomology_dims(a, &string_complex(w)?);
    Ok(CohVector::from_dims(dims.dims.into_iter().filter(|&(d, _)| d != tails.degree)))
}

/// A finite complex realizing the witness. `Beta` witnesses with a periodic
/// resolution have none.
pub fn witness_complex(a: &Algebra, witness: &Witness) -> Result<ProjComplex> {
    let base = match witness {
        Witness::Stalk { vertex, .. } => stalk_complex(*vertex),
        Witness::Str { walk, .. } => string_complex(walk)?,
        Witness::Beta { walk, .. } => match beta_walk(a, walk)? {
            Some(full) => {
                let left = beta_tails(a, walk)?.left.and_then(|bar| bar.finite_len()).unwrap_or(0);
                shift(&string_complex(&full)?, left as i64)
            }
            None => return Err(Error::Precondition("beta of a periodic chain is unbounded".into())),
        },
        Witness::Band { walk, lambda, mult, .. } => band_complex(walk, lambda, *mult)?,
    };
    let mut c = shift(&base, witness.shift());
    c.origin = Some(witness.clone());
    Ok(c)
}

pub fn witness_cohomology(a: &Algebra, witness: &Witness) -> Result<CohVector> {
    let base = match witness {
        Witness::Stalk { vertex, .. } => CohVector::from_dims([(0, a.dim_projective(*vertex))]),
        Witness::Str { walk, .. } => cohomology_dims(a, &string_complex(walk)?),
        Witness::Beta { walk, .. } => beta_cohomology(a, walk)?,
        Witness::Band { walk, lambda, mult, .. } => cohomology_dims(a, &band_complex(walk, lambda, *mult)?),
    };
    Ok(base.shifted(witness.shift()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::walks::parse_and_classify;
    use num::BigRational;

    #[test]
    fn a0_base_vector() {
        let a = corpus::a0();
        let w = parse_and_classify(&a, "a1").unwrap();
        let coh = cohomology_dims(&a, &string_complex(&w).unwrap());
        assert_eq!(coh, CohVector::from_dims([(-1, 4), (0, 1)]));
        assert_eq!((coh.hl, coh.hw, coh.hr), (4, 2, 8));
        assert_eq!(coh.to_json(), serde_json::json!({"dims": {"-1": 4, "0": 1}, "hl": 4, "hw": 2, "hr": 8}));
        let nodes = node_contributions(&a, &w).unwrap();
        assert_eq!(nodes.iter().map(|c| (c.degree, c.dim())).collect::<Vec<_>>(), [(0, 1), (-1, 4)]);
    }

    #[test]
    fn interior_run_node() {
        let a = corpus::a0();
        let w = parse_and_classify(&a, "a1, a3").unwrap();
        let nodes = node_contributions(&a, &w).unwrap();
        assert_eq!((nodes[1].degree, nodes[1].dim()), (-1, 0));
        assert_eq!(contribution_vector(&a, &w).unwrap(), cohomology_dims(&a, &string_complex(&w).unwrap()));
    }

    #[test]
    fn forward_turn_shares_cohomology() {
        let k = corpus::kronecker();
        let w = parse_and_classify(&k, "a, ~b").unwrap();
        let rank = cohomology_dims(&k, &string_complex(&w).unwrap());
        assert_eq!(rank, CohVector::from_dims([(0, 5)]));
        let nodes = node_contributions(&k, &w).unwrap();
        assert_eq!(nodes[1].kind, NodeKind::ForwardTurn);
        assert_eq!(nodes[1].dim(), 0);
        assert_eq!(contribution_vector(&k, &w).unwrap(), rank);
    }

    #[test]
    fn stalk_and_zero() {
        let a = corpus::a0();
        let v2 = a.vertex_id("v2").unwrap();
        let coh = cohomology_dims(&a, &stalk_complex(v2));
        assert_eq!(coh, CohVector::from_dims([(0, 6)]));
        assert_eq!(coh.hr, coh.hl);
        let zero = CohVector::from_dims([]);
        assert_eq!((zero.hl, zero.hw, zero.hr), (0, 0, 0));
    }

    #[test]
    fn kronecker_band_vector() {
        let k = corpus::kronecker();
        let w = parse_and_classify(&k, "a, ~b").unwrap();
        let one = BigRational::from_integer(1.into());
        let coh = cohomology_dims(&k, &band_complex(&w, &one, 1).unwrap());
        assert_eq!(coh, CohVector::from_dims([(0, 2)]));
        assert_eq!((coh.hl, coh.hw, coh.hr), (2, 1, 2));
    }

    #[test]
    fn beta_of_a1() {
        let a = corpus::a0();
        let w = parse_and_classify(&a, "a1").unwrap();
        assert_eq!(beta_cohomology(&a, &w).unwrap(), CohVector::from_dims([(0, 1)]));
        let win = beta_window(&a, &w, 1).unwrap();
        let v = |n: &str| a.vertex_id(n).unwrap();
        assert_eq!(win.complex.expanded(-2), vec![v("v4")]);
        assert_eq!(win.complex.expanded(-1), vec![v("v2")]);
        assert_eq!(win.complex.expanded(0), vec![v("v1")]);
        assert!(!win.cut);
        assert_eq!(cohomology_dims(&a, &win.complex), CohVector::from_dims([(0, 1)]));
        let zero_steps = beta_window(&a, &w, 0).unwrap();
        assert_eq!(zero_steps.complex.degrees, string_complex(&w).unwrap().degrees);
    }

    #[test]
    fn beta_exact_leftmost_is_identity() {
        let a = corpus::a0();
        let w = parse_and_classify(&a, "a2").unwrap();
        let tails = beta_tails(&a, &w).unwrap();
        assert!(tails.is_trivial());
        assert_eq!(beta_cohomology(&a, &w).unwrap(), cohomology_dims(&a, &string_complex(&w).unwrap()).clone());
    }

    #[test]
    fn periodic_beta_window_repeats() {
        let c = corpus::three_cycle();
        let w = parse_and_classify(&c, "a").unwrap();
        for steps in 1..=6 {
            let win = beta_window(&c, &w, steps).unwrap();
            assert!(win.cut);
            let coh = cohomology_dims(&c, &win.complex);
            let expected = beta_cohomology(&c, &w).unwrap();
            for d in win.cut_degree + 1..=1 {
                assert_eq!(coh.dim(d), expected.dim(d), "degree {d}, steps {steps}");
            }
        }
    }

    #[test]
    fn shifted_witness() {
        let a = corpus::a0();
        let w = parse_and_classify(&a, "a1").unwrap();
        let coh = witness_cohomology(&a, &Witness::Str { walk: w.clone(), shift: 1 }).unwrap();
        assert_eq!(coh, CohVector::from_dims([(-2, 4), (-1, 1)]));
        let c = witness_complex(&a, &Witness::Str { walk: w, shift: 1 }).unwrap();
        assert_eq!(cohomology_dims(&a, &c), coh);
    }
}
