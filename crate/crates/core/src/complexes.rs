//! Bounded complexes of indecomposable projectives `P_v = e_v A`.
//!
//! Summands of a degree are stored as groups `(vertex, multiplicity)`;
//! differential entries address individual copies by their position in the
//! expanded list of the degree. An entry with terms `(p, c)` from column
//! summand `P_{t(p)}` to row summand `P_{s(p)}` is the map `u -> c * p u`.
//! `diffs[i]` maps degree `i` to degree `i + 1`.

use std::collections::{BTreeMap, HashMap};

use num::{BigRational, One, Zero};
use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::linalg::SparseMatrix;
use crate::quiver::{Algebra, Path, Presentation, VertexId};
use crate::walks::{Direction, GenWalk, Witness};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SummandGroup {
    pub vertex: VertexId,
    pub mult: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Term {
    pub path: Path,
    pub coeff: BigRational,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Entry {
    pub row: usize,
    pub col: usize,
    pub terms: Vec<Term>,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ProjComplex {
    pub degrees: BTreeMap<i64, Vec<SummandGroup>>,
    pub diffs: BTreeMap<i64, Vec<Entry>>,
    pub origin: Option<Witness>,
    /// Walk node `j` -> (degree, position of its first copy).
    pub node_index: Vec<(i64, usize)>,
}

impl ProjComplex {
    pub fn zero() -> Self {
        ProjComplex::default()
    }

    /// Expanded summand vertices of a degree, one per copy.
    pub fn expanded(&self, degree: i64) -> Vec<VertexId> {
        self.degrees
            .get(&degree)
            .into_iter()
            .flatten()
            .flat_map(|g| std::iter::repeat_n(g.vertex, g.mult))
            .collect()
    }

    pub fn summand_count(&self) -> usize {
        self.degrees.values().flatten().map(|g| g.mult).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.summand_count() == 0
    }

    pub fn min_degree(&self) -> Option<i64> {
        self.degrees.iter().find(|(_, g)| !g.is_empty()).map(|(d, _)| *d)
    }

    pub fn max_degree(&self) -> Option<i64> {
        self.degrees.iter().rev().find(|(_, g)| !g.is_empty()).map(|(d, _)| *d)
    }

    /// Total vector-space dimension of the degree-`i` component.
    pub fn component_dim(&self, a: &Algebra, degree: i64) -> usize {
        self.expanded(degree).into_iter().map(|v| a.dim_projective(v)).sum()
    }

    fn push_summand(&mut self, degree: i64, vertex: VertexId, mult: usize) -> usize {
        let groups = self.degrees.entry(degree).or_default();
        let pos = groups.iter().map(|g| g.mult).sum();
        groups.push(SummandGroup { vertex, mult });
        pos
    }

    fn push_entry(&mut self, degree: i64, row: usize, col: usize, path: &Path, coeff: BigRational) {
        let entries = self.diffs.entry(degree).or_default();
        if let Some(e) = entries.iter_mut().find(|e| e.row == row && e.col == col) {
            e.terms.push(Term { path: path.clone(), coeff });
        } else {
            entries.push(Entry { row, col, terms: vec![Term { path: path.clone(), coeff }] });
        }
    }

    /// JSON export: degrees as `[[vertex, mult], ...]`, differential terms
    /// with exact fraction strings.
    pub fn to_json(&self, p: &Presentation) -> Value {
        let mut degrees = Map::new();
        for (d, groups) in &self.degrees {
            if groups.is_empty() {
                continue;
            }
            let list: Vec<Value> = groups.iter().map(|g| json!([p.vertex_name(g.vertex), g.mult])).collect();
            degrees.insert(d.to_string(), Value::Array(list));
        }
        let mut diffs = Map::new();
        for (d, entries) in &self.diffs {
            if entries.is_empty() {
                continue;
            }
            let mut sorted = entries.clone();
            sorted.sort_by_key(|e| (e.row, e.col));
            let list: Vec<Value> = sorted
                .iter()
                .map(|e| {
                    let terms: Vec<Value> =
                        e.terms.iter().map(|t| json!([p.path_name(&t.path), t.coeff.to_string()])).collect();
                    json!({"row": e.row, "col": e.col, "terms": terms})
                })
                .collect();
            diffs.insert(d.to_string(), Value::Array(list));
        }
        json!({"degrees": degrees, "diffs": diffs})
    }
}

/// The complex `0 -> P_v -> 0` in degree 0.
pub fn stalk_complex(vertex: VertexId) -> ProjComplex {
    let mut c = ProjComplex::zero();
    c.push_summand(0, vertex, 1);
    c.node_index.push((0, 0));
    c.origin = Some(Witness::Stalk { vertex, shift: 0 });
    c
}

/// The string complex: node `j` sits in degree `mu(j)` as `P_{c(j)}`; a
/// direct letter `w_j` maps node `j` to node `j - 1`, an inverse letter
/// `w_{j+1}` maps node `j` to node `j + 1`.
pub fn string_complex(w: &GenWalk) -> Result<ProjComplex> {
    if !w.is_string() {
        return Err(Error::WrongKind { expected: "GST".into(), found: w.kind().to_string() });
    }
    let mu = w.mu();
    let mut c = ProjComplex::zero();
    for j in 0..=w.width() {
        let pos = c.push_summand(mu[j], w.node_vertex(j), 1);
        c.node_index.push((mu[j], pos));
    }
    for (k, letter) in w.letters().iter().enumerate() {
        // letter w_{k+1} joins node k and node k + 1
        let (from, to) = match letter.dir {
            Direction::Direct => (k + 1, k),
            Direction::Inverse => (k, k + 1),
        };
        let (deg, col) = c.node_index[from];
        let (_, row) = c.node_index[to];
        c.push_entry(deg, row, col, &letter.path, BigRational::one());
    }
    c.origin = Some(Witness::Str { walk: w.clone(), shift: 0 });
    Ok(c)
}

/// The band complex with `mult` copies per node and the closing letter
/// twisted by the upper-triangular Jordan block `J_{lambda, mult}`.
/// The walk is used exactly as given (no rotation).
pub fn band_complex(w: &GenWalk, lambda: &BigRational, mult: usize) -> Result<ProjComplex> {
    if !w.is_band() {
        return Err(Error::WrongKind { expected: "GBA".into(), found: w.kind().to_string() });
    }
    if lambda.is_zero() {
        return Err(Error::ZeroLambda);
    }
    if mult == 0 {
        return Err(Error::ZeroMultiplicity);
    }
    let n = w.width();
    let mu = w.mu();
    let mut c = ProjComplex::zero();
    for j in 0..n {
        let pos = c.push_summand(mu[j], w.node_vertex(j), mult);
        c.node_index.push((mu[j], pos));
    }
    for (k, letter) in w.letters().iter().enumerate() {
        let closing = k == n - 1;
        let next = if closing { 0 } else { k + 1 };
        let (from, to) = match letter.dir {
            Direction::Direct => (next, k),
            Direction::Inverse => (k, next),
        };
        let (deg, col0) = c.node_index[from];
        let (_, row0) = c.node_index[to];
        for a in 0..mult {
            if closing {
                c.push_entry(deg, row0 + a, col0 + a, &letter.path, lambda.clone());
                if a + 1 < mult {
                    c.push_entry(deg, row0 + a, col0 + a + 1, &letter.path, BigRational::one());
                }
            } else {
                c.push_entry(deg, row0 + a, col0 + a, &letter.path, BigRational::one());
            }
        }
    }
    c.origin = Some(Witness::Band { walk: w.clone(), lambda: lambda.clone(), mult, shift: 0 });
    Ok(c)
}

/// `C[k]`: degrees move down by `k`, differentials pick up `(-1)^k`.
pub fn shift(c: &ProjComplex, k: i64) -> ProjComplex {
    let negate = k.rem_euclid(2) == 1;
    let mut out = ProjComplex::zero();
    out.degrees = c.degrees.iter().map(|(d, g)| (d - k, g.clone())).collect();
    out.diffs = c
        .diffs
        .iter()
        .map(|(d, entries)| {
            let entries = entries
                .iter()
                .map(|e| Entry {
                    row: e.row,
                    col: e.col,
                    terms: e
                        .terms
                        .iter()
                        .map(|t| Term { path: t.path.clone(), coeff: if negate { -t.coeff.clone() } else { t.coeff.clone() } })
                        .collect(),
                })
                .collect();
            (d - k, entries)
        })
        .collect();
    out.node_index = c.node_index.iter().map(|&(d, p)| (d - k, p)).collect();
    out.origin = c.origin.clone().map(|o| {
        let s = o.shift();
        o.with_shift(s + k)
    });
    out
}

/// Brutal truncation: drops every degree below `j`.
pub fn brutal_truncate(c: &ProjComplex, j: i64) -> ProjComplex {
    let mut out = c.clone();
    out.degrees.retain(|d, _| *d >= j);
    out.diffs.retain(|d, _| *d >= j);
    out.node_index.clear();
    out.origin = None;
    out
}

/// Every differential term lies in the radical (positive path length).
pub fn check_minimal(c: &ProjComplex) -> bool {
    c.diffs.values().flatten().flat_map(|e| &e.terms).all(|t| !t.path.is_trivial())
}

/// Matrix of `d^i` on the path bases: rows are basis paths of the degree
/// `i + 1` summands, columns those of degree `i`.
pub fn differential_matrix(a: &Algebra, c: &ProjComplex, i: i64) -> SparseMatrix {
    let src = c.expanded(i);
    let dst = c.expanded(i + 1);
    let offsets = |vs: &[VertexId]| -> Vec<usize> {
        let mut acc = 0;
        vs.iter()
            .map(|&v| {
                let o = acc;
                acc += a.dim_projective(v);
                o
            })
            .collect()
    };
    let (col_off, row_off) = (offsets(&src), offsets(&dst));
    let cols: usize = src.iter().map(|&v| a.dim_projective(v)).sum();
    let rows: usize = dst.iter().map(|&v| a.dim_projective(v)).sum();
    let mut m = SparseMatrix::zeros(rows, cols);
    for e in c.diffs.get(&i).into_iter().flatten() {
        for t in &e.terms {
            for (k, u) in a.projective_basis(src[e.col]).iter().enumerate() {
                if let Some(pu) = a.compose(&t.path, u).expect("entry paths match summand vertices") {
                    m.add(row_off[e.row] + a.basis_index(&pu), col_off[e.col] + k, &t.coeff);
                }
            }
        }
    }
    m
}

/// Symbolic check of `d^{i+1} d^i = 0` for every `i`, composing paths in
/// `kQ/I`.
pub fn check_d_squared(a: &Algebra, c: &ProjComplex) -> bool {
    for (&i, first) in &c.diffs {
        let Some(second) = c.diffs.get(&(i + 1)) else { continue };
        // (row in i+2, col in i) -> path -> coefficient
        let mut acc: HashMap<(usize, usize, Path), BigRational> = HashMap::new();
        for e1 in first {
            for e2 in second.iter().filter(|e2| e2.col == e1.row) {
                for t1 in &e1.terms {
                    for t2 in &e2.terms {
                        if let Some(prod) = a.compose(&t2.path, &t1.path).expect("composable entries") {
                            let slot = acc.entry((e2.row, e1.col, prod)).or_insert_with(BigRational::zero);
                            *slot += &t2.coeff * &t1.coeff;
                        }
                    }
                }
            }
        }
        if acc.values().any(|v| !v.is_zero()) {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::walks::parse_and_classify;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn a0_string_complex_of_a1() {
        let a = corpus::a0();
        let w = parse_and_classify(&a, "a1").unwrap();
        let c = string_complex(&w).unwrap();
        assert_eq!(c.expanded(0), vec![a.vertex_id("v1").unwrap()]);
        assert_eq!(c.expanded(-1), vec![a.vertex_id("v2").unwrap()]);
        let m = differential_matrix(&a, &c, -1);
        assert_eq!((m.rows(), m.cols()), (3, 6));
        assert_eq!(m.rank(), 2);
        assert_eq!(
            c.to_json(&a),
            serde_json::json!({"degrees": {"-1": [["v2", 1]], "0": [["v1", 1]]},
                               "diffs": {"-1": [{"row": 0, "col": 0, "terms": [["a1", "1"]]}]}})
        );
    }

    #[test]
    fn a0_string_complex_of_a1_a3() {
        let a = corpus::a0();
        let w = parse_and_classify(&a, "a1, a3").unwrap();
        let c = string_complex(&w).unwrap();
        let v = |n: &str| a.vertex_id(n).unwrap();
        assert_eq!(c.expanded(-2), vec![v("v4")]);
        assert_eq!(c.expanded(-1), vec![v("v2")]);
        assert_eq!(c.expanded(0), vec![v("v1")]);
        assert!(check_d_squared(&a, &c));
        let t = brutal_truncate(&c, -1);
        assert_eq!(t.summand_count(), 2);
        assert!(t.expanded(-2).is_empty());
        assert!(!t.diffs.contains_key(&-2));
    }

    #[test]
    fn d_squared_detects_nonzero_composite() {
        let a = corpus::a0();
        let w = parse_and_classify(&a, "a3, a4").unwrap();
        // a3 a4 is not in the ideal: the walk is invalid and its naive complex is not a complex
        assert!(!w.is_string());
        let mut c = ProjComplex::zero();
        c.push_summand(-2, a.vertex_id("v5").unwrap(), 1);
        c.push_summand(-1, a.vertex_id("v4").unwrap(), 1);
        c.push_summand(0, a.vertex_id("v2").unwrap(), 1);
        c.push_entry(-2, 0, 0, &a.path_by_names(&["a4"]).unwrap(), q(1));
        c.push_entry(-1, 0, 0, &a.path_by_names(&["a3"]).unwrap(), q(1));
        assert!(!check_d_squared(&a, &c));
    }

    #[test]
    fn kronecker_band_complexes() {
        let k = corpus::kronecker();
        let w = parse_and_classify(&k, "a, ~b").unwrap();
        let c = band_complex(&w, &q(1), 1).unwrap();
        assert_eq!(c.expanded(0), vec![0]);
        assert_eq!(c.expanded(-1), vec![1]);
        let m = differential_matrix(&k, &c, -1);
        assert_eq!((m.rows(), m.cols(), m.rank()), (3, 1, 1));

        let c2 = band_complex(&w, &q(1), 2).unwrap();
        assert_eq!(c2.expanded(0).len(), 2);
        assert_eq!(c2.expanded(-1).len(), 2);
        assert!(check_d_squared(&k, &c2));
        assert_eq!(differential_matrix(&k, &c2, -1).rank(), 2);

        for l in [q(2), q(-1)] {
            let cl = band_complex(&w, &l, 1).unwrap();
            assert_eq!(cl.degrees, c.degrees);
        }
        assert!(matches!(band_complex(&w, &q(0), 1), Err(Error::ZeroLambda)));
        assert!(matches!(band_complex(&w, &q(1), 0), Err(Error::ZeroMultiplicity)));
        let s = parse_and_classify(&k, "a").unwrap();
        assert!(band_complex(&s, &q(1), 1).is_err());
    }

    #[test]
    fn shift_and_truncate_edges() {
        let a = corpus::a0();
        let c = string_complex(&parse_and_classify(&a, "a1, a3").unwrap()).unwrap();
        assert_eq!(shift(&c, 0).degrees, c.degrees);
        assert_eq!(shift(&shift(&c, 1), -1).diffs, c.diffs);
        assert_eq!(brutal_truncate(&c, -10).degrees, c.degrees);
        assert!(brutal_truncate(&c, 5).is_zero());
    }

    #[test]
    fn minimality() {
        let a = corpus::a0();
        let c = string_complex(&parse_and_classify(&a, "a1").unwrap()).unwrap();
        assert!(check_minimal(&c));
        assert!(check_minimal(&ProjComplex::zero()));
        let mut bad = ProjComplex::zero();
        bad.push_summand(-1, 0, 1);
        bad.push_summand(0, 0, 1);
        bad.push_entry(-1, 0, 0, &Path::trivial(0), q(1));
        assert!(!check_minimal(&bad));
    }

    #[test]
    fn stalk() {
        let c = stalk_complex(3);
        assert_eq!(c.expanded(0), vec![3]);
        assert!(c.diffs.is_empty());
    }
}
