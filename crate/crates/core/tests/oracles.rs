//! Independent brute-force oracles for the path basis and for walk
//! classification, written directly from the definitions.

use std::collections::BTreeSet;

use gentle_core::corpus;
use gentle_core::walks::{canonical_string, enumerate_gst, Direction};
use gentle_core::{classify_walk, Algebra, Letter, Path, Presentation};

/// All nonzero paths from `v`: arrow sequences with no consecutive pair in
/// the relation list.
fn brute_basis(p: &Presentation, v: usize) -> BTreeSet<Vec<usize>> {
    let rels: BTreeSet<(usize, usize)> = p.relations().collect();
    let mut out = BTreeSet::new();
    let mut frontier: Vec<Vec<usize>> = vec![vec![]];
    out.insert(vec![]);
    while let Some(path) = frontier.pop() {
        let end = path.last().map_or(v, |&x| p.arrow(x).target);
        for (b, arrow) in p.arrows().iter().enumerate() {
            if arrow.source != end || path.last().is_some_and(|&x| rels.contains(&(x, b))) {
                continue;
            }
            let mut longer = path.clone();
            longer.push(b);
            assert!(longer.len() <= 64, "brute force found an infinite path");
            out.insert(longer.clone());
            frontier.push(longer);
        }
    }
    out
}

#[test]
fn basis_matches_brute_force() {
    for a in corpus::test_corpus(30) {
        for v in 0..a.num_vertices() {
            let ours: BTreeSet<Vec<usize>> = a.projective_basis(v).iter().map(|x| x.arrows().to_vec()).collect();
            assert_eq!(ours, brute_basis(&a, v), "{} at {}", a.name(), a.vertex_name(v));
        }
    }
}

#[test]
fn a0_projective_dimensions() {
    let a = corpus::a0();
    let v2 = a.vertex_id("v2").unwrap();
    // dim P_2 = 6 bounds the cohomological length of A0
    assert_eq!(a.dim_projective(v2), 6);
    let total: usize = (0..a.num_vertices()).map(|v| brute_basis(&a, v).len()).sum();
    assert_eq!(a.path_basis().len(), total);
}

fn nonzero_paths(a: &Algebra, max_len: usize) -> Vec<Path> {
    a.nontrivial_paths().filter(|x| x.len() <= max_len).cloned().collect()
}

/// Generalized-walk conditions checked letter pair by letter pair.
fn oracle_is_gst(p: &Presentation, w: &[Letter]) -> bool {
    let rel = |x: usize, y: usize| p.relations().any(|r| r == (x, y));
    w.windows(2).all(|pair| {
        let (x, y) = (&pair[0], &pair[1]);
        if x.target() != y.source() {
            return false;
        }
        let (xp, yp) = (x.path.arrows(), y.path.arrows());
        match (x.dir, y.dir) {
            (Direction::Direct, Direction::Direct) => rel(*xp.last().unwrap(), yp[0]),
            (Direction::Inverse, Direction::Inverse) => rel(*yp.last().unwrap(), xp[0]),
            // the two arrows meeting at the junction must differ
            (Direction::Direct, Direction::Inverse) => xp.last() != yp.last(),
            (Direction::Inverse, Direction::Direct) => xp[0] != yp[0],
        }
    })
}

#[test]
fn enumeration_matches_brute_force() {
    let budget = 4;
    for a in corpus::test_corpus(12) {
        let paths = nonzero_paths(&a, budget);
        let letters: Vec<Letter> =
            paths.iter().flat_map(|x| [Letter::direct(x.clone()), Letter::inverse(x.clone())]).collect();
        let mut expected: BTreeSet<Vec<Letter>> = BTreeSet::new();
        let mut frontier: Vec<(Vec<Letter>, usize)> = letters.iter().map(|l| (vec![l.clone()], l.len())).collect();
        while let Some((w, used)) = frontier.pop() {
            if !oracle_is_gst(&a, &w) {
                continue;
            }
            let walk = classify_walk(&a, w.clone()).unwrap();
            assert!(walk.is_string(), "{}: oracle accepts {}", a.name(), walk.literal(&a));
            expected.insert(canonical_string(&a, &walk).unwrap().letters().to_vec());
            for l in &letters {
                if used + l.len() <= budget {
                    let mut next = w.clone();
                    next.push(l.clone());
                    frontier.push((next, used + l.len()));
                }
            }
        }
        let found = enumerate_gst(&a, budget);
        let ours: BTreeSet<Vec<Letter>> = found.walks.iter().map(|w| w.letters().to_vec()).collect();
        assert_eq!(ours, expected, "{}", a.name());
    }
}

#[test]
fn classifier_rejects_what_the_oracle_rejects() {
    for a in corpus::test_corpus(8) {
        let paths = nonzero_paths(&a, 2);
        for x in &paths {
            for y in &paths {
                for (dx, dy) in [(true, true), (true, false), (false, true), (false, false)] {
                    let mk = |p: &Path, d: bool| if d { Letter::direct(p.clone()) } else { Letter::inverse(p.clone()) };
                    let w = vec![mk(x, dx), mk(y, dy)];
                    let ours = classify_walk(&a, w.clone()).is_ok_and(|g| g.is_string());
                    assert_eq!(ours, oracle_is_gst(&a, &w), "{} {}", a.name(), gentle_core::walks::format_walk(&a, &w));
                }
            }
        }
    }
}
