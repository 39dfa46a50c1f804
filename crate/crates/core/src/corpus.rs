//! Named algebras and a seeded generator of random gentle algebras.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::quiver::{validate_gentle, Algebra, Presentation};

pub const A0_TEXT: &str = include_str!("../examples/a0.alg");
pub const KRONECKER_TEXT: &str = include_str!("../examples/kronecker.alg");
pub const THREE_CYCLE_TEXT: &str = include_str!("../examples/three_cycle.alg");

pub fn a0() -> Algebra {
    Algebra::parse(A0_TEXT).expect("A0 is gentle")
}

pub fn kronecker() -> Algebra {
    Algebra::parse(KRONECKER_TEXT).expect("Kronecker is gentle")
}

pub fn three_cycle() -> Algebra {
    Algebra::parse(THREE_CYCLE_TEXT).expect("three-cycle is gentle")
}

/// `n` isolated vertices.
pub fn semisimple(n: usize) -> Algebra {
    let mut p = Presentation::new(format!("semisimple{n}"));
    for v in 1..=n {
        p.add_vertex(&format!("v{v}")).unwrap();
    }
    Algebra::new(p).unwrap()
}

/// Linearly oriented type A quiver with `n` vertices, no relations.
pub fn linear_a(n: usize) -> Algebra {
    let mut p = Presentation::new(format!("linear_a{n}"));
    for v in 1..=n {
        p.add_vertex(&format!("v{v}")).unwrap();
    }
    for v in 1..n {
        p.add_arrow(&format!("a{v}"), &format!("v{v}"), &format!("v{}", v + 1)).unwrap();
    }
    Algebra::new(p).unwrap()
}

/// A random connected gentle algebra on `2..=max_vertices` vertices.
///
/// The same seed always produces the same presentation.
pub fn random_gentle(seed: u64, max_vertices: usize) -> Algebra {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        if let Some(a) = try_random(&mut rng, seed, max_vertices.max(2)) {
            return a;
        }
    }
}

fn try_random(rng: &mut ChaCha8Rng, seed: u64, max_vertices: usize) -> Option<Algebra> {
    let n = rng.gen_range(2..=max_vertices);
    let mut out_deg = vec![0usize; n];
    let mut in_deg = vec![0usize; n];
    let mut arrows: Vec<(usize, usize)> = Vec::new();
    let mut push = |s: usize, t: usize, arrows: &mut Vec<(usize, usize)>| {
        if out_deg[s] < 2 && in_deg[t] < 2 {
            out_deg[s] += 1;
            in_deg[t] += 1;
            arrows.push((s, t));
            true
        } else {
            false
        }
    };
    // spanning tree with random orientations
    for v in 1..n {
        let mut placed = false;
        for _ in 0..16 {
            let u = rng.gen_range(0..v);
            let (s, t) = if rng.gen_bool(0.5) { (u, v) } else { (v, u) };
            if push(s, t, &mut arrows) {
                placed = true;
                break;
            }
        }
        if !placed {
            return None;
        }
    }
    let extra = rng.gen_range(0..=n);
    for _ in 0..extra {
        let s = rng.gen_range(0..n);
        let t = rng.gen_range(0..n);
        if s == t && !rng.gen_bool(0.2) {
            continue;
        }
        push(s, t, &mut arrows);
    }

    let mut p = Presentation::new(format!("random{seed}"));
    for v in 0..n {
        p.add_vertex(&format!("v{}", v + 1)).unwrap();
    }
    for (i, &(s, t)) in arrows.iter().enumerate() {
        p.add_arrow(&format!("x{}", i + 1), &format!("v{}", s + 1), &format!("v{}", t + 1)).unwrap();
    }
    // Relations are chosen vertex by vertex among the admissible patterns.
    for v in 0..n {
        let ins: Vec<usize> = (0..arrows.len()).filter(|&a| arrows[a].1 == v).collect();
        let outs: Vec<usize> = (0..arrows.len()).filter(|&a| arrows[a].0 == v).collect();
        let pairs: Vec<(usize, usize)> = ins.iter().flat_map(|&b| outs.iter().map(move |&a| (b, a))).collect();
        let mut options: Vec<Vec<(usize, usize)>> = Vec::new();
        for mask in 0u32..(1 << pairs.len()) {
            let chosen: Vec<(usize, usize)> =
                (0..pairs.len()).filter(|i| mask & (1 << i) != 0).map(|i| pairs[i]).collect();
            let ok = ins.iter().all(|&b| {
                let rel = outs.iter().filter(|&&a| chosen.contains(&(b, a))).count();
                rel <= 1 && outs.len() - rel <= 1
            }) && outs.iter().all(|&a| {
                let rel = ins.iter().filter(|&&b| chosen.contains(&(b, a))).count();
                rel <= 1 && ins.len() - rel <= 1
            });
            if ok {
                options.push(chosen);
            }
        }
        let chosen = options.choose(rng)?;
        for &(b, a) in chosen {
            p.add_relation(&format!("x{}", b + 1), &format!("x{}", a + 1)).unwrap();
        }
    }
    if !validate_gentle(&p).pass {
        return None;
    }
    Algebra::new(p).ok()
}

/// The fixed test corpus: named algebras followed by `random` random ones.
pub fn test_corpus(random: usize) -> Vec<Algebra> {
    let mut out = vec![a0(), kronecker(), three_cycle(), linear_a(4), semisimple(1)];
    out.extend((0..random as u64).map(|s| random_gentle(1000 + s, 8)));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn random_algebras_are_gentle_and_reproducible() {
        for seed in 0..40 {
            let a = random_gentle(seed, 8);
            assert!(validate_gentle(a.presentation()).pass);
            assert!(validate_gentle(a.presentation()).connected);
            assert!(a.num_vertices() <= 8);
            assert_eq!(random_gentle(seed, 8).presentation(), a.presentation());
        }
    }
}
