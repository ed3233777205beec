use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::EnumerateError;
use crate::hypergraph::{CycleClass, Hypergraph};

const MAX_ATTEMPTS: usize = 64;
const FUSION_TRIES: usize = 256;

/// A random member of the class with `m` edges, deterministic in `seed`.
///
/// Grows a random supertree edge by edge (each new edge hangs off a random
/// existing vertex), then performs `c` fusions. A fusion replaces a pendent
/// vertex of some edge by a vertex outside that edge, removing one vertex
/// while keeping the hypergraph simple and connected. Labels are shuffled
/// at the end.
pub fn random_instance(class: CycleClass, k: usize, m: usize, seed: u64) -> Result<Hypergraph, EnumerateError> {
    let min_m = if class == CycleClass::Supertree { 1 } else { 2 };
    if k < 3 || m < min_m {
        return Err(EnumerateError::InvalidParameters { k, m });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..MAX_ATTEMPTS {
        if let Some(h) = attempt(class, k, m, &mut rng) {
            return Ok(h);
        }
    }
    Err(EnumerateError::RetryExhausted { class, k, m, attempts: MAX_ATTEMPTS })
}

fn attempt(class: CycleClass, k: usize, m: usize, rng: &mut ChaCha8Rng) -> Option<Hypergraph> {
    let mut edges: Vec<Vec<usize>> = vec![(0..k).collect()];
    let mut n = k;
    for _ in 1..m {
        let anchor = rng.gen_range(0..n);
        let mut e = vec![anchor];
        e.extend(n..n + k - 1);
        n += k - 1;
        edges.push(e);
    }

    for _ in 0..class.cyclomatic() {
        if !fuse(&mut edges, &mut n, rng) {
            return None;
        }
    }

    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    let relabeled = edges.iter().map(|e| e.iter().map(|&v| perm[v]).collect()).collect();
    let h = Hypergraph::new(k, n, relabeled).ok()?;
    (h.classify().tag == class.tag()).then_some(h)
}

fn fuse(edges: &mut [Vec<usize>], n: &mut usize, rng: &mut ChaCha8Rng) -> bool {
    for _ in 0..FUSION_TRIES {
        let mut degree = vec![0usize; *n];
        for e in edges.iter() {
            for &v in e {
                degree[v] += 1;
            }
        }
        let ei = rng.gen_range(0..edges.len());
        let pendent: Vec<usize> = edges[ei].iter().copied().filter(|&v| degree[v] == 1).collect();
        if pendent.is_empty() || pendent.len() == edges[ei].len() {
            continue;
        }
        let p = *pendent.choose(rng).expect("non-empty");
        let outside: Vec<usize> = (0..*n).filter(|v| !edges[ei].contains(v)).collect();
        let Some(&x) = outside.choose(rng) else {
            continue;
        };
        let mut candidate: Vec<usize> = edges[ei].iter().map(|&v| if v == p { x } else { v }).collect();
        candidate.sort_unstable();
        let duplicate = edges.iter().enumerate().any(|(i, f)| {
            if i == ei {
                return false;
            }
            let mut g = f.clone();
            g.sort_unstable();
            g == candidate
        });
        if duplicate {
            continue;
        }
        edges[ei] = candidate;
        // p is gone; move the last label into its slot
        let last = *n - 1;
        if p != last {
            for e in edges.iter_mut() {
                for v in e.iter_mut() {
                    if *v == last {
                        *v = p;
                    }
                }
            }
        }
        *n -= 1;
        return true;
    }
    false
}
