#![allow(dead_code)]

use sring::{AbelianGroup, SRing};
use std::sync::Arc;

pub fn group(factors: &[i64]) -> Arc<AbelianGroup> {
    Arc::new(AbelianGroup::new(factors).unwrap())
}

pub fn parse(lit: &str) -> Arc<AbelianGroup> {
    Arc::new(AbelianGroup::parse(lit, 10_000).unwrap())
}

/// Every S-ring over `g`, found by running the axiom check on each set
/// partition of the non-identity elements. Sorted by rank, then class lists.
pub fn brute_force_srings(g: &Arc<AbelianGroup>) -> Vec<Vec<Vec<usize>>> {
    let n = g.order();
    let mut labels = vec![0u32; n];
    let mut out = Vec::new();
    fn rec(g: &Arc<AbelianGroup>, x: usize, blocks: u32, labels: &mut Vec<u32>, out: &mut Vec<Vec<Vec<usize>>>) {
        if x == g.order() {
            let inverse_ok = (1..g.order()).all(|y| {
                let z = g.neg(y);
                (1..g.order()).all(|w| (labels[w] == labels[y]) == (labels[g.neg(w)] == labels[z]))
            });
            if inverse_ok {
                if let Ok(a) = SRing::validate_labels(g.clone(), labels) {
                    out.push(a.class_lists());
                }
            }
            return;
        }
        for b in 1..=blocks + 1 {
            labels[x] = b;
            rec(g, x + 1, blocks.max(b), labels, out);
        }
    }
    if n == 1 {
        return vec![vec![vec![0]]];
    }
    rec(g, 1, 0, &mut labels, &mut out);
    out.sort_by(|a, b| (a.len(), a).cmp(&(b.len(), b)));
    out
}

/// Colour of the ordered pair `(x, y)`: the class of `y - x`.
fn colour(a: &SRing, x: usize, y: usize) -> u32 {
    a.labels()[a.group().sub(y, x)]
}

/// Plain backtracking over colour-preserving bijections, extending `img`
/// on points in increasing order.
fn extend(a: &SRing, img: &mut Vec<Option<usize>>, used: &mut Vec<bool>, limit: usize, found: &mut usize) {
    let n = a.group().order();
    let Some(z) = (0..n).find(|&z| img[z].is_none()) else {
        *found += 1;
        return;
    };
    for w in 0..n {
        if used[w] {
            continue;
        }
        let ok = (0..n).all(|u| match img[u] {
            Some(v) => colour(a, u, z) == colour(a, v, w) && colour(a, z, u) == colour(a, w, v),
            None => true,
        });
        if ok {
            img[z] = Some(w);
            used[w] = true;
            extend(a, img, used, limit, found);
            img[z] = None;
            used[w] = false;
            if *found >= limit {
                return;
            }
        }
    }
}

/// Number of automorphisms of the colour graph fixing `0` and `x -> y`, capped at `limit`.
pub fn count_automorphisms(a: &SRing, pins: &[(usize, usize)], limit: usize) -> usize {
    let n = a.group().order();
    let mut img = vec![None; n];
    let mut used = vec![false; n];
    for &(x, y) in pins {
        if let Some(old) = img[x] {
            if old != y {
                return 0;
            }
        }
        if used[y] && img[x] != Some(y) {
            return 0;
        }
        img[x] = Some(y);
        used[y] = true;
    }
    let mut found = 0;
    extend(a, &mut img, &mut used, limit, &mut found);
    found
}

/// Whether every class is one orbit of the stabilizer of `0`, by direct search.
pub fn schurian_by_search(a: &SRing) -> bool {
    a.class_lists().iter().all(|c| c[1..].iter().all(|&y| count_automorphisms(a, &[(0, 0), (c[0], y)], 1) == 1))
}
