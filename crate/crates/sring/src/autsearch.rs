//! Automorphism groups of S-rings by individualization–refinement.
//!
//! The colored Cayley configuration of an S-ring has the pair `(g, h)`
//! colored by the class of `h - g`. Translations are automorphisms, so the
//! search individualizes `e` at the root and only computes the stabilizer
//! `Aut(A)_e`; the full group is generated by it together with `G_r`.

use crate::error::{Error, Result};
use crate::perm::{PermGroup, Permutation, MAX_DEGREE};
use crate::sring::SRing;
use num_bigint::BigUint;

/// The edge-colored complete digraph of an S-ring.
pub struct ColorConfig {
    n: usize,
    edge: Vec<u32>,
}

impl ColorConfig {
    pub fn new(a: &SRing) -> Self {
        let g = a.group();
        let n = g.order();
        let mut edge = vec![0u32; n * n];
        for v in 0..n {
            for w in 0..n {
                edge[v * n + w] = a.class_of(g.sub(w, v)) as u32;
            }
        }
        ColorConfig { n, edge }
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    #[inline]
    fn color(&self, v: usize, w: usize) -> u32 {
        self.edge[v * self.n + w]
    }

    /// Stable refinement of a vertex coloring. Colors are renumbered by the
    /// sorted order of `(old color, neighbour signature)`, so the numbering is
    /// invariant under isomorphism.
    pub fn refine(&self, colors: &[u32]) -> Vec<u32> {
        let n = self.n;
        let mut colors = colors.to_vec();
        let mut ncolors = count_colors(&colors);
        let mut sizes = vec![0usize; n];
        loop {
            sizes.iter_mut().for_each(|s| *s = 0);
            for &c in &colors {
                sizes[c as usize] += 1;
            }
            let mut keyed: Vec<(u32, Vec<u32>, usize)> = (0..n)
                .map(|v| {
                    let c = colors[v];
                    if sizes[c as usize] == 1 {
                        return (c, Vec::new(), v);
                    }
                    let mut sig: Vec<u32> = (0..n).map(|w| self.color(v, w) * ncolors as u32 + colors[w]).collect();
                    sig.sort_unstable();
                    (c, sig, v)
                })
                .collect();
            keyed.sort_unstable();
            let mut next = vec![0u32; n];
            let mut k = 0u32;
            for i in 0..n {
                if i > 0 && (keyed[i].0 != keyed[i - 1].0 || keyed[i].1 != keyed[i - 1].1) {
                    k += 1;
                }
                next[keyed[i].2] = k;
            }
            let nk = k as usize + 1;
            colors = next;
            if nk == ncolors {
                return colors;
            }
            ncolors = nk;
        }
    }

    fn is_automorphism(&self, p: &[u32]) -> bool {
        (0..self.n).all(|v| {
            let pv = p[v] as usize;
            (0..self.n).all(|w| self.color(v, w) == self.color(pv, p[w] as usize))
        })
    }
}

fn count_colors(colors: &[u32]) -> usize {
    colors.iter().map(|&c| c as usize + 1).max().unwrap_or(0)
}

/// Splits `v` off its color class, placing it first.
fn individualize(colors: &[u32], v: usize) -> Vec<u32> {
    let keys: Vec<u32> = colors.iter().enumerate().map(|(x, &c)| 2 * c + (x != v) as u32).collect();
    let mut present = vec![false; 2 * count_colors(colors)];
    for &k in &keys {
        present[k as usize] = true;
    }
    let mut rank = vec![0u32; present.len()];
    let mut r = 0;
    for (k, &p) in present.iter().enumerate() {
        rank[k] = r;
        r += p as u32;
    }
    keys.iter().map(|&k| rank[k as usize]).collect()
}

/// Smallest non-singleton color class, ties broken by color; members ascending.
fn target_cell(colors: &[u32]) -> Option<Vec<usize>> {
    let k = count_colors(colors);
    let mut sizes = vec![0usize; k];
    for &c in colors {
        sizes[c as usize] += 1;
    }
    let best = (0..k).filter(|&c| sizes[c] > 1).min_by_key(|&c| (sizes[c], c))?;
    Some((0..colors.len()).filter(|&x| colors[x] as usize == best).collect())
}

fn cell_profile(colors: &[u32]) -> Vec<usize> {
    let mut sizes = vec![0usize; count_colors(colors)];
    for &c in colors {
        sizes[c as usize] += 1;
    }
    sizes
}

struct Node {
    profile: Vec<usize>,
    colors: Vec<u32>,
    cell: Vec<usize>,
}

/// Result of the search: generators of `Aut(A)_e`, the base below `e` and the
/// fundamental orbit lengths along it.
pub struct StabilizerSearch {
    pub generators: Vec<Permutation>,
    pub base: Vec<usize>,
    pub orbit_lengths: Vec<usize>,
}

impl StabilizerSearch {
    pub fn order(&self) -> BigUint {
        self.orbit_lengths.iter().fold(BigUint::from(1u32), |acc, &l| acc * BigUint::from(l))
    }

    /// Orbit labels of `Aut(A)_e` on the group elements.
    pub fn orbits(&self, n: usize) -> Vec<u32> {
        let mut uf: Vec<usize> = (0..n).collect();
        for p in &self.generators {
            for x in 0..n {
                union(&mut uf, x, p.apply(x));
            }
        }
        (0..n).map(|x| find(&mut uf, x) as u32).collect()
    }
}

fn find(uf: &mut [usize], x: usize) -> usize {
    let mut r = x;
    while uf[r] != r {
        r = uf[r];
    }
    let mut y = x;
    while uf[y] != r {
        let next = uf[y];
        uf[y] = r;
        y = next;
    }
    r
}

/// Unites the classes of `x` and `y`, keeping the smaller index as root.
fn union(uf: &mut [usize], x: usize, y: usize) {
    let (a, b) = (find(uf, x), find(uf, y));
    if a != b {
        let (lo, hi) = if a < b { (a, b) } else { (b, a) };
        uf[hi] = lo;
    }
}

struct Search<'a> {
    cfg: &'a ColorConfig,
    path: Vec<Node>,
    leaf: Vec<usize>,
}

impl Search<'_> {
    /// Discrete coloring to the vertex carrying each color.
    fn vertex_of_color(colors: &[u32]) -> Vec<usize> {
        let mut v = vec![0usize; colors.len()];
        for (x, &c) in colors.iter().enumerate() {
            v[c as usize] = x;
        }
        v
    }

    fn first_path(&mut self, root: Vec<u32>) {
        let mut colors = root;
        loop {
            let profile = cell_profile(&colors);
            match target_cell(&colors) {
                None => {
                    self.leaf = Self::vertex_of_color(&colors);
                    return;
                }
                Some(cell) => {
                    let next = self.cfg.refine(&individualize(&colors, cell[0]));
                    self.path.push(Node { profile, colors, cell });
                    colors = next;
                }
            }
        }
    }

    /// Depth-first search below a node at `level` for a leaf equivalent to the first leaf.
    fn find_leaf(&self, colors: Vec<u32>, level: usize) -> Option<Permutation> {
        let profile = cell_profile(&colors);
        if level == self.path.len() {
            if profile.len() != self.cfg.n {
                return None;
            }
            let here = Self::vertex_of_color(&colors);
            let mut p = vec![0u32; self.cfg.n];
            for (c, &x) in self.leaf.iter().enumerate() {
                p[x] = here[c] as u32;
            }
            return self.cfg.is_automorphism(&p).then(|| Permutation::new(p).unwrap());
        }
        if profile != self.path[level].profile {
            return None;
        }
        let cell = target_cell(&colors)?;
        for &u in &cell {
            let child = self.cfg.refine(&individualize(&colors, u));
            if let Some(p) = self.find_leaf(child, level + 1) {
                return Some(p);
            }
        }
        None
    }
}

/// Generators and orbit data of the stabilizer of `e` in `Aut(A)`.
pub fn stabilizer_search(a: &SRing) -> Result<StabilizerSearch> {
    let n = a.group().order();
    if n > MAX_DEGREE {
        return Err(Error::DegreeTooLarge(n));
    }
    let cfg = ColorConfig::new(a);
    let root = cfg.refine(&individualize(&vec![0; n], 0));
    let mut search = Search { cfg: &cfg, path: Vec::new(), leaf: Vec::new() };
    search.first_path(root);
    let depth = search.path.len();
    let mut gens: Vec<Permutation> = Vec::new();
    let mut orbit_lengths = vec![0usize; depth];
    let mut uf: Vec<usize> = (0..n).collect();
    for level in (0..depth).rev() {
        let node = &search.path[level];
        let b = node.cell[0];
        for &v in &node.cell[1..] {
            if find(&mut uf, v) == find(&mut uf, b) {
                continue;
            }
            let child = cfg.refine(&individualize(&node.colors, v));
            if let Some(p) = search.find_leaf(child, level + 1) {
                for x in 0..n {
                    union(&mut uf, x, p.apply(x));
                }
                gens.push(p);
            }
        }
        let rb = find(&mut uf, b);
        orbit_lengths[level] = node.cell.iter().filter(|&&x| find(&mut uf, x) == rb).count();
    }
    let base = search.path.iter().map(|nd| nd.cell[0]).collect();
    Ok(StabilizerSearch { generators: gens, base, orbit_lengths })
}

/// `Aut(A)` as a permutation group with base `[e, ...]`.
pub fn aut_sring(a: &SRing) -> Result<PermGroup> {
    aut_from_search(a, &stabilizer_search(a)?)
}

/// `Aut(A)` assembled from translations and a finished stabilizer search.
pub fn aut_from_search(a: &SRing, st: &StabilizerSearch) -> Result<PermGroup> {
    let g = a.group();
    let mut strong: Vec<Permutation> =
        g.generators().iter().filter(|&&t| t != 0).map(|&t| Permutation::translation(g, t)).collect();
    strong.extend(st.generators.iter().cloned());
    let mut base = vec![0];
    base.extend(st.base.iter().copied());
    let k = PermGroup::from_base_and_strong_gens(g.order(), &base, &strong);
    let expected = st.order() * BigUint::from(g.order());
    if k.order() != expected {
        return Err(Error::Internal("stabilizer chain disagrees with the search".into()));
    }
    Ok(k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{cyclotomic, tensor};
    use crate::group::{AbelianGroup, Automorphism};
    use std::sync::Arc;

    fn grp(f: &[i64]) -> Arc<AbelianGroup> {
        Arc::new(AbelianGroup::new(f).unwrap())
    }

    fn factorial(n: u32) -> BigUint {
        (1..=n).fold(BigUint::from(1u32), |a, k| a * BigUint::from(k))
    }

    #[test]
    fn refine_examples() {
        let t = SRing::trivial(grp(&[6]));
        let cfg = ColorConfig::new(&t);
        assert!(cfg.refine(&[0; 6]).iter().all(|&c| c == 0));
        let c = cfg.refine(&individualize(&[0; 6], 0));
        assert_eq!(count_colors(&c), 2);
        let z = SRing::group_ring(grp(&[2, 3]));
        let cz = ColorConfig::new(&z);
        assert_eq!(count_colors(&cz.refine(&individualize(&[0; 6], 0))), 6);
    }

    #[test]
    fn small_orders() {
        let z = SRing::group_ring(grp(&[6]));
        assert_eq!(aut_sring(&z).unwrap().order(), BigUint::from(6u32));
        for n in 2..=7 {
            let t = SRing::trivial(grp(&[n]));
            assert_eq!(aut_sring(&t).unwrap().order(), factorial(n as u32));
        }
        let t = SRing::trivial(grp(&[2, 2]));
        assert_eq!(aut_sring(&t).unwrap().order(), BigUint::from(24u32));
    }

    #[test]
    fn generators_preserve_relations() {
        let g = grp(&[4, 2]);
        let a = cyclotomic(g.clone(), &[Automorphism::power(&g, 3).unwrap()]).unwrap();
        let k = aut_sring(&a).unwrap();
        let cfg = ColorConfig::new(&a);
        for s in k.strong_generators() {
            assert!(cfg.is_automorphism(s.images()));
        }
    }

    #[test]
    fn tensor_law_small() {
        let a1 = SRing::trivial(grp(&[3]));
        let a2 = SRing::validate(grp(&[4]), &[vec![0], vec![2], vec![1, 3]]).unwrap();
        let t = tensor(&a1, &a2);
        let o = aut_sring(&t).unwrap().order();
        assert_eq!(o, aut_sring(&a1).unwrap().order() * aut_sring(&a2).unwrap().order());
    }
}
