use super::{prime_factors, AbelianGroup};
use crate::bitset::ElemSet;
use crate::error::{Error, Result};
use std::collections::HashSet;

const CANDIDATE_LIMIT: u128 = 1 << 20;

/// A group automorphism, stored as the images of the canonical generators
/// together with the induced permutation of element indices.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Automorphism {
    images: Vec<usize>,
    perm: Vec<u32>,
}

impl Automorphism {
    pub fn identity(g: &AbelianGroup) -> Self {
        Automorphism { images: g.generators(), perm: (0..g.order() as u32).collect() }
    }

    /// The endomorphism sending the `i`-th canonical generator to `images[i]`,
    /// rejected unless it is bijective.
    pub fn from_images(g: &AbelianGroup, images: &[usize]) -> Result<Self> {
        if images.len() != g.rank() || images.iter().any(|&y| y >= g.order()) {
            return Err(Error::MismatchedGroups);
        }
        for (i, &y) in images.iter().enumerate() {
            if !(g.factors()[i] as u64).is_multiple_of(g.element_order(y)) {
                return Err(Error::NotAnAutomorphism);
            }
        }
        let perm = induced_map(g, images);
        let mut seen = ElemSet::new(g.order());
        if !perm.iter().all(|&y| seen.insert(y as usize)) {
            return Err(Error::NotAnAutomorphism);
        }
        Ok(Automorphism { images: images.to_vec(), perm })
    }

    /// Multiplication by `m`, an automorphism when `m` is coprime to the exponent.
    pub fn power(g: &AbelianGroup, m: i64) -> Result<Self> {
        let images: Vec<usize> = g.generators().iter().map(|&x| g.mul(x, m)).collect();
        Self::from_images(g, &images)
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn perm(&self) -> &[u32] {
        &self.perm
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.perm[x] as usize
    }

    /// `self` followed by `other`.
    pub fn then(&self, other: &Automorphism) -> Automorphism {
        let images = self.images.iter().map(|&y| other.apply(y)).collect();
        let perm = self.perm.iter().map(|&y| other.perm[y as usize]).collect();
        Automorphism { images, perm }
    }

    pub fn inverse(&self, g: &AbelianGroup) -> Automorphism {
        let mut perm = vec![0u32; self.perm.len()];
        for (x, &y) in self.perm.iter().enumerate() {
            perm[y as usize] = x as u32;
        }
        let images = g.generators().iter().map(|&x| perm[x] as usize).collect();
        Automorphism { images, perm }
    }

    pub fn is_identity(&self) -> bool {
        self.perm.iter().enumerate().all(|(x, &y)| x == y as usize)
    }

    /// Order of the automorphism as a group element.
    pub fn order(&self) -> usize {
        let n = self.perm.len();
        let mut seen = vec![false; n];
        let mut ord = 1u64;
        for s in 0..n {
            if seen[s] {
                continue;
            }
            let mut len = 0;
            let mut x = s;
            while !seen[x] {
                seen[x] = true;
                x = self.perm[x] as usize;
                len += 1;
            }
            ord = super::lcm(ord, len);
        }
        ord as usize
    }
}

fn induced_map(g: &AbelianGroup, images: &[usize]) -> Vec<u32> {
    let mut perm = vec![0u32; g.order()];
    for x in 1..g.order() {
        // Peel the last nonzero coordinate: x = x' + e_i.
        let i = (0..g.rank()).rev().find(|&i| g.coord(x, i) != 0).unwrap();
        let prev = x - g.generator(i);
        perm[x] = g.add(perm[prev] as usize, images[i]) as u32;
    }
    perm
}

/// Closes a set of automorphisms under composition; fails past `bound` elements.
pub fn close_automorphisms(g: &AbelianGroup, gens: &[Automorphism], bound: usize) -> Result<Vec<Automorphism>> {
    let id = Automorphism::identity(g);
    let mut seen: HashSet<Vec<u32>> = HashSet::new();
    seen.insert(id.perm.clone());
    let mut out = vec![id];
    let mut i = 0;
    while i < out.len() {
        for s in gens {
            let t = out[i].then(s);
            if seen.insert(t.perm.clone()) {
                if out.len() >= bound {
                    return Err(Error::NotASubgroup);
                }
                out.push(t);
            }
        }
        i += 1;
    }
    out.sort_by(|a, b| a.perm.cmp(&b.perm));
    Ok(out)
}

/// Automorphisms of the Sylow `p`-component, each as a list of `(x, image)` pairs.
fn sylow_automorphisms(g: &AbelianGroup, p: u64) -> Result<Vec<Vec<(usize, usize)>>> {
    let mut basis = Vec::new();
    let mut orders = Vec::new();
    for (i, &n) in g.factors().iter().enumerate() {
        let n = n as u64;
        let mut pk = 1;
        while n.is_multiple_of(pk * p) {
            pk *= p;
        }
        if pk > 1 {
            basis.push(g.mul(g.generator(i), (n / pk) as i64));
            orders.push(pk);
        }
    }
    let elements: Vec<usize> = g
        .elements()
        .filter(|&x| {
            let mut o = g.element_order(x);
            while o.is_multiple_of(p) {
                o /= p;
            }
            o == 1
        })
        .collect();
    let candidates: Vec<Vec<usize>> =
        orders.iter().map(|&pk| elements.iter().copied().filter(|&y| pk % g.element_order(y) == 0).collect()).collect();
    let total: u128 = candidates.iter().map(|c| c.len() as u128).product();
    if total > CANDIDATE_LIMIT {
        return Err(Error::AutGroupTooLarge(total));
    }
    let mut maps = Vec::new();
    let mut choice = vec![0usize; basis.len()];
    let size = elements.len();
    'outer: loop {
        let images: Vec<usize> = choice.iter().zip(&candidates).map(|(&c, cand)| cand[c]).collect();
        if let Some(map) = component_map(g, &basis, &orders, &images, size) {
            maps.push(map);
        }
        for k in (0..choice.len()).rev() {
            choice[k] += 1;
            if choice[k] < candidates[k].len() {
                continue 'outer;
            }
            choice[k] = 0;
        }
        break;
    }
    Ok(maps)
}

/// The map on the component induced by `basis[j] -> images[j]`, if bijective.
fn component_map(
    g: &AbelianGroup,
    basis: &[usize],
    orders: &[u64],
    images: &[usize],
    size: usize,
) -> Option<Vec<(usize, usize)>> {
    let mut map = Vec::with_capacity(size);
    let mut seen = ElemSet::new(g.order());
    let mut coef = vec![0u64; basis.len()];
    let (mut x, mut y) = (0usize, 0usize);
    loop {
        if !seen.insert(y) {
            return None;
        }
        map.push((x, y));
        let mut k = basis.len();
        loop {
            if k == 0 {
                return Some(map);
            }
            k -= 1;
            coef[k] += 1;
            x = g.add(x, basis[k]);
            y = g.add(y, images[k]);
            if coef[k] < orders[k] {
                break;
            }
            coef[k] = 0;
        }
    }
}

/// All automorphisms of `g`, in a deterministic order.
pub fn aut_group(g: &AbelianGroup) -> Result<Vec<Automorphism>> {
    let exp = g.exponent();
    let mut parts = Vec::new();
    for (p, _) in prime_factors(g.order() as u64) {
        let mut pk = 1;
        while exp.is_multiple_of(pk * p) {
            pk *= p;
        }
        // Multiplier projecting onto the p-component: 1 mod pk, 0 mod exp/pk.
        let rest = exp / pk;
        let m = (0..exp).map(|t| t * rest).find(|&v| v % pk == 1 % pk).unwrap();
        let sy = sylow_automorphisms(g, p)?;
        let tables: Vec<Vec<u32>> = sy
            .iter()
            .map(|map| {
                let mut t = vec![0u32; g.order()];
                for &(x, y) in map {
                    t[x] = y as u32;
                }
                t
            })
            .collect();
        parts.push((m as i64, tables));
    }
    let mut out = vec![Automorphism::identity(g)];
    for (m, tables) in &parts {
        let mut next = Vec::with_capacity(out.len() * tables.len());
        for a in &out {
            for t in tables {
                let perm: Vec<u32> = (0..g.order())
                    .map(|x| {
                        let xp = g.mul(x, *m);
                        let rest = g.sub(x, xp);
                        g.add(a.perm[rest] as usize, t[xp] as usize) as u32
                    })
                    .collect();
                let images = g.generators().iter().map(|&x| perm[x] as usize).collect();
                next.push(Automorphism { images, perm });
            }
        }
        out = next;
    }
    if g.order() == 1 {
        return Ok(out);
    }
    out.sort_by(|a, b| a.images.cmp(&b.images));
    Ok(out)
}
