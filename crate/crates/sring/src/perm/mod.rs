//! Permutation groups on the element set: Schreier–Sims, orbits, orbitals,
//! stabilizers, normality and 2-equivalence.

use crate::error::{Error, Result};
use crate::group::AbelianGroup;
use crate::sring::SRing;
use num_bigint::BigUint;
use serde::{Deserialize, Serialize};
use std::sync::Arc;

pub const MAX_DEGREE: usize = 256;

/// A permutation of `0..n`; `images[x]` is the image of `x`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Permutation(Vec<u32>);

impl Permutation {
    pub fn new(images: Vec<u32>) -> Result<Self> {
        let mut seen = vec![false; images.len()];
        for &y in &images {
            let y = y as usize;
            if y >= seen.len() || std::mem::replace(&mut seen[y], true) {
                return Err(Error::NotBijective);
            }
        }
        Ok(Permutation(images))
    }

    pub fn identity(n: usize) -> Self {
        Permutation((0..n as u32).collect())
    }

    /// Right translation `x -> x + t`.
    pub fn translation(g: &AbelianGroup, t: usize) -> Self {
        Permutation(g.elements().map(|x| g.add(x, t) as u32).collect())
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn images(&self) -> &[u32] {
        &self.0
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.0[x] as usize
    }

    /// `self` followed by `other`.
    pub fn then(&self, other: &Permutation) -> Permutation {
        Permutation(self.0.iter().map(|&y| other.0[y as usize]).collect())
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0u32; self.0.len()];
        for (x, &y) in self.0.iter().enumerate() {
            inv[y as usize] = x as u32;
        }
        Permutation(inv)
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(x, &y)| x == y as usize)
    }

    pub fn first_moved(&self) -> Option<usize> {
        self.0.iter().enumerate().find(|&(x, &y)| x != y as usize).map(|(x, _)| x)
    }
}

/// One level of a stabilizer chain.
#[derive(Clone, Debug)]
struct Level {
    point: usize,
    gens: Vec<Permutation>,
    orbit: Vec<usize>,
    /// `transversal[beta]` maps `point` to `beta`.
    transversal: Vec<Option<Permutation>>,
}

impl Level {
    fn new(n: usize, point: usize, gens: Vec<Permutation>) -> Level {
        let mut l = Level { point, gens, orbit: Vec::new(), transversal: Vec::new() };
        l.rebuild(n);
        l
    }

    fn rebuild(&mut self, n: usize) {
        self.transversal = vec![None; n];
        self.transversal[self.point] = Some(Permutation::identity(n));
        self.orbit = vec![self.point];
        let mut i = 0;
        while i < self.orbit.len() {
            let beta = self.orbit[i];
            for s in &self.gens {
                let gamma = s.apply(beta);
                if self.transversal[gamma].is_none() {
                    let u = self.transversal[beta].as_ref().unwrap().then(s);
                    self.transversal[gamma] = Some(u);
                    self.orbit.push(gamma);
                }
            }
            i += 1;
        }
    }
}

/// A permutation group with a base and strong generating set.
#[derive(Clone, Debug)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Permutation>,
    levels: Vec<Level>,
}

impl PermGroup {
    /// Deterministic Schreier–Sims with the base starting at point 0.
    pub fn bsgs(degree: usize, generators: &[Permutation]) -> Result<PermGroup> {
        Self::bsgs_with_base(degree, generators, &[0])
    }

    pub fn bsgs_with_base(degree: usize, generators: &[Permutation], prefix: &[usize]) -> Result<PermGroup> {
        if degree > MAX_DEGREE {
            return Err(Error::DegreeTooLarge(degree));
        }
        for s in generators {
            if s.degree() != degree {
                return Err(Error::NotBijective);
            }
            Permutation::new(s.0.clone())?;
        }
        let gens: Vec<Permutation> = generators.iter().filter(|s| !s.is_identity()).cloned().collect();
        let mut base: Vec<usize> = prefix.to_vec();
        if base.is_empty() {
            base.push(0);
        }
        for s in &gens {
            if base.iter().all(|&b| s.apply(b) == b) {
                base.push(s.first_moved().unwrap());
            }
        }
        let mut levels: Vec<Level> = Vec::new();
        for (i, &b) in base.iter().enumerate() {
            let lg = gens.iter().filter(|s| base[..i].iter().all(|&p| s.apply(p) == p)).cloned().collect();
            levels.push(Level::new(degree, b, lg));
        }
        let mut grp = PermGroup { degree, generators: generators.to_vec(), levels };
        grp.schreier_sims();
        Ok(grp)
    }

    fn schreier_sims(&mut self) {
        let n = self.degree;
        let mut i = self.levels.len();
        'outer: while i > 0 {
            let lvl = i - 1;
            let orbit = self.levels[lvl].orbit.clone();
            let gens = self.levels[lvl].gens.clone();
            for &beta in &orbit {
                for s in &gens {
                    let ub = self.levels[lvl].transversal[beta].as_ref().unwrap();
                    let gamma = s.apply(beta);
                    let ug = self.levels[lvl].transversal[gamma].as_ref().unwrap();
                    let h = ub.then(s).then(&ug.inverse());
                    if h.is_identity() {
                        continue;
                    }
                    let (res, j) = self.sift_from(&h, lvl + 1);
                    if j < self.levels.len() || !res.is_identity() {
                        if j == self.levels.len() {
                            let p = res.first_moved().unwrap();
                            self.levels.push(Level::new(n, p, Vec::new()));
                        }
                        for l in lvl + 1..=j {
                            self.levels[l].gens.push(res.clone());
                            self.levels[l].rebuild(n);
                        }
                        i = j + 1;
                        continue 'outer;
                    }
                }
            }
            i -= 1;
        }
    }

    /// Sifts `h` through the chain from level `start`; returns the residue and
    /// the level where it dropped out (the chain length if it went through).
    fn sift_from(&self, h: &Permutation, start: usize) -> (Permutation, usize) {
        let mut h = h.clone();
        for (l, level) in self.levels.iter().enumerate().skip(start) {
            let beta = h.apply(level.point);
            match &level.transversal[beta] {
                None => return (h, l),
                Some(u) => h = h.then(&u.inverse()),
            }
        }
        (h, self.levels.len())
    }

    /// Builds the chain from a base and a strong generating set known to be correct.
    pub fn from_base_and_strong_gens(degree: usize, base: &[usize], strong: &[Permutation]) -> PermGroup {
        let levels = base
            .iter()
            .enumerate()
            .map(|(i, &b)| {
                let lg = strong.iter().filter(|s| base[..i].iter().all(|&p| s.apply(p) == p)).cloned().collect();
                Level::new(degree, b, lg)
            })
            .collect();
        PermGroup { degree, generators: strong.to_vec(), levels }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn base(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.point).collect()
    }

    pub fn strong_generators(&self) -> Vec<Permutation> {
        let mut out: Vec<Permutation> = Vec::new();
        for l in &self.levels {
            for s in &l.gens {
                if !out.contains(s) {
                    out.push(s.clone());
                }
            }
        }
        out
    }

    pub fn orbit_lengths(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.orbit.len()).collect()
    }

    pub fn order(&self) -> BigUint {
        self.levels.iter().fold(BigUint::from(1u32), |acc, l| acc * BigUint::from(l.orbit.len()))
    }

    pub fn contains(&self, p: &Permutation) -> bool {
        if p.degree() != self.degree {
            return false;
        }
        let (res, j) = self.sift_from(p, 0);
        j == self.levels.len() && res.is_identity()
    }

    /// Orbit partition as labels: each point maps to the least point of its orbit.
    pub fn orbits(&self) -> Vec<u32> {
        orbit_labels(self.degree, &self.generators)
    }

    /// Orbits on ordered pairs, labelled by the least pair index `x * n + y`.
    pub fn orbitals(&self) -> Vec<u32> {
        let n = self.degree;
        let mut label = vec![u32::MAX; n * n];
        for s in 0..n * n {
            if label[s] != u32::MAX {
                continue;
            }
            label[s] = s as u32;
            let mut stack = vec![s];
            while let Some(p) = stack.pop() {
                let (x, y) = (p / n, p % n);
                for g in &self.generators {
                    let q = g.apply(x) * n + g.apply(y);
                    if label[q] == u32::MAX {
                        label[q] = s as u32;
                        stack.push(q);
                    }
                }
            }
        }
        label
    }

    /// The stabilizer of `alpha`, via a chain whose base starts at `alpha`.
    pub fn point_stabilizer(&self, alpha: usize) -> PermGroup {
        let chain = if self.levels.first().map(|l| l.point) == Some(alpha) {
            self.clone()
        } else {
            Self::bsgs_with_base(self.degree, &self.strong_generators(), &[alpha]).expect("valid generators")
        };
        let levels: Vec<Level> = chain.levels[1..].to_vec();
        let generators = levels.first().map(|l| l.gens.clone()).unwrap_or_default();
        PermGroup { degree: self.degree, generators, levels }
    }

    /// Whether `n` is a normal subgroup of `self`.
    pub fn has_normal_subgroup(&self, n: &PermGroup) -> Result<bool> {
        if !n.generators.iter().all(|s| self.contains(s)) {
            return Err(Error::NotSubgroup);
        }
        for k in &self.generators {
            let ki = k.inverse();
            for s in &n.generators {
                if !n.contains(&ki.then(s).then(k)) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

/// Whether `n` is normal in `k`.
pub fn is_normal(n: &PermGroup, k: &PermGroup) -> Result<bool> {
    k.has_normal_subgroup(n)
}

/// Equality of orbital partitions.
pub fn two_equivalent(k1: &PermGroup, k2: &PermGroup) -> bool {
    k1.degree == k2.degree && k1.orbitals() == k2.orbitals()
}

fn orbit_labels(n: usize, gens: &[Permutation]) -> Vec<u32> {
    let mut label = vec![u32::MAX; n];
    for s in 0..n {
        if label[s] != u32::MAX {
            continue;
        }
        label[s] = s as u32;
        let mut stack = vec![s];
        while let Some(x) = stack.pop() {
            for g in gens {
                let y = g.apply(x);
                if label[y] == u32::MAX {
                    label[y] = s as u32;
                    stack.push(y);
                }
            }
        }
    }
    label
}

/// The right regular representation `G_r`.
pub fn regular(g: &AbelianGroup) -> Result<PermGroup> {
    let gens: Vec<Permutation> = g.generators().iter().map(|&t| Permutation::translation(g, t)).collect();
    PermGroup::bsgs(g.order(), &gens)
}

/// `V(K, G)`: the S-ring of orbits of the stabilizer of `e` in `K`.
pub fn transitivity_module(k: &PermGroup, g: Arc<AbelianGroup>) -> Result<SRing> {
    if k.degree != g.order() {
        return Err(Error::MismatchedGroups);
    }
    if !g.elements().all(|t| k.contains(&Permutation::translation(&g, t))) {
        return Err(Error::DoesNotContainRegular);
    }
    let ke = k.point_stabilizer(0);
    SRing::validate_labels(g, &ke.orbits()).map_err(|e| Error::Internal(format!("transitivity module: {e}")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::aut_group;

    fn sym(n: usize) -> Vec<Permutation> {
        let mut cyc: Vec<u32> = (1..n as u32).collect();
        cyc.push(0);
        let mut tr: Vec<u32> = (0..n as u32).collect();
        tr.swap(0, 1);
        vec![Permutation::new(cyc).unwrap(), Permutation::new(tr).unwrap()]
    }

    fn alt5() -> Vec<Permutation> {
        vec![Permutation::new(vec![1, 2, 0, 3, 4]).unwrap(), Permutation::new(vec![1, 2, 3, 4, 0]).unwrap()]
    }

    fn holomorph(g: &AbelianGroup) -> PermGroup {
        let mut gens: Vec<Permutation> = g.generators().iter().map(|&t| Permutation::translation(g, t)).collect();
        for a in aut_group(g).unwrap() {
            gens.push(Permutation::new(a.perm().to_vec()).unwrap());
        }
        PermGroup::bsgs(g.order(), &gens).unwrap()
    }

    fn grp(f: &[i64]) -> Arc<AbelianGroup> {
        Arc::new(AbelianGroup::new(f).unwrap())
    }

    #[test]
    fn bsgs_orders() {
        assert_eq!(PermGroup::bsgs(4, &sym(4)).unwrap().order(), BigUint::from(24u32));
        assert_eq!(PermGroup::bsgs(7, &sym(7)).unwrap().order(), BigUint::from(5040u32));
        assert_eq!(regular(&grp(&[8, 2, 3])).unwrap().order(), BigUint::from(48u32));
        assert_eq!(holomorph(&grp(&[5])).order(), BigUint::from(20u32));
        assert_eq!(PermGroup::bsgs(5, &alt5()).unwrap().order(), BigUint::from(60u32));
        assert!(PermGroup::bsgs(3, &[Permutation(vec![0, 0, 1])]).is_err());
    }

    #[test]
    fn membership() {
        let a5 = PermGroup::bsgs(5, &alt5()).unwrap();
        assert!(a5.contains(&Permutation::new(vec![1, 0, 3, 2, 4]).unwrap()));
        assert!(!a5.contains(&Permutation::new(vec![1, 0, 2, 3, 4]).unwrap()));
    }

    #[test]
    fn orbits_and_orbitals() {
        let g = grp(&[5]);
        let gr = regular(&g).unwrap();
        assert!(gr.orbits().iter().all(|&l| l == 0));
        let h = holomorph(&g);
        assert_eq!(h.point_stabilizer(0).orbits(), vec![0, 1, 1, 1, 1]);
        let s = PermGroup::bsgs(5, &sym(5)).unwrap();
        let mut classes = s.orbitals();
        classes.sort();
        classes.dedup();
        assert_eq!(classes.len(), 2);
    }

    #[test]
    fn stabilizers_and_normality() {
        let g = grp(&[2, 3]);
        let gr = regular(&g).unwrap();
        assert_eq!(gr.point_stabilizer(0).order(), BigUint::from(1u32));
        let h = holomorph(&g);
        assert!(is_normal(&gr, &h).unwrap());
        let s4 = PermGroup::bsgs(4, &sym(4)).unwrap();
        let c4 = regular(&grp(&[4])).unwrap();
        assert!(!is_normal(&c4, &s4).unwrap());
        let e4 = regular(&grp(&[2, 2])).unwrap();
        assert!(is_normal(&e4, &s4).unwrap());
        for alpha in 0..4 {
            let st = s4.point_stabilizer(alpha);
            assert_eq!(st.order() * BigUint::from(4u32), s4.order());
        }
        let a5 = PermGroup::bsgs(5, &alt5()).unwrap();
        assert!(is_normal(&s4, &a5).is_err());
    }

    #[test]
    fn two_equivalence() {
        let s5 = PermGroup::bsgs(5, &sym(5)).unwrap();
        let a5 = PermGroup::bsgs(5, &alt5()).unwrap();
        assert!(two_equivalent(&s5, &a5));
        assert!(two_equivalent(&a5, &a5));
        let c5 = regular(&grp(&[5])).unwrap();
        assert!(!two_equivalent(&c5, &a5));
    }

    #[test]
    fn transitivity_modules() {
        let g = grp(&[6]);
        let gr = regular(&g).unwrap();
        assert_eq!(transitivity_module(&gr, g.clone()).unwrap(), SRing::group_ring(g.clone()));
        let c5 = grp(&[5]);
        assert_eq!(transitivity_module(&holomorph(&c5), c5.clone()).unwrap(), SRing::trivial(c5.clone()));
        let e4 = grp(&[2, 2]);
        assert_eq!(transitivity_module(&holomorph(&e4), e4.clone()).unwrap(), SRing::trivial(e4.clone()));
        let a5 = PermGroup::bsgs(5, &alt5()).unwrap();
        let sub = PermGroup::bsgs(5, &alt5()[..1]).unwrap();
        assert!(matches!(transitivity_module(&sub, c5.clone()), Err(Error::DoesNotContainRegular)));
        assert!(transitivity_module(&a5, c5).is_ok());
    }
}
