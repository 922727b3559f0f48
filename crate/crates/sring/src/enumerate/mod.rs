//! Closure of partitions to S-rings, exhaustive enumeration and catalogs.

mod properties;

pub use properties::{run_properties, run_property_suite, PropertyFailure, PropertyGroup, PropertyReport};

use crate::bitset::ElemSet;
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::group::{gcd, AbelianGroup};
use crate::schurity::{is_cyclotomic, schur_and_normal};
use crate::sring::{canonical_labels, SRing};
use num_bigint::BigUint;
use std::collections::{BTreeSet, HashMap};
use std::sync::Arc;

/// Largest group order accepted by [`enumerate_srings`].
pub const MAX_ENUM_ORDER: usize = 64;

/// Coarsest S-ring partition refining `labels`, canonically labelled.
pub(crate) fn stabilize(g: &AbelianGroup, labels: &[u32]) -> Vec<u32> {
    let n = g.order();
    let mut lab = canonical_labels(labels);
    let mut k = lab.iter().copied().max().map_or(0, |m| m + 1);
    let mut key = Vec::with_capacity(n + 3);
    loop {
        let mut ids: HashMap<Vec<u32>, u32> = HashMap::with_capacity(n);
        let mut next = Vec::with_capacity(n);
        for z in 0..n {
            key.clear();
            key.extend([lab[z], lab[g.neg(z)], (z == 0) as u32]);
            key.extend((0..n).map(|x| lab[x] * k + lab[g.sub(z, x)]));
            key[3..].sort_unstable();
            let fresh = ids.len() as u32;
            next.push(*ids.entry(key.clone()).or_insert(fresh));
        }
        let nk = ids.len() as u32;
        lab = next;
        if nk == k {
            return lab;
        }
        k = nk;
    }
}

/// The coarsest S-ring whose partition refines `partition`.
pub fn sring_closure(g: Arc<AbelianGroup>, partition: &[Vec<usize>]) -> Result<SRing> {
    let n = g.order();
    let mut labels = vec![u32::MAX; n];
    for (i, class) in partition.iter().enumerate() {
        for &x in class {
            if x >= n || labels[x] != u32::MAX {
                return Err(Error::NotPartition);
            }
            labels[x] = i as u32;
        }
    }
    if labels.contains(&u32::MAX) || partition.iter().any(|c| c.is_empty()) {
        return Err(Error::NotPartition);
    }
    let lab = stabilize(&g, &labels);
    Ok(SRing::assemble(g, lab))
}

fn units(exp: u64) -> Vec<u64> {
    (1..=exp.max(1)).filter(|&k| gcd(k, exp) == 1).map(|k| k % exp.max(1)).collect()
}

/// Label of each element: least member of its orbit under the unit powers.
pub fn rational_labels(g: &AbelianGroup) -> Vec<u32> {
    let us = units(g.exponent());
    g.elements().map(|x| us.iter().map(|&k| g.mul(x, k as i64)).min().unwrap_or(x) as u32).collect()
}

fn constant_on(labels: &[u32], part: &ElemSet) -> bool {
    let mut it = part.iter();
    match it.next() {
        Some(first) => it.all(|x| labels[x] == labels[first]),
        None => true,
    }
}

struct Search<'a> {
    g: &'a AbelianGroup,
    rat: Vec<u32>,
    exec: Exec,
}

impl Search<'_> {
    /// All rational S-rings refining `labels` that keep every set in `fixed` a class.
    fn rational(&self, labels: Vec<u32>, fixed: Vec<ElemSet>) -> Vec<Vec<u32>> {
        let n = self.g.order();
        let mut covered = ElemSet::new(n);
        fixed.iter().for_each(|f| covered.union_with(f));
        let Some(m) = (0..n).find(|&x| !covered.contains(x)) else {
            return vec![labels];
        };
        let class: Vec<usize> = (0..n).filter(|&x| labels[x] == labels[m]).collect();
        let mut others: Vec<u32> = class.iter().map(|&x| self.rat[x]).filter(|&r| r != self.rat[m]).collect();
        others.sort_unstable();
        others.dedup();
        let masks: Vec<u64> = (0..1u64 << others.len()).collect();
        self.exec.flat_map(masks, |mask| {
            let chosen: Vec<u32> =
                others.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &r)| r).collect();
            let x = ElemSet::from_elems(
                n,
                class.iter().copied().filter(|&y| self.rat[y] == self.rat[m] || chosen.contains(&self.rat[y])),
            );
            let mut fixed = fixed.clone();
            if x.count() == class.len() {
                fixed.push(x);
                return self.rational(labels.clone(), fixed);
            }
            let fresh = n as u32;
            let split: Vec<u32> = (0..n).map(|y| if x.contains(y) { fresh } else { labels[y] }).collect();
            let next = stabilize(self.g, &split);
            fixed.push(x);
            if fixed.iter().all(|f| constant_on(&next, f)) {
                self.rational(next, fixed)
            } else {
                Vec::new()
            }
        })
    }

    /// Every S-ring whose rational closure is `r`.
    fn splits(&self, r: &[u32]) -> Vec<Vec<u32>> {
        let mut classes: Vec<Vec<usize>> = Vec::new();
        for (x, &c) in r.iter().enumerate() {
            let c = c as usize;
            if c == classes.len() {
                classes.push(Vec::new());
            }
            classes[c].push(x);
        }
        let families: Vec<Vec<Vec<ElemSet>>> = classes.iter().map(|c| self.families(c)).collect();
        self.split_dfs(&families, 0, r.to_vec(), Vec::new())
    }

    fn split_dfs(
        &self,
        families: &[Vec<Vec<ElemSet>>],
        i: usize,
        labels: Vec<u32>,
        decided: Vec<ElemSet>,
    ) -> Vec<Vec<u32>> {
        let Some(options) = families.get(i) else {
            return vec![labels];
        };
        let n = self.g.order();
        let mut out = Vec::new();
        for family in options {
            if !family.iter().all(|p| constant_on(&labels, p)) {
                continue;
            }
            let mut decided = decided.clone();
            decided.extend(family.iter().cloned());
            if family.len() == 1 {
                out.extend(self.split_dfs(families, i + 1, labels.clone(), decided));
                continue;
            }
            let mut split = labels.clone();
            for (j, p) in family.iter().enumerate() {
                p.iter().for_each(|x| split[x] = (n + j) as u32);
            }
            let next = stabilize(self.g, &split);
            if decided.iter().all(|d| constant_on(&next, d)) {
                out.extend(self.split_dfs(families, i + 1, next, decided));
            }
        }
        out
    }

    /// Partitions of a rational-closed class into one orbit of sets under the unit powers.
    fn families(&self, class: &[usize]) -> Vec<Vec<ElemSet>> {
        let g = self.g;
        let n = g.order();
        let exp = g.exponent();
        let us = units(exp);
        let m = class[0];
        let mut reps: Vec<usize> = class.iter().copied().filter(|&x| self.rat[x] as usize == x).collect();
        reps.retain(|&x| self.rat[x] != self.rat[m]);
        let mut out: BTreeSet<Vec<ElemSet>> = BTreeSet::new();
        for v in unit_subgroups(&us, exp) {
            let stab_ok = class.iter().all(|&x| {
                let o = g.element_order(x);
                us.iter().filter(|&&k| k % o == 1 % o).all(|k| v.contains(k))
            });
            if !stab_ok {
                continue;
            }
            let orbit = |x: usize| -> ElemSet { ElemSet::from_elems(n, v.iter().map(|&k| g.mul(x, k as i64))) };
            let orbit_sets: Vec<Vec<ElemSet>> = reps
                .iter()
                .map(|&r| {
                    let mut seen: Vec<ElemSet> = Vec::new();
                    for &k in &us {
                        let o = orbit(g.mul(r, k as i64));
                        if !seen.contains(&o) {
                            seen.push(o);
                        }
                    }
                    seen
                })
                .collect();
            let base = orbit(m);
            let mut choice = vec![0usize; reps.len()];
            loop {
                let mut x = base.clone();
                for (i, &c) in choice.iter().enumerate() {
                    x.union_with(&orbit_sets[i][c]);
                }
                let mut family: Vec<ElemSet> = Vec::new();
                for &k in &us {
                    let img = ElemSet::from_elems(n, x.iter().map(|y| g.mul(y, k as i64)));
                    if !family.contains(&img) {
                        family.push(img);
                    }
                }
                let total: usize = family.iter().map(|f| f.count()).sum();
                if total == class.len() {
                    family.sort();
                    out.insert(family);
                }
                let Some(i) = (0..choice.len()).find(|&i| choice[i] + 1 < orbit_sets[i].len()) else {
                    break;
                };
                choice[i] += 1;
                choice[..i].iter_mut().for_each(|c| *c = 0);
            }
        }
        out.into_iter().collect()
    }
}

/// Subgroups of the unit group modulo `exp`, each as a sorted list.
fn unit_subgroups(us: &[u64], exp: u64) -> Vec<Vec<u64>> {
    let close = |gens: &BTreeSet<u64>| -> BTreeSet<u64> {
        let mut s: BTreeSet<u64> = BTreeSet::from([1 % exp.max(1)]);
        loop {
            let prods: Vec<u64> = s.iter().flat_map(|&a| gens.iter().map(move |&b| a * b % exp.max(1))).collect();
            let before = s.len();
            s.extend(prods);
            if s.len() == before {
                return s;
            }
        }
    };
    let mut all: BTreeSet<BTreeSet<u64>> = BTreeSet::from([close(&BTreeSet::new())]);
    let mut frontier: Vec<BTreeSet<u64>> = all.iter().cloned().collect();
    while let Some(s) = frontier.pop() {
        for &u in us {
            if !s.contains(&u) {
                let mut gens = s.clone();
                gens.insert(u);
                let t = close(&gens);
                if all.insert(t.clone()) {
                    frontier.push(t);
                }
            }
        }
    }
    all.into_iter().map(|s| s.into_iter().collect()).collect()
}

/// All S-rings over `g`, sorted by rank and then class lists.
pub fn enumerate_partitions(g: &Arc<AbelianGroup>, exec: Exec) -> Result<Vec<SRing>> {
    if g.order() > MAX_ENUM_ORDER {
        return Err(Error::OrderTooLarge { order: g.order() as u128, bound: MAX_ENUM_ORDER });
    }
    let search = Search { g, rat: rational_labels(g), exec };
    let n = g.order();
    let start: Vec<u32> = (0..n).map(|x| (x != 0) as u32).collect();
    let rational = search.rational(stabilize(g, &start), vec![ElemSet::from_elems(n, [0])]);
    let labels = exec.flat_map(rational, |r| search.splits(&r));
    let mut rings: Vec<SRing> = labels.into_iter().map(|l| SRing::assemble(g.clone(), l)).collect();
    sort_rings(&mut rings);
    Ok(rings)
}

pub(crate) fn sort_rings(rings: &mut [SRing]) {
    rings.sort_by_cached_key(|a| (a.rank(), a.class_lists()));
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CatalogEntry {
    pub sring: SRing,
    pub schurian: bool,
    pub cyclotomic: bool,
    pub normal: bool,
    pub aut_order: BigUint,
    pub primitive: bool,
}

impl CatalogEntry {
    pub fn new(sring: SRing) -> Result<Self> {
        let (report, normal) = schur_and_normal(&sring)?;
        let cyclotomic = is_cyclotomic(&sring)?.0;
        Ok(CatalogEntry {
            primitive: sring.is_primitive(),
            schurian: report.schurian,
            aut_order: report.aut_order,
            cyclotomic,
            normal,
            sring,
        })
    }

    pub fn rank(&self) -> usize {
        self.sring.rank()
    }
}

#[derive(Clone, Debug)]
pub struct Catalog {
    pub group: Arc<AbelianGroup>,
    pub entries: Vec<CatalogEntry>,
}

impl Catalog {
    pub fn from_srings(group: Arc<AbelianGroup>, mut rings: Vec<SRing>, exec: Exec) -> Result<Self> {
        sort_rings(&mut rings);
        let entries = exec.map(rings, CatalogEntry::new).into_iter().collect::<Result<Vec<_>>>()?;
        Ok(Catalog { group, entries })
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn srings(&self) -> impl Iterator<Item = &SRing> {
        self.entries.iter().map(|e| &e.sring)
    }

    /// Position of the entry with the same partition as `a`.
    pub fn position(&self, a: &SRing) -> Option<usize> {
        self.entries.iter().position(|e| e.sring.labels() == a.labels())
    }

    /// For each entry, whether it is the least member of its orbit under `Aut(G)`.
    pub fn orbit_representatives(&self) -> Result<Vec<bool>> {
        let auts = self.group.automorphisms()?;
        Ok(self
            .entries
            .iter()
            .map(|e| {
                let own = e.sring.labels();
                auts.iter().all(|s| {
                    let img: Vec<u32> = (0..self.group.order()).map(|x| own[s.apply(x)]).collect();
                    canonical_labels(&img).as_slice() >= own
                })
            })
            .collect())
    }
}

/// All S-rings over `g` with their flags.
pub fn enumerate_srings(g: &Arc<AbelianGroup>) -> Result<Catalog> {
    enumerate_with(g, Exec::default())
}

pub fn enumerate_with(g: &Arc<AbelianGroup>, exec: Exec) -> Result<Catalog> {
    let rings = enumerate_partitions(g, exec)?;
    Catalog::from_srings(g.clone(), rings, exec)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grp(f: &[i64]) -> Arc<AbelianGroup> {
        Arc::new(AbelianGroup::new(f).unwrap())
    }

    #[test]
    fn closure_examples() {
        let g = grp(&[4]);
        let t = sring_closure(g.clone(), &[vec![0], vec![1, 2, 3]]).unwrap();
        assert_eq!(t.rank(), 2);
        let z = sring_closure(g.clone(), &[vec![0], vec![1, 2], vec![3]]).unwrap();
        assert_eq!(z.rank(), 4);
        let w = sring_closure(g.clone(), &[vec![0, 2], vec![1, 3]]).unwrap();
        assert_eq!(w.class_lists(), vec![vec![0], vec![1, 3], vec![2]]);
        assert!(matches!(sring_closure(g, &[vec![0, 1], vec![1, 2, 3]]), Err(Error::NotPartition)));
    }

    #[test]
    fn small_counts() {
        for (f, count) in [(&[4][..], 3), (&[2, 2], 5), (&[5], 3), (&[7], 4), (&[1], 1), (&[2], 1)] {
            let rings = enumerate_partitions(&grp(f), Exec::Sequential).unwrap();
            assert_eq!(rings.len(), count, "{f:?}");
        }
    }

    #[test]
    fn unit_subgroup_counts() {
        let us = units(8);
        assert_eq!(unit_subgroups(&us, 8).len(), 5);
        assert_eq!(unit_subgroups(&units(7), 7).len(), 4);
    }
}
