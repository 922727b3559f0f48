//! The S-ring data model.

mod ops;

pub use ops::{is_a_set, slice_orbit_check};

use crate::bitset::ElemSet;
use crate::error::{Error, Result};
use crate::group::{generated_subgroup, AbelianGroup, Subgroup};
use std::fmt;
use std::sync::{Arc, OnceLock};

/// One basic set with its cached radical and span.
#[derive(Clone, Debug)]
pub struct BasicSet {
    members: ElemSet,
    elems: Vec<usize>,
    id: usize,
    inverse: usize,
    radical: Subgroup,
    span: Subgroup,
}

impl BasicSet {
    pub fn members(&self) -> &ElemSet {
        &self.members
    }

    /// Members in increasing index order.
    pub fn elems(&self) -> &[usize] {
        &self.elems
    }

    pub fn id(&self) -> usize {
        self.id
    }

    pub fn inverse_class(&self) -> usize {
        self.inverse
    }

    pub fn radical(&self) -> &Subgroup {
        &self.radical
    }

    pub fn span(&self) -> &Subgroup {
        &self.span
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn min(&self) -> usize {
        self.elems[0]
    }
}

/// A validated S-ring: a partition of the group whose class sums span a
/// subring of the group ring.
pub struct SRing {
    group: Arc<AbelianGroup>,
    classes: Vec<BasicSet>,
    class_of: Vec<u32>,
    products: Vec<OnceLock<Vec<(u32, u32)>>>,
}

impl Clone for SRing {
    fn clone(&self) -> Self {
        SRing::assemble(self.group.clone(), self.class_of.clone())
    }
}

impl PartialEq for SRing {
    fn eq(&self, other: &Self) -> bool {
        *self.group == *other.group && self.class_of == other.class_of
    }
}

impl Eq for SRing {}

impl fmt::Debug for SRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SRing").field("group", &self.group.literal()).field("classes", &self.class_lists()).finish()
    }
}

/// Relabels a partition so that class ids follow the minimal member index.
pub(crate) fn canonical_labels(labels: &[u32]) -> Vec<u32> {
    let mut map = std::collections::HashMap::new();
    labels
        .iter()
        .map(|&l| {
            let next = map.len() as u32;
            *map.entry(l).or_insert(next)
        })
        .collect()
}

/// First witness of a failing product condition, as `(x, y, g, h)`.
pub(crate) fn product_violation(
    g: &AbelianGroup,
    classes: &[Vec<usize>],
    class_of: &[u32],
) -> Option<(usize, usize, usize, usize)> {
    let n = g.order();
    let mut cnt = vec![0u32; n];
    let reps: Vec<usize> = classes.iter().map(|c| c[0]).collect();
    for (xi, x) in classes.iter().enumerate() {
        for (yi, y) in classes.iter().enumerate().skip(xi) {
            cnt.iter_mut().for_each(|c| *c = 0);
            for &a in x {
                for &b in y {
                    cnt[g.add(a, b)] += 1;
                }
            }
            for h in 0..n {
                let r = reps[class_of[h] as usize];
                if cnt[h] != cnt[r] {
                    return Some((xi, yi, r, h));
                }
            }
        }
    }
    None
}

/// The radical `{t : X + t = X}`.
pub fn set_radical(g: &AbelianGroup, members: &ElemSet) -> Subgroup {
    let elems: Vec<usize> = members.iter().collect();
    let x0 = elems[0];
    let rad = elems.iter().map(|&x| g.sub(x, x0)).filter(|&t| elems.iter().all(|&x| members.contains(g.add(x, t))));
    generated_subgroup(g, rad)
}

impl SRing {
    /// Builds the S-ring for a canonical labeling that is known to be valid.
    pub(crate) fn assemble(group: Arc<AbelianGroup>, class_of: Vec<u32>) -> SRing {
        let rank = class_of.iter().map(|&c| c as usize + 1).max().unwrap_or(0);
        let n = group.order();
        let mut elems = vec![Vec::new(); rank];
        for (x, &c) in class_of.iter().enumerate() {
            elems[c as usize].push(x);
        }
        let classes = elems
            .into_iter()
            .enumerate()
            .map(|(id, elems)| {
                let members = ElemSet::from_elems(n, elems.iter().copied());
                let inverse = class_of[group.neg(elems[0])] as usize;
                let radical = set_radical(&group, &members);
                let span = generated_subgroup(&group, elems.iter().copied());
                BasicSet { members, elems, id, inverse, radical, span }
            })
            .collect();
        SRing { group, classes, class_of, products: (0..rank * rank).map(|_| OnceLock::new()).collect() }
    }

    /// Checks the S-ring axioms for a partition given as element lists.
    pub fn validate(group: Arc<AbelianGroup>, partition: &[Vec<usize>]) -> Result<SRing> {
        let n = group.order();
        let mut label = vec![u32::MAX; n];
        for (i, class) in partition.iter().enumerate() {
            if class.is_empty() {
                return Err(Error::NotPartition);
            }
            for &x in class {
                if x >= n || label[x] != u32::MAX {
                    return Err(Error::NotPartition);
                }
                label[x] = i as u32;
            }
        }
        if label.contains(&u32::MAX) {
            return Err(Error::NotPartition);
        }
        Self::validate_labels(group, &label)
    }

    /// Checks the S-ring axioms for a partition given by a class label per element.
    pub fn validate_labels(group: Arc<AbelianGroup>, labels: &[u32]) -> Result<SRing> {
        if labels.len() != group.order() {
            return Err(Error::NotPartition);
        }
        let class_of = canonical_labels(labels);
        let rank = class_of.iter().map(|&c| c as usize + 1).max().unwrap_or(0);
        let mut classes = vec![Vec::new(); rank];
        for (x, &c) in class_of.iter().enumerate() {
            classes[c as usize].push(x);
        }
        if classes[0].len() != 1 {
            return Err(Error::IdentityNotSingleton);
        }
        for (i, c) in classes.iter().enumerate() {
            let inv = class_of[group.neg(c[0])];
            let size = c.iter().filter(|&&x| class_of[group.neg(x)] == inv).count();
            if size != c.len() || classes[inv as usize].len() != c.len() {
                return Err(Error::NotInverseClosed { class: i });
            }
        }
        if let Some((x, y, g, h)) = product_violation(&group, &classes, &class_of) {
            return Err(Error::ProductNotClosed { x, y, g, h });
        }
        Ok(SRing::assemble(group, class_of))
    }

    /// The group ring `ZG`: every element is its own class.
    pub fn group_ring(group: Arc<AbelianGroup>) -> SRing {
        let labels = (0..group.order() as u32).collect();
        SRing::assemble(group, labels)
    }

    /// The trivial S-ring `T_G` with classes `{e}` and `G#`.
    pub fn trivial(group: Arc<AbelianGroup>) -> SRing {
        let labels = (0..group.order()).map(|x| (x != 0) as u32).collect();
        SRing::assemble(group, labels)
    }

    pub fn group(&self) -> &Arc<AbelianGroup> {
        &self.group
    }

    pub fn rank(&self) -> usize {
        self.classes.len()
    }

    pub fn classes(&self) -> &[BasicSet] {
        &self.classes
    }

    pub fn class(&self, id: usize) -> &BasicSet {
        &self.classes[id]
    }

    pub fn class_of(&self, x: usize) -> usize {
        self.class_of[x] as usize
    }

    pub fn labels(&self) -> &[u32] {
        &self.class_of
    }

    /// Classes as sorted element lists, in id order.
    pub fn class_lists(&self) -> Vec<Vec<usize>> {
        self.classes.iter().map(|c| c.elems.clone()).collect()
    }

    /// Whether this is `T_G` (rank at most two).
    pub fn is_trivial(&self) -> bool {
        self.rank() <= 2
    }

    /// Nonzero structure constants `c^Z_{XY}` as `(Z, c)` pairs.
    pub fn product(&self, x: usize, y: usize) -> &[(u32, u32)] {
        let r = self.rank();
        self.products[x * r + y].get_or_init(|| {
            let g = &self.group;
            let mut cnt = vec![0u32; g.order()];
            for &a in &self.classes[x].elems {
                for &b in &self.classes[y].elems {
                    cnt[g.add(a, b)] += 1;
                }
            }
            self.classes
                .iter()
                .filter_map(|z| {
                    let c = cnt[z.min()];
                    (c > 0).then_some((z.id as u32, c))
                })
                .collect()
        })
    }

    pub fn structure_constant(&self, x: usize, y: usize, z: usize) -> u32 {
        self.product(x, y).iter().find(|&&(zz, _)| zz as usize == z).map_or(0, |&(_, c)| c)
    }

    /// Whether the element set is a union of classes.
    pub fn is_a_set(&self, xs: &ElemSet) -> bool {
        is_a_set(self, xs)
    }

    pub fn is_a_subgroup(&self, h: &Subgroup) -> bool {
        is_a_set(self, h.members())
    }

    /// Subgroups that are unions of classes, in canonical subgroup order.
    pub fn a_subgroups(&self) -> Vec<Subgroup> {
        self.group.subgroup_list().iter().filter(|h| self.is_a_subgroup(h)).cloned().collect()
    }

    pub fn is_primitive(&self) -> bool {
        self.a_subgroups().len() <= 2
    }

    /// Whether every class of `self` lies inside a class of `other`.
    pub fn refines(&self, other: &SRing) -> bool {
        self.classes.iter().all(|c| c.elems.iter().all(|&x| other.class_of[x] == other.class_of[c.min()]))
    }
}
