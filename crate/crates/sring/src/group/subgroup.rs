use super::AbelianGroup;
use crate::bitset::ElemSet;
use std::cmp::Ordering;
use std::collections::HashSet;

/// A subgroup stored as a member bitset together with a generating list.
#[derive(Clone, Debug)]
pub struct Subgroup {
    members: ElemSet,
    gens: Vec<usize>,
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        self.members == other.members
    }
}

impl Eq for Subgroup {}

impl std::hash::Hash for Subgroup {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.members.hash(state)
    }
}

impl Ord for Subgroup {
    fn cmp(&self, other: &Self) -> Ordering {
        self.order().cmp(&other.order()).then_with(|| self.members.cmp(&other.members))
    }
}

impl PartialOrd for Subgroup {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Subgroup {
    pub fn trivial(g: &AbelianGroup) -> Self {
        Subgroup { members: ElemSet::from_elems(g.order(), [0]), gens: Vec::new() }
    }

    pub fn whole(g: &AbelianGroup) -> Self {
        Subgroup { members: ElemSet::full(g.order()), gens: g.generators() }
    }

    pub fn members(&self) -> &ElemSet {
        &self.members
    }

    pub fn generators(&self) -> &[usize] {
        &self.gens
    }

    pub fn order(&self) -> usize {
        self.members.count()
    }

    pub fn contains(&self, x: usize) -> bool {
        self.members.contains(x)
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.members.is_subset(&other.members)
    }

    pub fn is_trivial(&self) -> bool {
        self.order() == 1
    }

    /// `<self, x>`, computed as the union of the cosets `self + k x`.
    pub fn extend(&self, g: &AbelianGroup, x: usize) -> Subgroup {
        if self.contains(x) {
            return self.clone();
        }
        let base: Vec<usize> = self.members.iter().collect();
        let mut members = self.members.clone();
        let mut shift = x;
        while !self.contains(shift) {
            for &h in &base {
                members.insert(g.add(h, shift));
            }
            shift = g.add(shift, x);
        }
        let mut gens = self.gens.clone();
        gens.push(x);
        Subgroup { members, gens }
    }

    pub fn join(&self, g: &AbelianGroup, other: &Subgroup) -> Subgroup {
        other.gens.iter().fold(self.clone(), |s, &x| s.extend(g, x))
    }

    pub fn intersection(&self, g: &AbelianGroup, other: &Subgroup) -> Subgroup {
        let m = self.members.intersection(&other.members);
        generated_subgroup(g, m.iter())
    }

    /// Checks closure of a member set and builds the subgroup.
    pub fn from_members(g: &AbelianGroup, members: &ElemSet) -> Option<Subgroup> {
        if !members.contains(0) {
            return None;
        }
        let s = generated_subgroup(g, members.iter());
        (s.members == *members).then_some(s)
    }
}

pub fn generated_subgroup<I: IntoIterator<Item = usize>>(g: &AbelianGroup, xs: I) -> Subgroup {
    let mut s = Subgroup::trivial(g);
    for x in xs {
        if !s.contains(x) {
            s = s.extend(g, x);
        }
    }
    s
}

/// All subgroups of `g`, sorted by order then by member list.
pub fn subgroups(g: &AbelianGroup) -> Vec<Subgroup> {
    let mut cyclic: Vec<Subgroup> = Vec::new();
    let mut seen_cyclic = HashSet::new();
    for x in g.elements() {
        let c = generated_subgroup(g, [x]);
        if seen_cyclic.insert(c.members.clone()) {
            cyclic.push(c);
        }
    }
    let mut found: HashSet<ElemSet> = HashSet::new();
    let mut out = Vec::new();
    let mut queue = std::collections::VecDeque::new();
    let triv = Subgroup::trivial(g);
    found.insert(triv.members.clone());
    queue.push_back(triv);
    while let Some(s) = queue.pop_front() {
        for c in &cyclic {
            if c.is_subgroup_of(&s) {
                continue;
            }
            let t = s.extend(g, c.gens.first().copied().unwrap_or(0));
            if found.insert(t.members.clone()) {
                queue.push_back(t);
            }
        }
        out.push(s);
    }
    out.sort();
    out
}
