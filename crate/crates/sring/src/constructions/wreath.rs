use crate::error::{Error, Result};
use crate::group::{AbelianGroup, Section, Subgroup};
use crate::sring::SRing;
use crate::ElemSet;
use std::collections::BTreeSet;
use std::sync::Arc;

/// Operands of a generalized wreath product over the section `U/L` of `group`.
///
/// `bottom` lives on the quotient of `bottom_section` (which must be `U/{e}`)
/// and `top` on the quotient of `top_section` (which must be `G/L`).
#[derive(Clone, Debug)]
pub struct WreathSpec {
    pub group: Arc<AbelianGroup>,
    pub bottom: SRing,
    pub bottom_section: Section,
    pub top: SRing,
    pub top_section: Section,
}

/// Partition of the `L`-cosets in `U` as sets of minimal coset representatives.
type CosetPartition = BTreeSet<Vec<usize>>;

fn coset_rep(g: &AbelianGroup, l: &Subgroup, x: usize) -> usize {
    l.members().iter().map(|t| g.add(x, t)).min().unwrap()
}

pub fn generalized_wreath(spec: &WreathSpec) -> Result<SRing> {
    let g = &spec.group;
    let bs = &spec.bottom_section;
    let ts = &spec.top_section;
    let u = bs.upper();
    let l = ts.lower();
    if !bs.lower().is_trivial()
        || ts.upper().order() != g.order()
        || **spec.bottom.group() != **bs.quotient()
        || **spec.top.group() != **ts.quotient()
    {
        return Err(Error::Precondition("sections must be U/{e} and G/L".into()));
    }
    if !l.is_subgroup_of(u) {
        return Err(Error::NotASubgroupOf);
    }
    let l_bottom = bs.project_subgroup(l).ok_or(Error::SectionNotASection)?;
    let u_top = ts.project_subgroup(u).ok_or(Error::SectionNotASection)?;
    if !spec.bottom.is_a_subgroup(&l_bottom) || !spec.top.is_a_subgroup(&u_top) {
        return Err(Error::SectionNotASection);
    }
    let mut from_bottom = CosetPartition::new();
    for c in spec.bottom.classes() {
        let reps: BTreeSet<usize> = c.elems().iter().map(|&b| coset_rep(g, l, bs.lift(b))).collect();
        from_bottom.insert(reps.into_iter().collect());
    }
    let mut from_top = CosetPartition::new();
    for c in spec.top.classes() {
        if !u_top.contains(c.min()) {
            continue;
        }
        let reps: BTreeSet<usize> = c.elems().iter().map(|&q| ts.lift(q)).collect();
        from_top.insert(reps.into_iter().collect());
    }
    // Bottom classes may repeat a coset set; compare the induced partitions only.
    if from_bottom != from_top {
        return Err(Error::IncompatibleSection);
    }
    let rb = spec.bottom.rank() as u32;
    let labels: Vec<u32> = g
        .elements()
        .map(|x| match bs.project(x) {
            Some(b) => spec.bottom.labels()[b],
            None => rb + spec.top.labels()[ts.project(x).unwrap()],
        })
        .collect();
    SRing::validate_labels(g.clone(), &labels)
}

/// Generalized wreath product from operands given as partitions of `U` and of
/// `G` into unions of `L`-cosets, both in ambient element indices.
pub fn generalized_wreath_lifted(
    g: Arc<AbelianGroup>,
    u: &Subgroup,
    l: &Subgroup,
    bottom: &[Vec<usize>],
    top: &[Vec<usize>],
) -> Result<SRing> {
    let bs = Section::new(&g, u, &Subgroup::trivial(&g))?;
    let ts = Section::new(&g, &Subgroup::whole(&g), l)?;
    let mut bottom_classes = Vec::new();
    for c in bottom {
        let img = bs.image(&ElemSet::from_elems(g.order(), c.iter().copied())).ok_or(Error::NotPartition)?;
        bottom_classes.push(img.to_vec());
    }
    let mut top_classes = Vec::new();
    for c in top {
        let set = ElemSet::from_elems(g.order(), c.iter().copied());
        let img = ts.image(&set).ok_or(Error::NotPartition)?;
        if ts.preimage(&img) != set {
            return Err(Error::Precondition("top classes must be unions of L-cosets".into()));
        }
        top_classes.push(img.to_vec());
    }
    let spec = WreathSpec {
        bottom: SRing::validate(bs.quotient().clone(), &bottom_classes)?,
        top: SRing::validate(ts.quotient().clone(), &top_classes)?,
        group: g,
        bottom_section: bs,
        top_section: ts,
    };
    generalized_wreath(&spec)
}

/// Whether `A` is the `U/L`-wreath product; the second flag reports nontriviality.
pub fn is_generalized_wreath(a: &SRing, u: &Subgroup, l: &Subgroup) -> Result<(bool, bool)> {
    if !a.is_a_subgroup(u) || !a.is_a_subgroup(l) || !l.is_subgroup_of(u) {
        return Err(Error::SectionNotASection);
    }
    let holds = a.classes().iter().filter(|c| !u.contains(c.min())).all(|c| l.is_subgroup_of(c.radical()));
    let nontrivial = !l.is_trivial() && u.order() != a.group().order();
    Ok((holds, holds && nontrivial))
}
