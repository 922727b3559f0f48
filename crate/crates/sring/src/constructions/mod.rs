//! Cyclotomic, tensor, generalized wreath and dual S-rings, and the star
//! product recognizer.

mod dual;
mod wreath;

pub use dual::{dual, perp};
pub use wreath::{generalized_wreath, generalized_wreath_lifted, is_generalized_wreath, WreathSpec};

use crate::error::{Error, Result};
use crate::group::{close_automorphisms, AbelianGroup, Automorphism, Subgroup};
use crate::sring::SRing;
use crate::ElemSet;
use std::sync::Arc;

const AUT_CLOSURE_BOUND: usize = 1 << 22;

/// `cyc(K, G)`: the orbits of the group generated by `gens`.
pub fn cyclotomic(g: Arc<AbelianGroup>, gens: &[Automorphism]) -> Result<SRing> {
    close_automorphisms(&g, gens, AUT_CLOSURE_BOUND)?;
    SRing::validate_labels(g.clone(), &orbit_labels_of(g.order(), gens))
}

/// Orbit labels (the least orbit member) of a set of automorphisms.
pub fn orbit_labels_of(n: usize, gens: &[Automorphism]) -> Vec<u32> {
    let mut label = vec![u32::MAX; n];
    for s in 0..n {
        if label[s] != u32::MAX {
            continue;
        }
        label[s] = s as u32;
        let mut stack = vec![s];
        while let Some(x) = stack.pop() {
            for a in gens {
                let y = a.apply(x);
                if label[y] == u32::MAX {
                    label[y] = s as u32;
                    stack.push(y);
                }
            }
        }
    }
    label
}

/// `A1 ⊗ A2` over the direct product of the two groups.
pub fn tensor(a1: &SRing, a2: &SRing) -> SRing {
    let g1 = a1.group();
    let g2 = a2.group();
    let g = Arc::new(g1.product(g2).expect("product of bounded groups"));
    let r2 = a2.rank() as u32;
    let labels: Vec<u32> = (0..g.order())
        .map(|z| {
            let (x, y) = (z / g2.order(), z % g2.order());
            a1.labels()[x] * r2 + a2.labels()[y]
        })
        .collect();
    SRing::validate_labels(g, &labels).expect("tensor product of S-rings")
}

/// Component maps `w -> (w1, w2)` for `W = G1 x G2`, or `None` if the sum is not direct.
pub(crate) fn components(g: &AbelianGroup, g1: &Subgroup, g2: &Subgroup) -> Option<Vec<(usize, usize)>> {
    let mut comp = vec![(usize::MAX, usize::MAX); g.order()];
    for a in g1.members().iter() {
        for b in g2.members().iter() {
            let w = g.add(a, b);
            if comp[w].0 != usize::MAX {
                return None;
            }
            comp[w] = (a, b);
        }
    }
    Some(comp)
}

/// Whether `A_W = A_{G1} ⊗ A_{G2}` for `W = G1 x G2` (the join of two
/// A-subgroups meeting trivially).
pub fn is_tensor_on(a: &SRing, g1: &Subgroup, g2: &Subgroup) -> bool {
    let g = a.group();
    if !a.is_a_subgroup(g1) || !a.is_a_subgroup(g2) {
        return false;
    }
    let Some(comp) = components(g, g1, g2) else {
        return false;
    };
    let w = g1.join(g, g2);
    a.classes().iter().filter(|c| w.contains(c.min())).all(|c| {
        let p1 = ElemSet::from_elems(g.order(), c.elems().iter().map(|&x| comp[x].0));
        let p2 = ElemSet::from_elems(g.order(), c.elems().iter().map(|&x| comp[x].1));
        p1.count() * p2.count() == c.len()
            && *a.class(a.class_of(p1.first().unwrap())).members() == p1
            && *a.class(a.class_of(p2.first().unwrap())).members() == p2
    })
}

/// All pairs of A-subgroups `(G1, G2)` inside `w` with `w = G1 x G2` and
/// `A_w = A_{G1} ⊗ A_{G2}`, both factors nontrivial and proper.
pub fn tensor_decompositions(a: &SRing, w: &Subgroup) -> Vec<(Subgroup, Subgroup)> {
    let subs: Vec<Subgroup> = a.a_subgroups().into_iter().filter(|h| h.is_subgroup_of(w)).collect();
    let mut out = Vec::new();
    for (i, h1) in subs.iter().enumerate() {
        if h1.is_trivial() || h1 == w {
            continue;
        }
        for h2 in subs.iter().skip(i + 1) {
            if h2.is_trivial() || h2 == w || h1.order() * h2.order() != w.order() {
                continue;
            }
            if h1.members().intersection_count(h2.members()) == 1 && is_tensor_on(a, h1, h2) {
                out.push((h1.clone(), h2.clone()));
            }
        }
    }
    out
}

/// Star product recognizer for A-subgroups `L` and `U`.
pub fn is_star(a: &SRing, l: &Subgroup, u: &Subgroup) -> Result<bool> {
    if !a.is_a_subgroup(l) || !a.is_a_subgroup(u) {
        return Err(Error::SectionNotASection);
    }
    let g = a.group();
    let lu = l.intersection(g, u);
    let lu_elems = lu.members().to_vec();
    let coset_closed = |c: &crate::sring::BasicSet| {
        c.elems().iter().all(|&x| lu_elems.iter().all(|&t| c.members().contains(g.add(x, t))))
    };
    let in_l: Vec<usize> = (0..a.rank()).filter(|&c| l.contains(a.class(c).min())).collect();
    let in_u: Vec<usize> = (0..a.rank()).filter(|&c| u.contains(a.class(c).min())).collect();
    for c in a.classes() {
        let x = c.min();
        if l.contains(x) {
            continue;
        }
        if u.contains(x) {
            if !coset_closed(c) {
                return Ok(false);
            }
            continue;
        }
        let found = in_l.iter().any(|&y| {
            in_u.iter().any(|&z| {
                let mut prod = ElemSet::new(g.order());
                for &s in a.class(y).elems() {
                    for &t in a.class(z).elems() {
                        prod.insert(g.add(s, t));
                    }
                }
                prod == *c.members()
            })
        });
        if !found {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{aut_group, generated_subgroup};

    fn grp(f: &[i64]) -> Arc<AbelianGroup> {
        Arc::new(AbelianGroup::new(f).unwrap())
    }

    #[test]
    fn cyclotomic_examples() {
        let g = grp(&[2, 6]);
        assert_eq!(cyclotomic(g.clone(), &[]).unwrap(), SRing::group_ring(g));
        let e4 = grp(&[2, 2]);
        let auts = aut_group(&e4).unwrap();
        assert_eq!(cyclotomic(e4.clone(), &auts).unwrap(), SRing::trivial(e4));
    }

    #[test]
    fn tensor_examples() {
        let z = tensor(&SRing::group_ring(grp(&[2])), &SRing::group_ring(grp(&[3])));
        assert_eq!(z, SRing::group_ring(grp(&[2, 3])));
        let t = tensor(&SRing::trivial(grp(&[2, 2])), &SRing::trivial(grp(&[3])));
        assert_eq!(t.rank(), 4);
        let g = t.group().clone();
        let h = generated_subgroup(&g, [g.index(&[1, 0, 0]).unwrap(), g.index(&[0, 1, 0]).unwrap()]);
        let d = generated_subgroup(&g, [g.index(&[0, 0, 1]).unwrap()]);
        assert!(is_tensor_on(&t, &h, &d));
        assert_eq!(tensor_decompositions(&t, &Subgroup::whole(&g)).len(), 1);
    }

    #[test]
    fn star_examples() {
        let t = tensor(&SRing::trivial(grp(&[2])), &SRing::trivial(grp(&[5])));
        let g = t.group().clone();
        let b = generated_subgroup(&g, [g.index(&[1, 0]).unwrap()]);
        let p = generated_subgroup(&g, [g.index(&[0, 1]).unwrap()]);
        assert!(is_star(&t, &b, &p).unwrap());
        let c4 = grp(&[4]);
        let w = SRing::validate(c4.clone(), &[vec![0], vec![2], vec![1, 3]]).unwrap();
        let c2 = generated_subgroup(&c4, [2]);
        assert!(!is_star(&w, &c2, &c2).unwrap());
        assert!(is_star(&SRing::trivial(c4.clone()), &c2, &c2).is_err());
    }
}
