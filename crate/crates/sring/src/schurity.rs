//! Schurity, normality and cyclotomicity, and the clause classifier for
//! S-rings over `E4 x C_n`.

use crate::autsearch::{aut_from_search, aut_sring, stabilizer_search, StabilizerSearch};
use crate::constructions::{is_generalized_wreath, is_tensor_on, tensor_decompositions};
use crate::error::{Error, Result};
use crate::group::{prime_factors, Automorphism, Section, Subgroup};
use crate::perm::{is_normal as perm_is_normal, regular};
use crate::sring::SRing;
use num_bigint::BigUint;
use serde::Serialize;

/// A class split by the stabilizer of `e` in `Aut(A)`, with the orbit of its
/// least element.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub class: usize,
    pub orbit: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SchurReport {
    pub schurian: bool,
    pub aut_order: BigUint,
    /// Orbits of `Aut(A)_e`, each sorted, ordered by least element.
    pub orbits: Vec<Vec<usize>>,
    pub witness: Option<Witness>,
}

pub fn is_schurian(a: &SRing) -> Result<SchurReport> {
    Ok(report_from_search(a, &stabilizer_search(a)?))
}

pub fn report_from_search(a: &SRing, st: &StabilizerSearch) -> SchurReport {
    let n = a.group().order();
    let labels = st.orbits(n);
    let mut orbits: Vec<Vec<usize>> = Vec::new();
    let mut slot = vec![usize::MAX; n];
    for (x, &l) in labels.iter().enumerate() {
        let l = l as usize;
        if slot[l] == usize::MAX {
            slot[l] = orbits.len();
            orbits.push(Vec::new());
        }
        orbits[slot[l]].push(x);
    }
    let witness = a.classes().iter().find_map(|c| {
        let l = labels[c.min()];
        if c.elems().iter().all(|&x| labels[x] == l) {
            None
        } else {
            Some(Witness { class: c.id(), orbit: orbits[slot[l as usize]].clone() })
        }
    });
    SchurReport { schurian: witness.is_none(), aut_order: st.order() * BigUint::from(n), orbits, witness }
}

/// Group automorphisms fixing every class setwise.
pub fn class_stabilizer(a: &SRing) -> Result<Vec<Automorphism>> {
    let auts = a.group().automorphisms()?;
    Ok(auts.iter().filter(|s| a.group().elements().all(|x| a.class_of(s.apply(x)) == a.class_of(x))).cloned().collect())
}

/// Whether `A = cyc(K, G)` for some `K`, together with the largest such `K`.
pub fn is_cyclotomic(a: &SRing) -> Result<(bool, Vec<Automorphism>)> {
    let k = class_stabilizer(a)?;
    let labels = crate::constructions::orbit_labels_of(a.group().order(), &k);
    let ok = a.classes().iter().all(|c| c.elems().iter().all(|&x| labels[x] == labels[c.min()]));
    Ok((ok, k))
}

pub fn is_normal(a: &SRing) -> Result<bool> {
    normal_in(a, &aut_sring(a)?)
}

/// Whether the regular subgroup is normal in `k`, a copy of `Aut(A)`.
pub fn normal_in(a: &SRing, k: &crate::perm::PermGroup) -> Result<bool> {
    perm_is_normal(&regular(a.group())?, k)
}

/// Schurity report and normality from a single automorphism search.
pub fn schur_and_normal(a: &SRing) -> Result<(SchurReport, bool)> {
    let st = stabilizer_search(a)?;
    let normal = normal_in(a, &aut_from_search(a, &st)?)?;
    Ok((report_from_search(a, &st), normal))
}

/// `rad(A)` of a circulant S-ring: the radical of the class of a generator.
pub fn circulant_radical(a: &SRing) -> Option<Subgroup> {
    let g = a.group();
    if !g.is_cyclic() {
        return None;
    }
    let gen = g.elements().find(|&x| g.element_order(x) as usize == g.order())?;
    Some(a.class(a.class_of(gen)).radical().clone())
}

/// The clauses of the `E4 x C_n` description.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Clause {
    Cyclotomic,
    Tensor,
    /// `|U/L| <= 2`.
    SmallSection,
    /// `A_L` has a tensor complement in `A_U`, or `A_{U/L}` one in `A_{G/L}`.
    Complemented,
    /// Nondense, with a circulant cyclotomic operand of trivial radical.
    NondenseCirculant,
    /// Dense, `U >= H`, `A_U` cyclotomic, radical condition, `L <= D`.
    DenseCyclotomic,
}

#[derive(Clone, Debug, Serialize)]
pub struct Classification {
    pub clauses: Vec<Clause>,
    /// First section `(U, L)` found for each wreath clause, as member lists.
    pub sections: Vec<(Clause, Vec<usize>, Vec<usize>)>,
}

fn induced_on(a: &SRing, u: &Subgroup, l: &Subgroup) -> Result<SRing> {
    let s = Section::new(a.group(), u, l)?;
    a.induced(&s)
}

/// Whether `A_{L}` has a tensor complement inside `A_{U}` (complement may be trivial).
fn complemented_in(a: &SRing, l: &Subgroup, u: &Subgroup) -> bool {
    if l == u {
        return true;
    }
    a.a_subgroups().iter().filter(|w| w.is_subgroup_of(u)).any(|w| {
        w.order() * l.order() == u.order() && w.members().intersection_count(l.members()) == 1 && is_tensor_on(a, l, w)
    })
}

fn cyclotomic_trivial_radical(b: &SRing) -> Result<bool> {
    match circulant_radical(b) {
        Some(r) if r.is_trivial() => Ok(is_cyclotomic(b)?.0),
        _ => Ok(false),
    }
}

/// Applies the `E4 x C_n` description and returns every clause that holds.
pub fn classify_e4cn(a: &SRing) -> Result<Classification> {
    let g = a.group();
    let n = g.order() / 4;
    let h_elems: Vec<usize> = g.elements().filter(|&x| g.mul(x, 2) == 0).collect();
    let shape_ok = g.order().is_multiple_of(4) && n % 2 == 1 && h_elems.len() == 4 && {
        let pf = prime_factors(n as u64);
        pf.len() == 1 || (pf.len() == 2 && pf.iter().all(|&(_, k)| k == 1))
    };
    let d_gen = g.elements().find(|&x| g.element_order(x) as usize == n);
    let (true, Some(d_gen)) = (shape_ok && n > 1, d_gen) else {
        return Err(Error::WrongGroupShape);
    };
    if a.is_trivial() {
        return Err(Error::Precondition("the S-ring must be nontrivial".into()));
    }
    let h = crate::group::generated_subgroup(g, h_elems.iter().copied());
    let d = crate::group::generated_subgroup(g, [d_gen]);
    let whole = Subgroup::whole(g);
    let subs = a.a_subgroups();
    let dense = a.is_a_subgroup(&h) && a.is_a_subgroup(&d);
    let three_power = prime_factors(n as u64).iter().all(|&(p, _)| p == 3);

    let mut clauses = Vec::new();
    if is_cyclotomic(a)?.0 {
        clauses.push(Clause::Cyclotomic);
    }
    if !tensor_decompositions(a, &whole).is_empty() {
        clauses.push(Clause::Tensor);
    }
    let mut sections: Vec<(&Subgroup, &Subgroup)> = Vec::new();
    for u in &subs {
        for l in &subs {
            if !l.is_trivial() && u.order() != g.order() && l.is_subgroup_of(u) && is_generalized_wreath(a, u, l)?.0 {
                sections.push((u, l));
            }
        }
    }
    sections.sort_by(|x, y| y.0.cmp(x.0).then_with(|| x.1.cmp(y.1)));
    let mut found: Vec<(Clause, Vec<usize>, Vec<usize>)> = Vec::new();
    let mut record = |c: Clause, u: &Subgroup, l: &Subgroup| {
        if !found.iter().any(|f| f.0 == c) {
            found.push((c, u.members().to_vec(), l.members().to_vec()));
        }
    };
    for &(u, l) in &sections {
        if u.order() <= 2 * l.order() {
            record(Clause::SmallSection, u, l);
        }
        let top = induced_on(a, &whole, l)?;
        let top_section = Section::new(g, &whole, l)?;
        let s_img = top_section.project_subgroup(u).expect("U contains L");
        let quotient_whole = Subgroup::whole(top.group());
        if complemented_in(a, l, u) || complemented_in(&top, &s_img, &quotient_whole) {
            record(Clause::Complemented, u, l);
        }
        if !dense {
            let bottom = induced_on(a, u, &Subgroup::trivial(g))?;
            if cyclotomic_trivial_radical(&bottom)? || cyclotomic_trivial_radical(&top)? {
                record(Clause::NondenseCirculant, u, l);
            }
        } else if h.is_subgroup_of(u) && l.is_subgroup_of(&d) {
            let bottom = induced_on(a, u, &Subgroup::trivial(g))?;
            let ud = u.intersection(g, &d);
            let cyc_part = induced_on(a, &ud, &Subgroup::trivial(g))?;
            let rad = circulant_radical(&cyc_part).map_or(1, |r| r.order());
            if is_cyclotomic(&bottom)?.0 && (rad == 1 || (three_power && rad == 3)) {
                record(Clause::DenseCyclotomic, u, l);
            }
        }
    }
    found.sort();
    clauses.extend(found.iter().map(|f| f.0));
    Ok(Classification { clauses, sections: found })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{cyclotomic, tensor};
    use crate::group::AbelianGroup;
    use std::sync::Arc;

    fn grp(f: &[i64]) -> Arc<AbelianGroup> {
        Arc::new(AbelianGroup::new(f).unwrap())
    }

    #[test]
    fn schurity_examples() {
        let z = SRing::group_ring(grp(&[2, 3]));
        let r = is_schurian(&z).unwrap();
        assert!(r.schurian && r.witness.is_none());
        assert_eq!(r.aut_order, BigUint::from(6u32));
        let t = SRing::trivial(grp(&[5]));
        assert!(is_schurian(&t).unwrap().schurian);
    }

    #[test]
    fn cyclotomic_examples() {
        let z = SRing::group_ring(grp(&[6]));
        let (c, k) = is_cyclotomic(&z).unwrap();
        assert!(c && k.len() == 1);
        let w = SRing::validate(grp(&[4]), &[vec![0], vec![2], vec![1, 3]]).unwrap();
        let (c, k) = is_cyclotomic(&w).unwrap();
        assert!(c && k.len() == 2);
        // T_C6 is not cyclotomic: Aut(C6) has order 2 and cannot join 2 and 1.
        assert!(!is_cyclotomic(&SRing::trivial(grp(&[6]))).unwrap().0);
    }

    #[test]
    fn normality_examples() {
        assert!(is_normal(&SRing::group_ring(grp(&[2, 3]))).unwrap());
        assert!(is_normal(&SRing::trivial(grp(&[2, 2]))).unwrap());
        assert!(!is_normal(&SRing::trivial(grp(&[4]))).unwrap());
    }

    #[test]
    fn classifier_examples() {
        let t = tensor(&SRing::trivial(grp(&[2, 2])), &SRing::group_ring(grp(&[3])));
        let c = classify_e4cn(&t).unwrap();
        assert!(c.clauses.contains(&Clause::Tensor));
        let g = grp(&[2, 2, 9]);
        // Order 6: swaps the E4 generators' roles with a 3-cycle-free part and inverts C9.
        let sigma = Automorphism::from_images(
            &g,
            &[g.index(&[0, 1, 0]).unwrap(), g.index(&[1, 1, 0]).unwrap(), g.index(&[0, 0, 8]).unwrap()],
        )
        .unwrap();
        assert_eq!(sigma.order(), 6);
        let a = cyclotomic(g.clone(), &[sigma]).unwrap();
        assert!(classify_e4cn(&a).unwrap().clauses.contains(&Clause::Cyclotomic));
        assert!(matches!(classify_e4cn(&SRing::group_ring(grp(&[8]))), Err(Error::WrongGroupShape)));
    }
}
