//! Builders for two explicit nonschurian S-rings and small-scale checks of
//! the Schur-group classification they belong to.

use crate::constructions::{cyclotomic, generalized_wreath_lifted};
use crate::enumerate::{enumerate_with, Catalog};
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::group::{close_automorphisms, generated_subgroup, is_prime, AbelianGroup, Automorphism};
use crate::schurity::{classify_e4cn, is_schurian, SchurReport};
use crate::sring::SRing;
use std::collections::BTreeSet;
use std::sync::Arc;

/// Which of the two constructions an instance comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Instance {
    /// Over `C8 x C2 x Cp`.
    T2,
    /// Over `E16 x Cp`.
    T3,
}

impl Instance {
    pub fn name(self) -> &'static str {
        match self {
            Instance::T2 => "t2",
            Instance::T3 => "t3",
        }
    }
}

/// Expected classes against the constructed ones, compared as sets of sets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Comparison {
    pub expected: Vec<Vec<usize>>,
    /// Expected classes absent from the constructed S-ring.
    pub missing: Vec<Vec<usize>>,
    /// Constructed classes that were not expected.
    pub unexpected: Vec<Vec<usize>>,
}

impl Comparison {
    pub fn new(a: &SRing, expected: Vec<Vec<usize>>) -> Self {
        let expected = normalize(expected);
        let want: BTreeSet<Vec<usize>> = expected.iter().cloned().collect();
        let have: BTreeSet<Vec<usize>> = a.class_lists().into_iter().collect();
        Comparison {
            missing: want.difference(&have).cloned().collect(),
            unexpected: have.difference(&want).cloned().collect(),
            expected,
        }
    }

    pub fn matches(&self) -> bool {
        self.missing.is_empty() && self.unexpected.is_empty()
    }
}

#[derive(Clone, Debug)]
pub struct ReproResult {
    pub instance: Instance,
    pub p: u64,
    pub sring: SRing,
    pub comparison: Comparison,
    pub report: SchurReport,
}

fn normalize(mut classes: Vec<Vec<usize>>) -> Vec<Vec<usize>> {
    for c in classes.iter_mut() {
        c.sort_unstable();
    }
    classes.sort();
    classes
}

fn squares_mod(p: u64) -> Vec<bool> {
    let mut sq = vec![false; p as usize];
    for m in 1..p {
        sq[(m * m % p) as usize] = true;
    }
    sq
}

/// Orbits of a group of maps given as its full element list, on `points`.
fn orbits_of<F: Fn(usize) -> usize>(points: &[usize], maps: &[F]) -> Vec<Vec<usize>> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for &x in points {
        if seen.contains(&x) {
            continue;
        }
        let orbit: BTreeSet<usize> = maps.iter().map(|f| f(x)).collect();
        seen.extend(orbit.iter().copied());
        out.push(orbit.into_iter().collect());
    }
    out
}

fn t2_check(p: u64) -> Result<()> {
    if p.is_multiple_of(2) || !is_prime(p) || p > 13 {
        return Err(Error::Precondition(format!("p must be an odd prime at most 13, got {p}")));
    }
    Ok(())
}

fn t3_check(p: u64) -> Result<()> {
    if p < 5 || !is_prime(p) {
        return Err(Error::Precondition(format!("p must be a prime at least 5, got {p}")));
    }
    Ok(())
}

/// The 13 classes of the `C8 x C2 x Cp` instance, written out directly.
pub fn expected_t2_classes(p: u64) -> Result<Vec<Vec<usize>>> {
    t2_check(p)?;
    let g = AbelianGroup::new(&[8, 2, p as i64])?;
    let sq = squares_mod(p);
    let el = |i: i64, j: i64, k: i64| g.index(&[i, j, k]).unwrap();
    let nz: Vec<i64> = (1..p as i64).collect();
    let p1: Vec<i64> = nz.iter().copied().filter(|&k| sq[k as usize]).collect();
    let p2: Vec<i64> = nz.iter().copied().filter(|&k| !sq[k as usize]).collect();
    let over = |is: &[i64], js: &[i64], ks: &[i64]| {
        let mut v = Vec::new();
        for &i in is {
            for &j in js {
                for &k in ks {
                    v.push(el(i, j, k));
                }
            }
        }
        v
    };
    let all_p: Vec<i64> = (0..p as i64).collect();
    let mut y1 = over(&[2], &[0], &p1);
    y1.extend(over(&[6], &[0], &p2));
    let mut y2 = over(&[2], &[0], &p2);
    y2.extend(over(&[6], &[0], &p1));
    Ok(normalize(vec![
        vec![el(0, 0, 0)],
        vec![el(4, 0, 0)],
        over(&[2, 6], &[0], &[0]),
        over(&[0], &[0], &nz),
        over(&[4], &[0], &nz),
        y1,
        y2,
        over(&[0, 2, 4, 6], &[1], &[0]),
        over(&[0, 2, 4, 6], &[1], &nz),
        over(&[1, 7], &[0], &all_p),
        over(&[3, 5], &[0], &all_p),
        over(&[1, 5], &[1], &all_p),
        over(&[3, 7], &[1], &all_p),
    ]))
}

/// Nonschurian S-ring over `C8 x C2 x Cp` assembled from three generalized
/// wreath products.
pub fn build_t2_instance(p: u64) -> Result<SRing> {
    t2_check(p)?;
    let pi = p as i64;
    let sq = squares_mod(p);

    // U = <a^2> x B x P with coordinates (i, j, k) standing for a^(2i) b^j x^k.
    let gu = Arc::new(AbelianGroup::new(&[4, 2, pi])?);
    let eu = |i: i64, j: i64, k: i64| gu.index(&[i, j, k]).unwrap();
    let u1: Vec<usize> = (0..4).flat_map(|i| (0..pi).map(move |k| (i, k))).map(|(i, k)| eu(i, 0, k)).collect();
    // F pairs x -> x^m with inversion on <a^2> exactly when m is a nonsquare.
    let f: Vec<_> = (1..pi)
        .map(|m| {
            let s = if sq[m as usize] { 1 } else { -1 };
            let gu = &gu;
            move |x: usize| {
                let c = gu.coords(x);
                gu.index(&[s * c[0] as i64, c[1] as i64, m * c[2] as i64]).unwrap()
            }
        })
        .collect();
    let a1 = orbits_of(&u1, &f);
    let top2 = {
        let lift = |j: i64, ks: Vec<i64>| -> Vec<usize> {
            (0..4).flat_map(|i| ks.iter().map(move |&k| (i, k))).map(|(i, k)| eu(i, j, k)).collect()
        };
        let nz: Vec<i64> = (1..pi).collect();
        vec![lift(0, vec![0]), lift(1, vec![0]), lift(0, nz.clone()), lift(1, nz)]
    };
    let a12 = generalized_wreath_lifted(
        gu.clone(),
        &generated_subgroup(&gu, [eu(1, 0, 0), eu(0, 0, 1)]),
        &generated_subgroup(&gu, [eu(1, 0, 0)]),
        &a1,
        &top2,
    )?;

    // A x B with coordinates (i, j) for a^i b^j.
    let gab = Arc::new(AbelianGroup::new(&[8, 2])?);
    let eab = |i: i64, j: i64| gab.index(&[i, j]).unwrap();
    let a3 = vec![
        vec![eab(0, 0)],
        vec![eab(4, 0)],
        vec![eab(1, 0), eab(7, 0)],
        vec![eab(2, 0), eab(6, 0)],
        vec![eab(3, 0), eab(5, 0)],
    ];
    let coset =
        |reps: &[(i64, i64)]| -> Vec<usize> { reps.iter().flat_map(|&(i, j)| [eab(i, j), eab(i + 4, j)]).collect() };
    let a4 = vec![
        coset(&[(0, 0)]),
        coset(&[(2, 0)]),
        coset(&[(1, 1)]),
        coset(&[(3, 1)]),
        coset(&[(1, 0), (3, 0)]),
        coset(&[(0, 1), (2, 1)]),
    ];
    let a34 = generalized_wreath_lifted(
        gab.clone(),
        &generated_subgroup(&gab, [eab(1, 0)]),
        &generated_subgroup(&gab, [eab(4, 0)]),
        &a3,
        &a4,
    )?;

    let g = Arc::new(AbelianGroup::new(&[8, 2, pi])?);
    let eg = |i: i64, j: i64, k: i64| g.index(&[i, j, k]).unwrap();
    let bottom: Vec<Vec<usize>> = a12
        .class_lists()
        .into_iter()
        .map(|c| {
            c.into_iter()
                .map(|x| {
                    let v = gu.coords(x);
                    eg(2 * v[0] as i64, v[1] as i64, v[2] as i64)
                })
                .collect()
        })
        .collect();
    let top: Vec<Vec<usize>> = a34
        .class_lists()
        .into_iter()
        .map(|c| {
            c.into_iter()
                .flat_map(|x| {
                    let v = gab.coords(x);
                    (0..pi).map(move |k| (v[0] as i64, v[1] as i64, k))
                })
                .map(|(i, j, k)| eg(i, j, k))
                .collect()
        })
        .collect();
    let a = generalized_wreath_lifted(
        g.clone(),
        &generated_subgroup(&g, [eg(2, 0, 0), eg(0, 1, 0), eg(0, 0, 1)]),
        &generated_subgroup(&g, [eg(0, 0, 1)]),
        &bottom,
        &top,
    )?;
    let cmp = Comparison::new(&a, expected_t2_classes(p)?);
    if !cmp.matches() {
        return Err(Error::Internal("constructed classes differ from the expected list".into()));
    }
    Ok(a)
}

/// The cyclotomic S-ring over `E16` given by `(a,b,c,d) -> (a,ab,bc,cd)`.
pub fn t3_top() -> Result<SRing> {
    let h = Arc::new(AbelianGroup::new(&[2, 2, 2, 2])?);
    let e = |v: [i64; 4]| h.index(&v).unwrap();
    let s0 = Automorphism::from_images(&h, &[e([1, 0, 0, 0]), e([1, 1, 0, 0]), e([0, 1, 1, 0]), e([0, 0, 1, 1])])?;
    if s0.order() != 4 {
        return Err(Error::Internal("sigma_0 must have order 4".into()));
    }
    let a0 = cyclotomic(h.clone(), &[s0])?;
    let cmp = Comparison::new(&a0, expected_t3_top_classes(&h));
    if !cmp.matches() {
        return Err(Error::Internal("top operand classes differ from the expected list".into()));
    }
    Ok(a0)
}

fn expected_t3_top_classes(h: &AbelianGroup) -> Vec<Vec<usize>> {
    let e = |v: [i64; 4]| h.index(&v).unwrap();
    normalize(vec![
        vec![e([0, 0, 0, 0])],
        vec![e([1, 0, 0, 0])],
        vec![e([0, 1, 0, 0]), e([1, 1, 0, 0])],
        vec![e([0, 0, 1, 0]), e([1, 0, 1, 0]), e([0, 1, 1, 0]), e([1, 1, 1, 0])],
        vec![e([0, 0, 0, 1]), e([0, 1, 0, 1]), e([0, 0, 1, 1]), e([1, 1, 1, 1])],
        vec![e([1, 0, 0, 1]), e([1, 1, 0, 1]), e([1, 0, 1, 1]), e([0, 1, 1, 1])],
    ])
}

/// The 9 classes of the bottom operand over `E8 x Cp`.
pub fn expected_t3_bottom_classes(p: u64) -> Result<Vec<Vec<usize>>> {
    t3_check(p)?;
    let gu = AbelianGroup::new(&[2, 2, 2, p as i64])?;
    let sq = squares_mod(p);
    let e = |v: [i64; 3], k: i64| gu.index(&[v[0], v[1], v[2], k]).unwrap();
    let nz: Vec<i64> = (1..p as i64).collect();
    let p1: Vec<i64> = nz.iter().copied().filter(|&k| sq[k as usize]).collect();
    let p2: Vec<i64> = nz.iter().copied().filter(|&k| !sq[k as usize]).collect();
    let over = |vs: &[[i64; 3]], ks: &[i64]| -> Vec<usize> {
        vs.iter().flat_map(|&v| ks.iter().map(move |&k| e(v, k))).collect()
    };
    let ac = [[0, 0, 1], [1, 0, 1]];
    let abc = [[0, 1, 1], [1, 1, 1]];
    let mut x1 = over(&ac, &p1);
    x1.extend(over(&abc, &p2));
    let mut x2 = over(&ac, &p2);
    x2.extend(over(&abc, &p1));
    Ok(normalize(vec![
        over(&[[0, 0, 0]], &[0]),
        over(&[[1, 0, 0]], &[0]),
        over(&[[0, 1, 0], [1, 1, 0]], &[0]),
        over(&[[0, 0, 1], [1, 0, 1], [0, 1, 1], [1, 1, 1]], &[0]),
        over(&[[0, 0, 0]], &nz),
        over(&[[1, 0, 0]], &nz),
        over(&[[0, 1, 0], [1, 1, 0]], &nz),
        x1,
        x2,
    ]))
}

/// The bottom operand over `U = E8 x Cp`, cyclotomic for the fiber product
/// of `D8` on `E8` and `Aut(Cp)` over their index-2 quotients.
pub fn t3_bottom(p: u64) -> Result<SRing> {
    t3_check(p)?;
    let pi = p as i64;
    let gv = AbelianGroup::new(&[2, 2, 2])?;
    let ev = |v: [i64; 3]| gv.index(&v).unwrap();
    let s1 = Automorphism::from_images(&gv, &[ev([1, 0, 0]), ev([1, 1, 0]), ev([0, 1, 1])])?;
    let s2 = Automorphism::from_images(&gv, &[ev([1, 0, 0]), ev([0, 1, 0]), ev([0, 1, 1])])?;
    if s1.order() != 4 || s2.order() != 2 || s2.then(&s1).then(&s2) != s1.inverse(&gv) {
        return Err(Error::Internal("generators do not satisfy the dihedral relations".into()));
    }
    let mv = close_automorphisms(&gv, &[s1.clone(), s2.clone()], 8)?;
    let mv0 = close_automorphisms(&gv, &[s1.then(&s1), s2.then(&s1)], 4)?;
    if mv.len() != 8 || mv0.len() != 4 {
        return Err(Error::Internal("unexpected subgroup orders".into()));
    }
    let sq = squares_mod(p);
    let gu = Arc::new(AbelianGroup::new(&[2, 2, 2, pi])?);
    let split = |x: usize| {
        let c = gu.coords(x);
        (ev([c[0] as i64, c[1] as i64, c[2] as i64]), c[3] as i64)
    };
    let join = |v: usize, k: i64| {
        let c = gv.coords(v);
        gu.index(&[c[0] as i64, c[1] as i64, c[2] as i64, k]).unwrap()
    };
    let maps: Vec<_> = mv
        .iter()
        .flat_map(|s| (1..pi).map(move |m| (s, m)))
        .filter(|(s, m)| mv0.contains(s) == sq[*m as usize])
        .map(|(s, m)| {
            move |x: usize| {
                let (v, k) = split(x);
                join(s.apply(v), (m * k) % pi)
            }
        })
        .collect();
    let points: Vec<usize> = gu.elements().collect();
    let a1 = SRing::validate(gu.clone(), &orbits_of(&points, &maps))?;
    let cmp = Comparison::new(&a1, expected_t3_bottom_classes(p)?);
    if !cmp.matches() {
        return Err(Error::Internal("bottom operand classes differ from the expected list".into()));
    }
    Ok(a1)
}

/// Nonschurian S-ring over `E16 x Cp`: the bottom operand over `E8 x Cp`
/// wreathed with the cyclotomic top over `G/P`.
pub fn build_t3_instance(p: u64) -> Result<SRing> {
    t3_check(p)?;
    let pi = p as i64;
    let a0 = t3_top()?;
    let a1 = t3_bottom(p)?;
    let h = a0.group();
    let gu = a1.group();
    let g = Arc::new(AbelianGroup::new(&[2, 2, 2, 2, pi])?);
    let embed = |c: Vec<u32>, d: i64, k: i64| g.index(&[c[0] as i64, c[1] as i64, c[2] as i64, d, k]).unwrap();
    let bottom: Vec<Vec<usize>> = a1
        .class_lists()
        .into_iter()
        .map(|c| {
            c.into_iter()
                .map(|x| {
                    let v = gu.coords(x);
                    embed(v[..3].to_vec(), 0, v[3] as i64)
                })
                .collect()
        })
        .collect();
    let top: Vec<Vec<usize>> = a0
        .class_lists()
        .into_iter()
        .map(|c| {
            c.into_iter()
                .flat_map(|x| (0..pi).map(move |k| (x, k)))
                .map(|(x, k)| {
                    let v = h.coords(x);
                    embed(v[..3].to_vec(), v[3] as i64, k)
                })
                .collect()
        })
        .collect();
    let gens = |coords: &[[i64; 5]]| generated_subgroup(&g, coords.iter().map(|c| g.index(c).unwrap()));
    let u = gens(&[[1, 0, 0, 0, 0], [0, 1, 0, 0, 0], [0, 0, 1, 0, 0], [0, 0, 0, 0, 1]]);
    let l = gens(&[[0, 0, 0, 0, 1]]);
    generalized_wreath_lifted(g.clone(), &u, &l, &bottom, &top)
}

pub fn repro_t2(p: u64) -> Result<ReproResult> {
    let sring = build_t2_instance(p)?;
    let comparison = Comparison::new(&sring, expected_t2_classes(p)?);
    let report = is_schurian(&sring)?;
    Ok(ReproResult { instance: Instance::T2, p, sring, comparison, report })
}

/// The comparison covers the classes of the full S-ring that lie in `U`,
/// which are the bottom operand's classes.
pub fn repro_t3(p: u64) -> Result<ReproResult> {
    let sring = build_t3_instance(p)?;
    let g = sring.group();
    let gu = AbelianGroup::new(&[2, 2, 2, p as i64])?;
    let expected = expected_t3_bottom_classes(p)?
        .into_iter()
        .map(|c| {
            c.into_iter()
                .map(|x| {
                    let v = gu.coords(x);
                    g.index(&[v[0] as i64, v[1] as i64, v[2] as i64, 0, v[3] as i64]).unwrap()
                })
                .collect()
        })
        .collect();
    let mut comparison = Comparison::new(&sring, expected);
    comparison.unexpected.retain(|c| c.iter().all(|&x| g.coord(x, 3) == 0));
    let report = is_schurian(&sring)?;
    Ok(ReproResult { instance: Instance::T3, p, sring, comparison, report })
}

pub fn repro(instance: Instance, p: u64) -> Result<ReproResult> {
    match instance {
        Instance::T2 => repro_t2(p),
        Instance::T3 => repro_t3(p),
    }
}

#[derive(Clone, Debug)]
pub struct TheoremReport {
    /// `(group, catalog size, nonschurian count)` for the groups expected to be Schur.
    pub schur_groups: Vec<(String, usize, usize)>,
    pub c8c2c3_size: usize,
    pub c8c2c3_nonschurian: usize,
    pub t2_in_catalog: bool,
    pub t3_nonschurian: bool,
    pub e4c9_size: usize,
    /// Nontrivial entries of the `E4 x C9` catalog left without a clause.
    pub e4c9_unclassified: usize,
}

impl TheoremReport {
    pub fn passed(&self) -> bool {
        self.schur_groups.iter().all(|s| s.2 == 0)
            && self.c8c2c3_nonschurian > 0
            && self.t2_in_catalog
            && self.t3_nonschurian
            && self.e4c9_unclassified == 0
    }
}

fn catalog(factors: &[i64], exec: Exec) -> Result<Catalog> {
    let g = Arc::new(AbelianGroup::new(factors)?);
    enumerate_with(&g, exec)
}

pub fn check_theorems(exec: Exec) -> Result<TheoremReport> {
    let mut schur_groups = Vec::new();
    for f in [[2, 2, 3], [2, 2, 5]] {
        let c = catalog(&f, exec)?;
        let bad = c.entries.iter().filter(|e| !e.schurian).count();
        schur_groups.push((c.group.literal(), c.len(), bad));
    }
    let c = catalog(&[8, 2, 3], exec)?;
    let t2 = build_t2_instance(3)?;
    let t2_in_catalog = c.entries.iter().any(|e| !e.schurian && e.sring.class_lists() == t2.class_lists());
    let t3_nonschurian = !is_schurian(&build_t3_instance(5)?)?.schurian;
    let e4c9 = catalog(&[2, 2, 9], exec)?;
    let mut unclassified = 0;
    for e in e4c9.entries.iter().filter(|e| !e.sring.is_trivial()) {
        if classify_e4cn(&e.sring)?.clauses.is_empty() {
            unclassified += 1;
        }
    }
    Ok(TheoremReport {
        schur_groups,
        c8c2c3_size: c.len(),
        c8c2c3_nonschurian: c.entries.iter().filter(|e| !e.schurian).count(),
        t2_in_catalog,
        t3_nonschurian,
        e4c9_size: e4c9.len(),
        e4c9_unclassified: unclassified,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn t2_small_primes() {
        for p in [3, 5] {
            let r = repro_t2(p).unwrap();
            assert!(r.comparison.matches());
            assert_eq!(r.sring.rank(), 13);
            assert_eq!(r.sring.group().order(), 16 * p as usize);
            assert!(!r.report.schurian);
            assert!(r.report.witness.is_some());
        }
    }

    #[test]
    fn t2_rejects_bad_primes() {
        for p in [2, 9, 17] {
            assert!(matches!(build_t2_instance(p), Err(Error::Precondition(_))));
        }
    }

    #[test]
    fn t3_operands() {
        let a0 = t3_top().unwrap();
        assert_eq!(a0.rank(), 6);
        let stab = crate::schurity::class_stabilizer(&a0).unwrap();
        assert_eq!(stab.len(), 8);
        assert_eq!(crate::autsearch::aut_sring(&a0).unwrap().order(), 128u32.into());
        assert_eq!(t3_bottom(5).unwrap().rank(), 9);
        assert!(matches!(build_t3_instance(3), Err(Error::Precondition(_))));
    }

    #[test]
    fn t3_instance_classes() {
        let r = repro_t3(5).unwrap();
        assert!(r.comparison.matches());
        assert_eq!(r.sring.rank(), 11);
    }
}
