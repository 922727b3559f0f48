mod common;

use common::{brute_force_srings, group};
use proptest::prelude::*;
use sring::enumerate::{enumerate_partitions, enumerate_with, sring_closure};
use sring::exec::Exec;
use sring::group::abelian_group_types;
use sring::SRing;

#[test]
fn matches_brute_force_up_to_order_12() {
    for n in 1..=12 {
        for f in abelian_group_types(n) {
            let g = group(&f);
            let ours: Vec<Vec<Vec<usize>>> =
                enumerate_partitions(&g, Exec::default()).unwrap().iter().map(SRing::class_lists).collect();
            assert_eq!(ours, brute_force_srings(&g), "group {f:?}");
        }
    }
}

#[test]
fn known_counts() {
    for (f, count) in [(&[4][..], 3), (&[2, 2], 5), (&[5], 3), (&[7], 4)] {
        assert_eq!(enumerate_partitions(&group(f), Exec::Sequential).unwrap().len(), count);
    }
}

#[test]
fn sequential_and_parallel_agree() {
    for f in [&[4, 2][..], &[2, 2, 3], &[9]] {
        let g = group(f);
        let a = enumerate_with(&g, Exec::Sequential).unwrap();
        let b = enumerate_with(&g, Exec::Parallel).unwrap();
        assert_eq!(a.len(), b.len());
        for (x, y) in a.entries.iter().zip(&b.entries) {
            assert_eq!(x.sring, y.sring);
            assert_eq!(
                (x.schurian, x.cyclotomic, x.normal, &x.aut_order),
                (y.schurian, y.cyclotomic, y.normal, &y.aut_order)
            );
        }
    }
}

#[test]
fn catalog_is_sorted_and_distinct() {
    let cat = enumerate_with(&group(&[4, 2, 2]), Exec::default()).unwrap();
    let keys: Vec<(usize, Vec<Vec<usize>>)> = cat.srings().map(|a| (a.rank(), a.class_lists())).collect();
    assert!(keys.windows(2).all(|w| w[0] < w[1]));
    for a in cat.srings() {
        SRing::validate(a.group().clone(), &a.class_lists()).unwrap();
    }
}

fn partition_strategy(n: usize) -> impl Strategy<Value = Vec<Vec<usize>>> {
    proptest::collection::vec(0usize..4, n).prop_map(|labels| {
        let mut classes: Vec<Vec<usize>> = vec![Vec::new(); 4];
        for (x, &l) in labels.iter().enumerate() {
            classes[l].push(x);
        }
        classes.retain(|c| !c.is_empty());
        classes
    })
}

fn refines(fine: &SRing, coarse: &SRing) -> bool {
    (0..fine.group().order())
        .all(|x| (0..x).all(|y| fine.class_of(x) != fine.class_of(y) || coarse.class_of(x) == coarse.class_of(y)))
}

fn refines_partition(a: &SRing, p: &[Vec<usize>]) -> bool {
    a.classes().iter().all(|x| p.iter().any(|c| x.elems().iter().all(|e| c.contains(e))))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn closure_is_the_coarsest_refinement(p in partition_strategy(12), which in 0usize..2) {
        let f: &[i64] = if which == 0 { &[12] } else { &[2, 6] };
        let g = group(f);
        let c = sring_closure(g.clone(), &p).unwrap();
        prop_assert!(SRing::validate(g.clone(), &c.class_lists()).is_ok());
        prop_assert!(refines_partition(&c, &p));
        prop_assert_eq!(&sring_closure(g.clone(), &c.class_lists()).unwrap(), &c);
        for a in enumerate_partitions(&g, Exec::Sequential).unwrap() {
            if refines_partition(&a, &p) {
                prop_assert!(refines(&a, &c));
            }
        }
    }

    #[test]
    fn closure_is_monotone(p in partition_strategy(8), q in partition_strategy(8)) {
        let g = group(&[4, 2]);
        let mut meet: Vec<Vec<usize>> = Vec::new();
        for a in &p {
            for b in &q {
                let both: Vec<usize> = a.iter().copied().filter(|x| b.contains(x)).collect();
                if !both.is_empty() {
                    meet.push(both);
                }
            }
        }
        let cm = sring_closure(g.clone(), &meet).unwrap();
        let cp = sring_closure(g.clone(), &p).unwrap();
        prop_assert!(refines(&cm, &cp));
    }
}
