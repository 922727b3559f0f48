use super::SRing;
use crate::bitset::ElemSet;
use crate::error::{Error, Result};
use crate::group::{gcd, Section, Subgroup};

/// Whether `xs` is a union of classes of `a`.
pub fn is_a_set(a: &SRing, xs: &ElemSet) -> bool {
    xs.iter().all(|x| a.class(a.class_of(x)).members().is_subset(xs))
}

/// Whether every nonempty slice `(X - h) ∩ D_l^*` is one orbit of the
/// group of power maps on `D` (acting trivially on `H`) that stabilize `X`.
/// Requires `G = H x D` with `D` cyclic of order coprime to `|H|`.
pub fn slice_orbit_check(a: &SRing, x: usize, h_sub: &Subgroup, d_sub: &Subgroup) -> bool {
    let g = a.group();
    let n = d_sub.order() as i64;
    let hord = h_sub.order() as i64;
    let hs: Vec<usize> = h_sub.members().to_vec();
    let ds: Vec<usize> = d_sub.members().to_vec();
    // sigma_m acting on D only: m coprime to n and m = 1 mod |H| (CRT multiplier on G).
    let phi = |m: i64, y: usize| -> usize {
        let mm = (0..n * hord).find(|&t| t.rem_euclid(n) == m.rem_euclid(n) && t.rem_euclid(hord) == 1 % hord).unwrap();
        g.mul(y, mm)
    };
    let class = a.class(x).members();
    let stab: Vec<i64> = (1..=n.max(1))
        .filter(|&m| gcd(m as u64, n as u64) == 1)
        .filter(|&m| class.iter().all(|y| class.contains(phi(m, y))))
        .collect();
    for &h in &hs {
        let mut slices: std::collections::BTreeMap<u64, Vec<usize>> = Default::default();
        for &d in &ds {
            if class.contains(g.add(h, d)) {
                slices.entry(g.element_order(d)).or_default().push(d);
            }
        }
        for slice in slices.values() {
            let orbit: ElemSet = ElemSet::from_elems(g.order(), stab.iter().map(|&m| phi(m, slice[0])));
            if orbit.count() != slice.len() || !slice.iter().all(|&d| orbit.contains(d)) {
                return false;
            }
        }
    }
    true
}

impl SRing {
    /// `A_{U/L}` over the quotient group of `section`.
    pub fn induced(&self, section: &Section) -> Result<SRing> {
        if !self.is_a_subgroup(section.upper()) || !self.is_a_subgroup(section.lower()) {
            return Err(Error::SectionNotASection);
        }
        let q = section.quotient();
        let mut labels = vec![u32::MAX; q.order()];
        for c in self.classes() {
            if !section.upper().contains(c.min()) {
                continue;
            }
            for &x in c.elems() {
                let px = section.project(x).expect("class inside U");
                labels[px] = labels[px].min(c.id() as u32);
            }
        }
        SRing::validate_labels(q.clone(), &labels)
    }

    /// `X^(m)`, which is again a class when `m` is coprime to `|G|`.
    pub fn power_map(&self, x: usize, m: i64) -> Result<ElemSet> {
        let g = self.group();
        if gcd(m.unsigned_abs(), g.order() as u64) != 1 {
            return Err(Error::NotCoprime { m });
        }
        let img = ElemSet::from_elems(g.order(), self.class(x).elems().iter().map(|&y| g.mul(y, m)));
        let target = self.class(self.class_of(img.first().unwrap()));
        if *target.members() != img {
            return Err(Error::Internal(format!("X^({m}) is not a basic set")));
        }
        Ok(img)
    }

    /// `X^[p] = {x^p : x in X, |X ∩ Hx| != 0 mod p}` with `H = {g : g^p = e}`.
    pub fn wielandt_p(&self, x: usize, p: u64) -> Result<ElemSet> {
        let g = self.group();
        if p < 2 || !(g.order() as u64).is_multiple_of(p) {
            return Err(Error::PrimeNotDivisor { p });
        }
        let h: Vec<usize> = g.elements().filter(|&y| g.mul(y, p as i64) == 0).collect();
        let class = self.class(x).members();
        let mut out = ElemSet::new(g.order());
        for y in class.iter() {
            let meet = h.iter().filter(|&&t| class.contains(g.add(y, t))).count() as u64;
            if !meet.is_multiple_of(p) {
                out.insert(g.mul(y, p as i64));
            }
        }
        if !is_a_set(self, &out) {
            return Err(Error::Internal(format!("X^[{p}] is not a union of basic sets")));
        }
        Ok(out)
    }

    /// The common value of `|X ∩ (H + x)|` over `x` in `X`.
    pub fn lambda(&self, x: usize, h: &Subgroup) -> Result<usize> {
        if !self.is_a_subgroup(h) {
            return Err(Error::HNotASubgroup);
        }
        let g = self.group();
        let class = self.class(x).members();
        let hs: Vec<usize> = h.members().to_vec();
        let mut value = None;
        for y in class.iter() {
            let meet = hs.iter().filter(|&&t| class.contains(g.add(y, t))).count();
            if *value.get_or_insert(meet) != meet {
                return Err(Error::Internal("|X ∩ Hx| depends on x".into()));
            }
        }
        Ok(value.unwrap())
    }
}

#[cfg(test)]
mod tests {
    use crate::group::{generated_subgroup, AbelianGroup, Subgroup};
    use crate::sring::SRing;
    use crate::Section;
    use std::sync::Arc;

    fn grp(f: &[i64]) -> Arc<AbelianGroup> {
        Arc::new(AbelianGroup::new(f).unwrap())
    }

    #[test]
    fn induced_examples() {
        let g = grp(&[2, 3]);
        let a = SRing::group_ring(g.clone());
        let whole = Section::with_basis(&g, &Subgroup::whole(&g), &Subgroup::trivial(&g), &g.generators()).unwrap();
        assert_eq!(a.induced(&whole).unwrap(), a);
        let triv = Section::new(&g, &Subgroup::trivial(&g), &Subgroup::trivial(&g)).unwrap();
        assert_eq!(a.induced(&triv).unwrap().rank(), 1);
        let t = SRing::trivial(g.clone());
        let c2 = generated_subgroup(&g, [3]);
        let s = Section::new(&g, &Subgroup::whole(&g), &c2).unwrap();
        assert!(t.induced(&s).is_err());
    }

    #[test]
    fn power_map_examples() {
        let w = SRing::validate(grp(&[4]), &[vec![0], vec![2], vec![1, 3]]).unwrap();
        let x = w.class_of(1);
        assert_eq!(w.power_map(x, 1).unwrap(), *w.class(x).members());
        assert_eq!(w.power_map(x, 3).unwrap(), *w.class(x).members());
        assert!(w.power_map(x, 2).is_err());
        let z = SRing::group_ring(grp(&[5]));
        assert_eq!(z.power_map(2, -1).unwrap().to_vec(), vec![3]);
    }

    #[test]
    fn wielandt_examples() {
        let z9 = SRing::group_ring(grp(&[9]));
        assert_eq!(z9.wielandt_p(1, 3).unwrap().to_vec(), vec![3]);
        // H = {g : 2g = 0} = {0, 2} lies in rad({1, 3}) and |H| is even.
        let w = SRing::validate(grp(&[4]), &[vec![0], vec![2], vec![1, 3]]).unwrap();
        assert!(w.wielandt_p(w.class_of(1), 2).unwrap().is_empty());
        assert!(z9.wielandt_p(1, 2).is_err());
    }

    #[test]
    fn lambda_examples() {
        let g = grp(&[2, 3]);
        let z = SRing::group_ring(g.clone());
        let h = generated_subgroup(&g, [3]);
        assert_eq!(z.lambda(3, &h).unwrap(), 1);
        let t = SRing::trivial(g.clone());
        assert!(t.lambda(1, &h).is_err());
    }
}
