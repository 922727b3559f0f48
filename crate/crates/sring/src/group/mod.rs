//! Finite abelian groups as products of cyclic factors.

mod aut;
mod cyclo;
mod section;
mod subgroup;

pub use aut::{aut_group, close_automorphisms, Automorphism};
pub use cyclo::{char_value, Characters, CycloValue};
pub use section::Section;
pub use subgroup::{generated_subgroup, subgroups, Subgroup};

use crate::error::{Error, Result};
use std::fmt;
use std::sync::{Arc, OnceLock};

pub const DEFAULT_MAX_ORDER: usize = 10_000;
const TABLE_LIMIT: usize = 256;

pub fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

pub fn prime_factors(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut k = 0;
            while n.is_multiple_of(p) {
                n /= p;
                k += 1;
            }
            out.push((p, k));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && prime_factors(n) == [(n, 1)]
}

/// Factor lists of all abelian groups of order `n` up to isomorphism, as
/// prime powers grouped by prime (ascending) with exponents descending.
pub fn abelian_group_types(n: u64) -> Vec<Vec<i64>> {
    fn partitions(k: u32, max: u32) -> Vec<Vec<u32>> {
        if k == 0 {
            return vec![Vec::new()];
        }
        (1..=k.min(max))
            .rev()
            .flat_map(|first| {
                partitions(k - first, first).into_iter().map(move |mut rest| {
                    rest.insert(0, first);
                    rest
                })
            })
            .collect()
    }
    if n == 1 {
        return vec![vec![1]];
    }
    prime_factors(n).into_iter().fold(vec![Vec::new()], |acc, (p, k)| {
        acc.iter()
            .flat_map(|prefix| {
                partitions(k, k).into_iter().map(move |part| {
                    let mut f = prefix.clone();
                    f.extend(part.iter().map(|&e| (p as i64).pow(e)));
                    f
                })
            })
            .collect()
    })
}

/// A finite abelian group `C_{n1} x ... x C_{nk}`.
///
/// Elements are indices `0..order` in mixed radix with the first factor
/// varying slowest; index 0 is the identity.
#[derive(Clone)]
pub struct AbelianGroup {
    factors: Vec<u32>,
    strides: Vec<usize>,
    order: usize,
    exponent: u64,
    neg: Vec<u32>,
    table: Option<Vec<u16>>,
    subgroups: OnceLock<Arc<Vec<Subgroup>>>,
    auts: OnceLock<Result<Arc<Vec<Automorphism>>>>,
}

impl PartialEq for AbelianGroup {
    fn eq(&self, other: &Self) -> bool {
        self.factors == other.factors
    }
}

impl Eq for AbelianGroup {}

impl fmt::Debug for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "AbelianGroup({})", self.literal())
    }
}

impl AbelianGroup {
    pub fn new(factors: &[i64]) -> Result<Self> {
        Self::with_bound(factors, DEFAULT_MAX_ORDER)
    }

    pub fn with_bound(factors: &[i64], bound: usize) -> Result<Self> {
        if factors.is_empty() {
            return Err(Error::BadFactor(0));
        }
        let mut order: u128 = 1;
        for &n in factors {
            if n < 1 {
                return Err(Error::BadFactor(n));
            }
            order = order.saturating_mul(n as u128);
            if order > bound as u128 {
                return Err(Error::OrderTooLarge { order, bound });
            }
        }
        let factors: Vec<u32> = factors.iter().map(|&n| n as u32).collect();
        let order = order as usize;
        let mut strides = vec![1usize; factors.len()];
        for i in (0..factors.len().saturating_sub(1)).rev() {
            strides[i] = strides[i + 1] * factors[i + 1] as usize;
        }
        let exponent = factors.iter().fold(1u64, |e, &n| lcm(e, n as u64));
        let mut g = AbelianGroup {
            factors,
            strides,
            order,
            exponent,
            neg: Vec::new(),
            table: None,
            subgroups: OnceLock::new(),
            auts: OnceLock::new(),
        };
        g.neg = (0..order).map(|x| g.neg_slow(x) as u32).collect();
        if order <= TABLE_LIMIT {
            let mut t = vec![0u16; order * order];
            for x in 0..order {
                for y in 0..order {
                    t[x * order + y] = g.add_slow(x, y) as u16;
                }
            }
            g.table = Some(t);
        }
        Ok(g)
    }

    /// Parses a literal such as `8x2x3`.
    pub fn parse(lit: &str, bound: usize) -> Result<Self> {
        let factors: std::result::Result<Vec<i64>, _> =
            lit.trim().split('x').map(|s| s.trim().parse::<i64>()).collect();
        match factors {
            Ok(f) if !f.is_empty() => Self::with_bound(&f, bound),
            _ => Err(Error::BadGroupLiteral(lit.to_string())),
        }
    }

    pub fn literal(&self) -> String {
        let parts: Vec<String> = self.factors.iter().map(|n| n.to_string()).collect();
        parts.join("x")
    }

    pub fn factors(&self) -> &[u32] {
        &self.factors
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn exponent(&self) -> u64 {
        self.exponent
    }

    pub fn rank(&self) -> usize {
        self.factors.len()
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order
    }

    pub fn is_cyclic(&self) -> bool {
        self.exponent as usize == self.order
    }

    pub fn coords(&self, x: usize) -> Vec<u32> {
        self.factors.iter().zip(&self.strides).map(|(&n, &s)| ((x / s) % n as usize) as u32).collect()
    }

    pub fn coord(&self, x: usize, i: usize) -> u32 {
        ((x / self.strides[i]) % self.factors[i] as usize) as u32
    }

    /// Index of the element with the given coordinates (reduced modulo the factors).
    pub fn index(&self, coords: &[i64]) -> Result<usize> {
        if coords.len() != self.factors.len() {
            return Err(Error::MismatchedGroups);
        }
        Ok(coords
            .iter()
            .zip(&self.factors)
            .zip(&self.strides)
            .map(|((&c, &n), &s)| c.rem_euclid(n as i64) as usize * s)
            .sum())
    }

    /// Generator of the `i`-th cyclic factor.
    pub fn generator(&self, i: usize) -> usize {
        if self.factors[i] == 1 {
            0
        } else {
            self.strides[i]
        }
    }

    pub fn generators(&self) -> Vec<usize> {
        (0..self.rank()).map(|i| self.generator(i)).collect()
    }

    pub fn parse_element(&self, lit: &str) -> Result<usize> {
        let bad = || Error::BadElementLiteral(lit.to_string());
        let coords: Vec<i64> =
            lit.split(',').map(|s| s.trim().parse::<i64>().map_err(|_| bad())).collect::<Result<_>>()?;
        if coords.len() != self.rank() {
            return Err(Error::MismatchedGroups);
        }
        for (&c, &n) in coords.iter().zip(&self.factors) {
            if c < 0 || c >= n as i64 {
                return Err(bad());
            }
        }
        self.index(&coords)
    }

    pub fn format_element(&self, x: usize) -> String {
        let parts: Vec<String> = self.coords(x).iter().map(|c| c.to_string()).collect();
        parts.join(",")
    }

    fn add_slow(&self, x: usize, y: usize) -> usize {
        let mut z = 0;
        for i in 0..self.rank() {
            let n = self.factors[i] as usize;
            z += ((x / self.strides[i] + y / self.strides[i]) % n) * self.strides[i];
        }
        z
    }

    fn neg_slow(&self, x: usize) -> usize {
        let mut z = 0;
        for i in 0..self.rank() {
            let n = self.factors[i] as usize;
            z += ((n - (x / self.strides[i]) % n) % n) * self.strides[i];
        }
        z
    }

    #[inline]
    pub fn add(&self, x: usize, y: usize) -> usize {
        match &self.table {
            Some(t) => t[x * self.order + y] as usize,
            None => self.add_slow(x, y),
        }
    }

    #[inline]
    pub fn neg(&self, x: usize) -> usize {
        self.neg[x] as usize
    }

    #[inline]
    pub fn sub(&self, x: usize, y: usize) -> usize {
        self.add(x, self.neg(y))
    }

    /// `m`-th multiple of `x` (the power `x^m` in multiplicative notation).
    pub fn mul(&self, x: usize, m: i64) -> usize {
        let mut z = 0;
        for i in 0..self.rank() {
            let n = self.factors[i] as i64;
            let c = (x / self.strides[i]) as i64 % n;
            z += ((c * m.rem_euclid(n)) % n) as usize * self.strides[i];
        }
        z
    }

    pub fn element_order(&self, x: usize) -> u64 {
        (0..self.rank()).fold(1, |acc, i| {
            let n = self.factors[i] as u64;
            lcm(acc, n / gcd(n, self.coord(x, i) as u64))
        })
    }

    /// All subgroups, computed once per group value.
    pub fn subgroup_list(&self) -> Arc<Vec<Subgroup>> {
        self.subgroups.get_or_init(|| Arc::new(subgroups(self))).clone()
    }

    /// All automorphisms, computed once per group value.
    pub fn automorphisms(&self) -> Result<Arc<Vec<Automorphism>>> {
        self.auts.get_or_init(|| aut_group(self).map(Arc::new)).clone()
    }

    /// Direct product with the factors of `other` appended.
    pub fn product(&self, other: &AbelianGroup) -> Result<AbelianGroup> {
        let f: Vec<i64> = self.factors.iter().chain(&other.factors).map(|&n| n as i64).collect();
        AbelianGroup::with_bound(&f, usize::MAX)
    }

    /// Index in `self x other` of the pair `(x, y)`.
    pub fn pair_index(&self, other: &AbelianGroup, x: usize, y: usize) -> usize {
        x * other.order + y
    }
}

pub type GroupRef = Arc<AbelianGroup>;

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn group_type_counts() {
        let counts: Vec<usize> = (1..=24).map(|n| abelian_group_types(n).len()).collect();
        assert_eq!(counts, [1, 1, 1, 2, 1, 1, 1, 3, 2, 1, 1, 2, 1, 1, 1, 5, 1, 2, 1, 2, 1, 1, 1, 3]);
        assert_eq!(abelian_group_types(12), vec![vec![4, 3], vec![2, 2, 3]]);
    }

    #[test]
    fn make_group_examples() {
        let g = AbelianGroup::new(&[4, 2, 2]).unwrap();
        assert_eq!((g.order(), g.exponent()), (16, 4));
        assert_eq!(AbelianGroup::new(&[8, 2, 3]).unwrap().order(), 48);
        assert_eq!(AbelianGroup::new(&[1]).unwrap().order(), 1);
        assert!(matches!(AbelianGroup::new(&[0]), Err(Error::BadFactor(0))));
        assert!(matches!(AbelianGroup::new(&[100, 101]), Err(Error::OrderTooLarge { .. })));
    }

    #[test]
    fn element_arith_examples() {
        let c4 = AbelianGroup::new(&[4]).unwrap();
        assert_eq!(c4.add(1, 3), 0);
        let g = AbelianGroup::new(&[8, 2, 3]).unwrap();
        assert_eq!(g.element_order(g.index(&[1, 1, 1]).unwrap()), 24);
        let c9 = AbelianGroup::new(&[9]).unwrap();
        assert_eq!(c9.neg(3), 6);
    }

    #[test]
    fn literals_round_trip() {
        let g = AbelianGroup::parse("8x2x3", DEFAULT_MAX_ORDER).unwrap();
        assert_eq!(g.literal(), "8x2x3");
        let x = g.parse_element("5,1,2").unwrap();
        assert_eq!(g.format_element(x), "5,1,2");
        assert!(g.parse_element("8,0,0").is_err());
        assert!(g.parse_element("1,0").is_err());
        assert!(AbelianGroup::parse("8xx2", DEFAULT_MAX_ORDER).is_err());
    }

    fn group_strategy() -> impl Strategy<Value = AbelianGroup> {
        prop::collection::vec(1i64..7, 1..4).prop_map(|f| AbelianGroup::new(&f).unwrap())
    }

    proptest! {
        #[test]
        fn inverse_and_powers(g in group_strategy(), xi in 0usize..1000, m in -20i64..20, m2 in -20i64..20) {
            let x = xi % g.order();
            prop_assert_eq!(g.add(x, g.neg(x)), 0);
            prop_assert_eq!(g.mul(g.mul(x, m), m2), g.mul(x, m * m2));
            prop_assert_eq!(g.mul(x, g.element_order(x) as i64), 0);
        }

        #[test]
        fn table_matches_coordinates(g in group_strategy(), a in 0usize..1000, b in 0usize..1000) {
            let (x, y) = (a % g.order(), b % g.order());
            let cx = g.coords(x);
            let cy = g.coords(y);
            let sum: Vec<i64> = cx.iter().zip(&cy).map(|(&u, &v)| (u + v) as i64).collect();
            prop_assert_eq!(g.add(x, y), g.index(&sum).unwrap());
        }
    }
}
