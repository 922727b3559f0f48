use super::AbelianGroup;
use crate::bitset::ElemSet;
use std::collections::HashMap;

/// An element of `Z[zeta_N]` in coordinates of the power basis
/// `1, zeta, ..., zeta^(phi(N)-1)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CycloValue {
    coords: Vec<i64>,
}

impl CycloValue {
    pub fn coords(&self) -> &[i64] {
        &self.coords
    }

    pub fn is_integer(&self, n: i64) -> bool {
        self.coords.first().copied().unwrap_or(0) == n && self.coords.iter().skip(1).all(|&c| c == 0)
    }
}

/// Coefficients (constant term first) of the `n`-th cyclotomic polynomial.
fn cyclotomic_poly(n: u64, memo: &mut HashMap<u64, Vec<i64>>) -> Vec<i64> {
    if let Some(p) = memo.get(&n) {
        return p.clone();
    }
    // x^n - 1 divided by Phi_d for every proper divisor d.
    let mut num = vec![0i64; n as usize + 1];
    num[0] = -1;
    num[n as usize] = 1;
    for d in 1..n {
        if n.is_multiple_of(d) {
            let den = cyclotomic_poly(d, memo);
            num = divide_monic(&num, &den);
        }
    }
    memo.insert(n, num.clone());
    num
}

fn divide_monic(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let mut q = vec![0i64; rem.len() - dd];
    for i in (0..q.len()).rev() {
        let c = rem[i + dd];
        q[i] = c;
        if c != 0 {
            for (j, &dj) in den.iter().enumerate() {
                rem[i + j] -= c * dj;
            }
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0));
    q
}

/// Character table data of a group: the pairing and reduced powers of `zeta_N`.
#[derive(Clone, Debug)]
pub struct Characters {
    n: u64,
    weights: Vec<u64>,
    /// `powers[j]` holds the reduced coordinates of `zeta^j`.
    powers: Vec<Vec<i64>>,
}

impl Characters {
    pub fn new(g: &AbelianGroup) -> Self {
        let n = g.exponent();
        let phi = cyclotomic_poly(n, &mut HashMap::new());
        let deg = phi.len() - 1;
        let mut powers = Vec::with_capacity(n as usize);
        let mut cur = vec![0i64; deg];
        cur[0] = 1;
        for _ in 0..n {
            powers.push(cur.clone());
            // Multiply by zeta and reduce with the monic relation.
            let top = cur[deg - 1];
            let mut next = vec![0i64; deg];
            next[1..deg].copy_from_slice(&cur[..deg - 1]);
            for (j, c) in next.iter_mut().enumerate() {
                *c -= top * phi[j];
            }
            cur = next;
        }
        let weights = g.factors().iter().map(|&f| n / f as u64).collect();
        Characters { n, weights, powers }
    }

    pub fn modulus(&self) -> u64 {
        self.n
    }

    /// Exponent `k` with `chi_y(x) = zeta_N^k`.
    pub fn pairing(&self, g: &AbelianGroup, x: usize, y: usize) -> usize {
        let mut k = 0u64;
        for (i, &w) in self.weights.iter().enumerate() {
            k += w * g.coord(x, i) as u64 * g.coord(y, i) as u64;
        }
        (k % self.n) as usize
    }

    pub fn value(&self, g: &AbelianGroup, y: usize, xs: &ElemSet) -> CycloValue {
        let mut coords = vec![0i64; self.powers[0].len()];
        for x in xs.iter() {
            for (c, p) in coords.iter_mut().zip(&self.powers[self.pairing(g, x, y)]) {
                *c += p;
            }
        }
        CycloValue { coords }
    }
}

/// `chi_y(X)` in canonical coordinates.
pub fn char_value(g: &AbelianGroup, y: usize, xs: &ElemSet) -> CycloValue {
    Characters::new(g).value(g, y, xs)
}
