use super::{prime_factors, AbelianGroup, Subgroup};
use crate::bitset::ElemSet;
use crate::error::{Error, Result};
use std::sync::Arc;

const OUTSIDE: u32 = u32::MAX;

/// A section `U/L` of an ambient group, with the quotient presented as an
/// [`AbelianGroup`] and explicit projection and lift maps.
#[derive(Clone, Debug)]
pub struct Section {
    upper: Subgroup,
    lower: Subgroup,
    quotient: Arc<AbelianGroup>,
    basis: Vec<usize>,
    proj: Vec<u32>,
    lift: Vec<usize>,
}

impl Section {
    /// Section with a primary-decomposition basis chosen deterministically.
    pub fn new(g: &AbelianGroup, upper: &Subgroup, lower: &Subgroup) -> Result<Self> {
        if !lower.is_subgroup_of(upper) {
            return Err(Error::NotASubgroupOf);
        }
        let basis = primary_basis(g, upper, lower);
        Self::with_basis(g, upper, lower, &basis)
    }

    /// Section whose quotient generators are the cosets of `basis`, in order.
    pub fn with_basis(g: &AbelianGroup, upper: &Subgroup, lower: &Subgroup, basis: &[usize]) -> Result<Self> {
        if !lower.is_subgroup_of(upper) {
            return Err(Error::NotASubgroupOf);
        }
        if basis.iter().any(|&b| !upper.contains(b)) {
            return Err(Error::BadBasis);
        }
        let mut factors: Vec<i64> = basis.iter().map(|&b| order_mod(g, lower, b) as i64).collect();
        if factors.is_empty() {
            factors.push(1);
        }
        let quotient = AbelianGroup::with_bound(&factors, usize::MAX)?;
        if quotient.order() * lower.order() != upper.order() {
            return Err(Error::BadBasis);
        }
        let lower_elems = lower.members().to_vec();
        let mut proj = vec![OUTSIDE; g.order()];
        let mut lift = vec![0usize; quotient.order()];
        for q in quotient.elements() {
            let coords = quotient.coords(q);
            let rep = basis.iter().zip(&coords).fold(0, |acc, (&b, &c)| g.add(acc, g.mul(b, c as i64)));
            let mut min = usize::MAX;
            for &l in &lower_elems {
                let x = g.add(rep, l);
                if proj[x] != OUTSIDE {
                    return Err(Error::BadBasis);
                }
                proj[x] = q as u32;
                min = min.min(x);
            }
            lift[q] = min;
        }
        Ok(Section {
            upper: upper.clone(),
            lower: lower.clone(),
            quotient: Arc::new(quotient),
            basis: basis.to_vec(),
            proj,
            lift,
        })
    }

    pub fn upper(&self) -> &Subgroup {
        &self.upper
    }

    pub fn lower(&self) -> &Subgroup {
        &self.lower
    }

    pub fn quotient(&self) -> &Arc<AbelianGroup> {
        &self.quotient
    }

    pub fn basis(&self) -> &[usize] {
        &self.basis
    }

    /// Image of `x` in the quotient, `None` when `x` lies outside `U`.
    pub fn project(&self, x: usize) -> Option<usize> {
        match self.proj[x] {
            OUTSIDE => None,
            q => Some(q as usize),
        }
    }

    /// Minimal-index representative of the coset `q`.
    pub fn lift(&self, q: usize) -> usize {
        self.lift[q]
    }

    /// Full preimage of a set of quotient elements.
    pub fn preimage(&self, qs: &ElemSet) -> ElemSet {
        let mut out = ElemSet::new(self.proj.len());
        for (x, &q) in self.proj.iter().enumerate() {
            if q != OUTSIDE && qs.contains(q as usize) {
                out.insert(x);
            }
        }
        out
    }

    /// Image of a set contained in `U`; `None` if it leaves `U`.
    pub fn image(&self, xs: &ElemSet) -> Option<ElemSet> {
        let mut out = ElemSet::new(self.quotient.order());
        for x in xs.iter() {
            out.insert(self.project(x)?);
        }
        Some(out)
    }

    /// Image of a subgroup of `U` as a subgroup of the quotient.
    pub fn project_subgroup(&self, h: &Subgroup) -> Option<Subgroup> {
        let img = self.image(h.members())?;
        Subgroup::from_members(&self.quotient, &img)
    }
}

/// Smallest `k >= 1` with `k x` in `lower`.
fn order_mod(g: &AbelianGroup, lower: &Subgroup, x: usize) -> u64 {
    let mut k = 1;
    let mut y = x;
    while !lower.contains(y) {
        y = g.add(y, x);
        k += 1;
    }
    k
}

/// Basis of `upper/lower` as a direct sum of cyclic primary factors: primes
/// ascending, exponents descending within each prime.
fn primary_basis(g: &AbelianGroup, upper: &Subgroup, lower: &Subgroup) -> Vec<usize> {
    let qorder = (upper.order() / lower.order()) as u64;
    // Minimal representatives of the cosets.
    let mut reps = Vec::new();
    let mut covered = ElemSet::new(g.order());
    for x in upper.members().iter() {
        if covered.contains(x) {
            continue;
        }
        for l in lower.members().iter() {
            covered.insert(g.add(x, l));
        }
        reps.push(x);
    }
    let mut basis = Vec::new();
    for (p, _) in prime_factors(qorder) {
        let pcomp: Vec<usize> = reps
            .iter()
            .copied()
            .filter(|&x| {
                let mut o = order_mod(g, lower, x);
                while o.is_multiple_of(p) {
                    o /= p;
                }
                o == 1
            })
            .collect();
        let exps = primary_type(g, lower, &pcomp, p);
        let mut chosen = Vec::new();
        let search = BasisSearch { g, lower, elems: &pcomp, exps: &exps, p, target: pcomp.len() * lower.order() };
        let found = search.extend(lower.clone(), &mut chosen);
        debug_assert!(found);
        basis.extend(chosen);
    }
    basis
}

/// Exponents of the cyclic factors of a p-group given by its elements, descending.
fn primary_type(g: &AbelianGroup, lower: &Subgroup, elems: &[usize], p: u64) -> Vec<u32> {
    let orders: Vec<u64> = elems.iter().map(|&x| order_mod(g, lower, x)).collect();
    let mut exps = Vec::new();
    let mut prev = 1u64;
    let mut j = 1u32;
    loop {
        let pj = p.pow(j);
        let n = orders.iter().filter(|&&o| pj.is_multiple_of(o)).count() as u64;
        if n == prev {
            break;
        }
        // n / prev = p^(number of factors with exponent >= j)
        let mut r = 0;
        let mut t = n / prev;
        while t > 1 {
            t /= p;
            r += 1;
        }
        exps.push(r);
        prev = n;
        j += 1;
    }
    // exps[j-1] counts factors with exponent >= j; convert to a descending list.
    let mut out = Vec::new();
    for j in (1..=exps.len()).rev() {
        let ge = exps[j - 1];
        let gt = if j < exps.len() { exps[j] } else { 0 };
        for _ in 0..ge - gt {
            out.push(j as u32);
        }
    }
    out
}

struct BasisSearch<'a> {
    g: &'a AbelianGroup,
    lower: &'a Subgroup,
    elems: &'a [usize],
    exps: &'a [u32],
    p: u64,
    target: usize,
}

impl BasisSearch<'_> {
    fn extend(&self, span: Subgroup, chosen: &mut Vec<usize>) -> bool {
        if chosen.len() == self.exps.len() {
            return span.order() == self.target;
        }
        let want = self.p.pow(self.exps[chosen.len()]);
        for &x in self.elems {
            // <x> meets the span trivially iff its order does not drop modulo the span.
            if order_mod(self.g, &span, x) != want || order_mod(self.g, self.lower, x) != want {
                continue;
            }
            chosen.push(x);
            if self.extend(span.extend(self.g, x), chosen) {
                return true;
            }
            chosen.pop();
        }
        false
    }
}
