//! Structural invariants evaluated over every entry of a catalog.

use super::{Catalog, CatalogEntry};
use crate::autsearch::aut_sring;
use crate::bitset::ElemSet;
use crate::constructions::{
    components, dual, generalized_wreath_lifted, is_generalized_wreath, is_star, is_tensor_on, perp,
    tensor_decompositions,
};
use crate::exec::Exec;
use crate::group::{gcd, generated_subgroup, prime_factors, AbelianGroup, Automorphism, Characters, Section, Subgroup};
use crate::perm::transitivity_module;
use crate::schurity::{circulant_radical, class_stabilizer, classify_e4cn, is_cyclotomic, is_normal, is_schurian};
use crate::sring::{canonical_labels, is_a_set, set_radical, slice_orbit_check, SRing};
use std::collections::{BTreeMap, BTreeSet};

/// Families of invariants; each can be run on its own.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PropertyGroup {
    /// Structure constants, radicals, power maps and slice orbits.
    Multiplier,
    /// Schurity, cyclotomicity and normality implications, blocks of `Aut(A)`.
    Galois,
    Duality,
    /// Tensor, star and generalized wreath decompositions.
    Products,
    /// `G = H x C_p` with `p` coprime to `|H|`.
    CoprimeFactor,
    Circulant,
    /// `E4`, `E4 x C_n` and general primitivity.
    Special,
}

impl PropertyGroup {
    pub const ALL: [PropertyGroup; 7] = [
        PropertyGroup::Multiplier,
        PropertyGroup::Galois,
        PropertyGroup::Duality,
        PropertyGroup::Products,
        PropertyGroup::CoprimeFactor,
        PropertyGroup::Circulant,
        PropertyGroup::Special,
    ];
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PropertyFailure {
    pub property: &'static str,
    pub entry: usize,
    pub detail: String,
}

#[derive(Clone, Debug, Default)]
pub struct PropertyReport {
    /// Number of evaluated instances per property.
    pub checked: BTreeMap<&'static str, usize>,
    pub failures: Vec<PropertyFailure>,
}

impl PropertyReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn total_checks(&self) -> usize {
        self.checked.values().sum()
    }

    fn merge(&mut self, other: PropertyReport) {
        for (k, v) in other.checked {
            *self.checked.entry(k).or_default() += v;
        }
        self.failures.extend(other.failures);
    }
}

struct Rec {
    entry: usize,
    report: PropertyReport,
}

impl Rec {
    fn check(&mut self, property: &'static str, ok: bool, detail: impl FnOnce() -> String) {
        *self.report.checked.entry(property).or_default() += 1;
        if !ok {
            self.report.failures.push(PropertyFailure { property, entry: self.entry, detail: detail() });
        }
    }
}

/// Runs every invariant family on every entry.
pub fn run_property_suite(catalog: &Catalog) -> PropertyReport {
    run_properties(catalog, &PropertyGroup::ALL, Exec::default())
}

pub fn run_properties(catalog: &Catalog, groups: &[PropertyGroup], exec: Exec) -> PropertyReport {
    let items: Vec<(usize, &CatalogEntry)> = catalog.entries.iter().enumerate().collect();
    let parts = exec.map(items, |(i, e)| {
        let mut rec = Rec { entry: i, report: PropertyReport::default() };
        check_entry(e, groups, &mut rec);
        rec.report
    });
    let mut out = PropertyReport::default();
    parts.into_iter().for_each(|p| out.merge(p));
    out
}

fn check_entry(e: &CatalogEntry, groups: &[PropertyGroup], rec: &mut Rec) {
    let a = &e.sring;
    for group in groups {
        let outcome = match group {
            PropertyGroup::Multiplier => {
                multiplier(a, rec);
                Ok(())
            }
            PropertyGroup::Galois => galois(e, rec),
            PropertyGroup::Duality => duality(a, rec),
            PropertyGroup::Products => products(a, rec),
            PropertyGroup::CoprimeFactor => coprime_factor(a, rec),
            PropertyGroup::Circulant => circulant(e, rec),
            PropertyGroup::Special => special(e, rec),
        };
        if let Err(err) = outcome {
            rec.check("no_errors", false, || format!("{group:?}: {err}"));
        }
    }
}

fn units(n: u64) -> Vec<i64> {
    (1..=n.max(1)).filter(|&k| gcd(k, n) == 1).map(|k| k as i64).collect()
}

/// Subgroup of elements whose order only involves primes accepted by `keep`.
fn hall(g: &AbelianGroup, keep: impl Fn(u64) -> bool) -> Subgroup {
    generated_subgroup(g, g.elements().filter(|&x| prime_factors(g.element_order(x)).iter().all(|&(p, _)| keep(p))))
}

fn induced_sub(a: &SRing, u: &Subgroup) -> crate::Result<(Section, SRing)> {
    let s = Section::new(a.group(), u, &Subgroup::trivial(a.group()))?;
    let b = a.induced(&s)?;
    Ok((s, b))
}

fn multiplier(a: &SRing, rec: &mut Rec) {
    let g = a.group();
    let n = g.order();
    let subs = a.a_subgroups();
    let all_subs = g.subgroup_list();
    let primes: Vec<u64> = prime_factors(n as u64).iter().map(|&(p, _)| p).collect();
    let ms = units(g.exponent());
    let splits: Vec<(Subgroup, Subgroup)> = (1u32..1 << primes.len())
        .filter_map(|mask| {
            let inside = |p: u64| primes.iter().position(|&q| q == p).is_some_and(|i| mask >> i & 1 == 1);
            let d = hall(g, inside);
            let h = hall(g, |p| !inside(p));
            let cyclic = d.members().iter().any(|x| g.element_order(x) as usize == d.order());
            cyclic.then_some((h, d))
        })
        .collect();
    for x in a.classes() {
        let xi = x.id();
        let inv_ok = a.product(xi, x.inverse_class()).iter().any(|&(z, c)| z == 0 && c as usize == x.len());
        rec.check("identity_coefficient", inv_ok, || format!("class {xi}"));
        for y in a.classes() {
            let total: usize = a.product(xi, y.id()).iter().map(|&(z, c)| c as usize * a.class(z as usize).len()).sum();
            rec.check("constant_sum", total == x.len() * y.len(), || format!("classes {xi},{}", y.id()));
            if x.members().iter().all(|t| y.radical().contains(t)) {
                let c = a.structure_constant(xi, y.id(), y.id()) as usize;
                rec.check("radical_product", c == x.len(), || format!("classes {xi},{}", y.id()));
            }
        }
        rec.check("radical_is_a_subgroup", a.is_a_subgroup(x.radical()), || format!("class {xi}"));
        rec.check("span_is_a_subgroup", a.is_a_subgroup(x.span()), || format!("class {xi}"));
        for h in &subs {
            rec.check("coset_intersection_constant", a.lambda(xi, h).is_ok(), || format!("class {xi}"));
        }
        for h in all_subs.iter() {
            let mut outside = x.members().clone();
            outside.difference_with(h.members());
            let meet = x.members().intersection_count(h.members());
            if meet == 0 || outside.is_empty() || !h.is_subgroup_of(&set_radical(g, &outside)) {
                continue;
            }
            let expect = {
                let mut s = x.span().members().clone();
                s.difference_with(x.radical().members());
                s
            };
            let ok = x.radical().is_subgroup_of(h) && expect == *x.members();
            rec.check("separation", ok, || format!("class {xi}, subgroup {:?}", h.members()));
        }
        for &m in &ms {
            rec.check("power_map_class", a.power_map(xi, m).is_ok(), || format!("class {xi}, m = {m}"));
        }
        for &p in &primes {
            let ok = a.wielandt_p(xi, p).is_ok_and(|s| is_a_set(a, &s));
            rec.check("wielandt_set", ok, || format!("class {xi}, p = {p}"));
        }
        for (h, d) in &splits {
            rec.check("slice_orbits", slice_orbit_check(a, xi, h, d), || format!("class {xi}, |D| = {}", d.order()));
        }
    }
}

fn galois(e: &CatalogEntry, rec: &mut Rec) -> crate::Result<()> {
    let a = &e.sring;
    let g = a.group();
    let k = aut_sring(a)?;
    rec.check("aut_order_consistent", k.order() == e.aut_order, || format!("{} vs {}", k.order(), e.aut_order));
    let v = transitivity_module(&k, g.clone())?;
    rec.check("schurian_iff_module", e.schurian == (v.labels() == a.labels()), String::new);
    if e.schurian {
        rec.check("galois_idempotent", v.labels() == a.labels(), String::new);
    }
    if e.cyclotomic {
        rec.check("cyclotomic_implies_schurian", e.schurian, String::new);
    }
    if e.normal && e.schurian {
        rec.check("normal_schurian_implies_cyclotomic", e.cyclotomic, String::new);
    }
    for h in a.a_subgroups() {
        let hg = h.generators().to_vec();
        let blocks = k
            .generators()
            .iter()
            .all(|f| g.elements().all(|x| hg.iter().all(|&t| h.contains(g.sub(f.apply(g.add(x, t)), f.apply(x))))));
        rec.check("subgroup_cosets_are_blocks", blocks, || format!("subgroup {:?}", h.members()));
    }
    Ok(())
}

/// The transposed action of a group automorphism on character indices.
fn transpose(g: &AbelianGroup, chars: &Characters, s: &Automorphism) -> Vec<usize> {
    let gens = g.generators();
    let basis: Vec<usize> = (0..g.rank())
        .map(|j| {
            let y = g.generator(j);
            g.elements()
                .find(|&z| gens.iter().all(|&x| chars.pairing(g, x, z) == chars.pairing(g, s.apply(x), y)))
                .expect("transpose exists")
        })
        .collect();
    g.elements().map(|y| (0..g.rank()).fold(0, |acc, j| g.add(acc, g.mul(basis[j], g.coord(y, j) as i64)))).collect()
}

fn duality(a: &SRing, rec: &mut Rec) -> crate::Result<()> {
    let g = a.group();
    let d = dual(a);
    let dd = dual(&d);
    rec.check("dual_involution", dd.labels() == a.labels(), String::new);
    rec.check("dual_rank", d.rank() == a.rank(), || format!("{} vs {}", d.rank(), a.rank()));
    let subs = a.a_subgroups();
    let images: BTreeSet<Subgroup> = subs.iter().map(|h| perp(g, h)).collect();
    let dual_subs: BTreeSet<Subgroup> = d.a_subgroups().into_iter().collect();
    rec.check("dual_lattice", images == dual_subs, String::new);
    for h1 in &subs {
        for h2 in &subs {
            let rev = h1.is_subgroup_of(h2) == perp(g, h2).is_subgroup_of(&perp(g, h1));
            rec.check("dual_order_reversing", rev, String::new);
        }
    }
    let whole = Subgroup::whole(g);
    let decs = tensor_decompositions(a, &whole);
    for (g1, g2) in &decs {
        let ok = is_tensor_on(&d, &perp(g, g2), &perp(g, g1));
        rec.check("dual_tensor", ok, || format!("factors of order {} and {}", g1.order(), g2.order()));
    }
    rec.check("dual_tensor_count", decs.len() == tensor_decompositions(&d, &whole).len(), String::new);
    for u in &subs {
        for l in subs.iter().filter(|l| l.is_subgroup_of(u)) {
            let here = is_generalized_wreath(a, u, l)?.0;
            let there = is_generalized_wreath(&d, &perp(g, l), &perp(g, u))?.0;
            rec.check("dual_wreath", here == there, || format!("section {:?}/{:?}", u.members(), l.members()));
        }
    }
    let (cyc, k) = is_cyclotomic(a)?;
    rec.check("dual_cyclotomic", cyc == is_cyclotomic(&d)?.0, String::new);
    if cyc {
        let chars = Characters::new(g);
        let mut parent: Vec<usize> = g.elements().collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            p[x] = r;
            r
        }
        for s in &k {
            for (y, z) in transpose(g, &chars, s).into_iter().enumerate() {
                let (ry, rz) = (find(&mut parent, y), find(&mut parent, z));
                parent[ry.max(rz)] = ry.min(rz);
            }
        }
        let labels: Vec<u32> = (0..g.order()).map(|y| find(&mut parent, y) as u32).collect();
        let same = SRing::validate_labels(g.clone(), &labels).is_ok_and(|c| c.labels() == d.labels());
        rec.check("dual_cyclotomic_same_group", same, String::new);
    }
    Ok(())
}

fn products(a: &SRing, rec: &mut Rec) -> crate::Result<()> {
    let g = a.group();
    let whole = Subgroup::whole(g);
    let subs = a.a_subgroups();
    let report = is_schurian(a)?;
    let cyc = is_cyclotomic(a)?.0;
    for (g1, g2) in tensor_decompositions(a, &whole) {
        let (_, b1) = induced_sub(a, &g1)?;
        let (_, b2) = induced_sub(a, &g2)?;
        let (r1, r2) = (is_schurian(&b1)?, is_schurian(&b2)?);
        rec.check("tensor_schurian", report.schurian == (r1.schurian && r2.schurian), String::new);
        rec.check("tensor_aut_order", report.aut_order == &r1.aut_order * &r2.aut_order, String::new);
        if is_cyclotomic(&b1)?.0 && is_cyclotomic(&b2)?.0 {
            rec.check("tensor_cyclotomic", cyc, String::new);
        }
    }
    for (i, g1) in subs.iter().enumerate() {
        for g2 in &subs[i + 1..] {
            if g1.order() * g2.order() != g.order() || g1.members().intersection_count(g2.members()) != 1 {
                continue;
            }
            let comp = components(g, g1, g2).expect("direct sum");
            for x in a.classes() {
                for (side, pick) in [(0, true), (1, false)] {
                    let proj = ElemSet::from_elems(
                        g.order(),
                        x.elems().iter().map(|&y| if pick { comp[y].0 } else { comp[y].1 }),
                    );
                    let ok = *a.class(a.class_of(proj.first().unwrap())).members() == proj;
                    rec.check("projection_is_class", ok, || format!("class {} side {side}", x.id()));
                }
            }
            let c1: Vec<usize> = (0..a.rank()).filter(|&c| g1.contains(a.class(c).min())).collect();
            let c2: Vec<usize> = (0..a.rank()).filter(|&c| g2.contains(a.class(c).min())).collect();
            for &y in &c1 {
                for &z in &c2 {
                    let mut prod = ElemSet::new(g.order());
                    for &s in a.class(y).elems() {
                        for &t in a.class(z).elems() {
                            prod.insert(g.add(s, t));
                        }
                    }
                    rec.check("product_is_a_set", is_a_set(a, &prod), String::new);
                }
            }
            let ring1 = c1.len() == g1.order();
            let ring2 = c2.len() == g2.order();
            if ring1 || ring2 {
                rec.check("group_ring_factor_splits", is_tensor_on(a, g1, g2), String::new);
            }
        }
    }
    for l in &subs {
        for u in &subs {
            if l.is_trivial() || u.is_trivial() || l.order() == g.order() || u.order() == g.order() || l == u {
                continue;
            }
            if !is_star(a, l, u)? {
                continue;
            }
            let lu = l.intersection(g, u);
            if lu.is_trivial() {
                rec.check("star_trivial_meet_is_tensor", is_tensor_on(a, l, u), String::new);
            } else {
                rec.check("star_is_wreath", is_generalized_wreath(a, l, &lu)?.1, String::new);
            }
        }
    }
    for u in &subs {
        for l in subs.iter().filter(|l| l.is_subgroup_of(u)) {
            if !is_generalized_wreath(a, u, l)?.0 {
                continue;
            }
            let bottom: Vec<Vec<usize>> =
                a.classes().iter().filter(|c| u.contains(c.min())).map(|c| c.elems().to_vec()).collect();
            let ts = Section::new(g, &whole, l)?;
            let top: Vec<Vec<usize>> =
                a.induced(&ts)?.classes().iter().map(|c| ts.preimage(c.members()).to_vec()).collect();
            let rebuilt = generalized_wreath_lifted(g.clone(), u, l, &bottom, &top)?;
            rec.check("wreath_unique", rebuilt.labels() == a.labels(), String::new);
        }
    }
    Ok(())
}

fn coprime_factor(a: &SRing, rec: &mut Rec) -> crate::Result<()> {
    let g = a.group();
    let n = g.order() as u64;
    let subs = a.a_subgroups();
    for (p, k) in prime_factors(n) {
        if k != 1 {
            continue;
        }
        let h = hall(g, |q| q != p);
        let big_p = hall(g, |q| q == p);
        let h1 = subs.iter().filter(|s| s.is_subgroup_of(&h)).fold(Subgroup::trivial(g), |acc, s| acc.join(g, s));
        let p1 =
            subs.iter().filter(|s| big_p.is_subgroup_of(s)).fold(Subgroup::whole(g), |acc, s| acc.intersection(g, s));
        let w = h1.join(g, &p1);
        let (sec, aw) = induced_sub(a, &w)?;
        let star = {
            let l = sec.project_subgroup(&h1).expect("inside W");
            let u = sec.project_subgroup(&p1).expect("inside W");
            is_star(&aw, &l, &u)?
        };
        let hall_w = w.intersection(g, &h);
        if h1 != hall_w {
            rec.check("coprime_star_hall", star, || format!("p = {p}"));
        }
        let top = a.induced(&Section::new(g, &w, &h1)?)?;
        if top.group().order() as u64 == p && top.rank() as u64 == p {
            rec.check("coprime_star_group_ring_quotient", star, || format!("p = {p}"));
        }
        if p == 2 {
            rec.check("coprime_star_even", star, String::new);
        }
        if h1.order() < h.order() {
            let whole = Subgroup::whole(g);
            let s1 = w.order() == g.order() && p1.order() < g.order() && star;
            let s2 = is_generalized_wreath(a, &h1, &h1)?.0 && a.induced(&Section::new(g, &whole, &h1)?)?.rank() <= 2;
            let s3 = is_generalized_wreath(a, &w, &p1)?.1;
            rec.check("coprime_proper_maximal", s1 || s2 || s3, || format!("p = {p}"));
        }
    }
    Ok(())
}

fn circulant(e: &CatalogEntry, rec: &mut Rec) -> crate::Result<()> {
    let a = &e.sring;
    let g = a.group();
    if !g.is_cyclic() || g.order() == 1 {
        return Ok(());
    }
    let n = g.order() as u64;
    let rad = circulant_radical(a).expect("cyclic").order();
    let subs = a.a_subgroups();
    let nontrivial_wreath = subs
        .iter()
        .flat_map(|u| subs.iter().map(move |l| (u, l)))
        .filter(|(u, l)| l.is_subgroup_of(u))
        .any(|(u, l)| is_generalized_wreath(a, u, l).is_ok_and(|r| r.1));
    if e.normal {
        rec.check("circulant_normal_cyclotomic", e.cyclotomic, String::new);
    }
    rec.check("circulant_radical_wreath", (rad > 1) == nontrivial_wreath, || format!("|rad| = {rad}"));
    rec.check("circulant_trivial_radical_tensor", (rad == 1) == tensor_of_normal_and_trivial(a)?, || {
        format!("|rad| = {rad}")
    });
    let (cyc, k) = is_cyclotomic(a)?;
    if cyc {
        let gen = g.elements().find(|&x| g.element_order(x) == n).unwrap();
        let size = a.class(a.class_of(gen)).len();
        rec.check("circulant_stabilizer_size", k.len() == size, || format!("{} vs {size}", k.len()));
    }
    let pf = prime_factors(n);
    if pf.len() == 1 && pf[0].1 == 1 {
        rec.check("prime_order_cyclotomic", cyc, String::new);
    }
    if pf.len() == 2 && pf.iter().all(|&(_, k)| k == 1) && !a.is_trivial() {
        let plain = subs.iter().any(|l| is_generalized_wreath(a, l, l).is_ok_and(|r| r.1));
        rec.check("two_prime_cyclotomic_or_wreath", cyc || plain, String::new);
    }
    if pf.len() == 1 {
        let p = pf[0].0;
        if p % 2 == 1 && !a.is_trivial() && rad == 1 {
            let ok = cyc
                && (p as usize - 1).is_multiple_of(k.len())
                && a.classes().iter().skip(1).all(|c| c.len() == k.len());
            rec.check("prime_power_trivial_radical", ok, String::new);
        }
        if p % 2 == 1 && cyc && (rad == 1 || rad as u64 == p) {
            for u in &subs {
                for l in subs.iter().filter(|l| l.is_subgroup_of(u)) {
                    if u.order() as u64 == n && l.is_trivial() {
                        continue;
                    }
                    let b = a.induced(&Section::new(g, u, l)?)?;
                    let r = circulant_radical(&b).map_or(1, |r| r.order());
                    rec.check("prime_power_section_radical", r == 1, String::new);
                }
            }
        }
        for x in a.classes() {
            let order = g.element_order(x.min());
            if x.elems().iter().all(|&y| g.element_order(y) == order) {
                continue;
            }
            let found = subs.iter().any(|u| {
                subs.iter().filter(|l| l.is_subgroup_of(u) && l.order() < u.order()).any(|l| {
                    let mut diff = u.members().clone();
                    diff.difference_with(l.members());
                    diff == *x.members()
                        && is_generalized_wreath(a, l, l).is_ok_and(|r| r.0)
                        && is_generalized_wreath(a, u, u).is_ok_and(|r| r.0)
                })
            });
            rec.check("prime_power_nonregular_class", found, || format!("class {}", x.id()));
        }
    }
    if pf.len() == 2 && pf[0] == (2, 1) && !a.is_trivial() && rad == 1 && !e.normal {
        let l = hall(g, |q| q == 2);
        let u = hall(g, |q| q != 2);
        let ok = is_tensor_on(a, &l, &u)
            && subs.contains(&l)
            && a.classes().iter().filter(|c| u.contains(c.min())).count() == 2
            && a.classes().iter().filter(|c| l.contains(c.min())).count() == 2;
        rec.check("twice_prime_power_exception", ok, String::new);
    }
    Ok(())
}

/// Whether `A` is a tensor product of one normal cyclotomic S-ring with
/// trivial radical and trivial S-rings over Hall subgroups.
fn tensor_of_normal_and_trivial(a: &SRing) -> crate::Result<bool> {
    let g = a.group();
    let primes: Vec<u64> = prime_factors(g.order() as u64).iter().map(|&(p, _)| p).collect();
    let subs: BTreeSet<Subgroup> = a.a_subgroups().into_iter().collect();
    let halls: Vec<Subgroup> = (0u32..1 << primes.len())
        .map(|mask| hall(g, |p| primes.iter().position(|&q| q == p).is_some_and(|i| mask >> i & 1 == 1)))
        .collect();
    for (mask, g0) in halls.iter().enumerate() {
        let rest = &halls[(1 << primes.len()) - 1 - mask];
        if !subs.contains(g0) || !subs.contains(rest) || !is_tensor_on(a, g0, rest) {
            continue;
        }
        let (_, b0) = induced_sub(a, g0)?;
        let good0 = b0.group().order() == 1
            || (circulant_radical(&b0).is_some_and(|r| r.is_trivial()) && is_cyclotomic(&b0)?.0 && is_normal(&b0)?);
        if good0 && trivial_factors(a, rest, &subs) {
            return Ok(true);
        }
    }
    Ok(false)
}

fn trivial_factors(a: &SRing, w: &Subgroup, subs: &BTreeSet<Subgroup>) -> bool {
    let g = a.group();
    let inside = a.classes().iter().filter(|c| w.contains(c.min())).count();
    if inside <= 2 {
        return true;
    }
    let primes: Vec<u64> = prime_factors(w.order() as u64).iter().map(|&(p, _)| p).collect();
    (1u32..(1 << primes.len()) - 1).any(|mask| {
        let pick = |p: u64| primes.iter().position(|&q| q == p).is_some_and(|i| mask >> i & 1 == 1);
        let w1 = hall(g, pick).intersection(g, w);
        let w2 = hall(g, |p| !pick(p)).intersection(g, w);
        subs.contains(&w1)
            && subs.contains(&w2)
            && is_tensor_on(a, &w1, &w2)
            && trivial_factors(a, &w1, subs)
            && trivial_factors(a, &w2, subs)
    })
}

fn special(e: &CatalogEntry, rec: &mut Rec) -> crate::Result<()> {
    let a = &e.sring;
    let g = a.group();
    let n = g.order() as u64;
    let pf = prime_factors(n);
    let composite = pf.len() > 1 || pf.first().is_some_and(|&(_, k)| k > 1);
    let cyclic_sylow = pf.iter().any(|&(p, k)| {
        let pk = p.pow(k);
        g.elements().any(|x| g.element_order(x).is_multiple_of(pk))
    });
    if composite && cyclic_sylow && e.primitive {
        rec.check("primitive_is_trivial", a.rank() <= 2, String::new);
    }
    let h = hall(g, |p| p == 2);
    let m = n / 4;
    let shape = h.order() == 4 && g.elements().all(|x| !g.element_order(x).is_multiple_of(4)) && m % 2 == 1;
    if shape && m == 1 {
        let k = class_stabilizer(a)?;
        let small = k.iter().filter(|s| s.order() <= 3).any(|s| {
            canonical_labels(&crate::constructions::orbit_labels_of(g.order(), std::slice::from_ref(s))) == a.labels()
        });
        rec.check("klein_cyclotomic_small", small && e.normal, String::new);
    }
    let mpf = prime_factors(m);
    let odd_ok = m > 1 && (mpf.len() == 1 || (mpf.len() == 2 && mpf.iter().all(|&(_, k)| k == 1)));
    if shape && odd_ok {
        rec.check("klein_cyclic_schurian", e.schurian, String::new);
        if !a.is_trivial() {
            let c = classify_e4cn(a)?;
            rec.check("klein_cyclic_clauses", !c.clauses.is_empty(), String::new);
        }
        let d = hall(g, |p| p != 2);
        let subs = a.a_subgroups();
        let dense = subs.contains(&h) && subs.contains(&d);
        if mpf.len() == 1 {
            let p = mpf[0].0;
            let big_p = generated_subgroup(g, g.elements().filter(|&x| g.element_order(x) == p));
            let comp = components(g, &h, &d).expect("direct sum");
            for x in a.classes() {
                if x.members().iter().all(|y| d.contains(y)) {
                    continue;
                }
                let s1 = big_p.is_subgroup_of(x.radical());
                let wp = a.wielandt_p(x.id(), p)?;
                let hpart = generated_subgroup(g, wp.iter().map(|y| comp[y].0));
                let s2 = !hpart.is_trivial() && subs.contains(&hpart);
                let s3 = x.members().iter().any(|y| d.contains(y)) && {
                    let mut with_e = x.members().clone();
                    with_e.insert(0);
                    Subgroup::from_members(g, &with_e).is_some()
                };
                rec.check("klein_basic_set_structure", s1 || s2 || s3, || format!("class {}", x.id()));
            }
        }
        if dense {
            let comp = components(g, &h, &d).expect("direct sum");
            for x in a.classes() {
                let xs = x.members();
                if xs.iter().any(|y| h.contains(y) || d.contains(y)) {
                    continue;
                }
                let ph: BTreeSet<usize> = x.elems().iter().map(|&y| comp[y].0).collect();
                let pd: BTreeSet<usize> = x.elems().iter().map(|&y| comp[y].1).collect();
                if ph.len() * pd.len() != x.len() {
                    rec.check("dense_lambda_one", a.lambda(x.id(), &h)? == 1, || format!("class {}", x.id()));
                }
            }
        }
    }
    Ok(())
}
