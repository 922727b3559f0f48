use crate::group::{generated_subgroup, AbelianGroup, Characters, CycloValue, Subgroup};
use crate::sring::SRing;
use std::collections::HashMap;

/// The dual S-ring, on the character group identified with `G` through the
/// standard pairing.
pub fn dual(a: &SRing) -> SRing {
    let g = a.group();
    let ch = Characters::new(g);
    let mut keys: HashMap<Vec<CycloValue>, u32> = HashMap::new();
    let labels: Vec<u32> = g
        .elements()
        .map(|y| {
            let key: Vec<CycloValue> = a.classes().iter().skip(1).map(|c| ch.value(g, y, c.members())).collect();
            let next = keys.len() as u32;
            *keys.entry(key).or_insert(next)
        })
        .collect();
    SRing::validate_labels(g.clone(), &labels).expect("dual partition is an S-ring")
}

/// `H^⊥ = {y : chi_y(h) = 1 for all h in H}`.
pub fn perp(g: &AbelianGroup, h: &Subgroup) -> Subgroup {
    let ch = Characters::new(g);
    let gens = h.generators();
    generated_subgroup(g, g.elements().filter(|&y| gens.iter().all(|&x| ch.pairing(g, x, y) == 0)))
}
