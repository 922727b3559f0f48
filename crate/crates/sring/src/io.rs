//! JSON encodings of partitions, catalogs and reports. Group elements are
//! written as residue strings and big integers as decimal strings.

use crate::enumerate::{Catalog, CatalogEntry};
use crate::error::{Error, Result};
use crate::group::AbelianGroup;
use crate::perm::{PermGroup, Permutation};
use crate::repro::ReproResult;
use crate::schurity::{Classification, Clause, SchurReport};
use crate::sring::SRing;
use num_bigint::BigUint;
use serde::{Deserialize, Serialize};
use std::sync::Arc;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartitionJson {
    pub group: String,
    pub classes: Vec<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalogLine {
    pub group: String,
    pub classes: Vec<Vec<String>>,
    pub rank: usize,
    pub schurian: bool,
    pub cyclotomic: bool,
    pub normal: bool,
    pub aut_order: String,
    pub primitive: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessJson {
    pub class: usize,
    pub orbit: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SchurReportJson {
    pub schurian: bool,
    pub aut_order: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<WitnessJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReproJson {
    pub instance: String,
    pub p: u64,
    pub group: String,
    pub rank: usize,
    pub classes: Vec<Vec<String>>,
    pub expected_match: bool,
    pub missing: Vec<Vec<String>>,
    pub unexpected: Vec<Vec<String>>,
    pub schurian: bool,
    pub aut_order: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<WitnessJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PermGroupJson {
    pub degree: usize,
    pub order: String,
    pub base: Vec<usize>,
    pub generators: Vec<Permutation>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ClassificationJson {
    pub clauses: Vec<Clause>,
    pub sections: Vec<SectionJson>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SectionJson {
    pub clause: Clause,
    pub upper: Vec<String>,
    pub lower: Vec<String>,
}

fn json_err(e: serde_json::Error) -> Error {
    Error::Json(e.to_string())
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string(value).expect("plain data serializes")
}

fn strings(g: &AbelianGroup, xs: &[usize]) -> Vec<String> {
    xs.iter().map(|&x| g.format_element(x)).collect()
}

fn class_strings(g: &AbelianGroup, classes: &[Vec<usize>]) -> Vec<Vec<String>> {
    classes.iter().map(|c| strings(g, c)).collect()
}

fn parse_classes(g: &AbelianGroup, classes: &[Vec<String>]) -> Result<Vec<Vec<usize>>> {
    classes.iter().map(|c| c.iter().map(|s| g.parse_element(s)).collect()).collect()
}

fn parse_big(s: &str) -> Result<BigUint> {
    s.parse().map_err(|_| Error::Json(format!("`{s}` is not a decimal integer")))
}

pub fn partition_json(a: &SRing) -> PartitionJson {
    let g = a.group();
    PartitionJson { group: g.literal(), classes: class_strings(g, &a.class_lists()) }
}

/// Parses a partition file into its group and element lists, without
/// checking the S-ring axioms.
pub fn parse_partition(text: &str, bound: usize) -> Result<(Arc<AbelianGroup>, Vec<Vec<usize>>)> {
    let pj: PartitionJson = serde_json::from_str(text).map_err(json_err)?;
    let g = Arc::new(AbelianGroup::parse(&pj.group, bound)?);
    let classes = parse_classes(&g, &pj.classes)?;
    Ok((g, classes))
}

pub fn read_sring(text: &str, bound: usize) -> Result<SRing> {
    let (g, classes) = parse_partition(text, bound)?;
    SRing::validate(g, &classes)
}

pub fn write_sring(a: &SRing) -> String {
    to_json(&partition_json(a))
}

pub fn catalog_line(e: &CatalogEntry) -> CatalogLine {
    let g = e.sring.group();
    CatalogLine {
        group: g.literal(),
        classes: class_strings(g, &e.sring.class_lists()),
        rank: e.rank(),
        schurian: e.schurian,
        cyclotomic: e.cyclotomic,
        normal: e.normal,
        aut_order: e.aut_order.to_string(),
        primitive: e.primitive,
    }
}

/// One JSON object per line, each terminated by a newline.
pub fn write_catalog(c: &Catalog) -> String {
    c.entries.iter().map(|e| to_json(&catalog_line(e)) + "\n").collect()
}

/// Reads a catalog back, revalidating every partition. Flags are taken
/// from the file as written.
pub fn read_catalog(text: &str, bound: usize) -> Result<Catalog> {
    let mut group: Option<Arc<AbelianGroup>> = None;
    let mut entries = Vec::new();
    for (i, line) in text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty()) {
        let wrap = |e: Error| Error::CatalogLine { line: i + 1, source: Box::new(e) };
        let cl: CatalogLine = serde_json::from_str(line).map_err(|e| wrap(json_err(e)))?;
        let g = match &group {
            Some(g) if g.literal() == cl.group => g.clone(),
            Some(_) => return Err(wrap(Error::MismatchedGroups)),
            None => {
                let g = Arc::new(AbelianGroup::parse(&cl.group, bound).map_err(wrap)?);
                group = Some(g.clone());
                g
            }
        };
        let classes = parse_classes(&g, &cl.classes).map_err(wrap)?;
        let sring = SRing::validate(g, &classes).map_err(wrap)?;
        if sring.rank() != cl.rank {
            return Err(wrap(Error::Json(format!("rank {} disagrees with the classes", cl.rank))));
        }
        entries.push(CatalogEntry {
            sring,
            schurian: cl.schurian,
            cyclotomic: cl.cyclotomic,
            normal: cl.normal,
            aut_order: parse_big(&cl.aut_order).map_err(wrap)?,
            primitive: cl.primitive,
        });
    }
    let group = group.ok_or_else(|| Error::Json("empty catalog".into()))?;
    Ok(Catalog { group, entries })
}

fn witness_json(a: &SRing, r: &SchurReport) -> Option<WitnessJson> {
    r.witness.as_ref().map(|w| WitnessJson { class: w.class, orbit: strings(a.group(), &w.orbit) })
}

pub fn schur_report_json(a: &SRing, r: &SchurReport) -> SchurReportJson {
    SchurReportJson { schurian: r.schurian, aut_order: r.aut_order.to_string(), witness: witness_json(a, r) }
}

pub fn repro_json(r: &ReproResult) -> ReproJson {
    let g = r.sring.group();
    ReproJson {
        instance: r.instance.name().to_string(),
        p: r.p,
        group: g.literal(),
        rank: r.sring.rank(),
        classes: class_strings(g, &r.sring.class_lists()),
        expected_match: r.comparison.matches(),
        missing: class_strings(g, &r.comparison.missing),
        unexpected: class_strings(g, &r.comparison.unexpected),
        schurian: r.report.schurian,
        aut_order: r.report.aut_order.to_string(),
        witness: witness_json(&r.sring, &r.report),
    }
}

pub fn perm_group_json(k: &PermGroup) -> PermGroupJson {
    PermGroupJson {
        degree: k.degree(),
        order: k.order().to_string(),
        base: k.base(),
        generators: k.generators().to_vec(),
    }
}

pub fn read_permutation(text: &str) -> Result<Permutation> {
    let images: Vec<u32> = serde_json::from_str(text).map_err(json_err)?;
    Permutation::new(images)
}

pub fn classification_json(g: &AbelianGroup, c: &Classification) -> ClassificationJson {
    ClassificationJson {
        clauses: c.clauses.clone(),
        sections: c
            .sections
            .iter()
            .map(|(clause, u, l)| SectionJson { clause: *clause, upper: strings(g, u), lower: strings(g, l) })
            .collect(),
    }
}
