//! Embedded catalog of packings for small 2-factor shapes.
//!
//! Entries with two packings have non-isomorphic unions and cover the small
//! shapes that neither split into independently packable parts nor belong to
//! an infinite family. Entries with a single packing cover the shapes whose
//! packing is unique. The data is baked into the library at compile time and
//! parsed once on first access.

use crate::graph::{TriplePacking, TwoFactorShape};
use once_cell::sync::Lazy;
use serde::Deserialize;

const CATALOG_JSON: &str = include_str!("../data/catalog.json");

#[derive(Debug, Clone)]
pub struct CatalogEntry {
    pub shape: TwoFactorShape,
    pub packings: Vec<TriplePacking>,
}

#[derive(Debug, Deserialize)]
struct RawPair {
    shape: TwoFactorShape,
    first: TriplePacking,
    second: TriplePacking,
}

#[derive(Debug, Deserialize)]
struct RawCatalog {
    pairs: Vec<RawPair>,
    unique: Vec<TriplePacking>,
}

static ENTRIES: Lazy<Vec<CatalogEntry>> = Lazy::new(|| {
    let raw: RawCatalog = serde_json::from_str(CATALOG_JSON).expect("embedded catalog parses");
    let mut entries: Vec<CatalogEntry> = raw
        .pairs
        .into_iter()
        .map(|p| CatalogEntry { shape: p.shape, packings: vec![p.first, p.second] })
        .collect();
    entries.extend(
        raw.unique
            .into_iter()
            .map(|p| CatalogEntry { shape: p.shape.clone(), packings: vec![p] }),
    );
    entries
});

/// The embedded entry for `shape`, if present.
pub fn catalog_lookup(shape: &TwoFactorShape) -> Option<&'static CatalogEntry> {
    ENTRIES.iter().find(|e| &e.shape == shape)
}

/// All entries holding a pair of packings with non-isomorphic unions.
pub fn pair_entries() -> impl Iterator<Item = &'static CatalogEntry> {
    ENTRIES.iter().filter(|e| e.packings.len() == 2)
}

/// All entries holding the unique packing of their shape.
pub fn unique_entries() -> impl Iterator<Item = &'static CatalogEntry> {
    ENTRIES.iter().filter(|e| e.packings.len() == 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canon::certify_distinct;
    use crate::graph::{union_graph, validate_packing};

    #[test]
    fn catalog_has_expected_shapes() {
        assert_eq!(pair_entries().count(), 46);
        assert_eq!(unique_entries().count(), 6);
        let shape = TwoFactorShape::new(vec![3, 6]).unwrap();
        assert_eq!(catalog_lookup(&shape).unwrap().packings.len(), 2);
        for lens in [vec![7], vec![8], vec![3, 4], vec![4, 4], vec![3, 5], vec![3, 3, 3]] {
            let shape = TwoFactorShape::new(lens).unwrap();
            let entry = catalog_lookup(&shape).expect("unique entry present");
            assert_eq!(entry.packings.len(), 1);
        }
        let absent = TwoFactorShape::new(vec![3, 12]).unwrap();
        assert!(catalog_lookup(&absent).is_none());
    }

    #[test]
    fn every_catalog_packing_validates() {
        for entry in ENTRIES.iter() {
            for p in &entry.packings {
                assert_eq!(p.shape, entry.shape);
                let report = validate_packing(p);
                assert!(report.is_ok(), "{:?}: {:?}", entry.shape, report.violations);
            }
        }
    }

    #[test]
    fn every_catalog_pair_is_distinct() {
        for entry in pair_entries() {
            let g1 = union_graph(&entry.packings[0]).unwrap();
            let g2 = union_graph(&entry.packings[1]).unwrap();
            let cert = certify_distinct(&g1, &g2).unwrap();
            assert!(cert.is_some(), "unions isomorphic for {:?}", entry.shape);
        }
    }

    #[test]
    fn catalog_round_trips_through_json() {
        for entry in ENTRIES.iter() {
            for p in &entry.packings {
                let back = TriplePacking::from_json(&p.to_json()).unwrap();
                assert_eq!(&back, p);
            }
        }
    }
}
