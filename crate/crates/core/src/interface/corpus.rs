//! The packaged example documents.

use serde::Serialize;

use super::PatchworkDocument;

const ENTRIES: &[(&str, &str)] = &[
    ("d1-line", include_str!("../../data/d1-line.json")),
    ("d3-mcurve", include_str!("../../data/d3-mcurve.json")),
    ("harnack-sextic", include_str!("../../data/harnack-sextic.json")),
    ("d6-search-best", include_str!("../../data/d6-search-best.json")),
    ("pinwheel-nonregular", include_str!("../../data/pinwheel-nonregular.json")),
    ("d2-hyperboloid", include_str!("../../data/d2-hyperboloid.json")),
    ("bad-overlap", include_str!("../../data/bad-overlap.json")),
];

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CorpusEntry {
    pub id: &'static str,
    pub title: String,
    pub dim: usize,
    pub degree: i64,
}

/// Ids of the packaged documents, in a fixed order.
pub fn ids() -> impl Iterator<Item = &'static str> {
    ENTRIES.iter().map(|(id, _)| *id)
}

pub fn example(id: &str) -> Option<PatchworkDocument> {
    let (_, text) = ENTRIES.iter().find(|(k, _)| *k == id)?;
    Some(PatchworkDocument::parse(text).expect("packaged documents parse"))
}

pub fn examples() -> Vec<CorpusEntry> {
    ids()
        .map(|id| {
            let doc = example(id).expect("listed");
            let title = doc.metadata.get("title").and_then(|t| t.as_str()).unwrap_or(id).to_string();
            CorpusEntry { id, title, dim: doc.dim, degree: doc.degree }
        })
        .collect()
}
