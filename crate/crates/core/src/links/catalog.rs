//! Named diagrams and the JSON catalog format.
//!
//! ```json
//! {"links": [{"name": "hopf", "pd": [[1, 3, 2, 4, 1], ...],
//!             "components": [[1, 2], [3, 4]], "framings": [0, 0]}]}
//! ```
//!
//! Each `pd` entry is four arc labels followed by the crossing sign.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::builder::braid_closure;
use super::{ArcId, Crossing, FramedLinkDiagram, LinkError};

#[derive(Debug, Error)]
pub enum CatalogError {
    #[error("reading catalog: {0}")]
    Io(#[from] std::io::Error),
    #[error("parsing catalog: {0}")]
    Json(#[from] serde_json::Error),
    #[error("catalog entry {name}: {source}")]
    Link { name: String, source: LinkError },
    #[error("crossing entry in {name} has {len} fields (expected 5)")]
    CrossingArity { name: String, len: usize },
    #[error("duplicate catalog entry {0}")]
    Duplicate(String),
    #[error("unknown link {0}")]
    Unknown(String),
    #[error("bad framing suffix in {0}")]
    Suffix(String),
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CatalogEntry {
    pub name: String,
    pub pd: Vec<Vec<i64>>,
    pub components: Vec<Vec<ArcId>>,
    pub framings: Vec<i64>,
}

#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct CatalogFile {
    pub links: Vec<CatalogEntry>,
}

impl CatalogEntry {
    pub fn from_diagram(name: &str, l: &FramedLinkDiagram) -> Self {
        Self {
            name: name.to_string(),
            pd: l
                .crossings()
                .iter()
                .map(|x| {
                    let mut v: Vec<i64> = x.slots.iter().map(|&a| a as i64).collect();
                    v.push(x.sign as i64);
                    v
                })
                .collect(),
            components: l.components().to_vec(),
            framings: l.framings().to_vec(),
        }
    }

    pub fn to_diagram(&self) -> Result<FramedLinkDiagram, CatalogError> {
        let mut crossings = Vec::with_capacity(self.pd.len());
        for row in &self.pd {
            if row.len() != 5 {
                return Err(CatalogError::CrossingArity { name: self.name.clone(), len: row.len() });
            }
            let slots = [row[0], row[1], row[2], row[3]].map(|a| a.max(0) as ArcId);
            crossings.push(Crossing::new(slots, row[4].clamp(-128, 127) as i8));
        }
        FramedLinkDiagram::new(crossings, self.components.clone(), self.framings.clone())
            .map_err(|source| CatalogError::Link { name: self.name.clone(), source })
    }
}

/// A set of named diagrams.
#[derive(Clone, Debug, Default)]
pub struct Catalog {
    links: BTreeMap<String, FramedLinkDiagram>,
}

impl Catalog {
    /// The built-in diagrams.
    pub fn builtin() -> Self {
        let mut links = BTreeMap::new();
        for name in builtin_names() {
            links.insert(name.to_string(), builtin(name));
        }
        Self { links }
    }

    pub fn from_json(text: &str) -> Result<Self, CatalogError> {
        let file: CatalogFile = serde_json::from_str(text)?;
        let mut links = BTreeMap::new();
        for e in &file.links {
            if links.insert(e.name.clone(), e.to_diagram()?).is_some() {
                return Err(CatalogError::Duplicate(e.name.clone()));
            }
        }
        Ok(Self { links })
    }

    pub fn load(path: &Path) -> Result<Self, CatalogError> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }

    pub fn to_json(&self) -> String {
        let file = CatalogFile {
            links: self.links.iter().map(|(n, l)| CatalogEntry::from_diagram(n, l)).collect(),
        };
        serde_json::to_string_pretty(&file).expect("catalog serializes")
    }

    /// Adds or replaces an entry.
    pub fn insert(&mut self, name: &str, l: FramedLinkDiagram) {
        self.links.insert(name.to_string(), l);
    }

    pub fn is_empty(&self) -> bool {
        self.links.is_empty()
    }

    /// Entries of `other` replace entries of the same name.
    pub fn merge(&mut self, other: Catalog) {
        self.links.extend(other.links);
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.links.keys().map(String::as_str)
    }

    /// Looks up `name`. A trailing `+k` or `-k` (e.g. `trefoil-1`, `hopf+1`)
    /// sets every framing to `±k` when the full name is not itself an entry.
    pub fn get(&self, name: &str) -> Result<FramedLinkDiagram, CatalogError> {
        if let Some(l) = self.links.get(name) {
            return Ok(l.clone());
        }
        if let Some(pos) = name.rfind(['+', '-']) {
            let (base, suffix) = name.split_at(pos);
            if let Some(l) = self.links.get(base) {
                let f: i64 =
                    suffix.parse().map_err(|_| CatalogError::Suffix(name.to_string()))?;
                return Ok(l.with_uniform_framing(f));
            }
        }
        Err(CatalogError::Unknown(name.to_string()))
    }
}

const BUILTIN: &[&str] = &[
    "empty",
    "unknot",
    "unknot-kink",
    "unknot-kink-neg",
    "unlink2",
    "unlink3",
    "hopf",
    "hopf-neg",
    "trefoil",
    "trefoil-left",
    "trefoil-redundant",
    "trefoil-atlas",
    "figure-eight",
    "whitehead",
    "borromean",
    "borromean-plus-unknot",
];

pub fn builtin_names() -> impl Iterator<Item = &'static str> {
    BUILTIN.iter().copied()
}

/// Built-in diagram by name. Panics on unknown names.
pub fn builtin(name: &str) -> FramedLinkDiagram {
    match name {
        "empty" => FramedLinkDiagram::empty(),
        "unknot" => FramedLinkDiagram::unknot(0),
        "unknot-kink" => braid_closure(2, &[1]),
        "unknot-kink-neg" => braid_closure(2, &[-1]),
        "unlink2" => FramedLinkDiagram::unlink(2),
        "unlink3" => FramedLinkDiagram::unlink(3),
        "hopf" => braid_closure(2, &[1, 1]),
        "hopf-neg" => braid_closure(2, &[-1, -1]),
        "trefoil" => braid_closure(2, &[1, 1, 1]),
        "trefoil-left" => braid_closure(2, &[-1, -1, -1]),
        "trefoil-redundant" => braid_closure(3, &[1, 1, 1, 2]),
        "trefoil-atlas" => FramedLinkDiagram::from_unsigned(
            &[[1, 4, 2, 5], [3, 6, 4, 1], [5, 2, 6, 3]],
            vec![vec![1, 2, 3, 4, 5, 6]],
            vec![0],
        )
        .expect("atlas trefoil"),
        "figure-eight" => braid_closure(3, &[1, -2, 1, -2]),
        "whitehead" => braid_closure(3, &[1, 1, -2, 1, -2]),
        "borromean" => braid_closure(3, &[1, -2, 1, -2, 1, -2]),
        "borromean-plus-unknot" => {
            braid_closure(3, &[1, -2, 1, -2, 1, -2]).disjoint_union(&FramedLinkDiagram::unknot(0))
        }
        _ => panic!("unknown built-in link {name}"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtins_have_expected_shape() {
        let expect = [
            ("empty", 0, 0),
            ("unknot-kink", 1, 1),
            ("hopf", 2, 2),
            ("trefoil", 1, 3),
            ("trefoil-redundant", 1, 4),
            ("figure-eight", 1, 4),
            ("borromean", 3, 6),
            ("borromean-plus-unknot", 4, 6),
        ];
        for (name, mu, c) in expect {
            let l = builtin(name);
            assert_eq!((l.num_components(), l.num_crossings()), (mu, c), "{name}");
        }
    }

    #[test]
    fn json_round_trip() {
        let cat = Catalog::builtin();
        let text = cat.to_json();
        let back = Catalog::from_json(&text).unwrap();
        for n in cat.names() {
            assert_eq!(cat.get(n).unwrap(), back.get(n).unwrap());
        }
    }

    #[test]
    fn framing_suffix() {
        let cat = Catalog::builtin();
        assert_eq!(cat.get("trefoil-1").unwrap().framings(), &[-1]);
        assert_eq!(cat.get("borromean+1").unwrap().framings(), &[1, 1, 1]);
        assert_eq!(cat.get("trefoil-left").unwrap().writhe(), -3);
        assert!(matches!(cat.get("nope"), Err(CatalogError::Unknown(_))));
    }

    #[test]
    fn malformed_json_is_rejected() {
        let bad = r#"{"links":[{"name":"x","pd":[[1,2,3,4,1]],"components":[[1,2]],"framings":[0]}]}"#;
        assert!(matches!(Catalog::from_json(bad), Err(CatalogError::Link { .. })));
        let short = r#"{"links":[{"name":"x","pd":[[1,1,2,2]],"components":[[1,2]],"framings":[0]}]}"#;
        assert!(matches!(Catalog::from_json(short), Err(CatalogError::CrossingArity { .. })));
    }
}
