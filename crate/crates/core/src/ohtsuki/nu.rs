//! Tables of the constants `ν_{f,i,m}`.
//!
//! Two families are built in: `ν_{f,0,m} = -f δ_{m0}` and `ν_{f,1,0} = 2`.
//! Anything else must come from a user table; a lookup that finds nothing
//! fails with [`OhtsukiError::MissingNuEntry`].

use std::collections::BTreeMap;
use std::path::Path;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::OhtsukiError;
use crate::algebra::{format_rational, parse_rational, rat, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    BuiltIn,
    UserSupplied,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct NuTable {
    entries: BTreeMap<(i8, u32, u32), Rational>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct NuEntryJson {
    pub f: i64,
    pub i: u32,
    pub m: u32,
    pub value: String,
}

fn builtin(f: i8, i: u32, m: u32) -> Option<Rational> {
    match (i, m) {
        (0, 0) => Some(rat(-f as i64)),
        (0, _) => Some(Rational::zero()),
        (1, 0) => Some(rat(2)),
        _ => None,
    }
}

fn check_f(f: i64) -> Result<i8, OhtsukiError> {
    match f {
        1 => Ok(1),
        -1 => Ok(-1),
        _ => Err(OhtsukiError::NuTable(format!("framing {f} is not ±1"))),
    }
}

impl NuTable {
    /// Only the built-in entries.
    pub fn builtin() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, f: i8, i: u32, m: u32, value: Rational) -> Result<(), OhtsukiError> {
        check_f(f as i64)?;
        if builtin(f, i, m).is_some() {
            return Err(OhtsukiError::NuTable(format!(
                "entry (f={f}, i={i}, m={m}) is built in and cannot be overridden"
            )));
        }
        self.entries.insert((f, i, m), value);
        Ok(())
    }

    pub fn from_json(text: &str) -> Result<Self, OhtsukiError> {
        let rows: Vec<NuEntryJson> =
            serde_json::from_str(text).map_err(|e| OhtsukiError::NuTable(e.to_string()))?;
        let mut t = Self::default();
        for r in rows {
            let f = check_f(r.f)?;
            let v = parse_rational(&r.value)
                .ok_or_else(|| OhtsukiError::NuTable(format!("bad rational {:?}", r.value)))?;
            if t.entries.contains_key(&(f, r.i, r.m)) {
                return Err(OhtsukiError::NuTable(format!(
                    "duplicate entry (f={f}, i={}, m={})",
                    r.i, r.m
                )));
            }
            t.insert(f, r.i, r.m, v)?;
        }
        Ok(t)
    }

    pub fn load(path: &Path) -> Result<Self, OhtsukiError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| OhtsukiError::NuTable(format!("{}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    pub fn to_json(&self) -> String {
        let rows: Vec<NuEntryJson> = self
            .entries
            .iter()
            .map(|(&(f, i, m), v)| NuEntryJson { f: f as i64, i, m, value: format_rational(v) })
            .collect();
        serde_json::to_string_pretty(&rows).expect("table serializes")
    }

    pub fn lookup(&self, f: i8, i: u32, m: u32) -> Result<Rational, OhtsukiError> {
        self.lookup_with_provenance(f, i, m).map(|(v, _)| v)
    }

    pub fn lookup_with_provenance(
        &self,
        f: i8,
        i: u32,
        m: u32,
    ) -> Result<(Rational, Provenance), OhtsukiError> {
        if let Some(v) = builtin(f, i, m) {
            return Ok((v, Provenance::BuiltIn));
        }
        self.entries
            .get(&(f, i, m))
            .map(|v| (v.clone(), Provenance::UserSupplied))
            .ok_or(OhtsukiError::MissingNuEntry { f, i, m })
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

/// `ν^k` with `ν^0 = 1`.
pub(crate) fn pow(v: &Rational, k: u32) -> Rational {
    (0..k).fold(Rational::one(), |acc, _| acc * v)
}
