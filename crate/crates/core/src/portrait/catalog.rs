//! Labeled catalog of quadratic portraits and the Γ sets.
//!
//! The catalog ships as `catalog.json` next to this file. Setting
//! `QUADDYN_CATALOG` to a path makes [`Catalog::load`] read that file instead.

use std::collections::HashMap;
use std::fmt;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use super::{CycleStructure, Portrait};
use crate::arith::QuadElem;
use crate::error::{Error, Result};

const BUILTIN: &str = include_str!("catalog.json");

/// Environment variable naming an alternative catalog file.
pub const CATALOG_ENV: &str = "QUADDYN_CATALOG";

/// The portraits G(f, Q) can take for quadratic f over Q, assuming no rational
/// points of period above 3.
pub const TWELVE_GRAPHS: [&str; 12] = [
    "∅", "2(1)", "3(1,1)", "3(2)", "4(1,1)", "4(2)", "5(1,1)a", "6(1,1)", "6(2)", "6(3)",
    "8(2,1,1)", "8(3)",
];

pub const GAMMA_0: [&str; 7] = ["∅", "4(1,1)", "4(2)", "6(1,1)", "6(2)", "6(3)", "8(2,1,1)"];
pub const GAMMA_RAT: [&str; 5] = ["8(1,1)a", "8(2)a", "8(4)", "10(3,1,1)", "10(3,2)"];
pub const GAMMA_QUAD: [&str; 5] = ["8(1,1)b", "8(2)b", "8(3)", "10(2,1,1)a", "10(2,1,1)b"];

/// Minimal generic portraits outside Γ (with admissible cycle structures) that
/// do not have a cycle of length at least 5. The infinite family G_n is not
/// part of the catalog.
pub const OBSTRUCTIONS: [&str; 8] = [
    "10(1,1)a",
    "10(1,1)b",
    "10(2)",
    "10(3)a",
    "10(3)b",
    "10(4)",
    "12(2,1,1)a",
    "12(2,1,1)b",
];

/// Cycle structures allowed for portraits realized infinitely often over
/// quadratic fields, once 4-cycles next to 1- or 2-cycles are excluded.
pub const ADMISSIBLE_CYCLES: [&[u32]; 8] = [
    &[],
    &[1, 1],
    &[2],
    &[3],
    &[4],
    &[2, 1, 1],
    &[3, 1, 1],
    &[3, 2],
];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GammaClass {
    Gamma0,
    GammaRat,
    GammaQuad,
    Other,
}

impl GammaClass {
    pub fn in_gamma(self) -> bool {
        self != GammaClass::Other
    }

    /// Class implied by the label alone.
    pub fn of_label(label: &str) -> GammaClass {
        if GAMMA_0.contains(&label) {
            GammaClass::Gamma0
        } else if GAMMA_RAT.contains(&label) {
            GammaClass::GammaRat
        } else if GAMMA_QUAD.contains(&label) {
            GammaClass::GammaQuad
        } else {
            GammaClass::Other
        }
    }
}

impl fmt::Display for GammaClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GammaClass::Gamma0 => "Γ₀",
            GammaClass::GammaRat => "Γ_rat",
            GammaClass::GammaQuad => "Γ_quad",
            GammaClass::Other => "other",
        })
    }
}

/// How an entry's edge set is backed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    /// Recomputed as G(f_c, K) at the stored parameter.
    Realized,
    /// Taken from an explicit structural description.
    Structural,
    /// Neither realized nor pinned down structurally.
    UnverifiedByRealization,
}

#[derive(Serialize, Deserialize)]
struct Record {
    label: String,
    n: usize,
    succ: Vec<usize>,
    gamma: GammaClass,
    status: Status,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    realized_at: Option<QuadElem>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    letter: Option<String>,
}

#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub label: String,
    pub portrait: Portrait,
    pub gamma: GammaClass,
    pub status: Status,
    /// A parameter c with G(f_c, Q(c, √d)) isomorphic to the entry.
    pub realized_at: Option<QuadElem>,
    /// How the a/b letter was fixed, for lettered labels.
    pub letter: Option<String>,
}

/// Parsed label `N(l1,l2,...)` with an optional trailing letter.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Label {
    pub vertices: usize,
    pub cycles: CycleStructure,
    pub letter: Option<char>,
}

pub fn parse_label(label: &str) -> Result<Label> {
    if label == "∅" {
        return Ok(Label {
            vertices: 0,
            cycles: CycleStructure::default(),
            letter: None,
        });
    }
    let bad = || Error::Parse(format!("bad portrait label {label:?}"));
    let open = label.find('(').ok_or_else(bad)?;
    let close = label.rfind(')').ok_or_else(bad)?;
    let vertices: usize = label[..open].parse().map_err(|_| bad())?;
    let cycles: CycleStructure = label[open..=close].parse().map_err(|_| bad())?;
    let rest = &label[close + 1..];
    let letter = match rest.len() {
        0 => None,
        1 if rest.chars().all(|ch| ch.is_ascii_lowercase()) => rest.chars().next(),
        _ => return Err(bad()),
    };
    Ok(Label {
        vertices,
        cycles,
        letter,
    })
}

/// One failed invariant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Issue {
    pub label: String,
    pub message: String,
}

impl fmt::Display for Issue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.label, self.message)
    }
}

#[derive(Clone, Debug)]
pub struct Catalog {
    entries: Vec<CatalogEntry>,
    by_canon: HashMap<String, Vec<usize>>,
}

impl Catalog {
    pub fn from_json(text: &str) -> Result<Catalog> {
        let records: Vec<Record> =
            serde_json::from_str(text).map_err(|e| Error::Parse(format!("catalog: {e}")))?;
        let mut entries = Vec::with_capacity(records.len());
        for r in records {
            if r.n != r.succ.len() {
                return Err(Error::Parse(format!(
                    "catalog entry {}: n = {} but {} successors",
                    r.label,
                    r.n,
                    r.succ.len()
                )));
            }
            let portrait = Portrait::new(r.succ)?.with_label(Some(r.label.clone()));
            entries.push(CatalogEntry {
                label: r.label,
                portrait,
                gamma: r.gamma,
                status: r.status,
                realized_at: r.realized_at,
                letter: r.letter,
            });
        }
        let mut by_canon: HashMap<String, Vec<usize>> = HashMap::new();
        for (i, e) in entries.iter().enumerate() {
            by_canon
                .entry(e.portrait.canonical_form())
                .or_default()
                .push(i);
        }
        Ok(Catalog { entries, by_canon })
    }

    pub fn from_path(path: &std::path::Path) -> Result<Catalog> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Resource(format!("cannot read catalog {}: {e}", path.display())))?;
        Catalog::from_json(&text)
    }

    /// The compiled-in catalog.
    pub fn builtin() -> &'static Catalog {
        static CAT: OnceLock<Catalog> = OnceLock::new();
        CAT.get_or_init(|| Catalog::from_json(BUILTIN).expect("built-in catalog parses"))
    }

    /// The catalog named by `QUADDYN_CATALOG`, or the built-in one.
    pub fn load() -> Result<Catalog> {
        match std::env::var_os(CATALOG_ENV) {
            Some(p) => Catalog::from_path(std::path::Path::new(&p)),
            None => Ok(Catalog::builtin().clone()),
        }
    }

    pub fn to_json(&self) -> String {
        let recs: Vec<Record> = self
            .entries
            .iter()
            .map(|e| Record {
                label: e.label.clone(),
                n: e.portrait.n(),
                succ: e.portrait.succ().to_vec(),
                gamma: e.gamma,
                status: e.status,
                realized_at: e.realized_at.clone(),
                letter: e.letter.clone(),
            })
            .collect();
        serde_json::to_string_pretty(&recs).expect("catalog serializes")
    }

    pub fn entries(&self) -> &[CatalogEntry] {
        &self.entries
    }

    pub fn get(&self, label: &str) -> Option<&CatalogEntry> {
        self.entries.iter().find(|e| e.label == label)
    }

    /// Portrait for `label`, or a domain error if the label is unknown.
    pub fn portrait(&self, label: &str) -> Result<&Portrait> {
        self.get(label)
            .map(|e| &e.portrait)
            .ok_or_else(|| Error::Domain(format!("no catalog entry {label:?}")))
    }

    /// Label of the unique catalog entry isomorphic to `p`.
    pub fn classify(&self, p: &Portrait) -> Option<&str> {
        match self.by_canon.get(&p.canonical_form()) {
            Some(ix) if ix.len() == 1 => Some(self.entries[ix[0]].label.as_str()),
            _ => None,
        }
    }

    pub fn members(&self, class: GammaClass) -> Vec<&CatalogEntry> {
        self.entries.iter().filter(|e| e.gamma == class).collect()
    }

    /// All entries of Γ = Γ₀ ∪ Γ_rat ∪ Γ_quad.
    pub fn gamma(&self) -> Vec<&CatalogEntry> {
        self.entries.iter().filter(|e| e.gamma.in_gamma()).collect()
    }

    /// Label invariants, Γ tags, uniqueness up to isomorphism and presence of
    /// every named label. Realization sampling lives in the verification suite.
    pub fn validate(&self) -> Vec<Issue> {
        let mut out = Vec::new();
        let mut push = |label: &str, message: String| {
            out.push(Issue {
                label: label.to_string(),
                message,
            })
        };
        for e in &self.entries {
            let p = &e.portrait;
            match parse_label(&e.label) {
                Err(err) => push(&e.label, err.to_string()),
                Ok(l) => {
                    if l.vertices != p.n() {
                        push(
                            &e.label,
                            format!("label says {} vertices, portrait has {}", l.vertices, p.n()),
                        );
                    }
                    if l.cycles != p.cycle_structure() {
                        push(
                            &e.label,
                            format!(
                                "label says cycles {}, portrait has {}",
                                l.cycles,
                                p.cycle_structure()
                            ),
                        );
                    }
                }
            }
            if !p.is_quadratic() {
                push(&e.label, "portrait is not quadratic".into());
            }
            let want = GammaClass::of_label(&e.label);
            if e.gamma != want {
                push(
                    &e.label,
                    format!("tagged {} but the Γ sets put it in {}", e.gamma, want),
                );
            }
            if e.gamma.in_gamma() && !p.is_generic_quadratic() {
                push(&e.label, "Γ member is not generic quadratic".into());
            }
            if e.status == Status::Realized && e.realized_at.is_none() {
                push(&e.label, "marked realized without a parameter".into());
            }
        }
        for ix in self.by_canon.values().filter(|ix| ix.len() > 1) {
            let names: Vec<&str> = ix.iter().map(|&i| self.entries[i].label.as_str()).collect();
            push(names[0], format!("isomorphic entries {}", names.join(", ")));
        }
        let mut seen = HashMap::new();
        for e in &self.entries {
            if seen.insert(e.label.as_str(), ()).is_some() {
                push(&e.label, "duplicate label".into());
            }
        }
        for name in TWELVE_GRAPHS
            .iter()
            .chain(&GAMMA_0)
            .chain(&GAMMA_RAT)
            .chain(&GAMMA_QUAD)
            .chain(&OBSTRUCTIONS)
        {
            if self.get(name).is_none() {
                push(name, "missing from catalog".into());
            }
        }
        out
    }
}

/// Minimal generic portraits properly containing `p` whose new cycles have
/// length at most `max_cycle`, built directly: either one leaf gains two
/// preimages, or the generic closure of a new cycle is added alongside.
pub fn minimal_extensions(p: &Portrait, max_cycle: u32) -> Result<Vec<Portrait>> {
    if !p.is_generic_quadratic() {
        return crate::error::domain("minimal extensions need a generic quadratic portrait");
    }
    let mut seen = HashMap::new();
    let mut out = Vec::new();
    let mut keep = |q: Portrait| {
        if q.is_quadratic() && seen.insert(q.canonical_form(), ()).is_none() {
            out.push(q);
        }
    };
    let indeg = p.in_degrees();
    for leaf in (0..p.n()).filter(|&v| indeg[v] == 0) {
        let mut succ = p.succ().to_vec();
        succ.push(leaf);
        succ.push(leaf);
        keep(Portrait::new(succ)?);
    }
    let counts = p.cycle_structure();
    for len in 1..=max_cycle {
        let have = counts.lengths().iter().filter(|&&l| l == len).count() as u128;
        if have >= crate::dynatomic::cycle_bound_r(len)? {
            continue;
        }
        let extra = if len == 1 {
            // fixed points come in pairs in a generic portrait
            if have != 0 {
                continue;
            }
            Portrait::new(vec![0, 1, 0, 1])?
        } else {
            let cyc: Vec<usize> = (0..len as usize).map(|i| (i + 1) % len as usize).collect();
            Portrait::new(cyc)?.generic_closure()?
        };
        keep(p.disjoint_union(&extra));
    }
    Ok(out)
}
