//! Portraits: finite functional graphs describing how `f_c` acts on its
//! preperiodic points.

mod canon;
pub mod catalog;
mod embed;
mod enumerate;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::dynatomic::cycle_bound_r;
use crate::error::{domain, Error, Result};

pub use catalog::{
    minimal_extensions, parse_label, Catalog, CatalogEntry, GammaClass, Label, Status,
};
pub use enumerate::{enumerate_generic, enumerate_generic_with_limit, DEFAULT_ENUMERATION_LIMIT};

/// Nonincreasing list of cycle lengths.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
pub struct CycleStructure(Vec<u32>);

impl CycleStructure {
    pub fn new(mut lengths: Vec<u32>) -> Result<Self> {
        if lengths.contains(&0) {
            return domain("cycle lengths must be positive");
        }
        lengths.sort_unstable_by(|a, b| b.cmp(a));
        Ok(CycleStructure(lengths))
    }

    pub fn lengths(&self) -> &[u32] {
        &self.0
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Parses a comma-separated list of structures such as `"(2),(1,1),()"`.
    pub fn parse_list(s: &str) -> Result<Vec<Self>> {
        let mut out = Vec::new();
        let mut rest = s.trim();
        while !rest.is_empty() {
            let open = rest
                .find('(')
                .ok_or_else(|| Error::Parse(format!("expected '(' in {s:?}")))?;
            let close = rest
                .find(')')
                .ok_or_else(|| Error::Parse(format!("expected ')' in {s:?}")))?;
            if close < open {
                return Err(Error::Parse(format!("unbalanced parentheses in {s:?}")));
            }
            out.push(rest[open..=close].parse()?);
            rest = rest[close + 1..].trim_start_matches([',', ' ']);
        }
        Ok(out)
    }
}

impl fmt::Display for CycleStructure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(u32::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl FromStr for CycleStructure {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let inner = t
            .strip_prefix('(')
            .and_then(|x| x.strip_suffix(')'))
            .ok_or_else(|| Error::Parse(format!("cycle structure must be parenthesised: {s:?}")))?;
        let mut v = Vec::new();
        for part in inner.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            v.push(
                part.parse::<u32>()
                    .map_err(|_| Error::Parse(format!("bad cycle length {part:?}")))?,
            );
        }
        Self::new(v)
    }
}

/// A functional graph on vertices `0..n`, with an optional catalog label.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "PortraitJson", into = "PortraitJson")]
pub struct Portrait {
    succ: Vec<usize>,
    label: Option<String>,
}

#[derive(Serialize, Deserialize)]
struct PortraitJson {
    n: usize,
    succ: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    label: Option<String>,
}

impl From<Portrait> for PortraitJson {
    fn from(p: Portrait) -> Self {
        PortraitJson {
            n: p.succ.len(),
            succ: p.succ,
            label: p.label,
        }
    }
}

impl TryFrom<PortraitJson> for Portrait {
    type Error = Error;
    fn try_from(j: PortraitJson) -> Result<Self> {
        if j.n != j.succ.len() {
            return Err(Error::Parse(format!(
                "n = {} but succ has {} entries",
                j.n,
                j.succ.len()
            )));
        }
        Ok(Portrait::new(j.succ)?.with_label(j.label))
    }
}

impl Portrait {
    pub fn new(succ: Vec<usize>) -> Result<Self> {
        let n = succ.len();
        if let Some(&bad) = succ.iter().find(|&&s| s >= n) {
            return domain(format!("successor {bad} out of range for {n} vertices"));
        }
        Ok(Portrait { succ, label: None })
    }

    pub fn empty() -> Self {
        Portrait {
            succ: Vec::new(),
            label: None,
        }
    }

    pub fn with_label(mut self, label: Option<String>) -> Self {
        self.label = label;
        self
    }

    pub fn n(&self) -> usize {
        self.succ.len()
    }

    pub fn succ(&self) -> &[usize] {
        &self.succ
    }

    pub fn label(&self) -> Option<&str> {
        self.label.as_deref()
    }

    pub fn in_degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.n()];
        for &s in &self.succ {
            deg[s] += 1;
        }
        deg
    }

    pub fn preimages(&self) -> Vec<Vec<usize>> {
        let mut pre = vec![Vec::new(); self.n()];
        for (v, &s) in self.succ.iter().enumerate() {
            pre[s].push(v);
        }
        pre
    }

    /// Cycles, each listed along the successor map from its least vertex;
    /// sorted by that vertex.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.n();
        let mut state = vec![0u8; n];
        let mut out = Vec::new();
        for start in 0..n {
            if state[start] != 0 {
                continue;
            }
            let mut path = Vec::new();
            let mut v = start;
            while state[v] == 0 {
                state[v] = 1;
                path.push(v);
                v = self.succ[v];
            }
            if state[v] == 1 {
                let pos = path.iter().position(|&u| u == v).unwrap();
                let mut cyc = path[pos..].to_vec();
                let m = cyc.iter().enumerate().min_by_key(|(_, &u)| u).unwrap().0;
                cyc.rotate_left(m);
                out.push(cyc);
            }
            for u in path {
                state[u] = 2;
            }
        }
        out.sort();
        out
    }

    pub fn periodic_mask(&self) -> Vec<bool> {
        let mut mask = vec![false; self.n()];
        for c in self.cycles() {
            for v in c {
                mask[v] = true;
            }
        }
        mask
    }

    pub fn cycle_structure(&self) -> CycleStructure {
        let lens = self.cycles().iter().map(|c| c.len() as u32).collect();
        CycleStructure::new(lens).expect("cycles are nonempty")
    }

    fn cycle_counts(&self) -> BTreeMap<u32, usize> {
        let mut m = BTreeMap::new();
        for l in self.cycle_structure().0 {
            *m.entry(l).or_insert(0) += 1;
        }
        m
    }

    /// In-degrees at most 2 and at most `R(n)` cycles of each length `n`.
    pub fn is_quadratic(&self) -> bool {
        if self.in_degrees().iter().any(|&d| d > 2) {
            return false;
        }
        self.cycle_counts()
            .into_iter()
            .all(|(len, count)| match cycle_bound_r(len) {
                Ok(r) => count as u128 <= r,
                Err(_) => true,
            })
    }

    pub fn fixed_point_count(&self) -> usize {
        self.succ
            .iter()
            .enumerate()
            .filter(|(v, &s)| *v == s)
            .count()
    }

    /// Quadratic, every in-degree 0 or 2, and 0 or 2 fixed points.
    pub fn is_generic_quadratic(&self) -> bool {
        self.is_quadratic()
            && self.in_degrees().iter().all(|&d| d == 0 || d == 2)
            && matches!(self.fixed_point_count(), 0 | 2)
    }

    /// Isomorphism invariant string determining the portrait up to
    /// relabelling.
    pub fn canonical_form(&self) -> String {
        canon::canonical_form(self)
    }

    pub fn is_isomorphic(&self, other: &Portrait) -> bool {
        self.n() == other.n() && self.canonical_form() == other.canonical_form()
    }

    /// Whether some injective successor-preserving map `q -> self` exists.
    pub fn contains_subportrait(&self, q: &Portrait) -> bool {
        embed::find_embedding(self, q).is_some()
    }

    /// Witness embedding `q -> self`, as the image of each vertex of `q`.
    pub fn embedding_of(&self, q: &Portrait) -> Option<Vec<usize>> {
        embed::find_embedding(self, q)
    }

    /// The smallest generic quadratic portrait containing `self`.
    pub fn generic_closure(&self) -> Result<Portrait> {
        if !self.is_quadratic() {
            return domain("generic closure of a non-quadratic portrait");
        }
        let mut succ = self.succ.clone();
        if self.fixed_point_count() == 1 {
            let v = succ.len();
            succ.push(v);
        }
        let mut deg = vec![0usize; succ.len()];
        for &s in &succ {
            deg[s] += 1;
        }
        for (v, &d) in deg.iter().enumerate() {
            if d == 1 {
                succ.push(v);
            }
        }
        Portrait::new(succ)
    }

    /// Applies `perm` (old vertex -> new vertex).
    pub fn relabel(&self, perm: &[usize]) -> Result<Portrait> {
        let n = self.n();
        let mut seen = vec![false; n];
        if perm.len() != n
            || perm
                .iter()
                .any(|&p| p >= n || std::mem::replace(&mut seen[p], true))
        {
            return domain("relabelling is not a permutation");
        }
        let mut succ = vec![0; n];
        for v in 0..n {
            succ[perm[v]] = perm[self.succ[v]];
        }
        Ok(Portrait {
            succ,
            label: self.label.clone(),
        })
    }

    pub fn disjoint_union(&self, other: &Portrait) -> Portrait {
        let off = self.n();
        let mut succ = self.succ.clone();
        succ.extend(other.succ.iter().map(|s| s + off));
        Portrait { succ, label: None }
    }
}

impl fmt::Display for Portrait {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let edges: Vec<String> = self
            .succ
            .iter()
            .enumerate()
            .map(|(v, s)| format!("{v}->{s}"))
            .collect();
        match &self.label {
            Some(l) => write!(f, "{l} [{}]", edges.join(", ")),
            None => write!(f, "[{}]", edges.join(", ")),
        }
    }
}

/// The four-vertex generic portrait with a 2-cycle (`4(2)`).
pub fn four_two_portrait() -> Portrait {
    // 1->2, 2->3, 3->2, 4->3 with vertices shifted to 0..4
    Portrait::new(vec![1, 2, 1, 2]).expect("valid")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn four_two_portrait_properties() {
        let p = four_two_portrait();
        assert_eq!(p.cycle_structure().to_string(), "(2)");
        assert!(p.is_quadratic());
        assert!(p.is_generic_quadratic());
        assert_eq!(Portrait::empty().cycle_structure().to_string(), "()");
    }

    #[test]
    fn quadratic_violations() {
        assert!(!Portrait::new(vec![0, 1, 2]).unwrap().is_quadratic());
        assert!(!Portrait::new(vec![0, 0, 0, 0]).unwrap().is_quadratic());
        assert!(!Portrait::new(vec![1, 0]).unwrap().is_generic_quadratic());
        assert!(!Portrait::new(vec![0, 0]).unwrap().is_generic_quadratic());
    }

    #[test]
    fn closure_examples() {
        let two_cycle = Portrait::new(vec![1, 0]).unwrap();
        assert!(two_cycle
            .generic_closure()
            .unwrap()
            .is_isomorphic(&four_two_portrait()));
        let fixed = Portrait::new(vec![0]).unwrap();
        let c = fixed.generic_closure().unwrap();
        assert_eq!(c.n(), 4);
        assert_eq!(c.cycle_structure().to_string(), "(1,1)");
        assert!(c.is_generic_quadratic());
        assert_eq!(
            Portrait::empty().generic_closure().unwrap(),
            Portrait::empty()
        );
        assert!(Portrait::new(vec![0, 0, 0, 0])
            .unwrap()
            .generic_closure()
            .is_err());
    }

    #[test]
    fn relabel_and_json() {
        let p = four_two_portrait().with_label(Some("4(2)".into()));
        let q = p.relabel(&[3, 1, 0, 2]).unwrap();
        assert!(p.is_isomorphic(&q));
        let s = serde_json::to_string(&p).unwrap();
        assert_eq!(s, r#"{"n":4,"succ":[1,2,1,2],"label":"4(2)"}"#);
        let back: Portrait = serde_json::from_str(&s).unwrap();
        assert_eq!(back, p);
        assert!(serde_json::from_str::<Portrait>(r#"{"n":2,"succ":[0,5]}"#).is_err());
    }

    #[test]
    fn parse_structures() {
        let v = CycleStructure::parse_list("(2),(1,1), ()").unwrap();
        assert_eq!(v.len(), 3);
        assert_eq!(v[1].lengths(), &[1, 1]);
        assert!(v[2].is_empty());
        assert_eq!(
            "(1,3,1)".parse::<CycleStructure>().unwrap().to_string(),
            "(3,1,1)"
        );
    }
}
