//! Batch portrait scans over rational parameters and over curve points.

use std::collections::BTreeMap;
use std::time::Instant;

use num_integer::Integer;
use rayon::prelude::*;
use serde::Serialize;

use crate::arith::{QuadElem, QuadField, Rational};
use crate::curves::{candidate_points, QuadraticPointRecord};
use crate::error::{Error, Result};
use crate::orbit::{portrait_of_in, DEFAULT_DEPTH_MAX};
use crate::portrait::{Catalog, Portrait};

/// One scanned curve point.
#[derive(Clone, Debug, Serialize)]
pub struct CurveScanRecord {
    pub x: QuadElem,
    pub d: i64,
    pub c: QuadElem,
    pub c_rational: bool,
    pub collision: bool,
    pub label: Option<String>,
    pub canonical_form: String,
    pub vertices: usize,
    /// Whether the portrait over Q(√d) is strictly larger than over Q; absent
    /// when c is irrational.
    pub grows_over_k: Option<bool>,
    pub contains_model_portrait: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct ScanReport {
    /// `"rational"` or the model label.
    pub source: String,
    pub height: u64,
    pub n_max: u32,
    pub scanned: u64,
    /// Degenerate curve points (c-map poles, y = 0); never for rational scans.
    pub skipped: u64,
    pub tally: BTreeMap<String, u64>,
    /// Canonical forms of portraits with no catalog label, sorted.
    pub unclassified: Vec<String>,
    pub records: Vec<CurveScanRecord>,
    pub elapsed_ms: u128,
}

impl ScanReport {
    /// Tallied plus unclassified plus skipped equals scanned.
    pub fn is_consistent(&self) -> bool {
        let tallied: u64 = self.tally.values().sum();
        tallied + self.unclassified.len() as u64 + self.skipped == self.scanned
    }

    /// Every tallied label re-verified against the catalog from the records.
    pub fn recheck(&self, catalog: &Catalog) -> bool {
        self.records.iter().all(|r| match &r.label {
            Some(l) => catalog
                .portrait(l)
                .is_ok_and(|p| p.canonical_form() == r.canonical_form),
            None => true,
        })
    }
}

fn in_pool<T: Send>(jobs: usize, f: impl FnOnce() -> T + Send) -> Result<T> {
    if jobs == 0 {
        return Ok(f());
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| Error::Resource(format!("thread pool: {e}")))?;
    Ok(pool.install(f))
}

fn classify_into(
    catalog: &Catalog,
    p: &Portrait,
    tally: &mut BTreeMap<String, u64>,
    unclassified: &mut Vec<String>,
) -> Option<String> {
    match catalog.classify(p) {
        Some(l) => {
            *tally.entry(l.to_string()).or_default() += 1;
            Some(l.to_string())
        }
        None => {
            unclassified.push(p.canonical_form());
            None
        }
    }
}

/// Parameters `a/b` with `|a| ≤ h`, `1 ≤ b ≤ h`, `gcd(a, b) = 1`.
pub fn rational_parameters(h: u64) -> Vec<Rational> {
    let h = h as i64;
    let mut out = Vec::new();
    for b in 1..=h {
        for a in -h..=h {
            if a.gcd(&b) == 1 {
                out.push(Rational::new(a.into(), b.into()));
            }
        }
    }
    out.sort();
    out
}

/// Classifies `G(f_c, Q)` for every rational `c` of height at most `h`.
/// `jobs = 0` uses the global thread pool.
pub fn scan_rational(h: u64, n_max: u32, jobs: usize, catalog: &Catalog) -> Result<ScanReport> {
    if h == 0 {
        return Err(Error::Domain("height bound must be at least 1".into()));
    }
    let start = Instant::now();
    let params = rational_parameters(h);
    let portraits: Vec<Result<Portrait>> = in_pool(jobs, || {
        params
            .par_iter()
            .map(|c| {
                portrait_of_in(
                    &QuadElem::rational(c.clone()),
                    QuadField::rationals(),
                    n_max,
                    DEFAULT_DEPTH_MAX,
                )
                .map(|r| r.portrait)
            })
            .collect()
    })?;
    let mut tally = BTreeMap::new();
    let mut unclassified = Vec::new();
    for p in portraits {
        classify_into(catalog, &p?, &mut tally, &mut unclassified);
    }
    unclassified.sort();
    Ok(ScanReport {
        source: "rational".into(),
        height: h,
        n_max,
        scanned: params.len() as u64,
        skipped: 0,
        tally,
        unclassified,
        records: Vec::new(),
        elapsed_ms: start.elapsed().as_millis(),
    })
}

fn scan_point(rec: &QuadraticPointRecord, n_max: u32) -> Result<(Portrait, Option<bool>)> {
    let c = rec.c.as_ref().expect("non-degenerate point has c");
    let field = if c.is_rational() {
        QuadField::new(rec.d)?
    } else {
        c.field()
    };
    let over_k = portrait_of_in(c, field, n_max, DEFAULT_DEPTH_MAX)?.portrait;
    let grows = if c.is_rational() && field.d() != 1 {
        let over_q = portrait_of_in(c, QuadField::rationals(), n_max, DEFAULT_DEPTH_MAX)?.portrait;
        Some(over_q.n() < over_k.n())
    } else if c.is_rational() {
        Some(false)
    } else {
        None
    };
    Ok((over_k, grows))
}

/// Computes `G(f_c, Q(√d))` at every point [`candidate_points`] produces on
/// `label`'s model with height bound `h`.
pub fn scan_curve(
    label: &str,
    h: u64,
    n_max: u32,
    jobs: usize,
    catalog: &Catalog,
) -> Result<ScanReport> {
    let start = Instant::now();
    let target = catalog.portrait(label)?.clone();
    let points = candidate_points(label, h)?;
    let live: Vec<&QuadraticPointRecord> = points.iter().filter(|p| !p.degenerate).collect();
    let results: Vec<Result<(Portrait, Option<bool>)>> = in_pool(jobs, || {
        live.par_iter().map(|rec| scan_point(rec, n_max)).collect()
    })?;
    let mut tally = BTreeMap::new();
    let mut unclassified = Vec::new();
    let mut records = Vec::with_capacity(live.len());
    for (rec, res) in live.iter().zip(results) {
        let (portrait, grows) = res?;
        let c = rec.c.clone().expect("non-degenerate point has c");
        records.push(CurveScanRecord {
            x: rec.x.clone(),
            d: rec.d,
            c_rational: c.is_rational(),
            c,
            collision: rec.collision,
            label: classify_into(catalog, &portrait, &mut tally, &mut unclassified),
            canonical_form: portrait.canonical_form(),
            vertices: portrait.n(),
            grows_over_k: grows,
            contains_model_portrait: portrait.contains_subportrait(&target),
        });
    }
    unclassified.sort();
    Ok(ScanReport {
        source: label.into(),
        height: h,
        n_max,
        scanned: points.len() as u64,
        skipped: (points.len() - live.len()) as u64,
        tally,
        unclassified,
        records,
        elapsed_ms: start.elapsed().as_millis(),
    })
}
