use std::collections::BTreeMap;

use rayon::prelude::*;

use super::{CycleStructure, Portrait};
use crate::dynatomic::cycle_bound_r;
use crate::error::{Error, Result};

pub const DEFAULT_ENUMERATION_LIMIT: usize = 14;

// Full binary tree; `Node` children are kept in nondecreasing order.
#[derive(Clone)]
enum Tree {
    Leaf,
    Node(usize, usize, usize),
}

// trees[k] = all full binary trees with k internal nodes, as (k, index) refs.
fn tree_table(max_internal: usize) -> Vec<Vec<Tree>> {
    let mut t: Vec<Vec<Tree>> = vec![vec![Tree::Leaf]];
    for k in 1..=max_internal {
        let mut v = Vec::new();
        for a in 0..k {
            let b = k - 1 - a;
            if a > b {
                break;
            }
            for i in 0..t[a].len() {
                let j0 = if a == b { i } else { 0 };
                for j in j0..t[b].len() {
                    v.push(Tree::Node(a, i, (b << 32) | j));
                }
            }
        }
        t.push(v);
    }
    t
}

fn attach(table: &[Vec<Tree>], k: usize, idx: usize, parent: usize, succ: &mut Vec<usize>) {
    let me = succ.len();
    succ.push(parent);
    if let Tree::Node(a, i, packed) = table[k][idx] {
        let (b, j) = (packed >> 32, packed & 0xffff_ffff);
        attach(table, a, i, me, succ);
        attach(table, b, j, me, succ);
    }
}

fn structure_portraits(cs: &CycleStructure, max_vertices: usize) -> BTreeMap<String, Portrait> {
    let mut out = BTreeMap::new();
    let lens = cs.lengths();
    let cyc_vertices: usize = lens.iter().map(|&l| l as usize).sum();
    let fixed = lens.iter().filter(|&&l| l == 1).count();
    let counts_ok = {
        let mut m: BTreeMap<u32, u128> = BTreeMap::new();
        for &l in lens {
            *m.entry(l).or_insert(0) += 1;
        }
        m.into_iter()
            .all(|(l, c)| cycle_bound_r(l).map(|r| c <= r).unwrap_or(false))
    };
    if !counts_ok || !(fixed == 0 || fixed == 2) || 2 * cyc_vertices > max_vertices {
        return out;
    }
    let budget = (max_vertices - 2 * cyc_vertices) / 2;
    let table = tree_table(budget);
    let tails = cyc_vertices;
    let mut base = Vec::with_capacity(cyc_vertices);
    let mut off = 0;
    for &l in lens {
        let l = l as usize;
        for i in 0..l {
            base.push(off + (i + 1) % l);
        }
        off += l;
    }
    // Odometer over (internal count, tree index) for each tail.
    let mut choice: Vec<(usize, usize)> = vec![(0, 0); tails];
    loop {
        let mut succ = base.clone();
        for (v, &(k, idx)) in choice.iter().enumerate() {
            attach(&table, k, idx, v, &mut succ);
        }
        let p = Portrait::new(succ).expect("valid construction");
        out.entry(p.canonical_form()).or_insert(p);

        let mut pos = 0;
        loop {
            if pos == tails {
                return out;
            }
            let used: usize = choice.iter().map(|c| c.0).sum();
            let (k, idx) = choice[pos];
            if idx + 1 < table[k].len() {
                choice[pos].1 += 1;
                break;
            }
            if used < budget {
                choice[pos] = (k + 1, 0);
                break;
            }
            choice[pos] = (0, 0);
            pos += 1;
        }
    }
}

/// Every generic quadratic portrait with at most `max_vertices` vertices
/// whose cycle structure lies in `allowed`, up to isomorphism, sorted by
/// vertex count and canonical form. The empty portrait is produced exactly
/// when `()` is allowed.
pub fn enumerate_generic(max_vertices: usize, allowed: &[CycleStructure]) -> Result<Vec<Portrait>> {
    enumerate_generic_with_limit(max_vertices, allowed, DEFAULT_ENUMERATION_LIMIT)
}

pub fn enumerate_generic_with_limit(
    max_vertices: usize,
    allowed: &[CycleStructure],
    limit: usize,
) -> Result<Vec<Portrait>> {
    if max_vertices > limit {
        return Err(Error::Resource(format!(
            "enumeration up to {max_vertices} vertices exceeds the limit {limit}"
        )));
    }
    let mut structs = allowed.to_vec();
    structs.sort();
    structs.dedup();
    let merged: BTreeMap<String, Portrait> = structs
        .par_iter()
        .map(|cs| structure_portraits(cs, max_vertices))
        .reduce(BTreeMap::new, |mut a, b| {
            a.extend(b);
            a
        });
    let mut v: Vec<(usize, String, Portrait)> =
        merged.into_iter().map(|(k, p)| (p.n(), k, p)).collect();
    v.sort_by(|a, b| (a.0, &a.1).cmp(&(b.0, &b.1)));
    Ok(v.into_iter().map(|t| t.2).collect())
}
