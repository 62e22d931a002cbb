use super::Portrait;

// AHU code of the in-tree hanging below `v`, skipping cycle vertices.
fn tree_code(v: usize, pre: &[Vec<usize>], periodic: &[bool]) -> String {
    let mut kids: Vec<String> = pre[v]
        .iter()
        .filter(|&&u| !periodic[u])
        .map(|&u| tree_code(u, pre, periodic))
        .collect();
    kids.sort();
    let mut s = String::with_capacity(2 + kids.iter().map(String::len).sum::<usize>());
    s.push('(');
    for k in kids {
        s.push_str(&k);
    }
    s.push(')');
    s
}

pub(super) fn canonical_form(p: &Portrait) -> String {
    let pre = p.preimages();
    let periodic = p.periodic_mask();
    let mut comps: Vec<String> = p
        .cycles()
        .into_iter()
        .map(|cyc| {
            let codes: Vec<String> = cyc.iter().map(|&v| tree_code(v, &pre, &periodic)).collect();
            let best = (0..codes.len())
                .map(|r| {
                    let mut rot = codes.clone();
                    rot.rotate_left(r);
                    rot
                })
                .min()
                .expect("cycle is nonempty");
            format!("[{}]", best.join(","))
        })
        .collect();
    comps.sort();
    comps.join("")
}
