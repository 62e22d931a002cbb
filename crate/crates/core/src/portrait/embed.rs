use super::Portrait;

enum Step {
    Cycle(Vec<usize>),
    Tree(usize),
}

struct Search<'a> {
    p_succ: &'a [usize],
    p_pre: Vec<Vec<usize>>,
    p_cycle_len: Vec<usize>,
    q_succ: &'a [usize],
    steps: Vec<Step>,
    map: Vec<usize>,
    used: Vec<bool>,
}

const NONE: usize = usize::MAX;

impl Search<'_> {
    fn run(&mut self, k: usize) -> bool {
        if k == self.steps.len() {
            return true;
        }
        match &self.steps[k] {
            Step::Cycle(cyc) => {
                let cyc = cyc.clone();
                for start in 0..self.p_succ.len() {
                    if self.p_cycle_len[start] != cyc.len() || self.used[start] {
                        continue;
                    }
                    let mut images = Vec::with_capacity(cyc.len());
                    let mut x = start;
                    for _ in 0..cyc.len() {
                        images.push(x);
                        x = self.p_succ[x];
                    }
                    if images.iter().any(|&i| self.used[i]) {
                        continue;
                    }
                    for (&q, &i) in cyc.iter().zip(&images) {
                        self.map[q] = i;
                        self.used[i] = true;
                    }
                    if self.run(k + 1) {
                        return true;
                    }
                    for (&q, &i) in cyc.iter().zip(&images) {
                        self.map[q] = NONE;
                        self.used[i] = false;
                    }
                }
                false
            }
            Step::Tree(v) => {
                let v = *v;
                let target = self.map[self.q_succ[v]];
                let cands = self.p_pre[target].clone();
                for u in cands {
                    if self.used[u] {
                        continue;
                    }
                    self.map[v] = u;
                    self.used[u] = true;
                    if self.run(k + 1) {
                        return true;
                    }
                    self.map[v] = NONE;
                    self.used[u] = false;
                }
                false
            }
        }
    }
}

pub(super) fn find_embedding(p: &Portrait, q: &Portrait) -> Option<Vec<usize>> {
    if q.n() > p.n() {
        return None;
    }
    let mut p_cycle_len = vec![0; p.n()];
    for c in p.cycles() {
        for &v in &c {
            p_cycle_len[v] = c.len();
        }
    }
    // Cycles first (longest first, to fail early), then tree vertices
    // breadth-first away from the cycles so each successor is placed first.
    let mut q_cycles = q.cycles();
    q_cycles.sort_by_key(|c| std::cmp::Reverse(c.len()));
    let periodic = q.periodic_mask();
    let q_pre = q.preimages();
    let mut steps: Vec<Step> = Vec::new();
    let mut frontier: Vec<usize> = Vec::new();
    for c in q_cycles {
        frontier.extend(c.iter().copied());
        steps.push(Step::Cycle(c));
    }
    let mut i = 0;
    while i < frontier.len() {
        let v = frontier[i];
        for &u in &q_pre[v] {
            if !periodic[u] {
                steps.push(Step::Tree(u));
                frontier.push(u);
            }
        }
        i += 1;
    }
    let mut s = Search {
        p_succ: p.succ(),
        p_pre: p.preimages(),
        p_cycle_len,
        q_succ: q.succ(),
        steps,
        map: vec![NONE; q.n()],
        used: vec![false; p.n()],
    };
    s.run(0).then_some(s.map)
}
