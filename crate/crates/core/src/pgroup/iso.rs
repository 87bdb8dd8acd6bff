use std::collections::{BTreeMap, HashMap};

use serde::Serialize;

use super::{effective_depth, for_each_word, word_counts, word_names, Elem, PartialGroup};

const NONE: u32 = u32::MAX;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", content = "map", rename_all = "snake_case")]
pub enum IsoOutcome {
    /// f[a] = image of element a.
    Isomorphic(Vec<Elem>),
    NotIsomorphic,
    Inconclusive,
}

/// Backtracking search for a bijection preserving unit, inverses, word
/// membership and ∇ on all words of length ≤ depth.
#[derive(Clone, Debug)]
pub struct IsoSearch {
    pub depth: usize,
    /// Maximum number of search nodes before giving up.
    pub budget: usize,
}

impl Default for IsoSearch {
    fn default() -> Self {
        IsoSearch { depth: super::default_depth(), budget: 200_000 }
    }
}

/// Length-2 data: pair[a*n+b] = ∇(a,b) or NONE.
struct Tables {
    n: usize,
    unit: Elem,
    inv: Vec<Elem>,
    pair: Vec<u32>,
}

impl Tables {
    fn new(pg: &dyn PartialGroup) -> Self {
        let n = pg.size();
        let mut pair = vec![NONE; n * n];
        for a in 0..n {
            for b in pg.extensions(&[a]) {
                if let Some(c) = pg.nabla(&[a, b]) {
                    pair[a * n + b] = c as u32;
                }
            }
        }
        Tables { n, unit: pg.unit(), inv: (0..n).map(|e| pg.inverse(e)).collect(), pair }
    }

    fn get(&self, a: Elem, b: Elem) -> Option<Elem> {
        let p = self.pair[a * self.n + b];
        (p != NONE).then_some(p as usize)
    }

    /// Power chain a, a², … while defined; returns (order if it returns to
    /// 1, chain length).
    fn power_profile(&self, a: Elem) -> (usize, usize) {
        let mut p = a;
        for k in 1..=self.n + 1 {
            if p == self.unit {
                return (k, k);
            }
            match self.get(p, a) {
                Some(q) => p = q,
                None => return (0, k),
            }
        }
        (0, self.n + 1)
    }

    fn base_invariant(&self, a: Elem, first3: usize) -> Vec<usize> {
        let n = self.n;
        let out = (0..n).filter(|&b| self.get(a, b).is_some()).count();
        let inn = (0..n).filter(|&b| self.get(b, a).is_some()).count();
        let comm = (0..n).filter(|&b| self.get(a, b).is_some() && self.get(a, b) == self.get(b, a)).count();
        let (ord, chain) = self.power_profile(a);
        vec![(a == self.unit) as usize, (self.inv[a] == a) as usize, ord, chain, out, inn, comm, first3]
    }
}

/// Joint colour refinement of both sides; colours are comparable across.
fn refine(ta: &Tables, tb: &Tables, init_a: Vec<Vec<usize>>, init_b: Vec<Vec<usize>>) -> (Vec<usize>, Vec<usize>) {
    let mut palette: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
    for k in init_a.iter().chain(init_b.iter()) {
        let len = palette.len();
        palette.entry(k.clone()).or_insert(len);
    }
    let mut ca: Vec<usize> = init_a.iter().map(|k| palette[k]).collect();
    let mut cb: Vec<usize> = init_b.iter().map(|k| palette[k]).collect();
    let mut count = palette.len();
    loop {
        let sig = |t: &Tables, c: &[usize], a: Elem| {
            let mut outs: Vec<(usize, usize)> = Vec::new();
            let mut ins: Vec<(usize, usize)> = Vec::new();
            for b in 0..t.n {
                if let Some(p) = t.get(a, b) {
                    outs.push((c[b], c[p]));
                }
                if let Some(p) = t.get(b, a) {
                    ins.push((c[b], c[p]));
                }
            }
            outs.sort_unstable();
            ins.sort_unstable();
            let mut k = vec![c[a], c[t.inv[a]], usize::MAX];
            k.extend(outs.into_iter().flat_map(|(x, y)| [x, y]));
            k.push(usize::MAX);
            k.extend(ins.into_iter().flat_map(|(x, y)| [x, y]));
            k
        };
        let ka: Vec<Vec<usize>> = (0..ta.n).map(|a| sig(ta, &ca, a)).collect();
        let kb: Vec<Vec<usize>> = (0..tb.n).map(|a| sig(tb, &cb, a)).collect();
        let mut pal: BTreeMap<&Vec<usize>, usize> = BTreeMap::new();
        for k in ka.iter().chain(kb.iter()) {
            let len = pal.len();
            pal.entry(k).or_insert(len);
        }
        ca = ka.iter().map(|k| pal[k]).collect();
        cb = kb.iter().map(|k| pal[k]).collect();
        if pal.len() == count {
            return (ca, cb);
        }
        count = pal.len();
    }
}

fn words_by_first(pg: &dyn PartialGroup, len: usize) -> Vec<usize> {
    let mut out = vec![0; pg.size()];
    for_each_word(pg, len, |w| {
        if w.len() == len {
            out[w[0]] += 1;
        }
        true
    });
    out
}

struct Searcher<'a> {
    a: &'a dyn PartialGroup,
    b: &'a dyn PartialGroup,
    ta: Tables,
    tb: Tables,
    ca: Vec<usize>,
    cb: Vec<usize>,
    depth: usize,
    nodes: usize,
    budget: usize,
    order: Vec<Elem>,
}

impl Searcher<'_> {
    /// Extends `f`/`g` (forward and backward) by a→b and everything forced
    /// by length-2 products and inverses. Returns false on contradiction.
    fn assign(&self, f: &mut [u32], g: &mut [u32], trail: &mut Vec<Elem>, x: Elem, y: Elem) -> bool {
        let mut queue = vec![(x, y)];
        while let Some((x, y)) = queue.pop() {
            if f[x] != NONE {
                if f[x] as usize != y {
                    return false;
                }
                continue;
            }
            if g[y] != NONE || self.ca[x] != self.cb[y] {
                return false;
            }
            f[x] = y as u32;
            g[y] = x as u32;
            trail.push(x);
            queue.push((self.ta.inv[x], self.tb.inv[y]));
            for &z in trail.iter() {
                let w = f[z] as usize;
                for (p, q, fp, fq) in [(x, z, y, w), (z, x, w, y)] {
                    match (self.ta.get(p, q), self.tb.get(fp, fq)) {
                        (None, None) => {}
                        (Some(r), Some(s)) => queue.push((r, s)),
                        _ => return false,
                    }
                }
            }
        }
        true
    }

    fn undo(f: &mut [u32], g: &mut [u32], trail: &mut Vec<Elem>, mark: usize) {
        while trail.len() > mark {
            let x = trail.pop().unwrap();
            g[f[x] as usize] = NONE;
            f[x] = NONE;
        }
    }

    fn leaf_ok(&self, f: &[u32]) -> bool {
        let mut ok = true;
        for_each_word(self.a, self.depth, |w| {
            if w.len() < 3 {
                return true;
            }
            let v: Vec<Elem> = w.iter().map(|&e| f[e] as usize).collect();
            let r = self.a.nabla(w).map(|e| f[e] as usize);
            ok = self.b.is_word(&v) && self.b.nabla(&v) == r;
            ok
        });
        ok
    }

    fn go(&mut self, f: &mut Vec<u32>, g: &mut Vec<u32>, trail: &mut Vec<Elem>) -> Option<bool> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return None;
        }
        let Some(&x) = self.order.iter().find(|&&x| f[x] == NONE) else {
            return Some(self.leaf_ok(f));
        };
        let cands: Vec<Elem> = (0..self.tb.n).filter(|&y| g[y] == NONE && self.cb[y] == self.ca[x]).collect();
        for y in cands {
            let mark = trail.len();
            if self.assign(f, g, trail, x, y) {
                match self.go(f, g, trail)? {
                    true => return Some(true),
                    false => {}
                }
            }
            Self::undo(f, g, trail, mark);
        }
        Some(false)
    }
}

impl IsoSearch {
    pub fn new(depth: usize) -> Self {
        IsoSearch { depth, ..Default::default() }
    }

    pub fn search(&self, a: &dyn PartialGroup, b: &dyn PartialGroup) -> IsoOutcome {
        let depth = effective_depth(a, effective_depth(b, self.depth));
        let n = a.size();
        if n != b.size() {
            return IsoOutcome::NotIsomorphic;
        }
        let (wa, wb) = (word_counts(a, depth), word_counts(b, depth));
        if wa != wb {
            return IsoOutcome::NotIsomorphic;
        }
        let ta = Tables::new(a);
        let tb = Tables::new(b);
        let (f3a, f3b) = if depth >= 3 { (words_by_first(a, 3), words_by_first(b, 3)) } else { (vec![0; n], vec![0; n]) };
        let ia: Vec<Vec<usize>> = (0..n).map(|e| ta.base_invariant(e, f3a[e])).collect();
        let ib: Vec<Vec<usize>> = (0..n).map(|e| tb.base_invariant(e, f3b[e])).collect();
        let (ca, cb) = refine(&ta, &tb, ia, ib);
        let hist = |c: &[usize]| {
            let mut h: HashMap<usize, usize> = HashMap::new();
            for &x in c {
                *h.entry(x).or_default() += 1;
            }
            h
        };
        let ha = hist(&ca);
        if ha != hist(&cb) {
            return IsoOutcome::NotIsomorphic;
        }
        // Rare colours first, then by index.
        let mut order: Vec<Elem> = (0..n).collect();
        order.sort_by_key(|&e| (ha[&ca[e]], ca[e], e));
        let mut s = Searcher { a, b, ta, tb, ca, cb, depth, nodes: 0, budget: self.budget, order };
        let mut f = vec![NONE; n];
        let mut g = vec![NONE; n];
        let mut trail = Vec::new();
        if !s.assign(&mut f, &mut g, &mut trail, a.unit(), b.unit()) {
            return IsoOutcome::NotIsomorphic;
        }
        match s.go(&mut f, &mut g, &mut trail) {
            Some(true) => IsoOutcome::Isomorphic(f.iter().map(|&y| y as usize).collect()),
            Some(false) => IsoOutcome::NotIsomorphic,
            None => IsoOutcome::Inconclusive,
        }
    }
}

/// Convenience wrapper with the default budget.
pub fn iso_search(a: &dyn PartialGroup, b: &dyn PartialGroup, depth: usize) -> Option<Vec<Elem>> {
    match IsoSearch::new(depth).search(a, b) {
        IsoOutcome::Isomorphic(f) => Some(f),
        _ => None,
    }
}

/// Result of checking a given element map.
#[derive(Clone, Debug, Default, Serialize)]
pub struct MapReport {
    pub depth: usize,
    pub words_checked: usize,
    pub bijective: bool,
    pub failures: Vec<String>,
}

impl MapReport {
    pub fn is_pass(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Whether `f` is a map of partial groups on words of length ≤ depth:
/// unit and inverses preserved, words sent to words, ∇ commutes with f.
pub fn check_map(a: &dyn PartialGroup, b: &dyn PartialGroup, f: &[Elem], depth: usize) -> MapReport {
    let depth = effective_depth(a, effective_depth(b, depth));
    let mut rep = MapReport { depth, ..Default::default() };
    if f.len() != a.size() || f.iter().any(|&y| y >= b.size()) {
        rep.failures.push("map has the wrong domain or codomain".into());
        return rep;
    }
    let mut hit = vec![false; b.size()];
    f.iter().for_each(|&y| hit[y] = true);
    rep.bijective = f.len() == b.size() && hit.iter().all(|&h| h);
    if f[a.unit()] != b.unit() {
        rep.failures.push("unit not preserved".into());
    }
    for e in 0..a.size() {
        if f[a.inverse(e)] != b.inverse(f[e]) {
            rep.failures.push(format!("inverse of {} not preserved", a.name(e)));
        }
    }
    for_each_word(a, depth, |w| {
        rep.words_checked += 1;
        let v: Vec<Elem> = w.iter().map(|&e| f[e]).collect();
        if !b.is_word(&v) {
            rep.failures.push(format!("({}) maps outside the words", word_names(a, w).join(", ")));
        } else if b.nabla(&v) != a.nabla(w).map(|e| f[e]) {
            rep.failures.push(format!("∇ does not commute on ({})", word_names(a, w).join(", ")));
        }
        rep.failures.len() < 20
    });
    rep
}

/// check_map plus bijectivity and reflection of words (equal word counts).
pub fn check_isomorphism(a: &dyn PartialGroup, b: &dyn PartialGroup, f: &[Elem], depth: usize) -> MapReport {
    let mut rep = check_map(a, b, f, depth);
    if !rep.bijective {
        rep.failures.push("not a bijection".into());
    } else if word_counts(a, rep.depth) != word_counts(b, rep.depth) {
        rep.failures.push("word counts differ".into());
    }
    rep
}
