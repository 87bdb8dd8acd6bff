use std::cell::RefCell;
use std::fmt;

use rustc_hash::FxHashMap;
use serde::Serialize;

use super::{effective_depth, fits, for_each_word, word_names, Elem, PartialGroup};

const MAX_PER_AXIOM: usize = 25;
/// Exhaustive prefix checks are skipped once |E|^n exceeds this.
const BRUTE_LIMIT: usize = 200_000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub axiom: String,
    pub word: Vec<String>,
    pub detail: String,
}

/// Outcome of a depth-bounded axiom check; empty `violations` means pass.
#[derive(Clone, Debug, Default, Serialize)]
pub struct AxiomReport {
    pub depth: usize,
    pub words_checked: usize,
    pub violations: Vec<Violation>,
}

impl AxiomReport {
    pub fn new(depth: usize) -> Self {
        AxiomReport { depth, ..Default::default() }
    }

    pub fn is_pass(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn push(&mut self, axiom: &str, word: Vec<String>, detail: impl Into<String>) {
        if self.violations.iter().filter(|v| v.axiom == axiom).count() < MAX_PER_AXIOM {
            self.violations.push(Violation { axiom: axiom.into(), word, detail: detail.into() });
        }
    }

    pub fn merge(&mut self, other: AxiomReport) {
        self.words_checked += other.words_checked;
        for v in other.violations {
            self.push(&v.axiom.clone(), v.word, v.detail);
        }
    }
}

impl fmt::Display for AxiomReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_pass() {
            return write!(f, "pass (depth {}, {} words checked)", self.depth, self.words_checked);
        }
        writeln!(f, "FAIL (depth {}, {} violations)", self.depth, self.violations.len())?;
        for v in &self.violations {
            writeln!(f, "  {} on ({}): {}", v.axiom, v.word.join(", "), v.detail)?;
        }
        Ok(())
    }
}

/// Caches ∇ and word membership for words of length ≤ `max_len`; charted
/// realizations answer directly.
struct Memo<'a> {
    pg: &'a dyn PartialGroup,
    max_len: usize,
    nabla: RefCell<FxHashMap<u128, Option<Elem>>>,
    word: RefCell<FxHashMap<u128, bool>>,
}

impl<'a> Memo<'a> {
    fn new(pg: &'a dyn PartialGroup, max_len: usize) -> Self {
        let cheap = pg.as_charted().is_some() || pg.size() >= 1 << 16;
        let max_len = if cheap { 0 } else { max_len.min(7) };
        Memo { pg, max_len, nabla: RefCell::default(), word: RefCell::default() }
    }

    fn key(&self, w: &[Elem]) -> Option<u128> {
        (w.len() <= self.max_len).then(|| w.iter().fold(w.len() as u128, |k, &e| k << 16 | e as u128))
    }

    fn nabla(&self, w: &[Elem]) -> Option<Elem> {
        let Some(k) = self.key(w) else { return self.pg.nabla(w) };
        if let Some(&v) = self.nabla.borrow().get(&k) {
            return v;
        }
        let v = self.pg.nabla(w);
        self.nabla.borrow_mut().insert(k, v);
        v
    }

    fn is_word(&self, w: &[Elem]) -> bool {
        let Some(k) = self.key(w) else { return self.pg.is_word(w) };
        if let Some(&v) = self.word.borrow().get(&k) {
            return v;
        }
        let v = self.pg.is_word(w);
        self.word.borrow_mut().insert(k, v);
        v
    }
}

fn contract_into(out: &mut Vec<Elem>, w: &[Elem], p: usize, q: usize, c: Elem) {
    out.clear();
    out.extend_from_slice(&w[..p]);
    out.push(c);
    out.extend_from_slice(&w[p + q..]);
}

/// Checks (P1)–(P6) on every word of length ≤ depth.
pub fn validate_axioms(pg: &dyn PartialGroup, depth: usize) -> AxiomReport {
    let depth = effective_depth(pg, depth);
    let mut rep = AxiomReport::new(depth);
    let n = pg.size();
    let one = pg.unit();
    let names = |w: &[Elem]| word_names(pg, w);
    let memo = Memo::new(pg, depth);
    let (mut buf, mut inv) = (Vec::with_capacity(2 * depth + 1), Vec::with_capacity(depth));

    if pg.inverse(one) != one {
        rep.push("P6", names(&[one]), "unit is not self-inverse");
    }
    for e in 0..n {
        if pg.inverse(pg.inverse(e)) != e {
            rep.push("P6", names(&[e]), "inverse is not involutive");
        }
        if pg.nabla(&[e]) != Some(e) {
            rep.push("P2", names(&[e]), "∇₁ is not the identity");
        }
    }

    for_each_word(pg, depth, |w| {
        rep.words_checked += 1;
        let len = w.len();
        let Some(val) = memo.nabla(w) else {
            rep.push("P2", names(w), "∇ undefined on a word");
            return true;
        };
        if len >= 2 && (!memo.is_word(&w[1..]) || !memo.is_word(&w[..len - 1])) {
            rep.push("P1", names(w), "a face of the word is not a word");
        }
        for q in 2..=len {
            for p in 0..=len - q {
                let Some(c) = memo.nabla(&w[p..p + q]) else {
                    rep.push("P1", names(w), format!("block {p}..{} is not a word", p + q));
                    continue;
                };
                if q == len {
                    continue;
                }
                contract_into(&mut buf, w, p, q, c);
                match memo.nabla(&buf) {
                    Some(x) if x == val => {}
                    Some(_) => rep.push("P2", names(w), format!("contracting block {p}..{} changes ∇", p + q)),
                    None => rep.push("P2", names(w), format!("contracting block {p}..{} leaves P", p + q)),
                }
            }
        }
        for j in 0..=len {
            if !fits(pg, len + 1) {
                break;
            }
            buf.clear();
            buf.extend_from_slice(&w[..j]);
            buf.push(one);
            buf.extend_from_slice(&w[j..]);
            if !pg.is_word(&buf) {
                rep.push("P3", names(w), format!("inserting 1 at {j} leaves P"));
            } else if len == 1 && pg.nabla(&buf) != Some(w[0]) {
                rep.push("P4", names(w), "∇ with the unit differs");
            }
        }
        if !fits(pg, 2 * len) {
            return true;
        }
        inv.clear();
        inv.extend(w.iter().rev().map(|&e| pg.inverse(e)));
        for (label, first) in [("w×w⁻¹", true), ("w⁻¹×w", false)] {
            buf.clear();
            let (a, b) = if first { (w, &inv[..]) } else { (&inv[..], w) };
            buf.extend_from_slice(a);
            buf.extend_from_slice(b);
            match pg.nabla(&buf) {
                None => rep.push("P5", names(w), format!("{label} is not a word")),
                Some(x) if x != one => rep.push("P6", names(w), format!("∇({label}) ≠ 1")),
                _ => {}
            }
        }
        true
    });

    // Prefix/suffix closure over all tuples when that is affordable; the
    // walk above only reaches words whose prefixes are words.
    let mut total = n;
    for len in 2..=depth {
        total = total.saturating_mul(n);
        if total > BRUTE_LIMIT {
            break;
        }
        let mut w = vec![0; len];
        loop {
            if pg.is_word(&w) && (!pg.is_word(&w[1..]) || !pg.is_word(&w[..len - 1])) {
                rep.push("P1", names(&w), "a face of the word is not a word");
            }
            let mut i = len;
            while i > 0 {
                i -= 1;
                w[i] += 1;
                if w[i] < n {
                    break;
                }
                w[i] = 0;
            }
            if w.iter().all(|&x| x == 0) {
                break;
            }
        }
    }
    rep
}
