use std::collections::HashMap;

use rustc_hash::{FxHashMap, FxHashSet};
use smallvec::SmallVec;

use super::{effective_depth, for_each_word, word_names, Elem, PartialGroup, PgError, PgRef};

/// A partition of the elements, closed under inversion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Congruence {
    class_of: Vec<usize>,
    classes: Vec<Vec<Elem>>,
}

fn find(parent: &mut [usize], x: usize) -> usize {
    let mut r = x;
    while parent[r] != r {
        r = parent[r];
    }
    let mut y = x;
    while parent[y] != r {
        let next = parent[y];
        parent[y] = r;
        y = next;
    }
    r
}

impl Congruence {
    /// Smallest equivalence containing the pairs and closed under (CR2).
    pub fn from_pairs(pg: &dyn PartialGroup, pairs: &[(Elem, Elem)]) -> Result<Self, PgError> {
        let n = pg.size();
        if let Some(&(a, b)) = pairs.iter().find(|&&(a, b)| a >= n || b >= n) {
            return Err(PgError::UnknownElement(a.max(b)));
        }
        let mut parent: Vec<usize> = (0..n).collect();
        let union = |a: usize, b: usize, parent: &mut Vec<usize>| {
            let (ra, rb) = (find(parent, a), find(parent, b));
            if ra != rb {
                parent[ra.max(rb)] = ra.min(rb);
            }
        };
        for &(a, b) in pairs {
            union(a, b, &mut parent);
            union(pg.inverse(a), pg.inverse(b), &mut parent);
        }
        Ok(Self::from_labels(&(0..n).map(|e| find(&mut parent, e)).collect::<Vec<_>>()))
    }

    /// Partition by equal labels; classes ordered by least member.
    pub fn from_labels<T: Eq + std::hash::Hash + Clone>(labels: &[T]) -> Self {
        let mut index: HashMap<T, usize> = HashMap::new();
        let mut classes: Vec<Vec<Elem>> = Vec::new();
        let mut class_of = Vec::with_capacity(labels.len());
        for (e, l) in labels.iter().enumerate() {
            let c = *index.entry(l.clone()).or_insert_with(|| {
                classes.push(Vec::new());
                classes.len() - 1
            });
            classes[c].push(e);
            class_of.push(c);
        }
        Congruence { class_of, classes }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_labels(&(0..n).collect::<Vec<_>>())
    }

    pub fn class_of(&self, e: Elem) -> usize {
        self.class_of[e]
    }

    pub fn classes(&self) -> &[Vec<Elem>] {
        &self.classes
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }
}

/// P/∼: a class word is a word when some choice of representatives is.
pub struct Quotient {
    base: PgRef,
    cong: Congruence,
    inverse: Vec<usize>,
    /// Every class word of length 2..=table_len.
    table: FxHashMap<u128, ClassWord>,
    table_len: usize,
    /// Base words of length 2..=base_len.
    base_words: ShortWords,
    base_len: usize,
    /// Base words of length base_len, grouped by class word.
    reps: Vec<u64>,
}

#[derive(Clone, Copy)]
struct ClassWord {
    product: u32,
    /// reps[start..start + count] when the length is base_len.
    start: u32,
    count: u32,
}

type Buf = SmallVec<[Elem; 16]>;

const DENSE_BITS: u64 = 1 << 28;

/// A set of short words coded in base |P| + 1: a bit set when the code
/// space is small, hashed otherwise.
enum ShortWords {
    Dense { radix: u64, bits: Vec<u64> },
    Hashed { radix: u64, set: FxHashSet<u64> },
}

impl ShortWords {
    fn new(n: usize, len: usize) -> Self {
        let radix = n as u64 + 1;
        match radix.checked_pow(len as u32) {
            Some(space) if space <= DENSE_BITS => ShortWords::Dense { radix, bits: vec![0; space.div_ceil(64) as usize] },
            _ => ShortWords::Hashed { radix, set: FxHashSet::default() },
        }
    }

    fn code(radix: u64, w: &[Elem]) -> u64 {
        w.iter().fold(0, |k, &e| k * radix + e as u64 + 1)
    }

    fn insert(&mut self, w: &[Elem]) {
        match self {
            ShortWords::Dense { radix, bits } => {
                let c = Self::code(*radix, w);
                bits[(c / 64) as usize] |= 1 << (c % 64);
            }
            ShortWords::Hashed { radix, set } => {
                set.insert(Self::code(*radix, w));
            }
        }
    }

    fn contains(&self, w: &[Elem]) -> bool {
        match self {
            ShortWords::Dense { radix, bits } => {
                let c = Self::code(*radix, w);
                bits[(c / 64) as usize] >> (c % 64) & 1 == 1
            }
            ShortWords::Hashed { radix, set } => set.contains(&Self::code(*radix, w)),
        }
    }
}

fn base_key(w: &[Elem]) -> u64 {
    w.iter().fold(0, |k, &e| k << 16 | (e as u64 + 1))
}

fn push_base_word(out: &mut Buf, key: u64, len: usize) {
    out.extend((0..len).rev().map(|i| ((key >> (16 * i)) & 0xffff) as Elem - 1));
}

/// Some base word over the classes of `w`.
fn self_lift(pg: &dyn PartialGroup, cong: &Congruence, w: &[usize]) -> Option<Vec<Elem>> {
    fn go(pg: &dyn PartialGroup, cong: &Congruence, w: &[usize], cur: &mut Vec<Elem>) -> bool {
        if cur.len() == w.len() {
            return true;
        }
        for &e in &cong.classes[w[cur.len()]] {
            cur.push(e);
            if (cur.len() == 1 || pg.is_word(cur)) && go(pg, cong, w, cur) {
                return true;
            }
            cur.pop();
        }
        false
    }
    let mut cur = Vec::with_capacity(w.len());
    go(pg, cong, w, &mut cur).then_some(cur)
}

fn class_key(w: &[usize]) -> u128 {
    w.iter().fold(w.len() as u128, |k, &c| k << 16 | c as u128)
}

impl Quotient {
    /// Checks (CR2) and (CR1) on all base words of length ≤ depth.
    pub fn new(base: PgRef, cong: Congruence, depth: usize) -> Result<Self, PgError> {
        let pg = &*base;
        if cong.class_of.len() != pg.size() {
            return Err(PgError::InvalidStructure("partition has the wrong size".into()));
        }
        let mut inverse = vec![usize::MAX; cong.len()];
        for e in 0..pg.size() {
            let (c, ci) = (cong.class_of(e), cong.class_of(pg.inverse(e)));
            if inverse[c] == usize::MAX {
                inverse[c] = ci;
            } else if inverse[c] != ci {
                return Err(PgError::NotACongruence(format!("inverses of the class of {} split", pg.name(e))));
            }
        }
        let depth = effective_depth(pg, depth);
        let table_len = if cong.len() < 1 << 16 { depth.min(7) } else { 0 };
        let mut table: FxHashMap<u128, ClassWord> = FxHashMap::default();
        let base_len = if pg.size() < (1 << 16) - 1 { table_len.min(4) } else { 0 };
        let mut grouped: Vec<(u128, u64)> = Vec::new();
        let mut base_words = ShortWords::new(pg.size(), base_len);
        let mut seen: HashMap<Vec<usize>, (usize, Vec<Elem>)> = HashMap::new();
        let mut key = Vec::with_capacity(depth);
        let mut bad = None;
        for_each_word(pg, depth, |w| {
            let Some(r) = pg.nabla(w) else { return true };
            key.clear();
            key.extend(w.iter().map(|&e| cong.class_of(e)));
            if w.len() <= base_len {
                base_words.insert(w);
                if w.len() == base_len {
                    grouped.push((class_key(&key), base_key(w)));
                }
            }
            let rc = cong.class_of(r);
            let known = if w.len() <= table_len {
                table.get(&class_key(&key)).map(|c| c.product as usize)
            } else {
                seen.get(&key).map(|x| x.0)
            };
            match known {
                Some(c) if c != rc => {
                    let other = match seen.get(&key) {
                        Some((_, v)) => v.clone(),
                        None => self_lift(pg, &cong, &key).unwrap_or_default(),
                    };
                    bad = Some(format!(
                        "({}) and ({}) are related words with unrelated products",
                        word_names(pg, &other).join(", "),
                        word_names(pg, w).join(", ")
                    ));
                    false
                }
                Some(_) => true,
                None => {
                    if w.len() <= table_len {
                        table.insert(class_key(&key), ClassWord { product: rc as u32, start: 0, count: 0 });
                    } else {
                        seen.insert(key.clone(), (rc, w.to_vec()));
                    }
                    true
                }
            }
        });
        if let Some(msg) = bad {
            return Err(PgError::NotACongruence(msg));
        }
        grouped.sort_unstable();
        let mut reps = Vec::with_capacity(grouped.len());
        for chunk in grouped.chunk_by(|a, b| a.0 == b.0) {
            let entry = table.get_mut(&chunk[0].0).expect("every base word has a class word");
            entry.start = reps.len() as u32;
            entry.count = chunk.len() as u32;
            reps.extend(chunk.iter().map(|x| x.1));
        }
        Ok(Quotient { base, cong, inverse, table, table_len, base_words, base_len, reps })
    }

    pub fn congruence(&self) -> &Congruence {
        &self.cong
    }

    pub fn base(&self) -> &PgRef {
        &self.base
    }

    /// Some representative word of the class word, if any.
    pub fn lift(&self, w: &[usize]) -> Option<Vec<Elem>> {
        let mut out = Buf::new();
        self.lift_from(w, &mut out, &mut |v| v.len() < 2 || self.base.is_word(v)).then(|| out.to_vec())
    }

    /// Depth-first search over representatives; `f` sees each complete
    /// candidate and returns true to accept it. Candidates longer than
    /// base_len are not yet known to be base words.
    fn lift_from(&self, w: &[usize], cur: &mut Buf, f: &mut dyn FnMut(&[Elem]) -> bool) -> bool {
        let k = self.base_len;
        if k >= 2 && w.len() > k {
            let Some(c) = self.table.get(&class_key(&w[..k])) else { return false };
            for &r in &self.reps[c.start as usize..(c.start + c.count) as usize] {
                cur.clear();
                push_base_word(cur, r, k);
                if self.lift_windows(w, cur, f) {
                    return true;
                }
            }
            cur.clear();
            return false;
        }
        if cur.len() == w.len() {
            return f(cur);
        }
        for &e in &self.cong.classes[w[cur.len()]] {
            cur.push(e);
            if (cur.len() == 1 || self.base.is_word(cur)) && self.lift_from(w, cur, f) {
                return true;
            }
            cur.pop();
        }
        false
    }

    /// Extends a representative prefix, pruning by the trailing window and
    /// testing the base only on complete words.
    fn lift_windows(&self, w: &[usize], cur: &mut Buf, f: &mut dyn FnMut(&[Elem]) -> bool) -> bool {
        let n = cur.len();
        if n == w.len() {
            return f(cur);
        }
        for &e in &self.cong.classes[w[n]] {
            cur.push(e);
            if self.base_words.contains(&cur[n + 1 - self.base_len..]) && self.lift_windows(w, cur, f) {
                return true;
            }
            cur.pop();
        }
        false
    }
}

impl PartialGroup for Quotient {
    fn size(&self) -> usize {
        self.cong.len()
    }

    fn unit(&self) -> Elem {
        self.cong.class_of(self.base.unit())
    }

    fn inverse(&self, e: Elem) -> Elem {
        self.inverse[e]
    }

    fn is_word(&self, w: &[Elem]) -> bool {
        if w.len() <= 1 {
            return true;
        }
        if w.len() <= self.table_len {
            return self.table.contains_key(&class_key(w));
        }
        let mut cur = Buf::new();
        self.lift_from(w, &mut cur, &mut |v| v.len() < 2 || self.base.is_word(v))
    }

    fn nabla(&self, w: &[Elem]) -> Option<Elem> {
        if w.len() == 1 {
            return Some(w[0]);
        }
        if w.len() <= self.table_len {
            return self.table.get(&class_key(w)).map(|c| c.product as usize);
        }
        if self.base_len >= 2 && w.len() > self.base_len {
            let mut out = None;
            let mut cur = Buf::new();
            self.lift_from(w, &mut cur, &mut |v| {
                out = self.base.nabla(v);
                out.is_some()
            });
            return out.map(|e| self.cong.class_of(e));
        }
        let v = self.lift(w)?;
        self.base.nabla(&v).map(|e| self.cong.class_of(e))
    }

    fn name(&self, e: Elem) -> String {
        self.base.name(self.cong.classes[e][0])
    }

    fn extensions(&self, w: &[Elem]) -> Vec<Elem> {
        if w.is_empty() {
            return (0..self.size()).collect();
        }
        if w.len() < self.table_len {
            let mut v = w.to_vec();
            v.push(0);
            return (0..self.size())
                .filter(|&c| {
                    v[w.len()] = c;
                    self.table.contains_key(&class_key(&v))
                })
                .collect();
        }
        let mut seen = vec![false; self.size()];
        let mut cur = Buf::new();
        self.lift_from(w, &mut cur, &mut |v| {
            if v.len() > self.base_len && !self.base.is_word(v) {
                return false;
            }
            for e in self.base.extensions(v) {
                seen[self.cong.class_of(e)] = true;
            }
            false
        });
        (0..self.size()).filter(|&c| seen[c]).collect()
    }

    fn exact_depth(&self) -> Option<usize> {
        self.base.exact_depth()
    }
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::pgroup::{validate_axioms, ChartedPartialGroup};

    /// C4 = {0,1,2,3} as a one-chart partial group.
    fn c4() -> ChartedPartialGroup {
        ChartedPartialGroup::build(
            (0..4).map(|i| i.to_string()).collect(),
            0,
            vec![0, 3, 2, 1],
            vec!["*".into()],
            vec![vec![Some(0)]; 4],
            |a, b| Some((a + b) % 4),
        )
        .unwrap()
    }

    #[test]
    fn identity_quotient_keeps_everything() {
        let g: PgRef = Arc::new(c4());
        let q = Quotient::new(g, Congruence::identity(4), 4).unwrap();
        assert_eq!(q.size(), 4);
        assert_eq!(q.nabla(&[1, 3]), Some(0));
    }

    #[test]
    fn c4_mod_c2() {
        let g: PgRef = Arc::new(c4());
        let cong = Congruence::from_pairs(&*g, &[(0, 2), (1, 3)]).unwrap();
        assert_eq!(cong.classes(), &[vec![0, 2], vec![1, 3]]);
        let q = Quotient::new(g, cong, 4).unwrap();
        assert_eq!(q.nabla(&[1, 1]), Some(0));
        assert!(validate_axioms(&q, 4).is_pass());
    }

    #[test]
    fn non_congruence_is_rejected() {
        let g: PgRef = Arc::new(c4());
        let cong = Congruence::from_pairs(&*g, &[(0, 1)]).unwrap();
        // closure under inverse also joins 0 and 3, leaving {0,1,3}, {2}
        assert_eq!(cong.len(), 2);
        assert!(matches!(Quotient::new(g, cong, 3), Err(PgError::NotACongruence(_))));
    }
}
