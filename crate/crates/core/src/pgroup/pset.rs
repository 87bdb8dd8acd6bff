use super::{effective_depth, fits, inverse_word, word_names, AxiomReport, ChartedPartialGroup, Elem, PartialGroup};

/// A right P-set given by single-step data; (x|w) is defined when the
/// chain of steps is defined and w is a word.
#[derive(Clone, Debug)]
pub struct PSet {
    names: Vec<String>,
    /// step[x][e] = x·e.
    step: Vec<Vec<Option<usize>>>,
}

impl PSet {
    pub fn new(names: Vec<String>, step: Vec<Vec<Option<usize>>>) -> Self {
        PSet { names, step }
    }

    /// Charts of a charted realization, acted on through the support.
    pub fn of_charts(pg: &ChartedPartialGroup) -> Self {
        let step = (0..pg.charts().len()).map(|x| (0..pg.size()).map(|e| pg.chart_map(e, x)).collect()).collect();
        PSet { names: pg.charts().to_vec(), step }
    }

    /// The one-point set on which every element acts trivially.
    pub fn point(pg: &dyn PartialGroup) -> Self {
        PSet { names: vec!["*".into()], step: vec![vec![Some(0); pg.size()]] }
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, x: usize) -> &str {
        &self.names[x]
    }

    pub fn step(&self, x: usize, e: Elem) -> Option<usize> {
        self.step[x][e]
    }

    /// Overwrite one step (negative controls in tests).
    #[doc(hidden)]
    pub fn set_step(&mut self, x: usize, e: Elem, y: Option<usize>) {
        self.step[x][e] = y;
    }

    /// ◁(x|w).
    pub fn act(&self, pg: &dyn PartialGroup, x: usize, w: &[Elem]) -> Option<usize> {
        if w.len() >= 2 && !pg.is_word(w) {
            return None;
        }
        w.iter().try_fold(x, |y, &e| self.step[y][e])
    }
}

/// Checks (A1)–(A6) for all (x|w) with |w| ≤ depth.
pub fn validate_pset(pg: &dyn PartialGroup, ps: &PSet, depth: usize) -> AxiomReport {
    let depth = effective_depth(pg, depth);
    let mut rep = AxiomReport::new(depth);
    let act = |&x: &usize, w: &[Elem]| ps.act(pg, x, w);
    for x in 0..ps.len() {
        check_set_axioms(pg, depth, &x, ps.name(x), &act, "", &mut rep);
    }
    rep
}

/// (A1)–(A6) at one point of any right action of `pg`; axiom names get
/// `prefix` prepended.
pub(crate) fn check_set_axioms<T: PartialEq>(
    pg: &dyn PartialGroup,
    depth: usize,
    x: &T,
    xname: &str,
    act: &dyn Fn(&T, &[Elem]) -> Option<T>,
    prefix: &str,
    rep: &mut AxiomReport,
) {
    let one = pg.unit();
    let label = |w: &[Elem]| {
        let mut v = vec![xname.to_string()];
        v.extend(word_names(pg, w));
        v
    };
    let ax = |a: &str| format!("{prefix}{a}");
    if act(x, &[one]).as_ref() != Some(x) {
        rep.push(&ax("A5"), label(&[one]), "(x|1) ≠ x");
    }
    let mut stack: Vec<Vec<Elem>> = (0..pg.size()).rev().map(|e| vec![e]).collect();
    while let Some(w) = stack.pop() {
        let Some(y) = act(x, &w) else { continue };
        rep.words_checked += 1;
        let n = w.len();
        if n >= 2 && act(x, &w[..n - 1]).is_none() {
            rep.push(&ax("A1"), label(&w), "prefix action undefined");
        }
        for p in 1..n {
            let mid = act(x, &w[..p]).and_then(|z| act(&z, &w[p..]));
            if mid.as_ref() != Some(&y) {
                rep.push(&ax("A2"), label(&w), format!("splitting after {p} changes the result"));
            }
        }
        for q in 2..=n {
            for p in 0..=n - q {
                let Some(c) = pg.nabla(&w[p..p + q]) else { continue };
                let mut v = w[..p].to_vec();
                v.push(c);
                v.extend_from_slice(&w[p + q..]);
                if act(x, &v).as_ref() != Some(&y) {
                    rep.push(&ax("A3"), label(&w), format!("contracting block {p}..{} changes the action", p + q));
                }
            }
        }
        for j in 0..=n {
            if !fits(pg, n + 1) {
                break;
            }
            let mut v = w.clone();
            v.insert(j, one);
            if act(x, &v).as_ref() != Some(&y) {
                rep.push(&ax("A4"), label(&w), format!("inserting 1 at {j} changes the action"));
            }
        }
        let v = [&w[..], &inverse_word(pg, &w)].concat();
        if fits(pg, 2 * n) && act(x, &v).is_none() {
            rep.push(&ax("A6"), label(&w), "(x|w×w⁻¹) undefined");
        }
        if n < depth {
            for e in pg.extensions(&w).into_iter().rev() {
                let mut v = w.clone();
                v.push(e);
                stack.push(v);
            }
        }
    }
}

/// Elements and words that admit a starting point in the P-set.
pub struct FriendlyPart<'a> {
    pg: &'a dyn PartialGroup,
    ps: &'a PSet,
    elems: Vec<Elem>,
    pos: Vec<Option<usize>>,
}

impl FriendlyPart<'_> {
    /// Indices (in the ambient partial group) of the friendly elements.
    pub fn elements(&self) -> &[Elem] {
        &self.elems
    }

    /// Whether nothing was removed.
    pub fn is_whole(&self) -> bool {
        self.elems.len() == self.pg.size()
    }

    fn lift(&self, w: &[Elem]) -> Vec<Elem> {
        w.iter().map(|&e| self.elems[e]).collect()
    }
}

pub fn friendly_part<'a>(pg: &'a dyn PartialGroup, ps: &'a PSet) -> FriendlyPart<'a> {
    let elems: Vec<Elem> =
        (0..pg.size()).filter(|&e| e == pg.unit() || (0..ps.len()).any(|x| ps.step(x, e).is_some())).collect();
    let mut pos = vec![None; pg.size()];
    for (i, &e) in elems.iter().enumerate() {
        pos[e] = Some(i);
    }
    FriendlyPart { pg, ps, elems, pos }
}

impl PartialGroup for FriendlyPart<'_> {
    fn size(&self) -> usize {
        self.elems.len()
    }

    fn unit(&self) -> Elem {
        self.pos[self.pg.unit()].unwrap()
    }

    fn inverse(&self, e: Elem) -> Elem {
        self.pos[self.pg.inverse(self.elems[e])].expect("friendly part closed under inverse")
    }

    fn is_word(&self, w: &[Elem]) -> bool {
        let v = self.lift(w);
        if w.len() <= 1 {
            return true;
        }
        (0..self.ps.len()).any(|x| self.ps.act(self.pg, x, &v).is_some())
    }

    fn nabla(&self, w: &[Elem]) -> Option<Elem> {
        if !self.is_word(w) {
            return None;
        }
        self.pg.nabla(&self.lift(w)).and_then(|e| self.pos[e])
    }

    fn name(&self, e: Elem) -> String {
        self.pg.name(self.elems[e])
    }
}
