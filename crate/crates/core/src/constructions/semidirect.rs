use std::sync::Arc;

use smallvec::SmallVec;

use super::{ConstructionError, PgAction};
use crate::pgroup::{Elem, PartialGroup, PgRef};

type Word = SmallVec<[Elem; 12]>;
const NONE: u32 = u32::MAX;

/// F ⋉ H for an F-partial group H. Elements are pairs γ ⋉ η with
/// (η|γ⁻¹) defined.
pub struct Semidirect {
    act: Arc<dyn PgAction>,
    pairs: Vec<(Elem, Elem)>,
    /// index[γ·|H| + η].
    index: Vec<u32>,
    by_gamma: Vec<Vec<Elem>>,
    inverse: Vec<Elem>,
    unit: Elem,
}

impl Semidirect {
    pub fn new(act: Arc<dyn PgAction>) -> Result<Self, ConstructionError> {
        let (f, h) = (act.acting().clone(), act.target().clone());
        let mut pairs = Vec::new();
        for g in 0..f.size() {
            for e in 0..h.size() {
                if act.act1(e, &[f.inverse(g)]).is_some() {
                    pairs.push((g, e));
                }
            }
        }
        let hn = h.size();
        let mut index = vec![NONE; f.size() * hn];
        for (i, &(g, e)) in pairs.iter().enumerate() {
            index[g * hn + e] = i as u32;
        }
        let find = |g: Elem, e: Elem| Some(index[g * hn + e]).filter(|&i| i != NONE).map(|i| i as usize);
        let Some(unit) = find(f.unit(), h.unit()) else {
            return Err(ConstructionError::ActionDomainError("(1|1) is undefined".into()));
        };
        let mut by_gamma = vec![Vec::new(); f.size()];
        for (i, &(g, _)) in pairs.iter().enumerate() {
            by_gamma[g].push(i);
        }
        let mut inverse = Vec::with_capacity(pairs.len());
        for &(g, e) in &pairs {
            let gi = f.inverse(g);
            let inv = act.act1(h.inverse(e), &[gi]).and_then(|x| find(gi, x));
            match inv {
                Some(i) => inverse.push(i),
                None => {
                    return Err(ConstructionError::ActionDomainError(format!(
                        "the inverse of {} ⋉ {} needs an undefined action step",
                        f.name(g),
                        h.name(e)
                    )))
                }
            }
        }
        Ok(Semidirect { act, pairs, index, by_gamma, inverse, unit })
    }

    pub fn pairs(&self) -> &[(Elem, Elem)] {
        &self.pairs
    }

    pub fn pair(&self, e: Elem) -> (Elem, Elem) {
        self.pairs[e]
    }

    pub fn index_of(&self, gamma: Elem, eta: Elem) -> Option<Elem> {
        let hn = self.target().size();
        if gamma >= self.acting().size() || eta >= hn {
            return None;
        }
        let i = self.index[gamma * hn + eta];
        (i != NONE).then_some(i as usize)
    }

    pub fn action(&self) -> &Arc<dyn PgAction> {
        &self.act
    }

    pub fn acting(&self) -> &PgRef {
        self.act.acting()
    }

    pub fn target(&self) -> &PgRef {
        self.act.target()
    }

    /// A(α), provided every interior step (η_j | γ_{j+1}, …, γ_n) is defined.
    pub fn a_word(&self, w: &[Elem]) -> Option<Vec<Elem>> {
        let gamma = self.gammas(w);
        let n = w.len();
        (0..n)
            .map(|j| {
                let eta = self.pairs[w[j]].1;
                if j + 1 == n {
                    Some(eta)
                } else {
                    self.act.act1(eta, &gamma[j + 1..])
                }
            })
            .collect()
    }

    fn gammas(&self, w: &[Elem]) -> Word {
        let mut g = Word::new();
        g.extend(w.iter().map(|&e| self.pairs[e].0));
        g
    }

    fn a_of(&self, w: &[Elem], gamma: &[Elem]) -> Option<Word> {
        let n = w.len();
        let mut a = Word::new();
        for j in 0..n {
            let eta = self.pairs[w[j]].1;
            a.push(if j + 1 == n { eta } else { self.act.act1_on_word(eta, &gamma[j + 1..])? });
        }
        Some(a)
    }

    /// A(α) when α is a word. The γ-word is checked once; its suffixes are
    /// then F-words by (P1).
    fn checked_a(&self, w: &[Elem], gamma: &[Elem]) -> Option<Word> {
        let f = self.acting();
        if gamma.len() >= 2 && !f.is_word(gamma) {
            return None;
        }
        let mut gi = Word::new();
        gi.extend(gamma.iter().rev().map(|&g| f.inverse(g)));
        let Some(ch) = self.act.as_chained() else {
            let a = self.a_of(w, gamma)?;
            return self.act.acts(&a, &gi).then_some(a);
        };
        if gi.len() >= 2 && !f.is_word(&gi) {
            return None;
        }
        let n = w.len();
        let mut a = Word::new();
        for j in 0..n {
            let x = ch.chain(self.pairs[w[j]].1, &gamma[j + 1..])?;
            ch.chain(x, &gi)?;
            a.push(x);
        }
        (n < 2 || self.target().is_word(&a)).then_some(a)
    }
}

impl PartialGroup for Semidirect {
    fn size(&self) -> usize {
        self.pairs.len()
    }

    fn unit(&self) -> Elem {
        self.unit
    }

    fn inverse(&self, e: Elem) -> Elem {
        self.inverse[e]
    }

    fn is_word(&self, w: &[Elem]) -> bool {
        if w.len() <= 1 {
            return true;
        }
        self.checked_a(w, &self.gammas(w)).is_some()
    }

    fn nabla(&self, w: &[Elem]) -> Option<Elem> {
        if w.len() == 1 {
            return Some(w[0]);
        }
        let gamma = self.gammas(w);
        let a = self.checked_a(w, &gamma)?;
        let g = self.acting().nabla(&gamma)?;
        let e = self.target().nabla(&a)?;
        self.index_of(g, e)
    }

    fn name(&self, e: Elem) -> String {
        let (g, h) = self.pairs[e];
        format!("{}⋉{}", self.acting().name(g), self.target().name(h))
    }

    fn extensions(&self, w: &[Elem]) -> Vec<Elem> {
        if w.is_empty() {
            return (0..self.size()).collect();
        }
        let gamma = self.gammas(w);
        let mut buf: Word = w.iter().copied().collect();
        buf.push(0);
        let last = buf.len() - 1;
        let mut out = Vec::new();
        for g in self.acting().extensions(&gamma) {
            for &e in &self.by_gamma[g] {
                buf[last] = e;
                if self.is_word(&buf) {
                    out.push(e);
                }
            }
        }
        out.sort_unstable();
        out
    }

    fn exact_depth(&self) -> Option<usize> {
        match (self.acting().exact_depth(), self.target().exact_depth()) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, b) => a.or(b),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{action_grazian_henke, action_wedge_over_fset, vector_parades, GroupTable};
    use crate::linalg::QVector;
    use crate::pgroup::{iso_search, validate_axioms, PSet};

    fn v01() -> PgRef {
        Arc::new(vector_parades(&[QVector::from_ints(&[0]), QVector::from_ints(&[1])]).unwrap())
    }

    fn over(f: PgRef, g: &GroupTable) -> Semidirect {
        let x = PSet::of_charts(f.as_charted().unwrap());
        let (act, _) = action_wedge_over_fset(g, f, &x, 4).unwrap();
        Semidirect::new(Arc::new(act)).unwrap()
    }

    #[test]
    fn v01_over_trivial_has_three() {
        let s = over(v01(), &GroupTable::trivial());
        assert_eq!(s.size(), 3);
        assert!(validate_axioms(&s, 4).is_pass());
        assert!(iso_search(&s, &*v01(), 4).is_some());
    }

    #[test]
    fn v01_over_d4() {
        let s = over(v01(), &GroupTable::dihedral(4));
        // 1 + 7 nontrivial at each point, each with 2 admissible differences
        assert_eq!(s.size(), 3 + 7 * 2 * 2);
        let rep = validate_axioms(&s, 3);
        assert!(rep.is_pass(), "{rep}");
    }

    #[test]
    fn trivial_acting_group_gives_h() {
        let f: PgRef = Arc::new(GroupTable::trivial().as_partial_group());
        let h: PgRef = Arc::new(crate::constructions::wedge(&[GroupTable::cyclic(3), GroupTable::cyclic(2)]).pg);
        let act = action_grazian_henke(f, h.clone(), vec![(0..h.size()).collect()], 3).unwrap();
        let s = Semidirect::new(Arc::new(act)).unwrap();
        assert!(iso_search(&s, &*h, 4).is_some());
    }

    #[test]
    fn c2_on_c3_by_inversion_is_s3() {
        let f: PgRef = Arc::new(GroupTable::cyclic(2).as_partial_group());
        let c3 = GroupTable::cyclic(3);
        let h: PgRef = Arc::new(c3.as_partial_group());
        let psi = vec![(0..3).collect(), (0..3).map(|e| c3.inverse(e)).collect()];
        let act = action_grazian_henke(f, h, psi, 3).unwrap();
        let s = Semidirect::new(Arc::new(act)).unwrap();
        assert_eq!(s.size(), 6);
        assert!(iso_search(&s, &GroupTable::symmetric(3).as_partial_group(), 4).is_some());
    }
}
