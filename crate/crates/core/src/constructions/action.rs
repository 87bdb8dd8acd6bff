use std::sync::Arc;

use smallvec::SmallVec;

use super::{wedge_named, ConstructionError, GroupTable, WedgeSum};
use crate::pgroup::pset::check_set_axioms;
use crate::pgroup::{
    check_map, effective_depth, fits, for_each_word, friendly_part, inverse_word, validate_pset, word_names, AxiomReport,
    Elem, PSet, PartialGroup, PgRef,
};

/// A right action of the partial group F on the partial group H.
pub trait PgAction: Send + Sync {
    /// F.
    fn acting(&self) -> &PgRef;
    /// H.
    fn target(&self) -> &PgRef;
    /// ◁(η|γ) when (η|γ) ∈ H_r F_n; the empty γ acts trivially.
    fn act(&self, eta: &[Elem], gamma: &[Elem]) -> Option<Vec<Elem>>;
    fn name(&self) -> String;

    /// `act` into `out`; false when undefined.
    fn act_into(&self, eta: &[Elem], gamma: &[Elem], out: &mut Vec<Elem>) -> bool {
        match self.act(eta, gamma) {
            Some(v) => {
                *out = v;
                true
            }
            None => false,
        }
    }

    fn act1(&self, eta: Elem, gamma: &[Elem]) -> Option<Elem> {
        self.act(&[eta], gamma).map(|v| v[0])
    }

    /// Whether ◁(η|γ) is defined.
    fn acts(&self, eta: &[Elem], gamma: &[Elem]) -> bool {
        self.act(eta, gamma).is_some()
    }

    /// `act1` when γ is already known to be an F-word.
    fn act1_on_word(&self, eta: Elem, gamma: &[Elem]) -> Option<Elem> {
        self.act1(eta, gamma)
    }

    fn as_chained(&self) -> Option<&ChainedAction> {
        None
    }
}

const NO_STEP: u32 = u32::MAX;

/// Action given by single steps η·γ, extended to words by chaining each
/// component.
#[derive(Clone)]
pub struct ChainedAction {
    f: PgRef,
    h: PgRef,
    /// step[η·|F| + γ], `NO_STEP` when undefined.
    step: Vec<u32>,
    label: String,
}

impl ChainedAction {
    pub fn new(f: PgRef, h: PgRef, step: Vec<Vec<Option<Elem>>>, label: impl Into<String>) -> Result<Self, ConstructionError> {
        if step.len() != h.size() || step.iter().any(|r| r.len() != f.size() || r.iter().flatten().any(|&y| y >= h.size())) {
            return Err(ConstructionError::InvalidAction("step table has the wrong shape".into()));
        }
        let step = step.into_iter().flatten().map(|y| y.map_or(NO_STEP, |y| y as u32)).collect();
        Ok(ChainedAction { f, h, step, label: label.into() })
    }

    pub fn step(&self, eta: Elem, g: Elem) -> Option<Elem> {
        let y = self.step[eta * self.f.size() + g];
        (y != NO_STEP).then_some(y as Elem)
    }

    pub(crate) fn chain(&self, eta: Elem, gamma: &[Elem]) -> Option<Elem> {
        let n = self.f.size();
        let mut x = eta as u32;
        for &g in gamma {
            x = self.step[x as usize * n + g];
            if x == NO_STEP {
                return None;
            }
        }
        Some(x as Elem)
    }

    /// Overwrite one step (negative controls in tests).
    #[doc(hidden)]
    pub fn set_step(&mut self, eta: Elem, g: Elem, to: Option<Elem>) {
        self.step[eta * self.f.size() + g] = to.map_or(NO_STEP, |y| y as u32);
    }
}

impl PgAction for ChainedAction {
    fn acting(&self) -> &PgRef {
        &self.f
    }

    fn target(&self) -> &PgRef {
        &self.h
    }

    fn act(&self, eta: &[Elem], gamma: &[Elem]) -> Option<Vec<Elem>> {
        let mut out = Vec::with_capacity(eta.len());
        self.act_into(eta, gamma, &mut out).then_some(out)
    }

    fn act_into(&self, eta: &[Elem], gamma: &[Elem], out: &mut Vec<Elem>) -> bool {
        if eta.is_empty() || (eta.len() >= 2 && !self.h.is_word(eta)) || (gamma.len() >= 2 && !self.f.is_word(gamma)) {
            return false;
        }
        out.clear();
        for &e in eta {
            match self.chain(e, gamma) {
                Some(x) => out.push(x),
                None => return false,
            }
        }
        true
    }

    fn act1(&self, eta: Elem, gamma: &[Elem]) -> Option<Elem> {
        if gamma.len() >= 2 && !self.f.is_word(gamma) {
            return None;
        }
        self.chain(eta, gamma)
    }

    fn act1_on_word(&self, eta: Elem, gamma: &[Elem]) -> Option<Elem> {
        self.chain(eta, gamma)
    }

    fn as_chained(&self) -> Option<&ChainedAction> {
        Some(self)
    }

    fn acts(&self, eta: &[Elem], gamma: &[Elem]) -> bool {
        !eta.is_empty()
            && (eta.len() < 2 || self.h.is_word(eta))
            && (gamma.len() < 2 || self.f.is_word(gamma))
            && eta.iter().all(|&e| self.chain(e, gamma).is_some())
    }

    fn name(&self) -> String {
        self.label.clone()
    }
}

/// H_r F_n = H_r × F_n, acting through automorphisms ψ(γ) of H.
pub fn action_grazian_henke(f: PgRef, h: PgRef, psi: Vec<Vec<Elem>>, depth: usize) -> Result<ChainedAction, ConstructionError> {
    let bad = |m: String| Err(ConstructionError::NotAMap(m));
    if psi.len() != f.size() || psi.iter().any(|r| r.len() != h.size()) {
        return bad("ψ has the wrong shape".into());
    }
    for (g, row) in psi.iter().enumerate() {
        let rep = check_map(&*h, &*h, row, depth);
        if !rep.bijective || !rep.is_pass() {
            return bad(format!("ψ({}) is not an automorphism: {}", f.name(g), rep.failures.join("; ")));
        }
    }
    if psi[f.unit()].iter().enumerate().any(|(i, &j)| i != j) {
        return bad("ψ(1) is not the identity".into());
    }
    let mut err = None;
    for_each_word(&*f, 2, |w| {
        if w.len() == 2 {
            let c = f.nabla(w).expect("word");
            if (0..h.size()).any(|e| psi[w[1]][psi[w[0]][e]] != psi[c][e]) {
                err = Some(format!("ψ({})ψ({}) ≠ ψ({})", f.name(w[0]), f.name(w[1]), f.name(c)));
                return false;
            }
        }
        true
    });
    if let Some(m) = err {
        return bad(m);
    }
    let step = (0..h.size()).map(|e| (0..f.size()).map(|g| Some(psi[g][e])).collect()).collect();
    let label = format!("Grazian-Henke action on {} elements", h.size());
    ChainedAction::new(f, h, step, label)
}

/// Whether every F-word of length ≤ depth has a starting point in X.
pub fn is_friendly(f: &dyn PartialGroup, x: &PSet, depth: usize) -> Option<Vec<Elem>> {
    let mut witness = None;
    for_each_word(f, effective_depth(f, depth), |w| {
        if (0..x.len()).any(|p| x.act(f, p, w).is_some()) {
            true
        } else {
            witness = Some(w.to_vec());
            false
        }
    });
    witness
}

/// ⋁_X G with ([x,a] | γ) = [x·γ, a].
pub fn action_wedge_over_fset(
    g: &GroupTable,
    f: PgRef,
    x: &PSet,
    depth: usize,
) -> Result<(ChainedAction, WedgeSum), ConstructionError> {
    let rep = validate_pset(&*f, x, depth);
    if !rep.is_pass() {
        return Err(ConstructionError::InvalidAction(format!("X is not an F-set: {rep}")));
    }
    if !friendly_part(&*f, x).is_whole() {
        return Err(ConstructionError::NotFriendly("some element of F moves no point of X".into()));
    }
    if let Some(w) = is_friendly(&*f, x, depth) {
        return Err(ConstructionError::NotFriendly(format!("no point of X starts ({})", word_names(&*f, &w).join(", "))));
    }
    let names: Vec<String> = (0..x.len()).map(|p| x.name(p).to_string()).collect();
    let ws = wedge_named(&vec![g.clone(); x.len()], &names);
    let step = (0..ws.pg.size())
        .map(|e| {
            (0..f.size())
                .map(|c| match ws.locate(e) {
                    None => Some(0),
                    Some((p, a)) => x.step(p, c).map(|q| ws.elem(q, a)),
                })
                .collect()
        })
        .collect();
    let label = format!("{} over {} points", g.name(), x.len());
    let act = ChainedAction::new(f, Arc::new(ws.pg.clone()), step, label)?;
    Ok((act, ws))
}

/// P acting on itself by conjugation through the ρ-word test.
#[derive(Clone)]
pub struct AdjointAction {
    p: PgRef,
    inv: Vec<Elem>,
    /// conj[π][g] = ∇(g⁻¹, π, g).
    conj: Vec<Vec<Option<Elem>>>,
}

pub fn action_adjoint(p: PgRef) -> AdjointAction {
    let n = p.size();
    let conj = (0..n)
        .map(|e| (0..n).map(|g| p.nabla(&[p.inverse(g), e, g])).collect())
        .collect();
    let inv = (0..n).map(|e| p.inverse(e)).collect();
    AdjointAction { p, inv, conj }
}

impl AdjointAction {
    fn rho_is_word(&self, eta: &[Elem], gamma: &[Elem]) -> bool {
        let mut rho: SmallVec<[Elem; 64]> = SmallVec::new();
        for &e in eta {
            rho.extend(gamma.iter().rev().map(|&g| self.inv[g]));
            rho.push(e);
            rho.extend_from_slice(gamma);
        }
        rho.len() < 2 || self.p.is_word(&rho)
    }

    /// ∇(γ⁻¹, π, γ) once the ρ-word is known to be a word.
    fn conjugate(&self, e: Elem, gamma: &[Elem]) -> Option<Elem> {
        gamma.iter().try_fold(e, |x, &g| self.conj[x][g])
    }
}

impl PgAction for AdjointAction {
    fn acting(&self) -> &PgRef {
        &self.p
    }

    fn target(&self) -> &PgRef {
        &self.p
    }

    fn act(&self, eta: &[Elem], gamma: &[Elem]) -> Option<Vec<Elem>> {
        let mut out = Vec::with_capacity(eta.len());
        self.act_into(eta, gamma, &mut out).then_some(out)
    }

    fn act_into(&self, eta: &[Elem], gamma: &[Elem], out: &mut Vec<Elem>) -> bool {
        if eta.is_empty() || !self.rho_is_word(eta, gamma) {
            return false;
        }
        out.clear();
        for &e in eta {
            match self.conjugate(e, gamma) {
                Some(x) => out.push(x),
                None => return false,
            }
        }
        true
    }

    fn act1(&self, eta: Elem, gamma: &[Elem]) -> Option<Elem> {
        if !self.rho_is_word(&[eta], gamma) {
            return None;
        }
        self.conjugate(eta, gamma)
    }

    fn acts(&self, eta: &[Elem], gamma: &[Elem]) -> bool {
        !eta.is_empty() && self.rho_is_word(eta, gamma)
    }

    fn name(&self) -> String {
        "adjoint action".into()
    }
}

fn contract_into(out: &mut Vec<Elem>, w: &[Elem], p: usize, q: usize, c: Elem) {
    out.clear();
    out.extend_from_slice(&w[..p]);
    out.push(c);
    out.extend_from_slice(&w[p + q..]);
}

/// (AP1)–(AP6) and the componentwise and inverse identities, on all
/// H-words and F-words of length ≤ depth.
pub fn validate_action(act: &dyn PgAction, depth: usize) -> AxiomReport {
    let (f, h) = (&**act.acting(), &**act.target());
    let (fd, hd) = (effective_depth(f, depth), effective_depth(h, depth));
    let mut rep = AxiomReport::new(fd.min(hd));
    let mut fwords = vec![Vec::new()];
    for_each_word(f, fd, |w| {
        fwords.push(w.to_vec());
        true
    });
    let mut hwords = Vec::new();
    for_each_word(h, hd, |w| {
        hwords.push(w.to_vec());
        true
    });
    let one = h.unit();
    let label = |eta: &[Elem], gamma: &[Elem]| {
        let mut v = word_names(h, eta);
        v.push("|".into());
        v.extend(word_names(f, gamma));
        v
    };
    for g in &fwords {
        if act.act(&[one], g) != Some(vec![one]) {
            rep.push("AP5", label(&[one], g), "◁(1|γ) ≠ 1");
        }
    }
    let actf = |eta: &Vec<Elem>, w: &[Elem]| act.act(eta, w);
    for eta in &hwords {
        check_set_axioms(f, fd, eta, &word_names(h, eta).join(" "), &actf, "AP1/", &mut rep);
    }
    let (mut tmp, mut v, mut want) = (Vec::new(), Vec::new(), Vec::new());
    let mut gives = |eta: &[Elem], g: &[Elem], want: &[Elem]| act.act_into(eta, g, &mut tmp) && tmp[..] == *want;
    for eta in &hwords {
        let r = eta.len();
        let ei = inverse_word(h, eta);
        for g in &fwords {
            let Some(res) = act.act(eta, g) else { continue };
            rep.words_checked += 1;
            if res.len() != r || (r >= 2 && !h.is_word(&res)) {
                rep.push("AP1", label(eta, g), "result is not in H_r");
                continue;
            }
            if r >= 2 && (!gives(&eta[1..], g, &res[1..]) || !gives(&eta[..r - 1], g, &res[..r - 1])) {
                rep.push("AP2", label(eta, g), "a face map does not commute with the action");
            }
            for q in 2..=r {
                for p in 0..=r - q {
                    let (Some(c), Some(c2)) = (h.nabla(&eta[p..p + q]), h.nabla(&res[p..p + q])) else {
                        rep.push("AP3", label(eta, g), "block product undefined");
                        continue;
                    };
                    contract_into(&mut v, eta, p, q, c);
                    contract_into(&mut want, &res, p, q, c2);
                    if !gives(&v, g, &want) {
                        rep.push("AP3", label(eta, g), format!("contracting block {p}..{} does not commute", p + q));
                    }
                }
            }
            if fits(h, r + 1) {
                for j in 0..=r {
                    v.clear();
                    v.extend_from_slice(eta);
                    v.insert(j, one);
                    want.clear();
                    want.extend_from_slice(&res);
                    want.insert(j, one);
                    if !gives(&v, g, &want) {
                        rep.push("AP4", label(eta, g), format!("inserting 1 at {j} does not commute"));
                    }
                }
            }
            if fits(h, 2 * r) {
                let ri = inverse_word(h, &res);
                let mut ok = true;
                for (a, b, c, d) in [(&eta[..], &ei[..], &res[..], &ri[..]), (&ei[..], &eta[..], &ri[..], &res[..])] {
                    v.clear();
                    v.extend_from_slice(a);
                    v.extend_from_slice(b);
                    want.clear();
                    want.extend_from_slice(c);
                    want.extend_from_slice(d);
                    ok &= gives(&v, g, &want);
                }
                if !ok {
                    rep.push("AP6", label(eta, g), "η ↦ η×η⁻¹ does not commute");
                }
            }
            for (i, &e) in eta.iter().enumerate() {
                if !gives(&[e], g, &[res[i]]) {
                    rep.push("L10.2(1)", label(eta, g), format!("component {i} differs from the single action"));
                }
            }
            if r == 1 && !gives(&[h.inverse(eta[0])], g, &[h.inverse(res[0])]) {
                rep.push("L10.2(2)", label(eta, g), "◁(η|γ)⁻¹ ≠ ◁(η⁻¹|γ)");
            }
        }
    }
    rep
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{union_in_ambient, vector_parades, wedge};
    use crate::linalg::QVector;

    fn c3c3() -> WedgeSum {
        wedge(&[GroupTable::cyclic(3), GroupTable::cyclic(3)])
    }

    fn c2() -> PgRef {
        Arc::new(GroupTable::cyclic(2).as_partial_group())
    }

    #[test]
    fn grazian_henke_examples() {
        let w = c3c3();
        let h: PgRef = Arc::new(w.pg.clone());
        let id: Vec<Elem> = (0..5).collect();
        let swap: Vec<Elem> = (0..5).map(|e| w.locate(e).map_or(0, |(l, a)| w.elem(1 - l, a))).collect();
        let invert: Vec<Elem> = (0..5).map(|e| w.pg.inverse(e)).collect();
        for psi in [vec![id.clone(), id.clone()], vec![id.clone(), swap], vec![id.clone(), invert]] {
            let act = action_grazian_henke(c2(), h.clone(), psi, 4).unwrap();
            let rep = validate_action(&act, 3);
            assert!(rep.is_pass(), "{rep}");
        }
    }

    #[test]
    fn grazian_henke_rejects_non_automorphism() {
        let w = c3c3();
        let h: PgRef = Arc::new(w.pg.clone());
        let id: Vec<Elem> = (0..5).collect();
        let mut bad = id.clone();
        bad.swap(1, 3);
        bad.swap(2, 4);
        bad.swap(3, 4);
        let r = action_grazian_henke(c2(), h, vec![id, bad], 4);
        assert!(matches!(r, Err(ConstructionError::NotAMap(_))));
    }

    fn v01() -> PgRef {
        Arc::new(vector_parades(&[QVector::from_ints(&[0]), QVector::from_ints(&[1])]).unwrap())
    }

    #[test]
    fn wedge_over_two_points() {
        let f = v01();
        let x = PSet::of_charts(f.as_charted().unwrap());
        let (act, ws) = action_wedge_over_fset(&GroupTable::dihedral(4), f.clone(), &x, 4).unwrap();
        let one = f.as_charted().unwrap().index_of("(1)").unwrap();
        for a in 1..8 {
            assert_eq!(act.act1(ws.elem(0, a), &[one]), Some(ws.elem(1, a)));
            assert_eq!(act.act1(ws.elem(1, a), &[one]), None);
        }
        let rep = validate_action(&act, 3);
        assert!(rep.is_pass(), "{rep}");
    }

    #[test]
    fn unfriendly_set_rejected() {
        let f = v01();
        let pg = f.as_charted().unwrap();
        let x = PSet::new(vec!["0".into()], vec![(0..3).map(|e| pg.chart_map(e, 0).filter(|&y| y == 0)).collect()]);
        let r = action_wedge_over_fset(&GroupTable::cyclic(2), f.clone(), &x, 3);
        assert!(r.is_err());
    }

    #[test]
    fn adjoint_on_union() {
        let s3 = GroupTable::symmetric(3);
        let t12 = s3.generated(&[s3.index_of("(1 2)").unwrap()]);
        let t13 = s3.generated(&[s3.index_of("(1 3)").unwrap()]);
        let p: PgRef = Arc::new(union_in_ambient(&s3, &t12, &t13).unwrap());
        let act = action_adjoint(p.clone());
        assert_eq!(act.act1(1, &[1]), Some(1));
        assert_eq!(act.act1(1, &[2]), None);
        for g in 0..3 {
            assert_eq!(act.act1(0, &[g]), Some(0));
        }
        let rep = validate_action(&act, 3);
        assert!(rep.is_pass(), "{rep}");
        let g: PgRef = Arc::new(s3.as_partial_group());
        assert!(validate_action(&action_adjoint(g), 2).is_pass());
    }

    #[test]
    fn corrupted_step_is_caught() {
        let w = c3c3();
        let h: PgRef = Arc::new(w.pg.clone());
        let id: Vec<Elem> = (0..5).collect();
        let mut act = action_grazian_henke(c2(), h, vec![id.clone(), id], 4).unwrap();
        act.set_step(1, 1, Some(2));
        assert!(!validate_action(&act, 3).is_pass());
    }
}
