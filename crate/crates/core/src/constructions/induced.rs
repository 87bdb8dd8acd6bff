use super::{action_adjoint, ConstructionError, PgAction, Semidirect};
use crate::pgroup::{check_map, for_each_word, word_names, Congruence, Elem, MapReport, PartialGroup, PgRef};

/// ψ: F ⋉ H → P with ψ(γ ⋉ η) = ∇₂(φ(γ), f(η)).
#[derive(Clone, Debug)]
pub struct InducedMap {
    pub psi: Vec<Elem>,
    pub report: MapReport,
    pub injective: bool,
    pub surjective: bool,
}

impl InducedMap {
    /// ∼_ψ: elements with the same image.
    pub fn congruence(&self) -> Congruence {
        Congruence::from_labels(&self.psi)
    }
}

fn not_a_map(what: &str, rep: &MapReport) -> ConstructionError {
    ConstructionError::NotAMap(format!("{what}: {}", rep.failures.join("; ")))
}

pub fn induced_map(
    sd: &Semidirect,
    p: PgRef,
    phi: &[Elem],
    f: &[Elem],
    depth: usize,
) -> Result<InducedMap, ConstructionError> {
    let (fg, h) = (sd.acting().clone(), sd.target().clone());
    let rep = check_map(&*fg, &*p, phi, depth);
    if !rep.is_pass() {
        return Err(not_a_map("φ", &rep));
    }
    let rep = check_map(&*h, &*p, f, depth);
    if !rep.is_pass() {
        return Err(not_a_map("f", &rep));
    }
    let adj = action_adjoint(p.clone());
    let act = sd.action();
    let mut fwords = vec![Vec::new()];
    for_each_word(&*fg, depth, |w| {
        fwords.push(w.to_vec());
        true
    });
    let mut bad = None;
    for_each_word(&*h, depth, |eta| {
        for g in &fwords {
            let Some(res) = act.act(eta, g) else { continue };
            let fe: Vec<Elem> = eta.iter().map(|&e| f[e]).collect();
            let pg: Vec<Elem> = g.iter().map(|&c| phi[c]).collect();
            if adj.act(&fe, &pg) != Some(res.iter().map(|&e| f[e]).collect()) {
                bad = Some(format!(
                    "f is not equivariant at ({} | {})",
                    word_names(&*h, eta).join(", "),
                    word_names(&*fg, g).join(", ")
                ));
                return false;
            }
        }
        true
    });
    if let Some(m) = bad {
        return Err(ConstructionError::NotAMap(m));
    }
    let mut psi = Vec::with_capacity(sd.size());
    for e in 0..sd.size() {
        let (g, eta) = sd.pair(e);
        match p.nabla(&[phi[g], f[eta]]) {
            Some(x) => psi.push(x),
            None => return Err(ConstructionError::NotAMap(format!("(φ(γ), f(η)) is not a word for {}", sd.name(e)))),
        }
    }
    for g in 0..fg.size() {
        if sd.index_of(g, h.unit()).map(|e| psi[e]) != Some(phi[g]) {
            return Err(ConstructionError::NotAMap(format!("ψ∘ι ≠ φ at {}", fg.name(g))));
        }
    }
    for eta in 0..h.size() {
        if sd.index_of(fg.unit(), eta).map(|e| psi[e]) != Some(f[eta]) {
            return Err(ConstructionError::NotAMap(format!("ψ∘h ≠ f at {}", h.name(eta))));
        }
    }
    let report = check_map(sd, &*p, &psi, depth);
    if !report.is_pass() {
        return Err(not_a_map("ψ", &report));
    }
    let mut hit = vec![false; p.size()];
    psi.iter().for_each(|&x| hit[x] = true);
    let surjective = hit.iter().all(|&b| b);
    let injective = hit.iter().filter(|&&b| b).count() == psi.len();
    Ok(InducedMap { psi, report, injective, surjective })
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::constructions::{action_wedge_over_fset, vector_parades, GroupTable};
    use crate::linalg::QVector;
    use crate::pgroup::PSet;

    #[test]
    fn trivial_h_gives_phi() {
        let f: PgRef = Arc::new(vector_parades(&[QVector::from_ints(&[0]), QVector::from_ints(&[1])]).unwrap());
        let x = PSet::of_charts(f.as_charted().unwrap());
        let (act, _) = action_wedge_over_fset(&GroupTable::trivial(), f.clone(), &x, 4).unwrap();
        let sd = Semidirect::new(Arc::new(act)).unwrap();
        let id: Vec<Elem> = (0..3).collect();
        let m = induced_map(&sd, f.clone(), &id, &[0], 4).unwrap();
        for e in 0..sd.size() {
            assert_eq!(m.psi[e], sd.pair(e).0);
        }
        assert!(m.injective && m.surjective);
    }

    #[test]
    fn bad_phi_rejected() {
        let f: PgRef = Arc::new(vector_parades(&[QVector::from_ints(&[0]), QVector::from_ints(&[1])]).unwrap());
        let x = PSet::of_charts(f.as_charted().unwrap());
        let (act, _) = action_wedge_over_fset(&GroupTable::trivial(), f.clone(), &x, 4).unwrap();
        let sd = Semidirect::new(Arc::new(act)).unwrap();
        let r = induced_map(&sd, f.clone(), &[0, 1, 1], &[0], 4);
        assert!(matches!(r, Err(ConstructionError::NotAMap(_))));
    }
}
