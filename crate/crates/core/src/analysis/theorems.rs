use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use super::{similarity_group, AnalysisError, CheckReport, Witness};
use crate::constructions::{
    action_wedge_over_fset, induced_map, parade_from_figure, similarity_union, vector_parades, ChainedAction, FactorSet,
    FactorSetProduct, GroupTable, InducedMap, Semidirect, WedgeSum,
};
use crate::geometry::{global_group, maps_between, Component, Similarity, TransformClass};
use crate::linalg::QVector;
use crate::pgroup::{
    check_isomorphism, ChartedPartialGroup, Congruence, Elem, IsoOutcome, IsoSearch, PSet, PartialGroup, PgRef, Quotient,
};
use crate::scenes::{Scene, TranslatedCopies};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Theorem {
    T8_4,
    T12_1,
    T12_2,
    T12_3,
    P7_6,
}

impl Theorem {
    pub const ALL: [Theorem; 5] = [Theorem::T8_4, Theorem::T12_1, Theorem::T12_2, Theorem::T12_3, Theorem::P7_6];
}

impl fmt::Display for Theorem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Theorem::T8_4 => "T8_4",
            Theorem::T12_1 => "T12_1",
            Theorem::T12_2 => "T12_2",
            Theorem::T12_3 => "T12_3",
            Theorem::P7_6 => "P7_6",
        })
    }
}

impl FromStr for Theorem {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        Theorem::ALL
            .into_iter()
            .find(|t| t.to_string().eq_ignore_ascii_case(s))
            .ok_or_else(|| format!("unknown theorem {s}; expected one of T8_4, T12_1, T12_2, T12_3, P7_6"))
    }
}

fn violation(m: impl Into<String>) -> AnalysisError {
    AnalysisError::HypothesisViolation(m.into())
}

fn two(scene: &Scene) -> Result<(&Component, &Component), AnalysisError> {
    match scene.figure.components() {
        [p, m] => Ok((p, m)),
        cs => Err(violation(format!("expected two components, found {}", cs.len()))),
    }
}

fn self_maps(k: &Component, class: TransformClass, field: u32) -> Result<Vec<Similarity>, AnalysisError> {
    Ok(maps_between(k, k, class, field)?)
}

fn lookup(pg: &ChartedPartialGroup, g: &Similarity, what: &str) -> Result<Elem, AnalysisError> {
    pg.find_similarity(g).ok_or_else(|| AnalysisError::PremiseViolation(format!("{what} {g} is missing")))
}

/// Sizes, the given bijection (when any) and an independent iso search.
fn compare(rep: &mut CheckReport, a: &dyn PartialGroup, b: &dyn PartialGroup, given: Option<&[Elem]>, depth: usize) {
    rep.fact("construction_size", a.size()).fact("parade_size", b.size());
    if a.size() != b.size() {
        rep.fail(Witness::Cardinalities { left: a.size(), right: b.size() });
        return;
    }
    if let Some(f) = given {
        let m = check_isomorphism(a, b, f, depth);
        rep.fact("induced_bijection", m.is_pass());
        if !m.is_pass() {
            rep.fail(Witness::Word { letters: Vec::new(), note: m.failures.join("; ") });
        }
    }
    match IsoSearch::new(depth).search(a, b) {
        IsoOutcome::Isomorphic(f) => {
            rep.fact("iso_found", true);
            let f = given.map(|g| g.to_vec()).unwrap_or(f);
            if rep.witness.is_none() {
                rep.witness =
                    Some(Witness::Bijection { pairs: (0..a.size()).map(|e| [a.name(e), b.name(f[e])]).collect() });
            }
        }
        IsoOutcome::NotIsomorphic => {
            rep.fact("iso_found", false);
            rep.fail(Witness::Cardinalities { left: a.size(), right: b.size() });
        }
        IsoOutcome::Inconclusive => {
            rep.fact("iso_found", "inconclusive");
            rep.inconclusive(Witness::Cardinalities { left: a.size(), right: b.size() });
        }
    }
}

/// C2 ⋉_{⟲,σ} (G(F₊) ∪ G(F₋)) for a swap a, with the map (c^ι, η) ↦ a^ι η.
pub struct SwapFactorSet {
    pub product: FactorSetProduct,
    pub union: Arc<ChartedPartialGroup>,
    pub swap: Similarity,
    pub sigma: Similarity,
    pub parade: ChartedPartialGroup,
    pub psi: Vec<Elem>,
}

pub fn swap_factor_set(scene: &Scene, depth: usize) -> Result<SwapFactorSet, AnalysisError> {
    let (kp, km) = two(scene)?;
    let (class, field) = (scene.class, scene.figure.field());
    let swaps: Vec<Similarity> =
        maps_between(kp, km, class, field)?.into_iter().filter(|a| kp.same_set(&km.transformed(a, ""))).collect();
    let Some(first) = swaps.first() else {
        return Err(violation(format!("no transformation exchanges {} and {}", kp.id(), km.id())));
    };
    let id = Similarity::identity(scene.figure.dim());
    let a = swaps.iter().find(|a| a.compose(a) == id).unwrap_or(first).clone();
    let union = Arc::new(similarity_union(&self_maps(kp, class, field)?, &self_maps(km, class, field)?)?);
    let h = &*union;
    let mut act = Vec::with_capacity(h.size());
    for e in 0..h.size() {
        let eta = h.similarity(e).expect("similarities");
        act.push(vec![e, lookup(h, &eta.conjugate_by(&a), "conjugate")?]);
    }
    let sigma = a.compose(&a);
    let s = lookup(h, &sigma, "a²")?;
    let table = vec![vec![h.unit(), h.unit()], vec![h.unit(), s]];
    let fs = FactorSet::new(GroupTable::cyclic(2), union.clone() as PgRef, act, table, depth)?;
    let product = FactorSetProduct::new(fs)?;
    let parade = parade_from_figure(&scene.figure, class)?;
    let mut psi = Vec::with_capacity(product.size());
    for e in 0..product.size() {
        let (c, eta) = product.pair(e);
        let eta = h.similarity(eta).expect("similarities");
        let g = if c == 0 { eta.clone() } else { a.compose(eta) };
        psi.push(lookup(&parade, &g, "image")?);
    }
    Ok(SwapFactorSet { product, union, swap: a, sigma, parade, psi })
}

/// V({0,1}) ⋉ (G(F₊) ∪ G(F₋)) acting through γ: F₋ → F₊, with φ(δ) = γ^δ
/// and f the inclusion.
pub struct TwoComponentSemidirect {
    pub sd: Arc<Semidirect>,
    pub gamma: Similarity,
    pub parade: Arc<ChartedPartialGroup>,
    pub phi: Vec<Elem>,
    pub f: Vec<Elem>,
}

impl TwoComponentSemidirect {
    pub fn induced(&self, depth: usize) -> Result<InducedMap, AnalysisError> {
        Ok(induced_map(&self.sd, self.parade.clone() as PgRef, &self.phi, &self.f, depth)?)
    }
}

/// `class` selects the parade: euclidean for the congruent case,
/// similarity for the similar case.
pub fn two_component_semidirect(scene: &Scene, class: TransformClass) -> Result<TwoComponentSemidirect, AnalysisError> {
    let (f1, f0) = two(scene)?;
    let field = scene.figure.field();
    let iso = TransformClass::Euclidean;
    let Some(gamma) = maps_between(f0, f1, class, field)?.into_iter().next() else {
        return Err(violation(format!("no {class} map carries {} onto {}", f0.id(), f1.id())));
    };
    let h = Arc::new(similarity_union(&self_maps(f1, iso, field)?, &self_maps(f0, iso, field)?)?);
    let v01 = Arc::new(vector_parades(&[QVector::from_ints(&[0]), QVector::from_ints(&[1])])?);
    let delta = |g: Elem| -> i64 {
        let t = &v01.similarity(g).expect("translations").translation().0[0];
        if t.is_zero() {
            0
        } else {
            i64::from(t.sign())
        }
    };
    let gi = gamma.inverse();
    let mut step = Vec::with_capacity(h.size());
    for e in 0..h.size() {
        let eta = h.similarity(e).expect("similarities");
        let mut row = Vec::with_capacity(v01.size());
        for g in 0..v01.size() {
            let to = match delta(g) {
                0 => Some(e),
                1 if h.chart_map(e, 1).is_some() => h.find_similarity(&eta.conjugate_by(&gamma)),
                -1 if h.chart_map(e, 0).is_some() => h.find_similarity(&eta.conjugate_by(&gi)),
                _ => None,
            };
            row.push(to);
        }
        step.push(row);
    }
    let act = ChainedAction::new(v01.clone() as PgRef, h.clone() as PgRef, step, "conjugation by γ")?;
    let sd = Arc::new(Semidirect::new(Arc::new(act))?);
    let parade = Arc::new(parade_from_figure(&scene.figure, class)?);
    let id = Similarity::identity(scene.figure.dim());
    let phi = (0..v01.size())
        .map(|g| {
            let s = match delta(g) {
                0 => id.clone(),
                1 => gamma.clone(),
                _ => gi.clone(),
            };
            lookup(&parade, &s, "γ power")
        })
        .collect::<Result<Vec<_>, _>>()?;
    let f = (0..h.size()).map(|e| lookup(&parade, h.similarity(e).expect("similarities"), "symmetry")).collect::<Result<_, _>>()?;
    Ok(TwoComponentSemidirect { sd, gamma, parade, phi, f })
}

/// Translated-copies data of the scene: the given shorthand, or else the
/// components recentred at their centroids when they are all translates of
/// one another.
pub fn copies_of(scene: &Scene) -> Result<TranslatedCopies, AnalysisError> {
    if let Some(c) = &scene.copies {
        return Ok(c.clone());
    }
    let comps = scene.figure.components();
    let c0 = comps[0].centroid();
    let base = comps[0].translated(&c0.neg(), "base");
    let mut offsets = Vec::new();
    for k in comps {
        let c = k.centroid();
        if !k.same_set(&base.translated(&c, "")) {
            return Err(violation(format!("{} is not a translate of {}", k.id(), comps[0].id())));
        }
        offsets.push(c);
    }
    Ok(TranslatedCopies { base, offsets })
}

fn origin_fixing(base: &Component, class: TransformClass, field: u32) -> Result<Vec<Similarity>, AnalysisError> {
    let g0 = self_maps(base, class, field)?;
    if let Some(g) = g0.iter().find(|g| !g.translation().is_zero()) {
        return Err(AnalysisError::PremiseViolation(format!("symmetry {g} of the base does not fix the origin")));
    }
    Ok(g0)
}

/// V(P) ⋉ ⋁_P G(F₀), the sim-relation on it, its quotient, the parade and
/// the map induced by φ(v) = t_v, f([x,a]) = t_x⁻¹ a t_x.
pub struct T12Parts {
    pub copies: TranslatedCopies,
    pub points: Vec<QVector>,
    pub group: GroupTable,
    pub wedge: WedgeSum,
    pub sd: Arc<Semidirect>,
    pub sim_pairs: Vec<(Elem, Elem)>,
    pub parade: Arc<ChartedPartialGroup>,
}

impl T12Parts {
    pub fn sim_congruence(&self) -> Result<Congruence, AnalysisError> {
        Ok(Congruence::from_pairs(&*self.sd, &self.sim_pairs)?)
    }

    pub fn quotient(&self, depth: usize) -> Result<Quotient, AnalysisError> {
        Ok(Quotient::new(self.sd.clone() as PgRef, self.sim_congruence()?, depth)?)
    }

    pub fn induced(&self, depth: usize) -> Result<InducedMap, AnalysisError> {
        let p = &*self.parade;
        let f_pg = self.sd.acting();
        let phi = (0..f_pg.size())
            .map(|g| {
                let v = self.vector(g);
                lookup(p, &Similarity::translation_by(&v), "translation")
            })
            .collect::<Result<Vec<_>, _>>()?;
        let (_, sims) = similarity_group("G", &self.base_symmetries()?)?;
        let h = self.sd.target();
        let mut f = Vec::with_capacity(h.size());
        for e in 0..h.size() {
            match self.wedge.locate(e) {
                None => f.push(p.unit()),
                Some((x, a)) => {
                    let x = &self.points[x];
                    let g = Similarity::translation_by(&x.neg()).compose(&sims[a]).compose(&Similarity::translation_by(x));
                    f.push(lookup(p, &g, "conjugated symmetry")?);
                }
            }
        }
        Ok(induced_map(&self.sd, self.parade.clone() as PgRef, &phi, &f, depth)?)
    }

    fn base_symmetries(&self) -> Result<Vec<Similarity>, AnalysisError> {
        self_maps(&self.copies.base, TransformClass::Euclidean, self.copies.base.field())
    }

    fn vector(&self, g: Elem) -> QVector {
        let f = self.sd.acting().as_charted().expect("vector parades are charted");
        f.similarity(g).expect("translations").translation().clone()
    }
}

pub fn t12_3_parts(scene: &Scene, depth: usize) -> Result<T12Parts, AnalysisError> {
    let copies = copies_of(scene)?;
    let field = scene.figure.field();
    let g0 = origin_fixing(&copies.base, TransformClass::Euclidean, field).map_err(|e| violation(e.to_string()))?;
    let (group, sims) = similarity_group("G(F0)", &g0)?;
    let points: Vec<QVector> = copies.offsets.iter().cloned().collect::<BTreeSet<_>>().into_iter().collect();
    let f = Arc::new(vector_parades(&points)?);
    let x = PSet::of_charts(&f);
    let (act, wedge) = action_wedge_over_fset(&group, f.clone() as PgRef, &x, depth)?;
    let sd = Arc::new(Semidirect::new(Arc::new(act))?);
    let parade = Arc::new(parade_from_figure(&scene.figure, TransformClass::Euclidean)?);
    // (v, [y, a]) with x = y − v; related when a = a′ and (x′ − x)a = y′ − y.
    let data: Vec<(QVector, Option<(Elem, QVector, QVector)>)> = (0..sd.size())
        .map(|e| {
            let (g, eta) = sd.pair(e);
            let v = f.similarity(g).expect("translations").translation().clone();
            let rest = wedge.locate(eta).map(|(yi, a)| {
                let y = points[yi].clone();
                (a, y.sub(&v), y)
            });
            (v, rest)
        })
        .collect();
    let mut sim_pairs = Vec::new();
    for i in 0..data.len() {
        for j in i + 1..data.len() {
            let related = match (&data[i], &data[j]) {
                ((v, None), (w, None)) => v == w,
                ((_, Some((a, x, y))), (_, Some((b, x2, y2)))) => a == b && sims[*a].apply(&x2.sub(x)) == y2.sub(y),
                _ => false,
            };
            if related {
                sim_pairs.push((i, j));
            }
        }
    }
    Ok(T12Parts { copies, points, group, wedge, sd, sim_pairs, parade })
}

fn sorted_classes(c: &Congruence) -> Vec<Vec<Elem>> {
    let mut v: Vec<Vec<Elem>> = c.classes().iter().map(|k| {
        let mut k = k.clone();
        k.sort_unstable();
        k
    }).collect();
    v.sort();
    v
}

/// Builds the parade side and the construction side for `thm` after
/// verifying its hypotheses on the scene.
pub fn cross_check(scene: &Scene, thm: Theorem, depth: usize) -> Result<CheckReport, AnalysisError> {
    let mut rep = CheckReport::new(thm.to_string(), &[&scene.name], depth);
    let field = scene.figure.field();
    match thm {
        Theorem::T8_4 => {
            let s = swap_factor_set(scene, depth)?;
            rep.fact("swap", &s.swap).fact("sigma_cc", &s.sigma).fact("sigma_trivial", s.sigma.is_translation() && s.sigma.translation().is_zero());
            compare(&mut rep, &s.product, &s.parade, Some(&s.psi), depth);
        }
        Theorem::T12_1 | Theorem::T12_2 => {
            let (kp, km) = two(scene)?;
            let congruent = maps_between(km, kp, TransformClass::Euclidean, field)?;
            let class = if thm == Theorem::T12_1 {
                if congruent.is_empty() {
                    return Err(violation(format!("{} and {} are not congruent", kp.id(), km.id())));
                }
                if let Some(a) = maps_between(kp, km, TransformClass::Euclidean, field)?.into_iter().find(|a| kp.same_set(&km.transformed(a, ""))) {
                    return Err(violation(format!("{a} exchanges {} and {}", kp.id(), km.id())));
                }
                TransformClass::Euclidean
            } else {
                if let Some(a) = congruent.first() {
                    return Err(violation(format!("{a} carries {} onto {}; the components are congruent", km.id(), kp.id())));
                }
                if maps_between(km, kp, TransformClass::Similarity, field)?.is_empty() {
                    return Err(violation(format!("{} and {} are not similar", kp.id(), km.id())));
                }
                TransformClass::Similarity
            };
            let t = two_component_semidirect(scene, class)?;
            let m = t.induced(depth)?;
            rep.fact("gamma", &t.gamma).fact("injective", m.injective).fact("surjective", m.surjective);
            if !(m.injective && m.surjective) {
                rep.fail(Witness::Cardinalities { left: t.sd.size(), right: t.parade.size() });
            }
            compare(&mut rep, &*t.sd, &*t.parade, Some(&m.psi), depth);
        }
        Theorem::T12_3 => {
            let parts = t12_3_parts(scene, depth)?;
            let sim = parts.sim_congruence()?;
            let m = parts.induced(depth)?;
            let same = sorted_classes(&sim) == sorted_classes(&m.congruence());
            rep.fact("semidirect_size", parts.sd.size())
                .fact("sim_classes", sim.len())
                .fact("psi_classes", m.congruence().len())
                .fact("sim_equals_psi", same)
                .fact("surjective", m.surjective);
            if !same {
                rep.fail(Witness::Cardinalities { left: sim.len(), right: m.congruence().len() });
            }
            let q = parts.quotient(depth)?;
            let qmap: Vec<Elem> = (0..q.size()).map(|c| m.psi[q.congruence().classes()[c][0]]).collect();
            compare(&mut rep, &q, &*parts.parade, Some(&qmap), depth);
        }
        Theorem::P7_6 => {
            let (kp, km) = two(scene)?;
            let class = scene.class;
            let h = similarity_union(&self_maps(kp, class, field)?, &self_maps(km, class, field)?)?;
            let p = parade_from_figure(&scene.figure, class)?;
            let f = (0..h.size()).map(|e| lookup(&p, h.similarity(e).expect("similarities"), "symmetry")).collect::<Result<Vec<_>, _>>()?;
            let map = crate::pgroup::check_map(&h, &p, &f, depth);
            let congruent = !maps_between(kp, km, class, field)?.is_empty();
            let onto = h.size() == p.size();
            rep.fact("class", class);
            rep.fact("union_size", h.size())
                .fact("parade_size", p.size())
                .fact("is_map", map.is_pass())
                .fact("congruent", congruent)
                .fact("isomorphism", onto && map.is_pass());
            if !map.is_pass() {
                rep.fail(Witness::Word { letters: Vec::new(), note: map.failures.join("; ") });
            } else if onto == congruent {
                rep.fail(Witness::Cardinalities { left: h.size(), right: p.size() });
            } else if onto {
                let iso = check_isomorphism(&h, &p, &f, depth);
                if !iso.is_pass() {
                    rep.fail(Witness::Word { letters: Vec::new(), note: iso.failures.join("; ") });
                }
            }
        }
    }
    Ok(rep)
}

/// Whether P(F) ≅ V(P) ⋉ ⋁_P G(F₀) holds without a quotient.
pub fn sdp_type_test(scene: &Scene, depth: usize) -> Result<CheckReport, AnalysisError> {
    let mut rep = CheckReport::new("sdp_type", &[&scene.name], depth);
    let copies = copies_of(scene)?;
    let field = scene.figure.field();
    let g0 = origin_fixing(&copies.base, scene.class, field)?;
    let pts: Vec<QVector> = copies.offsets.iter().cloned().collect::<BTreeSet<_>>().into_iter().collect();
    rep.fact("points", pts.len()).fact("base_symmetries", g0.len());
    if pts.len() == 1 {
        rep.fact("criterion", "single copy");
        return Ok(rep);
    }
    let global = global_group(&scene.figure, scene.class)?;
    if let Some(g) = global.iter().find(|g| !g.is_translation()) {
        rep.fact("criterion", "(1) global non-translation");
        rep.fail(Witness::Element { name: g.to_string(), note: "global symmetry that is not a translation".into() });
        return Ok(rep);
    }
    let diffs: BTreeSet<QVector> = pts.iter().flat_map(|p| pts.iter().map(move |q| q.sub(p))).filter(|v| !v.is_zero()).collect();
    let lengths_ok = diffs.iter().all(|v| diffs.iter().all(|w| v.norm2() != w.norm2() || v == w || *v == w.neg()));
    let id = Similarity::identity(scene.figure.dim());
    let fixes_ok = diffs.iter().all(|v| g0.iter().filter(|a| **a != id).all(|a| {
        let va = a.apply(v);
        va != *v && va != v.neg()
    }));
    if lengths_ok && fixes_ok {
        rep.fact("criterion", "(2) distinct lengths, no fixed difference");
        return Ok(rep);
    }
    rep.fact("criterion", "construction");
    let parts = t12_3_parts(scene, depth)?;
    compare(&mut rep, &*parts.sd, &*parts.parade, None, depth);
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::QMatrix;
    use crate::scenes::builtin_scene;

    fn scene(n: &str) -> Scene {
        builtin_scene(n).unwrap()
    }

    #[test]
    fn swap_triangles_match_factor_set_product() {
        let rep = cross_check(&scene("two_triangles_swap"), Theorem::T8_4, 4).unwrap();
        assert!(rep.is_pass(), "{rep}");
        assert_eq!(rep.get("parade_size"), Some("6"));
        assert_eq!(rep.get("sigma_trivial"), Some("true"));
    }

    #[test]
    fn prisms_need_a_twisted_factor_set() {
        let s = swap_factor_set(&scene("prisms_3d"), 4).unwrap();
        assert_eq!(s.sigma.linear(), &QMatrix::from_int_rows(&[&[-1, 0, 0], &[0, -1, 0], &[0, 0, 1]]));
        assert!(s.sigma.translation().is_zero());
        let rep = cross_check(&scene("prisms_3d"), Theorem::T8_4, 4).unwrap();
        assert!(rep.is_pass(), "{rep}");
    }

    #[test]
    fn noswap_pair_is_v01_semidirect() {
        let s = scene("two_triangles_noswap");
        let rep = cross_check(&s, Theorem::T12_1, 4).unwrap();
        assert!(rep.is_pass(), "{rep}");
        assert_eq!(rep.get("parade_size"), Some("3"));
        assert!(matches!(cross_check(&s, Theorem::T8_4, 4), Err(AnalysisError::HypothesisViolation(_))));
        assert!(matches!(cross_check(&s, Theorem::T12_2, 4), Err(AnalysisError::HypothesisViolation(_))));
    }

    #[test]
    fn similar_squares_are_v01_semidirect() {
        let s = scene("similar_squares");
        let rep = cross_check(&s, Theorem::T12_2, 4).unwrap();
        assert!(rep.is_pass(), "{rep}");
        assert_eq!(rep.get("parade_size"), Some("31"));
        let e = parade_from_figure(&s.figure, TransformClass::Euclidean).unwrap();
        assert_eq!(e.size(), 15);
    }

    #[test]
    fn union_embeds_in_parade() {
        let sq = scene("similar_squares");
        for (s, cong) in [
            (sq.clone().with_class(TransformClass::Euclidean), "false"),
            (sq, "true"),
            (scene("two_disks_k4"), "true"),
            (scene("disk_satellite"), "false"),
        ] {
            let n = s.name.clone();
            let rep = cross_check(&s, Theorem::P7_6, 3).unwrap();
            assert!(rep.is_pass(), "{n}: {rep}");
            assert_eq!(rep.get("congruent"), Some(cong));
        }
    }

    #[test]
    fn fig7_is_sdp() {
        let s = scene("fig7_sdp");
        let rep = sdp_type_test(&s, 3).unwrap();
        assert!(rep.is_pass(), "{rep}");
        assert!(rep.get("criterion").unwrap().starts_with("(2)"));
        let parts = t12_3_parts(&s, 3).unwrap();
        assert_eq!(parts.sd.size(), 52);
        assert_eq!(parts.parade.size(), 52);
    }

    #[test]
    fn six_coins_quotient_matches_parade() {
        let rep = cross_check(&scene("six_coins_c4"), Theorem::T12_3, 3).unwrap();
        assert!(rep.is_pass(), "{rep}");
        assert_eq!(rep.get("parade_size"), Some("62"));
        assert_eq!(rep.get("construction_size"), Some("62"));
        assert_eq!(rep.get("sim_equals_psi"), Some("true"));
    }

    #[test]
    fn six_coins_not_sdp() {
        let rep = sdp_type_test(&scene("six_coins_c4"), 3).unwrap();
        assert!(!rep.is_pass());
        assert!(rep.get("criterion").unwrap().starts_with("(1)"));
    }

    #[test]
    fn premise_violation_off_origin() {
        let mut s = scene("fig7_sdp");
        let c = s.copies.as_mut().unwrap();
        c.base = c.base.translated(&QVector::from_ints(&[1, 0]), "tri");
        assert!(matches!(sdp_type_test(&s, 3), Err(AnalysisError::PremiseViolation(_))));
    }

    #[test]
    fn copies_inferred() {
        let s = scene("six_coins_c4");
        let bare = Scene::new("bare", s.class, s.figure.components().to_vec(), 0).unwrap();
        let c = copies_of(&bare).unwrap();
        assert_eq!(c.offsets.len(), 6);
        assert!(copies_of(&scene("similar_squares")).is_err());
    }
}
