//! Composite checks on scenes and partial groups: group recognition, the
//! conditions for P = G, wedge decompositions, SDP type and the theorem
//! cross-checks.

use std::collections::BTreeMap;
use thiserror::Error;

use crate::constructions::{parade_from_figure, similarity_union, wedge, ConstructionError, GroupTable};
use crate::geometry::{global_group, maps_between, Figure, GeometryError, Similarity, TransformClass};
use crate::pgroup::{
    check_isomorphism, effective_depth, for_each_word, normalizer, word_names, Elem, PartialGroup, PgError,
};
use crate::scenes::Scene;

mod report;
mod theorems;

pub use report::{CheckReport, Fact, Verdict, Witness};
pub use theorems::{
    copies_of, cross_check, sdp_type_test, swap_factor_set, t12_3_parts, two_component_semidirect, SwapFactorSet,
    T12Parts, Theorem, TwoComponentSemidirect,
};

#[derive(Debug, Error)]
pub enum AnalysisError {
    #[error("HypothesisViolation: {0}")]
    HypothesisViolation(String),
    #[error("PremiseViolation: {0}")]
    PremiseViolation(String),
    #[error(transparent)]
    Construction(#[from] ConstructionError),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error(transparent)]
    Pg(#[from] PgError),
}

/// First word w (|w| < depth) and letter e with w·e not a word.
pub fn group_witness(pg: &dyn PartialGroup, depth: usize) -> Option<Vec<Elem>> {
    if depth < 2 {
        return None;
    }
    let mut out = None;
    let n = pg.size();
    let check = |w: &[Elem], out: &mut Option<Vec<Elem>>| {
        let ext = pg.extensions(w);
        if ext.len() < n {
            let missing = (0..n).find(|e| ext.binary_search(e).is_err()).expect("some letter is missing");
            let mut x = w.to_vec();
            x.push(missing);
            *out = Some(x);
            return false;
        }
        true
    };
    for len in 1..effective_depth(pg, depth) {
        for_each_word(pg, len, |w| w.len() < len || check(w, &mut out));
        if out.is_some() {
            break;
        }
    }
    out
}

/// P_n = E^n for every n ≤ depth.
pub fn is_group(pg: &dyn PartialGroup, depth: usize) -> bool {
    group_witness(pg, depth).is_none()
}

/// The finite group formed by a set of similarities, identity first and
/// the rest sorted; names `1`, `a1`, `a2`, ….
pub fn similarity_group(name: &str, elems: &[Similarity]) -> Result<(GroupTable, Vec<Similarity>), ConstructionError> {
    let Some(first) = elems.first() else {
        return Err(ConstructionError::InvalidGroup("empty set".into()));
    };
    let id = Similarity::identity(first.dim());
    let mut sorted: Vec<Similarity> = elems.iter().filter(|g| **g != id).cloned().collect();
    sorted.sort();
    sorted.dedup();
    sorted.insert(0, id);
    let index: BTreeMap<&Similarity, Elem> = sorted.iter().enumerate().map(|(i, g)| (g, i)).collect();
    let mut table = Vec::new();
    for a in &sorted {
        let row = sorted
            .iter()
            .map(|b| index.get(&a.compose(b)).copied())
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| ConstructionError::InvalidGroup(format!("{name} is not closed")))?;
        table.push(row);
    }
    let names = (0..sorted.len()).map(|i| if i == 0 { "1".to_string() } else { format!("a{i}") }).collect();
    Ok((GroupTable::from_table(name, names, table)?, sorted))
}

fn subjects(scene: &Scene) -> Vec<&str> {
    vec![scene.name.as_str()]
}

/// Conditions (i) and (ii) for P(F) = G(F), compared with P(F)₁ = G(F) as
/// sets and with the group test on the parade.
pub fn p_equals_g_conditions(fig: &Figure, class: TransformClass, name: &str, depth: usize) -> Result<CheckReport, AnalysisError> {
    let mut rep = CheckReport::new("p_equals_g", &[name], depth);
    let comps = fig.components();
    let field = fig.field();
    let global = global_group(fig, class)?;
    let mut cond_i = None;
    'outer: for k in comps {
        for l in comps {
            if maps_between(k, l, class, field)?.is_empty() {
                continue;
            }
            if !global.iter().any(|g| l.same_set(&k.transformed(g, ""))) {
                cond_i = Some(format!("{} can be carried onto {} but no global symmetry does so", k.id(), l.id()));
                break 'outer;
            }
        }
    }
    let mut cond_ii = None;
    for k in comps {
        if let Some(g) = maps_between(k, k, class, field)?.into_iter().find(|g| !global.contains(g)) {
            cond_ii = Some((k.id().to_string(), g));
            break;
        }
    }
    let p = parade_from_figure(fig, class)?;
    let grp = is_group(&p, depth);
    rep.fact("condition_i", cond_i.is_none())
        .fact("condition_ii", cond_ii.is_none())
        .fact("is_group", grp)
        .fact("parade_size", p.size())
        .fact("global_size", global.len());
    if let Some(m) = &cond_i {
        rep.fail(Witness::Element { name: "(i)".into(), note: m.clone() });
    }
    if let Some((k, g)) = &cond_ii {
        rep.fail(Witness::Element { name: g.to_string(), note: format!("stabilizes {k} but is not global") });
    }
    let both = cond_i.is_none() && cond_ii.is_none();
    let equal = p.size() == global.len() && global.iter().all(|g| p.find_similarity(g).is_some());
    rep.fact("parade_equals_global", equal);
    if both != equal || (equal && !grp) {
        let w = group_witness(&p, depth).map(|w| word_names(&p, &w)).unwrap_or_default();
        rep.fail(Witness::Word { letters: w, note: "conditions (i), (ii) disagree with the group test".into() });
    }
    Ok(rep)
}

/// Splits the nontrivial elements into blocks closed under length-2
/// composability and returns the blocks when each is a group and pg is
/// their wedge sum.
pub fn wedge_decompose(pg: &dyn PartialGroup, depth: usize) -> Option<Vec<GroupTable>> {
    let n = pg.size();
    let u = pg.unit();
    if n == 1 {
        return Some(Vec::new());
    }
    let mut parent: Vec<usize> = (0..n).collect();
    fn root(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        p[x] = r;
        r
    }
    for a in (0..n).filter(|&a| a != u) {
        for b in (0..n).filter(|&b| b != u && b > a) {
            if pg.is_word(&[a, b]) || pg.is_word(&[b, a]) {
                let (ra, rb) = (root(&mut parent, a), root(&mut parent, b));
                parent[ra.max(rb)] = ra.min(rb);
            }
        }
    }
    let mut blocks: BTreeMap<usize, Vec<Elem>> = BTreeMap::new();
    for e in (0..n).filter(|&e| e != u) {
        let r = root(&mut parent, e);
        blocks.entry(r).or_default().push(e);
    }
    let mut groups = Vec::new();
    let mut place = vec![(usize::MAX, 0); n];
    for (i, block) in blocks.values().enumerate() {
        let mut elems = vec![u];
        elems.extend(block);
        let pos: BTreeMap<Elem, usize> = elems.iter().enumerate().map(|(k, &e)| (e, k)).collect();
        let mut table = Vec::new();
        for &x in &elems {
            let row = elems.iter().map(|&y| pg.nabla(&[x, y]).and_then(|z| pos.get(&z).copied())).collect::<Option<Vec<_>>>()?;
            table.push(row);
        }
        let names = elems.iter().map(|&e| pg.name(e)).collect();
        groups.push(GroupTable::from_table(format!("B{i}"), names, table).ok()?);
        for (k, &e) in elems.iter().enumerate().skip(1) {
            place[e] = (i, k);
        }
    }
    let ws = wedge(&groups);
    let map: Vec<Elem> = (0..n).map(|e| if e == u { 0 } else { ws.elem(place[e].0, place[e].1) }).collect();
    check_isomorphism(pg, &ws.pg, &map, depth).is_pass().then_some(groups)
}

/// G(F) ≤ N(P(F)), and G₊ ∩ G₋ ≤ N(G₊ ∪ G₋) for every pair of components.
pub fn normalizer_containments(scene: &Scene, depth: usize) -> Result<CheckReport, AnalysisError> {
    let (fig, class) = (&scene.figure, scene.class);
    let mut rep = CheckReport::new("normalizer_containments", &subjects(scene), depth);
    let p = parade_from_figure(fig, class)?;
    let np = normalizer(&p, depth)?;
    let global = global_group(fig, class)?;
    for g in &global {
        match p.find_similarity(g) {
            Some(e) if np.binary_search(&e).is_ok() => {}
            _ => rep.fail(Witness::Element { name: g.to_string(), note: "global symmetry outside N(P(F))".into() }),
        }
    }
    rep.fact("global_size", global.len()).fact("normalizer_size", np.len());
    let comps = fig.components();
    let mut pairs = 0;
    for (i, k) in comps.iter().enumerate() {
        for l in &comps[i + 1..] {
            let gk = maps_between(k, k, class, fig.field())?;
            let gl = maps_between(l, l, class, fig.field())?;
            let h = similarity_union(&gk, &gl)?;
            let nh = normalizer(&h, depth)?;
            for e in 0..h.size() {
                if h.chart_map(e, 0).is_some() && h.chart_map(e, 1).is_some() && nh.binary_search(&e).is_err() {
                    rep.fail(Witness::Element {
                        name: h.similarity(e).map(|s| s.to_string()).unwrap_or_default(),
                        note: format!("in G({}) ∩ G({}) but outside N(G₊ ∪ G₋)", k.id(), l.id()),
                    });
                }
            }
            pairs += 1;
        }
    }
    rep.fact("pairs_checked", pairs);
    Ok(rep)
}

/// P(Fa) ≅ P(F) through π ↦ a⁻¹πa.
pub fn conjugation_invariance(scene: &Scene, a: &Similarity, depth: usize) -> Result<CheckReport, AnalysisError> {
    let mut rep = CheckReport::new("conjugation_invariance", &subjects(scene), depth);
    let p = parade_from_figure(&scene.figure, scene.class)?;
    let moved = scene.figure.transformed(a);
    let pa = parade_from_figure(&moved, scene.class)?;
    rep.fact("size", p.size()).fact("moved_size", pa.size()).fact("isometry", a);
    if p.size() != pa.size() {
        rep.fail(Witness::Cardinalities { left: p.size(), right: pa.size() });
        return Ok(rep);
    }
    let mut map = Vec::with_capacity(p.size());
    for e in 0..p.size() {
        let g = p.similarity(e).expect("parades carry similarities").conjugate_by(a);
        match pa.find_similarity(&g) {
            Some(x) => map.push(x),
            None => {
                rep.fail(Witness::Element { name: p.name(e), note: "conjugate is not in the moved parade".into() });
                return Ok(rep);
            }
        }
    }
    let m = check_isomorphism(&p, &pa, &map, depth);
    if !m.is_pass() {
        rep.fail(Witness::Element { name: "π ↦ a⁻¹πa".into(), note: m.failures.join("; ") });
    }
    Ok(rep)
}

/// When every two components are congruent or not similar at all, the
/// similarity parade and the euclidean parade have the same elements.
/// `None` when the hypothesis fails.
pub fn similarity_coincidence(fig: &Figure) -> Result<Option<bool>, AnalysisError> {
    let comps = fig.components();
    for k in comps {
        for l in comps {
            let sim = maps_between(k, l, TransformClass::Similarity, fig.field())?;
            if !sim.is_empty() && maps_between(k, l, TransformClass::Euclidean, fig.field())?.is_empty() {
                return Ok(None);
            }
        }
    }
    let a = parade_from_figure(fig, TransformClass::Similarity)?;
    let b = parade_from_figure(fig, TransformClass::Euclidean)?;
    let same = a.size() == b.size() && (0..a.size()).all(|e| b.find_similarity(a.similarity(e).expect("similarities")).is_some());
    Ok(Some(same))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::wedge as wedge_of;
    use crate::pgroup::iso_search;
    use crate::scenes::builtin_scene;

    fn g(name: &str) -> GroupTable {
        GroupTable::builtin(name).unwrap()
    }

    #[test]
    fn groups_and_wedges() {
        assert!(is_group(&g("D4").as_partial_group(), 4));
        let w = wedge_of(&[g("C2"), g("C3")]);
        let wit = group_witness(&w.pg, 4).unwrap();
        assert_eq!(wit.len(), 2);
        assert!(!w.pg.is_word(&wit));
    }

    #[test]
    fn decompose_recovers_summands() {
        let parts = [g("D3"), g("D4"), g("C2")];
        let w = wedge_of(&parts);
        let blocks = wedge_decompose(&w.pg, 4).unwrap();
        assert_eq!(blocks.len(), 3);
        for (b, p) in blocks.iter().zip(&parts) {
            assert!(iso_search(&b.as_partial_group(), &p.as_partial_group(), 3).is_some());
        }
        assert_eq!(wedge_decompose(&g("S3").as_partial_group(), 4).unwrap().len(), 1);
    }

    #[test]
    fn decompose_three_polygons() {
        let s = builtin_scene("three_polygons").unwrap();
        let p = parade_from_figure(&s.figure, s.class).unwrap();
        assert_eq!(p.size(), 24);
        let mut sizes: Vec<usize> = wedge_decompose(&p, 3).unwrap().iter().map(|b| b.size()).collect();
        sizes.sort();
        assert_eq!(sizes, vec![6, 8, 12]);
    }

    #[test]
    fn decompose_rejects_non_wedges() {
        let s = builtin_scene("two_disks_k4").unwrap();
        let p = parade_from_figure(&s.figure, s.class).unwrap();
        assert!(wedge_decompose(&p, 3).is_none());
    }

    #[test]
    fn p_equals_g_examples() {
        for (name, pass) in [("one_square", true), ("concentric", true), ("two_disks_k4", false), ("disk_satellite", false)] {
            let s = builtin_scene(name).unwrap();
            let rep = p_equals_g_conditions(&s.figure, s.class, name, 4).unwrap();
            assert_eq!(rep.is_pass(), pass, "{name}: {rep}");
            assert_eq!(rep.get("parade_equals_global"), Some(if pass { "true" } else { "false" }));
            assert_eq!(rep.witness.is_some(), !pass);
        }
        let s = builtin_scene("two_disks_k4").unwrap();
        let rep = p_equals_g_conditions(&s.figure, s.class, "k4", 4).unwrap();
        assert_eq!(rep.get("condition_i"), Some("true"));
        assert_eq!(rep.get("condition_ii"), Some("false"));
        assert_eq!(rep.get("is_group"), Some("false"));
        // the parade of a disk with an asymmetric satellite is abstractly D4
        let s = builtin_scene("disk_satellite").unwrap();
        let rep = p_equals_g_conditions(&s.figure, s.class, "sat", 4).unwrap();
        assert_eq!(rep.get("is_group"), Some("true"));
        assert_eq!(rep.get("global_size"), Some("1"));
    }

    #[test]
    fn containments_on_two_disks() {
        let s = builtin_scene("two_disks_k4").unwrap();
        let rep = normalizer_containments(&s, 3).unwrap();
        assert!(rep.is_pass(), "{rep}");
        assert_eq!(rep.get("global_size"), Some("4"));
    }

    #[test]
    fn similarity_group_table() {
        let s = builtin_scene("one_square").unwrap();
        let k = &s.figure.components()[0];
        let (t, elems) = similarity_group("G", &maps_between(k, k, TransformClass::Euclidean, 0).unwrap()).unwrap();
        assert_eq!(t.size(), 8);
        assert!(elems[0].is_translation());
        assert!(iso_search(&t.as_partial_group(), &g("D4").as_partial_group(), 3).is_some());
    }
}
