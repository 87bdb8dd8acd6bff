use std::collections::{BTreeSet, HashMap};

use super::{ConstructionError, GroupTable};
use crate::geometry::{maps_between, Figure, Similarity, TransformClass};
use crate::linalg::QVector;
use crate::pgroup::{Ambient, ChartedPartialGroup, Elem};

/// Unit first, then the rest in their natural order.
fn unit_first<T: Ord + Clone>(set: BTreeSet<T>, unit: &T) -> Vec<T> {
    let mut out = vec![unit.clone()];
    out.extend(set.into_iter().filter(|g| g != unit));
    out
}

/// Charted realization of a set of similarities acting on chart values.
fn from_similarities(
    elems: Vec<Similarity>,
    names: Vec<String>,
    charts: Vec<String>,
    maps: Vec<Vec<Option<usize>>>,
) -> Result<ChartedPartialGroup, ConstructionError> {
    let index: HashMap<&Similarity, Elem> = elems.iter().enumerate().map(|(i, g)| (g, i)).collect();
    let inverse = elems
        .iter()
        .map(|g| index.get(&g.inverse()).copied())
        .collect::<Option<Vec<_>>>()
        .ok_or_else(|| ConstructionError::InvalidAction("element set not closed under inverse".into()))?;
    let pg = ChartedPartialGroup::build(names, 0, inverse, charts, maps, |a, b| {
        index.get(&elems[a].compose(&elems[b])).copied()
    })?;
    Ok(pg.with_ambient(Ambient::Similarities(elems))?)
}

/// P(F): every transformation in `class` carrying a component onto a
/// component, with the charts the components.
pub fn parade_from_figure(fig: &Figure, class: TransformClass) -> Result<ChartedPartialGroup, ConstructionError> {
    let comps = fig.components();
    let mut set = BTreeSet::new();
    for k in comps {
        for l in comps {
            set.extend(maps_between(k, l, class, fig.field())?);
        }
    }
    let elems = unit_first(set, &Similarity::identity(fig.dim()));
    let maps = elems
        .iter()
        .map(|g| comps.iter().map(|k| fig.find_component(&k.transformed(g, ""))).collect())
        .collect();
    let names = (0..elems.len()).map(|i| if i == 0 { "1".to_string() } else { format!("g{i}") }).collect();
    let charts = comps.iter().map(|k| k.id().to_string()).collect();
    from_similarities(elems, names, charts, maps)
}

/// V(P): difference vectors of P acting on P by translation.
pub fn vector_parades(points: &[QVector]) -> Result<ChartedPartialGroup, ConstructionError> {
    let Some(first) = points.first() else {
        return Err(ConstructionError::InvalidAction("empty point set".into()));
    };
    let d = first.dim();
    let pts: Vec<QVector> = points.iter().cloned().collect::<BTreeSet<_>>().into_iter().collect();
    let diffs: BTreeSet<QVector> = pts.iter().flat_map(|p| pts.iter().map(move |q| q.sub(p))).collect();
    let vs = unit_first(diffs, &QVector::zero(d));
    let maps = vs.iter().map(|v| pts.iter().map(|p| pts.binary_search(&p.add(v)).ok()).collect()).collect();
    let names = vs.iter().map(|v| v.to_string()).collect();
    let charts = pts.iter().map(|p| p.to_string()).collect();
    from_similarities(vs.iter().map(Similarity::translation_by).collect(), names, charts, maps)
}

/// P(X) for X ⊆ X₀ with G₀ acting on X₀ on the right (`act[x][g]`).
pub fn parade_from_group_action(
    g0: &GroupTable,
    act: &[Vec<usize>],
    x: &[usize],
) -> Result<ChartedPartialGroup, ConstructionError> {
    let n0 = act.len();
    let bad = |m: String| Err(ConstructionError::InvalidAction(m));
    if act.iter().any(|row| row.len() != g0.size() || row.iter().any(|&y| y >= n0)) {
        return bad("action table has the wrong shape".into());
    }
    for p in 0..n0 {
        if act[p][g0.unit()] != p {
            return bad(format!("the unit moves point {p}"));
        }
        for a in 0..g0.size() {
            for b in 0..g0.size() {
                if act[act[p][a]][b] != act[p][g0.mul(a, b)] {
                    return bad(format!("point {p}: acting by {} then {} differs from their product", g0.element_name(a), g0.element_name(b)));
                }
            }
        }
    }
    let xs: Vec<usize> = x.iter().copied().collect::<BTreeSet<_>>().into_iter().collect();
    if xs.iter().any(|&p| p >= n0) || xs.is_empty() {
        return bad("subset is empty or out of range".into());
    }
    let pos = |p: usize| xs.binary_search(&p).ok();
    let elems: Vec<Elem> = (0..g0.size()).filter(|&g| xs.iter().any(|&p| pos(act[p][g]).is_some())).collect();
    let index: HashMap<Elem, Elem> = elems.iter().enumerate().map(|(i, &g)| (g, i)).collect();
    let maps = elems.iter().map(|&g| xs.iter().map(|&p| pos(act[p][g])).collect()).collect();
    let pg = ChartedPartialGroup::build(
        elems.iter().map(|&g| g0.element_name(g).to_string()).collect(),
        index[&g0.unit()],
        elems.iter().map(|&g| index[&g0.inverse(g)]).collect(),
        xs.iter().map(|p| p.to_string()).collect(),
        maps,
        |a, b| index.get(&g0.mul(elems[a], elems[b])).copied(),
    )?;
    Ok(pg.with_ambient(Ambient::Labels(elems.iter().map(|&g| g0.element_name(g).to_string()).collect()))?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::QuadScalar;
    use crate::geometry::Component;
    use crate::pgroup::{validate_axioms, word_counts, PartialGroup};

    fn v(x: &[i64]) -> QVector {
        QVector::from_ints(x)
    }

    fn square(cx: i64, id: &str) -> Component {
        Component::unlabeled(id, vec![v(&[cx, 1]), v(&[cx - 1, 0]), v(&[cx, -1]), v(&[cx + 1, 0])]).unwrap()
    }

    #[test]
    fn one_square_is_d4() {
        let fig = Figure::new(vec![square(0, "K")], 0).unwrap();
        let p = parade_from_figure(&fig, TransformClass::Euclidean).unwrap();
        assert_eq!(p.size(), 8);
        assert_eq!(word_counts(&p, 3), vec![8, 64, 512]);
    }

    #[test]
    fn two_squares_give_28() {
        let fig = Figure::new(vec![square(-2, "A"), square(2, "B")], 0).unwrap();
        let p = parade_from_figure(&fig, TransformClass::Euclidean).unwrap();
        assert_eq!(p.size(), 28);
        assert!(validate_axioms(&p, 3).is_pass());
    }

    #[test]
    fn vector_parades_01() {
        let p = vector_parades(&[v(&[0]), v(&[1])]).unwrap();
        assert_eq!(p.size(), 3);
        assert_eq!(p.name(0), "(0)");
        // (1, -1, 1) is a parade: 0 → 1 → 0 → 1
        let one = p.index_of("(1)").unwrap();
        let minus = p.index_of("(-1)").unwrap();
        assert_eq!(p.nabla(&[one, minus, one]), Some(one));
        assert!(!p.is_word(&[one, one]));
        assert!(validate_axioms(&p, 4).is_pass());
    }

    #[test]
    fn vector_parades_grid_and_point() {
        let grid: Vec<QVector> = (0..3).flat_map(|x| (0..2).map(move |y| v(&[x, y]))).collect();
        assert_eq!(vector_parades(&grid).unwrap().size(), 15);
        assert_eq!(vector_parades(&[v(&[5, 5])]).unwrap().size(), 1);
        let half = QVector(vec![QuadScalar::ratio(1, 2)]);
        assert_eq!(vector_parades(&[half, v(&[0])]).unwrap().size(), 3);
    }

    #[test]
    fn conjugation_parade_of_s3() {
        let s3 = GroupTable::symmetric(3);
        let conj: Vec<Vec<usize>> =
            (0..6).map(|x| (0..6).map(|g| s3.mul(s3.mul(s3.inverse(g), x), g)).collect()).collect();
        let t = s3.index_of("(1 2)").unwrap();
        let p = parade_from_group_action(&s3, &conj, &[s3.unit(), t]).unwrap();
        assert_eq!(p.size(), 6);
        assert!(validate_axioms(&p, 3).is_pass());
    }

    #[test]
    fn fixed_point_gives_stabilizer() {
        let s3 = GroupTable::symmetric(3);
        let perms: Vec<Vec<usize>> = (0..3).map(|p| (0..6).map(|g| point_image(&s3, p, g)).collect()).collect();
        let p = parade_from_group_action(&s3, &perms, &[2]).unwrap();
        assert_eq!(p.size(), 2);
        let all = parade_from_group_action(&s3, &perms, &[0, 1, 2]).unwrap();
        assert_eq!(word_counts(&all, 2), vec![6, 36]);
    }

    fn point_image(s3: &GroupTable, p: usize, g: usize) -> usize {
        // recover the permutation from cycle notation
        let name = s3.element_name(g);
        for cyc in name.split(')').filter(|c| c.len() > 1) {
            let pts: Vec<usize> = cyc.trim_start_matches('(').split(' ').map(|s| s.parse::<usize>().unwrap() - 1).collect();
            if let Some(i) = pts.iter().position(|&q| q == p) {
                return pts[(i + 1) % pts.len()];
            }
        }
        p
    }

    #[test]
    fn bad_action_rejected() {
        let c2 = GroupTable::cyclic(2);
        assert!(parade_from_group_action(&c2, &[vec![0, 0], vec![1, 0]], &[0]).is_err());
    }
}
