use std::collections::{BTreeMap, BTreeSet};

use super::{ConstructionError, GroupTable};
use crate::geometry::Similarity;
use crate::pgroup::{Ambient, ChartedPartialGroup, Elem};

/// ⋁_λ G_λ together with the position of each summand element.
#[derive(Clone, Debug)]
pub struct WedgeSum {
    pub pg: ChartedPartialGroup,
    parts: Vec<GroupTable>,
    offset: Vec<usize>,
}

impl WedgeSum {
    pub fn parts(&self) -> &[GroupTable] {
        &self.parts
    }

    /// [λ, a]; every unit goes to the shared unit.
    pub fn elem(&self, lambda: usize, a: Elem) -> Elem {
        summand_elem(&self.parts, &self.offset, lambda, a)
    }

    /// (λ, a) for a nontrivial element, `None` for the unit.
    pub fn locate(&self, e: Elem) -> Option<(usize, Elem)> {
        if e == 0 {
            return None;
        }
        let lambda = self.offset.partition_point(|&o| o <= e) - 1;
        let g = &self.parts[lambda];
        let k = e - self.offset[lambda];
        Some((lambda, if k >= g.unit() { k + 1 } else { k }))
    }
}

/// Wedge sum with charts named 0, 1, ….
pub fn wedge(summands: &[GroupTable]) -> WedgeSum {
    let names: Vec<String> = (0..summands.len()).map(|i| i.to_string()).collect();
    wedge_named(summands, &names)
}

/// Wedge sum over the given chart names; element names are `λ:a`.
pub fn wedge_named(summands: &[GroupTable], charts: &[String]) -> WedgeSum {
    assert_eq!(summands.len(), charts.len());
    let offset = offsets(summands);
    let at = |l: usize, a: Elem| summand_elem(summands, &offset, l, a);
    let mut names = vec!["1".to_string()];
    let mut owner = vec![None];
    for (l, g) in summands.iter().enumerate() {
        for a in (0..g.size()).filter(|&a| a != g.unit()) {
            names.push(format!("{}:{}", charts[l], g.element_name(a)));
            owner.push(Some((l, a)));
        }
    }
    let maps = owner
        .iter()
        .map(|o| match o {
            None => (0..charts.len()).map(Some).collect(),
            Some((l, _)) => (0..charts.len()).map(|x| (x == *l).then_some(x)).collect(),
        })
        .collect();
    let inverse = owner.iter().map(|o| o.map_or(0, |(l, a)| at(l, summands[l].inverse(a)))).collect();
    let pg = ChartedPartialGroup::build(names.clone(), 0, inverse, charts.to_vec(), maps, |a, b| match (owner[a], owner[b]) {
        (None, _) => Some(b),
        (_, None) => Some(a),
        (Some((l, x)), Some((m, y))) if l == m => Some(at(l, summands[l].mul(x, y))),
        _ => None,
    })
    .expect("wedge sums are partial groups")
    .with_ambient(Ambient::Labels(names))
    .expect("labels");
    WedgeSum { pg, parts: summands.to_vec(), offset }
}

fn offsets(summands: &[GroupTable]) -> Vec<usize> {
    let mut out = Vec::new();
    let mut k = 1;
    for g in summands {
        out.push(k);
        k += g.size() - 1;
    }
    out
}

fn summand_elem(summands: &[GroupTable], offset: &[usize], l: usize, a: Elem) -> Elem {
    let g = &summands[l];
    if a == g.unit() {
        0
    } else {
        offset[l] + a - usize::from(a > g.unit())
    }
}

/// Union of two subgroups of an ambient set of values, with charts + and −.
fn union_of<T: Ord + Clone>(
    unit: &T,
    plus: &[T],
    minus: &[T],
    mul: impl Fn(&T, &T) -> T,
    inv: impl Fn(&T) -> T,
    label: impl Fn(usize, &T) -> String,
) -> Result<(ChartedPartialGroup, Vec<T>), ConstructionError> {
    let closed = |s: &BTreeSet<T>| s.contains(unit) && s.iter().all(|a| s.contains(&inv(a)) && s.iter().all(|b| s.contains(&mul(a, b))));
    let sp: BTreeSet<T> = plus.iter().cloned().collect();
    let sm: BTreeSet<T> = minus.iter().cloned().collect();
    for (s, tag) in [(&sp, "+"), (&sm, "-")] {
        if !closed(s) {
            return Err(ConstructionError::NotASubgroup(format!("the {tag} set is not a subgroup")));
        }
    }
    let mut elems = vec![unit.clone()];
    elems.extend(sp.union(&sm).filter(|&g| g != unit).cloned());
    let index: BTreeMap<&T, Elem> = elems.iter().enumerate().map(|(i, g)| (g, i)).collect();
    let maps = elems.iter().map(|g| vec![sp.contains(g).then_some(0), sm.contains(g).then_some(1)]).collect();
    let pg = ChartedPartialGroup::build(
        elems.iter().enumerate().map(|(i, g)| label(i, g)).collect(),
        0,
        elems.iter().map(|g| index[&inv(g)]).collect(),
        vec!["+".into(), "-".into()],
        maps,
        |a, b| index.get(&mul(&elems[a], &elems[b])).copied(),
    )?;
    Ok((pg, elems))
}

/// G₊ ∪ G₋ inside G₀, words confined to one of the subgroups.
pub fn union_in_ambient(g0: &GroupTable, plus: &[Elem], minus: &[Elem]) -> Result<ChartedPartialGroup, ConstructionError> {
    if plus.iter().chain(minus).any(|&e| e >= g0.size()) {
        return Err(ConstructionError::NotASubgroup("element out of range".into()));
    }
    let (pg, elems) = union_of(
        &g0.unit(),
        plus,
        minus,
        |&a, &b| g0.mul(a, b),
        |&a| g0.inverse(a),
        |_, &a| g0.element_name(a).to_string(),
    )?;
    Ok(pg.with_ambient(Ambient::Labels(elems.iter().map(|&e| g0.element_name(e).to_string()).collect()))?)
}

/// G₊ ∪ G₋ for two finite groups of similarities.
pub fn similarity_union(plus: &[Similarity], minus: &[Similarity]) -> Result<ChartedPartialGroup, ConstructionError> {
    let Some(first) = plus.first().or(minus.first()) else {
        return Err(ConstructionError::NotASubgroup("empty".into()));
    };
    let unit = Similarity::identity(first.dim());
    let (pg, elems) = union_of(&unit, plus, minus, |a, b| a.compose(b), Similarity::inverse, |i, _| {
        if i == 0 {
            "1".into()
        } else {
            format!("h{i}")
        }
    })?;
    Ok(pg.with_ambient(Ambient::Similarities(elems))?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pgroup::{validate_axioms, PartialGroup};

    fn groups(names: &[&str]) -> Vec<GroupTable> {
        names.iter().map(|n| GroupTable::builtin(n).unwrap()).collect()
    }

    #[test]
    fn wedge_sizes() {
        assert_eq!(wedge(&groups(&["D3", "D4", "D4", "D5"])).pg.size(), 29);
        assert_eq!(wedge(&groups(&["D3", "D3", "D4", "D6"])).pg.size(), 29);
        assert_eq!(wedge(&groups(&["1", "1"])).pg.size(), 1);
    }

    #[test]
    fn wedge_words_stay_in_one_summand() {
        let w = wedge(&groups(&["C3", "C2"]));
        let (a, b) = (w.elem(0, 1), w.elem(1, 1));
        assert!(w.pg.is_word(&[a, a, 0, a]));
        assert!(!w.pg.is_word(&[a, b]));
        assert_eq!(w.pg.nabla(&[a, a, a]), Some(0));
        assert!(validate_axioms(&w.pg, 4).is_pass());
    }

    #[test]
    fn locate_inverts_elem() {
        let w = wedge(&groups(&["D3", "C4", "S3"]));
        for (l, g) in w.parts().iter().enumerate() {
            for a in (0..g.size()).filter(|&a| a != g.unit()) {
                assert_eq!(w.locate(w.elem(l, a)), Some((l, a)));
            }
        }
        assert_eq!(w.locate(0), None);
    }

    #[test]
    fn union_in_s3() {
        let s3 = GroupTable::symmetric(3);
        let t12 = s3.generated(&[s3.index_of("(1 2)").unwrap()]);
        let t13 = s3.generated(&[s3.index_of("(1 3)").unwrap()]);
        let u = union_in_ambient(&s3, &t12, &t13).unwrap();
        assert_eq!(u.size(), 3);
        assert!(!u.is_word(&[1, 2]));
        let all: Vec<Elem> = (0..6).collect();
        let g = union_in_ambient(&s3, &all, &all).unwrap();
        assert_eq!(crate::pgroup::word_counts(&g, 2), vec![6, 36]);
        let bad = [s3.unit(), s3.index_of("(1 2)").unwrap(), s3.index_of("(1 3)").unwrap()];
        assert!(matches!(union_in_ambient(&s3, &bad, &t12), Err(ConstructionError::NotASubgroup(_))));
    }
}
