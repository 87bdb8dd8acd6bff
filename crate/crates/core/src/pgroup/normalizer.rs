use super::{effective_depth, fits, for_each_word, ChartedPartialGroup, Elem, PartialGroup, PgError};

/// Elements g passing the insertion test: for every word (π₁, …, π_n) of
/// length ≤ depth and every interior cut 1 ≤ i < n, both
/// (…, π_i, g, g⁻¹, π_{i+1}, …) and (…, π_i, g⁻¹, g, π_{i+1}, …) are words.
pub fn insertion_criterion(pg: &dyn PartialGroup, depth: usize) -> Vec<Elem> {
    let depth = effective_depth(pg, depth);
    let mut depth = depth;
    while depth >= 2 && !fits(pg, depth + 2) {
        depth -= 1;
    }
    (0..pg.size()).filter(|&g| insertable(pg, g, depth)).collect()
}

fn insertable(pg: &dyn PartialGroup, g: Elem, depth: usize) -> bool {
    let gi = pg.inverse(g);
    let mut buf = Vec::with_capacity(depth + 2);
    for_each_word(pg, depth, |w| {
        for i in 1..w.len() {
            for (a, b) in [(g, gi), (gi, g)] {
                buf.clear();
                buf.extend_from_slice(&w[..i]);
                buf.push(a);
                buf.push(b);
                buf.extend_from_slice(&w[i..]);
                if !pg.is_word(&buf) {
                    return false;
                }
            }
        }
        true
    })
}

/// Charts that still matter for the domain test. A chart x is dropped when
/// every element defined at x fixes x and some other remaining chart y has
/// every such element defined at y.
fn essential_charts(pg: &ChartedPartialGroup) -> Vec<usize> {
    let c = pg.charts().len();
    let at: Vec<Vec<Elem>> = (0..c).map(|x| (0..pg.size()).filter(|&e| pg.chart_map(e, x).is_some()).collect()).collect();
    let mut alive = vec![true; c];
    loop {
        let mut changed = false;
        for x in 0..c {
            if !alive[x] || !at[x].iter().all(|&e| pg.chart_map(e, x) == Some(x)) {
                continue;
            }
            let covered = (0..c).any(|y| y != x && alive[y] && at[x].iter().all(|&e| pg.chart_map(e, y) == Some(y)));
            if covered {
                alive[x] = false;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    (0..c).filter(|&x| alive[x]).collect()
}

/// N(P) for a charted realization: elements defined on every essential
/// chart, cross-validated against the insertion criterion.
pub fn normalizer(pg: &ChartedPartialGroup, depth: usize) -> Result<Vec<Elem>, PgError> {
    let keep = essential_charts(pg);
    let by_chart: Vec<Elem> = (0..pg.size()).filter(|&g| keep.iter().all(|&x| pg.chart_map(g, x).is_some())).collect();
    let oracle = insertion_criterion(pg, depth);
    if by_chart != oracle {
        let names = |v: &[Elem]| v.iter().map(|&e| pg.name(e)).collect::<Vec<_>>().join(", ");
        return Err(PgError::CandidateMismatch(format!(
            "chart criterion {{{}}} vs insertion criterion {{{}}}",
            names(&by_chart),
            names(&oracle)
        )));
    }
    for &a in &by_chart {
        if by_chart.binary_search(&pg.inverse(a)).is_err() {
            return Err(PgError::InvalidStructure("normalizer not closed under inverse".into()));
        }
        for &b in &by_chart {
            match pg.nabla(&[a, b]) {
                Some(c) if by_chart.binary_search(&c).is_ok() => {}
                _ => return Err(PgError::InvalidStructure("normalizer not closed under product".into())),
            }
        }
    }
    Ok(by_chart)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn union_c2_c2() -> ChartedPartialGroup {
        // Inside C2 × C2 = {1, a, b, ab}: the union of ⟨a⟩ and ⟨b⟩.
        ChartedPartialGroup::build(
            vec!["1".into(), "a".into(), "b".into()],
            0,
            vec![0, 1, 2],
            vec!["+".into(), "-".into()],
            vec![vec![Some(0), Some(1)], vec![Some(0), None], vec![None, Some(1)]],
            |x, y| match (x, y) {
                (0, e) | (e, 0) => Some(e),
                (e, f) if e == f => Some(0),
                _ => None,
            },
        )
        .unwrap()
    }

    #[test]
    fn union_normalizer_is_intersection() {
        let p = union_c2_c2();
        assert_eq!(normalizer(&p, 4).unwrap(), vec![0]);
        assert_eq!(insertion_criterion(&p, 4), vec![0]);
    }

    #[test]
    fn group_normalizer_is_everything() {
        let p = ChartedPartialGroup::build(
            vec!["1".into(), "a".into()],
            0,
            vec![0, 1],
            vec!["*".into()],
            vec![vec![Some(0)], vec![Some(0)]],
            |x, y| Some((x + y) % 2),
        )
        .unwrap();
        assert_eq!(normalizer(&p, 4).unwrap(), vec![0, 1]);
    }

    #[test]
    fn redundant_loop_chart_is_ignored() {
        // A third chart where only the unit lives does not shrink N(P).
        let p = ChartedPartialGroup::build(
            vec!["1".into(), "a".into()],
            0,
            vec![0, 1],
            vec!["x".into(), "z".into()],
            vec![vec![Some(0), Some(1)], vec![Some(0), None]],
            |x, y| Some((x + y) % 2),
        )
        .unwrap();
        assert_eq!(normalizer(&p, 4).unwrap(), vec![0, 1]);
    }
}
