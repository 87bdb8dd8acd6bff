use std::collections::{HashMap, HashSet};

use crate::geometry::Similarity;

use super::{Elem, PartialGroup, PgError};

const NONE: u32 = u32::MAX;

/// What the elements are, when they come from an ambient group.
#[derive(Clone, Debug, PartialEq)]
pub enum Ambient {
    Similarities(Vec<Similarity>),
    /// Names of ambient abstract-group elements.
    Labels(Vec<String>),
}

/// Elements acting as partial injections on a finite set of charts; a word
/// is in P_n iff some chart chain carries it.
#[derive(Clone, Debug)]
pub struct ChartedPartialGroup {
    names: Vec<String>,
    unit: Elem,
    inverse: Vec<Elem>,
    charts: Vec<String>,
    /// maps[e][x] = y means x·e = y.
    maps: Vec<Vec<u32>>,
    by_chart: Vec<Vec<Elem>>,
    /// Image masks per element and chart byte, for at most 64 charts.
    steps: Vec<u64>,
    /// Dense n×n product, NONE off the chained pairs.
    product: Vec<u32>,
    ambient: Option<Ambient>,
    ambient_index: HashMap<Similarity, Elem>,
}

impl ChartedPartialGroup {
    /// Builds the realization, asking `mul` for the product of every
    /// chart-chained pair.
    pub fn build(
        names: Vec<String>,
        unit: Elem,
        inverse: Vec<Elem>,
        charts: Vec<String>,
        maps: Vec<Vec<Option<usize>>>,
        mut mul: impl FnMut(Elem, Elem) -> Option<Elem>,
    ) -> Result<Self, PgError> {
        let n = names.len();
        let maps: Vec<Vec<u32>> =
            maps.into_iter().map(|row| row.into_iter().map(|y| y.map_or(NONE, |y| y as u32)).collect()).collect();
        let mut product = vec![NONE; n * n];
        for a in 0..n {
            for b in 0..n {
                if chained(&maps, a, b) {
                    let c = mul(a, b).ok_or_else(|| {
                        PgError::InvalidStructure(format!("no product for chained pair ({}, {})", names[a], names[b]))
                    })?;
                    product[a * n + b] = c as u32;
                }
            }
        }
        Self::from_parts(names, unit, inverse, charts, maps, product, None)
    }

    fn from_parts(
        names: Vec<String>,
        unit: Elem,
        inverse: Vec<Elem>,
        charts: Vec<String>,
        maps: Vec<Vec<u32>>,
        product: Vec<u32>,
        ambient: Option<Ambient>,
    ) -> Result<Self, PgError> {
        let n = names.len();
        let c = charts.len();
        let bad = |m: String| Err(PgError::InvalidStructure(m));
        if n == 0 || unit >= n || inverse.len() != n || maps.len() != n || product.len() != n * n {
            return bad("inconsistent sizes".into());
        }
        if names.iter().collect::<HashSet<_>>().len() != n {
            return bad("duplicate element names".into());
        }
        if charts.is_empty() || charts.iter().collect::<HashSet<_>>().len() != c {
            return bad("charts must be non-empty and distinct".into());
        }
        for (e, row) in maps.iter().enumerate() {
            if row.len() != c || row.iter().any(|&y| y != NONE && y as usize >= c) {
                return bad(format!("support of {} is malformed", names[e]));
            }
            let targets: Vec<u32> = row.iter().copied().filter(|&y| y != NONE).collect();
            if targets.iter().collect::<HashSet<_>>().len() != targets.len() {
                return bad(format!("{} is not injective on charts", names[e]));
            }
        }
        if maps[unit].iter().enumerate().any(|(x, &y)| y as usize != x) {
            return bad("the unit must fix every chart".into());
        }
        for e in 0..n {
            let i = inverse[e];
            if i >= n || inverse[i] != e {
                return bad(format!("inverse of {} is not involutive", names[e]));
            }
            for x in 0..c {
                let y = maps[e][x];
                if y != NONE && maps[i][y as usize] as usize != x {
                    return bad(format!("support of {} is not the transpose of its inverse", names[e]));
                }
            }
        }
        for a in 0..n {
            for b in 0..n {
                let p = product[a * n + b];
                if chained(&maps, a, b) != (p != NONE) || (p != NONE && p as usize >= n) {
                    return bad(format!("product table mismatch at ({}, {})", names[a], names[b]));
                }
            }
        }
        let mut by_chart = vec![Vec::new(); c];
        for (e, row) in maps.iter().enumerate() {
            for (x, &y) in row.iter().enumerate() {
                if y != NONE {
                    by_chart[x].push(e);
                }
            }
        }
        let steps = step_tables(&maps, c);
        let mut pg = ChartedPartialGroup {
            names,
            unit,
            inverse,
            charts,
            maps,
            steps,
            by_chart,
            product,
            ambient: None,
            ambient_index: HashMap::new(),
        };
        if let Some(a) = ambient {
            pg.set_ambient(a)?;
        }
        Ok(pg)
    }

    /// Rebuilds from listed products (deserialization path).
    pub fn from_tables(
        names: Vec<String>,
        unit: Elem,
        inverse: Vec<Elem>,
        charts: Vec<String>,
        maps: Vec<Vec<Option<usize>>>,
        products: &[(Elem, Elem, Elem)],
    ) -> Result<Self, PgError> {
        let n = names.len();
        let maps: Vec<Vec<u32>> =
            maps.into_iter().map(|row| row.into_iter().map(|y| y.map_or(NONE, |y| y as u32)).collect()).collect();
        let mut product = vec![NONE; n * n];
        for &(a, b, c) in products {
            if a >= n || b >= n || c >= n {
                return Err(PgError::InvalidStructure("product entry out of range".into()));
            }
            product[a * n + b] = c as u32;
        }
        Self::from_parts(names, unit, inverse, charts, maps, product, None)
    }

    pub fn set_ambient(&mut self, ambient: Ambient) -> Result<(), PgError> {
        let len = match &ambient {
            Ambient::Similarities(v) => v.len(),
            Ambient::Labels(v) => v.len(),
        };
        if len != self.size() {
            return Err(PgError::InvalidStructure("ambient has the wrong length".into()));
        }
        self.ambient_index.clear();
        if let Ambient::Similarities(v) = &ambient {
            for (i, g) in v.iter().enumerate() {
                if self.ambient_index.insert(g.clone(), i).is_some() {
                    return Err(PgError::InvalidStructure("ambient values repeat".into()));
                }
            }
        }
        self.ambient = Some(ambient);
        Ok(())
    }

    pub fn with_ambient(mut self, ambient: Ambient) -> Result<Self, PgError> {
        self.set_ambient(ambient)?;
        Ok(self)
    }

    pub fn ambient(&self) -> Option<&Ambient> {
        self.ambient.as_ref()
    }

    pub fn similarity(&self, e: Elem) -> Option<&Similarity> {
        match &self.ambient {
            Some(Ambient::Similarities(v)) => v.get(e),
            _ => None,
        }
    }

    /// Element whose ambient similarity is `g`.
    pub fn find_similarity(&self, g: &Similarity) -> Option<Elem> {
        self.ambient_index.get(g).copied()
    }

    /// With similarity ambient: products agree with composition.
    pub fn check_ambient(&self) -> Result<(), PgError> {
        let Some(Ambient::Similarities(v)) = &self.ambient else { return Ok(()) };
        let n = self.size();
        for a in 0..n {
            for b in 0..n {
                if let Some(c) = self.mul(a, b) {
                    if v[a].compose(&v[b]) != v[c] {
                        return Err(PgError::InvalidStructure(format!(
                            "product of {} and {} disagrees with the ambient group",
                            self.names[a], self.names[b]
                        )));
                    }
                }
            }
            if v[a].inverse() != v[self.inverse[a]] {
                return Err(PgError::InvalidStructure(format!("inverse of {} disagrees with ambient", self.names[a])));
            }
        }
        Ok(())
    }

    pub fn charts(&self) -> &[String] {
        &self.charts
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<Elem> {
        self.names.iter().position(|n| n == name)
    }

    /// x·e, if defined.
    pub fn chart_map(&self, e: Elem, x: usize) -> Option<usize> {
        let y = self.maps[e][x];
        (y != NONE).then_some(y as usize)
    }

    /// Support triples (x, e, y) in (chart, element) order.
    pub fn support(&self) -> Vec<(usize, Elem, usize)> {
        let mut out = Vec::new();
        for x in 0..self.charts.len() {
            for e in 0..self.size() {
                if let Some(y) = self.chart_map(e, x) {
                    out.push((x, e, y));
                }
            }
        }
        out
    }

    pub fn domain(&self, e: Elem) -> Vec<usize> {
        (0..self.charts.len()).filter(|&x| self.maps[e][x] != NONE).collect()
    }

    /// Binary product on a chained pair.
    pub fn mul(&self, a: Elem, b: Elem) -> Option<Elem> {
        let p = self.product[a * self.size() + b];
        (p != NONE).then_some(p as usize)
    }

    /// Product triples (a, b, ab) in lexicographic order.
    pub fn products(&self) -> Vec<(Elem, Elem, Elem)> {
        let n = self.size();
        let mut out = Vec::new();
        for a in 0..n {
            for b in 0..n {
                if let Some(c) = self.mul(a, b) {
                    out.push((a, b, c));
                }
            }
        }
        out
    }

    /// Charts reachable at the end of some chain carrying `w`.
    pub fn endpoints(&self, w: &[Elem]) -> Vec<usize> {
        let c = self.charts.len();
        if c <= 64 {
            let m = self.end_mask(w);
            return (0..c).filter(|&x| m >> x & 1 == 1).collect();
        }
        let mut cur: Vec<bool> = vec![true; c];
        let mut next = vec![false; c];
        for &e in w {
            next.iter_mut().for_each(|b| *b = false);
            let mut any = false;
            for x in 0..c {
                if cur[x] {
                    let y = self.maps[e][x];
                    if y != NONE {
                        next[y as usize] = true;
                        any = true;
                    }
                }
            }
            if !any {
                return Vec::new();
            }
            std::mem::swap(&mut cur, &mut next);
        }
        (0..c).filter(|&x| cur[x]).collect()
    }

    /// `endpoints` as a bit set, for at most 64 charts.
    fn end_mask(&self, w: &[Elem]) -> u64 {
        let c = self.charts.len();
        let mut cur = if c == 64 { u64::MAX } else { (1u64 << c) - 1 };
        if !self.steps.is_empty() {
            let chunks = c.div_ceil(8);
            for &e in w {
                let base = e * chunks * 256;
                let mut next = 0u64;
                let mut m = cur;
                let mut k = 0;
                while m != 0 {
                    next |= self.steps[base + k * 256 + (m & 0xff) as usize];
                    m >>= 8;
                    k += 1;
                }
                if next == 0 {
                    return 0;
                }
                cur = next;
            }
            return cur;
        }
        for &e in w {
            let row = &self.maps[e];
            let mut next = 0u64;
            let mut m = cur;
            while m != 0 {
                let x = m.trailing_zeros() as usize;
                m &= m - 1;
                let y = row[x];
                if y != NONE {
                    next |= 1 << y;
                }
            }
            if next == 0 {
                return 0;
            }
            cur = next;
        }
        cur
    }

    /// Replaces one product entry without re-validation. Test helper for
    /// negative controls.
    #[doc(hidden)]
    pub fn corrupt_product(&mut self, a: Elem, b: Elem, c: Elem) {
        let n = self.size();
        self.product[a * n + b] = c as u32;
    }

    /// Restriction to a subset of charts (elements keep their indices; the
    /// support loses the dropped charts).
    pub fn restrict_charts(&self, keep: &[usize]) -> ChartedPartialGroup {
        let pos: HashMap<usize, usize> = keep.iter().enumerate().map(|(i, &x)| (x, i)).collect();
        let maps: Vec<Vec<u32>> = self
            .maps
            .iter()
            .map(|row| {
                keep.iter()
                    .map(|&x| {
                        let y = row[x];
                        if y == NONE {
                            NONE
                        } else {
                            pos.get(&(y as usize)).map_or(NONE, |&i| i as u32)
                        }
                    })
                    .collect()
            })
            .collect();
        let n = self.size();
        let mut product = vec![NONE; n * n];
        for a in 0..n {
            for b in 0..n {
                if chained(&maps, a, b) {
                    product[a * n + b] = self.product[a * n + b];
                }
            }
        }
        let mut by_chart = vec![Vec::new(); keep.len()];
        for (e, row) in maps.iter().enumerate() {
            for (x, &y) in row.iter().enumerate() {
                if y != NONE {
                    by_chart[x].push(e);
                }
            }
        }
        let steps = step_tables(&maps, keep.len());
        ChartedPartialGroup {
            names: self.names.clone(),
            unit: self.unit,
            inverse: self.inverse.clone(),
            charts: keep.iter().map(|&x| self.charts[x].clone()).collect(),
            maps,
            steps,
            by_chart,
            product,
            ambient: self.ambient.clone(),
            ambient_index: self.ambient_index.clone(),
        }
    }
}

const STEP_TABLE_LIMIT: usize = 1 << 21;

fn step_tables(maps: &[Vec<u32>], c: usize) -> Vec<u64> {
    let chunks = c.div_ceil(8);
    if c > 64 || maps.len() * chunks * 256 > STEP_TABLE_LIMIT {
        return Vec::new();
    }
    let mut out = vec![0u64; maps.len() * chunks * 256];
    for (e, row) in maps.iter().enumerate() {
        for k in 0..chunks {
            let base = (e * chunks + k) * 256;
            for byte in 1..256usize {
                let low = byte.trailing_zeros() as usize;
                let x = k * 8 + low;
                let y = if x < c { row[x] } else { NONE };
                let bit = if y != NONE { 1u64 << y } else { 0 };
                out[base + byte] = out[base + (byte & (byte - 1))] | bit;
            }
        }
    }
    out
}

fn chained(maps: &[Vec<u32>], a: Elem, b: Elem) -> bool {
    maps[a].iter().any(|&y| y != NONE && maps[b][y as usize] != NONE)
}

impl PartialGroup for ChartedPartialGroup {
    fn size(&self) -> usize {
        self.names.len()
    }

    fn unit(&self) -> Elem {
        self.unit
    }

    fn inverse(&self, e: Elem) -> Elem {
        self.inverse[e]
    }

    fn is_word(&self, w: &[Elem]) -> bool {
        w.len() <= 1 || if self.charts.len() <= 64 { self.end_mask(w) != 0 } else { !self.endpoints(w).is_empty() }
    }

    fn nabla(&self, w: &[Elem]) -> Option<Elem> {
        if !self.is_word(w) {
            return None;
        }
        let mut acc = *w.first()?;
        for &e in &w[1..] {
            acc = self.mul(acc, e)?;
        }
        Some(acc)
    }

    fn name(&self, e: Elem) -> String {
        self.names[e].clone()
    }

    fn extensions(&self, w: &[Elem]) -> Vec<Elem> {
        let ends = if w.is_empty() { (0..self.charts.len()).collect() } else { self.endpoints(w) };
        let mut seen = vec![false; self.size()];
        for x in ends {
            for &e in &self.by_chart[x] {
                seen[e] = true;
            }
        }
        (0..self.size()).filter(|&e| seen[e]).collect()
    }

    fn as_charted(&self) -> Option<&ChartedPartialGroup> {
        Some(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pgroup::{reduce, validate_axioms, word_in};

    /// V({0,1}): elements 0, +1, −1 on charts {0, 1}.
    fn v01() -> ChartedPartialGroup {
        ChartedPartialGroup::build(
            vec!["0".into(), "+1".into(), "-1".into()],
            0,
            vec![0, 2, 1],
            vec!["0".into(), "1".into()],
            vec![vec![Some(0), Some(1)], vec![Some(1), None], vec![None, Some(0)]],
            |a, b| {
                let val = |e: usize| [0i32, 1, -1][e];
                match val(a) + val(b) {
                    0 => Some(0),
                    1 => Some(1),
                    -1 => Some(2),
                    _ => None,
                }
            },
        )
        .unwrap()
    }

    #[test]
    fn vector_parade_words() {
        let p = v01();
        assert!(word_in(&p, &[1]).unwrap());
        assert!(!word_in(&p, &[1, 1]).unwrap());
        assert!(word_in(&p, &[1, 0, 2, 1]).unwrap());
        assert_eq!(reduce(&p, &[1, 0, 2, 1]).unwrap(), 1);
        assert_eq!(reduce(&p, &[1, 2]).unwrap(), 0);
        assert_eq!(word_in(&p, &[7]), Err(PgError::UnknownElement(7)));
        assert_eq!(reduce(&p, &[2, 2]), Err(PgError::NotAWord(vec![2, 2])));
        assert!(validate_axioms(&p, 5).is_pass());
    }

    #[test]
    fn rejects_bad_support() {
        let r = ChartedPartialGroup::build(
            vec!["1".into(), "a".into()],
            0,
            vec![0, 1],
            vec!["x".into(), "y".into()],
            vec![vec![Some(0), Some(1)], vec![Some(1), None]],
            |_, _| Some(0),
        );
        assert!(r.is_err());
    }

    #[test]
    fn corrupted_product_is_caught() {
        let mut p = v01();
        p.corrupt_product(1, 2, 1);
        let report = validate_axioms(&p, 3);
        assert!(report.violations.iter().any(|v| v.axiom == "P2"));
    }
}
