use super::{ConstructionError, GroupTable};
use crate::pgroup::{effective_depth, for_each_word, insertion_criterion, normalizer, word_names, Elem, PartialGroup, PgRef};

/// (⟲, σ) for (H, G), checked against (FS1)–(FS4) at construction.
#[derive(Clone)]
pub struct FactorSet {
    g: GroupTable,
    h: PgRef,
    /// act[η][c] = η ⟲ c.
    act: Vec<Vec<Elem>>,
    sigma: Vec<Vec<Elem>>,
}

impl FactorSet {
    pub fn new(
        g: GroupTable,
        h: PgRef,
        act: Vec<Vec<Elem>>,
        sigma: Vec<Vec<Elem>>,
        depth: usize,
    ) -> Result<Self, ConstructionError> {
        let bad = |m: String| Err(ConstructionError::InvalidFactorSet(m));
        let (ng, nh) = (g.size(), h.size());
        if act.len() != nh || act.iter().any(|r| r.len() != ng || r.iter().any(|&x| x >= nh)) {
            return bad("⟲ table has the wrong shape".into());
        }
        if sigma.len() != ng || sigma.iter().any(|r| r.len() != ng || r.iter().any(|&x| x >= nh)) {
            return bad("σ table has the wrong shape".into());
        }
        let norm = match h.as_charted() {
            Some(ch) => normalizer(ch, depth)?,
            None => insertion_criterion(&*h, depth),
        };
        let gnames = g.names().to_vec();
        let gn = |c: Elem| gnames[c].clone();
        for a in 0..ng {
            for b in 0..ng {
                if norm.binary_search(&sigma[a][b]).is_err() {
                    return bad(format!("σ({}, {}) = {} is not in N(H)", gn(a), gn(b), h.name(sigma[a][b])));
                }
            }
        }
        let one = g.unit();
        if (0..nh).any(|e| act[e][one] != e) {
            return bad("(FS1) η ⟲ 1 ≠ η".into());
        }
        if (0..ng).any(|a| sigma[one][a] != h.unit() || sigma[a][one] != h.unit()) {
            return bad("(FS1) σ(1, a) or σ(a, 1) is not 1".into());
        }
        let mut fs2 = None;
        for_each_word(&*h, effective_depth(&*h, depth), |w| {
            for a in 0..ng {
                let v: Vec<Elem> = w.iter().map(|&e| act[e][a]).collect();
                let ok = (w.len() == 1 || h.is_word(&v)) && h.nabla(&v) == h.nabla(w).map(|e| act[e][a]);
                if !ok {
                    fs2 = Some(format!("(FS2) fails for ({}) ⟲ {}", word_names(&*h, w).join(", "), gn(a)));
                    return false;
                }
            }
            true
        });
        if let Some(m) = fs2 {
            return bad(m);
        }
        let fs = FactorSet { g, h, act, sigma };
        for e in 0..nh {
            for a in 0..ng {
                for b in 0..ng {
                    let lhs = fs.act[fs.act[e][a]][b];
                    if fs.conj(fs.act[e][fs.g.mul(a, b)], fs.sigma[a][b]) != Some(lhs) {
                        return bad(format!("(FS3) fails at η = {}, a = {}, b = {}", fs.h.name(e), gn(a), gn(b)));
                    }
                }
            }
        }
        for a in 0..ng {
            for b in 0..ng {
                for c in 0..ng {
                    let s = &fs.sigma;
                    let lhs = fs.h.nabla(&[s[a][fs.g.mul(b, c)], s[b][c]]);
                    let rhs = fs.h.nabla(&[s[fs.g.mul(a, b)][c], fs.act[s[a][b]][c]]);
                    if lhs.is_none() || lhs != rhs {
                        return bad(format!("(FS4) fails at a = {}, b = {}, c = {}", gn(a), gn(b), gn(c)));
                    }
                }
            }
        }
        Ok(fs)
    }

    /// η^g = g⁻¹ η g.
    fn conj(&self, eta: Elem, g: Elem) -> Option<Elem> {
        self.h.nabla(&[self.h.inverse(g), eta, g])
    }

    pub fn group(&self) -> &GroupTable {
        &self.g
    }

    pub fn base(&self) -> &PgRef {
        &self.h
    }

    pub fn act(&self, eta: Elem, c: Elem) -> Elem {
        self.act[eta][c]
    }

    pub fn sigma(&self, a: Elem, b: Elem) -> Elem {
        self.sigma[a][b]
    }
}

/// G ⋉_{⟲,σ} H on G × H₁; element (c, η) has index c·|H| + η.
pub struct FactorSetProduct {
    fs: FactorSet,
    inverse: Vec<Elem>,
}

impl FactorSetProduct {
    pub fn new(fs: FactorSet) -> Result<Self, ConstructionError> {
        let mut p = FactorSetProduct { fs, inverse: Vec::new() };
        let nh = p.fs.h.size();
        let unit = PartialGroup::unit(&p);
        let mut inverse = Vec::with_capacity(p.size());
        for e in 0..p.size() {
            let ci = p.fs.g.inverse(e / nh);
            let found = (0..nh).map(|x| ci * nh + x).find(|&y| p.nabla(&[e, y]) == Some(unit) && p.nabla(&[y, e]) == Some(unit));
            match found {
                Some(y) => inverse.push(y),
                None => return Err(ConstructionError::InvalidFactorSet(format!("{} has no inverse", p.name(e)))),
            }
        }
        p.inverse = inverse;
        Ok(p)
    }

    pub fn factor_set(&self) -> &FactorSet {
        &self.fs
    }

    pub fn pair(&self, e: Elem) -> (Elem, Elem) {
        let nh = self.fs.h.size();
        (e / nh, e % nh)
    }

    pub fn index_of(&self, c: Elem, eta: Elem) -> Elem {
        c * self.fs.h.size() + eta
    }

    /// A(α) = (η₁ ⟲ (c₂, …, c_n), …, η_{n−1} ⟲ c_n, η_n).
    pub fn a_word(&self, w: &[Elem]) -> Vec<Elem> {
        let ps: Vec<(Elem, Elem)> = w.iter().map(|&e| self.pair(e)).collect();
        (0..ps.len()).map(|i| ps[i + 1..].iter().fold(ps[i].1, |x, &(c, _)| self.fs.act[x][c])).collect()
    }

    /// σ(c₁, …, c_n) = σ(c₁, c₂⋯c_n) σ(c₂, c₃⋯c_n) ⋯ σ(c_{n−1}, c_n).
    fn sigma_word(&self, cs: &[Elem]) -> Option<Elem> {
        let g = &self.fs.g;
        let mut acc = self.fs.h.unit();
        for i in 0..cs.len().saturating_sub(1) {
            let s = self.fs.sigma[cs[i]][g.product(&cs[i + 1..])];
            acc = self.fs.h.nabla(&[acc, s])?;
        }
        Some(acc)
    }
}

impl PartialGroup for FactorSetProduct {
    fn size(&self) -> usize {
        self.fs.g.size() * self.fs.h.size()
    }

    fn unit(&self) -> Elem {
        self.index_of(self.fs.g.unit(), self.fs.h.unit())
    }

    fn inverse(&self, e: Elem) -> Elem {
        self.inverse[e]
    }

    fn is_word(&self, w: &[Elem]) -> bool {
        w.len() <= 1 || self.fs.h.is_word(&self.a_word(w))
    }

    fn nabla(&self, w: &[Elem]) -> Option<Elem> {
        if w.is_empty() {
            return None;
        }
        let a = self.a_word(w);
        if w.len() >= 2 && !self.fs.h.is_word(&a) {
            return None;
        }
        let cs: Vec<Elem> = w.iter().map(|&e| self.pair(e).0).collect();
        let mut v = vec![self.sigma_word(&cs)?];
        v.extend(a);
        let eta = self.fs.h.nabla(&v)?;
        Some(self.index_of(self.fs.g.product(&cs), eta))
    }

    fn name(&self, e: Elem) -> String {
        let (c, eta) = self.pair(e);
        format!("({},{})", self.fs.g.element_name(c), self.fs.h.name(eta))
    }

    fn exact_depth(&self) -> Option<usize> {
        self.fs.h.exact_depth()
    }
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::constructions::union_in_ambient;
    use crate::pgroup::{iso_search, validate_axioms};

    fn direct(a: &GroupTable, b: &GroupTable) -> GroupTable {
        let nb = b.size();
        let n = a.size() * nb;
        let names = (0..n).map(|i| format!("{}{}", a.element_name(i / nb), b.element_name(i % nb))).collect();
        let table =
            (0..n).map(|x| (0..n).map(|y| a.mul(x / nb, y / nb) * nb + b.mul(x % nb, y % nb)).collect()).collect();
        GroupTable::from_table("prod", names, table).unwrap()
    }

    fn trivial_act(nh: usize, ng: usize) -> Vec<Vec<Elem>> {
        (0..nh).map(|e| vec![e; ng]).collect()
    }

    #[test]
    fn untwisted_is_direct_product() {
        let (c2, c3) = (GroupTable::cyclic(2), GroupTable::cyclic(3));
        let h: PgRef = Arc::new(c3.as_partial_group());
        let fs = FactorSet::new(c2.clone(), h, trivial_act(3, 2), vec![vec![0; 2]; 2], 4).unwrap();
        let p = FactorSetProduct::new(fs).unwrap();
        assert!(validate_axioms(&p, 4).is_pass());
        assert!(iso_search(&p, &direct(&c2, &c3).as_partial_group(), 4).is_some());
    }

    #[test]
    fn central_twist_gives_c4_times_c2() {
        let (c2, c4) = (GroupTable::cyclic(2), GroupTable::cyclic(4));
        let h: PgRef = Arc::new(c4.as_partial_group());
        let sigma = vec![vec![0, 0], vec![0, 2]];
        let p = FactorSetProduct::new(FactorSet::new(c2.clone(), h, trivial_act(4, 2), sigma, 4).unwrap()).unwrap();
        assert!(iso_search(&p, &direct(&c4, &c2).as_partial_group(), 4).is_some());
        assert!(iso_search(&p, &direct(&c2, &direct(&c2, &c2)).as_partial_group(), 4).is_none());
    }

    #[test]
    fn sigma_outside_normalizer_rejected() {
        let s3 = GroupTable::symmetric(3);
        let t12 = s3.generated(&[s3.index_of("(1 2)").unwrap()]);
        let t13 = s3.generated(&[s3.index_of("(1 3)").unwrap()]);
        let h: PgRef = Arc::new(union_in_ambient(&s3, &t12, &t13).unwrap());
        let r = FactorSet::new(GroupTable::cyclic(2), h, trivial_act(3, 2), vec![vec![0, 0], vec![0, 1]], 4);
        assert!(matches!(r, Err(ConstructionError::InvalidFactorSet(m)) if m.contains("N(H)")));
    }

    #[test]
    fn non_automorphism_rejected() {
        let c3 = GroupTable::cyclic(3);
        let h: PgRef = Arc::new(c3.as_partial_group());
        let act = vec![vec![0, 1], vec![1, 0], vec![2, 2]];
        let r = FactorSet::new(GroupTable::cyclic(2), h, act, vec![vec![0; 2]; 2], 4);
        assert!(matches!(r, Err(ConstructionError::InvalidFactorSet(m)) if m.contains("FS")));
    }
}
