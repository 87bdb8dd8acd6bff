use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use super::ConstructionError;
use crate::pgroup::{Ambient, ChartedPartialGroup, Elem};

/// A finite group given by its full multiplication table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupTable {
    name: String,
    names: Vec<String>,
    unit: Elem,
    table: Vec<Vec<Elem>>,
    inverse: Vec<Elem>,
}

impl GroupTable {
    /// Checks closure, associativity, a two-sided unit and inverses.
    pub fn from_table(name: impl Into<String>, names: Vec<String>, table: Vec<Vec<Elem>>) -> Result<Self, ConstructionError> {
        let n = names.len();
        let bad = |m: &str| Err(ConstructionError::InvalidGroup(m.to_string()));
        if n == 0 || table.len() != n || table.iter().any(|r| r.len() != n || r.iter().any(|&x| x >= n)) {
            return bad("table is not square over the elements");
        }
        if names.iter().collect::<BTreeSet<_>>().len() != n {
            return bad("duplicate element names");
        }
        let Some(unit) = (0..n).find(|&e| (0..n).all(|x| table[e][x] == x && table[x][e] == x)) else {
            return bad("no unit");
        };
        let mut inverse = vec![0; n];
        for a in 0..n {
            match (0..n).find(|&b| table[a][b] == unit && table[b][a] == unit) {
                Some(b) => inverse[a] = b,
                None => return bad("an element has no inverse"),
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return bad("not associative");
                    }
                }
            }
        }
        Ok(GroupTable { name: name.into(), names, unit, table, inverse })
    }

    /// Closure of generators under a multiplication of values.
    pub fn generate<T: Clone + Ord>(
        name: impl Into<String>,
        unit: T,
        gens: &[T],
        mul: impl Fn(&T, &T) -> T,
        label: impl Fn(&T) -> String,
    ) -> Self {
        let mut elems = vec![unit.clone()];
        let mut seen: BTreeSet<T> = [unit].into_iter().collect();
        let mut i = 0;
        while i < elems.len() {
            for g in gens {
                let x = mul(&elems[i], g);
                if seen.insert(x.clone()) {
                    elems.push(x);
                }
            }
            i += 1;
        }
        let index: BTreeMap<&T, usize> = elems.iter().enumerate().map(|(i, x)| (x, i)).collect();
        let pos = |x: &T| index[x];
        let table = elems.iter().map(|a| elems.iter().map(|b| pos(&mul(a, b))).collect()).collect();
        let names = elems.iter().map(&label).collect();
        Self::from_table(name, names, table).expect("generated group")
    }

    pub fn trivial() -> Self {
        Self::cyclic(1)
    }

    /// C_n = ⟨r⟩.
    pub fn cyclic(n: usize) -> Self {
        assert!(n >= 1);
        let names = (0..n).map(|i| power_name("r", i)).collect();
        let table = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        Self::from_table(format!("C{n}"), names, table).expect("cyclic")
    }

    /// D_n of order 2n: elements r^i s^j with s r = r⁻¹ s.
    pub fn dihedral(n: usize) -> Self {
        assert!(n >= 1);
        let idx = |i: usize, j: usize| j * n + i;
        let mut names = vec![String::new(); 2 * n];
        for j in 0..2 {
            for i in 0..n {
                let r = power_name("r", i);
                names[idx(i, j)] = match (j, i) {
                    (0, _) => r,
                    (_, 0) => "s".into(),
                    _ => format!("{r}s"),
                };
            }
        }
        let mut table = vec![vec![0; 2 * n]; 2 * n];
        for (i1, j1, i2, j2) in (0..n).flat_map(|a| (0..2).flat_map(move |b| (0..n).flat_map(move |c| (0..2).map(move |d| (a, b, c, d))))) {
            let i = if j1 == 0 { (i1 + i2) % n } else { (i1 + n - i2) % n };
            table[idx(i1, j1)][idx(i2, j2)] = idx(i, (j1 + j2) % 2);
        }
        Self::from_table(format!("D{n}"), names, table).expect("dihedral")
    }

    /// S_n acting on the right: x·(στ) = (x·σ)·τ.
    pub fn symmetric(n: usize) -> Self {
        assert!((1..=5).contains(&n));
        let id: Vec<usize> = (0..n).collect();
        let mut gens = Vec::new();
        if n >= 2 {
            let mut t = id.clone();
            t.swap(0, 1);
            gens.push(t);
            gens.push((0..n).map(|i| (i + 1) % n).collect());
        }
        let mut g = Self::generate(
            format!("S{n}"),
            id,
            &gens,
            |a: &Vec<usize>, b: &Vec<usize>| a.iter().map(|&x| b[x]).collect(),
            |p| cycle_name(p),
        );
        g.sort_elements();
        g
    }

    /// Named built-ins: `C<n>`, `D<n>`, `S<n>` (n ≤ 5) and `1`/`trivial`.
    pub fn builtin(name: &str) -> Result<Self, ConstructionError> {
        let bad = || ConstructionError::InvalidGroup(format!("unknown group {name:?}"));
        if name == "1" || name == "trivial" {
            return Ok(Self::trivial());
        }
        let (head, tail) = name.split_at(1.min(name.len()));
        let n: usize = tail.parse().map_err(|_| bad())?;
        match head {
            "C" if n >= 1 => Ok(Self::cyclic(n)),
            "D" if n >= 1 => Ok(Self::dihedral(n)),
            "S" if (1..=5).contains(&n) => Ok(Self::symmetric(n)),
            _ => Err(bad()),
        }
    }

    /// Stable order: unit first, then by element order, then name.
    fn sort_elements(&mut self) {
        let n = self.size();
        let mut perm: Vec<usize> = (0..n).collect();
        perm.sort_by_key(|&e| (e != self.unit, self.order(e), self.names[e].clone()));
        let mut pos = vec![0; n];
        for (i, &e) in perm.iter().enumerate() {
            pos[e] = i;
        }
        let names = perm.iter().map(|&e| self.names[e].clone()).collect();
        let table = perm.iter().map(|&a| perm.iter().map(|&b| pos[self.table[a][b]]).collect()).collect();
        *self = Self::from_table(self.name.clone(), names, table).expect("relabelled");
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn size(&self) -> usize {
        self.names.len()
    }

    pub fn unit(&self) -> Elem {
        self.unit
    }

    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        self.table[a][b]
    }

    pub fn inverse(&self, a: Elem) -> Elem {
        self.inverse[a]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn element_name(&self, a: Elem) -> &str {
        &self.names[a]
    }

    pub fn index_of(&self, name: &str) -> Option<Elem> {
        self.names.iter().position(|n| n == name)
    }

    pub fn order(&self, a: Elem) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != self.unit {
            x = self.table[x][a];
            k += 1;
        }
        k
    }

    /// Product of a sequence (unit for the empty sequence).
    pub fn product(&self, xs: &[Elem]) -> Elem {
        xs.iter().fold(self.unit, |acc, &x| self.table[acc][x])
    }

    pub fn is_subgroup(&self, set: &[Elem]) -> bool {
        let s: BTreeSet<Elem> = set.iter().copied().collect();
        s.contains(&self.unit) && s.iter().all(|&a| s.contains(&self.inverse[a]) && s.iter().all(|&b| s.contains(&self.table[a][b])))
    }

    /// Subgroup generated by `gens`, sorted.
    pub fn generated(&self, gens: &[Elem]) -> Vec<Elem> {
        let mut seen = vec![false; self.size()];
        seen[self.unit] = true;
        let mut stack = vec![self.unit];
        while let Some(x) = stack.pop() {
            for &g in gens {
                let y = self.table[x][g];
                if !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
        (0..self.size()).filter(|&e| seen[e]).collect()
    }

    /// Restriction to a subgroup, relabelled densely.
    pub fn subgroup(&self, name: impl Into<String>, set: &[Elem]) -> Result<Self, ConstructionError> {
        if !self.is_subgroup(set) {
            return Err(ConstructionError::NotASubgroup(format!("{set:?} in {}", self.name)));
        }
        let mut elems: Vec<Elem> = set.to_vec();
        elems.sort_unstable();
        elems.dedup();
        let pos = |x: Elem| elems.binary_search(&x).unwrap();
        let names = elems.iter().map(|&e| self.names[e].clone()).collect();
        let table = elems.iter().map(|&a| elems.iter().map(|&b| pos(self.table[a][b])).collect()).collect();
        Self::from_table(name, names, table)
    }

    /// The group as a one-chart partial group (every word allowed).
    pub fn as_partial_group(&self) -> ChartedPartialGroup {
        let n = self.size();
        ChartedPartialGroup::build(
            self.names.clone(),
            self.unit,
            self.inverse.clone(),
            vec!["*".into()],
            vec![vec![Some(0)]; n],
            |a, b| Some(self.table[a][b]),
        )
        .expect("groups are partial groups")
        .with_ambient(Ambient::Labels(self.names.clone()))
        .expect("ambient labels")
    }
}

impl fmt::Display for GroupTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (order {})", self.name, self.size())
    }
}

fn power_name(base: &str, i: usize) -> String {
    match i {
        0 => "1".into(),
        1 => base.into(),
        _ => format!("{base}{i}"),
    }
}

/// Cycle notation with points numbered from 1.
fn cycle_name(p: &[usize]) -> String {
    let mut seen = vec![false; p.len()];
    let mut out = String::new();
    for s in 0..p.len() {
        if seen[s] || p[s] == s {
            continue;
        }
        out.push('(');
        let mut x = s;
        let mut first = true;
        while !seen[x] {
            seen[x] = true;
            if !first {
                out.push(' ');
            }
            out.push_str(&(x + 1).to_string());
            first = false;
            x = p[x];
        }
        out.push(')');
    }
    if out.is_empty() {
        "1".into()
    } else {
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pgroup::validate_axioms;

    #[test]
    fn orders() {
        assert_eq!(GroupTable::cyclic(5).size(), 5);
        assert_eq!(GroupTable::dihedral(4).size(), 8);
        assert_eq!(GroupTable::symmetric(3).size(), 6);
        assert_eq!(GroupTable::symmetric(4).size(), 24);
        let d4 = GroupTable::dihedral(4);
        let orders: Vec<usize> = (0..8).map(|e| d4.order(e)).collect();
        assert_eq!(orders.iter().filter(|&&o| o == 2).count(), 5);
        assert_eq!(orders.iter().filter(|&&o| o == 4).count(), 2);
    }

    #[test]
    fn dihedral_relation() {
        let d = GroupTable::dihedral(5);
        let r = d.index_of("r").unwrap();
        let s = d.index_of("s").unwrap();
        assert_eq!(d.mul(s, r), d.mul(d.inverse(r), s));
    }

    #[test]
    fn builtin_names() {
        assert_eq!(GroupTable::builtin("D6").unwrap().size(), 12);
        assert_eq!(GroupTable::builtin("S3").unwrap().size(), 6);
        assert_eq!(GroupTable::builtin("trivial").unwrap().size(), 1);
        assert!(GroupTable::builtin("Q8").is_err());
        assert!(GroupTable::builtin("S9").is_err());
    }

    #[test]
    fn rejects_non_groups() {
        let t = vec![vec![0, 1], vec![1, 1]];
        assert!(GroupTable::from_table("x", vec!["a".into(), "b".into()], t).is_err());
    }

    #[test]
    fn subgroups() {
        let s3 = GroupTable::symmetric(3);
        let t = s3.index_of("(1 2)").unwrap();
        let h = s3.generated(&[t]);
        assert_eq!(h.len(), 2);
        assert!(s3.is_subgroup(&h));
        assert!(!s3.is_subgroup(&[s3.unit(), t, s3.index_of("(1 3)").unwrap()]));
        assert_eq!(s3.subgroup("H", &h).unwrap().size(), 2);
    }

    #[test]
    fn group_as_partial_group() {
        let p = GroupTable::dihedral(3).as_partial_group();
        assert!(validate_axioms(&p, 4).is_pass());
    }
}
