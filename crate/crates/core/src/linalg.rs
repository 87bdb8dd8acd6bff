//! Small dense vectors and matrices over [`QuadScalar`], row-vector convention.

use std::fmt;

use crate::arith::{ArithError, QuadScalar};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QVector(pub Vec<QuadScalar>);

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QMatrix {
    n: usize,
    entries: Vec<QuadScalar>,
}

impl QVector {
    pub fn zero(d: usize) -> Self {
        QVector(vec![QuadScalar::zero(); d])
    }

    pub fn from_ints(v: &[i64]) -> Self {
        QVector(v.iter().map(|&x| QuadScalar::int(x)).collect())
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(QuadScalar::is_zero)
    }

    pub fn add(&self, o: &Self) -> Self {
        QVector(self.0.iter().zip(&o.0).map(|(x, y)| x + y).collect())
    }

    pub fn sub(&self, o: &Self) -> Self {
        QVector(self.0.iter().zip(&o.0).map(|(x, y)| x - y).collect())
    }

    pub fn neg(&self) -> Self {
        QVector(self.0.iter().map(|x| -x).collect())
    }

    pub fn scale(&self, s: &QuadScalar) -> Self {
        QVector(self.0.iter().map(|x| x * s).collect())
    }

    pub fn dot(&self, o: &Self) -> QuadScalar {
        self.0.iter().zip(&o.0).fold(QuadScalar::zero(), |acc, (x, y)| &acc + &(x * y))
    }

    pub fn norm2(&self) -> QuadScalar {
        self.dot(self)
    }

    /// Row vector times matrix.
    pub fn mul_mat(&self, a: &QMatrix) -> Self {
        let n = a.n;
        QVector(
            (0..n)
                .map(|j| (0..n).fold(QuadScalar::zero(), |acc, i| &acc + &(&self.0[i] * a.get(i, j))))
                .collect(),
        )
    }

    /// Largest radicand among the entries (0 if all rational).
    pub fn field(&self) -> u32 {
        self.0.iter().map(QuadScalar::field).max().unwrap_or(0)
    }
}

impl fmt::Display for QVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

impl QMatrix {
    pub fn from_rows(rows: Vec<Vec<QuadScalar>>) -> Self {
        let n = rows.len();
        assert!(rows.iter().all(|r| r.len() == n), "matrix must be square");
        QMatrix { n, entries: rows.into_iter().flatten().collect() }
    }

    pub fn from_int_rows(rows: &[&[i64]]) -> Self {
        Self::from_rows(rows.iter().map(|r| r.iter().map(|&x| QuadScalar::int(x)).collect()).collect())
    }

    pub fn identity(n: usize) -> Self {
        let mut entries = vec![QuadScalar::zero(); n * n];
        for i in 0..n {
            entries[i * n + i] = QuadScalar::one();
        }
        QMatrix { n, entries }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &QuadScalar {
        &self.entries[i * self.n + j]
    }

    pub fn row(&self, i: usize) -> QVector {
        QVector(self.entries[i * self.n..(i + 1) * self.n].to_vec())
    }

    pub fn rows(&self) -> Vec<Vec<QuadScalar>> {
        (0..self.n).map(|i| self.row(i).0).collect()
    }

    pub fn mul(&self, o: &Self) -> Self {
        let n = self.n;
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                entries.push((0..n).fold(QuadScalar::zero(), |acc, k| &acc + &(self.get(i, k) * o.get(k, j))));
            }
        }
        QMatrix { n, entries }
    }

    pub fn transpose(&self) -> Self {
        let n = self.n;
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                entries.push(self.get(j, i).clone());
            }
        }
        QMatrix { n, entries }
    }

    pub fn scale(&self, s: &QuadScalar) -> Self {
        QMatrix { n: self.n, entries: self.entries.iter().map(|x| x * s).collect() }
    }

    pub fn det(&self) -> QuadScalar {
        let g = |i, j| self.get(i, j);
        match self.n {
            0 => QuadScalar::one(),
            1 => g(0, 0).clone(),
            2 => g(0, 0) * g(1, 1) - g(0, 1) * g(1, 0),
            3 => {
                let m = |a: usize, b: usize, c: usize, d: usize| g(1, a) * g(2, b) - g(1, c) * g(2, d);
                &(&(g(0, 0) * &m(1, 2, 2, 1)) - &(g(0, 1) * &m(0, 2, 2, 0))) + &(g(0, 2) * &m(0, 1, 1, 0))
            }
            _ => unimplemented!("dimension above 3"),
        }
    }

    pub fn inverse(&self) -> Option<Self> {
        let n = self.n;
        let mut a = self.rows();
        let mut inv = QMatrix::identity(n).rows();
        for col in 0..n {
            let piv = (col..n).find(|&r| !a[r][col].is_zero())?;
            a.swap(col, piv);
            inv.swap(col, piv);
            let p = a[col][col].checked_inv().ok()?;
            for j in 0..n {
                a[col][j] = &a[col][j] * &p;
                inv[col][j] = &inv[col][j] * &p;
            }
            for r in 0..n {
                if r != col && !a[r][col].is_zero() {
                    let f = a[r][col].clone();
                    for j in 0..n {
                        a[r][j] = &a[r][j] - &(&f * &a[col][j]);
                        inv[r][j] = &inv[r][j] - &(&f * &inv[col][j]);
                    }
                }
            }
        }
        Some(QMatrix::from_rows(inv))
    }

    pub fn is_identity(&self) -> bool {
        *self == QMatrix::identity(self.n)
    }
}

impl fmt::Display for QMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.n {
            if i > 0 {
                write!(f, ";")?;
            }
            let r: Vec<String> = self.row(i).0.iter().map(|x| x.to_string()).collect();
            write!(f, "{}", r.join(","))?;
        }
        write!(f, "]")
    }
}

/// Indices of a maximal linearly independent subset, in input order.
pub fn independent_subset(vs: &[QVector]) -> Vec<usize> {
    let mut basis: Vec<QVector> = Vec::new();
    let mut pivots: Vec<usize> = Vec::new();
    let mut chosen = Vec::new();
    for (idx, v) in vs.iter().enumerate() {
        let mut w = v.clone();
        for (b, &p) in basis.iter().zip(&pivots) {
            if !w.0[p].is_zero() {
                let f = &w.0[p] / &b.0[p];
                w = w.sub(&b.scale(&f));
            }
        }
        if let Some(p) = w.0.iter().position(|x| !x.is_zero()) {
            basis.push(w);
            pivots.push(p);
            chosen.push(idx);
        }
    }
    chosen
}

/// A vector orthogonal to the span of `vs` (which has dimension d − 1), or
/// `None` if no canonical choice exists without a scale.
fn normal_of(vs: &[QVector], d: usize) -> Option<QVector> {
    match d {
        2 => {
            let u = &vs[0].0;
            Some(QVector(vec![-&u[1], u[0].clone()]))
        }
        3 => {
            let (u, v) = (&vs[0].0, &vs[1].0);
            Some(QVector(vec![
                &(&u[1] * &v[2]) - &(&u[2] * &v[1]),
                &(&u[2] * &v[0]) - &(&u[0] * &v[2]),
                &(&u[0] * &v[1]) - &(&u[1] * &v[0]),
            ]))
        }
        _ => None,
    }
}

/// Affine maps x ↦ x·A + t carrying `src[i]` to `dst[i]`.
///
/// A full-rank source gives one map. A source spanning a hyperplane gives the
/// two completions that send the source normal to ± the target normal; the
/// target normal is scaled by `scale` (derived from the data when `None`).
pub fn solve_affine_map(
    src: &[QVector],
    dst: &[QVector],
    scale: Option<&QuadScalar>,
) -> Result<Vec<(QMatrix, QVector)>, ArithError> {
    if src.is_empty() || src.len() != dst.len() {
        return Err(ArithError::NoSolution);
    }
    let d = src[0].dim();
    let u: Vec<QVector> = src.iter().map(|p| p.sub(&src[0])).collect();
    let w: Vec<QVector> = dst.iter().map(|p| p.sub(&dst[0])).collect();
    let basis = independent_subset(&u);
    let r = basis.len();
    if r + 1 < d {
        return Err(ArithError::Underdetermined);
    }
    let ub: Vec<QVector> = basis.iter().map(|&i| u[i].clone()).collect();
    let wb: Vec<QVector> = basis.iter().map(|&i| w[i].clone()).collect();
    let mut systems: Vec<(Vec<QVector>, Vec<QVector>)> = Vec::new();
    if r == d {
        systems.push((ub, wb));
    } else {
        let field = src.iter().chain(dst).map(QVector::field).max().unwrap_or(0);
        let lambda = match scale {
            Some(s) => s.clone(),
            None if r > 0 => {
                let l2 = &wb[0].norm2() / &ub[0].norm2();
                l2.sqrt_in(field).ok_or_else(|| ArithError::FieldEscape(l2.to_string()))?
            }
            None => return Err(ArithError::Underdetermined),
        };
        let (n, n2) = match d {
            1 => (QVector(vec![QuadScalar::one()]), QVector(vec![lambda.clone()])),
            2 => (normal_of(&ub, 2).unwrap(), normal_of(&wb, 2).unwrap()),
            _ => {
                let raw = normal_of(&wb, 3).unwrap();
                (normal_of(&ub, 3).unwrap(), raw.scale(&lambda.checked_inv()?))
            }
        };
        for sign in [1i64, -1] {
            let mut us = ub.clone();
            let mut ws = wb.clone();
            us.push(n.clone());
            ws.push(n2.scale(&QuadScalar::int(sign)));
            systems.push((us, ws));
        }
    }
    let mut out = Vec::new();
    for (us, ws) in systems {
        let umat = QMatrix::from_rows(us.into_iter().map(|v| v.0).collect());
        let wmat = QMatrix::from_rows(ws.into_iter().map(|v| v.0).collect());
        let Some(uinv) = umat.inverse() else { continue };
        let a = uinv.mul(&wmat);
        if u.iter().zip(&w).all(|(x, y)| x.mul_mat(&a) == *y) {
            let t = dst[0].sub(&src[0].mul_mat(&a));
            out.push((a, t));
        }
    }
    if out.is_empty() {
        Err(ArithError::NoSolution)
    } else {
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn v(x: &[i64]) -> QVector {
        QVector::from_ints(x)
    }

    #[test]
    fn line_map_has_two_completions() {
        let sols = solve_affine_map(&[v(&[0, 0]), v(&[1, 0])], &[v(&[0, 0]), v(&[0, 1])], None).unwrap();
        let mats: Vec<QMatrix> = sols.iter().map(|s| s.0.clone()).collect();
        assert_eq!(mats.len(), 2);
        assert!(mats.contains(&QMatrix::from_int_rows(&[&[0, 1], &[-1, 0]])));
        assert!(mats.contains(&QMatrix::from_int_rows(&[&[0, 1], &[1, 0]])));
    }

    #[test]
    fn point_swap_by_half_turn() {
        // Hand solution: (2,0)·A = (−2,0) and normal (0,2) ↦ ±(0,−2).
        let sols = solve_affine_map(&[v(&[0, 0]), v(&[2, 0])], &[v(&[5, 0]), v(&[3, 0])], None).unwrap();
        let minus_i = QMatrix::identity(2).scale(&QuadScalar::int(-1));
        assert!(sols.contains(&(minus_i, v(&[5, 0]))));
    }

    #[test]
    fn spanning_set_to_itself_gives_identity() {
        let pts = [v(&[0, 0, 0]), v(&[1, 0, 0]), v(&[0, 2, 0]), v(&[0, 0, 3])];
        let sols = solve_affine_map(&pts, &pts, None).unwrap();
        assert_eq!(sols, vec![(QMatrix::identity(3), QVector::zero(3))]);
    }

    #[test]
    fn errors() {
        let pts = [v(&[0, 0, 0]), v(&[1, 0, 0])];
        assert_eq!(solve_affine_map(&pts, &pts, None), Err(ArithError::Underdetermined));
        let bad = solve_affine_map(
            &[v(&[0, 0]), v(&[1, 0]), v(&[2, 0])],
            &[v(&[0, 0]), v(&[1, 0]), v(&[5, 0])],
            None,
        );
        assert_eq!(bad, Err(ArithError::NoSolution));
    }

    #[test]
    fn one_dimensional_point_needs_scale() {
        let sols = solve_affine_map(&[v(&[2])], &[v(&[7])], Some(&QuadScalar::one())).unwrap();
        assert_eq!(sols.len(), 2);
    }

    #[test]
    fn inverse_and_det() {
        let a = QMatrix::from_int_rows(&[&[2, 1, 0], &[0, 1, 0], &[1, 0, 1]]);
        assert_eq!(a.det(), QuadScalar::int(2));
        assert!(a.mul(&a.inverse().unwrap()).is_identity());
    }

    proptest! {
        #[test]
        fn solution_reproduces_targets(
            a in proptest::collection::vec(-4i64..5, 4),
            t in proptest::collection::vec(-4i64..5, 2),
            pts in proptest::collection::vec(proptest::collection::vec(-5i64..6, 2), 3..6),
        ) {
            let m = QMatrix::from_int_rows(&[&a[0..2], &a[2..4]]);
            prop_assume!(!m.det().is_zero());
            let src: Vec<QVector> = pts.iter().map(|p| v(p)).collect();
            prop_assume!(independent_subset(&src.iter().map(|p| p.sub(&src[0])).collect::<Vec<_>>()).len() == 2);
            let tv = v(&t);
            let dst: Vec<QVector> = src.iter().map(|p| p.mul_mat(&m).add(&tv)).collect();
            let sols = solve_affine_map(&src, &dst, None).unwrap();
            prop_assert_eq!(sols.len(), 1);
            for (p, q) in src.iter().zip(&dst) {
                prop_assert_eq!(&p.mul_mat(&sols[0].0).add(&sols[0].1), q);
            }
        }
    }
}
