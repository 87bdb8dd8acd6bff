//! Similarities of R^d, figures as labeled point sets, and the enumeration of
//! all transformations carrying one component onto another.

use std::collections::{BTreeSet, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arith::{ArithError, QuadScalar};
use crate::linalg::{independent_subset, solve_affine_map, QMatrix, QVector};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeometryError {
    #[error("component {0} has an infinite stabilizer (affine span of codimension >= 2 or zero diameter)")]
    InfiniteStabilizer(String),
    #[error("similarity scale {0} is not in the scene field")]
    FieldEscape(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("invalid component {0}: {1}")]
    InvalidComponent(String, String),
    #[error("invalid figure: {0}")]
    InvalidFigure(String),
    #[error("invalid similarity: {0}")]
    InvalidSimilarity(String),
    #[error(transparent)]
    Arith(#[from] ArithError),
}

impl GeometryError {
    /// The variant name, as printed by the command line tool.
    pub fn kind(&self) -> &'static str {
        match self {
            GeometryError::InfiniteStabilizer(_) => "InfiniteStabilizer",
            GeometryError::FieldEscape(_) => "FieldEscape",
            GeometryError::DimensionMismatch(_) => "DimensionMismatch",
            GeometryError::InvalidComponent(..) => "InvalidComponent",
            GeometryError::InvalidFigure(_) => "InvalidFigure",
            GeometryError::InvalidSimilarity(_) => "InvalidSimilarity",
            GeometryError::Arith(_) => "ArithmeticError",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, PartialOrd, Ord)]
#[serde(rename_all = "lowercase")]
pub enum TransformClass {
    Euclidean,
    Motion,
    Similarity,
}

impl fmt::Display for TransformClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TransformClass::Euclidean => "euclidean",
            TransformClass::Motion => "motion",
            TransformClass::Similarity => "similarity",
        })
    }
}

impl std::str::FromStr for TransformClass {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "euclidean" => Ok(TransformClass::Euclidean),
            "motion" => Ok(TransformClass::Motion),
            "similarity" => Ok(TransformClass::Similarity),
            _ => Err(format!("unknown transform class {s:?}")),
        }
    }
}

/// x ↦ λ·(x·linear) + translation.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Similarity {
    scale: QuadScalar,
    linear: QMatrix,
    translation: QVector,
}

impl Similarity {
    pub fn new(scale: QuadScalar, linear: QMatrix, translation: QVector) -> Result<Self, GeometryError> {
        if !scale.is_positive() {
            return Err(GeometryError::InvalidSimilarity(format!("scale {scale} is not positive")));
        }
        if linear.dim() != translation.dim() {
            return Err(GeometryError::DimensionMismatch("linear part vs translation".into()));
        }
        if !linear.mul(&linear.transpose()).is_identity() {
            return Err(GeometryError::InvalidSimilarity(format!("{linear} is not orthogonal")));
        }
        Ok(Similarity { scale, linear, translation })
    }

    pub fn identity(d: usize) -> Self {
        Similarity { scale: QuadScalar::one(), linear: QMatrix::identity(d), translation: QVector::zero(d) }
    }

    /// t_v.
    pub fn translation_by(v: &QVector) -> Self {
        Similarity { scale: QuadScalar::one(), linear: QMatrix::identity(v.dim()), translation: v.clone() }
    }

    pub fn orthogonal(linear: QMatrix) -> Result<Self, GeometryError> {
        let d = linear.dim();
        Self::new(QuadScalar::one(), linear, QVector::zero(d))
    }

    pub fn scale(&self) -> &QuadScalar {
        &self.scale
    }

    pub fn linear(&self) -> &QMatrix {
        &self.linear
    }

    pub fn translation(&self) -> &QVector {
        &self.translation
    }

    pub fn dim(&self) -> usize {
        self.translation.dim()
    }

    pub fn is_isometry(&self) -> bool {
        self.scale.is_one()
    }

    pub fn is_motion(&self) -> bool {
        self.is_isometry() && self.linear.det().is_one()
    }

    pub fn is_translation(&self) -> bool {
        self.is_isometry() && self.linear.is_identity()
    }

    pub fn in_class(&self, class: TransformClass) -> bool {
        match class {
            TransformClass::Euclidean => self.is_isometry(),
            TransformClass::Motion => self.is_motion(),
            TransformClass::Similarity => true,
        }
    }

    pub fn apply(&self, x: &QVector) -> QVector {
        x.mul_mat(&self.linear).scale(&self.scale).add(&self.translation)
    }

    /// `self` then `h`: x·(gh) = (x·g)·h.
    pub fn compose(&self, h: &Similarity) -> Similarity {
        Similarity {
            scale: &self.scale * &h.scale,
            linear: self.linear.mul(&h.linear),
            translation: self.translation.mul_mat(&h.linear).scale(&h.scale).add(&h.translation),
        }
    }

    pub fn inverse(&self) -> Similarity {
        let inv_scale = self.scale.checked_inv().expect("positive scale");
        let lt = self.linear.transpose();
        Similarity {
            translation: self.translation.mul_mat(&lt).scale(&inv_scale).neg(),
            scale: inv_scale,
            linear: lt,
        }
    }

    /// a⁻¹·self·a.
    pub fn conjugate_by(&self, a: &Similarity) -> Similarity {
        a.inverse().compose(self).compose(a)
    }
}

impl fmt::Display for Similarity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.scale.is_one() {
            write!(f, "x{}+{}", self.linear, self.translation)
        } else {
            write!(f, "{}*x{}+{}", self.scale, self.linear, self.translation)
        }
    }
}

/// Free-function forms of the similarity group operations.
pub fn sim_compose(g: &Similarity, h: &Similarity) -> Similarity {
    g.compose(h)
}

pub fn sim_inverse(g: &Similarity) -> Similarity {
    g.inverse()
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LabeledPoint {
    pub at: QVector,
    pub label: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Component {
    id: String,
    points: Vec<LabeledPoint>,
}

impl Component {
    pub fn new(id: impl Into<String>, points: Vec<LabeledPoint>) -> Result<Self, GeometryError> {
        let id = id.into();
        if points.is_empty() {
            return Err(GeometryError::InvalidComponent(id, "no points".into()));
        }
        let d = points[0].at.dim();
        if !(1..=3).contains(&d) || points.iter().any(|p| p.at.dim() != d) {
            return Err(GeometryError::DimensionMismatch(format!("component {id}")));
        }
        let set: HashSet<&LabeledPoint> = points.iter().collect();
        if set.len() != points.len() {
            return Err(GeometryError::InvalidComponent(id, "duplicate labeled point".into()));
        }
        Ok(Component { id, points })
    }

    /// Unlabeled points.
    pub fn unlabeled(id: impl Into<String>, pts: Vec<QVector>) -> Result<Self, GeometryError> {
        Self::new(id, pts.into_iter().map(|at| LabeledPoint { at, label: String::new() }).collect())
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn points(&self) -> &[LabeledPoint] {
        &self.points
    }

    pub fn dim(&self) -> usize {
        self.points[0].at.dim()
    }

    pub fn centroid(&self) -> QVector {
        let n = QuadScalar::int(self.points.len() as i64);
        let sum = self.points.iter().fold(QVector::zero(self.dim()), |acc, p| acc.add(&p.at));
        sum.scale(&n.checked_inv().unwrap())
    }

    pub fn squared_diameter(&self) -> QuadScalar {
        let mut best = QuadScalar::zero();
        for (i, p) in self.points.iter().enumerate() {
            for q in &self.points[i + 1..] {
                let d = p.at.sub(&q.at).norm2();
                if d > best {
                    best = d;
                }
            }
        }
        best
    }

    /// Dimension of the affine span of the positions.
    pub fn affine_rank(&self) -> usize {
        let base = &self.points[0].at;
        let diffs: Vec<QVector> = self.points.iter().map(|p| p.at.sub(base)).collect();
        independent_subset(&diffs).len()
    }

    pub fn check_finite_stabilizer(&self) -> Result<(), GeometryError> {
        if self.affine_rank() + 1 < self.dim() {
            Err(GeometryError::InfiniteStabilizer(self.id.clone()))
        } else {
            Ok(())
        }
    }

    pub fn transformed(&self, g: &Similarity, id: impl Into<String>) -> Component {
        Component {
            id: id.into(),
            points: self.points.iter().map(|p| LabeledPoint { at: g.apply(&p.at), label: p.label.clone() }).collect(),
        }
    }

    pub fn translated(&self, v: &QVector, id: impl Into<String>) -> Component {
        self.transformed(&Similarity::translation_by(v), id)
    }

    fn point_set(&self) -> HashSet<(&QVector, &str)> {
        self.points.iter().map(|p| (&p.at, p.label.as_str())).collect()
    }

    /// Equality as labeled point sets.
    pub fn same_set(&self, other: &Component) -> bool {
        self.points.len() == other.points.len() && self.point_set() == other.point_set()
    }

    pub fn field(&self) -> u32 {
        self.points.iter().map(|p| p.at.field()).max().unwrap_or(0)
    }
}

pub fn centroid(k: &Component) -> QVector {
    k.centroid()
}

pub fn squared_diameter(k: &Component) -> QuadScalar {
    k.squared_diameter()
}

#[derive(Clone, Debug)]
pub struct Figure {
    components: Vec<Component>,
    field: u32,
}

impl Figure {
    /// `field` is the scene radicand m (0 for rational scenes).
    pub fn new(components: Vec<Component>, field: u32) -> Result<Self, GeometryError> {
        if components.is_empty() {
            return Err(GeometryError::InvalidFigure("no components".into()));
        }
        let d = components[0].dim();
        let mut ids = HashSet::new();
        let mut seen: HashSet<(&QVector, &str)> = HashSet::new();
        for c in &components {
            if c.dim() != d {
                return Err(GeometryError::DimensionMismatch(format!("component {}", c.id)));
            }
            if !ids.insert(c.id.as_str()) {
                return Err(GeometryError::InvalidFigure(format!("duplicate component id {}", c.id)));
            }
            let f = c.field();
            if f != 0 && f != field {
                return Err(ArithError::MixedField(field, f).into());
            }
            c.check_finite_stabilizer()?;
            for p in &c.points {
                if !seen.insert((&p.at, p.label.as_str())) {
                    return Err(GeometryError::InvalidFigure(format!("components overlap at {}", p.at)));
                }
            }
        }
        Ok(Figure { components, field })
    }

    pub fn components(&self) -> &[Component] {
        &self.components
    }

    pub fn field(&self) -> u32 {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.components[0].dim()
    }

    /// Centroid of all points of all components.
    pub fn centroid(&self) -> QVector {
        let pts: Vec<LabeledPoint> = self.components.iter().flat_map(|c| c.points.iter().cloned()).collect();
        let n = QuadScalar::int(pts.len() as i64);
        pts.iter().fold(QVector::zero(self.dim()), |acc, p| acc.add(&p.at)).scale(&n.checked_inv().unwrap())
    }

    /// The figure moved by `g`; component ids are kept.
    pub fn transformed(&self, g: &Similarity) -> Figure {
        Figure {
            components: self.components.iter().map(|c| c.transformed(g, c.id.clone())).collect(),
            field: self.field,
        }
    }

    /// Index of the component equal to `k` as a labeled set.
    pub fn find_component(&self, k: &Component) -> Option<usize> {
        self.components.iter().position(|c| c.same_set(k))
    }
}

fn sorted_distances(k: &Component) -> Vec<QuadScalar> {
    let mut out = Vec::new();
    for (i, p) in k.points.iter().enumerate() {
        for q in &k.points[i + 1..] {
            out.push(p.at.sub(&q.at).norm2());
        }
    }
    out.sort();
    out
}

fn label_multiset(k: &Component) -> Vec<&str> {
    let mut v: Vec<&str> = k.points.iter().map(|p| p.label.as_str()).collect();
    v.sort();
    v
}

/// All g in `class` with src·g = dst as labeled point sets, sorted.
pub fn maps_between(
    src: &Component,
    dst: &Component,
    class: TransformClass,
    field: u32,
) -> Result<Vec<Similarity>, GeometryError> {
    src.check_finite_stabilizer()?;
    dst.check_finite_stabilizer()?;
    if src.dim() != dst.dim() {
        return Err(GeometryError::DimensionMismatch(format!("{} vs {}", src.id, dst.id)));
    }
    if src.points.len() != dst.points.len() || label_multiset(src) != label_multiset(dst) {
        return Ok(Vec::new());
    }
    let d = src.dim();
    let (diam_s, diam_d) = (src.squared_diameter(), dst.squared_diameter());
    let lambda2 = match class {
        TransformClass::Similarity => {
            if diam_s.is_zero() {
                return Err(GeometryError::InfiniteStabilizer(src.id.clone()));
            }
            &diam_d / &diam_s
        }
        _ => QuadScalar::one(),
    };
    let ds: Vec<QuadScalar> = sorted_distances(src).iter().map(|x| x * &lambda2).collect();
    if ds != sorted_distances(dst) {
        return Ok(Vec::new());
    }
    let lambda = lambda2.sqrt_in(field).ok_or_else(|| GeometryError::FieldEscape(lambda2.to_string()))?;

    let (cs, cd) = (src.centroid(), dst.centroid());
    let rel: Vec<QVector> = src.points.iter().map(|p| p.at.sub(&cs)).collect();
    let basis = independent_subset(&rel);
    let targets: HashSet<(&QVector, &str)> = dst.point_set();

    let mut found: BTreeSet<Similarity> = BTreeSet::new();
    let mut assign: Vec<usize> = Vec::new();
    let mut stack: Vec<(usize, usize)> = vec![(0, 0)];
    // Depth-first over images of the basis points.
    while let Some((level, start)) = stack.pop() {
        assign.truncate(level);
        if level == basis.len() {
            let mut s = vec![cs.clone()];
            let mut t = vec![cd.clone()];
            for (k, &bi) in basis.iter().enumerate() {
                s.push(src.points[bi].at.clone());
                t.push(dst.points[assign[k]].at.clone());
            }
            let sols = match solve_affine_map(&s, &t, Some(&lambda)) {
                Ok(v) => v,
                Err(ArithError::NoSolution) => continue,
                Err(e) => return Err(e.into()),
            };
            for (a, tr) in sols {
                if a.mul(&a.transpose()) != QMatrix::identity(d).scale(&lambda2) {
                    continue;
                }
                let linear = a.scale(&lambda.checked_inv()?);
                let g = Similarity { scale: lambda.clone(), linear, translation: tr };
                if !g.in_class(class) {
                    continue;
                }
                let ok = src.points.iter().all(|p| targets.contains(&(&g.apply(&p.at), p.label.as_str())));
                if ok {
                    found.insert(g);
                }
            }
            continue;
        }
        let bp = &src.points[basis[level]];
        for j in start..dst.points.len() {
            let q = &dst.points[j];
            if q.label != bp.label || assign.contains(&j) {
                continue;
            }
            if q.at.sub(&cd).norm2() != &rel[basis[level]].norm2() * &lambda2 {
                continue;
            }
            let consistent = (0..level).all(|k| {
                let pk = &src.points[basis[k]].at;
                let qk = &dst.points[assign[k]].at;
                q.at.sub(qk).norm2() == &bp.at.sub(pk).norm2() * &lambda2
            });
            if consistent {
                stack.push((level, j + 1));
                stack.push((level + 1, 0));
                assign.push(j);
                break;
            }
        }
    }
    Ok(found.into_iter().collect())
}

/// All g in `class` mapping every component exactly onto some component.
pub fn global_group(fig: &Figure, class: TransformClass) -> Result<Vec<Similarity>, GeometryError> {
    let first = &fig.components[0];
    let mut out = BTreeSet::new();
    for k in &fig.components {
        for g in maps_between(first, k, class, fig.field)? {
            let all = fig.components.iter().all(|c| fig.find_component(&c.transformed(&g, "")).is_some());
            if all {
                out.insert(g);
            }
        }
    }
    Ok(out.into_iter().collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(x: &[i64]) -> QVector {
        QVector::from_ints(x)
    }

    fn square(cx: i64, cy: i64, id: &str) -> Component {
        Component::unlabeled(id, vec![v(&[cx, cy + 1]), v(&[cx - 1, cy]), v(&[cx, cy - 1]), v(&[cx + 1, cy])]).unwrap()
    }

    fn rot90() -> Similarity {
        // (1,0) ↦ (0,−1)
        Similarity::orthogonal(QMatrix::from_int_rows(&[&[0, -1], &[1, 0]])).unwrap()
    }

    #[test]
    fn compose_convention() {
        let g = rot90().compose(&Similarity::translation_by(&v(&[1, 0])));
        assert_eq!(g.apply(&v(&[1, 0])), v(&[1, -1]));
        let t = Similarity::translation_by(&v(&[1, 2])).compose(&Similarity::translation_by(&v(&[3, -1])));
        assert_eq!(t, Similarity::translation_by(&v(&[4, 1])));
        assert_eq!(g.compose(&g.inverse()), Similarity::identity(2));
        let half = Similarity::new(QuadScalar::int(2), QMatrix::identity(2), QVector::zero(2)).unwrap().inverse();
        assert_eq!(half.scale(), &QuadScalar::ratio(1, 2));
        assert_eq!(Similarity::translation_by(&v(&[2, 5])).inverse(), Similarity::translation_by(&v(&[-2, -5])));
    }

    #[test]
    fn centroid_and_diameter() {
        let tri = Component::unlabeled("t", vec![v(&[0, 0]), v(&[2, 0]), v(&[0, 2])]).unwrap();
        assert_eq!(tri.centroid(), QVector(vec![QuadScalar::ratio(2, 3), QuadScalar::ratio(2, 3)]));
        let unit = Component::unlabeled("u", vec![v(&[0, 0]), v(&[1, 0]), v(&[0, 1]), v(&[1, 1])]).unwrap();
        assert_eq!(unit.centroid(), QVector(vec![QuadScalar::ratio(1, 2), QuadScalar::ratio(1, 2)]));
        assert_eq!(unit.squared_diameter(), QuadScalar::int(2));
        let single = Component::unlabeled("p", vec![v(&[4, 4])]).unwrap();
        assert_eq!(single.squared_diameter(), QuadScalar::zero());
        assert_eq!(single.centroid(), v(&[4, 4]));
        let seg = Component::unlabeled("s", vec![v(&[0, 0]), v(&[3, 4])]).unwrap();
        assert_eq!(seg.squared_diameter(), QuadScalar::int(25));
    }

    #[test]
    fn square_has_dihedral_stabilizer() {
        let unit = Component::unlabeled("u", vec![v(&[0, 0]), v(&[1, 0]), v(&[0, 1]), v(&[1, 1])]).unwrap();
        let maps = maps_between(&unit, &unit, TransformClass::Euclidean, 0).unwrap();
        assert_eq!(maps.len(), 8);
        // Independent check: the vertex permutations preserving all distances.
        let pts: Vec<QVector> = unit.points().iter().map(|p| p.at.clone()).collect();
        let mut count = 0;
        for perm in permutations(4) {
            if (0..4).all(|i| (0..4).all(|j| pts[i].sub(&pts[j]).norm2() == pts[perm[i]].sub(&pts[perm[j]]).norm2())) {
                count += 1;
            }
        }
        assert_eq!(count, 8);
        for g in &maps {
            for h in &maps {
                assert!(maps.contains(&g.compose(h)));
            }
            assert!(maps.contains(&g.inverse()));
        }
        assert_eq!(maps_between(&unit, &unit, TransformClass::Motion, 0).unwrap().len(), 4);
    }

    fn permutations(n: usize) -> Vec<Vec<usize>> {
        if n == 0 {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for p in permutations(n - 1) {
            for i in 0..n {
                let mut q = p.clone();
                q.insert(i, n - 1);
                out.push(q);
            }
        }
        out
    }

    #[test]
    fn translated_square_is_a_coset() {
        let a = square(0, 0, "a");
        let b = square(3, 0, "b");
        let maps = maps_between(&a, &b, TransformClass::Euclidean, 0).unwrap();
        assert_eq!(maps.len(), 8);
        let stab = maps_between(&a, &a, TransformClass::Euclidean, 0).unwrap();
        let t = Similarity::translation_by(&v(&[3, 0]));
        for s in &stab {
            assert!(maps.contains(&s.compose(&t)));
        }
        for g in &maps {
            assert_eq!(g.apply(&a.centroid()), b.centroid());
        }
    }

    #[test]
    fn non_congruent_and_degenerate() {
        let a = square(0, 0, "a");
        let tri = Component::unlabeled("t", vec![v(&[0, 0]), v(&[1, 0]), v(&[0, 1]), v(&[5, 5])]).unwrap();
        assert!(maps_between(&a, &tri, TransformClass::Euclidean, 0).unwrap().is_empty());
        let pt = Component::unlabeled("p", vec![v(&[0, 0])]).unwrap();
        assert_eq!(
            maps_between(&pt, &pt, TransformClass::Euclidean, 0),
            Err(GeometryError::InfiniteStabilizer("p".into()))
        );
    }

    #[test]
    fn similarity_scale_and_field_escape() {
        let a = square(0, 0, "a");
        let big = Component::unlabeled("b", vec![v(&[10, 2]), v(&[8, 0]), v(&[10, -2]), v(&[12, 0])]).unwrap();
        let maps = maps_between(&a, &big, TransformClass::Similarity, 0).unwrap();
        assert_eq!(maps.len(), 8);
        assert!(maps.iter().all(|g| g.scale() == &QuadScalar::int(2)));
        assert!(maps_between(&a, &big, TransformClass::Euclidean, 0).unwrap().is_empty());
        // Same shape scaled by sqrt(2): a rotated square.
        let rot = Component::unlabeled("r", vec![v(&[1, 1]), v(&[-1, 1]), v(&[-1, -1]), v(&[1, -1])]).unwrap();
        assert!(matches!(maps_between(&a, &rot, TransformClass::Similarity, 0), Err(GeometryError::FieldEscape(_))));
        assert_eq!(maps_between(&a, &rot, TransformClass::Similarity, 2).unwrap().len(), 8);
    }

    #[test]
    fn global_group_of_two_squares() {
        let lp = |x: i64, y: i64, l: &str| LabeledPoint { at: v(&[x, y]), label: l.into() };
        // Diamonds at (±3,0): {1, refl_x, refl_y, rot180}.
        let a = square(-3, 0, "a");
        let b = square(3, 0, "b");
        let fig = Figure::new(vec![a, b], 0).unwrap();
        let g = global_group(&fig, TransformClass::Euclidean).unwrap();
        assert_eq!(g.len(), 4);
        for x in &g {
            assert_eq!(x.apply(&fig.centroid()), fig.centroid());
            for y in &g {
                assert!(g.contains(&x.compose(y)));
            }
        }
        let scal = Component::new("s", vec![lp(0, 0, ""), lp(4, 0, ""), lp(0, 1, "")]).unwrap();
        let one = Figure::new(vec![scal], 0).unwrap();
        assert_eq!(global_group(&one, TransformClass::Euclidean).unwrap(), vec![Similarity::identity(2)]);
        assert_eq!(
            global_group(&fig, TransformClass::Similarity).unwrap(),
            global_group(&fig, TransformClass::Euclidean).unwrap()
        );
    }

    #[test]
    fn three_dimensional_prism() {
        let pts: Vec<QVector> =
            [[0, 0, 0], [2, 0, 0], [3, 1, 0], [1, 1, 0], [0, 0, 1], [2, 0, 1], [3, 1, 1], [1, 1, 1]]
                .iter()
                .map(|p| v(p))
                .collect();
        let k = Component::unlabeled("k", pts).unwrap();
        assert_eq!(maps_between(&k, &k, TransformClass::Euclidean, 0).unwrap().len(), 4);
        let seg = Component::unlabeled("s", vec![v(&[0, 0, 0]), v(&[1, 0, 0])]).unwrap();
        assert!(seg.check_finite_stabilizer().is_err());
    }
}
