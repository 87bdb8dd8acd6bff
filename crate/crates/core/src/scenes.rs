//! Scenes: a figure with a transformation class, read from and written to
//! JSON, plus the built-in scenes used by the tests and the CLI.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arith::QuadScalar;
use crate::geometry::{Component, Figure, GeometryError, LabeledPoint, TransformClass};
use crate::linalg::QVector;

pub const SCENE_SCHEMA: &str = "parade-scene/1";

#[derive(Debug, Error)]
pub enum SceneError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}

/// F = {F₀ + x : x ∈ P}.
#[derive(Clone, Debug)]
pub struct TranslatedCopies {
    pub base: Component,
    pub offsets: Vec<QVector>,
}

#[derive(Clone, Debug)]
pub struct Scene {
    pub name: String,
    pub class: TransformClass,
    pub figure: Figure,
    pub copies: Option<TranslatedCopies>,
}

impl Scene {
    pub fn new(name: impl Into<String>, class: TransformClass, components: Vec<Component>, field: u32) -> Result<Self, SceneError> {
        Ok(Scene { name: name.into(), class, figure: Figure::new(components, field)?, copies: None })
    }

    /// Copies of `base` at each offset, with ids `<base id><i>`.
    pub fn from_copies(
        name: impl Into<String>,
        class: TransformClass,
        base: Component,
        offsets: Vec<QVector>,
        field: u32,
    ) -> Result<Self, SceneError> {
        let comps = offsets.iter().enumerate().map(|(i, x)| base.translated(x, format!("{}{}", base.id(), i))).collect();
        let figure = Figure::new(comps, field)?;
        Ok(Scene { name: name.into(), class, figure, copies: Some(TranslatedCopies { base, offsets }) })
    }

    pub fn with_class(mut self, class: TransformClass) -> Self {
        self.class = class;
        self
    }

    pub fn to_file(&self) -> SceneFile {
        let (components, copies) = match &self.copies {
            Some(c) => (
                Vec::new(),
                Some(CopiesSpec { base: ComponentSpec::of(&c.base), offsets: c.offsets.iter().map(vec_strings).collect() }),
            ),
            None => (self.figure.components().iter().map(ComponentSpec::of).collect(), None),
        };
        SceneFile {
            schema: SCENE_SCHEMA.into(),
            name: self.name.clone(),
            dimension: self.figure.dim(),
            field: self.figure.field(),
            class: self.class,
            components,
            copies,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_file()).expect("scene files serialize")
    }

    pub fn from_json(text: &str) -> Result<Self, SceneError> {
        let file: SceneFile = serde_json::from_str(text).map_err(|e| SceneError::Parse(e.to_string()))?;
        file.into_scene()
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ComponentSpec {
    pub id: String,
    pub vertices: Vec<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
}

impl ComponentSpec {
    fn of(k: &Component) -> Self {
        let labeled = k.points().iter().any(|p| !p.label.is_empty());
        ComponentSpec {
            id: k.id().to_string(),
            vertices: k.points().iter().map(|p| vec_strings(&p.at)).collect(),
            labels: labeled.then(|| k.points().iter().map(|p| p.label.clone()).collect()),
        }
    }

    fn build(&self, d: usize) -> Result<Component, SceneError> {
        if let Some(l) = &self.labels {
            if l.len() != self.vertices.len() {
                return Err(SceneError::Parse(format!("component {}: {} labels for {} vertices", self.id, l.len(), self.vertices.len())));
            }
        }
        let mut pts = Vec::new();
        for (i, v) in self.vertices.iter().enumerate() {
            let at = parse_vec(v, d).map_err(|m| SceneError::Parse(format!("component {}: {m}", self.id)))?;
            let label = self.labels.as_ref().map_or(String::new(), |l| l[i].clone());
            pts.push(LabeledPoint { at, label });
        }
        Ok(Component::new(self.id.clone(), pts)?)
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CopiesSpec {
    pub base: ComponentSpec,
    pub offsets: Vec<Vec<String>>,
}

/// On-disk scene. Either `components` or `copies` is given.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SceneFile {
    pub schema: String,
    #[serde(default)]
    pub name: String,
    pub dimension: usize,
    #[serde(default)]
    pub field: u32,
    #[serde(default = "default_class")]
    pub class: TransformClass,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub components: Vec<ComponentSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub copies: Option<CopiesSpec>,
}

fn default_class() -> TransformClass {
    TransformClass::Euclidean
}

impl SceneFile {
    pub fn into_scene(self) -> Result<Scene, SceneError> {
        if self.schema != SCENE_SCHEMA {
            return Err(SceneError::Parse(format!("expected schema {SCENE_SCHEMA}, found {}", self.schema)));
        }
        let d = self.dimension;
        if !(1..=3).contains(&d) {
            return Err(SceneError::Parse(format!("dimension {d} is not 1, 2 or 3")));
        }
        match (&self.copies, self.components.is_empty()) {
            (Some(c), true) => {
                let base = c.base.build(d)?;
                let offsets =
                    c.offsets.iter().map(|v| parse_vec(v, d)).collect::<Result<Vec<_>, _>>().map_err(SceneError::Parse)?;
                if offsets.is_empty() {
                    return Err(SceneError::Parse("copies: no offsets".into()));
                }
                Scene::from_copies(self.name, self.class, base, offsets, self.field)
            }
            (None, false) => {
                let comps = self.components.iter().map(|c| c.build(d)).collect::<Result<Vec<_>, _>>()?;
                Scene::new(self.name, self.class, comps, self.field)
            }
            (Some(_), false) => Err(SceneError::Parse("give either components or copies, not both".into())),
            (None, true) => Err(SceneError::Parse("no components".into())),
        }
    }
}

fn vec_strings(v: &QVector) -> Vec<String> {
    v.0.iter().map(|s| s.to_string()).collect()
}

fn parse_vec(v: &[String], d: usize) -> Result<QVector, String> {
    if v.len() != d {
        return Err(format!("vertex has {} coordinates, expected {d}", v.len()));
    }
    v.iter().map(|s| s.parse::<QuadScalar>().map_err(|e| e.to_string())).collect::<Result<Vec<_>, _>>().map(QVector)
}

fn q(s: &str) -> QuadScalar {
    s.parse().expect("built-in scalar")
}

fn pt(xs: &[&str]) -> QVector {
    QVector(xs.iter().map(|s| q(s)).collect())
}

fn ints(xs: &[i64]) -> QVector {
    QVector::from_ints(xs)
}

fn comp(id: &str, pts: Vec<QVector>) -> Component {
    Component::unlabeled(id, pts).expect("built-in component")
}

/// Axis-diagonal square |x| + |y| = r around c.
pub fn diamond(id: &str, c: &QVector, r: &QuadScalar) -> Component {
    let z = QuadScalar::zero();
    let dirs = [[r.clone(), z.clone()], [z.clone(), r.clone()], [-r, z.clone()], [z, -r]];
    comp(id, dirs.iter().map(|d| c.add(&QVector(d.to_vec()))).collect())
}

/// Triangle with vertices (0,1), (±√3/2, −1/2) around c; symmetry D3.
pub fn d3_triangle(id: &str, c: &QVector) -> Component {
    comp(id, [pt(&["0", "1"]), pt(&["1/2*sqrt(3)", "-1/2"]), pt(&["-1/2*sqrt(3)", "-1/2"])].iter().map(|p| c.add(p)).collect())
}

/// Regular hexagon with vertices (±1, 0), (±1/2, ±√3/2) around c.
pub fn d6_hexagon(id: &str, c: &QVector) -> Component {
    let vs = [
        pt(&["1", "0"]),
        pt(&["-1", "0"]),
        pt(&["1/2", "1/2*sqrt(3)"]),
        pt(&["1/2", "-1/2*sqrt(3)"]),
        pt(&["-1/2", "1/2*sqrt(3)"]),
        pt(&["-1/2", "-1/2*sqrt(3)"]),
    ];
    comp(id, vs.iter().map(|p| c.add(p)).collect())
}

/// A chiral coin with symmetry C4: a diamond plus four decorated points.
pub fn c4_coin(id: &str) -> Component {
    let mut pts: Vec<LabeledPoint> =
        [[1, 0], [0, 1], [-1, 0], [0, -1]].iter().map(|p| LabeledPoint { at: ints(p), label: String::new() }).collect();
    for p in [["1", "1/2"], ["-1/2", "1"], ["-1", "-1/2"], ["1/2", "-1"]] {
        pts.push(LabeledPoint { at: pt(&p), label: "d".into() });
    }
    Component::new(id, pts).expect("coin")
}

fn prism(id: &str) -> Component {
    let base = [["-3/2", "-1/2"], ["1/2", "-1/2"], ["3/2", "1/2"], ["-1/2", "1/2"]];
    let mut pts = Vec::new();
    for z in ["1/2", "3/2"] {
        for b in &base {
            pts.push(pt(&[b[0], b[1], z]));
        }
    }
    comp(id, pts)
}

/// (x, y, z) ↦ (y, −x, −z).
fn prism_swap() -> crate::geometry::Similarity {
    let m = crate::linalg::QMatrix::from_int_rows(&[&[0, -1, 0], &[1, 0, 0], &[0, 0, -1]]);
    crate::geometry::Similarity::orthogonal(m).expect("orthogonal")
}

pub const BUILTIN_SCENES: &[&str] = &[
    "one_square",
    "two_disks_k4",
    "concentric",
    "two_triangles_swap",
    "two_triangles_noswap",
    "prisms_3d",
    "similar_squares",
    "six_coins_c4",
    "fig7_sdp",
    "disk_satellite",
    "three_polygons",
];

pub fn builtin_scene(name: &str) -> Option<Scene> {
    use TransformClass::*;
    let s = match name {
        "one_square" => Scene::new(name, Euclidean, vec![diamond("K", &ints(&[0, 0]), &QuadScalar::one())], 0),
        "two_disks_k4" => {
            let r = QuadScalar::ratio(1, 2);
            Scene::new(name, Euclidean, vec![diamond("plus", &ints(&[1, 0]), &r), diamond("minus", &ints(&[-1, 0]), &r)], 0)
        }
        "concentric" => {
            let o = ints(&[0, 0]);
            Scene::new(name, Euclidean, vec![diamond("inner", &o, &QuadScalar::one()), diamond("outer", &o, &QuadScalar::int(2))], 0)
        }
        "two_triangles_swap" => Scene::new(
            name,
            Euclidean,
            vec![
                comp("plus", vec![ints(&[3, 2]), ints(&[2, 0]), ints(&[4, 0])]),
                comp("minus", vec![ints(&[-3, 2]), ints(&[-2, 0]), ints(&[-4, 0])]),
            ],
            0,
        ),
        "two_triangles_noswap" => Scene::new(
            name,
            Euclidean,
            vec![
                comp("plus", vec![ints(&[0, 0]), ints(&[3, 0]), ints(&[0, 1])]),
                comp("minus", vec![ints(&[5, 0]), ints(&[8, 0]), ints(&[5, 1])]),
            ],
            0,
        ),
        "prisms_3d" => {
            let plus = prism("plus");
            let minus = plus.transformed(&prism_swap(), "minus");
            Scene::new(name, Euclidean, vec![plus, minus], 0)
        }
        "similar_squares" => Scene::new(
            name,
            Similarity,
            vec![
                comp("small", vec![ints(&[0, 0]), ints(&[1, 0]), ints(&[1, 1]), ints(&[0, 1])]),
                comp("large", vec![ints(&[3, 0]), ints(&[5, 0]), ints(&[5, 2]), ints(&[3, 2])]),
            ],
            0,
        ),
        "six_coins_c4" => {
            let offsets = [[0, 0], [3, 0], [6, 0], [0, 3], [3, 3], [6, 3]].iter().map(|p| ints(p)).collect();
            Scene::from_copies(name, Euclidean, c4_coin("coin"), offsets, 0)
        }
        "fig7_sdp" => {
            let offsets = [[0, 0], [10, 1], [4, 7]].iter().map(|p| ints(p)).collect();
            Scene::from_copies(name, Euclidean, d3_triangle("tri", &ints(&[0, 0])), offsets, 3)
        }
        "disk_satellite" => Scene::new(
            name,
            Euclidean,
            vec![
                diamond("disk", &ints(&[0, 0]), &QuadScalar::int(4)),
                comp("satellite", vec![ints(&[10, 0]), ints(&[12, 0]), ints(&[10, 1])]),
            ],
            0,
        ),
        "three_polygons" => Scene::new(
            name,
            Euclidean,
            vec![
                d6_hexagon("hexagon", &ints(&[0, 0])),
                diamond("square", &ints(&[10, 3]), &QuadScalar::one()),
                d3_triangle("triangle", &ints(&[-7, 11])),
            ],
            3,
        ),
        _ => return None,
    };
    Some(s.expect("built-in scenes are valid"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtins_round_trip() {
        for name in BUILTIN_SCENES {
            let s = builtin_scene(name).unwrap();
            let back = Scene::from_json(&s.to_json()).unwrap();
            assert_eq!(back.to_json(), s.to_json(), "{name}");
            assert_eq!(back.figure.components().len(), s.figure.components().len());
        }
    }

    #[test]
    fn copies_expand() {
        let s = builtin_scene("six_coins_c4").unwrap();
        assert_eq!(s.figure.components().len(), 6);
        assert_eq!(s.figure.components()[1].id(), "coin1");
    }

    #[test]
    fn bad_files_rejected() {
        let single = r#"{"schema":"parade-scene/1","dimension":2,"components":[{"id":"p","vertices":[["0","0"]]}]}"#;
        assert!(matches!(Scene::from_json(single), Err(SceneError::Geometry(GeometryError::InfiniteStabilizer(_)))));
        let wrong = r#"{"schema":"x","dimension":2,"components":[]}"#;
        assert!(matches!(Scene::from_json(wrong), Err(SceneError::Parse(_))));
        let bad_num = r#"{"schema":"parade-scene/1","dimension":1,"components":[{"id":"p","vertices":[["a"]]}]}"#;
        assert!(matches!(Scene::from_json(bad_num), Err(SceneError::Parse(_))));
    }
}
