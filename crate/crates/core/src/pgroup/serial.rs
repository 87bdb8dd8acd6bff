//! JSON record `parade-pg/1` and DOT export.
//!
//! Charted realizations are written as elements, unit, inverses, charts,
//! support triples and product triples. Anything else is tabulated: every
//! word of length 2..=depth together with its ∇.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::{for_each_word, Ambient, ChartedPartialGroup, Elem, PartialGroup, PgError, PgRef};
use crate::arith::QuadScalar;
use crate::geometry::Similarity;
use crate::linalg::{QMatrix, QVector};

pub const SCHEMA: &str = "parade-pg/1";

/// A partial group known only through its words up to a fixed length.
#[derive(Clone, Debug)]
pub struct TabulatedPartialGroup {
    names: Vec<String>,
    unit: Elem,
    inverse: Vec<Elem>,
    depth: usize,
    words: HashMap<Vec<Elem>, Elem>,
}

impl TabulatedPartialGroup {
    pub fn from_pg(pg: &dyn PartialGroup, depth: usize) -> Self {
        let mut words = HashMap::new();
        for_each_word(pg, depth, |w| {
            if w.len() >= 2 {
                words.insert(w.to_vec(), pg.nabla(w).expect("words reduce"));
            }
            true
        });
        TabulatedPartialGroup {
            names: (0..pg.size()).map(|e| pg.name(e)).collect(),
            unit: pg.unit(),
            inverse: (0..pg.size()).map(|e| pg.inverse(e)).collect(),
            depth,
            words,
        }
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    /// Words of length ≥ 2 with their ∇, sorted by length then letters.
    pub fn sorted_words(&self) -> Vec<(&Vec<Elem>, Elem)> {
        let mut v: Vec<_> = self.words.iter().map(|(w, &r)| (w, r)).collect();
        v.sort_by(|a, b| a.0.len().cmp(&b.0.len()).then_with(|| a.0.cmp(b.0)));
        v
    }
}

impl PartialGroup for TabulatedPartialGroup {
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
        w.len() <= 1 || self.words.contains_key(w)
    }

    fn nabla(&self, w: &[Elem]) -> Option<Elem> {
        match w.len() {
            0 => None,
            1 => Some(w[0]),
            _ => self.words.get(w).copied(),
        }
    }

    fn name(&self, e: Elem) -> String {
        self.names[e].clone()
    }

    fn exact_depth(&self) -> Option<usize> {
        Some(self.depth)
    }
}

#[derive(Serialize, Deserialize)]
struct SimRecord {
    scale: String,
    linear: Vec<Vec<String>>,
    translation: Vec<String>,
}

#[derive(Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
enum AmbientRecord {
    Similarities(Vec<SimRecord>),
    Labels(Vec<String>),
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PgRecord {
    schema: String,
    kind: String,
    elements: Vec<String>,
    unit: Elem,
    inverse: Vec<Elem>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    charts: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    support: Option<Vec<[usize; 3]>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    products: Option<Vec<[usize; 3]>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    ambient: Option<AmbientRecord>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    depth: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    words: Option<Vec<Vec<Elem>>>,
}

fn sim_record(g: &Similarity) -> SimRecord {
    SimRecord {
        scale: g.scale().to_string(),
        linear: g.linear().rows().iter().map(|r| r.iter().map(|x| x.to_string()).collect()).collect(),
        translation: g.translation().0.iter().map(|x| x.to_string()).collect(),
    }
}

fn parse_sim(r: &SimRecord) -> Result<Similarity, PgError> {
    let err = |e: String| PgError::Serialization(e);
    let q = |s: &str| QuadScalar::from_str(s).map_err(|e| err(e.to_string()));
    let rows = r.linear.iter().map(|row| row.iter().map(|s| q(s)).collect::<Result<Vec<_>, _>>()).collect::<Result<Vec<_>, _>>()?;
    if rows.iter().any(|row| row.len() != rows.len()) {
        return Err(err("linear part is not square".into()));
    }
    let t = r.translation.iter().map(|s| q(s)).collect::<Result<Vec<_>, _>>()?;
    Similarity::new(q(&r.scale)?, QMatrix::from_rows(rows), QVector(t)).map_err(|e| err(e.to_string()))
}

fn record_of(pg: &dyn PartialGroup, depth: usize) -> PgRecord {
    let n = pg.size();
    let mut rec = PgRecord {
        schema: SCHEMA.into(),
        kind: String::new(),
        elements: (0..n).map(|e| pg.name(e)).collect(),
        unit: pg.unit(),
        inverse: (0..n).map(|e| pg.inverse(e)).collect(),
        charts: None,
        support: None,
        products: None,
        ambient: None,
        depth: None,
        words: None,
    };
    if let Some(c) = pg.as_charted() {
        rec.kind = "charted".into();
        rec.charts = Some(c.charts().to_vec());
        rec.support = Some(c.support().into_iter().map(|(x, e, y)| [x, e, y]).collect());
        rec.products = Some(c.products().into_iter().map(|(a, b, p)| [a, b, p]).collect());
        rec.ambient = c.ambient().map(|a| match a {
            Ambient::Similarities(v) => AmbientRecord::Similarities(v.iter().map(sim_record).collect()),
            Ambient::Labels(v) => AmbientRecord::Labels(v.clone()),
        });
    } else {
        let t = TabulatedPartialGroup::from_pg(pg, pg.exact_depth().map_or(depth, |d| d.min(depth)));
        rec.kind = "tabulated".into();
        rec.depth = Some(t.depth);
        rec.words = Some(
            t.sorted_words()
                .into_iter()
                .map(|(w, r)| {
                    let mut v = w.clone();
                    v.push(r);
                    v
                })
                .collect(),
        );
    }
    rec
}

/// Compact-but-readable JSON: arrays of scalars stay on one line.
fn emit(v: &Value, indent: usize, out: &mut String) {
    let pad = "  ".repeat(indent);
    match v {
        Value::Array(items) if items.iter().all(|x| !x.is_array() && !x.is_object()) => {
            out.push_str(&serde_json::to_string(v).expect("json"));
        }
        Value::Array(items) => {
            if items.is_empty() {
                out.push_str("[]");
                return;
            }
            out.push_str("[\n");
            for (i, x) in items.iter().enumerate() {
                out.push_str(&pad);
                out.push_str("  ");
                emit(x, indent + 1, out);
                out.push_str(if i + 1 < items.len() { ",\n" } else { "\n" });
            }
            out.push_str(&pad);
            out.push(']');
        }
        Value::Object(map) => {
            out.push_str("{\n");
            for (i, (k, x)) in map.iter().enumerate() {
                let _ = write!(out, "{pad}  {}: ", serde_json::to_string(k).expect("json"));
                emit(x, indent + 1, out);
                out.push_str(if i + 1 < map.len() { ",\n" } else { "\n" });
            }
            out.push_str(&pad);
            out.push('}');
        }
        _ => out.push_str(&serde_json::to_string(v).expect("json")),
    }
}

/// Serializes any partial group; non-charted ones are tabulated to `depth`.
pub fn to_json(pg: &dyn PartialGroup, depth: usize) -> String {
    let value = serde_json::to_value(record_of(pg, depth)).expect("record serializes");
    let mut out = String::new();
    emit(&value, 0, &mut out);
    out.push('\n');
    out
}

/// Parses a `parade-pg/1` record.
pub fn from_json(text: &str) -> Result<PgRef, PgError> {
    let rec: PgRecord = serde_json::from_str(text).map_err(|e| PgError::Serialization(e.to_string()))?;
    if rec.schema != SCHEMA {
        return Err(PgError::Serialization(format!("unsupported schema {:?}", rec.schema)));
    }
    let n = rec.elements.len();
    if rec.unit >= n || rec.inverse.len() != n || rec.inverse.iter().any(|&i| i >= n) {
        return Err(PgError::Serialization("unit or inverse out of range".into()));
    }
    match rec.kind.as_str() {
        "charted" => {
            let (Some(charts), Some(support), Some(products)) = (rec.charts, rec.support, rec.products) else {
                return Err(PgError::Serialization("charted record needs charts, support and products".into()));
            };
            let c = charts.len();
            let mut maps = vec![vec![None; c]; n];
            for [x, e, y] in support {
                if x >= c || y >= c || e >= n || maps[e][x].replace(y).is_some() {
                    return Err(PgError::Serialization(format!("bad support triple [{x}, {e}, {y}]")));
                }
            }
            let products: Vec<(Elem, Elem, Elem)> = products.into_iter().map(|[a, b, p]| (a, b, p)).collect();
            let mut pg = ChartedPartialGroup::from_tables(rec.elements, rec.unit, rec.inverse, charts, maps, &products)?;
            if let Some(a) = rec.ambient {
                let amb = match a {
                    AmbientRecord::Similarities(v) => Ambient::Similarities(v.iter().map(parse_sim).collect::<Result<_, _>>()?),
                    AmbientRecord::Labels(v) => Ambient::Labels(v),
                };
                pg.set_ambient(amb)?;
            }
            Ok(Arc::new(pg))
        }
        "tabulated" => {
            let (Some(depth), Some(list)) = (rec.depth, rec.words) else {
                return Err(PgError::Serialization("tabulated record needs depth and words".into()));
            };
            let mut words = HashMap::new();
            for mut w in list {
                let bad = w.len() < 3 || w.len() > depth + 1 || w.iter().any(|&e| e >= n);
                let r = w.pop().unwrap_or(0);
                if bad || words.insert(w, r).is_some() {
                    return Err(PgError::Serialization("malformed word entry".into()));
                }
            }
            if rec.elements.iter().collect::<std::collections::HashSet<_>>().len() != n {
                return Err(PgError::Serialization("duplicate element names".into()));
            }
            Ok(Arc::new(TabulatedPartialGroup { names: rec.elements, unit: rec.unit, inverse: rec.inverse, depth, words }))
        }
        k => Err(PgError::Serialization(format!("unknown kind {k:?}"))),
    }
}

/// Charts as nodes, support triples as labelled edges.
pub fn to_dot(pg: &ChartedPartialGroup) -> String {
    let mut out = String::from("digraph support {\n");
    for (i, c) in pg.charts().iter().enumerate() {
        let _ = writeln!(out, "  c{i} [label={:?}];", c);
    }
    for (x, e, y) in pg.support() {
        let _ = writeln!(out, "  c{x} -> c{y} [label={:?}];", pg.name(e));
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pgroup::{iso_search, Congruence, Quotient};

    fn c3() -> ChartedPartialGroup {
        ChartedPartialGroup::build(
            vec!["1".into(), "r".into(), "rr".into()],
            0,
            vec![0, 2, 1],
            vec!["*".into()],
            vec![vec![Some(0)]; 3],
            |a, b| Some((a + b) % 3),
        )
        .unwrap()
    }

    #[test]
    fn charted_round_trip_is_bit_exact() {
        let g = c3()
            .with_ambient(Ambient::Labels(vec!["e".into(), "x".into(), "y".into()]))
            .unwrap();
        let text = to_json(&g, 4);
        let back = from_json(&text).unwrap();
        assert_eq!(to_json(&*back, 4), text);
        assert!(back.as_charted().is_some());
    }

    #[test]
    fn tabulated_round_trip() {
        let g: PgRef = Arc::new(c3());
        let q = Quotient::new(g.clone(), Congruence::identity(3), 3).unwrap();
        let text = to_json(&q, 3);
        assert!(text.contains("\"tabulated\""));
        let back = from_json(&text).unwrap();
        assert_eq!(to_json(&*back, 3), text);
        assert!(iso_search(&*g, &*back, 3).is_some());
    }

    #[test]
    fn rejects_garbage() {
        assert!(from_json("{}").is_err());
        assert!(from_json(&to_json(&c3(), 2).replace(SCHEMA, "other/9")).is_err());
    }

    #[test]
    fn dot_lists_edges() {
        let d = to_dot(&c3());
        assert_eq!(d.matches("->").count(), 3);
    }
}
