//! Recipe files: a JSON expression tree evaluated to a partial group.

use std::path::{Path, PathBuf};
use std::sync::Arc;

use serde_json::{Map, Value};

use parade_core::arith::QuadScalar;
use parade_core::constructions::{
    action_grazian_henke, action_wedge_over_fset, parade_from_figure, union_in_ambient, vector_parades, wedge,
    ChainedAction, FactorSet, FactorSetProduct, GroupTable, PgAction, Semidirect,
};
use parade_core::geometry::TransformClass;
use parade_core::linalg::QVector;
use parade_core::pgroup::{Congruence, Elem, PSet, PartialGroup, PgRef, Quotient};

use crate::error::CliError;
use crate::inputs::load_scene;

pub const RECIPE_SCHEMA: &str = "parade-recipe/1";

#[derive(Clone)]
pub enum Built {
    Group(GroupTable),
    Pg(PgRef),
}

impl Built {
    pub fn into_pg(self) -> PgRef {
        match self {
            Built::Group(g) => Arc::new(g.as_partial_group()),
            Built::Pg(p) => p,
        }
    }
}

pub struct Recipe {
    pub name: String,
    expr: Value,
    defs: Map<String, Value>,
    dir: PathBuf,
}

fn parse_err(m: impl Into<String>) -> CliError {
    CliError::Parse(m.into())
}

impl Recipe {
    pub fn from_value(v: Value, dir: &Path) -> Result<Self, CliError> {
        let Value::Object(mut obj) = v else { return Err(parse_err("recipe must be an object")) };
        match obj.get("schema").and_then(Value::as_str) {
            Some(RECIPE_SCHEMA) => {}
            Some(other) => return Err(parse_err(format!("expected schema {RECIPE_SCHEMA}, found {other}"))),
            None => return Err(parse_err("recipe has no schema field")),
        }
        let name = obj.get("name").and_then(Value::as_str).unwrap_or("recipe").to_string();
        let expr = obj.remove("expr").ok_or_else(|| parse_err("recipe has no expr"))?;
        let defs = match obj.remove("defs") {
            None => Map::new(),
            Some(Value::Object(m)) => m,
            Some(_) => return Err(parse_err("defs must be an object")),
        };
        Ok(Recipe { name, expr, defs, dir: dir.to_path_buf() })
    }

    pub fn build(&self, depth: usize) -> Result<Built, CliError> {
        Evaluator { recipe: self, depth, stack: Vec::new() }.eval(&self.expr)
    }
}

struct Evaluator<'a> {
    recipe: &'a Recipe,
    depth: usize,
    stack: Vec<String>,
}

fn field<'v>(obj: &'v Map<String, Value>, key: &str, node: &str) -> Result<&'v Value, CliError> {
    obj.get(key).ok_or_else(|| parse_err(format!("{node}: missing {key:?}")))
}

fn strings(v: &Value, what: &str) -> Result<Vec<String>, CliError> {
    v.as_array()
        .ok_or_else(|| parse_err(format!("{what} must be a list")))?
        .iter()
        .map(|x| x.as_str().map(str::to_string).ok_or_else(|| parse_err(format!("{what} must hold strings"))))
        .collect()
}

fn scalar(v: &Value) -> Result<QuadScalar, CliError> {
    match v {
        Value::String(s) => s.parse().map_err(|e| parse_err(format!("{e}"))),
        Value::Number(n) => n.as_i64().map(QuadScalar::int).ok_or_else(|| parse_err(format!("{n} is not an integer"))),
        _ => Err(parse_err("coordinates must be strings or integers")),
    }
}

fn element(pg: &dyn PartialGroup, name: &str) -> Result<Elem, CliError> {
    (0..pg.size()).find(|&e| pg.name(e) == name).ok_or_else(|| parse_err(format!("unknown element {name:?}")))
}

fn group_element(g: &GroupTable, name: &str) -> Result<Elem, CliError> {
    g.index_of(name).ok_or_else(|| parse_err(format!("{} has no element {name:?}", g.name())))
}

/// Per-element tables written as {"γ": {"η": "η′", …}, …}; missing entries
/// keep η.
fn permutation_table(
    v: Option<&Value>,
    keys: &dyn Fn(&str) -> Result<Elem, CliError>,
    nkeys: usize,
    h: &dyn PartialGroup,
) -> Result<Vec<Vec<Elem>>, CliError> {
    let mut out: Vec<Vec<Elem>> = vec![(0..h.size()).collect(); nkeys];
    let Some(v) = v else { return Ok(out) };
    let obj = v.as_object().ok_or_else(|| parse_err("action tables must be objects"))?;
    for (k, row) in obj {
        let g = keys(k)?;
        let row = row.as_object().ok_or_else(|| parse_err("action rows must be objects"))?;
        for (a, b) in row {
            let b = b.as_str().ok_or_else(|| parse_err("action entries must be strings"))?;
            out[g][element(h, a)?] = element(h, b)?;
        }
    }
    Ok(out)
}

impl Evaluator<'_> {
    fn eval(&mut self, v: &Value) -> Result<Built, CliError> {
        match v {
            Value::String(s) => Ok(Built::Group(GroupTable::builtin(s).map_err(|e| parse_err(e.to_string()))?)),
            Value::Object(obj) if obj.len() == 1 => {
                let (op, arg) = obj.iter().next().expect("one entry");
                self.node(op, arg)
            }
            _ => Err(parse_err(format!("malformed expression {v}"))),
        }
    }

    fn eval_pg(&mut self, v: &Value) -> Result<PgRef, CliError> {
        Ok(self.eval(v)?.into_pg())
    }

    fn eval_group(&mut self, v: &Value, node: &str) -> Result<GroupTable, CliError> {
        match self.eval(v)? {
            Built::Group(g) => Ok(g),
            Built::Pg(_) => Err(parse_err(format!("{node}: expected a group"))),
        }
    }

    fn node(&mut self, op: &str, arg: &Value) -> Result<Built, CliError> {
        let obj = || arg.as_object().ok_or_else(|| parse_err(format!("{op}: expected an object")));
        match op {
            "ref" => {
                let name = arg.as_str().ok_or_else(|| parse_err("ref: expected a name"))?;
                if self.stack.iter().any(|s| s == name) {
                    return Err(parse_err(format!("ref: cycle through {name:?}")));
                }
                let def = self.recipe.defs.get(name).ok_or_else(|| parse_err(format!("ref: undefined name {name:?}")))?;
                self.stack.push(name.to_string());
                let out = self.eval(def);
                self.stack.pop();
                out
            }
            "group" => {
                let o = obj()?;
                let name = o.get("name").and_then(Value::as_str).unwrap_or("G");
                let elems = strings(field(o, "elements", op)?, "group elements")?;
                let rows = field(o, "table", op)?.as_array().ok_or_else(|| parse_err("group table must be a list"))?;
                let mut table = Vec::new();
                for r in rows {
                    let names = strings(r, "group table rows")?;
                    let idx = names
                        .iter()
                        .map(|n| elems.iter().position(|e| e == n).ok_or_else(|| parse_err(format!("group: unknown element {n:?}"))))
                        .collect::<Result<Vec<_>, _>>()?;
                    table.push(idx);
                }
                Ok(Built::Group(GroupTable::from_table(name, elems, table)?))
            }
            "wedge" => {
                let parts = arg.as_array().ok_or_else(|| parse_err("wedge: expected a list"))?;
                let gs = parts.iter().map(|p| self.eval_group(p, "wedge")).collect::<Result<Vec<_>, _>>()?;
                if gs.is_empty() {
                    return Err(parse_err("wedge: no summands"));
                }
                Ok(Built::Pg(Arc::new(wedge(&gs).pg)))
            }
            "union" => {
                let o = obj()?;
                let g0 = self.eval_group(field(o, "ambient", op)?, op)?;
                let sub = |k: &str| -> Result<Vec<Elem>, CliError> {
                    let mut v = vec![g0.unit()];
                    for n in strings(field(o, k, "union")?, k)? {
                        v.push(group_element(&g0, &n)?);
                    }
                    Ok(v)
                };
                Ok(Built::Pg(Arc::new(union_in_ambient(&g0, &sub("plus")?, &sub("minus")?)?)))
            }
            "vparades" => {
                let pts = arg.as_array().ok_or_else(|| parse_err("vparades: expected a list of points"))?;
                let pts = pts
                    .iter()
                    .map(|p| {
                        let cs = p.as_array().ok_or_else(|| parse_err("vparades: points are lists"))?;
                        cs.iter().map(scalar).collect::<Result<Vec<_>, _>>().map(QVector)
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                if pts.iter().any(|p| p.dim() != pts[0].dim()) {
                    return Err(parse_err("vparades: mixed dimensions"));
                }
                Ok(Built::Pg(Arc::new(vector_parades(&pts)?)))
            }
            "parade" => {
                let o = obj()?;
                let src = field(o, "scene", op)?.as_str().ok_or_else(|| parse_err("parade: scene must be a string"))?;
                let scene = load_scene(src, &self.recipe.dir)?;
                let class = match o.get("class").and_then(Value::as_str) {
                    Some(c) => c.parse::<TransformClass>().map_err(parse_err)?,
                    None => scene.class,
                };
                Ok(Built::Pg(Arc::new(parade_from_figure(&scene.figure, class)?)))
            }
            "quotient" => {
                let o = obj()?;
                let base = self.eval_pg(field(o, "base", op)?)?;
                let pairs = field(o, "pairs", op)?.as_array().ok_or_else(|| parse_err("quotient: pairs must be a list"))?;
                let mut ps = Vec::new();
                for p in pairs {
                    let ab = strings(p, "quotient pairs")?;
                    let [a, b] = ab.as_slice() else { return Err(parse_err("quotient: pairs have two entries")) };
                    ps.push((element(&*base, a)?, element(&*base, b)?));
                }
                let cong = Congruence::from_pairs(&*base, &ps).map_err(|e| CliError::Construction("NotACongruence".into(), e.to_string()))?;
                let q = Quotient::new(base, cong, self.depth).map_err(|e| CliError::Construction("NotACongruence".into(), e.to_string()))?;
                Ok(Built::Pg(Arc::new(q)))
            }
            "factorset" => {
                let o = obj()?;
                let g = self.eval_group(field(o, "group", op)?, op)?;
                let h = self.eval_pg(field(o, "base", op)?)?;
                let by_c = permutation_table(o.get("act"), &|n| group_element(&g, n), g.size(), &*h)?;
                let act = (0..h.size()).map(|e| (0..g.size()).map(|c| by_c[c][e]).collect()).collect();
                let mut sigma = vec![vec![h.unit(); g.size()]; g.size()];
                if let Some(s) = o.get("sigma") {
                    for entry in s.as_array().ok_or_else(|| parse_err("sigma must be a list"))? {
                        let t = strings(entry, "sigma entries")?;
                        let [a, b, eta] = t.as_slice() else { return Err(parse_err("sigma entries are [a, b, η]")) };
                        sigma[group_element(&g, a)?][group_element(&g, b)?] = element(&*h, eta)?;
                    }
                }
                let fs = FactorSet::new(g, h, act, sigma, self.depth)?;
                Ok(Built::Pg(Arc::new(FactorSetProduct::new(fs)?)))
            }
            "semidirect" => {
                let o = obj()?;
                let f = self.eval_pg(field(o, "acting", op)?)?;
                let action = field(o, "action", op)?;
                let act: Arc<dyn PgAction> = match action {
                    Value::Object(a) if a.contains_key("wedge_over_charts") => {
                        let g = self.eval_group(&a["wedge_over_charts"], "wedge_over_charts")?;
                        let charted = f.as_charted().ok_or_else(|| parse_err("wedge_over_charts needs a charted acting side"))?;
                        let x = PSet::of_charts(charted);
                        let (act, _): (ChainedAction, _) = action_wedge_over_fset(&g, f.clone(), &x, self.depth)?;
                        Arc::new(act)
                    }
                    _ => {
                        let h = self.eval_pg(field(o, "target", op)?)?;
                        let table = match action {
                            Value::String(s) if s == "trivial" => None,
                            Value::Object(a) if a.contains_key("automorphisms") => Some(&a["automorphisms"]),
                            _ => return Err(parse_err("semidirect: action is \"trivial\", {\"automorphisms\": …} or {\"wedge_over_charts\": G}")),
                        };
                        let psi = permutation_table(table, &|n| element(&*f, n), f.size(), &*h)?;
                        Arc::new(action_grazian_henke(f.clone(), h, psi, self.depth)?)
                    }
                };
                Ok(Built::Pg(Arc::new(Semidirect::new(act)?)))
            }
            _ => Err(parse_err(format!("unknown recipe node {op:?}"))),
        }
    }
}
