use std::fs;
use std::path::Path;
use std::sync::Arc;

use serde::Serialize;

use parade_core::analysis::{
    copies_of, cross_check, normalizer_containments, t12_3_parts, CheckReport, Theorem, Verdict,
};
use parade_core::constructions::parade_from_figure;
use parade_core::geometry::{global_group, TransformClass};
use parade_core::pgroup::{
    normalizer, serial, validate_axioms, AxiomReport, ChartedPartialGroup, IsoOutcome, IsoSearch, PartialGroup, PgRef,
};

use crate::error::CliError;
use crate::inputs::{load, load_pg, load_scene, Input};
use crate::Format;

fn io_err(path: &Path, e: std::io::Error) -> CliError {
    CliError::Parse(format!("{}: {e}", path.display()))
}

fn write_file(path: &Path, text: &str) -> Result<(), CliError> {
    fs::write(path, text).map_err(|e| io_err(path, e))
}

fn json<T: Serialize>(x: &T) -> String {
    let mut s = serde_json::to_string_pretty(x).expect("reports serialize");
    s.push('\n');
    s
}

#[derive(Serialize)]
struct ElementEntry {
    name: String,
    transform: String,
    domain: Vec<String>,
}

#[derive(Serialize)]
struct AnalyzeReport {
    schema: &'static str,
    scene: String,
    class: TransformClass,
    depth: usize,
    components: Vec<String>,
    elements: usize,
    is_group: bool,
    global_group: Vec<String>,
    normalizer: Vec<String>,
    axioms: AxiomReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    quotient_count: Option<usize>,
    listing: Vec<ElementEntry>,
}

impl AnalyzeReport {
    fn text(&self) -> String {
        let mut out = String::new();
        let mut line = |k: &str, v: String| out.push_str(&format!("{k}: {v}\n"));
        line("scene", self.scene.clone());
        line("class", self.class.to_string());
        line("depth", self.depth.to_string());
        line("components", self.components.join(", "));
        line("elements", self.elements.to_string());
        line("is_group", self.is_group.to_string());
        line("global_group", self.global_group.len().to_string());
        line("normalizer", self.normalizer.join(" "));
        line("axioms", self.axioms.to_string().trim_end().to_string());
        if let Some(q) = self.quotient_count {
            line("quotient_count", q.to_string());
        }
        out.push_str("listing:\n");
        for e in &self.listing {
            out.push_str(&format!("  {} = {} on {}\n", e.name, e.transform, e.domain.join(" ")));
        }
        out
    }
}

fn listing(p: &ChartedPartialGroup) -> Vec<ElementEntry> {
    (0..p.size())
        .map(|e| ElementEntry {
            name: p.name(e),
            transform: p.similarity(e).map(|s| s.to_string()).unwrap_or_default(),
            domain: p.domain(e).iter().map(|&x| p.charts()[x].clone()).collect(),
        })
        .collect()
}

pub fn analyze(src: &str, class: Option<TransformClass>, depth: usize, out: Option<&Path>, format: Format) -> Result<u8, CliError> {
    let mut scene = load_scene(src, Path::new("."))?;
    if let Some(c) = class {
        scene.class = c;
    }
    let p = parade_from_figure(&scene.figure, scene.class)?;
    let global = global_group(&scene.figure, scene.class)?;
    let norm = normalizer(&p, depth)?;
    let quotient_count = match copies_of(&scene) {
        Ok(_) if scene.figure.components().len() > 1 => match t12_3_parts(&scene, depth) {
            Ok(parts) => Some(parts.quotient(depth)?.size()),
            Err(_) => None,
        },
        _ => None,
    };
    let rep = AnalyzeReport {
        schema: "parade-analysis/1",
        scene: scene.name.clone(),
        class: scene.class,
        depth,
        components: scene.figure.components().iter().map(|k| k.id().to_string()).collect(),
        elements: p.size(),
        is_group: parade_core::analysis::is_group(&p, depth),
        global_group: global.iter().map(|g| g.to_string()).collect(),
        normalizer: norm.iter().map(|&e| p.name(e)).collect(),
        axioms: validate_axioms(&p, depth),
        quotient_count,
        listing: listing(&p),
    };
    match out {
        Some(dir) => {
            fs::create_dir_all(dir).map_err(|e| io_err(dir, e))?;
            write_file(&dir.join("report.txt"), &rep.text())?;
            write_file(&dir.join("report.json"), &json(&rep))?;
            write_file(&dir.join("parade.json"), &serial::to_json(&p, depth))?;
            write_file(&dir.join("parade.dot"), &serial::to_dot(&p))?;
            println!("elements: {}", rep.elements);
            println!("is_group: {}", rep.is_group);
            println!("wrote {}", dir.display());
        }
        None => match format {
            Format::Text => print!("{}", rep.text()),
            Format::Json => print!("{}", json(&rep)),
        },
    }
    Ok(if rep.axioms.is_pass() { 0 } else { 1 })
}

pub fn construct(src: &str, depth: usize, out: Option<&Path>) -> Result<u8, CliError> {
    let Input::Recipe(r) = load(src)? else {
        return Err(CliError::Parse(format!("{src} is not a recipe")));
    };
    let pg = r.build(depth)?.into_pg();
    let record = serial::to_json(&*pg, depth);
    let rep = validate_axioms(&*pg, depth);
    let summary = format!("recipe: {}\nelements: {}\naxioms: {}\n", r.name, pg.size(), rep.to_string().trim_end());
    match out {
        Some(path) => {
            write_file(path, &record)?;
            print!("{summary}");
        }
        None => {
            print!("{record}");
            eprint!("{summary}");
        }
    }
    Ok(if rep.is_pass() { 0 } else { 1 })
}

pub fn compare(a: &str, b: &str, depth: usize) -> Result<u8, CliError> {
    let (pa, pb) = (load_pg(a, depth)?, load_pg(b, depth)?);
    println!("depth: {depth}");
    println!("sizes: {} {}", pa.size(), pb.size());
    let (verdict, code) = match IsoSearch::new(depth).search(&*pa, &*pb) {
        IsoOutcome::Isomorphic(f) => {
            println!("verdict: iso");
            println!("bijection:");
            for (e, &x) in f.iter().enumerate() {
                println!("  {} -> {}", pa.name(e), pb.name(x));
            }
            return Ok(0);
        }
        IsoOutcome::NotIsomorphic => ("none", 1),
        IsoOutcome::Inconclusive => ("inconclusive-at-depth", 5),
    };
    println!("verdict: {verdict}");
    Ok(code)
}

fn print_report(r: &CheckReport, format: Format) {
    match format {
        Format::Text => print!("{r}"),
        Format::Json => println!("{}", r.to_json()),
    }
}

fn verdict_code(v: Verdict) -> u8 {
    match v {
        Verdict::Pass => 0,
        Verdict::Fail => 1,
        Verdict::Inconclusive => 5,
    }
}

pub fn crosscheck(src: &str, thm: Theorem, depth: usize, format: Format) -> Result<u8, CliError> {
    let scene = load_scene(src, Path::new("."))?;
    let r = cross_check(&scene, thm, depth)?;
    print_report(&r, format);
    Ok(verdict_code(r.verdict))
}

#[derive(Serialize)]
struct ValidateReport {
    axioms: AxiomReport,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    checks: Vec<CheckReport>,
}

pub fn validate(src: &str, depth: usize, format: Format) -> Result<u8, CliError> {
    let input = load(src)?;
    let mut checks = Vec::new();
    let pg = match input {
        Input::Scene(s) => {
            checks.push(normalizer_containments(&s, depth)?);
            Arc::new(parade_from_figure(&s.figure, s.class)?) as PgRef
        }
        Input::Recipe(r) => r.build(depth)?.into_pg(),
        Input::Pg(p) => p,
    };
    if let Some(ch) = pg.as_charted() {
        normalizer(ch, depth)?;
    }
    let rep = ValidateReport { axioms: validate_axioms(&*pg, depth), checks };
    match format {
        Format::Text => {
            println!("elements: {}", pg.size());
            println!("axioms: {}", rep.axioms.to_string().trim_end());
            for c in &rep.checks {
                print!("{c}");
            }
        }
        Format::Json => print!("{}", json(&rep)),
    }
    let ok = rep.axioms.is_pass() && rep.checks.iter().all(CheckReport::is_pass);
    if !ok {
        if let Some(v) = rep.axioms.violations.first() {
            eprintln!("first violation: {} on ({})", v.axiom, v.word.join(", "));
        }
    }
    Ok(if ok { 0 } else { 1 })
}
