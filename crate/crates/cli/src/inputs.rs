//! Reading scenes, recipes and serialized partial groups from disk.

use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use serde_json::Value;

use parade_core::constructions::parade_from_figure;
use parade_core::pgroup::{serial, PgRef};
use parade_core::scenes::{builtin_scene, Scene, SCENE_SCHEMA};

use crate::error::CliError;
use crate::recipe::{Recipe, RECIPE_SCHEMA};

pub const BUILTIN_PREFIX: &str = "builtin:";

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))
}

fn resolve(src: &str, base: &Path) -> PathBuf {
    let p = Path::new(src);
    if p.is_absolute() {
        p.to_path_buf()
    } else {
        base.join(p)
    }
}

fn dir_of(path: &Path) -> PathBuf {
    path.parent().map(Path::to_path_buf).unwrap_or_default()
}

/// A scene file, or `builtin:<name>`.
pub fn load_scene(src: &str, base: &Path) -> Result<Scene, CliError> {
    if let Some(name) = src.strip_prefix(BUILTIN_PREFIX) {
        return builtin_scene(name).ok_or_else(|| CliError::Parse(format!("no built-in scene {name:?}")));
    }
    Ok(Scene::from_json(&read(&resolve(src, base))?)?)
}

pub enum Input {
    Scene(Scene),
    Recipe(Recipe),
    Pg(PgRef),
}

/// Dispatches on the schema field.
pub fn load(src: &str) -> Result<Input, CliError> {
    if src.starts_with(BUILTIN_PREFIX) {
        return load_scene(src, Path::new(".")).map(Input::Scene);
    }
    let path = Path::new(src);
    let text = read(path)?;
    let v: Value = serde_json::from_str(&text).map_err(|e| CliError::Parse(format!("{src}: {e}")))?;
    match v.get("schema").and_then(Value::as_str) {
        Some(SCENE_SCHEMA) => Ok(Input::Scene(Scene::from_json(&text)?)),
        Some(RECIPE_SCHEMA) => Ok(Input::Recipe(Recipe::from_value(v, &dir_of(path))?)),
        Some(serial::SCHEMA) => Ok(Input::Pg(serial::from_json(&text)?)),
        Some(other) => Err(CliError::Parse(format!("{src}: unknown schema {other:?}"))),
        None => Err(CliError::Parse(format!("{src}: no schema field"))),
    }
}

/// The partial group an input stands for: a scene's parade, a recipe's
/// result or a stored record.
pub fn load_pg(src: &str, depth: usize) -> Result<PgRef, CliError> {
    match load(src)? {
        Input::Scene(s) => Ok(Arc::new(parade_from_figure(&s.figure, s.class)?)),
        Input::Recipe(r) => Ok(r.build(depth)?.into_pg()),
        Input::Pg(p) => Ok(p),
    }
}
