//! Canonical JSON and the assemble manifest.
//!
//! Every value is written through [`serde_json::Value`], whose maps are
//! ordered, so identical values give identical bytes regardless of field
//! declaration order.

use std::fs;
use std::path::{Path, PathBuf};

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::assembly::{SplittingDescriptor, ThickMatching};
use crate::disk_oracle::{Attestations, CurveWordMarking};
use crate::error::{Error, Result};
use crate::model::ModelComplex;
use crate::moves::MovePath;
use crate::spines::{build_fat_spine, layer_model, SpineTree};

pub fn to_canonical_json<T: Serialize + ?Sized>(v: &T) -> Result<String> {
    let value = serde_json::to_value(v).map_err(|e| Error::Io(e.to_string()))?;
    let mut s = serde_json::to_string_pretty(&value).map_err(|e| Error::Io(e.to_string()))?;
    s.push('\n');
    Ok(s)
}

/// Parses `s`, reporting the JSON path of the first offending field.
pub fn from_json<T: DeserializeOwned>(s: &str) -> Result<T> {
    let de = &mut serde_json::Deserializer::from_str(s);
    let v = serde_path_to_error::deserialize(de).map_err(|e| {
        let path = e.path().to_string();
        Error::SchemaViolation { path, message: e.into_inner().to_string() }
    })?;
    Ok(v)
}

/// Rewrites a JSON document with sorted keys and canonical layout.
pub fn canonicalize(s: &str) -> Result<String> {
    to_canonical_json(&from_json::<serde_json::Value>(s)?)
}

pub fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T> {
    let s = fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    from_json(&s).map_err(|e| match e {
        Error::SchemaViolation { path: p, message } => {
            Error::SchemaViolation { path: p, message: format!("{}: {message}", path.display()) }
        }
        e => e,
    })
}

pub fn write_json<T: Serialize + ?Sized>(path: &Path, v: &T) -> Result<()> {
    fs::write(path, to_canonical_json(v)?).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

/// A body model given directly, or as a spine tree optionally layered by a
/// path.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelSource {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub model: Option<PathBuf>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub path: Option<PathBuf>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub spine: Option<PathBuf>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Settings {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_depth: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub twist_bound: Option<u32>,
}

/// Input of `assemble`. Relative file references resolve against the
/// manifest's own directory.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Manifest {
    #[serde(default)]
    pub attestations: Attestations,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub marking: Option<PathBuf>,
    pub models: Vec<ModelSource>,
    #[serde(default)]
    pub settings: Settings,
    pub splitting: PathBuf,
    pub thick_matchings: Vec<ThickMatching>,
    /// Path files for the thin-surface components, in surface order.
    #[serde(default)]
    pub thin_paths: Vec<PathBuf>,
}

/// A manifest with every reference loaded.
#[derive(Debug, Clone)]
pub struct LoadedManifest {
    pub attestations: Attestations,
    pub marking: Option<CurveWordMarking>,
    pub models: Vec<ModelComplex>,
    pub settings: Settings,
    pub splitting: SplittingDescriptor,
    pub thick_matchings: Vec<ThickMatching>,
    pub thin_paths: Vec<MovePath>,
}

impl Manifest {
    pub fn load(file: &Path) -> Result<LoadedManifest> {
        let m: Manifest = read_json(file)?;
        let dir = file.parent().unwrap_or(Path::new("."));
        m.resolve(dir)
    }

    pub fn resolve(&self, dir: &Path) -> Result<LoadedManifest> {
        let at = |p: &Path| dir.join(p);
        let mut models = Vec::with_capacity(self.models.len());
        for (i, src) in self.models.iter().enumerate() {
            models.push(match (&src.model, &src.spine) {
                (Some(m), None) if src.path.is_none() => read_json(&at(m))?,
                (None, Some(s)) => {
                    let spine = build_fat_spine(&read_json::<SpineTree>(&at(s))?)?;
                    match &src.path {
                        Some(p) => layer_model(&spine, &read_json(&at(p))?)?,
                        None => spine,
                    }
                }
                _ => {
                    return Err(Error::SchemaViolation {
                        path: format!("models[{i}]"),
                        message: "give either `model`, or `spine` with an optional `path`".into(),
                    })
                }
            });
        }
        Ok(LoadedManifest {
            attestations: self.attestations,
            marking: self.marking.as_ref().map(|p| read_json(&at(p))).transpose()?,
            models,
            settings: self.settings.clone(),
            splitting: read_json(&at(&self.splitting))?,
            thick_matchings: self.thick_matchings.clone(),
            thin_paths: self.thin_paths.iter().map(|p| read_json(&at(p))).collect::<Result<_>>()?,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pants_graph::PantsGraph;

    #[test]
    fn theta_bytes_are_stable() {
        let a = to_canonical_json(&PantsGraph::theta()).unwrap();
        let back: PantsGraph = from_json(&a).unwrap();
        assert_eq!(back, PantsGraph::theta());
        assert_eq!(to_canonical_json(&back).unwrap(), a);
        assert_eq!(canonicalize(&a).unwrap(), a);
        assert!(a.starts_with("{\n  \"curve_ids\""));
    }

    #[test]
    fn unknown_field_is_named() {
        let theta = to_canonical_json(&PantsGraph::theta()).unwrap();
        let s = format!(r#"{{"base": {theta}, "moves": [], "extra": 1}}"#);
        match from_json::<MovePath>(&s) {
            Err(Error::SchemaViolation { message, .. }) => assert!(message.contains("extra")),
            other => panic!("{other:?}"),
        }
        let s = r#"{"base": {"curve_ids": [0], "matching": [[[0,0],[0,1]]], "vertices": 2, "colour": 3}, "moves": []}"#;
        match from_json::<MovePath>(s) {
            Err(Error::SchemaViolation { path, message }) => {
                assert_eq!(path, "base.colour");
                assert!(message.contains("colour"));
            }
            other => panic!("{other:?}"),
        }
    }
}
