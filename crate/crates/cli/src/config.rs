//! The JSON run configuration.
//!
//! ```json
//! {
//!   "command": "analyze",
//!   "generator": { "model": "ws", "n": 100, "k": 4, "beta": 0.1 },
//!   "seed": 7,
//!   "out": "reports/ws",
//!   "format": "all",
//!   "diffusion": { "source": 0, "steps": 200, "mode": "raw_adjacency", "reach_eps": 1e-12 },
//!   "eigen": { "tol": 1e-10, "max_iter": 100000 },
//!   "normalized": false,
//!   "full_diffusion_signal": false
//! }
//! ```
//!
//! `input` (an edge-list path) may replace `generator`. `compare` reads
//! `specs` (generator objects, each with an optional `seed`) and `seeds`.
//! Unknown keys are rejected with their full path.

use std::path::{Path, PathBuf};

use netspectra::diffusion::DiffusionMode;
use serde::de::DeserializeOwned;
use serde_json::{Map, Value};

use crate::cli::{CommandName, Format, ModelKind, ModelParams};
use crate::error::CliError;

#[derive(Debug, Clone, Default)]
pub struct RunConfig {
    pub command: Option<CommandName>,
    pub input: Option<String>,
    pub generator: Option<PartialModel>,
    pub seed: Option<u64>,
    pub out: Option<PathBuf>,
    pub format: Option<Format>,
    pub diffusion: DiffusionConfig,
    pub eigen: EigenConfig,
    pub normalized: Option<bool>,
    pub full_diffusion_signal: Option<bool>,
    pub specs: Option<Vec<PartialSpec>>,
    pub seeds: Option<usize>,
}

#[derive(Debug, Clone, Default)]
pub struct DiffusionConfig {
    pub source: Option<usize>,
    pub steps: Option<usize>,
    pub mode: Option<DiffusionMode>,
    pub reach_eps: Option<f64>,
}

#[derive(Debug, Clone, Default)]
pub struct EigenConfig {
    pub tol: Option<f64>,
    pub max_iter: Option<usize>,
}

/// A model kind with whichever parameters were given.
#[derive(Debug, Clone)]
pub struct PartialModel {
    pub kind: ModelKind,
    pub params: ModelParams,
}

#[derive(Debug, Clone)]
pub struct PartialSpec {
    pub model: PartialModel,
    pub seed: Option<u64>,
}

const TOP_KEYS: [&str; 12] = [
    "command",
    "input",
    "generator",
    "seed",
    "out",
    "format",
    "diffusion",
    "eigen",
    "normalized",
    "full_diffusion_signal",
    "specs",
    "seeds",
];

struct Obj<'a> {
    map: &'a Map<String, Value>,
    path: String,
}

impl<'a> Obj<'a> {
    fn new(value: &'a Value, path: String) -> Result<Self, String> {
        match value {
            Value::Object(map) => Ok(Obj { map, path }),
            _ => Err(format!("{} must be a JSON object", display_path(&path))),
        }
    }

    fn key_path(&self, key: &str) -> String {
        if self.path.is_empty() {
            key.to_string()
        } else {
            format!("{}.{key}", self.path)
        }
    }

    fn check_keys(&self, allowed: &[&str]) -> Result<(), String> {
        match self.map.keys().find(|k| !allowed.contains(&k.as_str())) {
            None => Ok(()),
            Some(k) => Err(format!(
                "unknown key `{}` (expected one of: {})",
                self.key_path(k),
                allowed.join(", ")
            )),
        }
    }

    fn get<T: DeserializeOwned>(&self, key: &str) -> Result<Option<T>, String> {
        match self.map.get(key) {
            None | Some(Value::Null) => Ok(None),
            Some(v) => serde_json::from_value(v.clone())
                .map(Some)
                .map_err(|e| format!("key `{}`: {e}", self.key_path(key))),
        }
    }

    fn child(&self, key: &str) -> Result<Option<Obj<'a>>, String> {
        match self.map.get(key) {
            None | Some(Value::Null) => Ok(None),
            Some(v) => Obj::new(v, self.key_path(key)).map(Some),
        }
    }
}

fn display_path(path: &str) -> String {
    if path.is_empty() {
        "the configuration".into()
    } else {
        format!("`{path}`")
    }
}

impl RunConfig {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
            path: path.display().to_string(),
            source,
        })?;
        Self::parse(&text).map_err(|message| CliError::Config {
            path: path.display().to_string(),
            message,
        })
    }

    pub fn parse(text: &str) -> Result<Self, String> {
        let root: Value = serde_json::from_str(text).map_err(|e| format!("invalid JSON: {e}"))?;
        let top = Obj::new(&root, String::new())?;
        top.check_keys(&TOP_KEYS)?;

        let mut cfg = RunConfig {
            command: top.get("command")?,
            input: top.get("input")?,
            seed: top.get("seed")?,
            out: top.get("out")?,
            format: top.get("format")?,
            normalized: top.get("normalized")?,
            full_diffusion_signal: top.get("full_diffusion_signal")?,
            seeds: top.get("seeds")?,
            ..RunConfig::default()
        };
        if let Some(g) = top.child("generator")? {
            cfg.generator = Some(parse_model(&g, &[])?);
        }
        if cfg.input.is_some() && cfg.generator.is_some() {
            return Err("give either `input` or `generator`, not both".into());
        }
        if let Some(d) = top.child("diffusion")? {
            d.check_keys(&["source", "steps", "mode", "reach_eps"])?;
            cfg.diffusion = DiffusionConfig {
                source: d.get("source")?,
                steps: d.get("steps")?,
                mode: d.get("mode")?,
                reach_eps: d.get("reach_eps")?,
            };
        }
        if let Some(e) = top.child("eigen")? {
            e.check_keys(&["tol", "max_iter"])?;
            cfg.eigen = EigenConfig {
                tol: e.get("tol")?,
                max_iter: e.get("max_iter")?,
            };
        }
        if let Some(specs) = top.map.get("specs").filter(|v| !v.is_null()) {
            let list = specs.as_array().ok_or("key `specs` must be an array of generator objects")?;
            let mut parsed = Vec::with_capacity(list.len());
            for (i, item) in list.iter().enumerate() {
                let obj = Obj::new(item, format!("specs[{i}]"))?;
                let model = parse_model(&obj, &["seed"])?;
                parsed.push(PartialSpec {
                    model,
                    seed: obj.get("seed")?,
                });
            }
            cfg.specs = Some(parsed);
        }
        Ok(cfg)
    }
}

fn parse_model(obj: &Obj, extra: &[&str]) -> Result<PartialModel, String> {
    let kind: ModelKind = obj
        .get("model")?
        .ok_or_else(|| format!("missing key `{}` (one of: er, ba, ws)", obj.key_path("model")))?;
    let params: &[&str] = match kind {
        ModelKind::Er => &["n", "p"],
        ModelKind::Ba => &["n", "m"],
        ModelKind::Ws => &["n", "k", "beta"],
    };
    let allowed: Vec<&str> = ["model"].iter().chain(params).chain(extra).copied().collect();
    obj.check_keys(&allowed)?;
    Ok(PartialModel {
        kind,
        params: ModelParams {
            n: obj.get("n")?,
            p: obj.get("p")?,
            m: obj.get("m")?,
            k: obj.get("k")?,
            beta: obj.get("beta")?,
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn full_config_parses() {
        let cfg = RunConfig::parse(
            r#"{"command":"analyze","generator":{"model":"ws","k":6},"seed":4,
                "diffusion":{"source":2,"mode":"row_stochastic"},"eigen":{"max_iter":10}}"#,
        )
        .unwrap();
        assert_eq!(cfg.command, Some(CommandName::Analyze));
        let g = cfg.generator.unwrap();
        assert_eq!(g.kind, ModelKind::Ws);
        assert_eq!(g.params.k, Some(6));
        assert_eq!(g.params.n, None);
        assert_eq!(cfg.diffusion.source, Some(2));
        assert_eq!(cfg.diffusion.mode, Some(DiffusionMode::RowStochastic));
        assert_eq!(cfg.eigen.max_iter, Some(10));
    }

    #[test]
    fn unknown_keys_are_named_with_their_path() {
        let err = RunConfig::parse(r#"{"sed": 3}"#).unwrap_err();
        assert!(err.contains("`sed`"), "{err}");
        let err = RunConfig::parse(r#"{"specs":[{"model":"er"},{"model":"ba","p":0.1}]}"#).unwrap_err();
        assert!(err.contains("`specs[1].p`"), "{err}");
        let err = RunConfig::parse(r#"{"diffusion":{"source":1,"stpes":3}}"#).unwrap_err();
        assert!(err.contains("`diffusion.stpes`"), "{err}");
    }

    #[test]
    fn bad_values_name_their_key() {
        let err = RunConfig::parse(r#"{"seed": "seven"}"#).unwrap_err();
        assert!(err.contains("`seed`"), "{err}");
        let err = RunConfig::parse(r#"{"generator":{"n":5}}"#).unwrap_err();
        assert!(err.contains("`generator.model`"), "{err}");
        let err = RunConfig::parse(r#"{"input":"g.txt","generator":{"model":"er"}}"#).unwrap_err();
        assert!(err.contains("either"), "{err}");
        assert!(RunConfig::parse("[1]").is_err());
    }
}
