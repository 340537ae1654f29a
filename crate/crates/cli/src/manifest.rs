use std::collections::BTreeMap;
use std::path::Path;

use flk_core::error::{Error, Result};
use flk_core::qmodules::{parse_module_spec, ModuleSpec};
use flk_core::rootdata::RootType;

use crate::config::RunConfig;

/// One manifest case: a module spec and the flags it is expected to have.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Case {
    pub id: String,
    pub spec: ModuleSpec,
    pub expect: BTreeMap<String, bool>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CorpusManifest {
    pub name: String,
    pub cases: Vec<Case>,
}

const KNOWN_FLAGS: &[&str] = &["injective", "injective-b-", "injective-b+"];

pub const A1_L3: &str = include_str!("../manifests/a1-l3.txt");
pub const A1_L5: &str = include_str!("../manifests/a1-l5.txt");
pub const A2_L3: &str = include_str!("../manifests/a2-l3.txt");
pub const A1_L3_P7_R1: &str = include_str!("../manifests/a1-l3-p7-r1.txt");

impl CorpusManifest {
    /// Lines are `spec [flag=true|false ...]`; `#` starts a comment.
    pub fn parse(name: &str, text: &str) -> Result<CorpusManifest> {
        let mut cases = Vec::new();
        for (no, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let bad = |msg: String| Error::Format(format!("{name}:{}: {msg}", no + 1));
            let mut words = line.split_whitespace();
            let spec_text = words.next().expect("line is nonempty");
            let spec = parse_module_spec(spec_text).map_err(|e| bad(e.to_string()))?;
            let mut expect = BTreeMap::new();
            for w in words {
                let (k, v) = w.split_once('=').ok_or_else(|| bad(format!("expected flag=value, got `{w}`")))?;
                if !KNOWN_FLAGS.contains(&k) {
                    return Err(bad(format!("unknown flag `{k}`")));
                }
                let v = match v {
                    "true" => true,
                    "false" => false,
                    _ => return Err(bad(format!("flag value `{v}` is not a boolean"))),
                };
                expect.insert(k.to_string(), v);
            }
            let id = format!("{:03}", cases.len());
            cases.push(Case { id, spec, expect });
        }
        Ok(CorpusManifest { name: name.to_string(), cases })
    }

    pub fn load(path: &Path) -> Result<CorpusManifest> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Config(format!("{}: {e}", path.display())))?;
        Self::parse(&path.display().to_string(), &text)
    }

    /// The built-in manifest for a configuration, if there is one.
    pub fn default_for(cfg: &RunConfig) -> Result<CorpusManifest> {
        let p = cfg.field.characteristic();
        let (name, text) = match (cfg.root_type, cfg.ell, cfg.r) {
            (RootType::A1, 3, 0) => ("a1-l3", A1_L3),
            (RootType::A1, 5, 0) => ("a1-l5", A1_L5),
            (RootType::A2, 3, 0) => ("a2-l3", A2_L3),
            (RootType::A1, 3, 1) if p == 7 => ("a1-l3-p7-r1", A1_L3_P7_R1),
            _ => {
                return Err(Error::Config(format!(
                    "no built-in manifest for {}; pass --manifest",
                    cfg.describe()
                )))
            }
        };
        Self::parse(name, text)
    }
}
