use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::sbm::{presets, scale_communities, SbmParams};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Method {
    Mine,
    Ich,
    Greedy,
    Preorder,
    Random,
}

impl Method {
    pub const ALL: [Method; 5] = [Method::Mine, Method::Ich, Method::Greedy, Method::Preorder, Method::Random];

    pub fn name(self) -> &'static str {
        match self {
            Method::Mine => "MINE",
            Method::Ich => "ICH",
            Method::Greedy => "GREEDY",
            Method::Preorder => "PREORDER",
            Method::Random => "RANDOM",
        }
    }

    pub fn default_replicates(self) -> usize {
        match self {
            Method::Ich => 10,
            _ => 50,
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Method> {
        Method::ALL
            .into_iter()
            .find(|m| m.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::MalformedInput(format!("unknown method {s:?}")))
    }
}

/// One parameter set and the methods to run on graphs sampled from it.
#[derive(Debug, Clone, Serialize)]
pub struct ExperimentConfig {
    pub network: String,
    /// Already scaled to the target vertex count.
    pub params: SbmParams,
    pub methods: Vec<Method>,
    pub alphas: Vec<f64>,
    pub n_graphs: usize,
    pub replicates: BTreeMap<Method, usize>,
    pub base_seed: u64,
}

impl ExperimentConfig {
    pub fn new(network: impl Into<String>, params: SbmParams) -> ExperimentConfig {
        ExperimentConfig {
            network: network.into(),
            params,
            methods: Method::ALL.to_vec(),
            alphas: vec![0.005, 0.01, 0.1, 0.2],
            n_graphs: 30,
            replicates: Method::ALL.iter().map(|&m| (m, m.default_replicates())).collect(),
            base_seed: 0,
        }
    }

    pub fn replicates(&self, m: Method) -> usize {
        self.replicates.get(&m).copied().unwrap_or_else(|| m.default_replicates())
    }

    pub fn validate(&self) -> Result<()> {
        if self.n_graphs == 0 {
            return Err(Error::InvalidParams("n_graphs must be at least 1".into()));
        }
        if let Some((m, _)) = self.replicates.iter().find(|(_, &r)| r == 0) {
            return Err(Error::InvalidParams(format!("{m} needs at least one replicate")));
        }
        if let Some(a) = self.alphas.iter().find(|&&a| !(a > 0.0 && a < 1.0)) {
            return Err(Error::InvalidParams(format!("alpha {a} is outside (0, 1)")));
        }
        if self.methods.contains(&Method::Mine) && self.alphas.is_empty() {
            return Err(Error::InvalidParams("MINE needs at least one alpha".into()));
        }
        Ok(())
    }

    /// First 16 hex digits of the SHA-256 of the canonical JSON form.
    pub fn hash(&self) -> String {
        hash_json(self)
    }
}

/// Short content hash of any serializable value, as used in report names.
pub fn hash_json<T: Serialize + ?Sized>(value: &T) -> String {
    digest_hex(serde_json::to_string(value).expect("value serializes").as_bytes())
}

pub(crate) fn digest_hex(bytes: &[u8]) -> String {
    Sha256::digest(bytes)[..8].iter().map(|b| format!("{b:02x}")).collect()
}

/// `base ⊕ H(tag, graph, replicate)`, with H the leading 8 bytes of SHA-256.
pub fn derive_seed(base: u64, tag: &str, graph: usize, replicate: usize) -> u64 {
    let mut h = Sha256::new();
    h.update(tag.as_bytes());
    h.update([0]);
    h.update((graph as u64).to_le_bytes());
    h.update((replicate as u64).to_le_bytes());
    let d = h.finalize();
    base ^ u64::from_le_bytes(d[..8].try_into().expect("8 bytes"))
}

/// A network entry in a bench file: a preset key or explicit parameters.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum NetworkSpec {
    Preset(String),
    Custom { name: String, params: SbmParams },
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LongPathSpec {
    #[serde(default = "default_long_n")]
    pub n: usize,
    #[serde(default = "default_long_graphs")]
    pub n_graphs: usize,
}

fn default_long_n() -> usize {
    5000
}

fn default_long_graphs() -> usize {
    5
}

fn default_methods() -> Vec<Method> {
    Method::ALL.to_vec()
}

fn default_alphas() -> Vec<f64> {
    vec![0.005, 0.01, 0.1, 0.2]
}

fn default_graphs() -> usize {
    30
}

/// A suite of experiments sharing methods, alphas and seeds.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BenchConfig {
    pub networks: Vec<NetworkSpec>,
    pub n_target: Option<usize>,
    #[serde(default = "default_methods")]
    pub methods: Vec<Method>,
    #[serde(default = "default_alphas")]
    pub alphas: Vec<f64>,
    #[serde(default = "default_graphs")]
    pub n_graphs: usize,
    #[serde(default)]
    pub replicates: BTreeMap<Method, usize>,
    #[serde(default)]
    pub base_seed: u64,
    pub long_paths: Option<LongPathSpec>,
}

impl BenchConfig {
    pub fn from_json(text: &str) -> Result<BenchConfig> {
        Ok(serde_json::from_str(text)?)
    }

    /// Resolves presets, scales every network to `n_target` and validates.
    pub fn experiments(&self) -> Result<Vec<ExperimentConfig>> {
        let mut out = Vec::with_capacity(self.networks.len());
        for spec in &self.networks {
            let (name, params) = resolve_network(spec)?;
            let params = match self.n_target {
                Some(n) => scale_communities(&params, n)?,
                None => params,
            };
            let mut replicates: BTreeMap<Method, usize> =
                self.methods.iter().map(|&m| (m, m.default_replicates())).collect();
            for (&m, &r) in &self.replicates {
                replicates.insert(m, r);
            }
            let cfg = ExperimentConfig {
                network: name,
                params,
                methods: self.methods.clone(),
                alphas: self.alphas.clone(),
                n_graphs: self.n_graphs,
                replicates,
                base_seed: self.base_seed,
            };
            cfg.validate()?;
            out.push(cfg);
        }
        Ok(out)
    }

    pub fn hash(&self) -> String {
        hash_json(self)
    }
}

pub fn resolve_network(spec: &NetworkSpec) -> Result<(String, SbmParams)> {
    match spec {
        NetworkSpec::Preset(key) => presets::find(key)
            .map(|p| (p.label.to_string(), p.params()))
            .ok_or_else(|| Error::InvalidParams(format!("unknown preset {key:?}"))),
        NetworkSpec::Custom { name, params } => Ok((name.clone(), params.clone())),
    }
}
