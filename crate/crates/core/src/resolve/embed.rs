use serde::Serialize;

use super::target::NodeSet;
use crate::error::{Error, Result};
use crate::graph::DistanceMatrix;

/// Each vertex mapped to its distances to the landmarks, row-major.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Embedding {
    pub n: usize,
    pub dims: usize,
    pub data: Vec<f64>,
}

impl Embedding {
    pub fn row(&self, v: usize) -> &[f64] {
        &self.data[v * self.dims..(v + 1) * self.dims]
    }
}

/// Landmark embedding. Unreachable pairs are an error unless `unreachable`
/// supplies the value to put in their place.
pub fn embed(d: &DistanceMatrix, r: &NodeSet, unreachable: Option<f64>) -> Result<Embedding> {
    let n = d.n();
    if let Some(&bad) = r.members().iter().find(|&&v| v as usize >= n) {
        return Err(Error::MalformedInput(format!("landmark {bad} outside 0..{n}")));
    }
    let mut data = Vec::with_capacity(n * r.len());
    for v in 0..n {
        for l in r.iter() {
            let value = match (d.get(v, l).hops(), unreachable) {
                (Some(h), _) => h as f64,
                (None, Some(sentinel)) => sentinel,
                (None, None) => return Err(Error::Domain(format!("vertex {v} cannot reach landmark {l}"))),
            };
            data.push(value);
        }
    }
    Ok(Embedding { n, dims: r.len(), data })
}
