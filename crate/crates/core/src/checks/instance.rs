//! Instance files: `{"a", "r", "N", "n", "p", "T", "f", "relaxed"}`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::forms::{Params, PeriodicFunction, ValueSpec};

fn one() -> u64 {
    1
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Instance {
    pub a: u64,
    pub r: u64,
    #[serde(rename = "N")]
    pub big_n: u64,
    pub n: u64,
    pub p: u8,
    #[serde(rename = "T", default = "one")]
    pub big_t: u64,
    /// Values `f(0), ..., f(T-1)`; the constant one when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub f: Option<Vec<ValueSpec>>,
    /// Accept `r >= a/(3N)` as long as `d_0 >= 2`.
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub relaxed: bool,
}

impl Instance {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn new(params: &Params, f: &PeriodicFunction) -> Self {
        Instance {
            a: params.a,
            r: params.r,
            big_n: params.big_n,
            n: params.n,
            p: params.p,
            big_t: params.big_t,
            f: Some(f.specs()),
            relaxed: !params.is_admissible(),
        }
    }

    pub fn params(&self) -> Result<Params> {
        let build = if self.relaxed { Params::relaxed } else { Params::new };
        build(self.a, self.r, self.big_n, self.n, self.p, self.big_t)
    }

    pub fn function(&self) -> Result<PeriodicFunction> {
        match &self.f {
            None => PeriodicFunction::from_ints(&vec![1; self.big_t as usize]),
            Some(specs) => {
                if specs.len() as u64 != self.big_t {
                    return Err(Error::InvalidParams(format!(
                        "f has {} values, period T = {}",
                        specs.len(),
                        self.big_t
                    )));
                }
                PeriodicFunction::from_specs(specs, self.big_t)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_minimal_file() {
        let inst = Instance::from_json(r#"{"a": 4, "r": 1, "N": 1, "n": 2, "p": 1}"#).unwrap();
        assert_eq!(inst.params().unwrap(), Params::new(4, 1, 1, 2, 1, 1).unwrap());
        assert_eq!(inst.function().unwrap(), PeriodicFunction::from_ints(&[1]).unwrap());
    }

    #[test]
    fn names_the_violated_condition() {
        let inst = Instance::from_json(r#"{"a": 7, "r": 2, "N": 2, "n": 2, "p": 0, "T": 2}"#).unwrap();
        assert_eq!(inst.params().unwrap_err().to_string(), "r < a/(3N) violated");
        let relaxed = Instance { relaxed: true, ..inst };
        assert!(relaxed.params().is_ok());
        let bad_n = Instance::from_json(r#"{"a": 7, "r": 1, "N": 2, "n": 3, "p": 0}"#).unwrap();
        assert!(bad_n.params().is_err());
    }

    #[test]
    fn function_length_must_match_period() {
        let inst = Instance::from_json(r#"{"a": 7, "r": 1, "N": 2, "n": 2, "p": 0, "T": 2, "f": ["1"]}"#).unwrap();
        assert!(inst.function().is_err());
        let ok = Instance::from_json(r#"{"a": 7, "r": 1, "N": 2, "n": 2, "p": 0, "T": 2, "f": ["1", "0"]}"#).unwrap();
        assert_eq!(ok.function().unwrap(), PeriodicFunction::from_ints(&[1, 0]).unwrap());
    }
}
