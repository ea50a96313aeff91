//! JSON run configuration.
//!
//! ```json
//! {
//!   "weight": {
//!     "alpha": [0.5, 0.5, 0.5],
//!     "pieces": [1.0, 1.0],
//!     "trajectory": [[-1.0], [0.0, 1.0], [1.0]]
//!   },
//!   "n": 5,
//!   "quad": { "npts": 64 },
//!   "evolve": { "t0": 0.0, "t1": 0.3, "rtol": 1e-9, "atol": 1e-12, "samples": 20 },
//!   "verify": { "rtol": 1e-6 }
//! }
//! ```
//!
//! A trajectory entry is either a number (fixed endpoint) or a list of
//! polynomial coefficients in `t`, constant term first. `pieces` defaults to
//! all ones. Unknown keys are rejected in strict mode and reported as warnings
//! otherwise.

use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::ode::Tolerance;
use crate::quadrature::DEFAULT_NPTS;
use crate::weight::{EndpointTrajectory, GeneralizedJacobiWeight};

#[derive(Debug, Clone, PartialEq)]
pub struct WeightSpec {
    pub alpha: Vec<f64>,
    pub pieces: Vec<f64>,
    pub trajectory: Vec<Vec<f64>>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvolveConfig {
    pub t0: f64,
    pub t1: f64,
    pub rtol: f64,
    pub atol: f64,
    pub samples: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub weight: WeightSpec,
    pub n: usize,
    /// Evaluation time for `coeffs` and `ladder`; defaults to `evolve.t0`.
    pub t: Option<f64>,
    /// Largest degree emitted by `coeffs`; defaults to `n`.
    pub nmax: Option<usize>,
    pub npts: usize,
    pub evolve: EvolveConfig,
    pub verify_rtol: f64,
    pub strict: bool,
}

impl RunConfig {
    pub fn eval_time(&self) -> f64 {
        self.t.unwrap_or(self.evolve.t0)
    }

    pub fn tolerance(&self) -> Tolerance {
        Tolerance {
            rtol: self.evolve.rtol,
            atol: self.evolve.atol,
        }
    }

    /// Builds the weight with ordering validated at `evolve.t0`.
    pub fn build_weight(&self) -> Result<GeneralizedJacobiWeight> {
        let traj = EndpointTrajectory::polynomial(self.weight.trajectory.clone())
            .with_reference_time(self.evolve.t0);
        GeneralizedJacobiWeight::new(self.weight.alpha.clone(), self.weight.pieces.clone(), traj)
            .map_err(|e| Error::config("weight", e.to_string()))
    }

    /// Rules that only apply to time-evolving commands.
    pub fn require_span(&self) -> Result<()> {
        if self.evolve.t1 == self.evolve.t0 {
            return Err(Error::config("evolve.t1", "t1 must differ from t0"));
        }
        Ok(())
    }

    /// Fully resolved configuration as JSON.
    pub fn to_json(&self) -> Value {
        json!({
            "weight": {
                "alpha": self.weight.alpha,
                "pieces": self.weight.pieces,
                "trajectory": self.weight.trajectory,
            },
            "n": self.n,
            "t": self.eval_time(),
            "nmax": self.nmax.unwrap_or(self.n),
            "quad": { "npts": self.npts },
            "evolve": {
                "t0": self.evolve.t0,
                "t1": self.evolve.t1,
                "rtol": self.evolve.rtol,
                "atol": self.evolve.atol,
                "samples": self.evolve.samples,
            },
            "verify": { "rtol": self.verify_rtol },
            "strict": self.strict,
        })
    }
}

struct Reader<'a> {
    strict: bool,
    warnings: &'a mut Vec<String>,
}

impl Reader<'_> {
    fn object<'v>(&mut self, v: &'v Value, path: &str, known: &[&str]) -> Result<&'v Map<String, Value>> {
        let obj = v
            .as_object()
            .ok_or_else(|| Error::config(path, "expected an object"))?;
        for key in obj.keys() {
            if !known.contains(&key.as_str()) {
                let full = if path.is_empty() {
                    key.clone()
                } else {
                    format!("{path}.{key}")
                };
                if self.strict {
                    return Err(Error::config(full, "unknown key"));
                }
                self.warnings.push(format!("ignoring unknown key `{full}`"));
            }
        }
        Ok(obj)
    }
}

fn number(v: &Value, path: &str) -> Result<f64> {
    let x = v
        .as_f64()
        .ok_or_else(|| Error::config(path, "expected a number"))?;
    if !x.is_finite() {
        return Err(Error::config(path, "must be finite"));
    }
    Ok(x)
}

fn count(v: &Value, path: &str) -> Result<usize> {
    v.as_u64()
        .map(|x| x as usize)
        .ok_or_else(|| Error::config(path, "expected a non-negative integer"))
}

fn numbers(v: &Value, path: &str) -> Result<Vec<f64>> {
    v.as_array()
        .ok_or_else(|| Error::config(path, "expected an array of numbers"))?
        .iter()
        .enumerate()
        .map(|(i, x)| number(x, &format!("{path}[{i}]")))
        .collect()
}

fn opt<'v>(obj: &'v Map<String, Value>, key: &str) -> Option<&'v Value> {
    obj.get(key).filter(|v| !v.is_null())
}

/// Parses and validates a configuration document. `strict` is OR-ed with the
/// document's own `"strict"` key. Returns the config and any warnings.
pub fn parse_config(text: &str, strict: bool) -> Result<(RunConfig, Vec<String>)> {
    let root: Value =
        serde_json::from_str(text).map_err(|e| Error::config("", format!("invalid JSON: {e}")))?;
    let doc_strict = root
        .get("strict")
        .map(|v| v.as_bool().ok_or_else(|| Error::config("strict", "expected a boolean")))
        .transpose()?
        .unwrap_or(false);
    let mut warnings = Vec::new();
    let mut rd = Reader {
        strict: strict || doc_strict,
        warnings: &mut warnings,
    };
    let top = rd.object(
        &root,
        "",
        &["weight", "n", "t", "nmax", "quad", "evolve", "verify", "strict"],
    )?;

    let wv = top
        .get("weight")
        .ok_or_else(|| Error::config("weight", "missing"))?;
    let wobj = rd.object(wv, "weight", &["alpha", "pieces", "trajectory"])?;
    let alpha = numbers(
        wobj.get("alpha").ok_or_else(|| Error::config("weight.alpha", "missing"))?,
        "weight.alpha",
    )?;
    let m = alpha.len();
    if m < 2 {
        return Err(Error::config("weight.alpha", "need at least 2 endpoints"));
    }
    let pieces = match opt(wobj, "pieces") {
        Some(v) => numbers(v, "weight.pieces")?,
        None => vec![1.0; m - 1],
    };
    if pieces.len() != m - 1 {
        return Err(Error::config(
            "weight.pieces",
            format!("pieces must have length m-1 = {}, got {}", m - 1, pieces.len()),
        ));
    }
    let traj_v = wobj
        .get("trajectory")
        .ok_or_else(|| Error::config("weight.trajectory", "missing"))?
        .as_array()
        .ok_or_else(|| Error::config("weight.trajectory", "expected an array"))?;
    if traj_v.len() != m {
        return Err(Error::config(
            "weight.trajectory",
            format!("trajectory must have length m = {m}, got {}", traj_v.len()),
        ));
    }
    let trajectory = traj_v
        .iter()
        .enumerate()
        .map(|(k, v)| {
            let path = format!("weight.trajectory[{k}]");
            let c = if v.is_number() {
                vec![number(v, &path)?]
            } else {
                numbers(v, &path)?
            };
            if c.is_empty() {
                return Err(Error::config(path, "empty coefficient list"));
            }
            Ok(c)
        })
        .collect::<Result<Vec<_>>>()?;

    let n = opt(top, "n").map(|v| count(v, "n")).transpose()?.unwrap_or(1);
    let t = opt(top, "t").map(|v| number(v, "t")).transpose()?;
    let nmax = opt(top, "nmax").map(|v| count(v, "nmax")).transpose()?;

    let npts = match opt(top, "quad") {
        Some(q) => {
            let q = rd.object(q, "quad", &["npts"])?;
            opt(q, "npts")
                .map(|v| count(v, "quad.npts"))
                .transpose()?
                .unwrap_or(DEFAULT_NPTS)
        }
        None => DEFAULT_NPTS,
    };
    if npts == 0 {
        return Err(Error::config("quad.npts", "must be at least 1"));
    }

    let tol = Tolerance::default();
    let mut evolve = EvolveConfig {
        t0: 0.0,
        t1: 1.0,
        rtol: tol.rtol,
        atol: tol.atol,
        samples: 20,
    };
    if let Some(e) = opt(top, "evolve") {
        let e = rd.object(e, "evolve", &["t0", "t1", "rtol", "atol", "samples"])?;
        if let Some(v) = opt(e, "t0") {
            evolve.t0 = number(v, "evolve.t0")?;
        }
        if let Some(v) = opt(e, "t1") {
            evolve.t1 = number(v, "evolve.t1")?;
        }
        if let Some(v) = opt(e, "rtol") {
            evolve.rtol = number(v, "evolve.rtol")?;
        }
        if let Some(v) = opt(e, "atol") {
            evolve.atol = number(v, "evolve.atol")?;
        }
        if let Some(v) = opt(e, "samples") {
            evolve.samples = count(v, "evolve.samples")?;
        }
    }
    if !(evolve.rtol > 0.0) {
        return Err(Error::config("evolve.rtol", "must be positive"));
    }
    if !(evolve.atol > 0.0) {
        return Err(Error::config("evolve.atol", "must be positive"));
    }
    if evolve.samples < 2 {
        return Err(Error::config("evolve.samples", "must be at least 2"));
    }

    let verify_rtol = match opt(top, "verify") {
        Some(v) => {
            let v = rd.object(v, "verify", &["rtol"])?;
            opt(v, "rtol")
                .map(|x| number(x, "verify.rtol"))
                .transpose()?
                .unwrap_or(1e-6)
        }
        None => 1e-6,
    };
    if !(verify_rtol > 0.0) {
        return Err(Error::config("verify.rtol", "must be positive"));
    }

    let cfg = RunConfig {
        weight: WeightSpec {
            alpha,
            pieces,
            trajectory,
        },
        n,
        t,
        nmax,
        npts,
        evolve,
        verify_rtol,
        strict: strict || doc_strict,
    };
    cfg.build_weight()?;
    Ok((cfg, warnings))
}
