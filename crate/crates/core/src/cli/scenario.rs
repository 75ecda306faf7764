use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::catalog::{
    build_solution, make_generic, resolve_constraints, Branch, CaseId, CaseSpec, RawParams, ResonantSolution,
    SolitonParams,
};
use crate::geometry::DEFAULT_T_MIN;

/// Problems reading a scenario, before any admissibility check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ScenarioError {
    Io(String),
    Parse(String),
}

impl std::fmt::Display for ScenarioError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ScenarioError::Io(m) | ScenarioError::Parse(m) => f.write_str(m),
        }
    }
}

/// A scenario file: one solution and its evaluation settings.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Scenario {
    pub case_id: CaseId,
    pub branch: Branch,
    pub k: [f64; 3],
    #[serde(skip_serializing_if = "Option::is_none")]
    pub p3: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub p: Option<[f64; 3]>,
    pub xi0: [f64; 3],
    pub t_min: f64,
    /// Resonant case a generic scenario is meant to approximate.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub intent: Option<CaseId>,
}

const FIELDS: [&str; 8] = ["case_id", "branch", "k", "p3", "p", "xi0", "t_min", "intent"];

fn number(v: &Value, name: &str) -> Result<f64, ScenarioError> {
    v.as_f64()
        .filter(|x| x.is_finite())
        .ok_or_else(|| ScenarioError::Parse(format!("field {name} must be a finite number")))
}

fn triple(obj: &serde_json::Map<String, Value>, name: &str) -> Result<Option<[f64; 3]>, ScenarioError> {
    let Some(v) = obj.get(name) else { return Ok(None) };
    let arr = v.as_array().ok_or_else(|| ScenarioError::Parse(format!("field {name} must be an array")))?;
    if arr.len() > 3 {
        return Err(ScenarioError::Parse(format!("unexpected field {name}[3]")));
    }
    let mut out = [0.0; 3];
    for (i, slot) in out.iter_mut().enumerate() {
        let item = arr.get(i).ok_or_else(|| ScenarioError::Parse(format!("missing field {name}[{i}]")))?;
        *slot = number(item, &format!("{name}[{i}]"))?;
    }
    Ok(Some(out))
}

fn case_name(v: &Value, name: &str) -> Result<CaseId, ScenarioError> {
    let s = v.as_str().ok_or_else(|| ScenarioError::Parse(format!("field {name} must be a string")))?;
    s.parse().map_err(|_| ScenarioError::Parse(format!("unknown {name} {s:?}")))
}

impl Scenario {
    pub fn from_json(text: &str) -> Result<Self, ScenarioError> {
        let value: Value =
            serde_json::from_str(text).map_err(|e| ScenarioError::Parse(format!("invalid JSON: {e}")))?;
        let obj = value.as_object().ok_or_else(|| ScenarioError::Parse("scenario must be a JSON object".into()))?;
        if let Some(extra) = obj.keys().find(|k| !FIELDS.contains(&k.as_str())) {
            return Err(ScenarioError::Parse(format!("unknown field {extra}")));
        }
        let case_id = case_name(
            obj.get("case_id").ok_or_else(|| ScenarioError::Parse("missing field case_id".into()))?,
            "case_id",
        )?;
        let branch = match obj.get("branch").map(|b| b.as_str()) {
            None | Some(Some("first")) => Branch::First,
            Some(Some("second")) => Branch::Second,
            Some(_) => return Err(ScenarioError::Parse("field branch must be \"first\" or \"second\"".into())),
        };
        let k = triple(obj, "k")?.ok_or_else(|| ScenarioError::Parse("missing field k".into()))?;
        let p = triple(obj, "p")?;
        let p3 = obj.get("p3").map(|v| number(v, "p3")).transpose()?;
        match (case_id, p, p3) {
            (CaseId::Generic, None, _) => return Err(ScenarioError::Parse("missing field p".into())),
            (CaseId::Generic, Some(_), Some(_)) => {
                return Err(ScenarioError::Parse("a generic scenario takes p, not p3".into()))
            }
            (c, _, None) if c != CaseId::Generic => return Err(ScenarioError::Parse("missing field p3".into())),
            (c, Some(_), _) if c != CaseId::Generic => {
                return Err(ScenarioError::Parse("p is only allowed for generic scenarios".into()))
            }
            _ => {}
        }
        let xi0 = triple(obj, "xi0")?.unwrap_or([0.0; 3]);
        let t_min = obj.get("t_min").map(|v| number(v, "t_min")).transpose()?.unwrap_or(DEFAULT_T_MIN);
        if t_min < 0.0 {
            return Err(ScenarioError::Parse("field t_min must be nonnegative".into()));
        }
        let intent = obj.get("intent").map(|v| case_name(v, "intent")).transpose()?;
        if let Some(i) = intent {
            if case_id != CaseId::Generic || i == CaseId::Generic {
                return Err(ScenarioError::Parse("intent names a resonant case of a generic scenario".into()));
            }
        }
        Ok(Self { case_id, branch, k, p3, p, xi0, t_min, intent })
    }

    pub fn load(path: &Path) -> Result<Self, ScenarioError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| ScenarioError::Io(format!("cannot read {}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    pub fn spec(&self) -> CaseSpec {
        CaseSpec::new(self.case_id, self.branch)
    }

    pub fn params(&self) -> crate::Result<SolitonParams> {
        match self.p {
            Some(p) => make_generic(self.k, p, self.xi0),
            None => resolve_constraints(
                &RawParams { k: self.k, p3: self.p3.expect("validated"), xi0: self.xi0 },
                self.spec(),
            ),
        }
    }

    pub fn solution(&self) -> crate::Result<ResonantSolution> {
        build_solution(&self.params()?, self.spec())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn missing_k_entry() {
        let e = Scenario::from_json(r#"{"case_id":"c2_1","k":[-1,-2],"p3":1}"#).unwrap_err();
        assert_eq!(e, ScenarioError::Parse("missing field k[2]".into()));
    }

    #[test]
    fn defaults() {
        let s = Scenario::from_json(r#"{"case_id":"w2","k":[1,-1,-2],"p3":-0.5}"#).unwrap();
        assert_eq!(s.branch, Branch::First);
        assert_eq!(s.xi0, [0.0; 3]);
        assert_eq!(s.t_min, 3.0);
    }

    #[test]
    fn rejects_unknown_fields_and_mixups() {
        assert!(Scenario::from_json(r#"{"case_id":"w2","k":[1,-1,-2],"p3":-0.5,"q":1}"#).is_err());
        assert!(Scenario::from_json(r#"{"case_id":"generic","k":[1,-1,-2],"p3":-0.5}"#).is_err());
        assert!(Scenario::from_json(r#"{"case_id":"w2","k":[1,-1,-2],"p":[0,0,0]}"#).is_err());
        assert!(Scenario::from_json(r#"{"case_id":"w2","k":[1,-1,-2],"p3":"x"}"#).is_err());
    }
}
