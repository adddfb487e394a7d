//! JSON configuration for algebras.
//!
//! Pairing data: `{"root_system": "A1", "coefficients": {"kind": "poly_x"},
//! "Nq": 8, "Nt": 0}`. The kind `t3` selects the `T(3)` table (root system
//! A2 implied).
//!
//! Finite algebras for cohomology accept either the same form with a
//! finite coefficient algebra (`classical`, `trunc_x`), a generator list
//! `{"root_system": "A1", "generators": [{"name": "x", "q": 1,
//! "max_power": 1}], "max_degree": 2}`, `{"builtin": "t3"}`, or explicit
//! structure constants (see [`FiniteGradedLie::from_json`]).

use std::path::Path;

use serde::Deserialize;
use serde_json::Value;

use crate::error::{Error, Result};
use crate::homology::algebra::{current_algebra, t3_algebra, FiniteGradedLie, Generator};
use crate::liedata::{current_algebra_data, t3_data, CoefficientSpec, GradedLieData};
use crate::rootsys::RootSystem;
use crate::series::Trunc;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AlgebraKind {
    Current(CoefficientSpec),
    T3,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraConfig {
    pub rs: RootSystem,
    pub kind: AlgebraKind,
    pub nq: Option<i64>,
    pub nt: Option<i64>,
}

fn cfg_err(m: impl std::fmt::Display) -> Error {
    Error::Config(m.to_string())
}

pub fn read_json(path: &Path) -> Result<Value> {
    let text = std::fs::read_to_string(path).map_err(|e| cfg_err(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| cfg_err(format!("{}: {e}", path.display())))
}

impl AlgebraConfig {
    pub fn from_value(v: &Value) -> Result<AlgebraConfig> {
        let coeff = v.get("coefficients").ok_or_else(|| cfg_err("missing \"coefficients\""))?;
        let kind_name = coeff.get("kind").and_then(Value::as_str).ok_or_else(|| cfg_err("missing coefficients.kind"))?;
        let kind = if kind_name == "t3" {
            AlgebraKind::T3
        } else {
            AlgebraKind::Current(serde_json::from_value(coeff.clone()).map_err(|e| cfg_err(format!("coefficients: {e}")))?)
        };
        let rs = match (v.get("root_system").and_then(Value::as_str), &kind) {
            (Some(s), _) => s.parse::<RootSystem>().map_err(|e: Error| cfg_err(e))?,
            (None, AlgebraKind::T3) => "A2".parse::<RootSystem>()?,
            (None, _) => return Err(cfg_err("missing \"root_system\"")),
        };
        if kind == AlgebraKind::T3 && rs.label() != "A2" {
            return Err(cfg_err("t3 lives over A2"));
        }
        let int = |k: &str| -> Result<Option<i64>> {
            match v.get(k) {
                None | Some(Value::Null) => Ok(None),
                Some(x) => x.as_i64().map(Some).ok_or_else(|| cfg_err(format!("{k} must be an integer"))),
            }
        };
        Ok(AlgebraConfig { rs, kind, nq: int("Nq")?, nt: int("Nt")? })
    }

    pub fn load(path: &Path) -> Result<AlgebraConfig> {
        AlgebraConfig::from_value(&read_json(path)?)
    }

    /// Flags override the file; `Nq >= 1` and `Nt >= 0` are required.
    pub fn trunc(&self, nq: Option<i64>, nt: Option<i64>) -> Result<Trunc> {
        let nq = nq.or(self.nq).ok_or_else(|| cfg_err("Nq not given"))?;
        let nt = nt.or(self.nt).unwrap_or(0);
        check_trunc(nq, nt)
    }

    pub fn data(&self, trunc: Trunc) -> Result<GradedLieData> {
        match &self.kind {
            AlgebraKind::Current(spec) => current_algebra_data(&self.rs, spec, trunc),
            AlgebraKind::T3 => t3_data(trunc),
        }
    }
}

pub fn check_trunc(nq: i64, nt: i64) -> Result<Trunc> {
    if nq < 1 {
        return Err(cfg_err(format!("Nq must be at least 1, got {nq}")));
    }
    if nt < 0 {
        return Err(cfg_err(format!("Nt must be nonnegative, got {nt}")));
    }
    Ok(Trunc::new(nq, nt))
}

#[derive(Deserialize)]
struct GeneratorConfig {
    name: String,
    #[serde(default)]
    q: i64,
    #[serde(default)]
    t: i64,
    #[serde(default)]
    odd: bool,
    max_power: Option<u32>,
}

/// A finite-dimensional algebra with structure constants.
pub fn finite_algebra(v: &Value) -> Result<FiniteGradedLie> {
    if v.get("basis").is_some() {
        return FiniteGradedLie::from_json(v);
    }
    if let Some(b) = v.get("builtin") {
        return match b.as_str() {
            Some("t3") => t3_algebra(),
            other => Err(cfg_err(format!("unknown builtin algebra {other:?}"))),
        };
    }
    let rs: RootSystem = v
        .get("root_system")
        .and_then(Value::as_str)
        .ok_or_else(|| cfg_err("missing \"root_system\""))?
        .parse()
        .map_err(|e: Error| cfg_err(e))?;
    if let Some(g) = v.get("generators") {
        let gens: Vec<GeneratorConfig> = serde_json::from_value(g.clone()).map_err(|e| cfg_err(format!("generators: {e}")))?;
        let gens: Vec<Generator> = gens
            .into_iter()
            .map(|g| Generator { name: g.name, q: g.q, t: g.t, odd: g.odd, max_power: if g.odd { Some(1) } else { g.max_power } })
            .collect();
        let max_degree = match v.get("max_degree") {
            None | Some(Value::Null) => None,
            Some(x) => Some(x.as_u64().ok_or_else(|| cfg_err("max_degree must be a nonnegative integer"))? as u32),
        };
        let name = v.get("name").and_then(Value::as_str).map_or_else(|| format!("{rs}:custom"), str::to_string);
        return current_algebra(&rs, &gens, max_degree, &name);
    }
    let cfg = AlgebraConfig::from_value(v)?;
    let name = match &cfg.kind {
        AlgebraKind::T3 => return t3_algebra(),
        AlgebraKind::Current(spec) => format!("{}:{}", cfg.rs, spec.label()),
    };
    match &cfg.kind {
        AlgebraKind::Current(CoefficientSpec::Classical) => current_algebra(&cfg.rs, &[], None, &name),
        AlgebraKind::Current(CoefficientSpec::TruncX { n }) if *n >= 1 => {
            let gens = if *n >= 2 { vec![Generator::even("x", 1, Some((*n - 1) as u32))] } else { vec![] };
            current_algebra(&cfg.rs, &gens, None, &name)
        }
        AlgebraKind::Current(spec) => Err(cfg_err(format!(
            "coefficient algebra {} is infinite-dimensional; give generators with max_power or max_degree",
            spec.label()
        ))),
        AlgebraKind::T3 => unreachable!(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn parses_pairing_config() {
        let c = AlgebraConfig::from_value(&json!({"root_system": "A1", "coefficients": {"kind": "poly_x_xi"}, "Nq": 8, "Nt": 2})).unwrap();
        assert_eq!(c.kind, AlgebraKind::Current(CoefficientSpec::PolyXXi));
        assert_eq!(c.trunc(None, None).unwrap(), Trunc::new(8, 2));
        assert_eq!(c.trunc(Some(3), None).unwrap(), Trunc::new(3, 2));
        let t = AlgebraConfig::from_value(&json!({"coefficients": {"kind": "t3"}})).unwrap();
        assert_eq!(t.kind, AlgebraKind::T3);
        let n = AlgebraConfig::from_value(&json!({"root_system": "A1", "coefficients": {"kind": "trunc_x", "n": 2}})).unwrap();
        assert_eq!(n.kind, AlgebraKind::Current(CoefficientSpec::TruncX { n: 2 }));
    }

    #[test]
    fn rejects_bad_configs() {
        for v in [
            json!({"root_system": "A1"}),
            json!({"root_system": "Q1", "coefficients": {"kind": "poly_x"}}),
            json!({"root_system": "A1", "coefficients": {"kind": "nonsense"}}),
            json!({"root_system": "A1", "coefficients": {"kind": "poly_x"}, "Nq": "x"}),
        ] {
            assert!(matches!(AlgebraConfig::from_value(&v), Err(Error::Config(_))), "{v}");
        }
        let c = AlgebraConfig::from_value(&json!({"root_system": "A1", "coefficients": {"kind": "poly_x"}, "Nq": 0})).unwrap();
        assert!(matches!(c.trunc(None, None), Err(Error::Config(_))));
    }

    #[test]
    fn finite_algebras() {
        let a = finite_algebra(&json!({"root_system": "A1", "coefficients": {"kind": "trunc_x", "n": 2}})).unwrap();
        assert_eq!(a.dim(), 6);
        let b = finite_algebra(&json!({"root_system": "A1", "generators": [{"name": "x", "q": 1}, {"name": "xi", "t": 1, "odd": true}], "max_degree": 1})).unwrap();
        assert_eq!(b.dim(), 9);
        assert_eq!(finite_algebra(&json!({"builtin": "t3"})).unwrap().dim(), 14);
        assert!(finite_algebra(&json!({"root_system": "A1", "coefficients": {"kind": "poly_x"}})).is_err());
        let back = finite_algebra(&a.to_json()).unwrap();
        assert_eq!(back.dim(), 6);
    }
}
