//! TOML system configuration.
//!
//! ```toml
//! generators = ["s", "t"]
//! coxeter = [[1, 5], [5, 1]]     # "inf" for no braid relation
//! pairing = "geometric"          # or "gl(3)", or a matrix of numbers/strings
//! field = "quadratic:5"          # default "rational"
//! finite = true
//! variables = ["a", "b"]         # optional
//! ```
//!
//! With `pairing = "gl(n)"` the generators, matrix and finiteness flag may
//! be omitted; they default to the symmetric group preset.

use std::path::Path;

use serde::Deserialize;
use toml::Value;

use crate::coxeter::{BraidOrder, CoxeterSystem, PairingSpec, SystemSpec};
use crate::error::{Error, Result};
use crate::expr::parse_scalar;
use crate::scalar::{Field, Scalar};

/// Environment variable overriding the enumeration ceiling.
pub const MAX_ELEMENTS_VAR: &str = "NHLAB_MAX_ELEMENTS";

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SystemConfig {
    pub generators: Option<Vec<String>>,
    pub coxeter: Option<Vec<Vec<Value>>>,
    pub pairing: Option<Value>,
    pub field: Option<String>,
    pub finite: Option<bool>,
    pub variables: Option<Vec<String>>,
}

fn cfg(msg: impl Into<String>) -> Error {
    Error::Config(msg.into())
}

fn parse_gl(s: &str) -> Option<usize> {
    s.strip_prefix("gl(")?.strip_suffix(')')?.trim().parse().ok()
}

fn order_entry(v: &Value) -> Result<BraidOrder> {
    match v {
        Value::Integer(m) if *m >= 1 => Ok(BraidOrder::Finite(
            u32::try_from(*m).map_err(|_| cfg(format!("coxeter entry {m} too large")))?,
        )),
        Value::String(s) if s == "inf" => Ok(BraidOrder::Infinite),
        other => Err(cfg(format!("coxeter entries are positive integers or \"inf\", found {other}"))),
    }
}

fn scalar_entry(v: &Value, field: Field) -> Result<Scalar> {
    match v {
        Value::Integer(k) => Ok(Scalar::from_int(*k)),
        Value::String(s) => parse_scalar(s, field).map_err(|e| cfg(format!("pairing entry `{s}`: {e}"))),
        other => Err(cfg(format!("pairing entries are integers or strings, found {other}"))),
    }
}

impl SystemConfig {
    pub fn from_toml(src: &str) -> Result<Self> {
        toml::from_str(src).map_err(|e| cfg(e.to_string()))
    }

    pub fn load(path: &Path) -> Result<Self> {
        let src = std::fs::read_to_string(path).map_err(|e| cfg(format!("{}: {e}", path.display())))?;
        Self::from_toml(&src)
    }

    pub fn to_spec(&self) -> Result<SystemSpec> {
        let field = match &self.field {
            Some(f) => Field::parse(f)?,
            None => Field::Rational,
        };
        let pairing_str = match &self.pairing {
            None => Some("geometric"),
            Some(Value::String(s)) => Some(s.as_str()),
            Some(_) => None,
        };
        if let Some(n) = pairing_str.and_then(parse_gl) {
            if n < 2 {
                return Err(cfg("gl(n) needs n >= 2"));
            }
            let mut spec = SystemSpec::gl(n);
            if let Some(g) = &self.generators {
                spec.generators = g.clone();
            }
            if let Some(m) = &self.coxeter {
                spec.orders = orders(m)?;
            }
            if let Some(f) = self.finite {
                spec.finite = f;
            }
            spec.field = field;
            spec.variables = self.variables.clone();
            return Ok(spec);
        }
        let generators = self.generators.clone().ok_or_else(|| cfg("missing `generators`"))?;
        let orders = orders(self.coxeter.as_ref().ok_or_else(|| cfg("missing `coxeter`"))?)?;
        let finite = self.finite.ok_or_else(|| cfg("missing `finite`"))?;
        let pairing = match (&self.pairing, pairing_str) {
            (_, Some("geometric")) => PairingSpec::Geometric,
            (_, Some(other)) => return Err(cfg(format!("unknown pairing `{other}`"))),
            (Some(Value::Array(rows)), None) => PairingSpec::Explicit(
                rows.iter()
                    .map(|row| match row {
                        Value::Array(xs) => xs.iter().map(|x| scalar_entry(x, field)).collect(),
                        _ => Err(cfg("pairing matrix rows must be arrays")),
                    })
                    .collect::<Result<_>>()?,
            ),
            _ => return Err(cfg("pairing must be \"geometric\", \"gl(n)\" or a matrix")),
        };
        Ok(SystemSpec { generators, orders, pairing, field, finite, variables: self.variables.clone() })
    }

    /// Builds the system, honouring [`MAX_ELEMENTS_VAR`].
    pub fn build(&self) -> Result<CoxeterSystem> {
        let sys = CoxeterSystem::build(&self.to_spec()?)?;
        match std::env::var(MAX_ELEMENTS_VAR) {
            Ok(v) => {
                let cap = v.trim().parse().map_err(|_| cfg(format!("{MAX_ELEMENTS_VAR} must be a count, got `{v}`")))?;
                Ok(sys.with_max_elements(cap))
            }
            Err(_) => Ok(sys),
        }
    }
}

fn orders(rows: &[Vec<Value>]) -> Result<Vec<Vec<BraidOrder>>> {
    rows.iter().map(|r| r.iter().map(order_entry).collect()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dihedral_five() {
        let c = SystemConfig::from_toml(
            r#"
            generators = ["s", "t"]
            coxeter = [[1, 5], [5, 1]]
            field = "quadratic:5"
            finite = true
            variables = ["a", "b"]
            "#,
        )
        .unwrap();
        assert_eq!(c.to_spec().unwrap(), SystemSpec::dihedral(5));
        assert_eq!(c.build().unwrap().enumerate(None).unwrap().len(), 10);
    }

    #[test]
    fn gl_preset_alone() {
        let c = SystemConfig::from_toml("pairing = \"gl(3)\"").unwrap();
        assert_eq!(c.to_spec().unwrap(), SystemSpec::gl(3));
    }

    #[test]
    fn explicit_and_infinite() {
        let c = SystemConfig::from_toml(
            r#"
            generators = ["s", "t"]
            coxeter = [[1, "inf"], ["inf", 1]]
            pairing = [[2, -2], ["-2", 2]]
            finite = false
            "#,
        )
        .unwrap();
        let spec = c.to_spec().unwrap();
        assert_eq!(spec.orders[0][1], BraidOrder::Infinite);
        assert!(CoxeterSystem::build(&spec).is_ok());
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(SystemConfig::from_toml("generators = 3"), Err(Error::Config(_))));
        assert!(matches!(SystemConfig::from_toml("bogus = 1"), Err(Error::Config(_))));
        let missing = SystemConfig::from_toml("generators = [\"s\"]\ncoxeter = [[1]]").unwrap();
        assert!(matches!(missing.to_spec(), Err(Error::Config(_))));
        let seven = SystemConfig::from_toml(
            "generators = [\"s\", \"t\"]\ncoxeter = [[1, 7], [7, 1]]\nfinite = true",
        )
        .unwrap();
        assert!(matches!(seven.build(), Err(Error::UnsupportedField { .. })));
    }
}
