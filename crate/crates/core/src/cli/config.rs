//! JSON configuration of an algebra context.

use std::path::Path;

use num_rational::BigRational;
use serde::Deserialize;

use super::parse::{parse_poly, parse_scalar, validate_names};
use crate::error::{Error, Result};
use crate::kernel::{EndoKind, EndoSpec, FieldSpec, Relation, Scalar};
use crate::omega::{AlgebraCtx, Caps};

/// A scalar or expression given either as a JSON integer or as a string.
#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
pub enum Entry {
    Int(i64),
    Text(String),
}

impl Entry {
    fn text(&self) -> String {
        match self {
            Entry::Int(n) => n.to_string(),
            Entry::Text(s) => s.clone(),
        }
    }
}

#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
pub enum FieldConfig {
    Named(String),
    Tagged(FieldTag),
}

#[derive(Clone, Debug, Deserialize)]
pub enum FieldTag {
    Fp(u64),
    Qq(bool),
}

#[derive(Clone, Debug, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EndoConfig {
    Diagonal(Vec<Entry>),
    Matrix(Vec<Vec<Entry>>),
    Images(Vec<Entry>),
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RelationConfig {
    pub var: String,
    pub power: u32,
    pub rhs: Entry,
}

#[derive(Clone, Copy, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CapsConfig {
    pub var_degree: usize,
    pub form_degree: usize,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Config {
    pub field: FieldConfig,
    #[serde(default)]
    pub q_value: Option<Entry>,
    pub variables: Vec<String>,
    pub endo: EndoConfig,
    #[serde(default)]
    pub relations: Vec<RelationConfig>,
    pub caps: CapsConfig,
}

impl Config {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Config(e.to_string()))
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Config(format!("cannot read {}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    /// The coefficient field. A `q_value` specializes `Qq` to the rationals
    /// with that value for `q`, and designates `q` in the other fields.
    pub fn field_spec(&self) -> Result<FieldSpec> {
        let base = match &self.field {
            FieldConfig::Named(s) if s == "Q" => FieldSpec::rationals(),
            FieldConfig::Named(s) => return Err(Error::Config(format!("unknown field `{s}`"))),
            FieldConfig::Tagged(FieldTag::Fp(p)) => FieldSpec::prime(*p)?,
            FieldConfig::Tagged(FieldTag::Qq(true)) if self.q_value.is_none() => {
                return Ok(FieldSpec::rational_functions("q"))
            }
            FieldConfig::Tagged(FieldTag::Qq(true)) => FieldSpec::rationals(),
            FieldConfig::Tagged(FieldTag::Qq(false)) => {
                return Err(Error::Config("`{\"Qq\": false}` is not a field; use \"Q\"".into()))
            }
        };
        match &self.q_value {
            None => Ok(base),
            Some(v) => {
                let q = parse_scalar(&v.text(), &base)?;
                let q = match q {
                    Scalar::Rat(r) => r,
                    Scalar::Mod(m) => BigRational::from_integer(m.value().into()),
                    Scalar::Fn(_) => unreachable!("no parameter in scope"),
                };
                base.with_q(&q)
            }
        }
    }

    pub fn caps(&self) -> Caps {
        Caps::new(self.caps.var_degree, self.caps.form_degree)
    }

    pub fn build(&self) -> Result<AlgebraCtx> {
        self.build_with_caps(self.caps())
    }

    pub fn build_with_caps(&self, caps: Caps) -> Result<AlgebraCtx> {
        let field = self.field_spec()?;
        let names = self.variables.clone();
        validate_names(&names, field.param_name())?;
        let m = names.len();
        let scalar = |e: &Entry| parse_scalar(&e.text(), &field);
        let kind = match &self.endo {
            EndoConfig::Diagonal(qs) => EndoKind::Diagonal(qs.iter().map(scalar).collect::<Result<_>>()?),
            EndoConfig::Matrix(rows) => EndoKind::Linear(
                rows.iter()
                    .map(|r| r.iter().map(scalar).collect::<Result<Vec<_>>>())
                    .collect::<Result<_>>()?,
            ),
            EndoConfig::Images(ims) => EndoKind::General(
                ims.iter()
                    .map(|e| parse_poly(&e.text(), &field, &names))
                    .collect::<Result<_>>()?,
            ),
        };
        let relations = self
            .relations
            .iter()
            .map(|r| {
                let var = names
                    .iter()
                    .position(|n| *n == r.var)
                    .ok_or_else(|| Error::Config(format!("relation on unknown variable `{}`", r.var)))?;
                Ok(Relation {
                    var,
                    power: r.power,
                    rhs: parse_poly(&r.rhs.text(), &field, &names)?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let endo = EndoSpec::new(&field, m, kind, relations)?;
        AlgebraCtx::new(field, names, endo, caps)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::omega::Grading;

    #[test]
    fn q_example_loads() {
        let c = Config::from_json(
            r#"{"field": {"Qq": true}, "variables": ["x"], "endo": {"diagonal": ["q"]},
                "caps": {"var_degree": 4, "form_degree": 2}}"#,
        )
        .unwrap();
        let ctx = c.build().unwrap();
        assert_eq!(ctx.grading(), Grading::Graded);
        assert_eq!(ctx.field().param_name(), Some("q"));
    }

    #[test]
    fn specialization_and_quotients() {
        let c = Config::from_json(
            r#"{"field": {"Qq": true}, "q_value": "-1", "variables": ["x"], "endo": {"diagonal": ["q"]},
                "caps": {"var_degree": 4, "form_degree": 2}}"#,
        )
        .unwrap();
        assert_eq!(c.build().unwrap().field().q().unwrap().to_string(), "-1");
        let c = Config::from_json(
            r#"{"field": "Q", "variables": ["x"], "endo": {"images": ["1 - x"]},
                "relations": [{"var": "x", "power": 2, "rhs": "x"}],
                "caps": {"var_degree": 4, "form_degree": 2}}"#,
        )
        .unwrap();
        assert_eq!(c.build().unwrap().grading(), Grading::Finite);
    }

    #[test]
    fn bad_configs_are_rejected() {
        for text in [
            r#"{"field": "R", "variables": ["x"], "endo": {"diagonal": [2]}, "caps": {"var_degree": 2, "form_degree": 1}}"#,
            r#"{"field": "Q", "variables": ["x"], "endo": {"diagonal": [2.5]}, "caps": {"var_degree": 2, "form_degree": 1}}"#,
            r#"{"field": "Q", "variables": ["x"], "endo": {"diagonal": ["q"]}, "caps": {"var_degree": 2, "form_degree": 1}}"#,
            r#"{"field": "Q", "variables": ["x"], "endo": {"images": ["x^2"]}, "caps": {"var_degree": 2, "form_degree": 2}}"#,
            r#"{"field": "Q", "variables": ["x"], "endo": {"diagonal": [2]}, "caps": {"var_degree": 2}}"#,
        ] {
            assert!(Config::from_json(text).and_then(|c| c.build()).is_err(), "{text}");
        }
    }
}
