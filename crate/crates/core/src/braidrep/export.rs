//! Serialization of generator matrices. Entries stay exact: strings in the
//! field's own syntax, plus coefficient lists for rational functions.

use std::fmt::Write as _;
use std::sync::Arc;

use serde_json::{json, Map, Value};

use super::PowerBlock;
use crate::braiding::Tensor;
use crate::error::{Error, Result};
use crate::kernel::{FieldKind, Scalar};
use crate::matrix::Matrix;
use crate::omega::AlgebraCtx;

fn labels(ctx: &AlgebraCtx, block: &PowerBlock) -> Vec<String> {
    block
        .basis
        .iter()
        .map(|k| ctx.format_tensor(&Tensor::basis_tensor(k.clone(), ctx.field().one())))
        .collect()
}

fn coefficients(s: &Scalar) -> Value {
    let f = s.ratfn().expect("rational function entry");
    let list = |p: &crate::kernel::UPoly| -> Vec<String> {
        p.coeffs().iter().map(|c| c.to_string()).collect()
    };
    json!({ "num": list(f.numer()), "den": list(f.denom()) })
}

pub fn export_json(ctx: &AlgebraCtx, block: &PowerBlock, gens: &[(String, Arc<Matrix>)]) -> Value {
    let field = ctx.field();
    let rational_functions = matches!(field.kind(), FieldKind::RationalFunctions { .. });
    let mut entries = Map::new();
    let mut coeffs = Map::new();
    for (name, m) in gens {
        let rows: Vec<Vec<String>> = (0..m.rows())
            .map(|i| (0..m.cols()).map(|j| field.fmt_scalar(m.get(i, j))).collect())
            .collect();
        entries.insert(name.clone(), json!(rows));
        if rational_functions {
            let rows: Vec<Vec<Value>> = (0..m.rows())
                .map(|i| (0..m.cols()).map(|j| coefficients(m.get(i, j))).collect())
                .collect();
            coeffs.insert(name.clone(), json!(rows));
        }
    }
    let mut doc = json!({
        "field": field.describe(),
        "block": {
            "arity": block.arity,
            "var_degree": block.var_degree,
            "form_degree": block.form_degree,
            "dimension": block.dim(),
        },
        "basis": labels(ctx, block),
        "generators": entries,
    });
    if let Some(p) = field.param_name() {
        doc["parameter"] = json!(p);
    }
    if rational_functions {
        doc["generators_coefficients"] = Value::Object(coeffs);
    }
    doc
}

/// Nonzero entries, one per line; only for matrices whose entries are all
/// plain rationals.
pub fn export_csv(ctx: &AlgebraCtx, block: &PowerBlock, gens: &[(String, Arc<Matrix>)]) -> Result<String> {
    let names = labels(ctx, block);
    let mut out = String::from("generator,row,col,row_label,col_label,value\n");
    for (name, m) in gens {
        for (i, j, x) in m.entries() {
            if x.is_zero() {
                continue;
            }
            let v = x.as_rational().ok_or_else(|| {
                Error::PreconditionViolated(format!(
                    "CSV export needs rational entries; {name} has {}",
                    ctx.field().fmt_scalar(x)
                ))
            })?;
            writeln!(out, "{name},{i},{j},{},{},{v}", names[i], names[j]).unwrap();
        }
    }
    Ok(out)
}
