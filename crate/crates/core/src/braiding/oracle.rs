//! `R` computed from its values in degree zero alone.
//!
//! The recursion uses only the axioms, never the closed formula:
//!
//! * `R(a ⊗ b) = b ⊗ a` on functions;
//! * `R(ω' dx ⊗ v) = (1 ⊗ μ)(R(ω' ⊗ v̄) ⊗ dx)`, from compatibility with the
//!   product in the first slot and `R(dx ⊗ v) = v̄ ⊗ dx`;
//! * for `φ = φ' dv` with `|φ| = j ≥ 1`, the identity
//!   `φ' dv = (-1)^{j-1} (d(φ' v) - dφ' v)` together with the dg-map
//!   property (to trade `R(ω ⊗ dψ)` for `d R(ω ⊗ ψ) - R(dω ⊗ ψ)`) and
//!   compatibility with the product in the second slot.
//!
//! Everything is evaluated on un-normalized labels and normalized once at
//! the end.

use std::collections::HashMap;
use std::sync::Arc;

use parking_lot::RwLock;

use super::tensor::{sign, RawTensor};
use super::{Braid, PairMemo, Tensor};
use crate::error::{Error, Result};
use crate::omega::{AlgebraCtx, Label, RawForm, Word};

const MAX_DEPTH: usize = 512;

pub struct OracleBraiding {
    ctx: Arc<AlgebraCtx>,
    memo: PairMemo,
    raw_memo: RwLock<HashMap<(Label, Label), Arc<RawTensor>>>,
}

impl OracleBraiding {
    pub fn new(ctx: Arc<AlgebraCtx>) -> Self {
        OracleBraiding {
            ctx,
            memo: PairMemo::default(),
            raw_memo: RwLock::new(HashMap::new()),
        }
    }

    /// `R(a ⊗ b)` on raw labels, before normalization.
    pub fn raw_pair(&self, a: &Label, b: &Label) -> Result<Arc<RawTensor>> {
        self.pair(a, b, 0)
    }

    fn pair(&self, a: &Label, b: &Label, depth: usize) -> Result<Arc<RawTensor>> {
        let key = (a.clone(), b.clone());
        if let Some(t) = self.raw_memo.read().get(&key) {
            return Ok(t.clone());
        }
        if depth > MAX_DEPTH {
            return Err(Error::RecursionDepth(format!(
                "R({} (x) {})",
                a.fmt_with(self.ctx.names()),
                b.fmt_with(self.ctx.names())
            )));
        }
        let t = Arc::new(self.compute(a, b, depth + 1)?);
        Ok(self.raw_memo.write().entry(key).or_insert(t).clone())
    }

    fn apply(&self, left: &RawForm, right: &RawForm, depth: usize) -> Result<RawTensor> {
        let mut out = RawTensor::new();
        for (a, c) in left {
            for (b, e) in right {
                out.add_scaled(&*self.pair(a, b, depth)?, &(c * e));
            }
        }
        Ok(out)
    }

    fn compute(&self, a: &Label, b: &Label, depth: usize) -> Result<RawTensor> {
        let ctx = &*self.ctx;
        let one = ctx.field().one();
        let i = a.form_degree();
        let j = b.form_degree();
        let single = |l: &Label| RawForm::single(l.clone(), one.clone());

        if j == 0 {
            if i == 0 {
                return Ok(RawTensor::single(vec![b.clone(), a.clone()], one));
            }
            let last = a.word()[i - 1];
            let prefix = Label::new(a.mono().clone(), Word::from_slice(&a.word()[..i - 1]));
            let v_bar = ctx.raw_from_poly(&ctx.alpha_pow_monomial(b.mono(), 1));
            let inner = self.apply(&single(&prefix), &v_bar, depth)?;
            let dx = RawForm::single(
                Label::new(crate::kernel::Monomial::one(ctx.nvars()), Word::from_slice(&[last])),
                one.clone(),
            );
            let mut out = RawTensor::new();
            for (key, c) in &inner {
                for (m, e) in &ctx.raw_mul(&single(&key[1]), &dx) {
                    out.add_term(vec![key[0].clone(), m.clone()], c * e);
                }
            }
            return Ok(out);
        }

        let omega = single(a);
        let d_omega = ctx.raw_d(&omega);
        let prefix = Label::new(b.mono().clone(), Word::from_slice(&b.word()[..j - 1]));
        let v = ctx.var_poly(b.word()[j - 1] as usize);
        let psi = ctx.raw_mul_poly(&single(&prefix), &v);
        let s_i = sign(ctx, i);

        // R(ω ⊗ dψ)
        let r_psi = self.apply(&omega, &psi, depth)?;
        let a_term = ctx
            .raw_tensor_differential(&r_psi)
            .sub(&self.apply(&d_omega, &psi, depth)?)
            .scale(&s_i);

        // R(ω ⊗ dφ')
        let r_prefix = self.pair(a, &prefix, depth)?;
        let b_term = ctx
            .raw_tensor_differential(&r_prefix)
            .sub(&self.apply(&d_omega, &single(&prefix), depth)?)
            .scale(&s_i);

        // R(ω ⊗ dφ' v) = (μ ⊗ 1)(1 ⊗ R)(R(ω ⊗ dφ') ⊗ v)
        let v_raw = ctx.raw_from_poly(&v);
        let mut c_term = RawTensor::new();
        for (key, c) in &b_term {
            let r = self.apply(&single(&key[1]), &v_raw, depth)?;
            for (k2, e) in &r {
                let prod = ctx.raw_mul(&single(&key[0]), &single(&k2[0]));
                for (m, f) in &prod {
                    c_term.add_term(vec![m.clone(), k2[1].clone()], &(c * e) * f);
                }
            }
        }
        Ok(a_term.sub(&c_term).scale(&sign(ctx, j - 1)))
    }
}

impl Braid for OracleBraiding {
    fn ctx(&self) -> &AlgebraCtx {
        &self.ctx
    }

    fn name(&self) -> &'static str {
        "oracle"
    }

    fn braid_pair(&self, a: &Label, b: &Label) -> Result<Arc<Tensor>> {
        self.memo.get_or_try(a, b, || {
            let raw = self.pair(a, b, 0)?;
            self.ctx.normalize_tensor(&raw)
        })
    }
}
