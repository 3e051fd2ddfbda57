use std::sync::Arc;

use super::tensor::sign;
use super::{Braid, PairMemo, Tensor};
use crate::error::Result;
use crate::omega::{AlgebraCtx, Label};

/// `R(ω ⊗ φ) = (-1)^{nm} α^n(φ) ⊗ ω - (-1)^{(n+1)m} I(α^n φ) ⊗ dω`
/// for `|ω| = n`, `|φ| = m`.
pub struct ClosedBraiding {
    ctx: Arc<AlgebraCtx>,
    memo: PairMemo,
}

impl ClosedBraiding {
    pub fn new(ctx: Arc<AlgebraCtx>) -> Self {
        ClosedBraiding {
            ctx,
            memo: PairMemo::default(),
        }
    }

    fn compute(&self, a: &Label, b: &Label) -> Result<Tensor> {
        let ctx = &*self.ctx;
        let n = a.form_degree();
        let m = b.form_degree();
        let omega = ctx.label_form(a)?;
        let mut phi = ctx.label_form(b)?;
        for _ in 0..n {
            phi = ctx.alpha_form(&phi)?;
        }
        let mut out = ctx.tensor(&[&phi, &omega]).scale(&sign(ctx, n * m));
        if m > 0 {
            let i_phi = ctx.homotopy(&phi)?;
            if !i_phi.is_zero() {
                let d_omega = ctx.differential(&omega)?;
                let t = ctx.tensor(&[&i_phi, &d_omega]);
                out.add_scaled(&t, &-sign(ctx, (n + 1) * m));
            }
        }
        Ok(out)
    }
}

impl Braid for ClosedBraiding {
    fn ctx(&self) -> &AlgebraCtx {
        &self.ctx
    }

    fn name(&self) -> &'static str {
        "closed"
    }

    fn braid_pair(&self, a: &Label, b: &Label) -> Result<Arc<Tensor>> {
        self.memo.get_or_try(a, b, || self.compute(a, b))
    }
}
