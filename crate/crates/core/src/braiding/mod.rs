//! The braiding `R` on `Ω ⊗ Ω`: the closed formula, an independent oracle
//! built from the recursion in form-degrees, block matrices and axiom checks.

pub mod check;
pub mod closed;
pub mod oracle;
pub mod tensor;

use std::collections::HashMap;
use std::sync::Arc;

use parking_lot::RwLock;

pub use check::{check_axioms, compare_braidings, AxiomLimits};
pub use closed::ClosedBraiding;
pub use oracle::OracleBraiding;
pub use tensor::{RawTensor, Tensor, TensorKey};

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::omega::{AlgebraCtx, Label};

/// An interchange operator on pairs of forms, evaluated on basis labels and
/// extended linearly.
pub trait Braid: Send + Sync {
    fn ctx(&self) -> &AlgebraCtx;

    fn name(&self) -> &'static str;

    /// `R(a ⊗ b)` for block-basis labels `a`, `b`.
    fn braid_pair(&self, a: &Label, b: &Label) -> Result<Arc<Tensor>>;

    /// `R` on a tensor of arity 2.
    fn braid(&self, t: &Tensor) -> Result<Tensor> {
        self.braid_at(t, 0)
    }

    /// `1^{⊗i} ⊗ R ⊗ 1^{⊗(k-i-2)}` on a tensor of arity `k`.
    fn braid_at(&self, t: &Tensor, i: usize) -> Result<Tensor> {
        let mut out = Tensor::zero();
        for (key, c) in t.terms() {
            if key.len() < i + 2 {
                return Err(Error::PreconditionViolated(format!(
                    "braiding positions {}, {} of a tensor of arity {}",
                    i + 1,
                    i + 2,
                    key.len()
                )));
            }
            let r = self.braid_pair(&key[i], &key[i + 1])?;
            for (rk, a) in r.terms() {
                let mut k2 = Vec::with_capacity(key.len());
                k2.extend_from_slice(&key[..i]);
                k2.extend_from_slice(rk);
                k2.extend_from_slice(&key[i + 2..]);
                out.add_scaled(&Tensor::basis_tensor(k2, a.clone()), c);
            }
        }
        Ok(out)
    }
}

/// Write-once-per-key table for `R` on basis pairs.
#[derive(Default)]
pub(crate) struct PairMemo(RwLock<HashMap<(Label, Label), Arc<Tensor>>>);

impl PairMemo {
    pub(crate) fn get_or_try(
        &self,
        a: &Label,
        b: &Label,
        f: impl FnOnce() -> Result<Tensor>,
    ) -> Result<Arc<Tensor>> {
        let key = (a.clone(), b.clone());
        if let Some(t) = self.0.read().get(&key) {
            return Ok(t.clone());
        }
        let t = Arc::new(f()?);
        Ok(self.0.write().entry(key).or_insert(t).clone())
    }
}

/// The Koszul-signed flip `a ⊗ b ↦ (-1)^{|a||b|} b ⊗ a`.
pub struct SignedFlip {
    ctx: Arc<AlgebraCtx>,
}

impl SignedFlip {
    pub fn new(ctx: Arc<AlgebraCtx>) -> Self {
        SignedFlip { ctx }
    }
}

impl Braid for SignedFlip {
    fn ctx(&self) -> &AlgebraCtx {
        &self.ctx
    }

    fn name(&self) -> &'static str {
        "flip"
    }

    fn braid_pair(&self, a: &Label, b: &Label) -> Result<Arc<Tensor>> {
        let s = tensor::sign(&self.ctx, a.form_degree() * b.form_degree());
        Ok(Arc::new(Tensor::basis_tensor(vec![b.clone(), a.clone()], s)))
    }
}

/// Matrix of `R` restricted to a list of basis pairs, in coordinates of
/// `target` (columns: images of `source`).
pub fn braid_matrix(
    braid: &dyn Braid,
    source: &[TensorKey],
    target: &[TensorKey],
) -> Result<Matrix> {
    let ctx = braid.ctx();
    let index: HashMap<&TensorKey, usize> = target.iter().enumerate().map(|(i, k)| (k, i)).collect();
    let mut m = Matrix::zeros(ctx.field(), target.len(), source.len());
    for (j, key) in source.iter().enumerate() {
        let img = braid.braid(&Tensor::basis_tensor(key.clone(), ctx.field().one()))?;
        for (k, c) in img.terms() {
            let i = *index.get(k).ok_or_else(|| {
                Error::PreconditionViolated("image of R leaves the target block".into())
            })?;
            m.set(i, j, c.clone());
        }
    }
    Ok(m)
}

/// Inverse of a square block matrix of `R`.
pub fn braid_inverse(m: &Matrix) -> Result<Matrix> {
    m.inverse()
}

/// Basis pairs of the arity-2 block with total variable-degree `d` and total
/// form-degree `f`, in canonical order.
pub fn pair_block(ctx: &AlgebraCtx, d: usize, f: usize) -> Result<Vec<TensorKey>> {
    let mut out = Vec::new();
    for n in 0..=f {
        for da in ctx.var_degrees(d) {
            let db = match ctx.grading() {
                crate::omega::Grading::Finite => 0,
                _ => d - da,
            };
            let a = ctx.block_basis(n, da)?;
            let b = ctx.block_basis(f - n, db)?;
            for la in a.basis() {
                for lb in b.basis() {
                    out.push(vec![la.clone(), lb.clone()]);
                }
            }
        }
    }
    out.sort();
    Ok(out)
}
