//! Braid-group generators acting on graded blocks of tensor powers of a
//! window `J` of the twisted forms.

pub mod export;

use std::collections::HashMap;
use std::sync::Arc;

use parking_lot::RwLock;

use crate::braiding::check::basis_tensors;
use crate::braiding::{AxiomLimits, Braid, Tensor, TensorKey};
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::omega::{AlgebraCtx, Label};
use crate::report::{CheckResult, Report};

pub use export::{export_csv, export_json};

/// `J` = forms with variable-degree in `var` and form-degree in `form`,
/// taken as the subspace of forms at or above the lower bounds modulo
/// those beyond the upper bounds. Both ranges are inclusive.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Window {
    pub var: (usize, usize),
    pub form: (usize, usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Place {
    Below,
    Inside,
    Above,
}

impl Window {
    /// Everything the context can hold.
    pub fn full(ctx: &AlgebraCtx) -> Self {
        let caps = ctx.caps();
        Window {
            var: (0, caps.var_degree),
            form: (0, caps.form_degree),
        }
    }

    fn place(&self, ctx: &AlgebraCtx, l: &Label) -> Place {
        let w = ctx.weight(l);
        let n = l.form_degree();
        if w < self.var.0 || n < self.form.0 {
            Place::Below
        } else if w > self.var.1 || n > self.form.1 {
            Place::Above
        } else {
            Place::Inside
        }
    }

    fn contains(&self, ctx: &AlgebraCtx, l: &Label) -> bool {
        self.place(ctx, l) == Place::Inside
    }
}

/// Basis of the `(d, f)` block of `J^{⊗n}`.
#[derive(Clone, Debug)]
pub struct PowerBlock {
    pub arity: usize,
    pub var_degree: usize,
    pub form_degree: usize,
    pub basis: Vec<TensorKey>,
    index: HashMap<TensorKey, usize>,
}

impl PowerBlock {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn index_of(&self, k: &TensorKey) -> Option<usize> {
        self.index.get(k).copied()
    }
}

pub fn enumerate_block(
    ctx: &AlgebraCtx,
    window: Window,
    arity: usize,
    d: usize,
    f: usize,
) -> Result<PowerBlock> {
    ctx.check_caps(f, d)?;
    let labels: Vec<Label> = ctx
        .basis_labels(d.min(window.var.1), f.min(window.form.1))?
        .into_iter()
        .filter(|l| window.contains(ctx, l))
        .collect();
    let mut keys: Vec<(TensorKey, usize, usize)> = vec![(Vec::new(), 0, 0)];
    for _ in 0..arity {
        let mut next = Vec::new();
        for (k, w, n) in &keys {
            for l in &labels {
                let (w2, n2) = (w + ctx.weight(l), n + l.form_degree());
                if w2 <= d && n2 <= f {
                    let mut k2 = k.clone();
                    k2.push(l.clone());
                    next.push((k2, w2, n2));
                }
            }
        }
        keys = next;
    }
    let mut basis: Vec<TensorKey> = keys
        .into_iter()
        .filter(|(_, w, n)| *w == d && *n == f)
        .map(|(k, _, _)| k)
        .collect();
    basis.sort();
    let index = basis.iter().enumerate().map(|(i, k)| (k.clone(), i)).collect();
    Ok(PowerBlock {
        arity,
        var_degree: d,
        form_degree: f,
        basis,
        index,
    })
}

/// Checks that `J` is a braiding-stable sub-quotient on pairs of total
/// variable-degree `≤ d` and form-degree `≤ f`: `R` must not send a pair
/// at or above the lower bounds below them, and must keep the beyond-window
/// part (the part quotiented out) inside itself.
pub fn check_window(braid: &dyn Braid, window: Window, d: usize, f: usize) -> Result<()> {
    let ctx = braid.ctx();
    let limits = AxiomLimits {
        var_degree: d,
        form_degree: f,
    };
    for k in basis_tensors(ctx, 2, limits)? {
        let places: Vec<Place> = k.iter().map(|l| window.place(ctx, l)).collect();
        if places.contains(&Place::Below) {
            continue;
        }
        let beyond = places.contains(&Place::Above);
        let r = braid.braid_pair(&k[0], &k[1])?;
        for (out, _) in r.terms() {
            let p: Vec<Place> = out.iter().map(|l| window.place(ctx, l)).collect();
            let bad = p.contains(&Place::Below) || (beyond && !p.contains(&Place::Above));
            if bad {
                return Err(Error::UnstableWindow(format!(
                    "R({}) has the term {}",
                    show(ctx, &k),
                    show(ctx, out)
                )));
            }
        }
    }
    Ok(())
}

fn show(ctx: &AlgebraCtx, k: &[Label]) -> String {
    ctx.format_tensor(&Tensor::basis_tensor(k.to_vec(), ctx.field().one()))
}

/// Braid-group generators on the blocks of one window, cached per
/// `(d, f, i)`.
pub struct Representation<'a> {
    braid: &'a dyn Braid,
    window: Window,
    arity: usize,
    blocks: RwLock<HashMap<(usize, usize), Arc<PowerBlock>>>,
    sigmas: RwLock<HashMap<(usize, usize, usize), Arc<Matrix>>>,
}

impl<'a> Representation<'a> {
    /// Fails with an unstable-window error unless the window is stable on
    /// every pair up to `(max_d, max_f)`.
    pub fn new(braid: &'a dyn Braid, window: Window, arity: usize, max_d: usize, max_f: usize) -> Result<Self> {
        if arity == 0 {
            return Err(Error::PreconditionViolated("tensor arity must be positive".into()));
        }
        if window != Window::full(braid.ctx()) {
            check_window(braid, window, max_d, max_f)?;
        }
        Ok(Representation {
            braid,
            window,
            arity,
            blocks: RwLock::new(HashMap::new()),
            sigmas: RwLock::new(HashMap::new()),
        })
    }

    pub fn ctx(&self) -> &AlgebraCtx {
        self.braid.ctx()
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn block(&self, d: usize, f: usize) -> Result<Arc<PowerBlock>> {
        if let Some(b) = self.blocks.read().get(&(d, f)) {
            return Ok(b.clone());
        }
        let b = Arc::new(enumerate_block(self.ctx(), self.window, self.arity, d, f)?);
        Ok(self.blocks.write().entry((d, f)).or_insert(b).clone())
    }

    /// Matrix of `σ_i` (1-based `i`) on the `(d, f)` block, columns being
    /// images of basis tensors. Terms beyond the window are dropped.
    pub fn sigma(&self, d: usize, f: usize, i: usize) -> Result<Arc<Matrix>> {
        if i == 0 || i >= self.arity {
            return Err(Error::PreconditionViolated(format!(
                "σ_{i} needs 1 ≤ i ≤ {}",
                self.arity.saturating_sub(1)
            )));
        }
        if let Some(m) = self.sigmas.read().get(&(d, f, i)) {
            return Ok(m.clone());
        }
        let ctx = self.ctx();
        let block = self.block(d, f)?;
        let one = ctx.field().one();
        let mut m = Matrix::zeros(ctx.field(), block.dim(), block.dim());
        for (j, key) in block.basis.iter().enumerate() {
            let img = self.braid.braid_at(&Tensor::basis_tensor(key.clone(), one.clone()), i - 1)?;
            for (k, c) in img.terms() {
                let places: Vec<Place> = k.iter().map(|l| self.window.place(ctx, l)).collect();
                if places.contains(&Place::Below) {
                    return Err(Error::UnstableWindow(format!(
                        "σ_{i}({}) has the term {}",
                        show(ctx, key),
                        show(ctx, k)
                    )));
                }
                if places.contains(&Place::Above) {
                    continue;
                }
                let row = block.index_of(k).ok_or_else(|| {
                    Error::PreconditionViolated(format!(
                        "σ_{i}({}) leaves its block through {}",
                        show(ctx, key),
                        show(ctx, k)
                    ))
                })?;
                m.set(row, j, c.clone());
            }
        }
        let m = Arc::new(m);
        Ok(self.sigmas.write().entry((d, f, i)).or_insert(m).clone())
    }

    /// All `(d, f)` with `d ≤ max_d`, `f ≤ max_f`, in increasing order.
    pub fn degrees(&self, max_d: usize, max_f: usize) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for d in self.ctx().var_degrees(max_d) {
            for f in 0..=max_f {
                out.push((d, f));
            }
        }
        out
    }
}

fn block_name(d: usize, f: usize) -> String {
    format!("block (d={d}, f={f})")
}

/// Braid relations, far commutation, invertibility and grading of every
/// `σ_i` on every non-empty block up to `(max_d, max_f)`.
pub fn verify_braid_relations(rep: &Representation, max_d: usize, max_f: usize) -> Result<Report> {
    let n = rep.arity();
    let mut report = Report::new(format!("braidrep (arity {n})"));
    let mut braid = CheckResult::new("braid_relation");
    let mut far = CheckResult::new("far_commutation");
    let mut inv = CheckResult::new("invertible");
    let mut grading = CheckResult::new("block_grading");
    for (d, f) in rep.degrees(max_d, max_f) {
        let block = rep.block(d, f)?;
        if block.dim() == 0 || n < 2 {
            continue;
        }
        let mut sigmas = Vec::new();
        for i in 1..n {
            match rep.sigma(d, f, i) {
                Ok(m) => {
                    grading.record(true, String::new);
                    sigmas.push(m);
                }
                Err(Error::PreconditionViolated(msg)) => {
                    grading.record(false, || format!("{}: {msg}", block_name(d, f)));
                }
                Err(e) => return Err(e),
            }
        }
        if sigmas.len() != n - 1 {
            continue;
        }
        for (i, s) in sigmas.iter().enumerate() {
            match s.inverse() {
                Ok(si) => inv.record(s.mul(&si).is_identity(), || {
                    format!("{}: σ_{} times its inverse is not the identity", block_name(d, f), i + 1)
                }),
                Err(Error::SingularBlock(_)) => inv.record(false, || {
                    format!("{}: σ_{} is singular", block_name(d, f), i + 1)
                }),
                Err(e) => return Err(e),
            }
        }
        for i in 0..n - 1 {
            for j in i + 1..n - 1 {
                let (a, b) = (&sigmas[i], &sigmas[j]);
                if j == i + 1 {
                    let lhs = a.mul(b).mul(a);
                    let rhs = b.mul(a).mul(b);
                    let (p, q) = (i + 1, j + 1);
                    braid.record(lhs == rhs, || {
                        format!("{}: σ_{p}σ_{q}σ_{p} != σ_{q}σ_{p}σ_{q}", block_name(d, f))
                    });
                } else {
                    far.record(a.mul(b) == b.mul(a), || {
                        format!("{}: σ_{}σ_{} != σ_{}σ_{}", block_name(d, f), i + 1, j + 1, j + 1, i + 1)
                    });
                }
            }
        }
    }
    report.push(braid);
    report.push(far);
    report.push(inv);
    report.push(grading);
    Ok(report)
}

/// `σ_i² = 1` on every block; requires α∘α = id.
pub fn verify_involution(rep: &Representation, max_d: usize, max_f: usize) -> Result<Report> {
    let ctx = rep.ctx();
    if !ctx.alpha_is_involution() {
        return Err(Error::PreconditionViolated("α∘α is not the identity".into()));
    }
    let n = rep.arity();
    let mut report = Report::new(format!("involution (arity {n})"));
    let mut c = CheckResult::new("sigma_squared_is_identity");
    for (d, f) in rep.degrees(max_d, max_f) {
        if rep.block(d, f)?.dim() == 0 {
            continue;
        }
        for i in 1..n {
            let s = rep.sigma(d, f, i)?;
            c.record(s.mul(&s).is_identity(), || {
                format!("{}: σ_{i}² is not the identity", block_name(d, f))
            });
        }
    }
    report.push(c);
    Ok(report)
}

/// Entry-by-entry comparison of the generators of two representations.
pub fn compare_representations(
    a: &Representation,
    b: &Representation,
    max_d: usize,
    max_f: usize,
) -> Result<CheckResult> {
    let mut c = CheckResult::new("sigma_matrices_agree");
    for (d, f) in a.degrees(max_d, max_f) {
        if a.block(d, f)?.dim() == 0 {
            continue;
        }
        for i in 1..a.arity() {
            let same = a.sigma(d, f, i)? == b.sigma(d, f, i)?;
            c.record(same, || format!("{}: σ_{i} differs", block_name(d, f)));
        }
    }
    Ok(c)
}
