//! Exhaustive verification of the braiding axioms on capped blocks.

use super::tensor::TensorKey;
use super::{Braid, Tensor};
use crate::error::Result;
use crate::kernel::{Monomial, Poly, Scalar};
use crate::omega::{AlgebraCtx, Label};
use crate::report::{CheckResult, Report};

/// Inputs are all basis tensors whose factors have total variable-degree at
/// most `var_degree` and total form-degree at most `form_degree`. The
/// context's caps must leave room for one more form-degree.
#[derive(Clone, Copy, Debug)]
pub struct AxiomLimits {
    pub var_degree: usize,
    pub form_degree: usize,
}

fn weight(ctx: &AlgebraCtx, key: &[Label]) -> usize {
    key.iter().map(|l| ctx.weight(l)).sum()
}

fn forms(key: &[Label]) -> usize {
    key.iter().map(Label::form_degree).sum()
}

/// Basis tensors of the given arity within the limits.
pub fn basis_tensors(ctx: &AlgebraCtx, arity: usize, limits: AxiomLimits) -> Result<Vec<TensorKey>> {
    let labels = ctx.basis_labels(limits.var_degree, limits.form_degree)?;
    let mut out: Vec<TensorKey> = vec![Vec::new()];
    for _ in 0..arity {
        let mut next = Vec::new();
        for k in &out {
            for l in &labels {
                let mut k2 = k.clone();
                k2.push(l.clone());
                if weight(ctx, &k2) <= limits.var_degree && forms(&k2) <= limits.form_degree {
                    next.push(k2);
                }
            }
        }
        out = next;
    }
    Ok(out)
}

/// Multiplies factors `i` and `i + 1`.
pub fn contract(ctx: &AlgebraCtx, t: &Tensor, i: usize) -> Result<Tensor> {
    let mut out = Tensor::zero();
    for (key, c) in t.terms() {
        let a = ctx.label_form(&key[i])?;
        let b = ctx.label_form(&key[i + 1])?;
        let ab = ctx.mul(&a, &b)?;
        let mut parts = Vec::with_capacity(key.len() - 1);
        let singles: Vec<_> = key
            .iter()
            .map(|l| ctx.label_form(l))
            .collect::<Result<Vec<_>>>()?;
        for (k, f) in singles.iter().enumerate() {
            if k == i {
                parts.push(&ab);
            } else if k != i + 1 {
                parts.push(f);
            }
        }
        out.add_scaled(&ctx.tensor(&parts), c);
    }
    Ok(out)
}

/// A scaling morphism `x_i ↦ c_i x_i`.
#[derive(Clone, Debug)]
pub struct Scaling(pub Vec<Scalar>);

impl Scaling {
    fn factor(&self, mono: &Monomial, word: &[u8]) -> Scalar {
        let mut acc = self.0[0].one_like();
        for (i, &e) in mono.exponents().iter().enumerate() {
            acc = &acc * &self.0[i].pow(e);
        }
        for &i in word {
            acc = &acc * &self.0[i as usize];
        }
        acc
    }

    fn apply_poly(&self, p: &Poly) -> Poly {
        let mut out = Poly::zero(p.nvars());
        for (m, c) in p.terms() {
            out.add_term(m.clone(), c * &self.factor(m, &[]));
        }
        out
    }

    /// Whether the scaling is an endomorphism of `(A, α)`.
    pub fn is_morphism(&self, ctx: &AlgebraCtx) -> bool {
        let endo = ctx.endo();
        let commutes = (0..ctx.nvars()).all(|i| {
            let image = ctx.alpha_pow(&ctx.var_poly(i), 1);
            self.apply_poly(&image) == image.scale(&self.0[i])
        });
        let keeps_relations = endo.relations().iter().all(|r| {
            self.apply_poly(&r.rhs) == r.rhs.scale(&self.0[r.var].pow(r.power))
        });
        commutes && keeps_relations
    }

    pub fn apply(&self, t: &Tensor) -> Tensor {
        let mut out = Tensor::zero();
        for (key, c) in t.terms() {
            let mut f = c.clone();
            for l in key {
                f = &f * &self.factor(l.mono(), l.word());
            }
            out.add_scaled(&Tensor::basis_tensor(key.clone(), f), &c.one_like());
        }
        out
    }
}

/// Nontrivial scalings that commute with α and preserve the relations.
pub fn scalings(ctx: &AlgebraCtx) -> Vec<Scaling> {
    let f = ctx.field();
    let m = ctx.nvars();
    const PRIMES: [i64; 6] = [2, 3, 5, 7, 11, 13];
    let mut candidates = vec![
        Scaling(vec![f.from_int(2); m]),
        Scaling(vec![f.from_int(-1); m]),
    ];
    if m > 1 {
        candidates.push(Scaling((0..m).map(|i| f.from_int(PRIMES[i % PRIMES.len()])).collect()));
    }
    candidates
        .into_iter()
        .filter(|s| !s.0.iter().all(Scalar::is_one) && !s.0.iter().any(Scalar::is_zero))
        .filter(|s| s.is_morphism(ctx))
        .collect()
}

fn show(ctx: &AlgebraCtx, key: &[Label]) -> String {
    ctx.format_tensor(&Tensor::basis_tensor(key.to_vec(), ctx.field().one()))
}

fn mismatch(ctx: &AlgebraCtx, key: &[Label], lhs: &Tensor, rhs: &Tensor) -> String {
    format!(
        "{}: {} != {}",
        show(ctx, key),
        ctx.format_tensor(lhs),
        ctx.format_tensor(rhs)
    )
}

/// Unit, Yang-Baxter, both product compatibilities, `μ∘R = μ`, the dg-map
/// property, `R = τ` in degree zero and naturality under scalings.
pub fn check_axioms(braid: &dyn Braid, limits: AxiomLimits) -> Result<Report> {
    let ctx = braid.ctx();
    let one = ctx.field().one();
    let unit = Label::unit(ctx.nvars());
    let basis = |k: &TensorKey| Tensor::basis_tensor(k.clone(), one.clone());
    let mut report = Report::new(format!("braiding ({})", braid.name()));

    let singles = basis_tensors(ctx, 1, limits)?;
    let pairs = basis_tensors(ctx, 2, limits)?;
    let triples = basis_tensors(ctx, 3, limits)?;

    let mut c = CheckResult::new("unit");
    for k in &singles {
        let a = &k[0];
        let left = braid.braid(&basis(&vec![unit.clone(), a.clone()]))?;
        let want = basis(&vec![a.clone(), unit.clone()]);
        c.record(left == want, || mismatch(ctx, &[unit.clone(), a.clone()], &left, &want));
        let right = braid.braid(&basis(&vec![a.clone(), unit.clone()]))?;
        let want = basis(&vec![unit.clone(), a.clone()]);
        c.record(right == want, || mismatch(ctx, &[a.clone(), unit.clone()], &right, &want));
    }
    report.push(c);

    let mut c = CheckResult::new("degree_zero_is_flip");
    for k in pairs.iter().filter(|k| forms(k) == 0) {
        let r = braid.braid(&basis(k))?;
        let want = basis(&vec![k[1].clone(), k[0].clone()]);
        c.record(r == want, || mismatch(ctx, k, &r, &want));
    }
    report.push(c);

    let mut c = CheckResult::new("mu_after_r");
    for k in &pairs {
        let t = basis(k);
        let lhs = ctx.multiply_out(&braid.braid(&t)?)?;
        let rhs = ctx.multiply_out(&t)?;
        c.record(lhs == rhs, || {
            format!("{}: {} != {}", show(ctx, k), ctx.format_form(&lhs), ctx.format_form(&rhs))
        });
    }
    report.push(c);

    let mut c = CheckResult::new("dg_map");
    for k in &pairs {
        let t = basis(k);
        let lhs = ctx.tensor_differential(&braid.braid(&t)?)?;
        let rhs = braid.braid(&ctx.tensor_differential(&t)?)?;
        c.record(lhs == rhs, || mismatch(ctx, k, &lhs, &rhs));
    }
    report.push(c);

    let mut yb = CheckResult::new("yang_baxter");
    let mut left = CheckResult::new("product_compat_left");
    let mut right = CheckResult::new("product_compat_right");
    for k in &triples {
        let t = basis(k);
        let r12 = braid.braid_at(&t, 0)?;
        let r23 = braid.braid_at(&t, 1)?;
        let lhs = braid.braid_at(&braid.braid_at(&r12, 1)?, 0)?;
        let rhs = braid.braid_at(&braid.braid_at(&r23, 0)?, 1)?;
        yb.record(lhs == rhs, || mismatch(ctx, k, &lhs, &rhs));

        // R(ab ⊗ c) = (1 ⊗ μ) R12 R23 (a ⊗ b ⊗ c)
        let lhs = braid.braid(&contract(ctx, &t, 0)?)?;
        let rhs = contract(ctx, &braid.braid_at(&r23, 0)?, 1)?;
        left.record(lhs == rhs, || mismatch(ctx, k, &lhs, &rhs));

        // R(a ⊗ bc) = (μ ⊗ 1) R23 R12 (a ⊗ b ⊗ c)
        let lhs = braid.braid(&contract(ctx, &t, 1)?)?;
        let rhs = contract(ctx, &braid.braid_at(&r12, 1)?, 0)?;
        right.record(lhs == rhs, || mismatch(ctx, k, &lhs, &rhs));
    }
    report.push(yb);
    report.push(left);
    report.push(right);

    let maps = scalings(ctx);
    if maps.is_empty() {
        report.push(CheckResult::skipped(
            "naturality",
            "no nontrivial scaling commutes with the endomorphism",
        ));
    } else {
        let mut c = CheckResult::new("naturality");
        for s in &maps {
            for k in &pairs {
                let t = basis(k);
                let lhs = s.apply(&braid.braid(&t)?);
                let rhs = braid.braid(&s.apply(&t))?;
                c.record(lhs == rhs, || mismatch(ctx, k, &lhs, &rhs));
            }
        }
        report.push(c);
    }
    Ok(report)
}

/// Compares two braidings on every basis pair within the limits.
pub fn compare_braidings(a: &dyn Braid, b: &dyn Braid, limits: AxiomLimits) -> Result<CheckResult> {
    let ctx = a.ctx();
    let mut c = CheckResult::new(format!("{}_equals_{}", a.name(), b.name()));
    for k in basis_tensors(ctx, 2, limits)? {
        let ta = a.braid_pair(&k[0], &k[1])?;
        let tb = b.braid_pair(&k[0], &k[1])?;
        c.record(ta == tb, || mismatch(ctx, &k, &ta, &tb));
    }
    Ok(c)
}
