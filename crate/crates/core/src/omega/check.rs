//! Exhaustive checks of the calculus identities on capped blocks.

use super::{AlgebraCtx, Form, Label, RawForm, Word};
use crate::error::Result;
use crate::report::{CheckResult, Report};

/// Inputs have total variable-degree at most `var_degree` and total
/// form-degree at most `form_degree`; inputs whose intermediate results
/// would escape the context's caps are skipped.
#[derive(Clone, Copy, Debug)]
pub struct OmegaLimits {
    pub var_degree: usize,
    pub form_degree: usize,
}

/// `I(u_0 du_1...du_n) = Σ_k (-1)^{k+1} u_0 du_1...du_{k-1} (u_k - ū_k) dū_{k+1}...dū_n`,
/// expanded directly rather than through the recursion.
pub fn homotopy_direct(ctx: &AlgebraCtx, l: &Label) -> Result<Form> {
    let one = ctx.field().one();
    let n = l.form_degree();
    let mut out = RawForm::new();
    for k in 1..=n {
        let head = Label::new(l.mono().clone(), Word::from_slice(&l.word()[..k - 1]));
        let v = ctx.var_poly(l.word()[k - 1] as usize);
        let diff = v.sub(&ctx.alpha_pow(&v, 1));
        let mut t = ctx.raw_mul_poly(&RawForm::single(head, one.clone()), &diff);
        for &i in &l.word()[k..] {
            let bar = ctx.alpha_pow(&ctx.var_poly(i as usize), 1);
            t = ctx.raw_mul(&t, &ctx.raw_d_poly(&bar));
        }
        let s = if k % 2 == 1 { one.clone() } else { -&one };
        out.add_scaled(&t, &s);
    }
    ctx.normalize(&out)
}

fn sign(ctx: &AlgebraCtx, k: usize) -> crate::kernel::Scalar {
    let one = ctx.field().one();
    if k.is_multiple_of(2) {
        one
    } else {
        -one
    }
}

pub fn check_omega(ctx: &AlgebraCtx, limits: OmegaLimits) -> Result<Report> {
    let cap_n = ctx.caps().form_degree;
    let labels = ctx.basis_labels(limits.var_degree, limits.form_degree.min(cap_n))?;
    let forms: Vec<(Label, Form)> = labels
        .iter()
        .map(|l| Ok((l.clone(), ctx.label_form(l)?)))
        .collect::<Result<_>>()?;
    let show = |l: &Label| l.fmt_with(ctx.names());
    let fmt = |f: &Form| ctx.format_form(f);
    let fits = |w: usize, n: usize| w <= limits.var_degree && n <= limits.form_degree;
    let mut report = Report::new("omega");

    let mut dd = CheckResult::new("d_squared");
    let mut hom = CheckResult::new("homotopy");
    let mut ii = CheckResult::new("i_squared");
    let mut rec = CheckResult::new("homotopy_recursion");
    let mut ad = CheckResult::new("alpha_commutes_with_d");
    let mut unit = CheckResult::new("unit");
    let one = ctx.one();
    for (l, w) in &forms {
        let n = l.form_degree();
        if n + 2 <= cap_n {
            let r = ctx.differential(&ctx.differential(w)?)?;
            dd.record(r.is_zero(), || format!("d(d({})) = {}", show(l), fmt(&r)));
        }
        if n < cap_n {
            let d = ctx.differential(w)?;
            let lhs = ctx.differential(&ctx.homotopy(w)?)?.add(&ctx.homotopy(&d)?);
            let rhs = w.sub(&ctx.alpha_form(w)?);
            hom.record(lhs == rhs, || format!("{}: dI + Id = {} but 1 - α gives {}", show(l), fmt(&lhs), fmt(&rhs)));
            let lhs = ctx.alpha_form(&d)?;
            let rhs = ctx.differential(&ctx.alpha_form(w)?)?;
            ad.record(lhs == rhs, || format!("{}: α(d) = {}, d(α) = {}", show(l), fmt(&lhs), fmt(&rhs)));
        }
        let i = ctx.homotopy(w)?;
        let r = ctx.homotopy(&i)?;
        ii.record(r.is_zero(), || format!("I(I({})) = {}", show(l), fmt(&r)));
        let direct = homotopy_direct(ctx, l)?;
        rec.record(i == direct, || format!("I({}) = {} but the direct sum gives {}", show(l), fmt(&i), fmt(&direct)));
        let a = ctx.mul(&one, w)?;
        let b = ctx.mul(w, &one)?;
        unit.record(&a == w && &b == w, || format!("1·{0} = {1}, {0}·1 = {2}", show(l), fmt(&a), fmt(&b)));
    }
    for c in [dd, hom, ii, rec, ad, unit] {
        report.push(c);
    }

    let mut prod = CheckResult::new("i_of_product");
    let mut right = CheckResult::new("right_action");
    let mut leib = CheckResult::new("leibniz");
    let mut derived = CheckResult::new("derived_relation");
    for (a, fa) in &forms {
        for (b, fb) in &forms {
            let w = ctx.weight(a) + ctx.weight(b);
            let n = a.form_degree() + b.form_degree();
            if !fits(w, n) {
                continue;
            }
            let ab = ctx.mul(fa, fb)?;
            let s = sign(ctx, a.form_degree());
            // I(ωψ) = Iω·ψ̄ + (-1)^{|ω|} ω·Iψ
            let lhs = ctx.homotopy(&ab)?;
            let rhs = ctx
                .mul(&ctx.homotopy(fa)?, &ctx.alpha_form(fb)?)?
                .add(&ctx.mul(fa, &ctx.homotopy(fb)?)?.scale(&s));
            prod.record(lhs == rhs, || format!("ω = {}, ψ = {}: {} != {}", show(a), show(b), fmt(&lhs), fmt(&rhs)));

            if n < cap_n {
                // d(ωψ) = dω·ψ + (-1)^{|ω|} ω·dψ
                let lhs = ctx.differential(&ab)?;
                let rhs = ctx
                    .mul(&ctx.differential(fa)?, fb)?
                    .add(&ctx.mul(fa, &ctx.differential(fb)?)?.scale(&s));
                leib.record(lhs == rhs, || format!("ω = {}, ψ = {}: {} != {}", show(a), show(b), fmt(&lhs), fmt(&rhs)));
            }

            if b.form_degree() == 0 && n < cap_n {
                // ω v - v ω = (-1)^{|ω|} Iω dv
                let lhs = ab.sub(&ctx.mul(fb, fa)?);
                let rhs = ctx.mul(&ctx.homotopy(fa)?, &ctx.differential(fb)?)?.scale(&s);
                right.record(lhs == rhs, || format!("ω = {}, v = {}: {} != {}", show(a), show(b), fmt(&lhs), fmt(&rhs)));
            }

            if a.form_degree() == 0 && b.form_degree() == 0 && 2 <= cap_n {
                // du dv + d(v̄) du = 0
                let du = ctx.differential(fa)?;
                let dv = ctx.differential(fb)?;
                let dvbar = ctx.differential(&ctx.alpha_form(fb)?)?;
                let r = ctx.mul(&du, &dv)?.add(&ctx.mul(&dvbar, &du)?);
                derived.record(r.is_zero(), || format!("u = {}, v = {}: {}", show(a), show(b), fmt(&r)));
            }
        }
    }
    for c in [prod, right, leib, derived] {
        report.push(c);
    }

    let mut assoc = CheckResult::new("associativity");
    for (a, fa) in &forms {
        for (b, fb) in &forms {
            let w2 = ctx.weight(a) + ctx.weight(b);
            let n2 = a.form_degree() + b.form_degree();
            if !fits(w2, n2) {
                continue;
            }
            let ab = ctx.mul(fa, fb)?;
            for (c, fc) in &forms {
                if !fits(w2 + ctx.weight(c), n2 + c.form_degree()) {
                    continue;
                }
                let lhs = ctx.mul(&ab, fc)?;
                let rhs = ctx.mul(fa, &ctx.mul(fb, fc)?)?;
                assoc.record(lhs == rhs, || {
                    format!("({}·{})·{}: {} != {}", show(a), show(b), show(c), fmt(&lhs), fmt(&rhs))
                });
            }
        }
    }
    report.push(assoc);
    Ok(report)
}
