//! Normalized twisted forms and the operations on them: product,
//! differential, α and the homotopy `I`.

use super::ctx::AlgebraCtx;
use super::label::{Label, Word};
use super::raw::RawForm;
use crate::error::{Error, Result};
use crate::kernel::{Monomial, Poly, Scalar};
use crate::lincomb::LinComb;

/// A form written in block-basis labels. Two forms are equal iff their
/// classes agree, provided both came out of [`AlgebraCtx::normalize`].
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Form(LinComb<Label>);

impl Form {
    pub fn zero() -> Self {
        Form::default()
    }

    pub fn terms(&self) -> &LinComb<Label> {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn coeff(&self, l: &Label) -> Option<&Scalar> {
        self.0.get(l)
    }

    pub fn add(&self, other: &Form) -> Form {
        Form(self.0.add(&other.0))
    }

    pub fn sub(&self, other: &Form) -> Form {
        Form(self.0.sub(&other.0))
    }

    pub fn scale(&self, c: &Scalar) -> Form {
        Form(self.0.scale(c))
    }

    pub fn neg(&self) -> Form {
        Form(self.0.neg())
    }

    /// Form-degrees present, ascending.
    pub fn form_degrees(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self.0.keys().map(Label::form_degree).collect();
        v.dedup();
        v
    }

    /// Homogeneous component of form-degree `n`.
    pub fn part(&self, n: usize) -> Form {
        Form(self.0.filter(|l| l.form_degree() == n))
    }

    pub fn homogeneous_degree(&self) -> Option<usize> {
        match self.form_degrees().as_slice() {
            [n] => Some(*n),
            _ => None,
        }
    }

    pub fn as_raw(&self) -> &RawForm {
        &self.0
    }
}

impl AlgebraCtx {
    /// Rewrites a raw expression in block-basis labels.
    pub fn normalize(&self, raw: &RawForm) -> Result<Form> {
        let m = self.nvars();
        if let Some(l) = raw.keys().find(|l| l.mono().nvars() != m || l.word().iter().any(|&i| i as usize >= m)) {
            return Err(Error::InvalidAlgebra(format!("label {l:?} does not belong to an algebra in {m} variables")));
        }
        let reduced;
        let raw = if raw.keys().all(|l| self.endo().is_reduced(l.mono())) {
            raw
        } else {
            let mut r = RawForm::new();
            for (l, c) in raw {
                let p = self.endo().reduce_monomial(self.field(), l.mono());
                self.raw_add(&mut r, &p, l.word(), c);
            }
            reduced = r;
            &reduced
        };
        let mut out = LinComb::new();
        let mut cached: Option<((usize, usize), _)> = None;
        for (l, c) in raw {
            let key = (l.form_degree(), self.weight(l));
            let block = match &cached {
                Some((k, b)) if *k == key => b,
                _ => {
                    cached = Some((key, self.block_basis(key.0, key.1)?));
                    &cached.as_ref().unwrap().1
                }
            };
            block.reduce_into(l, c, &mut out);
        }
        Ok(Form(out))
    }

    pub fn form_from_poly(&self, p: &Poly) -> Result<Form> {
        self.normalize(&self.raw_from_poly(p))
    }

    pub fn scalar_form(&self, c: Scalar) -> Form {
        if c.is_zero() {
            return Form::zero();
        }
        Form(LinComb::single(Label::unit(self.nvars()), c))
    }

    pub fn one(&self) -> Form {
        self.scalar_form(self.field().one())
    }

    pub fn var_form(&self, i: usize) -> Result<Form> {
        self.form_from_poly(&self.var_poly(i))
    }

    /// `dx_i`.
    pub fn dvar_form(&self, i: usize) -> Result<Form> {
        let l = Label::new(Monomial::one(self.nvars()), Word::from_slice(&[i as u8]));
        self.normalize(&RawForm::single(l, self.field().one()))
    }

    /// The class of a single label `x^a dx_w`.
    pub fn label_form(&self, l: &Label) -> Result<Form> {
        self.normalize(&RawForm::single(l.clone(), self.field().one()))
    }

    pub fn mul(&self, a: &Form, b: &Form) -> Result<Form> {
        self.normalize(&self.raw_mul(&a.0, &b.0))
    }

    pub fn differential(&self, a: &Form) -> Result<Form> {
        self.normalize(&self.raw_d(&a.0))
    }

    /// `α(a dx_{i_1}...dx_{i_n}) = α(a) d(α x_{i_1})...d(α x_{i_n})`.
    pub fn alpha_raw(&self, a: &RawForm) -> RawForm {
        let mut out = RawForm::new();
        for (l, c) in a {
            let mut t = self.raw_from_poly(&self.alpha_pow_monomial(l.mono(), 1));
            for &i in l.word() {
                let dv = self.raw_d_poly(&self.alpha_pow(&self.var_poly(i as usize), 1));
                t = self.raw_mul(&t, &dv);
            }
            out.add_scaled(&t, c);
        }
        out
    }

    pub fn alpha_form(&self, a: &Form) -> Result<Form> {
        self.normalize(&self.alpha_raw(&a.0))
    }

    /// `I(ω dv) = I(ω) d(v̄) + (-1)^{|ω|} ω (v - v̄)` with `v̄ = α(v)` and
    /// `I = 0` on functions, evaluated label by label.
    pub fn homotopy_raw(&self, a: &RawForm) -> RawForm {
        let mut out = RawForm::new();
        for (l, c) in a {
            out.add_scaled(&self.homotopy_label(l), c);
        }
        out
    }

    fn homotopy_label(&self, l: &Label) -> RawForm {
        let n = l.form_degree();
        if n == 0 {
            return RawForm::new();
        }
        let one = self.field().one();
        let prefix = Label::new(l.mono().clone(), Word::from_slice(&l.word()[..n - 1]));
        let v = self.var_poly(l.word()[n - 1] as usize);
        let vbar = self.alpha_pow(&v, 1);
        let ip = self.homotopy_label(&prefix);
        let mut out = self.raw_mul(&ip, &self.raw_d_poly(&vbar));
        let sign = if (n - 1).is_multiple_of(2) { one.clone() } else { -&one };
        let tail = self.raw_mul_poly(&RawForm::single(prefix, one), &v.sub(&vbar));
        out.add_scaled(&tail, &sign);
        out
    }

    pub fn homotopy(&self, a: &Form) -> Result<Form> {
        self.normalize(&self.homotopy_raw(&a.0))
    }

    pub fn format_form(&self, f: &Form) -> String {
        format_lincomb(self, &f.0)
    }
}

pub(crate) fn format_lincomb(ctx: &AlgebraCtx, f: &LinComb<Label>) -> String {
    if f.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    for (l, c) in f {
        let rest = l.fmt_with(ctx.names());
        let unit = l.form_degree() == 0 && l.mono().is_one();
        let (neg, body) = crate::kernel::poly::signed_term(ctx.field(), c, (!unit).then_some(rest.as_str()));
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        out.push_str(&body);
    }
    out
}
