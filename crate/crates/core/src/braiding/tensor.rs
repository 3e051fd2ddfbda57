//! Tensor powers of twisted forms, with factors in block-basis labels.

use crate::error::Result;
use crate::kernel::Scalar;
use crate::lincomb::LinComb;
use crate::omega::{AlgebraCtx, Form, Label, RawForm};

/// One basis tensor `l_1 ⊗ ... ⊗ l_k`.
pub type TensorKey = Vec<Label>;

/// Same shape as [`Tensor`] but with un-normalized factors.
pub type RawTensor = LinComb<TensorKey>;

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Tensor(LinComb<TensorKey>);

impl Tensor {
    pub fn zero() -> Self {
        Tensor::default()
    }

    pub fn basis_tensor(key: TensorKey, c: Scalar) -> Self {
        Tensor(LinComb::single(key, c))
    }

    pub fn terms(&self) -> &LinComb<TensorKey> {
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

    pub fn add(&self, other: &Tensor) -> Tensor {
        Tensor(self.0.add(&other.0))
    }

    pub fn sub(&self, other: &Tensor) -> Tensor {
        Tensor(self.0.sub(&other.0))
    }

    pub fn scale(&self, c: &Scalar) -> Tensor {
        Tensor(self.0.scale(c))
    }

    pub fn neg(&self) -> Tensor {
        Tensor(self.0.neg())
    }

    pub fn add_scaled(&mut self, other: &Tensor, c: &Scalar) {
        self.0.add_scaled(&other.0, c);
    }
}

/// `(-1)^k` as a field element.
pub(crate) fn sign(ctx: &AlgebraCtx, k: usize) -> Scalar {
    let one = ctx.field().one();
    if k.is_multiple_of(2) {
        one
    } else {
        -one
    }
}

/// Tensor product of linear combinations, factor by factor.
fn product(factors: &[&LinComb<Label>]) -> LinComb<TensorKey> {
    let mut acc: Vec<(TensorKey, Scalar)> = Vec::new();
    let mut first = true;
    for f in factors {
        let mut next = Vec::new();
        if first {
            for (l, c) in *f {
                next.push((vec![l.clone()], c.clone()));
            }
            first = false;
        } else {
            for (k, a) in &acc {
                for (l, c) in *f {
                    let mut k2 = k.clone();
                    k2.push(l.clone());
                    next.push((k2, a * c));
                }
            }
        }
        acc = next;
    }
    acc.into_iter().collect()
}

impl AlgebraCtx {
    pub fn tensor(&self, factors: &[&Form]) -> Tensor {
        let ls: Vec<&LinComb<Label>> = factors.iter().map(|f| f.terms()).collect();
        Tensor(product(&ls))
    }

    pub fn normalize_tensor(&self, raw: &RawTensor) -> Result<Tensor> {
        let mut out = LinComb::new();
        for (key, c) in raw {
            let forms = key
                .iter()
                .map(|l| self.label_form(l))
                .collect::<Result<Vec<_>>>()?;
            let refs: Vec<&LinComb<Label>> = forms.iter().map(Form::terms).collect();
            out.add_scaled(&product(&refs), c);
        }
        Ok(Tensor(out))
    }

    /// `d(a_1 ⊗ ... ⊗ a_k) = Σ (-1)^{|a_1|+...+|a_{i-1}|} a_1 ⊗ ... ⊗ da_i ⊗ ... ⊗ a_k`
    pub(crate) fn raw_tensor_differential(&self, t: &RawTensor) -> RawTensor {
        let mut out = RawTensor::new();
        for (key, c) in t {
            let mut deg = 0;
            for (i, l) in key.iter().enumerate() {
                let dl = self.raw_d(&RawForm::single(l.clone(), c.clone()));
                let s = sign(self, deg);
                for (m, a) in &dl {
                    let mut k2 = key.clone();
                    k2[i] = m.clone();
                    out.add_term(k2, a * &s);
                }
                deg += l.form_degree();
            }
        }
        out
    }

    pub fn tensor_differential(&self, t: &Tensor) -> Result<Tensor> {
        self.normalize_tensor(&self.raw_tensor_differential(&t.0))
    }

    /// Multiplies all factors together.
    pub fn multiply_out(&self, t: &Tensor) -> Result<Form> {
        let mut out = RawForm::new();
        for (key, c) in &t.0 {
            let mut acc = RawForm::single(Label::unit(self.nvars()), c.clone());
            for l in key {
                acc = self.raw_mul(&acc, &RawForm::single(l.clone(), self.field().one()));
            }
            out = out.add(&acc);
        }
        self.normalize(&out)
    }

    pub fn format_tensor(&self, t: &Tensor) -> String {
        if t.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (key, c) in &t.0 {
            // the coefficient is attached to the first factor
            let is_unit = |l: &Label| l.form_degree() == 0 && l.mono().is_one();
            let head = key[0].fmt_with(self.names());
            let (neg, mut text) = crate::kernel::poly::signed_term(
                self.field(),
                c,
                (!is_unit(&key[0])).then_some(head.as_str()),
            );
            for l in &key[1..] {
                text.push_str(" (x) ");
                text.push_str(&l.fmt_with(self.names()));
            }
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            out.push_str(&text);
        }
        out
    }
}
