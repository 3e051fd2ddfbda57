//! Arithmetic on un-normalized forms, i.e. in the free left `A`-module on
//! words, with the twisted product `(a w)(b w') = a α^{|w|}(b) w w'`.

use super::ctx::AlgebraCtx;
use super::label::{Label, Word};
use crate::kernel::{Monomial, Poly, Scalar};
use crate::lincomb::LinComb;

/// Left-normal-form expression before reduction by the relation ideal.
pub type RawForm = LinComb<Label>;

impl AlgebraCtx {
    /// Adds `c * p * dx_word`.
    pub fn raw_add(&self, out: &mut RawForm, p: &Poly, word: &Word, c: &Scalar) {
        for (m, a) in p.terms() {
            out.add_term(Label::new(m.clone(), word.clone()), a * c);
        }
    }

    pub fn raw_from_poly(&self, p: &Poly) -> RawForm {
        let mut out = RawForm::new();
        self.raw_add(&mut out, &self.reduce_poly(p), &Word::new(), &self.field().one());
        out
    }

    /// `x^a * p`, reduced.
    pub(crate) fn mono_times(&self, m: &Monomial, p: &Poly) -> Poly {
        if m.is_one() {
            return p.clone();
        }
        let mut out = Poly::zero(self.nvars());
        for (n, c) in p.terms() {
            out.add_assign_scaled(&self.endo().reduce_monomial(self.field(), &m.mul(n)), c);
        }
        out
    }

    pub fn raw_mul(&self, a: &RawForm, b: &RawForm) -> RawForm {
        let mut out = RawForm::new();
        for (la, ca) in a {
            let k = la.form_degree() as u32;
            for (lb, cb) in b {
                let twisted = self.alpha_pow_monomial(lb.mono(), k);
                let coeff = self.mono_times(la.mono(), &twisted);
                let mut word = la.word().clone();
                word.extend_from_slice(lb.word());
                self.raw_add(&mut out, &coeff, &word, &(ca * cb));
            }
        }
        out
    }

    /// Right multiplication by a 0-form.
    pub fn raw_mul_poly(&self, a: &RawForm, f: &Poly) -> RawForm {
        let mut out = RawForm::new();
        for (la, ca) in a {
            let twisted = self.alpha_pow(f, la.form_degree() as u32);
            let coeff = self.mono_times(la.mono(), &twisted);
            self.raw_add(&mut out, &coeff, la.word(), ca);
        }
        out
    }

    /// `d(p)` for a 0-form `p`, as a raw 1-form.
    pub fn raw_d_poly(&self, p: &Poly) -> RawForm {
        let mut out = RawForm::new();
        let one = self.field().one();
        for (k, c) in self.d_poly(p).iter().enumerate() {
            let w: Word = std::iter::once(k as u8).collect();
            self.raw_add(&mut out, c, &w, &one);
        }
        out
    }

    /// Raw differential: `d(a dx_w) = da dx_w`.
    pub fn raw_d(&self, a: &RawForm) -> RawForm {
        let mut out = RawForm::new();
        for (l, c) in a {
            for (k, dk) in self.d_monomial(l.mono()).iter().enumerate() {
                if dk.is_zero() {
                    continue;
                }
                let mut w: Word = std::iter::once(k as u8).collect();
                w.extend_from_slice(l.word());
                self.raw_add(&mut out, dk, &w, c);
            }
        }
        out
    }
}
