use std::collections::HashMap;
use std::sync::Arc;

use parking_lot::RwLock;

use super::basis::WordBlockBasis;
use super::label::Label;
use crate::error::{Error, Result};
use crate::kernel::{EndoSpec, FieldSpec, Monomial, Poly};

/// Truncation of the computation: largest variable-degree and form-degree
/// any intermediate result may reach.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Caps {
    pub var_degree: usize,
    pub form_degree: usize,
}

impl Caps {
    pub fn new(var_degree: usize, form_degree: usize) -> Self {
        Caps {
            var_degree,
            form_degree,
        }
    }
}

/// How forms are split into finite blocks.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Grading {
    /// α is linear and relations are monomial: blocks by (form-degree,
    /// variable-degree), where each `dx_i` counts one unit.
    Graded,
    /// Every variable satisfies a relation, so `A` is finite-dimensional:
    /// one block per form-degree (variable-degree reported as 0).
    Finite,
    /// Non-graded α on a polynomial ring in one variable; only forms of
    /// degree at most one, where no relations exist.
    Ungraded,
}

/// The pair (A, α) with coefficient field and truncation caps.
///
/// Block bases and a few polynomial-level results are memoized behind
/// write-once-per-key tables; the context itself is immutable.
pub struct AlgebraCtx {
    field: FieldSpec,
    names: Vec<String>,
    endo: EndoSpec,
    caps: Caps,
    grading: Grading,
    pub(super) blocks: RwLock<HashMap<(usize, usize), Arc<WordBlockBasis>>>,
    alpha_memo: RwLock<HashMap<(u32, Monomial), Arc<Poly>>>,
    d_memo: RwLock<HashMap<Monomial, Arc<Vec<Poly>>>>,
}

impl std::fmt::Debug for AlgebraCtx {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("AlgebraCtx")
            .field("field", &self.field.describe())
            .field("names", &self.names)
            .field("caps", &self.caps)
            .field("grading", &self.grading)
            .finish()
    }
}

impl AlgebraCtx {
    pub fn new(field: FieldSpec, names: Vec<String>, endo: EndoSpec, caps: Caps) -> Result<Self> {
        let m = names.len();
        if m == 0 {
            return Err(Error::InvalidAlgebra("at least one variable is required".into()));
        }
        if m > u8::MAX as usize {
            return Err(Error::InvalidAlgebra("too many variables".into()));
        }
        if endo.nvars() != m {
            return Err(Error::InvalidAlgebra(format!(
                "endomorphism acts on {} variables, context has {m}",
                endo.nvars()
            )));
        }
        for (i, a) in names.iter().enumerate() {
            if names[..i].contains(a) {
                return Err(Error::InvalidAlgebra(format!("duplicate variable name `{a}`")));
            }
        }
        let monomial_relations = endo.relations().iter().all(|r| r.rhs.is_zero());
        let all_related = (0..m).all(|i| endo.relation_for(i).is_some());
        let grading = if endo.is_graded() && monomial_relations {
            Grading::Graded
        } else if all_related {
            Grading::Finite
        } else {
            if caps.form_degree >= 2 {
                return Err(Error::UnsupportedContext(
                    "non-graded endomorphism on an infinite-dimensional algebra supports form-degree at most 1".into(),
                ));
            }
            if m > 1 || !endo.relations().is_empty() {
                return Err(Error::UnsupportedContext(
                    "non-graded endomorphism on an infinite-dimensional algebra needs a single free variable".into(),
                ));
            }
            Grading::Ungraded
        };
        Ok(AlgebraCtx {
            field,
            names,
            endo,
            caps,
            grading,
            blocks: RwLock::new(HashMap::new()),
            alpha_memo: RwLock::new(HashMap::new()),
            d_memo: RwLock::new(HashMap::new()),
        })
    }

    /// Same algebra with different caps (memo tables start empty).
    pub fn with_caps(&self, caps: Caps) -> Result<Self> {
        AlgebraCtx::new(self.field.clone(), self.names.clone(), self.endo.clone(), caps)
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn nvars(&self) -> usize {
        self.names.len()
    }

    pub fn endo(&self) -> &EndoSpec {
        &self.endo
    }

    pub fn caps(&self) -> Caps {
        self.caps
    }

    pub fn grading(&self) -> Grading {
        self.grading
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// Variable-degree of a label (monomial degree plus word length; 0 for
    /// finite-dimensional `A`).
    pub fn weight(&self, l: &Label) -> usize {
        match self.grading {
            Grading::Finite => 0,
            _ => l.mono().degree() as usize + l.form_degree(),
        }
    }

    pub fn check_caps(&self, form_degree: usize, var_degree: usize) -> Result<()> {
        if form_degree > self.caps.form_degree || var_degree > self.caps.var_degree {
            return Err(Error::CapExceeded {
                form_degree,
                var_degree,
                max_form: self.caps.form_degree,
                max_var: self.caps.var_degree,
            });
        }
        Ok(())
    }

    /// Reduced monomials available in the coefficient part of blocks.
    pub(crate) fn coefficient_monomials(&self, degree: Option<usize>) -> Vec<Monomial> {
        let m = self.nvars();
        match degree {
            Some(d) => Monomial::of_degree(m, d as u32)
                .into_iter()
                .filter(|mono| self.endo.is_reduced(mono))
                .collect(),
            None => {
                let bounds: Vec<u32> = (0..m)
                    .map(|i| self.endo.relation_for(i).map(|r| r.power).expect("finite algebra"))
                    .collect();
                let mut out = vec![Monomial::one(m)];
                for (i, &b) in bounds.iter().enumerate() {
                    out = out
                        .into_iter()
                        .flat_map(|mono| (0..b).map(move |e| mono.with_exponent(i, e)))
                        .collect();
                }
                out.sort();
                out
            }
        }
    }

    pub fn reduce_poly(&self, p: &Poly) -> Poly {
        self.endo.reduce(&self.field, p)
    }

    /// `α^k(x^a)`, reduced.
    pub fn alpha_pow_monomial(&self, m: &Monomial, k: u32) -> Arc<Poly> {
        if k == 0 {
            return Arc::new(self.endo.reduce_monomial(&self.field, m));
        }
        let key = (k, m.clone());
        if let Some(p) = self.alpha_memo.read().get(&key) {
            return p.clone();
        }
        let prev = self.alpha_pow_monomial(m, k - 1);
        let p = Arc::new(self.endo.apply(&self.field, &prev));
        self.alpha_memo.write().entry(key).or_insert(p).clone()
    }

    pub fn alpha_pow(&self, p: &Poly, k: u32) -> Poly {
        if k == 0 {
            return p.clone();
        }
        let mut out = Poly::zero(p.nvars());
        for (m, c) in p.terms() {
            out.add_assign_scaled(&self.alpha_pow_monomial(m, k), c);
        }
        out
    }

    /// `d(x^a)` in the free left module on the `dx_i`: entry `i` is the
    /// coefficient of `dx_i`. Expanded by `d(x_i u) = α(u) dx_i + x_i du`.
    pub fn d_monomial(&self, m: &Monomial) -> Arc<Vec<Poly>> {
        if let Some(v) = self.d_memo.read().get(m) {
            return v.clone();
        }
        let n = self.nvars();
        let mut out = vec![Poly::zero(n); n];
        if let Some(i) = m.exponents().iter().position(|&e| e > 0) {
            let rest = m.with_exponent(i, m.exponents()[i] - 1);
            out[i] = (*self.alpha_pow_monomial(&rest, 1)).clone();
            let d_rest = self.d_monomial(&rest);
            let xi = Monomial::var(n, i);
            for (k, c) in d_rest.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let shifted = self.reduce_poly(&c.mul_monomial(&xi, &self.field.one()));
                out[k] = out[k].add(&shifted);
            }
        }
        let v = Arc::new(out);
        self.d_memo.write().entry(m.clone()).or_insert(v).clone()
    }

    /// `d(p)` as coefficients of the `dx_i`.
    pub fn d_poly(&self, p: &Poly) -> Vec<Poly> {
        let n = self.nvars();
        let mut out = vec![Poly::zero(n); n];
        for (m, c) in p.terms() {
            for (k, dk) in self.d_monomial(m).iter().enumerate() {
                out[k].add_assign_scaled(dk, c);
            }
        }
        out
    }

    pub fn var_poly(&self, i: usize) -> Poly {
        Poly::var(&self.field, self.nvars(), i)
    }

    /// Whether α∘α is the identity on `A`.
    pub fn alpha_is_involution(&self) -> bool {
        (0..self.nvars()).all(|i| {
            let x = self.reduce_poly(&self.var_poly(i));
            self.alpha_pow(&x, 2) == x
        })
    }
}
