//! Per-block bases of the quotient by the relation ideal.
//!
//! A block is the span of `x^a dx_w` with fixed form-degree `n = |w|` and
//! variable-degree `d = deg(a) + n`. The relation ideal is generated by
//!
//! * `(α(x_j) - x_j) dx_i - (α(x_i) - x_i) dx_j` (commutativity of `A`
//!   forces `d(x_i x_j) = d(x_j x_i)`),
//! * `d(x_i^e - p_i(x_i))` for each quotient relation,
//! * `d(x^a) dx_j + d(α(x_j)) d(x^a)` for monomials `x^a` (the derived
//!   relation `du dv = -d(ū) ...`, closed under products in the second slot),
//!
//! and the block's relation subspace is spanned by `c w g w'` for every
//! generator `g`, coefficient monomial `c` and words `w`, `w'` landing in
//! the block.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use super::ctx::{AlgebraCtx, Grading};
use super::label::{words, Label, Word};
use super::raw::RawForm;
use crate::error::{Error, Result};
use crate::kernel::{Monomial, Poly, Scalar};
use crate::lincomb::LinComb;
use crate::matrix::Matrix;

#[derive(Debug)]
pub struct WordBlockBasis {
    form_degree: usize,
    var_degree: usize,
    raw: Vec<Label>,
    basis: Vec<Label>,
    basis_index: HashMap<Label, usize>,
    raw_index: HashMap<Label, usize>,
    /// Pivot labels expressed in basis labels.
    reductions: HashMap<Label, Vec<(Label, Scalar)>>,
}

impl WordBlockBasis {
    pub fn form_degree(&self) -> usize {
        self.form_degree
    }

    pub fn var_degree(&self) -> usize {
        self.var_degree
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Label] {
        &self.basis
    }

    pub fn raw_labels(&self) -> &[Label] {
        &self.raw
    }

    pub fn index_of(&self, l: &Label) -> Option<usize> {
        self.basis_index.get(l).copied()
    }

    pub fn contains_raw(&self, l: &Label) -> bool {
        self.raw_index.contains_key(l)
    }

    /// Adds `c * [l]` to `out` in basis coordinates.
    pub fn reduce_into(&self, l: &Label, c: &Scalar, out: &mut LinComb<Label>) {
        if self.basis_index.contains_key(l) {
            out.add_term(l.clone(), c.clone());
        } else if let Some(expr) = self.reductions.get(l) {
            for (b, a) in expr {
                out.add_term(b.clone(), a * c);
            }
        } else {
            panic!("label {l:?} outside block ({}, {})", self.form_degree, self.var_degree);
        }
    }

    /// Matrix of the projection from the raw span onto basis coordinates
    /// (rows: basis, columns: raw labels).
    pub fn reduction_matrix(&self, ctx: &AlgebraCtx) -> Matrix {
        let field = ctx.field();
        let mut m = Matrix::zeros(field, self.basis.len(), self.raw.len());
        for (j, l) in self.raw.iter().enumerate() {
            let mut v = LinComb::new();
            self.reduce_into(l, &field.one(), &mut v);
            for (b, a) in &v {
                m.set(self.basis_index[b], j, a.clone());
            }
        }
        m
    }
}

impl AlgebraCtx {
    /// Basis of the `(n, d)` block of the twisted forms, memoized.
    pub fn block_basis(&self, n: usize, d: usize) -> Result<Arc<WordBlockBasis>> {
        if let Some(b) = self.blocks.read().get(&(n, d)) {
            return Ok(b.clone());
        }
        let b = Arc::new(self.build_block_basis(n, d)?);
        Ok(self.blocks.write().entry((n, d)).or_insert(b).clone())
    }

    /// Variable-degrees that carry blocks, up to `max_var`.
    pub fn var_degrees(&self, max_var: usize) -> Vec<usize> {
        match self.grading() {
            Grading::Finite => vec![0],
            _ => (0..=max_var).collect(),
        }
    }

    /// All basis labels with form-degree at most `max_form` and
    /// variable-degree at most `max_var`, block by block.
    pub fn basis_labels(&self, max_var: usize, max_form: usize) -> Result<Vec<Label>> {
        let mut out = Vec::new();
        for n in 0..=max_form {
            for d in self.var_degrees(max_var) {
                out.extend(self.block_basis(n, d)?.basis().iter().cloned());
            }
        }
        Ok(out)
    }

    pub fn build_block_basis(&self, n: usize, d: usize) -> Result<WordBlockBasis> {
        self.check_caps(n, d)?;
        if self.grading() == Grading::Ungraded && n >= 2 {
            return Err(Error::UnsupportedContext(
                "form-degree >= 2 needs a graded endomorphism or a finite-dimensional algebra".into(),
            ));
        }
        let m = self.nvars();
        let monos = match self.grading() {
            Grading::Finite if d == 0 => self.coefficient_monomials(None),
            Grading::Finite => Vec::new(),
            _ if d >= n => self.coefficient_monomials(Some(d - n)),
            _ => Vec::new(),
        };
        let ws = words(m, n);
        let mut raw = Vec::with_capacity(monos.len() * ws.len());
        for mono in &monos {
            for w in &ws {
                raw.push(Label::new(mono.clone(), w.clone()));
            }
        }
        raw.sort();
        let raw_index: HashMap<Label, usize> =
            raw.iter().enumerate().map(|(i, l)| (l.clone(), i)).collect();

        let rows = if raw.is_empty() {
            Vec::new()
        } else {
            self.relation_rows(n, d, &raw_index)
        };
        let pivots = row_reduce(rows, raw.len());

        // columns are indexed in reverse label order so that pivots fall on
        // the largest labels and the basis keeps the smallest ones
        let rev = |i: usize| raw.len() - 1 - i;
        let mut basis = Vec::new();
        let mut reductions = HashMap::new();
        for (i, l) in raw.iter().enumerate() {
            match pivots.get(&rev(i)) {
                None => basis.push(l.clone()),
                Some(row) => {
                    let expr = row
                        .iter()
                        .filter(|(&c, _)| c != rev(i))
                        .map(|(&c, a)| (raw[rev(c)].clone(), -a))
                        .collect();
                    reductions.insert(l.clone(), expr);
                }
            }
        }
        let basis_index = basis.iter().enumerate().map(|(i, l)| (l.clone(), i)).collect();
        Ok(WordBlockBasis {
            form_degree: n,
            var_degree: d,
            raw,
            basis,
            basis_index,
            raw_index,
            reductions,
        })
    }

    /// Generators of the relation ideal that can contribute to block `(n, d)`.
    fn relation_generators(&self, n: usize, d: usize) -> Vec<RawForm> {
        let m = self.nvars();
        let field = self.field();
        let one = field.one();
        let mut gens = Vec::new();
        if n == 0 {
            return gens;
        }
        // d(x_i x_j) = d(x_j x_i)
        for i in 0..m {
            for j in (i + 1)..m {
                let xi = self.var_poly(i);
                let xj = self.var_poly(j);
                let ci = self.alpha_pow(&xi, 1).sub(&xi);
                let cj = self.alpha_pow(&xj, 1).sub(&xj);
                let mut g = RawForm::new();
                self.raw_add(&mut g, &cj, &Word::from_slice(&[i as u8]), &one);
                self.raw_add(&mut g, &ci, &Word::from_slice(&[j as u8]), &-&one);
                if !g.is_zero() {
                    gens.push(g);
                }
            }
        }
        for r in self.endo().relations() {
            let lhs = Poly::term(Monomial::var(m, r.var).with_exponent(r.var, r.power), one.clone())
                .sub(&r.rhs);
            let g = self.raw_d_poly(&lhs);
            if !g.is_zero() {
                gens.push(g);
            }
        }
        if n >= 2 {
            let monos: Vec<Monomial> = match self.grading() {
                Grading::Finite => self.coefficient_monomials(None),
                _ => (1..=(d + 1).saturating_sub(n))
                    .flat_map(|k| self.coefficient_monomials(Some(k)))
                    .collect(),
            };
            let d_alpha: Vec<RawForm> = (0..m)
                .map(|j| self.raw_d_poly(&self.alpha_pow(&self.var_poly(j), 1)))
                .collect();
            for a in monos.iter().filter(|a| !a.is_one()) {
                let da = self.raw_d_poly(&Poly::term(a.clone(), one.clone()));
                for (j, dj) in d_alpha.iter().enumerate() {
                    let dxj = RawForm::single(Label::new(Monomial::one(m), Word::from_slice(&[j as u8])), one.clone());
                    let g = self.raw_mul(&da, &dxj).add(&self.raw_mul(dj, &da));
                    if !g.is_zero() {
                        gens.push(g);
                    }
                }
            }
        }
        gens
    }

    fn relation_rows(
        &self,
        n: usize,
        d: usize,
        raw_index: &HashMap<Label, usize>,
    ) -> Vec<BTreeMap<usize, Scalar>> {
        let m = self.nvars();
        let total = raw_index.len();
        let mut rows = Vec::new();
        for g in self.relation_generators(n, d) {
            let first = g.keys().next().expect("nonzero generator");
            let k = first.form_degree();
            if k > n {
                continue;
            }
            let wg = self.weight(first);
            let coeffs = match self.grading() {
                Grading::Finite => self.coefficient_monomials(None),
                _ => match d.checked_sub(wg + (n - k)) {
                    Some(c) => self.coefficient_monomials(Some(c)),
                    None => continue,
                },
            };
            for i in 0..=(n - k) {
                let lefts = words(m, i);
                let rights = words(m, n - k - i);
                for c in &coeffs {
                    for wl in &lefts {
                        for wr in &rights {
                            let mut row = BTreeMap::new();
                            for (l, a) in &g {
                                let tw = self.alpha_pow_monomial(l.mono(), i as u32);
                                let coeff = self.mono_times(c, &tw);
                                let mut w = wl.clone();
                                w.extend_from_slice(l.word());
                                w.extend_from_slice(wr);
                                for (mono, b) in coeff.terms() {
                                    let lab = Label::new(mono.clone(), w.clone());
                                    let col = total - 1 - raw_index[&lab];
                                    let e = row.entry(col).or_insert_with(|| a.zero_like());
                                    *e = &*e + &(a * b);
                                }
                            }
                            row.retain(|_, v: &mut Scalar| !v.is_zero());
                            if !row.is_empty() {
                                rows.push(row);
                            }
                        }
                    }
                }
            }
        }
        rows
    }
}

/// Reduced row-echelon form of sparse rows; returns pivot column -> row
/// (pivot entry 1, zero in every other pivot column).
fn row_reduce(rows: Vec<BTreeMap<usize, Scalar>>, _ncols: usize) -> BTreeMap<usize, BTreeMap<usize, Scalar>> {
    let mut pivots: BTreeMap<usize, BTreeMap<usize, Scalar>> = BTreeMap::new();
    for mut r in rows {
        while let Some((&c, v)) = r.iter().next() {
            let v = v.clone();
            match pivots.get(&c) {
                Some(p) => sub_scaled(&mut r, p, &v),
                None => {
                    let inv = v.inv().expect("nonzero pivot");
                    for x in r.values_mut() {
                        *x = &*x * &inv;
                    }
                    pivots.insert(c, r);
                    break;
                }
            }
        }
    }
    // back-substitution, largest pivot column first
    let cols: Vec<usize> = pivots.keys().rev().copied().collect();
    for &c in &cols {
        let mut row = pivots.remove(&c).unwrap();
        loop {
            let target = row
                .keys()
                .find(|&&k| k != c && pivots.contains_key(&k))
                .copied();
            let Some(k) = target else { break };
            let f = row[&k].clone();
            sub_scaled(&mut row, &pivots[&k], &f);
        }
        pivots.insert(c, row);
    }
    pivots
}

/// `r -= f * p`
fn sub_scaled(r: &mut BTreeMap<usize, Scalar>, p: &BTreeMap<usize, Scalar>, f: &Scalar) {
    for (&k, a) in p {
        let prod = a * f;
        match r.get_mut(&k) {
            Some(x) => {
                *x = &*x - &prod;
                if x.is_zero() {
                    r.remove(&k);
                }
            }
            None => {
                r.insert(k, -prod);
            }
        }
    }
}
