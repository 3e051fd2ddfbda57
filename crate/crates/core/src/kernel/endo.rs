//! Algebra endomorphisms of `k[x_1..x_m]` and univariate quotient relations.

use super::field::{FieldSpec, Scalar};
use super::poly::{Monomial, Poly};
use crate::error::{Error, Result};

/// `x_var^power = rhs(x_var)` with `deg rhs < power`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    pub var: usize,
    pub power: u32,
    pub rhs: Poly,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EndoKind {
    /// `x_i -> q_i x_i`
    Diagonal(Vec<Scalar>),
    /// `x_i -> sum_j c[i][j] x_j`
    Linear(Vec<Vec<Scalar>>),
    /// `x_i -> images[i]`
    General(Vec<Poly>),
}

/// The endomorphism α together with the quotient relations of `A`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EndoSpec {
    kind: EndoKind,
    relations: Vec<Relation>,
    images: Vec<Poly>,
}

impl EndoSpec {
    pub fn new(field: &FieldSpec, nvars: usize, kind: EndoKind, relations: Vec<Relation>) -> Result<Self> {
        let images: Vec<Poly> = match &kind {
            EndoKind::Diagonal(qs) => {
                if qs.len() != nvars {
                    return Err(Error::InvalidAlgebra(format!(
                        "diagonal endomorphism has {} entries for {nvars} variables",
                        qs.len()
                    )));
                }
                qs.iter()
                    .enumerate()
                    .map(|(i, q)| Poly::term(Monomial::var(nvars, i), q.clone()))
                    .collect()
            }
            EndoKind::Linear(c) => {
                if c.len() != nvars || c.iter().any(|row| row.len() != nvars) {
                    return Err(Error::InvalidAlgebra(format!(
                        "linear endomorphism must be a {nvars}x{nvars} matrix"
                    )));
                }
                c.iter()
                    .map(|row| {
                        let mut p = Poly::zero(nvars);
                        for (j, cij) in row.iter().enumerate() {
                            p.add_term(Monomial::var(nvars, j), cij.clone());
                        }
                        p
                    })
                    .collect()
            }
            EndoKind::General(images) => {
                if images.len() != nvars || images.iter().any(|p| p.nvars() != nvars) {
                    return Err(Error::InvalidAlgebra(format!(
                        "general endomorphism needs {nvars} images in {nvars} variables"
                    )));
                }
                images.clone()
            }
        };
        let mut seen = vec![false; nvars];
        for r in &relations {
            if r.var >= nvars {
                return Err(Error::InvalidAlgebra(format!("relation on unknown variable {}", r.var)));
            }
            if seen[r.var] {
                return Err(Error::InvalidAlgebra(format!(
                    "more than one relation on variable {}",
                    r.var
                )));
            }
            seen[r.var] = true;
            if r.power == 0 {
                return Err(Error::InvalidAlgebra("relation power must be positive".into()));
            }
            if r.rhs.support_vars().iter().any(|&v| v != r.var) {
                return Err(Error::InvalidAlgebra(format!(
                    "relation on variable {} must be univariate in that variable",
                    r.var
                )));
            }
            if r.rhs.degree().is_some_and(|d| d >= r.power) {
                return Err(Error::InvalidAlgebra(format!(
                    "relation x_{}^{} = ... needs a right-hand side of lower degree",
                    r.var, r.power
                )));
            }
        }
        let spec = EndoSpec {
            kind,
            relations,
            images: images.into_iter().collect(),
        };
        let images: Vec<Poly> = spec.images.iter().map(|p| spec.reduce(field, p)).collect();
        let spec = EndoSpec { images, ..spec };
        for r in &spec.relations {
            // α(x^e - p(x)) must vanish in A
            let lhs = Poly::term(Monomial::var(nvars, r.var).with_exponent(r.var, r.power), field.one())
                .sub(&r.rhs);
            if !spec.apply(field, &lhs).is_zero() {
                return Err(Error::InvalidAlgebra(format!(
                    "endomorphism is not compatible with the relation on variable {}",
                    r.var
                )));
            }
        }
        Ok(spec)
    }

    pub fn identity(field: &FieldSpec, nvars: usize) -> Self {
        EndoSpec::new(field, nvars, EndoKind::Diagonal(vec![field.one(); nvars]), Vec::new())
            .expect("identity is always valid")
    }

    pub fn kind(&self) -> &EndoKind {
        &self.kind
    }

    pub fn relations(&self) -> &[Relation] {
        &self.relations
    }

    pub fn nvars(&self) -> usize {
        self.images.len()
    }

    /// Reduced image of `x_i`.
    pub fn image(&self, i: usize) -> &Poly {
        &self.images[i]
    }

    pub fn relation_for(&self, var: usize) -> Option<&Relation> {
        self.relations.iter().find(|r| r.var == var)
    }

    /// True when α maps each variable to a homogeneous linear form.
    pub fn is_graded(&self) -> bool {
        match &self.kind {
            EndoKind::Diagonal(_) | EndoKind::Linear(_) => true,
            EndoKind::General(_) => self.images.iter().all(|p| p.is_homogeneous_of(1)),
        }
    }

    /// Rewrites `x_i^{e_i} -> p_i(x_i)` to a fixpoint.
    pub fn reduce(&self, field: &FieldSpec, p: &Poly) -> Poly {
        if self.relations.is_empty() {
            return p.clone();
        }
        let mut out = Poly::zero(p.nvars());
        for (m, c) in p.terms() {
            out.add_assign_scaled(&self.reduce_monomial(field, m), c);
        }
        out
    }

    pub fn reduce_monomial(&self, field: &FieldSpec, m: &Monomial) -> Poly {
        let n = m.nvars();
        let mut acc = Poly::constant(n, field.one());
        for (i, &e) in m.exponents().iter().enumerate() {
            if e == 0 {
                continue;
            }
            let factor = match self.relation_for(i) {
                Some(r) if e >= r.power => reduce_power(field, n, r, e),
                _ => Poly::term(Monomial::var(n, i).with_exponent(i, e), field.one()),
            };
            // factors live in distinct variables, so the product stays reduced
            acc = acc.mul(&factor);
        }
        acc
    }

    /// Whether every exponent is below its relation's power.
    pub fn is_reduced(&self, m: &Monomial) -> bool {
        self.relations.iter().all(|r| m.exponents()[r.var] < r.power)
    }

    /// α applied to a polynomial, reduced.
    pub fn apply(&self, field: &FieldSpec, p: &Poly) -> Poly {
        let mut out = Poly::zero(p.nvars());
        for (m, c) in p.terms() {
            out.add_assign_scaled(&self.apply_monomial(field, m), c);
        }
        out
    }

    pub fn apply_monomial(&self, field: &FieldSpec, m: &Monomial) -> Poly {
        if let EndoKind::Diagonal(qs) = &self.kind {
            let mut c = field.one();
            for (q, &e) in qs.iter().zip(m.exponents()) {
                if e > 0 {
                    c = &c * &q.pow(e);
                }
            }
            return self.reduce(field, &Poly::term(m.clone(), c));
        }
        let mut acc = Poly::constant(m.nvars(), field.one());
        for (i, &e) in m.exponents().iter().enumerate() {
            for _ in 0..e {
                acc = self.reduce(field, &acc.mul(&self.images[i]));
            }
        }
        acc
    }
}

/// `x^e` modulo `x^power - rhs(x)` for a single variable.
fn reduce_power(field: &FieldSpec, nvars: usize, r: &Relation, e: u32) -> Poly {
    // dense coefficients of x^k, k < power
    let power = r.power as usize;
    let mut rhs = vec![field.zero(); power];
    for (m, c) in r.rhs.terms() {
        rhs[m.exponents()[r.var] as usize] = c.clone();
    }
    let mut cur = vec![field.zero(); power];
    // start from x^(power-1), multiply by x repeatedly
    if power == 1 {
        cur[0] = rhs[0].clone();
        // x = rhs[0], so x^e = rhs[0]^e
        let c = rhs[0].pow(e);
        return Poly::constant(nvars, c);
    }
    cur[power - 1] = field.one();
    for _ in (power as u32 - 1)..e {
        let top = cur[power - 1].clone();
        for k in (1..power).rev() {
            cur[k] = &cur[k - 1] + &(&top * &rhs[k]);
        }
        cur[0] = &top * &rhs[0];
    }
    let mut out = Poly::zero(nvars);
    for (k, c) in cur.into_iter().enumerate() {
        out.add_term(Monomial::var(nvars, r.var).with_exponent(r.var, k as u32), c);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::field::q_poly;

    fn idempotent_ctx() -> (FieldSpec, EndoSpec) {
        let f = FieldSpec::rationals();
        let x = Poly::var(&f, 1, 0);
        let one = Poly::constant(1, f.one());
        let e = EndoSpec::new(
            &f,
            1,
            EndoKind::General(vec![one.sub(&x)]),
            vec![Relation {
                var: 0,
                power: 2,
                rhs: x.clone(),
            }],
        )
        .unwrap();
        (f, e)
    }

    fn xpow(f: &FieldSpec, e: u32) -> Poly {
        Poly::term(Monomial::from_exponents(&[e]), f.one())
    }

    #[test]
    fn reduce_examples() {
        let (f, e) = idempotent_ctx();
        assert_eq!(e.reduce(&f, &xpow(&f, 3)), xpow(&f, 1));
        assert_eq!(e.reduce(&f, &xpow(&f, 1)), xpow(&f, 1));
        let p = xpow(&f, 4).add(&xpow(&f, 2));
        assert_eq!(e.reduce(&f, &p), xpow(&f, 1).scale(&f.from_int(2)));
    }

    #[test]
    fn reduce_power_general_relation() {
        // x^3 = 1 + x  =>  x^4 = x + x^2, x^5 = x^2 + x^3 = 1 + x + x^2
        let f = FieldSpec::rationals();
        let rhs = Poly::constant(1, f.one()).add(&xpow(&f, 1));
        let e = EndoSpec::new(
            &f,
            1,
            EndoKind::Diagonal(vec![f.one()]),
            vec![Relation { var: 0, power: 3, rhs }],
        )
        .unwrap();
        let expected = Poly::constant(1, f.one()).add(&xpow(&f, 1)).add(&xpow(&f, 2));
        assert_eq!(e.reduce(&f, &xpow(&f, 5)), expected);
    }

    #[test]
    fn diagonal_image() {
        let f = FieldSpec::rational_functions("q");
        let q = f.q().unwrap();
        let e = EndoSpec::new(&f, 2, EndoKind::Diagonal(vec![q.clone(), q]), vec![]).unwrap();
        let m = Monomial::from_exponents(&[2, 1]);
        let got = e.apply(&f, &Poly::term(m.clone(), f.one()));
        assert_eq!(got, Poly::term(m, q_poly(&[0, 0, 0, 1])));
    }

    #[test]
    fn one_minus_x_on_idempotent() {
        let (f, e) = idempotent_ctx();
        let x = Poly::var(&f, 1, 0);
        assert_eq!(e.apply(&f, &x), Poly::constant(1, f.one()).sub(&x));
        // α^2 = id on the quotient
        assert_eq!(e.apply(&f, &e.apply(&f, &x)), x);
    }

    #[test]
    fn incompatible_relation_rejected() {
        // α(x) = 2x does not preserve x^2 = x
        let f = FieldSpec::rationals();
        let x = Poly::var(&f, 1, 0);
        let r = EndoSpec::new(
            &f,
            1,
            EndoKind::Diagonal(vec![f.from_int(2)]),
            vec![Relation { var: 0, power: 2, rhs: x }],
        );
        assert!(matches!(r, Err(Error::InvalidAlgebra(_))));
    }

    #[test]
    fn relation_shape_checked() {
        let f = FieldSpec::rationals();
        let y = Poly::var(&f, 2, 1);
        let r = EndoSpec::new(
            &f,
            2,
            EndoKind::Diagonal(vec![f.one(), f.one()]),
            vec![Relation { var: 0, power: 2, rhs: y }],
        );
        assert!(r.is_err());
    }
}
