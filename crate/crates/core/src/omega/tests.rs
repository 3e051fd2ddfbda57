use super::*;
use crate::kernel::{field::q_poly, EndoKind, EndoSpec, FieldSpec, Monomial, Poly, Relation};

fn names(v: &[&str]) -> Vec<String> {
    v.iter().map(|s| s.to_string()).collect()
}

fn q_line(caps: Caps) -> AlgebraCtx {
    let f = FieldSpec::rational_functions("q");
    let endo = EndoSpec::new(&f, 1, EndoKind::Diagonal(vec![f.q().unwrap()]), vec![]).unwrap();
    AlgebraCtx::new(f, names(&["x"]), endo, caps).unwrap()
}

fn q_line_at(q: i64, caps: Caps) -> AlgebraCtx {
    let f = FieldSpec::rationals();
    let endo = EndoSpec::new(&f, 1, EndoKind::Diagonal(vec![f.from_int(q)]), vec![]).unwrap();
    AlgebraCtx::new(f, names(&["x"]), endo, caps).unwrap()
}

fn swap(caps: Caps) -> AlgebraCtx {
    let f = FieldSpec::rationals();
    let (o, z) = (f.one(), f.zero());
    let endo = EndoSpec::new(&f, 2, EndoKind::Linear(vec![vec![z.clone(), o.clone()], vec![o, z]]), vec![]).unwrap();
    AlgebraCtx::new(f, names(&["x", "y"]), endo, caps).unwrap()
}

/// k[x]/(x^2 - x) with α(x) = 1 - x.
fn idempotent(caps: Caps) -> AlgebraCtx {
    let f = FieldSpec::rationals();
    let x = Poly::var(&f, 1, 0);
    let image = Poly::constant(1, f.one()).sub(&x);
    let rel = Relation {
        var: 0,
        power: 2,
        rhs: x.clone(),
    };
    let endo = EndoSpec::new(&f, 1, EndoKind::General(vec![image]), vec![rel]).unwrap();
    AlgebraCtx::new(f, names(&["x"]), endo, caps).unwrap()
}

fn lab(e: &[u32], w: &[u8]) -> Label {
    Label::new(Monomial::from_exponents(e), Word::from_slice(w))
}

fn xpow(ctx: &AlgebraCtx, e: &[u32]) -> Form {
    ctx.form_from_poly(&Poly::term(Monomial::from_exponents(e), ctx.field().one())).unwrap()
}

#[test]
fn generic_q_has_no_two_forms() {
    let ctx = q_line(Caps::new(6, 3));
    for d in 0..=6 {
        assert_eq!(ctx.block_basis(2, d).unwrap().dim(), 0, "d = {d}");
        assert_eq!(ctx.block_basis(3, d).unwrap().dim(), 0);
    }
    assert_eq!(ctx.block_basis(1, 3).unwrap().dim(), 1);
    assert_eq!(ctx.block_basis(0, 3).unwrap().dim(), 1);
}

#[test]
fn q_minus_one_keeps_every_power_of_dx() {
    let ctx = q_line_at(-1, Caps::new(6, 4));
    for n in 0..=4 {
        for d in n..=6 {
            assert_eq!(ctx.block_basis(n, d).unwrap().dim(), 1, "({n}, {d})");
        }
    }
}

#[test]
fn swap_context_two_forms() {
    let ctx = swap(Caps::new(4, 2));
    let b = ctx.block_basis(2, 2).unwrap();
    assert_eq!(b.basis(), &[lab(&[0, 0], &[0, 0])]);
    let dxdx = ctx.label_form(&lab(&[0, 0], &[0, 0])).unwrap();
    assert_eq!(ctx.label_form(&lab(&[0, 0], &[0, 1])).unwrap(), dxdx.neg());
    assert_eq!(ctx.label_form(&lab(&[0, 0], &[1, 0])).unwrap(), dxdx.neg());
    assert_eq!(ctx.label_form(&lab(&[0, 0], &[1, 1])).unwrap(), dxdx);
    // (x - y)(dx + dy) = 0
    let one_forms = ctx.block_basis(1, 2).unwrap();
    let x = ctx.var_form(0).unwrap();
    let y = ctx.var_form(1).unwrap();
    let s = ctx.dvar_form(0).unwrap().add(&ctx.dvar_form(1).unwrap());
    assert!(ctx.mul(&x.sub(&y), &s).unwrap().is_zero());
    assert_eq!(one_forms.dim(), 3);
}

#[test]
fn differential_of_powers() {
    let ctx = q_line(Caps::new(6, 2));
    let d = ctx.differential(&xpow(&ctx, &[3])).unwrap();
    let expected = ctx
        .label_form(&lab(&[2], &[0]))
        .unwrap()
        .scale(&q_poly(&[1, 1, 1]));
    assert_eq!(d, expected);
    assert_eq!(ctx.format_form(&d), "(1 + q + q^2)*x^2*dx");
    assert!(ctx.differential(&d).unwrap().is_zero());
}

#[test]
fn homotopy_on_one_forms() {
    let ctx = q_line(Caps::new(6, 2));
    for n in 0..5 {
        let i = ctx.homotopy(&ctx.label_form(&lab(&[n], &[0])).unwrap()).unwrap();
        assert_eq!(i, xpow(&ctx, &[n + 1]).scale(&q_poly(&[1, -1])));
    }
}

#[test]
fn idempotent_algebra() {
    let ctx = idempotent(Caps::new(0, 3));
    assert!(ctx.alpha_is_involution());
    let xdx = ctx.label_form(&lab(&[1], &[0])).unwrap();
    assert_eq!(ctx.homotopy(&xdx).unwrap(), ctx.var_form(0).unwrap());
    let dx = ctx.dvar_form(0).unwrap();
    assert_eq!(ctx.alpha_form(&dx).unwrap(), dx.neg());
    // d(x^2 - x) vanishes identically, so 1-forms are free on dx, x dx
    assert_eq!(ctx.block_basis(1, 0).unwrap().dim(), 2);
}

#[test]
fn product_is_associative_on_basis() {
    let ctx = swap(Caps::new(5, 3));
    let gens: Vec<Form> = vec![
        ctx.var_form(0).unwrap(),
        ctx.var_form(1).unwrap(),
        ctx.dvar_form(0).unwrap(),
        ctx.dvar_form(1).unwrap(),
    ];
    for a in &gens {
        for b in &gens {
            for c in &gens {
                let l = ctx.mul(&ctx.mul(a, b).unwrap(), c).unwrap();
                let r = ctx.mul(a, &ctx.mul(b, c).unwrap()).unwrap();
                assert_eq!(l, r);
            }
        }
    }
}

#[test]
fn leibniz_rule() {
    // at q = -1 two-forms survive, so the rule is tested in degree 2
    let ctx = q_line_at(-1, Caps::new(6, 3));
    let a = xpow(&ctx, &[2]);
    let b = ctx.label_form(&lab(&[1], &[0])).unwrap();
    let lhs = ctx.differential(&ctx.mul(&a, &b).unwrap()).unwrap();
    assert!(!lhs.is_zero());
    let rhs = ctx
        .mul(&ctx.differential(&a).unwrap(), &b)
        .unwrap()
        .add(&ctx.mul(&a, &ctx.differential(&b).unwrap()).unwrap());
    assert_eq!(lhs, rhs);
}

#[test]
fn caps_are_enforced() {
    let ctx = q_line(Caps::new(2, 1));
    let e = ctx.form_from_poly(&Poly::term(Monomial::from_exponents(&[3]), ctx.field().one()));
    assert!(matches!(e, Err(crate::Error::CapExceeded { .. })));
}

#[test]
fn reduction_matrix_is_a_projection() {
    let ctx = swap(Caps::new(4, 2));
    let b = ctx.block_basis(2, 3).unwrap();
    let p = b.reduction_matrix(&ctx);
    // columns of basis labels are unit vectors
    for (i, l) in b.basis().iter().enumerate() {
        let j = b.raw_labels().iter().position(|r| r == l).unwrap();
        for k in 0..b.dim() {
            let want = if k == i { ctx.field().one() } else { ctx.field().zero() };
            assert_eq!(p.get(k, j), &want);
        }
    }
}
