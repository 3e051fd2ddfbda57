//! Acceptance run: one line per criterion. Built with `harness = false` so
//! the lines always reach the terminal.

mod common;

use std::process::Command;
use std::time::{Duration, Instant};

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use common::*;
use twistforms::braiding::{check_axioms, compare_braidings, AxiomLimits, Braid, ClosedBraiding, OracleBraiding, SignedFlip, Tensor};
use twistforms::braidrep::{verify_braid_relations, verify_involution, Representation, Window};
use twistforms::cli::{parse_expression, parse_form, Config};
use twistforms::omega::{check_omega, AlgebraCtx, Form, OmegaLimits};
use twistforms::{Error, Result};

/// Criteria whose check is known to fail; see the README. The run fails if
/// one of them starts passing, so the list cannot go stale.
const KNOWN_FAILURES: &[usize] = &[6];

struct Outcome {
    passed: bool,
    detail: String,
}

fn outcome(passed: bool, detail: impl Into<String>) -> Result<Outcome> {
    Ok(Outcome {
        passed,
        detail: detail.into(),
    })
}

fn q_table() -> Result<Outcome> {
    let ctx = build(&config(Q_LINE), 6, 2);
    let r = ClosedBraiding::new(ctx.clone());
    let f = ctx.field();
    let q = f.q().unwrap();
    let form = |s: String| parse_form(&s, &ctx);
    let mut bad = Vec::new();
    let mut count = 0;
    for n in 0..=5u32 {
        for m in 0..=5u32 {
            let xn = form(format!("x^{n}"))?;
            let xm = form(format!("x^{m}"))?;
            let xndx = form(format!("x^{n}*dx"))?;
            let xmdx = form(format!("x^{m}*dx"))?;
            let mut cases = vec![
                (ctx.tensor(&[&xn, &xm]), ctx.tensor(&[&xm, &xn])),
                (ctx.tensor(&[&xndx, &xm]), ctx.tensor(&[&xm, &xndx]).scale(&q.pow(m))),
                (ctx.tensor(&[&xndx, &xmdx]), ctx.tensor(&[&xmdx, &xndx]).scale(&-q.pow(m + 1))),
            ];
            let mut mixed = ctx.tensor(&[&xmdx, &xn]);
            if n > 0 {
                let c = &f.one() - &q.pow(n);
                let extra = ctx.tensor(&[&form(format!("x^{}", m + 1))?, &form(format!("x^{}*dx", n - 1))?]);
                mixed = mixed.add(&extra.scale(&c));
            }
            cases.push((ctx.tensor(&[&xn, &xmdx]), mixed));
            for (input, expected) in cases {
                count += 1;
                let got = r.braid(&input)?;
                if got != expected {
                    bad.push(format!(
                        "R({}) = {}, expected {}",
                        ctx.format_tensor(&input),
                        ctx.format_tensor(&got),
                        ctx.format_tensor(&expected)
                    ));
                }
            }
        }
    }
    outcome(bad.is_empty(), format!("{} of {count} table entries match{}", count - bad.len(), first(&bad)))
}

fn first(bad: &[String]) -> String {
    bad.first().map(|b| format!("; first mismatch: {b}")).unwrap_or_default()
}

/// A random form with small integer coefficients on basis labels of the
/// given form-degree.
fn random_form(ctx: &AlgebraCtx, rng: &mut StdRng, max_var: usize, degree: usize) -> Result<Form> {
    let labels: Vec<_> = ctx
        .basis_labels(max_var, degree)?
        .into_iter()
        .filter(|l| l.form_degree() == degree)
        .collect();
    let mut out = Form::zero();
    for _ in 0..3 {
        let l = &labels[rng.gen_range(0..labels.len())];
        let c = ctx.field().from_int(rng.gen_range(-3..=3));
        out = out.add(&ctx.label_form(l)?.scale(&c));
    }
    Ok(out)
}

fn sign(ctx: &AlgebraCtx, n: usize) -> twistforms::kernel::Scalar {
    if n.is_multiple_of(2) {
        ctx.field().one()
    } else {
        -ctx.field().one()
    }
}

fn calculus() -> Result<Outcome> {
    let mut summary = Vec::new();
    let mut failed = Vec::new();
    let mut ctxs = Vec::new();
    for (name, cfg) in reference_contexts() {
        let ctx = build(&cfg, 5, 3);
        let report = check_omega(
            &ctx,
            OmegaLimits {
                var_degree: 5,
                form_degree: 2,
            },
        )?;
        let cases: usize = report.checks.iter().map(|c| c.cases).sum();
        summary.push(format!("{name}: {cases} cases"));
        for c in report.checks.iter().filter(|c| !c.passed()) {
            failed.push(format!("{name}: {}", c.name));
        }
        ctxs.push(build(&cfg, 6, 3));
    }
    let mut rng = StdRng::seed_from_u64(0x5eed);
    let mut random_bad = 0;
    for i in 0..200 {
        let ctx = &ctxs[i % ctxs.len()];
        let nw = rng.gen_range(0..=1);
        let w = random_form(ctx, &mut rng, 3, nw)?;
        let s = sign(ctx, nw);
        let ok = if i % 2 == 0 {
            // I(ωψ) = Iω ψ̄ + [ω] ω Iψ
            let np = rng.gen_range(0..=1);
            let p = random_form(ctx, &mut rng, 3, np)?;
            let lhs = ctx.homotopy(&ctx.mul(&w, &p)?)?;
            let rhs = ctx
                .mul(&ctx.homotopy(&w)?, &ctx.alpha_form(&p)?)?
                .add(&ctx.mul(&w, &ctx.homotopy(&p)?)?.scale(&s));
            lhs == rhs
        } else {
            // ω v - v ω = [ω] Iω dv
            let v = random_form(ctx, &mut rng, 3, 0)?;
            let lhs = ctx.mul(&w, &v)?.sub(&ctx.mul(&v, &w)?);
            let rhs = ctx.mul(&ctx.homotopy(&w)?, &ctx.differential(&v)?)?.scale(&s);
            lhs == rhs
        };
        if !ok {
            random_bad += 1;
        }
    }
    if random_bad > 0 {
        failed.push(format!("{random_bad} of 200 random product identities"));
    }
    outcome(
        failed.is_empty(),
        format!("{}; 200 random instances{}", summary.join(", "), failed_note(&failed)),
    )
}

fn failed_note(failed: &[String]) -> String {
    if failed.is_empty() {
        String::new()
    } else {
        format!("; failing: {}", failed.join(", "))
    }
}

fn axiom_contexts() -> Vec<(String, Config)> {
    let mut v: Vec<(String, Config)> = reference_contexts()
        .into_iter()
        .map(|(n, c)| (n.to_string(), c))
        .collect();
    v.push(("q-line at q = -1".into(), q_line_at(-1)));
    v.push(("q-line at q = 2".into(), q_line_at(2)));
    v
}

const LIMITS: AxiomLimits = AxiomLimits {
    var_degree: 4,
    form_degree: 2,
};

fn axioms() -> Result<Outcome> {
    let mut summary = Vec::new();
    let mut failed = Vec::new();
    for (name, cfg) in axiom_contexts() {
        let ctx = build(&cfg, 4, 3);
        let report = check_axioms(&ClosedBraiding::new(ctx), LIMITS)?;
        let cases: usize = report.checks.iter().map(|c| c.cases).sum();
        summary.push(format!("{name}: {cases} cases"));
        for c in report.checks.iter().filter(|c| !c.passed()) {
            failed.push(format!("{name}: {}", c.name));
        }
    }
    outcome(failed.is_empty(), format!("{}{}", summary.join(", "), failed_note(&failed)))
}

fn uniqueness() -> Result<Outcome> {
    let mut summary = Vec::new();
    let mut failed = Vec::new();
    for (name, cfg) in reference_contexts() {
        let ctx = build(&cfg, 4, 3);
        let c = compare_braidings(&ClosedBraiding::new(ctx.clone()), &OracleBraiding::new(ctx), LIMITS)?;
        summary.push(format!("{name}: {} tensors", c.cases));
        if !c.passed() {
            failed.push(format!("{name}: {}", c.witnesses.join("; ")));
        }
    }
    outcome(failed.is_empty(), format!("{}{}", summary.join(", "), failed_note(&failed)))
}

fn representations() -> Result<Outcome> {
    let ctx = build(&config(Q_LINE), 3, 2);
    let r = ClosedBraiding::new(ctx.clone());
    let rep = Representation::new(&r, Window::full(&ctx), 3, 3, 2)?;
    let report = verify_braid_relations(&rep, 3, 2)?;
    let failed: Vec<String> = report
        .checks
        .iter()
        .filter(|c| !c.passed())
        .map(|c| c.name.clone())
        .collect();
    let relations = report.check("braid_relation").map(|c| c.cases).unwrap_or(0);
    let ctx0 = build(&q_line_at(0), 2, 2);
    let r0 = ClosedBraiding::new(ctx0.clone());
    let rep0 = Representation::new(&r0, Window::full(&ctx0), 2, 2, 2)?;
    let singular = matches!(rep0.sigma(2, 2, 1)?.inverse(), Err(Error::SingularBlock(_)));
    outcome(
        failed.is_empty() && singular,
        format!(
            "arity 3, d <= 3, f <= 2: {relations} braid relations{}; q = 0 block (d=2, f=2) singular: {singular}",
            failed_note(&failed)
        ),
    )
}

fn symmetric() -> Result<Outcome> {
    let ctx = build(&config(IDEMPOTENT), 4, 2);
    let r = ClosedBraiding::new(ctx.clone());
    let mut parts = Vec::new();
    let mut passed = true;
    for arity in [2, 3] {
        let rep = Representation::new(&r, Window::full(&ctx), arity, 0, 2)?;
        let report = verify_involution(&rep, 0, 2)?;
        let c = report.check("sigma_squared_is_identity").unwrap();
        passed &= c.passed();
        let mut blocks: Vec<String> = c.witnesses.iter().map(|w| w.split(':').next().unwrap().to_string()).collect();
        blocks.dedup();
        parts.push(format!(
            "arity {arity}: {} of {} generators square to 1{}",
            c.cases - c.failures,
            c.cases,
            if blocks.is_empty() {
                String::new()
            } else {
                format!(" (not on {})", blocks.join(", "))
            }
        ));
    }
    outcome(passed, parts.join("; "))
}

fn identity_alpha() -> Result<Outcome> {
    let mut failed = Vec::new();
    let mut summary = Vec::new();
    let one_var = r#"{"field": "Q", "variables": ["x"], "endo": {"diagonal": [1]},
        "caps": {"var_degree": 4, "form_degree": 2}}"#;
    for (name, json) in [("k[x]", one_var), ("k[x,y]", IDENTITY)] {
        let ctx = build(&config(json), 4, 3);
        let labels = ctx.basis_labels(4, 2)?;
        let mut nonzero_i = 0;
        for l in &labels {
            if !ctx.homotopy(&ctx.label_form(l)?)?.is_zero() {
                nonzero_i += 1;
            }
        }
        if nonzero_i > 0 {
            failed.push(format!("{name}: I is nonzero on {nonzero_i} labels"));
        }
        let closed = ClosedBraiding::new(ctx.clone());
        let c = compare_braidings(&closed, &SignedFlip::new(ctx.clone()), LIMITS)?;
        if !c.passed() {
            failed.push(format!("{name}: {}", c.witnesses.join("; ")));
        }
        let mut tau = 0;
        let zero_forms: Vec<_> = labels.iter().filter(|l| l.form_degree() == 0).collect();
        for a in &zero_forms {
            for b in &zero_forms {
                let got = closed.braid_pair(a, b)?;
                let expected = Tensor::basis_tensor(vec![(*b).clone(), (*a).clone()], ctx.field().one());
                if *got != expected {
                    failed.push(format!("{name}: degree 0 is not the flip"));
                }
                tau += 1;
            }
        }
        summary.push(format!("{name}: I = 0 on {} labels, {} tensors, {tau} degree-0 pairs", labels.len(), c.cases));
    }
    outcome(failed.is_empty(), format!("{}{}", summary.join("; "), failed_note(&failed)))
}

fn dimensions() -> Result<Outcome> {
    let mut failed = Vec::new();
    let generic = build(&config(Q_LINE), 4, 2);
    for d in 0..=4 {
        if generic.block_basis(2, d)?.dim() != 0 {
            failed.push(format!("Q(q): dim of block (2, {d}) is nonzero"));
        }
    }
    let minus = build(&q_line_at(-1), 4, 2);
    let b = minus.block_basis(2, 2)?;
    let show = |ctx: &AlgebraCtx, b: &twistforms::omega::WordBlockBasis| {
        b.basis().iter().map(|l| l.fmt_with(ctx.names())).collect::<Vec<_>>()
    };
    if show(&minus, &b) != ["dx*dx"] {
        failed.push(format!("q = -1: basis {:?}", show(&minus, &b)));
    }
    let swap = build(&config(SWAP), 4, 2);
    let b = swap.block_basis(2, 2)?;
    if show(&swap, &b) != ["dx*dx"] {
        failed.push(format!("swap: basis {:?}", show(&swap, &b)));
    }
    let f = |s: &str| parse_form(s, &swap);
    let dxdx = f("dx*dx")?;
    if f("dy*dx")? != dxdx.neg() || f("dx*dy")? != dxdx.neg() || f("dy*dy")? != dxdx {
        failed.push("swap: products of differentials".into());
    }
    outcome(
        failed.is_empty(),
        format!(
            "Q(q): dim 0 for d <= 4; q = -1: {{dx*dx}}; swap: {{dx*dx}} with dy*dx = dx*dy = -dx*dx, dy*dy = dx*dx{}",
            failed_note(&failed)
        ),
    )
}

fn run_cli(cfg: &str, args: &[&str]) -> i32 {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("config.json");
    std::fs::write(&path, cfg).unwrap();
    let status = Command::new(env!("CARGO_BIN_EXE_twistforms"))
        .arg("--config")
        .arg(&path)
        .args(args)
        .output()
        .unwrap()
        .status;
    status.code().unwrap_or(-1)
}

fn cli_contract() -> Result<Outcome> {
    let mut bad = Vec::new();
    let corpus = round_trip_corpus();
    for (json, text) in &corpus {
        let ctx = config(json).build()?;
        let v = parse_expression(text, &ctx)?;
        let printed = v.format(&ctx);
        match parse_expression(&printed, &ctx) {
            Ok(w) if w == v && w.format(&ctx) == printed => {}
            _ => bad.push(format!("`{text}` printed as `{printed}`")),
        }
    }
    let verify = ["verify", "--suite", "all", "--max-var-degree", "4", "--max-form-degree", "2", "--arity", "3"];
    let with = |extra: &[&'static str]| -> Vec<&str> { verify.iter().copied().chain(extra.iter().copied()).collect() };
    let unsupported = r#"{"field": "Q", "variables": ["x"], "endo": {"images": ["x^2"]},
        "caps": {"var_degree": 4, "form_degree": 2}}"#;
    let codes = [
        ("passing", run_cli(Q_LINE, &verify), 0),
        ("corrupted R", run_cli(Q_LINE, &with(&["--braiding", "flip"])), 1),
        ("misconfigured", run_cli(unsupported, &verify), 2),
        ("malformed config", run_cli("{\"field\": ", &verify), 2),
        (
            "cap-violating",
            run_cli(
                Q_LINE,
                &["verify", "--suite", "all", "--max-var-degree", "5", "--max-form-degree", "2"],
            ),
            3,
        ),
    ];
    for (what, got, want) in &codes {
        if got != want {
            bad.push(format!("{what} run exited {got}, expected {want}"));
        }
    }
    let shown: Vec<String> = codes.iter().map(|(w, g, _)| format!("{w} -> {g}")).collect();
    outcome(
        bad.is_empty(),
        format!("{} expressions round-trip; exit codes {}{}", corpus.len(), shown.join(", "), failed_note(&bad)),
    )
}

type Criterion = (usize, &'static str, Duration, fn() -> Result<Outcome>);

fn main() {
    let criteria: [Criterion; 9] = [
        (1, "q-example closed forms", Duration::from_secs(1), q_table),
        (2, "calculus identities", Duration::from_secs(10), calculus),
        (3, "braiding axioms", Duration::from_secs(120), axioms),
        (4, "closed formula equals oracle", Duration::from_secs(60), uniqueness),
        (5, "braid representations", Duration::from_secs(120), representations),
        (6, "symmetric degeneration", Duration::from_secs(10), symmetric),
        (7, "identity endomorphism", Duration::from_secs(60), identity_alpha),
        (8, "quotient dimensions", Duration::from_secs(60), dimensions),
        (9, "command-line contract", Duration::from_secs(120), cli_contract),
    ];
    let mut unexpected = Vec::new();
    for (id, name, budget, check) in criteria {
        let start = Instant::now();
        let result = check();
        let elapsed = start.elapsed();
        let (passed, detail) = match result {
            Ok(o) => (o.passed && elapsed <= budget, o.detail),
            Err(e) => (false, format!("error: {e}")),
        };
        println!(
            "[{}] {id}. {name}: {detail} ({:.2} s of {} s)",
            if passed { "PASS" } else { "FAIL" },
            elapsed.as_secs_f64(),
            budget.as_secs()
        );
        let known = KNOWN_FAILURES.contains(&id);
        if passed == known {
            unexpected.push(id);
        }
    }
    for id in KNOWN_FAILURES {
        println!("note: criterion {id} is a known failure of the stated claim, documented in the README");
    }
    if unexpected.is_empty() {
        println!("acceptance: all criteria behave as documented");
    } else {
        println!("acceptance: unexpected results for criteria {unexpected:?}");
        std::process::exit(1);
    }
}
