//! Acceptance gate: one line per criterion, nonzero exit if any fails.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::Instant;

use common::{block_oracle, piece, rationals};
use embcurve_core::certificate::Method;
use embcurve_core::curves::{closing_labels, embed, section_space, EmbeddedCurve, MarkedCurve};
use embcurve_core::exactla::{kernel, normalize_projective, projectively_equal, subspace_equal, Matrix, Subspace};
use embcurve_core::gluing::{compose, compose_verified, gluing_functional, project_from_line, self_glue, self_glue_verified, GlueOptions, GluingReport};
use embcurve_core::permops::{compose_block, Permutation};
use embcurve_core::verify::{
    min_k, min_k_report, rr_check, run_axioms, run_instance, run_permutation, secant_conditions, AxiomRunConfig, Caps,
    ComponentType, CurveInstance, InstanceKind,
};
use embcurve_core::CertOptions;

/// Exact comparisons only.
const TOLERANCE: i64 = 0;
const MIN_DIMENSION_CONFIGS: usize = 50;
const MIN_DISJOINT_GLUINGS: usize = 20;
const MIN_SELF_GLUINGS: usize = 5;
const MIN_FOUR_MARK_CONFIGS: usize = 20;
const DUALGRAPH_CASES: usize = 1000;
const SEED: u64 = 20261014;
const MIN_K_MAX_K: u32 = 10;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond { Ok(()) } else { Err(msg()) }
}

fn err<E: std::fmt::Debug>(e: E) -> String {
    format!("{e:?}")
}

fn opts() -> GlueOptions {
    GlueOptions::default()
}

// ------------------------------------------------------------ fixtures

/// Curves built from lines by grafting and gluing marks, `g <= 2`, `n <= 6`.
fn glue_generated() -> Vec<MarkedCurve> {
    let p = |n: usize, s: usize| piece(n, s);
    let graft = |a: &MarkedCurve, i: usize, b: &MarkedCurve| a.graft(i, b).unwrap();
    let glue = |a: &MarkedCurve, i: usize, j: usize| a.glue_marks(i, j).unwrap();
    let mut out = Vec::new();
    for s in 0..3 {
        out.push(p(3, s));
        out.push(p(4, s));
    }
    for s in 0..2 {
        out.push(p(5, s));
        out.push(p(6, s));
    }
    let p33 = graft(&p(3, 0), 1, &p(3, 1));
    let p34 = graft(&p(3, 2), 2, &p(4, 3));
    let p44 = graft(&p(4, 1), 3, &p(4, 4));
    let p333 = graft(&p(3, 0), 1, &graft(&p(3, 1), 2, &p(3, 2)));
    let chain = graft(&graft(&p33, 3, &p(3, 3)), 4, &p(3, 4));
    out.extend([p33.clone(), p34.clone(), p44.clone(), p333.clone(), chain, graft(&p(3, 5), 2, &p(5, 0))]);

    let e1 = glue(&p(3, 0), 1, 2);
    out.extend([
        e1.clone(),
        glue(&p(4, 1), 1, 2),
        glue(&p(5, 2), 2, 4),
        glue(&p(6, 3), 1, 6),
        glue(&p33, 1, 4),
        glue(&p34, 1, 5),
        glue(&p44, 1, 3),
        graft(&e1, 1, &p(3, 2)),
    ]);
    out.extend([
        glue(&glue(&p(4, 0), 1, 2), 1, 2),
        glue(&glue(&p(5, 1), 1, 3), 2, 3),
        glue(&glue(&p(6, 2), 1, 2), 3, 4),
        glue(&glue(&p33, 1, 2), 1, 2),
        glue(&glue(&p44, 1, 6), 2, 3),
        graft(&e1, 1, &glue(&p(3, 4), 2, 3)),
        glue(&graft(&e1, 1, &p(4, 5)), 1, 3),
    ]);
    out
}

/// Disjoint gluings `(A, i, B)` of genus-zero pieces at `k`.
fn disjoint_cases(k: u32) -> Vec<(EmbeddedCurve, usize, EmbeddedCurve)> {
    let e = |c: MarkedCurve| embed(&c, k).unwrap();
    let two = piece(3, 2).graft(2, &piece(3, 3)).unwrap();
    let mut out = Vec::new();
    for (i, (s, t)) in [(0, 0), (1, 2), (3, 4)].into_iter().enumerate() {
        out.push((e(piece(3, s)), i + 1, e(piece(3, t))));
    }
    out.push((e(piece(3, 5)), 2, e(piece(4, 0))));
    out.push((e(piece(4, 1)), 4, e(piece(3, 2))));
    out.push((e(piece(4, 3)), 1, e(piece(4, 4))));
    out.push((e(piece(5, 0)), 3, e(piece(3, 1))));
    out.push((e(two.clone()), 1, e(piece(3, 0))));
    out.push((e(two.clone()), 4, e(piece(4, 2))));
    out.push((e(piece(3, 4)), 3, e(two.clone())));
    out.push((e(common::line_q(&[(1, 2), (-3, 4), (5, 3)])), 2, e(piece(3, 0))));
    out
}

/// Self-gluings `(E, i, j)` at `k = 5`.
fn self_cases() -> Vec<(EmbeddedCurve, usize, usize)> {
    let e = |c: MarkedCurve| embed(&c, 5).unwrap();
    vec![
        (e(piece(3, 0)), 1, 2),
        (e(piece(3, 1)), 2, 3),
        (e(piece(3, 2)), 3, 1),
        (e(piece(4, 0)), 1, 3),
        (e(piece(4, 3)), 2, 4),
        (e(piece(3, 0).graft(1, &piece(3, 1)).unwrap()), 1, 4),
    ]
}

/// Four-mark curves and a split of the labels into two pairs.
fn four_mark_cases() -> Vec<(EmbeddedCurve, (usize, usize), (usize, usize))> {
    let pairings = [((1, 2), (3, 4)), ((1, 3), (2, 4)), ((1, 4), (2, 3))];
    let mut curves: Vec<MarkedCurve> = (0..6).map(|s| piece(4, s)).collect();
    curves.push(piece(3, 0).graft(1, &piece(3, 1)).unwrap());
    curves.push(piece(3, 4).graft(3, &piece(3, 5)).unwrap());
    let mut out = Vec::new();
    for c in curves {
        let e = embed(&c, 5).unwrap();
        for (a, b) in pairings {
            out.push((e.clone(), a, b));
        }
    }
    out
}

/// Labels of pair `b` after pair `a` has been glued away.
fn after(n: usize, a: (usize, usize), b: (usize, usize)) -> (usize, usize) {
    let l = closing_labels(n, a.0, a.1);
    (l[b.0 - 1], l[b.1 - 1])
}

/// γ on the secant through the two mark images, and distinct from both.
fn secant_oracle(e: &EmbeddedCurve, i: usize, j: usize) -> Result<(), String> {
    let gamma = gluing_functional(e, i, j).map_err(err)?.covector;
    let (a, b) = (e.mark_image(i).map_err(err)?.clone(), e.mark_image(j).map_err(err)?.clone());
    let rank = Matrix::from_rows(gamma.len(), vec![a.clone(), b.clone(), gamma.clone()]).map_err(err)?.rank();
    ensure(rank == 2, || format!("rank {rank} for marks {i},{j}"))?;
    ensure(!projectively_equal(&gamma, &a) && !projectively_equal(&gamma, &b), || format!("γ hits an endpoint ({i},{j})"))
}

fn report_ok(r: &GluingReport) -> Result<(), String> {
    ensure(r.pass && r.in_theorem_range, || format!("failed checks {:?} {}", r.failures(), r.injectivity_certificate.witness))?;
    ensure(r.method == Method::Elimination, || format!("method {:?}", r.method))
}

// ------------------------------------------------------------ criteria

fn criterion_1() -> Outcome {
    let mut count = 0;
    for c in glue_generated() {
        let (g, n) = (c.total_genus(), c.mark_count());
        ensure(c.is_connected() && g <= 2 && n <= 6, || format!("fixture out of range: g={g} n={n}"))?;
        for k in [1u32, 2, 5] {
            if k < c.min_k() {
                continue;
            }
            let dim = section_space(&c, k).map_err(err)?.dim() as i64;
            let expected = (2 * k as i64 - 1) * (g as i64 - 1) + k as i64 * n as i64;
            ensure((dim - expected).abs() <= TOLERANCE, || format!("g={g} n={n} k={k}: dim {dim} != {expected}"))?;
            count += 1;
        }
    }
    ensure(count >= MIN_DIMENSION_CONFIGS, || format!("only {count} configurations"))?;
    Ok(format!("{count} configurations, dim = (2k-1)(g-1)+kn exactly"))
}

fn criterion_2() -> Outcome {
    let mut count = 0;
    for c in glue_generated() {
        for k in [1u32, 2, 5] {
            if k < c.min_k() {
                continue;
            }
            let r = rr_check(&c, k).map_err(err)?;
            ensure(r.in_vanishing_range && r.pass, || format!("{r:?}"))?;
            count += 1;
        }
    }
    Ok(format!("{count} configurations, h0 = d - g + 1"))
}

fn worked_example() -> Result<(), String> {
    let e = embed(&piece(3, 0), 1).map_err(err)?;
    let u = EmbeddedCurve::disjoint_union(&e, &e).map_err(err)?;
    let gamma = gluing_functional(&u, 1, 4).map_err(err)?.covector;
    ensure(gamma == rationals(&[-1, 0, -1, 0]), || format!("γ = {gamma:?}"))?;
    let w = kernel(&Matrix::from_rows(4, vec![gamma]).map_err(err)?);
    let listed = Matrix::from_i64(&[&[0, 1, 0, 0], &[1, 0, -1, 0], &[0, 0, 0, 1]]);
    ensure(subspace_equal(&w, &Subspace::row_space(&listed)).map_err(err)?, || "listed basis spans another space".into())?;

    // coordinates in the listed basis order
    let at = |p| -> Result<Vec<_>, String> {
        let raw = listed.apply(&u.coordinates_at(u.curve().mark(p).map_err(err)?)).map_err(err)?;
        normalize_projective(&raw).ok_or_else(|| format!("base point at mark {p}"))
    };
    let (n1, n2) = (at(1)?, at(4)?);
    ensure(n1 == rationals(&[0, 1, 0]) && n2 == n1, || format!("node images {n1:?} {n2:?}"))?;
    let mut marks: Vec<_> = [2, 3, 5, 6].into_iter().map(at).collect::<Result<_, _>>()?;
    marks.sort();
    let mut expected: Vec<_> = [[1, -1, 0], [1, 1, 0], [0, 1, 1], [0, 1, -1]]
        .iter()
        .map(|v| normalize_projective(&rationals(v)).unwrap())
        .collect();
    expected.sort();
    ensure(marks == expected, || format!("mark images {marks:?}"))?;

    // in the canonical RREF basis the node sits at the first coordinate point
    let (out, report) = compose_verified(&e, 1, &e, &opts(), &CertOptions::default()).map_err(err)?;
    report_ok(&report)?;
    let (x, y) = &out.node_images()[0];
    ensure(x == y && x == &rationals(&[1, 0, 0]), || format!("canonical node {x:?}"))
}

fn criterion_3() -> Outcome {
    let cert = CertOptions::default();
    let mut disjoint = 0;
    for k in [1, 2] {
        for (a, i, b) in disjoint_cases(k) {
            let (_, r) = compose_verified(&a, i, &b, &opts(), &cert).map_err(err)?;
            report_ok(&r).map_err(|m| format!("k={k} ∘_{i}: {m}"))?;
            disjoint += 1;
        }
    }
    let mut selfs = 0;
    for (e, i, j) in self_cases() {
        let (_, r) = self_glue_verified(&e, i, j, &opts(), &cert).map_err(err)?;
        report_ok(&r).map_err(|m| format!("ξ_{i}{j}: {m}"))?;
        selfs += 1;
    }
    ensure(disjoint >= MIN_DISJOINT_GLUINGS && selfs >= MIN_SELF_GLUINGS, || format!("{disjoint} disjoint, {selfs} self"))?;
    worked_example()?;
    Ok(format!("{disjoint} disjoint (k=1,2) and {selfs} self (k=5) gluings by elimination, worked example exact"))
}

fn criterion_4() -> Outcome {
    let cert = CertOptions::default();
    let mut count = 0;
    for k in [1, 2] {
        for (a, i, b) in disjoint_cases(k) {
            let m = a.curve().mark_count();
            let u = EmbeddedCurve::disjoint_union(&a, &b).map_err(err)?;
            secant_oracle(&u, i, m + 1)?;
            let (_, r) = compose_verified(&a, i, &b, &opts(), &cert).map_err(err)?;
            ensure(r.gamma_on_secant.pass && r.gamma_distinct.pass, || format!("report disagrees at k={k} ∘_{i}"))?;
            count += 1;
        }
    }
    for (e, i, j) in self_cases() {
        secant_oracle(&e, i, j)?;
        count += 1;
    }
    for (e, a, b) in four_mark_cases() {
        secant_oracle(&e, a.0, a.1)?;
        secant_oracle(&e, b.0, b.1)?;
        let once = self_glue(&e, a.0, a.1, &opts()).map_err(err)?;
        let (i, j) = after(4, a, b);
        secant_oracle(&once, i, j)?;
        count += 3;
    }
    Ok(format!("{count}/{count} secant points on the secant and off both endpoints"))
}

fn criterion_5() -> Outcome {
    let mut count = 0;
    for (e, a, b) in four_mark_cases() {
        let n = e.curve().mark_count();
        let first = self_glue(&e, a.0, a.1, &opts()).map_err(err)?;
        let (i, j) = after(n, a, b);
        let ab = self_glue(&first, i, j, &opts()).map_err(err)?;
        let second = self_glue(&e, b.0, b.1, &opts()).map_err(err)?;
        let (i, j) = after(n, b, a);
        let ba = self_glue(&second, i, j, &opts()).map_err(err)?;
        let line = project_from_line(&e, a, b, &opts()).map_err(err)?;
        let line_rev = project_from_line(&e, b, a, &opts()).map_err(err)?;
        let js = |x: &EmbeddedCurve| serde_json::to_string(x).unwrap();
        ensure(js(&ab) == js(&ba), || format!("orders differ for {a:?} {b:?}"))?;
        ensure(js(&ab) == js(&line) && js(&line) == js(&line_rev), || format!("line projection differs for {a:?} {b:?}"))?;

        // sections descending to both gluings, intersected in either order
        let fa = gluing_functional(&e, a.0, a.1).map_err(err)?.covector;
        let fb = gluing_functional(&e, b.0, b.1).map_err(err)?.covector;
        let ka = kernel(&Matrix::from_rows(fa.len(), vec![fa.clone()]).map_err(err)?);
        let kb = kernel(&Matrix::from_rows(fb.len(), vec![fb.clone()]).map_err(err)?);
        let both = kernel(&Matrix::from_rows(fa.len(), vec![fa, fb]).map_err(err)?);
        let x = ka.intersection(&kb).map_err(err)?;
        let y = kb.intersection(&ka).map_err(err)?;
        ensure(x == y && x == both && x.dim() + 2 == e.ambient_dim() + 1, || "kernel intersections disagree".into())?;
        count += 1;
    }
    ensure(count >= MIN_FOUR_MARK_CONFIGS, || format!("only {count} configurations"))?;
    Ok(format!("{count} four-mark configurations byte-identical in both orders and via the line"))
}

fn criterion_6() -> Outcome {
    let cap = 3;
    let mut oracle_checks = 0;
    for m in 1..=cap {
        for n in 1..=cap {
            for pi in Permutation::all(m) {
                for rho in Permutation::all(n) {
                    for i in 1..=m {
                        let got = compose_block(&pi, i, &rho).map_err(err)?;
                        ensure(got == block_oracle(&pi, i, &rho), || format!("{pi:?} ∘_{i} {rho:?}"))?;
                        oracle_checks += 1;
                    }
                }
            }
        }
    }
    // the associativity laws again, evaluated purely on the oracle
    for l in 1..=cap {
        for m in 1..=cap {
            for n in 1..=cap {
                for x in Permutation::all(l) {
                    for y in Permutation::all(m) {
                        for z in Permutation::all(n) {
                            for i in 1..=l {
                                for j in i + 1..=l {
                                    let lhs = block_oracle(&block_oracle(&x, i, &y), j + m - 1, &z);
                                    ensure(lhs == block_oracle(&block_oracle(&x, j, &z), i, &y), || "oracle opass1".into())?;
                                }
                                for j in 1..=m {
                                    let lhs = block_oracle(&block_oracle(&x, i, &y), i + j - 1, &z);
                                    ensure(lhs == block_oracle(&x, i, &block_oracle(&y, j, &z)), || "oracle opass2".into())?;
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    let perm = run_permutation(cap);
    let perm_checked: usize = perm.iter().map(|a| a.checked).sum();
    ensure(perm.iter().all(|a| a.failed == 0 && a.checked > 0), || format!("{perm:?}"))?;

    let cfg = AxiomRunConfig { instance: InstanceKind::Dualgraph, cases: DUALGRAPH_CASES, seed: SEED, caps: Caps::default() };
    let graphs = run_axioms(&cfg).map_err(err)?;
    ensure(graphs.pass && graphs.axioms.len() == 9, || format!("dualgraph: {:?}", graphs.axioms))?;
    ensure(graphs.axioms.iter().all(|a| !a.skipped && a.checked > 0), || "dualgraph axiom skipped".into())?;

    let mut geometric = 0;
    for (k, cases) in [(1u32, 40usize), (5, 16)] {
        let res = run_instance(&CurveInstance { k }, cases, SEED, 5);
        ensure(res.iter().all(|a| a.failed == 0), || format!("geometric k={k}: {res:?}"))?;
        let want_modular = k >= 5;
        ensure(res.iter().all(|a| !a.skipped || (!want_modular && a.axiom.starts_with("mod"))), || format!("k={k} skipped"))?;
        geometric += res.iter().map(|a| a.checked).sum::<usize>();
    }
    Ok(format!(
        "permutations {perm_checked} checks + {oracle_checks} oracle compositions; dual graphs {DUALGRAPH_CASES} cases x 9 axioms; geometric {geometric} checks"
    ))
}

fn criterion_7() -> Outcome {
    let mut count = 0;
    for k in [1, 2] {
        for (a, i, b) in disjoint_cases(k) {
            let out = compose(&a, i, &b, &opts()).map_err(err)?;
            let expected = a.curve().graft(i, b.curve()).map_err(err)?;
            ensure(out.forget() == expected, || format!("graft square fails at k={k} ∘_{i}"))?;
            count += 1;
        }
    }
    for (e, i, j) in self_cases() {
        let out = self_glue(&e, i, j, &opts()).map_err(err)?;
        let expected = e.curve().glue_marks(i, j).map_err(err)?;
        ensure(out.forget() == expected, || format!("contraction square fails at ξ_{i}{j}"))?;
        count += 1;
    }
    Ok(format!("{count} squares commute"))
}

fn criterion_8() -> Outcome {
    let t = |g, n, p| ComponentType::new(g, n, p).unwrap();
    let rows = min_k_report(&[t(0, 3, 0), t(1, 1, 0), t(0, 0, 3)]);
    let got: Vec<(u32, bool)> = rows.iter().map(|r| (r.min_k, r.flagged)).collect();
    ensure(got == vec![(3, false), (5, false), (6, true)], || format!("{got:?}"))?;
    let mut types = 0;
    for g in 0..=3u32 {
        for n in 0..=5u32 {
            for p in 0..=5 - n {
                let Ok(ty) = ComponentType::new(g, n, p) else { continue };
                types += 1;
                let mut held = false;
                for k in 1..=MIN_K_MAX_K {
                    let (a, b) = secant_conditions(&ty, k);
                    let now = a && b;
                    ensure(!held || now, || format!("{ty:?} not monotone at k={k}"))?;
                    held = now;
                }
                // smallest k with k(2g-2+n+p) >= 2g+3+p
                let (num, den) = (2 * g + 3 + p, 2 * g + n + p - 2);
                let oracle = num.div_ceil(den).max(1);
                ensure(min_k(&ty) == oracle, || format!("{ty:?}: {} vs {oracle}", min_k(&ty)))?;
            }
        }
    }
    Ok(format!("(0,3,0)=3 (1,1,0)=5 (0,0,3)=6 flagged; monotone over {types} types for k<={MIN_K_MAX_K}"))
}

fn run_once() -> Result<String, String> {
    let e = embed(&piece(3, 0), 1).map_err(err)?;
    let (out, report) = compose_verified(&e, 1, &e, &opts(), &CertOptions::default()).map_err(err)?;
    let q5 = embed(&piece(4, 1), 5).map_err(err)?;
    let (sg, sr) = self_glue_verified(&q5, 1, 3, &opts(), &CertOptions::default()).map_err(err)?;
    let cfg = AxiomRunConfig { instance: InstanceKind::Dualgraph, cases: 100, seed: SEED, caps: Caps::default() };
    let axioms = run_axioms(&cfg).map_err(err)?;
    let geo = run_instance(&CurveInstance { k: 1 }, 5, SEED, 5);
    Ok(serde_json::to_string(&serde_json::json!([out, report, sg, sr, axioms, geo])).map_err(err)?)
}

fn criterion_9() -> Outcome {
    let (a, b) = (run_once()?, run_once()?);
    ensure(a == b, || "outputs differ between runs".into())?;
    Ok(format!("two runs, {} identical bytes", a.len()))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 9] = [
        ("dimension formula sweep", criterion_1),
        ("Riemann-Roch", criterion_2),
        ("gluing correctness", criterion_3),
        ("gamma on secant", criterion_4),
        ("associativity", criterion_5),
        ("axiom suites", criterion_6),
        ("forgetful squares", criterion_7),
        ("min-k report", criterion_8),
        ("determinism", criterion_9),
    ];
    let mut failed = 0;
    for (n, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
            let msg = p.downcast_ref::<String>().cloned().or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()));
            Err(format!("panic: {}", msg.unwrap_or_default()))
        });
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {}: PASS: {name}: {detail} ({secs:.1}s)", n + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {}: FAIL: {name}: {detail} ({secs:.1}s)", n + 1);
            }
        }
    }
    println!("acceptance: {} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
