//! Exact certificates that an embedded curve is injective away from its
//! nodes and immersed everywhere.

use std::collections::HashMap;
use std::sync::atomic::{AtomicBool, Ordering};
use std::sync::Arc;

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::curves::{EmbeddedCurve, Point};
use crate::error::{Error, Result};
use crate::exactla::{format_rational, normalize_projective, q, qf, Matrix, Rational};
use crate::modular::{gcd_degree_bound, resultant_t_crt};
use crate::poly::{BiPoly, UniPoly};

/// Components above this parametrization degree skip elimination.
pub const DEFAULT_DEGREE_CAP: usize = 24;

/// Minimum number of parameter pairs compared by the sampling fallback.
pub const MIN_SAMPLE_PAIRS: usize = 1000;

/// Cooperative cancellation flag shared between a driver and workers.
#[derive(Clone, Default, Debug)]
pub struct CancelToken(Arc<AtomicBool>);

impl CancelToken {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn cancel(&self) {
        self.0.store(true, Ordering::SeqCst);
    }

    pub fn is_cancelled(&self) -> bool {
        self.0.load(Ordering::SeqCst)
    }

    pub fn check(&self) -> Result<()> {
        if self.is_cancelled() { Err(Error::Cancelled) } else { Ok(()) }
    }
}

#[derive(Clone, Debug)]
pub struct CertOptions {
    pub degree_cap: usize,
    pub cancel: CancelToken,
    pub seed: u64,
}

impl Default for CertOptions {
    fn default() -> Self {
        CertOptions { degree_cap: DEFAULT_DEGREE_CAP, cancel: CancelToken::new(), seed: 0 }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Elimination,
    Sampling,
}

#[derive(Clone, PartialEq, Debug)]
pub struct Certificate {
    pub pass: bool,
    pub method: Method,
    pub witness: Value,
}

fn fmt_vec(v: &[Rational]) -> Vec<String> {
    v.iter().map(format_rational).collect()
}

fn fmt_poly(p: &UniPoly) -> Vec<String> {
    fmt_vec(p.coeffs())
}

fn gcd_all<'a>(polys: impl IntoIterator<Item = &'a UniPoly>) -> UniPoly {
    polys.into_iter().fold(UniPoly::zero(), |g, p| g.gcd(p))
}

fn top_coefficients(par: &[UniPoly], d: usize) -> Vec<Rational> {
    par.iter().map(|f| f.coeff(d)).collect()
}

fn cross_minors(f: &[UniPoly], v: &[Rational]) -> Vec<UniPoly> {
    let mut out = Vec::new();
    for i in 0..f.len() {
        for j in i + 1..f.len() {
            out.push(f[i].scale(&v[j]).sub(&f[j].scale(&v[i])));
        }
    }
    out
}

/// Rank of `[Φ(t0); Φ'(t0)]` is two at every point of each component,
/// including infinity, and no coordinate system has a base point.
pub fn immersion(e: &EmbeddedCurve) -> (bool, Value) {
    let mut pass = true;
    let mut comps = Vec::new();
    for a in 0..e.curve().components() {
        let par = e.parametrization(a);
        let d = e.component_degree(a);
        let base = gcd_all(&par);
        let base_free = base.is_constant() && !base.is_zero();
        let top = top_coefficients(&par, d);
        let finite_at_infinity = top.iter().any(|x| !x.is_zero());
        let deriv: Vec<UniPoly> = par.iter().map(UniPoly::derivative).collect();
        let mut wr = Vec::new();
        for i in 0..par.len() {
            for j in i + 1..par.len() {
                wr.push(deriv[i].mul(&par[j]).sub(&par[i].mul(&deriv[j])));
            }
        }
        let w = gcd_all(&wr);
        let wronskian_ok = w.is_constant() && !w.is_zero();
        let next: Vec<Rational> = par.iter().map(|f| if d == 0 { Rational::zero() } else { f.coeff(d - 1) }).collect();
        let infinity_ok = Matrix::from_rows(par.len(), vec![top.clone(), next]).map(|m| m.rank() == 2).unwrap_or(false);
        let mut special = Vec::new();
        for t0 in e.curve().special_points(a) {
            let r = Matrix::from_rows(
                par.len(),
                vec![par.iter().map(|f| f.eval(&t0)).collect(), deriv.iter().map(|f| f.eval(&t0)).collect()],
            )
            .map(|m| m.rank())
            .unwrap_or(0);
            special.push(json!({"t": format_rational(&t0), "rank": r}));
            pass &= r == 2;
        }
        let ok = base_free && finite_at_infinity && wronskian_ok && infinity_ok;
        pass &= ok;
        comps.push(json!({
            "component": a,
            "base_point_free": base_free && finite_at_infinity,
            "wronskian_gcd": fmt_poly(&w),
            "rank_at_infinity": if infinity_ok { 2 } else { 1 },
            "special_points": special,
        }));
    }
    (pass, Value::Array(comps))
}

/// Intended identifications `(s0, t0)` between component `a` (in `s`) and
/// component `b` (in `t`).
fn intended_pairs(e: &EmbeddedCurve, a: usize, b: usize) -> Vec<(Rational, Rational)> {
    let mut out = Vec::new();
    for (x, y) in e.curve().nodes() {
        if x.comp == a && y.comp == b {
            out.push((x.param.clone(), y.param.clone()));
        }
        if y.comp == a && x.comp == b {
            out.push((y.param.clone(), x.param.clone()));
        }
    }
    out.sort();
    out.dedup();
    out
}

enum PairOutcome {
    Pass(Value),
    Fail(Value),
}

/// Random positive integer combination, redrawn if it cancels to zero.
fn random_combination(polys: &[BiPoly], rng: &mut ChaCha8Rng) -> BiPoly {
    for _ in 0..16 {
        let c = polys.iter().fold(BiPoly::zero(), |acc, p| acc.add(&p.scale(&q(rng.gen_range(1..=9)))));
        if !c.is_zero() {
            return c;
        }
    }
    polys[rng.gen_range(0..polys.len())].clone()
}

fn eliminate_pair(e: &EmbeddedCurve, a: usize, b: usize, opts: &CertOptions) -> Result<PairOutcome> {
    let fa = e.parametrization(a);
    let fb = e.parametrization(b);
    let mut minors = Vec::new();
    for i in 0..fa.len() {
        for j in i + 1..fa.len() {
            let m = BiPoly::product(&fa[i], &fb[j]).sub(&BiPoly::product(&fa[j], &fb[i]));
            if !m.is_zero() {
                minors.push(m);
            }
        }
    }
    let tag = json!([a, b]);
    if minors.is_empty() {
        return Ok(PairOutcome::Fail(json!({"pair": tag, "reason": "all minors vanish identically"})));
    }
    // A shared factor of all minors would make every eliminant vanish, so a
    // nonzero eliminant below also rules out positive-dimensional coincidences.
    let polys: Vec<BiPoly> = if a == b {
        minors.iter().map(|m| m.div_diagonal().expect("antisymmetric minors")).collect()
    } else {
        minors
    };

    let intended = intended_pairs(e, a, b);
    let mut s_values: Vec<Rational> = intended.iter().map(|(s, _)| s.clone()).collect();
    s_values.dedup();

    // Every common zero lies over a root of each eliminant Res_t(L1, Lr).
    // After removing the node parameters, a constant gcd (bounded mod p)
    // leaves no room for further coincidences.
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed ^ ((a as u64) << 32 | b as u64));
    let l1 = random_combination(&polys, &mut rng);
    let mut eliminants = Vec::new();
    let mut residual = None;
    for _ in 0..6 {
        opts.cancel.check()?;
        let r = resultant_t_crt(&l1, &random_combination(&polys, &mut rng));
        if r.is_zero() {
            continue;
        }
        eliminants.push(r.strip_roots(&s_values));
        if eliminants.len() >= 2 {
            residual = gcd_degree_bound(&eliminants);
            if residual == Some(0) {
                break;
            }
        }
    }
    if residual != Some(0) {
        return Ok(PairOutcome::Fail(json!({
            "pair": tag,
            "reason": if eliminants.is_empty() { "eliminant vanished" } else { "eliminants share roots off the node parameters" },
            "residual_degree": residual,
        })));
    }

    let mut fibres = Vec::new();
    for s0 in &s_values {
        let g_t = polys.iter().fold(UniPoly::zero(), |g, p| g.gcd(&p.eval_s(s0)));
        let expected = intended
            .iter()
            .filter(|(s, _)| s == s0)
            .fold(UniPoly::one(), |acc, (_, t0)| acc.mul(&UniPoly::linear_root(t0)));
        let ok = !g_t.is_zero() && g_t.squarefree() == expected.monic();
        fibres.push(json!({
            "s": format_rational(s0),
            "partners": intended.iter().filter(|(s, _)| s == s0).map(|(_, t)| format_rational(t)).collect::<Vec<_>>(),
            "common_factor": fmt_poly(&g_t),
        }));
        if !ok {
            return Ok(PairOutcome::Fail(json!({"pair": tag, "reason": "unexpected common zero over a node", "fibres": fibres})));
        }
    }

    // Charts at infinity: no special point lies there, so nothing may coincide.
    let infinity_ok = |f: &[UniPoly], v: &[Rational]| {
        let m = gcd_all(&cross_minors(f, v));
        m.is_constant() && !m.is_zero()
    };
    let va = top_coefficients(&fa, e.component_degree(a));
    let vb = top_coefficients(&fb, e.component_degree(b));
    let mut charts = infinity_ok(&fa, &vb);
    if a != b {
        charts &= infinity_ok(&fb, &va);
        charts &= Matrix::from_rows(va.len(), vec![va.clone(), vb.clone()]).map(|m| m.rank() == 2).unwrap_or(false);
    }
    if !charts {
        return Ok(PairOutcome::Fail(json!({"pair": tag, "reason": "points at infinity coincide"})));
    }
    Ok(PairOutcome::Pass(json!({"pair": tag, "method": "elimination", "eliminant_degrees": eliminants.iter().map(UniPoly::degree).collect::<Vec<_>>(), "fibres": fibres})))
}

/// Distinct points of the curve have distinct images unless they are the two
/// branches of a node.
pub fn injectivity(e: &EmbeddedCurve, opts: &CertOptions) -> Result<Certificate> {
    let nc = e.curve().components();
    let too_big = (0..nc).any(|a| e.component_degree(a) > opts.degree_cap);
    if too_big {
        let (pass, witness) = sample_injectivity(e, opts)?;
        return Ok(Certificate { pass, method: Method::Sampling, witness });
    }
    let mut pairs = Vec::new();
    for a in 0..nc {
        for b in a..nc {
            opts.cancel.check()?;
            match eliminate_pair(e, a, b, opts)? {
                PairOutcome::Pass(w) => pairs.push(w),
                PairOutcome::Fail(w) => return Ok(Certificate { pass: false, method: Method::Elimination, witness: w }),
            }
        }
    }
    Ok(Certificate { pass: true, method: Method::Elimination, witness: Value::Array(pairs) })
}

/// Rational sample parameters avoiding `avoid`, deterministic in `count`.
fn sample_params(count: usize, avoid: &[Rational]) -> Vec<Rational> {
    let mut out = Vec::with_capacity(count);
    let mut den = 1i64;
    'outer: loop {
        for num in 0..=(4 * den) {
            for sign in [1i64, -1] {
                if num == 0 && sign < 0 {
                    continue;
                }
                let x = qf(sign * num, den + 6);
                if !avoid.contains(&x) && !out.contains(&x) {
                    out.push(x);
                    if out.len() == count {
                        break 'outer;
                    }
                }
            }
        }
        den += 1;
    }
    out
}

fn sample_injectivity(e: &EmbeddedCurve, opts: &CertOptions) -> Result<(bool, Value)> {
    let nc = e.curve().components();
    let mut per = 8;
    while (per * nc) * (per * nc - 1) / 2 < MIN_SAMPLE_PAIRS {
        per += 1;
    }
    let mut class: HashMap<Point, usize> = HashMap::new();
    for (idx, (x, y)) in e.curve().nodes().iter().enumerate() {
        class.insert(x.clone(), idx);
        class.insert(y.clone(), idx);
    }
    let mut seen: HashMap<Vec<Rational>, Point> = HashMap::new();
    let mut points = 0usize;
    for a in 0..nc {
        let special = e.curve().special_points(a);
        let mut pts: Vec<Rational> = sample_params(per, &special);
        pts.extend(special);
        for t in pts {
            opts.cancel.check()?;
            let p = Point::new(a, t);
            points += 1;
            let Some(img) = normalize_projective(&e.coordinates_at(&p)) else {
                return Ok((false, json!({"base_point": [a, format_rational(&p.param)]})));
            };
            if let Some(prev) = seen.get(&img) {
                let same_node = class.contains_key(prev) && class.get(prev) == class.get(&p);
                if !same_node {
                    return Ok((false, json!({
                        "collision": [[prev.comp, format_rational(&prev.param)], [a, format_rational(&p.param)]],
                        "image": fmt_vec(&img),
                    })));
                }
            } else {
                seen.insert(img, p);
            }
        }
    }
    Ok((true, json!({"points": points, "pairs": points * (points - 1) / 2})))
}
