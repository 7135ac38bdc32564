//! Riemann–Roch and secant-criterion checks, and a harness that runs the
//! operad axioms on the permutation, dual-graph and embedded-curve instances.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::curves::{degree_total, embed, section_space, EmbeddedCurve, MarkedCurve, Point};
use crate::dualgraph::{is_stable, random_graph, CanonicalGraph, DualGraph, DEFAULT_VERTEX_CAP};
use crate::error::{Error, Result};
use crate::exactla::q;
use crate::gluing::{compose, self_glue, GlueOptions};
use crate::permops::{compose_block, restrict_excluding, tau, Permutation};

/// Local type of a component: genus, marks, node branches.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize, PartialOrd, Ord)]
pub struct ComponentType {
    pub g: u32,
    pub n: u32,
    pub p: u32,
}

impl ComponentType {
    pub fn new(g: u32, n: u32, p: u32) -> Result<Self> {
        let t = ComponentType { g, n, p };
        t.validate()?;
        Ok(t)
    }

    pub fn validate(&self) -> Result<()> {
        if 2 * self.g + self.n + self.p < 3 {
            return Err(Error::validation(format!(
                "component type ({}, {}, {}) is unstable: need 2g - 2 + n + p >= 1",
                self.g, self.n, self.p
            )));
        }
        Ok(())
    }

    /// `k (2g - 2 + n + p)`.
    pub fn degree(&self, k: u32) -> u64 {
        k as u64 * (2 * self.g + self.n + self.p - 2) as u64
    }
}

/// `(d >= 2g + 2 + p, d >= 2g + 3 + p)` with `d` the component degree.
pub fn secant_conditions(t: &ComponentType, k: u32) -> (bool, bool) {
    let d = t.degree(k);
    let base = (2 * t.g + t.p) as u64;
    (d >= base + 2, d >= base + 3)
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct MinKRow {
    #[serde(rename = "type")]
    pub ty: ComponentType,
    pub min_k: u32,
    /// Minimum exceeds five.
    pub flagged: bool,
}

pub fn min_k(t: &ComponentType) -> u32 {
    (1..).find(|&k| secant_conditions(t, k) == (true, true)).expect("degree grows with k")
}

pub fn min_k_report(types: &[ComponentType]) -> Vec<MinKRow> {
    types
        .iter()
        .map(|t| {
            let k = min_k(t);
            MinKRow { ty: *t, min_k: k, flagged: k > 5 }
        })
        .collect()
}

pub fn stability_check(g: u32, n: usize) -> bool {
    is_stable(g, n)
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct RrReport {
    pub g: u32,
    pub n: usize,
    pub k: u32,
    pub in_vanishing_range: bool,
    pub degree: Option<usize>,
    /// `degree - g + 1`.
    pub expected: Option<usize>,
    pub dimension: Option<usize>,
    pub pass: bool,
}

/// `h^0 = d - g + 1` whenever `h^1` vanishes on every component.
pub fn rr_check(c: &MarkedCurve, k: u32) -> Result<RrReport> {
    let g = c.total_genus();
    let n = c.mark_count();
    let in_range = k >= 1 && k >= c.min_k();
    if !in_range {
        return Ok(RrReport { g, n, k, in_vanishing_range: false, degree: None, expected: None, dimension: None, pass: false });
    }
    let d = degree_total(g, n, k)?;
    let dim = section_space(c, k)?.dim();
    let expected = d + 1 - g as usize;
    Ok(RrReport {
        g,
        n,
        k,
        in_vanishing_range: true,
        degree: Some(d),
        expected: Some(expected),
        dimension: Some(dim),
        pass: dim == expected,
    })
}

// ---------------------------------------------------------------- harness

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum InstanceKind {
    Permutation,
    Dualgraph,
    Geometric,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Caps {
    /// Permutation instance: largest `m`, `n`, `ℓ`.
    #[serde(default = "default_arity")]
    pub max_arity: usize,
    /// Largest leg count of a sampled input.
    #[serde(default = "default_legs")]
    pub max_legs: usize,
    #[serde(default = "default_vertices")]
    pub max_vertices: usize,
    #[serde(default = "default_genus")]
    pub max_genus: u32,
    /// Geometric instance: the power of the log-canonical bundle.
    #[serde(default = "default_k")]
    pub k: u32,
}

fn default_arity() -> usize {
    3
}
fn default_legs() -> usize {
    5
}
fn default_vertices() -> usize {
    3
}
fn default_genus() -> u32 {
    1
}
fn default_k() -> u32 {
    1
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            max_arity: default_arity(),
            max_legs: default_legs(),
            max_vertices: default_vertices(),
            max_genus: default_genus(),
            k: default_k(),
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AxiomRunConfig {
    pub instance: InstanceKind,
    #[serde(default = "default_cases")]
    pub cases: usize,
    #[serde(default)]
    pub seed: u64,
    #[serde(default)]
    pub caps: Caps,
}

fn default_cases() -> usize {
    100
}

impl AxiomRunConfig {
    pub fn validate(&self) -> Result<()> {
        let c = &self.caps;
        if self.cases == 0 || c.max_arity == 0 || c.max_legs == 0 || c.max_vertices == 0 || c.k == 0 {
            return Err(Error::validation("cases and caps must be positive"));
        }
        match self.instance {
            InstanceKind::Geometric if c.max_legs < 4 => {
                Err(Error::validation("geometric instance needs max_legs >= 4"))
            }
            InstanceKind::Dualgraph if c.max_legs < 3 => Err(Error::validation("dualgraph instance needs max_legs >= 3")),
            _ => Ok(()),
        }
    }
}

/// Outcome of one axiom over all its cases.
#[derive(Clone, PartialEq, Debug, Serialize)]
pub struct AxiomResult {
    pub axiom: String,
    pub checked: usize,
    pub failed: usize,
    pub skipped: bool,
    /// Smallest failing case: fewest total legs, then lowest case id.
    pub witness: Option<Value>,
}

#[derive(Clone, PartialEq, Debug, Serialize)]
pub struct AxiomReport {
    pub instance: InstanceKind,
    pub seed: u64,
    pub cases: usize,
    pub pass: bool,
    pub axioms: Vec<AxiomResult>,
}

/// Operations shared by the cyclic/modular instances, labels `1..=legs`.
/// `compose(x, i, y)` glues leg `i` of `x` to leg 1 of `y`.
pub trait Instance {
    type Elem: Clone;
    type Key: PartialEq;

    fn min_legs(&self) -> usize;
    fn sample(&self, rng: &mut ChaCha8Rng, legs: usize) -> Result<Self::Elem>;
    fn legs(&self, x: &Self::Elem) -> usize;
    fn compose(&self, x: &Self::Elem, i: usize, y: &Self::Elem) -> Result<Self::Elem>;
    fn contract(&self, x: &Self::Elem, i: usize, j: usize) -> Result<Self::Elem>;
    fn relabel(&self, x: &Self::Elem, rho: &Permutation) -> Result<Self::Elem>;
    fn key(&self, x: &Self::Elem) -> Result<Self::Key>;
    fn describe(&self, x: &Self::Elem) -> Value;
    fn has_contraction(&self) -> bool;
}

pub struct GraphInstance {
    pub max_vertices: usize,
    pub max_genus: u32,
}

impl Instance for GraphInstance {
    type Elem = DualGraph;
    type Key = CanonicalGraph;

    fn min_legs(&self) -> usize {
        if self.max_genus == 0 { 3 } else { 1 }
    }

    fn sample(&self, rng: &mut ChaCha8Rng, legs: usize) -> Result<DualGraph> {
        Ok(random_graph(rng, legs, self.max_vertices, self.max_genus))
    }

    fn legs(&self, x: &DualGraph) -> usize {
        x.leg_count()
    }

    fn compose(&self, x: &DualGraph, i: usize, y: &DualGraph) -> Result<DualGraph> {
        x.graft(i, y)
    }

    fn contract(&self, x: &DualGraph, i: usize, j: usize) -> Result<DualGraph> {
        x.contract(i, j)
    }

    fn relabel(&self, x: &DualGraph, rho: &Permutation) -> Result<DualGraph> {
        x.relabel(rho)
    }

    fn key(&self, x: &DualGraph) -> Result<CanonicalGraph> {
        // triples of sampled graphs are the largest composites compared
        x.canonical_form_with_cap(DEFAULT_VERTEX_CAP.max(3 * self.max_vertices))
    }

    fn describe(&self, x: &DualGraph) -> Value {
        serde_json::to_value(x).unwrap_or(Value::Null)
    }

    fn has_contraction(&self) -> bool {
        true
    }
}

/// Genus-zero curves with one or two components, embedded at a fixed `k`.
pub struct CurveInstance {
    pub k: u32,
}

impl CurveInstance {
    fn random_curve(rng: &mut ChaCha8Rng, legs: usize) -> Result<MarkedCurve> {
        let params = |rng: &mut ChaCha8Rng, count: usize| {
            let mut pool: Vec<i64> = (-4..=4).collect();
            pool.shuffle(rng);
            pool.truncate(count);
            pool
        };
        let mut order: Vec<usize> = (0..legs).collect();
        order.shuffle(rng);
        let two = legs >= 4 && rng.gen_bool(0.5);
        let mut marks = vec![Point::new(0, q(0)); legs];
        if two {
            let on_first = rng.gen_range(2..=legs - 2);
            let p0 = params(rng, on_first + 1);
            let p1 = params(rng, legs - on_first + 1);
            for (slot, &l) in order.iter().enumerate() {
                marks[l] = if slot < on_first {
                    Point::new(0, q(p0[slot]))
                } else {
                    Point::new(1, q(p1[slot - on_first]))
                };
            }
            let node = (Point::new(0, q(p0[on_first])), Point::new(1, q(p1[legs - on_first])));
            MarkedCurve::new(2, vec![node], marks)
        } else {
            let p = params(rng, legs);
            for (slot, &l) in order.iter().enumerate() {
                marks[l] = Point::new(0, q(p[slot]));
            }
            MarkedCurve::new(1, vec![], marks)
        }
    }
}

impl Instance for CurveInstance {
    type Elem = EmbeddedCurve;
    type Key = EmbeddedCurve;

    fn min_legs(&self) -> usize {
        3
    }

    fn sample(&self, rng: &mut ChaCha8Rng, legs: usize) -> Result<EmbeddedCurve> {
        embed(&Self::random_curve(rng, legs)?, self.k)
    }

    fn legs(&self, x: &EmbeddedCurve) -> usize {
        x.curve().mark_count()
    }

    fn compose(&self, x: &EmbeddedCurve, i: usize, y: &EmbeddedCurve) -> Result<EmbeddedCurve> {
        compose(x, i, y, &GlueOptions::default())
    }

    fn contract(&self, x: &EmbeddedCurve, i: usize, j: usize) -> Result<EmbeddedCurve> {
        self_glue(x, i, j, &GlueOptions::default())
    }

    fn relabel(&self, x: &EmbeddedCurve, rho: &Permutation) -> Result<EmbeddedCurve> {
        x.relabel(rho)?.canonical()
    }

    fn key(&self, x: &EmbeddedCurve) -> Result<EmbeddedCurve> {
        Ok(x.clone())
    }

    fn describe(&self, x: &EmbeddedCurve) -> Value {
        serde_json::to_value(x.curve()).unwrap_or(Value::Null)
    }

    fn has_contraction(&self) -> bool {
        self.k >= 5
    }
}

/// Operad-view action of `π ∈ S_m` on an element with legs `0..=m` stored
/// as `1..=m+1`: the output leg stays first.
pub fn operad_action(pi: &Permutation) -> Permutation {
    let mut v = vec![1];
    v.extend(pi.one_line().iter().map(|&x| x + 1));
    Permutation::new(v).expect("shifted permutation")
}

/// Case-level result: `Ok(true)` pass, `Ok(false)` fail, `Err` fail with message.
struct Case {
    id: usize,
    size: usize,
    inputs: Vec<Value>,
    params: Value,
    outcome: std::result::Result<bool, String>,
}

fn random_perm(rng: &mut ChaCha8Rng, n: usize) -> Permutation {
    let mut v: Vec<usize> = (1..=n).collect();
    v.shuffle(rng);
    Permutation::new(v).expect("shuffle is a permutation")
}

fn compare<I: Instance>(inst: &I, lhs: Result<I::Elem>, rhs: Result<I::Elem>) -> std::result::Result<bool, String> {
    let l = lhs.map_err(|e| format!("lhs: {e}"))?;
    let r = rhs.map_err(|e| format!("rhs: {e}"))?;
    Ok(inst.key(&l).map_err(|e| e.to_string())? == inst.key(&r).map_err(|e| e.to_string())?)
}

fn summarize(name: &str, cases: Vec<Case>) -> AxiomResult {
    let checked = cases.len();
    let mut failing: Vec<&Case> = cases.iter().filter(|c| c.outcome != Ok(true)).collect();
    failing.sort_by_key(|c| (c.size, c.id));
    let witness = failing.first().map(|c| {
        json!({
            "case": c.id,
            "inputs": c.inputs,
            "params": c.params,
            "error": c.outcome.as_ref().err(),
        })
    });
    AxiomResult { axiom: name.into(), checked, failed: failing.len(), skipped: false, witness }
}

fn skipped(name: &str) -> AxiomResult {
    AxiomResult { axiom: name.into(), checked: 0, failed: 0, skipped: true, witness: None }
}

pub const AXIOMS: [&str; 9] = ["opeq", "opass1", "opass2", "cyceq", "modeq", "modass1", "modass2", "modass3", "modass4"];

/// Runs every axiom on `cases` seeded cases per axiom.
pub fn run_instance<I: Instance>(inst: &I, cases: usize, seed: u64, max_legs: usize) -> Vec<AxiomResult> {
    let lo = inst.min_legs();
    let mut out = Vec::new();
    for (ax_idx, name) in AXIOMS.iter().enumerate() {
        let modular = name.starts_with("mod");
        if modular && !inst.has_contraction() {
            out.push(skipped(name));
            continue;
        }
        let mut results = Vec::with_capacity(cases);
        for id in 0..cases {
            let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_mul(0x9E37_79B9).wrapping_add((ax_idx as u64) << 40 | id as u64));
            let case = run_case(inst, name, id, &mut rng, lo, max_legs);
            results.push(case);
        }
        out.push(summarize(name, results));
    }
    out
}

fn run_case<I: Instance>(inst: &I, name: &str, id: usize, rng: &mut ChaCha8Rng, lo: usize, hi: usize) -> Case {
    let legs = |rng: &mut ChaCha8Rng, min: usize| rng.gen_range(lo.max(min)..=hi.max(lo.max(min)));
    let mut inputs = Vec::new();
    let mut size = 0;
    let sample = |rng: &mut ChaCha8Rng, n: usize, inputs: &mut Vec<Value>, size: &mut usize| {
        let x = inst.sample(rng, n);
        if let Ok(x) = &x {
            inputs.push(inst.describe(x));
            *size += n;
        }
        x
    };
    macro_rules! draw {
        ($n:expr) => {{
            let count = $n;
            match sample(rng, count, &mut inputs, &mut size) {
                Ok(x) => x,
                Err(e) => {
                    return Case { id, size, inputs, params: Value::Null, outcome: Err(format!("sampling: {e}")) };
                }
            }
        }};
    }
    let params;
    let outcome = match name {
        "opeq" => {
            let (lm, ln) = (legs(rng, 2), legs(rng, 2));
            let x = draw!(lm);
            let y = draw!(ln);
            let (m, n) = (lm - 1, ln - 1);
            let i = rng.gen_range(1..=m);
            let pi = random_perm(rng, m);
            let rho = random_perm(rng, n);
            params = json!({"i": i, "pi": pi.one_line(), "rho": rho.one_line()});
            let block = compose_block(&pi, i, &rho);
            let lhs = block.and_then(|b| inst.relabel(&inst.compose(&x, i + 1, &y)?, &operad_action(&b)));
            let rhs = (|| {
                let px = inst.relabel(&x, &operad_action(&pi))?;
                let ry = inst.relabel(&y, &operad_action(&rho))?;
                inst.compose(&px, pi.apply(i) + 1, &ry)
            })();
            compare(inst, lhs, rhs)
        }
        "opass1" => {
            let ll = legs(rng, 3);
            let (x, y, z) = (draw!(ll), draw!(legs(rng, 2)), draw!(legs(rng, 2)));
            let (l, m) = (ll - 1, inst.legs(&y) - 1);
            let i = rng.gen_range(1..l);
            let j = rng.gen_range(i + 1..=l);
            params = json!({"i": i, "j": j});
            let lhs = inst.compose(&x, i + 1, &y).and_then(|xy| inst.compose(&xy, j + m - 1 + 1, &z));
            let rhs = inst.compose(&x, j + 1, &z).and_then(|xz| inst.compose(&xz, i + 1, &y));
            compare(inst, lhs, rhs)
        }
        "opass2" => {
            let (x, y, z) = (draw!(legs(rng, 2)), draw!(legs(rng, 2)), draw!(legs(rng, 2)));
            let (l, m) = (inst.legs(&x) - 1, inst.legs(&y) - 1);
            let i = rng.gen_range(1..=l);
            let j = rng.gen_range(1..=m);
            params = json!({"i": i, "j": j});
            let lhs = inst.compose(&x, i + 1, &y).and_then(|xy| inst.compose(&xy, i + j - 1 + 1, &z));
            let rhs = inst.compose(&y, j + 1, &z).and_then(|yz| inst.compose(&x, i + 1, &yz));
            compare(inst, lhs, rhs)
        }
        "cyceq" => {
            let (x, y) = (draw!(legs(rng, 2)), draw!(legs(rng, 2)));
            let (m, n) = (inst.legs(&x) - 1, inst.legs(&y) - 1);
            params = json!({"m": m, "n": n});
            let lhs = inst.compose(&x, m + 1, &y).and_then(|xy| inst.relabel(&xy, &tau(m + n - 1).shifted()));
            let rhs = (|| {
                let ty = inst.relabel(&y, &tau(n).shifted())?;
                let tx = inst.relabel(&x, &tau(m).shifted())?;
                inst.compose(&ty, 2, &tx)
            })();
            compare(inst, lhs, rhs)
        }
        "modeq" => {
            let x = draw!(legs(rng, 3));
            let n = inst.legs(&x);
            let (i, j) = distinct_pair(rng, n);
            let rho = random_perm(rng, n);
            params = json!({"i": i, "j": j, "rho": rho.one_line()});
            let lhs = restrict_excluding(&rho, i, j).and_then(|r| inst.relabel(&inst.contract(&x, i, j)?, &r));
            let rhs = inst.relabel(&x, &rho).and_then(|rx| inst.contract(&rx, rho.apply(i), rho.apply(j)));
            compare(inst, lhs, rhs)
        }
        "modass1" => {
            let x = draw!(legs(rng, 5));
            let n = inst.legs(&x);
            let mut labels: Vec<usize> = (1..=n).collect();
            labels.shuffle(rng);
            let (i, j, k, l) = (labels[0], labels[1], labels[2], labels[3]);
            params = json!({"i": i, "j": j, "k": k, "l": l});
            let cu = |a: usize, b: usize, c: usize| crate::permops::close_up(a, b, c).expect("distinct labels");
            let lhs = inst.contract(&x, k, l).and_then(|y| inst.contract(&y, cu(k, l, i), cu(k, l, j)));
            let rhs = inst.contract(&x, i, j).and_then(|y| inst.contract(&y, cu(i, j, k), cu(i, j, l)));
            compare(inst, lhs, rhs)
        }
        "modass2" => {
            let (x, y) = (draw!(legs(rng, 4)), draw!(legs(rng, 2)));
            let m = inst.legs(&x);
            params = json!({"m": m});
            let lhs = inst.compose(&x, m, &y).and_then(|xy| inst.contract(&xy, 1, 2));
            let rhs = inst.contract(&x, 1, 2).and_then(|cx| inst.compose(&cx, m - 2, &y));
            compare(inst, lhs, rhs)
        }
        "modass3" => {
            let (x, y) = (draw!(legs(rng, 2)), draw!(legs(rng, 4)));
            let m = inst.legs(&x);
            params = json!({"m": m});
            let lhs = inst.compose(&x, m, &y).and_then(|xy| inst.contract(&xy, m, m + 1));
            let rhs = inst.contract(&y, 2, 3).and_then(|cy| inst.compose(&x, m, &cy));
            compare(inst, lhs, rhs)
        }
        "modass4" => {
            let (x, y) = (draw!(legs(rng, 3)), draw!(legs(rng, 3)));
            let (m, n) = (inst.legs(&x), inst.legs(&y));
            params = json!({"m": m, "n": n});
            let lhs = inst.compose(&x, m, &y).and_then(|xy| inst.contract(&xy, m - 1, m));
            let rhs = (|| {
                let ty = inst.relabel(&y, &tau(n - 1).shifted().inverse())?;
                let xy = inst.compose(&x, m - 1, &ty)?;
                inst.contract(&xy, m + n - 3, m + n - 2)
            })();
            compare(inst, lhs, rhs)
        }
        other => unreachable!("unknown axiom {other}"),
    };
    Case { id, size, inputs, params, outcome }
}

fn distinct_pair(rng: &mut ChaCha8Rng, n: usize) -> (usize, usize) {
    let i = rng.gen_range(1..=n);
    let mut j = rng.gen_range(1..n);
    if j >= i {
        j += 1;
    }
    (i, j)
}

/// Action of `π ∈ S_m` on the permutation instance `P(m) = S_m`.
pub fn permutation_action(pi: &Permutation, x: &Permutation) -> Permutation {
    x.compose(&pi.inverse()).expect("same length")
}

/// Exhaustive (opeq), (opass1), (opass2) for `P(m) = S_m`, `m, n, ℓ <= cap`.
pub fn run_permutation(cap: usize) -> Vec<AxiomResult> {
    let mut out = Vec::new();
    let cb = |a: &Permutation, i: usize, b: &Permutation| compose_block(a, i, b).map_err(|e| e.to_string());
    let mut record = |name: &str, cases: Vec<Case>| out.push(summarize(name, cases));
    let perms: Vec<Vec<Permutation>> = (0..=cap).map(Permutation::all).collect();

    let mut cases = Vec::new();
    for m in 1..=cap {
        for n in 1..=cap {
            for x in &perms[m] {
                for y in &perms[n] {
                    for pi in &perms[m] {
                        for rho in &perms[n] {
                            for i in 1..=m {
                                let outcome = (|| {
                                    let lhs = permutation_action(&cb(pi, i, rho)?, &cb(x, i, y)?);
                                    let rhs = cb(&permutation_action(pi, x), pi.apply(i), &permutation_action(rho, y))?;
                                    Ok(lhs == rhs)
                                })();
                                cases.push(perm_case(cases.len(), &[x, y], json!({"i": i, "pi": pi.one_line(), "rho": rho.one_line()}), outcome));
                            }
                        }
                    }
                }
            }
        }
    }
    record("opeq", cases);

    let mut one = Vec::new();
    let mut two = Vec::new();
    for l in 1..=cap {
        for m in 1..=cap {
            for n in 1..=cap {
                for x in &perms[l] {
                    for y in &perms[m] {
                        for z in &perms[n] {
                            for i in 1..=l {
                                for j in i + 1..=l {
                                    let outcome = (|| Ok(cb(&cb(x, i, y)?, j + m - 1, z)? == cb(&cb(x, j, z)?, i, y)?))();
                                    one.push(perm_case(one.len(), &[x, y, z], json!({"i": i, "j": j}), outcome));
                                }
                                for j in 1..=m {
                                    let outcome = (|| Ok(cb(&cb(x, i, y)?, i + j - 1, z)? == cb(x, i, &cb(y, j, z)?)?))();
                                    two.push(perm_case(two.len(), &[x, y, z], json!({"i": i, "j": j}), outcome));
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    record("opass1", one);
    record("opass2", two);
    out
}

fn perm_case(id: usize, inputs: &[&Permutation], params: Value, outcome: std::result::Result<bool, String>) -> Case {
    Case {
        id,
        size: inputs.iter().map(|p| p.len()).sum(),
        inputs: inputs.iter().map(|p| json!(p.one_line())).collect(),
        params,
        outcome,
    }
}

pub fn run_axioms(cfg: &AxiomRunConfig) -> Result<AxiomReport> {
    cfg.validate()?;
    let caps = &cfg.caps;
    let axioms = match cfg.instance {
        InstanceKind::Permutation => run_permutation(caps.max_arity),
        InstanceKind::Dualgraph => run_instance(
            &GraphInstance { max_vertices: caps.max_vertices, max_genus: caps.max_genus },
            cfg.cases,
            cfg.seed,
            caps.max_legs,
        ),
        InstanceKind::Geometric => run_instance(&CurveInstance { k: caps.k }, cfg.cases, cfg.seed, caps.max_legs),
    };
    let pass = axioms.iter().all(|a| a.failed == 0);
    Ok(AxiomReport { instance: cfg.instance, seed: cfg.seed, cases: cfg.cases, pass, axioms })
}
