//! Gluing of embedded curves: the secant point γ, projection from it,
//! operadic composition, self-gluing, and the report certifying that a
//! projection embeds the glued curve.

use num_traits::{One, Zero};
use serde::Serialize;
use serde_json::{json, Value};

use crate::certificate::{immersion, injectivity, CertOptions, Method};
use crate::curves::{
    closing_labels, graft_labels, matching_row, section_space, EmbeddedCurve, MarkedCurve, Point, SectionBasis,
};
use crate::error::{Error, Result};
use crate::exactla::{dot, format_rational, kernel, projectively_equal, Matrix, Rational, Subspace};

pub use crate::certificate::CancelToken;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GluingFunctional {
    /// Values of φ on the rows of the source basis.
    pub covector: Vec<Rational>,
    pub points: (Point, Point),
    pub k: u32,
}

#[derive(Clone, Debug, Default)]
pub struct GlueOptions {
    /// Permit k below the proven range.
    pub override_k: bool,
}

/// Smallest k for which gluing `p` to `q` on `curve` lies in the proven range.
pub fn required_k(curve: &MarkedCurve, p: &Point, q: &Point) -> u32 {
    let pieces = curve.connected_pieces();
    let piece_of = |c: usize| pieces.iter().position(|pc| pc.contains(&c));
    if piece_of(p.comp) == piece_of(q.comp) {
        5
    } else if curve.piece_genus(p.comp) == 0 && curve.piece_genus(q.comp) == 0 {
        1
    } else {
        2
    }
}

/// `Ok(true)` inside the proven range, `Ok(false)` outside it with override.
fn check_range(curve: &MarkedCurve, k: u32, p: &Point, q: &Point, opts: &GlueOptions) -> Result<bool> {
    let required = required_k(curve, p, q);
    if k >= required {
        Ok(true)
    } else if opts.override_k {
        Ok(false)
    } else {
        Err(Error::OutsideRange { k, required })
    }
}

fn glue_points(curve: &MarkedCurve, i: usize, j: usize) -> Result<(Point, Point)> {
    if i == j {
        return Err(Error::index(format!("glue labels must differ, got {i} twice")));
    }
    Ok((curve.mark(i)?.clone(), curve.mark(j)?.clone()))
}

/// φ over the canonical basis of `basis`.
pub fn matching_functional(basis: &SectionBasis, p1: &Point, p2: &Point) -> Result<GluingFunctional> {
    functional_over(&basis.curve, basis.k, basis.basis(), p1, p2)
}

fn functional_over(curve: &MarkedCurve, k: u32, rows: &Matrix, p1: &Point, p2: &Point) -> Result<GluingFunctional> {
    if p1 == p2 {
        return Err(Error::validation("glue points coincide"));
    }
    for p in [p1, p2] {
        if !curve.marks().contains(p) {
            return Err(Error::validation(format!(
                "t = {} on component {} is not a marked point",
                format_rational(&p.param),
                p.comp
            )));
        }
    }
    let row = matching_row(curve, k, p1, p2)?;
    let covector = (0..rows.rows()).map(|r| dot(&row, rows.row(r))).collect();
    Ok(GluingFunctional { covector, points: (p1.clone(), p2.clone()), k })
}

/// φ over the coordinate sections of `e`, for marks `i` and `j`.
pub fn gluing_functional(e: &EmbeddedCurve, i: usize, j: usize) -> Result<GluingFunctional> {
    let (p, q) = glue_points(e.curve(), i, j)?;
    functional_over(e.curve(), e.k(), e.basis(), &p, &q)
}

/// γ = [φ(s_0) : … : φ(s_N)], not rescaled.
pub fn compute_gamma(e: &EmbeddedCurve, i: usize, j: usize, opts: &GlueOptions) -> Result<Vec<Rational>> {
    let (p, q) = glue_points(e.curve(), i, j)?;
    check_range(e.curve(), e.k(), &p, &q, opts)?;
    Ok(gluing_functional(e, i, j)?.covector)
}

/// Projection from the span of `centers`: the new coordinates are the
/// canonical kernel basis applied to the old ones. `curve` is the target's
/// marked curve; no compatibility is checked.
pub fn project_from_centers(e: &EmbeddedCurve, centers: &[Vec<Rational>], curve: MarkedCurve) -> Result<EmbeddedCurve> {
    let n = e.basis().rows();
    let ker = kernel(&Matrix::from_rows(n, centers.to_vec())?);
    let basis = ker.basis().mul(e.basis())?;
    EmbeddedCurve::from_basis(curve, e.k(), basis)
}

/// Projection from an arbitrary point; the result carries the glued curve at
/// marks `i`, `j` so that a wrong center shows up in verification.
pub fn project_from_point(e: &EmbeddedCurve, center: &[Rational], i: usize, j: usize) -> Result<EmbeddedCurve> {
    let curve = e.curve().glue_marks_with_labels(i, j, &closing_labels(e.curve().mark_count(), i, j))?;
    project_from_centers(e, &[center.to_vec()], curve)
}

fn project_glue_labelled(e: &EmbeddedCurve, i: usize, j: usize, labels: &[usize], opts: &GlueOptions) -> Result<EmbeddedCurve> {
    let gamma = compute_gamma(e, i, j, opts)?;
    let curve = e.curve().glue_marks_with_labels(i, j, labels)?;
    project_from_centers(e, &[gamma], curve)
}

/// Projection from γ; component order is kept and surviving marks close up.
pub fn project_glue(e: &EmbeddedCurve, i: usize, j: usize, opts: &GlueOptions) -> Result<EmbeddedCurve> {
    project_glue_labelled(e, i, j, &closing_labels(e.curve().mark_count(), i, j), opts)
}

/// `e1 ∘_i e2`: mark `i` of `e1` glued to mark 1 of `e2`; the remaining marks
/// of `e2` take labels `i..`.
pub fn compose(e1: &EmbeddedCurve, i: usize, e2: &EmbeddedCurve, opts: &GlueOptions) -> Result<EmbeddedCurve> {
    compose_uncanonical(e1, i, e2, opts)?.canonical()
}

fn compose_uncanonical(e1: &EmbeddedCurve, i: usize, e2: &EmbeddedCurve, opts: &GlueOptions) -> Result<EmbeddedCurve> {
    if e1.k() != e2.k() {
        return Err(Error::validation(format!("k differs: {} vs {}", e1.k(), e2.k())));
    }
    let m = e1.curve().mark_count();
    let labels = graft_labels(m, e2.curve().mark_count(), i)?;
    let union = EmbeddedCurve::disjoint_union(e1, e2)?;
    project_glue_labelled(&union, i, m + 1, &labels, opts)
}

/// `ξ_ij`: glue marks `i`, `j` of one curve.
pub fn self_glue(e: &EmbeddedCurve, i: usize, j: usize, opts: &GlueOptions) -> Result<EmbeddedCurve> {
    project_glue(e, i, j, opts)?.canonical()
}

/// Projection from the line through the two secant points of `(i1, j1)` and
/// `(i2, j2)`; equals gluing the pairs one after the other.
pub fn project_from_line(
    e: &EmbeddedCurve,
    (i1, j1): (usize, usize),
    (i2, j2): (usize, usize),
    opts: &GlueOptions,
) -> Result<EmbeddedCurve> {
    let labels = [i1, j1, i2, j2];
    let mut sorted = labels;
    sorted.sort();
    if sorted.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::index(format!("labels {labels:?} must be distinct")));
    }
    let g1 = compute_gamma(e, i1, j1, opts)?;
    let g2 = gluing_functional(e, i2, j2)?.covector;
    let once = e.curve().glue_marks_with_labels(i1, j1, &closing_labels(e.curve().mark_count(), i1, j1))?;
    let (p2, q2) = glue_points(e.curve(), i2, j2)?;
    check_range(&once, e.k(), &p2, &q2, opts)?;
    let n = e.curve().mark_count();
    let a = closing_labels(n, i1, j1);
    let b = closing_labels(n - 2, a[i2 - 1], a[j2 - 1]);
    let composite: Vec<usize> = (0..n).map(|l| if a[l] == 0 { 0 } else { b[a[l] - 1] }).collect();
    let twice = once_more(e.curve(), (i1, j1), (i2, j2), &composite)?;
    project_from_centers(e, &[g1, g2], twice)?.canonical()
}

fn once_more(c: &MarkedCurve, (i1, j1): (usize, usize), (i2, j2): (usize, usize), labels: &[usize]) -> Result<MarkedCurve> {
    let n = c.mark_count();
    let keep: Vec<usize> = (1..=n).filter(|l| ![i1, j1, i2, j2].contains(l)).collect();
    let mut marks = vec![None; n - 4];
    for &l in &keep {
        marks[labels[l - 1] - 1] = Some(c.marks()[l - 1].clone());
    }
    let mut nodes = c.nodes().to_vec();
    nodes.push((c.mark(i1)?.clone(), c.mark(j1)?.clone()));
    nodes.push((c.mark(i2)?.clone(), c.mark(j2)?.clone()));
    let marks = marks.into_iter().map(|m| m.expect("labels close up")).collect();
    let components = c.components();
    let glued = MarkedCurve::new(components, nodes, marks);
    glued.map_err(|_| Error::validation("double gluing leaves the curve disconnected"))
}

// ------------------------------------------------------------- reports

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub pass: bool,
    pub witness: Value,
}

impl Check {
    fn new(pass: bool, witness: Value) -> Self {
        Check { pass, witness }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GluingReport {
    pub pass: bool,
    pub in_theorem_range: bool,
    pub method: Method,
    pub gamma_on_secant: Check,
    pub gamma_distinct: Check,
    pub dimension_drop: Check,
    pub node_identified: Check,
    pub injectivity_certificate: Check,
    pub immersion_certificate: Check,
    pub completeness: Check,
}

impl GluingReport {
    pub fn checks(&self) -> [(&'static str, &Check); 7] {
        [
            ("gamma_on_secant", &self.gamma_on_secant),
            ("gamma_distinct", &self.gamma_distinct),
            ("dimension_drop", &self.dimension_drop),
            ("node_identified", &self.node_identified),
            ("injectivity_certificate", &self.injectivity_certificate),
            ("immersion_certificate", &self.immersion_certificate),
            ("completeness", &self.completeness),
        ]
    }

    pub fn failures(&self) -> Vec<&'static str> {
        self.checks().iter().filter(|(_, c)| !c.pass).map(|(n, _)| *n).collect()
    }
}

fn fmt_vec(v: &[Rational]) -> Vec<String> {
    v.iter().map(format_rational).collect()
}

/// Component order of `out` matching the glued curve `expected`, ignoring
/// mark labels: position `a` of the result is the component of `out` that
/// plays the role of component `a` of `expected`.
fn align_components(out: &MarkedCurve, expected: &MarkedCurve) -> Option<Vec<usize>> {
    let n = expected.components();
    if out.components() != n {
        return None;
    }
    let sig = |c: &MarkedCurve, a: usize| (c.special_points(a), c.marks_on(a));
    let mut mark_set = expected.marks().to_vec();
    mark_set.sort();
    fn go(
        a: usize,
        n: usize,
        order: &mut Vec<usize>,
        used: &mut [bool],
        ok: &dyn Fn(usize, usize) -> bool,
        done: &dyn Fn(&[usize]) -> bool,
    ) -> bool {
        if a == n {
            return done(order);
        }
        for b in 0..n {
            if !used[b] && ok(a, b) {
                used[b] = true;
                order.push(b);
                if go(a + 1, n, order, used, ok, done) {
                    return true;
                }
                order.pop();
                used[b] = false;
            }
        }
        false
    }
    let ok = |a: usize, b: usize| sig(expected, a) == sig(out, b);
    let done = |order: &[usize]| {
        let r = out.reorder_components(order);
        let mut marks = r.marks().to_vec();
        marks.sort();
        r.nodes() == expected.nodes() && marks == mark_set
    };
    let mut order = Vec::new();
    if go(0, n, &mut order, &mut vec![false; n], &ok, &done) { Some(order) } else { None }
}

/// Reorders the components of `e` (new `a` = old `order[a]`) keeping its
/// coordinate sections, so points can be compared with another component order.
fn reorder_embedded(e: &EmbeddedCurve, order: &[usize]) -> Result<EmbeddedCurve> {
    let curve = e.curve().reorder_components(order);
    let off = e.curve().block_offsets(e.k());
    let columns: Vec<usize> = order.iter().flat_map(|&a| off[a]..off[a + 1]).collect();
    EmbeddedCurve::from_basis(curve, e.k(), e.basis().select_columns(&columns))
}

pub fn verify_gluing(out: &EmbeddedCurve, input: &EmbeddedCurve, i: usize, j: usize) -> Result<GluingReport> {
    verify_gluing_with(out, input, i, j, &CertOptions::default())
}

/// Checks every claim about a single gluing. Only malformed labels or
/// cancellation produce an error; failed checks are data.
pub fn verify_gluing_with(
    out: &EmbeddedCurve,
    input: &EmbeddedCurve,
    i: usize,
    j: usize,
    opts: &CertOptions,
) -> Result<GluingReport> {
    let (p, q) = glue_points(input.curve(), i, j)?;
    let k = input.k();
    let in_range = k >= required_k(input.curve(), &p, &q);

    let gamma = gluing_functional(input, i, j)?.covector;
    let eta_p = input.image(&p).unwrap_or_default();
    let eta_q = input.image(&q).unwrap_or_default();
    let width = gamma.len();
    let rank = Matrix::from_rows(width, vec![eta_p.clone(), eta_q.clone(), gamma.clone()]).map(|m| m.rank()).unwrap_or(0);
    let on_secant = Check::new(rank == 2, json!({"gamma": fmt_vec(&gamma), "rank": rank}));
    let distinct = !gamma.iter().all(Zero::is_zero)
        && !projectively_equal(&gamma, &eta_p)
        && !projectively_equal(&gamma, &eta_q);
    let gamma_distinct = Check::new(
        distinct,
        json!({"eta_i": fmt_vec(&eta_p), "eta_j": fmt_vec(&eta_q), "gamma": fmt_vec(&gamma)}),
    );
    let drop = Check::new(
        out.k() == k && out.ambient_dim() + 1 == input.ambient_dim(),
        json!({"before": input.ambient_dim(), "after": out.ambient_dim()}),
    );

    let expected = input.curve().glue_marks_with_labels(i, j, &closing_labels(input.curve().mark_count(), i, j))?;
    let aligned = match align_components(out.curve(), &expected) {
        Some(order) if out.k() == k => Some(reorder_embedded(out, &order)?),
        _ => None,
    };
    let Some(aligned) = aligned else {
        let fail = Check::new(false, json!("output curve is not the glued curve"));
        return Ok(GluingReport {
            pass: false,
            in_theorem_range: in_range,
            method: Method::Elimination,
            gamma_on_secant: on_secant,
            gamma_distinct,
            dimension_drop: drop,
            node_identified: fail.clone(),
            injectivity_certificate: fail.clone(),
            immersion_certificate: fail.clone(),
            completeness: fail,
        });
    };

    let node_identified = node_check(&aligned, &p, &q);
    let cert = injectivity(&aligned, opts)?;
    let (imm, imm_w) = immersion(&aligned);
    let sb = section_space(aligned.curve(), k)?;
    let pulled = Subspace::row_space(aligned.basis());
    let complete = pulled == sb.space && aligned.basis().rows() == sb.dim();
    let completeness = Check::new(complete, json!({"pulled_back_dim": pulled.dim(), "section_space_dim": sb.dim()}));

    let mut report = GluingReport {
        pass: false,
        in_theorem_range: in_range,
        method: cert.method,
        gamma_on_secant: on_secant,
        gamma_distinct,
        dimension_drop: drop,
        node_identified,
        injectivity_certificate: Check::new(cert.pass, cert.witness),
        immersion_certificate: Check::new(imm, imm_w),
        completeness,
    };
    report.pass = report.failures().is_empty();
    Ok(report)
}

/// The glue points share an image; every other special point (each old node
/// counted once) has its own.
fn node_check(e: &EmbeddedCurve, p: &Point, q: &Point) -> Check {
    let ip = e.image(p);
    let iq = e.image(q);
    let joined = ip.is_some() && ip == iq;
    let mut images: Vec<(String, Option<Vec<Rational>>)> = vec![("new node".into(), ip.clone())];
    let mut old_nodes_ok = true;
    for (x, y) in e.curve().nodes() {
        if (x == p && y == q) || (x == q && y == p) {
            continue;
        }
        let (a, b) = (e.image(x), e.image(y));
        old_nodes_ok &= a.is_some() && a == b;
        images.push((format!("node {}:{}", x.comp, format_rational(&x.param)), a));
    }
    for (l, m) in e.curve().marks().iter().enumerate() {
        images.push((format!("mark {}", l + 1), e.image(m)));
    }
    let mut clash = None;
    for s in 0..images.len() {
        for t in s + 1..images.len() {
            if images[s].1.is_none() || images[s].1 == images[t].1 {
                clash.get_or_insert((images[s].0.clone(), images[t].0.clone()));
            }
        }
    }
    let witness = json!({
        "image_i": ip.as_deref().map(fmt_vec),
        "image_j": iq.as_deref().map(fmt_vec),
        "clash": clash.as_ref().map(|(a, b)| vec![a.clone(), b.clone()]),
    });
    Check::new(joined && old_nodes_ok && clash.is_none(), witness)
}

/// Glues and verifies in one step; the embedding is returned in canonical
/// component order.
pub fn compose_verified(
    e1: &EmbeddedCurve,
    i: usize,
    e2: &EmbeddedCurve,
    opts: &GlueOptions,
    cert: &CertOptions,
) -> Result<(EmbeddedCurve, GluingReport)> {
    let m = e1.curve().mark_count();
    let union = EmbeddedCurve::disjoint_union(e1, e2)?;
    let raw = compose_uncanonical(e1, i, e2, opts)?;
    let report = verify_gluing_with(&raw, &union, i, m + 1, cert)?;
    Ok((raw.canonical()?, report))
}

pub fn self_glue_verified(
    e: &EmbeddedCurve,
    i: usize,
    j: usize,
    opts: &GlueOptions,
    cert: &CertOptions,
) -> Result<(EmbeddedCurve, GluingReport)> {
    let raw = project_glue(e, i, j, opts)?;
    let report = verify_gluing_with(&raw, e, i, j, cert)?;
    Ok((raw.canonical()?, report))
}

/// Sign `(-1)^k`.
pub fn node_sign(k: u32) -> Rational {
    if k.is_multiple_of(2) { Rational::one() } else { -Rational::one() }
}
