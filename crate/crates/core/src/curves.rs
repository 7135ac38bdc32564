//! Marked nodal curves with rational components, their spaces of
//! log-canonical k-differentials, and the embedding by that complete linear
//! system.
//!
//! A section restricted to component `a` is written
//! `N(t) / ∏_p (t - p)^k · (dt)^k`, the product over the special points of
//! `a`. Regularity at infinity bounds `deg N <= k (m_a - 2)` where `m_a` is the
//! number of special points, so component `a` contributes a coordinate block
//! of `k (m_a - 2) + 1` numerator coefficients in ascending degree. Blocks are
//! concatenated in component order.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::dualgraph::{is_stable, DualGraph};
use crate::error::{Error, Result};
use crate::exactla::{
    dot, format_rational, kernel, normalize_projective, parse_rational, Matrix, Rational, Subspace,
};
use crate::permops::{close_up, Permutation};
use crate::poly::UniPoly;

/// A point of the normalization: component index and affine parameter.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct Point {
    pub comp: usize,
    pub param: Rational,
}

impl Point {
    pub fn new(comp: usize, param: Rational) -> Self {
        Point { comp, param }
    }
}

/// `(2k - 1)(g - 1) + k n`.
pub fn h0_expected(g: u32, n: usize, k: u32) -> Result<usize> {
    check_range(g, n, k)?;
    let v = (2 * k as i64 - 1) * (g as i64 - 1) + k as i64 * n as i64;
    Ok(v as usize)
}

/// `k (2g - 2 + n)`.
pub fn degree_total(g: u32, n: usize, k: u32) -> Result<usize> {
    check_range(g, n, k)?;
    Ok((k as i64 * (2 * g as i64 - 2 + n as i64)) as usize)
}

fn check_range(g: u32, n: usize, k: u32) -> Result<()> {
    if !is_stable(g, n) {
        return Err(Error::validation(format!("(g, n) = ({g}, {n}) is unstable: need n >= 3 - 2g")));
    }
    let min_k = if g == 0 { 1 } else { 2 };
    if k < min_k {
        return Err(Error::validation(format!("k = {k} out of range for genus {g} (need k >= {min_k})")));
    }
    Ok(())
}

/// Nodal curve whose components are copies of `P^1` with affine parameters.
///
/// Nodes are stored with their two branches ordered and the node list sorted,
/// so two curves with the same nodes compare equal regardless of the order in
/// which the nodes were formed.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct MarkedCurve {
    components: usize,
    nodes: Vec<(Point, Point)>,
    marks: Vec<Point>,
}

impl MarkedCurve {
    /// Connected, stable curve; `marks[l - 1]` is the location of mark `l`.
    pub fn new(components: usize, nodes: Vec<(Point, Point)>, marks: Vec<Point>) -> Result<Self> {
        let c = MarkedCurve::build(components, nodes, marks)?;
        if c.connected_pieces().len() != 1 {
            return Err(Error::validation("curve is not connected"));
        }
        Ok(c)
    }

    fn build(components: usize, nodes: Vec<(Point, Point)>, marks: Vec<Point>) -> Result<Self> {
        if components == 0 {
            return Err(Error::validation("a curve needs at least one component"));
        }
        let mut nodes: Vec<(Point, Point)> = nodes
            .into_iter()
            .map(|(a, b)| if b < a { (b, a) } else { (a, b) })
            .collect();
        nodes.sort();
        let c = MarkedCurve { components, nodes, marks };
        let mut seen: BTreeSet<&Point> = BTreeSet::new();
        for p in c.nodes.iter().flat_map(|(a, b)| [a, b]).chain(&c.marks) {
            if p.comp >= components {
                return Err(Error::validation(format!("point on missing component {}", p.comp)));
            }
            if !seen.insert(p) {
                return Err(Error::validation(format!(
                    "special point t = {} repeated on component {}",
                    format_rational(&p.param),
                    p.comp
                )));
            }
        }
        for a in 0..components {
            let m = c.special_count(a);
            if m < 3 {
                return Err(Error::validation(format!(
                    "component {a} has {m} special points; a rational component needs at least 3"
                )));
            }
        }
        Ok(c)
    }

    pub fn disjoint_union(a: &MarkedCurve, b: &MarkedCurve) -> MarkedCurve {
        let off = a.components;
        let shift = |p: &Point| Point::new(p.comp + off, p.param.clone());
        let mut nodes = a.nodes.clone();
        nodes.extend(b.nodes.iter().map(|(x, y)| (shift(x), shift(y))));
        let mut marks = a.marks.clone();
        marks.extend(b.marks.iter().map(shift));
        MarkedCurve::build(a.components + b.components, nodes, marks).expect("union of valid curves")
    }

    pub fn components(&self) -> usize {
        self.components
    }

    pub fn nodes(&self) -> &[(Point, Point)] {
        &self.nodes
    }

    pub fn marks(&self) -> &[Point] {
        &self.marks
    }

    pub fn mark_count(&self) -> usize {
        self.marks.len()
    }

    /// Location of mark `label` (1-based).
    pub fn mark(&self, label: usize) -> Result<&Point> {
        label
            .checked_sub(1)
            .and_then(|i| self.marks.get(i))
            .ok_or_else(|| Error::index(format!("mark {label} outside 1..={}", self.marks.len())))
    }

    /// Special points of component `a` (marks and node branches), ascending.
    pub fn special_points(&self, a: usize) -> Vec<Rational> {
        let mut pts: Vec<Rational> = self
            .nodes
            .iter()
            .flat_map(|(x, y)| [x, y])
            .chain(&self.marks)
            .filter(|p| p.comp == a)
            .map(|p| p.param.clone())
            .collect();
        pts.sort();
        pts
    }

    pub fn special_count(&self, a: usize) -> usize {
        let on = |p: &Point| usize::from(p.comp == a);
        self.marks.iter().map(on).sum::<usize>()
            + self.nodes.iter().map(|(x, y)| on(x) + on(y)).sum::<usize>()
    }

    pub fn marks_on(&self, a: usize) -> usize {
        self.marks.iter().filter(|p| p.comp == a).count()
    }

    pub fn node_branches_on(&self, a: usize) -> usize {
        self.nodes.iter().map(|(x, y)| usize::from(x.comp == a) + usize::from(y.comp == a)).sum()
    }

    pub fn is_special(&self, p: &Point) -> bool {
        self.marks.contains(p) || self.nodes.iter().any(|(x, y)| x == p || y == p)
    }

    /// Connected pieces as sorted component lists, ordered by smallest member.
    pub fn connected_pieces(&self) -> Vec<Vec<usize>> {
        let mut parent: Vec<usize> = (0..self.components).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            p[x] = r;
            r
        }
        for (x, y) in &self.nodes {
            let (a, b) = (find(&mut parent, x.comp), find(&mut parent, y.comp));
            parent[a] = b;
        }
        let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for a in 0..self.components {
            let r = find(&mut parent, a);
            groups.entry(r).or_default().push(a);
        }
        let mut pieces: Vec<Vec<usize>> = groups.into_values().collect();
        pieces.sort();
        pieces
    }

    /// Arithmetic genus of the connected piece containing component `a`.
    pub fn piece_genus(&self, a: usize) -> u32 {
        let piece = self.connected_pieces().into_iter().find(|p| p.contains(&a)).expect("component exists");
        let nodes = self.nodes.iter().filter(|(x, _)| piece.contains(&x.comp)).count();
        (nodes + 1 - piece.len()) as u32
    }

    /// Arithmetic genus `1 - ℓ + j` of a connected curve; for a disjoint union
    /// the sum over its pieces.
    pub fn total_genus(&self) -> u32 {
        (self.nodes.len() + self.connected_pieces().len() - self.components) as u32
    }

    pub fn is_connected(&self) -> bool {
        self.connected_pieces().len() == 1
    }

    /// Smallest k for which the dimension formula holds on every piece.
    pub fn min_k(&self) -> u32 {
        let all_rational = (0..self.components).all(|a| self.piece_genus(a) == 0);
        if all_rational { 1 } else { 2 }
    }

    pub fn dual_graph(&self) -> Result<DualGraph> {
        DualGraph::new(
            vec![0; self.components],
            self.nodes.iter().map(|(x, y)| (x.comp, y.comp)).collect(),
            self.marks.iter().map(|p| p.comp).collect(),
        )
    }

    /// Mark `l` becomes mark `rho(l)`; no geometry changes.
    pub fn relabel(&self, rho: &Permutation) -> Result<MarkedCurve> {
        if rho.len() != self.marks.len() {
            return Err(Error::Dimension(format!(
                "permutation of {} letters on a curve with {} marks",
                rho.len(),
                self.marks.len()
            )));
        }
        let mut marks = self.marks.clone();
        for (l, p) in self.marks.iter().enumerate() {
            marks[rho.apply(l + 1) - 1] = p.clone();
        }
        Ok(MarkedCurve { components: self.components, nodes: self.nodes.clone(), marks })
    }

    /// Identifies marks `i` and `j` to a node; `new_label[l - 1]` is the label
    /// taken by each surviving mark `l` (ignored for `i`, `j`).
    pub fn glue_marks_with_labels(&self, i: usize, j: usize, new_label: &[usize]) -> Result<MarkedCurve> {
        let (pi, pj) = (self.mark(i)?.clone(), self.mark(j)?.clone());
        if i == j {
            return Err(Error::index(format!("cannot glue mark {i} to itself")));
        }
        let n = self.marks.len();
        let mut marks = vec![None; n - 2];
        for l in (1..=n).filter(|&l| l != i && l != j) {
            let slot = new_label[l - 1]
                .checked_sub(1)
                .filter(|&s| s < n - 2)
                .ok_or_else(|| Error::index(format!("label map sends {l} outside 1..={}", n - 2)))?;
            if marks[slot].replace(self.marks[l - 1].clone()).is_some() {
                return Err(Error::index("label map is not injective"));
            }
        }
        let marks = marks.into_iter().map(|m| m.expect("bijective label map")).collect();
        let mut nodes = self.nodes.clone();
        nodes.push((pi, pj));
        MarkedCurve::build(self.components, nodes, marks)
    }

    /// Marked-level self-gluing with order-preserving relabelling.
    pub fn glue_marks(&self, i: usize, j: usize) -> Result<MarkedCurve> {
        let labels = closing_labels(self.marks.len(), i, j);
        self.glue_marks_with_labels(i, j, &labels)?.canonical()
    }

    /// Marked-level grafting: mark `i` of `self` glued to mark 1 of `other`.
    pub fn graft(&self, i: usize, other: &MarkedCurve) -> Result<MarkedCurve> {
        let m = self.marks.len();
        let union = MarkedCurve::disjoint_union(self, other);
        let labels = graft_labels(m, other.marks.len(), i)?;
        union.glue_marks_with_labels(i, m + 1, &labels)?.canonical()
    }

    /// Reorders components: new component `k` is old component `order[k]`.
    pub fn reorder_components(&self, order: &[usize]) -> MarkedCurve {
        let mut pos = vec![0; order.len()];
        for (k, &a) in order.iter().enumerate() {
            pos[a] = k;
        }
        let mv = |p: &Point| Point::new(pos[p.comp], p.param.clone());
        let nodes = self.nodes.iter().map(|(x, y)| (mv(x), mv(y))).collect();
        let marks = self.marks.iter().map(mv).collect();
        MarkedCurve::build(self.components, nodes, marks).expect("reordering keeps validity")
    }

    /// Component order giving the canonical representative of the isomorphism
    /// class (isomorphisms permute components and keep parameters).
    pub fn canonical_order(&self) -> Vec<usize> {
        let colours = self.refined_colours();
        let mut classes: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for (a, &c) in colours.iter().enumerate() {
            classes.entry(c).or_default().push(a);
        }
        let classes: Vec<Vec<usize>> = classes.into_values().collect();
        let mut best: Option<(MarkedCurve, Vec<usize>)> = None;
        let mut order = Vec::new();
        self.search_orders(&classes, 0, &mut vec![false; self.components], &mut order, &mut best);
        best.expect("some order").1
    }

    pub fn canonical(&self) -> Result<MarkedCurve> {
        Ok(self.reorder_components(&self.canonical_order()))
    }

    fn search_orders(
        &self,
        classes: &[Vec<usize>],
        class: usize,
        used: &mut Vec<bool>,
        order: &mut Vec<usize>,
        best: &mut Option<(MarkedCurve, Vec<usize>)>,
    ) {
        if class == classes.len() {
            let cand = self.reorder_components(order);
            if best.as_ref().is_none_or(|(b, _)| cand.sort_key() < b.sort_key()) {
                *best = Some((cand, order.clone()));
            }
            return;
        }
        let members = &classes[class];
        if members.iter().all(|&a| used[a]) {
            self.search_orders(classes, class + 1, used, order, best);
            return;
        }
        for &a in members {
            if used[a] {
                continue;
            }
            used[a] = true;
            order.push(a);
            self.search_orders(classes, class, used, order, best);
            order.pop();
            used[a] = false;
        }
    }

    fn sort_key(&self) -> (&[(Point, Point)], &[Point]) {
        (&self.nodes, &self.marks)
    }

    fn refined_colours(&self) -> Vec<usize> {
        let nc = self.components;
        let initial: Vec<Vec<(Rational, usize)>> = (0..nc)
            .map(|a| {
                let mut v: Vec<(Rational, usize)> = self
                    .marks
                    .iter()
                    .enumerate()
                    .filter(|(_, p)| p.comp == a)
                    .map(|(l, p)| (p.param.clone(), l + 1))
                    .collect();
                for (x, y) in &self.nodes {
                    for p in [x, y] {
                        if p.comp == a {
                            v.push((p.param.clone(), 0));
                        }
                    }
                }
                v.sort();
                v
            })
            .collect();
        let mut colours = rank(&initial);
        loop {
            let sigs: Vec<(usize, Vec<(Rational, usize, Rational)>)> = (0..nc)
                .map(|a| {
                    let mut nb = Vec::new();
                    for (x, y) in &self.nodes {
                        if x.comp == a {
                            nb.push((x.param.clone(), colours[y.comp], y.param.clone()));
                        }
                        if y.comp == a {
                            nb.push((y.param.clone(), colours[x.comp], x.param.clone()));
                        }
                    }
                    nb.sort();
                    (colours[a], nb)
                })
                .collect();
            let next = rank(&sigs);
            let distinct = |c: &[usize]| c.iter().collect::<BTreeSet<_>>().len();
            if distinct(&next) == distinct(&colours) {
                return next;
            }
            colours = next;
        }
    }

    /// Numerator degree bound `k (m_a - 2)` on component `a`.
    pub fn block_degree(&self, a: usize, k: u32) -> usize {
        k as usize * (self.special_count(a) - 2)
    }

    /// Start offset of each component's coefficient block, plus the total.
    pub fn block_offsets(&self, k: u32) -> Vec<usize> {
        let mut off = vec![0];
        for a in 0..self.components {
            let last = *off.last().unwrap();
            off.push(last + self.block_degree(a, k) + 1);
        }
        off
    }
}

fn rank<T: Ord + Clone>(sigs: &[T]) -> Vec<usize> {
    let mut sorted = sigs.to_vec();
    sorted.sort();
    sorted.dedup();
    sigs.iter().map(|s| sorted.binary_search(s).unwrap()).collect()
}

/// Label map closing up `{1..n} ∖ {i, j}` in order.
pub fn closing_labels(n: usize, i: usize, j: usize) -> Vec<usize> {
    (1..=n).map(|l| close_up(i, j, l).unwrap_or(0)).collect()
}

/// Label map for grafting on the disjoint union with marks `1..=m` then
/// `m+1..=m+n`: the second curve's marks `2..=n` go to `i..=i+n-2`, marks
/// after `i` on the first shift up by `n - 2`.
pub fn graft_labels(m: usize, n: usize, i: usize) -> Result<Vec<usize>> {
    if m == 0 || n == 0 {
        return Err(Error::index("grafting needs a mark on both curves"));
    }
    if i == 0 || i > m {
        return Err(Error::index(format!("mark {i} outside 1..={m}")));
    }
    Ok((1..=m + n)
        .map(|l| match l {
            l if l < i => l,
            l if l == i || l == m + 1 => 0,
            l if l <= m => l + n - 2,
            l => l - m + i - 2,
        })
        .collect())
}

/// Covector `s ↦ λ(s, p)` over the coefficient coordinates: the coefficient
/// of `(t - p)^{-k} (dt)^k` in the Laurent expansion at `p`.
pub fn lambda_row(curve: &MarkedCurve, k: u32, p: &Point) -> Result<Vec<Rational>> {
    if !curve.is_special(p) {
        return Err(Error::validation(format!(
            "t = {} is not a special point of component {}",
            format_rational(&p.param),
            p.comp
        )));
    }
    let off = curve.block_offsets(k);
    let mut row = vec![Rational::zero(); *off.last().unwrap()];
    let others = curve
        .special_points(p.comp)
        .into_iter()
        .filter(|x| *x != p.param)
        .fold(Rational::one(), |acc, x| acc * num_traits::pow(&p.param - x, k as usize));
    let inv = others.recip();
    let mut pow = Rational::one();
    for slot in &mut row[off[p.comp]..off[p.comp + 1]] {
        *slot = &pow * &inv;
        pow *= &p.param;
    }
    Ok(row)
}

/// `λ(s, p)` for a section given by its coefficient vector.
pub fn lambda_leading(curve: &MarkedCurve, k: u32, section: &[Rational], p: &Point) -> Result<Rational> {
    let row = lambda_row(curve, k, p)?;
    if row.len() != section.len() {
        return Err(Error::Dimension("section does not match the curve's coefficient layout".into()));
    }
    Ok(dot(&row, section))
}

/// Covector `λ(·, p) - (-1)^k λ(·, q)`; its kernel is the matching condition
/// for identifying `p` with `q`.
pub fn matching_row(curve: &MarkedCurve, k: u32, p: &Point, q: &Point) -> Result<Vec<Rational>> {
    let a = lambda_row(curve, k, p)?;
    let b = lambda_row(curve, k, q)?;
    let sign = if k.is_multiple_of(2) { Rational::one() } else { -Rational::one() };
    Ok(a.iter().zip(&b).map(|(x, y)| x - &sign * y).collect())
}

/// Canonical basis of the global k-differentials with log poles at the marks.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SectionBasis {
    pub curve: MarkedCurve,
    pub k: u32,
    pub space: Subspace,
}

impl SectionBasis {
    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn basis(&self) -> &Matrix {
        self.space.basis()
    }
}

fn check_k(curve: &MarkedCurve, k: u32) -> Result<()> {
    let min = curve.min_k();
    if k < min.max(1) {
        return Err(Error::validation(format!(
            "k = {k} is below {min}, the smallest k with vanishing h^1 for this curve"
        )));
    }
    Ok(())
}

/// Sections on the normalization with the pole bounds, cut down by the
/// matching condition at every node.
pub fn section_space(curve: &MarkedCurve, k: u32) -> Result<SectionBasis> {
    check_k(curve, k)?;
    let width = *curve.block_offsets(k).last().unwrap();
    let rows = curve
        .nodes()
        .iter()
        .map(|(x, y)| matching_row(curve, k, x, y))
        .collect::<Result<Vec<_>>>()?;
    let space = if rows.is_empty() { Subspace::full(width) } else { kernel(&Matrix::from_rows(width, rows)?) };
    Ok(SectionBasis { curve: curve.clone(), k, space })
}

/// A curve embedded by a basis of its log-canonical k-differentials.
///
/// The coordinate sections are kept as rows of `basis` (coefficient
/// coordinates); restricting a row to component `a` gives that
/// coordinate's parametrization of degree `d_a`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct EmbeddedCurve {
    curve: MarkedCurve,
    k: u32,
    basis: Matrix,
    mark_images: Vec<Vec<Rational>>,
    node_images: Vec<(Vec<Rational>, Vec<Rational>)>,
}

impl EmbeddedCurve {
    /// Wraps coordinate sections; fails if any special point is a base point.
    pub fn from_basis(curve: MarkedCurve, k: u32, basis: Matrix) -> Result<Self> {
        let width = *curve.block_offsets(k).last().unwrap();
        if basis.cols() != width {
            return Err(Error::Dimension(format!("basis width {} vs layout width {width}", basis.cols())));
        }
        let mut e = EmbeddedCurve { curve, k, basis, mark_images: vec![], node_images: vec![] };
        let image = |e: &EmbeddedCurve, p: &Point| {
            e.image(p).ok_or_else(|| Error::validation(format!("special point {p:?} is a base point")))
        };
        e.mark_images = e.curve.marks.iter().map(|p| image(&e, p)).collect::<Result<_>>()?;
        e.node_images = e
            .curve
            .nodes
            .iter()
            .map(|(x, y)| Ok((image(&e, x)?, image(&e, y)?)))
            .collect::<Result<_>>()?;
        Ok(e)
    }

    pub fn curve(&self) -> &MarkedCurve {
        &self.curve
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn ambient_dim(&self) -> usize {
        self.basis.rows() - 1
    }

    pub fn mark_images(&self) -> &[Vec<Rational>] {
        &self.mark_images
    }

    pub fn node_images(&self) -> &[(Vec<Rational>, Vec<Rational>)] {
        &self.node_images
    }

    /// Degree of the parametrization of component `a`.
    pub fn component_degree(&self, a: usize) -> usize {
        self.curve.block_degree(a, self.k)
    }

    /// Coordinate polynomials of component `a`.
    pub fn parametrization(&self, a: usize) -> Vec<UniPoly> {
        let off = self.curve.block_offsets(self.k);
        (0..self.basis.rows())
            .map(|r| UniPoly::new(self.basis.row(r)[off[a]..off[a + 1]].to_vec()))
            .collect()
    }

    /// Raw coordinates of the image of `p` (not normalised).
    pub fn coordinates_at(&self, p: &Point) -> Vec<Rational> {
        self.parametrization(p.comp).iter().map(|f| f.eval(&p.param)).collect()
    }

    /// Image of `p`, scaled so its first nonzero coordinate is one.
    pub fn image(&self, p: &Point) -> Option<Vec<Rational>> {
        normalize_projective(&self.coordinates_at(p))
    }

    pub fn forget(&self) -> MarkedCurve {
        self.curve.clone()
    }

    pub fn mark_image(&self, label: usize) -> Result<&Vec<Rational>> {
        self.curve.mark(label)?;
        Ok(&self.mark_images[label - 1])
    }

    /// Relabels marks; coordinates are untouched since the divisor of marks is symmetric.
    pub fn relabel(&self, rho: &Permutation) -> Result<EmbeddedCurve> {
        let curve = self.curve.relabel(rho)?;
        let mut mark_images = self.mark_images.clone();
        for (l, img) in self.mark_images.iter().enumerate() {
            mark_images[rho.apply(l + 1) - 1] = img.clone();
        }
        Ok(EmbeddedCurve { curve, k: self.k, basis: self.basis.clone(), mark_images, node_images: self.node_images.clone() })
    }

    /// Permutes components into canonical order and re-canonicalises the
    /// coordinate basis in the permuted coefficient layout.
    pub fn canonical(&self) -> Result<EmbeddedCurve> {
        let order = self.curve.canonical_order();
        let curve = self.curve.reorder_components(&order);
        let off = self.curve.block_offsets(self.k);
        let columns: Vec<usize> = order.iter().flat_map(|&a| off[a]..off[a + 1]).collect();
        let basis = Subspace::row_space(&self.basis.select_columns(&columns)).basis().clone();
        EmbeddedCurve::from_basis(curve, self.k, basis)
    }

    /// Disjoint union embedded in complementary coordinate blocks.
    pub fn disjoint_union(a: &EmbeddedCurve, b: &EmbeddedCurve) -> Result<EmbeddedCurve> {
        if a.k != b.k {
            return Err(Error::validation(format!("k differs: {} vs {}", a.k, b.k)));
        }
        let curve = MarkedCurve::disjoint_union(&a.curve, &b.curve);
        let (wa, wb) = (a.basis.cols(), b.basis.cols());
        let mut rows = Vec::with_capacity(a.basis.rows() + b.basis.rows());
        for r in 0..a.basis.rows() {
            let mut v = a.basis.row(r).to_vec();
            v.resize(wa + wb, Rational::zero());
            rows.push(v);
        }
        for r in 0..b.basis.rows() {
            let mut v = vec![Rational::zero(); wa];
            v.extend_from_slice(b.basis.row(r));
            rows.push(v);
        }
        EmbeddedCurve::from_basis(curve, a.k, Matrix::from_rows(wa + wb, rows)?)
    }
}

/// Embedding by the canonical basis of the complete linear system.
pub fn embed(curve: &MarkedCurve, k: u32) -> Result<EmbeddedCurve> {
    let sb = section_space(curve, k)?;
    EmbeddedCurve::from_basis(sb.curve, k, sb.space.basis().clone())
}

// ---------------------------------------------------------------- JSON

type PointWire = (usize, String);

#[derive(Serialize, Deserialize)]
struct CurveWire {
    components: usize,
    nodes: Vec<[PointWire; 2]>,
    marks: Vec<(usize, PointWire)>,
}

fn point_to_wire(p: &Point) -> PointWire {
    (p.comp, format_rational(&p.param))
}

fn point_from_wire(w: &PointWire) -> Result<Point> {
    Ok(Point::new(w.0, parse_rational(&w.1)?))
}

fn vec_to_wire(v: &[Rational]) -> Vec<String> {
    v.iter().map(format_rational).collect()
}

fn vec_from_wire(v: &[String]) -> Result<Vec<Rational>> {
    v.iter().map(|s| parse_rational(s)).collect()
}

impl CurveWire {
    fn from_curve(c: &MarkedCurve) -> Self {
        CurveWire {
            components: c.components,
            nodes: c.nodes.iter().map(|(x, y)| [point_to_wire(x), point_to_wire(y)]).collect(),
            marks: c.marks.iter().enumerate().map(|(l, p)| (l + 1, point_to_wire(p))).collect(),
        }
    }

    fn into_curve(self) -> Result<MarkedCurve> {
        let nodes = self
            .nodes
            .iter()
            .map(|[x, y]| Ok((point_from_wire(x)?, point_from_wire(y)?)))
            .collect::<Result<Vec<_>>>()?;
        let n = self.marks.len();
        let mut marks = vec![None; n];
        for (label, w) in &self.marks {
            let slot = label
                .checked_sub(1)
                .filter(|&s| s < n)
                .ok_or_else(|| Error::validation(format!("mark labels must be exactly 1..={n}")))?;
            if marks[slot].replace(point_from_wire(w)?).is_some() {
                return Err(Error::validation(format!("mark label {label} repeated")));
            }
        }
        MarkedCurve::new(self.components, nodes, marks.into_iter().map(Option::unwrap).collect())
    }
}

impl Serialize for MarkedCurve {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        CurveWire::from_curve(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for MarkedCurve {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        CurveWire::deserialize(d)?.into_curve().map_err(serde::de::Error::custom)
    }
}

#[derive(Serialize, Deserialize)]
struct EmbeddingWire {
    k: u32,
    ambient_dim: usize,
    curve: CurveWire,
    parametrizations: Vec<Vec<Vec<String>>>,
    mark_images: Vec<(usize, Vec<String>)>,
    node_images: Vec<[Vec<String>; 2]>,
}

impl Serialize for EmbeddedCurve {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let off = self.curve.block_offsets(self.k);
        let parametrizations = (0..self.curve.components)
            .map(|a| (0..self.basis.rows()).map(|r| vec_to_wire(&self.basis.row(r)[off[a]..off[a + 1]])).collect())
            .collect();
        EmbeddingWire {
            k: self.k,
            ambient_dim: self.ambient_dim(),
            curve: CurveWire::from_curve(&self.curve),
            parametrizations,
            mark_images: self.mark_images.iter().enumerate().map(|(l, v)| (l + 1, vec_to_wire(v))).collect(),
            node_images: self.node_images.iter().map(|(x, y)| [vec_to_wire(x), vec_to_wire(y)]).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for EmbeddedCurve {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let w = EmbeddingWire::deserialize(d)?;
        embedding_from_wire(w).map_err(serde::de::Error::custom)
    }
}

fn embedding_from_wire(w: EmbeddingWire) -> Result<EmbeddedCurve> {
    let curve = w.curve.into_curve()?;
    let k = w.k;
    let off = curve.block_offsets(k);
    if w.parametrizations.len() != curve.components {
        return Err(Error::validation("one parametrization per component expected"));
    }
    let rows_n = w.ambient_dim + 1;
    let mut rows = vec![Vec::with_capacity(*off.last().unwrap()); rows_n];
    for (a, comp) in w.parametrizations.iter().enumerate() {
        if comp.len() != rows_n {
            return Err(Error::validation(format!("component {a} needs {rows_n} coordinate polynomials")));
        }
        for (r, coeffs) in comp.iter().enumerate() {
            if coeffs.len() != off[a + 1] - off[a] {
                return Err(Error::validation(format!(
                    "component {a} coordinate {r} needs {} coefficients",
                    off[a + 1] - off[a]
                )));
            }
            rows[r].extend(vec_from_wire(coeffs)?);
        }
    }
    let basis = Matrix::from_rows(*off.last().unwrap(), rows)?;
    let expected = section_space(&curve, k)?;
    if Subspace::row_space(&basis) != expected.space || basis.rows() != expected.dim() {
        return Err(Error::validation("coordinates do not form a basis of the complete linear system"));
    }
    let e = EmbeddedCurve::from_basis(curve, k, basis)?;
    let marks = w
        .mark_images
        .iter()
        .map(|(_, v)| vec_from_wire(v))
        .collect::<Result<Vec<_>>>()?;
    if marks != e.mark_images {
        return Err(Error::validation("mark images disagree with the parametrizations"));
    }
    Ok(e)
}

/// Parses curve JSON: malformed input is [`Error::Parse`], a well-formed but
/// invalid curve is [`Error::Validation`].
pub fn parse_curve(text: &str) -> Result<MarkedCurve> {
    let w: CurveWire = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    w.into_curve()
}

pub fn curve_from_value(v: serde_json::Value) -> Result<MarkedCurve> {
    let w: CurveWire = serde_json::from_value(v).map_err(|e| Error::Parse(e.to_string()))?;
    w.into_curve()
}

/// Parses embedding JSON, checking it against the complete linear system.
pub fn parse_embedding(text: &str) -> Result<EmbeddedCurve> {
    let v: serde_json::Value = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    embedding_from_value(v)
}

pub fn embedding_from_value(v: serde_json::Value) -> Result<EmbeddedCurve> {
    let w: EmbeddingWire = serde_json::from_value(v).map_err(|e| Error::Parse(e.to_string()))?;
    embedding_from_wire(w)
}
