//! Dense univariate and bivariate polynomials over the rationals, with the
//! gcd and resultant routines used by the injectivity certificates.

use num_traits::{One, Zero};

use crate::exactla::{q, Rational};

/// Univariate polynomial, coefficients in ascending degree, no trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct UniPoly {
    coeffs: Vec<Rational>,
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        UniPoly::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        UniPoly::new(vec![c])
    }

    /// `x - c`.
    pub fn linear_root(c: &Rational) -> Self {
        UniPoly::new(vec![-c.clone(), Rational::one()])
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Coefficient of `x^i`, zero past the degree.
    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn lead(&self) -> Rational {
        self.coeffs.last().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs.iter().rev().fold(Rational::zero(), |acc, c| acc * x + c)
    }

    pub fn add(&self, o: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        UniPoly::new((0..n).map(|i| self.coeff(i) + o.coeff(i)).collect())
    }

    pub fn sub(&self, o: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        UniPoly::new((0..n).map(|i| self.coeff(i) - o.coeff(i)).collect())
    }

    pub fn mul(&self, o: &UniPoly) -> UniPoly {
        if self.is_zero() || o.is_zero() {
            return UniPoly::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        UniPoly::new(out)
    }

    pub fn scale(&self, c: &Rational) -> UniPoly {
        UniPoly::new(self.coeffs.iter().map(|x| x * c).collect())
    }

    pub fn pow(&self, e: usize) -> UniPoly {
        (0..e).fold(UniPoly::one(), |acc, _| acc.mul(self))
    }

    pub fn derivative(&self) -> UniPoly {
        UniPoly::new(self.coeffs.iter().enumerate().skip(1).map(|(i, c)| c * q(i as i64)).collect())
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn divrem(&self, d: &UniPoly) -> (UniPoly, UniPoly) {
        let dd = d.degree().expect("division by the zero polynomial");
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (UniPoly::zero(), self.clone());
        }
        let inv = d.lead().recip();
        let mut quo = vec![Rational::zero(); rem.len() - dd];
        for k in (0..quo.len()).rev() {
            let c = &rem[k + dd] * &inv;
            if c.is_zero() {
                continue;
            }
            for (j, dc) in d.coeffs.iter().enumerate() {
                rem[k + j] -= &c * dc;
            }
            quo[k] = c;
        }
        (UniPoly::new(quo), UniPoly::new(rem))
    }

    pub fn monic(&self) -> UniPoly {
        if self.is_zero() {
            return UniPoly::zero();
        }
        self.scale(&self.lead().recip())
    }

    /// Monic gcd; `gcd(0, 0) = 0`.
    pub fn gcd(&self, o: &UniPoly) -> UniPoly {
        let (mut a, mut b) = (self.monic(), o.monic());
        while !b.is_zero() {
            let r = a.divrem(&b).1;
            a = b;
            b = r.monic();
        }
        a
    }

    pub fn squarefree(&self) -> UniPoly {
        if self.is_constant() {
            return self.monic();
        }
        let g = self.gcd(&self.derivative());
        self.divrem(&g).0.monic()
    }

    /// `w^d p(1/w)`, the polynomial in the chart at infinity for a form of degree `d`.
    pub fn reversed(&self, d: usize) -> UniPoly {
        let mut c: Vec<Rational> = (0..=d).map(|i| self.coeff(i)).collect();
        c.reverse();
        UniPoly::new(c)
    }

    /// Removes every factor `x - r` for `r` in `roots`, with multiplicity.
    pub fn strip_roots(&self, roots: &[Rational]) -> UniPoly {
        let mut p = self.clone();
        for r in roots {
            let lin = UniPoly::linear_root(r);
            while !p.is_zero() && p.eval(r).is_zero() {
                p = p.divrem(&lin).0;
            }
        }
        p
    }
}

/// Resultant of two univariate polynomials by the Euclidean recurrence.
pub fn resultant(a: &UniPoly, b: &UniPoly) -> Rational {
    let (Some(_), Some(_)) = (a.degree(), b.degree()) else {
        return Rational::zero();
    };
    let mut a = a.clone();
    let mut b = b.clone();
    let mut acc = Rational::one();
    loop {
        let m = a.degree().unwrap();
        let n = b.degree().unwrap();
        if n == 0 {
            return acc * num_traits::pow(b.lead(), m);
        }
        let r = a.divrem(&b).1;
        let Some(dr) = r.degree() else {
            return Rational::zero();
        };
        // res(a,b) = (-1)^{mn} lc(b)^{m - deg r} res(b, r)
        if (m * n) % 2 == 1 {
            acc = -acc;
        }
        acc *= num_traits::pow(b.lead(), m - dr);
        a = b;
        b = r;
    }
}

/// Interpolating polynomial through `(xs[i], ys[i])` by Newton's divided differences.
pub fn interpolate(xs: &[Rational], ys: &[Rational]) -> UniPoly {
    let n = xs.len();
    let mut dd = ys.to_vec();
    for level in 1..n {
        for i in (level..n).rev() {
            dd[i] = (&dd[i] - &dd[i - 1]) / (&xs[i] - &xs[i - level]);
        }
    }
    let mut p = UniPoly::zero();
    for i in (0..n).rev() {
        p = p.mul(&UniPoly::linear_root(&xs[i])).add(&UniPoly::constant(dd[i].clone()));
    }
    p
}

/// Polynomial in `(s, t)`, stored as coefficients of ascending powers of `t`,
/// each a polynomial in `s`.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct BiPoly {
    t_coeffs: Vec<UniPoly>,
}

impl BiPoly {
    pub fn new(mut t_coeffs: Vec<UniPoly>) -> Self {
        while t_coeffs.last().is_some_and(UniPoly::is_zero) {
            t_coeffs.pop();
        }
        BiPoly { t_coeffs }
    }

    pub fn t_coeffs(&self) -> &[UniPoly] {
        &self.t_coeffs
    }

    pub fn zero() -> Self {
        BiPoly { t_coeffs: Vec::new() }
    }

    /// `f(s) g(t)`.
    pub fn product(f_s: &UniPoly, g_t: &UniPoly) -> Self {
        BiPoly::new(g_t.coeffs().iter().map(|c| f_s.scale(c)).collect())
    }

    /// `s - t`.
    pub fn diagonal() -> Self {
        BiPoly::new(vec![UniPoly::new(vec![q(0), q(1)]), UniPoly::constant(q(-1))])
    }

    pub fn is_zero(&self) -> bool {
        self.t_coeffs.is_empty()
    }

    pub fn deg_t(&self) -> Option<usize> {
        self.t_coeffs.len().checked_sub(1)
    }

    pub fn deg_s(&self) -> usize {
        self.t_coeffs.iter().filter_map(UniPoly::degree).max().unwrap_or(0)
    }

    pub fn is_constant(&self) -> bool {
        self.t_coeffs.len() <= 1 && self.t_coeffs.first().is_none_or(UniPoly::is_constant)
    }

    pub fn lead_t(&self) -> UniPoly {
        self.t_coeffs.last().cloned().unwrap_or_default()
    }

    pub fn add(&self, o: &BiPoly) -> BiPoly {
        let n = self.t_coeffs.len().max(o.t_coeffs.len());
        BiPoly::new((0..n).map(|i| self.tc(i).add(&o.tc(i))).collect())
    }

    pub fn sub(&self, o: &BiPoly) -> BiPoly {
        let n = self.t_coeffs.len().max(o.t_coeffs.len());
        BiPoly::new((0..n).map(|i| self.tc(i).sub(&o.tc(i))).collect())
    }

    pub fn scale(&self, c: &Rational) -> BiPoly {
        BiPoly::new(self.t_coeffs.iter().map(|p| p.scale(c)).collect())
    }

    fn tc(&self, i: usize) -> UniPoly {
        self.t_coeffs.get(i).cloned().unwrap_or_default()
    }

    fn mul_s(&self, f: &UniPoly) -> BiPoly {
        BiPoly::new(self.t_coeffs.iter().map(|p| p.mul(f)).collect())
    }

    /// Substitutes `s = s0`, giving a polynomial in `t`.
    pub fn eval_s(&self, s0: &Rational) -> UniPoly {
        UniPoly::new(self.t_coeffs.iter().map(|p| p.eval(s0)).collect())
    }

    /// Substitutes `t = t0`, giving a polynomial in `s`.
    pub fn eval_t(&self, t0: &Rational) -> UniPoly {
        self.t_coeffs.iter().rev().fold(UniPoly::zero(), |acc, p| acc.scale(t0).add(p))
    }

    /// Exact quotient by `s - t`, or `None` when it does not divide.
    pub fn div_diagonal(&self) -> Option<BiPoly> {
        // divide by (t - s), which is monic in t, then negate
        let Some(d) = self.deg_t() else {
            return Some(BiPoly::zero());
        };
        let mut rem = self.t_coeffs.clone();
        let s = UniPoly::new(vec![q(0), q(1)]);
        let mut quo = vec![UniPoly::zero(); d.max(1)];
        for k in (1..=d).rev() {
            let c = rem[k].clone();
            // c t^k = c t^{k-1} (t - s) + c s t^{k-1}
            rem[k - 1] = rem[k - 1].add(&c.mul(&s));
            rem[k] = UniPoly::zero();
            quo[k - 1] = c;
        }
        if !rem[0].is_zero() {
            return None;
        }
        Some(BiPoly::new(quo).scale(&q(-1)))
    }

    /// gcd of the `s`-coefficients.
    pub fn content(&self) -> UniPoly {
        self.t_coeffs.iter().fold(UniPoly::zero(), |g, p| g.gcd(p))
    }

    pub fn primitive_part(&self) -> BiPoly {
        if self.is_zero() {
            return BiPoly::zero();
        }
        let c = self.content();
        BiPoly::new(self.t_coeffs.iter().map(|p| p.divrem(&c).0).collect())
    }

    /// Pseudo-remainder of `self` by `d` with respect to `t`.
    fn prem(&self, d: &BiPoly) -> BiPoly {
        let dd = d.deg_t().expect("nonzero divisor");
        let lc = d.lead_t();
        let mut r = self.clone();
        while let Some(dr) = r.deg_t() {
            if dr < dd {
                break;
            }
            let lr = r.lead_t();
            let mut shifted = vec![UniPoly::zero(); dr - dd];
            shifted.extend(d.t_coeffs.iter().map(|p| p.mul(&lr)));
            r = r.mul_s(&lc).sub(&BiPoly::new(shifted));
        }
        r
    }

    /// gcd in `Q[s, t]` by the primitive remainder sequence, normalised so the
    /// leading coefficient is monic in `s`.
    pub fn gcd(&self, o: &BiPoly) -> BiPoly {
        if self.is_zero() {
            return o.normalized();
        }
        if o.is_zero() {
            return self.normalized();
        }
        let c = self.content().gcd(&o.content());
        let (mut a, mut b) = (self.primitive_part(), o.primitive_part());
        if a.deg_t() < b.deg_t() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            if b.deg_t() == Some(0) {
                a = BiPoly::new(vec![UniPoly::one()]);
                break;
            }
            let r = a.prem(&b);
            a = b;
            b = r.primitive_part();
        }
        a.primitive_part().mul_s(&c).normalized()
    }

    fn normalized(&self) -> BiPoly {
        if self.is_zero() {
            return BiPoly::zero();
        }
        self.scale(&self.lead_t().lead().recip())
    }
}

/// `Res_t(a, b)` as a polynomial in `s`, by evaluation at integer points and
/// interpolation.
pub fn resultant_t(a: &BiPoly, b: &BiPoly) -> UniPoly {
    let (Some(da), Some(db)) = (a.deg_t(), b.deg_t()) else {
        return UniPoly::zero();
    };
    if da == 0 && db == 0 {
        return UniPoly::one();
    }
    let bound = da * b.deg_s() + db * a.deg_s();
    let (la, lb) = (a.lead_t(), b.lead_t());
    let mut xs = Vec::with_capacity(bound + 1);
    let mut ys = Vec::with_capacity(bound + 1);
    let mut k: i64 = 0;
    while xs.len() <= bound {
        let x = q(if k % 2 == 0 { k / 2 } else { -(k + 1) / 2 });
        k += 1;
        if la.eval(&x).is_zero() || lb.eval(&x).is_zero() {
            continue;
        }
        ys.push(resultant(&a.eval_s(&x), &b.eval_s(&x)));
        xs.push(x);
    }
    interpolate(&xs, &ys)
}
