//! Word-size modular arithmetic used to get exact integer resultants by
//! Chinese remaindering.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::exactla::Rational;
use crate::poly::{BiPoly, UniPoly};

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut a: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    a %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, a, m);
        }
        a = mul_mod(a, a, m);
        e >>= 1;
    }
    r
}

fn inv_mod(a: u64, m: u64) -> u64 {
    pow_mod(a, m - 2, m)
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let (mut d, mut s) = (n - 1, 0);
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Primes below `2^62`, descending.
pub struct Primes(u64);

impl Default for Primes {
    fn default() -> Self {
        Primes(1u64 << 62)
    }
}

impl Iterator for Primes {
    type Item = u64;

    fn next(&mut self) -> Option<u64> {
        loop {
            self.0 -= 1;
            if is_prime(self.0) {
                return Some(self.0);
            }
        }
    }
}

pub fn reduce(x: &BigInt, m: u64) -> u64 {
    let r = x.mod_floor(&BigInt::from(m));
    r.to_u64_digits().1.first().copied().unwrap_or(0)
}

/// Integer primitive multiple of a rational polynomial, as `BigInt` coefficients.
pub fn integer_coefficients(p: &UniPoly) -> Vec<BigInt> {
    let l = p.coeffs().iter().fold(BigInt::one(), |l, c| l.lcm(c.denom()));
    let ints: Vec<BigInt> = p.coeffs().iter().map(|c| (c * Rational::from(l.clone())).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |g, c| g.gcd(c));
    if g.is_zero() { ints } else { ints.into_iter().map(|c| c / &g).collect() }
}

/// Integer multiple of a bivariate polynomial, laid out `[t power][s power]`.
fn integer_bi(p: &BiPoly) -> Vec<Vec<BigInt>> {
    let l = p
        .t_coeffs()
        .iter()
        .flat_map(|u| u.coeffs())
        .fold(BigInt::one(), |l, c| l.lcm(c.denom()));
    let lq = Rational::from(l);
    p.t_coeffs()
        .iter()
        .map(|u| u.coeffs().iter().map(|c| (c * &lq).to_integer()).collect())
        .collect()
}

fn det_mod(mut a: Vec<Vec<u64>>, m: u64) -> u64 {
    let n = a.len();
    let mut det = 1u64;
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| a[r][c] != 0) else {
            return 0;
        };
        if p != c {
            a.swap(p, c);
            det = (m - det) % m;
        }
        det = mul_mod(det, a[c][c], m);
        let inv = inv_mod(a[c][c], m);
        for r in c + 1..n {
            if a[r][c] == 0 {
                continue;
            }
            let f = mul_mod(a[r][c], inv, m);
            for k in c..n {
                let sub = mul_mod(f, a[c][k], m);
                a[r][k] = (a[r][k] + m - sub) % m;
            }
        }
    }
    det
}

/// Sylvester determinant of `a`, `b` in `t` with formal degrees `len - 1`.
fn sylvester_mod(a: &[u64], b: &[u64], m: u64) -> u64 {
    let (da, db) = (a.len() - 1, b.len() - 1);
    let n = da + db;
    let mut rows = vec![vec![0u64; n]; n];
    for r in 0..db {
        for (i, &c) in a.iter().enumerate() {
            rows[r][r + da - i] = c;
        }
    }
    for r in 0..da {
        for (i, &c) in b.iter().enumerate() {
            rows[db + r][r + db - i] = c;
        }
    }
    det_mod(rows, m)
}

fn eval_mod(c: &[u64], x: u64, m: u64) -> u64 {
    c.iter().rev().fold(0, |acc, &v| (mul_mod(acc, x, m) + v) % m)
}

/// Coefficients of the polynomial through `(i, ys[i])`, `i = 0..n`, mod `m`.
fn interpolate_mod(ys: &[u64], m: u64) -> Vec<u64> {
    let n = ys.len();
    let mut dd = ys.to_vec();
    for level in 1..n {
        let inv = inv_mod(level as u64 % m, m);
        for i in (level..n).rev() {
            dd[i] = mul_mod((dd[i] + m - dd[i - 1]) % m, inv, m);
        }
    }
    let mut p = vec![0u64; n];
    for i in (0..n).rev() {
        // p <- p * (x - i) + dd[i]
        let mut next = vec![0u64; n];
        for k in 0..n {
            if p[k] == 0 {
                continue;
            }
            if k + 1 < n {
                next[k + 1] = (next[k + 1] + p[k]) % m;
            }
            next[k] = (next[k] + m - mul_mod(p[k], i as u64 % m, m)) % m;
        }
        next[0] = (next[0] + dd[i]) % m;
        p = next;
    }
    p
}

fn l1(c: &[Vec<BigInt>]) -> BigInt {
    c.iter().flatten().map(|x| x.abs()).sum()
}

/// `Res_t(a, b)` up to a nonzero rational factor, computed over the integers
/// by evaluation mod word primes and Chinese remaindering.
pub fn resultant_t_crt(a: &BiPoly, b: &BiPoly) -> UniPoly {
    let (Some(da), Some(db)) = (a.deg_t(), b.deg_t()) else {
        return UniPoly::zero();
    };
    let (ai, bi) = (integer_bi(a), integer_bi(b));
    let deg = da * b.deg_s() + db * a.deg_s();
    let bound: BigInt = BigInt::from(2) * num_traits::pow(l1(&ai), db) * num_traits::pow(l1(&bi), da) + 1;
    let mut modulus = BigInt::one();
    let mut acc = vec![BigInt::zero(); deg + 1];
    for p in Primes::default() {
        if modulus > bound {
            break;
        }
        let red = |c: &[Vec<BigInt>]| -> Vec<Vec<u64>> { c.iter().map(|u| u.iter().map(|x| reduce(x, p)).collect()).collect() };
        let (ap, bp) = (red(&ai), red(&bi));
        let ys: Vec<u64> = (0..=deg as u64)
            .map(|x| {
                let at: Vec<u64> = ap.iter().map(|u| eval_mod(u, x, p)).collect();
                let bt: Vec<u64> = bp.iter().map(|u| eval_mod(u, x, p)).collect();
                sylvester_mod(&at, &bt, p)
            })
            .collect();
        let coeffs = interpolate_mod(&ys, p);
        // Garner step: acc <- acc + modulus * ((r - acc) / modulus mod p)
        let pb = BigInt::from(p);
        let minv = inv_mod(reduce(&modulus, p), p);
        for (x, &r) in acc.iter_mut().zip(&coeffs) {
            let diff = (r + p - reduce(x, p)) % p;
            let h = mul_mod(diff, minv, p);
            *x += &modulus * BigInt::from(h);
        }
        modulus *= pb;
    }
    let half = &modulus / 2;
    UniPoly::new(
        acc.into_iter()
            .map(|x| Rational::from(if x > half { x - &modulus } else { x }))
            .collect(),
    )
}

/// Degree of `gcd(polys)` over `F_p` for a prime not dividing the leading
/// coefficient of `polys[0]`; an upper bound for the degree over `Q`.
pub fn gcd_degree_bound(polys: &[UniPoly]) -> Option<usize> {
    let ints: Vec<Vec<BigInt>> = polys.iter().map(integer_coefficients).collect();
    let first = ints.first()?;
    let lead = first.iter().rev().find(|c| !c.is_zero())?;
    let p = Primes::default().find(|&p| reduce(lead, p) != 0)?;
    let mut g: Vec<u64> = Vec::new();
    for c in &ints {
        let mut r: Vec<u64> = c.iter().map(|x| reduce(x, p)).collect();
        trim(&mut r);
        g = gcd_mod(g, r, p);
        if g.len() == 1 {
            return Some(0);
        }
    }
    g.len().checked_sub(1)
}

fn trim(v: &mut Vec<u64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

fn gcd_mod(mut a: Vec<u64>, mut b: Vec<u64>, m: u64) -> Vec<u64> {
    while !b.is_empty() {
        let inv = inv_mod(*b.last().unwrap(), m);
        while a.len() >= b.len() {
            let f = mul_mod(*a.last().unwrap(), inv, m);
            let shift = a.len() - b.len();
            for (i, &c) in b.iter().enumerate() {
                a[shift + i] = (a[shift + i] + m - mul_mod(f, c, m)) % m;
            }
            trim(&mut a);
        }
        std::mem::swap(&mut a, &mut b);
    }
    a
}
