#![allow(dead_code)]

use embcurve_core::curves::{MarkedCurve, Point};
use embcurve_core::exactla::{q, qf, Rational};
use embcurve_core::Permutation;

pub fn pt(c: usize, p: i64) -> Point {
    Point::new(c, q(p))
}

/// One component with a mark at each parameter, labels in order.
pub fn line(params: &[i64]) -> MarkedCurve {
    MarkedCurve::new(1, vec![], params.iter().map(|&p| pt(0, p)).collect()).unwrap()
}

/// Same, with rational parameters `num/den`.
pub fn line_q(params: &[(i64, i64)]) -> MarkedCurve {
    MarkedCurve::new(1, vec![], params.iter().map(|&(n, d)| Point::new(0, qf(n, d))).collect()).unwrap()
}

pub const PARAM_SETS: [&[i64]; 6] = [
    &[0, 1, -1, 2, -2, 3],
    &[1, 2, 3, 4, 5, 6],
    &[0, 2, -3, 5, 7, -1],
    &[-1, 4, 0, -4, 1, 6],
    &[3, -2, 1, 0, 5, -5],
    &[2, 0, -1, -3, 4, 1],
];

/// A `(0, n)` line drawn from one of the parameter sets.
pub fn piece(n: usize, set: usize) -> MarkedCurve {
    line(&PARAM_SETS[set % PARAM_SETS.len()][..n])
}

/// `π ∘_i ρ` read off the block pictures: position `j` of the source is
/// either an untouched slot or an entry of the expanded block; the target is
/// laid out by listing blocks in the order `π` puts them.
pub fn block_oracle(pi: &Permutation, i: usize, rho: &Permutation) -> Permutation {
    let (m, n) = (pi.len(), rho.len());
    // target block sizes, in target order
    let size_at = |slot: usize| if slot == i { n } else { 1 };
    let mut start = vec![0usize; m + 1];
    let mut inverse = vec![0usize; m + 1];
    for s in 1..=m {
        inverse[pi.apply(s)] = s;
    }
    let mut acc = 1;
    for t in 1..=m {
        start[inverse[t]] = acc;
        acc += size_at(inverse[t]);
    }
    let mut out = Vec::new();
    for s in 1..=m {
        if s == i {
            for a in 1..=n {
                out.push(start[s] + rho.apply(a) - 1);
            }
        } else {
            out.push(start[s]);
        }
    }
    Permutation::new(out).unwrap()
}

pub fn rationals(v: &[i64]) -> Vec<Rational> {
    v.iter().map(|&x| q(x)).collect()
}
