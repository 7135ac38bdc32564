//! Symmetric-group bookkeeping for operad compositions.
//!
//! [`Permutation`] lives on `{1,…,n}` and [`PlusPermutation`] on `{0,…,n}`;
//! both are stored in one-line notation.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Element of `S_n`, `one_line[j - 1] = π(j)`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Permutation {
    one_line: Vec<usize>,
}

impl TryFrom<Vec<usize>> for Permutation {
    type Error = Error;
    fn try_from(v: Vec<usize>) -> Result<Self> {
        Permutation::new(v)
    }
}

impl From<Permutation> for Vec<usize> {
    fn from(p: Permutation) -> Self {
        p.one_line
    }
}

impl Permutation {
    pub fn new(one_line: Vec<usize>) -> Result<Self> {
        let n = one_line.len();
        let mut seen = vec![false; n + 1];
        for &x in &one_line {
            if x == 0 || x > n || seen[x] {
                return Err(Error::validation(format!("{one_line:?} is not a permutation of 1..={n}")));
            }
            seen[x] = true;
        }
        Ok(Permutation { one_line })
    }

    pub fn identity(n: usize) -> Self {
        Permutation { one_line: (1..=n).collect() }
    }

    /// Transposition of `a` and `b` in `S_n`.
    pub fn transposition(n: usize, a: usize, b: usize) -> Result<Self> {
        if a == 0 || b == 0 || a > n || b > n {
            return Err(Error::index(format!("transposition ({a} {b}) outside 1..={n}")));
        }
        let mut p = Permutation::identity(n);
        p.one_line.swap(a - 1, b - 1);
        Ok(p)
    }

    pub fn len(&self) -> usize {
        self.one_line.len()
    }

    pub fn is_empty(&self) -> bool {
        self.one_line.is_empty()
    }

    pub fn one_line(&self) -> &[usize] {
        &self.one_line
    }

    /// `π(j)` for `j` in `1..=n`.
    pub fn apply(&self, j: usize) -> usize {
        self.one_line[j - 1]
    }

    /// `(self ∘ other)(j) = self(other(j))`.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation> {
        if self.len() != other.len() {
            return Err(Error::Dimension(format!("S_{} vs S_{}", self.len(), other.len())));
        }
        Ok(Permutation { one_line: other.one_line.iter().map(|&j| self.apply(j)).collect() })
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.len()];
        for (j, &v) in self.one_line.iter().enumerate() {
            inv[v - 1] = j + 1;
        }
        Permutation { one_line: inv }
    }

    pub fn is_identity(&self) -> bool {
        self.one_line.iter().enumerate().all(|(j, &v)| v == j + 1)
    }

    /// Image under `S_n ⊂ S_{n+}`, fixing `0`.
    pub fn to_plus(&self) -> PlusPermutation {
        let mut v = Vec::with_capacity(self.len() + 1);
        v.push(0);
        v.extend_from_slice(&self.one_line);
        PlusPermutation { one_line: v }
    }

    /// All of `S_n` in lexicographic order of one-line notation.
    pub fn all(n: usize) -> Vec<Permutation> {
        let mut out = Vec::new();
        let mut cur: Vec<usize> = (1..=n).collect();
        loop {
            out.push(Permutation { one_line: cur.clone() });
            // next lexicographic permutation
            let Some(i) = (1..cur.len()).rev().find(|&i| cur[i - 1] < cur[i]) else {
                break;
            };
            let j = (i..cur.len()).rev().find(|&j| cur[j] > cur[i - 1]).unwrap();
            cur.swap(i - 1, j);
            cur[i..].reverse();
        }
        out
    }
}

/// Element of `S_{n+}`, the permutations of `{0,…,n}`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct PlusPermutation {
    one_line: Vec<usize>,
}

impl PlusPermutation {
    pub fn new(one_line: Vec<usize>) -> Result<Self> {
        let len = one_line.len();
        if len == 0 {
            return Err(Error::validation("S_{n+} acts on at least the letter 0"));
        }
        let mut seen = vec![false; len];
        for &x in &one_line {
            if x >= len || seen[x] {
                return Err(Error::validation(format!("{one_line:?} is not a permutation of 0..{len}")));
            }
            seen[x] = true;
        }
        Ok(PlusPermutation { one_line })
    }

    pub fn identity(n: usize) -> Self {
        PlusPermutation { one_line: (0..=n).collect() }
    }

    /// `n`, so the permutation acts on `n + 1` letters.
    pub fn n(&self) -> usize {
        self.one_line.len() - 1
    }

    pub fn one_line(&self) -> &[usize] {
        &self.one_line
    }

    pub fn apply(&self, j: usize) -> usize {
        self.one_line[j]
    }

    pub fn compose(&self, other: &PlusPermutation) -> Result<PlusPermutation> {
        if self.n() != other.n() {
            return Err(Error::Dimension(format!("S_{}+ vs S_{}+", self.n(), other.n())));
        }
        Ok(PlusPermutation { one_line: other.one_line.iter().map(|&j| self.apply(j)).collect() })
    }

    pub fn inverse(&self) -> PlusPermutation {
        let mut inv = vec![0; self.one_line.len()];
        for (j, &v) in self.one_line.iter().enumerate() {
            inv[v] = j;
        }
        PlusPermutation { one_line: inv }
    }

    /// Conjugates to a permutation of `{1,…,n+1}` via `ℓ ↦ ℓ + 1`.
    pub fn shifted(&self) -> Permutation {
        Permutation { one_line: self.one_line.iter().map(|&v| v + 1).collect() }
    }
}

impl Serialize for PlusPermutation {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Wire<'a> {
            plus: bool,
            one_line: &'a [usize],
        }
        Wire { plus: true, one_line: &self.one_line }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for PlusPermutation {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Wire {
            plus: bool,
            one_line: Vec<usize>,
        }
        let w = Wire::deserialize(d)?;
        if !w.plus {
            return Err(serde::de::Error::custom("S_{n+} payloads carry \"plus\": true"));
        }
        PlusPermutation::new(w.one_line).map_err(serde::de::Error::custom)
    }
}

/// `π ∘_i ρ ∈ S_{m+n-1}`: slot `i` is expanded into a block of size `n`
/// ordered by `ρ`, and the blocks are ordered by `π`.
pub fn compose_block(pi: &Permutation, i: usize, rho: &Permutation) -> Result<Permutation> {
    let m = pi.len();
    let n = rho.len();
    if m == 0 || n == 0 {
        return Err(Error::index("block composition needs m, n >= 1"));
    }
    if i == 0 || i > m {
        return Err(Error::index(format!("slot {i} outside 1..={m}")));
    }
    let pi_i = pi.apply(i);
    let one_line = (1..=m + n - 1)
        .map(|j| {
            if j < i {
                let v = pi.apply(j);
                if v < pi_i { v } else { v + n - 1 }
            } else if j < i + n {
                pi_i + rho.apply(j - i + 1) - 1
            } else {
                let v = pi.apply(j - n + 1);
                if v < pi_i { v } else { v + n - 1 }
            }
        })
        .collect();
    Ok(Permutation { one_line })
}

/// The cycle `(0 1 ⋯ n)`.
pub fn tau(n: usize) -> PlusPermutation {
    PlusPermutation { one_line: (0..=n).map(|j| (j + 1) % (n + 1)).collect() }
}

/// Order-preserving bijection `{1,…,n} ∖ {i,j} → {1,…,n-2}`; `None` on `i`, `j`.
pub fn close_up(i: usize, j: usize, l: usize) -> Option<usize> {
    if l == i || l == j {
        return None;
    }
    Some(l - usize::from(l > i) - usize::from(l > j))
}

/// `ρ∖{i,j} ∈ S_{n-2}`: `ρ` restricted to the complement of `{i, j}`,
/// read through the order-preserving identifications with `{1,…,n-2}`.
pub fn restrict_excluding(rho: &Permutation, i: usize, j: usize) -> Result<Permutation> {
    let n = rho.len();
    if n < 2 {
        return Err(Error::index("restriction needs n >= 2"));
    }
    if i == j {
        return Err(Error::index(format!("excluded labels coincide ({i})")));
    }
    if i == 0 || j == 0 || i > n || j > n {
        return Err(Error::index(format!("labels {i}, {j} outside 1..={n}")));
    }
    let (ri, rj) = (rho.apply(i), rho.apply(j));
    let one_line = (1..=n)
        .filter(|&l| l != i && l != j)
        .map(|l| close_up(ri, rj, rho.apply(l)).expect("ρ is a bijection"))
        .collect();
    Ok(Permutation { one_line })
}
