use std::cmp::Ordering;
use std::fmt;

/// Exponent vector `p` of a monomial `t^p = t_1^{p_1} ... t_d^{p_d}`.
///
/// Ordered by total degree, then so that `t_1` precedes `t_2` within a degree; this is the
/// same order as [`crate::poly::Monomial`].
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MultiIndex(Vec<u32>);

impl MultiIndex {
    pub fn new(exps: Vec<u32>) -> Self {
        MultiIndex(exps)
    }

    pub fn zero(d: usize) -> Self {
        MultiIndex(vec![0; d])
    }

    pub fn unit(d: usize, i: usize) -> Self {
        let mut v = vec![0; d];
        v[i] = 1;
        MultiIndex(v)
    }

    pub fn exps(&self) -> &[u32] {
        &self.0
    }

    pub fn dims(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn add(&self, other: &MultiIndex) -> MultiIndex {
        MultiIndex(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `self - other` when `other <= self` componentwise.
    pub fn checked_sub(&self, other: &MultiIndex) -> Option<MultiIndex> {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<_>>>()
            .map(MultiIndex)
    }

    /// `p! = p_1! ... p_d!` as an integer.
    pub fn factorial(&self) -> num_bigint::BigInt {
        let mut acc = num_bigint::BigInt::from(1);
        for &e in &self.0 {
            for k in 2..=e {
                acc *= k;
            }
        }
        acc
    }

    /// All multi-indices of `d` variables with degree at most `r`, in increasing order.
    pub fn all(d: usize, r: u32) -> Vec<MultiIndex> {
        let mut out = Vec::with_capacity(monomial_count(d, r));
        for deg in 0..=r {
            let mut cur = vec![0u32; d];
            of_degree(d, deg, 0, &mut cur, &mut out);
        }
        out
    }

    /// Position of `self` in [`MultiIndex::all`] for any `r >= self.degree()`.
    pub fn position(&self) -> usize {
        let d = self.0.len();
        let deg = self.degree();
        let below = if deg == 0 {
            0
        } else {
            monomial_count(d, deg - 1)
        };
        // rank within degree: count lex-greater vectors of the same degree
        let mut rank = 0usize;
        let mut remaining = deg;
        for (i, &e) in self.0.iter().enumerate() {
            if i + 1 == d {
                break;
            }
            // vectors agreeing so far but with a larger entry at position i
            for larger in (e + 1)..=remaining {
                rank += compositions(d - i - 1, remaining - larger);
            }
            remaining -= e;
        }
        below + rank
    }
}

fn of_degree(d: usize, deg: u32, i: usize, cur: &mut Vec<u32>, out: &mut Vec<MultiIndex>) {
    if d == 0 {
        if deg == 0 {
            out.push(MultiIndex(Vec::new()));
        }
        return;
    }
    if i + 1 == d {
        cur[i] = deg;
        out.push(MultiIndex(cur.clone()));
        cur[i] = 0;
        return;
    }
    for e in (0..=deg).rev() {
        cur[i] = e;
        of_degree(d, deg - e, i + 1, cur, out);
    }
    cur[i] = 0;
}

/// Number of exponent vectors of `k` variables with degree exactly `n`.
fn compositions(k: usize, n: u32) -> usize {
    if k == 0 {
        return usize::from(n == 0);
    }
    binomial(n as usize + k - 1, k - 1)
}

fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: usize = 1;
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// `|P^d_r| = C(r + d, d)`, the number of monomials of degree at most `r` in `d` variables.
pub fn monomial_count(d: usize, r: u32) -> usize {
    binomial(r as usize + d, d)
}

impl Ord for MultiIndex {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| other.0.cmp(&self.0))
    }
}

impl PartialOrd for MultiIndex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}
