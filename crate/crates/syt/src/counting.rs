//! Exact counting of straight and skew standard Young tableaux, plus a
//! brute-force enumeration stream used as the correctness oracle.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::shapes::{Cell, Partition};

/// Default cap (in cells) on brute-force enumeration.
pub const DEFAULT_ENUM_CAP: usize = 18;

/// Factorial table, grown on demand. One instance per computation.
pub(crate) struct Factorials {
    cache: Vec<BigInt>,
}

impl Factorials {
    pub fn new() -> Self {
        Factorials { cache: vec![BigInt::one()] }
    }

    pub fn get(&mut self, n: usize) -> &BigInt {
        while self.cache.len() <= n {
            let k = self.cache.len();
            let next = &self.cache[k - 1] * BigInt::from(k);
            self.cache.push(next);
        }
        &self.cache[n]
    }
}

/// Young-Frobenius:
/// `f = n! / prod_t (lambda_t + k - t)! * prod_{t<u} (lambda_t - lambda_u + u - t)`.
pub fn count_syt_yf(lambda: &Partition) -> BigInt {
    count_syt_yf_with(lambda, &mut Factorials::new())
}

pub(crate) fn count_syt_yf_with(lambda: &Partition, fac: &mut Factorials) -> BigInt {
    let k = lambda.len();
    let parts = lambda.parts();
    let mut num = fac.get(lambda.size()).clone();
    for t in 0..k {
        for u in t + 1..k {
            num *= BigInt::from((parts[t] + u) as i64 - (parts[u] + t) as i64);
        }
    }
    let mut den = BigInt::one();
    for t in 0..k {
        den *= fac.get(parts[t] + k - 1 - t);
    }
    num / den
}

/// Hook length of cell `[i,j]`: arm + leg + 1.
pub fn hook_length(lambda: &Partition, c: Cell) -> Result<usize> {
    if !lambda.contains_cell(c) {
        return Err(Error::CellOutsideShape { cell: c, shape: lambda.clone() });
    }
    let conj = lambda.conjugate();
    Ok((lambda.part(c.row) - c.col) + (conj.part(c.col) - c.row) + 1)
}

/// Hook length formula: `n! / prod_c hook(c)`.
pub fn count_syt_hook(lambda: &Partition) -> BigInt {
    let mut fac = Factorials::new();
    let mut den = BigInt::one();
    for c in lambda.cells() {
        den *= BigInt::from(hook_length(lambda, c).expect("cell of own shape"));
    }
    fac.get(lambda.size()).clone() / den
}

/// Number of lattice walks from `mu` to `lambda` with unit coordinate steps:
/// the multinomial `(sum(lambda - mu))! / prod (lambda_t - mu_t)!`, or 0 if
/// any coordinate difference is negative.
pub fn walk_count(mu: &[i64], lambda: &[i64]) -> BigInt {
    walk_count_with(mu, lambda, &mut Factorials::new())
}

pub(crate) fn walk_count_with(mu: &[i64], lambda: &[i64], fac: &mut Factorials) -> BigInt {
    debug_assert_eq!(mu.len(), lambda.len());
    let mut diffs = Vec::with_capacity(mu.len());
    for (&m, &l) in mu.iter().zip(lambda) {
        let d = l - m;
        if d < 0 {
            return BigInt::zero();
        }
        diffs.push(d as usize);
    }
    let total: usize = diffs.iter().sum();
    let mut den = BigInt::one();
    for &d in &diffs {
        den *= fac.get(d);
    }
    fac.get(total) / den
}

/// Number of skew standard Young tableaux `f^{lambda/nu}` by the reflection
/// method: signed sum over the k! mirror images `mu(sigma)_t = nu_{sigma(t)}
/// - sigma(t) + t` of the walk counts from `mu(sigma)` to `lambda`.
pub fn count_skew(lambda: &Partition, nu: &Partition) -> Result<BigInt> {
    count_skew_with(lambda, nu, &mut Factorials::new())
}

pub(crate) fn count_skew_with(
    lambda: &Partition,
    nu: &Partition,
    fac: &mut Factorials,
) -> Result<BigInt> {
    if !lambda.contains(nu) {
        return Err(Error::InnerNotContained { inner: nu.clone(), outer: lambda.clone() });
    }
    let k = lambda.len().max(1);
    let lam: Vec<i64> = (1..=k).map(|t| lambda.part(t) as i64).collect();
    let nu_pad: Vec<i64> = (1..=k).map(|t| nu.part(t) as i64).collect();

    let mut total = BigInt::zero();
    let mut perm: Vec<usize> = (0..k).collect();
    let mut mu = vec![0i64; k];
    // Heap's algorithm, tracking sign by swap parity.
    let mut counters = vec![0usize; k];
    let mut sign = 1i64;
    loop {
        for t in 0..k {
            mu[t] = nu_pad[perm[t]] - perm[t] as i64 + t as i64;
        }
        let w = walk_count_with(&mu, &lam, fac);
        if sign > 0 {
            total += w;
        } else {
            total -= w;
        }
        // advance permutation
        let mut i = 1;
        loop {
            if i >= k {
                return Ok(total);
            }
            if counters[i] < i {
                let j = if i % 2 == 0 { 0 } else { counters[i] };
                perm.swap(j, i);
                sign = -sign;
                counters[i] += 1;
                break;
            }
            counters[i] = 0;
            i += 1;
        }
    }
}

/// A standard Young tableau: rows and columns strictly increasing, entries a
/// permutation of 1..n.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tableau {
    shape: Partition,
    rows: Vec<Vec<usize>>,
}

impl Tableau {
    pub fn new(shape: Partition, rows: Vec<Vec<usize>>) -> Result<Tableau> {
        let t = Tableau { shape, rows };
        if !t.is_valid() {
            return Err(Error::InvalidPartition(format!("not a standard filling: {:?}", t.rows)));
        }
        Ok(t)
    }

    pub fn shape(&self) -> &Partition {
        &self.shape
    }

    pub fn rows(&self) -> &[Vec<usize>] {
        &self.rows
    }

    pub fn entry(&self, c: Cell) -> Option<usize> {
        self.rows.get(c.row - 1).and_then(|r| r.get(c.col - 1)).copied()
    }

    pub fn is_valid(&self) -> bool {
        let n = self.shape.size();
        let mut seen = vec![false; n + 1];
        for (t, row) in self.rows.iter().enumerate() {
            if row.len() != self.shape.part(t + 1) {
                return false;
            }
            for (j, &v) in row.iter().enumerate() {
                if v < 1 || v > n || seen[v] {
                    return false;
                }
                seen[v] = true;
                if j > 0 && row[j - 1] >= v {
                    return false;
                }
                if t > 0 && self.rows[t - 1][j] >= v {
                    return false;
                }
            }
        }
        true
    }
}

/// Backtracking stream over the fillings of `outer/inner` by 1..m, rows and
/// columns increasing. Values are placed in order; at each step the addable
/// row with the smallest index is tried first, so the yield order is the
/// lexicographic order of the row-choice sequences.
pub struct FillingIter {
    outer: Vec<usize>,
    total: usize,
    filled: Vec<usize>,
    grid: Vec<Vec<usize>>,
    stack: Vec<usize>,
    fresh: bool,
    done: bool,
}

impl FillingIter {
    fn new(outer: &Partition, inner: &Partition) -> Self {
        let k = outer.len();
        let outer_v: Vec<usize> = (1..=k).map(|t| outer.part(t)).collect();
        let inner_v: Vec<usize> = (1..=k).map(|t| inner.part(t)).collect();
        let grid = outer_v.iter().map(|&p| vec![0usize; p]).collect();
        FillingIter {
            total: outer.size() - inner.size(),
            filled: inner_v,
            outer: outer_v,
            grid,
            stack: Vec::new(),
            fresh: true,
            done: false,
        }
    }

    fn addable(&self, t: usize) -> bool {
        self.filled[t] < self.outer[t] && (t == 0 || self.filled[t - 1] > self.filled[t])
    }

    fn place(&mut self, t: usize) {
        self.grid[t][self.filled[t]] = self.stack.len() + 1;
        self.filled[t] += 1;
        self.stack.push(t);
    }

    fn unplace(&mut self) -> Option<usize> {
        let t = self.stack.pop()?;
        self.filled[t] -= 1;
        self.grid[t][self.filled[t]] = 0;
        Some(t)
    }

    /// Columns of the inner shape hold 0 in the yielded grid.
    fn grid(&self) -> Vec<Vec<usize>> {
        self.grid.clone()
    }
}

impl Iterator for FillingIter {
    type Item = Vec<Vec<usize>>;

    fn next(&mut self) -> Option<Self::Item> {
        if self.done {
            return None;
        }
        if self.total == 0 {
            self.done = true;
            if self.fresh {
                return Some(self.grid());
            }
            return None;
        }
        let mut row_try = if self.fresh {
            self.fresh = false;
            0
        } else {
            match self.unplace() {
                Some(t) => t + 1,
                None => {
                    self.done = true;
                    return None;
                }
            }
        };
        loop {
            let k = self.outer.len();
            match (row_try..k).find(|&t| self.addable(t)) {
                Some(t) => {
                    self.place(t);
                    if self.stack.len() == self.total {
                        return Some(self.grid());
                    }
                    row_try = 0;
                }
                None => match self.unplace() {
                    Some(t) => row_try = t + 1,
                    None => {
                        self.done = true;
                        return None;
                    }
                },
            }
        }
    }
}

fn check_cap(cells: usize, cap: usize) -> Result<()> {
    if cells > cap {
        return Err(Error::ShapeTooLarge { cells, cap });
    }
    Ok(())
}

/// Stream of all standard Young tableaux of `lambda`, deterministic order.
pub fn enumerate_syt(lambda: &Partition) -> Result<impl Iterator<Item = Tableau>> {
    enumerate_syt_capped(lambda, DEFAULT_ENUM_CAP)
}

pub fn enumerate_syt_capped(
    lambda: &Partition,
    cap: usize,
) -> Result<impl Iterator<Item = Tableau>> {
    check_cap(lambda.size(), cap)?;
    let shape = lambda.clone();
    Ok(FillingIter::new(lambda, &Partition::empty())
        .map(move |rows| Tableau { shape: shape.clone(), rows }))
}

/// Stream of all fillings of the skew shape `lambda/nu` (grids with 0 in the
/// removed cells).
pub fn enumerate_skew_syt(lambda: &Partition, nu: &Partition) -> Result<FillingIter> {
    enumerate_skew_syt_capped(lambda, nu, DEFAULT_ENUM_CAP)
}

pub fn enumerate_skew_syt_capped(
    lambda: &Partition,
    nu: &Partition,
    cap: usize,
) -> Result<FillingIter> {
    if !lambda.contains(nu) {
        return Err(Error::InnerNotContained { inner: nu.clone(), outer: lambda.clone() });
    }
    check_cap(lambda.size() - nu.size(), cap)?;
    Ok(FillingIter::new(lambda, nu))
}

/// The rectangle-count prefactor `f^{n^k} * n!^k / (nk)!`, computed as the
/// product `prod_{m=1}^{k-1} m! / (n+1)_m` with `(x)_m = x(x+1)...(x+m-1)`,
/// and cross-checked against the Young-Frobenius count.
pub fn rect_count_prefactor(k: usize, n: usize) -> BigRational {
    assert!(k >= 1);
    let mut fac = Factorials::new();
    let mut prod = BigRational::one();
    for m in 1..k {
        let mut pochhammer = BigInt::one();
        for s in 0..m {
            pochhammer *= BigInt::from(n + 1 + s);
        }
        prod *= BigRational::new(fac.get(m).clone(), pochhammer);
    }
    // bug trap: must agree with the direct ratio
    let rect = Partition::rectangle(k, n);
    let mut num = count_syt_yf_with(&rect, &mut fac);
    let nf = fac.get(n).clone();
    for _ in 0..k {
        num *= &nf;
    }
    let den = fac.get(n * k).clone();
    let direct = BigRational::new(num, den);
    assert_eq!(prod, direct, "prefactor product disagrees with Young-Frobenius");
    prod
}
