//! Exact occupancy distributions and sorting probabilities, via the
//! subshape sum: the cells holding 1..r form a shape `nu` with the target
//! cell as a corner, contributing `f^{nu'} * f^{lambda/nu}` tableaux.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::counting::{count_skew_with, count_syt_yf_with, Factorials};
use crate::error::{Error, Result};
use crate::shapes::{Cell, Partition};

/// A finitely supported distribution with exact rational probabilities.
/// Only nonzero atoms are kept; support is strictly increasing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiscreteDistribution {
    support: Vec<usize>,
    probs: Vec<BigRational>,
}

/// Exact mean/variance plus float scaled central moments (3rd = skewness,
/// 4th = kurtosis, ...).
#[derive(Debug, Clone)]
pub struct Moments {
    pub mean: BigRational,
    pub variance: BigRational,
    /// `scaled[t-3]` is `E[(X-mu)^t] / sigma^t` for t = 3..=kmax.
    pub scaled: Vec<f64>,
}

impl DiscreteDistribution {
    pub fn new(atoms: Vec<(usize, BigRational)>) -> Result<Self> {
        let mut support = Vec::new();
        let mut probs = Vec::new();
        let mut total = BigRational::zero();
        for (x, p) in atoms {
            if p.is_negative() {
                return Err(Error::InvalidPartition(format!("negative probability at {x}")));
            }
            if p.is_zero() {
                continue;
            }
            if support.last().is_some_and(|&last| last >= x) {
                return Err(Error::InvalidPartition("support not increasing".into()));
            }
            total += &p;
            support.push(x);
            probs.push(p);
        }
        if !total.is_one() {
            return Err(Error::InvalidPartition(format!("probabilities sum to {total}")));
        }
        Ok(DiscreteDistribution { support, probs })
    }

    pub fn support(&self) -> &[usize] {
        &self.support
    }

    pub fn probs(&self) -> &[BigRational] {
        &self.probs
    }

    pub fn atoms(&self) -> impl Iterator<Item = (usize, &BigRational)> {
        self.support.iter().copied().zip(self.probs.iter())
    }

    pub fn prob(&self, x: usize) -> BigRational {
        match self.support.binary_search(&x) {
            Ok(t) => self.probs[t].clone(),
            Err(_) => BigRational::zero(),
        }
    }

    pub fn mean(&self) -> BigRational {
        self.atoms()
            .map(|(x, p)| BigRational::from(BigInt::from(x)) * p)
            .sum()
    }

    pub fn variance(&self) -> BigRational {
        let mu = self.mean();
        self.atoms()
            .map(|(x, p)| {
                let d = BigRational::from(BigInt::from(x)) - &mu;
                &d * &d * p
            })
            .sum()
    }

    fn central_moment(&self, mu: &BigRational, t: u32) -> BigRational {
        self.atoms()
            .map(|(x, p)| {
                let d = BigRational::from(BigInt::from(x)) - mu;
                let mut acc = BigRational::one();
                for _ in 0..t {
                    acc *= &d;
                }
                acc * p
            })
            .sum()
    }

    /// Mean, variance, and scaled central moments 3..=kmax.
    /// Zero variance makes the scaled moments undefined.
    pub fn moments(&self, kmax: u32) -> Result<Moments> {
        let mean = self.mean();
        let variance = self.central_moment(&mean, 2);
        let mut scaled = Vec::new();
        if kmax >= 3 {
            if variance.is_zero() {
                return Err(Error::DegenerateDistribution);
            }
            let sigma = variance.to_f64().expect("finite variance").sqrt();
            for t in 3..=kmax {
                let ct = self.central_moment(&mean, t).to_f64().expect("finite moment");
                scaled.push(ct / sigma.powi(t as i32));
            }
        }
        Ok(Moments { mean, variance, scaled })
    }

    /// Total-variation distance to another distribution, as a float.
    pub fn tv_distance(&self, other: &DiscreteDistribution) -> f64 {
        let xs: std::collections::BTreeSet<usize> = self
            .support
            .iter()
            .chain(other.support.iter())
            .copied()
            .collect();
        let sum: f64 = xs
            .into_iter()
            .map(|x| {
                (self.prob(x) - other.prob(x))
                    .abs()
                    .to_f64()
                    .expect("finite")
            })
            .sum();
        sum / 2.0
    }
}

/// `Pr(T_c = r)` in a uniform random SYT of `lambda`. Zero outside the
/// occupant range.
pub fn occupancy_prob(lambda: &Partition, c: Cell, r: usize) -> Result<BigRational> {
    let (lo, hi) = lambda.occupant_range(c)?;
    if r < lo || r > hi {
        return Ok(BigRational::zero());
    }
    let mut fac = Factorials::new();
    let mut numer = BigInt::zero();
    for nu in lambda.subshapes_with_corner(c, r)? {
        let nu_minus = nu.remove_corner(c).expect("corner by construction");
        numer += count_syt_yf_with(&nu_minus, &mut fac) * count_skew_with(lambda, &nu, &mut fac)?;
    }
    let total = count_syt_yf_with(lambda, &mut fac);
    Ok(BigRational::new(numer, total))
}

/// The exact occupancy distribution of cell `c`.
pub fn occupancy_pgf(lambda: &Partition, c: Cell) -> Result<DiscreteDistribution> {
    let (lo, hi) = lambda.occupant_range(c)?;
    let atoms = (lo..=hi)
        .map(|r| Ok((r, occupancy_prob(lambda, c, r)?)))
        .collect::<Result<Vec<_>>>()?;
    DiscreteDistribution::new(atoms)
}

/// Sorting probability `SP = Pr(T_c1 > T_c2) - Pr(T_c2 > T_c1)
/// = 2 Pr(T_c1 > T_c2) - 1`, exact.
pub fn sort_prob(lambda: &Partition, c1: Cell, c2: Cell) -> Result<BigRational> {
    if c1 == c2 {
        return Err(Error::SameCell);
    }
    let (lo, hi) = lambda.occupant_range(c1)?;
    if !lambda.contains_cell(c2) {
        return Err(Error::CellOutsideShape { cell: c2, shape: lambda.clone() });
    }
    let mut fac = Factorials::new();
    // tableaux with T_c1 = r and T_c2 < r, summed over r
    let mut greater = BigInt::zero();
    for r in lo..=hi {
        for nu in lambda.subshapes_for_sorting(c1, c2, r)? {
            let nu_minus = nu.remove_corner(c1).expect("corner by construction");
            greater +=
                count_syt_yf_with(&nu_minus, &mut fac) * count_skew_with(lambda, &nu, &mut fac)?;
        }
    }
    let total = count_syt_yf_with(lambda, &mut fac);
    Ok(BigRational::new(greater * 2 - &total, total))
}

/// Minimum of `|SP|` over all unordered pairs of unrelated cells, with every
/// pair attaining it. `None` when the shape has no unrelated pair.
pub fn min_sort_prob(lambda: &Partition) -> Result<Option<(BigRational, Vec<(Cell, Cell)>)>> {
    let cells: Vec<Cell> = lambda.cells().collect();
    let mut best: Option<BigRational> = None;
    let mut champions: Vec<(Cell, Cell)> = Vec::new();
    for (a, &c1) in cells.iter().enumerate() {
        for &c2 in &cells[a + 1..] {
            if c1.related(c2) {
                continue;
            }
            // unordered pair, reported with the upper cell first
            let (top, bottom) = if c1.row < c2.row { (c1, c2) } else { (c2, c1) };
            let sp = sort_prob(lambda, top, bottom)?.abs();
            match &best {
                Some(b) if sp > *b => {}
                Some(b) if sp == *b => champions.push((top, bottom)),
                _ => {
                    best = Some(sp);
                    champions = vec![(top, bottom)];
                }
            }
        }
    }
    Ok(best.map(|b| (b, champions)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::counting::enumerate_syt;

    fn pt(parts: &[usize]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn occupancy_examples() {
        let lam = pt(&[2, 2, 1]);
        assert_eq!(occupancy_prob(&lam, Cell::new(2, 1), 2).unwrap(), rat(3, 5));
        assert_eq!(occupancy_prob(&lam, Cell::new(2, 1), 3).unwrap(), rat(2, 5));
        assert_eq!(occupancy_prob(&lam, Cell::new(2, 1), 4).unwrap(), rat(0, 1));
        assert_eq!(
            occupancy_prob(&pt(&[5, 5, 5]), Cell::new(1, 3), 7).unwrap(),
            rat(5, 143)
        );
        assert_eq!(occupancy_prob(&pt(&[1]), Cell::new(1, 1), 1).unwrap(), rat(1, 1));
    }

    #[test]
    fn pgf_examples() {
        let d = occupancy_pgf(&pt(&[2, 2, 1]), Cell::new(2, 1)).unwrap();
        assert_eq!(d.support(), &[2, 3]);
        assert_eq!(d.probs(), &[rat(3, 5), rat(2, 5)]);

        let d = occupancy_pgf(&pt(&[4, 4, 4]), Cell::new(2, 2)).unwrap();
        assert_eq!(d.support(), &[4, 5, 6, 7]);
        assert_eq!(d.probs(), &[rat(8, 33), rat(4, 11), rat(2, 7), rat(25, 231)]);

        let d = occupancy_pgf(&pt(&[3, 1]), Cell::new(1, 1)).unwrap();
        assert_eq!(d.support(), &[1]);
    }

    #[test]
    fn sort_prob_examples() {
        assert_eq!(
            sort_prob(&pt(&[2, 2, 1]), Cell::new(1, 2), Cell::new(2, 1)).unwrap(),
            rat(1, 5)
        );
        assert_eq!(
            sort_prob(&pt(&[3, 3]), Cell::new(1, 3), Cell::new(2, 1)).unwrap(),
            rat(3, 5)
        );
        assert_eq!(
            sort_prob(&pt(&[3, 3, 3]), Cell::new(1, 2), Cell::new(2, 1)).unwrap(),
            rat(0, 1)
        );
        // related cells are forced
        assert_eq!(
            sort_prob(&pt(&[2, 2]), Cell::new(1, 1), Cell::new(2, 2)).unwrap(),
            rat(-1, 1)
        );
        assert_eq!(
            sort_prob(&pt(&[2, 2]), Cell::new(2, 2), Cell::new(1, 1)).unwrap(),
            rat(1, 1)
        );
        assert!(matches!(
            sort_prob(&pt(&[2, 2]), Cell::new(1, 1), Cell::new(1, 1)),
            Err(Error::SameCell)
        ));
    }

    #[test]
    fn min_sort_prob_examples() {
        let (min, champs) = min_sort_prob(&pt(&[2, 2, 1])).unwrap().unwrap();
        assert_eq!(min, rat(1, 5));
        // both unrelated pairs attain 1/5 here
        assert_eq!(
            champs,
            vec![
                (Cell::new(1, 2), Cell::new(2, 1)),
                (Cell::new(2, 2), Cell::new(3, 1)),
            ]
        );

        let (min, champs) = min_sort_prob(&pt(&[2, 2])).unwrap().unwrap();
        assert_eq!(min, rat(0, 1));
        assert_eq!(champs, vec![(Cell::new(1, 2), Cell::new(2, 1))]);

        assert!(min_sort_prob(&pt(&[4])).unwrap().is_none());
    }

    #[test]
    fn matches_enumeration_oracle_small() {
        for n in 1..=6 {
            for lam in Partition::all_of_size(n) {
                let ts: Vec<_> = enumerate_syt(&lam).unwrap().collect();
                let total = ts.len();
                let cells: Vec<Cell> = lam.cells().collect();
                for &c in &cells {
                    let d = occupancy_pgf(&lam, c).unwrap();
                    let (lo, hi) = lam.occupant_range(c).unwrap();
                    for r in lo..=hi {
                        let cnt = ts.iter().filter(|t| t.entry(c) == Some(r)).count();
                        assert_eq!(
                            d.prob(r),
                            BigRational::new(cnt.into(), total.into()),
                            "{lam} {c} {r}"
                        );
                    }
                }
                for (a, &c1) in cells.iter().enumerate() {
                    for &c2 in &cells[a + 1..] {
                        let gt = ts
                            .iter()
                            .filter(|t| t.entry(c1).unwrap() > t.entry(c2).unwrap())
                            .count();
                        let expected =
                            BigRational::new(BigInt::from(2 * gt as i64 - total as i64), total.into());
                        assert_eq!(sort_prob(&lam, c1, c2).unwrap(), expected, "{lam} {c1} {c2}");
                    }
                }
            }
        }
    }

    #[test]
    fn conjugation_covariance() {
        for n in 1..=7 {
            for lam in Partition::all_of_size(n) {
                let conj = lam.conjugate();
                for c in lam.cells() {
                    let flipped = Cell::new(c.col, c.row);
                    let (lo, hi) = lam.occupant_range(c).unwrap();
                    for r in lo..=hi {
                        assert_eq!(
                            occupancy_prob(&lam, c, r).unwrap(),
                            occupancy_prob(&conj, flipped, r).unwrap()
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn sort_prob_antisymmetry() {
        for lam in [pt(&[3, 2, 1]), pt(&[4, 2]), pt(&[3, 3, 1])] {
            let cells: Vec<Cell> = lam.cells().collect();
            for &c1 in &cells {
                for &c2 in &cells {
                    if c1 == c2 {
                        continue;
                    }
                    assert_eq!(
                        sort_prob(&lam, c1, c2).unwrap(),
                        -sort_prob(&lam, c2, c1).unwrap()
                    );
                }
            }
        }
    }

    #[test]
    fn normalization() {
        for n in 1..=8 {
            for lam in Partition::all_of_size(n) {
                for c in lam.cells() {
                    // constructor rejects anything not summing to one
                    occupancy_pgf(&lam, c).unwrap();
                }
            }
        }
    }

    #[test]
    fn moments_examples() {
        let d = DiscreteDistribution::new(vec![(2, rat(3, 4)), (3, rat(1, 4))]).unwrap();
        let m = d.moments(2).unwrap();
        assert_eq!(m.mean, rat(9, 4));
        assert_eq!(m.variance, rat(3, 16));

        let d = DiscreteDistribution::new(vec![(2, rat(3, 5)), (3, rat(2, 5))]).unwrap();
        let m = d.moments(2).unwrap();
        assert_eq!(m.mean, rat(12, 5));
        assert_eq!(m.variance, rat(6, 25));

        let point = DiscreteDistribution::new(vec![(5, rat(1, 1))]).unwrap();
        let m = point.moments(2).unwrap();
        assert_eq!(m.mean, rat(5, 1));
        assert_eq!(m.variance, rat(0, 1));
        assert!(matches!(point.moments(4), Err(Error::DegenerateDistribution)));
    }
}
