//! Greene-Nijenhuis-Wilf hook-walk sampling and Monte-Carlo estimators.
//!
//! The RNG is a pinned, seedable generator (ChaCha8) so that identical
//! (shape, samples, seed) inputs reproduce bit-identical output everywhere.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::counting::Tableau;
use crate::distributions::DiscreteDistribution;
use crate::error::{Error, Result};
use crate::shapes::{Cell, Partition};

/// The pinned generator for all sampling.
pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Draw one standard Young tableau of shape `lambda`, uniformly at random:
/// for m = n down to 1, start a hook walk at a uniform cell of the current
/// shape, jump to a uniform other cell of the current hook until a corner is
/// reached, write m there, and delete the corner.
pub fn gnw_sample<R: Rng>(lambda: &Partition, rng: &mut R) -> Tableau {
    let k = lambda.len();
    let mut parts: Vec<usize> = lambda.parts().to_vec();
    let mut rows: Vec<Vec<usize>> = parts.iter().map(|&p| vec![0; p]).collect();
    let n = lambda.size();
    for m in (1..=n).rev() {
        // uniform starting cell of the current shape (0-based i, c)
        let mut idx = rng.random_range(0..m);
        let mut i = 0;
        while idx >= parts[i] {
            idx -= parts[i];
            i += 1;
        }
        let mut c = idx;
        // hook walk to a corner
        loop {
            let arm = parts[i] - 1 - c;
            let leg = (i + 1..k).take_while(|&t| parts[t] > c).count();
            if arm + leg == 0 {
                break;
            }
            let u = rng.random_range(0..arm + leg);
            if u < arm {
                c += 1 + u;
            } else {
                i += 1 + (u - arm);
            }
        }
        rows[i][c] = m;
        parts[i] -= 1;
    }
    Tableau::new(lambda.clone(), rows).expect("hook walk yields a standard tableau")
}

/// Empirical occupancy counts for cell `c` over `samples` GNW draws.
#[derive(Debug, Clone)]
pub struct EmpiricalOccupancy {
    pub samples: u64,
    pub counts: BTreeMap<usize, u64>,
}

impl EmpiricalOccupancy {
    /// Exact frequency `count / samples`.
    pub fn freq(&self, r: usize) -> BigRational {
        let c = self.counts.get(&r).copied().unwrap_or(0);
        BigRational::new(BigInt::from(c), BigInt::from(self.samples))
    }

    pub fn as_distribution(&self) -> DiscreteDistribution {
        let atoms = self.counts.keys().map(|&r| (r, self.freq(r))).collect();
        DiscreteDistribution::new(atoms).expect("frequencies sum to one")
    }
}

pub fn empirical_occupancy(
    lambda: &Partition,
    c: Cell,
    samples: u64,
    seed: u64,
) -> Result<EmpiricalOccupancy> {
    if !lambda.contains_cell(c) {
        return Err(Error::CellOutsideShape { cell: c, shape: lambda.clone() });
    }
    assert!(samples >= 1);
    let mut rng = rng_from_seed(seed);
    let mut counts = BTreeMap::new();
    for _ in 0..samples {
        let t = gnw_sample(lambda, &mut rng);
        *counts.entry(t.entry(c).unwrap()).or_insert(0u64) += 1;
    }
    Ok(EmpiricalOccupancy { samples, counts })
}

/// Monte-Carlo estimate of the sorting probability of `c1` vs `c2`.
#[derive(Debug, Clone, Copy)]
pub struct EmpiricalSortProb {
    pub samples: u64,
    pub greater: u64,
}

impl EmpiricalSortProb {
    /// `(#{T_c1 > T_c2} - #{T_c2 > T_c1}) / samples`, exact.
    pub fn exact(&self) -> BigRational {
        BigRational::new(
            BigInt::from(2 * self.greater as i64 - self.samples as i64),
            BigInt::from(self.samples),
        )
    }

    pub fn value(&self) -> f64 {
        (2.0 * self.greater as f64 - self.samples as f64) / self.samples as f64
    }
}

pub fn empirical_sortprob(
    lambda: &Partition,
    c1: Cell,
    c2: Cell,
    samples: u64,
    seed: u64,
) -> Result<EmpiricalSortProb> {
    for c in [c1, c2] {
        if !lambda.contains_cell(c) {
            return Err(Error::CellOutsideShape { cell: c, shape: lambda.clone() });
        }
    }
    if c1 == c2 {
        return Err(Error::SameCell);
    }
    assert!(samples >= 1);
    let mut rng = rng_from_seed(seed);
    let mut greater = 0u64;
    for _ in 0..samples {
        let t = gnw_sample(lambda, &mut rng);
        if t.entry(c1).unwrap() > t.entry(c2).unwrap() {
            greater += 1;
        }
    }
    Ok(EmpiricalSortProb { samples, greater })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::ToPrimitive;

    fn pt(parts: &[usize]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn single_cell_is_forced() {
        let mut rng = rng_from_seed(0);
        for _ in 0..5 {
            let t = gnw_sample(&pt(&[1]), &mut rng);
            assert_eq!(t.rows(), &[vec![1]]);
        }
        let occ = empirical_occupancy(&pt(&[1]), Cell::new(1, 1), 3, 0).unwrap();
        assert_eq!(occ.freq(1), BigRational::new(1.into(), 1.into()));
    }

    #[test]
    fn samples_are_valid_tableaux() {
        let mut rng = rng_from_seed(42);
        for shape in [pt(&[4, 3, 2]), pt(&[5, 1]), pt(&[2, 2, 2, 2]), pt(&[6])] {
            for _ in 0..200 {
                let t = gnw_sample(&shape, &mut rng);
                assert!(t.is_valid());
                assert_eq!(t.shape(), &shape);
            }
        }
    }

    #[test]
    fn deterministic_given_seed() {
        let a: Vec<_> = {
            let mut rng = rng_from_seed(7);
            (0..20).map(|_| gnw_sample(&pt(&[4, 3, 2]), &mut rng)).collect()
        };
        let b: Vec<_> = {
            let mut rng = rng_from_seed(7);
            (0..20).map(|_| gnw_sample(&pt(&[4, 3, 2]), &mut rng)).collect()
        };
        assert_eq!(a, b);
    }

    #[test]
    fn occupancy_frequencies_near_exact() {
        let occ = empirical_occupancy(&pt(&[2, 2, 1]), Cell::new(2, 1), 20_000, 1).unwrap();
        let f2 = occ.freq(2).to_f64().unwrap();
        assert!((f2 - 0.6).abs() < 0.02, "freq(2) = {f2}");
        let total: u64 = occ.counts.values().sum();
        assert_eq!(total, 20_000);
        // support within the occupant range
        assert!(occ.counts.keys().all(|&r| (2..=3).contains(&r)));
    }

    #[test]
    fn sortprob_examples() {
        // related cells: always -1
        let sp = empirical_sortprob(&pt(&[3, 3]), Cell::new(1, 1), Cell::new(2, 2), 500, 3).unwrap();
        assert_eq!(sp.value(), -1.0);
        // (2,2,1): [1,2] vs [2,1] is 1/5
        let sp =
            empirical_sortprob(&pt(&[2, 2, 1]), Cell::new(1, 2), Cell::new(2, 1), 20_000, 5)
                .unwrap();
        assert!((sp.value() - 0.2).abs() < 0.03, "sp = {}", sp.value());
        assert!(empirical_sortprob(&pt(&[2, 2]), Cell::new(1, 1), Cell::new(1, 1), 10, 0).is_err());
    }
}
