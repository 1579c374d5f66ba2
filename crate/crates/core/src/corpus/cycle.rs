use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Largest basis the exact cycle solver accepts.
pub const MAX_CYCLE_TOKENS: usize = 16;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Reducer {
    #[default]
    Min,
    Mean,
    Median,
}

impl std::str::FromStr for Reducer {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "min" => Ok(Reducer::Min),
            "mean" => Ok(Reducer::Mean),
            "median" => Ok(Reducer::Median),
            _ => Err(Error::InvalidParameter(format!("unknown reducer '{s}'"))),
        }
    }
}

/// Reduces `|a_i - b_j|` over every pair of positions.
pub fn pairwise_token_distance(a: &[usize], b: &[usize], reducer: Reducer) -> Result<f64> {
    if a.is_empty() || b.is_empty() {
        return Err(Error::EmptyInput);
    }
    let mut d: Vec<usize> = a
        .iter()
        .flat_map(|&x| b.iter().map(move |&y| x.abs_diff(y)))
        .collect();
    Ok(match reducer {
        Reducer::Min => *d.iter().min().unwrap() as f64,
        Reducer::Mean => d.iter().sum::<usize>() as f64 / d.len() as f64,
        Reducer::Median => {
            d.sort_unstable();
            let m = d.len() / 2;
            if d.len() % 2 == 1 {
                d[m] as f64
            } else {
                (d[m - 1] + d[m]) as f64 / 2.0
            }
        }
    })
}

/// Symmetric matrix of reduced distances between position lists.
pub fn distance_matrix(positions: &[&[usize]], reducer: Reducer) -> Result<Vec<Vec<f64>>> {
    let k = positions.len();
    let mut w = vec![vec![0.0; k]; k];
    for i in 0..k {
        for j in i + 1..k {
            let d = pairwise_token_distance(positions[i], positions[j], reducer)?;
            w[i][j] = d;
            w[j][i] = d;
        }
    }
    Ok(w)
}

pub fn cycle_weight(weights: &[Vec<f64>], order: &[usize]) -> f64 {
    (0..order.len())
        .map(|i| weights[order[i]][order[(i + 1) % order.len()]])
        .sum()
}

fn validate(weights: &[Vec<f64>]) -> Result<()> {
    let k = weights.len();
    if !(3..=MAX_CYCLE_TOKENS).contains(&k) {
        return Err(Error::Capacity {
            what: "hamiltonian cycle tokens",
            requested: k,
            limit: MAX_CYCLE_TOKENS,
        });
    }
    for (i, row) in weights.iter().enumerate() {
        if row.len() != k {
            return Err(Error::InvalidParameter(format!(
                "weight row {i} has {} entries, expected {k}",
                row.len()
            )));
        }
        for (j, &w) in row.iter().enumerate() {
            if !w.is_finite() || w != weights[j][i] {
                return Err(Error::InvalidParameter(format!(
                    "weights must be finite and symmetric (entry {i},{j})"
                )));
            }
        }
    }
    Ok(())
}

/// Minimum-weight Hamiltonian cycle by Held-Karp dynamic programming.
///
/// The result starts at token 0 and continues with whichever of its two
/// cycle neighbours is cheaper to reach (the lower index on a tie).
pub fn min_hamiltonian_cycle(weights: &[Vec<f64>]) -> Result<Vec<usize>> {
    validate(weights)?;
    let k = weights.len();
    // Subsets of {1..k}, bit i-1 for node i. best[mask][j] is the cheapest
    // path from 0 through `mask` ending at j.
    let m = k - 1;
    let full = (1usize << m) - 1;
    let mut best = vec![f64::INFINITY; (1 << m) * m];
    let mut prev = vec![usize::MAX; (1 << m) * m];
    for j in 0..m {
        best[(1 << j) * m + j] = weights[0][j + 1];
    }
    for mask in 1..=full {
        for j in 0..m {
            if mask & (1 << j) == 0 {
                continue;
            }
            let here = best[mask * m + j];
            if here.is_infinite() {
                continue;
            }
            for n in 0..m {
                if mask & (1 << n) != 0 {
                    continue;
                }
                let next = mask | (1 << n);
                let cost = here + weights[j + 1][n + 1];
                if cost < best[next * m + n] {
                    best[next * m + n] = cost;
                    prev[next * m + n] = j;
                }
            }
        }
    }
    let mut last = 0;
    let mut total = f64::INFINITY;
    for j in 0..m {
        let cost = best[full * m + j] + weights[j + 1][0];
        if cost < total {
            total = cost;
            last = j;
        }
    }

    let mut path = Vec::with_capacity(k);
    let mut mask = full;
    let mut j = last;
    while j != usize::MAX {
        path.push(j + 1);
        let p = prev[mask * m + j];
        mask &= !(1 << j);
        j = p;
    }
    path.push(0);
    path.reverse();

    let (a, b) = (path[1], path[k - 1]);
    if (weights[0][b], b) < (weights[0][a], a) {
        path[1..].reverse();
    }
    Ok(path)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn distance_reducers() {
        assert_eq!(
            pairwise_token_distance(&[2, 10], &[4], Reducer::Min).unwrap(),
            2.0
        );
        assert_eq!(
            pairwise_token_distance(&[1], &[5], Reducer::Min).unwrap(),
            4.0
        );
        // pairs 4, 5, 4, 3
        assert_eq!(
            pairwise_token_distance(&[1, 9], &[5, 6], Reducer::Mean).unwrap(),
            4.0
        );
        assert_eq!(
            pairwise_token_distance(&[1, 9], &[5, 6], Reducer::Median).unwrap(),
            4.0
        );
        assert_eq!(
            pairwise_token_distance(&[0, 1, 9], &[5], Reducer::Median).unwrap(),
            4.0
        );
        assert!(pairwise_token_distance(&[], &[5], Reducer::Min).is_err());
    }

    #[test]
    fn ring_is_recovered() {
        let k = 8usize;
        let w: Vec<Vec<f64>> = (0..k)
            .map(|i| {
                (0..k)
                    .map(|j| match (i as i32 - j as i32).rem_euclid(k as i32) {
                        0 => 0.0,
                        1 | 7 => 1.0,
                        _ => 10.0,
                    })
                    .collect()
            })
            .collect();
        assert_eq!(
            min_hamiltonian_cycle(&w).unwrap(),
            vec![0, 1, 2, 3, 4, 5, 6, 7]
        );
    }

    #[test]
    fn orientation_prefers_cheaper_neighbour() {
        let w = vec![
            vec![0.0, 5.0, 1.0],
            vec![5.0, 0.0, 1.0],
            vec![1.0, 1.0, 0.0],
        ];
        assert_eq!(min_hamiltonian_cycle(&w).unwrap(), vec![0, 2, 1]);
    }

    #[test]
    fn capacity_and_validation() {
        let two = vec![vec![0.0, 1.0], vec![1.0, 0.0]];
        assert!(matches!(
            min_hamiltonian_cycle(&two),
            Err(Error::Capacity { .. })
        ));
        let big = vec![vec![1.0; 17]; 17];
        assert!(matches!(
            min_hamiltonian_cycle(&big),
            Err(Error::Capacity { .. })
        ));
        let asym = vec![
            vec![0.0, 1.0, 2.0],
            vec![1.0, 0.0, 3.0],
            vec![2.0, 4.0, 0.0],
        ];
        assert!(min_hamiltonian_cycle(&asym).is_err());
    }
}
