use num::{BigRational, Zero};

/// Rank of a matrix over ℚ by Gaussian elimination.
pub fn rational_rank(mut rows: Vec<Vec<BigRational>>) -> usize {
    let ncols = rows.iter().map(|r| r.len()).max().unwrap_or(0);
    for r in rows.iter_mut() {
        r.resize(ncols, BigRational::zero());
    }
    let mut rank = 0;
    for col in 0..ncols {
        let Some(p) = (rank..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, p);
        let pivot = rows[rank][col].clone();
        for i in rank + 1..rows.len() {
            if rows[i][col].is_zero() {
                continue;
            }
            let f = &rows[i][col] / &pivot;
            for j in col..ncols {
                let d = &f * &rows[rank][j];
                rows[i][j] -= d;
            }
        }
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(v: i64) -> BigRational {
        BigRational::from_integer(v.into())
    }

    #[test]
    fn ranks() {
        assert_eq!(rational_rank(vec![]), 0);
        assert_eq!(rational_rank(vec![vec![q(1), q(2)], vec![q(2), q(4)]]), 1);
        assert_eq!(rational_rank(vec![vec![q(1), q(0)], vec![q(0), q(3)], vec![q(1), q(1)]]), 2);
        assert_eq!(rational_rank(vec![vec![q(0), q(0)]]), 0);
    }
}
