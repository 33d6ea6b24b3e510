//! Exact integer row reduction.
//!
//! Row-style Hermite normal form over ℤ and Smith invariant factors. Matrices
//! here are small (at most a few hundred entries), so everything is dense and
//! uses `BigInt`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Row-style Hermite normal form of an integer matrix.
///
/// Rows are in echelon form with strictly increasing pivot columns, pivots are
/// positive and entries above a pivot lie in `[0, pivot)`. Zero rows dropped.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hermite {
    pub ncols: usize,
    pub rows: Vec<Vec<BigInt>>,
    pub pivots: Vec<usize>,
}

impl Hermite {
    pub fn new(mut rows: Vec<Vec<BigInt>>, ncols: usize) -> Self {
        for r in &rows {
            assert_eq!(r.len(), ncols, "ragged matrix");
        }
        let mut pivots = Vec::new();
        let mut rank = 0;
        for col in 0..ncols {
            if rank == rows.len() {
                break;
            }
            // Euclid on the column until a single nonzero entry remains.
            loop {
                let best = (rank..rows.len())
                    .filter(|&i| !rows[i][col].is_zero())
                    .min_by(|&a, &b| rows[a][col].abs().cmp(&rows[b][col].abs()));
                let Some(best) = best else { break };
                rows.swap(rank, best);
                let mut done = true;
                for i in rank + 1..rows.len() {
                    if rows[i][col].is_zero() {
                        continue;
                    }
                    let q = rows[i][col].div_floor(&rows[rank][col]);
                    let pivot_row = rows[rank].clone();
                    sub_scaled(&mut rows[i], &pivot_row, &q);
                    if !rows[i][col].is_zero() {
                        done = false;
                    }
                }
                if done {
                    break;
                }
            }
            if rank < rows.len() && !rows[rank][col].is_zero() {
                if rows[rank][col].is_negative() {
                    for x in rows[rank].iter_mut() {
                        *x = -&*x;
                    }
                }
                let pivot_row = rows[rank].clone();
                for i in 0..rank {
                    let q = rows[i][col].div_floor(&pivot_row[col]);
                    if !q.is_zero() {
                        sub_scaled(&mut rows[i], &pivot_row, &q);
                    }
                }
                pivots.push(col);
                rank += 1;
            }
        }
        rows.truncate(rank);
        Hermite {
            ncols,
            rows,
            pivots,
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn has_unit_pivots(&self) -> bool {
        self.rows
            .iter()
            .zip(&self.pivots)
            .all(|(r, &c)| r[c].is_one())
    }

    /// Reduces `v` against the row lattice. Returns the remainder and whether
    /// every pivot step divided exactly; `v` lies in the lattice iff both the
    /// remainder is zero and the division was exact.
    pub fn reduce(&self, v: &[BigInt]) -> (Vec<BigInt>, bool) {
        let mut v = v.to_vec();
        let mut exact = true;
        for (row, &col) in self.rows.iter().zip(&self.pivots) {
            if v[col].is_zero() {
                continue;
            }
            let (q, r) = v[col].div_mod_floor(&row[col]);
            if !r.is_zero() {
                exact = false;
            }
            sub_scaled(&mut v, row, &q);
        }
        (v, exact)
    }

    pub fn contains(&self, v: &[BigInt]) -> bool {
        let (rem, exact) = self.reduce(v);
        exact && rem.iter().all(Zero::is_zero)
    }
}

fn sub_scaled(target: &mut [BigInt], row: &[BigInt], q: &BigInt) {
    for (t, r) in target.iter_mut().zip(row) {
        if !r.is_zero() {
            *t -= q * r;
        }
    }
}

/// Nonzero Smith invariant factors `d₁ | d₂ | …` of an integer matrix.
pub fn smith_invariants(rows: &[Vec<BigInt>], ncols: usize) -> Vec<BigInt> {
    let mut m: Vec<Vec<BigInt>> = rows.to_vec();
    let nrows = m.len();
    let mut out = Vec::new();
    let mut t = 0;
    while t < nrows.min(ncols) {
        // pick the smallest nonzero entry in the trailing block
        let mut best: Option<(usize, usize)> = None;
        for i in t..nrows {
            for j in t..ncols {
                if !m[i][j].is_zero()
                    && best.map_or(true, |(bi, bj)| m[i][j].abs() < m[bi][bj].abs())
                {
                    best = Some((i, j));
                }
            }
        }
        let Some((bi, bj)) = best else { break };
        m.swap(t, bi);
        for row in m.iter_mut() {
            row.swap(t, bj);
        }
        let mut clean = true;
        for i in t + 1..nrows {
            if !m[i][t].is_zero() {
                let q = m[i][t].div_floor(&m[t][t]);
                let pivot_row = m[t].clone();
                sub_scaled(&mut m[i], &pivot_row, &q);
                if !m[i][t].is_zero() {
                    clean = false;
                }
            }
        }
        for j in t + 1..ncols {
            if !m[t][j].is_zero() {
                let q = m[t][j].div_floor(&m[t][t]);
                for i in 0..nrows {
                    let sub = &q * &m[i][t];
                    m[i][j] -= sub;
                }
                if !m[t][j].is_zero() {
                    clean = false;
                }
            }
        }
        if !clean {
            continue;
        }
        // divisibility condition: pivot must divide the whole trailing block
        let pivot = m[t][t].clone();
        let offender = (t + 1..nrows)
            .flat_map(|i| (t + 1..ncols).map(move |j| (i, j)))
            .find(|&(i, j)| !m[i][j].is_multiple_of(&pivot));
        if let Some((i, _)) = offender {
            let row_i = m[i].clone();
            for (a, b) in m[t].iter_mut().zip(row_i) {
                *a += b;
            }
            continue;
        }
        out.push(pivot.abs());
        t += 1;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mat(rows: &[&[i64]]) -> Vec<Vec<BigInt>> {
        rows.iter()
            .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
            .collect()
    }

    #[test]
    fn hermite_of_grassmannian_degree_four() {
        // columns c1^4, c1^2 c2, c2^2; rows c1*y3 and y4
        let h = Hermite::new(mat(&[&[-1, 2, 0], &[1, -3, 1]]), 3);
        assert_eq!(h.pivots, vec![0, 1]);
        assert!(h.has_unit_pivots());
        assert_eq!(h.rows, mat(&[&[1, 0, -2], &[0, 1, -1]]));
    }

    #[test]
    fn lattice_membership_needs_exact_division() {
        let h = Hermite::new(mat(&[&[2, 0], &[0, 3]]), 2);
        assert!(h.contains(&[BigInt::from(4), BigInt::from(-9)]));
        assert!(!h.contains(&[BigInt::from(1), BigInt::from(0)]));
    }

    #[test]
    fn smith_detects_torsion() {
        assert_eq!(
            smith_invariants(&mat(&[&[2, 4], &[6, 8]]), 2),
            vec![BigInt::from(2), BigInt::from(4)]
        );
        // free quotient even though the Hermite pivot is 2
        assert_eq!(smith_invariants(&mat(&[&[2, 1]]), 2), vec![BigInt::one()]);
        assert!(smith_invariants(&mat(&[&[0, 0]]), 2).is_empty());
    }
}
