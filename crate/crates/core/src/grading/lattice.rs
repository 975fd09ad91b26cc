//! Integer linear algebra: column Hermite normal form of a full-row-rank
//! matrix and integral solvability of `A x = z`.

use num_integer::Integer;

/// Column-style echelon form `A U = [H | 0]` with `U` unimodular and `H`
/// lower triangular with positive diagonal.
#[derive(Clone, Debug)]
pub struct ColumnHnf {
    pub h: Vec<Vec<i128>>,
    pub u: Vec<Vec<i128>>,
    rows: usize,
}

impl ColumnHnf {
    /// `a` must have full row rank.
    pub fn new(a: &[Vec<i64>]) -> Self {
        let rows = a.len();
        let cols = a.first().map_or(0, Vec::len);
        let mut m: Vec<Vec<i128>> = a.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
        let mut u: Vec<Vec<i128>> =
            (0..cols).map(|i| (0..cols).map(|j| i128::from(i == j)).collect()).collect();
        // Column operation on (p, q): [col_p, col_q] <- [col_p, col_q] * [[s, -b/g], [t, a/g]].
        let combine = |mat: &mut Vec<Vec<i128>>, p: usize, q: usize, s: i128, t: i128, x: i128, y: i128| {
            for row in mat.iter_mut() {
                let (cp, cq) = (row[p], row[q]);
                row[p] = s * cp + t * cq;
                row[q] = x * cp + y * cq;
            }
        };
        for r in 0..rows {
            for j in r + 1..cols {
                let (a_, b_) = (m[r][r], m[r][j]);
                if b_ == 0 {
                    continue;
                }
                let e = a_.extended_gcd(&b_);
                let g = e.gcd;
                // s*a + t*b = g ; the second column becomes -b/g * col_r + a/g * col_j.
                let (s, t, x, y) = (e.x, e.y, -b_ / g, a_ / g);
                combine(&mut m, r, j, s, t, x, y);
                combine(&mut u, r, j, s, t, x, y);
            }
            if m[r][r] < 0 {
                for row in m.iter_mut().chain(u.iter_mut()) {
                    row[r] = -row[r];
                }
            }
            assert!(m[r][r] != 0, "matrix must have full row rank");
            // Reduce entries left of the pivot into [0, pivot).
            for j in 0..r {
                let q = Integer::div_floor(&m[r][j], &m[r][r]);
                if q != 0 {
                    for row in m.iter_mut().chain(u.iter_mut()) {
                        row[j] -= q * row[r];
                    }
                }
            }
        }
        ColumnHnf { h: m, u, rows }
    }

    /// An integer `x` with `A x = z`, if one exists.
    pub fn solve(&self, z: &[i64]) -> Option<Vec<i64>> {
        let mut y = vec![0i128; self.u.len()];
        for r in 0..self.rows {
            let acc: i128 = (0..r).map(|j| self.h[r][j] * y[j]).sum();
            let rem = z[r] as i128 - acc;
            if rem % self.h[r][r] != 0 {
                return None;
            }
            y[r] = rem / self.h[r][r];
        }
        Some(
            self.u
                .iter()
                .map(|row| {
                    let v: i128 = row.iter().zip(&y).map(|(a, b)| a * b).sum();
                    i64::try_from(v).expect("lattice representative fits in i64")
                })
                .collect(),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn apply(a: &[Vec<i64>], x: &[i64]) -> Vec<i64> {
        a.iter().map(|r| r.iter().zip(x).map(|(p, q)| p * q).sum()).collect()
    }

    #[test]
    fn solves_integrally() {
        let a = vec![vec![3, 2]];
        let h = ColumnHnf::new(&a);
        for z in -5..6 {
            let x = h.solve(&[z]).unwrap();
            assert_eq!(apply(&a, &x), vec![z]);
        }
        let b = vec![vec![2, 4, 0], vec![0, 0, 3]];
        let h = ColumnHnf::new(&b);
        assert!(h.solve(&[1, 0]).is_none());
        assert!(h.solve(&[2, 1]).is_none());
        let x = h.solve(&[6, 9]).unwrap();
        assert_eq!(apply(&b, &x), vec![6, 9]);
    }
}
