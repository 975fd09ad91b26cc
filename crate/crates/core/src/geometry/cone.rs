//! Extreme rays of `{x in R^n : x >= 0, <h_k, x> = 0 for all k}` by the
//! double description method, starting from the orthant's unit rays.

use num_integer::Integer;

use crate::error::{Error, Result};

/// Largest ambient dimension accepted by the ray enumeration.
pub const MAX_RAY_DIM: usize = 6;

fn primitive(v: Vec<i128>) -> Vec<i128> {
    let g = v.iter().fold(0i128, |g, c| g.gcd(c));
    if g <= 1 {
        v
    } else {
        v.into_iter().map(|c| c / g).collect()
    }
}

fn zero_set(r: &[i128]) -> Vec<usize> {
    (0..r.len()).filter(|&i| r[i] == 0).collect()
}

/// Extreme rays as primitive integer vectors, sorted lexicographically.
pub fn extreme_rays(n: usize, hyperplanes: &[Vec<i64>]) -> Result<Vec<Vec<i64>>> {
    if n > MAX_RAY_DIM {
        return Err(Error::DimensionLimit { n, limit: MAX_RAY_DIM });
    }
    let mut rays: Vec<Vec<i128>> = (0..n)
        .map(|i| (0..n).map(|j| i128::from(i == j)).collect())
        .collect();
    for h in hyperplanes {
        let val = |r: &[i128]| -> i128 { r.iter().zip(h).map(|(a, b)| a * *b as i128).sum() };
        let (mut zero, mut pos, mut neg) = (Vec::new(), Vec::new(), Vec::new());
        for r in rays {
            match val(&r).signum() {
                0 => zero.push(r),
                1 => pos.push(r),
                _ => neg.push(r),
            }
        }
        let all: Vec<&Vec<i128>> = zero.iter().chain(&pos).chain(&neg).collect();
        let mut next = zero.clone();
        for p in &pos {
            for q in &neg {
                // Combinatorial adjacency: no third ray vanishes on the
                // common zero set of p and q.
                let common: Vec<usize> =
                    zero_set(p).into_iter().filter(|i| q[*i] == 0).collect();
                let adjacent = all.iter().all(|r| {
                    std::ptr::eq(*r, p)
                        || std::ptr::eq(*r, q)
                        || !common.iter().all(|&i| r[i] == 0)
                });
                if !adjacent {
                    continue;
                }
                let (vp, vq) = (val(p), -val(q));
                let r: Vec<i128> = p.iter().zip(q).map(|(a, b)| a * vq + b * vp).collect();
                next.push(primitive(r));
            }
        }
        next.sort();
        next.dedup();
        rays = next;
    }
    let mut out: Vec<Vec<i64>> = rays
        .into_iter()
        .map(|r| r.into_iter().map(|c| i64::try_from(c).expect("ray entry fits")).collect())
        .collect();
    out.sort();
    Ok(out)
}

/// Extreme rays of `{x >= 0 : <x, d> = 0}`.
pub fn orthogonal_rays(d: &[i64]) -> Result<Vec<Vec<i64>>> {
    extreme_rays(d.len(), &[d.to_vec()])
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Closed form for a single hyperplane: `e_i` where `d_i = 0` and
    /// `|d_j| e_i + d_i e_j` for every pair with `d_i > 0 > d_j`.
    fn closed_form(d: &[i64]) -> Vec<Vec<i64>> {
        let n = d.len();
        let mut out = Vec::new();
        for i in 0..n {
            if d[i] == 0 {
                let mut e = vec![0; n];
                e[i] = 1;
                out.push(e);
            }
        }
        for i in 0..n {
            for j in 0..n {
                if d[i] > 0 && d[j] < 0 {
                    let mut e = vec![0; n];
                    e[i] = -d[j];
                    e[j] = d[i];
                    let g = e.iter().fold(0i64, |g, c| g.gcd(c));
                    out.push(e.into_iter().map(|c| c / g).collect());
                }
            }
        }
        out.sort();
        out.dedup();
        out
    }

    #[test]
    fn matches_closed_form() {
        for d in [vec![2, -3], vec![1, 1, -1], vec![2, 3, -4], vec![1, -1, 0, 2], vec![0, 0, 1, -1, 3, -2]] {
            assert_eq!(orthogonal_rays(&d).unwrap(), closed_form(&d), "{d:?}");
        }
    }

    #[test]
    fn two_hyperplanes() {
        // x1 = x2 = x3 inside the orthant of R^3: the single ray (1,1,1).
        let rays = extreme_rays(3, &[vec![1, -1, 0], vec![0, 1, -1]]).unwrap();
        assert_eq!(rays, vec![vec![1, 1, 1]]);
    }

    #[test]
    fn dimension_limit() {
        assert!(matches!(orthogonal_rays(&[1, -1, 0, 0, 0, 0, 0]), Err(Error::DimensionLimit { .. })));
    }
}
