//! Small exact rational linear algebra (Gaussian elimination over `Q`).

use dashu_int::IBig;
use dashu_ratio::RBig;

pub type Rat = RBig;

pub fn rat(n: i64) -> Rat {
    RBig::from(IBig::from(n))
}

pub fn to_rat_matrix(m: &[Vec<i64>]) -> Vec<Vec<Rat>> {
    m.iter().map(|r| r.iter().map(|&x| rat(x)).collect()).collect()
}

/// Integer value of a rational if it is integral.
pub fn as_int(r: &Rat) -> Option<i64> {
    if *r.denominator() != dashu_int::UBig::ONE {
        return None;
    }
    i64::try_from(r.numerator()).ok()
}

/// Solution set of `a x = b`: a particular solution (free variables zero)
/// plus a basis of the null space. `None` when inconsistent.
pub fn solve(a: &[Vec<Rat>], b: &[Rat], ncols: usize) -> Option<(Vec<Rat>, Vec<Vec<Rat>>)> {
    let nrows = a.len();
    let mut m: Vec<Vec<Rat>> = a
        .iter()
        .zip(b)
        .map(|(r, bv)| {
            let mut row = r.clone();
            row.push(bv.clone());
            row
        })
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == nrows {
            break;
        }
        let Some(p) = (r..nrows).find(|&i| m[i][c] != Rat::ZERO) else {
            continue;
        };
        m.swap(r, p);
        let inv = Rat::ONE / m[r][c].clone();
        for x in m[r].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..nrows {
            if i != r && m[i][c] != Rat::ZERO {
                let f = m[i][c].clone();
                for j in c..=ncols {
                    let t = &m[r][j] * &f;
                    m[i][j] = &m[i][j] - t;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    if m[r..].iter().any(|row| row[ncols] != Rat::ZERO) {
        return None;
    }
    let mut x = vec![Rat::ZERO; ncols];
    for (i, &c) in pivots.iter().enumerate() {
        x[c] = m[i][ncols].clone();
    }
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    let mut kernel = Vec::new();
    for &f in &free {
        let mut v = vec![Rat::ZERO; ncols];
        v[f] = Rat::ONE;
        for (i, &c) in pivots.iter().enumerate() {
            v[c] = -m[i][f].clone();
        }
        kernel.push(v);
    }
    Some((x, kernel))
}

pub fn rank(a: &[Vec<Rat>], ncols: usize) -> usize {
    let zeros = vec![Rat::ZERO; a.len()];
    let (_, ker) = solve(a, &zeros, ncols).expect("homogeneous systems are consistent");
    ncols - ker.len()
}

/// A left inverse `L` (cols x rows) of a full-column-rank matrix, built from
/// an invertible square row subset. `None` when the rank is deficient.
pub fn left_inverse(b: &[Vec<Rat>], ncols: usize) -> Option<Vec<Vec<Rat>>> {
    let nrows = b.len();
    // pick independent rows greedily
    let mut chosen: Vec<usize> = Vec::new();
    let mut basis: Vec<Vec<Rat>> = Vec::new();
    for i in 0..nrows {
        let mut cand = basis.clone();
        cand.push(b[i].clone());
        if rank(&cand, ncols) == cand.len() {
            basis = cand;
            chosen.push(i);
            if chosen.len() == ncols {
                break;
            }
        }
    }
    if chosen.len() < ncols {
        return None;
    }
    // invert the square submatrix column by column
    let mut l = vec![vec![Rat::ZERO; nrows]; ncols];
    for (t, &row) in chosen.iter().enumerate() {
        let mut e = vec![Rat::ZERO; ncols];
        e[t] = Rat::ONE;
        let (x, _) = solve(&basis, &e, ncols)?;
        for k in 0..ncols {
            l[k][row] = x[k].clone();
        }
    }
    Some(l)
}

pub fn mat_mul(a: &[Vec<Rat>], b: &[Vec<Rat>], inner: usize, ncols: usize) -> Vec<Vec<Rat>> {
    a.iter()
        .map(|row| {
            (0..ncols)
                .map(|j| {
                    let mut s = Rat::ZERO;
                    for t in 0..inner {
                        if row[t] != Rat::ZERO && b[t][j] != Rat::ZERO {
                            s = s + &row[t] * &b[t][j];
                        }
                    }
                    s
                })
                .collect()
        })
        .collect()
}

/// Inverse of a square matrix, `None` when singular.
pub fn inverse(a: &[Vec<Rat>]) -> Option<Vec<Vec<Rat>>> {
    let n = a.len();
    if rank(a, n) < n {
        return None;
    }
    let mut out = vec![vec![Rat::ZERO; n]; n];
    for j in 0..n {
        let mut e = vec![Rat::ZERO; n];
        e[j] = Rat::ONE;
        let (x, _) = solve(a, &e, n)?;
        for i in 0..n {
            out[i][j] = x[i].clone();
        }
    }
    Some(out)
}

pub fn mat_vec(a: &[Vec<Rat>], v: &[Rat]) -> Vec<Rat> {
    a.iter()
        .map(|row| {
            let mut s = Rat::ZERO;
            for (x, y) in row.iter().zip(v) {
                if *x != Rat::ZERO && *y != Rat::ZERO {
                    s = s + x * y;
                }
            }
            s
        })
        .collect()
}

/// Integer solutions of `a x = b`: a particular solution and a basis of the
/// integer kernel lattice, via unimodular column reduction. `None` when there
/// is no integer solution or an intermediate value overflows.
pub fn int_solve(a: &[Vec<i64>], b: &[i64], ncols: usize) -> Option<(Vec<i64>, Vec<Vec<i64>>)> {
    let m = a.len();
    let mut h: Vec<Vec<i128>> = a.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let mut u: Vec<Vec<i128>> = (0..ncols).map(|i| (0..ncols).map(|j| (i == j) as i128).collect()).collect();
    let col_op = |h: &mut Vec<Vec<i128>>, u: &mut Vec<Vec<i128>>, dst: usize, src: usize, f: i128| -> Option<()> {
        for row in h.iter_mut().chain(u.iter_mut()) {
            row[dst] = row[dst].checked_sub(f.checked_mul(row[src])?)?;
        }
        Some(())
    };
    let swap = |h: &mut Vec<Vec<i128>>, u: &mut Vec<Vec<i128>>, x: usize, y: usize| {
        for row in h.iter_mut().chain(u.iter_mut()) {
            row.swap(x, y);
        }
    };
    let mut pivots: Vec<(usize, usize)> = Vec::new();
    let mut p = 0;
    for r in 0..m {
        if p == ncols {
            break;
        }
        loop {
            let best = (p..ncols).filter(|&c| h[r][c] != 0).min_by_key(|&c| h[r][c].abs());
            let Some(c) = best else { break };
            swap(&mut h, &mut u, p, c);
            let mut done = true;
            for c in p + 1..ncols {
                if h[r][c] != 0 {
                    let f = h[r][c] / h[r][p];
                    col_op(&mut h, &mut u, c, p, f)?;
                    if h[r][c] != 0 {
                        done = false;
                    }
                }
            }
            if done {
                break;
            }
        }
        if h[r][p] != 0 {
            pivots.push((r, p));
            p += 1;
        }
    }
    let mut y = vec![0i128; ncols];
    for &(r, c) in &pivots {
        let mut rest = b[r] as i128;
        for c2 in 0..c {
            rest = rest.checked_sub(h[r][c2].checked_mul(y[c2])?)?;
        }
        if rest % h[r][c] != 0 {
            return None;
        }
        y[c] = rest / h[r][c];
    }
    for r in 0..m {
        let mut s = 0i128;
        for c in 0..p {
            s = s.checked_add(h[r][c].checked_mul(y[c])?)?;
        }
        if s != b[r] as i128 {
            return None;
        }
    }
    let mut x = vec![0i64; ncols];
    for (i, xi) in x.iter_mut().enumerate() {
        let mut s = 0i128;
        for c in 0..p {
            s = s.checked_add(u[i][c].checked_mul(y[c])?)?;
        }
        *xi = i64::try_from(s).ok()?;
    }
    let kernel = (p..ncols)
        .map(|c| (0..ncols).map(|i| i64::try_from(u[i][c]).ok()).collect::<Option<Vec<i64>>>())
        .collect::<Option<Vec<_>>>()?;
    Some((x, kernel))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn solve_with_kernel() {
        let a = to_rat_matrix(&[vec![1, 2, 3], vec![2, 4, 7]]);
        let b = vec![rat(1), rat(3)];
        let (x, ker) = solve(&a, &b, 3).unwrap();
        assert_eq!(mat_vec(&a, &x), b);
        assert_eq!(ker.len(), 1);
        assert_eq!(mat_vec(&a, &ker[0]), vec![rat(0), rat(0)]);
    }

    #[test]
    fn inconsistent_and_left_inverse() {
        let a = to_rat_matrix(&[vec![1, 1], vec![1, 1]]);
        assert!(solve(&a, &[rat(1), rat(2)], 2).is_none());
        assert!(left_inverse(&a, 2).is_none());
        let b = to_rat_matrix(&[vec![0, 1], vec![1, 0], vec![1, 1]]);
        let l = left_inverse(&b, 2).unwrap();
        for j in 0..2 {
            let col: Vec<Rat> = b.iter().map(|r| r[j].clone()).collect();
            let v = mat_vec(&l, &col);
            for (i, x) in v.iter().enumerate() {
                assert_eq!(*x, if i == j { rat(1) } else { rat(0) });
            }
        }
    }

    #[test]
    fn integer_solutions() {
        let a = vec![vec![2, 4], vec![0, 3]];
        assert!(int_solve(&a, &[1, 0], 2).is_none());
        let (x, k) = int_solve(&a, &[2, 3], 2).unwrap();
        assert_eq!(x, vec![-1, 1]);
        assert!(k.is_empty());
        let (x, k) = int_solve(&[vec![2, 3, 5]], &[7], 3).unwrap();
        assert_eq!(2 * x[0] + 3 * x[1] + 5 * x[2], 7);
        assert_eq!(k.len(), 2);
        for v in &k {
            assert_eq!(2 * v[0] + 3 * v[1] + 5 * v[2], 0);
        }
    }
}
