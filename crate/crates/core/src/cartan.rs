//! Symmetrizable Cartan data. Letters of `J` are `1..=rank`.

use crate::error::{QError, QResult};
use crate::linalg;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cartan {
    c: Vec<Vec<i64>>,
    sym: Vec<i64>,
}

fn lcm(a: i64, b: i64) -> i64 {
    let (mut x, mut y) = (a, b);
    while y != 0 {
        (x, y) = (y, x % y);
    }
    a / x * b
}

impl Cartan {
    /// `sym[a]` are the symmetrizers `D_a` with `D_a C_ab = D_b C_ba`.
    pub fn new(c: Vec<Vec<i64>>, sym: Vec<i64>) -> QResult<Cartan> {
        let n = c.len();
        if sym.len() != n || c.iter().any(|r| r.len() != n) {
            return Err(QError::Invalid("Cartan matrix and symmetrizers must be square of equal size".into()));
        }
        for a in 0..n {
            if c[a][a] != 2 {
                return Err(QError::Invalid(format!("diagonal entry C[{0}][{0}] must be 2", a + 1)));
            }
            if sym[a] <= 0 {
                return Err(QError::Invalid("symmetrizers must be positive".into()));
            }
            for b in 0..n {
                if a != b {
                    if c[a][b] > 0 {
                        return Err(QError::Invalid("off-diagonal Cartan entries must be nonpositive".into()));
                    }
                    if (c[a][b] == 0) != (c[b][a] == 0) {
                        return Err(QError::Invalid("C_ab = 0 must imply C_ba = 0".into()));
                    }
                }
                if sym[a] * c[a][b] != sym[b] * c[b][a] {
                    return Err(QError::Invalid(format!("D does not symmetrize C at ({}, {})", a + 1, b + 1)));
                }
            }
        }
        Ok(Cartan { c, sym })
    }

    /// Finite types `A_n, B_n, C_n, D_n, G_2` with Bourbaki numbering.
    pub fn of_type(name: &str) -> QResult<Cartan> {
        let bad = || QError::Invalid(format!("unknown Cartan type {name:?}"));
        let (kind, rank) = name.split_at(1.min(name.len()));
        let n: usize = rank.parse().map_err(|_| bad())?;
        if n == 0 || n > 64 {
            return Err(bad());
        }
        let mut c = vec![vec![0i64; n]; n];
        for a in 0..n {
            c[a][a] = 2;
            if a + 1 < n {
                c[a][a + 1] = -1;
                c[a + 1][a] = -1;
            }
        }
        let mut sym = vec![1i64; n];
        match kind {
            "A" => {}
            "B" if n >= 2 => {
                c[n - 1][n - 2] = -2;
                sym = vec![2; n];
                sym[n - 1] = 1;
            }
            "C" if n >= 2 => {
                c[n - 2][n - 1] = -2;
                sym[n - 1] = 2;
            }
            "D" if n >= 4 => {
                c[n - 2][n - 1] = 0;
                c[n - 1][n - 2] = 0;
                c[n - 3][n - 1] = -1;
                c[n - 1][n - 3] = -1;
            }
            "G" if n == 2 => {
                c[1][0] = -3;
                sym = vec![3, 1];
            }
            _ => return Err(bad()),
        }
        Cartan::new(c, sym)
    }

    pub fn rank(&self) -> usize {
        self.c.len()
    }

    /// `C_ab` for letters `a, b` in `1..=rank`.
    pub fn entry(&self, a: i64, b: i64) -> i64 {
        self.c[(a - 1) as usize][(b - 1) as usize]
    }

    pub fn matrix(&self) -> &[Vec<i64>] {
        &self.c
    }

    /// `D_a`.
    pub fn sym(&self, a: i64) -> i64 {
        self.sym[(a - 1) as usize]
    }

    pub fn syms(&self) -> &[i64] {
        &self.sym
    }

    /// `D_a^∨ = lcm(D) / D_a`.
    pub fn dual_sym(&self, a: i64) -> i64 {
        let l = self.sym.iter().fold(1, |x, &y| lcm(x, y));
        l / self.sym(a)
    }

    pub fn letters(&self) -> impl Iterator<Item = i64> {
        1..=self.rank() as i64
    }

    /// Positive definiteness of the symmetrized matrix `D C`, via
    /// leading principal minors over the rationals.
    pub fn is_finite_type(&self) -> bool {
        let n = self.rank();
        let m: Vec<Vec<i64>> = (0..n).map(|a| (0..n).map(|b| self.sym[a] * self.c[a][b]).collect()).collect();
        let mut a = linalg::to_rat_matrix(&m);
        for k in 0..n {
            if a[k][k] <= linalg::Rat::ZERO {
                return false;
            }
            for i in k + 1..n {
                let f = &a[i][k] / &a[k][k];
                for j in k..n {
                    let t = &f * &a[k][j];
                    a[i][j] = &a[i][j] - t;
                }
            }
        }
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn named_types() {
        let b3 = Cartan::of_type("B3").unwrap();
        assert_eq!(b3.matrix(), &[vec![2, -1, 0], vec![-1, 2, -1], vec![0, -2, 2]]);
        assert_eq!(b3.syms(), &[2, 2, 1]);
        assert_eq!(b3.dual_sym(3), 2);
        assert!(b3.is_finite_type());
        assert!(Cartan::of_type("G2").unwrap().is_finite_type());
        assert!(Cartan::of_type("D4").unwrap().is_finite_type());
        assert!(Cartan::of_type("X2").is_err());
    }

    #[test]
    fn affine_is_not_finite() {
        let c = Cartan::new(vec![vec![2, -2], vec![-2, 2]], vec![1, 1]).unwrap();
        assert!(!c.is_finite_type());
        assert!(Cartan::new(vec![vec![2, -1], vec![-2, 2]], vec![1, 1]).is_err());
    }
}
