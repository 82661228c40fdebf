//! Integer vectors in `Z^2` and the small amount of integer linear algebra
//! needed to solve for edge windings.

use std::fmt;
use std::ops::{Add, AddAssign, Neg, Sub, SubAssign};

use serde::{Deserialize, Serialize};

/// A homology class (or winding) in `H_1(T; Z) = Z^2`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Vec2 {
    pub u: i64,
    pub v: i64,
}

impl Vec2 {
    pub const ZERO: Vec2 = Vec2 { u: 0, v: 0 };

    pub const fn new(u: i64, v: i64) -> Self {
        Self { u, v }
    }

    pub fn is_zero(self) -> bool {
        self.u == 0 && self.v == 0
    }

    /// Reduction into `H_1(T; Z_2)`.
    pub fn mod2(self) -> [u8; 2] {
        [self.u.rem_euclid(2) as u8, self.v.rem_euclid(2) as u8]
    }

    /// `gcd(|u|, |v|) == 1`
    pub fn is_primitive(self) -> bool {
        gcd(self.u, self.v) == 1
    }

    pub fn cross(self, other: Vec2) -> i64 {
        self.u * other.v - self.v * other.u
    }

    /// Applies the integer matrix `[[m00, m01], [m10, m11]]`.
    pub fn transform(self, m: [[i64; 2]; 2]) -> Vec2 {
        Vec2::new(m[0][0] * self.u + m[0][1] * self.v, m[1][0] * self.u + m[1][1] * self.v)
    }

    pub fn scale(self, k: i64) -> Vec2 {
        Vec2::new(self.u * k, self.v * k)
    }
}

impl fmt::Display for Vec2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.u, self.v)
    }
}

impl Add for Vec2 {
    type Output = Vec2;
    fn add(self, o: Vec2) -> Vec2 {
        Vec2::new(self.u + o.u, self.v + o.v)
    }
}

impl AddAssign for Vec2 {
    fn add_assign(&mut self, o: Vec2) {
        self.u += o.u;
        self.v += o.v;
    }
}

impl Sub for Vec2 {
    type Output = Vec2;
    fn sub(self, o: Vec2) -> Vec2 {
        Vec2::new(self.u - o.u, self.v - o.v)
    }
}

impl SubAssign for Vec2 {
    fn sub_assign(&mut self, o: Vec2) {
        self.u -= o.u;
        self.v -= o.v;
    }
}

impl Neg for Vec2 {
    type Output = Vec2;
    fn neg(self) -> Vec2 {
        Vec2::new(-self.u, -self.v)
    }
}

impl std::iter::Sum for Vec2 {
    fn sum<I: Iterator<Item = Vec2>>(iter: I) -> Vec2 {
        iter.fold(Vec2::ZERO, |a, b| a + b)
    }
}

pub fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Extended gcd: returns `(g, s, t)` with `s*a + t*b = g >= 0`.
fn ext_gcd(a: i64, b: i64) -> (i64, i64, i64) {
    let (mut r0, mut r1) = (a, b);
    let (mut s0, mut s1) = (1i64, 0i64);
    let (mut t0, mut t1) = (0i64, 1i64);
    while r1 != 0 {
        let q = r0.div_euclid(r1);
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if r0 < 0 {
        (-r0, -s0, -t0)
    } else {
        (r0, s0, t0)
    }
}

/// Column echelon form `A * C = H` with `C` unimodular.
///
/// `H` is lower echelon: each pivot column has a pivot row strictly below the
/// previous one, and all columns after `rank` are zero.
pub struct ColumnEchelon {
    pub h: Vec<Vec<i64>>,
    pub c: Vec<Vec<i64>>,
    pub pivots: Vec<usize>,
}

impl ColumnEchelon {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Columns of `C` spanning the integer kernel of `A` (a saturated basis).
    pub fn kernel(&self) -> Vec<Vec<i64>> {
        let cols = self.c.len();
        (self.rank()..cols)
            .map(|j| (0..cols).map(|i| self.c[i][j]).collect())
            .collect()
    }

    /// Some integer solution of `A x = b`, if one exists.
    pub fn solve(&self, b: &[i64]) -> Option<Vec<i64>> {
        let rows = self.h.len();
        let cols = self.c.len();
        let mut y = vec![0i64; cols];
        let mut residual = b.to_vec();
        for (k, &r) in self.pivots.iter().enumerate() {
            // rows above the pivot must already be satisfied
            let piv = self.h[r][k];
            if residual[r] % piv != 0 {
                return None;
            }
            y[k] = residual[r] / piv;
            for (i, res) in residual.iter_mut().enumerate() {
                *res -= self.h[i][k] * y[k];
            }
        }
        if (0..rows).any(|i| residual[i] != 0) {
            return None;
        }
        Some((0..cols).map(|i| (0..cols).map(|j| self.c[i][j] * y[j]).sum()).collect())
    }
}

pub fn column_echelon(a: &[Vec<i64>], cols: usize) -> ColumnEchelon {
    let rows = a.len();
    let mut h: Vec<Vec<i64>> = a.to_vec();
    let mut c: Vec<Vec<i64>> = (0..cols)
        .map(|i| (0..cols).map(|j| i64::from(i == j)).collect())
        .collect();
    let mut pivots = Vec::new();
    let mut next = 0usize;
    for r in 0..rows {
        if next == cols {
            break;
        }
        // eliminate row r across columns next.., gathering the gcd in column `next`
        for j in next + 1..cols {
            if h[r][j] == 0 {
                continue;
            }
            let (x, y) = (h[r][next], h[r][j]);
            let (g, s, t) = ext_gcd(x, y);
            let (p, q) = (x / g, y / g);
            // [col_next, col_j] <- [s*col_next + t*col_j, -q*col_next + p*col_j]
            for m in [&mut h, &mut c] {
                for row in m.iter_mut() {
                    let (cn, cj) = (row[next], row[j]);
                    row[next] = s * cn + t * cj;
                    row[j] = -q * cn + p * cj;
                }
            }
        }
        if h[r][next] != 0 {
            if h[r][next] < 0 {
                for m in [&mut h, &mut c] {
                    for row in m.iter_mut() {
                        row[next] = -row[next];
                    }
                }
            }
            pivots.push(r);
            next += 1;
        }
    }
    ColumnEchelon { h, c, pivots }
}

/// Index of the sublattice of `Z^2` spanned by `gens` (0 if rank < 2).
pub fn lattice_index(gens: &[Vec2]) -> i64 {
    let mut g = 0;
    for (i, a) in gens.iter().enumerate() {
        for b in &gens[i + 1..] {
            g = gcd(g, a.cross(*b));
        }
    }
    g
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kernel_of_small_matrix() {
        let a = vec![vec![2, 4, 6], vec![1, 1, 1]];
        let e = column_echelon(&a, 3);
        assert_eq!(e.rank(), 2);
        for k in e.kernel() {
            for row in &a {
                assert_eq!(row.iter().zip(&k).map(|(x, y)| x * y).sum::<i64>(), 0);
            }
        }
        let x = e.solve(&[8, 3]).unwrap();
        assert_eq!(a[0].iter().zip(&x).map(|(p, q)| p * q).sum::<i64>(), 8);
        assert_eq!(a[1].iter().zip(&x).map(|(p, q)| p * q).sum::<i64>(), 3);
        assert!(e.solve(&[1, 0]).is_none());
    }

    #[test]
    fn index_of_lattices() {
        assert_eq!(lattice_index(&[Vec2::new(1, 0), Vec2::new(0, 1)]), 1);
        assert_eq!(lattice_index(&[Vec2::new(2, 0), Vec2::new(0, 1)]), 2);
        assert_eq!(lattice_index(&[Vec2::new(1, 1), Vec2::new(2, 2)]), 0);
        assert_eq!(lattice_index(&[Vec2::new(2, 0), Vec2::new(0, 2), Vec2::new(1, 1)]), 2);
    }
}
