//! Smith normal form over the integers with unimodular transforms.
//!
//! `smith_normal_form(A)` returns `(U, D, V)` with `U·A·V = D`, where `D` is
//! diagonal, its diagonal entries are non-negative, and each divides the next.
//! A row Hermite pass comes first, which keeps the left transform close to
//! `H·A⁻¹`; diagonalisation then pivots on the smallest entry, and a final
//! Bezout pass turns the diagonal into a divisibility chain. Arithmetic is
//! `i128` internally; a transform entry outside `i64` is reported as
//! [`AlgebraError::Overflow`].

use crate::error::AlgebraError;
use crate::matrix::{narrow, Matrix};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithForm {
    pub left: Matrix,
    pub diagonal: Matrix,
    pub right: Matrix,
}

impl SmithForm {
    /// The diagonal entries `d_1 | d_2 | ...`, zeros included.
    pub fn diagonal_entries(&self) -> Vec<i64> {
        let n = self.diagonal.rows().min(self.diagonal.cols());
        (0..n).map(|i| self.diagonal.get(i, i)).collect()
    }

    pub fn rank(&self) -> usize {
        self.diagonal_entries().iter().filter(|&&d| d != 0).count()
    }
}

/// Work is done in `i128` and narrowed once at the end, so transient
/// growth during elimination does not overflow.
struct Reducer {
    d: Vec<Vec<i128>>,
    u: Vec<Vec<i128>>,
    v: Vec<Vec<i128>>,
}

fn wide(m: &Matrix) -> Vec<Vec<i128>> {
    (0..m.rows()).map(|i| m.row(i).iter().map(|&x| x as i128).collect()).collect()
}

fn narrow_all(m: &[Vec<i128>], cols: usize) -> Result<Matrix, AlgebraError> {
    let rows = m
        .iter()
        .map(|r| r.iter().map(|&x| narrow(x)).collect::<Result<Vec<_>, _>>())
        .collect::<Result<Vec<_>, _>>()?;
    Matrix::from_rows(&rows, cols)
}

fn checked(x: Option<i128>) -> Result<i128, AlgebraError> {
    x.ok_or(AlgebraError::Overflow)
}

/// `row[dst] += q * row[src]`
fn add_row(m: &mut [Vec<i128>], dst: usize, src: usize, q: i128) -> Result<(), AlgebraError> {
    for j in 0..m[dst].len() {
        m[dst][j] = checked(m[src][j].checked_mul(q).and_then(|x| x.checked_add(m[dst][j])))?;
    }
    Ok(())
}

/// `col[dst] += q * col[src]`
fn add_col(m: &mut [Vec<i128>], dst: usize, src: usize, q: i128) -> Result<(), AlgebraError> {
    for row in m.iter_mut() {
        row[dst] = checked(row[src].checked_mul(q).and_then(|x| x.checked_add(row[dst])))?;
    }
    Ok(())
}

fn swap_cols(m: &mut [Vec<i128>], a: usize, b: usize) {
    for row in m.iter_mut() {
        row.swap(a, b);
    }
}

impl Reducer {
    fn shape(&self) -> (usize, usize) {
        (self.d.len(), self.v.len())
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        self.d.swap(a, b);
        self.u.swap(a, b);
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        swap_cols(&mut self.d, a, b);
        swap_cols(&mut self.v, a, b);
    }

    fn add_row(&mut self, dst: usize, src: usize, q: i128) -> Result<(), AlgebraError> {
        add_row(&mut self.d, dst, src, q)?;
        add_row(&mut self.u, dst, src, q)
    }

    fn add_col(&mut self, dst: usize, src: usize, q: i128) -> Result<(), AlgebraError> {
        add_col(&mut self.d, dst, src, q)?;
        add_col(&mut self.v, dst, src, q)
    }

    fn negate_row(&mut self, r: usize) {
        for m in [&mut self.d, &mut self.u] {
            for x in m[r].iter_mut() {
                *x = -*x;
            }
        }
    }

    fn smallest_from(&self, t: usize) -> Option<(usize, usize)> {
        let (m, n) = self.shape();
        let mut best: Option<(usize, usize, u128)> = None;
        for i in t..m {
            for j in t..n {
                let a = self.d[i][j].unsigned_abs();
                if a != 0 && best.is_none_or(|(_, _, b)| a < b) {
                    best = Some((i, j, a));
                }
            }
        }
        best.map(|(i, j, _)| (i, j))
    }

    /// Row Hermite form: row operations only, each pivot column cleared
    /// below by Euclid steps and reduced above modulo the pivot.
    fn hermite_rows(&mut self) -> Result<(), AlgebraError> {
        let (m, n) = self.shape();
        let mut r = 0;
        for c in 0..n {
            if r == m {
                break;
            }
            loop {
                let Some(p) = (r..m).filter(|&i| self.d[i][c] != 0).min_by_key(|&i| self.d[i][c].unsigned_abs()) else {
                    break;
                };
                self.swap_rows(r, p);
                let mut done = true;
                for i in r + 1..m {
                    let q = nearest_quotient(self.d[i][c], self.d[r][c]);
                    if q != 0 {
                        self.add_row(i, r, -q)?;
                    }
                    done &= self.d[i][c] == 0;
                }
                if done {
                    if self.d[r][c] < 0 {
                        self.negate_row(r);
                    }
                    for i in 0..r {
                        let q = nearest_quotient(self.d[i][c], self.d[r][c]);
                        if q != 0 {
                            self.add_row(i, r, -q)?;
                        }
                    }
                    r += 1;
                    break;
                }
            }
        }
        Ok(())
    }

    /// The diagonal entry at `t` is nonzero and divides the rest of its row
    /// and column, so it clears them without Euclid steps.
    fn divides_cross(&self, t: usize) -> bool {
        let p = self.d[t][t];
        let (m, n) = self.shape();
        p != 0 && (t + 1..m).all(|i| self.d[i][t] % p == 0) && (t + 1..n).all(|j| self.d[t][j] % p == 0)
    }

    fn run(&mut self) -> Result<(), AlgebraError> {
        self.hermite_rows()?;
        let (m, n) = self.shape();
        'pivots: for t in 0..m.min(n) {
            loop {
                if !self.divides_cross(t) {
                    let Some((pi, pj)) = self.smallest_from(t) else {
                        break 'pivots;
                    };
                    self.swap_rows(t, pi);
                    self.swap_cols(t, pj);
                }
                let p = self.d[t][t];
                let mut clean = true;
                for i in t + 1..m {
                    let q = nearest_quotient(self.d[i][t], p);
                    if q != 0 {
                        self.add_row(i, t, -q)?;
                    }
                    clean &= self.d[i][t] == 0;
                }
                for j in t + 1..n {
                    let q = nearest_quotient(self.d[t][j], p);
                    if q != 0 {
                        self.add_col(j, t, -q)?;
                    }
                    clean &= self.d[t][j] == 0;
                }
                if clean {
                    break;
                }
            }
        }
        self.enforce_divisibility()
    }

    /// Turns a diagonal matrix into one whose entries form a divisibility
    /// chain, replacing each pair `(a, b)` by `(gcd, lcm)` with a 2×2
    /// Bezout transform on both sides.
    fn enforce_divisibility(&mut self) -> Result<(), AlgebraError> {
        let (m, n) = self.shape();
        let r = (0..m.min(n)).take_while(|&i| self.d[i][i] != 0).count();
        for i in 0..r {
            for j in i + 1..r {
                let (a, b) = (self.d[i][i], self.d[j][j]);
                if b % a == 0 {
                    continue;
                }
                let (g, s, t) = extended_gcd(a, b);
                let (ag, bg) = (a / g, b / g);
                combine_rows(&mut self.d, i, j, [s, t, -bg, ag])?;
                combine_rows(&mut self.u, i, j, [s, t, -bg, ag])?;
                let tb = checked(t.checked_mul(bg))?;
                let sa = checked(s.checked_mul(ag))?;
                combine_cols(&mut self.d, i, j, [1, -tb, 1, sa])?;
                combine_cols(&mut self.v, i, j, [1, -tb, 1, sa])?;
            }
        }
        for t in 0..r {
            if self.d[t][t] < 0 {
                self.negate_row(t);
            }
        }
        Ok(())
    }
}

/// `(g, s, t)` with `g = gcd(a, b) = s·a + t·b`.
fn extended_gcd(a: i128, b: i128) -> (i128, i128, i128) {
    let (mut r0, mut r1, mut s0, mut s1, mut t0, mut t1) = (a, b, 1, 0, 0, 1);
    while r1 != 0 {
        let q = r0.div_euclid(r1);
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    (r0, s0, t0)
}

/// Replaces rows `(i, j)` by `[[k0, k1], [k2, k3]]` times them.
fn combine_rows(m: &mut [Vec<i128>], i: usize, j: usize, k: [i128; 4]) -> Result<(), AlgebraError> {
    for c in 0..m[i].len() {
        let (x, y) = (m[i][c], m[j][c]);
        m[i][c] = checked(k[0].checked_mul(x).zip(k[1].checked_mul(y)).and_then(|(p, q)| p.checked_add(q)))?;
        m[j][c] = checked(k[2].checked_mul(x).zip(k[3].checked_mul(y)).and_then(|(p, q)| p.checked_add(q)))?;
    }
    Ok(())
}

/// Replaces columns `(i, j)` by themselves times `[[k0, k1], [k2, k3]]`.
fn combine_cols(m: &mut [Vec<i128>], i: usize, j: usize, k: [i128; 4]) -> Result<(), AlgebraError> {
    for row in m.iter_mut() {
        let (x, y) = (row[i], row[j]);
        row[i] = checked(x.checked_mul(k[0]).zip(y.checked_mul(k[2])).and_then(|(p, q)| p.checked_add(q)))?;
        row[j] = checked(x.checked_mul(k[1]).zip(y.checked_mul(k[3])).and_then(|(p, q)| p.checked_add(q)))?;
    }
    Ok(())
}

/// `a / b` rounded to the nearest integer, so remainders are at most `|b| / 2`.
fn nearest_quotient(a: i128, b: i128) -> i128 {
    let (q, r) = (a.div_euclid(b), a.rem_euclid(b));
    if 2 * r > b.abs() {
        q + b.signum()
    } else {
        q
    }
}

pub fn smith_normal_form(a: &Matrix) -> Result<SmithForm, AlgebraError> {
    let mut r = Reducer {
        d: wide(a),
        u: wide(&Matrix::identity(a.rows())),
        v: wide(&Matrix::identity(a.cols())),
    };
    r.run()?;
    Ok(SmithForm {
        left: narrow_all(&r.u, a.rows())?,
        diagonal: narrow_all(&r.d, a.cols())?,
        right: narrow_all(&r.v, a.cols())?,
    })
}
