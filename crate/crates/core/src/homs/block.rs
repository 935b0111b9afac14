//! Block maps over direct sums `G_1 ⊕ ... ⊕ G_m`.
//!
//! Block `(i, j)` maps factor `j` into factor `i`, matching the matrix of
//! components of a self-map of a product.

use crate::abgroup::CyclicSum;
use crate::error::AlgebraError;
use crate::matrix::Matrix;

use super::{invert, is_automorphism, Homomorphism};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockMap {
    factors: Vec<CyclicSum>,
    blocks: Vec<Vec<Homomorphism>>,
}

impl BlockMap {
    pub fn new(factors: Vec<CyclicSum>, blocks: Vec<Vec<Homomorphism>>) -> Result<Self, AlgebraError> {
        let m = factors.len();
        if blocks.len() != m || blocks.iter().any(|row| row.len() != m) {
            return Err(AlgebraError::NotSquare);
        }
        for (i, row) in blocks.iter().enumerate() {
            for (j, b) in row.iter().enumerate() {
                if b.source() != &factors[j] || b.target() != &factors[i] {
                    return Err(AlgebraError::IncompatibleGroups);
                }
            }
        }
        Ok(BlockMap { factors, blocks })
    }

    /// Splits an endomorphism of the concatenated sum into blocks.
    pub fn from_flat(factors: Vec<CyclicSum>, f: &Homomorphism) -> Result<Self, AlgebraError> {
        if f.source() != &CyclicSum::concat(&factors) || !f.is_endomorphism() {
            return Err(AlgebraError::IncompatibleGroups);
        }
        let offsets = offsets(&factors);
        let blocks = (0..factors.len())
            .map(|i| {
                (0..factors.len())
                    .map(|j| {
                        let sub = f.matrix().submatrix(
                            offsets[i],
                            offsets[i + 1],
                            offsets[j],
                            offsets[j + 1],
                        );
                        Homomorphism::new(factors[j].clone(), factors[i].clone(), sub)
                    })
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(BlockMap { factors, blocks })
    }

    pub fn identity(factors: Vec<CyclicSum>) -> Self {
        let blocks = (0..factors.len())
            .map(|i| {
                (0..factors.len())
                    .map(|j| {
                        if i == j {
                            Homomorphism::identity(&factors[i])
                        } else {
                            Homomorphism::zero(&factors[j], &factors[i])
                        }
                    })
                    .collect()
            })
            .collect();
        BlockMap { factors, blocks }
    }

    pub fn factors(&self) -> &[CyclicSum] {
        &self.factors
    }

    pub fn size(&self) -> usize {
        self.factors.len()
    }

    pub fn block(&self, i: usize, j: usize) -> &Homomorphism {
        &self.blocks[i][j]
    }

    pub fn flatten(&self) -> Homomorphism {
        let total = CyclicSum::concat(&self.factors);
        let offsets = offsets(&self.factors);
        let mut m = Matrix::zeros(total.len(), total.len());
        for (i, row) in self.blocks.iter().enumerate() {
            for (j, b) in row.iter().enumerate() {
                m.paste(offsets[i], offsets[j], b.matrix());
            }
        }
        Homomorphism::new(total.clone(), total, m).expect("blocks are individually well defined")
    }

    pub fn compose(&self, other: &BlockMap) -> Result<BlockMap, AlgebraError> {
        if self.factors != other.factors {
            return Err(AlgebraError::IncompatibleGroups);
        }
        let m = self.size();
        let mut blocks = Vec::with_capacity(m);
        for i in 0..m {
            let mut row = Vec::with_capacity(m);
            for j in 0..m {
                let mut acc = Homomorphism::zero(&self.factors[j], &self.factors[i]);
                for k in 0..m {
                    acc = acc.add(&self.blocks[i][k].compose(&other.blocks[k][j])?)?;
                }
                row.push(acc);
            }
            blocks.push(row);
        }
        Ok(BlockMap {
            factors: self.factors.clone(),
            blocks,
        })
    }

    pub fn add(&self, other: &BlockMap) -> Result<BlockMap, AlgebraError> {
        if self.factors != other.factors {
            return Err(AlgebraError::IncompatibleGroups);
        }
        let blocks = self
            .blocks
            .iter()
            .zip(&other.blocks)
            .map(|(r, s)| r.iter().zip(s).map(|(a, b)| a.add(b)).collect())
            .collect::<Result<Vec<Vec<_>>, _>>()?;
        Ok(BlockMap {
            factors: self.factors.clone(),
            blocks,
        })
    }

    pub fn is_lower_triangular(&self) -> bool {
        (0..self.size()).all(|i| (i + 1..self.size()).all(|j| self.blocks[i][j].is_zero()))
    }

    pub fn is_unit_upper_triangular(&self) -> bool {
        (0..self.size()).all(|i| {
            self.blocks[i][i] == Homomorphism::identity(&self.factors[i])
                && (0..i).all(|j| self.blocks[i][j].is_zero())
        })
    }

    /// Whether every diagonal block is an automorphism.
    pub fn has_invertible_diagonal(&self) -> Result<bool, AlgebraError> {
        for i in 0..self.size() {
            if !is_automorphism(&self.blocks[i][i])? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

fn offsets(factors: &[CyclicSum]) -> Vec<usize> {
    let mut out = vec![0];
    for f in factors {
        out.push(out.last().unwrap() + f.len());
    }
    out
}

pub fn is_block_invertible(m: &BlockMap) -> Result<bool, AlgebraError> {
    is_automorphism(&m.flatten())
}

/// `D − C∘A⁻¹∘B` for `M = [[A, B], [C, D]]`.
pub fn schur_complement(m: &BlockMap) -> Result<Homomorphism, AlgebraError> {
    if m.size() != 2 {
        return Err(AlgebraError::NotSquare);
    }
    let a_inv = invert(m.block(0, 0))?;
    let correction = m.block(1, 0).compose(&a_inv)?.compose(m.block(0, 1))?;
    m.block(1, 1).sub(&correction)
}

/// Block LU by elimination: `M = L∘U` with `L` lower triangular whose
/// diagonal blocks are the successive Schur pivots, and `U` unit upper
/// triangular. Returns `None` when a diagonal block of `M` or a pivot is
/// not an automorphism.
pub fn lu_factorize(m: &BlockMap) -> Result<Option<(BlockMap, BlockMap)>, AlgebraError> {
    if !m.has_invertible_diagonal()? {
        return Ok(None);
    }
    let size = m.size();
    let fs = &m.factors;
    let mut lower: Vec<Vec<Homomorphism>> = (0..size)
        .map(|i| (0..size).map(|j| Homomorphism::zero(&fs[j], &fs[i])).collect())
        .collect();
    let mut upper = BlockMap::identity(fs.clone()).blocks;
    for k in 0..size {
        for i in k..size {
            let mut acc = m.block(i, k).clone();
            for j in 0..k {
                acc = acc.sub(&lower[i][j].compose(&upper[j][k])?)?;
            }
            lower[i][k] = acc;
        }
        if !is_automorphism(&lower[k][k])? {
            return Ok(None);
        }
        let pivot_inv = invert(&lower[k][k])?;
        for j in k + 1..size {
            let mut acc = m.block(k, j).clone();
            for t in 0..k {
                acc = acc.sub(&lower[k][t].compose(&upper[t][j])?)?;
            }
            upper[k][j] = pivot_inv.compose(&acc)?;
        }
    }
    Ok(Some((
        BlockMap {
            factors: fs.clone(),
            blocks: lower,
        },
        BlockMap {
            factors: fs.clone(),
            blocks: upper,
        },
    )))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cs(orders: &[u64]) -> CyclicSum {
        CyclicSum::new(orders.to_vec()).unwrap()
    }

    fn flat(orders: &[u64], rows: &[Vec<i64>]) -> Homomorphism {
        let g = cs(orders);
        Homomorphism::new(g.clone(), g, Matrix::from_rows(rows, orders.len()).unwrap()).unwrap()
    }

    fn split(orders: &[u64], rows: &[Vec<i64>]) -> BlockMap {
        let factors = orders.iter().map(|&o| cs(&[o])).collect();
        BlockMap::from_flat(factors, &flat(orders, rows)).unwrap()
    }

    #[test]
    fn flatten_round_trips() {
        let m = split(&[2, 4], &[vec![1, 1], vec![2, 3]]);
        assert_eq!(m.flatten(), flat(&[2, 4], &[vec![1, 1], vec![2, 3]]));
        let i = BlockMap::identity(vec![cs(&[2]), cs(&[4])]);
        assert_eq!(i.compose(&m).unwrap(), m);
    }

    #[test]
    fn schur_complements() {
        let diag = split(&[0, 0], &[vec![3, 0], vec![0, 5]]);
        assert!(schur_complement(&diag).is_err());
        let diag = split(&[0, 0], &[vec![1, 0], vec![0, 5]]);
        assert_eq!(schur_complement(&diag).unwrap(), Homomorphism::scalar(&cs(&[0]), 5));
        let m = split(&[0, 0], &[vec![1, 1], vec![1, 2]]);
        assert_eq!(schur_complement(&m).unwrap(), Homomorphism::scalar(&cs(&[0]), 1));
        let m = split(&[2, 2], &[vec![1, 1], vec![1, 1]]);
        assert!(schur_complement(&m).unwrap().is_zero());
        assert!(!is_block_invertible(&m).unwrap());
    }

    #[test]
    fn lu_cases() {
        let id = BlockMap::identity(vec![cs(&[2]), cs(&[4])]);
        let (l, u) = lu_factorize(&id).unwrap().unwrap();
        assert_eq!((l.clone(), u.clone()), (id.clone(), id));
        let swap = split(&[2, 2], &[vec![0, 1], vec![1, 0]]);
        assert!(is_block_invertible(&swap).unwrap());
        assert!(lu_factorize(&swap).unwrap().is_none());
        let m = split(&[2, 4], &[vec![1, 1], vec![2, 3]]);
        let (l, u) = lu_factorize(&m).unwrap().unwrap();
        assert_eq!(l.compose(&u).unwrap(), m);
        assert!(l.is_lower_triangular());
        assert!(u.is_unit_upper_triangular());
    }

    #[test]
    fn three_blocks_can_fail_despite_invertible_diagonal() {
        // Diagonal blocks are all identities but the second pivot is 1 - 1 = 0.
        let m = split(&[2, 2, 2], &[vec![1, 1, 0], vec![1, 1, 1], vec![0, 1, 1]]);
        assert!(m.has_invertible_diagonal().unwrap());
        assert!(is_block_invertible(&m).unwrap());
        assert!(lu_factorize(&m).unwrap().is_none());
    }
}
