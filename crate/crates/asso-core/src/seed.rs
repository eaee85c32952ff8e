//! Tracked seeds: g-, c-, d-vector columns for a lockstep pair of algebras.
//!
//! One record per algebra: the primal at `B` and its Langlands dual at
//! `-B^T`. Mutation updates both. Columns are tracked against the fixed
//! initial seed, g-vectors in the fundamental-weight basis, c-vectors in the
//! simple-root basis of the respective algebra, d-vectors with the initial
//! variable convention `d(x_i) = -e_i`.

use crate::exchange::ExchangeMatrix;
use crate::intlin::sign_coherent;
use crate::{Error, IVec};

/// One algebra's tracked data at a seed. Matrices are kept as columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TrackedSide {
    pub b: ExchangeMatrix,
    /// c-vector of slot j, simple-root coordinates
    pub c: Vec<IVec>,
    /// g-vector of slot j, fundamental-weight coordinates
    pub g: Vec<IVec>,
    /// denominator vector of slot j
    pub d: Vec<IVec>,
}

impl TrackedSide {
    fn initial(b: ExchangeMatrix) -> Self {
        let n = b.rank();
        let id: Vec<IVec> = (0..n).map(|i| crate::intlin::unit(n, i)).collect();
        let neg_id: Vec<IVec> = id.iter().map(|v| crate::intlin::neg(v)).collect();
        TrackedSide {
            b,
            c: id.clone(),
            g: id,
            d: neg_id,
        }
    }

    /// Sign of the sign-coherent c-column `k`; errors on a mixed column.
    fn c_sign(&self, k: usize) -> Result<i64, Error> {
        match sign_coherent(&self.c[k]) {
            Some(0) | None => Err(Error::SignCoherence {
                seed: String::new(),
                slot: k,
            }),
            Some(s) => Ok(s),
        }
    }

    fn mutate(&self, k: usize, eps: i64) -> Self {
        let n = self.b.rank();
        let b = &self.b.b;
        // coefficient rule on exponent columns: row k of B drives the update
        let mut c_cols: Vec<IVec> = self.c.clone();
        for j in 0..n {
            if j == k {
                c_cols[j] = crate::intlin::neg(&self.c[k]);
            } else {
                let bkj = b[k][j];
                let mut col = self.c[j].clone();
                if bkj > 0 {
                    for i in 0..n {
                        col[i] += bkj * self.c[k][i].max(0);
                    }
                } else if bkj < 0 {
                    for i in 0..n {
                        col[i] += bkj * (-self.c[k][i]).max(0);
                    }
                }
                c_cols[j] = col;
            }
        }
        // g-vector rule, forced by exact duality with the dual c-columns:
        // g'_k = -g_k + sum_j [-eps b_jk]_+ g_j
        let mut g_cols = self.g.clone();
        let mut gk = crate::intlin::neg(&self.g[k]);
        for j in 0..n {
            if j == k {
                continue;
            }
            let coef = (-eps * b[j][k]).max(0);
            if coef != 0 {
                for i in 0..n {
                    gk[i] += coef * self.g[j][i];
                }
            }
        }
        g_cols[k] = gk;
        // denominator rule: componentwise max over the two exchange monomials
        let mut d_cols = self.d.clone();
        let mut dk = crate::intlin::neg(&self.d[k]);
        for i in 0..n {
            let mut pos_sum = 0;
            let mut neg_sum = 0;
            for j in 0..n {
                if j == k {
                    continue;
                }
                let bjk = b[j][k];
                if bjk > 0 {
                    pos_sum += bjk * self.d[j][i];
                } else if bjk < 0 {
                    neg_sum += -bjk * self.d[j][i];
                }
            }
            dk[i] += pos_sum.max(neg_sum);
        }
        d_cols[k] = dk;
        TrackedSide {
            b: self.b.mutate(k).expect("slot validated by caller"),
            c: c_cols,
            g: g_cols,
            d: d_cols,
        }
    }
}

/// A seed with full tracking for the primal algebra and its dual.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TrackedSeed {
    pub primal: TrackedSide,
    pub dual: TrackedSide,
    /// mutation word from the initial seed
    pub word: Vec<usize>,
}

/// Canonical, order-free seed identity: the sorted primal g-vectors.
pub type SeedKey = Vec<IVec>;

impl TrackedSeed {
    pub fn initial(b: &ExchangeMatrix) -> TrackedSeed {
        TrackedSeed {
            primal: TrackedSide::initial(b.clone()),
            dual: TrackedSide::initial(b.dual()),
            word: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.primal.b.rank()
    }

    /// Lockstep mutation of both algebras at slot `k`.
    pub fn mutate(&self, k: usize) -> Result<TrackedSeed, Error> {
        let n = self.rank();
        if k >= n {
            return Err(Error::InvalidSlot { slot: k, rank: n });
        }
        let eps = self.primal.c_sign(k)?;
        let eps_dual = self.dual.c_sign(k)?;
        // the two columns always agree in sign; a mismatch is a tracking bug
        if eps != eps_dual {
            return Err(Error::SignCoherence {
                seed: format!("{:?}", self.word),
                slot: k,
            });
        }
        let mut word = self.word.clone();
        word.push(k);
        Ok(TrackedSeed {
            primal: self.primal.mutate(k, eps),
            dual: self.dual.mutate(k, eps_dual),
            word,
        })
    }

    pub fn key(&self) -> SeedKey {
        let mut cols = self.primal.g.clone();
        cols.sort();
        cols
    }

    /// The dual exchange matrix must stay the negative transpose throughout.
    pub fn dual_consistent(&self) -> bool {
        let n = self.rank();
        (0..n).all(|x| (0..n).all(|y| self.dual.b.b[x][y] == -self.primal.b.b[y][x]))
    }
}
