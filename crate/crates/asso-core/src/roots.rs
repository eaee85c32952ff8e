//! Finite root systems from a Cartan matrix: positive roots, Coxeter number,
//! longest element, c-sorting words, weight orbits.
//!
//! Simple roots and fundamental weights are two bases of the same space; a
//! vector has root coordinates `r` and weight coordinates `A r`. Reflections
//! act on root coordinates by `s_i(v) = v - (row_i(A) . v) e_i` and on weight
//! coordinates by `s_i(v) = v - v_i col_i(A)`.

use crate::exchange::is_finite_cartan;
use crate::intlin::{dot, neg, unit};
use crate::{Error, IVec};
use std::collections::BTreeSet;

const ROOT_BOUND: usize = 10_000;

#[derive(Clone, Debug)]
pub struct RootSystemData {
    pub cartan: Vec<IVec>,
    /// positive roots in simple-root coordinates, sorted
    pub positive_roots: Vec<IVec>,
    pub coxeter_number: i64,
    /// reduced word for the longest element (slot indices)
    pub longest_word: Vec<usize>,
}

/// Closure of the simple roots under simple reflections.
pub fn enumerate_roots(cartan: &[IVec]) -> Result<RootSystemData, Error> {
    if !is_finite_cartan(cartan) {
        return Err(Error::NotFiniteCartan);
    }
    let n = cartan.len();
    let mut roots: BTreeSet<IVec> = BTreeSet::new();
    let mut frontier: Vec<IVec> = Vec::new();
    for i in 0..n {
        let e = unit(n, i);
        roots.insert(e.clone());
        roots.insert(neg(&e));
        frontier.push(e);
    }
    while let Some(v) = frontier.pop() {
        for i in 0..n {
            let w = reflect_root(cartan, i, &v);
            if roots.insert(w.clone()) {
                if roots.len() > ROOT_BOUND {
                    return Err(Error::NotFiniteCartan);
                }
                frontier.push(w);
            }
        }
    }
    let positive_roots: Vec<IVec> = roots
        .iter()
        .filter(|r| r.iter().all(|&x| x >= 0))
        .cloned()
        .collect();
    let coxeter_number = 2 * positive_roots.len() as i64 / n as i64;
    let longest_word = longest_word(cartan)?;
    debug_assert_eq!(longest_word.len(), positive_roots.len());
    Ok(RootSystemData {
        cartan: cartan.to_vec(),
        positive_roots,
        coxeter_number,
        longest_word,
    })
}

/// `s_i` on simple-root coordinates.
pub fn reflect_root(cartan: &[IVec], i: usize, v: &[i64]) -> IVec {
    let mut w = v.to_vec();
    w[i] -= dot(&cartan[i], v);
    w
}

/// `s_i` on fundamental-weight coordinates.
pub fn reflect_weight(cartan: &[IVec], i: usize, v: &[i64]) -> IVec {
    let n = v.len();
    (0..n).map(|j| v[j] - cartan[j][i] * v[i]).collect()
}

/// Reduced word for the longest element: walk the dominant weight `rho` down
/// to `-rho`, always reflecting at a strictly positive coordinate.
fn longest_word(cartan: &[IVec]) -> Result<Vec<usize>, Error> {
    let n = cartan.len();
    let mut v: IVec = vec![1; n];
    let target: IVec = vec![-1; n];
    let mut word = Vec::new();
    while v != target {
        let i = (0..n)
            .find(|&i| v[i] > 0)
            .ok_or(Error::NotFiniteCartan)?;
        v = reflect_weight(cartan, i, &v);
        word.push(i);
        if word.len() > ROOT_BOUND {
            return Err(Error::NotFiniteCartan);
        }
    }
    Ok(word)
}

impl RootSystemData {
    pub fn rank(&self) -> usize {
        self.cartan.len()
    }

    /// Matrix of a word of reflections on weight coordinates, as columns.
    /// The word acts right-to-left.
    pub fn weight_matrix_of_word(&self, word: &[usize]) -> Vec<IVec> {
        let n = self.rank();
        let mut cols: Vec<IVec> = (0..n).map(|j| unit(n, j)).collect();
        for &i in word.iter().rev() {
            for col in cols.iter_mut() {
                *col = reflect_weight(&self.cartan, i, col);
            }
        }
        cols
    }

    /// The longest element on weight coordinates, verified to send every
    /// positive root to a negative one.
    pub fn longest_element_weight_matrix(&self) -> Vec<IVec> {
        let n = self.rank();
        // act on root coordinates for the verification
        let mut root_cols: Vec<IVec> = (0..n).map(|j| unit(n, j)).collect();
        for &i in self.longest_word.iter().rev() {
            for col in root_cols.iter_mut() {
                *col = reflect_root(&self.cartan, i, col);
            }
        }
        for r in &self.positive_roots {
            let img: IVec = (0..n)
                .map(|t| (0..n).map(|j| root_cols[j][t] * r[j]).sum())
                .collect();
            assert!(
                img.iter().all(|&x| x <= 0),
                "longest element must negate the positive roots"
            );
        }
        self.weight_matrix_of_word(&self.longest_word)
    }

    /// Diagram automorphism `i -> i*` with `w0(w_i) = -w_{i*}`.
    pub fn weight_involution(&self) -> Vec<usize> {
        let n = self.rank();
        let m = self.longest_element_weight_matrix();
        (0..n)
            .map(|i| {
                let col = &m[i];
                let j = (0..n)
                    .find(|&j| col[j] == -1)
                    .expect("w0 sends a fundamental weight to a negated one");
                debug_assert_eq!(col, &neg(&unit(n, j)));
                j
            })
            .collect()
    }

    /// Number of positive roots sent to negatives by the inverse of `w`,
    /// where `w` is given on root coordinates as columns.
    fn length_of_root_matrix(&self, cols: &[IVec]) -> usize {
        let n = self.rank();
        self.positive_roots
            .iter()
            .filter(|r| {
                let img: IVec = (0..n)
                    .map(|t| (0..n).map(|j| cols[j][t] * r[j]).sum())
                    .collect();
                img.iter().all(|&x| x <= 0) && img.iter().any(|&x| x < 0)
            })
            .count()
    }

    /// The c-sorting word for the longest element: the lexicographically
    /// minimal reduced word occurring as a subword of `c^infinity`.
    ///
    /// Greedy: scan the letters of `c` cyclically and keep a letter exactly
    /// when it lowers the length of the remainder.
    pub fn c_sorting_word(&self, c_order: &[usize]) -> Vec<usize> {
        let n = self.rank();
        assert_eq!(c_order.len(), n, "c must order all simple reflections");
        let mut remainder: Vec<IVec> = {
            let mut cols: Vec<IVec> = (0..n).map(|j| unit(n, j)).collect();
            for &i in self.longest_word.iter().rev() {
                for col in cols.iter_mut() {
                    *col = reflect_root(&self.cartan, i, col);
                }
            }
            cols
        };
        let mut len = self.length_of_root_matrix(&remainder);
        let mut word = Vec::with_capacity(self.positive_roots.len());
        while len > 0 {
            let mut progressed = false;
            for &i in c_order {
                // left-multiply by s_i: columns get reflected entrywise
                let cand: Vec<IVec> = remainder
                    .iter()
                    .map(|col| reflect_root(&self.cartan, i, col))
                    .collect();
                let l2 = self.length_of_root_matrix(&cand);
                if l2 + 1 == len {
                    remainder = cand;
                    len = l2;
                    word.push(i);
                    progressed = true;
                }
            }
            assert!(progressed, "every non-identity element has a descent");
        }
        word
    }

    /// Orbit of the fundamental weight `w_i` under the Weyl group, in weight
    /// coordinates, sorted.
    pub fn weight_orbit(&self, i: usize) -> Vec<IVec> {
        let n = self.rank();
        let mut orbit: BTreeSet<IVec> = BTreeSet::new();
        let start = unit(n, i);
        orbit.insert(start.clone());
        let mut frontier = vec![start];
        while let Some(v) = frontier.pop() {
            for j in 0..n {
                let w = reflect_weight(&self.cartan, j, &v);
                if orbit.insert(w.clone()) {
                    frontier.push(w);
                }
            }
        }
        orbit.into_iter().collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cartan_a(n: usize) -> Vec<IVec> {
        (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        if i == j {
                            2
                        } else if i.abs_diff(j) == 1 {
                            -1
                        } else {
                            0
                        }
                    })
                    .collect()
            })
            .collect()
    }

    #[test]
    fn a2_roots() {
        let rs = enumerate_roots(&cartan_a(2)).unwrap();
        assert_eq!(rs.positive_roots.len(), 3);
        assert_eq!(rs.coxeter_number, 3);
        assert_eq!(rs.longest_word.len(), 3);
    }

    #[test]
    fn b2_roots() {
        let a = vec![vec![2, -1], vec![-2, 2]];
        let rs = enumerate_roots(&a).unwrap();
        assert_eq!(rs.positive_roots.len(), 4);
        assert_eq!(rs.coxeter_number, 4);
        // w0 = -id in B2
        let m = rs.longest_element_weight_matrix();
        assert_eq!(m, vec![vec![-1, 0], vec![0, -1]]);
        assert_eq!(rs.weight_involution(), vec![0, 1]);
    }

    #[test]
    fn a3_roots_and_h() {
        let rs = enumerate_roots(&cartan_a(3)).unwrap();
        assert_eq!(rs.positive_roots.len(), 6);
        assert_eq!(rs.coxeter_number, 4);
    }

    #[test]
    fn a2_longest_element_swaps_weights() {
        let rs = enumerate_roots(&cartan_a(2)).unwrap();
        let m = rs.longest_element_weight_matrix();
        // w0(w1) = -w2
        assert_eq!(m[0], vec![0, -1]);
        assert_eq!(rs.weight_involution(), vec![1, 0]);
    }

    #[test]
    fn affine_rejected() {
        let affine = vec![vec![2, -1, -1], vec![-1, 2, -1], vec![-1, -1, 2]];
        assert!(enumerate_roots(&affine).is_err());
    }

    #[test]
    fn c_sorting_words() {
        let a1 = enumerate_roots(&cartan_a(1)).unwrap();
        assert_eq!(a1.c_sorting_word(&[0]), vec![0]);
        let a2 = enumerate_roots(&cartan_a(2)).unwrap();
        assert_eq!(a2.c_sorting_word(&[0, 1]), vec![0, 1, 0]);
        let b2 = enumerate_roots(&vec![vec![2, -1], vec![-2, 2]]).unwrap();
        assert_eq!(b2.c_sorting_word(&[0, 1]), vec![0, 1, 0, 1]);
        // length always |Phi+|
        let a3 = enumerate_roots(&cartan_a(3)).unwrap();
        assert_eq!(a3.c_sorting_word(&[0, 1, 2]).len(), 6);
    }

    #[test]
    fn weight_orbits_sizes() {
        let a2 = enumerate_roots(&cartan_a(2)).unwrap();
        assert_eq!(a2.weight_orbit(0).len(), 3);
        let b2 = enumerate_roots(&vec![vec![2, -1], vec![-2, 2]]).unwrap();
        assert_eq!(b2.weight_orbit(0).len(), 4);
    }
}
