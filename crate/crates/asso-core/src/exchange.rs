//! Exchange matrices: mutation, Cartan companion, finite type detection.

use crate::vecmat::Matrix;
use crate::{rat, Error, IVec, QMat};
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;

/// Skew-symmetrizable integer matrix with a positive integer symmetrizer.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ExchangeMatrix {
    /// row-major entries, `b[x][y]`
    pub b: Vec<IVec>,
    /// positive diagonal `d` with `-(B D) = (B D)^T`
    pub symmetrizer: Vec<i64>,
}

impl ExchangeMatrix {
    /// Builds from rows, computing the minimal positive symmetrizer.
    pub fn new(b: Vec<IVec>) -> Result<Self, Error> {
        let n = b.len();
        if b.iter().any(|r| r.len() != n) {
            return Err(Error::Dimension("exchange matrix must be square".into()));
        }
        let symmetrizer = minimal_symmetrizer(&b)?;
        Ok(ExchangeMatrix { b, symmetrizer })
    }

    pub fn with_symmetrizer(b: Vec<IVec>, d: Vec<i64>) -> Result<Self, Error> {
        let n = b.len();
        if b.iter().any(|r| r.len() != n) || d.len() != n {
            return Err(Error::Dimension("exchange matrix must be square".into()));
        }
        if d.iter().any(|&x| x <= 0) {
            return Err(Error::NotSkewSymmetrizable);
        }
        for x in 0..n {
            for y in 0..n {
                if b[x][y] * d[y] != -b[y][x] * d[x] {
                    return Err(Error::NotSkewSymmetrizable);
                }
            }
        }
        Ok(ExchangeMatrix { b, symmetrizer: d })
    }

    pub fn rank(&self) -> usize {
        self.b.len()
    }

    pub fn entry(&self, x: usize, y: usize) -> i64 {
        self.b[x][y]
    }

    /// Matrix mutation in direction `k`; the symmetrizer is unchanged.
    pub fn mutate(&self, k: usize) -> Result<ExchangeMatrix, Error> {
        let n = self.rank();
        if k >= n {
            return Err(Error::InvalidSlot { slot: k, rank: n });
        }
        Ok(ExchangeMatrix {
            b: mutate_rows(&self.b, n, k),
            symmetrizer: self.symmetrizer.clone(),
        })
    }

    /// `-B^T`, the exchange matrix of the Langlands dual algebra.
    pub fn dual(&self) -> ExchangeMatrix {
        let n = self.rank();
        let b: Vec<IVec> = (0..n)
            .map(|x| (0..n).map(|y| -self.b[y][x]).collect())
            .collect();
        let symmetrizer =
            minimal_symmetrizer(&b).expect("dual of a skew-symmetrizable matrix stays one");
        ExchangeMatrix { b, symmetrizer }
    }

    /// Cartan companion: 2 on the diagonal, -|b_xy| off it.
    pub fn cartan_companion(&self) -> Vec<IVec> {
        let n = self.rank();
        (0..n)
            .map(|x| {
                (0..n)
                    .map(|y| if x == y { 2 } else { -self.b[x][y].abs() })
                    .collect()
            })
            .collect()
    }

    /// Rows all nonnegative or all nonpositive.
    pub fn is_bipartite(&self) -> bool {
        self.b
            .iter()
            .all(|row| row.iter().all(|&x| x >= 0) || row.iter().all(|&x| x <= 0))
    }

    /// Cartan companion is itself of finite type.
    pub fn is_acyclic(&self) -> bool {
        is_finite_cartan(&self.cartan_companion())
    }
}

/// Extended mutation shared by square and tall coefficient blocks: the first
/// `n` rows are the square part, anything below mutates as frozen rows.
pub fn mutate_rows(rows: &[IVec], n: usize, k: usize) -> Vec<IVec> {
    let m = rows.len();
    let mut out = vec![vec![0i64; n]; m];
    for y in 0..m {
        for z in 0..n {
            if y == k || z == k {
                out[y][z] = -rows[y][z];
            } else {
                out[y][z] =
                    rows[y][z] + (rows[y][k].abs() * rows[k][z] + rows[y][k] * rows[k][z].abs()) / 2;
            }
        }
    }
    out
}

/// Minimal positive integer diagonal `d` with `b_xy d_y = -b_yx d_x`, or an
/// error when none exists.
fn minimal_symmetrizer(b: &[IVec]) -> Result<Vec<i64>, Error> {
    let n = b.len();
    for x in 0..n {
        if b[x][x] != 0 {
            return Err(Error::NotSkewSymmetrizable);
        }
        for y in 0..n {
            if (b[x][y] == 0) != (b[y][x] == 0) {
                return Err(Error::NotSkewSymmetrizable);
            }
            if b[x][y] * b[y][x] > 0 {
                return Err(Error::NotSkewSymmetrizable);
            }
        }
    }
    // d_y = d_x * (-b_yx) / b_xy along edges of the adjacency graph
    let d = propagate_ratios(n, |x, y| {
        if b[x][y] != 0 {
            Some(rat(-b[y][x]) / rat(b[x][y]))
        } else {
            None
        }
    })
    .ok_or(Error::NotSkewSymmetrizable)?;
    for x in 0..n {
        for y in 0..n {
            if b[x][y] * d[y] != -b[y][x] * d[x] {
                return Err(Error::NotSkewSymmetrizable);
            }
        }
    }
    Ok(d)
}

/// Consistent positive integer solution of `d_y = d_x * edge(x, y)`, minimal
/// per connected component.
fn propagate_ratios(
    n: usize,
    edge: impl Fn(usize, usize) -> Option<crate::Rat>,
) -> Option<Vec<i64>> {
    let mut ratio: Vec<Option<crate::Rat>> = vec![None; n];
    let mut d = vec![0i64; n];
    for start in 0..n {
        if ratio[start].is_some() {
            continue;
        }
        ratio[start] = Some(rat(1));
        let mut stack = vec![start];
        let mut comp = vec![start];
        while let Some(x) = stack.pop() {
            for y in 0..n {
                if let Some(e) = edge(x, y) {
                    let r = ratio[x].clone().unwrap() * e;
                    if !(r > rat(0)) {
                        return None;
                    }
                    match &ratio[y] {
                        None => {
                            ratio[y] = Some(r);
                            stack.push(y);
                            comp.push(y);
                        }
                        Some(old) => {
                            if *old != r {
                                return None;
                            }
                        }
                    }
                }
            }
        }
        // clear denominators minimally inside the component
        let mut lcm = num_bigint::BigInt::from(1);
        for &x in &comp {
            lcm = num_integer::Integer::lcm(&lcm, ratio[x].as_ref().unwrap().denom());
        }
        let mut gcd = num_bigint::BigInt::from(0);
        let scaled: Vec<num_bigint::BigInt> = comp
            .iter()
            .map(|&x| {
                let r = ratio[x].as_ref().unwrap();
                r.numer() * (&lcm / r.denom())
            })
            .collect();
        for v in &scaled {
            gcd = num_integer::Integer::gcd(&gcd, v);
        }
        for (&x, v) in comp.iter().zip(scaled) {
            let q: num_bigint::BigInt = v / &gcd;
            d[x] = i64::try_from(&q).ok()?;
            if d[x] <= 0 {
                return None;
            }
        }
    }
    Some(d)
}

/// Finite-type test for a symmetrizable generalized Cartan matrix: the
/// symmetrized form must be positive definite (all leading principal minors
/// of `D A` positive, exactly).
pub fn is_finite_cartan(a: &[IVec]) -> bool {
    let n = a.len();
    for x in 0..n {
        if a[x][x] != 2 {
            return false;
        }
        for y in 0..n {
            if x != y && (a[x][y] > 0 || ((a[x][y] == 0) != (a[y][x] == 0))) {
                return false;
            }
        }
    }
    // d_x a_xy = d_y a_yx symmetrizes A; propagate d_y = d_x * a_xy / a_yx
    let Some(d) = propagate_ratios(n, |x, y| {
        if x != y && a[x][y] != 0 {
            Some(rat(a[x][y]) / rat(a[y][x]))
        } else {
            None
        }
    }) else {
        return false;
    };
    // leading principal minors of the symmetric matrix (d_x a_xy)
    let sym = Matrix::from_rows(
        (0..n)
            .map(|x| (0..n).map(|y| rat(d[x] * a[x][y])).collect())
            .collect(),
    );
    for k in 1..=n {
        if !(leading_minor(&sym, k) > rat(0)) {
            return false;
        }
    }
    true
}

fn leading_minor(m: &QMat, k: usize) -> crate::Rat {
    let mut a = Matrix::zeros(k, k);
    for i in 0..k {
        for j in 0..k {
            a[(i, j)] = m[(i, j)].clone();
        }
    }
    let mut det = rat(1);
    for c in 0..k {
        let Some(p) = (c..k).find(|&i| a[(i, c)] != rat(0)) else {
            return rat(0);
        };
        if p != c {
            for j in 0..k {
                let t = a[(p, j)].clone();
                a[(p, j)] = a[(c, j)].clone();
                a[(c, j)] = t;
            }
            det = -det;
        }
        det *= a[(c, c)].clone();
        let inv = rat(1) / a[(c, c)].clone();
        for i in c + 1..k {
            let f = a[(i, c)].clone() * inv.clone();
            if f == rat(0) {
                continue;
            }
            for j in c..k {
                let s = a[(c, j)].clone() * f.clone();
                a[(i, j)] = a[(i, j)].clone() - s;
            }
        }
    }
    det
}

/// Outcome of the finite-type search.
#[derive(Clone, Debug)]
pub enum FiniteType {
    /// first mutation-reachable matrix whose Cartan companion is finite type
    Yes {
        witness: ExchangeMatrix,
        cartan_type: String,
    },
    No,
}

/// BFS over the mutation class of `B`. Any reachable matrix with
/// `|b_xy b_yx| >= 4` certifies non-finite type; otherwise the class is
/// finite and some acyclic representative exists.
pub fn is_finite_type(b: &ExchangeMatrix) -> FiniteType {
    if b.rank() == 0 {
        return FiniteType::No;
    }
    let mut seen: BTreeSet<Vec<IVec>> = BTreeSet::new();
    let mut frontier = vec![b.b.clone()];
    seen.insert(b.b.clone());
    let mut witness: Option<Vec<IVec>> = None;
    while let Some(cur) = frontier.pop() {
        let n = cur.len();
        for x in 0..n {
            for y in 0..n {
                if cur[x][y] * cur[y][x] <= -4 {
                    return FiniteType::No;
                }
            }
        }
        if witness.is_none() {
            let m = ExchangeMatrix {
                b: cur.clone(),
                symmetrizer: b.symmetrizer.clone(),
            };
            if is_finite_cartan(&m.cartan_companion()) {
                witness = Some(cur.clone());
            }
        }
        for k in 0..n {
            let next = mutate_rows(&cur, n, k);
            if seen.insert(next.clone()) {
                frontier.push(next);
            }
        }
    }
    match witness {
        Some(w) => {
            let m = ExchangeMatrix {
                b: w,
                symmetrizer: b.symmetrizer.clone(),
            };
            let name = cartan_type_name(&m.cartan_companion());
            FiniteType::Yes {
                witness: m,
                cartan_type: name,
            }
        }
        None => FiniteType::No,
    }
}

/// Names the type of a finite Cartan matrix by Coxeter-graph shape analysis.
pub fn cartan_type_name(a: &[IVec]) -> String {
    let n = a.len();
    let mut comp = vec![usize::MAX; n];
    let mut ncomp = 0;
    for s in 0..n {
        if comp[s] != usize::MAX {
            continue;
        }
        let mut stack = vec![s];
        comp[s] = ncomp;
        while let Some(x) = stack.pop() {
            for y in 0..n {
                if y != x && a[x][y] != 0 && comp[y] == usize::MAX {
                    comp[y] = ncomp;
                    stack.push(y);
                }
            }
        }
        ncomp += 1;
    }
    let mut names = Vec::new();
    for c in 0..ncomp {
        let verts: Vec<usize> = (0..n).filter(|&x| comp[x] == c).collect();
        names.push(component_type(a, &verts));
    }
    names.sort();
    names.join("+")
}

fn component_type(a: &[IVec], verts: &[usize]) -> String {
    let n = verts.len();
    if n == 1 {
        return "A1".into();
    }
    let edge_weight = |x: usize, y: usize| a[x][y] * a[y][x];
    let deg = |x: usize| verts.iter().filter(|&&y| y != x && a[x][y] != 0).count();
    let degrees: Vec<usize> = verts.iter().map(|&x| deg(x)).collect();
    let max_deg = *degrees.iter().max().unwrap();
    let weights: Vec<i64> = verts
        .iter()
        .flat_map(|&x| {
            verts
                .iter()
                .filter(move |&&y| y > x && a[x][y] != 0)
                .map(move |&y| edge_weight(x, y))
        })
        .collect();
    let max_w = *weights.iter().max().unwrap();
    if max_deg <= 2 && degrees.iter().filter(|&&d| d == 1).count() == 2 {
        if max_w == 1 {
            return format!("A{n}");
        }
        if max_w == 3 {
            return "G2".into();
        }
        if max_w == 2 {
            if n == 2 {
                return "B2".into();
            }
            let ends: Vec<usize> = verts.iter().copied().filter(|&x| deg(x) == 1).collect();
            let mut order = vec![ends[0]];
            let mut prev = usize::MAX;
            while order.len() < n {
                let cur = *order.last().unwrap();
                let next = verts
                    .iter()
                    .copied()
                    .find(|&y| y != prev && y != cur && a[cur][y] != 0)
                    .unwrap();
                prev = cur;
                order.push(next);
            }
            let wseq: Vec<i64> = order.windows(2).map(|p| edge_weight(p[0], p[1])).collect();
            let pos = wseq.iter().position(|&w| w == 2).unwrap();
            if pos != 0 && pos != wseq.len() - 1 {
                return "F4".into();
            }
            // distinguish B from C by which end carries the -2 entry; the two
            // are Langlands dual and swap under transposition
            let (x, y) = if pos == 0 {
                (order[0], order[1])
            } else {
                (order[n - 1], order[n - 2])
            };
            return if a[x][y] == -2 {
                format!("C{n}")
            } else {
                format!("B{n}")
            };
        }
    }
    if max_deg == 3 && max_w == 1 {
        let branch = verts.iter().copied().find(|&x| deg(x) == 3).unwrap();
        let mut arms = Vec::new();
        for &s in verts.iter().filter(|&&y| a[branch][y] != 0 && y != branch) {
            let mut len = 1;
            let mut prev = branch;
            let mut cur = s;
            loop {
                let next = verts
                    .iter()
                    .copied()
                    .find(|&y| y != prev && y != cur && a[cur][y] != 0);
                match next {
                    Some(nx) => {
                        prev = cur;
                        cur = nx;
                        len += 1;
                    }
                    None => break,
                }
            }
            arms.push(len);
        }
        arms.sort();
        if arms.len() == 3 {
            match arms.as_slice() {
                [1, 1, l] => return format!("D{}", l + 3),
                [1, 2, 2] => return "E6".into(),
                [1, 2, 3] => return "E7".into(),
                [1, 2, 4] => return "E8".into(),
                _ => {}
            }
        }
    }
    format!("unknown{n}")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtins;

    fn em(rows: &[&[i64]]) -> ExchangeMatrix {
        ExchangeMatrix::new(rows.iter().map(|r| r.to_vec()).collect()).unwrap()
    }

    #[test]
    fn a3_cyclic_mutation_at_first_slot() {
        let b = em(&[&[0, -1, 1], &[1, 0, -1], &[-1, 1, 0]]);
        let m = b.mutate(0).unwrap();
        assert_eq!(m.b, vec![vec![0, 1, -1], vec![-1, 0, 0], vec![1, 0, 0]]);
    }

    #[test]
    fn b2_mutation_negates() {
        let b = em(&[&[0, 1], &[-2, 0]]);
        let m = b.mutate(0).unwrap();
        assert_eq!(m.b, vec![vec![0, -1], vec![2, 0]]);
    }

    #[test]
    fn mutation_is_involutive() {
        for b in builtins::all() {
            for k in 0..b.matrix.rank() {
                let twice = b.matrix.mutate(k).unwrap().mutate(k).unwrap();
                assert_eq!(twice.b, b.matrix.b, "{} slot {}", b.name, k);
            }
        }
    }

    #[test]
    fn cartan_companions() {
        let b2 = em(&[&[0, 1], &[-2, 0]]);
        assert_eq!(b2.cartan_companion(), vec![vec![2, -1], vec![-2, 2]]);
        let z = em(&[&[0, 0], &[0, 0]]);
        assert_eq!(z.cartan_companion(), vec![vec![2, 0], vec![0, 2]]);
        let a3c = em(&[&[0, -1, 1], &[1, 0, -1], &[-1, 1, 0]]);
        assert_eq!(
            a3c.cartan_companion(),
            vec![vec![2, -1, -1], vec![-1, 2, -1], vec![-1, -1, 2]]
        );
        // affine A2^(1): not a finite Cartan matrix
        assert!(!is_finite_cartan(&a3c.cartan_companion()));
    }

    #[test]
    fn finite_type_detection() {
        let a3c = em(&[&[0, -1, 1], &[1, 0, -1], &[-1, 1, 0]]);
        match is_finite_type(&a3c) {
            FiniteType::Yes { cartan_type, .. } => assert_eq!(cartan_type, "A3"),
            FiniteType::No => panic!("cyclic A3 is finite type"),
        }
        let c3c = em(&[&[0, -1, 2], &[1, 0, -2], &[-1, 1, 0]]);
        match is_finite_type(&c3c) {
            FiniteType::Yes { cartan_type, .. } => {
                assert!(cartan_type == "C3" || cartan_type == "B3", "{cartan_type}")
            }
            FiniteType::No => panic!("cyclic C3 is finite type"),
        }
        let inf = em(&[&[0, 2], &[-2, 0]]);
        assert!(matches!(is_finite_type(&inf), FiniteType::No));
    }

    #[test]
    fn symmetrizer_minimal() {
        let b2 = em(&[&[0, 1], &[-2, 0]]);
        assert_eq!(b2.symmetrizer, vec![1, 2]);
        // -(BD) must equal (BD)^T exactly
        for x in 0..2 {
            for y in 0..2 {
                assert_eq!(
                    b2.b[x][y] * b2.symmetrizer[y],
                    -b2.b[y][x] * b2.symmetrizer[x]
                );
            }
        }
        let a2 = em(&[&[0, 1], &[-1, 0]]);
        assert_eq!(a2.symmetrizer, vec![1, 1]);
        assert!(ExchangeMatrix::new(vec![vec![0, 1], vec![1, 0]]).is_err());
    }

    #[test]
    fn dual_is_negative_transpose() {
        let b = em(&[&[0, -1, 2], &[1, 0, -2], &[-1, 1, 0]]);
        let d = b.dual();
        for x in 0..3 {
            for y in 0..3 {
                assert_eq!(d.b[x][y], -b.b[y][x]);
            }
        }
    }
}
