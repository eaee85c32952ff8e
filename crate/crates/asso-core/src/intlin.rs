//! Small helpers on machine-integer vectors and matrices.
//!
//! Exchange matrices and g-/c-/d-/u-vectors stay in `i64`; entries are tiny in
//! finite type (the enumerator aborts long before overflow is possible).

use crate::IVec;

pub fn dot(a: &[i64], b: &[i64]) -> i64 {
    assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn add(a: &[i64], b: &[i64]) -> IVec {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn sub(a: &[i64], b: &[i64]) -> IVec {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn neg(a: &[i64]) -> IVec {
    a.iter().map(|x| -x).collect()
}

pub fn scale(a: &[i64], s: i64) -> IVec {
    a.iter().map(|x| x * s).collect()
}

pub fn is_zero(a: &[i64]) -> bool {
    a.iter().all(|&x| x == 0)
}

pub fn unit(n: usize, i: usize) -> IVec {
    let mut v = vec![0; n];
    v[i] = 1;
    v
}

/// Entrywise sign pattern: `Some(1)` if all >= 0 with some > 0, `Some(-1)` if
/// all <= 0 with some < 0, `Some(0)` for the zero vector, `None` if mixed.
pub fn sign_coherent(a: &[i64]) -> Option<i64> {
    let mut pos = false;
    let mut neg = false;
    for &x in a {
        if x > 0 {
            pos = true;
        } else if x < 0 {
            neg = true;
        }
    }
    match (pos, neg) {
        (true, true) => None,
        (true, false) => Some(1),
        (false, true) => Some(-1),
        (false, false) => Some(0),
    }
}

/// `a^T b` for square column-major "list of columns" matrices.
pub fn gram(cols_a: &[IVec], cols_b: &[IVec]) -> Vec<IVec> {
    cols_a
        .iter()
        .map(|a| cols_b.iter().map(|b| dot(a, b)).collect())
        .collect()
}

pub fn is_identity(m: &[IVec]) -> bool {
    m.iter()
        .enumerate()
        .all(|(i, row)| row.iter().enumerate().all(|(j, &x)| x == i64::from(i == j)))
}

pub fn gcd(a: i64, b: i64) -> i64 {
    num_integer::Integer::gcd(&a, &b)
}

/// Divide by the content, keeping the sign pattern.
pub fn primitive(v: &[i64]) -> IVec {
    let g = v.iter().fold(0i64, |acc, &x| gcd(acc, x));
    if g <= 1 {
        v.to_vec()
    } else {
        v.iter().map(|x| x / g).collect()
    }
}
