//! Exact LP feasibility over an ordered field.
//!
//! Strict inequalities are handled by a shared slack variable `t` appearing in
//! every strictified row; the weak system is solved first (phase one with
//! artificials, Bland's rule), then `t` is maximized and compared to zero
//! exactly. No general objective support: feasibility is all the callers need.

use crate::scalar::Scalar;
use crate::vecmat::Vector;
use num_traits::Zero;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    Le,
    Eq,
    Lt,
    Gt,
    Ge,
}

#[derive(Clone, Debug)]
pub struct Constraint<T> {
    pub coeffs: Vector<T>,
    pub rel: Relation,
    pub rhs: T,
}

impl<T: Scalar> Constraint<T> {
    pub fn new(coeffs: Vector<T>, rel: Relation, rhs: T) -> Self {
        Constraint { coeffs, rel, rhs }
    }

    pub fn holds(&self, x: &Vector<T>) -> bool {
        let lhs = self.coeffs.dot(x);
        match self.rel {
            Relation::Le => lhs <= self.rhs,
            Relation::Eq => lhs == self.rhs,
            Relation::Lt => lhs < self.rhs,
            Relation::Gt => lhs > self.rhs,
            Relation::Ge => lhs >= self.rhs,
        }
    }
}

#[derive(Clone, Debug)]
pub enum Feasibility<T> {
    Feasible(Vector<T>),
    Infeasible,
}

impl<T> Feasibility<T> {
    pub fn is_feasible(&self) -> bool {
        matches!(self, Feasibility::Feasible(_))
    }

    pub fn witness(&self) -> Option<&Vector<T>> {
        match self {
            Feasibility::Feasible(x) => Some(x),
            Feasibility::Infeasible => None,
        }
    }
}

/// Dense tableau in equality form over nonnegative variables; the last column
/// holds the right-hand side.
struct Tableau<T> {
    rows: Vec<Vec<T>>,
    /// objective row, maximized; last entry is the current value
    obj: Vec<T>,
    basis: Vec<usize>,
    cols: usize,
}

impl<T: Scalar> Tableau<T> {
    fn pivot(&mut self, row: usize, col: usize) {
        let inv = T::one() / self.rows[row][col].clone();
        for v in self.rows[row].iter_mut() {
            *v = v.clone() * inv.clone();
        }
        for i in 0..self.rows.len() {
            if i != row && !self.rows[i][col].is_zero() {
                let f = self.rows[i][col].clone();
                for j in 0..=self.cols {
                    let s = self.rows[row][j].clone() * f.clone();
                    self.rows[i][j] = self.rows[i][j].clone() - s;
                }
            }
        }
        if !self.obj[col].is_zero() {
            let f = self.obj[col].clone();
            for j in 0..=self.cols {
                let s = self.rows[row][j].clone() * f.clone();
                self.obj[j] = self.obj[j].clone() - s;
            }
        }
        self.basis[row] = col;
    }

    /// Price the current basis out of the objective row.
    fn price_out(&mut self) {
        for i in 0..self.rows.len() {
            let f = self.obj[self.basis[i]].clone();
            if !f.is_zero() {
                for j in 0..=self.cols {
                    let s = self.rows[i][j].clone() * f.clone();
                    self.obj[j] = self.obj[j].clone() - s;
                }
            }
        }
    }

    /// Bland's rule: entering = lowest-index column with positive reduced
    /// cost among `allowed`, leaving = minimal ratio with lowest basis index.
    /// Termination is guaranteed; unboundedness panics (callers bound t).
    fn maximize(&mut self, allowed: usize) {
        loop {
            let Some(enter) = (0..allowed).find(|&j| self.obj[j] > T::zero()) else {
                return;
            };
            let mut leave: Option<(usize, T)> = None;
            for i in 0..self.rows.len() {
                let a = self.rows[i][enter].clone();
                if a > T::zero() {
                    let ratio = self.rows[i][self.cols].clone() / a;
                    let better = match &leave {
                        None => true,
                        Some((li, lr)) => {
                            ratio < *lr || (ratio == *lr && self.basis[i] < self.basis[*li])
                        }
                    };
                    if better {
                        leave = Some((i, ratio));
                    }
                }
            }
            let (li, _) = leave.expect("bounded LP cannot have an unbounded pivot column");
            self.pivot(li, enter);
        }
    }

    fn value_of(&self, col: usize) -> T {
        for (i, &b) in self.basis.iter().enumerate() {
            if b == col {
                return self.rows[i][self.cols].clone();
            }
        }
        T::zero()
    }
}

/// Exact feasibility of a system of linear relations over free variables.
pub fn lp_feasible<T: Scalar>(constraints: &[Constraint<T>], dim: usize) -> Feasibility<T> {
    for c in constraints {
        assert_eq!(c.coeffs.len(), dim, "constraint dimension mismatch");
    }
    let has_strict = constraints
        .iter()
        .any(|c| matches!(c.rel, Relation::Lt | Relation::Gt));
    let n_slack = constraints
        .iter()
        .filter(|c| !matches!(c.rel, Relation::Eq))
        .count()
        + usize::from(has_strict);
    let t_col = 2 * dim;
    let structural = 2 * dim + usize::from(has_strict) + n_slack;
    let m = constraints.len() + usize::from(has_strict);
    let full = structural + m; // + artificials

    let mut rows: Vec<Vec<T>> = Vec::with_capacity(m);
    let mut slack_at = 2 * dim + usize::from(has_strict);
    for c in constraints {
        let mut row = vec![T::zero(); full + 1];
        let flip = matches!(c.rel, Relation::Gt | Relation::Ge);
        for j in 0..dim {
            let a = if flip {
                -c.coeffs[j].clone()
            } else {
                c.coeffs[j].clone()
            };
            row[j] = a.clone();
            row[dim + j] = -a;
        }
        row[full] = if flip { -c.rhs.clone() } else { c.rhs.clone() };
        match c.rel {
            Relation::Eq => {}
            Relation::Le | Relation::Ge => {
                row[slack_at] = T::one();
                slack_at += 1;
            }
            Relation::Lt | Relation::Gt => {
                row[t_col] = T::one();
                row[slack_at] = T::one();
                slack_at += 1;
            }
        }
        rows.push(row);
    }
    if has_strict {
        // t <= 1 bounds phase two; scaling t down preserves feasibility, so
        // nothing is lost
        let mut row = vec![T::zero(); full + 1];
        row[t_col] = T::one();
        row[slack_at] = T::one();
        row[full] = T::one();
        rows.push(row);
    }

    let mut basis = Vec::with_capacity(m);
    for (i, row) in rows.iter_mut().enumerate() {
        if row[full] < T::zero() {
            for v in row.iter_mut() {
                *v = -v.clone();
            }
        }
        row[structural + i] = T::one();
        basis.push(structural + i);
    }

    // phase one: maximize -(sum of artificials)
    let mut obj = vec![T::zero(); full + 1];
    for j in structural..full {
        obj[j] = -T::one();
    }
    let mut tab = Tableau {
        rows,
        obj,
        basis,
        cols: full,
    };
    tab.price_out();
    tab.maximize(full);
    // the stored row keeps the negated objective value in its last slot
    if tab.obj[full] > T::zero() {
        return Feasibility::Infeasible;
    }
    // drive artificials still in the basis out through structural columns
    for i in 0..m {
        if tab.basis[i] >= structural {
            if let Some(j) = (0..structural).find(|&j| !tab.rows[i][j].is_zero()) {
                tab.pivot(i, j);
            }
        }
    }

    if has_strict {
        // phase two: maximize t over structural columns only
        tab.obj = vec![T::zero(); full + 1];
        tab.obj[t_col] = T::one();
        tab.price_out();
        tab.maximize(structural);
        if !(tab.value_of(t_col) > T::zero()) {
            return Feasibility::Infeasible;
        }
    }

    let mut x = Vector::zeros(dim);
    for j in 0..dim {
        x[j] = tab.value_of(j) - tab.value_of(dim + j);
    }
    // witnesses are exact; a failed recheck means a pivoting bug
    assert!(
        constraints.iter().all(|c| c.holds(&x)),
        "simplex produced an invalid witness"
    );
    Feasibility::Feasible(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{qvec, rat, Rat};

    fn c(coeffs: &[i64], rel: Relation, rhs: i64) -> Constraint<Rat> {
        Constraint::new(qvec(coeffs), rel, rat(rhs))
    }

    #[test]
    fn contradictory_bounds() {
        let cs = vec![c(&[1], Relation::Ge, 1), c(&[1], Relation::Le, 0)];
        assert!(!lp_feasible(&cs, 1).is_feasible());
    }

    #[test]
    fn open_simplex_interior() {
        let cs = vec![
            c(&[1, 1], Relation::Eq, 1),
            c(&[1, 0], Relation::Gt, 0),
            c(&[0, 1], Relation::Gt, 0),
        ];
        match lp_feasible(&cs, 2) {
            Feasibility::Feasible(x) => {
                assert!(x[0] > rat(0) && x[1] > rat(0));
                assert_eq!(x[0].clone() + x[1].clone(), rat(1));
            }
            _ => panic!("open segment has interior points"),
        }
    }

    #[test]
    fn strict_boundary_infeasible() {
        let cs = vec![c(&[1], Relation::Le, 0), c(&[1], Relation::Gt, 0)];
        assert!(!lp_feasible(&cs, 1).is_feasible());
    }

    #[test]
    fn negative_rhs_equalities() {
        let cs = vec![
            c(&[2, -3], Relation::Eq, -6),
            c(&[1, 0], Relation::Le, -1),
            c(&[0, 1], Relation::Ge, 1),
        ];
        match lp_feasible(&cs, 2) {
            Feasibility::Feasible(x) => {
                assert_eq!(rat(2) * x[0].clone() - rat(3) * x[1].clone(), rat(-6));
                assert!(x[0] <= rat(-1) && x[1] >= rat(1));
            }
            _ => panic!("witness exists, e.g. (-3/2, 1)"),
        }
    }

    #[test]
    fn strict_open_halfplane() {
        let cs = vec![c(&[1, -1], Relation::Lt, 0), c(&[1, 1], Relation::Eq, 2)];
        match lp_feasible(&cs, 2) {
            Feasibility::Feasible(x) => assert!(x[0] < x[1]),
            _ => panic!(),
        }
    }
}
