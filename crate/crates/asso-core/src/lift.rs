//! Compatibility degrees and exchange submodular lift functions.

use crate::graph::ExchangeGraph;
use crate::roots::{enumerate_roots, reflect_root};
use crate::seed::TrackedSeed;
use crate::vecmat::{solve_linear, LinearSolution, Matrix, Vector};
use crate::{rat, Error, IVec, Rat};
use num_traits::Zero;
use std::collections::BTreeMap;

/// Where a lift function came from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Provenance {
    Rho,
    Lambda(Vec<Rat>),
    User,
}

/// Strictly positive function on cluster variables, keyed by g-vector.
#[derive(Clone, Debug)]
pub struct LiftFunction {
    pub values: BTreeMap<IVec, Rat>,
    pub provenance: Provenance,
}

impl LiftFunction {
    pub fn get(&self, g: &IVec) -> &Rat {
        &self.values[g]
    }

    pub fn is_positive(&self) -> bool {
        self.values.values().all(|v| v > &Rat::zero())
    }
}

/// Compatibility degrees `(y || x)` over ordered pairs of distinct variables.
#[derive(Clone, Debug)]
pub struct CompatibilityTable {
    pub variables: Vec<IVec>,
    /// degree[(y, x)] for y != x, always nonnegative
    pub degree: BTreeMap<(IVec, IVec), i64>,
}

impl CompatibilityTable {
    pub fn get(&self, y: &IVec, x: &IVec) -> i64 {
        self.degree[&(y.clone(), x.clone())]
    }

    pub fn max_degree(&self) -> i64 {
        self.degree.values().copied().max().unwrap_or(0)
    }
}

/// `(y || x)` read off the y-coordinate of the d-vector of `x` in a
/// d-vector tracking re-based at a seed containing `y`.
pub fn compatibility_table(graph: &ExchangeGraph) -> CompatibilityTable {
    let n = graph.rank();
    let containing = graph.seed_containing();
    let mut degree: BTreeMap<(IVec, IVec), i64> = BTreeMap::new();
    for y in &graph.variables {
        let (base_key, slot) = &containing[y];
        let base = graph.seed(base_key).clone();
        // BFS carrying a rebased d-matrix (columns, initialized to -I)
        let d0: Vec<IVec> = (0..n)
            .map(|i| crate::intlin::scale(&crate::intlin::unit(n, i), -1))
            .collect();
        let mut seen: BTreeMap<Vec<IVec>, ()> = BTreeMap::new();
        seen.insert(base.key(), ());
        let mut frontier: Vec<(TrackedSeed, Vec<IVec>)> = vec![(base, d0)];
        while let Some((s, dre)) = frontier.pop() {
            for j in 0..n {
                let x = &s.primal.g[j];
                if x != y {
                    let val = dre[j][*slot];
                    debug_assert!(val >= 0, "cross compatibility degrees are nonnegative");
                    let prev = degree.insert((y.clone(), x.clone()), val);
                    if let Some(p) = prev {
                        assert_eq!(p, val, "compatibility degree depends only on the pair");
                    }
                }
            }
            for k in 0..n {
                let t = s.mutate(k).expect("valid slot");
                if seen.insert(t.key(), ()).is_none() {
                    let dre2 = mutate_dvectors(&dre, &s.primal.b.b, k);
                    frontier.push((t, dre2));
                }
            }
        }
    }
    CompatibilityTable {
        variables: graph.variables.clone(),
        degree,
    }
}

/// Denominator-vector mutation at slot `k` over exchange matrix rows `b`.
fn mutate_dvectors(d: &[IVec], b: &[IVec], k: usize) -> Vec<IVec> {
    let n = d.len();
    let mut out = d.to_vec();
    let mut dk = crate::intlin::neg(&d[k]);
    for i in 0..n {
        let mut pos_sum = 0;
        let mut neg_sum = 0;
        for j in 0..n {
            if j == k {
                continue;
            }
            if b[j][k] > 0 {
                pos_sum += b[j][k] * d[j][i];
            } else if b[j][k] < 0 {
                neg_sum += -b[j][k] * d[j][i];
            }
        }
        dk[i] += pos_sum.max(neg_sum);
    }
    out[k] = dk;
    out
}

/// Half compatibility sum.
pub fn f_rho(graph: &ExchangeGraph) -> LiftFunction {
    let table = compatibility_table(graph);
    let mut values = BTreeMap::new();
    for x in &graph.variables {
        let mut total = 0i64;
        for y in &graph.variables {
            if y != x {
                total += table.get(y, x);
            }
        }
        values.insert(x.clone(), Rat::new(total.into(), 2.into()));
    }
    LiftFunction {
        values,
        provenance: Provenance::Rho,
    }
}

/// Lift from a fairly balanced point, built through the tau orbits of the
/// almost positive roots; only defined for bipartite initial matrices.
///
/// `lambda` is given in fundamental coweight coordinates and must be strictly
/// positive with `w0(lambda) = -lambda`.
pub fn f_lambda(graph: &ExchangeGraph, lambda: &[Rat]) -> Result<LiftFunction, Error> {
    let b = &graph.initial_matrix;
    let n = b.rank();
    if !b.is_bipartite() {
        return Err(Error::NotBipartite);
    }
    if lambda.len() != n {
        return Err(Error::Dimension("lambda has wrong length".into()));
    }
    if lambda.iter().any(|x| !(x > &Rat::zero())) {
        return Err(Error::NotPositive);
    }
    let cartan = b.cartan_companion();
    let rs = enumerate_roots(&cartan)?;
    // fairly balanced <=> lambda is fixed by the weight involution
    let invol = rs.weight_involution();
    for i in 0..n {
        if lambda[i] != lambda[invol[i]] {
            return Err(Error::NotFairlyBalanced);
        }
    }
    // coordinates of lambda over the simple coroots: mu = A^{-T} lambda
    let at = Matrix::from_rows(
        (0..n)
            .map(|i| (0..n).map(|j| rat(cartan[j][i])).collect())
            .collect(),
    );
    let mu = match solve_linear(&at, &Vector::from_vec(lambda.to_vec())) {
        LinearSolution::Solvable { particular, .. } => particular,
        LinearSolution::Inconsistent => unreachable!("Cartan matrices are invertible"),
    };

    // tau_eps fixes the negated simples of the other sign and applies the
    // product of the eps-sign reflections otherwise
    let plus: Vec<usize> = (0..n)
        .filter(|&i| b.b[i].iter().all(|&x| x >= 0))
        .collect();
    let minus: Vec<usize> = (0..n).filter(|&i| !plus.contains(&i)).collect();
    let tau = |eps_slots: &[usize], other: &[usize], v: &IVec| -> IVec {
        for &i in other {
            if *v == crate::intlin::scale(&crate::intlin::unit(n, i), -1) {
                return v.clone();
            }
        }
        let mut w = v.clone();
        for &i in eps_slots {
            w = reflect_root(&cartan, i, &w);
        }
        w
    };

    // variables <-> almost positive roots via d-vectors of the tracked graph
    let mut dvec_of: BTreeMap<IVec, IVec> = BTreeMap::new();
    for s in graph.seeds.values() {
        for j in 0..n {
            dvec_of
                .entry(s.primal.g[j].clone())
                .or_insert_with(|| s.primal.d[j].clone());
        }
    }

    let mut value_of_root: BTreeMap<IVec, Rat> = BTreeMap::new();
    for i in 0..n {
        let start = crate::intlin::scale(&crate::intlin::unit(n, i), -1);
        let mut orbit: Vec<IVec> = Vec::new();
        let mut stack = vec![start];
        while let Some(v) = stack.pop() {
            if orbit.contains(&v) {
                continue;
            }
            orbit.push(v.clone());
            stack.push(tau(&plus, &minus, &v));
            stack.push(tau(&minus, &plus, &v));
        }
        for v in orbit {
            if let Some(prev) = value_of_root.insert(v.clone(), mu[i].clone()) {
                assert_eq!(
                    prev, mu[i],
                    "fairly balanced lambda gives orbit-constant values"
                );
            }
        }
    }

    let mut values = BTreeMap::new();
    for x in &graph.variables {
        let d = &dvec_of[x];
        let v = value_of_root
            .get(d)
            .unwrap_or_else(|| panic!("tau orbits cover all almost positive roots, missing {d:?}"))
            .clone();
        values.insert(x.clone(), v);
    }
    let lift = LiftFunction {
        values,
        provenance: Provenance::Lambda(lambda.to_vec()),
    };
    if !lift.is_positive() {
        return Err(Error::NotPositive);
    }
    Ok(lift)
}

/// Report of the exchange submodularity check.
#[derive(Clone, Debug)]
pub struct SubmodularReport {
    pub edges_checked: usize,
    pub failures: Vec<String>,
    /// minimum of `F(x) + F(x') - max(side sums)` over all edges
    pub worst_slack: Option<Rat>,
}

impl SubmodularReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Strict inequality of the lift on every exchange: `F(x) + F(x')` must
/// exceed both column sums of the exchange relation.
pub fn check_exchange_submodular(lift: &LiftFunction, graph: &ExchangeGraph) -> SubmodularReport {
    let n = graph.rank();
    let mut failures = Vec::new();
    let mut worst: Option<Rat> = None;
    let mut edges = 0usize;
    if !lift.is_positive() {
        failures.push("lift function must be strictly positive".into());
    }
    for (key, s) in &graph.seeds {
        for k in 0..n {
            edges += 1;
            let t = s.mutate(k).expect("valid slot");
            let fx = lift.values.get(&s.primal.g[k]);
            let fxp = lift.values.get(&t.primal.g[k]);
            let (Some(fx), Some(fxp)) = (fx, fxp) else {
                failures.push(format!("missing value at seed {key:?} slot {k}"));
                continue;
            };
            let mut pos_sum = Rat::zero();
            let mut neg_sum = Rat::zero();
            for j in 0..n {
                if j == k {
                    continue;
                }
                let bjk = s.primal.b.b[j][k];
                let fy = &lift.values[&s.primal.g[j]];
                if bjk > 0 {
                    pos_sum += rat(bjk) * fy;
                } else if bjk < 0 {
                    neg_sum += rat(-bjk) * fy;
                }
            }
            let bound = pos_sum.max(neg_sum);
            let slack = fx + fxp - &bound;
            if !(slack > Rat::zero()) {
                failures.push(format!(
                    "edge at seed {key:?} slot {k}: {} + {} <= {}",
                    fx, fxp, bound
                ));
            }
            worst = Some(match worst {
                None => slack,
                Some(w) => w.min(slack),
            });
        }
    }
    SubmodularReport {
        edges_checked: edges,
        failures,
        worst_slack: worst,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtins;
    use crate::graph::{enumerate_exchange_graph, DEFAULT_SEED_CAP};
    use crate::ratio;

    fn graph(name: &str) -> ExchangeGraph {
        enumerate_exchange_graph(&builtins::by_name(name).unwrap(), DEFAULT_SEED_CAP).unwrap()
    }

    fn value_multiset(f: &LiftFunction) -> Vec<(Rat, usize)> {
        let mut counts: BTreeMap<Rat, usize> = BTreeMap::new();
        for v in f.values.values() {
            *counts.entry(v.clone()).or_default() += 1;
        }
        counts.into_iter().collect()
    }

    #[test]
    fn a2_f_rho_is_one() {
        let f = f_rho(&graph("a2"));
        assert!(f.values.values().all(|v| *v == rat(1)));
    }

    #[test]
    fn b2_and_c2_f_rho_values() {
        for name in ["b2", "c2"] {
            let f = f_rho(&graph(name));
            assert_eq!(
                value_multiset(&f),
                vec![(ratio(3, 2), 3), (rat(2), 3)],
                "{name}"
            );
        }
    }

    #[test]
    fn a3_cyclic_f_rho_values() {
        // hexagon diagonals: six short (3 crossings), three long (4 crossings)
        let f = f_rho(&graph("a3-cyclic"));
        assert_eq!(value_multiset(&f), vec![(ratio(3, 2), 6), (rat(2), 3)]);
    }

    #[test]
    fn d5_cyclic_opposite_pair_values() {
        let f = f_rho(&graph("d5-cyclic"));
        assert_eq!(f.values[&vec![-1, 0, 1, 0, 0]], rat(7));
        assert_eq!(f.values[&vec![1, 0, -1, 0, 0]], rat(9));
    }

    #[test]
    fn compatibility_b2_max_degree() {
        let t = compatibility_table(&graph("b2"));
        assert_eq!(t.max_degree(), 2);
        // compatible pairs (same cluster) have degree zero
        let g = graph("b2");
        for s in g.seeds.values() {
            for a in 0..2 {
                for b in 0..2 {
                    if a != b {
                        assert_eq!(t.get(&s.primal.g[a], &s.primal.g[b]), 0);
                    }
                }
            }
        }
    }

    #[test]
    fn f_lambda_rho_matches_f_rho() {
        for name in ["a2", "b2", "c2", "d4"] {
            let g = graph(name);
            let ones = vec![rat(1); g.rank()];
            let fl = f_lambda(&g, &ones).unwrap();
            let fr = f_rho(&g);
            assert_eq!(fl.values, fr.values, "{name}");
        }
    }

    #[test]
    fn f_lambda_on_bipartite_a3() {
        let b = crate::exchange::ExchangeMatrix::new(vec![
            vec![0, 1, 0],
            vec![-1, 0, -1],
            vec![0, 1, 0],
        ])
        .unwrap();
        let g = enumerate_exchange_graph(&b, DEFAULT_SEED_CAP).unwrap();
        let fl = f_lambda(&g, &[rat(1), rat(1), rat(1)]).unwrap();
        let fr = f_rho(&g);
        assert_eq!(fl.values, fr.values);
    }

    #[test]
    fn f_lambda_is_linear_in_lambda() {
        let g = graph("b2");
        let ones = vec![rat(1); 2];
        let twos = vec![rat(2); 2];
        let f1 = f_lambda(&g, &ones).unwrap();
        let f2 = f_lambda(&g, &twos).unwrap();
        for (k, v) in &f1.values {
            assert_eq!(f2.values[k], rat(2) * v);
        }
    }

    #[test]
    fn f_lambda_rejects_cyclic_and_unbalanced() {
        assert!(matches!(
            f_lambda(&graph("a3-cyclic"), &[rat(1), rat(1), rat(1)]),
            Err(Error::NotBipartite)
        ));
        // A2: involution swaps the two weights, so (1,2) is not fairly balanced
        assert!(matches!(
            f_lambda(&graph("a2"), &[rat(1), rat(2)]),
            Err(Error::NotFairlyBalanced)
        ));
        // B2: w0 = -id, any positive lambda works
        assert!(f_lambda(&graph("b2"), &[rat(1), rat(2)]).is_ok());
    }

    #[test]
    fn submodularity_of_f_rho_on_builtins() {
        for name in ["a2", "b2", "c2", "a3-cyclic", "c3-cyclic"] {
            let g = graph(name);
            let f = f_rho(&g);
            let rep = check_exchange_submodular(&f, &g);
            assert!(rep.passed(), "{name}: {:?}", rep.failures);
            assert!(rep.worst_slack.clone().unwrap() > Rat::zero());
        }
    }

    #[test]
    fn zero_lift_fails_everywhere() {
        let g = graph("a2");
        let zero = LiftFunction {
            values: g.variables.iter().map(|v| (v.clone(), rat(0))).collect(),
            provenance: Provenance::User,
        };
        let rep = check_exchange_submodular(&zero, &g);
        assert!(!rep.passed());
    }
}
