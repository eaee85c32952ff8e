//! Exchange graph enumeration with verification passes.

use crate::exchange::ExchangeMatrix;
use crate::intlin::{dot, gram, is_identity, neg, sign_coherent};
use crate::seed::{SeedKey, TrackedSeed};
use crate::{Error, IVec};
use std::collections::BTreeMap;

pub const DEFAULT_SEED_CAP: usize = 200_000;

/// Deduplicated set of tracked seeds with labeled mutation edges.
#[derive(Clone, Debug)]
pub struct ExchangeGraph {
    pub initial_matrix: ExchangeMatrix,
    pub seeds: BTreeMap<SeedKey, TrackedSeed>,
    /// per seed: neighbor key at each slot
    pub edges: BTreeMap<SeedKey, Vec<SeedKey>>,
    /// all cluster variables, identified by primal g-vector, sorted
    pub variables: Vec<IVec>,
    /// all c-vectors of the dual algebra, sorted
    pub dual_cvectors: Vec<IVec>,
    /// all c-vectors of the primal algebra, sorted
    pub primal_cvectors: Vec<IVec>,
}

/// BFS with dedup on the canonical seed key.
pub fn enumerate_exchange_graph(
    b: &ExchangeMatrix,
    seed_cap: usize,
) -> Result<ExchangeGraph, Error> {
    let n = b.rank();
    let init = TrackedSeed::initial(b);
    let mut seeds: BTreeMap<SeedKey, TrackedSeed> = BTreeMap::new();
    let mut edges: BTreeMap<SeedKey, Vec<SeedKey>> = BTreeMap::new();
    seeds.insert(init.key(), init.clone());
    let mut frontier = vec![init];
    while let Some(s) = frontier.pop() {
        let key = s.key();
        let mut nbrs = Vec::with_capacity(n);
        for k in 0..n {
            let t = s.mutate(k)?;
            let tk = t.key();
            nbrs.push(tk.clone());
            if !seeds.contains_key(&tk) {
                if seeds.len() >= seed_cap {
                    return Err(Error::BudgetExceeded(seed_cap));
                }
                seeds.insert(tk, t.clone());
                frontier.push(t);
            }
        }
        edges.insert(key, nbrs);
    }
    let mut variables: Vec<IVec> = Vec::new();
    let mut dualc: Vec<IVec> = Vec::new();
    let mut primc: Vec<IVec> = Vec::new();
    for s in seeds.values() {
        for j in 0..n {
            variables.push(s.primal.g[j].clone());
            dualc.push(s.dual.c[j].clone());
            primc.push(s.primal.c[j].clone());
        }
    }
    for v in [&mut variables, &mut dualc, &mut primc] {
        v.sort();
        v.dedup();
    }
    Ok(ExchangeGraph {
        initial_matrix: b.clone(),
        seeds,
        edges,
        variables,
        dual_cvectors: dualc,
        primal_cvectors: primc,
    })
}

impl ExchangeGraph {
    pub fn rank(&self) -> usize {
        self.initial_matrix.rank()
    }

    pub fn initial_key(&self) -> SeedKey {
        TrackedSeed::initial(&self.initial_matrix).key()
    }

    pub fn seed(&self, key: &SeedKey) -> &TrackedSeed {
        &self.seeds[key]
    }

    pub fn neighbor(&self, key: &SeedKey, slot: usize) -> &SeedKey {
        &self.edges[key][slot]
    }

    /// Iterate (seed, slot, neighbor seed) with each undirected edge reported
    /// from both sides.
    pub fn half_edges(&self) -> impl Iterator<Item = (&TrackedSeed, usize, &TrackedSeed)> {
        self.seeds.iter().flat_map(move |(key, s)| {
            (0..self.rank()).map(move |k| (s, k, self.seed(&self.edges[key][k])))
        })
    }

    /// Slot of the variable with primal g-vector `g` in the given seed.
    pub fn slot_of(&self, key: &SeedKey, g: &IVec) -> Option<usize> {
        let s = self.seed(key);
        (0..self.rank()).find(|&j| &s.primal.g[j] == g)
    }

    /// Some seed containing each variable, with its slot.
    pub fn seed_containing(&self) -> BTreeMap<IVec, (SeedKey, usize)> {
        let mut out = BTreeMap::new();
        for (key, s) in &self.seeds {
            for j in 0..self.rank() {
                out.entry(s.primal.g[j].clone())
                    .or_insert_with(|| (key.clone(), j));
            }
        }
        out
    }
}

/// One verification failure.
#[derive(Clone, Debug, serde::Serialize)]
pub struct Violation {
    pub seed: String,
    pub slot: usize,
    pub detail: String,
}

/// Every c-vector column of every seed, in both algebras, must be entrywise
/// nonnegative or entrywise nonpositive.
pub fn check_sign_coherence(g: &ExchangeGraph) -> Vec<Violation> {
    let mut out = Vec::new();
    for (key, s) in &g.seeds {
        for j in 0..g.rank() {
            for (tag, side) in [("primal", &s.primal), ("dual", &s.dual)] {
                match sign_coherent(&side.c[j]) {
                    Some(1) | Some(-1) => {}
                    _ => out.push(Violation {
                        seed: format!("{key:?}"),
                        slot: j,
                        detail: format!("{tag} c-column {:?} has mixed signs", side.c[j]),
                    }),
                }
            }
        }
    }
    out
}

/// Primal g-columns and dual c-columns must be dual bases at every seed, and
/// symmetrically; checked as exact integer products.
pub fn check_duality(g: &ExchangeGraph) -> Vec<Violation> {
    let mut out = Vec::new();
    for (key, s) in &g.seeds {
        if !is_identity(&gram(&s.primal.g, &s.dual.c)) {
            out.push(Violation {
                seed: format!("{key:?}"),
                slot: 0,
                detail: "primal g and dual c are not dual bases".into(),
            });
        }
        if !is_identity(&gram(&s.dual.g, &s.primal.c)) {
            out.push(Violation {
                seed: format!("{key:?}"),
                slot: 0,
                detail: "dual g and primal c are not dual bases".into(),
            });
        }
        if !s.dual_consistent() {
            out.push(Violation {
                seed: format!("{key:?}"),
                slot: 0,
                detail: "dual B is not -B^T".into(),
            });
        }
    }
    out
}

/// Green orientation of the exchange graph with acyclicity certificate.
#[derive(Clone, Debug)]
pub struct GreenOrientation {
    /// directed edges (source key, slot, target key); one per undirected edge
    pub edges: Vec<(SeedKey, usize, SeedKey)>,
    /// topological order over seed keys, present only when acyclic
    pub topological: Option<Vec<SeedKey>>,
    pub sources: Vec<SeedKey>,
    pub sinks: Vec<SeedKey>,
}

/// Orient each exchange `S -> S'` green when the dual c-vector of the
/// exchanged slot at `S` is positive.
pub fn green_orientation(g: &ExchangeGraph) -> GreenOrientation {
    let mut edges = Vec::new();
    let mut outdeg: BTreeMap<&SeedKey, usize> = BTreeMap::new();
    let mut indeg: BTreeMap<&SeedKey, usize> = BTreeMap::new();
    let mut adj: BTreeMap<&SeedKey, Vec<&SeedKey>> = BTreeMap::new();
    for key in g.seeds.keys() {
        outdeg.insert(key, 0);
        indeg.insert(key, 0);
        adj.insert(key, Vec::new());
    }
    for (key, s) in &g.seeds {
        for k in 0..g.rank() {
            let sign = sign_coherent(&s.dual.c[k]).unwrap_or(0);
            if sign > 0 {
                let target = g.neighbor(key, k);
                edges.push((key.clone(), k, target.clone()));
                *outdeg.get_mut(key).unwrap() += 1;
                *indeg.get_mut(target).unwrap() += 1;
                adj.get_mut(key).unwrap().push(target);
            }
        }
    }
    // Kahn's algorithm over the deterministic key order
    let mut pending: Vec<&SeedKey> = indeg
        .iter()
        .filter(|(_, &d)| d == 0)
        .map(|(&k, _)| k)
        .collect();
    let mut remaining = indeg.clone();
    let mut topo: Vec<SeedKey> = Vec::with_capacity(g.seeds.len());
    let mut queue = std::collections::VecDeque::from(pending.clone());
    while let Some(u) = queue.pop_front() {
        topo.push(u.clone());
        for &v in &adj[u] {
            let d = remaining.get_mut(v).unwrap();
            *d -= 1;
            if *d == 0 {
                queue.push_back(v);
            }
        }
    }
    pending.sort();
    let sources: Vec<SeedKey> = indeg
        .iter()
        .filter(|(_, &d)| d == 0)
        .map(|(&k, _)| k.clone())
        .collect();
    let sinks: Vec<SeedKey> = outdeg
        .iter()
        .filter(|(_, &d)| d == 0)
        .map(|(&k, _)| k.clone())
        .collect();
    let topological = if topo.len() == g.seeds.len() {
        Some(topo)
    } else {
        None
    };
    GreenOrientation {
        edges,
        topological,
        sources,
        sinks,
    }
}

/// For acyclic B the c-vectors are roots of the companion root system; for
/// cyclic B only sign coherence is asserted (the companion system is
/// infinite). Returns violations.
pub fn check_cvectors_are_roots(
    g: &ExchangeGraph,
    positive_roots: Option<&[IVec]>,
) -> Vec<Violation> {
    let mut out = Vec::new();
    match positive_roots {
        Some(roots) => {
            for c in &g.primal_cvectors {
                let pos: IVec = if sign_coherent(c) == Some(-1) {
                    neg(c)
                } else {
                    c.clone()
                };
                if !roots.contains(&pos) {
                    out.push(Violation {
                        seed: String::new(),
                        slot: 0,
                        detail: format!("c-vector {c:?} is not a root"),
                    });
                }
            }
        }
        None => {
            for c in &g.primal_cvectors {
                if matches!(sign_coherent(c), None | Some(0)) {
                    out.push(Violation {
                        seed: String::new(),
                        slot: 0,
                        detail: format!("c-vector {c:?} has mixed signs"),
                    });
                }
            }
        }
    }
    out
}

/// `C = -C` as sets of dual c-vectors.
pub fn cvector_set_symmetric(g: &ExchangeGraph) -> bool {
    g.dual_cvectors
        .iter()
        .all(|c| g.dual_cvectors.binary_search(&neg(c)).is_ok())
}

/// Pairing of the green orientation with the associahedron edge direction:
/// `<sum of initial weights, dual c-vector>` is positive exactly on green
/// slots (the geometric orientation of Remark 5.3 uses its negative).
pub fn green_agrees_with_linear_direction(g: &ExchangeGraph) -> bool {
    let ones = vec![1i64; g.rank()];
    g.seeds.values().all(|s| {
        (0..g.rank()).all(|k| {
            let sign = sign_coherent(&s.dual.c[k]).unwrap_or(0);
            let pairing = dot(&ones, &s.dual.c[k]);
            (sign > 0) == (pairing > 0) && pairing != 0
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtins;

    fn graph(name: &str) -> ExchangeGraph {
        enumerate_exchange_graph(&builtins::by_name(name).unwrap(), DEFAULT_SEED_CAP).unwrap()
    }

    #[test]
    fn a2_counts() {
        let g = graph("a2");
        assert_eq!(g.seeds.len(), 5);
        assert_eq!(g.variables.len(), 5);
        assert_eq!(g.dual_cvectors.len(), 6);
    }

    #[test]
    fn b2_counts() {
        let g = graph("b2");
        assert_eq!(g.variables.len(), 6);
        assert_eq!(g.dual_cvectors.len(), 8);
        assert_eq!(g.seeds.len(), 6);
    }

    #[test]
    fn a3_cyclic_counts() {
        let g = graph("a3-cyclic");
        assert_eq!(g.variables.len(), 9);
        assert_eq!(g.dual_cvectors.len(), 12);
        assert_eq!(g.seeds.len(), 14);
        // nine distinct g-vectors include +-unit vectors
        for i in 0..3 {
            assert!(g.variables.binary_search(&crate::intlin::unit(3, i)).is_ok());
            assert!(g
                .variables
                .binary_search(&neg(&crate::intlin::unit(3, i)))
                .is_ok());
        }
    }

    #[test]
    fn verification_passes_clean() {
        for name in ["a2", "b2", "c2", "a3-cyclic", "c3-cyclic"] {
            let g = graph(name);
            assert!(check_sign_coherence(&g).is_empty(), "{name}");
            assert!(check_duality(&g).is_empty(), "{name}");
            assert!(cvector_set_symmetric(&g), "{name}");
        }
    }

    #[test]
    fn graph_is_regular_and_involutive() {
        // stored representatives of one cluster may order slots differently,
        // so the backward edge is located through the exchanged variable
        let g = graph("a3-cyclic");
        for (key, nbrs) in &g.edges {
            assert_eq!(nbrs.len(), 3);
            let s = g.seed(key);
            for (k, tkey) in nbrs.iter().enumerate() {
                let new_var = s.mutate(k).unwrap().primal.g[k].clone();
                let back = g
                    .slot_of(tkey, &new_var)
                    .expect("exchanged variable sits in the neighbor");
                assert_eq!(g.neighbor(tkey, back), key, "mutating twice returns");
            }
        }
    }

    #[test]
    fn green_orientation_acyclic_unique_source_sink() {
        for name in ["a2", "b2", "a3-cyclic", "c3-cyclic"] {
            let g = graph(name);
            let o = green_orientation(&g);
            assert!(o.topological.is_some(), "{name}: green digraph has a cycle");
            assert_eq!(o.sources, vec![g.initial_key()], "{name}");
            assert_eq!(o.sinks.len(), 1, "{name}");
            assert!(green_agrees_with_linear_direction(&g), "{name}");
        }
    }

    #[test]
    fn budget_exceeded_reports() {
        let b = builtins::by_name("d5-cyclic").unwrap();
        match enumerate_exchange_graph(&b, 10) {
            Err(Error::BudgetExceeded(10)) => {}
            other => panic!("expected budget error, got {other:?}"),
        }
    }

    #[test]
    fn a2_green_is_pentagon_path() {
        let g = graph("a2");
        let o = green_orientation(&g);
        assert_eq!(o.edges.len(), 5);
    }
}
