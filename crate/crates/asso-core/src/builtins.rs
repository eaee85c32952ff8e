//! Named initial exchange matrices used by the CLI and the test suites.

use crate::exchange::ExchangeMatrix;

pub struct Builtin {
    pub name: &'static str,
    pub matrix: ExchangeMatrix,
}

fn m(rows: &[&[i64]]) -> ExchangeMatrix {
    ExchangeMatrix::new(rows.iter().map(|r| r.to_vec()).collect())
        .expect("builtin matrices are skew-symmetrizable")
}

/// Looks up a builtin by name.
pub fn by_name(name: &str) -> Option<ExchangeMatrix> {
    Some(match name {
        "a1" => m(&[&[0]]),
        "a2" => m(&[&[0, 1], &[-1, 0]]),
        "a3" => m(&[&[0, 1, 0], &[-1, 0, 1], &[0, -1, 0]]),
        "a4" => m(&[
            &[0, 1, 0, 0],
            &[-1, 0, 1, 0],
            &[0, -1, 0, 1],
            &[0, 0, -1, 0],
        ]),
        "b2" => m(&[&[0, 1], &[-2, 0]]),
        "c2" => m(&[&[0, 2], &[-1, 0]]),
        "a3-cyclic" => m(&[&[0, -1, 1], &[1, 0, -1], &[-1, 1, 0]]),
        "c3-cyclic" => m(&[&[0, -1, 2], &[1, 0, -2], &[-1, 1, 0]]),
        "d4" => m(&[
            &[0, 0, 0, 1],
            &[0, 0, 0, 1],
            &[0, 0, 0, 1],
            &[-1, -1, -1, 0],
        ]),
        "d5-cyclic" => m(&[
            &[0, 1, 0, 0, -1],
            &[-1, 0, 1, 0, 0],
            &[0, -1, 0, 1, 0],
            &[0, 0, -1, 0, 1],
            &[1, 0, 0, -1, 0],
        ]),
        _ => return None,
    })
}

pub fn names() -> &'static [&'static str] {
    &[
        "a1",
        "a2",
        "a3",
        "a4",
        "b2",
        "c2",
        "a3-cyclic",
        "c3-cyclic",
        "d4",
        "d5-cyclic",
    ]
}

/// All builtins, in a stable order.
pub fn all() -> Vec<Builtin> {
    names()
        .iter()
        .map(|&name| Builtin {
            name,
            matrix: by_name(name).unwrap(),
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn d4_is_bipartite() {
        assert!(by_name("d4").unwrap().is_bipartite());
    }

    #[test]
    fn cyclic_builtins_are_not_acyclic() {
        for name in ["a3-cyclic", "c3-cyclic", "d5-cyclic"] {
            assert!(!by_name(name).unwrap().is_acyclic(), "{name}");
        }
        for name in ["a1", "a2", "a3", "a4", "b2", "c2", "d4"] {
            assert!(by_name(name).unwrap().is_acyclic(), "{name}");
        }
    }
}
