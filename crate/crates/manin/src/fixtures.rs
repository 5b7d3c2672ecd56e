//! The shipped fixture catalog. Every entry is a valid Lie bialgebra
//! (certified by double-Jacobi in the tests) together with a subalgebra h
//! given by basis indices and a bivector Λ, anchoring the homogeneous-space
//! checks. The same data ships as JSON through the CLI (`manin fixtures`).

use num::Zero;

use crate::double::Bialgebra;
use crate::exterior::Multivector;
use crate::lie::LieAlgebra;
use crate::linalg::Subspace;
use crate::scalar::{from_int, Rational};

#[derive(Debug, Clone)]
pub struct Fixture {
    pub name: &'static str,
    pub bialgebra: Bialgebra,
    /// Basis indices spanning the subalgebra h ⊆ g used by the
    /// homogeneous-space checks (empty = the zero subalgebra).
    pub h_indices: Vec<usize>,
    /// The lift Λ ∈ ∧²g of the base-point bivector.
    pub lambda: Multivector,
}

impl Fixture {
    pub fn h_space(&self) -> Subspace {
        let n = self.bialgebra.dim();
        let rows = self
            .h_indices
            .iter()
            .map(|&i| {
                let mut v = vec![Rational::zero(); n];
                v[i] = from_int(1);
                v
            })
            .collect();
        Subspace::from_rows(n, rows)
    }
}

pub fn abelian(n: usize) -> LieAlgebra {
    let names = (0..n).map(|i| format!("x{}", i + 1)).collect();
    LieAlgebra::abelian(n, names)
}

fn names(list: &[&str]) -> Vec<String> {
    list.iter().map(|s| s.to_string()).collect()
}

fn biv(n: usize, terms: &[(usize, usize, i64)]) -> Multivector {
    let mut out = Multivector::zero(n, 2);
    for &(i, j, c) in terms {
        out = out
            .add(&Multivector::basis(n, &[i, j]).unwrap().scale(&from_int(c)))
            .unwrap();
    }
    out
}

/// 2-dim abelian, δ = 0.
pub fn abelian2() -> Fixture {
    Fixture {
        name: "abelian2",
        bialgebra: Bialgebra::trivial(abelian(2)),
        h_indices: vec![],
        lambda: Multivector::zero(2, 2),
    }
}

/// 4-dim abelian, δ = 0, h = span{x3, x4}.
pub fn abelian4() -> Fixture {
    Fixture {
        name: "abelian4",
        bialgebra: Bialgebra::trivial(abelian(4)),
        h_indices: vec![2, 3],
        lambda: Multivector::zero(4, 2),
    }
}

/// [x1, x2] = x2, δ = 0, h = span{x2}.
pub fn nonabelian2() -> Fixture {
    let alg = LieAlgebra::from_pairs(
        2,
        names(&["x1", "x2"]),
        &[((0, 1), vec![Rational::zero(), from_int(1)])],
    )
    .unwrap();
    Fixture {
        name: "nonabelian2",
        bialgebra: Bialgebra::trivial(alg),
        h_indices: vec![1],
        lambda: Multivector::zero(2, 2),
    }
}

fn sl2_algebra() -> LieAlgebra {
    // basis (H, E, F): [H,E] = 2E, [H,F] = −2F, [E,F] = H
    LieAlgebra::from_pairs(
        3,
        names(&["H", "E", "F"]),
        &[
            (
                (0, 1),
                vec![Rational::zero(), from_int(2), Rational::zero()],
            ),
            (
                (0, 2),
                vec![Rational::zero(), Rational::zero(), from_int(-2)],
            ),
            (
                (1, 2),
                vec![from_int(1), Rational::zero(), Rational::zero()],
            ),
        ],
    )
    .unwrap()
}

/// Split 3-dim simple algebra with δ = 0, h = span{H}, Λ = E∧F.
pub fn sl2_delta0() -> Fixture {
    Fixture {
        name: "sl2_delta0",
        bialgebra: Bialgebra::trivial(sl2_algebra()),
        h_indices: vec![0],
        lambda: biv(3, &[(1, 2, 1)]),
    }
}

/// The same algebra with the coboundary cobracket of r = E∧F:
/// δ(H) = 0, δ(E) = −H∧E, δ(F) = −H∧F.
pub fn sl2_r_ef() -> Fixture {
    let alg = sl2_algebra();
    let cobracket = vec![
        Multivector::zero(3, 2),
        biv(3, &[(0, 1, -1)]),
        biv(3, &[(0, 2, -1)]),
    ];
    Fixture {
        name: "sl2_rEF",
        bialgebra: Bialgebra::new(alg, cobracket).unwrap(),
        h_indices: vec![0],
        lambda: biv(3, &[(1, 2, 1)]),
    }
}

/// The same algebra twisted by the scaled element r = 2 E∧F.
pub fn sl2_r_2ef() -> Fixture {
    let alg = sl2_algebra();
    let cobracket = vec![
        Multivector::zero(3, 2),
        biv(3, &[(0, 1, -2)]),
        biv(3, &[(0, 2, -2)]),
    ];
    Fixture {
        name: "sl2_r2EF",
        bialgebra: Bialgebra::new(alg, cobracket).unwrap(),
        h_indices: vec![0],
        lambda: biv(3, &[(1, 2, 2)]),
    }
}

fn heis3_algebra() -> LieAlgebra {
    // [X, Y] = Z
    LieAlgebra::from_pairs(
        3,
        names(&["X", "Y", "Z"]),
        &[(
            (0, 1),
            vec![Rational::zero(), Rational::zero(), from_int(1)],
        )],
    )
    .unwrap()
}

/// Heisenberg algebra, δ = 0, h = span{Z}, Λ = X∧Y.
pub fn heis3_delta0() -> Fixture {
    Fixture {
        name: "heis3_delta0",
        bialgebra: Bialgebra::trivial(heis3_algebra()),
        h_indices: vec![2],
        lambda: biv(3, &[(0, 1, 1)]),
    }
}

/// Heisenberg algebra with the coboundary cobracket of r = X∧Y:
/// δ(X) = X∧Z, δ(Y) = Y∧Z, δ(Z) = 0.
pub fn heis3_twisted() -> Fixture {
    let cobracket = vec![
        biv(3, &[(0, 2, 1)]),
        biv(3, &[(1, 2, 1)]),
        Multivector::zero(3, 2),
    ];
    Fixture {
        name: "heis3_twisted",
        bialgebra: Bialgebra::new(heis3_algebra(), cobracket).unwrap(),
        h_indices: vec![2],
        lambda: biv(3, &[(0, 1, 1)]),
    }
}

/// Abelian 3-dim algebra whose dual is Heisenberg: δ(x1) = x2∧x3.
/// Ships with h = 0; the variant h = span{x1} is the stock counterexample
/// for the invariance condition and lives in the tests.
pub fn dual_heis3() -> Fixture {
    let cobracket = vec![
        biv(3, &[(1, 2, 1)]),
        Multivector::zero(3, 2),
        Multivector::zero(3, 2),
    ];
    Fixture {
        name: "dual_heis3",
        bialgebra: Bialgebra::new(abelian(3), cobracket).unwrap(),
        h_indices: vec![],
        lambda: Multivector::zero(3, 2),
    }
}

/// Two commuting copies of the 2-dim nonabelian algebra:
/// `[x1,x2] = x2`, `[x3,x4] = x4`, δ = 0, h = span{x2, x4}, Λ = x1∧x3.
pub fn book4() -> Fixture {
    let alg = LieAlgebra::from_pairs(
        4,
        names(&["x1", "x2", "x3", "x4"]),
        &[
            ((0, 1), {
                let mut v = vec![Rational::zero(); 4];
                v[1] = from_int(1);
                v
            }),
            ((2, 3), {
                let mut v = vec![Rational::zero(); 4];
                v[3] = from_int(1);
                v
            }),
        ],
    )
    .unwrap();
    Fixture {
        name: "book4",
        bialgebra: Bialgebra::trivial(alg),
        h_indices: vec![1, 3],
        lambda: biv(4, &[(0, 2, 1)]),
    }
}

/// The full catalog, in a fixed order.
pub fn catalog() -> Vec<Fixture> {
    vec![
        abelian2(),
        abelian4(),
        nonabelian2(),
        sl2_delta0(),
        sl2_r_ef(),
        sl2_r_2ef(),
        heis3_delta0(),
        heis3_twisted(),
        dual_heis3(),
        book4(),
    ]
}

pub fn by_name(name: &str) -> Option<Fixture> {
    catalog().into_iter().find(|f| f.name == name)
}
