//! Lie algebras presented by structure constants, with validation, adjoint
//! maps, adjoint characters, subalgebras and quotients.

use num::Zero;

use crate::error::{Error, Result};
use crate::linalg::{Matrix, QuotientMap, Subspace};
use crate::scalar::Rational;

/// A finite-dimensional algebra over Q given by structure constants
/// `[x_i, x_j] = sum_k c(i,j,k) x_k`. Construction does not validate; run
/// [`LieAlgebra::validate`] to get the list of violated antisymmetry and
/// Jacobi components.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LieAlgebra {
    dim: usize,
    basis_names: Vec<String>,
    constants: Vec<Rational>, // c[(i*dim + j)*dim + k]
}

/// Every violated component of the Lie axioms, empty iff valid.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ValidationReport {
    /// Triples (i, j, k) with `c[i][j][k] != -c[j][i][k]`.
    pub antisymmetry: Vec<(usize, usize, usize)>,
    /// Triples (i, j, k) whose cyclic bracket sum is nonzero.
    pub jacobi: Vec<(usize, usize, usize)>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.antisymmetry.is_empty() && self.jacobi.is_empty()
    }
}

impl LieAlgebra {
    pub fn new(dim: usize, basis_names: Vec<String>, constants: Vec<Rational>) -> Self {
        assert_eq!(basis_names.len(), dim);
        assert_eq!(constants.len(), dim * dim * dim);
        LieAlgebra {
            dim,
            basis_names,
            constants,
        }
    }

    pub fn abelian(dim: usize, basis_names: Vec<String>) -> Self {
        LieAlgebra::new(dim, basis_names, vec![Rational::zero(); dim * dim * dim])
    }

    /// Builds from sparse bracket data. For a pair given in one orientation
    /// only, the opposite orientation is filled in antisymmetrically; pairs
    /// given in both orientations are stored as-is so that validation can
    /// catch inconsistent input.
    pub fn from_pairs(
        dim: usize,
        basis_names: Vec<String>,
        pairs: &[((usize, usize), Vec<Rational>)],
    ) -> Result<Self> {
        let mut constants = vec![Rational::zero(); dim * dim * dim];
        let mut seen = vec![false; dim * dim];
        for ((i, j), coords) in pairs {
            if *i >= dim || *j >= dim || coords.len() != dim {
                return Err(Error::Parse(format!("bad bracket entry ({i},{j})")));
            }
            seen[i * dim + j] = true;
            for (k, c) in coords.iter().enumerate() {
                constants[(i * dim + j) * dim + k] = c.clone();
            }
        }
        for i in 0..dim {
            for j in 0..dim {
                if seen[i * dim + j] && !seen[j * dim + i] {
                    for k in 0..dim {
                        constants[(j * dim + i) * dim + k] =
                            -constants[(i * dim + j) * dim + k].clone();
                    }
                }
            }
        }
        Ok(LieAlgebra::new(dim, basis_names, constants))
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn basis_names(&self) -> &[String] {
        &self.basis_names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.basis_names[i]
    }

    pub fn structure_constant(&self, i: usize, j: usize, k: usize) -> &Rational {
        &self.constants[(i * self.dim + j) * self.dim + k]
    }

    /// Coordinates of [x_i, x_j].
    pub fn bracket_basis(&self, i: usize, j: usize) -> &[Rational] {
        let base = (i * self.dim + j) * self.dim;
        &self.constants[base..base + self.dim]
    }

    pub fn bracket(&self, x: &[Rational], y: &[Rational]) -> Result<Vec<Rational>> {
        if x.len() != self.dim || y.len() != self.dim {
            return Err(Error::DimensionMismatch(x.len(), self.dim));
        }
        let mut out = vec![Rational::zero(); self.dim];
        for i in 0..self.dim {
            if x[i].is_zero() {
                continue;
            }
            for j in 0..self.dim {
                if y[j].is_zero() {
                    continue;
                }
                let scale = &x[i] * &y[j];
                for (k, c) in self.bracket_basis(i, j).iter().enumerate() {
                    if !c.is_zero() {
                        out[k] = &out[k] + &(c * &scale);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn validate(&self) -> ValidationReport {
        let mut report = ValidationReport::default();
        for i in 0..self.dim {
            for j in i..self.dim {
                for k in 0..self.dim {
                    let lhs = self.structure_constant(i, j, k);
                    let rhs = -self.structure_constant(j, i, k).clone();
                    if *lhs != rhs {
                        report.antisymmetry.push((i, j, k));
                    }
                }
            }
        }
        for i in 0..self.dim {
            for j in (i + 1)..self.dim {
                for k in (j + 1)..self.dim {
                    let ei = self.basis_vector(i);
                    let ej = self.basis_vector(j);
                    let ek = self.basis_vector(k);
                    let mut sum = self.bracket(&self.bracket(&ei, &ej).unwrap(), &ek).unwrap();
                    let t2 = self.bracket(&self.bracket(&ej, &ek).unwrap(), &ei).unwrap();
                    let t3 = self.bracket(&self.bracket(&ek, &ei).unwrap(), &ej).unwrap();
                    for m in 0..self.dim {
                        sum[m] = &sum[m] + &t2[m] + &t3[m];
                    }
                    if !crate::scalar::is_zero_vec(&sum) {
                        report.jacobi.push((i, j, k));
                    }
                }
            }
        }
        report
    }

    pub fn basis_vector(&self, i: usize) -> Vec<Rational> {
        let mut v = vec![Rational::zero(); self.dim];
        v[i] = Rational::from_integer(1.into());
        v
    }

    /// Matrix of ad_x, column j = [x, x_j].
    pub fn ad_matrix(&self, x: &[Rational]) -> Result<Matrix> {
        if x.len() != self.dim {
            return Err(Error::DimensionMismatch(x.len(), self.dim));
        }
        let mut m = Matrix::zero(self.dim, self.dim);
        for j in 0..self.dim {
            let col = self.bracket(x, &self.basis_vector(j))?;
            for (k, c) in col.into_iter().enumerate() {
                m.set(k, j, c);
            }
        }
        Ok(m)
    }

    /// The covector x ↦ tr(ad_x), given by its values on the basis.
    pub fn adjoint_character(&self) -> Vec<Rational> {
        (0..self.dim)
            .map(|i| {
                (0..self.dim)
                    .map(|j| self.structure_constant(i, j, j).clone())
                    .fold(Rational::zero(), |acc, c| acc + c)
            })
            .collect()
    }

    /// Span of all brackets of basis elements.
    pub fn derived_subalgebra(&self) -> Subspace {
        let mut rows = Vec::new();
        for i in 0..self.dim {
            for j in (i + 1)..self.dim {
                rows.push(self.bracket_basis(i, j).to_vec());
            }
        }
        Subspace::from_rows(self.dim, rows)
    }

    /// Structure constants of a bracket-closed subspace in its canonical
    /// basis; errors with the violating basis pair if not closed.
    pub fn restrict(&self, space: &Subspace) -> Result<LieAlgebra> {
        if space.ambient() != self.dim {
            return Err(Error::DimensionMismatch(space.ambient(), self.dim));
        }
        let rows = space.basis_rows();
        let k = rows.len();
        let coords = space.basis().transpose();
        let mut constants = vec![Rational::zero(); k * k * k];
        for a in 0..k {
            for b in 0..k {
                let v = self.bracket(&rows[a], &rows[b])?;
                let c = coords.solve(&v).map_err(|_| Error::NotClosed(a, b))?;
                for (m, cm) in c.into_iter().enumerate() {
                    constants[(a * k + b) * k + m] = cm;
                }
            }
        }
        let names = (0..k).map(|i| format!("b{i}")).collect();
        Ok(LieAlgebra::new(k, names, constants))
    }
}

/// A bracket-closed subspace; closure is checked eagerly at construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subalgebra {
    space: Subspace,
}

impl Subalgebra {
    pub fn new(alg: &LieAlgebra, space: Subspace) -> Result<Self> {
        if space.ambient() != alg.dim() {
            return Err(Error::DimensionMismatch(space.ambient(), alg.dim()));
        }
        let rows = space.basis_rows();
        for (a, ra) in rows.iter().enumerate() {
            for (b, rb) in rows.iter().enumerate() {
                if !space.contains(&alg.bracket(ra, rb)?) {
                    return Err(Error::NotClosed(a, b));
                }
            }
        }
        Ok(Subalgebra { space })
    }

    pub fn space(&self) -> &Subspace {
        &self.space
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }
}

/// Annihilator h⁰ = {ξ ∈ g* : ξ|_h = 0} in dual coordinates.
pub fn annihilator(h: &Subspace) -> Subspace {
    h.annihilator()
}

/// Quotient coordinates g → g/h with a section.
pub fn quotient_map(h: &Subspace) -> QuotientMap {
    QuotientMap::new(h)
}
