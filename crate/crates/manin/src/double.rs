//! Lie bialgebras, the coadjoint maps, the Drinfeld double `d = g ⊕ g*` with
//! its invariant pairing, Lagrangian subspace tests, and pointwise group
//! frames for the adjoint action of G on d.

use num::Zero;

use crate::error::{Error, Result};
use crate::exterior::Multivector;
use crate::lie::LieAlgebra;
use crate::linalg::{Matrix, Subspace};
use crate::scalar::Rational;

/// A Lie algebra with a cobracket δ: g → ∧²g. The dual bracket on g* is
/// `([ξ,η], x) = (ξ∧η, δ(x))`. Whether (g, δ) is a Lie bialgebra is certified
/// by the Jacobi identity of the assembled double, see [`Bialgebra::double`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bialgebra {
    pub algebra: LieAlgebra,
    /// Row i is δ(x_i), a degree-2 multivector over g.
    pub cobracket: Vec<Multivector>,
}

impl Bialgebra {
    pub fn new(algebra: LieAlgebra, cobracket: Vec<Multivector>) -> Result<Self> {
        if cobracket.len() != algebra.dim() {
            return Err(Error::DimensionMismatch(cobracket.len(), algebra.dim()));
        }
        for row in &cobracket {
            if row.dim() != algebra.dim() {
                return Err(Error::DimensionMismatch(row.dim(), algebra.dim()));
            }
            if row.degree() != 2 {
                return Err(Error::DegreeMismatch(row.degree(), 2));
            }
        }
        Ok(Bialgebra { algebra, cobracket })
    }

    pub fn trivial(algebra: LieAlgebra) -> Self {
        let n = algebra.dim();
        Bialgebra {
            cobracket: (0..n).map(|_| Multivector::zero(n, 2)).collect(),
            algebra,
        }
    }

    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }

    pub fn cobracket_of(&self, x: &[Rational]) -> Result<Multivector> {
        let n = self.dim();
        if x.len() != n {
            return Err(Error::DimensionMismatch(x.len(), n));
        }
        let mut out = Multivector::zero(n, 2);
        for (i, c) in x.iter().enumerate() {
            out = out.add(&self.cobracket[i].scale(c))?;
        }
        Ok(out)
    }

    /// The extension of δ to ∧²g by the signed Leibniz rule
    /// `δ(u∧v) = u ∧ δ(v) − δ(u) ∧ v`, the unique choice under which the
    /// membership condition on `[Λ,Λ] + 2δ(Λ)` is equivalent to the
    /// subalgebra condition on the associated Lagrangian, and under which
    /// the twist trivector `½[Λ,Λ] + δ(Λ)` matches its double-bracket form.
    pub fn cobracket_on_bivector(&self, lambda: &Multivector) -> Result<Multivector> {
        let n = self.dim();
        if lambda.dim() != n {
            return Err(Error::DimensionMismatch(lambda.dim(), n));
        }
        if lambda.degree() != 2 {
            return Err(Error::DegreeMismatch(lambda.degree(), 2));
        }
        let mut out = Multivector::zero(n, 3);
        for (key, c) in lambda.terms() {
            let (i, j) = (key[0], key[1]);
            let ei = Multivector::basis(n, &[i])?;
            let ej = Multivector::basis(n, &[j])?;
            let t = ei
                .wedge(&self.cobracket[j])?
                .sub(&self.cobracket[i].wedge(&ej)?)?;
            out = out.add(&t.scale(c))?;
        }
        Ok(out)
    }

    /// The dual Lie algebra structure on g* induced by δ.
    pub fn dual_algebra(&self) -> LieAlgebra {
        let n = self.dim();
        let names = self
            .algebra
            .basis_names()
            .iter()
            .map(|s| format!("{s}*"))
            .collect();
        let mut constants = vec![Rational::zero(); n * n * n];
        for i in 0..n {
            for j in 0..n {
                if i == j {
                    continue;
                }
                for k in 0..n {
                    // ([ξ_i, ξ_j], x_k) = (ξ_i ∧ ξ_j, δ(x_k))
                    let c = if i < j {
                        self.cobracket[k].coeff(&[i, j])
                    } else {
                        -self.cobracket[k].coeff(&[j, i])
                    };
                    constants[(i * n + j) * n + k] = c;
                }
            }
        }
        LieAlgebra::new(n, names, constants)
    }

    /// `(ad*_x ξ, y) = (ξ, [y, x])`, i.e. `ad*_x = −(ad_x)ᵀ`.
    pub fn ad_star_x(&self, x: &[Rational], xi: &[Rational]) -> Result<Vec<Rational>> {
        let m = self.algebra.ad_matrix(x)?.transpose();
        Ok(m.mul_vec(xi)?.iter().map(|c| -c).collect())
    }

    /// `(ad*_ξ x, η) = (x, [η, ξ])` with the dual bracket on g*.
    pub fn ad_star_xi(&self, xi: &[Rational], x: &[Rational]) -> Result<Vec<Rational>> {
        let m = self.dual_algebra().ad_matrix(xi)?.transpose();
        Ok(m.mul_vec(x)?.iter().map(|c| -c).collect())
    }

    /// Assembles the double `d = g ⊕ g*` with the bracket
    /// `[x+ξ, y+η] = [x,y] + ad*_ξ y − ad*_η x + [ξ,η] + ad*_x η − ad*_y ξ`
    /// and the pairing `⟨x+ξ, y+η⟩ = (x,η) + (y,ξ)`. The Jacobi sweep over
    /// all basis triples of d is the Lie bialgebra test: a failure reports
    /// the violating triple.
    pub fn double(&self) -> Result<Double> {
        let n = self.dim();
        let dual = self.dual_algebra();
        let mut names: Vec<String> = self.algebra.basis_names().to_vec();
        names.extend(dual.basis_names().iter().cloned());
        let dim = 2 * n;
        let mut constants = vec![Rational::zero(); dim * dim * dim];
        let mut set = |i: usize, j: usize, coords: Vec<Rational>| {
            for (k, c) in coords.into_iter().enumerate() {
                constants[(i * dim + j) * dim + k] = c;
            }
        };
        for i in 0..n {
            for j in 0..n {
                // [x_i, x_j] stays in g
                let mut coords = self.algebra.bracket_basis(i, j).to_vec();
                coords.extend(vec![Rational::zero(); n]);
                set(i, j, coords);
                // [ξ_i, ξ_j] stays in g*
                let mut coords = vec![Rational::zero(); n];
                coords.extend(dual.bracket_basis(i, j).to_vec());
                set(n + i, n + j, coords);
                // [x_i, ξ_j] = −ad*_{ξ_j} x_i + ad*_{x_i} ξ_j
                let g_part =
                    self.ad_star_xi(&dual.basis_vector(j), &self.algebra.basis_vector(i))?;
                let gstar_part =
                    self.ad_star_x(&self.algebra.basis_vector(i), &dual.basis_vector(j))?;
                let mut coords: Vec<Rational> = g_part.iter().map(|c| -c).collect();
                coords.extend(gstar_part);
                set(i, n + j, coords.clone());
                set(n + j, i, coords.into_iter().map(|c| -c).collect());
            }
        }
        let algebra = LieAlgebra::new(dim, names, constants);
        let report = algebra.validate();
        if let Some(&(a, b, c)) = report.jacobi.first() {
            return Err(Error::NotLieBialgebra(
                algebra.name(a).to_string(),
                algebra.name(b).to_string(),
                algebra.name(c).to_string(),
            ));
        }
        debug_assert!(report.antisymmetry.is_empty());
        let mut pairing = Matrix::zero(dim, dim);
        for i in 0..n {
            pairing.set(i, n + i, Rational::from_integer(1.into()));
            pairing.set(n + i, i, Rational::from_integer(1.into()));
        }
        Ok(Double {
            algebra,
            pairing,
            n,
        })
    }
}

/// The Drinfeld double: a 2n-dimensional Lie algebra with basis
/// (x_1..x_n, ξ_1..ξ_n) and the canonical invariant pairing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Double {
    pub algebra: LieAlgebra,
    pub pairing: Matrix,
    n: usize,
}

impl Double {
    pub fn half_dim(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        2 * self.n
    }

    pub fn bracket(&self, u: &[Rational], v: &[Rational]) -> Result<Vec<Rational>> {
        self.algebra.bracket(u, v)
    }

    pub fn pair(&self, u: &[Rational], v: &[Rational]) -> Result<Rational> {
        let pv = self.pairing.mul_vec(v)?;
        if u.len() != pv.len() {
            return Err(Error::DimensionMismatch(u.len(), pv.len()));
        }
        Ok(u.iter()
            .zip(&pv)
            .map(|(a, b)| a * b)
            .fold(Rational::zero(), |acc, x| acc + x))
    }

    pub fn split(&self, v: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
        (v[..self.n].to_vec(), v[self.n..].to_vec())
    }

    pub fn embed_g(&self, x: &[Rational]) -> Vec<Rational> {
        let mut v = x.to_vec();
        v.extend(vec![Rational::zero(); self.n]);
        v
    }

    pub fn embed_g_star(&self, xi: &[Rational]) -> Vec<Rational> {
        let mut v = vec![Rational::zero(); self.n];
        v.extend_from_slice(xi);
        v
    }

    pub fn g_subspace(&self) -> Subspace {
        let rows = (0..self.n)
            .map(|i| self.embed_g(&unit(self.n, i)))
            .collect();
        Subspace::from_rows(self.dim(), rows)
    }

    pub fn g_star_subspace(&self) -> Subspace {
        let rows = (0..self.n)
            .map(|i| self.embed_g_star(&unit(self.n, i)))
            .collect();
        Subspace::from_rows(self.dim(), rows)
    }

    /// True iff the pairing vanishes on w and dim w = n.
    pub fn is_lagrangian(&self, w: &Subspace) -> bool {
        if w.ambient() != self.dim() || w.dim() != self.n {
            return false;
        }
        let rows = w.basis_rows();
        for a in &rows {
            for b in &rows {
                if !self.pair(a, b).expect("ambient checked").is_zero() {
                    return false;
                }
            }
        }
        true
    }

    /// Ad-invariance sweep of the pairing, for tests and validation:
    /// `⟨[z,a],b⟩ + ⟨a,[z,b]⟩ = 0` over all basis triples.
    pub fn pairing_is_ad_invariant(&self) -> bool {
        let dim = self.dim();
        for z in 0..dim {
            let ez = self.algebra.basis_vector(z);
            for a in 0..dim {
                let ea = self.algebra.basis_vector(a);
                for b in 0..dim {
                    let eb = self.algebra.basis_vector(b);
                    let lhs = self.pair(&self.bracket(&ez, &ea).unwrap(), &eb).unwrap();
                    let rhs = self.pair(&ea, &self.bracket(&ez, &eb).unwrap()).unwrap();
                    if !(lhs + rhs).is_zero() {
                        return false;
                    }
                }
            }
        }
        true
    }
}

fn unit(n: usize, i: usize) -> Vec<Rational> {
    let mut v = vec![Rational::zero(); n];
    v[i] = Rational::from_integer(1.into());
    v
}

/// Pointwise group data at some g ∈ G, standing in for a global Lie group:
/// the adjoint action on g, the coadjoint action `Ad*_{g⁻¹}` on g*, and the
/// right-trivialized value of the multiplicative bivector at g. Both the
/// tangent conventions here and the anchor formula downstream use right
/// trivialization.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointFrame {
    /// Ad_g on g.
    pub ad_g: Matrix,
    /// Ad*_{g⁻¹} on g*; always the inverse transpose of `ad_g`.
    pub coad: Matrix,
    /// (r_{g⁻¹})_* π_G(g) ∈ ∧²g.
    pub pi_g: Multivector,
    /// Optional automorphism of the double at a point of D.
    pub ad_d: Option<Matrix>,
}

impl PointFrame {
    pub fn identity(n: usize) -> Self {
        PointFrame {
            ad_g: Matrix::identity(n),
            coad: Matrix::identity(n),
            pi_g: Multivector::zero(n, 2),
            ad_d: None,
        }
    }

    pub fn new(ad_g: Matrix, pi_g: Multivector) -> Result<Self> {
        let coad = ad_g
            .inverse()
            .map_err(|_| Error::InvalidFrame("Ad_g is not invertible".to_string()))?;
        Ok(PointFrame {
            ad_g,
            coad: coad.transpose(),
            pi_g,
            ad_d: None,
        })
    }

    /// Checks the frame invariants against an algebra (and its double, when
    /// `ad_d` is present): Ad_g preserves the bracket, coad is the inverse
    /// transpose, and ad_d preserves both the double bracket and the pairing.
    pub fn validate(&self, alg: &LieAlgebra, dbl: Option<&Double>) -> Result<()> {
        let n = alg.dim();
        if self.ad_g.rows() != n || self.ad_g.cols() != n {
            return Err(Error::InvalidFrame("Ad_g has the wrong shape".into()));
        }
        if self.pi_g.dim() != n || self.pi_g.degree() != 2 {
            return Err(Error::InvalidFrame("pi_g must be a bivector over g".into()));
        }
        let inv_t = self
            .ad_g
            .inverse()
            .map_err(|_| Error::InvalidFrame("Ad_g is not invertible".into()))?
            .transpose();
        if self.coad != inv_t {
            return Err(Error::InvalidFrame(
                "coad is not the inverse transpose of Ad_g".into(),
            ));
        }
        if !is_bracket_automorphism(&self.ad_g, alg)? {
            return Err(Error::InvalidFrame(
                "Ad_g does not preserve the bracket".into(),
            ));
        }
        if let Some(ad_d) = &self.ad_d {
            let dbl = dbl.ok_or_else(|| {
                Error::InvalidFrame("ad_d supplied without a double to validate against".into())
            })?;
            if !is_bracket_automorphism(ad_d, &dbl.algebra)? {
                return Err(Error::InvalidFrame(
                    "ad_d does not preserve the double bracket".into(),
                ));
            }
            if !preserves_pairing(ad_d, dbl)? {
                return Err(Error::InvalidFrame(
                    "ad_d does not preserve the pairing".into(),
                ));
            }
        }
        Ok(())
    }

    /// The 2n×2n matrix of `Ad_g` on d:
    /// `Ad_g(x+ξ) = Ad_g x + ι_{Ad*_{g⁻¹}ξ}((r_{g⁻¹})_*π_G(g)) + Ad*_{g⁻¹}ξ`.
    pub fn gond_matrix(&self) -> Result<Matrix> {
        let n = self.ad_g.rows();
        let mut m = Matrix::zero(2 * n, 2 * n);
        for j in 0..n {
            for i in 0..n {
                m.set(i, j, self.ad_g.get(i, j).clone());
            }
            let cxi = self.coad.mul_vec(&unit(n, j))?;
            let middle = Multivector::interior(&Multivector::vector(&cxi), &self.pi_g)?;
            for i in 0..n {
                m.set(i, n + j, middle.coeff(&[i]));
                m.set(n + i, n + j, cxi[i].clone());
            }
        }
        Ok(m)
    }

    /// Applies the pointwise adjoint action of G on d to `v = x + ξ`.
    pub fn apply_to_double(&self, v: &[Rational]) -> Result<Vec<Rational>> {
        let n = self.ad_g.rows();
        if v.len() != 2 * n {
            return Err(Error::DimensionMismatch(v.len(), 2 * n));
        }
        let (x, xi) = (&v[..n], &v[n..]);
        let ax = self.ad_g.mul_vec(x)?;
        let cxi = self.coad.mul_vec(xi)?;
        let middle = Multivector::interior(&Multivector::vector(&cxi), &self.pi_g)?;
        let mut out = Vec::with_capacity(2 * n);
        for i in 0..n {
            out.push(&ax[i] + middle.coeff(&[i]));
        }
        out.extend(cxi);
        Ok(out)
    }

    /// Reads a frame off a block-triangular automorphism of d (the form the
    /// adjoint action of any group element of G takes): recovers Ad_g, the
    /// coadjoint block, and the bivector behind the mixed block.
    pub fn from_gond_matrix(m: &Matrix, alg: &LieAlgebra) -> Result<Self> {
        let n = alg.dim();
        if m.rows() != 2 * n || m.cols() != 2 * n {
            return Err(Error::InvalidFrame("expected a 2n x 2n matrix".into()));
        }
        let mut ad_g = Matrix::zero(n, n);
        let mut coad = Matrix::zero(n, n);
        let mut mixed = Matrix::zero(n, n);
        for i in 0..n {
            for j in 0..n {
                ad_g.set(i, j, m.get(i, j).clone());
                coad.set(i, j, m.get(n + i, n + j).clone());
                mixed.set(i, j, m.get(i, n + j).clone());
                if !m.get(n + i, j).is_zero() {
                    return Err(Error::InvalidFrame("matrix does not map g into g".into()));
                }
            }
        }
        let inv_t = ad_g
            .inverse()
            .map_err(|_| Error::InvalidFrame("Ad_g block is singular".into()))?
            .transpose();
        if coad != inv_t {
            return Err(Error::InvalidFrame(
                "coadjoint block is not the inverse transpose".into(),
            ));
        }
        // mixed = ξ ↦ ι_{coad ξ} P, i.e. mixed = −P̂ · coad with P̂ the full
        // antisymmetric coefficient matrix of the bivector
        let p_hat = mixed
            .mul(&ad_g.transpose())?
            .scale(&-Rational::from_integer(1.into()));
        if p_hat.add(&p_hat.transpose())?.is_zero() {
            let mut pi = Multivector::zero(n, 2);
            for i in 0..n {
                for j in (i + 1)..n {
                    let c = p_hat.get(i, j).clone();
                    if !c.is_zero() {
                        pi = pi.add(&Multivector::basis(n, &[i, j])?.scale(&c))?;
                    }
                }
            }
            let mut frame = PointFrame::new(ad_g, pi)?;
            frame.coad = coad;
            Ok(frame)
        } else {
            Err(Error::InvalidFrame(
                "mixed block is not induced by a bivector".into(),
            ))
        }
    }
}

pub fn is_bracket_automorphism(m: &Matrix, alg: &LieAlgebra) -> Result<bool> {
    let n = alg.dim();
    if m.rows() != n || m.cols() != n || m.rank() != n {
        return Ok(false);
    }
    for i in 0..n {
        for j in (i + 1)..n {
            let lhs = m.mul_vec(alg.bracket_basis(i, j))?;
            let rhs = alg.bracket(
                &m.mul_vec(&alg.basis_vector(i))?,
                &m.mul_vec(&alg.basis_vector(j))?,
            )?;
            if lhs != rhs {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

pub fn preserves_pairing(m: &Matrix, dbl: &Double) -> Result<bool> {
    let mtm = m.transpose().mul(&dbl.pairing)?.mul(m)?;
    Ok(mtm == dbl.pairing)
}
