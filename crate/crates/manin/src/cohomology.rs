//! Relative Lie algebra cohomology with finite-dimensional coefficient
//! modules: the invariant cochain spaces `C^k = (∧^k(l/h)* ⊗ V)^H`, the
//! standard two-sum differential restricted to them, Betti numbers over Q,
//! cup products, and the pairing induced by a top-degree functional.
//!
//! Cochains of degree k live in `Hom(∧^k l, V)` with the flat coordinate
//! `subset_rank * dim V + module_index` over lexicographically ordered
//! k-subsets; the relative cochains are carved out as a joint kernel of
//! insertion operators (vanishing on h), Lie-derivative operators
//! (infinitesimal invariance), and the fixed-point conditions for the
//! supplied component generators of a possibly disconnected H.

use num::Zero;

use crate::error::{Error, Result};
use crate::exterior::{k_subsets, merge_sign, Multivector};
use crate::lie::{LieAlgebra, Subalgebra};
use crate::linalg::{Matrix, Subspace};
use crate::scalar::Rational;

/// A finite-dimensional (l, H)-module: matrices for the action of each basis
/// element of l, plus the action of finitely many generators of the
/// component group of H (each paired with its action on l).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteModule {
    pub dim: usize,
    /// `action[i]` is the matrix of basis element x_i of l on V.
    pub action: Vec<Matrix>,
    pub component_generators: Vec<ComponentGenerator>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentGenerator {
    pub on_algebra: Matrix,
    pub on_module: Matrix,
}

impl FiniteModule {
    pub fn trivial(dim_l: usize) -> Self {
        FiniteModule {
            dim: 1,
            action: (0..dim_l).map(|_| Matrix::zero(1, 1)).collect(),
            component_generators: Vec::new(),
        }
    }

    pub fn adjoint(l: &LieAlgebra) -> Self {
        FiniteModule {
            dim: l.dim(),
            action: (0..l.dim())
                .map(|i| l.ad_matrix(&l.basis_vector(i)).expect("basis vector"))
                .collect(),
            component_generators: Vec::new(),
        }
    }

    /// The one-dimensional module ∧^top l, on which x acts by tr(ad_x).
    pub fn top_exterior(l: &LieAlgebra) -> Self {
        FiniteModule::character(&l.adjoint_character())
    }

    /// One-dimensional module with prescribed weights on the l-basis; only a
    /// genuine character (vanishing on [l, l]) passes validation.
    pub fn character(values: &[Rational]) -> Self {
        FiniteModule {
            dim: 1,
            action: values
                .iter()
                .map(|v| {
                    let mut m = Matrix::zero(1, 1);
                    m.set(0, 0, v.clone());
                    m
                })
                .collect(),
            component_generators: Vec::new(),
        }
    }

    /// Tensor product of two modules over the same (l, H); generator lists
    /// must match pairwise on the algebra side.
    pub fn tensor(u: &FiniteModule, v: &FiniteModule) -> Result<FiniteModule> {
        if u.action.len() != v.action.len() {
            return Err(Error::DimensionMismatch(u.action.len(), v.action.len()));
        }
        if u.component_generators.len() != v.component_generators.len() {
            return Err(Error::ModuleIncompatible(
                "tensor factors carry different component groups".into(),
            ));
        }
        let dim = u.dim * v.dim;
        let mut action = Vec::with_capacity(u.action.len());
        for (au, av) in u.action.iter().zip(&v.action) {
            let mut m = Matrix::zero(dim, dim);
            for a in 0..u.dim {
                for b in 0..u.dim {
                    for c in 0..v.dim {
                        for d in 0..v.dim {
                            let mut entry = Rational::zero();
                            if c == d {
                                entry += au.get(a, b).clone();
                            }
                            if a == b {
                                entry += av.get(c, d).clone();
                            }
                            if !entry.is_zero() {
                                m.set(a * v.dim + c, b * v.dim + d, entry);
                            }
                        }
                    }
                }
            }
            action.push(m);
        }
        let mut component_generators = Vec::new();
        for (gu, gv) in u.component_generators.iter().zip(&v.component_generators) {
            if gu.on_algebra != gv.on_algebra {
                return Err(Error::ModuleIncompatible(
                    "tensor factors disagree on the generator action on l".into(),
                ));
            }
            let mut m = Matrix::zero(dim, dim);
            for a in 0..u.dim {
                for b in 0..u.dim {
                    for c in 0..v.dim {
                        for d in 0..v.dim {
                            let entry = gu.on_module.get(a, b) * gv.on_module.get(c, d);
                            if !entry.is_zero() {
                                m.set(a * v.dim + c, b * v.dim + d, entry);
                            }
                        }
                    }
                }
            }
            component_generators.push(ComponentGenerator {
                on_algebra: gu.on_algebra.clone(),
                on_module: m,
            });
        }
        Ok(FiniteModule {
            dim,
            action,
            component_generators,
        })
    }
}

/// Violations found by [`validate_module`]; empty iff the data is a genuine
/// (l, H)-module.
#[derive(Debug, Clone, Default)]
pub struct ModuleReport {
    /// Pairs (i, j) with ρ([x_i, x_j]) ≠ ρ(x_i)ρ(x_j) − ρ(x_j)ρ(x_i).
    pub representation_violations: Vec<(usize, usize)>,
    /// Pairs (generator index, basis index) violating the compatibility
    /// `B ρ(x) B⁻¹ = ρ(A x)`.
    pub generator_violations: Vec<(usize, usize)>,
}

impl ModuleReport {
    pub fn is_valid(&self) -> bool {
        self.representation_violations.is_empty() && self.generator_violations.is_empty()
    }
}

pub fn validate_module(module: &FiniteModule, l: &LieAlgebra) -> Result<ModuleReport> {
    let m = l.dim();
    if module.action.len() != m {
        return Err(Error::DimensionMismatch(module.action.len(), m));
    }
    let mut report = ModuleReport::default();
    let rho = |x: &[Rational]| -> Result<Matrix> {
        let mut out = Matrix::zero(module.dim, module.dim);
        for (i, c) in x.iter().enumerate() {
            out = out.add(&module.action[i].scale(c))?;
        }
        Ok(out)
    };
    for i in 0..m {
        for j in (i + 1)..m {
            let lhs = rho(l.bracket_basis(i, j))?;
            let rhs = module.action[i]
                .mul(&module.action[j])?
                .sub(&module.action[j].mul(&module.action[i])?)?;
            if lhs != rhs {
                report.representation_violations.push((i, j));
            }
        }
    }
    for (gi, gen) in module.component_generators.iter().enumerate() {
        let b_inv = gen
            .on_module
            .inverse()
            .map_err(|_| Error::ModuleIncompatible("singular generator action on V".into()))?;
        for i in 0..m {
            let lhs = gen.on_module.mul(&module.action[i])?.mul(&b_inv)?;
            let rhs = rho(&gen.on_algebra.mul_vec(&l.basis_vector(i))?)?;
            if lhs != rhs {
                report.generator_violations.push((gi, i));
            }
        }
    }
    Ok(report)
}

fn flat_dim(m: usize, k: usize, dim_v: usize) -> usize {
    k_subsets(m, k).len() * dim_v
}

fn subset_index(subsets: &[Vec<usize>], key: &[usize]) -> usize {
    subsets
        .binary_search_by(|probe| probe.as_slice().cmp(key))
        .expect("key is a valid subset")
}

/// Sorts a tuple of distinct indices, returning the permutation sign;
/// None when two entries coincide.
fn sorted_with_sign(tuple: &[usize]) -> Option<(Vec<usize>, i32)> {
    let mut v = tuple.to_vec();
    let mut sign = 1;
    for i in 0..v.len() {
        for j in (i + 1)..v.len() {
            match v[j].cmp(&v[i]) {
                std::cmp::Ordering::Less => {
                    v.swap(i, j);
                    sign = -sign;
                }
                std::cmp::Ordering::Equal => return None,
                std::cmp::Ordering::Greater => {}
            }
        }
    }
    Some((v, sign))
}

/// The Chevalley–Eilenberg differential on the full space
/// `Hom(∧^k l, V) → Hom(∧^{k+1} l, V)`:
/// `(dc)(a_1 .. a_{k+1})` is the alternating sum of `ρ(a_j) c(.. â_j ..)`
/// over deleted slots plus the alternating sum of
/// `c(bracket(a_i, a_j), .. â_i .. â_j ..)` over deleted pairs.
pub fn ce_differential(l: &LieAlgebra, module: &FiniteModule, k: usize) -> Result<Matrix> {
    let m = l.dim();
    let dv = module.dim;
    let src = k_subsets(m, k);
    let dst = k_subsets(m, k + 1);
    let mut d = Matrix::zero(dst.len() * dv, src.len() * dv);
    for (ki, key) in dst.iter().enumerate() {
        for j in 0..key.len() {
            let rest: Vec<usize> = key
                .iter()
                .enumerate()
                .filter(|(p, _)| *p != j)
                .map(|(_, &x)| x)
                .collect();
            let rest_idx = subset_index(&src, &rest);
            let sign = if j % 2 == 0 { 1 } else { -1 };
            let rho = &module.action[key[j]];
            for w in 0..dv {
                for v in 0..dv {
                    let c = rho.get(w, v) * Rational::from_integer(sign.into());
                    if !c.is_zero() {
                        let cur = d.get(ki * dv + w, rest_idx * dv + v) + c;
                        d.set(ki * dv + w, rest_idx * dv + v, cur);
                    }
                }
            }
        }
        for i in 0..key.len() {
            for j in (i + 1)..key.len() {
                let rest: Vec<usize> = key
                    .iter()
                    .enumerate()
                    .filter(|(p, _)| *p != i && *p != j)
                    .map(|(_, &x)| x)
                    .collect();
                let pair_sign = if (i + j) % 2 == 0 { 1 } else { -1 }; // (−1)^{(i+1)+(j+1)}
                for (t, c) in l.bracket_basis(key[i], key[j]).iter().enumerate() {
                    if c.is_zero() || rest.contains(&t) {
                        continue;
                    }
                    let (_, msign) = merge_sign(&[t], &rest).expect("t not in rest");
                    let merged = merge_sign(&[t], &rest).expect("t not in rest").0;
                    let idx = subset_index(&src, &merged);
                    let total = c * Rational::from_integer((pair_sign * msign).into());
                    for w in 0..dv {
                        let cur = d.get(ki * dv + w, idx * dv + w) + &total;
                        d.set(ki * dv + w, idx * dv + w, cur);
                    }
                }
            }
        }
    }
    Ok(d)
}

/// Lie derivative of degree-k cochains along x ∈ l:
/// `(x·c)(a_1..a_k) = ρ(x) c(a_1..a_k) − Σ_i c(a_1,..,[x,a_i],..,a_k)`.
fn lie_derivative(
    l: &LieAlgebra,
    module: &FiniteModule,
    x: &[Rational],
    k: usize,
) -> Result<Matrix> {
    let m = l.dim();
    let dv = module.dim;
    let subsets = k_subsets(m, k);
    let mut out = Matrix::zero(subsets.len() * dv, subsets.len() * dv);
    let mut rho = Matrix::zero(dv, dv);
    for (i, c) in x.iter().enumerate() {
        rho = rho.add(&module.action[i].scale(c))?;
    }
    for (ki, key) in subsets.iter().enumerate() {
        for w in 0..dv {
            for v in 0..dv {
                let c = rho.get(w, v);
                if !c.is_zero() {
                    let cur = out.get(ki * dv + w, ki * dv + v) + c;
                    out.set(ki * dv + w, ki * dv + v, cur);
                }
            }
        }
        for j in 0..key.len() {
            let bracket = l.bracket(x, &l.basis_vector(key[j]))?;
            for (t, c) in bracket.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let mut tuple = key.clone();
                tuple[j] = t;
                let Some((sorted, sign)) = sorted_with_sign(&tuple) else {
                    continue;
                };
                let idx = subset_index(&subsets, &sorted);
                let total = -c * Rational::from_integer(sign.into());
                for w in 0..dv {
                    let cur = out.get(ki * dv + w, idx * dv + w) + &total;
                    out.set(ki * dv + w, idx * dv + w, cur);
                }
            }
        }
    }
    Ok(out)
}

/// Insertion of u ∈ l into the first slot: rows over degree k−1 subsets.
fn insertion(l_dim: usize, dim_v: usize, u: &[Rational], k: usize) -> Matrix {
    let src = k_subsets(l_dim, k);
    let dst = k_subsets(l_dim, k - 1);
    let mut out = Matrix::zero(dst.len() * dim_v, src.len() * dim_v);
    for (ji, jkey) in dst.iter().enumerate() {
        for (i, c) in u.iter().enumerate() {
            if c.is_zero() || jkey.contains(&i) {
                continue;
            }
            let (merged, sign) = merge_sign(&[i], jkey).expect("disjoint");
            let idx = subset_index(&src, &merged);
            for w in 0..dim_v {
                let cur = out.get(ji * dim_v + w, idx * dim_v + w)
                    + c * Rational::from_integer(sign.into());
                out.set(ji * dim_v + w, idx * dim_v + w, cur);
            }
        }
    }
    out
}

/// Action of a component generator on degree-k cochains:
/// `(g·c)(a_1..a_k) = B · c(A⁻¹ a_1, .., A⁻¹ a_k)`.
fn generator_action(
    l_dim: usize,
    gen: &ComponentGenerator,
    dim_v: usize,
    k: usize,
) -> Result<Matrix> {
    let subsets = k_subsets(l_dim, k);
    let a_inv = gen
        .on_algebra
        .inverse()
        .map_err(|_| Error::ModuleIncompatible("singular generator action on l".into()))?;
    let mut out = Matrix::zero(subsets.len() * dim_v, subsets.len() * dim_v);
    for (ki, key) in subsets.iter().enumerate() {
        let image = Multivector::apply_linear(&a_inv, &Multivector::basis(l_dim, key)?)?;
        for (ikey, coef) in image.terms() {
            let idx = subset_index(&subsets, ikey);
            for w in 0..dim_v {
                for v in 0..dim_v {
                    let c = coef * gen.on_module.get(w, v);
                    if !c.is_zero() {
                        let cur = out.get(ki * dim_v + w, idx * dim_v + v) + c;
                        out.set(ki * dim_v + w, idx * dim_v + v, cur);
                    }
                }
            }
        }
    }
    Ok(out)
}

/// The relative cochain complex: canonical bases of the invariant cochain
/// spaces per degree, and the restricted differentials between them.
#[derive(Debug, Clone)]
pub struct RelativeComplex {
    pub algebra: LieAlgebra,
    pub h: Subspace,
    pub module: FiniteModule,
    /// dim(l/h); cochains vanish above this degree.
    pub top_degree: usize,
    /// `bases[k]`: canonical basis of C^k inside Hom(∧^k l, V) flat coords.
    pub bases: Vec<Subspace>,
    /// `differentials[k]`: matrix of d_k from C^k to C^{k+1} coordinates.
    pub differentials: Vec<Matrix>,
}

/// Builds the complex. Errors when the differential fails to preserve the
/// invariant subspaces or when d² ≠ 0, both of which signal invalid
/// (l, H)-module data.
pub fn build_relative_complex(
    l: &LieAlgebra,
    h: &Subspace,
    module: &FiniteModule,
) -> Result<RelativeComplex> {
    let m = l.dim();
    let dv = module.dim;
    Subalgebra::new(l, h.clone())?;
    for gen in &module.component_generators {
        for row in h.basis_rows() {
            if !h.contains(&gen.on_algebra.mul_vec(&row)?) {
                return Err(Error::ModuleIncompatible(
                    "a component generator does not preserve h".into(),
                ));
            }
        }
    }
    let n = m - h.dim();
    let mut bases = Vec::with_capacity(n + 1);
    for k in 0..=n {
        let full = flat_dim(m, k, dv);
        let mut constraints = Matrix::empty(full);
        for hrow in h.basis_rows() {
            if k >= 1 {
                constraints = constraints.vstack(&insertion(m, dv, &hrow, k))?;
            }
            constraints = constraints.vstack(&lie_derivative(l, module, &hrow, k)?)?;
        }
        for gen in &module.component_generators {
            let g = generator_action(m, gen, dv, k)?;
            constraints = constraints.vstack(&g.sub(&Matrix::identity(full))?)?;
        }
        let basis = if constraints.rows() == 0 {
            Subspace::full(full)
        } else {
            Subspace::from_matrix(full, &constraints.kernel())
        };
        bases.push(basis);
    }
    let mut differentials = Vec::with_capacity(n + 1);
    for k in 0..=n {
        let dim_k = bases[k].dim();
        let d_full = ce_differential(l, module, k)?;
        if k == n {
            // the target ∧^{n+1}(l/h)* ⊗ V is zero: the image of every
            // relative cochain under d must vanish identically
            for row in bases[k].basis_rows() {
                if !crate::scalar::is_zero_vec(&d_full.mul_vec(&row)?) {
                    return Err(Error::ModuleIncompatible(
                        "differential leaves the relative subcomplex at top degree".into(),
                    ));
                }
            }
            differentials.push(Matrix::zero(0, dim_k));
            continue;
        }
        let target = bases[k + 1].basis().transpose();
        let mut d = Matrix::zero(bases[k + 1].dim(), dim_k);
        for (col, row) in bases[k].basis_rows().iter().enumerate() {
            let image = d_full.mul_vec(row)?;
            let coords = target.solve(&image).map_err(|_| {
                Error::ModuleIncompatible("differential leaves the relative subcomplex".into())
            })?;
            for (r, c) in coords.into_iter().enumerate() {
                d.set(r, col, c);
            }
        }
        differentials.push(d);
    }
    for k in 0..n {
        let dd = differentials[k + 1].mul(&differentials[k])?;
        if !dd.is_zero() {
            return Err(Error::ModuleIncompatible(
                "d squared is nonzero: the module action is not a representation".into(),
            ));
        }
    }
    Ok(RelativeComplex {
        algebra: l.clone(),
        h: h.clone(),
        module: module.clone(),
        top_degree: n,
        bases,
        differentials,
    })
}

impl RelativeComplex {
    pub fn cochain_dims(&self) -> Vec<usize> {
        self.bases.iter().map(Subspace::dim).collect()
    }

    /// Betti numbers per degree: dim ker d_k − rank d_{k−1}.
    pub fn cohomology_dims(&self) -> Vec<usize> {
        (0..=self.top_degree)
            .map(|k| {
                let dim_k = self.bases[k].dim();
                let rank_k = self.differentials[k].rank();
                let rank_prev = if k == 0 {
                    0
                } else {
                    self.differentials[k - 1].rank()
                };
                dim_k - rank_k - rank_prev
            })
            .collect()
    }

    /// Coordinates of a full cochain in the canonical basis of C^k.
    pub fn coords(&self, k: usize, full: &[Rational]) -> Result<Vec<Rational>> {
        self.bases[k]
            .basis()
            .transpose()
            .solve(full)
            .map_err(|_| Error::NotInSubspace)
    }

    /// Representatives of H^k: kernel elements of d_k extending a basis of
    /// the image of d_{k−1}, in full coordinates. Deterministic.
    pub fn representatives(&self, k: usize) -> Result<Vec<Vec<Rational>>> {
        let dim_k = self.bases[k].dim();
        if dim_k == 0 {
            return Ok(Vec::new());
        }
        let kernel = self.differentials[k].kernel();
        let mut span = if k == 0 {
            Subspace::zero(dim_k)
        } else {
            let d_prev = &self.differentials[k - 1];
            let rows: Vec<Vec<Rational>> = (0..d_prev.cols())
                .map(|j| {
                    let mut e = vec![Rational::zero(); d_prev.cols()];
                    e[j] = Rational::from_integer(1.into());
                    d_prev.mul_vec(&e).expect("shape")
                })
                .collect();
            Subspace::from_rows(dim_k, rows)
        };
        let mut reps = Vec::new();
        for row in kernel.row_vecs() {
            if !span.contains(&row) {
                span = span.sum(&Subspace::from_rows(dim_k, vec![row.clone()]))?;
                // back to full coordinates
                let mut full = vec![Rational::zero(); self.bases[k].ambient()];
                for (i, c) in row.iter().enumerate() {
                    let basis_row = self.bases[k].basis().row(i);
                    for (j, b) in basis_row.iter().enumerate() {
                        full[j] = &full[j] + c * b;
                    }
                }
                reps.push(full);
            }
        }
        Ok(reps)
    }
}

/// Cup product on full coordinates:
/// `(c1 ⌣ c2)(a_1..a_{j+k}) = Σ_{shuffles} sign · c1(a_I) ⊗ c2(a_J)`,
/// valued in U ⊗ V with the flat index u · dim V + v.
pub fn cup_product(
    l_dim: usize,
    dim_u: usize,
    j: usize,
    c1: &[Rational],
    dim_v: usize,
    k: usize,
    c2: &[Rational],
) -> Result<Vec<Rational>> {
    let src1 = k_subsets(l_dim, j);
    let src2 = k_subsets(l_dim, k);
    if c1.len() != src1.len() * dim_u {
        return Err(Error::DimensionMismatch(c1.len(), src1.len() * dim_u));
    }
    if c2.len() != src2.len() * dim_v {
        return Err(Error::DimensionMismatch(c2.len(), src2.len() * dim_v));
    }
    let dst = k_subsets(l_dim, j + k);
    let mut out = vec![Rational::zero(); dst.len() * dim_u * dim_v];
    for (i1, key1) in src1.iter().enumerate() {
        for (i2, key2) in src2.iter().enumerate() {
            let Some((merged, sign)) = merge_sign(key1, key2) else {
                continue;
            };
            let idx = subset_index(&dst, &merged);
            let s = Rational::from_integer(sign.into());
            for u in 0..dim_u {
                let a = &c1[i1 * dim_u + u];
                if a.is_zero() {
                    continue;
                }
                for v in 0..dim_v {
                    let b = &c2[i2 * dim_v + v];
                    if b.is_zero() {
                        continue;
                    }
                    let slot = idx * dim_u * dim_v + u * dim_v + v;
                    out[slot] = &out[slot] + &(a * b * &s);
                }
            }
        }
    }
    Ok(out)
}

/// The pairing `(c1, c2)_ν = ν(c1 ⌣ c2)` for a functional ν on the top
/// cochain space of the tensor complex, with ν given by its values on the
/// canonical basis of `C^n_{l,H;U⊗V}`.
pub fn nu_pairing(
    tensor_complex: &RelativeComplex,
    nu: &[Rational],
    dim_u: usize,
    j: usize,
    c1: &[Rational],
    dim_v: usize,
    c2: &[Rational],
) -> Result<Rational> {
    let n = tensor_complex.top_degree;
    if j > n {
        return Err(Error::DegreeOrder(j, n));
    }
    let k = n - j;
    let cup = cup_product(tensor_complex.algebra.dim(), dim_u, j, c1, dim_v, k, c2)?;
    let coords = tensor_complex.coords(n, &cup)?;
    if nu.len() != coords.len() {
        return Err(Error::DimensionMismatch(nu.len(), coords.len()));
    }
    Ok(nu
        .iter()
        .zip(&coords)
        .map(|(a, b)| a * b)
        .fold(Rational::zero(), |acc, x| acc + x))
}

/// The condition for ν to descend to cohomology: ν kills the image of
/// d on the top-degree cochains.
pub fn check_f_zero(tensor_complex: &RelativeComplex, nu: &[Rational]) -> Result<bool> {
    let n = tensor_complex.top_degree;
    if n == 0 {
        return Ok(true);
    }
    let d = &tensor_complex.differentials[n - 1];
    if nu.len() != d.rows() {
        return Err(Error::DimensionMismatch(nu.len(), d.rows()));
    }
    for col in 0..d.cols() {
        let mut sum = Rational::zero();
        for row in 0..d.rows() {
            sum += &nu[row] * d.get(row, col);
        }
        if !sum.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Matrix of the induced pairing H^k(U) × H^{n−k}(V) → Q on the
/// deterministic representative bases; requires the F-zero condition.
pub fn descend_pairing(
    complex_u: &RelativeComplex,
    complex_v: &RelativeComplex,
    tensor_complex: &RelativeComplex,
    nu: &[Rational],
    k: usize,
) -> Result<Matrix> {
    if !check_f_zero(tensor_complex, nu)? {
        return Err(Error::Precondition(
            "nu does not kill the top coboundaries".into(),
        ));
    }
    let n = tensor_complex.top_degree;
    if k > n {
        return Err(Error::DegreeOrder(k, n));
    }
    let reps_u = complex_u.representatives(k)?;
    let reps_v = complex_v.representatives(n - k)?;
    let mut out = Matrix::zero(reps_u.len(), reps_v.len());
    for (a, cu) in reps_u.iter().enumerate() {
        for (b, cv) in reps_v.iter().enumerate() {
            let value = nu_pairing(
                tensor_complex,
                nu,
                complex_u.module.dim,
                k,
                cu,
                complex_v.module.dim,
                cv,
            )?;
            out.set(a, b, value);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::scalar::{from_int, one, zero};
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn binomial(n: usize, k: usize) -> usize {
        k_subsets(n, k).len()
    }

    #[test]
    fn validate_module_examples() {
        let l = fixtures::sl2_delta0().bialgebra.algebra;
        assert!(validate_module(&FiniteModule::trivial(3), &l)
            .unwrap()
            .is_valid());
        assert!(validate_module(&FiniteModule::adjoint(&l), &l)
            .unwrap()
            .is_valid());
        // random matrices are generically not a representation
        let mut rng = StdRng::seed_from_u64(60);
        let random = FiniteModule {
            dim: 2,
            action: (0..3)
                .map(|_| {
                    Matrix::from_rows(
                        (0..2)
                            .map(|_| (0..2).map(|_| from_int(rng.gen_range(1..5))).collect())
                            .collect(),
                    )
                })
                .collect(),
            component_generators: Vec::new(),
        };
        let report = validate_module(&random, &l).unwrap();
        assert!(!report.is_valid());
        assert!(!report.representation_violations.is_empty());
    }

    #[test]
    fn abelian_complex_has_binomial_betti_numbers() {
        for n in 1..=4 {
            let l = fixtures::abelian(n);
            let complex =
                build_relative_complex(&l, &Subspace::zero(n), &FiniteModule::trivial(n)).unwrap();
            let betti = complex.cohomology_dims();
            let expect: Vec<usize> = (0..=n).map(|k| binomial(n, k)).collect();
            assert_eq!(betti, expect);
            for d in &complex.differentials {
                assert!(d.is_zero() || d.rows() == 0);
            }
        }
    }

    /// Independent absolute Chevalley–Eilenberg Betti computation: dense
    /// matrices of d on Hom(∧^k l, V) built from the defining formula by
    /// evaluating on basis tuples, with ranks over Q.
    fn absolute_betti_oracle(l: &LieAlgebra, module: &FiniteModule) -> Vec<usize> {
        let m = l.dim();
        let dv = module.dim;
        let mut ranks = Vec::new();
        let mut dims = Vec::new();
        for k in 0..=m {
            let src = k_subsets(m, k);
            dims.push(src.len() * dv);
            let dst = k_subsets(m, k + 1);
            let mut rows = Vec::new();
            for key in &dst {
                for w in 0..dv {
                    let mut row = vec![zero(); src.len() * dv];
                    // first sum
                    for (j, &a) in key.iter().enumerate() {
                        let rest: Vec<usize> = key.iter().copied().filter(|&x| x != a).collect();
                        let ridx = src.iter().position(|s| s == &rest).expect("subset");
                        let sgn = if j % 2 == 0 { 1 } else { -1 };
                        for v in 0..dv {
                            row[ridx * dv + v] =
                                &row[ridx * dv + v] + module.action[a].get(w, v) * from_int(sgn);
                        }
                    }
                    // second sum
                    for i in 0..key.len() {
                        for j in (i + 1)..key.len() {
                            let rest: Vec<usize> = key
                                .iter()
                                .enumerate()
                                .filter(|(p, _)| *p != i && *p != j)
                                .map(|(_, &x)| x)
                                .collect();
                            let sgn = if (i + j) % 2 == 0 { 1 } else { -1 };
                            for (t, c) in l.bracket_basis(key[i], key[j]).iter().enumerate() {
                                if c.is_zero() || rest.contains(&t) {
                                    continue;
                                }
                                let (merged, msign) = merge_sign(&[t], &rest).unwrap();
                                let ridx = src.iter().position(|s| s == &merged).unwrap();
                                row[ridx * dv + w] =
                                    &row[ridx * dv + w] + c * from_int((sgn * msign) as i64);
                            }
                        }
                    }
                    rows.push(row);
                }
            }
            if rows.is_empty() {
                ranks.push(0);
            } else {
                ranks.push(Matrix::from_rows(rows).rank());
            }
        }
        (0..=m)
            .map(|k| dims[k] - ranks[k] - if k == 0 { 0 } else { ranks[k - 1] })
            .collect()
    }

    #[test]
    fn sl2_trivial_coefficients_betti() {
        let l = fixtures::sl2_delta0().bialgebra.algebra;
        let complex =
            build_relative_complex(&l, &Subspace::zero(3), &FiniteModule::trivial(3)).unwrap();
        assert_eq!(complex.cohomology_dims(), vec![1, 0, 0, 1]);
        assert_eq!(
            absolute_betti_oracle(&l, &FiniteModule::trivial(3)),
            vec![1, 0, 0, 1]
        );
    }

    #[test]
    fn absolute_case_matches_oracle() {
        let na2 = fixtures::nonabelian2().bialgebra.algebra;
        let heis = fixtures::heis3_delta0().bialgebra.algebra;
        let sl2 = fixtures::sl2_delta0().bialgebra.algebra;
        let b4 = fixtures::book4().bialgebra.algebra;
        let cases: Vec<(LieAlgebra, FiniteModule)> = vec![
            (na2.clone(), FiniteModule::trivial(2)),
            (na2.clone(), FiniteModule::adjoint(&na2)),
            (heis.clone(), FiniteModule::trivial(3)),
            (sl2.clone(), FiniteModule::adjoint(&sl2)),
            (b4.clone(), FiniteModule::top_exterior(&b4)),
        ];
        for (l, module) in cases {
            let complex = build_relative_complex(&l, &Subspace::zero(l.dim()), &module).unwrap();
            assert_eq!(
                complex.cohomology_dims(),
                absolute_betti_oracle(&l, &module),
                "algebra {:?}",
                l.basis_names()
            );
        }
    }

    #[test]
    fn relative_complex_of_the_two_dim_fixture() {
        // l = span{x2, ε1} inside the double of the 2-dim fixture, h = the
        // image of span{x2}: abelian l, one-dimensional quotient, all
        // differentials vanish: Betti (1, 1)
        let f = fixtures::nonabelian2();
        let s = crate::drinfeld::HomogeneousSpace::new(
            f.bialgebra.clone(),
            f.h_space(),
            f.lambda.clone(),
        )
        .unwrap();
        let l_alg = s.double.algebra.restrict(&s.l).unwrap();
        // h inside l: coordinates of the embedded h-basis in the l-basis
        let coords = s.l.basis().transpose();
        let h_rows: Vec<Vec<Rational>> =
            s.h.basis_rows()
                .iter()
                .map(|r| coords.solve(&s.double.embed_g(r)).unwrap())
                .collect();
        let h_in_l = Subspace::from_rows(l_alg.dim(), h_rows);
        let complex = build_relative_complex(&l_alg, &h_in_l, &FiniteModule::trivial(2)).unwrap();
        assert_eq!(complex.cochain_dims(), vec![1, 1]);
        assert_eq!(complex.cohomology_dims(), vec![1, 1]);
    }

    #[test]
    fn euler_characteristic_is_alternating_cochain_sum() {
        let l = fixtures::book4().bialgebra.algebra;
        let h = Subspace::from_rows(4, vec![vec![zero(), one(), zero(), zero()]]);
        let complex = build_relative_complex(&l, &h, &FiniteModule::trivial(4)).unwrap();
        let chi_c: i64 = complex
            .cochain_dims()
            .iter()
            .enumerate()
            .map(|(k, &d)| if k % 2 == 0 { d as i64 } else { -(d as i64) })
            .sum();
        let chi_h: i64 = complex
            .cohomology_dims()
            .iter()
            .enumerate()
            .map(|(k, &d)| if k % 2 == 0 { d as i64 } else { -(d as i64) })
            .sum();
        assert_eq!(chi_c, chi_h);
    }

    #[test]
    fn doubling_the_module_doubles_betti() {
        let l = fixtures::sl2_delta0().bialgebra.algebra;
        let adjoint = FiniteModule::adjoint(&l);
        // V ⊕ V as block-diagonal matrices
        let doubled = FiniteModule {
            dim: 6,
            action: adjoint
                .action
                .iter()
                .map(|m| {
                    let mut big = Matrix::zero(6, 6);
                    for i in 0..3 {
                        for j in 0..3 {
                            big.set(i, j, m.get(i, j).clone());
                            big.set(3 + i, 3 + j, m.get(i, j).clone());
                        }
                    }
                    big
                })
                .collect(),
            component_generators: Vec::new(),
        };
        let b1 = build_relative_complex(&l, &Subspace::zero(3), &adjoint)
            .unwrap()
            .cohomology_dims();
        let b2 = build_relative_complex(&l, &Subspace::zero(3), &doubled)
            .unwrap()
            .cohomology_dims();
        let expect: Vec<usize> = b1.iter().map(|d| 2 * d).collect();
        assert_eq!(b2, expect);
    }

    #[test]
    fn relative_betti_of_classic_quotients() {
        // the simple 3-dim algebra relative to its Cartan line: the weights
        // ±2 kill all degree-1 invariants, leaving (1, 0, 1) — the ranks of
        // the two-sphere
        let sl2 = fixtures::sl2_delta0().bialgebra.algebra;
        let cartan = Subspace::from_rows(3, vec![vec![one(), zero(), zero()]]);
        let complex = build_relative_complex(&sl2, &cartan, &FiniteModule::trivial(3)).unwrap();
        assert_eq!(complex.cochain_dims(), vec![1, 0, 1]);
        assert_eq!(complex.cohomology_dims(), vec![1, 0, 1]);

        // the Heisenberg algebra relative to its center: the quotient is
        // abelian of rank two and the only curvature term lands in the
        // center, so the complex is that of the two-torus: (1, 2, 1)
        let heis = fixtures::heis3_delta0().bialgebra.algebra;
        let center = Subspace::from_rows(3, vec![vec![zero(), zero(), one()]]);
        let complex = build_relative_complex(&heis, &center, &FiniteModule::trivial(3)).unwrap();
        assert_eq!(complex.cohomology_dims(), vec![1, 2, 1]);
    }

    #[test]
    fn component_generator_cuts_invariants() {
        // abelian plane, trivial module, H with two components acting by
        // the swap of coordinates: C^1 drops to the symmetric line and the
        // top form dies (determinant −1)
        let l = fixtures::abelian(2);
        let swap = Matrix::from_rows(vec![vec![zero(), one()], vec![one(), zero()]]);
        let module = FiniteModule {
            dim: 1,
            action: vec![Matrix::zero(1, 1), Matrix::zero(1, 1)],
            component_generators: vec![ComponentGenerator {
                on_algebra: swap,
                on_module: Matrix::identity(1),
            }],
        };
        assert!(validate_module(&module, &l).unwrap().is_valid());
        let complex = build_relative_complex(&l, &Subspace::zero(2), &module).unwrap();
        assert_eq!(complex.cochain_dims(), vec![1, 1, 0]);
    }

    #[test]
    fn generator_must_preserve_h() {
        let l = fixtures::abelian(2);
        let swap = Matrix::from_rows(vec![vec![zero(), one()], vec![one(), zero()]]);
        let module = FiniteModule {
            dim: 1,
            action: vec![Matrix::zero(1, 1), Matrix::zero(1, 1)],
            component_generators: vec![ComponentGenerator {
                on_algebra: swap,
                on_module: Matrix::identity(1),
            }],
        };
        let h = Subspace::from_rows(2, vec![vec![one(), zero()]]);
        assert!(matches!(
            build_relative_complex(&l, &h, &module),
            Err(Error::ModuleIncompatible(_))
        ));
    }

    #[test]
    fn invalid_module_is_rejected_at_build() {
        // a non-representation: ρ(H) = 0 but ρ(E), ρ(F) with [ρE, ρF] ≠ 0
        let l = fixtures::sl2_delta0().bialgebra.algebra;
        let mut e = Matrix::zero(2, 2);
        e.set(0, 1, one());
        let mut f = Matrix::zero(2, 2);
        f.set(1, 0, one());
        let module = FiniteModule {
            dim: 2,
            action: vec![Matrix::zero(2, 2), e, f],
            component_generators: Vec::new(),
        };
        assert!(!validate_module(&module, &l).unwrap().is_valid());
        assert!(matches!(
            build_relative_complex(&l, &Subspace::zero(3), &module),
            Err(Error::ModuleIncompatible(_))
        ));
    }

    #[test]
    fn cup_product_leibniz_rule() {
        // d(c1 ⌣ c2) = d c1 ⌣ c2 + (−1)^j c1 ⌣ d c2 on random full cochains
        let mut rng = StdRng::seed_from_u64(61);
        let l = fixtures::sl2_delta0().bialgebra.algebra;
        let u = FiniteModule::adjoint(&l);
        let v = FiniteModule::trivial(3);
        let uv = FiniteModule::tensor(&u, &v).unwrap();
        for (j, k) in [(0usize, 1usize), (1, 1), (1, 2), (2, 1)] {
            for _ in 0..5 {
                let c1: Vec<Rational> = (0..flat_dim(3, j, u.dim))
                    .map(|_| from_int(rng.gen_range(-3..4)))
                    .collect();
                let c2: Vec<Rational> = (0..flat_dim(3, k, v.dim))
                    .map(|_| from_int(rng.gen_range(-3..4)))
                    .collect();
                let cup = cup_product(3, u.dim, j, &c1, v.dim, k, &c2).unwrap();
                let lhs = ce_differential(&l, &uv, j + k)
                    .unwrap()
                    .mul_vec(&cup)
                    .unwrap();
                let dc1 = ce_differential(&l, &u, j).unwrap().mul_vec(&c1).unwrap();
                let dc2 = ce_differential(&l, &v, k).unwrap().mul_vec(&c2).unwrap();
                let t1 = cup_product(3, u.dim, j + 1, &dc1, v.dim, k, &c2).unwrap();
                let t2 = cup_product(3, u.dim, j, &c1, v.dim, k + 1, &dc2).unwrap();
                let sign = if j % 2 == 0 { one() } else { -one() };
                let rhs: Vec<Rational> = t1.iter().zip(&t2).map(|(a, b)| a + b * &sign).collect();
                assert_eq!(lhs, rhs, "degrees ({j},{k})");
            }
        }
    }

    #[test]
    fn cup_with_invariant_vector_is_relabeling() {
        // c2 a degree-0 vector of the trivial module: cup just scales c1
        let mut rng = StdRng::seed_from_u64(62);
        let c1: Vec<Rational> = (0..flat_dim(3, 2, 1))
            .map(|_| from_int(rng.gen_range(-3..4)))
            .collect();
        let c2 = vec![from_int(5)];
        let cup = cup_product(3, 1, 2, &c1, 1, 0, &c2).unwrap();
        let expect: Vec<Rational> = c1.iter().map(|c| c * from_int(5)).collect();
        assert_eq!(cup, expect);
    }

    #[test]
    fn cup_associativity() {
        let mut rng = StdRng::seed_from_u64(63);
        let dims = (2usize, 1usize, 2usize);
        for _ in 0..5 {
            let c1: Vec<Rational> = (0..flat_dim(4, 1, dims.0))
                .map(|_| from_int(rng.gen_range(-2..3)))
                .collect();
            let c2: Vec<Rational> = (0..flat_dim(4, 1, dims.1))
                .map(|_| from_int(rng.gen_range(-2..3)))
                .collect();
            let c3: Vec<Rational> = (0..flat_dim(4, 2, dims.2))
                .map(|_| from_int(rng.gen_range(-2..3)))
                .collect();
            let left = cup_product(
                4,
                dims.0 * dims.1,
                2,
                &cup_product(4, dims.0, 1, &c1, dims.1, 1, &c2).unwrap(),
                dims.2,
                2,
                &c3,
            )
            .unwrap();
            let right = cup_product(
                4,
                dims.0,
                1,
                &c1,
                dims.1 * dims.2,
                3,
                &cup_product(4, dims.1, 1, &c2, dims.2, 2, &c3).unwrap(),
            )
            .unwrap();
            assert_eq!(left, right);
        }
    }

    fn top_nu(complex: &RelativeComplex) -> Vec<Rational> {
        // evaluation against the canonical top basis: all-ones covector
        (0..complex.bases[complex.top_degree].dim())
            .map(|_| one())
            .collect()
    }

    #[test]
    fn nu_pairing_abelian_duality_is_full_rank() {
        let n = 3;
        let l = fixtures::abelian(n);
        let trivial = FiniteModule::trivial(n);
        let tensor = FiniteModule::tensor(&trivial, &trivial).unwrap();
        let cu = build_relative_complex(&l, &Subspace::zero(n), &trivial).unwrap();
        let ct = build_relative_complex(&l, &Subspace::zero(n), &tensor).unwrap();
        let nu = top_nu(&ct);
        assert!(check_f_zero(&ct, &nu).unwrap());
        for k in 0..=n {
            let p = descend_pairing(&cu, &cu, &ct, &nu, k).unwrap();
            assert_eq!(p.rows(), binomial(n, k));
            assert_eq!(p.rank(), p.rows(), "degree {k}");
        }
    }

    #[test]
    fn nu_zero_gives_zero_pairing() {
        let l = fixtures::abelian(2);
        let trivial = FiniteModule::trivial(2);
        let tensor = FiniteModule::tensor(&trivial, &trivial).unwrap();
        let ct = build_relative_complex(&l, &Subspace::zero(2), &tensor).unwrap();
        let nu = vec![zero(); ct.bases[2].dim()];
        let c1 = vec![one(), zero()];
        let c2 = vec![zero(), one()];
        assert_eq!(nu_pairing(&ct, &nu, 1, 1, &c1, 1, &c2).unwrap(), zero());
    }

    #[test]
    fn nu_pairing_skew_adjointness_and_representative_independence() {
        // the simple 3-dim fixture with trivial coefficients: n = 3, ν on
        // the one-dimensional top space
        let l = fixtures::sl2_delta0().bialgebra.algebra;
        let trivial = FiniteModule::trivial(3);
        let tensor = FiniteModule::tensor(&trivial, &trivial).unwrap();
        let cu = build_relative_complex(&l, &Subspace::zero(3), &trivial).unwrap();
        let ct = build_relative_complex(&l, &Subspace::zero(3), &tensor).unwrap();
        let nu = top_nu(&ct);
        assert!(check_f_zero(&ct, &nu).unwrap());
        let mut rng = StdRng::seed_from_u64(64);
        for k in 1..=3usize {
            for _ in 0..5 {
                // (d c1, c2)_ν + (−1)^{k−1} (c1, d c2)_ν = 0 on relative
                // cochains of degrees k−1 and 3−k
                let pick = |complex: &RelativeComplex, deg: usize, rng: &mut StdRng| {
                    let dim = complex.bases[deg].dim();
                    let mut full = vec![zero(); complex.bases[deg].ambient()];
                    for i in 0..dim {
                        let c = from_int(rng.gen_range(-3..4));
                        for (j, b) in complex.bases[deg].basis().row(i).iter().enumerate() {
                            full[j] = &full[j] + &c * b;
                        }
                    }
                    full
                };
                let c1 = pick(&cu, k - 1, &mut rng);
                let c2 = pick(&cu, 3 - k, &mut rng);
                let dc1 = ce_differential(&l, &trivial, k - 1)
                    .unwrap()
                    .mul_vec(&c1)
                    .unwrap();
                let dc2 = ce_differential(&l, &trivial, 3 - k)
                    .unwrap()
                    .mul_vec(&c2)
                    .unwrap();
                let t1 = nu_pairing(&ct, &nu, 1, k, &dc1, 1, &c2).unwrap();
                let t2 = nu_pairing(&ct, &nu, 1, k - 1, &c1, 1, &dc2).unwrap();
                let sign = if (k - 1) % 2 == 0 { one() } else { -one() };
                assert_eq!(t1 + sign * t2, zero(), "degree {k}");
            }
        }
        // representative independence: shift the degree-3 argument by a
        // coboundary d(b) and compare
        let reps = cu.representatives(0).unwrap();
        for rep in reps {
            let c2: Vec<Rational> = (0..flat_dim(3, 3, 1))
                .map(|_| from_int(rng.gen_range(-3..4)))
                .collect();
            let b: Vec<Rational> = {
                let dim = cu.bases[2].dim();
                let mut full = vec![zero(); cu.bases[2].ambient()];
                for i in 0..dim {
                    let c = from_int(rng.gen_range(-3..4));
                    for (j, bb) in cu.bases[2].basis().row(i).iter().enumerate() {
                        full[j] = &full[j] + &c * bb;
                    }
                }
                full
            };
            let db = ce_differential(&l, &trivial, 2)
                .unwrap()
                .mul_vec(&b)
                .unwrap();
            let shifted: Vec<Rational> = c2.iter().zip(&db).map(|(a, b)| a + b).collect();
            let p1 = nu_pairing(&ct, &nu, 1, 0, &rep, 1, &c2).unwrap();
            let p2 = nu_pairing(&ct, &nu, 1, 0, &rep, 1, &shifted).unwrap();
            assert_eq!(p1, p2);
        }
    }

    #[test]
    fn weight_characters_feed_character_modules() {
        // identity-point weights from the homogeneous-space data build a
        // valid one-dimensional module on unimodular fixtures
        for f in [fixtures::heis3_delta0(), fixtures::nonabelian2()] {
            let s = crate::drinfeld::HomogeneousSpace::new(
                f.bialgebra.clone(),
                f.h_space(),
                f.lambda.clone(),
            )
            .unwrap();
            let l_alg = s.double.algebra.restrict(&s.l).unwrap();
            for level in [0, 2] {
                let weights = crate::drinfeld::weight_character(&s, level).unwrap();
                let module = FiniteModule::character(&weights);
                assert!(
                    validate_module(&module, &l_alg).unwrap().is_valid(),
                    "fixture {} level {level}",
                    f.name
                );
            }
        }
    }
}
