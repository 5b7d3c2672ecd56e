//! Graded exterior algebra over a finite basis with exact coefficients.
//!
//! Conventions, fixed once for the whole crate:
//! * basis k-vectors are indexed by strictly increasing index tuples, ordered
//!   lexicographically; all signs come from sorting permutation parity;
//! * the pairing of `∧^k V*` with `∧^k V` is the determinant pairing, so dual
//!   basis k-subsets pair to Kronecker delta;
//! * the interior product `interior(a, b) = ι_a b` wedges the contracted slot
//!   on the left: `(ι_a b, y) = (b, a ∧ y)`. The same formula serves vectors
//!   contracted into forms and forms contracted into vectors.

use std::collections::BTreeMap;
use std::fmt;

use num::Zero;

use crate::error::{Error, Result};
use crate::lie::LieAlgebra;
use crate::linalg::{Matrix, QuotientMap, Subspace};
use crate::scalar::Rational;

/// Homogeneous element of `∧^k Q^n`, sparse over lexicographically ordered
/// k-subsets. Zero coefficients are never stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Multivector {
    dim: usize,
    degree: usize,
    coords: BTreeMap<Vec<usize>, Rational>,
}

/// All strictly increasing k-tuples in 0..n, in lexicographic order.
pub fn k_subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k > n {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(k);
    fn rec(n: usize, k: usize, start: usize, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if current.len() == k {
            out.push(current.clone());
            return;
        }
        for i in start..n {
            current.push(i);
            rec(n, k, i + 1, current, out);
            current.pop();
        }
    }
    rec(n, k, 0, &mut current, &mut out);
    out
}

/// Merges two disjoint sorted tuples; returns (merged, sign) with
/// sign = parity of the shuffle that sorts a++b. None if not disjoint.
pub(crate) fn merge_sign(a: &[usize], b: &[usize]) -> Option<(Vec<usize>, i32)> {
    let mut merged = Vec::with_capacity(a.len() + b.len());
    let mut inversions = 0usize;
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        if a[i] == b[j] {
            return None;
        }
        if a[i] < b[j] {
            merged.push(a[i]);
            i += 1;
        } else {
            // b[j] jumps over the remaining entries of a
            inversions += a.len() - i;
            merged.push(b[j]);
            j += 1;
        }
    }
    merged.extend_from_slice(&a[i..]);
    merged.extend_from_slice(&b[j..]);
    let sign = if inversions.is_multiple_of(2) { 1 } else { -1 };
    Some((merged, sign))
}

impl Multivector {
    pub fn zero(dim: usize, degree: usize) -> Self {
        Multivector {
            dim,
            degree,
            coords: BTreeMap::new(),
        }
    }

    pub fn scalar(dim: usize, value: Rational) -> Self {
        let mut m = Multivector::zero(dim, 0);
        m.insert(Vec::new(), value);
        m
    }

    /// Degree-1 element from dense coordinates.
    pub fn vector(coords: &[Rational]) -> Self {
        let mut m = Multivector::zero(coords.len(), 1);
        for (i, c) in coords.iter().enumerate() {
            m.insert(vec![i], c.clone());
        }
        m
    }

    /// Basis k-vector e_{indices} (indices must be strictly increasing).
    pub fn basis(dim: usize, indices: &[usize]) -> Result<Self> {
        if indices.windows(2).any(|w| w[0] >= w[1]) || indices.iter().any(|&i| i >= dim) {
            return Err(Error::Parse(format!("bad basis tuple {indices:?}")));
        }
        let mut m = Multivector::zero(dim, indices.len());
        m.insert(indices.to_vec(), Rational::from_integer(1.into()));
        Ok(m)
    }

    /// Dense coordinates in lexicographic k-subset order, then back.
    pub fn from_lex_coords(dim: usize, degree: usize, coords: &[Rational]) -> Result<Self> {
        let subsets = k_subsets(dim, degree);
        if coords.len() != subsets.len() {
            return Err(Error::DimensionMismatch(coords.len(), subsets.len()));
        }
        let mut m = Multivector::zero(dim, degree);
        for (key, c) in subsets.into_iter().zip(coords) {
            m.insert(key, c.clone());
        }
        Ok(m)
    }

    pub fn lex_coords(&self) -> Vec<Rational> {
        k_subsets(self.dim, self.degree)
            .into_iter()
            .map(|key| self.coeff(&key))
            .collect()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn coeff(&self, key: &[usize]) -> Rational {
        self.coords.get(key).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<usize>, &Rational)> {
        self.coords.iter()
    }

    fn insert(&mut self, key: Vec<usize>, value: Rational) {
        debug_assert_eq!(key.len(), self.degree);
        if value.is_zero() {
            return;
        }
        let entry = self.coords.entry(key);
        match entry {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(value);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get() + &value;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn add(&self, other: &Multivector) -> Result<Multivector> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch(self.dim, other.dim));
        }
        if self.degree != other.degree {
            return Err(Error::DegreeMismatch(self.degree, other.degree));
        }
        let mut out = self.clone();
        for (k, v) in &other.coords {
            out.insert(k.clone(), v.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Multivector) -> Result<Multivector> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Multivector {
        self.scale(&-Rational::from_integer(1.into()))
    }

    pub fn scale(&self, s: &Rational) -> Multivector {
        let mut out = Multivector::zero(self.dim, self.degree);
        if s.is_zero() {
            return out;
        }
        for (k, v) in &self.coords {
            out.insert(k.clone(), v * s);
        }
        out
    }

    /// Exterior product. Graded-commutative and bilinear.
    pub fn wedge(&self, other: &Multivector) -> Result<Multivector> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch(self.dim, other.dim));
        }
        let mut out = Multivector::zero(self.dim, self.degree + other.degree);
        for (ka, va) in &self.coords {
            for (kb, vb) in &other.coords {
                if let Some((key, sign)) = merge_sign(ka, kb) {
                    let c = va * vb * Rational::from_integer(sign.into());
                    out.insert(key, c);
                }
            }
        }
        Ok(out)
    }

    /// Full determinant pairing of two degree-k elements over dual bases
    /// aligned by index: `(form, arg) = Σ_I form_I arg_I`.
    pub fn eval(form: &Multivector, arg: &Multivector) -> Result<Rational> {
        if form.dim != arg.dim {
            return Err(Error::DimensionMismatch(form.dim, arg.dim));
        }
        if form.degree != arg.degree {
            return Err(Error::DegreeMismatch(form.degree, arg.degree));
        }
        let mut sum = Rational::zero();
        for (k, v) in &form.coords {
            if let Some(w) = arg.coords.get(k) {
                sum += v * w;
            }
        }
        Ok(sum)
    }

    /// Interior product `ι_a b`, defined by `(ι_a b, y) = (b, a ∧ y)` for all
    /// y of degree `deg b − deg a`. Symmetric in the roles of V and V*: use it
    /// for `ι_x ξ` (vector into form) and for `ι_ξ Λ` (form into multivector)
    /// alike; coordinates are over dual bases aligned by index.
    pub fn interior(a: &Multivector, b: &Multivector) -> Result<Multivector> {
        if a.dim != b.dim {
            return Err(Error::DimensionMismatch(a.dim, b.dim));
        }
        if a.degree > b.degree {
            return Err(Error::DegreeOrder(a.degree, b.degree));
        }
        let mut out = Multivector::zero(a.dim, b.degree - a.degree);
        for (kb, vb) in &b.coords {
            for (ka, va) in &a.coords {
                // ka must be a subset of kb; the complement is the output key
                if !ka.iter().all(|i| kb.binary_search(i).is_ok()) {
                    continue;
                }
                let rest: Vec<usize> = kb.iter().copied().filter(|i| !ka.contains(i)).collect();
                let (merged, sign) = merge_sign(ka, &rest).expect("disjoint by construction");
                debug_assert_eq!(&merged, kb);
                out.insert(rest, va * vb * Rational::from_integer(sign.into()));
            }
        }
        Ok(out)
    }

    /// Applies `∧^k m` to a degree-k element (m maps coordinates of the
    /// source space to the target space, acting on degree-1 by `m * v`).
    pub fn apply_linear(m: &Matrix, v: &Multivector) -> Result<Multivector> {
        if m.cols() != v.dim {
            return Err(Error::DimensionMismatch(m.cols(), v.dim));
        }
        let mut out = Multivector::zero(m.rows(), v.degree);
        for (key, c) in &v.coords {
            let mut term = Multivector::scalar(m.rows(), c.clone());
            for &i in key {
                let col: Vec<Rational> = (0..m.rows()).map(|r| m.get(r, i).clone()).collect();
                term = term.wedge(&Multivector::vector(&col))?;
            }
            out = out.add(&term)?;
        }
        Ok(out)
    }

    pub fn render(&self, names: &[String]) -> String {
        if self.coords.is_empty() {
            return "0".to_string();
        }
        let mut parts = Vec::new();
        for (key, c) in &self.coords {
            let basis = if key.is_empty() {
                "1".to_string()
            } else {
                key.iter()
                    .map(|&i| names.get(i).cloned().unwrap_or_else(|| format!("e{i}")))
                    .collect::<Vec<_>>()
                    .join("^")
            };
            parts.push(format!("({})*{}", crate::scalar::render(c), basis));
        }
        parts.join(" + ")
    }
}

impl fmt::Display for Multivector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render(&[]))
    }
}

/// Schouten bracket on `∧ g`: the Gerstenhaber extension of the Lie bracket,
/// `[x_1∧..∧x_p, y_1∧..∧y_q] = Σ_{i,j} (−1)^{i+j} [x_i,y_j] ∧ x_{∖i} ∧ y_{∖j}`,
/// so degree-1 inputs reduce to the Lie bracket and the graded Leibniz rule
/// `[a, b∧c] = [a,b]∧c + (−1)^{(p−1)q} b∧[a,c]` holds.
pub fn schouten(a: &Multivector, b: &Multivector, alg: &LieAlgebra) -> Result<Multivector> {
    if a.dim() != alg.dim() || b.dim() != alg.dim() {
        return Err(Error::DimensionMismatch(a.dim(), alg.dim()));
    }
    let (p, q) = (a.degree(), b.degree());
    if p == 0 || q == 0 {
        return Ok(Multivector::zero(alg.dim(), (p + q).saturating_sub(1)));
    }
    let mut out = Multivector::zero(alg.dim(), p + q - 1);
    for (ka, va) in a.terms() {
        for (kb, vb) in b.terms() {
            for (i, &r) in ka.iter().enumerate() {
                let rest_a: Vec<usize> = ka.iter().copied().filter(|&x| x != r).collect();
                for (j, &s) in kb.iter().enumerate() {
                    let rest_b: Vec<usize> = kb.iter().copied().filter(|&x| x != s).collect();
                    let sign = if (i + j) % 2 == 0 { 1 } else { -1 };
                    let bracket = Multivector::vector(alg.bracket_basis(r, s));
                    let mut term = bracket.wedge(&Multivector::basis(alg.dim(), &rest_a)?)?;
                    term = term.wedge(&Multivector::basis(alg.dim(), &rest_b)?)?;
                    let c = va * vb * Rational::from_integer(sign.into());
                    out = out.add(&term.scale(&c))?;
                }
            }
        }
    }
    Ok(out)
}

/// True iff `v` lies in `h ∧ g ∧ … ∧ g`, i.e. in the kernel of the induced
/// map `∧^k g → ∧^k (g/h)`.
pub fn member_of_wedge_ideal(v: &Multivector, h: &Subspace) -> Result<bool> {
    if v.dim() != h.ambient() {
        return Err(Error::DimensionMismatch(v.dim(), h.ambient()));
    }
    let q = QuotientMap::new(h);
    let image = Multivector::apply_linear(q.projection(), v)?;
    Ok(image.is_zero())
}
