//! JSON file schemas. All rationals travel as strings (`"p"` or `"p/q"`) so
//! no floating point ever appears in a file; unspecified brackets are zero;
//! parse → serialize → parse is the identity.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::double::{Bialgebra, PointFrame};
use crate::error::{Error, Result};
use crate::exterior::{k_subsets, Multivector};
use crate::fixtures::Fixture;
use crate::lie::LieAlgebra;
use crate::linalg::{Matrix, Subspace};
use crate::scalar::{self, Rational};

/// A Lie (bi)algebra with optional homogeneous-space data. Bracket keys are
/// zero-based `"i,j"` pairs; `cobracket` rows and `lambda` are coordinates
/// over the lexicographically ordered 2-subsets of the basis.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraFile {
    pub dim: usize,
    pub basis: Vec<String>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub brackets: BTreeMap<String, Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cobracket: Option<Vec<Vec<String>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub h: Option<SubspaceSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lambda: Option<Vec<String>>,
}

/// A subspace given either by basis indices or by explicit spanning vectors.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum SubspaceSpec {
    Indices(Vec<usize>),
    Vectors(Vec<Vec<String>>),
}

impl SubspaceSpec {
    pub fn to_subspace(&self, dim: usize) -> Result<Subspace> {
        match self {
            SubspaceSpec::Indices(indices) => {
                let mut rows = Vec::new();
                for &i in indices {
                    if i >= dim {
                        return Err(Error::Parse(format!("h index {i} out of range")));
                    }
                    let mut v = vec![Rational::from_integer(0.into()); dim];
                    v[i] = Rational::from_integer(1.into());
                    rows.push(v);
                }
                Ok(Subspace::from_rows(dim, rows))
            }
            SubspaceSpec::Vectors(vectors) => {
                let mut rows = Vec::new();
                for v in vectors {
                    if v.len() != dim {
                        return Err(Error::Parse(format!(
                            "h vector has length {}, expected {dim}",
                            v.len()
                        )));
                    }
                    rows.push(scalar::parse_vec(v)?);
                }
                Ok(Subspace::from_rows(dim, rows))
            }
        }
    }
}

impl AlgebraFile {
    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("schema serializes")
    }

    pub fn algebra(&self) -> Result<LieAlgebra> {
        if self.basis.len() != self.dim {
            return Err(Error::Parse(format!(
                "basis has {} names, dim is {}",
                self.basis.len(),
                self.dim
            )));
        }
        let mut pairs = Vec::new();
        for (key, coords) in &self.brackets {
            let (i, j) = parse_pair_key(key)?;
            if i >= self.dim || j >= self.dim {
                return Err(Error::Parse(format!("bracket key {key:?} out of range")));
            }
            if coords.len() != self.dim {
                return Err(Error::Parse(format!(
                    "bracket {key:?} has {} coordinates, expected {}",
                    coords.len(),
                    self.dim
                )));
            }
            pairs.push(((i, j), scalar::parse_vec(coords)?));
        }
        LieAlgebra::from_pairs(self.dim, self.basis.clone(), &pairs)
    }

    pub fn bialgebra(&self) -> Result<Bialgebra> {
        let algebra = self.algebra()?;
        let n = self.dim;
        let pairs = k_subsets(n, 2).len();
        let cobracket = match &self.cobracket {
            None => (0..n).map(|_| Multivector::zero(n, 2)).collect(),
            Some(rows) => {
                if rows.len() != n {
                    return Err(Error::Parse(format!(
                        "cobracket has {} rows, expected {n}",
                        rows.len()
                    )));
                }
                let mut out = Vec::with_capacity(n);
                for row in rows {
                    if row.len() != pairs {
                        return Err(Error::Parse(format!(
                            "cobracket row has {} coordinates, expected {pairs}",
                            row.len()
                        )));
                    }
                    out.push(Multivector::from_lex_coords(
                        n,
                        2,
                        &scalar::parse_vec(row)?,
                    )?);
                }
                out
            }
        };
        Bialgebra::new(algebra, cobracket)
    }

    pub fn h_subspace(&self) -> Result<Subspace> {
        match &self.h {
            None => Ok(Subspace::zero(self.dim)),
            Some(spec) => spec.to_subspace(self.dim),
        }
    }

    pub fn lambda_bivector(&self) -> Result<Multivector> {
        let pairs = k_subsets(self.dim, 2).len();
        match &self.lambda {
            None => Ok(Multivector::zero(self.dim, 2)),
            Some(coords) => {
                if coords.len() != pairs {
                    return Err(Error::Parse(format!(
                        "lambda has {} coordinates, expected {pairs}",
                        coords.len()
                    )));
                }
                Multivector::from_lex_coords(self.dim, 2, &scalar::parse_vec(coords)?)
            }
        }
    }

    pub fn from_bialgebra(
        bialg: &Bialgebra,
        h_indices: Option<&[usize]>,
        lambda: Option<&Multivector>,
    ) -> Self {
        let n = bialg.dim();
        let mut brackets = BTreeMap::new();
        for i in 0..n {
            for j in (i + 1)..n {
                let coords = bialg.algebra.bracket_basis(i, j);
                if !scalar::is_zero_vec(coords) {
                    brackets.insert(format!("{i},{j}"), scalar::render_vec(coords));
                }
            }
        }
        let has_cobracket = bialg.cobracket.iter().any(|c| !c.is_zero());
        let cobracket = has_cobracket.then(|| {
            bialg
                .cobracket
                .iter()
                .map(|c| scalar::render_vec(&c.lex_coords()))
                .collect()
        });
        AlgebraFile {
            dim: n,
            basis: bialg.algebra.basis_names().to_vec(),
            brackets,
            cobracket,
            h: h_indices.map(|idx| SubspaceSpec::Indices(idx.to_vec())),
            lambda: lambda
                .filter(|l| !l.is_zero())
                .map(|l| scalar::render_vec(&l.lex_coords())),
        }
    }

    pub fn from_fixture(fixture: &Fixture) -> Self {
        AlgebraFile::from_bialgebra(
            &fixture.bialgebra,
            (!fixture.h_indices.is_empty()).then_some(&fixture.h_indices),
            Some(&fixture.lambda),
        )
    }
}

fn parse_pair_key(key: &str) -> Result<(usize, usize)> {
    let bad = || Error::Parse(format!("bad bracket key {key:?}, expected \"i,j\""));
    let (a, b) = key.split_once(',').ok_or_else(bad)?;
    Ok((
        a.trim().parse().map_err(|_| bad())?,
        b.trim().parse().map_err(|_| bad())?,
    ))
}

pub fn parse_matrix(rows: &[Vec<String>]) -> Result<Matrix> {
    let parsed: Result<Vec<Vec<Rational>>> = rows.iter().map(|r| scalar::parse_vec(r)).collect();
    let parsed = parsed?;
    if let Some(first) = parsed.first() {
        if parsed.iter().any(|r| r.len() != first.len()) {
            return Err(Error::Parse("ragged matrix rows".into()));
        }
    }
    Ok(Matrix::from_rows(parsed))
}

pub fn render_matrix(m: &Matrix) -> Vec<Vec<String>> {
    m.row_vecs().iter().map(|r| scalar::render_vec(r)).collect()
}

/// A finite-dimensional coefficient module for the cohomology engine.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModuleFile {
    #[serde(rename = "dimV")]
    pub dim_v: usize,
    /// One dimV × dimV matrix per basis element of l.
    pub rho: Vec<Vec<Vec<String>>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub component_generators: Vec<GeneratorFile>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorFile {
    pub on_l: Vec<Vec<String>>,
    #[serde(rename = "on_V")]
    pub on_v: Vec<Vec<String>>,
}

impl ModuleFile {
    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("schema serializes")
    }

    pub fn module(&self) -> Result<crate::cohomology::FiniteModule> {
        let mut action = Vec::with_capacity(self.rho.len());
        for rows in &self.rho {
            let m = parse_matrix(rows)?;
            if m.rows() != self.dim_v || m.cols() != self.dim_v {
                return Err(Error::Parse(format!(
                    "rho matrix is {}x{}, expected {}x{}",
                    m.rows(),
                    m.cols(),
                    self.dim_v,
                    self.dim_v
                )));
            }
            action.push(m);
        }
        let mut component_generators = Vec::new();
        for gen in &self.component_generators {
            component_generators.push(crate::cohomology::ComponentGenerator {
                on_algebra: parse_matrix(&gen.on_l)?,
                on_module: parse_matrix(&gen.on_v)?,
            });
        }
        Ok(crate::cohomology::FiniteModule {
            dim: self.dim_v,
            action,
            component_generators,
        })
    }

    pub fn from_module(module: &crate::cohomology::FiniteModule) -> Self {
        ModuleFile {
            dim_v: module.dim,
            rho: module.action.iter().map(render_matrix).collect(),
            component_generators: module
                .component_generators
                .iter()
                .map(|g| GeneratorFile {
                    on_l: render_matrix(&g.on_algebra),
                    on_v: render_matrix(&g.on_module),
                })
                .collect(),
        }
    }
}

/// Pointwise group data for the point commands: Ad_g, the right-trivialized
/// bivector at g, and optional automorphisms of the double for the D/G
/// factor. The coadjoint block is derived as the inverse transpose.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FrameFile {
    pub ad_g: Vec<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pi_g: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ad_d: Option<Vec<Vec<String>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ad_gd: Option<Vec<Vec<String>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub xi: Option<Vec<String>>,
}

impl FrameFile {
    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("schema serializes")
    }

    pub fn frame(&self, dim: usize) -> Result<PointFrame> {
        let ad_g = parse_matrix(&self.ad_g)?;
        if ad_g.rows() != dim || ad_g.cols() != dim {
            return Err(Error::Parse(format!(
                "ad_g is {}x{}, expected {dim}x{dim}",
                ad_g.rows(),
                ad_g.cols()
            )));
        }
        let pairs = k_subsets(dim, 2).len();
        let pi_g = match &self.pi_g {
            None => Multivector::zero(dim, 2),
            Some(coords) => {
                if coords.len() != pairs {
                    return Err(Error::Parse(format!(
                        "pi_g has {} coordinates, expected {pairs}",
                        coords.len()
                    )));
                }
                Multivector::from_lex_coords(dim, 2, &scalar::parse_vec(coords)?)?
            }
        };
        let mut frame = PointFrame::new(ad_g, pi_g)?;
        if let Some(rows) = &self.ad_d {
            frame.ad_d = Some(parse_matrix(rows)?);
        }
        Ok(frame)
    }

    pub fn ad_gd_matrix(&self) -> Result<Option<Matrix>> {
        self.ad_gd.as_deref().map(parse_matrix).transpose()
    }

    pub fn xi_vector(&self) -> Result<Option<Vec<Rational>>> {
        self.xi.as_deref().map(scalar::parse_vec).transpose()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn fixture_files_roundtrip() {
        for f in fixtures::catalog() {
            let file = AlgebraFile::from_fixture(&f);
            let text = file.to_json();
            let parsed = AlgebraFile::parse(&text).unwrap();
            assert_eq!(parsed, file, "fixture {}", f.name);
            let bialg = parsed.bialgebra().unwrap();
            assert_eq!(bialg, f.bialgebra, "fixture {}", f.name);
            assert_eq!(parsed.h_subspace().unwrap(), f.h_space());
            assert_eq!(parsed.lambda_bivector().unwrap(), f.lambda);
        }
    }

    #[test]
    fn serialization_is_deterministic() {
        let a = AlgebraFile::from_fixture(&fixtures::sl2_r_ef()).to_json();
        let b = AlgebraFile::from_fixture(&fixtures::sl2_r_ef()).to_json();
        assert_eq!(a, b);
    }

    #[test]
    fn unspecified_brackets_are_zero_and_keys_are_validated() {
        let file = AlgebraFile::parse(
            r#"{"dim": 2, "basis": ["a", "b"], "brackets": {"0,1": ["0", "1"]}}"#,
        )
        .unwrap();
        let alg = file.algebra().unwrap();
        assert!(alg.validate().is_valid());
        assert_eq!(alg.bracket_basis(1, 0)[1], -crate::scalar::one());

        assert!(
            AlgebraFile::parse(r#"{"dim": 2, "basis": ["a","b"], "brackets": {"x": []}}"#)
                .unwrap()
                .algebra()
                .is_err()
        );
        assert!(AlgebraFile::parse("not json").is_err());
    }

    #[test]
    fn h_accepts_indices_and_vectors() {
        let by_index = AlgebraFile::parse(r#"{"dim": 2, "basis": ["a", "b"], "h": [1]}"#).unwrap();
        let by_vector =
            AlgebraFile::parse(r#"{"dim": 2, "basis": ["a", "b"], "h": [["0", "3"]]}"#).unwrap();
        assert_eq!(
            by_index.h_subspace().unwrap(),
            by_vector.h_subspace().unwrap()
        );
    }

    #[test]
    fn module_file_roundtrip() {
        let l = fixtures::sl2_delta0().bialgebra.algebra;
        let module = crate::cohomology::FiniteModule::adjoint(&l);
        let file = ModuleFile::from_module(&module);
        let parsed = ModuleFile::parse(&file.to_json()).unwrap();
        assert_eq!(parsed.module().unwrap(), module);
    }

    #[test]
    fn frame_file_parses_and_derives_coad() {
        let text = r#"{
            "ad_g": [["1", "0"], ["1", "1"]],
            "pi_g": ["1/2"]
        }"#;
        let file = FrameFile::parse(text).unwrap();
        let frame = file.frame(2).unwrap();
        let product = frame.ad_g.mul(&frame.coad.transpose()).unwrap();
        assert_eq!(product, Matrix::identity(2));
    }
}
