use std::fmt::Write as _;
use std::path::Path;

use serde::Serialize;

use manin::cohomology::{
    build_relative_complex, check_f_zero, descend_pairing, validate_module, FiniteModule,
};
use manin::drinfeld::{
    check_drinfeld, check_h0_closure, modular_element, verify_lambda_chi, HomogeneousSpace, Witness,
};
use manin::format::{render_matrix, AlgebraFile, FrameFile, ModuleFile, SubspaceSpec};
use manin::linalg::{Matrix, Subspace};
use manin::scalar;
use manin::twist::{
    check_eq_gg, check_xi_h, delta_g_prime, g_prime, phi_checked, phi_via_double, phi_via_schouten,
    phi_via_six_terms, point_pi_p,
};
use manin::{Error, Rational};

use crate::report::{verdict, CliError, Report};
use crate::Cli;

type CmdResult = Result<Report, CliError>;

/// Resolves an input argument: an existing file path, then `<name>.json`
/// under --fixtures, then the built-in catalog.
fn resolve_algebra(cli: &Cli, input: &str) -> Result<AlgebraFile, CliError> {
    let path = Path::new(input);
    if path.is_file() {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Parse(format!("cannot read {input}: {e}")))?;
        return Ok(AlgebraFile::parse(&text)?);
    }
    if let Some(dir) = &cli.fixtures {
        let candidate = dir.join(format!("{input}.json"));
        if candidate.is_file() {
            let text = std::fs::read_to_string(&candidate).map_err(|e| {
                CliError::Parse(format!("cannot read {}: {e}", candidate.display()))
            })?;
            return Ok(AlgebraFile::parse(&text)?);
        }
    }
    if let Some(fixture) = manin::fixtures::by_name(input) {
        return Ok(AlgebraFile::from_fixture(&fixture));
    }
    Err(CliError::Parse(format!("no such file or fixture: {input}")))
}

fn read_to_string(path: &str) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Parse(format!("cannot read {path}: {e}")))
}

fn data<T: Serialize>(value: &T) -> serde_json::Value {
    serde_json::to_value(value).expect("report data serializes")
}

fn render_vec(v: &[Rational]) -> Vec<String> {
    scalar::render_vec(v)
}

fn rows_of(space: &Subspace) -> Vec<Vec<String>> {
    space.basis_rows().iter().map(|r| render_vec(r)).collect()
}

#[derive(Serialize)]
struct WitnessData {
    left: usize,
    right: usize,
    bracket: Vec<String>,
}

impl WitnessData {
    fn from(w: &Witness) -> Self {
        WitnessData {
            left: w.left,
            right: w.right,
            bracket: render_vec(&w.bracket),
        }
    }
}

// ---------------------------------------------------------------- validate

#[derive(Serialize)]
struct ValidateData {
    algebra_valid: bool,
    antisymmetry_violations: Vec<(usize, usize, usize)>,
    jacobi_violations: Vec<(usize, usize, usize)>,
    bialgebra_valid: bool,
    bialgebra_witness: Option<[String; 3]>,
}

pub fn validate(cli: &Cli, input: &str) -> CmdResult {
    let file = resolve_algebra(cli, input)?;
    let algebra = file.algebra()?;
    let report = algebra.validate();
    let (bialgebra_valid, bialgebra_witness) = if report.is_valid() {
        match file.bialgebra()?.double() {
            Ok(_) => (true, None),
            Err(Error::NotLieBialgebra(a, b, c)) => (false, Some([a, b, c])),
            Err(other) => return Err(other.into()),
        }
    } else {
        (false, None)
    };
    let d = ValidateData {
        algebra_valid: report.is_valid(),
        antisymmetry_violations: report.antisymmetry.clone(),
        jacobi_violations: report.jacobi.clone(),
        bialgebra_valid,
        bialgebra_witness: bialgebra_witness.clone(),
    };
    let pass = d.algebra_valid && d.bialgebra_valid;
    let mut text = String::new();
    let _ = writeln!(text, "algebra axioms: {}", verdict(d.algebra_valid));
    for (i, j, k) in &report.antisymmetry {
        let _ = writeln!(text, "  antisymmetry violated at ({i}, {j}, {k})");
    }
    for (i, j, k) in &report.jacobi {
        let _ = writeln!(
            text,
            "  Jacobi violated at ({}, {}, {})",
            algebra.name(*i),
            algebra.name(*j),
            algebra.name(*k)
        );
    }
    let _ = writeln!(
        text,
        "bialgebra (double Jacobi): {}",
        verdict(bialgebra_valid)
    );
    if let Some([a, b, c]) = &bialgebra_witness {
        let _ = writeln!(text, "  violating triple: ({a}, {b}, {c})");
    }
    Ok(Report::new("validate", input, pass, data(&d), text))
}

// ------------------------------------------------------------------ double

#[derive(Serialize)]
struct BracketEntry {
    left: String,
    right: String,
    coords: Vec<String>,
}

#[derive(Serialize)]
struct DoubleData {
    dim: usize,
    basis: Vec<String>,
    brackets: Vec<BracketEntry>,
    pairing: Vec<Vec<String>>,
    pairing_ad_invariant: bool,
}

pub fn double(cli: &Cli, input: &str) -> CmdResult {
    let file = resolve_algebra(cli, input)?;
    let dbl = file.bialgebra()?.double()?;
    let dim = dbl.dim();
    let mut brackets = Vec::new();
    for i in 0..dim {
        for j in (i + 1)..dim {
            let coords = dbl.algebra.bracket_basis(i, j);
            if !scalar::is_zero_vec(coords) {
                brackets.push(BracketEntry {
                    left: dbl.algebra.name(i).to_string(),
                    right: dbl.algebra.name(j).to_string(),
                    coords: render_vec(coords),
                });
            }
        }
    }
    let d = DoubleData {
        dim,
        basis: dbl.algebra.basis_names().to_vec(),
        brackets,
        pairing: render_matrix(&dbl.pairing),
        pairing_ad_invariant: dbl.pairing_is_ad_invariant(),
    };
    let mut text = String::new();
    let _ = writeln!(text, "double dimension: {dim}");
    let _ = writeln!(text, "basis: {}", d.basis.join(", "));
    for e in &d.brackets {
        let terms: Vec<String> = e
            .coords
            .iter()
            .enumerate()
            .filter(|(_, c)| c.as_str() != "0")
            .map(|(k, c)| format!("({c})*{}", d.basis[k]))
            .collect();
        let _ = writeln!(text, "[{}, {}] = {}", e.left, e.right, terms.join(" + "));
    }
    let _ = writeln!(
        text,
        "pairing ad-invariant: {}",
        verdict(d.pairing_ad_invariant)
    );
    let pass = d.pairing_ad_invariant;
    Ok(Report::new("double", input, pass, data(&d), text))
}

// ---------------------------------------------------------------- drinfeld

#[derive(Serialize)]
struct DrinfeldData {
    h_dim: usize,
    l_basis: Vec<Vec<String>>,
    cond_a_infinitesimal: bool,
    cond_b: bool,
    lemma_condition_1: bool,
    lemma_condition_2: bool,
    witness_a: Option<WitnessData>,
    witness_b: Option<WitnessData>,
    h0_closed: bool,
    h0_witness: Option<WitnessData>,
    lambda_chi_residual: Option<Vec<String>>,
    modular_element: Option<Vec<String>>,
}

pub fn drinfeld(cli: &Cli, input: &str) -> CmdResult {
    let file = resolve_algebra(cli, input)?;
    let space = HomogeneousSpace::new(
        file.bialgebra()?,
        file.h_subspace()?,
        file.lambda_bivector()?,
    )?;
    let report = check_drinfeld(&space)?;
    if !report.conditions_agree() {
        return Err(CliError::Convention(
            "double-bracket verdicts disagree with the membership conditions".into(),
        ));
    }
    let closure = check_h0_closure(&space)?;
    let (residual, modular) = if report.all_pass() {
        let residual = verify_lambda_chi(&space)?;
        let modular = modular_element(&space)?;
        (Some(residual), Some(modular))
    } else {
        (None, None)
    };
    let residual_zero = residual
        .as_deref()
        .map(scalar::is_zero_vec)
        .unwrap_or(false);
    let d = DrinfeldData {
        h_dim: space.h.dim(),
        l_basis: rows_of(&space.l),
        cond_a_infinitesimal: report.cond_a_infinitesimal,
        cond_b: report.cond_b,
        lemma_condition_1: report.lemma_condition_1,
        lemma_condition_2: report.lemma_condition_2,
        witness_a: report.witness_a.as_ref().map(WitnessData::from),
        witness_b: report.witness_b.as_ref().map(WitnessData::from),
        h0_closed: closure.closed,
        h0_witness: closure.witness.as_ref().map(WitnessData::from),
        lambda_chi_residual: residual.as_deref().map(render_vec),
        modular_element: modular.as_deref().map(render_vec),
    };
    let pass = report.all_pass() && closure.closed && residual_zero;
    let mut text = String::new();
    let _ = writeln!(text, "l basis rows:");
    for row in &d.l_basis {
        let _ = writeln!(text, "  [{}]", row.join(", "));
    }
    let _ = writeln!(
        text,
        "invariance condition [h, l] in l: {}",
        verdict(d.cond_a_infinitesimal)
    );
    if let Some(w) = &d.witness_a {
        let _ = writeln!(
            text,
            "  witness: h basis {} against l basis {}",
            w.left, w.right
        );
    }
    let _ = writeln!(text, "subalgebra condition on l: {}", verdict(d.cond_b));
    if let Some(w) = &d.witness_b {
        let _ = writeln!(text, "  witness: l basis pair ({}, {})", w.left, w.right);
    }
    let _ = writeln!(
        text,
        "membership conditions ([x,L]+d(x), [L,L]+2d(L)): {}, {}",
        verdict(d.lemma_condition_1),
        verdict(d.lemma_condition_2)
    );
    let _ = writeln!(
        text,
        "twisted bracket closes on h0: {}",
        verdict(d.h0_closed)
    );
    if let Some(r) = &d.lambda_chi_residual {
        let _ = writeln!(
            text,
            "character identity residual: [{}] {}",
            r.join(", "),
            verdict(residual_zero)
        );
    }
    if let Some(m) = &d.modular_element {
        let _ = writeln!(text, "modular element in g/h: [{}]", m.join(", "));
    }
    Ok(Report::new("drinfeld", input, pass, data(&d), text))
}

// -------------------------------------------------------------- cohomology

#[derive(Serialize)]
struct PairingData {
    f_zero: bool,
    degree: usize,
    matrix: Vec<Vec<String>>,
    rank: usize,
}

#[derive(Serialize)]
struct CohomologyData {
    l_dim: usize,
    h_dim: usize,
    module_dim: usize,
    module_valid: bool,
    degrees: Vec<usize>,
    cochain_dims: Vec<usize>,
    betti: Vec<usize>,
    pairing: Option<PairingData>,
}

fn parse_h_flag(spec: &str, dim: usize) -> Result<Subspace, CliError> {
    let spec = spec.trim();
    if spec.is_empty() {
        return Ok(Subspace::zero(dim));
    }
    let parsed: SubspaceSpec = if spec.contains('[') {
        let vectors: Vec<Vec<String>> = spec
            .split("],")
            .map(|chunk| {
                chunk
                    .trim()
                    .trim_start_matches('[')
                    .trim_end_matches(']')
                    .split(',')
                    .map(|s| s.trim().to_string())
                    .collect()
            })
            .collect();
        SubspaceSpec::Vectors(vectors)
    } else {
        let indices: Result<Vec<usize>, _> =
            spec.split(',').map(|s| s.trim().parse::<usize>()).collect();
        SubspaceSpec::Indices(
            indices.map_err(|_| CliError::Parse(format!("bad --h value {spec:?}")))?,
        )
    };
    Ok(parsed.to_subspace(dim)?)
}

#[allow(clippy::too_many_arguments)]
pub fn cohomology(
    cli: &Cli,
    input: &str,
    module_path: Option<&str>,
    h_flag: Option<&str>,
    degrees_flag: Option<&str>,
    nu_flag: Option<&str>,
    pair_degree: Option<usize>,
) -> CmdResult {
    let file = resolve_algebra(cli, input)?;
    let algebra = file.algebra()?;
    let module = match module_path {
        None => FiniteModule::trivial(algebra.dim()),
        Some(path) => ModuleFile::parse(&read_to_string(path)?)?.module()?,
    };
    let h = match h_flag {
        Some(spec) => parse_h_flag(spec, algebra.dim())?,
        None => file.h_subspace()?,
    };
    let module_report = validate_module(&module, &algebra)?;
    if !module_report.is_valid() {
        let d = CohomologyData {
            l_dim: algebra.dim(),
            h_dim: h.dim(),
            module_dim: module.dim,
            module_valid: false,
            degrees: Vec::new(),
            cochain_dims: Vec::new(),
            betti: Vec::new(),
            pairing: None,
        };
        let text = format!(
            "module: FAIL ({} representation violation(s), {} generator violation(s))\n",
            module_report.representation_violations.len(),
            module_report.generator_violations.len()
        );
        return Ok(Report::new("cohomology", input, false, data(&d), text));
    }
    let complex = build_relative_complex(&algebra, &h, &module)?;
    let all_degrees: Vec<usize> = (0..=complex.top_degree).collect();
    let degrees = match degrees_flag {
        None => all_degrees.clone(),
        Some(spec) => {
            let parsed: Result<Vec<usize>, _> =
                spec.split(',').map(|s| s.trim().parse::<usize>()).collect();
            parsed.map_err(|_| CliError::Parse(format!("bad --degrees value {spec:?}")))?
        }
    };
    let cochain_dims = complex.cochain_dims();
    let betti = complex.cohomology_dims();
    let pairing = match nu_flag {
        None => None,
        Some(nu_spec) => {
            let k = pair_degree.unwrap_or(0);
            let tensor = FiniteModule::tensor(&module, &module)?;
            let tensor_complex = build_relative_complex(&algebra, &h, &tensor)?;
            let top_dim = tensor_complex.bases[tensor_complex.top_degree].dim();
            let nu: Vec<Rational> = if nu_spec.trim() == "top" {
                (0..top_dim).map(|_| scalar::one()).collect()
            } else {
                let parsed: manin::Result<Vec<Rational>> =
                    nu_spec.split(',').map(scalar::parse).collect();
                parsed?
            };
            let f_zero = check_f_zero(&tensor_complex, &nu)?;
            if !f_zero {
                return Err(CliError::Input(
                    "nu does not vanish on the top coboundaries; the pairing does not descend"
                        .into(),
                ));
            }
            let matrix = descend_pairing(&complex, &complex, &tensor_complex, &nu, k)?;
            Some(PairingData {
                f_zero,
                degree: k,
                rank: matrix.rank(),
                matrix: render_matrix(&matrix),
            })
        }
    };
    let d = CohomologyData {
        l_dim: algebra.dim(),
        h_dim: h.dim(),
        module_dim: module.dim,
        module_valid: true,
        degrees: degrees.clone(),
        cochain_dims: degrees
            .iter()
            .filter_map(|&k| cochain_dims.get(k).copied())
            .collect(),
        betti: degrees
            .iter()
            .filter_map(|&k| betti.get(k).copied())
            .collect(),
        pairing,
    };
    let mut text = String::new();
    let _ = writeln!(text, "module: pass (dim {})", module.dim);
    let _ = writeln!(
        text,
        "relative complex over dim(l/h) = {}",
        complex.top_degree
    );
    for (i, &k) in degrees.iter().enumerate() {
        let _ = writeln!(
            text,
            "degree {k}: dim C = {}, Betti = {}",
            d.cochain_dims.get(i).copied().unwrap_or(0),
            d.betti.get(i).copied().unwrap_or(0)
        );
    }
    if let Some(p) = &d.pairing {
        let _ = writeln!(
            text,
            "pairing at degree {}: F-zero {}, rank {}",
            p.degree,
            verdict(p.f_zero),
            p.rank
        );
    }
    Ok(Report::new("cohomology", input, true, data(&d), text))
}

// ------------------------------------------------------------------- twist

#[derive(Serialize)]
struct TwistData {
    g_prime_basis: Vec<Vec<String>>,
    phi: Vec<String>,
    phi_routes_agree: bool,
    delta_g_prime_rows: Vec<Vec<String>>,
}

pub fn twist(cli: &Cli, input: &str) -> CmdResult {
    let file = resolve_algebra(cli, input)?;
    let bialg = file.bialgebra()?;
    let lambda = file.lambda_bivector()?;
    let dbl = bialg.double()?;
    let routes = [
        phi_via_double(&dbl, &lambda)?,
        phi_via_six_terms(&bialg, &lambda)?,
        phi_via_schouten(&bialg, &lambda)?,
    ];
    let agree = routes[0] == routes[1] && routes[0] == routes[2];
    if !agree {
        return Err(CliError::Convention(
            "phi routes disagree; see twist::phi_checked".into(),
        ));
    }
    let phi = phi_checked(&bialg, &dbl, &lambda)?;
    let gp = g_prime(&dbl, &lambda)?;
    let n = bialg.dim();
    let mut delta_rows = Vec::with_capacity(n);
    for a in 0..n {
        let mut xi = vec![scalar::zero(); n];
        xi[a] = scalar::one();
        let mut v = {
            let lam = manin::exterior::Multivector::interior(
                &manin::exterior::Multivector::vector(&xi),
                &lambda,
            )?;
            (0..n).map(|i| lam.coeff(&[i])).collect::<Vec<_>>()
        };
        v.extend(xi);
        let dg = delta_g_prime(&bialg, &lambda, &v)?;
        delta_rows.push(render_vec(&dg.lex_coords()));
    }
    let d = TwistData {
        g_prime_basis: rows_of(&gp),
        phi: render_vec(&phi.lex_coords()),
        phi_routes_agree: agree,
        delta_g_prime_rows: delta_rows,
    };
    let mut text = String::new();
    let _ = writeln!(text, "g' basis rows:");
    for row in &d.g_prime_basis {
        let _ = writeln!(text, "  [{}]", row.join(", "));
    }
    let _ = writeln!(
        text,
        "phi (three routes agree: {}): [{}]",
        verdict(agree),
        d.phi.join(", ")
    );
    let _ = writeln!(text, "delta_g' on the graph basis:");
    for (a, row) in d.delta_g_prime_rows.iter().enumerate() {
        let _ = writeln!(text, "  w{a}: [{}]", row.join(", "));
    }
    Ok(Report::new("twist", input, true, data(&d), text))
}

// ------------------------------------------------------------------- point

#[derive(Serialize)]
struct PointData {
    eq_gg: (bool, bool),
    rank: usize,
    full_rank: usize,
    nondegenerate: bool,
    implication_holds: bool,
    xi_h: Option<bool>,
}

pub fn point(cli: &Cli, input: &str, frame_path: &str) -> CmdResult {
    let file = resolve_algebra(cli, input)?;
    let bialg = file.bialgebra()?;
    let lambda = file.lambda_bivector()?;
    let h = file.h_subspace()?;
    let dbl = bialg.double()?;
    let n = bialg.dim();
    let frame_file = FrameFile::parse(&read_to_string(frame_path)?)?;
    let frame = frame_file.frame(n)?;
    frame.validate(&bialg.algebra, Some(&dbl))?;
    let ad_d = frame
        .ad_d
        .clone()
        .unwrap_or_else(|| Matrix::identity(2 * n));
    let ad_gd = match frame_file.ad_gd_matrix()? {
        Some(m) => m,
        None => frame.gond_matrix()?.mul(&ad_d)?,
    };
    let (first, second) = check_eq_gg(&dbl, &lambda, &ad_d, &ad_gd)?;
    let pi = point_pi_p(&bialg, &dbl, &lambda, &frame, &ad_d)?;
    let nondegenerate = pi.is_nondegenerate();
    let implication_holds = !(first && second) || nondegenerate;
    let xi_h = match frame_file.xi_vector()? {
        None => None,
        Some(xi) => Some(check_xi_h(&bialg, &lambda, &frame, &h, &xi)?),
    };
    let d = PointData {
        eq_gg: (first, second),
        rank: pi.rank(),
        full_rank: 2 * n,
        nondegenerate,
        implication_holds,
        xi_h,
    };
    let pass = first && second && nondegenerate && xi_h.unwrap_or(true) && implication_holds;
    let mut text = String::new();
    let _ = writeln!(text, "transversality g' vs Ad_d g: {}", verdict(first));
    let _ = writeln!(text, "transversality g* vs Ad_gd g: {}", verdict(second));
    let _ = writeln!(
        text,
        "pointwise bivector map rank: {} of {} ({})",
        d.rank,
        d.full_rank,
        verdict(nondegenerate)
    );
    let _ = writeln!(
        text,
        "transversality implies nondegeneracy: {}",
        verdict(implication_holds)
    );
    if let Some(flag) = xi_h {
        let _ = writeln!(text, "subgroup membership for xi: {}", verdict(flag));
    }
    Ok(Report::new("point", input, pass, data(&d), text))
}

// ---------------------------------------------------------------- fixtures

#[derive(Serialize)]
struct FixturesData {
    names: Vec<String>,
    emitted: Option<Vec<String>>,
}

pub fn fixtures(_cli: &Cli, emit: Option<&Path>) -> CmdResult {
    let catalog = manin::fixtures::catalog();
    let names: Vec<String> = catalog.iter().map(|f| f.name.to_string()).collect();
    let emitted = match emit {
        None => None,
        Some(dir) => {
            std::fs::create_dir_all(dir)
                .map_err(|e| CliError::Parse(format!("cannot create {}: {e}", dir.display())))?;
            let mut written = Vec::new();
            for f in &catalog {
                let path = dir.join(format!("{}.json", f.name));
                let text = AlgebraFile::from_fixture(f).to_json();
                std::fs::write(&path, text + "\n").map_err(|e| {
                    CliError::Parse(format!("cannot write {}: {e}", path.display()))
                })?;
                written.push(path.display().to_string());
            }
            Some(written)
        }
    };
    let d = FixturesData {
        names: names.clone(),
        emitted: emitted.clone(),
    };
    let mut text = String::new();
    for name in &names {
        let _ = writeln!(text, "{name}");
    }
    if let Some(files) = &emitted {
        let _ = writeln!(text, "wrote {} file(s)", files.len());
    }
    Ok(Report::new("fixtures", "catalog", true, data(&d), text))
}
