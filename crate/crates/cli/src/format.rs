//! The algebra-description file format.
//!
//! A file starts with the header line `nambu-algebra v1`, followed by
//! directives (`field`, `dim`, `module`) and named sections of structure
//! constants. Basis indices are 1-based in files and 0-based internally;
//! the conversion happens only here. Rationals are written as `p/q` (or a
//! bare integer), GF(p) values as residues. `#` starts a comment.
//!
//! Sections and their entry shapes (all indices canonical):
//!
//! ```text
//! `[product]`   i j k value     symmetric, i <= j
//! `[bracket]`   i j k l value   fully skew, i < j < k
//! `[bracket2]`  i j k value     skew, i < j            (binary Poisson bracket)
//! `[mu]`        a r c value     action matrix entries mu(e_a)[r][c]
//! `[rho]`       a b r c value   rho(e_a,e_b)[r][c], a < b
//! `[operator]`  r c value       square matrix on the algebra
//! `[roperator]` r c value       matrix from the module into the algebra
//! `[phi]`       i j v value     symmetric into the module, i <= j
//! `[psi]`       i j k v value   fully skew into the module, i < j < k
//! `[diamond]`   i j k value     no symmetry
//! `[star]`      i j k value     symmetric, i <= j
//! `[sq]`        i j k l value   skew in (i, j), i < j
//! `[dsq]`       i j k l value   fully skew, i < j < k
//! `[phi1]`      i j k value     symmetric, i <= j
//! `[psi1]`      i j k l value   fully skew, i < j < k
//! `[psi2]`      i j k l value   fully skew, i < j < k
//! ```

use nambu_core::algebra::NambuPoissonAlgebra;
use nambu_core::cohomology::CocyclePair;
use nambu_core::deform::LinearDeformation12;
use nambu_core::error::Error as CoreError;
use nambu_core::matrix::Matrix;
use nambu_core::ns::NSNambuPoissonAlgebra;
use nambu_core::rep::NPRepresentation;
use nambu_core::scalar::{Field, Scalar};
use nambu_core::tensor::{BilinearMap, LinearMap, Sym2, Sym3, TrilinearMap};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

pub const HEADER: &str = "nambu-algebra v1";

/// A parse failure with its location.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

impl std::fmt::Display for ParseError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        // line 0 marks errors found after line-by-line parsing
        if self.line == 0 {
            write!(f, "{}", self.message)
        } else {
            write!(f, "line {}: {}", self.line, self.message)
        }
    }
}

impl std::error::Error for ParseError {}

fn err(line: usize, message: impl Into<String>) -> ParseError {
    ParseError {
        line,
        message: message.into(),
    }
}

const SECTIONS: &[&str] = &[
    "product", "bracket", "bracket2", "mu", "rho", "operator", "roperator", "phi", "psi",
    "diamond", "star", "sq", "dsq", "phi1", "psi1", "psi2",
];

/// Arity of the index prefix of one entry line per section.
fn section_arity(name: &str) -> usize {
    match name {
        "product" | "bracket2" | "mu" | "diamond" | "star" | "phi" | "phi1" => 3,
        "bracket" | "rho" | "sq" | "dsq" | "psi" | "psi1" | "psi2" => 4,
        "operator" | "roperator" => 2,
        _ => unreachable!("unknown section"),
    }
}

type Entry = (Vec<usize>, Scalar);

/// A parsed file: field, dimensions and raw per-section entries (0-based).
#[derive(Debug, Clone)]
pub struct AlgebraFile {
    pub field: Field,
    pub dim: usize,
    pub module: Option<usize>,
    sections: Vec<(String, Vec<Entry>)>,
}

impl AlgebraFile {
    pub fn new(field: Field, dim: usize) -> AlgebraFile {
        AlgebraFile {
            field,
            dim,
            module: None,
            sections: Vec::new(),
        }
    }

    fn entries(&self, name: &str) -> &[Entry] {
        self.sections
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, e)| e.as_slice())
            .unwrap_or(&[])
    }

    pub fn has_section(&self, name: &str) -> bool {
        self.sections.iter().any(|(n, e)| n == name && !e.is_empty())
    }

    /// Module dimension, defaulting to the algebra dimension (the adjoint
    /// convention) when no `module` directive is present.
    pub fn module_dim(&self) -> usize {
        self.module.unwrap_or(self.dim)
    }
}

fn parse_scalar(tok: &str, field: Field, line: usize) -> Result<Scalar, ParseError> {
    match field {
        Field::Rational => {
            let (num, den) = match tok.split_once('/') {
                Some((n, d)) => (n, d),
                None => (tok, "1"),
            };
            let n: BigInt = num
                .parse()
                .map_err(|_| err(line, format!("bad numerator in '{tok}'")))?;
            let d: BigInt = den
                .parse()
                .map_err(|_| err(line, format!("bad denominator in '{tok}'")))?;
            if d.is_zero() {
                return Err(err(line, format!("zero denominator in '{tok}'")));
            }
            Ok(Scalar::Rational(BigRational::new(n, d)))
        }
        Field::Gf(p) => {
            let v: u32 = tok
                .parse()
                .map_err(|_| err(line, format!("bad GF({p}) value '{tok}'")))?;
            if v >= p {
                return Err(err(line, format!("value {v} is not a residue mod {p}")));
            }
            Ok(Scalar::gf(p, i64::from(v)))
        }
    }
}

fn render_scalar(s: &Scalar) -> String {
    s.to_string()
}

/// Parses one scalar token in the file syntax ("p/q" or integer for the
/// rationals, a residue for GF(p)).
pub fn parse_scalar_public(tok: &str, field: Field) -> Result<Scalar, ParseError> {
    parse_scalar(tok, field, 0)
}

/// Parses file text into sections. Entries are validated for index range
/// and duplicate slots here; symmetry-class canonicality is enforced when
/// the typed objects are assembled.
pub fn parse(text: &str) -> Result<AlgebraFile, ParseError> {
    let mut lines = text.lines().enumerate().map(|(i, l)| {
        let stripped = match l.split_once('#') {
            Some((head, _)) => head,
            None => l,
        };
        (i + 1, stripped.trim())
    });

    // header
    let header = lines
        .by_ref()
        .find(|(_, l)| !l.is_empty())
        .ok_or_else(|| err(1, "empty file"))?;
    if header.1 != HEADER {
        return Err(err(header.0, format!("expected header '{HEADER}'")));
    }

    let mut field: Option<Field> = None;
    let mut dim: Option<usize> = None;
    let mut module: Option<usize> = None;
    let mut sections: Vec<(String, Vec<Entry>)> = Vec::new();
    let mut current: Option<String> = None;

    for (lineno, line) in lines {
        if line.is_empty() {
            continue;
        }
        if let Some(name) = line.strip_prefix('[').and_then(|l| l.strip_suffix(']')) {
            if !SECTIONS.contains(&name) {
                return Err(err(lineno, format!("unknown section '[{name}]'")));
            }
            if sections.iter().any(|(n, _)| n == name) {
                return Err(err(lineno, format!("duplicate section '[{name}]'")));
            }
            sections.push((name.to_string(), Vec::new()));
            current = Some(name.to_string());
            continue;
        }
        let tokens: Vec<&str> = line.split_whitespace().collect();
        match tokens[0] {
            "field" if current.is_none() => {
                field = Some(match tokens.get(1) {
                    Some(&"rational") => Field::Rational,
                    Some(&"gf") => {
                        let p: u32 = tokens
                            .get(2)
                            .and_then(|t| t.parse().ok())
                            .ok_or_else(|| err(lineno, "usage: field gf <prime>"))?;
                        Field::gf(p).map_err(|e| err(lineno, e.to_string()))?
                    }
                    _ => return Err(err(lineno, "usage: field rational | field gf <prime>")),
                });
            }
            "dim" if current.is_none() => {
                dim = Some(
                    tokens
                        .get(1)
                        .and_then(|t| t.parse().ok())
                        .filter(|&d: &usize| d > 0)
                        .ok_or_else(|| err(lineno, "usage: dim <positive integer>"))?,
                );
            }
            "module" if current.is_none() => {
                module = Some(
                    tokens
                        .get(1)
                        .and_then(|t| t.parse().ok())
                        .filter(|&d: &usize| d > 0)
                        .ok_or_else(|| err(lineno, "usage: module <positive integer>"))?,
                );
            }
            _ => {
                let Some(section) = &current else {
                    return Err(err(lineno, format!("unexpected directive '{}'", tokens[0])));
                };
                let field = field.ok_or_else(|| err(lineno, "field must be declared before sections"))?;
                let arity = section_arity(section);
                if tokens.len() != arity + 1 {
                    return Err(err(
                        lineno,
                        format!("section [{section}] entries need {arity} indices and a value"),
                    ));
                }
                let mut idx = Vec::with_capacity(arity);
                for t in &tokens[..arity] {
                    let v: usize = t
                        .parse()
                        .ok()
                        .filter(|&v: &usize| v >= 1)
                        .ok_or_else(|| err(lineno, format!("bad index '{t}' (indices are 1-based)")))?;
                    idx.push(v - 1);
                }
                let value = parse_scalar(tokens[arity], field, lineno)?;
                let entries = &mut sections.last_mut().expect("section started").1;
                if entries.iter().any(|(slots, _)| slots == &idx) {
                    return Err(err(
                        lineno,
                        format!(
                            "duplicate canonical slot ({}) in [{section}]",
                            idx.iter().map(|i| (i + 1).to_string()).collect::<Vec<_>>().join(", ")
                        ),
                    ));
                }
                if !value.is_zero() {
                    entries.push((idx, value));
                }
            }
        }
    }

    let field = field.ok_or_else(|| err(1, "missing 'field' directive"))?;
    let dim = dim.ok_or_else(|| err(1, "missing 'dim' directive"))?;
    let file = AlgebraFile {
        field,
        dim,
        module,
        sections,
    };
    file.validate_ranges()?;
    Ok(file)
}

impl AlgebraFile {
    fn validate_ranges(&self) -> Result<(), ParseError> {
        let n = self.dim;
        let m = self.module_dim();
        for (name, entries) in &self.sections {
            // bounds per index position for each section shape
            let bounds: Vec<usize> = match name.as_str() {
                "product" | "bracket2" | "diamond" | "star" | "phi1" => vec![n, n, n],
                "bracket" | "sq" | "dsq" | "psi1" | "psi2" => vec![n, n, n, n],
                "phi" => vec![n, n, m],
                "psi" => vec![n, n, n, m],
                "mu" => vec![n, m, m],
                "rho" => vec![n, n, m, m],
                "operator" => vec![n, n],
                "roperator" => vec![n, m],
                _ => unreachable!(),
            };
            for (idx, _) in entries {
                for (pos, (&i, &b)) in idx.iter().zip(&bounds).enumerate() {
                    if i >= b {
                        return Err(err(
                            0,
                            format!(
                                "index {} out of range in [{name}] position {} (bound {})",
                                i + 1,
                                pos + 1,
                                b
                            ),
                        ));
                    }
                }
            }
        }
        Ok(())
    }

    fn core_err(e: CoreError) -> ParseError {
        err(0, e.to_string())
    }

    fn bilinear(&self, name: &str, dim_out: usize, sym: Sym2) -> Result<BilinearMap, ParseError> {
        let entries: Vec<(usize, usize, usize, Scalar)> = self
            .entries(name)
            .iter()
            .map(|(idx, v)| (idx[0], idx[1], idx[2], v.clone()))
            .collect();
        BilinearMap::from_entries(self.field, self.dim, dim_out, sym, &entries).map_err(Self::core_err)
    }

    fn trilinear(&self, name: &str, dim_out: usize, sym: Sym3) -> Result<TrilinearMap, ParseError> {
        let entries: Vec<(usize, usize, usize, usize, Scalar)> = self
            .entries(name)
            .iter()
            .map(|(idx, v)| (idx[0], idx[1], idx[2], idx[3], v.clone()))
            .collect();
        TrilinearMap::from_entries(self.field, self.dim, dim_out, sym, &entries).map_err(Self::core_err)
    }

    /// The Nambu-Poisson algebra from `[product]` and ``[bracket]`` (zero when
    /// absent).
    pub fn algebra(&self) -> Result<NambuPoissonAlgebra, ParseError> {
        let product = self.bilinear("product", self.dim, Sym2::Symmetric)?;
        let bracket = self.trilinear("bracket", self.dim, Sym3::FullySkew)?;
        NambuPoissonAlgebra::new(product, bracket).map_err(Self::core_err)
    }

    /// The representation from `[mu]` and ``[rho]``; the adjoint representation
    /// when neither a module directive nor action blocks are present.
    pub fn representation(&self) -> Result<NPRepresentation, ParseError> {
        if self.module.is_none() && !self.has_section("mu") && !self.has_section("rho") {
            return Ok(nambu_core::rep::adjoint_rep(&self.algebra()?));
        }
        let m = self.module_dim();
        let mut mu = vec![Matrix::zeros(self.field, m, m); self.dim];
        for (idx, v) in self.entries("mu") {
            mu[idx[0]].set(idx[1], idx[2], v.clone());
        }
        let mut rho = vec![Matrix::zeros(self.field, m, m); self.dim * self.dim];
        for (idx, v) in self.entries("rho") {
            let (a, b) = (idx[0], idx[1]);
            if a >= b {
                return Err(err(0, format!("[rho] entries need a < b, got ({}, {})", a + 1, b + 1)));
            }
            rho[a * self.dim + b].set(idx[2], idx[3], v.clone());
            rho[b * self.dim + a].set(idx[2], idx[3], -v);
        }
        NPRepresentation::new(self.dim, m, self.field, mu, rho).map_err(Self::core_err)
    }

    /// The cocycle pair from `[phi]` and `[psi]` (zero when absent).
    pub fn cocycle_pair(&self) -> Result<CocyclePair, ParseError> {
        let m = self.module_dim();
        let phi = self.bilinear_into_module("phi", m, Sym2::Symmetric)?;
        let entries: Vec<(usize, usize, usize, usize, Scalar)> = self
            .entries("psi")
            .iter()
            .map(|(idx, v)| (idx[0], idx[1], idx[2], idx[3], v.clone()))
            .collect();
        let psi = TrilinearMap::from_entries(self.field, self.dim, m, Sym3::FullySkew, &entries)
            .map_err(Self::core_err)?;
        CocyclePair::new(phi, psi).map_err(Self::core_err)
    }

    fn bilinear_into_module(&self, name: &str, m: usize, sym: Sym2) -> Result<BilinearMap, ParseError> {
        let entries: Vec<(usize, usize, usize, Scalar)> = self
            .entries(name)
            .iter()
            .map(|(idx, v)| (idx[0], idx[1], idx[2], v.clone()))
            .collect();
        BilinearMap::from_entries(self.field, self.dim, m, sym, &entries).map_err(Self::core_err)
    }

    /// The NS quintuple from `[diamond]`, `[star]`, `[sq]`, `[dsq]`.
    pub fn ns_algebra(&self) -> Result<NSNambuPoissonAlgebra, ParseError> {
        let diamond = self.bilinear("diamond", self.dim, Sym2::None)?;
        let star = self.bilinear("star", self.dim, Sym2::Symmetric)?;
        let sq = self.trilinear("sq", self.dim, Sym3::SkewFirstTwo)?;
        let dsq = self.trilinear("dsq", self.dim, Sym3::FullySkew)?;
        NSNambuPoissonAlgebra::new(diamond, star, sq, dsq).map_err(Self::core_err)
    }

    /// The deformation generators from `[phi1]`, `[psi1]`, `[psi2]`.
    pub fn deformation(&self) -> Result<LinearDeformation12, ParseError> {
        let base = self.algebra()?;
        let phi1 = self.bilinear("phi1", self.dim, Sym2::Symmetric)?;
        let psi1 = self.trilinear("psi1", self.dim, Sym3::FullySkew)?;
        let psi2 = self.trilinear("psi2", self.dim, Sym3::FullySkew)?;
        LinearDeformation12::new(base, phi1, psi1, psi2).map_err(Self::core_err)
    }

    /// The square operator matrix from `[operator]`.
    pub fn operator(&self) -> Result<LinearMap, ParseError> {
        if !self.has_section("operator") {
            return Err(err(0, "missing [operator] section"));
        }
        let mut m = Matrix::zeros(self.field, self.dim, self.dim);
        for (idx, v) in self.entries("operator") {
            m.set(idx[0], idx[1], v.clone());
        }
        Ok(LinearMap::from_matrix(m))
    }

    /// The module-to-algebra matrix from `[roperator]`.
    pub fn roperator(&self) -> Result<LinearMap, ParseError> {
        if !self.has_section("roperator") {
            return Err(err(0, "missing [roperator] section"));
        }
        let mut m = Matrix::zeros(self.field, self.dim, self.module_dim());
        for (idx, v) in self.entries("roperator") {
            m.set(idx[0], idx[1], v.clone());
        }
        Ok(LinearMap::from_matrix(m))
    }
}

// ---------------------------------------------------------------------------
// emission

/// Builder for canonical file text. Sections are emitted in a fixed order
/// with entries in lexicographic slot order, so emit . parse . emit is
/// byte-identical.
#[derive(Debug, Clone, Default)]
pub struct Document {
    pub field: Option<Field>,
    pub dim: usize,
    pub module: Option<usize>,
    sections: Vec<(&'static str, Vec<Entry>)>,
}

impl Document {
    pub fn new(field: Field, dim: usize) -> Document {
        Document {
            field: Some(field),
            dim,
            module: None,
            sections: Vec::new(),
        }
    }

    pub fn with_module(mut self, m: usize) -> Document {
        self.module = Some(m);
        self
    }

    fn add_section(&mut self, name: &'static str, mut entries: Vec<(Vec<usize>, Scalar)>) {
        entries.sort_by(|a, b| a.0.cmp(&b.0));
        if !entries.is_empty() {
            self.sections.push((name, entries));
        }
    }

    pub fn add_bilinear(&mut self, name: &'static str, map: &BilinearMap) {
        self.add_section(
            name,
            map.canonical_entries()
                .into_iter()
                .map(|(i, j, k, v)| (vec![i, j, k], v))
                .collect(),
        );
    }

    pub fn add_trilinear(&mut self, name: &'static str, map: &TrilinearMap) {
        self.add_section(
            name,
            map.canonical_entries()
                .into_iter()
                .map(|(i, j, k, l, v)| (vec![i, j, k, l], v))
                .collect(),
        );
    }

    pub fn add_matrix(&mut self, name: &'static str, m: &Matrix) {
        let mut entries = Vec::new();
        for i in 0..m.rows() {
            for j in 0..m.cols() {
                let v = m.get(i, j);
                if !v.is_zero() {
                    entries.push((vec![i, j], v.clone()));
                }
            }
        }
        self.add_section(name, entries);
    }

    pub fn add_rep(&mut self, rep: &NPRepresentation) {
        let n = rep.algebra_dim;
        let m = rep.module_dim;
        let mut mu_entries = Vec::new();
        for a in 0..n {
            for r in 0..m {
                for c in 0..m {
                    let v = rep.mu(a).get(r, c);
                    if !v.is_zero() {
                        mu_entries.push((vec![a, r, c], v.clone()));
                    }
                }
            }
        }
        self.add_section("mu", mu_entries);
        let mut rho_entries = Vec::new();
        for a in 0..n {
            for b in (a + 1)..n {
                for r in 0..m {
                    for c in 0..m {
                        let v = rep.rho(a, b).get(r, c);
                        if !v.is_zero() {
                            rho_entries.push((vec![a, b, r, c], v.clone()));
                        }
                    }
                }
            }
        }
        self.add_section("rho", rho_entries);
    }

    pub fn from_algebra(a: &NambuPoissonAlgebra) -> Document {
        let mut doc = Document::new(a.field(), a.dim);
        doc.add_bilinear("product", &a.product);
        doc.add_trilinear("bracket", &a.bracket);
        doc
    }

    pub fn from_ns(x: &NSNambuPoissonAlgebra) -> Document {
        let mut doc = Document::new(x.field(), x.dim);
        doc.add_bilinear("diamond", &x.diamond);
        doc.add_bilinear("star", &x.star);
        doc.add_trilinear("sq", &x.sq);
        doc.add_trilinear("dsq", &x.dsq);
        doc
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        out.push_str(HEADER);
        out.push('\n');
        if let Some(field) = &self.field {
            out.push_str(&format!("field {field}\n"));
        }
        out.push_str(&format!("dim {}\n", self.dim));
        if let Some(m) = self.module {
            out.push_str(&format!("module {m}\n"));
        }
        // fixed section order for canonical output
        for name in SECTIONS {
            if let Some((_, entries)) = self.sections.iter().find(|(n, _)| n == name) {
                out.push('\n');
                out.push_str(&format!("[{name}]\n"));
                for (idx, v) in entries {
                    let indices: Vec<String> = idx.iter().map(|i| (i + 1).to_string()).collect();
                    out.push_str(&format!("{} {}\n", indices.join(" "), render_scalar(v)));
                }
            }
        }
        out
    }
}

/// Re-emits a parsed file without interpretation: parse . emit is the
/// identity on objects and emit . parse . emit is byte-stable.
pub fn emit(file: &AlgebraFile) -> String {
    let mut doc = Document {
        field: Some(file.field),
        dim: file.dim,
        module: file.module,
        sections: Vec::new(),
    };
    for name in SECTIONS {
        let entries = file.entries(name);
        if !entries.is_empty() {
            let mut es: Vec<(Vec<usize>, Scalar)> = entries.to_vec();
            es.sort_by(|a, b| a.0.cmp(&b.0));
            doc.sections.push((name, es));
        }
    }
    doc.render()
}
