//! Brute-force search over GF(p) for Nijenhuis, Reynolds and twisted
//! Rota-Baxter operators and for small Nambu-Poisson algebras.
//!
//! Candidates are enumerated deterministically from the seed: the full space
//! in odometer order when it fits in the budget, seeded sampling otherwise.
//! Every returned witness has passed the exact checker over GF(p); lifting
//! to the rationals is a separate step whose output must be re-verified.

use crate::algebra::{check_nambu_poisson, NambuPoissonAlgebra};
use crate::cohomology::{check_np_2cocycle, CocyclePair};
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::operator::{check_nijenhuis, check_reynolds, minus_cocycle, twisted_o_violation, TwistedOCandidate};
use crate::rep::adjoint_rep;
use crate::rng::SplitMix64;
use crate::scalar::{Field, Scalar};
use crate::tensor::{BilinearMap, LinearMap, Sym2, Sym3, TrilinearMap};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SearchKind {
    Nijenhuis,
    Reynolds,
    TwistedRotaBaxter,
    NpAlgebra,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CandidateShape {
    Full,
    Diagonal,
    UpperTriangular,
}

/// Parameters of a search run.
#[derive(Debug, Clone)]
pub struct SearchSpec {
    pub kind: SearchKind,
    /// Base algebra for operator kinds; must live over `field`.
    pub base: Option<NambuPoissonAlgebra>,
    /// Dimension for algebra searches (ignored when `base` is set).
    pub dim: usize,
    /// The finite field to search over.
    pub field: Field,
    /// Residues the candidate entries are drawn from; empty means all of
    /// GF(p).
    pub coeffs: Vec<u32>,
    /// Candidate matrix shape for operator kinds.
    pub shape: CandidateShape,
    /// Maximum number of candidates to examine.
    pub budget: u64,
    pub seed: u64,
    /// Cocycle pair for twisted Rota-Baxter searches; defaults to the
    /// (phi_-, psi_-) pair of the base algebra.
    pub pair: Option<CocyclePair>,
}

impl SearchSpec {
    pub fn new(kind: SearchKind, field: Field, budget: u64, seed: u64) -> SearchSpec {
        SearchSpec {
            kind,
            base: None,
            dim: 0,
            field,
            coeffs: Vec::new(),
            shape: CandidateShape::Full,
            budget,
            seed,
            pair: None,
        }
    }
}

/// A verified witness.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SearchWitness {
    Operator(LinearMap),
    Algebra(NambuPoissonAlgebra),
}

#[derive(Debug, Clone)]
pub struct SearchResult {
    pub witnesses: Vec<SearchWitness>,
    pub examined: u64,
    /// True when the candidate space exceeded the budget and only a seeded
    /// sample was examined.
    pub truncated: bool,
}

fn validate_spec(spec: &SearchSpec) -> Result<(u32, Vec<u32>, usize)> {
    let Field::Gf(p) = spec.field else {
        return Err(Error::FieldMismatch("search runs over GF(p) only".into()));
    };
    if spec.budget == 0 {
        return Err(Error::InvalidArgument("budget must be at least 1".into()));
    }
    let coeffs: Vec<u32> = if spec.coeffs.is_empty() {
        (0..p).collect()
    } else {
        for &c in &spec.coeffs {
            if c >= p {
                return Err(Error::FieldMismatch(format!(
                    "coefficient {c} is not a residue mod {p}"
                )));
            }
        }
        spec.coeffs.clone()
    };
    let dim = match (&spec.base, spec.kind) {
        (Some(base), _) => {
            if base.field() != spec.field {
                return Err(Error::FieldMismatch(
                    "base algebra field differs from the search field".into(),
                ));
            }
            base.dim
        }
        (None, SearchKind::NpAlgebra) => spec.dim,
        (None, _) => {
            return Err(Error::InvalidArgument(
                "operator searches need a base algebra".into(),
            ));
        }
    };
    if dim == 0 {
        return Err(Error::InvalidArgument("search dimension must be positive".into()));
    }
    Ok((p, coeffs, dim))
}

/// Cell positions of an operator candidate matrix.
fn operator_cells(dim: usize, shape: CandidateShape) -> Vec<(usize, usize)> {
    let mut cells = Vec::new();
    for i in 0..dim {
        for j in 0..dim {
            let keep = match shape {
                CandidateShape::Full => true,
                CandidateShape::Diagonal => i == j,
                CandidateShape::UpperTriangular => i <= j,
            };
            if keep {
                cells.push((i, j));
            }
        }
    }
    cells
}

fn space_size(choices: usize, cells: usize) -> u128 {
    let mut acc: u128 = 1;
    for _ in 0..cells {
        acc = acc.saturating_mul(choices as u128);
    }
    acc
}

/// Runs a deterministic search and re-verifies every witness with the exact
/// checker for the requested kind.
pub fn search(spec: &SearchSpec) -> Result<SearchResult> {
    let (_p, coeffs, dim) = validate_spec(spec)?;
    let field = spec.field;

    // operator kinds require a valid base algebra
    if let Some(base) = &spec.base {
        check_nambu_poisson(base).require("search: base algebra")?;
    }

    // per-kind verification closure over a candidate value vector
    enum Checker<'a> {
        Operator {
            base: &'a NambuPoissonAlgebra,
            cells: Vec<(usize, usize)>,
            kind: SearchKind,
            twisted: Option<Box<TwistedOCandidate>>,
        },
        Algebra {
            dim: usize,
            prod_slots: Vec<(usize, usize, usize)>,
            br_slots: Vec<(usize, usize, usize, usize)>,
        },
    }

    let checker = match spec.kind {
        SearchKind::NpAlgebra => {
            let mut prod_slots = Vec::new();
            for i in 0..dim {
                for j in i..dim {
                    for k in 0..dim {
                        prod_slots.push((i, j, k));
                    }
                }
            }
            let mut br_slots = Vec::new();
            for i in 0..dim {
                for j in (i + 1)..dim {
                    for k in (j + 1)..dim {
                        for l in 0..dim {
                            br_slots.push((i, j, k, l));
                        }
                    }
                }
            }
            Checker::Algebra {
                dim,
                prod_slots,
                br_slots,
            }
        }
        kind => {
            let base = spec.base.as_ref().expect("validated above");
            let twisted = if kind == SearchKind::TwistedRotaBaxter {
                let rep = adjoint_rep(base);
                let pair = spec.pair.clone().unwrap_or_else(|| minus_cocycle(base));
                check_np_2cocycle(base, &rep, &pair)?.require("search: cocycle pair")?;
                Some(Box::new(TwistedOCandidate::new(
                    LinearMap::zero(field, dim, dim),
                    rep,
                    pair,
                )?))
            } else {
                None
            };
            Checker::Operator {
                base,
                cells: operator_cells(dim, spec.shape),
                kind,
                twisted,
            }
        }
    };

    let ncells = match &checker {
        Checker::Operator { cells, .. } => cells.len(),
        Checker::Algebra {
            prod_slots,
            br_slots,
            ..
        } => prod_slots.len() + br_slots.len(),
    };

    let verify = |values: &[u32]| -> Result<Option<SearchWitness>> {
        match &checker {
            Checker::Operator {
                base,
                cells,
                kind,
                twisted,
            } => {
                let mut m = Matrix::zeros(field, dim, dim);
                for (&(i, j), &v) in cells.iter().zip(values) {
                    m.set(i, j, field.from_i64(i64::from(v)));
                }
                let cand = LinearMap::from_matrix(m);
                let ok = match kind {
                    SearchKind::Nijenhuis => check_nijenhuis(base, &cand)?.is_pass(),
                    SearchKind::Reynolds => check_reynolds(base, &cand)?.is_pass(),
                    SearchKind::TwistedRotaBaxter => {
                        let mut c = (**twisted.as_ref().expect("constructed above")).clone();
                        c.r = cand.clone();
                        twisted_o_violation(&c, base).is_none()
                    }
                    SearchKind::NpAlgebra => unreachable!(),
                };
                Ok(ok.then_some(SearchWitness::Operator(cand)))
            }
            Checker::Algebra {
                dim,
                prod_slots,
                br_slots,
            } => {
                let mut prod_entries = Vec::new();
                for (slot, &v) in prod_slots.iter().zip(values) {
                    if v != 0 {
                        prod_entries.push((slot.0, slot.1, slot.2, field.from_i64(i64::from(v))));
                    }
                }
                let mut br_entries = Vec::new();
                for (slot, &v) in br_slots.iter().zip(&values[prod_slots.len()..]) {
                    if v != 0 {
                        br_entries.push((slot.0, slot.1, slot.2, slot.3, field.from_i64(i64::from(v))));
                    }
                }
                let a = NambuPoissonAlgebra::new(
                    BilinearMap::from_entries(field, *dim, *dim, Sym2::Symmetric, &prod_entries)?,
                    TrilinearMap::from_entries(field, *dim, *dim, Sym3::FullySkew, &br_entries)?,
                )?;
                Ok(check_nambu_poisson(&a).is_pass().then_some(SearchWitness::Algebra(a)))
            }
        }
    };

    let space = space_size(coeffs.len(), ncells);
    let mut witnesses = Vec::new();
    let mut examined = 0u64;

    if space <= u128::from(spec.budget) {
        // full enumeration in odometer order over coefficient indices
        let mut idx = vec![0usize; ncells];
        let mut values = vec![0u32; ncells];
        loop {
            for (v, &i) in values.iter_mut().zip(&idx) {
                *v = coeffs[i];
            }
            examined += 1;
            if let Some(w) = verify(&values)? {
                witnesses.push(w);
            }
            // advance the odometer from the last cell
            let mut pos = ncells;
            loop {
                if pos == 0 {
                    return Ok(SearchResult {
                        witnesses,
                        examined,
                        truncated: false,
                    });
                }
                pos -= 1;
                idx[pos] += 1;
                if idx[pos] < coeffs.len() {
                    break;
                }
                idx[pos] = 0;
            }
        }
    }

    // seeded sampling
    let mut rng = SplitMix64::new(spec.seed);
    let mut values = vec![0u32; ncells];
    for _ in 0..spec.budget {
        for v in values.iter_mut() {
            *v = coeffs[rng.below(coeffs.len() as u64) as usize];
        }
        examined += 1;
        if let Some(w) = verify(&values)? {
            witnesses.push(w);
        }
    }
    Ok(SearchResult {
        witnesses,
        examined,
        truncated: true,
    })
}

/// Centered lift of a GF(p) residue: values above p/2 come back negative.
/// Rational scalars pass through unchanged.
pub fn lift_scalar(s: &Scalar) -> Scalar {
    match s {
        Scalar::Rational(_) => s.clone(),
        Scalar::Gf { p, value } => {
            let v = i64::from(*value);
            let p = i64::from(*p);
            Scalar::rational(if v * 2 > p { v - p } else { v }, 1)
        }
    }
}

/// Reinterprets a GF(p) witness over the rationals by the centered lift.
/// The result is NOT guaranteed to verify; callers must re-run the exact
/// checker.
pub fn lift_to_rationals(witness: &SearchWitness) -> Result<SearchWitness> {
    match witness {
        SearchWitness::Operator(m) => {
            let mat = m.matrix();
            Ok(SearchWitness::Operator(LinearMap::from_matrix(Matrix::from_fn(
                Field::Rational,
                mat.rows(),
                mat.cols(),
                |i, j| lift_scalar(mat.get(i, j)),
            ))))
        }
        SearchWitness::Algebra(a) => {
            // lift canonical entries so the symmetry completion is redone
            // over the rationals (over GF(2) the full tensors are not
            // sign-consistent as integer tensors)
            let prod_entries: Vec<_> = a
                .product
                .canonical_entries()
                .into_iter()
                .map(|(i, j, k, v)| (i, j, k, lift_scalar(&v)))
                .collect();
            let br_entries: Vec<_> = a
                .bracket
                .canonical_entries()
                .into_iter()
                .map(|(i, j, k, l, v)| (i, j, k, l, lift_scalar(&v)))
                .collect();
            Ok(SearchWitness::Algebra(NambuPoissonAlgebra::new(
                BilinearMap::from_entries(Field::Rational, a.dim, a.dim, Sym2::Symmetric, &prod_entries)?,
                TrilinearMap::from_entries(Field::Rational, a.dim, a.dim, Sym3::FullySkew, &br_entries)?,
            )?))
        }
    }
}
