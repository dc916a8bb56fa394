//! Algebra types built on structure constants, and their axiom checkers.
//!
//! Constructors validate the structural symmetry classes only; axioms are
//! checked by explicit operations so that non-examples can be represented,
//! corrupted and searched. Checkers scan basis tuples exhaustively
//! (multilinearity makes this complete) and report the lexicographically
//! first failing tuple with both sides of the identity.

use crate::error::{Error, Result};
use crate::scalar::{Field, Scalar};
use crate::scan::first_failure;
use crate::tensor::{BilinearMap, Sym2, Sym3, TrilinearMap};
use crate::vector::{vec_add, vec_add_scaled, vec_sub, zero_vector};

/// Witness of a failed axiom: the first basis tuple where the two sides of
/// the identity differ, together with both values.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ViolationReport {
    pub axiom: String,
    pub witness: Vec<usize>,
    pub left: Vec<Scalar>,
    pub right: Vec<Scalar>,
}

impl std::fmt::Display for ViolationReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let fmt_vec = |v: &[Scalar]| {
            v.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")
        };
        write!(
            f,
            "{} fails at basis tuple {:?}: left = [{}], right = [{}]",
            self.axiom,
            self.witness,
            fmt_vec(&self.left),
            fmt_vec(&self.right)
        )
    }
}

/// Outcome of an axiom check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Check {
    Pass,
    Fail(ViolationReport),
}

impl Check {
    pub fn is_pass(&self) -> bool {
        matches!(self, Check::Pass)
    }

    pub fn report(&self) -> Option<&ViolationReport> {
        match self {
            Check::Pass => None,
            Check::Fail(r) => Some(r),
        }
    }

    pub(crate) fn from_violation(v: Option<ViolationReport>) -> Check {
        match v {
            None => Check::Pass,
            Some(r) => Check::Fail(r),
        }
    }

    /// As a precondition gate: turns a failure into an error.
    pub fn require(&self, context: &str) -> Result<()> {
        match self {
            Check::Pass => Ok(()),
            Check::Fail(r) => Err(Error::AxiomViolation(format!("{context}: {r}"))),
        }
    }
}

pub(crate) fn violation(axiom: &str, witness: &[usize], left: Vec<Scalar>, right: Vec<Scalar>) -> ViolationReport {
    ViolationReport {
        axiom: axiom.to_string(),
        witness: witness.to_vec(),
        left,
        right,
    }
}

/// A commutative (structurally) algebra whose associativity is checked, not
/// assumed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommAssocAlgebra {
    pub dim: usize,
    pub product: BilinearMap,
}

impl CommAssocAlgebra {
    pub fn new(product: BilinearMap) -> Result<CommAssocAlgebra> {
        if product.dim_in() != product.dim_out() {
            return Err(Error::DimensionMismatch(
                "product must map the space into itself".into(),
            ));
        }
        if product.sym() != Sym2::Symmetric {
            return Err(Error::SymmetryViolation("product must be symmetric".into()));
        }
        Ok(CommAssocAlgebra {
            dim: product.dim_in(),
            product,
        })
    }
}

/// A vector space with a fully skew ternary bracket; the fundamental
/// identity is checked, not assumed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ThreeLieAlgebra {
    pub dim: usize,
    pub bracket: TrilinearMap,
}

impl ThreeLieAlgebra {
    pub fn new(bracket: TrilinearMap) -> Result<ThreeLieAlgebra> {
        if bracket.dim_in() != bracket.dim_out() {
            return Err(Error::DimensionMismatch(
                "bracket must map the space into itself".into(),
            ));
        }
        if bracket.sym() != Sym3::FullySkew {
            return Err(Error::SymmetryViolation("bracket must be fully skew".into()));
        }
        Ok(ThreeLieAlgebra {
            dim: bracket.dim_in(),
            bracket,
        })
    }
}

/// A symmetric product and a fully skew ternary bracket on one space.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NambuPoissonAlgebra {
    pub dim: usize,
    pub product: BilinearMap,
    pub bracket: TrilinearMap,
}

impl NambuPoissonAlgebra {
    pub fn new(product: BilinearMap, bracket: TrilinearMap) -> Result<NambuPoissonAlgebra> {
        let comm = CommAssocAlgebra::new(product)?;
        let lie = ThreeLieAlgebra::new(bracket)?;
        if comm.dim != lie.dim {
            return Err(Error::DimensionMismatch(
                "product and bracket live on different dimensions".into(),
            ));
        }
        if comm.product.field() != lie.bracket.field() {
            return Err(Error::FieldMismatch(
                "product and bracket live over different fields".into(),
            ));
        }
        Ok(NambuPoissonAlgebra {
            dim: comm.dim,
            product: comm.product,
            bracket: lie.bracket,
        })
    }

    pub fn zero(field: Field, dim: usize) -> NambuPoissonAlgebra {
        NambuPoissonAlgebra {
            dim,
            product: BilinearMap::zero(field, dim, dim, Sym2::Symmetric),
            bracket: TrilinearMap::zero(field, dim, dim, Sym3::FullySkew),
        }
    }

    pub fn field(&self) -> Field {
        self.product.field()
    }
}

/// A binary skew bracket (Jacobi checked, not assumed).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LieAlgebra {
    pub dim: usize,
    pub bracket: BilinearMap,
}

impl LieAlgebra {
    pub fn new(bracket: BilinearMap) -> Result<LieAlgebra> {
        if bracket.dim_in() != bracket.dim_out() {
            return Err(Error::DimensionMismatch(
                "bracket must map the space into itself".into(),
            ));
        }
        if bracket.sym() != Sym2::Skew {
            return Err(Error::SymmetryViolation("Lie bracket must be skew".into()));
        }
        Ok(LieAlgebra {
            dim: bracket.dim_in(),
            bracket,
        })
    }
}

/// A symmetric product together with a binary skew bracket.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PoissonAlgebra {
    pub dim: usize,
    pub product: BilinearMap,
    pub bracket: BilinearMap,
}

impl PoissonAlgebra {
    pub fn new(product: BilinearMap, bracket: BilinearMap) -> Result<PoissonAlgebra> {
        let comm = CommAssocAlgebra::new(product)?;
        let lie = LieAlgebra::new(bracket)?;
        if comm.dim != lie.dim {
            return Err(Error::DimensionMismatch(
                "product and bracket live on different dimensions".into(),
            ));
        }
        Ok(PoissonAlgebra {
            dim: comm.dim,
            product: comm.product,
            bracket: lie.bracket,
        })
    }

    pub fn field(&self) -> Field {
        self.product.field()
    }
}

// ---------------------------------------------------------------------------
// identity evaluation on basis tuples

/// (x * y) * z - x * (y * z) on basis indices.
pub(crate) fn associator_on_basis(product: &BilinearMap, i: usize, j: usize, k: usize) -> (Vec<Scalar>, Vec<Scalar>) {
    let n = product.dim_in();
    let field = product.field();
    // (e_i e_j) e_k
    let mut left = zero_vector(field, n);
    for (w, c) in product.on_basis(i, j).iter().enumerate() {
        if !c.is_zero() {
            vec_add_scaled(&mut left, c, product.on_basis(w, k));
        }
    }
    // e_i (e_j e_k)
    let mut right = zero_vector(field, n);
    for (w, c) in product.on_basis(j, k).iter().enumerate() {
        if !c.is_zero() {
            vec_add_scaled(&mut right, c, product.on_basis(i, w));
        }
    }
    (left, right)
}

/// Contract a structure-constant row into a map on the remaining slot:
/// out += sum_w row[w] * f(w).
pub(crate) fn contract<'a>(
    field: Field,
    dim_out: usize,
    row: &[Scalar],
    f: impl Fn(usize) -> &'a [Scalar],
) -> Vec<Scalar> {
    let mut out = zero_vector(field, dim_out);
    for (w, c) in row.iter().enumerate() {
        if !c.is_zero() {
            vec_add_scaled(&mut out, c, f(w));
        }
    }
    out
}

/// Checks associativity of a structurally symmetric product.
pub fn check_comm_assoc(a: &CommAssocAlgebra) -> Check {
    let n = a.dim;
    Check::from_violation(first_failure(&[n, n, n], |t| {
        let (i, j, k) = (t[0], t[1], t[2]);
        let (left, right) = associator_on_basis(&a.product, i, j, k);
        (left != right).then(|| violation("associativity", t, left, right))
    }))
}

/// Fundamental identity of a ternary bracket on all basis 5-tuples:
/// {a, b, {c, d, e}} = {{a, b, c}, d, e} + {c, {a, b, d}, e} + {c, d, {a, b, e}}.
pub fn check_fundamental_identity(l: &ThreeLieAlgebra) -> Check {
    Check::from_violation(fundamental_identity_violation(&l.bracket))
}

pub(crate) fn fundamental_identity_violation(br: &TrilinearMap) -> Option<ViolationReport> {
    let n = br.dim_in();
    let field = br.field();
    first_failure(&[n, n, n, n, n], |t| {
        let (a, b, c, d, e) = (t[0], t[1], t[2], t[3], t[4]);
        let left = contract(field, n, br.on_basis(c, d, e), |w| br.on_basis(a, b, w));
        let mut right = contract(field, n, br.on_basis(a, b, c), |w| br.on_basis(w, d, e));
        vec_add_scaled(&mut right, &field.one(), &contract(field, n, br.on_basis(a, b, d), |w| br.on_basis(c, w, e)));
        vec_add_scaled(&mut right, &field.one(), &contract(field, n, br.on_basis(a, b, e), |w| br.on_basis(c, d, w)));
        (left != right).then(|| violation("fundamental identity", t, left, right))
    })
}

/// Leibniz rule on all basis 4-tuples:
/// {a, b, c . d} = {a, b, c} . d + c . {a, b, d}.
pub fn check_leibniz(a: &NambuPoissonAlgebra) -> Check {
    Check::from_violation(leibniz_violation(&a.product, &a.bracket))
}

pub(crate) fn leibniz_violation(product: &BilinearMap, br: &TrilinearMap) -> Option<ViolationReport> {
    let n = br.dim_in();
    let field = br.field();
    first_failure(&[n, n, n, n], |t| {
        let (a, b, c, d) = (t[0], t[1], t[2], t[3]);
        let left = contract(field, n, product.on_basis(c, d), |w| br.on_basis(a, b, w));
        let mut right = contract(field, n, br.on_basis(a, b, c), |w| product.on_basis(w, d));
        vec_add_scaled(&mut right, &field.one(), &contract(field, n, br.on_basis(a, b, d), |w| product.on_basis(c, w)));
        (left != right).then(|| violation("leibniz rule", t, left, right))
    })
}

/// Conjunction of associativity, the fundamental identity and the Leibniz
/// rule; the first failure is reported.
pub fn check_nambu_poisson(a: &NambuPoissonAlgebra) -> Check {
    let comm = CommAssocAlgebra {
        dim: a.dim,
        product: a.product.clone(),
    };
    let c = check_comm_assoc(&comm);
    if !c.is_pass() {
        return c;
    }
    if let Some(v) = fundamental_identity_violation(&a.bracket) {
        return Check::Fail(v);
    }
    Check::from_violation(leibniz_violation(&a.product, &a.bracket))
}

/// Jacobi identity in Leibniz form, binary Leibniz rule and associativity of
/// the product, on all basis tuples.
pub fn check_poisson(p: &PoissonAlgebra) -> Check {
    let n = p.dim;
    let field = p.field();
    let comm = CommAssocAlgebra {
        dim: n,
        product: p.product.clone(),
    };
    let c = check_comm_assoc(&comm);
    if !c.is_pass() {
        return c;
    }
    let br = &p.bracket;
    // {a, {b, c}} = {{a, b}, c} + {b, {a, c}}
    let jacobi = first_failure(&[n, n, n], |t| {
        let (a, b, c) = (t[0], t[1], t[2]);
        let left = contract(field, n, br.on_basis(b, c), |w| br.on_basis(a, w));
        let mut right = contract(field, n, br.on_basis(a, b), |w| br.on_basis(w, c));
        vec_add_scaled(&mut right, &field.one(), &contract(field, n, br.on_basis(a, c), |w| br.on_basis(b, w)));
        (left != right).then(|| violation("jacobi identity", t, left, right))
    });
    if let Some(v) = jacobi {
        return Check::Fail(v);
    }
    // {a, b . c} = {a, b} . c + b . {a, c}
    Check::from_violation(first_failure(&[n, n, n], |t| {
        let (a, b, c) = (t[0], t[1], t[2]);
        let left = contract(field, n, p.product.on_basis(b, c), |w| br.on_basis(a, w));
        let mut right = contract(field, n, br.on_basis(a, b), |w| p.product.on_basis(w, c));
        vec_add_scaled(&mut right, &field.one(), &contract(field, n, br.on_basis(a, c), |w| p.product.on_basis(b, w)));
        (left != right).then(|| violation("binary leibniz rule", t, left, right))
    }))
}

/// Fixes the first bracket coordinate at `x0`, producing the binary bracket
/// {a, b} = {x0, a, b} over the same product.
pub fn fix_coordinate(a: &NambuPoissonAlgebra, x0: &[Scalar]) -> Result<PoissonAlgebra> {
    if x0.len() != a.dim {
        return Err(Error::DimensionMismatch(format!(
            "x0 has dim {}, algebra has dim {}",
            x0.len(),
            a.dim
        )));
    }
    let n = a.dim;
    let field = a.field();
    let bracket = BilinearMap::build(field, n, n, Sym2::Skew, |i, j| {
        let mut out = zero_vector(field, n);
        for (w, c) in x0.iter().enumerate() {
            if !c.is_zero() {
                vec_add_scaled(&mut out, c, a.bracket.on_basis(w, i, j));
            }
        }
        out
    })?;
    PoissonAlgebra::new(a.product.clone(), bracket)
}

// ---------------------------------------------------------------------------
// evaluation on arbitrary vectors (used by the multilinearity-soundness
// property tests and by random-tuple spot checks)

/// Leibniz defect {x, y, z . w} - {x, y, z} . w - z . {x, y, w} on vectors.
pub fn leibniz_defect(
    a: &NambuPoissonAlgebra,
    x: &[Scalar],
    y: &[Scalar],
    z: &[Scalar],
    w: &[Scalar],
) -> Result<Vec<Scalar>> {
    let zw = a.product.apply(z, w)?;
    let lhs = a.bracket.apply(x, y, &zw)?;
    let t1 = a.product.apply(&a.bracket.apply(x, y, z)?, w)?;
    let t2 = a.product.apply(z, &a.bracket.apply(x, y, w)?)?;
    Ok(vec_sub(&lhs, &vec_add(&t1, &t2)))
}

/// Fundamental-identity defect on vectors.
pub fn fundamental_identity_defect(
    l: &TrilinearMap,
    a: &[Scalar],
    b: &[Scalar],
    c: &[Scalar],
    d: &[Scalar],
    e: &[Scalar],
) -> Result<Vec<Scalar>> {
    let lhs = l.apply(a, b, &l.apply(c, d, e)?)?;
    let r1 = l.apply(&l.apply(a, b, c)?, d, e)?;
    let r2 = l.apply(c, &l.apply(a, b, d)?, e)?;
    let r3 = l.apply(c, d, &l.apply(a, b, e)?)?;
    Ok(vec_sub(&lhs, &vec_add(&vec_add(&r1, &r2), &r3)))
}

/// Associativity defect on vectors.
pub fn associativity_defect(p: &BilinearMap, x: &[Scalar], y: &[Scalar], z: &[Scalar]) -> Result<Vec<Scalar>> {
    let lhs = p.apply(&p.apply(x, y)?, z)?;
    let rhs = p.apply(x, &p.apply(y, z)?)?;
    Ok(vec_sub(&lhs, &rhs))
}
