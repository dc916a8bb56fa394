//! Representations of 3-Lie and Nambu-Poisson algebras, adjoint
//! representations, semidirect products and the restriction to Poisson
//! representations.
//!
//! Action tensors are stored as explicit m x m matrix blocks: `mu[i]` is the
//! action of the i-th basis vector and `rho[i * n + j]` the action of the
//! (i, j) basis pair, antisymmetric in (i, j) by construction.

use crate::algebra::{
    violation, Check, NambuPoissonAlgebra, PoissonAlgebra, ThreeLieAlgebra, ViolationReport,
};
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::rng::SplitMix64;
use crate::scalar::{Field, Scalar};
use crate::scan::first_failure;
use crate::tensor::{BilinearMap, Sym2, Sym3, TrilinearMap};
use crate::vector::zero_vector;

fn flat(m: &Matrix) -> Vec<Scalar> {
    let mut out = Vec::with_capacity(m.rows() * m.cols());
    for i in 0..m.rows() {
        out.extend_from_slice(m.row(i));
    }
    out
}

fn validate_blocks(n: usize, m: usize, field: Field, mats: &[Matrix], what: &str) -> Result<()> {
    let _ = n;
    for mat in mats {
        if mat.rows() != m || mat.cols() != m {
            return Err(Error::DimensionMismatch(format!(
                "{what} block must be {m}x{m}, got {}x{}",
                mat.rows(),
                mat.cols()
            )));
        }
        if mat.field() != field {
            return Err(Error::FieldMismatch(format!("{what} block field")));
        }
    }
    Ok(())
}

fn validate_rho_skew(n: usize, rho: &[Matrix]) -> Result<()> {
    for i in 0..n {
        for j in 0..n {
            if rho[i * n + j] != rho[j * n + i].neg() {
                return Err(Error::SymmetryViolation(format!(
                    "rho({i},{j}) != -rho({j},{i})"
                )));
            }
        }
    }
    Ok(())
}

/// A skew bilinear action of a 3-Lie algebra on a module.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ThreeLieRep {
    pub algebra_dim: usize,
    pub module_dim: usize,
    rho: Vec<Matrix>,
}

impl ThreeLieRep {
    pub fn new(algebra_dim: usize, module_dim: usize, field: Field, rho: Vec<Matrix>) -> Result<Self> {
        if rho.len() != algebra_dim * algebra_dim {
            return Err(Error::DimensionMismatch(format!(
                "expected {} rho blocks, got {}",
                algebra_dim * algebra_dim,
                rho.len()
            )));
        }
        validate_blocks(algebra_dim, module_dim, field, &rho, "rho")?;
        validate_rho_skew(algebra_dim, &rho)?;
        Ok(ThreeLieRep {
            algebra_dim,
            module_dim,
            rho,
        })
    }

    pub fn zero(field: Field, algebra_dim: usize, module_dim: usize) -> Self {
        ThreeLieRep {
            algebra_dim,
            module_dim,
            rho: vec![Matrix::zeros(field, module_dim, module_dim); algebra_dim * algebra_dim],
        }
    }

    pub fn rho(&self, i: usize, j: usize) -> &Matrix {
        &self.rho[i * self.algebra_dim + j]
    }

    pub fn blocks(&self) -> &[Matrix] {
        &self.rho
    }
}

/// A module over a Nambu-Poisson algebra: a multiplicative unary action mu
/// and a skew binary action rho.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NPRepresentation {
    pub algebra_dim: usize,
    pub module_dim: usize,
    mu: Vec<Matrix>,
    rho: Vec<Matrix>,
}

impl NPRepresentation {
    pub fn new(
        algebra_dim: usize,
        module_dim: usize,
        field: Field,
        mu: Vec<Matrix>,
        rho: Vec<Matrix>,
    ) -> Result<Self> {
        if mu.len() != algebra_dim || rho.len() != algebra_dim * algebra_dim {
            return Err(Error::DimensionMismatch(format!(
                "expected {} mu and {} rho blocks, got {} and {}",
                algebra_dim,
                algebra_dim * algebra_dim,
                mu.len(),
                rho.len()
            )));
        }
        validate_blocks(algebra_dim, module_dim, field, &mu, "mu")?;
        validate_blocks(algebra_dim, module_dim, field, &rho, "rho")?;
        validate_rho_skew(algebra_dim, &rho)?;
        Ok(NPRepresentation {
            algebra_dim,
            module_dim,
            mu,
            rho,
        })
    }

    pub fn zero(field: Field, algebra_dim: usize, module_dim: usize) -> Self {
        NPRepresentation {
            algebra_dim,
            module_dim,
            mu: vec![Matrix::zeros(field, module_dim, module_dim); algebra_dim],
            rho: vec![Matrix::zeros(field, module_dim, module_dim); algebra_dim * algebra_dim],
        }
    }

    pub fn field(&self) -> Field {
        self.mu
            .first()
            .map(Matrix::field)
            .unwrap_or(Field::Rational)
    }

    pub fn mu(&self, i: usize) -> &Matrix {
        &self.mu[i]
    }

    pub fn rho(&self, i: usize, j: usize) -> &Matrix {
        &self.rho[i * self.algebra_dim + j]
    }

    /// mu extended linearly to an algebra vector.
    pub fn mu_of(&self, a: &[Scalar]) -> Matrix {
        assert_eq!(a.len(), self.algebra_dim);
        let mut acc = Matrix::zeros(self.field(), self.module_dim, self.module_dim);
        for (i, c) in a.iter().enumerate() {
            if !c.is_zero() {
                acc = acc.add(&self.mu[i].scale(c));
            }
        }
        acc
    }

    /// rho extended bilinearly to algebra vectors.
    pub fn rho_of(&self, a: &[Scalar], b: &[Scalar]) -> Matrix {
        assert_eq!(a.len(), self.algebra_dim);
        assert_eq!(b.len(), self.algebra_dim);
        let mut acc = Matrix::zeros(self.field(), self.module_dim, self.module_dim);
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                acc = acc.add(&self.rho(i, j).scale(&(x * y)));
            }
        }
        acc
    }

    pub fn three_lie_part(&self) -> ThreeLieRep {
        ThreeLieRep {
            algebra_dim: self.algebra_dim,
            module_dim: self.module_dim,
            rho: self.rho.clone(),
        }
    }

    /// Deterministic random representation candidate (usually not a valid
    /// representation; used to exercise checkers).
    pub fn random(
        field: Field,
        algebra_dim: usize,
        module_dim: usize,
        rng: &mut SplitMix64,
        bound: u32,
    ) -> Self {
        let mu = (0..algebra_dim)
            .map(|_| Matrix::from_fn(field, module_dim, module_dim, |_, _| rng.scalar(field, bound)))
            .collect();
        let mut rho = vec![Matrix::zeros(field, module_dim, module_dim); algebra_dim * algebra_dim];
        for i in 0..algebra_dim {
            for j in (i + 1)..algebra_dim {
                let block = Matrix::from_fn(field, module_dim, module_dim, |_, _| rng.scalar(field, bound));
                rho[j * algebra_dim + i] = block.neg();
                rho[i * algebra_dim + j] = block;
            }
        }
        NPRepresentation {
            algebra_dim,
            module_dim,
            mu,
            rho,
        }
    }
}

/// Unary actions of a Poisson algebra: multiplicative mu and a Lie action.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PoissonRep {
    pub algebra_dim: usize,
    pub module_dim: usize,
    mu: Vec<Matrix>,
    rho_x0: Vec<Matrix>,
}

impl PoissonRep {
    pub fn mu(&self, i: usize) -> &Matrix {
        &self.mu[i]
    }

    pub fn rho_x0(&self, i: usize) -> &Matrix {
        &self.rho_x0[i]
    }
}

fn matrix_identity_violation(axiom: &str, witness: &[usize], left: Matrix, right: Matrix) -> Option<ViolationReport> {
    (left != right).then(|| violation(axiom, witness, flat(&left), flat(&right)))
}

fn check_dims(algebra_dim: usize, rep_dim: usize) -> Result<()> {
    if algebra_dim != rep_dim {
        return Err(Error::DimensionMismatch(format!(
            "representation is over a dim-{rep_dim} algebra, got dim {algebra_dim}"
        )));
    }
    Ok(())
}

/// Both 3-Lie representation identities on all basis 4-tuples.
pub fn check_3lie_rep(l: &ThreeLieAlgebra, r: &ThreeLieRep) -> Result<Check> {
    check_dims(l.dim, r.algebra_dim)?;
    Ok(Check::from_violation(three_lie_rep_violation(&l.bracket, r)))
}

fn rho_of_bracket(br_row: &[Scalar], rho: impl Fn(usize) -> Matrix, field: Field, m: usize) -> Matrix {
    let mut acc = Matrix::zeros(field, m, m);
    for (w, c) in br_row.iter().enumerate() {
        if !c.is_zero() {
            acc = acc.add(&rho(w).scale(c));
        }
    }
    acc
}

fn three_lie_rep_violation(br: &TrilinearMap, r: &ThreeLieRep) -> Option<ViolationReport> {
    let n = r.algebra_dim;
    let m = r.module_dim;
    let field = br.field();
    first_failure(&[n, n, n, n], |t| {
        let (a, b, c, d) = (t[0], t[1], t[2], t[3]);
        // rho(a,b) rho(c,d) - rho(c,d) rho(a,b) = rho({a,b,c}, d) + rho(c, {a,b,d})
        let left = r.rho(a, b).mul(r.rho(c, d)).sub(&r.rho(c, d).mul(r.rho(a, b)));
        let right = rho_of_bracket(br.on_basis(a, b, c), |w| r.rho(w, d).clone(), field, m).add(
            &rho_of_bracket(br.on_basis(a, b, d), |w| r.rho(c, w).clone(), field, m),
        );
        if let Some(v) = matrix_identity_violation("3-lie representation identity (commutator)", t, left, right) {
            return Some(v);
        }
        // rho({a,b,c}, d) = rho(a,b) rho(c,d) + rho(b,c) rho(a,d) + rho(c,a) rho(b,d)
        let left = rho_of_bracket(br.on_basis(a, b, c), |w| r.rho(w, d).clone(), field, m);
        let right = r
            .rho(a, b)
            .mul(r.rho(c, d))
            .add(&r.rho(b, c).mul(r.rho(a, d)))
            .add(&r.rho(c, a).mul(r.rho(b, d)));
        matrix_identity_violation("3-lie representation identity (expansion)", t, left, right)
    })
}

/// Full Nambu-Poisson representation check: mu multiplicative, rho a 3-Lie
/// representation, and the two mixed identities.
pub fn check_np_rep(a: &NambuPoissonAlgebra, r: &NPRepresentation) -> Result<Check> {
    check_dims(a.dim, r.algebra_dim)?;
    let n = a.dim;
    let m = r.module_dim;
    let field = a.field();

    // mu(a . b) = mu(a) mu(b)
    let mult = first_failure(&[n, n], |t| {
        let (i, j) = (t[0], t[1]);
        let left = rho_of_bracket(a.product.on_basis(i, j), |w| r.mu(w).clone(), field, m);
        let right = r.mu(i).mul(r.mu(j));
        matrix_identity_violation("mu multiplicativity", t, left, right)
    });
    if let Some(v) = mult {
        return Ok(Check::Fail(v));
    }

    if let Some(v) = three_lie_rep_violation(&a.bracket, &r.three_lie_part()) {
        return Ok(Check::Fail(v));
    }

    // mu({a,b,c}) = rho(a,b) mu(c) - mu(c) rho(a,b)
    // rho(a, b . c) = mu(b) rho(a,c) + mu(c) rho(a,b)
    Ok(Check::from_violation(first_failure(&[n, n, n], |t| {
        let (x, y, z) = (t[0], t[1], t[2]);
        let left = rho_of_bracket(a.bracket.on_basis(x, y, z), |w| r.mu(w).clone(), field, m);
        let right = r.rho(x, y).mul(r.mu(z)).sub(&r.mu(z).mul(r.rho(x, y)));
        if let Some(v) = matrix_identity_violation("mu of bracket identity", t, left, right) {
            return Some(v);
        }
        let left = rho_of_bracket(a.product.on_basis(y, z), |w| r.rho(x, w).clone(), field, m);
        let right = r.mu(y).mul(r.rho(x, z)).add(&r.mu(z).mul(r.rho(x, y)));
        matrix_identity_violation("rho of product identity", t, left, right)
    })))
}

/// The algebra acting on itself: mu(a) b = a . b and rho(a, b) c = {a, b, c}.
pub fn adjoint_rep(a: &NambuPoissonAlgebra) -> NPRepresentation {
    let n = a.dim;
    let field = a.field();
    let mu = (0..n)
        .map(|i| Matrix::from_fn(field, n, n, |row, col| a.product.entry(i, col, row).clone()))
        .collect();
    let mut rho = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            rho.push(Matrix::from_fn(field, n, n, |row, col| {
                a.bracket.entry(i, j, col, row).clone()
            }));
        }
    }
    NPRepresentation {
        algebra_dim: n,
        module_dim: n,
        mu,
        rho,
    }
}

/// The semidirect 3-Lie bracket on L + V:
/// {(a,u),(b,v),(c,w)} = ({a,b,c}, rho(a,b)w + rho(b,c)u + rho(c,a)v).
pub fn semidirect_3lie(l: &ThreeLieAlgebra, r: &ThreeLieRep) -> Result<ThreeLieAlgebra> {
    check_dims(l.dim, r.algebra_dim)?;
    let n = l.dim;
    let m = r.module_dim;
    let total = n + m;
    let field = l.bracket.field();

    let bracket = TrilinearMap::build(field, total, total, Sym3::FullySkew, |x, y, z| {
        let mut out = zero_vector(field, total);
        let alg = |i: usize| i < n;
        match (alg(x), alg(y), alg(z)) {
            (true, true, true) => {
                for (w, c) in l.bracket.on_basis(x, y, z).iter().enumerate() {
                    out[w] = c.clone();
                }
            }
            // one module slot: the rho term acting on it
            (true, true, false) => {
                let col = z - n;
                for row in 0..m {
                    out[n + row] = r.rho(x, y).get(row, col).clone();
                }
            }
            (true, false, true) => {
                let col = y - n;
                // rho(c, a) v with a = x, c = z
                for row in 0..m {
                    out[n + row] = r.rho(z, x).get(row, col).clone();
                }
            }
            (false, true, true) => {
                let col = x - n;
                // rho(b, c) u with b = y, c = z
                for row in 0..m {
                    out[n + row] = r.rho(y, z).get(row, col).clone();
                }
            }
            // two or three module slots vanish
            _ => {}
        }
        out
    })?;
    ThreeLieAlgebra::new(bracket)
}

/// The semidirect Nambu-Poisson structure on A + V.
pub fn semidirect_np(a: &NambuPoissonAlgebra, r: &NPRepresentation) -> Result<NambuPoissonAlgebra> {
    check_dims(a.dim, r.algebra_dim)?;
    let n = a.dim;
    let m = r.module_dim;
    let total = n + m;
    let field = a.field();

    let product = BilinearMap::build(field, total, total, Sym2::Symmetric, |x, y| {
        let mut out = zero_vector(field, total);
        match (x < n, y < n) {
            (true, true) => {
                for (w, c) in a.product.on_basis(x, y).iter().enumerate() {
                    out[w] = c.clone();
                }
            }
            (true, false) => {
                let col = y - n;
                for row in 0..m {
                    out[n + row] = r.mu(x).get(row, col).clone();
                }
            }
            (false, true) => {
                let col = x - n;
                for row in 0..m {
                    out[n + row] = r.mu(y).get(row, col).clone();
                }
            }
            (false, false) => {}
        }
        out
    })?;
    let lie = semidirect_3lie(
        &ThreeLieAlgebra {
            dim: n,
            bracket: a.bracket.clone(),
        },
        &r.three_lie_part(),
    )?;
    NambuPoissonAlgebra::new(product, lie.bracket)
}

/// Restricts a Nambu-Poisson representation along x0: rho_x0(a) = rho(x0, a).
pub fn restrict_rep_x0(a: &NambuPoissonAlgebra, r: &NPRepresentation, x0: &[Scalar]) -> Result<PoissonRep> {
    check_dims(a.dim, r.algebra_dim)?;
    if x0.len() != a.dim {
        return Err(Error::DimensionMismatch(format!(
            "x0 has dim {}, algebra has dim {}",
            x0.len(),
            a.dim
        )));
    }
    let n = a.dim;
    let m = r.module_dim;
    let field = a.field();
    let rho_x0 = (0..n)
        .map(|i| {
            let mut acc = Matrix::zeros(field, m, m);
            for (w, c) in x0.iter().enumerate() {
                if !c.is_zero() {
                    acc = acc.add(&r.rho(w, i).scale(c));
                }
            }
            acc
        })
        .collect();
    Ok(PoissonRep {
        algebra_dim: n,
        module_dim: m,
        mu: (0..n).map(|i| r.mu(i).clone()).collect(),
        rho_x0,
    })
}

/// The four Poisson representation identities on basis tuples:
/// mu multiplicative, rho_x0 a Lie action, and the two mixed identities.
pub fn check_poisson_rep(p: &PoissonAlgebra, r: &PoissonRep) -> Result<Check> {
    check_dims(p.dim, r.algebra_dim)?;
    let n = p.dim;
    let m = r.module_dim;
    let field = p.field();
    Ok(Check::from_violation(first_failure(&[n, n], |t| {
        let (a, b) = (t[0], t[1]);
        let left = rho_of_bracket(p.product.on_basis(a, b), |w| r.mu(w).clone(), field, m);
        let right = r.mu(a).mul(r.mu(b));
        if let Some(v) = matrix_identity_violation("mu multiplicativity", t, left, right) {
            return Some(v);
        }
        // rho_x0({a,b}) = [rho_x0(a), rho_x0(b)]
        let left = rho_of_bracket(p.bracket.on_basis(a, b), |w| r.rho_x0(w).clone(), field, m);
        let right = r
            .rho_x0(a)
            .mul(r.rho_x0(b))
            .sub(&r.rho_x0(b).mul(r.rho_x0(a)));
        if let Some(v) = matrix_identity_violation("lie action identity", t, left, right) {
            return Some(v);
        }
        // mu({a,b}) = rho_x0(a) mu(b) - mu(b) rho_x0(a)
        let left = rho_of_bracket(p.bracket.on_basis(a, b), |w| r.mu(w).clone(), field, m);
        let right = r.rho_x0(a).mul(r.mu(b)).sub(&r.mu(b).mul(r.rho_x0(a)));
        if let Some(v) = matrix_identity_violation("mu of bracket identity", t, left, right) {
            return Some(v);
        }
        // rho_x0(a . b) = mu(a) rho_x0(b) + mu(b) rho_x0(a)
        let left = rho_of_bracket(p.product.on_basis(a, b), |w| r.rho_x0(w).clone(), field, m);
        let right = r.mu(a).mul(r.rho_x0(b)).add(&r.mu(b).mul(r.rho_x0(a)));
        matrix_identity_violation("rho of product identity", t, left, right)
    })))
}
