//! Second cohomology of a Nambu-Poisson algebra with coefficients in a
//! representation: cocycle checkers, coboundaries, twisted semidirect
//! products, and the dimension computation of H^2 by exact linear algebra.
//!
//! The cocycle conditions are linear in the pair (phi, psi). They are
//! assembled as one linear system over the canonical coordinates (phi on
//! `i <= j` slots, psi on `i < j < k` slots); duplicate rows coming from
//! symmetry are left in, since exact rank is unaffected.

use crate::algebra::{contract, violation, Check, NambuPoissonAlgebra, PoissonAlgebra, ViolationReport};
use crate::error::{Error, Result};
use crate::matrix::{Matrix, RowEchelon};
use crate::rep::{check_np_rep, NPRepresentation, PoissonRep};
use crate::scalar::{Field, Scalar};
use crate::scan::first_failure;
use crate::tensor::{BilinearMap, LinearMap, Sym2, Sym3, TrilinearMap};
use crate::vector::{vec_add_scaled, vec_sub, zero_vector};

/// A symmetric bilinear and a fully skew trilinear map into a module,
/// candidate for a Nambu-Poisson 2-cocycle.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CocyclePair {
    pub phi: BilinearMap,
    pub psi: TrilinearMap,
}

impl CocyclePair {
    pub fn new(phi: BilinearMap, psi: TrilinearMap) -> Result<CocyclePair> {
        if phi.sym() != Sym2::Symmetric {
            return Err(Error::SymmetryViolation("phi must be symmetric".into()));
        }
        if psi.sym() != Sym3::FullySkew {
            return Err(Error::SymmetryViolation("psi must be fully skew".into()));
        }
        if phi.dim_in() != psi.dim_in() || phi.dim_out() != psi.dim_out() {
            return Err(Error::DimensionMismatch(
                "phi and psi must share source and target dimensions".into(),
            ));
        }
        Ok(CocyclePair { phi, psi })
    }

    pub fn zero(field: Field, algebra_dim: usize, module_dim: usize) -> CocyclePair {
        CocyclePair {
            phi: BilinearMap::zero(field, algebra_dim, module_dim, Sym2::Symmetric),
            psi: TrilinearMap::zero(field, algebra_dim, module_dim, Sym3::FullySkew),
        }
    }

    pub fn algebra_dim(&self) -> usize {
        self.phi.dim_in()
    }

    pub fn module_dim(&self) -> usize {
        self.phi.dim_out()
    }
}

/// Dimensions of the cocycle space, the coboundary space and their quotient.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CohomologyDims {
    pub dim_z2: usize,
    pub dim_b2: usize,
    pub dim_h2: usize,
}

fn check_pair_dims(
    a: &NambuPoissonAlgebra,
    r: &NPRepresentation,
    phi: Option<&BilinearMap>,
    psi: Option<&TrilinearMap>,
) -> Result<()> {
    if r.algebra_dim != a.dim {
        return Err(Error::DimensionMismatch(
            "representation and algebra dimensions differ".into(),
        ));
    }
    if let Some(phi) = phi {
        if phi.dim_in() != a.dim || phi.dim_out() != r.module_dim {
            return Err(Error::DimensionMismatch(format!(
                "phi must map {0} x {0} into the module of dim {1}",
                a.dim, r.module_dim
            )));
        }
    }
    if let Some(psi) = psi {
        if psi.dim_in() != a.dim || psi.dim_out() != r.module_dim {
            return Err(Error::DimensionMismatch(format!(
                "psi must map {0}^3 into the module of dim {1}",
                a.dim, r.module_dim
            )));
        }
    }
    Ok(())
}

/// Harrison 2-cocycle condition on all basis triples:
/// mu(a) phi(b,c) - phi(a.b, c) + phi(a, b.c) - mu(c) phi(a,b) = 0.
pub fn check_harrison_2cocycle(
    a: &NambuPoissonAlgebra,
    r: &NPRepresentation,
    phi: &BilinearMap,
) -> Result<Check> {
    if phi.sym() != Sym2::Symmetric {
        return Err(Error::SymmetryViolation("phi must be symmetric".into()));
    }
    check_pair_dims(a, r, Some(phi), None)?;
    Ok(Check::from_violation(harrison_violation(a, r, phi)))
}

fn harrison_violation(
    a: &NambuPoissonAlgebra,
    r: &NPRepresentation,
    phi: &BilinearMap,
) -> Option<ViolationReport> {
    let n = a.dim;
    let m = r.module_dim;
    let field = a.field();
    first_failure(&[n, n, n], |t| {
        let (x, y, z) = (t[0], t[1], t[2]);
        // mu(a) phi(b,c) + phi(a, b.c)  vs  phi(a.b, c) + mu(c) phi(a,b)
        let mut left = r.mu(x).apply(phi.on_basis(y, z));
        vec_add_scaled(&mut left, &field.one(), &contract(field, m, a.product.on_basis(y, z), |w| phi.on_basis(x, w)));
        let mut right = contract(field, m, a.product.on_basis(x, y), |w| phi.on_basis(w, z));
        vec_add_scaled(&mut right, &field.one(), &r.mu(z).apply(phi.on_basis(x, y)));
        (left != right).then(|| violation("harrison 2-cocycle condition", t, left, right))
    })
}

/// 3-Lie 2-cocycle condition on all basis 5-tuples.
pub fn check_3lie_2cocycle(
    a: &NambuPoissonAlgebra,
    r: &NPRepresentation,
    psi: &TrilinearMap,
) -> Result<Check> {
    if psi.sym() != Sym3::FullySkew {
        return Err(Error::SymmetryViolation("psi must be fully skew".into()));
    }
    check_pair_dims(a, r, None, Some(psi))?;
    Ok(Check::from_violation(three_lie_cocycle_violation(a, r, psi)))
}

fn three_lie_cocycle_violation(
    a: &NambuPoissonAlgebra,
    r: &NPRepresentation,
    psi: &TrilinearMap,
) -> Option<ViolationReport> {
    let n = a.dim;
    let m = r.module_dim;
    let field = a.field();
    let br = &a.bracket;
    first_failure(&[n, n, n, n, n], |t| {
        let (x, y, c, d, e) = (t[0], t[1], t[2], t[3], t[4]);
        // psi(a, b, {c,d,e}) + rho(a,b) psi(c,d,e)
        let mut left = contract(field, m, br.on_basis(c, d, e), |w| psi.on_basis(x, y, w));
        vec_add_scaled(&mut left, &field.one(), &r.rho(x, y).apply(psi.on_basis(c, d, e)));
        // psi({a,b,c}, d, e) + psi(c, {a,b,d}, e) + psi(c, d, {a,b,e})
        //   + rho(d,e) psi(a,b,c) + rho(e,c) psi(a,b,d) + rho(c,d) psi(a,b,e)
        let mut right = contract(field, m, br.on_basis(x, y, c), |w| psi.on_basis(w, d, e));
        vec_add_scaled(&mut right, &field.one(), &contract(field, m, br.on_basis(x, y, d), |w| psi.on_basis(c, w, e)));
        vec_add_scaled(&mut right, &field.one(), &contract(field, m, br.on_basis(x, y, e), |w| psi.on_basis(c, d, w)));
        vec_add_scaled(&mut right, &field.one(), &r.rho(d, e).apply(psi.on_basis(x, y, c)));
        vec_add_scaled(&mut right, &field.one(), &r.rho(e, c).apply(psi.on_basis(x, y, d)));
        vec_add_scaled(&mut right, &field.one(), &r.rho(c, d).apply(psi.on_basis(x, y, e)));
        (left != right).then(|| violation("3-lie 2-cocycle condition", t, left, right))
    })
}

/// Compatibility condition of a Nambu-Poisson 2-cocycle on basis 4-tuples:
/// psi(a,b,c.d) + rho(a,b) phi(c,d)
///   = phi(c, {a,b,d}) + mu(c) psi(a,b,d) + phi({a,b,c}, d) + mu(d) psi(a,b,c).
fn compatibility_violation(
    a: &NambuPoissonAlgebra,
    r: &NPRepresentation,
    pair: &CocyclePair,
) -> Option<ViolationReport> {
    let n = a.dim;
    let m = r.module_dim;
    let field = a.field();
    let (phi, psi) = (&pair.phi, &pair.psi);
    first_failure(&[n, n, n, n], |t| {
        let (x, y, c, d) = (t[0], t[1], t[2], t[3]);
        let mut left = contract(field, m, a.product.on_basis(c, d), |w| psi.on_basis(x, y, w));
        vec_add_scaled(&mut left, &field.one(), &r.rho(x, y).apply(phi.on_basis(c, d)));
        let mut right = contract(field, m, a.bracket.on_basis(x, y, d), |w| phi.on_basis(c, w));
        vec_add_scaled(&mut right, &field.one(), &r.mu(c).apply(psi.on_basis(x, y, d)));
        vec_add_scaled(&mut right, &field.one(), &contract(field, m, a.bracket.on_basis(x, y, c), |w| phi.on_basis(w, d)));
        vec_add_scaled(&mut right, &field.one(), &r.mu(d).apply(psi.on_basis(x, y, c)));
        (left != right).then(|| violation("nambu-poisson 2-cocycle compatibility", t, left, right))
    })
}

/// Full Nambu-Poisson 2-cocycle check: Harrison + 3-Lie + compatibility.
pub fn check_np_2cocycle(
    a: &NambuPoissonAlgebra,
    r: &NPRepresentation,
    pair: &CocyclePair,
) -> Result<Check> {
    check_pair_dims(a, r, Some(&pair.phi), Some(&pair.psi))?;
    if let Some(v) = harrison_violation(a, r, &pair.phi) {
        return Ok(Check::Fail(v));
    }
    if let Some(v) = three_lie_cocycle_violation(a, r, &pair.psi) {
        return Ok(Check::Fail(v));
    }
    Ok(Check::from_violation(compatibility_violation(a, r, pair)))
}

/// The coboundary pair of a linear map f: A -> V:
/// phi_f(a,b) = mu(a) f(b) - f(a.b) + mu(b) f(a),
/// psi_f(a,b,c) = rho(a,b) f(c) + rho(b,c) f(a) + rho(c,a) f(b) - f({a,b,c}).
pub fn coboundary(a: &NambuPoissonAlgebra, r: &NPRepresentation, f: &LinearMap) -> Result<CocyclePair> {
    if f.dim_in() != a.dim || f.dim_out() != r.module_dim {
        return Err(Error::DimensionMismatch(format!(
            "f must map the dim-{} algebra into the dim-{} module",
            a.dim, r.module_dim
        )));
    }
    check_pair_dims(a, r, None, None)?;
    let n = a.dim;
    let m = r.module_dim;
    let field = a.field();
    let f_on: Vec<Vec<Scalar>> = (0..n).map(|i| f.on_basis(i)).collect();

    let phi = BilinearMap::build(field, n, m, Sym2::Symmetric, |i, j| {
        let mut out = r.mu(i).apply(&f_on[j]);
        let f_prod = contract(field, m, a.product.on_basis(i, j), |w| &f_on[w]);
        let mut out2 = vec_sub(&out, &f_prod);
        out = r.mu(j).apply(&f_on[i]);
        vec_add_scaled(&mut out2, &field.one(), &out);
        out2
    })?;
    let psi = TrilinearMap::build(field, n, m, Sym3::FullySkew, |i, j, k| {
        let mut out = r.rho(i, j).apply(&f_on[k]);
        vec_add_scaled(&mut out, &field.one(), &r.rho(j, k).apply(&f_on[i]));
        vec_add_scaled(&mut out, &field.one(), &r.rho(k, i).apply(&f_on[j]));
        let f_br = contract(field, m, a.bracket.on_basis(i, j, k), |w| &f_on[w]);
        vec_sub(&out, &f_br)
    })?;
    CocyclePair::new(phi, psi)
}

/// The (phi, psi)-twisted semidirect product on A + V:
/// (a,u).(b,v) = (a.b, mu(a)v + mu(b)u + phi(a,b)) and the bracket analogue
/// with the psi term.
pub fn twisted_semidirect(
    a: &NambuPoissonAlgebra,
    r: &NPRepresentation,
    pair: &CocyclePair,
) -> Result<NambuPoissonAlgebra> {
    check_pair_dims(a, r, Some(&pair.phi), Some(&pair.psi))?;
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
                for (v, c) in pair.phi.on_basis(x, y).iter().enumerate() {
                    out[n + v] = c.clone();
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

    let bracket = TrilinearMap::build(field, total, total, Sym3::FullySkew, |x, y, z| {
        let mut out = zero_vector(field, total);
        match (x < n, y < n, z < n) {
            (true, true, true) => {
                for (w, c) in a.bracket.on_basis(x, y, z).iter().enumerate() {
                    out[w] = c.clone();
                }
                for (v, c) in pair.psi.on_basis(x, y, z).iter().enumerate() {
                    out[n + v] = c.clone();
                }
            }
            (true, true, false) => {
                let col = z - n;
                for row in 0..m {
                    out[n + row] = r.rho(x, y).get(row, col).clone();
                }
            }
            (true, false, true) => {
                let col = y - n;
                for row in 0..m {
                    out[n + row] = r.rho(z, x).get(row, col).clone();
                }
            }
            (false, true, true) => {
                let col = x - n;
                for row in 0..m {
                    out[n + row] = r.rho(y, z).get(row, col).clone();
                }
            }
            _ => {}
        }
        out
    })?;
    NambuPoissonAlgebra::new(product, bracket)
}

// ---------------------------------------------------------------------------
// linearization: canonical coordinates and the Z^2 constraint system

/// Canonical coordinates of cocycle pairs over (A, V): the layout of the
/// unknown vector used by the Z^2 constraint system.
#[derive(Debug, Clone)]
pub struct CocycleCoords {
    algebra_dim: usize,
    module_dim: usize,
    pairs: Vec<(usize, usize)>,
    triples: Vec<(usize, usize, usize)>,
    pair_pos: Vec<usize>,
    triple_pos: Vec<usize>,
}

impl CocycleCoords {
    pub fn new(algebra_dim: usize, module_dim: usize) -> CocycleCoords {
        let n = algebra_dim;
        let mut pairs = Vec::new();
        let mut pair_pos = vec![usize::MAX; n * n];
        for i in 0..n {
            for j in i..n {
                pair_pos[i * n + j] = pairs.len();
                pairs.push((i, j));
            }
        }
        let mut triples = Vec::new();
        let mut triple_pos = vec![usize::MAX; n * n * n];
        for i in 0..n {
            for j in (i + 1)..n {
                for k in (j + 1)..n {
                    triple_pos[(i * n + j) * n + k] = triples.len();
                    triples.push((i, j, k));
                }
            }
        }
        CocycleCoords {
            algebra_dim,
            module_dim,
            pairs,
            triples,
            pair_pos,
            triple_pos,
        }
    }

    pub fn total(&self) -> usize {
        (self.pairs.len() + self.triples.len()) * self.module_dim
    }

    fn phi_col(&self, i: usize, j: usize, v: usize) -> usize {
        let (i, j) = if i <= j { (i, j) } else { (j, i) };
        self.pair_pos[i * self.algebra_dim + j] * self.module_dim + v
    }

    /// Column and sign for a psi slot; None when an index repeats.
    fn psi_col(&self, i: usize, j: usize, k: usize, v: usize) -> Option<(usize, bool)> {
        if i == j || j == k || i == k {
            return None;
        }
        let mut idx = [i, j, k];
        let mut neg = false;
        // sort three elements, tracking parity
        if idx[0] > idx[1] {
            idx.swap(0, 1);
            neg = !neg;
        }
        if idx[1] > idx[2] {
            idx.swap(1, 2);
            neg = !neg;
        }
        if idx[0] > idx[1] {
            idx.swap(0, 1);
            neg = !neg;
        }
        let n = self.algebra_dim;
        let base = self.pairs.len() * self.module_dim;
        let pos = self.triple_pos[(idx[0] * n + idx[1]) * n + idx[2]];
        Some((base + pos * self.module_dim + v, neg))
    }

    /// Flattens a pair into its canonical coordinate vector.
    pub fn coordinates(&self, pair: &CocyclePair) -> Vec<Scalar> {
        let field = pair.phi.field();
        let mut out = zero_vector(field, self.total());
        for (pos, &(i, j)) in self.pairs.iter().enumerate() {
            for v in 0..self.module_dim {
                out[pos * self.module_dim + v] = pair.phi.entry(i, j, v).clone();
            }
        }
        let base = self.pairs.len() * self.module_dim;
        for (pos, &(i, j, k)) in self.triples.iter().enumerate() {
            for v in 0..self.module_dim {
                out[base + pos * self.module_dim + v] = pair.psi.entry(i, j, k, v).clone();
            }
        }
        out
    }

    /// Rebuilds a pair from canonical coordinates.
    pub fn pair_from_coordinates(&self, field: Field, coords: &[Scalar]) -> Result<CocyclePair> {
        if coords.len() != self.total() {
            return Err(Error::DimensionMismatch(format!(
                "expected {} coordinates, got {}",
                self.total(),
                coords.len()
            )));
        }
        let mut phi_entries = Vec::new();
        for (pos, &(i, j)) in self.pairs.iter().enumerate() {
            for v in 0..self.module_dim {
                let c = coords[pos * self.module_dim + v].clone();
                if !c.is_zero() {
                    phi_entries.push((i, j, v, c));
                }
            }
        }
        let base = self.pairs.len() * self.module_dim;
        let mut psi_entries = Vec::new();
        for (pos, &(i, j, k)) in self.triples.iter().enumerate() {
            for v in 0..self.module_dim {
                let c = coords[base + pos * self.module_dim + v].clone();
                if !c.is_zero() {
                    psi_entries.push((i, j, k, v, c));
                }
            }
        }
        CocyclePair::new(
            BilinearMap::from_entries(field, self.algebra_dim, self.module_dim, Sym2::Symmetric, &phi_entries)?,
            TrilinearMap::from_entries(field, self.algebra_dim, self.module_dim, Sym3::FullySkew, &psi_entries)?,
        )
    }
}

fn add_coeff(row: &mut [Scalar], col: usize, c: &Scalar) {
    row[col] = &row[col] + c;
}

fn add_signed(row: &mut [Scalar], col: usize, neg: bool, c: &Scalar) {
    if neg {
        row[col] = &row[col] - c;
    } else {
        row[col] = &row[col] + c;
    }
}

/// Streams every row of the Z^2 constraint system into `sink`.
///
/// One row per (basis tuple, output coordinate) instance of the Harrison,
/// 3-Lie and compatibility conditions. The assembly works directly on
/// structure constants, independently of the evaluation path the checkers
/// use, so rank/nullity results can cross-check them.
fn for_each_z2_row(
    a: &NambuPoissonAlgebra,
    r: &NPRepresentation,
    coords: &CocycleCoords,
    mut sink: impl FnMut(Vec<Scalar>),
) {
    let n = a.dim;
    let m = r.module_dim;
    let field = a.field();
    let cols = coords.total();

    // Harrison rows: mu(a) phi(b,c) - phi(a.b, c) + phi(a, b.c) - mu(c) phi(a,b)
    for p in 0..n {
        for q in 0..n {
            for s in 0..n {
                for v in 0..m {
                    let mut row = zero_vector(field, cols);
                    for w in 0..m {
                        let c = r.mu(p).get(v, w);
                        if !c.is_zero() {
                            add_coeff(&mut row, coords.phi_col(q, s, w), c);
                        }
                        let c = r.mu(s).get(v, w);
                        if !c.is_zero() {
                            add_signed(&mut row, coords.phi_col(p, q, w), true, c);
                        }
                    }
                    for (w, c) in a.product.on_basis(p, q).iter().enumerate() {
                        if !c.is_zero() {
                            add_signed(&mut row, coords.phi_col(w, s, v), true, c);
                        }
                    }
                    for (w, c) in a.product.on_basis(q, s).iter().enumerate() {
                        if !c.is_zero() {
                            add_coeff(&mut row, coords.phi_col(p, w, v), c);
                        }
                    }
                    sink(row);
                }
            }
        }
    }

    // 3-Lie rows
    let mut tuple = [0usize; 5];
    let total5 = n.pow(5);
    for linear in 0..total5 {
        let mut rest = linear;
        for slot in (0..5).rev() {
            tuple[slot] = rest % n;
            rest /= n;
        }
        let (x, y, c3, d, e) = (tuple[0], tuple[1], tuple[2], tuple[3], tuple[4]);
        for v in 0..m {
            let mut row = zero_vector(field, cols);
            // + psi(x, y, {c,d,e})
            for (w, c) in a.bracket.on_basis(c3, d, e).iter().enumerate() {
                if !c.is_zero() {
                    if let Some((col, neg)) = coords.psi_col(x, y, w, v) {
                        add_signed(&mut row, col, neg, c);
                    }
                }
            }
            // + rho(x,y) psi(c,d,e)
            for w in 0..m {
                let c = r.rho(x, y).get(v, w);
                if !c.is_zero() {
                    if let Some((col, neg)) = coords.psi_col(c3, d, e, w) {
                        add_signed(&mut row, col, neg, c);
                    }
                }
            }
            // - psi({x,y,c}, d, e) - psi(c, {x,y,d}, e) - psi(c, d, {x,y,e})
            for (w, c) in a.bracket.on_basis(x, y, c3).iter().enumerate() {
                if !c.is_zero() {
                    if let Some((col, neg)) = coords.psi_col(w, d, e, v) {
                        add_signed(&mut row, col, !neg, c);
                    }
                }
            }
            for (w, c) in a.bracket.on_basis(x, y, d).iter().enumerate() {
                if !c.is_zero() {
                    if let Some((col, neg)) = coords.psi_col(c3, w, e, v) {
                        add_signed(&mut row, col, !neg, c);
                    }
                }
            }
            for (w, c) in a.bracket.on_basis(x, y, e).iter().enumerate() {
                if !c.is_zero() {
                    if let Some((col, neg)) = coords.psi_col(c3, d, w, v) {
                        add_signed(&mut row, col, !neg, c);
                    }
                }
            }
            // - rho(d,e) psi(x,y,c) - rho(e,c) psi(x,y,d) - rho(c,d) psi(x,y,e)
            for w in 0..m {
                let c = r.rho(d, e).get(v, w);
                if !c.is_zero() {
                    if let Some((col, neg)) = coords.psi_col(x, y, c3, w) {
                        add_signed(&mut row, col, !neg, c);
                    }
                }
                let c = r.rho(e, c3).get(v, w);
                if !c.is_zero() {
                    if let Some((col, neg)) = coords.psi_col(x, y, d, w) {
                        add_signed(&mut row, col, !neg, c);
                    }
                }
                let c = r.rho(c3, d).get(v, w);
                if !c.is_zero() {
                    if let Some((col, neg)) = coords.psi_col(x, y, e, w) {
                        add_signed(&mut row, col, !neg, c);
                    }
                }
            }
            sink(row);
        }
    }

    // compatibility rows
    for x in 0..n {
        for y in 0..n {
            for c3 in 0..n {
                for d in 0..n {
                    for v in 0..m {
                        let mut row = zero_vector(field, cols);
                        // + psi(x, y, c.d)
                        for (w, c) in a.product.on_basis(c3, d).iter().enumerate() {
                            if !c.is_zero() {
                                if let Some((col, neg)) = coords.psi_col(x, y, w, v) {
                                    add_signed(&mut row, col, neg, c);
                                }
                            }
                        }
                        // + rho(x,y) phi(c,d)
                        for w in 0..m {
                            let c = r.rho(x, y).get(v, w);
                            if !c.is_zero() {
                                add_coeff(&mut row, coords.phi_col(c3, d, w), c);
                            }
                            // - mu(c) psi(x,y,d) - mu(d) psi(x,y,c)
                            let c = r.mu(c3).get(v, w);
                            if !c.is_zero() {
                                if let Some((col, neg)) = coords.psi_col(x, y, d, w) {
                                    add_signed(&mut row, col, !neg, c);
                                }
                            }
                            let c = r.mu(d).get(v, w);
                            if !c.is_zero() {
                                if let Some((col, neg)) = coords.psi_col(x, y, c3, w) {
                                    add_signed(&mut row, col, !neg, c);
                                }
                            }
                        }
                        // - phi(c, {x,y,d}) - phi({x,y,c}, d)
                        for (w, c) in a.bracket.on_basis(x, y, d).iter().enumerate() {
                            if !c.is_zero() {
                                add_signed(&mut row, coords.phi_col(c3, w, v), true, c);
                            }
                        }
                        for (w, c) in a.bracket.on_basis(x, y, c3).iter().enumerate() {
                            if !c.is_zero() {
                                add_signed(&mut row, coords.phi_col(w, d, v), true, c);
                            }
                        }
                        sink(row);
                    }
                }
            }
        }
    }
}

/// The full Z^2 constraint matrix (rows = identity instances, columns =
/// canonical pair coordinates). A pair is a cocycle iff its coordinate
/// vector lies in the nullspace.
pub fn z2_constraint_matrix(a: &NambuPoissonAlgebra, r: &NPRepresentation) -> Result<Matrix> {
    check_pair_dims(a, r, None, None)?;
    let coords = CocycleCoords::new(a.dim, r.module_dim);
    let mut rows = Vec::new();
    for_each_z2_row(a, r, &coords, |row| {
        if !crate::vector::vec_is_zero(&row) {
            rows.push(row);
        }
    });
    if rows.is_empty() {
        return Ok(Matrix::zeros(a.field(), 1, coords.total()));
    }
    Matrix::from_rows(a.field(), rows)
}

/// The coboundary map as a matrix: columns are the coordinates of
/// (phi_f, psi_f) for f ranging over the basis of Hom(A, V).
pub fn coboundary_matrix(a: &NambuPoissonAlgebra, r: &NPRepresentation) -> Result<Matrix> {
    let n = a.dim;
    let m = r.module_dim;
    let field = a.field();
    let coords = CocycleCoords::new(n, m);
    let mut cols = Vec::new();
    for i in 0..n {
        for v in 0..m {
            let f = LinearMap::from_matrix(Matrix::from_fn(field, m, n, |rr, cc| {
                if rr == v && cc == i {
                    field.one()
                } else {
                    field.zero()
                }
            }));
            let pair = coboundary(a, r, &f)?;
            cols.push(coords.coordinates(&pair));
        }
    }
    // assemble with columns as given: entry (row, col)
    let rows = coords.total();
    Ok(Matrix::from_fn(field, rows, cols.len(), |rr, cc| cols[cc][rr].clone()))
}

/// Dimensions of Z^2, B^2 and H^2 = Z^2 / B^2.
///
/// dim Z^2 is the nullity of the constraint system; dim B^2 is the rank of
/// the coboundary map f -> (phi_f, psi_f); dim H^2 is their difference.
pub fn cocycle_space_dims(a: &NambuPoissonAlgebra, r: &NPRepresentation) -> Result<CohomologyDims> {
    crate::algebra::check_nambu_poisson(a).require("cocycle_space_dims: algebra")?;
    check_np_rep(a, r)?.require("cocycle_space_dims: representation")?;

    let coords = CocycleCoords::new(a.dim, r.module_dim);
    let mut ech = RowEchelon::new(a.field(), coords.total());
    for_each_z2_row(a, r, &coords, |row| {
        ech.insert(row);
    });
    let dim_z2 = coords.total() - ech.rank();
    let dim_b2 = coboundary_matrix(a, r)?.rank();
    Ok(CohomologyDims {
        dim_z2,
        dim_b2,
        dim_h2: dim_z2 - dim_b2,
    })
}

// ---------------------------------------------------------------------------
// restriction to Poisson cocycles

/// A Poisson 2-cocycle candidate: symmetric phi with a skew binary psi.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PoissonCocycle {
    pub phi: BilinearMap,
    pub psi: BilinearMap,
}

/// Restricts a Nambu-Poisson 2-cocycle along x0: psi_x0(a, b) = psi(x0, a, b).
pub fn restrict_cocycle_x0(
    a: &NambuPoissonAlgebra,
    r: &NPRepresentation,
    pair: &CocyclePair,
    x0: &[Scalar],
) -> Result<PoissonCocycle> {
    check_pair_dims(a, r, Some(&pair.phi), Some(&pair.psi))?;
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
    let psi = BilinearMap::build(field, n, m, Sym2::Skew, |i, j| {
        let mut out = zero_vector(field, m);
        for (w, c) in x0.iter().enumerate() {
            if !c.is_zero() {
                vec_add_scaled(&mut out, c, pair.psi.on_basis(w, i, j));
            }
        }
        out
    })?;
    Ok(PoissonCocycle {
        phi: pair.phi.clone(),
        psi,
    })
}

/// Poisson 2-cocycle check: the Harrison condition, the Lie 2-cocycle sum
/// and the mixed compatibility, on all basis triples.
pub fn check_poisson_2cocycle(
    p: &PoissonAlgebra,
    r: &PoissonRep,
    cocycle: &PoissonCocycle,
) -> Result<Check> {
    if cocycle.phi.sym() != Sym2::Symmetric {
        return Err(Error::SymmetryViolation("phi must be symmetric".into()));
    }
    if cocycle.psi.sym() != Sym2::Skew {
        return Err(Error::SymmetryViolation("psi must be skew".into()));
    }
    if cocycle.phi.dim_in() != p.dim || cocycle.phi.dim_out() != r.module_dim {
        return Err(Error::DimensionMismatch("phi dimensions".into()));
    }
    if cocycle.psi.dim_in() != p.dim || cocycle.psi.dim_out() != r.module_dim {
        return Err(Error::DimensionMismatch("psi dimensions".into()));
    }
    let n = p.dim;
    let m = r.module_dim;
    let field = p.field();
    let (phi, psi) = (&cocycle.phi, &cocycle.psi);

    Ok(Check::from_violation(first_failure(&[n, n, n], |t| {
        let (x, y, z) = (t[0], t[1], t[2]);
        // Harrison: mu(a) phi(b,c) - phi(a.b, c) + phi(a, b.c) - mu(c) phi(a,b) = 0
        let mut acc = r.mu(x).apply(phi.on_basis(y, z));
        let t2 = contract(field, m, p.product.on_basis(x, y), |w| phi.on_basis(w, z));
        acc = vec_sub(&acc, &t2);
        vec_add_scaled(&mut acc, &field.one(), &contract(field, m, p.product.on_basis(y, z), |w| phi.on_basis(x, w)));
        acc = vec_sub(&acc, &r.mu(z).apply(phi.on_basis(x, y)));
        if !crate::vector::vec_is_zero(&acc) {
            return Some(violation("poisson harrison condition", t, acc, zero_vector(field, m)));
        }
        // Lie 2-cocycle sum:
        // rho(a) psi(b,c) + rho(b) psi(c,a) + rho(c) psi(a,b)
        //   + psi(a, {b,c}) + psi(b, {c,a}) + psi(c, {a,b}) = 0
        let mut acc = r.rho_x0(x).apply(psi.on_basis(y, z));
        vec_add_scaled(&mut acc, &field.one(), &r.rho_x0(y).apply(psi.on_basis(z, x)));
        vec_add_scaled(&mut acc, &field.one(), &r.rho_x0(z).apply(psi.on_basis(x, y)));
        vec_add_scaled(&mut acc, &field.one(), &contract(field, m, p.bracket.on_basis(y, z), |w| psi.on_basis(x, w)));
        vec_add_scaled(&mut acc, &field.one(), &contract(field, m, p.bracket.on_basis(z, x), |w| psi.on_basis(y, w)));
        vec_add_scaled(&mut acc, &field.one(), &contract(field, m, p.bracket.on_basis(x, y), |w| psi.on_basis(z, w)));
        if !crate::vector::vec_is_zero(&acc) {
            return Some(violation("poisson lie 2-cocycle condition", t, acc, zero_vector(field, m)));
        }
        // mixed: psi(a, b.c) + rho(a) phi(b,c)
        //   = phi(b, {a,c}) + mu(b) psi(a,c) + phi({a,b}, c) + mu(c) psi(a,b)
        let mut left = contract(field, m, p.product.on_basis(y, z), |w| psi.on_basis(x, w));
        vec_add_scaled(&mut left, &field.one(), &r.rho_x0(x).apply(phi.on_basis(y, z)));
        let mut right = contract(field, m, p.bracket.on_basis(x, z), |w| phi.on_basis(y, w));
        vec_add_scaled(&mut right, &field.one(), &r.mu(y).apply(psi.on_basis(x, z)));
        vec_add_scaled(&mut right, &field.one(), &contract(field, m, p.bracket.on_basis(x, y), |w| phi.on_basis(w, z)));
        vec_add_scaled(&mut right, &field.one(), &r.mu(z).apply(psi.on_basis(x, y)));
        (left != right).then(|| violation("poisson mixed compatibility", t, left, right))
    })))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::check_nambu_poisson;
    use crate::fixtures;
    use crate::rep::{adjoint_rep, restrict_rep_x0, semidirect_np};
    use crate::rng::SplitMix64;
    use crate::vector::basis_vector;

    fn q(v: i64) -> Scalar {
        Field::Rational.from_i64(v)
    }

    #[test]
    fn zero_pair_is_a_cocycle() {
        let a = fixtures::bracket4(Field::Rational);
        let r = adjoint_rep(&a);
        let pair = CocyclePair::zero(Field::Rational, 4, 4);
        assert!(check_np_2cocycle(&a, &r, &pair).unwrap().is_pass());
    }

    #[test]
    fn every_symmetric_phi_passes_on_zero_data() {
        let a = fixtures::zero_np(Field::Rational, 3);
        let r = NPRepresentation::zero(Field::Rational, 3, 2);
        let mut rng = SplitMix64::new(1);
        for _ in 0..10 {
            let phi = BilinearMap::random(Field::Rational, 3, 2, Sym2::Symmetric, &mut rng, 4);
            assert!(check_harrison_2cocycle(&a, &r, &phi).unwrap().is_pass());
        }
        for _ in 0..10 {
            let psi = TrilinearMap::random(Field::Rational, 3, 2, Sym3::FullySkew, &mut rng, 4);
            assert!(check_3lie_2cocycle(&a, &r, &psi).unwrap().is_pass());
        }
    }

    #[test]
    fn coboundaries_are_cocycles() {
        let mut rng = SplitMix64::new(99);
        for (name, a) in fixtures::all_np_fixtures(Field::Rational) {
            let r = adjoint_rep(&a);
            for _ in 0..10 {
                let f = LinearMap::random(Field::Rational, a.dim, a.dim, &mut rng, 3);
                let pair = coboundary(&a, &r, &f).unwrap();
                assert!(
                    check_np_2cocycle(&a, &r, &pair).unwrap().is_pass(),
                    "coboundary on {name}"
                );
            }
        }
    }

    #[test]
    fn coboundary_of_zero_map_is_zero() {
        let a = fixtures::bracket4(Field::Rational);
        let r = adjoint_rep(&a);
        let pair = coboundary(&a, &r, &LinearMap::zero(Field::Rational, 4, 4)).unwrap();
        assert!(pair.phi.is_zero());
        assert!(pair.psi.is_zero());
    }

    #[test]
    fn coboundary_of_projection_on_b4() {
        // f = projection onto e4: phi_f = 0 (zero product and mu), and
        // psi_f has the single canonical entry (1,2,3 -> e4) with value -1.
        let a = fixtures::bracket4(Field::Rational);
        let r = adjoint_rep(&a);
        let f = LinearMap::from_matrix(Matrix::from_fn(Field::Rational, 4, 4, |i, j| {
            if i == 3 && j == 3 {
                q(1)
            } else {
                q(0)
            }
        }));
        let pair = coboundary(&a, &r, &f).unwrap();
        assert!(pair.phi.is_zero());
        let entries = pair.psi.canonical_entries();
        assert_eq!(entries, vec![(0, 1, 2, 3, q(-1))]);
    }

    #[test]
    fn twisted_semidirect_with_zero_pair_is_semidirect() {
        let a = fixtures::bracket4(Field::Rational);
        let r = adjoint_rep(&a);
        let zero = CocyclePair::zero(Field::Rational, 4, 4);
        let tw = twisted_semidirect(&a, &r, &zero).unwrap();
        let plain = semidirect_np(&a, &r).unwrap();
        assert_eq!(tw, plain);
    }

    #[test]
    fn twisted_semidirect_iff_cocycle() {
        let mut rng = SplitMix64::new(31);
        let mut fails = 0;
        for (name, a) in fixtures::all_np_fixtures(Field::Rational) {
            let r = adjoint_rep(&a);
            let n = a.dim;
            for _ in 0..50 {
                let pair = CocyclePair::new(
                    BilinearMap::random(Field::Rational, n, n, Sym2::Symmetric, &mut rng, 1),
                    TrilinearMap::random(Field::Rational, n, n, Sym3::FullySkew, &mut rng, 1),
                )
                .unwrap();
                let is_cocycle = check_np_2cocycle(&a, &r, &pair).unwrap().is_pass();
                let semid_ok = check_nambu_poisson(&twisted_semidirect(&a, &r, &pair).unwrap()).is_pass();
                assert_eq!(is_cocycle, semid_ok, "{name}");
                fails += usize::from(!is_cocycle);
            }
            // coboundary side: a valid pair must give a valid twisted product
            let f = LinearMap::random(Field::Rational, n, n, &mut rng, 2);
            let pair = coboundary(&a, &r, &f).unwrap();
            assert!(check_nambu_poisson(&twisted_semidirect(&a, &r, &pair).unwrap()).is_pass(), "{name}");
        }
        assert!(fails > 0);
    }

    #[test]
    fn forced_dims_on_zero_algebras() {
        // zero algebra, zero 1-dim module: every pair is a cocycle and no
        // pair is a coboundary.
        let a2 = fixtures::zero_np(Field::Rational, 2);
        let r2 = NPRepresentation::zero(Field::Rational, 2, 1);
        let dims = cocycle_space_dims(&a2, &r2).unwrap();
        assert_eq!((dims.dim_z2, dims.dim_b2, dims.dim_h2), (3, 0, 3));

        let a4 = fixtures::zero_np(Field::Rational, 4);
        let r4 = NPRepresentation::zero(Field::Rational, 4, 1);
        let dims = cocycle_space_dims(&a4, &r4).unwrap();
        assert_eq!((dims.dim_z2, dims.dim_b2, dims.dim_h2), (14, 0, 14));
    }

    #[test]
    fn membership_in_nullspace_matches_checker() {
        let a = fixtures::bracket4(Field::Rational);
        let r = adjoint_rep(&a);
        let coords = CocycleCoords::new(4, 4);
        let z2 = z2_constraint_matrix(&a, &r).unwrap();
        let mut rng = SplitMix64::new(8);
        let mut in_null = 0;
        for _ in 0..20 {
            let pair = CocyclePair::new(
                BilinearMap::random(Field::Rational, 4, 4, Sym2::Symmetric, &mut rng, 1),
                TrilinearMap::random(Field::Rational, 4, 4, Sym3::FullySkew, &mut rng, 1),
            )
            .unwrap();
            let is_cocycle = check_np_2cocycle(&a, &r, &pair).unwrap().is_pass();
            let member = crate::vector::vec_is_zero(&z2.apply(&coords.coordinates(&pair)));
            assert_eq!(is_cocycle, member);
            in_null += usize::from(member);
        }
        // coboundaries land in the nullspace
        let f = LinearMap::random(Field::Rational, 4, 4, &mut rng, 2);
        let pair = coboundary(&a, &r, &f).unwrap();
        assert!(crate::vector::vec_is_zero(&z2.apply(&coords.coordinates(&pair))));
        let _ = in_null;
    }

    #[test]
    fn dims_are_consistent_on_fixtures() {
        for (name, a) in fixtures::all_np_fixtures(Field::Rational) {
            let r = adjoint_rep(&a);
            let dims = cocycle_space_dims(&a, &r).unwrap();
            assert_eq!(dims.dim_h2, dims.dim_z2 - dims.dim_b2, "{name}");
            assert!(dims.dim_b2 <= dims.dim_z2, "{name}");
        }
    }

    #[test]
    fn forced_dims_hold_over_finite_fields() {
        let f = Field::gf(5).unwrap();
        let a = fixtures::zero_np(f, 2);
        let dims = cocycle_space_dims(&a, &NPRepresentation::zero(f, 2, 1)).unwrap();
        assert_eq!((dims.dim_z2, dims.dim_b2, dims.dim_h2), (3, 0, 3));
        let b4 = fixtures::bracket4(f);
        let dims = cocycle_space_dims(&b4, &adjoint_rep(&b4)).unwrap();
        assert_eq!(dims.dim_h2, dims.dim_z2 - dims.dim_b2);
    }

    #[test]
    fn adjoint_dims_are_pinned() {
        // poly3: psi_f vanishes (zero bracket), so the coboundary kernel is
        // exactly the derivation space of the truncated polynomial algebra.
        // That space is spanned by x d/dx and x^2 d/dx, so dim B2 = 9 - 2.
        let a = fixtures::truncated_poly3(Field::Rational);
        let adj = adjoint_rep(&a);
        let dims = cocycle_space_dims(&a, &adj).unwrap();
        assert_eq!((dims.dim_z2, dims.dim_b2, dims.dim_h2), (9, 7, 2));
        // the two derivations really are in the kernel
        let q = |v: i64| Field::Rational.from_i64(v);
        let x_ddx = LinearMap::from_matrix(
            Matrix::from_rows(
                Field::Rational,
                vec![
                    vec![q(0), q(0), q(0)],
                    vec![q(0), q(1), q(0)],
                    vec![q(0), q(0), q(2)],
                ],
            )
            .unwrap(),
        );
        let x2_ddx = LinearMap::from_matrix(
            Matrix::from_rows(
                Field::Rational,
                vec![
                    vec![q(0), q(0), q(0)],
                    vec![q(0), q(0), q(0)],
                    vec![q(0), q(1), q(0)],
                ],
            )
            .unwrap(),
        );
        for d in [x_ddx, x2_ddx] {
            let pair = coboundary(&a, &adj, &d).unwrap();
            assert!(pair.phi.is_zero() && pair.psi.is_zero());
        }

        // b4 with adjoint coefficients, pinned from the two cross-checked
        // routes (echelon nullity and checker membership)
        let b4 = fixtures::bracket4(Field::Rational);
        let dims = cocycle_space_dims(&b4, &adjoint_rep(&b4)).unwrap();
        assert_eq!((dims.dim_z2, dims.dim_b2, dims.dim_h2), (22, 4, 18));
    }

    #[test]
    fn coordinates_roundtrip() {
        let coords = CocycleCoords::new(4, 2);
        let mut rng = SplitMix64::new(3);
        let pair = CocyclePair::new(
            BilinearMap::random(Field::Rational, 4, 2, Sym2::Symmetric, &mut rng, 5),
            TrilinearMap::random(Field::Rational, 4, 2, Sym3::FullySkew, &mut rng, 5),
        )
        .unwrap();
        let v = coords.coordinates(&pair);
        let back = coords.pair_from_coordinates(Field::Rational, &v).unwrap();
        assert_eq!(pair, back);
    }

    #[test]
    fn invalid_inputs_are_axiom_violations() {
        // a bracket violating the fundamental identity must be rejected
        let br = TrilinearMap::from_entries(
            Field::Rational,
            4,
            4,
            Sym3::FullySkew,
            &[(0, 1, 2, 0, q(1)), (0, 1, 3, 1, q(1))],
        )
        .unwrap();
        let bad = NambuPoissonAlgebra::new(BilinearMap::zero(Field::Rational, 4, 4, Sym2::Symmetric), br).unwrap();
        let r = NPRepresentation::zero(Field::Rational, 4, 1);
        assert!(matches!(
            cocycle_space_dims(&bad, &r),
            Err(Error::AxiomViolation(_))
        ));
    }

    #[test]
    fn restriction_of_cocycle_passes_poisson_check() {
        let a = fixtures::bracket4(Field::Rational);
        let r = adjoint_rep(&a);
        let mut rng = SplitMix64::new(5);
        let f = LinearMap::random(Field::Rational, 4, 4, &mut rng, 3);
        let pair = coboundary(&a, &r, &f).unwrap();
        for i in 0..4 {
            let x0 = basis_vector(Field::Rational, 4, i);
            let p = crate::algebra::fix_coordinate(&a, &x0).unwrap();
            let pr = restrict_rep_x0(&a, &r, &x0).unwrap();
            let pc = restrict_cocycle_x0(&a, &r, &pair, &x0).unwrap();
            assert!(check_poisson_2cocycle(&p, &pr, &pc).unwrap().is_pass());
        }
        // x0 = 0 restricts to (phi, 0)
        let pc = restrict_cocycle_x0(&a, &r, &pair, &zero_vector(Field::Rational, 4)).unwrap();
        assert!(pc.psi.is_zero());
        assert_eq!(pc.phi, pair.phi);
    }

    #[test]
    fn poisson_cocycle_rejects_random_garbage() {
        let a = fixtures::bracket4(Field::Rational);
        let r = adjoint_rep(&a);
        let x0 = basis_vector(Field::Rational, 4, 0);
        let p = crate::algebra::fix_coordinate(&a, &x0).unwrap();
        let pr = restrict_rep_x0(&a, &r, &x0).unwrap();
        let mut rng = SplitMix64::new(77);
        let mut fails = 0;
        for _ in 0..10 {
            let pc = PoissonCocycle {
                phi: BilinearMap::random(Field::Rational, 4, 4, Sym2::Symmetric, &mut rng, 1),
                psi: BilinearMap::random(Field::Rational, 4, 4, Sym2::Skew, &mut rng, 1),
            };
            fails += usize::from(!check_poisson_2cocycle(&p, &pr, &pc).unwrap().is_pass());
        }
        assert!(fails > 0);
    }
}
