//! (1,2)-linear deformations: a degree-1 deformation of the product and a
//! degree-2 deformation of the ternary bracket in a formal parameter t.
//!
//! Two independent verification routes are provided. The direct route
//! evaluates associativity, the fundamental identity and the Leibniz rule as
//! exact t-polynomial identities on basis tuples (never truncated). The
//! theorem route checks the equivalent clause list: (i) the pair
//! (phi1, psi1) is a 2-cocycle with adjoint coefficients, (ii) the triple
//! (A, phi1, psi2) is itself a Nambu-Poisson algebra, (iii) three mixed
//! equations couple psi1, psi2 and phi1. Their agreement is itself a test of
//! the implementation.

use crate::algebra::{
    check_nambu_poisson, contract, violation, Check, NambuPoissonAlgebra, ViolationReport,
};
use crate::cohomology::{check_np_2cocycle, CocyclePair};
use crate::error::{Error, Result};
use crate::rep::adjoint_rep;
use crate::scalar::{Field, Scalar};
use crate::scan::first_failure;
use crate::tensor::{BilinearMap, LinearMap, Sym2, Sym3, TrilinearMap};
use crate::vector::{basis_vector, vec_add_scaled, vec_is_zero, vec_sub, zero_vector};

/// Generators of an (1,2)-linear deformation candidate:
/// a .t b = a.b + t phi1(a,b),
/// {a,b,c}_t = {a,b,c} + t psi1(a,b,c) + t^2 psi2(a,b,c).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearDeformation12 {
    pub base: NambuPoissonAlgebra,
    pub phi1: BilinearMap,
    pub psi1: TrilinearMap,
    pub psi2: TrilinearMap,
}

impl LinearDeformation12 {
    pub fn new(
        base: NambuPoissonAlgebra,
        phi1: BilinearMap,
        psi1: TrilinearMap,
        psi2: TrilinearMap,
    ) -> Result<LinearDeformation12> {
        let n = base.dim;
        if phi1.sym() != Sym2::Symmetric {
            return Err(Error::SymmetryViolation("phi1 must be symmetric".into()));
        }
        if psi1.sym() != Sym3::FullySkew || psi2.sym() != Sym3::FullySkew {
            return Err(Error::SymmetryViolation("psi1 and psi2 must be fully skew".into()));
        }
        for (what, din, dout) in [
            ("phi1", phi1.dim_in(), phi1.dim_out()),
            ("psi1", psi1.dim_in(), psi1.dim_out()),
            ("psi2", psi2.dim_in(), psi2.dim_out()),
        ] {
            if din != n || dout != n {
                return Err(Error::DimensionMismatch(format!(
                    "{what} must map the dim-{n} algebra into itself"
                )));
            }
        }
        Ok(LinearDeformation12 {
            base,
            phi1,
            psi1,
            psi2,
        })
    }

    pub fn undeformed(base: NambuPoissonAlgebra) -> LinearDeformation12 {
        let n = base.dim;
        let field = base.field();
        LinearDeformation12 {
            base,
            phi1: BilinearMap::zero(field, n, n, Sym2::Symmetric),
            psi1: TrilinearMap::zero(field, n, n, Sym3::FullySkew),
            psi2: TrilinearMap::zero(field, n, n, Sym3::FullySkew),
        }
    }

    pub fn dim(&self) -> usize {
        self.base.dim
    }

    pub fn field(&self) -> Field {
        self.base.field()
    }
}

// ---------------------------------------------------------------------------
// vector-valued polynomials in t

/// A polynomial in t whose coefficients are coordinate vectors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct PolyVec {
    field: Field,
    dim: usize,
    coeffs: Vec<Vec<Scalar>>,
}

impl PolyVec {
    pub(crate) fn zero(field: Field, dim: usize) -> PolyVec {
        PolyVec {
            field,
            dim,
            coeffs: Vec::new(),
        }
    }

    pub(crate) fn constant(field: Field, v: Vec<Scalar>) -> PolyVec {
        let dim = v.len();
        let mut p = PolyVec {
            field,
            dim,
            coeffs: vec![v],
        };
        p.trim();
        p
    }

    pub(crate) fn basis(field: Field, dim: usize, i: usize) -> PolyVec {
        PolyVec::constant(field, basis_vector(field, dim, i))
    }

    fn coeff(&self, k: usize) -> Vec<Scalar> {
        self.coeffs
            .get(k)
            .cloned()
            .unwrap_or_else(|| zero_vector(self.field, self.dim))
    }

    fn degree_bound(&self) -> usize {
        self.coeffs.len()
    }

    fn add_at(&mut self, power: usize, v: &[Scalar]) {
        while self.coeffs.len() <= power {
            self.coeffs.push(zero_vector(self.field, self.dim));
        }
        vec_add_scaled(&mut self.coeffs[power], &self.field.one(), v);
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| vec_is_zero(c)) {
            self.coeffs.pop();
        }
    }

    /// First power whose coefficients differ, with both values.
    fn first_difference(&self, other: &PolyVec) -> Option<(usize, Vec<Scalar>, Vec<Scalar>)> {
        let top = self.degree_bound().max(other.degree_bound());
        (0..top).find_map(|k| {
            let (a, b) = (self.coeff(k), other.coeff(k));
            (a != b).then_some((k, a, b))
        })
    }
}

/// acc += t^shift * b(x, y), expanded over the coefficients of x and y.
fn accumulate_bilinear(b: &BilinearMap, x: &PolyVec, y: &PolyVec, shift: usize, acc: &mut PolyVec) {
    for i in 0..x.degree_bound() {
        let xi = x.coeff(i);
        if vec_is_zero(&xi) {
            continue;
        }
        for j in 0..y.degree_bound() {
            let yj = y.coeff(j);
            if vec_is_zero(&yj) {
                continue;
            }
            let v = b.apply(&xi, &yj).expect("dimensions validated");
            acc.add_at(i + j + shift, &v);
        }
    }
}

fn accumulate_trilinear(
    m: &TrilinearMap,
    x: &PolyVec,
    y: &PolyVec,
    z: &PolyVec,
    shift: usize,
    acc: &mut PolyVec,
) {
    for i in 0..x.degree_bound() {
        let xi = x.coeff(i);
        if vec_is_zero(&xi) {
            continue;
        }
        for j in 0..y.degree_bound() {
            let yj = y.coeff(j);
            if vec_is_zero(&yj) {
                continue;
            }
            for k in 0..z.degree_bound() {
                let zk = z.coeff(k);
                if vec_is_zero(&zk) {
                    continue;
                }
                let v = m.apply(&xi, &yj, &zk).expect("dimensions validated");
                acc.add_at(i + j + k + shift, &v);
            }
        }
    }
}

/// x .t y for the deformed product.
pub(crate) fn deformed_product(d: &LinearDeformation12, x: &PolyVec, y: &PolyVec) -> PolyVec {
    let mut acc = PolyVec::zero(d.field(), d.dim());
    accumulate_bilinear(&d.base.product, x, y, 0, &mut acc);
    accumulate_bilinear(&d.phi1, x, y, 1, &mut acc);
    acc.trim();
    acc
}

/// {x, y, z}_t for the deformed bracket.
pub(crate) fn deformed_bracket(d: &LinearDeformation12, x: &PolyVec, y: &PolyVec, z: &PolyVec) -> PolyVec {
    let mut acc = PolyVec::zero(d.field(), d.dim());
    accumulate_trilinear(&d.base.bracket, x, y, z, 0, &mut acc);
    accumulate_trilinear(&d.psi1, x, y, z, 1, &mut acc);
    accumulate_trilinear(&d.psi2, x, y, z, 2, &mut acc);
    acc.trim();
    acc
}

fn poly_violation(axiom: &str, t: &[usize], left: &PolyVec, right: &PolyVec) -> Option<ViolationReport> {
    left.first_difference(right).map(|(power, l, r)| {
        violation(&format!("{axiom} (t^{power} coefficient)"), t, l, r)
    })
}

/// Direct route: the deformed operations satisfy the Nambu-Poisson axioms as
/// exact polynomial identities in t on all basis tuples.
pub fn check_deformation_direct(d: &LinearDeformation12) -> Check {
    let n = d.dim();
    let field = d.field();
    let e = |i: usize| PolyVec::basis(field, n, i);

    // associativity in t (degree <= 2)
    let assoc = first_failure(&[n, n, n], |t| {
        let (i, j, k) = (t[0], t[1], t[2]);
        let left = deformed_product(d, &deformed_product(d, &e(i), &e(j)), &e(k));
        let right = deformed_product(d, &e(i), &deformed_product(d, &e(j), &e(k)));
        poly_violation("deformed associativity", t, &left, &right)
    });
    if let Some(v) = assoc {
        return Check::Fail(v);
    }

    // fundamental identity in t (degree <= 4)
    let fi = first_failure(&[n, n, n, n, n], |t| {
        let (a, b, c, dd, ee) = (t[0], t[1], t[2], t[3], t[4]);
        let left = deformed_bracket(d, &e(a), &e(b), &deformed_bracket(d, &e(c), &e(dd), &e(ee)));
        let mut right = deformed_bracket(d, &deformed_bracket(d, &e(a), &e(b), &e(c)), &e(dd), &e(ee));
        let r2 = deformed_bracket(d, &e(c), &deformed_bracket(d, &e(a), &e(b), &e(dd)), &e(ee));
        let r3 = deformed_bracket(d, &e(c), &e(dd), &deformed_bracket(d, &e(a), &e(b), &e(ee)));
        for k in 0..r2.degree_bound() {
            right.add_at(k, &r2.coeff(k));
        }
        for k in 0..r3.degree_bound() {
            right.add_at(k, &r3.coeff(k));
        }
        right.trim();
        poly_violation("deformed fundamental identity", t, &left, &right)
    });
    if let Some(v) = fi {
        return Check::Fail(v);
    }

    // Leibniz rule in t (degree <= 3)
    Check::from_violation(first_failure(&[n, n, n, n], |t| {
        let (a, b, c, dd) = (t[0], t[1], t[2], t[3]);
        let left = deformed_bracket(d, &e(a), &e(b), &deformed_product(d, &e(c), &e(dd)));
        let mut right = deformed_product(d, &deformed_bracket(d, &e(a), &e(b), &e(c)), &e(dd));
        let r2 = deformed_product(d, &e(c), &deformed_bracket(d, &e(a), &e(b), &e(dd)));
        for k in 0..r2.degree_bound() {
            right.add_at(k, &r2.coeff(k));
        }
        right.trim();
        poly_violation("deformed leibniz rule", t, &left, &right)
    }))
}

/// Theorem route: base axioms, the cocycle clause, the secondary
/// Nambu-Poisson clause and the three mixed equations.
///
/// Base axioms are included so that both routes agree on arbitrary input,
/// not only over valid base algebras.
pub fn check_deformation_theorem(d: &LinearDeformation12) -> Check {
    let base = check_nambu_poisson(&d.base);
    if let Check::Fail(mut r) = base {
        r.axiom = format!("base algebra: {}", r.axiom);
        return Check::Fail(r);
    }

    // (i) (phi1, psi1) is a 2-cocycle with adjoint coefficients
    let adj = adjoint_rep(&d.base);
    let pair = CocyclePair::new(d.phi1.clone(), d.psi1.clone()).expect("classes validated");
    let cocycle = check_np_2cocycle(&d.base, &adj, &pair).expect("dimensions validated");
    if let Check::Fail(mut r) = cocycle {
        r.axiom = format!("clause (i) adjoint 2-cocycle: {}", r.axiom);
        return Check::Fail(r);
    }

    // (ii) (A, phi1, psi2) is a Nambu-Poisson algebra
    let secondary = NambuPoissonAlgebra::new(d.phi1.clone(), d.psi2.clone()).expect("classes validated");
    if let Check::Fail(mut r) = check_nambu_poisson(&secondary) {
        r.axiom = format!("clause (ii) secondary structure: {}", r.axiom);
        return Check::Fail(r);
    }

    // (iii) the three mixed equations
    let n = d.dim();
    let field = d.field();
    let br = &d.base.bracket;
    let (psi1, psi2, phi1) = (&d.psi1, &d.psi2, &d.phi1);

    // first: psi2(a,b,{c,d,e}) + {a,b,psi2(c,d,e)} + psi1(a,b,psi1(c,d,e))
    //   = sum over the three right slots of the same three shapes
    let eq1 = first_failure(&[n, n, n, n, n], |t| {
        let (a, b, c, dd, ee) = (t[0], t[1], t[2], t[3], t[4]);
        let mut left = contract(field, n, br.on_basis(c, dd, ee), |w| psi2.on_basis(a, b, w));
        vec_add_scaled(&mut left, &field.one(), &contract(field, n, psi2.on_basis(c, dd, ee), |w| br.on_basis(a, b, w)));
        vec_add_scaled(&mut left, &field.one(), &contract(field, n, psi1.on_basis(c, dd, ee), |w| psi1.on_basis(a, b, w)));

        let mut right = contract(field, n, br.on_basis(a, b, c), |w| psi2.on_basis(w, dd, ee));
        vec_add_scaled(&mut right, &field.one(), &contract(field, n, psi2.on_basis(a, b, c), |w| br.on_basis(w, dd, ee)));
        vec_add_scaled(&mut right, &field.one(), &contract(field, n, psi1.on_basis(a, b, c), |w| psi1.on_basis(w, dd, ee)));
        vec_add_scaled(&mut right, &field.one(), &contract(field, n, br.on_basis(a, b, dd), |w| psi2.on_basis(c, w, ee)));
        vec_add_scaled(&mut right, &field.one(), &contract(field, n, psi2.on_basis(a, b, dd), |w| br.on_basis(c, w, ee)));
        vec_add_scaled(&mut right, &field.one(), &contract(field, n, psi1.on_basis(a, b, dd), |w| psi1.on_basis(c, w, ee)));
        vec_add_scaled(&mut right, &field.one(), &contract(field, n, br.on_basis(a, b, ee), |w| psi2.on_basis(c, dd, w)));
        vec_add_scaled(&mut right, &field.one(), &contract(field, n, psi2.on_basis(a, b, ee), |w| br.on_basis(c, dd, w)));
        vec_add_scaled(&mut right, &field.one(), &contract(field, n, psi1.on_basis(a, b, ee), |w| psi1.on_basis(c, dd, w)));
        (left != right).then(|| violation("clause (iii) first mixed equation", t, left, right))
    });
    if let Some(v) = eq1 {
        return Check::Fail(v);
    }

    // second: psi1(a,b,psi2(c,d,e)) + psi2(a,b,psi1(c,d,e)) = cyclic right side
    let eq2 = first_failure(&[n, n, n, n, n], |t| {
        let (a, b, c, dd, ee) = (t[0], t[1], t[2], t[3], t[4]);
        let mut left = contract(field, n, psi2.on_basis(c, dd, ee), |w| psi1.on_basis(a, b, w));
        vec_add_scaled(&mut left, &field.one(), &contract(field, n, psi1.on_basis(c, dd, ee), |w| psi2.on_basis(a, b, w)));

        let mut right = contract(field, n, psi2.on_basis(a, b, c), |w| psi1.on_basis(w, dd, ee));
        vec_add_scaled(&mut right, &field.one(), &contract(field, n, psi1.on_basis(a, b, c), |w| psi2.on_basis(w, dd, ee)));
        vec_add_scaled(&mut right, &field.one(), &contract(field, n, psi2.on_basis(a, b, dd), |w| psi1.on_basis(c, w, ee)));
        vec_add_scaled(&mut right, &field.one(), &contract(field, n, psi1.on_basis(a, b, dd), |w| psi2.on_basis(c, w, ee)));
        vec_add_scaled(&mut right, &field.one(), &contract(field, n, psi2.on_basis(a, b, ee), |w| psi1.on_basis(c, dd, w)));
        vec_add_scaled(&mut right, &field.one(), &contract(field, n, psi1.on_basis(a, b, ee), |w| psi2.on_basis(c, dd, w)));
        (left != right).then(|| violation("clause (iii) second mixed equation", t, left, right))
    });
    if let Some(v) = eq2 {
        return Check::Fail(v);
    }

    // third: psi2(a,b,c.d) + psi1(a,b,phi1(c,d))
    //   = phi1(c, psi1(a,b,d)) + c . psi2(a,b,d) + phi1(psi1(a,b,c), d) + psi2(a,b,c) . d
    Check::from_violation(first_failure(&[n, n, n, n], |t| {
        let (a, b, c, dd) = (t[0], t[1], t[2], t[3]);
        let mut left = contract(field, n, d.base.product.on_basis(c, dd), |w| psi2.on_basis(a, b, w));
        vec_add_scaled(&mut left, &field.one(), &contract(field, n, phi1.on_basis(c, dd), |w| psi1.on_basis(a, b, w)));

        let mut right = contract(field, n, psi1.on_basis(a, b, dd), |w| phi1.on_basis(c, w));
        vec_add_scaled(&mut right, &field.one(), &contract(field, n, psi2.on_basis(a, b, dd), |w| d.base.product.on_basis(c, w)));
        vec_add_scaled(&mut right, &field.one(), &contract(field, n, psi1.on_basis(a, b, c), |w| phi1.on_basis(w, dd)));
        vec_add_scaled(&mut right, &field.one(), &contract(field, n, psi2.on_basis(a, b, c), |w| d.base.product.on_basis(w, dd)));
        (left != right).then(|| violation("clause (iii) third mixed equation", t, left, right))
    }))
}

// ---------------------------------------------------------------------------
// equivalence of deformations

fn map_columns(n: &LinearMap) -> Vec<Vec<Scalar>> {
    (0..n.dim_in()).map(|i| n.on_basis(i)).collect()
}

/// The eight equivalence identities for (Id + tN) as a homomorphism from d
/// to d_prime, on all basis tuples.
pub fn check_equivalence(n: &LinearMap, d: &LinearDeformation12, d_prime: &LinearDeformation12) -> Result<Check> {
    if d.base != d_prime.base {
        return Err(Error::DimensionMismatch(
            "deformations must share the same base algebra".into(),
        ));
    }
    let dim = d.dim();
    if n.dim_in() != dim || n.dim_out() != dim {
        return Err(Error::DimensionMismatch(format!(
            "N must be a {dim}x{dim} endomorphism"
        )));
    }
    let field = d.field();
    let nv = map_columns(n);
    let e: Vec<Vec<Scalar>> = (0..dim).map(|i| basis_vector(field, dim, i)).collect();
    let prod = &d.base.product;
    let br = &d.base.bracket;
    let ap2 = |m: &BilinearMap, x: &[Scalar], y: &[Scalar]| m.apply(x, y).expect("dims validated");
    let ap3 = |m: &TrilinearMap, x: &[Scalar], y: &[Scalar], z: &[Scalar]| m.apply(x, y, z).expect("dims validated");

    // binary identities on basis pairs
    let binary = first_failure(&[dim, dim], |t| {
        let (i, j) = (t[0], t[1]);
        // (1) phi1 - phi1' = N(a).b + a.N(b) - N(a.b)
        let left = vec_sub(d.phi1.on_basis(i, j), d_prime.phi1.on_basis(i, j));
        let mut right = ap2(prod, &nv[i], &e[j]);
        vec_add_scaled(&mut right, &field.one(), &ap2(prod, &e[i], &nv[j]));
        let right = vec_sub(&right, &n.apply(prod.on_basis(i, j)));
        if left != right {
            return Some(violation("equivalence (1): product transfer", t, left, right));
        }
        // (2) N(phi1(a,b)) = phi1'(N(a), b) + phi1'(a, N(b)) + N(a).N(b)
        let left = n.apply(d.phi1.on_basis(i, j));
        let mut right = ap2(&d_prime.phi1, &nv[i], &e[j]);
        vec_add_scaled(&mut right, &field.one(), &ap2(&d_prime.phi1, &e[i], &nv[j]));
        vec_add_scaled(&mut right, &field.one(), &ap2(prod, &nv[i], &nv[j]));
        if left != right {
            return Some(violation("equivalence (2): product compatibility", t, left, right));
        }
        // (3) phi1'(N(a), N(b)) = 0
        let v = ap2(&d_prime.phi1, &nv[i], &nv[j]);
        if !vec_is_zero(&v) {
            return Some(violation("equivalence (3): top product term", t, v, zero_vector(field, dim)));
        }
        None
    });
    if let Some(v) = binary {
        return Ok(Check::Fail(v));
    }

    // ternary identities on basis triples
    Ok(Check::from_violation(first_failure(&[dim, dim, dim], |t| {
        let (i, j, k) = (t[0], t[1], t[2]);
        // (4) psi1 - psi1' = {Na,b,c} + {a,Nb,c} + {a,b,Nc} - N{a,b,c}
        let left = vec_sub(d.psi1.on_basis(i, j, k), d_prime.psi1.on_basis(i, j, k));
        let mut right = ap3(br, &nv[i], &e[j], &e[k]);
        vec_add_scaled(&mut right, &field.one(), &ap3(br, &e[i], &nv[j], &e[k]));
        vec_add_scaled(&mut right, &field.one(), &ap3(br, &e[i], &e[j], &nv[k]));
        let right = vec_sub(&right, &n.apply(br.on_basis(i, j, k)));
        if left != right {
            return Some(violation("equivalence (4): bracket transfer", t, left, right));
        }
        // (5) psi2 - psi2' = {Na,Nb,c} + {Na,b,Nc} + {a,Nb,Nc}
        //      + psi1'(Na,b,c) + psi1'(a,Nb,c) + psi1'(a,b,Nc) - N(psi1(a,b,c))
        let left = vec_sub(d.psi2.on_basis(i, j, k), d_prime.psi2.on_basis(i, j, k));
        let mut right = ap3(br, &nv[i], &nv[j], &e[k]);
        vec_add_scaled(&mut right, &field.one(), &ap3(br, &nv[i], &e[j], &nv[k]));
        vec_add_scaled(&mut right, &field.one(), &ap3(br, &e[i], &nv[j], &nv[k]));
        vec_add_scaled(&mut right, &field.one(), &ap3(&d_prime.psi1, &nv[i], &e[j], &e[k]));
        vec_add_scaled(&mut right, &field.one(), &ap3(&d_prime.psi1, &e[i], &nv[j], &e[k]));
        vec_add_scaled(&mut right, &field.one(), &ap3(&d_prime.psi1, &e[i], &e[j], &nv[k]));
        let right = vec_sub(&right, &n.apply(d.psi1.on_basis(i, j, k)));
        if left != right {
            return Some(violation("equivalence (5): quadratic transfer", t, left, right));
        }
        // (6) N(psi2(a,b,c)) = psi1'(Na,Nb,c) + psi1'(Na,b,Nc) + psi1'(a,Nb,Nc)
        //      + psi2'(Na,b,c) + psi2'(a,Nb,c) + psi2'(a,b,Nc) + {Na,Nb,Nc}
        let left = n.apply(d.psi2.on_basis(i, j, k));
        let mut right = ap3(&d_prime.psi1, &nv[i], &nv[j], &e[k]);
        vec_add_scaled(&mut right, &field.one(), &ap3(&d_prime.psi1, &nv[i], &e[j], &nv[k]));
        vec_add_scaled(&mut right, &field.one(), &ap3(&d_prime.psi1, &e[i], &nv[j], &nv[k]));
        vec_add_scaled(&mut right, &field.one(), &ap3(&d_prime.psi2, &nv[i], &e[j], &e[k]));
        vec_add_scaled(&mut right, &field.one(), &ap3(&d_prime.psi2, &e[i], &nv[j], &e[k]));
        vec_add_scaled(&mut right, &field.one(), &ap3(&d_prime.psi2, &e[i], &e[j], &nv[k]));
        vec_add_scaled(&mut right, &field.one(), &ap3(br, &nv[i], &nv[j], &nv[k]));
        if left != right {
            return Some(violation("equivalence (6): cubic compatibility", t, left, right));
        }
        // (7) psi1'(Na,Nb,Nc) + psi2'(Na,Nb,c) + psi2'(Na,b,Nc) + psi2'(a,Nb,Nc) = 0
        let mut v = ap3(&d_prime.psi1, &nv[i], &nv[j], &nv[k]);
        vec_add_scaled(&mut v, &field.one(), &ap3(&d_prime.psi2, &nv[i], &nv[j], &e[k]));
        vec_add_scaled(&mut v, &field.one(), &ap3(&d_prime.psi2, &nv[i], &e[j], &nv[k]));
        vec_add_scaled(&mut v, &field.one(), &ap3(&d_prime.psi2, &e[i], &nv[j], &nv[k]));
        if !vec_is_zero(&v) {
            return Some(violation("equivalence (7): quartic term", t, v, zero_vector(field, dim)));
        }
        // (8) psi2'(Na,Nb,Nc) = 0
        let v = ap3(&d_prime.psi2, &nv[i], &nv[j], &nv[k]);
        if !vec_is_zero(&v) {
            return Some(violation("equivalence (8): quintic term", t, v, zero_vector(field, dim)));
        }
        None
    })))
}

/// Cross-check route for [`check_equivalence`]: verifies directly that
/// (Id + tN) is a t-polynomial homomorphism from d to d_prime on basis
/// tuples.
pub fn check_equivalence_via_homomorphism(
    n: &LinearMap,
    d: &LinearDeformation12,
    d_prime: &LinearDeformation12,
) -> Result<Check> {
    if d.base != d_prime.base {
        return Err(Error::DimensionMismatch(
            "deformations must share the same base algebra".into(),
        ));
    }
    let dim = d.dim();
    if n.dim_in() != dim || n.dim_out() != dim {
        return Err(Error::DimensionMismatch(format!(
            "N must be a {dim}x{dim} endomorphism"
        )));
    }
    let field = d.field();
    // (Id + tN) applied to a polynomial vector
    let idtn = |x: &PolyVec| -> PolyVec {
        let mut out = PolyVec::zero(field, dim);
        for k in 0..x.degree_bound() {
            let c = x.coeff(k);
            out.add_at(k, &c);
            out.add_at(k + 1, &n.apply(&c));
        }
        out.trim();
        out
    };
    let e = |i: usize| PolyVec::basis(field, dim, i);

    let binary = first_failure(&[dim, dim], |t| {
        let (i, j) = (t[0], t[1]);
        let left = idtn(&deformed_product(d, &e(i), &e(j)));
        let right = deformed_product(d_prime, &idtn(&e(i)), &idtn(&e(j)));
        poly_violation("homomorphism of deformed products", t, &left, &right)
    });
    if let Some(v) = binary {
        return Ok(Check::Fail(v));
    }
    Ok(Check::from_violation(first_failure(&[dim, dim, dim], |t| {
        let (i, j, k) = (t[0], t[1], t[2]);
        let left = idtn(&deformed_bracket(d, &e(i), &e(j), &e(k)));
        let right = deformed_bracket(d_prime, &idtn(&e(i)), &idtn(&e(j)), &idtn(&e(k)));
        poly_violation("homomorphism of deformed brackets", t, &left, &right)
    })))
}

// ---------------------------------------------------------------------------
// trivial deformations from a linear map

/// The deformation generated by a linear map N together with the verdict of
/// the two closure constraints; the constraints hold exactly when N is a
/// Nijenhuis operator.
#[derive(Debug, Clone)]
pub struct TrivialDeformationData {
    pub deformation: LinearDeformation12,
    pub constraints: Check,
}

/// Builds (phi1; psi1, psi2) from N by the trivial-deformation formulas and
/// reports whether N(phi1(a,b)) = N(a).N(b) and N(psi2(a,b,c)) = {Na,Nb,Nc}
/// hold on basis tuples.
pub fn extract_trivial_witness_data(base: &NambuPoissonAlgebra, n: &LinearMap) -> Result<TrivialDeformationData> {
    let dim = base.dim;
    if n.dim_in() != dim || n.dim_out() != dim {
        return Err(Error::DimensionMismatch(format!(
            "N must be a {dim}x{dim} endomorphism"
        )));
    }
    let field = base.field();
    let nv = map_columns(n);
    let e: Vec<Vec<Scalar>> = (0..dim).map(|i| basis_vector(field, dim, i)).collect();
    let ap2 = |m: &BilinearMap, x: &[Scalar], y: &[Scalar]| m.apply(x, y).expect("dims validated");
    let ap3 = |m: &TrilinearMap, x: &[Scalar], y: &[Scalar], z: &[Scalar]| m.apply(x, y, z).expect("dims validated");

    // phi1(a,b) = N(a).b + a.N(b) - N(a.b)
    let phi1 = BilinearMap::build(field, dim, dim, Sym2::Symmetric, |i, j| {
        let mut out = ap2(&base.product, &nv[i], &e[j]);
        vec_add_scaled(&mut out, &field.one(), &ap2(&base.product, &e[i], &nv[j]));
        vec_sub(&out, &n.apply(base.product.on_basis(i, j)))
    })?;
    // psi1(a,b,c) = {Na,b,c} + {a,Nb,c} + {a,b,Nc} - N{a,b,c}
    let psi1 = TrilinearMap::build(field, dim, dim, Sym3::FullySkew, |i, j, k| {
        let mut out = ap3(&base.bracket, &nv[i], &e[j], &e[k]);
        vec_add_scaled(&mut out, &field.one(), &ap3(&base.bracket, &e[i], &nv[j], &e[k]));
        vec_add_scaled(&mut out, &field.one(), &ap3(&base.bracket, &e[i], &e[j], &nv[k]));
        vec_sub(&out, &n.apply(base.bracket.on_basis(i, j, k)))
    })?;
    // psi2(a,b,c) = {Na,Nb,c} + {Na,b,Nc} + {a,Nb,Nc} - N(psi1(a,b,c))
    let psi2 = TrilinearMap::build(field, dim, dim, Sym3::FullySkew, |i, j, k| {
        let mut out = ap3(&base.bracket, &nv[i], &nv[j], &e[k]);
        vec_add_scaled(&mut out, &field.one(), &ap3(&base.bracket, &nv[i], &e[j], &nv[k]));
        vec_add_scaled(&mut out, &field.one(), &ap3(&base.bracket, &e[i], &nv[j], &nv[k]));
        vec_sub(&out, &n.apply(psi1.on_basis(i, j, k)))
    })?;

    // constraint: N(phi1(a,b)) = N(a).N(b)
    let c1 = first_failure(&[dim, dim], |t| {
        let (i, j) = (t[0], t[1]);
        let left = n.apply(phi1.on_basis(i, j));
        let right = ap2(&base.product, &nv[i], &nv[j]);
        (left != right).then(|| violation("trivial deformation constraint on the product", t, left, right))
    });
    let constraints = if let Some(v) = c1 {
        Check::Fail(v)
    } else {
        Check::from_violation(first_failure(&[dim, dim, dim], |t| {
            let (i, j, k) = (t[0], t[1], t[2]);
            let left = n.apply(psi2.on_basis(i, j, k));
            let right = ap3(&base.bracket, &nv[i], &nv[j], &nv[k]);
            (left != right).then(|| violation("trivial deformation constraint on the bracket", t, left, right))
        }))
    };

    Ok(TrivialDeformationData {
        deformation: LinearDeformation12::new(base.clone(), phi1, psi1, psi2)?,
        constraints,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::operator::check_nijenhuis;
    use crate::rng::SplitMix64;

    fn random_deformation(base: &NambuPoissonAlgebra, rng: &mut SplitMix64, bound: u32) -> LinearDeformation12 {
        let n = base.dim;
        let field = base.field();
        LinearDeformation12::new(
            base.clone(),
            BilinearMap::random(field, n, n, Sym2::Symmetric, rng, bound),
            TrilinearMap::random(field, n, n, Sym3::FullySkew, rng, bound),
            TrilinearMap::random(field, n, n, Sym3::FullySkew, rng, bound),
        )
        .unwrap()
    }

    #[test]
    fn undeformed_passes_both_routes() {
        for (name, a) in fixtures::all_np_fixtures(Field::Rational) {
            let d = LinearDeformation12::undeformed(a);
            assert!(check_deformation_direct(&d).is_pass(), "{name} direct");
            assert!(check_deformation_theorem(&d).is_pass(), "{name} theorem");
        }
    }

    #[test]
    fn routes_agree_on_random_candidates() {
        let mut rng = SplitMix64::new(404);
        for (name, a) in fixtures::all_np_fixtures(Field::Rational) {
            for _ in 0..15 {
                let d = random_deformation(&a, &mut rng, 1);
                let direct = check_deformation_direct(&d).is_pass();
                let theorem = check_deformation_theorem(&d).is_pass();
                assert_eq!(direct, theorem, "routes disagree on {name}");
            }
        }
    }

    #[test]
    fn nijenhuis_induced_deformation_is_valid_and_trivial() {
        let a = fixtures::bracket4(Field::Rational);
        let n = fixtures::nijenhuis_diag4(Field::Rational);
        assert!(check_nijenhuis(&a, &n).unwrap().is_pass());
        let data = extract_trivial_witness_data(&a, &n).unwrap();
        assert!(data.constraints.is_pass());
        assert!(check_deformation_direct(&data.deformation).is_pass());
        assert!(check_deformation_theorem(&data.deformation).is_pass());
        // equivalent to the undeformed one via Id + tN
        let undeformed = LinearDeformation12::undeformed(a);
        assert!(check_equivalence(&n, &data.deformation, &undeformed).unwrap().is_pass());
        assert!(check_equivalence_via_homomorphism(&n, &data.deformation, &undeformed)
            .unwrap()
            .is_pass());
    }

    #[test]
    fn non_nijenhuis_fails_constraints_and_check_agrees() {
        let a = fixtures::bracket4(Field::Rational);
        // diag(1, 2, 3, 4): the last eigenvalue misses the first three
        let n = LinearMap::diagonal(
            Field::Rational,
            &[
                Field::Rational.from_i64(1),
                Field::Rational.from_i64(2),
                Field::Rational.from_i64(3),
                Field::Rational.from_i64(4),
            ],
        );
        assert!(!check_nijenhuis(&a, &n).unwrap().is_pass());
        let data = extract_trivial_witness_data(&a, &n).unwrap();
        assert!(!data.constraints.is_pass());
    }

    #[test]
    fn zero_and_scalar_maps_give_closed_formulas() {
        let a = fixtures::bracket4(Field::Rational);
        // N = 0: everything vanishes
        let data = extract_trivial_witness_data(&a, &LinearMap::zero(Field::Rational, 4, 4)).unwrap();
        assert!(data.deformation.phi1.is_zero());
        assert!(data.deformation.psi1.is_zero());
        assert!(data.deformation.psi2.is_zero());
        assert!(data.constraints.is_pass());
        // N = lambda Id: phi1 = lambda(a.b) = 0 here (zero product),
        // psi1 = 2 lambda {a,b,c}, psi2 = lambda^2 {a,b,c}
        let lam = 3i64;
        let n = LinearMap::scaled_identity(Field::Rational, 4, &Field::Rational.from_i64(lam));
        let data = extract_trivial_witness_data(&a, &n).unwrap();
        assert!(data.constraints.is_pass());
        assert!(data.deformation.phi1.is_zero());
        assert_eq!(data.deformation.psi1.entry(0, 1, 2, 3), &Field::Rational.from_i64(2 * lam));
        assert_eq!(data.deformation.psi2.entry(0, 1, 2, 3), &Field::Rational.from_i64(lam * lam));
    }

    #[test]
    fn trivial_deformation_implies_nijenhuis() {
        // whenever (Id + tN) relates the induced deformation to the
        // undeformed one, N is a Nijenhuis operator
        let a = fixtures::bracket4(Field::Rational);
        let undeformed = LinearDeformation12::undeformed(a.clone());
        let mut rng = SplitMix64::new(86);
        let mut trivial_seen = 0;
        for trial in 0..30 {
            let n = if trial % 3 == 0 {
                let diag: Vec<Scalar> = (0..4).map(|_| rng.scalar(Field::Rational, 2)).collect();
                LinearMap::diagonal(Field::Rational, &diag)
            } else {
                LinearMap::random(Field::Rational, 4, 4, &mut rng, 1)
            };
            let data = extract_trivial_witness_data(&a, &n).unwrap();
            if check_equivalence(&n, &data.deformation, &undeformed).unwrap().is_pass() {
                trivial_seen += 1;
                assert!(check_nijenhuis(&a, &n).unwrap().is_pass());
            }
        }
        assert!(trivial_seen > 0);
    }

    #[test]
    fn equivalence_negative_cases() {
        let a = fixtures::bracket4(Field::Rational);
        let undeformed = LinearDeformation12::undeformed(a.clone());
        // N = 0 relates equal deformations only
        let zero_map = LinearMap::zero(Field::Rational, 4, 4);
        assert!(check_equivalence(&zero_map, &undeformed, &undeformed).unwrap().is_pass());
        let mut rng = SplitMix64::new(5);
        let d = random_deformation(&a, &mut rng, 2);
        let verdict = check_equivalence(&zero_map, &d, &undeformed).unwrap();
        assert!(!verdict.is_pass());
        assert!(verdict.report().unwrap().axiom.starts_with("equivalence (1)"));
    }

    #[test]
    fn equivalence_routes_agree_on_random_input() {
        let a = fixtures::truncated_poly3(Field::Rational);
        let mut rng = SplitMix64::new(50);
        for _ in 0..10 {
            let d = random_deformation(&a, &mut rng, 1);
            let d2 = random_deformation(&a, &mut rng, 1);
            let n = LinearMap::random(Field::Rational, 3, 3, &mut rng, 1);
            let ids = check_equivalence(&n, &d, &d2).unwrap().is_pass();
            let hom = check_equivalence_via_homomorphism(&n, &d, &d2).unwrap().is_pass();
            assert_eq!(ids, hom);
        }
    }

    #[test]
    fn routes_agree_over_finite_fields() {
        let f = Field::gf(3).unwrap();
        let a = fixtures::bracket4(f);
        let mut rng = SplitMix64::new(12);
        for _ in 0..20 {
            let d = random_deformation(&a, &mut rng, 2);
            assert_eq!(
                check_deformation_direct(&d).is_pass(),
                check_deformation_theorem(&d).is_pass()
            );
        }
        // the diagonal Nijenhuis fixture works over GF(3) too
        let n = fixtures::nijenhuis_diag4(f);
        assert!(check_nijenhuis(&a, &n).unwrap().is_pass());
        let data = extract_trivial_witness_data(&a, &n).unwrap();
        assert!(data.constraints.is_pass());
        assert!(check_deformation_direct(&data.deformation).is_pass());
    }

    #[test]
    fn psi1_self_interaction_is_isolated_at_clause_iii() {
        // over the zero base with phi1 = psi2 = 0, clauses (i) and (ii)
        // hold vacuously and the first mixed equation collapses to the
        // fundamental identity of psi1 alone
        let base = fixtures::zero_np(Field::Rational, 4);
        let field = Field::Rational;
        let psi1 = TrilinearMap::from_entries(
            field,
            4,
            4,
            Sym3::FullySkew,
            &[(0, 1, 2, 0, field.one()), (0, 1, 3, 1, field.one())],
        )
        .unwrap();
        let d = LinearDeformation12::new(
            base,
            BilinearMap::zero(field, 4, 4, Sym2::Symmetric),
            psi1,
            TrilinearMap::zero(field, 4, 4, Sym3::FullySkew),
        )
        .unwrap();
        let verdict = check_deformation_theorem(&d);
        assert!(!verdict.is_pass());
        assert!(verdict.report().unwrap().axiom.contains("first mixed equation"));
        assert!(!check_deformation_direct(&d).is_pass());
    }

    #[test]
    fn psi2_violation_is_isolated_over_zero_base() {
        // over the zero algebra with phi1 = psi1 = 0, only clause (ii) can
        // fail; pick a psi2 that breaks the fundamental identity.
        let base = fixtures::zero_np(Field::Rational, 4);
        let field = Field::Rational;
        let psi2 = TrilinearMap::from_entries(
            field,
            4,
            4,
            Sym3::FullySkew,
            &[(0, 1, 2, 0, field.one()), (0, 1, 3, 1, field.one())],
        )
        .unwrap();
        let d = LinearDeformation12::new(
            base,
            BilinearMap::zero(field, 4, 4, Sym2::Symmetric),
            TrilinearMap::zero(field, 4, 4, Sym3::FullySkew),
            psi2,
        )
        .unwrap();
        let verdict = check_deformation_theorem(&d);
        assert!(!verdict.is_pass());
        assert!(verdict.report().unwrap().axiom.contains("clause (ii)"));
        assert!(!check_deformation_direct(&d).is_pass());
    }
}
