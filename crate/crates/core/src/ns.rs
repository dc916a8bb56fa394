//! NS-commutative, NS-3-Lie and NS-Nambu-Poisson algebras: checkers,
//! subadjacent structures, induced representations/cocycles, and the
//! constructions from Nijenhuis operators, twisted O-operators, invertible
//! transfers and Reynolds operators.
//!
//! Notation used throughout: `odot` is the symmetrized product
//! `a (.) b = a <> b + b <> a + a * b`, and `total` is the totalized
//! bracket `{{a,b,c}} = [a,b,c] + [b,c,a] + [c,a,b] + [[a,b,c]]`. The
//! partial bracket is skew in its first two arguments only; no hidden full
//! skew-symmetrization is applied.

use crate::algebra::{violation, Check, NambuPoissonAlgebra};
use crate::cohomology::CocyclePair;
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::operator::{check_nijenhuis, check_reynolds, check_twisted_o, TwistedOCandidate};
use crate::rep::NPRepresentation;
use crate::scalar::{Field, Scalar};
use crate::scan::first_failure;
use crate::tensor::{BilinearMap, LinearMap, Sym2, Sym3, TrilinearMap};
use crate::vector::{basis_vector, vec_add, vec_add_scaled, vec_sub, zero_vector};

/// A pair of products (<>, *) where * is commutative.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NSCommAlgebra {
    pub dim: usize,
    pub diamond: BilinearMap,
    pub star: BilinearMap,
}

impl NSCommAlgebra {
    pub fn new(diamond: BilinearMap, star: BilinearMap) -> Result<NSCommAlgebra> {
        if star.sym() != Sym2::Symmetric {
            return Err(Error::SymmetryViolation("star must be symmetric".into()));
        }
        if diamond.dim_in() != diamond.dim_out()
            || star.dim_in() != diamond.dim_in()
            || star.dim_out() != diamond.dim_in()
        {
            return Err(Error::DimensionMismatch(
                "diamond and star must be endomorphic operations of one dimension".into(),
            ));
        }
        Ok(NSCommAlgebra {
            dim: diamond.dim_in(),
            diamond,
            star,
        })
    }
}

/// `A pair of ternary operations ([ , , ], [[ , , ]]) where the first is`
/// skew in its first two arguments and the second is fully skew.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NS3LieAlgebra {
    pub dim: usize,
    pub sq: TrilinearMap,
    pub dsq: TrilinearMap,
}

impl NS3LieAlgebra {
    pub fn new(sq: TrilinearMap, dsq: TrilinearMap) -> Result<NS3LieAlgebra> {
        if sq.sym() != Sym3::SkewFirstTwo {
            return Err(Error::SymmetryViolation(
                "the partial bracket must be skew in its first two arguments".into(),
            ));
        }
        if dsq.sym() != Sym3::FullySkew {
            return Err(Error::SymmetryViolation("the total part must be fully skew".into()));
        }
        if sq.dim_in() != sq.dim_out() || dsq.dim_in() != sq.dim_in() || dsq.dim_out() != sq.dim_in() {
            return Err(Error::DimensionMismatch(
                "both brackets must be endomorphic operations of one dimension".into(),
            ));
        }
        Ok(NS3LieAlgebra {
            dim: sq.dim_in(),
            sq,
            dsq,
        })
    }
}

/// `The quintuple (A, <>, *, [ , , ], [[ , , ]]).`
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NSNambuPoissonAlgebra {
    pub dim: usize,
    pub diamond: BilinearMap,
    pub star: BilinearMap,
    pub sq: TrilinearMap,
    pub dsq: TrilinearMap,
}

impl NSNambuPoissonAlgebra {
    pub fn new(
        diamond: BilinearMap,
        star: BilinearMap,
        sq: TrilinearMap,
        dsq: TrilinearMap,
    ) -> Result<NSNambuPoissonAlgebra> {
        let comm = NSCommAlgebra::new(diamond, star)?;
        let lie = NS3LieAlgebra::new(sq, dsq)?;
        if comm.dim != lie.dim {
            return Err(Error::DimensionMismatch(
                "binary and ternary parts live on different dimensions".into(),
            ));
        }
        Ok(NSNambuPoissonAlgebra {
            dim: comm.dim,
            diamond: comm.diamond,
            star: comm.star,
            sq: lie.sq,
            dsq: lie.dsq,
        })
    }

    /// Embeds a Nambu-Poisson algebra as (0, ., 0, { , , }).
    pub fn from_np(a: &NambuPoissonAlgebra) -> NSNambuPoissonAlgebra {
        let field = a.field();
        NSNambuPoissonAlgebra {
            dim: a.dim,
            diamond: BilinearMap::zero(field, a.dim, a.dim, Sym2::None),
            star: a.product.clone(),
            sq: TrilinearMap::zero(field, a.dim, a.dim, Sym3::SkewFirstTwo),
            dsq: a.bracket.clone(),
        }
    }

    pub fn field(&self) -> Field {
        self.star.field()
    }

    pub fn comm_part(&self) -> NSCommAlgebra {
        NSCommAlgebra {
            dim: self.dim,
            diamond: self.diamond.clone(),
            star: self.star.clone(),
        }
    }

    pub fn lie_part(&self) -> NS3LieAlgebra {
        NS3LieAlgebra {
            dim: self.dim,
            sq: self.sq.clone(),
            dsq: self.dsq.clone(),
        }
    }
}

/// The symmetrized product a (.) b = a <> b + b <> a + a * b.
fn odot_map(diamond: &BilinearMap, star: &BilinearMap) -> BilinearMap {
    let n = diamond.dim_in();
    let field = diamond.field();
    BilinearMap::build(field, n, n, Sym2::Symmetric, |i, j| {
        let mut out = vec_add(diamond.on_basis(i, j), diamond.on_basis(j, i));
        vec_add_scaled(&mut out, &field.one(), star.on_basis(i, j));
        out
    })
    .expect("odot is symmetric by construction")
}

/// `The totalized bracket {{a,b,c}} = [a,b,c] + [b,c,a] + [c,a,b] + [[a,b,c]].`
fn total_map(sq: &TrilinearMap, dsq: &TrilinearMap) -> TrilinearMap {
    let n = sq.dim_in();
    let field = sq.field();
    TrilinearMap::build(field, n, n, Sym3::FullySkew, |i, j, k| {
        let mut out = vec_add(sq.on_basis(i, j, k), sq.on_basis(j, k, i));
        vec_add_scaled(&mut out, &field.one(), sq.on_basis(k, i, j));
        vec_add_scaled(&mut out, &field.one(), dsq.on_basis(i, j, k));
        out
    })
    .expect("the totalized bracket is fully skew by construction")
}

/// The two NS-commutative identities on basis triples.
pub fn check_ns_commutative(x: &NSCommAlgebra) -> Check {
    let n = x.dim;
    let field = x.diamond.field();
    let odot = odot_map(&x.diamond, &x.star);
    let dia = &x.diamond;
    let star = &x.star;
    let ct = |row: &[Scalar], f: &dyn Fn(usize) -> Vec<Scalar>| {
        let mut out = zero_vector(field, n);
        for (w, c) in row.iter().enumerate() {
            if !c.is_zero() {
                vec_add_scaled(&mut out, c, &f(w));
            }
        }
        out
    };
    Check::from_violation(first_failure(&[n, n, n], |t| {
        let (a, b, c) = (t[0], t[1], t[2]);
        // a <> (b <> c) = (a (.) b) <> c
        let left = ct(dia.on_basis(b, c), &|w| dia.on_basis(a, w).to_vec());
        let right = ct(odot.on_basis(a, b), &|w| dia.on_basis(w, c).to_vec());
        if left != right {
            return Some(violation("ns-commutative associator identity", t, left, right));
        }
        // a <> (b * c) + a * (b (.) c) = b <> (a * c) + b * (a (.) c)
        let mut left = ct(star.on_basis(b, c), &|w| dia.on_basis(a, w).to_vec());
        vec_add_scaled(&mut left, &field.one(), &ct(odot.on_basis(b, c), &|w| star.on_basis(a, w).to_vec()));
        let mut right = ct(star.on_basis(a, c), &|w| dia.on_basis(b, w).to_vec());
        vec_add_scaled(&mut right, &field.one(), &ct(odot.on_basis(a, c), &|w| star.on_basis(b, w).to_vec()));
        (left != right).then(|| violation("ns-commutative exchange identity", t, left, right))
    }))
}

/// The three NS-3-Lie identities on basis 5-tuples.
pub fn check_ns_3lie(x: &NS3LieAlgebra) -> Check {
    let n = x.dim;
    let field = x.sq.field();
    let total = total_map(&x.sq, &x.dsq);
    let sq = &x.sq;
    let dsq = &x.dsq;
    let ct = |row: &[Scalar], f: &dyn Fn(usize) -> Vec<Scalar>| {
        let mut out = zero_vector(field, n);
        for (w, c) in row.iter().enumerate() {
            if !c.is_zero() {
                vec_add_scaled(&mut out, c, &f(w));
            }
        }
        out
    };
    Check::from_violation(first_failure(&[n, n, n, n, n], |t| {
        let (a, b, c, d, e) = (t[0], t[1], t[2], t[3], t[4]);
        // [a,b,[c,d,e]] = [{{a,b,c}},d,e] + [c,{{a,b,d}},e] + [c,d,[a,b,e]]
        let left = ct(sq.on_basis(c, d, e), &|w| sq.on_basis(a, b, w).to_vec());
        let mut right = ct(total.on_basis(a, b, c), &|w| sq.on_basis(w, d, e).to_vec());
        vec_add_scaled(&mut right, &field.one(), &ct(total.on_basis(a, b, d), &|w| sq.on_basis(c, w, e).to_vec()));
        vec_add_scaled(&mut right, &field.one(), &ct(sq.on_basis(a, b, e), &|w| sq.on_basis(c, d, w).to_vec()));
        if left != right {
            return Some(violation("ns-3-lie first identity", t, left, right));
        }
        // [{{a,b,c}},d,e] = [a,b,[c,d,e]] + [b,c,[a,d,e]] + [c,a,[b,d,e]]
        let left = ct(total.on_basis(a, b, c), &|w| sq.on_basis(w, d, e).to_vec());
        let mut right = ct(sq.on_basis(c, d, e), &|w| sq.on_basis(a, b, w).to_vec());
        vec_add_scaled(&mut right, &field.one(), &ct(sq.on_basis(a, d, e), &|w| sq.on_basis(b, c, w).to_vec()));
        vec_add_scaled(&mut right, &field.one(), &ct(sq.on_basis(b, d, e), &|w| sq.on_basis(c, a, w).to_vec()));
        if left != right {
            return Some(violation("ns-3-lie second identity", t, left, right));
        }
        // [[a,b,{{c,d,e}}]] + [a,b,[[c,d,e]]]
        //   = [[{{a,b,c}},d,e]] + [[c,{{a,b,d}},e]] + [[c,d,{{a,b,e}}]]
        //     + [d,e,[[a,b,c]]] + [e,c,[[a,b,d]]] + [c,d,[[a,b,e]]]
        let mut left = ct(total.on_basis(c, d, e), &|w| dsq.on_basis(a, b, w).to_vec());
        vec_add_scaled(&mut left, &field.one(), &ct(dsq.on_basis(c, d, e), &|w| sq.on_basis(a, b, w).to_vec()));
        let mut right = ct(total.on_basis(a, b, c), &|w| dsq.on_basis(w, d, e).to_vec());
        vec_add_scaled(&mut right, &field.one(), &ct(total.on_basis(a, b, d), &|w| dsq.on_basis(c, w, e).to_vec()));
        vec_add_scaled(&mut right, &field.one(), &ct(total.on_basis(a, b, e), &|w| dsq.on_basis(c, d, w).to_vec()));
        vec_add_scaled(&mut right, &field.one(), &ct(dsq.on_basis(a, b, c), &|w| sq.on_basis(d, e, w).to_vec()));
        vec_add_scaled(&mut right, &field.one(), &ct(dsq.on_basis(a, b, d), &|w| sq.on_basis(e, c, w).to_vec()));
        vec_add_scaled(&mut right, &field.one(), &ct(dsq.on_basis(a, b, e), &|w| sq.on_basis(c, d, w).to_vec()));
        (left != right).then(|| violation("ns-3-lie mixed identity", t, left, right))
    }))
}

/// Full NS-Nambu-Poisson check: both component checks plus the three
/// compatibilities on basis 4-tuples.
pub fn check_ns_np(x: &NSNambuPoissonAlgebra) -> Check {
    let comm = check_ns_commutative(&x.comm_part());
    if !comm.is_pass() {
        return comm;
    }
    let lie = check_ns_3lie(&x.lie_part());
    if !lie.is_pass() {
        return lie;
    }
    let n = x.dim;
    let field = x.field();
    let odot = odot_map(&x.diamond, &x.star);
    let total = total_map(&x.sq, &x.dsq);
    let (dia, star, sq, dsq) = (&x.diamond, &x.star, &x.sq, &x.dsq);
    let ct = |row: &[Scalar], f: &dyn Fn(usize) -> Vec<Scalar>| {
        let mut out = zero_vector(field, n);
        for (w, c) in row.iter().enumerate() {
            if !c.is_zero() {
                vec_add_scaled(&mut out, c, &f(w));
            }
        }
        out
    };
    Check::from_violation(first_failure(&[n, n, n, n], |t| {
        let (a, b, c, d) = (t[0], t[1], t[2], t[3]);
        // {{a,b,c}} <> d = [a,b,c <> d] - c <> [a,b,d]
        let left = ct(total.on_basis(a, b, c), &|w| dia.on_basis(w, d).to_vec());
        let r1 = ct(dia.on_basis(c, d), &|w| sq.on_basis(a, b, w).to_vec());
        let r2 = ct(sq.on_basis(a, b, d), &|w| dia.on_basis(c, w).to_vec());
        let right = vec_sub(&r1, &r2);
        if left != right {
            return Some(violation("ns compatibility (bracket acts on diamond)", t, left, right));
        }
        // [a (.) b, c, d] = a <> [b,c,d] + b <> [a,c,d]
        let left = ct(odot.on_basis(a, b), &|w| sq.on_basis(w, c, d).to_vec());
        let mut right = ct(sq.on_basis(b, c, d), &|w| dia.on_basis(a, w).to_vec());
        vec_add_scaled(&mut right, &field.one(), &ct(sq.on_basis(a, c, d), &|w| dia.on_basis(b, w).to_vec()));
        if left != right {
            return Some(violation("ns compatibility (odot in the bracket)", t, left, right));
        }
        // [[a,b,c (.) d]] + [a,b,c * d]
        //   = c * {{a,b,d}} + c <> [[a,b,d]] + {{a,b,c}} * d + d <> [[a,b,c]]
        let mut left = ct(odot.on_basis(c, d), &|w| dsq.on_basis(a, b, w).to_vec());
        vec_add_scaled(&mut left, &field.one(), &ct(star.on_basis(c, d), &|w| sq.on_basis(a, b, w).to_vec()));
        let mut right = ct(total.on_basis(a, b, d), &|w| star.on_basis(c, w).to_vec());
        vec_add_scaled(&mut right, &field.one(), &ct(dsq.on_basis(a, b, d), &|w| dia.on_basis(c, w).to_vec()));
        vec_add_scaled(&mut right, &field.one(), &ct(total.on_basis(a, b, c), &|w| star.on_basis(w, d).to_vec()));
        vec_add_scaled(&mut right, &field.one(), &ct(dsq.on_basis(a, b, c), &|w| dia.on_basis(d, w).to_vec()));
        (left != right).then(|| violation("ns compatibility (mixed star identity)", t, left, right))
    }))
}

/// The subadjacent Nambu-Poisson algebra (A, (.), {{ , , }}).
pub fn subadjacent_np(x: &NSNambuPoissonAlgebra) -> Result<NambuPoissonAlgebra> {
    check_ns_np(x).require("subadjacent_np: NS structure")?;
    NambuPoissonAlgebra::new(odot_map(&x.diamond, &x.star), total_map(&x.sq, &x.dsq))
}

/// `The representation (mu_<>, rho_[ , , ]) of the subadjacent algebra and`
/// `the cocycle pair (phi_*, psi_[[ , , ]]).`
pub fn ns_induced_rep_cocycle(x: &NSNambuPoissonAlgebra) -> Result<(NPRepresentation, CocyclePair)> {
    check_ns_np(x).require("ns_induced_rep_cocycle: NS structure")?;
    let n = x.dim;
    let field = x.field();
    let mu = (0..n)
        .map(|i| Matrix::from_fn(field, n, n, |row, col| x.diamond.entry(i, col, row).clone()))
        .collect();
    let mut rho = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            rho.push(Matrix::from_fn(field, n, n, |row, col| {
                x.sq.entry(i, j, col, row).clone()
            }));
        }
    }
    let rep = NPRepresentation::new(n, n, field, mu, rho)?;
    let pair = CocyclePair::new(x.star.clone(), x.dsq.clone())?;
    Ok((rep, pair))
}

/// The NS structure induced by a Nijenhuis operator:
/// `a <> b = N(a).b, a * b = -N(a.b), [a,b,c] = {Na,Nb,c},`
/// `[[a,b,c]] = -N({Na,b,c} + {a,Nb,c} + {a,b,Nc} - N{a,b,c}).`
pub fn ns_from_nijenhuis(a: &NambuPoissonAlgebra, n: &LinearMap) -> Result<NSNambuPoissonAlgebra> {
    check_nijenhuis(a, n)?.require("ns_from_nijenhuis: N")?;
    let dim = a.dim;
    let field = a.field();
    let nv: Vec<Vec<Scalar>> = (0..dim).map(|i| n.on_basis(i)).collect();
    let e: Vec<Vec<Scalar>> = (0..dim).map(|i| basis_vector(field, dim, i)).collect();
    let ap2 = |x: &[Scalar], y: &[Scalar]| a.product.apply(x, y).expect("dims validated");
    let ap3 = |x: &[Scalar], y: &[Scalar], z: &[Scalar]| a.bracket.apply(x, y, z).expect("dims validated");

    let diamond = BilinearMap::build(field, dim, dim, Sym2::None, |i, j| ap2(&nv[i], &e[j]))?;
    let star = BilinearMap::build(field, dim, dim, Sym2::Symmetric, |i, j| {
        crate::vector::vec_neg(&n.apply(a.product.on_basis(i, j)))
    })?;
    let sq = TrilinearMap::build(field, dim, dim, Sym3::SkewFirstTwo, |i, j, k| {
        ap3(&nv[i], &nv[j], &e[k])
    })?;
    let dsq = TrilinearMap::build(field, dim, dim, Sym3::FullySkew, |i, j, k| {
        let mut inner = ap3(&nv[i], &e[j], &e[k]);
        vec_add_scaled(&mut inner, &field.one(), &ap3(&e[i], &nv[j], &e[k]));
        vec_add_scaled(&mut inner, &field.one(), &ap3(&e[i], &e[j], &nv[k]));
        let inner = vec_sub(&inner, &n.apply(a.bracket.on_basis(i, j, k)));
        crate::vector::vec_neg(&n.apply(&inner))
    })?;
    NSNambuPoissonAlgebra::new(diamond, star, sq, dsq)
}

/// The NS structure induced on V by a twisted O-operator:
/// `u <> v = mu(r(u))v, u * v = phi(r(u),r(v)), [u,v,w] = rho(r(u),r(v))w,`
/// `[[u,v,w]] = psi(r(u),r(v),r(w)).`
pub fn ns_from_twisted_o(c: &TwistedOCandidate, a: &NambuPoissonAlgebra) -> Result<NSNambuPoissonAlgebra> {
    check_twisted_o(c, a)?.require("ns_from_twisted_o: r")?;
    let m = c.rep.module_dim;
    let field = a.field();
    let rv: Vec<Vec<Scalar>> = (0..m).map(|i| c.r.on_basis(i)).collect();
    let fvec: Vec<Vec<Scalar>> = (0..m).map(|i| basis_vector(field, m, i)).collect();

    let diamond = BilinearMap::build(field, m, m, Sym2::None, |i, j| {
        c.rep.mu_of(&rv[i]).apply(&fvec[j])
    })?;
    let star = BilinearMap::build(field, m, m, Sym2::Symmetric, |i, j| {
        c.pair.phi.apply(&rv[i], &rv[j]).expect("dims validated")
    })?;
    let sq = TrilinearMap::build(field, m, m, Sym3::SkewFirstTwo, |i, j, k| {
        c.rep.rho_of(&rv[i], &rv[j]).apply(&fvec[k])
    })?;
    let dsq = TrilinearMap::build(field, m, m, Sym3::FullySkew, |i, j, k| {
        c.pair.psi.apply(&rv[i], &rv[j], &rv[k]).expect("dims validated")
    })?;
    NSNambuPoissonAlgebra::new(diamond, star, sq, dsq)
}

/// Transfers the NS structure along an invertible twisted O-operator back
/// to A: a <> b = r(mu(a) r^-1(b)), a * b = r(phi(a,b)),
/// `[a,b,c] = r(rho(a,b) r^-1(c)), [[a,b,c]] = r(psi(a,b,c)).`
pub fn transfer_ns_via_invertible(c: &TwistedOCandidate, a: &NambuPoissonAlgebra) -> Result<NSNambuPoissonAlgebra> {
    if c.rep.module_dim != a.dim {
        return Err(Error::NotInvertible);
    }
    let rinv = c.r.invert()?;
    check_twisted_o(c, a)?.require("transfer_ns_via_invertible: r")?;
    let n = a.dim;
    let field = a.field();
    let rinv_col: Vec<Vec<Scalar>> = (0..n).map(|i| rinv.on_basis(i)).collect();

    let diamond = BilinearMap::build(field, n, n, Sym2::None, |i, j| {
        c.r.apply(&c.rep.mu(i).apply(&rinv_col[j]))
    })?;
    let star = BilinearMap::build(field, n, n, Sym2::Symmetric, |i, j| {
        c.r.apply(c.pair.phi.on_basis(i, j))
    })?;
    let sq = TrilinearMap::build(field, n, n, Sym3::SkewFirstTwo, |i, j, k| {
        c.r.apply(&c.rep.rho(i, j).apply(&rinv_col[k]))
    })?;
    let dsq = TrilinearMap::build(field, n, n, Sym3::FullySkew, |i, j, k| {
        c.r.apply(c.pair.psi.on_basis(i, j, k))
    })?;
    NSNambuPoissonAlgebra::new(diamond, star, sq, dsq)
}

/// The Nambu-Poisson algebra and NS structure induced by a Reynolds
/// operator.
pub fn ns_from_reynolds(
    a: &NambuPoissonAlgebra,
    r: &LinearMap,
) -> Result<(NambuPoissonAlgebra, NSNambuPoissonAlgebra)> {
    check_reynolds(a, r)?.require("ns_from_reynolds: R")?;
    let dim = a.dim;
    let field = a.field();
    let rv: Vec<Vec<Scalar>> = (0..dim).map(|i| r.on_basis(i)).collect();
    let e: Vec<Vec<Scalar>> = (0..dim).map(|i| basis_vector(field, dim, i)).collect();
    let ap2 = |x: &[Scalar], y: &[Scalar]| a.product.apply(x, y).expect("dims validated");
    let ap3 = |x: &[Scalar], y: &[Scalar], z: &[Scalar]| a.bracket.apply(x, y, z).expect("dims validated");

    let product = BilinearMap::build(field, dim, dim, Sym2::Symmetric, |i, j| {
        let mut out = ap2(&rv[i], &e[j]);
        vec_add_scaled(&mut out, &field.one(), &ap2(&e[i], &rv[j]));
        vec_sub(&out, &ap2(&rv[i], &rv[j]))
    })?;
    let bracket = TrilinearMap::build(field, dim, dim, Sym3::FullySkew, |i, j, k| {
        let mut out = ap3(&rv[i], &rv[j], &e[k]);
        vec_add_scaled(&mut out, &field.one(), &ap3(&rv[i], &e[j], &rv[k]));
        vec_add_scaled(&mut out, &field.one(), &ap3(&e[i], &rv[j], &rv[k]));
        vec_sub(&out, &ap3(&rv[i], &rv[j], &rv[k]))
    })?;
    let np = NambuPoissonAlgebra::new(product, bracket)?;

    let diamond = BilinearMap::build(field, dim, dim, Sym2::None, |i, j| ap2(&rv[i], &e[j]))?;
    let star = BilinearMap::build(field, dim, dim, Sym2::Symmetric, |i, j| {
        crate::vector::vec_neg(&ap2(&rv[i], &rv[j]))
    })?;
    let sq = TrilinearMap::build(field, dim, dim, Sym3::SkewFirstTwo, |i, j, k| {
        ap3(&rv[i], &rv[j], &e[k])
    })?;
    let dsq = TrilinearMap::build(field, dim, dim, Sym3::FullySkew, |i, j, k| {
        crate::vector::vec_neg(&ap3(&rv[i], &rv[j], &rv[k]))
    })?;
    Ok((np, NSNambuPoissonAlgebra::new(diamond, star, sq, dsq)?))
}
