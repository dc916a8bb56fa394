//! Dense bilinear/trilinear structure-constant tensors with enforced
//! symmetry classes, plus linear maps between indexed spaces.
//!
//! Canonical input slots: symmetric bilinear maps list `i <= j`, skew
//! bilinear maps list `i < j`, fully skew trilinear maps list `i < j < k`,
//! and maps skew in the first two arguments list `i < j` with the third
//! index free. The full tensor is materialized by the sign rules of the
//! declared class; dimensions here stay small enough that dense storage is
//! the simple and exact choice.

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::rng::SplitMix64;
use crate::scalar::{Field, Scalar};
use crate::vector::{vec_add_scaled, zero_vector};

/// Symmetry class of a bilinear map.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sym2 {
    Symmetric,
    Skew,
    None,
}

/// Symmetry class of a trilinear map.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sym3 {
    FullySkew,
    SkewFirstTwo,
    None,
}

/// A bilinear map `k^n x k^n -> k^m` stored as a dense `n*n*m` tensor.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BilinearMap {
    dim_in: usize,
    dim_out: usize,
    field: Field,
    sym: Sym2,
    c: Vec<Scalar>,
}

impl BilinearMap {
    pub fn zero(field: Field, dim_in: usize, dim_out: usize, sym: Sym2) -> BilinearMap {
        BilinearMap {
            dim_in,
            dim_out,
            field,
            sym,
            c: vec![field.zero(); dim_in * dim_in * dim_out],
        }
    }

    /// Builds the full tensor from entries on canonical slots only.
    pub fn from_entries(
        field: Field,
        dim_in: usize,
        dim_out: usize,
        sym: Sym2,
        entries: &[(usize, usize, usize, Scalar)],
    ) -> Result<BilinearMap> {
        let mut map = BilinearMap::zero(field, dim_in, dim_out, sym);
        let mut seen = std::collections::HashSet::new();
        for (i, j, k, v) in entries {
            let (i, j, k) = (*i, *j, *k);
            if i >= dim_in || j >= dim_in || k >= dim_out {
                return Err(Error::IndexOutOfRange(format!("entry ({i},{j},{k})")));
            }
            let canonical = match sym {
                Sym2::Symmetric => i <= j,
                Sym2::Skew => i < j,
                Sym2::None => true,
            };
            if !canonical {
                return Err(Error::SymmetryViolation(format!(
                    "slot ({i},{j},{k}) is not canonical for this symmetry class"
                )));
            }
            if !seen.insert((i, j, k)) {
                return Err(Error::SymmetryViolation(format!(
                    "duplicate canonical slot ({i},{j},{k})"
                )));
            }
            if v.field() != field {
                return Err(Error::FieldMismatch(format!("entry ({i},{j},{k})")));
            }
            map.c[(i * dim_in + j) * dim_out + k] = v.clone();
            match sym {
                Sym2::Symmetric if i != j => {
                    map.c[(j * dim_in + i) * dim_out + k] = v.clone();
                }
                Sym2::Skew => {
                    map.c[(j * dim_in + i) * dim_out + k] = -v;
                }
                _ => {}
            }
        }
        Ok(map)
    }

    /// Wraps a full dense tensor, validating the declared symmetry.
    pub fn from_full(
        field: Field,
        dim_in: usize,
        dim_out: usize,
        sym: Sym2,
        c: Vec<Scalar>,
    ) -> Result<BilinearMap> {
        if c.len() != dim_in * dim_in * dim_out {
            return Err(Error::DimensionMismatch(format!(
                "expected {} entries, got {}",
                dim_in * dim_in * dim_out,
                c.len()
            )));
        }
        if let Some(bad) = c.iter().find(|v| v.field() != field) {
            return Err(Error::FieldMismatch(format!("entry {bad}")));
        }
        let map = BilinearMap {
            dim_in,
            dim_out,
            field,
            sym,
            c,
        };
        map.validate_symmetry()?;
        Ok(map)
    }

    /// Builds the full tensor from a formula on basis pairs, then validates
    /// the declared symmetry (catching formula bugs instead of hiding them).
    pub fn build(
        field: Field,
        dim_in: usize,
        dim_out: usize,
        sym: Sym2,
        f: impl Fn(usize, usize) -> Vec<Scalar>,
    ) -> Result<BilinearMap> {
        let mut c = Vec::with_capacity(dim_in * dim_in * dim_out);
        for i in 0..dim_in {
            for j in 0..dim_in {
                let v = f(i, j);
                assert_eq!(v.len(), dim_out, "formula produced wrong output dimension");
                c.extend(v);
            }
        }
        BilinearMap::from_full(field, dim_in, dim_out, sym, c)
    }

    fn validate_symmetry(&self) -> Result<()> {
        let n = self.dim_in;
        for i in 0..n {
            for j in 0..n {
                for k in 0..self.dim_out {
                    let a = self.entry(i, j, k);
                    let b = self.entry(j, i, k);
                    let ok = match self.sym {
                        Sym2::Symmetric => a == b,
                        Sym2::Skew => *a == -b && (i != j || a.is_zero()),
                        Sym2::None => true,
                    };
                    if !ok {
                        return Err(Error::SymmetryViolation(format!(
                            "bilinear slot ({i},{j},{k}) breaks the declared class"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn dim_in(&self) -> usize {
        self.dim_in
    }

    pub fn dim_out(&self) -> usize {
        self.dim_out
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn sym(&self) -> Sym2 {
        self.sym
    }

    pub fn entry(&self, i: usize, j: usize, k: usize) -> &Scalar {
        &self.c[(i * self.dim_in + j) * self.dim_out + k]
    }

    /// Output vector on a basis pair, as a slice of length `dim_out`.
    pub fn on_basis(&self, i: usize, j: usize) -> &[Scalar] {
        let base = (i * self.dim_in + j) * self.dim_out;
        &self.c[base..base + self.dim_out]
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(Scalar::is_zero)
    }

    /// Full bilinear contraction.
    pub fn apply(&self, x: &[Scalar], y: &[Scalar]) -> Result<Vec<Scalar>> {
        if x.len() != self.dim_in || y.len() != self.dim_in {
            return Err(Error::DimensionMismatch(format!(
                "bilinear map on dim {} applied to vectors of dim {} and {}",
                self.dim_in,
                x.len(),
                y.len()
            )));
        }
        let mut out = zero_vector(self.field, self.dim_out);
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                vec_add_scaled(&mut out, &(xi * yj), self.on_basis(i, j));
            }
        }
        Ok(out)
    }

    /// Nonzero canonical entries in lexicographic slot order.
    pub fn canonical_entries(&self) -> Vec<(usize, usize, usize, Scalar)> {
        let mut out = Vec::new();
        for i in 0..self.dim_in {
            for j in 0..self.dim_in {
                let canonical = match self.sym {
                    Sym2::Symmetric => i <= j,
                    Sym2::Skew => i < j,
                    Sym2::None => true,
                };
                if !canonical {
                    continue;
                }
                for k in 0..self.dim_out {
                    let v = self.entry(i, j, k);
                    if !v.is_zero() {
                        out.push((i, j, k, v.clone()));
                    }
                }
            }
        }
        out
    }

    /// Deterministic map with small coefficients; respects the symmetry class.
    pub fn random(
        field: Field,
        dim_in: usize,
        dim_out: usize,
        sym: Sym2,
        rng: &mut SplitMix64,
        bound: u32,
    ) -> BilinearMap {
        let mut entries = Vec::new();
        for i in 0..dim_in {
            for j in 0..dim_in {
                let canonical = match sym {
                    Sym2::Symmetric => i <= j,
                    Sym2::Skew => i < j,
                    Sym2::None => true,
                };
                if !canonical {
                    continue;
                }
                for k in 0..dim_out {
                    let v = rng.scalar(field, bound);
                    if !v.is_zero() {
                        entries.push((i, j, k, v));
                    }
                }
            }
        }
        BilinearMap::from_entries(field, dim_in, dim_out, sym, &entries)
            .expect("generated entries are canonical")
    }

    pub fn add(&self, other: &BilinearMap) -> BilinearMap {
        assert_eq!((self.dim_in, self.dim_out), (other.dim_in, other.dim_out));
        BilinearMap {
            dim_in: self.dim_in,
            dim_out: self.dim_out,
            field: self.field,
            sym: if self.sym == other.sym { self.sym } else { Sym2::None },
            c: self.c.iter().zip(&other.c).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn neg(&self) -> BilinearMap {
        BilinearMap {
            dim_in: self.dim_in,
            dim_out: self.dim_out,
            field: self.field,
            sym: self.sym,
            c: self.c.iter().map(|a| -a).collect(),
        }
    }
}

/// A trilinear map `k^n x k^n x k^n -> k^m` stored as a dense `n*n*n*m`
/// tensor.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TrilinearMap {
    dim_in: usize,
    dim_out: usize,
    field: Field,
    sym: Sym3,
    c: Vec<Scalar>,
}

impl TrilinearMap {
    pub fn zero(field: Field, dim_in: usize, dim_out: usize, sym: Sym3) -> TrilinearMap {
        TrilinearMap {
            dim_in,
            dim_out,
            field,
            sym,
            c: vec![field.zero(); dim_in * dim_in * dim_in * dim_out],
        }
    }

    pub fn from_entries(
        field: Field,
        dim_in: usize,
        dim_out: usize,
        sym: Sym3,
        entries: &[(usize, usize, usize, usize, Scalar)],
    ) -> Result<TrilinearMap> {
        let mut map = TrilinearMap::zero(field, dim_in, dim_out, sym);
        let mut seen = std::collections::HashSet::new();
        for (i, j, k, l, v) in entries {
            let (i, j, k, l) = (*i, *j, *k, *l);
            if i >= dim_in || j >= dim_in || k >= dim_in || l >= dim_out {
                return Err(Error::IndexOutOfRange(format!("entry ({i},{j},{k},{l})")));
            }
            let canonical = match sym {
                Sym3::FullySkew => i < j && j < k,
                Sym3::SkewFirstTwo => i < j,
                Sym3::None => true,
            };
            if !canonical {
                return Err(Error::SymmetryViolation(format!(
                    "slot ({i},{j},{k},{l}) is not canonical for this symmetry class"
                )));
            }
            if !seen.insert((i, j, k, l)) {
                return Err(Error::SymmetryViolation(format!(
                    "duplicate canonical slot ({i},{j},{k},{l})"
                )));
            }
            if v.field() != field {
                return Err(Error::FieldMismatch(format!("entry ({i},{j},{k},{l})")));
            }
            match sym {
                Sym3::FullySkew => {
                    // all six signed images of (i, j, k)
                    let perms: [(usize, usize, usize, bool); 6] = [
                        (i, j, k, false),
                        (j, k, i, false),
                        (k, i, j, false),
                        (j, i, k, true),
                        (i, k, j, true),
                        (k, j, i, true),
                    ];
                    for (a, b, c, neg) in perms {
                        let idx = ((a * dim_in + b) * dim_in + c) * dim_out + l;
                        map.c[idx] = if neg { -v } else { v.clone() };
                    }
                }
                Sym3::SkewFirstTwo => {
                    map.c[((i * dim_in + j) * dim_in + k) * dim_out + l] = v.clone();
                    map.c[((j * dim_in + i) * dim_in + k) * dim_out + l] = -v;
                }
                Sym3::None => {
                    map.c[((i * dim_in + j) * dim_in + k) * dim_out + l] = v.clone();
                }
            }
        }
        Ok(map)
    }

    pub fn from_full(
        field: Field,
        dim_in: usize,
        dim_out: usize,
        sym: Sym3,
        c: Vec<Scalar>,
    ) -> Result<TrilinearMap> {
        if c.len() != dim_in * dim_in * dim_in * dim_out {
            return Err(Error::DimensionMismatch(format!(
                "expected {} entries, got {}",
                dim_in * dim_in * dim_in * dim_out,
                c.len()
            )));
        }
        if let Some(bad) = c.iter().find(|v| v.field() != field) {
            return Err(Error::FieldMismatch(format!("entry {bad}")));
        }
        let map = TrilinearMap {
            dim_in,
            dim_out,
            field,
            sym,
            c,
        };
        map.validate_symmetry()?;
        Ok(map)
    }

    /// Builds from a formula on basis triples and validates the class.
    pub fn build(
        field: Field,
        dim_in: usize,
        dim_out: usize,
        sym: Sym3,
        f: impl Fn(usize, usize, usize) -> Vec<Scalar>,
    ) -> Result<TrilinearMap> {
        let mut c = Vec::with_capacity(dim_in * dim_in * dim_in * dim_out);
        for i in 0..dim_in {
            for j in 0..dim_in {
                for k in 0..dim_in {
                    let v = f(i, j, k);
                    assert_eq!(v.len(), dim_out, "formula produced wrong output dimension");
                    c.extend(v);
                }
            }
        }
        TrilinearMap::from_full(field, dim_in, dim_out, sym, c)
    }

    fn validate_symmetry(&self) -> Result<()> {
        let n = self.dim_in;
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    for l in 0..self.dim_out {
                        let v = self.entry(i, j, k, l);
                        let ok = match self.sym {
                            Sym3::FullySkew => {
                                *v == -self.entry(j, i, k, l)
                                    && *v == -self.entry(i, k, j, l)
                                    && ((i != j && j != k && i != k) || v.is_zero())
                            }
                            Sym3::SkewFirstTwo => {
                                *v == -self.entry(j, i, k, l) && (i != j || v.is_zero())
                            }
                            Sym3::None => true,
                        };
                        if !ok {
                            return Err(Error::SymmetryViolation(format!(
                                "trilinear slot ({i},{j},{k},{l}) breaks the declared class"
                            )));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    pub fn dim_in(&self) -> usize {
        self.dim_in
    }

    pub fn dim_out(&self) -> usize {
        self.dim_out
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn sym(&self) -> Sym3 {
        self.sym
    }

    pub fn entry(&self, i: usize, j: usize, k: usize, l: usize) -> &Scalar {
        &self.c[((i * self.dim_in + j) * self.dim_in + k) * self.dim_out + l]
    }

    pub fn on_basis(&self, i: usize, j: usize, k: usize) -> &[Scalar] {
        let base = ((i * self.dim_in + j) * self.dim_in + k) * self.dim_out;
        &self.c[base..base + self.dim_out]
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(Scalar::is_zero)
    }

    pub fn apply(&self, x: &[Scalar], y: &[Scalar], z: &[Scalar]) -> Result<Vec<Scalar>> {
        if x.len() != self.dim_in || y.len() != self.dim_in || z.len() != self.dim_in {
            return Err(Error::DimensionMismatch(format!(
                "trilinear map on dim {} applied to vectors of dim {}, {}, {}",
                self.dim_in,
                x.len(),
                y.len(),
                z.len()
            )));
        }
        let mut out = zero_vector(self.field, self.dim_out);
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                let xy = xi * yj;
                for (k, zk) in z.iter().enumerate() {
                    if zk.is_zero() {
                        continue;
                    }
                    vec_add_scaled(&mut out, &(&xy * zk), self.on_basis(i, j, k));
                }
            }
        }
        Ok(out)
    }

    pub fn canonical_entries(&self) -> Vec<(usize, usize, usize, usize, Scalar)> {
        let mut out = Vec::new();
        for i in 0..self.dim_in {
            for j in 0..self.dim_in {
                for k in 0..self.dim_in {
                    let canonical = match self.sym {
                        Sym3::FullySkew => i < j && j < k,
                        Sym3::SkewFirstTwo => i < j,
                        Sym3::None => true,
                    };
                    if !canonical {
                        continue;
                    }
                    for l in 0..self.dim_out {
                        let v = self.entry(i, j, k, l);
                        if !v.is_zero() {
                            out.push((i, j, k, l, v.clone()));
                        }
                    }
                }
            }
        }
        out
    }

    pub fn random(
        field: Field,
        dim_in: usize,
        dim_out: usize,
        sym: Sym3,
        rng: &mut SplitMix64,
        bound: u32,
    ) -> TrilinearMap {
        let mut entries = Vec::new();
        for i in 0..dim_in {
            for j in 0..dim_in {
                for k in 0..dim_in {
                    let canonical = match sym {
                        Sym3::FullySkew => i < j && j < k,
                        Sym3::SkewFirstTwo => i < j,
                        Sym3::None => true,
                    };
                    if !canonical {
                        continue;
                    }
                    for l in 0..dim_out {
                        let v = rng.scalar(field, bound);
                        if !v.is_zero() {
                            entries.push((i, j, k, l, v));
                        }
                    }
                }
            }
        }
        TrilinearMap::from_entries(field, dim_in, dim_out, sym, &entries)
            .expect("generated entries are canonical")
    }

    pub fn add(&self, other: &TrilinearMap) -> TrilinearMap {
        assert_eq!((self.dim_in, self.dim_out), (other.dim_in, other.dim_out));
        TrilinearMap {
            dim_in: self.dim_in,
            dim_out: self.dim_out,
            field: self.field,
            sym: if self.sym == other.sym { self.sym } else { Sym3::None },
            c: self.c.iter().zip(&other.c).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn neg(&self) -> TrilinearMap {
        TrilinearMap {
            dim_in: self.dim_in,
            dim_out: self.dim_out,
            field: self.field,
            sym: self.sym,
            c: self.c.iter().map(|a| -a).collect(),
        }
    }
}

/// A linear map between indexed spaces, wrapping a `rows x cols` matrix that
/// sends the source space (columns) into the target space (rows).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearMap {
    matrix: Matrix,
}

impl LinearMap {
    pub fn from_matrix(matrix: Matrix) -> LinearMap {
        LinearMap { matrix }
    }

    pub fn identity(field: Field, n: usize) -> LinearMap {
        LinearMap {
            matrix: Matrix::identity(field, n),
        }
    }

    pub fn zero(field: Field, rows: usize, cols: usize) -> LinearMap {
        LinearMap {
            matrix: Matrix::zeros(field, rows, cols),
        }
    }

    pub fn diagonal(field: Field, diag: &[Scalar]) -> LinearMap {
        LinearMap {
            matrix: Matrix::diagonal(field, diag),
        }
    }

    pub fn scaled_identity(field: Field, n: usize, c: &Scalar) -> LinearMap {
        LinearMap {
            matrix: Matrix::identity(field, n).scale(c),
        }
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn dim_in(&self) -> usize {
        self.matrix.cols()
    }

    pub fn dim_out(&self) -> usize {
        self.matrix.rows()
    }

    pub fn field(&self) -> Field {
        self.matrix.field()
    }

    pub fn apply(&self, v: &[Scalar]) -> Vec<Scalar> {
        self.matrix.apply(v)
    }

    /// Image of the i-th basis vector (the i-th column).
    pub fn on_basis(&self, i: usize) -> Vec<Scalar> {
        (0..self.matrix.rows()).map(|r| self.matrix.get(r, i).clone()).collect()
    }

    pub fn compose(&self, inner: &LinearMap) -> LinearMap {
        LinearMap {
            matrix: self.matrix.mul(&inner.matrix),
        }
    }

    pub fn pow(&self, k: usize) -> LinearMap {
        LinearMap {
            matrix: self.matrix.pow(k),
        }
    }

    pub fn invert(&self) -> Result<LinearMap> {
        Ok(LinearMap {
            matrix: self.matrix.invert()?,
        })
    }

    pub fn random(field: Field, rows: usize, cols: usize, rng: &mut SplitMix64, bound: u32) -> LinearMap {
        LinearMap {
            matrix: Matrix::from_fn(field, rows, cols, |_, _| rng.scalar(field, bound)),
        }
    }
}
