//! Helpers for coordinate vectors, which are plain `Vec<Scalar>` throughout.

use crate::scalar::{Field, Scalar};

pub fn zero_vector(field: Field, n: usize) -> Vec<Scalar> {
    vec![field.zero(); n]
}

pub fn basis_vector(field: Field, n: usize, i: usize) -> Vec<Scalar> {
    assert!(i < n);
    let mut v = zero_vector(field, n);
    v[i] = field.one();
    v
}

pub fn vec_add(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn vec_sub(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn vec_neg(a: &[Scalar]) -> Vec<Scalar> {
    a.iter().map(|x| -x).collect()
}

pub fn vec_scale(c: &Scalar, a: &[Scalar]) -> Vec<Scalar> {
    a.iter().map(|x| c * x).collect()
}

/// `acc += c * a`, in place.
pub fn vec_add_scaled(acc: &mut [Scalar], c: &Scalar, a: &[Scalar]) {
    assert_eq!(acc.len(), a.len());
    if c.is_zero() {
        return;
    }
    for (dst, x) in acc.iter_mut().zip(a) {
        *dst = &*dst + &(c * x);
    }
}

pub fn vec_is_zero(a: &[Scalar]) -> bool {
    a.iter().all(Scalar::is_zero)
}
