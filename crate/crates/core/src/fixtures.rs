//! Built-in example algebras and operators used across tests and the CLI.

use crate::algebra::NambuPoissonAlgebra;
use crate::scalar::{Field, Scalar};
use crate::tensor::{BilinearMap, LinearMap, Sym2, Sym3, TrilinearMap};

/// The zero algebra: both operations vanish.
pub fn zero_np(field: Field, dim: usize) -> NambuPoissonAlgebra {
    NambuPoissonAlgebra::zero(field, dim)
}

/// Truncated polynomials `k[x]/(x^3)` with basis 1, x, x^2 and zero bracket.
pub fn truncated_poly3(field: Field) -> NambuPoissonAlgebra {
    let one = field.one();
    let entries = [
        (0usize, 0usize, 0usize, one.clone()), // 1 * 1 = 1
        (0, 1, 1, one.clone()),                // 1 * x = x
        (0, 2, 2, one.clone()),                // 1 * x^2 = x^2
        (1, 1, 2, one),                        // x * x = x^2
    ];
    let product = BilinearMap::from_entries(field, 3, 3, Sym2::Symmetric, &entries).unwrap();
    let bracket = TrilinearMap::zero(field, 3, 3, Sym3::FullySkew);
    NambuPoissonAlgebra::new(product, bracket).unwrap()
}

/// Dimension 4, zero product, single generating bracket {e1, e2, e3} = e4.
pub fn bracket4(field: Field) -> NambuPoissonAlgebra {
    let bracket =
        TrilinearMap::from_entries(field, 4, 4, Sym3::FullySkew, &[(0, 1, 2, 3, field.one())])
            .unwrap();
    let product = BilinearMap::zero(field, 4, 4, Sym2::Symmetric);
    NambuPoissonAlgebra::new(product, bracket).unwrap()
}

/// All stored Nambu-Poisson fixtures, with stable names.
pub fn all_np_fixtures(field: Field) -> Vec<(&'static str, NambuPoissonAlgebra)> {
    vec![
        ("zero2", zero_np(field, 2)),
        ("zero3", zero_np(field, 3)),
        ("zero4", zero_np(field, 4)),
        ("poly3", truncated_poly3(field)),
        ("b4", bracket4(field)),
    ]
}

/// A diagonal Nijenhuis operator on [`bracket4`]: diag(2, 3, 5, 2).
///
/// On that algebra a diagonal map is Nijenhuis exactly when the last
/// eigenvalue repeats one of the first three.
pub fn nijenhuis_diag4(field: Field) -> LinearMap {
    LinearMap::diagonal(
        field,
        &[
            field.from_i64(2),
            field.from_i64(3),
            field.from_i64(5),
            field.from_i64(2),
        ],
    )
}

/// A diagonal Nijenhuis operator on [`truncated_poly3`]: diag(7, 2, 2).
pub fn nijenhuis_diag_poly3(field: Field) -> LinearMap {
    LinearMap::diagonal(field, &[field.from_i64(7), field.from_i64(2), field.from_i64(2)])
}

/// A Reynolds operator on [`bracket4`] over the rationals: diag(1, 1, 1, 1/2).
pub fn reynolds_diag4() -> LinearMap {
    LinearMap::diagonal(
        Field::Rational,
        &[
            Field::Rational.one(),
            Field::Rational.one(),
            Field::Rational.one(),
            Scalar::rational(1, 2),
        ],
    )
}

/// Another Reynolds operator on [`bracket4`] over the rationals: 2 * Id.
pub fn reynolds_twice_identity() -> LinearMap {
    LinearMap::scaled_identity(Field::Rational, 4, &Field::Rational.from_i64(2))
}

/// Search-discovered diagonal Nijenhuis operators on [`bracket4`]:
/// enumerated over GF(3) with a pinned seed, lifted to the rationals and
/// re-verified there. Only operators that survive the exact re-check are
/// returned.
pub fn discovered_diagonal_nijenhuis4() -> Vec<LinearMap> {
    use crate::operator::check_nijenhuis;
    use crate::search::{search, lift_to_rationals, CandidateShape, SearchKind, SearchSpec, SearchWitness};

    let gf3 = Field::gf(3).expect("3 is prime");
    let mut spec = SearchSpec::new(SearchKind::Nijenhuis, gf3, 100, 0x4e50_464d);
    spec.base = Some(bracket4(gf3));
    spec.shape = CandidateShape::Diagonal;
    let found = search(&spec).expect("fixture search is well-formed");
    let base_q = bracket4(Field::Rational);
    found
        .witnesses
        .iter()
        .filter_map(|w| match lift_to_rationals(w).expect("operator lift cannot fail") {
            SearchWitness::Operator(n) => check_nijenhuis(&base_q, &n)
                .expect("dims match")
                .is_pass()
                .then_some(n),
            SearchWitness::Algebra(_) => None,
        })
        .collect()
}
