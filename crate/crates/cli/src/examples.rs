//! Built-in example files, generated from the core fixtures.

use nambu_core::error::{Error, Result};
use nambu_core::fixtures;
use nambu_core::operator::minus_cocycle;
use nambu_core::rep::adjoint_rep;
use nambu_core::scalar::Field;

use crate::format::Document;

/// Names and one-line descriptions of the built-in examples.
pub fn catalog() -> Vec<(&'static str, &'static str)> {
    vec![
        ("zero2", "dimension-2 zero algebra"),
        ("zero3", "dimension-3 zero algebra"),
        ("zero4", "dimension-4 zero algebra"),
        ("poly3", "truncated polynomials k[x]/(x^3) with zero bracket"),
        ("b4", "dimension-4 algebra with single bracket {e1,e2,e3} = e4"),
        ("zero2-zero-rep", "zero2 with a 1-dimensional zero representation"),
        ("zero4-zero-rep", "zero4 with a 1-dimensional zero representation"),
        ("b4-nijenhuis", "b4 with the Nijenhuis operator diag(2,3,5,2)"),
        ("poly3-nijenhuis", "poly3 with the Nijenhuis operator diag(7,2,2)"),
        ("b4-reynolds", "b4 with the Reynolds operator diag(1,1,1,1/2) (rationals only)"),
        (
            "b4-twisted-rb",
            "b4 with adjoint action blocks, the (-product, -bracket) cocycle pair and diag(1,1,1,1/2) as [roperator] (rationals only)",
        ),
        (
            "b4-gf3-nijenhuis",
            "b4 over GF(3) with the first diagonal Nijenhuis operator found by the pinned-seed search (GF(3) only)",
        ),
    ]
}

/// Builds one example over the requested field; None for unknown names.
pub fn build(name: &str, field: Field) -> Option<Result<Document>> {
    let rational_only = |name: &str| -> Error {
        Error::InvalidArgument(format!("example '{name}' is only defined over the rationals"))
    };
    let doc = match name {
        "zero2" => Ok(Document::from_algebra(&fixtures::zero_np(field, 2))),
        "zero3" => Ok(Document::from_algebra(&fixtures::zero_np(field, 3))),
        "zero4" => Ok(Document::from_algebra(&fixtures::zero_np(field, 4))),
        "poly3" => Ok(Document::from_algebra(&fixtures::truncated_poly3(field))),
        "b4" => Ok(Document::from_algebra(&fixtures::bracket4(field))),
        "zero2-zero-rep" => Ok(Document::from_algebra(&fixtures::zero_np(field, 2)).with_module(1)),
        "zero4-zero-rep" => Ok(Document::from_algebra(&fixtures::zero_np(field, 4)).with_module(1)),
        "b4-nijenhuis" => {
            let mut doc = Document::from_algebra(&fixtures::bracket4(field));
            doc.add_matrix("operator", fixtures::nijenhuis_diag4(field).matrix());
            Ok(doc)
        }
        "poly3-nijenhuis" => {
            let mut doc = Document::from_algebra(&fixtures::truncated_poly3(field));
            doc.add_matrix("operator", fixtures::nijenhuis_diag_poly3(field).matrix());
            Ok(doc)
        }
        "b4-reynolds" => {
            if field != Field::Rational {
                Err(rational_only(name))
            } else {
                let mut doc = Document::from_algebra(&fixtures::bracket4(field));
                doc.add_matrix("operator", fixtures::reynolds_diag4().matrix());
                Ok(doc)
            }
        }
        "b4-twisted-rb" => {
            if field != Field::Rational {
                Err(rational_only(name))
            } else {
                let a = fixtures::bracket4(field);
                let mut doc = Document::from_algebra(&a).with_module(4);
                doc.add_rep(&adjoint_rep(&a));
                let pair = minus_cocycle(&a);
                doc.add_bilinear("phi", &pair.phi);
                doc.add_trilinear("psi", &pair.psi);
                doc.add_matrix("roperator", fixtures::reynolds_diag4().matrix());
                Ok(doc)
            }
        }
        "b4-gf3-nijenhuis" => discovered_gf3(name, field),
        _ => return None,
    };
    Some(doc)
}

/// Regenerates the pinned-seed GF(3) search fixture: b4 over GF(3) with the
/// first diagonal Nijenhuis witness as its operator block.
fn discovered_gf3(name: &str, field: Field) -> Result<Document> {
    use nambu_core::search::{search, CandidateShape, SearchKind, SearchSpec, SearchWitness};
    let gf3 = Field::gf(3).expect("3 is prime");
    if field != Field::Rational && field != gf3 {
        return Err(Error::InvalidArgument(format!(
            "example '{name}' is only defined over GF(3)"
        )));
    }
    let base = fixtures::bracket4(gf3);
    let mut spec = SearchSpec::new(SearchKind::Nijenhuis, gf3, 100, 0x4e50_464d);
    spec.base = Some(base.clone());
    spec.shape = CandidateShape::Diagonal;
    let found = search(&spec).expect("fixture search is well-formed");
    let witness = found
        .witnesses
        .iter()
        .find_map(|w| match w {
            // skip the zero map so the fixture is nontrivial
            SearchWitness::Operator(n) if !n.matrix().is_zero() => Some(n.clone()),
            _ => None,
        })
        .expect("the diagonal search finds nonzero witnesses");
    let mut doc = Document::from_algebra(&base);
    doc.add_matrix("operator", witness.matrix());
    Ok(doc)
}
