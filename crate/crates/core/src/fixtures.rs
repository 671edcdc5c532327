//! Named example matrices.

use crate::matrix::{block_diag, companion, nonstandard_j, standard_j, IntMatrix};
use crate::poly::IntPoly;
use crate::reciprocal::lift_cubic;

pub const FIXTURE_NAMES: [&str; 9] = [
    "companion-2re",
    "companion-2com-a",
    "companion-2com-b",
    "S1",
    "S2-transitive",
    "S2-decomposable",
    "S3",
    "standard-J3",
    "nonstandard-J",
];

/// Self-reciprocal sextic with four real roots off the circle.
pub fn sextic_real() -> IntPoly {
    lift_cubic(-2, -8, 1)
}

/// Self-reciprocal sextic lifted from `z^3 - 3z^2 + 6z - 1`.
pub fn sextic_complex_a() -> IntPoly {
    lift_cubic(-3, 6, -1)
}

/// Self-reciprocal sextic lifted from `z^3 - z - 1`.
pub fn sextic_complex_b() -> IntPoly {
    lift_cubic(0, -1, -1)
}

fn m(rows: &[&[i64]]) -> IntMatrix {
    IntMatrix::from_i64(rows)
}

pub fn rotation_order_six() -> IntMatrix {
    m(&[&[0, 1], &[-1, 1]])
}

pub fn fixture(name: &str) -> Option<IntMatrix> {
    let mat = match name {
        "companion-2re" => companion(&sextic_real()).ok()?,
        "companion-2com-a" => companion(&sextic_complex_a()).ok()?,
        "companion-2com-b" => companion(&sextic_complex_b()).ok()?,
        "S1" => m(&[
            &[0, 1, 0, 0, 0, 0],
            &[0, 0, 1, 0, 0, 0],
            &[0, 0, 0, 1, 0, 0],
            &[-1, -4, 12, -4, 0, 0],
            &[0, 0, 0, 0, 0, 1],
            &[0, 0, 0, 0, -1, 1],
        ]),
        "S2-transitive" => m(&[
            &[2, 1, 2, 1, 0, 0],
            &[1, 1, 1, 1, 0, 0],
            &[0, 2, 1, 1, 0, 0],
            &[2, -2, 1, 0, 0, 0],
            &[0, 0, 0, 0, 2, 1],
            &[0, 0, 0, 0, 1, 1],
        ]),
        "S2-decomposable" => m(&[
            &[0, 1, 0, 0, 0, 0],
            &[0, 0, 1, 0, 0, 0],
            &[0, 0, 0, 1, 0, 0],
            &[-1, 5, -9, 5, 0, 0],
            &[0, 0, 0, 0, 0, 1],
            &[0, 0, 0, 0, -1, 1],
        ]),
        "S3" => block_diag(&[m(&[&[2, 1], &[1, 1]]), m(&[&[5, 3], &[3, 2]]), rotation_order_six()]),
        "standard-J3" => standard_j(3),
        "nonstandard-J" => nonstandard_j(-2, -5, -3).matrix,
        _ => return None,
    };
    Some(mat)
}

/// The automorphism fixtures (every name except the two forms).
pub fn automorphism_names() -> impl Iterator<Item = &'static str> {
    FIXTURE_NAMES.iter().copied().filter(|n| !n.contains('J'))
}
