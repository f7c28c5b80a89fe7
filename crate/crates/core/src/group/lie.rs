//! The Lie algebra 𝔤 in a fixed ordered basis and the adjoint action.
//!
//! * 𝔰𝔩₂(ℂ): `H = diag(1, −1)`, `E` upper nilpotent, `F` lower nilpotent.
//! * 𝔰𝔲(2): the quaternion units `i = diag(i, −i)`, `j = [[0, 1], [−1, 0]]`,
//!   `k = [[0, i], [i, 0]]`.

use nalgebra::Matrix3;

use super::rep::{sl2, sl2_inverse, Flavor, Sl2Matrix};
use crate::linalg::{C64, ONE, ZERO};

pub type AdMatrix = Matrix3<C64>;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LieVector {
    pub coords: [C64; 3],
    pub flavor: Flavor,
}

pub fn basis_matrices(flavor: Flavor) -> [Sl2Matrix; 3] {
    let i = C64::i();
    match flavor {
        Flavor::Sl2C => [
            sl2(ONE, ZERO, ZERO, -ONE),
            sl2(ZERO, ONE, ZERO, ZERO),
            sl2(ZERO, ZERO, ONE, ZERO),
        ],
        Flavor::Su2 => [
            sl2(i, ZERO, ZERO, -i),
            sl2(ZERO, ONE, -ONE, ZERO),
            sl2(ZERO, i, i, ZERO),
        ],
    }
}

impl LieVector {
    pub fn new(coords: [C64; 3], flavor: Flavor) -> Self {
        LieVector { coords, flavor }
    }

    pub fn basis(index: usize, flavor: Flavor) -> Self {
        let mut coords = [ZERO; 3];
        coords[index] = ONE;
        LieVector { coords, flavor }
    }

    pub fn to_matrix(&self) -> Sl2Matrix {
        let b = basis_matrices(self.flavor);
        b[0] * self.coords[0] + b[1] * self.coords[1] + b[2] * self.coords[2]
    }

    /// Coordinates of a traceless matrix.
    pub fn from_matrix(m: &Sl2Matrix, flavor: Flavor) -> Self {
        let coords = match flavor {
            Flavor::Sl2C => [(m[(0, 0)] - m[(1, 1)]) / 2.0, m[(0, 1)], m[(1, 0)]],
            Flavor::Su2 => {
                let i = C64::i();
                [
                    (m[(0, 0)] - m[(1, 1)]) / (2.0 * i),
                    (m[(0, 1)] - m[(1, 0)]) / 2.0,
                    (m[(0, 1)] + m[(1, 0)]) / (2.0 * i),
                ]
            }
        };
        LieVector { coords, flavor }
    }
}

/// Matrix of `v ↦ g v g⁻¹` in the flavor's basis.
pub fn adjoint(g: &Sl2Matrix, flavor: Flavor) -> AdMatrix {
    let gi = sl2_inverse(g);
    let basis = basis_matrices(flavor);
    let mut out = AdMatrix::zeros();
    for (j, e) in basis.iter().enumerate() {
        let image = LieVector::from_matrix(&(g * e * gi), flavor);
        for i in 0..3 {
            out[(i, j)] = image.coords[i];
        }
    }
    out
}

/// Killing form normalized as `8aa' + 4(bc' + cb')` on 𝔰𝔩₂(ℂ) and as −2
/// times the Euclidean product of quaternion coordinates on 𝔰𝔲(2).
///
/// # Panics
/// If the flavors of `u` and `v` differ.
pub fn killing_form(u: &LieVector, v: &LieVector) -> C64 {
    assert_eq!(u.flavor, v.flavor, "Killing form of mixed flavors");
    let (a, b) = (u.coords, v.coords);
    match u.flavor {
        Flavor::Sl2C => 8.0 * a[0] * b[0] + 4.0 * (a[1] * b[2] + a[2] * b[1]),
        Flavor::Su2 => -2.0 * (a[0] * b[0] + a[1] * b[1] + a[2] * b[2]),
    }
}
