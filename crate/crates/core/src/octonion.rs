//! Real octonion arithmetic.
//!
//! Coordinates are taken over the basis `1, e1, ..., e7` obtained by
//! Cayley-Dickson doubling of the quaternions: `span(1,e1,e2,e3)` is a
//! quaternion copy with `e1*e2 = e3`, `e4` is the doubling unit and
//! `e5 = e1*e4`, `e6 = e2*e4`, `e7 = e3*e4`. Products are evaluated from
//! the structure-constant tables below, with the doubling formula
//! `(p,q)(r,s) = (pr - conj(s) q, s p + q conj(r))` kept in the test suite
//! as an independent oracle.

use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Sign of `e_i * e_j` in the chosen basis.
#[rustfmt::skip]
const SIGN: [[f64; 8]; 8] = [
    [1., 1., 1., 1., 1., 1., 1., 1.],
    [1., -1., 1., -1., 1., -1., -1., 1.],
    [1., -1., -1., 1., 1., 1., -1., -1.],
    [1., 1., -1., -1., 1., -1., 1., -1.],
    [1., -1., -1., -1., -1., 1., 1., 1.],
    [1., 1., -1., 1., -1., -1., -1., 1.],
    [1., 1., 1., -1., -1., 1., -1., -1.],
    [1., -1., 1., 1., -1., -1., 1., -1.],
];

/// Index of the basis element carrying `e_i * e_j`.
#[rustfmt::skip]
const IDX: [[usize; 8]; 8] = [
    [0, 1, 2, 3, 4, 5, 6, 7],
    [1, 0, 3, 2, 5, 4, 7, 6],
    [2, 3, 0, 1, 6, 7, 4, 5],
    [3, 2, 1, 0, 7, 6, 5, 4],
    [4, 5, 6, 7, 0, 1, 2, 3],
    [5, 4, 7, 6, 1, 0, 3, 2],
    [6, 7, 4, 5, 2, 3, 0, 1],
    [7, 6, 5, 4, 3, 2, 1, 0],
];

/// An octonion as 8 real coordinates `[c0, c1, ..., c7]`.
///
/// Serializes as a plain JSON array of 8 numbers.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Octonion(pub [f64; 8]);

/// The vector representation space R^8, identified with the octonions.
pub type Vector8 = Octonion;

impl Octonion {
    pub const ZERO: Octonion = Octonion([0.0; 8]);
    pub const ONE: Octonion = Octonion([1., 0., 0., 0., 0., 0., 0., 0.]);

    /// The basis element `e_k` (`e_0 = 1`).
    pub fn unit(k: usize) -> Octonion {
        let mut c = [0.0; 8];
        c[k] = 1.0;
        Octonion(c)
    }

    pub fn scalar(t: f64) -> Octonion {
        let mut c = [0.0; 8];
        c[0] = t;
        Octonion(c)
    }

    pub fn re(&self) -> f64 {
        self.0[0]
    }

    /// Imaginary part, real coordinate zeroed.
    pub fn im(&self) -> Octonion {
        let mut c = self.0;
        c[0] = 0.0;
        Octonion(c)
    }

    pub fn conj(&self) -> Octonion {
        let mut c = [0.0; 8];
        c[0] = self.0[0];
        for k in 1..8 {
            c[k] = -self.0[k];
        }
        Octonion(c)
    }

    pub fn norm_sq(&self) -> f64 {
        self.0.iter().map(|c| c * c).sum()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sq().sqrt()
    }

    /// Euclidean inner product, equal to `Re(x * conj(y))`.
    pub fn dot(&self, other: &Octonion) -> f64 {
        self.0.iter().zip(other.0.iter()).map(|(a, b)| a * b).sum()
    }

    /// Multiplicative inverse `conj(x) / |x|^2`.
    pub fn inv(&self) -> Result<Octonion> {
        let n = self.norm_sq();
        if n == 0.0 {
            return Err(Error::ZeroInverse);
        }
        Ok(self.conj().scale(1.0 / n))
    }

    pub fn scale(&self, t: f64) -> Octonion {
        let mut c = self.0;
        for v in &mut c {
            *v *= t;
        }
        Octonion(c)
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().all(|c| c.is_finite())
    }
}

impl Mul for Octonion {
    type Output = Octonion;

    fn mul(self, rhs: Octonion) -> Octonion {
        let mut out = [0.0; 8];
        for i in 0..8 {
            let xi = self.0[i];
            if xi == 0.0 {
                continue;
            }
            for j in 0..8 {
                out[IDX[i][j]] += SIGN[i][j] * xi * rhs.0[j];
            }
        }
        Octonion(out)
    }
}

impl Add for Octonion {
    type Output = Octonion;
    fn add(self, rhs: Octonion) -> Octonion {
        let mut c = self.0;
        for (a, b) in c.iter_mut().zip(rhs.0.iter()) {
            *a += b;
        }
        Octonion(c)
    }
}

impl Sub for Octonion {
    type Output = Octonion;
    fn sub(self, rhs: Octonion) -> Octonion {
        let mut c = self.0;
        for (a, b) in c.iter_mut().zip(rhs.0.iter()) {
            *a -= b;
        }
        Octonion(c)
    }
}

impl Neg for Octonion {
    type Output = Octonion;
    fn neg(self) -> Octonion {
        self.scale(-1.0)
    }
}

/// Octonion product as a free function, for call sites that read better with it.
pub fn oct_mul(x: &Octonion, y: &Octonion) -> Octonion {
    *x * *y
}

pub fn oct_conj(x: &Octonion) -> Octonion {
    x.conj()
}

pub fn oct_inv(x: &Octonion) -> Result<Octonion> {
    x.inv()
}

/// A quaternion subalgebra `span(1, u, v, w)` with `w = u*v`.
///
/// `u`, `v` are unit imaginary and mutually orthogonal; the four basis
/// elements are then orthonormal and the span closes under multiplication.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct QuaternionSubalgebra {
    pub basis: [Octonion; 4],
}

const SUBALG_TOL: f64 = 1e-10;

/// Builds the subalgebra generated by two orthogonal unit imaginary octonions.
///
/// Verifies the preconditions and the 16 product-closure checks numerically.
pub fn quaternion_subalgebra(u: &Octonion, v: &Octonion) -> Result<QuaternionSubalgebra> {
    if (u.norm_sq() - 1.0).abs() > SUBALG_TOL || (v.norm_sq() - 1.0).abs() > SUBALG_TOL {
        return Err(Error::InvalidSubalgebra("generators must be unit"));
    }
    if u.re().abs() > SUBALG_TOL || v.re().abs() > SUBALG_TOL {
        return Err(Error::InvalidSubalgebra("generators must be imaginary"));
    }
    if u.dot(v).abs() > SUBALG_TOL {
        return Err(Error::InvalidSubalgebra("generators must be orthogonal"));
    }
    let w = *u * *v;
    let basis = [Octonion::ONE, *u, *v, w];
    // closure: every product of basis elements must stay in the span
    for a in &basis {
        for b in &basis {
            let p = *a * *b;
            let mut rem = p;
            for e in &basis {
                rem = rem - e.scale(p.dot(e));
            }
            if rem.norm() > 1e-12 * (1.0 + p.norm()) {
                return Err(Error::InvalidSubalgebra("span does not close"));
            }
        }
    }
    Ok(QuaternionSubalgebra { basis })
}

impl QuaternionSubalgebra {
    /// The standard copy `span(1, e1, e2, e3)`.
    pub fn standard() -> QuaternionSubalgebra {
        QuaternionSubalgebra {
            basis: [
                Octonion::ONE,
                Octonion::unit(1),
                Octonion::unit(2),
                Octonion::unit(3),
            ],
        }
    }

    /// Embeds quaternion coordinates `(q0, q1, q2, q3)` as `q0 + q1 u + q2 v + q3 w`.
    pub fn embed(&self, q: [f64; 4]) -> Octonion {
        let mut out = Octonion::ZERO;
        for k in 0..4 {
            out = out + self.basis[k].scale(q[k]);
        }
        out
    }

    /// Distance from `x` to the span of the basis.
    pub fn span_residual(&self, x: &Octonion) -> f64 {
        let mut rem = *x;
        for e in &self.basis {
            rem = rem - e.scale(x.dot(e));
        }
        rem.norm()
    }
}
