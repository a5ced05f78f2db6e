//! Independent quaternionic oracle: 2x2 quaternionic matrices, their 4x4
//! complex embedding, and the determinant identities that anchor the
//! octonionic formulas.
//!
//! Quaternions here are stored on their own, not as a view into the
//! octonion type, so the oracle shares no code path with the system it
//! checks; the two sides meet only through `sl2h_embed`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::invariants::{mu, sl2h_embed};
use crate::linalg::sym_eigenvalues;
use crate::octonion::QuaternionSubalgebra;

/// A quaternion over the basis `(1, i, j, k)`, `ij = k`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Quaternion(pub [f64; 4]);

impl Quaternion {
    pub const ZERO: Quaternion = Quaternion([0.0; 4]);
    pub const ONE: Quaternion = Quaternion([1.0, 0.0, 0.0, 0.0]);

    pub fn conj(&self) -> Quaternion {
        Quaternion([self.0[0], -self.0[1], -self.0[2], -self.0[3]])
    }

    pub fn re(&self) -> f64 {
        self.0[0]
    }

    pub fn norm_sq(&self) -> f64 {
        self.0.iter().map(|c| c * c).sum()
    }

    pub fn mul(&self, o: &Quaternion) -> Quaternion {
        let [a0, a1, a2, a3] = self.0;
        let [b0, b1, b2, b3] = o.0;
        Quaternion([
            a0 * b0 - a1 * b1 - a2 * b2 - a3 * b3,
            a0 * b1 + a1 * b0 + a2 * b3 - a3 * b2,
            a0 * b2 - a1 * b3 + a2 * b0 + a3 * b1,
            a0 * b3 + a1 * b2 - a2 * b1 + a3 * b0,
        ])
    }

    /// The 2x2 complex block of left multiplication: `q = alpha + beta j`
    /// becomes `[[alpha, beta], [-conj(beta), conj(alpha)]]`.
    pub fn complex_block(&self) -> [[Complex64; 2]; 2] {
        let alpha = Complex64::new(self.0[0], self.0[1]);
        let beta = Complex64::new(self.0[2], self.0[3]);
        [[alpha, beta], [-beta.conj(), alpha.conj()]]
    }
}

/// A 2x2 quaternionic matrix `(a b; c d)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct QMat2 {
    pub entries: [Quaternion; 4],
}

impl QMat2 {
    pub fn new(a: Quaternion, b: Quaternion, c: Quaternion, d: Quaternion) -> QMat2 {
        QMat2 {
            entries: [a, b, c, d],
        }
    }

    pub fn identity() -> QMat2 {
        QMat2::new(
            Quaternion::ONE,
            Quaternion::ZERO,
            Quaternion::ZERO,
            Quaternion::ONE,
        )
    }

    pub fn a(&self) -> Quaternion {
        self.entries[0]
    }
    pub fn b(&self) -> Quaternion {
        self.entries[1]
    }
    pub fn c(&self) -> Quaternion {
        self.entries[2]
    }
    pub fn d(&self) -> Quaternion {
        self.entries[3]
    }

    pub fn matmul(&self, o: &QMat2) -> QMat2 {
        let [a, b, c, d] = self.entries;
        let [p, q, r, s] = o.entries;
        QMat2::new(
            Quaternion(add4(a.mul(&p).0, b.mul(&r).0)),
            Quaternion(add4(a.mul(&q).0, b.mul(&s).0)),
            Quaternion(add4(c.mul(&p).0, d.mul(&r).0)),
            Quaternion(add4(c.mul(&q).0, d.mul(&s).0)),
        )
    }

    fn to_vec16(self) -> [f64; 16] {
        let mut v = [0.0; 16];
        for (k, e) in self.entries.iter().enumerate() {
            v[4 * k..4 * k + 4].copy_from_slice(&e.0);
        }
        v
    }

    fn from_vec16(v: &[f64; 16]) -> QMat2 {
        let q = |s: &[f64]| {
            let mut c = [0.0; 4];
            c.copy_from_slice(s);
            Quaternion(c)
        };
        QMat2::new(q(&v[0..4]), q(&v[4..8]), q(&v[8..12]), q(&v[12..16]))
    }
}

fn add4(x: [f64; 4], y: [f64; 4]) -> [f64; 4] {
    [x[0] + y[0], x[1] + y[1], x[2] + y[2], x[3] + y[3]]
}

/// Left-multiplication representation as a 4x4 complex matrix.
pub fn embed_complex(m: &QMat2) -> [[Complex64; 4]; 4] {
    let mut z = [[Complex64::new(0.0, 0.0); 4]; 4];
    let blocks = [(0, 0, m.a()), (0, 2, m.b()), (2, 0, m.c()), (2, 2, m.d())];
    for (r, c, q) in blocks {
        let blk = q.complex_block();
        for i in 0..2 {
            for j in 0..2 {
                z[r + i][c + j] = blk[i][j];
            }
        }
    }
    z
}

/// Complex determinant of the embedding, by partial-pivoting elimination.
/// Real and non-negative up to rounding.
pub fn cdet_oracle(m: &QMat2) -> f64 {
    let mut z = embed_complex(m);
    let n = 4;
    let mut det = Complex64::new(1.0, 0.0);
    for col in 0..n {
        let mut piv = col;
        for r in col + 1..n {
            if z[r][col].norm() > z[piv][col].norm() {
                piv = r;
            }
        }
        if z[piv][col].norm() == 0.0 {
            return 0.0;
        }
        if piv != col {
            z.swap(piv, col);
            det = -det;
        }
        det *= z[col][col];
        for r in col + 1..n {
            let factor = z[r][col] / z[col][col];
            for c in col..n {
                let sub = factor * z[col][c];
                z[r][c] -= sub;
            }
        }
    }
    det.re
}

/// The closed-form quaternionic determinant
/// `|a|^2 |d|^2 + |b|^2 |c|^2 - 2 Re(a conj(c) d conj(b))`.
pub fn qdet(m: &QMat2) -> f64 {
    let (a, b, c, d) = (m.a(), m.b(), m.c(), m.d());
    let t = a.mul(&c.conj()).mul(&d.mul(&b.conj()));
    a.norm_sq() * d.norm_sq() + b.norm_sq() * c.norm_sq() - 2.0 * t.re()
}

/// Builds `rho = sl2h_embed(h, m)` and returns `(mu(rho), qdet(m))`;
/// the contract is `mu = -3 qdet`.
pub fn mu_vs_qdet(m: &QMat2, h: &QuaternionSubalgebra) -> (f64, f64) {
    let coords = [m.a().0, m.b().0, m.c().0, m.d().0];
    let rho = sl2h_embed(h, &coords);
    (mu(&rho), qdet(m))
}

/// Coefficients of the characteristic polynomial of the 4x4 embedding,
/// `lambda^4 + c3 lambda^3 + c2 lambda^2 + c1 lambda + c0`, by
/// Faddeev-LeVerrier. Eigenvalues come in conjugate pairs, so all four
/// coefficients are real up to rounding.
pub fn char_poly_coeffs(m: &QMat2) -> [Complex64; 4] {
    let a = embed_complex(m);
    let mul = |x: &[[Complex64; 4]; 4], y: &[[Complex64; 4]; 4]| {
        let mut z = [[Complex64::new(0.0, 0.0); 4]; 4];
        for i in 0..4 {
            for j in 0..4 {
                for k in 0..4 {
                    z[i][j] += x[i][k] * y[k][j];
                }
            }
        }
        z
    };
    let tr = |x: &[[Complex64; 4]; 4]| x[0][0] + x[1][1] + x[2][2] + x[3][3];
    let mut mk = a;
    let mut cs = [Complex64::new(0.0, 0.0); 4];
    let mut c = -tr(&mk);
    cs[0] = c; // c3
    for step in 1..4 {
        let mut shifted = mk;
        for i in 0..4 {
            shifted[i][i] += c;
        }
        mk = mul(&a, &shifted);
        c = -tr(&mk) / (step as f64 + 1.0);
        cs[step] = c;
    }
    [cs[3], cs[2], cs[1], cs[0]] // c0, c1, c2, c3
}

/// Hessian of `log qdet` at the identity restricted to trace-imaginary
/// quaternionic tangents, as sign counts. Expected signature `(10, 5, 0)`.
pub fn qdet_log_hessian_signature() -> (usize, usize, usize) {
    let base = QMat2::identity().to_vec16();
    let q = |v: &[f64; 16]| qdet(&QMat2::from_vec16(v));

    // 16-term sign polarization of the quartic qdet
    let polar = |xs: [&[f64; 16]; 4]| -> f64 {
        let mut total = 0.0;
        for mask in 0u32..16 {
            let mut v = [0.0; 16];
            let mut sign = 1.0;
            for (k, x) in xs.iter().enumerate() {
                let s = if mask >> k & 1 == 0 { 1.0 } else { -1.0 };
                if s < 0.0 {
                    sign = -sign;
                }
                for i in 0..16 {
                    v[i] += s * x[i];
                }
            }
            total += sign * q(&v);
        }
        total / 384.0
    };

    // trace-imaginary tangent basis: (a0, -d0)/sqrt2, imaginary a, d, full b, c
    let mut basis: Vec<[f64; 16]> = Vec::with_capacity(15);
    let mut v = [0.0; 16];
    v[0] = 1.0 / 2.0f64.sqrt();
    v[12] = -1.0 / 2.0f64.sqrt();
    basis.push(v);
    for slot in [0usize, 3] {
        for k in 1..4 {
            let mut v = [0.0; 16];
            v[4 * slot + k] = 1.0;
            basis.push(v);
        }
    }
    for slot in [1usize, 2] {
        for k in 0..4 {
            let mut v = [0.0; 16];
            v[4 * slot + k] = 1.0;
            basis.push(v);
        }
    }

    let d0 = q(&base);
    let grad: Vec<f64> = basis
        .iter()
        .map(|e| 4.0 * polar([&base, &base, &base, e]))
        .collect();
    let n = basis.len();
    let mut h = vec![vec![0.0; n]; n];
    for i in 0..n {
        for j in i..n {
            let val = 12.0 * polar([&base, &base, &basis[i], &basis[j]]) / d0
                - grad[i] * grad[j] / (d0 * d0);
            h[i][j] = val;
            h[j][i] = val;
        }
    }
    let ev = sym_eigenvalues(h);
    let max = ev.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let thr = 1e-8 * max;
    let pos = ev.iter().filter(|v| **v > thr).count();
    let neg = ev.iter().filter(|v| **v < -thr).count();
    (pos, neg, ev.len() - pos - neg)
}
