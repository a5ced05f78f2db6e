//! The quartic invariant, Hessian metric, duality loci and normal forms on
//! pairs of twistors.
//!
//! A point of the 32-dimensional space is a pair `rho = (psi1, psi2)` of
//! primal twistors, equivalently the octonionic matrix
//! `[[phi1-, phi1+], [phi2-, phi2+]]`. The quartic determinant is
//! `det rho = -1/2 L(f11, f22)`; the quartic invariant `mu` of the twistor
//! construction equals `-3 det rho`, and `L(Q(psi1), Q(psi2)) = -2 det rho`
//! gives a second, null-vector route to the same number.

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize};

use crate::error::{Error, Result};
use crate::linalg::sym_eigenvalues;
use crate::lorentz::{
    clifford_action, lorentz_form, ConformalGenerator, ConformalWord, LorentzVector,
};
use crate::octonion::{Octonion, QuaternionSubalgebra};
use crate::twistor::{act_word, dual_pairing, project, q_vector, Duality, Twistor};

/// Default rejection floor for operations that need `det rho != 0`:
/// points with `|det rho| < NEAR_SINGULAR_FLOOR * |rho|^4` are refused.
pub const NEAR_SINGULAR_FLOOR: f64 = 1e-9;

/// Calibration scalar of the duality equation, fixed once so the residual
/// vanishes at `rho0` with `v = (1, 0, 1)`.
pub const DUALITY_KAPPA: f64 = 1.0;

/// An ordered pair of primal twistors.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Rho {
    pub psi1: Twistor,
    pub psi2: Twistor,
}

impl Rho {
    pub fn new(psi1: Twistor, psi2: Twistor) -> Result<Rho> {
        if psi1.duality != Duality::Primal || psi2.duality != Duality::Primal {
            return Err(Error::ChiralityMismatch("rho needs two primal twistors"));
        }
        Ok(Rho { psi1, psi2 })
    }

    /// The reference point: unit `phi1-`, unit `phi2+`, zero off-diagonal.
    pub fn reference() -> Rho {
        Rho {
            psi1: Twistor::primal(Octonion::ONE, Octonion::ZERO),
            psi2: Twistor::primal(Octonion::ZERO, Octonion::ONE),
        }
    }

    /// Builds from matrix entries `[[phi1-, phi1+], [phi2-, phi2+]]`.
    pub fn from_entries(m: [[Octonion; 2]; 2]) -> Rho {
        Rho {
            psi1: Twistor::primal(m[0][0], m[0][1]),
            psi2: Twistor::primal(m[1][0], m[1][1]),
        }
    }

    pub fn entries(&self) -> [[Octonion; 2]; 2] {
        [
            [self.psi1.phi_minus, self.psi1.phi_plus],
            [self.psi2.phi_minus, self.psi2.phi_plus],
        ]
    }

    pub fn add(&self, other: &Rho) -> Rho {
        Rho {
            psi1: self.psi1.add(&other.psi1),
            psi2: self.psi2.add(&other.psi2),
        }
    }

    pub fn sub(&self, other: &Rho) -> Rho {
        Rho {
            psi1: self.psi1.sub(&other.psi1),
            psi2: self.psi2.sub(&other.psi2),
        }
    }

    pub fn scale(&self, t: f64) -> Rho {
        Rho {
            psi1: self.psi1.scale(t),
            psi2: self.psi2.scale(t),
        }
    }

    pub fn norm(&self) -> f64 {
        (self.psi1.norm_sq() + self.psi2.norm_sq()).sqrt()
    }

    /// Right action of a real 2x2 matrix: `(psi1, psi2) P` columnwise.
    pub fn gl2_action(&self, p: &[[f64; 2]; 2]) -> Rho {
        Rho {
            psi1: self.psi1.scale(p[0][0]).add(&self.psi2.scale(p[1][0])),
            psi2: self.psi1.scale(p[0][1]).add(&self.psi2.scale(p[1][1])),
        }
    }

    /// Applies an even-parity word to both twistors.
    pub fn act_word(&self, w: &ConformalWord) -> Result<Rho> {
        let psi1 = act_word(w, &self.psi1);
        let psi2 = act_word(w, &self.psi2);
        Rho::new(psi1, psi2)
    }

    /// Flattens to the 32 tangent coordinates `(phi1-, phi1+, phi2-, phi2+)`.
    pub fn to_vec32(&self) -> [f64; 32] {
        let mut v = [0.0; 32];
        v[0..8].copy_from_slice(&self.psi1.phi_minus.0);
        v[8..16].copy_from_slice(&self.psi1.phi_plus.0);
        v[16..24].copy_from_slice(&self.psi2.phi_minus.0);
        v[24..32].copy_from_slice(&self.psi2.phi_plus.0);
        v
    }

    pub fn from_vec32(v: &[f64; 32]) -> Rho {
        let oct = |s: &[f64]| {
            let mut c = [0.0; 8];
            c.copy_from_slice(s);
            Octonion(c)
        };
        Rho {
            psi1: Twistor::primal(oct(&v[0..8]), oct(&v[8..16])),
            psi2: Twistor::primal(oct(&v[16..24]), oct(&v[24..32])),
        }
    }

    pub fn is_finite(&self) -> bool {
        self.psi1.is_finite() && self.psi2.is_finite()
    }
}

// Accepts either {"psi1":..,"psi2":..} or {"matrix":[[o,o],[o,o]]}.
impl<'de> Deserialize<'de> for Rho {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Rho, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Repr {
            Pair { psi1: Twistor, psi2: Twistor },
            Matrix { matrix: [[Octonion; 2]; 2] },
        }
        match Repr::deserialize(d)? {
            Repr::Pair { psi1, psi2 } => Rho::new(psi1, psi2).map_err(D::Error::custom),
            Repr::Matrix { matrix } => Ok(Rho::from_entries(matrix)),
        }
    }
}

/// A tangent vector at a point, as an octonionic 2x2 matrix `(a b; c d)`
/// in the coordinates `(phi1-, phi1+, phi2-, phi2+)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct OctMatrix2 {
    pub a: Octonion,
    pub b: Octonion,
    pub c: Octonion,
    pub d: Octonion,
}

impl OctMatrix2 {
    pub fn to_rho(&self) -> Rho {
        Rho::from_entries([[self.a, self.b], [self.c, self.d]])
    }

    pub fn from_vec32(v: &[f64; 32]) -> OctMatrix2 {
        let r = Rho::from_vec32(v);
        let e = r.entries();
        OctMatrix2 {
            a: e[0][0],
            b: e[0][1],
            c: e[1][0],
            d: e[1][1],
        }
    }

    /// `Re a + Re d = 0`: tangent to the level set `det = const`.
    pub fn is_trace_imaginary(&self, tol: f64) -> bool {
        (self.a.re() + self.d.re()).abs() <= tol
    }

    /// `Re a = Re d = 0`, `b = -conj(c)`: the compact duality tangent at `rho0`.
    pub fn is_skew_type(&self, tol: f64) -> bool {
        self.a.re().abs() <= tol
            && self.d.re().abs() <= tol
            && (self.b + self.c.conj()).norm() <= tol
    }
}

/// `f_ab(psi_a, psi_b)`: the Lorentz vector with
/// `(a, b, c) = (<phi_a-, phi_b->, phi_a+ . phi_b- + phi_b+ . phi_a-, <phi_a+, phi_b+>)`,
/// symmetric in its arguments. As a quadratic function of the position it
/// equals `<psi_a(x), psi_b(x)>` pointwise.
pub fn f_ab(psi_a: &Twistor, psi_b: &Twistor) -> LorentzVector {
    debug_assert_eq!(psi_a.duality, Duality::Primal);
    debug_assert_eq!(psi_b.duality, Duality::Primal);
    let b = crate::triality::pair_raw(&psi_a.phi_plus, &psi_b.phi_minus)
        + crate::triality::pair_raw(&psi_b.phi_plus, &psi_a.phi_minus);
    LorentzVector::new(
        psi_a.phi_minus.dot(&psi_b.phi_minus),
        b,
        psi_a.phi_plus.dot(&psi_b.phi_plus),
    )
}

/// The null vector `Q(psi)`: for primal twistors the diagonal
/// `f_ab(psi, psi)`; dual twistors use the mirrored expansion, so the
/// projection to the sphere works on both sides of a reflection.
pub fn q_map(psi: &Twistor) -> LorentzVector {
    q_vector(psi)
}

/// The symmetric bilinear map with `p_map(psi, psi) = q_map(psi)`.
///
/// Computed as `f_ab`; `p_map_dual_route` solves the defining equations
/// `L(P, v) = <v.psi1, psi2>` instead, and the two must agree.
pub fn p_map(psi1: &Twistor, psi2: &Twistor) -> LorentzVector {
    f_ab(psi1, psi2)
}

/// Independent route to `P(psi1, psi2)` through the dual pairing:
/// reads off the 10 coefficients from `L(P, v_i) = <v_i . psi1, psi2>`
/// over the standard Lorentz basis.
pub fn p_map_dual_route(psi1: &Twistor, psi2: &Twistor) -> LorentzVector {
    let pairing_with = |v: &LorentzVector| dual_pairing(&clifford_action(v, psi1), psi2);
    // L(P, (0,e_k,0)) = b_k; L(P, (1,0,0)) = -2c; L(P, (0,0,1)) = -2a
    let mut b = Octonion::ZERO;
    for k in 0..8 {
        let e = LorentzVector::new(0.0, Octonion::unit(k), 0.0);
        b.0[k] = pairing_with(&e);
    }
    let c = -0.5 * pairing_with(&LorentzVector::new(1.0, Octonion::ZERO, 0.0));
    let a = -0.5 * pairing_with(&LorentzVector::new(0.0, Octonion::ZERO, 1.0));
    LorentzVector::new(a, b, c)
}

/// The quartic invariant `mu = L(f11, f22) - L(f12, f21)`.
pub fn mu(rho: &Rho) -> f64 {
    let f11 = f_ab(&rho.psi1, &rho.psi1);
    let f22 = f_ab(&rho.psi2, &rho.psi2);
    let f12 = f_ab(&rho.psi1, &rho.psi2);
    lorentz_form(&f11, &f22) - lorentz_form(&f12, &f12)
}

/// The alternative normalization `L(Q(psi1), Q(psi2)) = L(f11, f22)`,
/// reported alongside `mu`; the two definitions differ by a factor 3/2.
pub fn mu_null_pair(rho: &Rho) -> f64 {
    lorentz_form(&q_map(&rho.psi1), &q_map(&rho.psi2))
}

/// The determinant `det rho = -1/2 L(f11, f22) = -mu/3`, always >= 0.
pub fn det_rho(rho: &Rho) -> f64 {
    -0.5 * lorentz_form(&f_ab(&rho.psi1, &rho.psi1), &f_ab(&rho.psi2, &rho.psi2))
}

fn check_not_singular(rho: &Rho, floor: f64) -> Result<f64> {
    let d = det_rho(rho);
    let scale = rho.norm().powi(4);
    if d.abs() < floor * scale.max(f64::MIN_POSITIVE) {
        return Err(Error::NearSingular {
            det: d,
            floor: floor * scale,
        });
    }
    Ok(d)
}

/// The full symmetric 4-linear form of `det`, by the 16-term polarization
/// identity over sign patterns, normalized by `2^4 * 4!`.
pub fn quartic_polarization(r1: &Rho, r2: &Rho, r3: &Rho, r4: &Rho) -> f64 {
    let args = [r1, r2, r3, r4];
    let mut total = 0.0;
    for mask in 0u32..16 {
        let mut sum = Rho {
            psi1: Twistor::primal(Octonion::ZERO, Octonion::ZERO),
            psi2: Twistor::primal(Octonion::ZERO, Octonion::ZERO),
        };
        let mut sign = 1.0;
        for (k, r) in args.iter().enumerate() {
            if mask >> k & 1 == 0 {
                sum = sum.add(r);
            } else {
                sum = sum.sub(r);
                sign = -sign;
            }
        }
        total += sign * det_rho(&sum);
    }
    total / 384.0
}

/// The 32 basis directions in the fixed coordinate order.
fn basis_dir(i: usize) -> Rho {
    let mut v = [0.0; 32];
    v[i] = 1.0;
    Rho::from_vec32(&v)
}

/// Gradient of `det` as 32 coefficients: `grad[rdot] = 4 M(rho,rho,rho,rdot)`.
pub fn grad_det(rho: &Rho) -> [f64; 32] {
    let mut g = [0.0; 32];
    for (i, gi) in g.iter_mut().enumerate() {
        *gi = 4.0 * quartic_polarization(rho, rho, rho, &basis_dir(i));
    }
    g
}

/// Evaluates the gradient functional on a tangent vector.
pub fn grad_det_apply(rho: &Rho, dir: &Rho) -> f64 {
    4.0 * quartic_polarization(rho, rho, rho, dir)
}

/// Second derivative of `det`: `hess(A, B) = 12 M(rho, rho, A, B)`.
pub fn hess_det_apply(rho: &Rho, a: &Rho, b: &Rho) -> f64 {
    12.0 * quartic_polarization(rho, rho, a, b)
}

/// A dense symmetric 32x32 bilinear form.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SymBilinear32 {
    pub m: Vec<Vec<f64>>,
}

impl SymBilinear32 {
    pub fn apply(&self, x: &[f64; 32], y: &[f64; 32]) -> f64 {
        let mut s = 0.0;
        for i in 0..32 {
            for j in 0..32 {
                s += x[i] * self.m[i][j] * y[j];
            }
        }
        s
    }

    pub fn symmetry_residual(&self) -> f64 {
        let mut r: f64 = 0.0;
        for i in 0..32 {
            for j in 0..32 {
                r = r.max((self.m[i][j] - self.m[j][i]).abs());
            }
        }
        r
    }

    /// Restriction to the span of the given 32-vectors.
    pub fn restrict(&self, basis: &[[f64; 32]]) -> Vec<Vec<f64>> {
        let n = basis.len();
        let mut out = vec![vec![0.0; n]; n];
        for i in 0..n {
            for j in i..n {
                let v = self.apply(&basis[i], &basis[j]);
                out[i][j] = v;
                out[j][i] = v;
            }
        }
        out
    }
}

/// Hessian of `log det` at a non-singular point:
/// `12 M(rho,rho,A,B)/det - 16 M(rho,rho,rho,A) M(rho,rho,rho,B)/det^2`.
pub fn hessian_log_det(rho: &Rho) -> Result<SymBilinear32> {
    let det = check_not_singular(rho, NEAR_SINGULAR_FLOOR)?;
    let g = grad_det(rho);
    let mut m = vec![vec![0.0; 32]; 32];
    for i in 0..32 {
        let ei = basis_dir(i);
        for j in i..32 {
            let h = hess_det_apply(rho, &ei, &basis_dir(j));
            let v = h / det - g[i] * g[j] / (det * det);
            m[i][j] = v;
            m[j][i] = v;
        }
    }
    Ok(SymBilinear32 { m })
}

/// Tangent subspaces the Hessian metric is restricted to.
#[derive(Clone, Debug)]
pub enum Subspace {
    /// Kernel of the determinant gradient at the point (31-dimensional).
    Sl2O,
    /// `Re a = Re d = 0`, `b = -conj(c)` at the reference solution.
    Su2O,
    /// `Re a = Re d = 0`, `b = +conj(c)` at the reference solution.
    Su11O,
    /// Entries in a quaternion subalgebra, trace imaginary.
    Sl2H(QuaternionSubalgebra),
}

fn vec32(f: impl Fn(usize) -> f64) -> [f64; 32] {
    let mut v = [0.0; 32];
    for (i, vi) in v.iter_mut().enumerate() {
        *vi = f(i);
    }
    v
}

fn embed_slot(slot: usize, o: &Octonion) -> [f64; 32] {
    vec32(|i| if i / 8 == slot { o.0[i % 8] } else { 0.0 })
}

/// Orthonormal basis of the requested subspace in the 32 coordinates.
pub fn subspace_basis(rho: &Rho, subspace: &Subspace) -> Vec<[f64; 32]> {
    match subspace {
        Subspace::Sl2O => {
            // orthonormal complement of the gradient direction
            let g = grad_det(rho);
            let gn = g.iter().map(|v| v * v).sum::<f64>().sqrt();
            let mut unit = [0.0; 32];
            for i in 0..32 {
                unit[i] = g[i] / gn;
            }
            // modified Gram-Schmidt of the coordinate basis against the gradient
            let dot = |x: &[f64; 32], y: &[f64; 32]| -> f64 {
                x.iter().zip(y.iter()).map(|(a, b)| a * b).sum()
            };
            let mut basis: Vec<[f64; 32]> = Vec::with_capacity(31);
            for i in 0..32 {
                let mut v = [0.0; 32];
                v[i] = 1.0;
                let d = dot(&unit, &v);
                for k in 0..32 {
                    v[k] -= d * unit[k];
                }
                for w in &basis {
                    let d = dot(w, &v);
                    for k in 0..32 {
                        v[k] -= d * w[k];
                    }
                }
                let n = dot(&v, &v).sqrt();
                if n > 1e-8 {
                    for x in &mut v {
                        *x /= n;
                    }
                    basis.push(v);
                }
                if basis.len() == 31 {
                    break;
                }
            }
            basis
        }
        Subspace::Su2O | Subspace::Su11O => {
            let sign = if matches!(subspace, Subspace::Su2O) {
                -1.0
            } else {
                1.0
            };
            let mut basis = Vec::with_capacity(22);
            for k in 1..8 {
                basis.push(embed_slot(0, &Octonion::unit(k)));
                basis.push(embed_slot(3, &Octonion::unit(k)));
            }
            for k in 0..8 {
                let c = Octonion::unit(k);
                let b = c.conj().scale(sign);
                let mut v = embed_slot(2, &c);
                let bv = embed_slot(1, &b);
                for i in 0..32 {
                    v[i] = (v[i] + bv[i]) / 2.0_f64.sqrt();
                }
                basis.push(v);
            }
            basis
        }
        Subspace::Sl2H(h) => {
            let mut basis = Vec::with_capacity(15);
            // traceless real diagonal direction
            let mut v = embed_slot(0, &h.basis[0]);
            let w = embed_slot(3, &h.basis[0].scale(-1.0));
            for i in 0..32 {
                v[i] = (v[i] + w[i]) / 2.0_f64.sqrt();
            }
            basis.push(v);
            for k in 1..4 {
                basis.push(embed_slot(0, &h.basis[k]));
                basis.push(embed_slot(3, &h.basis[k]));
            }
            for k in 0..4 {
                basis.push(embed_slot(1, &h.basis[k]));
                basis.push(embed_slot(2, &h.basis[k]));
            }
            basis
        }
    }
}

/// Sign counts `(positive, negative, zero)` of the Hessian metric of
/// `log det` restricted to a tangent subspace. The zero threshold is
/// `1e-8` of the largest eigenvalue magnitude.
pub fn restricted_signature(rho: &Rho, subspace: &Subspace) -> Result<(usize, usize, usize)> {
    let (p, n, z, _) = restricted_signature_eigen(rho, subspace)?;
    Ok((p, n, z))
}

/// Signature plus the eigenvalues themselves, ascending.
pub fn restricted_signature_eigen(
    rho: &Rho,
    subspace: &Subspace,
) -> Result<(usize, usize, usize, Vec<f64>)> {
    let hess = hessian_log_det(rho)?;
    let basis = subspace_basis(rho, subspace);
    if basis.is_empty() {
        return Err(Error::EmptySubspace);
    }
    let restricted = hess.restrict(&basis);
    let ev = sym_eigenvalues(restricted);
    let max = ev.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let thr = 1e-8 * max;
    let pos = ev.iter().filter(|v| **v > thr).count();
    let neg = ev.iter().filter(|v| **v < -thr).count();
    let zero = ev.len() - pos - neg;
    Ok((pos, neg, zero, ev))
}

/// Residual of the duality equation `rho-hat = kappa (v (x) eps) rho`.
///
/// Both sides are read as linear functionals on tangent vectors; the pair
/// `(v (x) eps) rho = (-v.psi2, v.psi1)` is identified with a functional
/// through the dual pairing, with the R^2 slots contracted by eps. For
/// spacelike `v` the mirrored slot sign is used, which is the convention
/// under which the equation has solutions (the membership conditions are
/// `Q(psi1) + Q(psi2) = kappa v` timelike, `Q(psi1) - Q(psi2) = kappa v`
/// spacelike).
pub fn duality_residual(rho: &Rho, v: &LorentzVector) -> Result<f64> {
    let lvv = v.norm_l();
    if lvv == 0.0 || !v.is_finite() {
        return Err(Error::NullVector { lvv });
    }
    check_not_singular(rho, NEAR_SINGULAR_FLOOR)?;
    let g = grad_det(rho);
    let f = duality_functional(rho, v);
    let mut sq = 0.0;
    for i in 0..32 {
        let d = g[i] - DUALITY_KAPPA * f[i];
        sq += d * d;
    }
    Ok(sq.sqrt())
}

/// The `(v (x) eps) rho` side as a 32-coefficient functional.
fn duality_functional(rho: &Rho, v: &LorentzVector) -> [f64; 32] {
    let w1 = clifford_action(v, &rho.psi1);
    let w2 = clifford_action(v, &rho.psi2);
    // <w, psidot> pairs w.phi_minus against psidot.phi_plus and vice versa
    let s1 = if v.norm_l() < 0.0 { -1.0 } else { 1.0 };
    let mut out = [0.0; 32];
    out[0..8].copy_from_slice(&w1.phi_plus.scale(s1).0);
    out[8..16].copy_from_slice(&w1.phi_minus.scale(s1).0);
    out[16..24].copy_from_slice(&w2.phi_plus.scale(-1.0).0);
    out[24..32].copy_from_slice(&w2.phi_minus.scale(-1.0).0);
    out
}

/// Outcome of the Moebius normalization of a non-singular pair.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct NormalForm {
    pub word: ConformalWord,
    pub p: [[f64; 2]; 2],
    pub rho_norm: Rho,
}

/// Transforms a non-singular `rho` to the diagonal unit normal form:
/// `psi2`'s zero goes to infinity, `psi1`'s to the origin, then a diagonal
/// GL(2,R) matrix rescales both rows to unit length. The word has even
/// parity and `rho_norm = act(word, rho) . P` exactly.
pub fn normalize(rho: &Rho) -> Result<NormalForm> {
    normalize_with_floor(rho, NEAR_SINGULAR_FLOOR)
}

pub fn normalize_with_floor(rho: &Rho, floor: f64) -> Result<NormalForm> {
    check_not_singular(rho, floor)?;
    let mut word = ConformalWord::default();
    let mut cur = *rho;

    let infinite = |psi: &Twistor| psi.phi_minus.norm() <= 1e-10 * psi.norm();

    // move psi2's zero to infinity (if not already there)
    if !infinite(&cur.psi2) {
        let p2 = project(&cur.psi2)?
            .finite_point()
            .expect("finite phi- implies a finite zero");
        // fixed inversion-first pattern: translate the zero to the origin,
        // invert, and repair orientation with a reflection
        word.push(ConformalGenerator::Translation(p2));
        word.push(ConformalGenerator::Inversion);
        word.push(ConformalGenerator::reflection(Octonion::unit(1)));
        cur = rho.act_word(&word)?;
    } else if infinite(&cur.psi1) {
        // both zeros at infinity means det ~ 0; only reachable with a
        // floor far below the default
        return Err(Error::NearSingular {
            det: det_rho(rho),
            floor,
        });
    }

    // move psi1's zero to the origin; translations fix infinity
    let p1 = project(&cur.psi1)?
        .finite_point()
        .ok_or(Error::NearSingular {
            det: det_rho(rho),
            floor,
        })?;
    if p1.norm() > 0.0 {
        word.push(ConformalGenerator::Translation(p1));
        cur = rho.act_word(&word)?;
    }

    // diagonal rescale to unit rows
    let n1 = cur.psi1.phi_minus.norm();
    let n2 = cur.psi2.phi_plus.norm();
    if n1 == 0.0 || n2 == 0.0 {
        return Err(Error::NearSingular {
            det: det_rho(rho),
            floor,
        });
    }
    let p = [[1.0 / n1, 0.0], [0.0, 1.0 / n2]];
    let rho_norm = cur.gl2_action(&p);
    Ok(NormalForm { word, p, rho_norm })
}

/// Retracts a positive-determinant point onto the compact duality locus:
/// centers the two zeros to an antipodal pair with a translation, scales
/// them onto the unit sphere with a dilation, then rescales each row to
/// unit twistor norm. The output satisfies
/// `duality_residual(., (1,0,1)) = 0` up to rounding.
pub fn retract(rho: &Rho) -> Result<Rho> {
    let det = det_rho(rho);
    let scale = rho.norm().powi(4);
    if det <= NEAR_SINGULAR_FLOOR * scale.max(f64::MIN_POSITIVE) {
        return Err(Error::NonPositiveDet { det });
    }

    let z1 = project(&rho.psi1)?.finite_point();
    let z2 = project(&rho.psi2)?.finite_point();
    let mut word = ConformalWord::default();
    match (z1, z2) {
        (Some(c1), Some(c2)) => {
            // translate the midpoint to the origin: zeros land at +/- z
            word.push(ConformalGenerator::Translation((c1 + c2).scale(0.5)));
            let z = (c1 - c2).scale(0.5);
            let a = z.norm();
            if (a - 1.0).abs() > 1e-14 {
                // zeros move by c -> c / lambda, so lambda = a lands on the sphere
                word.push(ConformalGenerator::Dilation(a));
            }
        }
        (Some(c1), None) => {
            // infinity stays put; send the finite zero to the origin
            if c1.norm() > 0.0 {
                word.push(ConformalGenerator::Translation(c1));
            }
        }
        (None, Some(c2)) => {
            if c2.norm() > 0.0 {
                word.push(ConformalGenerator::Translation(c2));
            }
        }
        // two zeros at infinity sit below the determinant floor
        (None, None) => return Err(Error::NonPositiveDet { det }),
    }
    let moved = rho.act_word(&word)?;
    let n1 = moved.psi1.norm();
    let n2 = moved.psi2.norm();
    Ok(Rho {
        psi1: moved.psi1.scale(1.0 / n1),
        psi2: moved.psi2.scale(1.0 / n2),
    })
}

/// Embeds a quaternionic 2x2 matrix along a quaternion subalgebra.
///
/// The twistors are the matrix columns: `psi_j = (M[0][j], M[1][j])`, which
/// makes `det_rho` of the image equal the quaternionic determinant.
pub fn sl2h_embed(h: &QuaternionSubalgebra, m: &[[f64; 4]; 4]) -> Rho {
    // m rows are the entries (a, b, c, d) as quaternion coordinates
    let a = h.embed(m[0]);
    let b = h.embed(m[1]);
    let c = h.embed(m[2]);
    let d = h.embed(m[3]);
    Rho {
        psi1: Twistor::primal(a, c),
        psi2: Twistor::primal(b, d),
    }
}

/// Checks that four octonions lie in the span of a subalgebra.
pub fn check_in_span(h: &QuaternionSubalgebra, entries: &[Octonion]) -> Result<()> {
    for e in entries {
        let r = h.span_residual(e);
        if r > 1e-10 * (1.0 + e.norm()) {
            return Err(Error::OutsideSpan { residual: r });
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rho0() -> Rho {
        Rho::reference()
    }

    #[test]
    fn f_ab_diagonal_cases() {
        let phi = Octonion([0.5, 1.0, -0.3, 0.2, 0.8, -0.6, 0.1, 0.4]);
        let psi = Twistor::primal(phi, Octonion::ZERO);
        let f = f_ab(&psi, &psi);
        assert!((f.a - phi.norm_sq()).abs() < 1e-12);
        assert!(f.b.norm() < 1e-12 && f.c.abs() < 1e-12);

        let psi1 = Twistor::primal(phi, Octonion::ZERO);
        let psi2 = Twistor::primal(Octonion::ZERO, Octonion::unit(2));
        let f12 = f_ab(&psi1, &psi2);
        assert!(f12.a.abs() < 1e-15 && f12.c.abs() < 1e-15);
        assert_eq!(f12.b, crate::triality::pair_raw(&Octonion::unit(2), &phi));
        // symmetry
        let f21 = f_ab(&psi2, &psi1);
        assert_eq!(f12, f21);
    }

    #[test]
    fn q_map_null() {
        let psi = Twistor::primal(
            Octonion([1.0, -0.2, 0.4, 0.9, -0.5, 0.3, 0.0, 0.7]),
            Octonion([0.3, 0.8, -0.1, 0.2, 0.6, -0.4, 1.0, -0.9]),
        );
        let q = q_map(&psi);
        assert!(q.norm_l().abs() <= 1e-10 * q.euclid_norm().powi(2));
    }

    #[test]
    fn mu_and_det_at_reference() {
        assert!((mu(&rho0()) + 3.0).abs() < 1e-14);
        assert!((det_rho(&rho0()) - 1.0).abs() < 1e-14);
        // zero second twistor kills mu
        let r = Rho {
            psi1: rho0().psi1,
            psi2: Twistor::zero(),
        };
        assert_eq!(mu(&r), 0.0);
    }

    #[test]
    fn diagonal_norms_multiply() {
        let r = Rho {
            psi1: Twistor::primal(Octonion::unit(3).scale(2.0), Octonion::ZERO),
            psi2: Twistor::primal(Octonion::ZERO, Octonion::unit(6).scale(3.0)),
        };
        assert!((det_rho(&r) - 36.0).abs() < 1e-12);
    }

    #[test]
    fn polarization_diagonal_recovers_det() {
        let r = Rho {
            psi1: Twistor::primal(
                Octonion([0.4, -1.1, 0.2, 0.7, 0.0, 0.9, -0.5, 0.3]),
                Octonion([1.0, 0.1, -0.8, 0.5, 0.2, -0.3, 0.6, 0.0]),
            ),
            psi2: Twistor::primal(
                Octonion([-0.2, 0.5, 1.2, -0.4, 0.8, 0.0, 0.3, -0.7]),
                Octonion([0.6, -0.9, 0.0, 1.1, -0.3, 0.4, 0.2, 0.5]),
            ),
        };
        let m = quartic_polarization(&r, &r, &r, &r);
        assert!((m - det_rho(&r)).abs() < 1e-9 * det_rho(&r).abs().max(1.0));
        // symmetry under permutation
        let a = basis_dir(3);
        let b = basis_dir(17);
        let m1 = quartic_polarization(&r, &a, &b, &r);
        let m2 = quartic_polarization(&b, &r, &r, &a);
        assert!((m1 - m2).abs() < 1e-10 * m1.abs().max(1.0));
    }

    #[test]
    fn polarized_second_derivative_vs_finite_differences() {
        let r = Rho {
            psi1: Twistor::primal(
                Octonion([0.7, -0.3, 0.5, 0.1, -0.9, 0.4, 0.2, -0.6]),
                Octonion([0.2, 0.8, -0.4, 0.6, 0.0, -0.1, 0.9, 0.3]),
            ),
            psi2: Twistor::primal(
                Octonion([-0.5, 0.2, 0.9, -0.7, 0.3, 0.6, -0.2, 0.1]),
                Octonion([0.4, -0.6, 0.1, 0.8, -0.2, 0.5, 0.0, -0.9]),
            ),
        };
        let a = basis_dir(5);
        let b = basis_dir(28);
        let analytic = 12.0 * quartic_polarization(&r, &r, &a, &b);
        let h = 1e-4;
        let fd = (det_rho(&r.add(&a.scale(h)).add(&b.scale(h)))
            - det_rho(&r.add(&a.scale(h)).sub(&b.scale(h)))
            - det_rho(&r.sub(&a.scale(h)).add(&b.scale(h)))
            + det_rho(&r.sub(&a.scale(h)).sub(&b.scale(h))))
            / (4.0 * h * h);
        assert!((analytic - fd).abs() <= 1e-6 * analytic.abs().max(1.0));
    }

    #[test]
    fn euler_identity() {
        let r = Rho {
            psi1: Twistor::primal(
                Octonion([0.9, 0.2, -0.4, 0.1, 0.7, -0.2, 0.5, -0.6]),
                Octonion([0.0, 1.2, 0.3, -0.5, 0.4, 0.8, -0.1, 0.2]),
            ),
            psi2: Twistor::primal(
                Octonion([0.3, -0.7, 0.6, 0.9, -0.2, 0.1, 0.0, 0.8]),
                Octonion([-0.5, 0.4, 1.0, 0.2, 0.6, -0.9, 0.3, -0.1]),
            ),
        };
        assert!((grad_det_apply(&r, &r) - 4.0 * det_rho(&r)).abs() < 1e-9);
    }

    #[test]
    fn gradient_at_reference_pairs_with_diagonal() {
        // at rho0 the gradient is 2[<phi1-, a> + <phi2+, d>]
        let g = grad_det(&rho0());
        let mut expected = [0.0; 32];
        expected[0] = 2.0;
        expected[24] = 2.0;
        for i in 0..32 {
            assert!((g[i] - expected[i]).abs() < 1e-12, "slot {i}");
        }
    }

    #[test]
    fn duality_residual_reference_cases() {
        let v = LorentzVector::new(1.0, Octonion::ZERO, 1.0);
        assert!(duality_residual(&rho0(), &v).unwrap() < 1e-12);
        // non-unit diagonal leaves the locus
        let r = Rho {
            psi1: Twistor::primal(Octonion::ONE.scale(1.3), Octonion::ZERO),
            psi2: Twistor::primal(Octonion::ZERO, Octonion::ONE.scale(0.9)),
        };
        assert!(duality_residual(&r, &v).unwrap() > 1e-3);
        // null v is rejected
        let null = LorentzVector::new(1.0, Octonion::ZERO, 0.0);
        assert!(duality_residual(&rho0(), &null).is_err());
        // spacelike branch: rho0 solves v = (1, 0, -1)
        let vs = LorentzVector::new(1.0, Octonion::ZERO, -1.0);
        assert!(duality_residual(&rho0(), &vs).unwrap() < 1e-12);
        // and the antidiagonal solves v = (-1, 0, 1)
        let anti = Rho {
            psi1: Twistor::primal(Octonion::ZERO, Octonion::ONE),
            psi2: Twistor::primal(Octonion::ONE, Octonion::ZERO),
        };
        let vs2 = LorentzVector::new(-1.0, Octonion::ZERO, 1.0);
        assert!(duality_residual(&anti, &vs2).unwrap() < 1e-12);
    }

    #[test]
    fn normalize_reference_and_antidiagonal() {
        let nf = normalize(&rho0()).unwrap();
        assert!(nf.rho_norm.psi1.phi_plus.norm() < 1e-10);
        assert!(nf.rho_norm.psi2.phi_minus.norm() < 1e-10);
        assert!((nf.rho_norm.psi1.phi_minus.norm() - 1.0).abs() < 1e-10);

        let anti = Rho {
            psi1: Twistor::primal(Octonion::ZERO, Octonion::ONE),
            psi2: Twistor::primal(Octonion::ONE, Octonion::ZERO),
        };
        let nf = normalize(&anti).unwrap();
        assert!(nf
            .word
            .generators
            .iter()
            .any(|g| matches!(g, ConformalGenerator::Inversion)));
        assert!(nf.rho_norm.psi1.phi_plus.norm() < 1e-8);
        assert!(nf.rho_norm.psi2.phi_minus.norm() < 1e-8);
        // reproducible from the returned word and P
        let rebuilt = anti.act_word(&nf.word).unwrap().gl2_action(&nf.p);
        assert!(rebuilt.sub(&nf.rho_norm).norm() < 1e-12);
    }

    #[test]
    fn retract_reference_fixed() {
        let out = retract(&rho0()).unwrap();
        assert!(out.sub(&rho0()).norm() < 1e-12);
        // diagonal dilation is undone up to the stabilizer
        let scaled = rho0()
            .act_word(&ConformalWord::new(vec![ConformalGenerator::Dilation(2.5)]))
            .unwrap();
        let back = retract(&scaled).unwrap();
        let v = LorentzVector::new(1.0, Octonion::ZERO, 1.0);
        assert!(duality_residual(&back, &v).unwrap() < 1e-10);
        // zero-determinant input is refused
        let degenerate = Rho {
            psi1: rho0().psi1,
            psi2: rho0().psi1,
        };
        assert!(retract(&degenerate).is_err());
    }

    #[test]
    fn sl2h_identity_embeds_to_reference() {
        let h = QuaternionSubalgebra::standard();
        let m = [
            [1.0, 0.0, 0.0, 0.0],
            [0.0, 0.0, 0.0, 0.0],
            [0.0, 0.0, 0.0, 0.0],
            [1.0, 0.0, 0.0, 0.0],
        ];
        assert_eq!(sl2h_embed(&h, &m), rho0());
    }

    #[test]
    fn sl2h_diag_q_qinv_has_unit_det() {
        let h = QuaternionSubalgebra::standard();
        let q = [0.8, -0.5, 1.2, 0.3];
        let n: f64 = q.iter().map(|x| x * x).sum();
        // quaternion inverse conj(q)/|q|^2 in coordinates
        let qi = [q[0] / n, -q[1] / n, -q[2] / n, -q[3] / n];
        let m = [q, [0.0; 4], [0.0; 4], qi];
        let rho = sl2h_embed(&h, &m);
        assert!((det_rho(&rho) - 1.0).abs() < 1e-12);
        check_in_span(&h, &[rho.psi1.phi_minus, rho.psi2.phi_plus]).unwrap();
        // entries outside the span are rejected
        let bad = Octonion::unit(4);
        assert!(check_in_span(&h, &[bad]).is_err());
    }

    #[test]
    fn signatures_at_reference() {
        assert_eq!(
            restricted_signature(&rho0(), &Subspace::Sl2O).unwrap(),
            (22, 9, 0)
        );
        assert_eq!(
            restricted_signature(&rho0(), &Subspace::Su2O).unwrap(),
            (22, 0, 0)
        );
        assert_eq!(
            restricted_signature(&rho0(), &Subspace::Su11O).unwrap(),
            (14, 8, 0)
        );
        let h = QuaternionSubalgebra::standard();
        assert_eq!(
            restricted_signature(&rho0(), &Subspace::Sl2H(h)).unwrap(),
            (10, 5, 0)
        );
    }

    #[test]
    fn oct_matrix_predicates() {
        let mut v = [0.0; 32];
        v[1] = 0.4; // a imaginary
        v[24] = 0.0;
        let m = OctMatrix2::from_vec32(&v);
        assert!(m.is_trace_imaginary(1e-12));
        // b = -conj(c)
        let c = Octonion([0.3, -0.7, 0.2, 0.9, -0.1, 0.5, 0.0, 0.8]);
        let b = -c.conj();
        let mut v = [0.0; 32];
        v[8..16].copy_from_slice(&b.0);
        v[16..24].copy_from_slice(&c.0);
        let m = OctMatrix2::from_vec32(&v);
        assert!(m.is_skew_type(1e-12));
        assert!(m.to_rho().psi1.phi_plus == b);
        let mut w = v;
        w[8] += 0.5;
        assert!(!OctMatrix2::from_vec32(&w).is_skew_type(1e-12));
    }

    #[test]
    fn hessian_is_symmetric() {
        let hess = hessian_log_det(&rho0()).unwrap();
        assert!(hess.symmetry_residual() <= 1e-12);
    }

    #[test]
    fn hessian_rejects_singular_points() {
        let degenerate = Rho {
            psi1: rho0().psi1,
            psi2: rho0().psi1,
        };
        assert!(hessian_log_det(&degenerate).is_err());
    }
}
