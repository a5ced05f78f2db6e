//! The 16-dimensional twistor space of Spin(9,1).
//!
//! A primal twistor is the field `psi(x) = x.phi- + phi+` with constant
//! spinors `phi-` in S- and `phi+` in S+; a dual twistor has the chirality
//! roles swapped and evaluates through the opposite Clifford product.
//! Reflections and the inversion exchange the two spaces, so `act` keeps an
//! explicit duality flag rather than identifying them.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lorentz::{ConformalGenerator, ConformalWord, LorentzVector};
use crate::octonion::{Octonion, Vector8};
use crate::triality::{cliff_minus_raw, cliff_plus_raw, pair_raw, Spinor};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Duality {
    Primal,
    Dual,
}

impl Duality {
    pub fn flip(self) -> Duality {
        match self {
            Duality::Primal => Duality::Dual,
            Duality::Dual => Duality::Primal,
        }
    }
}

/// A twistor `(phi-, phi+)`, primal or dual.
///
/// Chirality tags are implied by the duality flag: primal stores
/// `phi- in S-`, `phi+ in S+`, dual the other way round.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Twistor {
    pub duality: Duality,
    pub phi_minus: Octonion,
    pub phi_plus: Octonion,
}

impl Twistor {
    pub fn primal(phi_minus: Octonion, phi_plus: Octonion) -> Twistor {
        Twistor {
            duality: Duality::Primal,
            phi_minus,
            phi_plus,
        }
    }

    pub fn dual(phi_minus: Octonion, phi_plus: Octonion) -> Twistor {
        Twistor {
            duality: Duality::Dual,
            phi_minus,
            phi_plus,
        }
    }

    pub fn zero() -> Twistor {
        Twistor::primal(Octonion::ZERO, Octonion::ZERO)
    }

    /// `phi-` with its chirality tag.
    pub fn spinor_minus(&self) -> Spinor {
        match self.duality {
            Duality::Primal => Spinor::minus(self.phi_minus),
            Duality::Dual => Spinor::plus(self.phi_minus),
        }
    }

    /// `phi+` with its chirality tag.
    pub fn spinor_plus(&self) -> Spinor {
        match self.duality {
            Duality::Primal => Spinor::plus(self.phi_plus),
            Duality::Dual => Spinor::minus(self.phi_plus),
        }
    }

    pub fn norm_sq(&self) -> f64 {
        self.phi_minus.norm_sq() + self.phi_plus.norm_sq()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sq().sqrt()
    }

    pub fn add(&self, other: &Twistor) -> Twistor {
        debug_assert_eq!(self.duality, other.duality);
        Twistor {
            duality: self.duality,
            phi_minus: self.phi_minus + other.phi_minus,
            phi_plus: self.phi_plus + other.phi_plus,
        }
    }

    pub fn sub(&self, other: &Twistor) -> Twistor {
        debug_assert_eq!(self.duality, other.duality);
        Twistor {
            duality: self.duality,
            phi_minus: self.phi_minus - other.phi_minus,
            phi_plus: self.phi_plus - other.phi_plus,
        }
    }

    pub fn scale(&self, t: f64) -> Twistor {
        Twistor {
            duality: self.duality,
            phi_minus: self.phi_minus.scale(t),
            phi_plus: self.phi_plus.scale(t),
        }
    }

    /// Clifford product of a vector with the `phi-` slot, by chirality.
    pub(crate) fn cliff_on_minus_slot(&self, x: &Vector8) -> Octonion {
        match self.duality {
            Duality::Primal => cliff_minus_raw(x, &self.phi_minus),
            Duality::Dual => cliff_plus_raw(x, &self.phi_minus),
        }
    }

    /// Clifford product of a vector with the `phi+` slot, by chirality.
    pub(crate) fn cliff_on_plus_slot(&self, x: &Vector8) -> Octonion {
        match self.duality {
            Duality::Primal => cliff_plus_raw(x, &self.phi_plus),
            Duality::Dual => cliff_minus_raw(x, &self.phi_plus),
        }
    }

    pub fn is_finite(&self) -> bool {
        self.phi_minus.is_finite() && self.phi_plus.is_finite()
    }
}

/// Evaluates a primal twistor field at a point: `x.phi- + phi+`.
///
/// Panics if given a dual twistor.
pub fn evaluate(psi: &Twistor, x: &Vector8) -> Spinor {
    assert_eq!(
        psi.duality,
        Duality::Primal,
        "evaluate expects a primal twistor"
    );
    Spinor::plus(cliff_minus_raw(x, &psi.phi_minus) + psi.phi_plus)
}

/// Field value of a dual twistor, landing in S-.
pub fn evaluate_dual(psi: &Twistor, x: &Vector8) -> Spinor {
    assert_eq!(
        psi.duality,
        Duality::Dual,
        "evaluate_dual expects a dual twistor"
    );
    Spinor::minus(cliff_plus_raw(x, &psi.phi_minus) + psi.phi_plus)
}

/// Action of one conformal generator on a twistor.
///
/// Translations and dilations preserve the duality flag; reflections and
/// the inversion flip it. Two inversions compose to -1, the sign of the
/// lift of the identity.
pub fn act(g: &ConformalGenerator, psi: &Twistor) -> Twistor {
    match g {
        ConformalGenerator::Translation(t) => Twistor {
            duality: psi.duality,
            phi_minus: psi.phi_minus,
            phi_plus: psi.cliff_on_minus_slot(t) + psi.phi_plus,
        },
        ConformalGenerator::Reflection(n) => Twistor {
            duality: psi.duality.flip(),
            phi_minus: -psi.cliff_on_minus_slot(n),
            phi_plus: psi.cliff_on_plus_slot(n),
        },
        ConformalGenerator::Inversion => Twistor {
            duality: psi.duality.flip(),
            phi_minus: psi.phi_plus,
            phi_plus: -psi.phi_minus,
        },
        ConformalGenerator::Dilation(lambda) => {
            let r = lambda.sqrt();
            Twistor {
                duality: psi.duality,
                phi_minus: psi.phi_minus.scale(r),
                phi_plus: psi.phi_plus.scale(1.0 / r),
            }
        }
    }
}

/// Applies a word letter by letter, first letter first.
pub fn act_word(w: &ConformalWord, psi: &Twistor) -> Twistor {
    let mut out = *psi;
    for g in &w.generators {
        out = act(g, &out);
    }
    out
}

/// Pairing of a dual twistor against a primal one:
/// `<(chi-, chi+), (phi-, phi+)> = <chi-, phi+> + <chi+, phi->`.
///
/// This is the unique chirality-matched bilinear pairing (up to scale) that
/// makes `<f.psi1, psi2>` symmetric in `psi1, psi2`; with these conventions
/// `<f.psi1, psi2> = L(f, f_12)` exactly.
pub fn dual_pairing(dual: &Twistor, primal: &Twistor) -> f64 {
    debug_assert_eq!(dual.duality, Duality::Dual);
    debug_assert_eq!(primal.duality, Duality::Primal);
    dual.phi_minus.dot(&primal.phi_plus) + dual.phi_plus.dot(&primal.phi_minus)
}

/// The null vector `Q(psi)`, valid for either duality.
pub(crate) fn q_vector(psi: &Twistor) -> LorentzVector {
    match psi.duality {
        Duality::Primal => LorentzVector::new(
            psi.phi_minus.norm_sq(),
            pair_raw(&psi.phi_plus, &psi.phi_minus).scale(2.0),
            psi.phi_plus.norm_sq(),
        ),
        Duality::Dual => LorentzVector::new(
            psi.phi_minus.norm_sq(),
            pair_raw(&psi.phi_minus, &psi.phi_plus).scale(-2.0),
            psi.phi_plus.norm_sq(),
        ),
    }
}

/// A point of the quadric S^8, stored as a null ray normalized to `a + c = 1`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PointS8 {
    pub ray: LorentzVector,
}

impl PointS8 {
    /// The finite point of R^8 this ray represents, or `None` for infinity.
    pub fn finite_point(&self) -> Option<Vector8> {
        if self.ray.a.abs() < 1e-12 {
            None
        } else {
            Some(self.ray.b.scale(-0.5 / self.ray.a))
        }
    }

    pub fn infinity() -> PointS8 {
        PointS8 {
            ray: LorentzVector::new(0.0, Octonion::ZERO, 1.0),
        }
    }

    /// Embeds a finite point `c` as the ray of `|x - c|^2`, normalized.
    pub fn from_point(c: &Vector8) -> PointS8 {
        let ray = LorentzVector::new(1.0, c.scale(-2.0), c.norm_sq());
        PointS8 {
            ray: ray.scale(1.0 / (1.0 + c.norm_sq())),
        }
    }

    /// Euclidean distance between normalized rays; 0 iff same point.
    pub fn ray_distance(&self, other: &PointS8) -> f64 {
        self.ray.sub(&other.ray).euclid_norm()
    }
}

/// Projects a nonzero twistor to its point on S^8, the ray of `Q(psi)`.
pub fn project(psi: &Twistor) -> Result<PointS8> {
    let q = q_vector(psi);
    let scale = q.a + q.c; // equals |psi|^2
    if scale <= 0.0 {
        return Err(Error::ZeroTwistor);
    }
    Ok(PointS8 {
        ray: q.scale(1.0 / scale),
    })
}

/// The finite zero of a primal twistor by octonion division,
/// `c = (-phi+) * phi-^{-1}`; `None` when the zero is at infinity.
///
/// Cross-checks the Q-ray route; `project` is the canonical path when
/// `phi-` is small.
pub fn zero_point(psi: &Twistor) -> Result<Option<Vector8>> {
    assert_eq!(
        psi.duality,
        Duality::Primal,
        "zero_point expects a primal twistor"
    );
    let n = psi.norm();
    if n == 0.0 {
        return Err(Error::ZeroTwistor);
    }
    if psi.phi_minus.norm() <= 1e-12 * n {
        return Ok(None);
    }
    let inv = psi.phi_minus.inv()?;
    Ok(Some((-psi.phi_plus) * inv))
}
