//! The vector representation R^{9,1} and conformal generator actions.
//!
//! A Lorentz vector is stored as the quadratic function
//! `f(x) = a |x|^2 + (x, b) + c` it represents; the invariant form is
//! `L(f, f) = (b, b) - 4ac`. Group elements are words in the four
//! generators, acting on `f` by substitution with conformal weight -1:
//! a translation substitutes `x -> x + t`, a dilation gives
//! `f -> f(lambda x)/lambda`, so the scalar and twistor actions use one
//! consistent composition convention.

use serde::{Deserialize, Serialize};

use crate::octonion::{Octonion, Vector8};
use crate::twistor::Twistor;

/// `f = a |x|^2 + (x, b) + c` in the 10-dimensional representation.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct LorentzVector {
    pub a: f64,
    pub b: Vector8,
    pub c: f64,
}

impl LorentzVector {
    pub fn new(a: f64, b: Vector8, c: f64) -> LorentzVector {
        LorentzVector { a, b, c }
    }

    pub fn zero() -> LorentzVector {
        LorentzVector::new(0.0, Octonion::ZERO, 0.0)
    }

    /// `L(f, f)`.
    pub fn norm_l(&self) -> f64 {
        lorentz_form(self, self)
    }

    /// Euclidean magnitude of the coordinate vector, used for tolerances.
    pub fn euclid_norm(&self) -> f64 {
        (self.a * self.a + self.b.norm_sq() + self.c * self.c).sqrt()
    }

    pub fn add(&self, other: &LorentzVector) -> LorentzVector {
        LorentzVector::new(self.a + other.a, self.b + other.b, self.c + other.c)
    }

    pub fn sub(&self, other: &LorentzVector) -> LorentzVector {
        LorentzVector::new(self.a - other.a, self.b - other.b, self.c - other.c)
    }

    pub fn scale(&self, t: f64) -> LorentzVector {
        LorentzVector::new(t * self.a, self.b.scale(t), t * self.c)
    }

    /// Evaluates the quadratic function at a point of R^8.
    pub fn eval(&self, x: &Vector8) -> f64 {
        self.a * x.norm_sq() + x.dot(&self.b) + self.c
    }

    pub fn is_finite(&self) -> bool {
        self.a.is_finite() && self.b.is_finite() && self.c.is_finite()
    }
}

/// The Lorentz form `L(f, g) = (b_f, b_g) - 2 a_f c_g - 2 a_g c_f`.
pub fn lorentz_form(f: &LorentzVector, g: &LorentzVector) -> f64 {
    f.b.dot(&g.b) - 2.0 * f.a * g.c - 2.0 * g.a * f.c
}

/// One generator of the conformal group of S^8.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ConformalGenerator {
    /// Substitution `x -> x + t`.
    Translation(Vector8),
    /// Reflection in the hyperplane orthogonal to a unit vector.
    Reflection(Vector8),
    /// `x -> x / |x|^2`.
    Inversion,
    /// `x -> lambda x` with weight rescaling; `lambda > 0`.
    Dilation(f64),
}

impl ConformalGenerator {
    /// Reflections and the inversion reverse orientation.
    pub fn is_odd(&self) -> bool {
        matches!(
            self,
            ConformalGenerator::Reflection(_) | ConformalGenerator::Inversion
        )
    }

    /// Unit-normalized reflection.
    pub fn reflection(n: Vector8) -> ConformalGenerator {
        ConformalGenerator::Reflection(n.scale(1.0 / n.norm()))
    }
}

/// An ordered word of generators; letters act first-to-last.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ConformalWord {
    pub generators: Vec<ConformalGenerator>,
}

impl ConformalWord {
    pub fn new(generators: Vec<ConformalGenerator>) -> ConformalWord {
        ConformalWord { generators }
    }

    /// Number of orientation-reversing letters mod 2.
    pub fn parity(&self) -> u8 {
        (self.generators.iter().filter(|g| g.is_odd()).count() % 2) as u8
    }

    pub fn push(&mut self, g: ConformalGenerator) {
        self.generators.push(g);
    }
}

/// Action of a generator on the vector representation.
pub fn vector_action(g: &ConformalGenerator, f: &LorentzVector) -> LorentzVector {
    match g {
        ConformalGenerator::Translation(t) => LorentzVector::new(
            f.a,
            f.b + t.scale(2.0 * f.a),
            f.a * t.norm_sq() + t.dot(&f.b) + f.c,
        ),
        ConformalGenerator::Reflection(n) => {
            LorentzVector::new(f.a, f.b - n.scale(2.0 * f.b.dot(n)), f.c)
        }
        ConformalGenerator::Inversion => LorentzVector::new(f.c, f.b, f.a),
        ConformalGenerator::Dilation(lambda) => LorentzVector::new(lambda * f.a, f.b, f.c / lambda),
    }
}

/// Applies a word letter by letter, first letter first.
pub fn vector_action_word(w: &ConformalWord, f: &LorentzVector) -> LorentzVector {
    let mut out = *f;
    for g in &w.generators {
        out = vector_action(g, &out);
    }
    out
}

/// Clifford action of `f` in R^{9,1} on a twistor, flipping its duality.
///
/// Components `(b.phi- - 2a phi+, -(b.phi+ + 2c phi-))`; applying the same
/// `f` twice multiplies the twistor by `-L(f, f)`.
pub fn clifford_action(f: &LorentzVector, psi: &Twistor) -> Twistor {
    let m = psi.cliff_on_minus_slot(&f.b) - psi.phi_plus.scale(2.0 * f.a);
    let p = -(psi.cliff_on_plus_slot(&f.b) + psi.phi_minus.scale(2.0 * f.c));
    Twistor {
        duality: psi.duality.flip(),
        phi_minus: m,
        phi_plus: p,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn form_matches_quoted_formula() {
        let f = LorentzVector::new(1.0, Octonion::ZERO, 1.0);
        assert_eq!(f.norm_l(), -4.0);
        let g = LorentzVector::new(0.0, Octonion::unit(2).scale(3.0), 0.0);
        assert_eq!(g.norm_l(), 9.0);
        let h = LorentzVector::new(1.0, Octonion::ZERO, 0.0);
        let k = LorentzVector::new(0.0, Octonion::ZERO, 1.0);
        assert_eq!(lorentz_form(&h, &k), -2.0);
    }

    #[test]
    fn inversion_swaps_scalar_slots() {
        let f = LorentzVector::new(1.0, Octonion::ZERO, 0.0);
        let out = vector_action(&ConformalGenerator::Inversion, &f);
        assert_eq!(out, LorentzVector::new(0.0, Octonion::ZERO, 1.0));
    }

    #[test]
    fn dilation_fixes_middle_component() {
        let b = Octonion::unit(4);
        let f = LorentzVector::new(0.0, b, 0.0);
        let out = vector_action(&ConformalGenerator::Dilation(4.0), &f);
        assert_eq!(out, f);
        assert_eq!(out.norm_l(), f.norm_l());
    }

    #[test]
    fn constants_are_translation_invariant() {
        let f = LorentzVector::new(0.0, Octonion::ZERO, 1.0);
        let t = ConformalGenerator::Translation(Octonion::unit(5).scale(2.5));
        assert_eq!(vector_action(&t, &f), f);
    }

    #[test]
    fn actions_preserve_l() {
        let gens = [
            ConformalGenerator::Translation(Octonion([0.2, -0.4, 0.1, 0.9, -0.3, 0.5, 0.0, 0.7])),
            ConformalGenerator::reflection(Octonion([1.0, 2.0, -1.0, 0.5, 0.0, 0.0, 3.0, -2.0])),
            ConformalGenerator::Inversion,
            ConformalGenerator::Dilation(1.7),
        ];
        let f = LorentzVector::new(0.3, Octonion([1., -2., 0., 1., 4., -1., 0.5, 2.]), -1.2);
        let g = LorentzVector::new(-0.8, Octonion([0., 1., 2., -1., 0., 3., -0.5, 1.]), 0.4);
        let l0 = lorentz_form(&f, &g);
        for gen in &gens {
            let l1 = lorentz_form(&vector_action(gen, &f), &vector_action(gen, &g));
            assert!((l1 - l0).abs() < 1e-12 * l0.abs().max(1.0));
        }
    }

    #[test]
    fn clifford_action_closed_forms() {
        use crate::twistor::{Duality, Twistor};
        let phi_m = Octonion([0.4, -0.2, 1.0, 0.3, -0.7, 0.1, 0.9, -0.5]);
        let phi_p = Octonion([-0.3, 0.8, 0.2, -0.6, 0.5, 1.1, 0.0, 0.7]);
        // purely spatial f = (0, b, 0) sends (phi-, 0) to (b.phi-, 0)
        let b = Octonion([0.2, 0.5, -0.1, 0.8, 0.3, -0.4, 0.6, 0.0]);
        let out = clifford_action(
            &LorentzVector::new(0.0, b, 0.0),
            &Twistor::primal(phi_m, Octonion::ZERO),
        );
        assert_eq!(out.duality, Duality::Dual);
        assert_eq!(out.phi_minus, b * phi_m);
        assert_eq!(out.phi_plus, Octonion::ZERO);
        // f = (1, 0, 1) sends (phi-, phi+) to (-2 phi+, -2 phi-)
        let v = LorentzVector::new(1.0, Octonion::ZERO, 1.0);
        let out = clifford_action(&v, &Twistor::primal(phi_m, phi_p));
        assert_eq!(out.phi_minus, phi_p.scale(-2.0));
        assert_eq!(out.phi_plus, phi_m.scale(-2.0));
    }

    #[test]
    fn word_parity() {
        let w = ConformalWord::new(vec![
            ConformalGenerator::Inversion,
            ConformalGenerator::Dilation(2.0),
            ConformalGenerator::reflection(Octonion::unit(1)),
        ]);
        assert_eq!(w.parity(), 0);
    }
}
