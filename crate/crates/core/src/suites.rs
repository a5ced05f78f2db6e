//! Seeded verification suites over every identity the library exposes.
//!
//! Each suite draws its samples from a ChaCha stream seeded by a fixed
//! counter-based derivation from the root seed, so suites can run in any
//! order (or subsets) with identical results. A report passes exactly when
//! its max residual is within tolerance; discrete checks (signature
//! counts) report the number of mismatches against a zero tolerance.

use std::time::Instant;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::invariants::{
    det_rho, duality_residual, f_ab, grad_det, hess_det_apply, hessian_log_det, mu, mu_null_pair,
    normalize, p_map, p_map_dual_route, q_map, restricted_signature, retract, Rho, Subspace,
};
use crate::lorentz::{
    clifford_action, lorentz_form, vector_action_word, ConformalGenerator, ConformalWord,
    LorentzVector,
};
use crate::octonion::{quaternion_subalgebra, Octonion, QuaternionSubalgebra};
use crate::quaternion_check::{
    cdet_oracle, char_poly_coeffs, mu_vs_qdet, qdet, qdet_log_hessian_signature, QMat2, Quaternion,
};
use crate::triality::{cliff_minus_raw, cliff_plus_raw, pair_raw};
use crate::twistor::{act_word, project, zero_point, PointS8, Twistor};

/// Outcome of one verification suite.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SuiteReport {
    pub suite: String,
    pub samples: usize,
    pub max_residual: f64,
    pub tolerance: f64,
    pub pass: bool,
    pub seed: u64,
    pub wall_time: f64,
}

/// All suite names, in the order `--suite all` runs them.
pub fn suite_names() -> &'static [&'static str] {
    &[
        "octonion",
        "clifford",
        "vector-clifford",
        "lorentz-invariance",
        "projection",
        "quartic",
        "invariance",
        "degeneracy",
        "signature",
        "hessian-closed-form",
        "quaternion-oracle",
        "derivatives",
        "normalize",
        "duality-calibration",
        "duality",
    ]
}

/// Compiled-in default sample counts and tolerances.
fn defaults(name: &str) -> Option<(usize, f64)> {
    Some(match name {
        "octonion" => (1000, 1e-12),
        "clifford" => (1000, 1e-12),
        "vector-clifford" => (1000, 1e-10),
        "lorentz-invariance" => (500, 1e-10),
        "projection" => (1000, 1e-10),
        "quartic" => (1000, 1e-10),
        "invariance" => (200, 1e-9),
        "degeneracy" => (200, 1e-10),
        "signature" => (20, 0.0),
        "hessian-closed-form" => (50, 1e-12),
        "quaternion-oracle" => (500, 1e-9),
        "derivatives" => (50, 1e-5),
        "normalize" => (100, 1e-8),
        "duality-calibration" => (1, 1e-12),
        "duality" => (50, 1e-8),
        _ => return None,
    })
}

fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9e3779b97f4a7c15);
    x = (x ^ (x >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94d049bb133111eb);
    x ^ (x >> 31)
}

/// Derives the per-suite seed from the root seed and the suite position.
pub fn suite_seed(root: u64, name: &str) -> u64 {
    let idx = suite_names()
        .iter()
        .position(|n| *n == name)
        .unwrap_or(usize::MAX) as u64;
    splitmix64(root ^ splitmix64(idx.wrapping_add(1)))
}

/// Runs one suite with optional sample/tolerance overrides.
pub fn run_suite(
    name: &str,
    samples: Option<usize>,
    tol: Option<f64>,
    root_seed: u64,
) -> Option<SuiteReport> {
    let (def_samples, def_tol) = defaults(name)?;
    let samples = samples.unwrap_or(def_samples).max(1);
    let tolerance = tol.unwrap_or(def_tol);
    let seed = suite_seed(root_seed, name);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let start = Instant::now();
    let max_residual = match name {
        "octonion" => octonion_suite(&mut rng, samples),
        "clifford" => clifford_suite(&mut rng, samples),
        "vector-clifford" => vector_clifford_suite(&mut rng, samples),
        "lorentz-invariance" => lorentz_invariance_suite(&mut rng, samples),
        "projection" => projection_suite(&mut rng, samples),
        "quartic" => quartic_suite(&mut rng, samples),
        "invariance" => invariance_suite(&mut rng, samples),
        "degeneracy" => degeneracy_suite(&mut rng, samples),
        "signature" => signature_suite(&mut rng, samples),
        "hessian-closed-form" => hessian_closed_form_suite(&mut rng, samples),
        "quaternion-oracle" => quaternion_oracle_suite(&mut rng, samples),
        "derivatives" => derivatives_suite(&mut rng, samples),
        "normalize" => normalize_suite(&mut rng, samples),
        "duality-calibration" => duality_calibration_suite(),
        "duality" => duality_suite(&mut rng, samples),
        _ => return None,
    };
    Some(SuiteReport {
        suite: name.to_string(),
        samples,
        max_residual,
        tolerance,
        pass: max_residual <= tolerance,
        seed,
        wall_time: start.elapsed().as_secs_f64(),
    })
}

/// Runs every suite against one root seed.
pub fn run_all(samples: Option<usize>, tol: Option<f64>, root_seed: u64) -> Vec<SuiteReport> {
    suite_names()
        .iter()
        .map(|n| run_suite(n, samples, tol, root_seed).expect("known suite"))
        .collect()
}

// ---- sampling helpers ----

fn rand_oct(rng: &mut ChaCha8Rng) -> Octonion {
    let mut c = [0.0; 8];
    for v in &mut c {
        *v = rng.gen_range(-1.0..1.0);
    }
    Octonion(c)
}

fn rand_unit(rng: &mut ChaCha8Rng) -> Octonion {
    loop {
        let v = rand_oct(rng);
        let n = v.norm();
        if n > 1e-3 {
            return v.scale(1.0 / n);
        }
    }
}

fn rand_unit_imaginary(rng: &mut ChaCha8Rng) -> Octonion {
    loop {
        let mut v = rand_oct(rng);
        v.0[0] = 0.0;
        let n = v.norm();
        if n > 1e-3 {
            return v.scale(1.0 / n);
        }
    }
}

fn rand_subalgebra(rng: &mut ChaCha8Rng) -> QuaternionSubalgebra {
    loop {
        let u = rand_unit_imaginary(rng);
        let mut v = rand_unit_imaginary(rng);
        v = v - u.scale(v.dot(&u));
        v.0[0] = 0.0;
        let n = v.norm();
        if n > 1e-3 {
            if let Ok(h) = quaternion_subalgebra(&u, &v.scale(1.0 / n)) {
                return h;
            }
        }
    }
}

fn rand_twistor(rng: &mut ChaCha8Rng) -> Twistor {
    Twistor::primal(rand_oct(rng), rand_oct(rng))
}

fn rand_rho(rng: &mut ChaCha8Rng) -> Rho {
    Rho::new(rand_twistor(rng), rand_twistor(rng)).expect("primal by construction")
}

fn rand_lorentz(rng: &mut ChaCha8Rng) -> LorentzVector {
    LorentzVector::new(
        rng.gen_range(-1.0..1.0),
        rand_oct(rng),
        rng.gen_range(-1.0..1.0),
    )
}

fn rand_quat(rng: &mut ChaCha8Rng) -> Quaternion {
    let mut c = [0.0; 4];
    for v in &mut c {
        *v = rng.gen_range(-1.0..1.0);
    }
    Quaternion(c)
}

fn rand_qmat(rng: &mut ChaCha8Rng) -> QMat2 {
    QMat2::new(
        rand_quat(rng),
        rand_quat(rng),
        rand_quat(rng),
        rand_quat(rng),
    )
}

/// Any single generator, bounded parameters.
fn rand_generator(rng: &mut ChaCha8Rng) -> ConformalGenerator {
    match rng.gen_range(0..4) {
        0 => ConformalGenerator::Translation(rand_oct(rng).scale(0.5)),
        1 => ConformalGenerator::Reflection(rand_unit(rng)),
        2 => ConformalGenerator::Inversion,
        _ => ConformalGenerator::Dilation(rng.gen_range(0.5..2.0)),
    }
}

fn rand_word(rng: &mut ChaCha8Rng, max_len: usize) -> ConformalWord {
    let len = rng.gen_range(1..=max_len);
    ConformalWord::new((0..len).map(|_| rand_generator(rng)).collect())
}

/// Even-parity word built from translations, reflection pairs, dilations
/// and inversion-translation-inversion triples, at most `max_len` letters.
fn rand_even_word(rng: &mut ChaCha8Rng, max_len: usize) -> ConformalWord {
    let mut w = ConformalWord::default();
    while w.generators.len() + 3 <= max_len.max(3) {
        match rng.gen_range(0..4) {
            0 => w.push(ConformalGenerator::Translation(rand_oct(rng).scale(0.5))),
            1 => {
                w.push(ConformalGenerator::Reflection(rand_unit(rng)));
                w.push(ConformalGenerator::Reflection(rand_unit(rng)));
            }
            2 => w.push(ConformalGenerator::Dilation(rng.gen_range(0.5..2.0))),
            _ => {
                w.push(ConformalGenerator::Inversion);
                w.push(ConformalGenerator::Translation(rand_oct(rng).scale(0.5)));
                w.push(ConformalGenerator::Inversion);
            }
        }
        if rng.gen_bool(0.3) {
            break;
        }
    }
    debug_assert_eq!(w.parity(), 0);
    w
}

/// Even word whose letters each fix `v = (1, 0, 1)`: reflections and inversions.
fn rand_stabilizer_word(rng: &mut ChaCha8Rng, max_pairs: usize) -> ConformalWord {
    let mut letters = Vec::new();
    for _ in 0..rng.gen_range(1..=max_pairs) {
        for _ in 0..2 {
            if rng.gen_bool(0.3) {
                letters.push(ConformalGenerator::Inversion);
            } else {
                letters.push(ConformalGenerator::Reflection(rand_unit(rng)));
            }
        }
    }
    ConformalWord::new(letters)
}

// ---- suites ----

fn octonion_suite(rng: &mut ChaCha8Rng, samples: usize) -> f64 {
    let mut max: f64 = 0.0;
    for _ in 0..samples {
        let x = rand_oct(rng);
        let y = rand_oct(rng);
        let z = rand_oct(rng);
        let scale = x.norm() * y.norm();
        max = max.max(((x * y).norm() - scale).abs() / scale.max(1e-300));
        let alt = (x * (x * y) - (x * x) * y).norm() / (x.norm_sq() * y.norm()).max(1e-300);
        max = max.max(alt);
        let mf = ((x * y) * (z * x) - x * ((y * z) * x)).norm()
            / (x.norm_sq() * y.norm() * z.norm()).max(1e-300);
        max = max.max(mf);
        let tr = (((x * y) * z).re() - (x * (y * z)).re()).abs()
            / (x.norm() * y.norm() * z.norm()).max(1e-300);
        max = max.max(tr);
    }
    max
}

fn clifford_suite(rng: &mut ChaCha8Rng, samples: usize) -> f64 {
    let mut max: f64 = 0.0;
    for _ in 0..samples {
        let x = rand_oct(rng);
        let y = rand_oct(rng);
        let phi = rand_oct(rng);
        let psi = rand_oct(rng);
        let n2 = x.norm_sq();
        let scale = (n2 * phi.norm()).max(1e-300);
        let up = cliff_minus_raw(&x, &cliff_plus_raw(&x, &phi)) + phi.scale(n2);
        max = max.max(up.norm() / scale);
        let down = cliff_plus_raw(&x, &cliff_minus_raw(&x, &phi)) + phi.scale(n2);
        max = max.max(down.norm() / scale);
        // polarized identity on S+
        let pol = cliff_minus_raw(&x, &cliff_plus_raw(&y, &phi))
            + cliff_minus_raw(&y, &cliff_plus_raw(&x, &phi))
            + phi.scale(2.0 * x.dot(&y));
        max = max.max(pol.norm() / (x.norm() * y.norm() * phi.norm()).max(1e-300));
        // adjointness, both signs
        let p = pair_raw(&phi, &psi);
        let s = (x.norm() * phi.norm() * psi.norm()).max(1e-300);
        max = max.max((cliff_minus_raw(&x, &psi).dot(&phi) - x.dot(&p)).abs() / s);
        max = max.max((cliff_plus_raw(&x, &phi).dot(&psi) + x.dot(&p)).abs() / s);
        // norm multiplicativity of all three products
        max = max.max((cliff_plus_raw(&x, &phi).norm() - x.norm() * phi.norm()).abs() / s);
        max = max.max((cliff_minus_raw(&x, &psi).norm() - x.norm() * psi.norm()).abs() / s);
        max = max.max((p.norm() - phi.norm() * psi.norm()).abs() / s);
        // triple identity under the conjugation identification of the vector slot
        let lhs = phi.dot(&cliff_minus_raw(&x, &psi));
        let rhs = (p.conj() * x).re();
        max = max.max((lhs - rhs).abs() / s);
    }
    max
}

fn vector_clifford_suite(rng: &mut ChaCha8Rng, samples: usize) -> f64 {
    let mut max: f64 = 0.0;
    for _ in 0..samples {
        let f = rand_lorentz(rng);
        let psi = rand_twistor(rng);
        let twice = clifford_action(&f, &clifford_action(&f, &psi));
        let want = psi.scale(-f.norm_l());
        let scale = (f.euclid_norm().powi(2) * psi.norm()).max(1e-300);
        max = max.max(twice.sub(&want).norm() / scale);
    }
    max
}

fn lorentz_invariance_suite(rng: &mut ChaCha8Rng, samples: usize) -> f64 {
    let mut max: f64 = 0.0;
    for _ in 0..samples {
        let w = rand_word(rng, 8);
        let f = rand_lorentz(rng);
        let g = rand_lorentz(rng);
        let l0 = lorentz_form(&f, &g);
        let l1 = lorentz_form(&vector_action_word(&w, &f), &vector_action_word(&w, &g));
        let scale = (f.euclid_norm() * g.euclid_norm()).max(1e-300);
        max = max.max((l1 - l0).abs() / scale);
    }
    max
}

fn projection_suite(rng: &mut ChaCha8Rng, samples: usize) -> f64 {
    let mut max: f64 = 0.0;
    for _ in 0..samples {
        let g = rand_generator(rng);
        let w = ConformalWord::new(vec![g]);
        let psi = rand_twistor(rng);
        let moved = act_word(&w, &psi);
        let lhs = match project(&moved) {
            Ok(p) => p,
            Err(_) => continue,
        };
        let ray = vector_action_word(&w, &project(&psi).unwrap().ray);
        let rhs = ray.scale(1.0 / (ray.a + ray.c));
        max = max.max(lhs.ray.sub(&rhs).euclid_norm());
        // linearity of the action
        let chi = rand_twistor(rng);
        let a = rng.gen_range(-1.0..1.0);
        let b = rng.gen_range(-1.0..1.0);
        let lin = act_word(&w, &psi.scale(a).add(&chi.scale(b)))
            .sub(&act_word(&w, &psi).scale(a))
            .sub(&act_word(&w, &chi).scale(b));
        max = max.max(lin.norm() / (psi.norm() + chi.norm()).max(1e-300));
        // octonion-division route to the zero agrees with the Q-ray route
        if let Ok(Some(c)) = zero_point(&psi) {
            let via_div = PointS8::from_point(&c);
            max = max.max(project(&psi).unwrap().ray_distance(&via_div));
        }
    }
    max
}

fn quartic_suite(rng: &mut ChaCha8Rng, samples: usize) -> f64 {
    let mut max: f64 = 0.0;
    for _ in 0..samples {
        let rho = rand_rho(rng);
        let f11 = f_ab(&rho.psi1, &rho.psi1);
        let f22 = f_ab(&rho.psi2, &rho.psi2);
        let f12 = f_ab(&rho.psi1, &rho.psi2);
        let scale = (rho.psi1.norm_sq() * rho.psi2.norm_sq()).max(1e-300);
        // L(f11,f22) = -2 L(f12,f21)
        let l1122 = lorentz_form(&f11, &f22);
        let l1221 = lorentz_form(&f12, &f12);
        max = max.max((l1122 + 2.0 * l1221).abs() / scale);
        // Q is null
        let q1 = q_map(&rho.psi1);
        max = max.max(q1.norm_l().abs() / q1.euclid_norm().powi(2).max(1e-300));
        // route consistency: L(Q1,Q2) = L(f11,f22) = -2 det
        let lq = lorentz_form(&q_map(&rho.psi1), &q_map(&rho.psi2));
        max = max.max((lq - l1122).abs() / scale);
        max = max.max((lq + 2.0 * det_rho(&rho)).abs() / scale);
        max = max.max((mu_null_pair(&rho) - lq).abs() / scale);
        // mu = -3 L(f12, f21)
        max = max.max((mu(&rho) + 3.0 * l1221).abs() / scale);
        // p_map: diagonal, polarization, and the dual-pairing route
        let pm = p_map(&rho.psi1, &rho.psi2);
        let pd = p_map_dual_route(&rho.psi1, &rho.psi2);
        max = max.max(pm.sub(&pd).euclid_norm() / scale.sqrt().max(1e-300));
        let sum = rho.psi1.add(&rho.psi2);
        let dif = rho.psi1.sub(&rho.psi2);
        let pol = q_map(&sum).sub(&q_map(&dif)).scale(0.25);
        max = max.max(pm.sub(&pol).euclid_norm() / scale.sqrt().max(1e-300));
    }
    max
}

fn invariance_suite(rng: &mut ChaCha8Rng, samples: usize) -> f64 {
    let mut max: f64 = 0.0;
    for _ in 0..samples {
        let rho = rand_rho(rng);
        let m0 = mu(&rho);
        let denom = m0.abs().max(1e-6 * rho.norm().powi(4));
        let w = rand_even_word(rng, 8);
        let moved = rho.act_word(&w).expect("even words keep twistors primal");
        max = max.max((mu(&moved) - m0).abs() / denom);
        // GL(2,R) covariance
        let p = [
            [rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)],
            [rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)],
        ];
        let detp = p[0][0] * p[1][1] - p[0][1] * p[1][0];
        let covariant = mu(&rho.gl2_action(&p));
        max = max.max((covariant - detp * detp * m0).abs() / denom.max(detp * detp * denom));
        // SL(2,R) right action leaves mu fixed
        if detp.abs() > 1e-3 {
            let s = detp.abs().sqrt();
            let sl = [[p[0][0] / s, p[0][1] / s], [p[1][0] / s, p[1][1] / s]];
            max = max.max((mu(&rho.gl2_action(&sl)) - m0).abs() / denom);
        }
        // homogeneity det(t rho) = t^4 det(rho)
        let t = rng.gen_range(0.5..2.0);
        let d0 = det_rho(&rho);
        max = max.max((det_rho(&rho.scale(t)) - t.powi(4) * d0).abs() / denom);
    }
    max
}

fn degeneracy_suite(rng: &mut ChaCha8Rng, samples: usize) -> f64 {
    let mut max: f64 = 0.0;
    for _ in 0..samples {
        // two twistors sharing the zero point c
        let c = rand_oct(rng);
        let phi1 = rand_oct(rng);
        let phi2 = rand_oct(rng);
        let rho = Rho::new(
            Twistor::primal(phi1, -(c * phi1)),
            Twistor::primal(phi2, -(c * phi2)),
        )
        .unwrap();
        max = max.max(det_rho(&rho).abs() / rho.norm().powi(4).max(1e-300));
    }
    max
}

fn signature_suite(rng: &mut ChaCha8Rng, orbit_points: usize) -> f64 {
    let rho0 = Rho::reference();
    let mut mismatches = 0usize;
    let mut check =
        |got: crate::error::Result<(usize, usize, usize)>, want: (usize, usize, usize)| match got {
            Ok(sig) if sig == want => {}
            _ => mismatches += 1,
        };
    check(restricted_signature(&rho0, &Subspace::Sl2O), (22, 9, 0));
    check(restricted_signature(&rho0, &Subspace::Su2O), (22, 0, 0));
    check(restricted_signature(&rho0, &Subspace::Su11O), (14, 8, 0));
    for _ in 0..10 {
        let h = rand_subalgebra(rng);
        check(restricted_signature(&rho0, &Subspace::Sl2H(h)), (10, 5, 0));
    }
    for _ in 0..orbit_points {
        let w = rand_even_word(rng, 6);
        let moved = rho0.act_word(&w).expect("even word");
        check(restricted_signature(&moved, &Subspace::Sl2O), (22, 9, 0));
    }
    mismatches as f64
}

fn hessian_closed_form_suite(rng: &mut ChaCha8Rng, samples: usize) -> f64 {
    let rho0 = Rho::reference();
    let mut max: f64 = 0.0;
    // entrywise: hess det (A, B) = 2[<a,a'> + <d,d'> + 2(a0 d0' + a0' d0) - Re(a b' ... )]
    let closed = |va: &[f64; 32], vb: &[f64; 32]| -> f64 {
        let a = Rho::from_vec32(va).entries();
        let b = Rho::from_vec32(vb).entries();
        let (aa, ba, ca, da) = (a[0][0], a[0][1], a[1][0], a[1][1]);
        let (ab, bb, cb, db) = (b[0][0], b[0][1], b[1][0], b[1][1]);
        2.0 * (aa.dot(&ab) + da.dot(&db) + 2.0 * (aa.re() * db.re() + ab.re() * da.re())
            - (ba * cb).re()
            - (bb * ca).re())
    };
    for i in 0..32 {
        let mut ei = [0.0; 32];
        ei[i] = 1.0;
        for j in i..32 {
            let mut ej = [0.0; 32];
            ej[j] = 1.0;
            let analytic = hess_det_apply(&rho0, &Rho::from_vec32(&ei), &Rho::from_vec32(&ej));
            max = max.max((analytic - closed(&ei, &ej)).abs());
        }
    }
    // log det restriction on trace-imaginary tangents equals
    // 2 (sum_i tr A_i^2 - tr A_0^2) under the 2x2-matrix identification
    let hess = hessian_log_det(&rho0).expect("rho0 is regular");
    for _ in 0..samples {
        let mut v = [0.0; 32];
        for x in &mut v {
            *x = rng.gen_range(-1.0..1.0);
        }
        v[24] = -v[0]; // Re d = -Re a
        let got = hess.apply(&v, &v);
        let e = Rho::from_vec32(&v).entries();
        let (a, b, c, d) = (e[0][0], e[0][1], e[1][0], e[1][1]);
        let tr = |k: usize| {
            let (ak, bk, ck, dk) = (a.0[k], b.0[k], c.0[k], d.0[k]);
            ak * ak + 2.0 * bk * ck + dk * dk
        };
        let want = 2.0 * ((1..8).map(tr).sum::<f64>() - tr(0));
        let scale = v.iter().map(|x| x * x).sum::<f64>().max(1.0);
        max = max.max((got - want).abs() / scale);
    }
    max
}

fn quaternion_oracle_suite(rng: &mut ChaCha8Rng, samples: usize) -> f64 {
    let mut max: f64 = 0.0;
    for _ in 0..samples {
        let m = rand_qmat(rng);
        let cd = cdet_oracle(&m);
        let qd = qdet(&m);
        let scale = cd.abs().max(1.0);
        max = max.max((qd - cd).abs() / scale);
        // non-negative up to rounding
        max = max.max((-cd).max(0.0) / scale);
        // real characteristic polynomial
        for c in char_poly_coeffs(&m) {
            max = max.max(c.im.abs() / (1.0 + c.re.abs()));
        }
        // mu(embed) = -3 qdet over a random subalgebra
        let h = rand_subalgebra(rng);
        let (m_val, q_val) = mu_vs_qdet(&m, &h);
        max = max.max((m_val + 3.0 * q_val).abs() / q_val.abs().max(1.0));
    }
    if qdet_log_hessian_signature() != (10, 5, 0) {
        max = max.max(1000.0);
    }
    max
}

fn derivatives_suite(rng: &mut ChaCha8Rng, samples: usize) -> f64 {
    let mut max: f64 = 0.0;
    let h = 1e-5;
    for _ in 0..samples {
        let rho = loop {
            let r = rand_rho(rng);
            if det_rho(&r).abs() > 1e-2 * r.norm().powi(4) {
                break r;
            }
        };
        let g = grad_det(&rho);
        let gnorm = g.iter().map(|v| v * v).sum::<f64>().sqrt().max(1.0);
        // three random directions for the gradient
        for _ in 0..3 {
            let dir = rand_rho(rng);
            let dv = dir.to_vec32();
            let analytic: f64 = g.iter().zip(dv.iter()).map(|(a, b)| a * b).sum();
            let fd =
                (det_rho(&rho.add(&dir.scale(h))) - det_rho(&rho.sub(&dir.scale(h)))) / (2.0 * h);
            max = max.max((analytic - fd).abs() / gnorm);
        }
        // three random direction pairs for the log-det Hessian
        let hess = hessian_log_det(&rho).expect("non-singular by construction");
        let ld = |r: &Rho| det_rho(r).abs().ln();
        for _ in 0..3 {
            let a = rand_rho(rng);
            let b = rand_rho(rng);
            let analytic = hess.apply(&a.to_vec32(), &b.to_vec32());
            let fd = (ld(&rho.add(&a.scale(h)).add(&b.scale(h)))
                - ld(&rho.add(&a.scale(h)).sub(&b.scale(h)))
                - ld(&rho.sub(&a.scale(h)).add(&b.scale(h)))
                + ld(&rho.sub(&a.scale(h)).sub(&b.scale(h))))
                / (4.0 * h * h);
            max = max.max((analytic - fd).abs() / analytic.abs().max(1.0));
        }
    }
    max
}

fn normalize_suite(rng: &mut ChaCha8Rng, samples: usize) -> f64 {
    let mut max: f64 = 0.0;
    let mut done = 0;
    while done < samples {
        let rho = rand_rho(rng);
        let d = det_rho(&rho);
        if d.abs() <= 1e-6 {
            continue;
        }
        done += 1;
        let nf = match normalize(&rho) {
            Ok(nf) => nf,
            Err(_) => {
                max = max.max(1000.0);
                continue;
            }
        };
        let scale = nf.rho_norm.norm().max(1e-300);
        max = max.max(nf.rho_norm.psi1.phi_plus.norm() / scale);
        max = max.max(nf.rho_norm.psi2.phi_minus.norm() / scale);
        max = max.max((nf.rho_norm.psi1.phi_minus.norm() - 1.0).abs());
        max = max.max((nf.rho_norm.psi2.phi_plus.norm() - 1.0).abs());
        max = max.max(nf.word.parity() as f64);
        // det covariance under the returned P
        let detp = nf.p[0][0] * nf.p[1][1] - nf.p[0][1] * nf.p[1][0];
        max = max.max((det_rho(&nf.rho_norm) - d * detp * detp).abs() / (d.abs() * detp * detp));
        // reproducible from word and P
        let rebuilt = rho
            .act_word(&nf.word)
            .expect("returned word is even")
            .gl2_action(&nf.p);
        max = max.max(rebuilt.sub(&nf.rho_norm).norm() / scale);
    }
    max
}

fn duality_calibration_suite() -> f64 {
    let v = LorentzVector::new(1.0, Octonion::ZERO, 1.0);
    duality_residual(&Rho::reference(), &v).expect("reference point is regular")
}

fn duality_suite(rng: &mut ChaCha8Rng, samples: usize) -> f64 {
    let mut max: f64 = 0.0;
    let v = LorentzVector::new(1.0, Octonion::ZERO, 1.0);
    let rho0 = Rho::reference();
    for _ in 0..samples {
        // stabilizer words of v keep the residual at zero
        let w = rand_stabilizer_word(rng, 3);
        let moved = rho0.act_word(&w).expect("stabilizer words are even");
        max = max.max(duality_residual(&moved, &v).expect("stays regular"));
        // retraction of a random unit-determinant point lands on the locus
        let rho = loop {
            let r = rand_rho(rng);
            if det_rho(&r) > 1e-2 * r.norm().powi(4) {
                break r;
            }
        };
        let unit_det = rho.scale(1.0 / det_rho(&rho).powf(0.25));
        let retracted = retract(&unit_det).expect("positive determinant");
        max = max.max(duality_residual(&retracted, &v).expect("on-locus point is regular"));
    }
    max
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seeds_are_stable_and_distinct() {
        let a = suite_seed(42, "octonion");
        let b = suite_seed(42, "clifford");
        assert_ne!(a, b);
        assert_eq!(a, suite_seed(42, "octonion"));
    }

    #[test]
    fn unknown_suite_is_none() {
        assert!(run_suite("no-such-suite", None, None, 1).is_none());
    }

    #[test]
    fn quick_smoke_two_suites() {
        let r = run_suite("octonion", Some(50), None, 7).unwrap();
        assert!(r.pass, "octonion residual {}", r.max_residual);
        let r = run_suite("vector-clifford", Some(50), None, 7).unwrap();
        assert!(r.pass, "vector-clifford residual {}", r.max_residual);
    }
}
