//! Published constants and worked values, each recomputed here from its
//! closed form. Where a published digit string disagrees with the closed
//! form, the closed form wins and the published figure is kept in a comment.

use std::f64::consts::{E, PI};

use superpose::bernoulli::{binom_gauss_ratio, eta, phi, phi_zeta_branches, PhiBranch};
use superpose::exponents::{g_fn, w_v_fn};
use superpose::params::{capacity, derive_code_spec};

#[test]
fn lattice_constant() {
    let closed = (9.0 / (8.0 * PI * E)).sqrt();
    assert!((eta() - closed).abs() < 1e-15);
    // published as 0.362984; the closed form gives 0.3629561
    assert!((eta() - 0.362_956_086_778_715).abs() < 1e-14);
}

#[test]
fn g_at_one_and_w15() {
    assert!((g_fn(1.0) - (5f64.sqrt() - 1.0)).abs() < 1e-15);
    let v: f64 = 15.0;
    let w = v / (4.0 * 256.0 * (1.0 + v.powi(3) / 64.0).sqrt());
    assert!((w_v_fn(v) - w).abs() < 1e-18);
    // published as 0.002007
    assert!((w - 0.001_998_3).abs() < 1e-7);
}

#[test]
fn capacity_at_fifteen_is_two_bits() {
    assert!((capacity(15.0).unwrap() - 2.0 * std::f64::consts::LN_2).abs() < 1e-15);
}

#[test]
fn ratio_at_small_l() {
    // l = 1: pmf 1/2 at k = 0, density sqrt(2/pi) e^{-1/2}
    let want = 0.5 / ((2.0 / PI).sqrt() * (-0.5f64).exp());
    assert!((binom_gauss_ratio(1).unwrap().max_ratio - want).abs() < 1e-14);
    // published as 1.03326
    assert!((want - 1.033_183).abs() < 1e-6);
    // l = 2: k = 0 or 2, pmf 1/4, density e^{-1} / sqrt(pi)
    let want = (0.25 * PI.sqrt() * E).ln();
    assert!((binom_gauss_ratio(2).unwrap().ln_max_ratio - want).abs() < 1e-14);
}

#[test]
fn phi_at_two_sits_on_the_inverse_l_branch() {
    // published as 0.186072, which is the log-ratio above rather than phi
    let p = phi(2).unwrap();
    assert_eq!(p.branch, PhiBranch::InverseL);
    assert!(p.phi >= 5.0 / 12.0 && p.phi < 0.4167);
    assert!(p.phi > binom_gauss_ratio(2).unwrap().ln_max_ratio);
}

#[test]
fn phi_at_one_thousand() {
    let p = phi(1000).unwrap();
    // published as 0.004685 = phi_zeta(1000, 0.265), not the minimum over zeta
    assert!((phi_zeta_branches(1000, 0.265).unwrap()[0] - 0.004_685).abs() < 1e-6);
    assert!((p.phi - 0.004_434).abs() < 1e-6);
    assert!(p.phi <= 0.005);
}

#[test]
fn small_code_dimensions() {
    let s = derive_code_spec(16, 1.0, 0.5 * capacity(15.0).unwrap()).unwrap();
    assert_eq!((s.section_size, s.columns, s.code_length), (16, 256, 64));
    assert!((s.message_bits - 64.0).abs() < 1e-12);
}
