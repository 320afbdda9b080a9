use num_complex::Complex64;
use ramsum::arith::{cohen_sum, SumParams};
use ramsum::bartz::*;
use ramsum::config::TruncationConfig;
use ramsum::zeta::ZeroTable;
use std::f64::consts::PI;

fn p(n: u64, beta: u32) -> SumParams {
    SumParams::new(n, beta).unwrap()
}

#[test]
fn decomposition_matches_zero_sum_for_beta_two() {
    let cfg = TruncationConfig::default();
    for z in [Complex64::new(1.0, 1.0), Complex64::new(2.0, 0.5)] {
        let e = decomposition(z, p(24, 2), ZeroTable::bundled(), &cfg).unwrap();
        assert!(e.decomposition_residual.norm() < 1e-3, "z = {z}: {e:?}");
        assert!(e.varpi3_tail_bound.is_finite());
    }
}

#[test]
fn functional_equation_holds_for_beta_two() {
    let cfg = TruncationConfig::default();
    let fe = functional_equation_residual(Complex64::new(1.0, 1.0), p(24, 2), ZeroTable::bundled(), &cfg).unwrap();
    assert!(fe.residual_derived.norm() < 1e-3, "{fe:?}");
}

#[test]
fn residue_for_beta_two() {
    let cfg = TruncationConfig::default();
    let params = p(24, 2);
    let q = 2;
    let expected = -(cohen_sum(q, params) as f64) / Complex64::new(0.0, 2.0 * PI);
    let got = residue_probe(q, params, 1e-3, &cfg).unwrap();
    assert!((got - expected).norm() < 1e-4 * expected.norm(), "{got} vs {expected}");
}

#[test]
fn residue_probe_rejects_bad_input() {
    let cfg = TruncationConfig::default();
    // c_4(1) = μ(4) = 0, so log 4 is not a pole.
    assert!(residue_probe(4, p(1, 1), 1e-3, &cfg).is_err());
    assert!(residue_probe(2, p(1, 1), 0.5, &cfg).is_err());
    assert!(residue_probe(2, p(1, 1), 1e-8, &cfg).is_err());
}
