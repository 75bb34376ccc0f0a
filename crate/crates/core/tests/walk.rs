use std::collections::BTreeMap;
use std::f64::consts::{FRAC_1_SQRT_2, PI};

use proptest::prelude::*;
use qlattice::linalg::{
    c, cis, eigenphases, eye, kron, max_abs, random_unitary, wrap_phase, CMat, Pauli, ONE, ZERO,
};
use qlattice::walk::{
    build_preset, decompose_1d, evolve, mass_decompose, step, step_momentum, verify_unitarity,
    CoinedWalk, Factor, Lattice, Offset, Preset, PresetParams, WaveState,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn preset(p: Preset, m: f64, a: f64) -> CoinedWalk {
    build_preset(p, &PresetParams::new(m, a)).unwrap()
}

fn preset_on(p: Preset, m: f64, a: f64, extents: Vec<usize>) -> CoinedWalk {
    build_preset(p, &PresetParams::new(m, a).with_extents(extents)).unwrap()
}

/// Dense operator of a factor list built directly from shift permutations and coins.
fn dense_from_factors(lattice: &Lattice, d: usize, factors: &[Factor]) -> CMat {
    let n = lattice.sites();
    let mut u = eye(n * d);
    for f in factors {
        let m = match f {
            Factor::Coin(cm) => kron(&eye(n), cm),
            Factor::Shift(br) => {
                let mut m = CMat::zeros(n * d, n * d);
                for (v, proj) in br {
                    let mut shift = CMat::zeros(n, n);
                    for s in 0..n {
                        shift[(lattice.translate(s, &v.0), s)] = ONE;
                    }
                    m += kron(&shift, proj);
                }
                m
            }
        };
        u = m * u;
    }
    u
}

fn random_state(lattice: &Lattice, d: usize, seed: u64) -> WaveState {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let v = qlattice::linalg::random_state(&mut rng, lattice.sites() * d);
    WaveState::from_amplitudes(lattice, d, v.as_slice().to_vec()).unwrap()
}

#[test]
fn every_preset_is_unitary() {
    for p in Preset::ALL {
        let m = if p.has_mass() { 0.7 } else { 0.0 };
        let w = preset(p, m, 0.3);
        let r = verify_unitarity(&w, 1e-12);
        assert!(r.passes(), "{p}: {}", r.max_deviation());
        let u = w.symbol(&vec![0.37; p.dims()]);
        assert!(qlattice::linalg::unitarity_defect(&u) < 1e-12, "{p}");
    }
}

#[test]
fn unknown_preset_and_bad_extents_are_rejected() {
    assert!("nope".parse::<Preset>().is_err());
    assert!(build_preset(Preset::Dirac1d, &PresetParams::new(0.0, 1.0).with_extents(vec![7])).is_err());
    assert!(
        build_preset(Preset::Dirac2d, &PresetParams::new(0.0, 1.0).with_extents(vec![8])).is_err()
    );
    assert!(build_preset(Preset::Weyl3dRight, &PresetParams::new(0.5, 1.0)).is_err());
}

#[test]
fn dirac1d_terms_are_coin_times_projector() {
    let (m, a) = (0.4, 0.2);
    let w = preset(Preset::Dirac1d, m, a);
    let coin = eye(2) * c((m * a).cos(), 0.0) + Pauli::X.matrix() * c(0.0, -(m * a).sin());
    let pr = CMat::from_row_slice(2, 2, &[ONE, ZERO, ZERO, ZERO]);
    let pl = CMat::from_row_slice(2, 2, &[ZERO, ZERO, ZERO, ONE]);
    assert!(max_abs(&(&w.terms()[&Offset(vec![1])] - &coin * pr)) < 1e-15);
    assert!(max_abs(&(&w.terms()[&Offset(vec![-1])] - &coin * pl)) < 1e-15);
    assert_eq!(w.terms().len(), 2);
}

#[test]
fn dirac1d_symbol_closed_forms() {
    let a = 0.1;
    let w0 = preset(Preset::Dirac1d, 0.0, a);
    assert!(max_abs(&(w0.symbol(&[0.0]) - eye(2))) < 1e-15);
    for &p in &[0.3, -1.2, 2.5] {
        let ph = eigenphases(&w0.symbol(&[p]));
        let x = (p * a).abs();
        assert!((ph[0] + x).abs() < 1e-14 && (ph[1] - x).abs() < 1e-14);
    }
    for &(m, p) in &[(0.5, 1.0), (3.0, -7.0), (1.0, 20.0)] {
        let w = preset(Preset::Dirac1d, m, a);
        let tr = w.symbol(&[p]).trace();
        assert!((tr.re - 2.0 * (m * a).cos() * (p * a).cos()).abs() < 1e-14);
        assert!(tr.im.abs() < 1e-14);
    }
}

#[test]
fn dirac1d_eigenphases_match_arccos_formula() {
    for &(m, a) in &[(0.0, 0.1), (0.5, 0.1), (1.0, 0.05)] {
        let w = preset_on(Preset::Dirac1d, m, a, vec![256]);
        for p in w.lattice().axis_momenta(0) {
            let ph = eigenphases(&w.symbol(&[p]));
            let e = ((m * a).cos() * (p * a).cos()).acos();
            let mut expect = [wrap_phase(-e), wrap_phase(e)];
            expect.sort_by(f64::total_cmp);
            assert!((ph[0] - expect[0]).abs() < 1e-12 && (ph[1] - expect[1]).abs() < 1e-12);
        }
    }
}

#[test]
fn weyl_symbol_is_product_of_pauli_exponentials() {
    let a = 0.5;
    let w = preset(Preset::Weyl3dRight, 0.0, a);
    let p = [0.3, -1.1, 2.0];
    let e = |s: Pauli, x: f64| eye(2) * c((x * a).cos(), 0.0) + s.matrix() * c(0.0, -(x * a).sin());
    let expect = e(Pauli::X, p[0]) * e(Pauli::Y, p[1]) * e(Pauli::Z, p[2]);
    assert!(max_abs(&(w.symbol(&p) - expect)) < 1e-14);
}

#[test]
fn dirac3d_is_mass_coin_times_direct_sum() {
    let (m, a) = (0.8, 0.3);
    let w = preset(Preset::Dirac3d, m, a);
    let r = preset(Preset::Weyl3dRight, 0.0, a);
    let l = preset(Preset::Weyl3dLeft, 0.0, a);
    let p = [0.7, 0.2, -0.9];
    let mut sum = CMat::zeros(4, 4);
    sum.view_mut((0, 0), (2, 2)).copy_from(&r.symbol(&p));
    sum.view_mut((2, 2), (2, 2)).copy_from(&l.symbol(&p));
    let beta = kron(&Pauli::X.matrix(), &eye(2));
    let coin = eye(4) * c((m * a).cos(), 0.0) + beta * c(0.0, -(m * a).sin());
    assert!(max_abs(&(w.symbol(&p) - coin * sum)) < 1e-14);
}

#[test]
fn dirac2d_trace_at_corner() {
    let a = 0.25;
    let w = preset(Preset::Dirac2d, 0.0, a);
    let u = w.symbol(&[PI / a, PI / a]);
    assert!((u.trace() - c(2.0, 0.0)).norm() < 1e-14);
    assert!(max_abs(&(u - eye(2))) < 1e-14);
}

#[test]
fn hadamard_single_step_splits_evenly() {
    let lat = Lattice::new(vec![16], 1.0).unwrap();
    let w = preset_on(Preset::Hadamard1d, 0.0, 1.0, vec![16]);
    let s0 = WaveState::localized(&lat, &[0], &[ONE, ZERO]).unwrap();
    let s1 = step(&w, &s0).unwrap();
    let dense = dense_from_factors(&lat, 2, w.factors().unwrap()) * s0.to_vector();
    assert!((s1.to_vector() - &dense).norm() < 1e-14);
    let p = s1.position_distribution();
    assert!((p[1] - 0.5).abs() < 1e-15 && (p[15] - 0.5).abs() < 1e-15);
    assert!((s1.amplitude(1, 0) - c(FRAC_1_SQRT_2, 0.0)).norm() < 1e-15);
    assert!((s1.amplitude(15, 1) - c(FRAC_1_SQRT_2, 0.0)).norm() < 1e-15);
}

#[test]
fn massless_dirac_moves_right_movers_rigidly() {
    let lat = Lattice::new(vec![32], 1.0).unwrap();
    let w = preset_on(Preset::Dirac1d, 0.0, 1.0, vec![32]);
    let s0 = WaveState::localized(&lat, &[0], &[ONE, ZERO]).unwrap();
    let ev = evolve(&w, &s0, 5, false).unwrap();
    assert!((ev.state.position_distribution()[5] - 1.0).abs() < 1e-15);

    let s0 = WaveState::localized(&lat, &[0], &[c(0.6, 0.0), c(0.0, 0.8)]).unwrap();
    let ev = evolve(&w, &s0, 7, true).unwrap();
    let last = ev.distributions.unwrap().pop().unwrap();
    assert!((last[7] - 0.36).abs() < 1e-14 && (last[32 - 7] - 0.64).abs() < 1e-14);

    let same = evolve(&w, &s0, 0, false).unwrap().state;
    assert_eq!(same, s0);
}

#[test]
fn momentum_eigenstate_picks_up_shift_phase() {
    let (n, a) = (16usize, 0.5);
    let lat = Lattice::new(vec![n], a).unwrap();
    let w = preset_on(Preset::Dirac1d, 0.0, a, vec![n]);
    let p = lat.axis_momenta(0)[11];
    let amps: Vec<_> = (0..n)
        .flat_map(|x| [cis(p * x as f64 * a) / (n as f64).sqrt(), ZERO])
        .collect();
    let s0 = WaveState::from_amplitudes(&lat, 2, amps).unwrap();
    let s1 = step(&w, &s0).unwrap();
    let expect = s0.to_vector() * cis(-p * a);
    assert!((s1.to_vector() - expect).norm() < 1e-14);
}

#[test]
fn hadamard_hundred_steps_match_dense_oracle() {
    let lat = Lattice::new(vec![200], 1.0).unwrap();
    let w = preset_on(Preset::Hadamard1d, 0.0, 1.0, vec![200]);
    let s0 = WaveState::localized(&lat, &[100], &[c(FRAC_1_SQRT_2, 0.0), c(0.0, FRAC_1_SQRT_2)])
        .unwrap();
    let ev = evolve(&w, &s0, 100, true).unwrap();
    let u = dense_from_factors(&lat, 2, w.factors().unwrap());
    let mut v = s0.to_vector();
    let rows = ev.distributions.unwrap();
    for row in rows.iter().skip(1) {
        v = &u * v;
        for (site, &pr) in row.iter().enumerate() {
            let d = v[2 * site].norm_sqr() + v[2 * site + 1].norm_sqr();
            assert!((d - pr).abs() < 1e-9);
        }
    }
    for row in &rows {
        assert!((row.iter().sum::<f64>() - 1.0).abs() < 1e-10);
    }
}

#[test]
fn position_and_momentum_steps_agree() {
    for p in Preset::ALL {
        let ext: Vec<usize> = vec![if p.dims() == 3 { 4 } else { 8 }; p.dims()];
        let m = if p.has_mass() { 0.9 } else { 0.0 };
        let w = preset_on(p, m, 0.7, ext);
        let s = random_state(w.lattice(), w.coin_dim(), 3);
        let a = step(&w, &s).unwrap();
        let b = step_momentum(&w, &s).unwrap();
        assert!((a.to_vector() - b.to_vector()).norm() < 1e-10, "{p}");
        let dense = dense_from_factors(w.lattice(), w.coin_dim(), w.factors().unwrap());
        assert!((a.to_vector() - dense * s.to_vector()).norm() < 1e-10, "{p}");
    }
}

#[test]
fn step_commutes_with_translations() {
    let w = preset_on(Preset::Dirac2d, 0.6, 0.5, vec![6, 8]);
    let lat = w.lattice().clone();
    let s = random_state(&lat, 2, 11);
    let shift = |st: &WaveState| {
        let mut amps = vec![ZERO; st.amplitudes().len()];
        for site in 0..lat.sites() {
            let t = lat.translate(site, &[1, -3]);
            for k in 0..2 {
                amps[t * 2 + k] = st.amplitude(site, k);
            }
        }
        WaveState::from_amplitudes(&lat, 2, amps).unwrap()
    };
    let lhs = step(&w, &shift(&s)).unwrap();
    let rhs = shift(&step(&w, &s).unwrap());
    assert_eq!(lhs, rhs);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]
    #[test]
    fn norm_is_preserved(seed in 0u64..1000, which in 0usize..9, m in 0.0f64..2.0) {
        let p = Preset::ALL[which];
        let ext: Vec<usize> = vec![if p.dims() == 3 { 4 } else { 10 }; p.dims()];
        let m = if p.has_mass() { m } else { 0.0 };
        let w = preset_on(p, m, 0.4, ext);
        let s = random_state(w.lattice(), w.coin_dim(), seed);
        let out = evolve(&w, &s, 3, false).unwrap().state;
        prop_assert!((out.norm() - 1.0).abs() < 1e-12);
    }
}

#[test]
fn unitarity_report_flags_averaging_walk() {
    let lat = Lattice::new(vec![8], 1.0).unwrap();
    let mut terms = BTreeMap::new();
    terms.insert(Offset(vec![1]), eye(2) * c(0.5, 0.0));
    terms.insert(Offset(vec![-1]), eye(2) * c(0.5, 0.0));
    let w = CoinedWalk::from_terms(lat, 2, terms).unwrap();
    let r = verify_unitarity(&w, 1e-10);
    assert!((r.max_cross() - 0.25).abs() < 1e-15);
    assert!((r.identity_deviation - 0.5).abs() < 1e-15);
    assert!(!r.passes());
    assert!(mass_decompose(&w, 1e-10).is_err());

    assert!(verify_unitarity(&preset(Preset::Dirac1d, 0.3, 0.2), 0.0).max_deviation() < 1e-14);
    assert!(verify_unitarity(&preset(Preset::Weyl3dRight, 0.0, 0.2), 1e-14).passes());
}

#[test]
fn mass_decomposition_extracts_mass_coin() {
    let md = mass_decompose(&preset(Preset::Dirac1d, 0.0, 0.2), 1e-12).unwrap();
    assert!(md.massless && max_abs(&(md.w - eye(2))) < 1e-15);

    let (m, a) = (0.6, 0.2);
    let md = mass_decompose(&preset(Preset::Dirac1d, m, a), 1e-12).unwrap();
    let expect = eye(2) * c((m * a).cos(), 0.0) + Pauli::X.matrix() * c(0.0, -(m * a).sin());
    assert!(!md.massless && max_abs(&(&md.w - expect)) < 1e-15);
    let mut sum = CMat::zeros(2, 2);
    for a in md.primed.values() {
        sum += a;
    }
    assert!(max_abs(&(sum - eye(2))) < 1e-10);

    let md = mass_decompose(&preset(Preset::Weyl3dRight, 0.0, 0.2), 1e-12).unwrap();
    assert!(md.massless);
}

fn assert_roundtrip(w: &CoinedWalk) {
    let dec = decompose_1d(w).unwrap();
    for p in w.lattice().axis_momenta(0) {
        assert!(max_abs(&(dec.symbol(p) - w.symbol(&[p]))) < 1e-10);
    }
}

#[test]
fn decompose_dirac1d() {
    let (m, a) = (0.5, 0.1);
    let w = preset(Preset::Dirac1d, m, a);
    let dec = decompose_1d(&w).unwrap();
    assert_eq!(dec.conditional_count(), 1);
    let expect = eye(2) * c((m * a).cos(), 0.0) + Pauli::X.matrix() * c(0.0, -(m * a).sin());
    assert!(max_abs(&(&dec.coin - expect)) < 1e-12);
    assert_roundtrip(&w);
}

#[test]
fn decompose_pure_shift() {
    let lat = Lattice::new(vec![16], 1.0).unwrap();
    let mut terms = BTreeMap::new();
    terms.insert(Offset(vec![1]), eye(2));
    let w = CoinedWalk::from_terms(lat, 2, terms).unwrap();
    let dec = decompose_1d(&w).unwrap();
    assert_eq!(dec.factors.len(), 1);
    assert_eq!(dec.factors[0].1, 1);
    assert!(max_abs(&(&dec.factors[0].0 - eye(2))) < 1e-15);
    assert!(max_abs(&(&dec.coin - eye(2))) < 1e-15);
}

#[test]
fn decompose_random_products() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for d in [2usize, 3] {
        for _ in 0..5 {
            let lat = Lattice::new(vec![64], 0.3).unwrap();
            let mut factors = Vec::new();
            for _ in 0..3 {
                factors.push(Factor::Coin(random_unitary(&mut rng, d)));
                let v = random_unitary(&mut rng, d);
                let col = v.column(0).into_owned();
                let proj = &col * col.adjoint();
                factors.push(Factor::Shift(vec![
                    (Offset(vec![1]), proj.clone()),
                    (Offset(vec![-1]), eye(d) - proj),
                ]));
            }
            factors.push(Factor::Coin(random_unitary(&mut rng, d)));
            let w = CoinedWalk::from_factors(lat, d, factors).unwrap();
            assert_roundtrip(&w);
        }
    }
}

#[test]
fn decompose_rejects_non_unitary_and_2d() {
    let lat = Lattice::new(vec![8], 1.0).unwrap();
    let mut terms = BTreeMap::new();
    terms.insert(Offset(vec![1]), eye(2) * c(0.5, 0.0));
    let w = CoinedWalk::from_terms(lat, 2, terms).unwrap();
    assert!(decompose_1d(&w).is_err());
    assert!(decompose_1d(&preset(Preset::Dirac2d, 0.0, 1.0)).is_err());
}
