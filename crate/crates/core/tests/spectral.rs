use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::time::Instant;

use qlattice::linalg::{c, cis, eye, max_abs, CMat, Pauli, C64, ONE, ZERO};
use qlattice::spectral::{
    apply_gauge, bcc_local_decomposition_check, bcc_local_decomposition_with, bcc_project,
    dispersion, find_doublers, gauge_transform_state, in_reduced_zone, naive_fermion_energy,
    quasi_energy, trace_map, GaugeField, SpectralError, DEFAULT_THRESHOLD,
};
use qlattice::walk::{
    build_preset, step, CoinedWalk, Lattice, Offset, Preset, PresetParams, WaveState,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn preset(p: Preset, m: f64, a: f64) -> CoinedWalk {
    build_preset(p, &PresetParams::new(m, a)).unwrap()
}

fn preset_on(p: Preset, m: f64, a: f64, extents: Vec<usize>) -> CoinedWalk {
    build_preset(p, &PresetParams::new(m, a).with_extents(extents)).unwrap()
}

fn near(p: &[f64], q: &[f64], tol: f64) -> bool {
    p.iter().zip(q).all(|(x, y)| {
        let d = (x - y).rem_euclid(2.0 * PI);
        d.min(2.0 * PI - d) < tol
    })
}

#[test]
fn dirac1d_quasi_energy_matches_arccos() {
    for &(m, a) in &[(0.0, 1.0), (0.5, 0.2), (1.3, 0.5)] {
        let w = preset(Preset::Dirac1d, m, a);
        for k in 0..40 {
            let p = -PI / a + (k as f64 + 0.5) * 2.0 * PI / (40.0 * a);
            let e = ((m * a).cos() * (p * a).cos()).acos() / a;
            let got = quasi_energy(&w, &[p]);
            assert!((got[0] + e).abs() < 1e-10 && (got[1] - e).abs() < 1e-10, "{got:?} {e}");
        }
    }
}

#[test]
fn massless_origin_has_zero_energy_and_naive_fermion_doubles() {
    let w = preset(Preset::Dirac1d, 0.0, 0.5);
    assert!(quasi_energy(&w, &[0.0]).iter().all(|e| e.abs() < 1e-15));
    let a = 0.5;
    assert!(naive_fermion_energy(0.0, PI / a, a) < 1e-12);
    assert!((naive_fermion_energy(0.3, 0.0, a) - 0.3).abs() < 1e-15);
    let data = dispersion(&preset(Preset::Dirac1d, 0.2, a));
    assert_eq!(data.momenta.len(), 64);
    assert!(data.bands.iter().all(|b| b.len() == 2 && b[0] <= b[1]));
}

#[test]
fn traces_match_closed_forms() {
    let a = 0.7;
    let grid: Vec<Vec<f64>> = (0..9)
        .flat_map(|i| (0..9).map(move |j| vec![-PI / a + 0.73 * i as f64, -PI / a + 0.61 * j as f64]))
        .collect();
    let d2 = trace_map(&preset(Preset::Dirac2d, 0.0, a), &grid);
    for (p, t) in grid.iter().zip(&d2) {
        let want = 2.0 * (p[0] * a).cos() * (p[1] * a).cos();
        assert!((t - c(want, 0.0)).norm() < 1e-12);
    }
    let g3: Vec<Vec<f64>> = grid
        .iter()
        .map(|p| vec![p[0], p[1], 0.37 * (p[0] - p[1])])
        .collect();
    for (pre, sign) in [(Preset::Weyl3dRight, -1.0), (Preset::Weyl3dLeft, 1.0)] {
        let tr = trace_map(&preset(pre, 0.0, a), &g3);
        for (p, t) in g3.iter().zip(&tr) {
            let (cx, cy, cz) = ((p[0] * a).cos(), (p[1] * a).cos(), (p[2] * a).cos());
            let (sx, sy, sz) = ((p[0] * a).sin(), (p[1] * a).sin(), (p[2] * a).sin());
            let want = 2.0 * (cx * cy * cz + sign * sx * sy * sz);
            assert!((t - c(want, 0.0)).norm() < 1e-12, "{pre} {p:?}");
        }
    }
    let d = preset(Preset::Dirac2d, 0.0, 1.0);
    assert!(trace_map(&d, &[vec![PI / 2.0, PI / 2.0]])[0].norm() < 1e-15);
    let w = preset(Preset::Weyl3dRight, 0.0, 1.0);
    let t = trace_map(&w, &[vec![-PI / 2.0, PI / 2.0, PI / 2.0], vec![0.0; 3]]);
    assert!((t[0] - c(2.0, 0.0)).norm() < 1e-15);
    assert!((t[1] - c(2.0, 0.0)).norm() < 1e-15);
}

fn count(w: &CoinedWalk, n: usize) -> usize {
    find_doublers(w, DEFAULT_THRESHOLD / w.spacing(), n).unwrap().count()
}

#[test]
fn doubler_counts() {
    let d1 = preset(Preset::Dirac1d, 0.0, 1.0);
    assert_eq!(count(&d1, 32), 1);
    assert_eq!(count(&d1, 64), 1);

    let d2 = preset(Preset::Dirac2d, 0.0, 1.0);
    let r = find_doublers(&d2, DEFAULT_THRESHOLD, 32).unwrap();
    assert_eq!(r.count(), 2);
    assert!(near(&r.momenta[0], &[0.0, 0.0], 1e-6));
    assert!(near(&r.momenta[1], &[PI, PI], 1e-6));
    assert_eq!(count(&d2, 64), 2);

    let w = preset(Preset::Weyl3dRight, 0.0, 1.0);
    let r = find_doublers(&w, DEFAULT_THRESHOLD, 16).unwrap();
    assert_eq!(r.count(), 8, "{:?}", r.momenta);
    assert!(r.min_quasi_energy.iter().all(|&e| e < 1e-6));
    let quarter = r
        .momenta
        .iter()
        .filter(|p| p.iter().all(|x| (x.abs() - PI / 2.0).abs() < 1e-6))
        .count();
    assert_eq!(quarter, 4);
    assert_eq!(count(&w, 32), 8);
    assert_eq!(count(&preset(Preset::Weyl3dLeft, 0.0, 1.0), 16), 8);
}

#[test]
fn doubler_counts_survive_threshold_halving_and_spacing() {
    let w = preset(Preset::Dirac2d, 0.0, 0.25);
    assert_eq!(find_doublers(&w, 0.5 * DEFAULT_THRESHOLD / 0.25, 32).unwrap().count(), 2);
    let m = preset(Preset::Dirac2d, 0.5, 1.0);
    assert_eq!(count(&m, 32), 0);
}

#[test]
fn doubler_search_rejects_coarse_grids() {
    let w = preset(Preset::Dirac1d, 0.0, 1.0);
    assert!(matches!(find_doublers(&w, 0.05, 8), Err(SpectralError::InvalidParameter(_))));
}

#[test]
fn bcc_projection_counts() {
    let start = Instant::now();
    let d2 = preset(Preset::Dirac2d, 0.0, 1.0);
    let r2 = bcc_project(&d2, DEFAULT_THRESHOLD, 32).unwrap();
    assert_eq!(r2.full_zone_count, 2);
    assert_eq!(r2.doublers.count(), 1);
    assert_eq!(bcc_project(&d2, DEFAULT_THRESHOLD, 64).unwrap().doublers.count(), 1);

    let w = preset(Preset::Weyl3dRight, 0.0, 1.0);
    let r3 = bcc_project(&w, DEFAULT_THRESHOLD, 16).unwrap();
    assert_eq!(r3.full_zone_count, 8);
    assert_eq!(r3.doublers.count(), 2, "{:?}", r3.doublers.momenta);
    assert_eq!(bcc_project(&w, DEFAULT_THRESHOLD, 32).unwrap().doublers.count(), 2);
    assert!(start.elapsed().as_secs() < 30);
}

#[test]
fn reduced_zone_membership() {
    assert!(in_reduced_zone(&[PI, 0.0], 1.0));
    assert!(in_reduced_zone(&[0.3, PI / 2.0], 1.0));
    assert!(!in_reduced_zone(&[0.3, -PI / 2.0], 1.0));
    assert!(!in_reduced_zone(&[0.3, 2.0], 1.0));
}

#[test]
fn restricted_symbol_matches_original() {
    let w = preset(Preset::Dirac2d, 0.0, 1.0);
    let r = bcc_project(&w, DEFAULT_THRESHOLD, 32).unwrap();
    for p in [[0.2, 0.4], [PI, -1.0], [-2.5, 1.5]] {
        assert!(max_abs(&(r.walk.symbol(&p) - w.symbol(&p))) < 1e-15);
    }
}

#[test]
fn alternating_order_sends_surviving_doubler_to_minus_one() {
    let w = preset(Preset::Weyl3dRight, 0.0, 1.0);
    let r = bcc_project(&w, DEFAULT_THRESHOLD, 16).unwrap();
    let survivor = r
        .doublers
        .momenta
        .iter()
        .find(|p| p.iter().any(|x| x.abs() > 0.1))
        .unwrap()
        .clone();
    assert!(survivor.iter().all(|x| (x.abs() - PI / 2.0).abs() < 1e-6));
    assert!(max_abs(&(w.symbol(&survivor) - eye(2))) < 1e-6);
    let back = w.reversed().unwrap();
    let second = back.symbol(&survivor);
    assert!(max_abs(&(&second + eye(2))) < 1e-6, "{second}");
    let origin = back.symbol(&[0.0; 3]);
    assert!(max_abs(&(origin - eye(2))) < 1e-15);
}

#[test]
fn bcc_rejects_parity_mixing_and_wrong_dims() {
    let lat = Lattice::new(vec![8, 8], 1.0).unwrap();
    let mut terms = BTreeMap::new();
    terms.insert(Offset(vec![1, 0]), eye(1));
    let w = CoinedWalk::from_terms(lat, 1, terms).unwrap();
    assert!(matches!(bcc_project(&w, 0.05, 16), Err(SpectralError::LeavesSublattice(_))));
    let d1 = preset(Preset::Dirac1d, 0.0, 1.0);
    assert!(matches!(bcc_project(&d1, 0.05, 16), Err(SpectralError::BccDims(1))));
}

#[test]
fn zero_field_reproduces_the_walk() {
    for (p, ext) in [(Preset::Dirac1d, vec![8]), (Preset::Dirac2d, vec![4, 4])] {
        let w = preset_on(p, 0.4, 0.5, ext);
        let g = apply_gauge(&w, &GaugeField::zero(w.lattice())).unwrap();
        assert!(max_abs(&(g.dense() - w.dense_matrix())) < 1e-14);
    }
}

#[test]
fn constant_field_shifts_momentum_by_chirality() {
    let a = 0.5;
    let w = preset_on(Preset::Dirac1d, 0.0, a, vec![8]);
    let big_a = 0.37;
    let g = apply_gauge(&w, &GaugeField::constant(w.lattice(), &[big_a])).unwrap();
    for k in 0..8 {
        let p = w.lattice().bin_momentum(0, k);
        for (coin, sign) in [(0usize, -1.0), (1, 1.0)] {
            let amps: Vec<C64> = (0..16)
                .map(|i| {
                    if i % 2 == coin {
                        cis(p * a * (i / 2) as f64)
                    } else {
                        ZERO
                    }
                })
                .collect();
            let s = WaveState::from_amplitudes(w.lattice(), 2, amps.clone()).unwrap();
            let out = g.apply(&s);
            let phase = cis(sign * (p + big_a / a) * a);
            for (x, y) in out.amplitudes().iter().zip(&amps) {
                assert!((x - y * phase).norm() < 1e-13);
            }
        }
    }
}

#[test]
fn gauge_transform_conjugates_the_walk() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let w = preset_on(Preset::Dirac2d, 0.3, 1.0, vec![4, 4]);
    let field = GaugeField::random(w.lattice(), &mut rng);
    let lambda: Vec<f64> = (0..16).map(|i| (i as f64 * 1.7).sin() * 3.0).collect();
    let u = apply_gauge(&w, &field).unwrap().dense();
    let u2 = apply_gauge(&w, &field.transformed(&lambda)).unwrap().dense();
    let gdiag: Vec<C64> = (0..32).map(|i| cis(-lambda[i / 2])).collect();
    let g = CMat::from_diagonal(&nalgebra::DVector::from_vec(gdiag));
    assert!(max_abs(&(&g * &u * g.adjoint() - &u2)) < 1e-13);
    assert!(max_abs(&(u.adjoint() * &u - eye(32))) < 1e-13);
}

#[test]
fn observables_are_gauge_invariant_over_twenty_steps() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let w = preset_on(Preset::Dirac2d, 0.6, 1.0, vec![6, 6]);
    let field = GaugeField::random(w.lattice(), &mut rng);
    let lambda: Vec<f64> = (0..36).map(|i| ((i * i) as f64 * 0.31).cos() * 5.0).collect();
    let g1 = apply_gauge(&w, &field).unwrap();
    let g2 = apply_gauge(&w, &field.transformed(&lambda)).unwrap();
    let mut s1 = WaveState::localized(w.lattice(), &[2, 3], &[ONE, c(0.0, 1.0)]).unwrap();
    let mut s2 = gauge_transform_state(&s1, w.lattice(), &lambda);
    for _ in 0..20 {
        s1 = g1.apply(&s1);
        s2 = g2.apply(&s2);
        let p1 = s1.position_distribution();
        let p2 = s2.position_distribution();
        let dev = p1.iter().zip(&p2).fold(0.0f64, |m, (x, y)| m.max((x - y).abs()));
        assert!(dev <= 1e-12);
    }
    assert!((s1.norm() - 1.0).abs() < 1e-12);
}

#[test]
fn gauge_rejects_diagonal_moves_and_mismatched_lattices() {
    let lat = Lattice::new(vec![4, 4], 1.0).unwrap();
    let mut terms = BTreeMap::new();
    terms.insert(Offset(vec![1, 1]), eye(1));
    let w = CoinedWalk::from_terms(lat.clone(), 1, terms).unwrap();
    assert!(matches!(
        apply_gauge(&w, &GaugeField::zero(&lat)),
        Err(SpectralError::NotSingleAxis(_))
    ));
    let d = preset_on(Preset::Dirac2d, 0.0, 1.0, vec![6, 6]);
    assert!(matches!(
        apply_gauge(&d, &GaugeField::zero(&lat)),
        Err(SpectralError::LatticeMismatch { .. })
    ));
}

#[test]
fn term_walks_are_gauged_directly() {
    let w = preset_on(Preset::Hadamard1d, 0.0, 1.0, vec![8]);
    let flat = CoinedWalk::from_terms(w.lattice().clone(), 2, w.terms().clone()).unwrap();
    let f = GaugeField::constant(w.lattice(), &[0.2]);
    let a = apply_gauge(&w, &f).unwrap().dense();
    let b = apply_gauge(&flat, &f).unwrap().dense();
    assert!(max_abs(&(a - b)) < 1e-14);
    let s = WaveState::localized(w.lattice(), &[0], &[ONE, ZERO]).unwrap();
    let z = apply_gauge(&flat, &GaugeField::zero(w.lattice())).unwrap();
    assert_eq!(z.apply(&s), step(&w, &s).unwrap());
}

#[test]
fn sublattice_walk_is_locally_implementable() {
    for ext in [2, 4, 6] {
        let r = bcc_local_decomposition_check(2, ext).unwrap();
        assert!(r.passes, "2D {ext}: {}", r.residual);
    }
    assert_eq!(bcc_local_decomposition_check(2, 4).unwrap().dimension, 16);
    for ext in [2, 4] {
        let r = bcc_local_decomposition_check(3, ext).unwrap();
        assert!(r.passes, "3D {ext}: {}", r.residual);
    }
    let alt = bcc_local_decomposition_with(&[Pauli::Z, Pauli::Y], 2, 4, 0.0).unwrap();
    assert!(alt.passes);
}

#[test]
fn local_decomposition_controls() {
    let id = bcc_local_decomposition_with(&[], 2, 4, 0.0).unwrap();
    assert!(id.passes && id.residual == 0.0);
    let bad = bcc_local_decomposition_with(&[Pauli::X, Pauli::Z], 2, 4, 0.3).unwrap();
    assert!(!bad.passes && bad.residual > 0.1);
    assert!(bcc_local_decomposition_check(2, 5).is_err());
    assert!(bcc_local_decomposition_check(2, 8).is_err());
    assert!(matches!(bcc_local_decomposition_check(1, 4), Err(SpectralError::BccDims(1))));
}
