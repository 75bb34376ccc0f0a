use std::collections::BTreeSet;
use std::f64::consts::PI;

use qlattice::fermions::{
    discrete_vacuum, doubled_local_decomposition, encode_qubit_ops, fermionic_swap, fock_matrix,
    invariant_sector_spectrum, invariant_state, invariant_state_circuit, jordan_wigner,
    jw_creation, majorana_localize, second_quantize, simulate, vacuum_convergence,
    vacuum_overlap, vacuum_state, FermionError, FermionOp, FermionPolynomial, MajoranaLayout,
    ModeOrdering, PauliSum, DENSE_MODE_CAP,
};
use qlattice::linalg::{c, eye, hermitian_eigen, max_abs, random_unitary, CMat, C64, I, ONE};
use qlattice::walk::{build_preset, Preset, PresetParams};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn cre(m: usize) -> FermionPolynomial {
    FermionPolynomial::create(m)
}

fn ann(m: usize) -> FermionPolynomial {
    FermionPolynomial::annihilate(m)
}

fn random_ordering(rng: &mut ChaCha8Rng, n: usize) -> ModeOrdering {
    let mut p: Vec<usize> = (0..n).collect();
    p.shuffle(rng);
    ModeOrdering::from_positions(p).unwrap()
}

#[test]
fn normal_ordering_rules() {
    assert_eq!(
        ann(2) * cre(2),
        FermionPolynomial::identity() - FermionPolynomial::number(2)
    );
    assert!((cre(1) * cre(1)).is_empty());
    assert_eq!(cre(3) * cre(1), -(cre(1) * cre(3)));
    for i in 0..4 {
        for j in 0..4 {
            let want = if i == j { FermionPolynomial::identity() } else { FermionPolynomial::zero() };
            assert_eq!(ann(i).anticommutator(&cre(j)), want);
            assert!(ann(i).anticommutator(&ann(j)).is_empty());
        }
    }
    let h = FermionPolynomial::hop(0, 1) + FermionPolynomial::hop(1, 0);
    assert!(h.is_hermitian(0.0) && h.is_even());
    assert!(!cre(0).is_even());
}

#[test]
fn creation_on_first_qubit_has_no_string() {
    let img = jw_creation(0, &ModeOrdering::linear(4)).unwrap();
    assert_eq!(img, PauliSum::sigma_minus(0));
    let img3 = jw_creation(3, &ModeOrdering::linear(4)).unwrap();
    assert_eq!(img3.support(), BTreeSet::from([0, 1, 2, 3]));
}

#[test]
fn neighbour_hop_strings_cancel() {
    let ord = ModeOrdering::linear(8);
    for n in 1..8 {
        let img = jordan_wigner(&FermionPolynomial::hop(n, n - 1), &ord).unwrap();
        assert_eq!(img.support(), BTreeSet::from([n - 1, n]));
    }
}

type Sparse = Vec<(usize, usize, C64)>;

fn sparse(m: &CMat) -> Sparse {
    let mut out = Vec::new();
    for j in 0..m.ncols() {
        for i in 0..m.nrows() {
            if m[(i, j)] != C64::new(0.0, 0.0) {
                out.push((i, j, m[(i, j)]));
            }
        }
    }
    out
}

/// Exact dense `xy + yx` from the nonzero entries of `x` and `y`.
fn anticommutator(x: &Sparse, y: &Sparse, dim: usize) -> CMat {
    let mut out = CMat::zeros(dim, dim);
    for (p, q) in [(x, y), (y, x)] {
        for &(i, k, a) in p {
            for &(k2, j, b) in q {
                if k == k2 {
                    out[(i, j)] += a * b;
                }
            }
        }
    }
    out
}

#[test]
fn images_satisfy_anticommutation_relations() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let n = 8;
    let dim = 1 << n;
    for ord in [ModeOrdering::linear(n), random_ordering(&mut rng, n)] {
        let a: Vec<CMat> = (0..n)
            .map(|m| jordan_wigner(&ann(m), &ord).unwrap().dense(n))
            .collect();
        assert!(a.iter().all(|m| sparse(m).len() == dim / 2));
        let sa: Vec<Sparse> = a.iter().map(sparse).collect();
        let sd: Vec<Sparse> = a.iter().map(|m| sparse(&m.adjoint())).collect();
        for i in 0..n {
            for j in 0..n {
                let want = if i == j { eye(dim) } else { CMat::zeros(dim, dim) };
                assert_eq!(anticommutator(&sa[i], &sd[j], dim), want, "{{a_{i}, a†_{j}}}");
                assert_eq!(anticommutator(&sa[i], &sa[j], dim), CMat::zeros(dim, dim));
            }
        }
    }
}

fn random_poly(rng: &mut ChaCha8Rng, n: usize, terms: usize) -> FermionPolynomial {
    let mut p = FermionPolynomial::zero();
    for _ in 0..terms {
        let len = rng.random_range(0..4);
        let ops: Vec<FermionOp> = (0..len)
            .map(|_| FermionOp {
                mode: rng.random_range(0..n),
                dagger: rng.random(),
            })
            .collect();
        p = p + FermionPolynomial::monomial(c(rng.random(), rng.random()), &ops);
    }
    p
}

#[test]
fn jordan_wigner_is_a_homomorphism() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let n = 5;
    for _ in 0..10 {
        let ord = random_ordering(&mut rng, n);
        let p = random_poly(&mut rng, n, 4);
        let q = random_poly(&mut rng, n, 4);
        let jp = jordan_wigner(&p, &ord).unwrap().dense(n);
        let jq = jordan_wigner(&q, &ord).unwrap().dense(n);
        let jpq = jordan_wigner(&(p.clone() * q.clone()), &ord).unwrap().dense(n);
        assert!(max_abs(&(jp.clone() * jq - jpq)) < 1e-12);
        let herm = p.clone() + p.adjoint();
        let jh = jordan_wigner(&herm, &ord).unwrap().dense(n);
        assert!(max_abs(&(jh.adjoint() - &jh)) < 1e-12);
        assert!(max_abs(&(jordan_wigner(&p.adjoint(), &ord).unwrap().dense(n) - jp.adjoint())) < 1e-12);
    }
}

#[test]
fn unknown_modes_and_bad_orderings_are_rejected() {
    assert_eq!(
        jordan_wigner(&cre(5), &ModeOrdering::linear(3)),
        Err(FermionError::UnknownMode(5))
    );
    assert_eq!(ModeOrdering::from_positions(vec![0, 0]), Err(FermionError::NotBijective));
    assert!(fock_matrix(&cre(0), DENSE_MODE_CAP + 1).is_err());
}

#[test]
fn even_line_hamiltonians_map_to_local_pauli_sums() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    for _ in 0..50 {
        let sites = rng.random_range(3..9);
        let per_site = rng.random_range(1..3);
        let n = sites * per_site;
        let site_of: Vec<usize> = (0..n).map(|m| m / per_site).collect();
        let ord = ModeOrdering::site_consecutive(&site_of).unwrap();
        for _ in 0..6 {
            let s0 = rng.random_range(0..sites - 1);
            let s1 = (s0 + rng.random_range(0..2)).min(sites - 1);
            let pick = |rng: &mut ChaCha8Rng, s: usize| s * per_site + rng.random_range(0..per_site);
            let mut ops = vec![
                FermionOp::create(pick(&mut rng, s0)),
                FermionOp::annihilate(pick(&mut rng, s1)),
            ];
            if rng.random_bool(0.4) {
                ops.push(FermionOp::create(pick(&mut rng, s1)));
                ops.push(FermionOp::annihilate(pick(&mut rng, s0)));
            }
            let t = FermionPolynomial::monomial(c(rng.random(), rng.random()), &ops);
            let term = t.clone() + t.adjoint();
            let img = jordan_wigner(&term, &ord).unwrap();
            let lo = s0 * per_site;
            let hi = (s1 + 1) * per_site;
            assert!(img.support().iter().all(|&q| q >= lo && q < hi), "{term}");
        }
    }
}

fn occupation_index(occupied: &[usize]) -> usize {
    occupied.iter().map(|&q| 1 << q).sum()
}

#[test]
fn swap_exchanges_modes() {
    let s = fock_matrix(&fermionic_swap(0, 1).unwrap(), 2).unwrap();
    let a = fock_matrix(&ann(0), 2).unwrap();
    let b = fock_matrix(&ann(1), 2).unwrap();
    assert!(max_abs(&(&s * &a * s.adjoint() - &b)) < 1e-12);
    assert!(max_abs(&(&s * &b * s.adjoint() - &a)) < 1e-12);
    assert!(max_abs(&(s.adjoint() * &s - eye(4))) < 1e-15);
    let ten = s.column(occupation_index(&[0]));
    assert!((ten[occupation_index(&[1])].norm() - 1.0).abs() < 1e-15);
    assert!((s[(0, 0)] - ONE).norm() < 1e-15);
    let s2 = &s * &s;
    for e in [0, 3] {
        assert!((s2[(e, e)] - ONE).norm() < 1e-15);
    }
    assert_eq!(fermionic_swap(2, 2), Err(FermionError::SameMode(2)));
}

#[test]
fn swap_matches_exponential_form() {
    let gen = (cre(1) - cre(0)) * (ann(1) - ann(0));
    let g = fock_matrix(&gen, 3).unwrap();
    let (vals, vecs) = hermitian_eigen(&g);
    let d = CMat::from_diagonal(&nalgebra::DVector::from_iterator(
        vals.len(),
        vals.iter().map(|v| C64::from_polar(1.0, PI / 2.0 * v)),
    ));
    let expo = &vecs * d * vecs.adjoint();
    let s = fock_matrix(&fermionic_swap(0, 1).unwrap(), 3).unwrap();
    assert!(max_abs(&(expo - s)) < 1e-12);
}

#[test]
fn fermion_pair_encodes_a_qubit() {
    let enc = encode_qubit_ops(0, 1).unwrap();
    let x = fock_matrix(&enc.x, 3).unwrap();
    let z = fock_matrix(&enc.z, 3).unwrap();
    let even = [occupation_index(&[]), occupation_index(&[0, 1])];
    let restrict = |m: &CMat| CMat::from_fn(2, 2, |i, j| m[(even[i], even[j])]);
    let (xs, zs) = (restrict(&x), restrict(&z));
    assert_eq!(&xs * &xs, eye(2));
    assert_eq!(&zs * &zs, eye(2));
    assert_eq!(&xs * &zs, -(&zs * &xs));
    assert_eq!(zs[(0, 0)], ONE);
    let zero = vacuum_state(3);
    let pair = fock_matrix(&(cre(0) * cre(1)), 3).unwrap();
    let one = &pair * nalgebra::DVector::from_vec(zero.clone());
    let x0 = &x * nalgebra::DVector::from_vec(zero);
    assert!((x0 - one).norm() < 1e-15);
    let other = fock_matrix(&(FermionPolynomial::hop(2, 2) + cre(2) * cre(2)), 3).unwrap();
    assert!(max_abs(&(&x * &other - &other * &x)) < 1e-15);
}

fn hopping_model(layout: &MajoranaLayout, rng: &mut ChaCha8Rng) -> FermionPolynomial {
    let mut h = FermionPolynomial::zero();
    for &(n, m) in layout.links() {
        let t = c(rng.random_range(0.5..1.5), rng.random_range(-0.5..0.5));
        let term = FermionPolynomial::hop(n, m).scale(t);
        h = h.clone() + term.clone() + term.adjoint();
    }
    for s in 0..layout.n_sites() {
        h = h + FermionPolynomial::number(s).scale(c(rng.random_range(-1.0..1.0), 0.0));
    }
    h
}

#[test]
fn majorana_algebra_holds() {
    let layout = MajoranaLayout::grid(&[2, 2], 1).unwrap();
    assert_eq!(layout.n_modes(), 12);
    assert_eq!(layout.links().len(), 4);
    let maj: Vec<FermionPolynomial> = (0..12).map(FermionPolynomial::majorana).collect();
    for i in 0..12 {
        assert_eq!(maj[i].clone() * maj[i].clone(), FermionPolynomial::identity());
        for j in i + 1..12 {
            assert!(maj[i].anticommutator(&maj[j]).is_empty());
        }
    }
    let ms: Vec<FermionPolynomial> = (0..4).map(|l| layout.link_operator(l)).collect();
    for (i, m) in ms.iter().enumerate() {
        assert_eq!(m.clone() * m.clone(), FermionPolynomial::identity());
        assert!(m.is_hermitian(0.0));
        for other in &ms[i + 1..] {
            assert!(m.commutator(other).is_empty());
        }
        for s in 0..4 {
            let psi = cre(layout.physical_mode(s, 0));
            assert!(psi.commutator(m).is_empty());
        }
    }
}

#[test]
fn localized_hopping_model_is_local_and_isospectral() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let layout = MajoranaLayout::grid(&[2, 2], 1).unwrap();
    let mut h = hopping_model(&layout, &mut rng);
    let diag = FermionPolynomial::hop(0, 3).scale(c(0.3, 0.1));
    h = h + diag.clone() + diag.adjoint();
    let model = majorana_localize(&h, &layout).unwrap();
    assert!(model.is_local());
    for a in &model.audits {
        if a.allowed.len() <= 2 {
            assert!(a.sites.len() <= 2);
        }
    }
    let got = invariant_sector_spectrum(&model).unwrap();
    let want = hermitian_eigen(&fock_matrix(&h, 4).unwrap()).0;
    assert_eq!(got.len(), 16);
    for (g, w) in got.iter().zip(&want) {
        assert!((g - w).abs() < 1e-9, "{g} vs {w}");
    }
}

#[test]
fn on_site_terms_are_unchanged() {
    let layout = MajoranaLayout::grid(&[2, 2], 1).unwrap();
    let h = FermionPolynomial::number(2);
    let model = majorana_localize(&h, &layout).unwrap();
    assert_eq!(model.polynomial, FermionPolynomial::number(layout.physical_mode(2, 0)));
    assert!(matches!(majorana_localize(&cre(0), &layout), Err(FermionError::OddParity)));
    assert!(matches!(
        majorana_localize(&FermionPolynomial::hop(0, 1), &layout),
        Err(FermionError::NotHermitian)
    ));
}

#[test]
fn missing_links_are_reported() {
    let layout = MajoranaLayout::new(3, 1, vec![(0, 1)]).unwrap();
    let h = FermionPolynomial::hop(0, 2) + FermionPolynomial::hop(2, 0);
    assert_eq!(majorana_localize(&h, &layout).unwrap_err(), FermionError::NoPath { from: 2, to: 0 });
}

fn expectation(op: &PauliSum, s: &[C64]) -> C64 {
    let v = op.apply(s);
    s.iter().zip(&v).fold(C64::new(0.0, 0.0), |acc, (x, y)| acc + x.conj() * y)
}

#[test]
fn invariant_state_is_plus_one_for_every_link() {
    for layout in [
        MajoranaLayout::new(2, 0, vec![(0, 1)]).unwrap(),
        MajoranaLayout::new(4, 0, vec![(0, 1), (2, 3)]).unwrap(),
        MajoranaLayout::grid(&[2, 2], 1).unwrap(),
    ] {
        let ord = ModeOrdering::linear(layout.n_modes());
        let s = invariant_state(&layout).unwrap();
        let norm: f64 = s.iter().map(|z| z.norm_sqr()).sum();
        assert!((norm - 1.0).abs() < 1e-12);
        for l in 0..layout.links().len() {
            let m = jordan_wigner(&layout.link_operator(l), &ord).unwrap();
            let ms = m.apply(&s);
            let dev = ms.iter().zip(&s).fold(0.0f64, |acc, (x, y)| acc.max((x - y).norm()));
            assert!(dev < 1e-12);
            assert!((expectation(&m, &s) - ONE).norm() < 1e-12);
        }
    }
}

#[test]
fn single_link_state_closed_form() {
    let layout = MajoranaLayout::new(2, 0, vec![(0, 1)]).unwrap();
    let s = invariant_state(&layout).unwrap();
    let h = std::f64::consts::FRAC_1_SQRT_2;
    assert!((s[1] - c(h, 0.0)).norm() < 1e-15);
    assert!((s[2] - c(0.0, -h)).norm() < 1e-15);
    assert!(s[0].norm() < 1e-15 && s[3].norm() < 1e-15);
}

#[test]
fn disjoint_links_give_a_product_state() {
    let one = invariant_state(&MajoranaLayout::new(2, 0, vec![(0, 1)]).unwrap()).unwrap();
    let two = invariant_state(&MajoranaLayout::new(4, 0, vec![(0, 1), (2, 3)]).unwrap()).unwrap();
    // The second link's Z strings see the odd parity of the first, so the factors agree
    // up to one global sign.
    let phase = two[5] / (one[1] * one[1]);
    assert!((phase.norm() - 1.0).abs() < 1e-15);
    for b in 0..16 {
        let want = one[b & 3] * one[b >> 2] * phase;
        assert!((two[b] - want).norm() < 1e-15);
    }
}

#[test]
fn circuit_reproduces_invariant_state() {
    for layout in [
        MajoranaLayout::new(4, 0, vec![(0, 1), (1, 2)]).unwrap(),
        MajoranaLayout::grid(&[2, 2], 1).unwrap(),
    ] {
        let direct = invariant_state(&layout).unwrap();
        let circuit = invariant_state_circuit(&layout);
        let out = simulate(&circuit).unwrap();
        let n = layout.n_modes();
        let leak: f64 = out[1 << n..].iter().map(|z| z.norm_sqr()).sum();
        assert!(leak < 1e-20);
        let overlap = direct
            .iter()
            .zip(&out[..1 << n])
            .fold(C64::new(0.0, 0.0), |acc, (x, y)| acc + x.conj() * y);
        assert!(overlap.norm_sqr() >= 1.0 - 1e-10);
    }
}

#[test]
fn circuit_size_is_quadratic_in_links() {
    for ext in [[2, 2], [3, 3], [4, 4], [5, 4], [6, 6]] {
        let layout = MajoranaLayout::grid(&ext, 1).unwrap();
        let links = layout.links().len();
        let gates = invariant_state_circuit(&layout).gates.len();
        assert!(gates <= 25 * links * links, "{ext:?}: {gates} gates for {links} links");
    }
}

#[test]
fn second_quantization_conjugates_creators() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let u = random_unitary(&mut rng, 3);
    let gamma = {
        let h = fock_matrix(&second_quantize(&u), 3).unwrap();
        qlattice::linalg::expm_hermitian(&h, 1.0)
    };
    let cr: Vec<CMat> = (0..3).map(|m| fock_matrix(&cre(m), 3).unwrap()).collect();
    for j in 0..3 {
        let lhs = &gamma * &cr[j] * gamma.adjoint();
        let mut rhs = CMat::zeros(8, 8);
        for i in 0..3 {
            rhs += &cr[i] * u[(i, j)];
        }
        assert!(max_abs(&(lhs - rhs)) < 1e-12);
    }
}

fn ring_shift(n: usize) -> CMat {
    CMat::from_fn(n, n, |i, j| if i == (j + 1) % n { ONE } else { C64::new(0.0, 0.0) })
}

#[test]
fn doubled_decomposition_of_a_shift() {
    let gen = second_quantize(&ring_shift(3));
    let r = doubled_local_decomposition(&gen, &[0, 1, 2]).unwrap();
    assert!(r.passes, "{}", r.residual);
    assert!(r.localized);
    assert!(r.swap_sites.iter().all(|s| s.len() <= 2));
    assert!(r.commutator_defect < 1e-12);
}

#[test]
fn doubled_decomposition_of_identity() {
    let r = doubled_local_decomposition(&FermionPolynomial::zero(), &[0, 1, 2]).unwrap();
    assert!(r.passes && r.residual < 1e-14);
    assert!(r.swap_sites.iter().enumerate().all(|(m, s)| *s == BTreeSet::from([m])));
}

#[test]
fn doubled_decomposition_of_dirac_walk() {
    let walk = build_preset(
        Preset::Dirac1d,
        &PresetParams::new(0.3, 1.0).with_extents(vec![2]),
    )
    .unwrap();
    let gen = second_quantize(&walk.dense_matrix());
    let r = doubled_local_decomposition(&gen, &[0, 0, 1, 1]).unwrap();
    assert!(r.passes, "{}", r.residual);
    assert!(r.localized);
}

#[test]
fn doubled_decomposition_rejects_bad_generators() {
    assert_eq!(
        doubled_local_decomposition(&cre(0), &[0, 1]).unwrap_err(),
        FermionError::OddParity
    );
    assert!(matches!(
        doubled_local_decomposition(&FermionPolynomial::zero(), &[0; 6]),
        Err(FermionError::TooManyModes { .. })
    ));
}

#[test]
fn massless_vacuum_is_exact() {
    let r = discrete_vacuum(0.0, 0.1, 64).unwrap();
    assert!(r.modes.iter().all(|m| m.overlap == 1.0));
    assert_eq!(r.distance, 0.0);
    assert_eq!(vacuum_overlap(0.0, 0.05, 1.0, 25.6).unwrap().distance, 0.0);
}

#[test]
fn vacuum_eigenvalues() {
    for &(m, a) in &[(0.5, 0.1), (1.2, 0.3)] {
        let r = discrete_vacuum(m, a, 32).unwrap();
        for md in &r.modes {
            assert!((md.lambda_plus.norm() - 1.0).abs() < 1e-12);
            assert!((md.lambda_minus.norm() - 1.0).abs() < 1e-12);
            assert!(md.lambda_plus.im >= 0.0 && md.lambda_minus.im <= 0.0);
            assert!((0.0..=1.0).contains(&md.overlap));
            let u = {
                let coin = CMat::from_row_slice(2, 2, &[
                    c((m * a).cos(), 0.0), c(0.0, -(m * a).sin()),
                    c(0.0, -(m * a).sin()), c((m * a).cos(), 0.0),
                ]);
                let shift = CMat::from_row_slice(2, 2, &[
                    C64::from_polar(1.0, -md.p * a), c(0.0, 0.0),
                    c(0.0, 0.0), C64::from_polar(1.0, md.p * a),
                ]);
                coin * shift
            };
            assert!((&u * &md.w_negative - &md.w_negative * md.lambda_plus).norm() < 1e-12);
            assert!((&u * &md.w_positive - &md.w_positive * md.lambda_minus).norm() < 1e-12);
        }
        let zero = r.modes.iter().find(|md| md.p == 0.0).unwrap();
        assert!((zero.lambda_plus - c((m * a).cos(), (m * a).sin())).norm() < 1e-15);
        assert!((zero.lambda_minus - c((m * a).cos(), -(m * a).sin())).norm() < 1e-15);
    }
    assert!(r_csv().starts_with("p,lambda_plus_re,lambda_plus_im,overlap\n"));
}

fn r_csv() -> String {
    discrete_vacuum(0.5, 0.1, 8).unwrap().to_csv()
}

#[test]
fn vacuum_distance_is_linear_in_spacing() {
    let spacings: Vec<f64> = (0..6).map(|k| 0.1 / 2f64.powi(k)).collect();
    let conv = vacuum_convergence(0.5, 1.0, 25.6, &spacings).unwrap();
    assert!((conv.slope - 1.0).abs() <= 0.2, "{:?}", conv);
    assert!(conv.distances.windows(2).all(|w| w[1] < w[0]));
}

#[test]
fn vacuum_rejects_large_mass() {
    assert!(matches!(discrete_vacuum(20.0, 0.1, 16), Err(FermionError::MassTooLarge { .. })));
    assert!(vacuum_overlap(0.5, 0.1, 40.0, 25.6).is_err());
}

#[test]
fn pauli_sum_serialization_writes_y() {
    let s = PauliSum::y(2).scale(I) + PauliSum::x(0);
    let text = s.to_string();
    assert!(text.contains("1,0,0:X"));
    assert!(text.contains("0,1,2:Y"));
}

#[test]
fn polynomial_text_round_trips() {
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    for _ in 0..20 {
        let p = random_poly(&mut rng, 5, 4);
        let back: FermionPolynomial = p.to_string().parse().unwrap();
        assert_eq!(back, p);
    }
    let q: FermionPolynomial = "2:1+ 0-; 0,-1:0+ 1-".parse().unwrap();
    assert_eq!(q, FermionPolynomial::hop(1, 0).scale(c(2.0, 0.0)) + FermionPolynomial::hop(0, 1).scale(c(0.0, -1.0)));
    assert!("1:3*".parse::<FermionPolynomial>().is_err());
    assert!("x,1:3+".parse::<FermionPolynomial>().is_err());
}
