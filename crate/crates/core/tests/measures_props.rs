use std::f64::consts::{PI, SQRT_2};

use entlab::channels::{random_stinespring, Side};
use entlab::linalg::{
    eigvalsh, haar_random_unitary, matrix_sqrt_psd, pauli, random_density_matrix, random_pure_state,
    stream_rng, tensor, Complex64, ComplexMatrix,
};
use entlab::measures::{chsh_max, concurrence, is_ppt, log_negativity, negativity, spin_flip_spectrum};
use entlab::states::{bell_psi_plus, max_entangled, schmidt_pure, werner_state};
use entlab::{Cut, DensityMatrix};
use proptest::prelude::*;
use rand::Rng;

fn cut() -> Cut {
    Cut::bipartite()
}

/// μᵢ from the Hermitian form `√ρ ρ̃ √ρ`, descending.
fn hermitian_form_spectrum(rho: &DensityMatrix) -> Vec<f64> {
    let yy = tensor(&pauli(2), &pauli(2));
    let flipped = yy.matmul(&rho.matrix().conj()).matmul(&yy);
    let s = matrix_sqrt_psd(rho.matrix()).unwrap();
    let m = s.matmul(&flipped).matmul(&s).hermitian_part();
    let mut mu: Vec<f64> = eigvalsh(&m)
        .unwrap()
        .into_iter()
        .map(|x| x.max(0.0).sqrt())
        .collect();
    mu.reverse();
    mu
}

/// Random X-shaped state and its concurrence `2 max(0, |ρ₁₄| - √(ρ₂₂ρ₃₃), |ρ₂₃| - √(ρ₁₁ρ₄₄))`.
fn x_state(seed: u64) -> (DensityMatrix, f64) {
    let mut rng = stream_rng(seed, 0);
    let mut d: [f64; 4] = std::array::from_fn(|_| rng.random::<f64>() + 1e-3);
    let total: f64 = d.iter().sum();
    d.iter_mut().for_each(|x| *x /= total);
    let z = Complex64::from_polar(
        (d[0] * d[3]).sqrt() * rng.random::<f64>(),
        2.0 * PI * rng.random::<f64>(),
    );
    let w = Complex64::from_polar(
        (d[1] * d[2]).sqrt() * rng.random::<f64>(),
        2.0 * PI * rng.random::<f64>(),
    );
    let mut m = ComplexMatrix::from_diag(&d);
    m.set(0, 3, z);
    m.set(3, 0, z.conj());
    m.set(1, 2, w);
    m.set(2, 1, w.conj());
    let c = 2.0
        * (z.norm() - (d[1] * d[2]).sqrt())
            .max(w.norm() - (d[0] * d[3]).sqrt())
            .max(0.0);
    (DensityMatrix::new(m, vec![2, 2]).unwrap(), c)
}

/// Brute-force CHSH maximum with all settings in the x–z plane. Bob's two
/// angles run over a grid of the given step; Alice's best direction for a
/// fixed vector `v` is `v/|v|`, worth `|v|`.
fn chsh_grid(rho: &DensityMatrix, step: f64) -> f64 {
    let corr = |i: usize, j: usize| rho.matrix().matmul(&tensor(&pauli(i), &pauli(j))).trace().re;
    let (xx, xz, zx, zz) = (corr(1, 1), corr(1, 3), corr(3, 1), corr(3, 3));
    let n = (2.0 * PI / step).ceil() as usize;
    let dirs: Vec<(f64, f64)> = (0..n).map(|k| (k as f64 * step).sin_cos()).collect();
    let mut best = 0.0f64;
    for &(s1, c1) in &dirs {
        for &(s2, c2) in &dirs {
            let (px, pz) = (s1 + s2, c1 + c2);
            let (mx, mz) = (s1 - s2, c1 - c2);
            let plus = (xx * px + xz * pz).hypot(zx * px + zz * pz);
            let minus = (xx * mx + xz * mz).hypot(zx * mx + zz * mz);
            best = best.max(plus + minus);
        }
    }
    best
}

#[test]
fn bell_and_noise_values() {
    let psi = bell_psi_plus().projector();
    assert!((concurrence(&psi).unwrap() - 1.0).abs() < 1e-12);
    assert!((negativity(&psi, &cut()).unwrap() - 0.5).abs() < 1e-12);
    assert!((log_negativity(&psi, &cut()).unwrap() - 1.0).abs() < 1e-12);
    let mixed = DensityMatrix::maximally_mixed(&[2, 2]);
    assert_eq!(concurrence(&mixed).unwrap(), 0.0);
    assert_eq!(chsh_max(&mixed).unwrap(), 0.0);
    assert!(is_ppt(&mixed, &cut()).unwrap());
    assert!(is_ppt(&werner_state(1.0 / 3.0).unwrap(), &cut()).unwrap());
}

#[test]
fn werner_concurrence_values() {
    assert!((concurrence(&werner_state(0.5).unwrap()).unwrap() - 0.25).abs() < 1e-12);
    for k in 0..=100 {
        let q = k as f64 / 100.0;
        let want = ((3.0 * q - 1.0) / 2.0).max(0.0);
        assert!(
            (concurrence(&werner_state(q).unwrap()).unwrap() - want).abs() < 1e-12,
            "q={q}"
        );
    }
}

#[test]
fn schmidt_closed_form_on_grid() {
    for k in 0..=100 {
        let alpha = k as f64 / 100.0;
        let beta = (1.0 - alpha * alpha).sqrt();
        let c = concurrence(&schmidt_pure(alpha).unwrap().projector()).unwrap();
        assert!((c - 2.0 * alpha * beta).abs() < 1e-12, "alpha={alpha}: {c}");
    }
}

#[test]
fn x_state_oracle() {
    for seed in 0..200 {
        let (rho, want) = x_state(seed);
        let got = concurrence(&rho).unwrap();
        assert!((got - want).abs() < 1e-10, "seed {seed}: {got} vs {want}");
    }
}

#[test]
fn spin_flip_spectrum_matches_hermitian_form() {
    for i in 0..100 {
        let rho = random_density_matrix(&[2, 2], &mut stream_rng(51, i));
        let mu = spin_flip_spectrum(&rho).unwrap();
        for (a, b) in mu.iter().zip(hermitian_form_spectrum(&rho)) {
            assert!((a - b).abs() < 1e-8, "sample {i}: {a} vs {b}");
        }
    }
}

#[test]
fn rank_deficient_spectrum_is_accurate() {
    // Pure states have a single nonzero μ equal to the concurrence.
    for i in 0..50 {
        let phi = random_pure_state(&[2, 2], &mut stream_rng(52, i));
        let a = phi.amplitudes();
        let want = 2.0 * (a[0] * a[3] - a[1] * a[2]).norm();
        let mu = spin_flip_spectrum(&phi.projector()).unwrap();
        assert!((mu[0] - want).abs() < 1e-12);
        assert!(mu[1..].iter().all(|&x| x < 1e-12));
    }
}

#[test]
fn chsh_matches_angle_grid() {
    let rho = schmidt_pure(0.8f64.sqrt()).unwrap().projector();
    let exact = chsh_max(&rho).unwrap();
    assert!((exact - 2.0 * 1.64f64.sqrt()).abs() < 1e-12);
    let grid = chsh_grid(&rho, 1e-3);
    assert!(grid <= exact + 1e-12);
    assert!((exact - grid).abs() < 1e-3, "{exact} vs {grid}");

    let bell = chsh_max(&bell_psi_plus().projector()).unwrap();
    assert!((bell - 2.0 * SQRT_2).abs() < 1e-12);
}

#[test]
fn pure_product_log_negativity() {
    let phi = schmidt_pure(0.8f64.sqrt()).unwrap();
    let single = log_negativity(&phi.projector(), &cut()).unwrap();
    assert!((single - 1.8f64.log2()).abs() < 1e-12);
    let pair = phi.tensor(&phi).projector();
    let across = log_negativity(&pair, &Cut::new(vec![1, 3])).unwrap();
    assert!((across - 2.0 * single).abs() < 1e-10);
}

#[test]
fn sharpness_near_werner_boundary() {
    for offset in [-1e-2, -1e-4, -1e-6, 0.0, 1e-6, 1e-4, 1e-2] {
        let rho = werner_state(1.0 / 3.0 + offset).unwrap();
        let c = concurrence(&rho).unwrap();
        let ppt = is_ppt(&rho, &cut()).unwrap();
        assert_eq!(ppt, c < 1e-9, "offset {offset}: C={c}");
    }
}

fn local_unitary(seed: u64, rho: &DensityMatrix) -> DensityMatrix {
    let mut rng = stream_rng(seed, 1);
    let ua = haar_random_unitary(2, &mut rng);
    let ub = haar_random_unitary(2, &mut rng);
    rho.unitary_conjugate(&tensor(&ua, &ub)).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn concurrence_vanishes_exactly_on_ppt_states(seed in any::<u64>()) {
        let rho = random_density_matrix(&[2, 2], &mut stream_rng(seed, 0));
        let c = concurrence(&rho).unwrap();
        prop_assert!((0.0..=1.0).contains(&c));
        prop_assert_eq!(is_ppt(&rho, &cut()).unwrap(), c < 1e-9);
    }

    #[test]
    fn concurrence_is_convex(seed in any::<u64>(), lambda in 0.0f64..=1.0) {
        let mut rng = stream_rng(seed, 0);
        let a = random_density_matrix(&[2, 2], &mut rng);
        let b = random_pure_state(&[2, 2], &mut rng).projector();
        let mixed = DensityMatrix::mix(lambda, &a, &b).unwrap();
        let lhs = concurrence(&mixed).unwrap();
        let rhs = lambda * concurrence(&a).unwrap() + (1.0 - lambda) * concurrence(&b).unwrap();
        prop_assert!(lhs <= rhs + 1e-10, "{} > {}", lhs, rhs);
    }

    #[test]
    fn concurrence_is_monotone_under_local_channels(seed in any::<u64>(), on_a in any::<bool>()) {
        let mut rng = stream_rng(seed, 0);
        let ch = random_stinespring(&mut rng);
        let rho = random_density_matrix(&[2, 2], &mut rng);
        let side = if on_a { Side::A } else { Side::B };
        let out = ch.lift_local(side, &[2, 2]).unwrap().apply(&rho).unwrap();
        prop_assert!(concurrence(&out).unwrap() <= concurrence(&rho).unwrap() + 1e-9);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn measures_are_local_unitary_invariant(seed in any::<u64>()) {
        let rho = random_density_matrix(&[2, 2], &mut stream_rng(seed, 0));
        let rotated = local_unitary(seed, &rho);
        prop_assert!((concurrence(&rotated).unwrap() - concurrence(&rho).unwrap()).abs() < 1e-10);
        prop_assert!(
            (log_negativity(&rotated, &cut()).unwrap() - log_negativity(&rho, &cut()).unwrap()).abs() < 1e-10
        );
    }

    #[test]
    fn maximally_entangled_states_have_unit_concurrence(seed in any::<u64>()) {
        let mut rng = stream_rng(seed, 0);
        let u = haar_random_unitary(2, &mut rng);
        prop_assert!((concurrence(&max_entangled(&u).unwrap().projector()).unwrap() - 1.0).abs() < 1e-10);
        let generic = random_pure_state(&[2, 2], &mut rng).projector();
        prop_assert!(concurrence(&generic).unwrap() < 1.0);
    }

    #[test]
    fn log_negativity_is_additive_on_pure_products(seed in any::<u64>()) {
        let mut rng = stream_rng(seed, 0);
        let a = random_pure_state(&[2, 2], &mut rng);
        let b = random_pure_state(&[2, 2], &mut rng);
        let joint = log_negativity(&a.tensor(&b).projector(), &Cut::new(vec![1, 3])).unwrap();
        let sum = log_negativity(&a.projector(), &cut()).unwrap() + log_negativity(&b.projector(), &cut()).unwrap();
        prop_assert!((joint - sum).abs() < 1e-9);
    }

    #[test]
    fn chsh_stays_in_range(seed in any::<u64>()) {
        let rho = random_density_matrix(&[2, 2], &mut stream_rng(seed, 0));
        let s = chsh_max(&rho).unwrap();
        prop_assert!((0.0..=2.0 * SQRT_2 + 1e-12).contains(&s));
    }
}
