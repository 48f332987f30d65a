use geodiscord::bloch::{decompose, reconstruct};
use geodiscord::discord::{gqd, gqd_two_qubit, hs_eigen_bound, oracle_gqd, OracleConfig, Variant};
use geodiscord::entanglement::{classify, negativity, PptClass};
use geodiscord::states::{haar_unitary, random_classical_quantum, random_separable, random_state};
use geodiscord::DensityMatrix;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const DIM_PAIRS: [(usize, usize); 5] = [(2, 2), (2, 3), (3, 2), (3, 3), (4, 4)];

fn rank_for(d1: usize, d2: usize, seed: u64) -> usize {
    1 + (seed as usize) % (d1 * d2)
}

fn rotated(rho: &DensityMatrix, seed: u64) -> DensityMatrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
    let ua = haar_unitary(rho.dim_a(), &mut rng);
    let ub = haar_unitary(rho.dim_b(), &mut rng);
    rho.local_unitary(&ua, &ub).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn bloch_round_trip(seed in any::<u64>()) {
        for (d1, d2) in DIM_PAIRS {
            let rho = random_state(d1, d2, rank_for(d1, d2, seed), seed).unwrap();
            let back = reconstruct(&decompose(&rho).unwrap()).unwrap();
            prop_assert!(back.matrix().max_abs_diff(rho.matrix()) <= 1e-11, "{d1}x{d2}");
        }
    }

    #[test]
    fn purity_matches_triplet(seed in any::<u64>()) {
        for (d1, d2) in DIM_PAIRS {
            let rho = random_state(d1, d2, rank_for(d1, d2, seed), seed).unwrap();
            let trip = decompose(&rho).unwrap();
            prop_assert!((trip.purity() - rho.purity()).abs() <= 1e-12);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn analytic_discord_is_local_unitary_invariant(seed in any::<u64>()) {
        for (d1, d2) in DIM_PAIRS {
            let rho = random_state(d1, d2, rank_for(d1, d2, seed), seed).unwrap();
            let a = gqd(&rho, Variant::ASide).unwrap().value;
            let b = gqd(&rotated(&rho, seed), Variant::ASide).unwrap().value;
            prop_assert!((a - b).abs() <= 1e-9, "{d1}x{d2}: {a} vs {b}");
        }
    }

    #[test]
    fn classical_quantum_states_have_zero_discord(seed in any::<u64>()) {
        for (d1, d2) in DIM_PAIRS {
            let chi = random_classical_quantum(d1, d2, seed).unwrap();
            let v = gqd(&chi, Variant::ASide).unwrap().value;
            prop_assert!(v.abs() <= 1e-9, "{d1}x{d2}: {v}");
            prop_assert!(hs_eigen_bound(&chi).unwrap().abs() <= 1e-9);
        }
    }

    #[test]
    fn ppt_iff_zero_negativity(seed in any::<u64>()) {
        for d in [2usize, 3] {
            let rho = if seed % 2 == 0 {
                random_separable(d, d, 1 + (seed as usize / 2) % 6, seed).unwrap()
            } else {
                random_state(d, d, rank_for(d, d, seed), seed).unwrap()
            };
            let n = negativity(&rho).unwrap().negativity;
            let class = classify(&rho).unwrap();
            prop_assert_eq!(class == PptClass::Ppt, n == 0.0, "N = {}", n);
        }
    }

    #[test]
    fn separable_states_are_ppt(seed in any::<u64>()) {
        for (d1, d2) in [(2usize, 2usize), (2, 3), (3, 2)] {
            let rho = random_separable(d1, d2, 1 + seed as usize % 8, seed).unwrap();
            prop_assert_eq!(classify(&rho).unwrap(), PptClass::Ppt);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn oracle_matches_two_qubit_formula(seed in any::<u64>()) {
        let rho = random_state(2, 2, rank_for(2, 2, seed), seed).unwrap();
        let analytic = gqd_two_qubit(&rho).unwrap().value;
        let oracle = oracle_gqd(&rho, &OracleConfig::default().with_restarts(32).with_seed(seed)).unwrap();
        prop_assert!(oracle.result.value >= analytic - 1e-7);
        prop_assert!((oracle.result.value - analytic).abs() <= 1e-6);
    }

    #[test]
    fn oracle_is_local_unitary_invariant(seed in any::<u64>()) {
        let rho = random_state(2, 3, rank_for(2, 3, seed), seed).unwrap();
        let cfg = OracleConfig::default().with_restarts(32).with_seed(seed);
        let a = oracle_gqd(&rho, &cfg).unwrap().result.value;
        let b = oracle_gqd(&rotated(&rho, seed), &cfg).unwrap().result.value;
        prop_assert!((a - b).abs() <= 1e-7, "{a} vs {b}");
    }

    #[test]
    fn eigen_bound_never_exceeds_oracle(seed in any::<u64>()) {
        let rho = random_state(3, 3, rank_for(3, 3, seed), seed).unwrap();
        let bound = hs_eigen_bound(&rho).unwrap();
        let oracle = oracle_gqd(&rho, &OracleConfig::default().with_restarts(16).with_seed(seed)).unwrap();
        prop_assert!(bound <= oracle.result.value + 1e-8, "{bound} > {}", oracle.result.value);
    }
}
