//! Acceptance suite: one test per criterion, each printing a PASS line.
//!
//! 1. 10,000 seeded random d=3 instances solve and verify.
//! 2. 1,000 small instances: the exhaustive oracle independently
//!    confirms existence and the engine's witness verifies.
//! 3. The 2-cycle lemma, certified over all 24×24 distortion pairs plus
//!    the refutation showing the α-rule is necessary.
//! 4. The β/γ/δ selection lemma, certified over all subset pairs.
//! 5. The anchored-extension statement with its literal quantifier
//!    order: anchor first, then *every* B-side environment extends.
//! 6. All 576 order-4 Latin squares yield valid size-3 transversals;
//!    the cyclic square has no size-4 transversal.
//! 7. Delay instances: solved colourings satisfy the shifted-properness
//!    condition on the delays themselves.
//! 8. Engineering scale: 100,000 vertices per side in under 5 seconds.

mod common;

use std::time::Instant;

use distcolour::distortion::Distortion;
use distcolour::engine::{colour_matching_phase, solve};
use distcolour::generate::{
    delay_to_distortion, random_delay_instance, random_instance, verify_delay_colouring, GenMode,
};
use distcolour::instance::verify_colouring;
use distcolour::selftest;

use common::{cycle_scenario, extend_under_all_environments, perm_stream};

fn mode_for(i: usize) -> GenMode {
    [GenMode::Cubic, GenMode::Subcubic, GenMode::Delay][i % 3]
}

#[test]
fn criterion_1_headline_theorem_on_10000_instances() {
    let total = 10_000;
    for i in 0..total {
        let seed = i as u64;
        let mode = mode_for(i);
        let size = 1 + (i * 37) % 200;
        let (size_a, size_b) = match mode {
            GenMode::Cubic => (size, size),
            _ => (size, 1 + (i * 53) % 200),
        };
        let inst = random_instance(seed, size_a, size_b, mode)
            .unwrap_or_else(|e| panic!("generation failed on seed {seed}: {e}"));
        let f = solve(&inst).unwrap_or_else(|e| panic!("solve failed on seed {seed}: {e}"));
        let violations = verify_colouring(&inst, &f);
        assert!(
            violations.is_empty(),
            "improper colouring on seed {seed}: {violations:?}"
        );
    }
    println!("criterion 1: PASS — {total} random instances solved and verified");
}

#[test]
fn criterion_2_oracle_cross_check_on_1000_small_instances() {
    let total = 1_000;
    for i in 0..total {
        let seed = 1_000_000 + i as u64;
        let size = 1 + i % 3;
        let inst = random_instance(seed, size, size, mode_for(i)).unwrap();
        assert!(inst.num_edges() <= 10, "instance too big for the oracle");

        let r = distcolour::oracle::exhaustive_solve(&inst, 100_000_000);
        let witness = r
            .witness()
            .unwrap_or_else(|| panic!("oracle found no solution on seed {seed}: {:?}", r.status));
        assert!(verify_colouring(&inst, witness).is_empty());

        let f = solve(&inst).unwrap();
        assert!(
            verify_colouring(&inst, &f).is_empty(),
            "engine witness improper on seed {seed}"
        );
    }
    println!("criterion 2: PASS — oracle and engine agree on {total} small instances");
}

#[test]
fn criterion_3_two_cycle_lemma_certification() {
    let report = selftest::two_cycle_certification().unwrap_or_else(|e| panic!("{e}"));
    println!(
        "criterion 3: PASS — 2-cycle lemma certified over {} cases incl. the α-rule refutation",
        report.cases
    );
}

#[test]
fn criterion_4_beta_gamma_delta_certification() {
    let report = selftest::beta_gamma_delta_certification().unwrap_or_else(|e| panic!("{e}"));
    println!(
        "criterion 4: PASS — β/γ/δ triple exists in all {} admissible subset pairs",
        report.cases
    );
}

#[test]
fn criterion_5_anchored_extension_for_all_environments() {
    let mut scenarios = 0u64;
    for len in [2usize, 4, 6] {
        for seed in 0..500u64 {
            let mut next_perm = perm_stream(seed * 101 + len as u64);
            let perms: Vec<Distortion> = (0..len).map(|_| next_perm()).collect();
            let (inst, decomp, adversary) = cycle_scenario(&perms);
            let f = colour_matching_phase(&inst, &decomp).unwrap();
            extend_under_all_environments(&inst, &decomp, &adversary, &f)
                .unwrap_or_else(|e| panic!("cycle length {len}, seed {seed}: {e}"));
            scenarios += 1;
        }
    }
    println!(
        "criterion 5: PASS — {scenarios} anchored cycles extended under every B-side environment"
    );
}

#[test]
fn criterion_6_brualdi_stein_at_order_4() {
    let report = selftest::latin_order4_suite().unwrap_or_else(|e| panic!("{e}"));
    println!(
        "criterion 6: PASS — {} cases: 576 squares gave valid size-3 transversals, cyclic square has none of size 4",
        report.cases
    );
}

#[test]
fn criterion_7_delay_semantics_on_1000_instances() {
    let total = 1_000;
    for i in 0..total {
        let seed = 77_000 + i as u64;
        let size_a = 1 + i % 40;
        let size_b = 1 + (i * 7) % 40;
        let di = random_delay_instance(seed, size_a, size_b);
        let inst = delay_to_distortion(&di);
        let f = solve(&inst).unwrap();
        let violations = verify_delay_colouring(&di, &f);
        assert!(
            violations.is_empty(),
            "delay condition violated on seed {seed}: {violations:?}"
        );
    }
    println!("criterion 7: PASS — {total} delay instances satisfy shifted properness verbatim");
}

#[test]
fn criterion_8_scale_target_100k_vertices() {
    let n = 100_000;
    let inst = random_instance(4242, n, n, GenMode::Cubic).unwrap();
    let start = Instant::now();
    let f = solve(&inst).unwrap();
    let violations = verify_colouring(&inst, &f);
    let elapsed = start.elapsed();
    assert!(violations.is_empty());
    assert!(
        elapsed.as_secs_f64() < 5.0,
        "solve+verify took {elapsed:?}, budget is 5 s"
    );
    println!(
        "criterion 8: PASS — {n} vertices per side solved and verified in {:.2?}",
        elapsed
    );
}
