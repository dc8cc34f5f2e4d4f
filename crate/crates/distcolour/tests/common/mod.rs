//! Shared harness for cycle-level scenarios: one cycle with a private
//! matching edge at every vertex, so a test can fix the anchor plan and
//! then quantify over every possible B-side matching environment.

use distcolour::decompose::{cycle_decomposition, Decomposition};
use distcolour::distortion::{all_permutations, Distortion};
use distcolour::engine::{choose_anchor, colour_two_cycle, extend_cycle};
use distcolour::instance::{verify_colouring, DistortionInstance, EdgeColouring, EdgeId};

/// Builds a single cycle whose edges carry `cycle_perms` (even length ≥ 2)
/// plus identity matching edges: one from each cycle A-vertex to a fresh
/// B-partner, one from a fresh A-partner to each cycle B-vertex. Returns
/// the instance, its decomposition, and the matching edges at the cycle's
/// B-vertices — the adversary's slots.
pub fn cycle_scenario(
    cycle_perms: &[Distortion],
) -> (DistortionInstance, Decomposition, Vec<EdgeId>) {
    let len = cycle_perms.len();
    assert!(len >= 2 && len.is_multiple_of(2));
    let k = len / 2;
    let mut inst = DistortionInstance::new(3, 2 * k, 2 * k);
    if len == 2 {
        inst.add_edge(0, 0, cycle_perms[0].clone());
        inst.add_edge(0, 0, cycle_perms[1].clone());
    } else {
        for i in 0..k {
            inst.add_edge(i, i, cycle_perms[2 * i].clone());
            inst.add_edge((i + 1) % k, i, cycle_perms[2 * i + 1].clone());
        }
    }
    let mut matching = Vec::new();
    for i in 0..k {
        matching.push(inst.add_edge(i, k + i, Distortion::identity(3)));
    }
    let mut adversary = Vec::new();
    for j in 0..k {
        let e = inst.add_edge(k + j, j, Distortion::identity(3));
        matching.push(e);
        adversary.push(e);
    }
    let cycles = cycle_decomposition(&inst, &matching).expect("remainder is one cycle");
    let decomp = Decomposition::new(&inst, matching, cycles).expect("matching is perfect");
    (inst, decomp, adversary)
}

/// Extends the scenario's cycle under every assignment of the adversary
/// edges (4^k environments) and verifies each completion. `base` must
/// already colour the cycle's own matching edges.
pub fn extend_under_all_environments(
    inst: &DistortionInstance,
    decomp: &Decomposition,
    adversary: &[EdgeId],
    base: &EdgeColouring,
) -> Result<(), String> {
    let ctx = choose_anchor(inst, decomp, 0);
    let environments = 4u32.pow(adversary.len() as u32);
    for env in 0..environments {
        let mut f = base.clone();
        for (j, &e) in adversary.iter().enumerate() {
            f.set(e, ((env >> (2 * j)) & 3) as u8);
        }
        let result = if decomp.cycles[0].is_two_cycle() {
            colour_two_cycle(inst, decomp, &ctx, &mut f)
        } else {
            extend_cycle(inst, decomp, &ctx, &mut f)
        };
        result.map_err(|e| format!("environment {env}: {e}"))?;
        let violations = verify_colouring(inst, &f);
        if !violations.is_empty() {
            return Err(format!("environment {env}: {violations:?}"));
        }
    }
    Ok(())
}

/// Deterministic stream of random distortions for test scenarios
/// (splitmix-style index into the 24 permutations).
pub fn perm_stream(seed: u64) -> impl FnMut() -> Distortion {
    let perms: Vec<Distortion> = all_permutations(4)
        .into_iter()
        .map(|p| Distortion::new(p).unwrap())
        .collect();
    let mut state = seed.wrapping_mul(0x9E37_79B9_7F4A_7C15).wrapping_add(0xA5A5);
    move || {
        state = state
            .wrapping_mul(6364136223846793005)
            .wrapping_add(1442695040888963407);
        perms[((state >> 33) % 24) as usize].clone()
    }
}
