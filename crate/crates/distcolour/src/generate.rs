//! Seeded instance generators and the delay ↔ distortion adapter.
//!
//! All randomness comes from ChaCha8 seeded with a caller-supplied u64,
//! and sampling is done with explicit rejection + Fisher–Yates below, so a
//! seed pins the generated bytes on every platform (and is reproducible
//! from this file alone in any language).

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use serde::Serialize;

use crate::distortion::{Colour, Distortion};
use crate::error::Error;
use crate::instance::{DistortionInstance, EdgeColouring, EdgeId, Violation};

/// A bipartite multigraph whose edges carry integer delays instead of full
/// permutations; delays are reduced modulo d+1 on construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DelayInstance {
    pub d: u8,
    pub size_a: usize,
    pub size_b: usize,
    pub edges: Vec<DelayEdge>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DelayEdge {
    pub a: usize,
    pub b: usize,
    pub delay: u8,
}

impl DelayInstance {
    pub fn new(d: u8, size_a: usize, size_b: usize) -> Self {
        DelayInstance {
            d,
            size_a,
            size_b,
            edges: Vec::new(),
        }
    }

    pub fn add_edge(&mut self, a: usize, b: usize, delay: i64) -> EdgeId {
        let id = self.edges.len();
        let delay = delay.rem_euclid(self.d as i64 + 1) as u8;
        self.edges.push(DelayEdge { a, b, delay });
        id
    }

    /// Encodes in the instance JSON format using the `delay` shorthand.
    pub fn to_json(&self) -> String {
        #[derive(Serialize)]
        struct Wire {
            d: u8,
            size_a: usize,
            size_b: usize,
            edges: Vec<EdgeDelayWire>,
        }
        #[derive(Serialize)]
        struct EdgeDelayWire {
            a: usize,
            b: usize,
            delay: u8,
        }
        let wire = Wire {
            d: self.d,
            size_a: self.size_a,
            size_b: self.size_b,
            edges: self
                .edges
                .iter()
                .map(|e| EdgeDelayWire {
                    a: e.a,
                    b: e.b,
                    delay: e.delay,
                })
                .collect(),
        };
        serde_json::to_string(&wire).expect("delay instance serialization cannot fail")
    }
}

/// Expands each delay k into the cyclic-shift permutation
/// `i ↦ (i + k) mod (d+1)`. Solving the result and verifying it is the
/// delay-colouring requirement verbatim: proper on A, and proper on B
/// after adding the delays.
pub fn delay_to_distortion(di: &DelayInstance) -> DistortionInstance {
    let mut inst = DistortionInstance::new(di.d, di.size_a, di.size_b);
    for e in &di.edges {
        inst.add_edge(e.a, e.b, Distortion::delay(e.delay as i64, di.d));
    }
    inst
}

/// Checks a colouring of a delay instance directly on the delays:
/// `f` pairwise distinct around each A-vertex and `(f + delay) mod (d+1)`
/// pairwise distinct around each B-vertex. Independent of the
/// `Distortion` machinery on purpose.
pub fn verify_delay_colouring(di: &DelayInstance, f: &EdgeColouring) -> Vec<Violation> {
    let mut violations = Vec::new();
    let modulus = di.d as u16 + 1;
    let mut at_a: Vec<Vec<(EdgeId, Colour)>> = vec![Vec::new(); di.size_a];
    let mut at_b: Vec<Vec<(EdgeId, Colour)>> = vec![Vec::new(); di.size_b];
    for (id, e) in di.edges.iter().enumerate() {
        match f.get(id) {
            None => violations.push(Violation::Unassigned { edge: id }),
            Some(c) => {
                at_a[e.a].push((id, c));
                let shifted = ((c as u16 + e.delay as u16) % modulus) as Colour;
                at_b[e.b].push((id, shifted));
            }
        }
    }
    for (vertex, incident) in at_a.iter().enumerate() {
        for (i, &(e1, c1)) in incident.iter().enumerate() {
            for &(e2, c2) in &incident[i + 1..] {
                if c1 == c2 {
                    violations.push(Violation::ASideClash {
                        vertex,
                        colour: c1,
                        edges: (e1, e2),
                    });
                }
            }
        }
    }
    for (vertex, incident) in at_b.iter().enumerate() {
        for (i, &(e1, c1)) in incident.iter().enumerate() {
            for &(e2, c2) in &incident[i + 1..] {
                if c1 == c2 {
                    violations.push(Violation::BSideClash {
                        vertex,
                        colour: c1,
                        edges: (e1, e2),
                    });
                }
            }
        }
    }
    violations
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GenMode {
    /// Union of three random perfect matchings; needs equal class sizes.
    Cubic,
    /// Cubic structure with a random quarter of the edges deleted, then
    /// trimmed to the requested class sizes.
    Subcubic,
    /// Subcubic structure with random delays instead of arbitrary
    /// permutations.
    Delay,
}

impl std::str::FromStr for GenMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "cubic" => Ok(GenMode::Cubic),
            "subcubic" => Ok(GenMode::Subcubic),
            "delay" => Ok(GenMode::Delay),
            other => Err(format!("unknown mode {other:?}, expected cubic|subcubic|delay")),
        }
    }
}

/// Deterministic seeded instance generation; same seed, same bytes.
pub fn random_instance(
    seed: u64,
    size_a: usize,
    size_b: usize,
    mode: GenMode,
) -> Result<DistortionInstance, Error> {
    match mode {
        GenMode::Cubic => {
            if size_a != size_b {
                return Err(Error::UnbalancedCubic { size_a, size_b });
            }
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut inst = DistortionInstance::new(3, size_a, size_b);
            for (a, b) in cubic_pairs(&mut rng, size_a) {
                let perm = random_permutation(&mut rng);
                inst.add_edge(a, b, Distortion::new(perm).expect("shuffle yields a permutation"));
            }
            Ok(inst)
        }
        GenMode::Subcubic => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut inst = DistortionInstance::new(3, size_a, size_b);
            for (a, b) in subcubic_pairs(&mut rng, size_a, size_b) {
                let perm = random_permutation(&mut rng);
                inst.add_edge(a, b, Distortion::new(perm).expect("shuffle yields a permutation"));
            }
            Ok(inst)
        }
        GenMode::Delay => Ok(delay_to_distortion(&random_delay_instance(
            seed, size_a, size_b,
        ))),
    }
}

/// Subcubic structure with uniform random delays on each edge.
pub fn random_delay_instance(seed: u64, size_a: usize, size_b: usize) -> DelayInstance {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut di = DelayInstance::new(3, size_a, size_b);
    for (a, b) in subcubic_pairs(&mut rng, size_a, size_b) {
        let delay = uniform(&mut rng, 4) as i64;
        di.add_edge(a, b, delay);
    }
    di
}

/// Three shuffled matchings on n + n vertices: every vertex gets degree
/// exactly 3, with parallel edges wherever the matchings overlap.
fn cubic_pairs(rng: &mut ChaCha8Rng, n: usize) -> Vec<(usize, usize)> {
    let mut pairs = Vec::with_capacity(3 * n);
    for _ in 0..3 {
        let mut targets: Vec<usize> = (0..n).collect();
        shuffle(rng, &mut targets);
        for (a, &b) in targets.iter().enumerate() {
            pairs.push((a, b));
        }
    }
    pairs
}

/// Cubic structure on the larger class size, each edge kept with
/// probability 3/4, then restricted to the requested sizes.
fn subcubic_pairs(rng: &mut ChaCha8Rng, size_a: usize, size_b: usize) -> Vec<(usize, usize)> {
    let n = size_a.max(size_b);
    cubic_pairs(rng, n)
        .into_iter()
        .filter(|_| uniform(rng, 4) != 0)
        .filter(|&(a, b)| a < size_a && b < size_b)
        .collect()
}

fn random_permutation(rng: &mut ChaCha8Rng) -> Vec<u8> {
    let mut p = vec![0u8, 1, 2, 3];
    shuffle(rng, &mut p);
    p
}

/// Unbiased uniform draw from `0..n` by rejection on the top of the u32
/// range.
fn uniform(rng: &mut ChaCha8Rng, n: u32) -> u32 {
    debug_assert!(n >= 1);
    let zone = u32::MAX - (u32::MAX % n);
    loop {
        let r = rng.next_u32();
        if r < zone {
            return r % n;
        }
    }
}

/// Fisher–Yates, descending.
fn shuffle<T>(rng: &mut ChaCha8Rng, items: &mut [T]) {
    for i in (1..items.len()).rev() {
        let j = uniform(rng, i as u32 + 1) as usize;
        items.swap(i, j);
    }
}
