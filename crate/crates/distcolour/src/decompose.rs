//! Perfect matching extraction and 2-factor cycle decomposition.
//!
//! On a cubic bipartite multigraph a maximum matching is perfect (König),
//! and removing it leaves every vertex with exactly two edge slots, so the
//! remainder splits into edge-disjoint cycles of even length. Parallel
//! edges stay distinct by id throughout; a 2-cycle is two parallel edges.

use std::collections::VecDeque;

use crate::error::{Error, Side};
use crate::instance::{DistortionInstance, EdgeId};

/// One cycle of the 2-factor, in traversal order.
///
/// `vertices[0]` is an A-vertex, sides alternate with index parity, and
/// `edges[i]` joins `vertices[i]` to `vertices[(i+1) % len]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cycle {
    pub edges: Vec<EdgeId>,
    pub vertices: Vec<usize>,
}

impl Cycle {
    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn is_two_cycle(&self) -> bool {
        self.edges.len() == 2
    }
}

/// A perfect matching plus the cycles of the remaining 2-factor.
#[derive(Debug, Clone)]
pub struct Decomposition {
    /// Matching edge ids, ascending.
    pub matching: Vec<EdgeId>,
    pub cycles: Vec<Cycle>,
    matched_at_a: Vec<EdgeId>,
    matched_at_b: Vec<EdgeId>,
    in_matching: Vec<bool>,
}

impl Decomposition {
    /// Assembles and validates a decomposition: the matching must cover
    /// every vertex exactly once and the cycles must partition the non-
    /// matching edges into closed alternating walks.
    pub fn new(
        inst: &DistortionInstance,
        mut matching: Vec<EdgeId>,
        cycles: Vec<Cycle>,
    ) -> Result<Self, Error> {
        matching.sort_unstable();
        let mut matched_at_a = vec![usize::MAX; inst.size_a];
        let mut matched_at_b = vec![usize::MAX; inst.size_b];
        let mut in_matching = vec![false; inst.num_edges()];
        for &m in &matching {
            let e = inst.edges.get(m).ok_or(Error::UnknownEdge { edge: m })?;
            if in_matching[m] || matched_at_a[e.a] != usize::MAX {
                return Err(Error::NoPerfectMatching {
                    side: Side::A,
                    vertex: e.a,
                });
            }
            if matched_at_b[e.b] != usize::MAX {
                return Err(Error::NoPerfectMatching {
                    side: Side::B,
                    vertex: e.b,
                });
            }
            in_matching[m] = true;
            matched_at_a[e.a] = m;
            matched_at_b[e.b] = m;
        }
        if let Some(v) = matched_at_a.iter().position(|&m| m == usize::MAX) {
            return Err(Error::NoPerfectMatching {
                side: Side::A,
                vertex: v,
            });
        }
        if let Some(v) = matched_at_b.iter().position(|&m| m == usize::MAX) {
            return Err(Error::NoPerfectMatching {
                side: Side::B,
                vertex: v,
            });
        }

        let mut seen = vec![false; inst.num_edges()];
        for cycle in &cycles {
            validate_cycle(inst, cycle, &in_matching, &mut seen)?;
        }
        if let Some(e) = (0..inst.num_edges()).find(|&e| !in_matching[e] && !seen[e]) {
            return Err(Error::NotTwoRegular {
                side: Side::A,
                vertex: inst.edges[e].a,
                slots: 1,
            });
        }

        Ok(Decomposition {
            matching,
            cycles,
            matched_at_a,
            matched_at_b,
            in_matching,
        })
    }

    pub fn matching_edge_at_a(&self, a: usize) -> EdgeId {
        self.matched_at_a[a]
    }

    pub fn matching_edge_at_b(&self, b: usize) -> EdgeId {
        self.matched_at_b[b]
    }

    pub fn is_matching_edge(&self, e: EdgeId) -> bool {
        self.in_matching[e]
    }
}

fn validate_cycle(
    inst: &DistortionInstance,
    cycle: &Cycle,
    in_matching: &[bool],
    seen: &mut [bool],
) -> Result<(), Error> {
    let len = cycle.edges.len();
    if len < 2 || !len.is_multiple_of(2) || cycle.vertices.len() != len {
        return Err(Error::NotTwoRegular {
            side: Side::A,
            vertex: *cycle.vertices.first().unwrap_or(&0),
            slots: len,
        });
    }
    for (i, &e) in cycle.edges.iter().enumerate() {
        let edge = inst.edges.get(e).ok_or(Error::UnknownEdge { edge: e })?;
        if in_matching[e] || seen[e] {
            return Err(Error::NotTwoRegular {
                side: Side::A,
                vertex: edge.a,
                slots: 3,
            });
        }
        seen[e] = true;
        // alternation: even positions hold A-vertices
        let lo = cycle.vertices[i];
        let hi = cycle.vertices[(i + 1) % len];
        let (va, vb) = if i % 2 == 0 { (lo, hi) } else { (hi, lo) };
        if edge.a != va || edge.b != vb {
            return Err(Error::NotTwoRegular {
                side: Side::A,
                vertex: edge.a,
                slots: 2,
            });
        }
    }
    Ok(())
}

/// Finds a perfect matching by phase-based augmenting-path search
/// (Hopcroft–Karp) directly on the multigraph.
///
/// Vertex and edge scans run in ascending order, so the result is a
/// deterministic function of the instance. Fails with the lowest
/// uncoverable vertex when no perfect matching exists, which cannot happen
/// on cubic input.
pub fn perfect_matching(inst: &DistortionInstance) -> Result<Vec<EdgeId>, Error> {
    let n_a = inst.size_a;
    let n_b = inst.size_b;
    let mut adj: Vec<Vec<(usize, EdgeId)>> = vec![Vec::new(); n_a];
    for e in &inst.edges {
        adj[e.a].push((e.b, e.id));
    }

    const INF: u32 = u32::MAX;
    let mut match_a: Vec<Option<EdgeId>> = vec![None; n_a];
    let mut match_b: Vec<Option<EdgeId>> = vec![None; n_b];
    let mut dist = vec![INF; n_a];
    let mut queue = VecDeque::new();

    loop {
        // BFS phase: layer A-vertices by alternating-path distance from
        // the free ones.
        dist.fill(INF);
        queue.clear();
        for a in 0..n_a {
            if match_a[a].is_none() {
                dist[a] = 0;
                queue.push_back(a);
            }
        }
        let mut reachable_free_b = false;
        while let Some(a) = queue.pop_front() {
            for &(b, _) in &adj[a] {
                match match_b[b] {
                    None => reachable_free_b = true,
                    Some(m) => {
                        let a2 = inst.edges[m].a;
                        if dist[a2] == INF {
                            dist[a2] = dist[a] + 1;
                            queue.push_back(a2);
                        }
                    }
                }
            }
        }
        if !reachable_free_b {
            break;
        }

        // DFS phase: vertex-disjoint augmenting paths along the layers.
        // Iterative so that augmenting paths of any length fit on the
        // heap-allocated stack rather than the call stack.
        let mut cursor = vec![0usize; n_a];
        for start in 0..n_a {
            if match_a[start].is_some() {
                continue;
            }
            let mut frames: Vec<usize> = vec![start];
            let mut chosen: Vec<EdgeId> = Vec::new();
            while let Some(&a) = frames.last() {
                let mut advanced = false;
                while cursor[a] < adj[a].len() {
                    let (b, e) = adj[a][cursor[a]];
                    cursor[a] += 1;
                    match match_b[b] {
                        None => {
                            // Augment: the final edge matches (a, b); every
                            // earlier frame re-matches along its chosen edge.
                            match_a[a] = Some(e);
                            match_b[b] = Some(e);
                            for i in (0..chosen.len()).rev() {
                                let edge = chosen[i];
                                let (pa, pb) = (inst.edges[edge].a, inst.edges[edge].b);
                                match_a[pa] = Some(edge);
                                match_b[pb] = Some(edge);
                            }
                            frames.clear();
                            chosen.clear();
                            advanced = true;
                            break;
                        }
                        Some(m) => {
                            let a2 = inst.edges[m].a;
                            if dist[a2] == dist[a] + 1 {
                                frames.push(a2);
                                chosen.push(e);
                                advanced = true;
                                break;
                            }
                        }
                    }
                }
                if !advanced {
                    dist[a] = INF; // dead end, prune for this phase
                    frames.pop();
                    chosen.pop();
                }
            }
        }
    }

    if let Some(v) = match_a.iter().position(Option::is_none) {
        return Err(Error::NoPerfectMatching {
            side: Side::A,
            vertex: v,
        });
    }
    if let Some(v) = match_b.iter().position(Option::is_none) {
        return Err(Error::NoPerfectMatching {
            side: Side::B,
            vertex: v,
        });
    }
    let mut matching: Vec<EdgeId> = match_a.into_iter().flatten().collect();
    matching.sort_unstable();
    Ok(matching)
}

/// Walks the non-matching edges into cycles.
///
/// Each vertex must have exactly 0 or 2 non-matching edges. Traversal
/// starts at the lowest-indexed A-vertex with unused slots and always
/// follows the lowest-id unused edge, so the cycle list and each cycle's
/// orientation are deterministic.
pub fn cycle_decomposition(
    inst: &DistortionInstance,
    matching: &[EdgeId],
) -> Result<Vec<Cycle>, Error> {
    let mut in_matching = vec![false; inst.num_edges()];
    for &m in matching {
        if m >= inst.num_edges() {
            return Err(Error::UnknownEdge { edge: m });
        }
        in_matching[m] = true;
    }

    let mut slots_a: Vec<Vec<EdgeId>> = vec![Vec::new(); inst.size_a];
    let mut slots_b: Vec<Vec<EdgeId>> = vec![Vec::new(); inst.size_b];
    for e in &inst.edges {
        if !in_matching[e.id] {
            slots_a[e.a].push(e.id);
            slots_b[e.b].push(e.id);
        }
    }
    for (v, s) in slots_a.iter().enumerate() {
        if !s.is_empty() && s.len() != 2 {
            return Err(Error::NotTwoRegular {
                side: Side::A,
                vertex: v,
                slots: s.len(),
            });
        }
    }
    for (v, s) in slots_b.iter().enumerate() {
        if !s.is_empty() && s.len() != 2 {
            return Err(Error::NotTwoRegular {
                side: Side::B,
                vertex: v,
                slots: s.len(),
            });
        }
    }

    let mut used = vec![false; inst.num_edges()];
    let mut cycles = Vec::new();
    for start in 0..inst.size_a {
        if slots_a[start].is_empty() || used[slots_a[start][0]] {
            continue;
        }
        let mut edges = Vec::new();
        let mut vertices = vec![start];
        let mut at_a = true;
        let mut current = start;
        loop {
            let slots = if at_a {
                &slots_a[current]
            } else {
                &slots_b[current]
            };
            let e = *slots
                .iter()
                .find(|&&e| !used[e])
                .expect("2-regularity leaves an exit slot at every arrival");
            used[e] = true;
            edges.push(e);
            let next = if at_a {
                inst.edges[e].b
            } else {
                inst.edges[e].a
            };
            at_a = !at_a;
            if at_a && next == start {
                break;
            }
            vertices.push(next);
            current = next;
        }
        cycles.push(Cycle { edges, vertices });
    }
    Ok(cycles)
}

/// Runs matching extraction and cycle decomposition in one step.
pub fn decompose(inst: &DistortionInstance) -> Result<Decomposition, Error> {
    let matching = perfect_matching(inst)?;
    let cycles = cycle_decomposition(inst, &matching)?;
    Decomposition::new(inst, matching, cycles)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::distortion::Distortion;

    fn triple_edge() -> DistortionInstance {
        let mut inst = DistortionInstance::new(3, 1, 1);
        for k in 0..3 {
            inst.add_edge(0, 0, Distortion::delay(k, 3));
        }
        inst
    }

    fn cubic_2x2() -> DistortionInstance {
        let mut inst = DistortionInstance::new(3, 2, 2);
        for (a, b) in [(0, 0), (0, 0), (0, 1), (1, 0), (1, 1), (1, 1)] {
            inst.add_edge(a, b, Distortion::identity(3));
        }
        inst
    }

    fn k33() -> DistortionInstance {
        let mut inst = DistortionInstance::new(3, 3, 3);
        for a in 0..3 {
            for b in 0..3 {
                inst.add_edge(a, b, Distortion::identity(3));
            }
        }
        inst
    }

    fn assert_perfect(inst: &DistortionInstance, matching: &[EdgeId]) {
        assert_eq!(matching.len(), inst.size_a);
        let mut sub = DistortionInstance::new(inst.d, inst.size_a, inst.size_b);
        for &m in matching {
            let e = &inst.edges[m];
            sub.add_edge(e.a, e.b, e.distortion.clone());
        }
        let (da, db) = sub.vertex_degrees();
        assert!(da.iter().all(|&d| d == 1));
        assert!(db.iter().all(|&d| d == 1));
    }

    #[test]
    fn matching_on_parallel_triple() {
        let inst = triple_edge();
        let m = perfect_matching(&inst).unwrap();
        assert_eq!(m, vec![0]); // deterministic: lowest id
        assert_perfect(&inst, &m);
    }

    #[test]
    fn matching_on_k33() {
        let inst = k33();
        let m = perfect_matching(&inst).unwrap();
        assert_perfect(&inst, &m);
    }

    #[test]
    fn matching_on_cubic_2x2() {
        let inst = cubic_2x2();
        let m = perfect_matching(&inst).unwrap();
        assert_perfect(&inst, &m);
    }

    #[test]
    fn matching_failure_names_vertex() {
        // A0 and A1 can only reach B0
        let mut inst = DistortionInstance::new(3, 2, 2);
        inst.add_edge(0, 0, Distortion::identity(3));
        inst.add_edge(1, 0, Distortion::identity(3));
        match perfect_matching(&inst) {
            Err(Error::NoPerfectMatching { vertex, .. }) => assert!(vertex <= 1),
            other => panic!("expected failure, got {other:?}"),
        }
    }

    #[test]
    fn two_cycle_from_parallel_triple() {
        let inst = triple_edge();
        let m = perfect_matching(&inst).unwrap();
        let cycles = cycle_decomposition(&inst, &m).unwrap();
        assert_eq!(cycles.len(), 1);
        assert_eq!(cycles[0].edges, vec![1, 2]);
        assert_eq!(cycles[0].vertices, vec![0, 0]);
        assert!(cycles[0].is_two_cycle());
    }

    #[test]
    fn cycles_partition_the_two_factor() {
        for inst in [cubic_2x2(), k33(), triple_edge()] {
            let decomp = decompose(&inst).unwrap();
            let total: usize = decomp.cycles.iter().map(Cycle::len).sum();
            assert_eq!(total, 2 * inst.size_a);
            for c in &decomp.cycles {
                assert_eq!(c.len() % 2, 0);
                assert!(c.len() >= 2);
            }
            let mut seen = vec![false; inst.num_edges()];
            for &m in &decomp.matching {
                seen[m] = true;
            }
            for c in &decomp.cycles {
                for &e in &c.edges {
                    assert!(!seen[e], "edge {e} reused");
                    seen[e] = true;
                }
            }
            assert!(seen.iter().all(|&s| s));
        }
    }

    #[test]
    fn decomposition_is_deterministic() {
        let inst = k33();
        let d1 = decompose(&inst).unwrap();
        let d2 = decompose(&inst).unwrap();
        assert_eq!(d1.matching, d2.matching);
        assert_eq!(d1.cycles, d2.cycles);
    }

    #[test]
    fn non_two_regular_remainder_rejected() {
        let mut inst = DistortionInstance::new(3, 1, 1);
        inst.add_edge(0, 0, Distortion::identity(3));
        inst.add_edge(0, 0, Distortion::identity(3));
        // matching empty: both vertices keep two slots, fine; matching all:
        // odd leftover at the other copy is impossible here, so drop one id
        let err = cycle_decomposition(&inst, &[0]).unwrap_err();
        assert!(matches!(err, Error::NotTwoRegular { slots: 1, .. }));
    }

    #[test]
    fn decomposition_validates_coverage() {
        let inst = triple_edge();
        let cycles = cycle_decomposition(&inst, &[0]).unwrap();
        assert!(Decomposition::new(&inst, vec![0], cycles.clone()).is_ok());
        // matching that misses A0 entirely
        assert!(Decomposition::new(&inst, vec![], cycles).is_err());
    }
}
