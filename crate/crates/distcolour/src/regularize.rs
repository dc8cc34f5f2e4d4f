//! Embedding an instance of maximum degree 3 into a cubic one.
//!
//! Dummy vertices pad the smaller class until the classes balance, then
//! dummy edges (identity distortion, parallel copies allowed) fill every
//! remaining degree slot. The original edges survive bit-identically as a
//! prefix, so a colouring of the cubic instance restricts to one of the
//! original.

use crate::distortion::Distortion;
use crate::error::Error;
use crate::instance::{DistortionInstance, EdgeColouring};

#[derive(Debug, Clone)]
pub struct RegularizedInstance {
    /// 3-regular on both sides, equal class sizes.
    pub cubic: DistortionInstance,
    /// Edges with id below this are the input's, unchanged and in order.
    pub original_edge_count: usize,
    pub added_vertices_a: usize,
    pub added_vertices_b: usize,
}

impl RegularizedInstance {
    /// Restricts a colouring of the cubic instance to the original edges.
    /// Dropping edges never creates conflicts, so properness carries over.
    pub fn strip(&self, f: &EdgeColouring) -> EdgeColouring {
        let colours = (0..self.original_edge_count)
            .map(|e| f.get(e).expect("cubic colouring is fully assigned"))
            .collect();
        EdgeColouring::from_colours(colours)
    }
}

/// Embeds `inst` (max degree 3, d = 3) into a cubic instance.
///
/// Deficient vertices are paired in ascending index order and dummy
/// vertices are appended after real ones, so the output is a deterministic
/// function of the input.
pub fn regularize(inst: &DistortionInstance) -> Result<RegularizedInstance, Error> {
    if inst.d != 3 {
        return Err(Error::UnsupportedColourCount { d: inst.d });
    }
    inst.validate()?;

    let size = inst.size_a.max(inst.size_b);
    let mut cubic = DistortionInstance::new(3, size, size);
    cubic.edges = inst.edges.clone();

    let (mut deg_a, mut deg_b) = inst.vertex_degrees();
    deg_a.resize(size, 0);
    deg_b.resize(size, 0);

    // Equal class sizes make the two total deficits equal, so advancing
    // two cursors in lockstep fills every slot.
    let mut next_a = 0;
    let mut next_b = 0;
    loop {
        while next_a < size && deg_a[next_a] == 3 {
            next_a += 1;
        }
        while next_b < size && deg_b[next_b] == 3 {
            next_b += 1;
        }
        if next_a == size || next_b == size {
            break;
        }
        let id = cubic.add_edge(next_a, next_b, Distortion::identity(3));
        cubic.edges[id].dummy = true;
        deg_a[next_a] += 1;
        deg_b[next_b] += 1;
    }
    debug_assert!(deg_a.iter().all(|&d| d == 3) && deg_b.iter().all(|&d| d == 3));

    Ok(RegularizedInstance {
        cubic,
        original_edge_count: inst.num_edges(),
        added_vertices_a: size - inst.size_a,
        added_vertices_b: size - inst.size_b,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Side;

    fn assert_cubic(reg: &RegularizedInstance) {
        assert_eq!(reg.cubic.size_a, reg.cubic.size_b);
        let (da, db) = reg.cubic.vertex_degrees();
        assert!(da.iter().all(|&d| d == 3), "A degrees {da:?}");
        assert!(db.iter().all(|&d| d == 3), "B degrees {db:?}");
        for e in &reg.cubic.edges[reg.original_edge_count..] {
            assert!(e.dummy);
        }
        for e in &reg.cubic.edges[..reg.original_edge_count] {
            assert!(!e.dummy);
        }
    }

    #[test]
    fn already_cubic_unchanged() {
        let mut inst = DistortionInstance::new(3, 1, 1);
        for k in 0..3 {
            inst.add_edge(0, 0, Distortion::delay(k, 3));
        }
        let reg = regularize(&inst).unwrap();
        assert_cubic(&reg);
        assert_eq!(reg.cubic.edges, inst.edges);
        assert_eq!(reg.added_vertices_a + reg.added_vertices_b, 0);
    }

    #[test]
    fn single_edge_gets_two_parallel_dummies() {
        let mut inst = DistortionInstance::new(3, 1, 1);
        inst.add_edge(0, 0, Distortion::delay(2, 3));
        let reg = regularize(&inst).unwrap();
        assert_cubic(&reg);
        assert_eq!(reg.cubic.num_edges(), 3);
        assert!(reg.cubic.edges[1..].iter().all(|e| e.a == 0 && e.b == 0));
    }

    #[test]
    fn unbalanced_classes_get_padded() {
        let mut inst = DistortionInstance::new(3, 2, 1);
        inst.add_edge(0, 0, Distortion::identity(3));
        inst.add_edge(1, 0, Distortion::identity(3));
        let reg = regularize(&inst).unwrap();
        assert_cubic(&reg);
        assert_eq!(reg.cubic.size_b, 2);
        assert_eq!(reg.added_vertices_b, 1);
        // 3·2 slots per side minus 2 real edges
        assert_eq!(reg.cubic.num_edges() - reg.original_edge_count, 4);
    }

    #[test]
    fn dummy_count_formula_holds() {
        let mut inst = DistortionInstance::new(3, 3, 2);
        inst.add_edge(0, 0, Distortion::identity(3));
        inst.add_edge(1, 1, Distortion::delay(1, 3));
        inst.add_edge(2, 1, Distortion::delay(3, 3));
        let reg = regularize(&inst).unwrap();
        assert_cubic(&reg);
        let added = reg.cubic.num_edges() - reg.original_edge_count;
        assert_eq!(added, 3 * reg.cubic.size_a - inst.num_edges());
    }

    #[test]
    fn empty_instance_stays_empty() {
        let inst = DistortionInstance::new(3, 0, 0);
        let reg = regularize(&inst).unwrap();
        assert_eq!(reg.cubic.num_edges(), 0);
        assert_eq!(reg.cubic.size_a, 0);
    }

    #[test]
    fn rejects_wrong_colour_count() {
        let inst = DistortionInstance::new(2, 1, 1);
        assert!(matches!(
            regularize(&inst),
            Err(Error::UnsupportedColourCount { d: 2 })
        ));
    }

    #[test]
    fn rejects_degree_over_three() {
        let mut inst = DistortionInstance::new(3, 4, 1);
        // B0 ends up with degree 4
        for a in 0..4 {
            inst.add_edge(a, 0, Distortion::identity(3));
        }
        assert!(matches!(
            regularize(&inst),
            Err(Error::DegreeTooHigh {
                side: Side::B,
                vertex: 0,
                ..
            })
        ));
    }

    #[test]
    fn strip_restores_prefix() {
        let mut inst = DistortionInstance::new(3, 1, 1);
        inst.add_edge(0, 0, Distortion::identity(3));
        let reg = regularize(&inst).unwrap();
        let f = EdgeColouring::from_colours(vec![2, 0, 1]);
        let stripped = reg.strip(&f);
        assert_eq!(stripped.len(), 1);
        assert_eq!(stripped.get(0), Some(2));
    }
}
