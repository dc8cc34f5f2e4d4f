//! Core data model: bipartite multigraph instances with per-edge
//! distortions, edge colourings, the properness verifier, and the JSON
//! wire formats used by the CLI.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::distortion::{Colour, Distortion};
use crate::error::{Error, Side};

/// Dense edge index. Parallel edges share endpoints but never ids.
pub type EdgeId = usize;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Edge {
    pub id: EdgeId,
    /// Endpoint in class A.
    pub a: usize,
    /// Endpoint in class B.
    pub b: usize,
    pub distortion: Distortion,
    /// Set only by the regularizer; stripped from final colourings.
    pub dummy: bool,
}

/// A bipartite multigraph with classes A and B, colour set `{0, …, d}`,
/// and a distortion on every edge.
///
/// Construction does not validate; call [`DistortionInstance::validate`]
/// before feeding untrusted data to the solver. Everything is immutable
/// after construction, so instances can be shared freely across threads.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistortionInstance {
    pub d: u8,
    pub size_a: usize,
    pub size_b: usize,
    pub edges: Vec<Edge>,
}

impl DistortionInstance {
    pub fn new(d: u8, size_a: usize, size_b: usize) -> Self {
        DistortionInstance {
            d,
            size_a,
            size_b,
            edges: Vec::new(),
        }
    }

    /// Appends an edge and returns its dense id.
    pub fn add_edge(&mut self, a: usize, b: usize, distortion: Distortion) -> EdgeId {
        let id = self.edges.len();
        self.edges.push(Edge {
            id,
            a,
            b,
            distortion,
            dummy: false,
        });
        id
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    /// Per-vertex degrees counting parallel edges, over A then B.
    pub fn vertex_degrees(&self) -> (Vec<usize>, Vec<usize>) {
        let mut deg_a = vec![0; self.size_a];
        let mut deg_b = vec![0; self.size_b];
        for e in &self.edges {
            deg_a[e.a] += 1;
            deg_b[e.b] += 1;
        }
        (deg_a, deg_b)
    }

    /// Checks the structural invariants: endpoints in range, every
    /// distortion a permutation of `{0, …, d}`, every degree at most `d`.
    pub fn validate(&self) -> Result<(), Error> {
        for e in &self.edges {
            if e.a >= self.size_a {
                return Err(Error::EndpointOutOfRange {
                    edge: e.id,
                    side: Side::A,
                    vertex: e.a,
                    size: self.size_a,
                });
            }
            if e.b >= self.size_b {
                return Err(Error::EndpointOutOfRange {
                    edge: e.id,
                    side: Side::B,
                    vertex: e.b,
                    size: self.size_b,
                });
            }
            if e.distortion.len() != self.d as usize + 1 {
                return Err(Error::DistortionSizeMismatch {
                    edge: e.id,
                    got: e.distortion.len(),
                    want: self.d as usize + 1,
                });
            }
        }
        let (deg_a, deg_b) = self.vertex_degrees();
        let limit = self.d as usize;
        if let Some(v) = deg_a.iter().position(|&x| x > limit) {
            return Err(Error::DegreeTooHigh {
                side: Side::A,
                vertex: v,
                degree: deg_a[v],
                limit,
            });
        }
        if let Some(v) = deg_b.iter().position(|&x| x > limit) {
            return Err(Error::DegreeTooHigh {
                side: Side::B,
                vertex: v,
                degree: deg_b[v],
                limit,
            });
        }
        Ok(())
    }

    /// Decodes the JSON instance format and validates the result.
    ///
    /// Schema: `{"d":3,"size_a":N,"size_b":M,"edges":[{"a":i,"b":j,"perm":
    /// [p0,…]} | {"a":i,"b":j,"delay":k}, …]}`. A `delay` of `k` is
    /// shorthand for the permutation `i ↦ (i+k) mod (d+1)`.
    pub fn from_json(text: &str) -> Result<Self, Error> {
        let wire: InstanceWire = serde_json::from_str(text)?;
        let mut inst = DistortionInstance::new(wire.d, wire.size_a, wire.size_b);
        for (i, ew) in wire.edges.into_iter().enumerate() {
            let distortion = match (ew.perm, ew.delay) {
                (Some(image), None) => Distortion::new(image)?,
                (None, Some(k)) => Distortion::delay(k, wire.d),
                _ => return Err(Error::AmbiguousEdgeSpec { edge: i }),
            };
            inst.add_edge(ew.a, ew.b, distortion);
        }
        inst.validate()?;
        Ok(inst)
    }

    /// Encodes to the JSON instance format, always in explicit `perm` form.
    pub fn to_json(&self) -> String {
        let wire = InstanceWire {
            d: self.d,
            size_a: self.size_a,
            size_b: self.size_b,
            edges: self
                .edges
                .iter()
                .map(|e| EdgeWire {
                    a: e.a,
                    b: e.b,
                    perm: Some(e.distortion.image().to_vec()),
                    delay: None,
                })
                .collect(),
        };
        serde_json::to_string(&wire).expect("instance serialization cannot fail")
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct InstanceWire {
    d: u8,
    size_a: usize,
    size_b: usize,
    edges: Vec<EdgeWire>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub(crate) struct EdgeWire {
    pub a: usize,
    pub b: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub perm: Option<Vec<u8>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub delay: Option<i64>,
}

/// Per-edge A-side colours, indexed by edge id. Entries may stay
/// unassigned while a colouring is under construction; B-side values are
/// always derived through the edge's distortion, never stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeColouring {
    slots: Vec<Option<Colour>>,
}

impl EdgeColouring {
    pub fn unassigned(num_edges: usize) -> Self {
        EdgeColouring {
            slots: vec![None; num_edges],
        }
    }

    pub fn from_colours(colours: Vec<Colour>) -> Self {
        EdgeColouring {
            slots: colours.into_iter().map(Some).collect(),
        }
    }

    /// Builds a colouring for `inst` from raw file entries, checking length
    /// and colour range.
    pub fn for_instance(inst: &DistortionInstance, colours: Vec<Colour>) -> Result<Self, Error> {
        if colours.len() != inst.num_edges() {
            return Err(Error::LengthMismatch {
                got: colours.len(),
                want: inst.num_edges(),
            });
        }
        if let Some(&value) = colours.iter().find(|&&c| c > inst.d) {
            return Err(Error::ColourOutOfRange { value, d: inst.d });
        }
        Ok(Self::from_colours(colours))
    }

    pub fn len(&self) -> usize {
        self.slots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.slots.is_empty()
    }

    pub fn get(&self, e: EdgeId) -> Option<Colour> {
        self.slots.get(e).copied().flatten()
    }

    /// Assigns a fresh slot; refuses to overwrite.
    pub fn try_assign(&mut self, e: EdgeId, c: Colour) -> Result<(), Error> {
        match self.slots.get_mut(e) {
            None => Err(Error::UnknownEdge { edge: e }),
            Some(Some(_)) => Err(Error::DoubleAssignment { edge: e }),
            Some(slot) => {
                *slot = Some(c);
                Ok(())
            }
        }
    }

    /// Overwrites a slot unconditionally. Test harnesses use this to plant
    /// adversarial matching colours; the engine itself never overwrites.
    pub fn set(&mut self, e: EdgeId, c: Colour) {
        self.slots[e] = Some(c);
    }

    pub fn is_complete(&self) -> bool {
        self.slots.iter().all(Option::is_some)
    }

    /// Decodes the JSON colouring format `{"colours":[c0,c1,…]}` against an
    /// instance (entries indexed by the instance's edge order).
    pub fn from_json(inst: &DistortionInstance, text: &str) -> Result<Self, Error> {
        let wire: ColouringWire = serde_json::from_str(text)?;
        Self::for_instance(inst, wire.colours)
    }

    /// Encodes to `{"colours":[…]}`. All entries must be assigned.
    pub fn to_json(&self) -> Result<String, Error> {
        let colours: Option<Vec<Colour>> = self.slots.iter().copied().collect();
        match colours {
            Some(colours) => Ok(serde_json::to_string(&ColouringWire { colours })?),
            None => {
                let edge = self.slots.iter().position(Option::is_none).unwrap();
                Err(Error::MatchingNotColoured { edge })
            }
        }
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ColouringWire {
    colours: Vec<Colour>,
}

/// One properness defect. `verify_colouring` returns every defect, so an
/// empty list is a proof that the colouring is a proper
/// distortion-colouring.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    Unassigned {
        edge: EdgeId,
    },
    /// Two edges at an A-vertex share their A-side colour.
    ASideClash {
        vertex: usize,
        colour: Colour,
        edges: (EdgeId, EdgeId),
    },
    /// Two edges at a B-vertex share their distorted (B-side) colour.
    BSideClash {
        vertex: usize,
        colour: Colour,
        edges: (EdgeId, EdgeId),
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Unassigned { edge } => write!(f, "edge {edge} unassigned"),
            Violation::ASideClash {
                vertex,
                colour,
                edges,
            } => write!(
                f,
                "A-side clash at A{vertex}: colour {colour} on edges {} and {}",
                edges.0, edges.1
            ),
            Violation::BSideClash {
                vertex,
                colour,
                edges,
            } => write!(
                f,
                "B-side clash at B{vertex}: colour {colour} on edges {} and {}",
                edges.0, edges.1
            ),
        }
    }
}

/// Checks properness: around every A-vertex the A-side colours are
/// pairwise distinct, and around every B-vertex the distorted colours are
/// pairwise distinct. Unassigned edges are reported separately and skipped
/// by the clash checks.
pub fn verify_colouring(inst: &DistortionInstance, f: &EdgeColouring) -> Vec<Violation> {
    let mut violations = Vec::new();
    for e in &inst.edges {
        if e.id >= f.len() || f.get(e.id).is_none() {
            violations.push(Violation::Unassigned { edge: e.id });
        }
    }

    let mut at_a: Vec<Vec<(EdgeId, Colour)>> = vec![Vec::new(); inst.size_a];
    let mut at_b: Vec<Vec<(EdgeId, Colour)>> = vec![Vec::new(); inst.size_b];
    for e in &inst.edges {
        if let Some(c) = f.get(e.id) {
            at_a[e.a].push((e.id, c));
            at_b[e.b].push((e.id, e.distortion.apply(c)));
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
