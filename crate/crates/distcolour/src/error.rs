use std::fmt;

use serde::Serialize;

use crate::instance::{DistortionInstance, EdgeColouring};

/// Which class of the bipartition a vertex belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Side {
    A,
    B,
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Side::A => write!(f, "A"),
            Side::B => write!(f, "B"),
        }
    }
}

/// Full context captured when a theorem sentinel fires: the instance being
/// coloured and the partial colouring at the point of failure. Serialized
/// verbatim into bug-report dumps.
#[derive(Debug, Clone, Serialize)]
pub struct DiagnosticDump {
    pub stage: String,
    pub d: u8,
    pub size_a: usize,
    pub size_b: usize,
    pub edges: Vec<DumpEdge>,
    pub partial_colouring: Vec<Option<u8>>,
}

#[derive(Debug, Clone, Serialize)]
pub struct DumpEdge {
    pub a: usize,
    pub b: usize,
    pub perm: Vec<u8>,
    pub dummy: bool,
}

impl DiagnosticDump {
    pub fn new(stage: &str, inst: &DistortionInstance, partial: &EdgeColouring) -> Self {
        DiagnosticDump {
            stage: stage.to_owned(),
            d: inst.d,
            size_a: inst.size_a,
            size_b: inst.size_b,
            edges: inst
                .edges
                .iter()
                .map(|e| DumpEdge {
                    a: e.a,
                    b: e.b,
                    perm: e.distortion.image().to_vec(),
                    dummy: e.dummy,
                })
                .collect(),
            partial_colouring: (0..inst.edges.len()).map(|i| partial.get(i)).collect(),
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("distortion image {image:?} is not a permutation of 0..={d}")]
    NotAPermutation { image: Vec<u8>, d: u8 },

    #[error("edge {edge}: endpoint {side}{vertex} out of range (class size {size})")]
    EndpointOutOfRange {
        edge: usize,
        side: Side,
        vertex: usize,
        size: usize,
    },

    #[error("edge {edge}: distortion acts on {got} colours, instance uses {want}")]
    DistortionSizeMismatch { edge: usize, got: usize, want: usize },

    #[error("vertex {side}{vertex} has degree {degree}, above the limit {limit}")]
    DegreeTooHigh {
        side: Side,
        vertex: usize,
        degree: usize,
        limit: usize,
    },

    #[error("the constructive solver handles d=3 only, got d={d}; the oracle accepts general d")]
    UnsupportedColourCount { d: u8 },

    #[error("no perfect matching: vertex {side}{vertex} cannot be covered")]
    NoPerfectMatching { side: Side, vertex: usize },

    #[error("matching remainder is not 2-regular: vertex {side}{vertex} has {slots} spare edge slots")]
    NotTwoRegular {
        side: Side,
        vertex: usize,
        slots: usize,
    },

    #[error("edge {edge} is not part of the instance")]
    UnknownEdge { edge: usize },

    #[error("edge {edge} would be coloured twice")]
    DoubleAssignment { edge: usize },

    #[error("matching edge {edge} must be coloured before its cycle is extended")]
    MatchingNotColoured { edge: usize },

    #[error("colouring has {got} entries, instance has {want} edges")]
    LengthMismatch { got: usize, want: usize },

    #[error("colour {value} out of range 0..={d}")]
    ColourOutOfRange { value: u8, d: u8 },

    #[error("edge {edge} needs exactly one of \"perm\" or \"delay\"")]
    AmbiguousEdgeSpec { edge: usize },

    #[error("cubic generation needs size_a == size_b, got {size_a} and {size_b}")]
    UnbalancedCubic { size_a: usize, size_b: usize },

    #[error("not a Latin square: {axis} {index} repeats symbol {symbol}")]
    NotLatin { axis: Axis, index: usize, symbol: u8 },

    #[error("bad Latin square file, line {line}: {detail}")]
    BadLatinFile { line: usize, detail: String },

    #[error("only order 4 supported, square has order {n}")]
    OrderNotSupported { n: usize },

    #[error("row {row} out of range for an order-{n} square")]
    RowOutOfRange { row: usize, n: usize },

    #[error("at most {max} permutations allowed, got {got}")]
    TooManyPermutations { got: usize, max: usize },

    /// The engine ran out of options at a point the existence proof says it
    /// cannot. Unreachable on valid input; carries a reproducer dump when
    /// raised from the full pipeline.
    #[error("theorem sentinel at {stage}")]
    TheoremViolation {
        stage: String,
        dump: Option<Box<DiagnosticDump>>,
    },

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub fn sentinel(stage: impl Into<String>) -> Self {
        Error::TheoremViolation {
            stage: stage.into(),
            dump: None,
        }
    }

    /// Attach instance + partial colouring context to a sentinel raised
    /// deeper in the pipeline. Other error kinds pass through unchanged.
    pub fn with_dump(self, inst: &DistortionInstance, partial: &EdgeColouring) -> Self {
        match self {
            Error::TheoremViolation { stage, dump: None } => {
                let dump = Box::new(DiagnosticDump::new(&stage, inst, partial));
                Error::TheoremViolation {
                    stage,
                    dump: Some(dump),
                }
            }
            other => other,
        }
    }

    pub fn is_sentinel(&self) -> bool {
        matches!(self, Error::TheoremViolation { .. })
    }
}

/// Row/column discriminator for Latin square diagnostics.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axis {
    Row,
    Column,
}

impl fmt::Display for Axis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Axis::Row => write!(f, "row"),
            Axis::Column => write!(f, "column"),
        }
    }
}
