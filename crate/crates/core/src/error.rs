use thiserror::Error;

use crate::graph::Violation;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("vertex {vertex} outside 1..={n}")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("parameters out of range: {0}")]
    ParamsOutOfRange(String),

    #[error("parameter mismatch: {0}")]
    ParamsMismatch(String),

    #[error("edge {u}-{v} spans {} > k = {k}", u.abs_diff(*v))]
    BandwidthViolated { u: usize, v: usize, k: usize },

    #[error("edge {u}-{v} is not an edge of the host graph")]
    NotSubgraph { u: usize, v: usize },

    #[error("deg(v_1) = {degree} < l = {required}")]
    RootDegreeTooSmall { degree: usize, required: usize },

    #[error("path endpoint v_{endpoint} is not adjacent to the last vertex")]
    EndpointNotAdjacentToLastVertex { endpoint: usize },

    #[error("vertex v_{vertex} is covered by no path")]
    CoverageGap { vertex: usize },

    #[error("the last vertex is covered but is not the endpoint of any path")]
    LastVertexNotEndpoint,

    #[error("host graph fails the condition it is sampled under ({0})")]
    HostFailsCondition(Violation),

    #[error("instance has {n} vertices, above the oracle cap {cap}")]
    TooLarge { n: usize, cap: usize },

    #[error("roots {u} and {v} are adjacent")]
    RootsAdjacent { u: usize, v: usize },

    #[error("sandwich failed (lower_ok = {lower_ok}, upper_ok = {upper_ok})")]
    SandwichFailed { lower_ok: bool, upper_ok: bool },

    #[error("(1+eps)nr = {threshold:.3} is below k_high + 2 = {required}")]
    ThresholdGap { threshold: f64, required: usize },

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}
