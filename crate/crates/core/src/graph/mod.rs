//! Graph representation, Alice/Bob partitions, and the text document format.

mod format;
#[allow(clippy::module_inception)]
mod graph;
mod label;

pub use format::{escape, parse_document, unescape, write_document, Document, ParseError};
pub use graph::{
    crossing_edges, Edge, Graph, GraphBuilder, IdEdge, NodeId, PartitionedGraph, Side,
};
pub use label::{LabelParseError, NodeLabel, Role, SetTag};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GraphError {
    #[error("graph has no nodes")]
    Empty,
    #[error("self-loop at {0}")]
    SelfLoop(NodeLabel),
    #[error("parallel edge between {0} and {1}")]
    ParallelEdge(NodeLabel, NodeLabel),
    #[error("edge endpoint {0} is not a node of the graph")]
    UnknownNode(NodeLabel),
    #[error("weighted graph needs a weight on edge ({0}, {1})")]
    MissingWeight(NodeLabel, NodeLabel),
    #[error("unweighted graph cannot carry a weight on edge ({0}, {1})")]
    UnexpectedWeight(NodeLabel, NodeLabel),
    #[error("weight {weight} on edge ({u}, {v}) exceeds W_max = {w_max}")]
    WeightTooLarge {
        u: NodeLabel,
        v: NodeLabel,
        weight: u64,
        w_max: u64,
    },
    #[error("side map covers {sides} nodes but the graph has {nodes}")]
    PartitionSize { nodes: usize, sides: usize },
    #[error("the {0:?} side of the partition is empty")]
    EmptySide(Side),
}
