use super::bits::Payload;
use super::tree::TreeLink;
use super::{NodeContext, NodeProgram};
use crate::graph::NodeId;

/// A node's place in the BFS tree.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BfsInfo {
    pub parent: Option<NodeId>,
    pub depth: u64,
}

/// Builds a BFS tree from `root` by flooding. Each node outputs as soon as
/// it joins; a run takes `e(root) + 2` rounds.
#[derive(Debug, Clone)]
pub struct BfsTree {
    link: TreeLink,
}

impl BfsTree {
    pub fn new(ctx: &NodeContext, root: NodeId) -> BfsTree {
        BfsTree {
            link: TreeLink::new(ctx, ctx.id == root),
        }
    }
}

impl NodeProgram for BfsTree {
    type Output = BfsInfo;

    fn on_round(&mut self, round: u64, inbox: &[(NodeId, Payload)]) -> Vec<(NodeId, Payload)> {
        match self.link.absorb(round, inbox).0 {
            Some(body) => self.link.announce(&body),
            None => Vec::new(),
        }
    }

    fn output(&self) -> Option<BfsInfo> {
        Some(BfsInfo {
            parent: self.link.parent,
            depth: self.link.depth?,
        })
    }
}
