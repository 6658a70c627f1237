//! BFS-tree bookkeeping shared by the tree-based programs.
//!
//! Every payload starts with a 2-bit kind. The root joins in round 1 and
//! sends `Join` to all neighbours. A node that first hears `Join` in round
//! `r` takes the smallest sender as parent, has depth `r - 1`, and in the
//! same round sends `Join` to its other neighbours and `Ack` to its parent.
//! A node that joined in round `j` therefore knows all its children from
//! round `j + 2` on.

use super::bits::{push_bits, BitReader, Payload};
use super::NodeContext;
use crate::graph::NodeId;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Kind {
    Join = 0,
    Ack = 1,
    Up = 2,
    Down = 3,
}

pub(crate) fn message(kind: Kind, body: &Payload) -> Payload {
    let mut p = Payload::with_capacity(2 + body.len());
    push_bits(&mut p, kind as u64, 2);
    p.extend_from_bitslice(body);
    p
}

/// Splits a payload into its kind and body.
pub(crate) fn open(p: &Payload) -> Option<(Kind, Payload)> {
    let kind = match BitReader::new(p).read(2)? {
        0 => Kind::Join,
        1 => Kind::Ack,
        2 => Kind::Up,
        _ => Kind::Down,
    };
    Some((kind, p[2..].to_bitvec()))
}

#[derive(Debug, Clone)]
pub(crate) struct TreeLink {
    pub is_root: bool,
    pub neighbors: Vec<NodeId>,
    pub parent: Option<NodeId>,
    pub depth: Option<u64>,
    pub joined: Option<u64>,
    pub children: Vec<NodeId>,
}

impl TreeLink {
    pub fn new(ctx: &NodeContext, is_root: bool) -> TreeLink {
        TreeLink {
            is_root,
            neighbors: ctx.neighbor_ids().collect(),
            parent: None,
            depth: None,
            joined: None,
            children: Vec::new(),
        }
    }

    /// Consumes the `Join`/`Ack` messages of a round. Returns the body of
    /// the `Join` this node joined through, or an empty body for the root in
    /// round 1, if the node joined in this round. All other messages are
    /// returned untouched as `(sender, kind, body)`.
    pub fn absorb(
        &mut self,
        round: u64,
        inbox: &[(NodeId, Payload)],
    ) -> (Option<Payload>, Vec<(NodeId, Kind, Payload)>) {
        let mut joined_via = None;
        if self.is_root && round == 1 {
            self.depth = Some(0);
            self.joined = Some(1);
            joined_via = Some(Payload::new());
        }
        let mut rest = Vec::new();
        for (from, p) in inbox {
            let Some((kind, body)) = open(p) else { continue };
            match kind {
                Kind::Join => {
                    if self.joined.is_none() {
                        // Inbox is sorted by sender, so the first join wins.
                        self.parent = Some(*from);
                        self.depth = Some(round - 1);
                        self.joined = Some(round);
                        joined_via = Some(body);
                    }
                }
                Kind::Ack => self.children.push(*from),
                _ => rest.push((*from, kind, body)),
            }
        }
        (joined_via, rest)
    }

    /// `Join(body)` to every neighbour except the parent, `Ack` to the parent.
    pub fn announce(&self, body: &Payload) -> Vec<(NodeId, Payload)> {
        self.neighbors
            .iter()
            .map(|&v| {
                if Some(v) == self.parent {
                    (v, message(Kind::Ack, &Payload::new()))
                } else {
                    (v, message(Kind::Join, body))
                }
            })
            .collect()
    }

    pub fn children_known(&self, round: u64) -> bool {
        self.joined.is_some_and(|j| round >= j + 2)
    }

    /// Whether the `Ack` to the parent went out in an earlier round, so the
    /// parent edge is free for other traffic.
    pub fn can_send_up(&self, round: u64) -> bool {
        self.joined.is_some_and(|j| round > j)
    }
}
