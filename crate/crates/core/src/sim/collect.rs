//! Gather the whole graph at one node, decide a predicate there, broadcast.
//!
//! The root is the node with the smallest id. Over the BFS tree every node
//! streams its own label and the edges to larger-id neighbours upward,
//! relays its children's items as they complete, and closes with a
//! terminator once every child has closed. Items are:
//!
//! * `00` terminator
//! * `01` label: id, role (4 bits), set (4), copy (16), index (32), bit (32)
//! * `10` edge: id, id, weight (`weight_bits` bits, absent when 0)
//!
//! Ids are 1-based and `⌈log2(n+1)⌉` bits wide. Up-chunks carry up to `B - 2`
//! bits of this stream, so a run takes about `3·e(root) + (stream bits)/(B-2)` rounds.

use std::sync::Arc;

use super::bits::{bits_for, push_bits, BitReader, Payload};
use super::tree::{message, Kind, TreeLink};
use super::{NodeContext, NodeProgram};
use crate::families::FamilyInstance;
use crate::graph::{Graph, GraphBuilder, NodeId, NodeLabel, Role, SetTag};
use crate::oracles::evaluate_on;

/// Predicate decided at the root.
pub type Evaluator = Arc<dyn Fn(&Graph) -> bool + Send + Sync>;

const LABEL_BITS: u32 = 4 + 4 + 16 + 32 + 32;

#[derive(Clone)]
pub struct CollectAll {
    link: TreeLink,
    bandwidth: usize,
    id_width: u32,
    weight_bits: u32,
    evaluator: Evaluator,
    /// Non-root: bits not yet sent to the parent. Root: every item received.
    stream: Payload,
    partial: Vec<(NodeId, Payload)>,
    closed: Vec<NodeId>,
    finished: bool,
    result: Option<bool>,
    sent_down: bool,
    own: Payload,
}

/// The program for one node. `weight_bits` is the global edge-weight width
/// (0 for unweighted graphs).
pub fn collect_all(ctx: &NodeContext, weight_bits: u32, evaluator: Evaluator) -> CollectAll {
    let id_width = bits_for(ctx.n as u64);
    let mut own = Payload::new();
    push_bits(&mut own, 1, 2);
    push_label(&mut own, ctx.id, &ctx.label, id_width);
    for &(v, _, w) in &ctx.neighbors {
        if v > ctx.id {
            push_bits(&mut own, 2, 2);
            push_bits(&mut own, ctx.id.congest_id() as u64, id_width);
            push_bits(&mut own, v.congest_id() as u64, id_width);
            if weight_bits > 0 {
                push_bits(&mut own, w.unwrap_or(0), weight_bits);
            }
        }
    }
    CollectAll {
        link: TreeLink::new(ctx, ctx.id == NodeId(0)),
        bandwidth: ctx.bandwidth_bits,
        id_width,
        weight_bits,
        evaluator,
        stream: Payload::new(),
        partial: Vec::new(),
        closed: Vec::new(),
        finished: false,
        result: None,
        sent_down: false,
        own,
    }
}

/// Factory deciding the instance's predicate. Graphs in the undefined band
/// of a gap predicate, and graphs beyond an oracle's guard, decide `false`.
pub fn collect_for_instance(inst: &FamilyInstance) -> impl Fn(NodeContext) -> CollectAll + Clone {
    let predicate = inst.predicate;
    let star = inst.x_weights();
    let w_max = inst.spec.w_max();
    let weight_bits = if w_max == 0 { 0 } else { bits_for(w_max) };
    let evaluator: Evaluator = Arc::new(move |g: &Graph| {
        evaluate_on(&predicate, g, star.as_deref())
            .ok()
            .flatten()
            .unwrap_or(false)
    });
    move |ctx| collect_all(&ctx, weight_bits, evaluator.clone())
}

fn push_label(buf: &mut Payload, id: NodeId, l: &NodeLabel, id_width: u32) {
    push_bits(buf, id.congest_id() as u64, id_width);
    push_bits(buf, l.role.code() as u64, 4);
    push_bits(buf, l.set.code() as u64, 4);
    push_bits(buf, l.copy as u64, 16);
    push_bits(buf, l.index as u64, 32);
    push_bits(buf, l.bit as u64, 32);
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Item {
    End,
    Label(usize, NodeLabel),
    Edge(usize, usize, u64),
}

impl CollectAll {
    fn item_len(&self, kind: u64) -> usize {
        2 + match kind {
            0 => 0,
            1 => (self.id_width + LABEL_BITS) as usize,
            _ => (2 * self.id_width + self.weight_bits) as usize,
        }
    }

    /// Bit length of the first item of `buf`, if it is complete.
    fn complete_item(&self, buf: &Payload) -> Option<usize> {
        let kind = BitReader::new(buf).read(2)?;
        let len = self.item_len(kind);
        (buf.len() >= len).then_some(len)
    }

    fn decode(&self, bits: &Payload) -> Item {
        let mut r = BitReader::new(bits);
        let w = self.id_width;
        match r.read(2) {
            Some(0) => Item::End,
            Some(1) => {
                let id = r.read(w).unwrap_or(0) as usize;
                let role = Role::from_code(r.read(4).unwrap_or(0) as u8).unwrap_or(Role::Set);
                let set = SetTag::from_code(r.read(4).unwrap_or(0) as u8).unwrap_or(SetTag::None);
                let mut l = NodeLabel::new(role, set, 0).with_copy(r.read(16).unwrap_or(0) as u16);
                l.index = r.read(32).unwrap_or(0) as u32;
                l.bit = r.read(32).unwrap_or(0) as u32;
                Item::Label(id, l)
            }
            _ => {
                let u = r.read(w).unwrap_or(0) as usize;
                let v = r.read(w).unwrap_or(0) as usize;
                let wt = if self.weight_bits > 0 {
                    r.read(self.weight_bits).unwrap_or(0)
                } else {
                    0
                };
                Item::Edge(u, v, wt)
            }
        }
    }

    /// Moves complete items from a child's buffer into this node's stream.
    fn drain_child(&mut self, child: NodeId) {
        let Some(pos) = self.partial.iter().position(|p| p.0 == child) else {
            return;
        };
        loop {
            let buf = &self.partial[pos].1;
            let Some(len) = self.complete_item(buf) else { break };
            let item: Payload = buf[..len].to_bitvec();
            self.partial[pos].1 = buf[len..].to_bitvec();
            if self.decode(&item) == Item::End {
                self.closed.push(child);
            } else {
                self.stream.extend_from_bitslice(&item);
            }
        }
    }

    fn rebuild(&self) -> Graph {
        let mut labels = Vec::new();
        let mut edges = Vec::new();
        let mut rest = self.stream.clone();
        while let Some(len) = self.complete_item(&rest) {
            match self.decode(&rest[..len].to_bitvec()) {
                Item::Label(id, l) => labels.push((id, l)),
                Item::Edge(u, v, w) => edges.push((u, v, w)),
                Item::End => {}
            }
            rest = rest[len..].to_bitvec();
        }
        labels.sort();
        let mut b = if self.weight_bits == 0 {
            GraphBuilder::unweighted()
        } else {
            GraphBuilder::weighted((1u64 << self.weight_bits) - 1)
        };
        for (_, l) in &labels {
            b.add_node(*l);
        }
        let label_of = |id: usize| {
            labels
                .binary_search_by_key(&id, |p| p.0)
                .map(|i| labels[i].1)
                .expect("every edge endpoint sent its label")
        };
        for (u, v, w) in edges {
            let w = (self.weight_bits > 0).then_some(w);
            b.add_edge(label_of(u), label_of(v), w)
                .expect("collected edges form a simple graph");
        }
        b.build().expect("collected graph is well formed")
    }
}

impl NodeProgram for CollectAll {
    type Output = bool;

    fn on_round(&mut self, round: u64, inbox: &[(NodeId, Payload)]) -> Vec<(NodeId, Payload)> {
        let (joined, rest) = self.link.absorb(round, inbox);
        let mut out = Vec::new();
        if let Some(body) = joined {
            out = self.link.announce(&body);
            let own = std::mem::take(&mut self.own);
            self.stream.extend_from_bitslice(&own);
        }
        for (from, kind, body) in rest {
            match kind {
                Kind::Up => {
                    match self.partial.iter_mut().find(|p| p.0 == from) {
                        Some(p) => p.1.extend_from_bitslice(&body),
                        None => self.partial.push((from, body)),
                    }
                    self.drain_child(from);
                }
                Kind::Down if Some(from) == self.link.parent => {
                    self.result = body.first().map(|b| *b);
                }
                _ => {}
            }
        }
        if !self.finished
            && self.link.children_known(round)
            && self.link.children.iter().all(|c| self.closed.contains(c))
        {
            self.finished = true;
            if self.link.is_root {
                self.result = Some((self.evaluator)(&self.rebuild()));
            } else {
                push_bits(&mut self.stream, 0, 2);
            }
        }
        if !self.link.is_root && self.link.can_send_up(round) && !self.stream.is_empty() {
            let take = self.stream.len().min(self.bandwidth - 2);
            let chunk: Payload = self.stream[..take].to_bitvec();
            self.stream = self.stream[take..].to_bitvec();
            let parent = self.link.parent.expect("non-root node has joined");
            out.push((parent, message(Kind::Up, &chunk)));
        }
        if let (Some(r), false) = (self.result, self.sent_down) {
            self.sent_down = true;
            let mut body = Payload::new();
            body.push(r);
            for &c in &self.link.children {
                out.push((c, message(Kind::Down, &body)));
            }
        }
        out
    }

    fn output(&self) -> Option<bool> {
        self.result
    }
}
