use super::{BitLedger, TwoPartyError};
use crate::families::FamilyInstance;
use crate::graph::{NodeId, Side};
use crate::sim::{Cluster, Envelope, NodeContext, NodeProgram, SimConfig, SimError};

/// Result of replaying a CONGEST program between Alice and Bob.
#[derive(Debug, Clone, PartialEq)]
pub struct CutOutcome<O> {
    /// Per node id; Alice's nodes were run by Alice, Bob's by Bob.
    pub outputs: Vec<O>,
    pub rounds: u64,
    pub ledger: BitLedger,
    pub cut_size: usize,
    pub bandwidth_bits: usize,
}

impl<O: PartialEq> CutOutcome<O> {
    /// The common output, if every node agrees.
    pub fn agreed(&self) -> Option<&O> {
        let first = self.outputs.first()?;
        self.outputs.iter().all(|o| o == first).then_some(first)
    }

    /// `T·|C|·2(B+1)`: every cut edge carrying a framed full message both ways every round.
    pub fn bound(&self) -> u64 {
        self.rounds * self.cut_size as u64 * 2 * (self.bandwidth_bits as u64 + 1)
    }
}

/// Runs `factory`'s program as a two-party protocol over the instance's cut.
///
/// Alice's view of the graph is built from `x` alone and Bob's from `y`
/// alone, the missing input replaced by zeros. Each round both players step
/// their own nodes and hand over the messages addressed across the cut. The
/// ledger charges every directed cut edge every round: `B + 1` bits when a
/// message is present (one presence bit plus the padded payload) and 1 bit
/// when it is absent.
pub fn cut_simulate<P, F>(
    inst: &FamilyInstance,
    config: &SimConfig,
    factory: F,
) -> Result<CutOutcome<P::Output>, TwoPartyError>
where
    P: NodeProgram,
    F: FnMut(NodeContext) -> P + Clone,
{
    inst.check_lower_bound_property()
        .map_err(TwoPartyError::LowerBound)?;
    let n = inst.graph().node_count();
    config.validate(n)?;
    if !inst.graph().is_connected().unwrap_or(false) {
        return Err(SimError::Disconnected.into());
    }
    let (alice_graph, _) = inst.spec.construct(&inst.x, None);
    let zeros = vec![false; inst.x.len()];
    let (bob_graph, _) = inst.spec.construct(&zeros, inst.y.as_deref());
    debug_assert_eq!(alice_graph.labels(), inst.graph().labels());
    debug_assert_eq!(bob_graph.labels(), inst.graph().labels());

    let sides = inst.pg.sides().to_vec();
    let side = |id: NodeId| sides[id.0];
    let mut alice = Cluster::new(&alice_graph, config, |id| side(id) == Side::Alice, factory.clone());
    let mut bob = Cluster::new(&bob_graph, config, |id| side(id) == Side::Bob, factory);
    let cut = inst.pg.cut();
    let framed = config.bandwidth_bits as u64 + 1;
    let charge = |sent: &[Envelope]| -> u64 {
        cut.iter()
            .map(|e| {
                let present = sent
                    .iter()
                    .any(|m| (m.from, m.to) == (e.u, e.v) || (m.from, m.to) == (e.v, e.u));
                if present {
                    framed
                } else {
                    1
                }
            })
            .sum()
    };

    let mut ledger = BitLedger::default();
    let (mut to_alice, mut to_bob) = (Vec::new(), Vec::new());
    for round in 1..=config.max_rounds {
        let a = alice.step(round, std::mem::take(&mut to_alice))?;
        let b = bob.step(round, std::mem::take(&mut to_bob))?;
        ledger.charge(charge(&a.external), charge(&b.external));
        if a.all_output && b.all_output && a.sent.is_empty() && b.sent.is_empty() {
            let outputs = alice
                .outputs()
                .into_iter()
                .zip(bob.outputs())
                .map(|(x, y)| x.or(y).expect("all nodes have output"))
                .collect();
            return Ok(CutOutcome {
                outputs,
                rounds: round,
                ledger,
                cut_size: cut.len(),
                bandwidth_bits: config.bandwidth_bits,
            });
        }
        to_bob = a.external;
        to_alice = b.external;
    }
    Err(SimError::NoTermination(config.max_rounds).into())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{all_input_pairs, build_diameter, FamilySpec};
    use crate::sim::{collect_for_instance, run, Payload};

    struct Quiet;

    impl NodeProgram for Quiet {
        type Output = bool;

        fn on_round(&mut self, _: u64, _: &[(NodeId, Payload)]) -> Vec<(NodeId, Payload)> {
            Vec::new()
        }

        fn output(&self) -> Option<bool> {
            Some(true)
        }
    }

    #[test]
    fn silent_program_pays_framing_only() {
        let inst = build_diameter(2, &[true, false], &[false, true]).unwrap();
        let cfg = SimConfig::for_nodes(inst.graph().node_count());
        let out = cut_simulate(&inst, &cfg, |_| Quiet).unwrap();
        assert_eq!(out.rounds, 1);
        assert_eq!(out.ledger.total(), out.rounds * out.cut_size as u64 * 2);
        assert!(out.ledger.is_consistent());
    }

    #[test]
    fn matches_whole_graph_run() {
        let spec = FamilySpec::Diameter { k: 2 };
        for (i, (x, y)) in all_input_pairs(&spec).into_iter().enumerate().filter(|(i, _)| i % 17 == 0) {
            let inst = spec.build(&x, Some(&y)).unwrap();
            let cfg = SimConfig::for_nodes(inst.graph().node_count()).with_seed(i as u64);
            let f = collect_for_instance(&inst);
            let whole = run(inst.graph(), &cfg, f.clone()).unwrap();
            let split = cut_simulate(&inst, &cfg, f).unwrap();
            assert_eq!(split.outputs, whole.outputs);
            assert_eq!(split.rounds, whole.rounds);
            assert_eq!(*split.agreed().unwrap(), inst.expected);
            assert!(split.ledger.total() <= split.bound());
        }
    }
}
