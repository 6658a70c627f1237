use lbgraph::families::{build_diameter, build_identical};
use lbgraph::graph::{IdEdge, NodeId};
use lbgraph::streaming::{
    parse_edge_stream, run_stream, store_all_for_instance, stream_cut_simulate, write_edge_stream, Connectivity,
    EdgeStream, StreamError,
};

#[test]
fn identical_family_store_all_decides_equality() {
    for (y, want) in [([1, 2, 3], true), ([1, 2, 0], false)] {
        let inst = build_identical(3, 2, &[1, 2, 3], &y, false).unwrap();
        for passes in 1..=3 {
            let out = stream_cut_simulate(&inst, store_all_for_instance(&inst, 1000), passes, 1000).unwrap();
            assert_eq!(out.output, want);
            assert!(out.total_bits() <= out.bound_for(out.memory_cap));
        }
    }
}

#[test]
fn handoff_over_cap_is_an_error() {
    let inst = build_diameter(2, &[true, true], &[true, true]).unwrap();
    let err = stream_cut_simulate(&inst, store_all_for_instance(&inst, 8), 1, 8).unwrap_err();
    assert!(matches!(err, StreamError::OverCap { pass: 1, .. }));
}

#[test]
fn edge_stream_file_drives_a_run() {
    let inst = build_diameter(2, &[true, false], &[false, true]).unwrap();
    let g = inst.graph();
    let mut order = g.id_edges().to_vec();
    order.reverse();
    let file = write_edge_stream(&EdgeStream {
        nodes: g.node_count(),
        weighted: false,
        edges: order,
    });
    let parsed = parse_edge_stream(&file).unwrap();
    let out = run_stream(g, &parsed.edges, Connectivity::new(parsed.nodes), 1, 1 << 20).unwrap();
    assert!(out.output);
    let missing = &parsed.edges[1..];
    assert_eq!(
        run_stream(g, missing, Connectivity::new(parsed.nodes), 1, 1 << 20).unwrap_err(),
        StreamError::NotPermutation
    );
    let bogus = IdEdge { u: NodeId(0), v: NodeId(1), weight: Some(3) };
    assert!(run_stream(g, &[bogus], Connectivity::new(parsed.nodes), 1, 1 << 20).is_err());
}
