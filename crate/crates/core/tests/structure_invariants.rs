//! Exhaustive structural invariants of the block decomposition, asserted
//! on every enumerated instance up to order 6.

use std::collections::BTreeSet;

use hypercolor::enumerate::enum_hypergraphs;
use hypercolor::exec::{map_collect, ExecMode};
use hypercolor::structure::{blocks, components, is_bridge, separating_vertices};
use hypercolor::{EnumerationBounds, Hypergraph};

fn universes() -> Vec<EnumerationBounds> {
    vec![
        EnumerationBounds {
            connected_only: false,
            ..EnumerationBounds::default()
        },
        // order-6 slice: simple graphs with at most 6 edges
        EnumerationBounds {
            max_order: 6,
            max_edges: 6,
            max_edge_size: 2,
            max_multiplicity: 1,
            connected_only: false,
            simple_only: true,
        },
    ]
}

fn check_blocks(h: &Hypergraph) -> Vec<String> {
    let mut bad = Vec::new();
    let d = blocks(h);
    let json = h.to_canonical_json();

    // each block induces a connected subhypergraph without separating
    // vertices, and is maximal with that property
    for (i, b) in d.blocks.iter().enumerate() {
        let keep: Vec<&String> = b.iter().collect();
        let sub = h.induced(&keep).unwrap();
        if components(&sub).len() != 1 {
            bad.push(format!("{json}: block {i} disconnected"));
        }
        if !separating_vertices(&sub).is_empty() {
            bad.push(format!("{json}: block {i} has a separating vertex"));
        }
        for v in h.vertices() {
            if b.contains(v) {
                continue;
            }
            let mut grown: Vec<&String> = b.iter().collect();
            grown.push(v);
            let bigger = h.induced(&grown).unwrap();
            if components(&bigger).len() == 1 && separating_vertices(&bigger).is_empty() {
                bad.push(format!("{json}: block {i} not maximal (add {v})"));
            }
        }
    }

    // two blocks share at most one vertex
    for i in 0..d.blocks.len() {
        for j in i + 1..d.blocks.len() {
            let shared: Vec<&String> = d.blocks[i].intersection(&d.blocks[j]).collect();
            if shared.len() > 1 {
                bad.push(format!("{json}: blocks {i} and {j} share {} vertices", shared.len()));
            }
        }
    }

    // a vertex separates iff it lies in at least two blocks
    let sep = separating_vertices(h);
    for v in h.vertices() {
        let in_blocks = d.blocks.iter().filter(|b| b.contains(v)).count();
        if sep.contains(v) != (in_blocks >= 2) {
            bad.push(format!("{json}: separating mismatch at {v}"));
        }
    }
    if sep != d.separating_vertices {
        bad.push(format!("{json}: separating set mismatch"));
    }

    // blocks cover all vertices and all edges
    let covered: BTreeSet<&String> = d.blocks.iter().flatten().collect();
    if covered.len() != h.order() {
        bad.push(format!("{json}: vertices uncovered"));
    }
    for e in 0..h.edge_count() {
        let inc = h.incidence(e).unwrap();
        if !d
            .blocks
            .iter()
            .any(|b| inc.iter().all(|v| b.contains(v)))
        {
            bad.push(format!("{json}: edge {e} not inside a block"));
        }
    }

    // a bridge lies in a block consisting of exactly that edge
    for e in 0..h.edge_count() {
        if is_bridge(h, e).unwrap() {
            let inc: BTreeSet<String> = h.incidence(e).unwrap().iter().cloned().collect();
            let home = d.blocks.iter().find(|b| inc.iter().all(|v| b.contains(v)));
            match home {
                Some(b) if *b == inc => {
                    let keep: Vec<&String> = b.iter().collect();
                    if h.induced(&keep).unwrap().edge_count() != 1 {
                        bad.push(format!("{json}: bridge {e} shares its block"));
                    }
                }
                _ => bad.push(format!("{json}: bridge {e} not its own block")),
            }
        }
    }
    bad
}

#[test]
fn block_invariants_hold_exhaustively() {
    let mut total = 0usize;
    for bounds in universes() {
        let instances = enum_hypergraphs(&bounds).unwrap();
        total += instances.len();
        let violations: Vec<String> = map_collect(ExecMode::Parallel, &instances, check_blocks)
            .into_iter()
            .flatten()
            .collect();
        assert!(
            violations.is_empty(),
            "block invariant violations: {:?}",
            &violations[..violations.len().min(5)]
        );
    }
    println!("block invariants checked on {total} instances");
    assert!(total > 2000);
}
