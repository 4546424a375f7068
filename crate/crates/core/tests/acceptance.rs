//! Acceptance suite: the eight exhaustive desk-scale checks that gate the
//! toolkit. Each test prints one pass/fail line.
//!
//! The shared instance universe is the default enumeration bounds:
//! connected hypergraphs with at most 5 vertices, 6 edges, edge size 3 and
//! multiplicity 2 (criteria quantifying over "every H" drop the
//! connectivity filter).

use std::collections::HashMap;

use hypercolor::coloring::{chi_list_p_with, ChiListGuards};
use hypercolor::degeneracy::{
    classify_hard_pair, degree_feasible, find_f_partition, is_strictly_h_degenerate,
    validate_certificate, VectorFunction,
};
use hypercolor::enumerate::{canonical_form, enum_hypergraphs};
use hypercolor::exec::{map_collect, ExecMode};
use hypercolor::hypergraph::Hypergraph;
use hypercolor::property::Property;
use hypercolor::sweep::{
    sweep_brooks, sweep_critical_structure, sweep_gallai, sweep_sigma, sweep_theorem4,
    sweep_theorem6,
};
use hypercolor::EnumerationBounds;

fn connected_bounds() -> EnumerationBounds {
    EnumerationBounds::default()
}

fn all_bounds() -> EnumerationBounds {
    EnumerationBounds {
        connected_only: false,
        ..EnumerationBounds::default()
    }
}

fn verdict(criterion: &str, pass: bool, details: &str) {
    println!(
        "criterion {criterion}: {} — {details}",
        if pass { "PASS" } else { "FAIL" }
    );
    assert!(pass, "criterion {criterion} failed: {details}");
}

/// Criterion 1: over every connected instance and every degree-feasible
/// vector function with p = 2 and entries <= 3, the exhaustive partition
/// search and the hard-pair recognizer agree exactly, and every
/// certificate re-validates.
#[test]
fn criterion_1_theorem4_equivalence() {
    let rep = sweep_theorem4(&connected_bounds(), 2, 3, ExecMode::Parallel).unwrap();
    // tie the public operations to the sweep on a deterministic sample
    let instances: Vec<Hypergraph> = enum_hypergraphs(&connected_bounds())
        .unwrap()
        .into_iter()
        .filter(|h| !h.is_empty())
        .collect();
    let mut sampled = 0usize;
    for h in instances.iter().step_by(191) {
        for f in sample_vector_functions(h, 6) {
            let partition = find_f_partition(h, &f).unwrap();
            let cert = classify_hard_pair(h, &f).unwrap();
            assert!(degree_feasible(h, &f));
            assert_eq!(
                partition.is_none(),
                cert.is_some(),
                "public ops disagree on {}",
                h.to_canonical_json()
            );
            if let Some(c) = &cert {
                assert!(validate_certificate(h, &f, c));
            }
            sampled += 1;
        }
    }
    verdict(
        "1 (hard-pair equivalence)",
        rep.pass && rep.hard_pairs > 0,
        &format!(
            "{} instances, {} vector functions, {} hard pairs, {} mismatches, {} public spot checks",
            rep.instances,
            rep.pairs_checked,
            rep.hard_pairs,
            rep.mismatches.len(),
            sampled
        ),
    );
}

fn sample_vector_functions(h: &Hypergraph, limit: usize) -> Vec<VectorFunction> {
    let mut out = Vec::new();
    let degrees: Vec<u32> = h
        .vertices()
        .iter()
        .map(|v| h.degree(v).unwrap() as u32)
        .collect();
    'tuples: for (a, b) in [(1u32, 1u32), (1, 2), (2, 2), (3, 3), (0, 3), (2, 1)] {
        for &d in &degrees {
            if a + b < d {
                continue 'tuples;
            }
        }
        out.push(VectorFunction::constant(h, &[a, b]).unwrap());
        if out.len() == limit {
            break;
        }
    }
    // the monoblock shape: the whole degree in one coordinate
    let values = h
        .vertices()
        .iter()
        .map(|v| (v.clone(), vec![h.degree(v).unwrap() as u32, 0]))
        .collect();
    out.push(VectorFunction::new(h, values).unwrap());
    out
}

/// Criterion 2: the greedy elimination test agrees with the literal
/// all-subhypergraphs oracle on every instance and every h with entries
/// <= 3.
#[test]
fn criterion_2_degeneracy_oracle() {
    let instances = enum_hypergraphs(&all_bounds()).unwrap();
    let disagreements: usize = map_collect(ExecMode::Parallel, &instances, |h| {
        degeneracy_disagreements(h)
    })
    .into_iter()
    .sum();
    let checks: usize = instances.iter().map(|h| 1usize << (2 * h.order())).sum();
    verdict(
        "2 (degeneracy oracle)",
        disagreements == 0,
        &format!(
            "{} instances, {} h-functions, {} disagreements",
            instances.len(),
            checks,
            disagreements
        ),
    );
}

/// Largest degree vector per vertex subset over the literal enumeration of
/// all subhypergraphs (every vertex subset with every admissible edge
/// subset).
fn subhypergraph_table(h: &Hypergraph) -> Vec<(u32, Vec<u32>)> {
    let vs = h.vertices();
    let n = vs.len();
    let edges: Vec<&[String]> = h.edges().collect();
    let mut table: Vec<(u32, Vec<u32>)> = Vec::new();
    for vsub in 1u32..(1u32 << n) {
        let inside: Vec<usize> = (0..n).filter(|i| vsub >> i & 1 == 1).collect();
        let within: Vec<usize> = (0..edges.len())
            .filter(|&e| {
                edges[e]
                    .iter()
                    .all(|v| inside.iter().any(|&i| &vs[i] == v))
            })
            .collect();
        let mut best: Vec<u32> = vec![0; inside.len()];
        for esub in 0u64..(1u64 << within.len()) {
            let mut dv: Vec<u32> = vec![0; inside.len()];
            for (bit, &e) in within.iter().enumerate() {
                if esub >> bit & 1 == 1 {
                    for (slot, &i) in inside.iter().enumerate() {
                        if edges[e].iter().any(|v| v == &vs[i]) {
                            dv[slot] += 1;
                        }
                    }
                }
            }
            for (b, d) in best.iter_mut().zip(&dv) {
                *b = (*b).max(*d);
            }
        }
        table.push((vsub, best));
    }
    table
}

fn degeneracy_disagreements(h: &Hypergraph) -> usize {
    let vs = h.vertices();
    let n = vs.len();
    let table = subhypergraph_table(h);
    let mut bad = 0;
    let mut hvals = vec![0u32; n];
    loop {
        let greedy = is_strictly_h_degenerate(h, |v| {
            let i = vs.iter().position(|x| x == v).unwrap();
            hvals[i]
        });
        // oracle: no subhypergraph may meet its h-values at every vertex
        let oracle = !table.iter().any(|(vsub, best)| {
            let inside: Vec<usize> = (0..n).filter(|i| vsub >> i & 1 == 1).collect();
            inside
                .iter()
                .enumerate()
                .all(|(slot, &i)| best[slot] >= hvals[i])
        });
        if greedy != oracle {
            bad += 1;
        }
        // next h in base 4
        let mut idx = 0;
        loop {
            if idx == n {
                return bad;
            }
            hvals[idx] += 1;
            if hvals[idx] <= 3 {
                break;
            }
            hvals[idx] = 0;
            idx += 1;
        }
    }
}

/// Criterion 3: every critical pair found for P in {O, D(1)} and k in
/// {1, 2} satisfies the degree bound, and the low-vertex block structure
/// holds whenever the low-vertex hypergraph is non-empty.
#[test]
fn criterion_3_critical_structure() {
    let mut details = Vec::new();
    let mut pass = true;
    for p in [Property::edgeless(), Property::degenerate(1)] {
        for k in [1u32, 2] {
            let rep =
                sweep_critical_structure(&p, k, &connected_bounds(), ExecMode::Parallel).unwrap();
            details.push(format!(
                "{}/k={k}: {} pairs, {} theorem-3 checks, {} violations",
                p.name(),
                rep.pairs_found,
                rep.theorem3_checked,
                rep.violations.len()
            ));
            pass &= rep.pass;
        }
    }
    verdict("3 (criticality and theorem 3)", pass, &details.join("; "));
}

/// Criterion 4: the Brooks-type bound with its equality characterization,
/// plus pinned spot values of the list-chromatic number.
#[test]
fn criterion_4_brooks() {
    let guards = ChiListGuards {
        max_order: 5,
        max_k: 4,
    };
    let o = Property::edgeless();
    let spot = [
        (Hypergraph::cycle(5), 3u32),
        (Hypergraph::complete(4), 4),
        (Hypergraph::cycle(4), 2),
    ];
    for (h, expected) in &spot {
        assert_eq!(chi_list_p_with(h, &o, guards).unwrap(), *expected);
    }
    let mut details = vec!["spot values C5:3 K4:4 C4:2 ok".to_string()];
    let mut pass = true;
    for p in [Property::edgeless(), Property::degenerate(1)] {
        let rep = sweep_brooks(&p, &connected_bounds(), ExecMode::Parallel).unwrap();
        details.push(format!(
            "{}: {} instances, {} equalities, {} violations",
            p.name(),
            rep.instances,
            rep.equality_instances,
            rep.violations.len()
        ));
        pass &= rep.pass;
    }
    verdict("4 (Brooks-type bound)", pass, &details.join("; "));
}

/// Criterion 5: whenever an instance with r|L(v)| >= d(v) everywhere is
/// uncolorable, every block satisfies the structural disjunction.
#[test]
fn criterion_5_theorem6() {
    let mut details = Vec::new();
    let mut pass = true;
    for p in [Property::edgeless(), Property::degenerate(1)] {
        let rep = sweep_theorem6(&p, &connected_bounds(), ExecMode::Parallel).unwrap();
        details.push(format!(
            "{}: {} structural, {} enumerated, {} violations",
            p.name(),
            rep.structural_instances,
            rep.enumerated_instances,
            rep.violations.len()
        ));
        pass &= rep.pass;
    }
    verdict("5 (theorem 6 degree version)", pass, &details.join("; "));
}

/// Criterion 6: exact sigma values on complete blocks, the end-block
/// additivity identity, and the epsilon-delta lower bounds over all
/// assembled Gallai trees with delta = 4 and order <= 9.
#[test]
fn criterion_6_sigma_calculus() {
    let rep = sweep_sigma(4, 9, ExecMode::Parallel).unwrap();
    verdict(
        "6 (sigma calculus)",
        rep.pass && rep.trees_with_at_most_3_blocks > 0 && rep.epsilon_trees > 0,
        &format!(
            "complete blocks ok={}, {} trees ({} epsilon, {} with <= 3 blocks), {} violations",
            rep.complete_blocks_ok,
            rep.trees,
            rep.epsilon_trees,
            rep.trees_with_at_most_3_blocks,
            rep.violations.len()
        ),
    );
}

/// Criterion 7: the degree-sum bound on every qualifying critical pair for
/// (O, k=3) and (D(1), k=2), plus the necessity fence: K_{delta+1} falls
/// below the bound for delta in {3, 4, 5}.
#[test]
fn criterion_7_gallai_bound() {
    let combos = vec![
        (Property::edgeless(), 3u32),
        (Property::degenerate(1), 2u32),
    ];
    let rep = sweep_gallai(&combos, &connected_bounds(), &[3, 4, 5], ExecMode::Parallel).unwrap();
    let detail: Vec<String> = rep
        .combos
        .iter()
        .map(|c| {
            format!(
                "{}/k={}: {} pairs, {} qualifying, skipped {:?}, {} violations",
                c.property,
                c.list_size,
                c.pairs_found,
                c.qualifying,
                c.skipped,
                c.violations.len()
            )
        })
        .collect();
    verdict(
        "7 (degree-sum bound)",
        rep.pass,
        &format!("{}; fence below bound for deltas 3,4,5", detail.join("; ")),
    );
}

/// Criterion 8: the shrink-degree identity and the deletion monotonicity
/// chain of the list-chromatic number, exhaustively.
#[test]
fn criterion_8_identities() {
    let instances = enum_hypergraphs(&all_bounds()).unwrap();
    // d_{H / v}(u) = d_H(u) - mu_H(u, v)
    let identity_failures: usize = map_collect(ExecMode::Parallel, &instances, |h| {
        let mut bad = 0;
        for v in h.vertices() {
            let shrunk = h.shrink_delete_vertex(v).unwrap();
            for u in h.vertices().iter().filter(|u| *u != v) {
                let lhs = shrunk.degree(u).unwrap();
                let rhs = h.degree(u).unwrap() - h.multiplicity(u, v).unwrap();
                if lhs != rhs {
                    bad += 1;
                }
            }
        }
        bad
    })
    .into_iter()
    .sum();

    // chi^l(H) - 1 <= chi^l(H - v) <= chi^l(H), cached by canonical form
    let guards = ChiListGuards {
        max_order: 5,
        max_k: 4,
    };
    let mut chain_failures = 0usize;
    let mut chain_checks = 0usize;
    for p in [Property::edgeless(), Property::degenerate(1)] {
        let mut cache: HashMap<String, u32> = HashMap::new();
        let chi = |h: &Hypergraph, cache: &mut HashMap<String, u32>| -> u32 {
            let key = canonical_form(h).unwrap();
            if let Some(&v) = cache.get(&key) {
                return v;
            }
            let value = chi_list_p_with(h, &p, guards).unwrap();
            cache.insert(key, value);
            value
        };
        for h in &instances {
            let base = chi(h, &mut cache);
            for v in h.vertices() {
                let deleted = h.delete_vertex(v).unwrap();
                let sub = chi(&deleted, &mut cache);
                chain_checks += 1;
                if !(base.saturating_sub(1) <= sub && sub <= base) {
                    chain_failures += 1;
                }
            }
        }
    }
    verdict(
        "8 (shrink identity and monotonicity)",
        identity_failures == 0 && chain_failures == 0,
        &format!(
            "{} instances, {} identity failures, {} chain checks, {} chain failures",
            instances.len(),
            identity_failures,
            chain_checks,
            chain_failures
        ),
    );
}

/// The orbit stream must be deterministic across execution modes.
#[test]
fn sweeps_are_mode_independent() {
    let small = EnumerationBounds {
        max_order: 4,
        max_edges: 4,
        max_edge_size: 3,
        max_multiplicity: 2,
        connected_only: true,
        simple_only: false,
    };
    let seq = sweep_theorem4(&small, 2, 2, ExecMode::Sequential).unwrap();
    let par = sweep_theorem4(&small, 2, 2, ExecMode::Parallel).unwrap();
    assert_eq!(
        serde_json::to_string(&seq).unwrap(),
        serde_json::to_string(&par).unwrap()
    );
}

