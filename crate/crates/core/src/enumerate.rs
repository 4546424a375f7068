//! Exhaustive generation of small instances up to the relevant symmetries.
//!
//! Hypergraphs are enumerated per order as multisets of incidence masks in
//! ascending mask order; a labeled instance is emitted exactly when it is
//! its own minimum over all vertex permutations. Non-canonical prefixes are
//! pruned: appending edges that are at least as large as the current
//! maximum preserves the existence of a smaller permuted image. List
//! assignments are enumerated as multisets of color classes, one
//! representative per color-permutation orbit.

use std::collections::{BTreeSet, HashMap};
use std::ops::ControlFlow;
use std::sync::{Arc, Mutex, OnceLock};

use serde::{Deserialize, Serialize};

use crate::coloring::ListAssignment;
use crate::hypergraph::Hypergraph;
use crate::kernel::{
    bits, for_each_assignment, for_each_uncolorable, invariant_key, isomorphic, ColorCtx, Kh,
    Mask,
};
use crate::property::Property;
use crate::{Error, Result};

/// Size limits for hypergraph generation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct EnumerationBounds {
    pub max_order: usize,
    pub max_edges: usize,
    pub max_edge_size: usize,
    pub max_multiplicity: usize,
    pub connected_only: bool,
    pub simple_only: bool,
}

impl Default for EnumerationBounds {
    /// The bounds used by the verification sweeps: connected instances up
    /// to order 5 with at most 6 edges of size at most 3 and multiplicity
    /// at most 2.
    fn default() -> Self {
        EnumerationBounds {
            max_order: 5,
            max_edges: 6,
            max_edge_size: 3,
            max_multiplicity: 2,
            connected_only: true,
            simple_only: false,
        }
    }
}

impl EnumerationBounds {
    fn validate(&self) -> Result<()> {
        if self.max_edge_size < 2 {
            return Err(Error::Domain("infeasible bounds: max_edge_size < 2".into()));
        }
        if self.max_multiplicity < 1 {
            return Err(Error::Domain("infeasible bounds: max_multiplicity < 1".into()));
        }
        if self.max_order > 7 {
            return Err(Error::BudgetExceeded(
                "hypergraph generation is limited to order 7".into(),
            ));
        }
        Ok(())
    }
}

fn all_perms(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut perm: Vec<usize> = (0..n).collect();
    fn rec(perm: &mut Vec<usize>, k: usize, out: &mut Vec<Vec<usize>>) {
        if k == perm.len() {
            out.push(perm.clone());
            return;
        }
        // lexicographic-ish order with the identity first
        let mut rest: Vec<usize> = perm[k..].to_vec();
        rest.sort_unstable();
        for &x in &rest {
            let pos = perm[k..].iter().position(|&y| y == x).unwrap() + k;
            perm.swap(k, pos);
            rec(perm, k + 1, out);
            let pos = perm[k..].iter().position(|&y| y == x).unwrap() + k;
            perm.swap(k, pos);
        }
    }
    rec(&mut perm, 0, &mut out);
    out
}

/// Per-permutation lookup tables mapping each vertex mask to its image.
fn perm_tables(n: usize) -> Vec<Vec<Mask>> {
    let perms = all_perms(n);
    let size = 1usize << n;
    perms
        .iter()
        .map(|p| {
            (0..size)
                .map(|m| bits(m as Mask).fold(0 as Mask, |acc, v| acc | (1 << p[v])))
                .collect()
        })
        .collect()
}

/// True iff the ascending edge vector is minimal among all its permuted
/// images (ties allowed).
fn self_canonical(edges: &[Mask], tables: &[Vec<Mask>]) -> bool {
    if edges.is_empty() {
        return true;
    }
    let e0 = edges[0];
    let mut img: Vec<Mask> = Vec::with_capacity(edges.len());
    'perm: for t in &tables[1..] {
        let mut mn = Mask::MAX;
        for &e in edges {
            mn = mn.min(t[e as usize]);
        }
        if mn > e0 {
            continue; // image is larger already at the first edge
        }
        if mn < e0 {
            return false;
        }
        img.clear();
        img.extend(edges.iter().map(|&e| t[e as usize]));
        img.sort_unstable();
        for (a, b) in img.iter().zip(edges.iter()) {
            if a < b {
                return false;
            }
            if a > b {
                continue 'perm;
            }
        }
    }
    true
}

fn enum_for_order(n: usize, b: &EnumerationBounds, out: &mut Vec<Hypergraph>) {
    if n == 0 {
        if !b.connected_only {
            out.push(Hypergraph::empty());
        }
        return;
    }
    let full: Mask = ((1u32 << n) - 1) as Mask;
    let mut incs: Vec<Mask> = Vec::new();
    let mut s = full;
    loop {
        if s != 0 {
            let size = s.count_ones() as usize;
            if size >= 2 && size <= b.max_edge_size {
                incs.push(s);
            }
        }
        if s == 0 {
            break;
        }
        s = (s - 1) & full;
    }
    incs.sort_unstable();
    let tables = perm_tables(n);
    let names = Kh::standard_names(n);
    let mult = if b.simple_only { 1 } else { b.max_multiplicity };

    struct Ctx<'a> {
        incs: &'a [Mask],
        tables: &'a [Vec<Mask>],
        names: &'a [String],
        bounds: &'a EnumerationBounds,
        mult: usize,
        n: usize,
    }

    fn dfs(
        ctx: &Ctx,
        start: usize,
        edges: &mut Vec<Mask>,
        counts: &mut Vec<usize>,
        out: &mut Vec<Hypergraph>,
    ) {
        // a non-canonical prefix stays non-canonical under ascending
        // extension, so the whole subtree can be dropped
        if !self_canonical(edges, ctx.tables) {
            return;
        }
        let kh = Kh {
            n: ctx.n,
            edges: edges.clone(),
        };
        if !ctx.bounds.connected_only || kh.is_connected_induced(kh.full_mask()) {
            out.push(kh.to_hypergraph(ctx.names));
        }
        if edges.len() == ctx.bounds.max_edges {
            return;
        }
        for i in start..ctx.incs.len() {
            if counts[i] == ctx.mult {
                continue;
            }
            counts[i] += 1;
            edges.push(ctx.incs[i]);
            dfs(ctx, i, edges, counts, out);
            edges.pop();
            counts[i] -= 1;
        }
    }

    let ctx = Ctx {
        incs: &incs,
        tables: &tables,
        names: &names,
        bounds: b,
        mult,
        n,
    };
    let mut edges = Vec::new();
    let mut counts = vec![0usize; incs.len()];
    dfs(&ctx, 0, &mut edges, &mut counts, out);
}

fn enum_cache() -> &'static Mutex<HashMap<EnumerationBounds, Arc<Vec<Hypergraph>>>> {
    static CACHE: OnceLock<Mutex<HashMap<EnumerationBounds, Arc<Vec<Hypergraph>>>>> =
        OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Every isomorphism class within the bounds exactly once, in a
/// deterministic order. Results are cached per bounds for the lifetime of
/// the process.
pub fn enum_hypergraphs(b: &EnumerationBounds) -> Result<Vec<Hypergraph>> {
    b.validate()?;
    if let Some(hit) = enum_cache().lock().unwrap().get(b) {
        return Ok((**hit).clone());
    }
    let mut out = Vec::new();
    for n in 0..=b.max_order {
        enum_for_order(n, b, &mut out);
    }
    enum_cache()
        .lock()
        .unwrap()
        .insert(*b, Arc::new(out.clone()));
    Ok(out)
}

/// Canonical form: the minimum, over all bijections onto the standard
/// vertex names `v0..`, of the canonical JSON serialization. Identical for
/// isomorphic inputs regardless of their vertex names.
pub fn canonical_form(h: &Hypergraph) -> Result<String> {
    let n = h.order();
    if n > 9 {
        return Err(Error::BudgetExceeded(
            "canonical form is limited to order 9".into(),
        ));
    }
    let (kh, _) = Kh::from_hypergraph(h);
    let mut best: Option<Vec<Vec<u8>>> = None;
    let mut perm: Vec<usize> = (0..n).collect();
    fn rec(
        kh: &Kh,
        perm: &mut Vec<usize>,
        k: usize,
        best: &mut Option<Vec<Vec<u8>>>,
    ) {
        if k == perm.len() {
            let mut edges: Vec<Vec<u8>> = kh
                .edges
                .iter()
                .map(|&e| {
                    let mut inc: Vec<u8> = bits(e).map(|v| perm[v] as u8).collect();
                    inc.sort_unstable();
                    inc
                })
                .collect();
            edges.sort();
            match best {
                Some(b) if *b <= edges => {}
                _ => *best = Some(edges),
            }
            return;
        }
        for i in k..perm.len() {
            perm.swap(k, i);
            rec(kh, perm, k + 1, best);
            perm.swap(k, i);
        }
    }
    rec(&kh, &mut perm, 0, &mut best);
    let names = Kh::standard_names(n);
    let edges: Vec<Vec<String>> = best
        .unwrap_or_default()
        .into_iter()
        .map(|inc| inc.into_iter().map(|v| names[v as usize].clone()).collect())
        .collect();
    let canonical = Hypergraph::build(&names, &edges).expect("relabeling keeps validity");
    Ok(canonical.to_canonical_json())
}

fn classes_to_assignment(classes: &[Mask], names: &[String]) -> ListAssignment {
    let mut lists: std::collections::BTreeMap<String, BTreeSet<u32>> = names
        .iter()
        .map(|v| (v.clone(), BTreeSet::new()))
        .collect();
    for (i, &class) in classes.iter().enumerate() {
        for v in bits(class) {
            lists.get_mut(&names[v]).unwrap().insert(i as u32 + 1);
        }
    }
    ListAssignment::new(lists)
}

/// All list assignments with |L(v)| = k from a universe of at most
/// `k * |V|` colors, one representative per color-permutation orbit.
pub fn enum_list_assignments(h: &Hypergraph, k: u32) -> Result<Vec<ListAssignment>> {
    if h.order() > 6 || k > 3 {
        return Err(Error::BudgetExceeded(
            "list-assignment enumeration is limited to order 6 and k <= 3".into(),
        ));
    }
    let (kh, names) = Kh::from_hypergraph(h);
    let quotas = vec![k; kh.n];
    let mut out = Vec::new();
    for_each_assignment(kh.n, &quotas, |classes| {
        out.push(classes_to_assignment(classes, &names));
        ControlFlow::Continue(())
    });
    Ok(out)
}

/// All (H, L) with H connected within the bounds, |L(v)| = k, and H
/// (P, L)-critical, up to hypergraph isomorphism acting jointly with color
/// permutation.
pub fn search_critical(
    p: &Property,
    k: u32,
    bounds: &EnumerationBounds,
) -> Result<Vec<(Hypergraph, ListAssignment)>> {
    let mut b = *bounds;
    b.connected_only = true;
    let mut out = Vec::new();
    for h in enum_hypergraphs(&b)? {
        if h.is_empty() {
            continue;
        }
        out.extend(critical_pairs_for(p, k, &h)?);
    }
    Ok(out)
}

/// Critical pairs on a single connected hypergraph, up to the joint
/// symmetry.
pub fn critical_pairs_for(
    p: &Property,
    k: u32,
    h: &Hypergraph,
) -> Result<Vec<(Hypergraph, ListAssignment)>> {
    let mut out = Vec::new();
    let (kh, names) = Kh::from_hypergraph(h);
    if kh.n as u32 * k > 32 {
        return Err(Error::BudgetExceeded(
            "critical search needs a color universe of more than 32 colors".into(),
        ));
    }
    let eval = p.eval(&names);
    let ctx = ColorCtx::new(&kh, &eval);
    let quotas = vec![k; kh.n];
    let auts = kh.automorphisms();
    // partitions of each deleted vertex set, built on demand
    let mut deleted: Vec<Option<Vec<Vec<Mask>>>> = vec![None; kh.n];
    let full = kh.full_mask();
    for_each_uncolorable(&kh, &ctx, &quotas, |classes, lists| {
        // criticality: every vertex-deleted subhypergraph must be colorable
        for v in 0..kh.n {
            if deleted[v].is_none() {
                deleted[v] = Some(ctx.partitions(full & !(1 << v)));
            }
            let parts = deleted[v].as_ref().unwrap();
            if !crate::kernel::colorable_on(parts, lists) {
                return ControlFlow::Continue(());
            }
        }
        // combined symmetry: keep the representative that is minimal under
        // the automorphism group acting on the class multiset
        let me: Vec<Mask> = classes.to_vec();
        for aut in &auts {
            let mut image: Vec<Mask> = classes
                .iter()
                .map(|&c| bits(c).fold(0 as Mask, |m, v| m | (1 << aut[v])))
                .collect();
            image.sort_unstable_by(|a, b| b.cmp(a));
            if image < me {
                return ControlFlow::Continue(());
            }
        }
        out.push((h.clone(), classes_to_assignment(classes, &names)));
        ControlFlow::Continue(())
    });
    Ok(out)
}

/// Assembles Gallai trees for the degree-sum machinery: all connected
/// simple hypergraphs, up to isomorphism, whose blocks are complete graphs
/// `K_2..K_delta`, odd cycles of order at least 5, or single hyperedges,
/// glued at shared vertices with maximum degree at most `delta`. `K_1` is
/// included as the one-vertex tree; `K_{delta+1}` never arises. With
/// `even_cycles`, even cycles are allowed as blocks as well (they are
/// 2-regular minimal obstructions for the degeneracy properties).
pub fn enum_gallai_trees(
    delta: usize,
    max_order: usize,
    even_cycles: bool,
) -> Result<Vec<Hypergraph>> {
    if delta < 3 {
        return Err(Error::Domain("gallai trees need delta >= 3".into()));
    }
    if max_order > 10 {
        return Err(Error::BudgetExceeded(
            "gallai tree enumeration is limited to order 10".into(),
        ));
    }
    // block shapes as (vertex count, edges on 0.., degree at the glue vertex)
    struct Shape {
        order: usize,
        edges: Vec<Vec<usize>>,
        glue_degree: usize,
    }
    let mut shapes: Vec<Shape> = Vec::new();
    for b in 2..=delta {
        let mut edges = Vec::new();
        for i in 0..b {
            for j in i + 1..b {
                edges.push(vec![i, j]);
            }
        }
        shapes.push(Shape {
            order: b,
            edges,
            glue_degree: b - 1,
        });
    }
    for m in 4..=max_order {
        let odd = m % 2 == 1;
        if (odd && m >= 5) || (even_cycles && !odd) {
            let edges = (0..m).map(|i| vec![i, (i + 1) % m]).collect();
            shapes.push(Shape {
                order: m,
                edges,
                glue_degree: 2,
            });
        }
    }
    for q in 3..=max_order {
        shapes.push(Shape {
            order: q,
            edges: vec![(0..q).collect()],
            glue_degree: 1,
        });
    }

    let mut accepted: Vec<Kh> = Vec::new();
    let mut buckets: HashMap<Vec<u64>, Vec<usize>> = HashMap::new();
    let mut queue: Vec<Kh> = Vec::new();
    let push = |kh: Kh,
                accepted: &mut Vec<Kh>,
                buckets: &mut HashMap<Vec<u64>, Vec<usize>>,
                queue: &mut Vec<Kh>| {
        let key = invariant_key(&kh);
        let ids = buckets.entry(key).or_default();
        if ids.iter().any(|&i| isomorphic(&accepted[i], &kh)) {
            return;
        }
        ids.push(accepted.len());
        accepted.push(kh.clone());
        queue.push(kh);
    };

    // K_1 and each shape standing alone
    push(
        Kh {
            n: 1,
            edges: vec![],
        },
        &mut accepted,
        &mut buckets,
        &mut queue,
    );
    for s in &shapes {
        if s.order <= max_order {
            let edges = s
                .edges
                .iter()
                .map(|e| e.iter().fold(0 as Mask, |m, &v| m | (1 << v)))
                .collect();
            push(
                Kh { n: s.order, edges },
                &mut accepted,
                &mut buckets,
                &mut queue,
            );
        }
    }

    let mut head = 0;
    while head < queue.len() {
        let cur = queue[head].clone();
        head += 1;
        let degrees = cur.degrees_in(cur.full_mask());
        for s in &shapes {
            let grown_order = cur.n + s.order - 1;
            if grown_order > max_order || grown_order > crate::kernel::MAX_ORDER {
                continue;
            }
            for glue in 0..cur.n {
                if degrees[glue] as usize + s.glue_degree > delta {
                    continue;
                }
                // shape vertex 0 lands on `glue`, the rest are appended
                let mut edges = cur.edges.clone();
                for e in &s.edges {
                    let mask = e.iter().fold(0 as Mask, |m, &v| {
                        m | (1 << if v == 0 { glue } else { cur.n + v - 1 })
                    });
                    edges.push(mask);
                }
                push(
                    Kh {
                        n: grown_order,
                        edges,
                    },
                    &mut accepted,
                    &mut buckets,
                    &mut queue,
                );
            }
        }
    }

    Ok(accepted
        .iter()
        .map(|kh| kh.to_hypergraph(&Kh::standard_names(kh.n)))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn simple_connected_order_3() {
        let b = EnumerationBounds {
            max_order: 3,
            max_edges: 3,
            max_edge_size: 2,
            max_multiplicity: 1,
            connected_only: true,
            simple_only: true,
        };
        let all = enum_hypergraphs(&b).unwrap();
        assert_eq!(all.len(), 4); // K1, K2, P3, K3
    }

    #[test]
    fn multigraph_order_2() {
        let b = EnumerationBounds {
            max_order: 2,
            max_edges: 2,
            max_edge_size: 2,
            max_multiplicity: 2,
            connected_only: true,
            simple_only: false,
        };
        let all = enum_hypergraphs(&b).unwrap();
        assert_eq!(all.len(), 3); // K1, K2, 2K2
    }

    #[test]
    fn order_zero_only_empty() {
        let b = EnumerationBounds {
            max_order: 0,
            max_edges: 6,
            max_edge_size: 3,
            max_multiplicity: 2,
            connected_only: false,
            simple_only: false,
        };
        let all = enum_hypergraphs(&b).unwrap();
        assert_eq!(all.len(), 1);
        assert!(all[0].is_empty());
    }

    #[test]
    fn no_two_emitted_are_isomorphic() {
        let b = EnumerationBounds {
            max_order: 4,
            max_edges: 4,
            max_edge_size: 3,
            max_multiplicity: 2,
            connected_only: true,
            simple_only: false,
        };
        let all = enum_hypergraphs(&b).unwrap();
        let forms: BTreeSet<String> = all.iter().map(|h| canonical_form(h).unwrap()).collect();
        assert_eq!(forms.len(), all.len());
    }

    #[test]
    fn deterministic_order() {
        let b = EnumerationBounds::default();
        let a = enum_hypergraphs(&b).unwrap();
        let c = enum_hypergraphs(&b).unwrap();
        assert_eq!(a, c);
    }

    #[test]
    fn infeasible_bounds_rejected() {
        let mut b = EnumerationBounds::default();
        b.max_edge_size = 1;
        assert!(enum_hypergraphs(&b).is_err());
        let mut b = EnumerationBounds::default();
        b.max_order = 9;
        assert!(matches!(
            enum_hypergraphs(&b),
            Err(Error::BudgetExceeded(_))
        ));
    }

    #[test]
    fn canonical_form_is_isomorphism_invariant() {
        let c5 = Hypergraph::cycle(5);
        let relabeled = Hypergraph::build(
            &["p", "q", "r", "s", "t"],
            &[
                vec!["p", "r"],
                vec!["r", "t"],
                vec!["t", "q"],
                vec!["q", "s"],
                vec!["s", "p"],
            ],
        )
        .unwrap();
        assert_eq!(
            canonical_form(&c5).unwrap(),
            canonical_form(&relabeled).unwrap()
        );
        assert_ne!(
            canonical_form(&Hypergraph::complete(3)).unwrap(),
            canonical_form(&Hypergraph::path(3)).unwrap()
        );
        let k2 = Hypergraph::path(2);
        let k2x2 = k2.replicate(2).unwrap();
        assert_ne!(canonical_form(&k2).unwrap(), canonical_form(&k2x2).unwrap());
    }

    #[test]
    fn assignment_orbit_examples() {
        let k2 = Hypergraph::path(2);
        assert_eq!(enum_list_assignments(&k2, 1).unwrap().len(), 2);
        assert_eq!(enum_list_assignments(&k2, 2).unwrap().len(), 3);
        let k1 = Hypergraph::build::<_, &str>(&["a"], &[]).unwrap();
        assert_eq!(enum_list_assignments(&k1, 2).unwrap().len(), 1);
        assert!(enum_list_assignments(&Hypergraph::complete(7), 2).is_err());
    }

    #[test]
    fn critical_search_finds_known_pairs() {
        let o = Property::edgeless();
        let b = EnumerationBounds::default();
        let pairs = search_critical(&o, 2, &b).unwrap();
        let forms: BTreeSet<String> = pairs
            .iter()
            .map(|(h, _)| canonical_form(h).unwrap())
            .collect();
        assert!(forms.contains(&canonical_form(&Hypergraph::complete(3)).unwrap()));
        assert!(forms.contains(&canonical_form(&Hypergraph::cycle(5)).unwrap()));

        let pairs1 = search_critical(&o, 1, &b).unwrap();
        let forms1: BTreeSet<String> = pairs1
            .iter()
            .map(|(h, _)| canonical_form(h).unwrap())
            .collect();
        assert!(forms1.contains(&canonical_form(&Hypergraph::path(2)).unwrap()));

        let d1 = Property::degenerate(1);
        let pairs_d = search_critical(&d1, 1, &b).unwrap();
        let forms_d: BTreeSet<String> = pairs_d
            .iter()
            .map(|(h, _)| canonical_form(h).unwrap())
            .collect();
        for n in [3usize, 4, 5] {
            assert!(forms_d.contains(&canonical_form(&Hypergraph::cycle(n)).unwrap()));
        }
    }

    #[test]
    fn gallai_trees_contain_expected_members() {
        let trees = enum_gallai_trees(4, 6, false).unwrap();
        let forms: BTreeSet<String> = trees.iter().map(|t| canonical_form(t).unwrap()).collect();
        assert!(forms.contains(&canonical_form(&Hypergraph::complete(4)).unwrap()));
        assert!(forms.contains(&canonical_form(&Hypergraph::cycle(5)).unwrap()));
        // K5 = K_{delta+1} must not appear
        assert!(!forms.contains(&canonical_form(&Hypergraph::complete(5)).unwrap()));
        // max degree bounded by delta
        assert!(trees
            .iter()
            .all(|t| t.degree_profile().max_degree <= 4));
        // all distinct
        assert_eq!(forms.len(), trees.len());
    }
}
