//! P-colorings, list colorings, chromatic numbers, and criticality.
//!
//! A (P, L)-coloring picks each vertex's color from its list so that every
//! color class induces a P-member. The list-chromatic number quantifies
//! over all list assignments of a given size; the quantification is made
//! finite by enumerating assignments up to color permutation (an assignment
//! is the multiset of its color classes) over a universe of at most
//! `k * |V|` colors, and by the observation that lists of size `>= |V|`
//! always admit a coloring by giving every vertex a private color.

use std::collections::{BTreeMap, BTreeSet};
use std::ops::ControlFlow;

use serde::{Deserialize, Serialize};

use crate::hypergraph::Hypergraph;
use crate::kernel::{find_coloring, for_each_uncolorable, ColorCtx, Kh};
use crate::property::Property;
use crate::{Error, Result};

/// Per-vertex finite color sets; colors are naturals. Serializes as a
/// plain map from vertex to its sorted color array.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ListAssignment {
    pub lists: BTreeMap<String, BTreeSet<u32>>,
}

impl ListAssignment {
    pub fn new(lists: BTreeMap<String, BTreeSet<u32>>) -> ListAssignment {
        ListAssignment { lists }
    }

    /// The same list `{1..=k}` at every vertex of `h`.
    pub fn constant(h: &Hypergraph, k: u32) -> ListAssignment {
        let set: BTreeSet<u32> = (1..=k).collect();
        ListAssignment {
            lists: h
                .vertices()
                .iter()
                .map(|v| (v.clone(), set.clone()))
                .collect(),
        }
    }

    /// Restriction to the vertices of `h`.
    pub fn restrict(&self, h: &Hypergraph) -> ListAssignment {
        ListAssignment {
            lists: self
                .lists
                .iter()
                .filter(|(v, _)| h.has_vertex(v))
                .map(|(v, s)| (v.clone(), s.clone()))
                .collect(),
        }
    }
}

/// A total color choice. Serializes as a plain map from vertex to color.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Coloring {
    pub assignment: BTreeMap<String, u32>,
}

/// Outcome of a criticality test, including the low-vertex data needed by
/// the structure theorems.
#[derive(Debug, Clone, Serialize)]
pub struct CriticalityReport {
    pub is_critical: bool,
    /// Vertices with d_H(v) = r * |L(v)| (meaningful when critical).
    pub low_vertices: BTreeSet<String>,
    /// For each vertex, a coloring of H - v when one exists.
    pub witness_colorings: BTreeMap<String, Coloring>,
    /// d_H(v) >= r * |L(v)| at every vertex (checked when critical).
    pub degree_bound_ok: bool,
    pub prop2_checks: Vec<LowVertexCheck>,
}

/// Degree split of a low vertex over the color classes of a fixed coloring
/// of H - v: d_c counts the edges at v inside class c plus v.
#[derive(Debug, Clone, Serialize)]
pub struct LowVertexCheck {
    pub vertex: String,
    pub d_c: BTreeMap<u32, usize>,
    pub all_equal_r: bool,
    pub edge_cover_ok: bool,
}

pub(crate) struct KernelLists {
    pub lists: Vec<u32>,
    pub colors: Vec<u32>,
}

pub(crate) fn lists_to_kernel(
    h: &Hypergraph,
    names: &[String],
    l: &ListAssignment,
) -> Result<KernelLists> {
    if l.lists.len() != h.order() || !names.iter().all(|v| l.lists.contains_key(v)) {
        return Err(Error::Domain(
            "list assignment domain must equal the vertex set".into(),
        ));
    }
    let mut colors: BTreeSet<u32> = BTreeSet::new();
    for s in l.lists.values() {
        colors.extend(s.iter().copied());
    }
    let colors: Vec<u32> = colors.into_iter().collect();
    if colors.len() > 32 {
        return Err(Error::BudgetExceeded(
            "more than 32 distinct colors in a list assignment".into(),
        ));
    }
    let index: BTreeMap<u32, usize> = colors.iter().enumerate().map(|(i, &c)| (c, i)).collect();
    let lists = names
        .iter()
        .map(|v| {
            l.lists[v]
                .iter()
                .fold(0u32, |m, c| m | (1 << index[c]))
        })
        .collect();
    Ok(KernelLists { lists, colors })
}

/// True iff every color class of `phi` induces a P-member.
pub fn is_p_coloring(h: &Hypergraph, p: &Property, phi: &Coloring) -> Result<bool> {
    if phi.assignment.len() != h.order()
        || !h.vertices().iter().all(|v| phi.assignment.contains_key(v))
    {
        return Err(Error::Domain("coloring must be total on the vertex set".into()));
    }
    let mut classes: BTreeMap<u32, Vec<&String>> = BTreeMap::new();
    for (v, c) in &phi.assignment {
        classes.entry(*c).or_default().push(v);
    }
    for class in classes.values() {
        if !p.member(&h.induced(class)?) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Exhaustive backtracking search for a (P, L)-coloring. Vertices are
/// processed in descending degree order (ties by identifier); a partial
/// color class is pruned as soon as it leaves the property, which is sound
/// because properties are hereditary.
pub fn find_pl_coloring(
    h: &Hypergraph,
    p: &Property,
    l: &ListAssignment,
) -> Result<Option<Coloring>> {
    let (kh, names) = Kh::from_hypergraph(h);
    let kl = lists_to_kernel(h, &names, l)?;
    let eval = p.eval(&names);
    Ok(find_coloring(&kh, &eval, &kl.lists).map(|colors| Coloring {
        assignment: names
            .iter()
            .zip(colors)
            .map(|(v, c)| (v.clone(), kl.colors[c as usize]))
            .collect(),
    }))
}

/// The P-chromatic number: the least k admitting a P-coloring with colors
/// `{1..=k}`. Requires K_1 to be a member (every smooth property qualifies).
pub fn chi_p(h: &Hypergraph, p: &Property) -> u32 {
    if h.is_empty() {
        return 0;
    }
    for k in 1..=(h.order() as u32) {
        let l = ListAssignment::constant(h, k);
        if find_pl_coloring(h, p, &l)
            .expect("constant assignment is total")
            .is_some()
        {
            return k;
        }
    }
    panic!("property rejects singleton classes; chromatic number undefined");
}

/// Size guards for the list-chromatic computation.
#[derive(Debug, Clone, Copy)]
pub struct ChiListGuards {
    pub max_order: usize,
    pub max_k: usize,
}

impl Default for ChiListGuards {
    fn default() -> Self {
        ChiListGuards {
            max_order: 6,
            max_k: 3,
        }
    }
}

/// Decides whether every list assignment with |L(v)| = k admits a
/// (P, L)-coloring, by scanning assignment orbits; prefixes that are
/// already colorable are skipped since supersets of colorable lists stay
/// colorable.
fn all_k_assignments_colorable(kh: &Kh, names: &[String], p: &Property, k: u32) -> bool {
    let eval = p.eval(names);
    let ctx = ColorCtx::new(kh, &eval);
    let quotas = vec![k; kh.n];
    let mut found = false;
    for_each_uncolorable(kh, &ctx, &quotas, |_, _| {
        found = true;
        ControlFlow::Break(())
    });
    !found
}

/// The P-list-chromatic number under the default guards.
pub fn chi_list_p(h: &Hypergraph, p: &Property) -> Result<u32> {
    chi_list_p_with(h, p, ChiListGuards::default())
}

/// The P-list-chromatic number: the least k such that every assignment of
/// k-element lists admits a coloring.
pub fn chi_list_p_with(h: &Hypergraph, p: &Property, guards: ChiListGuards) -> Result<u32> {
    if h.is_empty() {
        return Ok(0);
    }
    let n = h.order();
    if n > guards.max_order {
        return Err(Error::BudgetExceeded(format!(
            "order {n} exceeds the list-chromatic guard {}",
            guards.max_order
        )));
    }
    let (kh, names) = Kh::from_hypergraph(h);
    let k1 = Hypergraph::build::<_, &str>(&["v0"], &[]).expect("K1");
    let singletons_ok = p.member(&k1);
    // colorability of k-lists is monotone in k: shrinking lists of an
    // uncolorable assignment keeps it uncolorable
    let mut k = chi_p(h, p);
    loop {
        if singletons_ok && k as usize >= n {
            // every vertex can take a private color from its list
            return Ok(k);
        }
        if k as usize > guards.max_k {
            return Err(Error::BudgetExceeded(format!(
                "list size {k} exceeds the list-chromatic guard {}",
                guards.max_k
            )));
        }
        if all_k_assignments_colorable(&kh, &names, p, k) {
            return Ok(k);
        }
        k += 1;
    }
}

/// Criticality test: H is (P, L)-critical iff H is not (P, L)-colorable but
/// every H - v is. When critical, the report carries the low vertices
/// (d = r|L|), the per-vertex degree bound, and the degree split of each
/// low vertex over the first witness coloring found for H - v.
pub fn is_pl_critical(
    h: &Hypergraph,
    p: &Property,
    l: &ListAssignment,
) -> Result<CriticalityReport> {
    if h.is_empty() {
        return Err(Error::Domain("criticality needs a non-empty hypergraph".into()));
    }
    let colorable = find_pl_coloring(h, p, l)?.is_some();
    let mut witness_colorings = BTreeMap::new();
    let mut all_deleted_colorable = true;
    for v in h.vertices() {
        let hv = h.delete_vertex(v)?;
        let lv = l.restrict(&hv);
        match find_pl_coloring(&hv, p, &lv)? {
            Some(c) => {
                witness_colorings.insert(v.clone(), c);
            }
            None => all_deleted_colorable = false,
        }
    }
    let is_critical = !colorable && all_deleted_colorable;
    let r = p.r() as usize;
    let mut low_vertices = BTreeSet::new();
    let mut degree_bound_ok = true;
    let mut prop2_checks = Vec::new();
    if is_critical {
        for v in h.vertices() {
            let d = h.degree(v)?;
            let bound = r * l.lists[v].len();
            if d < bound {
                degree_bound_ok = false;
            }
            if d == bound {
                low_vertices.insert(v.clone());
            }
        }
        for v in &low_vertices {
            prop2_checks.push(low_vertex_check(h, p, l, v, &witness_colorings[v])?);
        }
    }
    Ok(CriticalityReport {
        is_critical,
        low_vertices,
        witness_colorings,
        degree_bound_ok,
        prop2_checks,
    })
}

fn low_vertex_check(
    h: &Hypergraph,
    p: &Property,
    l: &ListAssignment,
    v: &str,
    phi: &Coloring,
) -> Result<LowVertexCheck> {
    let r = p.r() as usize;
    let mut d_c = BTreeMap::new();
    let mut covered_edges: BTreeSet<usize> = BTreeSet::new();
    let edge_ids_at_v: Vec<usize> = (0..h.edge_count())
        .filter(|&e| h.incidence(e).unwrap().iter().any(|x| x == v))
        .collect();
    for &c in &l.lists[v] {
        let mut class: Vec<&str> = phi
            .assignment
            .iter()
            .filter(|(_, col)| **col == c)
            .map(|(u, _)| u.as_str())
            .collect();
        class.push(v);
        let dc = edge_ids_at_v
            .iter()
            .filter(|&&e| {
                h.incidence(e)
                    .unwrap()
                    .iter()
                    .all(|x| class.contains(&x.as_str()))
            })
            .count();
        for &e in &edge_ids_at_v {
            if h.incidence(e)?
                .iter()
                .all(|x| class.contains(&x.as_str()))
            {
                covered_edges.insert(e);
            }
        }
        d_c.insert(c, dc);
    }
    Ok(LowVertexCheck {
        vertex: v.to_string(),
        all_equal_r: d_c.values().all(|&d| d == r),
        edge_cover_ok: covered_edges.len() == edge_ids_at_v.len(),
        d_c,
    })
}

/// Shrinks a (P, L)-critical hypergraph to its low vertices. The result is
/// in general not a subhypergraph.
pub fn low_vertex_hypergraph(
    h: &Hypergraph,
    p: &Property,
    l: &ListAssignment,
) -> Result<Hypergraph> {
    let report = is_pl_critical(h, p, l)?;
    if !report.is_critical {
        return Err(Error::Domain(
            "low-vertex hypergraph requires a (P, L)-critical input".into(),
        ));
    }
    let low: Vec<&String> = report.low_vertices.iter().collect();
    h.shrink(&low)
}

/// A minimum-order induced subhypergraph with the same P-list-chromatic
/// number; ties are broken by the smallest canonical form.
pub fn critical_core(h: &Hypergraph, p: &Property) -> Result<Hypergraph> {
    let guards = ChiListGuards {
        max_order: h.order().max(6),
        max_k: h.order().max(3),
    };
    let target = chi_list_p_with(h, p, guards)?;
    let vs = h.vertices();
    let n = vs.len();
    for size in 0..=n {
        let mut candidates: Vec<(String, Hypergraph)> = Vec::new();
        for sub in 0u32..(1u32 << n) {
            if sub.count_ones() as usize != size {
                continue;
            }
            let keep: Vec<&String> = (0..n).filter(|i| sub >> i & 1 == 1).map(|i| &vs[i]).collect();
            let g = h.induced(&keep)?;
            if chi_list_p_with(&g, p, guards)? == target {
                candidates.push((crate::enumerate::canonical_form(&g)?, g));
            }
        }
        if !candidates.is_empty() {
            candidates.sort_by(|a, b| a.0.cmp(&b.0));
            return Ok(candidates.swap_remove(0).1);
        }
    }
    unreachable!("the full hypergraph always matches its own list-chromatic number")
}
