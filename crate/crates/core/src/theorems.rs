//! Executable verifiers for the structure theorems and the exact-rational
//! degree-sum machinery.
//!
//! All rational quantities are exact (`num-rational` over i64); reports
//! serialize rationals as `{num, den}` pairs.

use std::collections::BTreeSet;

use num_rational::Ratio;
use serde::Serialize;

use crate::coloring::{
    chi_list_p_with, find_pl_coloring, is_pl_critical, ChiListGuards, ListAssignment,
};
use crate::hypergraph::Hypergraph;
use crate::property::Property;
use crate::structure::{blocks, classify_brick, is_connected, trim_end_block, BlockDecomposition,
    BrickClassification};
use crate::{Error, Result};

pub type Rat = Ratio<i64>;

/// Serialize a [`Rat`] as `{"num": .., "den": ..}`.
pub mod rat_serde {
    use super::Rat;
    use serde::ser::SerializeStruct;
    use serde::Serializer;

    pub fn serialize<S: Serializer>(r: &Rat, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("Rat", 2)?;
        st.serialize_field("num", r.numer())?;
        st.serialize_field("den", r.denom())?;
        st.end()
    }
}

mod rat_opt_serde {
    use super::Rat;
    use serde::ser::SerializeStruct;
    use serde::Serializer;

    #[allow(clippy::ref_option)]
    pub fn serialize<S: Serializer>(
        r: &Option<Rat>,
        s: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        match r {
            None => s.serialize_none(),
            Some(r) => {
                let mut st = s.serialize_struct("Rat", 2)?;
                st.serialize_field("num", r.numer())?;
                st.serialize_field("den", r.denom())?;
                st.end()
            }
        }
    }
}

/// The exact quantities attached to a minimum degree `delta >= 2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct GallaiQuantities {
    pub delta: usize,
    #[serde(with = "rat_serde")]
    pub r_delta: Rat,
    #[serde(with = "rat_serde")]
    pub a_coefficient: Rat,
}

impl GallaiQuantities {
    pub fn new(delta: usize) -> Result<GallaiQuantities> {
        if delta < 2 {
            return Err(Error::Domain("gallai quantities need delta >= 2".into()));
        }
        let d = delta as i64;
        Ok(GallaiQuantities {
            delta,
            r_delta: Rat::new(d * d - d + 2, d),
            a_coefficient: Rat::new(d - 2, d * d + 2 * d - 2),
        })
    }
}

/// `sigma(F) = |V(F)| * r_delta - d(F)`, exactly.
pub fn sigma(f: &Hypergraph, delta: usize) -> Result<Rat> {
    let q = GallaiQuantities::new(delta)?;
    let n = f.order() as i64;
    let dsum = f.degree_profile().degree_sum as i64;
    Ok(Rat::from_integer(n) * q.r_delta - Rat::from_integer(dsum))
}

/// `a(delta, n) = delta * n + n * (delta - 2) / (delta^2 + 2 delta - 2)`.
pub fn a_bound(delta: usize, n: usize) -> Result<Rat> {
    let q = GallaiQuantities::new(delta)?;
    let n = Rat::from_integer(n as i64);
    Ok(Rat::from_integer(delta as i64) * n + q.a_coefficient * n)
}

fn block_hypergraph(h: &Hypergraph, block: &BTreeSet<String>) -> Hypergraph {
    let keep: Vec<&String> = block.iter().collect();
    h.induced(&keep).expect("block vertices exist")
}

/// True iff each block of the connected simple hypergraph is a complete
/// graph, an odd cycle, an r-regular member of F(P), or a P-member with
/// maximum degree at most r.
pub fn is_gallai_tree(h: &Hypergraph, p: &Property) -> Result<bool> {
    if !is_connected(h) {
        return Err(Error::Domain("gallai trees are connected".into()));
    }
    if !h.is_simple() {
        return Err(Error::Domain("gallai trees are simple".into()));
    }
    let d = blocks(h);
    for b in &d.blocks {
        if !gallai_block_ok(h, p, b)? {
            return Ok(false);
        }
    }
    Ok(true)
}

fn gallai_block_ok(h: &Hypergraph, p: &Property, b: &BTreeSet<String>) -> Result<bool> {
    let sub = block_hypergraph(h, b);
    match classify_brick(&sub)? {
        BrickClassification::TKn { t: 1, .. } => return Ok(true),
        BrickClassification::TCn { t: 1, .. } => return Ok(true),
        _ => {}
    }
    let profile = sub.degree_profile();
    let r = p.r() as usize;
    if p.in_f(&sub) && profile.min_degree == r && profile.max_degree == r {
        return Ok(true);
    }
    Ok(p.member(&sub) && profile.max_degree <= r)
}

/// True iff every separating vertex lies in exactly two blocks, one a
/// `K_delta` and the other a single-edge block, and every non-separating
/// vertex lies in a `K_delta` block.
pub fn is_epsilon_delta(h: &Hypergraph, delta: usize) -> Result<bool> {
    if !is_connected(h) {
        return Err(Error::Domain("epsilon-delta hypergraphs are connected".into()));
    }
    let d = blocks(h);
    let is_k_delta = |b: &BTreeSet<String>| -> bool {
        b.len() == delta
            && matches!(
                classify_brick(&block_hypergraph(h, b)),
                Ok(BrickClassification::TKn { t: 1, n }) if n == delta
            )
    };
    let is_single_edge = |b: &BTreeSet<String>| -> bool {
        block_hypergraph(h, b).edge_count() == 1
    };
    for v in h.vertices() {
        let containing: Vec<&BTreeSet<String>> =
            d.blocks.iter().filter(|b| b.contains(v)).collect();
        if d.separating_vertices.contains(v) {
            if containing.len() != 2 {
                return Ok(false);
            }
            let (a, b) = (containing[0], containing[1]);
            let ok = (is_k_delta(a) && is_single_edge(b)) || (is_k_delta(b) && is_single_edge(a));
            if !ok {
                return Ok(false);
            }
        } else if !containing.iter().any(|b| is_k_delta(b)) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// How a block fares against the three structural alternatives.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict")]
pub enum BlockVerdict {
    FRegular { r: u32 },
    Brick { t: usize, n: usize, cycle: bool },
    SmallInP { max_degree: usize },
    Violation,
}

/// Per-block classification of a low-vertex hypergraph.
#[derive(Debug, Clone, Serialize)]
pub struct BlockStructureReport {
    pub low_vertices: BTreeSet<String>,
    pub blocks: Vec<(BTreeSet<String>, BlockVerdict)>,
    pub pass: bool,
}

fn classify_block(h: &Hypergraph, p: &Property, b: &BTreeSet<String>) -> BlockVerdict {
    let sub = block_hypergraph(h, b);
    let profile = sub.degree_profile();
    let r = p.r();
    if p.in_f(&sub)
        && profile.min_degree == r as usize
        && profile.max_degree == r as usize
    {
        return BlockVerdict::FRegular { r };
    }
    match classify_brick(&sub) {
        Ok(BrickClassification::TKn { t, n }) => return BlockVerdict::Brick { t, n, cycle: false },
        Ok(BrickClassification::TCn { t, n }) => return BlockVerdict::Brick { t, n, cycle: true },
        _ => {}
    }
    if p.member(&sub) && profile.max_degree <= r as usize {
        return BlockVerdict::SmallInP {
            max_degree: profile.max_degree,
        };
    }
    BlockVerdict::Violation
}

/// Checks the block structure of the low-vertex hypergraph of a
/// (P, L)-critical instance: every block must be a brick, an r-regular
/// F(P)-member, or a P-member with maximum degree at most r.
pub fn verify_theorem3(
    h: &Hypergraph,
    p: &Property,
    l: &ListAssignment,
) -> Result<BlockStructureReport> {
    if h.is_empty() {
        return Err(Error::Domain("theorem 3 needs a non-empty hypergraph".into()));
    }
    let crit = is_pl_critical(h, p, l)?;
    if !crit.is_critical {
        return Err(Error::Domain("theorem 3 needs a (P, L)-critical input".into()));
    }
    if crit.low_vertices.is_empty() {
        return Err(Error::Domain(
            "theorem 3 needs a non-empty low-vertex hypergraph".into(),
        ));
    }
    let low: Vec<&String> = crit.low_vertices.iter().collect();
    let f = h.shrink(&low)?;
    let d = blocks(&f);
    let verdicts: Vec<(BTreeSet<String>, BlockVerdict)> = d
        .blocks
        .iter()
        .map(|b| (b.clone(), classify_block(&f, p, b)))
        .collect();
    let pass = verdicts.iter().all(|(_, v)| *v != BlockVerdict::Violation);
    Ok(BlockStructureReport {
        low_vertices: crit.low_vertices,
        blocks: verdicts,
        pass,
    })
}

/// Which clause of the Brooks-type equality characterization applies.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "clause")]
pub enum EqualityClause {
    CompleteType { t: usize, n: usize },
    OddCycleType { t: usize, n: usize },
    FRegular,
    None,
}

#[derive(Debug, Clone, Serialize)]
pub struct BrooksReport {
    pub max_degree: usize,
    pub r: u32,
    pub chi_list: u32,
    pub bound: u32,
    pub inequality_ok: bool,
    /// chi^l <= Delta/r + 1, compared exactly.
    pub degree_ratio_ok: bool,
    pub equality: Option<EqualityClause>,
    pub pass: bool,
}

/// Checks the Brooks-type bound `chi^l(H:P) <= ceil(Delta/r) + 1` and, for
/// equality instances, the structural characterization of the extremal
/// hypergraphs.
pub fn verify_brooks(h: &Hypergraph, p: &Property, guards: ChiListGuards) -> Result<BrooksReport> {
    if !p.additive() {
        return Err(Error::Domain("the Brooks-type bound needs an additive property".into()));
    }
    if !is_connected(h) {
        return Err(Error::Domain("the Brooks-type bound needs a connected hypergraph".into()));
    }
    if p.r() == 0 {
        return Err(Error::Domain("the Brooks-type bound needs r >= 1".into()));
    }
    let delta = h.degree_profile().max_degree;
    let r = p.r();
    let chi_list = chi_list_p_with(h, p, guards)?;
    let bound = (delta as u32).div_ceil(r) + 1;
    let inequality_ok = chi_list <= bound;
    // chi_list <= delta / r + 1 over the rationals
    let degree_ratio_ok = chi_list as u64 * r as u64 <= delta as u64 + r as u64;
    let equality = if chi_list == bound {
        Some(equality_clause(h, p, chi_list))
    } else {
        None
    };
    let pass = inequality_ok
        && degree_ratio_ok
        && !matches!(equality, Some(EqualityClause::None));
    Ok(BrooksReport {
        max_degree: delta,
        r,
        chi_list,
        bound,
        inequality_ok,
        degree_ratio_ok,
        equality,
        pass,
    })
}

fn equality_clause(h: &Hypergraph, p: &Property, chi_list: u32) -> EqualityClause {
    let delta = h.degree_profile().max_degree as u32;
    let r = p.r();
    if delta % r != 0 {
        return EqualityClause::None;
    }
    let k = delta / r;
    match classify_brick(h) {
        Ok(BrickClassification::TKn { t, n }) if t as u32 * (n as u32 - 1) == k * r => {
            return EqualityClause::CompleteType { t, n };
        }
        Ok(BrickClassification::TCn { t, n }) if t as u32 == r && chi_list == 3 => {
            return EqualityClause::OddCycleType { t, n };
        }
        _ => {}
    }
    let profile = h.degree_profile();
    if p.in_f(h) && profile.min_degree == r as usize && profile.max_degree == r as usize {
        return EqualityClause::FRegular;
    }
    EqualityClause::None
}

#[derive(Debug, Clone, Serialize)]
pub struct Theorem6Report {
    pub colorable: bool,
    pub blocks: Vec<(BTreeSet<String>, BlockVerdict)>,
    pub pass: bool,
}

/// Degree-version check: with `r |L(v)| >= d_H(v)` everywhere, an
/// uncolorable connected hypergraph must have every block a brick, an
/// r-regular F(P)-member, or a P-member with maximum degree at most r.
pub fn verify_theorem6(
    h: &Hypergraph,
    p: &Property,
    l: &ListAssignment,
) -> Result<Theorem6Report> {
    if !is_connected(h) {
        return Err(Error::Domain("theorem 6 needs a connected hypergraph".into()));
    }
    for v in h.vertices() {
        let lv = l
            .lists
            .get(v)
            .ok_or_else(|| Error::Domain(format!("no list for vertex {v}")))?;
        if (p.r() as usize) * lv.len() < h.degree(v)? {
            return Err(Error::Domain(format!(
                "theorem 6 needs r|L(v)| >= d(v); violated at {v}"
            )));
        }
    }
    let colorable = find_pl_coloring(h, p, l)?.is_some();
    if colorable {
        return Ok(Theorem6Report {
            colorable,
            blocks: Vec::new(),
            pass: true,
        });
    }
    let d = blocks(h);
    let verdicts: Vec<(BTreeSet<String>, BlockVerdict)> = d
        .blocks
        .iter()
        .map(|b| (b.clone(), classify_block(h, p, b)))
        .collect();
    let pass = verdicts.iter().all(|(_, v)| *v != BlockVerdict::Violation);
    Ok(Theorem6Report {
        colorable,
        blocks: verdicts,
        pass,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct GallaiBoundReport {
    pub delta: usize,
    pub order: usize,
    pub degree_sum: usize,
    pub low_count: usize,
    #[serde(with = "rat_serde")]
    pub sigma: Rat,
    pub sigma_nonneg: bool,
    #[serde(with = "rat_serde")]
    pub bound: Rat,
    pub bound_ok: bool,
    /// d(H) >= d(H - U) + sigma + (delta + 1 - 2/delta)|U|.
    pub chain1_ok: bool,
    /// d(H) >= (delta + 1) n - |U|.
    pub chain2_ok: bool,
    pub pass: bool,
}

/// Degree-sum bound for locally linear critical instances:
/// `d(H) >= a(delta, |H|)` with `delta = k r`, verified exactly along with
/// the inequality chain it rests on.
pub fn verify_gallai_bound(
    h: &Hypergraph,
    p: &Property,
    l: &ListAssignment,
) -> Result<GallaiBoundReport> {
    if !p.additive() || p.r() == 0 {
        return Err(Error::Precondition(
            "additive: the bound needs a smooth additive property with r >= 1".into(),
        ));
    }
    if !is_connected(h) {
        return Err(Error::Precondition("connected: the instance must be connected".into()));
    }
    let sizes: BTreeSet<usize> = h
        .vertices()
        .iter()
        .map(|v| l.lists.get(v).map(|s| s.len()).unwrap_or(0))
        .collect();
    if sizes.len() != 1 {
        return Err(Error::Precondition(
            "uniform-lists: all lists must have the same size".into(),
        ));
    }
    let k = *sizes.iter().next().unwrap();
    if k < 2 {
        return Err(Error::Precondition("list-size: the bound needs k >= 2".into()));
    }
    let r = p.r() as usize;
    let delta = k * r;
    if delta < 3 {
        return Err(Error::Precondition("delta: the bound needs delta = k r >= 3".into()));
    }
    if matches!(
        classify_brick(h),
        Ok(BrickClassification::TKn { t: 1, n }) if n == delta + 1
    ) {
        return Err(Error::Precondition(
            "complete-exclusion: H = K_{delta+1} is excluded".into(),
        ));
    }
    let crit = is_pl_critical(h, p, l)?;
    if !crit.is_critical {
        return Err(Error::Precondition(
            "critical: the instance must be (P, L)-critical".into(),
        ));
    }
    let low: Vec<&String> = crit.low_vertices.iter().collect();
    let low_hypergraph = h.shrink(&low)?;
    if !low_hypergraph.is_simple() {
        return Err(Error::Precondition(
            "locally-linear: the low-vertex hypergraph must be simple".into(),
        ));
    }

    let q = GallaiQuantities::new(delta)?;
    let profile = h.degree_profile();
    let n = h.order();
    let u: Vec<&String> = h
        .vertices()
        .iter()
        .filter(|v| profile.degrees[*v] == delta)
        .collect();
    let h_u = h.shrink(&u)?;
    let sigma_val = Rat::from_integer(u.len() as i64) * q.r_delta
        - Rat::from_integer(h_u.degree_profile().degree_sum as i64);
    let d_h = Rat::from_integer(profile.degree_sum as i64);
    let bound = a_bound(delta, n)?;
    let d_minus_u = h.delete(&u)?.degree_profile().degree_sum as i64;
    let chain1_rhs = Rat::from_integer(d_minus_u)
        + sigma_val
        + (Rat::from_integer(delta as i64 + 1) - Rat::new(2, delta as i64))
            * Rat::from_integer(u.len() as i64);
    let chain2_rhs = Rat::from_integer(((delta + 1) * n) as i64 - u.len() as i64);
    let report = GallaiBoundReport {
        delta,
        order: n,
        degree_sum: profile.degree_sum,
        low_count: u.len(),
        sigma: sigma_val,
        sigma_nonneg: sigma_val >= Rat::from_integer(0),
        bound,
        bound_ok: d_h >= bound,
        chain1_ok: d_h >= chain1_rhs,
        chain2_ok: d_h >= chain2_rhs,
        pass: false,
    };
    Ok(GallaiBoundReport {
        pass: report.sigma_nonneg && report.bound_ok && report.chain1_ok && report.chain2_ok,
        ..report
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct SigmaLemmasReport {
    #[serde(with = "rat_serde")]
    pub sigma: Rat,
    pub is_epsilon: bool,
    /// sigma(B) = 2 for K_delta blocks, sigma(B) >= r_delta otherwise.
    pub block_bounds_ok: bool,
    /// sigma(T) = sigma(T_B) + sigma(B) - r_delta for every end-block B.
    pub end_block_identity_ok: bool,
    /// sigma(T) >= 2 when epsilon-delta, >= r_delta otherwise (delta >= 4).
    #[serde(with = "rat_opt_serde")]
    pub lemma10_bound: Option<Rat>,
    pub lemma10_ok: Option<bool>,
    pub pass: bool,
}

/// Verifies the per-block sigma bounds, the end-block additivity identity,
/// and (for delta >= 4) the epsilon-delta lower bounds on a Gallai tree
/// with maximum degree at most delta, distinct from `K_{delta+1}`.
pub fn verify_sigma_lemmas(
    t: &Hypergraph,
    p: &Property,
    delta: usize,
) -> Result<SigmaLemmasReport> {
    if delta < 3 {
        return Err(Error::Domain("sigma lemmas need delta >= 3".into()));
    }
    if !is_gallai_tree(t, p)? {
        return Err(Error::Domain("input is not a gallai tree for the property".into()));
    }
    if t.degree_profile().max_degree > delta {
        return Err(Error::Domain("gallai tree exceeds maximum degree delta".into()));
    }
    if matches!(
        classify_brick(t),
        Ok(BrickClassification::TKn { t: 1, n }) if n == delta + 1
    ) {
        return Err(Error::Domain("K_{delta+1} is excluded".into()));
    }
    let q = GallaiQuantities::new(delta)?;
    let sigma_t = sigma(t, delta)?;
    let decomposition = blocks(t);
    let mut block_bounds_ok = true;
    for b in &decomposition.blocks {
        let sub = block_hypergraph(t, b);
        let s = sigma(&sub, delta)?;
        let is_k_delta = matches!(
            classify_brick(&sub),
            Ok(BrickClassification::TKn { t: 1, n }) if n == delta
        );
        let ok = if is_k_delta {
            s == Rat::from_integer(2)
        } else {
            s >= q.r_delta
        };
        if !ok {
            block_bounds_ok = false;
        }
    }
    let end_block_identity_ok = end_block_identity(t, &decomposition, delta, sigma_t)?;
    let (lemma10_bound, lemma10_ok) = if delta >= 4 {
        let eps = is_epsilon_delta(t, delta)?;
        let bound = if eps { Rat::from_integer(2) } else { q.r_delta };
        (Some(bound), Some(sigma_t >= bound))
    } else {
        (None, None)
    };
    let is_epsilon = is_epsilon_delta(t, delta)?;
    let pass = block_bounds_ok && end_block_identity_ok && lemma10_ok.unwrap_or(true);
    Ok(SigmaLemmasReport {
        sigma: sigma_t,
        is_epsilon,
        block_bounds_ok,
        end_block_identity_ok,
        lemma10_bound,
        lemma10_ok,
        pass,
    })
}

fn end_block_identity(
    t: &Hypergraph,
    decomposition: &BlockDecomposition,
    delta: usize,
    sigma_t: Rat,
) -> Result<bool> {
    let q = GallaiQuantities::new(delta)?;
    for (i, b) in decomposition.blocks.iter().enumerate() {
        let seps = b
            .iter()
            .filter(|v| decomposition.separating_vertices.contains(*v))
            .count();
        if seps > 1 {
            continue;
        }
        let trimmed = trim_end_block(t, decomposition, i)?;
        let lhs = sigma_t;
        let rhs = sigma(&trimmed, delta)? + sigma(&block_hypergraph(t, b), delta)? - q.r_delta;
        if lhs != rhs {
            return Ok(false);
        }
    }
    Ok(true)
}
