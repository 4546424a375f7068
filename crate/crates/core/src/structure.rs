//! Connectivity, block decomposition, bridges, and brick classification.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::hypergraph::Hypergraph;
use crate::kernel::{mask_to_names, KBrick, Kh};
use crate::{Error, Result};

/// The blocks of a hypergraph together with its separating vertices.
///
/// Blocks are maximal connected induced subhypergraphs without a separating
/// vertex, listed by their vertex sets sorted by smallest contained vertex;
/// a vertex separates iff it lies in at least two blocks.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BlockDecomposition {
    pub blocks: Vec<BTreeSet<String>>,
    pub separating_vertices: BTreeSet<String>,
    /// For each separating vertex, the indices of the blocks containing it.
    pub block_adjacency: BTreeMap<String, Vec<usize>>,
}

/// Whether a connected hypergraph is a t-fold complete graph, a t-fold odd
/// cycle, or neither.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "kind")]
pub enum BrickClassification {
    TKn { t: usize, n: usize },
    TCn { t: usize, n: usize },
    NotBrick,
}

/// Connected components as vertex sets, sorted by smallest vertex.
///
/// Two vertices are connected iff some hyperpath (a sequence of edges, each
/// sharing a vertex with the next) links them.
pub fn components(h: &Hypergraph) -> Vec<BTreeSet<String>> {
    let (kh, names) = Kh::from_hypergraph(h);
    kh.components_induced(kh.full_mask())
        .into_iter()
        .map(|m| mask_to_names(m, &names))
        .collect()
}

pub fn is_connected(h: &Hypergraph) -> bool {
    components(h).len() == 1
}

/// Vertices v for which `H ÷ v` has more components than `H`.
pub fn separating_vertices(h: &Hypergraph) -> BTreeSet<String> {
    let (kh, names) = Kh::from_hypergraph(h);
    mask_to_names(kh.separating_in(kh.full_mask()), &names)
}

/// Block decomposition per the separating-vertex criterion.
pub fn blocks(h: &Hypergraph) -> BlockDecomposition {
    let (kh, names) = Kh::from_hypergraph(h);
    let block_masks = kh.blocks_in(kh.full_mask());
    let blocks: Vec<BTreeSet<String>> = block_masks
        .iter()
        .map(|&m| mask_to_names(m, &names))
        .collect();
    let mut block_adjacency: BTreeMap<String, Vec<usize>> = BTreeMap::new();
    for (i, b) in blocks.iter().enumerate() {
        for v in b {
            block_adjacency.entry(v.clone()).or_default().push(i);
        }
    }
    block_adjacency.retain(|_, ids| ids.len() >= 2);
    let separating_vertices: BTreeSet<String> = block_adjacency.keys().cloned().collect();
    BlockDecomposition {
        blocks,
        separating_vertices,
        block_adjacency,
    }
}

/// True iff deleting edge `e` (keeping vertices) increases the component
/// count by exactly `|i(e)| - 1`.
pub fn is_bridge(h: &Hypergraph, e: usize) -> Result<bool> {
    let size = h.incidence(e)?.len();
    let before = components(h).len();
    let after = components(&h.delete_edge(e)?).len();
    Ok(after == before + size - 1)
}

/// Classifies a connected non-empty hypergraph as `tK_n`, `tC_n` (n >= 3
/// odd), or not a brick. `K_1` and `K_2` count as complete.
pub fn classify_brick(h: &Hypergraph) -> Result<BrickClassification> {
    if h.is_empty() {
        return Err(Error::Domain("brick classification needs a non-empty hypergraph".into()));
    }
    if !is_connected(h) {
        return Err(Error::Domain("brick classification needs a connected hypergraph".into()));
    }
    let (kh, _) = Kh::from_hypergraph(h);
    Ok(match kh.brick_in(kh.full_mask()) {
        KBrick::TKn { t, n } => BrickClassification::TKn { t, n },
        KBrick::TCn { t, n } => BrickClassification::TCn { t, n },
        KBrick::No => BrickClassification::NotBrick,
    })
}

/// Removes an end-block `B` except for its separating vertex `x`, returning
/// `T - (V(B) - {x})`. When `T` consists of a single block, `x` is the
/// smallest vertex and the result is `K_1` on it.
pub fn trim_end_block(
    t: &Hypergraph,
    decomposition: &BlockDecomposition,
    block: usize,
) -> Result<Hypergraph> {
    let b = decomposition
        .blocks
        .get(block)
        .ok_or_else(|| Error::Domain(format!("unknown block id {block}")))?;
    let seps: Vec<&String> = b
        .iter()
        .filter(|v| decomposition.separating_vertices.contains(*v))
        .collect();
    if seps.len() > 1 {
        return Err(Error::Domain("block is not an end-block".into()));
    }
    let x = match seps.first() {
        Some(v) => (*v).clone(),
        None => b
            .iter()
            .next()
            .cloned()
            .ok_or_else(|| Error::Domain("empty block".into()))?,
    };
    let drop: Vec<&String> = b.iter().filter(|v| **v != x).collect();
    t.delete(&drop)
}
