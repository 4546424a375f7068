//! Immutable multi-hypergraph data model.
//!
//! A hypergraph is a triple `(V, E, i)` where `i` maps each edge to its
//! incidence set of at least two vertices. Edges are identified by their
//! position, so parallel edges (distinct edges with equal incidence) are
//! representable. All operations return new values.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// A finite, loopless multi-hypergraph over string vertex identifiers.
///
/// Vertices are kept sorted and edges keep their construction order; each
/// edge's incidence set is stored sorted. Edge ids are positions in the
/// edge list.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Hypergraph {
    vertices: Vec<String>,
    edges: Vec<Vec<String>>,
}

#[derive(Serialize, Deserialize)]
struct HypergraphJson {
    vertices: Vec<String>,
    edges: Vec<Vec<String>>,
}

/// Per-vertex degrees together with the derived aggregates.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DegreeProfile {
    pub degrees: BTreeMap<String, usize>,
    pub min_degree: usize,
    pub max_degree: usize,
    pub degree_sum: usize,
}

impl Hypergraph {
    /// Builds a hypergraph from distinct vertex ids and edge incidence sets.
    ///
    /// Edges are numbered in input order. Fails if a vertex id repeats, an
    /// edge mentions an unknown vertex, or an incidence set has fewer than
    /// two distinct vertices.
    pub fn build<S: AsRef<str>, T: AsRef<str>>(
        vertices: &[S],
        edges: &[Vec<T>],
    ) -> Result<Hypergraph> {
        let mut vs: Vec<String> = vertices.iter().map(|s| s.as_ref().to_string()).collect();
        vs.sort();
        if vs.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::Construction("duplicate vertex id".into()));
        }
        let vset: BTreeSet<&str> = vs.iter().map(|s| s.as_str()).collect();
        let mut es = Vec::with_capacity(edges.len());
        for (idx, e) in edges.iter().enumerate() {
            let inc: BTreeSet<String> = e.iter().map(|s| s.as_ref().to_string()).collect();
            if inc.len() < 2 {
                return Err(Error::Construction(format!(
                    "edge {idx}: incidence cardinality < 2"
                )));
            }
            for v in &inc {
                if !vset.contains(v.as_str()) {
                    return Err(Error::Construction(format!(
                        "edge {idx}: unknown vertex {v:?}"
                    )));
                }
            }
            es.push(inc.into_iter().collect());
        }
        Ok(Hypergraph {
            vertices: vs,
            edges: es,
        })
    }

    /// The empty hypergraph.
    pub fn empty() -> Hypergraph {
        Hypergraph {
            vertices: Vec::new(),
            edges: Vec::new(),
        }
    }

    /// Complete simple graph on `n` vertices named `v0..`.
    pub fn complete(n: usize) -> Hypergraph {
        let vs: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
        let mut es = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                es.push(vec![vs[i].clone(), vs[j].clone()]);
            }
        }
        Hypergraph::build(&vs, &es).expect("complete graph is well formed")
    }

    /// Cycle of order `n >= 3` (ordinary edges), vertices `v0..`.
    pub fn cycle(n: usize) -> Hypergraph {
        assert!(n >= 3, "cycle needs order >= 3");
        let vs: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
        let es: Vec<Vec<String>> = (0..n)
            .map(|i| vec![vs[i].clone(), vs[(i + 1) % n].clone()])
            .collect();
        Hypergraph::build(&vs, &es).expect("cycle is well formed")
    }

    /// Path on `n >= 1` vertices `v0..`.
    pub fn path(n: usize) -> Hypergraph {
        let vs: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
        let es: Vec<Vec<String>> = (1..n)
            .map(|i| vec![vs[i - 1].clone(), vs[i].clone()])
            .collect();
        Hypergraph::build(&vs, &es).expect("path is well formed")
    }

    pub fn order(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn has_vertex(&self, v: &str) -> bool {
        self.vertices.binary_search_by(|x| x.as_str().cmp(v)).is_ok()
    }

    /// Incidence set of edge `e` (sorted).
    pub fn incidence(&self, e: usize) -> Result<&[String]> {
        self.edges
            .get(e)
            .map(|v| v.as_slice())
            .ok_or_else(|| Error::Domain(format!("unknown edge id {e}")))
    }

    pub fn edges(&self) -> impl Iterator<Item = &[String]> {
        self.edges.iter().map(|e| e.as_slice())
    }

    /// No two edges share an incidence set.
    pub fn is_simple(&self) -> bool {
        let mut seen: BTreeSet<&[String]> = BTreeSet::new();
        self.edges.iter().all(|e| seen.insert(e.as_slice()))
    }

    /// Number of edges incident to `v`.
    pub fn degree(&self, v: &str) -> Result<usize> {
        if !self.has_vertex(v) {
            return Err(Error::Domain(format!("unknown vertex {v:?}")));
        }
        Ok(self
            .edges
            .iter()
            .filter(|e| e.iter().any(|x| x == v))
            .count())
    }

    /// Degrees of all vertices with minimum, maximum and sum.
    ///
    /// The empty hypergraph reports minimum and maximum degree 0.
    pub fn degree_profile(&self) -> DegreeProfile {
        let mut degrees: BTreeMap<String, usize> =
            self.vertices.iter().map(|v| (v.clone(), 0)).collect();
        for e in &self.edges {
            for v in e {
                *degrees.get_mut(v).expect("edge vertex exists") += 1;
            }
        }
        let min_degree = degrees.values().copied().min().unwrap_or(0);
        let max_degree = degrees.values().copied().max().unwrap_or(0);
        let degree_sum = degrees.values().sum();
        DegreeProfile {
            degrees,
            min_degree,
            max_degree,
            degree_sum,
        }
    }

    /// Number of ordinary edges with incidence exactly `{u, v}`.
    ///
    /// Hyperedges containing both vertices do not count.
    pub fn multiplicity(&self, u: &str, v: &str) -> Result<usize> {
        if u == v {
            return Err(Error::Domain("multiplicity needs two distinct vertices".into()));
        }
        if !self.has_vertex(u) || !self.has_vertex(v) {
            return Err(Error::Domain("multiplicity: unknown vertex".into()));
        }
        Ok(self
            .edges
            .iter()
            .filter(|e| e.len() == 2 && e.iter().any(|x| x == u) && e.iter().any(|x| x == v))
            .count())
    }

    fn check_subset<S: AsRef<str>>(&self, xs: &[S]) -> Result<BTreeSet<String>> {
        let mut set = BTreeSet::new();
        for x in xs {
            let x = x.as_ref();
            if !self.has_vertex(x) {
                return Err(Error::Domain(format!("vertex {x:?} not in hypergraph")));
            }
            set.insert(x.to_string());
        }
        Ok(set)
    }

    /// Subhypergraph induced by `keep`: edges entirely inside `keep` survive
    /// with their incidence unchanged.
    pub fn induced<S: AsRef<str>>(&self, keep: &[S]) -> Result<Hypergraph> {
        let keep = self.check_subset(keep)?;
        let edges = self
            .edges
            .iter()
            .filter(|e| e.iter().all(|v| keep.contains(v)))
            .cloned()
            .collect();
        Ok(Hypergraph {
            vertices: keep.into_iter().collect(),
            edges,
        })
    }

    /// Shrinks to `keep`: edges meeting `keep` in at least two vertices
    /// survive with their incidence truncated to `keep`.
    ///
    /// The result need not be a subhypergraph and may gain parallel edges.
    pub fn shrink<S: AsRef<str>>(&self, keep: &[S]) -> Result<Hypergraph> {
        let keep = self.check_subset(keep)?;
        let mut edges = Vec::new();
        for e in &self.edges {
            let inc: Vec<String> = e.iter().filter(|v| keep.contains(*v)).cloned().collect();
            if inc.len() >= 2 {
                edges.push(inc);
            }
        }
        Ok(Hypergraph {
            vertices: keep.into_iter().collect(),
            edges,
        })
    }

    /// `H - X`: the subhypergraph induced by the complement of `drop`.
    pub fn delete<S: AsRef<str>>(&self, drop: &[S]) -> Result<Hypergraph> {
        let drop = self.check_subset(drop)?;
        let keep: Vec<&String> = self.vertices.iter().filter(|v| !drop.contains(*v)).collect();
        self.induced(&keep)
    }

    /// `H ÷ X`: shrink to the complement of `drop`.
    pub fn shrink_delete<S: AsRef<str>>(&self, drop: &[S]) -> Result<Hypergraph> {
        let drop = self.check_subset(drop)?;
        let keep: Vec<&String> = self.vertices.iter().filter(|v| !drop.contains(*v)).collect();
        self.shrink(&keep)
    }

    /// `H - v`.
    pub fn delete_vertex(&self, v: &str) -> Result<Hypergraph> {
        self.delete(&[v])
    }

    /// `H ÷ v`.
    pub fn shrink_delete_vertex(&self, v: &str) -> Result<Hypergraph> {
        self.shrink_delete(&[v])
    }

    /// `H - e`: deletes edge `e`, keeping all vertices.
    pub fn delete_edge(&self, e: usize) -> Result<Hypergraph> {
        if e >= self.edges.len() {
            return Err(Error::Domain(format!("unknown edge id {e}")));
        }
        let mut edges = self.edges.clone();
        edges.remove(e);
        Ok(Hypergraph {
            vertices: self.vertices.clone(),
            edges,
        })
    }

    /// Merges `v1` in `h1` with `v2` in `h2` into the fresh vertex `vstar`.
    ///
    /// The inputs must have disjoint vertex sets; edges keep their incidence
    /// except that `v1` and `v2` are replaced by `vstar`, so the degree of
    /// `vstar` is the sum of the two merged degrees.
    pub fn merge(
        h1: &Hypergraph,
        v1: &str,
        h2: &Hypergraph,
        v2: &str,
        vstar: &str,
    ) -> Result<Hypergraph> {
        if !h1.has_vertex(v1) || !h2.has_vertex(v2) {
            return Err(Error::Domain("merge vertex not present".into()));
        }
        if h1.vertices.iter().any(|v| h2.has_vertex(v)) {
            return Err(Error::Domain("merge inputs share a vertex".into()));
        }
        if h1.has_vertex(vstar) || h2.has_vertex(vstar) {
            return Err(Error::Domain("merge target vertex already present".into()));
        }
        let rename = |name: &String, old: &str| -> String {
            if name == old {
                vstar.to_string()
            } else {
                name.clone()
            }
        };
        let mut vertices: Vec<String> = Vec::new();
        vertices.extend(h1.vertices.iter().filter(|v| *v != v1).cloned());
        vertices.extend(h2.vertices.iter().filter(|v| *v != v2).cloned());
        vertices.push(vstar.to_string());
        vertices.sort();
        let mut edges = Vec::new();
        for e in &h1.edges {
            let mut inc: Vec<String> = e.iter().map(|v| rename(v, v1)).collect();
            inc.sort();
            edges.push(inc);
        }
        for e in &h2.edges {
            let mut inc: Vec<String> = e.iter().map(|v| rename(v, v2)).collect();
            inc.sort();
            edges.push(inc);
        }
        Ok(Hypergraph { vertices, edges })
    }

    /// `tH`: replaces each edge of a simple hypergraph by `t` parallel copies.
    pub fn replicate(&self, t: usize) -> Result<Hypergraph> {
        if t == 0 {
            return Err(Error::Domain("replication factor must be >= 1".into()));
        }
        if !self.is_simple() {
            return Err(Error::Domain("replicate requires a simple hypergraph".into()));
        }
        let mut edges = Vec::with_capacity(self.edges.len() * t);
        for e in &self.edges {
            for _ in 0..t {
                edges.push(e.clone());
            }
        }
        Ok(Hypergraph {
            vertices: self.vertices.clone(),
            edges,
        })
    }

    /// Canonical JSON interchange form: vertices sorted, each incidence
    /// sorted, edges sorted lexicographically with parallel copies adjacent.
    pub fn to_canonical_json(&self) -> String {
        let mut edges = self.edges.clone();
        edges.sort();
        let doc = HypergraphJson {
            vertices: self.vertices.clone(),
            edges,
        };
        serde_json::to_string(&doc).expect("serialization cannot fail")
    }

    /// Parses the JSON interchange form, validating all invariants.
    pub fn from_json(s: &str) -> Result<Hypergraph> {
        let doc: HypergraphJson =
            serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        Hypergraph::build(&doc.vertices, &doc.edges)
    }
}
