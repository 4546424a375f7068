//! Strict h-degeneracy, vector functions, f-partitions, and hard pairs.
//!
//! A hypergraph is strictly h-degenerate if every non-empty subhypergraph
//! has a vertex of degree below its h-value. For a vector function f, an
//! f-partition splits the vertices so that part i induces a strictly
//! f_i-degenerate subhypergraph. A connected instance admits no f-partition
//! for degree-feasible f exactly when (H, f) is a hard pair: a monoblock,
//! a t-fold complete graph or odd cycle with matching constant budgets, or
//! a vertex-merge of two smaller hard pairs. Both the exhaustive partition
//! search and the structural recognizer are provided; they are checked
//! against each other exhaustively in the acceptance suite.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::hypergraph::Hypergraph;
use crate::kernel::{mask_of, mask_to_names, validate_kcert, KCert, Kh, Mask};
use crate::structure::is_connected;
use crate::{Error, Result};

/// Per-vertex tuples of degeneracy budgets, `f: V -> N_0^p`. Serializes
/// as a plain map from vertex to its tuple.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VectorFunction {
    pub p: usize,
    pub values: BTreeMap<String, Vec<u32>>,
}

impl Serialize for VectorFunction {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.values.serialize(s)
    }
}

impl VectorFunction {
    /// A vector function on the vertices of `h`; every tuple must have the
    /// same positive length.
    pub fn new(h: &Hypergraph, values: BTreeMap<String, Vec<u32>>) -> Result<VectorFunction> {
        let p = values
            .values()
            .next()
            .map(|t| t.len())
            .unwrap_or(1);
        if p == 0 {
            return Err(Error::Domain("vector functions need p >= 1".into()));
        }
        if values.len() != h.order() || !h.vertices().iter().all(|v| values.contains_key(v)) {
            return Err(Error::Domain(
                "vector function domain must equal the vertex set".into(),
            ));
        }
        if values.values().any(|t| t.len() != p) {
            return Err(Error::Domain("ragged vector function".into()));
        }
        Ok(VectorFunction { p, values })
    }

    /// Constant vector function on `h`.
    pub fn constant(h: &Hypergraph, tuple: &[u32]) -> Result<VectorFunction> {
        let values = h
            .vertices()
            .iter()
            .map(|v| (v.clone(), tuple.to_vec()))
            .collect();
        VectorFunction::new(h, values)
    }

    fn kernel_values(&self, names: &[String]) -> Vec<Vec<u32>> {
        names.iter().map(|v| self.values[v].clone()).collect()
    }
}

/// A p-partition of a vertex set; parts may be empty.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Partition {
    pub parts: Vec<BTreeSet<String>>,
}

/// Witness that (H, f) is a hard pair.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "type")]
pub enum HardPairCertificate {
    /// A block whose budget sits entirely in one coordinate, with
    /// `f_j = d_H`.
    M {
        block: BTreeSet<String>,
        coordinate: usize,
    },
    /// `tK_n` with constant budgets `(t n_1, ..., t n_p)`,
    /// `n_1 + ... + n_p = n - 1` and at least two coordinates positive.
    K {
        block: BTreeSet<String>,
        t: usize,
        n: usize,
        split: Vec<u32>,
    },
    /// `tC_n`, `n >= 5` odd, with budget `t` on exactly two coordinates.
    C {
        block: BTreeSet<String>,
        t: usize,
        n: usize,
        pair: (usize, usize),
    },
    /// Vertex-merge of two hard pairs; the merge vertex carries the sum of
    /// the constituent budgets.
    Merge {
        left: Box<HardPairCertificate>,
        right: Box<HardPairCertificate>,
        vertex: String,
    },
}

fn kcert_to_names(cert: &KCert, names: &[String]) -> HardPairCertificate {
    match cert {
        KCert::M { block, coordinate } => HardPairCertificate::M {
            block: mask_to_names(*block, names),
            coordinate: *coordinate,
        },
        KCert::K { block, t, n, split } => HardPairCertificate::K {
            block: mask_to_names(*block, names),
            t: *t,
            n: *n,
            split: split.clone(),
        },
        KCert::C { block, t, n, pair } => HardPairCertificate::C {
            block: mask_to_names(*block, names),
            t: *t,
            n: *n,
            pair: *pair,
        },
        KCert::Merge {
            left,
            right,
            vertex,
        } => HardPairCertificate::Merge {
            left: Box::new(kcert_to_names(left, names)),
            right: Box::new(kcert_to_names(right, names)),
            vertex: names[*vertex].clone(),
        },
    }
}

fn names_to_kcert(cert: &HardPairCertificate, names: &[String]) -> Option<KCert> {
    let index = |v: &str| names.binary_search_by(|x| x.as_str().cmp(v)).ok();
    let block_mask = |b: &BTreeSet<String>| -> Option<Mask> {
        let mut ids = Vec::with_capacity(b.len());
        for v in b {
            ids.push(index(v)?);
        }
        Some(mask_of(&ids))
    };
    Some(match cert {
        HardPairCertificate::M { block, coordinate } => KCert::M {
            block: block_mask(block)?,
            coordinate: *coordinate,
        },
        HardPairCertificate::K { block, t, n, split } => KCert::K {
            block: block_mask(block)?,
            t: *t,
            n: *n,
            split: split.clone(),
        },
        HardPairCertificate::C { block, t, n, pair } => KCert::C {
            block: block_mask(block)?,
            t: *t,
            n: *n,
            pair: *pair,
        },
        HardPairCertificate::Merge {
            left,
            right,
            vertex,
        } => KCert::Merge {
            left: Box::new(names_to_kcert(left, names)?),
            right: Box::new(names_to_kcert(right, names)?),
            vertex: index(vertex)?,
        },
    })
}

/// Greedy elimination test for strict h-degeneracy: repeatedly remove (by
/// induced deletion) the smallest vertex whose current degree is below its
/// h-value; the hypergraph is strictly h-degenerate iff this empties it.
/// The outcome does not depend on the elimination order.
pub fn is_strictly_h_degenerate(h: &Hypergraph, hfun: impl Fn(&str) -> u32) -> bool {
    let (kh, names) = Kh::from_hypergraph(h);
    let budgets: Vec<u32> = names.iter().map(|v| hfun(v)).collect();
    kh.strictly_degenerate(kh.full_mask(), &budgets)
}

/// True iff the coordinate sums of `f` dominate the degree at every vertex.
pub fn degree_feasible(h: &Hypergraph, f: &VectorFunction) -> bool {
    h.vertices().iter().all(|v| {
        let d = h.degree(v).expect("vertex exists") as u32;
        f.values[v].iter().sum::<u32>() >= d
    })
}

/// Exhaustive backtracking search for an f-partition. Absence is a valid
/// outcome, not an error.
pub fn find_f_partition(h: &Hypergraph, f: &VectorFunction) -> Result<Option<Partition>> {
    check_domain(h, f)?;
    let (kh, names) = Kh::from_hypergraph(h);
    let fv = f.kernel_values(&names);
    Ok(kh.find_f_partition(&fv, f.p).map(|parts| Partition {
        parts: parts
            .into_iter()
            .map(|m| mask_to_names(m, &names))
            .collect(),
    }))
}

/// Recognizes hard pairs on a connected non-empty hypergraph, returning a
/// structural certificate when (H, f) is hard.
pub fn classify_hard_pair(
    h: &Hypergraph,
    f: &VectorFunction,
) -> Result<Option<HardPairCertificate>> {
    check_domain(h, f)?;
    if h.is_empty() {
        return Err(Error::Domain("hard pairs are defined on non-empty hypergraphs".into()));
    }
    if !is_connected(h) {
        return Err(Error::Domain("hard pairs are defined on connected hypergraphs".into()));
    }
    let (kh, names) = Kh::from_hypergraph(h);
    let fv = f.kernel_values(&names);
    Ok(kh
        .classify_hard_pair(&fv, f.p)
        .map(|c| kcert_to_names(&c, &names)))
}

/// Re-validates a certificate against `(h, f)` independently of the search
/// that produced it.
pub fn validate_certificate(
    h: &Hypergraph,
    f: &VectorFunction,
    cert: &HardPairCertificate,
) -> bool {
    if check_domain(h, f).is_err() {
        return false;
    }
    let (kh, names) = Kh::from_hypergraph(h);
    let Some(kcert) = names_to_kcert(cert, &names) else {
        return false;
    };
    let fv = f.kernel_values(&names);
    validate_kcert(&kh, &fv, f.p, &kcert)
}

fn check_domain(h: &Hypergraph, f: &VectorFunction) -> Result<()> {
    if f.values.len() != h.order() || !h.vertices().iter().all(|v| f.values.contains_key(v)) {
        return Err(Error::Domain(
            "vector function does not match the vertex set".into(),
        ));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Literal all-subhypergraphs oracle for strict h-degeneracy: every
    /// choice of vertex subset and admissible edge subset must contain a
    /// vertex of degree below its h-value.
    fn degenerate_oracle(h: &Hypergraph, hfun: impl Fn(&str) -> u32) -> bool {
        let vs = h.vertices();
        let n = vs.len();
        let edges: Vec<&[String]> = h.edges().collect();
        for vsub in 0u32..(1 << n) {
            if vsub == 0 {
                continue;
            }
            let inside: Vec<&String> = (0..n).filter(|i| vsub >> i & 1 == 1).map(|i| &vs[i]).collect();
            let within: Vec<usize> = (0..edges.len())
                .filter(|&e| edges[e].iter().all(|v| inside.contains(&v)))
                .collect();
            for esub in 0u64..(1 << within.len()) {
                let chosen: Vec<usize> = (0..within.len())
                    .filter(|i| esub >> i & 1 == 1)
                    .map(|i| within[i])
                    .collect();
                let ok = inside.iter().any(|v| {
                    let d = chosen
                        .iter()
                        .filter(|&&e| edges[e].iter().any(|x| x == *v))
                        .count() as u32;
                    d < hfun(v)
                });
                if !ok {
                    return false;
                }
            }
        }
        true
    }

    #[test]
    fn degeneracy_examples() {
        assert!(is_strictly_h_degenerate(&Hypergraph::empty(), |_| 0));
        assert!(!is_strictly_h_degenerate(&Hypergraph::cycle(5), |_| 2));
        assert!(is_strictly_h_degenerate(&Hypergraph::path(4), |_| 2));
        // strictly 0-degenerate iff empty, strictly 1-degenerate iff edgeless
        let k1 = Hypergraph::build::<_, &str>(&["a"], &[]).unwrap();
        assert!(!is_strictly_h_degenerate(&k1, |_| 0));
        assert!(is_strictly_h_degenerate(&k1, |_| 1));
    }

    #[test]
    fn greedy_matches_oracle_on_spot_instances() {
        let instances = [
            Hypergraph::cycle(5),
            Hypergraph::path(4),
            Hypergraph::complete(4),
            Hypergraph::build(&["a", "b", "c", "d"], &[vec!["a", "b", "c"], vec!["c", "d"]])
                .unwrap(),
            Hypergraph::complete(3).replicate(2).unwrap(),
        ];
        for h in &instances {
            for k in 0..4u32 {
                assert_eq!(
                    is_strictly_h_degenerate(h, |_| k),
                    degenerate_oracle(h, |_| k),
                    "disagreement on {} with k={k}",
                    h.to_canonical_json()
                );
            }
            // a non-constant h
            let f = |v: &str| (v.len() as u32 + v.bytes().last().unwrap_or(0) as u32) % 3;
            assert_eq!(is_strictly_h_degenerate(h, f), degenerate_oracle(h, f));
        }
    }

    #[test]
    fn feasibility_examples() {
        let c5 = Hypergraph::cycle(5);
        let f = VectorFunction::constant(&c5, &[1, 1]).unwrap();
        assert!(degree_feasible(&c5, &f));
        let k4 = Hypergraph::complete(4);
        let f = VectorFunction::constant(&k4, &[1, 1]).unwrap();
        assert!(!degree_feasible(&k4, &f));
        let f = VectorFunction::constant(&k4, &[3]).unwrap();
        assert!(degree_feasible(&k4, &f));
    }

    /// Brute-force oracle: try all p^n part assignments and verify each part
    /// with the all-subhypergraphs degeneracy oracle.
    fn partition_oracle(h: &Hypergraph, f: &VectorFunction) -> bool {
        let vs: Vec<String> = h.vertices().to_vec();
        let p = f.p;
        let n = vs.len();
        let mut assign = vec![0usize; n];
        loop {
            let ok = (0..p).all(|i| {
                let part: Vec<&String> =
                    (0..n).filter(|&v| assign[v] == i).map(|v| &vs[v]).collect();
                let sub = h.induced(&part).unwrap();
                degenerate_oracle(&sub, |v| f.values[v][i])
            });
            if ok {
                return true;
            }
            let mut idx = 0;
            loop {
                if idx == n {
                    return false;
                }
                assign[idx] += 1;
                if assign[idx] < p {
                    break;
                }
                assign[idx] = 0;
                idx += 1;
            }
        }
    }

    #[test]
    fn partition_examples_frozen_from_oracle() {
        let c4 = Hypergraph::cycle(4);
        let f = VectorFunction::constant(&c4, &[1, 1]).unwrap();
        assert!(partition_oracle(&c4, &f));
        let part = find_f_partition(&c4, &f).unwrap().expect("C4 splits");
        assert_eq!(part.parts.len(), 2);

        let c5 = Hypergraph::cycle(5);
        let f = VectorFunction::constant(&c5, &[1, 1]).unwrap();
        assert!(!partition_oracle(&c5, &f));
        assert!(find_f_partition(&c5, &f).unwrap().is_none());

        let k3 = Hypergraph::complete(3);
        let f = VectorFunction::constant(&k3, &[1, 1]).unwrap();
        assert!(!partition_oracle(&k3, &f));
        assert!(find_f_partition(&k3, &f).unwrap().is_none());
    }

    #[test]
    fn partition_parts_validate() {
        let h = Hypergraph::build(
            &["a", "b", "c", "d"],
            &[vec!["a", "b", "c"], vec!["b", "c", "d"], vec!["a", "d"]],
        )
        .unwrap();
        let f = VectorFunction::constant(&h, &[1, 2]).unwrap();
        if let Some(part) = find_f_partition(&h, &f).unwrap() {
            for (i, vs) in part.parts.iter().enumerate() {
                let keep: Vec<&String> = vs.iter().collect();
                let sub = h.induced(&keep).unwrap();
                assert!(is_strictly_h_degenerate(&sub, |v| f.values[v][i]));
            }
        }
    }

    #[test]
    fn hard_pair_c5() {
        let c5 = Hypergraph::cycle(5);
        let f = VectorFunction::constant(&c5, &[1, 1]).unwrap();
        let cert = classify_hard_pair(&c5, &f).unwrap().expect("C5 is hard");
        match &cert {
            HardPairCertificate::C { t, n, pair, .. } => {
                assert_eq!((*t, *n), (1, 5));
                assert_eq!(*pair, (0, 1));
            }
            other => panic!("expected type C, got {other:?}"),
        }
        assert!(validate_certificate(&c5, &f, &cert));
    }

    #[test]
    fn hard_pair_k4() {
        let k4 = Hypergraph::complete(4);
        let f = VectorFunction::constant(&k4, &[1, 2]).unwrap();
        let cert = classify_hard_pair(&k4, &f).unwrap().expect("K4 is hard");
        match &cert {
            HardPairCertificate::K { t, n, split, .. } => {
                assert_eq!((*t, *n), (1, 4));
                assert_eq!(split, &vec![1, 2]);
            }
            other => panic!("expected type K, got {other:?}"),
        }
        assert!(validate_certificate(&k4, &f, &cert));
    }

    #[test]
    fn hard_pair_bowtie_merge() {
        let left = Hypergraph::complete(3);
        let right = Hypergraph::build(
            &["w0", "w1", "w2"],
            &[vec!["w0", "w1"], vec!["w0", "w2"], vec!["w1", "w2"]],
        )
        .unwrap();
        let bowtie = Hypergraph::merge(&left, "v0", &right, "w0", "c").unwrap();
        let mut values = BTreeMap::new();
        for v in bowtie.vertices() {
            let tuple = if v == "c" { vec![2, 2] } else { vec![1, 1] };
            values.insert(v.clone(), tuple);
        }
        let f = VectorFunction::new(&bowtie, values).unwrap();
        assert!(find_f_partition(&bowtie, &f).unwrap().is_none());
        let cert = classify_hard_pair(&bowtie, &f)
            .unwrap()
            .expect("bowtie is hard");
        match &cert {
            HardPairCertificate::Merge { vertex, left, right } => {
                assert_eq!(vertex, "c");
                assert!(matches!(**left, HardPairCertificate::K { .. }));
                assert!(matches!(**right, HardPairCertificate::K { .. }));
            }
            other => panic!("expected a merge certificate, got {other:?}"),
        }
        assert!(validate_certificate(&bowtie, &f, &cert));
    }

    #[test]
    fn p3_is_not_hard() {
        let p3 = Hypergraph::path(3);
        let f = VectorFunction::constant(&p3, &[1, 1]).unwrap();
        assert!(classify_hard_pair(&p3, &f).unwrap().is_none());
        assert!(find_f_partition(&p3, &f).unwrap().is_some());
    }

    #[test]
    fn monoblock_sanity() {
        // f = d_H in one coordinate leaves no f-partition for any block
        for h in [Hypergraph::cycle(5), Hypergraph::complete(4)] {
            let values = h
                .vertices()
                .iter()
                .map(|v| (v.clone(), vec![h.degree(v).unwrap() as u32, 0]))
                .collect();
            let f = VectorFunction::new(&h, values).unwrap();
            assert!(find_f_partition(&h, &f).unwrap().is_none());
            let cert = classify_hard_pair(&h, &f).unwrap().expect("monoblock");
            assert!(validate_certificate(&h, &f, &cert));
        }
    }

    #[test]
    fn classify_requires_connected() {
        let two = Hypergraph::build(&["a", "b", "c", "d"], &[vec!["a", "b"], vec!["c", "d"]])
            .unwrap();
        let f = VectorFunction::constant(&two, &[1]).unwrap();
        assert!(classify_hard_pair(&two, &f).is_err());
    }

    #[test]
    fn tampered_certificates_fail_validation() {
        let c5 = Hypergraph::cycle(5);
        let f = VectorFunction::constant(&c5, &[1, 1]).unwrap();
        let cert = classify_hard_pair(&c5, &f).unwrap().unwrap();
        // wrong vector function
        let g = VectorFunction::constant(&c5, &[2, 0]).unwrap();
        assert!(!validate_certificate(&c5, &g, &cert));
        // wrong carrier
        let c7 = Hypergraph::cycle(7);
        let f7 = VectorFunction::constant(&c7, &[1, 1]).unwrap();
        assert!(!validate_certificate(&c7, &f7, &cert));
    }
}
