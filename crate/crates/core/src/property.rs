//! Smooth hypergraph properties as plug-ins.
//!
//! A property is a named membership predicate that must be hereditary under
//! induced subhypergraphs and non-trivial, together with its additivity
//! flag and its degeneracy constant r (the minimum of the minimum degrees
//! over the minimal forbidden hypergraphs F(P)). r cannot be computed from
//! a predicate alone, so plug-ins declare it and [`d_p_bounded`] provides a
//! bounded cross-check.

use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::enumerate::{enum_hypergraphs, EnumerationBounds};
use crate::hypergraph::Hypergraph;
use crate::kernel::{KEval, KProp};
use crate::{Error, Result};

type MemberFn = Arc<dyn Fn(&Hypergraph) -> bool + Send + Sync>;

/// A smooth hypergraph property plug-in.
#[derive(Clone)]
pub struct Property {
    name: String,
    r: u32,
    additive: bool,
    member: MemberFn,
    pub(crate) kernel: Option<KProp>,
}

impl fmt::Debug for Property {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Property")
            .field("name", &self.name)
            .field("r", &self.r)
            .field("additive", &self.additive)
            .finish()
    }
}

impl Property {
    /// Registers a plug-in property. The predicate must be pure, reentrant,
    /// isomorphism-invariant and hereditary; `r` is its declared degeneracy
    /// constant.
    pub fn new(
        name: impl Into<String>,
        r: u32,
        additive: bool,
        member: impl Fn(&Hypergraph) -> bool + Send + Sync + 'static,
    ) -> Property {
        Property {
            name: name.into(),
            r,
            additive,
            member: Arc::new(member),
            kernel: None,
        }
    }

    /// The class of edgeless hypergraphs, r = 1.
    pub fn edgeless() -> Property {
        Property {
            name: "O".into(),
            r: 1,
            additive: true,
            member: Arc::new(|h: &Hypergraph| h.edge_count() == 0),
            kernel: Some(KProp::Edgeless),
        }
    }

    /// Hypergraphs with maximum degree at most `k`, r = 1.
    pub fn max_degree(k: u32) -> Property {
        Property {
            name: format!("S:{k}"),
            r: 1,
            additive: true,
            member: Arc::new(move |h: &Hypergraph| h.degree_profile().max_degree as u32 <= k),
            kernel: Some(KProp::MaxDegree(k)),
        }
    }

    /// Strictly (k+1)-degenerate hypergraphs, r = k + 1.
    pub fn degenerate(k: u32) -> Property {
        Property {
            name: format!("D:{k}"),
            r: k + 1,
            additive: true,
            member: Arc::new(move |h: &Hypergraph| {
                crate::degeneracy::is_strictly_h_degenerate(h, |_| k + 1)
            }),
            kernel: Some(KProp::Degenerate(k)),
        }
    }

    /// Parses a builtin selector: `O`, `S:<k>`, or `D:<k>`.
    pub fn builtin(spec: &str) -> Result<Property> {
        if spec == "O" {
            return Ok(Property::edgeless());
        }
        if let Some(k) = spec.strip_prefix("S:") {
            let k: u32 = k
                .parse()
                .map_err(|_| Error::Domain(format!("bad property spec {spec:?}")))?;
            return Ok(Property::max_degree(k));
        }
        if let Some(k) = spec.strip_prefix("D:") {
            let k: u32 = k
                .parse()
                .map_err(|_| Error::Domain(format!("bad property spec {spec:?}")))?;
            return Ok(Property::degenerate(k));
        }
        Err(Error::Domain(format!(
            "unknown property {spec:?}; expected O, S:<k> or D:<k>"
        )))
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    /// The declared degeneracy constant d(P).
    pub fn r(&self) -> u32 {
        self.r
    }

    pub fn additive(&self) -> bool {
        self.additive
    }

    pub fn member(&self, h: &Hypergraph) -> bool {
        (self.member)(h)
    }

    pub(crate) fn eval<'a>(&'a self, names: &'a [String]) -> KEval<'a> {
        match self.kernel {
            Some(p) => KEval::Builtin(p),
            None => KEval::Generic {
                names,
                member: &*self.member,
            },
        }
    }

    /// Membership in F(P): `h` is outside P but every vertex-deleted
    /// subhypergraph is inside.
    pub fn in_f(&self, h: &Hypergraph) -> bool {
        !self.member(h)
            && h.vertices()
                .iter()
                .all(|v| self.member(&h.delete_vertex(v).expect("vertex exists")))
    }
}

/// Bounded estimate of d(P): the minimum degree over enumerated members of
/// F(P) within the bounds, or `None` when no member was found. This is an
/// upper bound for the true d(P).
pub fn d_p_bounded(p: &Property, bounds: &EnumerationBounds) -> Result<Option<u32>> {
    let mut best: Option<u32> = None;
    for h in enum_hypergraphs(bounds)? {
        if p.in_f(&h) {
            let delta = h.degree_profile().min_degree as u32;
            best = Some(best.map_or(delta, |b| b.min(delta)));
        }
    }
    Ok(best)
}

/// One violated clause found by [`verify_smooth`].
#[derive(Debug, Clone, Serialize)]
pub struct SmoothViolation {
    pub instance: String,
    pub clause: String,
    pub detail: String,
}

/// Report of a smoothness verification run.
#[derive(Debug, Clone, Serialize)]
pub struct SmoothReport {
    pub property: String,
    pub instances: usize,
    pub contains_k0: bool,
    pub contains_k1: bool,
    pub f_members_seen: usize,
    pub violations: Vec<SmoothViolation>,
}

impl SmoothReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty() && self.contains_k0 && self.contains_k1
    }
}

/// Checks the smoothness axioms and their standard consequences over a
/// stream of instances: hereditary closure under induced subhypergraphs,
/// the characterizations of F(P)-membership and of non-membership, the
/// degree bound at restoring vertices, and (for additive plug-ins)
/// additivity over disjoint pairs. Violations are reported, not raised.
pub fn verify_smooth(p: &Property, instances: &[Hypergraph]) -> SmoothReport {
    let k0 = Hypergraph::empty();
    let k1 = Hypergraph::build::<_, &str>(&["v0"], &[]).expect("K1");
    let mut report = SmoothReport {
        property: p.name().to_string(),
        instances: instances.len(),
        contains_k0: p.member(&k0),
        contains_k1: p.member(&k1),
        f_members_seen: 0,
        violations: Vec::new(),
    };
    for h in instances {
        check_instance(p, h, &mut report);
    }
    if p.additive() {
        for pair in instances.windows(2) {
            check_additive(p, &pair[0], &pair[1], &mut report);
        }
    }
    report
}

fn all_induced(h: &Hypergraph) -> Vec<Hypergraph> {
    let vs = h.vertices();
    let n = vs.len();
    let mut out = Vec::with_capacity(1 << n);
    for sub in 0u32..(1 << n) {
        let keep: Vec<&String> = (0..n).filter(|i| sub >> i & 1 == 1).map(|i| &vs[i]).collect();
        out.push(h.induced(&keep).expect("subset of vertices"));
    }
    out
}

fn check_instance(p: &Property, h: &Hypergraph, report: &mut SmoothReport) {
    let json = h.to_canonical_json();
    let subs = all_induced(h);
    let member = p.member(h);

    if member {
        for s in &subs {
            if !p.member(s) {
                report.violations.push(SmoothViolation {
                    instance: json.clone(),
                    clause: "hereditary".into(),
                    detail: format!("member, but induced {} is not", s.to_canonical_json()),
                });
                break;
            }
        }
    }

    // F(P) membership iff all proper induced subhypergraphs are members
    // while h itself is not
    let in_f = p.in_f(h);
    if in_f {
        report.f_members_seen += 1;
    }
    let all_proper_in = subs
        .iter()
        .filter(|s| s.order() < h.order())
        .all(|s| p.member(s));
    if in_f != (!member && all_proper_in) {
        report.violations.push(SmoothViolation {
            instance: json.clone(),
            clause: "f-characterization".into(),
            detail: format!("in_f={in_f}, member={member}, proper_induced_all_in={all_proper_in}"),
        });
    }

    // non-membership iff some induced subhypergraph is an F(P) member
    let has_f_sub = subs.iter().any(|s| p.in_f(s));
    if member == has_f_sub {
        report.violations.push(SmoothViolation {
            instance: json.clone(),
            clause: "forbidden-subhypergraph".into(),
            detail: format!("member={member}, induced F-member found={has_f_sub}"),
        });
    }

    // a vertex restoring membership has degree at least r
    if !member {
        for v in h.vertices() {
            let deleted = h.delete_vertex(v).expect("vertex exists");
            if p.member(&deleted) {
                let d = h.degree(v).expect("vertex exists") as u32;
                if d < p.r() {
                    report.violations.push(SmoothViolation {
                        instance: json.clone(),
                        clause: "degree-bound".into(),
                        detail: format!("vertex {v} has degree {d} < r = {}", p.r()),
                    });
                }
            }
        }
    }
}

fn check_additive(p: &Property, a: &Hypergraph, b: &Hypergraph, report: &mut SmoothReport) {
    let rename = |h: &Hypergraph, tag: &str| -> Hypergraph {
        let vs: Vec<String> = h.vertices().iter().map(|v| format!("{tag}{v}")).collect();
        let es: Vec<Vec<String>> = h
            .edges()
            .map(|e| e.iter().map(|v| format!("{tag}{v}")).collect())
            .collect();
        Hypergraph::build(&vs, &es).expect("renaming preserves validity")
    };
    let ra = rename(a, "a.");
    let rb = rename(b, "b.");
    let mut vs: Vec<String> = ra.vertices().to_vec();
    vs.extend(rb.vertices().iter().cloned());
    let mut es: Vec<Vec<String>> = ra.edges().map(|e| e.to_vec()).collect();
    es.extend(rb.edges().map(|e| e.to_vec()));
    let union = Hypergraph::build(&vs, &es).expect("disjoint union is well formed");
    let expect = p.member(&ra) && p.member(&rb);
    if p.member(&union) != expect {
        report.violations.push(SmoothViolation {
            instance: union.to_canonical_json(),
            clause: "additivity".into(),
            detail: format!(
                "member(union)={}, member(a)&&member(b)={expect}",
                p.member(&union)
            ),
        });
    }
}
