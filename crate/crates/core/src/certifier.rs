//! Synchronization certificates for connected threshold graphs.
//!
//! A certificate is the block induction written out as explicit steps. Each
//! step names the vertex sets it acts on and the synchronized set it leaves
//! behind, so checking it never re-derives the block decomposition.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{block_decomposition, Graph, ThresholdCode};
use crate::json;
use crate::landscape::{circular_diameter, classify, Classification, PhaseConfig, Tolerances};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum StepKind {
    BaseClosedTwins,
    TwinAttachment,
    PendantExtension,
}

/// Vertex sets a step acts on, 0-indexed in memory and 1-indexed in JSON.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "sets")]
pub enum StepSets {
    BaseClosedTwins {
        #[serde(rename = "S", with = "json::one_based")]
        s: Vec<usize>,
    },
    TwinAttachment {
        #[serde(with = "json::one_based")]
        attached: Vec<usize>,
        #[serde(rename = "S", with = "json::one_based")]
        s: Vec<usize>,
    },
    PendantExtension {
        #[serde(rename = "Q", with = "json::one_based")]
        q: Vec<usize>,
        #[serde(rename = "S1", with = "json::one_based")]
        s1: Vec<usize>,
        #[serde(rename = "S2", with = "json::one_based")]
        s2: Vec<usize>,
        #[serde(rename = "P", with = "json::one_based")]
        p: Vec<usize>,
    },
}

impl StepSets {
    pub fn kind(&self) -> StepKind {
        match self {
            StepSets::BaseClosedTwins { .. } => StepKind::BaseClosedTwins,
            StepSets::TwinAttachment { .. } => StepKind::TwinAttachment,
            StepSets::PendantExtension { .. } => StepKind::PendantExtension,
        }
    }

    /// Vertices the step claims to synchronize with the ones already synced.
    fn newly_synced(&self) -> &[usize] {
        match self {
            StepSets::BaseClosedTwins { s } => s,
            StepSets::TwinAttachment { attached, .. } => attached,
            StepSets::PendantExtension { s2, .. } => s2,
        }
    }

    fn all_vertices(&self) -> impl Iterator<Item = usize> + '_ {
        let lists: Vec<&Vec<usize>> = match self {
            StepSets::BaseClosedTwins { s } => vec![s],
            StepSets::TwinAttachment { attached, s } => vec![attached, s],
            StepSets::PendantExtension { q, s1, s2, p } => vec![q, s1, s2, p],
        };
        lists.into_iter().flatten().copied()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertStep {
    #[serde(flatten)]
    pub sets: StepSets,
    #[serde(with = "json::one_based")]
    pub synced_after: Vec<usize>,
}

impl CertStep {
    pub fn kind(&self) -> StepKind {
        self.sets.kind()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub code: ThresholdCode,
    pub steps: Vec<CertStep>,
}

impl Certificate {
    pub fn to_json(&self) -> String {
        json::to_string(self)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::MalformedFile {
            line: e.line(),
            message: e.to_string(),
        })
    }
}

fn union(parts: &[&[usize]]) -> Vec<usize> {
    let set: BTreeSet<usize> = parts.iter().flat_map(|p| p.iter().copied()).collect();
    set.into_iter().collect()
}

/// Builds the block-induction certificate.
///
/// With blocks `I_1, U_1, …, I_k, U_k` the steps are: the base `U_k`; for
/// each `m = 1..k−1` the attachment of `I_{k−m+1}` followed by the pendant
/// extension adding `U_{k−m}`; the attachment of `I_1`. That is `2k` steps.
pub fn certify(code: &ThresholdCode) -> Result<Certificate> {
    if code.is_empty() {
        return Err(Error::EmptyGraph);
    }
    let blocks = block_decomposition(code)?;
    let k = blocks.k();
    let mut synced: BTreeSet<usize> = BTreeSet::new();
    let mut steps = Vec::with_capacity(2 * k);
    let mut push = |sets: StepSets, synced: &mut BTreeSet<usize>| {
        synced.extend(sets.newly_synced().iter().copied());
        steps.push(CertStep {
            sets,
            synced_after: synced.iter().copied().collect(),
        });
    };

    push(
        StepSets::BaseClosedTwins {
            s: blocks.dominating(k - 1).to_vec(),
        },
        &mut synced,
    );
    for m in 1..k {
        let top = k - m;
        let upper_u: Vec<&[usize]> = (top..k).map(|j| blocks.dominating(j)).collect();
        let upper_i: Vec<&[usize]> = (top..k).map(|j| blocks.isolated(j)).collect();
        let s1 = union(&upper_u);
        push(
            StepSets::TwinAttachment {
                attached: blocks.isolated(top).to_vec(),
                s: s1.clone(),
            },
            &mut synced,
        );
        let s2 = blocks.dominating(top - 1).to_vec();
        let p: Vec<usize> = (0..s2[0]).collect();
        push(
            StepSets::PendantExtension {
                q: union(&upper_i),
                s1,
                s2,
                p,
            },
            &mut synced,
        );
    }
    let all_u: Vec<&[usize]> = (0..k).map(|j| blocks.dominating(j)).collect();
    push(
        StepSets::TwinAttachment {
            attached: blocks.isolated(0).to_vec(),
            s: union(&all_u),
        },
        &mut synced,
    );

    Ok(Certificate {
        code: code.clone(),
        steps,
    })
}

/// First structural hypothesis a step violates. Vertices are 0-indexed here
/// and printed 1-indexed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StepViolation {
    VertexOutOfRange(usize),
    EmptySet(&'static str),
    DuplicateVertex(usize),
    NotClosedTwins(usize, usize),
    BaseUnanchored,
    NotYetSynced(usize),
    IsolatedAttachment(usize),
    NeighborOutside { vertex: usize, neighbor: usize },
    SetsOverlap(usize),
    NotClique(usize, usize),
    NeighborhoodMismatch(usize),
    NoGrowth,
    SyncedAfterMismatch,
}

impl fmt::Display for StepViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use StepViolation::*;
        match *self {
            VertexOutOfRange(v) => write!(f, "vertex {} out of range", v + 1),
            EmptySet(name) => write!(f, "set {name} is empty"),
            DuplicateVertex(v) => write!(f, "vertex {} listed twice", v + 1),
            NotClosedTwins(a, b) => write!(f, "N[{}] != N[{}]", a + 1, b + 1),
            BaseUnanchored => write!(f, "base set disjoint from the synchronized set"),
            NotYetSynced(v) => write!(f, "vertex {} is not synchronized yet", v + 1),
            IsolatedAttachment(v) => write!(f, "attached vertex {} has no neighbors", v + 1),
            NeighborOutside { vertex, neighbor } => write!(
                f,
                "neighbor {} of vertex {} lies outside the target set",
                neighbor + 1,
                vertex + 1
            ),
            SetsOverlap(v) => write!(f, "vertex {} lies in two of Q, S1, S2, P", v + 1),
            NotClique(a, b) => write!(f, "S1+S2 is not a clique: {} !~ {}", a + 1, b + 1),
            NeighborhoodMismatch(v) => write!(
                f,
                "N({}) differs from P + (N({})∩Q) + (S1+S2 minus itself)",
                v + 1,
                v + 1
            ),
            NoGrowth => write!(f, "step synchronizes no new vertex"),
            SyncedAfterMismatch => write!(f, "synced_after is not synced_before plus the new set"),
        }
    }
}

fn distinct(list: &[usize]) -> std::result::Result<BTreeSet<usize>, StepViolation> {
    let mut set = BTreeSet::new();
    for &v in list {
        if !set.insert(v) {
            return Err(StepViolation::DuplicateVertex(v));
        }
    }
    Ok(set)
}

fn require_subset(
    list: &[usize],
    synced: &BTreeSet<usize>,
) -> std::result::Result<(), StepViolation> {
    match list.iter().find(|v| !synced.contains(v)) {
        Some(&v) => Err(StepViolation::NotYetSynced(v)),
        None => Ok(()),
    }
}

fn require_neighbors_within(
    g: &Graph,
    vertices: &[usize],
    target: &BTreeSet<usize>,
) -> std::result::Result<(), StepViolation> {
    for &v in vertices {
        if let Some(&u) = g.neighbors(v).iter().find(|u| !target.contains(u)) {
            return Err(StepViolation::NeighborOutside {
                vertex: v,
                neighbor: u,
            });
        }
    }
    Ok(())
}

/// Checks every kind-specific hypothesis of `step` against `g` and the
/// synchronized set before it, and that `synced_after` is the strict growth
/// the step claims.
pub fn check_step_detailed(
    g: &Graph,
    step: &CertStep,
    synced_before: &[usize],
) -> std::result::Result<(), StepViolation> {
    let n = g.n();
    if let Some(v) = step
        .sets
        .all_vertices()
        .chain(step.synced_after.iter().copied())
        .chain(synced_before.iter().copied())
        .find(|&v| v >= n)
    {
        return Err(StepViolation::VertexOutOfRange(v));
    }
    let before: BTreeSet<usize> = synced_before.iter().copied().collect();

    match &step.sets {
        StepSets::BaseClosedTwins { s } => {
            if s.is_empty() {
                return Err(StepViolation::EmptySet("S"));
            }
            distinct(s)?;
            for (i, &a) in s.iter().enumerate() {
                for &b in &s[i + 1..] {
                    if g.closed_row(a) != g.closed_row(b) {
                        return Err(StepViolation::NotClosedTwins(a, b));
                    }
                }
            }
            if !before.is_empty() && !s.iter().any(|v| before.contains(v)) {
                return Err(StepViolation::BaseUnanchored);
            }
        }
        StepSets::TwinAttachment { attached, s } => {
            if attached.is_empty() {
                return Err(StepViolation::EmptySet("attached"));
            }
            if s.is_empty() {
                return Err(StepViolation::EmptySet("S"));
            }
            distinct(attached)?;
            let target = distinct(s)?;
            require_subset(s, &before)?;
            if let Some(&a) = attached.iter().find(|&&a| g.degree(a) == 0) {
                return Err(StepViolation::IsolatedAttachment(a));
            }
            require_neighbors_within(g, attached, &target)?;
        }
        StepSets::PendantExtension { q, s1, s2, p } => {
            if s1.is_empty() {
                return Err(StepViolation::EmptySet("S1"));
            }
            if s2.is_empty() {
                return Err(StepViolation::EmptySet("S2"));
            }
            let mut seen = BTreeSet::new();
            for &v in q.iter().chain(s1).chain(s2).chain(p) {
                if !seen.insert(v) {
                    return Err(StepViolation::SetsOverlap(v));
                }
            }
            let q_set: BTreeSet<usize> = q.iter().copied().collect();
            let s1_set: BTreeSet<usize> = s1.iter().copied().collect();
            require_neighbors_within(g, q, &s1_set)?;
            let clique: Vec<usize> = s1.iter().chain(s2).copied().collect();
            for (i, &a) in clique.iter().enumerate() {
                for &b in &clique[i + 1..] {
                    if !g.has_edge(a, b) {
                        return Err(StepViolation::NotClique(a, b));
                    }
                }
            }
            for &v in &clique {
                let mut expected: BTreeSet<usize> = p.iter().copied().collect();
                expected.extend(g.neighbors(v).iter().filter(|u| q_set.contains(u)));
                expected.extend(clique.iter().copied().filter(|&u| u != v));
                let actual: BTreeSet<usize> = g.neighbors(v).iter().copied().collect();
                if actual != expected {
                    return Err(StepViolation::NeighborhoodMismatch(v));
                }
            }
            require_subset(q, &before)?;
            require_subset(s1, &before)?;
        }
    }

    let after: BTreeSet<usize> = before
        .iter()
        .copied()
        .chain(step.sets.newly_synced().iter().copied())
        .collect();
    if after.len() == before.len() {
        return Err(StepViolation::NoGrowth);
    }
    let claimed = distinct(&step.synced_after).map_err(|_| StepViolation::SyncedAfterMismatch)?;
    if claimed != after {
        return Err(StepViolation::SyncedAfterMismatch);
    }
    Ok(())
}

pub fn check_step(g: &Graph, step: &CertStep, synced_before: &[usize]) -> bool {
    check_step_detailed(g, step, synced_before).is_ok()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StepCheck {
    /// 1-based step number.
    pub step: usize,
    pub kind: StepKind,
    pub pass: bool,
    pub reason: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "reason")]
pub enum VerificationFailure {
    StepPrecondition {
        step: usize,
        detail: String,
    },
    NotMonotone {
        step: usize,
    },
    IncompleteCover {
        #[serde(with = "json::one_based")]
        missing: Vec<usize>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub pass: bool,
    pub steps: Vec<StepCheck>,
    pub monotone: bool,
    pub covers_all: bool,
    /// Earliest failure in step order; cover failures come last.
    pub failure: Option<VerificationFailure>,
}

/// Runs [`check_step_detailed`] along the certificate, each step seeing the
/// `synced_after` of its predecessor.
pub fn verify_certificate(g: &Graph, cert: &Certificate) -> Result<VerificationReport> {
    let expected = cert.code.vertex_count();
    if g.n() != expected {
        return Err(Error::GraphMismatch {
            graph: g.n(),
            code: expected,
        });
    }
    let mut steps = Vec::with_capacity(cert.steps.len());
    let mut failure = None;
    let mut monotone = true;
    let mut before: Vec<usize> = Vec::new();
    for (i, step) in cert.steps.iter().enumerate() {
        let outcome = check_step_detailed(g, step, &before);
        let prev: BTreeSet<usize> = before.iter().copied().collect();
        let next: BTreeSet<usize> = step.synced_after.iter().copied().collect();
        let grows = next.len() > prev.len() && prev.is_subset(&next);
        if !grows {
            monotone = false;
            if failure.is_none() && outcome.is_ok() {
                failure = Some(VerificationFailure::NotMonotone { step: i + 1 });
            }
        }
        if let Err(v) = &outcome {
            if failure.is_none() {
                failure = Some(VerificationFailure::StepPrecondition {
                    step: i + 1,
                    detail: v.to_string(),
                });
            }
        }
        steps.push(StepCheck {
            step: i + 1,
            kind: step.kind(),
            pass: outcome.is_ok(),
            reason: outcome.err().map(|v| v.to_string()),
        });
        before = step.synced_after.clone();
    }
    let covered: BTreeSet<usize> = before.into_iter().collect();
    let missing: Vec<usize> = (0..g.n()).filter(|v| !covered.contains(v)).collect();
    let covers_all = missing.is_empty();
    if failure.is_none() && !covers_all {
        failure = Some(VerificationFailure::IncompleteCover { missing });
    }
    Ok(VerificationReport {
        pass: failure.is_none(),
        steps,
        monotone,
        covers_all,
        failure,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AuditStep {
    pub step: usize,
    pub kind: StepKind,
    pub pass: bool,
    /// Circular diameter of the phases on `synced_after`.
    #[serde(serialize_with = "json::f64")]
    pub max_deviation: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AuditReport {
    pub class: Classification,
    #[serde(serialize_with = "json::f64")]
    pub tol: f64,
    pub pass: bool,
    /// 1-based index of the first step whose phase equality fails.
    pub first_failure: Option<usize>,
    pub steps: Vec<AuditStep>,
}

impl AuditReport {
    pub fn to_json(&self) -> String {
        json::to_string(self)
    }
}

/// Checks the phase equality each step asserts: all vertices of
/// `synced_after` within circular diameter `tol` at `theta`.
pub fn audit_config(
    g: &Graph,
    cert: &Certificate,
    theta: &PhaseConfig,
    tol: f64,
) -> Result<AuditReport> {
    let expected = cert.code.vertex_count();
    if g.n() != expected {
        return Err(Error::GraphMismatch {
            graph: g.n(),
            code: expected,
        });
    }
    let report = classify(g, theta, &Tolerances::default())?;
    if report.classification == Classification::NotEquilibrium {
        return Err(Error::NotEquilibrium {
            grad_norm: report.gradient_norm,
        });
    }
    let angles = theta.angles();
    let mut steps = Vec::with_capacity(cert.steps.len());
    for (i, step) in cert.steps.iter().enumerate() {
        if let Some(&v) = step.synced_after.iter().find(|&&v| v >= g.n()) {
            return Err(Error::InvalidParameters(format!(
                "certificate step {} names vertex {} of a {}-vertex graph",
                i + 1,
                v + 1,
                g.n()
            )));
        }
        let phases: Vec<f64> = step.synced_after.iter().map(|&v| angles[v]).collect();
        let deviation = circular_diameter(&phases);
        steps.push(AuditStep {
            step: i + 1,
            kind: step.kind(),
            pass: deviation <= tol,
            max_deviation: deviation,
        });
    }
    let first_failure = steps.iter().find(|s| !s.pass).map(|s| s.step);
    Ok(AuditReport {
        class: report.classification,
        tol,
        pass: first_failure.is_none(),
        first_failure,
        steps,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{build_threshold, parse_code};
    use std::f64::consts::PI;

    fn code(s: &str) -> ThresholdCode {
        parse_code(s).unwrap()
    }

    // A..I of the 01010101 graph
    fn v(c: char) -> usize {
        c as usize - 'A' as usize
    }

    fn vs(s: &str) -> Vec<usize> {
        s.chars().map(v).collect()
    }

    #[test]
    fn prototype_growth_sequence() {
        let cert = certify(&code("01010101")).unwrap();
        let growth: Vec<Vec<usize>> = cert.steps.iter().map(|s| s.synced_after.clone()).collect();
        let expected: Vec<Vec<usize>> = ["I", "HI", "GHI", "FGHI", "EFGHI", "DEFGHI", "CDEFGHI", "ABCDEFGHI"]
            .iter()
            .map(|s| vs(s))
            .collect();
        assert_eq!(growth, expected);
        let kinds: Vec<StepKind> = cert.steps.iter().map(|s| s.kind()).collect();
        use StepKind::*;
        assert_eq!(
            kinds,
            [
                BaseClosedTwins,
                TwinAttachment,
                PendantExtension,
                TwinAttachment,
                PendantExtension,
                TwinAttachment,
                PendantExtension,
                TwinAttachment
            ]
        );
        let g = build_threshold(&code("01010101"));
        assert!(verify_certificate(&g, &cert).unwrap().pass);
    }

    #[test]
    fn single_edge_certificate() {
        let cert = certify(&code("1")).unwrap();
        assert_eq!(
            cert.steps,
            vec![
                CertStep {
                    sets: StepSets::BaseClosedTwins { s: vec![1] },
                    synced_after: vec![1],
                },
                CertStep {
                    sets: StepSets::TwinAttachment {
                        attached: vec![0],
                        s: vec![1]
                    },
                    synced_after: vec![0, 1],
                },
            ]
        );
    }

    #[test]
    fn rejects_disconnected_and_empty() {
        assert_eq!(certify(&code("0")), Err(Error::Disconnected));
        assert_eq!(certify(&ThresholdCode::new(vec![])), Err(Error::EmptyGraph));
    }

    #[test]
    fn prototype_step_checks() {
        let g = build_threshold(&code("01010101"));
        let base = CertStep {
            sets: StepSets::BaseClosedTwins { s: vs("I") },
            synced_after: vs("I"),
        };
        assert!(check_step(&g, &base, &[]));

        let pendant = CertStep {
            sets: StepSets::PendantExtension {
                q: vs("FH"),
                s1: vs("GI"),
                s2: vs("E"),
                p: vs("DBAC"),
            },
            synced_after: vs("EFGHI"),
        };
        assert!(check_step(&g, &pendant, &vs("FGHI")));

        let bad = CertStep {
            sets: StepSets::TwinAttachment {
                attached: vs("H"),
                s: vs("G"),
            },
            synced_after: vs("GH"),
        };
        assert_eq!(
            check_step_detailed(&g, &bad, &vs("G")),
            Err(StepViolation::NeighborOutside {
                vertex: v('H'),
                neighbor: v('I')
            })
        );
    }

    #[test]
    fn pendant_needs_q_and_s1_synced() {
        let g = build_threshold(&code("01010101"));
        let pendant = CertStep {
            sets: StepSets::PendantExtension {
                q: vs("FH"),
                s1: vs("GI"),
                s2: vs("E"),
                p: vs("ABCD"),
            },
            synced_after: vs("EGHI"),
        };
        assert_eq!(
            check_step_detailed(&g, &pendant, &vs("GHI")),
            Err(StepViolation::NotYetSynced(v('F')))
        );
    }

    #[test]
    fn non_twins_rejected_as_base() {
        let g = build_threshold(&code("01010101"));
        let step = CertStep {
            sets: StepSets::BaseClosedTwins { s: vs("GI") },
            synced_after: vs("GI"),
        };
        assert_eq!(
            check_step_detailed(&g, &step, &[]),
            Err(StepViolation::NotClosedTwins(v('G'), v('I')))
        );
    }

    #[test]
    fn reordered_steps_fail_at_first_broken_step() {
        let c = code("01010101");
        let g = build_threshold(&c);
        let mut cert = certify(&c).unwrap();
        cert.steps.swap(1, 2);
        let report = verify_certificate(&g, &cert).unwrap();
        assert!(!report.pass);
        assert!(!report.monotone);
        assert!(matches!(
            report.failure,
            Some(VerificationFailure::StepPrecondition { step: 2, .. })
        ));
        assert!(report.steps[0].pass && !report.steps[1].pass);
    }

    #[test]
    fn missing_vertex_is_incomplete_cover() {
        let c = code("01010101");
        let g = build_threshold(&c);
        let mut cert = certify(&c).unwrap();
        cert.steps.pop();
        let report = verify_certificate(&g, &cert).unwrap();
        assert!(!report.covers_all);
        assert_eq!(
            report.failure,
            Some(VerificationFailure::IncompleteCover {
                missing: vs("AB")
            })
        );
    }

    #[test]
    fn vertex_count_mismatch() {
        let cert = certify(&code("11")).unwrap();
        assert_eq!(
            verify_certificate(&Graph::complete(4), &cert),
            Err(Error::GraphMismatch { graph: 4, code: 3 })
        );
    }

    #[test]
    fn step_count_is_twice_block_count() {
        for len in 1..=11 {
            for c in ThresholdCode::all_of_length(len).filter(|c| c.is_connected()) {
                let cert = certify(&c).unwrap();
                let k = block_decomposition(&c).unwrap().k();
                assert_eq!(cert.steps.len(), 2 * k, "{c}");
                let g = build_threshold(&c);
                let report = verify_certificate(&g, &cert).unwrap();
                assert!(report.pass, "{c}: {:?}", report.failure);
            }
        }
    }

    #[test]
    fn json_roundtrip_is_one_based() {
        let cert = certify(&code("1")).unwrap();
        let text = cert.to_json();
        let value: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(value["code"], "1");
        assert_eq!(value["steps"][0]["kind"], "BaseClosedTwins");
        assert_eq!(value["steps"][0]["sets"]["S"], serde_json::json!([2]));
        assert_eq!(value["steps"][1]["sets"]["attached"], serde_json::json!([1]));
        assert_eq!(value["steps"][1]["synced_after"], serde_json::json!([1, 2]));
        let back = Certificate::from_json(&text).unwrap();
        assert_eq!(back, cert);
        assert_eq!(back.to_json(), text);
    }

    #[test]
    fn audit_synchronous_passes_everywhere() {
        let c = code("0110101");
        let g = build_threshold(&c);
        let cert = certify(&c).unwrap();
        let theta = PhaseConfig::synchronous(g.n(), 0.7);
        let report = audit_config(&g, &cert, &theta, 1e-6).unwrap();
        assert!(report.pass);
        assert_eq!(report.class, Classification::SynchronousMinimum);
    }

    #[test]
    fn audit_triangle_splay_fails_at_base() {
        let c = code("11");
        let g = build_threshold(&c);
        let cert = certify(&c).unwrap();
        let theta = PhaseConfig::new(vec![0.0, 2.0 * PI / 3.0, 4.0 * PI / 3.0]).unwrap();
        let report = audit_config(&g, &cert, &theta, 1e-6).unwrap();
        assert_eq!(report.class, Classification::Saddle);
        assert_eq!(report.first_failure, Some(1));
        assert!((report.steps[0].max_deviation - 2.0 * PI / 3.0).abs() < 1e-12);
    }

    #[test]
    fn audit_rejects_non_equilibrium() {
        let c = code("11");
        let g = build_threshold(&c);
        let cert = certify(&c).unwrap();
        let theta = PhaseConfig::new(vec![0.0, 0.3, 0.1]).unwrap();
        assert!(matches!(
            audit_config(&g, &cert, &theta, 1e-6),
            Err(Error::NotEquilibrium { .. })
        ));
    }
}
