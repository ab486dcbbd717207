//! Recursive Cheeger-cut decomposition with exact certificates.
//!
//! The cutter splits along Cheeger realizers with depth-indexed thresholds
//! (3/8)^d·ε, aiming at a partition into k ≤ ⌊1/α⌋ parts that are α-big and
//! exceed their thresholds (every part then beats δ = (3/8)^(k−1)·ε), or at
//! an α-small ε-Følner witness showing the graph has a poorly expanding
//! small set. No outcome leans on the cut chain alone: each part is
//! certified by its own exact Cheeger computation, a witness has its three
//! inequalities checked directly in the whole graph before it is returned,
//! and [`verify_decomposition`] rechecks everything from scratch.

use std::fmt::Write as _;

use crate::cheeger::{cheeger, find_small_folner, folner_ratio, CheegerValue};
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};
use crate::ratio::Ratio;

/// The factor by which Følner thresholds shrink at each cut level: 3/8.
pub fn threshold_decay() -> Ratio {
    Ratio::new(3, 8).expect("constant")
}

/// Per-part certificate: the part passed the exact expander test against its
/// depth-indexed threshold `(3/8)^depth · ε`, which is at least the uniform
/// δ of the whole decomposition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartCertificate {
    /// Vertices in the indices of the decomposed graph.
    pub vertices: VertexSet,
    pub depth: usize,
    pub threshold: Ratio,
    pub part_cheeger: CheegerValue,
    /// Whether the part is α-big relative to the decomposed graph.
    pub alpha_big: bool,
}

/// Either a certified partition into expanders, or an α-small ε-Følner
/// witness proving the hypothesis fails.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DecompositionResult {
    Decomposed {
        parts: Vec<PartCertificate>,
        k: usize,
        /// `(3/8)^(k−1) · ε`.
        delta: Ratio,
    },
    Witness {
        witness: VertexSet,
        /// `|∂W| / |W|` in the decomposed graph.
        ratio: Ratio,
    },
}

/// One re-checked assertion in a verification report.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckRecord {
    pub label: String,
    pub passed: bool,
    pub detail: String,
}

/// Outcome of an independent from-scratch recheck of a decomposition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerificationReport {
    pub ok: bool,
    pub checks: Vec<CheckRecord>,
}

/// Values along the minimality chain for a subset of a Cheeger realizer:
/// with Y a realizer, Z its complement and A ⊆ Y, minimality forces
/// `h <= (|∂Y| − |∂ᶻA| + |∂ʸA|) / |Y∖A|`. The boundary retention
/// `r = |∂ʸA| / |∂ˣA|` is reported alongside; it satisfies
/// `r >= 1/2 − h|A| / (2|∂ˣA|)` and is the quantity that decides whether
/// Følner sets transfer up a cut.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CutTrace {
    /// The exact Cheeger constant h of the graph.
    pub cheeger: Ratio,
    /// t = |A| / |Y|.
    pub subset_fraction: Ratio,
    /// r = |∂ʸA| / |∂ˣA|.
    pub boundary_retention: Ratio,
    /// Left side of the minimality inequality (equals h).
    pub minimality_lhs: Ratio,
    /// Right side: (|∂Y| − |∂ᶻA| + |∂ʸA|) / |Y∖A|.
    pub minimality_rhs: Ratio,
}

fn is_alpha_small(size: usize, n: usize, alpha: &Ratio) -> bool {
    debug_assert!(n > 0);
    Ratio::from_counts(size, n) < *alpha
}

/// ⌊1/α⌋ for positive α.
pub(crate) fn inverse_floor(alpha: &Ratio) -> usize {
    (&Ratio::one() / alpha)
        .floor_usize()
        .expect("1/alpha fits in usize for admissible alpha")
}

struct Leaf {
    vertices: VertexSet,
    depth: usize,
    threshold: Ratio,
    cheeger: CheegerValue,
}

struct Cutter<'a> {
    graph: &'a Graph,
    eps: &'a Ratio,
    alpha: &'a Ratio,
    cap: usize,
    n: usize,
    leaves: Vec<Leaf>,
}

impl Cutter<'_> {
    /// Depth-first: cut side before complement side. Returns an α-small
    /// witness as soon as one appears.
    fn run(&mut self, part: VertexSet, depth: usize) -> Result<Option<(VertexSet, Ratio)>> {
        if depth > self.n {
            return Err(Error::InvariantViolation(
                "cut recursion exceeded the vertex-count ceiling".into(),
            ));
        }
        let threshold = &threshold_decay().pow(depth as i32) * self.eps;
        let induced = self.graph.induced_subgraph(&part)?;
        let result = cheeger(&induced.graph, self.cap)?;
        if result.value.exceeds(&threshold) {
            self.leaves.push(Leaf {
                vertices: part,
                depth,
                threshold,
                cheeger: result.value,
            });
            return Ok(None);
        }
        let realizer = result
            .realizer
            .expect("a finite Cheeger value comes with a realizer");
        let cut = induced.to_parent_set(&realizer);
        if is_alpha_small(cut.len(), self.n, self.alpha) {
            // Only hand the set out as a witness after checking it directly
            // in the whole graph; the per-level thresholds do not always
            // make a deep cut Følner at the top. If the direct check fails,
            // keep cutting and let the final fallback search settle whether
            // a genuine witness exists.
            let ratio = folner_ratio(self.graph, &cut)?;
            if 2 * cut.len() <= self.n && ratio <= *self.eps {
                return Ok(Some((cut, ratio)));
            }
        }
        if let Some(w) = self.run(cut.clone(), depth + 1)? {
            return Ok(Some(w));
        }
        let rest = part.difference(&cut);
        self.run(rest, depth + 1)
    }
}

/// Recursively decomposes `g` into certified expander parts, or returns an
/// α-small ε-Følner witness. Requires `0 < α <= 1/2` and `ε > 0`.
pub fn decompose(g: &Graph, eps: &Ratio, alpha: &Ratio, cap: usize) -> Result<DecompositionResult> {
    if alpha.is_zero() || *alpha > Ratio::half() {
        return Err(Error::Parameter(format!(
            "alpha must lie in (0, 1/2], got {alpha}"
        )));
    }
    if eps.is_zero() {
        return Err(Error::Parameter("epsilon must be positive".into()));
    }
    let n = g.vertex_count();
    if n > cap {
        return Err(Error::CapExceeded { n, cap });
    }
    if n == 0 {
        return Ok(DecompositionResult::Decomposed {
            parts: Vec::new(),
            k: 0,
            delta: &threshold_decay().pow(-1) * eps,
        });
    }

    let mut cutter = Cutter {
        graph: g,
        eps,
        alpha,
        cap,
        n,
        leaves: Vec::new(),
    };
    if let Some((witness, ratio)) = cutter.run(g.full_set(), 0)? {
        return Ok(DecompositionResult::Witness { witness, ratio });
    }

    // An α-small leaf normally signals that the hypothesis failed in a way
    // the cut order did not surface, so a direct search is consulted. When
    // even the exhaustive search finds no witness, the partition itself is
    // still fully certified against its thresholds and is returned with
    // honest α-big flags rather than suppressed.
    if cutter
        .leaves
        .iter()
        .any(|leaf| is_alpha_small(leaf.vertices.len(), n, alpha))
    {
        if let Some(witness) = find_small_folner(g, eps, alpha, cap)? {
            let ratio = folner_ratio(g, &witness)?;
            return Ok(DecompositionResult::Witness { witness, ratio });
        }
    }

    let mut leaves = cutter.leaves;
    leaves.sort_by_key(|leaf| leaf.vertices.members()[0]);
    let k = leaves.len();
    let delta = &threshold_decay().pow(k as i32 - 1) * eps;
    let parts = leaves
        .into_iter()
        .map(|leaf| PartCertificate {
            alpha_big: !is_alpha_small(leaf.vertices.len(), n, alpha),
            vertices: leaf.vertices,
            depth: leaf.depth,
            threshold: leaf.threshold,
            part_cheeger: leaf.cheeger,
        })
        .collect();
    Ok(DecompositionResult::Decomposed { parts, k, delta })
}

/// Rechecks a decomposition result from scratch with exact arithmetic:
/// partition-ness, per-part Cheeger against recomputed thresholds, α-bigness
/// flags, the k-bound, and stored values; for a witness, all three witness
/// inequalities. Lists every check with its outcome.
pub fn verify_decomposition(
    g: &Graph,
    eps: &Ratio,
    alpha: &Ratio,
    result: &DecompositionResult,
    cap: usize,
) -> Result<VerificationReport> {
    if alpha.is_zero() {
        return Err(Error::Parameter("alpha must be positive".into()));
    }
    if eps.is_zero() {
        return Err(Error::Parameter("epsilon must be positive".into()));
    }
    let n = g.vertex_count();
    let mut checks: Vec<CheckRecord> = Vec::new();
    let mut record = |label: String, passed: bool, detail: String| {
        checks.push(CheckRecord {
            label,
            passed,
            detail,
        });
    };

    match result {
        DecompositionResult::Decomposed { parts, k, delta } => {
            let mut seen = vec![false; n];
            let mut disjoint = true;
            for part in parts {
                for &v in part.vertices.members() {
                    if seen[v as usize] {
                        disjoint = false;
                    }
                    seen[v as usize] = true;
                }
            }
            let covered = seen.iter().all(|&s| s);
            record(
                "partition".into(),
                disjoint && covered,
                format!(
                    "parts are pairwise disjoint ({disjoint}) and cover all {n} vertices ({covered})"
                ),
            );
            record(
                "part-count".into(),
                *k == parts.len(),
                format!("recorded k = {k}, parts listed = {}", parts.len()),
            );
            let expected_delta = &threshold_decay().pow(*k as i32 - 1) * eps;
            record(
                "delta-formula".into(),
                *delta == expected_delta,
                format!("recorded delta = {delta}, (3/8)^(k-1)*eps = {expected_delta}"),
            );

            let mut all_big = true;
            for (i, part) in parts.iter().enumerate() {
                if part.vertices.is_empty() {
                    record(
                        format!("part-{i}-nonempty"),
                        false,
                        "part has no vertices".into(),
                    );
                    all_big = false;
                    continue;
                }
                let induced = g.induced_subgraph(&part.vertices)?;
                let recomputed = cheeger(&induced.graph, cap)?;
                let expected_threshold = &threshold_decay().pow(part.depth as i32) * eps;
                record(
                    format!("part-{i}-threshold"),
                    part.threshold == expected_threshold,
                    format!(
                        "recorded threshold {} vs (3/8)^{}*eps = {}",
                        part.threshold, part.depth, expected_threshold
                    ),
                );
                record(
                    format!("part-{i}-cheeger-recorded"),
                    recomputed.value == part.part_cheeger,
                    format!(
                        "recorded value {} vs recomputed {}",
                        part.part_cheeger, recomputed.value
                    ),
                );
                record(
                    format!("part-{i}-expander"),
                    recomputed.value.exceeds(&expected_threshold),
                    format!(
                        "exact part Cheeger {} must exceed {}",
                        recomputed.value, expected_threshold
                    ),
                );
                let big = !is_alpha_small(part.vertices.len(), n, alpha);
                all_big &= big;
                record(
                    format!("part-{i}-alpha-big-flag"),
                    part.alpha_big == big,
                    format!(
                        "recorded alpha_big = {}, recomputed = {big} (|part| = {}, alpha*n = {alpha}*{n})",
                        part.alpha_big,
                        part.vertices.len()
                    ),
                );
            }
            let bound = inverse_floor(alpha);
            record(
                "k-bound".into(),
                *k <= bound,
                format!("k = {k} must be at most floor(1/alpha) = {bound}"),
            );
            record(
                "all-parts-alpha-big".into(),
                all_big,
                "every part must have |part| >= alpha * n".into(),
            );
        }
        DecompositionResult::Witness { witness, ratio } => {
            if witness.is_empty() {
                record(
                    "witness-nonempty".into(),
                    false,
                    "witness has no vertices".into(),
                );
            } else {
                record(
                    "witness-half-size".into(),
                    2 * witness.len() <= n,
                    format!("2|W| = {} must be at most n = {n}", 2 * witness.len()),
                );
                let recomputed = folner_ratio(g, witness)?;
                record(
                    "witness-ratio-recorded".into(),
                    recomputed == *ratio,
                    format!("recorded ratio {ratio}, recomputed {recomputed}"),
                );
                record(
                    "witness-folner".into(),
                    recomputed <= *eps,
                    format!("|∂W|/|W| = {recomputed} must be at most eps = {eps}"),
                );
                record(
                    "witness-alpha-small".into(),
                    is_alpha_small(witness.len(), n, alpha),
                    format!(
                        "|W| = {} must be strictly below alpha*n = {alpha}*{n}",
                        witness.len()
                    ),
                );
            }
        }
    }

    let ok = checks.iter().all(|c| c.passed);
    Ok(VerificationReport { ok, checks })
}

/// Computes the minimality-chain values for `a` inside the Cheeger realizer
/// `y`. `y` must attain the Cheeger constant; `a` must be a nonempty proper
/// subset of `y` with at least one boundary edge in the whole graph.
pub fn cheeger_cut_trace(g: &Graph, y: &VertexSet, a: &VertexSet, cap: usize) -> Result<CutTrace> {
    let n = g.vertex_count();
    let result = cheeger(g, cap)?;
    let h = match result.value {
        CheegerValue::Finite(h) => h,
        CheegerValue::Infinite => {
            return Err(Error::Precondition(
                "the graph has no Cheeger realizer".into(),
            ))
        }
    };
    if y.is_empty() || 2 * y.len() > n || folner_ratio(g, y)? != h {
        return Err(Error::Precondition(format!(
            "the given set does not realize the Cheeger constant {h}"
        )));
    }
    if !a.is_subset_of(y) || a.is_empty() || a.len() >= y.len() {
        return Err(Error::Precondition(
            "the subset must be nonempty and properly contained in the realizer".into(),
        ));
    }
    let z = y.complement();
    let boundary_y = g.boundary(y)?.len();
    let into_y = g.relative_boundary(a, y)?.len();
    let into_z = g.relative_boundary(a, &z)?.len();
    let full = g.boundary(a)?.len();
    debug_assert_eq!(full, into_y + into_z);
    if full == 0 {
        return Err(Error::Precondition(
            "the subset has no boundary edges in the graph".into(),
        ));
    }
    // ∂ᶻA ⊆ ∂Y, so the numerator below never goes negative.
    let rhs_numer = boundary_y - into_z + into_y;
    Ok(CutTrace {
        cheeger: h.clone(),
        subset_fraction: Ratio::from_counts(a.len(), y.len()),
        boundary_retention: Ratio::from_counts(into_y, full),
        minimality_lhs: h,
        minimality_rhs: Ratio::from_counts(rhs_numer, y.len() - a.len()),
    })
}

impl std::fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut out = String::new();
        for check in &self.checks {
            let _ = writeln!(
                out,
                "{} {}: {}",
                if check.passed { "pass" } else { "FAIL" },
                check.label,
                check.detail
            );
        }
        let _ = write!(out, "overall: {}", if self.ok { "pass" } else { "FAIL" });
        f.write_str(&out)
    }
}
