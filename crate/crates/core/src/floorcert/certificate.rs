//! The full certification pipeline and its canonical text form.

use std::fmt::Write as _;

use rayon::prelude::*;
use serde::Serialize;

use super::eliminate::{eliminate, jump_candidates, stabilization_bound};
use super::floorsum::{brute_force_small_q, build_floor_sum, FloorSum, SmallQReport, Witness};
use super::form::{Assignment, LinearForm};
use super::spec::FactorialRatioSpec;
use crate::error::{Error, Result};

pub const DEFAULT_SMALL_Q_MAX: i64 = 17;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EliminationStep {
    pub var: String,
    pub parents: usize,
    pub cases: usize,
    /// Jump set of the first parent; the others are recorded per leaf path.
    pub first_jump_set: Vec<LinearForm>,
}

/// A fully reduced case: a floor sum in `n` alone.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Leaf {
    /// Case index chosen at each elimination step.
    pub path: Vec<usize>,
    /// `(variable, value)` in elimination order; each value only mentions
    /// variables eliminated later, and `n`.
    pub substitutions: Vec<(String, LinearForm)>,
    pub sum: FloorSum,
    /// Per term: `(bound, stable floor value)`.
    pub stable_terms: Vec<(i64, i64)>,
    pub stable_value: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum Verdict {
    Pass,
    Fail(Witness),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Certificate {
    pub instance: String,
    pub variables: Vec<String>,
    pub order: Vec<String>,
    pub floor_sum: FloorSum,
    pub small_q: SmallQReport,
    pub steps: Vec<EliminationStep>,
    pub leaves: Vec<Leaf>,
    pub max_bound: i64,
    pub verdict: Verdict,
}

impl Certificate {
    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    pub fn floor_count(&self) -> usize {
        self.leaves.iter().map(|l| l.sum.terms.len()).sum()
    }

    /// Re-checks the verdict from the recorded leaves alone: every leaf is
    /// evaluated directly for `1 <= n <= max_bound` and its stable terms are
    /// re-derived, without repeating the elimination.
    pub fn recheck(&self) -> bool {
        let empty = Assignment::new();
        let per_leaf: Vec<(bool, bool)> = self
            .leaves
            .par_iter()
            .map(|leaf| {
                let stable: Vec<(i64, i64)> = leaf
                    .sum
                    .terms
                    .iter()
                    .map(|t| stabilization_bound(t.form.n, t.form.constant))
                    .collect();
                let value: i64 = leaf.sum.terms.iter().zip(&stable).map(|(t, (_, v))| t.weight * v).sum();
                let consistent = stable == leaf.stable_terms
                    && value == leaf.stable_value
                    && stable.iter().all(|(b, _)| *b <= self.max_bound);
                let nonnegative = value >= 0
                    && (1..self.max_bound).all(|n| leaf.sum.evaluate_unchecked(&empty, 2 * n + 1) >= 0);
                (consistent, nonnegative)
            })
            .collect();
        let consistent = per_leaf.iter().all(|(c, _)| *c);
        let pass = self.small_q.passed() && per_leaf.iter().all(|(_, ok)| *ok);
        consistent && pass == self.passed()
    }

    /// Canonical text: sections SMALLQ, CASES, STABLE, VERDICT.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let w = &mut out;
        writeln!(w, "CERTIFICATE {}", self.instance).unwrap();
        writeln!(w, "VARS {}", self.variables.join(" ")).unwrap();
        writeln!(w, "ORDER {}", self.order.join(" ")).unwrap();
        writeln!(w, "SUM {}", self.floor_sum).unwrap();
        writeln!(w, "SMALLQ q_max={}", self.small_q.q_max).unwrap();
        for r in &self.small_q.rows {
            writeln!(w, "q={} points={} min={}", r.q, r.points, r.min).unwrap();
        }
        for wit in &self.small_q.witnesses {
            writeln!(w, "negative q={} at {} value={}", wit.q, fmt_assignment(&wit.assignment), wit.value)
                .unwrap();
        }
        writeln!(w, "CASES").unwrap();
        for (idx, s) in self.steps.iter().enumerate() {
            let jumps: Vec<String> = s.first_jump_set.iter().map(ToString::to_string).collect();
            writeln!(
                w,
                "step {} eliminate {} parents={} cases={} first_jumps={{{}}}",
                idx + 1,
                s.var,
                s.parents,
                s.cases,
                jumps.join(", ")
            )
            .unwrap();
        }
        for leaf in &self.leaves {
            let subs: Vec<String> =
                leaf.substitutions.iter().map(|(v, f)| format!("{v}={f}")).collect();
            writeln!(w, "leaf {} {} : {}", fmt_path(&leaf.path), subs.join(" "), leaf.sum).unwrap();
        }
        writeln!(w, "STABLE bound={}", self.max_bound).unwrap();
        for leaf in &self.leaves {
            let empty = Assignment::new();
            let direct: Vec<String> = (1..self.max_bound)
                .map(|n| leaf.sum.evaluate_unchecked(&empty, 2 * n + 1).to_string())
                .collect();
            writeln!(
                w,
                "leaf {} direct=[{}] stable={}",
                fmt_path(&leaf.path),
                direct.join(","),
                leaf.stable_value
            )
            .unwrap();
        }
        match &self.verdict {
            Verdict::Pass => writeln!(w, "VERDICT PASS").unwrap(),
            Verdict::Fail(wit) => writeln!(
                w,
                "VERDICT FAIL q={} at {} value={}",
                wit.q,
                fmt_assignment(&wit.assignment),
                wit.value
            )
            .unwrap(),
        }
        out
    }
}

fn fmt_path(path: &[usize]) -> String {
    path.iter().map(ToString::to_string).collect::<Vec<_>>().join(".")
}

pub fn fmt_assignment(a: &Assignment) -> String {
    a.iter().map(|(k, v)| format!("{k}={v}")).collect::<Vec<_>>().join(" ")
}

struct Node {
    path: Vec<usize>,
    substitutions: Vec<(String, LinearForm)>,
    sum: FloorSum,
}

/// Concrete point in `[0, q)^vars` realising a leaf at `n`.
fn realise(leaf: &Leaf, n: i64) -> Assignment {
    let q = 2 * n + 1;
    let mut a = Assignment::new();
    for (var, value) in leaf.substitutions.iter().rev() {
        let x = value.eval(&a, n);
        a.insert(var.clone(), x);
    }
    a.values_mut().for_each(|x| *x = x.rem_euclid(q));
    a
}

pub fn certify(
    name: &str,
    spec: &FactorialRatioSpec,
    order: &[String],
    small_q_max: i64,
) -> Result<Certificate> {
    let floor_sum = build_floor_sum(spec);
    let vars = floor_sum.variables();
    {
        let mut sorted_order = order.to_vec();
        sorted_order.sort();
        sorted_order.dedup();
        let covers = sorted_order.len() == order.len()
            && vars.iter().all(|v| order.contains(v))
            && order.iter().all(|v| spec.variables.contains(v));
        if !covers {
            return Err(Error::BadOrder(format!(
                "order [{}] vs variables [{}]",
                order.join(" "),
                spec.variables.join(" ")
            )));
        }
    }

    let small_q = brute_force_small_q(&floor_sum, small_q_max);

    let mut nodes = vec![Node { path: Vec::new(), substitutions: Vec::new(), sum: floor_sum.clone() }];
    let mut steps = Vec::new();
    for var in order {
        let first_jump_set = jump_candidates(&nodes[0].sum, var)?;
        let children = nodes
            .par_iter()
            .map(|node| {
                Ok(eliminate(&node.sum, var)?
                    .into_iter()
                    .enumerate()
                    .map(|(idx, (value, sum))| {
                        let mut path = node.path.clone();
                        path.push(idx);
                        let mut substitutions = node.substitutions.clone();
                        substitutions.push((var.clone(), value));
                        Node { path, substitutions, sum }
                    })
                    .collect::<Vec<_>>())
            })
            .collect::<Result<Vec<_>>>()?;
        let parents = nodes.len();
        nodes = children.into_iter().flatten().collect();
        steps.push(EliminationStep { var: var.clone(), parents, cases: nodes.len(), first_jump_set });
    }

    let leaves: Vec<Leaf> = nodes
        .into_iter()
        .map(|node| {
            debug_assert!(node.sum.variables().is_empty());
            let stable_terms: Vec<(i64, i64)> = node
                .sum
                .terms
                .iter()
                .map(|t| stabilization_bound(t.form.n, t.form.constant))
                .collect();
            let stable_value =
                node.sum.terms.iter().zip(&stable_terms).map(|(t, (_, v))| t.weight * v).sum();
            Leaf {
                path: node.path,
                substitutions: node.substitutions,
                sum: node.sum,
                stable_terms,
                stable_value,
            }
        })
        .collect();
    let max_bound = leaves
        .iter()
        .flat_map(|l| l.stable_terms.iter().map(|(b, _)| *b))
        .max()
        .unwrap_or(1);

    let witness_for = |leaf: &Leaf, n: i64| -> Witness {
        let q = 2 * n + 1;
        let assignment = realise(leaf, n);
        let value = floor_sum.evaluate_unchecked(&assignment, q);
        Witness { q, assignment, value }
    };

    let leaf_failure = leaves.iter().find_map(|leaf| {
        let empty = Assignment::new();
        (1..max_bound)
            .find(|&n| leaf.sum.evaluate_unchecked(&empty, 2 * n + 1) < 0)
            .or((leaf.stable_value < 0).then_some(max_bound))
            .map(|n| witness_for(leaf, n))
    });

    let verdict = match (small_q.witnesses.first(), leaf_failure) {
        (Some(w), _) => Verdict::Fail(w.clone()),
        (None, Some(w)) => Verdict::Fail(w),
        (None, None) => Verdict::Pass,
    };

    Ok(Certificate {
        instance: name.to_string(),
        variables: spec.variables.clone(),
        order: order.to_vec(),
        floor_sum,
        small_q,
        steps,
        leaves,
        max_bound,
        verdict,
    })
}
