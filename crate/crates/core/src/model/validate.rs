use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use super::{CiFamily, Combiner, Family, Network, TabularCpd, VarId};
use crate::index::volume;
use crate::semantics::check_identity;

/// Probability rows must sum to one within this tolerance.
pub const NORMALIZATION_TOLERANCE: f64 = 1e-9;

/// One broken structural invariant.
#[derive(Debug, Clone, PartialEq)]
pub enum Violation {
    EmptyStateSpace {
        variable: String,
    },
    DuplicateState {
        variable: String,
        state: String,
    },
    DuplicateVariable {
        name: String,
    },
    UnresolvedReference {
        context: String,
        index: usize,
    },
    MissingFamily {
        variable: String,
    },
    DuplicateFamily {
        variable: String,
    },
    TableSize {
        variable: String,
        expected: usize,
        found: usize,
    },
    ProbabilityOutOfRange {
        variable: String,
        row: usize,
    },
    RowNotNormalized {
        variable: String,
        row: usize,
        sum: f64,
    },
    StateOutOfRange {
        variable: String,
        state: usize,
    },
    DuplicateCause {
        effect: String,
        cause: String,
    },
    TransitionShape {
        effect: String,
        cause: String,
    },
    DistinguishedRow {
        effect: String,
        cause: String,
    },
    CombinerDomain {
        effect: String,
        combiner: String,
    },
    CombinerArity {
        effect: String,
        expected: usize,
        found: usize,
    },
    BaselineNotIdentity {
        effect: String,
    },
    LeakShape {
        effect: String,
    },
    Cycle,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use Violation::*;
        match self {
            EmptyStateSpace { variable } => write!(f, "`{variable}` has no states"),
            DuplicateState { variable, state } => {
                write!(f, "`{variable}` declares state `{state}` twice")
            }
            DuplicateVariable { name } => write!(f, "variable name `{name}` is not unique"),
            UnresolvedReference { context, index } => {
                write!(f, "{context}: variable index {index} does not resolve")
            }
            MissingFamily { variable } => write!(f, "`{variable}` has no family or prior"),
            DuplicateFamily { variable } => write!(f, "`{variable}` has more than one family"),
            TableSize {
                variable,
                expected,
                found,
            } => write!(f, "`{variable}`: table has {found} entries, expected {expected}"),
            ProbabilityOutOfRange { variable, row } => {
                write!(f, "`{variable}` row {row}: probability outside [0, 1]")
            }
            RowNotNormalized { variable, row, sum } => {
                write!(f, "`{variable}` row {row}: row not normalized (sum {sum})")
            }
            StateOutOfRange { variable, state } => {
                write!(f, "`{variable}`: state index {state} out of range")
            }
            DuplicateCause { effect, cause } => {
                write!(f, "`{effect}`: cause `{cause}` linked twice")
            }
            TransitionShape { effect, cause } => write!(
                f,
                "`{effect}`: transition for `{cause}` needs one row per cause state over the effect states"
            ),
            DistinguishedRow { effect, cause } => write!(
                f,
                "`{effect}`: cause `{cause}`: distinguished row must be point mass on baseline"
            ),
            CombinerDomain { effect, combiner } => {
                write!(f, "`{effect}`: combiner `{combiner}` is not closed over the effect states")
            }
            CombinerArity {
                effect,
                expected,
                found,
            } => write!(f, "`{effect}`: combination table arity {found}, expected {expected}"),
            BaselineNotIdentity { effect } => {
                write!(f, "`{effect}`: baseline is not an identity of the combiner")
            }
            LeakShape { effect } => {
                write!(f, "`{effect}`: leak must be one probability per effect state")
            }
            Cycle => write!(f, "network graph has a directed cycle"),
        }
    }
}

/// Outcome of [`validate`]: empty when the network is well formed.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks every structural invariant of `network` and reports all violations.
pub fn validate(network: &Network) -> ValidationReport {
    let mut out = Vec::new();
    let n = network.len();

    let mut names = BTreeSet::new();
    for v in &network.variables {
        if v.states.is_empty() {
            out.push(Violation::EmptyStateSpace {
                variable: v.name.clone(),
            });
        }
        let mut seen = BTreeSet::new();
        for s in &v.states {
            if !seen.insert(s.as_str()) {
                out.push(Violation::DuplicateState {
                    variable: v.name.clone(),
                    state: s.clone(),
                });
            }
        }
        if !names.insert(v.name.as_str()) {
            out.push(Violation::DuplicateVariable {
                name: v.name.clone(),
            });
        }
    }

    let mut owners = alloc::vec![0usize; n];
    let mut refs_ok = true;
    for family in &network.families {
        let child = family.child();
        if child.0 >= n {
            out.push(Violation::UnresolvedReference {
                context: String::from("family child"),
                index: child.0,
            });
            refs_ok = false;
            continue;
        }
        owners[child.0] += 1;
        let before = out.len();
        match family {
            Family::Table(cpd) => check_table(network, cpd, &mut out),
            Family::Ci(ci) => check_ci(network, ci, &mut out),
        }
        if out[before..]
            .iter()
            .any(|v| matches!(v, Violation::UnresolvedReference { .. }))
        {
            refs_ok = false;
        }
    }
    for (idx, &count) in owners.iter().enumerate() {
        let variable = network.variables[idx].name.clone();
        match count {
            0 => out.push(Violation::MissingFamily { variable }),
            1 => {}
            _ => out.push(Violation::DuplicateFamily { variable }),
        }
    }

    if refs_ok && network.topological_order().is_none() {
        out.push(Violation::Cycle);
    }

    ValidationReport { violations: out }
}

fn resolve(network: &Network, id: VarId, context: &str, out: &mut Vec<Violation>) -> bool {
    if id.0 < network.len() {
        true
    } else {
        out.push(Violation::UnresolvedReference {
            context: context.into(),
            index: id.0,
        });
        false
    }
}

fn check_row(variable: &str, row: usize, probs: &[f64], out: &mut Vec<Violation>) {
    if probs.iter().any(|p| !(0.0..=1.0).contains(p)) {
        out.push(Violation::ProbabilityOutOfRange {
            variable: variable.into(),
            row,
        });
    }
    let sum: f64 = probs.iter().sum();
    if (sum - 1.0).abs() > NORMALIZATION_TOLERANCE {
        out.push(Violation::RowNotNormalized {
            variable: variable.into(),
            row,
            sum,
        });
    }
}

fn check_table(network: &Network, cpd: &TabularCpd, out: &mut Vec<Violation>) {
    let name = network.name(cpd.child);
    let context = alloc::format!("parents of `{name}`");
    let mut resolved = true;
    for &p in &cpd.parents {
        resolved &= resolve(network, p, &context, out);
    }
    if !resolved {
        return;
    }
    let child_card = network.cardinality(cpd.child);
    let parent_cards: Vec<usize> = cpd
        .parents
        .iter()
        .map(|&p| network.cardinality(p))
        .collect();
    let expected = volume(&parent_cards).saturating_mul(child_card);
    if cpd.table.len() != expected {
        out.push(Violation::TableSize {
            variable: name.into(),
            expected,
            found: cpd.table.len(),
        });
        return;
    }
    if child_card == 0 {
        return;
    }
    for (row, probs) in cpd.table.chunks(child_card).enumerate() {
        check_row(name, row, probs, out);
    }
}

fn check_ci(network: &Network, ci: &CiFamily, out: &mut Vec<Violation>) {
    let effect = network.name(ci.effect);
    let k = network.cardinality(ci.effect);
    if ci.baseline >= k {
        out.push(Violation::StateOutOfRange {
            variable: effect.into(),
            state: ci.baseline,
        });
    }

    let mut causes = BTreeSet::new();
    for link in &ci.links {
        if !resolve(
            network,
            link.cause,
            &alloc::format!("causes of `{effect}`"),
            out,
        ) {
            continue;
        }
        let cause = network.name(link.cause);
        if !causes.insert(link.cause) {
            out.push(Violation::DuplicateCause {
                effect: effect.into(),
                cause: cause.into(),
            });
        }
        let cause_card = network.cardinality(link.cause);
        if link.distinguished >= cause_card {
            out.push(Violation::StateOutOfRange {
                variable: cause.into(),
                state: link.distinguished,
            });
        }
        if link.transition.len() != cause_card || link.transition.iter().any(|r| r.len() != k) {
            out.push(Violation::TransitionShape {
                effect: effect.into(),
                cause: cause.into(),
            });
            continue;
        }
        let row_label = alloc::format!("{effect} <- {cause}");
        for (row, probs) in link.transition.iter().enumerate() {
            check_row(&row_label, row, probs, out);
        }
        if let Some(row) = link.transition.get(link.distinguished) {
            if ci.baseline < k && (row[ci.baseline] - 1.0).abs() > NORMALIZATION_TOLERANCE {
                out.push(Violation::DistinguishedRow {
                    effect: effect.into(),
                    cause: cause.into(),
                });
            }
        }
    }

    if let Some(leak) = &ci.leak {
        if leak.len() != k {
            out.push(Violation::LeakShape {
                effect: effect.into(),
            });
        } else {
            check_row(&alloc::format!("{effect} leak"), 0, leak, out);
        }
    }

    match &ci.combiner {
        Combiner::Table(table) => {
            if table.arity() != ci.arity() {
                out.push(Violation::CombinerArity {
                    effect: effect.into(),
                    expected: ci.arity(),
                    found: table.arity(),
                });
            }
            if table.states() != k || !table.is_well_formed() {
                out.push(Violation::CombinerDomain {
                    effect: effect.into(),
                    combiner: ci.combiner.name(),
                });
            }
        }
        named => match named.binary(k) {
            None => out.push(Violation::CombinerDomain {
                effect: effect.into(),
                combiner: named.name(),
            }),
            Some(op) => {
                if ci.baseline < k && !check_identity(&op, ci.baseline) {
                    out.push(Violation::BaselineNotIdentity {
                        effect: effect.into(),
                    });
                }
            }
        },
    }
}
