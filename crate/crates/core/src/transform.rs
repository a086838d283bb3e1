//! Rewriting causal-independence families into explicit chains.
//!
//! A family with causes `c_σ1 … c_σn` under ordering `σ` becomes a chain of
//! effect-valued nodes `e_1 … e_n`, the last being the original effect, where
//! each `e_i` depends only on the summary of `c_σi` and on `e_{i-1}`. Three
//! styles are available:
//!
//! * [`ExpansionStyle::Collapsed`]: a probabilistic summary node `e'_i` per
//!   cause, with deterministic chain nodes.
//! * [`ExpansionStyle::ExplicitEpsilon`]: as collapsed, but each summary is a
//!   deterministic function of its cause and a root mechanism node `ε_i`.
//! * [`ExpansionStyle::TemporalChain`]: no summary nodes; each chain node is
//!   probabilistic with parents `c_σi` and `e_{i-1}`.
//!
//! Auxiliary nodes are named `<effect>.__e<i>`, `<effect>.__ep<i>`,
//! `<effect>.__eps<i>` and `<effect>.__leak`.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::model::{BinaryTable, CiFamily, Combiner, Family, Network, TabularCpd, VarId, Variable};
use crate::semantics::{decompose_for_ordering, expand_to_cpd};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub enum ExpansionStyle {
    #[default]
    Collapsed,
    ExplicitEpsilon,
    TemporalChain,
}

/// How to expand one family: `ordering` permutes the family's link indices.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PlanEntry {
    pub effect: VarId,
    pub ordering: Vec<usize>,
    pub style: ExpansionStyle,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct ExpansionPlan {
    pub entries: Vec<PlanEntry>,
}

impl ExpansionPlan {
    pub fn new() -> Self {
        ExpansionPlan::default()
    }

    pub fn with(mut self, effect: VarId, ordering: Vec<usize>, style: ExpansionStyle) -> Self {
        self.entries.push(PlanEntry {
            effect,
            ordering,
            style,
        });
        self
    }

    /// Every CI family of `network`, in link declaration order.
    pub fn declaration_order(network: &Network, style: ExpansionStyle) -> Self {
        let entries = network
            .families
            .iter()
            .filter_map(|f| match f {
                Family::Ci(ci) => Some(PlanEntry {
                    effect: ci.effect,
                    ordering: (0..ci.links.len()).collect(),
                    style,
                }),
                Family::Table(_) => None,
            })
            .collect();
        ExpansionPlan { entries }
    }
}

/// Applies every plan entry in turn. Families not named in the plan stay as
/// causal-independence families.
pub fn transform_network(network: &Network, plan: &ExpansionPlan) -> Result<Network> {
    let mut out = network.clone();
    for entry in &plan.entries {
        out = expand_family(&out, entry)?;
    }
    Ok(out)
}

/// Replaces the family of `entry.effect` with its chain expansion.
pub fn expand_family(network: &Network, entry: &PlanEntry) -> Result<Network> {
    network.check_id(entry.effect)?;
    let family = network.ci_family(entry.effect)?;
    let effect_name = String::from(network.name(entry.effect));
    let n = family.links.len();
    if !crate::semantics::is_permutation(&entry.ordering, n) {
        return Err(Error::InvalidOrdering {
            effect: effect_name,
            links: n,
        });
    }
    let prefix = format!("{effect_name}.__");
    if let Some(v) = network
        .variables
        .iter()
        .find(|v| v.name.starts_with(&prefix))
    {
        return Err(Error::NameCollision(v.name.clone()));
    }

    let mut builder = Builder {
        variables: network.variables.clone(),
        families: Vec::new(),
    };
    if n == 0 {
        builder
            .families
            .push(Family::Table(expand_to_cpd(network, family)?));
    } else {
        let chain = Chain::build(network, family, &entry.ordering)?;
        builder.expand(network, family, &entry.ordering, entry.style, &chain);
    }

    let mut families: Vec<Family> = network
        .families
        .iter()
        .filter(|f| f.child() != entry.effect)
        .cloned()
        .collect();
    families.extend(builder.families);
    Ok(Network {
        variables: builder.variables,
        families,
    })
}

/// The deterministic skeleton of a chain, independent of style.
struct Chain {
    /// Distribution of the chain seed when a leak is present.
    leak_prior: Option<Vec<f64>>,
    /// Map from the first summary to `e_1` when there is no leak.
    first: Vec<usize>,
    /// Stage functions `(summary, previous) -> next`, one per stage that has
    /// a predecessor.
    steps: Vec<BinaryTable>,
}

impl Chain {
    fn build(network: &Network, family: &CiFamily, ordering: &[usize]) -> Result<Self> {
        let k = network.cardinality(family.effect);
        let n = family.links.len();
        match &family.combiner {
            Combiner::Table(table) => {
                if table.arity() != family.arity() {
                    return Err(Error::ArityMismatch {
                        expected: family.arity(),
                        found: table.arity(),
                    });
                }
                if table.states() != k || !table.is_well_formed() {
                    return Err(Error::CombinerDomain {
                        combiner: family.combiner.name(),
                        states: k,
                    });
                }
                let full: Vec<usize> = match family.leak {
                    Some(_) => core::iter::once(0)
                        .chain(ordering.iter().map(|i| i + 1))
                        .collect(),
                    None => ordering.to_vec(),
                };
                let d = decompose_for_ordering(table, &full, family.baseline).map_err(|_| {
                    Error::NotDecomposable {
                        effect: network.name(family.effect).into(),
                    }
                })?;
                let steps = d.steps.iter().map(|s| s.to_total()).collect();
                Ok(Chain {
                    leak_prior: family.leak.as_ref().map(|l| pushforward(l, &d.first)),
                    first: d.first,
                    steps,
                })
            }
            named => {
                let op = named.binary(k).ok_or_else(|| Error::CombinerDomain {
                    combiner: named.name(),
                    states: k,
                })?;
                let first: Vec<usize> = (0..k).map(|x| op.get(x, family.baseline)).collect();
                let stages = if family.leak.is_some() { n } else { n - 1 };
                Ok(Chain {
                    leak_prior: family.leak.as_ref().map(|l| pushforward(l, &first)),
                    first,
                    steps: vec![op; stages],
                })
            }
        }
    }

    /// Value of stage `j` given its summary and the previous value (if any).
    fn stage(&self, j: usize, summary: usize, previous: Option<usize>) -> usize {
        match (self.leak_prior.is_some(), previous) {
            (true, Some(y)) => self.steps[j].get(summary, y),
            (false, Some(y)) => self.steps[j - 1].get(summary, y),
            (_, None) => self.first[summary],
        }
    }
}

fn pushforward(dist: &[f64], map: &[usize]) -> Vec<f64> {
    let mut out = vec![0.0; map.len()];
    for (x, &p) in dist.iter().enumerate() {
        out[map[x]] += p;
    }
    // Rounding can push a merged mass a hair above one.
    out.into_iter().map(|p| p.min(1.0)).collect()
}

struct Builder {
    variables: Vec<Variable>,
    families: Vec<Family>,
}

impl Builder {
    fn add(&mut self, variable: Variable) -> VarId {
        self.variables.push(variable);
        VarId(self.variables.len() - 1)
    }

    fn card(&self, id: VarId) -> usize {
        self.variables[id.0].cardinality()
    }

    fn expand(
        &mut self,
        network: &Network,
        family: &CiFamily,
        ordering: &[usize],
        style: ExpansionStyle,
        chain: &Chain,
    ) {
        let effect = family.effect;
        let effect_var = network.variable(effect).clone();
        let name = effect_var.name.clone();
        let k = effect_var.cardinality();
        let n = ordering.len();

        let mut previous = chain.leak_prior.as_ref().map(|prior| {
            let leak = self.add(Variable::new(
                format!("{name}.__leak"),
                effect_var.states.clone(),
            ));
            self.families
                .push(Family::Table(TabularCpd::prior(leak, prior.clone())));
            leak
        });

        for (j, &link_idx) in ordering.iter().enumerate() {
            let link = &family.links[link_idx];
            let cause = link.cause;
            let cause_card = self.card(cause);
            let stage_node = if j + 1 == n {
                effect
            } else {
                self.add(Variable::new(
                    format!("{name}.__e{}", j + 1),
                    effect_var.states.clone(),
                ))
            };

            let cpd = match style {
                ExpansionStyle::TemporalChain => {
                    temporal_stage(stage_node, cause, &link.transition, previous, k, |x, y| {
                        chain.stage(j, x, y)
                    })
                }
                ExpansionStyle::Collapsed | ExpansionStyle::ExplicitEpsilon => {
                    let summary = self.add(Variable::new(
                        format!("{name}.__ep{}", j + 1),
                        effect_var.states.clone(),
                    ));
                    let summary_cpd = if style == ExpansionStyle::Collapsed {
                        TabularCpd {
                            child: summary,
                            parents: vec![cause],
                            table: link.transition.concat(),
                        }
                    } else {
                        let (prior, outcome) = mechanism_coupling(&link.transition);
                        let mechanism = self.add(Variable::new(
                            format!("{name}.__eps{}", j + 1),
                            (0..prior.len()).map(|u| format!("m{u}")),
                        ));
                        self.families
                            .push(Family::Table(TabularCpd::prior(mechanism, prior.clone())));
                        TabularCpd::deterministic(
                            summary,
                            vec![cause, mechanism],
                            &[cause_card, prior.len()],
                            k,
                            |s| outcome[s[1]][s[0]],
                        )
                    };
                    self.families.push(Family::Table(summary_cpd));
                    match previous {
                        Some(prev) => TabularCpd::deterministic(
                            stage_node,
                            vec![summary, prev],
                            &[k, k],
                            k,
                            |s| chain.stage(j, s[0], Some(s[1])),
                        ),
                        None => {
                            TabularCpd::deterministic(stage_node, vec![summary], &[k], k, |s| {
                                chain.stage(j, s[0], None)
                            })
                        }
                    }
                }
            };
            self.families.push(Family::Table(cpd));
            previous = Some(stage_node);
        }
    }
}

/// `p(e_j | c, e_{j-1}) = Σ_x p(x | c) [stage(x, e_{j-1}) = e_j]`.
fn temporal_stage(
    node: VarId,
    cause: VarId,
    transition: &[Vec<f64>],
    previous: Option<VarId>,
    k: usize,
    stage: impl Fn(usize, Option<usize>) -> usize,
) -> TabularCpd {
    let prev_states: Vec<Option<usize>> = match previous {
        Some(_) => (0..k).map(Some).collect(),
        None => vec![None],
    };
    let mut table = Vec::with_capacity(transition.len() * prev_states.len() * k);
    for row in transition {
        for &y in &prev_states {
            let mut out = vec![0.0; k];
            for (x, &p) in row.iter().enumerate() {
                out[stage(x, y)] += p;
            }
            table.extend(out.into_iter().map(|p| p.min(1.0)));
        }
    }
    let mut parents = vec![cause];
    parents.extend(previous);
    TabularCpd {
        child: node,
        parents,
        table,
    }
}

/// Couples the rows of a transition table through one shared uniform draw.
///
/// Returns the prior over mechanism states and, per mechanism state, the
/// summary value produced for each cause state. Each mechanism state is one
/// distinct outcome pattern of the quantile coupling, so every row is
/// reproduced exactly.
fn mechanism_coupling(rows: &[Vec<f64>]) -> (Vec<f64>, Vec<Vec<usize>>) {
    let cumulative: Vec<Vec<f64>> = rows
        .iter()
        .map(|row| {
            let mut acc = 0.0;
            row.iter()
                .map(|&p| {
                    acc += p;
                    acc.min(1.0)
                })
                .collect()
        })
        .collect();
    let mut cuts: Vec<f64> = cumulative
        .iter()
        .flatten()
        .copied()
        .filter(|&c| c > 0.0 && c < 1.0)
        .collect();
    cuts.push(1.0);
    cuts.sort_by(f64::total_cmp);
    cuts.dedup();

    let mut prior: Vec<f64> = Vec::new();
    let mut outcome: Vec<Vec<usize>> = Vec::new();
    let mut lo = 0.0;
    for &hi in &cuts {
        let width = hi - lo;
        if width > 0.0 {
            let mid = lo + width / 2.0;
            let pattern: Vec<usize> = rows
                .iter()
                .zip(&cumulative)
                .map(|(row, cum)| {
                    cum.iter()
                        .position(|&c| c > mid)
                        .unwrap_or_else(|| row.iter().rposition(|&p| p > 0.0).unwrap_or(0))
                })
                .collect();
            match outcome.iter().position(|o| *o == pattern) {
                Some(u) => prior[u] += width,
                None => {
                    outcome.push(pattern);
                    prior.push(width);
                }
            }
        }
        lo = hi;
    }
    (prior, outcome)
}
