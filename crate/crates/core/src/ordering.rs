//! Sampling and greedy search over expansion orderings.

use alloc::vec;
use alloc::vec::Vec;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::inference::{clique_stats, CliqueReport, Eliminator, Heuristic, UndirectedGraph};
use crate::model::{CiFamily, Family, Network, VarId};
use crate::transform::{transform_network, ExpansionPlan, ExpansionStyle, PlanEntry};

/// Number of histogram buckets in a [`SampleSummary`].
pub const HISTOGRAM_BUCKETS: usize = 20;

/// A plan together with the clique statistics of the network it produces.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrderingSample {
    pub plan: ExpansionPlan,
    pub report: CliqueReport,
}

impl OrderingSample {
    /// Transforms `network` under `plan` and measures it with min-fill.
    pub fn measure(network: &Network, plan: ExpansionPlan) -> Result<Self> {
        let transformed = transform_network(network, &plan)?;
        let report = clique_stats(&transformed, Heuristic::MinFill);
        Ok(OrderingSample { plan, report })
    }

    fn rank(&self) -> (u64, u64, &ExpansionPlan) {
        (self.report.total, self.report.largest, &self.plan)
    }
}

/// Half-open `[lower, upper)` range of totals; the last bucket is closed.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HistogramBucket {
    pub lower: f64,
    pub upper: f64,
    pub count: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SampleSummary {
    pub count: usize,
    pub min_total: u64,
    pub max_total: u64,
    pub mean_total: f64,
    pub histogram: Vec<HistogramBucket>,
    /// Smallest by (total, largest, plan).
    pub best: OrderingSample,
    /// Every sample in draw order.
    pub samples: Vec<OrderingSample>,
}

fn ci_families(network: &Network) -> Vec<&CiFamily> {
    network
        .families
        .iter()
        .filter_map(|f| match f {
            Family::Ci(ci) => Some(ci),
            Family::Table(_) => None,
        })
        .collect()
}

/// Draws `k` plans, each a uniformly random permutation per family in
/// collapsed style, and summarises their clique totals.
pub fn sample_orderings(network: &Network, k: usize, seed: u64) -> Result<SampleSummary> {
    let families = ci_families(network);
    if families.is_empty() {
        return Err(Error::NoCiFamilies);
    }
    if k == 0 {
        return Err(Error::InvalidArgument("sample count must be positive"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut samples = Vec::with_capacity(k);
    for _ in 0..k {
        let entries = families
            .iter()
            .map(|ci| {
                let mut ordering: Vec<usize> = (0..ci.links.len()).collect();
                ordering.shuffle(&mut rng);
                PlanEntry {
                    effect: ci.effect,
                    ordering,
                    style: ExpansionStyle::Collapsed,
                }
            })
            .collect();
        samples.push(OrderingSample::measure(network, ExpansionPlan { entries })?);
    }
    Ok(summarize(samples))
}

fn summarize(samples: Vec<OrderingSample>) -> SampleSummary {
    let totals: Vec<u64> = samples.iter().map(|s| s.report.total).collect();
    let min_total = *totals.iter().min().expect("non-empty");
    let max_total = *totals.iter().max().expect("non-empty");
    let mean_total = totals.iter().map(|&t| t as f64).sum::<f64>() / totals.len() as f64;
    let histogram = histogram(&totals, min_total, max_total);
    let best = samples
        .iter()
        .min_by(|a, b| a.rank().cmp(&b.rank()))
        .expect("non-empty")
        .clone();
    SampleSummary {
        count: samples.len(),
        min_total,
        max_total,
        mean_total,
        histogram,
        best,
        samples,
    }
}

fn histogram(totals: &[u64], min: u64, max: u64) -> Vec<HistogramBucket> {
    if min == max {
        return vec![HistogramBucket {
            lower: min as f64,
            upper: max as f64,
            count: totals.len(),
        }];
    }
    let (lo, hi) = (min as f64, max as f64);
    let width = (hi - lo) / HISTOGRAM_BUCKETS as f64;
    let mut buckets: Vec<HistogramBucket> = (0..HISTOGRAM_BUCKETS)
        .map(|b| HistogramBucket {
            lower: lo + width * b as f64,
            upper: if b + 1 == HISTOGRAM_BUCKETS {
                hi
            } else {
                lo + width * (b + 1) as f64
            },
            count: 0,
        })
        .collect();
    for &t in totals {
        let b = (((t - min) as f64 / (hi - lo)) * HISTOGRAM_BUCKETS as f64) as usize;
        buckets[b.min(HISTOGRAM_BUCKETS - 1)].count += 1;
    }
    buckets
}

/// Interaction graph used during the search: tabular families are married as
/// usual, a family that is still undecided contributes only its cause–effect
/// edges.
fn search_graph(network: &Network) -> UndirectedGraph {
    let mut g = UndirectedGraph::new(network.len());
    for family in &network.families {
        match family {
            Family::Ci(ci) => {
                for c in ci.causes() {
                    g.add_edge(c.0, ci.effect.0);
                }
            }
            Family::Table(cpd) => {
                for (i, p) in cpd.parents.iter().enumerate() {
                    g.add_edge(p.0, cpd.child.0);
                    for q in &cpd.parents[i + 1..] {
                        g.add_edge(p.0, q.0);
                    }
                }
            }
        }
    }
    g
}

/// Min-fill elimination that decides each family's ordering the first time
/// it eliminates the family's effect or one of its causes. Causes already
/// eliminated go first in elimination order, then the rest by ascending
/// current degree, ties by index. The remaining graph is then rebuilt with
/// the family expanded and elimination resumes.
fn greedy_pass(network: &Network, priority: &[usize]) -> Result<ExpansionPlan> {
    let families = ci_families(network);
    let mut decided: Vec<Option<Vec<usize>>> = vec![None; families.len()];
    let plan_of = |decided: &[Option<Vec<usize>>]| ExpansionPlan {
        entries: families
            .iter()
            .zip(decided)
            .filter_map(|(ci, d)| {
                d.as_ref().map(|ordering| PlanEntry {
                    effect: ci.effect,
                    ordering: ordering.clone(),
                    style: ExpansionStyle::Collapsed,
                })
            })
            .collect(),
    };

    let mut history: Vec<usize> = Vec::new();
    let mut elim = Eliminator::new(search_graph(network));
    let mut current_len = network.len();
    loop {
        let rank = |v: usize| priority.get(v).copied().unwrap_or(v);
        let Some(v) = (0..current_len)
            .filter(|&v| !elim.eliminated[v])
            .min_by_key(|&v| (elim.fill_in(v), rank(v), v))
        else {
            break;
        };
        let touched: Vec<usize> = families
            .iter()
            .enumerate()
            .filter(|(i, ci)| {
                decided[*i].is_none() && (ci.effect.0 == v || ci.causes().any(|c| c.0 == v))
            })
            .map(|(i, _)| i)
            .collect();
        if touched.is_empty() {
            elim.eliminate(v);
            history.push(v);
            continue;
        }
        for i in touched {
            let ci = families[i];
            let mut gone: Vec<(usize, usize)> = Vec::new();
            let mut live: Vec<(usize, usize, usize)> = Vec::new();
            for (link, cause) in ci.causes().enumerate() {
                let c = cause.0;
                if let Some(step) = history.iter().position(|&h| h == c) {
                    gone.push((step, link));
                } else if c == v {
                    gone.push((history.len(), link));
                } else {
                    live.push((elim.live_degree(c), c, link));
                }
            }
            gone.sort_unstable();
            live.sort_unstable();
            decided[i] = Some(
                gone.into_iter()
                    .map(|(_, l)| l)
                    .chain(live.into_iter().map(|(_, _, l)| l))
                    .collect(),
            );
        }
        let partial = transform_network(network, &plan_of(&decided))?;
        current_len = partial.len();
        elim = Eliminator::new(search_graph(&partial));
        for &h in &history {
            elim.eliminate(h);
        }
    }
    Ok(plan_of(&decided))
}

/// Greedy clique-aware choice of orderings. Restart 0 breaks min-fill ties
/// by variable index, later restarts by a seeded random priority. Returns
/// the best plan by (total, largest, plan) and its clique report.
pub fn greedy_search(
    network: &Network,
    restarts: usize,
    seed: u64,
) -> Result<(ExpansionPlan, CliqueReport)> {
    if ci_families(network).is_empty() {
        return Err(Error::NoCiFamilies);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut best: Option<OrderingSample> = None;
    for r in 0..restarts.max(1) {
        let mut priority: Vec<usize> = (0..network.len()).collect();
        if r > 0 {
            priority.shuffle(&mut rng);
        }
        let plan = greedy_pass(network, &priority)?;
        let sample = OrderingSample::measure(network, plan)?;
        if best.as_ref().is_none_or(|b| sample.rank() < b.rank()) {
            best = Some(sample);
        }
    }
    let best = best.expect("at least one pass");
    Ok((best.plan, best.report))
}

/// Identifiers of the CI effects in the order their plan entries appear.
pub fn plan_effects(plan: &ExpansionPlan) -> Vec<VarId> {
    plan.entries.iter().map(|e| e.effect).collect()
}
