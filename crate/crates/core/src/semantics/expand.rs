use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::index::{volume, Odometer};
use crate::model::{BinaryTable, CiFamily, Combiner, Family, FunctionTable, Network, TabularCpd};

/// How the argument tuple is turned into an effect state.
enum Evaluator<'a> {
    Fold { op: BinaryTable, seed: usize },
    Table(&'a FunctionTable),
}

impl Evaluator<'_> {
    fn eval(&self, args: &[usize]) -> usize {
        match self {
            Evaluator::Fold { op, seed } => args.iter().fold(*seed, |acc, &a| op.get(a, acc)),
            Evaluator::Table(t) => t.get(args),
        }
    }
}

/// Full conditional table `p(effect | causes)` of a causal-independence family.
///
/// The parents of the result are the family's causes in link order. Each row
/// is computed by enumerating every joint assignment of the cause summaries
/// (and the leak, which comes first), multiplying their probabilities and
/// accumulating into the combined effect state. Named binary combiners are
/// left-folded over the arguments seeded with the baseline.
pub fn expand_to_cpd(network: &Network, family: &CiFamily) -> Result<TabularCpd> {
    network.check_id(family.effect)?;
    for link in &family.links {
        network.check_id(link.cause)?;
    }
    let k = network.cardinality(family.effect);
    let evaluator = match &family.combiner {
        Combiner::Table(t) => {
            if t.arity() != family.arity() {
                return Err(Error::ArityMismatch {
                    expected: family.arity(),
                    found: t.arity(),
                });
            }
            if t.states() != k || !t.is_well_formed() {
                return Err(Error::CombinerDomain {
                    combiner: family.combiner.name(),
                    states: k,
                });
            }
            Evaluator::Table(t)
        }
        named => Evaluator::Fold {
            op: named.binary(k).ok_or_else(|| Error::CombinerDomain {
                combiner: named.name(),
                states: k,
            })?,
            seed: family.baseline,
        },
    };

    let cause_cards: Vec<usize> = family.causes().map(|c| network.cardinality(c)).collect();
    let mut table = vec![0.0; volume(&cause_cards) * k];
    let mut combos = Odometer::new(&cause_cards);
    let mut row = 0;
    while let Some(cause_states) = combos.current() {
        let mut dists: Vec<&[f64]> = Vec::with_capacity(family.arity());
        if let Some(leak) = &family.leak {
            dists.push(leak);
        }
        for (link, &c) in family.links.iter().zip(cause_states) {
            dists.push(&link.transition[c]);
        }
        accumulate_row(&dists, &evaluator, &mut table[row * k..(row + 1) * k]);
        row += 1;
        combos.advance();
    }

    Ok(TabularCpd {
        child: family.effect,
        parents: family.causes().collect(),
        table,
    })
}

/// Sums `∏ p_i(a_i)` into `out[f(a)]` over all argument tuples `a` in the
/// joint support of `dists`.
fn accumulate_row(dists: &[&[f64]], evaluator: &Evaluator<'_>, out: &mut [f64]) {
    let supports: Vec<Vec<usize>> = dists
        .iter()
        .map(|d| (0..d.len()).filter(|&s| d[s] > 0.0).collect())
        .collect();
    let sizes: Vec<usize> = supports.iter().map(Vec::len).collect();
    let mut args = vec![0; dists.len()];
    let mut odo = Odometer::new(&sizes);
    while let Some(pick) = odo.current() {
        let mut p = 1.0;
        for (i, &j) in pick.iter().enumerate() {
            args[i] = supports[i][j];
            p *= dists[i][args[i]];
        }
        out[evaluator.eval(&args)] += p;
        odo.advance();
    }
    for p in out.iter_mut() {
        *p = p.min(1.0);
    }
}

/// Copy of `network` with every causal-independence family replaced by its
/// expanded table.
pub fn expand_network(network: &Network) -> Result<Network> {
    let families = network
        .families
        .iter()
        .map(|f| match f {
            Family::Table(_) => Ok(f.clone()),
            Family::Ci(ci) => expand_to_cpd(network, ci).map(Family::Table),
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Network {
        variables: network.variables.clone(),
        families,
    })
}
