//! Reference networks.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::index::volume;
use crate::model::{CauseLink, CiFamily, Combiner, Family, Network, TabularCpd, VarId, Variable};

/// Seed used by [`bn2`] when the caller has no preference.
pub const DEFAULT_SEED: u64 = 1994;

fn random_distribution(rng: &mut impl Rng, len: usize) -> Vec<f64> {
    let raw: Vec<f64> = (0..len).map(|_| rng.random::<f64>() + 0.05).collect();
    let total: f64 = raw.iter().sum();
    raw.into_iter().map(|p| p / total).collect()
}

fn state_variable(name: &str, states: usize) -> Variable {
    if states == 2 {
        Variable::binary(name)
    } else {
        Variable::with_cardinality(name, states)
    }
}

/// Transition table with state 0 distinguished and mapped to baseline 0.
fn random_transition(
    rng: &mut impl Rng,
    cause_states: usize,
    effect_states: usize,
) -> Vec<Vec<f64>> {
    (0..cause_states)
        .map(|c| {
            if c == 0 {
                let mut row = vec![0.0; effect_states];
                row[0] = 1.0;
                row
            } else {
                random_distribution(rng, effect_states)
            }
        })
        .collect()
}

/// Ten causes and four effects; effect `e_j` has causes `c_{2j-1}`, `c_{2j}`,
/// `c9` and `c10`, so two causes are shared by every effect. Binary networks
/// use noisy-or, larger state spaces noisy-max.
pub fn bn2(states: usize, seed: u64) -> Network {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut net = Network::new();
    let causes: Vec<VarId> = (1..=10)
        .map(|i| net.add_variable(state_variable(&format!("c{i}"), states)))
        .collect();
    let effects: Vec<VarId> = (1..=4)
        .map(|j| net.add_variable(state_variable(&format!("e{j}"), states)))
        .collect();
    for &c in &causes {
        let prior = random_distribution(&mut rng, states);
        net.add_family(Family::Table(TabularCpd::prior(c, prior)));
    }
    let combiner = if states == 2 {
        Combiner::Or
    } else {
        Combiner::Max
    };
    for (j, &e) in effects.iter().enumerate() {
        let linked = [causes[2 * j], causes[2 * j + 1], causes[8], causes[9]];
        let links = linked
            .iter()
            .map(|&cause| CauseLink {
                cause,
                distinguished: 0,
                transition: random_transition(&mut rng, states, states),
            })
            .collect();
        net.add_family(Family::Ci(CiFamily {
            effect: e,
            baseline: 0,
            links,
            combiner: combiner.clone(),
            leak: None,
        }));
    }
    net
}

/// Binary noisy-or over causes `c1..cn` with `p(summary = true | c_i = true)`
/// given by `strengths`; every cause has a uniform prior.
pub fn noisy_or(strengths: &[f64], leak: Option<Vec<f64>>) -> Network {
    let mut net = Network::new();
    let causes: Vec<VarId> = (1..=strengths.len())
        .map(|i| net.add_variable(Variable::binary(format!("c{i}"))))
        .collect();
    let effect = net.add_variable(Variable::binary("e"));
    for &c in &causes {
        net.add_family(Family::Table(TabularCpd::prior(c, vec![0.5, 0.5])));
    }
    let links = causes
        .iter()
        .zip(strengths)
        .map(|(&cause, &q)| CauseLink {
            cause,
            distinguished: 0,
            transition: vec![vec![1.0, 0.0], vec![1.0 - q, q]],
        })
        .collect();
    net.add_family(Family::Ci(CiFamily {
        effect,
        baseline: 0,
        links,
        combiner: Combiner::Or,
        leak,
    }));
    net
}

/// Three binary causes shared by two noisy-or effects.
pub fn fig6() -> Network {
    let mut net = Network::new();
    let causes: Vec<VarId> = (1..=3)
        .map(|i| net.add_variable(Variable::binary(format!("c{i}"))))
        .collect();
    let effects: Vec<VarId> = (1..=2)
        .map(|j| net.add_variable(Variable::binary(format!("e{j}"))))
        .collect();
    let priors = [0.3, 0.5, 0.2];
    for (&c, &p) in causes.iter().zip(&priors) {
        net.add_family(Family::Table(TabularCpd::prior(c, vec![1.0 - p, p])));
    }
    let strengths = [[0.8, 0.6, 0.7], [0.5, 0.9, 0.4]];
    for (&e, qs) in effects.iter().zip(&strengths) {
        let links = causes
            .iter()
            .zip(qs)
            .map(|(&cause, &q)| CauseLink {
                cause,
                distinguished: 0,
                transition: vec![vec![1.0, 0.0], vec![1.0 - q, q]],
            })
            .collect();
        net.add_family(Family::Ci(CiFamily {
            effect: e,
            baseline: 0,
            links,
            combiner: Combiner::Or,
            leak: None,
        }));
    }
    net
}

/// Binary Markov chain `x1 -> x2 -> … -> xn`.
pub fn chain(n: usize) -> Network {
    let mut net = Network::new();
    let mut previous = None;
    for i in 1..=n {
        let v = net.add_variable(Variable::binary(format!("x{i}")));
        let family = match previous {
            None => TabularCpd::prior(v, vec![0.6, 0.4]),
            Some(p) => TabularCpd {
                child: v,
                parents: vec![p],
                table: vec![0.9, 0.1, 0.2, 0.8],
            },
        };
        net.add_family(Family::Table(family));
        previous = Some(v);
    }
    net
}

/// Random tabular network: `x_j` gets each earlier `x_i` as a parent with
/// probability `edge_probability`.
pub fn random_network(n: usize, edge_probability: f64, states: usize, seed: u64) -> Network {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut net = Network::new();
    let ids: Vec<VarId> = (1..=n)
        .map(|i| net.add_variable(state_variable(&format!("x{i}"), states)))
        .collect();
    for (j, &child) in ids.iter().enumerate() {
        let parents: Vec<VarId> = ids[..j]
            .iter()
            .copied()
            .filter(|_| rng.random_bool(edge_probability.clamp(0.0, 1.0)))
            .collect();
        let rows = volume(&vec![states; parents.len()]);
        let table = (0..rows)
            .flat_map(|_| random_distribution(&mut rng, states))
            .collect();
        net.add_family(Family::Table(TabularCpd {
            child,
            parents,
            table,
        }));
    }
    net
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::validate;

    #[test]
    fn generated_networks_validate() {
        for net in [
            bn2(2, DEFAULT_SEED),
            bn2(5, DEFAULT_SEED),
            noisy_or(&[0.8, 0.6], Some(vec![0.9, 0.1])),
            fig6(),
            chain(5),
            random_network(8, 0.4, 3, 7),
        ] {
            let report = validate(&net);
            assert!(report.is_ok(), "{:?}", report.violations);
        }
    }

    #[test]
    fn bn2_wiring() {
        let net = bn2(2, 0);
        assert_eq!(net.len(), 14);
        let e3 = net.find("e3").unwrap();
        let names: Vec<&str> = net
            .family_of(e3)
            .unwrap()
            .parents()
            .into_iter()
            .map(|p| net.name(p))
            .collect();
        assert_eq!(names, ["c5", "c6", "c9", "c10"]);
    }
}
