//! Seeded random networks, families and combination tables.

use causalnet_core::{
    BinaryTable, CauseLink, CiFamily, Combiner, Family, FunctionTable, Network, TabularCpd, VarId,
    Variable,
};
use rand::seq::SliceRandom;
use rand::Rng;

pub fn distribution(rng: &mut impl Rng, len: usize) -> Vec<f64> {
    // Occasional exact zeros exercise the support handling.
    let raw: Vec<f64> = (0..len)
        .map(|_| {
            if rng.random_bool(0.1) {
                0.0
            } else {
                rng.random::<f64>() + 0.01
            }
        })
        .collect();
    let total: f64 = raw.iter().sum();
    if total == 0.0 {
        let mut out = vec![0.0; len];
        out[rng.random_range(0..len)] = 1.0;
        return out;
    }
    raw.into_iter().map(|p| p / total).collect()
}

/// A commutative, associative table with `identity` as its identity: a
/// relabelled max, saturating sum or cyclic sum.
pub fn commutative_monoid(rng: &mut impl Rng, k: usize, identity: usize) -> BinaryTable {
    let mut labels: Vec<usize> = (0..k).filter(|&s| s != identity).collect();
    labels.shuffle(rng);
    labels.insert(0, identity);
    // labels[v] is the state playing the role of value v.
    let mut value = vec![0; k];
    for (v, &s) in labels.iter().enumerate() {
        value[s] = v;
    }
    let kind = rng.random_range(0..3);
    BinaryTable::from_fn(k, |x, y| {
        let (a, b) = (value[x], value[y]);
        labels[match kind {
            0 => a.max(b),
            1 => (a + b).min(k - 1),
            _ => (a + b) % k,
        }]
    })
}

/// Random family whose combiner is commutative and associative with the
/// baseline as identity. Causes get priors; when `shared_parent` is set, a
/// root variable feeds every cause so the network has undirected cycles.
pub fn class5_network(
    rng: &mut impl Rng,
    max_causes: usize,
    max_states: usize,
    leak: bool,
    shared_parent: bool,
) -> Network {
    let n = rng.random_range(1..=max_causes);
    let k = rng.random_range(2..=max_states);
    let mut net = Network::new();
    let root = shared_parent.then(|| net.add_variable(Variable::with_cardinality("r", 2)));
    let causes: Vec<VarId> = (1..=n)
        .map(|i| {
            let card = rng.random_range(2..=3);
            net.add_variable(Variable::with_cardinality(format!("c{i}"), card))
        })
        .collect();
    let effect = net.add_variable(Variable::with_cardinality("e", k));
    if let Some(r) = root {
        net.add_family(Family::Table(TabularCpd::prior(r, distribution(rng, 2))));
    }
    for &c in &causes {
        let card = net.cardinality(c);
        let cpd = match root {
            Some(r) => TabularCpd {
                child: c,
                parents: vec![r],
                table: (0..2).flat_map(|_| distribution(rng, card)).collect(),
            },
            None => TabularCpd::prior(c, distribution(rng, card)),
        };
        net.add_family(Family::Table(cpd));
    }
    let (combiner, baseline) = match (k, rng.random_range(0..5)) {
        (2, 0) => (Combiner::Or, 0),
        (2, 1) => (Combiner::Xor, 0),
        (_, 2) => (Combiner::Max, 0),
        (_, 3) => (Combiner::SaturatingSum, 0),
        _ => {
            let e0 = rng.random_range(0..k);
            (Combiner::Binary(commutative_monoid(rng, k, e0)), e0)
        }
    };
    let links = causes
        .iter()
        .map(|&cause| {
            let card = net.cardinality(cause);
            let distinguished = rng.random_range(0..card);
            let transition = (0..card)
                .map(|s| {
                    if s == distinguished {
                        let mut row = vec![0.0; k];
                        row[baseline] = 1.0;
                        row
                    } else {
                        distribution(rng, k)
                    }
                })
                .collect();
            CauseLink {
                cause,
                distinguished,
                transition,
            }
        })
        .collect();
    net.add_family(Family::Ci(CiFamily {
        effect,
        baseline,
        links,
        combiner,
        leak: leak.then(|| distribution(rng, k)),
    }));
    net
}

/// Same family with the named combiner replaced by its full table.
pub fn tabulate_combiner(net: &Network) -> Network {
    let mut out = net.clone();
    for family in &mut out.families {
        if let Family::Ci(ci) = family {
            let f = causalnet_core::semantics::family_function(net, ci).unwrap();
            ci.combiner = Combiner::Table(f);
        }
    }
    out
}

/// Random observations of some of the first `limit` variables.
pub fn evidence(rng: &mut impl Rng, net: &Network, limit: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for v in 0..limit {
        if rng.random_bool(0.3) {
            out.push((v, rng.random_range(0..net.cardinality(VarId(v)))));
        }
    }
    out
}

/// Mixture of combination tables covering every class: uniform tables,
/// folds of arbitrary binary tables, folds of commutative monoids, and
/// tables where the baseline is neutral for single arguments.
pub fn function_table(
    rng: &mut impl Rng,
    max_arity: usize,
    max_states: usize,
) -> (FunctionTable, usize) {
    let n = rng.random_range(1..=max_arity);
    let k = rng.random_range(2..=max_states);
    let e0 = rng.random_range(0..k);
    let f = match rng.random_range(0..4) {
        0 => {
            let values = (0..k.pow(n as u32))
                .map(|_| rng.random_range(0..k))
                .collect();
            FunctionTable::from_values(k, n, values)
        }
        1 => {
            let op = BinaryTable::from_fn(k, |_, _| rng.random_range(0..k));
            FunctionTable::from_fold(&op, n, e0)
        }
        2 => FunctionTable::from_fold(&commutative_monoid(rng, k, e0), n, e0),
        _ => {
            let mut random = |_: &[usize]| rng.random_range(0..k);
            FunctionTable::from_fn(k, n, |a| {
                let active: Vec<usize> = a.iter().copied().filter(|&x| x != e0).collect();
                match active.len() {
                    0 => e0,
                    1 => active[0],
                    _ => random(a),
                }
            })
        }
    };
    (f, e0)
}
