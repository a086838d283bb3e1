//! Brute-force joint enumeration.

use causalnet_core::{CiFamily, Combiner, Family, Network};

fn combine(combiner: &Combiner, k: usize, x: usize, acc: usize) -> usize {
    match combiner {
        Combiner::Or => x | acc,
        Combiner::Xor => x ^ acc,
        Combiner::Max => x.max(acc),
        Combiner::SaturatingSum => (x + acc).min(k - 1),
        Combiner::Binary(t) => t.values()[x * k + acc],
        Combiner::Table(_) => unreachable!("tables are not folded"),
    }
}

/// `p(effect | causes)` computed by summing over every assignment of the
/// cause summaries (and the leak).
pub fn ci_row(net: &Network, ci: &CiFamily, cause_states: &[usize]) -> Vec<f64> {
    let k = net.cardinality(ci.effect);
    let mut factors: Vec<Vec<f64>> = Vec::new();
    if let Some(leak) = &ci.leak {
        factors.push(leak.clone());
    }
    for (link, &c) in ci.links.iter().zip(cause_states) {
        factors.push(link.transition[c].clone());
    }
    let mut out = vec![0.0; k];
    let mut args = vec![0usize; factors.len()];
    loop {
        let p: f64 = args.iter().zip(&factors).map(|(&a, f)| f[a]).product();
        if p > 0.0 {
            let e = match &ci.combiner {
                Combiner::Table(t) => {
                    let mut idx = 0;
                    for &a in &args {
                        idx = idx * k + a;
                    }
                    t.values()[idx]
                }
                named => args
                    .iter()
                    .fold(ci.baseline, |acc, &a| combine(named, k, a, acc)),
            };
            out[e] += p;
        }
        let mut i = args.len();
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            args[i] += 1;
            if args[i] < k {
                break;
            }
            args[i] = 0;
        }
    }
}

fn conditional(net: &Network, family: &Family, assignment: &[usize]) -> f64 {
    match family {
        Family::Table(cpd) => {
            let mut idx = 0;
            for p in &cpd.parents {
                idx = idx * net.cardinality(*p) + assignment[p.0];
            }
            cpd.table[idx * net.cardinality(cpd.child) + assignment[cpd.child.0]]
        }
        Family::Ci(ci) => {
            let states: Vec<usize> = ci.causes().map(|c| assignment[c.0]).collect();
            ci_row(net, ci, &states)[assignment[ci.effect.0]]
        }
    }
}

/// Every single-variable posterior given `evidence` as `(variable, state)`
/// pairs, or `None` when the evidence has probability zero.
pub fn marginals(net: &Network, evidence: &[(usize, usize)]) -> Option<Vec<Vec<f64>>> {
    let cards = net.cardinalities();
    let mut out: Vec<Vec<f64>> = cards.iter().map(|&c| vec![0.0; c]).collect();
    let mut a = vec![0usize; cards.len()];
    let mut z = 0.0;
    'outer: loop {
        if evidence.iter().all(|&(v, s)| a[v] == s) {
            let p: f64 = net
                .families
                .iter()
                .map(|f| conditional(net, f, &a))
                .product();
            z += p;
            for (v, &s) in a.iter().enumerate() {
                out[v][s] += p;
            }
        }
        let mut i = a.len();
        loop {
            if i == 0 {
                break 'outer;
            }
            i -= 1;
            a[i] += 1;
            if a[i] < cards[i] {
                break;
            }
            a[i] = 0;
        }
    }
    if z <= 1e-300 {
        return None;
    }
    for m in &mut out {
        for p in m.iter_mut() {
            *p /= z;
        }
    }
    Some(out)
}

pub fn joint_size(net: &Network) -> usize {
    net.cardinalities().iter().product()
}
