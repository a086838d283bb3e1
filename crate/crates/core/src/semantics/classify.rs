use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::algebra::check_commutative_associative;
use super::decompose::{decompose_for_ordering, Decomposition};
use crate::error::{Error, Result};
use crate::model::{BinaryTable, CiFamily, Combiner, Family, FunctionTable, Network};

/// Largest argument count [`classify`] accepts.
pub const MAX_CLASSIFY_ARITY: usize = 12;
/// Up to this arity every ordering is tried; beyond it orderings are sampled.
const FULL_ENUMERATION_ARITY: usize = 8;
const SAMPLED_ORDERINGS: usize = 1000;
const ORDERING_SEED: u64 = 0x5eed_0c1a_55e5;
/// Node budget for the search of a shared binary combiner.
const COMPLETION_BUDGET: usize = 200_000;

/// The interaction hierarchy, from the most general to the most specific.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum InteractionClass {
    /// 1: an unrestricted conditional table.
    GeneralTable,
    /// 2: independent cause summaries merged by an arbitrary function.
    CausalInputsOnly,
    /// 3: a nested decomposition exists for at least one ordering; the
    /// witness is for the lexicographically first such ordering.
    SinglyDecomposable { witness: Decomposition },
    /// 4: a nested decomposition exists for every ordering tried. `sampled`
    /// is set when orderings were sampled rather than enumerated.
    FullyDecomposable {
        witness: Decomposition,
        sampled: bool,
    },
    /// 5: every ordering decomposes through one shared commutative and
    /// associative binary combiner.
    FullyDecomposableEqual {
        combiner: BinaryTable,
        sampled: bool,
    },
    /// 6: continuous linear-Gaussian interactions; never produced by this engine.
    ContinuousLinear,
}

impl InteractionClass {
    pub fn number(&self) -> u8 {
        match self {
            InteractionClass::GeneralTable => 1,
            InteractionClass::CausalInputsOnly => 2,
            InteractionClass::SinglyDecomposable { .. } => 3,
            InteractionClass::FullyDecomposable { .. } => 4,
            InteractionClass::FullyDecomposableEqual { .. } => 5,
            InteractionClass::ContinuousLinear => 6,
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            InteractionClass::GeneralTable => "general multiple-cause interaction",
            InteractionClass::CausalInputsOnly => "independence of causal inputs",
            InteractionClass::SinglyDecomposable { .. } => "singly decomposable",
            InteractionClass::FullyDecomposable { .. } => "fully decomposable",
            InteractionClass::FullyDecomposableEqual { .. } => {
                "fully decomposable, equal functions"
            }
            InteractionClass::ContinuousLinear => "continuous linear-Gaussian (unsupported)",
        }
    }
}

/// Places a combination function in the interaction hierarchy.
///
/// Orderings are tried in lexicographic order (all of them up to arity 8,
/// otherwise the declaration order plus 1000 seeded samples). Class 5 requires
/// that all stage functions `f_i` for `i >= 2`, over all orderings, agree with
/// a single commutative and associative binary table wherever they are
/// defined.
pub fn classify(f: &FunctionTable, baseline: usize) -> Result<InteractionClass> {
    let n = f.arity();
    let k = f.states();
    if n == 0 {
        return Err(Error::InvalidDimensions);
    }
    if n > MAX_CLASSIFY_ARITY {
        return Err(Error::TooManyArguments(n));
    }
    if baseline >= k {
        return Err(Error::InvalidState {
            variable: String::from("effect"),
            state: baseline,
        });
    }
    if !f.is_well_formed() {
        return Err(Error::CombinerDomain {
            combiner: String::from("table"),
            states: k,
        });
    }

    let sampled = n > FULL_ENUMERATION_ARITY;
    let orderings = candidate_orderings(n);

    let mut witness: Option<Decomposition> = None;
    let mut failed = false;
    let mut shared: Vec<Option<usize>> = vec![None; k * k];
    let mut conflict = false;
    for ordering in orderings {
        match decompose_for_ordering(f, &ordering, baseline) {
            Ok(d) => {
                if !conflict {
                    conflict = !merge_steps(&mut shared, &d);
                }
                witness.get_or_insert(d);
            }
            Err(_) => failed = true,
        }
        if failed && witness.is_some() {
            break;
        }
    }

    Ok(match (witness, failed) {
        (None, _) => InteractionClass::CausalInputsOnly,
        (Some(witness), true) => InteractionClass::SinglyDecomposable { witness },
        (Some(witness), false) => {
            let combiner = if conflict {
                None
            } else {
                complete_shared_combiner(&shared, k, baseline)
            };
            match combiner {
                Some(combiner) => InteractionClass::FullyDecomposableEqual { combiner, sampled },
                None => InteractionClass::FullyDecomposable { witness, sampled },
            }
        }
    })
}

/// Classifies a network family: tables are class 1, causal-independence
/// families are classified by their combination function.
pub fn classify_family(network: &Network, family: &Family) -> Result<InteractionClass> {
    match family {
        Family::Table(_) => Ok(InteractionClass::GeneralTable),
        Family::Ci(ci) => classify(&family_function(network, ci)?, ci.baseline),
    }
}

/// The combination function of a family as a full table over its arguments
/// (leak first, then links in declaration order).
pub fn family_function(network: &Network, family: &CiFamily) -> Result<FunctionTable> {
    network.check_id(family.effect)?;
    let k = network.cardinality(family.effect);
    match &family.combiner {
        Combiner::Table(t) if t.arity() != family.arity() => Err(Error::ArityMismatch {
            expected: family.arity(),
            found: t.arity(),
        }),
        Combiner::Table(t) => Ok(t.clone()),
        named => {
            let op = named.binary(k).ok_or_else(|| Error::CombinerDomain {
                combiner: named.name(),
                states: k,
            })?;
            Ok(FunctionTable::from_fold(
                &op,
                family.arity(),
                family.baseline,
            ))
        }
    }
}

fn candidate_orderings(n: usize) -> Vec<Vec<usize>> {
    let identity: Vec<usize> = (0..n).collect();
    if n <= FULL_ENUMERATION_ARITY {
        let mut out = Vec::new();
        let mut current = identity;
        loop {
            out.push(current.clone());
            if !next_permutation(&mut current) {
                break;
            }
        }
        return out;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(ORDERING_SEED);
    let mut out = Vec::with_capacity(SAMPLED_ORDERINGS + 1);
    out.push(identity.clone());
    for _ in 0..SAMPLED_ORDERINGS {
        let mut p = identity.clone();
        p.shuffle(&mut rng);
        out.push(p);
    }
    out.sort();
    out.dedup();
    out
}

/// Advances to the next permutation in lexicographic order.
pub(crate) fn next_permutation(p: &mut [usize]) -> bool {
    if p.len() < 2 {
        return false;
    }
    let mut i = p.len() - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = p.len() - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// Records the defined entries of every stage `i >= 2`; false on a clash.
fn merge_steps(shared: &mut [Option<usize>], d: &Decomposition) -> bool {
    let k = d.states();
    for step in &d.steps {
        for y in step.domain().collect::<Vec<_>>() {
            for x in 0..k {
                let v = step.get(x, y);
                let slot = &mut shared[x * k + y];
                match (*slot, v) {
                    (_, None) => {}
                    (None, Some(v)) => *slot = Some(v),
                    (Some(a), Some(b)) if a != b => return false,
                    _ => {}
                }
            }
        }
    }
    true
}

/// Finds a commutative, associative total table extending `partial`, filling
/// holes with identity values where possible.
fn complete_shared_combiner(
    partial: &[Option<usize>],
    k: usize,
    baseline: usize,
) -> Option<BinaryTable> {
    let mut table = partial.to_vec();
    for x in 0..k {
        for y in 0..k {
            match (table[x * k + y], table[y * k + x]) {
                (Some(a), Some(b)) if a != b => return None,
                (Some(a), None) => table[y * k + x] = Some(a),
                _ => {}
            }
        }
    }
    if !associative_so_far(&table, k) {
        return None;
    }
    let holes: Vec<(usize, usize)> = (0..k)
        .flat_map(|x| (x..k).map(move |y| (x, y)))
        .filter(|&(x, y)| table[x * k + y].is_none())
        .collect();
    let mut budget = COMPLETION_BUDGET;
    if fill_holes(&mut table, k, baseline, &holes, &mut budget) {
        let values: Vec<usize> = table.iter().map(|v| v.unwrap_or(0)).collect();
        let op = BinaryTable::from_values(k, values);
        let profile = check_commutative_associative(&op);
        (profile.commutative && profile.associative).then_some(op)
    } else {
        None
    }
}

fn fill_holes(
    table: &mut [Option<usize>],
    k: usize,
    baseline: usize,
    holes: &[(usize, usize)],
    budget: &mut usize,
) -> bool {
    let Some((&(x, y), rest)) = holes.split_first() else {
        return true;
    };
    let preferred = if x == baseline {
        Some(y)
    } else if y == baseline {
        Some(x)
    } else {
        None
    };
    let candidates = preferred
        .into_iter()
        .chain((0..k).filter(|&v| Some(v) != preferred));
    for v in candidates {
        if *budget == 0 {
            return false;
        }
        *budget -= 1;
        table[x * k + y] = Some(v);
        table[y * k + x] = Some(v);
        if associative_so_far(table, k) && fill_holes(table, k, baseline, rest, budget) {
            return true;
        }
    }
    table[x * k + y] = None;
    table[y * k + x] = None;
    false
}

fn associative_so_far(table: &[Option<usize>], k: usize) -> bool {
    let get = |a: usize, b: usize| table[a * k + b];
    for x in 0..k {
        for y in 0..k {
            let Some(xy) = get(x, y) else { continue };
            for z in 0..k {
                let (Some(left), Some(yz)) = (get(xy, z), get(y, z)) else {
                    continue;
                };
                if let Some(right) = get(x, yz) {
                    if left != right {
                        return false;
                    }
                }
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn exactly(count: usize, n: usize) -> FunctionTable {
        FunctionTable::from_fn(2, n, |a| usize::from(a.iter().sum::<usize>() == count))
    }

    #[test]
    fn or_is_class_five() {
        let f = FunctionTable::from_fold(&BinaryTable::or(), 3, 0);
        assert_eq!(
            classify(&f, 0).unwrap(),
            InteractionClass::FullyDecomposableEqual {
                combiner: BinaryTable::or(),
                sampled: false
            }
        );
    }

    #[test]
    fn exactly_two_is_class_two() {
        for n in [3, 4] {
            assert_eq!(
                classify(&exactly(2, n), 0).unwrap(),
                InteractionClass::CausalInputsOnly
            );
        }
    }

    #[test]
    fn exactly_one_with_binary_intermediates_is_class_two() {
        assert_eq!(
            classify(&exactly(1, 3), 0).unwrap(),
            InteractionClass::CausalInputsOnly
        );
    }

    #[test]
    fn constant_is_class_five() {
        let f = FunctionTable::from_fn(3, 3, |_| 0);
        match classify(&f, 0).unwrap() {
            InteractionClass::FullyDecomposableEqual { combiner, .. } => {
                assert_eq!(combiner, BinaryTable::constant(3, 0));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn order_dependent_is_class_three() {
        // a and not b: the first argument's anchors separate, the second's collapse.
        let f = FunctionTable::from_fn(2, 2, |a| a[0] & (1 - a[1]));
        match classify(&f, 0).unwrap() {
            InteractionClass::SinglyDecomposable { witness } => {
                assert_eq!(witness.ordering, vec![0, 1])
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn lexicographic_permutations() {
        let mut p = vec![0, 1, 2];
        let mut all = vec![p.clone()];
        while next_permutation(&mut p) {
            all.push(p.clone());
        }
        assert_eq!(all.len(), 6);
        assert_eq!(all[1], vec![0, 2, 1]);
        assert_eq!(all[5], vec![2, 1, 0]);
    }

    #[test]
    fn arity_bounds() {
        let f = FunctionTable::from_fold(&BinaryTable::or(), 13, 0);
        assert_eq!(classify(&f, 0), Err(Error::TooManyArguments(13)));
    }

    #[test]
    fn large_arity_is_sampled() {
        let f = FunctionTable::from_fold(&BinaryTable::or(), 9, 0);
        assert_eq!(
            classify(&f, 0).unwrap(),
            InteractionClass::FullyDecomposableEqual {
                combiner: BinaryTable::or(),
                sampled: true
            }
        );
    }
}
