use crate::model::BinaryTable;

/// Commutativity and associativity of a binary combiner.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AlgebraProfile {
    pub commutative: bool,
    pub associative: bool,
}

/// Whether `baseline` is an identity of `op`.
///
/// Always requires `op(x, baseline) = x`; when `op` is commutative the left
/// identity `op(baseline, x) = x` is checked as well.
pub fn check_identity(op: &BinaryTable, baseline: usize) -> bool {
    let k = op.states();
    if baseline >= k {
        return false;
    }
    let right = (0..k).all(|x| op.get(x, baseline) == x);
    if !right {
        return false;
    }
    if check_commutative_associative(op).commutative {
        (0..k).all(|x| op.get(baseline, x) == x)
    } else {
        true
    }
}

/// Exhaustive check over all pairs and triples of states.
pub fn check_commutative_associative(op: &BinaryTable) -> AlgebraProfile {
    let k = op.states();
    let commutative = (0..k).all(|x| (0..k).all(|y| op.get(x, y) == op.get(y, x)));
    let associative = (0..k).all(|x| {
        (0..k).all(|y| (0..k).all(|z| op.get(op.get(x, y), z) == op.get(x, op.get(y, z))))
    });
    AlgebraProfile {
        commutative,
        associative,
    }
}
