use alloc::vec;
use alloc::vec::Vec;

use crate::model::{BinaryTable, FunctionTable};

/// A chain-stage function `f_i(x, y)` that is only defined where `y` is a
/// value the previous stage can actually produce.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StepFunction {
    states: usize,
    values: Vec<Option<usize>>,
}

impl StepFunction {
    fn undefined(states: usize) -> Self {
        StepFunction {
            states,
            values: vec![None; states * states],
        }
    }

    pub fn states(&self) -> usize {
        self.states
    }

    pub fn get(&self, x: usize, y: usize) -> Option<usize> {
        self.values[x * self.states + y]
    }

    fn set(&mut self, x: usize, y: usize, v: usize) {
        self.values[x * self.states + y] = Some(v);
    }

    /// Values of `y` for which the stage is defined.
    pub fn domain(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.states).filter(move |&y| self.get(0, y).is_some())
    }

    /// Total version: unreachable accumulated values pass through unchanged.
    pub fn to_total(&self) -> BinaryTable {
        BinaryTable::from_fn(self.states, |x, y| self.get(x, y).unwrap_or(y))
    }
}

/// Witness that a combination function factors as a nested chain for one
/// ordering of its arguments.
///
/// With `σ = ordering`, the chain is `e_1 = first[x_σ1]` followed by
/// `e_i = steps[i-2](x_σi, e_{i-1})`, and the last value equals the function.
/// Every intermediate `e_i` is the function evaluated with arguments
/// `σ(i+1)..σ(n)` held at the baseline.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition {
    pub ordering: Vec<usize>,
    pub first: Vec<usize>,
    pub steps: Vec<StepFunction>,
}

impl Decomposition {
    pub fn states(&self) -> usize {
        self.first.len()
    }

    /// Runs the chain on `args`, given in the function's own argument order.
    pub fn evaluate(&self, args: &[usize]) -> Option<usize> {
        let (head, rest) = self.ordering.split_first()?;
        let mut acc = self.first[args[*head]];
        for (step, &pos) in self.steps.iter().zip(rest) {
            acc = step.get(args[pos], acc)?;
        }
        Some(acc)
    }
}

/// The prefix length at which the factoring check failed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NotDecomposable {
    pub stage: usize,
}

/// Checks whether `f` factors as a nested chain in `ordering`.
///
/// For a prefix `p` of the ordered arguments, its anchor is `f(p, e0, …, e0)`.
/// The function decomposes iff at every stage, prefixes with equal anchors
/// agree on every completion. The stage functions are then read off the
/// anchors.
///
/// Panics if `ordering` is not a permutation of the argument positions or if
/// `f` has no arguments.
pub fn decompose_for_ordering(
    f: &FunctionTable,
    ordering: &[usize],
    baseline: usize,
) -> Result<Decomposition, NotDecomposable> {
    let n = f.arity();
    let k = f.states();
    assert!(n >= 1, "decomposition needs at least one argument");
    assert!(is_permutation(ordering, n), "ordering is not a permutation");
    assert!(baseline < k, "baseline out of range");

    // Function values indexed by the argument tuple in σ order.
    let mut permuted = Vec::with_capacity(k.pow(n as u32));
    let mut args = vec![0; n];
    let mut digits = vec![0; n];
    loop {
        for (j, &pos) in ordering.iter().enumerate() {
            args[pos] = digits[j];
        }
        permuted.push(f.get(&args));
        if !increment(&mut digits, k) {
            break;
        }
    }

    // Number of completions and index of the all-baseline completion, per
    // prefix length.
    let completions: Vec<usize> = (0..=n).map(|i| k.pow((n - i) as u32)).collect();
    let baseline_completion: Vec<usize> = (0..=n)
        .map(|i| (0..n - i).fold(0, |acc, _| acc * k + baseline))
        .collect();
    let anchor = |len: usize, prefix: usize| -> usize {
        permuted[prefix * completions[len] + baseline_completion[len]]
    };

    // reps[i][a]: first prefix of length i with anchor a.
    let mut reps: Vec<Vec<Option<usize>>> = vec![Vec::new(); n + 1];
    for len in 1..=n {
        let mut rep = vec![None; k];
        let width = completions[len];
        for prefix in 0..k.pow(len as u32) {
            let a = anchor(len, prefix);
            match rep[a] {
                None => rep[a] = Some(prefix),
                Some(r) => {
                    let same =
                        (0..width).all(|q| permuted[prefix * width + q] == permuted[r * width + q]);
                    if !same {
                        return Err(NotDecomposable { stage: len });
                    }
                }
            }
        }
        reps[len] = rep;
    }

    let first = (0..k).map(|x| anchor(1, x)).collect();
    let mut steps = Vec::with_capacity(n - 1);
    for len in 2..=n {
        let mut step = StepFunction::undefined(k);
        for (y, r) in reps[len - 1].iter().enumerate() {
            if let Some(r) = r {
                for x in 0..k {
                    step.set(x, y, anchor(len, r * k + x));
                }
            }
        }
        steps.push(step);
    }

    Ok(Decomposition {
        ordering: ordering.to_vec(),
        first,
        steps,
    })
}

pub(crate) fn is_permutation(ordering: &[usize], n: usize) -> bool {
    if ordering.len() != n {
        return false;
    }
    let mut seen = vec![false; n];
    ordering
        .iter()
        .all(|&i| i < n && !core::mem::replace(&mut seen[i], true))
}

fn increment(digits: &mut [usize], radix: usize) -> bool {
    for d in digits.iter_mut().rev() {
        *d += 1;
        if *d < radix {
            return true;
        }
        *d = 0;
    }
    false
}
