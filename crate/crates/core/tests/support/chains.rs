//! Search for nested decompositions by assigning intermediate values.
//!
//! For ordering `σ` a chain assigns every prefix `p` of length `i < n` an
//! intermediate effect value `h_i(p)`. It is valid when each stage is a
//! function of the new argument and the previous intermediate, the final
//! output is a function of the last argument and `h_{n-1}`, and appending the
//! baseline leaves the intermediate unchanged (the baseline does nothing).

use causalnet_core::FunctionTable;

fn permuted_value(f: &FunctionTable, ordering: &[usize], args: &[usize]) -> usize {
    let mut original = vec![0; args.len()];
    for (pos, &arg) in ordering.iter().zip(args) {
        original[*pos] = arg;
    }
    f.get(&original)
}

struct Search<'a> {
    f: &'a FunctionTable,
    ordering: &'a [usize],
    k: usize,
    n: usize,
    e0: usize,
    /// labels[i][p] for prefixes of length i + 1, prefix encoded base k.
    labels: Vec<Vec<Option<usize>>>,
}

impl Search<'_> {
    fn run(&mut self, level: usize, prefix: usize) -> bool {
        if level == self.n - 1 {
            return self.final_stage_consistent();
        }
        let count = self.k.pow(level as u32 + 1);
        if prefix == count {
            return self.run(level + 1, 0);
        }
        for v in 0..self.k {
            self.labels[level][prefix] = Some(v);
            if self.consistent(level, prefix) && self.run(level, prefix + 1) {
                return true;
            }
        }
        self.labels[level][prefix] = None;
        false
    }

    fn consistent(&self, level: usize, prefix: usize) -> bool {
        let v = self.labels[level][prefix].unwrap();
        let x = prefix % self.k;
        if level > 0 {
            let parent = prefix / self.k;
            let y = self.labels[level - 1][parent].unwrap();
            if x == self.e0 && v != y {
                return false;
            }
            for other in 0..prefix {
                if other % self.k == x
                    && self.labels[level - 1][other / self.k] == Some(y)
                    && self.labels[level][other] != Some(v)
                {
                    return false;
                }
            }
        }
        if level == self.n - 2 {
            // The last intermediate must equal the output with the baseline appended.
            let mut args = self.digits(prefix, level + 1);
            args.push(self.e0);
            if permuted_value(self.f, self.ordering, &args) != v {
                return false;
            }
        }
        true
    }

    fn digits(&self, mut code: usize, len: usize) -> Vec<usize> {
        let mut d = vec![0; len];
        for slot in d.iter_mut().rev() {
            *slot = code % self.k;
            code /= self.k;
        }
        d
    }

    fn final_stage_consistent(&self) -> bool {
        let last = self.n - 2;
        let mut table = vec![None; self.k * self.k];
        for prefix in 0..self.k.pow(last as u32 + 1) {
            let y = self.labels[last][prefix].unwrap();
            let mut args = self.digits(prefix, last + 1);
            args.push(0);
            for x in 0..self.k {
                *args.last_mut().unwrap() = x;
                let out = permuted_value(self.f, self.ordering, &args);
                match table[x * self.k + y] {
                    None => table[x * self.k + y] = Some(out),
                    Some(o) if o != out => return false,
                    _ => {}
                }
            }
        }
        true
    }
}

/// True when `f` admits a chain of stage functions in `ordering`.
pub fn decomposes(f: &FunctionTable, ordering: &[usize], e0: usize) -> bool {
    let n = f.arity();
    let k = f.states();
    if n == 1 {
        return true;
    }
    let mut s = Search {
        f,
        ordering,
        k,
        n,
        e0,
        labels: (0..n - 1)
            .map(|i| vec![None; k.pow(i as u32 + 1)])
            .collect(),
    };
    s.run(0, 0)
}

pub fn orderings(n: usize) -> Vec<Vec<usize>> {
    fn go(rest: &mut Vec<usize>, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rest.is_empty() {
            out.push(current.clone());
            return;
        }
        for i in 0..rest.len() {
            let v = rest.remove(i);
            current.push(v);
            go(rest, current, out);
            current.pop();
            rest.insert(i, v);
        }
    }
    let mut out = Vec::new();
    go(&mut (0..n).collect(), &mut Vec::new(), &mut out);
    out
}

fn associative(t: &[usize], k: usize) -> bool {
    (0..k)
        .all(|x| (0..k).all(|y| (0..k).all(|z| t[t[x * k + y] * k + z] == t[x * k + t[y * k + z]])))
}

/// True when one commutative, associative table `op` rebuilds `f` in every
/// ordering: the first argument enters through `f` with all other arguments at
/// the baseline and each later argument is merged as `op(x, acc)`.
pub fn shared_combiner_exists(f: &FunctionTable, e0: usize) -> bool {
    let k = f.states();
    let n = f.arity();
    let pairs: Vec<(usize, usize)> = (0..k).flat_map(|x| (x..k).map(move |y| (x, y))).collect();
    let all = orderings(n);
    let inputs: Vec<Vec<usize>> = {
        let mut v = vec![vec![]];
        for _ in 0..n {
            v = v
                .into_iter()
                .flat_map(|p: Vec<usize>| (0..k).map(move |x| [p.clone(), vec![x]].concat()))
                .collect();
        }
        v
    };
    let mut code = vec![0usize; pairs.len()];
    loop {
        let mut t = vec![0; k * k];
        for (&(x, y), &c) in pairs.iter().zip(&code) {
            t[x * k + y] = c;
            t[y * k + x] = c;
        }
        if associative(&t, k)
            && all.iter().all(|sigma| {
                inputs.iter().all(|args| {
                    let mut first = vec![e0; n];
                    first[sigma[0]] = args[sigma[0]];
                    let acc = sigma[1..]
                        .iter()
                        .fold(f.get(&first), |acc, &i| t[args[i] * k + acc]);
                    acc == f.get(args)
                })
            })
        {
            return true;
        }
        let mut i = code.len();
        loop {
            if i == 0 {
                return false;
            }
            i -= 1;
            code[i] += 1;
            if code[i] < k {
                break;
            }
            code[i] = 0;
        }
    }
}

/// Interaction class from the search: 2 when no ordering decomposes, 3 when
/// some do, 4 when all do, 5 when a shared combiner also exists.
pub fn class_of(f: &FunctionTable, e0: usize) -> u8 {
    let all = orderings(f.arity());
    let ok = all.iter().filter(|o| decomposes(f, o, e0)).count();
    if ok == 0 {
        2
    } else if ok < all.len() {
        3
    } else if shared_combiner_exists(f, e0) {
        5
    } else {
        4
    }
}

/// Lexicographically first ordering that decomposes.
pub fn first_witness(f: &FunctionTable, e0: usize) -> Option<Vec<usize>> {
    orderings(f.arity())
        .into_iter()
        .find(|o| decomposes(f, o, e0))
}
