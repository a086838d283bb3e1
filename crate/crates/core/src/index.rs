//! Mixed-radix indexing shared by every table in the crate.
//!
//! All tables are row-major with the last coordinate varying fastest.

use alloc::vec;
use alloc::vec::Vec;

/// Counts through every assignment of a list of finite domains, last digit fastest.
#[derive(Debug, Clone)]
pub struct Odometer {
    radices: Vec<usize>,
    digits: Vec<usize>,
    exhausted: bool,
}

impl Odometer {
    pub fn new(radices: &[usize]) -> Self {
        Odometer {
            radices: radices.to_vec(),
            digits: vec![0; radices.len()],
            exhausted: radices.contains(&0),
        }
    }

    /// Current assignment, or `None` once every assignment has been visited.
    pub fn current(&self) -> Option<&[usize]> {
        if self.exhausted {
            None
        } else {
            Some(&self.digits)
        }
    }

    /// Steps to the next assignment; returns false when the count wraps.
    pub fn advance(&mut self) -> bool {
        if self.exhausted {
            return false;
        }
        for pos in (0..self.digits.len()).rev() {
            self.digits[pos] += 1;
            if self.digits[pos] < self.radices[pos] {
                return true;
            }
            self.digits[pos] = 0;
        }
        self.exhausted = true;
        false
    }
}

/// Row-major strides for the given radices.
pub fn strides(radices: &[usize]) -> Vec<usize> {
    let mut out = vec![1; radices.len()];
    for i in (0..radices.len().saturating_sub(1)).rev() {
        out[i] = out[i + 1] * radices[i + 1];
    }
    out
}

/// Flat index of `digits` under `radices`.
pub fn flat_index(digits: &[usize], radices: &[usize]) -> usize {
    digits
        .iter()
        .zip(radices)
        .fold(0, |acc, (&d, &r)| acc * r + d)
}

/// Product of the radices, saturating at `usize::MAX`.
pub fn volume(radices: &[usize]) -> usize {
    radices.iter().fold(1usize, |acc, &r| acc.saturating_mul(r))
}
