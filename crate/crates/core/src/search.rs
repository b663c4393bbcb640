//! Deterministic enumeration of small coefficient vectors.
//!
//! Several constructions look for an element with some property among
//! integer combinations `sum c_i * b_i`. Candidates are visited in
//! increasing max-norm, using the value order `0, 1, -1, 2, -2, ...`; within
//! one norm level the first coordinate varies fastest.

use crate::error::{Error, Result};

/// Default max-norm bound for all multiplier searches.
pub const DEFAULT_SEARCH_BOUND: u32 = 20;

/// Hard ceiling on the number of candidates visited by one search.
pub const CANDIDATE_BUDGET: u64 = 2_000_000;

/// Iterator over index vectors into a value list laid out as
/// `[0, 1, -1, 2, -2, ...]` (index `i` has norm `(i + 1) / 2`).
pub struct MaxNormSearch {
    len: usize,
    value_count: usize,
    level: usize,
    max_level: usize,
    radix: usize,
    current: Option<Vec<usize>>,
    visited: u64,
}

impl MaxNormSearch {
    pub fn new(len: usize, value_count: usize) -> Self {
        assert!(value_count >= 1);
        let max_level = value_count / 2;
        MaxNormSearch {
            len,
            value_count,
            level: 0,
            max_level,
            radix: 1,
            current: Some(vec![0; len]),
            visited: 0,
        }
    }

    fn norm(idx: usize) -> usize {
        idx.div_ceil(2)
    }

    fn advance(&mut self) {
        loop {
            let Some(cur) = self.current.as_mut() else { return };
            // Odometer step within the current radix.
            let mut carried = true;
            for digit in cur.iter_mut() {
                *digit += 1;
                if *digit < self.radix {
                    carried = false;
                    break;
                }
                *digit = 0;
            }
            if carried {
                self.level += 1;
                if self.level > self.max_level || self.len == 0 {
                    self.current = None;
                    return;
                }
                self.radix = (2 * self.level + 1).min(self.value_count);
                continue;
            }
            if cur.iter().any(|&i| Self::norm(i) == self.level) {
                return;
            }
        }
    }

    /// Next candidate, or a capability error once the budget is spent.
    pub fn next_checked(&mut self) -> Result<Option<Vec<usize>>> {
        if self.visited >= CANDIDATE_BUDGET {
            return Err(Error::capability(format!(
                "candidate search visited {CANDIDATE_BUDGET} vectors without success"
            )));
        }
        let out = self.current.clone();
        if out.is_some() {
            self.visited += 1;
            self.advance();
        }
        Ok(out)
    }
}
