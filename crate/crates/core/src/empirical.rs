//! Empirical distribution of a sample and its leave-one-out variants.
//!
//! A sample of n observations carries mass 1/n at each point. The cdf is the
//! right-continuous step function `P_n(x) = #{x_i <= x} / n` and the quantile
//! function is the min-based generalized inverse `P_n^{-1}(s) = min{x : P_n(x) >= s}`.
//! Deleting observation i yields the leave-one-out sample with uniform mass
//! 1/(n-1) on the remaining points; its mean and order statistics are obtained
//! incrementally from the parent, never by re-sorting.

use std::io::{BufRead, BufReader, Read};
use std::path::Path;

use crate::error::{Error, Result};

/// A sorted sample of real observations, each carrying mass 1/n.
///
/// Ties are retained as repeated values; the step cdf accumulates their
/// multiplicity. All operations are pure, so values may be shared freely
/// across threads.
#[derive(Debug, Clone, PartialEq)]
pub struct EmpiricalSample {
    values: Vec<f64>,
    mean: f64,
}

impl EmpiricalSample {
    /// Builds a sample from observations in any order; keeps a sorted copy.
    ///
    /// Every downstream quantity is permutation-invariant, so the original
    /// order is not retained.
    pub fn from_samples(values: &[f64]) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::EmptySample);
        }
        if let Some(index) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFiniteValue { index });
        }
        let mut sorted = values.to_vec();
        sorted.sort_by(f64::total_cmp);
        let mean = compensated_mean(&sorted);
        Ok(Self { values: sorted, mean })
    }

    /// Reads one observation per line; `#` starts a comment, blank lines are
    /// skipped. Decimal and scientific notation are accepted.
    pub fn from_reader<R: Read>(reader: R) -> Result<Self> {
        let mut values = Vec::new();
        for (lineno, line) in BufReader::new(reader).lines().enumerate() {
            let line = line?;
            let content = match line.find('#') {
                Some(pos) => &line[..pos],
                None => &line[..],
            };
            let content = content.trim();
            if content.is_empty() {
                continue;
            }
            let v: f64 = content.parse().map_err(|_| Error::MalformedData {
                line: lineno + 1,
                content: content.to_string(),
            })?;
            values.push(v);
        }
        Self::from_samples(&values)
    }

    pub fn from_file<P: AsRef<Path>>(path: P) -> Result<Self> {
        Self::from_reader(std::fs::File::open(path)?)
    }

    pub fn n(&self) -> usize {
        self.values.len()
    }

    /// Observations in ascending order.
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Arithmetic mean, computed once with compensated summation.
    pub fn mean(&self) -> f64 {
        self.mean
    }

    /// Right-continuous step cdf: `#{x_i <= x} / n`.
    pub fn cdf(&self, x: f64) -> f64 {
        self.count_le(x) as f64 / self.n() as f64
    }

    /// `min{x_i : cdf(x_i) >= s}` for `0 < s <= 1`.
    ///
    /// The index search compares `j/n >= s` in floating point, which keeps the
    /// Galois relation `quantile(s) <= x  <=>  s <= cdf(x)` exact.
    pub fn quantile(&self, s: f64) -> Result<f64> {
        if !(s > 0.0 && s <= 1.0) {
            return Err(Error::OutOfRange { level: s });
        }
        let n = self.n();
        let mut k = (s * n as f64).ceil() as usize;
        k = k.clamp(1, n);
        while k > 1 && (k - 1) as f64 / n as f64 >= s {
            k -= 1;
        }
        while k < n && (k as f64 / n as f64) < s {
            k += 1;
        }
        Ok(self.values[k - 1])
    }

    /// Deletes the 1-based observation `i`, leaving n-1 points of mass 1/(n-1).
    pub fn leave_one_out(&self, i: usize) -> Result<LeaveOneOut<'_>> {
        let n = self.n();
        if n < 2 {
            return Err(Error::TooFewSamples { n, needed: 2 });
        }
        if i < 1 || i > n {
            return Err(Error::IndexOutOfRange { index: i, n });
        }
        Ok(LeaveOneOut { parent: self, omitted_index: i })
    }

    fn count_le(&self, x: f64) -> usize {
        self.values.partition_point(|&v| v <= x)
    }
}

/// View of a sample with one observation deleted.
#[derive(Debug, Clone, Copy)]
pub struct LeaveOneOut<'a> {
    parent: &'a EmpiricalSample,
    /// 1-based index of the deleted order statistic.
    omitted_index: usize,
}

impl LeaveOneOut<'_> {
    pub fn n(&self) -> usize {
        self.parent.n() - 1
    }

    pub fn omitted_index(&self) -> usize {
        self.omitted_index
    }

    pub fn omitted_value(&self) -> f64 {
        self.parent.values[self.omitted_index - 1]
    }

    /// Mean by the running-sum identity `(n*mean - x_i) / (n-1)`.
    pub fn mean(&self) -> f64 {
        let n = self.parent.n() as f64;
        (n * self.parent.mean() - self.omitted_value()) / (n - 1.0)
    }

    /// j-th order statistic (1-based) of the reduced sample; deleting one
    /// point of a sorted list keeps the rest sorted, so this is index skipping.
    pub fn value(&self, j: usize) -> f64 {
        debug_assert!(j >= 1 && j <= self.n());
        if j < self.omitted_index {
            self.parent.values[j - 1]
        } else {
            self.parent.values[j]
        }
    }

    pub fn values(&self) -> impl Iterator<Item = f64> + '_ {
        (1..=self.n()).map(move |j| self.value(j))
    }

    pub fn cdf(&self, x: f64) -> f64 {
        let mut count = self.parent.count_le(x);
        if self.omitted_value() <= x {
            count -= 1;
        }
        count as f64 / self.n() as f64
    }
}

fn compensated_mean(values: &[f64]) -> f64 {
    let mut sum = 0.0;
    let mut c = 0.0;
    for &v in values {
        let y = v - c;
        let t = sum + y;
        c = (t - sum) - y;
        sum = t;
    }
    sum / values.len() as f64
}
