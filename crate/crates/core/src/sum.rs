//! Reductions over per-panel contributions.

/// How per-panel values are combined into the total.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub enum Summation {
    /// Left-to-right floating-point sum.
    Naive,
    /// Neumaier's variant of Kahan summation.
    #[default]
    Compensated,
    /// Recursive halving with a fixed tree shape determined by the index range.
    Pairwise,
}

impl Summation {
    pub fn reduce(self, values: &[f64]) -> f64 {
        match self {
            Summation::Naive => values.iter().sum(),
            Summation::Compensated => {
                let mut acc = CompensatedSum::new();
                acc.extend(values.iter().copied());
                acc.value()
            }
            Summation::Pairwise => pairwise(values),
        }
    }
}

/// Running compensated sum (Neumaier).
#[derive(Debug, Clone, Copy, Default)]
pub struct CompensatedSum {
    sum: f64,
    comp: f64,
}

impl CompensatedSum {
    pub const fn new() -> Self {
        Self { sum: 0.0, comp: 0.0 }
    }

    #[inline]
    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    #[inline]
    pub fn value(&self) -> f64 {
        self.sum + self.comp
    }
}

impl Extend<f64> for CompensatedSum {
    fn extend<I: IntoIterator<Item = f64>>(&mut self, iter: I) {
        for x in iter {
            self.add(x);
        }
    }
}

const PAIRWISE_BLOCK: usize = 32;

/// Pairwise sum. The split point depends only on the slice length, so the
/// result is a pure function of the input sequence.
pub fn pairwise(values: &[f64]) -> f64 {
    if values.len() <= PAIRWISE_BLOCK {
        return values.iter().sum();
    }
    let mid = values.len() / 2;
    pairwise(&values[..mid]) + pairwise(&values[mid..])
}
