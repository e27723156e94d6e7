/// Neumaier-compensated accumulator.
///
/// Probability mass is accumulated from up to hundreds of thousands of
/// tiny terms; the distribution invariants carry a 1e-9 tolerance, so
/// plain `+=` is not good enough. The compensation term also keeps the
/// accumulated error independent of summation length.
#[derive(Debug, Clone, Copy, Default)]
pub struct Compensated {
    sum: f64,
    correction: f64,
}

impl Compensated {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.correction += (self.sum - t) + x;
        } else {
            self.correction += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum + self.correction
    }
}

/// Compensated sum of an iterator of terms.
pub fn compensated_sum(terms: impl IntoIterator<Item = f64>) -> f64 {
    let mut acc = Compensated::new();
    for t in terms {
        acc.add(t);
    }
    acc.value()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn recovers_mass_lost_by_naive_summation() {
        // 1e16 swamps the small terms for a naive f64 sum.
        let terms = [1e16, 1.0, -1e16, 1.0];
        let naive: f64 = terms.iter().sum();
        assert_ne!(naive, 2.0);
        assert_eq!(compensated_sum(terms), 2.0);
    }

    #[test]
    fn many_small_terms_sum_to_one() {
        let n = 1_000_000;
        let total = compensated_sum((0..n).map(|_| 1.0 / n as f64));
        assert!((total - 1.0).abs() < 1e-12);
    }
}
