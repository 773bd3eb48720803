use std::collections::BTreeSet;

/// Weight rules `α: ℤ → [0, ∞)` for the seminorms `p_α(a) = Σ α(n)·p(a_n)`.
#[derive(Clone, Debug, PartialEq)]
pub enum WeightClass {
    Ones,
    /// `α(n) = (1 + |n|)^d`
    Polynomial(u32),
    /// `α(n) = r^|n|`, `r ≥ 0`
    Geometric(f64),
    FiniteSupport(BTreeSet<i64>),
}

impl WeightClass {
    pub fn alpha(&self, n: i64) -> f64 {
        match self {
            WeightClass::Ones => 1.0,
            WeightClass::Polynomial(d) => (1.0 + n.unsigned_abs() as f64).powi(*d as i32),
            WeightClass::Geometric(r) => r.abs().powf(n.unsigned_abs() as f64),
            WeightClass::FiniteSupport(set) => {
                if set.contains(&n) {
                    1.0
                } else {
                    0.0
                }
            }
        }
    }

    /// Companion weight `α̃(n) = 1 ∨ max_{|m| ≤ |n|} α(m)` for two-sided series.
    pub fn companion_two_sided(&self, n: i64) -> f64 {
        let k = n.abs();
        (-k..=k).map(|m| self.alpha(m)).fold(1.0, f64::max)
    }

    /// Companion weight `α̃(n) = √(max_{m ≥ n, m ≤ horizon} α(m))` for power
    /// series; the supremum is taken up to a finite horizon.
    pub fn companion_power_series(&self, n: i64, horizon: i64) -> f64 {
        (n..=horizon.max(n)).map(|m| self.alpha(m)).fold(0.0, f64::max).sqrt()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn weights_nonnegative() {
        let ws = [
            WeightClass::Ones,
            WeightClass::Polynomial(2),
            WeightClass::Geometric(0.5),
            WeightClass::FiniteSupport([0, 3].into_iter().collect()),
        ];
        for w in &ws {
            for n in -10..=10 {
                assert!(w.alpha(n) >= 0.0);
            }
        }
        assert_eq!(WeightClass::Polynomial(1).alpha(-1), 2.0);
        assert_eq!(WeightClass::Geometric(0.5).alpha(-2), 0.25);
    }

    #[test]
    fn companions() {
        assert_eq!(WeightClass::Geometric(0.5).companion_two_sided(3), 1.0);
        assert_eq!(WeightClass::Polynomial(1).companion_two_sided(-3), 4.0);
        assert_eq!(WeightClass::Polynomial(2).companion_power_series(1, 3), 4.0);
    }
}
