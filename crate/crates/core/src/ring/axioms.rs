use super::{Ring, SeminormFamily};

#[derive(Clone, Debug)]
pub struct AxiomResult {
    pub name: String,
    pub passed: bool,
    /// Largest observed violation (0 when the law holds exactly).
    pub worst: f64,
}

#[derive(Clone, Debug)]
pub struct AxiomReport {
    pub results: Vec<AxiomResult>,
}

impl AxiomReport {
    pub fn all_passed(&self) -> bool {
        self.results.iter().all(|r| r.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &AxiomResult> {
        self.results.iter().filter(|r| !r.passed)
    }

    pub fn get(&self, name: &str) -> Option<&AxiomResult> {
        self.results.iter().find(|r| r.name == name)
    }
}

struct Tally {
    name: String,
    worst: f64,
    tol: f64,
}

impl Tally {
    fn new(name: &str, tol: f64) -> Self {
        Tally {
            name: name.to_string(),
            worst: 0.0,
            tol,
        }
    }
    fn record(&mut self, violation: f64) {
        let v = if violation.is_nan() { f64::INFINITY } else { violation };
        self.worst = self.worst.max(v);
    }
    fn finish(self) -> AxiomResult {
        AxiomResult {
            passed: self.worst <= self.tol,
            name: self.name,
            worst: self.worst,
        }
    }
}

/// Checks ring axioms on all sample triples and seminorm axioms on all
/// sample pairs. Exact rings use tolerance 0.
pub fn axiom_check<R: Ring>(samples: &[R], family: &SeminormFamily<R>, tol: f64) -> AxiomReport {
    assert!(samples.len() >= 3, "axiom_check needs at least three samples");
    let tol = if samples[0].is_exact() { 0.0 } else { tol };
    let defect = |a: &R, b: &R| -> f64 {
        let d = a.sub(b);
        if d.is_zero() {
            0.0
        } else {
            d.norm().max(f64::MIN_POSITIVE)
        }
    };

    let mut assoc = Tally::new("mul_associativity", tol);
    let mut add_assoc = Tally::new("add_associativity", tol);
    let mut dist_l = Tally::new("left_distributivity", tol);
    let mut dist_r = Tally::new("right_distributivity", tol);
    let mut unit = Tally::new("unit_laws", tol);
    let mut inverse = Tally::new("additive_inverse", tol);
    let mut half = Tally::new("half_plus_half", tol);
    let mut inv = Tally::new("try_invert", tol.max(if tol > 0.0 { 1e-8 } else { 0.0 }));

    for x in samples {
        let one = x.one_like();
        unit.record(defect(&x.mul(&one), x));
        unit.record(defect(&one.mul(x), x));
        unit.record(defect(&x.add(&x.zero_like()), x));
        inverse.record(defect(&x.add(&x.neg()), &x.zero_like()));
        if let Some(h) = x.half() {
            half.record(defect(&h.add(&h), &one));
        }
        if let Some(y) = x.try_invert() {
            let scale = x.norm().max(1.0) * y.norm().max(1.0);
            inv.record(defect(&x.mul(&y), &one) / scale);
            inv.record(defect(&y.mul(x), &one) / scale);
        }
        for y in samples {
            for z in samples {
                let scale = if tol > 0.0 {
                    (x.norm() * y.norm() * z.norm()).max(1.0)
                } else {
                    1.0
                };
                assoc.record(defect(&x.mul(y).mul(z), &x.mul(&y.mul(z))) / scale);
                add_assoc.record(defect(&x.add(y).add(z), &x.add(&y.add(z))));
                dist_l.record(defect(&x.mul(&y.add(z)), &x.mul(y).add(&x.mul(z))) / scale);
                dist_r.record(defect(&x.add(y).mul(z), &x.mul(z).add(&y.mul(z))) / scale);
            }
        }
    }

    let mut results = vec![
        assoc.finish(),
        add_assoc.finish(),
        dist_l.finish(),
        dist_r.finish(),
        unit.finish(),
        inverse.finish(),
        half.finish(),
        inv.finish(),
    ];

    for (idx, p) in family.iter() {
        let companion = family.get(p.companion).expect("validated family");
        let slack = |v: f64| if tol > 0.0 { v * 1e-12 + tol } else { 1e-12 * v.abs() };
        let mut zero = Tally::new(&format!("seminorm[{idx}]_zero"), 0.0);
        let mut nonneg = Tally::new(&format!("seminorm[{idx}]_nonnegative"), 0.0);
        let mut symm = Tally::new(&format!("seminorm[{idx}]_symmetry"), 0.0);
        let mut tri = Tally::new(&format!("seminorm[{idx}]_triangle"), 0.0);
        let mut submul = Tally::new(&format!("seminorm[{idx}]_submultiplicative"), 0.0);
        zero.record(p.eval(&samples[0].zero_like()).abs());
        for x in samples {
            let px = p.eval(x);
            nonneg.record((-px).max(0.0));
            symm.record(((p.eval(&x.neg()) - px).abs() - slack(px)).max(0.0));
            for y in samples {
                let py = p.eval(y);
                let lhs = p.eval(&x.add(y));
                tri.record((lhs - px - py - slack(px + py)).max(0.0));
                let bound = companion.eval(x) * companion.eval(y);
                submul.record((p.eval(&x.mul(y)) - bound - slack(bound)).max(0.0));
            }
        }
        results.extend([zero.finish(), nonneg.finish(), symm.finish(), tri.finish(), submul.finish()]);
    }
    AxiomReport { results }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{Matrix, Seminorm};
    use num_bigint::BigInt;
    use num_complex::Complex64;
    use num_rational::BigRational;

    #[test]
    fn integers_pass() {
        let s: Vec<BigInt> = [-2, 0, 5].iter().map(|&v| BigInt::from(v)).collect();
        let r = axiom_check(&s, &SeminormFamily::standard(), 0.0);
        assert!(r.all_passed(), "{:?}", r.failures().collect::<Vec<_>>());
    }

    #[test]
    fn float_matrices_pass() {
        let c = |a: f64, b: f64| Complex64::new(a, b);
        let s = vec![
            Matrix::from_rows(vec![vec![c(1.0, 0.5), c(-2.0, 0.0)], vec![c(0.3, 0.0), c(0.0, 1.0)]]),
            Matrix::from_rows(vec![vec![c(0.1, 0.0), c(1.0, 1.0)], vec![c(2.0, 0.0), c(-1.0, 0.0)]]),
            Matrix::from_rows(vec![vec![c(3.0, 0.0), c(1.0, 0.0)], vec![c(0.0, 0.0), c(-2.0, 0.0)]]),
        ];
        let r = axiom_check(&s, &SeminormFamily::standard(), 1e-12);
        assert!(r.all_passed(), "{:?}", r.failures().collect::<Vec<_>>());
    }

    #[test]
    fn broken_seminorms_are_reported() {
        let q = |v: i64| BigRational::from_integer(v.into());
        let m = |a: i64, b: i64| Matrix::from_rows(vec![vec![q(a), q(b)], vec![q(0), q(1)]]);
        let s = vec![m(1, 2), m(-3, 1), m(2, -1)];

        let signed = Seminorm::new("first_entry", 0, |x: &Matrix<BigRational>| {
            num_traits::ToPrimitive::to_f64(x.get(0, 0)).unwrap()
        });
        let r = axiom_check(&s, &SeminormFamily::new(vec![signed]).unwrap(), 0.0);
        assert!(!r.get("seminorm[0]_symmetry").unwrap().passed);
        assert!(!r.get("seminorm[0]_nonnegative").unwrap().passed);

        let squared = Seminorm::new("first_entry_sq", 0, |x: &Matrix<BigRational>| {
            num_traits::ToPrimitive::to_f64(x.get(0, 0)).unwrap().powi(2)
        });
        let r = axiom_check(&s, &SeminormFamily::new(vec![squared]).unwrap(), 0.0);
        let tri = r.get("seminorm[0]_triangle").unwrap();
        assert!(!tri.passed && tri.worst > 0.0);
    }
}
