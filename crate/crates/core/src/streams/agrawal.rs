use alloc::vec;
use alloc::vec::Vec;

use rand::Rng;

use super::flip_label;
use crate::rng::DetRng;

pub const AGRAWAL_FUNCTIONS: usize = 10;

/// Applicant attributes in feature order.
#[derive(Debug, Clone, Copy)]
struct Applicant {
    salary: f64,
    commission: f64,
    age: f64,
    elevel: f64,
    car: f64,
    zipcode: f64,
    hvalue: f64,
    hyears: f64,
    loan: f64,
}

impl Applicant {
    fn draw(rng: &mut DetRng) -> Self {
        let salary = rng.random_range(20_000.0..150_000.0);
        let commission = if salary >= 75_000.0 {
            0.0
        } else {
            rng.random_range(10_000.0..75_000.0)
        };
        let age = rng.random_range(20..=80) as f64;
        let elevel = rng.random_range(0..=4) as f64;
        let car = rng.random_range(1..=20) as f64;
        let zipcode = rng.random_range(0..=8) as f64;
        let hvalue = (9.0 - zipcode) * 100_000.0 * rng.random_range(0.5..1.5);
        let hyears = rng.random_range(1..=30) as f64;
        let loan = rng.random_range(0.0..500_000.0);
        Self {
            salary,
            commission,
            age,
            elevel,
            car,
            zipcode,
            hvalue,
            hyears,
            loan,
        }
    }

    fn features(&self) -> Vec<f64> {
        vec![
            self.salary,
            self.commission,
            self.age,
            self.elevel,
            self.car,
            self.zipcode,
            self.hvalue,
            self.hyears,
            self.loan,
        ]
    }

    fn from_features(f: &[f64]) -> Self {
        Self {
            salary: f[0],
            commission: f[1],
            age: f[2],
            elevel: f[3],
            car: f[4],
            zipcode: f[5],
            hvalue: f[6],
            hyears: f[7],
            loan: f[8],
        }
    }
}

fn within(v: f64, lo: f64, hi: f64) -> bool {
    (lo..=hi).contains(&v)
}

/// Group A (label 0) membership under classification function `f`.
fn group_a(f: usize, a: &Applicant) -> bool {
    let young = a.age < 40.0;
    let middle = !young && a.age < 60.0;
    let by_age = |y: bool, m: bool, o: bool| if young { y } else if middle { m } else { o };
    let income = a.salary + a.commission;
    match f {
        0 => young || a.age >= 60.0,
        1 => by_age(
            within(a.salary, 50_000.0, 100_000.0),
            within(a.salary, 75_000.0, 125_000.0),
            within(a.salary, 25_000.0, 75_000.0),
        ),
        2 => by_age(
            a.elevel <= 1.0,
            within(a.elevel, 1.0, 3.0),
            within(a.elevel, 2.0, 4.0),
        ),
        3 => by_age(
            if a.elevel <= 1.0 {
                within(a.salary, 25_000.0, 75_000.0)
            } else {
                within(a.salary, 50_000.0, 100_000.0)
            },
            if within(a.elevel, 1.0, 3.0) {
                within(a.salary, 50_000.0, 100_000.0)
            } else {
                within(a.salary, 75_000.0, 125_000.0)
            },
            if within(a.elevel, 2.0, 4.0) {
                within(a.salary, 50_000.0, 100_000.0)
            } else {
                within(a.salary, 25_000.0, 75_000.0)
            },
        ),
        4 => by_age(
            if within(a.salary, 50_000.0, 100_000.0) {
                within(a.loan, 100_000.0, 300_000.0)
            } else {
                within(a.loan, 200_000.0, 400_000.0)
            },
            if within(a.salary, 75_000.0, 125_000.0) {
                within(a.loan, 200_000.0, 400_000.0)
            } else {
                within(a.loan, 300_000.0, 500_000.0)
            },
            if within(a.salary, 25_000.0, 75_000.0) {
                within(a.loan, 300_000.0, 500_000.0)
            } else {
                within(a.loan, 100_000.0, 300_000.0)
            },
        ),
        5 => by_age(
            within(income, 50_000.0, 100_000.0),
            within(income, 75_000.0, 125_000.0),
            within(income, 25_000.0, 75_000.0),
        ),
        6 => 2.0 * income / 3.0 - a.loan / 5.0 - 20_000.0 > 0.0,
        7 => 2.0 * income / 3.0 - 5_000.0 * a.elevel - 20_000.0 > 0.0,
        8 => 2.0 * income / 3.0 - 5_000.0 * a.elevel - a.loan / 5.0 - 10_000.0 > 0.0,
        _ => {
            let equity = if a.hyears >= 20.0 {
                0.1 * a.hvalue * (a.hyears - 20.0)
            } else {
                0.0
            };
            2.0 * income / 3.0 - 5_000.0 * a.elevel + equity / 5.0 - 10_000.0 > 0.0
        }
    }
}

pub(super) fn label(function: usize, features: &[f64]) -> f64 {
    if group_a(function, &Applicant::from_features(features)) {
        0.0
    } else {
        1.0
    }
}

pub(super) fn sample(function: usize, flip: f64, rng: &mut DetRng) -> (Vec<f64>, f64) {
    let a = Applicant::draw(rng);
    let f = a.features();
    let y = flip_label(label(function, &f), flip, rng);
    (f, y)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::rng_from_seed;

    fn applicant(salary: f64, age: f64, elevel: f64) -> Vec<f64> {
        vec![salary, 0.0, age, elevel, 1.0, 0.0, 500_000.0, 5.0, 250_000.0]
    }

    #[test]
    fn age_rule() {
        assert_eq!(label(0, &applicant(50_000.0, 30.0, 0.0)), 0.0);
        assert_eq!(label(0, &applicant(50_000.0, 45.0, 0.0)), 1.0);
        assert_eq!(label(0, &applicant(50_000.0, 60.0, 0.0)), 0.0);
    }

    #[test]
    fn functions_two_and_three_differ() {
        let young_low = applicant(30_000.0, 30.0, 0.0);
        assert_eq!(label(2, &young_low), 0.0);
        assert_eq!(label(3, &young_low), 0.0);
        let young_high_salary = applicant(110_000.0, 30.0, 1.0);
        assert_eq!(label(2, &young_high_salary), 0.0);
        assert_eq!(label(3, &young_high_salary), 1.0);
    }

    #[test]
    fn attribute_ranges() {
        let mut rng = rng_from_seed(4);
        for _ in 0..2_000 {
            let a = Applicant::draw(&mut rng);
            assert!(within(a.salary, 20_000.0, 150_000.0));
            assert!(a.salary < 75_000.0 || a.commission == 0.0);
            assert!(within(a.age, 20.0, 80.0));
            assert!(a.hvalue > 0.0);
        }
    }

    #[test]
    fn both_classes_occur() {
        let mut rng = rng_from_seed(5);
        for f in 0..AGRAWAL_FUNCTIONS {
            let ones: f64 = (0..2_000).map(|_| sample(f, 0.0, &mut rng).1).sum();
            assert!(ones > 0.0 && ones < 2_000.0, "function {f}: {ones}");
        }
    }
}
