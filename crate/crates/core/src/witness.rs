//! The certified non-doubling witness for `m >= 3`.
//!
//! Follow the address path `I_n = 1 1 2^{n-2}`: the triple of `X_n` that starts
//! at `z_{n,1} = S_{I_n}(0)` has labels that cycle with period `m`, and its
//! weights evolve by `M_1` or `M_2`. After `k` full cycles the sum ratio of the
//! triple is `R_k`, which grows without bound.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::algebra::FieldElement;
use crate::error::{Error, Result};
use crate::levels::{CheckFailure, Level};
use crate::matrix::{TransitionMatrix, WeightTriple};
use crate::prob::ProbabilityPair;
use crate::substitution::{self, LabelWord, Letter};

/// Default upper bound for the certificate search.
pub const DEFAULT_K_CAP: u64 = 1_000_000;

/// Transition for triples whose first two labels avoid `d_m`.
pub fn m1(p: &ProbabilityPair) -> TransitionMatrix {
    let (p1, p2, z) = (p.p1(), p.p2(), BigRational::zero());
    TransitionMatrix::from_rows([
        [p2.clone(), z.clone(), z.clone()],
        [z.clone(), p1, z.clone()],
        [z.clone(), p2, z],
    ])
}

/// Transition for triples whose first two labels are `d_m d_1`.
pub fn m2(p: &ProbabilityPair) -> TransitionMatrix {
    let (p1, p2, z) = (p.p1(), p.p2(), BigRational::zero());
    TransitionMatrix::from_rows([
        [p2.clone(), p1.clone(), z.clone()],
        [z.clone(), p2, z.clone()],
        [z.clone(), z, p1],
    ])
}

/// The triple tracked along the witness path at rank `n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WitnessState {
    pub n: u32,
    pub m: usize,
    pub labels: [Letter; 3],
    pub weights: WeightTriple,
    /// `z_{n,1}`.
    pub location: FieldElement,
    pub prob: ProbabilityPair,
}

/// Labels `t(z_{n,1}) t(z_{n,2}) t(z_{n,3})` in closed form.
pub fn expected_labels(n: u32, m: usize) -> [Letter; 3] {
    // n' in {2, ..., m + 1} with n' = n mod m
    let r = (n as usize) % m;
    let n_prime = if r < 2 { r + m } else { r };
    match n_prime {
        2 => [Letter(1), Letter(2), Letter(1)],
        3 => [Letter(2), Letter(1), Letter(3)],
        k => [Letter(k - 1), Letter(1), Letter(2)],
    }
}

/// `Q_n`: `M_2` when `m | n - 1`, otherwise `M_1`.
pub fn transition_for(n: u32, m: usize, p: &ProbabilityPair) -> TransitionMatrix {
    if (n as usize - 1).is_multiple_of(m) {
        m2(p)
    } else {
        m1(p)
    }
}

impl WitnessState {
    /// The rank-2 triple at `z_{2,1} = 0`.
    pub fn initial(m: usize, p: &ProbabilityPair) -> Result<Self> {
        if m < 3 {
            return Err(Error::WitnessDegree(m));
        }
        let (p1, p2) = (p.p1(), p.p2());
        Ok(WitnessState {
            n: 2,
            m,
            labels: [Letter(1), Letter(2), Letter(1)],
            weights: WeightTriple::new(&p1 * &p1, &p1 * &p2, &p1 * &p2),
            location: FieldElement::zero(m),
            prob: p.clone(),
        })
    }

    /// The state one rank deeper.
    pub fn step(&self) -> WitnessState {
        let q = transition_for(self.n, self.m, &self.prob);
        let image = substitution::apply(&LabelWord(self.labels.to_vec()), self.m)
            .expect("witness labels are in range");
        // z_{n,1} and z_{n+1,1} are consecutive in X_{n+1}, so skip one letter.
        let next = &image.letters()[1..4];
        let n1 = self.n + 1;
        let step = FieldElement::from_i64s(&[-1, 1], n1, self.m);
        WitnessState {
            n: n1,
            m: self.m,
            labels: [next[0], next[1], next[2]],
            weights: q.apply(&self.weights),
            location: &self.location + &step,
            prob: self.prob.clone(),
        }
    }

    /// The state reached after `k` full cycles (rank `k m + 2`).
    pub fn after_cycles(m: usize, p: &ProbabilityPair, k: u64) -> Result<Self> {
        let mut s = Self::initial(m, p)?;
        for _ in 0..k * m as u64 {
            s = s.step();
        }
        Ok(s)
    }

    pub fn ratio(&self) -> BigRational {
        self.weights.sum_ratio()
    }
}

/// `(M_2 M_1^{m-1})^k` in closed form.
pub fn cycle_power(m: usize, p: &ProbabilityPair, k: u64) -> TransitionMatrix {
    let (p1, p2) = (p.p1(), p.p2());
    let pw = |x: &BigRational, e: u64| num_traits::pow(x.clone(), e as usize);
    let mu = m as u64;
    let top_mid = (0..k).fold(BigRational::zero(), |acc, i| {
        acc + pw(&p1, mu + (mu - 1) * i) * pw(&p2, k * mu - mu - (mu - 1) * i)
    });
    let diag = pw(&p1, k * mu - k) * pw(&p2, k);
    let z = BigRational::zero();
    TransitionMatrix::from_rows([
        [pw(&p2, k * mu), top_mid, z.clone()],
        [z.clone(), diag.clone(), z.clone()],
        [z.clone(), diag, z],
    ])
}

/// `(M_2 M_1^{m-1})^k` by explicit multiplication.
pub fn cycle_product(m: usize, p: &ProbabilityPair, k: u64) -> TransitionMatrix {
    let one_cycle = &m2(p) * &m1(p).pow(m as u64 - 1);
    let mut acc = TransitionMatrix::identity();
    for _ in 0..k {
        acc = &one_cycle * &acc;
    }
    acc
}

/// Closed-form `R_k`; requires `p1 <= p2`.
pub fn r_k(m: usize, p: &ProbabilityPair, k: u64) -> Result<BigRational> {
    if p.needs_reflection() {
        return Err(Error::InvalidProbability(format!(
            "R_k assumes p1 <= p2, got {p}; reflect first"
        )));
    }
    if m < 3 {
        return Err(Error::WitnessDegree(m));
    }
    let rho = p.p1() / p.p2();
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    let e = k as i32 * (m as i32 - 1);
    let sum = (0..k as i32).fold(BigRational::zero(), |acc, i| {
        acc + rho.pow((m as i32 - 1) * i)
    });
    let first = &half / rho.pow(e - 1);
    let second = sum * &half / rho.pow(e - m as i32);
    Ok(first + second + half)
}

/// The sum ratio of the triple reached along the matrix path after `k` cycles.
pub fn r_k_by_path(m: usize, p: &ProbabilityPair, k: u64) -> Result<BigRational> {
    let start = WitnessState::initial(m, p)?;
    Ok(cycle_product(m, p, k).apply(&start.weights).sum_ratio())
}

/// Smallest `k` with `R_k > threshold`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DivergenceCertificate {
    pub m: usize,
    /// The pair the certificate is stated for (`p1 <= p2`).
    pub prob: ProbabilityPair,
    /// True if the input pair was swapped to reach `p1 <= p2`.
    pub reflected: bool,
    pub threshold: BigRational,
    pub k: u64,
    pub r_k: BigRational,
    /// `R_k` recomputed from the matrix path equals the closed form.
    pub path_agrees: bool,
}

pub fn divergence_certificate(
    m: usize,
    p: &ProbabilityPair,
    threshold: &BigRational,
    k_cap: u64,
) -> Result<DivergenceCertificate> {
    if m < 3 {
        return Err(Error::WitnessDegree(m));
    }
    let (p, reflected) = p.normalized();
    let rho = p.p1() / p.p2();
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    let step = rho.pow(m as i32 - 1);
    // Incremental evaluation of the closed form: R_k = 1/2 + A_k + B_k with
    // A_k = 1 / (2 rho^{k(m-1)-1}), B_k = S_k / (2 rho^{k(m-1)-m}), S_k = Σ_{i<k} rho^{(m-1)i}.
    let mut sum = BigRational::zero();
    let mut rho_pow_i = BigRational::one(); // rho^{(m-1)(k-1)} before the update
    let mut rho_pow_k = BigRational::one(); // rho^{(m-1)k}
    for k in 1..=k_cap {
        sum += &rho_pow_i;
        rho_pow_i *= &step;
        rho_pow_k *= &step;
        let a = &half * &rho / &rho_pow_k;
        let b = &sum * &half * rho.pow(m as i32) / &rho_pow_k;
        let r = a + b + &half;
        if &r > threshold {
            let by_path = r_k_by_path(m, &p, k)?;
            return Ok(DivergenceCertificate {
                m,
                prob: p,
                reflected,
                threshold: threshold.clone(),
                k,
                path_agrees: by_path == r,
                r_k: r,
            });
        }
    }
    Err(Error::ResourceCap {
        what: "certificate search k",
        needed: format!("> {k_cap}"),
        cap: k_cap as usize,
    })
}

/// Compares the matrix path with the triple read from the full level `X_{km+2}`.
pub fn cross_validate(
    m: usize,
    p: &ProbabilityPair,
    k: u64,
    level: &Level,
) -> Result<(), CheckFailure> {
    let fail = |index: usize, detail: String| CheckFailure {
        n: level.rank(),
        index,
        detail,
    };
    let state = WitnessState::after_cycles(m, p, k).map_err(|e| fail(0, e.to_string()))?;
    if level.rank() != state.n || level.m() != m || level.prob() != p {
        return Err(fail(
            0,
            format!(
                "level is rank {} m={}, path is rank {} m={m}",
                level.rank(),
                level.m(),
                state.n
            ),
        ));
    }
    let j = level.find_point(&state.location).ok_or_else(|| {
        fail(
            0,
            format!("witness point {} is not in the level", state.location),
        )
    })?;
    let triple = level.weight_triple(j).map_err(|e| fail(j, e.to_string()))?;
    if triple != state.weights {
        return Err(fail(
            j,
            format!(
                "level triple {triple} but matrix path gives {}",
                state.weights
            ),
        ));
    }
    let labels = [level.label(j), level.label(j + 1), level.label(j + 2)];
    let expected = expected_labels(state.n, m);
    if labels != expected || labels != state.labels {
        return Err(fail(
            j,
            format!(
                "labels {}{}{} but expected {}{}{}",
                labels[0], labels[1], labels[2], expected[0], expected[1], expected[2]
            ),
        ));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::PisotField;

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn p(n: i64, d: i64) -> ProbabilityPair {
        ProbabilityPair::from_ratio(n, d).unwrap()
    }

    #[test]
    fn initial_triples() {
        let s = WitnessState::initial(3, &p(1, 2)).unwrap();
        assert_eq!(s.weights, WeightTriple::new(r(1, 4), r(1, 4), r(1, 4)));
        assert!(s.location.is_zero());
        let s = WitnessState::initial(4, &p(1, 3)).unwrap();
        assert_eq!(s.weights, WeightTriple::new(r(1, 9), r(2, 9), r(2, 9)));
        assert_eq!(
            WitnessState::initial(2, &p(1, 2)),
            Err(Error::WitnessDegree(2))
        );
    }

    #[test]
    fn transition_schedule() {
        let q = p(1, 2);
        assert_eq!(transition_for(2, 3, &q), m1(&q));
        assert_eq!(transition_for(3, 3, &q), m1(&q));
        assert_eq!(transition_for(4, 3, &q), m2(&q));
        let t = WeightTriple::new(r(1, 1), r(2, 1), r(3, 1));
        let q = p(1, 3);
        assert_eq!(
            m1(&q).apply(&t),
            WeightTriple::new(r(2, 3), r(2, 3), r(4, 3))
        );
    }

    #[test]
    fn labels_follow_closed_form() {
        for m in 3..=6 {
            let mut s = WitnessState::initial(m, &p(1, 2)).unwrap();
            for _ in 0..4 * m {
                assert_eq!(s.labels, expected_labels(s.n, m), "m={m} n={}", s.n);
                s = s.step();
            }
        }
    }

    #[test]
    fn cycle_power_first_power() {
        let q = p(1, 3);
        let c = cycle_power(3, &q, 1);
        assert_eq!(c, &m2(&q) * &m1(&q).pow(2));
        assert_eq!(c.entry(0, 0), &r(8, 27));
        assert_eq!(c.entry(0, 1), &r(1, 27));
        assert_eq!(c.entry(1, 1), &r(2, 27));
        assert!(c.is_nonnegative());
    }

    #[test]
    fn cycle_power_matches_product() {
        for m in 3..=5 {
            for q in [p(1, 2), p(1, 3), p(2, 5)] {
                for k in 1..=5 {
                    assert_eq!(
                        cycle_power(m, &q, k),
                        cycle_product(m, &q, k),
                        "m={m} k={k}"
                    );
                }
            }
        }
    }

    #[test]
    fn uniform_r_k() {
        for m in 3..=6 {
            for k in 1..=8 {
                assert_eq!(r_k(m, &p(1, 2), k).unwrap(), r(k as i64 + 2, 2));
            }
        }
    }

    #[test]
    fn r_k_two_ways_and_monotone() {
        for m in 3..=5 {
            for q in [p(1, 2), p(1, 3), p(1, 4), p(2, 5)] {
                let mut prev = BigRational::zero();
                for k in 1..=6 {
                    let formula = r_k(m, &q, k).unwrap();
                    assert_eq!(formula, r_k_by_path(m, &q, k).unwrap());
                    let state = WitnessState::after_cycles(m, &q, k).unwrap();
                    assert_eq!(state.ratio(), formula);
                    assert!(formula > prev);
                    prev = formula;
                }
            }
        }
        assert!(r_k(3, &p(2, 3), 1).is_err());
    }

    #[test]
    fn certificates() {
        let c = divergence_certificate(3, &p(1, 2), &r(10, 1), 100).unwrap();
        assert_eq!(c.k, 19);
        assert_eq!(c.r_k, r(21, 2));
        assert!(c.path_agrees);
        let c = divergence_certificate(3, &p(1, 2), &r(0, 1), 100).unwrap();
        assert_eq!(c.k, 1);
        // first term alone is 3^{2k-1}/2 for p = (1/4, 3/4)
        let c = divergence_certificate(3, &p(1, 4), &r(10, 1), 100).unwrap();
        assert_eq!(c.k, 2);
        assert!(c.path_agrees);
        let swapped = divergence_certificate(3, &p(3, 4), &r(10, 1), 100).unwrap();
        assert!(swapped.reflected);
        assert_eq!(swapped.k, c.k);
        assert_eq!(swapped.r_k, c.r_k);
        assert!(matches!(
            divergence_certificate(3, &p(1, 2), &r(1000, 1), 5),
            Err(Error::ResourceCap { .. })
        ));
    }

    #[test]
    fn cross_validation_small() {
        let field = PisotField::new(3).unwrap();
        let q = p(1, 3);
        for k in 1..=2 {
            let level = Level::build(&field, &q, 3 * k as u32 + 2).unwrap();
            cross_validate(3, &q, k, &level).unwrap();
        }
    }
}
