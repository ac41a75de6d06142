use std::fmt;
use std::ops::Mul;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Three consecutive point weights `(W(x_0), W(x_1), W(x_2))`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WeightTriple(pub [BigRational; 3]);

impl WeightTriple {
    pub fn new(w0: BigRational, w1: BigRational, w2: BigRational) -> Self {
        WeightTriple([w0, w1, w2])
    }

    pub fn entries(&self) -> &[BigRational; 3] {
        &self.0
    }

    /// `(w_0 + w_1) / (w_1 + w_2)`.
    pub fn sum_ratio(&self) -> BigRational {
        let [a, b, c] = &self.0;
        (a + b) / (b + c)
    }

    pub fn is_positive(&self) -> bool {
        self.0.iter().all(Signed::is_positive)
    }
}

impl fmt::Display for WeightTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c] = &self.0;
        write!(f, "({a}, {b}, {c})")
    }
}

/// A 3x3 matrix of exact rationals acting on weight triples.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TransitionMatrix(pub [[BigRational; 3]; 3]);

impl TransitionMatrix {
    pub fn zero() -> Self {
        TransitionMatrix(std::array::from_fn(|_| {
            std::array::from_fn(|_| BigRational::zero())
        }))
    }

    pub fn identity() -> Self {
        let mut out = Self::zero();
        for i in 0..3 {
            out.0[i][i] = BigRational::one();
        }
        out
    }

    pub fn from_rows(rows: [[BigRational; 3]; 3]) -> Self {
        TransitionMatrix(rows)
    }

    pub fn entry(&self, row: usize, col: usize) -> &BigRational {
        &self.0[row][col]
    }

    pub fn is_nonnegative(&self) -> bool {
        self.0.iter().flatten().all(|x| !x.is_negative())
    }

    pub fn scaled(&self, k: &BigRational) -> Self {
        TransitionMatrix(std::array::from_fn(|i| {
            std::array::from_fn(|j| &self.0[i][j] * k)
        }))
    }

    pub fn apply(&self, t: &WeightTriple) -> WeightTriple {
        WeightTriple(std::array::from_fn(|i| {
            (0..3).fold(BigRational::zero(), |acc, j| acc + &self.0[i][j] * &t.0[j])
        }))
    }

    /// `self^k` by repeated squaring.
    pub fn pow(&self, mut k: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::identity();
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            k >>= 1;
        }
        acc
    }
}

impl Mul for &TransitionMatrix {
    type Output = TransitionMatrix;

    fn mul(self, rhs: &TransitionMatrix) -> TransitionMatrix {
        TransitionMatrix(std::array::from_fn(|i| {
            std::array::from_fn(|j| {
                (0..3).fold(BigRational::zero(), |acc, k| {
                    acc + &self.0[i][k] * &rhs.0[k][j]
                })
            })
        }))
    }
}

impl fmt::Display for TransitionMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, row) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, " / ")?;
            }
            write!(f, "{}, {}, {}", row[0], row[1], row[2])?;
        }
        Ok(())
    }
}
