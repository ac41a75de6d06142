//! Partition levels `X_n`: exact points, gap labels and address weights.
//!
//! `X_{n+1}` is built from `X_n` by keeping every point and inserting
//! `x + d_1 / β^{n+1}` after each weighted point `x`. When the gap after `x`
//! is labelled `d_m` the inserted point coincides with the next old point and
//! the two address classes merge. Weights are kept as integer numerators over
//! the common denominator `q^n`, where `p1 = a/q` and `p2 = b/q`.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::algebra::{FieldElement, GapAlphabet, PisotField};
use crate::error::{Error, Result};
use crate::matrix::WeightTriple;
use crate::prob::ProbabilityPair;
use crate::substitution::{self, image_len, LabelWord, Letter};
use crate::witness;

/// Default cap on the number of points of a level.
pub const DEFAULT_POINT_CAP: usize = 20_000_000;

/// Knobs for [`Level::refine_with`].
#[derive(Clone, Copy, Debug)]
pub struct RefineOptions {
    /// Re-derive every merge decision by exact comparison of points.
    pub audit: bool,
    pub max_points: usize,
}

impl Default for RefineOptions {
    fn default() -> Self {
        RefineOptions {
            audit: false,
            max_points: DEFAULT_POINT_CAP,
        }
    }
}

/// Where and why a structural check failed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckFailure {
    pub n: u32,
    pub index: usize,
    pub detail: String,
}

impl fmt::Display for CheckFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "rank {}, index {}: {}", self.n, self.index, self.detail)
    }
}

/// Deliberate corruptions used to exercise the checks.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Fault {
    /// Moves point `j + 1` so that gap `j` becomes `(d_1 + d_2) / β^n`.
    WidenGap(usize),
    /// Swaps labels `j` and `j + 1`.
    SwapLabels(usize),
}

/// One partition level `X_n` with labels and weights.
#[derive(Clone, Debug)]
pub struct Level {
    n: u32,
    field: PisotField,
    alphabet: GapAlphabet,
    points: Vec<FieldElement>,
    labels: LabelWord,
    weights: Vec<BigInt>,
    denom: BigInt,
    prob: ProbabilityPair,
}

/// Largest value of `max(r_j, 1/r_j)` over the triples of a level.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ImbalanceReport {
    pub n: u32,
    pub num_points: usize,
    pub max_ratio: BigRational,
    pub argmax_index: usize,
}

impl Level {
    /// `X_1 = {0, d_1/β, 1}` with weights `(p1, p2)`.
    pub fn initial(field: &PisotField, prob: &ProbabilityPair) -> Level {
        let m = field.degree();
        let alphabet = field.gap_alphabet();
        let points = vec![
            FieldElement::zero(m).rescaled(1),
            alphabet.get(1).div_beta(),
            FieldElement::one(m).rescaled(1),
        ];
        Level {
            n: 1,
            field: field.clone(),
            alphabet,
            points,
            labels: LabelWord::from_indices(&[1, 0]),
            weights: vec![prob.num1().clone(), prob.num2().clone()],
            denom: prob.denom().clone(),
            prob: prob.clone(),
        }
    }

    /// Builds `X_n` by refining from `X_1`.
    pub fn build(field: &PisotField, prob: &ProbabilityPair, n: u32) -> Result<Level> {
        Self::build_with(field, prob, n, RefineOptions::default())
    }

    pub fn build_with(
        field: &PisotField,
        prob: &ProbabilityPair,
        n: u32,
        opts: RefineOptions,
    ) -> Result<Level> {
        assert!(n >= 1, "levels start at rank 1");
        let mut level = Self::initial(field, prob);
        while level.n < n {
            level = level.refine_with(opts)?;
        }
        Ok(level)
    }

    /// All levels `X_1, ..., X_n`.
    pub fn sequence(field: &PisotField, prob: &ProbabilityPair, n: u32) -> Result<Vec<Level>> {
        let mut out = vec![Self::initial(field, prob)];
        while out.len() < n as usize {
            let next = out.last().expect("nonempty").refine()?;
            out.push(next);
        }
        Ok(out)
    }

    pub fn refine(&self) -> Result<Level> {
        self.refine_with(RefineOptions::default())
    }

    /// The level of rank `n + 1`.
    pub fn refine_with(&self, opts: RefineOptions) -> Result<Level> {
        let m = self.m();
        let n1 = self.n + 1;
        let new_len = self
            .labels
            .letters()
            .iter()
            .map(|&l| image_len(l, m))
            .sum::<usize>()
            + 1;
        if new_len > opts.max_points {
            return Err(Error::ResourceCap {
                what: "level points",
                needed: new_len.to_string(),
                cap: opts.max_points,
            });
        }
        let step = self.alphabet.get(1).rescaled(0);
        let step = FieldElement::new(step.coeffs(), n1, m);
        let (a, b) = (self.prob.num1(), self.prob.num2());

        let mut points = Vec::with_capacity(new_len);
        let mut weights = Vec::with_capacity(new_len - 1);
        let last = self.weights.len();
        for j in 0..last {
            let label = self.labels.0[j];
            let x = self.points[j].rescaled(n1);
            let mut w = a * &self.weights[j];
            if j > 0 && self.labels.0[j - 1].0 == m {
                w += b * &self.weights[j - 1];
            }
            let inserted = (label.0 != m).then(|| &x + &step);
            if opts.audit {
                self.audit_merge(j, &x, &step)?;
            }
            points.push(x);
            weights.push(w);
            if let Some(y) = inserted {
                points.push(y);
                weights.push(b * &self.weights[j]);
            }
        }
        points.push(self.points[last].rescaled(n1));

        let labels = substitution::apply(&self.labels, m)?;
        debug_assert_eq!(labels.len() + 1, points.len());
        Ok(Level {
            n: n1,
            field: self.field.clone(),
            alphabet: self.alphabet.clone(),
            points,
            labels,
            weights,
            denom: &self.denom * self.prob.denom(),
            prob: self.prob.clone(),
        })
    }

    /// Checks by exact comparison that the point inserted after `x_j` merges
    /// with `x_{j+1}` exactly when the label of `x_j` is `d_m`.
    fn audit_merge(&self, j: usize, x: &FieldElement, step: &FieldElement) -> Result<()> {
        let inserted = x + step;
        let next = &self.points[j + 1];
        let ord = self.field.try_compare(&inserted, next)?;
        let merges = self.labels.0[j].0 == self.m();
        let ok = match ord {
            Ordering::Equal => merges,
            Ordering::Less => !merges && self.field.try_compare(x, &inserted)? == Ordering::Less,
            Ordering::Greater => false,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::AuditMismatch {
                n: self.n,
                index: j,
                detail: format!(
                    "label {} but inserted point compares {:?} to the next point",
                    self.labels.0[j], ord
                ),
            })
        }
    }

    pub fn rank(&self) -> u32 {
        self.n
    }

    pub fn m(&self) -> usize {
        self.field.degree()
    }

    pub fn field(&self) -> &PisotField {
        &self.field
    }

    pub fn alphabet(&self) -> &GapAlphabet {
        &self.alphabet
    }

    pub fn prob(&self) -> &ProbabilityPair {
        &self.prob
    }

    /// `#X_n`.
    pub fn num_points(&self) -> usize {
        self.points.len()
    }

    /// Points `a_{n,0} = 0 < ... < a_{n,#X_n - 1} = 1`, all over `β^n`.
    pub fn points(&self) -> &[FieldElement] {
        &self.points
    }

    pub fn labels(&self) -> &LabelWord {
        &self.labels
    }

    /// Label of the weighted point `j` (the letter of the gap after it).
    pub fn label(&self, j: usize) -> Letter {
        self.labels.0[j]
    }

    /// Weight numerators over [`Level::weight_denominator`].
    pub fn weight_numerators(&self) -> &[BigInt] {
        &self.weights
    }

    /// `q^n`.
    pub fn weight_denominator(&self) -> &BigInt {
        &self.denom
    }

    pub fn weight(&self, j: usize) -> BigRational {
        BigRational::new(self.weights[j].clone(), self.denom.clone())
    }

    pub fn weights(&self) -> Vec<BigRational> {
        (0..self.weights.len()).map(|j| self.weight(j)).collect()
    }

    /// Number of triples `(a_j, a_{j+1}, a_{j+2})` of weighted points.
    pub fn num_triples(&self) -> usize {
        self.weights.len().saturating_sub(2)
    }

    pub fn weight_triple(&self, j: usize) -> Result<WeightTriple> {
        if j + 2 >= self.weights.len() {
            return Err(Error::IndexOutOfRange {
                index: j,
                len: self.num_triples(),
            });
        }
        Ok(WeightTriple::new(
            self.weight(j),
            self.weight(j + 1),
            self.weight(j + 2),
        ))
    }

    /// Index of `x` among the points, by exact search.
    pub fn find_point(&self, x: &FieldElement) -> Option<usize> {
        let mut lo = 0usize;
        let mut hi = self.points.len();
        while lo < hi {
            let mid = (lo + hi) / 2;
            match self.field.compare(&self.points[mid], x) {
                Ordering::Less => lo = mid + 1,
                Ordering::Greater => hi = mid,
                Ordering::Equal => return Some(mid),
            }
        }
        None
    }

    /// For each weighted point `j`, its index in the next level.
    pub fn child_indices(&self) -> Vec<usize> {
        let m = self.m();
        let mut acc = 0;
        self.labels
            .letters()
            .iter()
            .map(|&l| {
                let here = acc;
                acc += image_len(l, m);
                here
            })
            .collect()
    }

    /// Exact maximum of `max(r_j, 1/r_j)`, `r_j = (w_j + w_{j+1}) / (w_{j+1} + w_{j+2})`,
    /// over `0 <= j <= #X_n - 4`.
    pub fn max_imbalance(&self) -> Result<ImbalanceReport> {
        if self.n < 2 || self.points.len() < 4 {
            return Err(Error::LevelTooSmall {
                n: self.n,
                points: self.points.len(),
                needed: 4,
            });
        }
        let w = &self.weights;
        // best = best_num / best_den, both sums of numerators over the same q^n
        let mut best_num = BigInt::one();
        let mut best_den = BigInt::one();
        let mut argmax = 0;
        for j in 0..w.len() - 2 {
            let left = &w[j] + &w[j + 1];
            let right = &w[j + 1] + &w[j + 2];
            let (big, small) = if left >= right {
                (left, right)
            } else {
                (right, left)
            };
            if &big * &best_den > &best_num * &small {
                best_num = big;
                best_den = small;
                argmax = j;
            }
        }
        Ok(ImbalanceReport {
            n: self.n,
            num_points: self.points.len(),
            max_ratio: BigRational::new(best_num, best_den),
            argmax_index: argmax,
        })
    }

    /// Every scaled gap `β^n (a_{j+1} - a_j)` is a member of the alphabet.
    pub fn check_gap_lemma(&self) -> Result<(), CheckFailure> {
        for j in 0..self.points.len() - 1 {
            if self.gap_letter(j).is_none() {
                return Err(self.failure(j, "scaled gap is not a letter of the alphabet"));
            }
        }
        Ok(())
    }

    /// The letter equal to the exact scaled gap after point `j`, if any.
    pub fn gap_letter(&self, j: usize) -> Option<Letter> {
        let gap = &self.points[j + 1] - &self.points[j];
        let s = gap.scale();
        let mut scaled = FieldElement::new(gap.coeffs(), s.saturating_sub(self.n), self.m());
        for _ in s..self.n {
            scaled = scaled.mul_beta();
        }
        self.alphabet.index_of(&scaled).map(Letter)
    }

    /// Labels agree with the exact gaps and with `σ^n(d_0)`.
    pub fn check_label_correspondence(&self) -> Result<(), CheckFailure> {
        if self.labels.len() + 1 != self.points.len() {
            return Err(self.failure(0, "label word length does not match the point count"));
        }
        for j in 0..self.labels.len() {
            match self.gap_letter(j) {
                Some(l) if l == self.labels.0[j] => {}
                Some(l) => {
                    return Err(self.failure(
                        j,
                        &format!("stored label {} but exact gap is {}", self.labels.0[j], l),
                    ))
                }
                None => return Err(self.failure(j, "exact gap is not a letter")),
            }
        }
        let word =
            substitution::iterate(self.n, self.m()).map_err(|e| self.failure(0, &e.to_string()))?;
        if let Some(j) = (0..word.len()).find(|&j| word.0[j] != self.labels.0[j]) {
            return Err(self.failure(
                j,
                &format!(
                    "stored label {} but the substitution gives {}",
                    self.labels.0[j], word.0[j]
                ),
            ));
        }
        Ok(())
    }

    /// For every weighted point `a_j` with `j <= #X_n - 3`:
    /// `a_{j+1} <= a_j + β^{-n} <= a_{j+2}`, by exact comparison.
    pub fn check_cover_lemma(&self) -> Result<(), CheckFailure> {
        let unit = FieldElement::beta_inverse_power(self.n, self.m());
        for j in 0..self.points.len().saturating_sub(2) {
            let reach = &self.points[j] + &unit;
            let cmp = |a: &FieldElement, b: &FieldElement| {
                self.field
                    .try_compare(a, b)
                    .map_err(|e| self.failure(j, &e.to_string()))
            };
            if cmp(&self.points[j + 1], &reach)? == Ordering::Greater {
                return Err(self.failure(j, "basic interval is longer than the cylinder"));
            }
            if cmp(&reach, &self.points[j + 2])? == Ordering::Greater {
                return Err(self.failure(j, "cylinder overruns two basic intervals"));
            }
        }
        Ok(())
    }

    /// Points strictly increase from 0 to 1.
    pub fn check_points_ordered(&self) -> Result<(), CheckFailure> {
        let m = self.m();
        if !self.points[0].is_zero() {
            return Err(self.failure(0, "first point is not 0"));
        }
        if self.points[self.points.len() - 1] != FieldElement::one(m) {
            return Err(self.failure(self.points.len() - 1, "last point is not 1"));
        }
        for j in 0..self.points.len() - 1 {
            if self.field.compare(&self.points[j], &self.points[j + 1]) != Ordering::Less {
                return Err(self.failure(j, "points not strictly increasing"));
            }
        }
        Ok(())
    }

    /// All weights positive and summing to one.
    pub fn check_weights(&self) -> Result<(), CheckFailure> {
        if let Some(j) = self.weights.iter().position(|w| *w <= BigInt::zero()) {
            return Err(self.failure(j, "nonpositive weight"));
        }
        let total: BigInt = self.weights.iter().sum();
        if total != self.denom {
            return Err(self.failure(0, &format!("weights sum to {total}/{}", self.denom)));
        }
        Ok(())
    }

    /// Applies a deliberate corruption.
    pub fn inject_fault(&mut self, fault: Fault) {
        match fault {
            Fault::WidenGap(j) => {
                let m = self.m();
                let wide = &self.alphabet.get(1).clone() + self.alphabet.get(2);
                let wide = FieldElement::new(wide.coeffs(), self.n, m);
                self.points[j + 1] = &self.points[j] + &wide;
            }
            Fault::SwapLabels(j) => self.labels.0.swap(j, j + 1),
        }
    }

    fn failure(&self, index: usize, detail: &str) -> CheckFailure {
        CheckFailure {
            n: self.n,
            index,
            detail: detail.to_string(),
        }
    }
}

/// Checks the child triples predicted by the two-pattern transition matrices.
///
/// For each triple `(x_0, x_1, x_2)` of `parent` whose labels `w_1 w_2` avoid
/// `d_m` (matrix `M_1`) or equal `d_m d_1` (matrix `M_2`), the weights of the
/// three points following `x_0` in `child` must equal the matrix image.
/// Returns the number of triples checked.
pub fn check_matrix_consistency(parent: &Level, child: &Level) -> Result<usize, CheckFailure> {
    let m = parent.m();
    let m1 = witness::m1(parent.prob());
    let m2 = witness::m2(parent.prob());
    let index = parent.child_indices();
    let mut checked = 0;
    for (j, &start) in index.iter().enumerate().take(parent.num_triples()) {
        let (w1, w2) = (parent.label(j).0, parent.label(j + 1).0);
        let matrix = if w1 != m && w2 != m {
            &m1
        } else if w1 == m && w2 == 1 {
            &m2
        } else {
            continue;
        };
        let z1 = start + 1;
        let predicted = matrix.apply(&parent.weight_triple(j).expect("triple in range"));
        let actual = child.weight_triple(z1).map_err(|e| CheckFailure {
            n: child.rank(),
            index: z1,
            detail: e.to_string(),
        })?;
        if predicted != actual {
            return Err(CheckFailure {
                n: child.rank(),
                index: z1,
                detail: format!("matrix predicts {predicted}, level has {actual}"),
            });
        }
        checked += 1;
    }
    Ok(checked)
}

/// `#X_n` predicted from the letter-count recurrence.
pub fn forecast_points(n: u32, m: usize) -> BigUint {
    substitution::word_length_forecast(n, m) + BigUint::one()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> ProbabilityPair {
        ProbabilityPair::from_ratio(n, d).unwrap()
    }

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn first_levels() {
        let field = PisotField::new(2).unwrap();
        let x1 = Level::initial(&field, &q(1, 3));
        assert_eq!(x1.num_points(), 3);
        assert_eq!(x1.weights(), vec![r(1, 3), r(2, 3)]);
        assert_eq!(x1.points()[1], field.gap_alphabet().get(1).div_beta());
        let x2 = Level::build(&field, &ProbabilityPair::uniform(), 2).unwrap();
        assert_eq!(x2.weights(), vec![r(1, 4); 4]);
        assert_eq!(x2.labels(), &LabelWord::from_indices(&[1, 2, 1, 0]));
        let x2 = x1.refine().unwrap();
        assert_eq!(x2.weights(), vec![r(1, 9), r(2, 9), r(2, 9), r(4, 9)]);
    }

    #[test]
    fn counts_match_forecast() {
        for m in 2..=4 {
            let field = PisotField::new(m).unwrap();
            for level in Level::sequence(&field, &q(1, 3), 10).unwrap() {
                assert_eq!(
                    BigUint::from(level.num_points()),
                    forecast_points(level.rank(), m)
                );
                level.check_weights().unwrap();
                level.check_points_ordered().unwrap();
            }
        }
    }

    #[test]
    fn audit_agrees_with_labels() {
        for m in 2..=5 {
            let field = PisotField::new(m).unwrap();
            let opts = RefineOptions {
                audit: true,
                ..RefineOptions::default()
            };
            Level::build_with(&field, &q(2, 5), 9, opts).unwrap();
        }
    }

    #[test]
    fn point_cap() {
        let field = PisotField::new(3).unwrap();
        let opts = RefineOptions {
            audit: false,
            max_points: 10,
        };
        assert!(matches!(
            Level::build_with(&field, &q(1, 2), 6, opts),
            Err(Error::ResourceCap { .. })
        ));
    }

    #[test]
    fn mirrored_weights() {
        let field = PisotField::new(3).unwrap();
        let a = Level::build(&field, &q(1, 4), 7).unwrap();
        let b = Level::build(&field, &q(3, 4), 7).unwrap();
        let mut w = b.weights();
        w.reverse();
        assert_eq!(a.weights(), w);
        assert_eq!(
            a.max_imbalance().unwrap().max_ratio,
            b.max_imbalance().unwrap().max_ratio
        );
    }

    #[test]
    fn uniform_golden_imbalance_is_small() {
        let field = PisotField::new(2).unwrap();
        for level in Level::sequence(&field, &ProbabilityPair::uniform(), 12)
            .unwrap()
            .iter()
            .skip(1)
        {
            assert!(level.max_imbalance().unwrap().max_ratio <= r(2, 1));
        }
    }

    #[test]
    fn locating_points() {
        let field = PisotField::new(3).unwrap();
        let level = Level::build(&field, &q(1, 2), 6).unwrap();
        for (j, x) in level.points().iter().enumerate() {
            assert_eq!(level.find_point(x), Some(j));
        }
        let off = &level.points()[3] + &FieldElement::beta_inverse_power(9, 3);
        assert_eq!(level.find_point(&off), None);
        let idx = level.child_indices();
        let child = level.refine().unwrap();
        for (j, &i) in idx.iter().enumerate() {
            assert_eq!(child.points()[i], level.points()[j]);
        }
    }

    #[test]
    fn faults_are_caught() {
        let field = PisotField::new(3).unwrap();
        let mut level = Level::build(&field, &q(1, 2), 6).unwrap();
        level.check_gap_lemma().unwrap();
        level.check_label_correspondence().unwrap();
        level.check_cover_lemma().unwrap();
        let mut swapped = level.clone();
        let j = (0..level.num_points() - 2)
            .find(|&j| level.label(j) != level.label(j + 1))
            .unwrap();
        swapped.inject_fault(Fault::SwapLabels(j));
        assert_eq!(swapped.check_label_correspondence().unwrap_err().index, j);
        level.inject_fault(Fault::WidenGap(5));
        assert!(level.check_gap_lemma().is_err());
    }
}
