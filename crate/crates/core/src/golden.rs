//! The golden-ratio case `m = 2`.
//!
//! Labels are rewritten over `{a0, a, b, D}` (`a = d_1`, `b = d_2`, `D = d_0`,
//! and the first gap of every level is `a0`). Every triple of consecutive
//! weighted points then carries one of six label words, and each triple of
//! `X_{n+1}` descends from exactly one triple of `X_n`. The resulting
//! offspring graph comes with one 3x3 weight matrix per edge.
//!
//! At `p = (1/2, 1/2)` every weight triple is 2-balanced; for `p1 < p2` the
//! path `(S0 S2)(S1 S2)^{ℓ-1} S1` yields sum ratios `R_ℓ` that grow without bound.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::algebra::PisotField;
use crate::error::{Error, Result};
use crate::levels::{CheckFailure, Level};
use crate::matrix::{TransitionMatrix, WeightTriple};
use crate::prob::ProbabilityPair;
use crate::substitution::LabelWord;

/// Letters of the modified alphabet.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum GoldenLetter {
    A0,
    A,
    B,
    D,
}

impl GoldenLetter {
    pub fn image(self) -> &'static [GoldenLetter] {
        use GoldenLetter::*;
        match self {
            A0 => &[A0, B],
            A => &[A, B],
            B => &[A],
            D => &[A, D],
        }
    }
}

impl fmt::Display for GoldenLetter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GoldenLetter::A0 => "a0",
            GoldenLetter::A => "a",
            GoldenLetter::B => "b",
            GoldenLetter::D => "D",
        })
    }
}

pub type GoldenWord = Vec<GoldenLetter>;

pub fn modified_substitution(word: &[GoldenLetter]) -> GoldenWord {
    word.iter()
        .flat_map(|l| l.image().iter().copied())
        .collect()
}

/// `σ^{n-1}(a0 D)`, the modified label word of `X_n`.
pub fn level_word(n: u32) -> GoldenWord {
    assert!(n >= 1);
    let mut w = vec![GoldenLetter::A0, GoldenLetter::D];
    for _ in 1..n {
        w = modified_substitution(&w);
    }
    w
}

/// Rewrites an `m = 2` label word over `{a0, a, b, D}`.
pub fn from_labels(labels: &LabelWord) -> Result<GoldenWord> {
    labels
        .letters()
        .iter()
        .enumerate()
        .map(|(i, l)| match (i, l.index()) {
            (0, 1) => Ok(GoldenLetter::A0),
            (_, 1) => Ok(GoldenLetter::A),
            (_, 2) => Ok(GoldenLetter::B),
            (_, 0) => Ok(GoldenLetter::D),
            (_, j) => Err(Error::InvalidLetter { index: j, m: 2 }),
        })
        .collect()
}

/// The six label words a triple can carry.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum TripleState {
    S0,
    S1,
    S2,
    S3,
    H1,
    H2,
}

impl TripleState {
    pub const ALL: [TripleState; 6] = [
        TripleState::S0,
        TripleState::S1,
        TripleState::S2,
        TripleState::S3,
        TripleState::H1,
        TripleState::H2,
    ];

    pub fn word(self) -> [GoldenLetter; 3] {
        use GoldenLetter::*;
        match self {
            TripleState::S0 => [A0, B, A],
            TripleState::S1 => [A, B, A],
            TripleState::S2 => [B, A, A],
            TripleState::S3 => [B, A, D],
            TripleState::H1 => [A, A, B],
            TripleState::H2 => [B, A, B],
        }
    }

    pub fn from_word(w: &[GoldenLetter]) -> Option<TripleState> {
        Self::ALL.into_iter().find(|s| s.word() == w)
    }

    pub fn name(self) -> &'static str {
        match self {
            TripleState::S0 => "S0",
            TripleState::S1 => "S1",
            TripleState::S2 => "S2",
            TripleState::S3 => "S3",
            TripleState::H1 => "H1",
            TripleState::H2 => "H2",
        }
    }

    pub fn parse(s: &str) -> Option<TripleState> {
        Self::ALL.into_iter().find(|t| t.name() == s)
    }
}

impl fmt::Display for TripleState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// The offspring edges as tabulated with their matrices.
pub const TABULATED_EDGES: [(TripleState, TripleState); 11] = {
    use TripleState::*;
    [
        (S0, S0),
        (S0, S2),
        (S1, S2),
        (S0, H1),
        (S1, H1),
        (H1, H2),
        (H1, S1),
        (S2, S1),
        (H2, S1),
        (S3, S1),
        (S3, S3),
    ]
};

/// Offspring of a triple as `(offset, state)`, derived from the substitution.
///
/// With `z_0 = x_0` and `σ(t(x_0) t(x_1) t(x_2)) = u_1 u_2 ...`, the triple of
/// `X_{n+1}` starting at `z_i` has labels `u_{i+1} u_{i+2} u_{i+3}`. A triple
/// owns the children that start in `(x_0, x_1]`; the root `a0...` also owns the
/// one starting at `x_0 = 0`, and the last triple `..D` also owns every
/// complete child starting before `x_2`.
pub fn offspring_windows(s: TripleState) -> Vec<(usize, TripleState)> {
    let w = s.word();
    let image = modified_substitution(&w);
    let start = usize::from(w[0] != GoldenLetter::A0);
    let end = if w[2] == GoldenLetter::D {
        image.len() - 3
    } else {
        w[0].image().len()
    };
    (start..=end)
        .map(|o| {
            let t = TripleState::from_word(&image[o..o + 3])
                .expect("every window of an image is a triple state");
            (o, t)
        })
        .collect()
}

pub fn offspring_states(s: TripleState) -> Vec<TripleState> {
    offspring_windows(s).into_iter().map(|(_, t)| t).collect()
}

/// All derived edges, sorted.
pub fn derived_edges() -> BTreeSet<(TripleState, TripleState)> {
    TripleState::ALL
        .into_iter()
        .flat_map(|s| offspring_states(s).into_iter().map(move |t| (s, t)))
        .collect()
}

/// The offspring relation in `FROM TO` lines.
pub fn offspring_graph_text() -> String {
    derived_edges()
        .into_iter()
        .map(|(s, t)| format!("{s} {t}\n"))
        .collect()
}

/// `M_{ST}` for a tabulated edge.
pub fn transition_matrix(
    s: TripleState,
    t: TripleState,
    p: &ProbabilityPair,
) -> Result<TransitionMatrix> {
    use TripleState::*;
    let (p1, p2, z) = (p.p1(), p.p2(), BigRational::zero());
    let rows = match (s, t) {
        (S0, S0) => [
            [p1.clone(), z.clone(), z.clone()],
            [p2, z.clone(), z.clone()],
            [z.clone(), p1, z],
        ],
        (S0, S2) | (S1, S2) => [
            [p2.clone(), z.clone(), z.clone()],
            [z.clone(), p1.clone(), z.clone()],
            [z, p2, p1],
        ],
        (S0, H1) | (S1, H1) => [
            [z.clone(), p1.clone(), z.clone()],
            [z.clone(), p2.clone(), p1],
            [z.clone(), z, p2],
        ],
        (H1, H2) => [
            [p2.clone(), z.clone(), z.clone()],
            [z.clone(), p1, z.clone()],
            [z.clone(), p2, z],
        ],
        (H1, S1) => [
            [z.clone(), p1.clone(), z.clone()],
            [z.clone(), p2, z.clone()],
            [z.clone(), z, p1],
        ],
        (S2, S1) | (H2, S1) | (S3, S1) => [
            [p2.clone(), p1.clone(), z.clone()],
            [z.clone(), p2, z.clone()],
            [z.clone(), z, p1],
        ],
        (S3, S3) => [
            [z.clone(), p2.clone(), z.clone()],
            [z.clone(), z.clone(), p1],
            [z.clone(), z, p2],
        ],
        _ => {
            return Err(Error::NoEdge {
                from: s.to_string(),
                to: t.to_string(),
            })
        }
    };
    Ok(TransitionMatrix::from_rows(rows))
}

/// `(w_1 + w_2) / (w_2 + w_3) ∈ [1/2, 2]`.
pub fn two_balanced(t: &WeightTriple) -> bool {
    let r = t.sum_ratio();
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    let two = BigRational::from_integer(BigInt::from(2));
    half <= r && r <= two
}

/// Exact shape relations at `p = (1/2, 1/2)`: `w_2 = w_1 + w_3` on `H1`, `w_2 = w_3` on `H2`.
pub fn shape_check(state: TripleState, t: &WeightTriple) -> Result<(), String> {
    let [a, b, c] = t.entries();
    match state {
        TripleState::H1 if *b != a + c => Err(format!("H1 triple {t} has w2 != w1 + w3")),
        TripleState::H2 if b != c => Err(format!("H2 triple {t} has w2 != w3")),
        _ => Ok(()),
    }
}

/// A path of triples `Z_2, ..., Z_n`, one offspring step at a time.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Path {
    pub states: Vec<TripleState>,
    pub triples: Vec<WeightTriple>,
    /// Index of the first point of `Z_n` in `X_n`.
    pub index: usize,
}

impl Path {
    pub fn last_state(&self) -> TripleState {
        *self.states.last().expect("paths are nonempty")
    }

    pub fn last_triple(&self) -> &WeightTriple {
        self.triples.last().expect("paths are nonempty")
    }
}

fn check_against(
    level: &Level,
    index: usize,
    state: TripleState,
    triple: &WeightTriple,
) -> Result<(), CheckFailure> {
    let fail = |detail: String| CheckFailure {
        n: level.rank(),
        index,
        detail,
    };
    let word = from_labels(level.labels()).map_err(|e| fail(e.to_string()))?;
    let labels = word
        .get(index..index + 3)
        .ok_or_else(|| fail("triple runs past the level".into()))?;
    if TripleState::from_word(labels) != Some(state) {
        return Err(fail(format!("path state {state} but level labels differ")));
    }
    let actual = level
        .weight_triple(index)
        .map_err(|e| fail(e.to_string()))?;
    if &actual != triple {
        return Err(fail(format!(
            "path triple {triple} but level triple {actual}"
        )));
    }
    Ok(())
}

/// All paths from the rank-2 roots to rank `depth`.
///
/// Each propagated triple is compared with the triple read from the full
/// level at the same location, and every triple of every level must be
/// reached exactly once.
pub fn enumerate_paths(p: &ProbabilityPair, depth: u32) -> Result<Vec<Path>, CheckFailure> {
    let mut out = Vec::new();
    walk_paths(p, depth, |path| {
        if path.states.len() as u32 == depth - 1 {
            out.push(path.clone());
        }
        Ok(())
    })?;
    Ok(out)
}

/// Visits every path prefix (rank by rank) with the same checks as [`enumerate_paths`].
pub fn walk_paths(
    p: &ProbabilityPair,
    depth: u32,
    mut visit: impl FnMut(&Path) -> Result<(), CheckFailure>,
) -> Result<(), CheckFailure> {
    assert!(depth >= 2, "paths start at rank 2");
    let field = PisotField::new(2).expect("m = 2 is valid");
    let wrap = |n: u32, e: Error| CheckFailure {
        n,
        index: 0,
        detail: e.to_string(),
    };
    let mut level = Level::build(&field, p, 2).map_err(|e| wrap(2, e))?;
    let mut frontier: Vec<Path> = Vec::new();
    for index in 0..level.num_triples() {
        let word = from_labels(level.labels()).map_err(|e| wrap(2, e))?;
        let state =
            TripleState::from_word(&word[index..index + 3]).ok_or_else(|| CheckFailure {
                n: 2,
                index,
                detail: "unknown root label".into(),
            })?;
        let triple = level.weight_triple(index).map_err(|e| wrap(2, e))?;
        let path = Path {
            states: vec![state],
            triples: vec![triple],
            index,
        };
        visit(&path)?;
        frontier.push(path);
    }
    for n in 3..=depth {
        let child = level.refine().map_err(|e| wrap(n, e))?;
        let positions = level.child_indices();
        let mut seen = vec![false; child.num_triples()];
        let mut next = Vec::with_capacity(child.num_triples());
        for path in &frontier {
            let s = path.last_state();
            for (offset, t) in offspring_windows(s) {
                let index = positions[path.index] + offset;
                let matrix = transition_matrix(s, t, p).map_err(|e| wrap(n, e))?;
                let triple = matrix.apply(path.last_triple());
                check_against(&child, index, t, &triple)?;
                if std::mem::replace(&mut seen[index], true) {
                    return Err(CheckFailure {
                        n,
                        index,
                        detail: "triple has two ancestors".into(),
                    });
                }
                let mut states = path.states.clone();
                states.push(t);
                let mut triples = path.triples.clone();
                triples.push(triple);
                let extended = Path {
                    states,
                    triples,
                    index,
                };
                visit(&extended)?;
                next.push(extended);
            }
        }
        if let Some(index) = seen.iter().position(|&s| !s) {
            return Err(CheckFailure {
                n,
                index,
                detail: "triple has no ancestor".into(),
            });
        }
        frontier = next;
        level = child;
    }
    Ok(())
}

/// `M = M_{S2 S1} M_{S1 S2}`.
pub fn cycle_matrix(p: &ProbabilityPair) -> TransitionMatrix {
    use TripleState::*;
    let a = transition_matrix(S2, S1, p).expect("tabulated edge");
    let b = transition_matrix(S1, S2, p).expect("tabulated edge");
    &a * &b
}

/// `M^k` in closed form.
pub fn cycle_power_golden(p: &ProbabilityPair, k: u64) -> TransitionMatrix {
    let (p1, p2) = (p.p1(), p.p2());
    let pw = |x: &BigRational, e: u64| num_traits::pow(x.clone(), e as usize);
    let mixed = |from: u64, to: u64| {
        (from..=to).fold(BigRational::zero(), |acc, i| {
            acc + pw(&p1, i) * pw(&p2, 2 * k - i)
        })
    };
    let z = BigRational::zero();
    TransitionMatrix::from_rows([
        [pw(&p2, 2 * k), mixed(2, k + 1), z.clone()],
        [z.clone(), pw(&p1, k) * pw(&p2, k), z.clone()],
        [z, mixed(k, 2 * k - 1), pw(&p1, 2 * k)],
    ])
}

/// The state sequence `(S0 S2)(S1 S2)^{ℓ-1} S1`.
pub fn divergent_path(ell: u64) -> Vec<TripleState> {
    use TripleState::*;
    let mut states = vec![S0, S2];
    for _ in 1..ell {
        states.extend([S1, S2]);
    }
    states.push(S1);
    states
}

/// `R_ℓ`, the sum ratio at the end of [`divergent_path`], by multiplying the
/// edge matrices along the path from `W(Z_2) = (p1², p1 p2, p1 p2)`.
pub fn r_ell(p: &ProbabilityPair, ell: u64) -> Result<BigRational> {
    if p.needs_reflection() {
        return Err(Error::InvalidProbability(format!(
            "R_ell assumes p1 <= p2, got {p}; reflect first"
        )));
    }
    let (p1, p2) = (p.p1(), p.p2());
    let mut t = WeightTriple::new(&p1 * &p1, &p1 * &p2, &p1 * &p2);
    for pair in divergent_path(ell).windows(2) {
        t = transition_matrix(pair[0], pair[1], p)?.apply(&t);
    }
    Ok(t.sum_ratio())
}

/// `(p2/p1)^{ℓ-1} / (ℓ + 2)`.
pub fn lower_bound(p: &ProbabilityPair, ell: u64) -> BigRational {
    let ratio = p.p2() / p.p1();
    ratio.pow(ell as i32 - 1) / BigRational::from_integer(BigInt::from(ell + 2))
}

/// First `ℓ` whose lower bound exceeds the threshold, with the exact `R_ℓ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GoldenCertificate {
    pub prob: ProbabilityPair,
    pub reflected: bool,
    pub threshold: BigRational,
    pub ell: u64,
    pub lower_bound: BigRational,
    pub r_ell: BigRational,
}

pub fn golden_certificate(
    p: &ProbabilityPair,
    threshold: &BigRational,
    ell_cap: u64,
) -> Result<GoldenCertificate> {
    let (p, reflected) = p.normalized();
    if p.is_uniform() {
        return Err(Error::InvalidProbability(
            "p = (1/2, 1/2) has no divergence certificate".into(),
        ));
    }
    for ell in 1..=ell_cap {
        let lb = lower_bound(&p, ell);
        if &lb > threshold {
            let r = r_ell(&p, ell)?;
            debug_assert!(r >= lb);
            return Ok(GoldenCertificate {
                prob: p,
                reflected,
                threshold: threshold.clone(),
                ell,
                lower_bound: lb,
                r_ell: r,
            });
        }
    }
    Err(Error::ResourceCap {
        what: "certificate search ell",
        needed: format!("> {ell_cap}"),
        cap: ell_cap as usize,
    })
}

/// Outcome of the golden-ratio analysis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GoldenVerdict {
    /// Every triple up to `depth` is 2-balanced and satisfies the shape relations.
    BalancedToDepth {
        depth: u32,
        triples_checked: usize,
    },
    NonDoubling(Box<GoldenCertificate>),
}

pub fn verdict_golden(
    p: &ProbabilityPair,
    depth: u32,
    threshold: &BigRational,
) -> Result<GoldenVerdict, String> {
    if !p.is_uniform() {
        return golden_certificate(p, threshold, 100_000)
            .map(|c| GoldenVerdict::NonDoubling(Box::new(c)))
            .map_err(|e| e.to_string());
    }
    let mut checked = 0usize;
    walk_paths(p, depth, |path| {
        let t = path.last_triple();
        let n = path.states.len() as u32 + 1;
        let fail = |detail: String| CheckFailure {
            n,
            index: path.index,
            detail,
        };
        if !two_balanced(t) {
            return Err(fail(format!("triple {t} is not 2-balanced")));
        }
        shape_check(path.last_state(), t).map_err(fail)?;
        checked += 1;
        Ok(())
    })
    .map_err(|f| f.to_string())?;
    Ok(GoldenVerdict::BalancedToDepth {
        depth,
        triples_checked: checked,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use GoldenLetter::*;
    use TripleState::*;

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn p(n: i64, d: i64) -> ProbabilityPair {
        ProbabilityPair::from_ratio(n, d).unwrap()
    }

    #[test]
    fn substitution_rules() {
        assert_eq!(modified_substitution(&[A0, D]), vec![A0, B, A, D]);
        assert_eq!(modified_substitution(&[B]), vec![A]);
        assert_eq!(level_word(2), vec![A0, B, A, D]);
    }

    #[test]
    fn offspring_counts() {
        assert_eq!(offspring_states(S0), vec![S0, S2, H1]);
        assert_eq!(offspring_states(S2).len(), 1);
        assert_eq!(offspring_states(H2).len(), 1);
        for s in [S1, H1, S3] {
            assert_eq!(offspring_states(s).len(), 2);
        }
        for s in TripleState::ALL {
            let kids = offspring_states(s);
            let distinct: BTreeSet<_> = kids.iter().collect();
            assert_eq!(distinct.len(), kids.len());
        }
    }

    #[test]
    fn derived_graph_matches_table() {
        let table: BTreeSet<_> = TABULATED_EDGES.into_iter().collect();
        assert_eq!(derived_edges(), table);
        assert_eq!(offspring_graph_text().lines().count(), 11);
        assert!(offspring_graph_text().contains("H1 H2\n"));
    }

    #[test]
    fn matrix_table() {
        let q = p(1, 3);
        let (a, b, z) = (r(1, 3), r(2, 3), r(0, 1));
        assert_eq!(
            transition_matrix(H1, H2, &q).unwrap(),
            TransitionMatrix::from_rows([
                [b.clone(), z.clone(), z.clone()],
                [z.clone(), a.clone(), z.clone()],
                [z.clone(), b.clone(), z.clone()]
            ])
        );
        assert_eq!(
            transition_matrix(S2, S1, &q).unwrap(),
            TransitionMatrix::from_rows([
                [b.clone(), a.clone(), z.clone()],
                [z.clone(), b.clone(), z.clone()],
                [z.clone(), z.clone(), a.clone()]
            ])
        );
        assert_eq!(transition_matrix(S2, S1, &q), transition_matrix(H2, S1, &q));
        assert_eq!(transition_matrix(S2, S1, &q), transition_matrix(S3, S1, &q));
        assert_eq!(transition_matrix(S0, H1, &q), transition_matrix(S1, H1, &q));
        assert!(matches!(
            transition_matrix(S2, S2, &q),
            Err(Error::NoEdge { .. })
        ));
        for (s, t) in TABULATED_EDGES {
            assert!(transition_matrix(s, t, &q).unwrap().is_nonnegative());
        }
    }

    #[test]
    fn balance_predicate() {
        assert!(two_balanced(&WeightTriple::new(r(1, 1), r(1, 1), r(1, 1))));
        assert!(!two_balanced(&WeightTriple::new(
            r(100, 1),
            r(1, 1),
            r(1, 1)
        )));
        // (k(y+z), y+z, k(y+z)+z) / 2^{2k+1} with k = 3, y = z = 1
        let s = r(1, 128);
        let t = WeightTriple::new(r(6, 1) * &s, r(2, 1) * &s, r(7, 1) * &s);
        assert!(two_balanced(&t));
        assert!(shape_check(H1, &WeightTriple::new(r(1, 1), r(1, 1), r(2, 1))).is_err());
        assert!(shape_check(H1, &WeightTriple::new(r(1, 1), r(3, 1), r(2, 1))).is_ok());
        assert!(shape_check(H2, &WeightTriple::new(r(5, 1), r(3, 1), r(3, 1))).is_ok());
    }

    #[test]
    fn cycle_powers() {
        let q = p(1, 2);
        let expected = TransitionMatrix::from_rows([
            [r(1, 1), r(2, 1), r(0, 1)],
            [r(0, 1), r(1, 1), r(0, 1)],
            [r(0, 1), r(2, 1), r(1, 1)],
        ])
        .scaled(&r(1, 16));
        assert_eq!(cycle_power_golden(&q, 2), expected);
        let q = p(1, 3);
        let (a, b) = (q.p1(), q.p2());
        let z = r(0, 1);
        assert_eq!(
            cycle_power_golden(&q, 1),
            TransitionMatrix::from_rows([
                [&b * &b, &a * &a, z.clone()],
                [z.clone(), &a * &b, z.clone()],
                [z.clone(), &a * &b, &a * &a]
            ])
        );
        for q in [p(1, 2), p(1, 3), p(2, 7)] {
            let m = cycle_matrix(&q);
            let mut acc = TransitionMatrix::identity();
            for k in 1..=8 {
                let next = &acc * &m;
                assert_eq!(cycle_power_golden(&q, k), next);
                acc = next;
            }
        }
    }

    #[test]
    fn divergent_ratios() {
        let q = p(1, 3);
        assert_eq!(lower_bound(&q, 12), r(1024, 7));
        for ell in 1..=20 {
            let path = r_ell(&q, ell).unwrap();
            let (a, b) = (q.p1(), q.p2());
            let closed = cycle_power_golden(&q, ell)
                .apply(&WeightTriple::new(&a * &a, &a * &b, &a * &b))
                .sum_ratio();
            assert_eq!(path, closed);
            assert!(path >= lower_bound(&q, ell), "ell={ell}");
        }
        for w in divergent_path(5).windows(2) {
            assert!(TABULATED_EDGES.contains(&(w[0], w[1])));
        }
    }

    #[test]
    fn paths_reproduce_levels() {
        for q in [p(1, 2), p(1, 3), p(3, 4)] {
            let paths = enumerate_paths(&q, 9).unwrap();
            let field = PisotField::new(2).unwrap();
            let level = Level::build(&field, &q, 9).unwrap();
            assert_eq!(paths.len(), level.num_points() - 3);
            let roots: BTreeSet<_> = paths.iter().map(|x| x.states[0]).collect();
            assert_eq!(roots, BTreeSet::from([S0, S3]));
        }
        let q = p(1, 3);
        let h1s1 = transition_matrix(H1, S1, &q).unwrap();
        assert_eq!(h1s1.entry(2, 2), &q.p1());
    }

    #[test]
    fn certificates() {
        let c = golden_certificate(&p(1, 3), &r(100, 1), 1000).unwrap();
        assert_eq!(c.ell, 12);
        assert!(c.r_ell >= c.lower_bound);
        let swapped = golden_certificate(&p(2, 3), &r(100, 1), 1000).unwrap();
        assert!(swapped.reflected);
        assert_eq!((swapped.ell, &swapped.r_ell), (c.ell, &c.r_ell));
        assert!(golden_certificate(&p(1, 2), &r(100, 1), 1000).is_err());
    }
}
