//! Whole-run analysis: the imbalance series of `X_2, ..., X_depth` plus a verdict.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Serialize;

use crate::algebra::PisotField;
use crate::error::{Error, Result};
use crate::golden;
use crate::levels::{ImbalanceReport, Level, RefineOptions, DEFAULT_POINT_CAP};
use crate::prob::{decimal_string, exact_string, parse_rational, ProbabilityPair};
use crate::witness::{self, DEFAULT_K_CAP};

/// Digits after the point in decimal renderings.
pub const DECIMAL_DIGITS: u32 = 12;

/// Everything `analyze` needs.
#[derive(Clone, Debug)]
pub struct RunConfig {
    pub m: usize,
    pub prob: ProbabilityPair,
    pub depth: u32,
    /// A certificate must exhibit a sum ratio above this value.
    pub threshold: BigRational,
    pub audit: bool,
    pub max_points: usize,
    pub k_cap: u64,
}

impl RunConfig {
    pub fn new(m: usize, prob: ProbabilityPair, depth: u32) -> Result<Self> {
        if m < 2 {
            return Err(Error::InvalidDegree(m));
        }
        if depth < 2 {
            return Err(Error::Parse(format!(
                "depth must be at least 2, got {depth}"
            )));
        }
        Ok(RunConfig {
            m,
            prob,
            depth,
            threshold: BigRational::from_integer(BigInt::from(1000)),
            audit: false,
            max_points: DEFAULT_POINT_CAP,
            k_cap: DEFAULT_K_CAP,
        })
    }

    /// Parses `p1` from a `num/den` string.
    pub fn parse(m: usize, p1: &str, depth: u32) -> Result<Self> {
        let prob = ProbabilityPair::new(parse_rational(p1)?)?;
        Self::new(m, prob, depth)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum VerdictTag {
    NonDoublingCertified,
    DoublingConsistentToDepth,
    Inconclusive,
}

impl fmt::Display for VerdictTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            VerdictTag::NonDoublingCertified => "non-doubling-certified",
            VerdictTag::DoublingConsistentToDepth => "doubling-consistent-to-depth",
            VerdictTag::Inconclusive => "inconclusive",
        })
    }
}

/// One row of the imbalance series.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SeriesEntry {
    pub n: u32,
    pub num_points: usize,
    #[serde(skip)]
    pub max_ratio: BigRational,
    pub max_ratio_exact: String,
    pub max_ratio_decimal: String,
    pub argmax_index: usize,
}

impl From<ImbalanceReport> for SeriesEntry {
    fn from(r: ImbalanceReport) -> Self {
        SeriesEntry {
            n: r.n,
            num_points: r.num_points,
            max_ratio_exact: exact_string(&r.max_ratio),
            max_ratio_decimal: decimal_string(&r.max_ratio, DECIMAL_DIGITS),
            max_ratio: r.max_ratio,
            argmax_index: r.argmax_index,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CertificateKind {
    /// `R_k` along the witness path, `m >= 3`.
    Witness,
    /// `R_ℓ` along the golden-ratio state path.
    Golden,
}

/// An exact sum ratio above the threshold, with the index that produced it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Certificate {
    pub kind: CertificateKind,
    /// `k` for witness certificates, `ℓ` for golden ones.
    pub index: u64,
    #[serde(skip)]
    pub value: BigRational,
    pub value_exact: String,
    pub value_decimal: String,
    pub threshold: String,
    /// The probabilities the certificate is stated for (`p1 <= p2`).
    pub p1: String,
    pub p2: String,
}

impl Certificate {
    fn new(
        kind: CertificateKind,
        index: u64,
        value: BigRational,
        threshold: &BigRational,
        p: &ProbabilityPair,
    ) -> Self {
        Certificate {
            kind,
            index,
            value_exact: exact_string(&value),
            value_decimal: decimal_string(&value, DECIMAL_DIGITS),
            value,
            threshold: exact_string(threshold),
            p1: exact_string(&p.p1()),
            p2: exact_string(&p.p2()),
        }
    }
}

impl From<witness::DivergenceCertificate> for Certificate {
    fn from(c: witness::DivergenceCertificate) -> Self {
        Certificate::new(CertificateKind::Witness, c.k, c.r_k, &c.threshold, &c.prob)
    }
}

impl From<golden::GoldenCertificate> for Certificate {
    fn from(c: golden::GoldenCertificate) -> Self {
        Certificate::new(
            CertificateKind::Golden,
            c.ell,
            c.r_ell,
            &c.threshold,
            &c.prob,
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub m: usize,
    pub p1: String,
    pub p2: String,
    pub depth: u32,
    /// Deepest rank whose scan finished.
    pub depth_completed: u32,
    pub tag: VerdictTag,
    pub series: Vec<SeriesEntry>,
    pub certificate: Option<Certificate>,
    /// True if the input pair was swapped for the certificate.
    pub reflected: bool,
    /// Why the run stopped early, if it did.
    pub truncated: Option<String>,
}

impl Verdict {
    /// Largest `max_ratio` in the series.
    pub fn series_max(&self) -> Option<&BigRational> {
        self.series.iter().map(|e| &e.max_ratio).max()
    }

    pub fn entry(&self, n: u32) -> Option<&SeriesEntry> {
        self.series.iter().find(|e| e.n == n)
    }
}

fn certificate_for(cfg: &RunConfig) -> Result<Option<Certificate>> {
    let found = if cfg.m >= 3 {
        witness::divergence_certificate(cfg.m, &cfg.prob, &cfg.threshold, cfg.k_cap)
            .map(Certificate::from)
    } else if cfg.prob.is_uniform() {
        return Ok(None);
    } else {
        golden::golden_certificate(&cfg.prob, &cfg.threshold, cfg.k_cap).map(Certificate::from)
    };
    match found {
        Ok(c) => Ok(Some(c)),
        Err(Error::ResourceCap { .. }) => Ok(None),
        Err(e) => Err(e),
    }
}

/// Builds `X_2 .. X_depth`, records each level's maximal imbalance and
/// attaches a certificate when one exists within the caps.
///
/// Hitting a point cap ends the scan early; the verdict then records the
/// completed depth and is `Inconclusive` whatever else was found.
pub fn analyze(cfg: &RunConfig) -> Result<Verdict> {
    let field = PisotField::new(cfg.m)?;
    let opts = RefineOptions {
        audit: cfg.audit,
        max_points: cfg.max_points,
    };
    let mut level = Level::initial(&field, &cfg.prob);
    let mut series = Vec::new();
    let mut truncated = None;
    for _ in 2..=cfg.depth {
        match level.refine_with(opts) {
            Ok(next) => level = next,
            Err(e @ Error::ResourceCap { .. }) => {
                truncated = Some(e.to_string());
                break;
            }
            Err(e) => return Err(e),
        }
        series.push(SeriesEntry::from(level.max_imbalance()?));
    }
    let depth_completed = series.last().map_or(1, |e| e.n);
    let certificate = certificate_for(cfg)?;
    let two = BigRational::from_integer(BigInt::from(2));
    let tag = if truncated.is_some() {
        VerdictTag::Inconclusive
    } else if certificate.is_some() {
        VerdictTag::NonDoublingCertified
    } else if cfg.m == 2 && cfg.prob.is_uniform() && series.iter().all(|e| e.max_ratio <= two) {
        VerdictTag::DoublingConsistentToDepth
    } else {
        VerdictTag::Inconclusive
    };
    Ok(Verdict {
        m: cfg.m,
        p1: exact_string(&cfg.prob.p1()),
        p2: exact_string(&cfg.prob.p2()),
        depth: cfg.depth,
        depth_completed,
        tag,
        series,
        reflected: certificate.is_some() && cfg.prob.needs_reflection(),
        certificate,
        truncated,
    })
}

/// `(k + 2) / 2`, the uniform-case witness ratio after `k` cycles.
pub fn uniform_witness_ratio(k: u64) -> BigRational {
    BigRational::new(BigInt::from(k + 2), BigInt::from(2))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn golden_uniform_is_consistent() {
        let v = analyze(&RunConfig::parse(2, "1/2", 10).unwrap()).unwrap();
        assert_eq!(v.tag, VerdictTag::DoublingConsistentToDepth);
        assert_eq!(v.series.len(), 9);
        assert!(v.certificate.is_none());
    }

    #[test]
    fn golden_biased_is_certified() {
        let mut cfg = RunConfig::parse(2, "2/3", 6).unwrap();
        cfg.threshold = BigRational::from_integer(100.into());
        let v = analyze(&cfg).unwrap();
        assert_eq!(v.tag, VerdictTag::NonDoublingCertified);
        assert!(v.reflected);
        assert_eq!(v.certificate.unwrap().index, 12);
    }

    #[test]
    fn tribonacci_uniform() {
        let mut cfg = RunConfig::parse(3, "1/2", 11).unwrap();
        cfg.threshold = BigRational::from_integer(10.into());
        let v = analyze(&cfg).unwrap();
        assert_eq!(v.tag, VerdictTag::NonDoublingCertified);
        assert_eq!(v.certificate.as_ref().unwrap().index, 19);
        for k in 1..=3u64 {
            let e = v.entry(3 * k as u32 + 2).unwrap();
            assert!(e.max_ratio >= uniform_witness_ratio(k));
        }
    }

    #[test]
    fn cap_gives_inconclusive_partial() {
        let mut cfg = RunConfig::parse(2, "1/2", 12).unwrap();
        cfg.max_points = 40;
        let v = analyze(&cfg).unwrap();
        assert_eq!(v.tag, VerdictTag::Inconclusive);
        assert!(v.truncated.is_some());
        assert!(v.depth_completed < 12);
    }

    #[test]
    fn config_validation() {
        assert!(RunConfig::parse(1, "1/2", 4).is_err());
        assert!(RunConfig::parse(3, "1/2", 1).is_err());
        assert!(RunConfig::parse(3, "0.5", 4).is_err());
        assert!(RunConfig::parse(3, "3/2", 4).is_err());
    }

    #[test]
    fn json_shape() {
        let v = analyze(&RunConfig::parse(2, "1/2", 4).unwrap()).unwrap();
        let s = serde_json::to_value(&v).unwrap();
        assert_eq!(s["tag"], "doubling-consistent-to-depth");
        assert_eq!(s["series"][0]["n"], 2);
        assert!(s["series"][0]["max_ratio_exact"].is_string());
    }
}
