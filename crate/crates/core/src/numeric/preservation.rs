//! Empirical checks that a realized embedding preserves predicate values.

use std::fmt;
use std::str::FromStr;
use std::sync::LazyLock;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::algebra::{BlockSizes, Element, ElementFile};
use crate::bratteli::{realize, MatrixFile, MultiplicityMatrix};
use crate::error::{Error, Result};
use crate::linalg::{random_hermitian, CMatrix};
use crate::numeric::optimize::OptimizerConfig;
use crate::numeric::predicates::{rho_min, rho_sim_bounds};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PredicateKind {
    RhoMin,
    RhoSim,
}

impl PredicateKind {
    /// Command-line spelling.
    pub fn cli_name(self) -> &'static str {
        match self {
            Self::RhoMin => "rho-min",
            Self::RhoSim => "rho-sim",
        }
    }

    pub fn json_name(self) -> &'static str {
        match self {
            Self::RhoMin => "rho_min",
            Self::RhoSim => "rho_sim",
        }
    }
}

impl fmt::Display for PredicateKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.cli_name())
    }
}

impl FromStr for PredicateKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "rho-min" | "rho_min" => Ok(Self::RhoMin),
            "rho-sim" | "rho_sim" => Ok(Self::RhoSim),
            _ => Err(Error::UnknownName {
                kind: "predicate",
                name: s.to_string(),
            }),
        }
    }
}

/// Evaluated predicate: a point value, or an interval when only bounds are known.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "predicate")]
pub enum PredicateValue {
    #[serde(rename = "rho_min")]
    Point { value: f64, converged: bool },
    #[serde(rename = "rho_sim")]
    Interval {
        lower: f64,
        upper: f64,
        converged: bool,
    },
}

impl PredicateValue {
    pub fn converged(&self) -> bool {
        match *self {
            Self::Point { converged, .. } | Self::Interval { converged, .. } => converged,
        }
    }

    /// Largest endpoint-wise difference between two values of the same predicate.
    pub fn discrepancy(&self, other: &Self) -> f64 {
        match (self, other) {
            (Self::Point { value: a, .. }, Self::Point { value: b, .. }) => (a - b).abs(),
            (
                Self::Interval {
                    lower: l1,
                    upper: u1,
                    ..
                },
                Self::Interval {
                    lower: l2,
                    upper: u2,
                    ..
                },
            ) => (l1 - l2).abs().max((u1 - u2).abs()),
            _ => f64::INFINITY,
        }
    }
}

/// A predicate that can be evaluated on concrete elements.
pub trait ElementPredicate: Send + Sync {
    fn kind(&self) -> PredicateKind;
    fn arity(&self) -> usize;
    fn evaluate(&self, args: &[Element], cfg: &OptimizerConfig) -> Result<PredicateValue>;
}

pub struct RhoMinPredicate;

impl ElementPredicate for RhoMinPredicate {
    fn kind(&self) -> PredicateKind {
        PredicateKind::RhoMin
    }

    fn arity(&self) -> usize {
        1
    }

    fn evaluate(&self, args: &[Element], cfg: &OptimizerConfig) -> Result<PredicateValue> {
        let [x] = args else {
            return Err(Error::Invalid(format!(
                "rho_min takes 1 element, got {}",
                args.len()
            )));
        };
        let e = rho_min(x, cfg)?;
        Ok(PredicateValue::Point {
            value: e.value,
            converged: e.converged,
        })
    }
}

pub struct RhoSimPredicate;

impl ElementPredicate for RhoSimPredicate {
    fn kind(&self) -> PredicateKind {
        PredicateKind::RhoSim
    }

    fn arity(&self) -> usize {
        2
    }

    fn evaluate(&self, args: &[Element], cfg: &OptimizerConfig) -> Result<PredicateValue> {
        let [x, y] = args else {
            return Err(Error::Invalid(format!(
                "rho_sim takes 2 elements, got {}",
                args.len()
            )));
        };
        let b = rho_sim_bounds(x, y, cfg)?;
        Ok(PredicateValue::Interval {
            lower: b.lower,
            upper: b.upper,
            converged: b.converged,
        })
    }
}

pub struct PredicateRegistry {
    predicates: Vec<Box<dyn ElementPredicate>>,
}

impl PredicateRegistry {
    pub fn new() -> Self {
        Self {
            predicates: Vec::new(),
        }
    }

    pub fn register<P: ElementPredicate + 'static>(&mut self, p: P) {
        self.predicates.retain(|q| q.kind() != p.kind());
        self.predicates.push(Box::new(p));
    }

    pub fn get(&self, kind: PredicateKind) -> Option<&dyn ElementPredicate> {
        self.predicates
            .iter()
            .find(|p| p.kind() == kind)
            .map(|b| &**b)
    }

    pub fn by_name(&self, name: &str) -> Result<&dyn ElementPredicate> {
        let kind: PredicateKind = name.parse()?;
        self.get(kind).ok_or_else(|| Error::UnknownName {
            kind: "predicate",
            name: name.to_string(),
        })
    }
}

impl Default for PredicateRegistry {
    fn default() -> Self {
        let mut r = Self::new();
        r.register(RhoMinPredicate);
        r.register(RhoSimPredicate);
        r
    }
}

pub static PREDICATES: LazyLock<PredicateRegistry> = LazyLock::new(PredicateRegistry::default);

pub fn predicate(kind: PredicateKind) -> &'static dyn ElementPredicate {
    PREDICATES
        .get(kind)
        .expect("every predicate kind is registered")
}

/// A seeded Hermitian element: Gaussian entries symmetrized per block, then
/// scaled so the norm is uniform in `[0, 2]`.
pub fn sample_hermitian(algebra: &BlockSizes, seed: u64) -> Element {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let blocks: Vec<CMatrix> = algebra
        .sizes()
        .iter()
        .map(|&n| random_hermitian(&mut rng, n))
        .collect();
    let x = Element::from_blocks(blocks).expect("square blocks");
    let norm = x.operator_norm();
    let target = 2.0 * rng.random::<f64>();
    if norm > 0.0 {
        x.scale(target / norm)
    } else {
        x
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PredicateReport {
    pub embedding: MultiplicityMatrix,
    pub predicate: PredicateKind,
    pub samples: usize,
    pub seed: u64,
    pub max_discrepancy: f64,
    pub worst_input: Element,
    pub worst_second: Option<Element>,
    /// Every evaluation came from converged optimizer runs.
    pub converged: bool,
}

#[derive(Serialize)]
struct ReportJson {
    embedding: MatrixFile,
    predicate: PredicateKind,
    samples: usize,
    seed: u64,
    max_discrepancy: f64,
    worst_input: ElementFile,
    #[serde(skip_serializing_if = "Option::is_none")]
    worst_second: Option<ElementFile>,
    converged: bool,
}

impl Serialize for PredicateReport {
    fn serialize<S: serde::Serializer>(
        &self,
        serializer: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        let source = self.embedding.source();
        ReportJson {
            embedding: self.embedding.to_file(),
            predicate: self.predicate,
            samples: self.samples,
            seed: self.seed,
            max_discrepancy: self.max_discrepancy,
            worst_input: ElementFile::from_element(source, &self.worst_input),
            worst_second: self
                .worst_second
                .as_ref()
                .map(|y| ElementFile::from_element(source, y)),
            converged: self.converged,
        }
        .serialize(serializer)
    }
}

/// Evaluates `kind` on seeded Hermitian inputs of the source and on their images
/// under the standard realization of `e`, keeping the worst discrepancy. For
/// `rho_min` the first input is the unit.
pub fn check_preservation(
    e: &MultiplicityMatrix,
    kind: PredicateKind,
    samples: usize,
    cfg: &OptimizerConfig,
) -> Result<PredicateReport> {
    cfg.validate()?;
    if samples < 1 {
        return Err(Error::Invalid("at least one sample is required".into()));
    }
    let f = realize(e)?;
    let pred = predicate(kind);
    let source = e.source();
    let mut seeds = ChaCha8Rng::seed_from_u64(cfg.seed);

    let mut report = PredicateReport {
        embedding: e.clone(),
        predicate: kind,
        samples,
        seed: cfg.seed,
        max_discrepancy: -1.0,
        worst_input: Element::zero(source),
        worst_second: None,
        converged: true,
    };
    for s in 0..samples {
        let inputs: Vec<Element> = match kind {
            PredicateKind::RhoMin if s == 0 => vec![Element::unit(source)],
            _ => (0..pred.arity())
                .map(|_| sample_hermitian(source, seeds.random()))
                .collect(),
        };
        let images = inputs
            .iter()
            .map(|x| f.apply(x))
            .collect::<Result<Vec<_>>>()?;
        let before = pred.evaluate(&inputs, cfg)?;
        let after = pred.evaluate(&images, cfg)?;
        report.converged &= before.converged() && after.converged();
        let d = before.discrepancy(&after);
        if d > report.max_discrepancy {
            report.max_discrepancy = d;
            let mut it = inputs.into_iter();
            report.worst_input = it.next().expect("arity >= 1");
            report.worst_second = it.next();
        }
    }
    Ok(report)
}
