//! Finite-dimensional C*-algebras as direct sums of full matrix blocks, and
//! concrete elements of them.
//!
//! An algebra `M_{n_1} ⊕ … ⊕ M_{n_k}` is identified with its block sizes,
//! kept in non-increasing order so that `3,2` and `2,3` name the same object.
//! Elements carry one dense complex matrix per block.

use std::fmt;
use std::str::FromStr;

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{self, CMatrix};

/// Block sizes of a finite-dimensional C*-algebra in canonical (non-increasing) order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct BlockSizes(Vec<usize>);

impl BlockSizes {
    /// Sorts `raw` non-increasingly after checking every entry is positive.
    pub fn canonicalize(raw: &[i64]) -> Result<Self> {
        if raw.is_empty() {
            return Err(Error::EmptyAlgebra);
        }
        let mut sizes = Vec::with_capacity(raw.len());
        for (position, &value) in raw.iter().enumerate() {
            if value < 1 {
                return Err(Error::NonPositiveBlock {
                    position: position + 1,
                    value,
                });
            }
            sizes.push(value as usize);
        }
        sizes.sort_unstable_by(|a, b| b.cmp(a));
        Ok(Self(sizes))
    }

    pub fn from_sizes(raw: &[usize]) -> Result<Self> {
        let raw: Vec<i64> = raw.iter().map(|&n| n as i64).collect();
        Self::canonicalize(&raw)
    }

    /// Parses the comma-separated notation, e.g. `3,2` for `M_3 ⊕ M_2`.
    pub fn parse(input: &str) -> Result<Self> {
        let compact: String = input.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(Error::EmptyAlgebra);
        }
        let mut raw = Vec::new();
        for (i, token) in compact.split(',').enumerate() {
            if token.is_empty() || !token.bytes().all(|b| b.is_ascii_digit()) {
                return Err(Error::AlgebraSyntax {
                    input: input.to_string(),
                    reason: format!(
                        "entry {} (`{token}`) is not a positive decimal integer",
                        i + 1
                    ),
                });
            }
            let value: i64 = token.parse().map_err(|_| Error::AlgebraSyntax {
                input: input.to_string(),
                reason: format!("entry {} is too large", i + 1),
            })?;
            raw.push(value);
        }
        Self::canonicalize(&raw)
    }

    pub fn sizes(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn max_block(&self) -> usize {
        self.0[0]
    }

    /// `Σ n_i`, the size of the smallest matrix algebra containing this one unitally.
    pub fn matrix_size_sum(&self) -> usize {
        self.0.iter().sum()
    }

    /// `Σ n_i²`.
    pub fn linear_dimension(&self) -> usize {
        self.0.iter().map(|n| n * n).sum()
    }

    /// All canonical algebras with `matrix_size_sum() <= bound`, in lexicographic order.
    pub fn all_up_to(bound: usize) -> Vec<BlockSizes> {
        Self::all_with(bound, bound)
    }

    /// All canonical algebras with block sizes at most `max_block` and size sum at most
    /// `bound`, in lexicographic order.
    pub fn all_with(bound: usize, max_block: usize) -> Vec<BlockSizes> {
        fn extend(
            prefix: &mut Vec<usize>,
            remaining: usize,
            cap: usize,
            out: &mut Vec<BlockSizes>,
        ) {
            for part in 1..=cap.min(remaining) {
                prefix.push(part);
                out.push(BlockSizes(prefix.clone()));
                extend(prefix, remaining - part, part, out);
                prefix.pop();
            }
        }
        let mut out = Vec::new();
        extend(&mut Vec::new(), bound, max_block, &mut out);
        out.sort();
        out
    }
}

impl fmt::Display for BlockSizes {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|n| n.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

impl FromStr for BlockSizes {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::parse(s)
    }
}

impl<'de> Deserialize<'de> for BlockSizes {
    fn deserialize<D: serde::Deserializer<'de>>(
        deserializer: D,
    ) -> std::result::Result<Self, D::Error> {
        let raw = Vec::<i64>::deserialize(deserializer)?;
        Self::canonicalize(&raw).map_err(serde::de::Error::custom)
    }
}

/// Which expansion of the language of unital C*-algebras governs embeddings.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LanguageVariant {
    /// The plain language of unital C*-algebras.
    Base,
    /// Adds the distance to minimal projections.
    Min,
    /// Adds the distance to unitarily conjugate pairs.
    Sim,
    /// Adds both predicates.
    Star,
}

impl LanguageVariant {
    pub const ALL: [LanguageVariant; 4] = [Self::Base, Self::Min, Self::Sim, Self::Star];

    pub fn name(self) -> &'static str {
        match self {
            Self::Base => "base",
            Self::Min => "min",
            Self::Sim => "sim",
            Self::Star => "star",
        }
    }
}

impl fmt::Display for LanguageVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for LanguageVariant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|l| l.name() == s)
            .ok_or_else(|| Error::UnknownName {
                kind: "language",
                name: s.to_string(),
            })
    }
}

/// A concrete element: one square complex matrix per block.
#[derive(Debug, Clone, PartialEq)]
pub struct Element {
    blocks: Vec<CMatrix>,
}

impl Element {
    pub fn from_blocks(blocks: Vec<CMatrix>) -> Result<Self> {
        for (i, b) in blocks.iter().enumerate() {
            if b.nrows() != b.ncols() {
                return Err(Error::NonSquare {
                    block: i + 1,
                    rows: b.nrows(),
                    cols: b.ncols(),
                });
            }
        }
        Ok(Self { blocks })
    }

    /// Builds an element from real block entries; handy for diagonal test inputs.
    pub fn from_real_blocks(blocks: &[Vec<Vec<f64>>]) -> Result<Self> {
        let mut out = Vec::with_capacity(blocks.len());
        for (i, rows) in blocks.iter().enumerate() {
            let n = rows.len();
            let cols = rows.first().map_or(0, Vec::len);
            if rows.iter().any(|r| r.len() != n) {
                return Err(Error::NonSquare {
                    block: i + 1,
                    rows: n,
                    cols,
                });
            }
            out.push(DMatrix::from_fn(n, n, |r, c| {
                Complex64::new(rows[r][c], 0.0)
            }));
        }
        Self::from_blocks(out)
    }

    /// Block-diagonal element with the given real diagonals.
    pub fn diagonal(diagonals: &[Vec<f64>]) -> Self {
        let blocks = diagonals
            .iter()
            .map(|d| {
                let n = d.len();
                DMatrix::from_fn(n, n, |r, c| {
                    if r == c {
                        Complex64::new(d[r], 0.0)
                    } else {
                        Complex64::new(0.0, 0.0)
                    }
                })
            })
            .collect();
        Self { blocks }
    }

    pub fn zero(algebra: &BlockSizes) -> Self {
        Self {
            blocks: algebra
                .sizes()
                .iter()
                .map(|&n| DMatrix::zeros(n, n))
                .collect(),
        }
    }

    /// The unit: identity in every block.
    pub fn unit(algebra: &BlockSizes) -> Self {
        Self {
            blocks: algebra
                .sizes()
                .iter()
                .map(|&n| DMatrix::identity(n, n))
                .collect(),
        }
    }

    pub fn blocks(&self) -> &[CMatrix] {
        &self.blocks
    }

    pub fn into_blocks(self) -> Vec<CMatrix> {
        self.blocks
    }

    pub fn block_sizes(&self) -> Vec<usize> {
        self.blocks.iter().map(|b| b.nrows()).collect()
    }

    /// Checks block count and per-block shapes against `algebra`.
    pub fn validate(&self, algebra: &BlockSizes) -> Result<()> {
        if self.blocks.len() != algebra.len() {
            return Err(Error::BlockCount {
                expected: algebra.len(),
                actual: self.blocks.len(),
            });
        }
        for (i, (b, &n)) in self.blocks.iter().zip(algebra.sizes()).enumerate() {
            if b.nrows() != n || b.ncols() != n {
                return Err(Error::BlockShape {
                    block: i + 1,
                    expected: n,
                    rows: b.nrows(),
                    cols: b.ncols(),
                });
            }
        }
        Ok(())
    }

    /// C*-norm: the largest singular value over all blocks.
    pub fn operator_norm(&self) -> f64 {
        self.blocks
            .iter()
            .map(linalg::spectral_norm)
            .fold(0.0, f64::max)
    }

    pub fn adjoint(&self) -> Self {
        Self {
            blocks: self.blocks.iter().map(|b| b.adjoint()).collect(),
        }
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.hermitian_deviation() <= tol
    }

    pub(crate) fn hermitian_deviation(&self) -> f64 {
        self.blocks
            .iter()
            .map(|b| linalg::spectral_norm(&(b - b.adjoint())))
            .fold(0.0, f64::max)
    }

    fn zip_with(&self, other: &Self, f: impl Fn(&CMatrix, &CMatrix) -> CMatrix) -> Result<Self> {
        if self.block_sizes() != other.block_sizes() {
            return Err(Error::Invalid(format!(
                "element shapes differ: {:?} vs {:?}",
                self.block_sizes(),
                other.block_sizes()
            )));
        }
        Ok(Self {
            blocks: self
                .blocks
                .iter()
                .zip(&other.blocks)
                .map(|(a, b)| f(a, b))
                .collect(),
        })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a - b)
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a * b)
    }

    pub fn scale(&self, s: f64) -> Self {
        Self {
            blocks: self
                .blocks
                .iter()
                .map(|b| b * Complex64::new(s, 0.0))
                .collect(),
        }
    }

    /// `u* x u`, blockwise.
    pub fn conjugate_by(&self, u: &Self) -> Result<Self> {
        self.zip_with(u, |x, u| u.adjoint() * x * u)
    }
}

/// The minimal projection with a single 1 in the top-left corner of block
/// `block_index` (1-based) and zeros elsewhere.
pub fn standard_min_projection(algebra: &BlockSizes, block_index: usize) -> Result<Element> {
    if block_index == 0 || block_index > algebra.len() {
        return Err(Error::BlockIndex {
            index: block_index,
            count: algebra.len(),
        });
    }
    let mut x = Element::zero(algebra);
    x.blocks[block_index - 1][(0, 0)] = Complex64::new(1.0, 0.0);
    Ok(x)
}

/// On-disk form of an element: `{"algebra": [...], "blocks": [[[re, im], ...], ...]}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ElementFile {
    pub algebra: Vec<i64>,
    pub blocks: Vec<Vec<Vec<[f64; 2]>>>,
}

impl ElementFile {
    /// Validates and converts to canonical block order.
    pub fn into_element(self) -> Result<(BlockSizes, Element)> {
        let algebra = BlockSizes::canonicalize(&self.algebra)?;
        if self.blocks.len() != self.algebra.len() {
            return Err(Error::BlockCount {
                expected: self.algebra.len(),
                actual: self.blocks.len(),
            });
        }
        let mut raw = Vec::with_capacity(self.blocks.len());
        for (i, rows) in self.blocks.iter().enumerate() {
            let n = self.algebra[i] as usize;
            let cols = rows.first().map_or(0, Vec::len);
            if rows.len() != n || rows.iter().any(|r| r.len() != n) {
                return Err(Error::BlockShape {
                    block: i + 1,
                    expected: n,
                    rows: rows.len(),
                    cols,
                });
            }
            raw.push(DMatrix::from_fn(n, n, |r, c| {
                Complex64::new(rows[r][c][0], rows[r][c][1])
            }));
        }
        // stable, so equal-size blocks keep their relative order
        let mut order: Vec<usize> = (0..raw.len()).collect();
        order.sort_by(|&a, &b| self.algebra[b].cmp(&self.algebra[a]));
        let blocks = order.iter().map(|&i| raw[i].clone()).collect();
        let element = Element::from_blocks(blocks)?;
        element.validate(&algebra)?;
        Ok((algebra, element))
    }

    pub fn from_element(algebra: &BlockSizes, x: &Element) -> Self {
        Self {
            algebra: algebra.sizes().iter().map(|&n| n as i64).collect(),
            blocks: x
                .blocks()
                .iter()
                .map(|b| {
                    (0..b.nrows())
                        .map(|r| {
                            (0..b.ncols())
                                .map(|c| [b[(r, c)].re, b[(r, c)].im])
                                .collect()
                        })
                        .collect()
                })
                .collect(),
        }
    }
}
