use std::fmt;

use serde::{Deserialize, Serialize};

use crate::algebra::BlockSizes;
use crate::error::{Error, Result};

/// Edge multiplicities of a Bratteli diagram: `entries[i][j]` copies of source
/// block `i` sit inside target block `j`.
///
/// Rows follow the canonical order of `source`, columns that of `target`.
/// Ordering between matrices with the same source and target is lexicographic
/// on the row-major flattened entries.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MultiplicityMatrix {
    source: BlockSizes,
    target: BlockSizes,
    entries: Vec<Vec<usize>>,
}

impl MultiplicityMatrix {
    /// Wraps entries already laid out in canonical row/column order. Only the shape
    /// is checked; use [`is_unital_injective`](Self::is_unital_injective) for the
    /// embedding constraints.
    pub fn new(source: BlockSizes, target: BlockSizes, entries: Vec<Vec<usize>>) -> Result<Self> {
        if entries.len() != source.len() {
            return Err(Error::Matrix(format!(
                "{} rows for a source with {} blocks",
                entries.len(),
                source.len()
            )));
        }
        if let Some((i, row)) = entries
            .iter()
            .enumerate()
            .find(|(_, r)| r.len() != target.len())
        {
            return Err(Error::Matrix(format!(
                "row {} has {} entries for a target with {} blocks",
                i + 1,
                row.len(),
                target.len()
            )));
        }
        Ok(Self {
            source,
            target,
            entries,
        })
    }

    /// Accepts source/target sizes in any order and permutes rows and columns into
    /// canonical order (stably, so equal-size summands keep their relative order).
    pub fn from_raw(source: &[i64], target: &[i64], entries: &[Vec<i64>]) -> Result<Self> {
        let src = BlockSizes::canonicalize(source)?;
        let tgt = BlockSizes::canonicalize(target)?;
        if entries.len() != source.len() || entries.iter().any(|r| r.len() != target.len()) {
            return Err(Error::Matrix(format!(
                "entries must be {}x{}",
                source.len(),
                target.len()
            )));
        }
        if let Some(bad) = entries.iter().flatten().find(|&&e| e < 0) {
            return Err(Error::Matrix(format!("negative multiplicity {bad}")));
        }
        let mut rows: Vec<usize> = (0..source.len()).collect();
        rows.sort_by(|&a, &b| source[b].cmp(&source[a]));
        let mut cols: Vec<usize> = (0..target.len()).collect();
        cols.sort_by(|&a, &b| target[b].cmp(&target[a]));
        let entries = rows
            .iter()
            .map(|&r| cols.iter().map(|&c| entries[r][c] as usize).collect())
            .collect();
        Self::new(src, tgt, entries)
    }

    pub fn source(&self) -> &BlockSizes {
        &self.source
    }

    pub fn target(&self) -> &BlockSizes {
        &self.target
    }

    pub fn entries(&self) -> &[Vec<usize>] {
        &self.entries
    }

    pub fn get(&self, row: usize, col: usize) -> usize {
        self.entries[row][col]
    }

    pub fn rows(&self) -> usize {
        self.entries.len()
    }

    pub fn cols(&self) -> usize {
        self.target.len()
    }

    /// Multiplicity of source summand `i`: the number of edges incident with it.
    pub fn row_sum(&self, i: usize) -> usize {
        self.entries[i].iter().sum()
    }

    /// Multiplicity of target summand `j`.
    pub fn col_sum(&self, j: usize) -> usize {
        self.entries.iter().map(|r| r[j]).sum()
    }

    pub fn edge_count(&self) -> usize {
        self.entries.iter().flatten().sum()
    }

    pub fn column(&self, j: usize) -> Vec<usize> {
        self.entries.iter().map(|r| r[j]).collect()
    }

    /// Unitality (`Σ_i E[i][j]·c_i = m_j` for every column) and injectivity
    /// (every row sum at least 1).
    pub fn is_unital_injective(&self) -> bool {
        let c = self.source.sizes();
        let unital = self.target.sizes().iter().enumerate().all(|(j, &m)| {
            self.entries
                .iter()
                .zip(c)
                .map(|(r, &ci)| r[j] * ci)
                .sum::<usize>()
                == m
        });
        unital && (0..self.rows()).all(|i| self.row_sum(i) >= 1)
    }

    /// Same source and target, columns rearranged by `perm` (new column `j` is old
    /// column `perm[j]`).
    pub fn permute_columns(&self, perm: &[usize]) -> Self {
        Self {
            source: self.source.clone(),
            target: self.target.clone(),
            entries: self
                .entries
                .iter()
                .map(|r| perm.iter().map(|&p| r[p]).collect())
                .collect(),
        }
    }

    pub fn is_permutation_matrix(&self) -> bool {
        self.rows() == self.cols()
            && (0..self.rows()).all(|i| self.row_sum(i) == 1)
            && (0..self.cols()).all(|j| self.col_sum(j) == 1)
            && self.entries.iter().flatten().all(|&e| e <= 1)
    }

    pub fn to_file(&self) -> MatrixFile {
        MatrixFile {
            source: self.source.sizes().iter().map(|&n| n as i64).collect(),
            target: self.target.sizes().iter().map(|&n| n as i64).collect(),
            entries: self
                .entries
                .iter()
                .map(|r| r.iter().map(|&e| e as i64).collect())
                .collect(),
        }
    }
}

impl fmt::Display for MultiplicityMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .entries
            .iter()
            .map(|r| {
                format!(
                    "[{}]",
                    r.iter()
                        .map(|e| e.to_string())
                        .collect::<Vec<_>>()
                        .join(",")
                )
            })
            .collect();
        write!(f, "[{}]", rows.join(","))
    }
}

impl Serialize for MultiplicityMatrix {
    fn serialize<S: serde::Serializer>(
        &self,
        serializer: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        self.entries.serialize(serializer)
    }
}

/// On-disk form: `{"source": [...], "target": [...], "entries": [[...], ...]}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MatrixFile {
    pub source: Vec<i64>,
    pub target: Vec<i64>,
    pub entries: Vec<Vec<i64>>,
}

impl MatrixFile {
    pub fn into_matrix(self) -> Result<MultiplicityMatrix> {
        MultiplicityMatrix::from_raw(&self.source, &self.target, &self.entries)
    }
}
