//! Quantifier-elimination decisions through amalgamation of embeddings.
//!
//! For a finite-dimensional algebra `A`, the theory of `A` in a language `L`
//! eliminates quantifiers iff any two `L`-embeddings of a substructure `C` into
//! `A` differ by an `L`-automorphism of `A`. Automorphisms are modelled as an
//! inner part (which never changes a multiplicity matrix) composed with a
//! permutation of equal-size summands (which permutes columns), so two
//! embeddings amalgamate iff their matrices have the same [`orbit_canonical`]
//! form. The verdicts are therefore those of this Bratteli-level criterion;
//! substructures that admit no `L`-admissible embedding are not modelled.

use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::{BlockSizes, LanguageVariant};
use crate::bratteli::{enumerate_embedding_matrices, MultiplicityMatrix};
use crate::error::{Error, Result};

/// Two admissible embeddings of `sub_dims` that no automorphism relates.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Certificate {
    pub sub_dims: BlockSizes,
    pub e1: MultiplicityMatrix,
    pub e2: MultiplicityMatrix,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct VerdictStats {
    /// Candidate substructures examined.
    pub candidates: usize,
    /// Admissible matrices examined across those candidates.
    pub matrices: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub algebra: BlockSizes,
    pub language: LanguageVariant,
    pub qe: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate: Option<Certificate>,
    pub stats: VerdictStats,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SweepReport {
    pub language: LanguageVariant,
    pub bound: usize,
    pub rows: Vec<Verdict>,
}

/// Canonical algebras `C` that admit at least one `lang`-admissible embedding
/// into `a`, in lexicographic order. Unitality summed over columns gives
/// `Σ_i c_i·mult(i) = Σ_j m_j` with every multiplicity at least 1, which bounds
/// `Σ c_i` by `Σ m_j`.
pub fn enumerate_subalgebra_candidates(a: &BlockSizes, lang: LanguageVariant) -> Vec<BlockSizes> {
    BlockSizes::all_with(a.matrix_size_sum(), a.max_block())
        .into_iter()
        .filter(|c| !enumerate_embedding_matrices(c, a, lang).is_empty())
        .collect()
}

/// Representative of `e` under permutations of equal-size target summands:
/// columns sorted lexicographically within each run of equal target sizes.
pub fn orbit_canonical(e: &MultiplicityMatrix) -> MultiplicityMatrix {
    let sizes = e.target().sizes();
    let mut perm: Vec<usize> = (0..e.cols()).collect();
    let mut start = 0;
    while start < sizes.len() {
        let end = start
            + sizes[start..]
                .iter()
                .take_while(|&&s| s == sizes[start])
                .count();
        perm[start..end].sort_by_key(|&j| e.column(j));
        start = end;
    }
    e.permute_columns(&perm)
}

pub fn same_orbit(e1: &MultiplicityMatrix, e2: &MultiplicityMatrix) -> bool {
    e1.source() == e2.source()
        && e1.target() == e2.target()
        && orbit_canonical(e1) == orbit_canonical(e2)
}

/// First pair of admissible embeddings `c → a` with distinct orbits, if any:
/// the first matrix against the first later matrix outside its orbit.
pub fn certificate_for(
    a: &BlockSizes,
    c: &BlockSizes,
    lang: LanguageVariant,
) -> Option<Certificate> {
    first_split(c, &enumerate_embedding_matrices(c, a, lang))
}

fn first_split(c: &BlockSizes, matrices: &[MultiplicityMatrix]) -> Option<Certificate> {
    let (first, rest) = matrices.split_first()?;
    let canon = orbit_canonical(first);
    rest.iter()
        .find(|e| orbit_canonical(e) != canon)
        .map(|e2| Certificate {
            sub_dims: c.clone(),
            e1: first.clone(),
            e2: e2.clone(),
        })
}

/// Decides quantifier elimination for `Th_L(a)`; on failure the certificate uses
/// the lexicographically first failing candidate.
pub fn decide_qe(a: &BlockSizes, lang: LanguageVariant) -> Verdict {
    let mut stats = VerdictStats::default();
    let mut certificate = None;
    for c in BlockSizes::all_with(a.matrix_size_sum(), a.max_block()) {
        let matrices = enumerate_embedding_matrices(&c, a, lang);
        if matrices.is_empty() {
            continue;
        }
        stats.candidates += 1;
        stats.matrices += matrices.len();
        if let Some(cert) = first_split(&c, &matrices) {
            certificate = Some(cert);
            break;
        }
    }
    Verdict {
        algebra: a.clone(),
        language: lang,
        qe: certificate.is_none(),
        certificate,
        stats,
    }
}

/// Verdicts for every canonical algebra with `Σ n_i <= bound`.
pub fn sweep(bound: usize, lang: LanguageVariant) -> Result<SweepReport> {
    if bound < 1 {
        return Err(Error::Invalid("sweep bound must be at least 1".into()));
    }
    let rows = BlockSizes::all_up_to(bound)
        .par_iter()
        .map(|a| decide_qe(a, lang))
        .collect();
    Ok(SweepReport {
        language: lang,
        bound,
        rows,
    })
}
