//! Language-dependent admissibility of embeddings.
//!
//! Each language variant is a named [`AdmissibilityFilter`] held in a
//! [`FilterRegistry`]; callers select one by name (the CLI `--lang` flag) or by
//! [`LanguageVariant`].

use std::sync::LazyLock;

use crate::algebra::LanguageVariant;
use crate::bratteli::MultiplicityMatrix;

/// Decides whether a unital injective embedding (given by its multiplicity
/// matrix) is an embedding for some expanded language.
pub trait AdmissibilityFilter: Send + Sync {
    fn name(&self) -> &'static str;
    fn summary(&self) -> &'static str;
    /// Callers guarantee `e.is_unital_injective()`.
    fn admits(&self, e: &MultiplicityMatrix) -> bool;
}

pub struct BaseFilter;

impl AdmissibilityFilter for BaseFilter {
    fn name(&self) -> &'static str {
        "base"
    }

    fn summary(&self) -> &'static str {
        "every unital injective *-homomorphism"
    }

    fn admits(&self, _: &MultiplicityMatrix) -> bool {
        true
    }
}

/// Minimal projections must map to minimal projections: every source summand
/// has multiplicity exactly 1.
pub struct MinFilter;

impl AdmissibilityFilter for MinFilter {
    fn name(&self) -> &'static str {
        "min"
    }

    fn summary(&self) -> &'static str {
        "rank preserving: every row sum is 1"
    }

    fn admits(&self, e: &MultiplicityMatrix) -> bool {
        (0..e.rows()).all(|i| e.row_sum(i) == 1)
    }
}

/// The embedding must reflect unitary conjugacy of normal elements.
///
/// Two normal elements are conjugate iff their per-block eigenvalue multisets
/// agree, and the image multiset in target block `j` is `⊎_i E[i][j]·μ_i`. A pair
/// of distinct source tuples with equal images exists iff some nonzero integer
/// vector `c` with `|c_i| <= source size c_i` satisfies `cᵀE = 0`.
pub struct SimFilter;

impl AdmissibilityFilter for SimFilter {
    fn name(&self) -> &'static str {
        "sim"
    }

    fn summary(&self) -> &'static str {
        "conjugacy reflecting: no bounded nonzero c with cᵀE = 0"
    }

    fn admits(&self, e: &MultiplicityMatrix) -> bool {
        bounded_left_kernel_vector(e).is_none()
    }
}

pub struct StarFilter;

impl AdmissibilityFilter for StarFilter {
    fn name(&self) -> &'static str {
        "star"
    }

    fn summary(&self) -> &'static str {
        "both min and sim"
    }

    fn admits(&self, e: &MultiplicityMatrix) -> bool {
        MinFilter.admits(e) && SimFilter.admits(e)
    }
}

/// Searches for a nonzero integer `c` with `|c_i| <= c_i` (source block size) and
/// `Σ_i c_i·E[i][j] = 0` for every column `j`.
pub fn bounded_left_kernel_vector(e: &MultiplicityMatrix) -> Option<Vec<i64>> {
    let bounds: Vec<i64> = e.source().sizes().iter().map(|&n| n as i64).collect();
    let k = bounds.len();
    let l = e.cols();
    let mut c = vec![0i64; k];
    let mut acc = vec![0i64; l];

    fn search(
        i: usize,
        e: &MultiplicityMatrix,
        bounds: &[i64],
        c: &mut [i64],
        acc: &mut [i64],
        nonzero: bool,
    ) -> bool {
        if i == bounds.len() {
            return nonzero && acc.iter().all(|&a| a == 0);
        }
        // first nonzero coordinate positive: c and -c are interchangeable
        let lo = if nonzero { -bounds[i] } else { 0 };
        for v in lo..=bounds[i] {
            c[i] = v;
            for (j, a) in acc.iter_mut().enumerate() {
                *a += v * e.get(i, j) as i64;
            }
            let found = search(i + 1, e, bounds, c, acc, nonzero || v != 0);
            for (j, a) in acc.iter_mut().enumerate() {
                *a -= v * e.get(i, j) as i64;
            }
            if found {
                return true;
            }
        }
        c[i] = 0;
        false
    }

    search(0, e, &bounds, &mut c, &mut acc, false).then_some(c)
}

/// Name-indexed collection of filters.
pub struct FilterRegistry {
    filters: Vec<Box<dyn AdmissibilityFilter>>,
}

impl FilterRegistry {
    pub fn new() -> Self {
        Self {
            filters: Vec::new(),
        }
    }

    pub fn register<F: AdmissibilityFilter + 'static>(&mut self, filter: F) {
        self.filters.retain(|f| f.name() != filter.name());
        self.filters.push(Box::new(filter));
    }

    pub fn get(&self, name: &str) -> Option<&dyn AdmissibilityFilter> {
        self.filters.iter().find(|f| f.name() == name).map(|b| &**b)
    }

    pub fn names(&self) -> impl Iterator<Item = &'static str> + '_ {
        self.filters.iter().map(|f| f.name())
    }
}

impl Default for FilterRegistry {
    fn default() -> Self {
        let mut r = Self::new();
        r.register(BaseFilter);
        r.register(MinFilter);
        r.register(SimFilter);
        r.register(StarFilter);
        r
    }
}

pub static FILTERS: LazyLock<FilterRegistry> = LazyLock::new(FilterRegistry::default);

pub fn filter_for(lang: LanguageVariant) -> &'static dyn AdmissibilityFilter {
    FILTERS
        .get(lang.name())
        .expect("every language variant has a registered filter")
}

pub fn passes_min_filter(e: &MultiplicityMatrix) -> bool {
    MinFilter.admits(e)
}

pub fn passes_sim_filter(e: &MultiplicityMatrix) -> bool {
    SimFilter.admits(e)
}

pub fn passes_filter(e: &MultiplicityMatrix, lang: LanguageVariant) -> bool {
    filter_for(lang).admits(e)
}
