use crate::algebra::{BlockSizes, LanguageVariant};
use crate::bratteli::filter::filter_for;
use crate::bratteli::MultiplicityMatrix;

/// Every unital injective embedding `C → A` admissible for `lang`, as
/// multiplicity matrices in lexicographic order.
///
/// Columns are filled depth-first: each column is an independent Diophantine
/// constraint `Σ_i E[i][j]·c_i = m_j`, solved by distributing `m_j` over the rows.
/// A branch is cut when the capacity left in the remaining columns cannot cover
/// the source blocks that are still unused.
pub fn enumerate_embedding_matrices(
    source: &BlockSizes,
    target: &BlockSizes,
    lang: LanguageVariant,
) -> Vec<MultiplicityMatrix> {
    let filter = filter_for(lang);
    let mut out = Vec::new();
    if source.matrix_size_sum() > target.matrix_size_sum()
        || source.max_block() > target.max_block()
    {
        return out;
    }
    let mut search = ColumnSearch {
        c: source.sizes(),
        m: target.sizes(),
        entries: vec![vec![0; target.len()]; source.len()],
        row_sums: vec![0; source.len()],
    };
    search.column(0, &mut |entries| {
        let e = MultiplicityMatrix::new(source.clone(), target.clone(), entries.to_vec())
            .expect("search produces well-shaped matrices");
        debug_assert!(e.is_unital_injective());
        if filter.admits(&e) {
            out.push(e);
        }
    });
    out.sort();
    out
}

struct ColumnSearch<'a> {
    c: &'a [usize],
    m: &'a [usize],
    entries: Vec<Vec<usize>>,
    row_sums: Vec<usize>,
}

impl ColumnSearch<'_> {
    fn column(&mut self, j: usize, emit: &mut dyn FnMut(&[Vec<usize>])) {
        if j == self.m.len() {
            if self.row_sums.iter().all(|&s| s >= 1) {
                emit(&self.entries);
            }
            return;
        }
        let capacity: usize = self.m[j..].iter().sum();
        let uncovered: usize = self
            .row_sums
            .iter()
            .zip(self.c)
            .filter(|(&s, _)| s == 0)
            .map(|(_, &ci)| ci)
            .sum();
        if uncovered > capacity {
            return;
        }
        self.fill(j, 0, self.m[j], emit);
    }

    fn fill(&mut self, j: usize, i: usize, remaining: usize, emit: &mut dyn FnMut(&[Vec<usize>])) {
        if i == self.c.len() {
            if remaining == 0 {
                self.column(j + 1, emit);
            }
            return;
        }
        let ci = self.c[i];
        for mult in 0..=remaining / ci {
            self.entries[i][j] = mult;
            self.row_sums[i] += mult;
            self.fill(j, i + 1, remaining - mult * ci, emit);
            self.row_sums[i] -= mult;
        }
        self.entries[i][j] = 0;
    }
}
