//! Independent reference implementations used as test oracles. Nothing here
//! calls the search, filter or orbit code under test.

#![allow(dead_code)]

use std::collections::HashMap;

use fdqe_core::{BlockSizes, LanguageVariant, MultiplicityMatrix};

/// Every entry assignment in the box `0 <= E[i][j] <= m_j / c_i` that is unital
/// and injective, in lexicographic order.
pub fn brute_force_embeddings(c: &BlockSizes, a: &BlockSizes) -> Vec<Vec<Vec<usize>>> {
    let (cs, ms) = (c.sizes(), a.sizes());
    let (k, l) = (cs.len(), ms.len());
    let bounds: Vec<usize> = (0..k * l).map(|p| ms[p % l] / cs[p / l]).collect();
    let mut digits = vec![0usize; k * l];
    let mut out = Vec::new();
    loop {
        let unital =
            (0..l).all(|j| (0..k).map(|i| digits[i * l + j] * cs[i]).sum::<usize>() == ms[j]);
        let injective = (0..k).all(|i| (0..l).any(|j| digits[i * l + j] > 0));
        if unital && injective {
            out.push(
                (0..k)
                    .map(|i| digits[i * l..(i + 1) * l].to_vec())
                    .collect(),
            );
        }
        let mut p = 0;
        loop {
            if p == digits.len() {
                out.sort();
                return out;
            }
            if digits[p] < bounds[p] {
                digits[p] += 1;
                break;
            }
            digits[p] = 0;
            p += 1;
        }
    }
}

pub fn row_sums_are_one(e: &[Vec<usize>]) -> bool {
    e.iter().all(|r| r.iter().sum::<usize>() == 1)
}

/// All permutations of `0..n`.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn go(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for v in 0..used.len() {
            if !used[v] {
                used[v] = true;
                prefix.push(v);
                go(prefix, used, out);
                prefix.pop();
                used[v] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

/// Column permutations `π` with `m_{π(j)} = m_j`.
pub fn size_preserving_permutations(target: &BlockSizes) -> Vec<Vec<usize>> {
    let m = target.sizes();
    permutations(m.len())
        .into_iter()
        .filter(|p| p.iter().enumerate().all(|(j, &pj)| m[pj] == m[j]))
        .collect()
}

/// Whether some size-preserving column permutation carries `e1` to `e2`.
pub fn related_by_permutation(
    e1: &MultiplicityMatrix,
    e2: &MultiplicityMatrix,
    perms: &[Vec<usize>],
) -> bool {
    perms
        .iter()
        .any(|p| (0..e1.rows()).all(|i| (0..e1.cols()).all(|j| e1.get(i, p[j]) == e2.get(i, j))))
}

/// Multisets of size `n` over `0..points`, as non-decreasing sequences.
fn multisets(n: usize, points: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for rest in multisets(n - 1, points) {
        let from = rest.last().copied().unwrap_or(0);
        for p in from..points {
            let mut v = rest.clone();
            v.push(p);
            out.push(v);
        }
    }
    out
}

/// Semantic check that `e` reflects unitary conjugacy of normal elements whose
/// eigenvalues lie in a fixed `points`-element set: conjugacy classes are the
/// per-block eigenvalue multisets, and the image class in target block `j` is the
/// union of `E[i][j]` copies of block `i`'s multiset.
pub fn reflects_conjugacy(e: &MultiplicityMatrix, points: usize) -> bool {
    let cs = e.source().sizes();
    let per_block: Vec<Vec<Vec<usize>>> = cs.iter().map(|&n| multisets(n, points)).collect();
    let mut seen: HashMap<Vec<Vec<usize>>, Vec<usize>> = HashMap::new();
    let mut choice = vec![0usize; cs.len()];
    loop {
        let image: Vec<Vec<usize>> = (0..e.cols())
            .map(|j| {
                let mut counts = vec![0usize; points];
                for (i, &ch) in choice.iter().enumerate() {
                    for &p in &per_block[i][ch] {
                        counts[p] += e.get(i, j);
                    }
                }
                counts
            })
            .collect();
        if let Some(prev) = seen.insert(image, choice.clone()) {
            if prev != choice {
                return false;
            }
        }
        let mut p = 0;
        loop {
            if p == choice.len() {
                return true;
            }
            if choice[p] + 1 < per_block[p].len() {
                choice[p] += 1;
                break;
            }
            choice[p] = 0;
            p += 1;
        }
    }
}

pub fn all_algebras(bound: usize) -> Vec<BlockSizes> {
    BlockSizes::all_up_to(bound)
}

pub fn bs(s: &str) -> BlockSizes {
    BlockSizes::parse(s).unwrap()
}

pub const LANGS: [LanguageVariant; 4] = LanguageVariant::ALL;
