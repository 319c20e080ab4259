//! Backtracking search for isometries of a definite form.
//!
//! The image of the `i`-th basis vector must be a lattice vector of norm
//! `Q[i][i]`, and its pairings with the images already chosen must match
//! the Gram matrix. Candidates are the short vectors of the form, and the
//! pairing constraints are precomputed as bitsets over that list, so each
//! search step is a handful of word-wise ANDs.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use rand::seq::SliceRandom;
use rand::Rng;
use rayon::prelude::*;

use super::{FormError, SymmetricForm};
use crate::exact_linalg::IntMatrix;

const MAX_SHORT_VECTORS: usize = 200_000;

/// Precomputed search state for one definite form.
#[derive(Clone, Debug)]
pub struct IsometrySearch {
    n: usize,
    /// Basis indices in the order they are assigned.
    order: Vec<usize>,
    vectors: Vec<Vec<i64>>,
    words: usize,
    /// `class[p]`: vectors whose norm matches basis vector `order[p]`.
    class: Vec<Vec<u64>>,
    /// `slot[p][q]`: which pairing-value slot constrains level `p` against `q`.
    slot: Vec<Vec<usize>>,
    nslots: usize,
    /// Bitset rows indexed by `(vector, slot)`.
    table: Vec<u64>,
}

impl IsometrySearch {
    /// Builds the search for a definite form. Negative definite forms are
    /// negated first; they have the same isometries.
    pub fn new(form: &SymmetricForm) -> Result<Self, FormError> {
        let n = form.rank();
        let (pos, neg, _) = form.signature();
        if n > 0 && pos != n && neg != n {
            return Err(FormError::EnumerationUnsupported(
                "short-vector search needs a definite form".into(),
            ));
        }
        let sign: i64 = if n > 0 && neg == n { -1 } else { 1 };
        let gram: Vec<Vec<i64>> = form
            .gram()
            .to_i64_rows()
            .ok_or(FormError::EntriesTooLarge)?
            .into_iter()
            .map(|r| r.into_iter().map(|x| x * sign).collect())
            .collect();

        let bound = (0..n).map(|i| gram[i][i]).max().unwrap_or(0);
        let norms: Vec<i64> = (0..n).map(|i| gram[i][i]).collect();
        let vectors: Vec<Vec<i64>> = short_vectors(&gram, bound)?
            .into_iter()
            .filter(|v| norms.contains(&norm(&gram, v)))
            .collect();
        let words = vectors.len().div_ceil(64).max(1);

        let order = search_order(&gram, &vectors);

        let mut class = Vec::with_capacity(n);
        for &b in &order {
            let mut bits = vec![0u64; words];
            for (idx, v) in vectors.iter().enumerate() {
                if norm(&gram, v) == gram[b][b] {
                    bits[idx / 64] |= 1 << (idx % 64);
                }
            }
            class.push(bits);
        }

        let mut values: Vec<i64> = Vec::new();
        for i in 0..n {
            for j in 0..n {
                if i != j && !values.contains(&gram[i][j]) {
                    values.push(gram[i][j]);
                }
            }
        }
        values.sort_unstable();
        let nslots = values.len();
        let slot: Vec<Vec<usize>> = (0..n)
            .map(|p| {
                (0..p)
                    .map(|q| {
                        let v = gram[order[q]][order[p]];
                        values.binary_search(&v).expect("pairing value recorded")
                    })
                    .collect()
            })
            .collect();

        let len = vectors.len();
        let mut table = vec![0u64; len * nslots * words];
        let gv: Vec<Vec<i64>> = vectors.iter().map(|v| mat_vec(&gram, v)).collect();
        for a in 0..len {
            for b in 0..len {
                let ip: i64 = vectors[a].iter().zip(&gv[b]).map(|(x, y)| x * y).sum();
                if let Ok(s) = values.binary_search(&ip) {
                    table[(a * nslots + s) * words + b / 64] |= 1 << (b % 64);
                }
            }
        }

        Ok(IsometrySearch {
            n,
            order,
            vectors,
            words,
            class,
            slot,
            nslots,
            table,
        })
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn short_vector_count(&self) -> usize {
        self.vectors.len()
    }

    #[inline]
    fn row(&self, vector: usize, slot: usize) -> &[u64] {
        let start = (vector * self.nslots + slot) * self.words;
        &self.table[start..start + self.words]
    }

    fn candidates(&self, level: usize, chosen: &[usize], out: &mut [u64]) {
        out.copy_from_slice(&self.class[level]);
        for (q, &c) in chosen.iter().enumerate().take(level) {
            let row = self.row(c, self.slot[level][q]);
            for (o, r) in out.iter_mut().zip(row) {
                *o &= r;
            }
        }
    }

    fn count_from(&self, level: usize, chosen: &mut Vec<usize>, scratch: &mut [Vec<u64>]) -> u64 {
        let mut buf = std::mem::take(&mut scratch[level]);
        self.candidates(level, chosen, &mut buf);
        let total = if level + 1 == self.n {
            buf.iter().map(|w| w.count_ones() as u64).sum()
        } else {
            let mut total = 0;
            for b in bit_indices(&buf) {
                chosen.push(b);
                total += self.count_from(level + 1, chosen, scratch);
                chosen.pop();
            }
            total
        };
        scratch[level] = buf;
        total
    }

    /// Order of the isometry group, by exhaustive search. Fine for small
    /// groups; [`IsometrySearch::count`] is the fast path.
    pub fn count_exhaustive(&self) -> u64 {
        if self.n == 0 {
            return 1;
        }
        let mut first = vec![0u64; self.words];
        self.candidates(0, &[], &mut first);
        if self.n == 1 {
            return first.iter().map(|w| w.count_ones() as u64).sum();
        }
        bit_indices(&first)
            .into_par_iter()
            .map(|b| {
                let mut chosen = vec![b];
                let mut scratch = vec![vec![0u64; self.words]; self.n];
                self.count_from(1, &mut chosen, &mut scratch)
            })
            .sum()
    }

    /// Order of the isometry group, as the product of orbit lengths along
    /// the stabilizer chain of the basis.
    ///
    /// Automorphisms act by permutations of the short-vector list. At
    /// level `p` the orbit of the `p`-th basis vector under its pointwise
    /// stabilizer is grown by the permutations found so far; a candidate
    /// outside the current orbit costs one search for an extension, which
    /// either adds a new generator or proves the candidate unreachable.
    pub fn count(&self) -> u64 {
        if self.n == 0 {
            return 1;
        }
        let index: HashMap<&[i64], usize> = self
            .vectors
            .iter()
            .enumerate()
            .map(|(i, v)| (v.as_slice(), i))
            .collect();
        let base: Vec<usize> = self
            .order
            .iter()
            .map(|&b| {
                let mut e = vec![0i64; self.n];
                e[b] = 1;
                index[e.as_slice()]
            })
            .collect();

        // gens[p] fix base[0..p]
        let mut gens: Vec<Vec<usize>> = Vec::new();
        let mut gen_level: Vec<usize> = Vec::new();
        let mut order: u64 = 1;
        for p in (0..self.n).rev() {
            let mut cand = vec![0u64; self.words];
            self.candidates(p, &base[..p], &mut cand);
            let cand = bit_indices(&cand);
            let mut in_orbit = vec![false; self.vectors.len()];
            let mut orbit = vec![base[p]];
            in_orbit[base[p]] = true;
            let mut frontier = 0;
            let mut excluded = vec![false; self.vectors.len()];
            loop {
                // close the orbit under generators fixing base[0..p]
                while frontier < orbit.len() {
                    let x = orbit[frontier];
                    frontier += 1;
                    for (g, &lvl) in gens.iter().zip(&gen_level) {
                        if lvl >= p && !in_orbit[g[x]] {
                            in_orbit[g[x]] = true;
                            orbit.push(g[x]);
                        }
                    }
                }
                let Some(&c) = cand.iter().find(|&&c| !in_orbit[c] && !excluded[c]) else {
                    break;
                };
                let mut prefix = base[..p].to_vec();
                prefix.push(c);
                match self.find_extension(prefix) {
                    Some(chosen) => {
                        gens.push(self.permutation(&chosen, &index));
                        gen_level.push(p);
                        frontier = 0;
                    }
                    None => excluded[c] = true,
                }
            }
            order = order
                .checked_mul(orbit.len() as u64)
                .expect("isometry group order fits in u64");
        }
        order
    }

    fn find_extension(&self, mut prefix: Vec<usize>) -> Option<Vec<usize>> {
        let mut found = None;
        self.walk(&mut prefix, &mut |chosen| {
            found = Some(chosen.to_vec());
            false
        });
        found
    }

    /// The action of a complete assignment on the short-vector list.
    fn permutation(&self, chosen: &[usize], index: &HashMap<&[i64], usize>) -> Vec<usize> {
        let mut images = vec![&self.vectors[0]; self.n];
        for (p, &v) in chosen.iter().enumerate() {
            images[self.order[p]] = &self.vectors[v];
        }
        self.vectors
            .iter()
            .map(|x| {
                let mut y = vec![0i64; self.n];
                for (xi, img) in x.iter().zip(&images) {
                    for (yk, ik) in y.iter_mut().zip(img.iter()) {
                        *yk += xi * ik;
                    }
                }
                index[y.as_slice()]
            })
            .collect()
    }

    /// Number of isometries satisfying `pred`, which receives the matrix
    /// as small-integer rows.
    pub fn count_where<F>(&self, pred: F) -> u64
    where
        F: Fn(&[Vec<i64>]) -> bool + Sync,
    {
        if self.n == 0 {
            return u64::from(pred(&[]));
        }
        let mut first = vec![0u64; self.words];
        self.candidates(0, &[], &mut first);
        bit_indices(&first)
            .into_par_iter()
            .map(|b| {
                let mut hits = 0u64;
                self.walk(&mut vec![b], &mut |chosen| {
                    if pred(&self.small_matrix(chosen)) {
                        hits += 1;
                    }
                    true
                });
                hits
            })
            .sum()
    }

    /// Depth-first traversal of complete assignments below `chosen`.
    /// The visitor returns `false` to stop.
    fn walk(&self, chosen: &mut Vec<usize>, visit: &mut dyn FnMut(&[usize]) -> bool) -> bool {
        let level = chosen.len();
        if level == self.n {
            return visit(chosen);
        }
        let mut buf = vec![0u64; self.words];
        self.candidates(level, chosen, &mut buf);
        for b in bit_indices(&buf) {
            chosen.push(b);
            let go_on = self.walk(chosen, visit);
            chosen.pop();
            if !go_on {
                return false;
            }
        }
        true
    }

    /// Visits every isometry in search order. Return `false` to stop early.
    pub fn for_each(&self, mut visit: impl FnMut(IntMatrix) -> bool) {
        self.walk(&mut Vec::new(), &mut |chosen| visit(self.matrix(chosen)));
    }

    /// A random isometry: candidates are shuffled at every level and the
    /// first complete assignment wins.
    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> IntMatrix {
        fn go<R: Rng + ?Sized>(
            s: &IsometrySearch,
            chosen: &mut Vec<usize>,
            rng: &mut R,
        ) -> bool {
            let level = chosen.len();
            if level == s.n {
                return true;
            }
            let mut buf = vec![0u64; s.words];
            s.candidates(level, chosen, &mut buf);
            let mut bits = bit_indices(&buf);
            bits.shuffle(rng);
            for b in bits {
                chosen.push(b);
                if go(s, chosen, rng) {
                    return true;
                }
                chosen.pop();
            }
            false
        }
        let mut chosen = Vec::new();
        let found = go(self, &mut chosen, rng);
        assert!(found, "the identity is always an isometry");
        self.matrix(&chosen)
    }

    fn small_matrix(&self, chosen: &[usize]) -> Vec<Vec<i64>> {
        let mut rows = vec![vec![0i64; self.n]; self.n];
        for (p, &v) in chosen.iter().enumerate() {
            let col = self.order[p];
            for (i, row) in rows.iter_mut().enumerate() {
                row[col] = self.vectors[v][i];
            }
        }
        rows
    }

    fn matrix(&self, chosen: &[usize]) -> IntMatrix {
        let rows = self.small_matrix(chosen);
        if self.n == 0 {
            return IntMatrix::zeros(0, 0);
        }
        IntMatrix::from_rows(&rows)
    }
}

fn for_each_bit(bits: &[u64], mut f: impl FnMut(usize)) {
    for (w, &word) in bits.iter().enumerate() {
        let mut x = word;
        while x != 0 {
            let t = x.trailing_zeros() as usize;
            f(w * 64 + t);
            x &= x - 1;
        }
    }
}

fn bit_indices(bits: &[u64]) -> Vec<usize> {
    let mut out = Vec::new();
    for_each_bit(bits, |b| out.push(b));
    out
}

fn mat_vec(g: &[Vec<i64>], v: &[i64]) -> Vec<i64> {
    g.iter()
        .map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum())
        .collect()
}

fn norm(g: &[Vec<i64>], v: &[i64]) -> i64 {
    v.iter().zip(mat_vec(g, v)).map(|(a, b)| a * b).sum()
}

/// Assign the most constrained basis vectors first: start with the one
/// with fewest candidates, then prefer vectors pairing nontrivially with
/// those already placed.
fn search_order(gram: &[Vec<i64>], vectors: &[Vec<i64>]) -> Vec<usize> {
    let n = gram.len();
    let counts: Vec<usize> = (0..n)
        .map(|i| vectors.iter().filter(|v| norm(gram, v) == gram[i][i]).count())
        .collect();
    let mut order: Vec<usize> = Vec::with_capacity(n);
    while order.len() < n {
        let next = (0..n)
            .filter(|i| !order.contains(i))
            .min_by_key(|&i| {
                let links = order.iter().filter(|&&j| gram[i][j] != 0).count();
                (std::cmp::Reverse(links), counts[i], i)
            })
            .expect("some index remains");
        order.push(next);
    }
    order
}

/// All nonzero `x` with `xᵀ G x ≤ bound`, for positive definite `G`
/// (Fincke–Pohst, with exact rational bookkeeping).
fn short_vectors(gram: &[Vec<i64>], bound: i64) -> Result<Vec<Vec<i64>>, FormError> {
    let n = gram.len();
    if n == 0 {
        return Ok(Vec::new());
    }
    // q(x) = Σ_i q[i][i] (x_i + Σ_{j>i} q[i][j] x_j)²
    let mut q: Vec<Vec<BigRational>> = gram
        .iter()
        .map(|r| r.iter().map(|&x| BigRational::from_integer(BigInt::from(x))).collect())
        .collect();
    for i in 0..n {
        if !q[i][i].is_positive() {
            return Err(FormError::EnumerationUnsupported(
                "form is not positive definite".into(),
            ));
        }
        for j in i + 1..n {
            q[j][i] = q[i][j].clone();
            q[i][j] = q[i][j].clone() / q[i][i].clone();
        }
        for k in i + 1..n {
            for l in k..n {
                let v = q[k][i].clone() * q[i][l].clone();
                q[k][l] -= v;
            }
        }
    }

    let mut out = Vec::new();
    let mut x = vec![0i64; n];
    let total = BigRational::from_integer(BigInt::from(bound));
    fincke_pohst(&q, n - 1, total, &mut x, &mut out)?;
    out.retain(|v| v.iter().any(|&c| c != 0));
    out.sort();
    Ok(out)
}

fn fincke_pohst(
    q: &[Vec<BigRational>],
    i: usize,
    remaining: BigRational,
    x: &mut [i64],
    out: &mut Vec<Vec<i64>>,
) -> Result<(), FormError> {
    let n = q.len();
    let mut center = BigRational::zero();
    for j in i + 1..n {
        center -= q[i][j].clone() * BigRational::from_integer(BigInt::from(x[j]));
    }
    let radius2 = remaining.clone() / q[i][i].clone();
    let c = center.to_f64().unwrap_or(0.0);
    let r = radius2.to_f64().unwrap_or(0.0).max(0.0).sqrt();
    let lo = (c - r).floor() as i64 - 1;
    let hi = (c + r).ceil() as i64 + 1;
    for xi in lo..=hi {
        let diff = BigRational::from_integer(BigInt::from(xi)) - center.clone();
        let used = q[i][i].clone() * diff.clone() * diff;
        if used > remaining {
            continue;
        }
        x[i] = xi;
        if i == 0 {
            out.push(x.to_vec());
            if out.len() > MAX_SHORT_VECTORS {
                return Err(FormError::EnumerationUnsupported(
                    "too many short vectors".into(),
                ));
            }
        } else {
            fincke_pohst(q, i - 1, remaining.clone() - used, x, out)?;
        }
    }
    x[i] = 0;
    Ok(())
}
