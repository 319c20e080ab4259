//! Small independent oracles on `i128` matrices, used to cross-check the
//! library's exact arithmetic.
#![allow(dead_code)]

use mcg4::exact_linalg::IntMatrix;
use rand::Rng;

pub type M = Vec<Vec<i128>>;

pub fn of(m: &IntMatrix) -> M {
    let rows = m.to_i64_rows().expect("entries fit in i64");
    rows.iter()
        .map(|r| r.iter().map(|&x| x as i128).collect())
        .collect()
}

pub fn to_int(m: &M) -> IntMatrix {
    let rows: Vec<Vec<i64>> = m
        .iter()
        .map(|r| r.iter().map(|&x| i64::try_from(x).unwrap()).collect())
        .collect();
    IntMatrix::from_rows(&rows)
}

pub fn id(n: usize) -> M {
    (0..n)
        .map(|i| (0..n).map(|j| i128::from(i == j)).collect())
        .collect()
}

pub fn zeros(n: usize) -> M {
    vec![vec![0; n]; n]
}

pub fn mul(a: &M, b: &M) -> M {
    let n = a.len();
    let k = b.len();
    let m = b.first().map_or(0, |r| r.len());
    let mut out = vec![vec![0i128; m]; n];
    for i in 0..n {
        for l in 0..k {
            let x = a[i][l];
            if x == 0 {
                continue;
            }
            for j in 0..m {
                out[i][j] = out[i][j].checked_add(x.checked_mul(b[l][j]).unwrap()).unwrap();
            }
        }
    }
    out
}

pub fn add(a: &M, b: &M) -> M {
    a.iter()
        .zip(b)
        .map(|(r, s)| r.iter().zip(s).map(|(x, y)| x + y).collect())
        .collect()
}

pub fn sub(a: &M, b: &M) -> M {
    a.iter()
        .zip(b)
        .map(|(r, s)| r.iter().zip(s).map(|(x, y)| x - y).collect())
        .collect()
}

pub fn neg(a: &M) -> M {
    a.iter().map(|r| r.iter().map(|x| -x).collect()).collect()
}

pub fn tr(a: &M) -> M {
    let n = a.len();
    let m = a.first().map_or(0, |r| r.len());
    (0..m).map(|j| (0..n).map(|i| a[i][j]).collect()).collect()
}

/// `V + Vᵀ = V Q Vᵀ`.
pub fn is_member(q: &M, v: &M) -> bool {
    add(v, &tr(v)) == mul(&mul(v, q), &tr(v))
}

/// `I − VQ`.
pub fn xi(q: &M, v: &M) -> M {
    sub(&id(q.len()), &mul(v, q))
}

/// `V₁ + (I − V₁Q)V₂`.
pub fn compose(q: &M, v1: &M, v2: &M) -> M {
    add(v1, &mul(&xi(q, v1), v2))
}

/// `−(I − VᵀQ)V`.
pub fn inverse(q: &M, v: &M) -> M {
    neg(&mul(&sub(&id(q.len()), &mul(&tr(v), q)), v))
}

/// Rank over ℚ by fraction-free elimination.
pub fn rank(a: &M) -> usize {
    let mut a = a.clone();
    let rows = a.len();
    let cols = a.first().map_or(0, |r| r.len());
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| a[i][c] != 0) else {
            continue;
        };
        a.swap(r, p);
        for i in 0..rows {
            if i != r && a[i][c] != 0 {
                let (x, y) = (a[r][c], a[i][c]);
                for j in 0..cols {
                    a[i][j] = a[i][j] * x - a[r][j] * y;
                }
                let g = a[i].iter().fold(0i128, |g, &e| gcd(g, e));
                if g > 1 {
                    a[i].iter_mut().for_each(|e| *e /= g);
                }
            }
        }
        r += 1;
    }
    r
}

pub fn gcd(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// A random product of elementary and sign matrices.
pub fn random_unimodular<R: Rng>(n: usize, steps: usize, rng: &mut R) -> M {
    let mut u = id(n);
    if n == 0 {
        return u;
    }
    for _ in 0..steps {
        let i = rng.gen_range(0..n);
        let j = rng.gen_range(0..n);
        if i == j {
            u[i].iter_mut().for_each(|e| *e = -*e);
        } else {
            let c: i128 = if rng.gen() { 1 } else { -1 };
            let row = u[j].clone();
            for (e, x) in u[i].iter_mut().zip(row) {
                *e += c * x;
            }
        }
    }
    u
}

pub fn binom2(k: usize) -> usize {
    k * k.saturating_sub(1) / 2
}
