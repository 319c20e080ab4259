use std::cell::RefCell;
use std::rc::Rc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use rand::Rng;

use super::search::IsometrySearch;
use super::{is_isometry, FormError, Isometry, SymmetricForm};
use crate::exact_linalg::IntMatrix;

/// Largest group that [`enumerate_isometries`] will materialize.
pub const ENUMERATION_LIMIT: u64 = 2_000_000;

enum Strategy {
    Trivial,
    Definite(IsometrySearch),
    /// Rank-two indefinite forms with square discriminant: the two isotropic
    /// lines are permuted, which leaves at most eight candidates.
    IsotropicPlane([IntMatrix; 2]),
    /// `⟨0⟩`: the group `{±1}`.
    ZeroLine,
}

fn strategy(form: &SymmetricForm) -> Result<Strategy, FormError> {
    let n = form.rank();
    if n == 0 {
        return Ok(Strategy::Trivial);
    }
    if !form.is_nondegenerate() {
        if n == 1 {
            return Ok(Strategy::ZeroLine);
        }
        return Err(FormError::EnumerationUnsupported(
            "degenerate form of rank at least 2 has an infinite isometry group".into(),
        ));
    }
    if form.is_definite() {
        return Ok(Strategy::Definite(IsometrySearch::new(form)?));
    }
    if n == 2 {
        if let Some(lines) = isotropic_lines(form) {
            return Ok(Strategy::IsotropicPlane(lines));
        }
        return Err(FormError::EnumerationUnsupported(
            "anisotropic indefinite binary form has an infinite isometry group".into(),
        ));
    }
    Err(FormError::EnumerationUnsupported(
        "indefinite form of rank at least 3 has an infinite isometry group".into(),
    ))
}

/// Primitive integer vectors spanning the two isotropic lines of a
/// nondegenerate binary form `[[a,b],[b,c]]`, when `b² − ac` is a square.
fn isotropic_lines(form: &SymmetricForm) -> Option<[IntMatrix; 2]> {
    let g = form.gram();
    let (a, b, c) = (g.get(0, 0).clone(), g.get(0, 1).clone(), g.get(1, 1).clone());
    let disc = &b * &b - &a * &c;
    if !disc.is_positive() {
        return None;
    }
    let s = disc.sqrt();
    if &s * &s != disc {
        return None;
    }
    let raw: [(BigInt, BigInt); 2] = if !a.is_zero() {
        // a x² + 2b x y + c y² = a (x − r₁ y)(x − r₂ y) with r = (−b ± s)/a
        [(-&b + &s, a.clone()), (-&b - &s, a.clone())]
    } else {
        [(BigInt::from(1), BigInt::zero()), (c.clone(), -(BigInt::from(2) * &b))]
    };
    let prim = |(x, y): (BigInt, BigInt)| {
        let g = x.gcd(&y);
        IntMatrix::column_vector(&[x / &g, y / &g])
    };
    let [p, q] = raw;
    Some([prim(p), prim(q)])
}

fn isotropic_plane_isometries(form: &SymmetricForm, lines: &[IntMatrix; 2]) -> Vec<IntMatrix> {
    let basis = lines[0].hstack(&lines[1]).expect("column vectors");
    let det = basis.determinant().expect("square");
    // adj([[p, q], [r, s]]) = [[s, −q], [−r, p]]
    let adj = IntMatrix::new(
        2,
        2,
        vec![
            basis.get(1, 1).clone(),
            -basis.get(0, 1),
            -basis.get(1, 0),
            basis.get(0, 0).clone(),
        ],
    )
    .expect("2x2");
    let mut out = Vec::new();
    for swap in [false, true] {
        for s0 in [1i64, -1] {
            for s1 in [1i64, -1] {
                let (t0, t1) = if swap {
                    (&lines[1], &lines[0])
                } else {
                    (&lines[0], &lines[1])
                };
                let target = t0
                    .scale(&BigInt::from(s0))
                    .hstack(&t1.scale(&BigInt::from(s1)))
                    .expect("column vectors");
                let numer = &target * &adj;
                if !numer.divisible_by(&det) {
                    continue;
                }
                let a = IntMatrix::new(
                    2,
                    2,
                    numer.entries().iter().map(|x| x / &det).collect(),
                )
                .expect("2x2");
                if is_isometry(form, &a).unwrap_or(false) && !out.contains(&a) {
                    out.push(a);
                }
            }
        }
    }
    out
}

/// Order of the isometry group, when finite and supported.
pub fn isometry_group_order(form: &SymmetricForm) -> Result<u64, FormError> {
    Ok(match strategy(form)? {
        Strategy::Trivial => 1,
        Strategy::ZeroLine => 2,
        Strategy::Definite(search) => search.count(),
        Strategy::IsotropicPlane(lines) => isotropic_plane_isometries(form, &lines).len() as u64,
    })
}

/// Every isometry of `form`, sorted lexicographically by matrix entries.
///
/// Supported: definite forms, rank-two indefinite forms with square
/// discriminant, and forms of rank at most one. Indefinite forms with
/// infinite isometry groups are refused, as are groups larger than
/// [`ENUMERATION_LIMIT`].
pub fn enumerate_isometries(form: &SymmetricForm) -> Result<Vec<Isometry>, FormError> {
    let mut list: Vec<IntMatrix> = match strategy(form)? {
        Strategy::Trivial => vec![IntMatrix::zeros(0, 0)],
        Strategy::ZeroLine => vec![IntMatrix::from_rows(&[[-1]]), IntMatrix::from_rows(&[[1]])],
        Strategy::IsotropicPlane(lines) => isotropic_plane_isometries(form, &lines),
        Strategy::Definite(search) => {
            let order = search.count();
            if order > ENUMERATION_LIMIT {
                return Err(FormError::TooLarge {
                    order,
                    limit: ENUMERATION_LIMIT,
                });
            }
            let mut all = Vec::with_capacity(order as usize);
            search.for_each(|m| {
                all.push(m);
                true
            });
            all
        }
    };
    list.sort();
    Ok(list.into_iter().map(Isometry::new_unchecked).collect())
}

thread_local! {
    static LAST_SEARCH: RefCell<Option<(IntMatrix, Rc<IsometrySearch>)>> = const { RefCell::new(None) };
}

/// The search for `form`, reusing the previous one when sampling repeatedly
/// from the same form.
fn cached_search(form: &SymmetricForm) -> Result<Rc<IsometrySearch>, FormError> {
    if let Some(s) = LAST_SEARCH.with_borrow(|c| {
        c.as_ref()
            .filter(|(g, _)| g == form.gram())
            .map(|(_, s)| s.clone())
    }) {
        return Ok(s);
    }
    let s = Rc::new(IsometrySearch::new(form)?);
    LAST_SEARCH.set(Some((form.gram().clone(), s.clone())));
    Ok(s)
}

/// A random isometry of a form with finite, supported isometry group.
pub fn random_isometry<R: Rng + ?Sized>(
    form: &SymmetricForm,
    rng: &mut R,
) -> Result<Isometry, FormError> {
    if form.rank() > 0 && form.is_nondegenerate() && form.is_definite() {
        return Ok(Isometry::new_unchecked(cached_search(form)?.random(rng)));
    }
    let m = match strategy(form)? {
        Strategy::Trivial => IntMatrix::zeros(0, 0),
        Strategy::ZeroLine => IntMatrix::from_rows(&[[if rng.gen() { 1 } else { -1 }]]),
        Strategy::IsotropicPlane(lines) => {
            let all = isotropic_plane_isometries(form, &lines);
            all[rng.gen_range(0..all.len())].clone()
        }
        Strategy::Definite(search) => search.random(rng),
    };
    Ok(Isometry::new_unchecked(m))
}
