use super::*;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

fn x(n: usize, i: usize) -> F2Poly {
    F2Poly::var(n, i)
}

fn mono(e: &[u32]) -> F2Poly {
    F2Poly::monomial(e.to_vec())
}

/// `Sq²` read off the total square `Sq = ∏ (xᵢ + xᵢ²)^{aᵢ}` by plain
/// polynomial multiplication.
fn sq2_oracle(p: &F2Poly) -> F2Poly {
    let n = p.nvars();
    let mut out = F2Poly::zero(n);
    for m in p.terms() {
        let mut total = F2Poly::one(n);
        for (i, &a) in m.iter().enumerate() {
            let mut e = vec![0; n];
            e[i] = 2;
            let factor = x(n, i).add(&F2Poly::monomial(e));
            for _ in 0..a {
                total = total.mul(&factor);
            }
        }
        let d = 2 * m.iter().sum::<u32>() as usize + 2;
        let part = F2Poly::from_terms(
            n,
            total
                .terms()
                .filter(|t| 2 * t.iter().sum::<u32>() as usize == d)
                .cloned(),
        );
        out = out.add(&part);
    }
    out
}

#[test]
fn cartan_anchors() {
    let n = 3;
    assert_eq!(sq2(&x(n, 0)).unwrap(), mono(&[2, 0, 0]));
    // Sq²(xᵢxⱼ) = xᵢxⱼ² + xᵢ²xⱼ
    assert_eq!(
        sq2(&x(n, 0).mul(&x(n, 1))).unwrap(),
        mono(&[1, 2, 0]).add(&mono(&[2, 1, 0]))
    );
    assert!(sq2(&F2Poly::one(n)).unwrap().is_zero());
    let w = x(n, 0);
    assert!(sq2_w(&x(n, 0), &w).unwrap().is_zero());
    assert_eq!(sq2_w(&mono(&[2, 0, 0]), &w).unwrap(), mono(&[3, 0, 0]));
    assert_eq!(sq2_w(&x(n, 1), &F2Poly::zero(n)).unwrap(), sq2(&x(n, 1)).unwrap());
}

#[test]
fn errors() {
    let n = 2;
    let mixed = x(n, 0).add(&mono(&[1, 1]));
    assert_eq!(sq2(&mixed), Err(SsError::NotHomogeneous));
    assert_eq!(sq2_w(&x(n, 0), &mono(&[1, 1])), Err(SsError::TwistDegree));
    assert_eq!(sq2_w(&x(n, 0), &x(3, 0)), Err(SsError::RingMismatch));
    assert!(e3_report(0, true).is_err());
}

#[test]
fn sq2_matches_total_square() {
    let mut rng = StdRng::seed_from_u64(1);
    for n in 1..=4 {
        for deg in [0, 2, 4, 6, 8] {
            let basis = monomial_basis(n, deg);
            for _ in 0..20 {
                let p = F2Poly::from_terms(n, basis.iter().filter(|_| rng.gen()).cloned());
                assert_eq!(sq2(&p).unwrap(), sq2_oracle(&p));
            }
        }
    }
}

#[test]
fn cartan_formula_in_low_degree() {
    // exhaustive over pairs of monomials, then random sums
    for n in 1..=3 {
        for da in [2, 4] {
            for db in [2, 4] {
                for a in monomial_basis(n, da) {
                    for b in monomial_basis(n, db) {
                        let (p, q) = (mono(&a), mono(&b));
                        let lhs = sq2(&p.mul(&q)).unwrap();
                        let rhs = sq2(&p).unwrap().mul(&q).add(&p.mul(&sq2(&q).unwrap()));
                        assert_eq!(lhs, rhs);
                    }
                }
            }
        }
    }
    let mut rng = StdRng::seed_from_u64(2);
    for _ in 0..200 {
        let n = rng.gen_range(1..=4);
        let da = 2 * rng.gen_range(0..=2);
        let db = 2 * rng.gen_range(0..=2);
        let p = F2Poly::from_terms(n, monomial_basis(n, da).into_iter().filter(|_| rng.gen()));
        let q = F2Poly::from_terms(n, monomial_basis(n, db).into_iter().filter(|_| rng.gen()));
        let lhs = sq2_oracle(&p.mul(&q));
        let rhs = sq2(&p).unwrap().mul(&q).add(&p.mul(&sq2(&q).unwrap()));
        assert_eq!(lhs, rhs);
    }
}

#[test]
fn bases() {
    assert_eq!(monomial_basis(2, 4), vec![vec![2, 0], vec![1, 1], vec![0, 2]]);
    assert!(monomial_basis(3, 5).is_empty());
    assert_eq!(monomial_basis(1, 6), vec![vec![3]]);
    assert_eq!(monomial_basis(4, 4).len(), 10);
    assert_eq!(monomial_basis(3, 0), vec![vec![0, 0, 0]]);
}

#[test]
fn differential_examples() {
    let d = d2_matrices(1, &F2Poly::zero(1)).unwrap();
    assert_eq!(f2_rank(d.d2_r1(4)), 1);
    assert_eq!(f2_rank(d.d2_r0(6)), 0);
    for r in [1, 3, 5] {
        assert_eq!(d.d2_r1(r).nrows() * d.d2_r1(r).ncols(), 0);
    }
    // integral input is reduced first
    let d = d2_matrices(2, &F2Poly::zero(2)).unwrap();
    assert_eq!(d.apply_r0(4, &[3, 0, 0]), vec![true, false]);
    assert_eq!(d.apply_r0(4, &[2, 5, 0]), vec![false, false]);
}

#[test]
fn d2_squares_to_zero() {
    for n in 1..=6 {
        for w in [F2Poly::zero(n), x(n, 0)] {
            let d = d2_matrices(n, &w).unwrap();
            let comp = d.d2_r1(4).try_mul(d.d2_r0(6)).unwrap();
            assert!(comp.is_zero(), "n = {n}, w = {w}");
        }
    }
}

#[test]
fn spin_and_nonspin_e3_terms() {
    for n in 1..=5 {
        let s = e3_report(n, true).unwrap();
        assert_eq!(s.e3_22_dim, 0);
        assert_eq!(s.e3_41_dim, 0);
        assert!(s.omega5_zero);
        assert_eq!(s.e3_40.free_rank, n + n * (n - 1) / 2);
        assert_eq!(s.e3_40.index_two, n);

        let ns = e3_report(n, false).unwrap();
        assert_eq!(ns.e3_22_dim, 1);
        assert_eq!(ns.e3_22_generators, vec!["[x1]*".to_string()]);
        assert_eq!(ns.e3_41_dim, 0);
        assert_eq!(ns.e3_40.free_rank, n + n * (n - 1) / 2);
        // x₁² is killed by Sq²_w, so only n − 1 index-2 directions remain
        assert_eq!(ns.e3_40.index_two, n - 1);
    }
}

#[test]
fn spin_lattice_generators() {
    let s = e3_report(2, true).unwrap();
    assert_eq!(
        s.e3_40.generators,
        vec!["2·[x1^2]*", "[x1x2]*", "2·[x2^2]*"]
    );
}

#[test]
fn report_round_trip() {
    let r = e3_report(3, false).unwrap();
    let back: SSReport = serde_json::from_str(&serde_json::to_string(&r).unwrap()).unwrap();
    assert_eq!(back, r);
    assert!(r.to_text().contains("E3^(2,2): dim 1"));
}
