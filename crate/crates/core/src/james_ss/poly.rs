use std::collections::BTreeSet;
use std::fmt;

use super::SsError;

/// A polynomial over 𝔽₂ in `x₁,…,xₙ`, each of cohomological degree 2.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct F2Poly {
    n: usize,
    terms: BTreeSet<Vec<u32>>,
}

impl F2Poly {
    pub fn zero(n: usize) -> Self {
        F2Poly {
            n,
            terms: BTreeSet::new(),
        }
    }

    pub fn one(n: usize) -> Self {
        Self::monomial(vec![0; n])
    }

    /// `x_i`, zero-based.
    pub fn var(n: usize, i: usize) -> Self {
        let mut e = vec![0; n];
        e[i] = 1;
        Self::monomial(e)
    }

    pub fn monomial(exponents: Vec<u32>) -> Self {
        let n = exponents.len();
        let mut terms = BTreeSet::new();
        terms.insert(exponents);
        F2Poly { n, terms }
    }

    /// Sum of the given monomials; repeated ones cancel.
    pub fn from_terms(n: usize, monomials: impl IntoIterator<Item = Vec<u32>>) -> Self {
        let mut p = Self::zero(n);
        for m in monomials {
            assert_eq!(m.len(), n, "exponent vector length");
            p.toggle(m);
        }
        p
    }

    fn toggle(&mut self, m: Vec<u32>) {
        if !self.terms.remove(&m) {
            self.terms.insert(m);
        }
    }

    pub fn nvars(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = &Vec<u32>> {
        self.terms.iter()
    }

    pub fn contains(&self, m: &[u32]) -> bool {
        self.terms.contains(m)
    }

    /// Cohomological degree, `None` for zero or inhomogeneous input.
    pub fn degree(&self) -> Option<usize> {
        let mut degs = self.terms.iter().map(|m| 2 * m.iter().sum::<u32>() as usize);
        let d = degs.next()?;
        degs.all(|e| e == d).then_some(d)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.is_zero() || self.degree().is_some()
    }

    pub fn add(&self, other: &F2Poly) -> F2Poly {
        assert_eq!(self.n, other.n, "polynomials in different rings");
        let terms = self
            .terms
            .symmetric_difference(&other.terms)
            .cloned()
            .collect();
        F2Poly { n: self.n, terms }
    }

    pub fn mul(&self, other: &F2Poly) -> F2Poly {
        assert_eq!(self.n, other.n, "polynomials in different rings");
        let mut out = F2Poly::zero(self.n);
        for a in &self.terms {
            for b in &other.terms {
                out.toggle(a.iter().zip(b).map(|(x, y)| x + y).collect());
            }
        }
        out
    }
}

impl fmt::Display for F2Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        // highest monomial first, matching the basis order
        for (k, m) in self.terms.iter().rev().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{}", monomial_name(m))?;
        }
        Ok(())
    }
}

/// `x1^2x3`, or `1` for the empty product.
pub fn monomial_name(m: &[u32]) -> String {
    let mut s = String::new();
    for (i, &a) in m.iter().enumerate() {
        match a {
            0 => {}
            1 => s.push_str(&format!("x{}", i + 1)),
            _ => s.push_str(&format!("x{}^{}", i + 1, a)),
        }
    }
    if s.is_empty() {
        s.push('1');
    }
    s
}

/// `Sq²` on `𝔽₂[x₁,…,xₙ]`: from the total square `Sq(xᵢ) = xᵢ + xᵢ²` and
/// the Cartan formula, `Sq²(∏ xᵢ^{aᵢ}) = Σ aᵢ xᵢ ∏ xᵢ^{aᵢ}`.
pub fn sq2(p: &F2Poly) -> Result<F2Poly, SsError> {
    if !p.is_homogeneous() {
        return Err(SsError::NotHomogeneous);
    }
    let mut out = F2Poly::zero(p.n);
    for m in &p.terms {
        for (i, &a) in m.iter().enumerate() {
            if a % 2 == 1 {
                let mut t = m.clone();
                t[i] += 1;
                out.toggle(t);
            }
        }
    }
    Ok(out)
}

/// The twisted square `Sq²_w(p) = Sq²(p) + w·p`, for `w` of degree 2.
pub fn sq2_w(p: &F2Poly, w: &F2Poly) -> Result<F2Poly, SsError> {
    if p.n != w.n {
        return Err(SsError::RingMismatch);
    }
    if !w.is_zero() && w.degree() != Some(2) {
        return Err(SsError::TwistDegree);
    }
    Ok(sq2(p)?.add(&w.mul(p)))
}

/// Monomials of cohomological degree `degree`, in decreasing
/// lexicographic order of exponent vectors (`x₁²` before `x₁x₂`). Odd
/// degrees have none.
pub fn monomial_basis(n: usize, degree: usize) -> Vec<Vec<u32>> {
    if degree % 2 == 1 {
        return Vec::new();
    }
    fn go(n: usize, left: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if prefix.len() + 1 == n {
            prefix.push(left);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for a in (0..=left).rev() {
            prefix.push(a);
            go(n, left - a, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if n == 0 {
        if degree == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    go(n, (degree / 2) as u32, &mut Vec::with_capacity(n), &mut out);
    out
}
