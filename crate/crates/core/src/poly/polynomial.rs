use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::MAX_TOTAL_DEGREE;

use super::{MultiIndex, Point, Rational};

/// Sparse multivariate polynomial with exact rational coefficients.
///
/// Invariants: no zero coefficient is ever stored, and every key has length
/// `nvars`. The zero polynomial has no terms and its degree is `None`,
/// standing in for the conventional −∞.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polynomial {
    nvars: usize,
    terms: BTreeMap<MultiIndex, Rational>,
}

impl Polynomial {
    pub fn zero(nvars: usize) -> Self {
        Polynomial {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Rational::one())
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        let mut p = Self::zero(nvars);
        p.insert_term(MultiIndex::zero(nvars), c);
        p
    }

    /// The variable `x_{var+1}` (0-based index).
    pub fn variable(nvars: usize, var: usize) -> Self {
        Self::monomial(nvars, MultiIndex::unit(nvars, var), Rational::one())
    }

    pub fn monomial(nvars: usize, index: MultiIndex, coeff: Rational) -> Self {
        assert_eq!(index.len(), nvars, "multi-index length must equal nvars");
        let mut p = Self::zero(nvars);
        p.insert_term(index, coeff);
        p
    }

    /// The linear form `x ↦ ⟨α, x⟩ = Σ αᵢ xᵢ`.
    pub fn linear_form(alpha: &Point) -> Self {
        let n = alpha.dim();
        let mut p = Self::zero(n);
        for (i, c) in alpha.coords().iter().enumerate() {
            p.insert_term(MultiIndex::unit(n, i), c.clone());
        }
        p
    }

    pub fn from_terms<I>(nvars: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (MultiIndex, Rational)>,
    {
        let mut p = Self::zero(nvars);
        for (index, coeff) in terms {
            assert_eq!(index.len(), nvars, "multi-index length must equal nvars");
            p.insert_term(index, coeff);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Total degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(MultiIndex::total_degree).max()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&MultiIndex, &Rational)> {
        self.terms.iter()
    }

    /// Coefficient of `index` (zero if the monomial is absent).
    pub fn coefficient(&self, index: &MultiIndex) -> Rational {
        self.terms.get(index).cloned().unwrap_or_else(Rational::zero)
    }

    /// Leading term in graded lexicographic order.
    pub fn leading_term_graded_lex(&self) -> Option<(&MultiIndex, &Rational)> {
        self.terms
            .iter()
            .max_by(|(a, _), (b, _)| a.graded_lex_cmp(b))
    }

    pub(crate) fn insert_term(&mut self, index: MultiIndex, coeff: Rational) {
        if coeff.is_zero() {
            return;
        }
        use alloc::collections::btree_map::Entry;
        match self.terms.entry(index) {
            Entry::Vacant(e) => {
                e.insert(coeff);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += coeff;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    fn check_same_dim(&self, other: &Polynomial) -> Result<()> {
        if self.nvars != other.nvars {
            return Err(Error::DimensionMismatch {
                expected: self.nvars,
                found: other.nvars,
            });
        }
        Ok(())
    }

    fn check_point_dim(&self, p: &Point) -> Result<()> {
        if self.nvars != p.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.nvars,
                found: p.dim(),
            });
        }
        Ok(())
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.nvars);
        }
        Polynomial {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(b, v)| (b.clone(), v * c))
                .collect(),
        }
    }

    /// Apolar (Fischer/Bombieri) inner product `[f,g] = Σ_β f_β g_β β!`.
    pub fn apolar(&self, other: &Polynomial) -> Result<Rational> {
        self.check_same_dim(other)?;
        let (small, large) = if self.num_terms() <= other.num_terms() {
            (self, other)
        } else {
            (other, self)
        };
        let mut acc = Rational::zero();
        for (beta, c) in &small.terms {
            if let Some(d) = large.terms.get(beta) {
                acc += c * d * Rational::from_integer(beta.factorial());
            }
        }
        Ok(acc)
    }

    /// Exact value of the polynomial at `p`.
    pub fn evaluate(&self, p: &Point) -> Result<Rational> {
        self.check_point_dim(p)?;
        // powers[i][e] = p_i^e, grown lazily
        let mut powers: Vec<Vec<Rational>> = p
            .coords()
            .iter()
            .map(|_| alloc::vec![Rational::one()])
            .collect();
        let mut acc = Rational::zero();
        for (beta, c) in &self.terms {
            let mut term = c.clone();
            for (i, &e) in beta.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while powers[i].len() <= e as usize {
                    let next = powers[i].last().unwrap() * p.coord(i);
                    powers[i].push(next);
                }
                term *= &powers[i][e as usize];
            }
            acc += term;
        }
        Ok(acc)
    }

    /// Translation `T_a f(x) = f(x+a)`; the degree never changes.
    pub fn translate(&self, a: &Point) -> Result<Polynomial> {
        self.check_point_dim(a)?;
        let mut cur = self.clone();
        for (i, ai) in a.coords().iter().enumerate() {
            if !ai.is_zero() {
                cur = cur.shift_variable(i, ai);
            }
        }
        Ok(cur)
    }

    /// Substitute `x_var -> x_var + a` by binomial expansion.
    fn shift_variable(&self, var: usize, a: &Rational) -> Polynomial {
        let max_e = self
            .terms
            .keys()
            .map(|b| b.exponent(var))
            .max()
            .unwrap_or(0) as usize;
        let mut pows = Vec::with_capacity(max_e + 1);
        pows.push(Rational::one());
        for _ in 0..max_e {
            let next = pows.last().unwrap() * a;
            pows.push(next);
        }
        let mut out = Polynomial::zero(self.nvars);
        for (beta, c) in &self.terms {
            let e = beta.exponent(var);
            if e == 0 {
                out.insert_term(beta.clone(), c.clone());
                continue;
            }
            // (x+a)^e = Σ_j C(e,j) a^{e-j} x^j
            let mut binom = BigInt::one();
            for j in 0..=e {
                let coeff = c * Rational::from_integer(binom.clone()) * &pows[(e - j) as usize];
                out.insert_term(beta.with_exponent(var, j), coeff);
                if j < e {
                    binom = binom * (e - j) / (j + 1);
                }
            }
        }
        out
    }

    /// Drop every term of total degree above `k`; idempotent.
    pub fn truncate(&self, k: u32) -> Polynomial {
        Polynomial {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .filter(|(b, _)| b.total_degree() <= k)
                .map(|(b, c)| (b.clone(), c.clone()))
                .collect(),
        }
    }

    /// Directional derivative `⟨α, ∂⟩ f = Σ αᵢ ∂f/∂xᵢ`.
    pub fn directional_derivative(&self, alpha: &Point) -> Result<Polynomial> {
        self.check_point_dim(alpha)?;
        let mut out = Polynomial::zero(self.nvars);
        for (i, ai) in alpha.coords().iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            for (beta, c) in &self.terms {
                if let Some(down) = beta.step_down(i) {
                    let e = beta.exponent(i);
                    out.insert_term(down, c * ai * super::rat_int(e as i64));
                }
            }
        }
        Ok(out)
    }

    /// Partial derivative with respect to variable `var`.
    pub fn partial_derivative(&self, var: usize) -> Polynomial {
        let mut out = Polynomial::zero(self.nvars);
        for (beta, c) in &self.terms {
            if let Some(down) = beta.step_down(var) {
                let e = beta.exponent(var);
                out.insert_term(down, c * super::rat_int(e as i64));
            }
        }
        out
    }

    /// Product truncated to total degree `k`; terms above `k` are never
    /// materialised.
    pub fn mul_truncated(&self, other: &Polynomial, k: u32) -> Result<Polynomial> {
        self.check_same_dim(other)?;
        if let (Some(d1), Some(d2)) = (self.degree(), other.degree()) {
            let effective = (d1 + d2).min(k);
            if effective > MAX_TOTAL_DEGREE {
                return Err(Error::DegreeCapExceeded {
                    degree: effective,
                    cap: MAX_TOTAL_DEGREE,
                });
            }
        }
        let mut out = Polynomial::zero(self.nvars);
        for (b1, c1) in &self.terms {
            let d1 = b1.total_degree();
            if d1 > k {
                continue;
            }
            for (b2, c2) in &other.terms {
                if d1 + b2.total_degree() > k {
                    continue;
                }
                out.insert_term(b1.mul(b2), c1 * c2);
            }
        }
        Ok(out)
    }

    /// Full product with the degree-cap check applied.
    pub fn mul_checked(&self, other: &Polynomial) -> Result<Polynomial> {
        self.mul_truncated(other, u32::MAX)
    }

    /// `f^e` with the degree-cap check applied.
    pub fn pow_checked(&self, e: u32) -> Result<Polynomial> {
        if let Some(d) = self.degree() {
            let total = d.saturating_mul(e);
            if total > MAX_TOTAL_DEGREE {
                return Err(Error::DegreeCapExceeded {
                    degree: total,
                    cap: MAX_TOTAL_DEGREE,
                });
            }
        }
        let mut acc = Polynomial::one(self.nvars);
        for _ in 0..e {
            acc = acc.mul_checked(self)?;
        }
        Ok(acc)
    }

    /// Substitute variable `i` by `forms[i]` for every variable at once.
    /// All substituted forms must share one ambient dimension.
    pub fn compose(&self, forms: &[Polynomial]) -> Result<Polynomial> {
        if forms.len() != self.nvars {
            return Err(Error::DimensionMismatch {
                expected: self.nvars,
                found: forms.len(),
            });
        }
        let target = match forms.first() {
            Some(f) => f.nvars(),
            None => return Ok(Polynomial::constant(0, self.coefficient(&MultiIndex::zero(0)))),
        };
        for f in forms {
            if f.nvars() != target {
                return Err(Error::DimensionMismatch {
                    expected: target,
                    found: f.nvars(),
                });
            }
        }
        // pow_cache[i][e] = forms[i]^e, grown lazily
        let mut pow_cache: Vec<Vec<Polynomial>> = forms
            .iter()
            .map(|_| alloc::vec![Polynomial::one(target)])
            .collect();
        let mut out = Polynomial::zero(target);
        for (beta, c) in &self.terms {
            let mut term = Polynomial::constant(target, c.clone());
            for (i, &e) in beta.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while pow_cache[i].len() <= e as usize {
                    let next = pow_cache[i].last().unwrap().mul_checked(&forms[i])?;
                    pow_cache[i].push(next);
                }
                term = term.mul_checked(&pow_cache[i][e as usize])?;
            }
            out = &out + &term;
        }
        Ok(out)
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        assert_eq!(self.nvars, rhs.nvars, "polynomial dimension mismatch");
        let mut out = self.clone();
        for (b, c) in &rhs.terms {
            out.insert_term(b.clone(), c.clone());
        }
        out
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        assert_eq!(self.nvars, rhs.nvars, "polynomial dimension mismatch");
        let mut out = self.clone();
        for (b, c) in &rhs.terms {
            out.insert_term(b.clone(), -c);
        }
        out
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(b, c)| (b.clone(), -c)).collect(),
        }
    }
}

/// Unchecked full product for internal degree-bounded call sites; panics on
/// dimension mismatch, so user-reachable paths go through `mul_checked`.
impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        assert_eq!(self.nvars, rhs.nvars, "polynomial dimension mismatch");
        let mut out = Polynomial::zero(self.nvars);
        for (b1, c1) in &self.terms {
            for (b2, c2) in &rhs.terms {
                out.insert_term(b1.mul(b2), c1 * c2);
            }
        }
        out
    }
}

impl fmt::Display for Polynomial {
    /// Canonical text form, parseable by the CLI expression grammar:
    /// graded-lex descending term order, explicit `*` between factors,
    /// `^` for exponents, and a numeral whenever a sign must be carried
    /// by the leading term (so `-x1` prints as `-1*x1`).
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut ordered: Vec<_> = self.terms.iter().collect();
        ordered.sort_by(|(a, _), (b, _)| b.graded_lex_cmp(a));
        for (pos, (beta, coeff)) in ordered.into_iter().enumerate() {
            let mag = coeff.abs();
            if pos == 0 {
                if coeff.is_negative() {
                    write!(f, "-")?;
                }
            } else if coeff.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let monomial = monomial_text(beta);
            if monomial.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() && (pos > 0 || !coeff.is_negative()) {
                write!(f, "{monomial}")?;
            } else {
                // leading negative unit coefficients keep the numeral so the
                // printed form stays inside the expression grammar
                write!(f, "{mag}*{monomial}")?;
            }
        }
        Ok(())
    }
}

fn monomial_text(beta: &MultiIndex) -> String {
    use core::fmt::Write;
    let mut s = String::new();
    for (i, &e) in beta.exponents().iter().enumerate() {
        if e == 0 {
            continue;
        }
        if !s.is_empty() {
            s.push('*');
        }
        if e == 1 {
            let _ = write!(s, "x{}", i + 1);
        } else {
            let _ = write!(s, "x{}^{}", i + 1, e);
        }
    }
    s
}
