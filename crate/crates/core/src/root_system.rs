//! Root-system tables at small rank, Weyl group closure, projections, and
//! the discriminant.
//!
//! Realizations are chosen so every root, Weyl matrix, and constant stays
//! rational: type A_{n−1} lives in ℝⁿ on the sum-zero hyperplane with
//! positive roots e_j − e_i (i < j), types B/C/D live in ℝⁿ, and G₂ lives in
//! ℝ³ on the sum-zero hyperplane with integer root coordinates.

use alloc::collections::{BTreeSet, VecDeque};
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::poly::{rat_int, MultiIndex, Point, Polynomial, Rational};

/// Hard ceiling on Weyl closure size; every supported system is far below it.
pub const WEYL_CLOSURE_LIMIT: usize = 10_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    A,
    B,
    C,
    D,
    G,
}

impl Family {
    pub fn letter(&self) -> &'static str {
        match self {
            Family::A => "A",
            Family::B => "B",
            Family::C => "C",
            Family::D => "D",
            Family::G => "G",
        }
    }
}

type Matrix = Vec<Vec<Rational>>;

/// One Weyl group element: an exact orthogonal matrix with its determinant
/// sign. For every family except G₂ the matrix is a signed permutation, and
/// a cached row map makes polynomial actions cheap in that case.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeylElement {
    matrix: Matrix,
    sign: i8,
    signed_perm: Option<Vec<(usize, i8)>>,
}

impl WeylElement {
    fn new(matrix: Matrix) -> Self {
        let det = determinant(&matrix);
        let sign = if det == rat_int(1) {
            1
        } else {
            debug_assert_eq!(det, rat_int(-1));
            -1
        };
        let signed_perm = detect_signed_permutation(&matrix);
        WeylElement {
            matrix,
            sign,
            signed_perm,
        }
    }

    pub fn dim(&self) -> usize {
        self.matrix.len()
    }

    /// Determinant of the matrix: +1 or −1.
    pub fn sign(&self) -> i8 {
        self.sign
    }

    pub fn matrix(&self) -> &[Vec<Rational>] {
        &self.matrix
    }

    /// The image w(p), computed as matrix · p.
    pub fn apply_point(&self, p: &Point) -> Result<Point> {
        if p.dim() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: p.dim(),
            });
        }
        let coords = self
            .matrix
            .iter()
            .map(|row| {
                row.iter()
                    .zip(p.coords())
                    .map(|(m, c)| m * c)
                    .sum::<Rational>()
            })
            .collect();
        Ok(Point::new(coords))
    }

    /// The pullback x ↦ f(w(x)).  The convention is pinned by
    /// `apply_poly(f).evaluate(p) == f.evaluate(apply_point(p))`, which makes
    /// composition a right action: `w1.apply_poly(w2.apply_poly(f))` equals
    /// `(w2·w1).apply_poly(f)`.
    pub fn apply_poly(&self, f: &Polynomial) -> Result<Polynomial> {
        let n = self.dim();
        if f.nvars() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: f.nvars(),
            });
        }
        if let Some(perm) = &self.signed_perm {
            // variable i of f becomes sign·x_{target}; monomials map to
            // monomials, so the whole action is a term-by-term relabeling
            let mut out = Polynomial::zero(n);
            for (beta, coeff) in f.terms() {
                let mut exps = vec![0u32; n];
                let mut flips = 0u32;
                for (i, &e) in beta.exponents().iter().enumerate() {
                    let (target, s) = perm[i];
                    exps[target] = e;
                    if s < 0 {
                        flips += e;
                    }
                }
                let c = if flips.is_multiple_of(2) {
                    coeff.clone()
                } else {
                    -coeff
                };
                out.insert_term(MultiIndex::new(exps), c);
            }
            return Ok(out);
        }
        let forms: Vec<Polynomial> = self
            .matrix
            .iter()
            .map(|row| Polynomial::linear_form(&Point::new(row.clone())))
            .collect();
        f.compose(&forms)
    }
}

/// Variable relabeling x_i ↔ x_j applied to every term.
fn swap_vars(f: &Polynomial, i: usize, j: usize) -> Polynomial {
    let mut out = Polynomial::zero(f.nvars());
    for (beta, coeff) in f.terms() {
        let e = beta.exponents();
        if e[i] == e[j] {
            out.insert_term(beta.clone(), coeff.clone());
        } else {
            let mut v = e.to_vec();
            v.swap(i, j);
            out.insert_term(MultiIndex::new(v), coeff.clone());
        }
    }
    out
}

/// Sign change x_i ↦ −x_i: negates every term odd in x_i.
fn flip_var(f: &Polynomial, i: usize) -> Polynomial {
    let mut out = Polynomial::zero(f.nvars());
    for (beta, coeff) in f.terms() {
        let c = if beta.exponent(i) % 2 == 0 {
            coeff.clone()
        } else {
            -coeff
        };
        out.insert_term(beta.clone(), c);
    }
    out
}

fn detect_signed_permutation(m: &Matrix) -> Option<Vec<(usize, i8)>> {
    let n = m.len();
    let mut map = Vec::with_capacity(n);
    let mut used = vec![false; n];
    for row in m {
        let mut hit = None;
        for (j, entry) in row.iter().enumerate() {
            if entry.is_zero() {
                continue;
            }
            if hit.is_some() {
                return None;
            }
            if *entry == rat_int(1) {
                hit = Some((j, 1i8));
            } else if *entry == rat_int(-1) {
                hit = Some((j, -1i8));
            } else {
                return None;
            }
        }
        let (j, s) = hit?;
        if used[j] {
            return None;
        }
        used[j] = true;
        map.push((j, s));
    }
    Some(map)
}

fn identity_matrix(n: usize) -> Matrix {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { rat_int(1) } else { Rational::zero() })
                .collect()
        })
        .collect()
}

fn mat_mul(a: &Matrix, b: &Matrix) -> Matrix {
    let n = a.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| (0..n).map(|k| &a[i][k] * &b[k][j]).sum())
                .collect()
        })
        .collect()
}

fn determinant(m: &Matrix) -> Rational {
    let n = m.len();
    let mut a = m.clone();
    let mut det = Rational::one();
    for col in 0..n {
        let pivot = match (col..n).find(|&r| !a[r][col].is_zero()) {
            Some(p) => p,
            None => return Rational::zero(),
        };
        if pivot != col {
            a.swap(pivot, col);
            det = -det;
        }
        let pv = a[col][col].clone();
        det *= &pv;
        let pivot_row = a[col].clone();
        for row in a.iter_mut().skip(col + 1) {
            if row[col].is_zero() {
                continue;
            }
            let factor = &row[col] / &pv;
            for (c, pc) in pivot_row.iter().enumerate().skip(col) {
                let sub = &factor * pc;
                row[c] -= sub;
            }
        }
    }
    det
}

/// Reflection in the hyperplane orthogonal to `alpha`:
/// s_α(x) = x − 2(⟨x,α⟩/⟨α,α⟩)α.
fn reflection_matrix(alpha: &Point) -> Matrix {
    let n = alpha.dim();
    let norm2 = alpha.dot(alpha).expect("same dimension");
    let mut m = identity_matrix(n);
    for (i, row) in m.iter_mut().enumerate() {
        for (j, entry) in row.iter_mut().enumerate() {
            let corr = rat_int(2) * alpha.coord(i) * alpha.coord(j) / &norm2;
            *entry -= corr;
        }
    }
    m
}

#[derive(Debug, Clone)]
pub struct RootSystem {
    family: Family,
    rank: usize,
    dim: usize,
    simple_roots: Vec<Point>,
    positive_roots: Vec<Point>,
    generators: Vec<WeylElement>,
    weyl: Vec<WeylElement>,
    delta: Polynomial,
    gram_delta: Rational,
}

impl RootSystem {
    /// Build the full root-system data for a supported family and rank:
    /// A with rank 1–5, B/C with rank 1–3, D with rank 3–4, and G₂.
    pub fn build(family: Family, rank: usize) -> Result<RootSystem> {
        let (dim, simple_roots, positive_roots) = root_tables(family, rank)?;
        let generators: Vec<WeylElement> = simple_roots
            .iter()
            .map(|alpha| WeylElement::new(reflection_matrix(alpha)))
            .collect();
        let weyl = weyl_closure(&generators)?;
        let (delta, gram_delta) = discriminant_data(dim, &positive_roots)?;
        Ok(RootSystem {
            family,
            rank,
            dim,
            simple_roots,
            positive_roots,
            generators,
            weyl,
            delta,
            gram_delta,
        })
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Ambient dimension of the realization (rank+1 for A, 3 for G₂).
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Short name such as `A2` or `G2`.
    pub fn label(&self) -> String {
        alloc::format!("{}{}", self.family.letter(), self.rank)
    }

    pub fn simple_roots(&self) -> &[Point] {
        &self.simple_roots
    }

    pub fn positive_roots(&self) -> &[Point] {
        &self.positive_roots
    }

    pub fn weyl(&self) -> &[WeylElement] {
        &self.weyl
    }

    pub fn order(&self) -> usize {
        self.weyl.len()
    }

    /// Δ = Π_{α∈Φ⁺} ⟨α,x⟩.
    pub fn delta(&self) -> &Polynomial {
        &self.delta
    }

    /// The apolar Gram constant [Δ,Δ].
    pub fn gram_delta(&self) -> &Rational {
        &self.gram_delta
    }

    pub fn delta_at(&self, p: &Point) -> Result<Rational> {
        self.delta.evaluate(p)
    }

    /// A point is regular when the discriminant does not vanish there.
    pub fn is_regular(&self, p: &Point) -> Result<bool> {
        Ok(!self.delta_at(p)?.is_zero())
    }

    /// Symmetric Weyl average P_sym f = (1/|𝒲|) Σ_w f∘w.
    pub fn project_sym(&self, f: &Polynomial) -> Result<Polynomial> {
        self.project(f, false)
    }

    /// Alternating Weyl average P_alt f = (1/|𝒲|) Σ_w ε(w) f∘w.
    pub fn project_alt(&self, f: &Polynomial) -> Result<Polynomial> {
        self.project(f, true)
    }

    fn project(&self, f: &Polynomial, signed: bool) -> Result<Polynomial> {
        if f.nvars() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: f.nvars(),
            });
        }
        match self.family {
            Family::G => self.project_by_group_sum(f, signed),
            _ => Ok(self.project_factored(f, signed)),
        }
    }

    /// Literal average over the stored group elements. Used for G₂, whose
    /// Weyl group is not a (signed) permutation group, and as the oracle the
    /// factored projector is tested against.
    fn project_by_group_sum(&self, f: &Polynomial, signed: bool) -> Result<Polynomial> {
        let mut acc = Polynomial::zero(self.dim);
        for w in &self.weyl {
            let img = w.apply_poly(f)?;
            if signed && w.sign() < 0 {
                acc = &acc - &img;
            } else {
                acc = &acc + &img;
            }
        }
        Ok(acc.scale(&(Rational::one() / rat_int(self.order() as i64))))
    }

    /// Weyl average computed through coset decompositions instead of one
    /// pass per group element: W(B/C) = {±1}ⁿ ⋊ Sₙ acting by signed
    /// permutations, W(D) likewise with even sign patterns, W(A) = Sₙ; the
    /// symmetric-group average itself is peeled one letter at a time, since
    /// averaging over Sₖ is a k-term coset pass after averaging over S_{k−1}.
    /// Determinant weights stay exact: a coordinate swap contributes −1, a
    /// single sign flip −1, and an even sign pattern +1, so the alternating
    /// variant negates swap and flip images while the D-series flip stage is
    /// sign-free in both variants. O(n²) term-map passes replace |𝒲| of them.
    fn project_factored(&self, f: &Polynomial, signed: bool) -> Polynomial {
        let n = self.dim;
        let half = Rational::one() / rat_int(2);
        let mut cur = f.clone();
        match self.family {
            Family::B | Family::C => {
                for i in 0..n {
                    let flipped = flip_var(&cur, i);
                    let merged = if signed { &cur - &flipped } else { &cur + &flipped };
                    cur = merged.scale(&half);
                }
            }
            Family::D => {
                let mut plus = cur.clone();
                let mut minus = cur;
                for i in 0..n {
                    plus = &plus + &flip_var(&plus, i);
                    minus = &minus - &flip_var(&minus, i);
                }
                cur = (&plus + &minus).scale(&(Rational::one() / rat_int(1i64 << n)));
            }
            _ => {}
        }
        for k in 1..n {
            let mut acc = cur.clone();
            for i in 0..k {
                let swapped = swap_vars(&cur, i, k);
                acc = if signed { &acc - &swapped } else { &acc + &swapped };
            }
            cur = acc.scale(&(Rational::one() / rat_int(k as i64 + 1)));
        }
        cur
    }

    /// Invariance under the generating reflections, which is equivalent to
    /// invariance under the whole group.
    pub fn is_symmetric(&self, f: &Polynomial) -> Result<bool> {
        for g in &self.generators {
            if g.apply_poly(f)? != *f {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// f∘s = −f on the generating reflections, equivalent to f∘w = ε(w)f.
    pub fn is_alternating(&self, f: &Polynomial) -> Result<bool> {
        for g in &self.generators {
            if g.apply_poly(f)? != -f {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Same system with one positive root replaced by its negative.  The
    /// Weyl group is unchanged (s_{−α} = s_α); only Δ and the moment-formula
    /// constants pick up signs that must cancel downstream.
    pub fn with_flipped_root(&self, idx: usize) -> Result<RootSystem> {
        assert!(idx < self.positive_roots.len(), "root index out of range");
        let mut positive_roots = self.positive_roots.clone();
        positive_roots[idx] = positive_roots[idx].neg();
        let (delta, gram_delta) = discriminant_data(self.dim, &positive_roots)?;
        Ok(RootSystem {
            family: self.family,
            rank: self.rank,
            dim: self.dim,
            simple_roots: self.simple_roots.clone(),
            positive_roots,
            generators: self.generators.clone(),
            weyl: self.weyl.clone(),
            delta,
            gram_delta,
        })
    }
}

fn discriminant_data(
    dim: usize,
    positive_roots: &[Point],
) -> Result<(Polynomial, Rational)> {
    let mut delta = Polynomial::one(dim);
    for alpha in positive_roots {
        delta = delta.mul_checked(&Polynomial::linear_form(alpha))?;
    }
    let gram = delta.apolar(&delta)?;
    Ok((delta, gram))
}

fn weyl_closure(generators: &[WeylElement]) -> Result<Vec<WeylElement>> {
    let n = generators
        .first()
        .map(WeylElement::dim)
        .expect("at least one simple root");
    let ident = identity_matrix(n);
    let mut seen: BTreeSet<Matrix> = BTreeSet::new();
    seen.insert(ident.clone());
    let mut queue: VecDeque<Matrix> = VecDeque::new();
    queue.push_back(ident);
    let mut out = Vec::new();
    while let Some(m) = queue.pop_front() {
        out.push(WeylElement::new(m.clone()));
        for g in generators {
            let prod = mat_mul(&g.matrix, &m);
            if !seen.contains(&prod) {
                if seen.len() >= WEYL_CLOSURE_LIMIT {
                    return Err(Error::WeylClosureExceeded {
                        limit: WEYL_CLOSURE_LIMIT,
                    });
                }
                seen.insert(prod.clone());
                queue.push_back(prod);
            }
        }
    }
    Ok(out)
}

fn unit(dim: usize, i: usize) -> Point {
    let mut coords = vec![Rational::zero(); dim];
    coords[i] = rat_int(1);
    Point::new(coords)
}

fn root_tables(family: Family, rank: usize) -> Result<(usize, Vec<Point>, Vec<Point>)> {
    let unsupported = || Error::UnsupportedRootSystem {
        family: family.letter(),
        rank,
    };
    match family {
        Family::A => {
            if !(1..=5).contains(&rank) {
                return Err(unsupported());
            }
            let n = rank + 1;
            let simple: Vec<Point> = (0..rank)
                .map(|i| unit(n, i + 1).add(&unit(n, i).neg()).unwrap())
                .collect();
            let mut positive = Vec::new();
            for i in 0..n {
                for j in i + 1..n {
                    positive.push(unit(n, j).add(&unit(n, i).neg()).unwrap());
                }
            }
            Ok((n, simple, positive))
        }
        Family::B | Family::C => {
            if !(1..=3).contains(&rank) {
                return Err(unsupported());
            }
            let n = rank;
            let long_first = if family == Family::C {
                // C_n: long roots 2e_i, first simple root 2e_1
                unit(n, 0).scale(&rat_int(2))
            } else {
                unit(n, 0)
            };
            let mut simple = vec![long_first.clone()];
            for i in 0..rank.saturating_sub(1) {
                simple.push(unit(n, i + 1).add(&unit(n, i).neg()).unwrap());
            }
            let mut positive = Vec::new();
            for i in 0..n {
                positive.push(if family == Family::C {
                    unit(n, i).scale(&rat_int(2))
                } else {
                    unit(n, i)
                });
            }
            for i in 0..n {
                for j in i + 1..n {
                    positive.push(unit(n, j).add(&unit(n, i).neg()).unwrap());
                    positive.push(unit(n, j).add(&unit(n, i)).unwrap());
                }
            }
            Ok((n, simple, positive))
        }
        Family::D => {
            if !(3..=4).contains(&rank) {
                return Err(unsupported());
            }
            let n = rank;
            let mut simple = vec![unit(n, 1).add(&unit(n, 0)).unwrap()];
            for i in 0..rank - 1 {
                simple.push(unit(n, i + 1).add(&unit(n, i).neg()).unwrap());
            }
            let mut positive = Vec::new();
            for i in 0..n {
                for j in i + 1..n {
                    positive.push(unit(n, j).add(&unit(n, i).neg()).unwrap());
                    positive.push(unit(n, j).add(&unit(n, i)).unwrap());
                }
            }
            Ok((n, simple, positive))
        }
        Family::G => {
            if rank != 2 {
                return Err(unsupported());
            }
            let p = |c: [i64; 3]| Point::from_integers(&c);
            let simple = vec![p([1, -1, 0]), p([-2, 1, 1])];
            let positive = vec![
                p([1, -1, 0]),
                p([-2, 1, 1]),
                p([-1, 0, 1]),
                p([0, -1, 1]),
                p([1, -2, 1]),
                p([-1, -1, 2]),
            ];
            Ok((3, simple, positive))
        }
    }
}
