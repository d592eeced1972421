//! Adjoint operator calculus on polynomials: truncated exponential kernels,
//! adjoint translation, exact division by a linear form, the anti-derivative
//! along a root, and the compositions of both over all positive roots.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::poly::{MultiIndex, Point, Polynomial, Rational};
use crate::root_system::RootSystem;
use crate::MAX_TOTAL_DEGREE;

/// Truncated exponential kernel `q_a^k(x) = Σ_{l=0}^{k} ⟨x,a⟩^l / l!`.
///
/// The `1/l!` factor makes the kernel reproducing for the apolar pairing:
/// `[f, q_a^k] = f(a)` whenever `deg f ≤ k`, because `q_a^k` is the degree-k
/// Taylor truncation of `e^{⟨x,a⟩}` and monomials have apolar norm² β!.
pub fn exp_kernel(a: &Point, k: u32) -> Result<Polynomial> {
    if k > MAX_TOTAL_DEGREE {
        return Err(Error::DegreeCapExceeded {
            degree: k,
            cap: MAX_TOTAL_DEGREE,
        });
    }
    let form = Polynomial::linear_form(a);
    let mut acc = Polynomial::one(a.dim());
    let mut power = Polynomial::one(a.dim());
    let mut fact = BigInt::one();
    for l in 1..=k {
        power = power.mul_checked(&form)?;
        fact *= l;
        let inv = Rational::one() / Rational::from_integer(fact.clone());
        acc = &acc + &power.scale(&inv);
    }
    Ok(acc)
}

/// Alternating reproducing kernel `r_a^k = P_alt q_a^k`, satisfying
/// `[r_a^k, g] = g(a)` for alternating g of degree ≤ k.
pub fn alt_kernel(rs: &RootSystem, a: &Point, k: u32) -> Result<Polynomial> {
    rs.project_alt(&exp_kernel(a, k)?)
}

/// Adjoint of translation on polynomials of degree ≤ k:
/// `T_a* f = F^k (q_a^k · f)`.
pub fn translate_adjoint(f: &Polynomial, a: &Point, k: u32) -> Result<Polynomial> {
    if let Some(d) = f.degree() {
        if d > k {
            return Err(Error::DegreeAboveTruncation {
                degree: d,
                order: k,
            });
        }
    }
    exp_kernel(a, k)?.mul_truncated(f, k)
}

/// Exact quotient `f / ⟨α,x⟩` by long division in graded-lex order.
///
/// A single divisor generates its own ideal's Gröbner basis, so the division
/// terminates with zero remainder exactly when f is divisible; the first
/// leading term that the divisor's leading monomial fails to divide proves
/// a nonzero remainder.
pub fn divide_linear(f: &Polynomial, alpha: &Point) -> Result<Polynomial> {
    if alpha.is_zero() {
        return Err(Error::ZeroDirection);
    }
    if f.nvars() != alpha.dim() {
        return Err(Error::DimensionMismatch {
            expected: f.nvars(),
            found: alpha.dim(),
        });
    }
    let divisor = Polynomial::linear_form(alpha);
    let (dlead, dcoeff) = divisor
        .leading_term_graded_lex()
        .map(|(b, c)| (b.clone(), c.clone()))
        .expect("nonzero linear form");
    let mut rem = f.clone();
    let mut quot = Polynomial::zero(f.nvars());
    while !rem.is_zero() {
        let (rlead, rcoeff) = rem
            .leading_term_graded_lex()
            .map(|(b, c)| (b.clone(), c.clone()))
            .expect("nonzero remainder");
        let q = rlead.checked_div(&dlead).ok_or(Error::NotDivisible)?;
        let c = rcoeff / &dcoeff;
        let step = Polynomial::monomial(f.nvars(), q, c);
        rem = &rem - &(&step * &divisor);
        quot = &quot + &step;
    }
    Ok(quot)
}

/// Anti-derivative along α (adjoint of the division operator):
/// `I_α f(x) = ∫₀^{⟨x,α°⟩} f(x − αt) dt` with `α° = α/⟨α,α⟩`.
///
/// The integrand is polynomial in t, so the result is the exact polynomial
/// obtained by expanding, integrating termwise, and substituting the upper
/// limit. It vanishes on the wall ⟨α,x⟩ = 0 and inverts ⟨α,∂⟩.
pub fn antiderivative_linear(f: &Polynomial, alpha: &Point) -> Result<Polynomial> {
    if alpha.is_zero() {
        return Err(Error::ZeroDirection);
    }
    let n = f.nvars();
    if n != alpha.dim() {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: alpha.dim(),
        });
    }
    let deg = match f.degree() {
        Some(d) => d,
        None => return Ok(Polynomial::zero(n)),
    };
    if deg + 1 > MAX_TOTAL_DEGREE {
        return Err(Error::DegreeCapExceeded {
            degree: deg + 1,
            cap: MAX_TOTAL_DEGREE,
        });
    }
    // only the variables α touches take part in the t-expansion; the rest of
    // each monomial passes through unchanged
    let support: Vec<usize> = (0..n).filter(|&i| !alpha.coord(i).is_zero()).collect();
    // rows[(i,e)][j] = C(e,j)·(−αᵢ)^{e−j}: the x_i^j t^{e−j} coefficient of
    // (x_i − αᵢt)^e, cached because exponents repeat across terms
    let mut rows: BTreeMap<(usize, u32), Vec<Rational>> = BTreeMap::new();
    // f(x − αt) collected by powers of t
    let mut in_t: Vec<Polynomial> = vec![Polynomial::zero(n); deg as usize + 1];
    for (beta, coeff) in f.terms() {
        let mut states: Vec<(Vec<u32>, u32, Rational)> =
            vec![(Vec::with_capacity(support.len()), 0, coeff.clone())];
        for &i in &support {
            let e = beta.exponent(i);
            let row = rows
                .entry((i, e))
                .or_insert_with(|| binomial_row(alpha.coord(i), e));
            let mut next = Vec::with_capacity(states.len() * (e as usize + 1));
            for (sv, tp, c) in &states {
                for (j, rj) in row.iter().enumerate() {
                    let mut sv2 = Vec::with_capacity(support.len());
                    sv2.extend_from_slice(sv);
                    sv2.push(j as u32);
                    next.push((sv2, tp + e - j as u32, c * rj));
                }
            }
            states = next;
        }
        for (sv, tp, c) in states {
            let mut exps = beta.exponents().to_vec();
            for (pos, &i) in support.iter().enumerate() {
                exps[i] = sv[pos];
            }
            in_t[tp as usize].insert_term(MultiIndex::new(exps), c);
        }
    }
    // ∫₀^T Σ c_m(x) t^m dt = Σ c_m(x) T^{m+1}/(m+1) at T = ⟨x,α°⟩
    let norm2 = alpha.dot(alpha).expect("same dimension");
    let upper = Polynomial::linear_form(&alpha.scale(&(Rational::one() / norm2)));
    let mut upper_pow = upper.clone();
    let mut out = Polynomial::zero(n);
    for (m, c) in in_t.iter().enumerate() {
        if !c.is_zero() {
            let inv = Rational::one() / crate::poly::rat_int(m as i64 + 1);
            for (b1, c1) in c.terms() {
                let c1s = c1 * &inv;
                for (b2, c2) in upper_pow.terms() {
                    out.insert_term(b1.mul(b2), &c1s * c2);
                }
            }
        }
        if m < deg as usize {
            upper_pow = upper_pow.mul_checked(&upper)?;
        }
    }
    Ok(out)
}

/// Binomial expansion row of `(x − a·t)^e` in the two symbols `x`, `t`:
/// entry j is the coefficient of `x^j t^{e−j}`.
fn binomial_row(a: &Rational, e: u32) -> Vec<Rational> {
    let neg = -a;
    let mut pows = Vec::with_capacity(e as usize + 1);
    pows.push(Rational::one());
    for _ in 0..e {
        let next = pows.last().unwrap() * &neg;
        pows.push(next);
    }
    let mut binom = BigInt::one();
    let mut row = Vec::with_capacity(e as usize + 1);
    for j in 0..=e {
        row.push(Rational::from_integer(binom.clone()) * &pows[(e - j) as usize]);
        if j < e {
            binom = binom * (e - j) / (j + 1);
        }
    }
    row
}

/// `D_Δ f = f / Δ` as successive exact divisions by the positive roots.
pub fn divide_discriminant(rs: &RootSystem, f: &Polynomial) -> Result<Polynomial> {
    let mut cur = f.clone();
    for alpha in rs.positive_roots() {
        cur = divide_linear(&cur, alpha)?;
    }
    Ok(cur)
}

/// Iterated anti-derivative `I_Δ`: the adjoint of [`divide_discriminant`],
/// mapping symmetric polynomials to alternating ones.
///
/// Computed as the chain of one-root anti-derivatives followed by the
/// alternating projection. The projection is what makes the operator
/// well-defined: the raw chain pairs correctly against every polynomial
/// divisible by Δ, but carries an order-dependent remainder orthogonal to
/// the alternating subspace; P_alt removes exactly that remainder, so the
/// output is independent of the root order and `[h, I_Δ g] = [D_Δ h, g]`
/// holds for all alternating h.
pub fn antiderivative_discriminant(rs: &RootSystem, f: &Polynomial) -> Result<Polynomial> {
    let l = rs.positive_roots().len();
    let order: Vec<usize> = (0..l).collect();
    antiderivative_discriminant_ordered(rs, f, &order)
}

/// Same as [`antiderivative_discriminant`] but applying the roots in the
/// given index order, for exercising order-independence.
pub fn antiderivative_discriminant_ordered(
    rs: &RootSystem,
    f: &Polynomial,
    order: &[usize],
) -> Result<Polynomial> {
    assert_eq!(
        order.len(),
        rs.positive_roots().len(),
        "order must be a permutation of the positive-root indices"
    );
    let mut cur = f.clone();
    for &idx in order {
        cur = antiderivative_linear(&cur, &rs.positive_roots()[idx])?;
    }
    rs.project_alt(&cur)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{rat, rat_int};
    use crate::root_system::Family;

    fn x(nvars: usize, var: usize) -> Polynomial {
        Polynomial::variable(nvars, var)
    }

    #[test]
    fn exp_kernel_small_cases() {
        let a = Point::from_integers(&[1]);
        let q0 = exp_kernel(&a, 0).unwrap();
        assert_eq!(q0, Polynomial::one(1));
        let q2 = exp_kernel(&a, 2).unwrap();
        let expected = &(&Polynomial::one(1) + &x(1, 0))
            + &x(1, 0).pow_checked(2).unwrap().scale(&rat(1, 2));
        assert_eq!(q2, expected);
    }

    #[test]
    fn exp_kernel_reproduces_evaluation() {
        let a = Point::new(vec![rat(1, 2), rat_int(-3)]);
        let f = &(&x(2, 0).pow_checked(3).unwrap() - &x(2, 1).pow_checked(2).unwrap())
            + &Polynomial::constant(2, rat(7, 5));
        let q = exp_kernel(&a, 3).unwrap();
        assert_eq!(f.apolar(&q).unwrap(), f.evaluate(&a).unwrap());
        // square norm of x₁² against the kernel picks out f(a) = a₁²
        let sq = x(2, 0).pow_checked(2).unwrap();
        assert_eq!(sq.apolar(&q).unwrap(), rat(1, 4));
    }

    #[test]
    fn alt_kernel_a1() {
        let a1 = RootSystem::build(Family::A, 1).unwrap();
        let a = Point::from_integers(&[-1, 1]);
        let r = alt_kernel(&a1, &a, 1).unwrap();
        assert_eq!(r, &x(2, 1) - &x(2, 0));
    }

    #[test]
    fn alt_kernel_reproduces_alternating_values() {
        let a2 = RootSystem::build(Family::A, 2).unwrap();
        let a = Point::from_integers(&[1, 0, -1]);
        let r = alt_kernel(&a2, &a, 3).unwrap();
        let g = a2.delta();
        assert_eq!(r.apolar(g).unwrap(), a2.delta_at(&a).unwrap());
        // on a wall the alternating kernel pairs to zero with Δ
        let wall = Point::from_integers(&[1, 1, -2]);
        let r_wall = alt_kernel(&a2, &wall, 3).unwrap();
        assert_eq!(r_wall.apolar(g).unwrap(), rat_int(0));
    }

    #[test]
    fn translate_adjoint_truncates() {
        let a = Point::from_integers(&[1]);
        assert_eq!(translate_adjoint(&x(1, 0), &a, 1).unwrap(), x(1, 0));
        assert_eq!(
            translate_adjoint(&Polynomial::one(1), &a, 1).unwrap(),
            &Polynomial::one(1) + &x(1, 0)
        );
        assert!(matches!(
            translate_adjoint(&x(1, 0).pow_checked(2).unwrap(), &a, 1),
            Err(Error::DegreeAboveTruncation { degree: 2, order: 1 })
        ));
    }

    #[test]
    fn translate_adjoint_is_adjoint_to_translation() {
        let a = Point::new(vec![rat(2, 3), rat_int(-1)]);
        let f = &x(2, 0).pow_checked(2).unwrap() + &x(2, 1);
        let g = &x(2, 1).pow_checked(3).unwrap() - &x(2, 0);
        let k = 5;
        let lhs = translate_adjoint(&f, &a, k).unwrap().apolar(&g).unwrap();
        let rhs = f.apolar(&g.translate(&a).unwrap()).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn divide_linear_factors() {
        let alpha = Point::from_integers(&[1, -1]);
        let f = &x(2, 0).pow_checked(2).unwrap() - &x(2, 1).pow_checked(2).unwrap();
        assert_eq!(divide_linear(&f, &alpha).unwrap(), &x(2, 0) + &x(2, 1));
        assert_eq!(
            divide_linear(&x(2, 0), &alpha),
            Err(Error::NotDivisible)
        );
        let a2 = RootSystem::build(Family::A, 2).unwrap();
        let q = divide_linear(a2.delta(), &a2.positive_roots()[0]).unwrap();
        let expected = Polynomial::linear_form(&a2.positive_roots()[1])
            .mul_checked(&Polynomial::linear_form(&a2.positive_roots()[2]))
            .unwrap();
        assert_eq!(q, expected);
    }

    #[test]
    fn divide_linear_inverts_multiplication() {
        let alpha = Point::new(vec![rat(1, 2), rat_int(3), rat_int(-1)]);
        let f = &x(3, 0).mul_checked(&x(3, 2)).unwrap() + &x(3, 1).pow_checked(2).unwrap();
        let prod = Polynomial::linear_form(&alpha).mul_checked(&f).unwrap();
        assert_eq!(divide_linear(&prod, &alpha).unwrap(), f);
        // sign-flip covariance
        assert_eq!(
            divide_linear(&prod, &alpha.neg()).unwrap(),
            -&f
        );
    }

    #[test]
    fn antiderivative_linear_known_values() {
        // I_{e₂−e₁} 1 = (x₂−x₁)/2
        let alpha = Point::from_integers(&[-1, 1]);
        let one = Polynomial::one(2);
        let result = antiderivative_linear(&one, &alpha).unwrap();
        assert_eq!(result, (&x(2, 1) - &x(2, 0)).scale(&rat(1, 2)));
        // I_{e₁} x₂ = x₁x₂
        let e1 = Point::from_integers(&[1, 0]);
        assert_eq!(
            antiderivative_linear(&x(2, 1), &e1).unwrap(),
            x(2, 0).mul_checked(&x(2, 1)).unwrap()
        );
    }

    #[test]
    fn antiderivative_inverts_directional_derivative() {
        let alpha = Point::new(vec![rat_int(2), rat(-1, 3)]);
        let f = &x(2, 0).pow_checked(3).unwrap()
            + &x(2, 0).mul_checked(&x(2, 1)).unwrap().scale(&rat(5, 7));
        let integral = antiderivative_linear(&f, &alpha).unwrap();
        assert_eq!(
            integral.directional_derivative(&alpha).unwrap(),
            f
        );
        // vanishes on the wall ⟨α,x⟩=0: ⟨α,(1,6)⟩ = 2·1 − (1/3)·6 = 0
        let wall_point = Point::from_integers(&[1, 6]);
        assert_eq!(alpha.dot(&wall_point).unwrap(), rat_int(0));
        assert_eq!(
            integral.evaluate(&wall_point).unwrap(),
            rat_int(0)
        );
        // sign-flip covariance
        assert_eq!(
            antiderivative_linear(&f, &alpha.neg()).unwrap(),
            -&integral
        );
    }

    #[test]
    fn antiderivative_is_adjoint_of_division() {
        let alpha = Point::from_integers(&[1, -2, 1]);
        let f0 = &x(3, 0).pow_checked(2).unwrap() + &x(3, 1).mul_checked(&x(3, 2)).unwrap();
        let h = Polynomial::linear_form(&alpha).mul_checked(&f0).unwrap();
        let g = &x(3, 2).pow_checked(3).unwrap() - &x(3, 0);
        let lhs = divide_linear(&h, &alpha).unwrap().apolar(&g).unwrap();
        let rhs = h
            .apolar(&antiderivative_linear(&g, &alpha).unwrap())
            .unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn discriminant_division_examples() {
        let a1 = RootSystem::build(Family::A, 1).unwrap();
        let f = a1
            .delta()
            .mul_checked(&(&x(2, 0) + &x(2, 1)))
            .unwrap();
        assert_eq!(
            divide_discriminant(&a1, &f).unwrap(),
            &x(2, 0) + &x(2, 1)
        );
        assert_eq!(
            divide_discriminant(&a1, &x(2, 0)),
            Err(Error::NotDivisible)
        );
        let a2 = RootSystem::build(Family::A, 2).unwrap();
        let delta_sq = a2.delta().mul_checked(a2.delta()).unwrap();
        assert_eq!(divide_discriminant(&a2, &delta_sq).unwrap(), *a2.delta());
    }

    #[test]
    fn iterated_antiderivative_of_one_is_normalized_delta() {
        for (family, rank) in [
            (Family::A, 1),
            (Family::A, 2),
            (Family::B, 2),
            (Family::G, 2),
        ] {
            let rs = RootSystem::build(family, rank).unwrap();
            let one = Polynomial::one(rs.dim());
            let result = antiderivative_discriminant(&rs, &one).unwrap();
            let inv = Rational::one() / rs.gram_delta().clone();
            assert_eq!(result, rs.delta().scale(&inv), "{}", rs.label());
        }
    }

    #[test]
    fn iterated_antiderivative_is_order_independent() {
        let a2 = RootSystem::build(Family::A, 2).unwrap();
        let f = a2.project_sym(&x(3, 0).pow_checked(2).unwrap()).unwrap();
        let l = a2.positive_roots().len();
        let forward: Vec<usize> = (0..l).collect();
        let reversed: Vec<usize> = (0..l).rev().collect();
        let rotated: Vec<usize> = (0..l).map(|i| (i + 1) % l).collect();
        let base = antiderivative_discriminant_ordered(&a2, &f, &forward).unwrap();
        assert_eq!(
            antiderivative_discriminant_ordered(&a2, &f, &reversed).unwrap(),
            base
        );
        assert_eq!(
            antiderivative_discriminant_ordered(&a2, &f, &rotated).unwrap(),
            base
        );
    }

    #[test]
    fn iterated_antiderivative_alternates_symmetric_input() {
        let b2 = RootSystem::build(Family::B, 2).unwrap();
        let f = b2
            .project_sym(&x(2, 0).pow_checked(2).unwrap())
            .unwrap();
        let result = antiderivative_discriminant(&b2, &f).unwrap();
        assert!(b2.is_alternating(&result).unwrap());
    }

    #[test]
    fn discriminant_adjoint_pair() {
        // [D_Δ f, g] == [f, I_Δ g] for f alternating, g symmetric
        let a2 = RootSystem::build(Family::A, 2).unwrap();
        let f = a2
            .delta()
            .mul_checked(&a2.project_sym(&x(3, 1).pow_checked(2).unwrap()).unwrap())
            .unwrap();
        let g = a2.project_sym(&x(3, 0).pow_checked(3).unwrap()).unwrap();
        let lhs = divide_discriminant(&a2, &f).unwrap().apolar(&g).unwrap();
        let rhs = f
            .apolar(&antiderivative_discriminant(&a2, &g).unwrap())
            .unwrap();
        assert_eq!(lhs, rhs);
    }
}
