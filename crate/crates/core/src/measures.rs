//! Moment functionals of projected orbital measures and of radial
//! convolutions, plus the closed-form rank-1 densities.
//!
//! Both functionals are exact: a moment of a polynomial against either
//! measure is a single rational number obtained from the iterated
//! anti-derivative and one evaluation, with no quadrature anywhere.

use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::operators::antiderivative_discriminant;
use crate::poly::{rat_int, Point, Polynomial, Rational};
use crate::root_system::{Family, RootSystem};

/// Exact moment value with a decimal rendering and enough context to
/// reproduce the computation.
#[derive(Debug, Clone, PartialEq)]
pub struct MomentResult {
    pub value: Rational,
    pub decimal: f64,
    pub meta: MomentMeta,
}

#[derive(Debug, Clone, PartialEq)]
pub struct MomentMeta {
    pub system: String,
    pub a: Point,
    pub b: Option<Point>,
    pub poly: String,
}

impl MomentResult {
    fn new(rs: &RootSystem, a: &Point, b: Option<&Point>, poly: &Polynomial, value: Rational) -> Self {
        let decimal = rational_to_f64(&value);
        MomentResult {
            value,
            decimal,
            meta: MomentMeta {
                system: rs.label(),
                a: a.clone(),
                b: b.cloned(),
                poly: poly.to_string(),
            },
        }
    }
}

pub fn rational_to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

fn check_regular(rs: &RootSystem, p: &Point) -> Result<Rational> {
    if rs.family() == Family::A && !p.coordinate_sum().is_zero() {
        return Err(Error::TraceNotZero);
    }
    let d = rs.delta_at(p)?;
    if d.is_zero() {
        return Err(Error::SingularPoint);
    }
    Ok(d)
}

/// Moment of the projected orbital measure:
/// `∫ f dμ_a = ([Δ,Δ]/Δ(a)) · (I_Δ P_sym f)(a)`.
pub fn projection_moment(rs: &RootSystem, a: &Point, f: &Polynomial) -> Result<MomentResult> {
    let delta_a = check_regular(rs, a)?;
    let sym = rs.project_sym(f)?;
    let integrated = antiderivative_discriminant(rs, &sym)?;
    let value = rs.gram_delta() * integrated.evaluate(a)? / delta_a;
    Ok(MomentResult::new(rs, a, None, f, value))
}

/// Shared core of the two convolution moments, applied to an alternating
/// integrand: averages the translates of `f_alt` over the Weyl orbit of `a`
/// with signs, then integrates and evaluates at `b`.
fn convolution_value(
    rs: &RootSystem,
    a: &Point,
    b: &Point,
    f_alt: &Polynomial,
) -> Result<Rational> {
    let delta_a = check_regular(rs, a)?;
    let delta_b = check_regular(rs, b)?;
    let mut avg = Polynomial::zero(rs.dim());
    for w in rs.weyl() {
        let shifted = f_alt.translate(&w.apply_point(a)?)?;
        if w.sign() < 0 {
            avg = &avg - &shifted;
        } else {
            avg = &avg + &shifted;
        }
    }
    let avg = avg.scale(&(Rational::one() / rat_int(rs.order() as i64)));
    if !rs.is_symmetric(&avg)? {
        return Err(Error::AsymmetricAverage);
    }
    let integrated = antiderivative_discriminant(rs, &avg)?;
    Ok(rs.gram_delta() * integrated.evaluate(b)? / (delta_a * delta_b))
}

/// Moment `∫ (f_alt/Δ) dν_{a,b}` of the radial convolution measure against
/// an alternating numerator.
pub fn convolution_moment_alt(
    rs: &RootSystem,
    a: &Point,
    b: &Point,
    f_alt: &Polynomial,
) -> Result<MomentResult> {
    if !rs.is_alternating(f_alt)? {
        return Err(Error::NotAlternating);
    }
    let value = convolution_value(rs, a, b, f_alt)?;
    Ok(MomentResult::new(rs, a, Some(b), f_alt, value))
}

/// Moment `∫ g dν_{a,b}` of the radial convolution measure, computed by
/// substituting the alternating numerator `Δ · P_sym g`.
pub fn convolution_moment(
    rs: &RootSystem,
    a: &Point,
    b: &Point,
    g: &Polynomial,
) -> Result<MomentResult> {
    let f_alt = rs.delta().mul_checked(&rs.project_sym(g)?)?;
    let value = convolution_value(rs, a, b, &f_alt)?;
    Ok(MomentResult::new(rs, a, Some(b), g, value))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Rank1Kind {
    Projection,
    Convolution,
}

/// Closed-form density of a rank-1 measure on the real line, under the
/// scalar identification that sends the ambient point (x, −x) to x.
///
/// Pieces are closed intervals carrying one-variable polynomial densities;
/// they tile the support without overlap of interiors.
#[derive(Debug, Clone, PartialEq)]
pub struct Rank1Density {
    pub kind: Rank1Kind,
    pub a: Rational,
    pub b: Option<Rational>,
    pieces: Vec<(Rational, Rational, Polynomial)>,
}

impl Rank1Density {
    /// Uniform density 1/(2|a|) on [−|a|, |a|]: the projection of the
    /// rank-1 orbital measure (the classical sphere-to-axis projection).
    pub fn projection(a: Rational) -> Result<Rank1Density> {
        if a.is_zero() {
            return Err(Error::ZeroParameter);
        }
        let abs = a.abs();
        let height = Rational::one() / (rat_int(2) * &abs);
        let piece = Polynomial::constant(1, height);
        Ok(Rank1Density {
            kind: Rank1Kind::Projection,
            a,
            b: None,
            pieces: vec![(-abs.clone(), abs, piece)],
        })
    }

    /// Two-sided triangular-slope density of the rank-1 radial convolution:
    /// c/(4ab) on [a−b, a+b], −c/(4ab) on [−a−b, −a+b], zero elsewhere.
    /// Only the regime 0 < b < a is defined.
    pub fn convolution(a: Rational, b: Rational) -> Result<Rank1Density> {
        if !(b.is_positive() && b < a) {
            return Err(Error::OutsideRegime);
        }
        let slope = Rational::one() / (rat_int(4) * &a * &b);
        let c = Polynomial::variable(1, 0);
        let pos = c.scale(&slope);
        let neg = c.scale(&-slope);
        Ok(Rank1Density {
            kind: Rank1Kind::Convolution,
            a: a.clone(),
            b: Some(b.clone()),
            pieces: vec![
                (-(&a + &b), -(&a - &b), neg),
                (&a - &b, &a + &b, pos),
            ],
        })
    }

    /// Density value at c (zero off the support; closed endpoints).
    pub fn eval(&self, c: &Rational) -> Rational {
        for (lo, hi, poly) in &self.pieces {
            if lo <= c && c <= hi {
                return poly
                    .evaluate(&Point::new(vec![c.clone()]))
                    .expect("one-variable piece");
            }
        }
        Rational::zero()
    }

    pub fn support(&self) -> (Rational, Rational) {
        let lo = self.pieces.iter().map(|(lo, _, _)| lo).min().unwrap().clone();
        let hi = self.pieces.iter().map(|(_, hi, _)| hi).max().unwrap().clone();
        (lo, hi)
    }

    /// Exact ∫ c^m dρ over the whole support.
    pub fn moment(&self, m: u32) -> Rational {
        let cm = Polynomial::variable(1, 0)
            .pow_checked(m)
            .expect("moment degree within cap");
        self.moment_of(&cm)
    }

    /// Exact ∫ f dρ for a one-variable polynomial f.
    pub fn moment_of(&self, f: &Polynomial) -> Rational {
        assert_eq!(f.nvars(), 1, "density moments take one-variable inputs");
        let mut acc = Rational::zero();
        for (lo, hi, poly) in &self.pieces {
            let integrand = f * poly;
            let anti = antiderivative_univariate(&integrand);
            let hi_val = anti.evaluate(&Point::new(vec![hi.clone()])).unwrap();
            let lo_val = anti.evaluate(&Point::new(vec![lo.clone()])).unwrap();
            acc += hi_val - lo_val;
        }
        acc
    }

    pub fn total_mass(&self) -> Rational {
        self.moment_of(&Polynomial::one(1))
    }
}

fn antiderivative_univariate(p: &Polynomial) -> Polynomial {
    let mut out = Polynomial::zero(1);
    for (beta, c) in p.terms() {
        let e = beta.exponent(0);
        out = &out
            + &Polynomial::monomial(
                1,
                beta.with_exponent(0, e + 1),
                c / rat_int(e as i64 + 1),
            );
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::rat;

    fn x(nvars: usize, var: usize) -> Polynomial {
        Polynomial::variable(nvars, var)
    }

    #[test]
    fn a1_projection_examples() {
        let a1 = RootSystem::build(Family::A, 1).unwrap();
        let a = Point::from_integers(&[-1, 1]);
        assert_eq!(
            projection_moment(&a1, &a, &Polynomial::one(2)).unwrap().value,
            rat_int(1)
        );
        assert_eq!(
            projection_moment(&a1, &a, &x(2, 1)).unwrap().value,
            rat_int(0)
        );
        let second = projection_moment(&a1, &a, &x(2, 1).pow_checked(2).unwrap()).unwrap();
        assert_eq!(second.value, rat(1, 3));
        assert!((second.decimal - 1.0 / 3.0).abs() < 1e-15);
        assert_eq!(second.meta.system, "A1");
        assert_eq!(second.meta.poly, "x2^2");
    }

    #[test]
    fn projection_rejects_bad_points() {
        let a1 = RootSystem::build(Family::A, 1).unwrap();
        let f = Polynomial::one(2);
        assert_eq!(
            projection_moment(&a1, &Point::from_integers(&[1, 2]), &f)
                .unwrap_err(),
            Error::TraceNotZero
        );
        assert_eq!(
            projection_moment(&a1, &Point::from_integers(&[0, 0]), &f)
                .unwrap_err(),
            Error::SingularPoint
        );
        let b2 = RootSystem::build(Family::B, 2).unwrap();
        // B-series points need no zero sum, but walls are still singular
        assert_eq!(
            projection_moment(&b2, &Point::from_integers(&[1, 1]), &Polynomial::one(2))
                .unwrap_err(),
            Error::SingularPoint
        );
        assert!(projection_moment(&b2, &Point::from_integers(&[1, 2]), &Polynomial::one(2)).is_ok());
    }

    #[test]
    fn projection_mass_is_one_across_systems() {
        for (family, rank, coords) in [
            (Family::A, 2, &[3i64, -1, -2][..]),
            (Family::B, 2, &[2, 5][..]),
            (Family::C, 2, &[1, 3][..]),
            (Family::D, 3, &[1, 2, 4][..]),
            (Family::G, 2, &[1, 2, -3][..]),
        ] {
            let rs = RootSystem::build(family, rank).unwrap();
            let a = Point::from_integers(coords);
            let mass = projection_moment(&rs, &a, &Polynomial::one(rs.dim()))
                .unwrap()
                .value;
            assert_eq!(mass, rat_int(1), "mass for {}", rs.label());
        }
    }

    #[test]
    fn projection_is_weyl_invariant() {
        let a2 = RootSystem::build(Family::A, 2).unwrap();
        let a = Point::from_integers(&[1, 0, -1]);
        let f = &x(3, 0).pow_checked(2).unwrap() + &x(3, 2);
        let base = projection_moment(&a2, &a, &f).unwrap().value;
        for w in a2.weyl() {
            let fw = w.apply_poly(&f).unwrap();
            assert_eq!(projection_moment(&a2, &a, &fw).unwrap().value, base);
            let aw = w.apply_point(&a).unwrap();
            assert_eq!(projection_moment(&a2, &aw, &f).unwrap().value, base);
        }
    }

    #[test]
    fn flipping_a_root_changes_no_moment() {
        let a2 = RootSystem::build(Family::A, 2).unwrap();
        let a = Point::from_integers(&[1, 0, -1]);
        let b = Point::new(vec![rat(1, 2), rat_int(0), rat(-1, 2)]);
        let f = x(3, 0).pow_checked(2).unwrap();
        let base_proj = projection_moment(&a2, &a, &f).unwrap().value;
        let base_conv = convolution_moment(&a2, &a, &b, &f).unwrap().value;
        for idx in 0..a2.positive_roots().len() {
            let flipped = a2.with_flipped_root(idx).unwrap();
            assert_eq!(
                projection_moment(&flipped, &a, &f).unwrap().value,
                base_proj
            );
            assert_eq!(
                convolution_moment(&flipped, &a, &b, &f).unwrap().value,
                base_conv
            );
        }
    }

    #[test]
    fn a1_convolution_examples() {
        let a1 = RootSystem::build(Family::A, 1).unwrap();
        let a = Point::from_integers(&[2, -2]);
        let b = Point::from_integers(&[1, -1]);
        assert_eq!(
            convolution_moment(&a1, &a, &b, &Polynomial::one(2)).unwrap().value,
            rat_int(1)
        );
        assert_eq!(
            convolution_moment(&a1, &a, &b, &x(2, 0).pow_checked(2).unwrap())
                .unwrap()
                .value,
            rat_int(5)
        );
        assert_eq!(
            convolution_moment(&a1, &a, &b, &x(2, 0).pow_checked(4).unwrap())
                .unwrap()
                .value,
            rat(91, 3)
        );
    }

    #[test]
    fn convolution_mass_is_one_off_type_a() {
        let b2 = RootSystem::build(Family::B, 2).unwrap();
        let a = Point::from_integers(&[2, 5]);
        let b = Point::from_integers(&[1, 3]);
        assert_eq!(
            convolution_moment(&b2, &a, &b, &Polynomial::one(2)).unwrap().value,
            rat_int(1)
        );
        let g2 = RootSystem::build(Family::G, 2).unwrap();
        let a = Point::from_integers(&[1, 2, -3]);
        let b = Point::from_integers(&[-3, 1, 2]);
        assert_eq!(
            convolution_moment(&g2, &a, &b, &Polynomial::one(3)).unwrap().value,
            rat_int(1)
        );
    }

    #[test]
    fn alt_and_plain_convolution_agree() {
        let a1 = RootSystem::build(Family::A, 1).unwrap();
        let a = Point::from_integers(&[2, -2]);
        let b = Point::from_integers(&[1, -1]);
        let g = &x(2, 0).pow_checked(2).unwrap() + &x(2, 1).scale(&rat(1, 3));
        let f_alt = a1
            .delta()
            .mul_checked(&a1.project_sym(&g).unwrap())
            .unwrap();
        assert_eq!(
            convolution_moment_alt(&a1, &a, &b, &f_alt).unwrap().value,
            convolution_moment(&a1, &a, &b, &g).unwrap().value
        );
        assert_eq!(
            convolution_moment_alt(&a1, &a, &b, &x(2, 0)).unwrap_err(),
            Error::NotAlternating
        );
    }

    #[test]
    fn convolution_total_mass_via_delta() {
        let a2 = RootSystem::build(Family::A, 2).unwrap();
        let a = Point::from_integers(&[1, 0, -1]);
        let b = Point::from_integers(&[3, -1, -2]);
        assert_eq!(
            convolution_moment_alt(&a2, &a, &b, a2.delta()).unwrap().value,
            rat_int(1)
        );
    }

    #[test]
    fn rank1_projection_density_matches_moments() {
        let a1 = RootSystem::build(Family::A, 1).unwrap();
        let ambient = Point::from_integers(&[-1, 1]);
        let density = Rank1Density::projection(rat_int(-1)).unwrap();
        assert_eq!(density.eval(&rat_int(0)), rat(1, 2));
        assert_eq!(density.eval(&rat_int(2)), rat_int(0));
        assert_eq!(density.total_mass(), rat_int(1));
        assert_eq!(density.moment(2), rat(1, 3));
        assert_eq!(density.moment(4), rat(1, 5));
        // the scalar identification picks the first ambient coordinate
        for m in 0..=8u32 {
            let f = x(2, 0).pow_checked(m).unwrap();
            assert_eq!(
                projection_moment(&a1, &ambient, &f).unwrap().value,
                density.moment(m),
                "degree {m}"
            );
        }
    }

    #[test]
    fn rank1_convolution_density_matches_moments() {
        let a1 = RootSystem::build(Family::A, 1).unwrap();
        let a = Point::from_integers(&[2, -2]);
        let b = Point::from_integers(&[1, -1]);
        let density = Rank1Density::convolution(rat_int(2), rat_int(1)).unwrap();
        assert_eq!(density.eval(&rat_int(2)), rat(1, 4));
        assert_eq!(density.eval(&rat_int(0)), rat_int(0));
        assert_eq!(density.eval(&rat_int(-2)), rat(1, 4));
        assert_eq!(density.total_mass(), rat_int(1));
        assert_eq!(density.support(), (rat_int(-3), rat_int(3)));
        for m in 0..=8u32 {
            let f = x(2, 0).pow_checked(m).unwrap();
            assert_eq!(
                convolution_moment(&a1, &a, &b, &f).unwrap().value,
                density.moment(m),
                "degree {m}"
            );
        }
    }

    #[test]
    fn rank1_densities_reject_bad_parameters() {
        assert_eq!(
            Rank1Density::projection(rat_int(0)).unwrap_err(),
            Error::ZeroParameter
        );
        assert_eq!(
            Rank1Density::convolution(rat_int(1), rat_int(2)).unwrap_err(),
            Error::OutsideRegime
        );
        assert_eq!(
            Rank1Density::convolution(rat_int(1), rat_int(0)).unwrap_err(),
            Error::OutsideRegime
        );
        assert_eq!(
            Rank1Density::convolution(rat_int(-2), rat_int(-1)).unwrap_err(),
            Error::OutsideRegime
        );
    }
}
