//! Mahler measures, field heights and explicit height bounds for polynomial values.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::interval::{Dyadic, RealInterval};
use crate::multirec::{LatticePoint, MultiPoly};
use crate::numberfield::{refine, FieldElement, Rational, DEFAULT_CAP};
use crate::poly::{squarefree_decomposition, IntPolynomial};
use crate::roots::isolate_roots;

/// |lead(p)| · Π max(1, |r|) over the complex roots of `p`, with relative width at most
/// `2^-prec`.
pub fn mahler_measure(p: &IntPolynomial, prec: u32) -> Result<RealInterval> {
    mahler_measure_capped(p, prec, DEFAULT_CAP)
}

pub fn mahler_measure_capped(p: &IntPolynomial, prec: u32, cap: u32) -> Result<RealInterval> {
    let d = p.degree().ok_or(Error::ZeroPolynomial)?;
    let content = p.content().abs();
    let out_prec = prec + 8;
    if d == 0 {
        return Ok(RealInterval::from_int(content, out_prec));
    }
    let factors = squarefree_decomposition(p);
    let mut target = prec + 8;
    loop {
        let mut acc = RealInterval::from_int(content.clone(), target);
        for (g, mult) in &factors {
            acc = acc.mul(&squarefree_measure(g, target, cap)?.pow_u(u64::from(*mult)));
        }
        if acc.rel_width_within(prec) {
            return Ok(acc);
        }
        if target >= cap {
            return Err(Error::PrecisionCapExceeded { cap });
        }
        target = (target * 2).min(cap);
    }
}

fn squarefree_measure(g: &IntPolynomial, prec: u32, cap: u32) -> Result<RealInterval> {
    let c = g.coeffs();
    if c.len() == 2 {
        let m = c[0].abs().max(c[1].abs());
        return Ok(RealInterval::from_int(m, prec));
    }
    let lead = g.lead().expect("non-zero").abs();
    refine(prec + 16, cap, |w| {
        let roots = isolate_roots(g, w, cap)?;
        let one = RealInterval::one(w);
        let mut acc = RealInterval::from_int(lead.clone(), w);
        for r in &roots {
            acc = acc.mul(&one.max(&r.abs()));
        }
        Ok(acc.rel_width_within(prec).then_some(acc))
    })
}

fn exponent_over_degree(x: &FieldElement, m: &IntPolynomial) -> u64 {
    (x.field().degree() / m.degree().expect("non-zero")) as u64
}

fn bit_len(e: u64) -> u32 {
    64 - e.leading_zeros()
}

/// H_K(x) = Π_ν max(1, |x|_ν) = M(minpoly x)^(D / deg x), relative width at most `2^-prec`.
pub fn height_k(x: &FieldElement, prec: u32) -> Result<RealInterval> {
    if x.is_zero() {
        return Err(Error::ZeroElement);
    }
    if let Some(q) = x.as_rational() {
        let h = q.numer().abs().max(q.denom().abs());
        let d = x.field().degree();
        return Ok(RealInterval::from_int(num_traits::pow(h, d), prec + 8));
    }
    let m = x.minimal_polynomial();
    let e = exponent_over_degree(x, &m);
    let base = mahler_measure_capped(&m, prec + bit_len(e) + 2, x.field().cap())?;
    Ok(base.pow_u(e))
}

/// H_K(x) computed from the field embeddings: lead^(D/deg) · Π_σ max(1, |σ(x)|).
pub fn height_via_embeddings(x: &FieldElement, prec: u32) -> Result<RealInterval> {
    if x.is_zero() {
        return Err(Error::ZeroElement);
    }
    let lead = finite_part_exact(x)?;
    let bits = x.coords().iter().map(|c| c.numer().bits() + c.denom().bits()).max().unwrap_or(0) as u32;
    refine(prec + 16 + bits, x.field().cap(), |w| {
        let one = RealInterval::one(w);
        let mut acc = RealInterval::from_int(lead.clone(), w);
        for s in x.embeddings(w)? {
            acc = acc.mul(&one.max(&s.abs()));
        }
        Ok(acc.rel_width_within(prec).then_some(acc))
    })
}

/// Π over finite places of max(1, |x|_ν), which equals lead(minpoly x)^(D / deg x).
pub fn finite_part_exact(x: &FieldElement) -> Result<BigInt> {
    if x.is_zero() {
        return Err(Error::ZeroElement);
    }
    let m = x.minimal_polynomial();
    let e = exponent_over_degree(x, &m);
    Ok(num_traits::pow(m.lead().expect("non-zero").clone(), e as usize))
}

pub fn finite_part(x: &FieldElement, prec: u32) -> Result<RealInterval> {
    Ok(RealInterval::from_int(finite_part_exact(x)?, prec + 8))
}

/// Constants for H_K(f(n)) <= c·|n|^(D·m).
#[derive(Clone, Debug, PartialEq)]
pub struct LemmaConstants {
    /// Σ over coefficients of house(coeff).
    pub c1: RealInterval,
    /// Π over coefficients of the finite part of coeff.
    pub c2: Rational,
    /// max(1, c1)^D · c2
    pub c: RealInterval,
    pub degree: usize,
    pub m: u32,
}

pub fn lemma_constants(f: &MultiPoly, prec: u32) -> Result<LemmaConstants> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let degree = f.field().degree();
    let mut c1 = RealInterval::zero(prec);
    let mut c2 = BigInt::one();
    for coeff in f.coefficients() {
        c1 = c1.add(&coeff.house(prec)?);
        c2 *= finite_part_exact(coeff)?;
    }
    let c2 = Rational::from_integer(c2);
    let c = RealInterval::one(prec)
        .max(&c1)
        .pow_u(degree as u64)
        .mul(&RealInterval::from_rational(&c2, prec));
    Ok(LemmaConstants { c1, c2, c, degree, m: f.absolute_degree() })
}

#[derive(Clone, Debug, PartialEq)]
pub struct LemmaViolation {
    pub point: LatticePoint,
    pub height: RealInterval,
    pub bound: Dyadic,
}

#[derive(Clone, Debug, PartialEq)]
pub struct LemmaReport {
    pub constants: LemmaConstants,
    /// Points where f(n) ≠ 0 and the bound was established.
    pub passed: usize,
    pub skipped_zero: Vec<LatticePoint>,
    pub violations: Vec<LemmaViolation>,
    pub undecided: Vec<LatticePoint>,
}

impl LemmaReport {
    pub fn checked(&self) -> usize {
        self.passed + self.violations.len() + self.undecided.len()
    }

    pub fn is_ok(&self) -> bool {
        self.violations.is_empty() && self.undecided.is_empty()
    }
}

/// Checks H_K(f(n)) <= c·|n|^(D·m) at each point, using the upper endpoint of c.
pub fn lemma_check(f: &MultiPoly, points: &[LatticePoint], prec: u32) -> Result<LemmaReport> {
    let constants = lemma_constants(f, prec)?;
    let c_up = constants.c.hi().clone();
    let dm = constants.degree as u64 * u64::from(constants.m);
    let cap = f.field().cap();
    let mut report = LemmaReport {
        constants,
        passed: 0,
        skipped_zero: Vec::new(),
        violations: Vec::new(),
        undecided: Vec::new(),
    };
    for n in points {
        if n.is_zero() {
            return Err(Error::ZeroPoint);
        }
        let v = f.eval(n)?;
        if v.is_zero() {
            report.skipped_zero.push(n.clone());
            continue;
        }
        let bound = c_up.mul(&Dyadic::from_int(num_traits::pow(BigInt::from(n.norm()), dm as usize)));
        let mut p = prec;
        loop {
            let h = match height_k(&v, p) {
                Ok(h) => h,
                Err(Error::PrecisionCapExceeded { .. }) => {
                    report.undecided.push(n.clone());
                    break;
                }
                Err(e) => return Err(e),
            };
            if *h.hi() <= bound {
                report.passed += 1;
                break;
            }
            if *h.lo() > bound {
                report.violations.push(LemmaViolation { point: n.clone(), height: h, bound });
                break;
            }
            if p >= cap {
                report.undecided.push(n.clone());
                break;
            }
            p = (p * 2).min(cap);
        }
    }
    Ok(report)
}

/// max(|p|, |q|) for a reduced rational p/q.
pub fn rational_height(q: &Rational) -> BigInt {
    if q.is_zero() {
        return BigInt::zero();
    }
    q.numer().abs().max(q.denom().abs())
}
