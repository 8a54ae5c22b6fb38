//! Shell scans of the lower bound |G(n)| >= |f_i0(n) α_i0^n| e^(-ε|n|), the explicit
//! constants z, A and ε', the bound on the house of the term vector, and the probe
//! for the constant of the underlying subspace inequality.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::heights::height_k;
use crate::interval::{Dyadic, RealInterval};
use crate::multirec::{shell, vanishing_subsets_of_values, LatticePoint, MultiRecurrence, DEFAULT_SUBSET_CAP};
use crate::numberfield::{FieldElement, Rational, DEFAULT_CAP, DEFAULT_PREC};

/// Relative width (as 2^-bits) at which ratios and probe values stop refining once decided.
pub const REPORT_BITS: u32 = 48;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Place {
    /// Index into the field's ordered embeddings.
    Archimedean(usize),
    /// A prime; rejected by every operation.
    Finite(BigInt),
}

#[derive(Clone, Debug, PartialEq)]
pub struct VerifierConfig {
    pub epsilon: Rational,
    /// 1-based index of the comparison term.
    pub i0: usize,
    pub max_norm: u64,
    /// Starting working precision in bits.
    pub precision: u32,
    pub cap: u32,
    pub place: Place,
    pub subset_cap: usize,
}

impl VerifierConfig {
    pub fn new(epsilon: Rational, i0: usize, max_norm: u64) -> Self {
        VerifierConfig {
            epsilon,
            i0,
            max_norm,
            precision: DEFAULT_PREC,
            cap: DEFAULT_CAP,
            place: Place::Archimedean(0),
            subset_cap: DEFAULT_SUBSET_CAP,
        }
    }

    pub fn validate(&self, g: &MultiRecurrence) -> Result<usize> {
        if !self.epsilon.is_positive() {
            return Err(Error::InvalidConfig(format!("epsilon must be positive, got {}", self.epsilon)));
        }
        if self.max_norm == 0 {
            return Err(Error::InvalidConfig("max_norm must be at least 1".into()));
        }
        if self.precision < 16 || self.precision > self.cap {
            return Err(Error::InvalidConfig(format!(
                "precision must lie in [16, {}], got {}",
                self.cap, self.precision
            )));
        }
        g.term(self.i0)?;
        match &self.place {
            Place::Finite(p) => Err(Error::Unsupported(format!("finite place above {}", p))),
            Place::Archimedean(i) if *i >= g.field().degree() => {
                Err(Error::IndexOutOfRange { index: *i, len: g.field().degree() })
            }
            Place::Archimedean(i) => Ok(*i),
        }
    }
}

/// Parses a positive decimal ("0.1", "2", "1e-3") or fraction ("1/10") exactly.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let t = s.trim();
    let bad = || Error::parse("rational", format!("cannot parse {:?} as a rational number", s));
    if let Some((n, d)) = t.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| bad())?;
        let d: BigInt = d.trim().parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(bad());
        }
        return Ok(Rational::new(n, d));
    }
    let (mant, exp) = match t.find(['e', 'E']) {
        Some(i) => (&t[..i], t[i + 1..].parse::<i32>().map_err(|_| bad())?),
        None => (t, 0),
    };
    let (neg, mant) = match mant.strip_prefix('-') {
        Some(m) => (true, m),
        None => (false, mant.strip_prefix('+').unwrap_or(mant)),
    };
    let (int, frac) = mant.split_once('.').unwrap_or((mant, ""));
    if int.is_empty() && frac.is_empty() || !int.chars().chain(frac.chars()).all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let digits: BigInt = format!("{}{}", int, frac).parse().map_err(|_| bad())?;
    let scale = exp - frac.len() as i32;
    let ten = BigInt::from(10);
    let mut v = if scale >= 0 {
        Rational::from_integer(digits * num_traits::pow(ten, scale as usize))
    } else {
        Rational::new(digits, num_traits::pow(ten, (-scale) as usize))
    };
    if neg {
        v = -v;
    }
    Ok(v)
}

#[derive(Clone, Debug, PartialEq)]
pub struct ProofConstants {
    pub z: BigInt,
    pub a: RealInterval,
    /// `None` when A = 1.
    pub epsilon_prime: Option<RealInterval>,
    pub m: u32,
    pub ell_cap: usize,
}

pub fn proof_constants(g: &MultiRecurrence, epsilon: &Rational, prec: u32) -> Result<ProofConstants> {
    let a = a_constant(g, prec)?;
    let eps = RealInterval::from_rational(epsilon, prec);
    let epsilon_prime = match epsilon_prime(&eps, &a) {
        Ok(e) => Some(e),
        Err(Error::DegenerateA) => None,
        Err(e) => return Err(e),
    };
    Ok(ProofConstants { z: denominator_z(g), a, epsilon_prime, m: g.absolute_degree(), ell_cap: g.len() })
}

/// lcm of the denominators of all polynomial coefficients.
pub fn denominator_z(g: &MultiRecurrence) -> BigInt {
    g.terms()
        .iter()
        .flat_map(|t| t.poly().coefficients())
        .fold(BigInt::one(), |acc, c| acc.lcm(&c.denominator()))
}

/// max(1, |α|) with exact values for roots of unity and rationals.
fn base_house(b: &FieldElement, prec: u32) -> Result<RealInterval> {
    if b.is_root_of_unity() {
        return Ok(RealInterval::one(prec));
    }
    if let Some(q) = b.as_rational() {
        return Ok(RealInterval::one(prec).max(&RealInterval::from_rational(&q.abs(), prec)));
    }
    Ok(RealInterval::one(prec).max(&b.house(prec)?))
}

/// A = max over all bases and embeddings of max(1, |σ(α)|).
///
/// Exactly 1 when every base is a root of unity; otherwise refined until it is
/// certainly above 1.
pub fn a_constant(g: &MultiRecurrence, prec: u32) -> Result<RealInterval> {
    let bases: Vec<&FieldElement> = g.terms().iter().flat_map(|t| t.bases()).collect();
    let cap = g.field().cap();
    let mut p = prec;
    loop {
        let mut a = RealInterval::one(p);
        for b in &bases {
            a = a.max(&base_house(b, p)?);
        }
        if a.is_point() || a.lo() > &Dyadic::one() {
            return Ok(a);
        }
        if p >= cap {
            return Err(Error::PrecisionCapExceeded { cap });
        }
        p = (p * 2).min(cap);
    }
}

/// ε' = ε / (2 ln A).
pub fn epsilon_prime(epsilon: &RealInterval, a: &RealInterval) -> Result<RealInterval> {
    if a.lo() <= &Dyadic::one() {
        return Err(Error::DegenerateA);
    }
    let ln_a = a.ln().ok_or(Error::DegenerateA)?;
    epsilon.div(&ln_a.mul_pow2(1)).ok_or(Error::DegenerateA)
}

/// C₂ = max over terms of Σ house(coeff).
pub fn c2_constant(g: &MultiRecurrence, prec: u32) -> Result<RealInterval> {
    let mut best = RealInterval::zero(prec);
    for t in g.terms() {
        let mut s = RealInterval::zero(prec);
        for c in t.poly().coefficients() {
            s = s.add(&c.house(prec)?);
        }
        best = best.max(&s);
    }
    Ok(best)
}

#[derive(Clone, Debug, PartialEq)]
pub struct NormBoundReport {
    pub point: LatticePoint,
    /// Enclosure of max over terms and embeddings of |σ(f_i(n) α_i^n)|.
    pub house: RealInterval,
    /// C₂⁺ · |n|^m · (A⁺)^|n| with C₂⁺, A⁺ the upper endpoints of their enclosures.
    pub bound: Dyadic,
    pub holds: bool,
}

/// Precomputed constants for repeated house-bound checks on one recurrence.
pub struct NormBoundChecker<'a> {
    g: &'a MultiRecurrence,
    c2_up: Dyadic,
    a_up: Dyadic,
    unit_bases: Vec<Vec<bool>>,
    prec: u32,
}

impl<'a> NormBoundChecker<'a> {
    pub fn new(g: &'a MultiRecurrence, prec: u32) -> Result<Self> {
        let c2_up = c2_constant(g, prec)?.hi().clone();
        let a_up = a_constant(g, prec)?.hi().clone();
        let unit_bases = g.terms().iter().map(|t| t.bases().iter().map(|b| b.is_root_of_unity()).collect()).collect();
        Ok(NormBoundChecker { g, c2_up, a_up, unit_bases, prec })
    }

    pub fn check(&self, n: &LatticePoint) -> Result<NormBoundReport> {
        if n.is_zero() {
            return Err(Error::ZeroPoint);
        }
        if n.arity() != self.g.arity() {
            return Err(Error::ArityMismatch { expected: self.g.arity(), found: n.arity() });
        }
        let norm = BigInt::from(n.norm());
        let bound = self
            .c2_up
            .mul(&Dyadic::from_int(num_traits::pow(norm, self.g.absolute_degree() as usize)))
            .mul(&pow_dyadic(&self.a_up, n.norm()));
        // Factors of modulus one at every embedding are dropped, so exact cases stay exact.
        let mut reduced = Vec::with_capacity(self.g.len());
        for (t, units) in self.g.terms().iter().zip(&self.unit_bases) {
            let mut v = t.poly().eval(n)?;
            for ((b, &k), &unit) in t.bases().iter().zip(n.coords()).zip(units) {
                if !unit && k > 0 && !v.is_zero() {
                    v = v.mul(&b.pow(k))?;
                }
            }
            reduced.push(v);
        }
        let cap = self.g.field().cap();
        let mut w = self.prec;
        loop {
            let mut house = RealInterval::zero(w);
            for v in &reduced {
                if let Some(q) = v.as_rational() {
                    house = house.max(&RealInterval::from_rational(&q.abs(), w));
                    continue;
                }
                for e in v.embeddings(w)? {
                    house = house.max(&e.abs());
                }
            }
            let holds = house.hi() <= &bound;
            if holds || house.lo() > &bound || w >= cap {
                if !holds && house.lo() <= &bound {
                    return Err(Error::PrecisionCapExceeded { cap });
                }
                return Ok(NormBoundReport { point: n.clone(), house, bound, holds });
            }
            w = (w * 2).min(cap);
        }
    }
}

fn pow_dyadic(d: &Dyadic, mut e: u64) -> Dyadic {
    let mut base = d.clone();
    let mut acc = Dyadic::one();
    while e > 0 {
        if e & 1 == 1 {
            acc = acc.mul(&base);
        }
        e >>= 1;
        if e > 0 {
            base = base.mul(&base);
        }
    }
    acc
}

pub fn norm_bound_check(g: &MultiRecurrence, n: &LatticePoint, prec: u32) -> Result<NormBoundReport> {
    NormBoundChecker::new(g, prec)?.check(n)
}

#[derive(Clone, Debug, PartialEq)]
pub enum RatioOutcome {
    /// r(n) decided against 1.
    Ratio(RealInterval),
    SkipZeroF,
    SkipVanishing(Vec<Vec<usize>>),
    /// r(n) still straddles 1 at the precision cap.
    Undecided(Option<RealInterval>),
}

struct Classified {
    values: Vec<FieldElement>,
    total: FieldElement,
}

fn classify(g: &MultiRecurrence, config: &VerifierConfig, n: &LatticePoint) -> Result<Result<Classified, RatioOutcome>> {
    let t = g.term(config.i0)?;
    if t.poly().eval(n)?.is_zero() {
        return Ok(Err(RatioOutcome::SkipZeroF));
    }
    let values = g.term_values(n)?;
    let vanishing = vanishing_subsets_of_values(&values, config.i0, config.subset_cap)?;
    if !vanishing.is_empty() {
        return Ok(Err(RatioOutcome::SkipVanishing(vanishing)));
    }
    let mut total = g.field().zero();
    for v in &values {
        total = total.add(v)?;
    }
    Ok(Ok(Classified { values, total }))
}

/// r(n) = |G(n)|_μ · e^(ε|n|) / |f_i0(n) α_i0^n|_μ; the bound holds at n iff r(n) >= 1.
pub fn bound_ratio(g: &MultiRecurrence, config: &VerifierConfig, n: &LatticePoint) -> Result<RatioOutcome> {
    let place = config.validate(g)?;
    let c = match classify(g, config, n)? {
        Ok(c) => c,
        Err(skip) => return Ok(skip),
    };
    let quotient = c.total.div(&c.values[config.i0 - 1])?;
    let exponent = &config.epsilon * Rational::from_integer(BigInt::from(n.norm()));
    let one = RealInterval::one(config.precision);
    let mut w = config.precision;
    let mut last = None;
    loop {
        let modulus = match quotient.as_rational() {
            Some(q) => RealInterval::from_rational(&q.abs(), w),
            None => match quotient.embed(place, w) {
                Ok(e) => e.abs(),
                Err(Error::PrecisionCapExceeded { .. }) => return Ok(RatioOutcome::Undecided(last)),
                Err(e) => return Err(e),
            },
        };
        let r = modulus.mul(&RealInterval::from_rational(&exponent, w).exp());
        let decided = r.certainly_ge(&one) || r.certainly_lt(&one);
        if decided && (r.rel_width_within(REPORT_BITS) || w >= config.cap) {
            return Ok(RatioOutcome::Ratio(r));
        }
        if w >= config.cap {
            return Ok(if decided { RatioOutcome::Ratio(r) } else { RatioOutcome::Undecided(Some(r)) });
        }
        last = Some(r);
        w = (w * 2).min(config.cap);
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ShellReport {
    pub norm: u64,
    /// [min of lower endpoints, min of upper endpoints] over evaluated points.
    pub min_ratio: Option<RealInterval>,
    pub argmin: Option<LatticePoint>,
    pub points_total: u64,
    pub evaluated: u64,
    pub skipped_vanishing: u64,
    pub skipped_zero_f: u64,
    pub undecided: u64,
    /// Evaluated points with r(n) certainly below 1.
    pub failing: u64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ScanReport {
    pub shells: Vec<ShellReport>,
    /// Least N₀ such that every decided point with N₀ <= |n| <= N_max has r(n) >= 1.
    pub threshold: Option<u64>,
    pub undecided_points: Vec<LatticePoint>,
    pub vanishing_points: Vec<LatticePoint>,
}

impl ScanReport {
    pub fn total_undecided(&self) -> u64 {
        self.shells.iter().map(|s| s.undecided).sum()
    }
}

fn summarize(norm: u64, points: &[LatticePoint], outcomes: Vec<RatioOutcome>, scan: &mut ScanReport) -> ShellReport {
    let mut rep = ShellReport {
        norm,
        min_ratio: None,
        argmin: None,
        points_total: points.len() as u64,
        evaluated: 0,
        skipped_vanishing: 0,
        skipped_zero_f: 0,
        undecided: 0,
        failing: 0,
    };
    let mut best: Option<(RealInterval, &LatticePoint)> = None;
    let mut min_hi: Option<Dyadic> = None;
    for (n, o) in points.iter().zip(outcomes) {
        match o {
            RatioOutcome::Ratio(r) => {
                rep.evaluated += 1;
                if r.hi() < &Dyadic::one() {
                    rep.failing += 1;
                }
                min_hi = Some(match min_hi {
                    Some(h) if h <= *r.hi() => h,
                    _ => r.hi().clone(),
                });
                let better = match &best {
                    None => true,
                    Some((b, bn)) => r.lo() < b.lo() || (r.lo() == b.lo() && n < *bn),
                };
                if better {
                    best = Some((r, n));
                }
            }
            RatioOutcome::SkipZeroF => rep.skipped_zero_f += 1,
            RatioOutcome::SkipVanishing(_) => {
                rep.skipped_vanishing += 1;
                scan.vanishing_points.push(n.clone());
            }
            RatioOutcome::Undecided(_) => {
                rep.undecided += 1;
                scan.undecided_points.push(n.clone());
            }
        }
    }
    if let (Some((b, n)), Some(hi)) = (best, min_hi) {
        rep.min_ratio = Some(RealInterval::new(b.lo().clone(), hi, b.prec()));
        rep.argmin = Some(n.clone());
    }
    rep
}

/// Evaluates r(n) on every shell 1 <= |n| <= max_norm, points in parallel.
pub fn scan_shells(g: &MultiRecurrence, config: &VerifierConfig) -> Result<ScanReport> {
    config.validate(g)?;
    let mut scan = ScanReport { shells: Vec::new(), threshold: None, undecided_points: Vec::new(), vanishing_points: Vec::new() };
    for norm in 1..=config.max_norm {
        let points = shell(g.arity(), norm);
        let outcomes = points.par_iter().map(|n| bound_ratio(g, config, n)).collect::<Result<Vec<_>>>()?;
        let rep = summarize(norm, &points, outcomes, &mut scan);
        scan.shells.push(rep);
    }
    let last_failing = scan.shells.iter().filter(|s| s.failing > 0).map(|s| s.norm).max().unwrap_or(0);
    scan.threshold = (last_failing < config.max_norm).then_some(last_failing + 1);
    Ok(scan)
}

#[derive(Clone, Debug, PartialEq)]
pub struct ProbeRow {
    pub norm: u64,
    pub min: Option<RealInterval>,
    pub argmin: Option<LatticePoint>,
    pub running_min: Option<RealInterval>,
    pub evaluated: u64,
    pub skipped: u64,
    pub undecided: u64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ProbeReport {
    pub constants: ProofConstants,
    pub rows: Vec<ProbeRow>,
    /// Points whose value was not certainly positive; always empty for a correct build.
    pub nonpositive: Vec<LatticePoint>,
}

impl ProbeReport {
    pub fn total_undecided(&self) -> u64 {
        self.rows.iter().map(|r| r.undecided).sum()
    }
}

pub const PROBE_BITS: u32 = 32;

/// C_emp(n) = |G(n)|_μ · Π_i H_K(z f_i(n)) · ‖z x‖^ε' / max_i |z f_i(n) α_i^n|_μ, where x is the
/// vector of term values and ‖·‖ the maximum modulus over terms and embeddings.
/// Terms with f_i(n) = 0 contribute a height factor of 1. `None` for skipped points.
pub fn probe_value(
    g: &MultiRecurrence,
    config: &VerifierConfig,
    constants: &ProofConstants,
    n: &LatticePoint,
) -> Result<Option<RealInterval>> {
    let place = config.validate(g)?;
    let eps_p = constants.epsilon_prime.clone().ok_or(Error::DegenerateA)?;
    let c = match classify(g, config, n)? {
        Ok(c) => c,
        Err(_) => return Ok(None),
    };
    let z = g.field().from_int(constants.z.clone());
    let scaled: Vec<FieldElement> = c.values.iter().map(|v| v.mul(&z)).collect::<Result<_>>()?;
    let mut fz = Vec::with_capacity(g.len());
    for t in g.terms() {
        let f = t.poly().eval(n)?;
        fz.push(if f.is_zero() { None } else { Some(f.mul(&z)?) });
    }
    let abs_at = |x: &FieldElement, w: u32| -> Result<RealInterval> {
        Ok(match x.as_rational() {
            Some(q) => RealInterval::from_rational(&q.abs(), w),
            None => x.embed(place, w)?.abs(),
        })
    };
    let mut w = config.precision;
    loop {
        let mut heights = RealInterval::one(w);
        for f in fz.iter().flatten() {
            heights = heights.mul(&height_k(f, w)?);
        }
        let mut house = RealInterval::zero(w);
        let mut denom = RealInterval::zero(w);
        for v in &scaled {
            if v.is_zero() {
                continue;
            }
            match v.as_rational() {
                Some(q) => house = house.max(&RealInterval::from_rational(&q.abs(), w)),
                None => {
                    for e in v.embeddings(w)? {
                        house = house.max(&e.abs());
                    }
                }
            }
            denom = denom.max(&abs_at(v, w)?);
        }
        let lifted = house.ln().map(|l| l.mul(&eps_p.with_prec(w)).exp());
        let value = lifted.and_then(|l| abs_at(&c.total, w).ok().map(|gv| gv.mul(&heights).mul(&l)));
        if let Some(v) = value.and_then(|v| v.div(&denom)) {
            if v.rel_width_within(PROBE_BITS) {
                return Ok(Some(v));
            }
        }
        if w >= config.cap {
            return Err(Error::PrecisionCapExceeded { cap: config.cap });
        }
        w = (w * 2).min(config.cap);
    }
}

/// Per-shell minimum and running minimum of C_emp over 1 <= |n| <= max_norm.
pub fn evertse_probe(g: &MultiRecurrence, config: &VerifierConfig) -> Result<ProbeReport> {
    config.validate(g)?;
    let constants = proof_constants(g, &config.epsilon, config.precision)?;
    if constants.epsilon_prime.is_none() {
        return Err(Error::DegenerateA);
    }
    let mut rows = Vec::new();
    let mut nonpositive = Vec::new();
    let mut running: Option<RealInterval> = None;
    for norm in 1..=config.max_norm {
        let points = shell(g.arity(), norm);
        let values: Vec<Result<Option<RealInterval>>> =
            points.par_iter().map(|n| probe_value(g, config, &constants, n)).collect();
        let mut row = ProbeRow { norm, min: None, argmin: None, running_min: None, evaluated: 0, skipped: 0, undecided: 0 };
        let mut min_hi: Option<Dyadic> = None;
        let mut best: Option<(RealInterval, &LatticePoint)> = None;
        for (n, v) in points.iter().zip(values) {
            match v {
                Ok(Some(v)) => {
                    row.evaluated += 1;
                    if !v.lo().is_positive() {
                        nonpositive.push(n.clone());
                    }
                    min_hi = Some(match min_hi {
                        Some(h) if h <= *v.hi() => h,
                        _ => v.hi().clone(),
                    });
                    if best.as_ref().is_none_or(|(b, bn)| v.lo() < b.lo() || (v.lo() == b.lo() && n < *bn)) {
                        best = Some((v, n));
                    }
                }
                Ok(None) => row.skipped += 1,
                Err(Error::PrecisionCapExceeded { .. }) => row.undecided += 1,
                Err(e) => return Err(e),
            }
        }
        if let (Some((b, n)), Some(hi)) = (best, min_hi) {
            let m = RealInterval::new(b.lo().clone(), hi, b.prec());
            running = Some(match running {
                None => m.clone(),
                Some(r) => r.min(&m),
            });
            row.min = Some(m);
            row.argmin = Some(n.clone());
        }
        row.running_min = running.clone();
        rows.push(row);
    }
    Ok(ProbeReport { constants, rows, nonpositive })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::multirec::{MultiPoly, Term};
    use crate::numberfield::NumberField;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    fn pt(c: &[u64]) -> LatticePoint {
        LatticePoint::new(c.to_vec())
    }

    fn fibonacci() -> MultiRecurrence {
        let k = NumberField::from_i64(&[-5, 0, 1]).unwrap();
        let c = k.element(vec![q(0, 1), q(1, 5)]).unwrap();
        let phi = k.element(vec![q(1, 2), q(1, 2)]).unwrap();
        let psi = k.element(vec![q(1, 2), q(-1, 2)]).unwrap();
        MultiRecurrence::canonicalize(vec![
            Term::new(MultiPoly::constant(c.clone(), 1), vec![phi]).unwrap(),
            Term::new(MultiPoly::constant(c.neg(), 1), vec![psi]).unwrap(),
        ])
        .unwrap()
    }

    /// Index of the φ-term after canonical ordering.
    fn phi_index(g: &MultiRecurrence) -> usize {
        let half = q(1, 2);
        g.terms().iter().position(|t| t.bases()[0].coords()[1] == half).unwrap() + 1
    }

    fn rational_rec(terms: &[(i64, &[i64])]) -> MultiRecurrence {
        let k = NumberField::rationals();
        let raw = terms
            .iter()
            .map(|(c, b)| {
                Term::new(MultiPoly::constant(k.from_int(*c), b.len()), b.iter().map(|&x| k.from_int(x)).collect())
                    .unwrap()
            })
            .collect();
        MultiRecurrence::canonicalize(raw).unwrap()
    }

    #[test]
    fn parses_rationals() {
        assert_eq!(parse_rational("0.1").unwrap(), q(1, 10));
        assert_eq!(parse_rational("2").unwrap(), q(2, 1));
        assert_eq!(parse_rational("1/10").unwrap(), q(1, 10));
        assert_eq!(parse_rational("2.5e-1").unwrap(), q(1, 4));
        assert_eq!(parse_rational("-.5").unwrap(), q(-1, 2));
        assert!(parse_rational("abc").is_err());
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational(".").is_err());
    }

    #[test]
    fn z_examples() {
        assert_eq!(denominator_z(&fibonacci()), BigInt::from(5));
        assert_eq!(denominator_z(&rational_rec(&[(3, &[2]), (-4, &[3])])), BigInt::one());
        let k = NumberField::rationals();
        let raw = vec![
            Term::new(MultiPoly::constant(k.from_rational(q(1, 2)), 1), vec![k.from_int(2)]).unwrap(),
            Term::new(MultiPoly::constant(k.from_rational(q(1, 3)), 1), vec![k.from_int(3)]).unwrap(),
        ];
        assert_eq!(denominator_z(&MultiRecurrence::canonicalize(raw).unwrap()), BigInt::from(6));
    }

    #[test]
    fn a_examples() {
        let a = a_constant(&rational_rec(&[(1, &[2]), (1, &[3])]), 64).unwrap();
        assert!(a.is_point() && a.contains_rational(&q(3, 1)));
        let a = a_constant(&rational_rec(&[(1, &[1]), (1, &[-1])]), 64).unwrap();
        assert!(a.is_point() && a.contains_rational(&q(1, 1)));
        let a = a_constant(&fibonacci(), 64).unwrap();
        assert!((a.to_f64_mid() - 1.618_033_988_749_895).abs() < 1e-15);
        let ki = NumberField::from_i64(&[1, 0, 1]).unwrap();
        let i = Term::new(MultiPoly::constant(ki.one(), 1), vec![ki.generator()]).unwrap();
        let a = a_constant(&MultiRecurrence::canonicalize(vec![i]).unwrap(), 64).unwrap();
        assert!(a.is_point());
    }

    #[test]
    fn epsilon_prime_examples() {
        let three = RealInterval::from_int(3, 128);
        let eps = three.ln().unwrap().mul_pow2(1);
        let e = epsilon_prime(&eps, &three).unwrap();
        assert!(e.contains(&Dyadic::one()) && e.rel_width_within(100));
        let a = a_constant(&fibonacci(), 128).unwrap();
        let e = epsilon_prime(&RealInterval::from_rational(&q(1, 10), 128), &a).unwrap();
        let oracle = 0.1 / (2.0 * 1.618_033_988_749_895f64.ln());
        assert!((e.to_f64_mid() - oracle).abs() < 1e-15);
        assert!((e.to_f64_mid() - 0.10390).abs() < 1e-5);
        assert_eq!(epsilon_prime(&e, &RealInterval::one(64)), Err(Error::DegenerateA));
    }

    #[test]
    fn norm_bound_examples() {
        let g = rational_rec(&[(1, &[2])]);
        let r = norm_bound_check(&g, &pt(&[5]), 64).unwrap();
        assert!(r.holds && r.house.contains_rational(&q(32, 1)) && r.bound == Dyadic::from_int(32));
        let f = fibonacci();
        assert!(norm_bound_check(&f, &pt(&[10]), 64).unwrap().holds);
        let k = NumberField::rationals();
        let t = Term::new(MultiPoly::variable(&k, 2, 0), vec![k.from_int(2), k.from_int(3)]).unwrap();
        let g = MultiRecurrence::canonicalize(vec![t]).unwrap();
        let r = norm_bound_check(&g, &pt(&[2, 1]), 64).unwrap();
        assert!(r.holds && r.house.contains_rational(&q(24, 1)) && r.bound == Dyadic::from_int(81));
        let ki = NumberField::from_i64(&[1, 0, 1]).unwrap();
        let i = Term::new(MultiPoly::constant(ki.one(), 1), vec![ki.generator()]).unwrap();
        let g = MultiRecurrence::canonicalize(vec![i]).unwrap();
        for n in 1..8 {
            assert!(norm_bound_check(&g, &pt(&[n]), 64).unwrap().holds);
        }
    }

    #[test]
    fn ratio_examples() {
        let g = rational_rec(&[(1, &[2])]);
        let cfg = VerifierConfig::new(q(1, 10), 1, 5);
        match bound_ratio(&g, &cfg, &pt(&[7])).unwrap() {
            RatioOutcome::Ratio(r) => {
                assert!(r.rel_width_within(40));
                assert!((r.to_f64_mid() - 0.7f64.exp()).abs() < 1e-12);
            }
            o => panic!("{:?}", o),
        }
        let f = fibonacci();
        let cfg = VerifierConfig::new(q(1, 10), phi_index(&f), 5);
        let RatioOutcome::Ratio(r) = bound_ratio(&f, &cfg, &pt(&[10])).unwrap() else { panic!() };
        let phi = 1.618_033_988_749_895f64;
        let oracle = 55.0 / (phi.powi(10) / 5f64.sqrt() * (-1f64).exp());
        assert!((r.to_f64_mid() - oracle).abs() < 1e-9 && r.lo() >= &Dyadic::one());
        let d = rational_rec(&[(1, &[2, 3]), (-1, &[3, 2])]);
        let cfg = VerifierConfig::new(q(1, 10), 1, 5);
        assert_eq!(bound_ratio(&d, &cfg, &pt(&[3, 3])).unwrap(), RatioOutcome::SkipVanishing(vec![vec![1, 2]]));
        let k = NumberField::rationals();
        let t = Term::new(MultiPoly::variable(&k, 1, 0), vec![k.from_int(2)]).unwrap();
        let g = MultiRecurrence::canonicalize(vec![t]).unwrap();
        assert_eq!(bound_ratio(&g, &cfg, &pt(&[0])).unwrap(), RatioOutcome::SkipZeroF);
    }

    #[test]
    fn config_validation() {
        let g = rational_rec(&[(1, &[2])]);
        let mut cfg = VerifierConfig::new(q(1, 10), 2, 5);
        assert!(matches!(cfg.validate(&g), Err(Error::IndexOutOfRange { .. })));
        cfg.i0 = 1;
        cfg.place = Place::Finite(BigInt::from(2));
        assert!(matches!(cfg.validate(&g), Err(Error::Unsupported(_))));
        cfg.place = Place::Archimedean(0);
        cfg.epsilon = q(0, 1);
        assert!(matches!(cfg.validate(&g), Err(Error::InvalidConfig(_))));
    }

    #[test]
    fn scan_examples() {
        let g = rational_rec(&[(1, &[2, 3])]);
        let cfg = VerifierConfig::new(q(1, 10), 1, 3);
        let s = scan_shells(&g, &cfg).unwrap();
        assert_eq!(s.threshold, Some(1));
        for rep in &s.shells {
            let e = (0.1 * rep.norm as f64).exp();
            assert!((rep.min_ratio.as_ref().unwrap().to_f64_mid() - e).abs() < 1e-12);
            assert_eq!(rep.points_total, rep.norm + 1);
        }
        let d = rational_rec(&[(1, &[2, 3]), (-1, &[3, 2])]);
        let s = scan_shells(&d, &VerifierConfig::new(q(1, 10), 1, 6)).unwrap();
        for rep in &s.shells {
            assert_eq!(rep.skipped_vanishing, u64::from(rep.norm % 2 == 0));
            assert_eq!(rep.evaluated + rep.skipped_vanishing + rep.skipped_zero_f + rep.undecided, rep.points_total);
        }
    }

    #[test]
    fn probe_examples() {
        let g = rational_rec(&[(1, &[2])]);
        let cfg = VerifierConfig::new(q(1, 10), 1, 6);
        let rep = evertse_probe(&g, &cfg).unwrap();
        let ep = rep.constants.epsilon_prime.clone().unwrap();
        for row in &rep.rows {
            let expect = (ep.to_f64_mid() * row.norm as f64 * 2f64.ln()).exp();
            assert!((row.min.as_ref().unwrap().to_f64_mid() - expect).abs() < 1e-9 * expect);
        }
        let f = fibonacci();
        let cfg = VerifierConfig::new(q(1, 10), phi_index(&f), 10);
        let rep = evertse_probe(&f, &cfg).unwrap();
        assert!(rep.nonpositive.is_empty());
        assert!(rep.rows.iter().all(|r| r.min.as_ref().unwrap().lo().is_positive()));
        let unit = rational_rec(&[(1, &[1])]);
        assert_eq!(evertse_probe(&unit, &cfg_for(1)), Err(Error::DegenerateA));
    }

    fn cfg_for(i0: usize) -> VerifierConfig {
        VerifierConfig::new(q(1, 10), i0, 3)
    }
}
