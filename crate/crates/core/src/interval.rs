//! Rigorous real and complex interval arithmetic over dyadic endpoints.
//!
//! Every endpoint is an exact dyadic rational `m * 2^e`. Operations compute
//! the exact result where it is cheap to do so and then round the lower
//! endpoint down and the upper endpoint up to the working precision, so an
//! interval always encloses the true value of the expression it came from.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Rounding direction for a single endpoint.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Round {
    Floor,
    Ceil,
}

/// An exact dyadic rational `mant * 2^exp`, kept with an odd mantissa.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Dyadic {
    mant: BigInt,
    exp: i64,
}

fn floor_shr(m: &BigInt, shift: u64) -> BigInt {
    if shift == 0 {
        return m.clone();
    }
    if m.sign() != Sign::Minus {
        m >> shift
    } else {
        let mag = m.magnitude();
        let mask = (BigUint::one() << shift) - 1u32;
        let q = (mag + mask) >> shift;
        -BigInt::from(q)
    }
}

impl Dyadic {
    pub fn new(mant: BigInt, exp: i64) -> Self {
        let mut d = Dyadic { mant, exp };
        d.normalize();
        d
    }

    fn normalize(&mut self) {
        if self.mant.is_zero() {
            self.exp = 0;
            return;
        }
        if let Some(tz) = self.mant.trailing_zeros() {
            if tz > 0 {
                self.mant >>= tz;
                self.exp += tz as i64;
            }
        }
    }

    pub fn zero() -> Self {
        Dyadic { mant: BigInt::zero(), exp: 0 }
    }

    pub fn one() -> Self {
        Dyadic { mant: BigInt::one(), exp: 0 }
    }

    pub fn from_int<T: Into<BigInt>>(v: T) -> Self {
        Dyadic::new(v.into(), 0)
    }

    /// Exact conversion of a finite `f64`.
    pub fn from_f64(v: f64) -> Self {
        assert!(v.is_finite(), "non-finite float");
        if v == 0.0 {
            return Dyadic::zero();
        }
        let bits = v.to_bits();
        let sign = if bits >> 63 == 1 { -1i64 } else { 1 };
        let raw_exp = ((bits >> 52) & 0x7ff) as i64;
        let frac = bits & ((1u64 << 52) - 1);
        let (m, e) = if raw_exp == 0 {
            (frac, -1074)
        } else {
            (frac | (1u64 << 52), raw_exp - 1075)
        };
        Dyadic::new(BigInt::from(m) * sign, e)
    }

    pub fn mantissa(&self) -> &BigInt {
        &self.mant
    }

    pub fn exponent(&self) -> i64 {
        self.exp
    }

    pub fn is_zero(&self) -> bool {
        self.mant.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.mant.is_negative()
    }

    pub fn is_positive(&self) -> bool {
        self.mant.is_positive()
    }

    /// Number of significant bits in the mantissa.
    pub fn bits(&self) -> u64 {
        self.mant.bits()
    }

    /// Exponent of the leading bit: `2^(magnitude_log2) <= |self| < 2^(magnitude_log2 + 1)`.
    pub fn magnitude_log2(&self) -> Option<i64> {
        if self.is_zero() {
            None
        } else {
            Some(self.bits() as i64 - 1 + self.exp)
        }
    }

    pub fn abs(&self) -> Dyadic {
        Dyadic { mant: self.mant.abs(), exp: self.exp }
    }

    pub fn neg(&self) -> Dyadic {
        Dyadic { mant: -&self.mant, exp: self.exp }
    }

    pub fn add(&self, o: &Dyadic) -> Dyadic {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        let e = self.exp.min(o.exp);
        let a = &self.mant << (self.exp - e) as u64;
        let b = &o.mant << (o.exp - e) as u64;
        Dyadic::new(a + b, e)
    }

    pub fn sub(&self, o: &Dyadic) -> Dyadic {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Dyadic) -> Dyadic {
        Dyadic::new(&self.mant * &o.mant, self.exp + o.exp)
    }

    pub fn mul_pow2(&self, k: i64) -> Dyadic {
        if self.is_zero() {
            return Dyadic::zero();
        }
        Dyadic { mant: self.mant.clone(), exp: self.exp + k }
    }

    /// Round to at most `prec` significant bits in the given direction.
    pub fn round(&self, prec: u32, dir: Round) -> Dyadic {
        let bits = self.bits();
        if bits <= prec as u64 {
            return self.clone();
        }
        let shift = bits - prec as u64;
        let q = match dir {
            Round::Floor => floor_shr(&self.mant, shift),
            Round::Ceil => -floor_shr(&-&self.mant, shift),
        };
        Dyadic::new(q, self.exp + shift as i64)
    }

    /// Directed quotient with at least `prec` significant bits.
    pub fn div(&self, o: &Dyadic, prec: u32, dir: Round) -> Dyadic {
        assert!(!o.is_zero(), "dyadic division by zero");
        if self.is_zero() {
            return Dyadic::zero();
        }
        let k = (prec as i64 + o.bits() as i64 - self.bits() as i64 + 2).max(0) as u64;
        let num = &self.mant << k;
        let (q, r) = num.div_mod_floor(&o.mant);
        let q = if dir == Round::Ceil && !r.is_zero() { q + 1 } else { q };
        Dyadic::new(q, self.exp - o.exp - k as i64).round(prec, dir)
    }

    pub fn from_rational(q: &BigRational, prec: u32, dir: Round) -> Dyadic {
        let n = Dyadic::from_int(q.numer().clone());
        let d = Dyadic::from_int(q.denom().clone());
        n.div(&d, prec, dir)
    }

    pub fn to_rational(&self) -> BigRational {
        if self.exp >= 0 {
            BigRational::from_integer(&self.mant << self.exp as u64)
        } else {
            BigRational::new(self.mant.clone(), BigInt::one() << (-self.exp) as u64)
        }
    }

    /// Directed square root; `self` must be non-negative.
    pub fn sqrt(&self, prec: u32, dir: Round) -> Dyadic {
        assert!(!self.is_negative(), "square root of a negative dyadic");
        if self.is_zero() {
            return Dyadic::zero();
        }
        let mut s = (2 * prec as i64 + 4 - self.bits() as i64).max(0);
        if (self.exp - s).rem_euclid(2) != 0 {
            s += 1;
        }
        let n = self.mant.magnitude() << s as u64;
        let r = n.sqrt();
        let exact = &r * &r == n;
        let r = if dir == Round::Ceil && !exact { r + 1u32 } else { r };
        Dyadic::new(BigInt::from(r), (self.exp - s) / 2).round(prec, dir)
    }

    pub fn to_f64(&self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        let bits = self.bits();
        let (m, e) = if bits > 60 {
            let sh = bits - 60;
            (floor_shr(&self.mant, sh), self.exp + sh as i64)
        } else {
            (self.mant.clone(), self.exp)
        };
        let mf = m.to_f64().unwrap_or(f64::NAN);
        mf * 2f64.powi(e.clamp(-2000, 2000) as i32)
    }
}

impl PartialOrd for Dyadic {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Dyadic {
    fn cmp(&self, other: &Self) -> Ordering {
        let sa = self.mant.sign();
        let sb = other.mant.sign();
        if sa != sb {
            let rank = |s: Sign| match s {
                Sign::Minus => 0,
                Sign::NoSign => 1,
                Sign::Plus => 2,
            };
            return rank(sa).cmp(&rank(sb));
        }
        if sa == Sign::NoSign {
            return Ordering::Equal;
        }
        // Same sign: compare leading-bit positions before aligning.
        let la = self.magnitude_log2().unwrap();
        let lb = other.magnitude_log2().unwrap();
        if la != lb {
            let mag = la.cmp(&lb);
            return if sa == Sign::Plus { mag } else { mag.reverse() };
        }
        let e = self.exp.min(other.exp);
        let a = &self.mant << (self.exp - e) as u64;
        let b = &other.mant << (other.exp - e) as u64;
        a.cmp(&b)
    }
}

/// A closed real interval `[lo, hi]` with dyadic endpoints and a working precision.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RealInterval {
    lo: Dyadic,
    hi: Dyadic,
    prec: u32,
}

impl RealInterval {
    pub fn new(lo: Dyadic, hi: Dyadic, prec: u32) -> Self {
        assert!(lo <= hi, "interval endpoints out of order");
        RealInterval { lo, hi, prec }
    }

    fn rounded(lo: Dyadic, hi: Dyadic, prec: u32) -> Self {
        RealInterval { lo: lo.round(prec, Round::Floor), hi: hi.round(prec, Round::Ceil), prec }
    }

    pub fn point(d: Dyadic, prec: u32) -> Self {
        RealInterval::rounded(d.clone(), d, prec)
    }

    pub fn zero(prec: u32) -> Self {
        RealInterval::point(Dyadic::zero(), prec)
    }

    pub fn one(prec: u32) -> Self {
        RealInterval::point(Dyadic::one(), prec)
    }

    pub fn from_int<T: Into<BigInt>>(v: T, prec: u32) -> Self {
        RealInterval::point(Dyadic::from_int(v), prec)
    }

    pub fn from_rational(q: &BigRational, prec: u32) -> Self {
        RealInterval {
            lo: Dyadic::from_rational(q, prec, Round::Floor),
            hi: Dyadic::from_rational(q, prec, Round::Ceil),
            prec,
        }
    }

    pub fn lo(&self) -> &Dyadic {
        &self.lo
    }

    pub fn hi(&self) -> &Dyadic {
        &self.hi
    }

    pub fn prec(&self) -> u32 {
        self.prec
    }

    pub fn with_prec(&self, prec: u32) -> Self {
        RealInterval::rounded(self.lo.clone(), self.hi.clone(), prec)
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    pub fn width(&self) -> Dyadic {
        self.hi.sub(&self.lo)
    }

    pub fn midpoint(&self) -> Dyadic {
        self.lo.add(&self.hi).mul_pow2(-1).round(self.prec, Round::Floor)
    }

    pub fn contains(&self, d: &Dyadic) -> bool {
        &self.lo <= d && d <= &self.hi
    }

    pub fn contains_rational(&self, q: &BigRational) -> bool {
        let lo = self.lo.to_rational();
        let hi = self.hi.to_rational();
        &lo <= q && q <= &hi
    }

    pub fn contains_zero(&self) -> bool {
        !self.lo.is_positive() && !self.hi.is_negative()
    }

    pub fn overlaps(&self, o: &RealInterval) -> bool {
        self.lo <= o.hi && o.lo <= self.hi
    }

    pub fn is_subset_of(&self, o: &RealInterval) -> bool {
        o.lo <= self.lo && self.hi <= o.hi
    }

    /// True when every point of `self` is `>= other` for every point of `other`.
    pub fn certainly_ge(&self, o: &RealInterval) -> bool {
        self.lo >= o.hi
    }

    pub fn certainly_gt(&self, o: &RealInterval) -> bool {
        self.lo > o.hi
    }

    pub fn certainly_lt(&self, o: &RealInterval) -> bool {
        self.hi < o.lo
    }

    /// Relative width `(hi - lo) / min|endpoint|` is at most `2^-bits`.
    pub fn rel_width_within(&self, bits: u32) -> bool {
        if self.contains_zero() {
            return self.is_point();
        }
        let mag = if self.lo.is_positive() { self.lo.clone() } else { self.hi.abs() };
        self.width().mul_pow2(bits as i64) <= mag
    }

    fn join_prec(&self, o: &RealInterval) -> u32 {
        self.prec.max(o.prec)
    }

    pub fn neg(&self) -> RealInterval {
        RealInterval { lo: self.hi.neg(), hi: self.lo.neg(), prec: self.prec }
    }

    pub fn add(&self, o: &RealInterval) -> RealInterval {
        RealInterval::rounded(self.lo.add(&o.lo), self.hi.add(&o.hi), self.join_prec(o))
    }

    pub fn sub(&self, o: &RealInterval) -> RealInterval {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &RealInterval) -> RealInterval {
        let prec = self.join_prec(o);
        if !self.lo.is_negative() && !o.lo.is_negative() {
            return RealInterval::rounded(self.lo.mul(&o.lo), self.hi.mul(&o.hi), prec);
        }
        let c = [self.lo.mul(&o.lo), self.lo.mul(&o.hi), self.hi.mul(&o.lo), self.hi.mul(&o.hi)];
        let lo = c.iter().min().unwrap().clone();
        let hi = c.iter().max().unwrap().clone();
        RealInterval::rounded(lo, hi, prec)
    }

    pub fn mul_pow2(&self, k: i64) -> RealInterval {
        RealInterval { lo: self.lo.mul_pow2(k), hi: self.hi.mul_pow2(k), prec: self.prec }
    }

    /// Quotient; `None` when the divisor contains zero.
    pub fn div(&self, o: &RealInterval) -> Option<RealInterval> {
        if o.contains_zero() {
            return None;
        }
        let prec = self.join_prec(o);
        let mut lo: Option<Dyadic> = None;
        let mut hi: Option<Dyadic> = None;
        for a in [&self.lo, &self.hi] {
            for b in [&o.lo, &o.hi] {
                let l = a.div(b, prec, Round::Floor);
                let h = a.div(b, prec, Round::Ceil);
                lo = Some(match lo {
                    Some(x) if x <= l => x,
                    _ => l,
                });
                hi = Some(match hi {
                    Some(x) if x >= h => x,
                    _ => h,
                });
            }
        }
        Some(RealInterval { lo: lo.unwrap(), hi: hi.unwrap(), prec })
    }

    pub fn recip(&self) -> Option<RealInterval> {
        RealInterval::one(self.prec).div(self)
    }

    pub fn abs(&self) -> RealInterval {
        if !self.lo.is_negative() {
            self.clone()
        } else if !self.hi.is_positive() {
            self.neg()
        } else {
            let m = if self.lo.abs() > self.hi { self.lo.abs() } else { self.hi.clone() };
            RealInterval { lo: Dyadic::zero(), hi: m, prec: self.prec }
        }
    }

    pub fn sqr(&self) -> RealInterval {
        let a = self.abs();
        RealInterval::rounded(a.lo.mul(&a.lo), a.hi.mul(&a.hi), self.prec)
    }

    /// Square root of the non-negative part; `None` if the interval is entirely negative.
    pub fn sqrt(&self) -> Option<RealInterval> {
        if self.hi.is_negative() {
            return None;
        }
        let lo = if self.lo.is_negative() { Dyadic::zero() } else { self.lo.sqrt(self.prec, Round::Floor) };
        Some(RealInterval { lo, hi: self.hi.sqrt(self.prec, Round::Ceil), prec: self.prec })
    }

    pub fn max(&self, o: &RealInterval) -> RealInterval {
        RealInterval {
            lo: self.lo.clone().max(o.lo.clone()),
            hi: self.hi.clone().max(o.hi.clone()),
            prec: self.join_prec(o),
        }
    }

    pub fn min(&self, o: &RealInterval) -> RealInterval {
        RealInterval {
            lo: self.lo.clone().min(o.lo.clone()),
            hi: self.hi.clone().min(o.hi.clone()),
            prec: self.join_prec(o),
        }
    }

    /// Smallest interval containing both.
    pub fn hull(&self, o: &RealInterval) -> RealInterval {
        RealInterval {
            lo: self.lo.clone().min(o.lo.clone()),
            hi: self.hi.clone().max(o.hi.clone()),
            prec: self.join_prec(o),
        }
    }

    pub fn pow_u(&self, n: u64) -> RealInterval {
        if n == 0 {
            return RealInterval::one(self.prec);
        }
        if self.lo.is_negative() {
            if n % 2 == 0 {
                return self.abs().pow_u(n);
            }
            if !self.hi.is_positive() {
                return self.neg().pow_u(n).neg();
            }
            let neg = RealInterval::point(self.lo.neg(), self.prec).pow_u(n);
            let pos = RealInterval::point(self.hi.clone(), self.prec).pow_u(n);
            return RealInterval { lo: neg.hi.neg(), hi: pos.hi, prec: self.prec };
        }
        let mut base = self.clone();
        let mut acc = RealInterval::one(self.prec);
        let mut e = n;
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

    pub fn exp(&self) -> RealInterval {
        let lo = exp_point(&self.lo, self.prec).lo;
        let hi = exp_point(&self.hi, self.prec).hi;
        RealInterval::rounded(lo, hi, self.prec)
    }

    /// Natural logarithm; `None` unless the interval is strictly positive.
    pub fn ln(&self) -> Option<RealInterval> {
        if !self.lo.is_positive() {
            return None;
        }
        let lo = ln_point(&self.lo, self.prec).lo;
        let hi = ln_point(&self.hi, self.prec).hi;
        Some(RealInterval::rounded(lo, hi, self.prec))
    }

    /// `self^e` for a positive base, via `exp(e * ln(self))`.
    pub fn powf(&self, e: &RealInterval) -> Option<RealInterval> {
        Some(e.mul(&self.ln()?).exp())
    }

    pub fn to_f64_mid(&self) -> f64 {
        (self.lo.to_f64() + self.hi.to_f64()) / 2.0
    }
}

impl fmt::Display for RealInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{}]", format_sig(&self.lo, 12), format_sig(&self.hi, 12))
    }
}

/// Enclosure of `exp(d)` at roughly `prec` bits.
fn exp_point(d: &Dyadic, prec: u32) -> RealInterval {
    if d.is_zero() {
        return RealInterval::one(prec);
    }
    // Halve until |y| <= 1/2, then square back up.
    let j = (d.magnitude_log2().unwrap() + 2).max(0) as u32;
    let w = prec + 40 + j;
    let y = RealInterval::point(d.mul_pow2(-(j as i64)), w);
    let eps = Dyadic::new(BigInt::one(), -(w as i64) - 4);
    let mut sum = RealInterval::one(w);
    let mut term = RealInterval::one(w);
    let mut i: u64 = 1;
    loop {
        term = term.mul(&y).div(&RealInterval::from_int(i, w)).unwrap();
        sum = sum.add(&term);
        let mag = term.abs().hi;
        if mag <= eps {
            // Remaining tail is bounded by the last term since |y|/(i+1) <= 1/2.
            sum = sum.add(&RealInterval { lo: mag.neg(), hi: mag, prec: w });
            break;
        }
        i += 1;
    }
    for _ in 0..j {
        sum = sum.sqr();
    }
    sum
}

/// Interval atanh(y) for |y| <= 1/3.
fn atanh_small(y: &RealInterval, w: u32) -> RealInterval {
    let y2 = y.sqr();
    let eps = Dyadic::new(BigInt::one(), -(w as i64) - 4);
    let mut pw = y.clone();
    let mut sum = RealInterval::zero(w);
    let mut k: u64 = 1;
    loop {
        sum = sum.add(&pw.div(&RealInterval::from_int(k, w)).unwrap());
        pw = pw.mul(&y2);
        let mag = pw.abs().hi;
        if mag <= eps {
            let tail = mag.mul_pow2(1);
            sum = sum.add(&RealInterval { lo: tail.neg(), hi: tail, prec: w });
            break;
        }
        k += 2;
    }
    sum
}

fn ln2(w: u32) -> RealInterval {
    let third = RealInterval::one(w).div(&RealInterval::from_int(3, w)).unwrap();
    atanh_small(&third, w).mul_pow2(1)
}

/// Enclosure of `ln(d)` for `d > 0`.
fn ln_point(d: &Dyadic, prec: u32) -> RealInterval {
    assert!(d.is_positive());
    let w = prec + 40;
    let mut k = d.magnitude_log2().unwrap();
    let mut b = d.mul_pow2(-k);
    if b > Dyadic::new(BigInt::from(3), -1) {
        k += 1;
        b = b.mul_pow2(-1);
    }
    let bi = RealInterval::point(b, w);
    let one = RealInterval::one(w);
    let y = bi.sub(&one).div(&bi.add(&one)).unwrap();
    let lnb = atanh_small(&y, w).mul_pow2(1);
    if k == 0 {
        return lnb;
    }
    ln2(w).mul(&RealInterval::from_int(k, w)).add(&lnb)
}

/// A rectangular complex enclosure.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComplexInterval {
    pub re: RealInterval,
    pub im: RealInterval,
}

impl ComplexInterval {
    pub fn new(re: RealInterval, im: RealInterval) -> Self {
        ComplexInterval { re, im }
    }

    pub fn from_real(re: RealInterval) -> Self {
        let p = re.prec();
        ComplexInterval { re, im: RealInterval::zero(p) }
    }

    pub fn zero(prec: u32) -> Self {
        ComplexInterval::from_real(RealInterval::zero(prec))
    }

    pub fn one(prec: u32) -> Self {
        ComplexInterval::from_real(RealInterval::one(prec))
    }

    pub fn prec(&self) -> u32 {
        self.re.prec().max(self.im.prec())
    }

    pub fn with_prec(&self, prec: u32) -> Self {
        ComplexInterval { re: self.re.with_prec(prec), im: self.im.with_prec(prec) }
    }

    pub fn is_real(&self) -> bool {
        self.im.is_point() && self.im.lo().is_zero()
    }

    pub fn add(&self, o: &ComplexInterval) -> ComplexInterval {
        ComplexInterval { re: self.re.add(&o.re), im: self.im.add(&o.im) }
    }

    pub fn sub(&self, o: &ComplexInterval) -> ComplexInterval {
        ComplexInterval { re: self.re.sub(&o.re), im: self.im.sub(&o.im) }
    }

    pub fn neg(&self) -> ComplexInterval {
        ComplexInterval { re: self.re.neg(), im: self.im.neg() }
    }

    pub fn conj(&self) -> ComplexInterval {
        ComplexInterval { re: self.re.clone(), im: self.im.neg() }
    }

    pub fn mul(&self, o: &ComplexInterval) -> ComplexInterval {
        if self.is_real() && o.is_real() {
            return ComplexInterval::from_real(self.re.mul(&o.re));
        }
        ComplexInterval {
            re: self.re.mul(&o.re).sub(&self.im.mul(&o.im)),
            im: self.re.mul(&o.im).add(&self.im.mul(&o.re)),
        }
    }

    pub fn scale(&self, r: &RealInterval) -> ComplexInterval {
        ComplexInterval { re: self.re.mul(r), im: self.im.mul(r) }
    }

    pub fn abs_sq(&self) -> RealInterval {
        self.re.sqr().add(&self.im.sqr())
    }

    pub fn abs(&self) -> RealInterval {
        if self.is_real() {
            return self.re.abs();
        }
        self.abs_sq().sqrt().expect("squared modulus is non-negative")
    }

    pub fn div(&self, o: &ComplexInterval) -> Option<ComplexInterval> {
        if o.is_real() {
            return Some(ComplexInterval { re: self.re.div(&o.re)?, im: self.im.div(&o.re)? });
        }
        let d = o.abs_sq();
        let n = self.mul(&o.conj());
        Some(ComplexInterval { re: n.re.div(&d)?, im: n.im.div(&d)? })
    }

    pub fn midpoint(&self) -> ComplexInterval {
        let p = self.prec();
        ComplexInterval {
            re: RealInterval::point(self.re.midpoint(), p),
            im: RealInterval::point(self.im.midpoint(), p),
        }
    }

    /// Grow the box by `r` in every direction.
    pub fn inflate(&self, r: &Dyadic) -> ComplexInterval {
        let grow = |x: &RealInterval| RealInterval::new(x.lo().sub(r), x.hi().add(r), x.prec());
        ComplexInterval { re: grow(&self.re), im: grow(&self.im) }
    }
}

impl fmt::Display for ComplexInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_real() {
            write!(f, "{}", self.re)
        } else {
            write!(f, "{} + {}i", self.re, self.im)
        }
    }
}

fn pow10(e: u32) -> BigInt {
    num_traits::pow(BigInt::from(10u32), e as usize)
}

/// Decimal rendering with `digits` significant digits, rounded to nearest (ties away from zero).
///
/// Plain notation for decimal exponents in `[-6, 21)`, scientific otherwise.
pub fn format_sig(d: &Dyadic, digits: u32) -> String {
    format_rational_sig(&d.to_rational(), digits)
}

pub fn format_rational_sig(v: &BigRational, digits: u32) -> String {
    if v.is_zero() {
        return "0".to_string();
    }
    let neg = v.is_negative();
    let a = v.abs();
    // Estimate the decimal exponent from bit lengths, then correct.
    let nb = a.numer().bits() as f64;
    let db = a.denom().bits() as f64;
    let mut e10 = ((nb - db) * std::f64::consts::LOG10_2).floor() as i64;
    let ten = BigRational::from_integer(BigInt::from(10));
    let pow = |e: i64| -> BigRational {
        if e >= 0 {
            BigRational::from_integer(pow10(e as u32))
        } else {
            BigRational::new(BigInt::one(), pow10((-e) as u32))
        }
    };
    while pow(e10) > a {
        e10 -= 1;
    }
    while pow(e10) * &ten <= a {
        e10 += 1;
    }
    let scaled = &a * pow(digits as i64 - 1 - e10);
    let twice = scaled * BigRational::from_integer(BigInt::from(2));
    let mut r = ((twice.numer() + twice.denom()) / (twice.denom() * BigInt::from(2))).clone();
    if r == pow10(digits) {
        r /= 10;
        e10 += 1;
    }
    let ds = r.to_string();
    let body = if (-6..21).contains(&e10) {
        if e10 >= 0 {
            let int_len = (e10 + 1) as usize;
            if int_len >= ds.len() {
                format!("{}{}", ds, "0".repeat(int_len - ds.len()))
            } else {
                trim_frac(format!("{}.{}", &ds[..int_len], &ds[int_len..]))
            }
        } else {
            trim_frac(format!("0.{}{}", "0".repeat((-e10 - 1) as usize), ds))
        }
    } else {
        let mant = if ds.len() > 1 { trim_frac(format!("{}.{}", &ds[..1], &ds[1..])) } else { ds };
        format!("{}e{}{}", mant, if e10 < 0 { "-" } else { "+" }, e10.abs())
    };
    if neg {
        format!("-{}", body)
    } else {
        body
    }
}

fn trim_frac(s: String) -> String {
    if !s.contains('.') {
        return s;
    }
    let t = s.trim_end_matches('0');
    t.trim_end_matches('.').to_string()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn floor_shift_negative_rounds_down() {
        let d = Dyadic::from_int(-5);
        assert_eq!(d.round(2, Round::Floor), Dyadic::from_int(-6));
        assert_eq!(d.round(2, Round::Ceil), Dyadic::from_int(-4));
        assert_eq!(Dyadic::from_int(5).round(2, Round::Floor), Dyadic::from_int(4));
    }

    #[test]
    fn rational_enclosure() {
        let third = RealInterval::from_rational(&q(1, 3), 64);
        assert!(third.contains_rational(&q(1, 3)));
        assert!(!third.is_point());
        assert!(third.rel_width_within(60));
        let half = RealInterval::from_rational(&q(1, 2), 64);
        assert!(half.is_point());
    }

    #[test]
    fn sqrt_of_five() {
        let s = RealInterval::from_int(5, 128).sqrt().unwrap();
        let sq = s.sqr();
        assert!(sq.contains(&Dyadic::from_int(5)));
        assert!(s.rel_width_within(120));
        assert!((s.to_f64_mid() - 5f64.sqrt()).abs() < 1e-15);
        assert!(RealInterval::from_int(49, 64).sqrt().unwrap().is_point());
    }

    #[test]
    fn exp_and_ln_round_trip() {
        let x = RealInterval::from_rational(&q(1, 10), 128);
        let e = x.exp();
        assert!((e.to_f64_mid() - 0.1f64.exp()).abs() < 1e-15);
        assert!(e.rel_width_within(100));
        let back = e.ln().unwrap();
        assert!(back.overlaps(&x));
        let big = RealInterval::from_int(20, 128).exp();
        assert!((big.to_f64_mid() / 20f64.exp() - 1.0).abs() < 1e-14);
        let neg = RealInterval::from_int(-7, 128).exp();
        assert!((neg.to_f64_mid() / (-7f64).exp() - 1.0).abs() < 1e-14);
        let l3 = RealInterval::from_int(3, 128).ln().unwrap();
        assert!((l3.to_f64_mid() - 3f64.ln()).abs() < 1e-15);
        let lsmall = RealInterval::from_rational(&q(1, 1000), 128).ln().unwrap();
        assert!((lsmall.to_f64_mid() - 0.001f64.ln()).abs() < 1e-13);
        assert_eq!(RealInterval::one(64).ln().unwrap().lo(), &Dyadic::zero());
    }

    #[test]
    fn pow_and_division() {
        let x = RealInterval::from_int(-3, 64);
        assert_eq!(x.pow_u(3), RealInterval::from_int(-27, 64));
        assert_eq!(x.pow_u(2), RealInterval::from_int(9, 64));
        let y = RealInterval::new(Dyadic::from_int(-1), Dyadic::from_int(2), 64);
        let c = y.pow_u(3);
        assert_eq!(c.lo(), &Dyadic::from_int(-1));
        assert_eq!(c.hi(), &Dyadic::from_int(8));
        assert!(RealInterval::from_int(1, 64).div(&y).is_none());
    }

    #[test]
    fn complex_modulus() {
        let z = ComplexInterval::new(RealInterval::from_int(3, 64), RealInterval::from_int(4, 64));
        assert_eq!(z.abs(), RealInterval::from_int(5, 64));
        let w = z.mul(&z.conj());
        assert_eq!(w.re, RealInterval::from_int(25, 64));
        let inv = ComplexInterval::one(64).div(&z).unwrap();
        assert!(inv.mul(&z).re.contains(&Dyadic::one()));
    }

    #[test]
    fn decimal_format() {
        assert_eq!(format_rational_sig(&q(55, 1), 12), "55");
        assert_eq!(format_rational_sig(&q(1, 3), 12), "0.333333333333");
        assert_eq!(format_rational_sig(&q(2, 3), 12), "0.666666666667");
        assert_eq!(format_rational_sig(&q(-5, 2), 12), "-2.5");
        assert_eq!(format_rational_sig(&q(999_999_999_999_5, 10), 12), "1000000000000");
        assert_eq!(format_rational_sig(&q(1, 10_000_000), 12), "1e-7");
        assert_eq!(format_sig(&Dyadic::from_f64(1.0e30), 3), "1e+30");
        assert_eq!(format_sig(&Dyadic::from_f64(0.125), 12), "0.125");
    }

    #[test]
    fn dyadic_ordering() {
        let a = Dyadic::from_f64(0.75);
        let b = Dyadic::from_f64(1.5);
        assert!(a < b);
        assert!(a.neg() > b.neg());
        assert!(Dyadic::zero() < a);
        assert_eq!(Dyadic::from_f64(3.0), Dyadic::from_int(3));
    }
}
