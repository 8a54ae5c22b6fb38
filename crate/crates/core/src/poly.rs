//! Dense univariate polynomials over Z, Q and small prime fields.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::interval::ComplexInterval;

/// Integer polynomial, coefficients lowest degree first, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        IntPolynomial { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        IntPolynomial::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lead(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.lead().is_some_and(|c| c.is_one())
    }

    pub fn content(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    /// Divide out the content and make the leading coefficient positive.
    pub fn primitive(&self) -> IntPolynomial {
        if self.is_zero() {
            return self.clone();
        }
        let mut g = self.content();
        if self.lead().unwrap().is_negative() {
            g = -g;
        }
        IntPolynomial::new(self.coeffs.iter().map(|c| c / &g).collect())
    }

    pub fn derivative(&self) -> IntPolynomial {
        IntPolynomial::new(
            self.coeffs.iter().enumerate().skip(1).map(|(i, c)| c * BigInt::from(i)).collect(),
        )
    }

    pub fn mul(&self, o: &IntPolynomial) -> IntPolynomial {
        if self.is_zero() || o.is_zero() {
            return IntPolynomial::new(vec![]);
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in o.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPolynomial::new(out)
    }

    /// Exact quotient in Z[X], or `None` if `o` does not divide `self`.
    pub fn div_exact(&self, o: &IntPolynomial) -> Option<IntPolynomial> {
        let (q, r) = q_divrem(&to_q(self), &to_q(o));
        if !r.is_empty() {
            return None;
        }
        q.iter()
            .map(|c| if c.is_integer() { Some(c.to_integer()) } else { None })
            .collect::<Option<Vec<_>>>()
            .map(IntPolynomial::new)
    }

    pub fn eval_rational(&self, x: &BigRational) -> BigRational {
        self.coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * x + BigRational::from_integer(c.clone()))
    }

    pub fn eval_complex(&self, z: &ComplexInterval) -> ComplexInterval {
        let prec = z.prec();
        let mut acc = ComplexInterval::zero(prec);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(z).add(&ComplexInterval::from_real(crate::interval::RealInterval::from_int(
                c.clone(),
                prec,
            )));
        }
        acc
    }

    /// Largest coefficient bit length.
    pub fn max_coeff_bits(&self) -> u64 {
        self.coeffs.iter().map(|c| c.bits()).max().unwrap_or(0)
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            let show_coeff = i == 0 || !mag.is_one();
            if show_coeff {
                write!(f, "{}", mag)?;
            }
            match i {
                0 => {}
                1 => write!(f, "X")?,
                _ => write!(f, "X^{}", i)?,
            }
        }
        Ok(())
    }
}

pub type QPoly = Vec<BigRational>;

pub fn to_q(p: &IntPolynomial) -> QPoly {
    p.coeffs.iter().map(|c| BigRational::from_integer(c.clone())).collect()
}

fn q_trim(mut p: QPoly) -> QPoly {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
    p
}

/// Clear denominators and return the primitive integer polynomial with positive lead.
pub fn q_to_primitive(p: &QPoly) -> IntPolynomial {
    let l = p.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = p.iter().map(|c| (c * BigRational::from_integer(l.clone())).to_integer()).collect();
    IntPolynomial::new(ints).primitive()
}

pub fn q_divrem(a: &QPoly, b: &QPoly) -> (QPoly, QPoly) {
    let b = q_trim(b.clone());
    assert!(!b.is_empty(), "polynomial division by zero");
    let mut r = q_trim(a.clone());
    if r.len() < b.len() {
        return (vec![], r);
    }
    let db = b.len() - 1;
    let lb = b[db].clone();
    let mut q = vec![BigRational::zero(); r.len() - db];
    while r.len() > db && !r.is_empty() {
        let k = r.len() - 1 - db;
        let c = &r[r.len() - 1] / &lb;
        for (j, bj) in b.iter().enumerate() {
            r[k + j] -= &c * bj;
        }
        q[k] = c;
        r.pop();
        r = q_trim(r);
    }
    (q_trim(q), r)
}

fn q_monic(p: QPoly) -> QPoly {
    match p.last() {
        None => p,
        Some(l) => {
            let l = l.clone();
            p.into_iter().map(|c| c / &l).collect()
        }
    }
}

/// Monic gcd over Q.
pub fn q_gcd(a: &QPoly, b: &QPoly) -> QPoly {
    let mut x = q_trim(a.clone());
    let mut y = q_trim(b.clone());
    while !y.is_empty() {
        let (_, r) = q_divrem(&x, &y);
        x = y;
        y = r;
    }
    q_monic(x)
}

fn q_derivative(p: &QPoly) -> QPoly {
    q_trim(
        p.iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * BigRational::from_integer(BigInt::from(i)))
            .collect(),
    )
}

/// Yun's square-free decomposition: primitive factors `g_i` with multiplicities `i`,
/// such that `p = ±content(p) · Π g_i^i`.
pub fn squarefree_decomposition(p: &IntPolynomial) -> Vec<(IntPolynomial, u32)> {
    let f = to_q(p);
    let mut out = Vec::new();
    if p.degree().unwrap_or(0) == 0 {
        return out;
    }
    let fp = q_derivative(&f);
    let a0 = q_gcd(&f, &fp);
    let mut b = q_divrem(&f, &a0).0;
    let c = q_divrem(&fp, &a0).0;
    let mut d = q_sub(&c, &q_derivative(&b));
    let mut i = 1;
    while b.len() > 1 {
        let a = q_gcd(&b, &d);
        let nb = q_divrem(&b, &a).0;
        let c = q_divrem(&d, &a).0;
        d = q_sub(&c, &q_derivative(&nb));
        if a.len() > 1 {
            out.push((q_to_primitive(&a), i));
        }
        b = nb;
        i += 1;
    }
    out
}

fn q_sub(a: &QPoly, b: &QPoly) -> QPoly {
    let n = a.len().max(b.len());
    let z = BigRational::zero();
    q_trim((0..n).map(|i| a.get(i).unwrap_or(&z) - b.get(i).unwrap_or(&z)).collect())
}

pub fn is_squarefree(p: &IntPolynomial) -> bool {
    let f = to_q(p);
    q_gcd(&f, &q_derivative(&f)).len() <= 1
}

/// Non-trivial factor from gcd(p, p'), if `p` is not square-free.
pub fn repeated_factor(p: &IntPolynomial) -> Option<IntPolynomial> {
    let f = to_q(p);
    let g = q_gcd(&f, &q_derivative(&f));
    if g.len() > 1 {
        Some(q_to_primitive(&g))
    } else {
        None
    }
}

// Arithmetic modulo a small prime, polynomials lowest degree first.

fn fp_trim(mut a: Vec<u64>) -> Vec<u64> {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn fp_inv(a: u64, p: u64) -> u64 {
    let mut r = 1u64;
    let mut b = a % p;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

fn fp_rem(a: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    let mut r = fp_trim(a.to_vec());
    let dm = m.len() - 1;
    let inv = fp_inv(m[dm], p);
    while r.len() > dm {
        let k = r.len() - 1 - dm;
        let c = r[r.len() - 1] * inv % p;
        for (j, mj) in m.iter().enumerate() {
            r[k + j] = (r[k + j] + p - c * mj % p) % p;
        }
        r = fp_trim(r);
    }
    r
}

fn fp_mulmod(a: &[u64], b: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    fp_rem(&out, m, p)
}

fn fp_gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut x = fp_trim(a.to_vec());
    let mut y = fp_trim(b.to_vec());
    while !y.is_empty() {
        let r = fp_rem(&x, &y, p);
        x = y;
        y = r;
    }
    x
}

/// Ben-Or test: a monic `f` is irreducible mod `p` iff gcd(X^(p^i) - X, f) = 1 for i <= deg/2.
pub fn is_irreducible_mod_p(f: &IntPolynomial, p: u64) -> bool {
    let pb = BigInt::from(p);
    let m: Vec<u64> = f.coeffs().iter().map(|c| c.mod_floor(&pb).to_u64().unwrap()).collect();
    let m = fp_trim(m);
    let d = match m.len().checked_sub(1) {
        Some(d) if d == f.degree().unwrap_or(0) => d,
        _ => return false,
    };
    if d <= 1 {
        return d == 1;
    }
    let x = vec![0u64, 1];
    let mut h = x.clone();
    for _ in 0..d / 2 {
        // h <- h^p mod m
        let mut acc = vec![1u64];
        let mut base = h.clone();
        let mut e = p;
        while e > 0 {
            if e & 1 == 1 {
                acc = fp_mulmod(&acc, &base, &m, p);
            }
            base = fp_mulmod(&base, &base, &m, p);
            e >>= 1;
        }
        h = acc;
        let mut diff = h.clone();
        diff.resize(diff.len().max(2), 0);
        diff[1] = (diff[1] + p - 1) % p;
        let g = fp_gcd(&fp_trim(diff), &m, p);
        if g.len() > 1 {
            return false;
        }
    }
    true
}

pub fn small_primes(limit: u64) -> Vec<u64> {
    (2..=limit).filter(|&n| (2..n).take_while(|d| d * d <= n).all(|d| n % d != 0)).collect()
}
