//! Certified isolation of the complex roots of a square-free integer polynomial.
//!
//! Approximations come from Aberth iteration run on dyadic points with a
//! doubling precision ladder. They are then certified with the column
//! Gerschgorin theorem applied to the Weierstrass matrix
//! `diag(z) - 1·wᵀ`, whose characteristic polynomial is `p / lead(p)`:
//! the disks centred at `z_j - w_j` with radius `(d - 1)|w_j|` cover all
//! roots, and each one disjoint from the others holds exactly one root.
//! A disk disjoint from the conjugates of all other disks holds a real root.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::interval::{ComplexInterval, Dyadic, RealInterval, Round};
use crate::poly::IntPolynomial;

const START_PREC: u32 = 64;
const MAX_ABERTH_ITERS: usize = 400;

fn point(re: Dyadic, im: Dyadic, prec: u32) -> ComplexInterval {
    ComplexInterval::new(RealInterval::point(re, prec), RealInterval::point(im, prec))
}

fn mid_re(z: &ComplexInterval) -> Dyadic {
    z.re.midpoint()
}

fn mid_im(z: &ComplexInterval) -> Dyadic {
    z.im.midpoint()
}

fn with_prec(z: &ComplexInterval, prec: u32) -> ComplexInterval {
    point(mid_re(z), mid_im(z), prec)
}

/// `|z|` bound from above, crude but cheap: `|re| + |im|`.
fn rough_mag(z: &ComplexInterval) -> Dyadic {
    mid_re(z).abs().add(&mid_im(z).abs())
}

fn initial_points(p: &IntPolynomial) -> Vec<ComplexInterval> {
    let d = p.degree().unwrap();
    let c = p.coeffs();
    // Geometric-mean radius |a0 / ad|^(1/d), as a power of two.
    let a0 = c.iter().find(|x| !x.is_zero()).unwrap();
    let lead = &c[d];
    let lr = (a0.bits() as f64 - lead.bits() as f64) / d as f64;
    let r = Dyadic::new(BigInt::one(), lr.round() as i64);
    (0..d)
        .map(|k| {
            let t = 2.0 * std::f64::consts::PI * k as f64 / d as f64 + 0.7;
            let re = Dyadic::from_f64(t.cos()).round(53, Round::Floor).mul(&r);
            let im = Dyadic::from_f64(t.sin()).round(53, Round::Floor).mul(&r);
            point(re, im, START_PREC)
        })
        .collect()
}

/// One Gauss-Seidel sweep of Aberth's method. Returns true when every correction is negligible.
fn aberth_sweep(p: &IntPolynomial, dp: &IntPolynomial, z: &mut [ComplexInterval], prec: u32) -> bool {
    let d = z.len();
    let mut converged = true;
    let tol = -(prec as i64) + 8;
    for i in 0..d {
        let pv = p.eval_complex(&z[i]);
        if pv.re.contains_zero() && pv.im.contains_zero() {
            continue;
        }
        let step = (|| {
            let n = pv.div(&dp.eval_complex(&z[i]))?;
            let mut s = ComplexInterval::zero(prec);
            for j in 0..d {
                if j != i {
                    s = s.add(&ComplexInterval::one(prec).div(&z[i].sub(&z[j]))?);
                }
            }
            let denom = ComplexInterval::one(prec).sub(&n.mul(&s));
            n.div(&denom)
        })();
        match step {
            Some(w) => {
                let next = z[i].sub(&w);
                z[i] = with_prec(&next, prec);
                let wm = rough_mag(&w);
                let zm = rough_mag(&z[i]).max(Dyadic::one());
                if wm > zm.mul_pow2(tol) {
                    converged = false;
                }
            }
            None => {
                // Perturb off a degenerate configuration.
                let bump = rough_mag(&z[i]).max(Dyadic::one()).mul_pow2(-20 - i as i64);
                z[i] = point(mid_re(&z[i]).add(&bump), mid_im(&z[i]).add(&bump), prec);
                converged = false;
            }
        }
    }
    converged
}

/// Snap near-real approximations onto the real axis and mirror the lower half-plane
/// approximations from the upper ones.
fn symmetrize(z: &mut Vec<ComplexInterval>, prec: u32) {
    let thresh = -(prec as i64) / 2;
    let mut real = Vec::new();
    let mut upper = Vec::new();
    let mut lower = 0usize;
    for w in z.iter() {
        let re = mid_re(w);
        let im = mid_im(w);
        let scale = re.abs().max(Dyadic::one());
        if im.abs() <= scale.mul_pow2(thresh) {
            real.push(point(re, Dyadic::zero(), prec));
        } else if im.is_positive() {
            upper.push(point(re, im, prec));
        } else {
            lower += 1;
        }
    }
    if lower != upper.len() {
        return;
    }
    let mut out = real;
    for u in upper {
        out.push(u.conj());
        out.push(u);
    }
    *z = out;
}

fn boxes_disjoint(a: &ComplexInterval, b: &ComplexInterval) -> bool {
    a.re.hi() < b.re.lo() || b.re.hi() < a.re.lo() || a.im.hi() < b.im.lo() || b.im.hi() < a.im.lo()
}

/// Attempt certification; on success returns one enclosure per approximation.
fn certify(p: &IntPolynomial, z: &[ComplexInterval], prec: u32) -> Option<Vec<ComplexInterval>> {
    let d = z.len();
    let lead = ComplexInterval::from_real(RealInterval::from_int(p.lead().unwrap().clone(), prec));
    let mut boxes = Vec::with_capacity(d);
    for j in 0..d {
        let mut prod = lead.clone();
        for i in 0..d {
            if i != j {
                prod = prod.mul(&z[j].sub(&z[i]));
            }
        }
        let w = p.eval_complex(&z[j]).div(&prod)?;
        let rho = w.abs().mul(&RealInterval::from_int((d - 1) as u64, prec));
        boxes.push(z[j].sub(&w).inflate(rho.hi()));
    }
    // Mirror the partner of each upper half-plane root so pairs are exact conjugates.
    for j in 0..d.saturating_sub(1) {
        if !z[j].is_real() && z[j] == z[j + 1].conj() {
            boxes[j] = boxes[j + 1].conj();
        }
    }
    for i in 0..d {
        for j in (i + 1)..d {
            if !boxes_disjoint(&boxes[i], &boxes[j]) {
                return None;
            }
        }
    }
    let mut out = Vec::with_capacity(d);
    for j in 0..d {
        if z[j].is_real() {
            let mirror = boxes[j].conj();
            if (0..d).any(|i| i != j && !boxes_disjoint(&mirror, &boxes[i])) {
                return None;
            }
            out.push(ComplexInterval::from_real(boxes[j].re.clone()));
        } else {
            out.push(boxes[j].clone());
        }
    }
    Some(out)
}

fn narrow_enough(b: &ComplexInterval, prec: u32) -> bool {
    let scale = rough_mag(b).max(Dyadic::one()).mul_pow2(-(prec as i64));
    b.re.width() <= scale && b.im.width() <= scale
}

fn order(a: &ComplexInterval, b: &ComplexInterval) -> Ordering {
    // Real roots first (descending), then upper half-plane roots each followed by
    // their conjugate, by descending real part.
    match (a.is_real(), b.is_real()) {
        (true, false) => Ordering::Less,
        (false, true) => Ordering::Greater,
        (true, true) => mid_re(b).cmp(&mid_re(a)),
        (false, false) => {
            let key = |z: &ComplexInterval| (mid_re(z), mid_im(z).abs(), mid_im(z).is_negative());
            let (ra, ia, na) = key(a);
            let (rb, ib, nb) = key(b);
            rb.cmp(&ra).then(ib.cmp(&ia)).then(na.cmp(&nb))
        }
    }
}

/// Certified enclosures of all complex roots of a square-free `p`, each no wider than
/// `2^-prec · max(1, |root|)`, in a deterministic order.
pub fn isolate_roots(p: &IntPolynomial, prec: u32, cap: u32) -> Result<Vec<ComplexInterval>> {
    let d = p.degree().filter(|&d| d >= 1).ok_or(Error::ZeroPolynomial)?;
    if d == 1 {
        let c = p.coeffs();
        let r = BigRational::new(-c[0].clone(), c[1].clone());
        return Ok(vec![ComplexInterval::from_real(RealInterval::from_rational(&r, prec.max(2)))]);
    }
    if p.coeffs()[0].is_zero() {
        // X divides p exactly once; peel the zero root off.
        let rest = IntPolynomial::new(p.coeffs()[1..].to_vec());
        let mut roots = if rest.degree() == Some(0) { vec![] } else { isolate_roots(&rest, prec, cap)? };
        roots.push(ComplexInterval::zero(prec));
        roots.sort_by(order);
        return Ok(roots);
    }
    let dp = p.derivative();
    let mut z = initial_points(p);
    let mut work = START_PREC;
    for _ in 0..MAX_ABERTH_ITERS {
        if aberth_sweep(p, &dp, &mut z, work) {
            break;
        }
    }
    let cap = cap.max(START_PREC);
    let mut target = (prec + 16 + p.max_coeff_bits() as u32).min(cap);
    loop {
        while work < target {
            work = (work * 2).min(cap);
            z = z.iter().map(|w| with_prec(w, work)).collect();
            for _ in 0..12 {
                if aberth_sweep(p, &dp, &mut z, work) {
                    break;
                }
            }
        }
        let mut sym = z.clone();
        symmetrize(&mut sym, work);
        if let Some(mut enclosures) = certify(p, &sym, work) {
            if enclosures.iter().all(|b| narrow_enough(b, prec)) {
                enclosures.sort_by(order);
                return Ok(enclosures);
            }
        }
        if work >= cap {
            return Err(Error::PrecisionCapExceeded { cap });
        }
        target = (work * 2).min(cap);
    }
}

/// Approximate roots as f64 pairs, for diagnostics.
pub fn approx_f64(roots: &[ComplexInterval]) -> Vec<(f64, f64)> {
    roots.iter().map(|r| (r.re.to_f64_mid(), r.im.to_f64_mid())).collect()
}
