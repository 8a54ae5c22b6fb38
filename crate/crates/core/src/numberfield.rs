//! Exact arithmetic in K = Q[X]/(p(X)) in the power basis, with rigorous embeddings.

use std::fmt;
use std::sync::{Arc, Mutex};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::interval::{ComplexInterval, Dyadic, RealInterval};
use crate::poly::{self, IntPolynomial, QPoly};
use crate::roots::isolate_roots;

pub type Rational = BigRational;

/// Hard precision cap for automatic refinement, in bits.
pub const DEFAULT_CAP: u32 = 4096;
/// Default starting precision, in bits.
pub const DEFAULT_PREC: u32 = 128;

const IRREDUCIBILITY_PRIME_LIMIT: u64 = 200;
const MAX_FACTOR_SEARCH_DEGREE: usize = 16;

#[derive(Debug, Clone)]
pub struct RootTable {
    pub prec: u32,
    pub roots: Vec<ComplexInterval>,
}

struct FieldData {
    minpoly: IntPolynomial,
    degree: usize,
    cap: u32,
    /// Level k holds enclosures at `BASE_ROOT_PREC << k` bits (the last level at the cap).
    roots: Mutex<Vec<Arc<RootTable>>>,
}

const BASE_ROOT_PREC: u32 = 64;

/// A number field given by a monic irreducible integer polynomial. Cheap to clone.
#[derive(Clone)]
pub struct NumberField {
    inner: Arc<FieldData>,
}

impl fmt::Debug for NumberField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "NumberField(Q[X]/({}))", self.inner.minpoly)
    }
}

impl PartialEq for NumberField {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner) || self.inner.minpoly == other.inner.minpoly
    }
}

impl Eq for NumberField {}

impl NumberField {
    pub fn new(minpoly: IntPolynomial) -> Result<Self> {
        NumberField::with_cap(minpoly, DEFAULT_CAP)
    }

    pub fn with_cap(minpoly: IntPolynomial, cap: u32) -> Result<Self> {
        let degree = match minpoly.degree() {
            Some(d) if d >= 1 => d,
            _ => return Err(Error::BadDegree(minpoly.to_string())),
        };
        if !minpoly.is_monic() {
            return Err(Error::NotMonic(minpoly.to_string()));
        }
        certify_irreducible(&minpoly, cap)?;
        let roots = isolate_roots(&minpoly, BASE_ROOT_PREC, cap)?;
        Ok(NumberField {
            inner: Arc::new(FieldData {
                minpoly,
                degree,
                cap,
                roots: Mutex::new(vec![Arc::new(RootTable { prec: BASE_ROOT_PREC, roots })]),
            }),
        })
    }

    pub fn from_i64(coeffs: &[i64]) -> Result<Self> {
        NumberField::new(IntPolynomial::from_i64(coeffs))
    }

    /// Q itself, presented as Q[X]/(X).
    pub fn rationals() -> Self {
        NumberField::from_i64(&[0, 1]).expect("X is irreducible")
    }

    pub fn minpoly(&self) -> &IntPolynomial {
        &self.inner.minpoly
    }

    pub fn degree(&self) -> usize {
        self.inner.degree
    }

    pub fn cap(&self) -> u32 {
        self.inner.cap
    }

    /// Index of the embedding realizing the usual absolute value: the largest real root
    /// if there is one, otherwise the first upper half-plane root.
    pub fn default_place(&self) -> usize {
        0
    }

    /// Root enclosures at `prec` bits or better. Tables come from a fixed precision
    /// ladder, each level intersected with the one below, so the enclosure returned for
    /// a given `prec` does not depend on earlier requests.
    pub fn roots(&self, prec: u32) -> Result<Arc<RootTable>> {
        let prec = prec.min(self.inner.cap);
        let mut ladder = self.inner.roots.lock().expect("root cache poisoned");
        loop {
            let top = ladder.last().expect("base level").clone();
            if let Some(t) = ladder.iter().find(|t| t.prec >= prec) {
                return Ok(t.clone());
            }
            let target = (top.prec * 2).min(self.inner.cap);
            let fresh = isolate_roots(&self.inner.minpoly, target, self.inner.cap)?;
            let mut merged = Vec::with_capacity(fresh.len());
            for old in &top.roots {
                let hits: Vec<&ComplexInterval> = fresh.iter().filter(|n| boxes_overlap(old, n)).collect();
                match hits.as_slice() {
                    [one] => merged.push(intersect_boxes(old, one)),
                    _ => return Err(Error::PrecisionCapExceeded { cap: self.inner.cap }),
                }
            }
            ladder.push(Arc::new(RootTable { prec: target, roots: merged }));
        }
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement { field: self.clone(), coords: vec![Rational::zero(); self.degree()] }
    }

    pub fn one(&self) -> FieldElement {
        self.from_rational(Rational::one())
    }

    pub fn from_rational(&self, q: Rational) -> FieldElement {
        let mut e = self.zero();
        e.coords[0] = q;
        e
    }

    pub fn from_int<T: Into<BigInt>>(&self, v: T) -> FieldElement {
        self.from_rational(Rational::from_integer(v.into()))
    }

    /// The class of X.
    pub fn generator(&self) -> FieldElement {
        if self.degree() == 1 {
            return self.from_int(-self.minpoly().coeffs()[0].clone());
        }
        let mut e = self.zero();
        e.coords[1] = Rational::one();
        e
    }

    pub fn element(&self, coords: Vec<Rational>) -> Result<FieldElement> {
        if coords.len() != self.degree() {
            return Err(Error::ArityMismatch { expected: self.degree(), found: coords.len() });
        }
        Ok(FieldElement { field: self.clone(), coords })
    }

    /// Convenience constructor from `(numerator, denominator)` pairs.
    pub fn element_from_pairs(&self, pairs: &[(i64, i64)]) -> Result<FieldElement> {
        if pairs.iter().any(|&(_, d)| d == 0) {
            return Err(Error::DivisionByZero);
        }
        self.element(pairs.iter().map(|&(n, d)| Rational::new(n.into(), d.into())).collect())
    }
}

fn boxes_overlap(a: &ComplexInterval, b: &ComplexInterval) -> bool {
    a.re.overlaps(&b.re) && a.im.overlaps(&b.im)
}

fn intersect_real(a: &RealInterval, b: &RealInterval) -> RealInterval {
    let lo = a.lo().clone().max(b.lo().clone());
    let hi = a.hi().clone().min(b.hi().clone());
    RealInterval::new(lo, hi, a.prec().max(b.prec()))
}

fn intersect_boxes(a: &ComplexInterval, b: &ComplexInterval) -> ComplexInterval {
    ComplexInterval::new(intersect_real(&a.re, &b.re), intersect_real(&a.im, &b.im))
}

/// Decide irreducibility of a monic integer polynomial, producing a factorization
/// witness when it is reducible.
pub fn certify_irreducible(f: &IntPolynomial, cap: u32) -> Result<()> {
    let d = f.degree().unwrap_or(0);
    if d <= 1 {
        return Ok(());
    }
    if poly::small_primes(IRREDUCIBILITY_PRIME_LIMIT).into_iter().any(|p| poly::is_irreducible_mod_p(f, p)) {
        return Ok(());
    }
    let reducible = |g: IntPolynomial| {
        let h = f.div_exact(&g).expect("witness divides");
        Error::NotIrreducible { poly: f.to_string(), detail: format!("{} = ({})({})", f, g, h) }
    };
    if let Some(g) = poly::repeated_factor(f) {
        return Err(reducible(g));
    }
    if d > MAX_FACTOR_SEARCH_DEGREE {
        return Err(Error::NotIrreducible {
            poly: f.to_string(),
            detail: format!("no certificate found; degree {} exceeds the factor-search limit", d),
        });
    }
    // Every monic factor over Z is a product of X - r over a subset of the roots.
    // With coefficient enclosures narrower than 1 each factor has one integer candidate.
    let mut prec = 64;
    'refine: loop {
        let roots = isolate_roots(f, prec, cap)?;
        for k in 1..=d / 2 {
            for subset in combinations(d, k) {
                let mut g = vec![ComplexInterval::one(prec)];
                for &i in &subset {
                    let mut next = vec![ComplexInterval::zero(prec); g.len() + 1];
                    for (j, c) in g.iter().enumerate() {
                        next[j + 1] = next[j + 1].add(c);
                        next[j] = next[j].sub(&c.mul(&roots[i]));
                    }
                    g = next;
                }
                let mut ints = Vec::with_capacity(g.len());
                for c in &g {
                    if c.re.width() >= Dyadic::one() || c.im.width() >= Dyadic::one() {
                        if prec >= cap {
                            return Err(Error::PrecisionCapExceeded { cap });
                        }
                        prec = (prec * 2).min(cap);
                        continue 'refine;
                    }
                    match unique_integer(&c.re) {
                        Some(n) if c.im.contains_zero() => ints.push(n),
                        _ => break,
                    }
                }
                if ints.len() == g.len() {
                    let cand = IntPolynomial::new(ints);
                    if f.div_exact(&cand).is_some() {
                        return Err(reducible(cand));
                    }
                }
            }
        }
        return Ok(());
    }
}

fn unique_integer(x: &RealInterval) -> Option<BigInt> {
    let lo = x.lo().to_rational().ceil().to_integer();
    let hi = x.hi().to_rational().floor().to_integer();
    if lo == hi {
        Some(lo)
    } else {
        None
    }
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// Element of a number field, as rational coordinates in the basis 1, θ, …, θ^(D-1).
#[derive(Clone)]
pub struct FieldElement {
    field: NumberField,
    coords: Vec<Rational>,
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field && self.coords == other.coords
    }
}

impl Eq for FieldElement {}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FieldElement({})", self)
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(q) = self.as_rational() {
            return write!(f, "{}", q);
        }
        let mut first = true;
        for (i, c) in self.coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            let mag = c.abs();
            match i {
                0 => write!(f, "{}", mag)?,
                _ => {
                    if !mag.is_one() {
                        write!(f, "{}*", mag)?;
                    }
                    if i == 1 {
                        write!(f, "t")?;
                    } else {
                        write!(f, "t^{}", i)?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl FieldElement {
    pub fn field(&self) -> &NumberField {
        &self.field
    }

    pub fn coords(&self) -> &[Rational] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.as_rational().is_some_and(|q| q.is_one())
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        if self.coords[1..].iter().all(|c| c.is_zero()) {
            Some(&self.coords[0])
        } else {
            None
        }
    }

    fn check(&self, o: &FieldElement) -> Result<()> {
        if self.field == o.field {
            Ok(())
        } else {
            Err(Error::FieldMismatch)
        }
    }

    fn with_coords(&self, coords: Vec<Rational>) -> FieldElement {
        FieldElement { field: self.field.clone(), coords }
    }

    pub fn add(&self, o: &FieldElement) -> Result<FieldElement> {
        self.check(o)?;
        Ok(self.with_coords(self.coords.iter().zip(&o.coords).map(|(a, b)| a + b).collect()))
    }

    pub fn sub(&self, o: &FieldElement) -> Result<FieldElement> {
        self.check(o)?;
        Ok(self.with_coords(self.coords.iter().zip(&o.coords).map(|(a, b)| a - b).collect()))
    }

    pub fn neg(&self) -> FieldElement {
        self.with_coords(self.coords.iter().map(|a| -a).collect())
    }

    pub fn scale(&self, q: &Rational) -> FieldElement {
        self.with_coords(self.coords.iter().map(|a| a * q).collect())
    }

    pub fn mul(&self, o: &FieldElement) -> Result<FieldElement> {
        self.check(o)?;
        if let Some(q) = self.as_rational() {
            return Ok(o.scale(q));
        }
        if let Some(q) = o.as_rational() {
            return Ok(self.scale(q));
        }
        let d = self.coords.len();
        let mut prod = vec![Rational::zero(); 2 * d - 1];
        for (i, a) in self.coords.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coords.iter().enumerate() {
                prod[i + j] += a * b;
            }
        }
        Ok(self.with_coords(reduce(prod, self.field.minpoly())))
    }

    pub fn inv(&self) -> Result<FieldElement> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if let Some(q) = self.as_rational() {
            return Ok(self.field.from_rational(q.recip()));
        }
        let mut rhs = vec![Rational::zero(); self.coords.len()];
        rhs[0] = Rational::one();
        let sol = solve_consistent(&self.mul_matrix(), &rhs).ok_or(Error::DivisionByZero)?;
        Ok(self.with_coords(sol))
    }

    pub fn div(&self, o: &FieldElement) -> Result<FieldElement> {
        self.check(o)?;
        self.mul(&o.inv()?)
    }

    pub fn pow(&self, mut e: u64) -> FieldElement {
        let mut acc = self.field.one();
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).expect("same field");
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base).expect("same field");
            }
        }
        acc
    }

    /// Matrix of multiplication by `self`; column j holds the coordinates of `self·θ^j`.
    pub fn mul_matrix(&self) -> Vec<Vec<Rational>> {
        let d = self.coords.len();
        let mut cols = Vec::with_capacity(d);
        let mut cur = self.coords.clone();
        for _ in 0..d {
            cols.push(cur.clone());
            // multiply by θ
            let mut shifted = vec![Rational::zero(); d + 1];
            for (i, c) in cur.iter().enumerate() {
                shifted[i + 1] = c.clone();
            }
            cur = reduce(shifted, self.field.minpoly());
        }
        (0..d).map(|r| (0..d).map(|c| cols[c][r].clone()).collect()).collect()
    }

    pub fn trace(&self) -> Rational {
        let m = self.mul_matrix();
        (0..m.len()).map(|i| m[i][i].clone()).fold(Rational::zero(), |a, b| a + b)
    }

    /// Determinant of the multiplication matrix.
    pub fn norm(&self) -> Rational {
        if let Some(q) = self.as_rational() {
            return num_traits::pow(q.clone(), self.coords.len());
        }
        determinant(self.mul_matrix())
    }

    /// Monic characteristic polynomial of the multiplication matrix (Faddeev–LeVerrier).
    pub fn characteristic_polynomial(&self) -> QPoly {
        let a = self.mul_matrix();
        let n = a.len();
        let mut c = vec![Rational::zero(); n + 1];
        c[n] = Rational::one();
        let mut m = vec![vec![Rational::zero(); n]; n];
        for k in 1..=n {
            // M_k = A·M_{k-1} + c_{n-k+1} I
            let mut next = mat_mul(&a, &m);
            for (i, row) in next.iter_mut().enumerate() {
                row[i] += &c[n - k + 1];
            }
            m = next;
            let am = mat_mul(&a, &m);
            let tr = (0..n).map(|i| am[i][i].clone()).fold(Rational::zero(), |x, y| x + y);
            c[n - k] = -tr / Rational::from_integer(BigInt::from(k));
        }
        c
    }

    /// Primitive integer minimal polynomial with positive leading coefficient.
    pub fn minimal_polynomial(&self) -> IntPolynomial {
        let d = self.coords.len();
        let mut powers = vec![self.field.one().coords, self.coords.clone()];
        for deg in 1..=d {
            let a: Vec<Vec<Rational>> =
                (0..d).map(|r| (0..deg).map(|c| powers[c][r].clone()).collect()).collect();
            if let Some(sol) = solve_consistent(&a, &powers[deg]) {
                let mut q: QPoly = sol.into_iter().map(|x| -x).collect();
                q.push(Rational::one());
                return poly::q_to_primitive(&q);
            }
            let next = self.with_coords(powers[deg].clone()).mul(self).expect("same field");
            powers.push(next.coords);
        }
        unreachable!("the minimal polynomial has degree at most D")
    }

    pub fn is_algebraic_integer(&self) -> bool {
        self.minimal_polynomial().is_monic()
    }

    /// Exact test for x^k = 1, trying every k up to 2D² + 2.
    pub fn is_root_of_unity(&self) -> bool {
        if self.is_zero() || !self.is_algebraic_integer() {
            return false;
        }
        let d = self.field.degree() as u64;
        let mut p = self.clone();
        for _ in 0..2 * d * d + 2 {
            if p.is_one() {
                return true;
            }
            p = p.mul(self).expect("same field");
        }
        false
    }

    /// Least positive integer `c` with `c·self` an algebraic integer.
    ///
    /// With primitive minimal polynomial Σ aᵢXⁱ of degree d, `c·x` has minimal polynomial
    /// Σ aᵢ c^(d-i) Xⁱ up to content, which is monic exactly when a_d divides every
    /// aᵢ c^(d-i). The condition splits over the primes of a_d.
    pub fn denominator(&self) -> BigInt {
        let m = self.minimal_polynomial();
        let a = m.coeffs();
        let d = a.len() - 1;
        let lead = a[d].clone();
        let mut c = BigInt::one();
        for (p, e_lead) in factor(&lead) {
            let mut need = 0u64;
            for (i, ai) in a.iter().enumerate().take(d) {
                let vi = if ai.is_zero() { u64::MAX } else { valuation(ai, &p) };
                if vi < e_lead {
                    let gap = e_lead - vi;
                    let k = (d - i) as u64;
                    need = need.max(gap.div_ceil(k));
                }
            }
            c *= num_traits::pow(p, need as usize);
        }
        c
    }

    fn coord_bits(&self) -> u32 {
        self.coords.iter().map(|c| c.numer().bits()).max().unwrap_or(0) as u32
    }

    /// σ_place(self) at working precision `prec`, without refinement.
    pub fn embed(&self, place: usize, prec: u32) -> Result<ComplexInterval> {
        let table = self.field.roots(prec)?;
        let root = table
            .roots
            .get(place)
            .ok_or(Error::IndexOutOfRange { index: place, len: table.roots.len() })?
            .with_prec(prec);
        Ok(self.eval_at(&root, prec))
    }

    fn eval_at(&self, root: &ComplexInterval, prec: u32) -> ComplexInterval {
        let mut acc = ComplexInterval::zero(prec);
        for c in self.coords.iter().rev() {
            acc = acc.mul(root).add(&ComplexInterval::from_real(RealInterval::from_rational(c, prec)));
        }
        acc
    }

    pub fn embeddings(&self, prec: u32) -> Result<Vec<ComplexInterval>> {
        let table = self.field.roots(prec)?;
        Ok(table.roots.iter().map(|r| self.eval_at(&r.with_prec(prec), prec)).collect())
    }

    /// |σ_place(self)| refined to relative width at most `2^-rel_bits`.
    pub fn abs_at(&self, place: usize, rel_bits: u32) -> Result<RealInterval> {
        if place >= self.field.degree() {
            return Err(Error::IndexOutOfRange { index: place, len: self.field.degree() });
        }
        if let Some(q) = self.as_rational() {
            return Ok(RealInterval::from_rational(&q.abs(), rel_bits + 8));
        }
        let start = rel_bits + 16 + self.coord_bits();
        refine(start, self.field.cap(), |w| {
            let v = self.embed(place, w)?.abs();
            Ok(v.rel_width_within(rel_bits).then_some(v))
        })
    }

    /// House: max over embeddings of |σ(self)|, refined to relative width `2^-rel_bits`.
    pub fn house(&self, rel_bits: u32) -> Result<RealInterval> {
        if let Some(q) = self.as_rational() {
            return Ok(RealInterval::from_rational(&q.abs(), rel_bits + 8));
        }
        let start = rel_bits + 16 + self.coord_bits();
        refine(start, self.field.cap(), |w| {
            let mut best: Option<RealInterval> = None;
            for e in self.embeddings(w)? {
                let a = e.abs();
                best = Some(match best {
                    None => a,
                    Some(b) => b.max(&a),
                });
            }
            let v = best.unwrap();
            Ok(v.rel_width_within(rel_bits).then_some(v))
        })
    }
}

/// Run `f` at doubling working precision until it yields a value or the cap is passed.
pub(crate) fn refine<T>(start: u32, cap: u32, mut f: impl FnMut(u32) -> Result<Option<T>>) -> Result<T> {
    let mut w = start.min(cap);
    loop {
        if let Some(v) = f(w)? {
            return Ok(v);
        }
        if w >= cap {
            return Err(Error::PrecisionCapExceeded { cap });
        }
        w = (w * 2).min(cap);
    }
}

fn reduce(mut v: Vec<Rational>, m: &IntPolynomial) -> Vec<Rational> {
    let d = m.degree().unwrap();
    let mc: Vec<Rational> = m.coeffs().iter().map(|c| Rational::from_integer(c.clone())).collect();
    while v.len() > d {
        let top = v.pop().unwrap();
        if top.is_zero() {
            continue;
        }
        let k = v.len() - d;
        for j in 0..d {
            v[k + j] -= &top * &mc[j];
        }
    }
    v.resize(d, Rational::zero());
    v
}

fn mat_mul(a: &[Vec<Rational>], b: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    let n = a.len();
    let mut out = vec![vec![Rational::zero(); n]; n];
    for i in 0..n {
        for k in 0..n {
            if a[i][k].is_zero() {
                continue;
            }
            for j in 0..n {
                out[i][j] += &a[i][k] * &b[k][j];
            }
        }
    }
    out
}

fn determinant(mut m: Vec<Vec<Rational>>) -> Rational {
    let n = m.len();
    let mut det = Rational::one();
    for col in 0..n {
        let Some(piv) = (col..n).find(|&r| !m[r][col].is_zero()) else {
            return Rational::zero();
        };
        if piv != col {
            m.swap(piv, col);
            det = -det;
        }
        let p = m[col][col].clone();
        det *= &p;
        for r in (col + 1)..n {
            if m[r][col].is_zero() {
                continue;
            }
            let f = &m[r][col] / &p;
            for c in col..n {
                let t = &f * &m[col][c];
                m[r][c] -= t;
            }
        }
    }
    det
}

/// Solve `a·x = b` for an `r × c` system with independent columns; `None` if inconsistent.
fn solve_consistent(a: &[Vec<Rational>], b: &[Rational]) -> Option<Vec<Rational>> {
    let rows = a.len();
    let cols = a.first().map_or(0, |r| r.len());
    let mut m: Vec<Vec<Rational>> =
        a.iter().zip(b).map(|(row, v)| row.iter().cloned().chain(std::iter::once(v.clone())).collect()).collect();
    let mut pivot_row = 0;
    let mut pivots = Vec::with_capacity(cols);
    for col in 0..cols {
        let piv = (pivot_row..rows).find(|&r| !m[r][col].is_zero())?;
        m.swap(piv, pivot_row);
        let p = m[pivot_row][col].clone();
        for c in col..=cols {
            m[pivot_row][c] = &m[pivot_row][c] / &p;
        }
        for r in 0..rows {
            if r == pivot_row || m[r][col].is_zero() {
                continue;
            }
            let f = m[r][col].clone();
            for c in col..=cols {
                let t = &f * &m[pivot_row][c];
                m[r][c] -= t;
            }
        }
        pivots.push(pivot_row);
        pivot_row += 1;
    }
    if (pivot_row..rows).any(|r| !m[r][cols].is_zero()) {
        return None;
    }
    Some(pivots.iter().map(|&r| m[r][cols].clone()).collect())
}

fn valuation(n: &BigInt, p: &BigInt) -> u64 {
    let mut v = 0;
    let mut x = n.abs();
    while (&x % p).is_zero() {
        x /= p;
        v += 1;
    }
    v
}

/// Trial-division factorization of |n|.
fn factor(n: &BigInt) -> Vec<(BigInt, u64)> {
    let mut x = n.abs();
    let mut out = Vec::new();
    let mut p = BigInt::from(2);
    while &p * &p <= x {
        if (&x % &p).is_zero() {
            let mut e = 0;
            while (&x % &p).is_zero() {
                x /= &p;
                e += 1;
            }
            out.push((p.clone(), e));
        }
        p += if p == BigInt::from(2) { 1 } else { 2 };
    }
    if x > BigInt::one() {
        out.push((x, 1));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    fn q5() -> NumberField {
        NumberField::from_i64(&[-5, 0, 1]).unwrap()
    }

    fn phi(k: &NumberField) -> FieldElement {
        k.element(vec![q(1, 2), q(1, 2)]).unwrap()
    }

    #[test]
    fn construction() {
        assert_eq!(q5().degree(), 2);
        assert_eq!(NumberField::from_i64(&[-2, 0, 0, 1]).unwrap().degree(), 3);
        match NumberField::from_i64(&[-4, 0, 1]) {
            Err(Error::NotIrreducible { detail, .. }) => assert_eq!(detail, "X^2 - 4 = (X - 2)(X + 2)"),
            other => panic!("unexpected {:?}", other),
        }
        assert!(matches!(NumberField::from_i64(&[-5, 0, 2]), Err(Error::NotMonic(_))));
        assert!(matches!(NumberField::from_i64(&[3]), Err(Error::BadDegree(_))));
        // Reducible modulo every prime, irreducible over Q.
        assert_eq!(NumberField::from_i64(&[1, 0, 0, 0, 1]).unwrap().degree(), 4);
        // (X^2 + 1)(X^2 - 2) has no linear factor.
        match NumberField::from_i64(&[-2, 0, -1, 0, 1]) {
            Err(Error::NotIrreducible { detail, .. }) => assert!(detail.contains("X^2")),
            other => panic!("unexpected {:?}", other),
        }
        // Repeated factor.
        assert!(matches!(NumberField::from_i64(&[1, 2, 1]), Err(Error::NotIrreducible { .. })));
    }

    #[test]
    fn golden_ratio_arithmetic() {
        let k = q5();
        let p = phi(&k);
        assert_eq!(p.mul(&p).unwrap().coords(), &[q(3, 2), q(1, 2)]);
        assert!(p.pow(0).is_one());
        let t = k.generator();
        assert_eq!(t.inv().unwrap().coords(), &[q(0, 1), q(1, 5)]);
        assert_eq!(k.zero().inv(), Err(Error::DivisionByZero));
        let other = NumberField::from_i64(&[-2, 0, 0, 1]).unwrap();
        assert_eq!(p.add(&other.one()), Err(Error::FieldMismatch));
    }

    #[test]
    fn minimal_polynomials() {
        let k = q5();
        assert_eq!(phi(&k).minimal_polynomial(), IntPolynomial::from_i64(&[-1, -1, 1]));
        assert_eq!(k.from_rational(q(3, 2)).minimal_polynomial(), IntPolynomial::from_i64(&[-3, 2]));
        assert_eq!(k.generator().minimal_polynomial(), IntPolynomial::from_i64(&[-5, 0, 1]));
        assert_eq!(k.generator().scale(&q(1, 2)).minimal_polynomial(), IntPolynomial::from_i64(&[-5, 0, 4]));
        let c = NumberField::from_i64(&[-2, 0, 0, 1]).unwrap();
        let t2 = c.generator().pow(2);
        assert_eq!(t2.minimal_polynomial(), IntPolynomial::from_i64(&[-4, 0, 0, 1]));
    }

    #[test]
    fn integrality_and_denominators() {
        let k = q5();
        assert!(phi(&k).is_algebraic_integer());
        assert!(!k.from_rational(q(1, 2)).is_algebraic_integer());
        assert!(!k.generator().scale(&q(1, 2)).is_algebraic_integer());
        assert_eq!(phi(&k).denominator(), BigInt::from(1));
        assert_eq!(k.from_rational(q(3, 2)).denominator(), BigInt::from(2));
        assert_eq!(k.element(vec![q(0, 1), q(1, 5)]).unwrap().denominator(), BigInt::from(5));
        assert_eq!(k.from_rational(q(5, 12)).denominator(), BigInt::from(12));
        // θ/4 in Q(∛2): (θ/4)^3 = 1/32, so the denominator is 4.
        let c = NumberField::from_i64(&[-2, 0, 0, 1]).unwrap();
        assert_eq!(c.generator().scale(&q(1, 4)).denominator(), BigInt::from(4));
    }

    /// Oracle: least d in 1..=bound with d·x integral, by direct search.
    fn brute_denominator(x: &FieldElement, bound: i64) -> i64 {
        (1..=bound).find(|&d| x.scale(&q(d, 1)).is_algebraic_integer()).unwrap()
    }

    #[test]
    fn denominator_matches_search() {
        let c = NumberField::from_i64(&[-2, 0, 0, 1]).unwrap();
        for (a, b, cc, den) in [(1, 1, 1, 2), (1, 3, 0, 6), (0, 1, 1, 4), (3, 0, 5, 10), (1, 1, 1, 9)] {
            let x = c.element(vec![q(a, den), q(b, den), q(cc, den)]).unwrap();
            assert_eq!(x.denominator(), BigInt::from(brute_denominator(&x, 200)));
        }
    }

    #[test]
    fn norms() {
        let k = q5();
        assert_eq!(k.from_int(2).norm(), q(4, 1));
        assert_eq!(k.generator().norm(), q(-5, 1));
        assert_eq!(phi(&k).norm(), q(-1, 1));
        assert_eq!(phi(&k).trace(), q(1, 1));
        assert_eq!(phi(&k).characteristic_polynomial(), vec![q(-1, 1), q(-1, 1), q(1, 1)]);
    }

    #[test]
    fn houses() {
        let k = q5();
        let h = k.from_int(7).house(64).unwrap();
        assert!(h.is_point() && h.contains(&Dyadic::from_int(7)));
        let hp = phi(&k).house(64).unwrap();
        assert!(hp.is_subset_of(&RealInterval::new(
            Dyadic::from_rational(&q(161803398, 100000000), 64, crate::interval::Round::Floor),
            Dyadic::from_rational(&q(161803399, 100000000), 64, crate::interval::Round::Ceil),
            64
        )));
        let hs = k.generator().house(64).unwrap();
        assert!((hs.to_f64_mid() - 5f64.sqrt()).abs() < 1e-15);
        assert!(hs.rel_width_within(64));
    }

    #[test]
    fn default_embedding_is_positive_root() {
        let k = q5();
        let v = k.generator().embed(k.default_place(), 64).unwrap();
        assert!(v.re.lo().is_positive());
        let refined = k.roots(512).unwrap();
        assert_eq!(refined.prec, 512);
        assert!(refined.roots[0].re.rel_width_within(500));
    }
}
