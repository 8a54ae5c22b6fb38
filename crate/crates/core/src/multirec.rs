//! Multivariate polynomials over K, polynomial-exponential terms and multi-recurrences.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::numberfield::{FieldElement, NumberField, Rational};

/// Default limit on the number of terms for subset enumeration (2^(k-1) subsets).
pub const DEFAULT_SUBSET_CAP: usize = 16;

/// A point of N₀^s.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LatticePoint(Vec<u64>);

impl LatticePoint {
    pub fn new(coords: Vec<u64>) -> Self {
        LatticePoint(coords)
    }

    pub fn coords(&self) -> &[u64] {
        &self.0
    }

    pub fn arity(&self) -> usize {
        self.0.len()
    }

    /// |n| = n₁ + … + n_s
    pub fn norm(&self) -> u64 {
        self.0.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }
}

impl fmt::Display for LatticePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ";")?;
            }
            write!(f, "{}", c)?;
        }
        write!(f, ")")
    }
}

/// All points of N₀^s with |n| = N, in colexicographic order.
pub fn shell(arity: usize, norm: u64) -> Vec<LatticePoint> {
    fn rec(arity: usize, norm: u64) -> Vec<Vec<u64>> {
        if arity == 1 {
            return vec![vec![norm]];
        }
        let mut out = Vec::new();
        for last in 0..=norm {
            for mut head in rec(arity - 1, norm - last) {
                head.push(last);
                out.push(head);
            }
        }
        out
    }
    if arity == 0 {
        return if norm == 0 { vec![LatticePoint(vec![])] } else { vec![] };
    }
    rec(arity, norm).into_iter().map(LatticePoint).collect()
}

/// Number of points on a shell: C(N + s - 1, s - 1).
pub fn shell_size(arity: usize, norm: u64) -> u64 {
    if arity == 0 {
        return u64::from(norm == 0);
    }
    let k = (arity - 1) as u64;
    (1..=k).fold(1u64, |acc, i| acc * (norm + i) / i)
}

/// Pseudo-random non-zero points with 1 <= |n| <= max_norm, reproducible from `seed`.
pub fn sample_points(arity: usize, count: usize, max_norm: u64, seed: u64) -> Vec<LatticePoint> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let n = rng.gen_range(1..=max_norm);
            // Stars and bars: s - 1 sorted cut points in [0, n].
            let mut cuts: Vec<u64> = (0..arity.saturating_sub(1)).map(|_| rng.gen_range(0..=n)).collect();
            cuts.sort_unstable();
            let mut coords = Vec::with_capacity(arity);
            let mut prev = 0;
            for c in cuts {
                coords.push(c - prev);
                prev = c;
            }
            coords.push(n - prev);
            LatticePoint(coords)
        })
        .collect()
}

/// Sparse polynomial in s variables with coefficients in K.
#[derive(Clone, Debug, PartialEq)]
pub struct MultiPoly {
    field: NumberField,
    arity: usize,
    terms: BTreeMap<Vec<u32>, FieldElement>,
}

impl MultiPoly {
    pub fn zero(field: &NumberField, arity: usize) -> Self {
        MultiPoly { field: field.clone(), arity, terms: BTreeMap::new() }
    }

    pub fn constant(c: FieldElement, arity: usize) -> Self {
        let mut p = MultiPoly::zero(c.field(), arity);
        p.add_term(vec![0; arity], c).expect("arity matches");
        p
    }

    /// X_i (0-based variable index).
    pub fn variable(field: &NumberField, arity: usize, i: usize) -> Self {
        let mut e = vec![0; arity];
        e[i] = 1;
        let mut p = MultiPoly::zero(field, arity);
        p.add_term(e, field.one()).expect("arity matches");
        p
    }

    pub fn from_terms(
        field: &NumberField,
        arity: usize,
        terms: impl IntoIterator<Item = (Vec<u32>, FieldElement)>,
    ) -> Result<Self> {
        let mut p = MultiPoly::zero(field, arity);
        for (e, c) in terms {
            p.add_term(e, c)?;
        }
        Ok(p)
    }

    pub fn add_term(&mut self, exps: Vec<u32>, coeff: FieldElement) -> Result<()> {
        if exps.len() != self.arity {
            return Err(Error::ArityMismatch { expected: self.arity, found: exps.len() });
        }
        if coeff.field() != &self.field {
            return Err(Error::FieldMismatch);
        }
        let sum = match self.terms.remove(&exps) {
            Some(old) => old.add(&coeff)?,
            None => coeff,
        };
        if !sum.is_zero() {
            self.terms.insert(exps, sum);
        }
        Ok(())
    }

    pub fn add(&self, o: &MultiPoly) -> Result<MultiPoly> {
        if o.arity != self.arity {
            return Err(Error::ArityMismatch { expected: self.arity, found: o.arity });
        }
        let mut out = self.clone();
        for (e, c) in &o.terms {
            out.add_term(e.clone(), c.clone())?;
        }
        Ok(out)
    }

    pub fn scale(&self, q: &Rational) -> MultiPoly {
        let mut out = MultiPoly::zero(&self.field, self.arity);
        for (e, c) in &self.terms {
            let v = c.scale(q);
            if !v.is_zero() {
                out.terms.insert(e.clone(), v);
            }
        }
        out
    }

    pub fn field(&self) -> &NumberField {
        &self.field
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &FieldElement)> {
        self.terms.iter()
    }

    pub fn coefficients(&self) -> impl Iterator<Item = &FieldElement> {
        self.terms.values()
    }

    /// Maximum total degree over the stored monomials; 0 for the zero polynomial.
    pub fn absolute_degree(&self) -> u32 {
        self.terms.keys().map(|e| e.iter().sum::<u32>()).max().unwrap_or(0)
    }

    pub fn eval(&self, n: &LatticePoint) -> Result<FieldElement> {
        if n.arity() != self.arity {
            return Err(Error::ArityMismatch { expected: self.arity, found: n.arity() });
        }
        let mut acc = self.field.zero();
        for (e, c) in &self.terms {
            let mono = e
                .iter()
                .zip(n.coords())
                .fold(BigInt::from(1), |a, (&k, &x)| a * num_traits::pow(BigInt::from(x), k as usize));
            acc = acc.add(&c.scale(&Rational::from_integer(mono)))?;
        }
        Ok(acc)
    }
}

/// One summand f(n)·α₁^n₁⋯α_s^n_s.
#[derive(Clone, Debug, PartialEq)]
pub struct Term {
    poly: MultiPoly,
    bases: Vec<FieldElement>,
}

impl Term {
    /// Bases must be non-zero algebraic integers of the polynomial's field.
    pub fn new(poly: MultiPoly, bases: Vec<FieldElement>) -> Result<Self> {
        if bases.len() != poly.arity() {
            return Err(Error::ArityMismatch { expected: poly.arity(), found: bases.len() });
        }
        for b in &bases {
            if b.field() != poly.field() {
                return Err(Error::FieldMismatch);
            }
            if b.is_zero() {
                return Err(Error::ZeroElement);
            }
            let m = b.minimal_polynomial();
            if !m.is_monic() {
                return Err(Error::NotAlgebraicInteger { base: b.to_string(), minpoly: m.to_string() });
            }
        }
        Ok(Term { poly, bases })
    }

    pub fn poly(&self) -> &MultiPoly {
        &self.poly
    }

    pub fn bases(&self) -> &[FieldElement] {
        &self.bases
    }

    fn base_key(&self) -> Vec<Vec<Rational>> {
        self.bases.iter().map(|b| b.coords().to_vec()).collect()
    }

    /// α^n = Π_j α_j^(n_j)
    pub fn exponential(&self, n: &LatticePoint) -> Result<FieldElement> {
        if n.arity() != self.bases.len() {
            return Err(Error::ArityMismatch { expected: self.bases.len(), found: n.arity() });
        }
        let mut acc = self.poly.field().one();
        for (b, &k) in self.bases.iter().zip(n.coords()) {
            if k > 0 {
                acc = acc.mul(&b.pow(k))?;
            }
        }
        Ok(acc)
    }

    pub fn eval(&self, n: &LatticePoint) -> Result<FieldElement> {
        let f = self.poly.eval(n)?;
        if f.is_zero() {
            return Ok(f);
        }
        f.mul(&self.exponential(n)?)
    }
}

/// G(n) = Σᵢ fᵢ(n)·αᵢ^n in canonical form: pairwise distinct base vectors, no zero
/// polynomials, terms ordered lexicographically by base coordinates.
#[derive(Clone, Debug, PartialEq)]
pub struct MultiRecurrence {
    field: NumberField,
    arity: usize,
    terms: Vec<Term>,
}

fn check_common(raw: &[Term]) -> Result<(NumberField, usize)> {
    let first = raw.first().ok_or(Error::EmptyRecurrence)?;
    let field = first.poly.field().clone();
    let arity = first.poly.arity();
    for t in raw {
        if t.poly.field() != &field {
            return Err(Error::FieldMismatch);
        }
        if t.poly.arity() != arity {
            return Err(Error::ArityMismatch { expected: arity, found: t.poly.arity() });
        }
    }
    Ok((field, arity))
}

impl MultiRecurrence {
    /// Merge terms with equal base vectors and drop those whose polynomial cancels.
    pub fn canonicalize(raw: Vec<Term>) -> Result<Self> {
        let (field, arity) = check_common(&raw)?;
        let mut groups: BTreeMap<Vec<Vec<Rational>>, Term> = BTreeMap::new();
        for t in raw {
            match groups.get_mut(&t.base_key()) {
                Some(g) => g.poly = g.poly.add(&t.poly)?,
                None => {
                    groups.insert(t.base_key(), t);
                }
            }
        }
        let terms: Vec<Term> = groups.into_values().filter(|t| !t.poly.is_zero()).collect();
        if terms.is_empty() {
            return Err(Error::EmptyRecurrence);
        }
        Ok(MultiRecurrence { field, arity, terms })
    }

    pub fn field(&self) -> &NumberField {
        &self.field
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    /// Number of terms k.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    /// Term by 1-based index.
    pub fn term(&self, i: usize) -> Result<&Term> {
        if i == 0 || i > self.terms.len() {
            return Err(Error::IndexOutOfRange { index: i, len: self.terms.len() });
        }
        Ok(&self.terms[i - 1])
    }

    /// m: maximum absolute degree over all fᵢ.
    pub fn absolute_degree(&self) -> u32 {
        self.terms.iter().map(|t| t.poly.absolute_degree()).max().unwrap_or(0)
    }

    pub fn eval(&self, n: &LatticePoint) -> Result<FieldElement> {
        let mut acc = self.field.zero();
        for v in self.term_values(n)? {
            acc = acc.add(&v)?;
        }
        Ok(acc)
    }

    /// fᵢ(n)·αᵢ^n for 1-based `i`.
    pub fn term_eval(&self, i: usize, n: &LatticePoint) -> Result<FieldElement> {
        self.term(i)?.eval(n)
    }

    pub fn term_values(&self, n: &LatticePoint) -> Result<Vec<FieldElement>> {
        if n.arity() != self.arity {
            return Err(Error::ArityMismatch { expected: self.arity, found: n.arity() });
        }
        self.terms.iter().map(|t| t.eval(n)).collect()
    }

    /// Subsets I ∋ i0 (1-based) with Σ_{i∈I} fᵢ(n)αᵢ^n = 0 exactly.
    pub fn pointwise_vanishing_subsums(&self, n: &LatticePoint, i0: usize) -> Result<Vec<Vec<usize>>> {
        self.pointwise_vanishing_subsums_capped(n, i0, DEFAULT_SUBSET_CAP)
    }

    pub fn pointwise_vanishing_subsums_capped(
        &self,
        n: &LatticePoint,
        i0: usize,
        cap: usize,
    ) -> Result<Vec<Vec<usize>>> {
        self.term(i0)?;
        let values = self.term_values(n)?;
        vanishing_subsets_of_values(&values, i0, cap)
    }
}

/// Subsets containing `i0` (1-based) of `values` summing to zero, in mask order.
pub fn vanishing_subsets_of_values(values: &[FieldElement], i0: usize, cap: usize) -> Result<Vec<Vec<usize>>> {
    let k = values.len();
    if i0 == 0 || i0 > k {
        return Err(Error::IndexOutOfRange { index: i0, len: k });
    }
    if k > cap {
        return Err(Error::SubsetCapExceeded { k, cap });
    }
    let others: Vec<usize> = (1..=k).filter(|&i| i != i0).collect();
    let mut out = Vec::new();
    for mask in 0u64..(1u64 << others.len()) {
        let mut subset = vec![i0];
        let mut sum = values[i0 - 1].clone();
        for (bit, &i) in others.iter().enumerate() {
            if mask >> bit & 1 == 1 {
                subset.push(i);
                sum = sum.add(&values[i - 1])?;
            }
        }
        if sum.is_zero() {
            subset.sort_unstable();
            out.push(subset);
        }
    }
    Ok(out)
}

/// Subsets I ∋ i0 (1-based) of the raw terms whose merged polynomials, after grouping
/// equal base vectors, are all identically zero.
pub fn identically_vanishing_subsums(raw: &[Term], i0: usize, cap: usize) -> Result<Vec<Vec<usize>>> {
    let k = raw.len();
    if i0 == 0 || i0 > k {
        return Err(Error::IndexOutOfRange { index: i0, len: k });
    }
    if k > cap {
        return Err(Error::SubsetCapExceeded { k, cap });
    }
    check_common(raw)?;
    let others: Vec<usize> = (1..=k).filter(|&i| i != i0).collect();
    let mut out = Vec::new();
    for mask in 0u64..(1u64 << others.len()) {
        let mut subset = vec![i0];
        for (bit, &i) in others.iter().enumerate() {
            if mask >> bit & 1 == 1 {
                subset.push(i);
            }
        }
        let mut groups: BTreeMap<Vec<Vec<Rational>>, MultiPoly> = BTreeMap::new();
        for &i in &subset {
            let t = &raw[i - 1];
            let merged = match groups.remove(&t.base_key()) {
                Some(p) => p.add(&t.poly)?,
                None => t.poly.clone(),
            };
            groups.insert(t.base_key(), merged);
        }
        if groups.values().all(|p| p.is_zero()) {
            subset.sort_unstable();
            out.push(subset);
        }
    }
    Ok(out)
}

/// `{1,2}` rendering of a term subset.
pub fn format_subset(s: &[usize]) -> String {
    let inner: Vec<String> = s.iter().map(|i| i.to_string()).collect();
    format!("{{{}}}", inner.join(","))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    fn pt(c: &[u64]) -> LatticePoint {
        LatticePoint::new(c.to_vec())
    }

    fn const_term(k: &NumberField, c: i64, bases: &[i64]) -> Term {
        let s = bases.len();
        Term::new(MultiPoly::constant(k.from_int(c), s), bases.iter().map(|&b| k.from_int(b)).collect()).unwrap()
    }

    fn fibonacci() -> MultiRecurrence {
        let k = NumberField::from_i64(&[-5, 0, 1]).unwrap();
        let inv_sqrt5 = k.element(vec![q(0, 1), q(1, 5)]).unwrap();
        let phi = k.element(vec![q(1, 2), q(1, 2)]).unwrap();
        let psi = k.element(vec![q(1, 2), q(-1, 2)]).unwrap();
        MultiRecurrence::canonicalize(vec![
            Term::new(MultiPoly::constant(inv_sqrt5.clone(), 1), vec![phi]).unwrap(),
            Term::new(MultiPoly::constant(inv_sqrt5.neg(), 1), vec![psi]).unwrap(),
        ])
        .unwrap()
    }

    fn diagonal() -> MultiRecurrence {
        let k = NumberField::rationals();
        MultiRecurrence::canonicalize(vec![const_term(&k, 1, &[2, 3]), const_term(&k, -1, &[3, 2])]).unwrap()
    }

    #[test]
    fn shells_are_colex() {
        let s = shell(2, 2);
        assert_eq!(s, vec![pt(&[2, 0]), pt(&[1, 1]), pt(&[0, 2])]);
        let s3 = shell(3, 2);
        assert_eq!(s3.len() as u64, shell_size(3, 2));
        assert_eq!(s3[0], pt(&[2, 0, 0]));
        assert_eq!(s3[1], pt(&[1, 1, 0]));
        assert_eq!(s3[2], pt(&[0, 2, 0]));
        assert_eq!(s3[3], pt(&[1, 0, 1]));
        assert_eq!(shell_size(3, 60), 1891);
        assert_eq!(shell(1, 7), vec![pt(&[7])]);
    }

    #[test]
    fn poly_evaluation() {
        let k = NumberField::rationals();
        let f = MultiPoly::variable(&k, 2, 0).add(&MultiPoly::variable(&k, 2, 1)).unwrap();
        assert_eq!(f.eval(&pt(&[3, 4])).unwrap(), k.from_int(7));
        assert_eq!(MultiPoly::constant(k.one(), 2).eval(&pt(&[9, 1])).unwrap(), k.one());
        let k5 = NumberField::from_i64(&[-5, 0, 1]).unwrap();
        let g = MultiPoly::from_terms(&k5, 2, [(vec![1, 2], k5.from_rational(q(1, 2)))]).unwrap();
        assert_eq!(g.eval(&pt(&[2, 3])).unwrap(), k5.from_int(9));
        assert_eq!(g.absolute_degree(), 3);
        assert_eq!(f.eval(&pt(&[1])), Err(Error::ArityMismatch { expected: 2, found: 1 }));
    }

    #[test]
    fn canonical_forms() {
        let k = NumberField::rationals();
        let r = MultiRecurrence::canonicalize(vec![const_term(&k, 1, &[2]), const_term(&k, -1, &[2])]);
        assert_eq!(r, Err(Error::EmptyRecurrence));
        let x = Term::new(MultiPoly::variable(&k, 1, 0), vec![k.from_int(2)]).unwrap();
        let merged = MultiRecurrence::canonicalize(vec![x, const_term(&k, 3, &[2])]).unwrap();
        assert_eq!(merged.len(), 1);
        assert_eq!(merged.eval(&pt(&[2])).unwrap(), k.from_int(20));
        assert_eq!(fibonacci().len(), 2);
        let half = k.from_rational(q(1, 2));
        assert!(matches!(
            Term::new(MultiPoly::constant(k.one(), 1), vec![half]),
            Err(Error::NotAlgebraicInteger { .. })
        ));
    }

    #[test]
    fn evaluations() {
        let k = NumberField::rationals();
        assert_eq!(fibonacci().eval(&pt(&[10])).unwrap().as_rational(), Some(&q(55, 1)));
        assert_eq!(diagonal().eval(&pt(&[2, 1])).unwrap(), k.from_int(-6));
        let s = Term::new(
            MultiPoly::variable(&k, 2, 0).add(&MultiPoly::variable(&k, 2, 1)).unwrap(),
            vec![k.one(), k.one()],
        )
        .unwrap();
        let g = MultiRecurrence::canonicalize(vec![s]).unwrap();
        assert_eq!(g.eval(&pt(&[3, 4])).unwrap(), k.from_int(7));
        assert_eq!(g.term_eval(1, &pt(&[3, 4])).unwrap(), k.from_int(7));
        assert_eq!(g.term_eval(2, &pt(&[3, 4])), Err(Error::IndexOutOfRange { index: 2, len: 1 }));
        // Canonical order puts base 2 before base 3: term 1 is 2^n1 3^n2.
        assert_eq!(diagonal().term_eval(1, &pt(&[2, 1])).unwrap(), k.from_int(12));
    }

    #[test]
    fn vanishing_subsums() {
        let g = diagonal();
        assert_eq!(g.pointwise_vanishing_subsums(&pt(&[2, 2]), 1).unwrap(), vec![vec![1, 2]]);
        assert!(g.pointwise_vanishing_subsums(&pt(&[2, 1]), 1).unwrap().is_empty());
        let f = fibonacci();
        assert_eq!(f.pointwise_vanishing_subsums(&pt(&[0]), 1).unwrap(), vec![vec![1, 2]]);
        assert!(f.pointwise_vanishing_subsums(&pt(&[7]), 1).unwrap().is_empty());

        let k = NumberField::rationals();
        let raw = vec![const_term(&k, 1, &[2]), const_term(&k, -1, &[2]), const_term(&k, 1, &[3])];
        assert_eq!(identically_vanishing_subsums(&raw, 1, 16).unwrap(), vec![vec![1, 2]]);
        assert!(identically_vanishing_subsums(f.terms(), 1, 16).unwrap().is_empty());
        let x = MultiPoly::variable(&k, 2, 0);
        let raw2 = vec![
            Term::new(x.clone(), vec![k.from_int(2), k.from_int(3)]).unwrap(),
            Term::new(x.scale(&q(-1, 1)), vec![k.from_int(2), k.from_int(3)]).unwrap(),
        ];
        assert_eq!(identically_vanishing_subsums(&raw2, 2, 16).unwrap(), vec![vec![1, 2]]);
    }

    #[test]
    fn subset_cap() {
        let k = NumberField::rationals();
        let raw: Vec<Term> = (2..20).map(|b| const_term(&k, 1, &[b])).collect();
        let g = MultiRecurrence::canonicalize(raw).unwrap();
        assert_eq!(
            g.pointwise_vanishing_subsums(&pt(&[1]), 1),
            Err(Error::SubsetCapExceeded { k: 18, cap: 16 })
        );
    }

    #[test]
    fn samples_are_reproducible() {
        let a = sample_points(3, 50, 100, 7);
        assert_eq!(a, sample_points(3, 50, 100, 7));
        assert!(a.iter().all(|p| (1..=100).contains(&p.norm()) && p.arity() == 3));
    }
}
