//! Sparse exact multivariate polynomials with a fixed graded reverse
//! lexicographic term order (X1 > X2 > ... > Xn).

use crate::field::{FieldSpec, Scalar};
use std::cmp::Ordering;
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error("arity or field mismatch: {0}")]
    Arity(String),
    #[error("operation undefined for the zero polynomial")]
    ZeroPolynomial,
    #[error("change-of-variables matrix is singular")]
    SingularMatrix,
}

/// Exponent vector. `Ord` is the grevlex order, so `BTreeMap` iteration walks
/// terms from smallest to largest.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial {
    exps: Vec<u16>,
}

impl Monomial {
    pub fn one(n_vars: usize) -> Self {
        Monomial { exps: vec![0; n_vars] }
    }

    pub fn var(n_vars: usize, i: usize) -> Self {
        assert!(i < n_vars);
        let mut exps = vec![0; n_vars];
        exps[i] = 1;
        Monomial { exps }
    }

    pub fn from_exps(exps: Vec<u16>) -> Self {
        Monomial { exps }
    }

    pub fn exps(&self) -> &[u16] {
        &self.exps
    }

    pub fn n_vars(&self) -> usize {
        self.exps.len()
    }

    pub fn degree(&self) -> u32 {
        self.exps.iter().map(|&e| e as u32).sum()
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.exps.len(), other.exps.len());
        Monomial {
            exps: self.exps.iter().zip(&other.exps).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    /// other / self, when divisible.
    pub fn div_into(&self, other: &Monomial) -> Option<Monomial> {
        if self.divides(other) {
            Some(Monomial {
                exps: other.exps.iter().zip(&self.exps).map(|(b, a)| b - a).collect(),
            })
        } else {
            None
        }
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial {
            exps: self.exps.iter().zip(&other.exps).map(|(a, b)| *a.max(b)).collect(),
        }
    }

    pub fn coprime(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(&other.exps).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Variable indices with positive exponent.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.exps.iter().enumerate().filter(|(_, e)| **e > 0).map(|(i, _)| i)
    }

    /// Replace one occurrence of variable `from` by `to`.
    pub fn replace_once(&self, from: usize, to: usize) -> Option<Monomial> {
        if self.exps[from] == 0 {
            return None;
        }
        let mut exps = self.exps.clone();
        exps[from] -= 1;
        exps[to] += 1;
        Some(Monomial { exps })
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        debug_assert_eq!(self.exps.len(), other.exps.len());
        match self.degree().cmp(&other.degree()) {
            Ordering::Equal => {}
            ord => return ord,
        }
        for k in (0..self.exps.len()).rev() {
            match self.exps[k].cmp(&other.exps[k]) {
                Ordering::Equal => continue,
                // larger trailing exponent means grevlex-smaller
                Ordering::Less => return Ordering::Greater,
                Ordering::Greater => return Ordering::Less,
            }
        }
        Ordering::Equal
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse polynomial over a fixed field and variable count. Zero coefficients
/// are never stored; two polynomials are equal iff their term maps are equal.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Polynomial {
    field: FieldSpec,
    n_vars: usize,
    terms: BTreeMap<Monomial, Scalar>,
}

impl Polynomial {
    pub fn zero(field: FieldSpec, n_vars: usize) -> Self {
        Polynomial { field, n_vars, terms: BTreeMap::new() }
    }

    pub fn constant(field: FieldSpec, n_vars: usize, c: Scalar) -> Self {
        let mut p = Self::zero(field, n_vars);
        if !field.is_zero(&c) {
            p.terms.insert(Monomial::one(n_vars), c);
        }
        p
    }

    pub fn one(field: FieldSpec, n_vars: usize) -> Self {
        Self::constant(field, n_vars, field.one())
    }

    pub fn variable(field: FieldSpec, n_vars: usize, i: usize) -> Self {
        Self::term(field, Monomial::var(n_vars, i), field.one())
    }

    pub fn term(field: FieldSpec, m: Monomial, c: Scalar) -> Self {
        let n_vars = m.n_vars();
        let mut p = Self::zero(field, n_vars);
        if !field.is_zero(&c) {
            p.terms.insert(m, c);
        }
        p
    }

    pub fn from_terms(
        field: FieldSpec,
        n_vars: usize,
        terms: impl IntoIterator<Item = (Monomial, Scalar)>,
    ) -> Self {
        let mut p = Self::zero(field, n_vars);
        for (m, c) in terms {
            p.add_term(&m, &c);
        }
        p
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn n_vars(&self) -> usize {
        self.n_vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending grevlex order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    /// Largest term; None for zero.
    pub fn leading_term(&self) -> Option<(&Monomial, &Scalar)> {
        self.terms.iter().next_back()
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.leading_term().map(|(m, _)| m)
    }

    pub fn coefficient(&self, m: &Monomial) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_else(|| self.field.zero())
    }

    /// Total degree; None is the zero-polynomial sentinel.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.degree()).max()
    }

    /// Minimal term degree; None for zero.
    pub fn order(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.degree()).min()
    }

    pub fn is_homogeneous(&self) -> bool {
        match self.degree() {
            None => true,
            Some(d) => self.terms.keys().all(|m| m.degree() == d),
        }
    }

    fn add_term(&mut self, m: &Monomial, c: &Scalar) {
        if self.field.is_zero(c) {
            return;
        }
        match self.terms.get_mut(m) {
            Some(existing) => {
                let sum = self.field.add(existing, c);
                if self.field.is_zero(&sum) {
                    self.terms.remove(m);
                } else {
                    *existing = sum;
                }
            }
            None => {
                self.terms.insert(m.clone(), c.clone());
            }
        }
    }

    fn assert_same_context(&self, other: &Polynomial) {
        assert!(
            self.field == other.field && self.n_vars == other.n_vars,
            "polynomials from different rings"
        );
    }

    pub fn checked_binop_ok(&self, other: &Polynomial) -> Result<(), PolyError> {
        if self.field != other.field || self.n_vars != other.n_vars {
            return Err(PolyError::Arity(format!(
                "char {}/{} in {}/{} variables",
                self.field.characteristic(),
                other.field.characteristic(),
                self.n_vars,
                other.n_vars
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        self.assert_same_context(other);
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m, c);
        }
        out
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        self.assert_same_context(other);
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m, &self.field.neg(c));
        }
        out
    }

    pub fn neg(&self) -> Polynomial {
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c = self.field.neg(c);
        }
        out
    }

    pub fn scale(&self, c: &Scalar) -> Polynomial {
        if self.field.is_zero(c) {
            return Self::zero(self.field, self.n_vars);
        }
        let mut out = self.clone();
        for v in out.terms.values_mut() {
            *v = self.field.mul(v, c);
        }
        out
    }

    pub fn mul_term(&self, m: &Monomial, c: &Scalar) -> Polynomial {
        let mut out = Self::zero(self.field, self.n_vars);
        if self.field.is_zero(c) {
            return out;
        }
        for (mm, cc) in &self.terms {
            out.terms.insert(mm.mul(m), self.field.mul(cc, c));
        }
        out
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        self.assert_same_context(other);
        let mut out = Self::zero(self.field, self.n_vars);
        for (m, c) in &self.terms {
            for (mm, cc) in &other.terms {
                out.add_term(&m.mul(mm), &self.field.mul(c, cc));
            }
        }
        out
    }

    pub fn checked_mul(&self, other: &Polynomial) -> Result<Polynomial, PolyError> {
        self.checked_binop_ok(other)?;
        Ok(self.mul(other))
    }

    pub fn pow(&self, k: u32) -> Polynomial {
        let mut acc = Self::one(self.field, self.n_vars);
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// Formal partial derivative with respect to variable `i` (0-based).
    pub fn partial_derivative(&self, i: usize) -> Result<Polynomial, PolyError> {
        if i >= self.n_vars {
            return Err(PolyError::Arity(format!(
                "variable index {i} out of range for {} variables",
                self.n_vars
            )));
        }
        let mut out = Self::zero(self.field, self.n_vars);
        for (m, c) in &self.terms {
            let e = m.exps()[i];
            if e == 0 {
                continue;
            }
            let coeff = self.field.mul(c, &self.field.from_i64(e as i64));
            if self.field.is_zero(&coeff) {
                continue;
            }
            let mut exps = m.exps().to_vec();
            exps[i] -= 1;
            out.add_term(&Monomial::from_exps(exps), &coeff);
        }
        Ok(out)
    }

    /// Split into homogeneous components keyed by degree.
    pub fn homogeneous_components(&self) -> Result<BTreeMap<u32, Polynomial>, PolyError> {
        if self.is_zero() {
            return Err(PolyError::ZeroPolynomial);
        }
        let mut out: BTreeMap<u32, Polynomial> = BTreeMap::new();
        for (m, c) in &self.terms {
            out.entry(m.degree())
                .or_insert_with(|| Self::zero(self.field, self.n_vars))
                .add_term(m, c);
        }
        Ok(out)
    }

    /// Component of minimal degree; errors on zero.
    pub fn lowest_component(&self) -> Result<Polynomial, PolyError> {
        let comps = self.homogeneous_components()?;
        Ok(comps.into_iter().next().expect("nonzero").1)
    }

    /// Homogeneous component of one degree (zero polynomial if absent).
    pub fn component_of_degree(&self, d: u32) -> Polynomial {
        let mut out = Self::zero(self.field, self.n_vars);
        for (m, c) in &self.terms {
            if m.degree() == d {
                out.terms.insert(m.clone(), c.clone());
            }
        }
        out
    }

    /// Drop all terms of degree >= `bound`.
    pub fn truncate_below_degree(&self, bound: u32) -> Polynomial {
        let mut out = Self::zero(self.field, self.n_vars);
        for (m, c) in &self.terms {
            if m.degree() < bound {
                out.terms.insert(m.clone(), c.clone());
            }
        }
        out
    }

    /// Substitute X_j -> sum_i m[i][j] X_i.
    pub fn apply_linear_change(&self, mat: &LinearChange) -> Polynomial {
        assert!(
            mat.n == self.n_vars && mat.field == self.field,
            "matrix context mismatch"
        );
        let images: Vec<Polynomial> = (0..self.n_vars)
            .map(|j| {
                let mut img = Self::zero(self.field, self.n_vars);
                for i in 0..self.n_vars {
                    img.add_term(&Monomial::var(self.n_vars, i), mat.entry(i, j));
                }
                img
            })
            .collect();
        // memoized powers of each variable image
        let mut powers: Vec<Vec<Polynomial>> =
            (0..self.n_vars).map(|j| vec![Self::one(self.field, self.n_vars), images[j].clone()]).collect();
        let mut out = Self::zero(self.field, self.n_vars);
        for (m, c) in &self.terms {
            let mut term = Self::constant(self.field, self.n_vars, c.clone());
            for (j, &e) in m.exps().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while powers[j].len() <= e as usize {
                    let next = powers[j].last().unwrap().mul(&images[j]);
                    powers[j].push(next);
                }
                term = term.mul(&powers[j][e as usize]);
            }
            out = out.add(&term);
        }
        out
    }

    /// Canonical rendering: descending grevlex, coefficients as `a` or `a/b`.
    pub fn canonical_string(&self, names: &[String]) -> String {
        assert_eq!(names.len(), self.n_vars);
        if self.is_zero() {
            return "0".to_string();
        }
        let one = self.field.one();
        let minus_one = self.field.neg(&one);
        let mut out = String::new();
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let (negative, mag) = if self.field.is_rational() {
                match c {
                    Scalar::Small { num, .. } if *num < 0 => (true, self.field.neg(c)),
                    Scalar::Big(r) if r.numer().sign() == num::bigint::Sign::Minus => {
                        (true, self.field.neg(c))
                    }
                    _ => (false, c.clone()),
                }
            } else {
                (false, c.clone())
            };
            if k == 0 {
                if negative {
                    out.push('-');
                }
            } else {
                out.push_str(if negative { " - " } else { " + " });
            }
            let mut parts: Vec<String> = Vec::new();
            let coeff_is_unit = mag == one || (!self.field.is_rational() && c == &minus_one);
            if m.is_one() || !coeff_is_unit {
                parts.push(self.field.render(&mag));
            }
            for (j, &e) in m.exps().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                if e == 1 {
                    parts.push(names[j].clone());
                } else {
                    parts.push(format!("{}^{}", names[j], e));
                }
            }
            out.push_str(&parts.join("*"));
        }
        out
    }

    /// Canonical rendering with default names X1..Xn (X, Y, Z for n <= 3).
    pub fn render(&self) -> String {
        self.canonical_string(&default_names(self.n_vars))
    }
}

/// All monomials of total degree `d` in ascending grevlex order.
pub fn monomials_of_degree(n_vars: usize, d: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    let mut exps = vec![0u16; n_vars];
    fn rec(exps: &mut Vec<u16>, i: usize, rem: u32, out: &mut Vec<Monomial>) {
        if i + 1 == exps.len() {
            exps[i] = rem as u16;
            out.push(Monomial::from_exps(exps.clone()));
            return;
        }
        for e in 0..=rem {
            exps[i] = e as u16;
            rec(exps, i + 1, rem - e, out);
        }
        exps[i] = 0;
    }
    if n_vars == 0 {
        if d == 0 {
            out.push(Monomial::one(0));
        }
        return out;
    }
    rec(&mut exps, 0, d, &mut out);
    out.sort();
    out
}

/// Number of monomials of degree `d` in `n_vars` variables: C(n+d-1, d).
pub fn monomial_count(n_vars: usize, d: u32) -> u128 {
    binomial(n_vars as u128 + d as u128 - 1, d as u128)
}

/// Number of monomials of degree < `d`: C(n+d-1, n).
pub fn monomial_count_below(n_vars: usize, d: u32) -> u128 {
    if d == 0 {
        return 0;
    }
    binomial(n_vars as u128 + d as u128 - 1, n_vars as u128)
}

pub fn binomial(n: u128, mut k: u128) -> u128 {
    if k > n {
        return 0;
    }
    if k > n - k {
        k = n - k;
    }
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

pub fn default_names(n_vars: usize) -> Vec<String> {
    if n_vars <= 3 {
        ["X", "Y", "Z"].iter().take(n_vars).map(|s| s.to_string()).collect()
    } else {
        (1..=n_vars).map(|i| format!("X{i}")).collect()
    }
}

/// Invertible matrix acting by linear substitution.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LinearChange {
    field: FieldSpec,
    n: usize,
    entries: Vec<Scalar>, // row-major
}

impl LinearChange {
    pub fn new(field: FieldSpec, n: usize, entries: Vec<Scalar>) -> Result<Self, PolyError> {
        assert_eq!(entries.len(), n * n);
        let m = LinearChange { field, n, entries };
        if m.determinant_is_zero() {
            return Err(PolyError::SingularMatrix);
        }
        Ok(m)
    }

    pub fn identity(field: FieldSpec, n: usize) -> Self {
        let mut entries = vec![field.zero(); n * n];
        for i in 0..n {
            entries[i * n + i] = field.one();
        }
        LinearChange { field, n, entries }
    }

    pub fn scaling(field: FieldSpec, n: usize, a: Scalar) -> Result<Self, PolyError> {
        let mut entries = vec![field.zero(); n * n];
        for i in 0..n {
            entries[i * n + i] = a.clone();
        }
        Self::new(field, n, entries)
    }

    pub fn n_vars(&self) -> usize {
        self.n
    }

    pub fn entry(&self, i: usize, j: usize) -> &Scalar {
        &self.entries[i * self.n + j]
    }

    /// Matrix product self * other.
    pub fn compose(&self, other: &LinearChange) -> LinearChange {
        assert!(self.n == other.n && self.field == other.field);
        let mut entries = vec![self.field.zero(); self.n * self.n];
        for i in 0..self.n {
            for j in 0..self.n {
                let mut acc = self.field.zero();
                for k in 0..self.n {
                    acc = self.field.add(&acc, &self.field.mul(self.entry(i, k), other.entry(k, j)));
                }
                entries[i * self.n + j] = acc;
            }
        }
        LinearChange { field: self.field, n: self.n, entries }
    }

    fn determinant_is_zero(&self) -> bool {
        // Gaussian elimination on a copy
        let f = self.field;
        let n = self.n;
        let mut m = self.entries.clone();
        for col in 0..n {
            let pivot = (col..n).find(|&r| !f.is_zero(&m[r * n + col]));
            let Some(p) = pivot else { return true };
            if p != col {
                for j in 0..n {
                    m.swap(col * n + j, p * n + j);
                }
            }
            let inv = f.inv(&m[col * n + col]).unwrap();
            for r in col + 1..n {
                let factor = f.mul(&m[r * n + col], &inv);
                if f.is_zero(&factor) {
                    continue;
                }
                for j in col..n {
                    let v = f.sub(&m[r * n + j], &f.mul(&factor, &m[col * n + j]));
                    m[r * n + j] = v;
                }
            }
        }
        false
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> FieldSpec {
        FieldSpec::rationals()
    }

    /// Convenience: polynomial from (coeff, exps) list.
    fn p(field: FieldSpec, n: usize, terms: &[(i64, &[u16])]) -> Polynomial {
        Polynomial::from_terms(
            field,
            n,
            terms
                .iter()
                .map(|(c, e)| (Monomial::from_exps(e.to_vec()), field.from_i64(*c))),
        )
    }

    #[test]
    fn grevlex_ordering() {
        // degree 2 in X, Y: X^2 > XY > Y^2
        let x2 = Monomial::from_exps(vec![2, 0]);
        let xy = Monomial::from_exps(vec![1, 1]);
        let y2 = Monomial::from_exps(vec![0, 2]);
        assert!(x2 > xy && xy > y2);
        // X1*X2^2 > X2^3 > X3^3 in 3 variables
        let a = Monomial::from_exps(vec![1, 2, 0]);
        let b = Monomial::from_exps(vec![0, 3, 0]);
        let c = Monomial::from_exps(vec![0, 0, 3]);
        assert!(a > b && b > c);
        // degree dominates
        assert!(Monomial::from_exps(vec![0, 3]) > x2);
    }

    #[test]
    fn mul_binomial_char0_and_char2() {
        let f = p(q(), 2, &[(1, &[1, 0]), (1, &[0, 1])]);
        let sq = f.mul(&f);
        assert_eq!(sq, p(q(), 2, &[(1, &[2, 0]), (2, &[1, 1]), (1, &[0, 2])]));

        let f2 = FieldSpec::prime(2).unwrap();
        let g = p(f2, 2, &[(1, &[1, 0]), (1, &[0, 1])]);
        assert_eq!(g.mul(&g), p(f2, 2, &[(1, &[2, 0]), (1, &[0, 2])]));
    }

    #[test]
    fn mul_difference_of_squares() {
        let a = p(q(), 2, &[(1, &[2, 0]), (1, &[0, 2])]);
        let b = p(q(), 2, &[(1, &[2, 0]), (-1, &[0, 2])]);
        assert_eq!(a.mul(&b), p(q(), 2, &[(1, &[4, 0]), (-1, &[0, 4])]));
    }

    #[test]
    fn degree_of_product_adds() {
        let a = p(q(), 2, &[(1, &[2, 0]), (1, &[0, 1])]);
        let b = p(q(), 2, &[(3, &[1, 1])]);
        assert_eq!(a.mul(&b).degree(), Some(4));
        assert_eq!(Polynomial::zero(q(), 2).degree(), None);
    }

    #[test]
    fn partial_derivatives() {
        // d/dX1 (X1^3 + X1^2 X2) = 3 X1^2 + 2 X1 X2
        let f = p(q(), 2, &[(1, &[3, 0]), (1, &[2, 1])]);
        assert_eq!(
            f.partial_derivative(0).unwrap(),
            p(q(), 2, &[(3, &[2, 0]), (2, &[1, 1])])
        );
        // d/dX2 (X1^2) = 0
        let g = p(q(), 2, &[(1, &[2, 0])]);
        assert!(g.partial_derivative(1).unwrap().is_zero());
        // d/dX (X^p) = 0 in char p
        let f5 = FieldSpec::prime(5).unwrap();
        let h = p(f5, 1, &[(1, &[5])]);
        assert!(h.partial_derivative(0).unwrap().is_zero());
        assert!(matches!(f.partial_derivative(7), Err(PolyError::Arity(_))));
    }

    #[test]
    fn homogeneous_component_split() {
        let f = p(q(), 2, &[(1, &[2, 0]), (1, &[1, 1]), (1, &[0, 3])]);
        let comps = f.homogeneous_components().unwrap();
        assert_eq!(comps.len(), 2);
        assert_eq!(comps[&2], p(q(), 2, &[(1, &[2, 0]), (1, &[1, 1])]));
        assert_eq!(comps[&3], p(q(), 2, &[(1, &[0, 3])]));
        assert_eq!(f.order(), Some(2));
        assert_eq!(f.lowest_component().unwrap(), comps[&2]);

        let homog = p(q(), 2, &[(1, &[2, 0]), (1, &[0, 2])]);
        assert_eq!(homog.homogeneous_components().unwrap().len(), 1);
        let single = p(q(), 2, &[(1, &[4, 5])]);
        assert_eq!(single.homogeneous_components().unwrap()[&9], single);
        assert!(matches!(
            Polynomial::zero(q(), 2).homogeneous_components(),
            Err(PolyError::ZeroPolynomial)
        ));
    }

    #[test]
    fn linear_change_swap_and_scale() {
        let f = p(q(), 2, &[(1, &[1, 1])]);
        let swap = LinearChange::new(
            q(),
            2,
            vec![q().zero(), q().one(), q().one(), q().zero()],
        )
        .unwrap();
        assert_eq!(f.apply_linear_change(&swap), f);

        // homogeneous of degree d under a*Id picks up a^d
        let g = p(q(), 2, &[(1, &[2, 1]), (2, &[0, 3])]);
        let scale = LinearChange::scaling(q(), 2, q().from_i64(2)).unwrap();
        assert_eq!(g.apply_linear_change(&scale), g.scale(&q().from_i64(8)));

        let h = p(q(), 2, &[(1, &[2, 0])]);
        let m = LinearChange::new(
            q(),
            2,
            vec![q().from_i64(2), q().zero(), q().zero(), q().one()],
        )
        .unwrap();
        assert_eq!(h.apply_linear_change(&m), p(q(), 2, &[(4, &[2, 0])]));
    }

    #[test]
    fn singular_matrix_rejected() {
        let err = LinearChange::new(
            q(),
            2,
            vec![q().one(), q().one(), q().one(), q().one()],
        );
        assert_eq!(err.unwrap_err(), PolyError::SingularMatrix);
    }

    #[test]
    fn canonical_rendering() {
        let f = p(q(), 3, &[(1, &[3, 0, 0]), (1, &[1, 2, 0]), (2, &[0, 3, 0]), (1, &[0, 0, 3])]);
        let names: Vec<String> = ["X1", "X2", "X3"].iter().map(|s| s.to_string()).collect();
        assert_eq!(f.canonical_string(&names), "X1^3 + X1*X2^2 + 2*X2^3 + X3^3");
        let g = p(q(), 2, &[(-1, &[2, 0]), (1, &[0, 1])]);
        assert_eq!(g.render(), "-X^2 + Y");
        let h = Polynomial::from_terms(
            q(),
            1,
            [(Monomial::from_exps(vec![1]), q().from_ratio(1, 2)), (Monomial::one(1), q().from_i64(-3))],
        );
        assert_eq!(h.render(), "1/2*X - 3");
        assert_eq!(Polynomial::zero(q(), 2).render(), "0");
    }

    #[test]
    #[should_panic(expected = "different rings")]
    fn arity_mismatch_panics() {
        let a = p(q(), 2, &[(1, &[1, 0])]);
        let b = p(q(), 3, &[(1, &[1, 0, 0])]);
        let _ = a.add(&b);
    }

    #[test]
    fn checked_mul_reports_arity() {
        let a = p(q(), 2, &[(1, &[1, 0])]);
        let b = p(q(), 3, &[(1, &[1, 0, 0])]);
        assert!(matches!(a.checked_mul(&b), Err(PolyError::Arity(_))));
    }
}
