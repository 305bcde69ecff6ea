//! Admissible presentations of local algebras K[X1..Xn]/I with
//! <X>^l <= I <= <X>^2, quotient structure constants, radical filtration,
//! minimal generator counts, and the associated graded ideal.

use crate::field::{FieldSpec, Scalar};
use crate::groebner::{self, GroebnerBasis, StandardMonomials};
use crate::linalg::{Echelon, SparseRow};
use crate::poly::{monomial_count, monomial_count_below, monomials_of_degree, Monomial, Polynomial};
use std::collections::{BTreeMap, HashMap};
use std::sync::OnceLock;
use thiserror::Error;

/// Hard ceilings for the exact linear-algebra working sets. Inputs that would
/// exceed them fail with `TooLarge` instead of thrashing.
const GRADED_COLS_CAP: u128 = 200_000;
const GRADED_ROWS_CAP: usize = 60_000;
const TRUNC_COLS_CAP: u128 = 50_000;
const POWER_GENS_CAP: u128 = 100_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("not admissible: {0}")]
    NotAdmissible(String),
    #[error("quotient is infinite-dimensional")]
    InfiniteDimensional,
    #[error("exceeds exact-arithmetic size limits: {0}")]
    TooLarge(String),
}

/// Raw generator list for an ideal, before admissibility validation.
/// `power_cap = Some(l)` means the ideal <X1..Xn>^l is adjoined.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct IdealPresentation {
    field: FieldSpec,
    n_vars: usize,
    generators: Vec<Polynomial>,
    power_cap: Option<u32>,
}

impl IdealPresentation {
    pub fn new(
        field: FieldSpec,
        n_vars: usize,
        generators: Vec<Polynomial>,
        power_cap: Option<u32>,
    ) -> Result<Self, AlgebraError> {
        if n_vars == 0 {
            return Err(AlgebraError::NotAdmissible("need at least one variable".into()));
        }
        if generators.is_empty() && power_cap.is_none() {
            return Err(AlgebraError::NotAdmissible("no generators and no power part".into()));
        }
        for g in &generators {
            if g.is_zero() {
                return Err(AlgebraError::NotAdmissible("zero generator".into()));
            }
            if g.field() != field || g.n_vars() != n_vars {
                return Err(AlgebraError::NotAdmissible(
                    "generator field or arity mismatch".into(),
                ));
            }
        }
        if let Some(l) = power_cap {
            if l < 2 {
                return Err(AlgebraError::NotAdmissible("power exponent must be at least 2".into()));
            }
        }
        Ok(IdealPresentation { field, n_vars, generators, power_cap })
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn n_vars(&self) -> usize {
        self.n_vars
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    pub fn power_cap(&self) -> Option<u32> {
        self.power_cap
    }
}

/// Validated presentation: I = <X>^lowey + <P1..Pm> with every Pi nonzero of
/// degree in [2, lowey-1] and without constant or linear part, lowey minimal.
#[derive(Debug)]
pub struct AdmissiblePresentation {
    base: IdealPresentation,
    lowey: u32,
    normalized: Vec<Polynomial>,
    gb: OnceLock<GroebnerBasis>,
}

impl Clone for AdmissiblePresentation {
    fn clone(&self) -> Self {
        AdmissiblePresentation {
            base: self.base.clone(),
            lowey: self.lowey,
            normalized: self.normalized.clone(),
            gb: OnceLock::new(),
        }
    }
}

impl PartialEq for AdmissiblePresentation {
    fn eq(&self, other: &Self) -> bool {
        self.base == other.base && self.lowey == other.lowey && self.normalized == other.normalized
    }
}
impl Eq for AdmissiblePresentation {}

/// Checks <X>^l <= I <= <X>^2, computes the minimal l (Loewy length) and the
/// normalized generators with all degree >= l monomials dropped.
pub fn validate_admissible(p: &IdealPresentation) -> Result<AdmissiblePresentation, AlgebraError> {
    for g in p.generators() {
        match g.order() {
            Some(o) if o >= 2 => {}
            _ => {
                return Err(AlgebraError::NotAdmissible(format!(
                    "generator {} has a constant or linear component",
                    g.render()
                )))
            }
        }
    }

    let lowey = match p.power_cap {
        Some(cap) => minimal_power_with_cap(p, cap)?,
        None => minimal_power_from_groebner(p)?,
    };

    let normalized: Vec<Polynomial> = p
        .generators
        .iter()
        .map(|g| g.truncate_below_degree(lowey))
        .filter(|g| !g.is_zero())
        .collect();

    Ok(AdmissiblePresentation { base: p.clone(), lowey, normalized, gb: OnceLock::new() })
}

/// Minimal l with <X>^l <= I, scanning degree slices below the declared cap.
fn minimal_power_with_cap(p: &IdealPresentation, cap: u32) -> Result<u32, AlgebraError> {
    if p.generators.is_empty() {
        return Ok(cap);
    }
    if p.generators.iter().all(|g| g.is_homogeneous()) {
        let mut graded = GradedIdeal::new(p.field, p.n_vars, &p.generators, cap);
        for d in (2..cap).rev() {
            if !graded.is_full_at(d)? {
                return Ok(d + 1);
            }
        }
        Ok(2)
    } else {
        let trunc = TruncIdeal::new(p.field, p.n_vars, &p.generators, cap)?;
        for d in (2..cap).rev() {
            if !trunc.degree_full(d) {
                return Ok(d + 1);
            }
        }
        Ok(2)
    }
}

/// No declared power part: the generators alone must pin a finite local
/// quotient. Decided through the Groebner basis.
fn minimal_power_from_groebner(p: &IdealPresentation) -> Result<u32, AlgebraError> {
    let gb = groebner::buchberger(&p.generators);
    let sm = match groebner::standard_monomials_capped(&gb, GRADED_ROWS_CAP) {
        Ok(StandardMonomials::Finite(sm)) => sm,
        Ok(StandardMonomials::Infinite) => return Err(AlgebraError::InfiniteDimensional),
        Err(_) => return Err(AlgebraError::TooLarge("standard monomial enumeration".into())),
    };
    let l = 1 + sm.iter().map(|m| m.degree()).max().unwrap_or(0);
    for m in monomials_of_degree(p.n_vars, l) {
        let mono = Polynomial::term(p.field, m, p.field.one());
        if !groebner::ideal_membership(&mono, &gb) {
            return Err(AlgebraError::NotAdmissible(
                "no power of the maximal ideal is contained in the ideal".into(),
            ));
        }
    }
    Ok(l)
}

impl AdmissiblePresentation {
    pub fn field(&self) -> FieldSpec {
        self.base.field
    }

    pub fn n_vars(&self) -> usize {
        self.base.n_vars
    }

    pub fn base(&self) -> &IdealPresentation {
        &self.base
    }

    /// The Loewy length: minimal l with <X>^l <= I.
    pub fn lowey_length(&self) -> u32 {
        self.lowey
    }

    /// Generators of degree in [2, lowey-1]; empty exactly when I = <X>^lowey.
    pub fn normalized_generators(&self) -> &[Polynomial] {
        &self.normalized
    }

    pub fn is_power_ideal(&self) -> bool {
        self.normalized.is_empty()
    }

    pub fn has_homogeneous_generators(&self) -> bool {
        self.normalized.iter().all(|g| g.is_homogeneous())
    }

    /// Minimal degree of an ideal element (the min generator degree after
    /// normalization, or lowey for a power ideal). For non-homogeneous
    /// presentations this is the minimal ORDER of a generator, which matches
    /// the minimal degree of the associated graded ideal.
    pub fn min_degree(&self) -> u32 {
        self.normalized
            .iter()
            .filter_map(|g| g.order())
            .min()
            .unwrap_or(self.lowey)
    }

    /// Reduced Groebner basis of I, built on first use. The power part is
    /// materialized as explicit degree-lowey monomial generators.
    pub fn groebner(&self) -> Result<&GroebnerBasis, AlgebraError> {
        if let Some(gb) = self.gb.get() {
            return Ok(gb);
        }
        if monomial_count(self.n_vars(), self.lowey) > POWER_GENS_CAP {
            return Err(AlgebraError::TooLarge(format!(
                "power part needs {} monomial generators",
                monomial_count(self.n_vars(), self.lowey)
            )));
        }
        let mut gens = self.normalized.clone();
        let field = self.field();
        for m in monomials_of_degree(self.n_vars(), self.lowey) {
            gens.push(Polynomial::term(field, m, field.one()));
        }
        let built = groebner::buchberger(&gens);
        Ok(self.gb.get_or_init(|| built))
    }

    /// Exact ideal membership through the truncated span; no Groebner basis.
    pub fn contains(&self, f: &Polynomial) -> Result<bool, AlgebraError> {
        assert!(f.field() == self.field() && f.n_vars() == self.n_vars());
        if f.is_zero() {
            return Ok(true);
        }
        let reduced = f.truncate_below_degree(self.lowey);
        if reduced.is_zero() {
            return Ok(true);
        }
        if self.has_homogeneous_generators() {
            let mut graded = self.graded_view();
            for (_, comp) in reduced.homogeneous_components().expect("nonzero") {
                if !graded.member(&comp)? {
                    return Ok(false);
                }
            }
            Ok(true)
        } else {
            let trunc = self.trunc_view()?;
            Ok(trunc.member(&reduced))
        }
    }

    /// True iff every homogeneous component of every generator lies in I.
    pub fn is_homogeneous_ideal(&self) -> Result<bool, AlgebraError> {
        if self.has_homogeneous_generators() {
            return Ok(true);
        }
        for g in &self.normalized {
            for (_, comp) in g.homogeneous_components().expect("nonzero") {
                if !self.contains(&comp)? {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    pub(crate) fn graded_view(&self) -> GradedIdeal<'_> {
        debug_assert!(self.has_homogeneous_generators());
        GradedIdeal::new(self.field(), self.n_vars(), &self.normalized, self.lowey)
    }

    pub(crate) fn trunc_view(&self) -> Result<TruncIdeal, AlgebraError> {
        TruncIdeal::new(self.field(), self.n_vars(), &self.normalized, self.lowey)
    }
}

/// Kept for symmetry with the other per-operation entry points.
pub fn lowey_length(ap: &AdmissiblePresentation) -> u32 {
    ap.lowey_length()
}

// ---------------------------------------------------------------------------
// graded machinery (homogeneous generators)
// ---------------------------------------------------------------------------

pub(crate) struct GradedPiece {
    pub cols: Vec<Monomial>,
    pub ech: Echelon,
    /// rank of the products with a nonconstant multiplier only
    pub rank_excl: usize,
}

/// Degree-by-degree spans of a homogeneous ideal given by generators of
/// degree < lowey plus the full power part at degree lowey.
pub(crate) struct GradedIdeal<'a> {
    field: FieldSpec,
    n_vars: usize,
    gens: &'a [Polynomial],
    lowey: u32,
    cache: BTreeMap<u32, GradedPiece>,
}

impl<'a> GradedIdeal<'a> {
    pub fn new(field: FieldSpec, n_vars: usize, gens: &'a [Polynomial], lowey: u32) -> Self {
        GradedIdeal { field, n_vars, gens, lowey, cache: BTreeMap::new() }
    }

    fn product_rows_at(&self, d: u32) -> usize {
        self.gens
            .iter()
            .filter_map(|g| {
                let gd = g.degree().expect("nonzero");
                if gd <= d {
                    Some(monomial_count(self.n_vars, d - gd).min(u128::from(u64::MAX)) as usize)
                } else {
                    None
                }
            })
            .sum()
    }

    pub fn piece(&mut self, d: u32) -> Result<&GradedPiece, AlgebraError> {
        if !self.cache.contains_key(&d) {
            let ncols = monomial_count(self.n_vars, d);
            if ncols > GRADED_COLS_CAP {
                return Err(AlgebraError::TooLarge(format!(
                    "degree-{d} piece has {ncols} monomials"
                )));
            }
            if self.product_rows_at(d) > GRADED_ROWS_CAP {
                return Err(AlgebraError::TooLarge(format!("degree-{d} piece row count")));
            }
            let cols = monomials_of_degree(self.n_vars, d);
            let mut ech = Echelon::new(self.field);
            let mut rank_excl = 0;
            // nonconstant multipliers first so both ranks come from one pass
            for mult_deg_nonzero in [true, false] {
                for g in self.gens {
                    let gd = g.degree().expect("nonzero");
                    if gd > d || (mult_deg_nonzero == (gd == d)) {
                        continue;
                    }
                    for m in monomials_of_degree(self.n_vars, d - gd) {
                        let prod = g.mul_term(&m, &self.field.one());
                        let row: SparseRow = prod
                            .terms()
                            .map(|(mm, c)| (cols.binary_search(mm).expect("degree match"), c.clone()))
                            .collect();
                        ech.insert(row);
                    }
                }
                if mult_deg_nonzero {
                    rank_excl = ech.rank();
                }
            }
            self.cache.insert(d, GradedPiece { cols, ech, rank_excl });
        }
        Ok(self.cache.get(&d).unwrap())
    }

    /// dim (I)_d for d < lowey; full space at and above lowey.
    pub fn dim_at(&mut self, d: u32) -> Result<u128, AlgebraError> {
        if d >= self.lowey {
            return Ok(monomial_count(self.n_vars, d));
        }
        Ok(self.piece(d)?.ech.rank() as u128)
    }

    /// Is (I)_d the whole degree-d space? Count bound first, exact rank after.
    pub fn is_full_at(&mut self, d: u32) -> Result<bool, AlgebraError> {
        if d >= self.lowey {
            return Ok(true);
        }
        let ncols = monomial_count(self.n_vars, d);
        if (self.product_rows_at(d) as u128) < ncols {
            return Ok(false);
        }
        Ok(self.dim_at(d)? == ncols)
    }

    /// Membership of a homogeneous polynomial.
    pub fn member(&mut self, f: &Polynomial) -> Result<bool, AlgebraError> {
        debug_assert!(f.is_homogeneous());
        let Some(d) = f.degree() else { return Ok(true) };
        if d >= self.lowey {
            return Ok(true);
        }
        let piece = self.piece(d)?;
        let row: SparseRow = f
            .terms()
            .map(|(m, c)| (piece.cols.binary_search(m).expect("degree match"), c.clone()))
            .collect();
        Ok(piece.ech.contains(row))
    }
}

// ---------------------------------------------------------------------------
// truncated machinery (general generators)
// ---------------------------------------------------------------------------

/// RREF of the projection of <gens> to K[X] truncated below degree `lowey`,
/// with columns ordered by ascending degree. Because <X>^lowey <= I, ideal
/// membership is equivalent to membership of the truncation in this span.
pub(crate) struct TruncIdeal {
    field: FieldSpec,
    cols: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
    ech: Echelon,
    lowey: u32,
    /// number of pivots whose column has each degree
    pivot_degrees: BTreeMap<u32, usize>,
    n_vars: usize,
}

impl TruncIdeal {
    pub fn new(
        field: FieldSpec,
        n_vars: usize,
        gens: &[Polynomial],
        lowey: u32,
    ) -> Result<Self, AlgebraError> {
        if monomial_count_below(n_vars, lowey) > TRUNC_COLS_CAP {
            return Err(AlgebraError::TooLarge(format!(
                "truncation below degree {lowey} has {} monomials",
                monomial_count_below(n_vars, lowey)
            )));
        }
        let mut cols: Vec<Monomial> = Vec::new();
        for d in 0..lowey {
            cols.extend(monomials_of_degree(n_vars, d));
        }
        let index: HashMap<Monomial, usize> =
            cols.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect();
        let mut t = TruncIdeal {
            field,
            cols,
            index,
            ech: Echelon::new(field),
            lowey,
            pivot_degrees: BTreeMap::new(),
            n_vars,
        };
        for g in gens {
            let go = g.order().expect("nonzero generator");
            if go >= lowey {
                continue;
            }
            for a in 0..=(lowey - go - 1) {
                for m in monomials_of_degree(n_vars, a) {
                    let prod = g.mul_term(&m, &field.one()).truncate_below_degree(lowey);
                    t.insert_poly(&prod);
                }
            }
        }
        Ok(t)
    }

    fn row_of(&self, f: &Polynomial) -> SparseRow {
        let mut row: SparseRow = f.terms().map(|(m, c)| (self.index[m], c.clone())).collect();
        row.sort_by_key(|(i, _)| *i);
        row
    }

    fn insert_poly(&mut self, f: &Polynomial) {
        if f.is_zero() {
            return;
        }
        if let Some(pivot) = self.ech.insert(self.row_of(f)) {
            let deg = self.cols[pivot].degree();
            *self.pivot_degrees.entry(deg).or_insert(0) += 1;
        }
    }

    /// Membership of the (already truncated) polynomial in the ideal.
    pub fn member(&self, f: &Polynomial) -> bool {
        let t = f.truncate_below_degree(self.lowey);
        if t.is_zero() {
            return true;
        }
        self.ech.contains(self.row_of(&t))
    }

    /// All monomials of degree d lie in the ideal.
    pub fn degree_full(&self, d: u32) -> bool {
        if d >= self.lowey {
            return true;
        }
        self.pivot_degrees.get(&d).copied().unwrap_or(0) as u128 == monomial_count(self.n_vars, d)
    }

    pub fn dim_truncated(&self) -> usize {
        self.ech.rank()
    }

    /// dim of the degree-d piece of the associated graded ideal.
    pub fn graded_dim_at(&self, d: u32) -> usize {
        self.pivot_degrees.get(&d).copied().unwrap_or(0)
    }

    /// Lowest-degree homogeneous components of ideal elements of order d,
    /// one per RREF row with pivot in degree d.
    pub fn lowest_components_at(&self, d: u32) -> Vec<Polynomial> {
        let mut out = Vec::new();
        for (col, row) in self.ech.pivots() {
            if self.cols[col].degree() != d {
                continue;
            }
            let poly = Polynomial::from_terms(
                self.field,
                self.n_vars,
                row.iter()
                    .filter(|(c, _)| self.cols[*c].degree() == d)
                    .map(|(c, v)| (self.cols[*c].clone(), v.clone())),
            );
            out.push(poly);
        }
        out
    }
}

// ---------------------------------------------------------------------------
// derived data
// ---------------------------------------------------------------------------

/// dim_K K[X]/I, by graded or truncated rank; never builds a Groebner basis.
pub fn algebra_dimension(ap: &AdmissiblePresentation) -> Result<u64, AlgebraError> {
    let n = ap.n_vars();
    let l = ap.lowey_length();
    if ap.has_homogeneous_generators() {
        let mut graded = ap.graded_view();
        let mut dim: u128 = 0;
        for d in 0..l {
            dim += monomial_count(n, d) - graded.dim_at(d)?;
        }
        Ok(dim as u64)
    } else {
        let trunc = ap.trunc_view()?;
        Ok((monomial_count_below(n, l) as u64) - trunc.dim_truncated() as u64)
    }
}

/// Dimensions [dim R^0/R^1, dim R/R^2, ...], exactly lowey entries.
pub fn radical_filtration(ap: &AdmissiblePresentation) -> Result<Vec<u64>, AlgebraError> {
    let n = ap.n_vars();
    let l = ap.lowey_length();
    let mut dims = Vec::with_capacity(l as usize);
    if ap.has_homogeneous_generators() {
        let mut graded = ap.graded_view();
        for d in 0..l {
            dims.push((monomial_count(n, d) - graded.dim_at(d)?) as u64);
        }
    } else {
        let trunc = ap.trunc_view()?;
        for d in 0..l {
            dims.push((monomial_count(n, d) as u64) - trunc.graded_dim_at(d) as u64);
        }
    }
    Ok(dims)
}

/// Exact or lower-bounded minimal generator count of I.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum GeneratorCount {
    Exact(u64),
    /// the true count is at least this, exact value not computed
    AtLeast(u64),
}

impl GeneratorCount {
    pub fn exact(&self) -> Option<u64> {
        match self {
            GeneratorCount::Exact(m) => Some(*m),
            GeneratorCount::AtLeast(_) => None,
        }
    }
}

/// m = dim_K I/<X>I by graded Nakayama, degree by degree. `stop_at` allows an
/// early sound exit: once the running total reaches it, an `AtLeast` is
/// returned without materializing the remaining (possibly huge) pieces.
pub fn minimal_generator_count_bounded(
    ap: &AdmissiblePresentation,
    stop_at: Option<u64>,
) -> Result<GeneratorCount, AlgebraError> {
    let n = ap.n_vars();
    let l = ap.lowey_length();
    let field = ap.field();
    if ap.has_homogeneous_generators() {
        let mut graded = ap.graded_view();
        let mut total: u128 = 0;
        let mut gen_degrees: Vec<u32> =
            ap.normalized_generators().iter().map(|g| g.degree().expect("nonzero")).collect();
        gen_degrees.sort_unstable();
        gen_degrees.dedup();
        for &d in &gen_degrees {
            let piece = graded.piece(d)?;
            total += (piece.ech.rank() - piece.rank_excl) as u128;
            if let Some(s) = stop_at {
                if total >= s as u128 {
                    return Ok(GeneratorCount::AtLeast(total as u64));
                }
            }
        }
        // power degree: count_l minus dim (X * I)_l
        let count_l = monomial_count(n, l);
        let rows_excl: u128 = ap
            .normalized_generators()
            .iter()
            .map(|g| monomial_count(n, l - g.degree().expect("nonzero")))
            .sum();
        if let Some(s) = stop_at {
            // sound lower bound: rank of the excluded span is at most its row count
            let lb = total + count_l.saturating_sub(rows_excl);
            if lb >= s as u128 {
                return Ok(GeneratorCount::AtLeast(lb.min(u64::MAX as u128) as u64));
            }
        }
        let piece = graded.piece(l);
        match piece {
            Ok(p) => {
                total += count_l - p.rank_excl as u128;
                Ok(GeneratorCount::Exact(total as u64))
            }
            Err(AlgebraError::TooLarge(_)) => {
                // dim (X * I)_l is at most the number of product rows
                let lb = total + count_l.saturating_sub(rows_excl);
                Ok(GeneratorCount::AtLeast(lb.min(u64::MAX as u128) as u64))
            }
            Err(e) => Err(e),
        }
    } else {
        // truncate below l+1: both I and <X>I contain <X>^{l+1}
        if monomial_count_below(n, l + 1) > TRUNC_COLS_CAP {
            return Ok(GeneratorCount::AtLeast(0));
        }
        let gens = ap.normalized_generators();
        let ideal_rows = TruncWide::new(field, n, gens, l, true)?;
        let radical_rows = TruncWide::new(field, n, gens, l, false)?;
        let m = ideal_rows.rank() as u64 - radical_rows.rank() as u64;
        Ok(GeneratorCount::Exact(m))
    }
}

pub fn minimal_generator_count(ap: &AdmissiblePresentation) -> Result<u64, AlgebraError> {
    match minimal_generator_count_bounded(ap, None)? {
        GeneratorCount::Exact(m) => Ok(m),
        GeneratorCount::AtLeast(_) => Err(AlgebraError::TooLarge("minimal generator count".into())),
    }
}

/// Span of I (or <X>I) truncated below degree l+1, power part included.
struct TruncWide {
    ech: Echelon,
}

impl TruncWide {
    fn new(
        field: FieldSpec,
        n_vars: usize,
        gens: &[Polynomial],
        l: u32,
        include_unit_multiplier: bool,
    ) -> Result<Self, AlgebraError> {
        let bound = l + 1;
        let mut cols: Vec<Monomial> = Vec::new();
        for d in 0..bound {
            cols.extend(monomials_of_degree(n_vars, d));
        }
        let index: HashMap<Monomial, usize> =
            cols.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect();
        let mut ech = Echelon::new(field);
        let mut insert = |f: &Polynomial| {
            let t = f.truncate_below_degree(bound);
            if t.is_zero() {
                return;
            }
            let row: SparseRow = t.terms().map(|(m, c)| (index[m], c.clone())).collect();
            ech.insert(row);
        };
        let lo = if include_unit_multiplier { 0 } else { 1 };
        for g in gens {
            let go = g.order().expect("nonzero");
            for a in lo..bound {
                if a + go >= bound {
                    break;
                }
                for m in monomials_of_degree(n_vars, a) {
                    insert(&g.mul_term(&m, &field.one()));
                }
            }
        }
        // power part: <X>^l itself, or <X> * <X>^l for the radical multiple
        let power_degree = if include_unit_multiplier { l } else { l + 1 };
        if power_degree < bound {
            for m in monomials_of_degree(n_vars, power_degree) {
                insert(&Polynomial::term(field, m, field.one()));
            }
        }
        Ok(TruncWide { ech })
    }

    fn rank(&self) -> usize {
        self.ech.rank()
    }
}

/// The ideal of lowest-degree homogeneous components of elements of I,
/// as a validated (homogeneous) presentation. Fixed point on homogeneous
/// input.
pub fn associated_graded_ideal(
    ap: &AdmissiblePresentation,
) -> Result<AdmissiblePresentation, AlgebraError> {
    if ap.has_homogeneous_generators() {
        return Ok(ap.clone());
    }
    let trunc = ap.trunc_view()?;
    let field = ap.field();
    let n = ap.n_vars();
    let l = ap.lowey_length();
    // minimalize: keep only components outside the ideal of the ones kept so far
    let mut kept: Vec<Polynomial> = Vec::new();
    for d in 2..l {
        for comp in trunc.lowest_components_at(d) {
            let already = {
                let mut graded = GradedIdeal::new(field, n, &kept, l);
                graded.member(&comp)?
            };
            if !already {
                kept.push(comp);
            }
        }
    }
    let pres = IdealPresentation::new(field, n, kept, Some(l))?;
    validate_admissible(&pres)
}

// ---------------------------------------------------------------------------
// quotient algebra
// ---------------------------------------------------------------------------

type SparseCol = Vec<(usize, Scalar)>;

/// A = K[X]/I materialized on its standard-monomial basis with
/// multiplication-by-variable tables.
pub struct QuotientAlgebra {
    field: FieldSpec,
    n_vars: usize,
    basis: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
    mult_var: Vec<Vec<SparseCol>>,
    gb: GroebnerBasis,
}

pub fn quotient_algebra(
    ap: &AdmissiblePresentation,
    dim_cap: usize,
) -> Result<QuotientAlgebra, AlgebraError> {
    let dim = algebra_dimension(ap)?;
    if dim > dim_cap as u64 {
        return Err(AlgebraError::TooLarge(format!("dim A = {dim} exceeds cap {dim_cap}")));
    }
    let gb = ap.groebner()?.clone();
    let basis = match groebner::standard_monomials_capped(&gb, dim_cap) {
        Ok(StandardMonomials::Finite(b)) => b,
        Ok(StandardMonomials::Infinite) => return Err(AlgebraError::InfiniteDimensional),
        Err(_) => return Err(AlgebraError::TooLarge("standard monomial enumeration".into())),
    };
    debug_assert_eq!(basis.len() as u64, dim);
    let field = ap.field();
    let n_vars = ap.n_vars();
    let index: HashMap<Monomial, usize> =
        basis.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect();
    let mut mult_var = Vec::with_capacity(n_vars);
    for i in 0..n_vars {
        let xi = Monomial::var(n_vars, i);
        let mut cols = Vec::with_capacity(basis.len());
        for b in &basis {
            let prod = Polynomial::term(field, b.mul(&xi), field.one());
            let nf = groebner::normal_form(&prod, &gb);
            let col: SparseCol = nf.terms().map(|(m, c)| (index[m], c.clone())).collect();
            cols.push(col);
        }
        mult_var.push(cols);
    }
    Ok(QuotientAlgebra { field, n_vars, basis, index, mult_var, gb })
}

impl QuotientAlgebra {
    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn n_vars(&self) -> usize {
        self.n_vars
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Monomial] {
        &self.basis
    }

    pub fn groebner(&self) -> &GroebnerBasis {
        &self.gb
    }

    pub fn basis_index(&self, m: &Monomial) -> Option<usize> {
        self.index.get(m).copied()
    }

    /// Coordinates of the class of `f` on the standard-monomial basis.
    pub fn coords_of(&self, f: &Polynomial) -> Vec<Scalar> {
        let nf = groebner::normal_form(f, &self.gb);
        let mut v = vec![self.field.zero(); self.dim()];
        for (m, c) in nf.terms() {
            v[self.index[m]] = c.clone();
        }
        v
    }

    pub fn poly_of(&self, coords: &[Scalar]) -> Polynomial {
        Polynomial::from_terms(
            self.field,
            self.n_vars,
            coords
                .iter()
                .enumerate()
                .filter(|(_, c)| !self.field.is_zero(c))
                .map(|(i, c)| (self.basis[i].clone(), c.clone())),
        )
    }

    pub fn zero_vec(&self) -> Vec<Scalar> {
        vec![self.field.zero(); self.dim()]
    }

    /// v := v + c * (x_i * b_j) in coordinates.
    fn accumulate_var_mult(&self, v: &mut [Scalar], i: usize, j: usize, c: &Scalar) {
        for (t, coeff) in &self.mult_var[i][j] {
            v[*t] = self.field.add(&v[*t], &self.field.mul(coeff, c));
        }
    }

    /// Multiply an element (coordinates) by the variable x_i.
    pub fn mul_var(&self, i: usize, v: &[Scalar]) -> Vec<Scalar> {
        let mut out = self.zero_vec();
        for (j, c) in v.iter().enumerate() {
            if self.field.is_zero(c) {
                continue;
            }
            self.accumulate_var_mult(&mut out, i, j, c);
        }
        out
    }

    /// Multiply an element by a monomial (repeated variable multiplication).
    pub fn mul_monomial(&self, m: &Monomial, v: &[Scalar]) -> Vec<Scalar> {
        let mut out = v.to_vec();
        for (i, &e) in m.exps().iter().enumerate() {
            for _ in 0..e {
                out = self.mul_var(i, &out);
            }
        }
        out
    }

    /// Product of two elements in coordinates.
    pub fn mul_elements(&self, a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
        let mut out = self.zero_vec();
        for (j, c) in a.iter().enumerate() {
            if self.field.is_zero(c) {
                continue;
            }
            let scaled: Vec<Scalar> = b.iter().map(|x| self.field.mul(x, c)).collect();
            let shifted = self.mul_monomial(&self.basis[j], &scaled);
            for (t, x) in shifted.iter().enumerate() {
                out[t] = self.field.add(&out[t], x);
            }
        }
        out
    }
}
