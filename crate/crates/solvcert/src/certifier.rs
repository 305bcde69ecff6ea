//! Solvability certification rules for G_A, the identity component of the
//! automorphism group of A = K[X1..Xn]/I, and the verdict pipeline.
//!
//! Every rule is one-sided and sound; when no rule applies the verdict is
//! `Inconclusive`. All applicable rules are evaluated and must agree.

use crate::algebra::{
    self, AdmissiblePresentation, AlgebraError, GeneratorCount, GradedIdeal,
};
use crate::field::FieldSpec;
use crate::groebner;
use crate::linalg::Echelon;
use crate::poly::{monomial_count, monomials_of_degree, Monomial, Polynomial};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeSet;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CertError {
    #[error("the ideal is not homogeneous")]
    NotHomogeneous,
    #[error("certification rules disagree: {0}")]
    Conflict(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// Degree-d slice of a homogeneous ideal, d minimal: the unique subspace of
/// lowest-degree forms, stable under every linear change preserving I.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MinimalDegreeSubspace {
    pub degree: u32,
    pub basis: Vec<Polynomial>,
}

impl MinimalDegreeSubspace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Verdict {
    CertifiedSolvable,
    CertifiedNotSolvable,
    Inconclusive,
}

impl Verdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            Verdict::CertifiedSolvable => "certified_solvable",
            Verdict::CertifiedNotSolvable => "certified_not_solvable",
            Verdict::Inconclusive => "inconclusive",
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Polarity {
    Solvable,
    NotSolvable,
}

impl Polarity {
    pub fn as_str(&self) -> &'static str {
        match self {
            Polarity::Solvable => "solvable",
            Polarity::NotSolvable => "not_solvable",
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum CertRule {
    N1SingleVar,
    PwPowerIdeal,
    D2DimTwo,
    C1RegularSequence,
    C23Nonsingular,
    QdQuadric,
    PsPropertySharp,
    SpSubpower,
    PkGeneratorCount,
    GrGradedFallback,
}

impl CertRule {
    pub fn tag(&self) -> &'static str {
        match self {
            CertRule::N1SingleVar => "N1_SINGLE_VAR",
            CertRule::PwPowerIdeal => "PW_POWER_IDEAL",
            CertRule::D2DimTwo => "D2_DIM_TWO",
            CertRule::C1RegularSequence => "C1_REGULAR_SEQUENCE",
            CertRule::C23Nonsingular => "C23_NONSINGULAR",
            CertRule::QdQuadric => "QD_QUADRIC",
            CertRule::PsPropertySharp => "PS_PROPERTY_SHARP",
            CertRule::SpSubpower => "SP_SUBPOWER",
            CertRule::PkGeneratorCount => "PK_GENERATOR_COUNT",
            CertRule::GrGradedFallback => "GR_GRADED_FALLBACK",
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FiredRule {
    pub rule: CertRule,
    pub polarity: Polarity,
    pub witness: Option<Polynomial>,
    pub detail: String,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum NilpotencyAnnotation {
    /// R != 0, R^2 = 0, dim R = 1: if G_A is nilpotent it is a torus (and
    /// here G_A is in fact a one-dimensional torus).
    Torus,
    /// R^2 != 0: a nilpotent G_A would have to be unipotent.
    UnipotentIfNilpotent,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ReportInvariants {
    pub dim_a: Option<u64>,
    pub n: usize,
    pub lowey: u32,
    pub dim_w: u64,
    pub min_degree: u32,
    pub min_generators: Option<u64>,
    pub homogeneous: bool,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CertReport {
    pub verdict: Verdict,
    pub fired_rules: Vec<FiredRule>,
    pub invariants: ReportInvariants,
    pub rank_bound: u64,
    pub notes: Vec<String>,
    pub nilpotency_annotation: Option<NilpotencyAnnotation>,
}

/// Randomized-search parameters for the nonsingular-element rule.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct SearchConfig {
    pub seed: u64,
    pub trials: u32,
    pub coefficient_bound: i64,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig { seed: 0, trials: 64, coefficient_bound: 10 }
    }
}

const W_BASIS_CAP: u128 = 100_000;
const ADVISORY_CAP: usize = 20_000;
const SUBPOWER_VAR_CAP: usize = 16;

/// The minimal degree subspace W = I ∩ K[X]_d, d minimal. Requires a
/// homogeneous ideal; for a power ideal W is the full degree-l slice.
pub fn minimal_degree_subspace(
    ap: &AdmissiblePresentation,
) -> Result<MinimalDegreeSubspace, CertError> {
    if !ap.is_homogeneous_ideal()? {
        return Err(CertError::NotHomogeneous);
    }
    let j = graded_object(ap)?;
    if j.is_power_ideal() {
        let l = j.lowey_length();
        if monomial_count(j.n_vars(), l) > W_BASIS_CAP {
            return Err(CertError::Algebra(AlgebraError::TooLarge(
                "power-ideal minimal degree subspace".into(),
            )));
        }
        let field = j.field();
        let basis = monomials_of_degree(j.n_vars(), l)
            .into_iter()
            .map(|m| Polynomial::term(field, m, field.one()))
            .collect();
        return Ok(MinimalDegreeSubspace { degree: l, basis });
    }
    Ok(subspace_of_graded(&j))
}

/// W for a presentation already known to have homogeneous generators.
fn subspace_of_graded(j: &AdmissiblePresentation) -> MinimalDegreeSubspace {
    let d = j.min_degree();
    let field = j.field();
    let cols = monomials_of_degree(j.n_vars(), d);
    let mut ech = Echelon::new(field);
    let mut basis = Vec::new();
    for g in j.normalized_generators() {
        if g.degree() != Some(d) {
            continue;
        }
        let row: Vec<(usize, _)> = g
            .terms()
            .map(|(m, c)| (cols.binary_search(m).expect("degree d"), c.clone()))
            .collect();
        if ech.insert(row).is_some() {
            basis.push(g.clone());
        }
    }
    MinimalDegreeSubspace { degree: d, basis }
}

/// The homogeneous presentation certify works on: the input itself when its
/// generators are homogeneous, otherwise the associated graded ideal.
fn graded_object(ap: &AdmissiblePresentation) -> Result<AdmissiblePresentation, CertError> {
    if ap.has_homogeneous_generators() {
        Ok(ap.clone())
    } else {
        Ok(algebra::associated_graded_ideal(ap)?)
    }
}

/// A nonzero homogeneous form is nonsingular iff the origin is the only
/// common zero of its partial derivatives, i.e. the Jacobian ideal is
/// zero-dimensional.
pub fn is_nonsingular(f: &Polynomial) -> Result<bool, CertError> {
    if f.is_zero() || !f.is_homogeneous() || f.degree() == Some(0) {
        return Err(CertError::NotHomogeneous);
    }
    let partials: Vec<Polynomial> = (0..f.n_vars())
        .map(|i| f.partial_derivative(i).expect("in range"))
        .filter(|p| !p.is_zero())
        .collect();
    if partials.is_empty() {
        return Ok(false);
    }
    let gb = groebner::buchberger(&partials);
    Ok(groebner::is_zero_dimensional(&gb))
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum NonsingularSearch {
    /// The rule's degree/characteristic window does not apply.
    NotApplicable,
    /// A nonsingular element of W; a certificate.
    Found(Polynomial),
    /// Sampling found nothing. Not a certificate of absence.
    NotFound,
}

/// Tests the basis elements of W, then seeded random combinations with
/// coefficients in [-B, B]. A found witness certifies; absence certifies
/// nothing.
pub fn search_nonsingular(
    w: &MinimalDegreeSubspace,
    field: FieldSpec,
    cfg: &SearchConfig,
) -> Result<NonsingularSearch, CertError> {
    let d = w.degree;
    let p = field.characteristic();
    let applicable = d >= 3 && (p == 0 || (p > 3 && u64::from(d) < p));
    if !applicable {
        return Ok(NonsingularSearch::NotApplicable);
    }
    for f in &w.basis {
        if is_nonsingular(f)? {
            return Ok(NonsingularSearch::Found(f.clone()));
        }
    }
    let k = w.basis.len();
    let b = cfg.coefficient_bound.max(1);
    for trial in 0..cfg.trials {
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
        rng.set_stream(1 + trial as u64);
        let coeffs: Vec<i64> = loop {
            let c: Vec<i64> = (0..k).map(|_| rng.gen_range(-b..=b)).collect();
            if c.iter().any(|&x| x != 0) {
                break c;
            }
        };
        let mut f = Polynomial::zero(field, w.basis[0].n_vars());
        for (c, g) in coeffs.iter().zip(&w.basis) {
            f = f.add(&g.scale(&field.from_i64(*c)));
        }
        if !f.is_zero() && is_nonsingular(&f)? {
            return Ok(NonsingularSearch::Found(f));
        }
    }
    Ok(NonsingularSearch::NotFound)
}

/// Outcome of the monomial-replacement criterion. Advisory only: it never
/// drives the verdict.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AdvisoryPrediction {
    pub predicts_solvable: bool,
    /// a pair (i, j) of interchangeable variables, when one exists
    pub equivalent_pair: Option<(usize, usize)>,
}

/// For monomial ideals: variables i and j are interchangeable when every
/// single-variable replacement between them maps degree < l members of I
/// into I (members of degree >= l always stay inside). Predicts solvable
/// iff no interchangeable pair exists.
pub fn monomial_advisory(ap: &AdmissiblePresentation) -> Option<AdvisoryPrediction> {
    if !ap.field().is_rational() {
        return None;
    }
    if !ap.normalized_generators().iter().all(|g| g.num_terms() == 1) {
        return None;
    }
    let l = ap.lowey_length();
    let n = ap.n_vars();
    let gens: Vec<Monomial> = ap
        .normalized_generators()
        .iter()
        .map(|g| g.leading_monomial().expect("nonzero").clone())
        .collect();
    // all monomial members of I with degree < l
    let mut members: BTreeSet<Monomial> = BTreeSet::new();
    let mut queue: Vec<Monomial> = gens.clone();
    while let Some(m) = queue.pop() {
        if m.degree() >= l || members.contains(&m) {
            continue;
        }
        if members.len() >= ADVISORY_CAP {
            return None;
        }
        members.insert(m.clone());
        for i in 0..n {
            queue.push(m.mul(&Monomial::var(n, i)));
        }
    }
    let in_ideal = |m: &Monomial| m.degree() >= l || gens.iter().any(|g| g.divides(m));
    let interchangeable = |i: usize, j: usize| {
        members.iter().all(|m| {
            let fwd = match m.replace_once(j, i) {
                Some(r) => in_ideal(&r),
                None => true,
            };
            let bwd = match m.replace_once(i, j) {
                Some(r) => in_ideal(&r),
                None => true,
            };
            fwd && bwd
        })
    };
    for i in 0..n {
        for j in i + 1..n {
            if interchangeable(i, j) {
                return Some(AdvisoryPrediction {
                    predicts_solvable: false,
                    equivalent_pair: Some((i, j)),
                });
            }
        }
    }
    Some(AdvisoryPrediction { predicts_solvable: true, equivalent_pair: None })
}

// ---------------------------------------------------------------------------
// individual rules (all but the first three want homogeneous generators)
// ---------------------------------------------------------------------------

/// n = 1: any admissible quotient K[X]/<X^l> has solvable G_A.
fn rule_single_var(ap: &AdmissiblePresentation) -> Option<FiredRule> {
    (ap.n_vars() == 1).then(|| FiredRule {
        rule: CertRule::N1SingleVar,
        polarity: Polarity::Solvable,
        witness: None,
        detail: "single variable: the image in GL(R/R^2) is 1x1 and the kernel is unipotent"
            .into(),
    })
}

/// I = <X>^l with n >= 2: the automorphism group contains GL_n.
fn rule_power_ideal(ap: &AdmissiblePresentation) -> Option<FiredRule> {
    (ap.is_power_ideal() && ap.n_vars() >= 2).then(|| FiredRule {
        rule: CertRule::PwPowerIdeal,
        polarity: Polarity::NotSolvable,
        witness: None,
        detail: format!(
            "I equals the power ideal <X>^{}; GL_{} acts",
            ap.lowey_length(),
            ap.n_vars()
        ),
    })
}

/// n = 2, characteristic 0: complete dichotomy. A is either isomorphic to
/// K[X,Y]/<X,Y>^l (not solvable) or G_A is solvable. Decided on the
/// associated graded ideal; its power-ideal case forces I itself to be the
/// power ideal because the filtration dimensions match.
fn rule_dim_two(ap: &AdmissiblePresentation, j: &AdmissiblePresentation) -> Option<FiredRule> {
    if ap.n_vars() != 2 || !ap.field().is_rational() {
        return None;
    }
    if j.is_power_ideal() {
        Some(FiredRule {
            rule: CertRule::D2DimTwo,
            polarity: Polarity::NotSolvable,
            witness: None,
            detail: format!(
                "dim R/R^2 = 2 and A is isomorphic to K[X,Y]/<X,Y>^{}",
                ap.lowey_length()
            ),
        })
    } else {
        Some(FiredRule {
            rule: CertRule::D2DimTwo,
            polarity: Polarity::Solvable,
            witness: None,
            detail: "dim R/R^2 = 2 and A is not isomorphic to a power-ideal quotient".into(),
        })
    }
}

/// char 0, dim W = n and the basis of W generates a zero-dimensional ideal
/// (regular sequence of homogeneous forms).
fn rule_condition_1(j: &AdmissiblePresentation, w: &MinimalDegreeSubspace) -> Option<FiredRule> {
    if !j.field().is_rational() || w.dim() != j.n_vars() {
        return None;
    }
    let gb = groebner::buchberger(&w.basis);
    groebner::is_zero_dimensional(&gb).then(|| FiredRule {
        rule: CertRule::C1RegularSequence,
        polarity: Polarity::Solvable,
        witness: None,
        detail: format!("dim W = n = {} and the basis of W is a regular sequence", w.dim()),
    })
}

/// W contains a nonsingular form of degree >= 3 (char 0) or of degree d with
/// 3 <= d < p (char p > 3). Existential: only a found witness fires.
fn rule_nonsingular(
    j: &AdmissiblePresentation,
    w: &MinimalDegreeSubspace,
    cfg: &SearchConfig,
    notes: &mut Vec<String>,
) -> Result<Option<FiredRule>, CertError> {
    match search_nonsingular(w, j.field(), cfg)? {
        NonsingularSearch::NotApplicable => Ok(None),
        NonsingularSearch::NotFound => {
            notes.push(format!(
                "no nonsingular element of W found in {} seeded trials (not a certificate of absence)",
                cfg.trials
            ));
            Ok(None)
        }
        NonsingularSearch::Found(f) => Ok(Some(FiredRule {
            rule: CertRule::C23Nonsingular,
            polarity: Polarity::Solvable,
            witness: Some(f),
            detail: format!("W contains a nonsingular form of degree {}", w.degree),
        })),
    }
}

/// I = <X>^l + <q> for a single nonsingular quadric q, char != 2:
/// not solvable for n >= 3 (special orthogonal group inside), solvable for
/// n = 2 (the identity-component stabilizer of a nonsingular binary quadric
/// is a one-dimensional torus).
fn rule_quadric(
    j: &AdmissiblePresentation,
    w: &MinimalDegreeSubspace,
    notes: &mut Vec<String>,
) -> Result<Option<FiredRule>, CertError> {
    let n = j.n_vars();
    if j.field().characteristic() == 2 || n < 2 || w.degree != 2 || w.dim() != 1 {
        return Ok(None);
    }
    let q = &w.basis[0];
    if !is_nonsingular(q)? {
        return Ok(None);
    }
    // I = <X>^l + <q>: every generator must lie in the ideal generated by q
    let gens = [q.clone()];
    let mut span = GradedIdeal::new(j.field(), n, &gens, j.lowey_length());
    for g in j.normalized_generators() {
        match span.member(g) {
            Ok(true) => {}
            Ok(false) => return Ok(None),
            Err(AlgebraError::TooLarge(msg)) => {
                notes.push(format!("quadric rule skipped: {msg}"));
                return Ok(None);
            }
            Err(e) => return Err(e.into()),
        }
    }
    if n >= 3 {
        Ok(Some(FiredRule {
            rule: CertRule::QdQuadric,
            polarity: Polarity::NotSolvable,
            witness: Some(q.clone()),
            detail: format!("I = <X>^l + <q> with q a nonsingular quadric and n = {n} > 2"),
        }))
    } else {
        Ok(Some(FiredRule {
            rule: CertRule::QdQuadric,
            polarity: Polarity::Solvable,
            witness: Some(q.clone()),
            detail: "I = <X>^l + <q> with q a nonsingular binary quadric; the identity \
                     component of its stabilizer is a one-dimensional torus"
                .into(),
        }))
    }
}

/// All generators are non-monomial homogeneous forms in the variables
/// X3..Xn: GL_2 acting on X1, X2 stabilizes I.
fn rule_property_sharp(j: &AdmissiblePresentation) -> Option<FiredRule> {
    if j.n_vars() < 4 || j.is_power_ideal() {
        return None;
    }
    let qualifies = j.normalized_generators().iter().all(|g| {
        g.num_terms() > 1
            && g.is_homogeneous()
            && g.terms().all(|(m, _)| m.support().all(|i| i >= 2))
    });
    qualifies.then(|| FiredRule {
        rule: CertRule::PsPropertySharp,
        polarity: Polarity::NotSolvable,
        witness: None,
        detail: "all generators are non-monomial forms in X3..Xn; GL_2 on (X1, X2) \
                 stabilizes I"
            .into(),
    })
}

/// I = <X>^l + <S>^m for a proper variable subset S, |S| >= 2: a general
/// linear group acts on the complementary variables.
fn rule_subpower(
    j: &AdmissiblePresentation,
    notes: &mut Vec<String>,
) -> Result<Option<FiredRule>, CertError> {
    let n = j.n_vars();
    if n < 3 || j.is_power_ideal() {
        return Ok(None);
    }
    if n > SUBPOWER_VAR_CAP {
        notes.push(format!(
            "subpower rule skipped: {n} variables exceed the 2^n subset enumeration cap"
        ));
        return Ok(None);
    }
    // the candidate exponent is forced: the order of <X>^l + <S>^m is m
    let m = j.min_degree();
    if m >= j.lowey_length() {
        return Ok(None);
    }
    let mut graded = j.graded_view();
    'subsets: for mask in 1u32..(1 << n) {
        let size = mask.count_ones() as usize;
        if size < 2 || size == n {
            continue;
        }
        let s: Vec<usize> = (0..n).filter(|i| mask & (1 << i) != 0).collect();
        // I <= <X>^l + <S>^m is a termwise condition (monomial ideal)
        for g in j.normalized_generators() {
            let termwise =
                g.terms().all(|(mon, _)| s.iter().map(|&i| mon.exps()[i] as u32).sum::<u32>() >= m);
            if !termwise {
                continue 'subsets;
            }
        }
        // and <S>^m <= I
        for sub in monomials_of_degree(size, m) {
            let mut exps = vec![0u16; n];
            for (k, &i) in s.iter().enumerate() {
                exps[i] = sub.exps()[k];
            }
            let mono = Polynomial::term(j.field(), Monomial::from_exps(exps), j.field().one());
            match graded.member(&mono) {
                Ok(true) => {}
                Ok(false) => continue 'subsets,
                Err(AlgebraError::TooLarge(msg)) => {
                    notes.push(format!("subpower rule skipped: {msg}"));
                    return Ok(None);
                }
                Err(e) => return Err(e.into()),
            }
        }
        let names: Vec<String> = s.iter().map(|i| format!("X{}", i + 1)).collect();
        return Ok(Some(FiredRule {
            rule: CertRule::SpSubpower,
            polarity: Polarity::NotSolvable,
            witness: None,
            detail: format!(
                "I = <X>^{} + <{}>^{}; GL_{} acts on the complementary variables",
                j.lowey_length(),
                names.join(", "),
                m,
                n - size,
            ),
        }));
    }
    Ok(None)
}

/// char 0 and the minimal generator count satisfies m < n + d - 1, where d is
/// the order of I. The finiteness and unique-maximal-ideal hypotheses hold
/// structurally for admissible presentations.
fn rule_generator_count(
    j: &AdmissiblePresentation,
    notes: &mut Vec<String>,
) -> Result<Option<FiredRule>, CertError> {
    if !j.field().is_rational() {
        return Ok(None);
    }
    let n = j.n_vars() as u64;
    let d = u64::from(j.min_degree());
    let threshold = n + d - 1;
    match algebra::minimal_generator_count_bounded(j, Some(threshold))? {
        GeneratorCount::Exact(m) if m < threshold => Ok(Some(FiredRule {
            rule: CertRule::PkGeneratorCount,
            polarity: Polarity::Solvable,
            witness: None,
            detail: format!(
                "minimal generator count {m} is below n + d - 1 = {threshold}; the quotient \
                 is finite-dimensional and <X> is the only maximal ideal containing I since \
                 <X>^l <= I <= <X>^{d}"
            ),
        })),
        GeneratorCount::Exact(_) => Ok(None),
        GeneratorCount::AtLeast(b) if b >= threshold => Ok(None),
        GeneratorCount::AtLeast(_) => {
            notes.push(
                "generator-count rule skipped: minimal generator count not computable at this size"
                    .into(),
            );
            Ok(None)
        }
    }
}

// ---------------------------------------------------------------------------
// pipeline
// ---------------------------------------------------------------------------

/// Runs every applicable rule, requires unanimous polarity, and assembles the
/// report. Identical input and seed give an identical report.
pub fn certify(ap: &AdmissiblePresentation, cfg: &SearchConfig) -> Result<CertReport, CertError> {
    let n = ap.n_vars();
    let lowey = ap.lowey_length();
    let mut notes: Vec<String> = Vec::new();
    let mut fired: Vec<FiredRule> = Vec::new();

    let homogeneous = ap.is_homogeneous_ideal()?;
    let j = graded_object(ap)?;
    // when I itself is not homogeneous, verdicts on `j` concern the
    // associated graded algebra and only solvability transfers back to A
    let on_graded_only = !homogeneous;

    // direct rules about A
    if let Some(r) = rule_single_var(ap) {
        fired.push(r);
    }
    if let Some(r) = rule_power_ideal(ap) {
        fired.push(r);
    }
    if let Some(r) = rule_dim_two(ap, &j) {
        fired.push(r);
    }

    // homogeneous ruleset on the graded object; the minimal-degree-subspace
    // rules need the strict inclusion <X>^l < I, i.e. surviving generators
    let mut graded_fired: Vec<FiredRule> = Vec::new();
    let w = (!j.is_power_ideal()).then(|| subspace_of_graded(&j));
    if let Some(w) = &w {
        if let Some(r) = rule_condition_1(&j, w) {
            graded_fired.push(r);
        }
        if let Some(r) = rule_nonsingular(&j, w, cfg, &mut notes)? {
            graded_fired.push(r);
        }
        if let Some(r) = rule_quadric(&j, w, &mut notes)? {
            graded_fired.push(r);
        }
        if let Some(r) = rule_property_sharp(&j) {
            graded_fired.push(r);
        }
        if let Some(r) = rule_subpower(&j, &mut notes)? {
            graded_fired.push(r);
        }
    }
    if let Some(r) = rule_generator_count(&j, &mut notes)? {
        graded_fired.push(r);
    }

    check_unanimity(&graded_fired, "the graded object")?;
    let c23_fired = graded_fired.iter().any(|r| r.rule == CertRule::C23Nonsingular);

    if !on_graded_only {
        fired.extend(graded_fired);
    } else {
        for gf in graded_fired {
            match gf.polarity {
                Polarity::Solvable => fired.push(FiredRule {
                    rule: CertRule::GrGradedFallback,
                    polarity: Polarity::Solvable,
                    witness: gf.witness,
                    detail: format!(
                        "{} holds for the associated graded algebra; solvability descends to A",
                        gf.rule.tag()
                    ),
                }),
                Polarity::NotSolvable => notes.push(format!(
                    "{} certifies the associated graded algebra not solvable; this does not \
                     transfer to A",
                    gf.rule.tag()
                )),
            }
        }
    }

    check_unanimity(&fired, "A")?;
    let verdict = match fired.first().map(|r| r.polarity) {
        Some(Polarity::Solvable) => Verdict::CertifiedSolvable,
        Some(Polarity::NotSolvable) => Verdict::CertifiedNotSolvable,
        None => Verdict::Inconclusive,
    };

    // advisory, never verdict-driving
    if let Some(adv) = monomial_advisory(ap) {
        match adv.equivalent_pair {
            Some((i, j)) => notes.push(format!(
                "monomial criterion predicts not solvable: X{} and X{} are interchangeable",
                i + 1,
                j + 1
            )),
            None => notes.push("monomial criterion predicts solvable".into()),
        }
    }

    let nilpotency_annotation = if n == 1 && lowey == 2 {
        Some(NilpotencyAnnotation::Torus)
    } else if lowey >= 3 {
        Some(NilpotencyAnnotation::UnipotentIfNilpotent)
    } else {
        None
    };

    let dim_w = match &w {
        Some(w) => w.dim() as u64,
        // power ideal: W is the whole degree-l slice
        None => monomial_count(n, j.lowey_length()).min(u128::from(u64::MAX)) as u64,
    };
    let rank_bound = if c23_fired { dim_w.min(n as u64) } else { n as u64 };

    let dim_a = match algebra::algebra_dimension(ap) {
        Ok(d) => Some(d),
        Err(AlgebraError::TooLarge(msg)) => {
            notes.push(format!("dim A not computed: {msg}"));
            None
        }
        Err(e) => return Err(e.into()),
    };
    let min_generators = match algebra::minimal_generator_count_bounded(ap, None)? {
        GeneratorCount::Exact(m) => Some(m),
        GeneratorCount::AtLeast(b) => {
            notes.push(format!("minimal generator count not computed at this size (>= {b})"));
            None
        }
    };

    Ok(CertReport {
        verdict,
        fired_rules: fired,
        invariants: ReportInvariants {
            dim_a,
            n,
            lowey,
            dim_w,
            min_degree: j.min_degree(),
            min_generators,
            homogeneous,
        },
        rank_bound,
        notes,
        nilpotency_annotation,
    })
}

fn check_unanimity(fired: &[FiredRule], scope: &str) -> Result<(), CertError> {
    let has_solvable = fired.iter().any(|r| r.polarity == Polarity::Solvable);
    let has_not = fired.iter().any(|r| r.polarity == Polarity::NotSolvable);
    if has_solvable && has_not {
        let tags: Vec<&str> = fired.iter().map(|r| r.rule.tag()).collect();
        return Err(CertError::Conflict(format!(
            "rules of both polarities fired on {scope}: {}",
            tags.join(", ")
        )));
    }
    Ok(())
}
