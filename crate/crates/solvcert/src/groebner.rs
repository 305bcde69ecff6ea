//! Buchberger engine: reduced Groebner bases under grevlex, normal forms,
//! membership, ideal equality, standard monomials.

use crate::field::FieldSpec;
use crate::poly::{Monomial, Polynomial};
use std::collections::{BTreeSet, VecDeque};

/// Reduced Groebner basis: monic elements, no leading monomial divides
/// another, every tail term irreducible. Uniquely determined by the ideal.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GroebnerBasis {
    field: FieldSpec,
    n_vars: usize,
    basis: Vec<Polynomial>, // sorted by leading monomial, ascending grevlex
    unit: bool,
}

/// Standard monomials of a zero-dimensional quotient, or the infinite flag.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum StandardMonomials {
    Finite(Vec<Monomial>),
    Infinite,
}

impl GroebnerBasis {
    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn n_vars(&self) -> usize {
        self.n_vars
    }

    pub fn elements(&self) -> &[Polynomial] {
        &self.basis
    }

    /// True when the ideal is the whole ring (basis {1}).
    pub fn is_unit_ideal(&self) -> bool {
        self.unit
    }

    pub fn leading_monomials(&self) -> impl Iterator<Item = &Monomial> {
        self.basis.iter().map(|g| g.leading_monomial().expect("basis elements nonzero"))
    }
}

/// Full reduction of `f` by `basis`: no term of the result is divisible by
/// any leading monomial of the basis.
fn reduce_full(f: &Polynomial, basis: &[Polynomial]) -> Polynomial {
    let field = f.field();
    let mut work = f.clone();
    let mut out = Polynomial::zero(field, f.n_vars());
    'outer: while let Some((m, c)) = work.leading_term().map(|(m, c)| (m.clone(), c.clone())) {
        for g in basis {
            let lt = g.leading_monomial().expect("nonzero");
            if let Some(q) = lt.div_into(&m) {
                let lc = g.leading_term().unwrap().1.clone();
                let factor = field.div(&c, &lc);
                work = work.sub(&g.mul_term(&q, &factor));
                continue 'outer;
            }
        }
        // irreducible leading term: move it to the output
        let t = Polynomial::term(field, m, c);
        out = out.add(&t);
        work = work.sub(&t);
    }
    out
}

/// Normal form of `f` modulo the ideal of `gb`; unique and idempotent.
pub fn normal_form(f: &Polynomial, gb: &GroebnerBasis) -> Polynomial {
    assert!(
        f.field() == gb.field && f.n_vars() == gb.n_vars,
        "polynomial and basis from different rings"
    );
    reduce_full(f, &gb.basis)
}

pub fn ideal_membership(f: &Polynomial, gb: &GroebnerBasis) -> bool {
    normal_form(f, gb).is_zero()
}

/// Equality of the ideals: reduced bases are identical as sets.
pub fn ideal_equal(a: &GroebnerBasis, b: &GroebnerBasis) -> bool {
    assert!(a.field == b.field && a.n_vars == b.n_vars);
    a.basis == b.basis
}

fn s_polynomial(f: &Polynomial, g: &Polynomial) -> Polynomial {
    let field = f.field();
    let (fm, fc) = f.leading_term().expect("nonzero");
    let (gm, gc) = g.leading_term().expect("nonzero");
    let l = fm.lcm(gm);
    let fq = fm.div_into(&l).unwrap();
    let gq = gm.div_into(&l).unwrap();
    let inv_fc = field.inv(fc).unwrap();
    let inv_gc = field.inv(gc).unwrap();
    f.mul_term(&fq, &inv_fc).sub(&g.mul_term(&gq, &inv_gc))
}

/// Buchberger's algorithm. Zero input polynomials are ignored; an ideal equal
/// to the whole ring comes back flagged as the unit ideal with basis {1}.
pub fn buchberger(generators: &[Polynomial]) -> GroebnerBasis {
    let nonzero: Vec<&Polynomial> = generators.iter().filter(|g| !g.is_zero()).collect();
    assert!(!nonzero.is_empty(), "no nonzero generators");
    let field = nonzero[0].field();
    let n_vars = nonzero[0].n_vars();
    for g in &nonzero {
        assert!(g.field() == field && g.n_vars() == n_vars, "mixed rings");
    }

    // monomial ideals: the minimal generators already form the reduced basis
    if nonzero.iter().all(|g| g.num_terms() == 1) {
        let lms: Vec<Monomial> = nonzero.iter().map(|g| g.leading_monomial().unwrap().clone()).collect();
        let minimal = minimal_monomials(lms);
        return finish(field, n_vars, minimal.into_iter().map(|m| Polynomial::term(field, m, field.one())).collect());
    }

    let mut basis: Vec<Polynomial> = Vec::new();
    for g in nonzero {
        let r = reduce_full(g, &basis);
        if !r.is_zero() {
            basis.push(r);
        }
    }

    // pending pairs keyed by (lcm degree, lcm, i, j) for the normal strategy
    let mut pending: BTreeSet<(u32, Monomial, usize, usize)> = BTreeSet::new();
    let mut in_queue: BTreeSet<(usize, usize)> = BTreeSet::new();
    let enqueue = |pending: &mut BTreeSet<(u32, Monomial, usize, usize)>,
                       in_queue: &mut BTreeSet<(usize, usize)>,
                       basis: &[Polynomial],
                       i: usize,
                       j: usize| {
        let l = basis[i]
            .leading_monomial()
            .unwrap()
            .lcm(basis[j].leading_monomial().unwrap());
        pending.insert((l.degree(), l, i, j));
        in_queue.insert((i, j));
    };
    for i in 0..basis.len() {
        for j in i + 1..basis.len() {
            enqueue(&mut pending, &mut in_queue, &basis, i, j);
        }
    }

    while let Some(entry) = pending.iter().next().cloned() {
        pending.remove(&entry);
        let (_, ref lcm_ij, i, j) = entry;
        in_queue.remove(&(i, j));

        let lt_i = basis[i].leading_monomial().unwrap();
        let lt_j = basis[j].leading_monomial().unwrap();
        // coprime leading monomials: S-polynomial reduces to zero
        if lt_i.coprime(lt_j) {
            continue;
        }
        // chain criterion: some LT(k) divides the lcm and both companion
        // pairs have already been handled
        let mut skip = false;
        for k in 0..basis.len() {
            if k == i || k == j {
                continue;
            }
            if basis[k].leading_monomial().unwrap().divides(lcm_ij)
                && !in_queue.contains(&(i.min(k), i.max(k)))
                && !in_queue.contains(&(j.min(k), j.max(k)))
            {
                skip = true;
                break;
            }
        }
        if skip {
            continue;
        }

        let s = s_polynomial(&basis[i], &basis[j]);
        let r = reduce_full(&s, &basis);
        if r.is_zero() {
            continue;
        }
        let new_idx = basis.len();
        basis.push(r);
        for k in 0..new_idx {
            enqueue(&mut pending, &mut in_queue, &basis, k, new_idx);
        }
    }

    finish(field, n_vars, basis)
}

/// Minimalize and inter-reduce into the unique reduced basis.
fn finish(field: FieldSpec, n_vars: usize, mut basis: Vec<Polynomial>) -> GroebnerBasis {
    // unit ideal: a nonzero constant appeared
    if basis.iter().any(|g| g.degree() == Some(0)) {
        return GroebnerBasis { field, n_vars, basis: vec![Polynomial::one(field, n_vars)], unit: true };
    }
    // keep only minimal leading monomials
    basis.sort_by(|a, b| a.leading_monomial().unwrap().cmp(b.leading_monomial().unwrap()));
    let mut kept: Vec<Polynomial> = Vec::new();
    for g in basis {
        let lm = g.leading_monomial().unwrap();
        if !kept.iter().any(|k| k.leading_monomial().unwrap().divides(lm)) {
            kept.push(g);
        }
    }
    // tail-reduce each element against the others and normalize
    let reduced: Vec<Polynomial> = (0..kept.len())
        .map(|i| {
            let others: Vec<Polynomial> =
                kept.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, g)| g.clone()).collect();
            let r = reduce_full(&kept[i], &others);
            let lc = r.leading_term().expect("minimal element stays nonzero").1.clone();
            r.scale(&field.inv(&lc).unwrap())
        })
        .collect();
    let mut basis = reduced;
    basis.sort_by(|a, b| a.leading_monomial().unwrap().cmp(b.leading_monomial().unwrap()));
    GroebnerBasis { field, n_vars, basis, unit: false }
}

/// Minimal generators of a monomial ideal (divisibility filter).
fn minimal_monomials(mut ms: Vec<Monomial>) -> Vec<Monomial> {
    ms.sort();
    ms.dedup();
    let mut out: Vec<Monomial> = Vec::new();
    for m in ms {
        if !out.iter().any(|k| k.divides(&m)) {
            out.push(m);
        }
    }
    out
}

/// Finite iff every variable has a pure power among the leading monomials.
pub fn is_zero_dimensional(gb: &GroebnerBasis) -> bool {
    if gb.unit {
        return true;
    }
    (0..gb.n_vars).all(|i| {
        gb.leading_monomials()
            .any(|m| m.support().collect::<Vec<_>>() == [i])
    })
}

/// Standard monomials (not divisible by any leading monomial); defined when
/// the quotient is finite-dimensional, otherwise `Infinite`.
pub fn standard_monomials(gb: &GroebnerBasis) -> StandardMonomials {
    match standard_monomials_capped(gb, usize::MAX) {
        Ok(sm) => sm,
        Err(_) => unreachable!("no cap"),
    }
}

/// As `standard_monomials` but fails once more than `cap` monomials exist.
pub fn standard_monomials_capped(gb: &GroebnerBasis, cap: usize) -> Result<StandardMonomials, usize> {
    if !is_zero_dimensional(gb) {
        return Ok(StandardMonomials::Infinite);
    }
    if gb.unit {
        return Ok(StandardMonomials::Finite(Vec::new()));
    }
    let lms: Vec<&Monomial> = gb.leading_monomials().collect();
    let mut seen: BTreeSet<Monomial> = BTreeSet::new();
    let mut queue: VecDeque<Monomial> = VecDeque::new();
    let one = Monomial::one(gb.n_vars);
    if lms.iter().all(|lm| !lm.divides(&one)) {
        seen.insert(one.clone());
        queue.push_back(one);
    }
    while let Some(m) = queue.pop_front() {
        for i in 0..gb.n_vars {
            let next = m.mul(&Monomial::var(gb.n_vars, i));
            if seen.contains(&next) {
                continue;
            }
            if lms.iter().any(|lm| lm.divides(&next)) {
                continue;
            }
            if seen.len() >= cap {
                return Err(seen.len() + 1);
            }
            seen.insert(next.clone());
            queue.push_back(next);
        }
    }
    Ok(StandardMonomials::Finite(seen.into_iter().collect()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::monomials_of_degree;

    fn q() -> FieldSpec {
        FieldSpec::rationals()
    }

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
    fn reduced_basis_of_simple_ideal() {
        // <X^2 + Y^2, Y^2> has reduced basis {Y^2, X^2}
        let gb = buchberger(&[p(q(), 2, &[(1, &[2, 0]), (1, &[0, 2])]), p(q(), 2, &[(1, &[0, 2])])]);
        assert_eq!(gb.elements(), &[p(q(), 2, &[(1, &[0, 2])]), p(q(), 2, &[(1, &[2, 0])])]);
        assert!(!gb.is_unit_ideal());
    }

    #[test]
    fn monomial_ideal_already_reduced() {
        let gens = [p(q(), 2, &[(1, &[2, 0])]), p(q(), 2, &[(1, &[1, 1])]), p(q(), 2, &[(1, &[0, 2])])];
        let gb = buchberger(&gens);
        // canonical order is ascending grevlex: Y^2 < XY < X^2
        assert_eq!(
            gb.elements(),
            &[gens[2].clone(), gens[1].clone(), gens[0].clone()]
        );
    }

    #[test]
    fn regular_sequence_with_power_part_is_zero_dimensional() {
        // quadric chain plus all degree-5 monomials in three variables
        let mut gens = vec![
            p(q(), 3, &[(1, &[2, 0, 0]), (1, &[0, 2, 0])]),
            p(q(), 3, &[(1, &[0, 2, 0]), (1, &[0, 0, 2])]),
            p(q(), 3, &[(1, &[0, 1, 1])]),
        ];
        for m in monomials_of_degree(3, 5) {
            gens.push(Polynomial::term(q(), m, q().one()));
        }
        let gb = buchberger(&gens);
        assert!(is_zero_dimensional(&gb));
        match standard_monomials(&gb) {
            StandardMonomials::Finite(sm) => assert!(!sm.is_empty()),
            StandardMonomials::Infinite => panic!("expected finite"),
        }
    }

    #[test]
    fn normal_forms() {
        let gb = buchberger(&[p(q(), 2, &[(1, &[2, 0])]), p(q(), 2, &[(1, &[0, 2])])]);
        assert!(normal_form(&p(q(), 2, &[(1, &[2, 0]), (1, &[0, 2])]), &gb).is_zero());
        let xy = p(q(), 2, &[(1, &[1, 1])]);
        assert_eq!(normal_form(&xy, &gb), xy);

        // one division step: X1^2 mod <X1^2+X2^2+X3^2> + m^3
        let mut gens = vec![p(q(), 3, &[(1, &[2, 0, 0]), (1, &[0, 2, 0]), (1, &[0, 0, 2])])];
        for m in monomials_of_degree(3, 3) {
            gens.push(Polynomial::term(q(), m, q().one()));
        }
        let gb = buchberger(&gens);
        assert_eq!(
            normal_form(&p(q(), 3, &[(1, &[2, 0, 0])]), &gb),
            p(q(), 3, &[(-1, &[0, 2, 0]), (-1, &[0, 0, 2])])
        );
    }

    #[test]
    fn membership() {
        let gb = buchberger(&[p(q(), 2, &[(1, &[2, 0]), (1, &[0, 2])]), p(q(), 2, &[(1, &[0, 2])])]);
        assert!(ideal_membership(&p(q(), 2, &[(1, &[2, 0]), (1, &[0, 2])]), &gb));
        // X^3 = X(X^2+Y^2) - XY*Y
        assert!(ideal_membership(&p(q(), 2, &[(1, &[3, 0])]), &gb));
        let gb2 = buchberger(&[p(q(), 2, &[(1, &[2, 0])])]);
        assert!(!ideal_membership(&p(q(), 2, &[(1, &[0, 3])]), &gb2));
    }

    #[test]
    fn ideal_equality() {
        let a = buchberger(&[p(q(), 2, &[(1, &[2, 0]), (1, &[0, 2])]), p(q(), 2, &[(1, &[0, 2])])]);
        let b = buchberger(&[p(q(), 2, &[(1, &[2, 0])]), p(q(), 2, &[(1, &[0, 2])])]);
        assert!(ideal_equal(&a, &b));
        let c = buchberger(&[p(q(), 2, &[(1, &[2, 0])])]);
        let d = buchberger(&[p(q(), 2, &[(1, &[2, 0])]), p(q(), 2, &[(1, &[1, 1])])]);
        assert!(!ideal_equal(&c, &d));
        assert!(ideal_equal(&a, &a));
    }

    #[test]
    fn standard_monomial_counts() {
        let gb = buchberger(&[
            p(q(), 2, &[(1, &[2, 0])]),
            p(q(), 2, &[(1, &[1, 1])]),
            p(q(), 2, &[(1, &[0, 2])]),
        ]);
        match standard_monomials(&gb) {
            StandardMonomials::Finite(sm) => {
                assert_eq!(sm.len(), 3); // 1, X, Y
                assert_eq!(sm[0], Monomial::one(2));
            }
            _ => panic!(),
        }

        // <X,Y,Z>^5: C(3+5-1, 3) = 35 standard monomials
        let gens: Vec<Polynomial> =
            monomials_of_degree(3, 5).into_iter().map(|m| Polynomial::term(q(), m, q().one())).collect();
        let gb = buchberger(&gens);
        match standard_monomials(&gb) {
            StandardMonomials::Finite(sm) => assert_eq!(sm.len(), 35),
            _ => panic!(),
        }

        // <XY> is not zero-dimensional
        let gb = buchberger(&[p(q(), 2, &[(1, &[1, 1])])]);
        assert_eq!(standard_monomials(&gb), StandardMonomials::Infinite);
    }

    #[test]
    fn zero_dimensionality() {
        let a = buchberger(&[p(q(), 2, &[(1, &[2, 0])]), p(q(), 2, &[(1, &[0, 3])])]);
        assert!(is_zero_dimensional(&a));
        let b = buchberger(&[
            p(q(), 3, &[(1, &[2, 0, 0]), (1, &[0, 2, 0])]),
            p(q(), 3, &[(1, &[0, 2, 0]), (1, &[0, 0, 2])]),
            p(q(), 3, &[(1, &[0, 1, 1])]),
        ]);
        assert!(is_zero_dimensional(&b));
        let c = buchberger(&[p(q(), 2, &[(1, &[2, 0])]), p(q(), 2, &[(1, &[1, 1])])]);
        assert!(!is_zero_dimensional(&c));
    }

    #[test]
    fn unit_ideal_is_flagged() {
        let gb = buchberger(&[p(q(), 2, &[(1, &[1, 0]), (1, &[0, 0])]), p(q(), 2, &[(1, &[1, 0])])]);
        assert!(gb.is_unit_ideal());
        assert_eq!(gb.elements(), &[Polynomial::one(q(), 2)]);
    }

    #[test]
    fn canonical_under_permutation() {
        let gens = [
            p(q(), 3, &[(1, &[2, 0, 0]), (1, &[0, 2, 0])]),
            p(q(), 3, &[(1, &[0, 2, 0]), (1, &[0, 0, 2])]),
            p(q(), 3, &[(1, &[0, 1, 1])]),
            p(q(), 3, &[(2, &[1, 1, 0]), (1, &[0, 0, 2])]),
        ];
        let gb1 = buchberger(&gens);
        let permuted = [gens[2].clone(), gens[0].clone(), gens[3].clone(), gens[1].clone()];
        let gb2 = buchberger(&permuted);
        assert_eq!(gb1, gb2);
    }

    #[test]
    fn buchberger_criterion_post_hoc() {
        let gens = [
            p(q(), 3, &[(1, &[2, 0, 0]), (1, &[0, 2, 0])]),
            p(q(), 3, &[(1, &[0, 2, 0]), (1, &[0, 0, 2])]),
            p(q(), 3, &[(1, &[0, 1, 1])]),
        ];
        let gb = buchberger(&gens);
        let b = gb.elements();
        for i in 0..b.len() {
            for j in i + 1..b.len() {
                let s = s_polynomial(&b[i], &b[j]);
                assert!(normal_form(&s, &gb).is_zero());
            }
        }
    }
}
