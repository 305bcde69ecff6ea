//! Brute-force oracle: the derivation Lie algebra Der(A) by exact linear
//! algebra, its derived series, and the cross-check against certified
//! verdicts. Over characteristic 0, solvability of the identity component of
//! Aut(A) is equivalent to solvability of Der(A) as a Lie algebra.

use crate::algebra::{AdmissiblePresentation, AlgebraError, QuotientAlgebra};
use crate::certifier::{CertReport, Verdict};
use crate::field::Scalar;
use crate::linalg::{row_from_dense, Echelon};

/// A derivation of A, determined by its values on the variable classes:
/// `images[i]` holds the coordinates of D(x_i) on the standard-monomial
/// basis.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Derivation {
    pub images: Vec<Vec<Scalar>>,
}

/// Basis of Der(A) as the exact kernel of the Leibniz constraint system.
pub struct DerivationAlgebra<'a> {
    qa: &'a QuotientAlgebra,
    basis: Vec<Derivation>,
}

impl<'a> DerivationAlgebra<'a> {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Derivation] {
        &self.basis
    }

    pub fn algebra(&self) -> &QuotientAlgebra {
        self.qa
    }
}

/// Der(A) = { (v_1..v_n) in A^n : sum_i v_i * [dg/dX_i] = 0 in A for every
/// reduced-basis generator g of I }. A derivation is determined by its values
/// on x_1..x_n, and every solution of the system extends to A.
pub fn derivation_space<'a>(
    qa: &'a QuotientAlgebra,
    ap: &AdmissiblePresentation,
) -> Result<DerivationAlgebra<'a>, AlgebraError> {
    let field = qa.field();
    let n = qa.n_vars();
    let dim = qa.dim();
    let unknowns = n * dim; // column (i, j) is the b_j coefficient of D(x_i)
    let gb = ap.groebner()?;

    let mut system = Echelon::new(field);
    for g in gb.elements() {
        // one block of `dim` equations per generator
        let mut rows: Vec<Vec<Scalar>> = vec![vec![field.zero(); unknowns]; dim];
        for i in 0..n {
            let partial = g.partial_derivative(i).expect("in range");
            if partial.is_zero() {
                continue;
            }
            let pcoords = qa.coords_of(&partial);
            for j in 0..dim {
                // coefficient vector of b_j * [dg/dX_i]
                let prod = qa.mul_monomial(&qa.basis()[j].clone(), &pcoords);
                for (t, c) in prod.iter().enumerate() {
                    if !field.is_zero(c) {
                        rows[t][i * dim + j] = field.add(&rows[t][i * dim + j], c);
                    }
                }
            }
        }
        for r in rows {
            system.insert(row_from_dense(&field, &r));
        }
    }

    let kernel = system.nullspace(unknowns);
    let basis = kernel
        .into_iter()
        .map(|v| Derivation {
            images: (0..n).map(|i| v[i * dim..(i + 1) * dim].to_vec()).collect(),
        })
        .collect();
    Ok(DerivationAlgebra { qa, basis })
}

/// Leibniz extension of D to all of A, one column per basis monomial:
/// D(x_i * b) = D(x_i) * b + x_i * D(b), by recursion over ascending degree.
fn extension_matrix(qa: &QuotientAlgebra, d: &Derivation) -> Vec<Vec<Scalar>> {
    let field = qa.field();
    let dim = qa.dim();
    let mut cols: Vec<Vec<Scalar>> = vec![qa.zero_vec(); dim];
    for j in 0..dim {
        let b = qa.basis()[j].clone();
        if b.is_one() {
            continue; // derivations kill the identity
        }
        let i = b.support().next().expect("nonconstant");
        let mut exps = b.exps().to_vec();
        exps[i] -= 1;
        let rest = crate::poly::Monomial::from_exps(exps);
        let rest_idx = qa.basis_index(&rest).expect("order ideal");
        let term1 = qa.mul_monomial(&rest, &d.images[i]);
        let term2 = qa.mul_var(i, &cols[rest_idx]);
        cols[j] = (0..dim).map(|t| field.add(&term1[t], &term2[t])).collect();
    }
    cols
}

/// Apply a derivation to an element given in coordinates.
pub fn apply_derivation(qa: &QuotientAlgebra, d: &Derivation, a: &[Scalar]) -> Vec<Scalar> {
    let ext = extension_matrix(qa, d);
    apply_extension(qa, &ext, a)
}

fn apply_extension(qa: &QuotientAlgebra, ext: &[Vec<Scalar>], a: &[Scalar]) -> Vec<Scalar> {
    let field = qa.field();
    let mut out = qa.zero_vec();
    for (j, c) in a.iter().enumerate() {
        if field.is_zero(c) {
            continue;
        }
        for (t, v) in ext[j].iter().enumerate() {
            if !field.is_zero(v) {
                out[t] = field.add(&out[t], &field.mul(v, c));
            }
        }
    }
    out
}

/// [D, E](x_i) = D(E(x_i)) - E(D(x_i)).
pub fn lie_bracket(qa: &QuotientAlgebra, d: &Derivation, e: &Derivation) -> Derivation {
    let field = qa.field();
    let ext_d = extension_matrix(qa, d);
    let ext_e = extension_matrix(qa, e);
    let images = (0..qa.n_vars())
        .map(|i| {
            let de = apply_extension(qa, &ext_d, &e.images[i]);
            let ed = apply_extension(qa, &ext_e, &d.images[i]);
            (0..qa.dim()).map(|t| field.sub(&de[t], &ed[t])).collect()
        })
        .collect();
    Derivation { images }
}

/// Derived-series dimensions, stopping at zero (solvable) or at a repeated
/// nonzero dimension (not solvable).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DerivedSeries {
    pub dims: Vec<usize>,
    pub solvable: bool,
}

pub fn derived_series(alg: &DerivationAlgebra<'_>) -> DerivedSeries {
    let qa = alg.qa;
    let field = qa.field();
    let n = qa.n_vars();
    let dim = qa.dim();
    let flatten = |d: &Derivation| -> Vec<Scalar> {
        let mut v = Vec::with_capacity(n * dim);
        for img in &d.images {
            v.extend(img.iter().cloned());
        }
        v
    };
    let mut current: Vec<Derivation> = alg.basis.to_vec();
    let mut dims = vec![current.len()];
    loop {
        let prev = *dims.last().unwrap();
        if prev == 0 {
            return DerivedSeries { dims, solvable: true };
        }
        // span of brackets of basis pairs
        let exts: Vec<Vec<Vec<Scalar>>> =
            current.iter().map(|d| extension_matrix(qa, d)).collect();
        let mut ech = Echelon::new(field);
        let mut next_basis: Vec<Derivation> = Vec::new();
        for a in 0..current.len() {
            for b in a + 1..current.len() {
                let images: Vec<Vec<Scalar>> = (0..n)
                    .map(|i| {
                        let de = apply_extension(qa, &exts[a], &current[b].images[i]);
                        let ed = apply_extension(qa, &exts[b], &current[a].images[i]);
                        (0..dim).map(|t| field.sub(&de[t], &ed[t])).collect()
                    })
                    .collect();
                let bracket = Derivation { images };
                if ech.insert(row_from_dense(&field, &flatten(&bracket))).is_some() {
                    next_basis.push(bracket);
                }
            }
        }
        let next = next_basis.len();
        dims.push(next);
        if next == 0 {
            return DerivedSeries { dims, solvable: true };
        }
        if next == prev {
            return DerivedSeries { dims, solvable: false };
        }
        current = next_basis;
    }
}

/// Outcome of comparing a certified verdict with the oracle.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum CrossCheck {
    /// certified verdict and Lie solvability agree
    Pass,
    /// they disagree: an implementation bug somewhere
    Fail { verdict: Verdict, der_solvable: bool },
    /// no certified verdict; the oracle answer stands as ground truth
    GroundTruthOnly { der_solvable: bool },
    /// positive characteristic: the equivalence is not claimed
    NotApplicable,
}

/// Over characteristic 0: a certified-solvable verdict must match a solvable
/// Der(A) and vice versa. Over characteristic p the oracle is informational
/// only.
pub fn cross_check(report: &CertReport, series: &DerivedSeries, char0: bool) -> CrossCheck {
    if !char0 {
        return CrossCheck::NotApplicable;
    }
    match report.verdict {
        Verdict::CertifiedSolvable if series.solvable => CrossCheck::Pass,
        Verdict::CertifiedNotSolvable if !series.solvable => CrossCheck::Pass,
        Verdict::Inconclusive => CrossCheck::GroundTruthOnly { der_solvable: series.solvable },
        v => CrossCheck::Fail { verdict: v, der_solvable: series.solvable },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{quotient_algebra, validate_admissible, IdealPresentation};
    use crate::certifier::{certify, SearchConfig};
    use crate::field::FieldSpec;
    use crate::poly::{Monomial, Polynomial};

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

    fn ap(n: usize, gens: Vec<Polynomial>, cap: Option<u32>) -> AdmissiblePresentation {
        validate_admissible(&IdealPresentation::new(q(), n, gens, cap).unwrap()).unwrap()
    }

    #[test]
    fn dual_numbers_have_dim_one() {
        // K[X]/<X^2>: D(x) = c x only; the constant part dies against 2x
        let a = ap(1, vec![], Some(2));
        let qa = quotient_algebra(&a, 100).unwrap();
        let der = derivation_space(&qa, &a).unwrap();
        assert_eq!(der.dim(), 1);
        let s = derived_series(&der);
        assert_eq!(s.dims, vec![1, 0]);
        assert!(s.solvable);
    }

    #[test]
    fn square_zero_plane_gives_gl2() {
        // K[X,Y]/<X,Y>^2: all linear maps on span{x, y}
        let a = ap(2, vec![], Some(2));
        let qa = quotient_algebra(&a, 100).unwrap();
        let der = derivation_space(&qa, &a).unwrap();
        assert_eq!(der.dim(), 4);
        let s = derived_series(&der);
        assert_eq!(s.dims, vec![4, 3, 3]);
        assert!(!s.solvable);
    }

    #[test]
    fn truncated_line_is_solvable_nonabelian() {
        // K[X]/<X^3>: basis {x d/dx, x^2 d/dx}
        let a = ap(1, vec![], Some(3));
        let qa = quotient_algebra(&a, 100).unwrap();
        let der = derivation_space(&qa, &a).unwrap();
        assert_eq!(der.dim(), 2);
        let s = derived_series(&der);
        assert_eq!(s.dims, vec![2, 1, 0]);
        assert!(s.solvable);
    }

    #[test]
    fn derivations_satisfy_constraints_and_leibniz() {
        let a = ap(
            3,
            vec![p(q(), 3, &[(1, &[2, 0, 0]), (1, &[0, 2, 0]), (1, &[0, 0, 2])])],
            Some(3),
        );
        let qa = quotient_algebra(&a, 100).unwrap();
        let der = derivation_space(&qa, &a).unwrap();
        let f = qa.field();
        // well-definedness: sum_i v_i [dg/dX_i] = 0 for every basis derivation
        for d in der.basis() {
            for g in a.groebner().unwrap().elements() {
                let mut acc = qa.zero_vec();
                for i in 0..3 {
                    let partial = g.partial_derivative(i).unwrap();
                    if partial.is_zero() {
                        continue;
                    }
                    let pc = qa.coords_of(&partial);
                    let prod = qa.mul_elements(&d.images[i], &pc);
                    for t in 0..qa.dim() {
                        acc[t] = f.add(&acc[t], &prod[t]);
                    }
                }
                assert!(acc.iter().all(|c| f.is_zero(c)));
            }
        }
        // Leibniz on a sample product
        let d = der.basis().first().expect("nontrivial derivation algebra");
        let x1 = qa.coords_of(&Polynomial::variable(q(), 3, 0));
        let x2 = qa.coords_of(&Polynomial::variable(q(), 3, 1));
        let prod = qa.mul_elements(&x1, &x2);
        let lhs = apply_derivation(&qa, d, &prod);
        let r1 = qa.mul_elements(&apply_derivation(&qa, d, &x1), &x2);
        let r2 = qa.mul_elements(&x1, &apply_derivation(&qa, d, &x2));
        let rhs: Vec<Scalar> = (0..qa.dim()).map(|t| f.add(&r1[t], &r2[t])).collect();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn bracket_identities() {
        let a = ap(1, vec![], Some(3));
        let qa = quotient_algebra(&a, 100).unwrap();
        let der = derivation_space(&qa, &a).unwrap();
        let f = qa.field();
        // [x d, x^2 d] = x^2 d
        let x = qa.coords_of(&p(q(), 1, &[(1, &[1])]));
        let x2 = qa.coords_of(&p(q(), 1, &[(1, &[2])]));
        let d_x = Derivation { images: vec![x.clone()] };
        let d_x2 = Derivation { images: vec![x2.clone()] };
        let b = lie_bracket(&qa, &d_x, &d_x2);
        assert_eq!(b.images[0], x2);
        // antisymmetry: [D, D] = 0
        for d in der.basis() {
            let z = lie_bracket(&qa, d, d);
            assert!(z.images.iter().flatten().all(|c| f.is_zero(c)));
        }
        // derivation kills the identity
        let one = qa.coords_of(&Polynomial::one(q(), 1));
        for d in der.basis() {
            let img = apply_derivation(&qa, d, &one);
            assert!(img.iter().all(|c| f.is_zero(c)));
        }
        // with D(x) = x^2: D(x^2) = 2x^3 = 0
        let d = Derivation { images: vec![x2.clone()] };
        let img = apply_derivation(&qa, &d, &x2);
        assert!(img.iter().all(|c| f.is_zero(c)));
    }

    #[test]
    fn closure_and_jacobi() {
        let a = ap(2, vec![p(q(), 2, &[(1, &[2, 0]), (1, &[0, 2])])], Some(3));
        let qa = quotient_algebra(&a, 100).unwrap();
        let der = derivation_space(&qa, &a).unwrap();
        let f = qa.field();
        let flat = |d: &Derivation| {
            let mut v = Vec::new();
            for img in &d.images {
                v.extend(img.iter().cloned());
            }
            v
        };
        // closure: brackets stay in the span
        let mut ech = Echelon::new(f);
        for d in der.basis() {
            ech.insert(row_from_dense(&f, &flat(d)));
        }
        let rank = ech.rank();
        for x in der.basis() {
            for y in der.basis() {
                let b = lie_bracket(&qa, x, y);
                ech.insert(row_from_dense(&f, &flat(&b)));
            }
        }
        assert_eq!(ech.rank(), rank);
        // Jacobi on basis triples
        let basis = der.basis();
        for x in basis.iter().take(3) {
            for y in basis.iter().take(3) {
                for z in basis.iter().take(3) {
                    let j1 = lie_bracket(&qa, x, &lie_bracket(&qa, y, z));
                    let j2 = lie_bracket(&qa, y, &lie_bracket(&qa, z, x));
                    let j3 = lie_bracket(&qa, z, &lie_bracket(&qa, x, y));
                    for i in 0..qa.n_vars() {
                        for t in 0..qa.dim() {
                            let s = f.add(
                                &f.add(&j1.images[i][t], &j2.images[i][t]),
                                &j3.images[i][t],
                            );
                            assert!(f.is_zero(&s));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn cross_check_agreement_and_negative_control() {
        let cfg = SearchConfig::default();
        // solvable side
        let a = ap(1, vec![], Some(3));
        let report = certify(&a, &cfg).unwrap();
        let qa = quotient_algebra(&a, 100).unwrap();
        let der = derivation_space(&qa, &a).unwrap();
        let series = derived_series(&der);
        assert_eq!(cross_check(&report, &series, true), CrossCheck::Pass);

        // not-solvable side: the quadric hypersurface
        let a = ap(
            3,
            vec![p(q(), 3, &[(1, &[2, 0, 0]), (1, &[0, 2, 0]), (1, &[0, 0, 2])])],
            Some(3),
        );
        let report = certify(&a, &cfg).unwrap();
        let qa = quotient_algebra(&a, 200).unwrap();
        let der = derivation_space(&qa, &a).unwrap();
        let series = derived_series(&der);
        assert!(!series.solvable);
        assert_eq!(cross_check(&report, &series, true), CrossCheck::Pass);

        // injected wrong verdict must fail
        let mut wrong = report.clone();
        wrong.verdict = Verdict::CertifiedSolvable;
        assert!(matches!(
            cross_check(&wrong, &series, true),
            CrossCheck::Fail { .. }
        ));
        // characteristic p: not applicable
        assert_eq!(cross_check(&report, &series, false), CrossCheck::NotApplicable);
    }
}
