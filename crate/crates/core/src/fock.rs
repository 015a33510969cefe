//! The Fock representation on `ℂ[Mat_n]_q f_0`, where every `z*`
//! annihilates the vacuum `f_0`.

use std::collections::BTreeMap;

use num_rational::BigRational;

use crate::algebra::{Algebra, Element, Monomial};
use crate::error::{Error, Result};
use crate::linalg::{is_positive_definite, Matrix};
use crate::ring::{Coefficient, LaurentPoly};

/// `poly · f_0` with `poly` holomorphic.
#[derive(Clone, PartialEq, Eq)]
pub struct FockVector<C = LaurentPoly> {
    poly: Element<C>,
}

impl<C: Coefficient> std::fmt::Debug for FockVector<C> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({}) f0", self.poly)
    }
}

impl<C: Coefficient> FockVector<C> {
    pub fn new(poly: Element<C>) -> Result<Self> {
        if !poly.is_holomorphic() {
            return Err(Error::Precondition("Fock vectors have no starred part".into()));
        }
        Ok(FockVector { poly })
    }

    pub fn vacuum(alg: &Algebra) -> Self {
        FockVector { poly: alg.one() }
    }

    pub fn poly(&self) -> &Element<C> {
        &self.poly
    }

    pub fn into_poly(self) -> Element<C> {
        self.poly
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }
}

/// `T_F(f) v`.
pub fn apply<C: Coefficient>(alg: &Algebra, f: &Element<C>, v: &FockVector<C>) -> FockVector<C> {
    let mut acc: BTreeMap<Monomial, C> = BTreeMap::new();
    for (m1, c1) in f.terms() {
        for (m2, c2) in v.poly.terms() {
            let c12 = c1.mul_ref(c2);
            for (h, k1) in alg.fock_exchange(m1.anti(), m2.holo()).iter() {
                let c = c12.mul_ref(&C::from_laurent(k1));
                for (h2, k2) in alg.holo_product(m1.holo(), h).iter() {
                    let t = c.mul_ref(&C::from_laurent(k2));
                    acc.entry(alg.holo_monomial(h2.clone()))
                        .or_insert_with(C::zero)
                        .add_assign_ref(&t);
                }
            }
        }
    }
    FockVector {
        poly: Element::from_terms(acc.into_iter().filter(|(_, c)| !c.is_zero())),
    }
}

/// `(u, v)`: the vacuum coefficient of `T_F(v*) u`.
pub fn fock_form<C: Coefficient>(alg: &Algebra, u: &FockVector<C>, v: &FockVector<C>) -> C {
    apply(alg, &v.poly.star(), u).poly.constant_term()
}

/// `G_ij = (b_i, b_j)`.
pub fn gram<C: Coefficient>(alg: &Algebra, basis: &[FockVector<C>]) -> Matrix<C> {
    let mut g = vec![vec![C::zero(); basis.len()]; basis.len()];
    for i in 0..basis.len() {
        for j in 0..=i {
            let x = fock_form(alg, &basis[i], &basis[j]);
            g[j][i] = x.clone();
            g[i][j] = x;
        }
    }
    g
}

/// Gram matrix of all holomorphic monomials of degree `d`.
pub fn monomial_gram(alg: &Algebra, d: usize) -> Matrix<LaurentPoly> {
    let basis: Vec<FockVector> = alg
        .monomials(d, 0)
        .into_iter()
        .map(|m| FockVector { poly: Element::from_monomial(m, LaurentPoly::one()) })
        .collect();
    gram(alg, &basis)
}

/// Positive definiteness of a Laurent Gram matrix at a rational `q`.
pub fn positive_at(g: &Matrix<LaurentPoly>, qv: &BigRational) -> Result<bool> {
    let m = g
        .iter()
        .map(|row| row.iter().map(|x| x.eval_q(qv)).collect::<Result<Vec<_>>>())
        .collect::<Result<Matrix<BigRational>>>()?;
    Ok(is_positive_definite(&m))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::rat;

    fn lp(terms: &[(i32, i64)]) -> LaurentPoly {
        LaurentPoly::from_q_terms(terms.iter().copied())
    }

    fn holo(f: Element) -> FockVector {
        FockVector::new(f).unwrap()
    }

    #[test]
    fn vacuum_and_creation() {
        let alg = Algebra::new(2);
        let f0 = FockVector::vacuum(&alg);
        assert_eq!(apply(&alg, &alg.z(1, 1), &f0).poly, alg.z(1, 1));
        assert!(apply(&alg, &alg.zs(1, 2), &f0).is_zero());
        assert_eq!(fock_form(&alg, &f0, &f0), LaurentPoly::one());
        assert!(FockVector::new(alg.zs(1, 1)).is_err());
    }

    #[test]
    fn q_oscillator_closed_forms() {
        let alg = Algebra::new(1);
        for m in 1..=8u32 {
            let zm = holo(alg.pow(&alg.z(1, 1), m));
            let lowered = apply(&alg, &alg.zs(1, 1), &zm);
            let expected = alg.pow(&alg.z(1, 1), m - 1).scale(&lp(&[(0, 1), (2 * m as i32, -1)]));
            assert_eq!(lowered.poly, expected);
            let norm = (1..=m as i32).fold(LaurentPoly::one(), |a, i| a.mul(&lp(&[(0, 1), (2 * i, -1)])));
            assert_eq!(fock_form(&alg, &zm, &zm), norm);
        }
    }

    #[test]
    fn gram_examples() {
        let alg = Algebra::new(1);
        let g = gram(&alg, &[holo(alg.z(1, 1))]);
        assert_eq!(g, vec![vec![lp(&[(0, 1), (2, -1)])]]);
        let alg = Algebra::new(2);
        let g = gram(&alg, &[holo(alg.qdet())]);
        let expected = LaurentPoly::q_pow(-2).mul(&lp(&[(2, 1), (0, -1)])).mul(&lp(&[(4, 1), (0, -1)]));
        assert_eq!(g, vec![vec![expected]]);
        let u = holo(alg.z(1, 1));
        let v = holo(alg.z(2, 2));
        assert!(fock_form(&alg, &u, &v).is_zero());
    }

    #[test]
    fn positivity_at_one_half() {
        for n in 1..=2 {
            let alg = Algebra::new(n);
            for d in 0..=3 {
                assert!(positive_at(&monomial_gram(&alg, d), &rat(1, 2)).unwrap(), "n={n} d={d}");
            }
        }
    }

    #[test]
    fn adjointness_on_generators() {
        let alg = Algebra::new(2);
        let vs: Vec<FockVector> = alg
            .monomials(1, 0)
            .into_iter()
            .chain(alg.monomials(2, 0))
            .map(|m| holo(Element::from_monomial(m, LaurentPoly::one())))
            .collect();
        for f in [alg.z(1, 2), alg.zs(2, 1), alg.multiply(&alg.z(2, 1), &alg.zs(1, 1))] {
            for v in &vs {
                for w in &vs {
                    let lhs = fock_form(&alg, &apply(&alg, &f, v), w);
                    let rhs = fock_form(&alg, v, &apply(&alg, &f.star(), w));
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }
}
