//! The invariants `y_ν` and their eigenvalues in the Fock representation.
//!
//! `y_ν = G_11 Σ_{j,k} (G⁻¹)_{jk} v_j v_k*`, where `v_1 = v_ν, v_2, …` is a
//! basis of the module generated by `v_ν` and `G` its Gram matrix. The
//! factor `G_11` makes the dual family contain `v_ν*`.

use std::collections::BTreeMap;

use num_rational::BigRational;

use crate::action::{act, generate_module, monomial_weight, UqGenerator};
use crate::algebra::{Algebra, Element, Monomial};
use crate::error::{Error, Result};
use crate::fock::{apply, gram, FockVector};
use crate::linalg::{inverse, nullspace, rank, Matrix};
use crate::partition::{partitions_of, Partition};
use crate::ring::{LaurentPoly, RationalFunction, Scalar};
use crate::symmetric::{classical_limit, classical_points, factorial_schur_classical, rhs_theorem1};

/// `y_ν` both over the fraction field and as `numerator / denominator`
/// with a Laurent numerator.
#[derive(Clone, Debug)]
pub struct InvariantElement {
    pub nu: Partition,
    pub element: Element<RationalFunction>,
    pub numerator: Element<LaurentPoly>,
    pub denominator: LaurentPoly,
}

fn lcm(a: &LaurentPoly, b: &LaurentPoly) -> LaurentPoly {
    let g = a.gcd(b);
    a.mul(b).exact_div(&g).expect("gcd divides the product")
}

/// `Σ c_j v_j` with `v_j` holomorphic and `w_j` starred is a plain
/// concatenation of normal monomials.
fn concat(v: &Element, w: &Element<RationalFunction>) -> Element<RationalFunction> {
    let mut acc: BTreeMap<Monomial, RationalFunction> = BTreeMap::new();
    for (m1, c1) in v.terms() {
        for (m2, c2) in w.terms() {
            let m = Monomial::from_exponents(m1.holo().to_vec(), m2.anti().to_vec());
            let t = c2.mul(&RationalFunction::from(c1.clone()));
            acc.entry(m).or_insert_with(RationalFunction::zero).add_assign_ref(&t);
        }
    }
    Element::from_terms(acc.into_iter().filter(|(_, c)| !c.is_zero()))
}

/// `y_ν` from an explicit basis of its module; `anchor` indexes `v_ν`.
pub fn build_y_from_basis(
    alg: &Algebra,
    nu: &Partition,
    basis: &[Element],
    anchor: usize,
) -> Result<InvariantElement> {
    let vectors: Vec<FockVector> = basis
        .iter()
        .map(|v| FockVector::new(v.clone()))
        .collect::<Result<_>>()?;
    let g = gram(alg, &vectors);
    let g_rf: Matrix<RationalFunction> = g
        .iter()
        .map(|row| row.iter().map(|x| RationalFunction::from(x.clone())).collect())
        .collect();
    let inv = inverse(&g_rf).map_err(|_| Error::SingularGram)?;
    let g11 = RationalFunction::from(g[anchor][anchor].clone());
    let mut element = Element::zero();
    for (j, vj) in basis.iter().enumerate() {
        let mut w = Element::<RationalFunction>::zero();
        for (k, vk) in basis.iter().enumerate() {
            if inv[j][k].is_zero() {
                continue;
            }
            let c = inv[j][k].mul(&g11);
            w = w.add(&vk.star().map_coeffs(|x| RationalFunction::from(x.clone())).scale(&c));
        }
        element = element.add(&concat(vj, &w));
    }
    let denominator = element
        .terms()
        .fold(LaurentPoly::one(), |acc, (_, c)| lcm(&acc, c.denom()));
    let numerator = element.map_coeffs(|c| {
        c.numer()
            .mul(&denominator.exact_div(c.denom()).expect("lcm is a multiple"))
    });
    Ok(InvariantElement {
        nu: nu.clone(),
        element,
        numerator,
        denominator,
    })
}

pub fn build_y(alg: &Algebra, nu: &Partition) -> Result<InvariantElement> {
    let basis = generate_module(alg, nu)?;
    build_y_from_basis(alg, nu, &basis, 0)
}

/// The scalar `c` with `T_F(y) v = c v`, checked on every coefficient.
pub fn proportionality(result: &Element, v: &Element) -> Result<RationalFunction> {
    if result.is_zero() {
        return Ok(RationalFunction::zero());
    }
    let (m0, v0) = v.terms().next().ok_or(Error::NotProportional)?;
    let r0 = result.coeff(m0);
    if result.len() != v.len() {
        return Err(Error::NotProportional);
    }
    for (m, c) in v.terms() {
        if result.coeff(m).mul(v0) != c.mul(&r0) {
            return Err(Error::NotProportional);
        }
    }
    RationalFunction::from(r0).div(&RationalFunction::from(v0.clone()))
}

/// `T_F(y_ν)` on `ℋ_λ`, read off from `T_F(y_ν) v_λ f_0`.
pub fn eigenvalue(alg: &Algebra, y: &InvariantElement, lam: &Partition) -> Result<RationalFunction> {
    let v = alg.highest_weight_vector(lam);
    let out = apply(alg, &y.numerator, &FockVector::new(v.clone())?);
    let c = proportionality(out.poly(), &v)?;
    c.div(&RationalFunction::from(y.denominator.clone()))
}

pub fn theorem1_check(alg: &Algebra, y: &InvariantElement, lam: &Partition) -> Result<bool> {
    let lhs = eigenvalue(alg, y, lam)?;
    Ok(lhs == RationalFunction::from(rhs_theorem1(&y.nu, lam)))
}

/// `y_ν y_μ = y_μ y_ν`, compared on numerators (denominators are scalars).
pub fn commutativity_check(alg: &Algebra, a: &InvariantElement, b: &InvariantElement) -> bool {
    alg.multiply(&a.numerator, &b.numerator) == alg.multiply(&b.numerator, &a.numerator)
}

/// `y_ν = (det_q z)^{ν_n} y_{ν−ν_n 1^n} ((det_q z)*)^{ν_n}`.
pub fn prop6_check(alg: &Algebra, nu: &Partition) -> Result<bool> {
    let k = nu.last();
    if k == 0 {
        return Ok(true);
    }
    let y = build_y(alg, nu)?;
    let reduced = build_y(alg, &nu.minus_constant(k)?)?;
    let det = alg.pow(&alg.qdet(), k);
    let rhs = alg.multiply_all(&[&det, &reduced.numerator, &det.star()]);
    Ok(y.numerator.scale(&reduced.denominator) == rhs.scale(&y.denominator))
}

/// Zero eigenvalue for `|λ| ≤ |ν|`, `λ ≠ ν`.
pub fn vanishing_check(alg: &Algebra, y: &InvariantElement, lam: &Partition) -> Result<bool> {
    if lam.weight() > y.nu.weight() || *lam == y.nu {
        return Err(Error::Precondition("needs |λ| ≤ |ν| and λ ≠ ν".into()));
    }
    Ok(eigenvalue(alg, y, lam)?.is_zero())
}

/// `E_j y = F_j y = 0` for `j ≠ n` and `K_i y = y`.
pub fn invariance_check<C: crate::ring::Coefficient>(alg: &Algebra, y: &Element<C>) -> bool {
    UqGenerator::compact(alg.n()).into_iter().all(|g| {
        let out = act(alg, g, y);
        match g.kind {
            crate::action::GenKind::K | crate::action::GenKind::Kinv => out == *y,
            _ => out.is_zero(),
        }
    })
}

/// `lim_{q→1} eig / (1 − q²)^{|ν|}` next to the classical factorial Schur
/// value at `λ + δ`.
pub fn classical_limit_pair(eig: &RationalFunction, nu: &Partition, lam: &Partition) -> Result<(BigRational, BigRational)> {
    let lhs = classical_limit(eig, nu)?;
    let rhs = factorial_schur_classical(nu, &classical_points(lam))?;
    Ok((lhs, rhs))
}

/// Normal monomials of bidegree `(j, j)` and total weight zero.
pub fn zero_weight_monomials(alg: &Algebra, j: usize) -> Vec<Monomial> {
    let n = alg.n();
    alg.monomials(j, j)
        .into_iter()
        .filter(|m| monomial_weight(n, m).iter().all(|&w| w == 0))
        .collect()
}

/// Basis of the `U_q k`-invariants in bidegree `(j, j)`, from the kernel of
/// the `E_k`, `F_k` (`k ≠ n`) equations on the zero-weight monomials.
pub fn find_invariants(alg: &Algebra, j: usize) -> Vec<Element<RationalFunction>> {
    let n = alg.n();
    let cols = zero_weight_monomials(alg, j);
    let mut rows: BTreeMap<(UqGenerator, Monomial), Vec<RationalFunction>> = BTreeMap::new();
    let ops: Vec<UqGenerator> = (1..2 * n)
        .filter(|&k| k != n)
        .flat_map(|k| [UqGenerator::e(k), UqGenerator::f(k)])
        .collect();
    for (c, m) in cols.iter().enumerate() {
        let single = Element::from_monomial(m.clone(), LaurentPoly::one());
        for &g in &ops {
            for (out, coef) in act(alg, g, &single).terms() {
                rows.entry((g, out.clone()))
                    .or_insert_with(|| vec![RationalFunction::zero(); cols.len()])[c] = RationalFunction::from(coef.clone());
            }
        }
    }
    let matrix: Matrix<RationalFunction> = rows.into_values().collect();
    nullspace(&matrix, cols.len())
        .into_iter()
        .map(|v| Element::from_terms(cols.iter().cloned().zip(v)))
        .collect()
}

/// Exponent tuples `(a_1, …, a_n)` with `Σ k a_k = j`.
fn graded_tuples(n: usize, j: usize) -> Vec<Vec<u32>> {
    fn rec(k: usize, n: usize, left: usize, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if k > n {
            if left == 0 {
                out.push(cur.clone());
            }
            return;
        }
        for a in 0..=left / k {
            cur.push(a as u32);
            rec(k + 1, n, left - a * k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(1, n, j, &mut Vec::new(), &mut out);
    out
}

/// The invariants of bidegree `(j, j)` number `#{ν : |ν| = j}`, and the top
/// components of the monomials in `y_{1^1}, …, y_{1^n}` of degree `j` span
/// them.
pub fn lemma1_dimension_check(alg: &Algebra, j: usize) -> Result<bool> {
    let n = alg.n();
    let invariants = find_invariants(alg, j);
    let expected = partitions_of(n, j as u32).len();
    if invariants.len() != expected {
        return Ok(false);
    }
    let generators: Vec<InvariantElement> = (1..=n)
        .map(|k| build_y(alg, &Partition::one_k(n, k)))
        .collect::<Result<_>>()?;
    let products: Vec<Element> = graded_tuples(n, j)
        .into_iter()
        .map(|a| {
            let mut acc = alg.one();
            for (k, &e) in a.iter().enumerate() {
                acc = alg.multiply(&acc, &alg.pow(&generators[k].numerator, e));
            }
            Element::from_terms(
                acc.terms()
                    .filter(|(m, _)| m.holo_degree() == j && m.anti_degree() == j)
                    .map(|(m, c)| (m.clone(), c.clone())),
            )
        })
        .collect();
    let cols = zero_weight_monomials(alg, j);
    let row_of = |coef: &dyn Fn(&Monomial) -> RationalFunction| -> Vec<RationalFunction> {
        cols.iter().map(coef).collect()
    };
    let mut m: Matrix<RationalFunction> = products
        .iter()
        .map(|p| row_of(&|mono| RationalFunction::from(p.coeff(mono))))
        .collect();
    if m.is_empty() || rank(&m) != expected {
        return Ok(expected == 0);
    }
    m.extend(invariants.iter().map(|v| row_of(&|mono| v.coeff(mono))));
    Ok(rank(&m) == expected)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partition::enumerate;

    fn p(v: &[u32]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    fn lp(terms: &[(i32, i64)]) -> LaurentPoly {
        LaurentPoly::from_q_terms(terms.iter().copied())
    }

    fn rf(x: LaurentPoly) -> RationalFunction {
        RationalFunction::from(x)
    }

    #[test]
    fn one_dimensional_cases() {
        let alg = Algebra::new(1);
        for m in 1..=3 {
            let y = build_y(&alg, &p(&[m])).unwrap();
            let zm = alg.pow(&alg.z(1, 1), m);
            let expected = alg.multiply(&zm, &zm.star());
            assert_eq!(y.element, expected.map_coeffs(|c| rf(c.clone())));
        }
        let alg = Algebra::new(2);
        let y = build_y(&alg, &p(&[1, 1])).unwrap();
        let det = alg.qdet();
        assert_eq!(y.element, alg.multiply(&det, &det.star()).map_coeffs(|c| rf(c.clone())));
    }

    #[test]
    fn eigenvalue_examples() {
        let alg = Algebra::new(1);
        let y = build_y(&alg, &p(&[1])).unwrap();
        for m in 0..5 {
            assert_eq!(eigenvalue(&alg, &y, &p(&[m])).unwrap(), rf(lp(&[(0, 1), (2 * m as i32, -1)])));
        }
        let alg = Algebra::new(2);
        let y = build_y(&alg, &p(&[1, 0])).unwrap();
        assert!(eigenvalue(&alg, &y, &p(&[0, 0])).unwrap().is_zero());
        assert_eq!(eigenvalue(&alg, &y, &p(&[1, 0])).unwrap(), rf(lp(&[(0, 1), (2, -1)])));
        let y = build_y(&alg, &p(&[1, 1])).unwrap();
        let expected = LaurentPoly::q_pow(-2).mul(&lp(&[(4, 1), (0, -1)])).mul(&lp(&[(2, 1), (0, -1)]));
        assert_eq!(eigenvalue(&alg, &y, &p(&[1, 1])).unwrap(), rf(expected));
        assert!(eigenvalue(&alg, &y, &p(&[1, 0])).unwrap().is_zero());
    }

    #[test]
    fn theorem1_small_grid() {
        for (n, max_nu, max_lam) in [(1, 3, 4), (2, 2, 3)] {
            let alg = Algebra::new(n);
            for nu in enumerate(n, max_nu) {
                let y = build_y(&alg, &nu).unwrap();
                assert!(invariance_check(&alg, &y.numerator), "{nu:?}");
                for lam in enumerate(n, max_lam) {
                    assert!(theorem1_check(&alg, &y, &lam).unwrap(), "n={n} {nu:?} {lam:?}");
                }
            }
        }
    }

    #[test]
    fn commutativity_examples() {
        let alg = Algebra::new(1);
        let (a, b) = (build_y(&alg, &p(&[1])).unwrap(), build_y(&alg, &p(&[2])).unwrap());
        assert!(commutativity_check(&alg, &a, &b));
        assert!(commutativity_check(&alg, &a, &a));
        let alg = Algebra::new(2);
        let (a, b) = (build_y(&alg, &p(&[1, 0])).unwrap(), build_y(&alg, &p(&[1, 1])).unwrap());
        assert!(commutativity_check(&alg, &a, &b));
    }

    #[test]
    fn prop6_examples() {
        let alg = Algebra::new(1);
        for m in 1..=3 {
            assert!(prop6_check(&alg, &p(&[m])).unwrap());
        }
        let alg = Algebra::new(2);
        assert!(prop6_check(&alg, &p(&[1, 1])).unwrap());
        assert!(prop6_check(&alg, &p(&[2, 1])).unwrap());
        assert!(prop6_check(&alg, &p(&[2, 0])).unwrap());
    }

    #[test]
    fn vanishing_examples() {
        let alg = Algebra::new(2);
        let y = build_y(&alg, &p(&[1, 1])).unwrap();
        assert!(vanishing_check(&alg, &y, &p(&[1, 0])).unwrap());
        let y = build_y(&alg, &p(&[2, 0])).unwrap();
        assert!(vanishing_check(&alg, &y, &p(&[1, 1])).unwrap());
        assert!(vanishing_check(&alg, &y, &p(&[2, 0])).is_err());
        let alg = Algebra::new(1);
        let y = build_y(&alg, &p(&[2])).unwrap();
        assert!(vanishing_check(&alg, &y, &p(&[1])).unwrap());
    }

    #[test]
    fn basis_independence() {
        let alg = Algebra::new(2);
        let nu = p(&[2, 0]);
        let basis = generate_module(&alg, &nu).unwrap();
        let y = build_y_from_basis(&alg, &nu, &basis, 0).unwrap();
        let mut other: Vec<Element> = basis.clone();
        other[1..].reverse();
        let last = other.len() - 1;
        other[last] = other[last].scale(&lp(&[(3, 2)]));
        other[1] = other[1].add(&other[2]);
        let y2 = build_y_from_basis(&alg, &nu, &other, 0).unwrap();
        assert_eq!(y.element, y2.element);
    }

    #[test]
    fn invariant_counts() {
        let alg = Algebra::new(2);
        assert_eq!(find_invariants(&alg, 0).len(), 1);
        assert_eq!(find_invariants(&alg, 1).len(), 1);
        assert_eq!(find_invariants(&alg, 2).len(), 2);
        for j in 0..=2 {
            assert!(lemma1_dimension_check(&alg, j).unwrap(), "j={j}");
        }
    }

    #[test]
    fn classical_limits() {
        let alg = Algebra::new(2);
        let y = build_y(&alg, &p(&[1, 0])).unwrap();
        let lam = p(&[2, 1]);
        let (a, b) = classical_limit_pair(&eigenvalue(&alg, &y, &lam).unwrap(), &y.nu, &lam).unwrap();
        assert_eq!(a, b);
    }
}
