//! Randomized structural invariants of the algebra, the action and the Fock
//! representation.

use proptest::prelude::*;
use qcapelli::action::{act, coproduct_expansion, monomial_weight, weight};
use qcapelli::fock::{apply, fock_form, FockVector};
use qcapelli::{Algebra, Element, LaurentPoly, Monomial, UqGenerator};

fn monomial(alg: &Algebra, h: usize, a: usize, pick: usize) -> Monomial {
    let pool = alg.monomials(h, a);
    pool[pick % pool.len()].clone()
}

fn elem(m: Monomial) -> Element {
    Element::from_monomial(m, LaurentPoly::one())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn multiplication_is_equivariant(
        n in 1usize..=2,
        (h1, a1, h2, a2) in (0usize..=1, 0usize..=1, 0usize..=1, 0usize..=1),
        (p1, p2) in (0usize..64, 0usize..64),
        gi in 0usize..64,
    ) {
        let alg = Algebra::new(n);
        let f = elem(monomial(&alg, h1, a1, p1));
        let h = elem(monomial(&alg, h2, a2, p2));
        let gens = UqGenerator::all(n);
        let g = gens[gi % gens.len()];
        prop_assert_eq!(act(&alg, g, &alg.multiply(&f, &h)), coproduct_expansion(&alg, g, &f, &h));
    }

    #[test]
    fn weights_add_and_k_acts_diagonally(
        (h1, a1, h2, a2) in (0usize..=2, 0usize..=2, 0usize..=2, 0usize..=2),
        (p1, p2) in (0usize..200, 0usize..200),
    ) {
        let alg = Algebra::new(2);
        let (m1, m2) = (monomial(&alg, h1, a1, p1), monomial(&alg, h2, a2, p2));
        let product = alg.multiply(&elem(m1.clone()), &elem(m2.clone()));
        let w: Vec<i32> = monomial_weight(2, &m1).iter().zip(monomial_weight(2, &m2)).map(|(a, b)| a + b).collect();
        prop_assert_eq!(weight(2, &product).unwrap(), w.clone());
        for k in 1..=3 {
            prop_assert_eq!(act(&alg, UqGenerator::k(k), &product), product.scale(&LaurentPoly::q_pow(w[k - 1])));
        }
    }

    #[test]
    fn fock_form_is_hermitian_on_monomials(d in 0usize..=2, (p1, p2) in (0usize..64, 0usize..64)) {
        let alg = Algebra::new(2);
        let u = FockVector::new(elem(monomial(&alg, d, 0, p1))).unwrap();
        let v = FockVector::new(elem(monomial(&alg, d, 0, p2))).unwrap();
        prop_assert_eq!(fock_form(&alg, &u, &v), fock_form(&alg, &v, &u));
    }

    #[test]
    fn annihilators_lower_degree(d in 1usize..=3, p in 0usize..200, row in 1usize..=2, col in 1usize..=2) {
        let alg = Algebra::new(2);
        let v = FockVector::new(elem(monomial(&alg, d, 0, p))).unwrap();
        let out = apply(&alg, &alg.zs(row, col), &v);
        prop_assert!(out.poly().bidegrees().iter().all(|&(h, a)| h + 1 == d && a == 0));
    }
}
