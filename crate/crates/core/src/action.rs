//! The `U_q sl_{2n}` action on `Pol(Mat_n)_q`.
//!
//! Generators act on `z_a^α` by fixed tables. Starred generators follow
//! from `ξ(f*) = (S(ξ)* f)*`; products use the coproduct
//! `ΔE = E⊗1 + K⊗E`, `ΔF = F⊗K⁻¹ + 1⊗F`, `ΔK = K⊗K`.

use std::collections::{BTreeMap, VecDeque};
use std::fmt;
use std::rc::Rc;

use crate::algebra::{binomial, Algebra, Element, GenIndex, Monomial, Relation};
use crate::error::{Error, Result};
use crate::linalg::SparseEchelon;
use crate::partition::Partition;
use crate::ring::{Coefficient, LaurentPoly};

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum GenKind {
    E,
    F,
    K,
    Kinv,
}

/// `E_k`, `F_k`, `K_k` or `K_k^{-1}` with `1 ≤ k ≤ 2n − 1`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct UqGenerator {
    pub kind: GenKind,
    pub index: usize,
}

impl UqGenerator {
    pub fn e(index: usize) -> Self {
        UqGenerator { kind: GenKind::E, index }
    }
    pub fn f(index: usize) -> Self {
        UqGenerator { kind: GenKind::F, index }
    }
    pub fn k(index: usize) -> Self {
        UqGenerator { kind: GenKind::K, index }
    }
    pub fn kinv(index: usize) -> Self {
        UqGenerator { kind: GenKind::Kinv, index }
    }

    /// All `4(2n − 1)` generators.
    pub fn all(n: usize) -> Vec<Self> {
        (1..2 * n)
            .flat_map(|k| [Self::e(k), Self::f(k), Self::k(k), Self::kinv(k)])
            .collect()
    }

    /// Generators of `U_q k`: `E_j, F_j` for `j ≠ n`, all `K_i^{±1}`.
    pub fn compact(n: usize) -> Vec<Self> {
        Self::all(n)
            .into_iter()
            .filter(|g| matches!(g.kind, GenKind::K | GenKind::Kinv) || g.index != n)
            .collect()
    }
}

impl fmt::Display for UqGenerator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            GenKind::E => write!(f, "E{}", self.index),
            GenKind::F => write!(f, "F{}", self.index),
            GenKind::K => write!(f, "K{}", self.index),
            GenKind::Kinv => write!(f, "K{}^-1", self.index),
        }
    }
}

/// Powers of `q` by which `K_1, …, K_{2n−1}` scale a weight vector.
pub type WeightVector = Vec<i32>;

/// `K_k`-exponent of the holomorphic generator `z_a^α`.
pub fn z_weight(n: usize, k: usize, a: usize, alpha: usize) -> i32 {
    use std::cmp::Ordering::*;
    match k.cmp(&n) {
        Less => i32::from(a == k) - i32::from(a == k + 1),
        Greater => i32::from(alpha == 2 * n - k) - i32::from(alpha == 2 * n - k + 1),
        Equal => i32::from(a == n) + i32::from(alpha == n),
    }
}

fn gen_weight(n: usize, k: usize, g: GenIndex) -> i32 {
    let w = z_weight(n, k, g.row, g.col);
    if g.starred {
        -w
    } else {
        w
    }
}

fn monomial_weight_k(n: usize, k: usize, m: &Monomial) -> i32 {
    m.word().iter().map(|&g| gen_weight(n, k, g)).sum()
}

/// Weight of a single normal monomial.
pub fn monomial_weight(n: usize, m: &Monomial) -> WeightVector {
    (1..2 * n).map(|k| monomial_weight_k(n, k, m)).collect()
}

/// Weight of `f`, if every monomial shares it.
pub fn weight<C: Coefficient>(n: usize, f: &Element<C>) -> Result<WeightVector> {
    let mut it = f.terms().map(|(m, _)| monomial_weight(n, m));
    let Some(w) = it.next() else {
        return Ok(vec![0; 2 * n - 1]);
    };
    if it.all(|v| v == w) {
        Ok(w)
    } else {
        Err(Error::NotAWeightVector)
    }
}

fn check_index(alg: &Algebra, g: UqGenerator) {
    assert!(
        (1..2 * alg.n()).contains(&g.index),
        "generator index {} out of range for n = {}",
        g.index,
        alg.n()
    );
}

/// The action table on a holomorphic generator `z_a^α`.
pub fn act_generator_on_z(alg: &Algebra, g: UqGenerator, a: usize, alpha: usize) -> Element {
    check_index(alg, g);
    let n = alg.n();
    let k = g.index;
    let w = z_weight(n, k, a, alpha);
    let z = |r: usize, c: usize| alg.z(r, c);
    let half = |e: i32| LaurentPoly::s_pow(e);
    match g.kind {
        GenKind::K => z(a, alpha).scale(&LaurentPoly::q_pow(w)),
        GenKind::Kinv => z(a, alpha).scale(&LaurentPoly::q_pow(-w)),
        GenKind::F if k == n => {
            if a == n && alpha == n {
                alg.scalar(half(1))
            } else {
                Element::zero()
            }
        }
        GenKind::E if k == n => {
            let minus_half = half(1).neg();
            if a != n && alpha != n {
                alg.multiply(&z(a, n), &z(n, alpha)).scale(&minus_half.mul(&LaurentPoly::q_pow(-1)))
            } else if a == n && alpha == n {
                alg.multiply(&z(n, n), &z(n, n)).scale(&minus_half)
            } else {
                alg.multiply(&z(n, n), &z(a, alpha)).scale(&minus_half)
            }
        }
        GenKind::F => {
            if k < n && a == k {
                z(a + 1, alpha).scale(&half(1))
            } else if k > n && alpha == 2 * n - k {
                z(a, alpha + 1).scale(&half(1))
            } else {
                Element::zero()
            }
        }
        GenKind::E => {
            if k < n && a == k + 1 {
                z(a - 1, alpha).scale(&half(-1))
            } else if k > n && alpha == 2 * n - k + 1 {
                z(a, alpha - 1).scale(&half(-1))
            } else {
                Element::zero()
            }
        }
    }
}

/// Action on a single generator, starred or not.
fn act_on_gen(alg: &Algebra, g: UqGenerator, x: GenIndex) -> Element {
    if !x.starred {
        return act_generator_on_z(alg, g, x.row, x.col);
    }
    let n = alg.n();
    let k = g.index;
    let twisted = |kind: GenKind, c: LaurentPoly| {
        act_generator_on_z(alg, UqGenerator { kind, index: k }, x.row, x.col)
            .scale(&c)
            .star()
    };
    // ξ(z*) = (S(ξ)* z)* with S(E)* = ∓q^{-2} F, S(F)* = ∓q² E, S(K)* = K^{-1}
    let sign = if k == n { LaurentPoly::one() } else { LaurentPoly::from_int(-1) };
    match g.kind {
        GenKind::K => twisted(GenKind::Kinv, LaurentPoly::one()),
        GenKind::Kinv => twisted(GenKind::K, LaurentPoly::one()),
        GenKind::E => twisted(GenKind::F, sign.mul(&LaurentPoly::q_pow(-2))),
        GenKind::F => twisted(GenKind::E, sign.mul(&LaurentPoly::q_pow(2))),
    }
}

/// Action on an arbitrary word of generators, expanded by the coproduct and
/// normal-ordered. Words need not be normal.
pub fn act_word(alg: &Algebra, g: UqGenerator, word: &[GenIndex]) -> Element {
    check_index(alg, g);
    let n = alg.n();
    let k = g.index;
    let wsum = |w: &[GenIndex]| -> i32 { w.iter().map(|&x| gen_weight(n, k, x)).sum() };
    match g.kind {
        GenKind::K => alg.normal_form(word, LaurentPoly::q_pow(wsum(word))),
        GenKind::Kinv => alg.normal_form(word, LaurentPoly::q_pow(-wsum(word))),
        GenKind::E | GenKind::F => {
            let mut acc = Element::zero();
            for i in 0..word.len() {
                let gx = act_on_gen(alg, g, word[i]);
                if gx.is_zero() {
                    continue;
                }
                let (pre, post) = (&word[..i], &word[i + 1..]);
                let c = if g.kind == GenKind::E {
                    LaurentPoly::q_pow(wsum(pre))
                } else {
                    LaurentPoly::q_pow(-wsum(post))
                };
                let left = alg.normal_form(pre, c);
                let right = alg.normal_form(post, LaurentPoly::one());
                acc = acc.add(&alg.multiply(&alg.multiply(&left, &gx), &right));
            }
            acc
        }
    }
}

/// Action on a normal monomial, memoized in the algebra context.
pub fn act_monomial(alg: &Algebra, g: UqGenerator, m: &Monomial) -> Rc<Element> {
    let key = (g, m.clone());
    if let Some(r) = alg.action_cache.borrow().get(&key) {
        return r.clone();
    }
    let r = Rc::new(act_word(alg, g, &m.word()));
    alg.action_cache.borrow_mut().insert(key, r.clone());
    r
}

pub fn act<C: Coefficient>(alg: &Algebra, g: UqGenerator, f: &Element<C>) -> Element<C> {
    let mut acc: BTreeMap<Monomial, C> = BTreeMap::new();
    for (m, c) in f.terms() {
        for (m2, k) in act_monomial(alg, g, m).terms() {
            let t = c.mul_ref(&C::from_laurent(k));
            acc.entry(m2.clone()).or_insert_with(C::zero).add_assign_ref(&t);
        }
    }
    Element::from_terms(acc.into_iter().filter(|(_, c)| !c.is_zero()))
}

/// Applies `ops[0] ops[1] ⋯ ops[last]` (rightmost first).
pub fn act_sequence(alg: &Algebra, ops: &[UqGenerator], f: &Element) -> Element {
    ops.iter().rev().fold(f.clone(), |acc, &g| act(alg, g, &acc))
}

/// The right-hand side of the coproduct rule for `g(f h)`.
pub fn coproduct_expansion(alg: &Algebra, g: UqGenerator, f: &Element, h: &Element) -> Element {
    let k = g.index;
    match g.kind {
        GenKind::K | GenKind::Kinv => alg.multiply(&act(alg, g, f), &act(alg, g, h)),
        GenKind::E => alg
            .multiply(&act(alg, g, f), h)
            .add(&alg.multiply(&act(alg, UqGenerator::k(k), f), &act(alg, g, h))),
        GenKind::F => alg
            .multiply(&act(alg, g, f), &act(alg, UqGenerator::kinv(k), h))
            .add(&alg.multiply(f, &act(alg, g, h))),
    }
}

/// Basis of the span of `v_ν` under the `E_j, F_j` (`j ≠ n`), found
/// breadth-first; `v_ν` comes first.
pub fn generate_module(alg: &Algebra, nu: &Partition) -> Result<Vec<Element>> {
    let n = alg.n();
    let ceiling = binomial((n * n) as u64 + nu.weight() as u64 - 1, nu.weight() as u64) as usize;
    let ops: Vec<UqGenerator> = (1..2 * n)
        .filter(|&j| j != n)
        .flat_map(|j| [UqGenerator::e(j), UqGenerator::f(j)])
        .collect();
    let v = alg.highest_weight_vector(nu);
    let mut echelon = SparseEchelon::new();
    echelon.insert(to_sparse(&v));
    let mut basis = vec![v.clone()];
    let mut queue = VecDeque::from([v]);
    while let Some(u) = queue.pop_front() {
        for &g in &ops {
            let w = act(alg, g, &u);
            if w.is_zero() {
                continue;
            }
            if echelon.insert(to_sparse(&w)) {
                if echelon.rank() > ceiling {
                    return Err(Error::RankCeiling(ceiling));
                }
                basis.push(w.clone());
                queue.push_back(w);
            }
        }
    }
    Ok(basis)
}

pub(crate) fn to_sparse(f: &Element) -> BTreeMap<Monomial, LaurentPoly> {
    f.terms().map(|(m, c)| (m.clone(), c.clone())).collect()
}

/// Dimension of the irreducible `GL_n` module with highest weight `ν`
/// (Weyl's formula).
pub fn weyl_dimension(nu: &Partition) -> u64 {
    let l: Vec<i64> = nu.shifted().iter().map(|&x| x as i64).collect();
    let (mut num, mut den) = (1i128, 1i128);
    for i in 0..l.len() {
        for j in i + 1..l.len() {
            num *= (l[i] - l[j]) as i128;
            den *= (j - i) as i128;
        }
    }
    (num / den) as u64
}

fn cartan(i: usize, j: usize) -> i32 {
    match i.abs_diff(j) {
        0 => 2,
        1 => -1,
        _ => 0,
    }
}

/// `[w]_q = (q^w − q^{−w}) / (q − q^{−1})`.
pub fn q_integer(w: i32) -> LaurentPoly {
    let num = LaurentPoly::q_pow(w).sub(&LaurentPoly::q_pow(-w));
    let den = LaurentPoly::q_pow(1).sub(&LaurentPoly::q_pow(-1));
    num.exact_div(&den).expect("q-integers are Laurent polynomials")
}

/// Checks the Drinfeld–Jimbo relations as operator identities on every
/// normal monomial of total degree at most `dmax`. Returns descriptions of
/// the violations found.
pub fn serre_violations(alg: &Algebra, dmax: usize) -> Vec<String> {
    let n = alg.n();
    let r = 2 * n - 1;
    let (e, f, k, ki) = (UqGenerator::e, UqGenerator::f, UqGenerator::k, UqGenerator::kinv);
    let qp = LaurentPoly::q_pow;
    let q_plus = qp(1).add(&qp(-1));
    let mut bad = Vec::new();
    let seq = |ops: &[UqGenerator], v: &Element| act_sequence(alg, ops, v);
    for total in 0..=dmax {
        for hd in 0..=total {
            for m in alg.monomials(hd, total - hd) {
                let v = Element::from_monomial(m.clone(), LaurentPoly::one());
                let wv = monomial_weight(n, &m);
                let mut check = |label: String, lhs: Element, rhs: Element| {
                    if lhs != rhs {
                        bad.push(format!("{label} on {m}"));
                    }
                };
                for i in 1..=r {
                    check(format!("K{i}K{i}^-1"), seq(&[k(i), ki(i)], &v), v.clone());
                    check(format!("K{i}^-1K{i}"), seq(&[ki(i), k(i)], &v), v.clone());
                    for j in 1..=r {
                        let a = cartan(i, j);
                        check(
                            format!("K{i}E{j}"),
                            seq(&[k(i), e(j)], &v),
                            seq(&[e(j), k(i)], &v).scale(&qp(a)),
                        );
                        check(
                            format!("K{i}F{j}"),
                            seq(&[k(i), f(j)], &v),
                            seq(&[f(j), k(i)], &v).scale(&qp(-a)),
                        );
                        let comm = seq(&[e(i), f(j)], &v).sub(&seq(&[f(j), e(i)], &v));
                        let expected = if i == j {
                            v.scale(&q_integer(wv[i - 1]))
                        } else {
                            Element::zero()
                        };
                        check(format!("[E{i},F{j}]"), comm, expected);
                        if i.abs_diff(j) == 1 {
                            for (x, y, name) in [(e(i), e(j), "E"), (f(i), f(j), "F")] {
                                let s = seq(&[x, x, y], &v)
                                    .sub(&seq(&[x, y, x], &v).scale(&q_plus))
                                    .add(&seq(&[y, x, x], &v));
                                check(format!("Serre {name}{i}{name}{j}"), s, Element::zero());
                            }
                        } else if i.abs_diff(j) > 1 {
                            for (x, y, name) in [(e(i), e(j), "E"), (f(i), f(j), "F")] {
                                check(format!("[{name}{i},{name}{j}]"), seq(&[x, y], &v), seq(&[y, x], &v));
                            }
                        }
                    }
                }
            }
        }
    }
    bad
}

pub fn serre_audit(alg: &Algebra, dmax: usize) -> bool {
    serre_violations(alg, dmax).is_empty()
}

/// Applies `g` to each defining relation word by word; the results must
/// normal-order to zero for the action to descend to the algebra.
pub fn equivariance_violations(alg: &Algebra, relations: &[Relation]) -> Vec<String> {
    let mut bad = Vec::new();
    for g in UqGenerator::all(alg.n()) {
        for rel in relations {
            let total = rel.terms.iter().fold(Element::zero(), |acc, (c, w)| {
                acc.add(&act_word(alg, g, w).scale(c))
            });
            if !total.is_zero() {
                bad.push(format!("{g} on {}", rel.label));
            }
        }
    }
    bad
}

/// `E_j v_ν = 0` for `j ≠ n` and the weight of `v_ν` is
/// `(ν_1−ν_2, …, ν_{n−1}−ν_n, 2ν_n, ν_{n−1}−ν_n, …, ν_1−ν_2)`.
pub fn highest_weight_check(alg: &Algebra, nu: &Partition) -> bool {
    let n = alg.n();
    let v = alg.highest_weight_vector(nu);
    let annihilated = (1..2 * n)
        .filter(|&j| j != n)
        .all(|j| act(alg, UqGenerator::e(j), &v).is_zero());
    annihilated && weight(n, &v).ok() == Some(expected_highest_weight(nu))
}

pub fn expected_highest_weight(nu: &Partition) -> WeightVector {
    let n = nu.n();
    let p: Vec<i32> = nu.parts().iter().map(|&x| x as i32).collect();
    let mut w: Vec<i32> = (0..n - 1).map(|i| p[i] - p[i + 1]).collect();
    w.push(2 * p[n - 1]);
    w.extend((0..n - 1).rev().map(|i| p[i] - p[i + 1]));
    w
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partition::enumerate;

    fn p(v: &[u32]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    #[test]
    fn table_examples() {
        let alg = Algebra::new(2);
        assert_eq!(
            act_generator_on_z(&alg, UqGenerator::f(1), 1, 1),
            alg.z(2, 1).scale(&LaurentPoly::s_pow(1))
        );
        assert_eq!(
            act_generator_on_z(&alg, UqGenerator::e(1), 2, 1),
            alg.z(1, 1).scale(&LaurentPoly::s_pow(-1))
        );
        assert!(act_generator_on_z(&alg, UqGenerator::f(2), 1, 1).is_zero());
        assert_eq!(
            act_generator_on_z(&alg, UqGenerator::f(2), 2, 2),
            alg.scalar(LaurentPoly::s_pow(1))
        );
    }

    #[test]
    fn products_and_composition() {
        let alg = Algebra::new(2);
        let f = alg.multiply(&alg.z(1, 1), &alg.z(2, 2));
        assert_eq!(act(&alg, UqGenerator::k(1), &f), f);
        assert!(act(&alg, UqGenerator::e(1), &alg.z(1, 1)).is_zero());
        let once = act(&alg, UqGenerator::f(1), &alg.z(1, 1));
        assert!(act(&alg, UqGenerator::f(1), &once).is_zero());
    }

    #[test]
    fn weights() {
        let alg = Algebra::new(2);
        assert_eq!(weight(2, &alg.highest_weight_vector(&p(&[1, 0]))).unwrap(), vec![1, 0, 1]);
        assert_eq!(weight(2, &alg.highest_weight_vector(&p(&[1, 1]))).unwrap(), vec![0, 2, 0]);
        assert_eq!(weight(2, &alg.one::<LaurentPoly>()).unwrap(), vec![0, 0, 0]);
        assert_eq!(weight(2, &alg.z(1, 1).add(&alg.z(2, 2))), Err(Error::NotAWeightVector));
    }

    #[test]
    fn module_dimensions() {
        let alg = Algebra::new(2);
        assert_eq!(generate_module(&alg, &p(&[1, 0])).unwrap().len(), 4);
        let det = generate_module(&alg, &p(&[1, 1])).unwrap();
        assert_eq!(det, vec![alg.qdet()]);
        assert_eq!(generate_module(&alg, &p(&[2, 0])).unwrap().len(), 9);
        assert_eq!(weyl_dimension(&p(&[2, 1, 0])), 8);
    }

    #[test]
    fn highest_weight_vectors() {
        for n in 1..=3 {
            let alg = Algebra::new(n);
            for nu in enumerate(n, 3) {
                assert!(highest_weight_check(&alg, &nu), "{nu:?}");
            }
        }
    }

    #[test]
    fn serre_relations_low_degree() {
        let alg = Algebra::new(1);
        assert_eq!(serre_violations(&alg, 2), Vec::<String>::new());
        let alg = Algebra::new(2);
        assert_eq!(serre_violations(&alg, 1), Vec::<String>::new());
    }

    #[test]
    fn q_integers() {
        assert_eq!(q_integer(0), LaurentPoly::zero());
        assert_eq!(q_integer(1), LaurentPoly::one());
        assert_eq!(q_integer(2), LaurentPoly::q_pow(1).add(&LaurentPoly::q_pow(-1)));
        assert_eq!(q_integer(-1), LaurentPoly::from_int(-1));
    }

    #[test]
    fn action_respects_relations() {
        for n in 1..=2 {
            let alg = Algebra::new(n);
            let rels = crate::algebra::defining_relations(n);
            assert_eq!(equivariance_violations(&alg, &rels), Vec::<String>::new(), "n={n}");
        }
    }
}
