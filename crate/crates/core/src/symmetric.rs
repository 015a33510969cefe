//! Symmetric polynomials: monomial symmetric functions, classical and
//! q-factorial Schur polynomials, interpolation polynomials, and the closed
//! spectral formulas they feed.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::ser::{Serialize, SerializeSeq, Serializer};

use crate::error::{Error, Result};
use crate::linalg::{inversions, permute, rank, solve, Matrix};
use crate::partition::{dominance_leq, enumerate, knop_bar, spec_points, Partition};
use crate::ring::{int, Field, LaurentPoly, RationalFunction, Scalar};

/// Scalar value of a spectrum; a Laurent polynomial whenever the
/// construction guarantees it.
pub type SpectrumValue = RationalFunction;

/// Commutative polynomial in `x_1..x_n`.
#[derive(Clone, PartialEq)]
pub struct MultiPoly<C> {
    n: usize,
    terms: BTreeMap<Vec<u32>, C>,
}

impl<C: Scalar> MultiPoly<C> {
    pub fn zero(n: usize) -> Self {
        MultiPoly { n, terms: BTreeMap::new() }
    }

    pub fn constant(n: usize, c: C) -> Self {
        let mut p = Self::zero(n);
        p.add_term(vec![0; n], c);
        p
    }

    pub fn one(n: usize) -> Self {
        Self::constant(n, C::one())
    }

    /// The variable `x_i`, 0-based.
    pub fn var(n: usize, i: usize) -> Self {
        let mut e = vec![0; n];
        e[i] = 1;
        let mut p = Self::zero(n);
        p.add_term(e, C::one());
        p
    }

    pub fn from_terms<I: IntoIterator<Item = (Vec<u32>, C)>>(n: usize, terms: I) -> Self {
        let mut p = Self::zero(n);
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &C)> {
        self.terms.iter()
    }

    pub fn coeff(&self, exps: &[u32]) -> C {
        self.terms.get(exps).cloned().unwrap_or_else(C::zero)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|e| e.iter().sum()).max().unwrap_or(0)
    }

    pub fn add_term(&mut self, exps: Vec<u32>, c: C) {
        debug_assert_eq!(exps.len(), self.n);
        if c.is_zero() {
            return;
        }
        match self.terms.entry(exps) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                o.get_mut().add_assign_ref(&c);
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut r = self.clone();
        for (e, c) in &other.terms {
            r.add_term(e.clone(), c.clone());
        }
        r
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut r = self.clone();
        for (e, c) in &other.terms {
            r.add_term(e.clone(), c.neg_ref());
        }
        r
    }

    pub fn scale(&self, c: &C) -> Self {
        Self::from_terms(self.n, self.terms.iter().map(|(e, x)| (e.clone(), x.mul_ref(c))))
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut acc: BTreeMap<Vec<u32>, C> = BTreeMap::new();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e: Vec<u32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                acc.entry(e).or_insert_with(C::zero).add_assign_ref(&c1.mul_ref(c2));
            }
        }
        Self::from_terms(self.n, acc.into_iter().filter(|(_, c)| !c.is_zero()))
    }

    pub fn eval(&self, x: &[C]) -> C {
        assert_eq!(x.len(), self.n);
        let mut total = C::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (xi, &k) in x.iter().zip(e) {
                for _ in 0..k {
                    t = t.mul_ref(xi);
                }
            }
            total.add_assign_ref(&t);
        }
        total
    }

    /// Invariant under every transposition of adjacent variables.
    pub fn is_symmetric(&self) -> bool {
        (0..self.n.saturating_sub(1)).all(|i| {
            self.terms.iter().all(|(e, c)| {
                let mut f = e.clone();
                f.swap(i, i + 1);
                self.terms.get(&f) == Some(c)
            })
        })
    }

    pub fn map_coeffs<D: Scalar>(&self, f: impl Fn(&C) -> D) -> MultiPoly<D> {
        MultiPoly::from_terms(self.n, self.terms.iter().map(|(e, c)| (e.clone(), f(c))))
    }

    /// Multiplies each monomial of total degree `d` by `f(d)`.
    pub fn scale_by_degree(&self, f: impl Fn(u32) -> C) -> Self {
        Self::from_terms(
            self.n,
            self.terms.iter().map(|(e, c)| (e.clone(), c.mul_ref(&f(e.iter().sum())))),
        )
    }

    /// Exact quotient by `x_i − x_j`, by synthetic division in `x_i` with
    /// the other variables as coefficients.
    pub fn div_by_difference(&self, i: usize, j: usize) -> Result<Self> {
        assert_ne!(i, j);
        let mut by_deg: BTreeMap<u32, Self> = BTreeMap::new();
        for (e, c) in &self.terms {
            let mut rest = e.clone();
            let k = std::mem::take(&mut rest[i]);
            by_deg.entry(k).or_insert_with(|| Self::zero(self.n)).add_term(rest, c.clone());
        }
        let Some(&top) = by_deg.keys().next_back() else {
            return Ok(Self::zero(self.n));
        };
        let xj = Self::var(self.n, j);
        let mut quotient = Self::zero(self.n);
        let mut carry = Self::zero(self.n);
        for k in (0..=top).rev() {
            let a = by_deg.remove(&k).unwrap_or_else(|| Self::zero(self.n));
            // b_{k-1} = a_k + x_j b_k
            let b = a.add(&xj.mul(&carry));
            if k == 0 {
                if !b.is_zero() {
                    return Err(Error::NotDivisible);
                }
                break;
            }
            let mut shifted = Self::zero(self.n);
            for (e, c) in &b.terms {
                let mut f = e.clone();
                f[i] += k - 1;
                shifted.add_term(f, c.clone());
            }
            quotient = quotient.add(&shifted);
            carry = b;
        }
        Ok(quotient)
    }
}

impl<C: Scalar> fmt::Display for MultiPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms.iter().rev() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({c})")?;
            for (i, &k) in e.iter().enumerate() {
                match k {
                    0 => {}
                    1 => write!(f, "*x{}", i + 1)?,
                    _ => write!(f, "*x{}^{k}", i + 1)?,
                }
            }
        }
        Ok(())
    }
}

impl<C: Scalar> fmt::Debug for MultiPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MultiPoly({self})")
    }
}

/// Serialized as a list of `[exponents, coefficient]` pairs.
impl<C: Scalar + Serialize> Serialize for MultiPoly<C> {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.terms.len()))?;
        for (e, c) in &self.terms {
            seq.serialize_element(&(e, c))?;
        }
        seq.end()
    }
}

/// Distinct permutations of `parts`.
fn orbit(parts: &[u32]) -> Vec<Vec<u32>> {
    let mut v = parts.to_vec();
    v.sort_unstable();
    let mut out = vec![v.clone()];
    // next lexicographic permutation
    while let Some(i) = (1..v.len()).rev().find(|&i| v[i - 1] < v[i]) {
        let j = (i..v.len()).rev().find(|&j| v[j] > v[i - 1]).unwrap();
        v.swap(i - 1, j);
        v[i..].reverse();
        out.push(v.clone());
    }
    out
}

/// `m_λ`: the sum of the distinct monomials whose exponent is a
/// rearrangement of `λ`.
pub fn monomial_symmetric<C: Scalar>(lam: &Partition) -> MultiPoly<C> {
    MultiPoly::from_terms(lam.n(), orbit(lam.parts()).into_iter().map(|e| (e, C::one())))
}

fn check_distinct<T: PartialEq>(x: &[T]) -> Result<()> {
    for i in 0..x.len() {
        for j in i + 1..x.len() {
            if x[i] == x[j] {
                return Err(Error::RepeatedPoints);
            }
        }
    }
    Ok(())
}

fn leibniz<S: Scalar>(m: &Matrix<S>) -> S {
    crate::linalg::determinant(m)
}

/// Classical factorial Schur polynomial at distinct rational points:
/// `det(∏_{m<ν_j+n−j}(x_i − m)) / ∏_{i<j}(x_i − x_j)`.
pub fn factorial_schur_classical(nu: &Partition, x: &[BigRational]) -> Result<BigRational> {
    let n = nu.n();
    assert_eq!(x.len(), n);
    check_distinct(x)?;
    let shifted = nu.shifted();
    let m: Matrix<BigRational> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| (0..shifted[j]).fold(BigRational::one(), |acc, k| acc * (&x[i] - int(k as i64))))
                .collect()
        })
        .collect();
    let mut vdm = BigRational::one();
    for i in 0..n {
        for j in i + 1..n {
            vdm *= &x[i] - &x[j];
        }
    }
    Ok(leibniz(&m) / vdm)
}

/// `∏_{m<len}(x − s^{base·m})`.
fn falling(x: &LaurentPoly, len: u32, base: i32) -> LaurentPoly {
    (0..len as i32).fold(LaurentPoly::one(), |acc, m| acc.mul(&x.sub(&LaurentPoly::s_pow(base * m))))
}

/// The q-factorial Schur polynomial with base `s^base` evaluated at distinct
/// monomial points; `base = 4` is the `q²` version, `base = 2` the `q` one.
pub fn q_factorial_schur_at(nu: &Partition, x: &[LaurentPoly], base: i32) -> Result<LaurentPoly> {
    let n = nu.n();
    assert_eq!(x.len(), n);
    check_distinct(x)?;
    let shifted = nu.shifted();
    let m: Matrix<LaurentPoly> = (0..n)
        .map(|i| (0..n).map(|j| falling(&x[i], shifted[j], base)).collect())
        .collect();
    let mut vdm = LaurentPoly::one();
    for i in 0..n {
        for j in i + 1..n {
            vdm = vdm.mul(&x[i].sub(&x[j]));
        }
    }
    leibniz(&m).exact_div(&vdm)
}

/// `𝔰_ν(q^{2(λ+δ)}; q²)`.
pub fn q_factorial_schur_eval(nu: &Partition, lam: &Partition) -> LaurentPoly {
    assert_eq!(nu.n(), lam.n(), "ν and λ must have the same length");
    q_factorial_schur_at(nu, &spec_points(lam), 4).expect("alternant is divisible by the Vandermonde")
}

/// Which deformation parameter the q-factorial Schur polynomial uses.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Base {
    /// Factors `x − q^{2m}`.
    QSquared,
    /// Factors `x − q^m`.
    Q,
}

impl Base {
    fn s_exponent(self) -> i32 {
        match self {
            Base::QSquared => 4,
            Base::Q => 2,
        }
    }
}

/// Symbolic `𝔰_ν(x_1..x_n)` over the Laurent ring.
pub fn q_factorial_schur_symbolic(nu: &Partition, base: Base) -> MultiPoly<LaurentPoly> {
    let n = nu.n();
    let shifted = nu.shifted();
    let b = base.s_exponent();
    let entry = |i: usize, j: usize| {
        let x = MultiPoly::<LaurentPoly>::var(n, i);
        (0..shifted[j] as i32).fold(MultiPoly::one(n), |acc: MultiPoly<LaurentPoly>, m| {
            acc.mul(&x.sub(&MultiPoly::constant(n, LaurentPoly::s_pow(b * m))))
        })
    };
    let m: Vec<Vec<MultiPoly<LaurentPoly>>> = (0..n).map(|i| (0..n).map(|j| entry(i, j)).collect()).collect();
    let mut det = MultiPoly::zero(n);
    let mut perm: Vec<usize> = (0..n).collect();
    permute(&mut perm, 0, &mut |p| {
        let term = p
            .iter()
            .enumerate()
            .fold(MultiPoly::one(n), |acc: MultiPoly<LaurentPoly>, (i, &j)| acc.mul(&m[i][j]));
        det = if inversions(p).is_multiple_of(2) { det.add(&term) } else { det.sub(&term) };
    });
    for i in 0..n {
        for j in i + 1..n {
            det = det.div_by_difference(i, j).expect("alternant is divisible by x_i - x_j");
        }
    }
    det
}

/// `(a)_k = ∏_{i<k}(a − q^{2i})`.
pub fn qpochhammer(a: &LaurentPoly, k: u32) -> LaurentPoly {
    falling(a, k, 4)
}

/// `(−q)^{|ν|} q^{const} 𝔰_ν(q^{2(λ+δ)}; q²)` with
/// `const = −Σ ν_i(ν_i + 2n − 2i)`.
pub fn rhs_theorem1(nu: &Partition, lam: &Partition) -> LaurentPoly {
    let n = nu.n() as i64;
    let size = nu.weight() as i64;
    let constant: i64 = -nu
        .parts()
        .iter()
        .enumerate()
        .map(|(i, &v)| v as i64 * (v as i64 + 2 * n - 2 * (i as i64 + 1)))
        .sum::<i64>();
    let sign = if size % 2 == 0 { int(1) } else { int(-1) };
    LaurentPoly::monomial((2 * size + 2 * constant) as i32, sign).mul(&q_factorial_schur_eval(nu, lam))
}

/// `(−q)^k q^{−k²−2k(n−k)} 𝔰_{1^k}(q^{2(λ+δ)}; q²)`.
pub fn rhs_theorem2(k: usize, lam: &Partition) -> Result<LaurentPoly> {
    let n = lam.n();
    if k == 0 || k > n {
        return Err(Error::Precondition(format!("k = {k} must lie in 1..={n}")));
    }
    let (k_, n_) = (k as i32, n as i32);
    let sign = if k.is_multiple_of(2) { int(1) } else { int(-1) };
    let pre = LaurentPoly::monomial(2 * (k_ - k_ * k_ - 2 * k_ * (n_ - k_)), sign);
    Ok(pre.mul(&q_factorial_schur_eval(&Partition::one_k(n, k), lam)))
}

/// `𝔰_ν(q^{2(ν+δ)}) = q^{2|ν|−2n} 𝔰_{1^n}(q^{2(ν+δ)}) 𝔰_{ν−1^n}(q^{2(ν−1^n+δ)})`
/// for `ν_n > 0`.
pub fn lemma3_sides(nu: &Partition) -> Result<(LaurentPoly, LaurentPoly)> {
    if nu.last() == 0 {
        return Err(Error::Precondition("the last part must be positive".into()));
    }
    let n = nu.n();
    let lower = nu.minus_constant(1)?;
    let lhs = q_factorial_schur_eval(nu, nu);
    let rhs = LaurentPoly::q_pow(2 * nu.weight() as i32 - 2 * n as i32)
        .mul(&q_factorial_schur_eval(&Partition::one_k(n, n), nu))
        .mul(&q_factorial_schur_eval(&lower, &lower));
    Ok((lhs, rhs))
}

pub fn lemma3_check(nu: &Partition) -> Result<bool> {
    lemma3_sides(nu).map(|(l, r)| l == r)
}

/// `𝔰_ν(q^{2(ν+δ)}) = q^{2|ν|} 𝔰_{ν'}(q^{2(ν'+δ')})` for `ν_n = 0`, where `ν'`
/// drops the last part.
pub fn lemma4_sides(nu: &Partition) -> Result<(LaurentPoly, LaurentPoly)> {
    if nu.last() != 0 {
        return Err(Error::Precondition("the last part must be zero".into()));
    }
    let reduced = nu.drop_last();
    let lhs = q_factorial_schur_eval(nu, nu);
    let rhs = LaurentPoly::q_pow(2 * nu.weight() as i32).mul(&q_factorial_schur_eval(&reduced, &reduced));
    Ok((lhs, rhs))
}

pub fn lemma4_check(nu: &Partition) -> Result<bool> {
    lemma4_sides(nu).map(|(l, r)| l == r)
}

/// Interpolation polynomial `P_λ`: `m_λ + Σ_{μ<λ} p_μ m_μ` vanishing at
/// `bar(μ)` for every `|μ| ≤ |λ|`, `μ ≠ λ`.
fn interpolate<F: Field>(lam: &Partition, bar: impl Fn(&Partition) -> Vec<F>) -> Result<MultiPoly<F>> {
    let n = lam.n();
    let all = enumerate(n, lam.weight());
    let unknowns: Vec<&Partition> = all.iter().filter(|mu| *mu != lam && dominance_leq(mu, lam)).collect();
    let conditions: Vec<&Partition> = all.iter().filter(|mu| *mu != lam).collect();
    let basis: Vec<MultiPoly<F>> = unknowns.iter().map(|mu| monomial_symmetric(mu)).collect();
    let top: MultiPoly<F> = monomial_symmetric(lam);
    let points: Vec<Vec<F>> = conditions.iter().map(|mu| bar(mu)).collect();
    let mut p = top.clone();
    if !unknowns.is_empty() {
        let a: Matrix<F> = points.iter().map(|x| basis.iter().map(|m| m.eval(x)).collect()).collect();
        let b: Vec<F> = points.iter().map(|x| top.eval(x).neg_ref()).collect();
        let coeffs = solve(&a, &b)?;
        for (m, c) in basis.iter().zip(&coeffs) {
            p = p.add(&m.scale(c));
        }
    }
    if points.iter().any(|x| !p.eval(x).is_zero()) {
        return Err(Error::InconsistentSystem);
    }
    Ok(p)
}

/// `P_λ(z; q, t)` at fixed rational `q, t`.
pub fn knop_interpolation(lam: &Partition, qv: &BigRational, tv: &BigRational) -> Result<MultiPoly<BigRational>> {
    if qv.is_zero() || tv.is_zero() {
        return Err(Error::Precondition("q and t must be nonzero".into()));
    }
    interpolate(lam, |mu| knop_bar(mu, qv, tv))
}

/// Rank of the vanishing conditions on the coefficients `p_μ`, `μ < λ`,
/// next to the number of unknowns. Equal means `P_λ` is unique.
pub fn knop_uniqueness(lam: &Partition, qv: &BigRational, tv: &BigRational) -> (usize, usize) {
    let others: Vec<Partition> = enumerate(lam.n(), lam.weight()).into_iter().filter(|mu| mu != lam).collect();
    let unknowns: Vec<MultiPoly<BigRational>> = others
        .iter()
        .filter(|mu| dominance_leq(mu, lam))
        .map(monomial_symmetric)
        .collect();
    if unknowns.is_empty() {
        return (0, 0);
    }
    let a: Matrix<BigRational> = others
        .iter()
        .map(|mu| {
            let x = knop_bar(mu, qv, tv);
            unknowns.iter().map(|m| m.eval(&x)).collect()
        })
        .collect();
    (rank(&a), unknowns.len())
}

/// `P_λ(z; q, q)` over the rational functions in `s`; the nodes are
/// `μ̄_i = q^{μ_i − i + 1}`.
pub fn knop_interpolation_t_equals_q(lam: &Partition) -> Result<MultiPoly<RationalFunction>> {
    interpolate(lam, |mu| {
        mu.parts()
            .iter()
            .enumerate()
            .map(|(i, &p)| RationalFunction::from(LaurentPoly::q_pow(p as i32 - i as i32)))
            .collect()
    })
}

/// Right-hand side `q^{−(n−1)|λ|} 𝔰_λ(q^{n−1}z; q)`.
pub fn prop4_rhs(lam: &Partition) -> MultiPoly<LaurentPoly> {
    let shift = lam.n() as i32 - 1;
    q_factorial_schur_symbolic(lam, Base::Q)
        .scale_by_degree(|d| LaurentPoly::q_pow(shift * d as i32))
        .scale(&LaurentPoly::q_pow(-shift * lam.weight() as i32))
}

/// `P_λ(z; q, q) = q^{−(n−1)|λ|} 𝔰_λ(q^{n−1}z; q)`, compared exactly.
pub fn prop4_check(lam: &Partition) -> Result<bool> {
    let lhs = knop_interpolation_t_equals_q(lam)?;
    let rhs = prop4_rhs(lam).map_coeffs(|c| RationalFunction::from(c.clone()));
    Ok(lhs == rhs)
}

/// `lim_{q→1} value / (1 − q²)^{|ν|}`.
pub fn classical_limit(value: &RationalFunction, nu: &Partition) -> Result<BigRational> {
    let scale = LaurentPoly::from_q_terms([(0, 1), (2, -1)]).pow(nu.weight() as i64)?;
    value.div(&RationalFunction::from(scale))?.limit_at_one()
}

/// The classical node `λ + δ` as rationals.
pub fn classical_points(lam: &Partition) -> Vec<BigRational> {
    lam.shifted().into_iter().map(|x| int(x as i64)).collect()
}
