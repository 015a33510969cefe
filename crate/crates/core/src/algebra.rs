//! The quantum matrix algebra `Pol(Mat_n)_q`.
//!
//! Elements are linear combinations of normal monomials `z^h (z*)^a`: all
//! holomorphic generators to the left, sorted by `(row, col)` ascending, then
//! all starred generators sorted descending. With the descending convention
//! the involution maps normal monomials to normal monomials without any
//! rewriting: `(z^h (z*)^a)* = z^a (z*)^h`.
//!
//! Products are normal-ordered by three memoized recursions:
//!
//! * holomorphic right multiplication by one generator (relations among the
//!   `z`; the starred side is the mirror image under `*`);
//! * moving a starred word past a holomorphic word (the `z* z` relation with
//!   its R-matrix coefficients);
//! * the same move modulo the left ideal generated by the `z*`, which is the
//!   Fock module.

use std::cell::{Cell, RefCell};
use std::collections::BTreeMap;
use std::fmt;
use std::rc::Rc;

use rustc_hash::FxHashMap;
use serde::ser::{Serialize, SerializeMap, SerializeSeq, Serializer};

use crate::error::{Error, Result};
use crate::linalg::{inversions, permute};
use crate::partition::Partition;
use crate::ring::{int, Coefficient, LaurentPoly, Scalar};

/// A generator `z_a^α` or `(z_a^α)*`, with 1-based `row = a`, `col = α`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct GenIndex {
    pub row: usize,
    pub col: usize,
    pub starred: bool,
}

impl GenIndex {
    pub fn z(row: usize, col: usize) -> Self {
        GenIndex { row, col, starred: false }
    }

    pub fn zs(row: usize, col: usize) -> Self {
        GenIndex { row, col, starred: true }
    }

    fn slot(self, n: usize) -> usize {
        (self.row - 1) * n + (self.col - 1)
    }

    fn from_slot(slot: usize, n: usize, starred: bool) -> Self {
        GenIndex {
            row: slot / n + 1,
            col: slot % n + 1,
            starred,
        }
    }
}

impl fmt::Display for GenIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.starred {
            write!(f, "z{}{}*", self.row, self.col)
        } else {
            write!(f, "z{}{}", self.row, self.col)
        }
    }
}

type Exps = Vec<u8>;

/// Normal monomial: exponent vectors over the `n²` generators of each kind,
/// indexed by `(row - 1) * n + (col - 1)`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    holo: Exps,
    anti: Exps,
}

impl Monomial {
    pub fn unit(n: usize) -> Self {
        Monomial {
            holo: vec![0; n * n],
            anti: vec![0; n * n],
        }
    }

    pub fn from_exponents(holo: Vec<u8>, anti: Vec<u8>) -> Self {
        assert_eq!(holo.len(), anti.len());
        Monomial { holo, anti }
    }

    pub fn holo(&self) -> &[u8] {
        &self.holo
    }

    pub fn anti(&self) -> &[u8] {
        &self.anti
    }

    pub fn n(&self) -> usize {
        (self.holo.len() as f64).sqrt() as usize
    }

    pub fn holo_degree(&self) -> usize {
        self.holo.iter().map(|&e| e as usize).sum()
    }

    pub fn anti_degree(&self) -> usize {
        self.anti.iter().map(|&e| e as usize).sum()
    }

    pub fn is_unit(&self) -> bool {
        self.holo_degree() == 0 && self.anti_degree() == 0
    }

    pub fn star(&self) -> Self {
        Monomial {
            holo: self.anti.clone(),
            anti: self.holo.clone(),
        }
    }

    /// The normal word: holomorphic generators ascending, then starred
    /// generators descending.
    pub fn word(&self) -> Vec<GenIndex> {
        let n = self.n();
        let mut w = Vec::with_capacity(self.holo_degree() + self.anti_degree());
        for (slot, &e) in self.holo.iter().enumerate() {
            for _ in 0..e {
                w.push(GenIndex::from_slot(slot, n, false));
            }
        }
        for (slot, &e) in self.anti.iter().enumerate().rev() {
            for _ in 0..e {
                w.push(GenIndex::from_slot(slot, n, true));
            }
        }
        w
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let w = self.word();
        if w.is_empty() {
            return write!(f, "1");
        }
        let mut it = w.iter().peekable();
        let mut first = true;
        while let Some(g) = it.next() {
            let mut k = 1;
            while it.peek() == Some(&g) {
                it.next();
                k += 1;
            }
            if !first {
                write!(f, " ")?;
            }
            first = false;
            if k == 1 {
                write!(f, "{g}")?;
            } else {
                write!(f, "{g}^{k}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{self}]")
    }
}

/// Finite linear combination of normal monomials.
#[derive(Clone, PartialEq, Eq)]
pub struct Element<C = LaurentPoly> {
    terms: BTreeMap<Monomial, C>,
}

impl<C: Scalar> Default for Element<C> {
    fn default() -> Self {
        Element { terms: BTreeMap::new() }
    }
}

impl<C: Scalar> Element<C> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_monomial(m: Monomial, c: C) -> Self {
        let mut e = Self::zero();
        e.add_term(m, c);
        e
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, C)>>(terms: I) -> Self {
        let mut e = Self::zero();
        for (m, c) in terms {
            e.add_term(m, c);
        }
        e
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &C)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> C {
        self.terms.get(m).cloned().unwrap_or_else(C::zero)
    }

    pub fn add_term(&mut self, m: Monomial, c: C) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                o.get_mut().add_assign_ref(&c);
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut r = self.clone();
        for (m, c) in &other.terms {
            r.add_term(m.clone(), c.clone());
        }
        r
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut r = self.clone();
        for (m, c) in &other.terms {
            r.add_term(m.clone(), c.neg_ref());
        }
        r
    }

    pub fn scale(&self, c: &C) -> Self {
        Element::from_terms(self.terms.iter().map(|(m, x)| (m.clone(), x.mul_ref(c))))
    }

    pub fn map_coeffs<D: Scalar>(&self, f: impl Fn(&C) -> D) -> Element<D> {
        Element::from_terms(self.terms.iter().map(|(m, c)| (m.clone(), f(c))))
    }

    /// The involution. Coefficients are real functions of `s`, so they are
    /// left unchanged.
    pub fn star(&self) -> Self {
        Element {
            terms: self.terms.iter().map(|(m, c)| (m.star(), c.clone())).collect(),
        }
    }

    /// Set of `(holo degree, anti degree)` pairs present.
    pub fn bidegrees(&self) -> Vec<(usize, usize)> {
        let mut v: Vec<_> = self.terms.keys().map(|m| (m.holo_degree(), m.anti_degree())).collect();
        v.sort_unstable();
        v.dedup();
        v
    }

    pub fn is_holomorphic(&self) -> bool {
        self.terms.keys().all(|m| m.anti_degree() == 0)
    }

    /// Coefficient of the unit monomial.
    pub fn constant_term(&self) -> C {
        self.terms
            .iter()
            .find(|(m, _)| m.is_unit())
            .map(|(_, c)| c.clone())
            .unwrap_or_else(C::zero)
    }
}

impl<C: Scalar> fmt::Display for Element<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if m.is_unit() {
                write!(f, "({c})")?;
            } else {
                write!(f, "({c}) {m}")?;
            }
        }
        Ok(())
    }
}

impl<C: Scalar> fmt::Debug for Element<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Element({self})")
    }
}

/// Serialized as a list of `{holo, anti, coeff}` records.
impl<C: Scalar + Serialize> Serialize for Element<C> {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        struct Rec<'a, C>(&'a Monomial, &'a C);
        impl<C: Serialize> Serialize for Rec<'_, C> {
            fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
                let mut m = s.serialize_map(Some(3))?;
                m.serialize_entry("holo", &self.0.holo)?;
                m.serialize_entry("anti", &self.0.anti)?;
                m.serialize_entry("coeff", self.1)?;
                m.end()
            }
        }
        let mut seq = serializer.serialize_seq(Some(self.terms.len()))?;
        for (m, c) in &self.terms {
            seq.serialize_element(&Rec(m, c))?;
        }
        seq.end()
    }
}

/// Entry `R(j, i, j', i')` of the R-matrix in the `z* z` relation.
pub fn r_matrix(j: usize, i: usize, jp: usize, ip: usize) -> LaurentPoly {
    if i != j && j == jp && i == ip {
        LaurentPoly::q_pow(-1)
    } else if i == j && j == jp && jp == ip {
        LaurentPoly::one()
    } else if i == j && ip == jp && ip > i {
        // -(q^{-2} - 1)
        LaurentPoly::from_q_terms([(0, 1), (-2, -1)])
    } else {
        LaurentPoly::zero()
    }
}

/// Nonzero `(j', i', R(j, i, j', i'))` for fixed `(j, i)`, indices 1..=n.
fn r_matrix_row(j: usize, i: usize, n: usize) -> Vec<(usize, usize, LaurentPoly)> {
    if i != j {
        vec![(j, i, r_matrix(j, i, j, i))]
    } else {
        (i..=n).map(|c| (c, c, r_matrix(j, i, c, c))).collect()
    }
}

type HoloTerms = Rc<Vec<(Exps, LaurentPoly)>>;
type MixedTerms = Rc<Vec<(Monomial, LaurentPoly)>>;

const DEPTH_LIMIT: usize = 100_000;

/// Context for computations in `Pol(Mat_n)_q` with fixed `n`.
///
/// Holds the memo tables of the rewriting recursions, so it is cheap to
/// reuse and not `Sync`; parallel callers use one context per worker.
pub struct Algebra {
    n: usize,
    holo_gen: RefCell<FxHashMap<(Exps, u8), HoloTerms>>,
    exchange_one: RefCell<FxHashMap<(u8, Exps), MixedTerms>>,
    exchange: RefCell<FxHashMap<(Exps, Exps), MixedTerms>>,
    fock_one: RefCell<FxHashMap<(u8, Exps), HoloTerms>>,
    fock: RefCell<FxHashMap<(Exps, Exps), HoloTerms>>,
    pub(crate) action_cache: RefCell<FxHashMap<(crate::action::UqGenerator, Monomial), Rc<Element>>>,
    depth: Cell<usize>,
}

impl fmt::Debug for Algebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Algebra").field("n", &self.n).finish_non_exhaustive()
    }
}

struct DepthGuard<'a>(&'a Cell<usize>);

impl<'a> DepthGuard<'a> {
    fn enter(c: &'a Cell<usize>) -> Self {
        let d = c.get() + 1;
        assert!(d < DEPTH_LIMIT, "normal ordering exceeded recursion ceiling {DEPTH_LIMIT}");
        c.set(d);
        DepthGuard(c)
    }
}

impl Drop for DepthGuard<'_> {
    fn drop(&mut self) {
        self.0.set(self.0.get() - 1);
    }
}

fn accumulate(acc: &mut BTreeMap<Exps, LaurentPoly>, k: Exps, c: LaurentPoly) {
    if c.is_zero() {
        return;
    }
    let e = acc.entry(k).or_default();
    e.add_assign(&c);
}

fn accumulate_mixed(acc: &mut BTreeMap<Monomial, LaurentPoly>, k: Monomial, c: LaurentPoly) {
    if c.is_zero() {
        return;
    }
    let e = acc.entry(k).or_default();
    e.add_assign(&c);
}

fn finish<K: Ord>(acc: BTreeMap<K, LaurentPoly>) -> Rc<Vec<(K, LaurentPoly)>> {
    Rc::new(acc.into_iter().filter(|(_, c)| !c.is_zero()).collect())
}

impl Algebra {
    pub fn new(n: usize) -> Self {
        assert!((1..=15).contains(&n), "n must be in 1..=15");
        Algebra {
            n,
            holo_gen: Default::default(),
            exchange_one: Default::default(),
            exchange: Default::default(),
            fock_one: Default::default(),
            fock: Default::default(),
            action_cache: Default::default(),
            depth: Cell::new(0),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    fn n2(&self) -> usize {
        self.n * self.n
    }

    fn check_gen(&self, g: GenIndex) {
        assert!(
            (1..=self.n).contains(&g.row) && (1..=self.n).contains(&g.col),
            "generator {g} out of range for n = {}",
            self.n
        );
    }

    fn unit_exps(&self) -> Exps {
        vec![0; self.n2()]
    }

    fn single(&self, slot: usize) -> Exps {
        let mut e = self.unit_exps();
        e[slot] = 1;
        e
    }

    pub fn unit_monomial(&self) -> Monomial {
        Monomial::unit(self.n)
    }

    pub fn one<C: Coefficient>(&self) -> Element<C> {
        Element::from_monomial(self.unit_monomial(), C::one())
    }

    pub fn scalar<C: Coefficient>(&self, c: C) -> Element<C> {
        Element::from_monomial(self.unit_monomial(), c)
    }

    pub fn gen_monomial(&self, g: GenIndex) -> Monomial {
        self.check_gen(g);
        let e = self.single(g.slot(self.n));
        if g.starred {
            Monomial { holo: self.unit_exps(), anti: e }
        } else {
            Monomial { holo: e, anti: self.unit_exps() }
        }
    }

    pub fn gen<C: Coefficient>(&self, g: GenIndex) -> Element<C> {
        Element::from_monomial(self.gen_monomial(g), C::one())
    }

    /// `z_a^α`
    pub fn z(&self, row: usize, col: usize) -> Element {
        self.gen(GenIndex::z(row, col))
    }

    /// `(z_a^α)*`
    pub fn zs(&self, row: usize, col: usize) -> Element {
        self.gen(GenIndex::zs(row, col))
    }

    pub fn holo_monomial(&self, exps: Vec<u8>) -> Monomial {
        assert_eq!(exps.len(), self.n2());
        Monomial { holo: exps, anti: self.unit_exps() }
    }

    // -- holomorphic relations ---------------------------------------------

    /// Rewrites `z_X z_Y` with `X > Y` into sorted pairs.
    fn swap_rule(&self, x: usize, y: usize) -> Vec<(LaurentPoly, usize, usize)> {
        let n = self.n;
        let (a, alpha) = (x / n, x % n);
        let (b, beta) = (y / n, y % n);
        debug_assert!(x > y);
        if a == b || alpha == beta {
            // z_a^α z_a^β = q^{-1} z_a^β z_a^α (β < α), and the column analogue
            vec![(LaurentPoly::q_pow(-1), y, x)]
        } else if beta > alpha {
            vec![(LaurentPoly::one(), y, x)]
        } else {
            // b < a, β < α:  z_a^α z_b^β = z_b^β z_a^α − (q − q^{-1}) z_b^α z_a^β
            vec![
                (LaurentPoly::one(), y, x),
                (LaurentPoly::from_q_terms([(1, -1), (-1, 1)]), b * n + alpha, a * n + beta),
            ]
        }
    }

    /// Normal form of `z^h · z_g`.
    fn holo_mul_gen(&self, h: &[u8], g: usize) -> HoloTerms {
        let last = h.iter().rposition(|&e| e > 0);
        match last {
            None => return Rc::new(vec![(self.single(g), LaurentPoly::one())]),
            Some(l) if l <= g => {
                let mut e = h.to_vec();
                e[g] += 1;
                return Rc::new(vec![(e, LaurentPoly::one())]);
            }
            _ => {}
        }
        let key = (h.to_vec(), g as u8);
        if let Some(r) = self.holo_gen.borrow().get(&key) {
            return r.clone();
        }
        let _guard = DepthGuard::enter(&self.depth);
        let l = last.unwrap();
        let mut prefix = h.to_vec();
        prefix[l] -= 1;
        let mut acc = BTreeMap::new();
        for (c, u, v) in self.swap_rule(l, g) {
            for (m1, c1) in self.holo_mul_gen(&prefix, u).iter() {
                let c01 = c.mul(c1);
                for (m2, c2) in self.holo_mul_gen(m1, v).iter() {
                    accumulate(&mut acc, m2.clone(), c01.mul(c2));
                }
            }
        }
        let r = finish(acc);
        self.holo_gen.borrow_mut().insert(key, r.clone());
        r
    }

    /// Normal form of `z^h1 · z^h2` in the holomorphic subalgebra.
    fn holo_mul(&self, h1: &[u8], h2: &[u8]) -> HoloTerms {
        let mut cur: Vec<(Exps, LaurentPoly)> = vec![(h1.to_vec(), LaurentPoly::one())];
        for (slot, &e) in h2.iter().enumerate() {
            for _ in 0..e {
                let mut acc = BTreeMap::new();
                for (m, c) in &cur {
                    for (m2, c2) in self.holo_mul_gen(m, slot).iter() {
                        accumulate(&mut acc, m2.clone(), c.mul(c2));
                    }
                }
                cur = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
            }
        }
        Rc::new(cur)
    }

    /// Normal form of `(z*)^a1 · (z*)^a2`, obtained by conjugating the
    /// holomorphic product `z^a2 z^a1`.
    fn anti_mul(&self, a1: &[u8], a2: &[u8]) -> HoloTerms {
        self.holo_mul(a2, a1)
    }

    // -- the z* z relation ---------------------------------------------------

    /// `(z_x)* z_y = q² Σ R R z_{y'} (z_{x'})* + (1 − q²) δ`, as
    /// `(coefficient, y', x')` plus the constant term.
    fn cross_rule(&self, x: usize, y: usize) -> (Vec<(LaurentPoly, usize, usize)>, LaurentPoly) {
        let n = self.n;
        let (b, beta) = (x / n + 1, x % n + 1);
        let (a, alpha) = (y / n + 1, y % n + 1);
        let q2 = LaurentPoly::q_pow(2);
        let mut out = Vec::new();
        for (bp, ap, r1) in r_matrix_row(b, a, n) {
            for (betap, alphap, r2) in r_matrix_row(beta, alpha, n) {
                let c = q2.mul(&r1).mul(&r2);
                out.push((c, (ap - 1) * n + (alphap - 1), (bp - 1) * n + (betap - 1)));
            }
        }
        let constant = if x == y {
            LaurentPoly::from_q_terms([(0, 1), (2, -1)])
        } else {
            LaurentPoly::zero()
        };
        (out, constant)
    }

    /// Normal form of `(z_x)* · z^h`.
    fn exchange_one(&self, x: usize, h: &[u8]) -> MixedTerms {
        let Some(first) = h.iter().position(|&e| e > 0) else {
            return Rc::new(vec![(
                Monomial { holo: self.unit_exps(), anti: self.single(x) },
                LaurentPoly::one(),
            )]);
        };
        let key = (x as u8, h.to_vec());
        if let Some(r) = self.exchange_one.borrow().get(&key) {
            return r.clone();
        }
        let _guard = DepthGuard::enter(&self.depth);
        let mut rest = h.to_vec();
        rest[first] -= 1;
        let mut acc = BTreeMap::new();
        let (terms, constant) = self.cross_rule(x, first);
        for (c, yp, xp) in terms {
            let single = self.single(yp);
            for (m, c1) in self.exchange_one(xp, &rest).iter() {
                let c01 = c.mul(c1);
                for (hh, c2) in self.holo_mul(&single, &m.holo).iter() {
                    accumulate_mixed(
                        &mut acc,
                        Monomial { holo: hh.clone(), anti: m.anti.clone() },
                        c01.mul(c2),
                    );
                }
            }
        }
        if !constant.is_zero() {
            accumulate_mixed(&mut acc, Monomial { holo: rest, anti: self.unit_exps() }, constant);
        }
        let r = finish(acc);
        self.exchange_one.borrow_mut().insert(key, r.clone());
        r
    }

    /// Normal form of `(z*)^a · z^h`.
    fn exchange(&self, a: &[u8], h: &[u8]) -> MixedTerms {
        // the rightmost starred generator is the smallest slot
        let Some(x) = a.iter().position(|&e| e > 0) else {
            return Rc::new(vec![(
                Monomial { holo: h.to_vec(), anti: self.unit_exps() },
                LaurentPoly::one(),
            )]);
        };
        if h.iter().all(|&e| e == 0) {
            return Rc::new(vec![(
                Monomial { holo: self.unit_exps(), anti: a.to_vec() },
                LaurentPoly::one(),
            )]);
        }
        let mut rest = a.to_vec();
        rest[x] -= 1;
        if rest.iter().all(|&e| e == 0) {
            return self.exchange_one(x, h);
        }
        let key = (a.to_vec(), h.to_vec());
        if let Some(r) = self.exchange.borrow().get(&key) {
            return r.clone();
        }
        let _guard = DepthGuard::enter(&self.depth);
        let mut acc = BTreeMap::new();
        for (m, c1) in self.exchange_one(x, h).iter() {
            for (m2, c2) in self.exchange(&rest, &m.holo).iter() {
                let c12 = c1.mul(c2);
                for (aa, c3) in self.anti_mul(&m2.anti, &m.anti).iter() {
                    accumulate_mixed(
                        &mut acc,
                        Monomial { holo: m2.holo.clone(), anti: aa.clone() },
                        c12.mul(c3),
                    );
                }
            }
        }
        let r = finish(acc);
        self.exchange.borrow_mut().insert(key, r.clone());
        r
    }

    /// Normal form of the product of two normal monomials.
    pub fn monomial_product(&self, m1: &Monomial, m2: &Monomial) -> Vec<(Monomial, LaurentPoly)> {
        let mut acc = BTreeMap::new();
        for (mid, c) in self.exchange(&m1.anti, &m2.holo).iter() {
            let hs = self.holo_mul(&m1.holo, &mid.holo);
            let ants = self.anti_mul(&mid.anti, &m2.anti);
            for (h, ch) in hs.iter() {
                let cc = c.mul(ch);
                for (a, ca) in ants.iter() {
                    accumulate_mixed(
                        &mut acc,
                        Monomial { holo: h.clone(), anti: a.clone() },
                        cc.mul(ca),
                    );
                }
            }
        }
        acc.into_iter().filter(|(_, c)| !c.is_zero()).collect()
    }

    // -- Fock module ---------------------------------------------------------

    /// `(z_x)* · z^h f_0`, holomorphic part only.
    fn fock_one(&self, x: usize, h: &[u8]) -> HoloTerms {
        let Some(first) = h.iter().position(|&e| e > 0) else {
            return Rc::new(Vec::new());
        };
        let key = (x as u8, h.to_vec());
        if let Some(r) = self.fock_one.borrow().get(&key) {
            return r.clone();
        }
        let _guard = DepthGuard::enter(&self.depth);
        let mut rest = h.to_vec();
        rest[first] -= 1;
        let mut acc = BTreeMap::new();
        let (terms, constant) = self.cross_rule(x, first);
        for (c, yp, xp) in terms {
            let single = self.single(yp);
            for (hh, c1) in self.fock_one(xp, &rest).iter() {
                let c01 = c.mul(c1);
                for (h2, c2) in self.holo_mul(&single, hh).iter() {
                    accumulate(&mut acc, h2.clone(), c01.mul(c2));
                }
            }
        }
        if !constant.is_zero() {
            accumulate(&mut acc, rest, constant);
        }
        let r = finish(acc);
        self.fock_one.borrow_mut().insert(key, r.clone());
        r
    }

    /// `(z*)^a · z^h f_0` as a holomorphic polynomial (times `f_0`).
    pub(crate) fn fock_exchange(&self, a: &[u8], h: &[u8]) -> HoloTerms {
        let Some(x) = a.iter().position(|&e| e > 0) else {
            return Rc::new(vec![(h.to_vec(), LaurentPoly::one())]);
        };
        let mut rest = a.to_vec();
        rest[x] -= 1;
        if rest.iter().all(|&e| e == 0) {
            return self.fock_one(x, h);
        }
        let key = (a.to_vec(), h.to_vec());
        if let Some(r) = self.fock.borrow().get(&key) {
            return r.clone();
        }
        let _guard = DepthGuard::enter(&self.depth);
        let mut acc = BTreeMap::new();
        for (hh, c1) in self.fock_one(x, h).iter() {
            for (h2, c2) in self.fock_exchange(&rest, hh).iter() {
                accumulate(&mut acc, h2.clone(), c1.mul(c2));
            }
        }
        let r = finish(acc);
        self.fock.borrow_mut().insert(key, r.clone());
        r
    }

    /// `z^h1 · z^h2` exposed for the Fock module.
    pub(crate) fn holo_product(&self, h1: &[u8], h2: &[u8]) -> HoloTerms {
        self.holo_mul(h1, h2)
    }

    // -- public operations ---------------------------------------------------

    /// Normal-ordered product.
    pub fn multiply<C: Coefficient>(&self, f: &Element<C>, g: &Element<C>) -> Element<C> {
        let mut acc: BTreeMap<Monomial, C> = BTreeMap::new();
        for (m1, c1) in f.terms() {
            for (m2, c2) in g.terms() {
                let c12 = c1.mul_ref(c2);
                for (m, k) in self.monomial_product(m1, m2) {
                    let t = c12.mul_ref(&C::from_laurent(&k));
                    acc.entry(m).or_insert_with(C::zero).add_assign_ref(&t);
                }
            }
        }
        Element::from_terms(acc.into_iter().filter(|(_, c)| !c.is_zero()))
    }

    pub fn multiply_all<C: Coefficient>(&self, factors: &[&Element<C>]) -> Element<C> {
        factors
            .iter()
            .fold(self.one(), |acc, f| self.multiply(&acc, f))
    }

    pub fn pow<C: Coefficient>(&self, f: &Element<C>, k: u32) -> Element<C> {
        (0..k).fold(self.one(), |acc, _| self.multiply(&acc, f))
    }

    /// Normal form of `coeff · g_1 g_2 ⋯ g_k`.
    pub fn normal_form<C: Coefficient>(&self, word: &[GenIndex], coeff: C) -> Element<C> {
        let mut acc = self.scalar(coeff);
        for &g in word {
            acc = self.multiply(&acc, &self.gen(g));
        }
        acc
    }

    pub fn star<C: Scalar>(&self, f: &Element<C>) -> Element<C> {
        f.star()
    }

    /// The q-minor with rows `rows` and columns `cols` (both strictly
    /// increasing, 1-based, equal length).
    pub fn qminor(&self, rows: &[usize], cols: &[usize]) -> Result<Element> {
        if rows.len() != cols.len() {
            return Err(Error::MalformedIndexSet(format!("{} rows vs {} columns", rows.len(), cols.len())));
        }
        for set in [rows, cols] {
            if set.windows(2).any(|w| w[0] >= w[1]) || set.iter().any(|&i| i == 0 || i > self.n) {
                return Err(Error::MalformedIndexSet(format!("{set:?} is not increasing within 1..={}", self.n)));
            }
        }
        let k = rows.len();
        let mut perm: Vec<usize> = (0..k).collect();
        let mut acc = Element::zero();
        let minus_q = LaurentPoly::q_pow(1).neg();
        permute(&mut perm, 0, &mut |p| {
            let word: Vec<GenIndex> = (0..k).map(|i| GenIndex::z(rows[i], cols[p[i]])).collect();
            let c = minus_q.pow(inversions(p) as i64).unwrap();
            acc = acc.add(&self.normal_form(&word, c));
        });
        Ok(acc)
    }

    /// The quantum determinant.
    pub fn qdet(&self) -> Element {
        let all: Vec<usize> = (1..=self.n).collect();
        self.qminor(&all, &all).expect("full index set is well formed")
    }

    /// `v_ν = (det_q z)^{ν_n} ∏_{k<n} (z^{∧k}_{1..k})^{ν_k − ν_{k+1}}`.
    pub fn highest_weight_vector(&self, nu: &Partition) -> Element {
        assert_eq!(nu.n(), self.n, "partition length must equal n");
        let mut acc = self.pow(&self.qdet(), nu.last());
        for k in 1..self.n {
            let e = nu.part(k - 1) - nu.part(k);
            if e > 0 {
                let idx: Vec<usize> = (1..=k).collect();
                let minor = self.qminor(&idx, &idx).unwrap();
                acc = self.multiply(&acc, &self.pow(&minor, e));
            }
        }
        acc
    }

    /// All normal monomials with the given bidegree.
    pub fn monomials(&self, holo_degree: usize, anti_degree: usize) -> Vec<Monomial> {
        let hs = compositions(self.n2(), holo_degree);
        let as_ = compositions(self.n2(), anti_degree);
        let mut out = Vec::with_capacity(hs.len() * as_.len());
        for h in &hs {
            for a in &as_ {
                out.push(Monomial { holo: h.clone(), anti: a.clone() });
            }
        }
        out
    }

    /// Drops the memo tables.
    pub fn clear_caches(&self) {
        self.holo_gen.borrow_mut().clear();
        self.exchange_one.borrow_mut().clear();
        self.exchange.borrow_mut().clear();
        self.fock_one.borrow_mut().clear();
        self.fock.borrow_mut().clear();
        self.action_cache.borrow_mut().clear();
    }
}

/// One instance of a defining relation, as a formal combination of words
/// that must vanish.
#[derive(Clone, Debug)]
pub struct Relation {
    pub label: String,
    pub terms: Vec<(LaurentPoly, Vec<GenIndex>)>,
}

/// Every instance of the defining relations among `z`, `z*` for this `n`.
pub fn defining_relations(n: usize) -> Vec<Relation> {
    let one = LaurentPoly::one;
    let q = || LaurentPoly::q_pow(1);
    let mut out = Vec::new();
    let idx: Vec<(usize, usize)> = (1..=n).flat_map(|a| (1..=n).map(move |b| (a, b))).collect();
    for &(a, alpha) in &idx {
        for &(b, beta) in &idx {
            let (x, y) = (GenIndex::z(a, alpha), GenIndex::z(b, beta));
            let (xs, ys) = (GenIndex::zs(a, alpha), GenIndex::zs(b, beta));
            if (a == b && alpha < beta) || (a < b && alpha == beta) {
                out.push(Relation {
                    label: format!("zz-q {x} {y}"),
                    terms: vec![(one(), vec![x, y]), (q().neg(), vec![y, x])],
                });
                out.push(Relation {
                    label: format!("zz-q* {ys} {xs}"),
                    terms: vec![(one(), vec![ys, xs]), (q().neg(), vec![xs, ys])],
                });
            }
            if alpha < beta && a > b {
                out.push(Relation {
                    label: format!("zz-commute {x} {y}"),
                    terms: vec![(one(), vec![x, y]), (minus_one(), vec![y, x])],
                });
                out.push(Relation {
                    label: format!("zz-commute* {ys} {xs}"),
                    terms: vec![(one(), vec![ys, xs]), (minus_one(), vec![xs, ys])],
                });
            }
            if alpha < beta && a < b {
                out.push(Relation {
                    label: format!("zz-cross {x} {y}"),
                    terms: vec![
                        (one(), vec![x, y]),
                        (minus_one(), vec![y, x]),
                        (q_minus_qinv().neg(), vec![GenIndex::z(a, beta), GenIndex::z(b, alpha)]),
                    ],
                });
                out.push(Relation {
                    label: format!("zz-cross* {ys} {xs}"),
                    terms: vec![
                        (one(), vec![ys, xs]),
                        (minus_one(), vec![xs, ys]),
                        (q_minus_qinv().neg(), vec![GenIndex::zs(b, alpha), GenIndex::zs(a, beta)]),
                    ],
                });
            }
            // (z_b^β)* z_a^α = q² Σ R R z_{a'}^{α'} (z_{b'}^{β'})* + (1 − q²) δ δ
            let mut terms = vec![(one(), vec![ys, x])];
            for (bp, ap, r1) in r_matrix_row(b, a, n) {
                for (betap, alphap, r2) in r_matrix_row(beta, alpha, n) {
                    let c = LaurentPoly::q_pow(2).mul(&r1).mul(&r2).neg();
                    terms.push((c, vec![GenIndex::z(ap, alphap), GenIndex::zs(bp, betap)]));
                }
            }
            if a == b && alpha == beta {
                terms.push((one_minus_q2().neg(), vec![]));
            }
            out.push(Relation { label: format!("cross {ys} {x}"), terms });
        }
    }
    out
}

impl Algebra {
    /// Grade dimensions match `C(n² + d − 1, d)` for `d ≤ dmax`, and every
    /// normal word of total degree `≤ dmax` is its own normal form.
    pub fn pbw_audit(&self, dmax: usize) -> bool {
        let n2 = self.n2() as u64;
        for d in 0..=dmax {
            if self.monomials(d, 0).len() as u128 != binomial(n2 + d as u64 - 1, d as u64) {
                return false;
            }
            for h in 0..=d {
                for m in self.monomials(h, d - h) {
                    let nf = self.normal_form(&m.word(), LaurentPoly::one());
                    if nf != Element::from_monomial(m, LaurentPoly::one()) {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Normal form of a formal combination of words.
    pub fn evaluate_relation(&self, rel: &Relation) -> Element {
        rel.terms
            .iter()
            .fold(Element::zero(), |acc, (c, w)| acc.add(&self.normal_form(w, c.clone())))
    }
}

/// Exponent vectors of length `slots` summing to `degree`.
pub fn compositions(slots: usize, degree: usize) -> Vec<Vec<u8>> {
    fn rec(slots: usize, left: usize, cur: &mut Vec<u8>, out: &mut Vec<Vec<u8>>) {
        if cur.len() == slots - 1 {
            cur.push(left as u8);
            out.push(cur.clone());
            cur.pop();
            return;
        }
        for e in (0..=left).rev() {
            cur.push(e as u8);
            rec(slots, left - e, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(slots, degree, &mut Vec::with_capacity(slots), &mut out);
    out
}

/// Binomial coefficient as `u128`.
pub fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut r: u128 = 1;
    for i in 0..k {
        r = r * (n - i) as u128 / (i + 1) as u128;
    }
    r
}

/// Constant `1 − q²`.
pub fn one_minus_q2() -> LaurentPoly {
    LaurentPoly::from_q_terms([(0, 1), (2, -1)])
}

/// `q − q^{-1}`.
pub fn q_minus_qinv() -> LaurentPoly {
    LaurentPoly::from_q_terms([(1, 1), (-1, -1)])
}

pub(crate) fn minus_one() -> LaurentPoly {
    LaurentPoly::constant(int(-1))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(e: i32) -> LaurentPoly {
        LaurentPoly::q_pow(e)
    }

    #[test]
    fn single_generator_is_fixed() {
        let alg = Algebra::new(2);
        let w = [GenIndex::z(1, 1)];
        assert_eq!(alg.normal_form(&w, LaurentPoly::one()), alg.z(1, 1));
    }

    #[test]
    fn q_oscillator_relation() {
        let alg = Algebra::new(1);
        let lhs = alg.multiply(&alg.zs(1, 1), &alg.z(1, 1));
        let zz = alg.multiply(&alg.z(1, 1), &alg.zs(1, 1));
        let expected = zz.scale(&q(2)).add(&alg.scalar(one_minus_q2()));
        assert_eq!(lhs, expected);
    }

    #[test]
    fn cross_relation_n2() {
        let alg = Algebra::new(2);
        let lhs = alg.multiply(&alg.zs(1, 1), &alg.z(1, 1));
        let zz = |a, b| alg.multiply(&alg.z(a, b), &alg.zs(a, b));
        let c = q(-2).sub(&LaurentPoly::one()); // q^{-2} - 1
        let expected = zz(1, 1)
            .scale(&q(2))
            .sub(&zz(1, 2).add(&zz(2, 1)).scale(&q(2).mul(&c)))
            .add(&zz(2, 2).scale(&q(2).mul(&c).mul(&c)))
            .add(&alg.scalar(one_minus_q2()));
        assert_eq!(lhs, expected);
    }

    #[test]
    fn reordering_holomorphic_pairs() {
        let alg = Algebra::new(2);
        let in_order = alg.multiply(&alg.z(1, 1), &alg.z(2, 2));
        assert_eq!(in_order.len(), 1);
        let reversed = alg.multiply(&alg.z(2, 2), &alg.z(1, 1));
        let expected = in_order.sub(&alg.multiply(&alg.z(1, 2), &alg.z(2, 1)).scale(&q_minus_qinv()));
        assert_eq!(reversed, expected);
    }

    #[test]
    fn qminor_examples() {
        let alg = Algebra::new(2);
        assert_eq!(alg.qminor(&[1], &[2]).unwrap(), alg.z(1, 2));
        let det = alg
            .multiply(&alg.z(1, 1), &alg.z(2, 2))
            .sub(&alg.multiply(&alg.z(1, 2), &alg.z(2, 1)).scale(&q(1)));
        assert_eq!(alg.qdet(), det);
        let alg3 = Algebra::new(3);
        let m = alg3
            .multiply(&alg3.z(1, 2), &alg3.z(2, 3))
            .sub(&alg3.multiply(&alg3.z(1, 3), &alg3.z(2, 2)).scale(&q(1)));
        assert_eq!(alg3.qminor(&[1, 2], &[2, 3]).unwrap(), m);
        assert!(alg3.qminor(&[2, 1], &[1, 2]).is_err());
        assert!(alg3.qminor(&[1], &[1, 2]).is_err());
    }

    #[test]
    fn highest_weight_vectors() {
        let alg = Algebra::new(2);
        let p = |v: &[u32]| Partition::new(v.to_vec()).unwrap();
        assert_eq!(alg.highest_weight_vector(&p(&[1, 0])), alg.z(1, 1));
        assert_eq!(alg.highest_weight_vector(&p(&[1, 1])), alg.qdet());
        assert_eq!(
            alg.highest_weight_vector(&p(&[2, 1])),
            alg.multiply(&alg.qdet(), &alg.z(1, 1))
        );
        let v = alg.highest_weight_vector(&p(&[3, 1]));
        assert!(v.is_holomorphic());
        assert_eq!(v.bidegrees(), vec![(4, 0)]);
    }

    #[test]
    fn star_is_relabeling() {
        let alg = Algebra::new(2);
        let f = alg.multiply(&alg.z(2, 1), &alg.zs(1, 2));
        assert_eq!(alg.star(&alg.z(1, 1)), alg.zs(1, 1));
        assert_eq!(alg.star(&alg.star(&f)), f);
    }

    #[test]
    fn determinant_is_central_in_holomorphic_part() {
        for n in 2..=3 {
            let alg = Algebra::new(n);
            let det = alg.qdet();
            for a in 1..=n {
                for b in 1..=n {
                    let z = alg.z(a, b);
                    assert_eq!(alg.multiply(&det, &z), alg.multiply(&z, &det), "n={n} z{a}{b}");
                }
            }
        }
    }

    #[test]
    fn monomial_counts() {
        assert_eq!(compositions(4, 2).len(), 10);
        assert_eq!(binomial(9 + 4 - 1, 4), 495);
    }

    #[test]
    fn relation_residuals_vanish() {
        for n in 1..=3 {
            let alg = Algebra::new(n);
            for rel in defining_relations(n) {
                assert!(alg.evaluate_relation(&rel).is_zero(), "n={n} {}", rel.label);
            }
        }
    }

    fn small_element(alg: &Algebra, picks: &[(u8, u8, i32, i64)]) -> Element {
        let n = alg.n();
        let mut f = Element::zero();
        for &(h, a, e, c) in picks {
            let hs = compositions(n * n, (h % 3) as usize);
            let as_ = compositions(n * n, (a % 3) as usize);
            let m = Monomial {
                holo: hs[e.unsigned_abs() as usize % hs.len()].clone(),
                anti: as_[(e.unsigned_abs() as usize / 3) % as_.len()].clone(),
            };
            f.add_term(m, LaurentPoly::from_q_terms([(e % 3, c)]));
        }
        f
    }

    proptest::proptest! {
        #![proptest_config(proptest::prelude::ProptestConfig::with_cases(24))]
        #[test]
        fn associativity_and_star(
            f in proptest::collection::vec((0u8..3, 0u8..3, -20i32..20, -2i64..3), 1..3),
            g in proptest::collection::vec((0u8..3, 0u8..3, -20i32..20, -2i64..3), 1..3),
            h in proptest::collection::vec((0u8..3, 0u8..3, -20i32..20, -2i64..3), 1..3),
        ) {
            let alg = Algebra::new(2);
            let (f, g, h) = (small_element(&alg, &f), small_element(&alg, &g), small_element(&alg, &h));
            let left = alg.multiply(&alg.multiply(&f, &g), &h);
            let right = alg.multiply(&f, &alg.multiply(&g, &h));
            proptest::prop_assert_eq!(left, right);
            proptest::prop_assert_eq!(alg.star(&alg.multiply(&f, &g)), alg.multiply(&alg.star(&g), &alg.star(&f)));
        }
    }
}
