//! Claim families. Each returns its records in a fixed order.

use std::time::Instant;

use qcapelli::action::{equivariance_violations, serre_violations};
use qcapelli::algebra::{binomial, defining_relations};
use qcapelli::invariants::{build_y, eigenvalue, invariance_check, InvariantElement};
use qcapelli::partition::{enumerate, knop_bar};
use qcapelli::symmetric::{
    classical_limit, classical_points, factorial_schur_classical, knop_interpolation, knop_interpolation_t_equals_q,
    knop_uniqueness, lemma3_sides, lemma4_sides, prop4_rhs, rhs_theorem1, rhs_theorem2,
};
use qcapelli::{Algebra, BigRational, Element, LaurentPoly, Partition, RationalFunction};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::report::{Record, Side, Status};

fn timed(f: impl FnOnce() -> Record) -> Record {
    let start = Instant::now();
    let r = f();
    r.timed(start.elapsed())
}

fn nl(n: usize, nu: &Partition, lam: &Partition) -> [(&'static str, String); 3] {
    [("n", n.to_string()), ("nu", nu.to_string()), ("lambda", lam.to_string())]
}

/// Eigenvalue of `y_ν` on `ℋ_λ` against `rhs`, parallel over `ν` with one
/// algebra per worker. Cells where `rhs` is `None` are skipped.
fn spectral_cells(
    claim: &str,
    n: usize,
    nus: &[Partition],
    lams: &[Partition],
    rhs: impl Fn(&Partition, &Partition) -> Option<qcapelli::Result<LaurentPoly>> + Sync,
) -> Vec<Record> {
    nus.par_iter()
        .map_init(
            || Algebra::new(n),
            |alg, nu| {
                let y = build_y(alg, nu);
                lams.iter()
                    .filter_map(|lam| {
                        let expected = rhs(nu, lam)?;
                        Some(timed(|| {
                            let rec = Record::new(claim, &nl(n, nu, lam));
                            let y = match &y {
                                Ok(y) => y,
                                Err(e) => return rec.failed(format!("building y_ν: {e}")),
                            };
                            match (eigenvalue(alg, y, lam), expected) {
                                (Ok(v), Ok(r)) => rec.compare(&v, &RationalFunction::from(r)),
                                (Err(e), _) | (_, Err(e)) => rec.failed(e),
                            }
                        }))
                    })
                    .collect::<Vec<_>>()
            },
        )
        .flatten()
        .collect()
}

pub fn theorem1(n: usize, max_nu: u32, max_lambda: u32) -> Vec<Record> {
    let nus = enumerate(n, max_nu);
    let lams = enumerate(n, max_lambda);
    spectral_cells("theorem1", n, &nus, &lams, |nu, lam| Some(Ok(rhs_theorem1(nu, lam))))
}

pub fn theorem2(n: usize, max_lambda: u32) -> Vec<Record> {
    let lams = enumerate(n, max_lambda);
    let mut out = Vec::new();
    for k in 1..=n {
        for lam in &lams {
            out.push(timed(|| {
                let rec = Record::new("theorem2", &[("n", n.to_string()), ("k", k.to_string()), ("lambda", lam.to_string())]);
                match rhs_theorem2(k, lam) {
                    Ok(r2) => rec.compare(&r2, &rhs_theorem1(&Partition::one_k(n, k), lam)),
                    Err(e) => rec.failed(e),
                }
            }));
        }
    }
    let nus: Vec<Partition> = (1..=n).map(|k| Partition::one_k(n, k)).collect();
    out.extend(spectral_cells("theorem2-spectrum", n, &nus, &lams, |nu, lam| {
        Some(rhs_theorem2(nu.weight() as usize, lam))
    }));
    out
}

pub fn lemmas34(n: usize, max_nu: u32) -> Vec<Record> {
    enumerate(n, max_nu)
        .into_iter()
        .map(|nu| {
            timed(|| {
                let (claim, sides) = if nu.last() > 0 { ("lemma3", lemma3_sides(&nu)) } else { ("lemma4", lemma4_sides(&nu)) };
                let rec = Record::new(claim, &[("n", n.to_string()), ("nu", nu.to_string())]);
                match sides {
                    Ok((l, r)) => rec.compare(&l, &r),
                    Err(e) => rec.failed(e),
                }
            })
        })
        .collect()
}

pub struct PropsConfig {
    pub n: usize,
    pub max_nu: u32,
    pub samples: usize,
    pub seed: u64,
    pub pbw_degree: usize,
    pub serre_degree: usize,
}

pub fn props(cfg: &PropsConfig) -> Vec<Record> {
    let n = cfg.n;
    let nus = enumerate(n, cfg.max_nu);
    let alg = Algebra::new(n);
    let np = |nu: &Partition| [("n", n.to_string()), ("nu", nu.to_string())];
    let mut out = Vec::new();

    let mut ys: Vec<(&Partition, InvariantElement)> = Vec::new();
    for nu in &nus {
        match build_y(&alg, nu) {
            Ok(y) => ys.push((nu, y)),
            Err(e) => out.push(Record::new("build-y", &np(nu)).failed(e)),
        }
    }

    for (i, (nu, a)) in ys.iter().enumerate() {
        for (mu, b) in &ys[i + 1..] {
            out.push(timed(|| {
                let rec = Record::new("prop2", &[("n", n.to_string()), ("nu", nu.to_string()), ("mu", mu.to_string())]);
                rec.compare_quiet(&alg.multiply(&a.numerator, &b.numerator), &alg.multiply(&b.numerator, &a.numerator))
            }));
        }
    }

    for (nu, y) in &ys {
        if nu.last() == 0 {
            continue;
        }
        out.push(timed(|| {
            let rec = Record::new("prop6", &np(nu));
            let k = nu.last();
            let reduced = match nu.minus_constant(k).and_then(|r| build_y(&alg, &r)) {
                Ok(r) => r,
                Err(e) => return rec.failed(e),
            };
            let det = alg.pow(&alg.qdet(), k);
            let rhs = alg.multiply_all(&[&det, &reduced.numerator, &det.star()]).scale(&y.denominator);
            rec.compare_quiet(&y.numerator.scale(&reduced.denominator), &rhs)
        }));
    }

    for (nu, y) in &ys {
        for lam in enumerate(n, nu.weight()).iter().filter(|lam| *lam != *nu) {
            out.push(timed(|| {
                let rec = Record::new("vanishing", &nl(n, nu, lam));
                match eigenvalue(&alg, y, lam) {
                    Ok(v) => rec.compare(&v, &RationalFunction::zero()),
                    Err(e) => rec.failed(e),
                }
            }));
        }
        out.push(timed(|| Record::new("invariance", &np(nu)).with_status(Status::from_bool(invariance_check(&alg, &y.element)))));
    }

    for d in 0..=cfg.pbw_degree {
        out.push(timed(|| {
            let count = alg.monomials(d, 0).len() as u128;
            let expected = binomial((n * n + d - 1) as u64, d as u64);
            Record::new("pbw-dimension", &[("n", n.to_string()), ("d", d.to_string())]).compare(&count, &expected)
        }));
    }
    out.push(timed(|| {
        let rec = Record::new("pbw-normal-forms", &[("n", n.to_string()), ("dmax", cfg.pbw_degree.to_string())]);
        rec.with_status(Status::from_bool(alg.pbw_audit(cfg.pbw_degree)))
    }));

    for rel in defining_relations(n) {
        out.push(timed(|| {
            let rec = Record::new("relation", &[("n", n.to_string()), ("relation", rel.label.clone())]);
            rec.compare_quiet(&alg.evaluate_relation(&rel), &Element::zero())
        }));
    }

    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    for i in 0..cfg.samples {
        let x = random_element(&alg, &mut rng);
        let y = random_element(&alg, &mut rng);
        let z = random_element(&alg, &mut rng);
        let p = [("n", n.to_string()), ("seed", cfg.seed.to_string()), ("sample", i.to_string())];
        out.push(timed(|| {
            let xy = alg.multiply(&x, &y);
            Record::new("associativity", &p).compare_quiet(&alg.multiply(&xy, &z), &alg.multiply(&x, &alg.multiply(&y, &z)))
        }));
        out.push(timed(|| {
            let ok = x.star().star() == x && alg.multiply(&x, &y).star() == alg.multiply(&y.star(), &x.star());
            Record::new("star", &p).with_status(Status::from_bool(ok))
        }));
    }

    out.push(timed(|| violations("serre", &[("n", n.to_string()), ("dmax", cfg.serre_degree.to_string())], serre_violations(&alg, cfg.serre_degree))));
    out.push(timed(|| violations("equivariance", &[("n", n.to_string())], equivariance_violations(&alg, &defining_relations(n)))));
    out
}

fn violations(claim: &str, params: &[(&str, String)], v: Vec<String>) -> Record {
    let rec = Record::new(claim, params);
    if v.is_empty() {
        rec.with_status(Status::Pass)
    } else {
        rec.with_status(Status::Fail).with_sides(Side::text(v.join("; ")), Side::text("0"))
    }
}

/// One to three terms `c q^e m`, `m` of bidegree at most `(2, 2)`.
fn random_element(alg: &Algebra, rng: &mut ChaCha8Rng) -> Element {
    let mut e = Element::zero();
    for _ in 0..rng.gen_range(1..=3) {
        let pool = alg.monomials(rng.gen_range(0..=2), rng.gen_range(0..=2));
        let m = pool[rng.gen_range(0..pool.len())].clone();
        let c = LaurentPoly::from_q_terms([(rng.gen_range(-2..=2), rng.gen_range(1..=3))]);
        e = e.add(&Element::from_monomial(m, c));
    }
    e
}

pub fn interpolation(n: usize, max_lambda: u32, qv: &BigRational, tv: &BigRational, t_equals_q: bool) -> Vec<Record> {
    let mut out = Vec::new();
    for lam in enumerate(n, max_lambda) {
        let p = [("n", n.to_string()), ("lambda", lam.to_string()), ("q", qv.to_string()), ("t", tv.to_string())];
        out.push(timed(|| {
            let (r, unknowns) = knop_uniqueness(&lam, qv, tv);
            Record::new("prop3-uniqueness", &p).compare(&r, &unknowns)
        }));
        out.push(timed(|| {
            let rec = Record::new("prop3-vanishing", &p);
            let poly = match knop_interpolation(&lam, qv, tv) {
                Ok(poly) => poly,
                Err(e) => return rec.failed(e),
            };
            let residuals: Vec<String> = enumerate(n, lam.weight())
                .iter()
                .filter(|mu| **mu != lam)
                .filter_map(|mu| {
                    let r = poly.eval(&knop_bar(mu, qv, tv));
                    (r != BigRational::from_integer(0.into())).then(|| format!("{mu}: {r}"))
                })
                .collect();
            let monic = poly.coeff(lam.parts()) == BigRational::from_integer(1.into());
            if residuals.is_empty() && monic {
                rec.with_status(Status::Pass).with_sides(Side::text(&poly), Side::text("vanishes at every lower node"))
            } else {
                let what = if monic { residuals.join("; ") } else { "leading coefficient is not 1".into() };
                rec.with_status(Status::Fail).with_sides(Side::text(&poly), Side::text(what))
            }
        }));
        if t_equals_q {
            out.push(timed(|| {
                let rec = Record::new("prop4", &[("n", n.to_string()), ("lambda", lam.to_string())]);
                match knop_interpolation_t_equals_q(&lam) {
                    Ok(lhs) => rec.compare(&lhs, &prop4_rhs(&lam).map_coeffs(|c| RationalFunction::from(c.clone()))),
                    Err(e) => rec.failed(e),
                }
            }));
        }
    }
    out
}

pub fn spectrum(nu: &Partition, lam: &Partition) -> Vec<Record> {
    let n = nu.n();
    spectral_cells("spectrum", n, std::slice::from_ref(nu), std::slice::from_ref(lam), |nu, lam| {
        Some(Ok(rhs_theorem1(nu, lam)))
    })
}

pub fn limit(nu: &Partition, lam: &Partition) -> Vec<Record> {
    let n = nu.n();
    vec![timed(|| {
        let rec = Record::new("classical-limit", &nl(n, nu, lam));
        let alg = Algebra::new(n);
        let lhs = build_y(&alg, nu).and_then(|y| eigenvalue(&alg, &y, lam)).and_then(|v| classical_limit(&v, nu));
        let rhs = factorial_schur_classical(nu, &classical_points(lam));
        match (lhs, rhs) {
            (Ok(l), Ok(r)) => rec.with_status(Status::from_bool(l == r)).with_sides(Side::text(&l), Side::text(&r)),
            (Err(e), _) | (_, Err(e)) => rec.failed(e),
        }
    })]
}
