//! Bulk verification suites: braid relations and Matsumoto agreement,
//! invertibility, the Kazhdan-Lusztig family, and the Demazure /
//! Demazure-Lusztig operator identities. Each suite returns one record
//! per check; sweeps run data-parallel under the `parallel` feature.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::braid::{verify_braid_relation, BraidLetter, BraidWord};
use crate::error::Result;
use crate::hecke::{HeckeAlgebra, HeckeElement, KLTable};
use crate::kops::{demazure, demazure_lusztig, hecke_action, WeightLaurent};
use crate::laurent::LaurentPoly;
use crate::par;
use crate::weyl::{Side, WeylElement, WeylGroup};

/// Outcome of a single named check.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

impl Check {
    fn new(name: impl Into<String>, pass: bool, detail: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            pass,
            detail: detail.into(),
        }
    }
}

fn rng_for(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Every ordered pair (w, w') with additive lengths must satisfy
/// t_w t_{w'} = t_{ww'} exactly.
pub fn braid_pair_checks(alg: &HeckeAlgebra) -> Result<Vec<Check>> {
    let els = alg.group().all_elements()?;
    let rows = els.clone();
    let alg = alg.clone();
    // one task per row keeps the task size worthwhile
    let checks = par::map_collect(rows, move |w| {
        let mut out = Vec::new();
        for wp in &els {
            let prod = w.compose(wp).expect("same group");
            if prod.length() != w.length() + wp.length() {
                continue;
            }
            let lhs = alg
                .t(&w)
                .and_then(|a| a.mult(&alg.t(wp).expect("same group")))
                .expect("same group");
            let rhs = alg.t(&prod).expect("same group");
            out.push(Check::new(
                format!("braid pair w='{w}' w'='{wp}'"),
                lhs == rhs,
                format!("t_w t_w' vs t_ww' at lengths {}+{}", w.length(), wp.length()),
            ));
        }
        out
    });
    Ok(checks.into_iter().flatten().collect())
}

/// Hecke images of all reduced words of each element must coincide.
pub fn matsumoto_checks(alg: &HeckeAlgebra) -> Result<Vec<Check>> {
    let els = alg.group().all_elements()?;
    let alg = alg.clone();
    Ok(par::map_collect(els, move |w| {
        let expected = alg.t(&w).expect("same group");
        let words = w.reduced_words();
        let pass = words.iter().all(|word| {
            let mut acc = alg.unit();
            for &s in word {
                acc = acc
                    .mult(&alg.t_word(&[s]).expect("generator in range"))
                    .expect("same group");
            }
            acc == expected
        });
        Check::new(
            format!("matsumoto w='{w}'"),
            pass,
            format!("{} reduced words", words.len()),
        )
    }))
}

/// The rank-choose-2 braid relations checked in the Hecke image.
pub fn braid_relation_checks(alg: &HeckeAlgebra) -> Result<Vec<Check>> {
    let mut checks = Vec::new();
    let group = alg.group();
    for i in 0..group.rank() {
        for j in i + 1..group.rank() {
            let report = verify_braid_relation(group, i, j)?;
            checks.push(Check::new(
                format!("braid relation ({},{})", i + 1, j + 1),
                report.holds,
                format!("alternating words of length m = {}", report.order),
            ));
        }
    }
    Ok(checks)
}

fn random_braid_word(group: &WeylGroup, max_len: usize, rng: &mut impl Rng) -> BraidWord {
    let len = rng.gen_range(0..=max_len);
    let letters = (0..len)
        .map(|_| BraidLetter {
            index: rng.gen_range(0..group.rank()),
            positive: rng.gen_bool(0.5),
        })
        .collect();
    BraidWord::new(group, letters).expect("indices in range")
}

/// Random-word checks: the image of a word times the image of its formal
/// inverse is the unit, and iota turns images around.
pub fn braid_word_checks(alg: &HeckeAlgebra, seed: u64, count: usize) -> Result<Vec<Check>> {
    let mut rng = rng_for(seed);
    let unit = alg.unit();
    let mut checks = Vec::new();
    for k in 0..count {
        let b = random_braid_word(alg.group(), 12, &mut rng);
        let img = b.hecke_image();
        let inv = b.inverse_word().hecke_image();
        checks.push(Check::new(
            format!("braid word inverse #{k:03}"),
            img.mult(&inv).expect("same group") == unit
                && inv.mult(&img).expect("same group") == unit,
            format!("word '{b}'"),
        ));
        checks.push(Check::new(
            format!("braid word iota-reverse #{k:03}"),
            img.iota() == b.reversed().hecke_image(),
            format!("word '{b}'"),
        ));
    }
    Ok(checks)
}

/// Braid suite: pair sweep, explicit braid relations, Matsumoto
/// agreement, and seeded random word identities.
pub fn braid_suite(alg: &HeckeAlgebra, seed: u64) -> Result<Vec<Check>> {
    let mut checks = braid_pair_checks(alg)?;
    checks.extend(braid_relation_checks(alg)?);
    checks.extend(matsumoto_checks(alg)?);
    checks.extend(braid_word_checks(alg, seed, 25)?);
    Ok(checks)
}

/// t_w t_w^-1 = t_e = t_w^-1 t_w for every element.
pub fn inverse_suite(alg: &HeckeAlgebra) -> Result<Vec<Check>> {
    let els = alg.group().all_elements()?;
    let alg = alg.clone();
    Ok(par::map_collect(els, move |w| {
        let t = alg.t(&w).expect("same group");
        let inv = alg.t_inverse(&w).expect("same group");
        let unit = alg.unit();
        let pass = t.mult(&inv).expect("same group") == unit
            && inv.mult(&t).expect("same group") == unit;
        Check::new(
            format!("inverse w='{w}'"),
            pass,
            format!("support of inverse: {}", inv.support_size()),
        )
    }))
}

/// KL suite: self-duality, degree bounds, coefficient positivity, and
/// independence of the descent choice, for every element; plus the
/// all-ones check in types A1/A2.
pub fn kl_suite(alg: &HeckeAlgebra, table: &KLTable) -> Result<Vec<Check>> {
    alg.fill_table(table)?;
    let els = alg.group().all_elements()?;
    let alg2 = alg.clone();
    let mut checks: Vec<Check> = par::map_collect(els.clone(), move |w| {
        let c = alg2.kl_basis_element(&w, table).expect("same group");
        let len = w.length() as i64;
        let mut out = Vec::new();
        out.push(Check::new(
            format!("kl self-dual w='{w}'"),
            c.bar() == c.scaled(&LaurentPoly::q_pow(-len)),
            "bar(c_w) = q^-l(w) c_w".to_string(),
        ));
        let degree_ok = c.terms().all(|(y, p)| {
            y == &w
                || p.degree_bounds().is_none_or(|(min, max)| {
                    min >= 0 && 2 * max <= len - y.length() as i64 - 1
                })
        });
        out.push(Check::new(
            format!("kl degree w='{w}'"),
            degree_ok,
            format!("{} coefficients", c.support_size()),
        ));
        out.push(Check::new(
            format!("kl positive w='{w}'"),
            c.terms().all(|(_, p)| p.has_nonnegative_coeffs()),
            "all P_{y,w} coefficients >= 0".to_string(),
        ));
        let descent_ok = w.descents(Side::Left).into_iter().all(|s| {
            alg2.kl_basis_element_via_descent(&w, s, table)
                .expect("s is a descent")
                == c
        });
        out.push(Check::new(
            format!("kl descent-choice w='{w}'"),
            descent_ok,
            "recursion agrees for every left descent".to_string(),
        ));
        out
    })
    .into_iter()
    .flatten()
    .collect();

    let label = alg.group().cartan().label();
    if label == "A1" || label == "A2" {
        let mut all_one = true;
        for w in &els {
            let c = alg.kl_basis_element(w, table)?;
            all_one &= c.terms().all(|(_, p)| p.is_one());
        }
        checks.push(Check::new(
            "kl all-P-one",
            all_one,
            format!("every P_{{y,w}} = 1 in type {label}"),
        ));
    }
    Ok(checks)
}

/// Monomial exponents mu with |<mu, alpha_i^vee>| <= bound for all i.
/// Exhaustive for rank <= 2 (the coordinate search box is padded enough
/// to cover G2); random otherwise.
pub fn monomial_box(group: &WeylGroup, bound: i64) -> Vec<Vec<i64>> {
    assert!(group.rank() <= 2, "exhaustive box only for rank <= 2");
    let cartan = group.cartan();
    let reach = 6 * bound;
    let mut out = Vec::new();
    let mut current = vec![-reach; group.rank()];
    'outer: loop {
        let ok = (0..group.rank()).all(|i| cartan.coroot_pairing(i, &current).abs() <= bound);
        if ok {
            out.push(current.clone());
        }
        for i in 0..group.rank() {
            if current[i] < reach {
                current[i] += 1;
                continue 'outer;
            }
            current[i] = -reach;
        }
        break;
    }
    out
}

fn random_poly(rng: &mut impl Rng) -> LaurentPoly {
    loop {
        let n = rng.gen_range(1..=3);
        let p = LaurentPoly::from_terms(
            (0..n).map(|_| (rng.gen_range(-2i64..=2), rng.gen_range(-9i64..=9))),
        );
        if !p.is_zero() {
            return p;
        }
    }
}

fn random_hecke(alg: &HeckeAlgebra, els: &[WeylElement], rng: &mut impl Rng) -> HeckeElement {
    let mut h = alg.zero();
    for _ in 0..rng.gen_range(1..=2) {
        let w = els[rng.gen_range(0..els.len())].clone();
        h.add_term(w, random_poly(rng));
    }
    h
}

fn random_weight(group: &WeylGroup, rng: &mut impl Rng) -> WeightLaurent {
    let mut f = WeightLaurent::zero(group);
    for _ in 0..rng.gen_range(1..=3) {
        let exp: Vec<i64> = (0..group.rank()).map(|_| rng.gen_range(-3i64..=3)).collect();
        f.add_term(exp, random_poly(rng));
    }
    f
}

fn compose_ops<F>(op: F, word: &[usize], f: &WeightLaurent) -> WeightLaurent
where
    F: Fn(usize, &WeightLaurent) -> Result<WeightLaurent>,
{
    let mut out = f.clone();
    for &s in word.iter().rev() {
        out = op(s, &out).expect("operator application");
    }
    out
}

fn alternating(i: usize, j: usize, m: usize) -> Vec<usize> {
    (0..m).map(|k| if k % 2 == 0 { i } else { j }).collect()
}

/// Demazure / Demazure-Lusztig suite: idempotence, quadratic and braid
/// relations on monomials, the SL2-style character identities per
/// generator, and the seeded module-action homomorphism property.
pub fn dl_suite(alg: &HeckeAlgebra, seed: u64) -> Result<Vec<Check>> {
    let group = alg.group().clone();
    let mut rng = rng_for(seed);
    let monomials: Vec<Vec<i64>> = if group.rank() <= 2 {
        monomial_box(&group, 3)
    } else {
        (0..30)
            .map(|_| (0..group.rank()).map(|_| rng.gen_range(-3i64..=3)).collect())
            .collect()
    };

    let cartan = group.cartan().clone();
    let rank = group.rank();
    let group2 = group.clone();
    let mut checks: Vec<Check> = par::map_collect(monomials, move |exp| {
        let q = LaurentPoly::q();
        let q_minus_one = LaurentPoly::from_terms([(1, 1), (0, -1)]);
        let f = WeightLaurent::monomial(&group2, exp.clone(), LaurentPoly::one())
            .expect("dimension matches rank");
        let mut out = Vec::new();
        for s in 0..rank {
            let d = demazure(s, &f).expect("generator in range");
            let w = group2.simple(s).expect("generator in range");
            out.push(Check::new(
                format!("dl D idempotent s={} mu={exp:?}", s + 1),
                demazure(s, &d).expect("generator in range") == d,
                "D_s D_s = D_s".to_string(),
            ));
            out.push(Check::new(
                format!("dl D invariant s={} mu={exp:?}", s + 1),
                d.weyl_act(&w).expect("same group") == d,
                "image of D_s is s-invariant".to_string(),
            ));
            let tf = demazure_lusztig(s, &f).expect("generator in range");
            let ttf = demazure_lusztig(s, &tf).expect("generator in range");
            let residue = ttf
                .checked_sub(&tf.scaled(&q_minus_one))
                .and_then(|r| r.checked_sub(&f.scaled(&q)))
                .expect("same group");
            out.push(Check::new(
                format!("dl tau quadratic s={} mu={exp:?}", s + 1),
                residue.is_zero(),
                "tau_s^2 = (q-1) tau_s + q".to_string(),
            ));
        }
        for i in 0..rank {
            for j in i + 1..rank {
                let m = cartan.coxeter_m(i, j);
                let lhs_word = alternating(i, j, m);
                let rhs_word = alternating(j, i, m);
                out.push(Check::new(
                    format!("dl D braid ({},{}) mu={exp:?}", i + 1, j + 1),
                    compose_ops(demazure, &lhs_word, &f) == compose_ops(demazure, &rhs_word, &f),
                    format!("alternating words of length m = {m}"),
                ));
                out.push(Check::new(
                    format!("dl tau braid ({},{}) mu={exp:?}", i + 1, j + 1),
                    compose_ops(demazure_lusztig, &lhs_word, &f)
                        == compose_ops(demazure_lusztig, &rhs_word, &f),
                    format!("alternating words of length m = {m}"),
                ));
            }
        }
        out
    })
    .into_iter()
    .flatten()
    .collect();

    // character identities per generator
    let q = LaurentPoly::q();
    for s in 0..group.rank() {
        let mut alpha = vec![0i64; group.rank()];
        alpha[s] = 1;
        let x_alpha = WeightLaurent::monomial(&group, alpha.clone(), LaurentPoly::one())?;
        let mut expected = x_alpha.clone();
        expected.add_term(vec![0; group.rank()], LaurentPoly::one());
        expected.add_term(alpha.iter().map(|x| -x).collect(), LaurentPoly::one());
        checks.push(Check::new(
            format!("dl adjoint character s={}", s + 1),
            demazure(s, &x_alpha)? == expected,
            "D_s(X^alpha_s) = X^alpha_s + 1 + X^-alpha_s".to_string(),
        ));
        let symmetric = expected; // s-invariant by construction
        checks.push(Check::new(
            format!("dl symmetric scalar s={}", s + 1),
            demazure_lusztig(s, &symmetric)? == symmetric.scaled(&q),
            "tau_s(f) = q f for s-invariant f".to_string(),
        ));
    }

    // module-action homomorphism property on seeded random triples
    let els = group.all_elements()?;
    for k in 0..100 {
        let h1 = random_hecke(alg, &els, &mut rng);
        let h2 = random_hecke(alg, &els, &mut rng);
        let f = random_weight(&group, &mut rng);
        let lhs = hecke_action(&h1.mult(&h2)?, &f)?;
        let rhs = hecke_action(&h1, &hecke_action(&h2, &f)?)?;
        checks.push(Check::new(
            format!("dl action homomorphism #{k:03}"),
            lhs == rhs,
            format!(
                "supports {}x{} on {} monomials",
                h1.support_size(),
                h2.support_size(),
                f.support_size()
            ),
        ));
    }

    // c_s action satisfies the (1+q) quadratic identity
    let one_plus_q = LaurentPoly::from_terms([(0, 1), (1, 1)]);
    for s in 0..group.rank() {
        let cs = alg.c_simple(s)?;
        let mut pass = true;
        for _ in 0..5 {
            let f = random_weight(&group, &mut rng);
            let once = hecke_action(&cs, &f)?;
            let twice = hecke_action(&cs, &once)?;
            pass &= twice == once.scaled(&one_plus_q);
        }
        checks.push(Check::new(
            format!("dl c_s quadratic s={}", s + 1),
            pass,
            "action(c_s, action(c_s, f)) = (1+q) action(c_s, f)".to_string(),
        ));
    }

    Ok(checks)
}

/// Seeded random Hecke elements for association / involution sweeps used
/// by callers that need reproducible inputs.
pub fn random_hecke_elements(
    alg: &HeckeAlgebra,
    seed: u64,
    count: usize,
) -> Result<Vec<HeckeElement>> {
    let els = alg.group().all_elements()?;
    let mut rng = rng_for(seed);
    Ok((0..count).map(|_| random_hecke(alg, &els, &mut rng)).collect())
}
