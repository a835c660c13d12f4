//! Demazure and Demazure-Lusztig operators on the group algebra of the
//! root lattice with Z[q, q^-1] coefficients, plus combinatorial
//! summaries of the flag variety (Poincare polynomial) and the Steinberg
//! variety (component count and dimensions).
//!
//! Exponents live in the root lattice in simple-root coordinates, so
//! division by 1 - X^{+-alpha_s} is integer-exact and never leaves the
//! ring; a failed division aborts loudly because divisibility is
//! guaranteed for these operators.

use std::collections::BTreeMap;
use std::fmt;

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::hecke::HeckeElement;
use crate::laurent::LaurentPoly;
use crate::weyl::{WeylElement, WeylGroup};

/// Element of the group algebra of the root lattice over Z[q, q^-1]:
/// a sparse map from exponent vectors (simple-root coordinates) to
/// Laurent coefficients.
#[derive(Clone, PartialEq, Eq)]
pub struct WeightLaurent {
    group: WeylGroup,
    terms: BTreeMap<Vec<i64>, LaurentPoly>,
}

impl WeightLaurent {
    pub fn zero(group: &WeylGroup) -> Self {
        WeightLaurent {
            group: group.clone(),
            terms: BTreeMap::new(),
        }
    }

    /// The monomial X^0 = 1.
    pub fn one(group: &WeylGroup) -> Self {
        WeightLaurent::monomial(group, vec![0; group.rank()], LaurentPoly::one())
            .expect("zero vector has the right dimension")
    }

    pub fn monomial(group: &WeylGroup, exponent: Vec<i64>, coeff: LaurentPoly) -> Result<Self> {
        if exponent.len() != group.rank() {
            return Err(Error::json(format!(
                "exponent vector has dimension {}, expected {}",
                exponent.len(),
                group.rank()
            )));
        }
        let mut out = WeightLaurent::zero(group);
        out.add_term(exponent, coeff);
        Ok(out)
    }

    pub fn group(&self) -> &WeylGroup {
        &self.group
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn support_size(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<i64>, &LaurentPoly)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, exponent: &[i64]) -> LaurentPoly {
        self.terms
            .get(exponent)
            .cloned()
            .unwrap_or_else(LaurentPoly::zero)
    }

    pub fn add_term(&mut self, exponent: Vec<i64>, coeff: LaurentPoly) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(exponent) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += &coeff;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn checked_add(&self, other: &WeightLaurent) -> Result<WeightLaurent> {
        self.group.check_same(&other.group)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &WeightLaurent) -> Result<WeightLaurent> {
        self.group.check_same(&other.group)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), -c);
        }
        Ok(out)
    }

    pub fn scaled(&self, c: &LaurentPoly) -> WeightLaurent {
        let mut out = WeightLaurent::zero(&self.group);
        if c.is_zero() {
            return out;
        }
        for (e, p) in &self.terms {
            out.add_term(e.clone(), p * c);
        }
        out
    }

    /// Multiply by the lattice monomial X^shift.
    pub fn shifted(&self, shift: &[i64]) -> WeightLaurent {
        let mut out = WeightLaurent::zero(&self.group);
        for (e, p) in &self.terms {
            let moved = e.iter().zip(shift).map(|(a, b)| a + b).collect();
            out.add_term(moved, p.clone());
        }
        out
    }

    /// Group-algebra product.
    pub fn mul(&self, other: &WeightLaurent) -> Result<WeightLaurent> {
        self.group.check_same(&other.group)?;
        let mut out = WeightLaurent::zero(&self.group);
        for (e1, p1) in &self.terms {
            for (e2, p2) in &other.terms {
                let e = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, p1 * p2);
            }
        }
        Ok(out)
    }

    /// The Weyl-group action: permutes monomials, fixes q.
    pub fn weyl_act(&self, w: &WeylElement) -> Result<WeightLaurent> {
        self.group.check_same(w.group())?;
        let mut out = WeightLaurent::zero(&self.group);
        for (e, p) in &self.terms {
            out.add_term(w.apply(e), p.clone());
        }
        Ok(out)
    }

    fn act_simple(&self, s: usize) -> WeightLaurent {
        let refl = self.group.reflection(s);
        let mut out = WeightLaurent::zero(&self.group);
        for (e, p) in &self.terms {
            out.add_term(refl.apply(e), p.clone());
        }
        out
    }

    pub fn from_json(group: &WeylGroup, value: &serde_json::Value) -> Result<WeightLaurent> {
        let obj = value
            .as_object()
            .ok_or_else(|| Error::json("expected a JSON object"))?;
        let label = obj
            .get("cartan")
            .and_then(|v| v.as_str())
            .ok_or_else(|| Error::json("missing string field \"cartan\""))?;
        if label != group.cartan().label() {
            return Err(Error::CartanMismatch {
                left: group.cartan().label().to_string(),
                right: label.to_string(),
            });
        }
        let terms = obj
            .get("terms")
            .and_then(|v| v.as_array())
            .ok_or_else(|| Error::json("missing array field \"terms\""))?;
        let mut out = WeightLaurent::zero(group);
        for t in terms {
            let tobj = t
                .as_object()
                .ok_or_else(|| Error::json("term must be an object"))?;
            let exp = tobj
                .get("exp")
                .and_then(|v| v.as_array())
                .ok_or_else(|| Error::json("term missing array field \"exp\""))?
                .iter()
                .map(|x| x.as_i64().ok_or_else(|| Error::json("exponent must be an integer")))
                .collect::<Result<Vec<i64>>>()?;
            if exp.len() != group.rank() {
                return Err(Error::json(format!(
                    "exponent vector has dimension {}, expected {}",
                    exp.len(),
                    group.rank()
                )));
            }
            let poly = tobj
                .get("poly")
                .ok_or_else(|| Error::json("term missing field \"poly\""))?;
            out.add_term(exp, LaurentPoly::from_json_value(poly)?);
        }
        Ok(out)
    }
}

// {"cartan":"A2","terms":[{"exp":[1,0],"poly":{...}}, ...]}, terms
// sorted lexicographically by exponent.
impl Serialize for WeightLaurent {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Term<'a> {
            exp: &'a [i64],
            poly: &'a LaurentPoly,
        }
        let terms: Vec<Term> = self
            .terms
            .iter()
            .map(|(e, p)| Term { exp: e, poly: p })
            .collect();
        let mut st = serializer.serialize_struct("WeightLaurent", 2)?;
        st.serialize_field("cartan", self.group.cartan().label())?;
        st.serialize_field("terms", &terms)?;
        st.end()
    }
}

impl fmt::Display for WeightLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, p) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({})*X{:?}", p, e)?;
        }
        Ok(())
    }
}

impl fmt::Debug for WeightLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "WeightLaurent({})", self)
    }
}

/// Exact division by (1 - X^m). Works level by level in the pairing
/// against alpha_s^vee, eating the extremal level each pass; panics if
/// the numerator fails to vanish, which signals a bug in the caller.
fn divide_by_one_minus_monomial(numerator: WeightLaurent, m: &[i64], s: usize) -> WeightLaurent {
    let group = numerator.group.clone();
    let cartan = group.cartan();
    let direction = cartan.coroot_pairing(s, m);
    debug_assert!(direction == 2 || direction == -2);
    let mut rest = numerator;
    let mut quotient = WeightLaurent::zero(&group);
    let budget = {
        let pairings: Vec<i64> = rest
            .terms
            .keys()
            .map(|e| cartan.coroot_pairing(s, e))
            .collect();
        let spread = match (pairings.iter().min(), pairings.iter().max()) {
            (Some(lo), Some(hi)) => (hi - lo) as usize,
            _ => 0,
        };
        rest.support_size() * (spread / 2 + 2) + 16
    };
    let mut steps = 0usize;
    while !rest.is_zero() {
        // the extremal level against adding m: max pairing if adding m
        // lowers it, min pairing otherwise
        let extremal = rest
            .terms
            .keys()
            .map(|e| cartan.coroot_pairing(s, e))
            .reduce(|a, b| if direction < 0 { a.max(b) } else { a.min(b) })
            .unwrap();
        let level: Vec<(Vec<i64>, LaurentPoly)> = rest
            .terms
            .iter()
            .filter(|(e, _)| cartan.coroot_pairing(s, e) == extremal)
            .map(|(e, p)| (e.clone(), p.clone()))
            .collect();
        for (e, p) in level {
            steps += 1;
            if steps > budget {
                panic!(
                    "exact division by 1 - X^{m:?} failed in type {}; \
                     this indicates a bug, not a data condition",
                    cartan.label()
                );
            }
            let shifted: Vec<i64> = e.iter().zip(m).map(|(a, b)| a + b).collect();
            quotient.add_term(e.clone(), p.clone());
            rest.add_term(e, -&p);
            rest.add_term(shifted, p);
        }
    }
    quotient
}

fn alpha(group: &WeylGroup, s: usize) -> Vec<i64> {
    let mut v = vec![0i64; group.rank()];
    v[s] = 1;
    v
}

/// The Demazure operator D_s f = (f - X^{-alpha_s} s(f)) / (1 - X^{-alpha_s}).
/// Idempotent; its image is exactly the s-invariants.
pub fn demazure(s: usize, f: &WeightLaurent) -> Result<WeightLaurent> {
    let group = f.group().clone();
    group.cartan().check_generator(s)?;
    let a = alpha(&group, s);
    let neg_a: Vec<i64> = a.iter().map(|x| -x).collect();
    let numerator = f.checked_sub(&f.act_simple(s).shifted(&neg_a))?;
    Ok(divide_by_one_minus_monomial(numerator, &neg_a, s))
}

/// The Demazure-Lusztig operator
/// tau_s f = [(q - X^{alpha_s}) s(f) - (q-1) X^{alpha_s} f] / (1 - X^{alpha_s}).
/// Satisfies the Hecke quadratic relation tau_s^2 = (q-1) tau_s + q and
/// the braid relations; acts as multiplication by q on s-invariants.
pub fn demazure_lusztig(s: usize, f: &WeightLaurent) -> Result<WeightLaurent> {
    let group = f.group().clone();
    group.cartan().check_generator(s)?;
    let a = alpha(&group, s);
    let sf = f.act_simple(s);
    let q = LaurentPoly::q();
    let q_minus_one = LaurentPoly::from_terms([(1, 1), (0, -1)]);
    let numerator = sf
        .scaled(&q)
        .checked_sub(&sf.shifted(&a))?
        .checked_sub(&f.shifted(&a).scaled(&q_minus_one))?;
    Ok(divide_by_one_minus_monomial(numerator, &a, s))
}

/// Apply t_w along the canonical reduced word of w (well defined by the
/// tau braid relations).
pub fn t_action(w: &WeylElement, f: &WeightLaurent) -> Result<WeightLaurent> {
    f.group().check_same(w.group())?;
    let mut out = f.clone();
    for &s in w.word().iter().rev() {
        out = demazure_lusztig(s, &out)?;
    }
    Ok(out)
}

/// Extend t_s -> tau_s linearly over the Hecke algebra; a left module
/// action: action(h1 h2, f) = action(h1, action(h2, f)).
pub fn hecke_action(h: &HeckeElement, f: &WeightLaurent) -> Result<WeightLaurent> {
    f.group().check_same(h.group())?;
    let mut out = WeightLaurent::zero(f.group());
    for (w, p) in h.terms() {
        out = out.checked_add(&t_action(w, f)?.scaled(p))?;
    }
    Ok(out)
}

/// Poincare polynomial of the flag variety: sum over W of q^{l(w)};
/// degree N.
pub fn poincare(group: &WeylGroup) -> Result<LaurentPoly> {
    let mut p = LaurentPoly::zero();
    for w in group.all_elements()? {
        p += &LaurentPoly::q_pow(w.length() as i64);
    }
    Ok(p)
}

/// Component count and dimension data for the Steinberg variety: one
/// conormal component per Weyl element, each of dimension 2N inside the
/// doubled cotangent space; the G-orbit attached to w has dimension
/// N + l(w).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SteinbergSummary {
    pub num_components: usize,
    pub component_dim: usize,
    pub flag_dim: usize,
    pub orbit_dims: BTreeMap<WeylElement, usize>,
}

pub fn steinberg_summary(group: &WeylGroup) -> Result<SteinbergSummary> {
    let n = group.num_positive_roots();
    let orbit_dims = group
        .all_elements()?
        .into_iter()
        .map(|w| {
            let dim = n + w.length();
            (w, dim)
        })
        .collect();
    Ok(SteinbergSummary {
        num_components: group.all_elements()?.len(),
        component_dim: 2 * n,
        flag_dim: n,
        orbit_dims,
    })
}
