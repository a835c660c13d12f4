//! The Iwahori-Hecke algebra over Z[q, q^-1] with standard basis {t_w},
//! bar involution, the anti-automorphism iota, and the Kazhdan-Lusztig
//! basis {c_w} with its polynomials P_{y,w}.
//!
//! Grading convention: a cohomological shift contributes a sign and a
//! twist contributes a power of q, so t_s^2 = (q-1) t_s + q, c_s = 1 + t_s,
//! and bar(c_w) = q^{-l(w)} c_w. Everything stays inside integer powers
//! of q.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::fs;
use std::io::{BufRead, BufReader};
use std::path::Path;
use std::sync::{Arc, RwLock};

use num_bigint::BigInt;
use num_traits::Zero;
use serde::ser::SerializeStruct;
use serde::{Deserialize, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;
use crate::par;
use crate::weyl::{Side, WeylElement, WeylGroup};

/// Finite formal sum sum_w p_w(q) t_w over the standard basis. Terms are
/// kept sorted by (length, lex word) and never store zero coefficients.
#[derive(Clone, PartialEq, Eq)]
pub struct HeckeElement {
    group: WeylGroup,
    terms: BTreeMap<WeylElement, LaurentPoly>,
}

impl HeckeElement {
    pub fn zero(group: &WeylGroup) -> Self {
        HeckeElement {
            group: group.clone(),
            terms: BTreeMap::new(),
        }
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

    pub fn terms(&self) -> impl Iterator<Item = (&WeylElement, &LaurentPoly)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, w: &WeylElement) -> LaurentPoly {
        self.terms.get(w).cloned().unwrap_or_else(LaurentPoly::zero)
    }

    pub fn add_term(&mut self, w: WeylElement, p: LaurentPoly) {
        if p.is_zero() {
            return;
        }
        match self.terms.entry(w) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(p);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += &p;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn checked_add(&self, other: &HeckeElement) -> Result<HeckeElement> {
        self.group.check_same(&other.group)?;
        let mut out = self.clone();
        for (w, p) in &other.terms {
            out.add_term(w.clone(), p.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &HeckeElement) -> Result<HeckeElement> {
        self.group.check_same(&other.group)?;
        let mut out = self.clone();
        for (w, p) in &other.terms {
            out.add_term(w.clone(), -p);
        }
        Ok(out)
    }

    pub fn scaled(&self, c: &LaurentPoly) -> HeckeElement {
        let mut out = HeckeElement::zero(&self.group);
        if c.is_zero() {
            return out;
        }
        for (w, p) in &self.terms {
            out.add_term(w.clone(), p * c);
        }
        out
    }

    /// Bilinear associative product on the standard basis, expanding the
    /// cheaper factor along reduced words.
    pub fn mult(&self, other: &HeckeElement) -> Result<HeckeElement> {
        self.group.check_same(&other.group)?;
        let cost = |h: &HeckeElement| -> usize { h.terms.keys().map(|w| w.length()).sum() };
        let mut out = HeckeElement::zero(&self.group);
        if cost(other) <= cost(self) {
            for (v, p) in &other.terms {
                let mut acc = self.clone();
                for &s in v.word() {
                    acc = acc.mul_simple_right(s);
                }
                for (w, c) in acc.terms {
                    out.add_term(w, &c * p);
                }
            }
        } else {
            for (w, p) in &self.terms {
                let mut acc = other.clone();
                for &s in w.word().iter().rev() {
                    acc = acc.mul_simple_left(s);
                }
                for (v, c) in acc.terms {
                    out.add_term(v, &c * p);
                }
            }
        }
        Ok(out)
    }

    /// Right multiplication by t_s: t_w t_s = t_{ws} if l(ws) > l(w),
    /// else (q-1) t_w + q t_{ws}.
    fn mul_simple_right(&self, s: usize) -> HeckeElement {
        let q = LaurentPoly::q();
        let q_minus_one = LaurentPoly::from_terms([(1, 1), (0, -1)]);
        let mut out = HeckeElement::zero(&self.group);
        for (w, p) in &self.terms {
            let ws = w.right_mul_simple(s);
            if ws.length() > w.length() {
                out.add_term(ws, p.clone());
            } else {
                out.add_term(w.clone(), p * &q_minus_one);
                out.add_term(ws, p * &q);
            }
        }
        out
    }

    fn mul_simple_left(&self, s: usize) -> HeckeElement {
        let q = LaurentPoly::q();
        let q_minus_one = LaurentPoly::from_terms([(1, 1), (0, -1)]);
        let mut out = HeckeElement::zero(&self.group);
        for (w, p) in &self.terms {
            let sw = w.left_mul_simple(s);
            if sw.length() > w.length() {
                out.add_term(sw, p.clone());
            } else {
                out.add_term(w.clone(), p * &q_minus_one);
                out.add_term(sw, p * &q);
            }
        }
        out
    }

    /// The bar involution: q -> q^-1 and t_w -> (t_{w^-1})^-1. A ring
    /// involution; decategorified Verdier duality.
    pub fn bar(&self) -> HeckeElement {
        let alg = HeckeAlgebra::new(self.group.clone());
        let mut out = HeckeElement::zero(&self.group);
        for (w, p) in &self.terms {
            let inv = alg
                .t_inverse(&w.inverse())
                .expect("element of the same group");
            for (v, c) in inv.terms {
                out.add_term(v, &c * &p.bar());
            }
        }
        out
    }

    /// The linear anti-automorphism iota: t_w -> t_{w^-1}, fixing q.
    pub fn iota(&self) -> HeckeElement {
        let mut out = HeckeElement::zero(&self.group);
        for (w, p) in &self.terms {
            out.add_term(w.inverse(), p.clone());
        }
        out
    }

    pub fn from_json(group: &WeylGroup, value: &serde_json::Value) -> Result<HeckeElement> {
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
        let mut out = HeckeElement::zero(group);
        for t in terms {
            let tobj = t
                .as_object()
                .ok_or_else(|| Error::json("term must be an object"))?;
            let word = tobj
                .get("w")
                .and_then(|v| v.as_str())
                .ok_or_else(|| Error::json("term missing string field \"w\""))?;
            let poly = tobj
                .get("poly")
                .ok_or_else(|| Error::json("term missing field \"poly\""))?;
            let w = group.from_word(&crate::weyl::parse_word(word)?)?;
            out.add_term(w, LaurentPoly::from_json_value(poly)?);
        }
        Ok(out)
    }
}

// {"cartan":"A3","terms":[{"w":"1 2 1","poly":{...}}, ...]}, terms
// sorted by (length, lex word).
impl Serialize for HeckeElement {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Term<'a> {
            w: String,
            poly: &'a LaurentPoly,
        }
        let terms: Vec<Term> = self
            .terms
            .iter()
            .map(|(w, p)| Term {
                w: w.word_string(),
                poly: p,
            })
            .collect();
        let mut st = serializer.serialize_struct("HeckeElement", 2)?;
        st.serialize_field("cartan", self.group.cartan().label())?;
        st.serialize_field("terms", &terms)?;
        st.end()
    }
}

impl fmt::Display for HeckeElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (w, p) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({})*t[{}]", p, w)?;
        }
        Ok(())
    }
}

impl fmt::Debug for HeckeElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "HeckeElement({})", self)
    }
}

/// Handle for building Hecke-algebra elements over a fixed Weyl group.
#[derive(Clone)]
pub struct HeckeAlgebra {
    group: WeylGroup,
}

impl HeckeAlgebra {
    pub fn new(group: WeylGroup) -> Self {
        HeckeAlgebra { group }
    }

    pub fn group(&self) -> &WeylGroup {
        &self.group
    }

    pub fn zero(&self) -> HeckeElement {
        HeckeElement::zero(&self.group)
    }

    /// The unit t_e.
    pub fn unit(&self) -> HeckeElement {
        let mut u = self.zero();
        u.add_term(self.group.identity(), LaurentPoly::one());
        u
    }

    /// The standard basis element t_w.
    pub fn t(&self, w: &WeylElement) -> Result<HeckeElement> {
        self.group.check_same(w.group())?;
        let mut out = self.zero();
        out.add_term(w.clone(), LaurentPoly::one());
        Ok(out)
    }

    pub fn t_word(&self, word: &[usize]) -> Result<HeckeElement> {
        self.t(&self.group.from_word(word)?)
    }

    /// c_s = t_e + t_s for a simple generator.
    pub fn c_simple(&self, s: usize) -> Result<HeckeElement> {
        let mut out = self.unit();
        out.add_term(self.group.simple(s)?, LaurentPoly::one());
        Ok(out)
    }

    /// The two-sided inverse of t_w, expanded along a reversed reduced
    /// word from t_s^-1 = q^-1 t_s + (q^-1 - 1) t_e.
    pub fn t_inverse(&self, w: &WeylElement) -> Result<HeckeElement> {
        self.group.check_same(w.group())?;
        let mut out = self.unit();
        for &s in w.word().iter().rev() {
            // out <- out * t_s^-1
            let ts = out.mul_simple_right(s);
            let mut next = ts.scaled(&LaurentPoly::q_pow(-1));
            let shift = LaurentPoly::from_terms([(-1, 1), (0, -1)]);
            for (v, c) in &out.terms {
                next.add_term(v.clone(), c * &shift);
            }
            out = next;
        }
        Ok(out)
    }
}

fn q_pow_neg_len(len: usize) -> LaurentPoly {
    LaurentPoly::q_pow(-(len as i64))
}

/// Memoized Kazhdan-Lusztig data: for each (Cartan label, w) the full
/// coefficient family {P_{y,w}}_{y <= w}, stored by canonical words.
/// Fills are idempotent; concurrent duplicate computation produces
/// identical entries.
#[derive(Default, Debug)]
pub struct KLTable {
    groups: RwLock<HashMap<(String, Vec<usize>), Arc<BTreeMap<Vec<usize>, LaurentPoly>>>>,
}

/// One JSON-lines cache record. `n` is the size of the full coefficient
/// family of `w`, used to reject truncated groups on load.
#[derive(Serialize, Deserialize)]
struct CacheRecord {
    cartan: String,
    y: String,
    w: String,
    poly: LaurentPoly,
    n: usize,
}

/// Counters from loading a cache file; `warnings()` renders them.
#[derive(Debug, Default, Clone, PartialEq, Eq)]
pub struct CacheLoadReport {
    pub loaded_groups: usize,
    pub corrupt_lines: usize,
    pub dropped_groups: usize,
    pub empty_file: bool,
}

impl CacheLoadReport {
    pub fn warnings(&self) -> Vec<String> {
        let mut out = Vec::new();
        if self.empty_file {
            out.push("cache file is empty; starting with an empty table".to_string());
        }
        if self.corrupt_lines > 0 {
            out.push(format!("skipped {} corrupt cache line(s)", self.corrupt_lines));
        }
        if self.dropped_groups > 0 {
            out.push(format!(
                "discarded {} incomplete cache group(s)",
                self.dropped_groups
            ));
        }
        out
    }
}

impl KLTable {
    pub fn new() -> Self {
        KLTable::default()
    }

    /// Total number of stored (y, w) entries.
    pub fn len(&self) -> usize {
        self.groups.read().unwrap().values().map(|g| g.len()).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.groups.read().unwrap().is_empty()
    }

    pub fn num_groups(&self) -> usize {
        self.groups.read().unwrap().len()
    }

    fn get(&self, label: &str, w_word: &[usize]) -> Option<Arc<BTreeMap<Vec<usize>, LaurentPoly>>> {
        self.groups
            .read()
            .unwrap()
            .get(&(label.to_string(), w_word.to_vec()))
            .cloned()
    }

    fn insert(&self, label: &str, w_word: Vec<usize>, group: BTreeMap<Vec<usize>, LaurentPoly>) {
        self.groups
            .write()
            .unwrap()
            .insert((label.to_string(), w_word), Arc::new(group));
    }

    /// Write every entry as JSON lines, sorted for determinism.
    pub fn store(&self, path: &Path) -> Result<usize> {
        let groups = self.groups.read().unwrap();
        let mut keys: Vec<_> = groups.keys().cloned().collect();
        keys.sort_by(|a, b| (&a.0, a.1.len(), &a.1).cmp(&(&b.0, b.1.len(), &b.1)));
        let mut out = Vec::new();
        let mut lines = 0;
        for key in keys {
            let family = &groups[&key];
            for (y_word, poly) in family.iter() {
                let record = CacheRecord {
                    cartan: key.0.clone(),
                    y: word_to_string(y_word),
                    w: word_to_string(&key.1),
                    poly: poly.clone(),
                    n: family.len(),
                };
                serde_json::to_writer(&mut out, &record)
                    .map_err(|e| Error::json(e.to_string()))?;
                out.push(b'\n');
                lines += 1;
            }
        }
        let tmp = path.with_extension("tmp");
        fs::write(&tmp, &out)?;
        fs::rename(&tmp, path)?;
        Ok(lines)
    }

    /// Read a JSON-lines cache. Corrupt lines are skipped and counted;
    /// groups whose record count disagrees with the stored family size
    /// are discarded. Later duplicate (cartan, y, w) records win.
    pub fn load(path: &Path) -> Result<(KLTable, CacheLoadReport)> {
        let file = fs::File::open(path)?;
        let mut report = CacheLoadReport::default();
        let mut pending: HashMap<(String, Vec<usize>), (BTreeMap<Vec<usize>, LaurentPoly>, usize)> =
            HashMap::new();
        let mut saw_content = false;
        for line in BufReader::new(file).lines() {
            let line = line?;
            if line.trim().is_empty() {
                continue;
            }
            saw_content = true;
            let record: CacheRecord = match serde_json::from_str(&line) {
                Ok(r) => r,
                Err(_) => {
                    report.corrupt_lines += 1;
                    continue;
                }
            };
            let (Ok(y_word), Ok(w_word)) = (
                crate::weyl::parse_word(&record.y),
                crate::weyl::parse_word(&record.w),
            ) else {
                report.corrupt_lines += 1;
                continue;
            };
            let entry = pending
                .entry((record.cartan, w_word))
                .or_insert_with(|| (BTreeMap::new(), record.n));
            entry.1 = record.n;
            entry.0.insert(y_word, record.poly);
        }
        if !saw_content {
            report.empty_file = true;
        }
        let table = KLTable::new();
        for ((label, w_word), (family, expected)) in pending {
            let complete = family.len() == expected
                && family
                    .get(&w_word)
                    .is_some_and(|p| p.is_one());
            if complete {
                table.insert(&label, w_word, family);
                report.loaded_groups += 1;
            } else {
                report.dropped_groups += 1;
            }
        }
        Ok((table, report))
    }
}

impl PartialEq for KLTable {
    fn eq(&self, other: &Self) -> bool {
        let a = self.groups.read().unwrap();
        let b = other.groups.read().unwrap();
        a.len() == b.len() && a.iter().all(|(k, v)| b.get(k).is_some_and(|w| **w == **v))
    }
}

fn word_to_string(word: &[usize]) -> String {
    word.iter()
        .map(|i| (i + 1).to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

impl HeckeAlgebra {
    /// The Kazhdan-Lusztig basis element c_w = sum_{y<=w} P_{y,w}(q) t_y,
    /// the unique bar-self-dual element (bar(c_w) = q^{-l(w)} c_w) with
    /// unitriangular expansion satisfying the degree bound
    /// deg P_{y,w} <= (l(w)-l(y)-1)/2 for y < w.
    pub fn kl_basis_element(&self, w: &WeylElement, table: &KLTable) -> Result<HeckeElement> {
        self.group.check_same(w.group())?;
        Ok(self.kl_compute(w, table))
    }

    fn kl_compute(&self, w: &WeylElement, table: &KLTable) -> HeckeElement {
        let label = self.group.cartan().label();
        if let Some(family) = table.get(label, w.word()) {
            if let Some(elem) = self.reconstruct(w, &family) {
                return elem;
            }
            // stored family failed validation; recompute below
        }
        let elem = if w.is_identity() {
            self.unit()
        } else {
            self.kl_step(w, w.word()[0], table)
        };
        self.kl_validate(w, &elem);
        let family: BTreeMap<Vec<usize>, LaurentPoly> = elem
            .terms()
            .map(|(y, p)| (y.word().to_vec(), p.clone()))
            .collect();
        table.insert(label, w.word().to_vec(), family);
        elem
    }

    /// One step of the recursion through the left descent s:
    /// c_w = c_s c_{sw} - sum_{y <= sw, sy < y} mu(y, sw) q^{(l(w)-l(y))/2} c_y.
    fn kl_step(&self, w: &WeylElement, s: usize, table: &KLTable) -> HeckeElement {
        let v = w.left_mul_simple(s);
        assert_eq!(v.length() + 1, w.length(), "s must be a left descent of w");
        let cv = self.kl_compute(&v, table);
        let cs = self.c_simple(s).expect("generator in range");
        let mut c = cs.mult(&cv).expect("same group");
        for (y, p_yv) in cv.terms() {
            if !y.has_descent(Side::Left, s) {
                continue;
            }
            let mu = leading_mu(p_yv, v.length(), y.length());
            if mu.is_zero() {
                continue;
            }
            debug_assert_eq!((w.length() - y.length()) % 2, 0);
            let shift = ((w.length() - y.length()) / 2) as i64;
            let correction = self
                .kl_compute(y, table)
                .scaled(&LaurentPoly::monomial(shift, mu));
            c = c.checked_sub(&correction).expect("same group");
        }
        c
    }

    /// Recompute c_w through an arbitrary left descent; the result must
    /// not depend on the choice. Lower elements come from the table.
    pub fn kl_basis_element_via_descent(
        &self,
        w: &WeylElement,
        s: usize,
        table: &KLTable,
    ) -> Result<HeckeElement> {
        self.group.check_same(w.group())?;
        self.group.cartan().check_generator(s)?;
        if w.is_identity() || !w.has_descent(Side::Left, s) {
            return Err(Error::Parse {
                position: 0,
                message: format!("{s} is not a left descent of {w}"),
            });
        }
        Ok(self.kl_step(w, s, table))
    }

    fn reconstruct(
        &self,
        w: &WeylElement,
        family: &BTreeMap<Vec<usize>, LaurentPoly>,
    ) -> Option<HeckeElement> {
        let mut elem = self.zero();
        for (y_word, p) in family {
            let y = self.group.from_word(y_word).ok()?;
            // stored words must be canonical and satisfy the degree bound
            if y.word() != y_word.as_slice() {
                return None;
            }
            if y != *w {
                let (min, max) = p.degree_bounds()?;
                if min < 0 || 2 * max > (w.length() as i64 - y.length() as i64 - 1) {
                    return None;
                }
            }
            elem.add_term(y, p.clone());
        }
        if !elem.coefficient(w).is_one() {
            return None;
        }
        Some(elem)
    }

    fn kl_validate(&self, w: &WeylElement, elem: &HeckeElement) {
        let ok = elem.coefficient(w).is_one()
            && elem.terms().all(|(y, p)| {
                if y == w {
                    return true;
                }
                match p.degree_bounds() {
                    Some((min, max)) => {
                        min >= 0 && 2 * max <= w.length() as i64 - y.length() as i64 - 1
                    }
                    None => true,
                }
            })
            && elem.bar() == elem.scaled(&q_pow_neg_len(w.length()));
        if !ok {
            panic!(
                "internal consistency failure computing the KL basis element of w = {w} \
                 in type {}; this indicates a bug, not a data condition",
                self.group.cartan().label()
            );
        }
    }

    /// P_{y,w}: zero unless y <= w, one for y = w.
    pub fn kl_polynomial(
        &self,
        y: &WeylElement,
        w: &WeylElement,
        table: &KLTable,
    ) -> Result<LaurentPoly> {
        self.group.check_same(y.group())?;
        let c = self.kl_basis_element(w, table)?;
        Ok(c.coefficient(y))
    }

    /// Leading coefficient mu(y, v) of P_{y,v} at q^{(l(v)-l(y)-1)/2};
    /// zero when that exponent is not a non-negative integer.
    pub fn mu(&self, y: &WeylElement, v: &WeylElement, table: &KLTable) -> Result<BigInt> {
        let p = self.kl_polynomial(y, v, table)?;
        Ok(leading_mu(&p, v.length(), y.length()))
    }

    /// Expand in the KL basis; inverse of `from_c_basis`.
    pub fn to_c_basis(
        &self,
        h: &HeckeElement,
        table: &KLTable,
    ) -> Result<BTreeMap<WeylElement, LaurentPoly>> {
        self.group.check_same(h.group())?;
        let mut work = h.clone();
        let mut out = BTreeMap::new();
        while let Some((w, p)) = work.terms.last_key_value() {
            let (w, p) = (w.clone(), p.clone());
            let cw = self.kl_basis_element(&w, table)?;
            work = work.checked_sub(&cw.scaled(&p))?;
            out.insert(w, p);
        }
        Ok(out)
    }

    pub fn from_c_basis(
        &self,
        coeffs: &BTreeMap<WeylElement, LaurentPoly>,
        table: &KLTable,
    ) -> Result<HeckeElement> {
        let mut out = self.zero();
        for (w, p) in coeffs {
            let cw = self.kl_basis_element(w, table)?;
            out = out.checked_add(&cw.scaled(p))?;
        }
        Ok(out)
    }

    /// Compute c_w for every element, filling the table layer by layer;
    /// layers are processed in parallel under the `parallel` feature.
    pub fn fill_table(&self, table: &KLTable) -> Result<()> {
        let mut by_length: BTreeMap<usize, Vec<WeylElement>> = BTreeMap::new();
        for w in self.group.all_elements()? {
            by_length.entry(w.length()).or_default().push(w);
        }
        for (_, layer) in by_length {
            let results = par::map_collect(layer, |w| self.kl_basis_element(&w, table).map(drop));
            for r in results {
                r?;
            }
        }
        Ok(())
    }
}

fn leading_mu(p: &LaurentPoly, len_v: usize, len_y: usize) -> BigInt {
    let diff = len_v as i64 - len_y as i64 - 1;
    if diff < 0 || diff % 2 != 0 {
        return BigInt::zero();
    }
    p.coefficient_at(diff / 2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootdata::build_cartan;
    use num_traits::One;

    fn algebra(spec: &str) -> HeckeAlgebra {
        HeckeAlgebra::new(WeylGroup::new(build_cartan(spec).unwrap()).unwrap())
    }

    fn q_minus_one() -> LaurentPoly {
        LaurentPoly::from_terms([(1, 1), (0, -1)])
    }

    #[test]
    fn unit_is_identity_term() {
        let alg = algebra("A2");
        let u = alg.unit();
        assert_eq!(u, alg.t(&alg.group().identity()).unwrap());
        assert_eq!(u.bar(), u);
    }

    #[test]
    fn unit_is_two_sided() {
        let alg = algebra("A2");
        let h = alg
            .t_word(&[0, 1])
            .unwrap()
            .checked_add(&alg.t_word(&[1]).unwrap().scaled(&LaurentPoly::q()))
            .unwrap();
        assert_eq!(alg.unit().mult(&h).unwrap(), h);
        assert_eq!(h.mult(&alg.unit()).unwrap(), h);
    }

    #[test]
    fn braid_product_of_simples() {
        let alg = algebra("A2");
        let prod = alg
            .t_word(&[0])
            .unwrap()
            .mult(&alg.t_word(&[1]).unwrap())
            .unwrap();
        assert_eq!(prod, alg.t_word(&[0, 1]).unwrap());
    }

    #[test]
    fn quadratic_relation() {
        let alg = algebra("A1");
        let ts = alg.t_word(&[0]).unwrap();
        let sq = ts.mult(&ts).unwrap();
        let mut expected = ts.scaled(&q_minus_one());
        expected = expected
            .checked_add(&alg.unit().scaled(&LaurentPoly::q()))
            .unwrap();
        assert_eq!(sq, expected);

        // (t_s - q)(t_s + 1) = 0, for every generator of rank <= 3 types
        for spec in ["A1", "A2", "A3", "B2", "B3", "C3", "G2"] {
            let alg = algebra(spec);
            for s in 0..alg.group().rank() {
                let ts = alg.t_word(&[s]).unwrap();
                let left = ts
                    .checked_sub(&alg.unit().scaled(&LaurentPoly::q()))
                    .unwrap();
                let right = ts.checked_add(&alg.unit()).unwrap();
                assert!(left.mult(&right).unwrap().is_zero(), "{spec} s={s}");
            }
        }
    }

    #[test]
    fn t_inverse_examples() {
        let alg = algebra("A2");
        assert_eq!(alg.t_inverse(&alg.group().identity()).unwrap(), alg.unit());

        let s = alg.group().simple(0).unwrap();
        let inv = alg.t_inverse(&s).unwrap();
        let expected = alg
            .t(&s)
            .unwrap()
            .scaled(&LaurentPoly::q_pow(-1))
            .checked_add(&alg.unit().scaled(&LaurentPoly::from_terms([(-1, 1), (0, -1)])))
            .unwrap();
        assert_eq!(inv, expected);
        assert_eq!(alg.t(&s).unwrap().mult(&inv).unwrap(), alg.unit());
    }

    #[test]
    fn all_elements_invertible_in_a3() {
        let alg = algebra("A3");
        for w in alg.group().all_elements().unwrap() {
            let t = alg.t(&w).unwrap();
            let inv = alg.t_inverse(&w).unwrap();
            assert_eq!(t.mult(&inv).unwrap(), alg.unit(), "right inverse {w}");
            assert_eq!(inv.mult(&t).unwrap(), alg.unit(), "left inverse {w}");
        }
    }

    #[test]
    fn bar_involution() {
        let alg = algebra("A2");
        let s = alg.group().simple(0).unwrap();
        let bar_ts = alg.t(&s).unwrap().bar();
        assert_eq!(bar_ts, alg.t_inverse(&s).unwrap());

        let h = alg
            .t_word(&[0, 1])
            .unwrap()
            .scaled(&LaurentPoly::from_terms([(2, 1), (-1, 3)]))
            .checked_add(&alg.t_word(&[1]).unwrap())
            .unwrap();
        assert_eq!(h.bar().bar(), h);

        // ring homomorphism on a couple of concrete pairs
        let a = alg.t_word(&[0]).unwrap();
        let b = alg.t_word(&[1, 0]).unwrap();
        assert_eq!(
            a.mult(&b).unwrap().bar(),
            a.bar().mult(&b.bar()).unwrap()
        );
    }

    #[test]
    fn iota_examples() {
        let alg = algebra("A2");
        assert_eq!(
            alg.t_word(&[0, 1]).unwrap().iota(),
            alg.t_word(&[1, 0]).unwrap()
        );
        let cs = alg.c_simple(0).unwrap();
        assert_eq!(cs.iota(), cs);
        let a = alg.t_word(&[0, 1]).unwrap();
        let b = alg.t_word(&[1, 0]).unwrap().scaled(&LaurentPoly::q());
        assert_eq!(
            a.mult(&b).unwrap().iota(),
            b.iota().mult(&a.iota()).unwrap()
        );
        assert_eq!(a.iota().iota(), a);
    }

    #[test]
    fn c_simple_identities() {
        for spec in ["A1", "A2", "B2", "G2"] {
            let alg = algebra(spec);
            for s in 0..alg.group().rank() {
                let cs = alg.c_simple(s).unwrap();
                let ts = alg.t_word(&[s]).unwrap();
                let one_plus_q = LaurentPoly::from_terms([(0, 1), (1, 1)]);
                assert_eq!(cs.mult(&cs).unwrap(), cs.scaled(&one_plus_q), "{spec}");
                assert_eq!(cs.mult(&ts).unwrap(), cs.scaled(&LaurentPoly::q()));
                assert_eq!(ts.mult(&cs).unwrap(), cs.scaled(&LaurentPoly::q()));
            }
        }
    }

    #[test]
    fn c_simple_constant_term_forced() {
        // c_s = t_s + p(q) t_e with c_s t_s = q c_s forces p = 1
        let alg = algebra("A1");
        let ts = alg.t_word(&[0]).unwrap();
        for candidate in [-2i64, -1, 0, 1, 2, 3] {
            let c = ts
                .checked_add(&alg.unit().scaled(&LaurentPoly::constant(candidate)))
                .unwrap();
            let holds = c.mult(&ts).unwrap() == c.scaled(&LaurentPoly::q());
            assert_eq!(holds, candidate == 1);
        }
    }

    #[test]
    fn mismatched_algebras_rejected() {
        let a2 = algebra("A2");
        let b2 = algebra("B2");
        let h = a2.t_word(&[0]).unwrap();
        let k = b2.t_word(&[0]).unwrap();
        assert!(h.mult(&k).is_err());
        assert!(h.checked_add(&k).is_err());
        assert!(a2.t(&b2.group().identity()).is_err());
    }

    #[test]
    fn kl_base_cases() {
        let alg = algebra("A2");
        let table = KLTable::new();
        let e = alg.group().identity();
        assert_eq!(alg.kl_basis_element(&e, &table).unwrap(), alg.unit());
        for s in 0..2 {
            let w = alg.group().simple(s).unwrap();
            assert_eq!(
                alg.kl_basis_element(&w, &table).unwrap(),
                alg.c_simple(s).unwrap()
            );
        }
    }

    #[test]
    fn kl_a2_all_polynomials_are_one() {
        let alg = algebra("A2");
        let table = KLTable::new();
        let all = alg.group().all_elements().unwrap();
        for w in &all {
            for y in &all {
                let p = alg.kl_polynomial(y, w, &table).unwrap();
                if alg.group().bruhat_leq(y, w).unwrap() {
                    assert!(p.is_one(), "P({y},{w}) = {p}");
                } else {
                    assert!(p.is_zero(), "P({y},{w}) = {p}");
                }
            }
        }
    }

    #[test]
    fn kl_longest_element_of_a2() {
        let alg = algebra("A2");
        let table = KLTable::new();
        let w0 = alg.group().longest_element();
        let c = alg.kl_basis_element(&w0, &table).unwrap();
        assert_eq!(c.support_size(), 6);
        assert!(c.terms().all(|(_, p)| p.is_one()));
        assert_eq!(c.bar(), c.scaled(&LaurentPoly::q_pow(-3)));
    }

    #[test]
    fn mu_values() {
        let alg = algebra("A2");
        let table = KLTable::new();
        let all = alg.group().all_elements().unwrap();
        for w in &all {
            // mu(w, w) = 0: the exponent -1/2 is not integral
            assert!(alg.mu(w, w, &table).unwrap().is_zero());
            // covering pairs have mu = 1
            for s in w.descents(Side::Left) {
                let v = w.left_mul_simple(s);
                assert!(alg.mu(&v, w, &table).unwrap().is_one());
            }
            for y in &all {
                let m = alg.mu(y, w, &table).unwrap();
                assert!(m.is_zero() || m.is_one(), "mu({y},{w}) = {m}");
            }
        }
    }

    #[test]
    fn c_basis_round_trip() {
        let alg = algebra("A2");
        let table = KLTable::new();
        let ts = alg.t_word(&[0]).unwrap();
        let coeffs = alg.to_c_basis(&ts, &table).unwrap();
        // t_s = c_s - c_e
        assert_eq!(coeffs.len(), 2);
        assert_eq!(coeffs[&alg.group().simple(0).unwrap()], LaurentPoly::one());
        assert_eq!(coeffs[&alg.group().identity()], -LaurentPoly::one());

        let w0 = alg.group().longest_element();
        let c = alg.kl_basis_element(&w0, &table).unwrap();
        let coeffs = alg.to_c_basis(&c, &table).unwrap();
        assert_eq!(coeffs.len(), 1);

        let h = alg
            .t_word(&[0, 1])
            .unwrap()
            .scaled(&LaurentPoly::from_terms([(0, 2), (1, -1)]))
            .checked_add(&alg.t_word(&[1]).unwrap().scaled(&LaurentPoly::q_pow(-2)))
            .unwrap();
        let back = alg
            .from_c_basis(&alg.to_c_basis(&h, &table).unwrap(), &table)
            .unwrap();
        assert_eq!(back, h);
    }

    #[test]
    fn hecke_json_round_trip() {
        let alg = algebra("A3");
        let h = alg
            .t_word(&[0, 1, 0])
            .unwrap()
            .scaled(&LaurentPoly::from_terms([(0, 1)]))
            .checked_add(&alg.t_word(&[2]).unwrap().scaled(&LaurentPoly::q_pow(-1)))
            .unwrap();
        let json = serde_json::to_value(&h).unwrap();
        assert_eq!(json["cartan"], "A3");
        // sorted by (length, lex): "3" before "1 2 1"
        assert_eq!(json["terms"][0]["w"], "3");
        let back = HeckeElement::from_json(alg.group(), &json).unwrap();
        assert_eq!(back, h);

        let other = algebra("B2");
        assert!(HeckeElement::from_json(other.group(), &json).is_err());
    }

    #[test]
    fn kl_table_cache_round_trip() {
        let dir = std::env::temp_dir().join(format!("kbraid-test-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("kl-cache.jsonl");

        let alg = algebra("A2");
        let table = KLTable::new();
        alg.fill_table(&table).unwrap();
        let lines = table.store(&path).unwrap();
        assert_eq!(lines, table.len());

        let (loaded, report) = KLTable::load(&path).unwrap();
        assert_eq!(loaded, table);
        assert_eq!(report.corrupt_lines, 0);
        assert_eq!(report.dropped_groups, 0);
        assert_eq!(report.loaded_groups, 6);

        // appended corrupt line is skipped; truncated group is dropped
        let mut content = std::fs::read_to_string(&path).unwrap();
        content.push_str("this is not json\n");
        content.push_str(
            r#"{"cartan":"B9","y":"","w":"1 2","poly":{"terms":[[0,1]]},"n":4}"#,
        );
        content.push('\n');
        std::fs::write(&path, content).unwrap();
        let (loaded2, report2) = KLTable::load(&path).unwrap();
        assert_eq!(loaded2, table);
        assert_eq!(report2.corrupt_lines, 1);
        assert_eq!(report2.dropped_groups, 1);

        std::fs::remove_dir_all(&dir).ok();
    }

    #[test]
    fn kl_cache_hit_skips_recursion() {
        let alg = algebra("B2");
        let table = KLTable::new();
        let w0 = alg.group().longest_element();
        let fresh = alg.kl_basis_element(&w0, &table).unwrap();
        let entries = table.len();
        // second call must not add entries
        let cached = alg.kl_basis_element(&w0, &table).unwrap();
        assert_eq!(fresh, cached);
        assert_eq!(table.len(), entries);
    }
}
