//! Weyl-group elements: reduced words, lengths, descents, Bruhat order,
//! enumeration.
//!
//! An element is identified by its lattice automorphism in simple-root
//! coordinates. Each distinct automorphism is interned once per group
//! together with its lexicographically minimal reduced word (obtained by
//! repeatedly splitting off the smallest left descent), so equality is a
//! matrix comparison and words are deterministic.

use std::cmp::Ordering;
use std::collections::{HashMap, HashSet};
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::Mul;
use std::sync::{Arc, Mutex, OnceLock, RwLock};

use crate::error::{Error, Result};
use crate::matrix::IntMatrix;
use crate::rootdata::{generate_roots, reflection_matrix, CartanDatum, RootSystem};

/// Safety cap for full group enumeration.
pub const ELEMENT_CAP: usize = 1_000_000;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Side {
    Left,
    Right,
}

struct ElemData {
    matrix: IntMatrix,
    inverse: IntMatrix,
    /// Lex-minimal reduced word, 0-based generator indices.
    word: Vec<usize>,
}

struct GroupInner {
    cartan: CartanDatum,
    roots: RootSystem,
    reflections: Vec<IntMatrix>,
    elements: RwLock<HashMap<IntMatrix, Arc<ElemData>>>,
    /// Set once full enumeration completes; lock-free fast path for
    /// intern lookups of a finite group that has been fully explored.
    frozen: OnceLock<HashMap<IntMatrix, Arc<ElemData>>>,
    enumeration: Mutex<Option<Arc<Vec<Arc<ElemData>>>>>,
    bruhat: RwLock<HashMap<(Vec<usize>, Vec<usize>), bool>>,
}

/// A Weyl group built from a finite-type Cartan datum. Cheap to clone;
/// all caches behave as idempotent memo tables.
#[derive(Clone)]
pub struct WeylGroup {
    inner: Arc<GroupInner>,
}

impl WeylGroup {
    pub fn new(cartan: CartanDatum) -> Result<WeylGroup> {
        let roots = generate_roots(&cartan)?;
        let reflections = (0..cartan.rank())
            .map(|i| reflection_matrix(&cartan, i))
            .collect::<Result<Vec<_>>>()?;
        Ok(WeylGroup {
            inner: Arc::new(GroupInner {
                cartan,
                roots,
                reflections,
                elements: RwLock::new(HashMap::new()),
                frozen: OnceLock::new(),
                enumeration: Mutex::new(None),
                bruhat: RwLock::new(HashMap::new()),
            }),
        })
    }

    pub fn cartan(&self) -> &CartanDatum {
        &self.inner.cartan
    }

    pub fn root_system(&self) -> &RootSystem {
        &self.inner.roots
    }

    pub fn rank(&self) -> usize {
        self.inner.cartan.rank()
    }

    /// N, the number of positive roots.
    pub fn num_positive_roots(&self) -> usize {
        self.inner.roots.num_positive()
    }

    pub(crate) fn reflection(&self, i: usize) -> &IntMatrix {
        &self.inner.reflections[i]
    }

    pub fn same_cartan(&self, other: &WeylGroup) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner)
            || self.inner.cartan.matrix() == other.inner.cartan.matrix()
    }

    pub(crate) fn check_same(&self, other: &WeylGroup) -> Result<()> {
        if self.same_cartan(other) {
            Ok(())
        } else {
            Err(Error::CartanMismatch {
                left: self.cartan().label().to_string(),
                right: other.cartan().label().to_string(),
            })
        }
    }

    pub fn identity(&self) -> WeylElement {
        let n = self.rank();
        self.element(IntMatrix::identity(n), IntMatrix::identity(n))
    }

    pub fn simple(&self, i: usize) -> Result<WeylElement> {
        self.cartan().check_generator(i)?;
        let r = &self.inner.reflections[i];
        Ok(self.element(r.clone(), r.clone()))
    }

    /// Element of a (possibly non-reduced) word of 0-based generator
    /// indices. The cached word is recomputed canonically.
    pub fn from_word(&self, word: &[usize]) -> Result<WeylElement> {
        for &i in word {
            self.cartan().check_generator(i)?;
        }
        let n = self.rank();
        let mut m = IntMatrix::identity(n);
        let mut mi = IntMatrix::identity(n);
        for &i in word {
            m = m.mul(&self.inner.reflections[i]);
        }
        for &i in word.iter().rev() {
            mi = mi.mul(&self.inner.reflections[i]);
        }
        Ok(self.element(m, mi))
    }

    fn element(&self, matrix: IntMatrix, inverse: IntMatrix) -> WeylElement {
        WeylElement {
            group: self.clone(),
            data: self.intern(matrix, inverse),
        }
    }

    fn intern(&self, matrix: IntMatrix, inverse: IntMatrix) -> Arc<ElemData> {
        if let Some(frozen) = self.inner.frozen.get() {
            if let Some(d) = frozen.get(&matrix) {
                return Arc::clone(d);
            }
        }
        if let Some(d) = self.inner.elements.read().unwrap().get(&matrix) {
            return Arc::clone(d);
        }
        let word = self.canonical_word(&matrix, &inverse);
        let data = Arc::new(ElemData {
            matrix: matrix.clone(),
            inverse,
            word,
        });
        let mut table = self.inner.elements.write().unwrap();
        Arc::clone(table.entry(matrix).or_insert(data))
    }

    /// Greedy smallest-left-descent peeling; yields the lex-minimal
    /// reduced word.
    fn canonical_word(&self, matrix: &IntMatrix, inverse: &IntMatrix) -> Vec<usize> {
        let n = self.rank();
        let mut v = matrix.clone();
        let mut vi = inverse.clone();
        let mut word = Vec::new();
        loop {
            // left descent i: v^-1(alpha_i) is a negative root
            let descent = (0..n).find(|&i| is_negative(&vi.column(i)));
            match descent {
                Some(i) => {
                    word.push(i);
                    v = self.inner.reflections[i].mul(&v);
                    vi = vi.mul(&self.inner.reflections[i]);
                }
                None => break,
            }
        }
        assert!(
            v.is_identity(),
            "matrix is not a Weyl group element for this Cartan datum"
        );
        word
    }

    /// Complete duplicate-free enumeration sorted by (length, lex word).
    pub fn all_elements(&self) -> Result<Vec<WeylElement>> {
        if let Some(cached) = self.inner.enumeration.lock().unwrap().as_ref() {
            return Ok(cached.iter().map(|d| self.wrap(d)).collect());
        }
        let mut visited: HashSet<IntMatrix> = HashSet::new();
        let mut out: Vec<Arc<ElemData>> = Vec::new();
        let id = self.identity();
        visited.insert(id.data.matrix.clone());
        let mut frontier = vec![id.data];
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for d in &frontier {
                for i in 0..self.rank() {
                    // right ascent: w(alpha_i) positive
                    if is_negative(&d.matrix.column(i)) {
                        continue;
                    }
                    let m = d.matrix.mul(&self.inner.reflections[i]);
                    if visited.insert(m.clone()) {
                        if visited.len() > ELEMENT_CAP {
                            return Err(Error::ElementCapExceeded { cap: ELEMENT_CAP });
                        }
                        let mi = self.inner.reflections[i].mul(&d.inverse);
                        next.push(self.intern(m, mi));
                    }
                }
            }
            out.extend(frontier);
            frontier = next;
        }
        out.sort_by(|a, b| {
            (a.word.len(), &a.word).cmp(&(b.word.len(), &b.word))
        });
        let out = Arc::new(out);
        let result = out.iter().map(|d| self.wrap(d)).collect();
        let _ = self.inner.frozen.set(
            out.iter()
                .map(|d| (d.matrix.clone(), Arc::clone(d)))
                .collect(),
        );
        *self.inner.enumeration.lock().unwrap() = Some(out);
        Ok(result)
    }

    fn wrap(&self, d: &Arc<ElemData>) -> WeylElement {
        WeylElement {
            group: self.clone(),
            data: Arc::clone(d),
        }
    }

    /// The unique element of maximal length N.
    pub fn longest_element(&self) -> WeylElement {
        let mut w = self.identity();
        loop {
            let ascent =
                (0..self.rank()).find(|&i| !is_negative(&w.data.matrix.column(i)));
            match ascent {
                Some(i) => w = w.right_mul_simple(i),
                None => break,
            }
        }
        debug_assert_eq!(w.length(), self.num_positive_roots());
        w
    }

    /// Bruhat order via the lifting property, memoized.
    pub fn bruhat_leq(&self, y: &WeylElement, w: &WeylElement) -> Result<bool> {
        self.check_same(&y.group)?;
        self.check_same(&w.group)?;
        Ok(self.bruhat_leq_data(&y.data, &w.data))
    }

    fn bruhat_leq_data(&self, y: &Arc<ElemData>, w: &Arc<ElemData>) -> bool {
        if y.word.len() > w.word.len() {
            return false;
        }
        if y.word.len() == w.word.len() {
            return y.matrix == w.matrix;
        }
        let key = (y.word.clone(), w.word.clone());
        if let Some(&v) = self.inner.bruhat.read().unwrap().get(&key) {
            return v;
        }
        // w != e here; its smallest left descent is the first letter of
        // the canonical word
        let s = w.word[0];
        let sw = self.intern(
            self.inner.reflections[s].mul(&w.matrix),
            w.inverse.mul(&self.inner.reflections[s]),
        );
        let result = if is_negative(&y.inverse.column(s)) {
            let sy = self.intern(
                self.inner.reflections[s].mul(&y.matrix),
                y.inverse.mul(&self.inner.reflections[s]),
            );
            self.bruhat_leq_data(&sy, &sw)
        } else {
            self.bruhat_leq_data(y, &sw)
        };
        self.inner.bruhat.write().unwrap().insert(key, result);
        result
    }
}

impl fmt::Debug for WeylGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "WeylGroup({})", self.cartan().label())
    }
}

/// Groups compare equal when they share the same Cartan matrix.
impl PartialEq for WeylGroup {
    fn eq(&self, other: &Self) -> bool {
        self.same_cartan(other)
    }
}

impl Eq for WeylGroup {}

fn is_negative(v: &[i64]) -> bool {
    v.iter().find(|&&x| x != 0).is_some_and(|&x| x < 0)
}

/// A canonical Weyl-group element: interned lattice automorphism plus
/// cached lex-minimal reduced word.
#[derive(Clone)]
pub struct WeylElement {
    group: WeylGroup,
    data: Arc<ElemData>,
}

impl WeylElement {
    pub fn group(&self) -> &WeylGroup {
        &self.group
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.data.matrix
    }

    /// Lex-minimal reduced word, 0-based.
    pub fn word(&self) -> &[usize] {
        &self.data.word
    }

    pub fn length(&self) -> usize {
        self.data.word.len()
    }

    pub fn is_identity(&self) -> bool {
        self.data.word.is_empty()
    }

    /// Lattice action on a vector in simple-root coordinates.
    pub fn apply(&self, v: &[i64]) -> Vec<i64> {
        self.data.matrix.apply(v)
    }

    pub fn inverse(&self) -> WeylElement {
        self.group
            .element(self.data.inverse.clone(), self.data.matrix.clone())
    }

    pub fn compose(&self, other: &WeylElement) -> Result<WeylElement> {
        self.group.check_same(&other.group)?;
        Ok(self.group.element(
            self.data.matrix.mul(&other.data.matrix),
            other.data.inverse.mul(&self.data.inverse),
        ))
    }

    pub fn right_mul_simple(&self, i: usize) -> WeylElement {
        let r = &self.group.inner.reflections[i];
        self.group
            .element(self.data.matrix.mul(r), r.mul(&self.data.inverse))
    }

    pub fn left_mul_simple(&self, i: usize) -> WeylElement {
        let r = &self.group.inner.reflections[i];
        self.group
            .element(r.mul(&self.data.matrix), self.data.inverse.mul(r))
    }

    pub fn has_descent(&self, side: Side, i: usize) -> bool {
        match side {
            Side::Left => is_negative(&self.data.inverse.column(i)),
            Side::Right => is_negative(&self.data.matrix.column(i)),
        }
    }

    /// {i : l(s_i w) < l(w)} (left) or {i : l(w s_i) < l(w)} (right).
    pub fn descents(&self, side: Side) -> Vec<usize> {
        (0..self.group.rank())
            .filter(|&i| self.has_descent(side, i))
            .collect()
    }

    /// Number of positive roots sent to negative roots; equals the
    /// length.
    pub fn inversion_count(&self) -> usize {
        self.group
            .root_system()
            .positive_roots()
            .iter()
            .filter(|alpha| is_negative(&self.data.matrix.apply(alpha)))
            .count()
    }

    /// Every reduced word, enumerated exhaustively. Exponential in rank
    /// and length; intended for small groups.
    pub fn reduced_words(&self) -> Vec<Vec<usize>> {
        if self.is_identity() {
            return vec![Vec::new()];
        }
        let mut out = Vec::new();
        for i in self.descents(Side::Left) {
            for mut tail in self.left_mul_simple(i).reduced_words() {
                tail.insert(0, i);
                out.push(tail);
            }
        }
        out
    }

    /// 1-based word string, e.g. "1 2 1"; empty for the identity.
    pub fn word_string(&self) -> String {
        self.data
            .word
            .iter()
            .map(|i| (i + 1).to_string())
            .collect::<Vec<_>>()
            .join(" ")
    }
}

impl PartialEq for WeylElement {
    fn eq(&self, other: &Self) -> bool {
        self.group.same_cartan(&other.group) && self.data.matrix == other.data.matrix
    }
}

impl Eq for WeylElement {}

impl Hash for WeylElement {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.data.matrix.hash(state);
    }
}

/// Sorted by (length, lex word); the canonical enumeration order.
impl Ord for WeylElement {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.data.word.len(), &self.data.word).cmp(&(other.data.word.len(), &other.data.word))
    }
}

impl PartialOrd for WeylElement {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Mul for &WeylElement {
    type Output = WeylElement;
    fn mul(self, rhs: &WeylElement) -> WeylElement {
        self.compose(rhs).expect("mismatched Cartan data")
    }
}

impl fmt::Display for WeylElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_identity() {
            write!(f, "e")
        } else {
            write!(f, "{}", self.word_string())
        }
    }
}

impl fmt::Debug for WeylElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "WeylElement({})", self)
    }
}

/// Parse comma/space-separated 1-based generator indices; the empty
/// string is the identity.
pub fn parse_word(s: &str) -> Result<Vec<usize>> {
    let mut word = Vec::new();
    for (pos, token) in s.split(|c: char| c.is_whitespace() || c == ',').enumerate() {
        if token.is_empty() {
            continue;
        }
        let idx: usize = token.parse().map_err(|_| Error::Parse {
            position: pos,
            message: format!("invalid generator index {token:?}"),
        })?;
        if idx == 0 {
            return Err(Error::Parse {
                position: pos,
                message: "generator indices are 1-based".into(),
            });
        }
        word.push(idx - 1);
    }
    Ok(word)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootdata::build_cartan;

    fn group(spec: &str) -> WeylGroup {
        WeylGroup::new(build_cartan(spec).unwrap()).unwrap()
    }

    #[test]
    fn squares_cancel() {
        let g = group("A1");
        let w = g.from_word(&[0, 0]).unwrap();
        assert!(w.is_identity());
    }

    #[test]
    fn a2_braid_words_agree() {
        let g = group("A2");
        assert_eq!(g.from_word(&[0, 1, 0]).unwrap(), g.from_word(&[1, 0, 1]).unwrap());
    }

    #[test]
    fn non_reduced_word_is_canonicalized() {
        let g = group("A2");
        let w = g.from_word(&[0, 1, 0, 1]).unwrap();
        assert_eq!(w.length(), 2);
        assert_eq!(w, g.from_word(&[1, 0]).unwrap());
    }

    #[test]
    fn out_of_range_generator() {
        let g = group("A2");
        assert!(g.from_word(&[2]).is_err());
        assert!(g.simple(5).is_err());
    }

    #[test]
    fn lengths() {
        let g = group("A2");
        assert_eq!(g.identity().length(), 0);
        assert_eq!(g.simple(0).unwrap().length(), 1);
        let w0 = g.longest_element();
        assert_eq!(w0.length(), 3);
        assert_eq!(w0.length(), g.num_positive_roots());
    }

    #[test]
    fn length_equals_inversion_count() {
        for spec in ["A2", "A3", "B2", "B3", "G2"] {
            let g = group(spec);
            for w in g.all_elements().unwrap() {
                assert_eq!(w.length(), w.inversion_count(), "{spec} {w}");
                assert_eq!(w, g.from_word(w.word()).unwrap());
            }
        }
    }

    #[test]
    fn canonical_word_is_lex_minimal_reduced() {
        let g = group("B2");
        for w in g.all_elements().unwrap() {
            let mut words = w.reduced_words();
            words.sort();
            assert_eq!(w.word(), words[0].as_slice());
        }
    }

    #[test]
    fn descent_sets() {
        let g = group("A2");
        assert!(g.identity().descents(Side::Left).is_empty());
        assert!(g.identity().descents(Side::Right).is_empty());
        let w0 = g.longest_element();
        assert_eq!(w0.descents(Side::Left), vec![0, 1]);
        assert_eq!(w0.descents(Side::Right), vec![0, 1]);
        let w = g.from_word(&[0, 1]).unwrap(); // s1 s2
        assert_eq!(w.descents(Side::Left), vec![0]);
        assert_eq!(w.descents(Side::Right), vec![1]);
    }

    #[test]
    fn group_orders() {
        for (spec, order) in [("A1", 2), ("A2", 6), ("A3", 24), ("B3", 48), ("G2", 12)] {
            let g = group(spec);
            let all = g.all_elements().unwrap();
            assert_eq!(all.len(), order, "{spec}");
            // sorted by (length, lex word), no duplicates
            for pair in all.windows(2) {
                assert!(pair[0] < pair[1]);
            }
        }
    }

    #[test]
    fn inverses() {
        let g = group("A2");
        assert!(g.identity().inverse().is_identity());
        let w = g.from_word(&[0, 1]).unwrap();
        assert_eq!(w.inverse(), g.from_word(&[1, 0]).unwrap());

        let a3 = group("A3");
        for w in a3.all_elements().unwrap() {
            assert_eq!(w.length(), w.inverse().length());
            assert!((&w * &w.inverse()).is_identity());
        }
    }

    #[test]
    fn bruhat_basics() {
        let g = group("A2");
        let e = g.identity();
        let s1 = g.simple(0).unwrap();
        let s2 = g.simple(1).unwrap();
        let s1s2 = g.from_word(&[0, 1]).unwrap();
        for w in g.all_elements().unwrap() {
            assert!(g.bruhat_leq(&e, &w).unwrap());
        }
        assert!(g.bruhat_leq(&s1, &s1s2).unwrap());
        assert!(!g.bruhat_leq(&s1, &s2).unwrap());
        // antisymmetry at equal length
        assert!(!g.bruhat_leq(&s1s2, &g.from_word(&[1, 0]).unwrap()).unwrap());
    }

    #[test]
    fn mismatched_data_rejected() {
        let a2 = group("A2");
        let b2 = group("B2");
        let w = a2.simple(0).unwrap();
        let v = b2.simple(0).unwrap();
        assert!(w.compose(&v).is_err());
        assert!(a2.bruhat_leq(&w, &v).is_err());
        assert_ne!(w, v);
    }

    #[test]
    fn same_cartan_different_instances_interoperate() {
        let g1 = group("A2");
        let g2 = group("A2");
        let w = g1.from_word(&[0]).unwrap();
        let v = g2.from_word(&[0]).unwrap();
        assert_eq!(w, v);
        assert!(w.compose(&v).unwrap().is_identity());
    }

    #[test]
    fn exchange_property_spot_check() {
        // if l(s_i w) < l(w), deleting one letter of a reduced word of w
        // yields a reduced word of s_i w
        for spec in ["A2", "B2"] {
            let g = group(spec);
            for w in g.all_elements().unwrap() {
                for i in w.descents(Side::Left) {
                    let siw = w.left_mul_simple(i);
                    let word = w.word();
                    let found = (0..word.len()).any(|k| {
                        let mut shorter = word.to_vec();
                        shorter.remove(k);
                        g.from_word(&shorter).unwrap() == siw
                            && shorter.len() == siw.length()
                    });
                    assert!(found, "{spec}: exchange fails at {w}, i={i}");
                }
            }
        }
    }

    #[test]
    fn word_parsing() {
        assert_eq!(parse_word("1 2 1").unwrap(), vec![0, 1, 0]);
        assert_eq!(parse_word("1,2,1").unwrap(), vec![0, 1, 0]);
        assert_eq!(parse_word("").unwrap(), Vec::<usize>::new());
        assert_eq!(parse_word("  ").unwrap(), Vec::<usize>::new());
        assert!(parse_word("0").is_err());
        assert!(parse_word("x").is_err());
    }

    #[test]
    fn word_strings() {
        let g = group("A2");
        assert_eq!(g.longest_element().word_string(), "1 2 1");
        assert_eq!(g.identity().word_string(), "");
        assert_eq!(g.identity().to_string(), "e");
    }
}
