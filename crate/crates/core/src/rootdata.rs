//! Finite-type Cartan data and root systems in simple-root coordinates.
//!
//! All lattice vectors live in simple-root coordinates, so the simple
//! roots are the coordinate unit vectors and every reflection is an
//! integer matrix. Weight-lattice pairings go through the Cartan matrix.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::matrix::IntMatrix;

/// Safety bound on reflection closure; exceeding it means a non-finite
/// type matrix slipped through validation.
pub const ROOT_CLOSURE_CAP: usize = 10_000;

/// A validated finite-type Cartan matrix together with its Coxeter
/// exponent table m(i,j).
///
/// Entry `(i, j)` of the matrix is the pairing of the j-th simple root
/// against the i-th simple coroot, so the i-th simple reflection acts on
/// a vector `v` by subtracting `(row i . v)` times the i-th unit vector.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CartanDatum {
    label: String,
    matrix: IntMatrix,
    coxeter_m: Vec<Vec<usize>>,
}

impl CartanDatum {
    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn rank(&self) -> usize {
        self.matrix.size()
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn entry(&self, i: usize, j: usize) -> i64 {
        self.matrix.get(i, j)
    }

    /// Coxeter exponent m(i,j): the order of s_i s_j. Diagonal entries
    /// are 1; off-diagonal entries lie in {2, 3, 4, 6}.
    pub fn coxeter_m(&self, i: usize, j: usize) -> usize {
        self.coxeter_m[i][j]
    }

    pub fn check_generator(&self, i: usize) -> Result<()> {
        if i < self.rank() {
            Ok(())
        } else {
            Err(Error::GeneratorOutOfRange {
                index: i,
                rank: self.rank(),
            })
        }
    }

    /// Pairing of a root-lattice vector against the i-th simple coroot.
    pub fn coroot_pairing(&self, i: usize, v: &[i64]) -> i64 {
        self.matrix
            .row(i)
            .iter()
            .zip(v)
            .map(|(a, x)| a * x)
            .sum()
    }

    pub fn from_matrix(rows: Vec<Vec<i64>>, label: Option<String>) -> Result<CartanDatum> {
        let rank = rows.len();
        if rank == 0 {
            return Err(Error::InvalidCartan("matrix is empty".into()));
        }
        if rows.iter().any(|r| r.len() != rank) {
            return Err(Error::InvalidCartan("matrix is not square".into()));
        }
        for (i, row) in rows.iter().enumerate() {
            if row[i] != 2 {
                return Err(Error::InvalidCartan(format!(
                    "diagonal entry ({i},{i}) is {}, expected 2",
                    row[i]
                )));
            }
            for (j, &a) in row.iter().enumerate() {
                if i != j && a > 0 {
                    return Err(Error::InvalidCartan(format!(
                        "off-diagonal entry ({i},{j}) is {a}, expected <= 0"
                    )));
                }
                if (a == 0) != (rows[j][i] == 0) {
                    return Err(Error::InvalidCartan(format!(
                        "entries ({i},{j}) and ({j},{i}) must vanish together"
                    )));
                }
            }
        }
        check_finite_type(&rows)?;
        let coxeter_m = coxeter_table(&rows)?;
        let label = label.unwrap_or_else(|| custom_label(&rows));
        Ok(CartanDatum {
            label,
            matrix: IntMatrix::from_rows(&rows),
            coxeter_m,
        })
    }
}

fn custom_label(rows: &[Vec<i64>]) -> String {
    format!("custom:{}", serde_json::to_string(rows).unwrap())
}

/// Parse a Cartan spec: a type letter plus rank (`A1`..`G2`) or an
/// explicit JSON integer matrix `[[2,-1],[-1,2]]`.
pub fn build_cartan(spec: &str) -> Result<CartanDatum> {
    let spec = spec.trim();
    if spec.starts_with('[') {
        let rows: Vec<Vec<i64>> = serde_json::from_str(spec).map_err(|e| Error::CartanSpec {
            spec: spec.to_string(),
            message: format!("invalid JSON matrix: {e}"),
        })?;
        return CartanDatum::from_matrix(rows, None);
    }
    let mut chars = spec.chars();
    let letter = chars.next().ok_or_else(|| Error::CartanSpec {
        spec: spec.to_string(),
        message: "empty spec".into(),
    })?;
    let rest: String = chars.collect();
    if !('A'..='G').contains(&letter)
        || rest.is_empty()
        || !rest.chars().all(|c| c.is_ascii_digit())
        || rest.starts_with('0')
    {
        return Err(Error::CartanSpec {
            spec: spec.to_string(),
            message: "expected a letter A-G followed by a positive rank, or a JSON matrix".into(),
        });
    }
    let rank: usize = rest.parse().map_err(|_| Error::CartanSpec {
        spec: spec.to_string(),
        message: "rank out of range".into(),
    })?;
    let rows = standard_matrix(letter, rank).ok_or_else(|| Error::CartanSpec {
        spec: spec.to_string(),
        message: format!("no finite type {letter}{rank}"),
    })?;
    CartanDatum::from_matrix(rows, Some(format!("{letter}{rank}")))
}

fn standard_matrix(letter: char, n: usize) -> Option<Vec<Vec<i64>>> {
    let mut rows = vec![vec![0i64; n]; n];
    for (i, row) in rows.iter_mut().enumerate() {
        row[i] = 2;
    }
    let edge = |rows: &mut Vec<Vec<i64>>, i: usize, j: usize, aij: i64, aji: i64| {
        rows[i][j] = aij;
        rows[j][i] = aji;
    };
    match (letter, n) {
        ('A', n) if n >= 1 => {
            for i in 0..n - 1 {
                edge(&mut rows, i, i + 1, -1, -1);
            }
        }
        ('B', n) if n >= 2 => {
            for i in 0..n - 2 {
                edge(&mut rows, i, i + 1, -1, -1);
            }
            // last simple root short
            edge(&mut rows, n - 2, n - 1, -1, -2);
        }
        ('C', n) if n >= 2 => {
            for i in 0..n - 2 {
                edge(&mut rows, i, i + 1, -1, -1);
            }
            // last simple root long
            edge(&mut rows, n - 2, n - 1, -2, -1);
        }
        ('D', n) if n >= 3 => {
            for i in 0..n - 2 {
                edge(&mut rows, i, i + 1, -1, -1);
            }
            edge(&mut rows, n - 3, n - 1, -1, -1);
        }
        ('E', n) if (6..=8).contains(&n) => {
            // Bourbaki: chain 1-3-4-5-..., node 2 attached to node 4.
            edge(&mut rows, 0, 2, -1, -1);
            edge(&mut rows, 1, 3, -1, -1);
            for i in 2..n - 1 {
                edge(&mut rows, i, i + 1, -1, -1);
            }
        }
        ('F', 4) => {
            edge(&mut rows, 0, 1, -1, -1);
            edge(&mut rows, 1, 2, -1, -2);
            edge(&mut rows, 2, 3, -1, -1);
        }
        ('G', 2) => {
            edge(&mut rows, 0, 1, -1, -3);
        }
        _ => return None,
    }
    Some(rows)
}

/// m(i,j) from the off-diagonal products a_ij * a_ji: 0 -> 2, 1 -> 3,
/// 2 -> 4, 3 -> 6.
fn coxeter_table(rows: &[Vec<i64>]) -> Result<Vec<Vec<usize>>> {
    let n = rows.len();
    let mut m = vec![vec![1usize; n]; n];
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            m[i][j] = match rows[i][j] * rows[j][i] {
                0 => 2,
                1 => 3,
                2 => 4,
                3 => 6,
                p => {
                    return Err(Error::InvalidCartan(format!(
                        "off-diagonal product at ({i},{j}) is {p}, expected 0..3"
                    )))
                }
            };
        }
    }
    Ok(m)
}

/// Finite type test: symmetrize exactly over the rationals and require
/// every leading principal minor of the symmetrized matrix to be
/// positive (Sylvester).
fn check_finite_type(rows: &[Vec<i64>]) -> Result<()> {
    let n = rows.len();
    // find positive d_i with d_i a_ij = d_j a_ji by propagating along
    // nonzero entries; failure to symmetrize already rules out finite type
    let mut d: Vec<Option<BigRational>> = vec![None; n];
    for start in 0..n {
        if d[start].is_some() {
            continue;
        }
        d[start] = Some(BigRational::one());
        let mut queue = vec![start];
        while let Some(i) = queue.pop() {
            let di = d[i].clone().unwrap();
            for j in 0..n {
                if i == j || rows[i][j] == 0 {
                    continue;
                }
                let ratio = BigRational::new(BigInt::from(rows[i][j]), BigInt::from(rows[j][i]));
                let dj = &di * ratio;
                match &d[j] {
                    None => {
                        d[j] = Some(dj);
                        queue.push(j);
                    }
                    Some(existing) => {
                        if *existing != dj {
                            return Err(Error::InvalidCartan(
                                "matrix is not symmetrizable".into(),
                            ));
                        }
                    }
                }
            }
        }
    }
    // clear denominators: s_i = d_i * lcm of denominators
    let mut lcm = BigInt::one();
    for di in d.iter().flatten() {
        let den = di.denom();
        let g = num_integer_gcd(&lcm, den);
        lcm = &lcm / g * den;
    }
    let scale: Vec<BigInt> = d
        .iter()
        .map(|di| {
            let di = di.as_ref().unwrap();
            di.numer() * &lcm / di.denom()
        })
        .collect();
    let mut sym = vec![vec![BigInt::zero(); n]; n];
    for i in 0..n {
        for j in 0..n {
            sym[i][j] = &scale[i] * BigInt::from(rows[i][j]);
        }
    }
    for i in 0..n {
        for j in 0..i {
            if sym[i][j] != sym[j][i] {
                return Err(Error::InvalidCartan("matrix is not symmetrizable".into()));
            }
        }
    }
    // Bareiss fraction-free elimination; the pivot after step k is the
    // (k+1)-st leading principal minor
    let mut m = sym;
    let mut denom = BigInt::one();
    for k in 0..n {
        let pivot = m[k][k].clone();
        if !pivot.is_positive() {
            return Err(Error::NotFiniteType {
                index: k + 1,
                value: pivot.to_string(),
            });
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = &m[i][j] * &pivot - &m[i][k] * &m[k][j];
                m[i][j] = t / &denom;
            }
        }
        denom = pivot;
    }
    Ok(())
}

fn num_integer_gcd(a: &BigInt, b: &BigInt) -> BigInt {
    let mut a = a.abs();
    let mut b = b.abs();
    while !b.is_zero() {
        let r = &a % &b;
        a = b;
        b = r;
    }
    a
}

/// The reflection closure of the simple roots.
///
/// `roots` lists the positive roots sorted by (height, lex), followed by
/// their negatives in the same order.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RootSystem {
    roots: Vec<Vec<i64>>,
    num_positive: usize,
}

impl RootSystem {
    pub fn roots(&self) -> &[Vec<i64>] {
        &self.roots
    }

    pub fn positive_roots(&self) -> &[Vec<i64>] {
        &self.roots[..self.num_positive]
    }

    /// N = number of positive roots = dimension of the flag variety.
    pub fn num_positive(&self) -> usize {
        self.num_positive
    }

    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }
}

// Root systems serialize to a JSON array of integer vectors.
impl Serialize for RootSystem {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.roots.len()))?;
        for r in &self.roots {
            seq.serialize_element(r)?;
        }
        seq.end()
    }
}

/// Breadth-first reflection closure from the simple roots.
pub fn generate_roots(c: &CartanDatum) -> Result<RootSystem> {
    let n = c.rank();
    let mut seen: BTreeSet<Vec<i64>> = BTreeSet::new();
    let mut queue: Vec<Vec<i64>> = Vec::new();
    for i in 0..n {
        let mut e = vec![0i64; n];
        e[i] = 1;
        seen.insert(e.clone());
        queue.push(e);
    }
    while let Some(v) = queue.pop() {
        for i in 0..n {
            let mut w = v.clone();
            w[i] -= c.coroot_pairing(i, &v);
            if seen.insert(w.clone()) {
                if seen.len() > ROOT_CLOSURE_CAP {
                    return Err(Error::RootClosureOverflow {
                        cap: ROOT_CLOSURE_CAP,
                    });
                }
                queue.push(w);
            }
        }
    }
    let mut positive: Vec<Vec<i64>> = seen
        .iter()
        .filter(|v| v.iter().all(|&x| x >= 0))
        .cloned()
        .collect();
    positive.sort_by_key(|v| (v.iter().sum::<i64>(), v.clone()));
    debug_assert_eq!(2 * positive.len(), seen.len());
    let mut roots = positive.clone();
    roots.extend(positive.iter().map(|v| v.iter().map(|x| -x).collect()));
    Ok(RootSystem {
        roots,
        num_positive: positive.len(),
    })
}

/// The i-th simple reflection as a lattice automorphism in simple-root
/// coordinates: only the i-th coordinate changes.
pub fn reflection_matrix(c: &CartanDatum, i: usize) -> Result<IntMatrix> {
    c.check_generator(i)?;
    let n = c.rank();
    let mut m = IntMatrix::identity(n);
    for j in 0..n {
        m.set(i, j, if i == j { -1 } else { -c.entry(i, j) });
    }
    Ok(m)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn a1_is_rank_one() {
        let c = build_cartan("A1").unwrap();
        assert_eq!(c.rank(), 1);
        assert_eq!(c.entry(0, 0), 2);
        assert_eq!(c.label(), "A1");
    }

    #[test]
    fn a2_matrix_and_coxeter_table() {
        let c = build_cartan("A2").unwrap();
        assert_eq!(c.entry(0, 1), -1);
        assert_eq!(c.entry(1, 0), -1);
        assert_eq!(c.coxeter_m(0, 1), 3);
        assert_eq!(c.coxeter_m(0, 0), 1);
    }

    #[test]
    fn g2_off_diagonal_product() {
        let c = build_cartan("G2").unwrap();
        assert_eq!(c.entry(0, 1) * c.entry(1, 0), 3);
        assert_eq!(c.coxeter_m(0, 1), 6);
    }

    #[test]
    fn b3_and_c3_are_transposes() {
        let b = build_cartan("B3").unwrap();
        let c = build_cartan("C3").unwrap();
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(b.entry(i, j), c.entry(j, i));
            }
        }
    }

    #[test]
    fn custom_matrix_accepted() {
        let c = build_cartan("[[2,-1],[-1,2]]").unwrap();
        assert_eq!(c.rank(), 2);
        assert_eq!(c.coxeter_m(0, 1), 3);
        assert!(c.label().starts_with("custom:"));
    }

    #[test]
    fn affine_matrix_rejected_with_minor() {
        // affine A1~: symmetrized determinant is 0
        let err = build_cartan("[[2,-2],[-2,2]]").unwrap_err();
        match err {
            Error::NotFiniteType { index, .. } => assert_eq!(index, 2),
            other => panic!("expected NotFiniteType, got {other:?}"),
        }
    }

    #[test]
    fn malformed_matrices_rejected() {
        assert!(build_cartan("[[2,-1],[0,2]]").is_err());
        assert!(build_cartan("[[2,1],[1,2]]").is_err());
        assert!(build_cartan("[[3]]").is_err());
        assert!(build_cartan("[[2,-1]]").is_err());
        assert!(build_cartan("Z9").is_err());
        assert!(build_cartan("A0").is_err());
        assert!(build_cartan("D2").is_err());
    }

    #[test]
    fn root_counts() {
        for (spec, total, positive) in [
            ("A1", 2, 1),
            ("A2", 6, 3),
            ("B2", 8, 4),
            ("G2", 12, 6),
            ("A3", 12, 6),
            ("B3", 18, 9),
            ("C3", 18, 9),
            ("D4", 24, 12),
            ("F4", 48, 24),
            ("E6", 72, 36),
            ("E7", 126, 63),
            ("E8", 240, 120),
        ] {
            let c = build_cartan(spec).unwrap();
            let r = generate_roots(&c).unwrap();
            assert_eq!(r.len(), total, "{spec}");
            assert_eq!(r.num_positive(), positive, "{spec}");
        }
    }

    #[test]
    fn simple_roots_are_unit_vectors() {
        let c = build_cartan("B2").unwrap();
        let r = generate_roots(&c).unwrap();
        // sorted by height first, so the simple roots lead
        assert_eq!(r.positive_roots()[0], vec![0, 1]);
        assert_eq!(r.positive_roots()[1], vec![1, 0]);
    }

    #[test]
    fn reflection_matrix_examples() {
        let a1 = build_cartan("A1").unwrap();
        let m = reflection_matrix(&a1, 0).unwrap();
        assert_eq!(m.get(0, 0), -1);

        // A2: s_1 applied to alpha_2 gives alpha_1 + alpha_2
        let a2 = build_cartan("A2").unwrap();
        let s1 = reflection_matrix(&a2, 0).unwrap();
        assert_eq!(s1.apply(&[0, 1]), vec![1, 1]);

        assert!(reflection_matrix(&a2, 2).is_err());
    }

    #[test]
    fn reflections_are_involutions_and_preserve_roots() {
        for spec in ["A1", "A2", "A3", "A4", "B2", "B3", "B4", "C3", "C4", "D4", "F4", "G2"] {
            let c = build_cartan(spec).unwrap();
            let r = generate_roots(&c).unwrap();
            let set: BTreeSet<_> = r.roots().iter().cloned().collect();
            for i in 0..c.rank() {
                let m = reflection_matrix(&c, i).unwrap();
                assert!(m.mul(&m).is_identity(), "{spec} s_{i} not an involution");
                for root in r.roots() {
                    assert!(set.contains(&m.apply(root)), "{spec} s_{i} leaves root set");
                }
            }
        }
    }

    #[test]
    fn root_system_serializes_to_vector_array() {
        let c = build_cartan("A1").unwrap();
        let r = generate_roots(&c).unwrap();
        assert_eq!(serde_json::to_string(&r).unwrap(), "[[1],[-1]]");
    }
}
