//! Exact integer bilinear-form arithmetic for intersection forms.
//!
//! Gram matrices are assembled from explicit homology vectors in a
//! diagonal ambient form, combined by direct sum, and classified by the
//! invariant tuple (rank, signature, parity, determinant). Everything is
//! exact: the determinant uses fraction-free Bareiss elimination and the
//! signature a symmetric congruence diagonalization over i128.

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LatticeError {
    #[error("vector has length {got} but the ambient form has rank {expected}")]
    RankMismatch { expected: usize, got: usize },
    #[error("need one label per vector: {labels} labels for {vectors} vectors")]
    LabelCount { labels: usize, vectors: usize },
    #[error("gram matrix is not square/symmetric")]
    NotSymmetric,
    #[error("unknown standard form `{0}`")]
    UnknownStandardForm(String),
}

/// Diagonal ambient pairing, e.g. <+1, -1^9> for H2(E(1)).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AmbientDiagonalForm {
    signs: Vec<i64>,
}

impl AmbientDiagonalForm {
    /// `plus` entries of +1 followed by `minus` entries of -1.
    pub fn new(plus: usize, minus: usize) -> AmbientDiagonalForm {
        let mut signs = vec![1i64; plus];
        signs.extend(std::iter::repeat_n(-1i64, minus));
        AmbientDiagonalForm { signs }
    }

    pub fn rank(&self) -> usize {
        self.signs.len()
    }

    pub fn pairing(&self, u: &[i64], v: &[i64]) -> i64 {
        self.signs
            .iter()
            .zip(u.iter().zip(v))
            .map(|(s, (a, b))| s * a * b)
            .sum()
    }
}

/// A symmetric integer Gram matrix with labeled basis classes.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntLattice {
    labels: Vec<String>,
    gram: Vec<Vec<i64>>,
}

impl IntLattice {
    pub fn new<S: Into<String>>(
        labels: Vec<S>,
        gram: Vec<Vec<i64>>,
    ) -> Result<IntLattice, LatticeError> {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        let n = labels.len();
        if gram.len() != n || gram.iter().any(|r| r.len() != n) {
            return Err(LatticeError::NotSymmetric);
        }
        for i in 0..n {
            for j in 0..n {
                if gram[i][j] != gram[j][i] {
                    return Err(LatticeError::NotSymmetric);
                }
            }
        }
        Ok(IntLattice { labels, gram })
    }

    pub fn empty() -> IntLattice {
        IntLattice {
            labels: Vec::new(),
            gram: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn gram(&self) -> &[Vec<i64>] {
        &self.gram
    }

    pub fn entry(&self, i: usize, j: usize) -> i64 {
        self.gram[i][j]
    }
}

/// Signature of a symmetric form: positive, negative, zero multiplicities.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Signature {
    pub positive: usize,
    pub negative: usize,
    pub zero: usize,
}

impl Signature {
    pub fn excess(&self) -> i64 {
        self.positive as i64 - self.negative as i64
    }
}

/// Invariant tuple used everywhere a lattice claim is validated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct FormClass {
    pub rank: usize,
    pub signature: Signature,
    pub even: bool,
    pub unimodular: bool,
}

/// Gram matrix of the given vectors under a diagonal ambient pairing.
pub fn gram_from_vectors<S: Into<String>>(
    ambient: &AmbientDiagonalForm,
    vectors: &[Vec<i64>],
    labels: Vec<S>,
) -> Result<IntLattice, LatticeError> {
    if labels.len() != vectors.len() {
        return Err(LatticeError::LabelCount {
            labels: labels.len(),
            vectors: vectors.len(),
        });
    }
    for v in vectors {
        if v.len() != ambient.rank() {
            return Err(LatticeError::RankMismatch {
                expected: ambient.rank(),
                got: v.len(),
            });
        }
    }
    let n = vectors.len();
    let mut gram = vec![vec![0i64; n]; n];
    for i in 0..n {
        for j in 0..n {
            gram[i][j] = ambient.pairing(&vectors[i], &vectors[j]);
        }
    }
    IntLattice::new(labels, gram)
}

/// Block-diagonal sum; rank adds, determinant multiplies, signature adds.
pub fn direct_sum(a: &IntLattice, b: &IntLattice) -> IntLattice {
    let n = a.rank();
    let m = b.rank();
    let mut labels = a.labels.clone();
    labels.extend(b.labels.iter().cloned());
    let mut gram = vec![vec![0i64; n + m]; n + m];
    for i in 0..n {
        gram[i][..n].copy_from_slice(&a.gram[i]);
    }
    for i in 0..m {
        for j in 0..m {
            gram[n + i][n + j] = b.gram[i][j];
        }
    }
    IntLattice { labels, gram }
}

/// Exact signature by symmetric congruence (Jacobi) diagonalization over
/// the rationals. No floating point anywhere.
///
/// Zero pivots are repaired by a symmetric row/column swap with a later
/// nonzero diagonal entry; when the whole remaining diagonal vanishes but
/// an off-diagonal entry c survives, adding row/column j to row/column i
/// turns the hyperbolic block [[0, c], [c, 0]] into one with corner 2c.
pub fn signature(l: &IntLattice) -> Signature {
    let n = l.rank();
    let mut m: Vec<Vec<Rational>> = l
        .gram
        .iter()
        .map(|r| r.iter().map(|&x| Rational::integer(x as i128)).collect())
        .collect();
    let mut sig = Signature {
        positive: 0,
        negative: 0,
        zero: 0,
    };

    for k in 0..n {
        if m[k][k].is_zero() {
            if let Some(j) = (k + 1..n).find(|&j| !m[j][j].is_zero()) {
                symmetric_swap(&mut m, k, j);
            } else if let Some((i, j)) = first_offdiag(&m, k) {
                for c in 0..n {
                    let add = m[j][c];
                    m[i][c] = m[i][c].add(add);
                }
                for r in 0..n {
                    let add = m[r][j];
                    m[r][i] = m[r][i].add(add);
                }
                symmetric_swap(&mut m, k, i);
            } else {
                sig.zero += n - k;
                break;
            }
        }
        let pivot = m[k][k];
        if pivot.is_positive() {
            sig.positive += 1;
        } else {
            sig.negative += 1;
        }
        for i in (k + 1)..n {
            if !m[i][k].is_zero() {
                let factor = m[i][k].div(pivot);
                for c in 0..n {
                    let sub = factor.mul(m[k][c]);
                    m[i][c] = m[i][c].sub(sub);
                }
                for r in 0..n {
                    let sub = factor.mul(m[r][k]);
                    m[r][i] = m[r][i].sub(sub);
                }
            }
        }
    }
    debug_assert_eq!(sig.positive + sig.negative + sig.zero, n);
    sig
}

/// Reduced fraction over i128, just enough arithmetic for diagonalization.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Rational {
    num: i128,
    den: i128, // always > 0
}

impl Rational {
    fn integer(num: i128) -> Rational {
        Rational { num, den: 1 }
    }

    fn new(num: i128, den: i128) -> Rational {
        debug_assert_ne!(den, 0);
        let g = gcd_i128(num, den).max(1);
        let s = if den < 0 { -1 } else { 1 };
        Rational {
            num: s * num / g,
            den: s * den / g,
        }
    }

    fn is_zero(self) -> bool {
        self.num == 0
    }

    fn is_positive(self) -> bool {
        self.num > 0
    }

    fn add(self, o: Rational) -> Rational {
        Rational::new(self.num * o.den + o.num * self.den, self.den * o.den)
    }

    fn sub(self, o: Rational) -> Rational {
        Rational::new(self.num * o.den - o.num * self.den, self.den * o.den)
    }

    fn mul(self, o: Rational) -> Rational {
        Rational::new(self.num * o.num, self.den * o.den)
    }

    fn div(self, o: Rational) -> Rational {
        debug_assert!(!o.is_zero());
        Rational::new(self.num * o.den, self.den * o.num)
    }
}

fn symmetric_swap(m: &mut [Vec<Rational>], a: usize, b: usize) {
    if a == b {
        return;
    }
    m.swap(a, b);
    for row in m.iter_mut() {
        row.swap(a, b);
    }
}

fn first_offdiag(m: &[Vec<Rational>], k: usize) -> Option<(usize, usize)> {
    let n = m.len();
    for i in k..n {
        for j in (i + 1)..n {
            if !m[i][j].is_zero() {
                return Some((i, j));
            }
        }
    }
    None
}

fn gcd_i128(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Exact determinant via Bareiss fraction-free elimination.
pub fn determinant(l: &IntLattice) -> i64 {
    det_exact(&l.gram)
}

pub fn det_exact(rows: &[Vec<i64>]) -> i64 {
    let n = rows.len();
    if n == 0 {
        return 1;
    }
    let mut m: Vec<Vec<i128>> = rows
        .iter()
        .map(|r| r.iter().map(|&x| x as i128).collect())
        .collect();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n - 1 {
        if m[k][k] == 0 {
            match (k + 1..n).find(|&i| m[i][k] != 0) {
                Some(i) => {
                    m.swap(k, i);
                    sign = -sign;
                }
                None => return 0,
            }
        }
        for i in (k + 1)..n {
            for j in (k + 1)..n {
                m[i][j] = (m[k][k] * m[i][j] - m[i][k] * m[k][j]) / prev;
            }
            m[i][k] = 0;
        }
        prev = m[k][k];
    }
    i64::try_from(sign * m[n - 1][n - 1]).expect("determinant fits i64")
}

/// (rank, signature, even, unimodular) in one record.
pub fn classify_form(l: &IntLattice) -> FormClass {
    let even = (0..l.rank()).all(|i| l.gram[i][i] % 2 == 0);
    FormClass {
        rank: l.rank(),
        signature: signature(l),
        even,
        unimodular: determinant(l).abs() == 1,
    }
}

/// Named standard lattices.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StandardForm {
    E8,
    MinusE8,
    Hyperbolic,
}

impl std::str::FromStr for StandardForm {
    type Err = LatticeError;
    fn from_str(s: &str) -> Result<StandardForm, LatticeError> {
        match s {
            "E8" => Ok(StandardForm::E8),
            "minusE8" | "-E8" => Ok(StandardForm::MinusE8),
            "H" => Ok(StandardForm::Hyperbolic),
            other => Err(LatticeError::UnknownStandardForm(other.to_string())),
        }
    }
}

/// The fixed E8 node order: a chain 1-2-3-4-5-6-7 with node 8 on node 5.
/// This matches the adjacency of the eight sphere classes
/// e1-e2, ..., e7-e8, -h+e6+e7+e8 in E(1).
pub fn standard_form(which: StandardForm) -> IntLattice {
    match which {
        StandardForm::E8 | StandardForm::MinusE8 => {
            let sign = if which == StandardForm::E8 { 1 } else { -1 };
            let mut gram = vec![vec![0i64; 8]; 8];
            let mut edge = |a: usize, b: usize| {
                gram[a][b] = -sign;
                gram[b][a] = -sign;
            };
            for i in 0..6 {
                edge(i, i + 1);
            }
            edge(4, 7);
            for (i, row) in gram.iter_mut().enumerate() {
                row[i] = 2 * sign;
            }
            let labels = (1..=8).map(|i| format!("n{i}")).collect();
            IntLattice { labels, gram }
        }
        StandardForm::Hyperbolic => IntLattice {
            labels: vec!["u".to_string(), "v".to_string()],
            gram: vec![vec![0, 1], vec![1, 0]],
        },
    }
}

/// The ten Example-style basis vectors of H2(E(1)) in <+1, -1^9>:
/// f = 3h - e1 - ... - e9, e9, e1-e2, ..., e7-e8, -h+e6+e7+e8.
/// Coordinates are (h, e1, ..., e9).
pub fn e1_basis_vectors() -> Vec<Vec<i64>> {
    let mut vs = Vec::with_capacity(10);
    let mut f = vec![3i64];
    f.extend(std::iter::repeat_n(-1i64, 9));
    vs.push(f);
    let mut e9 = vec![0i64; 10];
    e9[9] = 1;
    vs.push(e9);
    for i in 1..=7 {
        let mut v = vec![0i64; 10];
        v[i] = 1;
        v[i + 1] = -1;
        vs.push(v);
    }
    let mut last = vec![0i64; 10];
    last[0] = -1;
    last[6] = 1;
    last[7] = 1;
    last[8] = 1;
    vs.push(last);
    vs
}

pub fn e1_basis_labels() -> Vec<String> {
    let mut labels = vec!["f".to_string(), "e9".to_string()];
    for i in 1..=7 {
        labels.push(format!("e{i}-e{}", i + 1));
    }
    labels.push("-h+e6+e7+e8".to_string());
    labels
}

#[cfg(test)]
mod tests {
    use super::*;

    fn minus_e8() -> IntLattice {
        standard_form(StandardForm::MinusE8)
    }

    fn hyperbolic() -> IntLattice {
        standard_form(StandardForm::Hyperbolic)
    }

    #[test]
    fn e8_is_even_unimodular_definite() {
        let e8 = standard_form(StandardForm::E8);
        let c = classify_form(&e8);
        assert_eq!(c.rank, 8);
        assert_eq!(
            c.signature,
            Signature {
                positive: 8,
                negative: 0,
                zero: 0
            }
        );
        assert!(c.even);
        assert!(c.unimodular);
        assert_eq!(determinant(&e8), 1);
    }

    #[test]
    fn minus_e8_classifies() {
        let l = minus_e8();
        assert_eq!(determinant(&l), 1);
        assert_eq!(
            signature(&l),
            Signature {
                positive: 0,
                negative: 8,
                zero: 0
            }
        );
        assert!((0..8).all(|i| l.entry(i, i) == -2));
    }

    #[test]
    fn hyperbolic_pair() {
        let h = hyperbolic();
        assert_eq!(determinant(&h), -1);
        assert_eq!(
            signature(&h),
            Signature {
                positive: 1,
                negative: 1,
                zero: 0
            }
        );
        let c = classify_form(&h);
        assert!(c.even && c.unimodular);
    }

    #[test]
    fn k3_form_from_direct_sums() {
        // 2(-E8) + 3H: rank 22, signature (3,19), even, unimodular
        let mut l = direct_sum(&minus_e8(), &minus_e8());
        for _ in 0..3 {
            l = direct_sum(&l, &hyperbolic());
        }
        let c = classify_form(&l);
        assert_eq!(c.rank, 22);
        assert_eq!(
            c.signature,
            Signature {
                positive: 3,
                negative: 19,
                zero: 0
            }
        );
        assert!(c.even);
        assert!(c.unimodular);
        assert_eq!(determinant(&l), -1); // 1 * 1 * (-1)^3
    }

    #[test]
    fn two_copies_of_minus_e8() {
        let sum = direct_sum(&minus_e8(), &minus_e8());
        assert_eq!(sum.rank(), 16);
        assert_eq!(signature(&sum), Signature { positive: 0, negative: 16, zero: 0 });
    }

    #[test]
    fn direct_sum_with_empty_is_identity() {
        let l = minus_e8();
        assert_eq!(direct_sum(&l, &IntLattice::empty()), l);
    }

    #[test]
    fn e1_ten_class_gram() {
        let ambient = AmbientDiagonalForm::new(1, 9);
        let l = gram_from_vectors(&ambient, &e1_basis_vectors(), e1_basis_labels()).unwrap();
        // f.f = 0, f.e9 = 1, e9.e9 = -1
        assert_eq!(l.entry(0, 0), 0);
        assert_eq!(l.entry(0, 1), 1);
        assert_eq!(l.entry(1, 1), -1);
        assert_eq!(determinant(&l).abs(), 1);
        assert_eq!(
            signature(&l),
            Signature {
                positive: 1,
                negative: 9,
                zero: 0
            }
        );
        let c = classify_form(&l);
        assert!(!c.even); // e9.e9 = -1
        assert!(c.unimodular);
    }

    #[test]
    fn e1_last_eight_realize_minus_e8_exactly() {
        let ambient = AmbientDiagonalForm::new(1, 9);
        let vs = e1_basis_vectors()[2..].to_vec();
        let labels: Vec<String> = (1..=8).map(|i| format!("n{i}")).collect();
        let l = gram_from_vectors(&ambient, &vs, labels).unwrap();
        // the fixed node order was chosen so the Gram agrees entrywise
        assert_eq!(l.gram(), minus_e8().gram());
        let c = classify_form(&l);
        assert_eq!(c.rank, 8);
        assert_eq!(
            c.signature,
            Signature {
                positive: 0,
                negative: 8,
                zero: 0
            }
        );
        assert!(c.even && c.unimodular);
    }

    #[test]
    fn single_vector_in_positive_line() {
        let ambient = AmbientDiagonalForm::new(1, 0);
        let l = gram_from_vectors(&ambient, &[vec![1]], vec!["h"]).unwrap();
        assert_eq!(l.gram(), &[vec![1]]);
    }

    #[test]
    fn rank_mismatch_rejected() {
        let ambient = AmbientDiagonalForm::new(1, 1);
        let err = gram_from_vectors(&ambient, &[vec![1]], vec!["x"]).unwrap_err();
        assert_eq!(
            err,
            LatticeError::RankMismatch {
                expected: 2,
                got: 1
            }
        );
    }

    #[test]
    fn empty_lattice_classifies_vacuously() {
        let c = classify_form(&IntLattice::empty());
        assert_eq!(c.rank, 0);
        assert_eq!(
            c.signature,
            Signature {
                positive: 0,
                negative: 0,
                zero: 0
            }
        );
        assert!(c.even && c.unimodular);
        assert_eq!(determinant(&IntLattice::empty()), 1);
    }

    #[test]
    fn all_zero_diagonal_uses_hyperbolic_rule() {
        // [[0, 3], [3, 0]] has signature (1, 1)
        let l = IntLattice::new(vec!["a", "b"], vec![vec![0, 3], vec![3, 0]]).unwrap();
        assert_eq!(
            signature(&l),
            Signature {
                positive: 1,
                negative: 1,
                zero: 0
            }
        );
        // and a genuinely degenerate form reports zeros
        let z = IntLattice::new(vec!["a", "b"], vec![vec![0, 0], vec![0, 0]]).unwrap();
        assert_eq!(
            signature(&z),
            Signature {
                positive: 0,
                negative: 0,
                zero: 2
            }
        );
    }

    #[test]
    fn signature_invariant_under_unimodular_congruence() {
        // G -> U^T G U for an explicit elementary U
        let l = IntLattice::new(
            vec!["a", "b", "c"],
            vec![vec![2, 1, 0], vec![1, -3, 2], vec![0, 2, 5]],
        )
        .unwrap();
        let u = [[1i64, 4, 0], [0, 1, 0], [-2, 3, 1]];
        let n = 3;
        let mut g2 = vec![vec![0i64; n]; n];
        for i in 0..n {
            for j in 0..n {
                let mut s = 0i64;
                for p in 0..n {
                    for q in 0..n {
                        s += u[p][i] * l.entry(p, q) * u[q][j];
                    }
                }
                g2[i][j] = s;
            }
        }
        let l2 = IntLattice::new(vec!["a", "b", "c"], g2).unwrap();
        assert_eq!(signature(&l), signature(&l2));
        assert_eq!(determinant(&l), determinant(&l2));
    }
}
