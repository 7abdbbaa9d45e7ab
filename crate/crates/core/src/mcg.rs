//! Dehn-twist monodromy on H1: the symplectic representation.
//!
//! Twists along the standard hyperelliptic chain act on Z^2g through
//! transvections z -> z + <z, v> v. Equality of a twist word with the
//! identity here is a necessary certificate for a mapping-class-group
//! identity, not a sufficient one; reports label the check "H1-faithful
//! only".
//!
//! Conventions (fixed so golden outputs are stable): basis x1..xg, y1..yg
//! with <x_i, y_i> = +1, twist T_v(z) = z + <z, v> v.

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum McgError {
    #[error("genus must be >= 1")]
    GenusZero,
    #[error("chain index {index} out of range 1..={max} for genus {genus}")]
    ChainIndexOutOfRange {
        index: usize,
        max: usize,
        genus: usize,
    },
}

/// Square integer matrix acting on H1(Sigma_g) = Z^2g, column convention.
pub type Matrix = Vec<Vec<i64>>;

pub fn identity_matrix(n: usize) -> Matrix {
    let mut m = vec![vec![0i64; n]; n];
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = 1;
    }
    m
}

pub fn mat_mul(a: &Matrix, b: &Matrix) -> Matrix {
    let n = a.len();
    let mut out = vec![vec![0i64; n]; n];
    for i in 0..n {
        for k in 0..n {
            let aik = a[i][k];
            if aik != 0 {
                for j in 0..n {
                    out[i][j] += aik * b[k][j];
                }
            }
        }
    }
    out
}

pub fn is_identity(m: &Matrix) -> bool {
    *m == identity_matrix(m.len())
}

pub fn is_minus_identity(m: &Matrix) -> bool {
    let n = m.len();
    (0..n).all(|i| (0..n).all(|j| m[i][j] == if i == j { -1 } else { 0 }))
}

/// Standard symplectic pairing on Z^2g in the basis x1..xg, y1..yg.
pub fn symplectic_pairing(u: &[i64], v: &[i64]) -> i64 {
    let g = u.len() / 2;
    (0..g).map(|i| u[i] * v[g + i] - u[g + i] * v[i]).sum()
}

/// The matrix J of the pairing, for M^T J M = J checks.
pub fn symplectic_j(g: usize) -> Matrix {
    let n = 2 * g;
    let mut j = vec![vec![0i64; n]; n];
    for i in 0..g {
        j[i][g + i] = 1;
        j[g + i][i] = -1;
    }
    j
}

pub fn is_symplectic(m: &Matrix, g: usize) -> bool {
    let j = symplectic_j(g);
    let mt: Matrix = {
        let n = m.len();
        (0..n)
            .map(|i| (0..n).map(|j2| m[j2][i]).collect())
            .collect()
    };
    mat_mul(&mat_mul(&mt, &j), m) == j
}

/// Homology classes of the standard chain curves a_1, ..., a_{2g+1}:
/// v_1 = x_1, v_{2i} = y_i, v_{2i+1} = x_i + x_{i+1}, v_{2g+1} = x_g.
/// Consecutive classes pair to +-1, all others to 0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainClasses {
    pub genus: usize,
    pub vectors: Vec<Vec<i64>>,
}

pub fn chain_classes(genus: usize) -> Result<ChainClasses, McgError> {
    if genus == 0 {
        return Err(McgError::GenusZero);
    }
    let n = 2 * genus;
    let mut vectors = Vec::with_capacity(2 * genus + 1);
    for k in 1..=(2 * genus + 1) {
        let mut v = vec![0i64; n];
        if k % 2 == 0 {
            v[genus + k / 2 - 1] = 1; // y_{k/2}
        } else if k == 1 {
            v[0] = 1; // x_1
        } else if k == 2 * genus + 1 {
            v[genus - 1] = 1; // x_g
        } else {
            let i = (k - 1) / 2;
            v[i - 1] = 1; // x_i + x_{i+1}
            v[i] = 1;
        }
        vectors.push(v);
    }
    Ok(ChainClasses { genus, vectors })
}

/// Transvection along v: z -> z + <z, v> v.
pub fn transvection_matrix(v: &[i64]) -> Matrix {
    let n = v.len();
    let mut m = identity_matrix(n);
    for j in 0..n {
        let mut e = vec![0i64; n];
        e[j] = 1;
        let c = symplectic_pairing(&e, v);
        if c != 0 {
            for i in 0..n {
                m[i][j] += c * v[i];
            }
        }
    }
    m
}

/// Inverse transvection, z -> z - <z, v> v, in closed form.
fn transvection_matrix_inverse(v: &[i64]) -> Matrix {
    let n = v.len();
    let mut m = identity_matrix(n);
    for j in 0..n {
        let mut e = vec![0i64; n];
        e[j] = 1;
        let c = symplectic_pairing(&e, v);
        if c != 0 {
            for i in 0..n {
                m[i][j] -= c * v[i];
            }
        }
    }
    m
}

/// A word in the chain twists: 1-based chain indices with signs.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwistWord {
    pub genus: usize,
    /// (chain index in 1..=2g+1, exponent +1 or -1)
    pub letters: Vec<(usize, i8)>,
}

impl TwistWord {
    pub fn new(genus: usize, letters: Vec<(usize, i8)>) -> Result<TwistWord, McgError> {
        if genus == 0 {
            return Err(McgError::GenusZero);
        }
        let max = 2 * genus + 1;
        for &(idx, _) in &letters {
            if idx == 0 || idx > max {
                return Err(McgError::ChainIndexOutOfRange {
                    index: idx,
                    max,
                    genus,
                });
            }
        }
        Ok(TwistWord { genus, letters })
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }
}

/// Ordered product of the twist matrices of a word (left to right).
pub fn word_matrix(word: &TwistWord) -> Result<Matrix, McgError> {
    let chain = chain_classes(word.genus)?;
    let mut acc = identity_matrix(2 * word.genus);
    for &(idx, sign) in &word.letters {
        let v = &chain.vectors[idx - 1];
        let m = if sign >= 0 {
            transvection_matrix(v)
        } else {
            transvection_matrix_inverse(v)
        };
        acc = mat_mul(&acc, &m);
    }
    Ok(acc)
}

/// The three hyperelliptic relator families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub enum RelatorFamily {
    /// (a_1 ... a_{2g+1}^2 ... a_1)^2, length 8g+4
    X,
    /// (a_1 ... a_{2g+1})^{2g+2}, length (2g+1)(2g+2)
    Y,
    /// (a_1 ... a_{2g})^{4g+2}, length 2g(4g+2)
    Z,
}

impl std::str::FromStr for RelatorFamily {
    type Err = String;
    fn from_str(s: &str) -> Result<RelatorFamily, String> {
        match s {
            "X" => Ok(RelatorFamily::X),
            "Y" => Ok(RelatorFamily::Y),
            "Z" => Ok(RelatorFamily::Z),
            other => Err(format!(
                "unknown relator family `{other}` (expected X, Y, or Z)"
            )),
        }
    }
}

impl std::fmt::Display for RelatorFamily {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            RelatorFamily::X => write!(f, "X"),
            RelatorFamily::Y => write!(f, "Y"),
            RelatorFamily::Z => write!(f, "Z"),
        }
    }
}

/// Half of the family-X word: a_1 ... a_{2g+1} a_{2g+1} ... a_1.
/// Its H1 action is the hyperelliptic involution, -identity.
pub fn half_word_x(genus: usize) -> Result<TwistWord, McgError> {
    if genus == 0 {
        return Err(McgError::GenusZero);
    }
    let up = 1..=(2 * genus + 1);
    let down = (1..=(2 * genus + 1)).rev();
    let letters: Vec<(usize, i8)> = up.chain(down).map(|i| (i, 1)).collect();
    TwistWord::new(genus, letters)
}

pub fn relator_family(family: RelatorFamily, genus: usize) -> Result<TwistWord, McgError> {
    if genus == 0 {
        return Err(McgError::GenusZero);
    }
    let letters: Vec<(usize, i8)> = match family {
        RelatorFamily::X => {
            let half = half_word_x(genus)?;
            half.letters
                .iter()
                .chain(half.letters.iter())
                .copied()
                .collect()
        }
        RelatorFamily::Y => {
            let block: Vec<(usize, i8)> = (1..=(2 * genus + 1)).map(|i| (i, 1)).collect();
            (0..(2 * genus + 2))
                .flat_map(|_| block.iter().copied())
                .collect()
        }
        RelatorFamily::Z => {
            let block: Vec<(usize, i8)> = (1..=(2 * genus)).map(|i| (i, 1)).collect();
            (0..(4 * genus + 2))
                .flat_map(|_| block.iter().copied())
                .collect()
        }
    };
    TwistWord::new(genus, letters)
}

/// Euler characteristic of a genus-g Lefschetz fibration over S^2 with
/// the given number of (irreducible) critical points.
pub fn lefschetz_euler(genus: usize, n_crit: usize) -> i64 {
    2 * (2 - 2 * genus as i64) + n_crit as i64
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chain_pairings_match_the_chain_diagram() {
        for g in 1..=5 {
            let chain = chain_classes(g).unwrap();
            let n = chain.vectors.len();
            for i in 0..n {
                for j in 0..n {
                    let p = symplectic_pairing(&chain.vectors[i], &chain.vectors[j]);
                    if i == j {
                        assert_eq!(p, 0);
                    } else if i.abs_diff(j) == 1 {
                        assert_eq!(p.abs(), 1, "adjacent pairing at ({i},{j}) g={g}");
                    } else {
                        assert_eq!(p, 0, "non-adjacent pairing at ({i},{j}) g={g}");
                    }
                }
            }
        }
    }

    #[test]
    fn genus_one_chain() {
        let chain = chain_classes(1).unwrap();
        assert_eq!(chain.vectors, vec![vec![1, 0], vec![0, 1], vec![1, 0]]);
        assert_eq!(symplectic_pairing(&chain.vectors[0], &chain.vectors[1]), 1);
    }

    #[test]
    fn genus_two_chain_values() {
        let chain = chain_classes(2).unwrap();
        // v3 = x1 + x2, v4 = y2: <v3, v4> = 1; <v1, v3> = 0
        assert_eq!(symplectic_pairing(&chain.vectors[2], &chain.vectors[3]), 1);
        assert_eq!(symplectic_pairing(&chain.vectors[0], &chain.vectors[2]), 0);
    }

    #[test]
    fn transvection_basics() {
        // v = 0 gives the identity
        assert!(is_identity(&transvection_matrix(&[0, 0])));
        // T_v = T_{-v}
        let v = vec![2, -1, 3, 0];
        let neg: Vec<i64> = v.iter().map(|x| -x).collect();
        assert_eq!(transvection_matrix(&v), transvection_matrix(&neg));
        // genus 1, v = x_1: fixed convention gives [[1, -1], [0, 1]]
        assert_eq!(transvection_matrix(&[1, 0]), vec![vec![1, -1], vec![0, 1]]);
    }

    #[test]
    fn transvections_are_symplectic_with_det_one() {
        let chain = chain_classes(3).unwrap();
        for v in &chain.vectors {
            let m = transvection_matrix(v);
            assert!(is_symplectic(&m, 3));
            assert_eq!(crate::lattice::det_exact(&m), 1);
        }
    }

    #[test]
    fn inverse_transvection_cancels() {
        let chain = chain_classes(2).unwrap();
        for v in &chain.vectors {
            let m = mat_mul(&transvection_matrix(v), &transvection_matrix_inverse(v));
            assert!(is_identity(&m));
        }
    }

    #[test]
    fn braid_relation_on_h1() {
        for g in 1..=4 {
            let chain = chain_classes(g).unwrap();
            for i in 0..(2 * g) {
                let a = transvection_matrix(&chain.vectors[i]);
                let b = transvection_matrix(&chain.vectors[i + 1]);
                let aba = mat_mul(&mat_mul(&a, &b), &a);
                let bab = mat_mul(&mat_mul(&b, &a), &b);
                assert_eq!(aba, bab, "braid relation fails at g={g}, i={i}");
            }
        }
    }

    #[test]
    fn torus_relation_a1_a2_to_the_sixth() {
        // (a1 a2)^6 acts trivially on H1(T^2)
        let letters: Vec<(usize, i8)> = (0..6).flat_map(|_| [(1, 1), (2, 1)]).collect();
        let w = TwistWord::new(1, letters).unwrap();
        assert!(is_identity(&word_matrix(&w).unwrap()));
    }

    #[test]
    fn family_lengths() {
        assert_eq!(relator_family(RelatorFamily::X, 1).unwrap().len(), 12);
        assert_eq!(relator_family(RelatorFamily::Y, 2).unwrap().len(), 30);
        assert_eq!(relator_family(RelatorFamily::Z, 1).unwrap().len(), 12);
        for g in 1..=4 {
            assert_eq!(
                relator_family(RelatorFamily::X, g).unwrap().len(),
                8 * g + 4
            );
            assert_eq!(
                relator_family(RelatorFamily::Y, g).unwrap().len(),
                (2 * g + 1) * (2 * g + 2)
            );
            assert_eq!(
                relator_family(RelatorFamily::Z, g).unwrap().len(),
                2 * g * (4 * g + 2)
            );
        }
    }

    #[test]
    fn families_act_trivially_on_h1() {
        for family in [RelatorFamily::X, RelatorFamily::Y, RelatorFamily::Z] {
            for g in 1..=3 {
                let w = relator_family(family, g).unwrap();
                let m = word_matrix(&w).unwrap();
                assert!(is_identity(&m), "family {family} g={g} not identity on H1");
            }
        }
    }

    #[test]
    fn half_word_is_hyperelliptic_involution() {
        for g in 1..=3 {
            let w = half_word_x(g).unwrap();
            let m = word_matrix(&w).unwrap();
            assert!(is_minus_identity(&m), "half word at g={g}");
        }
    }

    #[test]
    fn empty_word_is_identity() {
        let w = TwistWord::new(2, vec![]).unwrap();
        assert!(is_identity(&word_matrix(&w).unwrap()));
    }

    #[test]
    fn euler_counts() {
        // g=1, 12 critical points: chi = 12 = chi(CP^2 # 9 CP^2-bar)
        assert_eq!(lefschetz_euler(1, 12), 12);
        // n = 0: chi of Sigma_g x S^2
        assert_eq!(lefschetz_euler(3, 0), -8);
        // family X: chi = 4g + 8 matches chi(CP^2 # (4g+5) CP^2-bar) = 3 + (4g+5)
        for g in 1..=5 {
            let n = relator_family(RelatorFamily::X, g).unwrap().len();
            assert_eq!(lefschetz_euler(g, n), 3 + (4 * g as i64 + 5));
        }
    }

    #[test]
    fn out_of_range_index_rejected() {
        let err = TwistWord::new(1, vec![(4, 1)]).unwrap_err();
        assert_eq!(
            err,
            McgError::ChainIndexOutOfRange {
                index: 4,
                max: 3,
                genus: 1
            }
        );
    }
}
