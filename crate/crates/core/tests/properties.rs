#![allow(clippy::needless_range_loop)] // index loops read naturally in the matrix checks

//! Randomized property suites backing the spot checks in the acceptance
//! tests.

use std::collections::BTreeMap;

use proptest::prelude::*;

use surgery_core::blocks::ChernNumbers;
use surgery_core::fpgroup::{
    classify_group, free_reduce, smith_normal_form, Letter, Presentation, Sign, Triviality, Word,
};
use surgery_core::lattice::{
    determinant, direct_sum, gram_from_vectors, signature, AmbientDiagonalForm, IntLattice,
};
use surgery_core::mcg;
use surgery_core::surgery::chern_sum_6;

fn letters(max_gens: usize, max_len: usize) -> impl Strategy<Value = Vec<Letter>> {
    prop::collection::vec(
        (0..max_gens, prop::bool::ANY).prop_map(|(gen, pos)| Letter {
            gen,
            sign: if pos { Sign::Plus } else { Sign::Minus },
        }),
        0..=max_len,
    )
}

proptest! {
    #[test]
    fn free_reduce_is_idempotent_and_nonincreasing(raw in letters(4, 20)) {
        let reduced = free_reduce(&raw);
        prop_assert!(reduced.len() <= raw.len());
        let again = free_reduce(reduced.letters());
        prop_assert_eq!(&again, &reduced);
    }

    #[test]
    fn substitute_with_identity_table_is_free_reduction(raw in letters(4, 20)) {
        let word = Word::from_letters(raw.clone());
        let identity_table: BTreeMap<usize, Word> =
            (0..4).map(|g| (g, Word::generator(g))).collect();
        let substituted = word.substitute(&identity_table).unwrap();
        prop_assert_eq!(substituted, free_reduce(&raw));
    }

    #[test]
    fn snf_divisibility_chain(
        rows in 1usize..=6,
        cols in 1usize..=6,
        seed in prop::collection::vec(-9i64..=9, 36),
    ) {
        let matrix: Vec<Vec<i64>> = (0..rows)
            .map(|r| (0..cols).map(|c| seed[r * 6 + c]).collect())
            .collect();
        let diag = smith_normal_form(&matrix);
        for w in diag.windows(2) {
            prop_assert_eq!(w[1] % w[0], 0, "chain {:?}", diag);
        }
        for d in &diag {
            prop_assert!(*d >= 1);
        }
        // invariant under a row and a column swap
        if rows >= 2 && cols >= 2 {
            let mut swapped = matrix.clone();
            swapped.swap(0, rows - 1);
            for row in &mut swapped {
                row.swap(0, cols - 1);
            }
            prop_assert_eq!(diag, smith_normal_form(&swapped));
        }
    }

    #[test]
    fn snf_product_matches_minor_gcd(
        rows in 1usize..=4,
        cols in 1usize..=4,
        seed in prop::collection::vec(-9i64..=9, 16),
    ) {
        let matrix: Vec<Vec<i64>> = (0..rows)
            .map(|r| (0..cols).map(|c| seed[r * 4 + c]).collect())
            .collect();
        let diag = smith_normal_form(&matrix);
        let gcds = minor_gcds(&matrix);
        prop_assert_eq!(diag.len(), gcds.len(), "rank agreement");
        for (r, g) in gcds.iter().enumerate() {
            let product: i64 = diag.iter().take(r + 1).product();
            prop_assert_eq!(product, *g);
        }
    }

    #[test]
    fn abelian_invariants_stable_under_relabeling(
        n_rel in 1usize..=3,
        seed in prop::collection::vec(letters(3, 8), 3),
        rotate in 0usize..8,
    ) {
        let relators: Vec<Word> = seed.iter().take(n_rel).map(|r| Word::from_letters(r.clone())).collect();
        let p = Presentation::new(vec!["a", "b", "c"], relators.clone()).unwrap();

        // permute generators cyclically: a -> b -> c -> a
        let permuted: Vec<Word> = relators
            .iter()
            .map(|w| Word::from_letters(
                w.letters().iter().map(|l| Letter { gen: (l.gen + 1) % 3, sign: l.sign }).collect(),
            ))
            .collect();
        let q = Presentation::new(vec!["b", "c", "a"], permuted).unwrap();
        prop_assert_eq!(p.abelian_invariants(), q.abelian_invariants());

        // invert and cyclically rotate each relator
        let rotated: Vec<Word> = relators
            .iter()
            .map(|w| {
                let inv = w.inverse();
                let ls = inv.letters();
                if ls.is_empty() {
                    inv.clone()
                } else {
                    let k = rotate % ls.len();
                    let mut rot = ls[k..].to_vec();
                    rot.extend_from_slice(&ls[..k]);
                    Word::from_letters(rot)
                }
            })
            .collect();
        let r = Presentation::new(vec!["a", "b", "c"], rotated).unwrap();
        prop_assert_eq!(p.abelian_invariants(), r.abelian_invariants());
    }

    #[test]
    fn gram_from_vectors_is_symmetric(
        n_vec in 1usize..=4,
        coords in prop::collection::vec(-5i64..=5, 40),
    ) {
        let ambient = AmbientDiagonalForm::new(3, 7);
        let vectors: Vec<Vec<i64>> = (0..n_vec)
            .map(|i| coords[i * 10..(i + 1) * 10].to_vec())
            .collect();
        let labels: Vec<String> = (0..n_vec).map(|i| format!("v{i}")).collect();
        let l = gram_from_vectors(&ambient, &vectors, labels).unwrap();
        for i in 0..n_vec {
            for j in 0..n_vec {
                prop_assert_eq!(l.entry(i, j), l.entry(j, i));
            }
        }
    }

    #[test]
    fn signature_and_determinant_invariant_under_glnz(
        entries in prop::collection::vec(-4i64..=4, 16),
        ops in prop::collection::vec((0usize..4, 0usize..4, -2i64..=2), 0..6),
    ) {
        let n = 4;
        // symmetric part of a random matrix
        let mut gram = vec![vec![0i64; n]; n];
        for i in 0..n {
            for j in 0..n {
                gram[i][j] = entries[i * n + j] + entries[j * n + i];
            }
        }
        let l = IntLattice::new(vec!["a", "b", "c", "d"], gram.clone()).unwrap();

        // U = product of elementary shear matrices
        let mut u = vec![vec![0i64; n]; n];
        for i in 0..n { u[i][i] = 1; }
        for (i, j, c) in ops {
            if i != j {
                for k in 0..n {
                    u[k][j] += c * u[k][i];
                }
            }
        }
        let mut g2 = vec![vec![0i64; n]; n];
        for i in 0..n {
            for j in 0..n {
                let mut s = 0;
                for p in 0..n {
                    for q in 0..n {
                        s += u[p][i] * gram[p][q] * u[q][j];
                    }
                }
                g2[i][j] = s;
            }
        }
        let l2 = IntLattice::new(vec!["a", "b", "c", "d"], g2).unwrap();
        prop_assert_eq!(signature(&l), signature(&l2));
        prop_assert_eq!(determinant(&l), determinant(&l2));
    }

    #[test]
    fn direct_sum_adds_signature_multiplies_determinant(
        a_entries in prop::collection::vec(-3i64..=3, 9),
        b_entries in prop::collection::vec(-3i64..=3, 4),
    ) {
        let mut ga = vec![vec![0i64; 3]; 3];
        for i in 0..3 {
            for j in 0..3 {
                ga[i][j] = a_entries[i * 3 + j] + a_entries[j * 3 + i];
            }
        }
        let mut gb = vec![vec![0i64; 2]; 2];
        for i in 0..2 {
            for j in 0..2 {
                gb[i][j] = b_entries[i * 2 + j] + b_entries[j * 2 + i];
            }
        }
        let a = IntLattice::new(vec!["a1", "a2", "a3"], ga).unwrap();
        let b = IntLattice::new(vec!["b1", "b2"], gb).unwrap();
        let sum = direct_sum(&a, &b);
        prop_assert_eq!(sum.rank(), 5);
        let (sa, sb, ss) = (signature(&a), signature(&b), signature(&sum));
        prop_assert_eq!(ss.positive, sa.positive + sb.positive);
        prop_assert_eq!(ss.negative, sa.negative + sb.negative);
        prop_assert_eq!(ss.zero, sa.zero + sb.zero);
        prop_assert_eq!(determinant(&sum), determinant(&a) * determinant(&b));
    }

    #[test]
    fn twist_words_act_symplectically(
        g in 1usize..=4,
        raw in prop::collection::vec((1usize..=9, prop::bool::ANY), 0..40),
    ) {
        let letters: Vec<(usize, i8)> = raw
            .into_iter()
            .map(|(i, pos)| (1 + (i - 1) % (2 * g + 1), if pos { 1 } else { -1 }))
            .collect();
        let w = mcg::TwistWord::new(g, letters).unwrap();
        let m = mcg::word_matrix(&w).unwrap();
        prop_assert!(mcg::is_symplectic(&m, g));
        prop_assert_eq!(surgery_core::lattice::det_exact(&m), 1);
    }

    #[test]
    fn chern_sum_is_symmetric_for_all_triples(
        x1 in prop::collection::vec(-50i64..=50, 3),
        x2 in prop::collection::vec(-50i64..=50, 3),
        y in prop::collection::vec(-20i64..=20, 2),
    ) {
        let a = ChernNumbers::Dim6 { c1_cubed: x1[0], c1c2: x1[1], c3: x1[2] };
        let b = ChernNumbers::Dim6 { c1_cubed: x2[0], c1c2: x2[1], c3: x2[2] };
        let k = ChernNumbers::Dim4 { c1_sq: y[0], c2: y[1] };
        prop_assert_eq!(chern_sum_6(a, b, k), chern_sum_6(b, a, k));
    }

    #[test]
    fn classify_group_is_never_contradictory(
        seed in prop::collection::vec(letters(2, 6), 2),
    ) {
        let relators: Vec<Word> = seed.into_iter().map(Word::from_letters).collect();
        let p = Presentation::new(vec!["a", "b"], relators).unwrap();
        let v = classify_group(&p, 200);
        match v.triviality {
            Triviality::ProvedTrivial => {
                prop_assert!(v.abelian.is_trivial());
                prop_assert_eq!(v.finite_index, Some(1));
            }
            Triviality::ProvedNontrivial => {
                prop_assert!(!v.abelian.is_trivial() || v.finite_index.is_some_and(|n| n > 1));
            }
            Triviality::Unknown => {
                prop_assert!(v.abelian.is_trivial());
                prop_assert_eq!(v.finite_index, None);
            }
        }
    }
}

/// gcd of all r x r minors, r = 1..rank, brute force by cofactor expansion.
fn minor_gcds(m: &[Vec<i64>]) -> Vec<i64> {
    fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
        if k == 0 {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for first in 0..n {
            for rest in subsets_from(first + 1, n, k - 1) {
                let mut s = vec![first];
                s.extend(rest);
                out.push(s);
            }
        }
        out
    }
    fn subsets_from(start: usize, n: usize, k: usize) -> Vec<Vec<usize>> {
        if k == 0 {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for first in start..n {
            for rest in subsets_from(first + 1, n, k - 1) {
                let mut s = vec![first];
                s.extend(rest);
                out.push(s);
            }
        }
        out
    }
    fn det(m: &[Vec<i64>], rows: &[usize], cols: &[usize]) -> i64 {
        if rows.is_empty() {
            return 1;
        }
        let mut total = 0;
        for (j, &c) in cols.iter().enumerate() {
            let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
            let sign = if j % 2 == 0 { 1 } else { -1 };
            total += sign * m[rows[0]][c] * det(m, &rows[1..], &rest);
        }
        total
    }
    fn gcd(a: i64, b: i64) -> i64 {
        let (mut a, mut b) = (a.abs(), b.abs());
        while b != 0 {
            (a, b) = (b, a % b);
        }
        a
    }

    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut out = Vec::new();
    for size in 1..=rows.min(cols) {
        let mut g = 0i64;
        for rs in subsets(rows, size) {
            for cs in subsets(cols, size) {
                g = gcd(g, det(m, &rs, &cs));
            }
        }
        if g == 0 {
            break;
        }
        out.push(g);
    }
    out
}
