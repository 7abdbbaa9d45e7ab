//! Heuristic presentation simplification.
//!
//! Three rewrite moves only, each of which trivially terminates:
//! drop trivial relators, eliminate a generator that occurs exactly once
//! in some relator, and deduplicate relators that agree up to cyclic
//! rotation and inversion. Generator count never increases.

use std::collections::BTreeMap;

use super::presentation::Presentation;
use super::word::{Letter, Sign, Word};

/// Simplifies a presentation within the given number of rewrite passes.
pub fn tietze_simplify(p: &Presentation, budget: usize) -> Presentation {
    let mut gens: Vec<String> = p.generators().to_vec();
    let mut relators: Vec<Word> = p.relators().iter().map(Word::cyclically_reduce).collect();

    for _ in 0..budget {
        let mut changed = false;

        relators.retain(|r| !r.is_identity());
        dedup_cyclic(&mut relators);

        if let Some((rel_idx, gen_idx)) = find_eliminable(&relators) {
            let images = solve_for_generator(&relators[rel_idx], gen_idx, gens.len());
            relators.remove(rel_idx);
            relators = relators
                .iter()
                .map(|r| {
                    r.substitute(&images)
                        .expect("images cover all generators")
                        .cyclically_reduce()
                })
                .collect();
            // reindex: drop gen_idx, shift everything above down by one
            gens.remove(gen_idx);
            relators = relators.iter().map(|r| shift_down(r, gen_idx)).collect();
            changed = true;
        }

        if !changed {
            break;
        }
    }

    relators.retain(|r| !r.is_identity());
    dedup_cyclic(&mut relators);
    Presentation::new(gens, relators).expect("simplification preserves validity")
}

/// First relator (in order) containing a generator exactly once; among its
/// generators the lowest single-occurrence index is chosen.
fn find_eliminable(relators: &[Word]) -> Option<(usize, usize)> {
    for (ri, r) in relators.iter().enumerate() {
        let mut counts: BTreeMap<usize, usize> = BTreeMap::new();
        for l in r.letters() {
            *counts.entry(l.gen).or_insert(0) += 1;
        }
        if let Some((&g, _)) = counts.iter().find(|&(_, &c)| c == 1) {
            return Some((ri, g));
        }
    }
    None
}

/// Given relator u x^e v = 1 with a single occurrence of x, produces the
/// substitution table x -> (u^-1 v^-1)^(e), identity on all other generators.
fn solve_for_generator(relator: &Word, gen: usize, n_gens: usize) -> BTreeMap<usize, Word> {
    let letters = relator.letters();
    let pos = letters
        .iter()
        .position(|l| l.gen == gen)
        .expect("generator occurs in relator");
    let u = Word::from_letters(letters[..pos].to_vec());
    let v = Word::from_letters(letters[pos + 1..].to_vec());
    // u x v = 1  =>  x = u^-1 v^-1 ; u x^-1 v = 1  =>  x = v u
    let image = match letters[pos].sign {
        Sign::Plus => u.inverse().concat(&v.inverse()),
        Sign::Minus => v.concat(&u),
    };
    let mut images = BTreeMap::new();
    for g in 0..n_gens {
        images.insert(
            g,
            if g == gen {
                image.clone()
            } else {
                Word::generator(g)
            },
        );
    }
    images
}

fn shift_down(w: &Word, removed: usize) -> Word {
    Word::from_letters(
        w.letters()
            .iter()
            .map(|l| {
                debug_assert_ne!(l.gen, removed);
                Letter {
                    gen: if l.gen > removed { l.gen - 1 } else { l.gen },
                    sign: l.sign,
                }
            })
            .collect(),
    )
}

/// Removes relators that are cyclic rotations of an earlier relator or of
/// its inverse.
fn dedup_cyclic(relators: &mut Vec<Word>) {
    let mut keys: Vec<Word> = Vec::new();
    relators.retain(|r| {
        let key = cyclic_normal_form(r);
        if keys.contains(&key) {
            false
        } else {
            keys.push(key);
            true
        }
    });
}

/// Least rotation of the relator or its inverse, under the derived letter order.
fn cyclic_normal_form(w: &Word) -> Word {
    let mut best: Option<Vec<Letter>> = None;
    for cand in [w.clone(), w.inverse()] {
        let letters = cand.letters();
        let n = letters.len();
        for start in 0..n.max(1) {
            let rot: Vec<Letter> = (0..n).map(|i| letters[(start + i) % n]).collect();
            if best.as_ref().is_none_or(|b| rot < *b) {
                best = Some(rot);
            }
        }
    }
    Word::from_letters(best.unwrap_or_default())
}
