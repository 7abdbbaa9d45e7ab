//! Bounded Todd-Coxeter coset enumeration, HLT strategy.
//!
//! Deterministic by construction: relators are scanned in presentation
//! order, new cosets take the first free index, and coincidences are
//! processed first-in first-out.

use super::presentation::Presentation;
use super::word::{Sign, Word};

/// Outcome of an enumeration: either the subgroup index, or the budget ran out.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Enumeration {
    Index(usize),
    Exceeded,
}

/// Symbols are 2*gen for a generator and 2*gen+1 for its inverse.
fn symbols(word: &Word) -> Vec<usize> {
    word.letters()
        .iter()
        .map(|l| match l.sign {
            Sign::Plus => 2 * l.gen,
            Sign::Minus => 2 * l.gen + 1,
        })
        .collect()
}

fn inv(sym: usize) -> usize {
    sym ^ 1
}

struct Table {
    n_syms: usize,
    rows: Vec<Vec<Option<usize>>>,
    parent: Vec<usize>,
    live: usize,
    max_cosets: usize,
    queue: std::collections::VecDeque<(usize, usize)>,
}

impl Table {
    fn new(n_gens: usize, max_cosets: usize) -> Table {
        let mut t = Table {
            n_syms: 2 * n_gens,
            rows: Vec::new(),
            parent: Vec::new(),
            live: 0,
            max_cosets,
            queue: std::collections::VecDeque::new(),
        };
        t.define().expect("max_cosets >= 1");
        t
    }

    fn define(&mut self) -> Result<usize, ()> {
        if self.rows.len() >= self.max_cosets {
            return Err(());
        }
        let id = self.rows.len();
        self.rows.push(vec![None; self.n_syms]);
        self.parent.push(id);
        self.live += 1;
        Ok(id)
    }

    fn find(&self, mut c: usize) -> usize {
        while self.parent[c] != c {
            c = self.parent[c];
        }
        c
    }

    fn get(&self, c: usize, s: usize) -> Option<usize> {
        self.rows[c][s].map(|t| self.find(t))
    }

    fn set(&mut self, c: usize, s: usize, t: usize) {
        match self.get(c, s) {
            None => {
                self.rows[c][s] = Some(t);
                match self.get(t, inv(s)) {
                    None => self.rows[t][inv(s)] = Some(c),
                    Some(u) if u != c => self.queue.push_back((u, c)),
                    Some(_) => {}
                }
            }
            Some(u) if u != t => self.queue.push_back((u, t)),
            Some(_) => {}
        }
    }

    /// Merge queued coincidences, keeping the smaller representative.
    fn process_coincidences(&mut self) {
        while let Some((a, b)) = self.queue.pop_front() {
            let a = self.find(a);
            let b = self.find(b);
            if a == b {
                continue;
            }
            let (keep, kill) = if a < b { (a, b) } else { (b, a) };
            self.parent[kill] = keep;
            self.live -= 1;
            for s in 0..self.n_syms {
                if let Some(t) = self.rows[kill][s] {
                    let t = self.find(t);
                    match self.get(keep, s) {
                        None => {
                            self.rows[keep][s] = Some(t);
                            match self.get(t, inv(s)) {
                                None => self.rows[t][inv(s)] = Some(keep),
                                Some(u) if u != keep => self.queue.push_back((u, keep)),
                                Some(_) => {}
                            }
                        }
                        Some(u) if u != t => self.queue.push_back((u, t)),
                        Some(_) => {}
                    }
                }
            }
        }
    }

    /// HLT scan of a relator (or subgroup generator) at a coset, defining
    /// cosets to fill gaps. Returns Err on budget exhaustion.
    fn scan_and_fill(&mut self, coset: usize, word: &[usize]) -> Result<(), ()> {
        let mut start = self.find(coset);
        if word.is_empty() {
            return Ok(());
        }
        loop {
            // forward
            let mut f = start;
            let mut i = 0;
            while i < word.len() {
                match self.get(f, word[i]) {
                    Some(next) => {
                        f = next;
                        i += 1;
                    }
                    None => break,
                }
            }
            if i == word.len() {
                if f != start {
                    self.queue.push_back((f, start));
                    self.process_coincidences();
                }
                return Ok(());
            }
            // backward
            let mut b = start;
            let mut j = word.len();
            while j > i + 1 {
                match self.get(b, inv(word[j - 1])) {
                    Some(prev) => {
                        b = prev;
                        j -= 1;
                    }
                    None => break,
                }
            }
            if j == i + 1 {
                // single gap: deduce
                self.set(f, word[i], b);
                self.process_coincidences();
                start = self.find(start);
                if !self.scan_closes(start, word) {
                    continue;
                }
                return Ok(());
            }
            // gap of length >= 2: define a coset at the first hole and retry
            let d = self.define()?;
            self.set(f, word[i], d);
            self.process_coincidences();
            start = self.find(start);
        }
    }

    fn scan_closes(&self, start: usize, word: &[usize]) -> bool {
        let mut c = start;
        for &s in word {
            match self.get(c, s) {
                Some(next) => c = next,
                None => return false,
            }
        }
        c == start
    }

    fn is_live(&self, c: usize) -> bool {
        self.parent[c] == c
    }
}

/// Enumerates the cosets of the subgroup generated by `subgroup` inside the
/// presented group. With an empty subgroup the index is the group order.
pub fn todd_coxeter(p: &Presentation, subgroup: &[Word], max_cosets: usize) -> Enumeration {
    if max_cosets == 0 {
        return Enumeration::Exceeded;
    }
    let relators: Vec<Vec<usize>> = p
        .relators()
        .iter()
        .filter(|r| !r.is_identity())
        .map(symbols)
        .collect();
    let subgens: Vec<Vec<usize>> = subgroup
        .iter()
        .filter(|w| !w.is_identity())
        .map(symbols)
        .collect();

    let mut table = Table::new(p.generators().len(), max_cosets);
    for w in &subgens {
        if table.scan_and_fill(0, w).is_err() {
            return Enumeration::Exceeded;
        }
    }

    let mut current = 0;
    while current < table.rows.len() {
        if !table.is_live(current) {
            current += 1;
            continue;
        }
        for r in &relators {
            if table.scan_and_fill(current, r).is_err() {
                return Enumeration::Exceeded;
            }
            if !table.is_live(current) {
                break;
            }
        }
        if table.is_live(current) {
            for s in 0..table.n_syms {
                if table.get(current, s).is_none() {
                    let Ok(d) = table.define() else {
                        return Enumeration::Exceeded;
                    };
                    table.set(current, s, d);
                    table.process_coincidences();
                    if !table.is_live(current) {
                        break;
                    }
                }
            }
        }
        current += 1;
    }
    Enumeration::Index(table.live)
}
