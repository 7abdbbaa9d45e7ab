//! Smith normal form over the integers, exact arithmetic only.

/// Nonzero diagonal of the Smith normal form of an integer matrix.
///
/// Entries are nonnegative and satisfy d_1 | d_2 | ... | d_r. Row/column
/// operations are performed in i128 so that intermediate growth on small
/// inputs can never wrap.
pub fn smith_normal_form(matrix: &[Vec<i64>]) -> Vec<i64> {
    let rows = matrix.len();
    let cols = matrix.first().map_or(0, Vec::len);
    if rows == 0 || cols == 0 {
        return Vec::new();
    }
    let mut m: Vec<Vec<i128>> = matrix
        .iter()
        .map(|r| {
            assert_eq!(r.len(), cols, "ragged matrix");
            r.iter().map(|&x| x as i128).collect()
        })
        .collect();

    let mut diag: Vec<i128> = Vec::new();
    let mut k = 0;
    while k < rows.min(cols) {
        // move the smallest nonzero entry of the trailing block to (k, k)
        // before every reduction pass: quotients stay small and every pass
        // strictly shrinks the pivot until it divides its row and column
        loop {
            let Some((pi, pj)) = min_abs_nonzero(&m, k) else {
                return finish(diag);
            };
            m.swap(k, pi);
            swap_cols(&mut m, k, pj);
            let pivot = m[k][k];

            let mut clean = true;
            for i in (k + 1)..rows {
                let q = div_round(m[i][k], pivot);
                if q != 0 {
                    for j in k..cols {
                        m[i][j] -= q * m[k][j];
                    }
                }
                if m[i][k] != 0 {
                    clean = false;
                }
            }
            for j in (k + 1)..cols {
                let q = div_round(m[k][j], pivot);
                if q != 0 {
                    for row in m.iter_mut().skip(k) {
                        row[j] -= q * row[k];
                    }
                }
                if m[k][j] != 0 {
                    clean = false;
                }
            }
            if !clean {
                continue;
            }
            // divisibility: fold an offending row into row k and retry
            if let Some((i, _)) = find_nondivisible(&m, k) {
                for col in k..cols {
                    let add = m[i][col];
                    m[k][col] += add;
                }
                continue;
            }
            break;
        }
        diag.push(m[k][k].abs());
        k += 1;
    }
    finish(diag)
}

fn finish(diag: Vec<i128>) -> Vec<i64> {
    diag.into_iter()
        .filter(|&d| d != 0)
        .map(|d| i64::try_from(d).expect("SNF entry fits i64"))
        .collect()
}

fn min_abs_nonzero(m: &[Vec<i128>], k: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for i in k..m.len() {
        for j in k..m[i].len() {
            if m[i][j] != 0 {
                match best {
                    Some((bi, bj)) if m[bi][bj].abs() <= m[i][j].abs() => {}
                    _ => best = Some((i, j)),
                }
            }
        }
    }
    best
}

fn swap_cols(m: &mut [Vec<i128>], a: usize, b: usize) {
    if a != b {
        for row in m.iter_mut() {
            row.swap(a, b);
        }
    }
}

fn find_nondivisible(m: &[Vec<i128>], k: usize) -> Option<(usize, usize)> {
    let p = m[k][k];
    for i in (k + 1)..m.len() {
        for j in (k + 1)..m[i].len() {
            if m[i][j] % p != 0 {
                return Some((i, j));
            }
        }
    }
    None
}

/// Division rounded toward the nearest integer, so remainders shrink fast.
fn div_round(a: i128, b: i128) -> i128 {
    let q = a / b;
    let r = a - q * b;
    if 2 * r.abs() > b.abs() {
        q + if (r < 0) == (b < 0) { 1 } else { -1 }
    } else {
        q
    }
}
