//! Smith normal form over ℤ with unimodular transforms.

/// `u · m · v = diag(d)` with `d₁ | d₂ | …`, all `dᵢ ≥ 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithForm {
    pub diag: Vec<i64>,
    pub u: Vec<Vec<i64>>,
    pub v: Vec<Vec<i64>>,
}

impl SmithForm {
    /// Nonzero invariant factors, i.e. the torsion orders and the 1s.
    pub fn nonzero(&self) -> Vec<i64> {
        self.diag.iter().copied().filter(|&d| d != 0).collect()
    }
}

fn identity(n: usize) -> Vec<Vec<i64>> {
    (0..n).map(|i| (0..n).map(|j| (i == j) as i64).collect()).collect()
}

pub fn mat_mul(a: &[Vec<i64>], b: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let inner = b.len();
    let cols = b.first().map_or(0, |r| r.len());
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| (0..inner).map(|k| row[k] * b[k][j]).sum())
                .collect()
        })
        .collect()
}

/// Integer determinant by fraction-free elimination (Bareiss).
pub fn det(m: &[Vec<i64>]) -> i64 {
    let n = m.len();
    let mut a: Vec<Vec<i128>> = m.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n {
        if a[k][k] == 0 {
            match (k + 1..n).find(|&r| a[r][k] != 0) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return 0,
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
        }
        prev = a[k][k];
    }
    if n == 0 {
        return 1;
    }
    (sign * a[n - 1][n - 1]) as i64
}

/// Row ops are mirrored into `u`, column ops into `v`.
struct Work {
    a: Vec<Vec<i64>>,
    u: Vec<Vec<i64>>,
    v: Vec<Vec<i64>>,
}

impl Work {
    fn swap_rows(&mut self, i: usize, j: usize) {
        self.a.swap(i, j);
        self.u.swap(i, j);
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        for r in self.a.iter_mut().chain(self.v.iter_mut()) {
            r.swap(i, j);
        }
    }

    /// row_i += k·row_j
    fn add_row(&mut self, i: usize, j: usize, k: i64) {
        for m in [&mut self.a, &mut self.u] {
            let src = m[j].clone();
            for (x, s) in m[i].iter_mut().zip(src) {
                *x += k * s;
            }
        }
    }

    /// col_i += k·col_j
    fn add_col(&mut self, i: usize, j: usize, k: i64) {
        for r in self.a.iter_mut().chain(self.v.iter_mut()) {
            r[i] += k * r[j];
        }
    }

    fn negate_row(&mut self, i: usize) {
        for m in [&mut self.a, &mut self.u] {
            for x in m[i].iter_mut() {
                *x = -*x;
            }
        }
    }
}

pub fn smith_form(m: &[Vec<i64>]) -> SmithForm {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut w = Work { a: m.to_vec(), u: identity(rows), v: identity(cols) };
    let steps = rows.min(cols);

    let mut t = 0;
    while t < steps {
        // pivot: smallest nonzero |entry| in the remaining block
        let pivot = (t..rows)
            .flat_map(|i| (t..cols).map(move |j| (i, j)))
            .filter(|&(i, j)| w.a[i][j] != 0)
            .min_by_key(|&(i, j)| (w.a[i][j].abs(), i, j));
        let Some((pi, pj)) = pivot else { break };
        w.swap_rows(t, pi);
        w.swap_cols(t, pj);

        loop {
            let p = w.a[t][t];
            let mut dirty = false;
            for i in t + 1..rows {
                let q = w.a[i][t].div_euclid(p);
                if q != 0 {
                    w.add_row(i, t, -q);
                }
                if w.a[i][t] != 0 {
                    dirty = true;
                }
            }
            for j in t + 1..cols {
                let q = w.a[t][j].div_euclid(p);
                if q != 0 {
                    w.add_col(j, t, -q);
                }
                if w.a[t][j] != 0 {
                    dirty = true;
                }
            }
            if !dirty {
                // divisibility of the rest of the block
                let bad = (t + 1..rows)
                    .flat_map(|i| (t + 1..cols).map(move |j| (i, j)))
                    .find(|&(i, j)| w.a[i][j] % p != 0);
                match bad {
                    None => break,
                    Some((i, _)) => {
                        w.add_row(t, i, 1);
                        continue;
                    }
                }
            }
            // move the smallest remaining entry of row/column t to the pivot
            let best_row = (t..rows).filter(|&i| w.a[i][t] != 0).min_by_key(|&i| w.a[i][t].abs());
            let best_col = (t..cols).filter(|&j| w.a[t][j] != 0).min_by_key(|&j| w.a[t][j].abs());
            match (best_row, best_col) {
                (Some(i), Some(j)) if w.a[t][j].abs() < w.a[i][t].abs() => w.swap_cols(t, j),
                (Some(i), _) => w.swap_rows(t, i),
                (None, Some(j)) => w.swap_cols(t, j),
                (None, None) => unreachable!("pivot is nonzero"),
            }
        }
        if w.a[t][t] < 0 {
            w.negate_row(t);
        }
        t += 1;
    }

    let diag = (0..steps).map(|i| w.a[i][i]).collect();
    SmithForm { diag, u: w.u, v: w.v }
}
